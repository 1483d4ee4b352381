use super::lyndon::{bracket_expansion, lyndon_words, standard_factorization};
use crate::error::{Error, Result};
use crate::ncpoly::{Letter, NCSeries, Word};
use crate::ring::{rat, MPoly, Rational, Registry, Ring, SymbolKind};
use std::collections::BTreeMap;
use std::fmt;

/// Truncated Lie element `Σ c_w P_w` over Lyndon words `w`, where `P_w` is the
/// bracketing of `w` along its standard factorization.
#[derive(Clone, PartialEq)]
pub struct LieElement<R: Ring> {
    trunc: usize,
    coeffs: BTreeMap<Word, R>,
}

impl<R: Ring> LieElement<R> {
    pub fn zero(trunc: usize) -> Self {
        LieElement {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn generator(l: Letter, trunc: usize) -> Self {
        let mut e = Self::zero(trunc);
        e.set(Word::letter(l), R::one());
        e
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, w: &Word) -> R {
        self.coeffs.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn at(&self, w: &str) -> R {
        self.coeff(&Word::parse(w).expect("valid word"))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.coeffs.iter()
    }

    /// Sets the coefficient of a Lyndon word; other words are rejected.
    pub fn set(&mut self, w: Word, c: R) {
        assert!(super::is_lyndon(&w), "{w} is not a Lyndon word");
        if w.len() > self.trunc {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            let v = out.coeff(w).plus(c);
            out.set(w.clone(), v);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.trunc);
        for (w, c) in &self.coeffs {
            out.set(w.clone(), c.scaled(q));
        }
        out
    }

    pub fn scale_by(&self, r: &R) -> Self {
        let mut out = Self::zero(self.trunc);
        for (w, c) in &self.coeffs {
            out.set(w.clone(), c.times(r));
        }
        out
    }

    pub fn to_series(&self) -> NCSeries<R> {
        let mut out = NCSeries::<R>::zero(self.trunc);
        for (w, c) in &self.coeffs {
            for (u, m) in bracket_expansion(w) {
                let v = out.coeff(&u).plus(&c.scaled(&rat(m, 1)));
                out.set(u, v);
            }
        }
        out
    }

    /// Recovers Lyndon coordinates of a Lie series. Since `P_w` is `w` plus
    /// lexicographically larger words of the same length, the coefficients are
    /// read off in increasing order; a nonzero remainder means `f` is not Lie.
    pub fn from_series(f: &NCSeries<R>) -> Result<Self> {
        if !f.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = f.trunc();
        let mut work = f.clone();
        let mut out = Self::zero(n);
        for w in lyndon_words(n) {
            let c = work.coeff(&w);
            if c.is_zero() {
                continue;
            }
            for (u, m) in bracket_expansion(&w) {
                let v = work.coeff(&u).minus(&c.scaled(&rat(m, 1)));
                work.set(u, v);
            }
            out.set(w, c);
        }
        let first = work.terms().next().map(|(w, _)| w.to_string());
        match first {
            None => Ok(out),
            Some(w) => Err(Error::NotLie(w)),
        }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.to_series(), other.to_series());
        Self::from_series(&a.try_mul(&b)?.try_sub(&b.try_mul(&a)?)?)
    }

    /// Image under the Lie morphism `X ↦ img_x`, `Y ↦ img_y`.
    pub fn substitute(&self, img_x: &Self, img_y: &Self) -> Result<Self> {
        let (sx, sy) = (img_x.to_series(), img_y.to_series());
        let mut memo: BTreeMap<Word, NCSeries<R>> = BTreeMap::new();
        let mut acc = NCSeries::zero(self.trunc);
        for (w, c) in &self.coeffs {
            let img = image_of(w, &sx, &sy, &mut memo)?;
            acc = acc.try_add(&img.map_coeffs(|x| x.times(c)))?;
        }
        Self::from_series(&acc)
    }

    pub fn swap(&self) -> Self {
        let x = Self::generator(Letter::X, self.trunc);
        let y = Self::generator(Letter::Y, self.trunc);
        self.substitute(&y, &x).expect("swap preserves Lie elements")
    }

    pub fn exp(&self) -> NCSeries<R> {
        self.to_series()
            .exp()
            .expect("Lie elements have zero constant term")
    }

    /// One `lyndon-word<TAB>coeff` line per nonzero coordinate.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|(w, c)| format!("{w}\t{c}\n"))
            .collect()
    }
}

fn image_of<R: Ring>(
    w: &Word,
    sx: &NCSeries<R>,
    sy: &NCSeries<R>,
    memo: &mut BTreeMap<Word, NCSeries<R>>,
) -> Result<NCSeries<R>> {
    if let Some(s) = memo.get(w) {
        return Ok(s.clone());
    }
    let out = match standard_factorization(w) {
        None if w.letters() == [Letter::X] => sx.clone(),
        None => sy.clone(),
        Some((u, v)) => {
            let a = image_of(&u, sx, sy, memo)?;
            let b = image_of(&v, sx, sy, memo)?;
            a.try_mul(&b)?.try_sub(&b.try_mul(&a)?)?
        }
    };
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

impl LieElement<MPoly> {
    /// Lie element with an independent symbol `{prefix}_{w}` for every Lyndon
    /// word of length `min_degree..=trunc`.
    pub fn generic(reg: &Registry, prefix: &str, trunc: usize, min_degree: usize) -> Self {
        let mut out = Self::zero(trunc);
        for w in lyndon_words(trunc) {
            if w.len() >= min_degree {
                let s = reg.var(&format!("{prefix}_{w}"), SymbolKind::Generic);
                out.set(w, s);
            }
        }
        out
    }
}

impl<R: Ring> fmt::Debug for LieElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement(trunc {}) {{", self.trunc)?;
        for (w, c) in &self.coeffs {
            write!(f, " {w}: {c};")?;
        }
        f.write_str(" }")
    }
}

/// `log(e^a e^b)` in Lyndon coordinates.
pub fn bch<R: Ring>(a: &LieElement<R>, b: &LieElement<R>) -> Result<LieElement<R>> {
    let prod = a.exp().try_mul(&b.exp())?;
    LieElement::from_series(&prod.log()?)
}

/// `Z = log(e^{-Y} e^{-X})`, so that `e^X e^Y e^Z = 1`.
pub fn z_series<R: Ring>(trunc: usize) -> LieElement<R> {
    let x = LieElement::<R>::generator(Letter::X, trunc).scale(&rat(-1, 1));
    let y = LieElement::<R>::generator(Letter::Y, trunc).scale(&rat(-1, 1));
    bch(&y, &x).expect("BCH of generators")
}

/// Coefficient of `XXY` in the word expansion of a Lie element.
pub fn phi3<R: Ring>(l: &LieElement<R>) -> R {
    l.to_series().at("XXY")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::NCSeries;
    use proptest::prelude::*;

    type L = LieElement<Rational>;

    fn gx(n: usize) -> L {
        L::generator(Letter::X, n)
    }
    fn gy(n: usize) -> L {
        L::generator(Letter::Y, n)
    }

    #[test]
    fn z_series_low_degrees() {
        // -X - Y - [X,Y]/2 - [X,[X,Y]]/12 - [Y,[Y,X]]/12, and [Y,[Y,X]] = [[X,Y],Y]
        let z = z_series::<Rational>(3);
        assert_eq!(z.at("X"), rat(-1, 1));
        assert_eq!(z.at("Y"), rat(-1, 1));
        assert_eq!(z.at("XY"), rat(-1, 2));
        assert_eq!(z.at("XXY"), rat(-1, 12));
        assert_eq!(z.at("XYY"), rat(-1, 12));
        assert_eq!(phi3(&z), rat(-1, 12));
    }

    #[test]
    fn exp_x_exp_y_exp_z_is_one() {
        let n = 6;
        let z = z_series::<Rational>(n);
        let prod = &(&gx(n).exp() * &gy(n).exp()) * &z.exp();
        assert_eq!(prod, NCSeries::one(n));
    }

    #[test]
    fn non_lie_series_is_rejected() {
        let s = NCSeries::<Rational>::monomial(Word::parse("XY").unwrap(), rat(1, 1), 3);
        assert_eq!(L::from_series(&s), Err(Error::NotLie("YX".into())));
    }

    #[test]
    fn substitution_respects_brackets() {
        let n = 4;
        let xy = gx(n).bracket(&gy(n)).unwrap();
        let swapped = xy.swap();
        assert_eq!(swapped, xy.scale(&rat(-1, 1)));
        let l = xy.bracket(&gy(n)).unwrap();
        assert_eq!(l.at("XYY"), rat(1, 1));
    }

    fn arb_lie(n: usize) -> impl Strategy<Value = L> {
        let words = lyndon_words(n);
        prop::collection::vec((-4i64..=4, 1i64..=3), words.len()).prop_map(move |cs| {
            let mut l = L::zero(n);
            for (w, (a, b)) in words.iter().zip(cs) {
                l.set(w.clone(), rat(a, b));
            }
            l
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn lie_round_trip_and_exp_log(l in arb_lie(5)) {
            prop_assert_eq!(L::from_series(&l.to_series()).unwrap(), l.clone());
            prop_assert_eq!(l.exp().log().unwrap(), l.to_series());
            prop_assert!(l.exp().is_group_like().holds);
        }

        #[test]
        fn bch_is_associative(a in arb_lie(4), b in arb_lie(4), c in arb_lie(4)) {
            let left = bch(&bch(&a, &b).unwrap(), &c).unwrap();
            let right = bch(&a, &bch(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
