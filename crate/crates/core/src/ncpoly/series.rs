use super::word::{shuffle, Letter, Word};
use crate::error::{Error, Result};
use crate::ring::{rat, MPoly, Rational, Registry, Ring};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Series `Σ c_w w` with all words of length greater than `trunc` dropped.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct NCSeries<R: Ring> {
    trunc: usize,
    coeffs: BTreeMap<Word, R>,
}

/// Outcome of the shuffle test. `witness` is the first failing pair `(u, v)`
/// with `u ≥ v`; `(1, 1)` flags a constant term other than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeCheck {
    pub holds: bool,
    pub witness: Option<(Word, Word)>,
}

impl<R: Ring> NCSeries<R> {
    pub fn zero(trunc: usize) -> Self {
        NCSeries {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(Word::empty(), R::one(), trunc)
    }

    pub fn monomial(w: Word, c: R, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.set(w, c);
        s
    }

    pub fn letter(l: Letter, trunc: usize) -> Self {
        Self::monomial(Word::letter(l), R::one(), trunc)
    }

    pub fn from_coeffs(trunc: usize, coeffs: impl IntoIterator<Item = (Word, R)>) -> Self {
        let mut s = Self::zero(trunc);
        for (w, c) in coeffs {
            let c = s.coeff(&w).plus(&c);
            s.set(w, c);
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, w: &Word) -> R {
        self.coeffs.get(w).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of a word given as text, e.g. `"XXY"`.
    pub fn at(&self, w: &str) -> R {
        self.coeff(&Word::parse(w).expect("valid word"))
    }

    /// Sets a coefficient; words beyond the truncation are ignored.
    pub fn set(&mut self, w: Word, c: R) {
        if w.len() > self.trunc {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Word::empty())
    }

    pub fn truncated(&self, n: usize) -> Self {
        NCSeries {
            trunc: n,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same coefficients, larger truncation; the new degrees are zero.
    pub fn with_trunc(&self, n: usize) -> Self {
        let mut s = self.truncated(n);
        s.trunc = n;
        s
    }

    pub fn degree_part(&self, d: usize) -> Self {
        NCSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        Self::from_coeffs(
            self.trunc,
            self.coeffs.iter().map(|(w, c)| (w.clone(), f(c))),
        )
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&R) -> Result<R>) -> Result<Self> {
        let mut out = Self::zero(self.trunc);
        for (w, c) in &self.coeffs {
            out.set(w.clone(), f(c)?);
        }
        Ok(out)
    }

    fn check_trunc(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            let v = out.coeff(w).plus(c);
            out.set(w.clone(), v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_series())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let mut acc: BTreeMap<Word, R> = BTreeMap::new();
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > self.trunc {
                    break;
                }
                let w = u.concat(v);
                let p = a.times(b);
                match acc.get_mut(&w) {
                    Some(c) => *c = c.plus(&p),
                    None => {
                        acc.insert(w, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(NCSeries {
            trunc: self.trunc,
            coeffs: acc,
        })
    }

    pub fn neg_series(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scaled(q))
    }

    pub fn scale_by(&self, r: &R) -> Self {
        self.map_coeffs(|c| c.times(r))
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let one = Self::one(self.trunc);
        let mut acc = one.clone();
        for k in (1..=self.trunc as i64).rev() {
            acc = one.try_add(&self.try_mul(&acc)?.scale(&rat(1, k)))?;
        }
        Ok(acc)
    }

    /// `log(self)`; the constant term must be one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.trunc;
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let g = self.try_sub(&Self::one(n))?;
        let c = |k: usize| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            Self::one(n).scale(&rat(sign, k as i64))
        };
        let mut acc = c(n);
        for k in (1..n).rev() {
            acc = c(k).try_add(&g.try_mul(&acc)?)?;
        }
        g.try_mul(&acc)
    }

    /// Multiplicative inverse; the constant term must be one.
    pub fn inverse(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.trunc;
        let g = Self::one(n).try_sub(self)?;
        let mut acc = Self::one(n);
        for _ in 0..n {
            acc = Self::one(n).try_add(&g.try_mul(&acc)?)?;
        }
        Ok(acc)
    }

    /// Exchanges `X` and `Y`.
    pub fn swap(&self) -> Self {
        Self::from_coeffs(
            self.trunc,
            self.coeffs.iter().map(|(w, c)| (w.swapped(), c.clone())),
        )
    }

    /// Continuous substitution `X ↦ img_x`, `Y ↦ img_y`. Images must have zero
    /// constant term and the same truncation.
    pub fn substitute_letters(&self, img_x: &Self, img_y: &Self) -> Result<Self> {
        self.check_trunc(img_x)?;
        self.check_trunc(img_y)?;
        if !img_x.constant_term().is_zero() || !img_y.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut prefixes: BTreeSet<Word> = BTreeSet::new();
        for w in self.coeffs.keys() {
            for k in 0..=w.len() {
                prefixes.insert(w.slice(0, k));
            }
        }
        self.subst_from(&Word::empty(), img_x, img_y, &prefixes)
    }

    // σ(f_p) = c_p + σ(X)·σ(f_{pX}) + σ(Y)·σ(f_{pY}) over left quotients.
    fn subst_from(&self, p: &Word, ix: &Self, iy: &Self, prefixes: &BTreeSet<Word>) -> Result<Self> {
        let mut out = Self::monomial(Word::empty(), self.coeff(p), self.trunc);
        if p.len() >= self.trunc {
            return Ok(out);
        }
        for (l, img) in [(Letter::X, ix), (Letter::Y, iy)] {
            let q = p.push(l);
            if prefixes.contains(&q) {
                let inner = self.subst_from(&q, ix, iy, prefixes)?;
                out = out.try_add(&img.try_mul(&inner)?)?;
            }
        }
        Ok(out)
    }

    /// Checks `Σ_{w ∈ u ш v} c_w = c_u c_v` for all non-empty `u ≥ v` with
    /// `|u| + |v| ≤ trunc`, and that the constant term is one.
    pub fn is_group_like(&self) -> GroupLikeCheck {
        if !self.constant_term().is_one() {
            return GroupLikeCheck {
                holds: false,
                witness: Some((Word::empty(), Word::empty())),
            };
        }
        let words = super::all_words(self.trunc.saturating_sub(1));
        for (i, u) in words.iter().enumerate() {
            for v in &words[..=i] {
                if u.len() + v.len() > self.trunc {
                    continue;
                }
                let mut lhs = R::zero();
                for (w, m) in shuffle(u, v) {
                    lhs = lhs.plus(&self.coeff(&w).scaled(&rat(m, 1)));
                }
                if !lhs.minus(&self.coeff(u).times(&self.coeff(v))).is_zero() {
                    return GroupLikeCheck {
                        holds: false,
                        witness: Some((u.clone(), v.clone())),
                    };
                }
            }
        }
        GroupLikeCheck {
            holds: true,
            witness: None,
        }
    }

    /// One `word<TAB>coeff` line per nonzero coefficient, in word order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.coeffs {
            s.push_str(&format!("{w}\t{c}\n"));
        }
        s
    }

    pub fn from_text_with(
        text: &str,
        trunc: usize,
        parse: impl Fn(&str) -> Result<R>,
    ) -> Result<Self> {
        let mut out = Self::zero(trunc);
        for line in text.lines() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (w, c) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("missing tab in {line:?}")))?;
            let w = Word::parse(w)?;
            let c = out.coeff(&w).plus(&parse(c)?);
            out.set(w, c);
        }
        Ok(out)
    }
}

impl NCSeries<MPoly> {
    pub fn from_text(text: &str, reg: &Registry, trunc: usize) -> Result<Self> {
        Self::from_text_with(text, trunc, |s| MPoly::parse(s, reg))
    }

    /// Applies a symbol substitution to every coefficient.
    pub fn substitute_symbols(
        &self,
        map: &std::collections::HashMap<crate::ring::SymbolId, MPoly>,
    ) -> Result<Self> {
        self.try_map_coeffs(|c| c.substitute(map))
    }
}

impl NCSeries<Rational> {
    pub fn from_text_rational(text: &str, trunc: usize) -> Result<Self> {
        Self::from_text_with(text, trunc, crate::ring::parse_rational)
    }
}

impl<R: Ring> fmt::Debug for NCSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCSeries(trunc {}) {{", self.trunc)?;
        for (w, c) in &self.coeffs {
            write!(f, " {w}: {c};")?;
        }
        f.write_str(" }")
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Ring> $tr<&NCSeries<R>> for &NCSeries<R> {
            type Output = NCSeries<R>;
            fn $method(self, rhs: &NCSeries<R>) -> NCSeries<R> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl<R: Ring> Neg for &NCSeries<R> {
    type Output = NCSeries<R>;
    fn neg(self) -> NCSeries<R> {
        self.neg_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    type S = NCSeries<Rational>;

    fn x(n: usize) -> S {
        S::letter(Letter::X, n)
    }
    fn y(n: usize) -> S {
        S::letter(Letter::Y, n)
    }

    #[test]
    fn exp_of_letter_is_power_series() {
        let e = x(4).exp().unwrap();
        assert_eq!(e.at("XXX"), rat(1, 6));
        assert_eq!(e.at("XXXX"), rat(1, 24));
        assert_eq!(e.log().unwrap(), x(4));
    }

    #[test]
    fn exp_requires_zero_constant_and_log_requires_one() {
        assert_eq!(S::one(3).exp(), Err(Error::NonzeroConstantTerm));
        assert_eq!(x(3).log(), Err(Error::ConstantTermNotOne));
        assert_eq!(x(3).try_mul(&x(4)), Err(Error::TruncationMismatch(3, 4)));
    }

    #[test]
    fn product_of_exponentials_degree_two() {
        // log(e^X e^Y) = X + Y + (XY - YX)/2 + ...
        let l = (&x(2).exp().unwrap() * &y(2).exp().unwrap()).log().unwrap();
        assert_eq!(l.at("X"), rat(1, 1));
        assert_eq!(l.at("XY"), rat(1, 2));
        assert_eq!(l.at("YX"), rat(-1, 2));
        assert_eq!(l.at("XX"), rat(0, 1));
    }

    #[test]
    fn inverse_and_substitution() {
        let f = (&x(3) + &(&y(3) * &x(3))).exp().unwrap();
        let prod = &f * &f.inverse().unwrap();
        assert_eq!(prod, S::one(3));
        let g = f.substitute_letters(&y(3), &x(3)).unwrap();
        assert_eq!(g, f.swap());
        let h = f.substitute_letters(&(&x(3) + &y(3)), &S::zero(3)).unwrap();
        assert_eq!(h, (&x(3) + &y(3)).exp().unwrap());
    }

    #[test]
    fn group_like_witness_is_first_failing_pair() {
        let f = (&x(3) + &y(3)).exp().unwrap();
        assert!(f.is_group_like().holds);
        let mut g = f.clone();
        g.set(Word::parse("YXY").unwrap(), rat(-1, 6));
        let check = g.is_group_like();
        assert!(!check.holds);
        let (u, v) = check.witness.unwrap();
        assert_eq!((u.to_string(), v.to_string()), ("XY".into(), "Y".into()));
        assert_eq!(
            S::zero(2).is_group_like().witness,
            Some((Word::empty(), Word::empty()))
        );
    }

    #[test]
    fn text_round_trip() {
        let f = (&x(3) + &y(3).scale(&rat(-2, 3))).exp().unwrap();
        let text = f.to_text();
        assert!(text.starts_with("1\t1\nX\t1\nY\t-2/3\n"));
        assert_eq!(S::from_text_rational(&text, 3).unwrap(), f);
    }
}
