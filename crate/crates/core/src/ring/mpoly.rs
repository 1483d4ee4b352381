use super::rational::{parse_rational, Rational};
use super::symbol::{Registry, SymbolId, SymbolKind};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Sparse power product, factors sorted by symbol id with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(SymbolId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(id: SymbolId) -> Self {
        Monomial(vec![(id, 1)])
    }

    pub fn factors(&self) -> &[(SymbolId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, id: SymbolId) -> u32 {
        self.0
            .iter()
            .find(|&&(s, _)| s == id)
            .map_or(0, |&(_, e)| e)
    }

    pub fn without(&self, id: SymbolId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(s, _)| s != id).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Polynomial with rational coefficients in the symbols of one registry.
///
/// Constants carry no registry and combine with anything. The checked
/// `try_*` operations report [`Error::RegistryMismatch`]; the operator impls
/// panic on it.
#[derive(Clone, Default)]
pub struct MPoly {
    reg: Option<Registry>,
    terms: BTreeMap<Monomial, Rational>,
}

fn merge_registry(a: &MPoly, b: &MPoly) -> Result<Option<Registry>> {
    match (&a.reg, &b.reg) {
        (Some(x), Some(y)) if !x.same(y) => {
            if a.is_constant() {
                Ok(Some(y.clone()))
            } else if b.is_constant() {
                Ok(Some(x.clone()))
            } else {
                Err(Error::RegistryMismatch)
            }
        }
        (Some(x), _) => Ok(Some(x.clone())),
        (None, y) => Ok(y.clone()),
    }
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        MPoly { reg: None, terms }
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Rational::from_integer(n.into()))
    }

    pub fn var(reg: &Registry, id: SymbolId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(id), Rational::one());
        MPoly {
            reg: Some(reg.clone()),
            terms,
        }
    }

    pub fn from_terms(
        reg: &Registry,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = MPoly {
            reg: Some(reg.clone()),
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn registry(&self) -> Option<&Registry> {
        self.reg.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, id: SymbolId) -> u32 {
        self.terms.keys().map(|m| m.exponent(id)).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<SymbolId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn symbol_names(&self) -> Vec<String> {
        match &self.reg {
            Some(reg) => self.symbols().into_iter().map(|s| reg.name(s)).collect(),
            None => Vec::new(),
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        let reg = merge_registry(self, other)?;
        let mut out = self.clone();
        out.reg = reg;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        let reg = merge_registry(self, other)?;
        let mut out = self.clone();
        out.reg = reg;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        let reg = merge_registry(self, other)?;
        let mut out = MPoly {
            reg,
            terms: BTreeMap::new(),
        };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> MPoly {
        if q.is_zero() {
            return MPoly {
                reg: self.reg.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every mapped symbol by its image. Unmapped symbols are kept,
    /// so images must live in the same registry unless every symbol is mapped.
    pub fn substitute(&self, map: &HashMap<SymbolId, MPoly>) -> Result<MPoly> {
        let mut out = MPoly::zero();
        let mut powers: HashMap<(SymbolId, u32), MPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            let mut kept = Monomial::one();
            for &(s, e) in m.factors() {
                match map.get(&s) {
                    Some(img) => {
                        let p = powers.entry((s, e)).or_insert_with(|| img.pow(e));
                        term = term.try_mul(p)?;
                    }
                    None => kept = kept.mul(&Monomial(vec![(s, e)])),
                }
            }
            if !kept.is_one() {
                let reg = self.reg.as_ref().expect("non-constant polynomial has a registry");
                term = term.try_mul(&MPoly::from_terms(reg, [(kept, Rational::one())]))?;
            }
            out = out.try_add(&term)?;
        }
        if out.reg.is_none() {
            out.reg = self.reg.clone();
        }
        Ok(out)
    }

    /// Substitution keyed by symbol name. Names absent from the registry are
    /// ignored.
    pub fn substitute_named(&self, pairs: &[(&str, MPoly)]) -> Result<MPoly> {
        let Some(reg) = &self.reg else {
            return Ok(self.clone());
        };
        let map = pairs
            .iter()
            .filter_map(|(n, p)| reg.lookup(n).map(|id| (id, p.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Coefficient of `s^exp` when viewed as a polynomial in `s`.
    pub fn coefficient_in(&self, s: SymbolId, exp: u32) -> MPoly {
        MPoly {
            reg: self.reg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(s) == exp)
                .map(|(m, c)| (m.without(s), c.clone()))
                .collect(),
        }
    }

    /// Solves `self = 0` for `s`, which must occur linearly with a rational
    /// coefficient.
    pub fn solve_for(&self, s: SymbolId) -> Result<MPoly> {
        if self.degree_in(s) != 1 {
            return Err(Error::InvalidArgument(
                "symbol does not occur linearly".into(),
            ));
        }
        let lead = self
            .coefficient_in(s, 1)
            .as_constant()
            .ok_or_else(|| Error::InvalidArgument("coefficient is not a constant".into()))?;
        let rest = self.coefficient_in(s, 0);
        Ok(rest.scale(&(-lead.recip())))
    }

    /// Returns `λ` with `self = λ·other`, if one exists.
    pub fn ratio_to(&self, other: &MPoly) -> Option<Rational> {
        if other.is_zero() {
            return self.is_zero().then(Rational::zero);
        }
        let (m, c) = other.terms.iter().next()?;
        let lambda = self.coeff(m) / c;
        let diff = self.try_sub(&other.scale(&lambda)).ok()?;
        diff.is_zero().then_some(lambda)
    }

    /// Evaluates in another ring given values for the symbols.
    pub fn eval<R: super::Ring>(&self, value: &dyn Fn(SymbolId) -> R) -> R {
        let mut acc = R::zero();
        let mut cache: HashMap<SymbolId, R> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for &(s, e) in m.factors() {
                let v = cache.entry(s).or_insert_with(|| value(s));
                t = t.times(&v.pow(e));
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Parses the canonical text form, e.g. `3/2*rho_z^2*chi - 1/12`.
    /// Every symbol must already be registered.
    pub fn parse(text: &str, reg: &Registry) -> Result<MPoly> {
        Self::parse_impl(text, reg, None)
    }

    /// Like [`MPoly::parse`] but registers unknown names with `kind`.
    pub fn parse_interning(text: &str, reg: &Registry, kind: SymbolKind) -> Result<MPoly> {
        Self::parse_impl(text, reg, Some(kind))
    }

    fn parse_impl(text: &str, reg: &Registry, kind: Option<SymbolKind>) -> Result<MPoly> {
        let mut out = MPoly {
            reg: Some(reg.clone()),
            terms: BTreeMap::new(),
        };
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    if !cur.trim().is_empty() {
                        chunks.push((negative, std::mem::take(&mut cur)));
                    } else if !cur.is_empty() && ch == '+' {
                        return Err(Error::Parse(format!("dangling sign in {text:?}")));
                    }
                    cur.clear();
                    negative = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if cur.trim().is_empty() {
            if !chunks.is_empty() || negative {
                return Err(Error::Parse(format!("trailing sign in {text:?}")));
            }
            return Err(Error::Parse("empty polynomial".into()));
        }
        chunks.push((negative, cur));
        for (neg, chunk) in chunks {
            let mut coeff = Rational::one();
            let mut mono = Monomial::one();
            for item in chunk.split('*') {
                let item = item.trim();
                if item.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {chunk:?}")));
                }
                if item.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(item)?;
                    continue;
                }
                let (name, exp) = match item.split_once('^') {
                    Some((n, e)) => (
                        n.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {item:?}")))?,
                    ),
                    None => (item, 1),
                };
                if !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(Error::Parse(format!("bad symbol name {name:?}")));
                }
                let id = match (reg.lookup(name), kind) {
                    (Some(id), _) => id,
                    (None, Some(k)) => reg.intern(name, k)?,
                    (None, None) => return Err(Error::UnknownSymbol(name.to_string())),
                };
                if exp > 0 {
                    mono = mono.mul(&Monomial(vec![(id, exp)]));
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl Registry {
    /// Registers `name` and returns it as a polynomial.
    ///
    /// Panics if `name` already exists with another kind; use
    /// [`Registry::intern`] to handle that case.
    pub fn var(&self, name: &str, kind: SymbolKind) -> MPoly {
        let id = self
            .intern(name, kind)
            .unwrap_or_else(|e| panic!("cannot register {name}: {e}"));
        MPoly::var(self, id)
    }

    /// Looks up an existing symbol by name.
    pub fn get(&self, name: &str) -> Result<MPoly> {
        self.lookup(name)
            .map(|id| MPoly::var(self, id))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Parses a polynomial in this registry's symbols, panicking on malformed
    /// input. Intended for transcribed constants.
    pub fn poly(&self, text: &str) -> MPoly {
        MPoly::parse(text, self).unwrap_or_else(|e| panic!("cannot parse {text:?}: {e}"))
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms != other.terms {
            return false;
        }
        match (&self.reg, &other.reg) {
            (Some(a), Some(b)) => a.same(b) || self.is_constant(),
            _ => true,
        }
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for MPoly {
    /// Terms by decreasing total degree, then by their factor names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut rows: Vec<(u32, Vec<(String, u32)>, &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let names = m
                    .factors()
                    .iter()
                    .map(|&(s, e)| {
                        let reg = self.reg.as_ref().expect("non-constant polynomial has a registry");
                        (reg.name(s), e)
                    })
                    .collect();
                (m.degree(), names, c)
            })
            .collect();
        rows.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        for (i, (_, names, c)) in rows.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = names
                .iter()
                .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl super::Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, q: &Rational) -> Self {
        self.scale(q)
    }
    fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.as_constant() {
            Some(c) => Ok(MPoly::constant(c.recip())),
            None => Err(Error::NotInvertible(self.to_string())),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        MPoly::constant(q.clone())
    }
    fn pow(&self, n: u32) -> Self {
        MPoly::pow(self, n)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        *self = &*self - rhs;
    }
}

impl Mul<&Rational> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &Rational) -> MPoly {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Ring};
    use proptest::prelude::*;

    fn registry() -> Registry {
        let reg = Registry::new();
        reg.var("rho_z", SymbolKind::GaloisKummer);
        reg.var("chi", SymbolKind::CyclotomicCharacter);
        reg.var("x", SymbolKind::Generic);
        reg
    }

    #[test]
    fn canonical_text_orders_by_degree_then_name() {
        let reg = registry();
        let p = reg.poly("1 - 1/2*rho_z + 3/2*rho_z^2*chi");
        assert_eq!(p.to_string(), "3/2*rho_z^2*chi - 1/2*rho_z + 1");
        assert_eq!(MPoly::parse(&p.to_string(), &reg).unwrap(), p);
        assert_eq!(reg.poly("-x + x").to_string(), "0");
        assert_eq!(reg.poly("-x").to_string(), "-x");
    }

    #[test]
    fn parse_rejects_garbage() {
        let reg = registry();
        assert!(MPoly::parse("rho_z +", &reg).is_err());
        assert!(MPoly::parse("y", &reg).is_err());
        assert!(MPoly::parse("rho_z^q", &reg).is_err());
        assert!(MPoly::parse("2**x", &reg).is_err());
    }

    #[test]
    fn mixing_registries_is_an_error() {
        let a = registry();
        let b = registry();
        let p = a.poly("x");
        let q = b.poly("x");
        assert_eq!(p.try_add(&q), Err(Error::RegistryMismatch));
        assert_eq!(p.try_mul(&q), Err(Error::RegistryMismatch));
        assert!(p.try_add(&MPoly::int(3)).is_ok());
    }

    #[test]
    fn inverse_only_for_nonzero_constants() {
        let reg = registry();
        assert_eq!(MPoly::zero().try_inverse(), Err(Error::DivisionByZero));
        assert!(matches!(reg.poly("x").try_inverse(), Err(Error::NotInvertible(_))));
        assert_eq!(MPoly::int(4).try_inverse().unwrap(), MPoly::constant(rat(1, 4)));
    }

    #[test]
    fn substitution_and_solving() {
        let reg = registry();
        let p = reg.poly("rho_z^2 + 2*rho_z*x + 1");
        let rho = reg.lookup("rho_z").unwrap();
        let map = HashMap::from([(rho, reg.poly("x - 1"))]);
        assert_eq!(p.substitute(&map).unwrap(), reg.poly("3*x^2 - 4*x + 2"));

        let eq = reg.poly("2*chi - rho_z + 1/2");
        let chi = reg.lookup("chi").unwrap();
        assert_eq!(eq.solve_for(chi).unwrap(), reg.poly("1/2*rho_z - 1/4"));
        assert!(p.solve_for(rho).is_err());
        assert_eq!(reg.poly("3*x - 6").ratio_to(&reg.poly("x - 2")), Some(rat(3, 1)));
        assert_eq!(reg.poly("3*x - 5").ratio_to(&reg.poly("x - 2")), None);
    }

    fn arb_poly(reg: Registry) -> impl Strategy<Value = MPoly> {
        let ids: Vec<SymbolId> = ["rho_z", "chi", "x"]
            .iter()
            .map(|n| reg.lookup(n).unwrap())
            .collect();
        prop::collection::vec((-5i64..=5, 1i64..=4, prop::collection::vec(0u32..3, 3)), 0..5)
            .prop_map(move |terms| {
                MPoly::from_terms(
                    &reg,
                    terms.into_iter().map(|(n, d, exps)| {
                        let mut m = Monomial::one();
                        for (id, e) in ids.iter().zip(exps) {
                            if e > 0 {
                                m = m.mul(&Monomial(vec![(*id, e)]));
                            }
                        }
                        (m, rat(n, d))
                    }),
                )
            })
    }

    fn triple() -> impl Strategy<Value = (MPoly, MPoly, MPoly)> {
        let reg = registry();
        (arb_poly(reg.clone()), arb_poly(reg.clone()), arb_poly(reg))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a - &a, MPoly::zero());
            prop_assert_eq!(&a * &MPoly::one(), a.clone());
        }

        #[test]
        fn text_round_trip((a, _, _) in triple()) {
            let reg = a.registry().cloned().unwrap_or_default();
            let back = MPoly::parse(&a.to_string(), &reg).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
