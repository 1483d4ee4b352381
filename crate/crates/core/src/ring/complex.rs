use super::rational::Rational;
use super::Ring;
use crate::error::{Error, Result};
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::cell::RefCell;
use std::fmt;

pub const DEFAULT_PRECISION: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    if let Some(v) = n.to_i64() {
        return BigFloat::from_i64(v, p);
    }
    let s = n.to_string();
    with_consts(|cc| BigFloat::parse(&s, Radix::Dec, p, RM, cc))
}

/// Complex number with arbitrary-precision parts. Operations run at the
/// larger precision of their operands.
#[derive(Clone)]
pub struct ComplexVal {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

impl ComplexVal {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        ComplexVal { re, im, prec }
    }

    pub fn real(re: BigFloat, prec: usize) -> Self {
        ComplexVal {
            re,
            im: BigFloat::from_i64(0, prec),
            prec,
        }
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Self::real(BigFloat::from_f64(x, prec), prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Self::real(BigFloat::from_i64(n, prec), prec)
    }

    pub fn rational(q: &Rational, prec: usize) -> Self {
        let n = bigint_to_float(q.numer(), prec);
        let d = bigint_to_float(q.denom(), prec);
        Self::real(n.div(&d, prec, RM), prec)
    }

    /// Parses a decimal literal exactly to the working precision.
    pub fn parse_real(s: &str, prec: usize) -> Result<Self> {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, prec, RM, cc));
        if v.is_nan() {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        Ok(Self::real(v, prec))
    }

    pub fn pi(prec: usize) -> BigFloat {
        with_consts(|cc| cc.pi(prec, RM))
    }

    /// `iπ`.
    pub fn i_pi(prec: usize) -> Self {
        ComplexVal {
            re: BigFloat::from_i64(0, prec),
            im: Self::pi(prec),
            prec,
        }
    }

    /// `2πi`.
    pub fn two_pi_i(prec: usize) -> Self {
        Self::i_pi(prec).scaled(&Rational::from_integer(2.into()))
    }

    /// Natural logarithm of a nonzero real, principal branch.
    pub fn ln_real(x: &BigFloat, prec: usize) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::Domain("log of zero".into()));
        }
        let abs = x.abs();
        let re = with_consts(|cc| abs.ln(prec, RM, cc));
        let im = if x.is_negative() {
            Self::pi(prec)
        } else {
            BigFloat::from_i64(0, prec)
        };
        Ok(ComplexVal { re, im, prec })
    }

    pub fn conj(&self) -> Self {
        ComplexVal {
            re: self.re.clone(),
            im: self.im.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> BigFloat {
        let p = self.prec;
        let n = self
            .re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM);
        n.sqrt(p, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        to_f64(&self.abs())
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    fn prec_with(&self, other: &Self) -> usize {
        self.prec.max(other.prec)
    }
}

/// Nearest `f64` to `x` (through its decimal expansion).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_default();
    s.parse().unwrap_or(f64::NAN)
}

impl PartialEq for ComplexVal {
    fn eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

impl fmt::Debug for ComplexVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexVal({self})")
    }
}

impl fmt::Display for ComplexVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = self.im_f64();
        if im == 0.0 {
            write!(f, "{:e}", self.re_f64())
        } else {
            write!(f, "{:e}{:+e}i", self.re_f64(), im)
        }
    }
}

impl Ring for ComplexVal {
    fn zero() -> Self {
        ComplexVal::from_i64(0, DEFAULT_PRECISION)
    }
    fn one() -> Self {
        ComplexVal::from_i64(1, DEFAULT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        let p = self.prec_with(o);
        ComplexVal::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }
    fn minus(&self, o: &Self) -> Self {
        let p = self.prec_with(o);
        ComplexVal::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }
    fn times(&self, o: &Self) -> Self {
        let p = self.prec_with(o);
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        ComplexVal::new(re, im, p)
    }
    fn negated(&self) -> Self {
        ComplexVal::new(self.re.neg(), self.im.neg(), self.prec)
    }
    fn scaled(&self, q: &Rational) -> Self {
        let p = self.prec;
        let n = bigint_to_float(q.numer(), p);
        let d = bigint_to_float(q.denom(), p);
        let f = |x: &BigFloat| x.mul(&n, p, RM).div(&d, p, RM);
        ComplexVal::new(f(&self.re), f(&self.im), p)
    }
    fn try_inverse(&self) -> Result<Self> {
        if Ring::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec;
        let n = self
            .re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM);
        Ok(ComplexVal::new(
            self.re.div(&n, p, RM),
            self.im.neg().div(&n, p, RM),
            p,
        ))
    }
    fn from_rational(q: &Rational) -> Self {
        ComplexVal::rational(q, DEFAULT_PRECISION)
    }
    fn from_int(n: i64) -> Self {
        ComplexVal::from_i64(n, DEFAULT_PRECISION)
    }
}

impl ComplexVal {
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    pub fn sign_of_re(&self) -> i32 {
        if self.re.is_zero() {
            0
        } else if self.re.is_negative() {
            -1
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn field_operations() {
        let a = ComplexVal::new(BigFloat::from_i64(3, 128), BigFloat::from_i64(4, 128), 128);
        assert!((a.abs_f64() - 5.0).abs() < 1e-30);
        let inv = a.try_inverse().unwrap();
        let one = a.times(&inv);
        assert!(one.minus(&ComplexVal::one()).abs_f64() < 1e-35);
        assert_eq!(ComplexVal::zero().try_inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_scaling_and_logs() {
        let third = ComplexVal::rational(&rat(1, 3), 128).scaled(&rat(3, 1));
        assert!(third.minus(&ComplexVal::one()).abs_f64() < 1e-35);
        let l = ComplexVal::ln_real(&BigFloat::from_i64(-1, 128), 128).unwrap();
        assert!(l.re_f64().abs() < 1e-35);
        assert!((l.im_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(ComplexVal::ln_real(&BigFloat::from_i64(0, 128), 128).is_err());
    }
}
