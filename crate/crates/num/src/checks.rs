use crate::series::{mpl, polylog};
use astro_float::{BigFloat, RoundingMode};
use polylog_core::ring::{rat, ComplexVal, Ring, DEFAULT_PRECISION};
use polylog_core::tensorcrit::{complex_pipeline_terms, ComplexPointValues};
use polylog_core::{Error, Result};
use serde::Serialize;
use std::fmt;

const RM: RoundingMode = RoundingMode::ToEven;
const P: usize = DEFAULT_PRECISION;

/// Functional equations checked numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckId {
    /// `Li_2(z) + Li_2(1-z) = ζ(2) - log z log(1-z)`.
    EulerLi2,
    /// `Li_2(z) + Li_2(z/(z-1)) = -½ log²(1-z)`.
    LandenLi2,
    /// Landen's trilogarithm equation.
    LandenLi3,
    /// `Σ_j Li_{k-j}(z) (-log z)^j/j! + Li_{1,...,1,2}(1-z) = ζ(k)`.
    OiUeno(usize),
    /// `Li_{2,1}(z)` in depth one.
    Li21,
    /// `Li_{1,2}(z)` in depth one.
    Li12,
}

impl CheckId {
    pub fn all(max_k: usize) -> Vec<CheckId> {
        let mut v = vec![CheckId::EulerLi2, CheckId::LandenLi2, CheckId::LandenLi3, CheckId::Li21, CheckId::Li12];
        v.extend((2..=max_k).map(CheckId::OiUeno));
        v
    }

    /// Admissible open interval of `z`; the upper end is included.
    pub fn domain(self) -> (f64, f64) {
        match self {
            CheckId::EulerLi2 | CheckId::Li21 | CheckId::Li12 => (0.05, 0.95),
            CheckId::OiUeno(_) | CheckId::LandenLi2 | CheckId::LandenLi3 => (0.05, 0.5),
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        Some(match s {
            "euler-li2" => CheckId::EulerLi2,
            "landen-li2" => CheckId::LandenLi2,
            "landen-li3" => CheckId::LandenLi3,
            "li21" => CheckId::Li21,
            "li12" => CheckId::Li12,
            _ => CheckId::OiUeno(s.strip_prefix("oi-ueno-k")?.parse().ok()?),
        })
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::EulerLi2 => f.write_str("euler-li2"),
            CheckId::LandenLi2 => f.write_str("landen-li2"),
            CheckId::LandenLi3 => f.write_str("landen-li3"),
            CheckId::OiUeno(k) => write!(f, "oi-ueno-k{k}"),
            CheckId::Li21 => f.write_str("li21"),
            CheckId::Li12 => f.write_str("li12"),
        }
    }
}

/// One CSV row of the numeric report.
#[derive(Clone, Debug, Serialize)]
pub struct NumericRow {
    pub equation_id: String,
    pub z: f64,
    pub residual: f64,
    pub terms: usize,
}

struct Point {
    z: BigFloat,
    omz: BigFloat,
    zz1: BigFloat,
    log_z: ComplexVal,
    log_1mz: ComplexVal,
}

impl Point {
    fn new(z: f64) -> Result<Point> {
        let zb = BigFloat::from_f64(z, P);
        let one = BigFloat::from_u64(1, P);
        let omz = one.sub(&zb, P, RM);
        let zz1 = zb.div(&zb.sub(&one, P, RM), P, RM);
        Ok(Point {
            log_z: ComplexVal::ln_real(&zb, P)?,
            log_1mz: ComplexVal::ln_real(&omz, P)?,
            z: zb,
            omz,
            zz1,
        })
    }
}

fn q(n: i64, d: i64) -> polylog_core::ring::Rational {
    rat(n, d)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `|LHS - RHS|` of one equation at `z`, and the number of series terms it
/// took.
pub fn numeric_check(id: CheckId, z: f64, tol: f64) -> Result<NumericRow> {
    let (lo, hi) = id.domain();
    if !(z > lo && z <= hi) {
        return Err(Error::Domain(format!("{id} needs z in ({lo}, {hi}], got {z}")));
    }
    if let CheckId::OiUeno(k) = id {
        if !(2..=5).contains(&k) {
            return Err(Error::Domain(format!("{id}: k must lie in 2..=5")));
        }
    }
    let p = Point::new(z)?;
    let one = BigFloat::from_u64(1, P);
    let zeta = |k: usize| polylog(k, &one, tol);
    let lz = &p.log_z;
    let l1 = &p.log_1mz;
    let residual = match id {
        CheckId::EulerLi2 => polylog(2, &p.z, tol)?
            .plus(&polylog(2, &p.omz, tol)?)
            .minus(&zeta(2)?)
            .plus(&lz.times(l1)),
        CheckId::LandenLi2 => polylog(2, &p.z, tol)?
            .plus(&polylog(2, &p.zz1, tol)?)
            .plus(&l1.times(l1).scaled(&q(1, 2))),
        CheckId::LandenLi3 => {
            let lhs = polylog(3, &p.z, tol)?
                .plus(&polylog(3, &p.omz, tol)?)
                .plus(&polylog(3, &p.zz1, tol)?);
            let rhs = zeta(3)?
                .plus(&zeta(2)?.times(l1))
                .minus(&lz.times(l1).times(l1).scaled(&q(1, 2)))
                .plus(&l1.pow(3).scaled(&q(1, 6)));
            lhs.minus(&rhs)
        }
        CheckId::OiUeno(k) => {
            let mut acc = ComplexVal::zero();
            let minus_log = lz.negated();
            for j in 0..k {
                let t = polylog(k - j, &p.z, tol)?
                    .times(&minus_log.pow(j as u32))
                    .scaled(&q(1, factorial(j)));
                acc = acc.plus(&t);
            }
            let mut dual = vec![1usize; k - 2];
            dual.push(2);
            acc.plus(&mpl(&dual, &p.omz, tol)?).minus(&zeta(k)?)
        }
        CheckId::Li21 => {
            let lhs = mpl(&[2, 1], &p.z, tol)?;
            let rhs = zeta(2)?
                .times(l1)
                .negated()
                .minus(&zeta(3)?.scaled(&q(2, 1)))
                .minus(&polylog(2, &p.omz, tol)?.times(l1))
                .plus(&polylog(3, &p.omz, tol)?.scaled(&q(2, 1)));
            lhs.minus(&rhs)
        }
        CheckId::Li12 => {
            let lhs = mpl(&[1, 2], &p.z, tol)?;
            let rhs = zeta(3)?
                .minus(&polylog(3, &p.omz, tol)?)
                .plus(&polylog(2, &p.omz, tol)?.times(l1))
                .plus(&lz.times(l1).times(l1).scaled(&q(1, 2)));
            lhs.minus(&rhs)
        }
    };
    Ok(NumericRow {
        equation_id: id.to_string(),
        z,
        residual: residual.abs_f64(),
        terms: terms_for(id, z, tol),
    })
}

/// Series terms summed for the non-constant polylogarithms of a check.
fn terms_for(id: CheckId, z: f64, tol: f64) -> usize {
    let prec = P;
    let b = |x: f64| BigFloat::from_f64(x, prec);
    let count = |k: &[usize], x: f64| crate::series::mpl_eval(k, &b(x), tol, prec).map_or(0, |e| e.terms);
    let zz1 = z / (z - 1.0);
    match id {
        CheckId::EulerLi2 => count(&[2], z) + count(&[2], 1.0 - z),
        CheckId::LandenLi2 => count(&[2], z) + count(&[2], zz1),
        CheckId::LandenLi3 => count(&[3], z) + count(&[3], 1.0 - z) + count(&[3], zz1),
        CheckId::OiUeno(k) => {
            let mut dual = vec![1usize; k.saturating_sub(2)];
            dual.push(2);
            (1..=k).map(|m| count(&[m], z)).sum::<usize>() + count(&dual, 1.0 - z)
        }
        CheckId::Li21 => count(&[2, 1], z) + count(&[2], 1.0 - z) + count(&[3], 1.0 - z),
        CheckId::Li12 => count(&[1, 2], z) + count(&[2], 1.0 - z) + count(&[3], 1.0 - z),
    }
}

/// `n` evenly spaced points in `(lo, hi]`, ending at `hi`.
pub fn sample_points(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

fn values_at(x: &BigFloat, tol: f64) -> Result<ComplexPointValues> {
    let one = BigFloat::from_u64(1, P);
    Ok(ComplexPointValues {
        log_p: ComplexVal::ln_real(x, P)?,
        log_1mp: ComplexVal::ln_real(&one.sub(x, P, RM), P)?,
        li2: polylog(2, x, tol)?,
        li3: polylog(3, x, tol)?,
    })
}

/// `|Σ_i P3(li(f_i(z)), boundary_i)|` with `log(z/(z-1))` on the branch
/// `log(z/(1-z)) + iπ`. Requires `0 < z ≤ ½`.
pub fn pipeline_complex(z: f64, tol: f64) -> Result<(f64, [ComplexVal; 3])> {
    if !(z > 0.0 && z <= 0.5) {
        return Err(Error::Domain(format!("complex pipeline needs 0 < z <= 1/2, got {z}")));
    }
    let p = Point::new(z)?;
    let one = BigFloat::from_u64(1, P);
    let vals = [values_at(&p.z, tol)?, values_at(&p.omz, tol)?, values_at(&p.zz1, tol)?];
    let terms = complex_pipeline_terms(
        [&vals[0], &vals[1], &vals[2]],
        &polylog(2, &one, tol)?,
        &polylog(3, &one, tol)?,
        P,
    )?;
    let sum = terms[0].plus(&terms[1]).plus(&terms[2]);
    Ok((sum.abs_f64(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DEFAULT_TOL;

    #[test]
    fn euler_at_half() {
        let r = numeric_check(CheckId::EulerLi2, 0.5, DEFAULT_TOL).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
    }

    #[test]
    fn landen3_at_three_tenths() {
        let r = numeric_check(CheckId::LandenLi3, 0.3, DEFAULT_TOL).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
    }

    #[test]
    fn oi_ueno_k3() {
        let r = numeric_check(CheckId::OiUeno(3), 0.4, DEFAULT_TOL).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
    }

    #[test]
    fn depth_two_identities() {
        for z in [0.1, 0.37, 0.8] {
            for id in [CheckId::Li21, CheckId::Li12] {
                let r = numeric_check(id, z, DEFAULT_TOL).unwrap();
                assert!(r.residual < 1e-12, "{r:?}");
            }
        }
    }

    #[test]
    fn pipeline_at_sample_points() {
        for z in [0.3, 0.5, 0.25] {
            let (res, _) = pipeline_complex(z, DEFAULT_TOL).unwrap();
            assert!(res < 1e-12, "z = {z}: {res}");
        }
    }

    #[test]
    fn wrong_branch_fails() {
        // Using the conjugate branch for log(z/(z-1)) breaks the sum.
        let z = 0.3;
        let p = Point::new(z).unwrap();
        let one = BigFloat::from_u64(1, P);
        let mut v = values_at(&p.zz1, DEFAULT_TOL).unwrap();
        v.log_p = v.log_p.conj();
        let a = values_at(&p.z, DEFAULT_TOL).unwrap();
        let b = values_at(&p.omz, DEFAULT_TOL).unwrap();
        let t = complex_pipeline_terms(
            [&a, &b, &v],
            &polylog(2, &one, DEFAULT_TOL).unwrap(),
            &polylog(3, &one, DEFAULT_TOL).unwrap(),
            P,
        )
        .unwrap();
        assert!(t[0].plus(&t[1]).plus(&t[2]).abs_f64() > 1e-3);
    }

    #[test]
    fn ids_round_trip() {
        for id in CheckId::all(5) {
            assert_eq!(CheckId::parse(&id.to_string()), Some(id));
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(numeric_check(CheckId::LandenLi3, 0.7, DEFAULT_TOL).is_err());
        assert!(numeric_check(CheckId::OiUeno(6), 0.3, DEFAULT_TOL).is_err());
    }
}
