//! Values checked against closed forms and published digits, at the
//! working precision rather than f64.

use astro_float::BigFloat;
use polylog_core::ring::{rat, ComplexVal, Ring, DEFAULT_PRECISION as P};
use polylog_num::{mpl, mzv, polylog};

const TOL: f64 = 1e-32;

fn bf(x: &str) -> BigFloat {
    ComplexVal::parse_real(x, P).unwrap().re
}

fn gap(a: &ComplexVal, b: &ComplexVal) -> f64 {
    a.minus(b).abs_f64()
}

fn ln2() -> ComplexVal {
    ComplexVal::ln_real(&bf("2"), P).unwrap()
}

fn pi_sq() -> ComplexVal {
    let pi = ComplexVal::real(ComplexVal::pi(P), P);
    pi.times(&pi)
}

#[test]
fn zeta3_digits() {
    let want = ComplexVal::parse_real("1.2020569031595942853997381615114499907649862923405", P).unwrap();
    assert!(gap(&polylog(3, &bf("1"), TOL).unwrap(), &want) < 1e-30);
    let v = mzv(&[1, 2], TOL, P).unwrap().value;
    assert!(gap(&ComplexVal::real(v, P), &want) < 1e-30);
}

#[test]
fn dilog_at_half() {
    // π²/12 - ln²2/2
    let want = pi_sq().scaled(&rat(1, 12)).minus(&ln2().pow(2).scaled(&rat(1, 2)));
    assert!(gap(&polylog(2, &bf("0.5"), TOL).unwrap(), &want) < 1e-30);
}

#[test]
fn trilog_at_half() {
    // 7/8 ζ(3) - π² ln2/12 + ln³2/6
    let z3 = polylog(3, &bf("1"), TOL).unwrap();
    let want = z3
        .scaled(&rat(7, 8))
        .minus(&pi_sq().times(&ln2()).scaled(&rat(1, 12)))
        .plus(&ln2().pow(3).scaled(&rat(1, 6)));
    assert!(gap(&polylog(3, &bf("0.5"), TOL).unwrap(), &want) < 1e-30);
}

#[test]
fn depth_two_at_half_matches_shuffle() {
    // shuffles: Li_1² = 2Li_{1,1}, Li_1·Li_2 = Li_{2,1} + 2Li_{1,2}
    let x = bf("0.5");
    let l1 = polylog(1, &x, TOL).unwrap();
    let l11 = mpl(&[1, 1], &x, TOL).unwrap();
    let l2 = polylog(2, &x, TOL).unwrap();
    assert!(gap(&l1.times(&l1), &l11.scaled(&rat(2, 1))) < 1e-30);
    let l12 = mpl(&[1, 2], &x, TOL).unwrap();
    let l21 = mpl(&[2, 1], &x, TOL).unwrap();
    assert!(gap(&l1.times(&l2), &l21.plus(&l12.scaled(&rat(2, 1)))) < 1e-30);
    assert!(gap(&l11, &ln2().pow(2).scaled(&rat(1, 2))) < 1e-30);
}
