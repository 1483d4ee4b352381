use astro_float::{BigFloat, RoundingMode};
use polylog_core::ring::{ComplexVal, DEFAULT_PRECISION};
use polylog_core::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Tail tolerance used when none is given; well below the 128-bit working
/// precision's resolution of the checks.
pub const DEFAULT_TOL: f64 = 1e-30;

const MAX_TERMS: usize = 200_000;

/// A series value together with the number of terms summed.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: BigFloat,
    pub terms: usize,
}

fn f64_of(x: &BigFloat) -> f64 {
    polylog_core::ring::ComplexVal::real(x.clone(), DEFAULT_PRECISION).re_f64()
}

/// Smallest `N` with certified tail `Σ_{n>N} |x|^n (1+ln n)^{d-1} / n^{k_d}`
/// below `tol`.
fn terms_needed(ax: f64, depth: usize, last: usize, tol: f64) -> Result<usize> {
    let mut n = depth.max(1);
    loop {
        let m = (n + 1) as f64;
        let r = ax * (1.0 + 1.0 / m).powi(depth as i32 - 1);
        if r < 1.0 {
            let t = ax.powf(m) * (1.0 + m.ln()).powi(depth as i32 - 1) / m.powi(last as i32);
            if t / (1.0 - r) < tol {
                return Ok(n);
            }
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::Domain(format!("series at |x| = {ax} needs more than {MAX_TERMS} terms")));
        }
    }
}

/// `Li_{k_1,...,k_d}(x) = Σ_{0<n_1<...<n_d} x^{n_d} / (n_1^{k_1} ... n_d^{k_d})`
/// for `|x| < 1`, by prefix sums.
fn nested_sum(k: &[usize], x: &BigFloat, tol: f64, prec: usize) -> Result<Evaluation> {
    let ax = f64_of(&x.abs());
    let d = k.len();
    let n_max = terms_needed(ax, d, k[d - 1], tol)?;
    let one = BigFloat::from_u64(1, prec);
    let mut prefix: Vec<BigFloat> = vec![BigFloat::from_u64(0, prec); d];
    let mut power = one.clone();
    let mut total = BigFloat::from_u64(0, prec);
    for n in 1..=n_max {
        let inv = one.div(&BigFloat::from_u64(n as u64, prec), prec, RM);
        power = power.mul(x, prec, RM);
        // a_j(n) = prefix_{j-1}(n) / n^{k_j}, prefix_0 = 1.
        let mut below = one.clone();
        let mut a_vals = Vec::with_capacity(d);
        for (j, &kj) in k.iter().enumerate() {
            let mut a = if j == 0 { below.clone() } else { prefix[j - 1].clone() };
            for _ in 0..kj {
                a = a.mul(&inv, prec, RM);
            }
            a_vals.push(a.clone());
            below = a;
        }
        total = total.add(&a_vals[d - 1].mul(&power, prec, RM), prec, RM);
        for j in 0..d {
            prefix[j] = prefix[j].add(&a_vals[j], prec, RM);
        }
    }
    Ok(Evaluation {
        value: total,
        terms: n_max,
    })
}

/// Index `(k_1, ..., k_d)` of the word `0^{k_d-1} 1 ... 0^{k_1-1} 1`.
fn index_of_word(w: &[u8]) -> Vec<usize> {
    let mut groups = Vec::new();
    let mut zeros = 0;
    for &a in w {
        if a == 0 {
            zeros += 1;
        } else {
            groups.push(zeros + 1);
            zeros = 0;
        }
    }
    groups.reverse();
    groups
}

fn word_of_index(k: &[usize]) -> Vec<u8> {
    let mut w = Vec::new();
    for &kj in k.iter().rev() {
        w.extend(std::iter::repeat_n(0, kj - 1));
        w.push(1);
    }
    w
}

/// Iterated integral of `w` from 0 to ½.
fn half_integral(w: &[u8], tol: f64, prec: usize) -> Result<Evaluation> {
    if w.is_empty() {
        return Ok(Evaluation {
            value: BigFloat::from_u64(1, prec),
            terms: 0,
        });
    }
    let half = BigFloat::from_f64(0.5, prec);
    nested_sum(&index_of_word(w), &half, tol, prec)
}

/// Multiple zeta value `ζ(k_1, ..., k_d)` with `k_d ≥ 2`, by splitting the
/// path at ½: `ζ(w) = Σ_j I_{0→½}(dual(w_{<j})) · I_{0→½}(w_{≥j})`, where
/// `dual` reverses a word and exchanges the letters.
pub fn mzv(k: &[usize], tol: f64, prec: usize) -> Result<Evaluation> {
    if k.is_empty() || k.contains(&0) || k[k.len() - 1] < 2 {
        return Err(Error::Domain(format!("zeta{k:?} needs positive parts and last part >= 2")));
    }
    let w = word_of_index(k);
    let n = w.len();
    let mut total = BigFloat::from_u64(0, prec);
    let mut terms = 0;
    let part_tol = tol / (n as f64 + 1.0) / 4.0;
    for j in 0..=n {
        let dual: Vec<u8> = w[..j].iter().rev().map(|a| 1 - a).collect();
        let left = half_integral(&dual, part_tol, prec)?;
        let right = half_integral(&w[j..], part_tol, prec)?;
        terms += left.terms + right.terms;
        total = total.add(&left.value.mul(&right.value, prec, RM), prec, RM);
    }
    Ok(Evaluation { value: total, terms })
}

/// Multiple polylogarithm at a real argument: `|x| < 1`, or `x = 1` with
/// last part `≥ 2`. Depth one also accepts `x = -1`.
pub fn mpl_eval(k: &[usize], x: &BigFloat, tol: f64, prec: usize) -> Result<Evaluation> {
    if k.is_empty() || k.contains(&0) {
        return Err(Error::Domain(format!("index {k:?} must be nonempty with positive parts")));
    }
    let xf = f64_of(x);
    let one = BigFloat::from_u64(1, prec);
    if x == &one {
        return mzv(k, tol, prec);
    }
    if x == &one.neg() && k.len() == 1 {
        // Li_k(-1) = -(1 - 2^{1-k}) ζ(k); Li_1(-1) = -ln 2.
        if k[0] == 1 {
            let ln2 = ComplexVal::ln_real(&BigFloat::from_u64(2, prec), prec)?.re;
            return Ok(Evaluation { value: ln2.neg(), terms: 0 });
        }
        let z = mzv(k, tol, prec)?;
        let mut f = one.clone();
        for _ in 1..k[0] {
            f = f.div(&BigFloat::from_u64(2, prec), prec, RM);
        }
        let value = one.sub(&f, prec, RM).mul(&z.value, prec, RM).neg();
        return Ok(Evaluation { value, terms: z.terms });
    }
    if !(xf.abs() <= 0.99) {
        return Err(Error::Domain(format!("argument {xf} outside |x| <= 0.99")));
    }
    nested_sum(k, x, tol, prec)
}

pub fn mpl(k: &[usize], x: &BigFloat, tol: f64) -> Result<ComplexVal> {
    let e = mpl_eval(k, x, tol, DEFAULT_PRECISION)?;
    Ok(ComplexVal::real(e.value, DEFAULT_PRECISION))
}

/// Classical polylogarithm `Li_k(x)`.
pub fn polylog(k: usize, x: &BigFloat, tol: f64) -> Result<ComplexVal> {
    mpl(&[k], x, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polylog_core::ring::Ring;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64(x, DEFAULT_PRECISION)
    }

    fn close(a: &ComplexVal, b: f64, tol: f64) -> bool {
        (a.re_f64() - b).abs() < tol && a.im_f64().abs() < tol
    }

    #[test]
    fn li1_is_minus_log() {
        let v = polylog(1, &bf(0.3), DEFAULT_TOL).unwrap();
        let omx = bf(1.0).sub(&bf(0.3), DEFAULT_PRECISION, RM);
        let l = ComplexVal::ln_real(&omx, DEFAULT_PRECISION).unwrap();
        assert!(v.plus(&l).abs_f64() < 1e-28);
    }

    #[test]
    fn li2_at_half() {
        // π²/12 - ln²2/2, from an independent closed form.
        let v = polylog(2, &bf(0.5), DEFAULT_TOL).unwrap();
        let pi = std::f64::consts::PI;
        let want = pi * pi / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!(close(&v, want, 1e-15));
        assert!(close(&v, 0.5822405264650125, 1e-15));
    }

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!(close(&polylog(2, &bf(1.0), 1e-25).unwrap(), pi * pi / 6.0, 1e-15));
        assert!(close(&polylog(3, &bf(1.0), 1e-25).unwrap(), 1.2020569031595942, 1e-15));
        assert!(close(&polylog(4, &bf(1.0), 1e-25).unwrap(), pi.powi(4) / 90.0, 1e-15));
        // ζ(1,2) = ζ(3), ζ(2,2) = (ζ(2)² - ζ(4))/2.
        let z12 = mpl(&[1, 2], &bf(1.0), 1e-25).unwrap();
        assert!(close(&z12, 1.2020569031595942, 1e-15));
        let z22 = mpl(&[2, 2], &bf(1.0), 1e-25).unwrap();
        let want = ((pi * pi / 6.0).powi(2) - pi.powi(4) / 90.0) / 2.0;
        assert!(close(&z22, want, 1e-15));
    }

    #[test]
    fn minus_one() {
        let pi = std::f64::consts::PI;
        assert!(close(&polylog(2, &bf(-1.0), 1e-25).unwrap(), -pi * pi / 12.0, 1e-15));
        assert!(close(&polylog(1, &bf(-1.0), 1e-25).unwrap(), -std::f64::consts::LN_2, 1e-15));
    }

    #[test]
    fn depth_three_ones() {
        let x = 0.4;
        let v = mpl(&[1, 1, 1], &bf(x), DEFAULT_TOL).unwrap();
        let want = -(1.0f64 - x).ln().powi(3) / 6.0;
        assert!(close(&v, want, 1e-15));
    }

    #[test]
    fn depth_one_agrees_with_polylog() {
        for k in 1..=6 {
            for x in [0.2, 0.5, 0.8] {
                let a = mpl(&[k], &bf(x), DEFAULT_TOL).unwrap();
                let b = polylog(k, &bf(x), DEFAULT_TOL).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn doubling_terms_is_within_tolerance() {
        let prec = DEFAULT_PRECISION;
        for (k, x) in [(vec![2usize], 0.7), (vec![1, 2], 0.6), (vec![1, 1, 2], -0.5)] {
            let e = nested_sum(&k, &bf(x), 1e-20, prec).unwrap();
            let n = e.terms;
            // Sum 2N terms by requesting a tolerance the first N cannot meet.
            let mut tol = 1e-20;
            let mut f = nested_sum(&k, &bf(x), tol, prec).unwrap();
            while f.terms < 2 * n {
                tol /= 10.0;
                f = nested_sum(&k, &bf(x), tol, prec).unwrap();
            }
            let diff = f64_of(&e.value.sub(&f.value, prec, RM).abs());
            assert!(diff < 1e-20, "{k:?} {x}: {diff}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(polylog(2, &bf(0.995), DEFAULT_TOL).is_err());
        assert!(polylog(1, &bf(1.0), DEFAULT_TOL).is_err());
        assert!(mpl(&[2, 1], &bf(1.0), DEFAULT_TOL).is_err());
        assert!(mpl(&[1, 2], &bf(-1.0), DEFAULT_TOL).is_err());
    }
}
