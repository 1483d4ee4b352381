//! Seeded randomized property checks over every module, for the command
//! line `selftest`. The same seed always yields the same samples.

use crate::associator::{fixture_path, fixture_phi, lmf_regular_coeff, with_xyx_misprint, Point, Side, SideSymbols};
use crate::charconv::{characters_from_li, li_from_characters};
use crate::freelie::{bch, lyndon_words, LieElement};
use crate::report::{Report, Residual};
use crate::ring::{rat, MPoly, Rational, Registry, Ring, SymbolKind};
use crate::tensorcrit::{p3, AbTensor, LiVector, TorsionMode, UnitElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sample sizes and degrees for one run.
#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Random exp(Lie) series for the group-like and regular-coefficient
    /// checks.
    pub group_like_samples: usize,
    pub group_like_degree: usize,
    /// Random triples for BCH associativity and exp/log round trips.
    pub bch_samples: usize,
    pub bch_degree: usize,
    pub other_samples: usize,
}

impl SelftestConfig {
    pub fn new(seed: u64) -> Self {
        SelftestConfig {
            seed,
            group_like_samples: 200,
            group_like_degree: 6,
            bch_samples: 20,
            bch_degree: 5,
            other_samples: 100,
        }
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Random Lie element with small rational coefficients on Lyndon words.
pub fn random_lie(rng: &mut ChaCha8Rng, degree: usize) -> LieElement<Rational> {
    let mut l = LieElement::zero(degree);
    for w in lyndon_words(degree) {
        if rng.gen_bool(0.7) {
            l.set(w, small_rational(rng));
        }
    }
    l
}

fn outcome(id: &str, reference: &str, cases: usize, failure: Option<String>) -> Report {
    let ok = failure.is_none();
    let r = Report::new(
        id,
        reference,
        Residual::Exact(if ok { "0".into() } else { "nonzero".into() }),
        ok,
        Vec::new(),
    )
    .with_note(format!("{cases} cases"));
    match failure {
        Some(f) => r.with_note(f),
        None => r,
    }
}

fn group_like_and_lmf(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Vec<Report> {
    let n = cfg.group_like_degree;
    let mut gl_fail = None;
    let mut lmf_fail = None;
    for i in 0..cfg.group_like_samples {
        let f = random_lie(rng, n).exp();
        let check = f.is_group_like();
        if !check.holds && gl_fail.is_none() {
            gl_fail = Some(format!("sample {i}: witness {:?}", check.witness));
        }
        for k in 1..=n {
            if let Err(e) = lmf_regular_coeff(&f, k) {
                lmf_fail.get_or_insert(format!("sample {i}, k = {k}: {e}"));
            }
        }
    }
    vec![
        outcome("prop-group-like-exp-lie", "shuffle relations of exp(Lie)", cfg.group_like_samples, gl_fail),
        outcome("prop-regular-coefficients", "regular-coefficient formula", cfg.group_like_samples, lmf_fail),
    ]
}

fn bch_and_exp_log(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Vec<Report> {
    let n = cfg.bch_degree;
    let mut assoc_fail = None;
    let mut round_fail = None;
    for i in 0..cfg.bch_samples {
        let (a, b, c) = (random_lie(rng, n), random_lie(rng, n), random_lie(rng, n));
        let left = bch(&bch(&a, &b).expect("bch"), &c).expect("bch");
        let right = bch(&a, &bch(&b, &c).expect("bch")).expect("bch");
        if left != right && assoc_fail.is_none() {
            assoc_fail = Some(format!("sample {i}"));
        }
        let back = a.exp().log().and_then(|s| LieElement::from_series(&s));
        if back.as_ref() != Ok(&a) && round_fail.is_none() {
            round_fail = Some(format!("sample {i}"));
        }
    }
    vec![
        outcome("prop-bch-associative", "BCH associativity", cfg.bch_samples, assoc_fail),
        outcome("prop-exp-log", "exp/log round trip on Lie elements", cfg.bch_samples, round_fail),
    ]
}

fn fixtures() -> Vec<Report> {
    let mut fail = None;
    let mut cases = 0;
    for side in [Side::Complex, Side::Ladic] {
        let syms = SideSymbols::new(side);
        for p in [Point::Z, Point::OneMinusZ] {
            cases += 1;
            let f = fixture_path(&syms, p, 3).expect("fixture");
            if !f.series.is_group_like().holds {
                fail.get_or_insert(format!("{side} path table at {}", p.suffix()));
            }
            if p == Point::Z {
                cases += 1;
                if with_xyx_misprint(&syms, &f.series).is_group_like().holds {
                    fail.get_or_insert(format!("{side}: XYX sign flip still group-like"));
                }
            }
        }
        cases += 1;
        if !fixture_phi(&syms, 3).expect("phi").series.is_group_like().holds {
            fail.get_or_insert(format!("{side} Drinfeld table"));
        }
    }
    vec![outcome("prop-fixtures-group-like", "degree-3 associator tables", cases, fail)]
}

fn mpoly_ring(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Vec<Report> {
    let reg = Registry::new();
    let vars: Vec<MPoly> = ["u", "v", "w"].iter().map(|n| reg.var(n, SymbolKind::Generic)).collect();
    let random_poly = |rng: &mut ChaCha8Rng| {
        let mut p = MPoly::zero();
        for _ in 0..rng.gen_range(0..5) {
            let mut m = MPoly::constant(small_rational(rng));
            for v in &vars {
                m = &m * &v.pow(rng.gen_range(0..3));
            }
            p += &m;
        }
        p
    };
    let mut fail = None;
    for i in 0..cfg.other_samples {
        let (a, b, c) = (random_poly(rng), random_poly(rng), random_poly(rng));
        let ok = &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && MPoly::parse(&a.to_string(), &reg).as_ref() == Ok(&a);
        if !ok {
            fail.get_or_insert(format!("sample {i}"));
        }
    }
    vec![outcome("prop-mpoly-ring", "polynomial ring axioms and text round trip", cfg.other_samples, fail)]
}

fn characters(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Vec<Report> {
    let reg = Registry::new();
    let rho = reg.var("r", SymbolKind::Generic);
    let mut fail = None;
    for i in 0..cfg.other_samples {
        // Random rational specialisations of the weight <= 6 systems.
        let r = MPoly::constant(small_rational(rng));
        let chars: Vec<MPoly> = (0..6).map(|_| MPoly::constant(small_rational(rng))).collect();
        if characters_from_li(&li_from_characters(&chars, &r), &r) != chars {
            fail.get_or_insert(format!("sample {i}"));
        }
    }
    let sym: Vec<MPoly> = (1..=6).map(|m| reg.var(&format!("t{m}"), SymbolKind::Generic)).collect();
    if characters_from_li(&li_from_characters(&sym, &rho), &rho) != sym {
        fail.get_or_insert("symbolic round trip".into());
    }
    vec![outcome("prop-character-round-trip", "character conversions are inverse", cfg.other_samples + 1, fail)]
}

fn tensors(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Vec<Report> {
    let elem = |rng: &mut ChaCha8Rng| UnitElement([rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
    let mut fail = None;
    for i in 0..cfg.other_samples {
        let (g, g2, h, k) = (elem(rng), elem(rng), elem(rng), elem(rng));
        for mode in [TorsionMode::Free, TorsionMode::MinusOneOrderTwo, TorsionMode::Rational] {
            let anti = AbTensor::simple(g, h, k, mode).plus(&AbTensor::simple(g, k, h, mode)).is_zero();
            let lin = AbTensor::simple(g + g2, h, k, mode)
                == AbTensor::simple(g, h, k, mode).plus(&AbTensor::simple(g2, h, k, mode));
            if !(anti && lin) {
                fail.get_or_insert(format!("sample {i}, {mode:?}"));
            }
        }
    }
    vec![outcome("prop-tensor-normal-form", "antisymmetry and bilinearity", cfg.other_samples, fail)]
}

fn p3_affine(cfg: &SelftestConfig, rng: &mut ChaCha8Rng) -> Vec<Report> {
    let mut fail = None;
    let v = |rng: &mut ChaCha8Rng| LiVector::<Rational>(std::array::from_fn(|_| small_rational(rng)));
    for i in 0..cfg.other_samples {
        let (a, b, c) = (v(rng), v(rng), v(rng));
        let t = small_rational(rng);
        // Entries 1..3 of the first list enter affinely once entry 0 is fixed.
        let mut c_hi = c.clone();
        c_hi.0[0] = Rational::zero();
        let moved = p3(&a.plus(&c_hi.scaled(&t)), &b);
        let lin = p3(&a, &b) + (p3(&a.plus(&c_hi), &b) - p3(&a, &b)) * &t;
        if moved != lin {
            fail.get_or_insert(format!("sample {i}"));
        }
    }
    vec![outcome("prop-p3-affine", "P3 in positive-degree entries", cfg.other_samples, fail)]
}

/// Runs every property check. Reports are sorted by check id.
pub fn run(cfg: &SelftestConfig) -> Vec<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    out.extend(mpoly_ring(cfg, &mut rng));
    out.extend(group_like_and_lmf(cfg, &mut rng));
    out.extend(bch_and_exp_log(cfg, &mut rng));
    out.extend(fixtures());
    out.extend(characters(cfg, &mut rng));
    out.extend(tensors(cfg, &mut rng));
    out.extend(p3_affine(cfg, &mut rng));
    crate::report::sort_reports(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let mut cfg = SelftestConfig::new(7);
        cfg.group_like_samples = 10;
        cfg.bch_samples = 3;
        cfg.other_samples = 10;
        let a = run(&cfg);
        assert!(a.iter().all(|r| r.passed()), "{a:?}");
        let mut rng1 = ChaCha8Rng::seed_from_u64(3);
        let mut rng2 = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_lie(&mut rng1, 4), random_lie(&mut rng2, 4));
    }
}
