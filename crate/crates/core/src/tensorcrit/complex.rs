use super::p3::{p3, LiVector};
use crate::associator::{derive_dilog_identities, derive_landen3, Point, Side, SideSymbols};
use crate::error::Result;
use crate::report::{Intermediate, Report, Residual};
use crate::ring::{rat, ComplexVal, MPoly, Ring, SymbolId};
use std::collections::HashMap;

/// `(2πi)^{max(j,1)} · li_j(p)`: `-log p`, `-log(1-p)`,
/// `-(Li_2 + ½ log p log(1-p))`, `Li_3 - ½ log p Li_2 - 1/12 log²p log(1-p)`.
/// The rescaling makes every entry a polynomial; `P3` is homogeneous of
/// degree 3 under it.
pub fn li_complex(syms: &SideSymbols, j: usize, p: Point) -> MPoly {
    let l = syms.kummer(p);
    let l1 = syms.kummer(p.one_minus().expect("finite point"));
    match j {
        0 => l.negated(),
        1 => l1.negated(),
        2 => (&syms.li(&[2], p) + &(&l * &l1).scale(&rat(1, 2))).negated(),
        3 => {
            &(&syms.li(&[3], p) - &(&l * &syms.li(&[2], p)).scale(&rat(1, 2)))
                - &(&l.pow(2) * &l1).scale(&rat(1, 12))
        }
        _ => panic!("graded Lie polylogarithms are tabulated for j <= 3"),
    }
}

/// Values at one point: `log p`, `log(1-p)`, `Li_2(p)`, `Li_3(p)`.
#[derive(Clone, Debug)]
pub struct ComplexPointValues {
    pub log_p: ComplexVal,
    pub log_1mp: ComplexVal,
    pub li2: ComplexVal,
    pub li3: ComplexVal,
}

/// `li_0, ..., li_3` at one point, unscaled.
pub fn li_complex_values(v: &ComplexPointValues, prec: usize) -> Result<LiVector<ComplexVal>> {
    let tau = ComplexVal::two_pi_i(prec).try_inverse()?;
    let half = rat(1, 2);
    let li2 = v.li2.plus(&v.log_p.times(&v.log_1mp).scaled(&half));
    let li3 = v
        .li3
        .minus(&v.log_p.times(&v.li2).scaled(&half))
        .minus(&v.log_p.times(&v.log_p).times(&v.log_1mp).scaled(&rat(1, 12)));
    Ok(LiVector([
        tau.times(&v.log_p).negated(),
        tau.times(&v.log_1mp).negated(),
        tau.pow(2).times(&li2).negated(),
        tau.pow(3).times(&li3),
    ]))
}

/// Negated `li_j` of the tangential base points: `0`,
/// `(0, 0, -ζ(2)/(4π²), -ζ(3)/(2πi)³)`, `(½, 0, 0, 0)`.
pub fn complex_boundaries(zeta2: &ComplexVal, zeta3: &ComplexVal, prec: usize) -> Result<[LiVector<ComplexVal>; 3]> {
    let tau = ComplexVal::two_pi_i(prec).try_inverse()?;
    let z = ComplexVal::zero;
    Ok([
        LiVector::zero(),
        LiVector([z(), z(), tau.pow(2).times(zeta2), tau.pow(3).times(zeta3).negated()]),
        LiVector([ComplexVal::rational(&rat(1, 2), prec), z(), z(), z()]),
    ])
}

/// `P3(li(f_i(z)), boundary_i)` for the points `z`, `1-z`, `z/(z-1)`.
pub fn complex_pipeline_terms(
    values: [&ComplexPointValues; 3],
    zeta2: &ComplexVal,
    zeta3: &ComplexVal,
    prec: usize,
) -> Result<[ComplexVal; 3]> {
    let b = complex_boundaries(zeta2, zeta3, prec)?;
    let mut out = [ComplexVal::zero(), ComplexVal::zero(), ComplexVal::zero()];
    for i in 0..3 {
        out[i] = p3(&li_complex_values(values[i], prec)?, &b[i]);
    }
    Ok(out)
}

fn id(p: &MPoly) -> SymbolId {
    *p.symbols().iter().next().expect("symbol")
}

/// The complex assembly done exactly: the sum of the rescaled `P3` terms,
/// with `log(z/(z-1)) = log z - log(1-z) + iπ`, `log(1/(1-z)) = -log(1-z)`,
/// the derived dilogarithm equations and `ζ(2) = -(iπ)²/6`, is compared with
/// the trilogarithm equation.
pub fn pipeline_complex_symbolic() -> Result<Report> {
    let syms = SideSymbols::new(Side::Complex);
    let pts = [Point::Z, Point::OneMinusZ, Point::ZOverZMinusOne];
    let pi_i = syms.axial();
    let zero = MPoly::zero;
    let bounds = [
        LiVector::zero(),
        LiVector([zero(), zero(), syms.zeta(&[2]), syms.zeta(&[3]).negated()]),
        LiVector([pi_i.clone(), zero(), zero(), zero()]),
    ];
    let terms: Vec<MPoly> = (0..3)
        .map(|i| {
            let l = LiVector(std::array::from_fn(|j| li_complex(&syms, j, pts[i])));
            p3(&l, &bounds[i])
        })
        .collect();
    let mut steps: Vec<Intermediate> = Vec::new();

    let dilog = derive_dilog_identities(&syms)?;
    let mut rules: Vec<(SymbolId, MPoly)> = vec![
        (id(&syms.kummer(Point::ZOverZMinusOne)), &(&syms.kummer(Point::Z) - &syms.kummer(Point::OneMinusZ)) + &pi_i),
        (id(&syms.kummer(Point::InvOneMinusZ)), syms.kummer(Point::OneMinusZ).negated()),
    ];
    for (rel, p) in [(&dilog.landen, Point::ZOverZMinusOne), (&dilog.reflection, Point::OneMinusZ)] {
        let s = id(&syms.li(&[2], p));
        rules.push((s, rel.solve_for(s)?));
    }
    rules.push((id(&syms.zeta(&[2])), pi_i.pow(2).scale(&rat(-1, 6))));
    let apply = |p: &MPoly| -> Result<MPoly> {
        let mut out = p.clone();
        for (s, v) in &rules {
            out = out.substitute(&HashMap::from([(*s, v.clone())]))?;
        }
        Ok(out)
    };
    let sum = apply(&terms.iter().fold(MPoly::zero(), |a, b| &a + b))?;
    let landen = derive_landen3(&syms)?;
    let li3_sum = pts.iter().fold(MPoly::zero(), |a, &p| &a + &syms.li(&[3], p));
    let target = apply(&(&li3_sum - &landen.rhs))?;
    // Displayed values of the three terms, rescaled: the boundary `½`
    // becomes `iπ`, and `-li_2(10)` becomes `ζ(2)`.
    let l = |j, p| li_complex(&syms, j, p);
    let zz1 = Point::ZOverZMinusOne;
    let displayed = [
        l(3, Point::Z),
        &(&l(3, Point::OneMinusZ) - &syms.zeta(&[3])) + &(&l(0, Point::OneMinusZ) * &syms.zeta(&[2])).scale(&rat(1, 2)),
        &(&l(3, zz1) - &(&pi_i * &l(2, zz1)).scale(&rat(1, 2)))
            + &(&(&pi_i.pow(2) * &l(1, zz1)) - &(&(&pi_i * &l(1, zz1)) * &l(0, zz1))).scale(&rat(1, 12)),
    ];
    for (i, t) in terms.iter().enumerate() {
        steps.push(Intermediate::exact(
            format!("term along {}", ["z", "1-z", "z/(z-1)"][i]),
            "P3 with complex Lie polylogarithms, times (2 pi i)^3",
            t,
            &(t - &displayed[i]),
        ));
    }
    let residual = &sum - &target;
    steps.push(Intermediate::exact(
        "sum of terms versus the trilogarithm equation",
        "complex trilogarithm equation",
        format!("{sum} = 0"),
        &residual,
    ));
    Ok(Report::new(
        "pipeline-complex-symbolic",
        "complex P3 assembly, exact",
        Residual::Exact(residual.to_string()),
        residual.is_zero(),
        steps,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescaled_entries() {
        let syms = SideSymbols::new(Side::Complex);
        assert_eq!(li_complex(&syms, 0, Point::Z), syms.poly("-log_z"));
        assert_eq!(
            li_complex(&syms, 3, Point::Z),
            syms.poly("Li3_z - 1/2*log_z*Li2_z - 1/12*log_z^2*log_1mz")
        );
    }

    #[test]
    fn exact_complex_assembly() {
        let r = pipeline_complex_symbolic().unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn boundary_lists() {
        let prec = 128;
        let z2 = ComplexVal::from_f64(1.6449340668482264, prec);
        let z3 = ComplexVal::from_f64(1.2020569031595942, prec);
        let b = complex_boundaries(&z2, &z3, prec).unwrap();
        assert_eq!(b[2].0[0].re_f64(), 0.5);
        let want = -1.6449340668482264 / (4.0 * std::f64::consts::PI.powi(2));
        assert!((b[1].0[2].re_f64() - want).abs() < 1e-15);
        assert!(b[1].0[2].im_f64().abs() < 1e-15);
    }
}
