use super::chain::{chain_rule_1mz, li_coefficient, lmf_regular_coeff};
use super::fixtures::{generic_drinfeld, generic_group_like};
use super::symbols::{dual_index, Point, Side, SideSymbols};
use crate::error::{Error, Result};
use crate::ncpoly::{Letter, NCSeries, Word};
use crate::report::{Intermediate, Report};
use crate::ring::{rat, MPoly, Ring, SymbolId};
use std::collections::HashMap;

/// Largest truncation degree accepted by the symbolic checks.
pub const MAX_DEGREE: usize = 8;

/// Named identities produced along the derivation, each meaning `p = 0`.
#[derive(Clone, Debug)]
pub struct OiUenoDerivation {
    pub k: usize,
    pub pre_identity: MPoly,
    pub duality: MPoly,
    pub identity: MPoly,
    pub intermediates: Vec<Intermediate>,
}

fn word(letters: &[(Letter, usize)]) -> Word {
    Word::new(
        letters
            .iter()
            .flat_map(|&(l, n)| std::iter::repeat_n(l, n))
            .collect(),
    )
}

/// `κ_z` as it enters the sum: `ρ_z` (ℓ-adic) or `-log z` (complex).
fn kappa(syms: &SideSymbols) -> MPoly {
    syms.kummer(Point::Z)
        .scale(&rat(-syms.side.kummer_sign(), 1))
}

/// `Σ_{j<k} Li_{k-j}(z) κ^j/j! + Li_{1,...,1,2}(1-z)`.
fn oiueno_sum(syms: &SideSymbols, k: usize) -> MPoly {
    let kap = kappa(syms);
    let mut sum = syms.li(&dual_index(k), Point::OneMinusZ);
    let mut fact = 1i64;
    for j in 0..k {
        if j > 0 {
            fact *= j as i64;
        }
        let term = &syms.li(&[k - j], Point::Z) * &kap.pow(j as u32);
        sum = &sum + &term.scale(&rat(1, fact));
    }
    sum
}

fn id_of(p: &MPoly) -> SymbolId {
    *p.symbols().iter().next().expect("a symbol")
}

/// Derives the Oi–Ueno equation of weight `k` in the symbols of `syms`.
///
/// Named quantities are tied to a generic group-like `f_{1-z}` and a generic
/// associator `Φ` satisfying the 2-cycle relation, through `f_z = f_{1-z}(Y,X)Φ`;
/// every step is then checked by substitution.
pub fn derive_oiueno(k: usize, syms: &SideSymbols) -> Result<OiUenoDerivation> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("weight {k} must be at least 2")));
    }
    let reg = &syms.reg;
    let f1mz = generic_group_like(reg, "F", k, false);
    let phi = generic_drinfeld(reg, "P", k);
    let fz = chain_rule_1mz(&f1mz, &phi)?;
    let sign = rat(syms.side.kummer_sign(), 1);

    let mut dict: HashMap<SymbolId, MPoly> = HashMap::new();
    dict.insert(id_of(&syms.kummer(Point::Z)), fz.at("X").scale(&sign));
    for m in 1..=k {
        dict.insert(id_of(&syms.li(&[m], Point::Z)), li_coefficient(&fz, &[m])?);
        if m >= 2 {
            dict.insert(id_of(&syms.zeta(&[m])), li_coefficient(&phi, &[m])?);
        }
    }
    let dual = dual_index(k);
    dict.insert(
        id_of(&syms.li(&dual, Point::OneMinusZ)),
        li_coefficient(&f1mz, &dual)?,
    );
    dict.insert(id_of(&syms.zeta_dual(k)), li_coefficient(&phi, &dual)?);

    let mut steps = Vec::new();

    let lmf = match lmf_regular_coeff(&fz, k) {
        Ok(_) => MPoly::zero(),
        Err(Error::Mismatch(_)) => {
            let w = word(&[(Letter::Y, 1), (Letter::X, k - 1)]);
            fz.coeff(&w) - lmf_value(&fz, k)
        }
        Err(e) => return Err(e),
    };
    steps.push(Intermediate::exact(
        "regular-coefficient formula for YX^(k-1)",
        "Le-Murakami-Furusho formula",
        format!("coefficient of YX^{} at z", k - 1),
        &lmf,
    ));

    let yx = word(&[(Letter::Y, 1), (Letter::X, k - 1)]);
    let xy = word(&[(Letter::X, 1), (Letter::Y, k - 1)]);
    let chain = &f1mz.coeff(&xy) - &(&fz.coeff(&yx) + &phi.coeff(&xy));
    steps.push(Intermediate::exact(
        "coefficient comparison in the chain rule",
        "chain rule along z -> 1-z",
        format!("c_{xy}(f_1-z) = c_{yx}(f_z) + c_{xy}(Phi)"),
        &chain,
    ));

    let pre = &oiueno_sum(syms, k) - &syms.zeta_dual(k);
    steps.push(Intermediate::exact(
        "identity before duality",
        "Oi-Ueno equation with the dual zeta value",
        format!("{pre} = 0"),
        &pre.substitute(&dict)?,
    ));

    let mut at10: Vec<(String, MPoly)> = vec![
        (syms.kummer(Point::Z).to_string(), MPoly::zero()),
        (syms.li(&dual, Point::OneMinusZ).to_string(), MPoly::zero()),
    ];
    for m in 2..=k {
        at10.push((syms.li(&[m], Point::Z).to_string(), syms.zeta(&[m])));
    }
    let refs: Vec<(&str, MPoly)> = at10.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let duality = pre.substitute_named(&refs)?;
    steps.push(Intermediate::exact(
        "duality from the tangential specialisation",
        "duality of zeta values",
        format!("{duality} = 0"),
        &duality.substitute(&dict)?,
    ));

    let identity = if k == 2 {
        pre.clone()
    } else {
        let value = duality.solve_for(id_of(&syms.zeta_dual(k)))?;
        pre.substitute(&HashMap::from([(id_of(&syms.zeta_dual(k)), value)]))?
    };
    let template = &oiueno_sum(syms, k) - &syms.zeta(&[k]);
    let mut final_residual = identity.substitute(&dict)?;
    if identity != template {
        final_residual = &final_residual + &(&identity - &template);
    }
    steps.push(Intermediate::exact(
        "Oi-Ueno equation",
        "Oi-Ueno equation",
        format!("{identity} = 0"),
        &final_residual,
    ));

    Ok(OiUenoDerivation {
        k,
        pre_identity: pre,
        duality,
        identity,
        intermediates: steps,
    })
}

fn lmf_value(f: &NCSeries<MPoly>, k: usize) -> MPoly {
    let minus_cx = f.at("X").negated();
    let mut sum = MPoly::zero();
    let mut fact = 1i64;
    for t in 0..k {
        if t > 0 {
            fact *= t as i64;
        }
        let li = li_coefficient(f, &[k - t]).expect("valid index");
        sum = &sum + &(&li * &minus_cx.pow(t as u32)).scale(&rat(1, fact));
    }
    if k % 2 == 1 {
        sum.negated()
    } else {
        sum
    }
}

/// Symbolic check of the Oi–Ueno equation of weight `k`.
pub fn verify_oiueno(k: usize, side: Side, trunc: usize) -> Result<Report> {
    if trunc > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "truncation {trunc} exceeds the limit {MAX_DEGREE}"
        )));
    }
    if k < 2 || k > trunc {
        return Err(Error::InvalidArgument(format!(
            "weight {k} must lie in 2..={trunc}"
        )));
    }
    let syms = SideSymbols::new(side);
    let d = derive_oiueno(k, &syms)?;
    let last = d.intermediates.last().expect("final step");
    let residual = last.residual.clone();
    let ok = residual.is_exact_zero();
    Ok(Report::new(
        format!("oiueno-k{k}-{side}"),
        format!("Oi-Ueno equation of weight {k}, {side} side"),
        residual,
        ok,
        d.intermediates.clone(),
    )
    .with_note(format!("duality derived: {} = 0", d.duality)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Registry;

    #[test]
    fn weight_two_by_hand() {
        // f_1-z: c_X = a, c_Y = b, c_XY = p; Φ: c_XY = -q.
        // f_z = f_1-z(Y,X)Φ gives c_X = b, c_Y = a, c_XY = ab - p - q, so
        // Li2(z) + Li1(z)ρ_z + Li2(1-z) = (p + q - ab) + ab - p = q = ζ(2).
        let reg = Registry::new();
        let a = reg.var("a", crate::ring::SymbolKind::Generic);
        let b = reg.var("b", crate::ring::SymbolKind::Generic);
        let p = reg.var("p", crate::ring::SymbolKind::Generic);
        let q = reg.var("q", crate::ring::SymbolKind::Generic);
        let li2_z = &(&p + &q) - &(&a * &b);
        let li1_z = a.negated();
        let rho_z = b.negated();
        let li2_1mz = p.negated();
        let lhs = &(&li2_z + &(&li1_z * &rho_z)) + &li2_1mz;
        assert_eq!(lhs, q);

        let syms = SideSymbols::new(Side::Ladic);
        let d = derive_oiueno(2, &syms).unwrap();
        assert_eq!(
            d.identity.to_string(),
            "rho_z*Li1_z + Li2_1mz + Li2_z - zeta2"
        );
    }

    #[test]
    fn weights_two_to_five_hold_on_both_sides() {
        for side in [Side::Ladic, Side::Complex] {
            for k in 2..=5 {
                let r = verify_oiueno(k, side, 6).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn duality_is_derived() {
        let syms = SideSymbols::new(Side::Ladic);
        let d = derive_oiueno(3, &syms).unwrap();
        assert_eq!(d.duality.to_string(), "-zeta12 + zeta3");
        let d = derive_oiueno(4, &syms).unwrap();
        assert_eq!(d.duality.to_string(), "-zeta112 + zeta4");
    }

    #[test]
    fn rejects_out_of_range_weights() {
        assert!(verify_oiueno(9, Side::Ladic, 9).is_err());
        assert!(verify_oiueno(7, Side::Ladic, 6).is_err());
        assert!(verify_oiueno(1, Side::Ladic, 6).is_err());
    }
}
