use super::symbols::{Point, Side, SideSymbols};
use super::AssociatorSeries;
use crate::error::{Error, Result};
use crate::freelie::{lyndon_words, LieElement};
use crate::ncpoly::{shuffle, NCSeries, Word};
use crate::ring::{MPoly, Registry, Ring, SymbolKind};

/// Degree-3 expansion of the complex associator to `z`.
pub const G0_COMPLEX_DEG3: &str = include_str!("../../fixtures/g0_complex_deg3.tsv");
/// Degree-3 expansion of the Drinfeld associator.
pub const PHI_COMPLEX_DEG3: &str = include_str!("../../fixtures/phi_complex_deg3.tsv");
/// Degree-3 expansion of the ℓ-adic Galois associator to `z`.
pub const FSIGMA_LADIC_DEG3: &str = include_str!("../../fixtures/fsigma_ladic_deg3.tsv");

/// Eliminates `target` using the shuffle relation for `u ш v`.
///
/// The degree-3 tables carry `Li_{2,1}` and `Li_{1,2}` as independent symbols,
/// but `XY ш Y` ties them together; solving that relation for one of them
/// makes the table group-like.
pub fn eliminate_by_shuffle(
    f: &NCSeries<MPoly>,
    u: &Word,
    v: &Word,
    target: &MPoly,
) -> Result<NCSeries<MPoly>> {
    let mut rel = f.coeff(u).times(&f.coeff(v)).negated();
    for (w, m) in shuffle(u, v) {
        rel = &rel + &f.coeff(&w).scale(&crate::ring::rat(m, 1));
    }
    let id = *target
        .symbols()
        .iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument("target must be a symbol".into()))?;
    if rel.degree_in(id) == 0 {
        return Ok(f.clone());
    }
    let value = rel.solve_for(id)?;
    f.substitute_symbols(&[(id, value)].into_iter().collect())
}

fn raw_table(syms: &SideSymbols) -> Result<NCSeries<MPoly>> {
    let text = match syms.side {
        Side::Complex => G0_COMPLEX_DEG3,
        Side::Ladic => FSIGMA_LADIC_DEG3,
    };
    NCSeries::from_text(text, &syms.reg, 3)
}

/// The associator to `p ∈ {z, 1-z}` through degree 3 (extended by fresh
/// symbols when `trunc > 3`), with `Li_{2,1}` eliminated.
pub fn fixture_path(syms: &SideSymbols, p: Point, trunc: usize) -> Result<AssociatorSeries> {
    let raw = raw_table(syms)?;
    let raw = match p {
        Point::Z => raw,
        Point::OneMinusZ => raw.map_coeffs(|c| syms.relabel_z_1mz(c)),
        _ => return Err(Error::InvalidArgument(format!("no table for point {}", p.suffix()))),
    };
    let target = syms.li(&[2, 1], p);
    let reduced = eliminate_by_shuffle(
        &raw,
        &Word::parse("XY")?,
        &Word::parse("Y")?,
        &target,
    )?;
    let series = extend_group_like(&reduced, trunc, &format!("g{}", p.suffix()), &syms.reg)?;
    let label = match syms.side {
        Side::Complex => "G0",
        Side::Ladic => "f_sigma",
    };
    Ok(AssociatorSeries {
        label: format!("{label}({})", p.suffix()),
        side: syms.side,
        point: Some(p),
        series,
    })
}

/// The path table with the sign of the `Kummer·Li_2(z)` term of the `XYX`
/// coefficient flipped, a known transcription error; it is not group-like.
pub fn with_xyx_misprint(syms: &SideSymbols, f: &NCSeries<MPoly>) -> NCSeries<MPoly> {
    let li2 = syms.li(&[2], Point::Z);
    let id = *li2.symbols().iter().next().expect("symbol");
    let c = f.at("XYX");
    let part = &c.coefficient_in(id, 1) * &li2;
    let mut g = f.clone();
    g.set(Word::parse("XYX").expect("word"), &c - &part.scale(&crate::ring::rat(2, 1)));
    g
}

/// The associator along the real interval to the tangential point `10`.
///
/// On the complex side this is the transcribed Drinfeld associator; on the
/// ℓ-adic side it is the specialisation of the path table at that point
/// (`ρ ↦ 0`, `Li_k(z) ↦ ζ(k)`).
pub fn fixture_phi(syms: &SideSymbols, trunc: usize) -> Result<AssociatorSeries> {
    let series = match syms.side {
        Side::Complex => NCSeries::from_text(PHI_COMPLEX_DEG3, &syms.reg, 3)?,
        Side::Ladic => {
            let raw = raw_table(syms)?;
            let mut pairs = vec![
                ("rho_z".to_string(), MPoly::zero()),
                ("rho_1mz".to_string(), MPoly::zero()),
            ];
            for idx in [&[2][..], &[3], &[1, 2], &[2, 1]] {
                let name = syms.li(idx, Point::Z).to_string();
                pairs.push((name, syms.zeta(idx)));
            }
            let refs: Vec<(&str, MPoly)> =
                pairs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
            let at10 = raw.try_map_coeffs(|c| c.substitute_named(&refs))?;
            eliminate_by_shuffle(
                &at10,
                &Word::parse("XY")?,
                &Word::parse("Y")?,
                &syms.zeta(&[2, 1]),
            )?
        }
    };
    let series = extend_group_like(&series, trunc, "gphi", &syms.reg)?;
    Ok(AssociatorSeries {
        label: "Phi".into(),
        side: syms.side,
        point: Some(Point::Tangent10),
        series,
    })
}

/// Extends a group-like series to truncation `trunc` by adding independent
/// symbols `{prefix}_{w}` for the Lyndon words `w` of the new degrees to its
/// logarithm.
pub fn extend_group_like(
    f: &NCSeries<MPoly>,
    trunc: usize,
    prefix: &str,
    reg: &Registry,
) -> Result<NCSeries<MPoly>> {
    let n = f.trunc();
    if trunc <= n {
        return Ok(f.truncated(trunc));
    }
    let log = LieElement::from_series(&f.log()?)?;
    let mut l = LieElement::<MPoly>::zero(trunc);
    for (w, c) in log.terms() {
        l.set(w.clone(), c.clone());
    }
    for w in lyndon_words(trunc) {
        if w.len() > n {
            l.set(w.clone(), reg.var(&format!("{prefix}_{w}"), SymbolKind::Generic));
        }
    }
    Ok(l.exp())
}

/// `exp` of a Lie element with independent symbols `{prefix}_{w}`; with
/// `vanishing_degree_one` the letters themselves are left out.
pub fn generic_group_like(
    reg: &Registry,
    prefix: &str,
    trunc: usize,
    vanishing_degree_one: bool,
) -> NCSeries<MPoly> {
    let min = if vanishing_degree_one { 2 } else { 1 };
    LieElement::generic(reg, prefix, trunc, min).exp()
}

/// A generic associator satisfying the 2-cycle relation
/// `Φ(X,Y)·Φ(Y,X) = 1`: `Φ = exp(η - η(Y,X))` for a generic Lie element `η`
/// without linear terms.
pub fn generic_drinfeld(reg: &Registry, prefix: &str, trunc: usize) -> NCSeries<MPoly> {
    let eta = LieElement::generic(reg, prefix, trunc, 2);
    let psi = eta.minus(&eta.swap()).expect("same truncation");
    psi.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn tables_are_canonical_text() {
        for side in [Side::Complex, Side::Ladic] {
            let syms = SideSymbols::new(side);
            let raw = raw_table(&syms).unwrap();
            let text = match side {
                Side::Complex => G0_COMPLEX_DEG3,
                Side::Ladic => FSIGMA_LADIC_DEG3,
            };
            assert_eq!(raw.to_text(), text);
        }
        let syms = SideSymbols::new(Side::Complex);
        let phi = NCSeries::from_text(PHI_COMPLEX_DEG3, &syms.reg, 3).unwrap();
        assert_eq!(phi.to_text(), PHI_COMPLEX_DEG3);
    }

    #[test]
    fn raw_tables_need_the_shuffle_reduction() {
        for side in [Side::Complex, Side::Ladic] {
            let syms = SideSymbols::new(side);
            let check = raw_table(&syms).unwrap().is_group_like();
            assert_eq!(check.witness, Some((w("XY"), w("Y"))));
            let f = fixture_path(&syms, Point::Z, 3).unwrap();
            assert!(f.series.is_group_like().holds, "{side}");
        }
    }

    #[test]
    fn reduction_by_hand() {
        // XY ш Y = 2 XYY + YXY gives Li21 = c_XY c_Y - 2 Li12
        let syms = SideSymbols::new(Side::Complex);
        let f = fixture_path(&syms, Point::Z, 3).unwrap();
        assert_eq!(f.series.at("YXY"), syms.poly("-log_1mz*Li2_z - 2*Li12_z"));
        let syms = SideSymbols::new(Side::Ladic);
        let f = fixture_path(&syms, Point::Z, 3).unwrap();
        assert_eq!(f.series.at("YXY"), syms.poly("rho_1mz*Li2_z - 2*Li12_z"));
    }

    #[test]
    fn flipped_signs_break_group_likeness() {
        let syms = SideSymbols::new(Side::Complex);
        let mut f = fixture_path(&syms, Point::Z, 3).unwrap().series;
        let c = f.at("YXY");
        f.set(w("YXY"), c.negated());
        assert_eq!(f.is_group_like().witness, Some((w("XY"), w("Y"))));

        // the misprinted sign of log(z)Li2(z) in the XYX coefficient
        let g = with_xyx_misprint(&syms, &fixture_path(&syms, Point::Z, 3).unwrap().series);
        assert_eq!(g.at("XYX"), syms.poly("log_z*Li2_z + 2*Li3_z"));
        assert!(!g.is_group_like().holds);
        let l = SideSymbols::new(Side::Ladic);
        let g = with_xyx_misprint(&l, &fixture_path(&l, Point::Z, 3).unwrap().series);
        assert!(!g.is_group_like().holds);
    }

    #[test]
    fn drinfeld_tables_are_group_like_and_agree() {
        let c = SideSymbols::new(Side::Complex);
        let phi = fixture_phi(&c, 3).unwrap().series;
        assert!(phi.is_group_like().holds);
        let l = SideSymbols::new(Side::Ladic);
        let phil = fixture_phi(&l, 3).unwrap().series;
        assert!(phil.is_group_like().holds);
        for (word, coeff) in phi.terms() {
            assert_eq!(phil.coeff(word).to_string(), coeff.to_string());
        }
    }

    #[test]
    fn extension_keeps_low_degrees() {
        let syms = SideSymbols::new(Side::Ladic);
        let f3 = fixture_path(&syms, Point::Z, 3).unwrap().series;
        let f5 = fixture_path(&syms, Point::Z, 5).unwrap().series;
        assert_eq!(f5.truncated(3), f3);
        assert!(f5.is_group_like().holds);
        assert!(!f5.at("XXXY").is_zero());
    }

    #[test]
    fn generic_drinfeld_satisfies_two_cycle() {
        let reg = Registry::new();
        let phi = generic_drinfeld(&reg, "P", 4);
        assert!(phi.is_group_like().holds);
        assert!(phi.at("X").is_zero() && phi.at("Y").is_zero());
        assert_eq!(&phi * &phi.swap(), NCSeries::one(4));
    }
}
