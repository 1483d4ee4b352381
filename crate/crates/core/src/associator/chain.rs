use super::symbols::Side;
use crate::error::{Error, Result};
use crate::freelie::{z_series, LieElement};
use crate::ncpoly::{Letter, NCSeries, Word};
use crate::ring::{rat, MPoly, Ring};

/// `f_z = f_{1-z}(Y,X) · Φ(X,Y)`.
pub fn chain_rule_1mz(f_1mz: &NCSeries<MPoly>, phi: &NCSeries<MPoly>) -> Result<NCSeries<MPoly>> {
    if !phi.at("X").is_zero() || !phi.at("Y").is_zero() {
        return Err(Error::InvalidArgument(
            "associator along the unit interval must have no linear terms".into(),
        ));
    }
    f_1mz.swap().try_mul(phi)
}

/// `f_{z/(z-1)} = f_z(X, Z) · exp(aX)` with `Z = -X-Y` on the complex side
/// and `Z = log(e^{-Y} e^{-X})` on the ℓ-adic side.
pub fn chain_rule_mobius(f_z: &NCSeries<MPoly>, a: &MPoly, side: Side) -> Result<NCSeries<MPoly>> {
    let n = f_z.trunc();
    let x = NCSeries::<MPoly>::letter(Letter::X, n);
    let z = match side {
        Side::Complex => (&x + &NCSeries::letter(Letter::Y, n)).neg_series(),
        Side::Ladic => z_series::<MPoly>(n).to_series(),
    };
    let tail = x.scale_by(a).exp()?;
    f_z.substitute_letters(&x, &z)?.try_mul(&tail)
}

/// `Li_k = (-1)^{dep k} c_{w(k)}`.
pub fn li_coefficient<R: Ring>(f: &NCSeries<R>, index: &[usize]) -> Result<R> {
    let c = f.coeff(&Word::regular(index)?);
    Ok(if index.len() % 2 == 1 { c.negated() } else { c })
}

/// Regular-coefficient formula for `c_{YX^{k-1}}` of a group-like series:
/// `(-1)^k Σ_t Li_{k-t} (-c_X)^t / t!` with `Li_m = -c_{X^{m-1}Y}`.
///
/// Returns the formula's value, or [`Error::Mismatch`] with the residual if
/// the coefficient differs from it.
pub fn lmf_regular_coeff<R: Ring>(f: &NCSeries<R>, k: usize) -> Result<R> {
    if k == 0 || k > f.trunc() {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={}", f.trunc())));
    }
    let minus_cx = f.at("X").negated();
    let mut sum = R::zero();
    let mut fact = 1i64;
    for t in 0..k {
        if t > 0 {
            fact *= t as i64;
        }
        let li = li_coefficient(f, &[k - t])?;
        sum = sum.plus(&li.times(&minus_cx.pow(t as u32)).scaled(&rat(1, fact)));
    }
    if k % 2 == 1 {
        sum = sum.negated();
    }
    let mut w = vec![Letter::Y];
    w.extend(std::iter::repeat_n(Letter::X, k - 1));
    let residual = f.coeff(&Word::new(w)).minus(&sum);
    if residual.is_zero() {
        Ok(sum)
    } else {
        Err(Error::Mismatch(format!("YX^{} residual {residual}", k - 1)))
    }
}

/// `Φ(X,Y)·Φ(Y,X) - 1`, coefficient by coefficient.
pub fn two_cycle_defect(phi: &NCSeries<MPoly>) -> Result<NCSeries<MPoly>> {
    let n = phi.trunc();
    phi.try_mul(&phi.swap())?.try_sub(&NCSeries::one(n))
}

/// Lie element `Z` as a series, exposed for the error-term computation.
pub fn z_of(side: Side, n: usize) -> LieElement<MPoly> {
    match side {
        Side::Complex => {
            let x = LieElement::<MPoly>::generator(Letter::X, n);
            let y = LieElement::<MPoly>::generator(Letter::Y, n);
            x.plus(&y).expect("same truncation").scale(&rat(-1, 1))
        }
        Side::Ladic => z_series(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associator::fixtures::{generic_drinfeld, generic_group_like};
    use crate::ring::Registry;

    #[test]
    fn lmf_holds_for_generic_group_like_series() {
        let reg = Registry::new();
        let f = generic_group_like(&reg, "F", 5, false);
        for k in 1..=5 {
            lmf_regular_coeff(&f, k).unwrap();
        }
    }

    #[test]
    fn lmf_degree_two_by_hand() {
        // c_YX = c_X c_Y - c_XY for a group-like series
        let reg = Registry::new();
        let f = generic_group_like(&reg, "F", 2, false);
        let v = lmf_regular_coeff(&f, 2).unwrap();
        assert_eq!(v, &(&f.at("X") * &f.at("Y")) - &f.at("XY"));
    }

    #[test]
    fn lmf_detects_non_group_like_input() {
        let reg = Registry::new();
        let mut f = generic_group_like(&reg, "F", 3, false);
        let c = f.at("YXX");
        f.set(Word::parse("YXX").unwrap(), &c + &MPoly::int(1));
        assert!(matches!(lmf_regular_coeff(&f, 3), Err(Error::Mismatch(_))));
    }

    #[test]
    fn chain_rules_preserve_group_likeness() {
        let reg = Registry::new();
        let f = generic_group_like(&reg, "F", 4, false);
        let phi = generic_drinfeld(&reg, "P", 4);
        let fz = chain_rule_1mz(&f, &phi).unwrap();
        assert!(fz.is_group_like().holds);
        let a = reg.var("a", crate::ring::SymbolKind::Generic);
        for side in [Side::Complex, Side::Ladic] {
            let g = chain_rule_mobius(&fz, &a, side).unwrap();
            assert!(g.is_group_like().holds);
        }
        assert!(chain_rule_1mz(&f, &f).is_err());
    }

    #[test]
    fn mobius_coefficient_by_hand() {
        // complex: c_XXY(z/(z-1)) = -c_XXY + c_XYY + c_YXY - c_YYY
        let reg = Registry::new();
        let f = generic_group_like(&reg, "F", 3, false);
        let a = reg.var("a", crate::ring::SymbolKind::Generic);
        let g = chain_rule_mobius(&f, &a, Side::Complex).unwrap();
        let expect = &(&(&f.at("XYY") + &f.at("YXY")) - &f.at("XXY")) - &f.at("YYY");
        assert_eq!(g.at("XXY"), expect);
    }
}
