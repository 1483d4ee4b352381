use crate::error::{Error, Result};
use crate::ring::{MPoly, SymbolId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// Which symbols take values in `ℤ_ℓ^×`; all others range over `ℤ_ℓ`.
/// At `ℓ = 2` a unit is odd, which is the parity rule `χ ≡ 1 (mod 2)`.
#[derive(Clone, Debug)]
pub struct IntegralityConstraint {
    pub ell: u64,
    pub units: Vec<SymbolId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityOutcome {
    pub integral: bool,
    pub modulus: u64,
    pub cases: u64,
    /// First violating residue assignment, by symbol name.
    pub witness: Option<Vec<(String, u64)>>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn valuation(n: &BigInt, ell: u64) -> u32 {
    let l = BigInt::from(ell);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &l).is_zero() {
        n /= &l;
        v += 1;
    }
    v
}

/// Smallest `c` with `ℓ^c ≥ n`.
fn ceil_log(ell: u64, n: u64) -> u32 {
    let (mut c, mut p) = (0, 1u64);
    while p < n {
        p *= ell;
        c += 1;
    }
    c
}

/// Decides whether `expr` takes values in `ℤ_ℓ` for all admissible symbol
/// values, by enumerating residues modulo `ℓ^{e + ⌈log_ℓ deg⌉ + 1}` where
/// `ℓ^e` is the ℓ-part of the common denominator.
pub fn integrality_check(expr: &MPoly, c: &IntegralityConstraint) -> Result<IntegralityOutcome> {
    let ell = c.ell;
    if !is_prime(ell) {
        return Err(Error::UnsupportedPrime(ell));
    }
    let den = expr
        .terms()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let e = valuation(&den, ell);
    let target = BigInt::from(ell).pow(e);
    let deg = u64::from(expr.degree().max(1));
    let exponent = e + ceil_log(ell, deg) + 1;
    let modulus = ell
        .checked_pow(exponent)
        .filter(|m| *m < 1 << 20)
        .ok_or_else(|| Error::InvalidArgument(format!("modulus {ell}^{exponent} too large")))?;
    let syms: Vec<SymbolId> = expr.symbols().into_iter().collect();
    let tgt = target.to_u128().expect("small modulus");
    // Integer numerator with coefficients reduced modulo ℓ^e.
    let terms: Vec<(u128, Vec<(usize, u32)>)> = expr
        .terms()
        .map(|(m, q)| {
            let n: BigInt = q.numer() * (&den / q.denom());
            let r = n.mod_floor(&target).to_u128().expect("reduced");
            let f = m
                .factors()
                .iter()
                .map(|&(s, k)| (syms.iter().position(|&t| t == s).expect("own symbol"), k))
                .collect();
            (r, f)
        })
        .collect();
    let admissible: Vec<Vec<u64>> = syms
        .iter()
        .map(|s| {
            (0..modulus)
                .filter(|v| !c.units.contains(s) || v % ell != 0)
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; syms.len()];
    let mut cases = 0u64;
    loop {
        if admissible.iter().any(|a| a.is_empty()) {
            break;
        }
        cases += 1;
        let vals: Vec<u128> = idx.iter().zip(&admissible).map(|(&i, a)| u128::from(a[i])).collect();
        let mut acc = 0u128;
        for (coef, f) in &terms {
            let mut t = *coef % tgt;
            for &(j, k) in f {
                for _ in 0..k {
                    t = t * vals[j] % tgt;
                }
            }
            acc = (acc + t) % tgt;
        }
        if acc != 0 {
            let reg = expr.registry().expect("non-constant");
            let witness = syms
                .iter()
                .zip(&vals)
                .map(|(&s, &v)| (reg.name(s), v as u64))
                .collect();
            return Ok(IntegralityOutcome {
                integral: false,
                modulus,
                cases,
                witness: Some(witness),
            });
        }
        // Advance the mixed-radix counter, first symbol fastest.
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(IntegralityOutcome {
                    integral: true,
                    modulus,
                    cases,
                    witness: None,
                });
            }
            idx[j] += 1;
            if idx[j] < admissible[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
    Ok(IntegralityOutcome {
        integral: true,
        modulus,
        cases,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityRow {
    pub term: String,
    pub ell: u64,
    pub modulus: u64,
    pub cases_checked: u64,
    pub integral: bool,
    pub witness: Option<Vec<(String, u64)>>,
}

/// Checks each term separately at each prime.
pub fn integrality_table(
    terms: &[MPoly],
    primes: &[u64],
    units: &[SymbolId],
) -> Result<Vec<IntegralityRow>> {
    let mut rows = Vec::new();
    for &ell in primes {
        for t in terms {
            let c = IntegralityConstraint {
                ell,
                units: units.to_vec(),
            };
            let o = integrality_check(t, &c)?;
            rows.push(IntegralityRow {
                term: t.to_string(),
                ell,
                modulus: o.modulus,
                cases_checked: o.cases,
                integral: o.integral,
                witness: o.witness,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Registry, SymbolKind};

    fn setup() -> (Registry, SymbolId) {
        let reg = Registry::new();
        reg.var("chi", SymbolKind::CyclotomicCharacter);
        reg.var("rho", SymbolKind::GaloisKummer);
        let chi = reg.lookup("chi").unwrap();
        (reg, chi)
    }

    #[test]
    fn cyclotomic_square_is_integral() {
        let (reg, chi) = setup();
        let p = reg.poly("1/24*chi^2 - 1/24");
        for ell in [2, 3, 5, 7] {
            let o = integrality_check(&p, &IntegralityConstraint { ell, units: vec![chi] }).unwrap();
            assert!(o.integral, "ell = {ell}");
        }
        let o = integrality_check(&p, &IntegralityConstraint { ell: 2, units: vec![] }).unwrap();
        assert!(!o.integral);
    }

    #[test]
    fn parity_split() {
        let (reg, chi) = setup();
        let p = reg.poly("-1/2*rho^2 + 1/2*rho*chi");
        let o = integrality_check(&p, &IntegralityConstraint { ell: 2, units: vec![chi] }).unwrap();
        assert!(o.integral);
        assert_eq!(o.modulus, 8);
    }

    #[test]
    fn quarter_square_fails_at_one() {
        let (reg, _) = setup();
        let o = integrality_check(&reg.poly("1/4*rho^2"), &IntegralityConstraint { ell: 2, units: vec![] })
            .unwrap();
        assert!(!o.integral);
        assert_eq!(o.witness, Some(vec![("rho".to_string(), 1)]));
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let (reg, _) = setup();
        let r = integrality_check(&reg.poly("rho"), &IntegralityConstraint { ell: 6, units: vec![] });
        assert_eq!(r, Err(Error::UnsupportedPrime(6)));
    }

    #[test]
    fn primes_outside_denominator_are_units() {
        let (reg, _) = setup();
        let p = reg.poly("1/3*rho");
        let o = integrality_check(&p, &IntegralityConstraint { ell: 2, units: vec![] }).unwrap();
        assert!(o.integral);
        assert_eq!(o.cases, 2);
    }
}
