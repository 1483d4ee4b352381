use crate::associator::{derive_dilog_identities, derive_landen3, Point, Side, SideSymbols};
use crate::error::{Error, Result};
use crate::report::{Intermediate, Report, Residual};
use crate::ring::{rat, MPoly, Rational, SymbolId, SymbolKind};
use num_traits::One;
use std::collections::HashMap;

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat(k, 1))
}

fn sign(m: usize) -> Rational {
    rat(if m.is_multiple_of(2) { 1 } else { -1 }, 1)
}

/// `Li_1, ..., Li_n` from `χ̃_1, ..., χ̃_n` and `ρ`:
/// `Li_m = (-1)^{m+1} Σ_k ρ^k/k! · χ̃_{m-k}/(m-1-k)!`.
pub fn li_from_characters(chars: &[MPoly], rho: &MPoly) -> Vec<MPoly> {
    (1..=chars.len())
        .map(|m| {
            let mut acc = MPoly::zero();
            for k in 0..m {
                let c = factorial(k) * factorial(m - 1 - k);
                acc += &(&rho.pow(k as u32) * &chars[m - 1 - k]).scale(&c.recip());
            }
            acc.scale(&sign(m + 1))
        })
        .collect()
}

/// Inverse of [`li_from_characters`]:
/// `χ̃_m = (-1)^{m+1} (m-1)! Σ_k Li_{m-k} ρ^k/k!`.
pub fn characters_from_li(lis: &[MPoly], rho: &MPoly) -> Vec<MPoly> {
    (1..=lis.len())
        .map(|m| {
            let mut acc = MPoly::zero();
            for k in 0..m {
                acc += &(&rho.pow(k as u32) * &lis[m - 1 - k]).scale(&factorial(k).recip());
            }
            acc.scale(&(sign(m + 1) * factorial(m - 1)))
        })
        .collect()
}

/// `Li^ℓ_m(p)` in the character symbols of `p`.
pub fn li_from_characters_at(syms: &SideSymbols, m: usize, p: Point) -> MPoly {
    let chars: Vec<MPoly> = (1..=m).map(|j| syms.tchi(j, p)).collect();
    li_from_characters(&chars, &syms.kummer(p)).pop().expect("m >= 1")
}

/// `χ̃_m(p)` in the named polylogarithms of `p`.
pub fn characters_from_li_at(syms: &SideSymbols, m: usize, p: Point) -> MPoly {
    let lis: Vec<MPoly> = (1..=m)
        .map(|j| if j == 1 { syms.kummer(p.one_minus().expect("finite point")) } else { syms.li(&[j], p) })
        .collect();
    characters_from_li(&lis, &syms.kummer(p)).pop().expect("m >= 1")
}

/// Rewrites of the Kummer characters of composed paths in terms of `ρ_z`,
/// `ρ_{1-z}` and `χ`, applied after the character conversion.
#[derive(Clone, Debug)]
pub struct KummerAxioms {
    pub rules: Vec<(String, String)>,
}

impl KummerAxioms {
    /// `ρ_{1/(1-z)} = -ρ_{1-z}` and `ρ_{z/(z-1)} = ρ_z - ρ_{1-z} + (χ-1)/2`.
    pub fn standard() -> Self {
        KummerAxioms {
            rules: vec![
                ("rho_inv1mz".into(), "-rho_1mz".into()),
                ("rho_zz1".into(), "rho_z - rho_1mz + 1/2*chi - 1/2".into()),
            ],
        }
    }

    pub fn empty() -> Self {
        KummerAxioms { rules: Vec::new() }
    }

    pub fn apply(&self, syms: &SideSymbols, p: &MPoly) -> Result<MPoly> {
        let mut out = p.clone();
        for (name, value) in &self.rules {
            let Some(id) = syms.reg.lookup(name) else { continue };
            let v = MPoly::parse_interning(value, &syms.reg, SymbolKind::GaloisKummer)?;
            out = out.substitute(&HashMap::from([(id, v)]))?;
        }
        Ok(out)
    }
}

fn point_of(suffix: &str) -> Option<Point> {
    [
        Point::Z,
        Point::OneMinusZ,
        Point::ZOverZMinusOne,
        Point::InvOneMinusZ,
        Point::Tangent10,
    ]
    .into_iter()
    .find(|p| p.suffix() == suffix)
}

/// Replaces every `Li^ℓ_m(p)` by characters at `p` and every `ζ^ℓ_m` by
/// `(-1)^{m+1} χ̃_m^{10}/(m-1)!`. Multiple-index symbols and symbols from the
/// complex side are rejected.
pub fn to_character_form(identity: &MPoly, syms: &SideSymbols) -> Result<MPoly> {
    let mut map: HashMap<SymbolId, MPoly> = HashMap::new();
    for id in identity.symbols() {
        let sym = syms.reg.symbol(id);
        let name = sym.name.as_str();
        match sym.kind {
            SymbolKind::GaloisKummer | SymbolKind::CyclotomicCharacter => {}
            SymbolKind::GaloisPolylog if name.starts_with("tchi") => {}
            SymbolKind::GaloisPolylog => {
                let (m, p) = name
                    .strip_prefix("Li")
                    .and_then(|r| r.split_once('_'))
                    .and_then(|(m, s)| Some((m.parse::<usize>().ok()?, point_of(s)?)))
                    .filter(|&(m, _)| (1..10).contains(&m))
                    .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
                map.insert(id, li_from_characters_at(syms, m, p));
            }
            SymbolKind::GaloisZeta => {
                let m = name
                    .strip_prefix("zeta")
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|m| (2..10).contains(m))
                    .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
                let t = syms.tchi(m, Point::Tangent10);
                map.insert(id, t.scale(&(sign(m + 1) / factorial(m - 1))));
            }
            _ => return Err(Error::UnknownSymbol(name.to_string())),
        }
    }
    identity.substitute(&map)
}

/// Inverse direction: every `χ̃_m^p` becomes named polylogarithms at `p`,
/// and `χ̃_m^{10}` becomes `(-1)^{m+1}(m-1)! ζ_m`.
pub fn from_character_form(identity: &MPoly, syms: &SideSymbols) -> Result<MPoly> {
    let mut map: HashMap<SymbolId, MPoly> = HashMap::new();
    for id in identity.symbols() {
        let name = syms.reg.name(id);
        let Some(rest) = name.strip_prefix("tchi") else { continue };
        let (m, p) = rest
            .split_once('_')
            .and_then(|(m, s)| Some((m.parse::<usize>().ok()?, point_of(s)?)))
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        let v = if p == Point::Tangent10 {
            syms.zeta(&[m]).scale(&(sign(m + 1) * factorial(m - 1)))
        } else {
            characters_from_li_at(syms, m, p)
        };
        map.insert(id, v);
    }
    identity.substitute(&map)
}

/// `χ̃_2^{10} = (χ² - 1)/24`.
fn tangent_chi2_rule(syms: &SideSymbols) -> (SymbolId, MPoly) {
    let id = *syms.tchi(2, Point::Tangent10).symbols().iter().next().expect("symbol");
    let chi = syms.chi();
    (id, (&chi.pow(2) - &MPoly::int(1)).scale(&rat(1, 24)))
}

fn subst(p: &MPoly, id: SymbolId, v: &MPoly) -> Result<MPoly> {
    p.substitute(&HashMap::from([(id, v.clone())]))
}

fn first_id(p: &MPoly) -> SymbolId {
    *p.symbols().iter().next().expect("symbol")
}

/// One identity in character form: `derived = 0`, compared with the
/// transcribed `expected = 0` up to a nonzero rational factor.
#[derive(Clone, Debug)]
pub struct CharacterForm {
    pub name: &'static str,
    pub derived: MPoly,
    pub expected: MPoly,
    /// The right-hand side as a list of separately integral terms.
    pub rhs_terms: Vec<MPoly>,
}

impl CharacterForm {
    pub fn scale(&self) -> Option<Rational> {
        self.derived.ratio_to(&self.expected).filter(|l| *l != Rational::from_integer(0.into()))
    }

    pub fn report(&self, reference: &str) -> Report {
        let lambda = self.scale();
        let residual = match &lambda {
            Some(l) => &self.derived - &self.expected.scale(l),
            None => &self.derived - &self.expected,
        };
        Report::new(
            self.name,
            reference,
            Residual::Exact(residual.to_string()),
            lambda.is_some(),
            vec![Intermediate::exact(
                "identity after conversion to characters",
                "character conversion at each base point",
                format!("{} = 0", self.derived),
                &residual,
            )],
        )
    }
}

fn sum(ps: &[MPoly]) -> MPoly {
    ps.iter().fold(MPoly::zero(), |a, b| &a + b)
}

pub fn chi2_reflection_rhs_terms(syms: &SideSymbols) -> Vec<MPoly> {
    vec![syms.poly("1/24*chi^2 - 1/24")]
}

pub fn chi2_landen_rhs_terms(syms: &SideSymbols) -> Vec<MPoly> {
    let r = syms.poly("rho_1mz");
    vec![(&r * &(&r - &syms.chi())).scale(&rat(-1, 2))]
}

pub fn chi3_landen_rhs_terms(syms: &SideSymbols) -> Vec<MPoly> {
    let r = syms.poly("rho_1mz");
    let chi = syms.chi();
    vec![
        syms.tchi(3, Point::Tangent10),
        &chi * &syms.tchi(2, Point::Z),
        syms.poly("rho_z*rho_1mz^2"),
        (&r * &(&chi.pow(2) - &MPoly::int(1))).scale(&rat(-1, 12)),
        (&(&r * &(&chi - &r)) * &(&chi - &r.scale(&rat(2, 1)))).scale(&rat(-1, 6)),
    ]
}

/// The three ℓ-adic identities in character form.
#[derive(Clone, Debug)]
pub struct CharacterForms {
    pub chi2_reflection: CharacterForm,
    pub chi2_landen: CharacterForm,
    pub chi3_landen: CharacterForm,
}

impl CharacterForms {
    pub fn all(&self) -> [&CharacterForm; 3] {
        [&self.chi2_reflection, &self.chi2_landen, &self.chi3_landen]
    }
}

/// Converts the derived ℓ-adic dilogarithm equations and the trilogarithm
/// equation to character form. The dilogarithm forms are then used to
/// eliminate `χ̃_2^{1-z}` and `χ̃_2^{z/(z-1)}` from the trilogarithm form.
pub fn character_forms(syms: &SideSymbols, axioms: &KummerAxioms) -> Result<CharacterForms> {
    if syms.side != Side::Ladic {
        return Err(Error::InvalidArgument("character forms exist on the l-adic side only".into()));
    }
    let (t10, t10v) = tangent_chi2_rule(syms);
    let convert = |p: &MPoly| -> Result<MPoly> {
        let c = axioms.apply(syms, &to_character_form(p, syms)?)?;
        subst(&c, t10, &t10v)
    };

    let dilog = derive_dilog_identities(syms)?;
    let refl = convert(&dilog.reflection)?;
    let landen2 = convert(&dilog.landen)?;

    let lhs = |m: usize, pts: &[Point]| sum(&pts.iter().map(|&p| syms.tchi(m, p)).collect::<Vec<_>>());
    let refl_rhs = chi2_reflection_rhs_terms(syms);
    let landen2_rhs = chi2_landen_rhs_terms(syms);
    let chi2_reflection = CharacterForm {
        name: "chi2-reflection",
        derived: refl.clone(),
        expected: &(&lhs(2, &[Point::Z, Point::OneMinusZ]) + &syms.poly("rho_z*rho_1mz")) - &sum(&refl_rhs),
        rhs_terms: refl_rhs,
    };
    let chi2_landen = CharacterForm {
        name: "chi2-landen",
        derived: landen2.clone(),
        expected: &lhs(2, &[Point::Z, Point::ZOverZMinusOne]) - &sum(&landen2_rhs),
        rhs_terms: landen2_rhs,
    };

    let d = derive_landen3(syms)?;
    let pts = [Point::Z, Point::OneMinusZ, Point::ZOverZMinusOne];
    let li3_sum = sum(&pts.iter().map(|&p| syms.li(&[3], p)).collect::<Vec<_>>());
    let mut tri = convert(&(&li3_sum - &d.rhs))?;
    for (rule, p) in [(&refl, Point::OneMinusZ), (&landen2, Point::ZOverZMinusOne)] {
        let id = first_id(&syms.tchi(2, p));
        tri = subst(&tri, id, &rule.solve_for(id)?)?;
    }
    let tri_rhs = chi3_landen_rhs_terms(syms);
    let chi3_landen = CharacterForm {
        name: "chi3-landen",
        derived: tri,
        expected: &lhs(3, &pts) - &sum(&tri_rhs),
        rhs_terms: tri_rhs,
    };
    Ok(CharacterForms {
        chi2_reflection,
        chi2_landen,
        chi3_landen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Registry;

    #[test]
    fn weight_one_and_two_by_hand() {
        let syms = SideSymbols::new(Side::Ladic);
        assert_eq!(li_from_characters_at(&syms, 1, Point::Z), syms.poly("rho_1mz"));
        assert_eq!(
            li_from_characters_at(&syms, 2, Point::Z),
            syms.poly("-tchi2_z - rho_z*rho_1mz")
        );
        assert_eq!(
            characters_from_li_at(&syms, 2, Point::Z),
            syms.poly("-Li2_z - rho_z*rho_1mz")
        );
        assert_eq!(
            li_from_characters_at(&syms, 3, Point::Z),
            syms.poly("1/2*tchi3_z + rho_z*tchi2_z + 1/2*rho_z^2*rho_1mz")
        );
    }

    #[test]
    fn conversions_are_mutually_inverse() {
        let reg = Registry::new();
        let rho = reg.var("r", SymbolKind::Generic);
        let chars: Vec<MPoly> = (1..=6).map(|m| reg.var(&format!("t{m}"), SymbolKind::Generic)).collect();
        let lis = li_from_characters(&chars, &rho);
        assert_eq!(characters_from_li(&lis, &rho), chars);
        let named: Vec<MPoly> = (1..=6).map(|m| reg.var(&format!("L{m}"), SymbolKind::Generic)).collect();
        assert_eq!(li_from_characters(&characters_from_li(&named, &rho), &rho), named);
    }

    #[test]
    fn forms_match_transcriptions() {
        let syms = SideSymbols::new(Side::Ladic);
        let forms = character_forms(&syms, &KummerAxioms::standard()).unwrap();
        for f in forms.all() {
            assert!(f.scale().is_some(), "{}: {}", f.name, f.derived);
        }
        assert_eq!(
            forms.chi2_reflection.derived,
            syms.poly("-tchi2_z - tchi2_1mz - rho_z*rho_1mz + 1/24*chi^2 - 1/24")
        );
    }

    #[test]
    fn back_and_forth() {
        let syms = SideSymbols::new(Side::Ladic);
        let p = syms.poly("Li3_z + rho_z*Li2_1mz - zeta3");
        let there = to_character_form(&p, &syms).unwrap();
        assert_eq!(from_character_form(&there, &syms).unwrap(), p);
    }

    #[test]
    fn rejects_depth_two_and_complex_symbols() {
        let syms = SideSymbols::new(Side::Ladic);
        assert!(matches!(
            to_character_form(&syms.poly("Li12_z"), &syms),
            Err(Error::UnknownSymbol(_))
        ));
        let c = SideSymbols::new(Side::Complex);
        assert!(to_character_form(&c.poly("log_z"), &c).is_err());
    }

    #[test]
    fn without_axioms_composed_kummer_symbols_survive() {
        let syms = SideSymbols::new(Side::Ladic);
        let forms = character_forms(&syms, &KummerAxioms::empty()).unwrap();
        assert!(forms.chi2_landen.scale().is_none());
        assert!(forms.chi2_landen.derived.symbol_names().iter().any(|n| n == "rho_zz1"));
    }
}
