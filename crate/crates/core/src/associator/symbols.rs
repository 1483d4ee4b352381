use crate::ring::{MPoly, Registry, SymbolKind};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which family of associators: complex (KZ solutions) or ℓ-adic Galois.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Complex,
    Ladic,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Complex => "complex",
            Side::Ladic => "ladic",
        }
    }

    /// Sign `s` with `c_X(f_z) = s·κ_z`, where `κ` is `log` on the complex
    /// side and the Kummer cocycle `ρ` on the ℓ-adic side.
    pub fn kummer_sign(self) -> i64 {
        match self {
            Side::Complex => 1,
            Side::Ladic => -1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Points reached from the base point, with their symbol suffixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Z,
    OneMinusZ,
    ZOverZMinusOne,
    InvOneMinusZ,
    Tangent10,
}

impl Point {
    pub fn suffix(self) -> &'static str {
        match self {
            Point::Z => "z",
            Point::OneMinusZ => "1mz",
            Point::ZOverZMinusOne => "zz1",
            Point::InvOneMinusZ => "inv1mz",
            Point::Tangent10 => "10",
        }
    }

    /// The point `1 - p`. `None` for the tangential point, whose
    /// complement carries trivial Kummer data.
    pub fn one_minus(self) -> Option<Point> {
        match self {
            Point::Z => Some(Point::OneMinusZ),
            Point::OneMinusZ => Some(Point::Z),
            Point::ZOverZMinusOne => Some(Point::InvOneMinusZ),
            Point::InvOneMinusZ => Some(Point::ZOverZMinusOne),
            Point::Tangent10 => None,
        }
    }
}

pub(crate) fn index_name(index: &[usize]) -> String {
    let sep = if index.iter().all(|&k| k < 10) { "" } else { "," };
    index
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Naming table for one side: every named quantity lives in one shared
/// registry so that identities from different derivations can be combined.
#[derive(Clone, Debug)]
pub struct SideSymbols {
    pub side: Side,
    pub reg: Registry,
}

impl SideSymbols {
    pub fn new(side: Side) -> Self {
        let s = SideSymbols {
            side,
            reg: Registry::new(),
        };
        // Fix the registration order of the common symbols so canonical text
        // lists Kummer data before polylogarithms.
        for p in [Point::Z, Point::OneMinusZ] {
            s.kummer(p);
        }
        for p in [Point::Z, Point::OneMinusZ] {
            for idx in [&[2][..], &[3], &[1, 2], &[2, 1]] {
                s.li(idx, p);
            }
        }
        for idx in [&[2][..], &[3], &[1, 2], &[2, 1]] {
            s.zeta(idx);
        }
        s
    }

    fn kinds(&self) -> (SymbolKind, SymbolKind, SymbolKind) {
        match self.side {
            Side::Complex => (
                SymbolKind::ComplexLog,
                SymbolKind::ComplexPolylog,
                SymbolKind::ComplexZeta,
            ),
            Side::Ladic => (
                SymbolKind::GaloisKummer,
                SymbolKind::GaloisPolylog,
                SymbolKind::GaloisZeta,
            ),
        }
    }

    /// `log p` (complex) or `ρ_p` (ℓ-adic); zero at the tangential point.
    pub fn kummer(&self, p: Point) -> MPoly {
        if p == Point::Tangent10 {
            return MPoly::zero();
        }
        let prefix = match self.side {
            Side::Complex => "log",
            Side::Ladic => "rho",
        };
        self.reg
            .var(&format!("{prefix}_{}", p.suffix()), self.kinds().0)
    }

    /// `c_X` of the associator to `p`.
    pub fn coeff_x(&self, p: Point) -> MPoly {
        self.kummer(p).scale(&crate::ring::rat(self.side.kummer_sign(), 1))
    }

    /// Named multiple polylogarithm `Li_k(p)`.
    pub fn li(&self, index: &[usize], p: Point) -> MPoly {
        self.reg.var(
            &format!("Li{}_{}", index_name(index), p.suffix()),
            self.kinds().1,
        )
    }

    /// Named multiple zeta value `ζ(k)`.
    pub fn zeta(&self, index: &[usize]) -> MPoly {
        self.reg
            .var(&format!("zeta{}", index_name(index)), self.kinds().2)
    }

    /// Named multiple zeta value `ζ(1, ..., 1, 2)` of weight `k`.
    pub fn zeta_dual(&self, k: usize) -> MPoly {
        self.zeta(&dual_index(k))
    }

    pub fn chi(&self) -> MPoly {
        self.reg.var("chi", SymbolKind::CyclotomicCharacter)
    }

    /// Coefficient `a` of the right factor `exp(aX)` in the Möbius chain
    /// rule; `iπ` on the complex side.
    pub fn axial(&self) -> MPoly {
        match self.side {
            Side::Complex => self.reg.var("pi_i", SymbolKind::ComplexLog),
            Side::Ladic => self.reg.var("a_0inf", SymbolKind::GaloisKummer),
        }
    }

    /// Polylogarithmic character `χ̃_m` at `p` (ℓ-adic only). For `m = 1`
    /// this is `ρ_{1-p}`.
    pub fn tchi(&self, m: usize, p: Point) -> MPoly {
        if m == 1 {
            return match p.one_minus() {
                Some(q) => self.kummer(q),
                None => MPoly::zero(),
            };
        }
        self.reg.var(
            &format!("tchi{m}_{}", p.suffix()),
            SymbolKind::GaloisPolylog,
        )
    }

    /// Parses a polynomial in this table's symbols.
    pub fn poly(&self, text: &str) -> MPoly {
        self.reg.poly(text)
    }

    /// Exchanges the labels `z` and `1-z` in every symbol name.
    pub fn relabel_z_1mz(&self, p: &MPoly) -> MPoly {
        let mut pairs: Vec<(String, MPoly)> = Vec::new();
        for name in p.symbol_names() {
            let kind = self.reg.symbol(self.reg.lookup(&name).expect("known")).kind;
            let swapped = if let Some(stem) = name.strip_suffix("_1mz") {
                format!("{stem}_z")
            } else if let Some(stem) = name.strip_suffix("_z") {
                format!("{stem}_1mz")
            } else {
                continue;
            };
            pairs.push((name, self.reg.var(&swapped, kind)));
        }
        let refs: Vec<(&str, MPoly)> = pairs.iter().map(|(n, q)| (n.as_str(), q.clone())).collect();
        p.substitute_named(&refs).expect("same registry")
    }
}

/// `(1, ..., 1, 2)` of weight `k`.
pub fn dual_index(k: usize) -> Vec<usize> {
    let mut v = vec![1; k.saturating_sub(2)];
    v.push(2);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_follow_the_table() {
        let s = SideSymbols::new(Side::Ladic);
        assert_eq!(s.li(&[1, 1, 2], Point::OneMinusZ).to_string(), "Li112_1mz");
        assert_eq!(s.zeta_dual(4).to_string(), "zeta112");
        assert_eq!(s.tchi(1, Point::Z).to_string(), "rho_1mz");
        assert_eq!(s.tchi(1, Point::ZOverZMinusOne).to_string(), "rho_inv1mz");
        assert!(s.tchi(1, Point::Tangent10).is_zero());
        assert_eq!(s.coeff_x(Point::Z).to_string(), "-rho_z");
        let c = SideSymbols::new(Side::Complex);
        assert_eq!(c.coeff_x(Point::Z).to_string(), "log_z");
    }

    #[test]
    fn relabeling_is_an_involution() {
        let s = SideSymbols::new(Side::Ladic);
        let p = s.poly("rho_z*Li2_1mz + zeta3 - 1/2*Li12_z");
        let q = s.relabel_z_1mz(&p);
        assert_eq!(q, s.poly("rho_1mz*Li2_z + zeta3 - 1/2*Li12_1mz"));
        assert_eq!(s.relabel_z_1mz(&q), p);
    }
}
