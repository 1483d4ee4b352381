use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolKind {
    ComplexLog,
    ComplexPolylog,
    ComplexZeta,
    GaloisKummer,
    GaloisPolylog,
    GaloisZeta,
    CyclotomicCharacter,
    Generic,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SymbolKind::ComplexLog => "complex-log",
            SymbolKind::ComplexPolylog => "complex-polylog",
            SymbolKind::ComplexZeta => "complex-zeta",
            SymbolKind::GaloisKummer => "galois-kummer",
            SymbolKind::GaloisPolylog => "galois-polylog",
            SymbolKind::GaloisZeta => "galois-zeta",
            SymbolKind::CyclotomicCharacter => "cyclotomic-character",
            SymbolKind::Generic => "generic",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
}

/// Index of a symbol inside its registry. Ids grow in registration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub(crate) u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Default)]
struct Table {
    symbols: Vec<Symbol>,
    by_name: HashMap<String, SymbolId>,
}

struct Inner {
    id: u64,
    table: RwLock<Table>,
}

/// Shared, append-only table of named symbols.
///
/// Cloning is cheap; clones refer to the same table. Polynomials built over
/// different registries cannot be combined.
#[derive(Clone)]
pub struct Registry(Arc<Inner>);

static NEXT_REGISTRY: AtomicU64 = AtomicU64::new(1);

impl Registry {
    pub fn new() -> Self {
        Registry(Arc::new(Inner {
            id: NEXT_REGISTRY.fetch_add(1, Ordering::Relaxed),
            table: RwLock::new(Table::default()),
        }))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn same(&self, other: &Registry) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Returns the id of `name`, registering it if needed. Re-registering with
    /// a different kind is an error.
    pub fn intern(&self, name: &str, kind: SymbolKind) -> Result<SymbolId> {
        if let Some(id) = self.lookup(name) {
            let existing = self.symbol(id).kind;
            if existing != kind {
                return Err(Error::SymbolKindConflict {
                    name: name.to_string(),
                    existing: existing.to_string(),
                });
            }
            return Ok(id);
        }
        let mut t = self.0.table.write().expect("registry lock poisoned");
        if let Some(&id) = t.by_name.get(name) {
            return Ok(id);
        }
        let id = SymbolId(t.symbols.len() as u32);
        t.symbols.push(Symbol {
            name: name.to_string(),
            kind,
        });
        t.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        let t = self.0.table.read().expect("registry lock poisoned");
        t.by_name.get(name).copied()
    }

    pub fn symbol(&self, id: SymbolId) -> Symbol {
        let t = self.0.table.read().expect("registry lock poisoned");
        t.symbols[id.index()].clone()
    }

    pub fn name(&self, id: SymbolId) -> String {
        self.symbol(id).name
    }

    pub fn len(&self) -> usize {
        self.0.table.read().expect("registry lock poisoned").symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Registry#{}({} symbols)", self.id(), self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent_and_kind_is_fixed() {
        let reg = Registry::new();
        let a = reg.intern("rho_z", SymbolKind::GaloisKummer).unwrap();
        let b = reg.intern("rho_z", SymbolKind::GaloisKummer).unwrap();
        assert_eq!(a, b);
        assert_eq!(reg.len(), 1);
        assert!(matches!(
            reg.intern("rho_z", SymbolKind::Generic),
            Err(Error::SymbolKindConflict { .. })
        ));
    }

    #[test]
    fn clones_share_the_table() {
        let reg = Registry::new();
        let other = reg.clone();
        other.intern("chi", SymbolKind::CyclotomicCharacter).unwrap();
        assert!(reg.lookup("chi").is_some());
        assert!(reg.same(&other));
        assert!(!reg.same(&Registry::new()));
    }
}
