//! Finite group engine: construction, element arithmetic, subgroups and
//! structural classifiers.
//!
//! A [`FiniteGroup`] is an immutable indexed set of elements `0..order` with
//! `0` the identity. Groups up to [`Caps::table`] elements carry a full
//! multiplication table; larger ones multiply through their concrete
//! representation (permutations, matrices, ...) and a hash-keyed index.

mod build;
mod field;
mod lattice;
mod perm;
mod rep;
mod spec;
mod structure;
mod subgroup;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use build::build_group;
pub use field::FieldGF2p;
pub use lattice::Lattice;
pub use perm::Perm;
pub use spec::GroupSpec;
pub use structure::{MinimalClass, Quotient, UniqueMinimal};
pub use subgroup::SubgroupMask;

use crate::caps::Caps;
use rep::ElementStore;

/// Index of an element inside its group; `0` is always the identity.
pub type ElementId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse group spec '{spec}': {reason}")]
    Parse { spec: String, reason: String },
    #[error("group order exceeds cap: at least {at_least} elements, cap {cap}")]
    OrderCap { at_least: u128, cap: usize },
    #[error("Q:2^{0} needs exponent at least 3")]
    QuaternionExponent(u32),
    #[error("order {order} exceeds the {what} cap {cap}")]
    Cap {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("element id {0} is out of range")]
    InvalidElement(ElementId),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("cannot read '{path}': {message}")]
    Io { path: String, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl GroupError {
    pub(crate) fn parse(spec: impl Into<String>, reason: impl Into<String>) -> Self {
        GroupError::Parse {
            spec: spec.into(),
            reason: reason.into(),
        }
    }
}

pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    generators: Vec<ElementId>,
    store: Arc<dyn ElementStore>,
    caps: Caps,
    lattice: OnceLock<Result<Arc<Lattice>, GroupError>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("tabulated", &self.table.is_some())
            .finish()
    }
}

impl FiniteGroup {
    pub(crate) fn from_store(
        label: String,
        order: usize,
        store: Arc<dyn ElementStore>,
        generators: Vec<ElementId>,
        caps: Caps,
    ) -> Self {
        let table = (order <= caps.table).then(|| {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = store.mul(a, b) as u32;
                }
            }
            t
        });
        Self::assemble(label, order, table, store, generators, caps)
    }

    pub(crate) fn from_table(
        label: String,
        table: Vec<u32>,
        names: Vec<String>,
        generators: Vec<ElementId>,
        caps: Caps,
    ) -> Self {
        let order = names.len();
        debug_assert_eq!(table.len(), order * order);
        let store = Arc::new(rep::Tabulated { names });
        Self::assemble(label, order, Some(table), store, generators, caps)
    }

    fn assemble(
        label: String,
        order: usize,
        table: Option<Vec<u32>>,
        store: Arc<dyn ElementStore>,
        generators: Vec<ElementId>,
        caps: Caps,
    ) -> Self {
        let mut group = Self {
            label,
            order,
            table,
            inv: Vec::new(),
            generators,
            store,
            caps,
            lattice: OnceLock::new(),
        };
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            if inv[g] != u32::MAX {
                continue;
            }
            // g^(k-1) is the inverse once g^k = 1.
            let mut prev = 0;
            let mut cur = g;
            while cur != 0 {
                prev = cur;
                cur = group.mul(cur, g);
            }
            inv[g] = prev as u32;
            inv[prev] = g as u32;
        }
        group.inv = inv;
        group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn is_tabulated(&self) -> bool {
        self.table.is_some()
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order
    }

    /// Generators recorded at construction time.
    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.table {
            Some(t) => t[a * self.order + b] as ElementId,
            None => self.store.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a] as ElementId
    }

    pub fn pow(&self, a: ElementId, mut e: u64) -> ElementId {
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 a g`.
    pub fn conjugate(&self, a: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    /// Human-readable form of an element (cycle notation, matrix, word...).
    pub fn describe(&self, a: ElementId) -> String {
        self.store.describe(a)
    }

    /// Looks an element up by its [`describe`](Self::describe) string.
    pub fn element(&self, name: &str) -> Option<ElementId> {
        self.elements().find(|&g| self.describe(g) == name)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }

    pub(crate) fn check_id(&self, a: ElementId) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::InvalidElement(a))
        }
    }

    /// Checks the group axioms: identity, inverses and closure for every
    /// element; associativity exhaustively for order <= 64 and on `10^4`
    /// seeded random triples otherwise. Returns a description of the first
    /// violation.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order;
        for g in self.elements() {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(format!("identity fails at {g}"));
            }
            if self.mul(g, self.inv(g)) != 0 || self.mul(self.inv(g), g) != 0 {
                return Err(format!("inverse fails at {g}"));
            }
        }
        if let Some(t) = &self.table {
            if let Some(bad) = t.iter().find(|&&x| x as usize >= n) {
                return Err(format!("table entry {bad} out of range"));
            }
        }
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }
}
