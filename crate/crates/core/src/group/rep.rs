//! Concrete element representations and the enumeration that turns a
//! representation plus generators into a [`FiniteGroup`].

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::field::FieldGF2p;
use super::perm::Perm;
use super::{ElementId, FiniteGroup, GroupError};
use crate::caps::Caps;

pub(crate) trait Representation: Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + Send + Sync + 'static;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn describe(&self, a: &Self::Elem) -> String;
}

/// Index-level access to the elements of a built group.
pub(crate) trait ElementStore: Send + Sync {
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId;
    fn describe(&self, a: ElementId) -> String;
}

struct Realized<R: Representation> {
    rep: R,
    elems: Vec<R::Elem>,
    index: HashMap<R::Elem, u32>,
}

impl<R: Representation> ElementStore for Realized<R> {
    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        let p = self.rep.mul(&self.elems[a], &self.elems[b]);
        self.index[&p] as ElementId
    }

    fn describe(&self, a: ElementId) -> String {
        self.rep.describe(&self.elems[a])
    }
}

/// Store for groups that only ever exist as a table (quotients).
pub(crate) struct Tabulated {
    pub(crate) names: Vec<String>,
}

impl ElementStore for Tabulated {
    fn mul(&self, _: ElementId, _: ElementId) -> ElementId {
        unreachable!("tabulated groups always carry a multiplication table")
    }

    fn describe(&self, a: ElementId) -> String {
        self.names[a].clone()
    }
}

/// Enumerates `<gens>` breadth-first (identity first) and builds the group.
pub(crate) fn realize<R: Representation>(
    rep: R,
    gens: &[R::Elem],
    label: String,
    caps: &Caps,
) -> Result<FiniteGroup, GroupError> {
    let id = rep.identity();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0u32)]);
    let mut gen_ids = Vec::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elems.len() as u32);
            elems.push(g.clone());
        }
        let gid = index[g] as ElementId;
        if gid != 0 && !gen_ids.contains(&gid) {
            gen_ids.push(gid);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = rep.mul(&elems[i], g);
            if !index.contains_key(&p) {
                if elems.len() >= caps.order {
                    return Err(GroupError::OrderCap {
                        at_least: elems.len() as u128 + 1,
                        cap: caps.order,
                    });
                }
                index.insert(p.clone(), elems.len() as u32);
                elems.push(p);
            }
        }
        i += 1;
    }
    let store = Realized { rep, elems, index };
    Ok(FiniteGroup::from_store(
        label,
        store.elems.len(),
        Arc::new(store),
        gen_ids,
        *caps,
    ))
}

#[derive(Clone, Copy)]
pub(crate) struct CyclicRep(pub u32);

impl Representation for CyclicRep {
    type Elem = u32;
    fn identity(&self) -> u32 {
        0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.0 as u64) as u32
    }
    fn describe(&self, a: &u32) -> String {
        match a {
            0 => "1".into(),
            1 => "g".into(),
            k => format!("g^{k}"),
        }
    }
}

/// `r^k s^e` with `s r s = r^-1`, order `2n`.
#[derive(Clone, Copy)]
pub(crate) struct DihedralRep(pub u32);

impl Representation for DihedralRep {
    type Elem = (u32, bool);
    fn identity(&self) -> Self::Elem {
        (0, false)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = self.0;
        let k = if a.1 {
            (a.0 + n - b.0) % n
        } else {
            (a.0 + b.0) % n
        };
        (k, a.1 ^ b.1)
    }
    fn describe(&self, a: &Self::Elem) -> String {
        power_word("r", a.0, if a.1 { "s" } else { "" })
    }
}

/// `a^k x^e` with `a^(2m) = 1`, `x^2 = a^m`, `x^-1 a x = a^-1`, order `4m`.
/// Generalized quaternion `Q_(2^n)` is the case `m = 2^(n-2)`.
#[derive(Clone, Copy)]
pub(crate) struct DicyclicRep(pub u32);

impl Representation for DicyclicRep {
    type Elem = (u32, bool);
    fn identity(&self) -> Self::Elem {
        (0, false)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let m = self.0;
        let n = 2 * m;
        match (a.1, b.1) {
            (false, e) => ((a.0 + b.0) % n, e),
            (true, false) => ((a.0 + n - b.0) % n, true),
            (true, true) => ((a.0 + n - b.0 + m) % n, false),
        }
    }
    fn describe(&self, a: &Self::Elem) -> String {
        power_word("a", a.0, if a.1 { "x" } else { "" })
    }
}

fn power_word(base: &str, k: u32, tail: &str) -> String {
    let head = match k {
        0 => String::new(),
        1 => base.to_string(),
        k => format!("{base}^{k}"),
    };
    match (head.is_empty(), tail.is_empty()) {
        (true, true) => "1".into(),
        (true, false) => tail.into(),
        (false, true) => head,
        (false, false) => format!("{head}{tail}"),
    }
}

#[derive(Clone, Copy)]
pub(crate) struct PermRep(pub usize);

impl Representation for PermRep {
    type Elem = Perm;
    fn identity(&self) -> Perm {
        Perm::identity(self.0)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }
    fn describe(&self, a: &Perm) -> String {
        a.to_string()
    }
}

/// 2x2 matrices over GF(2^p), stored row-major as `[a, b, c, d]`.
#[derive(Clone, Copy)]
pub(crate) struct MatrixRep(pub FieldGF2p);

impl Representation for MatrixRep {
    type Elem = [u8; 4];
    fn identity(&self) -> [u8; 4] {
        [1, 0, 0, 1]
    }
    fn mul(&self, x: &[u8; 4], y: &[u8; 4]) -> [u8; 4] {
        let f = &self.0;
        [
            f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
            f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
            f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
            f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
        ]
    }
    fn describe(&self, x: &[u8; 4]) -> String {
        format!("[[{},{}],[{},{}]]", x[0], x[1], x[2], x[3])
    }
}

pub(crate) struct ProductRep(pub Arc<FiniteGroup>, pub Arc<FiniteGroup>);

impl Representation for ProductRep {
    type Elem = (u32, u32);
    fn identity(&self) -> Self::Elem {
        (0, 0)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (
            self.0.mul(a.0 as ElementId, b.0 as ElementId) as u32,
            self.1.mul(a.1 as ElementId, b.1 as ElementId) as u32,
        )
    }
    fn describe(&self, a: &Self::Elem) -> String {
        format!(
            "({}, {})",
            self.0.describe(a.0 as ElementId),
            self.1.describe(a.1 as ElementId)
        )
    }
}

/// `N x| H` with `(n1, h1)(n2, h2) = (n1 * n2^(h1^-1), h1 h2)`, i.e. `h n h^-1`
/// is given by `action[h][n]`.
pub(crate) struct SemidirectRep {
    pub normal: Arc<FiniteGroup>,
    pub top: Arc<FiniteGroup>,
    pub action: Vec<Vec<u32>>,
}

impl Representation for SemidirectRep {
    type Elem = (u32, u32);
    fn identity(&self) -> Self::Elem {
        (0, 0)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let moved = self.action[a.1 as usize][b.0 as usize];
        (
            self.normal.mul(a.0 as ElementId, moved as ElementId) as u32,
            self.top.mul(a.1 as ElementId, b.1 as ElementId) as u32,
        )
    }
    fn describe(&self, a: &Self::Elem) -> String {
        format!(
            "({}; {})",
            self.normal.describe(a.0 as ElementId),
            self.top.describe(a.1 as ElementId)
        )
    }
}
