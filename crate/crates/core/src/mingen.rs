//! Minimal (irredundant) generating sets: `d(G)`, `m(G)`, interpolation of
//! sizes between them, and lifting generating sets through quotients.
//!
//! The searches work on maximal-subgroup containment. A set `X` generates `G`
//! iff no maximal subgroup contains all of `X`, and `X` is irredundant iff
//! every `w` in `X` has a *private* maximal subgroup: one containing
//! `X \ {w}` but not `w`. Both conditions only depend on which maximal
//! subgroups contain each member, so elements with the same containment set
//! are interchangeable and at most one of them can sit in an irredundant set.

use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::group::{ElementId, FiniteGroup, GroupError, Lattice, SubgroupMask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MingenError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Precondition(String),
    #[error("set is not an irredundant generating set: {0}")]
    NotIrredundant(String),
    #[error("search space {size} exceeds cap {cap}")]
    SearchSpace { size: u128, cap: u128 },
    #[error("irredundant set sizes {0:?} do not form an interval")]
    TarskiGap(Vec<usize>),
}

/// A generating set of its group no proper subset of which generates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrredundantSet {
    members: Vec<ElementId>,
}

impl IrredundantSet {
    /// Validates `members` by direct closure computations.
    pub fn new(g: &FiniteGroup, members: Vec<ElementId>) -> Result<Self, MingenError> {
        for &m in &members {
            g.check_id(m)?;
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if !is_irredundant_generating(g, &members) {
            return Err(MingenError::NotIrredundant(format!("{members:?}")));
        }
        Ok(Self { members })
    }

    fn new_unchecked(mut members: Vec<ElementId>) -> Self {
        members.sort_unstable();
        Self { members }
    }

    /// Members in ascending id order.
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn describe(&self, g: &FiniteGroup) -> Vec<String> {
        self.members.iter().map(|&x| g.describe(x)).collect()
    }
}

/// Closure-only check, independent of the lattice machinery.
pub fn is_irredundant_generating(g: &FiniteGroup, members: &[ElementId]) -> bool {
    g.generates(members)
        && (0..members.len()).all(|i| {
            let rest: Vec<ElementId> = members
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            !g.generates(&rest)
        })
}

/// Containment classes of a group: elements grouped by the set of maximal
/// subgroups containing them.
pub(crate) struct Signatures {
    lattice: Arc<Lattice>,
    classes: Vec<FixedBitSet>,
    class_of: Vec<usize>,
    /// Smallest element id in each class.
    representative: Vec<ElementId>,
}

impl Signatures {
    pub(crate) fn new(g: &FiniteGroup) -> Result<Self, GroupError> {
        let lattice = g.lattice()?;
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut classes = Vec::new();
        let mut representative = Vec::new();
        let mut class_of = Vec::with_capacity(g.order());
        for x in g.elements() {
            let sig = lattice.containing(x);
            let key: Vec<usize> = sig.ones().collect();
            let c = *index.entry(key).or_insert_with(|| {
                classes.push(sig.clone());
                representative.push(x);
                classes.len() - 1
            });
            class_of.push(c);
        }
        Ok(Self {
            lattice,
            classes,
            class_of,
            representative,
        })
    }

    pub(crate) fn class_of(&self, x: ElementId) -> usize {
        self.class_of[x]
    }

    pub(crate) fn representatives(&self) -> &[ElementId] {
        &self.representative
    }

    fn all_maximal(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.lattice.maximal().len());
        b.insert_range(..);
        b
    }
}

/// Partial independent set during a search, in terms of containment sets.
#[derive(Clone)]
struct SearchState {
    members: Vec<usize>,
    /// Maximal subgroups containing every member.
    common: FixedBitSet,
    /// For each member, the maximal subgroups containing all other members
    /// but not this one.
    private: Vec<FixedBitSet>,
}

impl SearchState {
    fn root(all: FixedBitSet) -> Self {
        Self {
            members: Vec::new(),
            common: all,
            private: Vec::new(),
        }
    }

    fn generates(&self) -> bool {
        self.common.is_clear()
    }

    /// Adds an item with containment set `sig`; `None` when the result would
    /// not be independent.
    fn push(&self, item: usize, sig: &FixedBitSet) -> Option<SearchState> {
        let mut own = self.common.clone();
        own.difference_with(sig);
        if own.is_clear() {
            return None;
        }
        let mut private = Vec::with_capacity(self.private.len() + 1);
        for p in &self.private {
            let mut q = p.clone();
            q.intersect_with(sig);
            if q.is_clear() {
                return None;
            }
            private.push(q);
        }
        private.push(own);
        let mut common = self.common.clone();
        common.intersect_with(sig);
        let mut members = self.members.clone();
        members.push(item);
        Some(SearchState {
            members,
            common,
            private,
        })
    }
}

/// Depth-first search over containment classes. `visit` is called for every
/// independent generating class set reached; returning `true` stops the
/// search.
fn class_search(
    sigs: &Signatures,
    state: &SearchState,
    start: usize,
    depth_left: usize,
    skip: &[usize],
    visit: &mut dyn FnMut(&SearchState) -> bool,
) -> bool {
    if state.generates() {
        return visit(state);
    }
    if depth_left == 0 {
        return false;
    }
    for c in start..sigs.classes.len() {
        if skip.contains(&c) {
            continue;
        }
        if let Some(next) = state.push(c, &sigs.classes[c]) {
            if class_search(sigs, &next, c + 1, depth_left - 1, skip, visit) {
                return true;
            }
        }
    }
    false
}

fn to_set(sigs: &Signatures, state: &SearchState) -> IrredundantSet {
    IrredundantSet::new_unchecked(
        state
            .members
            .iter()
            .map(|&c| sigs.representative[c])
            .collect(),
    )
}

/// Least size of a generating set; `0` for the trivial group.
pub fn rank_d(g: &FiniteGroup) -> Result<usize, MingenError> {
    let caps = g.caps();
    if g.order() > caps.rank {
        return Err(GroupError::Cap {
            what: "rank",
            order: g.order(),
            cap: caps.rank,
        }
        .into());
    }
    if g.order() == 1 {
        return Ok(0);
    }
    if g.is_cyclic() {
        return Ok(1);
    }
    if g.order() <= caps.lattice {
        let sigs = Signatures::new(g)?;
        let root = SearchState::root(sigs.all_maximal());
        for k in 2.. {
            if class_search(&sigs, &root, 0, k, &[], &mut |_| true) {
                return Ok(k);
            }
        }
        unreachable!()
    }
    // Above the lattice cap: closure search over ascending id tuples.
    fn search(g: &FiniteGroup, chosen: &mut Vec<ElementId>, cur: &SubgroupMask, k: usize) -> bool {
        if cur.len() == g.order() {
            return true;
        }
        if chosen.len() == k {
            return false;
        }
        let start = chosen.last().map_or(1, |&x| x + 1);
        for x in start..g.order() {
            if cur.contains(x) {
                continue;
            }
            let next = g.extend_subgroup(cur, chosen, x);
            chosen.push(x);
            if search(g, chosen, &next, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    for k in 2.. {
        if search(g, &mut Vec::new(), &SubgroupMask::trivial(g.order()), k) {
            return Ok(k);
        }
    }
    unreachable!()
}

/// Every irredundant generating set of size at most `size_bound`, each exactly
/// once, members in ascending id order.
pub fn enumerate_irredundant(
    g: &FiniteGroup,
    size_bound: usize,
) -> Result<IrredundantSets, MingenError> {
    if g.order() > g.caps().search {
        return Err(GroupError::Cap {
            what: "search",
            order: g.order(),
            cap: g.caps().search,
        }
        .into());
    }
    let lattice = g.lattice()?;
    let mut all = FixedBitSet::with_capacity(lattice.maximal().len());
    all.insert_range(..);
    let root = SearchState::root(all);
    let emit_empty = root.generates();
    Ok(IrredundantSets {
        lattice,
        order: g.order(),
        bound: size_bound,
        stack: if emit_empty {
            Vec::new()
        } else {
            vec![(root, 1)]
        },
        emit_empty,
    })
}

/// Iterator returned by [`enumerate_irredundant`].
pub struct IrredundantSets {
    lattice: Arc<Lattice>,
    order: usize,
    bound: usize,
    /// Search states with the next element id to try.
    stack: Vec<(SearchState, ElementId)>,
    emit_empty: bool,
}

impl Iterator for IrredundantSets {
    type Item = IrredundantSet;

    fn next(&mut self) -> Option<IrredundantSet> {
        if self.emit_empty {
            self.emit_empty = false;
            return Some(IrredundantSet::new_unchecked(Vec::new()));
        }
        loop {
            let (state, next) = self.stack.last_mut()?;
            if state.members.len() >= self.bound || *next >= self.order {
                self.stack.pop();
                continue;
            }
            let z = *next;
            *next += 1;
            let Some(child) = state.push(z, self.lattice.containing(z)) else {
                continue;
            };
            if child.generates() {
                return Some(IrredundantSet::new_unchecked(child.members));
            }
            self.stack.push((child, z + 1));
        }
    }
}

/// `d(G)`, `m(G)` and one irredundant generating set of every size between.
#[derive(Clone, Debug, Serialize)]
pub struct TarskiTable {
    pub d: usize,
    pub m: usize,
    pub witnesses: BTreeMap<usize, IrredundantSet>,
    /// The exhaustive search ruled out every size up to and including this
    /// one that has no witness (always `m + 1`).
    pub certified_through: usize,
}

pub fn tarski_table(g: &FiniteGroup) -> Result<TarskiTable, MingenError> {
    if g.order() > g.caps().search {
        return Err(GroupError::Cap {
            what: "search",
            order: g.order(),
            cap: g.caps().search,
        }
        .into());
    }
    let sigs = Signatures::new(g)?;
    let root = SearchState::root(sigs.all_maximal());
    let mut witnesses: BTreeMap<usize, IrredundantSet> = BTreeMap::new();
    // No depth limit: independent sets are bounded by the length of a
    // maximal subgroup chain, so the search terminates on its own.
    class_search(&sigs, &root, 0, usize::MAX, &[], &mut |s| {
        witnesses
            .entry(s.members.len())
            .or_insert_with(|| to_set(&sigs, s));
        false
    });
    let sizes: Vec<usize> = witnesses.keys().copied().collect();
    let (d, m) = (sizes[0], *sizes.last().unwrap());
    if sizes.len() != m - d + 1 {
        return Err(MingenError::TarskiGap(sizes));
    }
    Ok(TarskiTable {
        d,
        m,
        witnesses,
        certified_through: m + 1,
    })
}

/// Rows `group,d,m,size,witness`, one per witness size; witness members are
/// element names joined by `; `.
pub fn tarski_csv(rows: &[(&FiniteGroup, &TarskiTable)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["group", "d", "m", "size", "witness"])
        .unwrap();
    for (g, t) in rows {
        for (size, set) in &t.witnesses {
            let (d, m, size) = (t.d.to_string(), t.m.to_string(), size.to_string());
            w.write_record([g.label(), &d, &m, &size, &set.describe(g).join("; ")])
                .unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// An irredundant generating set of `G` containing `x` and `y`, if any.
pub fn contains_in_irredundant(
    g: &FiniteGroup,
    x: ElementId,
    y: ElementId,
) -> Result<Option<IrredundantSet>, MingenError> {
    if g.order() > g.caps().independence {
        return Err(GroupError::Cap {
            what: "independence",
            order: g.order(),
            cap: g.caps().independence,
        }
        .into());
    }
    g.check_id(x)?;
    g.check_id(y)?;
    if x == y {
        return Err(MingenError::Precondition(
            "pair must consist of distinct elements".into(),
        ));
    }
    if g.in_cyclic(x, y) || g.in_cyclic(y, x) {
        return Ok(None);
    }
    let sigs = Signatures::new(g)?;
    Ok(contains_pair(&sigs, x, y))
}

pub(crate) fn contains_pair(
    sigs: &Signatures,
    x: ElementId,
    y: ElementId,
) -> Option<IrredundantSet> {
    let (cx, cy) = (sigs.class_of(x), sigs.class_of(y));
    if cx == cy {
        return None;
    }
    let root = SearchState::root(sigs.all_maximal());
    let state = root
        .push(cx, &sigs.classes[cx])?
        .push(cy, &sigs.classes[cy])?;
    let mut found = None;
    class_search(sigs, &state, 0, usize::MAX, &[cx, cy], &mut |s| {
        let mut members: Vec<ElementId> = s.members[2..]
            .iter()
            .map(|&c| sigs.representative[c])
            .collect();
        members.extend([x, y]);
        found = Some(IrredundantSet::new_unchecked(members));
        true
    });
    found
}

/// `true` when `ybar` (one representative per coset) is an irredundant
/// generating set of `G/N`, checked by closures in `G`.
fn irredundant_mod(g: &FiniteGroup, n: &SubgroupMask, ybar: &[ElementId]) -> bool {
    let ngens = n.to_vec();
    let gen_mod = |set: &[ElementId]| {
        let mut all = set.to_vec();
        all.extend(&ngens);
        g.generates(&all)
    };
    gen_mod(ybar)
        && (0..ybar.len()).all(|i| {
            let rest: Vec<ElementId> = ybar
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &y)| y)
                .collect();
            !gen_mod(&rest)
        })
}

/// Extends lifts `Y` of an irredundant generating set of `G/N` by elements of
/// `N` to an irredundant generating set of `G`.
///
/// Starts from `Y` together with every element of `N`, then drops elements of
/// `N` in ascending id order whenever the rest still generates. `Y` itself is
/// never pruned.
pub fn lift_minimal(
    g: &FiniteGroup,
    n: &SubgroupMask,
    ybar: &[ElementId],
) -> Result<IrredundantSet, MingenError> {
    for &y in ybar {
        g.check_id(y)?;
    }
    if !n.is_subgroup_of(g) || !g.is_normal(n) {
        return Err(GroupError::NotNormal.into());
    }
    if !irredundant_mod(g, n, ybar) {
        return Err(MingenError::NotIrredundant(
            "cosets do not form an irredundant generating set of G/N".into(),
        ));
    }
    let mut current: Vec<ElementId> = ybar.to_vec();
    let z: Vec<ElementId> = n.iter().filter(|&x| x != 0).collect();
    current.extend(&z);
    for zi in z {
        let without: Vec<ElementId> = current.iter().copied().filter(|&x| x != zi).collect();
        if g.generates(&without) {
            current = without;
        }
    }
    Ok(IrredundantSet::new_unchecked(current))
}

/// Finds `n_1..n_k` in `N` with `<y_1 n_1, ..., y_k n_k> = G`, where the
/// `y_i` represent cosets that generate `G/N` and `k >= d(G)`.
pub fn gaschutz_search(
    g: &FiniteGroup,
    n: &SubgroupMask,
    cosets: &[ElementId],
) -> Result<Vec<ElementId>, MingenError> {
    for &y in cosets {
        g.check_id(y)?;
    }
    if !n.is_subgroup_of(g) || !g.is_normal(n) {
        return Err(GroupError::NotNormal.into());
    }
    let mut with_n = cosets.to_vec();
    with_n.extend(n.iter());
    if !g.generates(&with_n) {
        return Err(MingenError::Precondition(
            "cosets do not generate G/N".into(),
        ));
    }
    let d = rank_d(g)?;
    if cosets.len() < d {
        return Err(MingenError::Precondition(format!(
            "k = {} is below d(G) = {d}",
            cosets.len()
        )));
    }
    let size = (n.len() as u128)
        .checked_pow(cosets.len() as u32)
        .unwrap_or(u128::MAX);
    if size > g.caps().gaschutz_space {
        return Err(MingenError::SearchSpace {
            size,
            cap: g.caps().gaschutz_space,
        });
    }
    let nel = n.to_vec();

    fn dfs(
        g: &FiniteGroup,
        cosets: &[ElementId],
        nel: &[ElementId],
        chosen: &mut Vec<ElementId>,
        sub: &SubgroupMask,
        gens: &mut Vec<ElementId>,
    ) -> bool {
        if sub.len() == g.order() {
            // The prefix already generates; pad with the identity.
            chosen.resize(cosets.len(), 0);
            return true;
        }
        let i = chosen.len();
        if i == cosets.len() {
            return false;
        }
        for &m in nel {
            let x = g.mul(cosets[i], m);
            let next = g.extend_subgroup(sub, gens, x);
            chosen.push(m);
            gens.push(x);
            if dfs(g, cosets, nel, chosen, &next, gens) {
                return true;
            }
            chosen.pop();
            gens.pop();
        }
        false
    }

    let mut chosen = Vec::new();
    if dfs(
        g,
        cosets,
        &nel,
        &mut chosen,
        &SubgroupMask::trivial(g.order()),
        &mut Vec::new(),
    ) {
        Ok(chosen)
    } else {
        Err(MingenError::Precondition("no lift generates G".into()))
    }
}
