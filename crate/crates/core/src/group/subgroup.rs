use fixedbitset::FixedBitSet;

use super::{ElementId, FiniteGroup, GroupError};

/// Bitset over the element ids of one group, denoting a subgroup.
///
/// A mask does not carry a reference to its group; every operation that needs
/// arithmetic takes the group explicitly and must be given the group the mask
/// was computed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupMask {
    bits: FixedBitSet,
}

impl SubgroupMask {
    pub fn trivial(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert(0);
        Self { bits }
    }

    pub fn full(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, g: ElementId) -> bool {
        self.bits.contains(g)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &SubgroupMask) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &SubgroupMask) -> SubgroupMask {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    /// Full scan for identity, closure under products and inverses.
    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        if self.bits.len() != g.order() || !self.contains(0) {
            return false;
        }
        let els = self.to_vec();
        els.iter()
            .all(|&a| self.contains(g.inv(a)) && els.iter().all(|&b| self.contains(g.mul(a, b))))
    }
}

impl FiniteGroup {
    /// Least subgroup containing `set`, built by Dimino-style coset extension.
    pub fn closure(&self, set: &[ElementId]) -> Result<SubgroupMask, GroupError> {
        for &s in set {
            self.check_id(s)?;
        }
        Ok(self.closure_unchecked(set))
    }

    pub(crate) fn closure_unchecked(&self, set: &[ElementId]) -> SubgroupMask {
        let mut mask = SubgroupMask::trivial(self.order());
        let mut gens = Vec::new();
        for &s in set {
            if !mask.contains(s) {
                mask = self.extend_subgroup(&mask, &gens, s);
                gens.push(s);
            }
        }
        mask
    }

    /// `<base, g>` where `base = <base_gens>` is already a subgroup.
    ///
    /// The result is a union of right cosets `base * r`; each new
    /// representative is multiplied by every generator until no new coset
    /// appears.
    pub fn extend_subgroup(
        &self,
        base: &SubgroupMask,
        base_gens: &[ElementId],
        g: ElementId,
    ) -> SubgroupMask {
        if base.contains(g) {
            return base.clone();
        }
        let base_elems = base.to_vec();
        let mut bits = base.bits.clone();
        let mut gens: Vec<ElementId> = base_gens.to_vec();
        gens.push(g);
        let mut reps = vec![0, g];
        for &h in &base_elems {
            bits.insert(self.mul(h, g));
        }
        let mut i = 1;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let x = self.mul(r, s);
                if !bits.contains(x) {
                    for &h in &base_elems {
                        bits.insert(self.mul(h, x));
                    }
                    reps.push(x);
                }
            }
            i += 1;
        }
        SubgroupMask { bits }
    }

    /// `<g>` as a mask.
    pub fn cyclic_subgroup(&self, g: ElementId) -> SubgroupMask {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        let mut cur = g;
        while cur != 0 {
            bits.insert(cur);
            cur = self.mul(cur, g);
        }
        SubgroupMask { bits }
    }

    /// `true` when `a` is a power of `b`.
    pub fn in_cyclic(&self, a: ElementId, b: ElementId) -> bool {
        if a == 0 {
            return true;
        }
        let mut cur = b;
        while cur != 0 {
            if cur == a {
                return true;
            }
            cur = self.mul(cur, b);
        }
        false
    }

    pub fn generates(&self, set: &[ElementId]) -> bool {
        self.closure_unchecked(set).len() == self.order()
    }

    pub fn is_normal(&self, n: &SubgroupMask) -> bool {
        let els = n.to_vec();
        self.elements()
            .all(|g| els.iter().all(|&x| n.contains(self.conjugate(x, g))))
    }
}
