//! Quotients, products, solubility and the unique-minimal-subgroup classifier.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::rep::{self, DicyclicRep, ProductRep, SemidirectRep};
use super::{ElementId, FiniteGroup, GroupError, SubgroupMask};
use crate::caps::Caps;

/// A quotient group together with the canonical projection.
#[derive(Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the coset of `g`.
    pub projection: Vec<ElementId>,
    /// Smallest element id in each coset.
    pub representatives: Vec<ElementId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalClass {
    CyclicPPower,
    GeneralizedQuaternion,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueMinimal {
    pub class: MinimalClass,
    /// The unique minimal subgroup, when there is exactly one.
    pub minimal: Option<SubgroupMask>,
}

impl FiniteGroup {
    pub fn quotient(&self, n: &SubgroupMask) -> Result<Quotient, GroupError> {
        if !self.is_tabulated() {
            return Err(GroupError::Unsupported(
                "quotient of an untabulated group".into(),
            ));
        }
        if !n.is_subgroup_of(self) || !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let nel = n.to_vec();
        let mut projection = vec![usize::MAX; self.order()];
        let mut representatives = Vec::new();
        for g in self.elements() {
            if projection[g] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(g);
            for &x in &nel {
                projection[self.mul(g, x)] = c;
            }
        }
        let k = representatives.len();
        let mut table = vec![0u32; k * k];
        for (i, &a) in representatives.iter().enumerate() {
            for (j, &b) in representatives.iter().enumerate() {
                table[i * k + j] = projection[self.mul(a, b)] as u32;
            }
        }
        let names = representatives
            .iter()
            .map(|&r| format!("{}N", self.describe(r)))
            .collect();
        let mut gens: Vec<ElementId> = self
            .generators()
            .iter()
            .map(|&g| projection[g])
            .filter(|&c| c != 0)
            .collect();
        gens.dedup();
        let group = FiniteGroup::from_table(
            format!("{}/N", self.label()),
            table,
            names,
            gens,
            *self.caps(),
        );
        Ok(Quotient {
            group,
            projection,
            representatives,
        })
    }

    /// `[H, H]` for the subgroup `H` given as a mask.
    pub fn derived_subgroup_of(&self, h: &SubgroupMask) -> SubgroupMask {
        let els = h.to_vec();
        let comms: BTreeSet<ElementId> = els
            .iter()
            .flat_map(|&a| els.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        let comms: Vec<ElementId> = comms.into_iter().collect();
        self.closure_unchecked(&comms)
    }

    /// Derived series, starting at `G` and ending where it stabilises.
    pub fn derived_series(&self) -> Vec<SubgroupMask> {
        let mut series = vec![SubgroupMask::full(self.order())];
        loop {
            let next = self.derived_subgroup_of(series.last().unwrap());
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Minimal subgroups are the subgroups of prime order.
    pub fn minimal_subgroups(&self) -> Vec<SubgroupMask> {
        let mut out: Vec<SubgroupMask> = Vec::new();
        for x in self.elements() {
            let o = self.element_order(x);
            if o > 1 && is_prime(o) {
                let c = self.cyclic_subgroup(x);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Decides whether the group has a unique minimal subgroup and, if so,
    /// whether it is cyclic of prime-power order or generalized quaternion.
    /// The quaternion case is confirmed by an explicit isomorphism onto the
    /// `Q_(2^n)` multiplication table.
    pub fn classify_unique_minimal(&self) -> UniqueMinimal {
        let mut minimal = self.minimal_subgroups();
        if minimal.len() != 1 {
            return UniqueMinimal {
                class: MinimalClass::Neither,
                minimal: None,
            };
        }
        let minimal = minimal.pop();
        let class = if self.is_cyclic() {
            MinimalClass::CyclicPPower
        } else if self.is_generalized_quaternion() {
            MinimalClass::GeneralizedQuaternion
        } else {
            MinimalClass::Neither
        };
        UniqueMinimal { class, minimal }
    }

    /// Isomorphism search against `Q_(2^n) = <a, b | a^(2^(n-1)), b^2 = a^(2^(n-2)), b^-1 a b = a^-1>`.
    pub fn is_generalized_quaternion(&self) -> bool {
        let n = self.order();
        if n < 8 || !n.is_power_of_two() || self.is_abelian() {
            return false;
        }
        let half = (n / 2) as u64;
        let quarter = half / 2;
        let Ok(reference) = rep::realize(
            DicyclicRep(quarter as u32),
            &[(1, false), (0, true)],
            "Q".into(),
            &Caps {
                table: n,
                ..*self.caps()
            },
        ) else {
            return false;
        };
        let ra = reference.element("a").unwrap();
        let rb = reference.element("x").unwrap();
        let ref_word = |k: u64, e: u64| reference.mul(reference.pow(ra, k), reference.pow(rb, e));

        for u in self
            .elements()
            .filter(|&u| self.element_order(u) as u64 == half)
        {
            for v in self.elements().filter(|&v| self.element_order(v) == 4) {
                if self.mul(v, v) != self.pow(u, quarter) || self.conjugate(u, v) != self.inv(u) {
                    continue;
                }
                let mut phi = vec![usize::MAX; n];
                let mut hit = vec![false; n];
                let mut ok = true;
                for k in 0..half {
                    for e in 0..2 {
                        let src = ref_word(k, e);
                        let dst = self.mul(self.pow(u, k), self.pow(v, e));
                        if hit[dst] || phi[src] != usize::MAX {
                            ok = false;
                        }
                        hit[dst] = true;
                        phi[src] = dst;
                    }
                }
                if ok
                    && reference.elements().all(|x| {
                        reference
                            .elements()
                            .all(|y| phi[reference.mul(x, y)] == self.mul(phi[x], phi[y]))
                    })
                {
                    return true;
                }
            }
        }
        false
    }

    /// `A x B`.
    pub fn direct_product(
        a: Arc<FiniteGroup>,
        b: Arc<FiniteGroup>,
        caps: &Caps,
    ) -> Result<FiniteGroup, GroupError> {
        let total = a.order() as u128 * b.order() as u128;
        if total > caps.order as u128 {
            return Err(GroupError::OrderCap {
                at_least: total,
                cap: caps.order,
            });
        }
        let mut gens: Vec<(u32, u32)> = a.generators().iter().map(|&g| (g as u32, 0)).collect();
        gens.extend(b.generators().iter().map(|&h| (0, h as u32)));
        let label = format!("{}*{}", a.label(), b.label());
        rep::realize(ProductRep(a, b), &gens, label, caps)
    }

    /// `N x| H` where `action(h, n) = h n h^-1`. The action is checked to be a
    /// homomorphism `H -> Aut(N)`.
    pub fn semidirect_product(
        normal: Arc<FiniteGroup>,
        top: Arc<FiniteGroup>,
        action: impl Fn(ElementId, ElementId) -> ElementId,
        label: String,
        caps: &Caps,
    ) -> Result<FiniteGroup, GroupError> {
        let table: Vec<Vec<u32>> = top
            .elements()
            .map(|h| normal.elements().map(|x| action(h, x) as u32).collect())
            .collect();
        for h in top.elements() {
            let row = &table[h];
            let mut seen = vec![false; normal.order()];
            for x in normal.elements() {
                let y = row[x] as usize;
                if y >= normal.order() || seen[y] {
                    return Err(GroupError::InvalidAction(format!(
                        "element {h} does not act bijectively"
                    )));
                }
                seen[y] = true;
                for z in normal.elements() {
                    if row[normal.mul(x, z)] as usize != normal.mul(y, row[z] as usize) {
                        return Err(GroupError::InvalidAction(format!(
                            "element {h} is not an automorphism"
                        )));
                    }
                }
            }
            for k in top.elements() {
                let hk = top.mul(h, k);
                if normal
                    .elements()
                    .any(|x| table[hk][x] != row[table[k][x] as usize])
                {
                    return Err(GroupError::InvalidAction(
                        "action is not a homomorphism".into(),
                    ));
                }
            }
        }
        let mut gens: Vec<(u32, u32)> =
            normal.generators().iter().map(|&g| (g as u32, 0)).collect();
        gens.extend(top.generators().iter().map(|&h| (0, h as u32)));
        rep::realize(
            SemidirectRep {
                normal,
                top,
                action: table,
            },
            &gens,
            label,
            caps,
        )
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}
