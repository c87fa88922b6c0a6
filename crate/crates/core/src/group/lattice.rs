//! Subgroup lattice by cyclic extension, maximal subgroups, Frattini subgroup.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{ElementId, FiniteGroup, GroupError, SubgroupMask};

/// Every subgroup of a group, its maximal subgroups, and for each element the
/// set of maximal subgroups containing it.
#[derive(Debug)]
pub struct Lattice {
    subgroups: Vec<SubgroupMask>,
    maximal: Vec<SubgroupMask>,
    containment: Vec<FixedBitSet>,
}

impl Lattice {
    /// All subgroups, sorted by order and then by element ids.
    pub fn subgroups(&self) -> &[SubgroupMask] {
        &self.subgroups
    }

    pub fn maximal(&self) -> &[SubgroupMask] {
        &self.maximal
    }

    /// Bitset over [`maximal`](Self::maximal) indices: the maximal subgroups
    /// that contain `g`.
    pub fn containing(&self, g: ElementId) -> &FixedBitSet {
        &self.containment[g]
    }

    fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        // One generator per cyclic subgroup.
        let mut index: HashMap<SubgroupMask, usize> = HashMap::new();
        let mut found: Vec<(SubgroupMask, Vec<ElementId>)> = Vec::new();
        let mut cyclic_gens = Vec::new();
        for x in g.elements() {
            let c = g.cyclic_subgroup(x);
            if !index.contains_key(&c) {
                index.insert(c.clone(), found.len());
                found.push((c, if x == 0 { vec![] } else { vec![x] }));
                if x != 0 {
                    cyclic_gens.push(x);
                }
            }
        }
        let mut frontier: Vec<usize> = (0..found.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &h in &frontier {
                for &c in &cyclic_gens {
                    let (mask, gens) = &found[h];
                    if mask.contains(c) {
                        continue;
                    }
                    let joined = g.extend_subgroup(mask, gens, c);
                    if !index.contains_key(&joined) {
                        let mut jg = gens.clone();
                        jg.push(c);
                        index.insert(joined.clone(), found.len());
                        next.push(found.len());
                        found.push((joined, jg));
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<(usize, Vec<ElementId>, SubgroupMask)> = found
            .into_iter()
            .map(|(m, _)| (m.len(), m.to_vec(), m))
            .collect();
        subgroups.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let subgroups: Vec<SubgroupMask> = subgroups.into_iter().map(|t| t.2).collect();

        // Descending order: a proper subgroup is maximal iff no maximal
        // subgroup found so far contains it.
        let mut maximal: Vec<SubgroupMask> = Vec::new();
        for s in subgroups.iter().rev() {
            if s.len() == n {
                continue;
            }
            if !maximal.iter().any(|m| s.is_subset(m)) {
                maximal.push(s.clone());
            }
        }
        maximal.reverse();

        let mut containment = vec![FixedBitSet::with_capacity(maximal.len()); n];
        for (i, m) in maximal.iter().enumerate() {
            for x in m.iter() {
                containment[x].insert(i);
            }
        }
        Self {
            subgroups,
            maximal,
            containment,
        }
    }
}

impl FiniteGroup {
    /// Full subgroup lattice (cached). Refuses groups above the lattice cap.
    pub fn lattice(&self) -> Result<Arc<Lattice>, GroupError> {
        self.lattice
            .get_or_init(|| {
                if self.order() > self.caps().lattice {
                    Err(GroupError::Cap {
                        what: "lattice",
                        order: self.order(),
                        cap: self.caps().lattice,
                    })
                } else {
                    Ok(Arc::new(Lattice::compute(self)))
                }
            })
            .clone()
    }

    pub fn maximal_subgroups(&self) -> Result<Vec<SubgroupMask>, GroupError> {
        Ok(self.lattice()?.maximal().to_vec())
    }

    /// Intersection of all maximal subgroups (the whole group when there are
    /// none, i.e. for the trivial group).
    pub fn frattini(&self) -> Result<SubgroupMask, GroupError> {
        let lattice = self.lattice()?;
        Ok(lattice
            .maximal()
            .iter()
            .fold(SubgroupMask::full(self.order()), |acc, m| {
                acc.intersection(m)
            }))
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{build_group, FiniteGroup};

    fn group(spec: &str) -> FiniteGroup {
        build_group(&spec.parse().unwrap(), &Default::default()).unwrap()
    }

    fn maximal_orders(spec: &str) -> Vec<usize> {
        let mut v: Vec<usize> = group(spec)
            .maximal_subgroups()
            .unwrap()
            .iter()
            .map(|m| m.len())
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn subgroup_counts_of_small_groups() {
        // Classical subgroup counts.
        for (spec, count) in [
            ("S:3", 6),
            ("Q:8", 6),
            ("D:4", 10),
            ("C:12", 6),
            ("A:4", 10),
            ("S:4", 30),
            ("A:5", 59),
        ] {
            assert_eq!(
                group(spec).lattice().unwrap().subgroups().len(),
                count,
                "{spec}"
            );
        }
    }

    #[test]
    fn maximal_subgroup_examples() {
        assert_eq!(maximal_orders("S:3"), vec![2, 2, 2, 3]);
        assert_eq!(maximal_orders("Q:8"), vec![4, 4, 4]);
        assert_eq!(maximal_orders("C:6"), vec![2, 3]);
        assert!(maximal_orders("C:1").is_empty());
    }

    #[test]
    fn frattini_examples() {
        let q8 = group("Q:8");
        let f = q8.frattini().unwrap();
        assert_eq!(f.len(), 2);
        let minus_one = f.iter().find(|&x| x != 0).unwrap();
        assert_eq!(q8.element_order(minus_one), 2);
        assert!(group("S:4").frattini().unwrap().is_trivial());
        assert_eq!(group("C:9").frattini().unwrap().len(), 3);
        assert_eq!(group("C:1").frattini().unwrap().len(), 1);
    }

    #[test]
    fn every_proper_subgroup_lies_in_a_maximal() {
        let g = group("S:4");
        let lat = g.lattice().unwrap();
        for s in lat.subgroups() {
            assert!(s.is_subgroup_of(&g));
            if !s.is_full() {
                assert!(lat.maximal().iter().any(|m| s.is_subset(m)));
            }
        }
    }

    #[test]
    fn lattice_cap_is_an_explicit_refusal() {
        let caps = crate::Caps {
            lattice: 10,
            ..Default::default()
        };
        let g = build_group(&"S:4".parse().unwrap(), &caps).unwrap();
        assert!(matches!(
            g.maximal_subgroups(),
            Err(crate::group::GroupError::Cap { .. })
        ));
    }
}
