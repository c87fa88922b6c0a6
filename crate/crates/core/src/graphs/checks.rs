use std::collections::BTreeSet;

use serde::Serialize;

use super::{build_graph, GraphError, GraphKind, Oracle};
use crate::group::{ElementId, FiniteGroup, MinimalClass, SubgroupMask};

/// Outcome of a structural check, with human-readable witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub group: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Verdict {
    fn new(check: &str, g: &FiniteGroup) -> Self {
        Self {
            check: check.into(),
            group: g.label().into(),
            pass: true,
            witnesses: Vec::new(),
        }
    }

    fn fail(&mut self, witness: String) {
        self.pass = false;
        self.witnesses.push(witness);
    }
}

fn names(g: &FiniteGroup, xs: &[ElementId]) -> String {
    let v: Vec<String> = xs.iter().map(|&x| g.describe(x)).collect();
    format!("{{{}}}", v.join(", "))
}

fn single_generators(g: &FiniteGroup) -> BTreeSet<ElementId> {
    g.elements().filter(|&x| g.generates(&[x])).collect()
}

/// Classifies non-trivial isolated vertices of the virtual-independence
/// graph, and, within the independence cap, compares the isolated vertices
/// of the independence graph with the Frattini subgroup plus the single
/// generators.
pub fn check_isolated_classification(g: &FiniteGroup) -> Result<Verdict, GraphError> {
    let mut v = check_virt_isolated(g)?;
    if g.order() <= g.caps().independence {
        let ind = check_independence_isolated(g)?;
        v.pass &= ind.pass;
        v.witnesses.extend(ind.witnesses);
    }
    v.check = "isolated-classification".into();
    Ok(v)
}

/// A non-trivial isolated vertex that does not generate `G` only occurs in
/// cyclic p-groups (every vertex isolated) and generalized quaternion groups
/// (the central involution alone).
pub fn check_virt_isolated(g: &FiniteGroup) -> Result<Verdict, GraphError> {
    let mut v = Verdict::new("virt-isolated", g);
    let single_generators = single_generators(g);
    let virt = build_graph(g, GraphKind::VirtIndependence)?;
    let isolated = virt.isolated();
    let unexpected: Vec<ElementId> = isolated
        .iter()
        .copied()
        .filter(|&x| x != 0 && !single_generators.contains(&x))
        .collect();
    let class = g.classify_unique_minimal();
    match class.class {
        MinimalClass::CyclicPPower => {
            if isolated.len() != g.order() {
                v.fail(format!(
                    "cyclic p-group with non-isolated vertices; isolated = {}",
                    names(g, &isolated)
                ));
            }
        }
        MinimalClass::GeneralizedQuaternion => {
            let minimal = class
                .minimal
                .expect("quaternion groups have a unique minimal subgroup");
            let involution: Vec<ElementId> = minimal.iter().filter(|&x| x != 0).collect();
            if unexpected != involution {
                v.fail(format!(
                    "generalized quaternion: non-trivial isolated {} but central involution {}",
                    names(g, &unexpected),
                    names(g, &involution)
                ));
            }
        }
        MinimalClass::Neither => {
            if !unexpected.is_empty() {
                v.fail(format!(
                    "non-trivial non-generator isolated vertices {}",
                    names(g, &unexpected)
                ));
            }
        }
    }
    v.witnesses.push(format!(
        "virt-independence isolated = {}",
        names(g, &isolated)
    ));
    Ok(v)
}

/// Isolated vertices of the independence graph are exactly the Frattini
/// subgroup together with the elements generating `G` on their own.
pub fn check_independence_isolated(g: &FiniteGroup) -> Result<Verdict, GraphError> {
    let mut v = Verdict::new("independence-isolated", g);
    let ind = build_graph(g, GraphKind::Independence)?;
    let isolated: BTreeSet<ElementId> = ind.isolated().into_iter().collect();
    let mut expected: BTreeSet<ElementId> = g.frattini()?.iter().collect();
    expected.extend(single_generators(g));
    let shown = names(g, &isolated.iter().copied().collect::<Vec<_>>());
    if isolated != expected {
        v.fail(format!(
            "independence isolated {} but Frattini with single generators {}",
            shown,
            names(g, &expected.iter().copied().collect::<Vec<_>>())
        ));
    } else {
        v.witnesses.push(format!("independence isolated = {shown}"));
    }
    Ok(v)
}

/// Checks that adjacency in the virtual-independence graph of `G/N` lifts to
/// every pair of coset elements, and, within the independence cap, that
/// components of the independence graph of `G/N` lift into single components
/// of that of `G`.
pub fn check_quotient_lifting(g: &FiniteGroup, n: &SubgroupMask) -> Result<Verdict, GraphError> {
    let q = g.quotient(n)?;
    let mut v = Verdict::new("quotient-lifting", g);
    let mut cosets: Vec<Vec<ElementId>> = vec![Vec::new(); q.group.order()];
    for x in g.elements() {
        cosets[q.projection[x]].push(x);
    }

    let qv = Oracle::new(&q.group, GraphKind::VirtIndependence)?;
    let gv = Oracle::new(g, GraphKind::VirtIndependence)?;
    'pairs: for a in q.group.elements() {
        for b in a + 1..q.group.order() {
            if !qv.adjacent(a, b) {
                continue;
            }
            for &x in &cosets[a] {
                for &y in &cosets[b] {
                    if !gv.adjacent(x, y) {
                        v.fail(format!(
                            "virt: cosets adjacent but {} and {} are not",
                            g.describe(x),
                            g.describe(y)
                        ));
                        break 'pairs;
                    }
                }
            }
        }
    }

    if g.order() <= g.caps().independence {
        let gi = build_graph(g, GraphKind::Independence)?;
        let qi = build_graph(&q.group, GraphKind::Independence)?;
        let mut component_of = vec![usize::MAX; g.order()];
        for (i, c) in gi.components().iter().enumerate() {
            for &x in c {
                component_of[x] = i;
            }
        }
        for comp in qi.components() {
            let lifts: BTreeSet<usize> = comp
                .iter()
                .flat_map(|&c| &cosets[c])
                .map(|&x| component_of[x])
                .collect();
            if lifts.len() != 1 || lifts.contains(&usize::MAX) {
                let reps: Vec<ElementId> = comp.iter().map(|&c| q.representatives[c]).collect();
                v.fail(format!(
                    "independence: quotient component {} does not lift to one component",
                    names(g, &reps)
                ));
            }
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> FiniteGroup {
        FiniteGroup::from_spec(spec).unwrap()
    }

    #[test]
    fn classification_examples() {
        let q16 = group("Q:16");
        let v = check_isolated_classification(&q16).unwrap();
        assert!(v.pass, "{v:?}");
        let virt = build_graph(&q16, GraphKind::VirtIndependence).unwrap();
        let z = q16.classify_unique_minimal().minimal.unwrap();
        assert_eq!(virt.isolated(), z.to_vec());

        let c27 = group("C:27");
        assert!(check_isolated_classification(&c27).unwrap().pass);
        assert_eq!(
            build_graph(&c27, GraphKind::VirtIndependence)
                .unwrap()
                .isolated()
                .len(),
            27
        );

        let s4 = group("S:4");
        assert!(check_isolated_classification(&s4).unwrap().pass);
        assert_eq!(
            build_graph(&s4, GraphKind::Independence)
                .unwrap()
                .isolated(),
            vec![0]
        );
    }

    #[test]
    fn lifting_examples() {
        let q16 = group("Q:16");
        let z = q16.classify_unique_minimal().minimal.unwrap();
        assert!(check_quotient_lifting(&q16, &z).unwrap().pass);

        let dic3 = group("Dic:3");
        let b = dic3
            .elements()
            .find(|&x| dic3.element_order(x) == 3)
            .unwrap();
        let v = check_quotient_lifting(&dic3, &dic3.cyclic_subgroup(b)).unwrap();
        assert!(v.pass, "{v:?}");

        let s3 = group("S:3");
        assert!(
            check_quotient_lifting(&s3, &SubgroupMask::full(6))
                .unwrap()
                .pass
        );
        let not_normal = s3.cyclic_subgroup(s3.element("(1 2)").unwrap());
        assert!(check_quotient_lifting(&s3, &not_normal).is_err());
    }
}
