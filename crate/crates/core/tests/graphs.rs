use proptest::prelude::*;
use virtgraph::graphs::{self, build_graph, graph_report, Diameter, GraphKind, Oracle};
use virtgraph::group::{ElementId, FiniteGroup};
use virtgraph::mingen;

fn group(spec: &str) -> FiniteGroup {
    FiniteGroup::from_spec(spec).unwrap()
}

fn small_specs() -> Vec<String> {
    let mut v: Vec<String> = (1..=12).map(|n| format!("C:{n}")).collect();
    v.extend((1..=6).map(|n| format!("D:{n}")));
    v.extend(["Q:8", "Dic:3", "A:4", "S:3", "C:2*C:2*C:2"].map(String::from));
    v
}

fn medium_specs() -> Vec<String> {
    let mut v: Vec<String> = (13..=48).map(|n| format!("C:{n}")).collect();
    v.extend((7..=24).map(|n| format!("D:{n}")));
    v.extend(
        [
            "Q:16", "Q:32", "Dic:4", "Dic:5", "Dic:6", "Dic:12", "S:4", "SL2:3", "C:3*Q:8",
        ]
        .map(String::from),
    );
    v.retain(|s| {
        FiniteGroup::from_spec(s)
            .map(|g| g.order() <= 48)
            .unwrap_or(false)
    });
    v
}

/// Some subset of `G` containing `x` and `y` generates a subgroup it is
/// irredundant in. Every such subset is tried.
fn in_some_minimal_set(g: &FiniteGroup, x: ElementId, y: ElementId) -> bool {
    let rest: Vec<ElementId> = g.elements().filter(|&z| z != x && z != y).collect();
    (0u64..1 << rest.len()).any(|mask| {
        let mut set = vec![x, y];
        set.extend(
            rest.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &z)| z),
        );
        (0..set.len()).all(|i| {
            let others: Vec<ElementId> = set
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &z)| z)
                .collect();
            !g.closure(&others).unwrap().contains(set[i])
        })
    })
}

#[test]
fn virt_matches_subset_search_up_to_order_12() {
    for spec in small_specs() {
        let g = group(&spec);
        for x in g.elements() {
            for y in x + 1..g.order() {
                assert_eq!(
                    graphs::adj_virt_independent(&g, x, y).unwrap(),
                    in_some_minimal_set(&g, x, y),
                    "{spec}: {} {}",
                    g.describe(x),
                    g.describe(y)
                );
            }
        }
    }
}

#[test]
fn virt_matches_pair_irredundance_up_to_order_48() {
    for spec in medium_specs() {
        let g = group(&spec);
        for x in g.elements() {
            for y in x + 1..g.order() {
                let irredundant =
                    !g.closure(&[y]).unwrap().contains(x) && !g.closure(&[x]).unwrap().contains(y);
                assert_eq!(
                    graphs::adj_virt_independent(&g, x, y).unwrap(),
                    irredundant,
                    "{spec}"
                );
                if irredundant {
                    let h = g.closure(&[x, y]).unwrap();
                    assert!(h.contains(x) && h.contains(y));
                }
            }
        }
    }
}

#[test]
fn generating_oracle_matches_closure() {
    for spec in ["S:4", "A:5", "D:9", "Q:16", "C:3*Q:8"] {
        let g = group(spec);
        let o = Oracle::new(&g, GraphKind::Generating).unwrap();
        for x in g.elements() {
            for y in x + 1..g.order() {
                let expected = x != 0 && y != 0 && g.closure(&[x, y]).unwrap().is_full();
                assert_eq!(o.adjacent(x, y), expected, "{spec}");
            }
        }
    }
}

#[test]
fn independence_oracle_agrees_with_witness_sets() {
    for spec in ["S:4", "Q:8", "C:6", "D:6", "C:2*C:2*C:2"] {
        let g = group(spec);
        for x in g.elements() {
            for y in x + 1..g.order() {
                match mingen::contains_in_irredundant(&g, x, y).unwrap() {
                    Some(set) => {
                        assert!(set.contains(x) && set.contains(y));
                        assert!(mingen::is_irredundant_generating(&g, set.members()));
                        assert!(graphs::adj_virt_independent(&g, x, y).unwrap(), "{spec}");
                    }
                    None => assert!(!graphs::adj_independent(&g, x, y).unwrap()),
                }
            }
        }
    }
}

#[test]
fn irredundant_set_examples() {
    let s4 = group("S:4");
    let (a, b) = (s4.element("(1 2)").unwrap(), s4.element("(3 4)").unwrap());
    let set = mingen::contains_in_irredundant(&s4, a, b).unwrap().unwrap();
    assert_eq!(set.len(), 3);

    let q8 = group("Q:8");
    let minus_one = q8.elements().find(|&x| q8.element_order(x) == 2).unwrap();
    let i = q8.elements().find(|&x| q8.element_order(x) == 4).unwrap();
    assert!(mingen::contains_in_irredundant(&q8, minus_one, i)
        .unwrap()
        .is_none());

    let c6 = group("C:6");
    let gen = c6.elements().find(|&x| c6.element_order(x) == 6).unwrap();
    let (g2, g3) = (c6.pow(gen, 2), c6.pow(gen, 3));
    let set = mingen::contains_in_irredundant(&c6, g2, g3)
        .unwrap()
        .unwrap();
    let mut members = set.members().to_vec();
    members.sort_unstable();
    let mut expected = vec![g2, g3];
    expected.sort_unstable();
    assert_eq!(members, expected);
}

#[test]
fn report_examples() {
    let dic3 = graph_report(&group("Dic:3"), GraphKind::VirtIndependence).unwrap();
    assert_eq!(dic3.diameter, Diameter::Finite(3));
    let c4 = graph_report(&group("C:4"), GraphKind::VirtIndependence).unwrap();
    assert_eq!(c4.isolated.len(), 4);
    assert_eq!(c4.diameter, Diameter::Empty);
    let s4 = graph_report(&group("S:4"), GraphKind::Generating).unwrap();
    assert!(s4.is_connected());
}

#[test]
fn exports_are_well_formed() {
    let g = group("S:3");
    let graph = build_graph(&g, GraphKind::Generating).unwrap();
    let csv = graphs::to_csv(&graph);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("u,v"));
    assert_eq!(lines.count(), graph.edge_count());
    let dot = graphs::to_dot(&graph);
    assert!(dot.trim_start().starts_with("graph"));
    let value = graphs::report_json(&graphs::analyze(&graph), &graph);
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["edge_count"], graph.edge_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracles_are_symmetric(i in 0usize..5, x in any::<usize>(), y in any::<usize>()) {
        let spec = ["S:4", "Dic:3", "A:5", "Q:16", "C:3*Q:8"][i];
        let g = group(spec);
        let (x, y) = (x % g.order(), y % g.order());
        prop_assume!(x != y);
        for kind in GraphKind::ALL {
            let o = Oracle::new(&g, kind).unwrap();
            prop_assert_eq!(o.adjacent(x, y), o.adjacent(y, x));
        }
    }
}
