use std::collections::VecDeque;
use std::sync::Arc;

use proptest::prelude::*;
use virtgraph::graphs::GraphKind;
use virtgraph::group::FiniteGroup;
use virtgraph::seqprod::{self, CoordinateFamily, CoordinateGraph, SeqElement, SeqError};

fn delta(spec: &str) -> CoordinateGraph {
    CoordinateGraph::group(
        Arc::new(FiniteGroup::from_spec(spec).unwrap()),
        GraphKind::Generating,
    )
    .unwrap()
}

fn active(c: &CoordinateGraph) -> Vec<usize> {
    (0..c.vertex_count())
        .filter(|&v| !c.is_isolated(v))
        .collect()
}

/// Distance in the full product graph (adjacent iff adjacent at every
/// coordinate), by breadth-first search over coordinate tuples.
fn product_distance(f: &CoordinateFamily, x: &[usize], y: &[usize]) -> Option<usize> {
    let sizes: Vec<usize> = f.coords.iter().map(|c| c.vertex_count()).collect();
    let encode = |v: &[usize]| {
        v.iter()
            .zip(&sizes)
            .rev()
            .fold(0, |acc, (&c, &s)| acc * s + c)
    };
    let total: usize = sizes.iter().product();
    let mut dist = vec![usize::MAX; total];
    dist[encode(x)] = 0;
    let mut queue = VecDeque::from([x.to_vec()]);
    while let Some(u) = queue.pop_front() {
        let du = dist[encode(&u)];
        let mut nexts: Vec<Vec<usize>> = vec![Vec::new()];
        for (n, c) in f.coords.iter().enumerate() {
            nexts = nexts
                .into_iter()
                .flat_map(|p| {
                    c.neighbors(u[n])
                        .into_iter()
                        .map(move |w| [p.clone(), vec![w]].concat())
                })
                .collect();
        }
        for v in nexts {
            let k = encode(&v);
            if dist[k] == usize::MAX {
                dist[k] = du + 1;
                queue.push_back(v);
            }
        }
    }
    Some(dist[encode(y)]).filter(|&d| d != usize::MAX)
}

fn s3_d4() -> CoordinateFamily {
    CoordinateFamily::new(vec![delta("S:3"), delta("D:4")]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn criterion_never_exceeds_product_distance(a in any::<usize>(), b in any::<usize>(), c in any::<usize>(), d in any::<usize>()) {
        let f = s3_d4();
        let (s3, d4) = (active(&f.coords[0]), active(&f.coords[1]));
        let x = vec![s3[a % s3.len()], d4[b % d4.len()]];
        let y = vec![s3[c % s3.len()], d4[d % d4.len()]];
        let bound = seqprod::component_criterion(&f, &SeqElement::new(x.clone()), &SeqElement::new(y.clone()), 100).unwrap();
        if let Some(dist) = product_distance(&f, &x, &y) {
            prop_assert!(bound.bound.unwrap() <= dist);
        }
    }

    #[test]
    fn padded_walks_are_valid(i in 0usize..2, a in any::<usize>(), b in any::<usize>(), extra in 0usize..6) {
        let g = delta(["S:3", "SL2:4"][i]);
        let act = active(&g);
        let (u, v) = (act[a % act.len()], act[b % act.len()]);
        prop_assume!(u != v);
        let walk = seqprod::shortest_walk(&g, u, v).unwrap();
        let target = walk.len() - 1 + extra;
        let padded = seqprod::pad_walk(&g, &walk, target).unwrap();
        prop_assert_eq!(padded.len(), target + 1);
        prop_assert_eq!(padded[0], u);
        prop_assert_eq!(padded[target], v);
        prop_assert!(padded.windows(2).all(|e| g.adjacent(e[0], e[1])));
    }
}

#[test]
fn triangle_padding_example() {
    let g = delta("S:3");
    let (a, b) = (
        seqprod::vertex(&g, "(1 2)").unwrap(),
        seqprod::vertex(&g, "(1 2 3)").unwrap(),
    );
    let CoordinateGraph::Group { group, .. } = &g else {
        unreachable!()
    };
    assert_eq!(
        seqprod::pad_walk(&g, &[a, b], 2).unwrap(),
        vec![a, group.mul(a, b), b]
    );
    let p = seqprod::pad_walk(&g, &[a, b], 4).unwrap();
    assert_eq!(p.len(), 5);
}

#[test]
fn bipartite_graphs_reject_odd_padding() {
    let path = CoordinateGraph::Path { len: 3 };
    assert!(matches!(
        seqprod::pad_walk(&path, &[0, 1], 2),
        Err(SeqError::Padding { .. })
    ));
    assert_eq!(seqprod::pad_walk(&path, &[0, 1], 3).unwrap().len(), 4);
}

#[test]
fn stitching_mixed_lengths() {
    let f = CoordinateFamily::new(vec![delta("S:3"), delta("S:3")]).unwrap();
    let g = &f.coords[0];
    let v = |s: &str| seqprod::vertex(g, s).unwrap();
    let walks = vec![
        vec![v("(1 2)"), v("(1 2 3)")],
        vec![v("(1 2)"), v("(1 2 3)"), v("(1 3)"), v("(2 3)")],
    ];
    let path = seqprod::stitch(&f, &walks, 3).unwrap();
    assert_eq!(path.len(), 4);
    for e in path.windows(2) {
        assert!(seqprod::seq_adjacent(&f, &e[0], &e[1], 0).unwrap());
    }
    let closed =
        seqprod::stitch(&f, &[vec![v("(1 2)")], vec![v("(1 2)"), v("(1 2 3)")]], 3).unwrap();
    assert_eq!(closed[0].coords[0], closed[3].coords[0]);
}

#[test]
fn doubling_paths_diverge_only_at_long_horizons() {
    let short = CoordinateFamily::doubling_paths(12);
    assert!(matches!(
        seqprod::separation_demo(&short, &[1.5, 2.0, 3.0], 4),
        Err(SeqError::HorizonTooSmall { .. })
    ));
    let long = CoordinateFamily::doubling_paths(40);
    let rep = seqprod::separation_demo(&long, &[1.5, 2.0, 3.0], 4).unwrap();
    assert_eq!(rep.pairs.len(), 3);
    assert!(rep.pairs.iter().all(|p| p.gap > 4));
}

#[test]
fn family_files_parse() {
    let text = "# coordinates\ngroup:S:3:generating\npath:4\n";
    let f = CoordinateFamily::parse(text, &Default::default()).unwrap();
    assert_eq!(f.horizon(), 2);
    assert!(matches!(
        CoordinateFamily::parse("triangle 3\n", &Default::default()),
        Err(SeqError::Parse { line: 1, .. })
    ));
}
