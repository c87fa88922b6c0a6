//! Generating, independence and virtual-independence graphs of a finite
//! group, with isolated vertices, components and diameters.
//!
//! Vertex set is the whole group. The identity is isolated in every graph of
//! a non-trivial group: it lies in every cyclic subgroup, it is redundant in
//! every generating set, and in the generating graph it is excluded by
//! convention (otherwise it would be joined to the generators of a cyclic
//! group).

mod checks;
mod export;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::group::{ElementId, FiniteGroup, GroupError, Lattice, SubgroupMask};
use crate::mingen::{self, MingenError, Signatures};

pub use checks::{
    check_independence_isolated, check_isolated_classification, check_quotient_lifting,
    check_virt_isolated, Verdict,
};
pub use export::{report_json, to_csv, to_dot, REPORT_SCHEMA_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Mingen(#[from] MingenError),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Generating,
    Independence,
    VirtIndependence,
}

impl GraphKind {
    pub const ALL: [GraphKind; 3] = [
        GraphKind::Generating,
        GraphKind::Independence,
        GraphKind::VirtIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Generating => "generating",
            GraphKind::Independence => "independence",
            GraphKind::VirtIndependence => "virt-independence",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GraphError::Precondition(format!("unknown graph kind '{s}'")))
    }
}

/// `true` iff `x` and `y` generate `G`. Loops are rejected.
pub fn adj_generating(g: &FiniteGroup, x: ElementId, y: ElementId) -> Result<bool, GraphError> {
    g.check_id(x)?;
    g.check_id(y)?;
    if x == y {
        return Err(GraphError::Precondition(
            "loops are not part of the graph".into(),
        ));
    }
    Ok(match lattice_if_cheap(g) {
        Some(lat) => lat.containing(x).is_disjoint(lat.containing(y)),
        None => g.generates(&[x, y]),
    })
}

/// `true` iff `x != y` and neither is a power of the other.
pub fn adj_virt_independent(
    g: &FiniteGroup,
    x: ElementId,
    y: ElementId,
) -> Result<bool, GraphError> {
    g.check_id(x)?;
    g.check_id(y)?;
    Ok(x != y && !g.in_cyclic(x, y) && !g.in_cyclic(y, x))
}

/// `true` iff some irredundant generating set of `G` contains both.
pub fn adj_independent(g: &FiniteGroup, x: ElementId, y: ElementId) -> Result<bool, GraphError> {
    if x == y {
        return Err(GraphError::Precondition(
            "loops are not part of the graph".into(),
        ));
    }
    Ok(mingen::contains_in_irredundant(g, x, y)?.is_some())
}

fn lattice_if_cheap(g: &FiniteGroup) -> Option<Arc<Lattice>> {
    if g.order() <= g.caps().lattice {
        g.lattice().ok()
    } else {
        None
    }
}

/// Precomputed adjacency for one group and graph kind; cheap per query and
/// safe to share across threads.
pub struct Oracle<'g> {
    g: &'g FiniteGroup,
    kind: GraphKind,
    data: OracleData,
}

enum OracleData {
    Lattice(Arc<Lattice>),
    Closure,
    Cyclic(Vec<SubgroupMask>),
    /// Adjacency between containment classes, plus the class of each element.
    Classes {
        class_of: Vec<usize>,
        adjacent: Vec<FixedBitSet>,
    },
}

impl<'g> Oracle<'g> {
    pub fn new(g: &'g FiniteGroup, kind: GraphKind) -> Result<Self, GraphError> {
        let caps = g.caps();
        let data = match kind {
            GraphKind::Generating => match lattice_if_cheap(g) {
                Some(lat) => OracleData::Lattice(lat),
                None => OracleData::Closure,
            },
            GraphKind::VirtIndependence => OracleData::Cyclic(
                g.elements()
                    .into_par_iter()
                    .map(|x| g.cyclic_subgroup(x))
                    .collect(),
            ),
            GraphKind::Independence => {
                if g.order() > caps.independence {
                    return Err(GroupError::Cap {
                        what: "independence",
                        order: g.order(),
                        cap: caps.independence,
                    }
                    .into());
                }
                let sigs = Signatures::new(g)?;
                let class_of: Vec<usize> = g.elements().map(|x| sigs.class_of(x)).collect();
                let reps = sigs.representatives().to_vec();
                let k = reps.len();
                let rows: Vec<FixedBitSet> = (0..k)
                    .into_par_iter()
                    .map(|a| {
                        let mut row = FixedBitSet::with_capacity(k);
                        for b in 0..k {
                            if a != b && mingen::contains_pair(&sigs, reps[a], reps[b]).is_some() {
                                row.insert(b);
                            }
                        }
                        row
                    })
                    .collect();
                OracleData::Classes {
                    class_of,
                    adjacent: rows,
                }
            }
        };
        Ok(Self { g, kind, data })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Adjacency as stored in the graph; `x == y` is never adjacent.
    pub fn adjacent(&self, x: ElementId, y: ElementId) -> bool {
        if x == y {
            return false;
        }
        match &self.data {
            OracleData::Lattice(lat) => {
                x != 0 && y != 0 && lat.containing(x).is_disjoint(lat.containing(y))
            }
            OracleData::Closure => x != 0 && y != 0 && self.g.generates(&[x, y]),
            OracleData::Cyclic(cyc) => !cyc[y].contains(x) && !cyc[x].contains(y),
            OracleData::Classes { class_of, adjacent } => {
                adjacent[class_of[x]].contains(class_of[y])
            }
        }
    }
}

/// Adjacency lists of one graph on the elements of a group.
#[derive(Clone, Debug)]
pub struct Graph {
    pub kind: GraphKind,
    pub label: String,
    /// Element names, indexed by id.
    pub names: Vec<String>,
    pub neighbors: Vec<Vec<ElementId>>,
}

impl Graph {
    pub fn order(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, x: ElementId, y: ElementId) -> bool {
        self.neighbors[x].binary_search(&y).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn isolated(&self) -> Vec<ElementId> {
        (0..self.order())
            .filter(|&v| self.neighbors[v].is_empty())
            .collect()
    }

    /// Breadth-first distances from `src`; `usize::MAX` for unreachable.
    pub fn distances(&self, src: ElementId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, x: ElementId, y: ElementId) -> Option<usize> {
        Some(self.distances(x)[y]).filter(|&d| d != usize::MAX)
    }

    /// Components of the subgraph on non-isolated vertices.
    pub fn components(&self) -> Vec<Vec<ElementId>> {
        let mut dsu = DisjointSets::new(self.order());
        for (u, v) in self.edges() {
            dsu.union(u, v);
        }
        dsu.groups((0..self.order()).filter(|&v| !self.neighbors[v].is_empty()))
    }
}

pub fn build_graph(g: &FiniteGroup, kind: GraphKind) -> Result<Graph, GraphError> {
    let cap = g.caps().graph;
    if g.order() > cap {
        return Err(GroupError::Cap {
            what: "graph",
            order: g.order(),
            cap,
        }
        .into());
    }
    let oracle = Oracle::new(g, kind)?;
    let neighbors = g
        .elements()
        .into_par_iter()
        .map(|x| g.elements().filter(|&y| oracle.adjacent(x, y)).collect())
        .collect();
    Ok(Graph {
        kind,
        label: g.label().to_string(),
        names: g.elements().map(|x| g.describe(x)).collect(),
        neighbors,
    })
}

/// Diameter of the subgraph on non-isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
    /// Every vertex is isolated.
    Empty,
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Disconnected => s.serialize_str("disconnected"),
            Diameter::Empty => s.serialize_str("empty"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub group: String,
    pub kind: GraphKind,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub isolated: Vec<ElementId>,
    /// Components of the non-isolated subgraph, each ascending, ordered by
    /// smallest member.
    pub components: Vec<Vec<ElementId>>,
    pub diameter: Diameter,
    /// Diameter of each component, aligned with `components`.
    pub component_diameters: Vec<usize>,
}

impl GraphReport {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

pub fn graph_report(g: &FiniteGroup, kind: GraphKind) -> Result<GraphReport, GraphError> {
    Ok(analyze(&build_graph(g, kind)?))
}

pub fn analyze(graph: &Graph) -> GraphReport {
    let components = graph.components();
    let mut component_of = vec![usize::MAX; graph.order()];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v] = i;
        }
    }
    let active: Vec<ElementId> = (0..graph.order())
        .filter(|&v| component_of[v] != usize::MAX)
        .collect();
    let eccentricities: Vec<(usize, usize)> = active
        .par_iter()
        .map(|&v| {
            let ecc = graph
                .distances(v)
                .into_iter()
                .filter(|&d| d != usize::MAX)
                .max()
                .unwrap_or(0);
            (component_of[v], ecc)
        })
        .collect();
    let mut component_diameters = vec![0; components.len()];
    for (c, e) in eccentricities {
        component_diameters[c] = component_diameters[c].max(e);
    }
    let diameter = match components.len() {
        0 => Diameter::Empty,
        1 => Diameter::Finite(component_diameters[0]),
        _ => Diameter::Disconnected,
    };
    GraphReport {
        group: graph.label.clone(),
        kind: graph.kind,
        vertex_count: graph.order(),
        edge_count: graph.edge_count(),
        isolated: graph.isolated(),
        components,
        diameter,
        component_diameters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> FiniteGroup {
        FiniteGroup::from_spec(spec).unwrap()
    }

    #[test]
    fn generating_oracle_examples() {
        let s3 = group("S:3");
        let (t, c) = (s3.element("(1 2)").unwrap(), s3.element("(1 2 3)").unwrap());
        assert!(adj_generating(&s3, t, c).unwrap());
        assert!(!adj_generating(&s3, c, s3.inv(c)).unwrap());
        assert!(adj_generating(&s3, t, t).is_err());
    }

    #[test]
    fn lattice_and_closure_generating_agree() {
        let s4 = group("S:4");
        let closure_only = crate::build_group(
            &"S:4".parse().unwrap(),
            &crate::Caps {
                lattice: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let a = Oracle::new(&s4, GraphKind::Generating).unwrap();
        let b = Oracle::new(&closure_only, GraphKind::Generating).unwrap();
        for x in s4.elements() {
            for y in s4.elements() {
                assert_eq!(a.adjacent(x, y), b.adjacent(x, y));
            }
        }
    }

    #[test]
    fn virt_oracle_examples() {
        let q8 = group("Q:8");
        let (i, j) = (q8.element("a").unwrap(), q8.element("x").unwrap());
        assert!(adj_virt_independent(&q8, i, j).unwrap());
        let c6 = group("C:6");
        assert!(!adj_virt_independent(&c6, 1, 2).unwrap());
    }

    #[test]
    fn independence_oracle_examples() {
        let s4 = group("S:4");
        let (a, b) = (s4.element("(1 2)").unwrap(), s4.element("(3 4)").unwrap());
        assert!(adj_independent(&s4, a, b).unwrap());
        let c6 = group("C:6");
        assert!(adj_independent(&c6, 2, 3).unwrap());
        let q8 = group("Q:8");
        let minus_one = q8.element("a^2").unwrap();
        assert!(!adj_independent(&q8, minus_one, q8.element("a").unwrap()).unwrap());
        let big = crate::build_group(
            &"C:12".parse().unwrap(),
            &crate::Caps {
                independence: 8,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(adj_independent(&big, 1, 2).is_err());
    }

    /// The subgroup `<a^2, b>` for a presentation `a^4 = b^3 = 1, b^a = b^-1`,
    /// checked independently of the dicyclic representation.
    fn dic3_presentation(g: &FiniteGroup) -> (ElementId, ElementId) {
        for a in g.elements().filter(|&a| g.element_order(a) == 4) {
            for b in g.elements().filter(|&b| g.element_order(b) == 3) {
                if g.conjugate(b, a) == g.inv(b) && g.generates(&[a, b]) {
                    return (a, b);
                }
            }
        }
        panic!("no presentation found");
    }

    #[test]
    fn dic3_virt_graph() {
        let g = group("Dic:3");
        let report = graph_report(&g, GraphKind::VirtIndependence).unwrap();
        assert_eq!(report.diameter, Diameter::Finite(3));
        let (a, b) = dic3_presentation(&g);
        let a2b = g.mul(g.pow(a, 2), b);
        let mut expected: Vec<ElementId> = Vec::new();
        for i in [1, 3] {
            for j in 0..3 {
                expected.push(g.mul(g.pow(a, i), g.pow(b, j)));
            }
        }
        expected.sort_unstable();
        let graph = build_graph(&g, GraphKind::VirtIndependence).unwrap();
        assert_eq!(graph.neighbors[a2b], expected);
    }

    #[test]
    fn report_examples() {
        let c4 = group("C:4");
        let r = graph_report(&c4, GraphKind::VirtIndependence).unwrap();
        assert_eq!(r.isolated.len(), 4);
        assert_eq!(r.diameter, Diameter::Empty);

        let q8 = group("Q:8");
        let r = graph_report(&q8, GraphKind::Generating).unwrap();
        let order4: Vec<ElementId> = q8
            .elements()
            .filter(|&x| q8.element_order(x) == 4)
            .collect();
        assert_eq!(order4.len(), 6);
        assert_eq!(r.components, vec![order4]);
        assert!(r.is_connected());

        let c2 = group("C:2*C:2*C:2");
        let r = graph_report(&c2, GraphKind::Generating).unwrap();
        assert_eq!(r.edge_count, 0);
    }

    #[test]
    fn disconnected_reports_per_component() {
        // Two disjoint edges and a path: built directly.
        let graph = Graph {
            kind: GraphKind::Generating,
            label: "test".into(),
            names: (0..6).map(|i| i.to_string()).collect(),
            neighbors: vec![vec![], vec![2], vec![1, 3], vec![2], vec![5], vec![4]],
        };
        let r = analyze(&graph);
        assert_eq!(r.diameter, Diameter::Disconnected);
        assert_eq!(r.components, vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(r.component_diameters, vec![2, 1]);
        assert_eq!(serde_json::to_value(&r.diameter).unwrap(), "disconnected");
    }

    #[test]
    fn identity_isolated_in_every_graph() {
        for spec in ["C:5", "S:3", "Q:8", "C:6"] {
            let g = group(spec);
            for kind in GraphKind::ALL {
                assert!(
                    graph_report(&g, kind).unwrap().isolated.contains(&0),
                    "{spec} {kind}"
                );
            }
        }
    }
}
