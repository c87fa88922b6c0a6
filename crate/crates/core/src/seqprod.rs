//! Horizon-truncated products of finite graphs.
//!
//! An element of the product is one vertex per coordinate graph. Two elements
//! are adjacent with exception prefix `m` when their coordinates are adjacent
//! at every index `n` with `m <= n < N`; the prefix stands in for the finitely
//! many coordinates where adjacency may fail. Paths in the product are built
//! coordinate by coordinate, padded to a common length and zipped.

use std::collections::VecDeque;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graphs::{build_graph, Graph, GraphError, GraphKind};
use crate::group::{build_group, ElementId, FiniteGroup, GroupError};
use crate::Caps;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeqError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Precondition(String),
    #[error("coordinate {coordinate}: walk of length {length} cannot be padded to {target}")]
    Padding {
        coordinate: usize,
        length: usize,
        target: usize,
    },
    #[error("horizon too small: taus {tau1} and {tau2} never differ by more than {threshold} (largest gap {max_gap})")]
    HorizonTooSmall {
        tau1: f64,
        tau2: f64,
        threshold: usize,
        max_gap: usize,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl From<crate::mingen::MingenError> for SeqError {
    fn from(e: crate::mingen::MingenError) -> Self {
        SeqError::Graph(e.into())
    }
}

/// One coordinate of a product.
#[derive(Clone, Debug)]
pub enum CoordinateGraph {
    /// A graph on the elements of a group.
    Group {
        group: Arc<FiniteGroup>,
        graph: Graph,
    },
    /// The path `0 - 1 - ... - len`, with `len` edges.
    Path {
        len: usize,
    },
    Explicit {
        neighbors: Vec<Vec<usize>>,
    },
}

impl CoordinateGraph {
    pub fn group(group: Arc<FiniteGroup>, kind: GraphKind) -> Result<Self, SeqError> {
        let graph = build_graph(&group, kind)?;
        Ok(CoordinateGraph::Group { group, graph })
    }

    /// An explicit undirected graph given by adjacency lists; symmetrized and
    /// sorted.
    pub fn explicit(neighbors: Vec<Vec<usize>>) -> Result<Self, SeqError> {
        let n = neighbors.len();
        let mut sym = vec![Vec::new(); n];
        for (u, ns) in neighbors.iter().enumerate() {
            for &v in ns {
                if v >= n || v == u {
                    return Err(SeqError::Precondition(format!("bad edge {u}-{v}")));
                }
                sym[u].push(v);
                sym[v].push(u);
            }
        }
        for ns in &mut sym {
            ns.sort_unstable();
            ns.dedup();
        }
        Ok(CoordinateGraph::Explicit { neighbors: sym })
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            CoordinateGraph::Group { graph, .. } => graph.order(),
            CoordinateGraph::Path { len } => len + 1,
            CoordinateGraph::Explicit { neighbors } => neighbors.len(),
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        match self {
            CoordinateGraph::Group { graph, .. } => graph.neighbors[v].clone(),
            CoordinateGraph::Path { len } => {
                let mut out = Vec::with_capacity(2);
                if v > 0 {
                    out.push(v - 1);
                }
                if v < *len {
                    out.push(v + 1);
                }
                out
            }
            CoordinateGraph::Explicit { neighbors } => neighbors[v].clone(),
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        match self {
            CoordinateGraph::Group { graph, .. } => graph.adjacent(u, v),
            CoordinateGraph::Path { .. } => u.abs_diff(v) == 1,
            CoordinateGraph::Explicit { neighbors } => neighbors[u].binary_search(&v).is_ok(),
        }
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbors(v).is_empty()
    }

    fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Graph distance; `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        match self {
            CoordinateGraph::Path { .. } => Some(u.abs_diff(v)),
            _ => Some(self.bfs(u)[v]).filter(|&d| d != usize::MAX),
        }
    }

    /// Diameter of the subgraph on non-isolated vertices; `None` when it is
    /// empty or disconnected.
    pub fn diameter(&self) -> Option<usize> {
        if let CoordinateGraph::Path { len } = self {
            return (*len > 0).then_some(*len);
        }
        let active: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| !self.is_isolated(v))
            .collect();
        let mut diam = 0;
        for &v in &active {
            let d = self.bfs(v);
            for &w in &active {
                if d[w] == usize::MAX {
                    return None;
                }
                diam = diam.max(d[w]);
            }
        }
        (!active.is_empty()).then_some(diam)
    }

    /// Shortest odd closed walk starting and ending at `v`.
    fn odd_closed_walk(&self, v: usize) -> Option<Vec<usize>> {
        // Breadth-first search over (vertex, parity of walk length).
        let n = self.vertex_count();
        let mut prev = vec![[usize::MAX; 2]; n];
        let mut seen = vec![[false; 2]; n];
        seen[v][0] = true;
        let mut queue = VecDeque::from([(v, 0usize)]);
        while let Some((u, p)) = queue.pop_front() {
            for w in self.neighbors(u) {
                let q = p ^ 1;
                if !seen[w][q] {
                    seen[w][q] = true;
                    prev[w][q] = u;
                    if w == v && q == 1 {
                        let mut walk = vec![v];
                        let (mut cur, mut par) = (v, 1);
                        loop {
                            let before = prev[cur][par];
                            walk.push(before);
                            par ^= 1;
                            cur = before;
                            if cur == v && par == 0 {
                                break;
                            }
                        }
                        walk.reverse();
                        return Some(walk);
                    }
                    queue.push_back((w, q));
                }
            }
        }
        None
    }

    /// The triangle device `a - ab - b` for an edge `a - b` of a group-mode
    /// graph; returns `ab` when both new edges are present.
    fn triangle_apex(&self, a: usize, b: usize) -> Option<usize> {
        let CoordinateGraph::Group { group, graph } = self else {
            return None;
        };
        let ab = group.mul(a, b);
        (ab != a && ab != b && graph.adjacent(a, ab) && graph.adjacent(ab, b)).then_some(ab)
    }

    fn describe(&self) -> String {
        match self {
            CoordinateGraph::Group { graph, .. } => format!("group:{}:{}", graph.label, graph.kind),
            CoordinateGraph::Path { len } => format!("path:{len}"),
            CoordinateGraph::Explicit { neighbors } => format!("explicit:{}", neighbors.len()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoordinateFamily {
    pub coords: Vec<CoordinateGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeqElement {
    pub coords: Vec<usize>,
}

impl SeqElement {
    pub fn new(coords: Vec<usize>) -> Self {
        Self { coords }
    }
}

impl CoordinateFamily {
    pub fn new(coords: Vec<CoordinateGraph>) -> Result<Self, SeqError> {
        if coords.iter().any(|c| c.vertex_count() == 0) {
            return Err(SeqError::Precondition(
                "coordinate graphs must be nonempty".into(),
            ));
        }
        Ok(Self { coords })
    }

    /// `P_{2^n}` for `n = 0..=max_exponent`.
    pub fn doubling_paths(max_exponent: u32) -> Self {
        Self {
            coords: (0..=max_exponent)
                .map(|n| CoordinateGraph::Path { len: 1 << n })
                .collect(),
        }
    }

    pub fn horizon(&self) -> usize {
        self.coords.len()
    }

    /// Parses one coordinate per line: `group:<spec>:<kind>` or `path:<len>`.
    pub fn parse(text: &str, caps: &Caps) -> Result<Self, SeqError> {
        let mut coords = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| SeqError::Parse {
                line: i + 1,
                reason,
            };
            if let Some(len) = line.strip_prefix("path:") {
                let len: usize = len
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad path length '{len}'")))?;
                coords.push(CoordinateGraph::Path { len });
            } else if let Some(rest) = line.strip_prefix("group:") {
                let (spec, kind) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| err("expected group:<spec>:<kind>".into()))?;
                let kind: GraphKind = kind
                    .trim()
                    .parse()
                    .map_err(|e: GraphError| err(e.to_string()))?;
                let spec = spec.parse().map_err(|e: GroupError| err(e.to_string()))?;
                let group = Arc::new(build_group(&spec, caps).map_err(|e| err(e.to_string()))?);
                coords.push(CoordinateGraph::group(group, kind)?);
            } else {
                return Err(err(format!("unrecognized coordinate '{line}'")));
            }
        }
        if coords.is_empty() {
            return Err(SeqError::Parse {
                line: 0,
                reason: "no coordinates".into(),
            });
        }
        Self::new(coords)
    }

    pub fn from_file(path: &Path, caps: &Caps) -> Result<Self, SeqError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, caps)
    }

    pub fn check_element(&self, x: &SeqElement) -> Result<(), SeqError> {
        if x.coords.len() != self.horizon() {
            return Err(SeqError::Precondition(format!(
                "element has {} coordinates, horizon is {}",
                x.coords.len(),
                self.horizon()
            )));
        }
        for (n, (&v, c)) in x.coords.iter().zip(&self.coords).enumerate() {
            if v >= c.vertex_count() {
                return Err(SeqError::Precondition(format!(
                    "coordinate {n}: vertex {v} out of range"
                )));
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> Vec<String> {
        self.coords.iter().map(CoordinateGraph::describe).collect()
    }
}

/// Adjacent at every coordinate from `m` up to the horizon.
pub fn seq_adjacent(
    f: &CoordinateFamily,
    x: &SeqElement,
    y: &SeqElement,
    m: usize,
) -> Result<bool, SeqError> {
    f.check_element(x)?;
    f.check_element(y)?;
    if m > f.horizon() {
        return Err(SeqError::Precondition(format!(
            "exception prefix {m} exceeds horizon {}",
            f.horizon()
        )));
    }
    Ok((m..f.horizon()).all(|n| f.coords[n].adjacent(x.coords[n], y.coords[n])))
}

fn check_walk(g: &CoordinateGraph, walk: &[usize]) -> Result<(), SeqError> {
    if walk.is_empty() {
        return Err(SeqError::Precondition(
            "walk must contain at least one vertex".into(),
        ));
    }
    if let Some(&v) = walk.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(SeqError::Precondition(format!("vertex {v} out of range")));
    }
    if let Some(w) = walk.windows(2).find(|w| !g.adjacent(w[0], w[1])) {
        return Err(SeqError::Precondition(format!(
            "{} - {} is not an edge",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Pads a walk to exactly `target` edges keeping its endpoints.
///
/// An odd surplus is absorbed by replacing the last edge `a - b` with
/// `a - ab - b` when both edges exist (in a generating graph,
/// `<a, ab> = <a, b> = <ab, b>`), otherwise by inserting the shortest odd
/// closed walk at the endpoint. Any even remainder bounces on the last edge.
pub fn pad_walk(
    g: &CoordinateGraph,
    walk: &[usize],
    target: usize,
) -> Result<Vec<usize>, SeqError> {
    check_walk(g, walk)?;
    let length = walk.len() - 1;
    let fail = || SeqError::Padding {
        coordinate: 0,
        length,
        target,
    };
    if target < length {
        return Err(fail());
    }
    let mut out = walk.to_vec();
    let mut surplus = target - length;
    if surplus % 2 == 1 {
        let end = *out.last().unwrap();
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            if let Some(ab) = g.triangle_apex(a, end) {
                out.insert(out.len() - 1, ab);
                surplus -= 1;
            }
        } else if surplus >= 3 {
            if let Some((b, ab)) = g
                .neighbors(end)
                .into_iter()
                .find_map(|b| g.triangle_apex(end, b).map(|ab| (b, ab)))
            {
                out.extend([ab, b, end]);
                surplus -= 3;
            }
        }
        if surplus % 2 == 1 {
            let cycle = g.odd_closed_walk(end).ok_or_else(fail)?;
            let extra = cycle.len() - 1;
            if extra > surplus {
                return Err(fail());
            }
            out.extend_from_slice(&cycle[1..]);
            surplus -= extra;
        }
    }
    if surplus > 0 {
        let end = *out.last().unwrap();
        let other = if out.len() >= 2 {
            out[out.len() - 2]
        } else {
            *g.neighbors(end).first().ok_or_else(fail)?
        };
        for _ in 0..surplus / 2 {
            out.extend([other, end]);
        }
    }
    debug_assert_eq!(out.len(), target + 1);
    Ok(out)
}

/// Pads every coordinate walk to `target` edges and zips them into a product
/// path, then verifies each step with exception prefix `0`.
pub fn stitch(
    f: &CoordinateFamily,
    walks: &[Vec<usize>],
    target: usize,
) -> Result<Vec<SeqElement>, SeqError> {
    if walks.len() != f.horizon() {
        return Err(SeqError::Precondition(format!(
            "{} walks for horizon {}",
            walks.len(),
            f.horizon()
        )));
    }
    let padded: Vec<Vec<usize>> = walks
        .par_iter()
        .zip(&f.coords)
        .enumerate()
        .map(|(n, (w, g))| {
            pad_walk(g, w, target).map_err(|e| match e {
                SeqError::Padding { length, target, .. } => SeqError::Padding {
                    coordinate: n,
                    length,
                    target,
                },
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    let path: Vec<SeqElement> = (0..=target)
        .map(|i| SeqElement::new(padded.iter().map(|w| w[i]).collect()))
        .collect();
    for step in path.windows(2) {
        if !seq_adjacent(f, &step[0], &step[1], 0)? {
            return Err(SeqError::Precondition(
                "stitched step is not an edge".into(),
            ));
        }
    }
    Ok(path)
}

/// Largest coordinate distance between two product elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBound {
    /// `None` when some shared coordinate puts the two in different
    /// components.
    pub bound: Option<usize>,
    /// The bound exceeds the threshold (or is infinite): no product path of
    /// length at most the threshold exists within the horizon.
    pub divergent: bool,
    /// First coordinate at which the running maximum exceeds the threshold.
    pub first_exceeding: Option<usize>,
    pub per_coordinate: Vec<Option<usize>>,
}

/// Maximum over coordinates where both are non-isolated of the coordinate
/// distance, compared with `threshold`.
pub fn component_criterion(
    f: &CoordinateFamily,
    x: &SeqElement,
    y: &SeqElement,
    threshold: usize,
) -> Result<ComponentBound, SeqError> {
    f.check_element(x)?;
    f.check_element(y)?;
    let per_coordinate: Vec<Option<usize>> = f
        .coords
        .par_iter()
        .enumerate()
        .map(|(n, g)| {
            let (a, b) = (x.coords[n], y.coords[n]);
            if a == b {
                Some(0)
            } else if g.is_isolated(a) || g.is_isolated(b) {
                None
            } else {
                g.distance(a, b)
            }
        })
        .collect();
    let shared = |n: usize| {
        let (a, b) = (x.coords[n], y.coords[n]);
        a == b || !(f.coords[n].is_isolated(a) || f.coords[n].is_isolated(b))
    };
    let mut bound = Some(0usize);
    let mut first_exceeding = None;
    for (n, d) in per_coordinate.iter().enumerate() {
        if !shared(n) {
            continue;
        }
        bound = match (bound, d) {
            (Some(b), Some(d)) => Some(b.max(*d)),
            _ => None,
        };
        if first_exceeding.is_none() && bound.is_none_or(|b| b > threshold) {
            first_exceeding = Some(n);
        }
    }
    Ok(ComponentBound {
        bound,
        divergent: first_exceeding.is_some(),
        first_exceeding,
        per_coordinate,
    })
}

/// Smallest non-isolated vertex at each coordinate.
pub fn base_point(f: &CoordinateFamily) -> Result<SeqElement, SeqError> {
    let coords = f
        .coords
        .iter()
        .enumerate()
        .map(|(n, g)| {
            (0..g.vertex_count())
                .find(|&v| !g.is_isolated(v))
                .ok_or_else(|| SeqError::Precondition(format!("coordinate {n} has no edges")))
        })
        .collect::<Result<_, _>>()?;
    Ok(SeqElement::new(coords))
}

/// At each coordinate `n`, the smallest vertex at distance `1 + floor(n / tau)`
/// from `x_n`.
pub fn tau_element(f: &CoordinateFamily, x: &SeqElement, tau: f64) -> Result<SeqElement, SeqError> {
    let coords = f
        .coords
        .iter()
        .enumerate()
        .map(|(n, g)| {
            let want = 1 + (n as f64 / tau).floor() as usize;
            let found = match g {
                CoordinateGraph::Path { len } => {
                    (x.coords[n] + want <= *len).then_some(x.coords[n] + want)
                }
                _ => g.bfs(x.coords[n]).iter().position(|&d| d == want),
            };
            found.ok_or_else(|| {
                SeqError::Precondition(format!("coordinate {n} has no vertex at distance {want}"))
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(SeqElement::new(coords))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairSeparation {
    pub tau1: f64,
    pub tau2: f64,
    /// First coordinate where the two elements are farther apart than the
    /// threshold.
    pub coordinate: usize,
    pub gap: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub family: Vec<String>,
    pub taus: Vec<f64>,
    pub threshold: usize,
    pub elements: Vec<SeqElement>,
    pub pairs: Vec<PairSeparation>,
}

/// Builds `y_tau` for each `tau` and certifies, for every pair, a coordinate
/// at which their distance exceeds `threshold`.
pub fn separation_demo(
    f: &CoordinateFamily,
    taus: &[f64],
    threshold: usize,
) -> Result<SeparationReport, SeqError> {
    if let Some(t) = taus.iter().find(|t| !t.is_finite() || **t <= 1.0) {
        return Err(SeqError::Precondition(format!(
            "tau {t} must be a finite number above 1"
        )));
    }
    let mut sorted = taus.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(SeqError::Precondition(
            "taus must be pairwise distinct".into(),
        ));
    }
    let diameters: Vec<Option<usize>> =
        f.coords.par_iter().map(CoordinateGraph::diameter).collect();
    if diameters.iter().any(Option::is_none) {
        return Err(SeqError::Precondition(
            "every coordinate needs a connected, nonempty Δ".into(),
        ));
    }
    if diameters.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SeqError::Precondition(
            "coordinate diameters must be strictly increasing".into(),
        ));
    }
    let x = base_point(f)?;
    let elements: Vec<SeqElement> = sorted
        .iter()
        .map(|&t| tau_element(f, &x, t))
        .collect::<Result<_, _>>()?;
    let mut pairs = Vec::new();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let gaps: Vec<usize> = (0..f.horizon())
                .map(|n| {
                    f.coords[n]
                        .distance(elements[i].coords[n], elements[j].coords[n])
                        .unwrap_or(usize::MAX)
                })
                .collect();
            match gaps.iter().position(|&g| g > threshold) {
                Some(n) => pairs.push(PairSeparation {
                    tau1: sorted[i],
                    tau2: sorted[j],
                    coordinate: n,
                    gap: gaps[n],
                }),
                None => {
                    return Err(SeqError::HorizonTooSmall {
                        tau1: sorted[i],
                        tau2: sorted[j],
                        threshold,
                        max_gap: gaps.into_iter().max().unwrap_or(0),
                    })
                }
            }
        }
    }
    Ok(SeparationReport {
        family: f.describe(),
        taus: sorted,
        threshold,
        elements,
        pairs,
    })
}

/// A shortest walk from `a` to `b`, if `b` is reachable.
pub fn shortest_walk(g: &CoordinateGraph, a: usize, b: usize) -> Option<Vec<usize>> {
    let dist = g.bfs(b);
    if dist[a] == usize::MAX {
        return None;
    }
    let mut walk = vec![a];
    let mut cur = a;
    while cur != b {
        cur = g
            .neighbors(cur)
            .into_iter()
            .find(|&v| dist[v] + 1 == dist[cur])
            .expect("distances decrease");
        walk.push(cur);
    }
    Some(walk)
}

/// Looks up a group element by name in a group-mode coordinate.
pub fn vertex(g: &CoordinateGraph, name: &str) -> Option<ElementId> {
    match g {
        CoordinateGraph::Group { group, .. } => group.element(name),
        _ => name.parse().ok().filter(|&v| v < g.vertex_count()),
    }
}
