//! The verification suite: a fixed corpus of groups and one runner per
//! property. Shared by the acceptance tests and `virtgraph verify`.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::construction::{self, Variant};
use crate::graphs::{self, build_graph, graph_report, Diameter, GraphKind, Oracle};
use crate::group::{ElementId, FiniteGroup};
use crate::mingen::{self, tarski_table};
use crate::seqprod::{self, CoordinateFamily, CoordinateGraph, SeqError};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    /// Failures and notable facts, in the order found.
    pub detail: Vec<String>,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            pass: true,
            detail: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            self.detail.push(format!("FAILED: {}", what()));
        }
    }

    fn note(&mut self, what: String) {
        self.detail.push(what);
    }

    /// One line, e.g. `[PASS] 4 tarski-interpolation`.
    pub fn summary(&self) -> String {
        format!(
            "[{}] {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name
        )
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "isolated-vertex-trichotomy"),
    (2, "virt-diameter-bound"),
    (3, "independence-graph"),
    (4, "tarski-interpolation"),
    (5, "soluble-generating-graph"),
    (6, "criterion-equivalence"),
    (7, "component-census"),
    (8, "generator-pair-openness"),
    (9, "product-paths-and-separation"),
    (10, "engine-soundness"),
];

pub fn corpus_specs() -> Vec<String> {
    let mut specs = Vec::new();
    specs.extend((1..=32).map(|n| format!("C:{n}")));
    specs.extend((1..=12).map(|n| format!("D:{n}")));
    specs.extend((3..=5).map(|k| format!("Q:{}", 1 << k)));
    specs.extend((1..=6).map(|n| format!("Dic:{n}")));
    specs.extend((1..=5).map(|n| format!("S:{n}")));
    specs.extend((1..=5).map(|n| format!("A:{n}")));
    specs.extend(["SL2:4", "SL2:8", "C:2*C:2*C:2", "C:3*Q:8"].map(String::from));
    specs
}

/// The corpus, built once with default caps.
pub fn corpus() -> &'static [Arc<FiniteGroup>] {
    static CORPUS: OnceLock<Vec<Arc<FiniteGroup>>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        corpus_specs()
            .par_iter()
            .map(|s| Arc::new(FiniteGroup::from_spec(s).expect("corpus groups build")))
            .collect()
    })
}

fn named(spec: &str) -> &'static FiniteGroup {
    corpus()
        .iter()
        .find(|g| g.label() == spec)
        .expect("group is in the corpus")
}

pub fn run(id: u8) -> CriterionResult {
    match id {
        1 => isolated_trichotomy(),
        2 => virt_diameter(),
        3 => independence_graph(),
        4 => tarski(),
        5 => soluble_generating(),
        6 => criterion_equivalence(),
        7 => census(),
        8 => generator_pairs(),
        9 => product_paths(),
        10 => engine_soundness(),
        _ => panic!("no criterion {id}"),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run(id)).collect()
}

fn isolated_trichotomy() -> CriterionResult {
    let mut r = CriterionResult::new(1, CRITERIA[0].1);
    let verdicts: Vec<_> = corpus()
        .par_iter()
        .map(|g| graphs::check_virt_isolated(g))
        .collect();
    for v in verdicts {
        match v {
            Ok(v) => r.require(v.pass, || {
                format!("{}: {}", v.group, v.witnesses.join("; "))
            }),
            Err(e) => r.require(false, || e.to_string()),
        }
    }
    r
}

/// `<a^2, b>` presentation for the order-12 dicyclic group, found by search.
fn dic3_generators(g: &FiniteGroup) -> Option<(ElementId, ElementId)> {
    g.elements()
        .filter(|&a| g.element_order(a) == 4)
        .find_map(|a| {
            g.elements()
                .filter(|&b| g.element_order(b) == 3)
                .find(|&b| g.conjugate(b, a) == g.inv(b) && g.generates(&[a, b]))
                .map(|b| (a, b))
        })
}

fn virt_diameter() -> CriterionResult {
    let mut r = CriterionResult::new(2, CRITERIA[1].1);
    let reports: Vec<_> = corpus()
        .par_iter()
        .map(|g| graph_report(g, GraphKind::VirtIndependence))
        .collect();
    let mut max_seen = 0;
    for rep in reports {
        let rep = match rep {
            Ok(rep) => rep,
            Err(e) => {
                r.require(false, || e.to_string());
                continue;
            }
        };
        match rep.diameter {
            Diameter::Empty => {}
            Diameter::Finite(d) => {
                max_seen = max_seen.max(d);
                r.require(d <= 3, || format!("{}: diameter {d}", rep.group));
            }
            Diameter::Disconnected => r.require(false, || format!("{}: disconnected", rep.group)),
        }
    }
    r.note(format!("largest diameter {max_seen}"));

    let g = named("Dic:3");
    let rep = graph_report(g, GraphKind::VirtIndependence).expect("small group");
    r.require(rep.diameter == Diameter::Finite(3), || {
        format!("Dic:3 diameter {:?}", rep.diameter)
    });
    match dic3_generators(g) {
        Some((a, b)) => {
            let graph = build_graph(g, GraphKind::VirtIndependence).expect("small group");
            let y = g.mul(g.pow(a, 2), b);
            let mut expected: Vec<ElementId> = [1, 3]
                .iter()
                .flat_map(|&i| (0..3).map(move |j| (i, j)))
                .map(|(i, j)| g.mul(g.pow(a, i), g.pow(b, j)))
                .collect();
            expected.sort_unstable();
            r.require(graph.neighbors[y] == expected, || {
                "Dic:3 neighbors of a^2 b differ from {a^i b^j : i odd}".into()
            });
        }
        None => r.require(false, || "Dic:3 presentation not found".into()),
    }
    r
}

fn independence_graph() -> CriterionResult {
    let mut r = CriterionResult::new(3, CRITERIA[2].1);
    let groups: Vec<_> = corpus().iter().filter(|g| g.order() <= 128).collect();
    let results: Vec<_> = groups
        .par_iter()
        .map(|g| {
            let verdict = graphs::check_independence_isolated(g)?;
            let report = graph_report(g, GraphKind::Independence)?;
            Ok::<_, graphs::GraphError>((verdict, report))
        })
        .collect();
    for res in results {
        match res {
            Ok((v, rep)) => {
                r.require(v.pass, || {
                    format!("{}: {}", v.group, v.witnesses.join("; "))
                });
                r.require(rep.components.len() <= 1, || {
                    format!("{}: {} components", rep.group, rep.components.len())
                });
            }
            Err(e) => r.require(false, || e.to_string()),
        }
    }
    r.note(format!("{} groups of order at most 128", groups.len()));
    r
}

fn tarski() -> CriterionResult {
    let mut r = CriterionResult::new(4, CRITERIA[3].1);
    let groups: Vec<_> = corpus().iter().filter(|g| g.order() <= 256).collect();
    let tables: Vec<_> = groups.par_iter().map(|g| tarski_table(g)).collect();
    for (g, t) in groups.iter().zip(tables) {
        match t {
            Ok(t) => {
                let sizes: Vec<usize> = t.witnesses.keys().copied().collect();
                r.require(sizes == (t.d..=t.m).collect::<Vec<_>>(), || {
                    format!("{}: sizes {sizes:?}", g.label())
                });
                for w in t.witnesses.values() {
                    r.require(mingen::is_irredundant_generating(g, w.members()), || {
                        format!(
                            "{}: witness {:?} is not irredundant",
                            g.label(),
                            w.describe(g)
                        )
                    });
                }
                let expected = match g.label() {
                    "S:4" => Some(vec![2, 3]),
                    "Q:8" => Some(vec![2]),
                    "C:2*C:2*C:2" => Some(vec![3]),
                    _ => None,
                };
                if let Some(e) = expected {
                    r.require(sizes == e, || {
                        format!("{}: sizes {sizes:?}, expected {e:?}", g.label())
                    });
                }
            }
            Err(e) => r.require(false, || format!("{}: {e}", g.label())),
        }
    }
    r.note(format!("{} groups of order at most 256", groups.len()));
    r
}

fn soluble_generating() -> CriterionResult {
    let mut r = CriterionResult::new(5, CRITERIA[4].1);
    let groups: Vec<_> = corpus().iter().filter(|g| g.is_soluble()).collect();
    let reports: Vec<_> = groups
        .par_iter()
        .map(|g| graph_report(g, GraphKind::Generating))
        .collect();
    let mut empty = Vec::new();
    for rep in reports {
        match rep {
            Ok(rep) => match rep.diameter {
                Diameter::Empty => empty.push(rep.group),
                Diameter::Finite(d) => r.require(d <= 3, || format!("{}: diameter {d}", rep.group)),
                Diameter::Disconnected => {
                    r.require(false, || format!("{}: disconnected", rep.group))
                }
            },
            Err(e) => r.require(false, || e.to_string()),
        }
    }
    r.note(format!(
        "{} soluble groups; no edges (not 2-generated or order <= 2): {}",
        groups.len(),
        empty.join(", ")
    ));
    r
}

fn criterion_equivalence() -> CriterionResult {
    let mut r = CriterionResult::new(6, CRITERIA[5].1);
    for t in 1..=4usize {
        let size = 1u32 << (2 * t);
        let mismatches: Vec<(u32, u32)> = (0..size)
            .into_par_iter()
            .flat_map_iter(|a| (0..size).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let (h1, h2) = (construction::Bits::new(t, a), construction::Bits::new(t, b));
                construction::matrix_criterion(h1, h2, t)
                    == construction::system_solvable(h1, h2, t).expect("t within bounds")
            })
            .collect();
        r.require(mismatches.is_empty(), || {
            format!(
                "t = {t}: {} mismatches, first {:?}",
                mismatches.len(),
                mismatches[0]
            )
        });
        r.note(format!("t = {t}: {} pairs", (size as u64) * (size as u64)));
    }
    r
}

fn census() -> CriterionResult {
    let mut r = CriterionResult::new(7, CRITERIA[6].1);
    for t in 1..=3 {
        for seed in 1..=3 {
            match construction::component_census(t, 100, seed, Variant::Corrected) {
                Ok(c) => {
                    r.require(c.pass && c.components == t, || {
                        format!(
                            "t = {t}, seed {seed}: {} components, {} cross-block violations, {} failed common neighbors",
                            c.components, c.cross_block_violations, c.common_neighbor_failures
                        )
                    });
                    if seed == 1 {
                        r.note(format!(
                            "t = {t}: {} vertices, {} same-block pairs joined, block index {}",
                            c.block_sizes.iter().sum::<usize>(),
                            c.common_neighbor_successes,
                            c.block_index
                        ));
                    }
                }
                Err(e) => r.require(false, || format!("t = {t}, seed {seed}: {e}")),
            }
        }
    }
    r
}

fn generator_pairs() -> CriterionResult {
    let mut r = CriterionResult::new(8, CRITERIA[7].1);
    for t in 1..=3 {
        match construction::ro1ro2_verify(t, Variant::Corrected) {
            Ok(rep) => {
                r.require(rep.symbolic_pass, || {
                    format!("corrected t = {t}: a determinant vanishes")
                });
                r.require(rep.finite_pass, || {
                    format!("corrected t = {t}: a finite quotient misses part of N")
                });
            }
            Err(e) => r.require(false, || e.to_string()),
        }
        match construction::ro1ro2_verify(t, Variant::Literal) {
            Ok(rep) => {
                r.require(rep.entries.iter().all(|e| e.determinant == 0), || {
                    format!("literal variant t = {t}: some determinant is nonzero")
                });
                r.require(
                    rep.entries.iter().all(|e| {
                        e.finite
                            .iter()
                            .all(|f| !f.contains_n && f.second_coordinate_zero)
                    }),
                    || format!("literal variant t = {t}: closure escapes the z2 = 0 plane"),
                );
            }
            Err(e) => r.require(false, || e.to_string()),
        }
    }
    r
}

fn product_paths() -> CriterionResult {
    let mut r = CriterionResult::new(9, CRITERIA[8].1);
    let coords: Vec<CoordinateGraph> = ["S:3", "SL2:4"]
        .iter()
        .map(|s| {
            CoordinateGraph::group(
                Arc::new(FiniteGroup::from_spec(s).unwrap()),
                GraphKind::Generating,
            )
            .unwrap()
        })
        .collect();
    let family = CoordinateFamily::new(coords).unwrap();
    let x = seqprod::base_point(&family).unwrap();
    let mut checked = 0;
    for k in 0..6 {
        // Endpoints: the k-th non-isolated vertex at each coordinate.
        let y: Vec<usize> = family
            .coords
            .iter()
            .map(|c| {
                let active: Vec<usize> = (0..c.vertex_count())
                    .filter(|&v| !c.is_isolated(v))
                    .collect();
                active[(k * 7) % active.len()]
            })
            .collect();
        let walks: Vec<Vec<usize>> = family
            .coords
            .iter()
            .enumerate()
            .map(|(n, c)| seqprod::shortest_walk(c, x.coords[n], y[n]).unwrap())
            .collect();
        let longest = walks.iter().map(|w| w.len() - 1).max().unwrap();
        for target in longest.max(3)..longest.max(3) + 3 {
            match seqprod::stitch(&family, &walks, target) {
                Ok(path) => {
                    let exact = path.len() == target + 1
                        && path[0] == x
                        && path[target].coords == y
                        && path
                            .windows(2)
                            .all(|s| seqprod::seq_adjacent(&family, &s[0], &s[1], 0).unwrap());
                    r.require(exact, || {
                        format!("stitched path to {y:?} of length {target} is invalid")
                    });
                    checked += 1;
                }
                Err(e) => r.require(false, || format!("stitch to {y:?} at length {target}: {e}")),
            }
        }
    }
    r.note(format!(
        "{checked} stitched paths validated on S:3 x SL2:4 generating graphs"
    ));

    let paths = CoordinateFamily::doubling_paths(12);
    match seqprod::separation_demo(&paths, &[1.5, 2.0, 3.0], 4) {
        Ok(rep) => {
            r.require(rep.pairs.len() == 3, || {
                format!("{} of 3 pairs certified", rep.pairs.len())
            });
            for p in &rep.pairs {
                r.note(format!(
                    "taus {} and {} separated at coordinate {} (gap {})",
                    p.tau1, p.tau2, p.coordinate, p.gap
                ));
            }
        }
        Err(e @ SeqError::HorizonTooSmall { .. }) => {
            r.require(false, || format!("separation on P_(2^n), n <= 12: {e}"))
        }
        Err(e) => r.require(false, || e.to_string()),
    }
    r
}

fn engine_soundness() -> CriterionResult {
    let mut r = CriterionResult::new(10, CRITERIA[9].1);
    let failures: Vec<String> = corpus()
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            let name = g.label();
            if let Err(e) = g.check_axioms() {
                out.push(format!("{name}: axioms: {e}"));
            }
            if let Some(x) = g.elements().find(|&x| g.order() % g.element_order(x) != 0) {
                out.push(format!(
                    "{name}: element order of {} does not divide {}",
                    g.describe(x),
                    g.order()
                ));
            }
            match g.lattice() {
                Ok(lat) => {
                    if let Some(h) = lat.subgroups().iter().find(|h| g.order() % h.len() != 0) {
                        out.push(format!(
                            "{name}: subgroup of order {} does not divide {}",
                            h.len(),
                            g.order()
                        ));
                    }
                    if g.order() <= 64 {
                        out.extend(frattini_equivalence(g, &lat));
                    }
                }
                Err(e) => out.push(format!("{name}: lattice: {e}")),
            }
            for kind in GraphKind::ALL {
                if kind == GraphKind::Independence && g.order() > g.caps().independence {
                    continue;
                }
                match Oracle::new(g, kind) {
                    Ok(o) => {
                        let asym = g
                            .elements()
                            .flat_map(|x| g.elements().map(move |y| (x, y)))
                            .find(|&(x, y)| x < y && o.adjacent(x, y) != o.adjacent(y, x));
                        if let Some((x, y)) = asym {
                            out.push(format!(
                                "{name}: {kind} oracle asymmetric at {}, {}",
                                g.describe(x),
                                g.describe(y)
                            ));
                        }
                    }
                    Err(e) => out.push(format!("{name}: {kind}: {e}")),
                }
            }
            out
        })
        .collect();
    for f in failures {
        r.require(false, || f);
    }
    r.note(format!("{} groups checked", corpus().len()));
    r
}

/// `x` lies in the Frattini subgroup iff it is a non-generator: no proper
/// subgroup `H` has `<H, x> = G`. Checked against every subgroup by closure.
fn frattini_equivalence(g: &FiniteGroup, lat: &crate::group::Lattice) -> Vec<String> {
    let frattini = match g.frattini() {
        Ok(f) => f,
        Err(e) => return vec![e.to_string()],
    };
    let proper: Vec<Vec<ElementId>> = lat
        .subgroups()
        .iter()
        .filter(|h| !h.is_full())
        .map(|h| h.to_vec())
        .collect();
    g.elements()
        .filter_map(|x| {
            let non_generator = proper.iter().all(|h| {
                let mut set = h.clone();
                set.push(x);
                !g.generates(&set)
            });
            (non_generator != frattini.contains(x)).then(|| {
                format!(
                    "{}: Frattini membership of {} disagrees with non-generator test",
                    g.label(),
                    g.describe(x)
                )
            })
        })
        .collect()
}
