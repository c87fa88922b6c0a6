//! Size limits shared by every module.
//!
//! All limits can be overridden through environment variables, which is how the
//! command-line tool exposes them:
//!
//! | variable                         | default   |
//! |----------------------------------|-----------|
//! | `VIRTGRAPH_ORDER_CAP`            | 200 000   |
//! | `VIRTGRAPH_TABLE_CAP`            | 4 096     |
//! | `VIRTGRAPH_LATTICE_CAP`          | 2 000     |
//! | `VIRTGRAPH_INDEPENDENCE_CAP`     | 256       |
//! | `VIRTGRAPH_SEARCH_CAP`           | 512       |
//! | `VIRTGRAPH_RANK_CAP`             | 10 000    |
//! | `VIRTGRAPH_GRAPH_CAP`            | 4 096     |
//! | `VIRTGRAPH_GASCHUTZ_SPACE_CAP`   | 10 000 000|

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest group `build_group` will enumerate.
    pub order: usize,
    /// Groups up to this order get a full multiplication table.
    pub table: usize,
    /// Largest group whose subgroup lattice is enumerated.
    pub lattice: usize,
    /// Largest group for independence-graph adjacency.
    pub independence: usize,
    /// Largest group for exhaustive irredundant-set enumeration.
    pub search: usize,
    /// Largest group accepted by `rank_d`.
    pub rank: usize,
    /// Largest group for generating / virt-independence graph reports.
    pub graph: usize,
    /// Largest search space `|N|^k` for the Gaschütz lifting search.
    pub gaschutz_space: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            order: 200_000,
            table: 4_096,
            lattice: 2_000,
            independence: 256,
            search: 512,
            rank: 10_000,
            graph: 4_096,
            gaschutz_space: 10_000_000,
        }
    }
}

impl Caps {
    /// Defaults, overridden by any `VIRTGRAPH_*_CAP` variable that parses.
    pub fn from_env() -> Self {
        fn read<T: std::str::FromStr>(name: &str, slot: &mut T) {
            if let Some(v) = std::env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        }
        let mut caps = Self::default();
        read("VIRTGRAPH_ORDER_CAP", &mut caps.order);
        read("VIRTGRAPH_TABLE_CAP", &mut caps.table);
        read("VIRTGRAPH_LATTICE_CAP", &mut caps.lattice);
        read("VIRTGRAPH_INDEPENDENCE_CAP", &mut caps.independence);
        read("VIRTGRAPH_SEARCH_CAP", &mut caps.search);
        read("VIRTGRAPH_RANK_CAP", &mut caps.rank);
        read("VIRTGRAPH_GRAPH_CAP", &mut caps.graph);
        read("VIRTGRAPH_GASCHUTZ_SPACE_CAP", &mut caps.gaschutz_space);
        caps
    }
}
