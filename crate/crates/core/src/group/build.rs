use std::sync::Arc;

use super::field::FieldGF2p;
use super::perm::Perm;
use super::rep::{self, CyclicRep, DicyclicRep, DihedralRep, MatrixRep, PermRep};
use super::{FiniteGroup, GroupError, GroupSpec};
use crate::caps::Caps;

/// Builds the group described by `spec`, refusing anything whose order
/// exceeds `caps.order`.
pub fn build_group(spec: &GroupSpec, caps: &Caps) -> Result<FiniteGroup, GroupError> {
    if let Some(order) = spec.expected_order() {
        if order > caps.order as u128 {
            return Err(GroupError::OrderCap {
                at_least: order,
                cap: caps.order,
            });
        }
    }
    let label = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => rep::realize(CyclicRep(*n), &[1 % n], label, caps),
        GroupSpec::Dihedral(n) => {
            rep::realize(DihedralRep(*n), &[(1 % n, false), (0, true)], label, caps)
        }
        GroupSpec::Dicyclic(m) => rep::realize(
            DicyclicRep(*m),
            &[(1 % (2 * m), false), (0, true)],
            label,
            caps,
        ),
        GroupSpec::Quaternion(k) => {
            let m = 1u32 << (k - 2);
            rep::realize(DicyclicRep(m), &[(1, false), (0, true)], label, caps)
        }
        GroupSpec::Symmetric(n) => {
            let n = *n as usize;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Perm::cycle(n, &[0, 1]));
                gens.push(Perm::cycle(n, &(0..n).collect::<Vec<_>>()));
            }
            rep::realize(PermRep(n), &gens, label, caps)
        }
        GroupSpec::Alternating(n) => {
            let n = *n as usize;
            let gens: Vec<Perm> = (2..n).map(|k| Perm::cycle(n, &[0, 1, k])).collect();
            rep::realize(PermRep(n), &gens, label, caps)
        }
        GroupSpec::Sl2(p) => {
            let field = FieldGF2p::new(*p)?;
            let a = field.generator();
            let a_inv = field.inv(a).unwrap();
            // Upper unitriangular, the Weyl element, and a diagonal torus
            // generator: together they generate SL(2, q).
            let gens = [[1, 1, 0, 1], [0, 1, 1, 0], [a, 0, 0, a_inv]];
            rep::realize(MatrixRep(field), &gens, label, caps)
        }
        GroupSpec::Product(a, b) => {
            let a = Arc::new(build_group(a, caps)?);
            let b = Arc::new(build_group(b, caps)?);
            FiniteGroup::direct_product(a, b, caps)
        }
        GroupSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let (degree, gens) = parse_generator_lines(&text)?;
            rep::realize(PermRep(degree), &gens, label, caps)
        }
    }
}

/// One generator per non-empty line in 1-based cycle notation; lines starting
/// with `#` are comments. Returns the degree and the generators.
pub(crate) fn parse_generator_lines(text: &str) -> Result<(usize, Vec<Perm>), GroupError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let degree = lines
        .iter()
        .map(|l| Perm::max_point(l))
        .max()
        .unwrap_or(0)
        .max(1);
    let gens = lines
        .iter()
        .map(|l| Perm::parse_cycles(l, degree))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((degree, gens))
}

impl FiniteGroup {
    /// Parses and builds with default caps.
    pub fn from_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
        build_group(&spec.parse()?, &Caps::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(spec: &str) -> usize {
        FiniteGroup::from_spec(spec).unwrap().order()
    }

    #[test]
    fn orders_of_named_groups() {
        assert_eq!(order("S:3"), 6);
        assert_eq!(order("S:1"), 1);
        assert_eq!(order("A:5"), 60);
        assert_eq!(order("D:1"), 2);
        assert_eq!(order("D:6"), 12);
        assert_eq!(order("Q:32"), 32);
        assert_eq!(order("Dic:3"), 12);
        assert_eq!(order("C:1"), 1);
        assert_eq!(order("C:2*C:2*C:2"), 8);
        assert_eq!(order("SL2:2"), 6);
        assert_eq!(order("SL2:4"), 60);
    }

    #[test]
    fn sl2_8_matches_determinant_count() {
        // Oracle: count 2x2 matrices over GF(8) with determinant 1 directly.
        let f = FieldGF2p::new(3).unwrap();
        let mut count = 0;
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        if f.add(f.mul(a, d), f.mul(b, c)) == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 504);
        let g = FiniteGroup::from_spec("SL2:8").unwrap();
        assert_eq!(g.order(), count);
        g.check_axioms().unwrap();
    }

    #[test]
    fn dic3_matches_presentation() {
        // <a, b | a^4, b^3, b^a = b^-1>
        let g = FiniteGroup::from_spec("Dic:3").unwrap();
        let found = g.elements().any(|a| {
            g.element_order(a) == 4
                && g.elements().any(|b| {
                    g.element_order(b) == 3 && g.conjugate(b, a) == g.inv(b) && g.generates(&[a, b])
                })
        });
        assert!(found);
    }

    #[test]
    fn order_cap_is_enforced() {
        let caps = Caps {
            order: 100,
            ..Default::default()
        };
        assert!(matches!(
            build_group(&"S:5".parse().unwrap(), &caps),
            Err(GroupError::OrderCap { .. })
        ));
        assert!(matches!(
            build_group(&"C:60*C:2".parse().unwrap(), &caps),
            Err(GroupError::OrderCap { .. })
        ));
    }

    #[test]
    fn untabulated_backend_agrees_with_table() {
        let small = Caps {
            table: 8,
            ..Default::default()
        };
        let g = build_group(&"S:4".parse().unwrap(), &small).unwrap();
        assert!(!g.is_tabulated());
        let h = FiniteGroup::from_spec("S:4").unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.describe(g.mul(a, b)), h.describe(h.mul(a, b)));
            }
        }
        g.check_axioms().unwrap();
    }

    #[test]
    fn permutation_file() {
        let dir = std::env::temp_dir().join(format!("virtgraph-perm-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("gens.txt");
        std::fs::write(&path, "# S4\n(1 2 3 4)\n\n(1 2)\n").unwrap();
        let g = build_group(&GroupSpec::File(path.clone()), &Caps::default()).unwrap();
        assert_eq!(g.order(), 24);
        std::fs::write(&path, "(1 2\n").unwrap();
        assert!(build_group(&GroupSpec::File(path), &Caps::default()).is_err());
        assert!(matches!(
            build_group(&GroupSpec::File(dir.join("missing.txt")), &Caps::default()),
            Err(GroupError::Io { .. })
        ));
    }
}
