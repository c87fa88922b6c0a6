use proptest::prelude::*;
use virtgraph::construction::{self, omega, GSym, HVec, Variant};

fn gsym(t: usize) -> impl Strategy<Value = GSym> {
    let width = omega(t).len();
    (
        prop::collection::vec(prop::array::uniform3(-6i64..=6), width),
        0u32..1 << (2 * t),
    )
        .prop_map(move |(nparts, h)| GSym {
            nparts,
            h: HVec::new(t, h),
        })
}

fn triple(t: usize) -> impl Strategy<Value = (GSym, GSym, GSym)> {
    (gsym(t), gsym(t), gsym(t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_laws((a, b, c) in (1usize..=3).prop_flat_map(triple)) {
        let t = a.t();
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
        prop_assert_eq!(GSym::identity(t).mul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.square(), a.mul(&a).unwrap());
        prop_assert!(a.square().h.is_zero());
        let comm = a.commutator(&b).unwrap();
        prop_assert!(comm.h.is_zero());
        prop_assert_eq!(comm, a.inv().mul(&b.inv()).unwrap().mul(&a).unwrap().mul(&b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Whenever the witness passes, every finite quotient at a prime not
    /// dividing the determinant contains the whole normal part.
    #[test]
    fn witness_is_sound_in_finite_quotients((a, b) in (1usize..=2).prop_flat_map(|t| (gsym(t), gsym(t)))) {
        let w = construction::openness_witness(&a, &b).unwrap();
        prop_assume!(w.pass);
        for (k, &det) in w.determinants.iter().enumerate() {
            for p in [3u64, 5, 7] {
                if det % p as i64 != 0 {
                    prop_assert!(construction::finite_quotient_generates(&a, &b, k, p).unwrap());
                }
            }
        }
    }
}

#[test]
fn witness_passes_occur() {
    // Guards the soundness property against vacuity.
    let s = construction::sigma(1, Variant::Corrected);
    assert!(construction::openness_witness(&s[0], &s[1]).unwrap().pass);
}

#[test]
fn sigma_pair_identities() {
    let s = construction::sigma(1, Variant::Literal);
    let om = omega(1);
    let k = om.iter().position(|w| w.to_vec() == [1, 1]).unwrap();
    assert_eq!(s[0].commutator(&s[1]).unwrap().nparts[k], [0, 0, 4]);
    let k1 = om.iter().position(|w| w.get(1) == 1).unwrap();
    assert_eq!(s[0].square().nparts[k1], [2, 0, 0]);
}

#[test]
fn criterion_agrees_with_linear_system_for_small_t() {
    for t in 1..=3 {
        for a in 0..1u32 << (2 * t) {
            for b in 0..1u32 << (2 * t) {
                let (h1, h2) = (HVec::new(t, a), HVec::new(t, b));
                assert_eq!(
                    construction::matrix_criterion(h1, h2, t),
                    !construction::system_solvable(h1, h2, t).unwrap()
                );
            }
        }
    }
}

#[test]
fn common_neighbors_are_adjacent_to_both() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for t in 1..=3 {
        for block in 1..=t {
            for _ in 0..20 {
                let x = construction::sample_block_element(t, block, &mut rng);
                let y = construction::sample_block_element(t, block, &mut rng);
                let z = construction::common_neighbor(&x, &y).unwrap();
                assert!(construction::openness_witness(&x, &z).unwrap().pass);
                assert!(construction::openness_witness(&y, &z).unwrap().pass);
            }
        }
    }
}

#[test]
fn census_finds_t_components() {
    for t in 1..=3 {
        let c = construction::component_census(t, 30, 11, Variant::Corrected).unwrap();
        assert!(c.pass);
        assert_eq!(c.components, t);
        assert_eq!(c.block_index, 1 << (2 * t - 2));
    }
}
