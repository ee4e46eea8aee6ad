//! Property-based invariants: whatever the draws, every constructor either
//! returns an object satisfying its type's invariants or refuses with a
//! typed error — never a silently broken value.

use proptest::prelude::*;

use rqobj::rng::{RandomSource, RngAlgorithm};
use rqobj::simplex::{
    pv_from_devroye_draws, pv_from_iid_draws, pv_from_kraemer_draws, pv_from_norm_draws,
    pv_from_trig_draws, pv_from_zhsl_draws, sample_rpv, ProbabilityVector, RpvMethod,
};
use rqobj::states::{sample_rdm, sample_rsv, RdmMethod, RsvMethod};
use rqobj::unitary::{sample_ru, RuMethod};

/// Uniform draws strictly inside (0, 1) — the generic input of the simplex
/// constructions.
fn unit_draws(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, len)
}

fn assert_simplex(p: &ProbabilityVector) {
    let sum: f64 = p.components().iter().sum();
    assert!((sum - 1.0).abs() <= 1e-12, "sum deviates: {sum}");
    for &c in p.components() {
        assert!(c >= 0.0, "negative component: {c}");
    }
}

proptest! {
    #[test]
    fn trig_draws_always_land_on_the_simplex(r in unit_draws(7)) {
        assert_simplex(&pv_from_trig_draws(&r).unwrap());
    }

    #[test]
    fn norm_draws_always_land_on_the_simplex(u in unit_draws(6)) {
        assert_simplex(&pv_from_norm_draws(&u).unwrap());
    }

    #[test]
    fn zhsl_draws_always_land_on_the_simplex(r in unit_draws(5)) {
        assert_simplex(&pv_from_zhsl_draws(&r).unwrap());
    }

    #[test]
    fn iid_draws_always_land_on_the_simplex(r in prop::collection::vec(0.001f64..1.0, 6)) {
        assert_simplex(&pv_from_iid_draws(&r).unwrap());
    }

    #[test]
    fn devroye_draws_always_land_on_the_simplex(
        e in prop::collection::vec(0.001f64..10.0, 6)
    ) {
        assert_simplex(&pv_from_devroye_draws(&e).unwrap());
    }

    #[test]
    fn kraemer_draws_always_land_on_the_simplex(r in unit_draws(5)) {
        assert_simplex(&pv_from_kraemer_draws(&r).unwrap());
    }

    /// Any (algorithm, seed, dimension, method) combination yields a valid
    /// probability vector through the seeded sampler.
    #[test]
    fn sampled_vectors_are_valid_for_any_seed(
        seed in any::<u64>(),
        d in 1usize..12,
        method_index in 0usize..6,
        gnu in any::<bool>(),
    ) {
        let algorithm = if gnu { RngAlgorithm::Gnu } else { RngAlgorithm::Mt };
        let mut source = RandomSource::new(algorithm, seed);
        let p = sample_rpv(&mut source, d, RpvMethod::ALL[method_index]).unwrap();
        assert_simplex(&p);
    }

    /// Unitarity holds for every seed, not just the tested ones.
    #[test]
    fn sampled_unitaries_satisfy_the_gram_identity(
        seed in any::<u64>(),
        d in 1usize..9,
        method_index in 0usize..3,
    ) {
        let method = [RuMethod::Gso, RuMethod::Hhr, RuMethod::Hurwitz][method_index];
        let mut source = RandomSource::new(RngAlgorithm::Mt, seed);
        let u = sample_ru(&mut source, d, method).unwrap();
        let gram = u.matrix().adjoint().mul(u.matrix()).unwrap();
        let dev = gram.max_abs_diff(&rqobj::linalg::ComplexMatrix::identity(d)).unwrap();
        assert!(dev <= 1e-10, "unitarity residual {dev}");
    }

    /// Sampled pure states are normalized for every seed and method.
    #[test]
    fn sampled_states_are_normalized(
        seed in any::<u64>(),
        d in 1usize..10,
        method_index in 0usize..3,
    ) {
        let method = [RsvMethod::Gauss, RsvMethod::Std, RsvMethod::Ru][method_index];
        let mut source = RandomSource::new(RngAlgorithm::Gnu, seed);
        let psi = sample_rsv(&mut source, d, method).unwrap();
        let norm: f64 = psi.amplitudes().iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() <= 1e-12, "norm deviates: {norm}");
    }

    /// Sampled density matrices satisfy all three defining properties (trace
    /// one, Hermitian, positive semidefinite to tolerance) plus the purity
    /// bounds, for every seed.
    #[test]
    fn sampled_density_matrices_are_states(
        seed in any::<u64>(),
        d in 1usize..7,
        method_index in 0usize..4,
    ) {
        let method = [
            RdmMethod::Std,
            RdmMethod::Ginibre,
            RdmMethod::Bures,
            RdmMethod::Ptrace,
        ][method_index];
        let mut source = RandomSource::new(RngAlgorithm::Mt, seed);
        let rho = sample_rdm(&mut source, d, method).unwrap();
        let trace = rho.matrix().trace().unwrap();
        assert!((trace.re - 1.0).abs() <= 1e-12 && trace.im.abs() <= 1e-12);
        assert!(rho.matrix().hermitian_residual().unwrap() <= 1e-12);
        assert!(rho.min_eigenvalue().unwrap() >= -1e-10);
        let purity = rho.purity();
        assert!(purity >= 1.0 / d as f64 - 1e-12 && purity <= 1.0 + 1e-12);
    }

    /// Rebuilding a source from the same seed replays the identical stream
    /// regardless of how much of it was consumed first.
    #[test]
    fn reseeding_replays_the_stream(seed in any::<u64>(), skip in 0usize..200) {
        for algorithm in [RngAlgorithm::Mt, RngAlgorithm::Gnu] {
            let mut a = RandomSource::new(algorithm, seed);
            for _ in 0..skip {
                a.next_u32();
            }
            let mut b = RandomSource::new(algorithm, seed);
            for _ in 0..skip {
                b.next_u32();
            }
            for _ in 0..16 {
                assert_eq!(a.next_u32(), b.next_u32());
            }
        }
    }

    /// u01 draws always lie in [0, 1).
    #[test]
    fn u01_stays_in_the_half_open_interval(seed in any::<u64>()) {
        for algorithm in [RngAlgorithm::Mt, RngAlgorithm::Gnu] {
            let mut source = RandomSource::new(algorithm, seed);
            for _ in 0..64 {
                let u = source.next_u01();
                assert!((0.0..1.0).contains(&u), "u01 out of range: {u}");
            }
        }
    }

    /// Shuffling preserves the multiset of elements.
    #[test]
    fn shuffle_is_a_permutation(seed in any::<u64>(), len in 0usize..20) {
        let mut source = RandomSource::new(RngAlgorithm::Mt, seed);
        let mut items: Vec<usize> = (0..len).collect();
        source.shuffle(&mut items);
        let mut sorted = items.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..len).collect::<Vec<_>>());
    }
}
