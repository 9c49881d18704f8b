//! Cross-module invariants: algebraic properties of the numeric kernels,
//! spectrum-level facts about states, and soundness smoke tests for the
//! criteria. The full-size Monte Carlo ensembles live in the acceptance
//! suite; these runs use smaller counts and are meant to fail fast during
//! development.

use num_complex::Complex64;
use proptest::prelude::*;

use qent::bases::{gellmann_basis, pauli_basis, weyl_basis, OperatorBasis};
use qent::criteria::{
    collective_uncertainty_criterion, local_uncertainty_criterion, ppt_criterion,
    uncertainty_identity, BSide, Verdict,
};
use qent::measures::{me_chain, me_direct};
use qent::numerics::{eigh, partial_trace, partial_transpose, ComplexMatrix, TensorStructure};
use qent::states::{
    haar_random_pure, haar_random_unitary, random_mixed, random_separable, reduced_density,
    schmidt_spectrum, werner_state, DensityMatrix, PureState,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrices with dyadic-rational entries: every product of three entries
/// is exactly representable, so associativity checks can demand exact
/// equality.
fn dyadic_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-16i32..=16, -16i32..=16), rows * cols).prop_map(move |entries| {
        ComplexMatrix::from_fn(rows, cols, |i, j| {
            let (re, im) = entries[i * cols + j];
            c(re as f64 / 8.0, im as f64 / 8.0)
        })
    })
}

fn float_square(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |entries| {
        ComplexMatrix::from_fn(dim, dim, |i, j| {
            let (re, im) = entries[i * dim + j];
            c(re, im)
        })
    })
}

proptest! {
    #[test]
    fn hs_inner_is_conjugate_symmetric(p in float_square(3), q in float_square(3)) {
        let a = p.hs_inner(&q).unwrap();
        let b = q.hs_inner(&p).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12);
    }

    #[test]
    fn kron_is_associative_exactly(
        a in dyadic_matrix(2, 3),
        b in dyadic_matrix(2, 2),
        c in dyadic_matrix(3, 2),
    ) {
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn partial_transpose_preserves_trace_exactly(m in float_square(6)) {
        let structure = TensorStructure::bipartite(2, 3).unwrap();
        for factor in 0..2 {
            let pt = partial_transpose(&m, &structure, factor).unwrap();
            prop_assert_eq!(pt.trace().unwrap(), m.trace().unwrap());
        }
    }
}

#[test]
fn partial_trace_preserves_trace_and_hermiticity() {
    let cases: Vec<(TensorStructure, Vec<Vec<usize>>)> = vec![
        (
            TensorStructure::bipartite(2, 3).unwrap(),
            vec![vec![0], vec![1]],
        ),
        (
            TensorStructure::uniform(2, 3).unwrap(),
            vec![vec![0], vec![1], vec![0, 2], vec![1, 2]],
        ),
        (
            TensorStructure::bipartite(3, 4).unwrap(),
            vec![vec![0], vec![1]],
        ),
    ];
    for (structure, keeps) in cases {
        for seed in 0..10 {
            let rho = random_mixed(structure.total_dim(), 3, seed)
                .unwrap()
                .with_structure(structure.clone())
                .unwrap();
            for keep in &keeps {
                let out = partial_trace(rho.matrix(), &structure, keep).unwrap();
                let tr = out.trace().unwrap();
                assert!((tr.re - 1.0).abs() <= 1e-12 && tr.im.abs() <= 1e-12);
                assert!(out.hermiticity_defect() <= 1e-12);
            }
        }
    }
}

#[test]
fn density_spectra_are_positive_and_normalized() {
    for seed in 0..20 {
        let rho = random_mixed(5, 3, seed).unwrap();
        let eig = eigh(rho.matrix()).unwrap();
        let sum: f64 = eig.eigenvalues.iter().sum();
        assert!((sum - 1.0).abs() <= 1e-10);
        for &l in &eig.eigenvalues {
            assert!(l >= -1e-10, "eigenvalue {l}");
        }
    }
}

#[test]
fn complementary_reductions_share_nonzero_spectra() {
    for (da, db) in [(2usize, 2usize), (2, 4), (3, 5), (4, 3)] {
        let structure = TensorStructure::bipartite(da, db).unwrap();
        for seed in 0..5 {
            let psi = haar_random_pure(&structure, seed);
            let spec_a = eigh(reduced_density(&psi, &[0]).unwrap().matrix())
                .unwrap()
                .eigenvalues;
            let spec_b = eigh(reduced_density(&psi, &[1]).unwrap().matrix())
                .unwrap()
                .eigenvalues;
            let rank = da.min(db);
            for k in 0..rank {
                assert!(
                    (spec_a[k] - spec_b[k]).abs() <= 1e-10,
                    "spectra diverge at {k}: {} vs {}",
                    spec_a[k],
                    spec_b[k]
                );
            }
            for &extra in spec_a.iter().skip(rank).chain(spec_b.iter().skip(rank)) {
                assert!(extra.abs() <= 1e-10);
            }
        }
    }
}

fn apply_local_pair(psi: &PureState, ua: &ComplexMatrix, ub: &ComplexMatrix) -> PureState {
    let u = ua.kron(ub);
    let amps = u.mul_vec(psi.amplitudes()).unwrap();
    PureState::new(amps, psi.structure().clone()).unwrap()
}

#[test]
fn local_unitaries_leave_spectrum_and_measures_alone() {
    for (da, db) in [(2usize, 2usize), (3, 3), (3, 4)] {
        let structure = TensorStructure::bipartite(da, db).unwrap();
        for seed in 0..5 {
            let psi = haar_random_pure(&structure, seed);
            let ua = haar_random_unitary(da, 1000 + seed);
            let ub = haar_random_unitary(db, 2000 + seed);
            let rotated = apply_local_pair(&psi, &ua, &ub);

            let s0 = schmidt_spectrum(&psi).unwrap();
            let s1 = schmidt_spectrum(&rotated).unwrap();
            for (a, b) in s0.coefficients.iter().zip(&s1.coefficients) {
                assert!((a - b).abs() <= 1e-10);
            }

            for n in 2..=4 {
                let m0 = me_direct(&psi, n, &[0]).unwrap();
                let m1 = me_direct(&rotated, n, &[0]).unwrap();
                assert!((m0.value - m1.value).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn measure_range_and_extremes() {
    for d in 2..=4 {
        let structure = TensorStructure::bipartite(d, d).unwrap();
        for n in 2..=4u32 {
            let cap = 1.0 - (d as f64).powi(1 - n as i32);
            for seed in 0..10 {
                let psi = haar_random_pure(&structure, seed);
                let m = me_direct(&psi, n, &[0]).unwrap();
                assert!(m.value >= -1e-12 && m.value <= cap + 1e-12);
            }
            let product = PureState::computational(structure.clone(), &[0, d - 1]).unwrap();
            assert!(me_direct(&product, n, &[0]).unwrap().value.abs() <= 1e-12);
            let max_ent = PureState::maximally_entangled(d).unwrap();
            assert!((me_direct(&max_ent, n, &[0]).unwrap().value - cap).abs() <= 1e-12);
        }
    }
}

#[test]
fn chain_direct_smoke() {
    for (da, db) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        let structure = TensorStructure::bipartite(da, db).unwrap();
        let gell = gellmann_basis(da).unwrap();
        let weyl = weyl_basis(da).unwrap();
        let mut families: Vec<&OperatorBasis> = vec![&gell, &weyl];
        let pauli = pauli_basis();
        if da == 2 {
            families.push(&pauli);
        }
        for seed in 0..10 {
            let psi = haar_random_pure(&structure, 7000 + seed);
            for n in 2..=3u32 {
                let direct = me_direct(&psi, n, &[0]).unwrap();
                for basis in &families {
                    let slots: Vec<&OperatorBasis> = vec![basis; (n - 1) as usize];
                    let chain = me_chain(&psi, n, &slots, &[0]).unwrap();
                    assert!(
                        (chain.value - direct.value).abs() <= 1e-9,
                        "chain/direct gap {} at d=({da},{db}), n={n}, basis {}",
                        (chain.value - direct.value).abs(),
                        basis.name()
                    );
                }
            }
        }
    }
}

#[test]
fn werner_is_ppt_separable_exactly_up_to_one_third() {
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        let report = ppt_criterion(&werner_state(p).unwrap()).unwrap();
        let detected = report.verdict == Verdict::EntangledDetected;
        assert_eq!(detected, p > 1.0 / 3.0, "PPT verdict at p = {p}");
    }
    // Exactly at the threshold the PT eigenvalue is zero: no violation.
    let at = ppt_criterion(&werner_state(1.0 / 3.0).unwrap()).unwrap();
    assert_eq!(at.verdict, Verdict::NotDetected);
}

#[test]
fn identity_smoke_across_dims_and_bases() {
    for d in 2..=3usize {
        let gell = gellmann_basis(d).unwrap();
        for seed in 0..30 {
            let rho = random_mixed(d, 2, seed).unwrap();
            let s = uncertainty_identity(&rho, &gell).unwrap();
            assert!(s.residual <= 1e-10);
            assert!(s.sum >= d as f64 - 1.0 - 1e-10);
            if d == 2 {
                let s2 = uncertainty_identity(&rho, &pauli_basis()).unwrap();
                assert!((s.sum - s2.sum).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn criteria_soundness_smoke_on_separable_states() {
    // Bipartite: no separable state may violate the local criterion.
    for d in 2..=3usize {
        let structure = TensorStructure::bipartite(d, d).unwrap();
        let basis = gellmann_basis(d).unwrap();
        for seed in 0..100 {
            let rho = random_separable(&structure, seed);
            for side in [BSide::Same, BSide::Conjugate] {
                let r = local_uncertainty_criterion(&rho, &basis, side).unwrap();
                assert_eq!(
                    r.verdict,
                    Verdict::NotDetected,
                    "false positive at d={d}, seed={seed}, {side:?}, value {}",
                    r.value
                );
            }
        }
    }
    // Collective: product mixtures of N qubits stay at or above N(d-1).
    let basis = pauli_basis();
    for n in 2..=3usize {
        let structure = TensorStructure::uniform(2, n).unwrap();
        for seed in 0..100 {
            let rho = random_separable(&structure, 5000 + seed);
            let r = collective_uncertainty_criterion(&rho, &basis).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::NotDetected,
                "false positive at N={n}, seed={seed}, value {}",
                r.value
            );
        }
    }
}

#[test]
fn validated_constructor_accepts_every_sampler_output() {
    for seed in 0..10 {
        let structure = TensorStructure::bipartite(3, 3).unwrap();
        let psi = haar_random_pure(&structure, seed);
        let rho = DensityMatrix::from_pure(&psi);
        assert!(DensityMatrix::new(rho.matrix().clone(), structure.clone()).is_ok());
        let sep = random_separable(&structure, seed);
        assert!(DensityMatrix::new(sep.matrix().clone(), structure).is_ok());
    }
}
