//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured residuals (visible with `--nocapture`).
//! Tolerances are pinned in the asserts; nothing is deferred to later
//! calibration.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;

use qent::bases::{
    gellmann_basis, pauli_basis, verify_completeness, verify_hermitian_sum_rule,
    verify_orthonormality, weyl_basis, OperatorBasis,
};
use qent::criteria::{
    collective_uncertainty_criterion, local_uncertainty_criterion, ppt_criterion,
    uncertainty_identity, BSide, Verdict,
};
use qent::measures::{
    concurrence_2qubit, me2_expectations, me2_gellmann_closed_form, me2_identical,
    me2_weyl_closed_form, me_chain, me_direct,
};
use qent::numerics::TensorStructure;
use qent::states::{
    haar_random_pure, random_mixed, random_separable, werner_state, DensityMatrix, PureState,
};

const ENSEMBLE: u64 = 200;

fn ensemble_seed(da: usize, db: usize, idx: u64) -> u64 {
    (da as u64) * 1_000_003 + (db as u64) * 10_007 + idx
}

fn pass(id: u32, name: &str, detail: String) {
    println!("acceptance {id:02} [{name}]: PASS ({detail})");
}

#[test]
fn criterion_01_chain_direct_exactness() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for da in 2..=4usize {
        let gell = gellmann_basis(da).unwrap();
        let weyl = weyl_basis(da).unwrap();
        let pauli = pauli_basis();
        let mut families: Vec<&OperatorBasis> = vec![&gell, &weyl];
        if da == 2 {
            families.push(&pauli);
        }
        for db in 2..=4usize {
            let structure = TensorStructure::bipartite(da, db).unwrap();
            for idx in 0..ENSEMBLE {
                let psi = haar_random_pure(&structure, ensemble_seed(da, db, idx));
                for n in 2..=4u32 {
                    let direct = me_direct(&psi, n, &[0]).unwrap();
                    for basis in &families {
                        let slots: Vec<&OperatorBasis> = vec![basis; (n - 1) as usize];
                        let chain = me_chain(&psi, n, &slots, &[0]).unwrap();
                        let gap = (chain.value - direct.value).abs();
                        worst = worst.max(gap);
                        assert!(
                            gap <= 1e-9,
                            "chain/direct gap {gap:.3e} at d=({da},{db}), n={n}, basis {}",
                            basis.name()
                        );
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "runtime budget exceeded: {elapsed:?}"
    );
    pass(
        1,
        "chain-direct exactness",
        format!("max gap {worst:.3e}, elapsed {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_closed_forms_match_direct() {
    let mut worst: f64 = 0.0;
    for da in 2..=4usize {
        for db in 2..=4usize {
            let structure = TensorStructure::bipartite(da, db).unwrap();
            for idx in 0..ENSEMBLE {
                let psi = haar_random_pure(&structure, ensemble_seed(da, db, idx));
                let direct = me_direct(&psi, 2, &[0]).unwrap();
                let gm = me2_gellmann_closed_form(&psi).unwrap();
                let wl = me2_weyl_closed_form(&psi).unwrap();
                for closed in [gm.value, wl.value] {
                    let gap = (closed - direct.value).abs();
                    worst = worst.max(gap);
                    assert!(gap <= 1e-9, "closed-form gap {gap:.3e} at d=({da},{db})");
                }
            }
        }
    }
    pass(2, "closed forms", format!("max gap {worst:.3e}"));
}

#[test]
fn criterion_03_two_qubit_bridge() {
    let structure = TensorStructure::bipartite(2, 2).unwrap();
    let basis = pauli_basis();
    let mut worst: f64 = 0.0;
    for seed in 0..500u64 {
        let psi = haar_random_pure(&structure, 90_000 + seed);
        let (m, _) = me2_expectations(&psi, &basis, &[0]).unwrap();
        let c = concurrence_2qubit(&psi).unwrap();
        let gap = (m.value - 0.5 * c * c).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-10, "bridge gap {gap:.3e} at seed {seed}");
    }
    let bell = PureState::bell_phi_plus();
    let c = concurrence_2qubit(&bell).unwrap();
    let (m, _) = me2_expectations(&bell, &basis, &[0]).unwrap();
    assert!((c - 1.0).abs() <= 1e-12, "Bell concurrence {c}");
    assert!((m.value - 0.5).abs() <= 1e-12, "Bell M(2) {}", m.value);
    pass(3, "two-qubit bridge", format!("max gap {worst:.3e}"));
}

#[test]
fn criterion_04_completeness_identities() {
    let mut worst: f64 = 0.0;
    let mut check = |basis: &OperatorBasis, seed: u64| {
        let gram = verify_orthonormality(basis);
        let comp = verify_completeness(basis, 20, seed).unwrap();
        worst = worst.max(gram).max(comp);
        assert!(gram <= 1e-10, "{} gram residual {gram:.3e}", basis.name());
        assert!(comp <= 1e-10, "{} twirl residual {comp:.3e}", basis.name());
        if basis.is_hermitian() {
            let sum = verify_hermitian_sum_rule(basis).unwrap();
            worst = worst.max(sum);
            assert!(sum <= 1e-10, "{} sum rule residual {sum:.3e}", basis.name());
        }
    };
    check(&pauli_basis(), 41);
    for d in 2..=5 {
        check(&gellmann_basis(d).unwrap(), 42 + d as u64);
        check(&weyl_basis(d).unwrap(), 52 + d as u64);
    }

    // Negative control: drop one element and the identity must fail.
    for basis in [pauli_basis(), gellmann_basis(3).unwrap()] {
        let truncated = OperatorBasis::from_elements(
            format!("{}_truncated", basis.name()),
            basis.elements()[..basis.len() - 1].to_vec(),
            basis.labels()[..basis.len() - 1].to_vec(),
            basis.is_hermitian(),
            basis.is_unitary_scaled(),
        )
        .unwrap();
        let residual = verify_completeness(&truncated, 10, 77).unwrap();
        assert!(
            residual > 0.1,
            "truncated {} residual {residual:.3e} not detected",
            basis.name()
        );
    }
    pass(4, "completeness identities", format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_05_uncertainty_identity() {
    let mut worst: f64 = 0.0;
    for d in 2..=5usize {
        let gell = gellmann_basis(d).unwrap();
        let pauli = pauli_basis();
        let mut bases: Vec<&OperatorBasis> = vec![&gell];
        if d == 2 {
            bases.push(&pauli);
        }
        for seed in 0..100u64 {
            let rho = random_mixed(d, d, 7_000 * d as u64 + seed).unwrap();
            for basis in &bases {
                let s = uncertainty_identity(&rho, basis).unwrap();
                worst = worst.max(s.residual);
                assert!(
                    s.residual <= 1e-10,
                    "identity residual {:.3e} at d={d}, seed={seed}",
                    s.residual
                );
                assert!(
                    s.sum >= d as f64 - 1.0 - 1e-10,
                    "bound violated: {} < {} at d={d}",
                    s.sum,
                    d - 1
                );
            }
        }
    }
    pass(5, "uncertainty identity", format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_06_soundness_on_separable_states() {
    // Bipartite local criterion, both conventions, d = 2 and 3.
    for d in 2..=3usize {
        let structure = TensorStructure::bipartite(d, d).unwrap();
        let basis = gellmann_basis(d).unwrap();
        for seed in 0..500u64 {
            let rho = random_separable(&structure, 11_000 * d as u64 + seed);
            for side in [BSide::Same, BSide::Conjugate] {
                let r = local_uncertainty_criterion(&rho, &basis, side).unwrap();
                assert_eq!(
                    r.verdict,
                    Verdict::NotDetected,
                    "false positive: d={d}, seed={seed}, {side:?}, value {}",
                    r.value
                );
            }
        }
    }
    // Collective criterion on separable N-qubit states.
    let basis = pauli_basis();
    for n in 2..=3usize {
        let structure = TensorStructure::uniform(2, n).unwrap();
        for seed in 0..500u64 {
            let rho = random_separable(&structure, 13_000 * n as u64 + seed);
            let r = collective_uncertainty_criterion(&rho, &basis).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::NotDetected,
                "false positive: N={n}, seed={seed}, value {}",
                r.value
            );
        }
    }
    pass(6, "criterion soundness", "0 false positives / 2000 separable states".into());
}

#[test]
fn criterion_07_werner_detection_power() {
    let basis = pauli_basis();
    let mut flips = Vec::new();
    for k in 0..=10u32 {
        let p = k as f64 / 10.0;
        let rho = werner_state(p).unwrap();
        let local = local_uncertainty_criterion(&rho, &basis, BSide::Conjugate).unwrap();
        let expected = 3.0 * (1.0 - p);
        assert!(
            (local.value - expected).abs() <= 1e-10,
            "value {} vs 3(1-p) = {expected} at p = {p}",
            local.value
        );
        let ppt = ppt_criterion(&rho).unwrap();
        flips.push((
            p,
            local.verdict == Verdict::EntangledDetected,
            ppt.verdict == Verdict::EntangledDetected,
        ));
    }
    for (p, local_detects, ppt_detects) in &flips {
        let expected = *p > 0.35; // grid point 0.4 is the first past 1/3
        assert_eq!(local_detects, &expected, "local verdict at p = {p}");
        assert_eq!(ppt_detects, &expected, "PPT verdict at p = {p}");
    }
    pass(
        7,
        "Werner detection power",
        "value = 3(1-p) within 1e-10; both verdicts flip between 0.3 and 0.4".into(),
    );
}

#[test]
fn criterion_08_collective_criterion() {
    let singlet = DensityMatrix::from_pure(&PureState::singlet());
    let r = collective_uncertainty_criterion(&singlet, &pauli_basis()).unwrap();
    assert!(r.value <= 1e-12, "singlet value {}", r.value);
    assert_eq!(r.threshold, 2.0);
    assert_eq!(r.verdict, Verdict::EntangledDetected);

    let mut worst: f64 = 0.0;
    for (d, n) in [(2usize, 2usize), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let site = TensorStructure::new(vec![d]).unwrap();
        let factor = haar_random_pure(&site, (d * 31 + n) as u64);
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(amps.len() * d);
            for a in &amps {
                for b in factor.amplitudes() {
                    next.push(a * b);
                }
            }
            amps = next;
        }
        let psi = PureState::new(amps, TensorStructure::uniform(d, n).unwrap()).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let r = collective_uncertainty_criterion(&rho, &gellmann_basis(d).unwrap()).unwrap();
        let bound = n as f64 * (d as f64 - 1.0);
        let gap = (r.value - bound).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-10, "product gap {gap:.3e} at d={d}, N={n}");
        assert_eq!(r.verdict, Verdict::NotDetected);
    }
    pass(
        8,
        "collective criterion",
        format!("singlet detected at 0; products on the bound (max gap {worst:.3e})"),
    );
}

/// Independent oracle for the single-particle reduced density matrix:
/// accumulate |amplitude|² blocks by index arithmetic, no partial-trace
/// machinery involved.
fn single_particle_purity_oracle(psi: &PureState, particle: usize) -> f64 {
    let dims = psi.structure().dims();
    let d = dims[0];
    let n = dims.len();
    let stride = d.pow((n - particle - 1) as u32);
    let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
    for (i, a) in psi.amplitudes().iter().enumerate() {
        let di = (i / stride) % d;
        let base_i = i - di * stride;
        for dj in 0..d {
            let j = base_i + dj * stride;
            rho[di * d + dj] += a * psi.amplitudes()[j].conj();
        }
    }
    let mut purity = 0.0;
    for i in 0..d {
        for j in 0..d {
            purity += (rho[i * d + j] * rho[j * d + i]).re;
        }
    }
    purity
}

#[test]
fn criterion_09_identical_particle_measure() {
    let cases: Vec<(PureState, f64, &str)> = vec![
        (PureState::singlet(), 0.5, "singlet"),
        (
            PureState::computational(TensorStructure::uniform(2, 2).unwrap(), &[0, 0]).unwrap(),
            0.0,
            "|00>",
        ),
        (
            PureState::computational(TensorStructure::uniform(2, 3).unwrap(), &[0, 0, 0]).unwrap(),
            0.0,
            "|000>",
        ),
        (
            PureState::computational(TensorStructure::uniform(2, 4).unwrap(), &[0; 4]).unwrap(),
            0.0,
            "|0000>",
        ),
        (PureState::w_state(3).unwrap(), 4.0 / 9.0, "W3"),
    ];
    let mut worst: f64 = 0.0;
    for (psi, expected, label) in &cases {
        let m = me2_identical(psi).unwrap();
        let oracle = 1.0 - single_particle_purity_oracle(psi, 0);
        let gap_expected = (m.result.value - expected).abs();
        let gap_oracle = (m.result.value - oracle).abs();
        worst = worst.max(gap_expected).max(gap_oracle);
        assert!(gap_expected <= 1e-10, "{label}: value {}", m.result.value);
        assert!(gap_oracle <= 1e-10, "{label}: oracle gap {gap_oracle:.3e}");
    }
    pass(9, "identical-particle measure", format!("max gap {worst:.3e}"));
}

#[test]
fn criterion_10_maximally_entangled_golden_values() {
    let mut worst: f64 = 0.0;
    for d in 2..=6usize {
        let psi = PureState::maximally_entangled(d).unwrap();
        for n in 2..=5u32 {
            let golden = 1.0 - (d as f64).powi(1 - n as i32);
            let m = me_direct(&psi, n, &[0]).unwrap();
            let gap = (m.value - golden).abs();
            worst = worst.max(gap);
            assert!(gap <= 1e-12, "golden gap {gap:.3e} at d={d}, n={n}");
        }
    }
    pass(10, "maximally entangled golden values", format!("max gap {worst:.3e}"));
}

#[test]
fn criterion_11_cli_determinism_and_round_trip() {
    use qent_cli::statefile::{LoadedState, StateFile};

    let dir = std::env::temp_dir().join(format!("qent-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // Bit-exact state round trip through the on-disk format.
    let structure = TensorStructure::bipartite(3, 3).unwrap();
    for seed in 0..20u64 {
        let psi = haar_random_pure(&structure, 400_000 + seed);
        let file = StateFile::from_pure(&psi);
        let path = dir.join(format!("rt{seed}.json"));
        std::fs::write(&path, file.to_json_string()).unwrap();
        let (reloaded, _) = StateFile::load(&path).unwrap();
        match reloaded.to_state().unwrap() {
            LoadedState::Pure(back) => assert_eq!(back.amplitudes(), psi.amplitudes()),
            _ => panic!("expected pure state"),
        }
    }

    // Byte-identical reports on repeated identical invocations.
    let psi = haar_random_pure(&structure, 424_242);
    let state_path: PathBuf = dir.join("det.json");
    std::fs::write(&state_path, StateFile::from_pure(&psi).to_json_string()).unwrap();
    let state = state_path.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["measure", "--state", state, "--n", "3", "--method", "chain", "--basis", "weyl"],
        vec!["measure", "--state", state, "--n", "2", "--method", "gellmann"],
        vec!["criterion", "--state", state, "--type", "ppt"],
        vec!["schmidt", "--state", state],
        vec!["basis-check", "--type", "gellmann", "--dim", "5", "--probes", "20", "--seed", "3"],
        vec!["scan", "--family", "werner", "--grid", "0:1:0.1", "--criteria", "local,ppt", "--basis", "pauli"],
    ];
    for args in &cases {
        let first = Command::new(env!("CARGO_BIN_EXE_qent"))
            .args(args)
            .output()
            .unwrap();
        assert!(first.status.success(), "{args:?}: {:?}", first);
        for _ in 0..2 {
            let again = Command::new(env!("CARGO_BIN_EXE_qent"))
                .args(args)
                .output()
                .unwrap();
            assert_eq!(first.stdout, again.stdout, "stdout differs for {args:?}");
            assert_eq!(first.stderr, again.stderr, "stderr differs for {args:?}");
        }
    }
    pass(
        11,
        "CLI determinism and round trip",
        format!("{} command shapes byte-stable; 20 states bit-exact", cases.len()),
    );
}
