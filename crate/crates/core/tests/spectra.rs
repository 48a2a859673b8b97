mod common;

use common::*;
use pdm_core::spectral::{
    default_window, find_bound_states_cm, find_bound_states_pdm, find_bound_states_pdm_with,
    sl_matrix_eigenvalues, sl_matrix_eigenvalues_richardson, ShootConfig, SpectrumResult,
};
use pdm_core::{l2_norm, Parity, PotentialParams};
use proptest::prelude::*;

fn pdm(p: &PotentialParams) -> SpectrumResult {
    find_bound_states_pdm(p, default_window(p)).unwrap()
}

fn cm(p: &PotentialParams) -> SpectrumResult {
    find_bound_states_cm(p, default_window(p)).unwrap()
}

fn assert_ladder(s: &SpectrumResult) {
    for (i, st) in s.states.iter().enumerate() {
        assert_eq!(st.nodes, i);
        assert_eq!(st.parity, Parity::from_nodes(i));
        assert!(st.energy < 0.0);
        assert!((l2_norm(&st.psi) - 1.0).abs() < 1e-8);
        assert_eq!(pdm_core::heun::count_nodes(st.psi.values()), st.nodes);
    }
    assert!(s.states.windows(2).all(|w| w[0].energy < w[1].energy));
}

#[test]
fn manning_pdm_spectrum() {
    let s = find_bound_states_pdm(&manning(), (-125.0, 0.0)).unwrap();
    assert_eq!((s.count_symmetric, s.count_antisymmetric), (3, 3));
    assert_matches(&s.energies(), &MANNING_PDM);
    assert_ladder(&s);
}

#[test]
fn manning_cm_spectrum() {
    let s = cm(&manning());
    assert_matches(&s.energies(), &MANNING_CM);
    assert_ladder(&s);
}

#[test]
fn a60_pdm_spectrum() {
    let s = pdm(&manning_a60());
    assert_matches(&s.energies(), &A60_PDM);
    assert!((s.states[0].energy - -113.818781855).abs() < 1e-6);
    assert_ladder(&s);
}

#[test]
fn a60_cm_spectrum_has_two_shallow_extra_levels() {
    // The fourteen reference levels are followed by two more, both with
    // E > -1.5, confirmed by the matrix oracle in a 400-wide box.
    let s = cm(&manning_a60());
    assert_eq!(s.len(), 16);
    assert_matches(&s.energies()[..14], &A60_CM);
    assert!((s.states[14].energy - -1.404_024_975).abs() < 1e-7);
    assert!((s.states[15].energy - -0.047_897_682).abs() < 1e-7);
    assert_ladder(&s);
}

#[test]
fn triple_well_spectra() {
    let p = triple();
    let s = pdm(&p);
    assert_matches(&s.energies(), &TRIPLE_PDM);
    assert_ladder(&s);
    let s = cm(&p);
    assert_matches(&s.energies(), &TRIPLE_CM);
    assert_ladder(&s);
}

#[test]
fn pdm_merges_levels() {
    for p in [manning(), manning_a60(), triple()] {
        assert!(pdm(&p).len() < cm(&p).len());
    }
}

#[test]
fn shooting_agrees_with_matrix_oracle() {
    for p in [manning(), manning_a60(), triple()] {
        let w = default_window(&p);
        for (s, flag) in [(pdm(&p), true), (cm(&p), false)] {
            let m = sl_matrix_eigenvalues_richardson(&p, flag, 4000, w).unwrap();
            assert_eq!(m.len(), s.len());
            for (a, b) in s.energies().iter().zip(&m) {
                assert!(rel(*a, *b) <= 1e-6, "pdm={flag}: shooting {a} vs matrix {b}");
            }
        }
    }
}

#[test]
fn matrix_cm_matches_reference_levels() {
    let p = manning();
    let m = sl_matrix_eigenvalues_richardson(&p, false, 4000, default_window(&p)).unwrap();
    assert_matches(&m, &MANNING_CM);
    let plain = sl_matrix_eigenvalues(&p, true, 4000, (-125.0, 0.0)).unwrap();
    assert_eq!(plain.len(), 6);
}

#[test]
fn free_problem_is_empty() {
    let p = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
    assert!(pdm(&p).is_empty());
    assert!(cm(&p).is_empty());
    assert!(sl_matrix_eigenvalues(&p, true, 4000, (f64::NEG_INFINITY, 0.0))
        .unwrap()
        .is_empty());
}

#[test]
fn grid_halving_at_16001_points() {
    let p = manning();
    let coarse = find_bound_states_pdm_with(&p, (-125.0, 0.0), &ShootConfig::new(16001, 1e-6).unwrap())
        .unwrap()
        .energies();
    let fine = find_bound_states_pdm_with(&p, (-125.0, 0.0), &ShootConfig::new(32001, 1e-6).unwrap())
        .unwrap()
        .energies();
    for (a, b) in coarse.iter().zip(&fine) {
        assert!(rel(*a, *b) <= 1e-8, "{a} vs {b}");
    }
}

#[test]
fn endpoint_offset_does_not_matter() {
    for p in [manning(), triple()] {
        let base = pdm(&p).energies();
        for eps in [1e-7, 1e-5, 1e-4] {
            let cfg = ShootConfig::new(4001, eps).unwrap();
            let e = find_bound_states_pdm_with(&p, default_window(&p), &cfg)
                .unwrap()
                .energies();
            assert_eq!(e.len(), base.len());
            for (a, b) in e.iter().zip(&base) {
                assert!(rel(*a, *b) <= 1e-8, "eps {eps}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn window_restricts_levels() {
    let s = find_bound_states_pdm(&manning(), (-70.0, -20.0)).unwrap();
    assert_eq!(s.len(), 4);
    assert_eq!(s.states[0].nodes, 2);
    assert!(find_bound_states_pdm(&manning(), (-1.0, 1.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_wells_obey_the_ladder_and_the_oracle(
        a in -200.0..200.0f64,
        b in -600.0..0.0f64,
        c in 0.0..400.0f64,
    ) {
        let p = PotentialParams::new(a, b, c).unwrap();
        let w = default_window(&p);
        let s = find_bound_states_pdm(&p, w).unwrap();
        assert_ladder(&s);
        let m = sl_matrix_eigenvalues_richardson(&p, true, 4000, w).unwrap();
        prop_assert_eq!(m.len(), s.len());
        for (x, y) in s.energies().iter().zip(&m) {
            prop_assert!((x - y).abs() <= 1e-6 * y.abs().max(1.0), "{} vs {}", x, y);
        }
    }
}
