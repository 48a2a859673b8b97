mod common;

use common::{manning, manning_a60};
use pdm_core::heun::pdm_manning_wavefunction;
use pdm_core::spectral::{find_bound_states_cm, find_bound_states_pdm, residual, tunneling_weight};
use pdm_core::transform::linspace;
use pdm_core::{BoundState, Error, Grid, Space};

fn sampled(state: &BoundState, xmax: f64, n: usize) -> Grid<f64> {
    let xs = linspace(-xmax, xmax, n);
    let ys = xs.iter().map(|&x| state.sample_psi(x)).collect();
    Grid::new(Space::X, xs, ys).unwrap()
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

#[test]
fn residual_falls_with_the_sampling_step() {
    let p = manning();
    let spec = find_bound_states_pdm(&p, (-200.0, 0.0)).unwrap();
    for st in &spec.states {
        let coarse = residual(&p, true, &sampled(st, 6.0, 2001), st.energy).unwrap();
        let fine = residual(&p, true, &sampled(st, 6.0, 4001), st.energy).unwrap();
        let ratio = coarse / fine;
        assert!((3.0..5.0).contains(&ratio), "E = {}: ratio {ratio}", st.energy);
    }
}

#[test]
fn manning_closed_forms_agree_with_shooting() {
    let p = manning();
    let spec = find_bound_states_pdm(&p, (-200.0, 0.0)).unwrap();
    assert_eq!(spec.len(), 6);
    let xs = linspace(-6.0, 6.0, 2401);
    for st in &spec.states {
        let wf = pdm_manning_wavefunction(-500.0, 500.0, st.energy, st.parity).unwrap();
        let analytic = unit(&wf.real_values(&xs).unwrap());
        let numeric = unit(&xs.iter().map(|&x| st.sample_psi(x)).collect::<Vec<_>>());
        let sign = analytic.iter().zip(&numeric).map(|(a, b)| a * b).sum::<f64>().signum();
        let worst = analytic
            .iter()
            .zip(&numeric)
            .map(|(a, b)| (sign * a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-5, "E = {}: {worst:e}", st.energy);

        let grid = Grid::new(Space::X, xs.clone(), wf.real_values(&xs).unwrap()).unwrap();
        let r_analytic = residual(&p, true, &grid, st.energy).unwrap();
        let r_numeric = residual(&p, true, &sampled(st, 6.0, 2401), st.energy).unwrap();
        assert!(r_analytic <= 10.0 * r_numeric && r_numeric <= 10.0 * r_analytic);
    }
}

#[test]
fn position_dependent_mass_tunnels_more() {
    for p in [manning(), manning_a60()] {
        let pdm = find_bound_states_pdm(&p, (-200.0, 0.0)).unwrap();
        let cm = find_bound_states_cm(&p, (-200.0, 0.0)).unwrap();
        let w_pdm = tunneling_weight(&pdm.states[0], &p).unwrap();
        let w_cm = tunneling_weight(&cm.states[0], &p).unwrap();
        assert!(w_pdm > w_cm, "{w_pdm} vs {w_cm}");
    }
}

#[test]
fn doublet_partners_both_tunnel() {
    let p = manning();
    let pdm = find_bound_states_pdm(&p, (-200.0, 0.0)).unwrap();
    let w0 = tunneling_weight(&pdm.states[0], &p).unwrap();
    let w1 = tunneling_weight(&pdm.states[1], &p).unwrap();
    assert!(w0 > 0.0 && w1 > 0.0);
    assert!((w0 - w1).abs() < 0.1 * w0);
}

#[test]
fn no_barrier_above_the_top() {
    let p = manning();
    let pdm = find_bound_states_pdm(&p, (-200.0, 0.0)).unwrap();
    let above = BoundState {
        energy: 0.5,
        ..pdm.states[0].clone()
    };
    assert!(matches!(tunneling_weight(&above, &p), Err(Error::NoBarrier(_))));
    let single = pdm_core::PotentialParams::new(10.0, 0.0, 0.0).unwrap();
    assert!(matches!(
        tunneling_weight(&pdm.states[0], &single),
        Err(Error::NoBarrier(_))
    ));
}
