//! Local confluent and triconfluent Heun functions and the closed-form
//! eigenfunctions built from them.

mod confluent;
mod dd;
mod ode;
mod triconfluent;
mod wavefunctions;

pub use confluent::{
    heun_c, heun_c_continued, heun_c_series, ConfluentHeunEvaluator, ConfluentHeunParams,
    SeriesValue, MAX_SERIES_TERMS, SERIES_RADIUS,
};
pub use ode::{dopri5, OdeOptions};
pub use triconfluent::{
    heun_t, heun_t_second, heun_t_truncated, TriconfluentHeunParams, MAX_TRICONFLUENT_TERMS,
};
pub use wavefunctions::{
    cm_manning_wavefunction, cm_sech64_wavefunction, count_nodes, count_nodes_above, pdm_manning_wavefunction,
    pdm_sech64_zeromode, pdm_sech6_zeromode, AnalyticWavefunction, Branch, WavefunctionFamily,
    REALITY_TOL,
};
use num_complex::Complex64;

/// Neumaier compensated summation over complex terms, component by component.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub(crate) fn new(start: Complex64) -> Self {
        Self {
            sum: start,
            comp: Complex64::new(0.0, 0.0),
        }
    }

    pub(crate) fn add(&mut self, t: Complex64) {
        let (re, cre) = neumaier(self.sum.re, self.comp.re, t.re);
        let (im, cim) = neumaier(self.sum.im, self.comp.im, t.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, comp: f64, t: f64) -> (f64, f64) {
    let s = sum + t;
    let c = if sum.abs() >= t.abs() {
        comp + ((sum - s) + t)
    } else {
        comp + ((t - s) + sum)
    };
    (s, c)
}
