//! Coordinate machinery between the PDM problem on the real line and the
//! constant-mass problem on `(-pi/2, pi/2)`.
//!
//! `sech x = cos z` (the gudermannian) and `psi(x) = sech^{1/2} x * phi(z)`.
//! The Jacobian `dx = dz / cos z` makes the pullback an isometry of L2.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    X,
    Z,
}

/// A sampled function: strictly increasing abscissae and one value per point.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    space: Space,
    points: Vec<f64>,
    values: Vec<T>,
}

impl<T> Grid<T> {
    pub fn new(space: Space, points: Vec<f64>, values: Vec<T>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter("grid points must be finite".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "grid points must be strictly increasing".into(),
            ));
        }
        if space == Space::Z && points.iter().any(|z| z.abs() >= FRAC_PI_2) {
            return Err(Error::Domain(
                "z-grid points must lie strictly inside (-pi/2, pi/2)".into(),
            ));
        }
        Ok(Self {
            space,
            points,
            values,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Grid<U> {
        Grid {
            space: self.space,
            points: self.points.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Uniform spacing if the grid is uniform to relative `1e-9`.
    pub fn uniform_step(&self) -> Option<f64> {
        uniform_step(&self.points)
    }
}

impl<T: Clone> Grid<T> {
    pub fn scaled(&self, factor: f64) -> Self
    where
        T: std::ops::Mul<f64, Output = T>,
    {
        Grid {
            space: self.space,
            points: self.points.clone(),
            values: self.values.iter().map(|v| v.clone() * factor).collect(),
        }
    }
}

/// Uniform `n`-point grid on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * h })
                .collect()
        }
    }
}

/// The default solver grid: `n` uniform points on `[-pi/2 + eps, pi/2 - eps]`.
pub fn default_z_points(n: usize, eps: f64) -> Result<Vec<f64>> {
    if !(eps > 0.0 && eps < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!(
            "endpoint offset must lie in (0, pi/2), got {eps}"
        )));
    }
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "a z-grid needs at least 3 points, got {n}"
        )));
    }
    let half = FRAC_PI_2 - eps;
    let mut pts = linspace(-half, half, n);
    if n % 2 == 1 {
        pts[n / 2] = 0.0;
    }
    Ok(pts)
}

fn uniform_step(points: &[f64]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let h = (points[points.len() - 1] - points[0]) / (points.len() - 1) as f64;
    let scale = points[0].abs().max(points[points.len() - 1].abs()).max(h);
    let ok = points
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * scale);
    ok.then_some(h)
}

/// Exponents of the two ansatz factors that remove the mass from the
/// kinetic term and regularize the singular endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzConstants {
    /// `psi = cosh^nu(x) phi(z)`; `-1/2` kills the first-derivative term.
    pub nu: f64,
    /// `phi = cos^mu(z) f(y)` for the Manning family.
    pub mu: f64,
    /// `phi = cos^sigma(z) f(y)` for the sech^6 zero modes.
    pub sigma: f64,
}

impl AnsatzConstants {
    pub const STANDARD: AnsatzConstants = AnsatzConstants {
        nu: -0.5,
        mu: 1.5,
        sigma: -0.5,
    };
}

impl Default for AnsatzConstants {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// `z = gd(x)`, computed as `atan(sinh x)`.
///
/// This is the same function as `asin(tanh x)` but keeps full precision for
/// large `|x|`, where `tanh x` rounds to 1.
pub fn z_of_x(x: f64) -> f64 {
    x.sinh().atan()
}

/// Inverse gudermannian `x = asinh(tan z)` on `|z| < pi/2`.
pub fn x_of_z(z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() >= FRAC_PI_2 {
        return Err(Error::Domain(format!("x_of_z needs |z| < pi/2, got {z}")));
    }
    Ok(z.tan().asinh())
}

/// `psi(x_i) = sqrt(cos z_i) phi(z_i)` on the image grid `x_i = x_of_z(z_i)`.
pub fn pullback_wavefunction<T>(phi: &Grid<T>) -> Result<Grid<T>>
where
    T: Copy + std::ops::Mul<f64, Output = T>,
{
    if phi.space != Space::Z {
        return Err(Error::InvalidParameter(
            "pullback expects a grid in z".into(),
        ));
    }
    let mut xs = Vec::with_capacity(phi.len());
    let mut vals = Vec::with_capacity(phi.len());
    for (&z, &v) in phi.points.iter().zip(&phi.values) {
        xs.push(x_of_z(z)?);
        vals.push(v * z.cos().sqrt());
    }
    Grid::new(Space::X, xs, vals)
}

/// Squared modulus, so that norms work for real and complex grids alike.
pub trait Modulus: Copy {
    fn modulus_sqr(self) -> f64;
}

impl Modulus for f64 {
    fn modulus_sqr(self) -> f64 {
        self * self
    }
}

impl Modulus for Complex64 {
    fn modulus_sqr(self) -> f64 {
        self.norm_sqr()
    }
}

/// `sqrt(int |f|^2 dq)` over the grid coordinate.
pub fn l2_norm<T: Modulus>(g: &Grid<T>) -> f64 {
    let f: Vec<f64> = g.values.iter().map(|v| v.modulus_sqr()).collect();
    integrate(&g.points, &f).max(0.0).sqrt()
}

/// Integral of sampled data: composite Simpson on uniform grids (3/8 rule
/// on the last panel for an even point count), piecewise-quadratic Simpson
/// on nonuniform grids.
pub fn integrate(points: &[f64], f: &[f64]) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * (points[1] - points[0]) * (f[0] + f[1]);
    }
    match uniform_step(points) {
        Some(h) => simpson_uniform(h, f),
        None => simpson_nonuniform(points, f),
    }
}

fn simpson_uniform(h: f64, f: &[f64]) -> f64 {
    let n = f.len();
    let (simpson_end, tail) = if n % 2 == 1 {
        (n - 1, 0.0)
    } else if n >= 4 {
        let k = n - 4;
        (
            k,
            3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]),
        )
    } else {
        return 0.5 * h * (f[0] + f[1]);
    };
    let mut s = 0.0;
    let mut i = 0;
    while i + 2 <= simpson_end {
        s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    s + tail
}

fn simpson_nonuniform(x: &[f64], f: &[f64]) -> f64 {
    let n = x.len();
    let mut s = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        let hs = h0 + h1;
        s += hs / 6.0
            * ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        // One leftover interval: quadratic through the last three points,
        // integrated over the final interval only.
        s += last_interval_quadratic(
            x[n - 2] - x[n - 3],
            x[n - 1] - x[n - 2],
            f[n - 3],
            f[n - 2],
            f[n - 1],
        );
    }
    s
}

/// `int_{x1}^{x2} q(x) dx` for the quadratic `q` through `(x0,f0), (x1,f1), (x2,f2)`.
fn last_interval_quadratic(h1: f64, h2: f64, f0: f64, f1: f64, f2: f64) -> f64 {
    let w0 = -h2 * h2 * h2 / (6.0 * h1 * (h1 + h2));
    let w1 = h2 * (h2 + 3.0 * h1) / (6.0 * h1);
    let w2 = h2 * (2.0 * h2 + 3.0 * h1) / (6.0 * (h1 + h2));
    w0 * f0 + w1 * f1 + w2 * f2
}

/// Six-point Lagrange interpolation of uniformly spaced samples. Points
/// outside the sampled range evaluate to `outside`.
pub fn interpolate_uniform(lo: f64, h: f64, values: &[f64], q: f64, outside: f64) -> f64 {
    let n = values.len();
    let hi = lo + h * (n - 1) as f64;
    if n == 0 || q < lo - 1e-12 * h.abs() || q > hi + 1e-12 * h.abs() {
        return outside;
    }
    if n < 6 {
        let i = (((q - lo) / h).floor() as usize).min(n.saturating_sub(2));
        let t = (q - lo) / h - i as f64;
        return values[i] * (1.0 - t) + values[(i + 1).min(n - 1)] * t;
    }
    let s = (q - lo) / h;
    let base = (s.floor() as isize - 2).clamp(0, n as isize - 6) as usize;
    let mut acc = 0.0;
    for j in 0..6 {
        let mut w = 1.0;
        let sj = (base + j) as f64;
        for k in 0..6 {
            if k != j {
                let sk = (base + k) as f64;
                w *= (s - sk) / (sj - sk);
            }
        }
        acc += w * values[base + j];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn z_of_x_examples() {
        assert_eq!(z_of_x(0.0), 0.0);
        assert_eq!(z_of_x(1e4), FRAC_PI_2);
        // Oracle: bisection on cos z = sech 1 over (0, pi/2).
        let target = 1.0 / 1f64.cosh();
        let (mut lo, mut hi) = (0.0f64, FRAC_PI_2);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.cos() > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((z_of_x(1.0) - 0.5 * (lo + hi)).abs() < 1e-15);
        assert!((z_of_x(1.0) - 0.865_769_483_239_658_6).abs() < 1e-15);
    }

    #[test]
    fn x_of_z_rejects_endpoints() {
        assert!(matches!(x_of_z(FRAC_PI_2), Err(Error::Domain(_))));
        assert!(matches!(x_of_z(-2.0), Err(Error::Domain(_))));
        assert!(x_of_z(f64::NAN).is_err());
    }

    #[test]
    fn grid_invariants() {
        assert!(Grid::new(Space::X, vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(Grid::new(Space::X, vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(Grid::new(Space::Z, vec![0.0, 1.6], vec![1.0, 1.0]).is_err());
        assert!(Grid::new(Space::Z, vec![0.0, 1.5], vec![1.0, 1.0]).is_ok());
    }

    fn z_grid(values: impl Fn(f64) -> f64) -> Grid<f64> {
        let pts = default_z_points(4001, 1e-6).unwrap();
        let vals = pts.iter().map(|&z| values(z)).collect();
        Grid::new(Space::Z, pts, vals).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let zero = pullback_wavefunction(&z_grid(|_| 0.0)).unwrap();
        assert!(zero.values().iter().all(|&v| v == 0.0));

        let psi = pullback_wavefunction(&z_grid(|z| z.cos().powf(1.5))).unwrap();
        for (&x, &v) in psi.points().iter().zip(psi.values()) {
            let s = 1.0 / x.cosh();
            assert!((v - s * s).abs() < 1e-12);
        }
        let psi = pullback_wavefunction(&z_grid(|z| z.cos().powf(1.5) * z.sin())).unwrap();
        for (&x, &v) in psi.points().iter().zip(psi.values()) {
            let s = 1.0 / x.cosh();
            assert!((v - s * s * x.tanh()).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_examples() {
        let pts = linspace(0.0, 1.0, 1001);
        let zero = Grid::new(Space::X, pts.clone(), vec![0.0; 1001]).unwrap();
        assert_eq!(l2_norm(&zero), 0.0);
        let one = Grid::new(Space::X, pts, vec![1.0; 1001]).unwrap();
        assert!((l2_norm(&one) - 1.0).abs() < 1e-10);

        // int sech^4 = 4/3 on the real line.
        let pts = linspace(-20.0, 20.0, 4001);
        let vals = pts.iter().map(|x| 1.0 / x.cosh().powi(2)).collect();
        let g = Grid::new(Space::X, pts, vals).unwrap();
        assert!((l2_norm(&g) - (4.0f64 / 3.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x + 0.25 * x * x * x;
        let exact = |x: f64| x - x * x + x * x * x / 6.0 + x.powi(4) / 16.0;
        for n in [4usize, 5, 10, 11] {
            let pts = linspace(-1.0, 2.0, n);
            let vals: Vec<f64> = pts.iter().map(|&x| f(x)).collect();
            assert!((integrate(&pts, &vals) - (exact(2.0) - exact(-1.0))).abs() < 1e-12);
        }
        // Nonuniform: exact for quadratics with either parity of point count.
        let g = |x: f64| 3.0 + x - 2.0 * x * x;
        let gi = |x: f64| 3.0 * x + 0.5 * x * x - 2.0 * x * x * x / 3.0;
        for n in [6usize, 7] {
            let pts: Vec<f64> = (0..n).map(|i| (i as f64 / (n - 1) as f64).powi(2)).collect();
            let vals: Vec<f64> = pts.iter().map(|&x| g(x)).collect();
            assert!((integrate(&pts, &vals) - (gi(1.0) - gi(0.0))).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn interpolation_of_smooth_data() {
        let pts = linspace(0.0, 2.0, 201);
        let vals: Vec<f64> = pts.iter().map(|x| x.sin()).collect();
        for &q in &[0.0, 0.013, 1.0, 1.999, 2.0] {
            let v = interpolate_uniform(0.0, 0.01, &vals, q, f64::NAN);
            assert!((v - q.sin()).abs() < 1e-13);
        }
        assert_eq!(interpolate_uniform(0.0, 0.01, &vals, 2.5, 0.0), 0.0);
    }

    proptest! {
        #[test]
        fn round_trip(x in -15.0..15.0f64) {
            // Absolute rounding in z near pi/2 is amplified by dx/dz = 1/cos z.
            let z = z_of_x(x);
            let bound = 1e-12f64.max(4.0 * f64::EPSILON * FRAC_PI_2 / z.cos());
            prop_assert!((x_of_z(z).unwrap() - x).abs() <= bound);
        }

        #[test]
        fn monotone_and_odd(x in -30.0..30.0f64, dx in 1e-3..1.0f64) {
            prop_assert!(z_of_x(x + dx) > z_of_x(x));
            prop_assert_eq!(z_of_x(-x), -z_of_x(x));
        }

        #[test]
        fn pullback_preserves_norm(k in 0usize..6, w in 0.5..3.0f64) {
            // phi vanishes at the endpoints like the solver's states.
            let phi = z_grid(|z| z.cos().powf(1.5) * (w * z + k as f64).cos());
            let psi = pullback_wavefunction(&phi).unwrap();
            prop_assert!((l2_norm(&phi) - l2_norm(&psi)).abs() <= 1e-8);
        }

        #[test]
        fn pullback_preserves_parity(k in 0usize..4, odd in proptest::bool::ANY) {
            let phi = z_grid(|z| {
                let e = z.cos().powf(1.5) * ((k + 1) as f64 * z).cos();
                if odd { e * z.sin() } else { e }
            });
            let psi = pullback_wavefunction(&phi).unwrap();
            let v = psi.values();
            let n = v.len();
            let sign = if odd { -1.0 } else { 1.0 };
            for i in 0..n {
                prop_assert!((v[i] - sign * v[n - 1 - i]).abs() <= 1e-12);
            }
        }
    }
}
