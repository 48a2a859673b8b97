//! The potential family `V(x) = -a sech^6 x - b sech^4 x - c sech^2 x`, the
//! solitonic mass profile, operator-ordering bookkeeping and well-phase
//! classification.
//!
//! Units are scaled so that `hbar^2 / (2 m0) = 1` and the mass width `d = 1`
//! in every solver; energies and coefficients are therefore the scaled
//! quantities that appear in the z-space equation.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Parity of a state under `x -> -x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub fn from_nodes(nodes: usize) -> Self {
        if nodes.is_multiple_of(2) {
            Parity::Symmetric
        } else {
            Parity::Antisymmetric
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Symmetric => "S",
            Parity::Antisymmetric => "A",
        }
    }

    pub fn both() -> [Parity; 2] {
        [Parity::Symmetric, Parity::Antisymmetric]
    }
}

/// Canonical coefficients of `V(x) = -a sech^6 x - b sech^4 x - c sech^2 x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "potential coefficients must be finite, got ({a}, {b}, {c})"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// `-b sech^4 x - c sech^2 x`.
    pub fn manning(b: f64, c: f64) -> Result<Self> {
        Self::new(0.0, b, c)
    }

    /// Three-term member with `b = -sqrt(4ac)`, where the barrier tops touch zero.
    pub fn zero_barrier_triple(a: f64, c: f64) -> Result<Self> {
        Self::new(a, -(4.0 * a * c).sqrt(), c)
    }

    /// Three-term member with `b = -sqrt(3ac)`, the onset of the triple-well phase.
    pub fn onset_triple(a: f64, c: f64) -> Result<Self> {
        Self::new(a, -(3.0 * a * c).sqrt(), c)
    }

    pub fn is_flat(&self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.c == 0.0
    }

    /// `V` as a function of `t = sech^2 x`.
    pub fn value_in_t(&self, t: f64) -> f64 {
        -t * (self.c + t * (self.b + t * self.a))
    }

    /// `dV/dt` with `t = sech^2 x`.
    pub fn slope_in_t(&self, t: f64) -> f64 {
        -(self.c + t * (2.0 * self.b + t * 3.0 * self.a))
    }

    /// `d^2V/dt^2`.
    pub fn curvature_in_t(&self, t: f64) -> f64 {
        -(2.0 * self.b + 6.0 * self.a * t)
    }

    /// Scale used by solvers to pick seeds and tolerances.
    pub fn magnitude(&self) -> f64 {
        self.a.abs() + self.b.abs() + self.c.abs()
    }
}

pub(crate) fn sech(x: f64) -> f64 {
    if x.abs() > 710.0 {
        0.0
    } else {
        1.0 / x.cosh()
    }
}

pub fn potential_at(p: &PotentialParams, x: f64) -> f64 {
    let s = sech(x);
    p.value_in_t(s * s)
}

/// `dV/dx`.
pub fn potential_derivative_at(p: &PotentialParams, x: f64) -> f64 {
    let s = sech(x);
    let t = s * s;
    // dt/dx = -2 t tanh x
    p.slope_in_t(t) * (-2.0 * t * x.tanh())
}

/// `1/2 + 3/4 tan^2 z - a cos^6 z - b cos^4 z - c cos^2 z` on `|z| < pi/2`.
pub fn effective_potential_at(p: &PotentialParams, z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() >= FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "effective potential needs |z| < pi/2, got {z}"
        )));
    }
    let c2 = z.cos().powi(2);
    let tan = z.tan();
    Ok(0.5 + 0.75 * tan * tan + p.value_in_t(c2))
}

/// The same potential written in `t = pi/2 - |z|`, which keeps full relative
/// precision next to the singular endpoints.
pub fn effective_potential_in_t(p: &PotentialParams, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let cot = c / s;
    0.5 + 0.75 * cot * cot + p.value_in_t(s * s)
}

/// Solitonic mass distribution `m(x) = m0 sech^2(x/d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProfile {
    pub m0: f64,
    pub d: f64,
}

impl MassProfile {
    pub fn new(m0: f64, d: f64) -> Result<Self> {
        if !(m0.is_finite() && m0 > 0.0 && d.is_finite() && d > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mass profile needs m0 > 0 and d > 0, got m0 = {m0}, d = {d}"
            )));
        }
        Ok(Self { m0, d })
    }

    /// The profile used by every solver: `m0 = 1`, `d = 1`.
    pub fn unit() -> Self {
        Self { m0: 1.0, d: 1.0 }
    }

    /// `(m, m', m'')` at `x`.
    pub fn derivatives(&self, x: f64) -> (f64, f64, f64) {
        let u = x / self.d;
        let s = sech(u);
        let th = u.tanh();
        let m = self.m0 * s * s;
        let dm = -2.0 * m * th / self.d;
        let ddm = 2.0 * m * (3.0 * th * th - 1.0) / (self.d * self.d);
        (m, dm, ddm)
    }
}

pub fn mass_at(mp: &MassProfile, x: f64) -> f64 {
    let s = sech(x / mp.d);
    mp.m0 * s * s
}

/// von Roos ordering exponents, constrained by `alpha + beta + gamma = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl OrderingParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let sum = alpha + beta + gamma;
        if !(sum + 1.0).abs().le(&1e-12) {
            return Err(Error::InvalidParameter(format!(
                "ordering exponents must satisfy alpha + beta + gamma = -1, got sum {sum}"
            )));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// BenDaniel-Duke ordering, `(alpha, gamma) = (0, 1)`.
    pub fn ben_daniel_duke() -> Self {
        Self {
            alpha: 0.0,
            beta: -2.0,
            gamma: 1.0,
        }
    }

    /// The mirror BenDaniel-Duke solution, `(alpha, gamma) = (1, 0)`.
    pub fn ben_daniel_duke_mirror() -> Self {
        Self {
            alpha: 1.0,
            beta: -2.0,
            gamma: 0.0,
        }
    }
}

/// Kinematic potential generated by the mass gradient for a given ordering.
///
/// `U_K = -hbar^2 / (4 m^3) [ (alpha + gamma - 1) m m'' / 2 + (1 - alpha gamma - alpha - gamma) m'^2 ]`
/// with `hbar^2 = 2 m0`.
pub fn kinematic_potential_at(mp: &MassProfile, o: &OrderingParams, x: f64) -> f64 {
    let (m, dm, ddm) = mp.derivatives(x);
    let first = o.alpha + o.gamma - 1.0;
    let second = 1.0 - o.alpha * o.gamma - o.alpha - o.gamma;
    if first == 0.0 && second == 0.0 {
        return 0.0;
    }
    let hbar2 = 2.0 * mp.m0;
    -hbar2 / (4.0 * m * m * m) * (first * 0.5 * m * ddm + second * dm * dm)
}

/// Relative tolerance for the onset (`b^2 = 3ac`) and zero-barrier
/// (`b^2 = 4ac`) criteria.
pub const PHASE_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    SingleWell,
    DoubleWell,
    TripleWellOnset,
    TripleWellNegativeBarrier,
    TripleWellZeroBarrier,
    TripleWellPositiveBarrier,
    /// Purely repulsive member: the origin is a maximum and there is no well.
    NoWell,
}

impl PhaseKind {
    pub fn describe(self) -> &'static str {
        match self {
            PhaseKind::SingleWell => "single well",
            PhaseKind::DoubleWell => "double well",
            PhaseKind::TripleWellOnset => "triple-well onset",
            PhaseKind::TripleWellNegativeBarrier => "triple well, negative barrier",
            PhaseKind::TripleWellZeroBarrier => "triple well, zero barrier",
            PhaseKind::TripleWellPositiveBarrier => "triple well, positive barrier",
            PhaseKind::NoWell => "no well",
        }
    }

    pub fn is_multi_well(self) -> bool {
        !matches!(self, PhaseKind::SingleWell | PhaseKind::NoWell)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryKind {
    Minimum,
    Maximum,
    Inflection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub x: f64,
    pub value: f64,
    pub kind: StationaryKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WellPhase {
    pub kind: PhaseKind,
    /// All stationary points of `V` on the real line, increasing in `x`.
    pub stationary: Vec<StationaryPoint>,
}

impl WellPhase {
    /// Outermost minimum on `x > 0`, if any.
    pub fn outer_minimum(&self) -> Option<StationaryPoint> {
        self.stationary
            .iter()
            .rev()
            .find(|s| s.x > 0.0 && s.kind == StationaryKind::Minimum)
            .copied()
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign-change roots of `f` on `(0, 1]`, scanned on a uniform mesh and bisected.
fn roots_in_unit_interval<F: Fn(f64) -> f64>(f: F, mesh: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut t0 = 0.0;
    let mut f0 = f(t0);
    for i in 1..=mesh {
        let t1 = i as f64 / mesh as f64;
        let f1 = f(t1);
        if f1 == 0.0 {
            roots.push(t1);
        } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            roots.push(bisect(&f, t0, t1));
        }
        t0 = t1;
        f0 = f1;
    }
    roots.retain(|&t| t > 0.0 && t < 1.0);
    roots
}

fn x_of_t(t: f64) -> f64 {
    // sech^2 x = t
    (1.0 / t.sqrt()).acosh()
}

pub fn classify_wells(p: &PotentialParams) -> WellPhase {
    classify_wells_with_tol(p, PHASE_REL_TOL)
}

/// Classifies the phase of `V` from its stationary points, located in
/// `t = sech^2 x` where `dV/dt` is a quadratic.
pub fn classify_wells_with_tol(p: &PotentialParams, rel_tol: f64) -> WellPhase {
    if p.is_flat() {
        return WellPhase {
            kind: PhaseKind::SingleWell,
            stationary: Vec::new(),
        };
    }

    let scale = p.b * p.b;
    let tol = rel_tol * scale.max(1.0);
    let onset_like = p.a != 0.0 && (p.b * p.b - 3.0 * p.a * p.c).abs() <= tol;
    let zero_barrier_like = p.a != 0.0 && (p.b * p.b - 4.0 * p.a * p.c).abs() <= tol;

    // Each entry: (t, kind).
    let mut in_t: Vec<(f64, StationaryKind)> = Vec::new();
    if onset_like {
        // Double root of dV/dt: locate it as the root of d^2V/dt^2.
        let roots = roots_in_unit_interval(|t| p.curvature_in_t(t), 1024);
        if let Some(&t) = roots.first() {
            in_t.push((t, StationaryKind::Inflection));
        }
    } else {
        for t in roots_in_unit_interval(|t| p.slope_in_t(t), 4096) {
            // d2V/dx2 = d2V/dt2 (dt/dx)^2 at a stationary point; sign from curvature in t.
            let curv = p.curvature_in_t(t);
            let kind = if curv > 0.0 {
                StationaryKind::Minimum
            } else if curv < 0.0 {
                StationaryKind::Maximum
            } else {
                StationaryKind::Inflection
            };
            in_t.push((t, kind));
        }
    }

    // Origin: V(x) ~ V(1) - slope(1) x^2 near x = 0.
    let slope_at_origin = p.slope_in_t(1.0);
    let origin_kind = if slope_at_origin < 0.0 {
        StationaryKind::Minimum
    } else if slope_at_origin > 0.0 || p.curvature_in_t(1.0) > 0.0 {
        StationaryKind::Maximum
    } else {
        StationaryKind::Minimum
    };

    // Increasing x means decreasing t.
    in_t.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let positive: Vec<StationaryPoint> = in_t
        .iter()
        .map(|&(t, kind)| StationaryPoint {
            x: x_of_t(t),
            value: p.value_in_t(t),
            kind,
        })
        .collect();

    let kinds: Vec<StationaryKind> = positive.iter().map(|s| s.kind).collect();
    use StationaryKind::*;
    let kind = match (origin_kind, kinds.as_slice()) {
        (Minimum, []) | (Minimum, [Maximum]) => PhaseKind::SingleWell,
        (Minimum, [Inflection]) => PhaseKind::TripleWellOnset,
        (Minimum, [Maximum, Minimum]) => {
            let barrier = positive[0].value;
            if zero_barrier_like {
                PhaseKind::TripleWellZeroBarrier
            } else if barrier < 0.0 {
                PhaseKind::TripleWellNegativeBarrier
            } else {
                PhaseKind::TripleWellPositiveBarrier
            }
        }
        (Maximum, [Minimum]) | (Maximum, [Minimum, Maximum]) => PhaseKind::DoubleWell,
        (Maximum, _) => PhaseKind::NoWell,
        _ => PhaseKind::SingleWell,
    };

    let mut stationary: Vec<StationaryPoint> = positive
        .iter()
        .rev()
        .map(|s| StationaryPoint { x: -s.x, ..*s })
        .collect();
    stationary.push(StationaryPoint {
        x: 0.0,
        value: p.value_in_t(1.0),
        kind: origin_kind,
    });
    stationary.extend(positive.iter().copied());

    WellPhase { kind, stationary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MANNING: PotentialParams = PotentialParams {
        a: 0.0,
        b: -500.0,
        c: 500.0,
    };

    #[test]
    fn potential_examples() {
        assert_eq!(potential_at(&MANNING, 0.0), 0.0);
        let x_min = (2.0f64.sqrt()).acosh();
        assert!((potential_at(&MANNING, x_min) + 125.0).abs() < 1e-10);

        let p = PotentialParams::zero_barrier_triple(800.0, 449.0).unwrap();
        let expected = -800.0 + (4.0f64 * 800.0 * 449.0).sqrt() - 449.0;
        assert!((potential_at(&p, 0.0) - expected).abs() < 1e-12);
        assert!((expected + 50.3337).abs() < 1e-3);
    }

    #[test]
    fn effective_potential_examples() {
        let flat = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(effective_potential_at(&flat, 0.0).unwrap(), 0.5);
        assert!((effective_potential_at(&MANNING, 0.0).unwrap() - 0.5).abs() < 1e-12);
        let z = FRAC_PI_2 - 1e-3;
        let v = effective_potential_at(&MANNING, z).unwrap();
        let dominant = 0.75 * z.tan().powi(2);
        assert!((v / dominant - 1.0).abs() < 1e-5);
        assert!((v - 7.5e5).abs() / 7.5e5 < 1e-3);
        assert!(matches!(
            effective_potential_at(&MANNING, FRAC_PI_2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn t_form_matches_z_form() {
        for &z in &[0.1, 0.7, 1.2, 1.5, 1.57] {
            let t = FRAC_PI_2 - z;
            let lhs = effective_potential_in_t(&MANNING, t);
            let rhs = effective_potential_at(&MANNING, z).unwrap();
            assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn mass_examples() {
        let unit = MassProfile::unit();
        assert_eq!(mass_at(&unit, 0.0), 1.0);
        assert_eq!(mass_at(&unit, 1e4), 0.0);
        // 2 sech^2(1) from sech(1) = 2 / (e + 1/e) evaluated independently.
        let mp = MassProfile::new(2.0, 3.0).unwrap();
        assert!((mass_at(&mp, 3.0) - 0.839_948_683_228_052_3).abs() < 1e-14);
        assert!(MassProfile::new(0.0, 1.0).is_err());
    }

    #[test]
    fn mass_derivatives_match_finite_differences() {
        let mp = MassProfile::new(1.7, 0.8).unwrap();
        let h = 1e-5;
        for &x in &[-2.0, -0.3, 0.0, 0.9] {
            let (_, dm, ddm) = mp.derivatives(x);
            let fd1 = (mass_at(&mp, x + h) - mass_at(&mp, x - h)) / (2.0 * h);
            let fd2 = (mass_at(&mp, x + h) - 2.0 * mass_at(&mp, x) + mass_at(&mp, x - h)) / (h * h);
            assert!((dm - fd1).abs() < 1e-8);
            assert!((ddm - fd2).abs() < 1e-4);
        }
    }

    #[test]
    fn kinematic_examples() {
        let unit = MassProfile::unit();
        for &x in &[-3.0, 0.0, 0.5, 7.0] {
            assert_eq!(
                kinematic_potential_at(&unit, &OrderingParams::ben_daniel_duke(), x),
                0.0
            );
            assert_eq!(
                kinematic_potential_at(&unit, &OrderingParams::ben_daniel_duke_mirror(), x),
                0.0
            );
        }
        let o = OrderingParams::new(0.0, -1.0, 0.0).unwrap();
        assert!((kinematic_potential_at(&unit, &o, 0.0) + 0.5).abs() < 1e-14);
        assert!(OrderingParams::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_wells(&MANNING).kind, PhaseKind::DoubleWell);
        let onset = PotentialParams::onset_triple(240.0, 160.0).unwrap();
        assert_eq!(classify_wells(&onset).kind, PhaseKind::TripleWellOnset);
        let single = PotentialParams::new(0.0, 0.0, 500.0).unwrap();
        assert_eq!(classify_wells(&single).kind, PhaseKind::SingleWell);
        let flat = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        let phase = classify_wells(&flat);
        assert_eq!(phase.kind, PhaseKind::SingleWell);
        assert!(phase.stationary.is_empty());
    }

    #[test]
    fn triple_well_barriers() {
        let zero = PotentialParams::zero_barrier_triple(800.0, 449.0).unwrap();
        let phase = classify_wells(&zero);
        assert_eq!(phase.kind, PhaseKind::TripleWellZeroBarrier);
        let barrier = phase.stationary.iter().find(|s| s.x > 0.0).unwrap();
        assert!(barrier.value.abs() < 1e-8);

        let negative = PotentialParams::new(240.0, -360.0, 160.0).unwrap();
        assert_eq!(
            classify_wells(&negative).kind,
            PhaseKind::TripleWellNegativeBarrier
        );
        let positive = PotentialParams::new(240.0, -420.0, 160.0).unwrap();
        assert_eq!(
            classify_wells(&positive).kind,
            PhaseKind::TripleWellPositiveBarrier
        );
        let repulsive = PotentialParams::new(0.0, 0.0, -10.0).unwrap();
        assert_eq!(classify_wells(&repulsive).kind, PhaseKind::NoWell);
    }

    #[test]
    fn stationary_points_are_ordered_and_symmetric() {
        let p = PotentialParams::new(240.0, -400.0, 160.0).unwrap();
        let phase = classify_wells(&p);
        let xs: Vec<f64> = phase.stationary.iter().map(|s| s.x).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let n = xs.len();
        for i in 0..n {
            assert_eq!(xs[i], -xs[n - 1 - i]);
        }
    }

    proptest! {
        #[test]
        fn potential_is_even(a in -1e3..1e3f64, b in -1e3..1e3f64, c in -1e3..1e3f64, x in -20.0..20.0f64) {
            let p = PotentialParams::new(a, b, c).unwrap();
            prop_assert_eq!(potential_at(&p, x), potential_at(&p, -x));
        }

        #[test]
        fn potential_is_asymptotically_flat(a in -1e3..1e3f64, b in -1e3..1e3f64, c in -1e3..1e3f64) {
            let p = PotentialParams::new(a, b, c).unwrap();
            prop_assert!(potential_at(&p, 40.0).abs() < 1e-28 * (1.0 + p.magnitude()));
        }

        #[test]
        fn effective_potential_identity(a in -1e3..1e3f64, b in -1e3..1e3f64, c in -1e3..1e3f64, x in -12.0..12.0f64) {
            // cos z = sech x and tan z = sinh x under the gudermannian map.
            let p = PotentialParams::new(a, b, c).unwrap();
            let z = x.sinh().atan();
            let s = 1.0 / x.cosh();
            let closed = 0.5 + 0.75 * x.sinh().powi(2) - a * s.powi(6) - b * s.powi(4) - c * s * s;
            let v = effective_potential_at(&p, z).unwrap();
            // tan z inherits the rounding of z amplified by 1/cos z near pi/2.
            let cond = 1e-12f64.max(8.0 * f64::EPSILON / z.cos());
            prop_assert!((v - closed).abs() <= cond * (1.0 + closed.abs() + p.magnitude()));
        }

        #[test]
        fn bdd_kinematic_potential_vanishes(x in -10.0..10.0f64) {
            let unit = MassProfile::unit();
            prop_assert!(kinematic_potential_at(&unit, &OrderingParams::ben_daniel_duke(), x).abs() <= 1e-12);
            prop_assert!(kinematic_potential_at(&unit, &OrderingParams::ben_daniel_duke_mirror(), x).abs() <= 1e-12);
        }

        #[test]
        fn stationary_points_have_zero_slope(a in -1e3..1e3f64, b in -1e3..1e3f64, c in -1e3..1e3f64) {
            let p = PotentialParams::new(a, b, c).unwrap();
            for s in classify_wells(&p).stationary {
                let dv = potential_derivative_at(&p, s.x);
                prop_assert!(dv.abs() <= 1e-8 * (1.0 + s.value.abs()), "V'({}) = {}", s.x, dv);
            }
        }

        #[test]
        fn manning_minima(b in -2e3..-1.0f64, ratio in 0.02..0.98f64) {
            // -c / (2b) = ratio < 1
            let c = -2.0 * b * ratio;
            let p = PotentialParams::manning(b, c).unwrap();
            let phase = classify_wells(&p);
            prop_assert_eq!(phase.kind, PhaseKind::DoubleWell);
            let m = phase.outer_minimum().unwrap();
            let t = (1.0 / m.x.cosh()).powi(2);
            prop_assert!((t - ratio).abs() <= 1e-8);
        }
    }
}
