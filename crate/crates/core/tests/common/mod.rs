#![allow(dead_code)]

use pdm_core::PotentialParams;

/// `(0, -500, 500)`: Manning double well.
pub fn manning() -> PotentialParams {
    PotentialParams::new(0.0, -500.0, 500.0).unwrap()
}

/// `(60, -500, 500)`.
pub fn manning_a60() -> PotentialParams {
    PotentialParams::new(60.0, -500.0, 500.0).unwrap()
}

/// `(800, -sqrt(4 * 800 * 449), 449)`: triple well with a zero central barrier.
pub fn triple() -> PotentialParams {
    PotentialParams::zero_barrier_triple(800.0, 449.0).unwrap()
}

pub const MANNING_PDM: [f64; 6] = [
    -102.2591396905,
    -102.2558018532,
    -61.458167627,
    -61.3388827970,
    -25.941953553,
    -24.202065000,
];

/// Second entry as printed is `-109.9940489854443`; the digits match the
/// computed `-109.940489854` once the repeated `9` is dropped.
pub const MANNING_CM: [f64; 14] = [
    -109.9412221188093,
    -109.940489854443,
    -81.887958347499,
    -81.875584128810,
    -57.567702358602,
    -57.474984727067,
    -37.240150270295,
    -36.841246822072,
    -21.195042009000,
    -20.147434878873,
    -9.457236339000,
    -7.8621835775695,
    -2.02308205000,
    -0.961473079820,
];

pub const A60_PDM: [f64; 8] = [
    -113.818781855,
    -113.7572364242,
    -79.9396818103,
    -78.1858715300,
    -55.2994525270,
    -44.8009029700,
    -26.8437685530,
    -9.3961914300,
];

/// The fourteen deepest constant-mass levels of `(60, -500, 500)`.
pub const A60_CM: [f64; 14] = [
    -119.74469342961597,
    -119.7247052343852,
    -93.74280924014700,
    -93.3985291361313,
    -72.4166803691808,
    -70.0578863544200,
    -55.5196963894542,
    -49.0703204490206,
    -38.5023159579192,
    -30.432820320680,
    -22.074924478020,
    -15.125970648791,
    -9.091694203800,
    -4.5142592000,
];

pub const TRIPLE_PDM: [f64; 4] = [-31.3132652539, -27.0691086460, -26.8175802300, -2.05157297020];

pub const TRIPLE_CM: [f64; 10] = [
    -40.0750771677640,
    -40.0731076274700,
    -31.8627686815140,
    -23.0630939687000,
    -23.0065594776400,
    -10.6509913784700,
    -10.3287500184298,
    -3.936337196700,
    -2.361296623000,
    -0.782147401000,
];

/// Relative `1e-4`, or absolute `1e-3` below `|E| = 1`.
pub fn close(computed: f64, reference: f64) -> bool {
    let d = (computed - reference).abs();
    if reference.abs() < 1.0 {
        d <= 1e-3
    } else {
        d <= 1e-4 * reference.abs()
    }
}

pub fn assert_matches(computed: &[f64], reference: &[f64]) {
    assert_eq!(computed.len(), reference.len(), "{computed:?}");
    for (c, r) in computed.iter().zip(reference) {
        assert!(close(*c, *r), "computed {c} vs reference {r}");
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
