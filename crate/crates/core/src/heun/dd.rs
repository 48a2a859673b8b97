//! Double-double real and complex arithmetic (about 32 significant digits),
//! used where power series cancel heavily.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(crate) fn from_f64(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn recip(self) -> Dd {
        Dd::from_f64(1.0) / self
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from_f64(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct DdComplex {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl DdComplex {
    pub(crate) const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub(crate) fn from_c64(v: Complex64) -> Self {
        DdComplex {
            re: Dd::from_f64(v.re),
            im: Dd::from_f64(v.im),
        }
    }

    pub(crate) fn from_f64(v: f64) -> Self {
        DdComplex {
            re: Dd::from_f64(v),
            im: Dd::ZERO,
        }
    }

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn norm_f64(self) -> f64 {
        self.to_c64().norm()
    }

    pub(crate) fn scale(self, k: f64) -> Self {
        let k = Dd::from_f64(k);
        DdComplex {
            re: self.re * k,
            im: self.im * k,
        }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for DdComplex {
    type Output = DdComplex;
    fn div(self, o: DdComplex) -> DdComplex {
        let den = o.re * o.re + o.im * o.im;
        let inv = den.recip();
        let num = self
            * DdComplex {
                re: o.re,
                im: -o.im,
            };
        DdComplex {
            re: num.re * inv,
            im: num.im * inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries_digits_beyond_f64() {
        let third = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        let back = third * Dd::from_f64(3.0) - Dd::from_f64(1.0);
        assert!(back.to_f64().abs() < 1e-31);
        let big = Dd::from_f64(1e16) + Dd::from_f64(1.0);
        assert_eq!((big - Dd::from_f64(1e16)).to_f64(), 1.0);
    }

    #[test]
    fn complex_division_round_trips() {
        let a = DdComplex::from_c64(Complex64::new(1.5, -2.25));
        let b = DdComplex::from_c64(Complex64::new(-0.3, 0.7));
        let back = (a / b) * b - a;
        assert!(back.norm_f64() < 1e-30);
    }
}
