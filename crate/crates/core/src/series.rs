//! Power series in `t` truncated after the quadratic term.
//!
//! Every second-order quantity of the model is stored as `c0 + c1 t + c2 t^2`.
//! Products drop `t^3` and higher, and [`Series::abs`] expands the modulus
//! about the leading nonzero order, so criteria built from moduli come out as
//! exact second-order polynomials.

use num_complex::Complex64 as C64;
use serde::Serialize;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Truncated series `c[0] + c[1] t + c[2] t^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Series<T> {
    pub c: [T; 3],
}

pub type CSeries = Series<C64>;
pub type RSeries = Series<f64>;

impl<T: Copy> Series<T> {
    pub const fn new(c0: T, c1: T, c2: T) -> Self {
        Series { c: [c0, c1, c2] }
    }
}

impl<T> Series<T>
where
    T: Copy + Add<Output = T> + Mul<Output = T> + Mul<f64, Output = T>,
{
    /// Value at time `t`.
    pub fn eval(&self, t: f64) -> T {
        self.c[0] + self.c[1] * t + self.c[2] * (t * t)
    }
}

impl RSeries {
    pub const ZERO: RSeries = Series { c: [0.0; 3] };

    pub fn constant(x: f64) -> Self {
        Series::new(x, 0.0, 0.0)
    }

    pub fn quadratic(x: f64) -> Self {
        Series::new(0.0, 0.0, x)
    }

    pub fn to_complex(self) -> CSeries {
        Series::new(self.c[0].into(), self.c[1].into(), self.c[2].into())
    }

    /// True when every coefficient is within `tol` of zero.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.c.iter().all(|x| x.abs() <= tol)
    }
}

impl CSeries {
    pub const ZERO: CSeries = Series { c: [C64 { re: 0.0, im: 0.0 }; 3] };

    pub fn constant(z: C64) -> Self {
        Series::new(z, C64::default(), C64::default())
    }

    pub fn linear(z: C64) -> Self {
        Series::new(C64::default(), z, C64::default())
    }

    pub fn quadratic(z: C64) -> Self {
        Series::new(C64::default(), C64::default(), z)
    }

    pub fn conj(&self) -> Self {
        Series::new(self.c[0].conj(), self.c[1].conj(), self.c[2].conj())
    }

    pub fn re(&self) -> RSeries {
        Series::new(self.c[0].re, self.c[1].re, self.c[2].re)
    }

    /// `|z|^2` truncated.
    pub fn norm_sqr(&self) -> RSeries {
        (*self * self.conj()).re()
    }

    /// Modulus for `t >= 0`, expanded about the leading nonzero coefficient.
    pub fn abs(&self) -> RSeries {
        let [z0, z1, z2] = self.c;
        if z0 != C64::default() {
            let m = z0.norm();
            let r1 = (z0.conj() * z1).re;
            let c2 = (z0.conj() * z2).re / m + z1.norm_sqr() / (2.0 * m) - r1 * r1 / (2.0 * m * m * m);
            Series::new(m, r1 / m, c2)
        } else if z1 != C64::default() {
            let m = z1.norm();
            Series::new(0.0, m, (z1.conj() * z2).re / m)
        } else {
            Series::new(0.0, 0.0, z2.norm())
        }
    }

    /// Multiply by `exp(i w t)` expanded to second order.
    pub fn rotate(&self, w: f64) -> Self {
        if w == 0.0 {
            return *self;
        }
        let phase = Series::new(C64::new(1.0, 0.0), C64::new(0.0, w), C64::new(-0.5 * w * w, 0.0));
        *self * phase
    }
}

impl<T: Copy + Add<Output = T>> Add for Series<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Series::new(self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2])
    }
}

impl<T: Copy + Add<Output = T>> AddAssign for Series<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Copy + Sub<Output = T>> Sub for Series<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Series::new(self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2])
    }
}

impl<T: Copy + Neg<Output = T>> Neg for Series<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Series::new(-self.c[0], -self.c[1], -self.c[2])
    }
}

impl<T: Copy + Add<Output = T> + Mul<Output = T>> Mul for Series<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.c, o.c);
        Series::new(a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[1] * b[1] + a[2] * b[0])
    }
}

impl Mul<f64> for RSeries {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Series::new(self.c[0] * k, self.c[1] * k, self.c[2] * k)
    }
}

impl Mul<C64> for CSeries {
    type Output = Self;
    fn mul(self, k: C64) -> Self {
        Series::new(self.c[0] * k, self.c[1] * k, self.c[2] * k)
    }
}

impl Mul<f64> for CSeries {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Series::new(self.c[0] * k, self.c[1] * k, self.c[2] * k)
    }
}

impl Add<f64> for RSeries {
    type Output = Self;
    fn add(self, k: f64) -> Self {
        Series::new(self.c[0] + k, self.c[1], self.c[2])
    }
}
