//! Linear algebra in three-dimensional Minkowski space.
//!
//! Index 0 is always the time-like axis, so the form has signature `(-,+,+)`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tol;

/// Signature constants `J = diag(-1, 1, 1)`.
pub const SIGNATURE: [f64; 3] = [-1.0, 1.0, 1.0];

/// A vector in `M^3`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MVec(pub [f64; 3]);

impl MVec {
    pub const ZERO: MVec = MVec([0.0; 3]);

    pub fn new(x0: f64, x1: f64, x2: f64) -> Self {
        debug_assert!(x0.is_finite() && x1.is_finite() && x2.is_finite());
        MVec([x0, x1, x2])
    }

    pub fn x0(&self) -> f64 {
        self.0[0]
    }

    pub fn x1(&self) -> f64 {
        self.0[1]
    }

    pub fn x2(&self) -> f64 {
        self.0[2]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Minkowski inner product with `other`.
    pub fn dot(&self, other: &MVec) -> f64 {
        inner(*self, *other)
    }

    /// Minkowski squared norm `<v,v>`.
    pub fn norm2(&self) -> f64 {
        inner(*self, *self)
    }

    /// Euclidean squared length of the coordinate vector.
    pub fn euclid2(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn euclid(&self) -> f64 {
        self.euclid2().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Component-wise product, used for diagonal operators.
    pub fn hadamard(&self, d: [f64; 3]) -> MVec {
        MVec([self.0[0] * d[0], self.0[1] * d[1], self.0[2] * d[2]])
    }

    /// `J v`, the coordinate vector of the dual covector `v* = <v, .>`.
    pub fn lowered(&self) -> MVec {
        self.hadamard(SIGNATURE)
    }

    /// Euclidean cross product of coordinate vectors.
    pub fn cross(&self, o: &MVec) -> MVec {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        MVec([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn distance(&self, o: &MVec) -> f64 {
        (*self - *o).euclid()
    }
}

impl Index<usize> for MVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for MVec {
    type Output = MVec;
    fn add(self, o: MVec) -> MVec {
        MVec([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for MVec {
    fn add_assign(&mut self, o: MVec) {
        *self = *self + o;
    }
}

impl Sub for MVec {
    type Output = MVec;
    fn sub(self, o: MVec) -> MVec {
        MVec([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        MVec([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for MVec {
    type Output = MVec;
    fn mul(self, s: f64) -> MVec {
        MVec([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<MVec> for f64 {
    type Output = MVec;
    fn mul(self, v: MVec) -> MVec {
        v * self
    }
}

impl From<[f64; 3]> for MVec {
    fn from(a: [f64; 3]) -> Self {
        MVec(a)
    }
}

impl fmt::Display for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalClass {
    SpaceLike,
    LightLike,
    TimeLike,
    Zero,
}

impl CausalClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CausalClass::SpaceLike => "space-like",
            CausalClass::LightLike => "light-like",
            CausalClass::TimeLike => "time-like",
            CausalClass::Zero => "zero",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "space-like" | "space" => Some(CausalClass::SpaceLike),
            "light-like" | "light" => Some(CausalClass::LightLike),
            "time-like" | "time" => Some(CausalClass::TimeLike),
            "zero" => Some(CausalClass::Zero),
            _ => None,
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The bivector `x ^ y` stored by its coordinate components `w_ij = x_i y_j - x_j y_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bivector {
    pub w01: f64,
    pub w02: f64,
    pub w12: f64,
}

impl Bivector {
    /// Minkowski squared norm written in coordinates: `-w12^2 + w02^2 + w01^2`.
    pub fn norm2(&self) -> f64 {
        -self.w12 * self.w12 + self.w02 * self.w02 + self.w01 * self.w01
    }

    pub fn euclid2(&self) -> f64 {
        self.w12 * self.w12 + self.w02 * self.w02 + self.w01 * self.w01
    }

    pub fn scaled(&self, s: f64) -> Bivector {
        Bivector {
            w01: self.w01 * s,
            w02: self.w02 * s,
            w12: self.w12 * s,
        }
    }
}

/// `<x,y> = -x0 y0 + x1 y1 + x2 y2`.
pub fn inner(x: MVec, y: MVec) -> f64 {
    -x.0[0] * y.0[0] + x.0[1] * y.0[1] + x.0[2] * y.0[2]
}

/// Causal class with the default relative light-cone threshold.
pub fn causal_class(v: MVec) -> CausalClass {
    causal_class_with(v, tol::CAUSAL)
}

/// Causal class where `|<v,v>| <= eps * |v|^2_euclid` counts as light-like.
pub fn causal_class_with(v: MVec, eps: f64) -> CausalClass {
    let e2 = v.euclid2();
    if e2 == 0.0 {
        return CausalClass::Zero;
    }
    let n = v.norm2();
    if n.abs() <= eps * e2 {
        CausalClass::LightLike
    } else if n > 0.0 {
        CausalClass::SpaceLike
    } else {
        CausalClass::TimeLike
    }
}

pub fn wedge(x: MVec, y: MVec) -> Bivector {
    Bivector {
        w01: x.0[0] * y.0[1] - x.0[1] * y.0[0],
        w02: x.0[0] * y.0[2] - x.0[2] * y.0[0],
        w12: x.0[1] * y.0[2] - x.0[2] * y.0[1],
    }
}

/// `|x ^ y|^2 = <x,y>^2 - <x,x><y,y>`.
pub fn wedge_norm2(x: MVec, y: MVec) -> f64 {
    let xy = inner(x, y);
    xy * xy - inner(x, x) * inner(y, y)
}

pub fn on_hyperboloid(x: MVec, tol: f64) -> bool {
    (x.norm2() - 1.0).abs() <= tol
}

/// Scales `x` back onto `<x,x> = 1`.
pub fn renormalize_to_h(x: MVec) -> Result<MVec> {
    let n = x.norm2();
    if n <= tol::CAUSAL * x.euclid2().max(f64::MIN_POSITIVE) {
        return Err(Error::NonPositiveNorm(n));
    }
    Ok(x * (1.0 / n.sqrt()))
}
