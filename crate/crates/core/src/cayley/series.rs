//! Normalized square-root power series and the Hankel determinants built from them.

use crate::confocal::TableParams;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sqrt((X-a0)(X-a1)(X-a2)(X-nu))`
    B,
    /// `sqrt((X-a0)(X-a1)(X-a2)/(X-nu))`
    D,
    /// `sqrt((X-a0)(X-a1)(X-a2))`
    E,
}

/// Taylor coefficients at `X = 0`, divided by the constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoeffs {
    pub kind: SeriesKind,
    pub coeffs: Vec<f64>,
    /// Highest power kept; `coeffs.len() == order + 1`.
    pub order: usize,
}

/// Multiplies two polynomials given by ascending coefficients.
pub fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients `0..=order` of `p/q`.
fn series_div(p: &[f64], q: &[f64], order: usize) -> Vec<f64> {
    let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
    let mut out = vec![0.0; order + 1];
    for k in 0..=order {
        let mut s = at(p, k);
        for i in 1..=k {
            s -= at(q, i) * out[k - i];
        }
        out[k] = s / q[0];
    }
    out
}

/// Coefficients of `sqrt(f)` for a series with `f[0] = 1`, from `y^2 = f`.
fn sqrt_unit(f: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; f.len()];
    y[0] = 1.0;
    for k in 1..f.len() {
        let cross: f64 = (1..k).map(|i| y[i] * y[k - i]).sum();
        y[k] = (f[k] - cross) / 2.0;
    }
    y
}

/// Taylor coefficients up to `X^order` of `sqrt(p_num/p_den) / sqrt(p_num(0)/p_den(0))`.
pub fn sqrt_series(p_num: &[f64], p_den: &[f64], order: usize) -> Result<Vec<f64>> {
    let n0 = p_num.first().copied().unwrap_or(0.0);
    let d0 = p_den.first().copied().unwrap_or(0.0);
    if n0 == 0.0 || d0 == 0.0 || !(n0 / d0).is_finite() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut f = series_div(p_num, p_den, order);
    let c = f[0];
    for v in &mut f {
        *v /= c;
    }
    Ok(sqrt_unit(&f))
}

/// `1 - X/r`, the factor `X - r` divided by its value at 0.
fn unit_factor(inv_r: f64) -> [f64; 2] {
    [1.0, -inv_r]
}

/// Series for the given kind with the caustic entering through `s = 1/nu` and `X`
/// rescaled by `rho` (the zero locus in `nu` does not depend on `rho`).
fn series_scaled(t: &TableParams, kind: SeriesKind, s: f64, rho: f64, order: usize) -> Vec<f64> {
    let mut num = vec![1.0];
    for ai in t.a() {
        num = poly_mul(&num, &unit_factor(1.0 / (ai * rho)));
    }
    let caustic = unit_factor(s / rho);
    let (num, den) = match kind {
        SeriesKind::B => (poly_mul(&num, &caustic), vec![1.0]),
        SeriesKind::D => (num, caustic.to_vec()),
        SeriesKind::E => (num, vec![1.0]),
    };
    // Constant terms are 1 by construction.
    sqrt_series(&num, &den, order).expect("unit constant term")
}

/// Normalized series `B^`, `D^` or `E^` (the caustic is ignored for `E`).
pub fn table_series(
    t: &TableParams,
    kind: SeriesKind,
    nu: f64,
    order: usize,
) -> Result<SeriesCoeffs> {
    if kind != SeriesKind::E && nu == 0.0 {
        return Err(Error::PoleParameter(nu));
    }
    let s = if kind == SeriesKind::E { 0.0 } else { 1.0 / nu };
    Ok(SeriesCoeffs {
        kind,
        coeffs: series_scaled(t, kind, s, 1.0, order),
        order,
    })
}

/// Determinant by LU with partial pivoting.
pub fn det_lu(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))
            .unwrap();
        if m[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = row[k] / pivot[k];
            for (r, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *r -= f * p;
            }
        }
    }
    det
}

/// `det [c_{first+i+j}]_{i,j<size}`.
pub fn hankel(c: &[f64], first: usize, size: usize) -> f64 {
    det_lu(
        (0..size)
            .map(|i| (0..size).map(|j| c[first + i + j]).collect())
            .collect(),
    )
}

/// Which Cayley determinant to evaluate, fixed by the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Period `2m`: `(m-1) x (m-1)` array of `B^_3 .. B^_{2m-1}`.
    Even(usize),
    /// Period `2m+1`: `m x m` array of `D^_2 .. D^_{2m}`.
    Odd(usize),
    /// Light-like period `2m`: `(m-1) x (m-1)` array of `E^_3 .. E^_{2m-1}`.
    Light(usize),
}

impl Condition {
    pub fn for_period(n: usize) -> Result<Self> {
        match n {
            0..=2 => Err(Error::InvalidArgument(format!(
                "period must be at least 3, got {n}"
            ))),
            n if n % 2 == 0 => Ok(Condition::Even(n / 2)),
            n => Ok(Condition::Odd(n / 2)),
        }
    }

    fn kind(&self) -> SeriesKind {
        match self {
            Condition::Even(_) => SeriesKind::B,
            Condition::Odd(_) => SeriesKind::D,
            Condition::Light(_) => SeriesKind::E,
        }
    }

    fn layout(&self) -> (usize, usize) {
        match *self {
            Condition::Even(m) | Condition::Light(m) => (3, m - 1),
            Condition::Odd(m) => (2, m),
        }
    }

    /// Determinant with `s = 1/nu`; `rho` rescales `X`. A polynomial in `s`, so the
    /// table parameters are not special here.
    pub(crate) fn eval_s(&self, t: &TableParams, s: f64, rho: f64) -> f64 {
        let (first, size) = self.layout();
        let c = series_scaled(t, self.kind(), s, rho, 2 * size + first);
        hankel(&c, first, size)
    }

    /// Determinant after rescaling `X` so every factor `1 - X/r` has `|1/r| <= 1`.
    /// Differs from the raw value by a positive factor only.
    pub(crate) fn eval_s_normalized(&self, t: &TableParams, s: f64) -> f64 {
        let mut rho = t.a().iter().fold(0.0_f64, |m, a| m.max(1.0 / a.abs()));
        if self.kind() != SeriesKind::E {
            rho = rho.max(s.abs());
        }
        self.eval_s(t, s, rho)
    }

    fn check(&self, t: &TableParams, nu: f64) -> Result<()> {
        let ok = match *self {
            Condition::Even(m) | Condition::Light(m) => m >= 2,
            Condition::Odd(m) => m >= 1,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "{self:?} has an empty determinant"
            )));
        }
        if self.kind() != SeriesKind::E && (nu == 0.0 || t.is_pole(nu)) {
            return Err(Error::PoleParameter(nu));
        }
        Ok(())
    }

    pub fn eval(&self, t: &TableParams, nu: f64) -> Result<f64> {
        self.check(t, nu)?;
        Ok(self.eval_s(t, 1.0 / nu, 1.0))
    }

    pub fn eval_normalized(&self, t: &TableParams, nu: f64) -> Result<f64> {
        self.check(t, nu)?;
        Ok(self.eval_s_normalized(t, 1.0 / nu))
    }
}

pub fn hankel_det_even(t: &TableParams, nu: f64, m: usize) -> Result<f64> {
    Condition::Even(m).eval(t, nu)
}

pub fn hankel_det_odd(t: &TableParams, nu: f64, m: usize) -> Result<f64> {
    Condition::Odd(m).eval(t, nu)
}

pub fn hankel_det_light(t: &TableParams, m: usize) -> Result<f64> {
    Condition::Light(m).eval(t, f64::INFINITY)
}

pub fn hankel_det_light_normalized(t: &TableParams, m: usize) -> Result<f64> {
    Condition::Light(m).eval_normalized(t, f64::INFINITY)
}
