//! Conserved quantities of a chord: the integrals `F_j`, the function `phi_mu` and
//! the caustic parameter `nu`.

use std::fmt;

use crate::confocal::TableParams;
use crate::error::{Error, Result};
use crate::geodesic::{normalize_direction, tangent_basis, Domain};
use crate::mink::{inner, wedge, Bivector, MVec, SIGNATURE};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integrals {
    pub f: [f64; 3],
}

impl Integrals {
    pub fn sum(&self) -> f64 {
        self.f.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Projective representative scaled to unit max-norm, sign fixed so the
    /// largest-magnitude entry is positive.
    pub fn ratios(&self) -> [f64; 3] {
        let m = self.max_abs();
        if m == 0.0 {
            return [0.0; 3];
        }
        let lead = self
            .f
            .iter()
            .copied()
            .fold(0.0_f64, |a, v| if v.abs() > a.abs() { v } else { a });
        let s = lead.signum() / m;
        [self.f[0] * s, self.f[1] * s, self.f[2] * s]
    }
}

/// `F_j = sum_{i != j} J_i J_j (x_i y_j - x_j y_i)^2 / (a_j - a_i)`.
pub fn integrals(t: &TableParams, x: MVec, y: MVec) -> Integrals {
    let a = t.a();
    let mut f = [0.0; 3];
    for (j, fj) in f.iter_mut().enumerate() {
        for i in (0..3).filter(|&i| i != j) {
            let w = x[i] * y[j] - x[j] * y[i];
            *fj += SIGNATURE[i] * SIGNATURE[j] * w * w / (a[j] - a[i]);
        }
    }
    Integrals { f }
}

/// Both closed forms of `phi_mu(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiForms {
    /// `<R x, y>^2 - <R x, x><R y, y>` with `R = (A - mu I)^{-1}`.
    pub resolvent: f64,
    /// `sum_i F_i / (a_i - mu)`.
    pub partial_fractions: f64,
}

pub fn phi_mu_forms(t: &TableParams, x: MVec, y: MVec, mu: f64) -> Result<PhiForms> {
    if t.is_pole(mu) {
        return Err(Error::PoleParameter(mu));
    }
    let a = t.a();
    let r = [1.0 / (a[0] - mu), 1.0 / (a[1] - mu), 1.0 / (a[2] - mu)];
    let rx = x.hadamard(r);
    let ry = y.hadamard(r);
    let rxy = inner(rx, y);
    let resolvent = rxy * rxy - inner(rx, x) * inner(ry, y);
    let f = integrals(t, x, y).f;
    let partial_fractions = (0..3).map(|i| f[i] * r[i]).sum();
    Ok(PhiForms {
        resolvent,
        partial_fractions,
    })
}

pub fn phi_mu(t: &TableParams, x: MVec, y: MVec, mu: f64) -> Result<f64> {
    phi_mu_forms(t, x, y, mu).map(|p| p.resolvent)
}

/// Caustic parameter of a chord: a real `nu`, or the caustic at infinity shared by
/// all light-like chords.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Caustic {
    Finite(f64),
    Infinite,
}

impl Caustic {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Caustic::Finite(v) => Some(*v),
            Caustic::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Caustic::Infinite)
    }
}

impl fmt::Display for Caustic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caustic::Finite(v) => write!(f, "{v}"),
            Caustic::Infinite => f.write_str("inf"),
        }
    }
}

/// Relative size of the wedge norm below which a chord counts as light-like.
const LIGHT_CHORD: f64 = 1e-10;

fn caustic_of_bivector(t: &TableParams, w: &Bivector) -> Caustic {
    let a = t.a();
    let (s01, s02, s12) = (w.w01 * w.w01, w.w02 * w.w02, w.w12 * w.w12);
    let den = -s12 + s02 + s01;
    let num = -a[0] * s12 + a[1] * s02 + a[2] * s01;
    if den.abs() <= LIGHT_CHORD * (s01 + s02 + s12) {
        Caustic::Infinite
    } else {
        Caustic::Finite(num / den)
    }
}

/// `nu = (-a0 w12^2 + a1 w02^2 + a2 w01^2) / (-w12^2 + w02^2 + w01^2)` for `w = x ^ y`.
pub fn caustic_nu(t: &TableParams, x: MVec, y: MVec) -> Caustic {
    caustic_of_bivector(t, &wedge(x, y))
}

/// Inward directions at boundary point `x` whose geodesic is tangent to the confocal
/// conic `C_nu`. Pass `Caustic::Infinite` for the light-like directions.
pub fn direction_for_caustic(
    t: &TableParams,
    x: MVec,
    nu: Caustic,
    domain: Domain,
) -> Result<Vec<MVec>> {
    let a = t.a();
    let weights = match nu {
        Caustic::Finite(v) => {
            if t.is_pole(v) {
                return Err(Error::PoleParameter(v));
            }
            // Components ordered (w01, w02, w12).
            [a[2] - v, a[1] - v, -(a[0] - v)]
        }
        Caustic::Infinite => [1.0, 1.0, -1.0],
    };
    let (u, n) = tangent_basis(t, x)?;
    let n = normalize_direction(n);
    let wu = wedge(x, u);
    let wn = wedge(x, n);
    let form = |p: &Bivector, q: &Bivector| {
        weights[0] * p.w01 * q.w01 + weights[1] * p.w02 * q.w02 + weights[2] * p.w12 * q.w12
    };
    let (faa, fab, fbb) = (form(&wu, &wu), form(&wu, &wn), form(&wn, &wn));
    let scale = faa.abs().max(fab.abs()).max(fbb.abs());
    if scale == 0.0 {
        return Ok(vec![]);
    }
    let disc = fab * fab - faa * fbb;
    if disc < -1e-14 * scale * scale {
        return Ok(vec![]);
    }
    let sq = disc.max(0.0).sqrt();
    // Solve faa al^2 + 2 fab al be + fbb be^2 = 0 on the better-conditioned chart.
    let mut coeffs: Vec<(f64, f64)> = Vec::new();
    let signs: &[f64] = if sq <= 1e-9 * scale {
        &[1.0]
    } else {
        &[1.0, -1.0]
    };
    for &s in signs {
        if faa.abs() >= fbb.abs() {
            coeffs.push(((-fab + s * sq) / faa, 1.0));
        } else {
            coeffs.push((1.0, (-fab + s * sq) / fbb));
        }
    }
    let mut out = Vec::new();
    for (al, be) in coeffs {
        let v = u * al + n * be;
        // d/dt <A^{-1}x, x> along the geodesic is 2 <n, v>; grazing solutions are dropped.
        let dq = inner(n, v);
        if dq.abs() <= 1e-12 * v.euclid() * n.euclid() {
            continue;
        }
        let v = if domain.sign() * dq > 0.0 { v } else { -v };
        out.push(normalize_direction(v));
    }
    Ok(out)
}
