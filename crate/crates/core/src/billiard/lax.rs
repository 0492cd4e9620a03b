//! The Lax matrix `L(lambda) = A + lambda x ^ y` and the isospectrality check along a
//! trajectory.

use crate::confocal::TableParams;
use crate::error::{Error, Result};
use crate::mink::{wedge_norm2, MVec};

use super::Trajectory;

/// A 3x3 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaxMatrix(pub [[f64; 3]; 3]);

impl LaxMatrix {
    pub fn det(&self) -> f64 {
        det3(&self.0)
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Sum of the principal 2x2 minors.
    pub fn minor_sum(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[1][1] * m[2][2]
            - m[1][2] * m[2][1]
    }

    /// `(tr L, sum of principal minors, det L)`, which fix the characteristic polynomial.
    pub fn char_coeffs(&self) -> [f64; 3] {
        [self.trace(), self.minor_sum(), self.det()]
    }

    /// `det(L - mu I)`.
    pub fn det_shifted(&self, mu: f64) -> f64 {
        let mut m = self.0;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= mu;
        }
        det3(&m)
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `L_ij = A_ij + lambda (x_i (J y)_j - y_i (J x)_j)`.
pub fn lax_matrix(t: &TableParams, lambda: f64, x: MVec, y: MVec) -> LaxMatrix {
    let a = t.a();
    let (jx, jy) = (x.lowered(), y.lowered());
    let mut m = [[0.0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = lambda * (x[i] * jy[j] - y[i] * jx[j]);
        }
        row[i] += a[i];
    }
    LaxMatrix(m)
}

/// Scale factors `s_k` (with `s_0 = 1`) making `|s_k x_k ^ s_{k+1} x_{k+1}|^2` equal
/// to `|x_0 ^ x_1|^2` along the whole point sequence.
pub fn wedge_rescaling(points: &[MVec]) -> Result<Vec<f64>> {
    let mut scales = vec![1.0];
    if points.len() < 2 {
        return Ok(scales);
    }
    let target = wedge_norm2(points[0], points[1]);
    for k in 0..points.len() - 1 {
        let sk = scales[k];
        let w = wedge_norm2(points[k] * sk, points[k + 1]);
        let scale = points[k].euclid2() * points[k + 1].euclid2() * sk * sk;
        if w.abs() <= 1e-10 * scale || w * target <= 0.0 {
            return Err(Error::DegenerateChord(k));
        }
        scales.push((target / w).sqrt());
    }
    Ok(scales)
}

/// Largest relative change of the characteristic polynomial of
/// `L_k = A + lambda x~_k ^ x~_{k+1}` along the trajectory, over all `lambdas`, with the
/// points rescaled so every chord has the wedge norm of the first.
///
/// Each chord bivector is taken as a positive multiple of `x_k ^ dir_k`, which equals
/// `x_k ^ x_{k+1}` up to a positive factor and stays accurate on short chords.
pub fn lax_isospectral_check(t: &TableParams, traj: &Trajectory, lambdas: &[f64]) -> Result<f64> {
    if traj.segments.len() < 2 {
        return Ok(0.0);
    }
    let chords: Vec<(MVec, MVec)> = traj
        .states
        .iter()
        .take(traj.segments.len())
        .map(|s| (s.point, s.dir))
        .collect();
    let target = wedge_norm2(chords[0].0, chords[0].1);
    let mut scaled = Vec::with_capacity(chords.len());
    for (k, &(x, v)) in chords.iter().enumerate() {
        let w = wedge_norm2(x, v);
        if w.abs() <= 1e-10 * x.euclid2() * v.euclid2() || w * target <= 0.0 {
            return Err(Error::DegenerateChord(k));
        }
        scaled.push((x, v * (target / w).sqrt()));
    }
    let mut drift = 0.0_f64;
    for &lambda in lambdas {
        let reference = lax_matrix(t, lambda, scaled[0].0, scaled[0].1).char_coeffs();
        let norm = reference
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
            .max(f64::MIN_POSITIVE);
        for &(x, v) in &scaled[1..] {
            let c = lax_matrix(t, lambda, x, v).char_coeffs();
            for i in 0..3 {
                drift = drift.max((c[i] - reference[i]).abs() / norm);
            }
        }
    }
    Ok(drift)
}
