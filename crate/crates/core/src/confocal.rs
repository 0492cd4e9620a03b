//! The confocal family `<(A - lambda I)^{-1} x, x> = 0` on the hyperboloid, for a
//! diagonal `A = diag(a0, a1, a2)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::mink::{MVec, SIGNATURE};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// `0 < a0 < a1 < a2`: two boundary curves around one compact collar.
    Collared,
    /// `a1 < 0 < a0 < a2`: two closed curves, the domain is the cap with `x2 > 0`.
    Transverse,
}

impl TableKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TableKind::Collared => "collared",
            TableKind::Transverse => "transverse",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated billiard table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableParams {
    a: [f64; 3],
    kind: TableKind,
}

impl TableParams {
    /// Validates the ordering and separation of `(a0, a1, a2)`.
    pub fn new(a0: f64, a1: f64, a2: f64) -> Result<Self> {
        classify_table(a0, a1, a2)
    }

    pub fn a(&self) -> [f64; 3] {
        self.a
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn is_collared(&self) -> bool {
        self.kind == TableKind::Collared
    }

    /// `max |a_i|`, the natural scale for parameter tolerances.
    pub fn scale(&self) -> f64 {
        self.a.iter().fold(0.0_f64, |m, a| m.max(a.abs()))
    }

    /// Diagonal of `A^{-1}`.
    pub fn inv(&self) -> [f64; 3] {
        [1.0 / self.a[0], 1.0 / self.a[1], 1.0 / self.a[2]]
    }

    /// `A^{-1} x`.
    pub fn apply_inv(&self, x: MVec) -> MVec {
        x.hadamard(self.inv())
    }

    /// `A x`.
    pub fn apply(&self, x: MVec) -> MVec {
        x.hadamard(self.a)
    }

    /// The boundary form `<A^{-1} x, x>`; positive inside the compact domain.
    pub fn boundary_form(&self, x: MVec) -> f64 {
        crate::mink::inner(self.apply_inv(x), x)
    }

    /// Whether `lambda` is within the pole tolerance of some `a_i`.
    pub fn is_pole(&self, lambda: f64) -> bool {
        let eps = tol::POLE * self.scale().max(1.0);
        self.a.iter().any(|a| (lambda - a).abs() <= eps)
    }
}

/// Accepts exactly the collared and transverse orderings.
pub fn classify_table(a0: f64, a1: f64, a2: f64) -> Result<TableParams> {
    let bad = || Error::UnsupportedParameters(a0, a1, a2);
    if !(a0.is_finite() && a1.is_finite() && a2.is_finite()) {
        return Err(bad());
    }
    let kind = if 0.0 < a0 && a0 < a1 && a1 < a2 {
        TableKind::Collared
    } else if a1 < 0.0 && 0.0 < a0 && a0 < a2 {
        TableKind::Transverse
    } else {
        return Err(bad());
    };
    let scale = a0.abs().max(a1.abs()).max(a2.abs());
    let eps = tol::SEPARATION * scale;
    let gaps = [
        (a0 - a1).abs(),
        (a1 - a2).abs(),
        (a0 - a2).abs(),
        a0.abs(),
        a1.abs(),
        a2.abs(),
    ];
    if gaps.iter().any(|g| *g < eps) {
        return Err(bad());
    }
    Ok(TableParams {
        a: [a0, a1, a2],
        kind,
    })
}

/// `-x0^2/(a0 - lambda) + x1^2/(a1 - lambda) + x2^2/(a2 - lambda)`.
pub fn cone_eval(t: &TableParams, lambda: f64, x: MVec) -> Result<f64> {
    if t.is_pole(lambda) {
        return Err(Error::PoleParameter(lambda));
    }
    Ok(cone_eval_unchecked(t, lambda, x))
}

fn cone_eval_unchecked(t: &TableParams, lambda: f64, x: MVec) -> f64 {
    (0..3)
        .map(|i| SIGNATURE[i] * x[i] * x[i] / (t.a[i] - lambda))
        .sum()
}

fn cone_eval_derivative(t: &TableParams, lambda: f64, x: MVec) -> f64 {
    (0..3)
        .map(|i| {
            let d = t.a[i] - lambda;
            SIGNATURE[i] * x[i] * x[i] / (d * d)
        })
        .sum()
}

/// Which root configuration holds at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JacobiCase {
    /// Collared generic point: `l1 < a0 < a1 < l2 < a2`.
    CollaredGeneric,
    /// Transverse, both roots below `a1`.
    BelowA1,
    /// Transverse, both roots in `(a1, a0)`.
    BetweenA1A0,
    /// Transverse, both roots in `(a0, a2)`.
    BetweenA0A2,
    /// Transverse, both roots above `a2`.
    AboveA2,
    /// `x0 = 0`: one root is `a0`, the other in `[a1, a2]`.
    X0Zero,
    /// `x1 = 0`: one root is `a1`, the other at most `a0`.
    X1Zero,
    /// `x2 = 0`: one root is `a2`.
    X2Zero,
    /// Transverse point on a ruling through the foci.
    OnDividingLine,
    /// Transverse point strictly between the dividing lines.
    NoRoots,
}

impl JacobiCase {
    /// Label used by the case list of the root-count classification.
    pub fn label(&self) -> &'static str {
        match self {
            JacobiCase::CollaredGeneric => "i",
            JacobiCase::BelowA1 => "2a",
            JacobiCase::BetweenA1A0 => "2b",
            JacobiCase::BetweenA0A2 => "2c",
            JacobiCase::AboveA2 => "2d",
            JacobiCase::X0Zero => "iii",
            JacobiCase::X1Zero => "iv",
            JacobiCase::X2Zero => "v",
            JacobiCase::OnDividingLine => "double",
            JacobiCase::NoRoots => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JacobiRoots {
    TwoRoots(f64, f64),
    DoubleRoot(f64),
    NoRealRoots,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiCoords {
    pub roots: JacobiRoots,
    pub case: JacobiCase,
}

impl JacobiCoords {
    pub fn as_vec(&self) -> Vec<f64> {
        match self.roots {
            JacobiRoots::TwoRoots(a, b) => vec![a, b],
            JacobiRoots::DoubleRoot(a) => vec![a],
            JacobiRoots::NoRealRoots => vec![],
        }
    }
}

/// Trace `tau`, constant `c` and discriminant of the monic quadratic `l^2 - tau l + c`
/// whose roots are the confocal parameters through `x`.
pub fn jacobi_quadratic(t: &TableParams, x: MVec) -> (f64, f64, f64) {
    let [a0, a1, a2] = t.a;
    let (s0, s1, s2) = (x[0] * x[0], x[1] * x[1], x[2] * x[2]);
    let tau = -(a1 + a2) * s0 + (a0 + a2) * s1 + (a0 + a1) * s2;
    let c = -a1 * a2 * s0 + a0 * a2 * s1 + a0 * a1 * s2;
    (tau, c, tau * tau - 4.0 * c)
}

fn double_root_threshold(tau: f64, c: f64) -> f64 {
    tol::DOUBLE_ROOT * (tau * tau).max(4.0 * c.abs()).max(f64::MIN_POSITIVE)
}

/// Newton polish on the cone form itself, kept only if it reduces the residual.
fn polish(t: &TableParams, x: MVec, mut lambda: f64) -> f64 {
    for _ in 0..3 {
        if t.is_pole(lambda) {
            break;
        }
        let f = cone_eval_unchecked(t, lambda, x);
        let df = cone_eval_derivative(t, lambda, x);
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let next = lambda - f / df;
        if t.is_pole(next) || cone_eval_unchecked(t, next, x).abs() >= f.abs() {
            break;
        }
        lambda = next;
    }
    // Near a pole the residual jumps by more than the tolerance between adjacent floats;
    // take the best of the immediate neighbors.
    let mut best = (cone_eval_unchecked(t, lambda, x).abs(), lambda);
    let mut probe = |l: f64| {
        if !t.is_pole(l) {
            let f = cone_eval_unchecked(t, l, x).abs();
            if f < best.0 {
                best = (f, l);
            }
        }
    };
    let (mut up, mut down) = (lambda, lambda);
    for _ in 0..4 {
        up = up.next_up();
        down = down.next_down();
        probe(up);
        probe(down);
    }
    best.1
}

/// Generalized Jacobi coordinates of a point on the hyperboloid, sorted ascending.
pub fn jacobi_coordinates(t: &TableParams, x: MVec) -> JacobiCoords {
    let (tau, c, disc) = jacobi_quadratic(t, x);
    let zero_tol = 1e-12 * x.max_abs().max(1.0);
    let coord_case = if x[0].abs() <= zero_tol {
        Some(JacobiCase::X0Zero)
    } else if x[1].abs() <= zero_tol {
        Some(JacobiCase::X1Zero)
    } else if x[2].abs() <= zero_tol {
        Some(JacobiCase::X2Zero)
    } else {
        None
    };

    if disc.abs() <= double_root_threshold(tau, c) {
        return JacobiCoords {
            roots: JacobiRoots::DoubleRoot(tau / 2.0),
            case: coord_case.unwrap_or(JacobiCase::OnDividingLine),
        };
    }
    if disc < 0.0 {
        return JacobiCoords {
            roots: JacobiRoots::NoRealRoots,
            case: JacobiCase::NoRoots,
        };
    }

    let sq = disc.sqrt();
    let big = if tau >= 0.0 {
        (tau + sq) / 2.0
    } else {
        (tau - sq) / 2.0
    };
    let small = if big != 0.0 { c / big } else { 0.0 };
    let (lo, hi) = if big < small {
        (big, small)
    } else {
        (small, big)
    };
    let (lo, hi) = (polish(t, x, lo), polish(t, x, hi));
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };

    let case = coord_case.unwrap_or_else(|| match t.kind {
        TableKind::Collared => JacobiCase::CollaredGeneric,
        TableKind::Transverse => transverse_case(t, (lo + hi) / 2.0),
    });
    JacobiCoords {
        roots: JacobiRoots::TwoRoots(lo, hi),
        case,
    }
}

fn transverse_case(t: &TableParams, mid: f64) -> JacobiCase {
    let [a0, a1, a2] = t.a;
    if mid < a1 {
        JacobiCase::BelowA1
    } else if mid < a0 {
        JacobiCase::BetweenA1A0
    } else if mid < a2 {
        JacobiCase::BetweenA0A2
    } else {
        JacobiCase::AboveA2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveType {
    EllipticType,
    HyperbolicType,
    Degenerate,
    Empty,
}

/// Shape of the confocal conic `C_lambda` on the hyperboloid.
pub fn curve_type(t: &TableParams, lambda: f64) -> CurveType {
    if t.is_pole(lambda) {
        return CurveType::Degenerate;
    }
    let [a0, a1, a2] = t.a;
    match t.kind {
        TableKind::Collared => {
            if lambda < a0 {
                CurveType::EllipticType
            } else if a1 < lambda && lambda < a2 {
                CurveType::HyperbolicType
            } else {
                CurveType::Empty
            }
        }
        TableKind::Transverse => {
            if a1 < lambda && lambda < a2 {
                CurveType::EllipticType
            } else {
                CurveType::HyperbolicType
            }
        }
    }
}

/// The four foci `(+-, +-)` lying in the plane `x_axis = 0`, where the degenerate member
/// `lambda = a_axis` meets the hyperboloid. `None` when they are not real.
///
/// With `j < k` the remaining axes, the squared coordinates solve
/// `J_j s_j/(a_j - a_axis) + J_k s_k/(a_k - a_axis) = 0` and `J_j s_j + J_k s_k = 1`.
pub fn foci(t: &TableParams, axis: usize) -> Option<[MVec; 4]> {
    assert!(axis < 3, "axis must be 0, 1 or 2");
    let (j, k) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let a = t.a;
    let (jj, jk) = (SIGNATURE[j], SIGNATURE[k]);
    let (dj, dk) = (a[j] - a[axis], a[k] - a[axis]);
    // Linear 2x2 system in (s_j, s_k).
    let det = jj / dj * jk - jk / dk * jj;
    if det == 0.0 {
        return None;
    }
    let sj = -(jk / dk) / det;
    let sk = (jj / dj) / det;
    if sj < 0.0 || sk < 0.0 || !sj.is_finite() || !sk.is_finite() {
        return None;
    }
    let (rj, rk) = (sj.sqrt(), sk.sqrt());
    let mut out = [MVec::ZERO; 4];
    for (n, (sgj, sgk)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .enumerate()
    {
        let mut v = [0.0; 3];
        v[j] = sgj * rj;
        v[k] = sgk * rk;
        out[n] = MVec(v);
    }
    Some(out)
}

/// Regions of the `x0 x1`-plane for the transverse table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    A,
    B,
    C,
    D,
    E,
    OnLine,
}

/// Region of a point of the hyperboloid relative to the four dividing lines
/// `|x0 sqrt(a2 - a0) +- x1 sqrt(a2 - a1)| = sqrt(a0 - a1)` (transverse tables only).
pub fn region_classify(t: &TableParams, x: MVec) -> Result<Region> {
    if t.kind != TableKind::Transverse {
        return Err(Error::InvalidArgument(
            "region classification needs a transverse table".into(),
        ));
    }
    let [a0, a1, a2] = t.a;
    let (s0, s1) = (x[0] * x[0], x[1] * x[1]);
    // Same quantity as tau^2 - 4c once x2^2 = 1 + x0^2 - x1^2 is substituted.
    let lead = (a0 - a1) - ((a2 - a0) * s0 + (a2 - a1) * s1);
    let disc = lead * lead - 4.0 * (a2 - a0) * (a2 - a1) * s0 * s1;
    let (tau, c, _) = jacobi_quadratic(t, x);
    if disc.abs() <= double_root_threshold(tau, c) {
        return Ok(Region::OnLine);
    }
    if disc < 0.0 {
        return Ok(Region::E);
    }
    Ok(match transverse_case(t, tau / 2.0) {
        JacobiCase::BelowA1 => Region::A,
        JacobiCase::BetweenA1A0 => Region::B,
        JacobiCase::BetweenA0A2 => Region::C,
        _ => Region::D,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KleinPoint {
    pub xi1: f64,
    pub xi2: f64,
}

/// Central projection `(x1/x0, x2/x0)`.
pub fn klein_project(x: MVec) -> Result<KleinPoint> {
    if x[0].abs() <= tol::KLEIN_INFINITY * x.max_abs().max(1.0) {
        return Err(Error::AtInfinity(x[0]));
    }
    Ok(KleinPoint {
        xi1: x[1] / x[0],
        xi2: x[2] / x[0],
    })
}

/// `(b1, b2)` of the projected boundary `xi1^2/b1 + xi2^2/b2 = 1`.
pub fn klein_boundary_coeffs(t: &TableParams) -> (f64, f64) {
    (t.a[1] / t.a[0], t.a[2] / t.a[0])
}

/// `(c1, c2)` of the projected caustic `xi1^2/c1 + xi2^2/c2 = 1`.
pub fn projected_caustic_coeffs(t: &TableParams, nu: f64) -> Result<(f64, f64)> {
    let [a0, a1, a2] = t.a;
    if (nu - a0).abs() <= tol::POLE * t.scale().max(1.0) {
        return Err(Error::PoleParameter(nu));
    }
    Ok(((a1 - nu) / (a0 - nu), (a2 - nu) / (a0 - nu)))
}

/// A boundary point with `x_axis = value` and the given signs on the other two
/// coordinates (ascending axis order). `None` if no such point exists.
pub fn boundary_point(t: &TableParams, axis: usize, value: f64, signs: [f64; 2]) -> Option<MVec> {
    assert!(axis < 3, "axis must be 0, 1 or 2");
    let (j, k) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let a = t.a;
    let (jj, jk, ja) = (SIGNATURE[j], SIGNATURE[k], SIGNATURE[axis]);
    let v2 = value * value;
    // J_j s_j / a_j + J_k s_k / a_k = -J_axis v^2 / a_axis
    // J_j s_j       + J_k s_k       = 1 - J_axis v^2
    let (m11, m12, r1) = (jj / a[j], jk / a[k], -ja * v2 / a[axis]);
    let (m21, m22, r2) = (jj, jk, 1.0 - ja * v2);
    let det = m11 * m22 - m12 * m21;
    if det == 0.0 {
        return None;
    }
    let sj = (r1 * m22 - m12 * r2) / det;
    let sk = (m11 * r2 - r1 * m21) / det;
    if sj < 0.0 || sk < 0.0 {
        return None;
    }
    let mut v = [0.0; 3];
    v[axis] = value;
    v[j] = signs[0].signum() * sj.sqrt();
    v[k] = signs[1].signum() * sk.sqrt();
    Some(MVec(v))
}
