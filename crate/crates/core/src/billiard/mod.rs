//! Billiard dynamics inside (or, for collared tables, outside) the H-ellipse.

pub mod integrals;
pub mod lax;

pub use integrals::{
    caustic_nu, direction_for_caustic, integrals, phi_mu, phi_mu_forms, Caustic, Integrals,
    PhiForms,
};
pub use lax::{lax_isospectral_check, lax_matrix, LaxMatrix};

use crate::confocal::TableParams;
use crate::error::{Error, Result};
use crate::geodesic::{
    arrival_direction, connectivity, departure_direction, next_boundary_hit, normalize_direction,
    Connectivity, Domain,
};
use crate::mink::{causal_class, inner, CausalClass, MVec};
use crate::tol;

/// A boundary point together with the outgoing direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilliardState {
    pub point: MVec,
    pub dir: MVec,
}

impl BilliardState {
    /// Checks `<p,p> = 1`, `<A^{-1}p, p> = 0` and `<p,dir> = 0` to 1e-9.
    pub fn new(t: &TableParams, point: MVec, dir: MVec) -> Result<Self> {
        let eps = 1e-9;
        if (inner(point, point) - 1.0).abs() > eps * point.euclid2().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "{point} is not on the hyperboloid"
            )));
        }
        if t.boundary_form(point).abs() > eps * point.euclid2().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "{point} is not on the boundary"
            )));
        }
        let pd = inner(point, dir);
        if pd.abs() > eps * point.euclid().max(1.0) * dir.euclid().max(1.0) {
            return Err(Error::NotTangent(pd));
        }
        Ok(BilliardState {
            point,
            dir: normalize_direction(dir),
        })
    }

    /// State at `p` aimed along the geodesic toward `q`.
    pub fn toward(t: &TableParams, p: MVec, q: MVec) -> Result<Self> {
        Self::new(t, p, departure_direction(p, q))
    }
}

/// Data attached to one chord of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub class: CausalClass,
    pub connectivity: Connectivity,
    pub nu: Caustic,
    pub integrals: Integrals,
}

impl Segment {
    /// Chord from `x` to `y` leaving `x` along `dir`. The caustic and the integrals are
    /// evaluated on `x ^ dir`, a multiple of `x ^ y` that does not cancel on short chords.
    pub fn between(t: &TableParams, x: MVec, y: MVec, dir: MVec) -> Self {
        Segment {
            class: causal_class(dir),
            connectivity: connectivity(x, y),
            nu: caustic_nu(t, x, dir),
            integrals: integrals(t, x, dir),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosureReport {
    /// Smallest `k >= 1` with state `k` matching state 0, if any.
    pub period: Option<usize>,
    /// Residual at `period`, or the smallest residual seen.
    pub residual: f64,
}

/// An ordered list of bounce states; state `k+1` is where chord `k` lands.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub table: TableParams,
    pub domain: Domain,
    pub states: Vec<BilliardState>,
    pub segments: Vec<Segment>,
    /// Why simulation ended before the requested bounce count.
    pub stop: Option<Error>,
}

impl Trajectory {
    /// Rebuilds the chord data of a state sequence.
    pub fn from_states(t: &TableParams, domain: Domain, states: Vec<BilliardState>) -> Self {
        let segments = states
            .windows(2)
            .map(|w| Segment::between(t, w[0].point, w[1].point, w[0].dir))
            .collect();
        Trajectory {
            table: *t,
            domain,
            states,
            segments,
            stop: None,
        }
    }

    pub fn points(&self) -> Vec<MVec> {
        self.states.iter().map(|s| s.point).collect()
    }

    pub fn bounces(&self) -> usize {
        self.segments.len()
    }

    /// Caustic of the first chord.
    pub fn nu(&self) -> Option<Caustic> {
        self.segments.first().map(|s| s.nu)
    }

    /// `(F0 : F1 : F2)` of the first chord.
    pub fn f_ratios(&self) -> Option<[f64; 3]> {
        self.segments.first().map(|s| s.integrals.ratios())
    }

    /// Causal class shared by all chords, or `None` if they disagree or there are none.
    pub fn class(&self) -> Option<CausalClass> {
        let first = self.segments.first()?.class;
        self.segments
            .iter()
            .all(|s| s.class == first)
            .then_some(first)
    }

    /// `max_k |nu_k - nu_0|`; infinite if finite and infinite caustics are mixed.
    pub fn nu_drift(&self) -> f64 {
        let Some(first) = self.nu() else { return 0.0 };
        self.segments
            .iter()
            .fold(0.0_f64, |m, s| match (first, s.nu) {
                (Caustic::Finite(a), Caustic::Finite(b)) => m.max((a - b).abs()),
                (Caustic::Infinite, Caustic::Infinite) => m,
                _ => f64::INFINITY,
            })
    }

    /// Max deviation of the normalized `F` ratios from those of the first chord.
    pub fn f_ratio_drift(&self) -> f64 {
        let Some(r0) = self.f_ratios() else {
            return 0.0;
        };
        self.segments.iter().fold(0.0_f64, |m, s| {
            let r = s.integrals.ratios();
            (0..3).fold(m, |m, i| m.max((r[i] - r0[i]).abs()))
        })
    }

    /// Distance of state `k` from state 0: the larger of the point distance and the
    /// angle between the (Euclidean-normalized) directions.
    pub fn closure_residual(&self, k: usize) -> f64 {
        let (s0, sk) = (&self.states[0], &self.states[k]);
        let d = s0.point.distance(&sk.point);
        let (a, b) = (
            s0.dir * (1.0 / s0.dir.euclid()),
            sk.dir * (1.0 / sk.dir.euclid()),
        );
        let dot = a.0.iter().zip(&b.0).map(|(p, q)| p * q).sum::<f64>();
        let angle = a.cross(&b).euclid().atan2(dot);
        d.max(angle)
    }

    pub fn closure(&self) -> ClosureReport {
        self.closure_with(tol::CLOSURE)
    }

    pub fn closure_with(&self, tol: f64) -> ClosureReport {
        let mut best = f64::INFINITY;
        for k in 1..self.states.len() {
            let r = self.closure_residual(k);
            if r <= tol {
                return ClosureReport {
                    period: Some(k),
                    residual: r,
                };
            }
            best = best.min(r);
        }
        ClosureReport {
            period: None,
            residual: best,
        }
    }
}

/// Billiard reflection `v - 2 <v,n>/<n,n> n` at boundary point `p`.
pub fn reflect(t: &TableParams, p: MVec, v_in: MVec) -> Result<MVec> {
    let g = t.apply_inv(p);
    let n = g - p * inner(g, p);
    let nn = inner(n, n);
    if nn.abs() <= tol::CAUSAL * n.euclid2() {
        return Err(Error::DegenerateReflection(nn));
    }
    Ok(v_in - n * (2.0 * inner(v_in, n) / nn))
}

/// Follows `n_bounces` chords from `s0`. Dynamical stops (no further boundary hit,
/// degenerate reflection) end the run early and are recorded in `stop`.
pub fn simulate(
    t: &TableParams,
    s0: BilliardState,
    n_bounces: usize,
    domain: Domain,
) -> Result<Trajectory> {
    if n_bounces == 0 {
        return Err(Error::InvalidArgument("need at least one bounce".into()));
    }
    let mut traj = Trajectory {
        table: *t,
        domain,
        states: vec![s0],
        segments: Vec::new(),
        stop: None,
    };
    let mut state = s0;
    for _ in 0..n_bounces {
        let hit = match next_boundary_hit(t, state.point, state.dir, domain) {
            Ok(h) => h,
            Err(e @ (Error::NoHit | Error::DegenerateTangency)) => {
                traj.stop = Some(e);
                break;
            }
            Err(e) => return Err(e),
        };
        let y = hit.point;
        traj.segments
            .push(Segment::between(t, state.point, y, state.dir));
        match reflect(t, y, hit.velocity) {
            Ok(v) => {
                // Gram-Schmidt against the new point keeps the state tangent.
                let v = v - y * inner(v, y);
                state = BilliardState {
                    point: y,
                    dir: normalize_direction(v),
                };
                traj.states.push(state);
            }
            Err(e @ Error::DegenerateReflection(_)) => {
                traj.states.push(BilliardState {
                    point: y,
                    dir: normalize_direction(hit.velocity),
                });
                traj.stop = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(traj)
}

/// Rebuilds the states and chords of a point sequence; the last direction is the
/// reflected arrival direction.
pub fn trajectory_from_points(
    t: &TableParams,
    points: &[MVec],
    domain: Domain,
) -> Result<Trajectory> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    let n = points.len();
    let mut states = Vec::with_capacity(n);
    let mut segments = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let dir = departure_direction(points[k], points[k + 1]);
        states.push(BilliardState {
            point: points[k],
            dir,
        });
        segments.push(Segment::between(t, points[k], points[k + 1], dir));
    }
    let last = points[n - 1];
    let arrive = arrival_direction(points[n - 2], last);
    let dir = reflect(t, last, arrive)
        .map(normalize_direction)
        .unwrap_or(arrive);
    states.push(BilliardState { point: last, dir });
    Ok(Trajectory {
        table: *t,
        domain,
        states,
        segments,
        stop: None,
    })
}

/// Alternating antipodal map: the `k`-th state (from 0) has its point multiplied by
/// `(-1)^k` and its direction by `-(-1)^k`, since the geodesic from `p` toward `-q`
/// leaves along minus the direction toward `q`. Chord data are recomputed.
pub fn aa_map(traj: &Trajectory) -> Result<Trajectory> {
    let t = &traj.table;
    if !t.is_collared() {
        return Err(Error::UnsupportedTable);
    }
    let states: Vec<BilliardState> = traj
        .states
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if k % 2 == 0 {
                BilliardState {
                    point: s.point,
                    dir: -s.dir,
                }
            } else {
                BilliardState {
                    point: -s.point,
                    dir: s.dir,
                }
            }
        })
        .collect();
    let one_component = states
        .windows(2)
        .all(|w| w[0].point[0] * w[1].point[0] > 0.0);
    let domain = if one_component {
        Domain::Exterior
    } else {
        Domain::Interior
    };
    Ok(Trajectory::from_states(t, domain, states))
}
