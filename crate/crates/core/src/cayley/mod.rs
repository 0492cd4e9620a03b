//! Cayley-type conditions for periodic trajectories: a trajectory with caustic `nu`
//! has period `n` iff a Hankel determinant in the Taylor coefficients of a square
//! root (in `X`, around 0) of the spectral polynomial vanishes.

pub mod closed_form;
mod scan;
pub mod series;

pub use closed_form::closed_form_caustics;
pub use scan::ROOT_RESIDUAL;
pub use series::{
    hankel_det_even, hankel_det_light, hankel_det_light_normalized, hankel_det_odd, sqrt_series,
    table_series, Condition, SeriesCoeffs, SeriesKind,
};

use crate::billiard::{direction_for_caustic, simulate, BilliardState, Caustic, Trajectory};
use crate::confocal::TableParams;
use crate::error::{Error, Result};
use crate::geodesic::Domain;
use crate::mink::MVec;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    NumericScan,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::NumericScan => "numeric-scan",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CayleyRoot {
    pub nu: f64,
    /// Normalized determinant at `nu`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CayleySolution {
    pub period: usize,
    /// Roots away from `{0, a0, a1, a2}`, ascending.
    pub roots: Vec<CayleyRoot>,
    /// Roots at a table parameter (degenerate conics).
    pub degenerate: Vec<f64>,
    pub method: Method,
    /// Explicit values for `n` in {3, 4, 6}, for cross-checking.
    pub closed_form: Option<Vec<f64>>,
}

impl CayleySolution {
    pub fn nus(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.nu).collect()
    }
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * y.abs().max(1.0)
}

/// Numerically isolates the real caustics of period-`n` trajectories.
pub fn find_periodic_caustics(t: &TableParams, n: usize) -> Result<CayleySolution> {
    let cond = Condition::for_period(n)?;
    let a = t.a();
    let mut roots = Vec::new();
    let mut degenerate = Vec::new();
    for nu in scan::scan_roots(t, cond) {
        if let Some(ai) = a.iter().find(|ai| near(nu, **ai)) {
            degenerate.push(*ai);
            continue;
        }
        let residual = cond.eval_s_normalized(t, 1.0 / nu).abs();
        if residual <= ROOT_RESIDUAL {
            roots.push(CayleyRoot { nu, residual });
        }
    }
    // Even-order zeros at a parameter show no sign change.
    for ai in a {
        if cond.eval_s_normalized(t, 1.0 / ai).abs() <= ROOT_RESIDUAL {
            degenerate.push(ai);
        }
    }
    degenerate.sort_by(f64::total_cmp);
    degenerate.dedup();
    Ok(CayleySolution {
        period: n,
        roots,
        degenerate,
        method: Method::NumericScan,
        closed_form: closed_form_caustics(t, n),
    })
}

/// Closure found by [`verify_periodic`].
#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    /// First bounce count at which the state returns within tolerance.
    pub period: Option<usize>,
    pub residual: f64,
    pub domain: Domain,
    /// Largest deviation of a segment caustic from `nu`.
    pub nu_drift: f64,
    pub trajectory: Trajectory,
}

impl Verification {
    /// Whether the closure matches period `n`: `n` itself, or for odd `n` on the
    /// collared table `2n` inside and `n` outside.
    pub fn matches(&self, n: usize) -> bool {
        match self.period {
            Some(p) => p == n || (n % 2 == 1 && self.domain == Domain::Interior && p == 2 * n),
            None => false,
        }
    }
}

/// Starts at `x0` along each direction tangent to `C_nu`, follows `2n` bounces and
/// returns the best closure. On collared tables the exterior is tried as well.
pub fn verify_periodic(t: &TableParams, nu: f64, n: usize, x0: MVec) -> Result<Verification> {
    verify_caustic(t, Caustic::Finite(nu), n, x0)
}

pub fn verify_caustic(t: &TableParams, nu: Caustic, n: usize, x0: MVec) -> Result<Verification> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let domains: &[Domain] = if t.is_collared() && !nu.is_infinite() {
        &[Domain::Interior, Domain::Exterior]
    } else {
        &[Domain::Interior]
    };
    let mut best: Option<Verification> = None;
    let mut any_direction = false;
    for &domain in domains {
        for dir in direction_for_caustic(t, x0, nu, domain)? {
            any_direction = true;
            let s0 = BilliardState::new(t, x0, dir)?;
            let traj = simulate(t, s0, 2 * n, domain)?;
            if traj.states.len() < 2 {
                continue;
            }
            let closure = traj.closure_with(tol::CLOSURE);
            let nu_drift = match nu {
                Caustic::Finite(v) => traj
                    .segments
                    .iter()
                    .map(|s| s.nu.finite().map_or(f64::INFINITY, |w| (w - v).abs()))
                    .fold(0.0, f64::max),
                Caustic::Infinite => {
                    if traj.segments.iter().all(|s| s.nu.is_infinite()) {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                }
            };
            let cand = Verification {
                period: closure.period,
                residual: closure.residual,
                domain,
                nu_drift,
                trajectory: traj,
            };
            let better = match &best {
                None => true,
                Some(b) => (cand.matches(n), -cand.residual) > (b.matches(n), -b.residual),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    match best {
        Some(b) => Ok(b),
        None if any_direction => Err(Error::NoHit),
        None => Err(Error::NoTangentDirection),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confocal::{boundary_point, classify_table};

    fn assert_roots(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        let mut w = want.to_vec();
        w.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&w) {
            assert!(
                (g - w).abs() <= tol * w.abs().max(1.0),
                "{got:?} vs {want:?}"
            );
        }
    }

    #[test]
    fn period_four_scan() {
        let t = classify_table(3., 6., 9.).unwrap();
        let s = find_periodic_caustics(&t, 4).unwrap();
        assert_roots(&s.nus(), &[18. / 7., -18., 3.6], 1e-9);
        assert!(s.degenerate.is_empty());
        let t = classify_table(3., -3., 6.).unwrap();
        assert_roots(
            &find_periodic_caustics(&t, 4).unwrap().nus(),
            &[-6., -2., 1.2],
            1e-9,
        );
    }

    #[test]
    fn period_three_matches_closed_form() {
        for a in [(3., 6., 9.), (3., -3., 6.)] {
            let t = classify_table(a.0, a.1, a.2).unwrap();
            let s = find_periodic_caustics(&t, 3).unwrap();
            assert_roots(&s.nus(), s.closed_form.as_ref().unwrap(), 1e-9);
        }
    }

    #[test]
    fn period_six_degenerate_root() {
        let t = classify_table(3., 6., 9.).unwrap();
        let s = find_periodic_caustics(&t, 6).unwrap();
        assert_eq!(s.degenerate, vec![6.0]);
        assert_eq!(s.roots.len(), 5);
    }

    #[test]
    fn rejects_short_periods() {
        let t = classify_table(3., 6., 9.).unwrap();
        assert!(find_periodic_caustics(&t, 2).is_err());
    }

    #[test]
    fn orbit_verifies() {
        let t = classify_table(3., -3., 6.).unwrap();
        let v = verify_periodic(&t, -6.0, 4, MVec::new(-1.0, 0.0, 2f64.sqrt())).unwrap();
        assert_eq!(v.period, Some(4));
        assert!(v.residual <= 1e-6);
        assert!(v.nu_drift <= 1e-9);
    }

    #[test]
    fn no_direction_inside_caustic() {
        let t = classify_table(3., 6., 9.).unwrap();
        let x = boundary_point(&t, 1, 0.7, [1.0, 1.0]).unwrap();
        assert_eq!(
            verify_periodic(&t, 1.5, 4, x).unwrap_err(),
            Error::NoTangentDirection
        );
    }
}
