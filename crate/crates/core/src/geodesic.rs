//! Geodesics on the hyperboloid and the boundary chord map.
//!
//! Geodesics are plane sections through the origin. From a point `x` with unit
//! tangent `v` they read `x cos t + v sin t` (space-like), `x cosh t + v sinh t`
//! (time-like) or `x + t v` (light-like).

use std::f64::consts::PI;

use crate::confocal::{TableKind, TableParams};
use crate::error::{Error, Result};
use crate::mink::{causal_class, inner, renormalize_to_h, CausalClass, MVec};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity {
    UniqueTimeLike,
    UniqueLightLike,
    UniqueSpaceLike,
    NotConnectable,
    Antipodal,
}

impl Connectivity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Connectivity::UniqueTimeLike => "time-like",
            Connectivity::UniqueLightLike => "light-like",
            Connectivity::UniqueSpaceLike => "space-like",
            Connectivity::NotConnectable => "not-connectable",
            Connectivity::Antipodal => "antipodal",
        }
    }
}

/// How two distinct points of the hyperboloid can be joined by a geodesic.
pub fn connectivity(p: MVec, q: MVec) -> Connectivity {
    if (p + q).euclid() <= tol::SAME_POINT * p.euclid().max(1.0) {
        return Connectivity::Antipodal;
    }
    let g = inner(p, q);
    if (g - 1.0).abs() <= tol::CAUSAL * p.euclid2().max(q.euclid2()).max(1.0) {
        Connectivity::UniqueLightLike
    } else if g > 1.0 {
        Connectivity::UniqueTimeLike
    } else if g > -1.0 {
        Connectivity::UniqueSpaceLike
    } else {
        Connectivity::NotConnectable
    }
}

/// Rescales a tangent direction: unit Minkowski length for space- and time-like
/// vectors, unit max-component for light-like ones.
pub fn normalize_direction(v: MVec) -> MVec {
    match causal_class(v) {
        CausalClass::SpaceLike => v * (1.0 / v.norm2().sqrt()),
        CausalClass::TimeLike => v * (1.0 / (-v.norm2()).sqrt()),
        CausalClass::LightLike => v * (1.0 / v.max_abs()),
        CausalClass::Zero => v,
    }
}

/// Tangent at `p` of the geodesic running from `p` to `q`, normalized.
pub fn departure_direction(p: MVec, q: MVec) -> MVec {
    normalize_direction(q - p * inner(p, q))
}

/// Tangent at `q` of the geodesic arriving from `p`, pointing away from `p`.
pub fn arrival_direction(p: MVec, q: MVec) -> MVec {
    normalize_direction(q * inner(p, q) - p)
}

/// Point reached after parameter `t` along the geodesic through `x` with tangent `v`.
pub fn flow(x: MVec, v: MVec, t: f64) -> Result<MVec> {
    let xv = inner(x, v);
    if xv.abs() > tol::TANGENT * x.euclid().max(1.0) * v.euclid().max(1.0) {
        return Err(Error::NotTangent(xv));
    }
    Ok(flow_unchecked(x, v, t, causal_class(v)))
}

fn flow_unchecked(x: MVec, v: MVec, t: f64, class: CausalClass) -> MVec {
    match class {
        CausalClass::SpaceLike => x * t.cos() + v * t.sin(),
        CausalClass::TimeLike => x * t.cosh() + v * t.sinh(),
        CausalClass::LightLike | CausalClass::Zero => x + v * t,
    }
}

/// Velocity of the flow at parameter `t`.
pub fn flow_velocity(x: MVec, v: MVec, t: f64, class: CausalClass) -> MVec {
    match class {
        CausalClass::SpaceLike => x * -t.sin() + v * t.cos(),
        CausalClass::TimeLike => x * t.sinh() + v * t.cosh(),
        CausalClass::LightLike | CausalClass::Zero => v,
    }
}

/// Which side of the boundary the billiard lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Domain {
    /// The compact domain, `<A^{-1}x, x> > 0`.
    #[default]
    Interior,
    /// Outside a collared table, reflecting off one component curve.
    Exterior,
}

impl Domain {
    /// Sign of the boundary form inside this domain.
    pub fn sign(&self) -> f64 {
        match self {
            Domain::Interior => 1.0,
            Domain::Exterior => -1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Domain::Interior => "interior",
            Domain::Exterior => "exterior",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChordHit {
    /// Flow parameter for the normalized direction.
    pub t_hit: f64,
    pub point: MVec,
    /// Velocity at the hit point, before reflection.
    pub velocity: MVec,
    pub geodesic_class: CausalClass,
}

const T_MIN: f64 = 1e-12;

fn smallest_positive(cands: impl IntoIterator<Item = f64>) -> Option<f64> {
    cands
        .into_iter()
        .filter(|t| t.is_finite() && *t > T_MIN)
        .fold(None, |m: Option<f64>, t| Some(m.map_or(t, |m| m.min(t))))
}

/// Real roots of `a z^2 + b z + c = 0`.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b != 0.0 { vec![-c / b] } else { vec![] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// First return of the geodesic `(x, v)` to the boundary `<A^{-1}x, x> = 0`.
///
/// `x` may lie on the boundary (the trivial root `t = 0` is factored out) or inside
/// the domain. The returned parameter refers to `v` after [`normalize_direction`].
pub fn next_boundary_hit(t: &TableParams, x: MVec, v: MVec, domain: Domain) -> Result<ChordHit> {
    let xv = inner(x, v);
    if xv.abs() > tol::TANGENT * x.euclid().max(1.0) * v.euclid().max(1.0) {
        return Err(Error::NotTangent(xv));
    }
    let v = normalize_direction(v);
    let class = causal_class(v);
    if class == CausalClass::Zero {
        return Err(Error::InvalidArgument("zero direction".into()));
    }
    let ainv_x = t.apply_inv(x);
    let qx = inner(ainv_x, x);
    let qxv = inner(ainv_x, v);
    let qvv = inner(t.apply_inv(v), v);

    let form_scale = t.inv().iter().fold(0.0_f64, |m, a| m.max(a.abs())) * x.euclid2().max(1.0);
    let on_boundary = qx.abs() <= tol::TANGENT * form_scale;
    let eps = 1e-14 * form_scale * v.euclid2().max(1.0);
    if qvv.abs() <= eps && qxv.abs() <= eps {
        return Err(Error::DegenerateTangency);
    }
    if on_boundary && domain.sign() * qxv < -eps {
        return Err(Error::InvalidArgument(format!(
            "direction leaves the {} domain",
            domain.as_str()
        )));
    }

    let t_hit = match class {
        CausalClass::SpaceLike => {
            if on_boundary {
                // Q(t) = sin t (2 qxv cos t + qvv sin t)
                let a = (-2.0 * qxv).atan2(qvv);
                let a = if a > T_MIN {
                    a
                } else {
                    (2.0 * qxv).atan2(-qvv)
                };
                Some(if a > T_MIN { a } else { PI })
            } else {
                // Q(t) = c + r cos(2t - phi)
                let c = (qx + qvv) / 2.0;
                let (p, s) = ((qx - qvv) / 2.0, qxv);
                let r = p.hypot(s);
                if r == 0.0 || (c / r).abs() > 1.0 {
                    None
                } else {
                    let phi = s.atan2(p);
                    let th = (-c / r).acos();
                    let fold = |a: f64| {
                        let m = a.rem_euclid(PI);
                        if m > T_MIN {
                            m
                        } else {
                            m + PI
                        }
                    };
                    smallest_positive([fold((phi + th) / 2.0), fold((phi - th) / 2.0)])
                }
            }
        }
        CausalClass::TimeLike => {
            if on_boundary {
                if qvv == 0.0 {
                    None
                } else {
                    let r = -2.0 * qxv / qvv;
                    (r > 0.0 && r < 1.0).then(|| r.atanh())
                }
            } else {
                let roots =
                    quadratic_roots(qx + 2.0 * qxv + qvv, 2.0 * (qx - qvv), qx - 2.0 * qxv + qvv);
                smallest_positive(roots.into_iter().filter(|u| *u > 0.0).map(|u| u.ln() / 2.0))
            }
        }
        CausalClass::LightLike | CausalClass::Zero => {
            if on_boundary {
                if qvv == 0.0 {
                    None
                } else {
                    Some(-2.0 * qxv / qvv).filter(|t| *t > T_MIN)
                }
            } else {
                smallest_positive(quadratic_roots(qvv, 2.0 * qxv, qx))
            }
        }
    };
    let t_hit = t_hit.ok_or(Error::NoHit)?;

    let raw = flow_unchecked(x, v, t_hit, class);
    let point = snap_to_boundary(t, renormalize_to_h(raw)?)?;
    let velocity = flow_velocity(x, v, t_hit, class);
    let velocity = velocity - point * inner(velocity, point);

    match (t.kind(), domain) {
        (TableKind::Transverse, _) if point[2] <= 0.0 => return Err(Error::NoHit),
        (TableKind::Collared, Domain::Exterior) if point[0] * x[0] <= 0.0 => {
            return Err(Error::NoHit)
        }
        _ => {}
    }
    Ok(ChordHit {
        t_hit,
        point,
        velocity,
        geodesic_class: class,
    })
}

/// Newton steps along the in-surface normal that pull a point of the hyperboloid back
/// onto the boundary, so rounding does not accumulate from bounce to bounce.
pub fn snap_to_boundary(t: &TableParams, mut p: MVec) -> Result<MVec> {
    for _ in 0..2 {
        let g = t.apply_inv(p);
        let q = inner(g, p);
        let n = g - p * q;
        let nn = inner(n, n);
        if q == 0.0 || nn.abs() <= tol::CAUSAL * n.euclid2() {
            break;
        }
        p = renormalize_to_h(p - n * (q / (2.0 * nn)))?;
    }
    Ok(p)
}

/// Boundary tangent `u` and in-surface normal `n = A^{-1}p - <A^{-1}p, p> p` at a
/// boundary point. `u` is scaled like a direction; `n` is returned as is.
pub fn tangent_basis(t: &TableParams, p: MVec) -> Result<(MVec, MVec)> {
    let g = t.apply_inv(p);
    let n = g - p * inner(g, p);
    let nn = inner(n, n);
    if nn.abs() <= tol::CAUSAL * n.euclid2() {
        return Err(Error::SingularPoint(nn));
    }
    let u = normalize_direction(p.lowered().cross(&g.lowered()));
    Ok((u, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confocal::{boundary_point, classify_table, cone_eval};
    use crate::mink::on_hyperboloid;

    fn collared() -> TableParams {
        classify_table(3., 6., 9.).unwrap()
    }

    fn transverse() -> TableParams {
        classify_table(3., -3., 6.).unwrap()
    }

    fn orbit() -> [MVec; 4] {
        let s = 1.0 / 3f64.sqrt();
        let r = (2.0f64 / 3.0).sqrt();
        [
            MVec::new(-1.0, 0.0, 2f64.sqrt()),
            MVec::new(0.0, s, r),
            MVec::new(1.0, 0.0, 2f64.sqrt()),
            MVec::new(0.0, -s, r),
        ]
    }

    #[test]
    fn connectivity_examples() {
        let [p, q, ..] = orbit();
        assert_eq!(connectivity(p, q), Connectivity::UniqueTimeLike);
        assert_eq!(connectivity(p, -p), Connectivity::Antipodal);
        // <p,q> = -cosh(s) with cosh(s) = 1.5
        let s = 1.5f64.acosh();
        let p = MVec::new(0.0, 0.0, 1.0);
        let q = MVec::new(s.sinh(), 0.0, -s.cosh());
        assert!((inner(p, q) + 1.5).abs() < 1e-14);
        assert_eq!(connectivity(p, q), Connectivity::NotConnectable);
        let q = MVec::new(0.0, 0.6, 0.8);
        assert_eq!(connectivity(p, q), Connectivity::UniqueSpaceLike);
        let q = MVec::new(1.0, 1.0, 1.0);
        assert_eq!(connectivity(p, q), Connectivity::UniqueLightLike);
    }

    #[test]
    fn flow_examples() {
        let x = MVec::new(0., 0., 1.);
        let v = MVec::new(0., 1., 0.);
        assert_eq!(flow(x, v, 0.0).unwrap(), x);
        assert!(flow(x, v, PI / 2.0).unwrap().distance(&v) < 1e-15);
        let l = MVec::new(1.0, 1.0, 0.0);
        for &s in &[-3.0, 0.5, 10.0] {
            let y = flow(x, l, s).unwrap();
            assert!((inner(y, y) - 1.0).abs() < 1e-12);
        }
        let w = MVec::new(1.0, 0.0, 0.0);
        for &s in &[0.1, 1.0, 3.0] {
            let y = flow(x, w, s).unwrap();
            assert!((inner(y, y) - 1.0).abs() < 1e-12 * y.euclid2());
        }
        assert!(matches!(
            flow(x, MVec::new(0., 0., 1.), 1.0),
            Err(Error::NotTangent(_))
        ));
    }

    #[test]
    fn hit_from_interior_point() {
        let t = collared();
        let hit = next_boundary_hit(
            &t,
            MVec::new(0., 0., 1.),
            MVec::new(1., 0., 0.),
            Domain::Interior,
        )
        .unwrap();
        let want = MVec::new(2f64.sqrt() / 2.0, 0.0, 6f64.sqrt() / 2.0);
        assert!(hit.point.distance(&want) < 1e-12);
        assert!((hit.t_hit - (1.0 / 3f64.sqrt()).atanh()).abs() < 1e-12);
        assert_eq!(hit.geodesic_class, CausalClass::TimeLike);
    }

    #[test]
    fn hit_along_orbit_chord() {
        let t = transverse();
        let [p, q, ..] = orbit();
        let v = departure_direction(p, q);
        let hit = next_boundary_hit(&t, p, v, Domain::Interior).unwrap();
        assert!(hit.point.distance(&q) < 1e-12);
        // cosh t = <p,q> = 2/sqrt(3)
        assert!((hit.t_hit - (2.0 / 3f64.sqrt()).acosh()).abs() < 1e-12);
    }

    #[test]
    fn trapped_geodesic_has_no_hit() {
        let r = next_boundary_hit(
            &collared(),
            MVec::new(0., 0., 1.),
            MVec::new(0., 1., 0.),
            Domain::Interior,
        );
        assert_eq!(r, Err(Error::NoHit));
    }

    #[test]
    fn tangent_basis_example() {
        let t = transverse();
        let p = orbit()[0];
        let ainv = t.apply_inv(p);
        assert!(ainv.distance(&MVec::new(-1.0 / 3.0, 0.0, 2f64.sqrt() / 6.0)) < 1e-15);
        let (u, n) = tangent_basis(&t, p).unwrap();
        assert!(inner(n, p).abs() < 1e-15);
        assert!(inner(u, p).abs() < 1e-15);
        assert!(inner(n, u).abs() < 1e-15);
    }

    #[test]
    fn collared_boundary_is_nonsingular() {
        let t = collared();
        for k in 0..200 {
            let s = -1.41 + 2.82 * k as f64 / 199.0;
            for signs in [[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]] {
                let p = boundary_point(&t, 1, s, signs).unwrap();
                let (u, n) = tangent_basis(&t, p).unwrap();
                assert!(inner(n, u).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chord_map_reverses() {
        let t = collared();
        let p = boundary_point(&t, 1, 0.4, [1.0, 1.0]).unwrap();
        let q = boundary_point(&t, 1, -0.9, [-1.0, 1.0]).unwrap();
        let v = departure_direction(p, q);
        let hit = next_boundary_hit(&t, p, v, Domain::Interior).unwrap();
        assert!(hit.point.distance(&q) < 1e-10);
        assert!(on_hyperboloid(hit.point, 1e-12));
        assert!(cone_eval(&t, 0.0, hit.point).unwrap().abs() < 1e-9);
        let back = next_boundary_hit(&t, hit.point, -hit.velocity, Domain::Interior).unwrap();
        assert!(back.point.distance(&p) < 1e-8);
    }

    #[test]
    fn outward_direction_rejected() {
        let t = transverse();
        let [p, q, ..] = orbit();
        let v = departure_direction(p, q);
        assert!(matches!(
            next_boundary_hit(&t, p, -v, Domain::Interior),
            Err(Error::InvalidArgument(_))
        ));
    }
}
