use std::f64::consts::PI;

use hyperbilliard::billiard::{aa_map, reflect, simulate, BilliardState, Caustic};
use hyperbilliard::cayley::{hankel_det_light_normalized, verify_caustic};
use hyperbilliard::confocal::{
    boundary_point, classify_table, jacobi_coordinates, klein_boundary_coeffs, klein_project,
    region_classify, JacobiCase, JacobiRoots, Region,
};
use hyperbilliard::geodesic::{
    connectivity, flow, next_boundary_hit, normalize_direction, tangent_basis, Connectivity, Domain,
};
use hyperbilliard::mink::{causal_class, inner, on_hyperboloid, wedge, wedge_norm2};
use hyperbilliard::{CausalClass, MVec, TableParams};
use proptest::prelude::*;

fn collared() -> TableParams {
    classify_table(3., 6., 9.).unwrap()
}

fn transverse() -> TableParams {
    classify_table(3., -3., 6.).unwrap()
}

fn table(collar: bool) -> TableParams {
    if collar {
        collared()
    } else {
        transverse()
    }
}

/// `(sinh s, cosh s cos th, cosh s sin th)` covers the hyperboloid.
fn on_h(s: f64, th: f64) -> MVec {
    MVec::new(s.sinh(), s.cosh() * th.cos(), s.cosh() * th.sin())
}

fn boundary(t: &TableParams, v: f64, s0: bool, s2: bool) -> Option<MVec> {
    let signs = [
        if s0 { 1.0 } else { -1.0 },
        if s2 && t.is_collared() { -1.0 } else { 1.0 },
    ];
    boundary_point(t, 1, v, signs).filter(|p| tangent_basis(t, *p).is_ok())
}

/// Inward unit-ish direction at boundary point `p` at angle `th` from the tangent.
fn inward(t: &TableParams, p: MVec, th: f64, domain: Domain) -> Option<MVec> {
    let (u, n) = tangent_basis(t, p).ok()?;
    let v = u * (th.cos() / u.euclid()) + n * (th.sin() / n.euclid());
    let dq = inner(n, v);
    if dq.abs() < 1e-3 * v.euclid() * n.euclid() {
        return None;
    }
    Some(if domain.sign() * dq > 0.0 { v } else { -v })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wedge_norm_matches_gram(x in prop::array::uniform3(-4.0..4.0f64), y in prop::array::uniform3(-4.0..4.0f64)) {
        let (x, y) = (MVec(x), MVec(y));
        let gram = inner(x, y).powi(2) - inner(x, x) * inner(y, y);
        let w = wedge(x, y);
        let scale = x.euclid2() * y.euclid2();
        prop_assert!((gram - (-w.w12 * w.w12 + w.w02 * w.w02 + w.w01 * w.w01)).abs() <= 1e-12 * scale.max(1.0));
        prop_assert!((gram - wedge_norm2(x, y)).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn causal_class_is_scale_invariant(v in prop::array::uniform3(-4.0..4.0f64), c in prop_oneof![-1e3..-1e-3f64, 1e-3..1e3f64]) {
        let v = MVec(v);
        prop_assert_eq!(causal_class(v * c), causal_class(v));
    }

    #[test]
    fn jacobi_roots_follow_their_case(collar in any::<bool>(), s in -2.5..2.5f64, th in 0.0..2.0 * PI) {
        let t = table(collar);
        let x = on_h(s, th);
        prop_assume!(x.0.iter().all(|c| c.abs() > 1e-3));
        let [a0, a1, a2] = t.a();
        let jc = jacobi_coordinates(&t, x);
        let r = jc.as_vec();
        let all = |lo: f64, hi: f64| r.iter().all(|l| lo < *l && *l < hi);
        match jc.case {
            JacobiCase::CollaredGeneric => {
                prop_assert!(r.len() == 2 && r[0] < a0 && a1 < r[1] && r[1] < a2, "{r:?}");
            }
            JacobiCase::BelowA1 => prop_assert!(all(f64::NEG_INFINITY, a1), "{r:?}"),
            JacobiCase::BetweenA1A0 => prop_assert!(all(a1, a0), "{r:?}"),
            JacobiCase::BetweenA0A2 => prop_assert!(all(a0, a2), "{r:?}"),
            JacobiCase::AboveA2 => prop_assert!(all(a2, f64::INFINITY), "{r:?}"),
            JacobiCase::NoRoots => prop_assert!(r.is_empty()),
            JacobiCase::OnDividingLine => prop_assert_eq!(r.len(), 1),
            c => prop_assert!(false, "coordinate-plane case {c:?} off the planes"),
        }
        if collar {
            prop_assert!(matches!(jc.roots, JacobiRoots::TwoRoots(..)));
        } else {
            let e = region_classify(&t, x).unwrap() == Region::E;
            prop_assert_eq!(e, matches!(jc.roots, JacobiRoots::NoRealRoots));
        }
    }

    #[test]
    fn klein_image_of_boundary(collar in any::<bool>(), v in -3.0..3.0f64, s0 in any::<bool>(), s2 in any::<bool>()) {
        let t = table(collar);
        let p = boundary_point(&t, 1, v, [if s0 { 1.0 } else { -1.0 }, if s2 { -1.0 } else { 1.0 }]);
        prop_assume!(p.is_some());
        let k = klein_project(p.unwrap());
        prop_assume!(k.is_ok());
        let k = k.unwrap();
        let (b1, b2) = klein_boundary_coeffs(&t);
        let lhs = k.xi1 * k.xi1 / b1 + k.xi2 * k.xi2 / b2;
        prop_assert!((lhs - 1.0).abs() <= 1e-12 * (k.xi1 * k.xi1 / b1.abs() + k.xi2 * k.xi2 / b2.abs()).max(1.0));
    }

    #[test]
    fn flow_stays_on_hyperboloid(s in -2.0..2.0f64, th in 0.0..2.0 * PI, v in prop::array::uniform3(-2.0..2.0f64), time in -3.0..3.0f64) {
        let x = on_h(s, th);
        let v = MVec(v);
        let v = v - x * inner(x, v);
        prop_assume!(causal_class(v) != CausalClass::Zero);
        let y = flow(x, normalize_direction(v), time).unwrap();
        prop_assert!((inner(y, y) - 1.0).abs() <= 1e-12 * y.euclid2().max(1.0));
    }

    #[test]
    fn chord_hits_boundary_and_reverses(collar in any::<bool>(), v in -3.0..3.0f64, s0 in any::<bool>(), s2 in any::<bool>(), th in 0.05..PI - 0.05) {
        let t = table(collar);
        let p = boundary(&t, v, s0, s2);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let d = inward(&t, p, th, Domain::Interior);
        prop_assume!(d.is_some());
        let hit = next_boundary_hit(&t, p, d.unwrap(), Domain::Interior);
        prop_assume!(hit.is_ok());
        let hit = hit.unwrap();
        let y = hit.point;
        prop_assert!(on_hyperboloid(y, 1e-9));
        prop_assert!(t.boundary_form(y).abs() <= 1e-9 * y.euclid2().max(1.0));
        if connectivity(p, y) != Connectivity::Antipodal {
            let c = connectivity(p, y);
            let class = hit.geodesic_class;
            let agree = matches!(
                (c, class),
                (Connectivity::UniqueSpaceLike, CausalClass::SpaceLike)
                    | (Connectivity::UniqueTimeLike, CausalClass::TimeLike)
                    | (Connectivity::UniqueLightLike, CausalClass::LightLike)
                    | (Connectivity::NotConnectable, CausalClass::SpaceLike)
            );
            prop_assert!(agree, "{c:?} vs {class:?}");
        }
        // Going back along the arrival velocity returns to the start.
        let back = next_boundary_hit(&t, y, -hit.velocity, Domain::Interior).unwrap();
        prop_assert!(back.point.distance(&p) <= 1e-8 * p.euclid().max(1.0), "{} vs {}", back.point, p);
    }

    #[test]
    fn reflection_is_an_involution(collar in any::<bool>(), v in -3.0..3.0f64, s0 in any::<bool>(), s2 in any::<bool>(), w in prop::array::uniform3(-2.0..2.0f64)) {
        let t = table(collar);
        let p = boundary(&t, v, s0, s2);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let w = MVec(w);
        let w = w - p * inner(p, w);
        let r = reflect(&t, p, w);
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        let rr = reflect(&t, p, r).unwrap();
        // Rounding is amplified by |n|^2 / |<n,n>| near a light-like normal.
        let g = t.apply_inv(p);
        let n = g - p * inner(g, p);
        let cond = (n.euclid2() / inner(n, n).abs()).max(1.0);
        prop_assert!(rr.distance(&w) <= 1e-12 * cond * cond * w.euclid().max(1.0));
        prop_assert!((inner(r, r) - inner(w, w)).abs() <= 1e-12 * cond * cond * w.euclid2().max(1.0));
        prop_assert_eq!(causal_class(r), causal_class(w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn caustic_and_integrals_are_conserved(collar in any::<bool>(), v in -3.0..3.0f64, s0 in any::<bool>(), s2 in any::<bool>(), th in 0.05..PI - 0.05) {
        let t = table(collar);
        let p = boundary(&t, v, s0, s2);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let d = inward(&t, p, th, Domain::Interior);
        prop_assume!(d.is_some());
        let traj = simulate(&t, BilliardState::new(&t, p, d.unwrap()).unwrap(), 100, Domain::Interior).unwrap();
        prop_assume!(traj.segments.len() >= 2);
        if let Some(Caustic::Finite(nu0)) = traj.nu() {
            for s in &traj.segments {
                let nu = s.nu.finite().unwrap();
                prop_assert!((nu - nu0).abs() <= 1e-6 * (1.0 + nu0.abs()), "{nu} vs {nu0}");
            }
        }
        for s in &traj.segments {
            prop_assert!(s.integrals.sum().abs() <= 1e-9 * s.integrals.max_abs().max(1e-300));
        }
        prop_assert!(traj.f_ratio_drift() <= 1e-6);
        if collar {
            let closure = traj.closure();
            if let Some(n) = closure.period {
                prop_assert_eq!(n % 2, 0);
            }
            let mapped = aa_map(&traj).unwrap();
            for (a, b) in traj.segments.iter().zip(&mapped.segments) {
                match (a.nu, b.nu) {
                    (Caustic::Finite(x), Caustic::Finite(y)) => prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs())),
                    (x, y) => prop_assert_eq!(x, y),
                }
            }
        }
    }
}

/// Bisects `a2` to a zero of the light-like condition of size `m`.
fn light_root(a0: f64, a1: f64, m: usize) -> Option<f64> {
    let f = |c: f64| hankel_det_light_normalized(&classify_table(a0, a1, c).unwrap(), m).unwrap();
    let grid: Vec<f64> = (1..=400).map(|k| a1 + 0.25 * k as f64).collect();
    let w = grid
        .windows(2)
        .find(|w| f(w[0]).signum() != f(w[1]).signum())?;
    let (mut lo, mut hi) = (w[0], w[1]);
    let flo = f(lo).signum();
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[test]
fn light_like_closures_have_even_period() {
    let mut found = 0;
    for m in [2, 3] {
        for a1 in [5.0, 6.0, 8.0] {
            let Some(a2) = light_root(3.0, a1, m) else {
                continue;
            };
            let t = classify_table(3.0, a1, a2).unwrap();
            let x = boundary_point(&t, 1, 0.3, [1.0, 1.0]).unwrap();
            let v = verify_caustic(&t, Caustic::Infinite, 2 * m, x).unwrap();
            assert!(v
                .trajectory
                .segments
                .iter()
                .all(|s| s.class == CausalClass::LightLike));
            if let Some(p) = v.period {
                assert_eq!(p % 2, 0, "table (3, {a1}, {a2})");
                found += 1;
            }
        }
    }
    assert!(found > 0);
}
