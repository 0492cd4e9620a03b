//! SVG picture of a trajectory in the Klein plane. Output depends only on the input,
//! with every coordinate printed to 9 significant digits.

use std::fmt::Write as _;

use hyperbilliard::billiard::Trajectory;
use hyperbilliard::confocal::{klein_boundary_coeffs, klein_project, projected_caustic_coeffs};
use hyperbilliard::geodesic::normalize_direction;
use hyperbilliard::mink::{causal_class, inner};
use hyperbilliard::{CausalClass, MVec};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;
const CHORD_SAMPLES: usize = 64;
const CONIC_SAMPLES: usize = 256;
/// View half-size limit in units of the largest boundary semi-axis.
const CAP: f64 = 4.0;

type P2 = (f64, f64);

#[derive(Clone, Copy)]
struct View {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    scale: f64,
}

impl View {
    fn px(&self, p: P2) -> P2 {
        (
            (p.0 - self.xmin) * self.scale,
            (self.ymax - p.1) * self.scale,
        )
    }

    fn height(&self) -> f64 {
        (self.ymax - self.ymin) * self.scale
    }

    fn radius(&self) -> f64 {
        self.xmin
            .abs()
            .max(self.xmax.abs())
            .max(self.ymin.abs())
            .max(self.ymax.abs())
    }

    /// Segment of the ray `p + t d` (t >= 0) inside the view.
    fn clip_ray(&self, p: P2, d: P2) -> Option<(P2, P2)> {
        let (mut t0, mut t1) = (0.0_f64, f64::INFINITY);
        for (o, dd, lo, hi) in [
            (p.0, d.0, self.xmin, self.xmax),
            (p.1, d.1, self.ymin, self.ymax),
        ] {
            if dd == 0.0 {
                if o < lo || o > hi {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lo - o) / dd, (hi - o) / dd);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
        (t1 > t0 && t1.is_finite()).then_some((
            (p.0 + t0 * d.0, p.1 + t0 * d.1),
            (p.0 + t1 * d.0, p.1 + t1 * d.1),
        ))
    }
}

/// Shortest decimal with 9 significant digits; `-0` prints as `0`.
fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (8 - mag).clamp(0, 12) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" || s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn polyline(out: &mut String, view: &View, pts: &[P2], class: &str, closed: bool) {
    if pts.len() < 2 {
        return;
    }
    let tag = if closed { "polygon" } else { "polyline" };
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = view.px(*p);
            format!("{},{}", num(x), num(y))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<{tag} class="{class}" points="{}"/>"#,
        coords.join(" ")
    );
}

/// Sampled branches of `xi1^2/c1 + xi2^2/c2 = 1` reaching past radius `r`.
fn conic(c1: f64, c2: f64, r: f64) -> Vec<(Vec<P2>, bool)> {
    let sample = |f: &dyn Fn(f64) -> P2, lo: f64, hi: f64, n: usize| -> Vec<P2> {
        (0..=n)
            .map(|k| f(lo + (hi - lo) * k as f64 / n as f64))
            .collect()
    };
    if c1 > 0.0 && c2 > 0.0 {
        let (p, q) = (c1.sqrt(), c2.sqrt());
        let tau = std::f64::consts::TAU;
        let mut pts = sample(&|u| (p * u.cos(), q * u.sin()), 0.0, tau, CONIC_SAMPLES);
        pts.pop();
        vec![(pts, true)]
    } else if c1 < 0.0 && c2 > 0.0 {
        let (p, q) = ((-c1).sqrt(), c2.sqrt());
        let u = (2.0 * r / p.min(q)).asinh();
        [1.0, -1.0]
            .iter()
            .map(|s| {
                (
                    sample(
                        &|t| (p * t.sinh(), s * q * t.cosh()),
                        -u,
                        u,
                        CONIC_SAMPLES / 2,
                    ),
                    false,
                )
            })
            .collect()
    } else if c1 > 0.0 && c2 < 0.0 {
        let (p, q) = (c1.sqrt(), (-c2).sqrt());
        let u = (2.0 * r / p.min(q)).asinh();
        [1.0, -1.0]
            .iter()
            .map(|s| {
                (
                    sample(
                        &|t| (s * p * t.cosh(), q * t.sinh()),
                        -u,
                        u,
                        CONIC_SAMPLES / 2,
                    ),
                    false,
                )
            })
            .collect()
    } else {
        Vec::new()
    }
}

/// Homogeneous samples of the chord from state `k` to state `k+1`, ending exactly at the
/// landing point.
fn chord_samples(x: MVec, dir: MVec, y: MVec) -> Vec<MVec> {
    let v = normalize_direction(dir);
    let class = causal_class(v);
    let end = match class {
        CausalClass::SpaceLike => {
            let t = inner(y, v).atan2(inner(y, x));
            if t <= 0.0 {
                t + std::f64::consts::TAU
            } else {
                t
            }
        }
        CausalClass::TimeLike => (-inner(y, v)).asinh(),
        CausalClass::LightLike | CausalClass::Zero => {
            let d = y - x;
            let vv = v.euclid2();
            if vv == 0.0 {
                0.0
            } else {
                (d.0[0] * v.0[0] + d.0[1] * v.0[1] + d.0[2] * v.0[2]) / vv
            }
        }
    };
    let at = |t: f64| match class {
        CausalClass::SpaceLike => x * t.cos() + v * t.sin(),
        CausalClass::TimeLike => x * t.cosh() + v * t.sinh(),
        _ => x + v * t,
    };
    let mut pts: Vec<MVec> = (0..CHORD_SAMPLES)
        .map(|k| at(end * k as f64 / CHORD_SAMPLES as f64))
        .collect();
    pts.push(y);
    pts
}

fn side(p: MVec) -> i8 {
    if klein_project(p).is_err() {
        0
    } else if p.0[0] > 0.0 {
        1
    } else {
        -1
    }
}

fn unit(x: f64, y: f64) -> P2 {
    let n = x.hypot(y);
    if n == 0.0 {
        (0.0, 0.0)
    } else {
        (x / n, y / n)
    }
}

/// Splits a chord into finite Klein polylines plus rays to the points at infinity
/// where `x0` changes sign. Each ray starts at the far end of its run, so the visible
/// part of the run lies on it.
fn project_chord(samples: &[MVec], runs: &mut Vec<Vec<P2>>, rays: &mut Vec<(P2, P2)>) {
    let proj = |p: MVec| (p.0[1] / p.0[0], p.0[2] / p.0[0]);
    let mut run: Vec<P2> = Vec::new();
    // Incoming ray whose anchor is the last point of the current run.
    let mut pending: Option<usize> = None;
    let mut close = |run: &mut Vec<P2>, pending: &mut Option<usize>, rays: &mut Vec<(P2, P2)>| {
        if let (Some(i), Some(last)) = (pending.take(), run.last()) {
            rays[i].0 = *last;
        }
        runs.push(std::mem::take(run));
    };
    if side(samples[0]) != 0 {
        run.push(proj(samples[0]));
    }
    for w in samples.windows(2) {
        let (p, q) = (w[0], w[1]);
        let (sp, sq) = (side(p), side(q));
        if sp == sq {
            if sq != 0 {
                run.push(proj(q));
            }
            continue;
        }
        let cross = if sp == 0 {
            p
        } else if sq == 0 {
            q
        } else {
            p + (q - p) * (p.0[0] / (p.0[0] - q.0[0]))
        };
        let d = unit(cross.0[1], cross.0[2]);
        if sp != 0 {
            if let Some(first) = run.first() {
                rays.push((*first, (sp as f64 * d.0, sp as f64 * d.1)));
            }
            close(&mut run, &mut pending, rays);
        }
        if sq != 0 {
            let start = proj(q);
            pending = Some(rays.len());
            rays.push((start, (sq as f64 * d.0, sq as f64 * d.1)));
            run.push(start);
        }
    }
    close(&mut run, &mut pending, rays);
}

fn fit_view(traj: &Trajectory, b: (f64, f64)) -> View {
    let semi = b.0.abs().sqrt().max(b.1.abs().sqrt());
    let cap = CAP * semi;
    let mut pts: Vec<P2> = traj
        .states
        .iter()
        .filter_map(|s| klein_project(s.point).ok())
        .map(|k| (k.xi1, k.xi2))
        .collect();
    if b.0 > 0.0 {
        pts.extend([(b.0.sqrt(), 0.0), (-b.0.sqrt(), 0.0)]);
    }
    if b.1 > 0.0 {
        pts.extend([(0.0, b.1.sqrt()), (0.0, -b.1.sqrt())]);
    }
    let clamp = |v: f64| v.clamp(-cap, cap);
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for (x, y) in pts {
        xmin = xmin.min(clamp(x));
        xmax = xmax.max(clamp(x));
        ymin = ymin.min(clamp(y));
        ymax = ymax.max(clamp(y));
    }
    let floor = 2.0 * semi;
    let (cx, cy) = (0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
    let hw = 0.5 * (xmax - xmin).max(floor) * (1.0 + 2.0 * MARGIN);
    let hh = 0.5 * (ymax - ymin).max(floor) * (1.0 + 2.0 * MARGIN);
    let (xmin, xmax, ymin, ymax) = (cx - hw, cx + hw, cy - hh, cy + hh);
    View {
        xmin,
        xmax,
        ymin,
        ymax,
        scale: WIDTH / (xmax - xmin),
    }
}

pub fn render(traj: &Trajectory) -> String {
    let b = klein_boundary_coeffs(&traj.table);
    let view = fit_view(traj, b);
    let (w, h) = (WIDTH, view.height());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    let _ = writeln!(
        out,
        r##"<defs><clipPath id="view"><rect x="0" y="0" width="{}" height="{}"/></clipPath><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#c0392b"/></marker></defs>"##,
        num(w),
        num(h)
    );
    out.push_str("<style>.boundary{fill:none;stroke:#222;stroke-width:1.5}.caustic{fill:none;stroke:#2471a3;stroke-width:1;stroke-dasharray:5 4}.chord{fill:none;stroke:#c0392b;stroke-width:1}.ray{stroke:#c0392b;stroke-width:1;stroke-dasharray:2 3}.bounce{fill:#111}</style>\n");
    let _ = writeln!(
        out,
        r#"<rect width="{}" height="{}" fill="white"/>"#,
        num(w),
        num(h)
    );
    out.push_str("<g clip-path=\"url(#view)\">\n");

    let r = view.radius();
    for (pts, closed) in conic(b.0, b.1, r) {
        polyline(&mut out, &view, &pts, "boundary", closed);
    }
    if let Some(nu) = traj.nu().and_then(|c| c.finite()) {
        if let Ok((c1, c2)) = projected_caustic_coeffs(&traj.table, nu) {
            for (pts, closed) in conic(c1, c2, r) {
                polyline(&mut out, &view, &pts, "caustic", closed);
            }
        }
    }

    let (mut runs, mut rays) = (Vec::new(), Vec::new());
    for pair in traj.states.windows(2) {
        let samples = chord_samples(pair[0].point, pair[0].dir, pair[1].point);
        project_chord(&samples, &mut runs, &mut rays);
    }
    for run in &runs {
        polyline(&mut out, &view, run, "chord", false);
    }
    out.push_str("</g>\n");

    for (p, d) in rays {
        if let Some((a, e)) = view.clip_ray(p, d) {
            let (a, e) = (view.px(a), view.px(e));
            let _ = writeln!(
                out,
                r#"<line class="ray" x1="{}" y1="{}" x2="{}" y2="{}" marker-end="url(#arrow)"/>"#,
                num(a.0),
                num(a.1),
                num(e.0),
                num(e.1)
            );
        }
    }
    for (k, s) in traj.states.iter().enumerate() {
        if let Ok(kp) = klein_project(s.point) {
            let (x, y) = view.px((kp.xi1, kp.xi2));
            if (0.0..=w).contains(&x) && (0.0..=h).contains(&y) {
                let _ = writeln!(
                    out,
                    r#"<circle class="bounce" cx="{}" cy="{}" r="2.5"><title>{k}</title></circle>"#,
                    num(x),
                    num(y)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(123456.789012), "123456.789");
        assert_eq!(num(-1.5e-7), "-0.00000015");
        assert_eq!(num(-1e-20), "0");
        assert_eq!(num(2.5), "2.5");
    }

    #[test]
    fn ray_clipping() {
        let v = View {
            xmin: -1.0,
            xmax: 1.0,
            ymin: -1.0,
            ymax: 1.0,
            scale: 1.0,
        };
        let (a, e) = v.clip_ray((0.0, 0.0), (1.0, 0.0)).unwrap();
        assert_eq!((a, e), ((0.0, 0.0), (1.0, 0.0)));
        let (a, _) = v.clip_ray((-5.0, 0.5), (1.0, 0.0)).unwrap();
        assert_eq!(a, (-1.0, 0.5));
        assert!(v.clip_ray((5.0, 0.0), (1.0, 0.0)).is_none());
    }
}
