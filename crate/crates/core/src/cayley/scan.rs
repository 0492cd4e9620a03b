//! Sign-change scan and bisection for the zero set of a Cayley determinant in `nu`.

use crate::confocal::TableParams;

use super::series::Condition;

/// Points of the bracket grid per unit of `span`.
const GRID_PER_SPAN: f64 = 1e3;
/// Inner window half-width beyond the parameters, in units of `span`.
const WINDOW: f64 = 4.0;
/// Normalized determinant below which an isolated candidate counts as a root.
pub const ROOT_RESIDUAL: f64 = 1e-9;

/// A scanned variable: `nu` itself, or `s = 1/nu` for the unbounded ends.
#[derive(Clone, Copy)]
enum Var {
    Nu,
    S,
}

impl Var {
    fn to_nu(self, x: f64) -> f64 {
        match self {
            Var::Nu => x,
            Var::S => 1.0 / x,
        }
    }
}

fn bisect(f: &impl Fn(f64) -> f64, var: Var, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let (nlo, nhi) = (var.to_nu(lo), var.to_nu(hi));
        if (nlo - nhi).abs() <= 1e-12 * nlo.abs().max(1.0) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return var.to_nu(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    var.to_nu(0.5 * (lo + hi))
}

fn scan_segment(
    f: &impl Fn(f64) -> f64,
    var: Var,
    from: f64,
    to: f64,
    steps: usize,
    out: &mut Vec<f64>,
) {
    let at = |k: usize| {
        if k == steps {
            to
        } else {
            from + (to - from) * k as f64 / steps as f64
        }
    };
    let mut x0 = at(0);
    let mut f0 = f(x0);
    if f0 == 0.0 {
        out.push(var.to_nu(x0));
    }
    for k in 1..=steps {
        let x1 = at(k);
        let f1 = f(x1);
        if f1 == 0.0 {
            out.push(var.to_nu(x1));
        } else if f0 != 0.0 && (f0 > 0.0) != (f1 > 0.0) {
            out.push(bisect(f, var, x0, x1, f0));
        }
        x0 = x1;
        f0 = f1;
    }
}

/// Candidate zeros of the normalized determinant, sorted and deduplicated. The inner
/// window is split at `0` and the table parameters; beyond it `1/nu` is scanned so
/// roots of large magnitude are not lost.
pub(crate) fn scan_roots(t: &TableParams, cond: Condition) -> Vec<f64> {
    let a = t.a();
    let lo = a.iter().fold(0.0_f64, |m, v| m.min(*v));
    let hi = a.iter().fold(0.0_f64, |m, v| m.max(*v));
    let span = hi - lo;
    let (left, right) = (lo - WINDOW * span, hi + WINDOW * span);
    let step = span / GRID_PER_SPAN;

    let by_nu = |nu: f64| cond.eval_s_normalized(t, 1.0 / nu);
    let by_s = |s: f64| cond.eval_s_normalized(t, s);

    let mut cuts: Vec<f64> = vec![left, right, 0.0];
    cuts.extend(a);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (mut from, mut to) = (w[0], w[1]);
        // The determinant blows up at nu = 0; stop one step short.
        if from == 0.0 {
            from = step.min(0.5 * to);
        }
        if to == 0.0 {
            to = -step.min(-0.5 * from);
        }
        let steps = (((to - from) / step).ceil() as usize).max(1);
        scan_segment(&by_nu, Var::Nu, from, to, steps, &mut out);
    }
    // Outer ends: s in [1/left, 0) and (0, 1/right].
    let outer_steps = (2.0 * GRID_PER_SPAN) as usize;
    for (from, to) in [(1.0 / left, 0.0), (1.0 / right, 0.0)] {
        let mut seg = Vec::new();
        scan_segment(&by_s, Var::S, from, to, outer_steps, &mut seg);
        out.extend(
            seg.into_iter()
                .filter(|nu| nu.is_finite() && (*nu < left || *nu > right)),
        );
    }

    out.sort_by(f64::total_cmp);
    out.dedup_by(|b, a| (*b - *a).abs() <= 1e-9 * a.abs().max(1.0));
    out
}
