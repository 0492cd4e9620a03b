//! Explicit caustic values for periods 3, 4 and 6 with `A = diag(a, b, c)`.

use crate::confocal::TableParams;

/// Real, finite roots of `(den ± 2 sqrt(rad)) nu = abc`.
fn pm_roots(p: f64, den: f64, rad: f64) -> Vec<f64> {
    if rad < 0.0 {
        return Vec::new();
    }
    let r = 2.0 * rad.sqrt();
    [den + r, den - r]
        .into_iter()
        .filter(|d| *d != 0.0)
        .map(|d| p / d)
        .collect()
}

/// Period-3 caustics: roots of `3p^2 - 2pq nu + (4pr - q^2) nu^2`.
pub fn period3(t: &TableParams) -> Vec<f64> {
    let [a, b, c] = t.a();
    let (p, q, r) = (a * b * c, a * b + a * c + b * c, a + b + c);
    let lead = 4.0 * p * r - q * q;
    let rad = a * a * b * b + a * a * c * c + b * b * c * c - p * r;
    if rad < 0.0 {
        return Vec::new();
    }
    // Roots are (pq ± 2p sqrt(rad)) / lead; the product 3p^2/lead gives the other one
    // without cancellation.
    let big = p * q + (p * q).signum() * 2.0 * p.abs() * rad.sqrt();
    if lead == 0.0 || big == 0.0 {
        return Vec::new();
    }
    [big / lead, 3.0 * p * p / big]
        .into_iter()
        .filter(|v| v.is_finite())
        .collect()
}

pub fn period4(t: &TableParams) -> Vec<f64> {
    let [a, b, c] = t.a();
    let p = a * b * c;
    [
        -a * b + b * c + a * c,
        a * b - b * c + a * c,
        a * b + b * c - a * c,
    ]
    .into_iter()
    .filter(|d| *d != 0.0)
    .map(|d| p / d)
    .collect()
}

pub fn period6(t: &TableParams) -> Vec<f64> {
    let [a, b, c] = t.a();
    let p = a * b * c;
    let mut out = pm_roots(p, -a * b + a * c + b * c, a * b * (c - a) * (c - b));
    out.extend(period3(t));
    out.extend(pm_roots(
        p,
        a * b + a * c - b * c,
        b * c * (a - b) * (a - c),
    ));
    out.extend(pm_roots(
        p,
        a * b - a * c + b * c,
        a * c * (a - b) * (c - b),
    ));
    out
}

/// Closed-form caustics for `n` in {3, 4, 6}, sorted.
pub fn closed_form_caustics(t: &TableParams, n: usize) -> Option<Vec<f64>> {
    let mut v = match n {
        3 => period3(t),
        4 => period4(t),
        6 => period6(t),
        _ => return None,
    };
    v.sort_by(f64::total_cmp);
    Some(v)
}
