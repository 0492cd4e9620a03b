//! CSV of bounce points with their Klein images.

use anyhow::Result;
use hyperbilliard::billiard::Trajectory;
use hyperbilliard::confocal::klein_project;
use serde::Serialize;

#[derive(Serialize)]
struct Row {
    bounce: usize,
    x0: f64,
    x1: f64,
    x2: f64,
    xi1: Option<f64>,
    xi2: Option<f64>,
    at_infinity: bool,
}

/// One row per bounce; `xi1`/`xi2` are empty for points projected to infinity.
pub fn render(traj: &Trajectory) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (k, s) in traj.states.iter().enumerate() {
        let [x0, x1, x2] = s.point.0;
        let kp = klein_project(s.point).ok();
        w.serialize(Row {
            bounce: k,
            x0,
            x1,
            x2,
            xi1: kp.map(|p| p.xi1),
            xi2: kp.map(|p| p.xi2),
            at_infinity: kp.is_none(),
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
