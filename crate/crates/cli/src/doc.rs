//! JSON form of a trajectory.

use anyhow::{bail, Context, Result};
use hyperbilliard::billiard::{BilliardState, Caustic, Trajectory};
use hyperbilliard::confocal::{classify_table, klein_project};
use hyperbilliard::geodesic::Domain;
use hyperbilliard::MVec;
use serde::{Deserialize, Serialize};

use crate::config::parse_domain;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub a: [f64; 3],
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub point: [f64; 3],
    pub dir: [f64; 3],
    pub class: String,
}

/// A caustic parameter: a number, or the string `"inf"` for light-like chords.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NuDoc {
    Finite(f64),
    Text(String),
}

impl From<Caustic> for NuDoc {
    fn from(c: Caustic) -> Self {
        match c {
            Caustic::Finite(v) => NuDoc::Finite(v),
            Caustic::Infinite => NuDoc::Text("inf".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub class: String,
    pub connectivity: String,
    pub nu: NuDoc,
    pub f: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureDoc {
    pub period: Option<usize>,
    /// `null` when no return was measured.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryDoc {
    pub table: TableDoc,
    pub domain: String,
    pub states: Vec<StateDoc>,
    pub segments: Vec<SegmentDoc>,
    /// Klein image of each bounce point, `null` at infinity.
    pub klein: Vec<Option<[f64; 2]>>,
    pub nu: Option<NuDoc>,
    pub f_ratios: Option<[f64; 3]>,
    pub closure: ClosureDoc,
    /// `"complete"`, or `"stopped: <reason>"` for a partial run.
    pub status: String,
}

pub fn status_of(traj: &Trajectory) -> String {
    match &traj.stop {
        None => "complete".into(),
        Some(e) => format!("stopped: {e}"),
    }
}

impl TrajectoryDoc {
    pub fn new(traj: &Trajectory, tol: f64, status: String) -> Self {
        let a = traj.table.a();
        let closure = traj.closure_with(tol);
        TrajectoryDoc {
            table: TableDoc {
                a,
                kind: traj.table.kind().as_str().into(),
            },
            domain: traj.domain.as_str().into(),
            states: traj
                .states
                .iter()
                .map(|s| StateDoc {
                    point: s.point.0,
                    dir: s.dir.0,
                    class: hyperbilliard::mink::causal_class(s.dir).as_str().into(),
                })
                .collect(),
            segments: traj
                .segments
                .iter()
                .map(|s| SegmentDoc {
                    class: s.class.as_str().into(),
                    connectivity: s.connectivity.as_str().into(),
                    nu: s.nu.into(),
                    f: s.integrals.f,
                })
                .collect(),
            klein: traj
                .states
                .iter()
                .map(|s| klein_project(s.point).ok().map(|k| [k.xi1, k.xi2]))
                .collect(),
            nu: traj.nu().map(NuDoc::from),
            f_ratios: traj.f_ratios(),
            closure: ClosureDoc {
                period: closure.period,
                residual: closure.residual.is_finite().then_some(closure.residual),
            },
            status,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trajectory serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("parsing trajectory JSON")
    }

    /// Rebuilds the trajectory, checking every state against the table. Chord data
    /// are recomputed rather than trusted.
    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let [a0, a1, a2] = self.table.a;
        let t = classify_table(a0, a1, a2)?;
        if t.kind().as_str() != self.table.kind {
            bail!(
                "table kind {:?} does not match parameters ({a0}, {a1}, {a2})",
                self.table.kind
            );
        }
        let domain: Domain = parse_domain(&self.domain)?;
        let mut states = Vec::with_capacity(self.states.len());
        for (k, s) in self.states.iter().enumerate() {
            let (point, dir) = (MVec(s.point), MVec(s.dir));
            BilliardState::new(&t, point, dir).with_context(|| format!("state {k}"))?;
            // Keep the stored bits; `new` would renormalize the direction.
            states.push(BilliardState { point, dir });
        }
        if states.is_empty() {
            bail!("trajectory has no states");
        }
        Ok(Trajectory::from_states(&t, domain, states))
    }
}
