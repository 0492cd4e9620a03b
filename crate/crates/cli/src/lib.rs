//! `hbill`: classify tables, run billiard trajectories and solve for periodic caustics
//! on the one-sheeted hyperboloid.

pub mod commands;
pub mod config;
pub mod doc;
pub mod svg;
pub mod table_csv;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{parse_caustic, parse_domain, parse_floats, parse_signs, Format, RunConfig};
use hyperbilliard::billiard::Caustic;
use hyperbilliard::geodesic::Domain;

/// Exit status for a run that stopped early; the partial output is still written.
pub const EXIT_STOPPED: i32 = 3;
/// Exit status for invalid input or a failed computation.
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hbill",
    version,
    about = "Billiards in confocal conics on the one-sheeted hyperboloid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Read defaults from a `key = value` file; flags on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output format (reports default to text, trajectories to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Tolerance for detecting that a trajectory has closed.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct TableArgs {
    /// Table parameters a0 a1 a2.
    #[arg(num_args = 0..=3, allow_negative_numbers = true, value_name = "A")]
    pub a: Vec<f64>,
}

#[derive(Args, Debug, Default)]
pub struct PointArgs {
    /// Point as x0,x1,x2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<3>)]
    pub point: Option<[f64; 3]>,

    /// Boundary point with this x1 coordinate.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "point")]
    pub at: Option<f64>,

    /// Signs of x0 and x2 for --at, e.g. "-,+".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_signs)]
    pub signs: Option<[f64; 2]>,
}

#[derive(Args, Debug, Default)]
pub struct DirArgs {
    /// Initial direction as v0,v1,v2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<3>)]
    pub dir: Option<[f64; 3]>,

    /// Aim at this point x0,x1,x2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<3>)]
    pub toward: Option<[f64; 3]>,

    /// Aim tangent to the caustic with this parameter ("inf" for light-like).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_caustic)]
    pub caustic: Option<Caustic>,

    /// Which tangent direction to take with --caustic.
    #[arg(long)]
    pub branch: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table kind, Klein coefficients and foci.
    Classify {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Confocal coordinates of a point.
    Jacobi {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Run a billiard trajectory.
    Simulate {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        dir: DirArgs,
        /// Number of bounces (default 20).
        #[arg(long)]
        bounces: Option<usize>,
        #[arg(long, value_parser = parse_domain)]
        domain: Option<Domain>,
    },
    /// Caustic and integrals of one chord.
    Caustic {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        dir: DirArgs,
    },
    /// Caustics of periodic trajectories.
    Cayley {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        period: Option<usize>,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Check by simulation that a caustic gives a closed trajectory.
    Verify {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        period: Option<usize>,
        /// Caustic parameter (same as --caustic).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_caustic)]
        nu: Option<Caustic>,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Apply the alternating antipodal map to a stored trajectory.
    Aa {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Re-emit a stored trajectory in another format.
    Export {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
}

impl Cli {
    /// Options given on the command line, as a config to lay over a file.
    pub fn to_config(&self) -> anyhow::Result<RunConfig> {
        let mut c = RunConfig {
            format: self.format,
            out: self.out.clone(),
            tol: self.tol,
            ..Default::default()
        };
        let set_table = |c: &mut RunConfig, t: &TableArgs| -> anyhow::Result<()> {
            match t.a.len() {
                0 => {}
                3 => c.table = Some([t.a[0], t.a[1], t.a[2]]),
                n => anyhow::bail!("expected three table parameters, got {n}"),
            }
            Ok(())
        };
        let set_point = |c: &mut RunConfig, p: &PointArgs| {
            c.point = p.point;
            c.at = p.at;
            c.signs = p.signs;
        };
        let set_dir = |c: &mut RunConfig, d: &DirArgs| {
            c.dir = d.dir;
            c.toward = d.toward;
            c.caustic = d.caustic;
            c.branch = d.branch;
        };
        match &self.command {
            Command::Classify { table } => set_table(&mut c, table)?,
            Command::Jacobi { table, point } => {
                set_table(&mut c, table)?;
                set_point(&mut c, point);
            }
            Command::Simulate {
                table,
                point,
                dir,
                bounces,
                domain,
            } => {
                set_table(&mut c, table)?;
                set_point(&mut c, point);
                set_dir(&mut c, dir);
                c.bounces = *bounces;
                c.domain = *domain;
            }
            Command::Caustic { table, point, dir } => {
                set_table(&mut c, table)?;
                set_point(&mut c, point);
                set_dir(&mut c, dir);
            }
            Command::Cayley {
                table,
                period,
                point,
            } => {
                set_table(&mut c, table)?;
                set_point(&mut c, point);
                c.period = *period;
            }
            Command::Verify {
                table,
                period,
                nu,
                point,
            } => {
                set_table(&mut c, table)?;
                set_point(&mut c, point);
                c.period = *period;
                c.caustic = *nu;
            }
            Command::Aa { input } | Command::Export { input } => c.input = input.clone(),
        }
        Ok(c)
    }
}

/// Rendered output and the process exit status.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    pub out: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let base = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let cfg = base.overlay(cli.to_config()?);
    let (output, code) = commands::dispatch(&cli.command, &cfg)?;
    Ok(Outcome {
        output,
        code,
        out: cfg.out,
    })
}
