//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input or validation error, 3 no boundary /
//! infeasible pencil, 4 internal invariant violation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::ConfigFile;
use crate::error::{Error, Result};
use crate::presets::PresetId;
use crate::report::{self, LimitView, NumView};
use crate::singularity::ConeSingularity;

#[derive(Debug, Parser)]
#[command(name = "conesing", version, about = "Valuations, discrepancies and jumping numbers of cone singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: thresholds, valuations, classification, jumps, limiting table.
    Analyze {
        #[arg(long = "config", required = true, num_args = 1..)]
        configs: Vec<PathBuf>,
        #[command(flatten)]
        format: Format,
    },
    /// First N jumping numbers of the vertex.
    Jumping {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[command(flatten)]
        format: Format,
    },
    /// Limiting valuations t_m = ceil(m t)/m for m = 1..=M.
    Limit {
        #[command(flatten)]
        source: Source,
        #[arg(long = "max-m", value_parser = clap::value_parser!(u64).range(1..))]
        max_m: u64,
        #[command(flatten)]
        format: Format,
    },
    /// Built-in surfaces: abelian-cover, p1xE[:d], quadrant-synthetic[:k1,k2].
    Preset {
        id: String,
        #[arg(long, conflicts_with = "run", required_unless_present = "run")]
        emit_config: bool,
        #[arg(long)]
        run: bool,
        #[command(flatten)]
        format: Format,
    },
    /// CSV of a cone cross-section and the threshold pencil.
    Plotdata {
        #[command(flatten)]
        source: Source,
        /// Two basis indices, e.g. `0,1`.
        #[arg(long)]
        plane: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Format {
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

impl Format {
    fn is_json(self) -> bool {
        self.json
    }
}

pub fn load_config(path: &PathBuf) -> Result<ConeSingularity> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ConfigFile::from_json(&text)?.singularity()
}

fn load_source(src: &Source) -> Result<ConeSingularity> {
    match (&src.config, &src.preset) {
        (Some(p), _) => load_config(p),
        (None, Some(id)) => id.parse::<PresetId>()?.build(),
        (None, None) => Err(Error::InvalidArgument("--config or --preset is required".into())),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let write_err = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    match cmd {
        Command::Analyze { configs, format } => analyze_many(&configs, format, out),
        Command::Jumping {
            source,
            count,
            format,
        } => {
            let c = load_source(&source)?;
            let jumps = c.jumping_numbers(count as usize)?;
            if format.is_json() {
                #[derive(Serialize)]
                struct Listing {
                    name: String,
                    irrational: bool,
                    jumping_numbers: Vec<NumView>,
                }
                let listing = Listing {
                    name: c.label().to_string(),
                    irrational: jumps.irrational,
                    jumping_numbers: jumps.values.iter().map(NumView::from).collect(),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&listing).expect("serializes"))
                    .map_err(write_err)?;
            } else {
                let kind = if jumps.irrational { "irrational" } else { "rational" };
                writeln!(out, "jumping numbers of {} ({kind}):", c.label()).map_err(write_err)?;
                for (i, j) in jumps.values.iter().enumerate() {
                    writeln!(out, "  {:>4}  {}  [{kind}]", i + 1, j.render()).map_err(write_err)?;
                }
            }
            Ok(0)
        }
        Command::Limit {
            source,
            max_m,
            format,
        } => {
            let c = load_source(&source)?;
            let t = c.threshold_minus()?.t;
            let orders: Vec<u64> = (1..=max_m).collect();
            let rows: Vec<LimitView> = report::limiting_table(&t, &orders)?
                .iter()
                .map(|(row, gap)| LimitView {
                    m: row.m,
                    t_m: NumView::from(&row.t_m),
                    val_m: NumView::from(&row.val_m),
                    gap: NumView::from(gap),
                })
                .collect();
            if format.is_json() {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializes"))
                    .map_err(write_err)?;
            } else {
                writeln!(out, "limiting valuations of {} (t = {}):", c.label(), t.render())
                    .map_err(write_err)?;
                write!(out, "{}", report::limit_table_text(&rows)).map_err(write_err)?;
            }
            Ok(0)
        }
        Command::Preset {
            id,
            emit_config,
            run: _,
            format,
        } => {
            let id: PresetId = id.parse()?;
            if emit_config {
                writeln!(out, "{}", id.config().to_json_pretty()).map_err(write_err)?;
                return Ok(0);
            }
            let c = id.build()?;
            let r = report::analyze(&c)?;
            write_report(&r, format, out).map_err(write_err)?;
            Ok(0)
        }
        Command::Plotdata {
            source,
            plane,
            samples,
        } => {
            let c = load_source(&source)?;
            let plane = parse_plane(&plane)?;
            let csv = crate::plot::plot_data(&c, plane, samples as usize)?;
            write!(out, "{csv}").map_err(write_err)?;
            Ok(0)
        }
    }
}

fn parse_plane(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("--plane {s:?}: expected two indices like 0,1"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn write_report(r: &report::SingularityReport, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    if format.is_json() {
        writeln!(out, "{}", r.to_json())
    } else {
        write!(out, "{}", r.to_text())
    }
}

/// Analyses are independent, so several configs are processed on scoped
/// threads; output keeps the argument order.
fn analyze_many(paths: &[PathBuf], format: Format, out: &mut dyn Write) -> Result<i32> {
    let results: Vec<Result<report::SingularityReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| scope.spawn(move || load_config(p).and_then(|c| report::analyze(&c))))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| {
                    Err(Error::InvariantViolation("analysis thread panicked".into()))
                })
            })
            .collect()
    });
    if results.len() == 1 {
        let r = results.into_iter().next().expect("one result")?;
        write_report(&r, format, out).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        return Ok(0);
    }
    let mut first_error = None;
    let mut ok = Vec::new();
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok(rep) => ok.push(rep),
            Err(e) => {
                if first_error.is_none() {
                    first_error = Some(Error::Config {
                        path: p.display().to_string(),
                        message: e.to_string(),
                    });
                    // keep the original classification for the exit code
                    if e.exit_code() != 2 {
                        first_error = Some(e);
                    }
                }
            }
        }
    }
    let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
    if format.is_json() {
        writeln!(out, "{}", serde_json::to_string_pretty(&ok).expect("serializes")).map_err(io)?;
    } else {
        for (i, r) in ok.iter().enumerate() {
            if i > 0 {
                writeln!(out).map_err(io)?;
            }
            write!(out, "{}", r.to_text()).map_err(io)?;
        }
    }
    match first_error {
        Some(e) => Err(e),
        None => Ok(0),
    }
}
