//! Command-line surface.
//!
//! Exit codes: 0 success, 1 I/O or data error, 2 usage error, 3 decryption
//! finished but the result does not hash back to the key.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{crop_cipher, evaluate, gen_checkerboard};
use crate::chaos_metrics::{
    attractor_points, bifurcation_sweep, correlation_dimension, kolmogorov_entropy, lyapunov_pair,
    sensitivity_divergence, sweep, x_series, zero_one_test, MetricConfig, SweepAxis, SweepSpec,
};
use crate::cipher::{decrypt, encrypt, self_test, CipherOptions};
use crate::error::{Error, Result};
use crate::io::{
    attractor_csv, bifurcation_csv, load_image, lyapunov_csv, metric_sweep_csv, report_json,
    save_pgm, sensitivity_csv, CsvTable,
};
use crate::key_schedule::{format_key, parse_key};
use crate::ra_map::{MapParams, RaMap, DEFAULT_WARMUP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HASH_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ra-crypt", version, about = "2D-RA chaotic image cipher and map diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encrypt a grayscale image; writes the ciphertext and its key file.
    Encrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        key_out: PathBuf,
        /// Start diffusion from an all-zero frequency table.
        #[arg(long)]
        no_chaotic_init: bool,
    },
    /// Decrypt a ciphertext with its key file.
    Decrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_chaotic_init: bool,
    },
    /// Write entropy, adjacent-pixel correlations, NPCR and histogram as JSON.
    Evaluate {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        encrypted: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit chaos diagnostics of the 2D-RA map as CSV.
    AnalyzeMap(AnalyzeArgs),
    /// Overwrite a ciphertext rectangle, then decrypt the damaged image.
    CropTest {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        /// Rectangle as x,y,w,h (x is the column).
        #[arg(long, value_parser = parse_rect)]
        rect: Rect,
        #[arg(long, default_value_t = 0)]
        fill: u8,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_chaotic_init: bool,
    },
    /// Write an N×N checkerboard PGM.
    GenCheckerboard {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        low: u8,
        #[arg(long, default_value_t = 255)]
        high: u8,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Bifurcation,
    Attractor,
    Le,
    Test01,
    Cd,
    Ke,
    Sensitivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Alpha,
    Beta,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub analysis: Analysis,
    /// Fixed α (default 1).
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Fixed β (default 1).
    #[arg(long)]
    pub beta: Option<u32>,
    /// Inclusive grid start:stop:step for the swept parameter.
    #[arg(long, value_parser = parse_grid)]
    pub range: Option<Grid>,
    /// Parameter swept by --range; defaults to the one not fixed on the
    /// command line, else α.
    #[arg(long, value_enum)]
    pub sweep: Option<Axis>,
    #[arg(long, default_value_t = 0.5)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub y0: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_WARMUP)]
    pub transient: usize,
    /// x-values per grid point (bifurcation).
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Points emitted (attractor).
    #[arg(long, default_value_t = 10_000)]
    pub points: usize,
    /// Series length (test01, ke: 5000; cd: 2000).
    #[arg(long)]
    pub length: Option<usize>,
    /// Iterations (le: 10000; sensitivity: 30).
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Initial x offset (sensitivity).
    #[arg(long, default_value_t = 1e-9)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.1)]
    pub threshold: f64,
    /// Box width for the entropy estimate.
    #[arg(long, default_value_t = 1.0 / 12.0)]
    pub epsilon: f64,
    /// Seed for the 0–1 test frequencies.
    #[arg(long, env = "RA_CRYPT_SEED", default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

fn parse_rect(s: &str) -> std::result::Result<Rect, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [x, y, w, h] => Ok(Rect { x, y, w, h }),
        _ => Err("expected x,y,w,h".into()),
    }
}

/// `start:stop:step` (inclusive) or a single value.
/// Parameter values of an inclusive `start:stop:step` range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid(pub Vec<u32>);

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    parse_range(s).map(Grid)
}

pub fn parse_range(s: &str) -> std::result::Result<Vec<u32>, String> {
    let parts: Vec<u32> = s
        .split(':')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    let (start, stop, step) = match parts[..] {
        [v] => (v, v, 1),
        [a, b] => (a, b, 1),
        [a, b, c] => (a, b, c),
        _ => return Err("expected start:stop:step".into()),
    };
    if step == 0 || start > stop {
        return Err("range needs start <= stop and a positive step".into());
    }
    Ok((start..=stop).step_by(step as usize).collect())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn options(no_chaotic_init: bool) -> CipherOptions {
    CipherOptions {
        chaotic_init: !no_chaotic_init,
        ..Default::default()
    }
}

fn ensure_self_test() -> Result<()> {
    if self_test() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(
            "cipher self-test failed: this build cannot round-trip images".into(),
        ))
    }
}

fn read_key(path: &Path) -> Result<crate::key_schedule::KeyMaterial> {
    parse_key(&std::fs::read_to_string(path)?)
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Encrypt {
            input,
            out,
            key_out,
            no_chaotic_init,
        } => {
            ensure_self_test()?;
            let image = load_image(&input)?;
            let result = encrypt(&image, &options(no_chaotic_init));
            save_pgm(&result.ciphertext, &out)?;
            std::fs::write(&key_out, format_key(&result.key))?;
            Ok(EXIT_OK)
        }
        Command::Decrypt {
            input,
            key,
            out,
            no_chaotic_init,
        } => {
            ensure_self_test()?;
            let cipher = load_image(&input)?;
            let key = read_key(&key)?;
            let result = decrypt(&cipher, &key, &options(no_chaotic_init));
            save_pgm(&result.image, &out)?;
            if result.verified {
                Ok(EXIT_OK)
            } else {
                eprintln!("warning: decrypted image does not match the key digest");
                Ok(EXIT_HASH_MISMATCH)
            }
        }
        Command::Evaluate {
            original,
            encrypted,
            out,
        } => {
            let report = evaluate(&load_image(&original)?, &load_image(&encrypted)?)?;
            std::fs::write(&out, report_json(&report))?;
            println!(
                "entropy {:.8}  npcr {:.4}%  histogram std {:.4}",
                report.entropy, report.npcr, report.histogram_std
            );
            Ok(EXIT_OK)
        }
        Command::AnalyzeMap(args) => {
            let table = analyze(&args)?;
            std::fs::write(&args.out, table.to_string())?;
            Ok(EXIT_OK)
        }
        Command::CropTest {
            input,
            key,
            rect,
            fill,
            out,
            no_chaotic_init,
        } => {
            let cipher = load_image(&input)?;
            let key = read_key(&key)?;
            let damaged = crop_cipher(&cipher, rect.x, rect.y, rect.w, rect.h, fill)?;
            let result = decrypt(&damaged, &key, &options(no_chaotic_init));
            save_pgm(&result.image, &out)?;
            if !result.verified {
                eprintln!("warning: damaged ciphertext no longer matches the key digest");
            }
            Ok(EXIT_OK)
        }
        Command::GenCheckerboard {
            size,
            low,
            high,
            out,
        } => {
            save_pgm(&gen_checkerboard(size, size, low, high)?, &out)?;
            Ok(EXIT_OK)
        }
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<CsvTable> {
    let base = MapParams::new(
        args.alpha.unwrap_or(1),
        args.beta.unwrap_or(1),
        args.x0,
        args.y0,
    )?;
    let axis = match args.sweep {
        Some(Axis::Alpha) => SweepAxis::Alpha,
        Some(Axis::Beta) => SweepAxis::Beta,
        None if args.alpha.is_some() && args.beta.is_none() => SweepAxis::Beta,
        None => SweepAxis::Alpha,
    };
    let grid = args.range.clone().map(|g| g.0).unwrap_or_else(|| {
        vec![match axis {
            SweepAxis::Alpha => base.alpha,
            SweepAxis::Beta => base.beta,
        }]
    });
    let config = MetricConfig {
        transient: args.transient,
        epsilon: args.epsilon,
        rng_seed: args.seed,
        n_iterations: args.iterations.unwrap_or(10_000),
        ..Default::default()
    };
    config.validate()?;

    let metric = |f: &(dyn Fn(&MapParams) -> Result<f64> + Sync)| -> Result<CsvTable> {
        let rows = sweep(&base, axis, &grid, f)
            .into_iter()
            .map(|(v, m)| m.map(|m| (v, m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(metric_sweep_csv(&rows))
    };

    match args.analysis {
        Analysis::Bifurcation => {
            let spec = SweepSpec {
                axis,
                values: grid.clone(),
                transient: args.transient,
                samples: args.samples,
            };
            Ok(bifurcation_csv(&bifurcation_sweep(&base, &spec)))
        }
        Analysis::Attractor => Ok(attractor_csv(&attractor_points(&base, args.points, args.transient))),
        Analysis::Le => {
            let rows = sweep(&base, axis, &grid, |p| {
                lyapunov_pair(&RaMap::new(*p), p.initial_state(), &config)
            })
            .into_iter()
            .map(|(v, le)| le.map(|le| (v, le)))
            .collect::<Result<Vec<_>>>()?;
            Ok(lyapunov_csv(&rows))
        }
        Analysis::Test01 => {
            let len = args.length.unwrap_or(5000);
            metric(&|p| zero_one_test(&x_series(p, config.transient, len), &config))
        }
        Analysis::Cd => {
            let len = args.length.unwrap_or(2000);
            metric(&|p| correlation_dimension(&x_series(p, config.transient, len), &config))
        }
        Analysis::Ke => {
            let len = args.length.unwrap_or(5000);
            metric(&|p| kolmogorov_entropy(&x_series(p, config.transient, len), &config))
        }
        Analysis::Sensitivity => {
            let s = sensitivity_divergence(&base, args.delta, args.threshold, args.iterations.unwrap_or(30));
            Ok(sensitivity_csv(&s))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0:100:5").unwrap().len(), 21);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert_eq!(parse_range("1:3").unwrap(), vec![1, 2, 3]);
        assert!(parse_range("5:1:1").is_err());
        assert!(parse_range("0:10:0").is_err());
        assert!(parse_range("a:b").is_err());
    }

    #[test]
    fn rects() {
        assert_eq!(parse_rect("1,2,3,4").unwrap(), Rect { x: 1, y: 2, w: 3, h: 4 });
        assert!(parse_rect("1,2,3").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_from_args(["ra-crypt", "encrypt", "--in", "x"]), EXIT_USAGE);
        assert_eq!(run_from_args(["ra-crypt", "bogus"]), EXIT_USAGE);
        assert_eq!(
            run_from_args(["ra-crypt", "gen-checkerboard", "--size", "4", "--out", "x", "--frob"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn missing_input_exits_1() {
        let code = run_from_args([
            "ra-crypt",
            "encrypt",
            "--in",
            "/nonexistent/in.pgm",
            "--out",
            "/nonexistent/out.pgm",
            "--key-out",
            "/nonexistent/k",
        ]);
        assert_eq!(code, EXIT_FAILURE);
    }
}
