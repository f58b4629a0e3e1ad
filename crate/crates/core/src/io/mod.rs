//! File formats: binary PGM images, CSV tables for map diagnostics and the
//! JSON metrics report.

mod csv;
mod pgm;
mod report;

pub use self::csv::{
    attractor_csv, bifurcation_csv, lyapunov_csv, metric_sweep_csv, sensitivity_csv, CsvTable,
};
pub use self::pgm::{load_image, luma_bt601, read_pgm, save_pgm, write_pgm};
pub use self::report::{format_significant, report_json};
