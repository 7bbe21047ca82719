//! A sweep plan run from code, written as the CLI's CSV to stdout.

use tunnelgap::cli::args::{NPolicy, OutputFormat};
use tunnelgap::cli::output::{write_table_to, RecordRow, RECORD_COLUMNS};
use tunnelgap::cli::sweep::{GapSettings, SweepPlan};
use tunnelgap::Method;

fn main() -> tunnelgap::Result<()> {
    let plan = SweepPlan {
        n_min: 1e3,
        n_max: 1e5,
        points_per_decade: 4,
        alphas: vec![0.28, 0.3],
        method: Method::Continuous,
        settings: GapSettings::default(),
        n_policy: NPolicy::Exact,
        discrete_cap: 2e6,
    };
    plan.validate()?;
    let rows: Vec<RecordRow> = plan.run()?.iter().map(RecordRow::from).collect();
    write_table_to(std::io::stdout().lock(), &RECORD_COLUMNS, &rows, OutputFormat::Csv)
        .map_err(|e| tunnelgap::Error::InvalidInput(e.message))?;
    Ok(())
}
