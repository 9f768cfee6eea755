//! A verification report, as produced by `grasslog verify`.

use grasslog::verify::{run, Suite, VerifyOptions};

fn main() -> grasslog::Result<()> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "forms".into()).parse()?;
    let report = run(suite, &VerifyOptions::default());
    print!("{}", report.to_json());
    eprintln!("{} cases, {} failed", report.cases, report.failed);
    Ok(())
}
