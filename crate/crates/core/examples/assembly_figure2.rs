//! Runs the layered assembly on the bundled two-label configuration and
//! prints the closed complex.

use foldcover::assembly::{assemble, AssemblyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1);
    let cfg: AssemblyConfig = match &path {
        Some(p) => std::fs::read_to_string(p)?.parse()?,
        None => AssemblyConfig::figure_two(),
    };
    let a = assemble(&cfg)?;
    for check in &a.report.checks {
        println!("{:<22} {:<5} {}", check.name, check.passed, check.detail);
    }
    println!(
        "{} pieces, {} gluings, {} sheets, pattern girth {}",
        a.closed().pieces.len(),
        a.closed().gluings.len(),
        a.report.sheets.unwrap_or(0),
        a.report.pattern_girth
    );
    if std::env::var_os("SHOW_COMPLEX").is_some() {
        print!("{}", a.closed().to_text());
    }
    Ok(())
}
