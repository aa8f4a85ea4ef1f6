//! Runs the quick verification battery and prints one JSON record per check.

use xell::verify::{run_battery, CheckKind, Scope, Tolerances};

fn main() -> xell::Result<()> {
    let reports = run_battery(CheckKind::All, Scope::Quick, &Tolerances::default())?;
    for r in &reports {
        println!("{}", serde_json::to_string(r).expect("report serialises"));
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!("{} reports, {failed} failed", reports.len());
    Ok(())
}
