//! Jacobi to Laguerre limits at large coupling, with the fitted error decay.

use xell::verify::{
    limit_check_base, limit_check_family, LimitPair, LimitSign, SlopeWindow, BETA_SCHEDULE,
    H_SCHEDULE,
};

fn main() -> xell::Result<()> {
    let w = SlopeWindow::default();
    for sign in [LimitSign::Plus, LimitSign::Minus] {
        let r = limit_check_base(3, 1.5, sign, &BETA_SCHEDULE, w);
        println!(
            "classical {sign:?}: slope {:.4} pass {}",
            r.details["slope"].0, r.pass
        );
    }
    for (pair, g) in [(LimitPair::J1ToL2, 1.0), (LimitPair::J2ToL1, 1.5)] {
        let r = limit_check_family(pair, 2, 1, g, &H_SCHEDULE, w)?;
        println!("{}:", pair.name());
        for c in &r.convergence {
            let v: Vec<String> = c.values.iter().map(|x| format!("{:.2e}", x.0)).collect();
            println!(
                "  {:<12} errors [{}] slope {:.4}",
                c.label,
                v.join(", "),
                c.slope.0
            );
        }
    }
    Ok(())
}
