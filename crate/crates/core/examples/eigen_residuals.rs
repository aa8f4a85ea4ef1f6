//! Pointwise Schrodinger residual `-phi'' + U phi - E phi` and the shape
//! invariance residual of a deformed potential.

use xell::{Family, ParamSet, System};

fn main() -> xell::Result<()> {
    let s = System::new(Family::L2, 3, ParamSet::laguerre(0.7))?;
    for n in 0..=3 {
        let r = s.residual_profile(n, &s.interior_points(100))?;
        let worst = r.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        println!("n={n} E={:.3} max residual {worst:.2e}", s.energy(n));
    }
    let shape = s.shape_profile(&s.interior_points(100))?;
    println!(
        "shape invariance max {:.2e}",
        shape.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    );
    let p = s.point(1, 1.0)?;
    println!("x=1: W={:.6} U={:.6} phi_1={:.6}", p.w, p.potential, p.phi);
    Ok(())
}
