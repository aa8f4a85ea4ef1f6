//! Finite-difference eigenvalues of a deformed potential against the exact
//! spectrum, with Richardson-style grid doubling.

use xell::verify::{fd_eigenvalues, fd_spectrum, FdGrid};
use xell::{Family, ParamSet, System};

fn main() -> xell::Result<()> {
    let s = System::new(Family::L2, 2, ParamSet::laguerre(1.5))?;
    let grid = FdGrid::new(1e-3, 12.0, 1000);
    for points in [1000, 2000, 4000] {
        let ev = fd_eigenvalues(&s, FdGrid { points, ..grid }, 4)?;
        let err: Vec<String> = ev
            .iter()
            .enumerate()
            .map(|(n, e)| format!("{:.2e}", e - s.energy(n)))
            .collect();
        println!("{points:>5} points: errors [{}]", err.join(", "));
    }
    let ev = fd_spectrum(&s, grid, 4, 1e-2)?;
    for (n, e) in ev.iter().enumerate() {
        println!("n={n} fd {e:.6} exact {:.6}", s.energy(n));
    }
    Ok(())
}
