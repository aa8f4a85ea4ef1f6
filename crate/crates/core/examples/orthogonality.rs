//! Gram matrix of `P_{l,n}` under the deformed weight, compared with the
//! closed-form norms.

use xell::verify::{gram_matrix, GramOptions};
use xell::{norm_closed, Family, ParamSet, System};

fn main() -> xell::Result<()> {
    let (f, ell, p) = (Family::J1, 2, ParamSet::jacobi(0.5, 3.0));
    let gm = gram_matrix(&System::new(f, ell, p)?, 4, GramOptions::default())?;
    println!(
        "{f} l={ell}: {} nodes, max relative off-diagonal {:.2e}",
        gm.nodes,
        gm.max_relative_off_diagonal()
    );
    for (n, d) in gm.diagonal().iter().enumerate() {
        let c = norm_closed(f, ell, n, &p)?;
        println!(
            "  n={n} quadrature {d:.15e} closed {c:.15e} gap {:.1e}",
            (d / c - 1.0).abs()
        );
    }
    Ok(())
}
