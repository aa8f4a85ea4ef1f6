//! Deforming polynomials `xi_l` and exceptional polynomials `P_{l,n}` of the
//! four families, with energies and closed-form norms.

use xell::{energy, norm_closed, xi, xpoly, Family, ParamSet};

fn main() -> xell::Result<()> {
    let cases = [
        (Family::L1, ParamSet::laguerre(1.5)),
        (Family::L2, ParamSet::laguerre(1.5)),
        (Family::J1, ParamSet::jacobi(1.0, 2.0)),
        (Family::J2, ParamSet::jacobi(2.0, 1.0)),
    ];
    for (f, p) in cases {
        let ell = 2;
        println!(
            "{f} l={ell} xi coeffs {:?}",
            xi(f, ell as i32, &p)?.coeffs()
        );
        for n in 0..=2 {
            let x = xpoly(f, ell, n, &p)?;
            println!(
                "  n={n} degree {} E={:.6} norm {:.12e}",
                x.degree(),
                energy(f, ell, n, &p),
                norm_closed(f, ell, n, &p)?
            );
        }
    }
    Ok(())
}
