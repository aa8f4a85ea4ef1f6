//! Classical Laguerre and Jacobi polynomials from their recurrences, and the
//! Jacobi series about `eta = 1`.

use xell::{jacobi, jacobi_about_one, laguerre};

fn main() -> xell::Result<()> {
    for n in 0..=3 {
        println!("L_{n}^(1.5)  coeffs {:?}", laguerre(n, 1.5).coeffs());
    }
    let p = jacobi(3, 0.5, 1.5)?;
    let t = jacobi_about_one(3, 0.5, 1.5);
    for eta in [-0.5, 0.0, 0.5] {
        println!(
            "P_3^(0.5,1.5)({eta:+}) = {:+.15e}  series {:+.15e}",
            p.eval(eta),
            t.eval(eta - 1.0)
        );
    }
    Ok(())
}
