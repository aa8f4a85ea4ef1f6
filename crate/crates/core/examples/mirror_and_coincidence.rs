//! The `J1`/`J2` reflection identities and the `l = 1` coincidence of the two
//! families of each kind.

use xell::verify::{coincidence_poly_check, coincidence_potential_check, mirror_check};
use xell::ParamSet;

fn main() -> xell::Result<()> {
    for ell in 1..=3 {
        let r = mirror_check(ell, 2, 3.0, 1.0, 1e-10)?;
        println!("mirror l={ell}: metric {:.2e} pass {}", r.metric(), r.pass);
    }
    let r = coincidence_poly_check(ParamSet::laguerre(1.5), 5, 1e-12)?;
    println!(
        "L1/L2 polynomials at l=1: metric {:.2e} pass {}",
        r.metric(),
        r.pass
    );
    let r = coincidence_potential_check(1.5, 1e-10)?;
    println!(
        "L1/L2 potentials at l=1: metric {:.2e} pass {}",
        r.metric(),
        r.pass
    );
    let r = coincidence_poly_check(ParamSet::jacobi(1.0, 2.0), 5, 1e-12)?;
    println!(
        "J1/J2 polynomials at l=1: metric {:.2e} pass {}",
        r.metric(),
        r.pass
    );
    Ok(())
}
