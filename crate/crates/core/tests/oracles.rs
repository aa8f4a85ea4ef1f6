//! Frozen reference values from an independent computation: exact rational
//! polynomial arithmetic, symbolic x-derivatives of the prepotential, and
//! high-precision quadrature of `int psi^2 P^2 dx` directly in `x`.

use xell::verify::{gram_matrix, GramOptions};
use xell::{norm_closed, xpoly, Family, ParamSet, System};

fn lag(g: f64) -> ParamSet {
    ParamSet::laguerre(g)
}

fn jac(g: f64, h: f64) -> ParamSet {
    ParamSet::jacobi(g, h)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

#[test]
fn eigenpolynomial_coefficients() {
    let cases: [(Family, usize, usize, ParamSet, &[f64]); 4] = [
        (Family::L1, 2, 2, lag(1.5), &[84.0, 0.0, -14.0, 0.0, 0.25]),
        (
            Family::L2,
            3,
            2,
            lag(0.7),
            &[
                -29.78976,
                -7.0928,
                2.728,
                1.64,
                0.316_666_666_666_666_67,
                -0.083_333_333_333_333_33,
            ],
        ),
        (
            Family::J1,
            2,
            2,
            jac(1.0, 2.5),
            &[
                -6.362_304_687_5,
                -24.199_218_75,
                104.326_171_875,
                -64.199_218_75,
                13.637_695_312_5,
            ],
        ),
        (
            Family::J2,
            2,
            1,
            jac(3.0, 1.0),
            &[10.125, 45.5625, 30.375, 6.75],
        ),
    ];
    for (f, l, n, p, want) in cases {
        let got = xpoly(f, l, n, &p).unwrap();
        assert_eq!(got.poly.coeffs().len(), want.len(), "{f} l={l} n={n}");
        for (a, b) in got.poly.coeffs().iter().zip(want) {
            assert!(close(*a, *b, 1e-13), "{f} l={l} n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn pointwise_values() {
    // (family, l, n, params, x, P(eta(x)), phi(x), U(x))
    let cases = [
        (
            Family::L2,
            2,
            3,
            lag(1.5),
            1.3,
            15.533_086_444_591_667,
            2.140_612_560_010_442_4,
            -1.734_824_149_286_177_4,
        ),
        (
            Family::L1,
            3,
            1,
            lag(1.2),
            0.7,
            152.496_081_231_666_67,
            1.121_789_604_954_983_7,
            16.598_655_213_445_583,
        ),
        (
            Family::J1,
            2,
            2,
            jac(1.0, 2.5),
            0.7,
            -7.765_362_125_869_901,
            -0.148_474_688_144_812_4,
            -14.086_550_111_373_613,
        ),
        (
            Family::J2,
            2,
            1,
            jac(3.0, 1.0),
            1.1,
            -7.544_469_524_919_107,
            -0.129_579_967_943_808_37,
            -13.359_246_305_993_284,
        ),
    ];
    for (f, l, n, p, x, pv, phi, u) in cases {
        let s = System::new(f, l, p).unwrap();
        let st = s.eigenstate(n).unwrap();
        assert!(
            close(s.eigenpolynomial_at(&st, x).unwrap(), pv, 1e-13),
            "{f} P"
        );
        assert!(close(s.phi(&st, x).unwrap(), phi, 1e-13), "{f} phi");
        assert!(close(s.potential(x).unwrap(), u, 1e-12), "{f} U");
        assert!(
            s.schrodinger_residual(n, x).unwrap().abs() < 1e-9,
            "{f} residual"
        );
    }
}

#[test]
fn norms_from_x_space_quadrature() {
    let cases = [
        (Family::L1, 2, 1, lag(1.5), 18.0),
        (Family::L2, 3, 2, lag(0.7), 82.056_079_426_772_07),
        (Family::J1, 2, 2, jac(1.0, 2.5), 0.014_389_702_369_242_011),
        (Family::J2, 2, 2, jac(3.0, 1.0), 0.011_555_414_357_961_782),
    ];
    for (f, l, n, p, want) in cases {
        let closed = norm_closed(f, l, n, &p).unwrap();
        assert!(
            (closed / want - 1.0).abs() < 1e-13,
            "{f}: closed {closed} vs {want}"
        );
        let gm = gram_matrix(&System::new(f, l, p).unwrap(), n, GramOptions::default()).unwrap();
        assert!(
            (gm.entries[n][n] / want - 1.0).abs() < 1e-10,
            "{f}: quadrature"
        );
    }
}
