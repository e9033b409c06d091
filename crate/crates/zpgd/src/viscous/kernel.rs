//! Half-line heat kernel for the Robin condition `eps p_x + u_B p = 0`.
//!
//! The kernel is the method-of-images pair plus a boundary term that the
//! source writes as a Laplace-type `z`-integral; completing the square turns
//! that integral into a scaled complementary error function,
//!
//! ```text
//! K(x,y,t) = G(x-y) + G(x+y) + (u_B/eps) e^{-(x+y)^2/(2 t eps)} erfcx(A),
//! A = (x + y - u_B t) / sqrt(2 t eps),  G(d) = e^{-d^2/(2 t eps)}/sqrt(2 pi t eps),
//! ```
//!
//! which is evaluated in log space so nothing overflows for `eps` down to
//! `1e-3` and coordinates up to tens. Direct quadrature of the printed
//! `z`-integral survives only as a test oracle.

use super::quad::{LogVal, SignedLogSum};

/// `ln(erfcx(a))` for any real `a`, stable across the whole axis.
///
/// Small nonnegative arguments go through `erfc` directly; large ones use
/// the Laplace continued fraction, which stays machine-accurate where
/// `erfc` itself underflows.
pub fn log_erfcx(a: f64) -> f64 {
    if a >= 2.0 {
        // erfcx(a) sqrt(pi) = 1/(a + (1/2)/(a + 1/(a + (3/2)/(a + ...))));
        // the depth needed for full precision shrinks as a grows
        let depth = if a >= 8.0 {
            40
        } else if a >= 4.0 {
            70
        } else {
            120
        };
        let mut f = a;
        for k in (1..=depth).rev() {
            f = a + 0.5 * k as f64 / f;
        }
        -f.ln() - 0.5 * std::f64::consts::PI.ln()
    } else if a >= 0.0 {
        a * a + libm::erfc(a).ln()
    } else {
        // erfcx(a) = 2 e^{a^2} - erfcx(-a)
        a * a + (2.0 - libm::erfc(-a)).ln()
    }
}

/// `erfcx(a) = e^{a^2} erfc(a)`.
pub fn erfcx(a: f64) -> f64 {
    log_erfcx(a).exp()
}

/// The three kernel terms in signed log space.
fn kernel_terms(x: f64, y: f64, t: f64, eps: f64, u_b: f64) -> [LogVal; 3] {
    let te = t * eps;
    let lg = -0.5 * (2.0 * std::f64::consts::PI * te).ln();
    let g1 = LogVal::new(1.0, lg - (x - y) * (x - y) / (2.0 * te));
    let g2 = LogVal::new(1.0, lg - (x + y) * (x + y) / (2.0 * te));
    let z = if u_b == 0.0 {
        LogVal::ZERO
    } else {
        let a = (x + y - u_b * t) / (2.0 * te).sqrt();
        LogVal::new(
            u_b.signum(),
            (u_b.abs() / eps).ln() - (x + y) * (x + y) / (2.0 * te) + log_erfcx(a),
        )
    };
    [g1, g2, z]
}

/// `K(x, y, t, eps)` in signed log space.
pub fn log_kernel(x: f64, y: f64, t: f64, eps: f64, u_b: f64) -> LogVal {
    let mut s = SignedLogSum::new();
    for term in kernel_terms(x, y, t, eps, u_b) {
        s.add(term);
    }
    s.total()
}

/// `K(x, y, t, eps)` as a plain value.
pub fn heat_kernel(x: f64, y: f64, t: f64, eps: f64, u_b: f64) -> f64 {
    log_kernel(x, y, t, eps, u_b).value()
}

/// `dK/dx` in signed log space.
///
/// Uses `d/dx [e^{-(x+y)^2/(2te)} erfcx(A)] = e^{-(x+y)^2/(2te)}
/// (-(u_B/eps) erfcx(A) - 2/sqrt(2 pi t eps))`, so the boundary term's
/// derivative needs no erfcx derivative of its own.
pub fn log_kernel_dx(x: f64, y: f64, t: f64, eps: f64, u_b: f64) -> LogVal {
    let te = t * eps;
    let lg = -0.5 * (2.0 * std::f64::consts::PI * te).ln();
    let mut s = SignedLogSum::new();
    let d1 = x - y;
    if d1 != 0.0 {
        s.add(LogVal::new(
            -d1.signum(),
            lg - d1 * d1 / (2.0 * te) + (d1.abs() / te).ln(),
        ));
    }
    let d2 = x + y;
    if d2 != 0.0 {
        s.add(LogVal::new(
            -d2.signum(),
            lg - d2 * d2 / (2.0 * te) + (d2.abs() / te).ln(),
        ));
    }
    if u_b != 0.0 {
        let a = (x + y - u_b * t) / (2.0 * te).sqrt();
        let e_log = -d2 * d2 / (2.0 * te);
        // -(u_B/eps)^2 E erfcx(A)
        s.add(LogVal::new(
            -1.0,
            2.0 * (u_b.abs() / eps).ln() + e_log + log_erfcx(a),
        ));
        // -(u_B/eps) E * 2/sqrt(2 pi t eps)
        s.add(LogVal::new(
            -u_b.signum(),
            (u_b.abs() / eps).ln() + e_log + std::f64::consts::LN_2 + lg,
        ));
    }
    s.total()
}
