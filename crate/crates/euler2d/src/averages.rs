//! Interface averages used by the entropy-conservative flux: arithmetic mean,
//! non-singular logarithmic mean, and the beta-based pressure average.

use crate::error::{Error, Result};
use crate::state::Primitive;

/// The two reconstructed states meeting at a cell interface.
#[derive(Debug, Clone, Copy)]
pub struct StatePair {
    pub left: Primitive,
    pub right: Primitive,
}

impl StatePair {
    pub fn new(left: Primitive, right: Primitive) -> StatePair {
        StatePair { left, right }
    }
}

pub fn arithmetic_mean(a: f64, b: f64) -> f64 {
    0.5 * (a + b)
}

/// Switch point between the series and exact branches of the logarithmic
/// mean, expressed in `u = ((a/b - 1)/(a/b + 1))^2`.
const LOG_MEAN_SERIES_CUTOFF: f64 = 1e-2;

/// Logarithmic mean `(a - b) / (ln a - ln b)` with the removable singularity
/// at `a = b` handled by a series expansion.
///
/// With `zeta = a/b`, `f = (zeta-1)/(zeta+1)` and `u = f^2`, the identity
/// `ln zeta = 2f (1 + u/3 + u^2/5 + ...)` gives the series branch
/// `(a+b)/2 / (1 + u/3 + u^2/5 + u^3/7 + u^4/9 + u^5/11)` for `u` below the
/// cutoff and `(a+b) f / ln zeta` above it. Truncating after `u^5/11` keeps
/// the two branches within ~8e-14 of each other at the switch point.
pub fn logarithmic_mean(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::NonPositiveInput(a, b));
    }
    let zeta = a / b;
    let f = (zeta - 1.0) / (zeta + 1.0);
    let u = f * f;
    if u < LOG_MEAN_SERIES_CUTOFF {
        let series =
            1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0 + u * (1.0 / 9.0 + u / 11.0))));
        Ok(0.5 * (a + b) / series)
    } else {
        Ok((a + b) * f / zeta.ln())
    }
}

/// Pressure average `p~ = rho_bar / (2 beta_bar)` with
/// `beta = rho / (2 p)`; this is the harmonic average in the temperature.
pub fn average_pressure(pair: &StatePair) -> f64 {
    let rho_bar = arithmetic_mean(pair.left.rho, pair.right.rho);
    let beta_bar = arithmetic_mean(pair.left.beta(), pair.right.beta());
    rho_bar / (2.0 * beta_bar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mean_examples() {
        assert_eq!(arithmetic_mean(1.0, 0.125), 0.5625);
        assert_eq!(arithmetic_mean(0.7, 0.7), 0.7);
        assert_eq!(arithmetic_mean(-1.0, 1.0), 0.0);
    }

    #[test]
    fn logarithmic_mean_examples() {
        let exact = |a: f64, b: f64| (a - b) / (a.ln() - b.ln());
        let m = logarithmic_mean(1.0, std::f64::consts::E).unwrap();
        assert!((m - (std::f64::consts::E - 1.0)).abs() < 1e-14);

        let m = logarithmic_mean(1.0, 0.125).unwrap();
        assert!((m - exact(1.0, 0.125)).abs() < 1e-14);
        assert!((m - 0.42078605359261434).abs() < 1e-14);

        // Removable singularity: equal inputs return the input bit-exactly.
        assert_eq!(logarithmic_mean(0.3, 0.3).unwrap(), 0.3);
    }

    #[test]
    fn logarithmic_mean_rejects_non_positive() {
        assert!(matches!(
            logarithmic_mean(-1.0, 2.0),
            Err(Error::NonPositiveInput(_, _))
        ));
        assert!(logarithmic_mean(1.0, 0.0).is_err());
    }

    #[test]
    fn logarithmic_mean_branch_continuity() {
        // Evaluate both branch formulas right at the switch point and check
        // they agree to 1e-12 relative.
        let u = LOG_MEAN_SERIES_CUTOFF;
        let f = u.sqrt();
        let zeta = (1.0 + f) / (1.0 - f);
        let b = 1.0;
        let a = zeta * b;
        let series = 0.5
            * (a + b)
            / (1.0
                + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0 + u * (1.0 / 9.0 + u / 11.0)))));
        let exact = (a + b) * f / zeta.ln();
        assert!(
            (series - exact).abs() <= 1e-12 * exact.abs(),
            "series {series} vs exact {exact}"
        );
    }

    #[test]
    fn average_pressure_examples() {
        let w = |rho, p| Primitive::new(rho, 0.0, 0.0, p);
        assert_eq!(
            average_pressure(&StatePair::new(w(1.0, 1.0), w(1.0, 1.0))),
            1.0
        );
        assert_eq!(
            average_pressure(&StatePair::new(w(1.0, 1.0), w(0.125, 0.1))),
            0.5
        );
        let p = average_pressure(&StatePair::new(w(1.0, 2.0), w(1.0, 1.0)));
        assert!((p - 4.0 / 3.0).abs() < 1e-15);
    }
}
