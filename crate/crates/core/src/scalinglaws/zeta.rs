use super::ScalingError;
use crate::num::Real;

pub const ZETA_TERMS: u64 = 1_000_000;

/// Sum of `k^-s` for `k = from..=to`, smallest terms first.
pub(crate) fn power_sum<T: Real>(s: T, from: u64, to: u64) -> T {
    let mut acc = T::zero();
    let mut k = to;
    while k >= from && k > 0 {
        acc = acc + T::from_count(k).powf(-s);
        k -= 1;
    }
    acc
}

/// `zeta(s)` for `s > 1`: the first million terms plus the integral
/// remainder with its half-term and first derivative corrections.
pub fn riemann_zeta<T: Real>(s: T) -> Result<T, ScalingError> {
    if !(s > T::one()) || !s.is_finite() {
        return Err(ScalingError::Domain(format!("zeta needs s > 1, got {s}")));
    }
    let n = T::from_count(ZETA_TERMS);
    let tail = n.powf(T::one() - s) / (s - T::one()) - n.powf(-s) / T::lit(2.0) + s * n.powf(-s - T::one()) / T::lit(12.0);
    Ok(power_sum(s, 1, ZETA_TERMS) + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let pi = std::f64::consts::PI;
        assert!((riemann_zeta(2.0f64).unwrap() - pi * pi / 6.0).abs() < 1e-12);
        assert!((riemann_zeta(4.0f64).unwrap() - pi.powi(4) / 90.0).abs() < 1e-12);
        assert!((riemann_zeta(3.0f64).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-12);
        assert!(riemann_zeta(1.0).is_err());
        assert!(riemann_zeta(0.5).is_err());
        assert!((riemann_zeta(2.0f32).unwrap() - 1.644_934_1).abs() < 1e-5);
    }
}
