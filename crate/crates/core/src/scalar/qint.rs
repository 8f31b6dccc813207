//! Quantum integers, factorials and binomials in `Z[q,q^-1]`.

use super::int::Int;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`, defined for all `n`.
pub fn quantum_integer(n: i64, d: u32) -> LaurentPoly {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.unsigned_abs() as i64;
    let d = d as i64;
    LaurentPoly::from_terms((0..m).map(|k| ((d * (m - 1 - 2 * k)) as i32, Int::from(sign))))
}

pub fn quantum_factorial(n: u32, d: u32) -> LaurentPoly {
    let mut r = LaurentPoly::one();
    for s in 1..=n {
        r = &r * &quantum_integer(s as i64, d);
    }
    r
}

/// The Gaussian binomial `[m, k]_{q^d}` for any integer `m` and `k >= 0`.
pub fn quantum_binomial(m: i64, k: i64, d: u32) -> Result<LaurentPoly> {
    if k < 0 {
        return Err(Error::InvalidInput(format!("negative binomial index {k}")));
    }
    let mut num = LaurentPoly::one();
    for s in 1..=k {
        num = &num * &quantum_integer(m - s + 1, d);
    }
    Ok(num.div_exact(&quantum_factorial(k as u32, d)).expect("Gaussian binomials are integral"))
}

/// Tests `f in q^k (1 + q Z[q])`.
pub fn in_shifted_unit(f: &LaurentPoly, k: i32) -> bool {
    f.low_deg() == Some(k) && f.low_coeff().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(quantum_integer(3, 1).to_string(), "q^-2 + 1 + q^2");
        assert_eq!(quantum_integer(-2, 2).to_string(), "-q^-2 - q^2");
        assert!(quantum_integer(0, 1).is_zero());
        assert_eq!(quantum_binomial(4, 2, 1).unwrap().to_string(), "q^-4 + q^-2 + 2 + q^2 + q^4");
        assert_eq!(quantum_binomial(-1, 3, 1).unwrap(), -quantum_integer(1, 1).pow(1));
        assert!(quantum_binomial(3, -1, 1).is_err());
    }

    #[test]
    fn pascal_identity() {
        // [m,k] = q^{-k}[m-1,k] + q^{m-k}[m-1,k-1]
        for d in 1..=3u32 {
            for m in -3i64..7 {
                for k in 1..5i64 {
                    let lhs = quantum_binomial(m, k, d).unwrap();
                    let a = quantum_binomial(m - 1, k, d).unwrap().shift(-(d as i64 * k) as i32);
                    let b = quantum_binomial(m - 1, k - 1, d).unwrap().shift((d as i64 * (m - k)) as i32);
                    assert_eq!(lhs, &a + &b, "m={m} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn shifted_units() {
        let f = LaurentPoly::from_terms([(-2, Int::ONE), (3, Int::from(5))]);
        assert!(in_shifted_unit(&f, -2));
        assert!(!in_shifted_unit(&f, -1));
        assert!(!in_shifted_unit(&(-&f), -2));
    }
}
