use crate::ExactError;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Least common multiple of a non-empty list of positive integers.
pub fn lcm_list(xs: &[u64]) -> Result<u64, ExactError> {
    if xs.is_empty() {
        return Err(ExactError::InvalidArgument("lcm of an empty list".into()));
    }
    let mut acc: u64 = 1;
    for &x in xs {
        if x == 0 {
            return Err(ExactError::InvalidArgument("lcm with a zero entry".into()));
        }
        let g = acc.gcd(&x);
        acc = (acc / g)
            .checked_mul(x)
            .ok_or_else(|| ExactError::InvalidArgument("lcm overflows u64".into()))?;
    }
    Ok(acc)
}

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// The multinomial coefficient `total! / prod(parts_i!)`.
///
/// Fails when the parts do not sum to `total`.
pub fn multinomial(total: u64, parts: &[u64]) -> Result<BigUint, ExactError> {
    let sum: u64 = parts.iter().sum();
    if sum != total {
        return Err(ExactError::InvalidArgument(format!(
            "multinomial parts sum to {sum}, expected {total}"
        )));
    }
    // Product of binomials keeps intermediates small and exact.
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &p in parts {
        running += p;
        acc *= binomial_unsigned(running, p);
    }
    Ok(acc)
}

fn binomial_unsigned(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!` for any
/// integer `n` and `k >= 0`; negative `n` gives the signed coefficients of
/// `(1+x)^n` as a power series.
pub fn binomial(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n) - BigInt::from(i);
    }
    num / BigInt::from(factorial(k))
}
