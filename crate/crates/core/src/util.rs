//! Small exact-arithmetic helpers on machine integers.

pub(crate) fn factorial_u128(n: u64) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

/// `P(n,k) = n!/(n-k)!`; zero when `k > n`, `None` on overflow.
pub fn falling_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    ((n - k + 1) as u128..=n as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// `P(n,k)` as a `u64`, the vertex count of S(n,k).
pub fn falling_u64(n: u64, k: u64) -> Option<u64> {
    falling_u128(n, k).and_then(|v| u64::try_from(v).ok())
}

/// `Some((p, m))` when `n = p^m` with `p` prime and `m ≥ 1`. `1` is not a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= n)
        .find(|d| n.is_multiple_of(*d))
        .unwrap_or(n);
    let mut rest = n;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling_u128(9, 4), Some(3024));
        assert_eq!(falling_u128(33, 4), Some(982_080));
        assert_eq!(falling_u128(3, 5), Some(0));
        assert_eq!(binomial_u128(9, 4), Some(126));
        assert_eq!(binomial_u128(33, 30), Some(5456));
        assert_eq!(factorial_u128(34).map(|f| f > 0), Some(true));
        assert_eq!(factorial_u128(35), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        let brute: Vec<u64> = (2..200u64)
            .filter(|&n| {
                let primes: Vec<u64> = (2..=n)
                    .filter(|&d| n % d == 0 && (2..d).all(|e| d % e != 0))
                    .collect();
                primes.len() == 1
            })
            .collect();
        let fast: Vec<u64> = (2..200u64).filter(|&n| prime_power(n).is_some()).collect();
        assert_eq!(brute, fast);
    }
}
