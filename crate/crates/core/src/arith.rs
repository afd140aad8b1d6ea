//! Small integer helpers: primality, prime powers, factorization.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime `q` with `n = q^k`, `k ≥ 1`. One is not a prime power.
pub fn prime_power_base(n: u128) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let q = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(q as u128) {
        m /= q as u128;
    }
    (m == 1).then_some(q)
}

pub fn is_prime_power(n: u128) -> bool {
    prime_power_base(n).is_some()
}

/// Whether `n` is a power `p^k` with `k ≥ 1`.
pub fn is_power_of(n: u128, p: u64) -> bool {
    prime_power_base(n) == Some(p)
}

fn smallest_prime_factor(n: u128) -> u64 {
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d as u64;
        }
        d += 1;
    }
    n as u64
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d: u128 = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d as u64);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m as u64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(11), Some(11));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(15), None);
        assert!(is_power_of(49, 7));
        assert!(!is_power_of(1, 7));
    }

    #[test]
    fn divisors_and_primes() {
        assert_eq!(prime_divisors(7920), vec![2, 3, 5, 11]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert!(is_prime(17));
        assert!(!is_prime(1));
    }
}
