//! Primality and factorization of the modest integers that occur as
//! denominators and criterion thresholds.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime bases: deterministic below
/// 3.3e24, probabilistic above.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Least prime >= n.
pub fn next_prime(n: &BigUint) -> BigUint {
    let mut c = n.clone().max(BigUint::from(2u32));
    if c > BigUint::from(2u32) && c.is_even() {
        c += 1u32;
    }
    while !is_prime(&c) {
        c += if c == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    c
}

/// Prime factorization by trial division, ascending primes. Perfect powers
/// are reduced to their root first, so p^k with p large stays cheap.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut m = n.clone();
    if m.is_zero() {
        return out;
    }
    for k in (2..m.bits() as u32).rev() {
        let r = m.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == m {
            return factorize(&r).into_iter().map(|(q, e)| (q, e * k)).collect();
        }
    }
    let mut q = BigUint::from(2u32);
    let mut m_prime = is_prime(&m);
    while !m_prime && &q * &q <= m {
        let mut e = 0;
        while (&m % &q).is_zero() {
            m /= &q;
            e += 1;
        }
        if e > 0 {
            out.push((q.clone(), e));
            m_prime = is_prime(&m);
        }
        q += if q == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !m.is_one() {
        match out.iter_mut().find(|(p, _)| *p == m) {
            Some(entry) => entry.1 += 1,
            None => out.push((m, 1)),
        }
    }
    out.sort();
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime_u64(k)).collect()
}

pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..3000u64 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
    }

    #[test]
    fn large_known() {
        // 2^61 - 1 is prime, 2^61 + 1 is divisible by 3.
        assert!(is_prime(&((BigUint::one() << 61) - 1u32)));
        assert!(!is_prime(&((BigUint::one() << 61) + 1u32)));
        // Strong pseudoprime to bases 2..37.
        let psp: BigUint = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&psp));
    }

    #[test]
    fn factor_and_next() {
        let f = factorize(&BigUint::from(360u32));
        let want: Vec<(BigUint, u32)> = vec![(2u32.into(), 3), (3u32.into(), 2), (5u32.into(), 1)];
        assert_eq!(f, want);
        assert_eq!(next_prime(&BigUint::from(144u32)), BigUint::from(149u32));
        assert_eq!(next_prime(&BigUint::from(2u32)), BigUint::from(2u32));
        assert!(factorize(&BigUint::one()).is_empty());
    }

    #[test]
    fn factor_products_match() {
        for n in 1..2000u32 {
            let f = factorize(&BigUint::from(n));
            let back = f.iter().fold(BigUint::one(), |acc, (q, e)| acc * num_traits::pow(q.clone(), *e as usize));
            assert_eq!(back, BigUint::from(n));
            assert!(f.iter().all(|(q, _)| is_prime(q)));
        }
        let big = num_traits::pow(BigUint::from(50_000_017u64), 7);
        assert_eq!(factorize(&big), vec![(BigUint::from(50_000_017u64), 7)]);
        let mixed = num_traits::pow(BigUint::from(6u32 * 1_000_003), 4);
        assert_eq!(factorize(&mixed).len(), 3);
    }
}
