//! Small exact integer helpers: gcd, modular inverses, primality, factoring.
//!
//! Everything here operates on machine integers with inputs far below any
//! overflow threshold (moduli in this crate are single- or double-digit).

/// Greatest common divisor (non-negative inputs).
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn modinv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd((a % m) as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i64) as u64)
}

/// Deterministic trial-division primality (inputs here are tiny).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime-power factorization `m = ∏ pᵢ^eᵢ`, returned as `(pᵢ, eᵢ, pᵢ^eᵢ)`
/// sorted by prime.
pub fn prime_power_factorization(m: u64) -> Vec<(u64, u32, u64)> {
    assert!(m >= 1, "factorization needs m >= 1");
    let mut out = Vec::new();
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            let mut pe = 1;
            while rest % p == 0 {
                rest /= p;
                e += 1;
                pe *= p;
            }
            out.push((p, e, pe));
        }
        p += 1;
    }
    if rest > 1 {
        out.push((rest, 1, rest));
    }
    out
}

/// Largest `k` with `p^k | x`, for `x ≠ 0`; `e_max` bounds the search.
pub fn valuation(p: u64, mut x: u64, e_max: u32) -> u32 {
    debug_assert!(x != 0);
    let mut k = 0;
    while k < e_max && x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

/// `n·(p−1)/p!` as a reduced fraction `(numerator, denominator)`.
///
/// This is pure reported metadata (a growth-rate bound), so exactness matters
/// and nothing else; `p ≤ 20` keeps `p!` inside `u128`.
pub fn reduced_fraction_n_pm1_over_pfact(p: u64, n: u64) -> Option<(u64, u64)> {
    if p > 20 {
        return None;
    }
    let mut fact: u128 = 1;
    for k in 2..=p as u128 {
        fact *= k;
    }
    let num: u128 = (n as u128) * ((p - 1) as u128);
    let g = gcd_u128(num, fact);
    let (num, den) = (num / g, fact / g);
    if num > u64::MAX as u128 || den > u64::MAX as u128 {
        return None;
    }
    Some((num as u64, den as u64))
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}

/// FNV-1a hash of a string; used to derive per-check RNG streams from one
/// user-facing seed in a way that is stable across platforms and runs.
pub fn fnv1a(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in tag.as_bytes() {
        h ^= *byte as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

/// Deterministic RNG stream for sampled checks: the same `seed` yields
/// independent streams per `tag`, reproducibly across platforms.
pub fn rng_for(seed: u64, tag: &str) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ fnv1a(tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_egcd_agree() {
        for a in 0..40u64 {
            for b in 0..40u64 {
                let g = gcd(a, b);
                let (g2, x, y) = egcd(a as i64, b as i64);
                assert_eq!(g as i64, g2);
                assert_eq!(a as i64 * x + b as i64 * y, g as i64);
            }
        }
    }

    #[test]
    fn modular_inverses() {
        assert_eq!(modinv(5, 3), Some(2)); // 5·2 = 10 ≡ 1 (mod 3)
        assert_eq!(modinv(5, 6), Some(5)); // 25 ≡ 1 (mod 6)
        assert_eq!(modinv(2, 4), None); // common factor
        for m in 2..30u64 {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    let inv = modinv(a, m).unwrap();
                    assert_eq!(a * inv % m, 1);
                }
            }
        }
    }

    #[test]
    fn primality_small_table() {
        let primes: Vec<u64> =
            (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn factorization_reconstructs() {
        for m in 1..200u64 {
            let f = prime_power_factorization(m);
            let prod: u64 = f.iter().map(|&(_, _, pe)| pe).product();
            assert_eq!(prod.max(1), m.max(1));
            for &(p, e, pe) in &f {
                assert!(is_prime(p));
                assert_eq!(p.pow(e), pe);
            }
        }
    }

    #[test]
    fn growth_bound_fraction_examples() {
        // 30·4/120 = 1, 1·4/120 = 1/30, 60·4/120 = 2
        assert_eq!(reduced_fraction_n_pm1_over_pfact(5, 30), Some((1, 1)));
        assert_eq!(reduced_fraction_n_pm1_over_pfact(5, 1), Some((1, 30)));
        assert_eq!(reduced_fraction_n_pm1_over_pfact(5, 60), Some((2, 1)));
    }

    #[test]
    fn fnv_is_stable() {
        // Frozen so report RNG streams never drift between builds.
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
        assert_ne!(fnv1a("a"), fnv1a("b"));
    }
}
