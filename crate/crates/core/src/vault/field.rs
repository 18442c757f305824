//! Arithmetic in GF(p) for 64-bit primes, plus deterministic primality
//! testing. Products go through u128 so any u64 modulus is safe.

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128 % p as u128) % p as u128) as u64
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse by Fermat's little theorem; requires a != 0 mod p
/// and p prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime witnesses, which is
/// deterministic for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for w in WITNESSES {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const MERSENNE_61: u64 = (1 << 61) - 1;

    #[test]
    fn primality_matches_trial_division_up_to_ten_thousand() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..10_000 {
            assert_eq!(is_prime(n), naive(n), "disagreement at {n}");
        }
    }

    #[test]
    fn known_large_primes_and_composites() {
        assert!(is_prime(MERSENNE_61));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime((1 << 61) + 1));
        assert!(!is_prime(u64::MAX));
        // Carmichael numbers fool single-base Fermat tests.
        assert!(!is_prime(561));
        assert!(!is_prime(41_041));
    }

    #[test]
    fn inverse_round_trips_at_word_scale() {
        for a in [1u64, 2, 3, 12345, MERSENNE_61 - 1] {
            let inv = inv_mod(a, MERSENNE_61);
            assert_eq!(mul_mod(a, inv, MERSENNE_61), 1, "a = {a}");
        }
        // Exhaustively over a small field.
        for a in 1..11u64 {
            assert_eq!(mul_mod(a, inv_mod(a, 11), 11), 1);
        }
    }

    #[test]
    fn modular_ops_agree_with_wide_arithmetic() {
        let p = MERSENNE_61;
        let a = p - 3;
        let b = p - 5;
        assert_eq!(sub_mod(3, 5, p), p - 2);
        assert_eq!(mul_mod(a, b, p), ((a as u128 * b as u128) % p as u128) as u64);
        assert_eq!(pow_mod(2, 62, p), 2); // 2^61 = 1 mod the Mersenne prime => 2^62 = 2
    }
}
