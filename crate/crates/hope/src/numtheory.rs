//! Arbitrary-precision modular arithmetic and probabilistic prime generation.
//!
//! Everything here is a pure function of its inputs plus an explicitly passed
//! randomness source, so concurrent use is unrestricted as long as each thread
//! owns (or synchronizes) its own RNG.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::RngCore;

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;
/// Arbitrary-precision signed integer.
pub type SignedInt = BigInt;

const SAMPLE_RETRY_BUDGET: u32 = 1000;
const MILLER_RABIN_ROUNDS: u32 = 40;

/// base^exp mod modulus in O(log exp) multiplications.
pub fn mod_pow(base: &Natural, exp: &Natural, modulus: &Natural) -> Result<Natural> {
    if modulus < &BigUint::from(2u8) {
        return Err(Error::InvalidModulus);
    }
    Ok(base.modpow(exp, modulus))
}

/// Inverse of `a` modulo `modulus` via the extended Euclidean algorithm.
pub fn mod_inv(a: &Natural, modulus: &Natural) -> Result<Natural> {
    if modulus < &BigUint::from(2u8) {
        return Err(Error::InvalidModulus);
    }
    let m = BigInt::from(modulus.clone());
    let egcd = BigInt::from(a.clone()).extended_gcd(&m);
    if !egcd.gcd.is_one() {
        return Err(Error::NonInvertible(a.to_string(), modulus.to_string()));
    }
    let x = egcd.x.mod_floor(&m);
    Ok(x.to_biguint().expect("mod_floor of positive modulus is non-negative"))
}

pub fn gcd(a: &Natural, b: &Natural) -> Result<Natural> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    Ok(a.gcd(b))
}

/// Odd probable prime of exactly `bits` bits (top bit set), Miller–Rabin
/// with 40 rounds.
pub fn gen_prime(bits: usize, rng: &mut dyn RngCore) -> Result<Natural> {
    if bits < 3 {
        return Err(Error::PrimeBits(bits));
    }
    let one = BigUint::one();
    let top = &one << (bits - 1);
    loop {
        let mut candidate = rng.gen_biguint(bits as u64);
        candidate |= &top; // exact bit length
        candidate |= &one; // odd
        if is_probable_prime(&candidate, MILLER_RABIN_ROUNDS, rng) {
            return Ok(candidate);
        }
    }
}

/// Miller–Rabin probabilistic primality test.
pub fn is_probable_prime(n: &Natural, rounds: u32, rng: &mut dyn RngCore) -> bool {
    let two = BigUint::from(2u8);
    let three = BigUint::from(3u8);
    if n < &two {
        return false;
    }
    if n == &two || n == &three {
        return true;
    }
    if n.is_even() {
        return false;
    }
    // n - 1 = d * 2^s with d odd
    let n_minus_1 = n - 1u8;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;

    'witness: for _ in 0..rounds {
        // a uniform in [2, n - 2]
        let a = rng.gen_biguint_range(&two, &(n - 1u8));
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniform element of Z*_modulus in [1, bound), by rejection sampling.
pub fn sample_unit(modulus: &Natural, bound: &Natural, rng: &mut dyn RngCore) -> Result<Natural> {
    let two = BigUint::from(2u8);
    if modulus < &two || bound < &two || bound > modulus {
        return Err(Error::Config(format!(
            "sample_unit requires 2 <= bound <= modulus, got bound {bound}, modulus {modulus}"
        )));
    }
    let one = BigUint::one();
    for _ in 0..SAMPLE_RETRY_BUDGET {
        let u = rng.gen_biguint_range(&one, bound);
        if u.gcd(modulus).is_one() {
            return Ok(u);
        }
    }
    Err(Error::UnitExhausted(SAMPLE_RETRY_BUDGET))
}

/// Symmetric modulo: ((x + floor(n/2)) mod n) - floor(n/2).
///
/// Maps a residue in [0, n) to the signed range centered at zero; for odd n
/// the result lies in [-(n-1)/2, (n-1)/2].
pub fn smod(x: &Natural, n: &Natural) -> Result<SignedInt> {
    if n < &BigUint::from(2u8) {
        return Err(Error::InvalidModulus);
    }
    if x >= n {
        return Err(Error::OutOfRange(x.to_string(), n.to_string()));
    }
    let half = n >> 1;
    let shifted = (x + &half) % n;
    Ok(BigInt::from(shifted) - BigInt::from(half))
}

/// Ternary sign in {-1, 0, +1}, reported as an [`std::cmp::Ordering`]
/// (`Greater` = +1, `Equal` = 0, `Less` = -1).
pub fn sgn(x: &SignedInt) -> std::cmp::Ordering {
    if x.is_positive() {
        std::cmp::Ordering::Greater
    } else if x.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn n(v: u64) -> Natural {
        BigUint::from(v)
    }

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(0x5eed)
    }

    #[test]
    fn mod_pow_identities() {
        assert_eq!(mod_pow(&n(7), &n(0), &n(13)).unwrap(), n(1));
        assert_eq!(mod_pow(&n(7), &n(1), &n(13)).unwrap(), n(7));
        assert_eq!(mod_pow(&n(2), &n(10), &n(1000)).unwrap(), n(24));
    }

    #[test]
    fn mod_pow_rejects_small_modulus() {
        assert!(matches!(mod_pow(&n(2), &n(3), &n(1)), Err(Error::InvalidModulus)));
        assert!(matches!(mod_pow(&n(2), &n(3), &n(0)), Err(Error::InvalidModulus)));
    }

    /// Naive repeated-multiplication oracle, exhaustive over small inputs.
    #[test]
    fn mod_pow_matches_naive_oracle() {
        for m in 2u64..64 {
            for base in 0u64..32 {
                for exp in 0u64..32 {
                    let mut want = 1u64;
                    for _ in 0..exp {
                        want = want * base % m;
                    }
                    let got = mod_pow(&n(base), &n(exp), &n(m)).unwrap();
                    assert_eq!(got, n(want), "base {base} exp {exp} mod {m}");
                }
            }
        }
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(&n(1), &n(2)).unwrap(), n(1));
        assert_eq!(mod_inv(&n(1), &n(97)).unwrap(), n(1));
        assert_eq!(mod_inv(&n(8), &n(15)).unwrap(), n(2));
        assert_eq!(mod_inv(&n(16), &n(225)).unwrap(), n(211));
    }

    #[test]
    fn mod_inv_rejects_non_units() {
        assert!(matches!(mod_inv(&n(6), &n(15)), Err(Error::NonInvertible(..))));
        assert!(matches!(mod_inv(&n(0), &n(15)), Err(Error::NonInvertible(..))));
    }

    /// a * inv(a) == 1 for every unit, exhaustive over all moduli <= 100.
    #[test]
    fn mod_inv_exhaustive_small_moduli() {
        for m in 2u64..=100 {
            for a in 1u64..m {
                if gcd(&n(a), &n(m)).unwrap().is_one() {
                    let inv = mod_inv(&n(a), &n(m)).unwrap();
                    assert!(inv > n(0) && inv < n(m));
                    assert_eq!((inv * n(a)) % n(m), n(1), "a {a} mod {m}");
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&n(42), &n(0)).unwrap(), n(42));
        assert_eq!(gcd(&n(12), &n(18)).unwrap(), n(6));
        assert_eq!(gcd(&n(35), &n(24)).unwrap(), n(1));
        assert_eq!(gcd(&n(12), &n(18)).unwrap(), gcd(&n(18), &n(12)).unwrap());
        assert!(matches!(gcd(&n(0), &n(0)), Err(Error::UndefinedGcd)));
    }

    #[test]
    fn gen_prime_three_bits() {
        let mut r = rng();
        for _ in 0..20 {
            let p = gen_prime(3, &mut r).unwrap().to_u64().unwrap();
            assert!(p == 5 || p == 7);
        }
        assert!(matches!(gen_prime(2, &mut r), Err(Error::PrimeBits(2))));
    }

    #[test]
    fn gen_prime_eight_bits_in_range() {
        let mut r = rng();
        for _ in 0..10 {
            let p = gen_prime(8, &mut r).unwrap().to_u64().unwrap();
            assert!((128..=255).contains(&p), "{p}");
            assert_eq!(p % 2, 1);
        }
    }

    /// Trial-division oracle for every bit size a u64 can exhaust quickly.
    #[test]
    fn gen_prime_passes_trial_division() {
        fn is_prime_oracle(x: u64) -> bool {
            if x < 2 {
                return false;
            }
            let mut d = 2u64;
            while d * d <= x {
                if x % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        }
        let mut r = rng();
        for bits in 3..=20 {
            for _ in 0..5 {
                let p = gen_prime(bits, &mut r).unwrap();
                let v = p.to_u64().unwrap();
                assert!(is_prime_oracle(v), "{v} ({bits} bits)");
                assert_eq!(p.bits() as usize, bits);
            }
        }
    }

    #[test]
    fn sample_unit_only_choice() {
        let mut r = rng();
        assert_eq!(sample_unit(&n(15), &n(2), &mut r).unwrap(), n(1));
    }

    /// Brute-force enumeration of Z*_15.
    #[test]
    fn sample_unit_lands_in_group() {
        let units: Vec<u64> = vec![1, 2, 4, 7, 8, 11, 13, 14];
        let mut r = rng();
        for _ in 0..100 {
            let u = sample_unit(&n(15), &n(15), &mut r).unwrap().to_u64().unwrap();
            assert!(units.contains(&u), "{u}");
        }
    }

    #[test]
    fn sample_unit_prime_modulus_covers_all_nonzero() {
        let mut r = rng();
        for _ in 0..50 {
            let u = sample_unit(&n(13), &n(13), &mut r).unwrap().to_u64().unwrap();
            assert!((1..13).contains(&u));
        }
    }

    #[test]
    fn sample_unit_rejects_bad_bounds() {
        let mut r = rng();
        assert!(sample_unit(&n(15), &n(1), &mut r).is_err());
        assert!(sample_unit(&n(15), &n(16), &mut r).is_err());
    }

    #[test]
    fn smod_examples() {
        assert_eq!(smod(&n(0), &n(15)).unwrap(), BigInt::from(0));
        assert_eq!(smod(&n(14), &n(15)).unwrap(), BigInt::from(-1));
        assert_eq!(smod(&n(6), &n(15)).unwrap(), BigInt::from(6));
        assert!(matches!(smod(&n(15), &n(15)), Err(Error::OutOfRange(..))));
    }

    /// smod(x, n) is congruent to x and bounded below by -floor(n/2),
    /// exhaustive for n <= 100.
    #[test]
    fn smod_exhaustive_small_moduli() {
        for m in 2u64..=100 {
            let half = m / 2;
            for x in 0..m {
                let s = smod(&n(x), &n(m)).unwrap();
                let back = s.mod_floor(&BigInt::from(m)).to_u64().unwrap();
                assert_eq!(back, x, "x {x} mod {m}");
                assert!(s >= BigInt::from(-(half as i64)));
                assert!(s <= BigInt::from((m - 1 - half) as i64));
            }
        }
    }

    #[test]
    fn sgn_ternary() {
        use std::cmp::Ordering::*;
        assert_eq!(sgn(&BigInt::from(0)), Equal);
        assert_eq!(sgn(&BigInt::from(7)), Greater);
        assert_eq!(sgn(&BigInt::from(-3)), Less);
    }
}
