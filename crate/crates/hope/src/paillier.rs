//! Unsigned Paillier core: key generation, encryption, decryption, and
//! ciphertext addition, with the generator fixed at g = n + 1.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numtheory::{self, Natural};

/// First 8 bytes of SHA-256 over the minimal big-endian encoding of n.
/// Guards against mixing ciphertexts and keys from different key pairs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct KeyFingerprint(pub [u8; 8]);

impl KeyFingerprint {
    pub fn of_modulus(n: &Natural) -> Self {
        let digest = Sha256::digest(n.to_bytes_be());
        let mut fp = [0u8; 8];
        fp.copy_from_slice(&digest[..8]);
        KeyFingerprint(fp)
    }
}

/// Public half of a Paillier key pair: the modulus n with n^2 cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PublicKey {
    n: Natural,
    n_squared: Natural,
    bits: usize,
    fingerprint: KeyFingerprint,
}

impl PublicKey {
    pub fn from_modulus(n: Natural) -> Result<Self> {
        if n < BigUint::from(15u8) || n.is_even() {
            return Err(Error::Config(format!("modulus must be odd and >= 15, got {n}")));
        }
        let n_squared = &n * &n;
        let bits = n.bits() as usize;
        let fingerprint = KeyFingerprint::of_modulus(&n);
        Ok(PublicKey { n, n_squared, bits, fingerprint })
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn n_squared(&self) -> &Natural {
        &self.n_squared
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn fingerprint(&self) -> KeyFingerprint {
        self.fingerprint
    }
}

/// Secret half: the primes, phi(n) and its inverse mod n.
#[derive(Clone, Debug)]
pub struct SecretKey {
    p: Natural,
    q: Natural,
    phi: Natural,
    mu: Natural,
    public: PublicKey,
}

impl SecretKey {
    /// Builds a key pair from two known primes, enforcing p != q,
    /// p ∤ (q - 1) and q ∤ (p - 1). Intended for fixed test vectors and for
    /// reloading persisted keys; fresh keys come from [`keygen`].
    pub fn from_primes(p: Natural, q: Natural) -> Result<Self> {
        if p == q || !prime_pair_ok(&p, &q) {
            return Err(Error::BadPrimePair(p.to_string(), q.to_string()));
        }
        let n = &p * &q;
        let public = PublicKey::from_modulus(n)?;
        let one = BigUint::one();
        let phi = (&p - &one) * (&q - &one);
        // gcd(phi, n) = 1 follows from the divisibility constraints
        let mu = numtheory::mod_inv(&phi, public.n())?;
        Ok(SecretKey { p, q, phi, mu, public })
    }

    pub fn p(&self) -> &Natural {
        &self.p
    }

    pub fn q(&self) -> &Natural {
        &self.q
    }

    pub fn phi(&self) -> &Natural {
        &self.phi
    }

    pub fn mu(&self) -> &Natural {
        &self.mu
    }

    pub fn public(&self) -> &PublicKey {
        &self.public
    }
}

fn prime_pair_ok(p: &Natural, q: &Natural) -> bool {
    let one = BigUint::one();
    !(&(q - &one) % p).is_zero() && !(&(p - &one) % q).is_zero()
}

/// Element of Z*_{n^2} tagged with the key it was produced under.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ciphertext {
    value: Natural,
    fingerprint: KeyFingerprint,
}

impl Ciphertext {
    /// Validates 0 < value < n^2 and gcd(value, n) = 1 before accepting an
    /// externally supplied ciphertext under `pk`.
    pub fn from_value(pk: &PublicKey, value: Natural) -> Result<Self> {
        if value.is_zero() || &value >= pk.n_squared() {
            return Err(Error::MalformedCiphertext(format!(
                "value out of range (0, n^2) for this key: {value}"
            )));
        }
        if !value.gcd(pk.n()).is_one() {
            return Err(Error::MalformedCiphertext(
                "value shares a factor with the modulus".into(),
            ));
        }
        Ok(Ciphertext { value, fingerprint: pk.fingerprint() })
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn fingerprint(&self) -> KeyFingerprint {
        self.fingerprint
    }

    pub fn matches(&self, pk: &PublicKey) -> bool {
        self.fingerprint == pk.fingerprint()
    }
}

/// Generates a fresh key pair with primes of `bits`/2 bits each, retrying
/// until the divisibility constraints hold.
pub fn keygen(bits: usize, rng: &mut dyn RngCore) -> Result<(PublicKey, SecretKey)> {
    if bits < 8 || bits % 2 != 0 {
        return Err(Error::KeygenBits(bits));
    }
    loop {
        let p = numtheory::gen_prime(bits / 2, rng)?;
        let q = numtheory::gen_prime(bits / 2, rng)?;
        if p == q || !prime_pair_ok(&p, &q) {
            continue;
        }
        let sk = SecretKey::from_primes(p, q)?;
        return Ok((sk.public().clone(), sk));
    }
}

/// Enc(m) = (n + 1)^m * r^n mod n^2, with caller-supplied randomizer r.
///
/// Computed as (1 + n*m) * r^n mod n^2; the two forms agree because the
/// binomial expansion of (n + 1)^m collapses to 1 + nm modulo n^2.
pub fn enc_raw(pk: &PublicKey, m: &Natural, r: &Natural) -> Result<Ciphertext> {
    let n = pk.n();
    if m >= n {
        return Err(Error::PlaintextRange(m.to_string()));
    }
    if r.is_zero() || r >= n || !r.gcd(n).is_one() {
        return Err(Error::BadRandomness(r.to_string()));
    }
    let n2 = pk.n_squared();
    let gm = (BigUint::one() + n * m) % n2;
    let rn = numtheory::mod_pow(r, n, n2)?;
    let value = gm * rn % n2;
    Ok(Ciphertext { value, fingerprint: pk.fingerprint() })
}

/// Encryption with a freshly sampled r from Z*_n.
pub fn enc(pk: &PublicKey, m: &Natural, rng: &mut dyn RngCore) -> Result<Ciphertext> {
    let r = numtheory::sample_unit(pk.n(), pk.n(), rng)?;
    enc_raw(pk, m, &r)
}

/// L(x) = (x - 1) / n, defined only when x ≡ 1 (mod n).
fn l_function(x: &Natural, n: &Natural) -> Result<Natural> {
    let x_minus_1 = x - BigUint::one();
    let (quot, rem) = x_minus_1.div_rem(n);
    if !rem.is_zero() {
        return Err(Error::MalformedCiphertext(
            "intermediate value not congruent to 1 mod n (wrong key or corrupted ciphertext)".into(),
        ));
    }
    Ok(quot)
}

/// Dec(c) = L(c^phi mod n^2) * mu mod n.
pub fn dec_raw(sk: &SecretKey, c: &Ciphertext) -> Result<Natural> {
    let pk = sk.public();
    if !c.matches(pk) {
        return Err(Error::KeyMismatch);
    }
    let interim = numtheory::mod_pow(c.value(), sk.phi(), pk.n_squared())?;
    let l = l_function(&interim, pk.n())?;
    Ok(l * sk.mu() % pk.n())
}

/// EvalAdd: c0 ⊕ c1 = c0 * c1 mod n^2; decrypts to (m0 + m1) mod n.
pub fn eval_add(pk: &PublicKey, c0: &Ciphertext, c1: &Ciphertext) -> Result<Ciphertext> {
    if !c0.matches(pk) || !c1.matches(pk) {
        return Err(Error::KeyMismatch);
    }
    let value = c0.value() * c1.value() % pk.n_squared();
    Ok(Ciphertext { value, fingerprint: pk.fingerprint() })
}
