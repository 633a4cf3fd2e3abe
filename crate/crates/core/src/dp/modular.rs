//! Word-sized primes and Chinese remaindering for the modular engine.

use dashu::integer::UBig;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2^62, in decreasing order. Sums of two
/// residues never overflow a `u64`.
pub fn primes_below_2_62(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Incremental Garner reconstruction of a nonnegative integer below the
/// product of the moduli.
#[derive(Clone, Debug)]
pub struct Crt {
    value: UBig,
    modulus: UBig,
}

impl Default for Crt {
    fn default() -> Self {
        Crt { value: UBig::ZERO, modulus: UBig::ONE }
    }
}

impl Crt {
    pub fn push(&mut self, residue: u64, p: u64) {
        let cur = &self.value % p;
        let m = &self.modulus % p;
        let inv = pow_mod(m, p - 2, p);
        let diff = (residue % p + p - cur) % p;
        let t = mul_mod(diff, inv, p);
        self.value += &self.modulus * UBig::from(t);
        self.modulus *= UBig::from(p);
    }

    pub fn value(&self) -> &UBig {
        &self.value
    }

    pub fn modulus(&self) -> &UBig {
        &self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime((1 << 61) - 1));
        let ps = primes_below_2_62(3);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p < 1 << 62 && is_prime(p)));
    }

    #[test]
    fn reconstructs_large_integers() {
        let ps = primes_below_2_62(4);
        let x: UBig = "123456789012345678901234567890123456789012345678901234567".parse().unwrap();
        let mut crt = Crt::default();
        for &p in &ps {
            crt.push(&x % p, p);
        }
        assert_eq!(crt.value(), &x);
    }
}
