//! Dense univariate arithmetic modulo a small prime, supporting the
//! irreducibility certifier through distinct-degree factorization.

use super::gcd::{gcd_mod, inv_mod, mul_mod, rem_mod, sub_mod};
use super::PolyError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Fixed pool of primes in [10^3, 10^4], iterated deterministically by the
/// certifier.
pub const PRIME_POOL: [u64; 20] = [
    1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 2003, 2011, 2017, 2027, 2029,
    3001, 3011, 3019, 5003, 9973,
];

/// Univariate polynomial over Z_p, dense ascending coefficients, leading
/// coefficient nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimePoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(p >= 2);
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        trim(&mut coeffs);
        PrimePoly { p, coeffs }
    }

    /// Reduce integer coefficients mod p; `RetryPrime` when the leading
    /// coefficient of the input vanishes.
    pub fn from_bigints(p: u64, coeffs: &[BigInt]) -> Result<Self, PolyError> {
        let pb = BigInt::from(p);
        let reduced: Vec<u64> = coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        if let Some(last) = reduced.last() {
            let input_lc_nonzero = !coeffs.last().unwrap().is_zero();
            if input_lc_nonzero && *last == 0 {
                return Err(PolyError::RetryPrime(p));
            }
        }
        Ok(PrimePoly::new(p, reduced))
    }

    pub fn zero(p: u64) -> Self {
        PrimePoly { p, coeffs: vec![0] }
    }

    pub fn x(p: u64) -> Self {
        PrimePoly { p, coeffs: vec![0, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn sub(&self, other: &PrimePoly) -> PrimePoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = sub_mod(a, b, p);
        }
        trim(&mut out);
        PrimePoly { p, coeffs: out }
    }

    pub fn mul(&self, other: &PrimePoly) -> PrimePoly {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return PrimePoly::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        trim(&mut out);
        PrimePoly { p, coeffs: out }
    }

    pub fn rem(&self, modulus: &PrimePoly) -> PrimePoly {
        assert!(!modulus.is_zero());
        let mut coeffs = rem_mod(&self.coeffs, &modulus.coeffs, self.p);
        trim(&mut coeffs);
        PrimePoly { p: self.p, coeffs }
    }

    pub fn gcd(&self, other: &PrimePoly) -> PrimePoly {
        let coeffs = gcd_mod(self.coeffs.clone(), other.coeffs.clone(), self.p);
        PrimePoly { p: self.p, coeffs }
    }

    pub fn derivative(&self) -> PrimePoly {
        let p = self.p;
        if self.coeffs.len() == 1 {
            return PrimePoly::zero(p);
        }
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(i as u64 % p, c, p))
            .collect();
        trim(&mut out);
        PrimePoly { p, coeffs: out }
    }

    pub fn monic(&self) -> PrimePoly {
        let lc = *self.coeffs.last().unwrap();
        if lc == 0 || lc == 1 {
            return self.clone();
        }
        let inv = inv_mod(lc, self.p);
        PrimePoly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
        }
    }

    /// `gcd(f, f')` constant, i.e. no repeated factors mod p.
    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).is_constant()
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &PrimePoly) -> PrimePoly {
        let mut base = self.rem(modulus);
        let mut acc = PrimePoly::new(self.p, vec![1]);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Distinct-degree factorization of a squarefree polynomial: the sorted
    /// multiset of (degree of irreducible factor, count).
    ///
    /// Precondition (caller-checked): squarefree mod p.
    pub fn distinct_degree_factorization(&self) -> Vec<(usize, usize)> {
        assert!(!self.is_zero(), "ddf of the zero polynomial");
        let p = self.p;
        let mut v = self.monic();
        let mut result: Vec<(usize, usize)> = Vec::new();
        if v.is_constant() {
            return result;
        }
        let x = PrimePoly::x(p);
        let mut h = x.rem(&v); // x^(p^d) mod v, starting at d = 0
        let mut d = 0usize;
        while v.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p, &v);
            let g = h.sub(&x.rem(&v)).gcd(&v);
            if g.degree() > 0 {
                result.push((d, g.degree() / d));
                v = divide_exact(&v, &g);
                h = h.rem(&v);
            }
        }
        if v.degree() > 0 {
            result.push((v.degree(), 1));
        }
        result.sort_unstable();
        result
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
}

fn divide_exact(a: &PrimePoly, b: &PrimePoly) -> PrimePoly {
    // long division, remainder known to vanish
    let p = a.p;
    let b = b.monic();
    let mut r = a.coeffs.clone();
    let db = b.coeffs.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = *r.last().unwrap();
        q[dr - db] = c;
        if c != 0 {
            for i in 0..=db {
                let idx = dr - db + i;
                r[idx] = sub_mod(r[idx], mul_mod(c, b.coeffs[i], p), p);
            }
        }
        r.pop();
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    let mut out = PrimePoly { p, coeffs: q };
    trim(&mut out.coeffs);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_squared_plus_one_is_irreducible_mod_3() {
        // -1 is a non-residue mod 3
        let f = PrimePoly::new(3, vec![1, 0, 1]);
        assert!(f.is_squarefree());
        assert_eq!(f.distinct_degree_factorization(), vec![(2, 1)]);
    }

    #[test]
    fn x_squared_minus_one_splits_mod_5() {
        let f = PrimePoly::new(5, vec![4, 0, 1]); // x^2 - 1
        assert!(f.is_squarefree());
        assert_eq!(f.distinct_degree_factorization(), vec![(1, 2)]);
    }

    #[test]
    fn retry_prime_on_vanishing_leading_coefficient() {
        let coeffs = vec![BigInt::from(1), BigInt::from(1009)];
        assert_eq!(
            PrimePoly::from_bigints(1009, &coeffs),
            Err(PolyError::RetryPrime(1009))
        );
    }

    #[test]
    fn squarefree_detects_repeated_factor() {
        // (x+1)^2 = x^2 + 2x + 1 mod 7
        let f = PrimePoly::new(7, vec![1, 2, 1]);
        assert!(!f.is_squarefree());
    }

    #[test]
    fn ddf_of_mixed_degrees() {
        // (x+1)(x+2)(x^2+1) mod 7; x^2+1 = (x+...)? mod 7: -1 is not a QR mod 7
        let a = PrimePoly::new(7, vec![1, 1]);
        let b = PrimePoly::new(7, vec![2, 1]);
        let c = PrimePoly::new(7, vec![1, 0, 1]);
        let f = a.mul(&b).mul(&c);
        assert!(f.is_squarefree());
        assert_eq!(f.distinct_degree_factorization(), vec![(1, 2), (2, 1)]);
    }
}
