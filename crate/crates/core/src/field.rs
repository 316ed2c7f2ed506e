//! Prime-field arithmetic.
//!
//! A [`PrimeField`] carries its modulus together with a designated element
//! `gamma` of known multiplicative order; the folded code evaluates at the
//! consecutive powers of `gamma`. Elements are plain canonical residues
//! ([`Fe`]) and all arithmetic goes through the field value, which is `Copy`
//! and cheap to pass around.

use std::fmt;

use crate::error::{Error, Result};

/// An element of a prime field, stored as its canonical residue in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(q) for a prime `q < 2^32`, with a designated element `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
    gamma: Fe,
    order: u64,
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(q: u64) -> Result<()> {
    if !(2..1 << 32).contains(&q) {
        return Err(Error::ModulusOutOfRange(q));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(())
}

/// Multiplicative order of a nonzero residue, by repeated multiplication.
fn order_of(q: u64, a: u64) -> u64 {
    let mut acc = a;
    let mut t = 1;
    while acc != 1 {
        acc = acc * a % q;
        t += 1;
    }
    t
}

impl PrimeField {
    /// Builds GF(q) and picks `gamma` with order at least `min_order`.
    ///
    /// The smallest primitive element is chosen, so the order is always
    /// exactly `q - 1`.
    pub fn new(q: u64, min_order: u64) -> Result<Self> {
        check_modulus(q)?;
        if min_order > q - 1 {
            return Err(Error::NoElementOfOrder { q, min_order });
        }
        (1..q)
            .map(|a| (a, order_of(q, a)))
            .find(|&(_, ord)| ord == q - 1)
            .filter(|&(_, ord)| ord >= min_order)
            .map(|(a, ord)| PrimeField {
                q,
                gamma: Fe(a),
                order: ord,
            })
            .ok_or(Error::NoElementOfOrder { q, min_order })
    }

    /// GF(q) with an explicitly chosen `gamma`; its order is computed.
    pub fn with_gamma(q: u64, gamma: u64) -> Result<Self> {
        check_modulus(q)?;
        if gamma == 0 || gamma >= q {
            return Err(Error::InvalidParams(format!(
                "gamma must lie in [1, {}], got {gamma}",
                q - 1
            )));
        }
        Ok(PrimeField {
            q,
            gamma: Fe(gamma),
            order: order_of(q, gamma),
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    /// Exact multiplicative order of `gamma`.
    #[inline]
    pub fn gamma_order(&self) -> u64 {
        self.order
    }

    /// Reduces an integer into the field.
    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe(v % self.q)
    }

    /// Reduces a signed integer into the field.
    pub fn elem_signed(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.q as i64) as u64)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a.0 + b.0;
        Fe(if s >= self.q { s - self.q } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            self.q - (b.0 - a.0)
        })
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.sub(Fe::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        // q < 2^32 so the product fits in u64
        Fe(a.0 * b.0 % self.q)
    }

    /// Square-and-multiply. `pow(0, 0)` is 1 by convention.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `gamma^e`.
    #[inline]
    pub fn gamma_pow(&self, e: u64) -> Fe {
        self.pow(self.gamma, e)
    }

    /// All `q` elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_element_of_gf13_is_two() {
        // 2^t mod 13 for t = 1..12, checked by hand
        let powers: Vec<u64> = (1..=12)
            .scan(1u64, |acc, _| {
                *acc = *acc * 2 % 13;
                Some(*acc)
            })
            .collect();
        assert!(powers[..11].iter().all(|&p| p != 1));
        assert_eq!(powers[11], 1);

        let f = PrimeField::new(13, 12).unwrap();
        assert_eq!(f.gamma(), Fe(2));
        assert_eq!(f.gamma_order(), 12);
    }

    #[test]
    fn gf2_uses_the_only_unit() {
        let f = PrimeField::new(2, 1).unwrap();
        assert_eq!(f.gamma(), Fe::ONE);
        assert_eq!(f.gamma_order(), 1);
    }

    #[test]
    fn rejects_composite_and_unreachable_order() {
        assert_eq!(PrimeField::new(12, 4), Err(Error::NotPrime(12)));
        assert_eq!(PrimeField::new(1, 1), Err(Error::ModulusOutOfRange(1)));
        assert!(matches!(
            PrimeField::new(13, 13),
            Err(Error::NoElementOfOrder { .. })
        ));
    }

    #[test]
    fn explicit_gamma_records_exact_order() {
        let f = PrimeField::with_gamma(13, 3).unwrap();
        assert_eq!(f.gamma_order(), 3);
        assert_eq!(f.gamma_pow(3), Fe::ONE);
        assert!(PrimeField::with_gamma(13, 0).is_err());
        assert!(PrimeField::with_gamma(13, 13).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f = PrimeField::new(13, 1).unwrap();
        assert_eq!(f.add(f.elem(7), f.elem(9)), Fe(3));
        for a in f.elements() {
            assert_eq!(f.mul(a, Fe::ONE), a);
        }
        assert_eq!(f.div(f.elem(5), Fe::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.sub(f.elem(2), f.elem(5)), Fe(10));
        assert_eq!(f.elem_signed(-1), Fe(12));
    }

    #[test]
    fn pow_examples() {
        let f = PrimeField::new(13, 1).unwrap();
        assert_eq!(f.pow(Fe(2), 12), Fe::ONE);
        assert_eq!(f.pow(Fe(2), 0), Fe::ONE);
        assert_eq!(f.pow(Fe::ZERO, 3), Fe::ZERO);
        assert_eq!(f.pow(Fe::ZERO, 0), Fe::ONE);
    }

    #[test]
    fn inverses_exhaustive_up_to_257() {
        for q in (2..=257).filter(|&q| is_prime(q)) {
            let f = PrimeField::new(q, 1).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn recorded_order_is_exact() {
        for q in [2, 3, 5, 13, 31, 73, 257] {
            let f = PrimeField::new(q, 1).unwrap();
            let g = f.gamma();
            assert_eq!(f.pow(g, f.gamma_order()), Fe::ONE);
            for t in 1..f.gamma_order() {
                assert_ne!(f.pow(g, t), Fe::ONE);
            }
        }
    }

    #[test]
    fn pow_is_additive_in_exponent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = PrimeField::new(73, 1).unwrap();
        for _ in 0..500 {
            let a = f.elem(rng.gen_range(0..73));
            let (e1, e2) = (rng.gen_range(0..200), rng.gen_range(0..200));
            assert_eq!(f.pow(a, e1 + e2), f.mul(f.pow(a, e1), f.pow(a, e2)));
        }
    }
}
