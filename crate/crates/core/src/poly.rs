//! Dense univariate polynomials over a [`PrimeField`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

/// Coefficients lowest degree first, with no trailing zeros. The zero
/// polynomial has an empty coefficient vector and degree `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Coefficients are reduced mod q.
    pub fn from_u64s(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * X^deg`.
    pub fn monomial(field: PrimeField, c: Fe, deg: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of coefficients, i.e. degree + 1 (0 for the zero polynomial).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients zero-padded (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Fe> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `p(cX)`: coefficient `i` scaled by `c^i`.
    pub fn dilate(&self, c: Fe) -> Poly {
        let f = &self.field;
        let mut scale = Fe::ONE;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let out = f.mul(a, scale);
                scale = f.mul(scale, c);
                out
            })
            .collect();
        Poly::new(self.field, coeffs)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Poly, op: impl Fn(Fe, Fe) -> Fe) -> Result<Poly> {
        self.check_field(other)?;
        let len = self.len().max(other.len());
        let coeffs = (0..len)
            .map(|i| op(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field, coeffs))
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scalar_mul(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(self.field, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn neg(&self) -> Poly {
        self.scalar_mul(self.field.neg(Fe::ONE))
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(self.field, out))
    }

    /// Multiplicity of `X` as a factor (0 for the zero polynomial).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `X^k`, dropping the `k` lowest coefficients.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::new(self.field, self.coeffs.iter().skip(k).copied().collect())
    }

    /// `X^k * self`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(self.field, coeffs)
    }

    /// `offset + sum(weights[j] * polys[j])`.
    pub fn affine_combination(offset: &Poly, weights: &[Fe], polys: &[Poly]) -> Result<Poly> {
        debug_assert_eq!(weights.len(), polys.len());
        let mut acc = offset.clone();
        for (&w, p) in weights.iter().zip(polys) {
            if !w.is_zero() {
                acc = acc.add(&p.scalar_mul(w))?;
            }
        }
        Ok(acc)
    }

    /// Parses the text form: space-separated decimal coefficients, lowest
    /// degree first. Values must already be reduced.
    pub fn parse(field: PrimeField, s: &str) -> std::result::Result<Poly, String> {
        let coeffs = s
            .split_whitespace()
            .map(|tok| {
                let v: u64 = tok
                    .parse()
                    .map_err(|_| format!("not a nonnegative integer: {tok:?}"))?;
                if v >= field.modulus() {
                    return Err(format!("{v} is not reduced mod {}", field.modulus()));
                }
                Ok(field.elem(v))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err("empty polynomial".into());
        }
        Ok(Poly::new(field, coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by modulus, then lexicographically by coefficient sequence.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .modulus()
            .cmp(&other.field.modulus())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
