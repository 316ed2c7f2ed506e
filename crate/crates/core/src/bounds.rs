//! Closed-form radius and list-size bounds, all in exact arithmetic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::Rational;

fn one() -> Rational {
    Rational::from_integer(1)
}

/// `k/(k+1) * (1 - m/(m-k+1) * R)`.
pub fn decoding_radius(m: usize, k: usize, rate: Rational) -> Result<Rational> {
    if k == 0 || k > m {
        return Err(Error::InvalidParams(format!("k = {k} must lie in [1, m = {m}]")));
    }
    if rate <= Rational::from_integer(0) {
        return Err(Error::InvalidParams(format!("rate {rate} must be positive")));
    }
    let (m, k) = (m as i64, k as i64);
    let radius = Rational::new(k, k + 1) * (one() - Rational::new(m, m - k + 1) * rate);
    if radius <= Rational::from_integer(0) {
        return Err(Error::InvalidParams(format!(
            "rate {rate} is at least (m-k+1)/m = {}; radius would be {radius}",
            Rational::new(m - k + 1, m)
        )));
    }
    Ok(radius)
}

/// Intersection bound for a `d`-dimensional affine subspace of any linear
/// code with a ball of radius `k/(k+1)` times the distance: `k(k+1)^(d-1)`.
pub fn generic_list_bound(k: u64, d: u32) -> Result<u64> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParams(format!(
            "generic bound needs k >= 1 and d >= 1, got k = {k}, d = {d}"
        )));
    }
    (k + 1)
        .checked_pow(d - 1)
        .and_then(|p| p.checked_mul(k))
        .ok_or_else(|| Error::InvalidParams("bound overflows u64".into()))
}

/// `(k-1) d + 1`, valid for `k > d`.
pub fn frs_affine_bound(k: u64, d: u64) -> Result<u64> {
    if k <= d {
        return Err(Error::InvalidParams(format!(
            "folded bound needs k > d, got k = {k}, d = {d}"
        )));
    }
    Ok((k - 1) * d + 1)
}

/// `(k-1)^2 + 1`.
pub fn frs_list_bound(k: usize) -> u64 {
    let k = k.max(1) as u64;
    (k - 1) * (k - 1) + 1
}

/// Compares `k/(k+1) (1 - R)` against the Johnson radius `1 - sqrt(R)`
/// without square roots. Returns the ordering of the former relative to the
/// latter.
pub fn johnson_compare(k: usize, rate: Rational) -> Result<Ordering> {
    let zero = Rational::from_integer(0);
    if rate <= zero || rate >= one() {
        return Err(Error::InvalidParams(format!("rate {rate} must lie in (0, 1)")));
    }
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let k = k as i64;
    let ours = Rational::new(k, k + 1) * (one() - rate);
    // ours >= 1 - sqrt(R)  <=>  sqrt(R) >= 1 - ours =: c
    let c = one() - ours;
    if c <= zero {
        return Ok(Ordering::Greater);
    }
    Ok(rate.cmp(&(c * c)))
}

/// `1 - sqrt(R)` as a float, for display only.
pub fn johnson_radius(rate: Rational) -> f64 {
    1.0 - (*rate.numer() as f64 / *rate.denom() as f64).sqrt()
}

/// Least `m >= k` with `decoding_radius(m, k, R) >= k/(k+1) (1 - R - eps)`,
/// i.e. `m >= (R + eps)(k - 1) / eps`.
pub fn min_folding_for_epsilon(k: usize, rate: Rational, eps: Rational) -> Result<usize> {
    if eps <= Rational::from_integer(0) {
        return Err(Error::InvalidParams(format!("epsilon {eps} must be positive")));
    }
    if rate <= Rational::from_integer(0) || rate + eps >= one() {
        return Err(Error::InvalidParams(format!(
            "need 0 < R and R + epsilon < 1, got R = {rate}, epsilon = {eps}"
        )));
    }
    let m = ((rate + eps) * Rational::from_integer(k as i64 - 1) / eps)
        .ceil()
        .to_integer();
    Ok((m.max(0) as usize).max(k.max(1)))
}

/// Every bound for one parameter choice. Radius and Johnson fields are
/// present only when `m` and `R` are known.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub m: Option<usize>,
    pub k: usize,
    pub rate: Option<Rational>,
    pub d: usize,
    pub radius: Option<Rational>,
    /// `k(k+1)^(d-1)`; 1 for `d = 0`.
    pub generic_bound: u64,
    /// `None` when `k <= d`.
    pub frs_affine_bound: Option<u64>,
    pub frs_list_bound: u64,
    pub johnson_radius: Option<f64>,
    pub johnson_order: Option<Ordering>,
}

impl BoundReport {
    pub fn new(m: Option<usize>, k: usize, rate: Option<Rational>, d: Option<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        let d = d.unwrap_or(k - 1);
        let radius = match (m, rate) {
            (Some(m), Some(r)) => Some(decoding_radius(m, k, r)?),
            _ => None,
        };
        let generic_bound = if d == 0 {
            1
        } else {
            generic_list_bound(k as u64, d as u32)?
        };
        let (johnson_radius, johnson_order) = match rate {
            Some(r) => (Some(johnson_radius(r)), Some(johnson_compare(k, r)?)),
            None => (None, None),
        };
        Ok(BoundReport {
            m,
            k,
            rate,
            d,
            radius,
            generic_bound,
            frs_affine_bound: frs_affine_bound(k as u64, d as u64).ok(),
            frs_list_bound: frs_list_bound(k),
            johnson_radius,
            johnson_order,
        })
    }

    pub const CSV_HEADER: &'static str =
        "m,k,rate,d,radius,generic_bound,frs_affine_bound,frs_list_bound,johnson_radius,johnson_order";

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            opt(self.m.map(|v| v.to_string())),
            self.k.to_string(),
            opt(self.rate.map(|v| v.to_string())),
            self.d.to_string(),
            opt(self.radius.map(|v| v.to_string())),
            self.generic_bound.to_string(),
            opt(self.frs_affine_bound.map(|v| v.to_string())),
            self.frs_list_bound.to_string(),
            opt(self.johnson_radius.map(|v| format!("{v:.6}"))),
            opt(self.johnson_order.map(|o| order_word(o).to_string())),
        ]
        .join(",")
    }
}

fn order_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Greater => "frs-larger",
        Ordering::Equal => "equal",
        Ordering::Less => "johnson-larger",
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let na = || "n/a".to_string();
        let rows = [
            ("m", self.m.map_or_else(na, |v| v.to_string())),
            ("k", self.k.to_string()),
            ("rate", self.rate.map_or_else(na, |v| v.to_string())),
            ("d", self.d.to_string()),
            ("radius", self.radius.map_or_else(na, |v| v.to_string())),
            ("generic_bound", self.generic_bound.to_string()),
            (
                "frs_affine_bound",
                self.frs_affine_bound.map_or_else(na, |v| v.to_string()),
            ),
            ("frs_list_bound", self.frs_list_bound.to_string()),
            (
                "johnson_radius",
                self.johnson_radius.map_or_else(na, |v| format!("{v:.6}")),
            ),
            (
                "johnson_order",
                self.johnson_order.map_or_else(na, |o| order_word(o).to_string()),
            ),
        ];
        for (name, value) in rows {
            writeln!(f, "{name:<18}{value}")?;
        }
        Ok(())
    }
}
