//! Folded Wronskians and per-position rank profiles.
//!
//! For a basis `h_1..h_d` of an affine subspace, `A_i` is the `m x d` matrix
//! of basis evaluations at the `m` points of folded position `i`. Its rank
//! `r_i` is how much agreement at `i` cuts the subspace dimension. The total
//! deficit `sum(d - r_i)` is at most `d * msg_len / (m - d + 1)`; a
//! violation is reported as a contract error.

use crate::decoder::AffineSubspace;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::Rational;

/// `A_i` for a 0-based folded position `pos`: entry `(j, s)` is
/// `h_s(gamma^(pos*m + j))`.
pub fn coordinate_matrix(h: &AffineSubspace, pos: usize) -> Result<Matrix> {
    let params = h.params();
    if pos >= params.big_n() {
        return Err(Error::OutOfRange(format!(
            "position {pos} outside [0, {})",
            params.big_n()
        )));
    }
    let mut a = Matrix::zeros(*params.field(), params.m(), h.dim());
    for (s, b) in h.basis().iter().enumerate() {
        for (j, &x) in params.symbol_points(pos).iter().enumerate() {
            a.set(j, s, b.eval(x));
        }
    }
    Ok(a)
}

/// Determinant of the `d x d` matrix with entry `(i, j) = p_j(gamma^i X)`,
/// by cofactor expansion over the polynomial ring.
pub fn folded_wronskian(field: &PrimeField, polys: &[Poly]) -> Result<Poly> {
    if polys.is_empty() {
        return Err(Error::InvalidParams("folded Wronskian of no polynomials".into()));
    }
    let d = polys.len();
    let matrix: Vec<Vec<Poly>> = (0..d)
        .map(|i| {
            let c = field.gamma_pow(i as u64);
            polys.iter().map(|p| p.dilate(c)).collect()
        })
        .collect();
    let det = cofactor_det(field, &matrix, &(0..d).collect::<Vec<_>>())?;

    let max_deg = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
    if let Some(deg) = det.degree() {
        assert!(deg <= d * max_deg, "Wronskian degree {deg} > {d} * {max_deg}");
    }
    Ok(det)
}

/// Expansion along the first of the remaining rows; `cols` are the column
/// indices still in play.
fn cofactor_det(field: &PrimeField, m: &[Vec<Poly>], cols: &[usize]) -> Result<Poly> {
    let row = m.len() - cols.len();
    if cols.len() == 1 {
        return Ok(m[row][cols[0]].clone());
    }
    let mut acc = Poly::zero(*field);
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&cofactor_det(field, m, &rest)?)?;
        acc = if idx % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

/// Linear independence via the folded Wronskian. Valid while every degree
/// is below the order of `gamma`.
pub fn is_independent(field: &PrimeField, polys: &[Poly]) -> Result<bool> {
    if let Some(deg) = polys.iter().filter_map(Poly::degree).max() {
        if deg as u64 >= field.gamma_order() {
            return Err(Error::InvalidParams(format!(
                "degree {deg} is not below the order {} of gamma",
                field.gamma_order()
            )));
        }
    }
    if polys.is_empty() {
        return Ok(true);
    }
    Ok(!folded_wronskian(field, polys)?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub ranks: Vec<usize>,
    pub d: usize,
    pub deficit_sum: usize,
    /// `d * msg_len / (m - d + 1)`.
    pub bound: Rational,
    /// Positions with `r_i = 0`.
    pub bad_set_size: usize,
}

impl RankProfile {
    pub const CSV_HEADER: &'static str = "N,d,deficit_sum,bound,bad_set_size";

    /// `N, d, deficit_sum, bound, bad_set_size`; the bound is written as
    /// `num/den` (or an integer).
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.ranks.len(),
            self.d,
            self.deficit_sum,
            self.bound,
            self.bad_set_size
        )
    }
}

pub fn deficit_bound(d: usize, msg_len: usize, m: usize) -> Result<Rational> {
    if d > m {
        return Err(Error::InvalidParams(format!(
            "deficit bound needs d <= m, got d = {d}, m = {m}"
        )));
    }
    Ok(Rational::new((d * msg_len) as i64, (m - d + 1) as i64))
}

pub fn rank_profile(h: &AffineSubspace) -> Result<RankProfile> {
    let prof = rank_profile_unchecked(h)?;
    if Rational::from_integer(prof.deficit_sum as i64) > prof.bound {
        return Err(Error::ContractViolation(format!(
            "rank deficit {} exceeds d*msg_len/(m-d+1) = {}",
            prof.deficit_sum, prof.bound
        )));
    }
    Ok(prof)
}

/// The profile without the deficit check.
pub fn rank_profile_unchecked(h: &AffineSubspace) -> Result<RankProfile> {
    let params = h.params();
    let d = h.dim();
    let bound = deficit_bound(d, params.msg_len(), params.m())?;
    let ranks = (0..params.big_n())
        .map(|i| coordinate_matrix(h, i).map(|a| a.rank()))
        .collect::<Result<Vec<_>>>()?;
    let deficit_sum = ranks.iter().map(|&r| d - r).sum::<usize>();
    let bad_set_size = if d == 0 {
        0
    } else {
        ranks.iter().filter(|&&r| r == 0).count()
    };
    Ok(RankProfile {
        ranks,
        d,
        deficit_sum,
        bound,
        bad_set_size,
    })
}
