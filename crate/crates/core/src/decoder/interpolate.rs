//! Interpolation and subspace extraction.
//!
//! We look for a nonzero linear polynomial
//! `Q(X, Y_1..Y_k) = A_0(X) + A_1(X) Y_1 + ... + A_k(X) Y_k` that vanishes
//! on every width-`k` window inside every folded symbol of the received
//! word. With `D = floor((N(m-k+1) - msg_len + 1) / (k+1))`,
//! `deg A_0 <= D + msg_len - 1` and `deg A_s <= D`, the unknowns outnumber
//! the `N(m-k+1)` constraints, so a kernel vector always exists.
//!
//! For a message `f` agreeing with `g` on `t` folded positions, the
//! univariate `A_0(X) + sum_s A_s(X) f(gamma^(s-1) X)` has degree at most
//! `D + msg_len - 1` and vanishes at the `t(m-k+1)` window starts inside
//! those positions, so it is identically zero once
//! `t >= ceil((D + msg_len) / (m-k+1))`. That identity is linear in the
//! coefficients of `f`, and its solution set is the extracted subspace.

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::frs::{FoldedWord, FrsParams};
use crate::linalg::{AffineSolutionSet, Matrix};
use crate::poly::Poly;

use super::subspace::AffineSubspace;

/// The `A_s` components of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationPoly {
    pub a0: Poly,
    pub a: Vec<Poly>,
    /// The degree parameter `D`.
    pub degree: usize,
}

impl InterpolationPoly {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a.iter().all(Poly::is_zero)
    }

    /// `Q(x, ys)`.
    pub fn eval(&self, x: Fe, ys: &[Fe]) -> Fe {
        let f = self.a0.field();
        self.a
            .iter()
            .zip(ys)
            .fold(self.a0.eval(x), |acc, (a, &y)| f.add(acc, f.mul(a.eval(x), y)))
    }

    /// Divides every component by the largest common power of `X`, so that
    /// some component has a nonzero constant term.
    pub fn x_normalized(&self) -> InterpolationPoly {
        let shift = std::iter::once(&self.a0)
            .chain(&self.a)
            .filter(|p| !p.is_zero())
            .map(Poly::x_valuation)
            .min()
            .unwrap_or(0);
        InterpolationPoly {
            a0: self.a0.shift_down(shift),
            a: self.a.iter().map(|p| p.shift_down(shift)).collect(),
            degree: self.degree,
        }
    }

    /// Checks every window constraint against `g`.
    pub fn vanishes_on(&self, params: &FrsParams, g: &FoldedWord) -> bool {
        let k = self.k();
        (0..params.big_n()).all(|i| {
            (0..=params.m() - k).all(|j| {
                let ys = &g.symbol(i)[j..j + k];
                self.eval(params.point(i, j), ys).is_zero()
            })
        })
    }
}

/// The degree parameter `D`, or an error when it would be negative.
pub fn interpolation_degree(params: &FrsParams, k: usize) -> Result<usize> {
    check_k(params, k)?;
    let windows = (params.big_n() * (params.m() - k + 1)) as i64;
    let numer = windows - params.msg_len() as i64 + 1;
    if numer < 0 {
        return Err(Error::NegativeDegree { k });
    }
    Ok((numer / (k as i64 + 1)) as usize)
}

/// Minimum number of agreeing folded positions that forces a message into
/// the extracted subspace: `ceil((D + msg_len) / (m - k + 1))`.
pub fn guaranteed_agreement(params: &FrsParams, k: usize) -> Result<usize> {
    let d = interpolation_degree(params, k)?;
    Ok((d + params.msg_len()).div_ceil(params.m() - k + 1))
}

pub(crate) fn check_k(params: &FrsParams, k: usize) -> Result<()> {
    if k == 0 || k > params.m() {
        return Err(Error::InvalidParams(format!(
            "k = {k} must lie in [1, m = {}]",
            params.m()
        )));
    }
    Ok(())
}

/// Finds `Q` by taking the first vector of the canonical kernel basis of
/// the constraint system.
pub fn interpolate(params: &FrsParams, k: usize, g: &FoldedWord) -> Result<InterpolationPoly> {
    params.check_word(g)?;
    let d = interpolation_degree(params, k)?;
    let f = *params.field();
    let len0 = d + params.msg_len();
    let cols = len0 + k * (d + 1);

    let mut rows = Vec::with_capacity(params.big_n() * (params.m() - k + 1));
    for i in 0..params.big_n() {
        for j in 0..=params.m() - k {
            let x = params.point(i, j);
            let mut row = Vec::with_capacity(cols);
            let mut xp = Fe::ONE;
            for _ in 0..len0 {
                row.push(xp);
                xp = f.mul(xp, x);
            }
            for s in 0..k {
                let y = g.symbol(i)[j + s];
                let mut xp = Fe::ONE;
                for _ in 0..=d {
                    row.push(f.mul(xp, y));
                    xp = f.mul(xp, x);
                }
            }
            rows.push(row);
        }
    }
    let system = Matrix::from_rows(f, cols, &rows);
    let kernel = system.nullspace();
    let v = kernel
        .first()
        .ok_or_else(|| Error::ContractViolation("interpolation system has trivial kernel".into()))?;

    let a0 = Poly::new(f, v[..len0].to_vec());
    let a = (0..k)
        .map(|s| {
            let start = len0 + s * (d + 1);
            Poly::new(f, v[start..start + d + 1].to_vec())
        })
        .collect();
    Ok(InterpolationPoly { a0, a, degree: d })
}

/// Solves `A_0(X) + sum_s A_s(X) f(gamma^(s-1) X) == 0` for `f`.
///
/// Returns `None` when no message satisfies the identity. After
/// X-normalization the coefficient of `f_l` in the `X^l` equation is
/// `B(gamma^l)` with `B(Y) = sum_s A_s(0) Y^(s-1)`; `B` is nonzero of degree
/// at most `k-1` whenever the system is consistent, so at most `k-1`
/// coefficients of `f` are free.
pub fn extract_subspace(
    q: &InterpolationPoly,
    params: &FrsParams,
) -> Result<Option<AffineSubspace>> {
    if q.is_zero() {
        return Err(Error::InvalidParams("interpolation polynomial is zero".into()));
    }
    let k = q.k();
    let q = q.x_normalized();
    let f = *params.field();
    let msg_len = params.msg_len();
    let rows = (q.degree + msg_len).max(q.a0.len()).max(
        q.a.iter().map(|a| a.len() + msg_len - 1).max().unwrap_or(0),
    );

    let mut m = Matrix::zeros(f, rows, msg_len);
    for l in 0..msg_len {
        // X^l * sum_s gamma^((s-1) l) A_s(X)
        let step = f.gamma_pow(l as u64);
        let mut scale = Fe::ONE;
        let mut column = Poly::zero(f);
        for a in &q.a {
            column = column.add(&a.scalar_mul(scale))?;
            scale = f.mul(scale, step);
        }
        for (r, &c) in column.coeffs().iter().enumerate() {
            m.set(r + l, l, c);
        }
    }
    let rhs = q.a0.neg().padded(rows);

    match m.solve_affine(&rhs) {
        AffineSolutionSet::Inconsistent => Ok(None),
        AffineSolutionSet::Solutions { particular, basis } => {
            if basis.len() + 1 > k {
                return Err(Error::ContractViolation(format!(
                    "extracted subspace has dimension {} > k - 1 = {}",
                    basis.len(),
                    k - 1
                )));
            }
            let offset = Poly::new(f, particular);
            let basis = basis.into_iter().map(|v| Poly::new(f, v)).collect();
            AffineSubspace::new(params, offset, basis).map(Some)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frs::corrupt;

    fn canonical() -> FrsParams {
        FrsParams::canonical()
    }

    #[test]
    fn degree_formula_on_canonical_instance() {
        let p = canonical();
        // floor((4*2 - 2 + 1) / 3) = 2; unknowns (2+2) + 2*3 = 10 > 8 constraints
        assert_eq!(interpolation_degree(&p, 2).unwrap(), 2);
        assert_eq!(interpolation_degree(&p, 1).unwrap(), 5);
        assert_eq!(guaranteed_agreement(&p, 2).unwrap(), 2);
        assert!(interpolation_degree(&p, 4).is_err());
        assert!(interpolation_degree(&p, 0).is_err());
    }

    #[test]
    fn negative_degree_is_rejected() {
        let f = crate::field::PrimeField::with_gamma(13, 2).unwrap();
        let p = FrsParams::new(f, 3, 6, 6).unwrap();
        // N(m-k+1) = 2 < msg_len - 1 = 5
        assert_eq!(interpolation_degree(&p, 3), Err(Error::NegativeDegree { k: 3 }));
    }

    #[test]
    fn noiseless_interpolation_vanishes_and_extracts_message() {
        let p = canonical();
        let f = *p.field();
        for (a, b) in [(0, 0), (3, 1), (12, 7)] {
            let msg = Poly::from_u64s(f, &[a, b]);
            let g = p.encode(&msg).unwrap();
            for k in 1..=3 {
                let q = interpolate(&p, k, &g).unwrap();
                assert!(!q.is_zero());
                assert!(q.vanishes_on(&p, &g));
                let h = extract_subspace(&q, &p).unwrap().expect("consistent");
                assert!(h.dim() < k);
                assert!(h.contains(&msg));
            }
        }
    }

    #[test]
    fn zero_word_admits_a0_zero() {
        let p = canonical();
        let g = FoldedWord::zeros(4, 3);
        let q = interpolate(&p, 2, &g).unwrap();
        for i in 0..4 {
            for j in 0..2 {
                assert!(q.a0.eval(p.point(i, j)).is_zero());
            }
        }
    }

    #[test]
    fn extraction_of_hand_built_q() {
        let p = canonical();
        let f = *p.field();
        let msg = Poly::from_u64s(f, &[5, 9]);
        let a1 = Poly::from_u64s(f, &[1, 2, 3]);
        let q = InterpolationPoly {
            a0: msg.mul(&a1).unwrap().neg(),
            a: vec![a1],
            degree: 2,
        };
        let h = extract_subspace(&q, &p).unwrap().unwrap();
        assert_eq!(h.dim(), 0);
        assert_eq!(h.offset(), &msg);

        let q = InterpolationPoly {
            a0: Poly::zero(f),
            a: vec![Poly::constant(f, Fe::ONE), Poly::zero(f)],
            degree: 2,
        };
        let h = extract_subspace(&q, &p).unwrap().unwrap();
        assert_eq!(h.dim(), 0);
        assert!(h.offset().is_zero());
    }

    #[test]
    fn extraction_handles_common_x_power_and_inconsistency() {
        let p = canonical();
        let f = *p.field();
        let msg = Poly::from_u64s(f, &[2, 3]);
        let a1 = Poly::from_u64s(f, &[0, 0, 4]);
        let q = InterpolationPoly {
            a0: msg.mul(&a1).unwrap().neg(),
            a: vec![a1],
            degree: 2,
        };
        let h = extract_subspace(&q, &p).unwrap().unwrap();
        assert_eq!(h.offset(), &msg);

        // A_0 = 1 alone: 1 == 0 has no solution
        let q = InterpolationPoly {
            a0: Poly::constant(f, Fe::ONE),
            a: vec![Poly::zero(f)],
            degree: 0,
        };
        assert_eq!(extract_subspace(&q, &p).unwrap(), None);
    }

    #[test]
    fn corrupted_words_keep_close_messages() {
        let p = canonical();
        let f = *p.field();
        let msg = Poly::from_u64s(f, &[7, 11]);
        let w = p.encode(&msg).unwrap();
        for seed in 0..100 {
            let g = corrupt(&f, &w, 2, seed).unwrap();
            let q = interpolate(&p, 2, &g).unwrap();
            assert!(q.vanishes_on(&p, &g));
            // message agrees on 2 = guaranteed_agreement positions
            let h = extract_subspace(&q, &p).unwrap().unwrap();
            assert!(h.dim() <= 1);
            assert!(h.contains(&msg), "seed {seed}");
        }
    }
}
