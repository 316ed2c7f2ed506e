use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::frs::{FoldedWord, FrsParams};
use crate::linalg::{AffineSolutionSet, Matrix};
use crate::poly::Poly;

/// `{offset + sum(alpha_j * basis_j)}` inside the message space of a code.
///
/// The basis is always linearly independent and every polynomial has fewer
/// than `msg_len` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    params: FrsParams,
    offset: Poly,
    basis: Vec<Poly>,
}

impl AffineSubspace {
    pub fn new(params: &FrsParams, offset: Poly, basis: Vec<Poly>) -> Result<Self> {
        params.check_message(&offset)?;
        for b in &basis {
            params.check_message(b)?;
        }
        if coefficient_rank(params, &basis) != basis.len() {
            return Err(Error::InvalidParams(
                "subspace basis is linearly dependent".into(),
            ));
        }
        Ok(AffineSubspace {
            params: params.clone(),
            offset,
            basis,
        })
    }

    /// The single point `{p}`.
    pub fn point(params: &FrsParams, p: Poly) -> Result<Self> {
        Self::new(params, p, Vec::new())
    }

    /// Smallest affine subspace containing all of `points`.
    pub fn through(params: &FrsParams, points: &[Poly]) -> Result<Self> {
        let Some((first, rest)) = points.split_first() else {
            return Err(Error::InvalidParams("no points given".into()));
        };
        let mut basis: Vec<Poly> = Vec::new();
        for p in rest {
            let dir = p.sub(first)?;
            let mut trial = basis.clone();
            trial.push(dir);
            if coefficient_rank(params, &trial) == trial.len() {
                basis = trial;
            }
        }
        Self::new(params, first.clone(), basis)
    }

    #[inline]
    pub fn params(&self) -> &FrsParams {
        &self.params
    }

    #[inline]
    pub fn offset(&self) -> &Poly {
        &self.offset
    }

    #[inline]
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of points, `q^d`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.params.field().modulus() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    /// The point with coordinates `alpha`.
    pub fn at(&self, alpha: &[Fe]) -> Poly {
        Poly::affine_combination(&self.offset, alpha, &self.basis).expect("same field")
    }

    /// Coordinates of `p` in this subspace, if it lies in it.
    pub fn coordinates(&self, p: &Poly) -> Option<Vec<Fe>> {
        if self.params.check_message(p).is_err() {
            return None;
        }
        let len = self.params.msg_len();
        let f = *self.params.field();
        let target = p.sub(&self.offset).ok()?.padded(len);
        let cols: Vec<Vec<Fe>> = self.basis.iter().map(|b| b.padded(len)).collect();
        let rows: Vec<Vec<Fe>> = (0..len)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let m = Matrix::from_rows(f, self.dim(), &rows);
        match m.solve_affine(&target) {
            AffineSolutionSet::Solutions { particular, .. } => Some(particular),
            AffineSolutionSet::Inconsistent => None,
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.coordinates(p).is_some()
    }

    /// Sub-subspace `{offset + sum(alpha_j basis_j) : alpha in sol}` for a
    /// solution set expressed in this subspace's coordinates.
    pub(crate) fn restrict(&self, particular: &[Fe], kernel: &[Vec<Fe>]) -> AffineSubspace {
        let offset = self.at(particular);
        let zero = Poly::zero(*self.params.field());
        let basis = kernel
            .iter()
            .map(|v| Poly::affine_combination(&zero, v, &self.basis).expect("same field"))
            .collect();
        AffineSubspace {
            params: self.params.clone(),
            offset,
            basis,
        }
    }

    /// Evaluation table of offset and basis on all `n` points.
    pub(crate) fn evaluations(&self) -> SubspaceEvals {
        let p = &self.params;
        SubspaceEvals {
            offset: p.encode_unchecked(&self.offset),
            basis: self.basis.iter().map(|b| p.encode_unchecked(b)).collect(),
        }
    }
}

/// Codeword images of the offset and each basis polynomial. The encoding
/// is linear, so any subspace point's codeword is the matching combination.
pub(crate) struct SubspaceEvals {
    pub offset: FoldedWord,
    pub basis: Vec<FoldedWord>,
}

impl SubspaceEvals {
    /// Number of positions where the point with coordinates `alpha` agrees
    /// with `g`.
    pub fn agreement(&self, params: &FrsParams, alpha: &[Fe], g: &FoldedWord) -> usize {
        let f = params.field();
        (0..g.num_symbols())
            .filter(|&i| {
                (0..g.width()).all(|j| {
                    let v = alpha
                        .iter()
                        .zip(&self.basis)
                        .fold(self.offset.symbol(i)[j], |acc, (&a, b)| {
                            f.add(acc, f.mul(a, b.symbol(i)[j]))
                        });
                    v == g.symbol(i)[j]
                })
            })
            .count()
    }
}

pub(crate) fn coefficient_rank(params: &FrsParams, polys: &[Poly]) -> usize {
    let rows: Vec<Vec<Fe>> = polys.iter().map(|p| p.padded(params.msg_len())).collect();
    Matrix::from_rows(*params.field(), params.msg_len(), &rows).rank()
}

/// Iterates all coordinate vectors of `F_q^d` in lexicographic order.
pub(crate) struct Coordinates {
    field: PrimeField,
    current: Option<Vec<u64>>,
}

impl Coordinates {
    pub fn new(field: PrimeField, d: usize) -> Self {
        Coordinates {
            field,
            current: Some(vec![0; d]),
        }
    }
}

impl Iterator for Coordinates {
    type Item = Vec<Fe>;

    fn next(&mut self) -> Option<Vec<Fe>> {
        let cur = self.current.as_mut()?;
        let out = cur.iter().map(|&v| self.field.elem(v)).collect();
        // odometer increment, last coordinate fastest
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.field.modulus() {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}
