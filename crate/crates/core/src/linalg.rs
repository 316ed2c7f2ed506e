//! Exact linear algebra over a prime field.
//!
//! Everything is built on one Gauss-Jordan pass ([`Matrix::rref`]) with
//! first-nonzero pivoting. Kernel bases follow the reduced echelon
//! convention: one vector per free column, with a 1 in that column and 0 in
//! every other free column. Outputs are therefore canonical and can be
//! compared bit for bit.

use crate::field::{Fe, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<Fe>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend_from_slice(r);
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_u64_rows(field: PrimeField, rows: &[&[u64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.elem(v)).collect())
            .collect();
        Self::from_rows(field, cols, &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `M x`.
    pub fn mul_vec(&self, x: &[Fe]) -> Vec<Fe> {
        assert_eq!(x.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Only the first `elim_cols` columns are used for pivoting, so an
    /// augmented right-hand side can ride along in the trailing columns.
    fn reduce(&mut self, elim_cols: usize) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..elim_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                let factor = self.get(r, col);
                if r == row || factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce(self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{x : M x = 0}`; empty when the kernel is trivial.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Full solution set of `M x = b`.
    pub fn solve_affine(&self, b: &[Fe]) -> AffineSolutionSet {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.reduce(self.cols);
        // a zero row with nonzero rhs
        if (pivots.len()..self.rows).any(|r| !aug.get(r, self.cols).is_zero()) {
            return AffineSolutionSet::Inconsistent;
        }
        let mut particular = vec![Fe::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            particular[pc] = aug.get(r, self.cols);
        }
        assert_eq!(self.mul_vec(&particular), b, "re-substitution failed");
        let basis = kernel_from_rref(&aug, &pivots, self.cols);
        AffineSolutionSet::Solutions { particular, basis }
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Fe>> {
    let f = r.field;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; cols];
            v[free] = Fe::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            v
        })
        .collect()
}

/// Solution set of a linear system: one particular solution plus a kernel
/// basis, or the marker that no solution exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolutionSet {
    Inconsistent,
    Solutions {
        particular: Vec<Fe>,
        basis: Vec<Vec<Fe>>,
    },
}

impl AffineSolutionSet {
    /// Dimension of the solution set, `None` when inconsistent.
    pub fn dim(&self) -> Option<usize> {
        match self {
            AffineSolutionSet::Inconsistent => None,
            AffineSolutionSet::Solutions { basis, .. } => Some(basis.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn gf13() -> PrimeField {
        PrimeField::new(13, 1).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf13();
        assert_eq!(Matrix::identity(f, 3).rank(), 3);
        assert_eq!(Matrix::zeros(f, 4, 2).rank(), 0);
        assert_eq!(Matrix::from_u64_rows(f, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let f = gf13();
        let s = Matrix::identity(f, 2).solve_affine(&[f.elem(3), f.elem(5)]);
        assert_eq!(
            s,
            AffineSolutionSet::Solutions {
                particular: vec![f.elem(3), f.elem(5)],
                basis: vec![]
            }
        );

        let s = Matrix::zeros(f, 2, 2).solve_affine(&[Fe::ZERO, Fe::ZERO]);
        assert_eq!(
            s,
            AffineSolutionSet::Solutions {
                particular: vec![Fe::ZERO, Fe::ZERO],
                basis: vec![vec![Fe::ONE, Fe::ZERO], vec![Fe::ZERO, Fe::ONE]]
            }
        );

        let m = Matrix::from_u64_rows(f, &[&[1, 1], &[2, 2]]);
        assert_eq!(
            m.solve_affine(&[f.elem(1), f.elem(3)]),
            AffineSolutionSet::Inconsistent
        );
        assert_eq!(AffineSolutionSet::Inconsistent.dim(), None);
    }

    #[test]
    fn nullspace_examples() {
        let f = gf13();
        assert!(Matrix::identity(f, 4).nullspace().is_empty());
        // x + 2y = 0  =>  (11, 1)
        assert_eq!(
            Matrix::from_u64_rows(f, &[&[1, 2]]).nullspace(),
            vec![vec![f.elem(11), f.elem(1)]]
        );
        assert_eq!(Matrix::zeros(f, 1, 3).nullspace().len(), 3);
    }

    fn random_matrix(rng: &mut impl Rng, f: PrimeField, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols);
        // sparse-ish entries so rank deficiency actually shows up
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.4) {
                    m.set(r, c, f.elem(rng.gen_range(0..f.modulus())));
                }
            }
        }
        m
    }

    #[test]
    fn rank_nullity_and_kernel_checks_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3, 13] {
            let f = PrimeField::new(q, 1).unwrap();
            for _ in 0..300 {
                let (rows, cols) = (rng.gen_range(1..7), rng.gen_range(1..7));
                let m = random_matrix(&mut rng, f, rows, cols);
                let kernel = m.nullspace();
                assert_eq!(m.rank() + kernel.len(), cols);
                for v in &kernel {
                    assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
                }
                if !kernel.is_empty() {
                    assert_eq!(Matrix::from_rows(f, cols, &kernel).rank(), kernel.len());
                }
            }
        }
    }

    #[test]
    fn affine_solutions_resubstitute() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let f = gf13();
        for _ in 0..300 {
            let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let m = random_matrix(&mut rng, f, rows, cols);
            // half the time a consistent rhs from a known x
            let b: Vec<Fe> = if rng.gen_bool(0.5) {
                let x: Vec<Fe> = (0..cols).map(|_| f.elem(rng.gen_range(0..13))).collect();
                m.mul_vec(&x)
            } else {
                (0..rows).map(|_| f.elem(rng.gen_range(0..13))).collect()
            };
            match m.solve_affine(&b) {
                AffineSolutionSet::Inconsistent => {}
                AffineSolutionSet::Solutions { particular, basis } => {
                    assert_eq!(basis.len(), cols - m.rank());
                    let mut x = particular.clone();
                    for v in &basis {
                        let w = f.elem(rng.gen_range(0..13));
                        for (xi, vi) in x.iter_mut().zip(v) {
                            *xi = f.add(*xi, f.mul(w, *vi));
                        }
                    }
                    assert_eq!(m.mul_vec(&x), b);
                }
            }
        }
    }
}
