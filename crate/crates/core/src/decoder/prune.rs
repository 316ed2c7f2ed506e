//! Recovering the actual list from an affine subspace that contains it.
//!
//! Three strategies, all required to return the same sorted list:
//! exhaustive enumeration, the frequency vote for lines, and recursive
//! coordinate pinning.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::frs::FoldedWord;
use crate::linalg::{AffineSolutionSet, Matrix};
use crate::poly::Poly;
use crate::Rational;

use super::subspace::{AffineSubspace, Coordinates};

pub const DEFAULT_PRUNE_LIMIT: u64 = 1_000_000;

/// Smallest number of agreeing folded positions `t` with
/// `(big_n - t) / big_n < radius`, clamped at 0. Values above `big_n` mean
/// nothing qualifies.
pub fn agreement_threshold(big_n: usize, radius: Rational) -> i64 {
    // t > big_n * (1 - radius)
    let bound = Rational::from_integer(big_n as i64) * (Rational::from_integer(1) - radius);
    (bound.floor().to_integer() + 1).max(0)
}

fn check_limit(h: &AffineSubspace, limit: u64) -> Result<()> {
    let needed = h.size();
    if needed > limit as u128 {
        return Err(Error::LimitExceeded { needed, limit });
    }
    Ok(())
}

/// Pruned list plus the number of candidate points whose distance was
/// actually computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    pub list: Vec<Poly>,
    pub examined: u64,
}

/// Every point of `h` within `radius` of `g`, by enumerating all `q^d`.
pub fn prune_exhaustive(
    h: &AffineSubspace,
    g: &FoldedWord,
    radius: Rational,
    limit: u64,
) -> Result<Vec<Poly>> {
    prune_exhaustive_counted(h, g, radius, limit).map(|p| p.list)
}

pub fn prune_exhaustive_counted(
    h: &AffineSubspace,
    g: &FoldedWord,
    radius: Rational,
    limit: u64,
) -> Result<Pruned> {
    h.params().check_word(g)?;
    exhaustive_at_threshold(h, g, agreement_threshold(h.params().big_n(), radius), limit)
}

fn exhaustive_at_threshold(h: &AffineSubspace, g: &FoldedWord, t: i64, limit: u64) -> Result<Pruned> {
    check_limit(h, limit)?;
    let params = h.params();
    let evals = h.evaluations();
    let mut list = Vec::new();
    let mut examined = 0;
    for alpha in Coordinates::new(*params.field(), h.dim()) {
        examined += 1;
        if evals.agreement(params, &alpha, g) as i64 >= t {
            list.push(h.at(&alpha));
        }
    }
    list.sort();
    list.dedup();
    Ok(Pruned { list, examined })
}

/// Line pruning by voting: each folded position nominates the unique
/// `alpha` (if any) for which `f_0 + alpha h_1` matches `g` there.
pub fn prune_dim1_frequency(h: &AffineSubspace, g: &FoldedWord, radius: Rational) -> Result<Vec<Poly>> {
    prune_dim1_frequency_counted(h, g, radius).map(|p| p.list)
}

pub fn prune_dim1_frequency_counted(
    h: &AffineSubspace,
    g: &FoldedWord,
    radius: Rational,
) -> Result<Pruned> {
    if h.dim() != 1 {
        return Err(Error::InvalidParams(format!(
            "frequency pruning needs a line, got dimension {}",
            h.dim()
        )));
    }
    let params = h.params();
    params.check_word(g)?;
    let f = *params.field();
    let evals = h.evaluations();
    let dir = &evals.basis[0];

    // positions where h_1 vanishes on the whole symbol and g matches f_0:
    // every point of the line agrees there
    let mut common = 0i64;
    let mut votes: HashMap<Fe, i64> = HashMap::new();
    for i in 0..params.big_n() {
        match position_vote(&f, evals.offset.symbol(i), dir.symbol(i), g.symbol(i)) {
            Vote::All => common += 1,
            Vote::One(alpha) => *votes.entry(alpha).or_default() += 1,
            Vote::None => {}
        }
    }

    let t = agreement_threshold(params.big_n(), radius);
    let candidates: Vec<Fe> = if common >= t {
        f.elements().collect()
    } else {
        let mut c: Vec<Fe> = votes
            .into_iter()
            .filter(|&(_, n)| n + common >= t)
            .map(|(a, _)| a)
            .collect();
        c.sort();
        c
    };

    let mut list = Vec::new();
    for &alpha in &candidates {
        if evals.agreement(params, &[alpha], g) as i64 >= t {
            list.push(h.at(&[alpha]));
        }
    }
    list.sort();
    list.dedup();
    Ok(Pruned {
        list,
        examined: candidates.len() as u64,
    })
}

enum Vote {
    /// Every alpha agrees here.
    All,
    One(Fe),
    None,
}

fn position_vote(f: &crate::field::PrimeField, base: &[Fe], dir: &[Fe], g: &[Fe]) -> Vote {
    let mut alpha: Option<Fe> = None;
    for ((&b, &d), &y) in base.iter().zip(dir).zip(g) {
        let diff = f.sub(y, b);
        if d.is_zero() {
            if !diff.is_zero() {
                return Vote::None;
            }
            continue;
        }
        let a = f.div(diff, d).expect("nonzero divisor");
        match alpha {
            Some(prev) if prev != a => return Vote::None,
            _ => alpha = Some(a),
        }
    }
    match alpha {
        Some(a) => Vote::One(a),
        None => Vote::All,
    }
}

/// The `m x d` matrix of basis evaluations at folded position `pos`
/// together with the right-hand side `g - h_0` there.
pub(crate) fn pin_system(
    h: &AffineSubspace,
    evals: &super::subspace::SubspaceEvals,
    g: &FoldedWord,
    pos: usize,
) -> (Matrix, Vec<Fe>) {
    let params = h.params();
    let f = *params.field();
    let m = params.m();
    let mut a = Matrix::zeros(f, m, h.dim());
    for (s, b) in evals.basis.iter().enumerate() {
        for j in 0..m {
            a.set(j, s, b.symbol(pos)[j]);
        }
    }
    let rhs = (0..m)
        .map(|j| f.sub(g.symbol(pos)[j], evals.offset.symbol(pos)[j]))
        .collect();
    (a, rhs)
}

/// Recursive coordinate pinning.
///
/// A position `i` whose matrix `A_i` has rank `r_i >= 1` cuts the subspace
/// to dimension `d - r_i` once agreement at `i` is imposed. Positions with
/// `r_i = 0` are agreements for every point or for none, so they only
/// shift the threshold. If that shift alone meets the threshold the whole
/// subspace qualifies and is enumerated; otherwise every list member agrees
/// at some position with `r_i >= 1` and pinning each such position covers
/// the list.
pub fn prune_pinning(
    h: &AffineSubspace,
    g: &FoldedWord,
    radius: Rational,
    limit: u64,
) -> Result<Vec<Poly>> {
    prune_pinning_counted(h, g, radius, limit).map(|p| p.list)
}

pub fn prune_pinning_counted(
    h: &AffineSubspace,
    g: &FoldedWord,
    radius: Rational,
    limit: u64,
) -> Result<Pruned> {
    h.params().check_word(g)?;
    let t = agreement_threshold(h.params().big_n(), radius);
    let mut found = BTreeSet::new();
    let mut examined = 0;
    pin(h, g, t, limit, &mut found, &mut examined)?;
    Ok(Pruned {
        list: found.into_iter().collect(),
        examined,
    })
}

fn pin(
    h: &AffineSubspace,
    g: &FoldedWord,
    t: i64,
    limit: u64,
    found: &mut BTreeSet<Poly>,
    examined: &mut u64,
) -> Result<()> {
    let params = h.params();
    let evals = h.evaluations();
    if h.dim() == 0 {
        *examined += 1;
        if evals.agreement(params, &[], g) as i64 >= t {
            found.insert(h.offset().clone());
        }
        return Ok(());
    }

    let mut common = 0i64;
    let mut systems = Vec::new();
    for pos in 0..params.big_n() {
        let (a, rhs) = pin_system(h, &evals, g, pos);
        if a.rank() == 0 {
            if rhs.iter().all(|v| v.is_zero()) {
                common += 1;
            }
        } else {
            systems.push((a, rhs));
        }
    }

    if common >= t {
        let all = exhaustive_at_threshold(h, g, t, limit)?;
        *examined += all.examined;
        found.extend(all.list);
        return Ok(());
    }
    for (a, rhs) in systems {
        if let AffineSolutionSet::Solutions { particular, basis } = a.solve_affine(&rhs) {
            pin(&h.restrict(&particular, &basis), g, t, limit, found, examined)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frs::FrsParams;

    fn canonical() -> FrsParams {
        FrsParams::canonical()
    }

    #[test]
    fn threshold_arithmetic() {
        assert_eq!(agreement_threshold(4, Rational::new(1, 2)), 3);
        assert_eq!(agreement_threshold(4, Rational::new(5, 12)), 3);
        assert_eq!(agreement_threshold(4, Rational::new(2, 3)), 2);
        assert_eq!(agreement_threshold(4, Rational::from_integer(0)), 5);
        assert_eq!(agreement_threshold(4, Rational::new(1, 4)), 4);
        assert_eq!(agreement_threshold(4, Rational::new(3, 2)), 0);
    }

    #[test]
    fn single_point_subspace() {
        let p = canonical();
        let f = *p.field();
        let msg = Poly::from_u64s(f, &[1, 2]);
        let h = AffineSubspace::point(&p, msg.clone()).unwrap();
        let g = p.encode(&msg).unwrap();
        let r = Rational::new(1, 10);
        assert_eq!(prune_exhaustive(&h, &g, r, 10).unwrap(), vec![msg.clone()]);
        assert_eq!(prune_pinning(&h, &g, r, 10).unwrap(), vec![msg]);
        let far = FoldedWord::zeros(4, 3);
        assert!(prune_exhaustive(&h, &far, r, 10).unwrap().is_empty());
    }

    #[test]
    fn exhaustive_respects_limit() {
        let p = canonical();
        let f = *p.field();
        let h = AffineSubspace::new(
            &p,
            Poly::zero(f),
            vec![Poly::from_u64s(f, &[1]), Poly::from_u64s(f, &[0, 1])],
        )
        .unwrap();
        let g = FoldedWord::zeros(4, 3);
        assert_eq!(
            prune_exhaustive(&h, &g, Rational::new(1, 2), 100),
            Err(Error::LimitExceeded { needed: 169, limit: 100 })
        );
    }

    #[test]
    fn frequency_unanimous_vote() {
        let p = canonical();
        let f = *p.field();
        let f0 = Poly::from_u64s(f, &[4, 1]);
        let h1 = Poly::from_u64s(f, &[1, 5]);
        let h = AffineSubspace::new(&p, f0.clone(), vec![h1.clone()]).unwrap();
        let target = f0.add(&h1.scalar_mul(f.elem(3))).unwrap();
        let g = p.encode(&target).unwrap();
        let out = prune_dim1_frequency_counted(&h, &g, Rational::new(1, 2)).unwrap();
        assert_eq!(out.list, vec![target]);
        assert_eq!(out.examined, 1);
    }

    #[test]
    fn frequency_rejects_non_lines() {
        let p = canonical();
        let h = AffineSubspace::point(&p, Poly::zero(*p.field())).unwrap();
        let g = FoldedWord::zeros(4, 3);
        assert!(prune_dim1_frequency(&h, &g, Rational::new(1, 2)).is_err());
    }

    #[test]
    fn two_line_points_at_distance_half() {
        let p = canonical();
        let f = *p.field();
        let f0 = Poly::from_u64s(f, &[2, 7]);
        let h1 = Poly::from_u64s(f, &[1, 1]);
        let h = AffineSubspace::new(&p, f0.clone(), vec![h1.clone()]).unwrap();
        let t1 = h.at(&[f.elem(3)]);
        let t2 = h.at(&[f.elem(9)]);
        let (w1, w2) = (p.encode(&t1).unwrap(), p.encode(&t2).unwrap());
        let mut g = w1.clone();
        for i in 2..4 {
            g.symbol_mut(i).copy_from_slice(w2.symbol(i));
        }
        assert_eq!(g.distance(&w1).unwrap(), Rational::new(1, 2));
        assert_eq!(g.distance(&w2).unwrap(), Rational::new(1, 2));
        // strictly inside 2/3 both qualify; at the strict radius 1/2 neither does
        let wide = Rational::new(2, 3);
        let mut both = vec![t1, t2];
        both.sort();
        assert_eq!(prune_dim1_frequency(&h, &g, wide).unwrap(), both);
        assert_eq!(prune_exhaustive(&h, &g, wide, 1000).unwrap(), both);
        assert_eq!(prune_pinning(&h, &g, wide, 1000).unwrap(), both);
        assert!(prune_dim1_frequency(&h, &g, Rational::new(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn pinning_recovers_noiseless_message() {
        let f = crate::field::PrimeField::with_gamma(13, 2).unwrap();
        let p = FrsParams::new(f, 3, 12, 4).unwrap();
        let basis = vec![
            Poly::from_u64s(f, &[1, 0, 3]),
            Poly::from_u64s(f, &[0, 1, 0, 1]),
            Poly::from_u64s(f, &[5, 5]),
        ];
        let h = AffineSubspace::new(&p, Poly::from_u64s(f, &[9]), basis).unwrap();
        let msg = h.at(&[f.elem(1), f.elem(2), f.elem(3)]);
        let g = p.encode(&msg).unwrap();
        let out = prune_pinning(&h, &g, Rational::new(1, 4), 10).unwrap();
        assert_eq!(out, vec![msg]);
    }
}
