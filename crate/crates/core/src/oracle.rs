//! Brute-force ground truth.
//!
//! Everything here re-encodes each candidate from scratch with
//! [`FrsParams::encode`] and measures distance directly, so it shares no
//! evaluation shortcuts with the decoder's pruning code.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decoder::{AffineSubspace, Coordinates};
use crate::error::{Error, Result};
use crate::frs::{FoldedWord, FrsParams};
use crate::poly::Poly;
use crate::Rational;

pub const DEFAULT_ORACLE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleList {
    /// Sorted.
    pub members: Vec<Poly>,
    pub radius: Rational,
    pub center: FoldedWord,
}

impl OracleList {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn checked_count(q: u64, dim: usize, limit: u64) -> Result<()> {
    let needed = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if needed > limit as u128 {
        return Err(Error::LimitExceeded { needed, limit });
    }
    Ok(())
}

/// All `q^msg_len` message polynomials in lexicographic coefficient order.
pub fn all_messages(params: &FrsParams, limit: u64) -> Result<impl Iterator<Item = Poly> + '_> {
    checked_count(params.field().modulus(), params.msg_len(), limit)?;
    let f = *params.field();
    Ok(Coordinates::new(f, params.msg_len()).map(move |c| Poly::new(f, c)))
}

/// `{f : deg f < msg_len, dist(encode(f), g) < radius}` by full scan.
pub fn brute_force_list(
    params: &FrsParams,
    g: &FoldedWord,
    radius: Rational,
    limit: u64,
) -> Result<OracleList> {
    params.check_word(g)?;
    let mut members = Vec::new();
    for f in all_messages(params, limit)? {
        if params.encode(&f)?.distance(g)? < radius {
            members.push(f);
        }
    }
    members.sort();
    Ok(OracleList {
        members,
        radius,
        center: g.clone(),
    })
}

/// Points of `h` strictly within `radius` of `g`, by enumerating all `q^d`.
pub fn subspace_ball_intersection(
    h: &AffineSubspace,
    g: &FoldedWord,
    radius: Rational,
    limit: u64,
) -> Result<OracleList> {
    let params = h.params();
    params.check_word(g)?;
    checked_count(params.field().modulus(), h.dim(), limit)?;
    let mut members = Vec::new();
    for alpha in Coordinates::new(*params.field(), h.dim()) {
        let p = h.at(&alpha);
        if params.encode(&p)?.distance(g)? < radius {
            members.push(p);
        }
    }
    members.sort();
    members.dedup();
    Ok(OracleList {
        members,
        radius,
        center: g.clone(),
    })
}

/// Minimum folded distance of the code, from the minimum weight of a
/// nonzero codeword.
pub fn code_distance(params: &FrsParams, limit: u64) -> Result<Rational> {
    let zero = FoldedWord::zeros(params.big_n(), params.m());
    let mut best = Rational::from_integer(1);
    for f in all_messages(params, limit)?.skip(1) {
        best = best.min(params.encode(&f)?.distance(&zero)?);
    }
    Ok(best)
}

/// A received word that copies each target's symbols on a near-equal share
/// of folded positions. Positions are shuffled by `seed` and dealt to the
/// targets round-robin.
pub fn adversarial_center(h: &AffineSubspace, targets: &[Poly], seed: u64) -> Result<FoldedWord> {
    let params = h.params();
    if targets.is_empty() {
        return Err(Error::InvalidParams("no targets".into()));
    }
    if targets.len() > params.big_n() {
        return Err(Error::InvalidParams(format!(
            "{} targets but only {} positions",
            targets.len(),
            params.big_n()
        )));
    }
    if let Some(t) = targets.iter().find(|t| !h.contains(t)) {
        return Err(Error::InvalidParams(format!("target {t} is not in the subspace")));
    }
    let words = targets
        .iter()
        .map(|t| params.encode(t))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..params.big_n()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut g = FoldedWord::zeros(params.big_n(), params.m());
    for (slot, &pos) in order.iter().enumerate() {
        let w = &words[slot % words.len()];
        g.symbol_mut(pos).copy_from_slice(w.symbol(pos));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn strict_radius_and_injectivity() {
        let p = FrsParams::canonical();
        let f = *p.field();
        let msg = Poly::from_u64s(f, &[8, 5]);
        let g = p.encode(&msg).unwrap();
        assert!(brute_force_list(&p, &g, Rational::from_integer(0), DEFAULT_ORACLE_LIMIT)
            .unwrap()
            .is_empty());
        let l = brute_force_list(&p, &g, Rational::new(1, 4), DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(l.members, vec![msg]);
    }

    #[test]
    fn limits_are_enforced() {
        let p = FrsParams::canonical();
        let g = FoldedWord::zeros(4, 3);
        assert_eq!(
            brute_force_list(&p, &g, Rational::new(1, 2), 100),
            Err(Error::LimitExceeded { needed: 169, limit: 100 })
        );
    }

    #[test]
    fn code_distance_matches_formula() {
        let f = PrimeField::with_gamma(13, 2).unwrap();
        for (m, n, k) in [(3, 12, 2), (1, 12, 4), (2, 12, 5), (3, 12, 4)] {
            let p = FrsParams::new(f, m, n, k).unwrap();
            assert_eq!(code_distance(&p, DEFAULT_ORACLE_LIMIT).unwrap(), p.distance());
        }
    }

    #[test]
    fn single_point_intersection() {
        let p = FrsParams::canonical();
        let f = *p.field();
        let msg = Poly::from_u64s(f, &[1, 1]);
        let h = AffineSubspace::point(&p, msg.clone()).unwrap();
        let g = p.encode(&msg).unwrap();
        let l = subspace_ball_intersection(&h, &g, Rational::new(1, 2), 10).unwrap();
        assert_eq!(l.members, vec![msg]);
    }

    #[test]
    fn adversarial_examples() {
        let p = FrsParams::canonical();
        let f = *p.field();
        let a = Poly::from_u64s(f, &[3, 4]);
        let b = Poly::from_u64s(f, &[0, 9]);
        let line = AffineSubspace::through(&p, &[a.clone(), b.clone()]).unwrap();

        let g = adversarial_center(&line, std::slice::from_ref(&a), 1).unwrap();
        assert_eq!(g, p.encode(&a).unwrap());

        let g = adversarial_center(&line, &[a.clone(), b.clone()], 5).unwrap();
        assert_eq!(p.encode(&a).unwrap().distance(&g).unwrap(), Rational::new(1, 2));
        assert_eq!(p.encode(&b).unwrap().distance(&g).unwrap(), Rational::new(1, 2));

        let outside = Poly::from_u64s(f, &[1, 0]);
        let point = AffineSubspace::point(&p, a.clone()).unwrap();
        assert!(adversarial_center(&point, &[outside], 0).is_err());
        let many: Vec<Poly> = (0..5).map(|i| line.at(&[f.elem(i)])).collect();
        assert!(adversarial_center(&line, &many, 0).is_err());
    }

    #[test]
    fn pigeonhole_on_k_plus_one_targets() {
        // k + 1 targets on a line: someone lands outside radius k/(k+1) * delta
        let p = FrsParams::canonical();
        let f = *p.field();
        let delta = code_distance(&p, DEFAULT_ORACLE_LIMIT).unwrap();
        let line = AffineSubspace::new(
            &p,
            Poly::from_u64s(f, &[2, 3]),
            vec![Poly::from_u64s(f, &[1, 4])],
        )
        .unwrap();
        for k in 1..=3usize {
            let targets: Vec<Poly> = (0..=k as u64).map(|i| line.at(&[f.elem(i)])).collect();
            for seed in 0..20 {
                let g = adversarial_center(&line, &targets, seed).unwrap();
                let radius = delta * Rational::new(k as i64, k as i64 + 1);
                let outside = targets
                    .iter()
                    .filter(|t| p.encode(t).unwrap().distance(&g).unwrap() >= radius)
                    .count();
                assert!(outside >= 1);
            }
        }
    }
}
