//! Seeded property suites checking the decoder and the bounds against
//! brute-force ground truth.
//!
//! Each suite takes a trial count and a seed, derives one RNG stream per
//! trial and reports the number of cases checked, the largest quantity it
//! observed and any failures. The `verify` subcommand and the acceptance
//! tests both run these.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::bounds::{self, BoundReport};
use crate::decoder::{
    decode, prune_dim1_frequency, prune_exhaustive, prune_pinning, AffineSubspace, DecodeOptions,
};
use crate::error::Result;
use crate::field::{Fe, PrimeField};
use crate::frs::{corrupt_with, FrsParams};
use crate::linalg::Matrix;
use crate::oracle::{
    adversarial_center, brute_force_list, code_distance, subspace_ball_intersection,
    DEFAULT_ORACLE_LIMIT,
};
use crate::poly::Poly;
use crate::sampling::{
    center_near, mixed_center, random_elem, random_message, random_nonzero, random_poly,
    random_subspace, random_word, trial_rng, vanishing_subspace,
};
use crate::wronskian::{is_independent, rank_profile};
use crate::Rational;

const MAX_REPORTED: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    /// Largest list size, intersection size or deficit seen, per suite.
    pub observed: String,
    pub failures: usize,
    /// The first few failure descriptions.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            cases: 0,
            observed: String::new(),
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_REPORTED {
                self.examples.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<22} cases={} failures={} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures,
            self.observed
        )?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

fn gf13() -> PrimeField {
    PrimeField::with_gamma(13, 2).expect("13 is prime and 2 is primitive")
}

/// `q = 31, gamma = 3, m = 3, n = 30, msg_len = 2`: rate `1/15`, decoding
/// radius `3/5` at `k = 2`, so two codewords at distance `1/2` from a
/// center both fall inside.
pub fn witness_params() -> FrsParams {
    let f = PrimeField::new(31, 30).expect("31 is prime");
    FrsParams::new(f, 3, 30, 2).expect("valid parameters")
}

/// Decoder output equals the brute-force list on the canonical code for
/// `k = 1, 2` at the default radius.
pub fn oracle_equivalence(trials: usize, seed: u64) -> Result<SuiteReport> {
    let p = FrsParams::canonical();
    let mut rep = SuiteReport::new("oracle-equivalence");
    let mut max_list = [0usize; 2];
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let g = mixed_center(&p, i, &mut rng);
        for k in 1..=2 {
            let out = decode(&p, k, &g, &DecodeOptions::default())?;
            let oracle = brute_force_list(&p, &g, out.radius, DEFAULT_ORACLE_LIMIT)?;
            max_list[k - 1] = max_list[k - 1].max(out.list.len());
            rep.check(out.list == oracle.members, || {
                format!("trial {i} k={k}: decoder {:?} oracle {:?}", out.list, oracle.members)
            });
        }
    }
    rep.observed = format!("max_list k=1:{} k=2:{}", max_list[0], max_list[1]);
    Ok(rep)
}

/// List size at `k = 2` on the canonical code stays within `(k-1)^2 + 1`,
/// and an adversarial center on the witness code reaches it.
pub fn list_bound(trials: usize, seed: u64) -> Result<SuiteReport> {
    let p = FrsParams::canonical();
    let bound = bounds::frs_list_bound(2) as usize;
    let mut rep = SuiteReport::new("list-bound");
    let mut max_list = 0;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let g = mixed_center(&p, i, &mut rng);
        let out = decode(&p, 2, &g, &DecodeOptions::default())?;
        max_list = max_list.max(out.list.len());
        rep.check(out.radius == Rational::new(1, 2) && out.list.len() <= bound, || {
            format!("trial {i}: list size {} at radius {}", out.list.len(), out.radius)
        });
    }

    let w = witness_params();
    let mut witness_sizes = Vec::new();
    for j in 0..trials.clamp(1, 20) {
        let mut rng = trial_rng(seed ^ 0x5749_544e, j as u64);
        let (a, b) = loop {
            let a = random_message(&w, &mut rng);
            let b = random_message(&w, &mut rng);
            if a != b {
                break (a, b);
            }
        };
        let line = AffineSubspace::through(&w, &[a.clone(), b.clone()])?;
        let g = adversarial_center(&line, &[a.clone(), b.clone()], rng.gen())?;
        let out = decode(&w, 2, &g, &DecodeOptions::default())?;
        let oracle = brute_force_list(&w, &g, out.radius, DEFAULT_ORACLE_LIMIT)?;
        witness_sizes.push(out.list.len());
        rep.check(
            out.list.len() == bound && out.list == oracle.members && out.list.contains(&a),
            || format!("witness {j}: list {:?}, oracle {:?}", out.list, oracle.members),
        );
    }
    rep.observed = format!(
        "max_list={max_list} bound={bound} witness_max={} (q=31, m=3, n=30, msg_len=2)",
        witness_sizes.iter().max().copied().unwrap_or(0)
    );
    Ok(rep)
}

fn lemma4_codes() -> Vec<FrsParams> {
    let f = gf13();
    vec![
        FrsParams::canonical(),
        FrsParams::new(f, 1, 12, 4).expect("valid parameters"),
    ]
}

/// A random line meets the ball of radius `k/(k+1) * distance` in at most
/// `k` points.
pub fn lemma4_lines(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("line-intersection");
    let codes = lemma4_codes();
    let deltas = codes
        .iter()
        .map(|p| code_distance(p, DEFAULT_ORACLE_LIMIT))
        .collect::<Result<Vec<_>>>()?;
    let mut max_seen = [0usize; 3];
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        for (p, &delta) in codes.iter().zip(&deltas) {
            let line = random_subspace(p, 1, &mut rng);
            for k in 1..=3usize {
                let g = if rng.gen_bool(0.75) {
                    center_near(&line, k + 1, 1, &mut rng)
                } else {
                    random_word(p, &mut rng)
                };
                let radius = delta * Rational::new(k as i64, k as i64 + 1);
                let hits = subspace_ball_intersection(&line, &g, radius, DEFAULT_ORACLE_LIMIT)?;
                max_seen[k - 1] = max_seen[k - 1].max(hits.len());
                rep.check(hits.len() <= k, || {
                    format!("trial {i} k={k}: {} line points inside radius {radius}", hits.len())
                });
            }
        }
    }
    rep.observed = format!("max k=1:{} k=2:{} k=3:{}", max_seen[0], max_seen[1], max_seen[2]);
    Ok(rep)
}

/// Plane intersections obey `k(k+1)^(d-1)` on a Reed-Solomon code, and
/// `(k-1)d + 1` at the decoding radius of a folded code.
pub fn subspace_intersections(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("subspace-intersection");
    let rs = FrsParams::new(gf13(), 1, 12, 4)?;
    let delta = code_distance(&rs, DEFAULT_ORACLE_LIMIT)?;
    let folded = FrsParams::new(PrimeField::new(31, 30)?, 4, 28, 3)?;
    let mut max_generic = [0usize; 2];
    let mut max_folded = [0usize; 2];
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        for k in 2..=3usize {
            let plane = random_subspace(&rs, 2, &mut rng);
            let g = center_near(&plane, k + 2, 1, &mut rng);
            let radius = delta * Rational::new(k as i64, k as i64 + 1);
            let bound = bounds::generic_list_bound(k as u64, 2)? as usize;
            let hits = subspace_ball_intersection(&plane, &g, radius, DEFAULT_ORACLE_LIMIT)?;
            max_generic[k - 2] = max_generic[k - 2].max(hits.len());
            rep.check(hits.len() <= bound, || {
                format!("trial {i} k={k}: {} plane points, bound {bound}", hits.len())
            });
        }
        for d in 1..=2usize {
            let k = 3;
            let h = random_subspace(&folded, d, &mut rng);
            let g = center_near(&h, 2 * d + 1, 1, &mut rng);
            let radius = bounds::decoding_radius(folded.m(), k, folded.rate())?;
            let bound = bounds::frs_affine_bound(k as u64, d as u64)? as usize;
            let hits = subspace_ball_intersection(&h, &g, radius, DEFAULT_ORACLE_LIMIT)?;
            max_folded[d - 1] = max_folded[d - 1].max(hits.len());
            rep.check(hits.len() <= bound, || {
                format!("trial {i} folded d={d}: {} points, bound {bound}", hits.len())
            });
        }
    }
    rep.observed = format!(
        "max generic k=2:{} k=3:{} folded d=1:{} d=2:{}",
        max_generic[0], max_generic[1], max_folded[0], max_folded[1]
    );
    Ok(rep)
}

/// Polynomials in echelon form with `d` distinct leading degrees below
/// `max_len`, mixed by a random invertible matrix.
fn independent_set<R: Rng>(f: &PrimeField, d: usize, max_len: usize, rng: &mut R) -> Vec<Poly> {
    let mut degrees: Vec<usize> = (0..max_len).collect();
    for i in 0..d {
        let j = rng.gen_range(i..max_len);
        degrees.swap(i, j);
    }
    let echelon: Vec<Poly> = degrees[..d]
        .iter()
        .map(|&deg| {
            let mut c: Vec<Fe> = (0..deg).map(|_| random_elem(f, rng)).collect();
            c.push(random_nonzero(f, rng));
            Poly::new(*f, c)
        })
        .collect();
    let mix = loop {
        let rows: Vec<Vec<Fe>> = (0..d)
            .map(|_| (0..d).map(|_| random_elem(f, rng)).collect())
            .collect();
        let m = Matrix::from_rows(*f, d, &rows);
        if m.rank() == d {
            break m;
        }
    };
    (0..d)
        .map(|i| {
            let w: Vec<Fe> = (0..d).map(|j| mix.get(i, j)).collect();
            Poly::affine_combination(&Poly::zero(*f), &w, &echelon).expect("same field")
        })
        .collect()
}

/// `d` polynomials with a forced linear relation.
fn dependent_set<R: Rng>(f: &PrimeField, d: usize, max_len: usize, rng: &mut R) -> Vec<Poly> {
    let mut polys: Vec<Poly> = (0..d - 1).map(|_| random_poly(f, max_len, rng)).collect();
    let last = match rng.gen_range(0..3) {
        0 => Poly::zero(*f),
        1 if d > 1 => polys[rng.gen_range(0..d - 1)].scalar_mul(random_elem(f, rng)),
        _ => {
            let w: Vec<Fe> = (0..d - 1).map(|_| random_elem(f, rng)).collect();
            Poly::affine_combination(&Poly::zero(*f), &w, &polys).expect("same field")
        }
    };
    let at = rng.gen_range(0..d);
    polys.insert(at, last);
    polys
}

/// Nonzero folded Wronskian iff the coefficient matrix has full rank, on
/// sets built independent or dependent.
pub fn wronskian_equivalence(trials: usize, seed: u64) -> Result<SuiteReport> {
    let f = gf13();
    let max_len = 6;
    let mut rep = SuiteReport::new("wronskian-rank");
    let mut counts = [0usize; 2];
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let d = 1 + i % 3;
        let built_independent = i % 2 == 0;
        let polys = if built_independent {
            independent_set(&f, d, max_len, &mut rng)
        } else {
            dependent_set(&f, d, max_len, &mut rng)
        };
        let rows: Vec<Vec<Fe>> = polys
            .iter()
            .map(|p| (0..max_len).map(|j| p.coeff(j)).collect())
            .collect();
        let full_rank = Matrix::from_rows(f, max_len, &rows).rank() == d;
        let wronskian = is_independent(&f, &polys)?;
        counts[usize::from(wronskian)] += 1;
        rep.check(wronskian == full_rank && full_rank == built_independent, || {
            format!("set {i} (d={d}): wronskian {wronskian}, rank {full_rank}, built {built_independent}")
        });
    }
    rep.observed = format!("independent={} dependent={}", counts[1], counts[0]);
    Ok(rep)
}

/// Rank deficits over folded positions stay within `d * msg_len / (m-d+1)`.
pub fn deficit_bound(trials: usize, seed: u64) -> Result<SuiteReport> {
    let f = PrimeField::new(73, 24)?;
    let codes = [FrsParams::new(f, 4, 24, 3)?, FrsParams::new(f, 4, 24, 6)?];
    let mut rep = SuiteReport::new("rank-deficit");
    let mut max_deficit = 0;
    let mut max_bad = 0;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let p = &codes[i % 2];
        let d = 1 + (i / 2) % 2;
        let h = if i % 4 >= 2 {
            vanishing_subspace(p, d, &mut rng).unwrap_or_else(|| random_subspace(p, d, &mut rng))
        } else {
            random_subspace(p, d, &mut rng)
        };
        match rank_profile(&h) {
            Ok(prof) => {
                max_deficit = max_deficit.max(prof.deficit_sum);
                max_bad = max_bad.max(prof.bad_set_size);
                let direct = (0..p.big_n())
                    .map(|pos| {
                        let rows: Vec<Vec<Fe>> = p
                            .symbol_points(pos)
                            .iter()
                            .map(|&x| h.basis().iter().map(|b| b.eval(x)).collect())
                            .collect();
                        d - Matrix::from_rows(f, d, &rows).rank()
                    })
                    .sum::<usize>();
                rep.check(direct == prof.deficit_sum, || {
                    format!("subspace {i}: profile deficit {} vs direct {direct}", prof.deficit_sum)
                });
            }
            Err(e) => rep.check(false, || format!("subspace {i}: {e}")),
        }
    }
    rep.observed = format!("max_deficit={max_deficit} max_rank_zero={max_bad}");
    Ok(rep)
}

fn unique_codes() -> Result<Vec<FrsParams>> {
    Ok(vec![
        FrsParams::canonical(),
        FrsParams::new(PrimeField::new(31, 30)?, 2, 30, 5)?,
    ])
}

/// With `k = 1` every error count below half the distance round-trips.
pub fn unique_decoding(trials: usize, seed: u64) -> Result<SuiteReport> {
    let codes = unique_codes()?;
    let mut rep = SuiteReport::new("unique-decoding");
    let mut seen_e = vec![Vec::new(); codes.len()];
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let which = i % codes.len();
        let p = &codes[which];
        let big_n = p.big_n() as i64;
        let half = (Rational::from_integer(1) - p.rate()) / 2;
        let e_max = (0..=big_n)
            .take_while(|&e| Rational::new(e, big_n) < half)
            .last()
            .unwrap_or(0) as usize;
        let e = (i / codes.len()) % (e_max + 1);
        let msg = random_message(p, &mut rng);
        let g = corrupt_with(p.field(), &p.encode(&msg)?, e, &mut rng)?;
        let out = decode(p, 1, &g, &DecodeOptions::default())?;
        if !seen_e[which].contains(&e) {
            seen_e[which].push(e);
        }
        rep.check(out.list == [msg.clone()], || {
            format!("trial {i} e={e}: sent {msg}, got {:?}", out.list)
        });
    }
    rep.observed = format!(
        "error counts {}",
        seen_e
            .iter()
            .map(|s| format!("0..={}", s.iter().max().copied().unwrap_or(0)))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(rep)
}

fn pruning_codes() -> Result<Vec<FrsParams>> {
    let f = gf13();
    Ok(vec![FrsParams::new(f, 3, 12, 4)?, FrsParams::new(f, 2, 12, 5)?])
}

fn pruning_triple<R: Rng>(
    p: &FrsParams,
    d: usize,
    rng: &mut R,
) -> (AffineSubspace, crate::frs::FoldedWord, Rational) {
    let h = if rng.gen_bool(0.25) {
        vanishing_subspace(p, d, rng).unwrap_or_else(|| random_subspace(p, d, rng))
    } else {
        random_subspace(p, d, rng)
    };
    let g = if rng.gen_bool(0.8) {
        center_near(&h, 4, 2, rng)
    } else {
        random_word(p, rng)
    };
    let big_n = p.big_n() as i64;
    let radius = Rational::new(rng.gen_range(0..=2 * big_n + 2), 2 * big_n);
    (h, g, radius)
}

/// Frequency pruning and pinning match exhaustive enumeration. Each trial
/// draws one line triple, checked by both, and one triple of dimension
/// 1 to 3, checked by pinning.
pub fn pruning_equivalence(trials: usize, seed: u64) -> Result<SuiteReport> {
    let codes = pruning_codes()?;
    let mut rep = SuiteReport::new("pruning-equivalence");
    let mut max_list = 0;
    let mut counts = [0usize; 2];
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let p = &codes[i % 2];
        for d in [1, 1 + (i / 2) % 3] {
            let (h, g, radius) = pruning_triple(p, d, &mut rng);
            let exhaustive = prune_exhaustive(&h, &g, radius, DEFAULT_ORACLE_LIMIT)?;
            max_list = max_list.max(exhaustive.len());
            let pinned = prune_pinning(&h, &g, radius, DEFAULT_ORACLE_LIMIT)?;
            counts[1] += 1;
            rep.check(pinned == exhaustive, || {
                format!("trial {i} d={d} radius {radius}: pinning {pinned:?} vs {exhaustive:?}")
            });
            if d == 1 && counts[0] < trials {
                let freq = prune_dim1_frequency(&h, &g, radius)?;
                counts[0] += 1;
                rep.check(freq == exhaustive, || {
                    format!("trial {i} radius {radius}: frequency {freq:?} vs {exhaustive:?}")
                });
            }
        }
    }
    rep.observed = format!(
        "frequency={} pinning={} max_list={max_list}",
        counts[0], counts[1]
    );
    Ok(rep)
}

/// Quoted values: bound 50 at `k = 8`, bound 2 at `k = 2`, and equality
/// with the Johnson radius at `R = 1/k^2` in the unfolded limit.
pub fn bounds_table() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("bounds-table");
    let r8 = BoundReport::new(None, 8, None, None)?;
    rep.check(r8.frs_list_bound == 50, || format!("k=8 list bound {}", r8.frs_list_bound));
    let r2 = BoundReport::new(Some(3), 2, Some(Rational::new(1, 6)), None)?;
    rep.check(
        r2.frs_list_bound == 2 && r2.radius == Some(Rational::new(1, 2)),
        || format!("k=2 report {r2:?}"),
    );
    for k in 2..=8usize {
        let at = Rational::new(1, (k * k) as i64);
        rep.check(bounds::johnson_compare(k, at)? == Ordering::Equal, || {
            format!("k={k}: no equality at R = 1/k^2")
        });
    }
    rep.observed = format!("k=8:{} k=2:{}", r8.frs_list_bound, r2.frs_list_bound);
    Ok(rep)
}

/// Trial counts for [`run_all`]. `full` is the acceptance scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSizes {
    pub oracle: usize,
    pub lines: usize,
    pub planes: usize,
    pub wronskian: usize,
    pub deficit: usize,
    pub unique: usize,
    pub pruning: usize,
}

impl SuiteSizes {
    pub fn full() -> Self {
        SuiteSizes {
            oracle: 1000,
            lines: 1000,
            planes: 500,
            wronskian: 200,
            deficit: 200,
            unique: 500,
            pruning: 1000,
        }
    }

    /// Every suite at the same count.
    pub fn uniform(trials: usize) -> Self {
        SuiteSizes {
            oracle: trials,
            lines: trials,
            planes: trials,
            wronskian: trials,
            deficit: trials,
            unique: trials,
            pruning: trials,
        }
    }
}

pub fn run_all(sizes: SuiteSizes, seed: u64) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        oracle_equivalence(sizes.oracle, seed)?,
        list_bound(sizes.oracle, seed)?,
        lemma4_lines(sizes.lines, seed)?,
        subspace_intersections(sizes.planes, seed)?,
        wronskian_equivalence(sizes.wronskian, seed)?,
        deficit_bound(sizes.deficit, seed)?,
        unique_decoding(sizes.unique, seed)?,
        pruning_equivalence(sizes.pruning, seed)?,
        bounds_table()?,
    ])
}
