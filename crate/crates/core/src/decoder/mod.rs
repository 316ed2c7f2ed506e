//! Linear-algebraic list decoding of folded RS codes.
//!
//! `decode` runs interpolate -> extract_subspace -> prune. The extracted
//! subspace has dimension at most `k - 1` and contains every message within
//! the decoding radius; pruning then keeps exactly the messages inside it.

mod interpolate;
mod prune;
mod subspace;

pub use interpolate::{
    extract_subspace, guaranteed_agreement, interpolate, interpolation_degree, InterpolationPoly,
};
pub use prune::{
    agreement_threshold, prune_dim1_frequency, prune_dim1_frequency_counted, prune_exhaustive,
    prune_exhaustive_counted, prune_pinning, prune_pinning_counted, Pruned, DEFAULT_PRUNE_LIMIT,
};
pub use subspace::AffineSubspace;

pub(crate) use subspace::Coordinates;

use std::fmt;

use crate::bounds;
use crate::error::{Error, Result};
use crate::frs::{FoldedWord, FrsParams};
use crate::poly::Poly;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneStrategy {
    /// Extraction found no consistent message; nothing to prune.
    Skipped,
    Exhaustive,
    Frequency,
    Pinning,
}

impl fmt::Display for PruneStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PruneStrategy::Skipped => "skipped",
            PruneStrategy::Exhaustive => "exhaustive",
            PruneStrategy::Frequency => "frequency",
            PruneStrategy::Pinning => "pinning",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeStats {
    pub candidates_examined: u64,
    pub strategy: PruneStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub interpolation: InterpolationPoly,
    /// `None` when the extraction system was inconsistent.
    pub subspace: Option<AffineSubspace>,
    /// Sorted; every member is strictly within `radius` of the received word.
    pub list: Vec<Poly>,
    pub radius: Rational,
    pub stats: DecodeStats,
}

impl DecodeOutcome {
    pub fn subspace_dim(&self) -> Option<usize> {
        self.subspace.as_ref().map(AffineSubspace::dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Defaults to `k/(k+1) * (1 - m/(m-k+1) * R)`.
    pub radius: Option<Rational>,
    /// Largest subspace that exhaustive pruning may enumerate.
    pub limit: u64,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            radius: None,
            limit: DEFAULT_PRUNE_LIMIT,
        }
    }
}

/// Largest radius for which the extracted subspace is guaranteed to hold the
/// whole list: any radius whose agreement threshold is at least
/// [`guaranteed_agreement`].
fn check_radius(params: &FrsParams, k: usize, radius: Rational) -> Result<()> {
    let needed = agreement_threshold(params.big_n(), radius);
    let guaranteed = guaranteed_agreement(params, k)? as i64;
    if needed < guaranteed {
        let big_n = params.big_n() as i64;
        return Err(Error::RadiusBeyondGuarantee {
            radius: radius.to_string(),
            max: Rational::new(big_n - guaranteed + 1, big_n).to_string(),
        });
    }
    Ok(())
}

pub fn decode(
    params: &FrsParams,
    k: usize,
    g: &FoldedWord,
    opts: &DecodeOptions,
) -> Result<DecodeOutcome> {
    interpolate::check_k(params, k)?;
    params.check_word(g)?;
    let theorem_radius = bounds::decoding_radius(params.m(), k, params.rate());
    let radius = match (opts.radius, &theorem_radius) {
        (Some(r), _) => r,
        (None, Ok(r)) => *r,
        (None, Err(e)) => return Err(e.clone()),
    };
    check_radius(params, k, radius)?;

    let q = interpolate(params, k, g)?;
    let subspace = extract_subspace(&q, params)?;

    let (pruned, strategy) = match &subspace {
        None => (
            Pruned {
                list: Vec::new(),
                examined: 0,
            },
            PruneStrategy::Skipped,
        ),
        Some(h) if h.dim() == 1 => (
            prune_dim1_frequency_counted(h, g, radius)?,
            PruneStrategy::Frequency,
        ),
        Some(h) if h.size() > opts.limit as u128 => (
            prune_pinning_counted(h, g, radius, opts.limit)?,
            PruneStrategy::Pinning,
        ),
        Some(h) => (
            prune_exhaustive_counted(h, g, radius, opts.limit)?,
            PruneStrategy::Exhaustive,
        ),
    };

    for f in &pruned.list {
        if params.encode(f)?.distance(g)? >= radius {
            return Err(Error::ContractViolation(format!(
                "list member {f} is not within radius {radius}"
            )));
        }
    }
    if let Ok(r) = theorem_radius {
        let bound = bounds::frs_list_bound(k);
        if radius <= r && pruned.list.len() as u64 > bound {
            return Err(Error::ContractViolation(format!(
                "list size {} exceeds (k-1)^2 + 1 = {bound}",
                pruned.list.len()
            )));
        }
    }

    Ok(DecodeOutcome {
        interpolation: q,
        subspace,
        list: pruned.list,
        radius,
        stats: DecodeStats {
            candidates_examined: pruned.examined,
            strategy,
        },
    })
}
