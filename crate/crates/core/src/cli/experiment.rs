//! Seeded decoding trials written as CSV.

use std::fmt::Write as _;
use std::thread;

use rand::Rng;

use super::config::{Channel, ExperimentConfig};
use crate::bounds;
use crate::decoder::{decode, DecodeOptions, DecodeOutcome};
use crate::error::{Error, Result};
use crate::frs::{corrupt_with, FoldedWord, FrsParams};
use crate::oracle::{adversarial_center, brute_force_list};
use crate::poly::Poly;
use crate::sampling::{random_elem, random_message, random_subspace, trial_rng};
use crate::wronskian::rank_profile_unchecked;
use crate::Rational;

pub const CSV_HEADER: &str = "trial,errors,subspace_dim,list_size,oracle_list_size,deficit_sum,bound_radius_num,bound_radius_den,pass";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    /// Symbol positions where the received word differs from the sent
    /// codeword.
    pub errors: usize,
    pub subspace_dim: Option<usize>,
    pub list_size: Option<usize>,
    pub oracle_list_size: Option<usize>,
    pub deficit_sum: Option<usize>,
    pub radius: Rational,
    /// Agreement fraction of each list member with the received word.
    pub agreements: Vec<Rational>,
    pub dim_ok: bool,
    /// `None` when the radius is above the decoding radius and no list
    /// bound applies.
    pub list_ok: Option<bool>,
    pub deficit_ok: bool,
    pub oracle_ok: Option<bool>,
    /// The decoder's contract error, if it raised one.
    pub violation: Option<String>,
}

impl TrialRecord {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
            && self.dim_ok
            && self.list_ok != Some(false)
            && self.deficit_ok
            && self.oracle_ok != Some(false)
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.errors,
            opt(self.subspace_dim),
            opt(self.list_size),
            opt(self.oracle_list_size),
            opt(self.deficit_sum),
            self.radius.numer(),
            self.radius.denom(),
            self.pass()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub csv: String,
    pub all_pass: bool,
}

impl ExperimentResult {
    pub fn max_list_size(&self) -> Option<usize> {
        self.records.iter().filter_map(|r| r.list_size).max()
    }
}

/// Signature of the decode step, so tests can substitute a broken decoder.
pub type DecodeFn = dyn Fn(&FrsParams, usize, &FoldedWord, &DecodeOptions) -> Result<DecodeOutcome> + Sync;

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with(cfg, &decode)
}

pub fn run_experiment_with(cfg: &ExperimentConfig, decoder: &DecodeFn) -> Result<ExperimentResult> {
    cfg.validate()?;
    let records = run_trials(cfg, decoder)?;
    let all_pass = records.iter().all(TrialRecord::pass);

    let mut csv = String::new();
    writeln!(csv, "{CSV_HEADER}").expect("string write");
    for r in &records {
        writeln!(csv, "{}", r.to_csv_row()).expect("string write");
    }
    if !records.is_empty() {
        let max = |f: fn(&TrialRecord) -> Option<usize>| {
            records.iter().filter_map(f).max().map(|v| v.to_string()).unwrap_or_default()
        };
        let radius = records[0].radius;
        writeln!(
            csv,
            "summary,,{},{},{},{},{},{},{}",
            max(|r| r.subspace_dim),
            max(|r| r.list_size),
            max(|r| r.oracle_list_size),
            max(|r| r.deficit_sum),
            radius.numer(),
            radius.denom(),
            all_pass
        )
        .expect("string write");
    }
    Ok(ExperimentResult {
        records,
        csv,
        all_pass,
    })
}

/// Trials are split into contiguous chunks across threads; each trial draws
/// from its own RNG stream, so the split does not affect the output.
fn run_trials(cfg: &ExperimentConfig, decoder: &DecodeFn) -> Result<Vec<TrialRecord>> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(cfg.trials.max(1));
    let chunk = cfg.trials.div_ceil(workers).max(1);
    let results: Vec<Result<Vec<TrialRecord>>> = thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.trials)
            .step_by(chunk)
            .map(|start| {
                let end = (start + chunk).min(cfg.trials);
                s.spawn(move || (start..end).map(|i| run_trial(cfg, decoder, i)).collect())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trial thread panicked"))
            .collect()
    });
    let mut records = Vec::with_capacity(cfg.trials);
    for r in results {
        records.extend(r?);
    }
    Ok(records)
}

fn received_word(cfg: &ExperimentConfig, trial: usize) -> Result<(Poly, FoldedWord)> {
    let p = &cfg.params;
    let mut rng = trial_rng(cfg.seed, trial as u64);
    let (sent, clean) = match cfg.channel {
        Channel::Random => {
            let f = random_message(p, &mut rng);
            let w = p.encode(&f)?;
            (f, w)
        }
        Channel::Adversarial => {
            let dim = (cfg.targets - 1).min(p.msg_len());
            let h = random_subspace(p, dim, &mut rng);
            // distinct targets whenever the subspace has room for them
            let distinct = h.size() >= cfg.targets as u128;
            let mut targets: Vec<Poly> = Vec::with_capacity(cfg.targets);
            while targets.len() < cfg.targets {
                let alpha: Vec<_> = (0..dim).map(|_| random_elem(p.field(), &mut rng)).collect();
                let t = h.at(&alpha);
                if !distinct || !targets.contains(&t) {
                    targets.push(t);
                }
            }
            let g = adversarial_center(&h, &targets, rng.gen())?;
            (targets[0].clone(), g)
        }
    };
    let g = corrupt_with(p.field(), &clean, cfg.errors, &mut rng)?;
    Ok((sent, g))
}

fn run_trial(cfg: &ExperimentConfig, decoder: &DecodeFn, trial: usize) -> Result<TrialRecord> {
    let p = &cfg.params;
    let (sent, g) = received_word(cfg, trial)?;
    let errors = p.big_n() - p.encode(&sent)?.agreement_count(&g)?;
    let theorem_radius = bounds::decoding_radius(p.m(), cfg.k, p.rate()).ok();
    let radius = cfg.radius.or(theorem_radius).ok_or_else(|| {
        Error::InvalidParams("rate too high for a positive decoding radius; set radius".into())
    })?;
    let opts = DecodeOptions {
        radius: Some(radius),
        limit: cfg.limit,
    };

    let mut rec = TrialRecord {
        trial,
        errors,
        subspace_dim: None,
        list_size: None,
        oracle_list_size: None,
        deficit_sum: None,
        radius,
        agreements: Vec::new(),
        dim_ok: true,
        list_ok: None,
        deficit_ok: true,
        oracle_ok: None,
        violation: None,
    };
    let out = match decoder(p, cfg.k, &g, &opts) {
        Ok(out) => out,
        Err(Error::ContractViolation(msg)) => {
            rec.violation = Some(msg);
            return Ok(rec);
        }
        Err(e) => return Err(e),
    };

    rec.subspace_dim = out.subspace_dim();
    rec.dim_ok = out.subspace_dim().is_none_or(|d| d < cfg.k);
    rec.list_size = Some(out.list.len());
    if theorem_radius.is_some_and(|r| radius <= r) {
        rec.list_ok = Some(out.list.len() as u64 <= bounds::frs_list_bound(cfg.k));
    }
    rec.agreements = out
        .list
        .iter()
        .map(|f| p.encode(f)?.agreement(&g))
        .collect::<Result<_>>()?;
    if let Some(h) = &out.subspace {
        let prof = rank_profile_unchecked(h)?;
        rec.deficit_ok = Rational::from_integer(prof.deficit_sum as i64) <= prof.bound;
        rec.deficit_sum = Some(prof.deficit_sum);
    }
    match brute_force_list(p, &g, radius, cfg.limit) {
        Ok(oracle) => {
            rec.oracle_list_size = Some(oracle.len());
            rec.oracle_ok = Some(oracle.members == out.list);
        }
        Err(Error::LimitExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(extra: &str) -> ExperimentConfig {
        format!("q=13\ngamma=2\nm=3\nn=12\nmsg_len=2\nk=2\n{extra}")
            .parse()
            .unwrap()
    }

    #[test]
    fn zero_trials_is_header_only() {
        let r = run_experiment(&cfg("trials=0")).unwrap();
        assert_eq!(r.csv, format!("{CSV_HEADER}\n"));
        assert!(r.all_pass);
    }

    #[test]
    fn records_are_in_order_and_pass() {
        let r = run_experiment(&cfg("trials=20\nseed=4\nerrors=1")).unwrap();
        assert!(r.all_pass);
        assert_eq!(
            r.records.iter().map(|t| t.trial).collect::<Vec<_>>(),
            (0..20).collect::<Vec<_>>()
        );
        assert!(r.records.iter().all(|t| t.errors == 1 && t.list_size == Some(1)));
        let last = r.csv.lines().last().unwrap();
        assert!(last.starts_with("summary,"), "{last}");
        assert!(last.ends_with(",1,2,true"), "{last}");
    }

    #[test]
    fn adversarial_channel() {
        let c: ExperimentConfig = "q=31\nm=3\nn=30\nmsg_len=2\nk=2\ntrials=10\nchannel=adversarial"
            .parse()
            .unwrap();
        let r = run_experiment(&c).unwrap();
        assert!(r.all_pass);
        assert!(r.records.iter().all(|t| t.list_size == Some(2)));
        assert!(r.records.iter().all(|t| t.agreements == vec![Rational::new(1, 2); 2]));
    }

    #[test]
    fn broken_decoder_fails() {
        let bad = |p: &FrsParams, k: usize, g: &FoldedWord, o: &DecodeOptions| {
            let mut out = decode(p, k, g, o)?;
            out.list.push(Poly::from_u64s(*p.field(), &[1, 1]));
            out.list.push(Poly::from_u64s(*p.field(), &[2, 1]));
            Ok(out)
        };
        let r = run_experiment_with(&cfg("trials=3"), &bad).unwrap();
        assert!(!r.all_pass);
        assert!(r.csv.lines().last().unwrap().ends_with("false"));
    }
}
