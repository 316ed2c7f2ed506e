//! Library side of the `frs` command-line tool. Each command takes file
//! contents (not paths) and returns the text to print, so tests can drive
//! them without touching the filesystem.

pub mod config;
pub mod experiment;

use std::fmt::Write as _;

pub use config::{parse_rational, Channel, ExperimentConfig};
pub use experiment::{
    run_experiment, run_experiment_with, DecodeFn, ExperimentResult, TrialRecord, CSV_HEADER,
};

use crate::bounds::{self, BoundReport};
use crate::decoder::{decode, DecodeOptions};
use crate::error::{Error, Result};
use crate::frs::{corrupt, FoldedWord, FrsParams};
use crate::poly::Poly;
use crate::verify::{run_all, SuiteSizes};
use crate::Rational;

fn parse_message(params: &FrsParams, text: &str) -> Result<Poly> {
    let tokens = text.split_whitespace().count();
    if tokens > params.msg_len() {
        return Err(Error::InvalidParams(format!(
            "message has {tokens} coefficients, code takes at most {}",
            params.msg_len()
        )));
    }
    let msg = Poly::parse(*params.field(), text).map_err(|msg| Error::Parse { line: 1, msg })?;
    params.check_message(&msg)?;
    Ok(msg)
}

/// Codeword text for the message given as space-separated coefficients,
/// lowest degree first.
pub fn cmd_encode(params_text: &str, message: &str) -> Result<String> {
    let params: FrsParams = params_text.parse()?;
    let msg = parse_message(&params, message)?;
    Ok(params.encode(&msg)?.to_string())
}

pub fn cmd_corrupt(params_text: &str, word_text: &str, errors: usize, seed: u64) -> Result<String> {
    let params: FrsParams = params_text.parse()?;
    let w = FoldedWord::parse(&params, word_text)?;
    Ok(corrupt(params.field(), &w, errors, seed)?.to_string())
}

/// Decodes and reports the subspace, the list and whether the list obeys
/// `(k-1)^2 + 1`.
pub fn cmd_decode(
    params_text: &str,
    k: usize,
    word_text: &str,
    radius: Option<Rational>,
    limit: u64,
) -> Result<String> {
    let params: FrsParams = params_text.parse()?;
    if k == 0 || k > params.m() {
        return Err(Error::InvalidParams(format!(
            "k = {k} must lie in [1, m = {}]",
            params.m()
        )));
    }
    let g = FoldedWord::parse(&params, word_text)?;
    let out = decode(&params, k, &g, &DecodeOptions { radius, limit })?;

    let mut s = String::new();
    let w = |s: &mut String, key: &str, value: &dyn std::fmt::Display| {
        writeln!(s, "{key:<14}{value}").expect("string write");
    };
    w(&mut s, "radius", &out.radius);
    w(&mut s, "interp_degree", &out.interpolation.degree);
    match &out.subspace {
        None => w(&mut s, "subspace", &"none (extraction system inconsistent)"),
        Some(h) => {
            w(&mut s, "subspace_dim", &h.dim());
            w(&mut s, "offset", h.offset());
            for (i, b) in h.basis().iter().enumerate() {
                w(&mut s, &format!("basis[{i}]"), b);
            }
        }
    }
    w(&mut s, "strategy", &out.stats.strategy);
    w(&mut s, "examined", &out.stats.candidates_examined);
    w(&mut s, "list_size", &out.list.len());
    for (i, f) in out.list.iter().enumerate() {
        let dist = params.encode(f)?.distance(&g)?;
        w(&mut s, &format!("list[{i}]"), &format!("{f}  (distance {dist})"));
    }
    let bound = bounds::frs_list_bound(k);
    let compliance = match bounds::decoding_radius(params.m(), k, params.rate()) {
        Ok(r) if out.radius <= r => format!(
            "list_size {} <= (k-1)^2+1 = {bound}: ok",
            out.list.len()
        ),
        Ok(r) => format!("radius {} above decoding radius {r}: no list bound applies", out.radius),
        Err(_) => "no positive decoding radius at this rate: no list bound applies".into(),
    };
    w(&mut s, "bound", &compliance);
    Ok(s)
}

/// Bound report as aligned text or as a CSV header plus one row.
pub fn cmd_bounds(
    m: Option<usize>,
    k: usize,
    rate: Option<Rational>,
    d: Option<usize>,
    csv: bool,
) -> Result<String> {
    let report = BoundReport::new(m, k, rate, d)?;
    Ok(if csv {
        format!("{}\n{}\n", BoundReport::CSV_HEADER, report.to_csv_row())
    } else {
        report.to_string()
    })
}

pub fn cmd_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment(cfg)
}

/// Runs every property suite. Returns the report and whether all passed.
pub fn cmd_verify(sizes: SuiteSizes, seed: u64) -> Result<(String, bool)> {
    let reports = run_all(sizes, seed)?;
    let mut s = String::new();
    for r in &reports {
        writeln!(s, "{r}").expect("string write");
    }
    Ok((s, reports.iter().all(|r| r.passed())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANONICAL: &str = "13 2 3 12 2\n";

    #[test]
    fn encode_examples() {
        assert_eq!(cmd_encode(CANONICAL, "0").unwrap(), "0 0 0\n".repeat(4));
        assert_eq!(
            cmd_encode(CANONICAL, "0 1").unwrap(),
            "1 2 4\n8 3 6\n12 11 9\n5 10 7\n"
        );
        assert!(matches!(
            cmd_encode(CANONICAL, "1 2 3"),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(cmd_encode(CANONICAL, "1 x"), Err(Error::Parse { .. })));
        assert!(matches!(cmd_encode("13 2 3", "1"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn decode_noiseless() {
        let word = cmd_encode(CANONICAL, "6 2").unwrap();
        let report = cmd_decode(CANONICAL, 1, &word, None, 1000).unwrap();
        assert!(report.contains("list_size     1\n"), "{report}");
        assert!(report.contains("list[0]       6 2  (distance 0)"), "{report}");
        assert!(report.contains(": ok"), "{report}");
        assert_eq!(
            cmd_decode(CANONICAL, 4, &word, None, 1000).unwrap_err().exit_code(),
            1
        );
    }

    #[test]
    fn bounds_examples() {
        let t = cmd_bounds(Some(3), 2, Some(Rational::new(1, 6)), None, false).unwrap();
        assert!(t.contains("radius            1/2\n"), "{t}");
        assert!(t.contains("frs_list_bound    2\n"), "{t}");
        let c = cmd_bounds(None, 8, None, None, true).unwrap();
        let row = c.lines().nth(1).unwrap();
        assert_eq!(row.split(',').nth(7), Some("50"));
        assert!(cmd_bounds(Some(3), 2, Some(Rational::new(2, 3)), None, false).is_err());
    }

    #[test]
    fn corrupt_exact_count() {
        let word = cmd_encode(CANONICAL, "3 3").unwrap();
        let bad = cmd_corrupt(CANONICAL, &word, 2, 11).unwrap();
        let p: FrsParams = CANONICAL.parse().unwrap();
        let a = FoldedWord::parse(&p, &word).unwrap();
        let b = FoldedWord::parse(&p, &bad).unwrap();
        assert_eq!(a.agreement_count(&b).unwrap(), 2);
    }
}
