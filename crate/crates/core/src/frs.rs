//! The folded Reed-Solomon code: parameters, encoding, folded distance and
//! a seeded symbol-error channel.
//!
//! Folded position `i` (0-based here) bundles the evaluations at
//! `gamma^(i*m), ..., gamma^(i*m + m - 1)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::poly::Poly;
use crate::Rational;

/// Parameters of an `m`-folded RS code of unfolded length `n` whose
/// messages are polynomials with `msg_len` coefficients. The rate is
/// derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrsParams {
    field: PrimeField,
    m: usize,
    n: usize,
    msg_len: usize,
    points: Vec<Fe>,
}

impl FrsParams {
    pub fn new(field: PrimeField, m: usize, n: usize, msg_len: usize) -> Result<Self> {
        if m == 0 || n == 0 || n % m != 0 {
            return Err(Error::InvalidParams(format!(
                "folding parameter m = {m} must divide n = {n}"
            )));
        }
        if n as u64 > field.gamma_order() {
            return Err(Error::InvalidParams(format!(
                "n = {n} exceeds the order {} of gamma = {}",
                field.gamma_order(),
                field.gamma()
            )));
        }
        if msg_len == 0 || msg_len > n {
            return Err(Error::InvalidParams(format!(
                "msg_len = {msg_len} must lie in [1, n = {n}]"
            )));
        }
        let points = (0..n as u64).map(|e| field.gamma_pow(e)).collect();
        Ok(FrsParams {
            field,
            m,
            n,
            msg_len,
            points,
        })
    }

    /// The tiny instance used throughout the tests: GF(13), gamma = 2,
    /// m = 3, n = 12, N = 4, two message coefficients (R = 1/6).
    pub fn canonical() -> Self {
        let field = PrimeField::with_gamma(13, 2).expect("13 is prime");
        FrsParams::new(field, 3, 12, 2).expect("valid parameters")
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Folding parameter.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Unfolded length.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Folded blocklength `n / m`.
    #[inline]
    pub fn big_n(&self) -> usize {
        self.n / self.m
    }

    #[inline]
    pub fn msg_len(&self) -> usize {
        self.msg_len
    }

    /// `msg_len / n`.
    pub fn rate(&self) -> Rational {
        Rational::new(self.msg_len as i64, self.n as i64)
    }

    /// Code distance in folded symbols. Two distinct messages agree on at
    /// most `msg_len - 1` unfolded points, hence on at most
    /// `floor((msg_len - 1) / m)` whole symbols.
    pub fn distance(&self) -> Rational {
        let shared = ((self.msg_len - 1) / self.m) as i64;
        let big_n = self.big_n() as i64;
        Rational::new(big_n - shared, big_n)
    }

    /// Evaluation point `gamma^(pos*m + slot)`.
    #[inline]
    pub fn point(&self, pos: usize, slot: usize) -> Fe {
        self.points[pos * self.m + slot]
    }

    /// The `m` evaluation points of folded position `pos`.
    #[inline]
    pub fn symbol_points(&self, pos: usize) -> &[Fe] {
        &self.points[pos * self.m..(pos + 1) * self.m]
    }

    pub fn check_message(&self, f: &Poly) -> Result<()> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch(f.field().modulus(), self.field.modulus()));
        }
        match f.degree() {
            Some(d) if d >= self.msg_len => Err(Error::DegreeTooHigh {
                degree: d,
                msg_len: self.msg_len,
            }),
            _ => Ok(()),
        }
    }

    pub fn check_word(&self, w: &FoldedWord) -> Result<()> {
        if w.width() != self.m || w.num_symbols() != self.big_n() {
            return Err(Error::ShapeMismatch(format!(
                "word is {}x{}, code expects {}x{}",
                w.num_symbols(),
                w.width(),
                self.big_n(),
                self.m
            )));
        }
        if let Some(v) = w.data.iter().find(|v| v.value() >= self.field.modulus()) {
            return Err(Error::ShapeMismatch(format!(
                "entry {v} not reduced mod {}",
                self.field.modulus()
            )));
        }
        Ok(())
    }

    /// Folded encoding of a message polynomial.
    pub fn encode(&self, f: &Poly) -> Result<FoldedWord> {
        self.check_message(f)?;
        Ok(self.encode_unchecked(f))
    }

    pub(crate) fn encode_unchecked(&self, f: &Poly) -> FoldedWord {
        FoldedWord {
            width: self.m,
            data: self.points.iter().map(|&x| f.eval(x)).collect(),
        }
    }
}

impl fmt::Display for FrsParams {
    /// `q gamma m n msg_len`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.field.modulus(),
            self.field.gamma(),
            self.m,
            self.n,
            self.msg_len
        )
    }
}

impl FromStr for FrsParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (idx, line) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing parameter line `q gamma m n msg_len`".into(),
        })?;
        let parse_err = |msg: String| Error::Parse { line: idx + 1, msg };
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| parse_err(format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [q, gamma, m, n, msg_len] = nums[..] else {
            return Err(parse_err(format!(
                "expected 5 integers `q gamma m n msg_len`, got {}",
                nums.len()
            )));
        };
        if let Some((idx, _)) = lines.next() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "unexpected extra content".into(),
            });
        }
        let field = PrimeField::with_gamma(q, gamma)?;
        FrsParams::new(field, m as usize, n as usize, msg_len as usize)
    }
}

/// `N` folded symbols of `m` field elements each, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoldedWord {
    width: usize,
    data: Vec<Fe>,
}

impl FoldedWord {
    pub fn from_symbols(symbols: Vec<Vec<Fe>>) -> Result<Self> {
        let width = symbols.first().map_or(0, |s| s.len());
        if width == 0 || symbols.iter().any(|s| s.len() != width) {
            return Err(Error::ShapeMismatch(
                "symbols must be nonempty and of equal width".into(),
            ));
        }
        Ok(FoldedWord {
            width,
            data: symbols.concat(),
        })
    }

    pub fn zeros(num_symbols: usize, width: usize) -> Self {
        FoldedWord {
            width,
            data: vec![Fe::ZERO; num_symbols * width],
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn num_symbols(&self) -> usize {
        self.data.len() / self.width
    }

    #[inline]
    pub fn symbol(&self, i: usize) -> &[Fe] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn symbol_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn symbols(&self) -> impl Iterator<Item = &[Fe]> {
        self.data.chunks_exact(self.width)
    }

    fn check_shape(&self, other: &FoldedWord) -> Result<()> {
        if self.width != other.width || self.data.len() != other.data.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.num_symbols(),
                self.width,
                other.num_symbols(),
                other.width
            )));
        }
        Ok(())
    }

    /// Number of folded positions where the two words match entirely.
    pub fn agreement_count(&self, other: &FoldedWord) -> Result<usize> {
        self.check_shape(other)?;
        Ok(self
            .symbols()
            .zip(other.symbols())
            .filter(|(a, b)| a == b)
            .count())
    }

    /// Fraction of folded positions where the words differ.
    pub fn distance(&self, other: &FoldedWord) -> Result<Rational> {
        let agree = self.agreement_count(other)?;
        let n = self.num_symbols() as i64;
        Ok(Rational::new(n - agree as i64, n))
    }

    /// Fraction of folded positions where the words match.
    pub fn agreement(&self, other: &FoldedWord) -> Result<Rational> {
        let agree = self.agreement_count(other)?;
        Ok(Rational::new(agree as i64, self.num_symbols() as i64))
    }

    /// Parses `N` lines of `m` decimal integers, checking values against the
    /// field and the shape against `params`.
    pub fn parse(params: &FrsParams, s: &str) -> Result<Self> {
        let q = params.field().modulus();
        let mut symbols = Vec::new();
        for (idx, line) in s.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let sym = line
                .split_whitespace()
                .map(|t| match t.parse::<u64>() {
                    Ok(v) if v < q => Ok(params.field().elem(v)),
                    Ok(v) => Err(Error::Parse {
                        line: line_no,
                        msg: format!("{v} is not reduced mod {q}"),
                    }),
                    Err(_) => Err(Error::Parse {
                        line: line_no,
                        msg: format!("bad integer {t:?}"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            if sym.len() != params.m() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {} entries, got {}", params.m(), sym.len()),
                });
            }
            symbols.push(sym);
        }
        if symbols.len() != params.big_n() {
            return Err(Error::Parse {
                line: s.lines().count().max(1),
                msg: format!("expected {} symbols, got {}", params.big_n(), symbols.len()),
            });
        }
        FoldedWord::from_symbols(symbols)
    }
}

impl fmt::Display for FoldedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sym in self.symbols() {
            let line: Vec<String> = sym.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Replaces exactly `e` folded symbols, each with a uniformly random symbol
/// that differs from the original. Deterministic given `seed`.
pub fn corrupt(field: &PrimeField, w: &FoldedWord, e: usize, seed: u64) -> Result<FoldedWord> {
    corrupt_with(field, w, e, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn corrupt_with<R: Rng>(
    field: &PrimeField,
    w: &FoldedWord,
    e: usize,
    rng: &mut R,
) -> Result<FoldedWord> {
    let big_n = w.num_symbols();
    if e > big_n {
        return Err(Error::OutOfRange(format!(
            "cannot corrupt {e} of {big_n} symbols"
        )));
    }
    let q = field.modulus();
    let mut out = w.clone();
    for pos in sample(rng, big_n, e) {
        let original = w.symbol(pos);
        loop {
            let fresh: Vec<Fe> = (0..w.width()).map(|_| field.elem(rng.gen_range(0..q))).collect();
            if fresh != original {
                out.symbol_mut(pos).copy_from_slice(&fresh);
                break;
            }
        }
    }
    Ok(out)
}
