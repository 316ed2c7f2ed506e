//! Seeded random instances for property suites and experiments.
//!
//! Every generator draws from a caller-supplied RNG. Experiments derive one
//! ChaCha8 stream per trial from a single 64-bit seed (see [`trial_rng`]),
//! so trial `i` sees the same randomness no matter how trials are scheduled.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decoder::AffineSubspace;
use crate::field::{Fe, PrimeField};
use crate::frs::{corrupt_with, FoldedWord, FrsParams};
use crate::oracle::adversarial_center;
use crate::poly::Poly;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_elem<R: Rng>(field: &PrimeField, rng: &mut R) -> Fe {
    field.elem(rng.gen_range(0..field.modulus()))
}

pub fn random_nonzero<R: Rng>(field: &PrimeField, rng: &mut R) -> Fe {
    field.elem(rng.gen_range(1..field.modulus()))
}

/// Uniform polynomial with `len` coefficients (degree < len).
pub fn random_poly<R: Rng>(field: &PrimeField, len: usize, rng: &mut R) -> Poly {
    Poly::new(*field, (0..len).map(|_| random_elem(field, rng)).collect())
}

pub fn random_message<R: Rng>(params: &FrsParams, rng: &mut R) -> Poly {
    random_poly(params.field(), params.msg_len(), rng)
}

/// Uniform received word.
pub fn random_word<R: Rng>(params: &FrsParams, rng: &mut R) -> FoldedWord {
    let f = params.field();
    let symbols = (0..params.big_n())
        .map(|_| (0..params.m()).map(|_| random_elem(f, rng)).collect())
        .collect();
    FoldedWord::from_symbols(symbols).expect("nonempty symbols")
}

/// Uniform affine subspace of dimension `d` (independent basis by
/// rejection).
pub fn random_subspace<R: Rng>(params: &FrsParams, d: usize, rng: &mut R) -> AffineSubspace {
    assert!(d <= params.msg_len(), "dimension exceeds message space");
    loop {
        let offset = random_message(params, rng);
        let basis = (0..d).map(|_| random_message(params, rng)).collect();
        if let Ok(h) = AffineSubspace::new(params, offset, basis) {
            return h;
        }
    }
}

/// `prod_j (X - x_j)` over the evaluation points of folded position `pos`.
pub fn symbol_vanishing_poly(params: &FrsParams, pos: usize) -> Poly {
    let f = *params.field();
    params
        .symbol_points(pos)
        .iter()
        .fold(Poly::constant(f, Fe::ONE), |acc, &x| {
            acc.mul(&Poly::new(f, vec![f.neg(x), Fe::ONE]))
                .expect("same field")
        })
}

/// A subspace whose basis polynomials all vanish on one whole folded
/// symbol, so that position has rank 0. Needs `msg_len >= m + d`.
pub fn vanishing_subspace<R: Rng>(params: &FrsParams, d: usize, rng: &mut R) -> Option<AffineSubspace> {
    let f = *params.field();
    if params.msg_len() < params.m() + d {
        return None;
    }
    let pos = rng.gen_range(0..params.big_n());
    let v = symbol_vanishing_poly(params, pos);
    let cofactor_len = params.msg_len() - params.m();
    loop {
        let basis: Vec<Poly> = (0..d)
            .map(|_| {
                v.mul(&random_poly(&f, cofactor_len, rng))
                    .expect("same field")
            })
            .collect();
        if let Ok(h) = AffineSubspace::new(params, random_message(params, rng), basis) {
            return Some(h);
        }
    }
}

/// A center near `h`: an adversarial mix of up to `max_targets` subspace
/// points, then up to `max_noise` extra symbol errors.
pub fn center_near<R: Rng>(
    h: &AffineSubspace,
    max_targets: usize,
    max_noise: usize,
    rng: &mut R,
) -> FoldedWord {
    let params = h.params();
    let f = params.field();
    let t = rng.gen_range(1..=max_targets.min(params.big_n()).max(1));
    let targets: Vec<Poly> = (0..t)
        .map(|_| {
            let alpha: Vec<Fe> = (0..h.dim()).map(|_| random_elem(f, rng)).collect();
            h.at(&alpha)
        })
        .collect();
    let g = adversarial_center(h, &targets, rng.gen()).expect("targets lie in h");
    let e = rng.gen_range(0..=max_noise.min(params.big_n()));
    corrupt_with(f, &g, e, rng).expect("e within range")
}

/// One of three kinds of received word, chosen by `kind % 3`: a corrupted
/// codeword, a uniform word, or an adversarial mix of two codewords.
pub fn mixed_center<R: Rng>(params: &FrsParams, kind: usize, rng: &mut R) -> FoldedWord {
    match kind % 3 {
        0 => {
            let w = params.encode_unchecked(&random_message(params, rng));
            let e = rng.gen_range(0..=params.big_n());
            corrupt_with(params.field(), &w, e, rng).expect("e within range")
        }
        1 => random_word(params, rng),
        _ => {
            let a = random_message(params, rng);
            let b = random_message(params, rng);
            let h = AffineSubspace::through(params, &[a.clone(), b.clone()]).expect("valid points");
            let g = adversarial_center(&h, &[a, b], rng.gen()).expect("targets lie in h");
            let e = rng.gen_range(0..=1);
            corrupt_with(params.field(), &g, e, rng).expect("e within range")
        }
    }
}
