use proptest::prelude::*;

use folded_rs::decoder::{
    decode, extract_subspace, guaranteed_agreement, interpolate, prune_dim1_frequency,
    prune_exhaustive, prune_pinning, AffineSubspace, DecodeOptions,
};
use folded_rs::field::{Fe, PrimeField};
use folded_rs::frs::{corrupt, FoldedWord, FrsParams};
use folded_rs::linalg::Matrix;
use folded_rs::oracle::{brute_force_list, DEFAULT_ORACLE_LIMIT};
use folded_rs::sampling::{center_near, mixed_center, random_subspace, trial_rng};
use folded_rs::wronskian::{coordinate_matrix, rank_profile};
use folded_rs::{Poly, Rational};

fn gf13() -> PrimeField {
    PrimeField::with_gamma(13, 2).unwrap()
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u64..13, 0..=max_len).prop_map(|c| Poly::from_u64s(gf13(), &c))
}

fn message(params: FrsParams) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u64..13, params.msg_len())
        .prop_map(move |c| Poly::from_u64s(*params.field(), &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in 0u64..13, b in 0u64..13, c in 0u64..13) {
        let f = gf13();
        let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn dilate_matches_eval(p in poly(8), c in 0u64..13, x in 0u64..13) {
        let f = gf13();
        let (c, x) = (f.elem(c), f.elem(x));
        prop_assert_eq!(p.dilate(c).eval(x), p.eval(f.mul(c, x)));
    }

    #[test]
    fn product_degree_and_eval(p in poly(6), r in poly(6), x in 0u64..13) {
        let f = gf13();
        let pr = p.mul(&r).unwrap();
        match (p.degree(), r.degree()) {
            (Some(a), Some(b)) => prop_assert_eq!(pr.degree(), Some(a + b)),
            _ => prop_assert!(pr.is_zero()),
        }
        let x = f.elem(x);
        prop_assert_eq!(pr.eval(x), f.mul(p.eval(x), r.eval(x)));
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(0u64..13, 5), 1..6)) {
        let f = gf13();
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&v| f.elem(v)).collect()).collect();
        let a = Matrix::from_rows(f, 5, &rows);
        let kernel = a.nullspace();
        prop_assert_eq!(a.rank() + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn encoding_is_linear(a in message(FrsParams::canonical()), b in message(FrsParams::canonical())) {
        let p = FrsParams::canonical();
        let f = *p.field();
        let sum = p.encode(&a.add(&b).unwrap()).unwrap();
        let (ea, eb) = (p.encode(&a).unwrap(), p.encode(&b).unwrap());
        for i in 0..p.big_n() {
            for j in 0..p.m() {
                prop_assert_eq!(sum.symbol(i)[j], f.add(ea.symbol(i)[j], eb.symbol(i)[j]));
            }
        }
    }

    #[test]
    fn word_text_roundtrip(a in message(FrsParams::canonical()), e in 0usize..=4, seed in any::<u64>()) {
        let p = FrsParams::canonical();
        let w = corrupt(p.field(), &p.encode(&a).unwrap(), e, seed).unwrap();
        prop_assert_eq!(FoldedWord::parse(&p, &w.to_string()).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_equals_oracle(seed in any::<u64>(), kind in 0usize..3, k in 1usize..=3) {
        let p = FrsParams::canonical();
        let mut rng = trial_rng(seed, 0);
        let g = mixed_center(&p, kind, &mut rng);
        let out = decode(&p, k, &g, &DecodeOptions::default()).unwrap();
        let oracle = brute_force_list(&p, &g, out.radius, DEFAULT_ORACLE_LIMIT).unwrap();
        prop_assert!(out.subspace_dim().is_none_or(|d| d < k));
        prop_assert_eq!(out.list, oracle.members);
    }

    #[test]
    fn subspace_holds_close_messages(seed in any::<u64>(), k in 1usize..=3) {
        // every message agreeing with g on at least t_min symbols lies in
        // the extracted subspace
        let p = FrsParams::new(gf13(), 3, 12, 3).unwrap();
        let mut rng = trial_rng(seed, 1);
        let g = mixed_center(&p, seed as usize, &mut rng);
        let q = interpolate(&p, k, &g).unwrap();
        prop_assert!(q.vanishes_on(&p, &g));
        let t_min = guaranteed_agreement(&p, k).unwrap();
        let h = extract_subspace(&q, &p).unwrap();
        for f in brute_force_list(&p, &g, Rational::from_integer(2), DEFAULT_ORACLE_LIMIT).unwrap().members {
            if p.encode(&f).unwrap().agreement_count(&g).unwrap() >= t_min {
                prop_assert!(h.as_ref().is_some_and(|h| h.contains(&f)), "{} missing", f);
            }
        }
    }

    #[test]
    fn pruners_agree(seed in any::<u64>(), d in 1usize..=3, num in 0i64..=10) {
        let p = FrsParams::new(gf13(), 2, 12, 5).unwrap();
        let mut rng = trial_rng(seed, 2);
        let h = random_subspace(&p, d, &mut rng);
        let g = center_near(&h, 3, 1, &mut rng);
        let radius = Rational::new(num, 6);
        let ex = prune_exhaustive(&h, &g, radius, DEFAULT_ORACLE_LIMIT).unwrap();
        prop_assert_eq!(&prune_pinning(&h, &g, radius, DEFAULT_ORACLE_LIMIT).unwrap(), &ex);
        if d == 1 {
            prop_assert_eq!(&prune_dim1_frequency(&h, &g, radius).unwrap(), &ex);
        }
    }

    #[test]
    fn rank_is_dimension_drop(seed in any::<u64>(), d in 1usize..=2, pos in 0usize..6) {
        // points of H matching a fixed point of H on symbol `pos` form a
        // subspace of dimension d - r_pos
        let f = PrimeField::new(73, 24).unwrap();
        let p = FrsParams::new(f, 4, 24, 6).unwrap();
        let mut rng = trial_rng(seed, 3);
        let h = random_subspace(&p, d, &mut rng);
        let anchor = p.encode(h.offset()).unwrap();
        let r = coordinate_matrix(&h, pos).unwrap().rank();
        let pts: Vec<Poly> = (0..73u64.pow(d as u32))
            .map(|c| {
                let alpha: Vec<Fe> = (0..d).map(|s| f.elem(c / 73u64.pow(s as u32) % 73)).collect();
                h.at(&alpha)
            })
            .collect();
        let matching = pts
            .iter()
            .filter(|q| p.encode(q).unwrap().symbol(pos) == anchor.symbol(pos))
            .count();
        prop_assert_eq!(matching as u64, 73u64.pow((d - r) as u32));
        prop_assert!(rank_profile(&h).is_ok());
    }
}

#[test]
fn inconsistent_extraction_gives_empty_list() {
    // a word no message comes close to may yield no subspace; decode must
    // still agree with the oracle
    let p = FrsParams::canonical();
    for seed in 0..200 {
        let mut rng = trial_rng(seed, 4);
        let g = mixed_center(&p, 1, &mut rng);
        let out = decode(&p, 2, &g, &DecodeOptions::default()).unwrap();
        if out.subspace.is_none() {
            assert!(out.list.is_empty());
        }
    }
}

#[test]
fn subspace_through_points_contains_them() {
    let p = FrsParams::new(gf13(), 3, 12, 4).unwrap();
    let f = *p.field();
    let pts = [
        Poly::from_u64s(f, &[1, 2, 3, 4]),
        Poly::from_u64s(f, &[0, 0, 1]),
        Poly::from_u64s(f, &[5]),
    ];
    let h = AffineSubspace::through(&p, &pts).unwrap();
    assert_eq!(h.dim(), 2);
    assert!(pts.iter().all(|x| h.contains(x)));
}
