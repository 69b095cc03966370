use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use penrose_core::exact::{gn_sign, GoldenNumber};
use penrose_core::robinson::{seed, HalfKind, Seed};
use penrose_core::tilingspace::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force_count(n: u32) -> u64 {
    (0u32..1 << n).filter(|x| x & (x >> 1) == 0).count() as u64
}

/// φ^{-k} = (−1)^k (F(k+1) − F(k)·φ).
fn phi_inverse_power(k: u32) -> GoldenNumber {
    let (mut f, mut g) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..k {
        let next = &f + &g;
        f = std::mem::replace(&mut g, next);
    }
    // Now f = F(k), g = F(k+1).
    let sign = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
    GoldenNumber::new(BigRational::from_integer(&sign * g), BigRational::from_integer(-sign * f))
}

fn random_admissible(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let bit = if out.last() == Some(&1) { 0 } else { rng.gen_range(0..2) };
        out.push(bit);
    }
    out
}

#[test]
fn admissible_counts_are_fibonacci() {
    for n in 0..=12 {
        assert_eq!(count_admissible(n).unwrap(), brute_force_count(n), "n = {n}");
    }
    for n in 0..=20 {
        assert_eq!(count_admissible(n).unwrap(), fibonacci(n + 2));
    }
    assert_eq!(count_admissible(64).unwrap(), fibonacci(66));
}

#[test]
fn tower_counts_match_string_counts() {
    for n in 0..=8 {
        let acute = towers(HalfKind::Acute, n);
        let obtuse = towers(HalfKind::Obtuse, n);
        assert_eq!(acute.len() as u64, fibonacci(2 * n as u32 + 2));
        assert_eq!(obtuse.len() as u64, fibonacci(2 * n as u32 + 1));
        let codes: BTreeSet<Vec<u8>> = acute.iter().map(|t| tower_to_sequence(t).unwrap()).collect();
        assert_eq!(codes.len(), acute.len(), "codes are distinct");
    }
}

#[test]
fn round_trip_over_all_shallow_towers() {
    for depth in 0..=6 {
        for root in [HalfKind::Acute, HalfKind::Obtuse] {
            for t in towers(root, depth) {
                let bits = tower_to_sequence(&t).unwrap();
                assert!(is_admissible(&bits));
                assert_eq!(bits.len(), 2 * depth);
                assert_eq!(sequence_to_tower_rooted(&bits, root).unwrap(), t);
                if root == HalfKind::Acute {
                    assert_eq!(sequence_to_tower(&bits).unwrap(), t);
                }
            }
        }
    }
}

#[test]
fn every_admissible_even_string_decodes() {
    for n in 0..=5 {
        let len = 2 * n;
        for x in 0u32..1 << len {
            let bits: Vec<u8> = (0..len).map(|i| ((x >> i) & 1) as u8).collect();
            let decoded = sequence_to_tower(&bits);
            assert_eq!(decoded.is_ok(), is_admissible(&bits));
            if let Ok(t) = decoded {
                assert_eq!(tower_to_sequence(&t).unwrap(), bits);
            }
        }
    }
}

#[test]
fn realized_towers_are_geometrically_nested() {
    let root = seed(Seed::Acute).tiles()[0];
    for t in towers(HalfKind::Acute, 4) {
        let chain = t.realize(&root).unwrap();
        for k in 0..t.depth() {
            assert!(chain[k + 1].children().contains(&chain[k]));
        }
    }
}

#[test]
fn density_construction_for_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let plen = rng.gen_range(0..=12);
        let p = random_admissible(&mut rng, plen);
        let ylen = rng.gen_range(0..10);
        let yprefix = random_admissible(&mut rng, ylen);
        let period = loop {
            let len = rng.gen_range(0..6);
            let cand = random_admissible(&mut rng, len);
            if IndexSequence::new(yprefix.clone(), cand.clone()).is_ok() {
                break cand;
            }
        };
        let y = IndexSequence::new(yprefix, period).unwrap();
        let x = y.with_prefix(&p).unwrap();
        assert!(x.is_admissible());
        assert_eq!(&x.prefix()[..p.len()], p.as_slice());
        assert!(tails_equivalent(&x, &y));
        // Agreement from index |p| + 1 on, checked bit by bit over a long horizon.
        for n in p.len() + 1..p.len() + 60 {
            assert_eq!(x.bit(n), y.bit(n));
        }
    }
}

#[test]
fn tail_equivalence_is_an_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seqs = Vec::new();
    while seqs.len() < 30 {
        let plen = rng.gen_range(0..5);
        let prefix = random_admissible(&mut rng, plen);
        let period = [vec![], vec![0, 1], vec![1, 0], vec![0, 0, 1], vec![0, 1, 0, 1]][rng.gen_range(0..5)].clone();
        if let Ok(s) = IndexSequence::new(prefix, period) {
            seqs.push(s);
        }
    }
    for a in &seqs {
        assert!(tails_equivalent(a, a));
        for b in &seqs {
            assert_eq!(tails_equivalent(a, b), tails_equivalent(b, a));
            // Oracle: compare a long window far out.
            let far = (100..200).all(|n| a.bit(n) == b.bit(n));
            assert_eq!(tails_equivalent(a, b), far);
        }
    }
}

#[test]
fn trace_normalization_is_exact() {
    for n in 0..=90 {
        let (da, d_o) = bratteli_dimensions(n).unwrap();
        assert_eq!((da, d_o), (fibonacci(n + 2), fibonacci(n + 1)));
        let (wa, wo) = trace_weights(n).unwrap();
        assert_eq!(wa, phi_inverse_power(n + 1));
        assert_eq!(wo, phi_inverse_power(n + 2));
        assert_eq!(gn_sign(&wa), 1);
        assert_eq!(gn_sign(&wo), 1);
        let total = &(&GoldenNumber::from_ints(da as i64, 0) * &wa) + &(&GoldenNumber::from_ints(d_o as i64, 0) * &wo);
        assert_eq!(total, GoldenNumber::one(), "n = {n}");
        if n < 90 {
            // The weights are a trace: w(n) = inclusion · w(n+1).
            let (na, no) = trace_weights(n + 1).unwrap();
            assert_eq!(wa, &na + &no);
            assert_eq!(wo, na);
        }
    }
}

proptest! {
    #[test]
    fn encoding_is_always_admissible(root_obtuse in any::<bool>(), raw in prop::collection::vec(0u8..3, 0..20)) {
        let root = if root_obtuse { HalfKind::Obtuse } else { HalfKind::Acute };
        // Clamp positions to the ones available under each parent, top down.
        let mut positions = raw.clone();
        let mut parent = root;
        for p in positions.iter_mut().rev() {
            if parent == HalfKind::Obtuse {
                *p %= 2;
            }
            parent = match (parent, *p) {
                (HalfKind::Acute, 2) | (HalfKind::Obtuse, 1) => HalfKind::Obtuse,
                _ => HalfKind::Acute,
            };
        }
        let t = Tower::new(root, positions).unwrap();
        let bits = tower_to_sequence(&t).unwrap();
        prop_assert!(is_admissible(&bits));
        prop_assert_eq!(sequence_to_tower_rooted(&bits, root).unwrap(), t);
    }

    #[test]
    fn cantor_distance_is_an_ultrametric(a in prop::collection::vec(0u8..2, 0..12),
                                         b in prop::collection::vec(0u8..2, 0..12),
                                         c in prop::collection::vec(0u8..2, 0..12)) {
        let mk = |v: Vec<u8>| {
            let v: Vec<u8> = v.iter().enumerate().map(|(i, &x)| if i > 0 && v[i - 1] == 1 { 0 } else { x }).collect();
            IndexSequence::new(v, vec![]).unwrap()
        };
        let (x, y, z) = (mk(a), mk(b), mk(c));
        let d = |p: &IndexSequence, q: &IndexSequence| cantor_distance(p, q, 16);
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
    }
}
