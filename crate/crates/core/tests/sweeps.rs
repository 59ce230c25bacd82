use skelcode::bits::BitVector;
use skelcode::evalcode::{hamming_weight, skeleton_code, skeleton_row};
use skelcode::formulas::{
    b_weight, closed_dimension, closed_length, conjecture_distance, row_weight,
    theorem_main_distance, upper_bound_distance, weight_sum_rows_j1, IndexConvention, SigmaFamily,
};
use skelcode::params::{min_distance, DistanceOptions};
use skelcode::simplicial::{subsets_of_size, Face};

#[test]
fn dimension_and_length_match_closed_forms() {
    for ell in 1..=8 {
        for h in 0..=ell {
            for j in 0..=h {
                let code = skeleton_code(ell, h, j).unwrap();
                assert_eq!(code.n() as i128, closed_length(ell, h).unwrap());
                assert_eq!(
                    code.generator().rank() as i128,
                    closed_dimension(ell, j).unwrap(),
                    "K({ell},{h},{j})"
                );
            }
        }
    }
}

#[test]
fn block_entries_are_inclusion() {
    for (ell, h, j) in [(4, 3, 2), (5, 3, 3), (6, 2, 2)] {
        let code = skeleton_code(ell, h, j).unwrap();
        let g = code.generator();
        for (r, m) in code.monomials().iter().enumerate() {
            let sigma = m.support();
            for (c, p) in code.points().iter().enumerate() {
                let tau = Face::from_mask(
                    p.iter()
                        .enumerate()
                        .filter(|(_, &x)| x == 1)
                        .fold(0, |acc, (i, _)| acc | 1 << i),
                );
                assert_eq!(g.get(r, c) == 1, sigma.is_subset_of(tau));
            }
            assert_eq!(g.row_weight(r) as i128, row_weight(ell, h, sigma.len()));
        }
        let layout = code.blocks().unwrap();
        for b in layout.blocks() {
            let block = code.block(b.r, b.s).unwrap();
            if b.r > b.s {
                assert!(block.is_zero());
            }
            if b.r == b.s {
                for i in 0..block.rows() {
                    assert_eq!(block.row_weight(i), 1);
                }
            }
        }
        assert!(code
            .points()
            .windows(2)
            .all(|w| hamming_weight(&w[0]) <= hamming_weight(&w[1])));
    }
}

#[test]
fn degree_one_distance_for_small_ell() {
    let opts = DistanceOptions::default();
    for ell in 1..=9 {
        for h in 1..=ell {
            let code = skeleton_code(ell, h, 1).unwrap();
            let d = min_distance(code.generator(), &opts).unwrap().d;
            assert_eq!(
                d as i128,
                theorem_main_distance(ell, h).unwrap(),
                "K({ell},{h},1)"
            );
        }
    }
}

#[test]
fn top_degree_distance_is_one() {
    let opts = DistanceOptions::default();
    for ell in 1..=6 {
        for h in 1..=ell {
            let code = skeleton_code(ell, h, h).unwrap();
            if code.generator().rank() <= 26 {
                assert_eq!(min_distance(code.generator(), &opts).unwrap().d, 1);
            }
        }
    }
}

#[test]
fn distance_respects_row_bound_and_matches_from_zero() {
    let opts = DistanceOptions::default();
    for ell in 2..=6 {
        for h in 2..=ell {
            for j in 2..h {
                let code = skeleton_code(ell, h, j).unwrap();
                if code.generator().rank() > 22 {
                    continue;
                }
                let d = min_distance(code.generator(), &opts).unwrap().d as i128;
                assert!(d <= upper_bound_distance(ell, h, j).unwrap());
                assert_eq!(
                    d,
                    conjecture_distance(ell, h, j, IndexConvention::FromZero).unwrap(),
                    "K({ell},{h},{j})"
                );
            }
        }
    }
}

#[test]
fn degree_one_row_sums_agree_three_ways() {
    for ell in 1..=8 {
        for h in 1..=ell {
            for s in 1..=ell {
                let singletons: Vec<Face> = (1..=s).map(Face::singleton).collect();
                let fam = SigmaFamily::new(ell, h, singletons.clone()).unwrap();
                let mut acc = BitVector::zeros(closed_length(ell, h).unwrap() as usize);
                for f in &singletons {
                    acc.xor_assign(&skeleton_row(ell, h, *f));
                }
                let formula = weight_sum_rows_j1(ell, h, s).unwrap();
                assert_eq!(formula, b_weight(&fam));
                assert_eq!(formula, acc.weight() as i128);
            }
        }
    }
}

#[test]
fn b_weight_full_enumeration_small() {
    // every family of up to three distinct supports over [4]
    let ell = 4;
    let all: Vec<Face> = (0..=ell).flat_map(|k| subsets_of_size(ell, k)).collect();
    for h in 0..=ell {
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                for c in b + 1..all.len() {
                    let sets = vec![all[a], all[b], all[c]];
                    let mut acc = skeleton_row(ell, h, sets[0]);
                    acc.xor_assign(&skeleton_row(ell, h, sets[1]));
                    acc.xor_assign(&skeleton_row(ell, h, sets[2]));
                    let fam = SigmaFamily::new(ell, h, sets).unwrap();
                    assert_eq!(b_weight(&fam), acc.weight() as i128);
                }
            }
        }
    }
}
