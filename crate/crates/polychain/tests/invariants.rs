//! Cross-module properties: ranking equivalences, symmetry closure, and
//! randomized structural checks.

use std::collections::BTreeMap;

use proptest::prelude::*;

use polychain::{
    chi_direct, enumerate_chains, psi, x0, Alpha, CanonicalKey, Cell, ChainRecord,
    EnumerationRequest, ExchangeMove, LengthVector, PolyominoChain, PsiDelta, Turn, TurnSequence,
};

fn alpha(v: f64) -> Alpha {
    Alpha::new(v).unwrap()
}

const SAMPLE_ALPHAS: [f64; 7] = [-8.0, -5.46343, -3.09997, -2.0, -0.5, 0.5, 2.0];

fn omega_records(n: usize) -> Vec<ChainRecord> {
    enumerate_chains(&EnumerationRequest::new(n).omega_only(true)).unwrap()
}

/// Ranking by chi and ranking by psi pick the same extremal chains: the two
/// differ by a quantity depending only on n and alpha.
#[test]
fn chi_and_psi_rankings_agree() {
    for n in [4usize, 6, 7, 9] {
        let records = omega_records(n);
        for a in SAMPLE_ALPHAS {
            let chis: Vec<f64> = records
                .iter()
                .map(|r| chi_direct(&r.realize().unwrap(), alpha(a)))
                .collect();
            let psis: Vec<f64> = records
                .iter()
                .map(|r| psi(&r.length_vector, alpha(a)).unwrap())
                .collect();
            let chi_max = chis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let psi_max = psis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let chi_min = chis.iter().copied().fold(f64::INFINITY, f64::min);
            let psi_min = psis.iter().copied().fold(f64::INFINITY, f64::min);
            let scale = chi_max.abs().max(1e-300);
            let chi_tol = 1e-9 * scale;
            let psi_tol = 1e-9 * scale;
            let argmax_chi: Vec<usize> =
                (0..records.len()).filter(|&i| chi_max - chis[i] <= chi_tol).collect();
            let argmax_psi: Vec<usize> =
                (0..records.len()).filter(|&i| psi_max - psis[i] <= psi_tol).collect();
            assert_eq!(argmax_chi, argmax_psi, "argmax n={n} alpha={a}");
            let argmin_chi: Vec<usize> =
                (0..records.len()).filter(|&i| chis[i] - chi_min <= chi_tol).collect();
            let argmin_psi: Vec<usize> =
                (0..records.len()).filter(|&i| psis[i] - psi_min <= psi_tol).collect();
            assert_eq!(argmin_chi, argmin_psi, "argmin n={n} alpha={a}");
        }
    }
}

/// The canonical key partitions chains into classes of equal chi at every
/// sampled exponent.
#[test]
fn canonical_classes_have_constant_chi() {
    for n in [5usize, 7] {
        let raw = enumerate_chains(&EnumerationRequest::new(n).dedupe(false)).unwrap();
        let mut by_key: BTreeMap<CanonicalKey, Vec<ChainRecord>> = BTreeMap::new();
        for rec in raw {
            by_key.entry(rec.key.clone()).or_default().push(rec);
        }
        for (key, group) in by_key {
            for a in SAMPLE_ALPHAS {
                let values: Vec<f64> = group
                    .iter()
                    .map(|r| chi_direct(&r.realize().unwrap(), alpha(a)))
                    .collect();
                let spread = values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
                    - values.iter().copied().fold(f64::INFINITY, f64::min);
                assert!(
                    spread <= 1e-12 * values[0].abs().max(1.0),
                    "key {key} at alpha {a}: spread {spread}"
                );
            }
        }
    }
}

/// Chains in the omega collection sharing a length vector (up to reversal)
/// have identical chi everywhere.
#[test]
fn equal_length_vectors_give_equal_chi_in_omega() {
    for n in [6usize, 8] {
        let mut by_lv: BTreeMap<Vec<usize>, Vec<ChainRecord>> = BTreeMap::new();
        for rec in omega_records(n) {
            by_lv
                .entry(rec.length_vector.reversal_canonical().lengths().to_vec())
                .or_default()
                .push(rec);
        }
        for (lv, group) in by_lv.iter().filter(|(_, g)| g.len() > 1) {
            for a in SAMPLE_ALPHAS {
                let values: Vec<f64> = group
                    .iter()
                    .map(|r| chi_direct(&r.realize().unwrap(), alpha(a)))
                    .collect();
                for v in &values {
                    assert!(
                        (v - values[0]).abs() <= 1e-12 * values[0].abs().max(1.0),
                        "lv {lv:?} alpha {a}"
                    );
                }
            }
        }
    }
}

/// Applying any of the 8 square symmetries, with or without path reversal,
/// never changes the canonical key. The transforms here are written out
/// independently of the library's internals.
#[test]
fn all_sixteen_images_share_the_key() {
    let transforms: [fn(Cell) -> Cell; 8] = [
        |c| c,
        |c| Cell::new(-c.y, c.x),
        |c| Cell::new(-c.x, -c.y),
        |c| Cell::new(c.y, -c.x),
        |c| Cell::new(-c.x, c.y),
        |c| Cell::new(c.x, -c.y),
        |c| Cell::new(c.y, c.x),
        |c| Cell::new(-c.y, -c.x),
    ];
    for rec in enumerate_chains(&EnumerationRequest::new(7).dedupe(false)).unwrap() {
        let chain = rec.realize().unwrap();
        for t in transforms {
            for reverse in [false, true] {
                let mut cells: Vec<Cell> = chain.cells().iter().map(|&c| t(c)).collect();
                if reverse {
                    cells.reverse();
                }
                let image = PolyominoChain::from_cells(cells).unwrap();
                assert_eq!(image.canonical_key(), rec.key);
                assert_eq!(image.is_in_omega(), rec.in_omega);
            }
        }
    }
}

/// The zigzag sits strictly below the linear chain at and below x0.
#[test]
fn zigzag_psi_below_linear_psi_at_negative_alpha() {
    for n in 4..=10 {
        let zig = LengthVector::new(vec![2; n - 1]).unwrap();
        let lin = LengthVector::new(vec![n]).unwrap();
        let mut a = -12.0;
        while a <= x0() {
            assert!(
                psi(&zig, alpha(a)).unwrap() < psi(&lin, alpha(a)).unwrap(),
                "n={n} alpha={a}"
            );
            a += 0.05;
        }
    }
}

/// Degree-4 vertices appear exactly at kinks, across everything enumerable.
#[test]
fn degree_four_count_equals_kink_count_everywhere() {
    for n in 3..=10 {
        for rec in enumerate_chains(&EnumerationRequest::new(n)).unwrap() {
            let chain = rec.realize().unwrap();
            let kinks = rec.turns.turns().iter().filter(|&&t| t != Turn::Straight).count();
            let deg4 = chain.degrees().values().filter(|&&d| d == 4).count();
            assert_eq!(kinks, deg4, "n={n} {}", rec.turns.turn_string());
        }
    }
}

fn turn_strategy() -> impl Strategy<Value = Vec<Turn>> {
    prop::collection::vec(prop_oneof![Just(Turn::Straight), Just(Turn::Left), Just(Turn::Right)], 0..=10)
}

fn length_vector_strategy() -> impl Strategy<Value = LengthVector> {
    prop::collection::vec(2usize..=6, 1..=5).prop_map(|mut lengths| {
        if lengths.len() == 1 {
            lengths[0] = lengths[0].max(1);
        }
        LengthVector::new(lengths).unwrap()
    })
}

proptest! {
    /// Any turn sequence that realizes at all satisfies the structural
    /// counts and reproduces its own encoding.
    #[test]
    fn realizable_walks_satisfy_structure(turns in turn_strategy()) {
        let n = turns.len() + 2;
        let t = TurnSequence::new(n, turns).unwrap();
        if let Ok(chain) = PolyominoChain::from_turns(&t) {
            prop_assert_eq!(chain.vertices().len(), 2 * n + 2);
            prop_assert_eq!(chain.edges().len(), 3 * n + 1);
            let lv = chain.length_vector();
            prop_assert_eq!(lv.n(), n);
            let s = lv.segment_count();
            let total: usize = lv.lengths().iter().sum();
            prop_assert_eq!(total, n + s - 1);
            prop_assert_eq!(chain.turn_sequence(), t);
        }
    }

    /// The staircase realization reproduces any length vector and lands in
    /// the omega collection.
    #[test]
    fn staircase_realization_round_trips(lv in length_vector_strategy()) {
        let t = TurnSequence::from_length_vector(&lv);
        let chain = PolyominoChain::from_turns(&t).unwrap();
        prop_assert_eq!(chain.length_vector(), lv);
        prop_assert!(chain.is_in_omega());
    }

    /// Every applicable move's stated delta agrees with the recomputed
    /// indicator difference, and moves preserve the square count.
    #[test]
    fn move_deltas_agree(lv in length_vector_strategy()) {
        for mv in ExchangeMove::enumerate_applicable(&lv) {
            let moved = mv.apply(&lv).unwrap();
            prop_assert_eq!(moved.n(), lv.n());
            prop_assert_eq!(mv.expected_delta(&lv).unwrap(), PsiDelta::between(&moved, &lv));
        }
    }
}
