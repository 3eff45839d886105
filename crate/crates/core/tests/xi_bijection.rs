use std::collections::{BTreeMap, BTreeSet, HashSet};

use qcrystal::character::positive_roots;
use qcrystal::limit::limit_generator;
use qcrystal::weight::Weight;
use qcrystal::xi::{enumerate_lowest, find_consecutions, xi_forward, xi_inverse, Root};

fn subsets(n: usize, max: usize) -> Vec<BTreeSet<Root>> {
    let roots: Vec<Root> = positive_roots(n).into_iter().map(|(i, j)| Root { i, j }).collect();
    (0u32..1 << roots.len())
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..roots.len()).filter(|k| m >> k & 1 == 1).map(|k| roots[k]).collect())
        .collect()
}

#[test]
fn rank_five_round_trip() {
    let mut seen = HashSet::new();
    for b in subsets(5, 10) {
        let t = xi_forward(&b, 5).unwrap_or_else(|e| panic!("{b:?}: {e}"));
        assert!(t.is_lowest_weight());
        let wt = b.iter().fold(limit_generator(5).wt(), |w, r| &w + &r.weight(5));
        assert_eq!(t.wt(), wt, "{b:?}");
        assert_eq!(xi_inverse(&t).unwrap_or_else(|e| panic!("{b:?}: {e}")), b);
        assert!(seen.insert(t), "{b:?} collides");
    }
}

// Number of subsets of positive roots with the given weight, by direct count.
fn subset_sums(n: usize) -> BTreeMap<Weight, usize> {
    let mut m = BTreeMap::new();
    for b in subsets(n, usize::MAX) {
        let w = b.iter().fold(Weight::zero(n), |w, r| &w + &r.weight(n));
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

#[test]
fn lowest_weight_counts_match_subset_sums() {
    for (n, d) in [(2, 6), (3, 6)] {
        let lowest = enumerate_lowest(n, d, 100_000).unwrap();
        let sums = subset_sums(n);
        for (w, ts) in &lowest {
            assert_eq!(ts.len(), sums.get(w).copied().unwrap_or(0), "n={n} {w}");
        }
        for (w, &c) in &sums {
            if w.height().unwrap() <= d as i64 {
                assert_eq!(lowest.get(w).map_or(0, Vec::len), c, "n={n} {w}");
            }
        }
    }
}

#[test]
fn image_is_every_lowest_weight_element() {
    for (n, d) in [(3, 6), (4, 5)] {
        let lowest = enumerate_lowest(n, d, 1_000_000).unwrap();
        let mut want: Vec<_> = lowest.into_values().flatten().collect();
        want.sort();
        let mut got: Vec<_> = subsets(n, usize::MAX)
            .iter()
            .map(|b| xi_forward(b, n).unwrap())
            .filter(|t| t.wt().height().unwrap() <= d as i64)
            .collect();
        got.sort();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn single_root_leaves_one_consecution() {
    for n in 2..=6 {
        for j in 2..=n {
            for i in 1..j {
                let t = xi_forward(&[Root { i, j }].into_iter().collect(), n).unwrap();
                let hits = find_consecutions(&t).into_iter().filter(|c| c.k == j && c.i <= i).count();
                assert_eq!(hits, 1, "n={n} {i}-{j}: {}", t.tableau());
            }
        }
    }
}
