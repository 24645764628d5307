//! Coloring constraints on the leaves of a full binary tree.
//!
//! For parameters n, j >= 1 take the full tree of height n*j + 1. Two leaves
//! are constrained when their leaf distance is congruent to 1 mod j. The
//! constraint graph needs more than 2^n colors' worth of witnesses: it
//! contains an explicit clique of size 2^n, so its chromatic number is at
//! least 2^n. With j = 1 every pair of leaves is constrained and the graph is
//! complete.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::FiniteGroup;
use crate::tree::leaf_distance;

/// Exact chromatic number search is limited to this many leaves.
pub const MIN_COLORS_LEAF_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringInstance {
    pub n: usize,
    pub j: usize,
}

impl ColoringInstance {
    pub fn new(n: usize, j: usize) -> Option<ColoringInstance> {
        if n >= 1 && j >= 1 {
            Some(ColoringInstance { n, j })
        } else {
            None
        }
    }

    pub fn height(&self) -> usize {
        self.n * self.j + 1
    }

    pub fn leaf_count(&self) -> usize {
        1usize << self.height()
    }

    /// Whether two leaves are joined by a constraint edge.
    pub fn constrained(&self, i: usize, k: usize) -> bool {
        i != k
            && leaf_distance(self.height(), i, k).expect("leaves in range") % self.j
                == 1 % self.j
    }

    /// Adjacency lists of the constraint graph, indices ascending.
    pub fn constraint_graph(&self) -> Vec<Vec<usize>> {
        let m = self.leaf_count();
        let mut adj = vec![Vec::new(); m];
        for i in 0..m {
            for k in i + 1..m {
                if self.constrained(i, k) {
                    adj[i].push(k);
                    adj[k].push(i);
                }
            }
        }
        adj
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringVerdict {
    Valid,
    Violation { i: usize, k: usize },
}

impl ColoringVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ColoringVerdict::Valid)
    }
}

/// Checks a leaf coloring against the constraints; reports the first
/// violating pair in index order.
pub fn valid_coloring(inst: &ColoringInstance, colors: &[usize]) -> ColoringVerdict {
    assert_eq!(colors.len(), inst.leaf_count());
    for i in 0..colors.len() {
        for k in i + 1..colors.len() {
            if colors[i] == colors[k] && inst.constrained(i, k) {
                return ColoringVerdict::Violation { i, k };
            }
        }
    }
    ColoringVerdict::Valid
}

/// Greedy clique on the constraint graph, used as the initial lower bound.
fn greedy_clique(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u].contains(&v)) {
            clique.push(v);
        }
    }
    clique
}

/// Exact chromatic number by DSATUR branch and bound.
pub fn min_colors(inst: &ColoringInstance) -> usize {
    let m = inst.leaf_count();
    assert!(
        m <= MIN_COLORS_LEAF_CAP,
        "chromatic search capped at {} leaves",
        MIN_COLORS_LEAF_CAP
    );
    let adj = inst.constraint_graph();
    let mut neigh = vec![0u64; m];
    for (v, ns) in adj.iter().enumerate() {
        for &u in ns {
            neigh[v] |= 1 << u;
        }
    }

    let lower = greedy_clique(&adj).len();
    // greedy upper bound in DSATUR order
    let mut best = {
        let mut colors = vec![usize::MAX; m];
        let mut used = 0usize;
        for _ in 0..m {
            let v = (0..m)
                .filter(|&v| colors[v] == usize::MAX)
                .max_by_key(|&v| {
                    let sat: u64 = adj[v]
                        .iter()
                        .filter(|&&u| colors[u] != usize::MAX)
                        .map(|&u| 1u64 << colors[u])
                        .fold(0, |a, b| a | b);
                    (sat.count_ones(), adj[v].len())
                })
                .unwrap();
            let taken: u64 = adj[v]
                .iter()
                .filter(|&&u| colors[u] != usize::MAX)
                .map(|&u| 1u64 << colors[u])
                .fold(0, |a, b| a | b);
            let c = (0..m).find(|&c| taken >> c & 1 == 0).unwrap();
            colors[v] = c;
            used = used.max(c + 1);
        }
        used
    };
    if best == lower {
        return best;
    }

    fn branch(
        neigh: &[u64],
        colors: &mut [usize],
        colored: usize,
        used: usize,
        best: &mut usize,
        lower: usize,
    ) {
        if used >= *best {
            return;
        }
        let m = neigh.len();
        if colored == m {
            *best = used;
            return;
        }
        // most saturated uncolored vertex, ties by degree
        let v = (0..m)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| {
                let mut sat = 0u64;
                let mut bits = neigh[v];
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if colors[u] != usize::MAX {
                        sat |= 1 << colors[u];
                    }
                }
                (sat.count_ones(), neigh[v].count_ones())
            })
            .unwrap();
        let mut taken = 0u64;
        let mut bits = neigh[v];
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if colors[u] != usize::MAX {
                taken |= 1 << colors[u];
            }
        }
        let limit = (used + 1).min(*best - 1);
        for c in 0..limit {
            if taken >> c & 1 != 0 {
                continue;
            }
            colors[v] = c;
            branch(neigh, colors, colored + 1, used.max(c + 1), best, lower);
            colors[v] = usize::MAX;
            if *best == lower {
                return;
            }
        }
    }

    let mut colors = vec![usize::MAX; m];
    branch(&neigh, &mut colors, 0, 0, &mut best, lower);
    best
}

/// An explicit clique of size 2^n: built recursively from the leftmost and
/// rightmost subtrees of height (n-1)*j + 1. Cross pairs sit at distance
/// n*j + 1, which is 1 mod j.
pub fn proof_clique(inst: &ColoringInstance) -> Vec<usize> {
    fn build(n: usize, j: usize) -> Vec<usize> {
        if n == 0 {
            return vec![0];
        }
        let h = n * j + 1;
        let sub = build(n - 1, j);
        let right_offset = (1usize << h) - (1usize << ((n - 1) * j + 1));
        let mut out = sub.clone();
        out.extend(sub.iter().map(|&i| i + right_offset));
        out
    }
    build(inst.n, inst.j)
}

/// Confirms the proof clique is a genuine clique, giving the 2^n lower bound.
pub fn verify_lower_bound(inst: &ColoringInstance) -> bool {
    let clique = proof_clique(inst);
    if clique.len() != 1 << inst.n {
        return false;
    }
    for (a, &i) in clique.iter().enumerate() {
        for &k in &clique[a + 1..] {
            if !inst.constrained(i, k) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedLabelWitness {
    pub i: usize,
    pub k: usize,
    pub label: usize,
    pub distance: usize,
}

/// When 2^n exceeds the group order, every labeling of the leaves by group
/// elements has two equal labels at a constrained distance. Checks `trials`
/// seeded random labelings and returns a witness for each.
pub fn repeated_label_tree_check(
    g: &FiniteGroup,
    inst: &ColoringInstance,
    trials: usize,
    seed: u64,
) -> Option<Vec<RepeatedLabelWitness>> {
    assert!(
        (1usize << inst.n) > g.order(),
        "pigeonhole needs 2^n > |G|"
    );
    let h = inst.height();
    let m = inst.leaf_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let labels: Vec<usize> = (0..m).map(|_| rng.gen_range(0..g.order())).collect();
        let mut found = None;
        'scan: for i in 0..m {
            for k in i + 1..m {
                if labels[i] == labels[k] && inst.constrained(i, k) {
                    found = Some(RepeatedLabelWitness {
                        i,
                        k,
                        label: labels[i],
                        distance: leaf_distance(h, i, k).expect("distinct in-range leaves"),
                    });
                    break 'scan;
                }
            }
        }
        out.push(found?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    #[test]
    fn j_one_gives_complete_graph() {
        let inst = ColoringInstance::new(1, 1).unwrap();
        // height 2, 4 leaves, every pair constrained
        let adj = inst.constraint_graph();
        assert!(adj.iter().all(|ns| ns.len() == 3));
        assert_eq!(min_colors(&inst), 4);
    }

    #[test]
    fn small_chromatic_numbers_meet_lower_bound() {
        for (n, j) in [(1, 1), (2, 1), (1, 2), (1, 3), (1, 4), (2, 2), (1, 5)] {
            let inst = ColoringInstance::new(n, j).unwrap();
            if inst.leaf_count() > MIN_COLORS_LEAF_CAP {
                continue;
            }
            let chi = min_colors(&inst);
            assert!(
                chi >= 1 << n,
                "chi({},{}) = {} below 2^{}",
                n,
                j,
                chi,
                n
            );
        }
    }

    #[test]
    fn proof_clique_is_clique() {
        for n in 1..=4usize {
            for j in 1..=4usize {
                if n * j + 1 > 12 {
                    continue;
                }
                let inst = ColoringInstance::new(n, j).unwrap();
                assert!(verify_lower_bound(&inst), "n={} j={}", n, j);
            }
        }
    }

    #[test]
    fn clique_examples() {
        // n=1, j=1: height 2, first leaf of leftmost and rightmost subtrees
        let inst = ColoringInstance::new(1, 1).unwrap();
        assert_eq!(proof_clique(&inst), vec![0, 2]);
        // n=2, j=1: height 3
        let inst = ColoringInstance::new(2, 1).unwrap();
        assert_eq!(proof_clique(&inst), vec![0, 2, 4, 6]);
    }

    #[test]
    fn valid_coloring_matches_naive_check() {
        for (n, j) in [(1, 1), (2, 1), (1, 2), (1, 3)] {
            let inst = ColoringInstance::new(n, j).unwrap();
            let m = inst.leaf_count();
            if m > 32 {
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..50 {
                let palette = rng.gen_range(1..=m);
                let colors: Vec<usize> =
                    (0..m).map(|_| rng.gen_range(0..palette)).collect();
                let verdict = valid_coloring(&inst, &colors);
                let naive_ok = (0..m).all(|i| {
                    (i + 1..m).all(|k| {
                        colors[i] != colors[k] || !inst.constrained(i, k)
                    })
                });
                assert_eq!(verdict.is_valid(), naive_ok);
                if let ColoringVerdict::Violation { i, k } = verdict {
                    assert_eq!(colors[i], colors[k]);
                    assert!(inst.constrained(i, k));
                }
            }
        }
    }

    #[test]
    fn constraint_is_mirror_symmetric() {
        for (n, j) in [(1, 2), (2, 1), (1, 3)] {
            let inst = ColoringInstance::new(n, j).unwrap();
            let m = inst.leaf_count();
            for i in 0..m {
                for k in 0..m {
                    if i == k {
                        continue;
                    }
                    let (mi, mk) = (m - 1 - i, m - 1 - k);
                    assert_eq!(inst.constrained(i, k), inst.constrained(mi, mk));
                }
            }
        }
    }

    #[test]
    fn repeated_labels_forced_beyond_group_order() {
        let z2 = builtin("cyclic(2)").unwrap();
        // 2^2 = 4 > 2 = |Z2|, height 3
        let inst = ColoringInstance::new(2, 1).unwrap();
        let witnesses = repeated_label_tree_check(&z2, &inst, 25, 3).unwrap();
        assert_eq!(witnesses.len(), 25);
        for w in &witnesses {
            assert!(w.distance % 1 == 0);
            assert!(inst.constrained(w.i, w.k));
        }

        let z3 = builtin("cyclic(3)").unwrap();
        let inst = ColoringInstance::new(2, 2).unwrap();
        let witnesses = repeated_label_tree_check(&z3, &inst, 10, 9).unwrap();
        for w in &witnesses {
            assert_eq!(w.distance % 2, 1);
        }
    }
}
