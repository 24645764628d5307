//! Rooted ordered binary trees: the carrier for parenthesizations, tree pairs
//! and leaf colorings.
//!
//! Text format: `tree := "*" | "(" tree "," tree ")"`.

use std::fmt;

/// Default guard against accidentally materializing huge full trees.
pub const DEFAULT_HEIGHT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("leaf index {index} out of range for tree with {leaf_count} leaves")]
    LeafIndexOutOfRange { index: usize, leaf_count: usize },
    #[error("height {height} exceeds cap {cap}")]
    HeightCapExceeded { height: usize, cap: usize },
    #[error("leaf distance requires two distinct leaves")]
    EqualLeaves,
    #[error("leaf index {index} out of range for full tree of height {height}")]
    LeafOutOfFullTree { index: usize, height: usize },
    #[error("vine spec needs {expected} turns, got {got}")]
    BadVineSpec { expected: usize, got: usize },
}

/// A rooted ordered binary tree. Leaves are indexed 0..leaf_count-1 in
/// left-to-right depth-first order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Caret(Box<BinaryTree>, Box<BinaryTree>),
}

/// One step down from a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    L,
    R,
}

/// A path from the root, addressing a vertex.
pub type LeafPath = Vec<Turn>;

/// A vine of height `n` has exactly one free caret and `n + 1` leaves.
/// `turns[i]` says whether, at level `i + 1` above the free caret, the vine
/// continues as the left or right child of the new caret (bottom to top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VineSpec {
    pub height: usize,
    pub turns: Vec<Turn>,
}

impl VineSpec {
    pub fn new(height: usize, turns: Vec<Turn>) -> Result<Self, TreeError> {
        if height == 0 || turns.len() != height - 1 {
            return Err(TreeError::BadVineSpec {
                expected: height.saturating_sub(1),
                got: turns.len(),
            });
        }
        Ok(VineSpec { height, turns })
    }

    pub fn left(height: usize) -> Self {
        VineSpec {
            height,
            turns: vec![Turn::L; height - 1],
        }
    }
}

impl BinaryTree {
    pub fn caret(left: BinaryTree, right: BinaryTree) -> BinaryTree {
        BinaryTree::Caret(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Caret(l, r) => 1 + l.height().max(r.height()),
        }
    }

    pub fn subtree_at(&self, path: &[Turn]) -> Option<&BinaryTree> {
        let mut cur = self;
        for t in path {
            match cur {
                BinaryTree::Leaf => return None,
                BinaryTree::Caret(l, r) => {
                    cur = match t {
                        Turn::L => l,
                        Turn::R => r,
                    }
                }
            }
        }
        Some(cur)
    }

    /// Replaces the leaf with the given index by `sub`.
    pub fn graft(&self, leaf: usize, sub: &BinaryTree) -> Result<BinaryTree, TreeError> {
        let n = self.leaf_count();
        if leaf >= n {
            return Err(TreeError::LeafIndexOutOfRange {
                index: leaf,
                leaf_count: n,
            });
        }
        Ok(self.graft_inner(leaf, sub))
    }

    fn graft_inner(&self, leaf: usize, sub: &BinaryTree) -> BinaryTree {
        match self {
            BinaryTree::Leaf => sub.clone(),
            BinaryTree::Caret(l, r) => {
                let nl = l.leaf_count();
                if leaf < nl {
                    BinaryTree::caret(l.graft_inner(leaf, sub), (**r).clone())
                } else {
                    BinaryTree::caret((**l).clone(), r.graft_inner(leaf - nl, sub))
                }
            }
        }
    }

    /// Leaf indices `i` such that leaves `i`, `i + 1` are the two children of
    /// one caret, in left-to-right order.
    pub fn free_carets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_free_carets(0, &mut out);
        out
    }

    fn collect_free_carets(&self, offset: usize, out: &mut Vec<usize>) {
        if let BinaryTree::Caret(l, r) = self {
            if l.is_leaf() && r.is_leaf() {
                out.push(offset);
            } else {
                l.collect_free_carets(offset, out);
                r.collect_free_carets(offset + l.leaf_count(), out);
            }
        }
    }

    /// Removes the free caret whose left child is leaf `i`, replacing it by a
    /// single leaf. Returns `None` when there is no free caret at `i`.
    pub fn remove_free_caret(&self, i: usize) -> Option<BinaryTree> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Caret(l, r) => {
                if l.is_leaf() && r.is_leaf() {
                    return if i == 0 { Some(BinaryTree::Leaf) } else { None };
                }
                let nl = l.leaf_count();
                if i + 1 < nl + 1 && i < nl {
                    // caret must lie entirely in the left subtree
                    if i + 1 < nl {
                        l.remove_free_caret(i)
                            .map(|nl2| BinaryTree::caret(nl2, (**r).clone()))
                    } else {
                        None
                    }
                } else {
                    r.remove_free_caret(i - nl)
                        .map(|nr| BinaryTree::caret((**l).clone(), nr))
                }
            }
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => write!(f, "*"),
            BinaryTree::Caret(l, r) => write!(f, "({},{})", l, r),
        }
    }
}

pub fn parse_tree(text: &str) -> Result<BinaryTree, TreeError> {
    let bytes = text.as_bytes();
    let (tree, pos) = parse_at(bytes, 0)?;
    if pos != bytes.len() {
        return Err(TreeError::Syntax {
            offset: pos,
            message: "trailing input".into(),
        });
    }
    Ok(tree)
}

fn parse_at(bytes: &[u8], pos: usize) -> Result<(BinaryTree, usize), TreeError> {
    match bytes.get(pos) {
        Some(b'*') => Ok((BinaryTree::Leaf, pos + 1)),
        Some(b'(') => {
            let (l, pos) = parse_at(bytes, pos + 1)?;
            expect(bytes, pos, b',')?;
            let (r, pos) = parse_at(bytes, pos + 1)?;
            expect(bytes, pos, b')')?;
            Ok((BinaryTree::caret(l, r), pos + 1))
        }
        _ => Err(TreeError::Syntax {
            offset: pos,
            message: "expected '*' or '('".into(),
        }),
    }
}

fn expect(bytes: &[u8], pos: usize, b: u8) -> Result<(), TreeError> {
    if bytes.get(pos) == Some(&b) {
        Ok(())
    } else {
        Err(TreeError::Syntax {
            offset: pos,
            message: format!("expected '{}'", b as char),
        })
    }
}

pub fn render_tree(t: &BinaryTree) -> String {
    t.to_string()
}

/// The full binary tree of height `h`: 2^h leaves, all at depth `h`.
pub fn full_tree(h: usize) -> Result<BinaryTree, TreeError> {
    full_tree_capped(h, DEFAULT_HEIGHT_CAP)
}

pub fn full_tree_capped(h: usize, cap: usize) -> Result<BinaryTree, TreeError> {
    if h > cap {
        return Err(TreeError::HeightCapExceeded { height: h, cap });
    }
    let mut t = BinaryTree::Leaf;
    for _ in 0..h {
        t = BinaryTree::caret(t.clone(), t);
    }
    Ok(t)
}

/// Builds the vine described by `spec`, bottom up from its free caret.
pub fn make_vine(spec: &VineSpec) -> BinaryTree {
    let mut t = BinaryTree::caret(BinaryTree::Leaf, BinaryTree::Leaf);
    for turn in &spec.turns {
        t = match turn {
            Turn::L => BinaryTree::caret(t, BinaryTree::Leaf),
            Turn::R => BinaryTree::caret(BinaryTree::Leaf, t),
        };
    }
    t
}

/// The vine of height `n` whose free caret holds the two leftmost leaves.
pub fn left_vine(n: usize) -> BinaryTree {
    assert!(n >= 1, "left vine needs height >= 1");
    make_vine(&VineSpec::left(n))
}

/// Distance between two distinct leaves of the full tree of height `h`:
/// the number of edges from either leaf up to their closest common ancestor.
pub fn leaf_distance(h: usize, i: usize, k: usize) -> Result<usize, TreeError> {
    if i == k {
        return Err(TreeError::EqualLeaves);
    }
    let total = 1usize << h;
    for idx in [i, k] {
        if idx >= total {
            return Err(TreeError::LeafOutOfFullTree { index: idx, height: h });
        }
    }
    let x = i ^ k;
    Ok(usize::BITS as usize - x.leading_zeros() as usize)
}

/// All trees with `n` leaves, in deterministic order: left subtree size
/// ascending, then recursively.
pub fn all_trees(n: usize) -> Vec<BinaryTree> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![BinaryTree::Leaf];
    }
    let mut out = Vec::new();
    for i in 1..n {
        for l in all_trees(i) {
            for r in all_trees(n - i) {
                out.push(BinaryTree::caret(l.clone(), r));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinaryTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("*"), BinaryTree::Leaf);
        assert_eq!(
            t("((*,*),*)"),
            BinaryTree::caret(
                BinaryTree::caret(BinaryTree::Leaf, BinaryTree::Leaf),
                BinaryTree::Leaf
            )
        );
        assert_eq!(t("((*,*),*)").leaf_count(), 3);
        // right tree of the generator pair
        assert_eq!(t("(*,(*,*))").leaf_count(), 3);
    }

    #[test]
    fn parse_errors_carry_offset() {
        match parse_tree("(*,*") {
            Err(TreeError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected: {:?}", other),
        }
        match parse_tree("(*,*))") {
            Err(TreeError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected: {:?}", other),
        }
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_tree(&BinaryTree::Leaf), "*");
        assert_eq!(render_tree(&full_tree(1).unwrap()), "(*,*)");
        assert_eq!(render_tree(&left_vine(2)), "((*,*),*)");
    }

    #[test]
    fn full_tree_examples() {
        assert_eq!(full_tree(0).unwrap(), BinaryTree::Leaf);
        assert_eq!(full_tree(1).unwrap(), t("(*,*)"));
        let f3 = full_tree(3).unwrap();
        assert_eq!(f3.leaf_count(), 8);
        assert_eq!(f3.height(), 3);
        assert!(matches!(
            full_tree(99),
            Err(TreeError::HeightCapExceeded { .. })
        ));
    }

    #[test]
    fn vines() {
        let v1 = make_vine(&VineSpec::new(1, vec![]).unwrap());
        assert_eq!(v1, t("(*,*)"));
        assert_eq!(left_vine(1), t("(*,*)"));
        assert_eq!(left_vine(2), t("((*,*),*)"));
        // height-5 vine with turns bottom-to-top R,R,L,R
        let v5 = make_vine(&VineSpec::new(5, vec![Turn::R, Turn::R, Turn::L, Turn::R]).unwrap());
        assert_eq!(v5, t("(*,((*,(*,(*,*))),*))"));
        assert_eq!(v5.free_carets().len(), 1);
        assert_eq!(v5.leaf_count(), 6);
        assert_eq!(v5.height(), 5);
        // all-left turns give the left vine
        let l5 = make_vine(&VineSpec::new(5, vec![Turn::L; 4]).unwrap());
        assert_eq!(l5, left_vine(5));
    }

    #[test]
    fn vine_invariant_all_shapes() {
        for n in 1..=5usize {
            for bits in 0..(1u32 << (n - 1)) {
                let turns: Vec<Turn> = (0..n - 1)
                    .map(|i| if bits >> i & 1 == 0 { Turn::L } else { Turn::R })
                    .collect();
                let v = make_vine(&VineSpec::new(n, turns).unwrap());
                assert_eq!(v.leaf_count(), n + 1);
                assert_eq!(v.height(), n);
                assert_eq!(v.free_carets().len(), 1);
            }
        }
    }

    #[test]
    fn graft_examples() {
        let s = t("(*,(*,*))");
        assert_eq!(BinaryTree::Leaf.graft(0, &s).unwrap(), s);
        assert_eq!(t("(*,*)").graft(1, &t("(*,*)")).unwrap(), t("(*,(*,*))"));
        // hanging t1,t2,t3 onto the three leaves of the left tree
        let (t1, t2, t3) = (t("(*,*)"), t("((*,*),*)"), t("*"));
        let base = t("((*,*),*)");
        let expanded = base
            .graft(2, &t3)
            .unwrap()
            .graft(1, &t2)
            .unwrap()
            .graft(0, &t1)
            .unwrap();
        assert_eq!(expanded, t("(((*,*),((*,*),*)),*)"));
        assert!(matches!(
            base.graft(3, &t1),
            Err(TreeError::LeafIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn free_carets_examples() {
        assert_eq!(BinaryTree::Leaf.free_carets(), Vec::<usize>::new());
        assert_eq!(t("((*,*),(*,*))").free_carets(), vec![0, 2]);
        assert_eq!(left_vine(3).free_carets(), vec![0]);
    }

    #[test]
    fn remove_free_caret_roundtrip() {
        for n in 1..=6 {
            for tree in all_trees(n) {
                for i in tree.free_carets() {
                    let removed = tree.remove_free_caret(i).unwrap();
                    assert_eq!(removed.leaf_count(), n - 1);
                    let back = removed.graft(i, &t("(*,*)")).unwrap();
                    assert_eq!(back, tree);
                }
                // non-free positions yield None
                let free = tree.free_carets();
                for i in 0..n {
                    if !free.contains(&i) {
                        assert_eq!(tree.remove_free_caret(i), None);
                    }
                }
            }
        }
    }

    /// LCA-walk oracle for leaf distance in the full tree of height `h`.
    fn leaf_distance_oracle(h: usize, i: usize, k: usize) -> usize {
        // ancestor at depth d of leaf i is i >> (h - d)
        for up in 1..=h {
            if i >> up == k >> up {
                return up;
            }
        }
        unreachable!()
    }

    #[test]
    fn leaf_distance_examples() {
        assert_eq!(leaf_distance(3, 0, 1).unwrap(), 1);
        assert_eq!(leaf_distance(3, 0, 7).unwrap(), 3);
        // derived via the ancestor-walk oracle
        assert_eq!(leaf_distance_oracle(4, 3, 5), 3);
        assert_eq!(leaf_distance(4, 3, 5).unwrap(), 3);
        assert!(matches!(leaf_distance(3, 2, 2), Err(TreeError::EqualLeaves)));
        assert!(matches!(
            leaf_distance(3, 0, 8),
            Err(TreeError::LeafOutOfFullTree { .. })
        ));
    }

    #[test]
    fn leaf_distance_matches_lca_walk() {
        for h in 1..=10usize {
            let n = 1usize << h;
            for i in 0..n {
                for k in 0..n {
                    if i != k {
                        assert_eq!(leaf_distance(h, i, k).unwrap(), leaf_distance_oracle(h, i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn cross_subtree_leaves_at_distance_h() {
        for h in 1..=6usize {
            let half = 1usize << (h - 1);
            for i in 0..half {
                for k in half..(1 << h) {
                    assert_eq!(leaf_distance(h, i, k).unwrap(), h);
                }
            }
        }
    }

    #[test]
    fn catalan_counts() {
        // C_0..C_6 = 1,1,2,5,14,42,132
        let expected = [1usize, 1, 2, 5, 14, 42, 132];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(all_trees(n + 1).len(), *want);
        }
    }

    #[test]
    fn parse_render_roundtrip_exhaustive() {
        for n in 1..=12 {
            if n > 8 {
                // Catalan growth; spot the two largest sizes more cheaply
                for tree in all_trees(n).into_iter().step_by(17) {
                    assert_eq!(parse_tree(&render_tree(&tree)).unwrap(), tree);
                }
            } else {
                for tree in all_trees(n) {
                    assert_eq!(parse_tree(&render_tree(&tree)).unwrap(), tree);
                }
            }
        }
    }

    #[test]
    fn subtree_at_paths() {
        let tree = t("((*,*),(*,(*,*)))");
        assert_eq!(tree.subtree_at(&[]), Some(&tree));
        assert_eq!(tree.subtree_at(&[Turn::L, Turn::R]), Some(&BinaryTree::Leaf));
        assert_eq!(
            tree.subtree_at(&[Turn::R, Turn::R]),
            Some(&t("(*,*)"))
        );
        assert_eq!(tree.subtree_at(&[Turn::L, Turn::L, Turn::L]), None);
    }
}
