//! Elements of Thompson's group F as tree pairs: common expansion, reduction,
//! multiplication via least common refinement, inversion and equivalence.
//!
//! Text format: `<tree> ; <tree>`.

use std::fmt;

use crate::tree::{parse_tree, BinaryTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("leaf count mismatch: {left} vs {right}")]
    LeafCountMismatch { left: usize, right: usize },
    #[error("expansion plan has duplicate leaf index {index}")]
    DuplicatePlanIndex { index: usize },
    #[error("expansion plan index {index} out of range for pair with {leaf_count} leaves")]
    PlanIndexOutOfRange { index: usize, leaf_count: usize },
    #[error("pair text must be '<tree> ; <tree>'")]
    MissingSeparator,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// An ordered pair of trees with equal leaf counts: one instance of the
/// generalized associative law, and a representative of an element of F.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePair {
    source: BinaryTree,
    target: BinaryTree,
}

/// Grafts applied identically to both trees of a pair. Applied by descending
/// leaf index so earlier grafts do not shift later indices.
#[derive(Debug, Clone, Default)]
pub struct ExpansionPlan {
    grafts: Vec<(usize, BinaryTree)>,
}

impl ExpansionPlan {
    pub fn new(mut grafts: Vec<(usize, BinaryTree)>) -> Result<Self, PairError> {
        grafts.sort_by(|a, b| b.0.cmp(&a.0));
        for w in grafts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(PairError::DuplicatePlanIndex { index: w[0].0 });
            }
        }
        Ok(ExpansionPlan { grafts })
    }

    pub fn is_empty(&self) -> bool {
        self.grafts.is_empty()
    }
}

impl TreePair {
    pub fn new(source: BinaryTree, target: BinaryTree) -> Result<Self, PairError> {
        let (l, r) = (source.leaf_count(), target.leaf_count());
        if l != r {
            return Err(PairError::LeafCountMismatch { left: l, right: r });
        }
        Ok(TreePair { source, target })
    }

    pub fn identity() -> Self {
        TreePair {
            source: BinaryTree::Leaf,
            target: BinaryTree::Leaf,
        }
    }

    /// The pair encoding the 3-variable associative law: `((*,*),*) ; (*,(*,*))`.
    pub fn generator() -> Self {
        TreePair {
            source: crate::tree::left_vine(2),
            target: parse_tree("(*,(*,*))").unwrap(),
        }
    }

    pub fn source(&self) -> &BinaryTree {
        &self.source
    }

    pub fn target(&self) -> &BinaryTree {
        &self.target
    }

    pub fn leaf_count(&self) -> usize {
        self.source.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.source.is_leaf() && self.target.is_leaf()
    }

    pub fn expand(&self, plan: &ExpansionPlan) -> Result<TreePair, PairError> {
        let n = self.leaf_count();
        let mut s = self.source.clone();
        let mut t = self.target.clone();
        for (i, sub) in &plan.grafts {
            if *i >= n {
                return Err(PairError::PlanIndexOutOfRange {
                    index: *i,
                    leaf_count: n,
                });
            }
            s = s.graft(*i, sub)?;
            t = t.graft(*i, sub)?;
        }
        Ok(TreePair { source: s, target: t })
    }

    /// Removes matching free carets (same leaf index in both trees) until none
    /// remains. The result is the unique reduced representative of the class.
    pub fn reduce(&self) -> TreePair {
        let mut s = self.source.clone();
        let mut t = self.target.clone();
        loop {
            let fs = s.free_carets();
            let ft = t.free_carets();
            let common = fs.iter().find(|i| ft.contains(i)).copied();
            match common {
                Some(i) => {
                    s = s.remove_free_caret(i).expect("free caret present");
                    t = t.remove_free_caret(i).expect("free caret present");
                }
                None => break,
            }
        }
        TreePair { source: s, target: t }
    }

    pub fn is_reduced(&self) -> bool {
        let fs = self.source.free_carets();
        let ft = self.target.free_carets();
        !fs.iter().any(|i| ft.contains(i))
    }

    pub fn invert(&self) -> TreePair {
        TreePair {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// Group multiplication: expand both pairs so the middle trees agree (least
    /// common refinement), then reduce `(source of self, target of other)`.
    pub fn multiply(&self, other: &TreePair) -> TreePair {
        let mid = common_refinement(&self.target, &other.source);
        let s = transfer_expansion(&self.source, &self.target, &mid);
        let t = transfer_expansion(&other.target, &other.source, &mid);
        TreePair { source: s, target: t }.reduce()
    }

    pub fn equivalent(&self, other: &TreePair) -> bool {
        self.reduce() == other.reduce()
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.source, self.target)
    }
}

pub fn parse_pair(text: &str) -> Result<TreePair, PairError> {
    let (a, b) = text.split_once(';').ok_or(PairError::MissingSeparator)?;
    TreePair::new(parse_tree(a.trim())?, parse_tree(b.trim())?)
}

/// Smallest common expansion of two trees.
fn common_refinement(a: &BinaryTree, b: &BinaryTree) -> BinaryTree {
    match (a, b) {
        (BinaryTree::Leaf, _) => b.clone(),
        (_, BinaryTree::Leaf) => a.clone(),
        (BinaryTree::Caret(al, ar), BinaryTree::Caret(bl, br)) => {
            BinaryTree::caret(common_refinement(al, bl), common_refinement(ar, br))
        }
    }
}

/// `expanded` is an expansion of `base`; applies the same per-leaf grafts to
/// `mirror` (which has the same leaf count as `base`).
fn transfer_expansion(mirror: &BinaryTree, base: &BinaryTree, expanded: &BinaryTree) -> BinaryTree {
    let mut hangs = Vec::new();
    collect_hangs(base, expanded, &mut hangs);
    let mut out = mirror.clone();
    for (i, sub) in hangs.into_iter().enumerate().rev() {
        if !sub.is_leaf() {
            out = out.graft(i, &sub).expect("leaf counts agree");
        }
    }
    out
}

fn collect_hangs(base: &BinaryTree, expanded: &BinaryTree, out: &mut Vec<BinaryTree>) {
    match (base, expanded) {
        (BinaryTree::Leaf, _) => out.push(expanded.clone()),
        (BinaryTree::Caret(bl, br), BinaryTree::Caret(el, er)) => {
            collect_hangs(bl, el, out);
            collect_hangs(br, er, out);
        }
        _ => panic!("not an expansion"),
    }
}
