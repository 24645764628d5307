//! Commutator arithmetic in finite groups and tree-pair arithmetic in
//! Thompson's group F: expression evaluation, decision procedures for
//! eventual satisfaction of tree-pair identities, vine rewriting into
//! left-vine form, and leaf-coloring bounds.

pub mod coloring;
pub mod decide;
pub mod expr;
pub mod group;
pub mod pair;
pub mod tree;
pub mod vine;

pub use decide::{eventually_satisfies, EventualVerdict};
pub use expr::{parse_expr, Assignment, SatOutcome, SearchConfig, TreeExpr};
pub use group::{builtin, FiniteGroup, Subset};
pub use pair::TreePair;
pub use tree::{parse_tree, BinaryTree, Turn, VineSpec};
