//! Tree-like commutator expressions: leaves are variables or group constants,
//! internal nodes are commutators.
//!
//! Grammar: `expr := var | "#" int | "[" expr "," expr "]"`, variables `x[0-9]+`.

mod satisfy;

pub use satisfy::{
    bp_sequence, bp_set, commutator_set_step, satisfies, value_set, BpSequence, SatOutcome,
    SearchConfig,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::group::FiniteGroup;
use crate::tree::BinaryTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable {name} has no assigned value")]
    MissingVariable { name: String },
    #[error("constant #{index} out of range for group of order {order}")]
    ConstantOutOfRange { index: usize, order: usize },
    #[error("height {height} exceeds cap {cap}")]
    HeightCap { height: usize, cap: usize },
    #[error("value-set enumeration of {size} assignments exceeds internal cap")]
    EnumerationTooLarge { size: u128 },
}

/// Variable name -> element index.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeExpr {
    Var(String),
    Const(usize),
    Comm(Box<TreeExpr>, Box<TreeExpr>),
}

impl TreeExpr {
    pub fn var(name: &str) -> TreeExpr {
        TreeExpr::Var(name.to_string())
    }

    pub fn comm(l: TreeExpr, r: TreeExpr) -> TreeExpr {
        TreeExpr::Comm(Box::new(l), Box::new(r))
    }

    /// Identity constant; the right-hand side of `t ≈ 1` checks.
    pub fn one() -> TreeExpr {
        TreeExpr::Const(0)
    }

    pub fn shape(&self) -> BinaryTree {
        match self {
            TreeExpr::Var(_) | TreeExpr::Const(_) => BinaryTree::Leaf,
            TreeExpr::Comm(l, r) => BinaryTree::caret(l.shape(), r.shape()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeExpr::Var(_) | TreeExpr::Const(_) => 1,
            TreeExpr::Comm(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Distinct variables in order of first occurrence, left to right.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            TreeExpr::Var(v) => {
                if !out.iter().any(|x| x == v) {
                    out.push(v.clone());
                }
            }
            TreeExpr::Const(_) => {}
            TreeExpr::Comm(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn has_repeated_variable(&self) -> bool {
        let mut all = Vec::new();
        self.collect_all_var_occurrences(&mut all);
        let distinct = self.variables().len();
        all.len() != distinct
    }

    fn collect_all_var_occurrences(&self, out: &mut Vec<String>) {
        match self {
            TreeExpr::Var(v) => out.push(v.clone()),
            TreeExpr::Const(_) => {}
            TreeExpr::Comm(l, r) => {
                l.collect_all_var_occurrences(out);
                r.collect_all_var_occurrences(out);
            }
        }
    }

    pub fn evaluate(&self, g: &FiniteGroup, a: &Assignment) -> Result<usize, ExprError> {
        match self {
            TreeExpr::Var(v) => a
                .get(v)
                .copied()
                .ok_or_else(|| ExprError::MissingVariable { name: v.clone() }),
            TreeExpr::Const(c) => {
                if *c >= g.order() {
                    Err(ExprError::ConstantOutOfRange {
                        index: *c,
                        order: g.order(),
                    })
                } else {
                    Ok(*c)
                }
            }
            TreeExpr::Comm(l, r) => {
                Ok(g.commutator(l.evaluate(g, a)?, r.evaluate(g, a)?))
            }
        }
    }

    /// Replaces every occurrence of variable `name` by `replacement`.
    pub fn substitute(&self, name: &str, replacement: &TreeExpr) -> TreeExpr {
        match self {
            TreeExpr::Var(v) if v == name => replacement.clone(),
            TreeExpr::Var(_) | TreeExpr::Const(_) => self.clone(),
            TreeExpr::Comm(l, r) => TreeExpr::comm(
                l.substitute(name, replacement),
                r.substitute(name, replacement),
            ),
        }
    }

    /// Maps constants through a quotient projection; variables untouched.
    pub fn project_constants(&self, proj: &[usize]) -> TreeExpr {
        match self {
            TreeExpr::Var(_) => self.clone(),
            TreeExpr::Const(c) => TreeExpr::Const(proj[*c]),
            TreeExpr::Comm(l, r) => TreeExpr::comm(
                l.project_constants(proj),
                r.project_constants(proj),
            ),
        }
    }
}

impl fmt::Display for TreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeExpr::Var(v) => write!(f, "{}", v),
            TreeExpr::Const(c) => write!(f, "#{}", c),
            TreeExpr::Comm(l, r) => write!(f, "[{},{}]", l, r),
        }
    }
}

/// Labels the leaves of `t` with variables `<prefix>1..<prefix>n`, left to right.
pub fn expr_from_tree(t: &BinaryTree, prefix: &str) -> TreeExpr {
    fn go(t: &BinaryTree, prefix: &str, next: &mut usize) -> TreeExpr {
        match t {
            BinaryTree::Leaf => {
                let e = TreeExpr::Var(format!("{}{}", prefix, *next));
                *next += 1;
                e
            }
            BinaryTree::Caret(l, r) => {
                let le = go(l, prefix, next);
                let re = go(r, prefix, next);
                TreeExpr::comm(le, re)
            }
        }
    }
    let mut next = 1;
    go(t, prefix, &mut next)
}

pub fn parse_expr(text: &str) -> Result<TreeExpr, ExprError> {
    let bytes = text.as_bytes();
    let (e, pos) = parse_at(bytes, 0)?;
    if pos != bytes.len() {
        return Err(ExprError::Syntax {
            offset: pos,
            message: "trailing input".into(),
        });
    }
    Ok(e)
}

fn parse_at(bytes: &[u8], pos: usize) -> Result<(TreeExpr, usize), ExprError> {
    match bytes.get(pos) {
        Some(b'[') => {
            let (l, pos) = parse_at(bytes, pos + 1)?;
            let pos = expect(bytes, pos, b',')?;
            let (r, pos) = parse_at(bytes, pos)?;
            let pos = expect(bytes, pos, b']')?;
            Ok((TreeExpr::comm(l, r), pos))
        }
        Some(b'#') => {
            let (n, pos) = parse_number(bytes, pos + 1)?;
            Ok((TreeExpr::Const(n), pos))
        }
        Some(b'x') => {
            let (n, pos2) = parse_number(bytes, pos + 1)?;
            Ok((TreeExpr::Var(format!("x{}", n)), pos2))
        }
        _ => Err(ExprError::Syntax {
            offset: pos,
            message: "expected '[', '#' or variable".into(),
        }),
    }
}

fn parse_number(bytes: &[u8], pos: usize) -> Result<(usize, usize), ExprError> {
    let mut end = pos;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == pos {
        return Err(ExprError::Syntax {
            offset: pos,
            message: "expected digits".into(),
        });
    }
    let n = std::str::from_utf8(&bytes[pos..end])
        .unwrap()
        .parse()
        .map_err(|_| ExprError::Syntax {
            offset: pos,
            message: "number too large".into(),
        })?;
    Ok((n, end))
}

fn expect(bytes: &[u8], pos: usize, b: u8) -> Result<usize, ExprError> {
    if bytes.get(pos) == Some(&b) {
        Ok(pos + 1)
    } else {
        Err(ExprError::Syntax {
            offset: pos,
            message: format!("expected '{}'", b as char),
        })
    }
}
