//! Deciding eventual satisfaction of associativity instances, reduced-pair
//! surveys, the Levi consistency check and the solvability harness.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::expr::{
    bp_sequence, expr_from_tree, satisfies, Assignment, SatOutcome, SearchConfig, TreeExpr,
};
use crate::group::{FiniteGroup, Subset};
use crate::pair::{PairError, TreePair};
use crate::tree::all_trees;

pub const DEFAULT_MAX_LEAVES_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("max leaves {requested} exceeds cap {cap}")]
    LeavesCapExceeded { requested: usize, cap: usize },
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// One failing level of a No certificate: a distinct B_p set together with a
/// counterexample assignment for the reduced pair over that set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailedLevel {
    pub level: usize,
    pub set: Subset,
    pub counterexample: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventualVerdict {
    /// The reduced pair is satisfied over B_p(G) for this least p; the group
    /// therefore satisfies the common expansion by full trees of height p.
    Yes { witness_p: usize },
    /// Every distinct set in the B_p sequence fails, so no expansion at all
    /// is satisfied. One counterexample per set allows independent re-checks.
    No { certificate: Vec<FailedLevel> },
    BudgetExceeded,
}

impl EventualVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, EventualVerdict::Yes { .. })
    }
}

/// Variable-labelled sides of a pair: x1..xn left to right on each tree.
pub fn exprs_for_pair(p: &TreePair) -> (TreeExpr, TreeExpr) {
    (
        expr_from_tree(p.source(), "x"),
        expr_from_tree(p.target(), "x"),
    )
}

/// Decides whether G eventually satisfies the instance represented by `p`:
/// reduces the pair, then walks the B_p sequence. Satisfaction over B_q(G) is
/// equivalent to satisfaction of the expansion hanging full trees of height q
/// from every leaf, and the sequence's eventual cycle makes the search finite.
pub fn eventually_satisfies(
    g: &FiniteGroup,
    p: &TreePair,
    cfg: &SearchConfig,
) -> EventualVerdict {
    let reduced = p.reduce();
    if reduced.is_identity() {
        return EventualVerdict::Yes { witness_p: 0 };
    }
    let (s, t) = exprs_for_pair(&reduced);
    let seq = bp_sequence(g);
    let mut certificate = Vec::new();
    for (q, set) in seq.distinct().iter().enumerate() {
        match satisfies(g, set, &s, &t, &cfg.derive(q as u64)) {
            SatOutcome::Holds => return EventualVerdict::Yes { witness_p: q },
            SatOutcome::Fails(a) => certificate.push(FailedLevel {
                level: q,
                set: set.clone(),
                counterexample: a,
            }),
            SatOutcome::BudgetExceeded => return EventualVerdict::BudgetExceeded,
        }
    }
    EventualVerdict::No { certificate }
}

/// Checks the pair as given (no reduction) over all of G.
pub fn check_instance_direct(g: &FiniteGroup, p: &TreePair, cfg: &SearchConfig) -> SatOutcome {
    let (s, t) = exprs_for_pair(p);
    satisfies(g, &g.full_subset(), &s, &t, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviReport {
    /// The 3-variable law holds directly for the commutator operation.
    pub direct_assoc: SatOutcome,
    /// Nilpotency class <= 2, computed independently from the series.
    pub class_le_2: bool,
}

impl LeviReport {
    /// Levi: direct associativity iff nilpotent of class <= 2.
    pub fn consistent(&self) -> Option<bool> {
        match &self.direct_assoc {
            SatOutcome::BudgetExceeded => None,
            out => Some(out.holds() == self.class_le_2),
        }
    }
}

pub fn levi_check(g: &FiniteGroup, cfg: &SearchConfig) -> LeviReport {
    LeviReport {
        direct_assoc: check_instance_direct(g, &TreePair::generator(), cfg),
        class_le_2: g.nilpotency_class().map_or(false, |c| c <= 2),
    }
}

/// All non-identity reduced pairs with at most `max_leaves` leaves, ordered by
/// leaf count then lexicographically on the rendered trees.
pub fn enumerate_reduced_pairs(
    max_leaves: usize,
    cap: usize,
) -> Result<Vec<TreePair>, DecideError> {
    if max_leaves > cap {
        return Err(DecideError::LeavesCapExceeded {
            requested: max_leaves,
            cap,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_leaves {
        let trees = all_trees(n);
        let mut pairs: Vec<TreePair> = Vec::new();
        for s in &trees {
            for t in &trees {
                let p = TreePair::new(s.clone(), t.clone()).expect("equal leaf counts");
                if p.is_reduced() && !p.is_identity() {
                    pairs.push(p);
                }
            }
        }
        pairs.sort_by_key(|p| (p.source().to_string(), p.target().to_string()));
        out.extend(pairs);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SurveyEntry {
    pub pair: TreePair,
    pub verdict: EventualVerdict,
}

#[derive(Debug, Clone)]
pub struct SurveyReport {
    pub group: String,
    pub max_leaves: usize,
    pub entries: Vec<SurveyEntry>,
}

impl SurveyReport {
    pub fn count_yes(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict.is_yes()).count()
    }

    pub fn count_no(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, EventualVerdict::No { .. }))
            .count()
    }

    pub fn count_budget(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, EventualVerdict::BudgetExceeded))
            .count()
    }

    /// One line per pair, plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "survey group={} max-leaves={}",
            self.group, self.max_leaves
        );
        for e in &self.entries {
            let _ = writeln!(out, "{}", render_entry_text(e));
        }
        let _ = writeln!(
            out,
            "summary pairs={} yes={} no={} budget-exceeded={}",
            self.entries.len(),
            self.count_yes(),
            self.count_no(),
            self.count_budget()
        );
        out
    }

    /// Stable key=value records, one per pair.
    pub fn render_structured(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{}", render_entry_structured(e));
        }
        out
    }
}

fn render_assignment(a: &Assignment) -> String {
    let parts: Vec<String> = a.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
    parts.join(",")
}

fn render_entry_text(e: &SurveyEntry) -> String {
    match &e.verdict {
        EventualVerdict::Yes { witness_p } => {
            format!("{} : eventually satisfied, witness p={}", e.pair, witness_p)
        }
        EventualVerdict::No { certificate } => {
            let first = certificate
                .first()
                .map(|l| format!(" counterexample[p={}]: {}", l.level, render_assignment(&l.counterexample)))
                .unwrap_or_default();
            format!("{} : not satisfied at any level;{}", e.pair, first)
        }
        EventualVerdict::BudgetExceeded => format!("{} : budget exceeded", e.pair),
    }
}

fn render_entry_structured(e: &SurveyEntry) -> String {
    match &e.verdict {
        EventualVerdict::Yes { witness_p } => {
            format!("pair={} outcome=yes witness_p={}", quote(&e.pair.to_string()), witness_p)
        }
        EventualVerdict::No { certificate } => {
            let ce = certificate
                .first()
                .map(|l| render_assignment(&l.counterexample))
                .unwrap_or_default();
            format!(
                "pair={} outcome=no counterexample={}",
                quote(&e.pair.to_string()),
                quote(&ce)
            )
        }
        EventualVerdict::BudgetExceeded => {
            format!("pair={} outcome=budget-exceeded", quote(&e.pair.to_string()))
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s)
}

/// Runs `eventually_satisfies` on every enumerated reduced pair. Pairs are
/// independent work items; results are assembled in enumeration order, so the
/// report does not depend on scheduling.
pub fn assoc_survey(
    g: &FiniteGroup,
    max_leaves: usize,
    cap: usize,
    cfg: &SearchConfig,
) -> Result<SurveyReport, DecideError> {
    let pairs = enumerate_reduced_pairs(max_leaves, cap)?;
    let entries: Vec<SurveyEntry> = pairs
        .into_par_iter()
        .enumerate()
        .map(|(i, pair)| {
            let verdict = eventually_satisfies(g, &pair, &cfg.derive(i as u64 * 1000));
            SurveyEntry { pair, verdict }
        })
        .collect();
    Ok(SurveyReport {
        group: g.name().to_string(),
        max_leaves,
        entries,
    })
}

#[derive(Debug, Clone)]
pub struct TheoremGroupResult {
    pub group: String,
    pub solvable: bool,
    pub any_yes: bool,
    pub any_budget: bool,
    /// any surveyed Yes implies solvability
    pub consistent: bool,
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub max_leaves: usize,
    pub groups: Vec<TheoremGroupResult>,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.groups.iter().all(|g| g.consistent)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let _ = writeln!(
                out,
                "{}: solvable={} any-yes={} consistent={}{}",
                g.group,
                g.solvable,
                g.any_yes,
                g.consistent,
                if g.any_budget { " (budget exceeded on some pairs)" } else { "" }
            );
        }
        let _ = writeln!(out, "main-theorem-check: {}", if self.pass() { "pass" } else { "FAIL" });
        out
    }
}

/// Desk-scale check of "some instance satisfied implies solvable": surveys
/// each group and verifies that a Yes only ever occurs for solvable groups.
pub fn verify_main_theorem(
    groups: &[FiniteGroup],
    max_leaves: usize,
    cap: usize,
    cfg: &SearchConfig,
) -> Result<TheoremReport, DecideError> {
    let mut results = Vec::new();
    for g in groups {
        let survey = assoc_survey(g, max_leaves, cap, cfg)?;
        let any_yes = survey.count_yes() > 0;
        let solvable = g.is_solvable();
        results.push(TheoremGroupResult {
            group: g.name().to_string(),
            solvable,
            any_yes,
            any_budget: survey.count_budget() > 0,
            consistent: !any_yes || solvable,
        });
    }
    Ok(TheoremReport {
        max_leaves,
        groups: results,
    })
}
