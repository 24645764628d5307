//! Satisfaction search, value sets and the B_p machinery.
//!
//! Exhaustive search enumerates assignments as a mixed-radix counter over the
//! member list of X in ascending index order, so verdicts and reported
//! counterexamples are deterministic. A seeded sampling pre-pass runs first on
//! large spaces; it can only fail fast, never accept.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Assignment, ExprError, TreeExpr};
use crate::group::{FiniteGroup, Subset};
use crate::tree::DEFAULT_HEIGHT_CAP;

const VALUE_SET_ENUM_CAP: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Seed for the sampling pre-pass.
    pub seed: u64,
    /// Max number of exhaustive evaluations before giving up.
    pub budget: u64,
    /// Spaces larger than this get a sampling pre-pass.
    pub sample_threshold: u64,
    /// Number of sampled assignments in the pre-pass.
    pub samples: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            budget: 10_000_000_000,
            sample_threshold: 1_000_000,
            samples: 10_000,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..SearchConfig::default()
        }
    }

    /// Derives an independent stream for a numbered work item, keeping
    /// reports identical regardless of scheduling.
    pub fn derive(&self, stream: u64) -> Self {
        SearchConfig {
            seed: self
                .seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(stream),
            ..self.clone()
        }
    }
}

/// Outcome of a satisfaction search. `BudgetExceeded` is reported rather than
/// ever returning a silently unverified `Holds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Holds,
    Fails(Assignment),
    BudgetExceeded,
}

impl SatOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, SatOutcome::Holds)
    }
}

/// Expression compiled against a fixed variable order: variables become slots
/// into a flat assignment buffer.
enum Compiled {
    Slot(usize),
    Const(usize),
    Comm(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn build(e: &TreeExpr, vars: &[String]) -> Compiled {
        match e {
            TreeExpr::Var(v) => {
                let slot = vars.iter().position(|x| x == v).expect("var listed");
                Compiled::Slot(slot)
            }
            TreeExpr::Const(c) => Compiled::Const(*c),
            TreeExpr::Comm(l, r) => Compiled::Comm(
                Box::new(Compiled::build(l, vars)),
                Box::new(Compiled::build(r, vars)),
            ),
        }
    }

    fn eval(&self, g: &FiniteGroup, values: &[usize]) -> usize {
        match self {
            Compiled::Slot(i) => values[*i],
            Compiled::Const(c) => *c,
            Compiled::Comm(l, r) => g.commutator(l.eval(g, values), r.eval(g, values)),
        }
    }
}

fn shared_variables(s: &TreeExpr, t: &TreeExpr) -> Vec<String> {
    let mut vars = s.variables();
    for v in t.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars
}

/// True iff every substitution of members of `x` for the variables makes the
/// two sides equal. Same variable name means same substituted value.
pub fn satisfies(
    g: &FiniteGroup,
    x: &Subset,
    s: &TreeExpr,
    t: &TreeExpr,
    cfg: &SearchConfig,
) -> SatOutcome {
    let vars = shared_variables(s, t);
    let domain = x.to_vec();
    let cs = Compiled::build(s, &vars);
    let ct = Compiled::build(t, &vars);
    if vars.is_empty() {
        return if cs.eval(g, &[]) == ct.eval(g, &[]) {
            SatOutcome::Holds
        } else {
            SatOutcome::Fails(Assignment::new())
        };
    }
    if domain.is_empty() {
        return SatOutcome::Holds; // no assignments to check
    }
    let total = (domain.len() as u128).pow(vars.len() as u32);

    if total > cfg.sample_threshold as u128 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut values = vec![0usize; vars.len()];
        for _ in 0..cfg.samples {
            for v in values.iter_mut() {
                *v = domain[rng.gen_range(0..domain.len())];
            }
            if cs.eval(g, &values) != ct.eval(g, &values) {
                return SatOutcome::Fails(to_assignment(&vars, &values));
            }
        }
    }
    if total > cfg.budget as u128 {
        return SatOutcome::BudgetExceeded;
    }

    // lexicographic mixed-radix enumeration; first failure is the least one
    let mut idx = vec![0usize; vars.len()];
    let mut values: Vec<usize> = vec![domain[0]; vars.len()];
    loop {
        if cs.eval(g, &values) != ct.eval(g, &values) {
            return SatOutcome::Fails(to_assignment(&vars, &values));
        }
        // increment from the least significant (last) position
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return SatOutcome::Holds;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < domain.len() {
                values[pos] = domain[idx[pos]];
                break;
            }
            idx[pos] = 0;
            values[pos] = domain[0];
        }
    }
}

fn to_assignment(vars: &[String], values: &[usize]) -> Assignment {
    vars.iter().cloned().zip(values.iter().copied()).collect()
}

/// The set of all values of `e` under substitutions from `x`. Expressions
/// whose variables are pairwise distinct are evaluated compositionally;
/// repeated variables fall back to assignment enumeration.
pub fn value_set(e: &TreeExpr, g: &FiniteGroup, x: &Subset) -> Result<Subset, ExprError> {
    if !e.has_repeated_variable() {
        return Ok(value_set_distinct(e, g, x));
    }
    let vars = e.variables();
    let domain = x.to_vec();
    if domain.is_empty() && !vars.is_empty() {
        return Ok(Subset::empty());
    }
    let total = (domain.len().max(1) as u128).pow(vars.len() as u32);
    if total > VALUE_SET_ENUM_CAP {
        return Err(ExprError::EnumerationTooLarge { size: total });
    }
    let compiled = Compiled::build(e, &vars);
    let mut out = Subset::empty();
    let mut idx = vec![0usize; vars.len()];
    let mut values: Vec<usize> = vec![*domain.first().unwrap_or(&0); vars.len()];
    loop {
        out.insert(compiled.eval(g, &values));
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < domain.len() {
                values[pos] = domain[idx[pos]];
                break;
            }
            idx[pos] = 0;
            values[pos] = domain[0];
        }
    }
}

fn value_set_distinct(e: &TreeExpr, g: &FiniteGroup, x: &Subset) -> Subset {
    match e {
        TreeExpr::Var(_) => x.clone(),
        TreeExpr::Const(c) => Subset::singleton(*c),
        TreeExpr::Comm(l, r) => {
            let vl = value_set_distinct(l, g, x);
            let vr = value_set_distinct(r, g, x);
            let mut out = Subset::empty();
            for a in vl.iter() {
                for b in vr.iter() {
                    out.insert(g.commutator(a, b));
                }
            }
            out
        }
    }
}

/// {[a,b] : a, b in s}
pub fn commutator_set_step(g: &FiniteGroup, s: &Subset) -> Subset {
    let mut out = Subset::empty();
    for a in s.iter() {
        for b in s.iter() {
            out.insert(g.commutator(a, b));
        }
    }
    out
}

/// B_p(G): the value set of the full-tree commutator expression of height p
/// over all of G. B_0(G) = G; B_{p+1} = {[a,b] : a,b in B_p}.
pub fn bp_set(g: &FiniteGroup, p: usize) -> Result<Subset, ExprError> {
    if p > DEFAULT_HEIGHT_CAP {
        return Err(ExprError::HeightCap {
            height: p,
            cap: DEFAULT_HEIGHT_CAP,
        });
    }
    let mut s = g.full_subset();
    for _ in 0..p {
        s = commutator_set_step(g, &s);
    }
    Ok(s)
}

/// The B_p sequence up to and including its first repeat.
#[derive(Debug, Clone)]
pub struct BpSequence {
    /// B_0, B_1, ...; the final entry equals `sets[cycle_start]`.
    pub sets: Vec<Subset>,
    /// Index of the earlier occurrence of the repeated set.
    pub cycle_start: usize,
}

impl BpSequence {
    /// The distinct sets of the sequence (everything before the repeat).
    pub fn distinct(&self) -> &[Subset] {
        &self.sets[..self.sets.len() - 1]
    }
}

/// Iterates B_{p+1} = {[a,b] : a,b in B_p} until a set repeats an earlier one.
/// Terminates because subsets of a finite group are finite.
pub fn bp_sequence(g: &FiniteGroup) -> BpSequence {
    let mut sets = vec![g.full_subset()];
    loop {
        let next = commutator_set_step(g, sets.last().unwrap());
        if let Some(at) = sets.iter().position(|s| *s == next) {
            sets.push(next);
            return BpSequence {
                sets,
                cycle_start: at,
            };
        }
        sets.push(next);
    }
}
