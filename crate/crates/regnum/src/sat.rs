//! Monotone not-all-equal formulas: evaluation, exact satisfiability, the
//! (2,3)-clause cubic-occurrence validity check, and the normalization that
//! rewrites any monotone NAE 3-SAT instance into one where every variable
//! occurs exactly three times.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

pub type Var = usize;
/// A clause is a set of 2 or 3 distinct variables, stored sorted. A clause
/// is NAE-satisfied when it contains both a true and a false variable; for
/// 2-clauses that is plain inequality.
pub type Clause = Vec<Var>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause {index} has size {size}, only 2 or 3 allowed")]
    ClauseSize { index: usize, size: usize },
    #[error("clause {index} repeats variable {var}")]
    DuplicateInClause { index: usize, var: Var },
    #[error("clause {index} references variable {var} outside 0..{count}")]
    VarOutOfRange {
        index: usize,
        var: Var,
        count: usize,
    },
    #[error("variable {var} occurs in no clause")]
    UnusedVariable { var: Var },
    #[error("{count} variables exceed the brute-force cap of {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("negative literal {literal} on line {line}: monotone formulas admit none")]
    NegativeLiteral { line: usize, literal: i64 },
    #[error("malformed input at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("variable {var} occurs {count} times; the patch applies to 1 or 2 occurrences")]
    PatchOccurrence { var: Var, count: usize },
    #[error("equality chain needs at least 4 slots, got {k}")]
    ChainTooShort { k: usize },
    #[error("clause {index} has size {size}; normalization expects pure 3-clauses")]
    NotThreeSat { index: usize, size: usize },
}

/// A multiset of monotone clauses of size 2 or 3. Negations are not
/// representable. Every variable occurs in at least one clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneFormula {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl MonotoneFormula {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        let mut occurs = vec![false; variable_count];
        let mut normalized = Vec::with_capacity(clauses.len());
        for (index, mut clause) in clauses.into_iter().enumerate() {
            if clause.len() != 2 && clause.len() != 3 {
                return Err(FormulaError::ClauseSize {
                    index,
                    size: clause.len(),
                });
            }
            clause.sort_unstable();
            for pair in clause.windows(2) {
                if pair[0] == pair[1] {
                    return Err(FormulaError::DuplicateInClause {
                        index,
                        var: pair[0],
                    });
                }
            }
            for &var in &clause {
                if var >= variable_count {
                    return Err(FormulaError::VarOutOfRange {
                        index,
                        var,
                        count: variable_count,
                    });
                }
                occurs[var] = true;
            }
            normalized.push(clause);
        }
        if let Some(var) = occurs.iter().position(|&o| !o) {
            return Err(FormulaError::UnusedVariable { var });
        }
        Ok(MonotoneFormula {
            variable_count,
            clauses: normalized,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.variable_count];
        for clause in &self.clauses {
            for &v in clause {
                counts[v] += 1;
            }
        }
        counts
    }

    /// True iff every clause sees both a true and a false variable.
    pub fn nae_eval(&self, assignment: &[bool]) -> bool {
        assert_eq!(
            assignment.len(),
            self.variable_count,
            "assignment must be total"
        );
        self.clauses.iter().all(|clause| {
            let first = assignment[clause[0]];
            clause[1..].iter().any(|&v| assignment[v] != first)
        })
    }

    // ---- DIMACS-like text form ----

    /// `p mnae <vars> <clauses>`, then each clause as 1-indexed positive
    /// integers terminated by 0. Lines starting with `c` are comments.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p mnae {} {}", self.variable_count, self.clauses.len());
        for clause in &self.clauses {
            for &v in clause {
                let _ = write!(out, "{} ", v + 1);
            }
            let _ = writeln!(out, "0");
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self, FormulaError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let parse_err = |reason: &str| FormulaError::Parse {
                line: lineno + 1,
                reason: reason.to_string(),
            };
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(parse_err("duplicate problem line"));
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 || fields[1] != "mnae" {
                    return Err(parse_err("expected `p mnae <vars> <clauses>`"));
                }
                let vars = fields[2]
                    .parse()
                    .map_err(|_| parse_err("bad variable count"))?;
                let count = fields[3]
                    .parse()
                    .map_err(|_| parse_err("bad clause count"))?;
                header = Some((vars, count));
                continue;
            }
            if header.is_none() {
                return Err(parse_err("clause before problem line"));
            }
            let mut clause = Vec::new();
            let mut terminated = false;
            for field in line.split_whitespace() {
                let literal: i64 = field.parse().map_err(|_| parse_err("bad literal"))?;
                if literal < 0 {
                    return Err(FormulaError::NegativeLiteral {
                        line: lineno + 1,
                        literal,
                    });
                }
                if literal == 0 {
                    terminated = true;
                    break;
                }
                clause.push((literal - 1) as usize);
            }
            if !terminated {
                return Err(parse_err("clause line missing 0 terminator"));
            }
            clauses.push(clause);
        }
        let (vars, declared) = header.ok_or(FormulaError::Parse {
            line: 0,
            reason: "missing problem line".to_string(),
        })?;
        if clauses.len() != declared {
            return Err(FormulaError::Parse {
                line: 0,
                reason: format!("declared {} clauses, found {}", declared, clauses.len()),
            });
        }
        MonotoneFormula::new(vars, clauses)
    }
}

pub const BRUTE_FORCE_MAX_VARS: usize = 26;

/// Exhaustive NAE satisfiability with witness. The all-variables complement
/// of a model is a model, so variable 0 is pinned false, halving the sweep.
pub fn nae_solve_bruteforce(f: &MonotoneFormula) -> Result<Option<Vec<bool>>, FormulaError> {
    let n = f.variable_count();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(FormulaError::TooManyVariables {
            count: n,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut assignment = vec![false; n];
    for mask in 0..(1u64 << (n - 1)) {
        for (bit, slot) in assignment[1..].iter_mut().enumerate() {
            *slot = mask & (1 << bit) != 0;
        }
        if f.nae_eval(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Exact NAE satisfiability by complete backtracking with unit propagation,
/// for formulas past the enumeration cap (normalization can blow a 4-clause
/// seed up to dozens of gadget variables). Agrees with the enumeration on
/// everything small enough for both; the overlap is cross-checked in tests.
pub fn nae_satisfiable_exact(f: &MonotoneFormula) -> Option<Vec<bool>> {
    let n = f.variable_count();
    let mut state: Vec<i8> = vec![-1; n];
    if !nae_dfs(f, &mut state) {
        return None;
    }
    Some(state.iter().map(|&s| s == 1).collect())
}

fn nae_dfs(f: &MonotoneFormula, state: &mut Vec<i8>) -> bool {
    // Propagate: a clause whose assigned variables all share value b and
    // which has exactly one free variable forces that variable to !b.
    loop {
        let mut changed = false;
        for clause in f.clauses() {
            let mut trues = 0;
            let mut falses = 0;
            let mut free = None;
            for &v in clause {
                match state[v] {
                    1 => trues += 1,
                    0 => falses += 1,
                    _ => free = Some(v),
                }
            }
            if trues > 0 && falses > 0 {
                continue;
            }
            match (free, trues + falses == clause.len()) {
                (None, true) => return false,
                (Some(v), _) if trues + falses == clause.len() - 1 => {
                    state[v] = if trues > 0 { 0 } else { 1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let Some(v) = state.iter().position(|&s| s < 0) else {
        return true;
    };
    for value in [0, 1] {
        let snapshot = state.clone();
        state[v] = value;
        if nae_dfs(f, state) {
            return true;
        }
        *state = snapshot;
    }
    false
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Cubic23Violation {
    #[error("variable {var} occurs {count} times, expected exactly 3")]
    OccurrenceCount { var: Var, count: usize },
}

/// Validity for the cubic (2,3)-clause fragment: clause sizes are already
/// structural, so the check is that every variable occurs exactly 3 times
/// across the clause multiset.
pub fn check_cubic23(f: &MonotoneFormula) -> Result<(), Cubic23Violation> {
    for (var, count) in f.occurrence_counts().into_iter().enumerate() {
        if count != 3 {
            return Err(Cubic23Violation::OccurrenceCount { var, count });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetTag {
    Chain,
    TwoOccurrencePatch,
    OneOccurrencePatch,
}

/// Clauses over fresh variables that pin `k` slot variables to one common
/// value, leaving each slot exactly one external occurrence.
#[derive(Debug, Clone)]
pub struct ChainFragment {
    /// Slot variables, each occurring exactly twice inside the fragment.
    pub slots: Vec<Var>,
    /// Fragment clauses (cycle links plus the per-link occurrence patches).
    pub clauses: Vec<Clause>,
    /// Total fresh variables consumed, starting at `fresh_base`.
    pub fresh_used: usize,
}

/// The chain's clause layout over caller-supplied variable indexing: cycle
/// links (b_i, w_i), (w_i, b_{i+1 mod k}) so NAE forces all b_i equal, plus
/// the standard two-occurrence patch per link variable w_i.
fn chain_clauses(
    k: usize,
    slot: impl Fn(usize) -> Var,
    link: impl Fn(usize) -> Var,
    patch: impl Fn(usize, usize) -> Var,
) -> Vec<Clause> {
    let mut clauses = Vec::with_capacity(5 * k);
    for i in 0..k {
        clauses.push(vec![slot(i), link(i)]);
        clauses.push(vec![link(i), slot((i + 1) % k)]);
    }
    for i in 0..k {
        clauses.push(vec![patch(i, 0), patch(i, 1)]);
        clauses.push(vec![patch(i, 0), patch(i, 1)]);
        clauses.push(vec![patch(i, 0), patch(i, 1), link(i)]);
    }
    clauses
}

/// Builds the equality chain for a variable with `k > 3` occurrences over
/// entirely fresh variables: slots b_0..b_{k-1} all pinned to one common
/// value in every NAE model, each with exactly one external occurrence left.
pub fn equality_chain(k: usize, fresh_base: Var) -> Result<ChainFragment, FormulaError> {
    if k < 4 {
        return Err(FormulaError::ChainTooShort { k });
    }
    let slot = move |i: usize| fresh_base + i;
    let clauses = chain_clauses(
        k,
        slot,
        |i| fresh_base + k + i,
        |i, half| fresh_base + 2 * k + 2 * i + half,
    );
    Ok(ChainFragment {
        slots: (0..k).map(slot).collect(),
        clauses,
        fresh_used: 4 * k,
    })
}

/// Raises a variable occurring once or twice to exactly three occurrences
/// by adding (v1, v2), (v1, v2), (v1, v2, v) with fresh v1, v2; applied
/// twice for a single-occurrence variable. Returns the patched formula, the
/// tag, and the index range of the added clauses.
pub fn patch_low_occurrence(
    f: &MonotoneFormula,
    var: Var,
) -> Result<(MonotoneFormula, GadgetTag, std::ops::Range<usize>), FormulaError> {
    let count = *f
        .occurrence_counts()
        .get(var)
        .ok_or(FormulaError::VarOutOfRange {
            index: 0,
            var,
            count: f.variable_count(),
        })?;
    let (applications, tag) = match count {
        2 => (1, GadgetTag::TwoOccurrencePatch),
        1 => (2, GadgetTag::OneOccurrencePatch),
        _ => return Err(FormulaError::PatchOccurrence { var, count }),
    };
    let mut clauses = f.clauses().to_vec();
    let start = clauses.len();
    let mut fresh = f.variable_count();
    for _ in 0..applications {
        let (v1, v2) = (fresh, fresh + 1);
        fresh += 2;
        clauses.push(vec![v1, v2]);
        clauses.push(vec![v1, v2]);
        clauses.push(vec![v1, v2, var]);
    }
    let end = clauses.len();
    let patched = MonotoneFormula::new(fresh, clauses)?;
    Ok((patched, tag, start..end))
}

/// Bookkeeping from normalization: where each original variable went and
/// which output clauses are gadget clauses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalizationTrace {
    /// Per original variable: its slot variables in the output. A single
    /// entry means the variable survived under its own index; a chain lists
    /// one fresh slot per original occurrence, in occurrence order.
    pub slots: Vec<Vec<Var>>,
    /// Tagged index ranges of gadget clauses in the output clause list.
    pub gadgets: Vec<GadgetClauses>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetClauses {
    pub tag: GadgetTag,
    pub variable: Var,
    pub start: usize,
    pub end: usize,
}

/// Rewrites a monotone NAE 3-SAT instance into the cubic (2,3) fragment:
/// variables with more than three occurrences are spread over equality-chain
/// slots, variables with fewer are patched up, and the result always passes
/// [`check_cubic23`] while preserving NAE satisfiability in both directions.
pub fn normalize_to_cubic23(
    f: &MonotoneFormula,
) -> Result<(MonotoneFormula, NormalizationTrace), FormulaError> {
    for (index, clause) in f.clauses().iter().enumerate() {
        if clause.len() != 3 {
            return Err(FormulaError::NotThreeSat {
                index,
                size: clause.len(),
            });
        }
    }
    let counts = f.occurrence_counts();
    let mut rewritten = f.clauses().to_vec();
    let mut tail: Vec<Clause> = Vec::new();
    let mut gadget_spans: Vec<(GadgetTag, Var, usize, usize)> = Vec::new();
    let mut slots: Vec<Vec<Var>> = vec![Vec::new(); f.variable_count()];
    let mut fresh = f.variable_count();

    for var in 0..f.variable_count() {
        match counts[var] {
            3 => slots[var] = vec![var],
            k if k > 3 => {
                // The variable itself serves as slot 0; the remaining k-1
                // slots, k links and 2k patch variables are fresh.
                let base = fresh;
                let slot = move |i: usize| if i == 0 { var } else { base + i - 1 };
                let chain = chain_clauses(
                    k,
                    slot,
                    |i| base + (k - 1) + i,
                    |i, half| base + (k - 1) + k + 2 * i + half,
                );
                fresh += 4 * k - 1;
                // Rewire the j-th occurrence of `var` to slot j; occurrence 0
                // keeps the variable itself.
                let mut next_slot = 0;
                for clause in rewritten.iter_mut() {
                    for entry in clause.iter_mut() {
                        if *entry == var {
                            *entry = slot(next_slot);
                            next_slot += 1;
                        }
                    }
                }
                debug_assert_eq!(next_slot, k);
                let start = tail.len();
                tail.extend(chain);
                gadget_spans.push((GadgetTag::Chain, var, start, tail.len()));
                slots[var] = (0..k).map(slot).collect();
            }
            k @ (1 | 2) => {
                let (applications, tag) = if k == 2 {
                    (1, GadgetTag::TwoOccurrencePatch)
                } else {
                    (2, GadgetTag::OneOccurrencePatch)
                };
                let start = tail.len();
                for _ in 0..applications {
                    let (v1, v2) = (fresh, fresh + 1);
                    fresh += 2;
                    tail.push(vec![v1, v2]);
                    tail.push(vec![v1, v2]);
                    tail.push(vec![v1, v2, var]);
                }
                gadget_spans.push((tag, var, start, tail.len()));
                slots[var] = vec![var];
            }
            _ => unreachable!("constructor rejects unused variables"),
        }
    }

    let base = rewritten.len();
    let mut clauses = rewritten;
    clauses.extend(tail);
    let output = MonotoneFormula::new(fresh, clauses)?;
    debug_assert!(check_cubic23(&output).is_ok());
    let trace = NormalizationTrace {
        slots,
        gadgets: gadget_spans
            .into_iter()
            .map(|(tag, variable, start, end)| GadgetClauses {
                tag,
                variable,
                start: base + start,
                end: base + end,
            })
            .collect(),
    };
    Ok((output, trace))
}
