//! Effort accounting for the exact searches.
//!
//! Budgets are counted in search nodes rather than wall time so that runs
//! are reproducible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Node budget for a backtracking search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub fn new(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    /// Effectively unlimited; for small instances where exhaustion is known
    /// to be cheap.
    pub fn unlimited() -> Self {
        Budget {
            max_nodes: u64::MAX,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
#[error("search budget exhausted after {nodes} nodes")]
pub struct BudgetExceeded {
    pub nodes: u64,
}

/// Deterministic effort counters reported alongside every solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
}

impl SearchStats {
    pub(crate) fn charge_node(&mut self, budget: Budget) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > budget.max_nodes {
            Err(BudgetExceeded { nodes: self.nodes })
        } else {
            Ok(())
        }
    }

    pub(crate) fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.propagations += other.propagations;
    }
}
