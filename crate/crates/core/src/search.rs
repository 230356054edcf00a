//! Shared plumbing for the branch-and-bound family oracles.

use serde::{Deserialize, Serialize};

use crate::family::SetFamily;

/// Node budget for a search. `None` means run to completion.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: None }
    }

    pub fn with_max_nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes: Some(max_nodes) }
    }
}

/// Outcome of a maximum-family search.
///
/// `exact` is true only when the search space was fully explored within the
/// budget; otherwise the value is a lower bound. The witness is the first
/// maximum family encountered in the fixed lexicographic exploration order,
/// so identical inputs always yield identical witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySearchResult {
    pub value: usize,
    pub witness: SetFamily,
    pub exact: bool,
    pub nodes_explored: u64,
}

/// Internal DFS driver state shared by the oracles.
pub(crate) struct SearchState {
    pub nodes: u64,
    pub max_nodes: Option<u64>,
    pub truncated: bool,
    pub best_len: usize,
    pub best: Vec<usize>,
}

impl SearchState {
    pub fn new(budget: &SearchBudget) -> Self {
        SearchState {
            nodes: 0,
            max_nodes: budget.max_nodes,
            truncated: false,
            best_len: 0,
            best: Vec::new(),
        }
    }

    /// Counts one node; returns false when the budget is exhausted.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(max) = self.max_nodes {
            if self.nodes > max {
                self.truncated = true;
                return false;
            }
        }
        true
    }

    /// Records a strictly better family (first maximum wins ties).
    pub fn observe(&mut self, current: &[usize]) {
        if current.len() > self.best_len {
            self.best_len = current.len();
            self.best = current.to_vec();
        }
    }
}
