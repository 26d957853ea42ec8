//! Enumeration limits shared by every bounded search in the crate.
//!
//! Every limit is enforced by a hard error, never by silent truncation.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest finite group (form order or enumerated isometry/automorphism
    /// group) any exhaustive enumeration will touch.
    pub max_group_order: u64,
    /// Cooperative work budget (node visits) for backtracking searches.
    pub max_work: u64,
    /// Check configuration condition (2) on every root, not only A1 summands.
    pub debug_full_root_check: bool,
    /// Seed for randomized property sampling; classification itself is
    /// deterministic.
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 4096,
            max_work: 50_000_000,
            debug_full_root_check: false,
            seed: 0,
        }
    }
}

/// A consumable work budget handed into long enumerations.
#[derive(Debug)]
pub struct WorkBudget {
    remaining: u64,
    what: &'static str,
    bound: u64,
}

impl WorkBudget {
    pub fn new(limits: &Limits, what: &'static str) -> Self {
        WorkBudget {
            remaining: limits.max_work,
            what,
            bound: limits.max_work,
        }
    }

    #[inline]
    pub fn spend(&mut self, units: u64) -> Result<()> {
        if self.remaining < units {
            return Err(Error::BoundExceeded {
                what: self.what.to_string(),
                bound: self.bound,
            });
        }
        self.remaining -= units;
        Ok(())
    }
}
