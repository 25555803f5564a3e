use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget exceeded after {0} items")]
pub struct BudgetExceeded(pub usize);

/// Limits on enumeration work: an item count, a wall-clock deadline, or both.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_items: Option<usize>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn items(n: usize) -> Self {
        Budget { max_items: Some(n), deadline: None }
    }

    pub fn time(d: Duration) -> Self {
        Budget { max_items: None, deadline: Some(Instant::now() + d) }
    }

    pub fn check(&self, count: usize) -> Result<(), BudgetExceeded> {
        if self.max_items.is_some_and(|m| count > m) || self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(BudgetExceeded(count));
        }
        Ok(())
    }
}
