use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Cooperative cancellation shared by every worker of a search.
///
/// A search polls [`SearchControl::should_stop`] every few thousand nodes and
/// returns a partial, non-exhaustive report once it fires.
#[derive(Debug, Clone, Default)]
pub struct SearchControl {
    cancelled: Arc<AtomicBool>,
    deadline: Option<Instant>,
}

impl SearchControl {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: Option<Duration>) -> Self {
        SearchControl {
            cancelled: Arc::default(),
            deadline: budget.map(|b| Instant::now() + b),
        }
    }

    /// Shares the cancel flag, e.g. with a Ctrl-C handler.
    pub fn cancel_flag(&self) -> Arc<AtomicBool> {
        Arc::clone(&self.cancelled)
    }

    pub fn cancel(&self) {
        self.cancelled.store(true, Ordering::Relaxed);
    }

    pub fn should_stop(&self) -> bool {
        if self.cancelled.load(Ordering::Relaxed) {
            return true;
        }
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// A control sharing this one's cancel flag with its own, possibly
    /// earlier, deadline.
    pub fn sub_budget(&self, budget: Option<Duration>) -> SearchControl {
        let own = budget.map(|b| Instant::now() + b);
        let deadline = match (self.deadline, own) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        SearchControl {
            cancelled: Arc::clone(&self.cancelled),
            deadline,
        }
    }
}

/// Nodes between two polls of the control.
pub(crate) const POLL_INTERVAL: u64 = 1 << 12;
