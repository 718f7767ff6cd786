use std::time::{Duration, Instant};

use thiserror::Error;

/// Caps shared by every search: enumeration size and wall-clock deadline.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_worlds: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_worlds: 6,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_timeout(max_worlds: usize, timeout: Duration) -> Limits {
        Limits {
            max_worlds,
            deadline: Some(Instant::now() + timeout),
        }
    }

    pub fn unbounded_time(max_worlds: usize) -> Limits {
        Limits {
            max_worlds,
            deadline: None,
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check(&self, progress: impl FnOnce() -> String) -> Result<(), LimitExceeded> {
        if self.expired() {
            Err(LimitExceeded {
                reason: "timeout".into(),
                progress: progress(),
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("resource limit reached ({reason}); progress: {progress}")]
pub struct LimitExceeded {
    pub reason: String,
    pub progress: String,
}
