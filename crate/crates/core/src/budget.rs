//! Search budgets and cooperative cancellation.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

/// Cooperative cancellation token shared across long-running searches.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        CancelToken(Arc::new(AtomicBool::new(false)))
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Node and word-length bounds for rewriting searches.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_nodes: usize,
    pub max_word_len: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 10_000, max_word_len: 64, cancel: None }
    }
}

impl Budget {
    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.max_nodes = nodes;
        self
    }

    pub fn cancelled(&self) -> bool {
        self.cancel.as_ref().is_some_and(|c| c.is_cancelled())
    }
}

/// Engine-wide verification parameters.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// nilpotent verification class for relator/morphism checks
    pub class: usize,
    /// class used to refute kernel membership at depth 0
    pub depth0_class: usize,
    pub budget: Budget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { class: 3, depth0_class: 4, budget: Budget::default() }
    }
}

impl VerifyConfig {
    pub fn with_class(mut self, class: usize) -> Self {
        self.class = class;
        self.depth0_class = self.depth0_class.max(class);
        self
    }
}
