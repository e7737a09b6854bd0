//! Resource limits for the exact engine.
//!
//! Standard-basis computations have no a priori complexity bound, so every
//! entry point reads the budget that is active on the current thread. The
//! default is generous enough for all built-in constructions; callers that
//! want tighter or looser limits wrap their work in [`Budget::scope`].

use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// Maximum number of elements a standard basis may accumulate.
    pub max_basis_elements: usize,
    /// Maximum number of ideal quotients in one saturation.
    pub max_saturation_iterations: usize,
    /// Largest truncation degree the jet oracle may try.
    pub jet_degree_cap: u32,
    /// Maximum number of Jacobian minors formed by a smoothness check.
    pub max_minors: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis_elements: 20_000,
            max_saturation_iterations: 64,
            jet_degree_cap: 64,
            max_minors: 50_000,
        }
    }
}

thread_local! {
    static ACTIVE: Cell<Budget> = Cell::new(Budget::default());
}

impl Budget {
    /// The budget active on this thread.
    pub fn current() -> Budget {
        ACTIVE.with(|b| b.get())
    }

    /// Runs `f` with `self` as the active budget, restoring the previous one
    /// afterwards (also on unwind).
    pub fn scope<R>(self, f: impl FnOnce() -> R) -> R {
        struct Restore(Budget);
        impl Drop for Restore {
            fn drop(&mut self) {
                ACTIVE.with(|b| b.set(self.0));
            }
        }
        let _restore = Restore(ACTIVE.with(|b| b.replace(self)));
        f()
    }

    pub fn is_valid(&self) -> bool {
        self.max_basis_elements > 0
            && self.max_saturation_iterations > 0
            && self.jet_degree_cap > 0
            && self.max_minors > 0
    }
}
