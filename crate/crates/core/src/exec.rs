//! Execution mode and work budget shared by the exhaustive computations.
//!
//! Every parallel reduction in this crate merges per-worker partial results
//! with commutative integer additions, so results never depend on the number
//! of worker threads.

use crate::error::{Error, Result};

/// Default budget in field-element operations.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    #[default]
    Parallel,
}

/// Options for the heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub budget: u64,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
        }
    }
}

impl Options {
    pub fn sequential() -> Self {
        Options {
            exec: Exec::Sequential,
            ..Options::default()
        }
    }

    pub fn with_budget(budget: u64) -> Self {
        Options {
            budget,
            ..Options::default()
        }
    }

    /// Fails loudly when the estimated cost exceeds the budget.
    pub fn charge(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// Folds `fold` over `0..len` and merges the partial accumulators.
///
/// `merge` must be associative and commutative.
pub(crate) fn fold_range<T, I, F, M>(exec: Exec, len: usize, identity: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, usize) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..len)
                .into_par_iter()
                .fold(&identity, &fold)
                .reduce(&identity, &merge)
        }
        _ => {
            let _ = &merge;
            (0..len).fold(identity(), fold)
        }
    }
}

/// Maps `f` over `0..len`, keeping index order.
pub(crate) fn map_range<R, F>(exec: Exec, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    }

    #[test]
    fn modes_agree() {
        let work = |exec| {
            fold_range(
                exec,
                1000,
                || vec![0u64; 7],
                |mut acc, i| {
                    acc[(i * i) % 7] += i as u64;
                    acc
                },
                add_counts,
            )
        };
        assert_eq!(work(Exec::Sequential), work(Exec::Parallel));
        let squares = map_range(Exec::Parallel, 10, |i| i * i);
        assert_eq!(squares, (0..10).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn budget_is_enforced() {
        let opts = Options::with_budget(100);
        assert!(opts.charge(100).is_ok());
        assert_eq!(
            opts.charge(101),
            Err(Error::BudgetExceeded {
                needed: 101,
                budget: 100
            })
        );
    }
}
