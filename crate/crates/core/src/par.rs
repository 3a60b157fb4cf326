//! Switch between data-parallel and sequential evaluation of check batches.
//!
//! The heavy loops (one residual per basis tuple) are embarrassingly parallel,
//! so they run through rayon when the `parallel` feature is on. A thread-local
//! override lets callers, benchmarks in particular, force either mode for a
//! scope without touching global state.

use std::cell::Cell;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EvalMode {
    Sequential,
    Parallel,
}

impl EvalMode {
    pub fn current() -> EvalMode {
        MODE.with(|m| m.get()).unwrap_or({
            if cfg!(feature = "parallel") {
                EvalMode::Parallel
            } else {
                EvalMode::Sequential
            }
        })
    }
}

thread_local! {
    static MODE: Cell<Option<EvalMode>> = const { Cell::new(None) };
}

/// Runs `f` with the evaluation mode forced to `mode` on this thread.
pub fn scope_mode<T>(mode: EvalMode, f: impl FnOnce() -> T) -> T {
    MODE.with(|m| {
        let prev = m.replace(Some(mode));
        let out = f();
        m.set(prev);
        out
    })
}

/// Maps `f` over `items`, in parallel when the current mode allows it, and
/// returns results in input order either way.
pub fn maybe_par_map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if EvalMode::current() == EvalMode::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_override_restores() {
        let before = EvalMode::current();
        let inner = scope_mode(EvalMode::Sequential, EvalMode::current);
        assert_eq!(inner, EvalMode::Sequential);
        assert_eq!(EvalMode::current(), before);
    }

    #[test]
    fn map_preserves_order_in_both_modes() {
        let xs: Vec<u32> = (0..64).collect();
        for mode in [EvalMode::Sequential, EvalMode::Parallel] {
            let ys = scope_mode(mode, || maybe_par_map(xs.clone(), |x| x * x));
            assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
        }
    }
}
