//! Data-parallel helpers. With the `parallel` feature (default) these run on
//! the rayon pool; without it they fall back to sequential iteration. Results
//! are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl Mode {
    /// `Parallel` degrades to `Sequential` when the feature is off.
    pub fn effective(self) -> Mode {
        if cfg!(feature = "parallel") {
            self
        } else {
            Mode::Sequential
        }
    }
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_with(Mode::Parallel, items, f)
}

pub fn map_with<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode.effective() {
        #[cfg(feature = "parallel")]
        Mode::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Sizes the global pool. Has no effect without the `parallel` feature, and
/// fails if the pool was already started.
pub fn configure_threads(n: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        Ok(())
    }
}
