//! Evaluation strategy for independent grid points.

use alloc::vec::Vec;

/// Maps an index range through a pure function, preserving order.
///
/// Implementations may evaluate in parallel; results must come back in
/// index order so outputs stay deterministic.
pub trait Sweep: Sync {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Sweep for Sequential {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}
