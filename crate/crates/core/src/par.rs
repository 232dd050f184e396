//! Data-parallel map/reduce with a sequential fallback.
//!
//! With the `parallel` feature the work items are spread over the rayon
//! thread pool; without it (or with [`Parallelism::Sequential`]) they are
//! folded in order. Reducers used in this crate are commutative sums or set
//! unions, so both paths give identical results.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Rayon,
}

impl Parallelism {
    /// Whether work will actually run on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Rayon
    }
}

pub(crate) fn map_reduce<T, A, M, I, R>(
    items: Vec<T>,
    mode: Parallelism,
    map: M,
    identity: I,
    reduce: R,
) -> A
where
    T: Send,
    A: Send,
    M: Fn(T) -> A + Sync + Send,
    I: Fn() -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(map).reduce(identity, reduce);
    }
    let _ = mode;
    items.into_iter().map(map).fold(identity(), reduce)
}
