//! Driving of independent per-subset work items: data-parallel via rayon when
//! the `parallel` feature is on, plain iteration otherwise. The sequential
//! entry points stay available either way so the two can be compared.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn seq_all<T, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool,
{
    items.iter().all(f)
}

#[cfg(feature = "parallel")]
pub(crate) fn par_all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_all<T, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool,
{
    seq_all(items, f)
}

pub(crate) fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    seq_map(items, f)
}
