//! Sequential or data-parallel execution of independent work items.
//!
//! Results are always returned in input order, so both strategies are
//! observably identical. Without the `parallel` feature, `Exec::Parallel`
//! runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps `f` over the integers in `lo..hi` and concatenates the outputs.
    pub fn flat_map_range<R, F>(self, lo: i64, hi: i64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(i64) -> Vec<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (lo..hi).into_par_iter().flat_map_iter(f).collect(),
            _ => (lo..hi).flat_map(f).collect(),
        }
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().all(f),
            _ => items.iter().all(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let v: Vec<i64> = (0..1000).collect();
        let a = Exec::Sequential.map(&v, |x| x * x);
        let b = Exec::Parallel.map(&v, |x| x * x);
        assert_eq!(a, b);
        let c = Exec::Sequential.flat_map_range(-5, 5, |i| vec![i; 2]);
        let d = Exec::Parallel.flat_map_range(-5, 5, |i| vec![i; 2]);
        assert_eq!(c, d);
        assert!(Exec::Parallel.all(&v, |&x| x >= 0));
    }
}
