//! Data-parallel helpers. With the `parallel` feature (default) work is
//! spread over the rayon pool; without it everything runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.map(f)` preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fallible ordered map; returns the first error in input order.
pub fn try_map<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(items, f).into_iter().collect()
}

/// Reduces `f(item)` with an associative `combine`, starting from `identity`.
pub fn map_reduce<T, R, F, C, I>(items: &[T], identity: I, f: F, combine: C) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).reduce(&identity, &combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).fold(identity(), combine)
    }
}

/// Whether this build spreads work over threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    #[test]
    fn order_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        assert_eq!(super::map(&v, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(super::map_reduce(&v, || 0u64, |x| *x, |a, b| a + b), 499500);
        let r: Result<Vec<u64>, u64> = super::try_map(&v, |&x| if x == 7 || x == 900 { Err(x) } else { Ok(x) });
        assert_eq!(r, Err(7));
    }
}
