//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers fan out over rayon's current
//! pool; without it (or inside [`sequential`]) they are plain loops. Results
//! always come back in input order, so output never depends on the worker
//! count.

use std::cell::Cell;

thread_local! {
    static SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with the helpers forced onto the calling thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let prev = SEQUENTIAL.with(|s| s.replace(true));
    let out = f();
    SEQUENTIAL.with(|s| s.set(prev));
    out
}

fn forced_sequential() -> bool {
    SEQUENTIAL.with(Cell::get)
}

/// Runs `f` with `jobs` workers. `jobs == 1` means strictly sequential;
/// `jobs == 0` uses the default pool.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs == 1 {
        return sequential(f);
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(f);
        }
    }
    f()
}

/// Whether the helpers would currently fan out.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !forced_sequential()
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !forced_sequential() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving flat map.
pub fn flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !forced_sequential() {
        use rayon::prelude::*;
        return items.par_iter().flat_map_iter(f).collect();
    }
    items.iter().flat_map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_either_way() {
        let xs: Vec<u32> = (0..1000).collect();
        let par = map(&xs, |x| x * 3);
        let seq = sequential(|| map(&xs, |x| x * 3));
        assert_eq!(par, seq);
        let fm = with_jobs(2, || flat_map(&xs, |&x| vec![x; (x % 3) as usize]));
        assert_eq!(fm, sequential(|| flat_map(&xs, |&x| vec![x; (x % 3) as usize])));
        assert!(!sequential(is_parallel));
    }
}
