//! Counting orbits of a group action on `0..n` from generator moves.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    count: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n], count: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn merge(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.count -= 1;
        true
    }

    /// Number of classes.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Sizes of all classes, largest first.
    pub fn class_sizes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).filter(|&x| self.find(x) == x).collect();
        let mut sizes: Vec<usize> = roots.into_iter().map(|x| self.size[x]).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Largest element count accepted by the exhaustive counters.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

pub fn check_size(n: u128) -> Result<usize> {
    if n > ENUMERATION_LIMIT {
        Err(Error::TooLarge(n))
    } else {
        Ok(n as usize)
    }
}

/// Connected components of the graph `x -- m(x)` over all moves `m`.
/// `moves(x)` returns the images of `x` under each generator. With
/// `jobs > 1` images are computed on a worker pool; the merge is sequential,
/// so the result does not depend on `jobs`.
pub fn count_orbits<F>(n: usize, jobs: usize, moves: F) -> DisjointSets
where
    F: Fn(usize) -> Vec<usize> + Sync,
{
    let mut ds = DisjointSets::new(n);
    const CHUNK: usize = 1 << 14;
    let pool = (jobs > 1).then(|| rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap());
    let mut start = 0;
    while start < n {
        let end = (start + CHUNK).min(n);
        let images: Vec<Vec<usize>> = match &pool {
            Some(p) => p.install(|| (start..end).into_par_iter().map(&moves).collect()),
            None => (start..end).map(&moves).collect(),
        };
        for (x, ys) in (start..end).zip(images) {
            for y in ys {
                ds.merge(x, y);
            }
        }
        start = end;
    }
    ds
}
