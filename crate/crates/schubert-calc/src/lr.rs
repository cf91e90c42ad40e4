//! Box-truncated Littlewood-Richardson coefficients.
//!
//! [`LrCache::expand`] enumerates LR tableaux strip by strip and memoizes the
//! result per unordered pair of shapes. Each key is computed exactly once even
//! under concurrent lookups, so the hit and miss counters only depend on the
//! multiset of requests, never on thread interleaving.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::{BoxSize, BoxedPartition};

pub type LrTable = BTreeMap<BoxedPartition, u64>;

type Key = (BoxSize, Vec<usize>, Vec<usize>);
type Slot = Arc<OnceLock<Arc<LrTable>>>;

#[derive(Default)]
pub struct LrCache {
    slots: RwLock<HashMap<Key, Slot>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

impl LrCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by the convenience functions of [`crate::ring`].
    pub fn global() -> &'static LrCache {
        static GLOBAL: OnceLock<LrCache> = OnceLock::new();
        GLOBAL.get_or_init(LrCache::new)
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::SeqCst),
            misses: self.misses.load(Ordering::SeqCst),
            entries: self.slots.read().unwrap().len(),
        }
    }

    /// `σ_lam · σ_mu = Σ c^ν σ_ν` over `ν` inside the common box.
    pub fn expand(&self, lam: &BoxedPartition, mu: &BoxedPartition) -> Result<Arc<LrTable>> {
        if lam.bx() != mu.bx() {
            return Err(Error::BoxMismatch(lam.bx(), mu.bx()));
        }
        let (p, q) = if lam.parts() <= mu.parts() { (lam, mu) } else { (mu, lam) };
        let key: Key = (lam.bx(), p.parts().to_vec(), q.parts().to_vec());
        let found = self.slots.read().unwrap().get(&key).cloned();
        let slot = match found {
            Some(slot) => {
                self.hits.fetch_add(1, Ordering::SeqCst);
                slot
            }
            None => {
                let mut map = self.slots.write().unwrap();
                match map.get(&key) {
                    Some(slot) => {
                        self.hits.fetch_add(1, Ordering::SeqCst);
                        slot.clone()
                    }
                    None => {
                        self.misses.fetch_add(1, Ordering::SeqCst);
                        let slot: Slot = Arc::default();
                        map.insert(key, slot.clone());
                        slot
                    }
                }
            }
        };
        Ok(slot.get_or_init(|| Arc::new(lr_uncached(p, q))).clone())
    }
}

/// Shorthand for [`LrCache::expand`] on the global cache.
pub fn lr_expand(lam: &BoxedPartition, mu: &BoxedPartition) -> Result<Arc<LrTable>> {
    LrCache::global().expand(lam, mu)
}

/// Adds the content of the smaller-weight shape to the other one, one label at a time.
fn lr_uncached(a: &BoxedPartition, b: &BoxedPartition) -> LrTable {
    let (base, content) = if a.weight() >= b.weight() { (a, b) } else { (b, a) };
    let bx = base.bx();
    let mu: Vec<usize> = content.nonzero_parts().to_vec();
    let mut out = LrTable::new();
    let mut run = Run { m: bx.m, mu: &mu, out: BTreeMap::new() };
    let shape = base.parts().to_vec();
    let prev = vec![0; bx.k];
    run.label(0, &shape, &prev);
    for (parts, c) in run.out {
        out.insert(BoxedPartition::new(&parts, bx).expect("shape stays in the box"), c);
    }
    out
}

struct Run<'a> {
    m: usize,
    mu: &'a [usize],
    out: BTreeMap<Vec<usize>, u64>,
}

impl Run<'_> {
    /// Places label `i + 1` as a horizontal strip; `prev[r]` counts label `i` in row `r`.
    fn label(&mut self, i: usize, shape: &[usize], prev: &[usize]) {
        if i == self.mu.len() {
            *self.out.entry(shape.to_vec()).or_insert(0) += 1;
            return;
        }
        let mut next = shape.to_vec();
        let mut added = vec![0; shape.len()];
        self.strip(i, 0, self.mu[i], 0, 0, shape, prev, &mut next, &mut added);
    }

    #[allow(clippy::too_many_arguments)]
    fn strip(
        &mut self,
        i: usize,
        row: usize,
        left: usize,
        placed_above: usize,
        prev_above: usize,
        old: &[usize],
        prev: &[usize],
        next: &mut Vec<usize>,
        added: &mut Vec<usize>,
    ) {
        if left == 0 {
            let next = next.clone();
            let added = added.clone();
            self.label(i + 1, &next, &added);
            return;
        }
        if row == old.len() {
            return;
        }
        let cap = if row == 0 { self.m } else { old[row - 1].min(self.m) };
        let room = cap.saturating_sub(old[row]);
        let lattice = if i == 0 { usize::MAX } else { prev_above.saturating_sub(placed_above) };
        let most = room.min(lattice).min(left);
        for x in (0..=most).rev() {
            next[row] = old[row] + x;
            added[row] = x;
            self.strip(i, row + 1, left - x, placed_above + x, prev_above + prev[row], old, prev, next, added);
        }
        next[row] = old[row];
        added[row] = 0;
    }
}

/// Independent Pieri oracle: `σ_lam · σ_(p)` (horizontal strips) or `σ_lam · σ_(1^p)` (vertical strips).
pub fn pieri(lam: &BoxedPartition, p: usize, vertical: bool) -> LrTable {
    let bx = lam.bx();
    BoxedPartition::all_of_weight(bx, lam.weight() + p)
        .into_iter()
        .filter(|nu| {
            let (a, b) = (lam.parts(), nu.parts());
            let contains = a.iter().zip(b).all(|(x, y)| x <= y);
            contains
                && if vertical {
                    a.iter().zip(b).all(|(x, y)| y - x <= 1)
                } else {
                    (1..b.len()).all(|i| b[i] <= a[i - 1])
                }
        })
        .map(|nu| (nu, 1))
        .collect()
}
