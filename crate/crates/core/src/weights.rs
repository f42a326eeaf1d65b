//! Fenwick tree over nonnegative integer weights.
//!
//! Supports point updates and sampling an index with probability
//! proportional to its weight, both in `O(log n)`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTree {
    tree: Vec<u64>,
    weights: Vec<u64>,
    total: u64,
}

impl WeightTree {
    pub fn new(n: usize) -> Self {
        WeightTree {
            tree: vec![0; n + 1],
            weights: vec![0; n],
            total: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn set(&mut self, i: usize, w: u64) {
        let old = self.weights[i];
        if old == w {
            return;
        }
        self.weights[i] = w;
        self.total = self.total - old + w;
        let mut k = i + 1;
        while k < self.tree.len() {
            // wrapping arithmetic keeps decrements exact in two's complement
            self.tree[k] = self.tree[k].wrapping_add(w.wrapping_sub(old));
            k += k & k.wrapping_neg();
        }
    }

    /// Sum of weights `[0, i)`.
    pub fn prefix(&self, i: usize) -> u64 {
        let mut k = i;
        let mut s = 0u64;
        while k > 0 {
            s = s.wrapping_add(self.tree[k]);
            k &= k - 1;
        }
        s
    }

    /// Smallest index `i` with `prefix(i + 1) > target`. Requires `target < total`.
    pub fn find(&self, mut target: u64) -> usize {
        debug_assert!(target < self.total);
        let n = self.weights.len();
        let mut pos = 0usize;
        let mut step = if n == 0 { 0 } else { 1usize << (usize::BITS - 1 - n.leading_zeros()) };
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}
