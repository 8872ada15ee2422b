//! Single-source shortest paths on the nonnegative quotient digraph.
//!
//! The graph never materializes: vertex `v` is a linear coset index and its
//! `k` out-neighbors are computed digit-arithmetically from precomputed
//! per-edge digit increments. Dijkstra runs with an indexed binary heap
//! (decrease-key), so the solver state is a fixed number of flat arrays —
//! the memory profile stays at `N` distances + `N` predecessors + heap
//! bookkeeping regardless of `k`.

use num_traits::{CheckedAdd, Zero};

/// Shape of the quotient digraph: mixed-radix digit system plus, per edge
/// label `j`, the digit vector of the generator's coset.
pub(crate) struct GraphShape<'a> {
    /// Invariant factors as machine integers.
    pub radices: &'a [u64],
    /// `strides[i] = d_1 * ... * d_{i-1}`; `strides[k] = N`.
    pub strides: &'a [u64],
    /// `edge_digits[j]` = digit vector of the label of the `j`-th generator.
    pub edge_digits: &'a [Vec<u64>],
}

impl GraphShape<'_> {
    pub fn vertex_count(&self) -> usize {
        *self.strides.last().unwrap() as usize
    }

    /// The target of edge `j` out of vertex `v`: digit-wise addition
    /// modulo the radices, carried out on linear indices.
    #[inline]
    pub fn step(&self, v: usize, j: usize) -> usize {
        let mut out = v;
        for (i, &inc) in self.edge_digits[j].iter().enumerate() {
            if inc == 0 {
                continue;
            }
            let stride = self.strides[i] as usize;
            let radix = self.radices[i] as usize;
            let digit = (v / stride) % radix;
            let new = digit + inc as usize;
            if new >= radix {
                out = out + inc as usize * stride - radix * stride;
            } else {
                out += inc as usize * stride;
            }
        }
        out
    }
}

/// Output of a run: exact distances from vertex 0 (every vertex is reachable
/// because the generators' residues generate the whole group), plus for each
/// nonzero vertex the label of the final edge on a canonical cheapest path.
pub(crate) struct PathsRaw<W> {
    pub dist: Vec<W>,
    pub pred: Vec<u8>,
}

/// Dijkstra from vertex 0 with weights `weights[j]` on all edges labeled `j`.
///
/// Returns `None` if any distance addition overflows `W`, so a machine-word
/// run can be retried with arbitrary precision. Ties between equal-cost
/// predecessors resolve to the smallest edge label, which makes reported
/// paths deterministic.
pub(crate) fn shortest_paths<W>(shape: &GraphShape<'_>, weights: &[W]) -> Option<PathsRaw<W>>
where
    W: Clone + Ord + Zero + CheckedAdd,
{
    let n = shape.vertex_count();
    let k = weights.len();
    debug_assert!(k < u8::MAX as usize);
    let mut dist: Vec<W> = vec![W::zero(); n];
    let mut settled = vec![false; n];
    let mut pred: Vec<u8> = vec![u8::MAX; n];
    let mut heap = IndexedHeap::new(n);
    heap.push(0, &dist);
    while let Some(v) = heap.pop(&dist) {
        settled[v] = true;
        for (j, w) in weights.iter().enumerate() {
            let t = shape.step(v, j);
            if settled[t] {
                continue;
            }
            let cand = dist[v].checked_add(w)?;
            if !heap.contains(t) {
                dist[t] = cand;
                pred[t] = j as u8;
                heap.push(t, &dist);
            } else if cand < dist[t] {
                dist[t] = cand;
                pred[t] = j as u8;
                heap.decrease(t, &dist);
            } else if cand == dist[t] && (j as u8) < pred[t] {
                // Same cost along a smaller edge label: since all weights are
                // positive, every minimal-cost predecessor relaxes t before t
                // settles, so keeping the smallest label here is canonical.
                pred[t] = j as u8;
            }
        }
    }
    debug_assert!(settled.iter().all(|&s| s));
    Some(PathsRaw { dist, pred })
}

/// Binary min-heap over vertex ids keyed by an external distance array, with
/// a position index for decrease-key. Two `u32` per vertex.
struct IndexedHeap {
    heap: Vec<u32>,
    pos: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl IndexedHeap {
    fn new(n: usize) -> Self {
        assert!(n < ABSENT as usize);
        IndexedHeap {
            heap: Vec::with_capacity(n),
            pos: vec![ABSENT; n],
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != ABSENT
    }

    fn push<W: Ord>(&mut self, v: usize, key: &[W]) {
        let i = self.heap.len();
        self.heap.push(v as u32);
        self.pos[v] = i as u32;
        self.sift_up(i, key);
    }

    fn decrease<W: Ord>(&mut self, v: usize, key: &[W]) {
        self.sift_up(self.pos[v] as usize, key);
    }

    fn pop<W: Ord>(&mut self, key: &[W]) -> Option<usize> {
        let top = *self.heap.first()? as usize;
        self.pos[top] = ABSENT;
        let last = self.heap.pop().unwrap();
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, key);
        }
        Some(top)
    }

    fn sift_up<W: Ord>(&mut self, mut i: usize, key: &[W]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if key[self.heap[i] as usize] >= key[self.heap[parent] as usize] {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down<W: Ord>(&mut self, mut i: usize, key: &[W]) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && key[self.heap[l] as usize] < key[self.heap[best] as usize] {
                best = l;
            }
            if r < self.heap.len() && key[self.heap[r] as usize] < key[self.heap[best] as usize] {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a] as usize] = a as u32;
        self.pos[self.heap[b] as usize] = b as u32;
    }
}
