//! Partially oriented tournaments: per-pair edge state plus the
//! transitive-subset constraint propagation used by the catalog search
//! and by CNF instance fixing.

use crate::tournament::{Tournament, TournamentError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeState {
    /// `i -> j` for the pair `{i, j}` with `i < j`.
    Forward,
    /// `j -> i`.
    Backward,
    Unset,
}

/// Result of constraint propagation. Contradiction is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    Consistent(PartialTournament),
    Contradiction,
}

/// A tournament with some pairs still unoriented. States are indexed by
/// unordered pairs `{i, j}` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialTournament {
    n: usize,
    states: Vec<EdgeState>,
}

pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl PartialTournament {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1 && n <= 64);
        PartialTournament { n, states: vec![EdgeState::Unset; n * (n - 1) / 2] }
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        let n = t.n();
        let mut p = PartialTournament::new(n);
        for i in 0..n {
            for j in i + 1..n {
                p.set(i, j, t.has_edge(i, j));
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state(&self, i: usize, j: usize) -> EdgeState {
        debug_assert!(i < j);
        self.states[pair_index(i, j, self.n)]
    }

    /// Sets the pair `{i, j}` (`i < j`): `forward` means `i -> j`.
    pub fn set(&mut self, i: usize, j: usize, forward: bool) {
        debug_assert!(i < j);
        self.states[pair_index(i, j, self.n)] =
            if forward { EdgeState::Forward } else { EdgeState::Backward };
    }

    /// Sets the directed edge `u -> v` regardless of index order.
    pub fn set_edge(&mut self, u: usize, v: usize) {
        if u < v {
            self.set(u, v, true);
        } else {
            self.set(v, u, false);
        }
    }

    pub fn clear(&mut self, i: usize, j: usize) {
        debug_assert!(i < j);
        self.states[pair_index(i, j, self.n)] = EdgeState::Unset;
    }

    pub fn unset_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.state(i, j) == EdgeState::Unset {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    pub fn is_complete(&self) -> bool {
        self.states.iter().all(|&s| s != EdgeState::Unset)
    }

    /// Set-edge out-rows: bit `j` of row `i` means the pair is set with `i -> j`.
    pub fn out_masks(&self) -> Vec<u64> {
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                match self.state(i, j) {
                    EdgeState::Forward => rows[i] |= 1 << j,
                    EdgeState::Backward => rows[j] |= 1 << i,
                    EdgeState::Unset => {}
                }
            }
        }
        rows
    }

    /// Lossless conversion once every pair is set.
    pub fn to_tournament(&self) -> Result<Tournament, TournamentError> {
        assert!(self.is_complete(), "partial tournament has unset pairs");
        Tournament::from_rows(self.out_masks())
    }

    /// Whether `k` vertices already form a transitive subtournament using only
    /// set edges (all pairs among them set, ordered as a dominance chain).
    pub fn has_set_tt_k(&self, k: usize) -> bool {
        has_chain(&self.out_masks(), self.n, k)
    }

    /// Propagates to fixpoint under the rule: for each unset pair, if one
    /// orientation completes a transitive `k`-subset among otherwise
    /// fully-set vertices, force the other orientation. Contradiction when
    /// both orientations are forbidden or a set transitive `k`-subset exists.
    pub fn propagate(&self, k: usize) -> Propagation {
        let mut p = self.clone();
        let mut masks = p.out_masks();
        if has_chain(&masks, p.n, k) {
            return Propagation::Contradiction;
        }
        loop {
            let mut changed = false;
            for i in 0..p.n {
                for j in i + 1..p.n {
                    if p.state(i, j) != EdgeState::Unset {
                        continue;
                    }
                    // any new TT_k created by orienting {i, j} must use both i and j
                    masks[i] |= 1 << j;
                    let fwd_bad = has_chain_through(&masks, p.n, k, i, j);
                    masks[i] &= !(1u64 << j);
                    masks[j] |= 1 << i;
                    let bwd_bad = has_chain_through(&masks, p.n, k, i, j);
                    masks[j] &= !(1u64 << i);
                    match (fwd_bad, bwd_bad) {
                        (true, true) => return Propagation::Contradiction,
                        (true, false) => {
                            p.set(i, j, false);
                            masks[j] |= 1 << i;
                            changed = true;
                        }
                        (false, true) => {
                            p.set(i, j, true);
                            masks[i] |= 1 << j;
                            changed = true;
                        }
                        (false, false) => {}
                    }
                }
            }
            if !changed {
                return Propagation::Consistent(p);
            }
        }
    }
}

/// Dominance chain of length `k` over set edges.
fn has_chain(masks: &[u64], n: usize, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    chain_dfs(masks, full, k, 0)
}

fn chain_dfs(masks: &[u64], candidates: u64, k: usize, depth: usize) -> bool {
    if depth == k {
        return true;
    }
    if depth + (candidates.count_ones() as usize) < k {
        return false;
    }
    let mut bits = candidates;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if chain_dfs(masks, candidates & masks[v], k, depth + 1) {
            return true;
        }
    }
    false
}

/// Dominance chain of length `k` over set edges containing both `i` and `j`.
fn has_chain_through(masks: &[u64], n: usize, k: usize, i: usize, j: usize) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let need = (1u64 << i) | (1u64 << j);
    chain_dfs_need(masks, full, k, 0, need)
}

fn chain_dfs_need(masks: &[u64], candidates: u64, k: usize, depth: usize, need: u64) -> bool {
    if need & !candidates != 0 {
        return false;
    }
    if depth == k {
        return true;
    }
    if depth + (candidates.count_ones() as usize) < k {
        return false;
    }
    let mut bits = if k - depth == need.count_ones() as usize { need } else { candidates };
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if chain_dfs_need(masks, candidates & masks[v], k, depth + 1, need & !(1 << v)) {
            return true;
        }
    }
    false
}
