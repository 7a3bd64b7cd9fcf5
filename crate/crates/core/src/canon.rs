//! Canonical forms for tournament isomorphism.
//!
//! The canonical form of a tournament is the lexicographically smallest
//! column-major upper-triangle bit code over all vertex orderings. Small
//! orders are minimized exhaustively; larger orders use a backtracking
//! placement search with prefix pruning, placing one vertex at a time so
//! that each placement reveals a contiguous segment of the code.

use crate::tournament::Tournament;

/// Byte string identifying an isomorphism class: `[n, packed code bits...]`.
///
/// Two tournaments have equal canonical forms iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

const EXHAUSTIVE_LIMIT: usize = 8;

/// Code bit order: for m in 1..n, for i in 0..m, bit (i -> m).
/// Placing vertex m appends exactly the bits against positions 0..m.
fn code_of_order(t: &Tournament, order: &[usize]) -> Vec<bool> {
    let n = t.n();
    let mut code = Vec::with_capacity(n * (n - 1) / 2);
    for m in 1..n {
        for i in 0..m {
            code.push(t.has_edge(order[i], order[m]));
        }
    }
    code
}

struct Search<'a> {
    t: &'a Tournament,
    order: Vec<usize>,
    used: u64,
    code: Vec<bool>,
    best_code: Vec<bool>,
    best_order: Vec<usize>,
    have_best: bool,
}

impl Search<'_> {
    fn run(&mut self) {
        let n = self.t.n();
        if self.order.len() == n {
            if !self.have_best || self.code < self.best_code {
                self.best_code = self.code.clone();
                self.best_order = self.order.clone();
                self.have_best = true;
            }
            return;
        }
        let m = self.order.len();
        let base = self.code.len();
        for v in 0..n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            // segment of m bits revealed by placing v at position m
            let mut prune = false;
            for i in 0..m {
                let bit = self.t.has_edge(self.order[i], v);
                if self.have_best {
                    let best_bit = self.best_code[base + i];
                    if bit && !best_bit {
                        prune = true;
                        break;
                    }
                    if !bit && best_bit {
                        // strictly smaller prefix: everything below is fresh
                        self.have_best = false;
                    }
                }
                self.code.push(bit);
            }
            if prune {
                self.code.truncate(base);
                continue;
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.run();
            self.used &= !(1 << v);
            self.order.pop();
            self.code.truncate(base);
        }
    }
}

fn canonical_order(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    if n <= EXHAUSTIVE_LIMIT {
        // exhaustive minimization over all n! orderings
        let mut order: Vec<usize> = (0..n).collect();
        let mut best_order = order.clone();
        let mut best_code = code_of_order(t, &order);
        permute(&mut order, 0, &mut |perm| {
            let code = code_of_order(t, perm);
            if code < best_code {
                best_code = code;
                best_order = perm.to_vec();
            }
        });
        best_order
    } else {
        let mut s = Search {
            t,
            order: Vec::with_capacity(n),
            used: 0,
            code: Vec::with_capacity(n * (n - 1) / 2),
            best_code: Vec::new(),
            best_order: Vec::new(),
            have_best: false,
        };
        s.run();
        s.best_order
    }
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// The canonically relabeled representative of `t`'s isomorphism class.
pub fn canonical_representative(t: &Tournament) -> Tournament {
    let order = canonical_order(t);
    // order[pos] = original vertex at canonical position pos
    let mut perm = vec![0usize; t.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    t.relabel(&perm)
}

/// Canonical form: order byte followed by the representative's
/// row-major upper-triangle bits packed MSB-first.
pub fn canonical_form(t: &Tournament) -> CanonicalForm {
    let rep = canonical_representative(t);
    let bits = rep.upper_triangle_bits();
    let mut bytes = Vec::with_capacity(1 + (bits.len() + 7) / 8);
    bytes.push(t.n() as u8);
    for chunk in bits.chunks(8) {
        let mut b = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 0x80 >> i;
            }
        }
        bytes.push(b);
    }
    CanonicalForm(bytes)
}

pub fn are_isomorphic(a: &Tournament, b: &Tournament) -> bool {
    a.n() == b.n() && canonical_form(a) == canonical_form(b)
}
