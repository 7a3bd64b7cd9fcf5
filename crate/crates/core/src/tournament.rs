//! Immutable tournaments on up to 64 labeled vertices.
//!
//! A tournament is stored as one `u64` bit-row per vertex, where bit `j` of
//! row `i` means the edge `i -> j` is present. Keeping each row in a single
//! machine word makes neighborhood intersections, the workhorse of the
//! transitivity search, single instructions.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest supported order. One word per bit-row.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair ({0}, {1}) is not antisymmetric: need exactly one direction")]
    NotAntisymmetric(usize, usize),
    #[error("order {0} out of range (need 2 <= n <= 64)")]
    OrderOutOfRange(usize),
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("residue set is not a tournament set: {0} and {1} must not both be in or out")]
    NotTournamentResidueSet(u64, u64),
    #[error("no edge {0} -> {1}")]
    NoSuchEdge(usize, usize),
    #[error("order {0} too small for this construction")]
    OrderTooSmall(usize),
    #[error("matrix parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
}

/// A subset of the vertices `0..n` of some tournament, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Out-degree statistics plus the (doubly-)regularity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// Out-degrees as a sorted multiset.
    pub out_degrees: Vec<usize>,
    pub is_regular: bool,
    pub is_doubly_regular: bool,
    /// Common out-neighbor count, when uniform over all ordered vertex pairs.
    pub common_out_count: Option<usize>,
}

/// The four blocks of vertices around a pivot edge `u -> v`.
///
/// `a` = common out-neighbors, `b` = middle of `u -> w -> v` paths,
/// `c` = common in-neighbors, `d` = middle of `v -> w -> u` paths
/// (so `|d|` counts 3-cycles through the edge). The blocks partition
/// the vertex set minus `{u, v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub u: usize,
    pub v: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub d: VertexSet,
}

/// An exact nonnegative rational. Kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0);
        let g = gcd(num.max(1), den);
        Ratio { num: num / g, den: den / g }
    }

    pub fn from_integer(n: u64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn floor(self) -> u64 {
        self.num / self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A complete orientation of `K_n` on labeled vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tournament(n={})", self.n)?;
        for row in self.to_matrix_text().lines() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl Tournament {
    /// Builds from raw bit-rows, checking every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, TournamentError> {
        let n = rows.len();
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(TournamentError::OrderOutOfRange(n));
        }
        let mask = VertexSet::full(n).0;
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(TournamentError::NotSquare { row: i, len: 64, expected: n });
            }
            if row >> i & 1 == 1 {
                return Err(TournamentError::SelfLoop(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let fwd = rows[i] >> j & 1;
                let bwd = rows[j] >> i & 1;
                if fwd == bwd {
                    return Err(TournamentError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Tournament { n, rows })
    }

    /// Builds from a 0/1 adjacency matrix.
    pub fn from_matrix(matrix: &[Vec<u8>]) -> Result<Self, TournamentError> {
        let n = matrix.len();
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(TournamentError::OrderOutOfRange(n));
        }
        let mut rows = vec![0u64; n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(TournamentError::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    rows[i] |= 1 << j;
                }
            }
        }
        Self::from_rows(rows)
    }

    /// Circulant tournament on `Z_n`: edge `u -> v` iff `(v - u) mod n` is a residue.
    pub fn from_circulant(n: usize, residues: &BTreeSet<u64>) -> Result<Self, TournamentError> {
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(TournamentError::OrderOutOfRange(n));
        }
        let n64 = n as u64;
        for x in 1..n64 {
            let a = residues.contains(&x);
            let b = residues.contains(&(n64 - x));
            if a == b {
                return Err(TournamentError::NotTournamentResidueSet(x, n64 - x));
            }
        }
        let mut rows = vec![0u64; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && residues.contains(&(((v + n - u) % n) as u64)) {
                    rows[u] |= 1 << v;
                }
            }
        }
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Out-neighborhood of `v` as a bitmask.
    pub fn out_row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn in_set(&self, v: usize) -> VertexSet {
        VertexSet(VertexSet::full(self.n).0 & !self.rows[v] & !(1 << v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// Edge-reversed tournament. An involution.
    pub fn reverse(&self) -> Tournament {
        let mask = VertexSet::full(self.n).0;
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            rows[i] = mask & !self.rows[i] & !(1 << i);
        }
        Tournament { n: self.n, rows }
    }

    /// Subtournament induced by `verts`, relabeled to `0..|verts|` in order.
    pub fn induced(&self, verts: VertexSet) -> Tournament {
        let vs: Vec<usize> = verts.iter().collect();
        let m = vs.len();
        let mut rows = vec![0u64; m];
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    rows[i] |= 1 << j;
                }
            }
        }
        Tournament { n: m, rows }
    }

    /// Relabel through `perm`: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.out_set(u).iter() {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Tournament { n: self.n, rows }
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut out_degrees: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let raw = out_degrees.clone();
        out_degrees.sort_unstable();
        let is_regular =
            self.n % 2 == 1 && raw.iter().all(|&d| d == (self.n - 1) / 2);
        let mut common = None;
        let mut uniform = true;
        'outer: for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let c = (self.rows[u] & self.rows[v]).count_ones() as usize;
                match common {
                    None => common = Some(c),
                    Some(k) if k != c => {
                        uniform = false;
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
        let common_out_count = if uniform { common } else { None };
        let is_doubly_regular = is_regular
            && self.n % 4 == 3
            && common_out_count == Some((self.n - 3) / 4);
        DegreeProfile { out_degrees, is_regular, is_doubly_regular, common_out_count }
    }

    /// Size of the largest vertex subset inducing a transitive subtournament.
    ///
    /// A set is transitive iff it orders as a dominance chain, so we extend
    /// chains through iterated common out-neighborhoods.
    pub fn max_transitive(&self) -> usize {
        let mut best = 0;
        self.chain_search(VertexSet::full(self.n).0, 0, usize::MAX, &mut best);
        best
    }

    /// Whether some `k` vertices induce a transitive subtournament. Early exit.
    pub fn has_tt_k(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if k > self.n {
            return false;
        }
        let mut best = 0;
        self.chain_search(VertexSet::full(self.n).0, 0, k, &mut best);
        best >= k
    }

    fn chain_search(&self, candidates: u64, depth: usize, target: usize, best: &mut usize) {
        if depth > *best {
            *best = depth;
        }
        if *best >= target {
            return;
        }
        if depth + (candidates.count_ones() as usize) <= *best {
            return;
        }
        let mut bits = candidates;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.chain_search(candidates & self.rows[v], depth + 1, target, best);
            if *best >= target {
                return;
            }
        }
    }

    /// Number of transitive triples: sum over vertices of C(out-degree, 2).
    pub fn count_tt3(&self) -> u64 {
        (0..self.n).map(|v| binomial(self.out_degree(v) as u64, 2)).sum()
    }

    /// Number of 3-cycles: C(n, 3) minus the transitive triples.
    pub fn count_3cycles(&self) -> u64 {
        binomial(self.n as u64, 3) - self.count_tt3()
    }

    /// True iff some vertex subset induces a tournament isomorphic to `pattern`.
    ///
    /// Backtracking embedding: pattern vertices are mapped one at a time and
    /// every edge to previously mapped vertices must match exactly.
    pub fn contains_subtournament(&self, pattern: &Tournament) -> bool {
        if pattern.n > self.n {
            return false;
        }
        let mut map = vec![usize::MAX; pattern.n];
        let mut used = VertexSet::EMPTY;
        self.embed(pattern, 0, &mut map, &mut used)
    }

    fn embed(
        &self,
        pattern: &Tournament,
        next: usize,
        map: &mut [usize],
        used: &mut VertexSet,
    ) -> bool {
        if next == pattern.n {
            return true;
        }
        'host: for h in 0..self.n {
            if used.contains(h) {
                continue;
            }
            for p in 0..next {
                let want = pattern.has_edge(p, next);
                if self.has_edge(map[p], h) != want {
                    continue 'host;
                }
            }
            map[next] = h;
            used.insert(h);
            if self.embed(pattern, next + 1, map, used) {
                return true;
            }
            used.0 &= !(1 << h);
        }
        false
    }

    /// Block decomposition around an existing edge `u -> v`.
    pub fn block_decomposition(
        &self,
        u: usize,
        v: usize,
    ) -> Result<BlockDecomposition, TournamentError> {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return Err(TournamentError::NoSuchEdge(u, v));
        }
        let rest = VertexSet::full(self.n).0 & !(1 << u) & !(1 << v);
        let out_u = self.rows[u];
        let out_v = self.rows[v];
        Ok(BlockDecomposition {
            u,
            v,
            a: VertexSet(rest & out_u & out_v),
            b: VertexSet(rest & out_u & !out_v),
            c: VertexSet(rest & !out_u & !out_v),
            d: VertexSet(rest & !out_u & out_v),
        })
    }

    /// An edge whose `|D|` block (3-cycle count through the edge) is minimal,
    /// ties broken by lexicographically smallest `(u, v)`.
    pub fn min_cycle_edge(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut best_d = usize::MAX;
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.has_edge(u, v) {
                    let rest = VertexSet::full(self.n).0 & !(1 << u) & !(1 << v);
                    let d = (rest & !self.rows[u] & self.rows[v]).count_ones() as usize;
                    if d < best_d {
                        best_d = d;
                        best = (u, v);
                    }
                }
            }
        }
        best
    }

    /// Matrix text format: `n` lines of `n` characters from `{0, 1}`.
    pub fn to_matrix_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format. Blank lines and `#` comments are ignored.
    pub fn from_matrix_text(text: &str) -> Result<Self, TournamentError> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::with_capacity(line.len());
            for ch in line.chars() {
                match ch {
                    '0' => row.push(0),
                    '1' => row.push(1),
                    _ => {
                        return Err(TournamentError::ParseError {
                            line: lineno + 1,
                            msg: format!("unexpected character {ch:?}"),
                        })
                    }
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(TournamentError::ParseError { line: 0, msg: "empty matrix".into() });
        }
        Self::from_matrix(&rows)
    }

    /// Upper-triangle bits in row-major order (`i < j`, 1 = `i -> j`).
    pub fn upper_triangle_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                bits.push(self.has_edge(i, j));
            }
        }
        bits
    }

    /// Rebuilds from upper-triangle bits (inverse of [`upper_triangle_bits`]).
    pub fn from_upper_triangle_bits(n: usize, bits: &[bool]) -> Result<Self, TournamentError> {
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(TournamentError::OrderOutOfRange(n));
        }
        assert_eq!(bits.len(), n * (n - 1) / 2);
        let mut rows = vec![0u64; n];
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[idx] {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
                idx += 1;
            }
        }
        Self::from_rows(rows)
    }
}

/// Nonzero quadratic residues mod an odd prime.
pub fn quadratic_residues(p: u64) -> Result<BTreeSet<u64>, TournamentError> {
    if p < 3 || !is_prime(p) {
        return Err(TournamentError::NotPrime(p));
    }
    Ok((1..p).map(|x| x * x % p).collect())
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Minimum possible number of transitive triples on `n` vertices, attained by
/// the most balanced out-degree sequence.
pub fn min_tt3_bound(n: u64) -> u64 {
    if n % 2 == 1 {
        n * binomial((n - 1) / 2, 2)
    } else {
        let h = n / 2;
        h * binomial(h, 2) + h * binomial(h - 1, 2)
    }
}

/// Maximum possible number of 3-cycles on `n` vertices, as an exact rational.
///
/// For odd `n` this is `n(n+1)(n-1)/24`; for even `n` it is `C(n,3)` minus
/// the transitive-triple count of the balanced degree sequence.
pub fn max_3cycles_bound(n: u64) -> Ratio {
    assert!(n >= 3);
    Ratio::from_integer(binomial(n, 3) - min_tt3_bound(n))
}

/// Average number of 3-cycles per edge at the 3-cycle maximum: `3 * max / C(n,2)`.
pub fn avg_cycles_per_edge(n: u64) -> Ratio {
    Ratio::new(3 * max_3cycles_bound(n).num, binomial(n, 2))
}

/// The transitive tournament on `n` vertices ordered `0 -> 1 -> ... -> n-1`.
pub fn transitive(n: usize) -> Tournament {
    let mut rows = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            rows[i] |= 1 << j;
        }
    }
    Tournament::from_rows(rows).expect("transitive order is a tournament")
}

/// The 3-cycle `0 -> 1 -> 2 -> 0`.
pub fn three_cycle() -> Tournament {
    Tournament::from_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap()
}

/// `H_n`: a transitive order on `0..n-3` where every vertex beats all of the
/// final 3-cycle `(n-3) -> (n-2) -> (n-1) -> (n-3)`.
pub fn h_tournament(n: usize) -> Result<Tournament, TournamentError> {
    if n < 4 {
        return Err(TournamentError::OrderTooSmall(n));
    }
    let mut rows = vec![0u64; n];
    let top = n - 3;
    for i in 0..top {
        for j in i + 1..n {
            rows[i] |= 1 << j;
        }
    }
    rows[top] |= 1 << (top + 1);
    rows[top + 1] |= 1 << (top + 2);
    rows[top + 2] |= 1 << top;
    Tournament::from_rows(rows)
}

/// `H_n^c`: a 3-cycle on `0, 1, 2` where every vertex beats all of a
/// transitive order on `3..n`. Isomorphic to `reverse(h_tournament(n))`,
/// labeled to match the usual displayed matrix.
pub fn h_complement(n: usize) -> Result<Tournament, TournamentError> {
    if n < 4 {
        return Err(TournamentError::OrderTooSmall(n));
    }
    let mut rows = vec![0u64; n];
    rows[0] |= 1 << 1;
    rows[1] |= 1 << 2;
    rows[2] |= 1 << 0;
    for i in 0..3 {
        for j in 3..n {
            rows[i] |= 1 << j;
        }
    }
    for i in 3..n {
        for j in i + 1..n {
            rows[i] |= 1 << j;
        }
    }
    Tournament::from_rows(rows)
}
