//! CNF encodings that forbid transitive subtournaments of size `k`.
//!
//! Three encodings: `direct` (one clause per ordered k-tuple), `cycle`
//! (auxiliary 3-cycle variables, one subset clause per unordered k-set),
//! and `reduced` (the direct encoding shrunk by self-subsuming resolution
//! and subsumption). Edge variables are shared across encodings: variable
//! for pair `{i, j}` (`i < j`) is true iff `i -> j`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::partial::{pair_index, EdgeState, PartialTournament};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("k = {0} too small: encodings need k >= 3")]
    KTooSmall(usize),
    #[error("k = {k} exceeds n = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("instance size {0} exceeds 64 vertices")]
    SizeOverflow(usize),
    #[error("DIMACS parse error at line {line}: {msg}")]
    DimacsParse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Direct,
    Cycle,
    Reduced,
}

impl std::str::FromStr for Encoding {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(Encoding::Direct),
            "cycle" => Ok(Encoding::Cycle),
            "reduced" => Ok(Encoding::Reduced),
            other => Err(format!("unknown encoding {other:?}")),
        }
    }
}

/// Variable numbering: edge variables first in lexicographic pair order,
/// then cycle variables in lexicographic triple order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    /// Number of cycle variables (0 unless the cycle encoding is used).
    pub cycle_vars: usize,
}

impl VarMap {
    pub fn edges_only(n: usize) -> Self {
        VarMap { n, cycle_vars: 0 }
    }

    pub fn with_cycles(n: usize) -> Self {
        VarMap { n, cycle_vars: triples(n).len() }
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn var_count(&self) -> usize {
        self.edge_count() + self.cycle_vars
    }

    /// Variable for the unordered pair `{i, j}`, `i < j`; true means `i -> j`.
    pub fn edge_var(&self, i: usize, j: usize) -> i32 {
        (pair_index(i, j, self.n) + 1) as i32
    }

    /// Literal asserting the directed edge `u -> v`.
    pub fn edge_lit(&self, u: usize, v: usize) -> i32 {
        if u < v {
            self.edge_var(u, v)
        } else {
            -self.edge_var(v, u)
        }
    }

    /// Variable for the unordered triple `{i, j, l}`, `i < j < l`.
    pub fn cycle_var(&self, i: usize, j: usize, l: usize) -> i32 {
        debug_assert!(self.cycle_vars > 0);
        (self.edge_count() + triple_index(i, j, l, self.n) + 1) as i32
    }

    /// Inverse of `edge_var` over the edge range.
    pub fn pair_of_var(&self, var: i32) -> Option<(usize, usize)> {
        let v = var as usize;
        if v == 0 || v > self.edge_count() {
            return None;
        }
        let mut idx = v - 1;
        for i in 0..self.n {
            let row = self.n - i - 1;
            if idx < row {
                return Some((i, i + 1 + idx));
            }
            idx -= row;
        }
        None
    }

    pub fn triple_of_var(&self, var: i32) -> Option<(usize, usize, usize)> {
        let v = var as usize;
        if v <= self.edge_count() || v > self.var_count() {
            return None;
        }
        let idx = v - self.edge_count() - 1;
        triples(self.n).into_iter().nth(idx)
    }
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                v.push((i, j, l));
            }
        }
    }
    v
}

fn triple_index(i: usize, j: usize, l: usize, n: usize) -> usize {
    // rank of (i, j, l) in lexicographic triple order
    let c3 = |x: usize| if x < 3 { 0 } else { x * (x - 1) * (x - 2) / 6 };
    let c2 = |x: usize| if x < 2 { 0 } else { x * (x - 1) / 2 };
    c3(n) - c3(n - i) + c2(n - i - 1) - c2(n - j) + (l - j - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<i32>>,
    pub varmap: VarMap,
}

impl CnfFormula {
    fn push_clause(&mut self, mut lits: Vec<i32>) {
        lits.dedup();
        debug_assert!(lits.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= self.var_count));
        debug_assert!(!lits.iter().any(|&l| lits.contains(&-l)));
        self.clauses.push(lits);
    }

    /// Unit clauses pinning every set pair of `fixed`.
    pub fn append_fixed_units(&mut self, fixed: &PartialTournament) {
        for i in 0..fixed.n() {
            for j in i + 1..fixed.n() {
                match fixed.state(i, j) {
                    EdgeState::Forward => self.clauses.push(vec![self.varmap.edge_var(i, j)]),
                    EdgeState::Backward => self.clauses.push(vec![-self.varmap.edge_var(i, j)]),
                    EdgeState::Unset => {}
                }
            }
        }
    }
}

fn check_nk(n: usize, k: usize) -> Result<(), EncodeError> {
    if k < 3 {
        return Err(EncodeError::KTooSmall(k));
    }
    if k > n {
        return Err(EncodeError::KTooLarge { k, n });
    }
    Ok(())
}

/// Direct encoding: one clause per ordered k-tuple, negating that
/// transitive orientation; plus one unit clause per fixed edge.
pub fn encode_direct(
    n: usize,
    k: usize,
    fixed: Option<&PartialTournament>,
) -> Result<CnfFormula, EncodeError> {
    check_nk(n, k)?;
    let varmap = VarMap::edges_only(n);
    let mut f = CnfFormula { var_count: varmap.var_count(), clauses: Vec::new(), varmap };
    for subset in k_subsets(n, k) {
        let mut block: Vec<Vec<i32>> = Vec::new();
        permute_tuples(&subset, &mut |tuple| {
            let mut clause = Vec::with_capacity(k * (k - 1) / 2);
            for x in 0..k {
                for y in x + 1..k {
                    // tuple asserts tuple[x] -> tuple[y]; negate it
                    clause.push(-f.varmap.edge_lit(tuple[x], tuple[y]));
                }
            }
            clause.sort_unstable_by_key(|l| l.unsigned_abs());
            block.push(clause);
        });
        // positive-before-negative lexicographic order pairs each clause
        // with a neighbor differing in one literal, which is what the
        // reduction exploits
        block.sort_unstable_by(|a, b| {
            let key = |c: &[i32]| c.iter().map(|&l| (l.unsigned_abs(), l < 0)).collect::<Vec<_>>();
            key(a).cmp(&key(b))
        });
        for clause in block {
            f.push_clause(clause);
        }
    }
    if let Some(fixed) = fixed {
        f.append_fixed_units(fixed);
    }
    Ok(f)
}

/// Cycle encoding: per unordered triple a cycle variable with its three
/// defining clauses (variable implies a cyclic orientation), plus one
/// clause per unordered k-subset requiring one of its triples to be cyclic.
pub fn encode_cycle(
    n: usize,
    k: usize,
    fixed: Option<&PartialTournament>,
) -> Result<CnfFormula, EncodeError> {
    check_nk(n, k)?;
    let varmap = VarMap::with_cycles(n);
    let mut f = CnfFormula { var_count: varmap.var_count(), clauses: Vec::new(), varmap };
    for (a, b, c) in triples(n) {
        let x = f.varmap.cycle_var(a, b, c);
        let ab = f.varmap.edge_var(a, b);
        let ac = f.varmap.edge_var(a, c);
        let bc = f.varmap.edge_var(b, c);
        // x => the triple is one of the two cyclic orientations
        f.push_clause(vec![-x, ab, ac]);
        f.push_clause(vec![-x, -ab, bc]);
        f.push_clause(vec![-x, -ac, -bc]);
    }
    for subset in k_subsets(n, k) {
        let mut clause = Vec::with_capacity(k * (k - 1) * (k - 2) / 6);
        for x in 0..k {
            for y in x + 1..k {
                for z in y + 1..k {
                    clause.push(f.varmap.cycle_var(subset[x], subset[y], subset[z]));
                }
            }
        }
        f.push_clause(clause);
    }
    if let Some(fixed) = fixed {
        f.append_fixed_units(fixed);
    }
    Ok(f)
}

/// Reduced encoding: the direct encoding shrunk by self-subsuming
/// resolution, with fixed-edge units appended after reduction.
pub fn encode_reduced(
    n: usize,
    k: usize,
    fixed: Option<&PartialTournament>,
) -> Result<CnfFormula, EncodeError> {
    let mut f = self_subsume(&encode_direct(n, k, None)?);
    if let Some(fixed) = fixed {
        f.append_fixed_units(fixed);
    }
    Ok(f)
}

pub fn encode(
    encoding: Encoding,
    n: usize,
    k: usize,
    fixed: Option<&PartialTournament>,
) -> Result<CnfFormula, EncodeError> {
    match encoding {
        Encoding::Direct => encode_direct(n, k, fixed),
        Encoding::Cycle => encode_cycle(n, k, fixed),
        Encoding::Reduced => encode_reduced(n, k, fixed),
    }
}

/// Self-subsuming resolution plus subsumption removal, run to fixpoint.
///
/// Given clauses `(C or x)` and `(D or not x)` with `C` a subset of `D`, the
/// second clause is strengthened to `D`; subsumed clauses are then removed.
/// The result is logically equivalent to the input. Clause order is the
/// input order of the surviving clauses.
pub fn self_subsume(f: &CnfFormula) -> CnfFormula {
    let mut clauses: Vec<Option<Vec<i32>>> = f
        .clauses
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            Some(c)
        })
        .collect();

    // Phase 1: pairwise fixpoint within groups of identical variable support.
    // Direct encodings start as per-subset blocks of k! clauses over the same
    // C(k, 2) variables, where nearly all of the reduction happens.
    let mut groups: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
    for (idx, c) in clauses.iter().enumerate() {
        let mut vars: Vec<i32> = c.as_ref().unwrap().iter().map(|l| l.abs()).collect();
        vars.sort_unstable();
        vars.dedup();
        groups.entry(vars).or_default().push(idx);
    }
    for members in groups.values() {
        if members.len() > 1 {
            group_fixpoint(&mut clauses, members);
        }
    }

    // Phase 2: global fixpoint via subset enumeration over a clause set.
    global_fixpoint(&mut clauses);

    CnfFormula {
        var_count: f.var_count,
        clauses: clauses
            .into_iter()
            .flatten()
            .map(|mut c| {
                c.sort_unstable_by_key(|l| l.unsigned_abs());
                c
            })
            .collect(),
        varmap: f.varmap.clone(),
    }
}

/// Round-based self-subsumption + subsumption among `members` until stable.
///
/// Each round scans clause pairs in order and lets every clause take part
/// in at most one strengthening, mirroring the pair-at-a-time reduction of
/// the worked 6-to-3 example; a subsumption sweep follows each round.
fn group_fixpoint(clauses: &mut [Option<Vec<i32>>], members: &[usize]) {
    loop {
        let mut changed = false;
        let mut used = vec![false; members.len()];
        for ai in 0..members.len() {
            if used[ai] {
                continue;
            }
            let Some(a) = clauses[members[ai]].clone() else { continue };
            for bi in ai + 1..members.len() {
                if used[bi] {
                    continue;
                }
                let Some(b) = clauses[members[bi]].as_ref() else { continue };
                if let Some(lit) = self_subsumes(&a, b) {
                    let mut b = b.clone();
                    b.retain(|&l| l != -lit);
                    clauses[members[bi]] = Some(b);
                } else if let Some(lit) = self_subsumes(b, &a) {
                    let mut a = a.clone();
                    a.retain(|&l| l != -lit);
                    clauses[members[ai]] = Some(a);
                } else {
                    continue;
                }
                used[ai] = true;
                used[bi] = true;
                changed = true;
                break;
            }
        }
        // subsumption removal (first occurrence wins on duplicates)
        for (ci_pos, &ci) in members.iter().enumerate() {
            let Some(c) = clauses[ci].clone() else { continue };
            for (di_pos, &di) in members.iter().enumerate() {
                if di == ci {
                    continue;
                }
                let Some(d) = clauses[di].as_ref() else { continue };
                if is_subset(&c, d) && (c.len() < d.len() || ci_pos < di_pos) {
                    clauses[di] = None;
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// If some literal `x` in `c` appears negated in `d` and `c \ {x}` is a
/// subset of `d \ {-x}`, returns `x`.
fn self_subsumes(c: &[i32], d: &[i32]) -> Option<i32> {
    if c.len() > d.len() {
        return None;
    }
    let mut pivot = 0i32;
    for &lc in c {
        if d.binary_search(&lc).is_ok() {
            continue;
        }
        if d.binary_search(&-lc).is_ok() && pivot == 0 {
            pivot = lc;
            continue;
        }
        return None;
    }
    if pivot != 0 {
        Some(pivot)
    } else {
        None
    }
}

fn is_subset(c: &[i32], d: &[i32]) -> bool {
    c.len() <= d.len() && c.iter().all(|l| d.binary_search(l).is_ok())
}

/// Global fixpoint using subset enumeration: for each clause `D` and each
/// literal `-x` in it, strengthening applies iff some stored clause is a
/// subset of `(D \ {-x}) + {x}`. Effective once clauses are short.
fn global_fixpoint(clauses: &mut Vec<Option<Vec<i32>>>) {
    loop {
        // clause -> first alive index, for duplicate removal
        let mut first: HashMap<Vec<i32>, usize> = HashMap::new();
        let mut set: HashSet<Vec<i32>> = HashSet::new();
        for (idx, c) in clauses.iter().enumerate() {
            if let Some(c) = c {
                first.entry(c.clone()).or_insert(idx);
                set.insert(c.clone());
            }
        }
        let mut changed = false;
        for idx in 0..clauses.len() {
            let Some(d) = clauses[idx].clone() else { continue };
            // subsumption: a proper subset exists, or this duplicates an
            // earlier clause
            if proper_subset_in(&set, &d) || first.get(&d).copied() != Some(idx) {
                clauses[idx] = None;
                changed = true;
                continue;
            }
            let mut d = d;
            let mut strengthened = false;
            let mut li = 0;
            while li < d.len() {
                let neg = d[li];
                let mut probe: Vec<i32> = d.iter().copied().filter(|&l| l != neg).collect();
                probe.push(-neg);
                probe.sort_unstable();
                if subset_in_requiring(&set, &probe, -neg) {
                    d.remove(li);
                    strengthened = true;
                    // li stays: next literal shifted into place
                } else {
                    li += 1;
                }
            }
            if strengthened {
                set.remove(clauses[idx].as_ref().unwrap());
                set.insert(d.clone());
                clauses[idx] = Some(d);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Is some stored clause a subset of `s` that contains `required`?
fn subset_in_requiring(set: &HashSet<Vec<i32>>, s: &[i32], required: i32) -> bool {
    let pos = s.binary_search(&required).expect("required literal present");
    let rest: Vec<i32> = s.iter().copied().filter(|&l| l != required).collect();
    let _ = pos;
    let m = rest.len();
    debug_assert!(m < 22, "subset enumeration on long clause");
    for mask in 0..(1u32 << m) {
        let mut cand: Vec<i32> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect();
        cand.push(required);
        cand.sort_unstable();
        if set.contains(&cand) {
            return true;
        }
    }
    false
}

/// Is some stored clause a *proper* subset of `d`?
fn proper_subset_in(set: &HashSet<Vec<i32>>, d: &[i32]) -> bool {
    let m = d.len();
    for mask in 0..(1u32 << m) {
        if mask == (1u32 << m) - 1 {
            continue;
        }
        let cand: Vec<i32> = d
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect();
        if !cand.is_empty() && set.contains(&cand) {
            return true;
        }
    }
    false
}

/// Pivot-extension instance: a pivot vertex whose in-neighborhood is `inn`
/// and out-neighborhood is `out`, with the blocks' internal edges fixed
/// where the partial tournaments say so and all cross edges free, under a
/// global TT_k prohibition. An all-unset partial of size m expresses
/// "m generic vertices".
pub fn pivot_instance(
    inn: &PartialTournament,
    out: &PartialTournament,
    k: usize,
    encoding: Encoding,
) -> Result<CnfFormula, EncodeError> {
    let total = inn.n() + 1 + out.n();
    if total > 64 {
        return Err(EncodeError::SizeOverflow(total));
    }
    let pivot = inn.n();
    let mut fixed = PartialTournament::new(total);
    for i in 0..inn.n() {
        fixed.set_edge(i, pivot);
    }
    for o in 0..out.n() {
        fixed.set_edge(pivot, pivot + 1 + o);
    }
    for i in 0..inn.n() {
        for j in i + 1..inn.n() {
            match inn.state(i, j) {
                EdgeState::Forward => fixed.set(i, j, true),
                EdgeState::Backward => fixed.set(i, j, false),
                EdgeState::Unset => {}
            }
        }
    }
    for i in 0..out.n() {
        for j in i + 1..out.n() {
            let (gi, gj) = (pivot + 1 + i, pivot + 1 + j);
            match out.state(i, j) {
                EdgeState::Forward => fixed.set(gi, gj, true),
                EdgeState::Backward => fixed.set(gi, gj, false),
                EdgeState::Unset => {}
            }
        }
    }
    encode(encoding, total, k, Some(&fixed))
}

/// Deterministic DIMACS CNF text.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p cnf {} {}", f.var_count, f.clauses.len());
    for clause in &f.clauses {
        for lit in clause {
            let _ = write!(s, "{lit} ");
        }
        s.push_str("0\n");
    }
    s
}

/// Sidecar variable map: one line per variable,
/// `<var> <i> <j>` for edges and `<var> c <i> <j> <l>` for cycle variables.
pub fn emit_varmap(vm: &VarMap) -> String {
    let mut s = String::new();
    for i in 0..vm.n {
        for j in i + 1..vm.n {
            let _ = writeln!(s, "{} {i} {j}", vm.edge_var(i, j));
        }
    }
    if vm.cycle_vars > 0 {
        for (i, j, l) in triples(vm.n) {
            let _ = writeln!(s, "{} c {i} {j} {l}", vm.cycle_var(i, j, l));
        }
    }
    s
}

/// Parses DIMACS CNF. The varmap is reconstructed from the variable count
/// when it matches `C(n, 2)` for the given `n`; pass the sidecar-derived
/// map when auxiliary variables are present.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), EncodeError> {
    let mut var_count = None;
    let mut declared_clauses = 0usize;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(EncodeError::DimacsParse {
                    line: lineno + 1,
                    msg: "malformed header".into(),
                });
            }
            var_count = Some(parts[0].parse::<usize>().map_err(|e| EncodeError::DimacsParse {
                line: lineno + 1,
                msg: e.to_string(),
            })?);
            declared_clauses = parts[1].parse().map_err(|e: std::num::ParseIntError| {
                EncodeError::DimacsParse { line: lineno + 1, msg: e.to_string() }
            })?;
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|e: std::num::ParseIntError| {
                EncodeError::DimacsParse { line: lineno + 1, msg: e.to_string() }
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let var_count = var_count.ok_or(EncodeError::DimacsParse {
        line: 0,
        msg: "missing p cnf header".into(),
    })?;
    if !current.is_empty() {
        return Err(EncodeError::DimacsParse {
            line: 0,
            msg: "trailing clause without terminating 0".into(),
        });
    }
    if clauses.len() != declared_clauses {
        return Err(EncodeError::DimacsParse {
            line: 0,
            msg: format!("header declares {declared_clauses} clauses, found {}", clauses.len()),
        });
    }
    Ok((var_count, clauses))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn permute_tuples(subset: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut xs = subset.to_vec();
    fn rec(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == xs.len() {
            f(xs);
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            rec(xs, k + 1, f);
            xs.swap(k, i);
        }
    }
    rec(&mut xs, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause_set(f: &CnfFormula) -> HashSet<Vec<i32>> {
        f.clauses
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable_by_key(|l| l.unsigned_abs());
                c
            })
            .collect()
    }

    #[test]
    fn direct_3_3_is_the_six_orderings() {
        let f = encode_direct(3, 3, None).unwrap();
        assert_eq!(f.var_count, 3);
        assert_eq!(f.clauses.len(), 6);
        // vars: 1 = {0,1}, 2 = {0,2}, 3 = {1,2}
        let expected: HashSet<Vec<i32>> = [
            vec![-1, -2, -3],
            vec![-1, -2, 3],
            vec![1, -2, -3],
            vec![1, 2, -3],
            vec![1, 2, 3],
            vec![-1, 2, 3],
        ]
        .into_iter()
        .collect();
        assert_eq!(clause_set(&f), expected);
    }

    #[test]
    fn direct_4_4_clause_shape() {
        let f = encode_direct(4, 4, None).unwrap();
        assert_eq!(f.clauses.len(), 24);
        assert!(f.clauses.iter().all(|c| c.len() == 6));
    }

    #[test]
    fn direct_fixed_edge_adds_unit() {
        let mut fixed = PartialTournament::new(3);
        fixed.set(0, 1, true);
        let f = encode_direct(3, 3, Some(&fixed)).unwrap();
        assert_eq!(f.clauses.len(), 7);
        assert_eq!(f.clauses[6], vec![1]);
    }

    #[test]
    fn cycle_4_4_structure() {
        let f = encode_cycle(4, 4, None).unwrap();
        assert_eq!(f.varmap.cycle_vars, 4);
        assert_eq!(f.var_count, 6 + 4);
        assert_eq!(f.clauses.len(), 13);
        // the subset clause is the disjunction of all four cycle variables
        let subset: Vec<i32> = (7..=10).collect();
        assert!(f.clauses.contains(&subset));
        assert_eq!(f.clauses.iter().filter(|c| c.len() == 3).count(), 12);
    }

    #[test]
    fn cycle_3_3_structure() {
        let f = encode_cycle(3, 3, None).unwrap();
        assert_eq!(f.varmap.cycle_vars, 1);
        assert_eq!(f.clauses.len(), 4);
        assert_eq!(f.clauses[3], vec![4]); // unit subset clause
    }

    #[test]
    fn reduced_3_3_matches_worked_reduction() {
        let f = encode_reduced(3, 3, None).unwrap();
        let expected: HashSet<Vec<i32>> =
            [vec![1, 2], vec![-1, 3], vec![-2, -3]].into_iter().collect();
        assert_eq!(clause_set(&f), expected);
    }

    #[test]
    fn self_subsume_is_idempotent() {
        let f = encode_reduced(4, 3, None).unwrap();
        let again = self_subsume(&f);
        assert_eq!(f.clauses, again.clauses);
    }

    #[test]
    fn k_too_small_rejected() {
        assert_eq!(encode_direct(4, 2, None), Err(EncodeError::KTooSmall(2)));
        assert_eq!(encode_cycle(4, 1, None), Err(EncodeError::KTooSmall(1)));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = encode_cycle(5, 4, None).unwrap();
        let text = emit_dimacs(&f);
        let (vars, clauses) = parse_dimacs(&text).unwrap();
        assert_eq!(vars, f.var_count);
        assert_eq!(clauses, f.clauses);
    }

    #[test]
    fn dimacs_empty_formula() {
        let f = CnfFormula { var_count: 0, clauses: vec![], varmap: VarMap::edges_only(2) };
        assert_eq!(emit_dimacs(&f), "p cnf 0 0\n");
    }

    #[test]
    fn dimacs_header_for_example_one() {
        let f = encode_direct(3, 3, None).unwrap();
        let text = emit_dimacs(&f);
        assert!(text.starts_with("p cnf 3 6\n"));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn dimacs_parse_errors() {
        assert!(matches!(
            parse_dimacs("p cnf 2\n1 0\n"),
            Err(EncodeError::DimacsParse { .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(EncodeError::DimacsParse { .. })
        ));
    }

    #[test]
    fn varmap_inverses() {
        let vm = VarMap::with_cycles(6);
        for i in 0..6 {
            for j in i + 1..6 {
                assert_eq!(vm.pair_of_var(vm.edge_var(i, j)), Some((i, j)));
            }
        }
        let mut seen = HashSet::new();
        for (i, j, l) in triples(6) {
            let v = vm.cycle_var(i, j, l);
            assert!(v as usize > vm.edge_count() && v as usize <= vm.var_count());
            assert!(seen.insert(v));
            assert_eq!(vm.triple_of_var(v), Some((i, j, l)));
        }
    }

    #[test]
    fn pivot_instance_fixes_expected_units() {
        // TT_2 on each side of the pivot: 2 + 1 + 2 vertices
        let tt2 = PartialTournament::from_tournament(&crate::tournament::transitive(2));
        let f = pivot_instance(&tt2, &tt2, 4, Encoding::Direct).unwrap();
        let units: HashSet<Vec<i32>> =
            f.clauses.iter().filter(|c| c.len() == 1).cloned().collect();
        let vm = &f.varmap;
        // inn edges point at the pivot (vertex 2), pivot points at out vertices
        for expected in [
            vm.edge_lit(0, 2),
            vm.edge_lit(1, 2),
            vm.edge_lit(2, 3),
            vm.edge_lit(2, 4),
            vm.edge_lit(0, 1),
            vm.edge_lit(3, 4),
        ] {
            assert!(units.contains(&vec![expected]), "missing unit {expected}");
        }
        assert_eq!(units.len(), 6);
    }

    #[test]
    fn pivot_instance_size_overflow() {
        let big = PartialTournament::new(40);
        assert_eq!(
            pivot_instance(&big, &big, 7, Encoding::Cycle),
            Err(EncodeError::SizeOverflow(81))
        );
    }
}
