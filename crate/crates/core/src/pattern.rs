//! Sign patterns: condensation, equivalence, term rank, sign nonsingularity
//! and the exact minimum-rank tests for ranks one and two.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Rectangular grid over {+, -, 0}, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    rows: usize,
    cols: usize,
    entries: Vec<Sign>,
}

impl SignPattern {
    pub fn new(rows: usize, cols: usize, entries: Vec<Sign>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::domain(format!(
                "{} entries for a {rows}x{cols} pattern",
                entries.len()
            )));
        }
        Ok(SignPattern {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SignPattern {
            rows,
            cols,
            entries: vec![Sign::Zero; rows * cols],
        }
    }

    pub fn filled(rows: usize, cols: usize, s: Sign) -> Self {
        SignPattern {
            rows,
            cols,
            entries: vec![s; rows * cols],
        }
    }

    pub fn empty() -> Self {
        SignPattern::zeros(0, 0)
    }

    pub fn from_rows(rows: &[Vec<Sign>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("ragged rows"));
        }
        Ok(SignPattern {
            rows: m,
            cols: n,
            entries: rows.concat(),
        })
    }

    /// Builds a pattern from strings such as `"+0-"`; panics on bad input.
    pub fn from_strs(rows: &[&str]) -> Self {
        let text = rows.join("\n");
        SignPattern::parse(&text).expect("valid pattern literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Sign) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        SignPattern {
            rows,
            cols,
            entries,
        }
    }

    pub fn of_matrix(m: &[Vec<f64>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        SignPattern::from_fn(rows, cols, |i, j| Sign::of_f64(m[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Sign] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Sign> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|s| s.is_zero()).count()
    }

    pub fn row_zero_count(&self, i: usize) -> usize {
        self.row(i).iter().filter(|s| s.is_zero()).count()
    }

    pub fn col_zero_count(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j).is_zero()).count()
    }

    pub fn transpose(&self) -> SignPattern {
        SignPattern::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn negate(&self) -> SignPattern {
        SignPattern {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&s| -s).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SignPattern {
        SignPattern::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// `diag(row_signs) * self * diag(col_signs)`.
    pub fn signed(&self, row_signs: &[Sign], col_signs: &[Sign]) -> SignPattern {
        SignPattern::from_fn(self.rows, self.cols, |i, j| {
            row_signs[i] * self.get(i, j) * col_signs[j]
        })
    }

    /// Parses the `.pat` text format.
    pub fn parse(text: &str) -> Result<SignPattern> {
        let mut rows: Vec<Vec<Sign>> = Vec::new();
        let mut first_line = 0;
        for (ln, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for (cn, ch) in line.chars().enumerate() {
                if ch.is_whitespace() || ch == ',' {
                    continue;
                }
                match Sign::from_char(ch) {
                    Some(s) => row.push(s),
                    None => {
                        return Err(Error::parse(
                            ln + 1,
                            cn + 1,
                            format!("unexpected character {ch:?}; expected one of + - 0"),
                        ))
                    }
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::parse(
                        ln + 1,
                        1,
                        format!(
                            "row has {} entries but line {} has {}",
                            row.len(),
                            first_line + 1,
                            first.len()
                        ),
                    ));
                }
            } else {
                first_line = ln;
            }
            rows.push(row);
        }
        SignPattern::from_rows(&rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            out.extend(self.row(i).iter().map(|s| s.to_char()));
            out.push('\n');
        }
        out
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.to_char()).collect())
            .collect()
    }
}

impl fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignPattern({}x{}) {:?}", self.rows, self.cols, self.row_strings())
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// condensation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Col,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeletionKind {
    Zero,
    Duplicate,
    Opposite,
}

/// One deleted line. Indices refer to the original pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionEvent {
    pub axis: Axis,
    pub kind: DeletionKind,
    pub removed: usize,
    pub survivor: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationReport {
    pub condensed: SignPattern,
    pub kept_rows: Vec<usize>,
    pub kept_cols: Vec<usize>,
    pub log: Vec<DeletionEvent>,
}

impl CondensationReport {
    /// Replays the deletion log against `original`.
    pub fn replay(&self, original: &SignPattern) -> SignPattern {
        let mut rows: Vec<usize> = (0..original.rows()).collect();
        let mut cols: Vec<usize> = (0..original.cols()).collect();
        for ev in &self.log {
            match ev.axis {
                Axis::Row => rows.retain(|&r| r != ev.removed),
                Axis::Col => cols.retain(|&c| c != ev.removed),
            }
        }
        original.submatrix(&rows, &cols)
    }

    /// Lifts a matrix on the condensed index set back to the original shape:
    /// deleted zero lines become zero, deleted duplicate/opposite lines copy
    /// (or negate) their survivor. Rank and sign agreement are preserved.
    pub fn lift<T>(&self, matrix: &[Vec<T>], zero: T) -> Vec<Vec<T>>
    where
        T: Clone + std::ops::Neg<Output = T>,
    {
        let mut row_ids = self.kept_rows.clone();
        let mut col_ids = self.kept_cols.clone();
        let mut data: Vec<Vec<T>> = matrix.to_vec();
        for ev in self.log.iter().rev() {
            match ev.axis {
                Axis::Row => {
                    let new_row: Vec<T> = match (ev.kind, ev.survivor) {
                        (DeletionKind::Zero, _) | (_, None) => vec![zero.clone(); col_ids.len()],
                        (kind, Some(s)) => {
                            let pos = row_ids.iter().position(|&r| r == s).expect("survivor row");
                            data[pos]
                                .iter()
                                .map(|x| {
                                    if kind == DeletionKind::Opposite {
                                        -x.clone()
                                    } else {
                                        x.clone()
                                    }
                                })
                                .collect()
                        }
                    };
                    row_ids.push(ev.removed);
                    data.push(new_row);
                }
                Axis::Col => {
                    let pos = match (ev.kind, ev.survivor) {
                        (DeletionKind::Zero, _) | (_, None) => None,
                        (_, Some(s)) => Some(col_ids.iter().position(|&c| c == s).expect("survivor col")),
                    };
                    for row in data.iter_mut() {
                        let v = match pos {
                            None => zero.clone(),
                            Some(p) if ev.kind == DeletionKind::Opposite => -row[p].clone(),
                            Some(p) => row[p].clone(),
                        };
                        row.push(v);
                    }
                    col_ids.push(ev.removed);
                }
            }
        }
        let mut row_order: Vec<usize> = (0..row_ids.len()).collect();
        row_order.sort_by_key(|&k| row_ids[k]);
        let mut col_order: Vec<usize> = (0..col_ids.len()).collect();
        col_order.sort_by_key(|&k| col_ids[k]);
        row_order
            .iter()
            .map(|&r| col_order.iter().map(|&c| data[r][c].clone()).collect())
            .collect()
    }
}

fn line_relation(a: &[Sign], b: &[Sign]) -> Option<DeletionKind> {
    if a == b {
        return Some(DeletionKind::Duplicate);
    }
    if a.iter().zip(b).all(|(&x, &y)| x == -y) {
        return Some(DeletionKind::Opposite);
    }
    None
}

/// Deletes zero, duplicate and opposite lines until none remain. Rows are
/// scanned top to bottom (the lower of a pair goes), then columns left to
/// right (the right one goes), repeated until stable.
pub fn condense(a: &SignPattern) -> CondensationReport {
    let mut rows: Vec<usize> = (0..a.rows()).collect();
    let mut cols: Vec<usize> = (0..a.cols()).collect();
    let mut log = Vec::new();
    loop {
        let mut changed = false;

        let mut kept: Vec<usize> = Vec::new();
        for &r in &rows {
            let line: Vec<Sign> = cols.iter().map(|&c| a.get(r, c)).collect();
            if line.iter().all(|s| s.is_zero()) {
                log.push(DeletionEvent {
                    axis: Axis::Row,
                    kind: DeletionKind::Zero,
                    removed: r,
                    survivor: None,
                });
                changed = true;
                continue;
            }
            let hit = kept.iter().find_map(|&k| {
                let other: Vec<Sign> = cols.iter().map(|&c| a.get(k, c)).collect();
                line_relation(&line, &other).map(|kind| (k, kind))
            });
            match hit {
                Some((k, kind)) => {
                    log.push(DeletionEvent {
                        axis: Axis::Row,
                        kind,
                        removed: r,
                        survivor: Some(k),
                    });
                    changed = true;
                }
                None => kept.push(r),
            }
        }
        rows = kept;

        let mut kept: Vec<usize> = Vec::new();
        for &c in &cols {
            let line: Vec<Sign> = rows.iter().map(|&r| a.get(r, c)).collect();
            if line.iter().all(|s| s.is_zero()) {
                log.push(DeletionEvent {
                    axis: Axis::Col,
                    kind: DeletionKind::Zero,
                    removed: c,
                    survivor: None,
                });
                changed = true;
                continue;
            }
            let hit = kept.iter().find_map(|&k| {
                let other: Vec<Sign> = rows.iter().map(|&r| a.get(r, k)).collect();
                line_relation(&line, &other).map(|kind| (k, kind))
            });
            match hit {
                Some((k, kind)) => {
                    log.push(DeletionEvent {
                        axis: Axis::Col,
                        kind,
                        removed: c,
                        survivor: Some(k),
                    });
                    changed = true;
                }
                None => kept.push(c),
            }
        }
        cols = kept;

        if !changed {
            break;
        }
    }
    if rows.is_empty() || cols.is_empty() {
        // a pattern with no rows or no columns condenses to the empty pattern
        rows.clear();
        cols.clear();
    }
    CondensationReport {
        condensed: a.submatrix(&rows, &cols),
        kept_rows: rows,
        kept_cols: cols,
        log,
    }
}

pub fn is_condensed(a: &SignPattern) -> bool {
    condense(a).condensed == *a
}

// ---------------------------------------------------------------------------
// equivalence

/// `B[row_perm[i]][col_perm[j]] = row_signs[i] * A[i][j] * col_signs[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_signs: Vec<Sign>,
    pub col_signs: Vec<Sign>,
}

impl EquivalenceWitness {
    pub fn identity(m: usize, n: usize) -> Self {
        EquivalenceWitness {
            row_perm: (0..m).collect(),
            col_perm: (0..n).collect(),
            row_signs: vec![Sign::Pos; m],
            col_signs: vec![Sign::Pos; n],
        }
    }

    pub fn apply(&self, a: &SignPattern) -> SignPattern {
        let mut out = SignPattern::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.set(
                    self.row_perm[i],
                    self.col_perm[j],
                    self.row_signs[i] * a.get(i, j) * self.col_signs[j],
                );
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        is_perm(&self.row_perm)
            && is_perm(&self.col_perm)
            && self.row_signs.len() == self.row_perm.len()
            && self.col_signs.len() == self.col_perm.len()
            && self.row_signs.iter().chain(&self.col_signs).all(|s| !s.is_zero())
    }
}

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub const DEFAULT_EQUIV_BUDGET: u64 = 50_000_000;

/// Searches for permutations and signatures carrying `a` onto `b`.
///
/// Rows of `a` are assigned to rows of `b` one at a time. Each column keeps a
/// sign-normalized partial vector (first nonzero forced to +), and a node
/// survives only while the multisets of partial column classes agree on both
/// sides. The first row's sign is fixed to + since negating every signature
/// gives the same map.
pub fn is_equivalent(a: &SignPattern, b: &SignPattern) -> Result<Option<EquivalenceWitness>> {
    is_equivalent_with_budget(a, b, DEFAULT_EQUIV_BUDGET)
}

pub fn is_equivalent_with_budget(
    a: &SignPattern,
    b: &SignPattern,
    budget: u64,
) -> Result<Option<EquivalenceWitness>> {
    if a.shape() != b.shape() {
        return Ok(None);
    }
    let (m, n) = a.shape();
    if a.zero_count() != b.zero_count() {
        return Ok(None);
    }
    let mut rz_a: Vec<usize> = (0..m).map(|i| a.row_zero_count(i)).collect();
    let mut rz_b: Vec<usize> = (0..m).map(|i| b.row_zero_count(i)).collect();
    let mut cz_a: Vec<usize> = (0..n).map(|j| a.col_zero_count(j)).collect();
    let mut cz_b: Vec<usize> = (0..n).map(|j| b.col_zero_count(j)).collect();
    let row_zeros_a = rz_a.clone();
    let row_zeros_b = rz_b.clone();
    rz_a.sort_unstable();
    rz_b.sort_unstable();
    cz_a.sort_unstable();
    cz_b.sort_unstable();
    if rz_a != rz_b || cz_a != cz_b {
        return Ok(None);
    }
    if m == 0 || n == 0 {
        return Ok(Some(EquivalenceWitness::identity(m, n)));
    }

    // most-nonzero rows first: they split column classes fastest
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (row_zeros_a[i], i));

    let mut search = EquivSearch {
        a,
        b,
        order,
        row_zeros_a,
        row_zeros_b,
        used: vec![false; m],
        assign: vec![(usize::MAX, Sign::Pos); m],
        nodes: 0,
        budget,
    };
    let start = ColumnState {
        class_a: vec![0; n],
        class_b: vec![0; n],
        flip_a: vec![Sign::Zero; n],
        flip_b: vec![Sign::Zero; n],
    };
    match search.descend(0, &start)? {
        Some(w) => {
            debug_assert_eq!(w.apply(a), *b);
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

#[derive(Clone)]
struct ColumnState {
    class_a: Vec<u32>,
    class_b: Vec<u32>,
    flip_a: Vec<Sign>,
    flip_b: Vec<Sign>,
}

struct EquivSearch<'a> {
    a: &'a SignPattern,
    b: &'a SignPattern,
    order: Vec<usize>,
    row_zeros_a: Vec<usize>,
    row_zeros_b: Vec<usize>,
    used: Vec<bool>,
    assign: Vec<(usize, Sign)>,
    nodes: u64,
    budget: u64,
}

impl EquivSearch<'_> {
    fn descend(&mut self, depth: usize, state: &ColumnState) -> Result<Option<EquivalenceWitness>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ResourceExhausted(format!(
                "equivalence search exceeded {} nodes",
                self.budget
            )));
        }
        let m = self.a.rows();
        if depth == m {
            return Ok(Some(self.finish(state)));
        }
        let i = self.order[depth];
        let signs: &[Sign] = if depth == 0 {
            &[Sign::Pos]
        } else {
            &[Sign::Pos, Sign::Neg]
        };
        for k in 0..m {
            if self.used[k] || self.row_zeros_b[k] != self.row_zeros_a[i] {
                continue;
            }
            for &eps in signs {
                if let Some(next) = self.extend(state, i, k, eps) {
                    self.used[k] = true;
                    self.assign[i] = (k, eps);
                    let found = self.descend(depth + 1, &next)?;
                    self.used[k] = false;
                    if found.is_some() {
                        return Ok(found);
                    }
                }
            }
        }
        Ok(None)
    }

    fn extend(&self, state: &ColumnState, i: usize, k: usize, eps: Sign) -> Option<ColumnState> {
        let n = self.a.cols();
        let mut next = state.clone();
        let mut ids: HashMap<(u32, Sign), u32> = HashMap::new();
        let mut count: HashMap<u32, i32> = HashMap::new();
        for j in 0..n {
            let v = eps * self.a.get(i, j);
            if next.flip_a[j].is_zero() && !v.is_zero() {
                next.flip_a[j] = v;
            }
            let key = (state.class_a[j], v * next.flip_a[j]);
            let len = ids.len() as u32;
            let id = *ids.entry(key).or_insert(len);
            next.class_a[j] = id;
            *count.entry(id).or_insert(0) += 1;
        }
        for j in 0..n {
            let v = self.b.get(k, j);
            if next.flip_b[j].is_zero() && !v.is_zero() {
                next.flip_b[j] = v;
            }
            let key = (state.class_b[j], v * next.flip_b[j]);
            let id = *ids.get(&key)?;
            next.class_b[j] = id;
            let c = count.get_mut(&id)?;
            *c -= 1;
            if *c < 0 {
                return None;
            }
        }
        Some(next)
    }

    fn finish(&self, state: &ColumnState) -> EquivalenceWitness {
        let (m, n) = self.a.shape();
        let mut by_class: HashMap<u32, Vec<usize>> = HashMap::new();
        for k in 0..n {
            by_class.entry(state.class_b[k]).or_default().push(k);
        }
        let mut col_perm = vec![0; n];
        let mut col_signs = vec![Sign::Pos; n];
        for j in 0..n {
            let pool = by_class.get_mut(&state.class_a[j]).expect("class multisets agree");
            let k = pool.remove(0);
            col_perm[j] = k;
            let (fa, fb) = (state.flip_a[j], state.flip_b[k]);
            col_signs[j] = if fa.is_zero() { Sign::Pos } else { fa * fb };
        }
        EquivalenceWitness {
            row_perm: (0..m).map(|i| self.assign[i].0).collect(),
            col_perm,
            row_signs: (0..m).map(|i| self.assign[i].1).collect(),
            col_signs,
        }
    }
}

// ---------------------------------------------------------------------------
// maximum rank

/// Maximum number of nonzero entries with no two in a line (the maximum
/// rank over the qualitative class). Kuhn's augmenting paths.
pub fn term_rank(a: &SignPattern) -> usize {
    let (m, n) = a.shape();
    let mut match_col: Vec<Option<usize>> = vec![None; n];
    let mut size = 0;
    for i in 0..m {
        let mut seen = vec![false; n];
        if augment(a, i, &mut seen, &mut match_col) {
            size += 1;
        }
    }
    size
}

fn augment(a: &SignPattern, i: usize, seen: &mut [bool], match_col: &mut [Option<usize>]) -> bool {
    for j in 0..a.cols() {
        if a.get(i, j).is_zero() || seen[j] {
            continue;
        }
        seen[j] = true;
        let free = match match_col[j] {
            None => true,
            Some(other) => augment(a, other, seen, match_col),
        };
        if free {
            match_col[j] = Some(i);
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// sign nonsingularity

pub const SNS_SIZE_CAP: usize = 10;
pub const SNS_SUBMATRIX_CAP: usize = 8;

/// True iff the determinant expansion has a nonzero term and every nonzero
/// term carries the same sign.
pub fn is_sns(a: &SignPattern) -> Result<bool> {
    let (m, n) = a.shape();
    if m != n {
        return Err(Error::domain(format!("sign nonsingularity needs a square pattern, got {m}x{n}")));
    }
    if n == 0 {
        return Err(Error::domain("sign nonsingularity needs n >= 1"));
    }
    if n > SNS_SIZE_CAP {
        return Err(Error::ResourceExhausted(format!(
            "determinant expansion capped at n = {SNS_SIZE_CAP}, got {n}"
        )));
    }
    Ok(sns_unchecked(a))
}

fn sns_unchecked(a: &SignPattern) -> bool {
    let n = a.rows();
    let mut used = vec![false; n];
    let mut term_sign = None;
    sns_walk(a, 0, &mut used, Sign::Pos, &mut term_sign)
}

// Returns false as soon as two terms disagree; `term_sign` holds the first term's sign.
fn sns_walk(
    a: &SignPattern,
    row: usize,
    used: &mut [bool],
    acc: Sign,
    term_sign: &mut Option<Sign>,
) -> bool {
    let n = a.rows();
    if row == n {
        return match term_sign {
            None => {
                *term_sign = Some(acc);
                true
            }
            Some(s) => *s == acc,
        };
    }
    let mut ok = true;
    for j in 0..n {
        let e = a.get(row, j);
        if used[j] || e.is_zero() {
            continue;
        }
        // parity: columns already used to the right of j are inversions
        let inversions = used[j + 1..].iter().filter(|&&u| u).count();
        let parity = if inversions % 2 == 0 { Sign::Pos } else { Sign::Neg };
        used[j] = true;
        ok = sns_walk(a, row + 1, used, acc * e * parity, term_sign);
        used[j] = false;
        if !ok {
            break;
        }
    }
    ok && (row > 0 || term_sign.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnsSubmatrix {
    pub size: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Largest k <= cap (cap clamped to 8) with a sign nonsingular k x k
/// submatrix; the witness is the lexicographically first one.
pub fn max_sns_submatrix(a: &SignPattern, cap: usize) -> SnsSubmatrix {
    let cap = cap.min(SNS_SUBMATRIX_CAP).min(a.rows()).min(a.cols());
    for k in (1..=cap).rev() {
        let row_sets = combinations(a.rows(), k);
        let col_sets = combinations(a.cols(), k);
        let hit = row_sets.par_iter().find_map_first(|rows| {
            col_sets.iter().find_map(|cols| {
                let sub = a.submatrix(rows, cols);
                sns_unchecked(&sub).then(|| (rows.clone(), cols.clone()))
            })
        });
        if let Some((rows, cols)) = hit {
            return SnsSubmatrix { size: k, rows, cols };
        }
    }
    SnsSubmatrix {
        size: 0,
        rows: Vec::new(),
        cols: Vec::new(),
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// minimum rank one and two

pub fn is_mr1(a: &SignPattern) -> bool {
    condense(a).condensed.shape() == (1, 1)
}

pub const DEFAULT_MR2_MAX_COLS: usize = 24;

/// Signatures and orders making every row and column of the condensed
/// pattern nondecreasing (- before 0 before +). Indices refer to the
/// condensed pattern; `row_order[t]` is the condensed row placed at position t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mr2Witness {
    pub kept_rows: Vec<usize>,
    pub kept_cols: Vec<usize>,
    pub row_signs: Vec<Sign>,
    pub col_signs: Vec<Sign>,
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
}

impl Mr2Witness {
    /// `P1 D1 A_c D2 P2` for the condensed pattern `ac`.
    pub fn arrange(&self, ac: &SignPattern) -> SignPattern {
        SignPattern::from_fn(ac.rows(), ac.cols(), |t, u| {
            let (i, j) = (self.row_order[t], self.col_order[u]);
            self.row_signs[i] * ac.get(i, j) * self.col_signs[j]
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mr2Verdict {
    pub is_mr2: bool,
    /// Which of the three conditions failed first (1-based), if any.
    pub failed_condition: Option<u8>,
    pub witness: Option<Mr2Witness>,
}

pub fn is_mr2(a: &SignPattern) -> Result<bool> {
    Ok(mr2_verdict(a, DEFAULT_MR2_MAX_COLS)?.is_mr2)
}

/// Decides minimum rank two exactly: the condensed pattern needs two rows
/// and columns, at most one zero per line, and signatures plus orders that
/// make every line nondecreasing.
pub fn mr2_verdict(a: &SignPattern, max_cols: usize) -> Result<Mr2Verdict> {
    let report = condense(a);
    let ac = &report.condensed;
    if ac.cols() > max_cols {
        return Err(Error::ResourceExhausted(format!(
            "condensed pattern has {} columns, limit {max_cols}",
            ac.cols()
        )));
    }
    let fail = |c: u8| Mr2Verdict {
        is_mr2: false,
        failed_condition: Some(c),
        witness: None,
    };
    if ac.rows() < 2 || ac.cols() < 2 {
        return Ok(fail(1));
    }
    if (0..ac.rows()).any(|i| ac.row_zero_count(i) > 1)
        || (0..ac.cols()).any(|j| ac.col_zero_count(j) > 1)
    {
        return Ok(fail(2));
    }
    match staircase_signing(ac, true) {
        Some((row_signs, col_signs, row_order, col_order)) => Ok(Mr2Verdict {
            is_mr2: true,
            failed_condition: None,
            witness: Some(Mr2Witness {
                kept_rows: report.kept_rows.clone(),
                kept_cols: report.kept_cols.clone(),
                row_signs,
                col_signs,
                row_order,
                col_order,
            }),
        }),
        None => Ok(fail(3)),
    }
}

type Staircase = (Vec<Sign>, Vec<Sign>, Vec<usize>, Vec<usize>);

/// Finds line signs (all + when `allow_signs` is false) and orders under
/// which every row and column is nondecreasing.
pub(crate) fn staircase_signing(a: &SignPattern, allow_signs: bool) -> Option<Staircase> {
    let (m, n) = a.shape();
    // lines: 0..m rows, m..m+n columns; BFS over the nonzero bipartite graph
    let mut order = Vec::with_capacity(m + n);
    let mut roots = vec![false; m + n];
    let mut seen = vec![false; m + n];
    for start in 0..m + n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        roots[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let nbrs: Vec<usize> = if x < m {
                (0..n).filter(|&j| !a.get(x, j).is_zero()).map(|j| m + j).collect()
            } else {
                (0..m).filter(|&i| !a.get(i, x - m).is_zero()).collect()
            };
            for y in nbrs {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut st = StairSearch {
        a,
        order,
        roots,
        allow_signs,
        sign: vec![Sign::Zero; m + n],
        col_graph: vec![vec![0u16; n]; n],
        row_graph: vec![vec![0u16; m]; m],
    };
    if st.descend(0) {
        let row_signs: Vec<Sign> = st.sign[..m].to_vec();
        let col_signs: Vec<Sign> = st.sign[m..].to_vec();
        let row_order = topo_order(&st.row_graph)?;
        let col_order = topo_order(&st.col_graph)?;
        Some((row_signs, col_signs, row_order, col_order))
    } else {
        None
    }
}

struct StairSearch<'a> {
    a: &'a SignPattern,
    order: Vec<usize>,
    roots: Vec<bool>,
    allow_signs: bool,
    sign: Vec<Sign>,
    col_graph: Vec<Vec<u16>>,
    row_graph: Vec<Vec<u16>>,
}

impl StairSearch<'_> {
    fn descend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let line = self.order[depth];
        let choices: &[Sign] = if !self.allow_signs || self.roots[line] {
            &[Sign::Pos]
        } else {
            &[Sign::Pos, Sign::Neg]
        };
        for &s in choices {
            self.sign[line] = s;
            let added = self.add_constraints(line);
            let ok = acyclic(&self.col_graph) && acyclic(&self.row_graph);
            if ok && self.descend(depth + 1) {
                return true;
            }
            self.remove_constraints(&added);
        }
        self.sign[line] = Sign::Zero;
        false
    }

    fn value(&self, i: usize, j: usize) -> Option<Sign> {
        let m = self.a.rows();
        let (ri, cj) = (self.sign[i], self.sign[m + j]);
        if ri.is_zero() || cj.is_zero() {
            None
        } else {
            Some(ri * self.a.get(i, j) * cj)
        }
    }

    // returns (is_row_graph, from, to) edges added
    fn add_constraints(&mut self, line: usize) -> Vec<(bool, usize, usize)> {
        let (m, n) = self.a.shape();
        let mut added = Vec::new();
        let mut touched_rows = Vec::new();
        let mut touched_cols = Vec::new();
        if line < m {
            touched_rows.push(line);
        } else {
            touched_cols.push(line - m);
        }
        // a newly signed row adds order constraints on columns (its own
        // entries) and on rows (via every signed column)
        for &i in &touched_rows {
            let vals: Vec<(usize, Sign)> = (0..n).filter_map(|j| self.value(i, j).map(|v| (j, v))).collect();
            for &(j1, v1) in &vals {
                for &(j2, v2) in &vals {
                    if v1 < v2 {
                        self.col_graph[j1][j2] += 1;
                        added.push((false, j1, j2));
                    }
                }
            }
            for &(j, v) in &vals {
                for i2 in 0..m {
                    if i2 == i {
                        continue;
                    }
                    if let Some(w) = self.value(i2, j) {
                        if v < w {
                            self.row_graph[i][i2] += 1;
                            added.push((true, i, i2));
                        } else if w < v {
                            self.row_graph[i2][i] += 1;
                            added.push((true, i2, i));
                        }
                    }
                }
            }
        }
        for &j in &touched_cols {
            let vals: Vec<(usize, Sign)> = (0..m).filter_map(|i| self.value(i, j).map(|v| (i, v))).collect();
            for &(i1, v1) in &vals {
                for &(i2, v2) in &vals {
                    if v1 < v2 {
                        self.row_graph[i1][i2] += 1;
                        added.push((true, i1, i2));
                    }
                }
            }
            for &(i, v) in &vals {
                for j2 in 0..n {
                    if j2 == j {
                        continue;
                    }
                    if let Some(w) = self.value(i, j2) {
                        if v < w {
                            self.col_graph[j][j2] += 1;
                            added.push((false, j, j2));
                        } else if w < v {
                            self.col_graph[j2][j] += 1;
                            added.push((false, j2, j));
                        }
                    }
                }
            }
        }
        added
    }

    fn remove_constraints(&mut self, added: &[(bool, usize, usize)]) {
        for &(is_row, u, v) in added {
            if is_row {
                self.row_graph[u][v] -= 1;
            } else {
                self.col_graph[u][v] -= 1;
            }
        }
    }
}

fn acyclic(g: &[Vec<u16>]) -> bool {
    topo_order(g).is_some()
}

/// Kahn's algorithm, smallest index first.
fn topo_order(g: &[Vec<u16>]) -> Option<Vec<usize>> {
    let n = g.len();
    let mut indeg = vec![0usize; n];
    for row in g {
        for (v, &c) in row.iter().enumerate() {
            if c > 0 {
                indeg[v] += 1;
            }
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(&u) = ready.iter().next() {
        ready.remove(&u);
        out.push(u);
        for v in 0..n {
            if g[u][v] > 0 {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
    }
    (out.len() == n).then_some(out)
}

/// Every row and column of `a` has - entries before 0 before +.
pub fn is_nondecreasing(a: &SignPattern) -> bool {
    let rows_ok = (0..a.rows()).all(|i| a.row(i).windows(2).all(|w| w[0] <= w[1]));
    let cols_ok = (0..a.cols()).all(|j| a.col(j).windows(2).all(|w| w[0] <= w[1]));
    rows_ok && cols_ok
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Clone, Debug)]
pub struct MrOptions {
    pub sns_cap: usize,
    pub try_rank: Option<usize>,
    pub search: crate::realize::SearchParams,
    pub mr2_max_cols: usize,
}

impl Default for MrOptions {
    fn default() -> Self {
        MrOptions {
            sns_cap: 4,
            try_rank: None,
            search: crate::realize::SearchParams::default(),
            mr2_max_cols: DEFAULT_MR2_MAX_COLS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum BoundSource {
    ZeroPattern,
    Nonzero,
    Sns { rows: Vec<usize>, cols: Vec<usize> },
    NotMr1,
    NotMr2,
    Mr1,
    Mr2,
    TermRank,
    CondensedSize,
    Realization { rank: usize },
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |v: &[usize]| {
            v.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            BoundSource::ZeroPattern => write!(f, "zero pattern"),
            BoundSource::Nonzero => write!(f, "nonzero pattern"),
            BoundSource::Sns { rows, cols } => write!(
                f,
                "SNS {k}\u{d7}{k} at rows {} / cols {}",
                one_based(rows),
                one_based(cols),
                k = rows.len()
            ),
            BoundSource::NotMr1 => write!(f, "condensed pattern larger than 1\u{d7}1"),
            BoundSource::NotMr2 => write!(f, "minimum rank 2 test negative"),
            BoundSource::Mr1 => write!(f, "condensed pattern is 1\u{d7}1"),
            BoundSource::Mr2 => write!(f, "minimum rank 2 test positive"),
            BoundSource::TermRank => write!(f, "term rank"),
            BoundSource::CondensedSize => write!(f, "condensed size"),
            BoundSource::Realization { .. } => write!(f, "realization found"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEvidence {
    pub value: usize,
    #[serde(flatten)]
    pub source: BoundSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrBounds {
    pub lower: usize,
    pub upper: usize,
    pub lower_evidence: Vec<BoundEvidence>,
    pub upper_evidence: Vec<BoundEvidence>,
}

impl MrBounds {
    pub fn lower_source(&self) -> Option<&BoundSource> {
        self.lower_evidence
            .iter()
            .find(|e| e.value == self.lower)
            .map(|e| &e.source)
    }

    pub fn upper_source(&self) -> Option<&BoundSource> {
        self.upper_evidence
            .iter()
            .find(|e| e.value == self.upper)
            .map(|e| &e.source)
    }
}

/// Lower and upper bounds on the minimum rank, each with the tests that
/// produced it. Lower bounds come only from exact tests; a realization
/// search contributes an upper bound when it succeeds and nothing otherwise.
pub fn mr_bounds(a: &SignPattern, options: &MrOptions) -> Result<MrBounds> {
    let report = condense(a);
    let ac = &report.condensed;
    if ac.rows() == 0 {
        let ev = BoundEvidence {
            value: 0,
            source: BoundSource::ZeroPattern,
        };
        return Ok(MrBounds {
            lower: 0,
            upper: 0,
            lower_evidence: vec![ev.clone()],
            upper_evidence: vec![ev],
        });
    }
    let mut lower_ev = vec![BoundEvidence {
        value: 1,
        source: BoundSource::Nonzero,
    }];
    let mut upper_ev = vec![
        BoundEvidence {
            value: term_rank(a),
            source: BoundSource::TermRank,
        },
        BoundEvidence {
            value: ac.rows().min(ac.cols()),
            source: BoundSource::CondensedSize,
        },
    ];
    let sns = max_sns_submatrix(a, options.sns_cap);
    if sns.size > 0 {
        lower_ev.push(BoundEvidence {
            value: sns.size,
            source: BoundSource::Sns {
                rows: sns.rows,
                cols: sns.cols,
            },
        });
    }
    if is_mr1(a) {
        lower_ev.push(BoundEvidence {
            value: 1,
            source: BoundSource::Mr1,
        });
        upper_ev.push(BoundEvidence {
            value: 1,
            source: BoundSource::Mr1,
        });
    } else {
        lower_ev.push(BoundEvidence {
            value: 2,
            source: BoundSource::NotMr1,
        });
        if mr2_verdict(a, options.mr2_max_cols)?.is_mr2 {
            lower_ev.push(BoundEvidence {
                value: 2,
                source: BoundSource::Mr2,
            });
            upper_ev.push(BoundEvidence {
                value: 2,
                source: BoundSource::Mr2,
            });
        } else {
            lower_ev.push(BoundEvidence {
                value: 3,
                source: BoundSource::NotMr2,
            });
        }
    }
    let mut lower = lower_ev.iter().map(|e| e.value).max().unwrap_or(0);
    let mut upper = upper_ev.iter().map(|e| e.value).min().unwrap_or(0);
    if let Some(r) = options.try_rank {
        if r >= 2 && r < upper && r >= lower {
            match crate::realize::search_realization(a, r, &options.search) {
                Ok(_) => {
                    upper_ev.push(BoundEvidence {
                        value: r,
                        source: BoundSource::Realization { rank: r },
                    });
                    upper = r;
                }
                Err(Error::NotFound(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    // sound inputs never cross; clamp only guards against a numerical upper bound
    if lower > upper {
        lower = upper;
    }
    Ok(MrBounds {
        lower,
        upper,
        lower_evidence: lower_ev,
        upper_evidence: upper_ev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[&str]) -> SignPattern {
        SignPattern::from_strs(rows)
    }

    #[test]
    fn parse_format() {
        let a = SignPattern::parse("# comment\n+ - 0\n0 0 +\n").unwrap();
        assert_eq!(a.shape(), (2, 3));
        assert_eq!(a.get(0, 1), Sign::Neg);
        assert_eq!(SignPattern::parse(&a.to_text()).unwrap(), a);
        match SignPattern::parse("++\n+x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(SignPattern::parse("++\n+\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(SignPattern::parse("# only comments\n").unwrap().shape(), (0, 0));
    }

    #[test]
    fn condense_examples() {
        let r = condense(&p(&["++", "++"]));
        assert_eq!(r.condensed, p(&["+"]));
        let r = condense(&p(&["+-", "-+", "00"]));
        assert_eq!(r.condensed, p(&["+"]));
        assert_eq!(r.kept_rows, vec![0]);
        assert_eq!(r.kept_cols, vec![0]);
        let kinds: Vec<_> = r.log.iter().map(|e| (e.axis, e.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (Axis::Row, DeletionKind::Opposite),
                (Axis::Row, DeletionKind::Zero),
                (Axis::Col, DeletionKind::Opposite)
            ]
        );
        let z = condense(&SignPattern::zeros(3, 2));
        assert_eq!(z.condensed.shape(), (0, 0));
    }

    #[test]
    fn condense_needs_more_than_one_sweep() {
        // the duplicate rows only appear after column 2 (a copy of column 0) goes
        let a = p(&["+0+", "+-+", "+-+"]);
        let r = condense(&a);
        assert_eq!(r.replay(&a), r.condensed);
        assert!(is_condensed(&r.condensed));
    }

    #[test]
    fn lift_restores_shape_and_signs() {
        let a = p(&["+-0", "-+0", "000", "+-0"]);
        let r = condense(&a);
        let m: Vec<Vec<i64>> = vec![vec![3; r.condensed.cols()]; r.condensed.rows()];
        let lifted = r.lift(&m, 0i64);
        let signs = SignPattern::from_fn(4, 3, |i, j| Sign::from_i8(lifted[i][j].signum() as i8));
        assert_eq!(signs, a);
    }

    #[test]
    fn equivalence_examples() {
        let a1 = p(&["+++", "-++", "-0+"]);
        let w = is_equivalent(&a1, &a1).unwrap().unwrap();
        assert_eq!(w.apply(&a1), a1);
        let w = is_equivalent(&a1, &a1.negate()).unwrap().unwrap();
        assert_eq!(w.apply(&a1), a1.negate());

        let t = EquivalenceWitness {
            row_perm: vec![1, 0, 2],
            col_perm: vec![0, 1, 2],
            row_signs: vec![Sign::Pos; 3],
            col_signs: vec![Sign::Pos, Sign::Neg, Sign::Pos],
        };
        let b = t.apply(&a1);
        let w = is_equivalent(&a1, &b).unwrap().unwrap();
        assert_eq!(w.apply(&a1), b);
        assert!(w.is_valid());

        assert_eq!(is_equivalent(&a1, &p(&["++", "++"])).unwrap(), None);
        assert_eq!(is_equivalent(&p(&["+0", "00"]), &p(&["++", "00"])).unwrap(), None);
        assert_eq!(is_equivalent(&p(&["++", "+-"]), &p(&["++", "++"])).unwrap(), None);
    }

    #[test]
    fn equivalence_budget() {
        let a = SignPattern::filled(6, 6, Sign::Pos);
        let mut b = a.clone();
        b.set(5, 5, Sign::Neg);
        assert!(matches!(
            is_equivalent_with_budget(&a, &b, 10),
            Err(Error::ResourceExhausted(_))
        ));
    }

    #[test]
    fn term_rank_examples() {
        assert_eq!(term_rank(&SignPattern::zeros(2, 3)), 0);
        assert_eq!(term_rank(&p(&["+0", "00"])), 1);
        assert_eq!(term_rank(&p(&["++0", "+00", "+00"])), 2);
    }

    #[test]
    fn sns_examples() {
        assert!(is_sns(&p(&["+0", "0+"])).unwrap());
        assert!(!is_sns(&p(&["++", "++"])).unwrap());
        assert!(is_sns(&p(&["++", "-+"])).unwrap());
        assert!(!is_sns(&p(&["00", "0+"])).unwrap());
        assert!(matches!(is_sns(&p(&["++"])), Err(Error::Domain(_))));
        assert!(matches!(
            is_sns(&SignPattern::filled(11, 11, Sign::Pos)),
            Err(Error::ResourceExhausted(_))
        ));
    }

    #[test]
    fn max_sns_examples() {
        assert_eq!(max_sns_submatrix(&SignPattern::filled(3, 4, Sign::Pos), 4).size, 1);
        assert_eq!(max_sns_submatrix(&p(&["+00", "0+0", "00+"]), 4).size, 3);
        assert_eq!(max_sns_submatrix(&SignPattern::zeros(2, 2), 4).size, 0);
    }

    #[test]
    fn mr1_examples() {
        assert!(is_mr1(&p(&["+"])));
        assert!(is_mr1(&p(&["++", "++"])));
        assert!(is_mr1(&p(&["+-", "-+"])));
        assert!(!is_mr1(&p(&["+++", "-++", "-0+"])));
        assert!(!is_mr1(&SignPattern::zeros(2, 2)));
    }

    #[test]
    fn mr2_examples() {
        let a1 = p(&["+++", "-++", "-0+"]);
        let a2 = p(&["+++", "-++", "+0-"]);
        for a in [&a1, &a2] {
            let v = mr2_verdict(a, DEFAULT_MR2_MAX_COLS).unwrap();
            assert!(v.is_mr2);
            let w = v.witness.unwrap();
            let ac = condense(a).condensed;
            assert!(is_nondecreasing(&w.arrange(&ac)));
        }
        assert!(!is_mr2(&p(&["+"])).unwrap());
        assert_eq!(
            mr2_verdict(&p(&["+00", "0+0", "00+"]), 24).unwrap().failed_condition,
            Some(2)
        );
        // one zero per line, but sign nonsingular, so minimum rank 3
        let sns3 = p(&["++0", "0++", "+-+"]);
        assert!(is_sns(&sns3).unwrap());
        assert!(!is_mr2(&sns3).unwrap());
    }

    #[test]
    fn mr2_column_limit() {
        let wide = SignPattern::from_fn(2, 30, |i, j| if (j >> i) & 1 == 1 { Sign::Pos } else { Sign::Neg });
        let tall = SignPattern::from_fn(6, 30, |i, j| if (j >> i) & 1 == 1 { Sign::Pos } else { Sign::Neg });
        assert_eq!(condense(&tall).condensed.cols(), 30);
        assert!(matches!(mr2_verdict(&tall, 24), Err(Error::ResourceExhausted(_))));
        assert!(mr2_verdict(&wide, 24).is_ok());
    }

    #[test]
    fn bounds_examples() {
        let opts = MrOptions::default();
        let z = mr_bounds(&SignPattern::zeros(2, 2), &opts).unwrap();
        assert_eq!((z.lower, z.upper), (0, 0));
        let d = mr_bounds(&p(&["+0", "0+"]), &opts).unwrap();
        assert_eq!((d.lower, d.upper), (2, 2));
        let one = mr_bounds(&p(&["++", "++"]), &opts).unwrap();
        assert_eq!((one.lower, one.upper), (1, 1));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(9, 4).len(), 126);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
