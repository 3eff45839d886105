//! Shifted shapes, tableaux, reading words, bracketing, and the
//! semistandard decomposition tableau (SDT) conditions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

pub type Letter = u8;

/// Row lengths of a shifted diagram, top row first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::MalformedShape(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::MalformedShape(format!("{parts:?} is not strictly decreasing")));
        }
        Ok(Shape(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The staircase `(n, n−1, …, 1)`.
    pub fn staircase(n: usize) -> Self {
        Shape((1..=n).rev().collect())
    }

    /// All strict partitions of `size` with at most `max_rows` parts.
    pub fn strict_partitions(size: usize, max_rows: usize) -> Vec<Shape> {
        fn go(rest: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
            if rest == 0 {
                out.push(Shape(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p - 1, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(size, size, max_rows, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Shape::new(v)
    }
}

impl From<Shape> for Vec<usize> {
    fn from(s: Shape) -> Self {
        s.0
    }
}

/// A cell, 1-based: `row` 1 is the top row and `col` counts cells within
/// the row from its left end. Row `r` starts at diagram column `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub(crate) fn at(ri: usize, ci: usize) -> Self {
        Cell { row: ri + 1, col: ci + 1 }
    }

    pub(crate) fn idx(self) -> (usize, usize) {
        (self.row - 1, self.col - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    n: usize,
    rows: Vec<Vec<Letter>>,
}

#[derive(Deserialize)]
struct RawTableau {
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Self> {
        let mut rows = Vec::with_capacity(raw.rows.len());
        for row in raw.rows {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                if x == 0 || x as usize > raw.n || x > Letter::MAX as u32 {
                    return Err(Error::LetterOutOfRange { letter: x, n: raw.n });
                }
                r.push(x as Letter);
            }
            rows.push(r);
        }
        Tableau::new(raw.n, rows)
    }
}

impl Tableau {
    /// Checks structure only: letters in range, strict shape, at most `n`
    /// rows. SDT validity is a separate question, see [`validate_sdt`].
    pub fn new(n: usize, rows: Vec<Vec<Letter>>) -> Result<Self> {
        if n == 0 || n > Letter::MAX as usize {
            return Err(Error::MalformedShape(format!("rank {n} unsupported")));
        }
        for row in &rows {
            for &x in row {
                if x == 0 || x as usize > n {
                    return Err(Error::LetterOutOfRange { letter: x as u32, n });
                }
            }
        }
        Shape::new(rows.iter().map(Vec::len).collect())?;
        if rows.len() > n {
            return Err(Error::TooManyRows { rows: rows.len(), n });
        }
        Ok(Tableau { n, rows })
    }

    /// Builds a tableau without structural checks. Callers inside the crate
    /// use this for intermediate states.
    pub(crate) fn raw(n: usize, rows: Vec<Vec<Letter>>) -> Self {
        Tableau { n, rows }
    }

    pub fn empty(n: usize) -> Self {
        Tableau { n, rows: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<Letter>> {
        &mut self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, c: Cell) -> Letter {
        let (r, k) = c.idx();
        self.rows[r][k]
    }

    pub(crate) fn set(&mut self, c: Cell, x: Letter) {
        let (r, k) = c.idx();
        self.rows[r][k] = x;
    }

    /// Letter multiplicities in the ε-basis.
    pub fn content(&self) -> Weight {
        let mut v = vec![0i64; self.n];
        for &x in self.rows.iter().flatten() {
            v[x as usize - 1] += 1;
        }
        Weight::new(v)
    }

    /// `rd(T)`: rows top to bottom, each read right to left.
    pub fn reading_word(&self) -> TaggedWord {
        let mut entries = Vec::with_capacity(self.size());
        for (ri, row) in self.rows.iter().enumerate() {
            for ci in (0..row.len()).rev() {
                entries.push(Tagged { letter: row[ci], cell: Cell::at(ri, ci) });
            }
        }
        TaggedWord(entries)
    }

    /// `rd_i(T)`: the subword of letters `i` and `i+1`.
    pub fn restricted_word(&self, i: usize) -> Result<TaggedWord> {
        check_index(i, self.n)?;
        Ok(self.reading_word().restrict(i))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, " / ")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::IndexOutOfRange { index: i.to_string(), n })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tagged {
    pub letter: Letter,
    pub cell: Cell,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaggedWord(pub Vec<Tagged>);

impl TaggedWord {
    pub fn letters(&self) -> Vec<Letter> {
        self.0.iter().map(|t| t.letter).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn restrict(&self, i: usize) -> TaggedWord {
        TaggedWord(
            self.0
                .iter()
                .copied()
                .filter(|t| t.letter as usize == i || t.letter as usize == i + 1)
                .collect(),
        )
    }
}

/// For each position of a word in `{i, i+1}`, the position it is paired
/// with when adjacent `(i+1, i)` pairs are cancelled, or `None` if it
/// survives. The stack scan realises the unique maximal cancellation.
pub fn bracket(w: &TaggedWord, i: usize) -> Result<Vec<Option<usize>>> {
    let mut partner = vec![None; w.len()];
    let mut open: Vec<usize> = Vec::new();
    for (p, t) in w.0.iter().enumerate() {
        let x = t.letter as usize;
        if x == i + 1 {
            open.push(p);
        } else if x == i {
            if let Some(q) = open.pop() {
                partner[p] = Some(q);
                partner[q] = Some(p);
            }
        } else {
            return Err(Error::ForeignLetter { letter: x as u32, i });
        }
    }
    Ok(partner)
}

/// `red_i`: what survives cancellation. All `i`'s precede all `(i+1)`'s.
pub fn pair_reduce(w: &TaggedWord, i: usize) -> Result<TaggedWord> {
    let partner = bracket(w, i)?;
    Ok(TaggedWord(
        w.0.iter()
            .zip(&partner)
            .filter(|(_, p)| p.is_none())
            .map(|(t, _)| *t)
            .collect(),
    ))
}

/// Weakly decreasing then strictly increasing.
pub fn is_hook_word(w: &[Letter]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(hook_prefix_ok(w))
}

// A word is a hook word iff once it strictly increases it never again
// fails to strictly increase.
fn hook_prefix_ok(w: &[Letter]) -> bool {
    let mut rising = false;
    for p in w.windows(2) {
        if p[0] < p[1] {
            rising = true;
        } else if rising {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Row is not a hook word.
    NotHook { row: usize },
    /// The leftmost entry of `row` is not above every entry of the row below.
    LeftmostEntry { row: usize, below: Cell },
    /// `a` above `c`, `b` right of `c`, with `a ≤ b ≤ c`.
    TypeL { a: Cell, b: Cell, c: Cell },
    /// `b` left of `c`, `a` below `c`, with `a < b < c`.
    TypeU { a: Cell, b: Cell, c: Cell },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks the three local SDT conditions and reports every violation.
pub fn validate_sdt(t: &Tableau) -> ValidationReport {
    let rows = &t.rows;
    let mut v = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        if !row.is_empty() && !hook_prefix_ok(row) {
            v.push(Violation::NotHook { row: ri + 1 });
        }
    }
    for ri in 0..rows.len().saturating_sub(1) {
        let (up, down) = (&rows[ri], &rows[ri + 1]);
        if let Some(&lead) = up.first() {
            for (ci, &x) in down.iter().enumerate() {
                if lead <= x {
                    v.push(Violation::LeftmostEntry { row: ri + 1, below: Cell::at(ri + 1, ci) });
                }
            }
        }
        // Cell (ri, ci) sits directly above (ri+1, ci-1).
        for ci in 1..up.len() {
            let di = ci - 1;
            if di >= down.len() {
                break;
            }
            let (top, bot) = (up[ci], down[di]);
            for (m, &b) in down.iter().enumerate().skip(di + 1) {
                if top <= b && b <= bot {
                    v.push(Violation::TypeL {
                        a: Cell::at(ri, ci),
                        b: Cell::at(ri + 1, m),
                        c: Cell::at(ri + 1, di),
                    });
                }
            }
            for (m, &b) in up.iter().enumerate().take(ci) {
                if bot < b && b < top {
                    v.push(Violation::TypeU {
                        a: Cell::at(ri + 1, di),
                        b: Cell::at(ri, m),
                        c: Cell::at(ri, ci),
                    });
                }
            }
        }
    }
    ValidationReport { valid: v.is_empty(), violations: v }
}

pub fn is_sdt(t: &Tableau) -> bool {
    validate_sdt(t).valid
}

pub const DEFAULT_CANDIDATE_CAP: u64 = 10_000_000;

/// Every SDT of the given shape with letters in `1..=n`, sorted.
///
/// Fills row-major and prunes each placement against the conditions that
/// only involve already-placed cells. `cap` bounds visited partial fillings.
pub fn enumerate_sdt(shape: &Shape, n: usize, cap: u64) -> Result<Vec<Tableau>> {
    if shape.rows() > n {
        return Err(Error::TooManyRows { rows: shape.rows(), n });
    }
    let parts = shape.parts().to_vec();
    let mut rows: Vec<Vec<Letter>> = parts.iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut out = Vec::new();
    let mut visited = 0u64;
    fill(&parts, n, 0, &mut rows, &mut out, &mut visited, cap)?;
    out.sort();
    Ok(out)
}

fn fill(
    parts: &[usize],
    n: usize,
    ri: usize,
    rows: &mut Vec<Vec<Letter>>,
    out: &mut Vec<Tableau>,
    visited: &mut u64,
    cap: u64,
) -> Result<()> {
    *visited += 1;
    if *visited > cap {
        return Err(Error::CandidateCap { cap });
    }
    if ri == parts.len() {
        let t = Tableau::raw(n, rows.clone());
        debug_assert!(is_sdt(&t));
        out.push(t);
        return Ok(());
    }
    let ci = rows[ri].len();
    for x in 1..=n as Letter {
        if placement_ok(rows, ri, ci, x) {
            rows[ri].push(x);
            let next = if rows[ri].len() == parts[ri] { ri + 1 } else { ri };
            fill(parts, n, next, rows, out, visited, cap)?;
            rows[ri].pop();
        }
    }
    Ok(())
}

fn placement_ok(rows: &[Vec<Letter>], ri: usize, ci: usize, x: Letter) -> bool {
    let row = &rows[ri];
    // Hook prefix: after a rise, every step must rise.
    if ci >= 1 {
        let rising = row.windows(2).any(|w| w[0] < w[1]);
        if rising && row[ci - 1] >= x {
            return false;
        }
    }
    if ri == 0 {
        return true;
    }
    let up = &rows[ri - 1];
    if x >= up[0] {
        return false;
    }
    // x as `b` of a type-L: c at (ri, m), a at (ri-1, m+1), m < ci.
    for m in 0..ci {
        let (a, c) = (up[m + 1], row[m]);
        if a <= x && x <= c {
            return false;
        }
    }
    // x as `a` of a type-U: c at (ri-1, ci+1), b left of c in row ri-1.
    if let Some(&c) = up.get(ci + 1) {
        if up[..=ci].iter().any(|&b| x < b && b < c) {
            return false;
        }
    }
    true
}
