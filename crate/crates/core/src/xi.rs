//! The weight-preserving bijection `Ξ` between subsets of positive roots
//! and lowest weight elements of `SDT(−∞)`.
//!
//! The algorithm speaks of "row `j`" meaning the `j`-th row from the
//! bottom, which is top row `n+1−j`. Conversions happen in this module only.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::crystal::Element;
use crate::error::{Error, Result};
use crate::graph::limit_ball;
use crate::limit::{canonical_form, limit_generator, push_in_raw, LimitElement};
use crate::tableau::{bracket, Cell, Letter, Tableau};
use crate::weight::Weight;

/// A positive root `ε_i − ε_j`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i >= 1 && i < j && j <= n {
            Ok(Root { i, j })
        } else {
            Err(Error::IndexOutOfRange { index: format!("{i}-{j}"), n })
        }
    }

    pub fn weight(self, n: usize) -> Weight {
        Weight::root(n, self.i, self.j)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

impl FromStr for Root {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad root {s:?}, expected i-j"));
        let (a, b) = s.trim().split_once('-').ok_or_else(bad)?;
        let i = a.parse().map_err(|_| bad())?;
        let j = b.parse().map_err(|_| bad())?;
        if i >= 1 && i < j {
            Ok(Root { i, j })
        } else {
            Err(bad())
        }
    }
}

/// Parses `2-3,2-4,1-4` into a set of roots of rank `n`.
pub fn parse_roots(s: &str, n: usize) -> Result<BTreeSet<Root>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let r: Root = p.parse()?;
            Root::new(r.i, r.j, n)
        })
        .collect()
}

/// A decreasing run `k, k−1, …, i` of nontrivial cells in reading order,
/// each letter paired with the next, the last one unpaired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consecution {
    pub i: usize,
    pub k: usize,
    pub cells: Vec<Cell>,
}

// Reading-word view of a tableau with trivial-box flags and, for each
// position holding a letter x > 1, its partner in red_{x−1}.
struct Scan {
    cells: Vec<Cell>,
    letters: Vec<Letter>,
    trivial: Vec<bool>,
    lower_partner: Vec<Option<usize>>,
    pos: BTreeMap<Cell, usize>,
}

fn lead(t: &Tableau, ri: usize) -> usize {
    let x = (t.n() - ri) as Letter;
    t.rows()[ri].iter().take_while(|&&y| y == x).count()
}

impl Scan {
    fn new(t: &Tableau) -> Self {
        let rw = t.reading_word();
        let cells: Vec<Cell> = rw.0.iter().map(|x| x.cell).collect();
        let letters: Vec<Letter> = rw.0.iter().map(|x| x.letter).collect();
        let leads: Vec<usize> = (0..t.rows().len()).map(|ri| lead(t, ri)).collect();
        let trivial = cells.iter().map(|c| c.col <= leads[c.row - 1]).collect();
        let mut lower_partner = vec![None; cells.len()];
        for i in 1..t.n() {
            let idx: Vec<usize> =
                (0..letters.len()).filter(|&p| letters[p] as usize == i || letters[p] as usize == i + 1).collect();
            let w = rw.restrict(i);
            let partner = bracket(&w, i).expect("restricted word");
            for (k, &p) in idx.iter().enumerate() {
                if letters[p] as usize == i + 1 {
                    lower_partner[p] = partner[k].map(|q| idx[q]);
                }
            }
        }
        let pos = cells.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        Scan { cells, letters, trivial, lower_partner, pos }
    }

    /// The consecution starting at reading position `p`, as positions and
    /// the terminal letter.
    fn chain(&self, mut p: usize) -> Option<(Vec<usize>, usize)> {
        if self.trivial[p] {
            return None;
        }
        let mut out = vec![p];
        loop {
            if self.letters[p] == 1 {
                return Some((out, 1));
            }
            match self.lower_partner[p] {
                None => return Some((out, self.letters[p] as usize)),
                Some(q) if self.trivial[q] => return None,
                Some(q) => {
                    out.push(q);
                    p = q;
                }
            }
        }
    }

    /// Run-aware consecution: partners as in `chain`,
    /// but a run of equal letters in one row counts as one position, and the
    /// walk stops at the first run holding a letter unpaired in the next
    /// reduction. Returns the cells above the terminal and the terminal cell:
    /// the chain's own cell if it is unpaired, else the rightmost unpaired
    /// cell of its run.
    fn peel_chain(&self, t: &Tableau, start: usize) -> Option<(Vec<Cell>, Cell)> {
        if self.trivial[start] {
            return None;
        }
        let mut above = vec![self.cells[start]];
        let mut p = self.lower_partner[start]?;
        loop {
            if self.trivial[p] {
                return None;
            }
            let c = self.cells[p];
            let x = self.letters[p];
            let row = &t.rows()[c.row - 1];
            let (mut lo, mut hi) = (c.col - 1, c.col - 1);
            while lo > 0 && row[lo - 1] == x {
                lo -= 1;
            }
            while hi + 1 < row.len() && row[hi + 1] == x {
                hi += 1;
            }
            let is_free = |cell: &Cell| {
                let q = self.pos[cell];
                x == 1 || (!self.trivial[q] && self.lower_partner[q].is_none())
            };
            let free = if is_free(&c) {
                Some(c)
            } else {
                (lo..=hi).rev().map(|k| Cell { row: c.row, col: k + 1 }).find(is_free)
            };
            if let Some(term) = free {
                return Some((above, term));
            }
            above.push(c);
            p = self.lower_partner[p]?;
        }
    }

    /// Run-aware consecutions of `t`: every nontrivial start, walked with
    /// `peel_chain`; cells listed from the start down to the terminal.
    fn loose_consecutions(&self, t: &Tableau) -> Vec<Consecution> {
        let mut v: Vec<(usize, Consecution)> = (0..self.cells.len())
            .filter(|&p| !self.trivial[p])
            .filter_map(|p| {
                let (cells, term) = if self.letters[p] == 1 || self.lower_partner[p].is_none() {
                    (Vec::new(), self.cells[p])
                } else {
                    self.peel_chain(t, p)?
                };
                let mut cells = cells;
                cells.push(term);
                let c = Consecution { i: t.get(term) as usize, k: self.letters[p] as usize, cells };
                Some((p, c))
            })
            .collect();
        v.sort_by_key(|(p, c)| (std::cmp::Reverse(c.k), *p));
        v.into_iter().map(|(_, c)| c).collect()
    }

    fn run_of(&self, t: &Tableau, c: Cell) -> Vec<Cell> {
        let row = &t.rows()[c.row - 1];
        let x = row[c.col - 1];
        let (mut lo, mut hi) = (c.col - 1, c.col - 1);
        while lo > 0 && row[lo - 1] == x {
            lo -= 1;
        }
        while hi + 1 < row.len() && row[hi + 1] == x {
            hi += 1;
        }
        (lo..=hi).map(|k| Cell { row: c.row, col: k + 1 }).filter(|c| !self.trivial[self.pos[c]]).collect()
    }

    fn free(&self, c: Cell) -> bool {
        let q = self.pos[&c];
        !self.trivial[q] && (self.letters[q] == 1 || self.lower_partner[q].is_none())
    }

    /// Walk from `start` through partners of whole runs, moving on with the
    /// last partner in reading order until some partner's run holds an
    /// unpaired letter. Returns the visited cells and the last such letter.
    fn walk(&self, t: &Tableau, start: usize) -> Option<(Vec<Cell>, Cell)> {
        let mut chain = vec![self.cells[start]];
        let mut cur = self.cells[start];
        loop {
            let run = if chain.len() == 1 { vec![cur] } else { self.run_of(t, cur) };
            let mut parts: Vec<usize> =
                run.iter().filter_map(|c| self.lower_partner[self.pos[c]]).filter(|&q| !self.trivial[q]).collect();
            parts.sort_unstable();
            let &next = parts.last()?;
            let free = parts
                .iter()
                .flat_map(|&q| self.run_of(t, self.cells[q]))
                .filter(|&c| self.free(c))
                .map(|c| self.pos[&c])
                .max();
            if let Some(term) = free {
                return Some((chain, self.cells[term]));
            }
            cur = self.cells[next];
            chain.push(cur);
            if chain.len() > self.cells.len() {
                return None;
            }
        }
    }

    fn consecutions(&self) -> Vec<(usize, Consecution)> {
        let mut v: Vec<(usize, Consecution)> = (0..self.cells.len())
            .filter_map(|p| {
                self.chain(p).map(|(ps, a)| {
                    let c = Consecution {
                        i: a,
                        k: self.letters[p] as usize,
                        cells: ps.iter().map(|&q| self.cells[q]).collect(),
                    };
                    (p, c)
                })
            })
            .collect();
        v.sort_by_key(|(p, c)| (std::cmp::Reverse(c.k), *p));
        v
    }
}

pub fn nontrivial_reading_word(t: &LimitElement) -> Vec<(Letter, Cell)> {
    let s = Scan::new(t.tableau());
    (0..s.cells.len()).filter(|&p| !s.trivial[p]).map(|p| (s.letters[p], s.cells[p])).collect()
}

/// All consecutions, nested ones included, by `k` descending then by
/// reading position of the first cell.
pub fn find_consecutions(t: &LimitElement) -> Vec<Consecution> {
    Scan::new(t.tableau()).consecutions().into_iter().map(|(_, c)| c).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiStep {
    pub j: usize,
    pub k: usize,
    pub root: Root,
    pub log: Vec<String>,
    pub result: Tableau,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiTrace {
    pub steps: Vec<XiStep>,
    pub result: LimitElement,
}

// A cell addressed by top row and offset from the right end of the row,
// which is stable under pushing columns in at the left.
type RightCell = (usize, usize);

fn to_right(t: &Tableau, c: Cell) -> RightCell {
    (c.row - 1, t.rows()[c.row - 1].len() - c.col)
}

fn from_right(t: &Tableau, (ri, off): RightCell) -> Cell {
    Cell { row: ri + 1, col: t.rows()[ri].len() - off }
}

fn limit_weight(t: &Tableau) -> Result<Weight> {
    Ok(LimitElement::new(canonical_form(t)?)?.wt())
}

pub fn xi_forward(roots: &BTreeSet<Root>, n: usize) -> Result<LimitElement> {
    xi_forward_traced(roots, n).map(|t| t.result)
}

pub fn xi_forward_traced(roots: &BTreeSet<Root>, n: usize) -> Result<XiTrace> {
    for r in roots {
        Root::new(r.i, r.j, n)?;
    }
    let mut t = limit_generator(n).tableau().clone();
    let mut steps = Vec::new();
    for j in 2..=n {
        let mut xj: Vec<usize> = roots.iter().filter(|r| r.j == j).map(|r| r.i).collect();
        xj.sort_unstable_by(|a, b| b.cmp(a));
        for (k0, &i) in xj.iter().enumerate() {
            let (next, log) = add_root(&t, i, j, k0 + 1)?;
            t = next;
            steps.push(XiStep { j, k: k0 + 1, root: Root { i, j }, log, result: t.clone() });
        }
    }
    let result = LimitElement::new(t)?;
    if !result.is_lowest_weight() {
        return Err(Error::Defect("xi: result is not lowest weight".into()));
    }
    Ok(XiTrace { steps, result })
}

// Adds the k-th root `ε_i − ε_j` of X_j to the canonical tableau `t`.
//
// Where the rules leave a choice of cell inside a run of equal letters, the
// rightmost cell not yet touched by this root is used. Consecutions are
// taken from the tableau before the root, with runs of equal letters in a
// row treated as one position, and are preferred over an unpaired letter.
fn add_root(t: &Tableau, i: usize, j: usize, k: usize) -> Result<(Tableau, Vec<String>)> {
    let n = t.n();
    let defect = |m: String| Error::Defect(format!("xi: {m}"));
    let before = limit_weight(t)?;
    let prev = t.clone();
    let prev_cons = Scan::new(&prev).loose_consecutions(&prev);
    let mut t = prev.clone();
    let rj = n - j; // top row index of row j from the bottom
    if k == 1 {
        push_in_raw(&mut t, n + 1 - j);
    }
    let mut log = Vec::new();
    let mut modified: HashSet<RightCell> = HashSet::new();
    push_in_raw(&mut t, n + 2 - j);
    let row_len = t.rows()[rj].len();
    if row_len < k + 1 {
        return Err(defect(format!("row {j} too short at root {i}-{j}")));
    }
    let c = Cell { row: rj + 1, col: row_len - k };
    t.set(c, (j - k) as Letter);
    modified.insert(to_right(&t, c));
    log.push(format!("push in {}, set row {j} cell {} to {}", n + 2 - j, c.col, j - k));
    // Moves right along a run of `x`s while the next cell is untouched.
    let run_end = |t: &Tableau, modified: &HashSet<RightCell>, c: Cell| {
        let row = &t.rows()[c.row - 1];
        let x = row[c.col - 1];
        let mut col = c.col;
        while col < row.len() && row[col] == x && !modified.contains(&to_right(t, Cell { row: c.row, col: col + 1 })) {
            col += 1;
        }
        Cell { row: c.row, col }
    };
    let mut b = j - k;
    while b != i {
        let cons_hit = prev_cons.iter().find_map(|con| {
            let cells: Vec<Cell> = con.cells.iter().map(|&c| from_right(&t, to_right(&prev, c))).collect();
            let usable = con.k == b
                && con.i > i
                && cells
                    .iter()
                    .zip(&con.cells)
                    .all(|(&c, &pc)| !modified.contains(&to_right(&t, c)) && t.get(c) == prev.get(pc));
            usable.then_some((cells, con.i))
        });
        let unpaired = if cons_hit.is_some() {
            None
        } else {
            let w = t.reading_word().restrict(b);
            let partner = bracket(&w, b).expect("restricted word");
            w.0.iter().zip(&partner).find(|(x, p)| p.is_none() && x.letter as usize == b).map(|(x, _)| x.cell)
        };
        let a = if let Some((cells, a)) = cons_hit {
            for c in cells {
                let c = run_end(&t, &modified, c);
                t.set(c, t.get(c) - 1);
                modified.insert(to_right(&t, c));
            }
            log.push(format!("decrease ({a},{b})-consecution"));
            a
        } else if let Some(c) = unpaired {
            let right = Cell { row: c.row, col: c.col + 1 };
            let start = if t.rows()[c.row - 1].get(c.col).is_some_and(|&x| x as usize == b)
                && !modified.contains(&to_right(&t, right))
            {
                right
            } else {
                c
            };
            let target = run_end(&t, &modified, start);
            t.set(target, (b - 1) as Letter);
            modified.insert(to_right(&t, target));
            log.push(format!("unpaired {b}: row {} cell {} to {}", n + 1 - target.row, target.col, b - 1));
            b
        } else {
            let a = b;
            push_in_raw(&mut t, n + 1 - a);
            let ra = n - a;
            let c = Cell { row: ra + 1, col: lead(&t, ra) };
            if c.col == 0 {
                return Err(defect(format!("no trivial {a} in row {a}")));
            }
            t.set(c, (a - 1) as Letter);
            modified.insert(to_right(&t, c));
            log.push(format!("push in {}, rightmost trivial {a} to {}", n + 1 - a, a - 1));
            a
        };
        if a < 2 {
            return Err(defect(format!("letter underflow at root {i}-{j}")));
        }
        b = a - 1;
    }
    let t = canonical_form(&t).map_err(|e| defect(format!("root {i}-{j}: {e}")))?;
    let delta = &limit_weight(&t)? - &before;
    if delta != Weight::root(n, i, j) {
        return Err(defect(format!("root {i}-{j} changed the weight by {delta}")));
    }
    Ok((t, log))
}

/// One root removed by the inverse map and the tableau left behind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiPeel {
    pub root: Root,
    pub result: Tableau,
}

/// Peels roots off a lowest weight element until `L^{−∞}` remains.
///
/// Each step first follows the consecution ending row `j`. When undoing
/// that guess does not reproduce the tableau under the forward step, the
/// remaining choices of one cell per letter are searched, with backtracking.
pub fn xi_inverse(t: &LimitElement) -> Result<BTreeSet<Root>> {
    Ok(xi_inverse_traced(t)?.into_iter().map(|p| p.root).collect())
}

/// The peels of `xi_inverse` in order, the last root added first.
pub fn xi_inverse_traced(t: &LimitElement) -> Result<Vec<XiPeel>> {
    if !t.is_lowest_weight() {
        return Err(Error::NotLowestWeight);
    }
    let mut peels = peel_all(t.tableau())?
        .ok_or_else(|| Error::Defect(format!("xi inverse: {} is not in the image", t.tableau())))?;
    peels.reverse();
    Ok(peels)
}

// Peels in reverse order, so that each level can push its own step.
fn peel_all(t: &Tableau) -> Result<Option<Vec<XiPeel>>> {
    let n = t.n();
    let Some(rj) = (0..n).find(|&ri| lead(t, ri) < t.rows()[ri].len()) else {
        return Ok((t == limit_generator(n).tableau()).then(Vec::new));
    };
    let j = n - rj;
    let k = t.rows()[rj].len() - lead(t, rj) - 1;
    if k == 0 || t.rows()[rj].last().is_none_or(|&x| x as usize != j) {
        return Ok(None);
    }
    for (root, prev) in peel_candidates(t, rj, k) {
        if !LimitElement::new(prev.clone()).is_ok_and(|p| p.is_lowest_weight()) {
            continue;
        }
        if add_root(&prev, root.i, j, k).ok().is_none_or(|(next, _)| &next != t) {
            continue;
        }
        if let Some(mut rest) = peel_all(&prev)? {
            let same_j: Vec<usize> = rest.iter().filter(|p| p.root.j == j).map(|p| p.root.i).collect();
            if same_j.len() == k - 1 && same_j.iter().all(|&i| i > root.i) {
                rest.push(XiPeel { root, result: prev });
                return Ok(Some(rest));
            }
        }
    }
    Ok(None)
}

// Undoes a root given the cells to raise by one: the cells of row `j` ending
// at its last box, then one cell for each letter below.
fn undo(t: &Tableau, rj: usize, raise: &[Cell]) -> Option<Tableau> {
    let mut t = t.clone();
    for &c in raise {
        t.set(c, t.get(c) + 1);
    }
    for row in t.rows_mut().iter_mut().take(rj + 1) {
        row.pop();
    }
    canonical_form(&t).ok()
}

fn peel_candidates(t: &Tableau, rj: usize, k: usize) -> Vec<(Root, Tableau)> {
    let n = t.n();
    let j = n - rj;
    let len = t.rows()[rj].len();
    let top: Vec<Cell> = (len - k..=len).map(|col| Cell { row: rj + 1, col }).collect();
    let mut out = Vec::new();
    let scan = Scan::new(t);
    let last = Cell { row: rj + 1, col: len };
    if let Some((chain, term)) = scan.walk(t, scan.pos[&last]) {
        let leftmost = |c: Cell| {
            let row = &t.rows()[c.row - 1];
            let mut col = c.col;
            while col > 1 && row[col - 2] == row[col - 1] {
                col -= 1;
            }
            Cell { row: c.row, col }
        };
        let i = t.get(term) as usize;
        if i < j {
            let mut raise: Vec<Cell> = chain.iter().enumerate().map(|(p, &c)| if p == 0 { c } else { leftmost(c) }).collect();
            raise.push(leftmost(term));
            if let Some(prev) = undo(t, rj, &raise) {
                out.push((Root { i, j }, prev));
            }
        }
    }
    // Every choice of one nontrivial cell per letter below row j.
    let below: Vec<Vec<Cell>> = (0..=n)
        .map(|x| {
            (0..scan.cells.len())
                .filter(|&p| !scan.trivial[p] && scan.letters[p] as usize == x && scan.cells[p].row > rj + 1)
                .map(|p| scan.cells[p])
                .collect()
        })
        .collect();
    for i in (1..=j - k).rev() {
        let letters: Vec<&Vec<Cell>> = (i..j - k).map(|x| &below[x]).collect();
        if letters.iter().any(|v| v.is_empty()) {
            continue;
        }
        let mut idx = vec![0; letters.len()];
        loop {
            let mut raise = top.clone();
            raise.extend(idx.iter().zip(&letters).map(|(&q, v)| v[q]));
            if let Some(prev) = undo(t, rj, &raise) {
                out.push((Root { i, j }, prev));
            }
            let Some(p) = (0..idx.len()).find(|&p| idx[p] + 1 < letters[p].len()) else { break };
            idx[p] += 1;
            idx[..p].iter_mut().for_each(|q| *q = 0);
        }
    }
    out
}

/// Lowest weight elements of `SDT(−∞)` by weight, up to height `d`.
pub fn enumerate_lowest(n: usize, d: usize, max_nodes: usize) -> Result<BTreeMap<Weight, Vec<LimitElement>>> {
    let g = limit_ball(n, d as i64, max_nodes)?;
    let mut out: BTreeMap<Weight, Vec<LimitElement>> = BTreeMap::new();
    for e in g.elements() {
        if let Element::Limit(t) = e {
            if t.is_lowest_weight() {
                out.entry(t.wt()).or_default().push(t.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(spec: &[&[(Letter, usize)]]) -> Vec<Vec<Letter>> {
        spec.iter()
            .map(|r| r.iter().flat_map(|&(x, m)| std::iter::repeat_n(x, m)).collect())
            .collect()
    }

    fn tab(n: usize, spec: &[&[(Letter, usize)]]) -> Tableau {
        Tableau::new(n, rows(spec)).unwrap()
    }

    #[test]
    fn root_parsing() {
        let b = parse_roots("2-3,2-4,1-4,1-5", 5).unwrap();
        assert_eq!(b.len(), 4);
        assert!(parse_roots("3-2", 5).is_err());
        assert!(parse_roots("1-6", 5).is_err());
        assert_eq!(Root { i: 2, j: 3 }.to_string(), "2-3");
    }

    #[test]
    fn first_worked_example() {
        let b = parse_roots("2-3,2-4,1-4,1-5", 5).unwrap();
        let tr = xi_forward_traced(&b, 5).unwrap();
        let got: Vec<&Tableau> = tr.steps.iter().map(|s| &s.result).collect();
        let t2 = tab(5, &[&[(5, 7)], &[(4, 6)], &[(3, 3), (2, 1), (3, 1)], &[(2, 2)], &[(1, 1)]]);
        let t31 = tab(5, &[&[(5, 10)], &[(4, 7), (3, 1), (4, 1)], &[(3, 3), (2, 2), (3, 1)], &[(2, 2)], &[(1, 1)]]);
        let t3 = tab(
            5,
            &[&[(5, 11)], &[(4, 7), (2, 1), (3, 1), (4, 1)], &[(3, 3), (2, 1), (1, 1), (3, 1)], &[(2, 2)], &[(1, 1)]],
        );
        let t4 = tab(
            5,
            &[
                &[(5, 12), (4, 1), (5, 1)],
                &[(4, 7), (3, 1), (2, 1), (3, 1), (4, 1)],
                &[(3, 3), (1, 2), (2, 1)],
                &[(2, 2)],
                &[(1, 1)],
            ],
        );
        assert_eq!(got, vec![&t2, &t31, &t3, &t4]);
        assert_eq!(tr.result.tableau(), &t4);
        assert_eq!(xi_inverse(&tr.result).unwrap(), b);
        let peels = xi_inverse_traced(&tr.result).unwrap();
        assert_eq!(peels[0].root, Root { i: 1, j: 5 });
        assert_eq!(&peels[0].result, &t3);
        assert_eq!(&peels[1].result, &t31);
    }

    #[test]
    fn second_worked_example() {
        let b = parse_roots("1-3,2-5,1-5", 5).unwrap();
        let tr = xi_forward_traced(&b, 5).unwrap();
        let got: Vec<&Tableau> = tr.steps.iter().map(|s| &s.result).collect();
        let t3 = tab(5, &[&[(5, 8)], &[(4, 7)], &[(3, 4), (2, 1), (3, 1)], &[(2, 2), (1, 1)], &[(1, 1)]]);
        let t51 = tab(
            5,
            &[
                &[(5, 10), (4, 1), (5, 1)],
                &[(4, 8), (3, 1)],
                &[(3, 4), (2, 2), (3, 1)],
                &[(2, 2), (1, 1)],
                &[(1, 1)],
            ],
        );
        let t5 = tab(
            5,
            &[
                &[(5, 10), (3, 1), (4, 1), (5, 1)],
                &[(4, 8), (2, 1)],
                &[(3, 4), (2, 1), (1, 1), (3, 1)],
                &[(2, 2), (1, 1)],
                &[(1, 1)],
            ],
        );
        assert_eq!(got, vec![&t3, &t51, &t5]);
        assert_eq!(xi_inverse(&tr.result).unwrap(), b);
    }

    #[test]
    fn consecutions_of_the_worked_example() {
        let t = LimitElement::new(tab(
            5,
            &[&[(5, 11)], &[(4, 7), (2, 1), (3, 1), (4, 1)], &[(3, 3), (2, 1), (1, 1), (3, 1)], &[(2, 2)], &[(1, 1)]],
        ))
        .unwrap();
        let cs = find_consecutions(&t);
        let has = |i, k| cs.iter().any(|c| c.i == i && c.k == k);
        assert!(has(2, 3) && has(1, 4) && has(2, 2));
        for k in 1..=3 {
            assert!(has(1, k), "(1,{k})");
        }
        assert!(find_consecutions(&limit_generator(5)).is_empty());
        assert!(nontrivial_reading_word(&limit_generator(4)).is_empty());
    }

    #[test]
    fn empty_set_gives_generator() {
        assert_eq!(xi_forward(&BTreeSet::new(), 4).unwrap(), limit_generator(4));
        assert_eq!(xi_inverse(&limit_generator(4)).unwrap(), BTreeSet::new());
    }

    #[test]
    fn round_trip_rank_four() {
        let roots: Vec<Root> = crate::character::positive_roots(4).into_iter().map(|(i, j)| Root { i, j }).collect();
        let mut seen = HashSet::new();
        for mask in 0u32..1 << roots.len() {
            let b: BTreeSet<Root> = (0..roots.len()).filter(|k| mask >> k & 1 == 1).map(|k| roots[k]).collect();
            let t = xi_forward(&b, 4).unwrap_or_else(|e| panic!("{b:?}: {e}"));
            assert!(t.is_lowest_weight());
            assert_eq!(xi_inverse(&t).unwrap_or_else(|e| panic!("{b:?}: {e}")), b);
            assert!(seen.insert(t));
        }
    }

    #[test]
    fn inverse_rejects_non_lowest() {
        let t = limit_generator(3).apply("e1".parse().unwrap()).unwrap().unwrap();
        assert_eq!(xi_inverse(&t), Err(Error::NotLowestWeight));
    }
}
