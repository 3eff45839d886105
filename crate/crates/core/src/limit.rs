//! The limit crystal `SDT(−∞)` realised by dual marginally large tableaux.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{lowest_generator, raw_apply, reduced_counts, FiniteElement, Index, OperatorLabel};
use crate::tableau::{check_index, is_sdt, Letter, Shape, Tableau};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Largeness {
    NotDualLarge,
    DualLarge,
    DualMarginallyLarge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    In,
    Out,
}

/// Letter of the trivial boxes in top row `ri` (0-based).
fn trivial_letter(n: usize, ri: usize) -> Letter {
    (n - ri) as Letter
}

fn lead(t: &Tableau, ri: usize) -> usize {
    let x = trivial_letter(t.n(), ri);
    t.rows().get(ri).map_or(0, |row| row.iter().take_while(|&&y| y == x).count())
}

fn row_len(t: &Tableau, ri: usize) -> usize {
    t.rows().get(ri).map_or(0, Vec::len)
}

/// Excess of leading trivial boxes in each top row `r` over the box count
/// of the row below, minus one. Marginal largeness means all zero.
pub fn excess(t: &Tableau) -> Vec<i64> {
    (0..t.n()).map(|ri| lead(t, ri) as i64 - row_len(t, ri + 1) as i64 - 1).collect()
}

pub fn largeness(t: &Tableau) -> Largeness {
    let d = excess(t);
    if d.iter().all(|&x| x == 0) {
        Largeness::DualMarginallyLarge
    } else if d.iter().all(|&x| x >= 0) {
        Largeness::DualLarge
    } else {
        Largeness::NotDualLarge
    }
}

pub(crate) fn push_in_raw(t: &mut Tableau, h: usize) {
    let n = t.n();
    let rows = t.rows_mut();
    for ri in 0..h {
        if rows.len() <= ri {
            rows.push(Vec::new());
        }
        rows[ri].insert(0, trivial_letter(n, ri));
    }
}

pub(crate) fn push_out_raw(t: &mut Tableau, h: usize) -> Result<()> {
    let n = t.n();
    if (0..h).any(|ri| t.rows().get(ri).and_then(|r| r.first()) != Some(&trivial_letter(n, ri))) {
        return Err(Error::NoTrivialColumn(h));
    }
    let rows = t.rows_mut();
    for row in rows.iter_mut().take(h) {
        row.remove(0);
    }
    while rows.last().is_some_and(Vec::is_empty) {
        rows.pop();
    }
    Ok(())
}

/// Pushes a trivial column of height `h` in or out at the left.
pub fn push_column(t: &Tableau, h: usize, dir: Direction) -> Result<Tableau> {
    let n = t.n();
    if h == 0 || h > n {
        return Err(Error::IndexOutOfRange { index: format!("height {h}"), n });
    }
    let mut out = t.clone();
    match dir {
        Direction::In => push_in_raw(&mut out, h),
        Direction::Out => push_out_raw(&mut out, h)?,
    }
    let checked = Tableau::new(n, out.rows().to_vec()).map_err(|_| Error::NoTrivialColumn(h))?;
    if !is_sdt(&checked) {
        return Err(Error::InvalidTableau(format!("{checked} after push of height {h}")));
    }
    Ok(checked)
}

/// Heights `h` whose trivial column can be pushed out while staying dual
/// large.
pub fn eligible_push_outs(t: &Tableau) -> Vec<usize> {
    excess(t).iter().enumerate().filter(|(_, &d)| d > 0).map(|(ri, _)| ri + 1).collect()
}

/// Moves a tableau to the marginally large member of its class by pushing
/// columns in or out. The output is checked for validity and marginality.
pub(crate) fn canonical_form(t: &Tableau) -> Result<Tableau> {
    let d = excess(t);
    let mut out = t.clone();
    for (ri, &x) in d.iter().enumerate() {
        for _ in x..0 {
            push_in_raw(&mut out, ri + 1);
        }
    }
    for (ri, &x) in d.iter().enumerate() {
        for _ in 0..x {
            push_out_raw(&mut out, ri + 1)
                .map_err(|_| Error::NotMarginallyLargeClass(t.to_string()))?;
        }
    }
    let fine = Tableau::new(t.n(), out.rows().to_vec()).is_ok()
        && is_sdt(&out)
        && largeness(&out) == Largeness::DualMarginallyLarge;
    if fine {
        Ok(out)
    } else {
        Err(Error::NotMarginallyLargeClass(t.to_string()))
    }
}

pub fn canonicalize(t: &Tableau) -> Result<LimitElement> {
    if !is_sdt(t) {
        return Err(Error::InvalidTableau(t.to_string()));
    }
    canonical_form(t).map(LimitElement)
}

/// An element of `SDT(−∞)`: a valid, dual marginally large tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Tableau", into = "Tableau")]
pub struct LimitElement(Tableau);

impl TryFrom<Tableau> for LimitElement {
    type Error = Error;
    fn try_from(t: Tableau) -> Result<Self> {
        LimitElement::new(t)
    }
}

impl From<LimitElement> for Tableau {
    fn from(e: LimitElement) -> Tableau {
        e.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitStats {
    pub wt: Weight,
    pub eps: i64,
    pub phi: i64,
}

impl LimitElement {
    pub fn new(t: Tableau) -> Result<Self> {
        if !is_sdt(&t) {
            return Err(Error::InvalidTableau(t.to_string()));
        }
        if largeness(&t) != Largeness::DualMarginallyLarge {
            return Err(Error::NotMarginallyLarge);
        }
        Ok(LimitElement(t))
    }

    pub fn tableau(&self) -> &Tableau {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// Raw cell change as in the finite crystal, then canonicalization.
    pub fn apply(&self, op: OperatorLabel) -> Result<Option<LimitElement>> {
        op.index.check(self.n())?;
        match raw_apply(&self.0, op) {
            None => Ok(None),
            Some(t) => canonical_form(&t)
                .map(|c| Some(LimitElement(c)))
                .map_err(|e| Error::Defect(format!("{op} on {}: {e}", self.0))),
        }
    }

    fn base(&self) -> Tableau {
        lowest_generator(&self.0.shape(), self.n())
            .expect("n rows")
            .tableau()
            .clone()
    }

    /// `content(T) − content(L^{shape(T)})`.
    pub fn wt(&self) -> Weight {
        &self.0.content() - &self.base().content()
    }

    pub fn epsilon(&self, i: usize) -> i64 {
        reduced_counts(&self.0, i).1 - reduced_counts(&self.base(), i).1
    }

    pub fn phi(&self, i: usize) -> i64 {
        self.epsilon(i) + self.wt().wt_i(i)
    }

    pub fn statistics(&self, i: usize) -> Result<LimitStats> {
        check_index(i, self.n())?;
        Ok(LimitStats { wt: self.wt(), eps: self.epsilon(i), phi: self.phi(i) })
    }

    /// All `f_i` (including `f_1̄`) vanish.
    pub fn is_lowest_weight(&self) -> bool {
        Index::all(self.n())
            .into_iter()
            .all(|i| raw_apply(&self.0, OperatorLabel::f(i)).is_none())
    }

    /// The representative of this class with the given shape.
    pub fn project(&self, shape: &Shape) -> Result<FiniteElement> {
        let n = self.n();
        let unreachable = || Error::Unreachable {
            from: self.0.shape().parts().to_vec(),
            target: shape.parts().to_vec(),
        };
        if shape.rows() != n {
            return Err(unreachable());
        }
        let delta: Vec<i64> = shape
            .parts()
            .iter()
            .zip(self.0.rows())
            .map(|(&s, r)| s as i64 - r.len() as i64)
            .collect();
        if delta.iter().any(|&d| d < 0) || delta.windows(2).any(|w| w[0] < w[1]) {
            return Err(unreachable());
        }
        let mut t = self.0.clone();
        for h in 1..=n {
            let next = if h < n { delta[h] } else { 0 };
            for _ in 0..delta[h - 1] - next {
                push_in_raw(&mut t, h);
            }
        }
        FiniteElement::new(t)
    }
}

/// `L^{−∞}`: the staircase with top row `r` filled with `n+1−r`.
pub fn limit_generator(n: usize) -> LimitElement {
    let t = lowest_generator(&Shape::staircase(n), n).expect("staircase fits");
    LimitElement(t.tableau().clone())
}

/// `E_μ`: prepends `μ_r` copies of the trivial letter to top row `r`.
/// `μ` must be strictly decreasing apart from trailing zeros.
pub fn embed(t: &FiniteElement, mu: &[usize]) -> Result<FiniteElement> {
    let n = t.n();
    if mu.len() > n {
        return Err(Error::TooManyRows { rows: mu.len(), n });
    }
    if mu.windows(2).any(|w| w[0] <= w[1] && w[0] != 0) {
        return Err(Error::MalformedShape(format!("increment {mu:?} is not strict")));
    }
    let mut rows = t.tableau().rows().to_vec();
    for (ri, &m) in mu.iter().enumerate() {
        if m == 0 {
            continue;
        }
        if rows.len() <= ri {
            rows.resize(ri + 1, Vec::new());
        }
        rows[ri].splice(0..0, std::iter::repeat_n(trivial_letter(n, ri), m));
    }
    FiniteElement::new(Tableau::new(n, rows)?)
}
