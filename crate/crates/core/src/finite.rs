//! The `q(n)`-crystal structure on `SDT(λ)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{bracket, check_index, is_sdt, validate_sdt, Letter, Shape, Tableau};
use crate::weight::Weight;

/// An element of `I = {1, …, n−1} ∪ {1̄}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Simple(usize),
    Bar,
}

impl Index {
    pub fn all(n: usize) -> Vec<Index> {
        let mut v: Vec<Index> = (1..n).map(Index::Simple).collect();
        if n >= 2 {
            v.push(Index::Bar);
        }
        v
    }

    /// The `i` of `α_i` that this index moves the weight by.
    pub fn root_index(self) -> usize {
        match self {
            Index::Simple(i) => i,
            Index::Bar => 1,
        }
    }

    pub fn check(self, n: usize) -> Result<()> {
        match self {
            Index::Simple(i) => check_index(i, n),
            Index::Bar if n >= 2 => Ok(()),
            Index::Bar => Err(Error::IndexOutOfRange { index: "-1".into(), n }),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Simple(i) => write!(f, "{i}"),
            Index::Bar => write!(f, "-1"),
        }
    }
}

impl FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-1" => Ok(Index::Bar),
            t => t
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(Index::Simple)
                .ok_or_else(|| Error::Parse(format!("bad index {s:?}"))),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    E,
    F,
}

/// `e_i` or `f_i`, written `e1`, `f3`, `e-1`, `f-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorLabel {
    pub kind: Kind,
    pub index: Index,
}

impl OperatorLabel {
    pub fn e(index: Index) -> Self {
        OperatorLabel { kind: Kind::E, index }
    }

    pub fn f(index: Index) -> Self {
        OperatorLabel { kind: Kind::F, index }
    }

    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            Kind::E => Kind::F,
            Kind::F => Kind::E,
        };
        OperatorLabel { kind, index: self.index }
    }

    pub fn all(n: usize) -> Vec<OperatorLabel> {
        let idx = Index::all(n);
        idx.iter().map(|&i| Self::e(i)).chain(idx.iter().map(|&i| Self::f(i))).collect()
    }

    /// Parses a comma-separated list such as `e2,f-1`.
    pub fn parse_list(s: &str) -> Result<Vec<OperatorLabel>> {
        s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
    }
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::E => 'e',
            Kind::F => 'f',
        };
        write!(f, "{k}{}", self.index)
    }
}

impl FromStr for OperatorLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let kind = match s.chars().next() {
            Some('e') => Kind::E,
            Some('f') => Kind::F,
            _ => return Err(Error::Parse(format!("bad operator {s:?}"))),
        };
        Ok(OperatorLabel { kind, index: s[1..].parse()? })
    }
}

/// Applies the raw cell change of an operator, or `None` for the crystal
/// zero. Shared by the finite and limit crystals.
pub(crate) fn raw_apply(t: &Tableau, op: OperatorLabel) -> Option<Tableau> {
    let i = op.index.root_index();
    let w = t.reading_word().restrict(i);
    let (cell, to) = match op.index {
        Index::Simple(i) => {
            let partner = bracket(&w, i).expect("restricted word");
            let mut free = w.0.iter().zip(&partner).filter(|(_, p)| p.is_none()).map(|(x, _)| *x);
            match op.kind {
                Kind::E => (free.find(|x| x.letter as usize == i + 1)?.cell, i),
                Kind::F => (free.rfind(|x| x.letter as usize == i)?.cell, i + 1),
            }
        }
        Index::Bar => {
            let first = w.0.first()?;
            match (op.kind, first.letter) {
                (Kind::E, 2) => (first.cell, 1),
                (Kind::F, 1) => (first.cell, 2),
                _ => return None,
            }
        }
    };
    let mut out = t.clone();
    out.set(cell, to as Letter);
    Some(out)
}

/// `(#i, #(i+1))` surviving in `red_i(T)`.
pub(crate) fn reduced_counts(t: &Tableau, i: usize) -> (i64, i64) {
    let w = t.reading_word().restrict(i);
    let partner = bracket(&w, i).expect("restricted word");
    let mut c = (0, 0);
    for (x, p) in w.0.iter().zip(&partner) {
        if p.is_none() {
            if x.letter as usize == i {
                c.0 += 1;
            } else {
                c.1 += 1;
            }
        }
    }
    c
}

/// A valid SDT viewed as an element of `SDT(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Tableau", into = "Tableau")]
pub struct FiniteElement(Tableau);

impl TryFrom<Tableau> for FiniteElement {
    type Error = Error;
    fn try_from(t: Tableau) -> Result<Self> {
        FiniteElement::new(t)
    }
}

impl From<FiniteElement> for Tableau {
    fn from(e: FiniteElement) -> Tableau {
        e.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lowest,
    Highest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub eps: i64,
    pub phi: i64,
    pub wt: Weight,
}

impl FiniteElement {
    pub fn new(t: Tableau) -> Result<Self> {
        let report = validate_sdt(&t);
        if report.valid {
            Ok(FiniteElement(t))
        } else {
            Err(Error::InvalidTableau(format!("{t}: {:?}", report.violations)))
        }
    }

    pub fn tableau(&self) -> &Tableau {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn apply(&self, op: OperatorLabel) -> Result<Option<FiniteElement>> {
        op.index.check(self.n())?;
        let out = raw_apply(&self.0, op);
        if let Some(t) = &out {
            debug_assert!(is_sdt(t), "{op} broke validity of {}", self.0);
        }
        Ok(out.map(FiniteElement))
    }

    pub fn wt(&self) -> Weight {
        self.0.content()
    }

    /// For `1̄`, `ε`/`φ` are the 0/1 applicability indicators of `e_1̄`/`f_1̄`.
    pub fn statistics(&self, i: Index) -> Result<Stats> {
        i.check(self.n())?;
        let (eps, phi) = match i {
            Index::Simple(i) => {
                let (ni, ni1) = reduced_counts(&self.0, i);
                (ni1, ni)
            }
            Index::Bar => (
                raw_apply(&self.0, OperatorLabel::e(i)).is_some() as i64,
                raw_apply(&self.0, OperatorLabel::f(i)).is_some() as i64,
            ),
        };
        Ok(Stats { eps, phi, wt: self.wt() })
    }

    pub fn epsilon(&self, i: usize) -> i64 {
        reduced_counts(&self.0, i).1
    }

    pub fn phi(&self, i: usize) -> i64 {
        reduced_counts(&self.0, i).0
    }

    pub fn is_extremal(&self, side: Side) -> bool {
        let kind = match side {
            Side::Lowest => Kind::F,
            Side::Highest => Kind::E,
        };
        Index::all(self.n())
            .into_iter()
            .all(|i| raw_apply(&self.0, OperatorLabel { kind, index: i }).is_none())
    }
}

/// `L^λ`: top row `r` filled with `n+1−r`, so row `k` from the bottom of an
/// `n`-row shape holds `k`.
pub fn lowest_generator(shape: &Shape, n: usize) -> Result<FiniteElement> {
    if shape.rows() > n {
        return Err(Error::TooManyRows { rows: shape.rows(), n });
    }
    let rows = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(r, &p)| vec![(n - r) as Letter; p])
        .collect();
    FiniteElement::new(Tableau::new(n, rows)?)
}
