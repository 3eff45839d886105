//! Integer weights in the basis `ε_1, …, ε_n`, simple roots, and the
//! extended integers used for `ε_i`/`φ_i` values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `ε_i`, 1-based.
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Weight(v)
    }

    /// Simple root `α_i = ε_i − ε_{i+1}`, 1-based.
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        v[i] = -1;
        Weight(v)
    }

    /// Positive root `ε_i − ε_j` for `i < j`.
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] += 1;
        v[j - 1] -= 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `wt_i = μ_i − μ_{i+1}`.
    pub fn wt_i(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    /// Coordinates in the simple-root basis, if the weight lies in the root
    /// lattice `Q`.
    pub fn to_alpha(&self) -> Option<Vec<i64>> {
        let n = self.0.len();
        if self.0.iter().sum::<i64>() != 0 {
            return None;
        }
        let mut acc = 0;
        let mut out = Vec::with_capacity(n.saturating_sub(1));
        for &c in &self.0[..n.saturating_sub(1)] {
            acc += c;
            out.push(acc);
        }
        Some(out)
    }

    pub fn from_alpha(n: usize, alpha: &[i64]) -> Self {
        let mut v = vec![0; n];
        for (k, &c) in alpha.iter().enumerate() {
            v[k] += c;
            v[k + 1] -= c;
        }
        Weight(v)
    }

    /// Height in `Q`, i.e. the sum of simple-root coordinates.
    pub fn height(&self) -> Option<i64> {
        self.to_alpha().map(|a| a.iter().sum())
    }

    pub fn in_positive_cone(&self) -> bool {
        self.to_alpha().is_some_and(|a| a.iter().all(|&c| c >= 0))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// True when `self − other` is a multiple of `(1, …, 1)`.
    pub fn eq_mod_ones(&self, other: &Weight) -> bool {
        self.0.len() == other.0.len()
            && (1..self.0.len()).all(|i| self.wt_i(i) == other.wt_i(i))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

/// An element of `Λ⁻`, stored through its nonnegative parts
/// `(λ_1, …, λ_n)` with `λ = −λ_1ε_1 − ⋯ − λ_nε_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntidominantWeight {
    parts: Vec<i64>,
}

impl AntidominantWeight {
    /// Accepts the nonnegative tuple `(λ_1, …, λ_n)`: weakly decreasing, with
    /// equal neighbours allowed only when both are zero.
    pub fn from_parts(parts: Vec<i64>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p >= 0)
            && parts
                .windows(2)
                .all(|w| w[0] > w[1] || (w[0] == 0 && w[1] == 0));
        if ok {
            Ok(AntidominantWeight { parts })
        } else {
            Err(Error::NotAntidominant(parts.iter().map(|p| -p).collect()))
        }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    /// The signed weight `(−λ_1, …, −λ_n)`.
    pub fn weight(&self) -> Weight {
        Weight(self.parts.iter().map(|p| -p).collect())
    }

    /// Row lengths of the shifted shape `w_0λ`, top row first.
    pub fn shape_parts(&self) -> Vec<usize> {
        self.parts.iter().filter(|&&p| p > 0).map(|&p| p as usize).collect()
    }

    /// `λ_i > λ_{i+1}` for every `i ∈ I_0`.
    pub fn is_regular(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

/// `Z ⊔ {−∞}` with `−∞` below every integer and absorbing under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Fin(i64),
}

impl Ext {
    pub fn shift(self, k: i64) -> Ext {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(v + k),
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Ext::NegInf => None,
            Ext::Fin(v) => Some(v),
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::NegInf, Ext::NegInf) => Ordering::Equal,
            (Ext::NegInf, _) => Ordering::Less,
            (_, Ext::NegInf) => Ordering::Greater,
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(v) => write!(f, "{v}"),
        }
    }
}

// Serialized as an integer, or the string "-inf".
impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ext::NegInf => s.serialize_str("-inf"),
            Ext::Fin(v) => s.serialize_i64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Ext::Fin(v)),
            Repr::Str(s) if s == "-inf" => Ok(Ext::NegInf),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad extended integer {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_round_trip() {
        let w = Weight::new(vec![1, 0, -1]);
        assert_eq!(w.to_alpha(), Some(vec![1, 1]));
        assert_eq!(Weight::from_alpha(3, &[1, 1]), w);
        assert_eq!(w.height(), Some(2));
        assert_eq!(Weight::new(vec![1, 0, 0]).to_alpha(), None);
    }

    #[test]
    fn neg_inf_orders_below_integers() {
        assert!(Ext::NegInf < Ext::Fin(i64::MIN));
        assert_eq!(Ext::NegInf.shift(5), Ext::NegInf);
        assert_eq!(Ext::Fin(2).max(Ext::NegInf), Ext::Fin(2));
    }

    #[test]
    fn antidominant_parts() {
        assert!(AntidominantWeight::from_parts(vec![3, 1, 0]).unwrap().is_regular());
        assert!(!AntidominantWeight::from_parts(vec![1, 0, 0]).unwrap().is_regular());
        assert!(AntidominantWeight::from_parts(vec![1, 1, 0]).is_err());
        assert!(AntidominantWeight::from_parts(vec![0, 1]).is_err());
    }

    #[test]
    fn ext_json() {
        assert_eq!(serde_json::to_string(&Ext::NegInf).unwrap(), "\"-inf\"");
        let e: Ext = serde_json::from_str("-3").unwrap();
        assert_eq!(e, Ext::Fin(-3));
    }
}
