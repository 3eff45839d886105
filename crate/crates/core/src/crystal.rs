//! Crystal elements with a uniform interface: finite and limit tableaux,
//! the one-element crystals `T_λ` and `R^∨_λ`, and tensor products.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{FiniteElement, Index, Kind, OperatorLabel};
use crate::limit::LimitElement;
use crate::weight::{Ext, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Finite(FiniteElement),
    Limit(LimitElement),
    /// `t_λ`
    T(Weight),
    /// `r^∨_λ`
    R(Weight),
    /// `b ⊗ c`
    Tensor(Box<Element>, Box<Element>),
}

impl Element {
    pub fn tensor(b: Element, c: Element) -> Result<Element> {
        if b.n() != c.n() {
            return Err(Error::RankMismatch(b.n(), c.n()));
        }
        Ok(Element::Tensor(Box::new(b), Box::new(c)))
    }

    pub fn n(&self) -> usize {
        match self {
            Element::Finite(t) => t.n(),
            Element::Limit(t) => t.n(),
            Element::T(w) | Element::R(w) => w.rank(),
            Element::Tensor(b, _) => b.n(),
        }
    }

    pub fn wt(&self) -> Weight {
        match self {
            Element::Finite(t) => t.wt(),
            Element::Limit(t) => t.wt(),
            Element::T(w) | Element::R(w) => w.clone(),
            Element::Tensor(b, c) => &b.wt() + &c.wt(),
        }
    }

    /// `ε_i` for `i ∈ I_0`.
    pub fn epsilon(&self, i: usize) -> Ext {
        match self {
            Element::Finite(t) => Ext::Fin(t.epsilon(i)),
            Element::Limit(t) => Ext::Fin(t.epsilon(i)),
            Element::T(_) => Ext::NegInf,
            Element::R(_) => Ext::Fin(0),
            Element::Tensor(b, c) => c.epsilon(i).max(b.epsilon(i).shift(-c.wt().wt_i(i))),
        }
    }

    /// `φ_i` for `i ∈ I_0`.
    pub fn phi(&self, i: usize) -> Ext {
        match self {
            Element::Finite(t) => Ext::Fin(t.phi(i)),
            Element::Limit(t) => Ext::Fin(t.phi(i)),
            Element::T(_) => Ext::NegInf,
            Element::R(w) => Ext::Fin(w.wt_i(i)),
            Element::Tensor(b, c) => b.phi(i).max(c.phi(i).shift(b.wt().wt_i(i))),
        }
    }

    pub fn apply(&self, op: OperatorLabel) -> Result<Option<Element>> {
        op.index.check(self.n())?;
        Ok(match self {
            Element::Finite(t) => t.apply(op)?.map(Element::Finite),
            Element::Limit(t) => t.apply(op)?.map(Element::Limit),
            Element::T(_) | Element::R(_) => None,
            Element::Tensor(b, c) => {
                let left = match op.index {
                    Index::Simple(i) => match op.kind {
                        Kind::E => c.phi(i) < b.epsilon(i),
                        Kind::F => c.phi(i) <= b.epsilon(i),
                    },
                    Index::Bar => {
                        b.apply(OperatorLabel::e(Index::Bar))?.is_some()
                            || b.apply(OperatorLabel::f(Index::Bar))?.is_some()
                    }
                };
                if left {
                    b.apply(op)?.map(|b2| Element::Tensor(Box::new(b2), c.clone()))
                } else {
                    c.apply(op)?.map(|c2| Element::Tensor(b.clone(), Box::new(c2)))
                }
            }
        })
    }

    /// Short human-readable form used in DOT labels.
    pub fn label(&self) -> String {
        match self {
            Element::Finite(t) => t.tableau().to_string(),
            Element::Limit(t) => t.tableau().to_string(),
            Element::T(w) => format!("t{w}"),
            Element::R(w) => format!("r{w}"),
            Element::Tensor(b, c) => format!("{} ⊗ {}", b.label(), c.label()),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::lowest_generator;
    use crate::limit::limit_generator;
    use crate::tableau::{enumerate_sdt, Shape, Tableau, DEFAULT_CANDIDATE_CAP};

    fn op(s: &str) -> OperatorLabel {
        s.parse().unwrap()
    }

    #[test]
    fn elementary_crystals() {
        let r = Element::R(Weight::new(vec![-3, -2, 0]));
        assert_eq!((r.phi(1), r.phi(2)), (Ext::Fin(-1), Ext::Fin(-2)));
        assert_eq!(r.epsilon(1), Ext::Fin(0));
        let t = Element::T(Weight::zero(3));
        assert_eq!(t.wt(), Weight::zero(3));
        assert_eq!((t.epsilon(1), t.phi(2)), (Ext::NegInf, Ext::NegInf));
        for o in OperatorLabel::all(3) {
            assert_eq!(t.apply(o).unwrap(), None);
            assert_eq!(r.apply(o).unwrap(), None);
        }
    }

    #[test]
    fn operators_ignore_t_factor() {
        let l = Element::Limit(limit_generator(3));
        let x = Element::tensor(l.clone(), Element::T(Weight::new(vec![1, 2, 3]))).unwrap();
        for o in OperatorLabel::all(3) {
            let direct = l.apply(o).unwrap();
            let via = x.apply(o).unwrap().map(|e| match e {
                Element::Tensor(b, _) => *b,
                _ => unreachable!(),
            });
            assert_eq!(direct, via, "{o}");
        }
    }

    #[test]
    fn bar_edge_into_generator_tensor() {
        let r = Element::R(Weight::new(vec![-1, -1, 0]));
        let rows = vec![vec![3, 3, 3, 3], vec![2, 2, 1], vec![1]];
        let b = Element::Limit(LimitElement::new(Tableau::new(3, rows).unwrap()).unwrap());
        let src = Element::tensor(b, r.clone()).unwrap();
        let dst = Element::tensor(Element::Limit(limit_generator(3)), r).unwrap();
        assert_eq!(src.apply(op("f-1")).unwrap(), Some(dst));
    }

    // Tensor statistics against string lengths, on finite factors.
    #[test]
    fn tensor_statistics_are_string_lengths() {
        let a = enumerate_sdt(&Shape::new(vec![2, 1]).unwrap(), 3, DEFAULT_CANDIDATE_CAP).unwrap();
        let b = enumerate_sdt(&Shape::new(vec![1]).unwrap(), 3, DEFAULT_CANDIDATE_CAP).unwrap();
        for x in &a {
            for y in &b {
                let e = Element::tensor(
                    Element::Finite(FiniteElement::new(x.clone()).unwrap()),
                    Element::Finite(FiniteElement::new(y.clone()).unwrap()),
                )
                .unwrap();
                for i in 1..3 {
                    let len = |o: OperatorLabel| {
                        let mut k = 0;
                        let mut cur = e.clone();
                        while let Some(nx) = cur.apply(o).unwrap() {
                            cur = nx;
                            k += 1;
                        }
                        k
                    };
                    assert_eq!(e.epsilon(i), Ext::Fin(len(OperatorLabel::e(Index::Simple(i)))));
                    assert_eq!(e.phi(i), Ext::Fin(len(OperatorLabel::f(Index::Simple(i)))));
                }
            }
        }
    }

    #[test]
    fn rank_mismatch_rejected() {
        let l = Element::Finite(lowest_generator(&Shape::new(vec![1]).unwrap(), 2).unwrap());
        assert!(Element::tensor(l, Element::T(Weight::zero(3))).is_err());
    }

    #[test]
    fn json_tags() {
        let e = Element::tensor(Element::T(Weight::zero(2)), Element::R(Weight::new(vec![1, 0]))).unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"tensor":[{"t":[0,0]},{"r":[1,0]}]}"#);
        let back: Element = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
