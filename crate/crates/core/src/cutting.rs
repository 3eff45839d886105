//! Recovering `SDT(λ)` as the component of `SDT(−∞) ⊗ R^∨_μ` generated by
//! `L^{−∞} ⊗ r^∨_μ`.

use serde::{Deserialize, Serialize};

use crate::crystal::Element;
use crate::error::{Error, Result};
use crate::finite::lowest_generator;
use crate::graph::{bfs_subcrystal, labeled_isomorphic, BfsOptions, CrystalGraph, WeightMode};
use crate::limit::limit_generator;
use crate::tableau::Shape;
use crate::weight::{AntidominantWeight, Weight};

/// `λ` with a shift `k`, giving `μ = Σ (λ_i − k) ε_{n+1−i}` in terms of the
/// nonnegative parts of `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSpec {
    lambda: AntidominantWeight,
    k: i64,
}

impl CutSpec {
    /// Needs `k ≥ λ_1`, so that every coordinate of `μ` is at most zero.
    pub fn new(lambda: AntidominantWeight, k: i64) -> Result<Self> {
        let top = lambda.parts().first().copied().unwrap_or(0);
        if k < top {
            return Err(Error::Parse(format!("shift k = {k} is below λ_1 = {top}")));
        }
        Ok(CutSpec { lambda, k })
    }

    pub fn lambda(&self) -> &AntidominantWeight {
        &self.lambda
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.lambda.rank()
    }

    pub fn mu(&self) -> Weight {
        let p = self.lambda.parts();
        let n = p.len();
        Weight::new((0..n).map(|m| p[n - 1 - m] - self.k).collect())
    }

    /// All parts distinct, the hypothesis of the cutting theorem.
    pub fn hypothesis_holds(&self) -> bool {
        self.lambda.is_regular()
    }
}

/// The component generated by `L^{−∞} ⊗ r^∨_μ`.
pub fn cut_component_for(mu: &Weight, max_nodes: usize) -> Result<CrystalGraph> {
    let n = mu.rank();
    let g = Element::tensor(Element::Limit(limit_generator(n)), Element::R(mu.clone()))?;
    bfs_subcrystal(&[g], &BfsOptions::full(n).with_max_nodes(max_nodes))
}

pub fn cut_component(spec: &CutSpec, max_nodes: usize) -> Result<CrystalGraph> {
    cut_component_for(&spec.mu(), max_nodes)
}

/// `SDT(λ)` generated from `L^λ`.
pub fn sdt_graph(lambda: &AntidominantWeight, max_nodes: usize) -> Result<CrystalGraph> {
    let n = lambda.rank();
    let shape = Shape::new(lambda.shape_parts())?;
    let gen = Element::Finite(lowest_generator(&shape, n)?);
    bfs_subcrystal(&[gen], &BfsOptions::full(n).with_max_nodes(max_nodes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub isomorphic: bool,
    pub hypothesis_holds: bool,
    pub component_nodes: usize,
    pub sdt_nodes: usize,
    /// `(component node, SDT(λ) node)` pairs when isomorphic.
    pub witness: Option<Vec<(usize, usize)>>,
}

/// Compares the cut component with `SDT(λ)`, weights taken modulo
/// `(1, …, 1)`.
pub fn verify_cut(spec: &CutSpec, max_nodes: usize) -> Result<CutReport> {
    let c = cut_component(spec, max_nodes)?;
    let s = sdt_graph(spec.lambda(), max_nodes)?;
    let iso = labeled_isomorphic(&c, &s, WeightMode::ModOnes)?;
    Ok(CutReport {
        isomorphic: iso.is_some(),
        hypothesis_holds: spec.hypothesis_holds(),
        component_nodes: c.len(),
        sdt_nodes: s.len(),
        witness: iso.map(|m| m.into_iter().enumerate().collect()),
    })
}
