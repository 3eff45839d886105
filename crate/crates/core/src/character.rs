//! Positive roots and formal characters.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{AntidominantWeight, Weight};

/// `ε_i − ε_j` for `1 ≤ i < j ≤ n`, as `(i, j)`.
pub fn positive_roots(n: usize) -> Vec<(usize, usize)> {
    (1..=n).tuple_combinations().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Exponents over the simple roots.
    Alpha,
    /// Exponents over `ε_1, …, ε_n`.
    Epsilon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSeries {
    pub basis: Basis,
    /// Total-degree cap for truncated series, `None` for exact polynomials.
    pub degree_cap: Option<u32>,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl CharacterSeries {
    pub fn coefficient(&self, exp: &[i64]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Terms as `(Weight, coefficient)` in the ε-basis.
    pub fn as_weights(&self, n: usize) -> Vec<(Weight, i64)> {
        self.terms
            .iter()
            .map(|(e, &c)| {
                let w = match self.basis {
                    Basis::Alpha => Weight::from_alpha(n, e),
                    Basis::Epsilon => Weight::new(e.clone()),
                };
                (w, c)
            })
            .collect()
    }
}

type Poly = BTreeMap<Vec<i64>, i64>;

fn add_term(p: &mut Poly, e: Vec<i64>, c: i64) -> Result<()> {
    match p.entry(e) {
        Entry::Occupied(mut o) => {
            let v = o.get().checked_add(c).ok_or(Error::Overflow("character coefficient"))?;
            if v == 0 {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
        Entry::Vacant(slot) => {
            if c != 0 {
                slot.insert(c);
            }
        }
    }
    Ok(())
}

fn mul(a: &Poly, b: &Poly, cap: Option<i64>) -> Result<Poly> {
    let mut out = Poly::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if cap.is_some_and(|d| e.iter().sum::<i64>() > d) {
                continue;
            }
            let c = ca.checked_mul(cb).ok_or(Error::Overflow("character coefficient"))?;
            add_term(&mut out, e, c)?;
        }
    }
    Ok(out)
}

/// Truncated `∏_{α>0} (1 + e^α)/(1 − e^α)` in the simple-root basis,
/// keeping every term of height at most `d`.
pub fn verma_character(n: usize, d: u32) -> Result<CharacterSeries> {
    let dim = n.saturating_sub(1);
    let mut acc: Poly = [(vec![0; dim], 1)].into();
    for (i, j) in positive_roots(n) {
        let mut beta = vec![0i64; dim];
        beta[i - 1..j - 1].iter_mut().for_each(|x| *x = 1);
        let h = (j - i) as i64;
        // (1 + x)/(1 − x) = 1 + 2x + 2x² + ⋯
        let mut factor: Poly = [(vec![0; dim], 1)].into();
        for m in 1..=(d as i64 / h) {
            factor.insert(beta.iter().map(|b| b * m).collect(), 2);
        }
        acc = mul(&acc, &factor, Some(d as i64))?;
    }
    Ok(CharacterSeries { basis: Basis::Alpha, degree_cap: Some(d), terms: acc })
}

fn monomial(e: Vec<i64>) -> Poly {
    [(e, 1)].into()
}

fn x_plus_x(n: usize, a: usize, b: usize) -> Poly {
    let mut ea = vec![0; n];
    ea[a] = 1;
    let mut eb = vec![0; n];
    eb[b] = 1;
    [(ea, 1), (eb, 1)].into()
}

fn sign(perm: &[usize]) -> i64 {
    let inv = perm.iter().tuple_combinations().filter(|(a, b)| a > b).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact division in lexicographic order; errors on a nonzero remainder.
fn divide(mut p: Poly, d: &Poly) -> Result<Poly> {
    let (lead_e, &lead_c) = d.iter().next_back().ok_or(Error::Defect("division by zero".into()))?;
    let mut q = Poly::new();
    while let Some((e, &c)) = p.iter().next_back() {
        let qe: Vec<i64> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
        if qe.iter().any(|&x| x < 0) || c % lead_c != 0 {
            return Err(Error::Defect("alternating sum is not divisible by the Vandermonde product".into()));
        }
        let qc = c / lead_c;
        add_term(&mut q, qe.clone(), qc)?;
        for (de, &dc) in d {
            let e2: Vec<i64> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
            add_term(&mut p, e2, -qc.checked_mul(dc).ok_or(Error::Overflow("division"))?)?;
        }
    }
    Ok(q)
}

/// The exact character of `SDT(λ)` in the ε-basis, from the alternating
/// sum over `S_n`:
///
/// `∏_{i<j} (x_i + x_j)/(x_i − x_j) · Σ_w sgn(w) w(x^μ / ∏_{i<j, μ_i = μ_j} (1 + x_j/x_i))`
///
/// where `μ = (λ_1, …, λ_n)`. After clearing denominators this is a
/// polynomial numerator divided exactly by the Vandermonde product.
pub fn sdt_character(lambda: &AntidominantWeight) -> Result<CharacterSeries> {
    let n = lambda.rank();
    let mu = lambda.parts();
    let stab: Vec<(usize, usize)> =
        (0..n).tuple_combinations().filter(|&(i, j)| mu[i] == mu[j]).collect();
    let mut base = mu.to_vec();
    for &(i, _) in &stab {
        base[i] += 1;
    }
    let mut numer = Poly::new();
    for w in (0..n).permutations(n) {
        let mut e = vec![0; n];
        for k in 0..n {
            e[w[k]] = base[k];
        }
        let image: Vec<(usize, usize)> =
            stab.iter().map(|&(i, j)| (w[i].min(w[j]), w[i].max(w[j]))).collect();
        let mut term = monomial(e);
        for (a, b) in (0..n).tuple_combinations() {
            if !image.contains(&(a, b)) {
                term = mul(&term, &x_plus_x(n, a, b), None)?;
            }
        }
        let s = sign(&w);
        for (e, c) in term {
            add_term(&mut numer, e, s * c)?;
        }
    }
    let mut vandermonde = monomial(vec![0; n]);
    for (a, b) in (0..n).tuple_combinations() {
        let mut ea = vec![0; n];
        ea[a] = 1;
        let mut eb = vec![0; n];
        eb[b] = 1;
        vandermonde = mul(&vandermonde, &[(ea, 1), (eb, -1)].into(), None)?;
    }
    let q = divide(numer, &vandermonde)?;
    if q.iter().any(|(e, &c)| c < 0 || e.iter().any(|&x| x < 0)) {
        return Err(Error::Defect("character has negative support".into()));
    }
    Ok(CharacterSeries { basis: Basis::Epsilon, degree_cap: None, terms: q })
}

/// Audit string for the product side.
pub fn verma_product_string(n: usize) -> String {
    positive_roots(n)
        .iter()
        .map(|(i, j)| format!("(1+e^(e{i}-e{j}))/(1-e^(e{i}-e{j}))"))
        .join(" * ")
}
