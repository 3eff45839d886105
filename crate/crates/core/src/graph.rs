//! Finite crystal graphs: breadth-first generation, axiom checks,
//! labeled isomorphism, and DOT/JSON export.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::crystal::Element;
use crate::error::{Error, Result};
use crate::finite::{Index, Kind, OperatorLabel};
use crate::weight::{Ext, Weight};

pub const DEFAULT_MAX_NODES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub element: Element,
    pub wt: Weight,
    /// `ε_1, …, ε_{n−1}`.
    pub eps: Vec<Ext>,
    /// `φ_1, …, φ_{n−1}`.
    pub phi: Vec<Ext>,
    pub depth: usize,
}

/// An `f`-edge: `f_label(src) = dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub label: Index,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub n: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub generators: Vec<usize>,
    pub truncated: bool,
    #[serde(default)]
    pub max_depth: Option<usize>,
    /// Height cap for balls in `SDT(−∞)`, where weights lie in the root cone.
    #[serde(default)]
    pub max_height: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct BfsOptions {
    pub kinds: Vec<Kind>,
    pub labels: Vec<Index>,
    pub depth: Option<usize>,
    /// Discard elements whose weight height exceeds this.
    pub max_height: Option<i64>,
    pub max_nodes: usize,
}

impl BfsOptions {
    /// Both directions, all of `I`, no depth cap.
    pub fn full(n: usize) -> Self {
        BfsOptions {
            kinds: vec![Kind::E, Kind::F],
            labels: Index::all(n),
            depth: None,
            max_height: None,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    pub fn raising(n: usize, depth: Option<usize>) -> Self {
        BfsOptions { kinds: vec![Kind::E], ..Self::full(n) }.with_depth(depth)
    }

    pub fn with_depth(mut self, depth: Option<usize>) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_max_height(mut self, h: Option<i64>) -> Self {
        self.max_height = h;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }
}

fn make_node(element: Element, depth: usize) -> Node {
    let n = element.n();
    Node {
        id: 0,
        wt: element.wt(),
        eps: (1..n).map(|i| element.epsilon(i)).collect(),
        phi: (1..n).map(|i| element.phi(i)).collect(),
        element,
        depth,
    }
}

/// Breadth-first closure of `gens` under the requested operators.
///
/// Edges between discovered nodes are complete for the requested kinds and
/// labels. Nodes are ordered by weight, then by serialized element.
pub fn bfs_subcrystal(gens: &[Element], opts: &BfsOptions) -> Result<CrystalGraph> {
    let n = gens.first().map_or(1, Element::n);
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::RankMismatch(n, g.n()));
    }
    let mut index: HashMap<Element, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(make_node(g.clone(), 0));
        }
    }
    let generators: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    let mut edges = HashSet::new();
    let mut truncated = false;
    while let Some(u) = queue.pop_front() {
        let depth = nodes[u].depth;
        let at_cap = opts.depth.is_some_and(|d| depth >= d);
        for &kind in &opts.kinds {
            for &label in &opts.labels {
                let op = OperatorLabel { kind, index: label };
                let Some(img) = nodes[u].element.apply(op)? else { continue };
                let v = match index.get(&img) {
                    Some(&v) => v,
                    None if at_cap || opts.max_height.is_some_and(|h| img.wt().height().is_none_or(|x| x > h)) => {
                        truncated = true;
                        continue;
                    }
                    None => {
                        if nodes.len() >= opts.max_nodes {
                            return Err(Error::NodeGuard { cap: opts.max_nodes });
                        }
                        let v = nodes.len();
                        index.insert(img.clone(), v);
                        nodes.push(make_node(img, depth + 1));
                        queue.push_back(v);
                        v
                    }
                };
                edges.insert(match kind {
                    Kind::F => Edge { src: u, label, dst: v },
                    Kind::E => Edge { src: v, label, dst: u },
                });
            }
        }
    }
    let keys: Vec<String> = nodes
        .iter()
        .map(|nd| serde_json::to_string(&nd.element).expect("serializable"))
        .collect();
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| (&nodes[a].wt, &keys[a]).cmp(&(&nodes[b].wt, &keys[b])));
    let mut new_id = vec![0; nodes.len()];
    for (k, &old) in order.iter().enumerate() {
        new_id[old] = k;
    }
    let mut slots: Vec<Option<Node>> = nodes.into_iter().map(Some).collect();
    let nodes: Vec<Node> = order
        .iter()
        .enumerate()
        .map(|(k, &old)| {
            let mut nd = slots[old].take().expect("each node once");
            nd.id = k;
            nd
        })
        .collect();
    let mut edges: Vec<Edge> = edges
        .into_iter()
        .map(|e| Edge { src: new_id[e.src], label: e.label, dst: new_id[e.dst] })
        .collect();
    edges.sort();
    Ok(CrystalGraph {
        n,
        nodes,
        edges,
        generators: generators.iter().map(|&g| new_id[g]).collect(),
        truncated,
        max_depth: opts.depth,
        max_height: opts.max_height,
    })
}

/// The elements of `SDT(−∞)` of height at most `d`, with all edges among
/// them. The search runs through heights up to `d + n`, since some elements
/// are only connected to `L^{−∞}` through higher ones.
pub fn limit_ball(n: usize, d: i64, max_nodes: usize) -> Result<CrystalGraph> {
    let opts = BfsOptions::full(n).with_max_height(Some(d + n as i64)).with_max_nodes(max_nodes);
    let g = bfs_subcrystal(&[Element::Limit(crate::limit::limit_generator(n))], &opts)?;
    let mut g = g.induced(|nd| nd.wt.height().is_some_and(|h| h <= d));
    g.max_height = Some(d);
    Ok(g)
}

impl CrystalGraph {
    /// The subgraph on the nodes satisfying `keep`, renumbered in order.
    pub fn induced(&self, keep: impl Fn(&Node) -> bool) -> CrystalGraph {
        let mut new_id = HashMap::new();
        let mut nodes = Vec::new();
        for nd in self.nodes.iter().filter(|nd| keep(nd)) {
            new_id.insert(nd.id, nodes.len());
            nodes.push(Node { id: nodes.len(), ..nd.clone() });
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some(Edge { src: *new_id.get(&e.src)?, label: e.label, dst: *new_id.get(&e.dst)? }))
            .collect();
        CrystalGraph {
            n: self.n,
            truncated: self.truncated || nodes.len() < self.nodes.len(),
            generators: self.generators.iter().filter_map(|g| new_id.get(g).copied()).collect(),
            nodes,
            edges,
            max_depth: self.max_depth,
            max_height: self.max_height,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn find(&self, e: &Element) -> Option<usize> {
        self.nodes.iter().position(|nd| &nd.element == e)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.nodes.iter().map(|nd| &nd.element)
    }

    /// Node counts by `wt − wt(base)` in simple-root coordinates.
    pub fn graded_dimensions(&self, base: &Weight) -> Result<BTreeMap<Vec<i64>, u64>> {
        let mut out = BTreeMap::new();
        for nd in &self.nodes {
            let d = &nd.wt - base;
            let a = d
                .to_alpha()
                .ok_or_else(|| Error::Defect(format!("weight difference {d} not in the root lattice")))?;
            *out.entry(a).or_insert(0) += 1;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
        for nd in &self.nodes {
            let label = nd.element.label().replace('"', "\\\"");
            let extra = if self.generators.contains(&nd.id) { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "  n{} [label=\"{}\"{}];", nd.id, label, extra);
        }
        for e in &self.edges {
            let style = match e.label {
                Index::Bar => ", style=dashed, color=red",
                Index::Simple(_) => "",
            };
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"{}];", e.src, e.dst, e.label, style);
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Gl,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub clause: String,
    pub node: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checked_nodes: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the crystal axioms on the graph's edges and cached statistics.
///
/// Local clauses are checked everywhere. Commutation of the odd operators
/// with `e_i`, `f_i` (`3 ≤ i ≤ n−1`) looks two steps away, so on a
/// truncated graph it is only checked at nodes at least two steps inside
/// the depth or height cap. Non-negativity of weights applies to finite tableaux only.
pub fn check_axioms(g: &CrystalGraph, level: Level) -> AxiomReport {
    let n = g.n;
    let mut v = Vec::new();
    let mut bad = |clause: &str, node: usize, detail: String| {
        v.push(AxiomViolation { clause: clause.into(), node, detail });
    };
    let by_id: HashMap<usize, &Node> = g.nodes.iter().map(|nd| (nd.id, nd)).collect();
    let mut fwd: HashMap<(usize, Index), Vec<usize>> = HashMap::new();
    let mut back: HashMap<(usize, Index), Vec<usize>> = HashMap::new();
    for e in &g.edges {
        if level == Level::Gl && e.label == Index::Bar {
            continue;
        }
        fwd.entry((e.src, e.label)).or_default().push(e.dst);
        back.entry((e.dst, e.label)).or_default().push(e.src);
    }

    for nd in &g.nodes {
        if nd.wt.rank() != n || nd.eps.len() + 1 != n.max(1) || nd.phi.len() + 1 != n.max(1) {
            bad("shape", nd.id, "statistics have the wrong length".into());
            continue;
        }
        for i in 1..n {
            let (e, p) = (nd.eps[i - 1], nd.phi[i - 1]);
            match (e, p) {
                (Ext::Fin(e), Ext::Fin(p)) if p != e + nd.wt.wt_i(i) => {
                    bad("phi = eps + wt_i", nd.id, format!("i={i}: {p} != {e} + {}", nd.wt.wt_i(i)))
                }
                (Ext::NegInf, Ext::Fin(_)) | (Ext::Fin(_), Ext::NegInf) => {
                    bad("-inf", nd.id, format!("i={i}: exactly one of eps, phi is -inf"))
                }
                _ => {}
            }
            if p == Ext::NegInf {
                let l = Index::Simple(i);
                if fwd.contains_key(&(nd.id, l)) || back.contains_key(&(nd.id, l)) {
                    bad("-inf", nd.id, format!("i={i}: phi is -inf but an {i}-edge is incident"));
                }
            }
        }
        if level == Level::Q && matches!(nd.element, Element::Finite(_)) && !nd.wt.is_nonnegative() {
            bad("wt >= 0", nd.id, format!("weight {}", nd.wt));
        }
    }

    for e in &g.edges {
        if level == Level::Gl && e.label == Index::Bar {
            continue;
        }
        let (Some(s), Some(d)) = (by_id.get(&e.src), by_id.get(&e.dst)) else {
            bad("dangling edge", e.src, format!("{e:?}"));
            continue;
        };
        let a = Weight::simple_root(n, e.label.root_index());
        if d.wt != &s.wt - &a {
            bad("weight ladder", e.src, format!("f_{} to node {}: {} -> {}", e.label, e.dst, s.wt, d.wt));
        }
        match e.label {
            Index::Simple(i) => {
                if d.eps[i - 1] != s.eps[i - 1].shift(1) || d.phi[i - 1] != s.phi[i - 1].shift(-1) {
                    bad("eps/phi ladder", e.src, format!("f_{i} to node {}", e.dst));
                }
            }
            Index::Bar => {
                for i in 3..n {
                    if d.eps[i - 1] != s.eps[i - 1] || d.phi[i - 1] != s.phi[i - 1] {
                        bad("odd operator preserves eps_i, phi_i", e.src, format!("i={i}, to node {}", e.dst));
                    }
                }
            }
        }
    }
    for ((node, label), targets) in fwd.iter().filter(|(_, t)| t.len() > 1) {
        bad("pairing", *node, format!("{} outgoing {label}-edges", targets.len()));
    }
    for ((node, label), sources) in back.iter().filter(|(_, s)| s.len() > 1) {
        bad("pairing", *node, format!("{} incoming {label}-edges", sources.len()));
    }

    if level == Level::Q && n >= 4 {
        let step = |x: Option<usize>, kind: Kind, label: Index| -> Option<usize> {
            let x = x?;
            let m = match kind {
                Kind::F => &fwd,
                Kind::E => &back,
            };
            m.get(&(x, label)).and_then(|t| t.first().copied())
        };
        for nd in &g.nodes {
            let near_height_cap = g.max_height.is_some_and(|h| nd.wt.height().is_none_or(|x| x + 2 > h));
            if g.truncated && (g.max_depth.is_some_and(|d| nd.depth + 2 > d) || near_height_cap) {
                continue;
            }
            for i in 3..n {
                for k1 in [Kind::E, Kind::F] {
                    for k2 in [Kind::E, Kind::F] {
                        let a = step(step(Some(nd.id), k2, Index::Simple(i)), k1, Index::Bar);
                        let b = step(step(Some(nd.id), k1, Index::Bar), k2, Index::Simple(i));
                        if a != b {
                            bad("odd operators commute", nd.id, format!("{k1:?}-1 and {k2:?}{i}: {a:?} vs {b:?}"));
                        }
                    }
                }
            }
        }
    }
    v.sort_by(|a, b| (a.node, &a.clause, &a.detail).cmp(&(b.node, &b.clause, &b.detail)));
    AxiomReport { checked_nodes: g.nodes.len(), violations: v }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    Exact,
    ModOnes,
}

fn weights_match(a: &Weight, b: &Weight, mode: WeightMode) -> bool {
    match mode {
        WeightMode::Exact => a == b,
        WeightMode::ModOnes => a.eq_mod_ones(b),
    }
}

/// Search budget for the generic fallback.
pub const ISO_SEARCH_CAP: u64 = 5_000_000;

/// A label- and weight-respecting graph isomorphism `G → H`, as the list of
/// `H` positions indexed by `G` position. With functional labels the map
/// is propagated from one anchor per component; otherwise backtracking.
pub fn labeled_isomorphic(g: &CrystalGraph, h: &CrystalGraph, mode: WeightMode) -> Result<Option<Vec<usize>>> {
    if g.n != h.n || g.len() != h.len() || g.edges.len() != h.edges.len() {
        return Ok(None);
    }
    let label_hist = |x: &CrystalGraph| {
        let mut m: BTreeMap<Index, usize> = BTreeMap::new();
        for e in &x.edges {
            *m.entry(e.label).or_default() += 1;
        }
        m
    };
    if label_hist(g) != label_hist(h) {
        return Ok(None);
    }
    let gp = Positions::new(g);
    let hp = Positions::new(h);
    match (gp.functional(), hp.functional()) {
        (true, true) => Ok(anchored(&gp, &hp, mode)),
        _ => backtrack(&gp, &hp, mode),
    }
}

// Graph re-indexed by node position, with labelled adjacency.
struct Positions<'a> {
    g: &'a CrystalGraph,
    out: Vec<Vec<(Index, usize)>>,
    inc: Vec<Vec<(Index, usize)>>,
}

impl<'a> Positions<'a> {
    fn new(g: &'a CrystalGraph) -> Self {
        let pos: HashMap<usize, usize> = g.nodes.iter().enumerate().map(|(k, nd)| (nd.id, k)).collect();
        let mut out = vec![Vec::new(); g.len()];
        let mut inc = vec![Vec::new(); g.len()];
        for e in &g.edges {
            let (s, d) = (pos[&e.src], pos[&e.dst]);
            out[s].push((e.label, d));
            inc[d].push((e.label, s));
        }
        for l in out.iter_mut().chain(inc.iter_mut()) {
            l.sort();
        }
        Positions { g, out, inc }
    }

    fn functional(&self) -> bool {
        self.out.iter().chain(&self.inc).all(|l| l.windows(2).all(|w| w[0].0 != w[1].0))
    }

    fn signature(&self, k: usize) -> (Vec<Index>, Vec<Index>) {
        (
            self.out[k].iter().map(|x| x.0).collect(),
            self.inc[k].iter().map(|x| x.0).collect(),
        )
    }

    fn wt(&self, k: usize) -> &Weight {
        &self.g.nodes[k].wt
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.out.len()];
        let mut comps = Vec::new();
        for s in 0..seen.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for &(_, w) in self.out[u].iter().chain(&self.inc[u]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comps.push(comp);
        }
        comps
    }
}

fn compatible(g: &Positions, a: usize, h: &Positions, b: usize, mode: WeightMode) -> bool {
    g.signature(a) == h.signature(b) && weights_match(g.wt(a), h.wt(b), mode)
}

fn anchored(g: &Positions, h: &Positions, mode: WeightMode) -> Option<Vec<usize>> {
    let comps = g.components();
    let mut map = vec![usize::MAX; g.out.len()];
    let mut used = vec![false; h.out.len()];
    fn go(
        c: usize,
        comps: &[Vec<usize>],
        g: &Positions,
        h: &Positions,
        mode: WeightMode,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(comp) = comps.get(c) else { return true };
        let anchor = comp[0];
        for cand in 0..h.out.len() {
            if used[cand] || !compatible(g, anchor, h, cand, mode) {
                continue;
            }
            let mut assigned = Vec::new();
            if propagate(anchor, cand, g, h, mode, map, used, &mut assigned)
                && go(c + 1, comps, g, h, mode, map, used)
            {
                return true;
            }
            for a in assigned {
                used[map[a]] = false;
                map[a] = usize::MAX;
            }
        }
        false
    }
    go(0, &comps, g, h, mode, &mut map, &mut used).then_some(map)
}

#[allow(clippy::too_many_arguments)]
fn propagate(
    a: usize,
    b: usize,
    g: &Positions,
    h: &Positions,
    mode: WeightMode,
    map: &mut [usize],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    let mut stack = vec![(a, b)];
    while let Some((x, y)) = stack.pop() {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if used[y] || !compatible(g, x, h, y, mode) {
            return false;
        }
        map[x] = y;
        used[y] = true;
        assigned.push(x);
        // Signatures match, so labelled neighbour lists align position by position.
        for (gl, hl) in [(&g.out[x], &h.out[y]), (&g.inc[x], &h.inc[y])] {
            for (&(_, gx), &(_, hy)) in gl.iter().zip(hl.iter()) {
                stack.push((gx, hy));
            }
        }
    }
    true
}

fn backtrack(g: &Positions, h: &Positions, mode: WeightMode) -> Result<Option<Vec<usize>>> {
    let order: Vec<usize> = g.components().concat();
    let mut map = vec![usize::MAX; g.out.len()];
    let mut used = vec![false; h.out.len()];
    let mut budget = ISO_SEARCH_CAP;
    fn consistent(x: usize, y: usize, g: &Positions, h: &Positions, map: &[usize]) -> bool {
        let count = |l: &[(Index, usize)], lab: Index, t: usize| l.iter().filter(|&&(m, w)| m == lab && w == t).count();
        for &(lab, w) in &g.out[x] {
            if map[w] != usize::MAX && count(&g.out[x], lab, w) != count(&h.out[y], lab, map[w]) {
                return false;
            }
        }
        for &(lab, w) in &g.inc[x] {
            if map[w] != usize::MAX && count(&g.inc[x], lab, w) != count(&h.inc[y], lab, map[w]) {
                return false;
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        g: &Positions,
        h: &Positions,
        mode: WeightMode,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        budget: &mut u64,
    ) -> Result<bool> {
        let Some(&x) = order.get(k) else { return Ok(true) };
        for y in 0..h.out.len() {
            if *budget == 0 {
                return Err(Error::NodeGuard { cap: ISO_SEARCH_CAP as usize });
            }
            *budget -= 1;
            if used[y] || !compatible(g, x, h, y, mode) || !consistent(x, y, g, h, map) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(k + 1, order, g, h, mode, map, used, budget)? {
                return Ok(true);
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        Ok(false)
    }
    Ok(go(0, &order, g, h, mode, &mut map, &mut used, &mut budget)?.then_some(map))
}
