//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;

use qcrystal::character::{positive_roots, sdt_character, verma_character};
use qcrystal::crystal::Element;
use qcrystal::cutting::{cut_component_for, verify_cut, CutSpec};
use qcrystal::finite::{lowest_generator, FiniteElement, OperatorLabel};
use qcrystal::graph::{bfs_subcrystal, check_axioms, limit_ball, BfsOptions, CrystalGraph, Level, DEFAULT_MAX_NODES};
use qcrystal::limit::{canonicalize, eligible_push_outs, embed, largeness, push_column, Direction, Largeness, LimitElement};
use qcrystal::tableau::{enumerate_sdt, Letter, Shape, Tableau, DEFAULT_CANDIDATE_CAP};
use qcrystal::weight::{AntidominantWeight, Weight};
use qcrystal::xi::{enumerate_lowest, xi_forward, xi_forward_traced, xi_inverse, Root};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tab(n: usize, rows: &[&str]) -> Tableau {
    let rows = rows.iter().map(|r| r.bytes().map(|b| (b - b'0') as Letter).collect()).collect();
    Tableau::new(n, rows).unwrap()
}

// Rows given as runs of (letter, count), rank 5.
fn runs(spec: &[&[(Letter, usize)]]) -> Tableau {
    let rows = spec.iter().map(|r| r.iter().flat_map(|&(l, c)| std::iter::repeat_n(l, c)).collect()).collect();
    Tableau::new(5, rows).unwrap()
}

fn limit(rows: &[&str]) -> LimitElement {
    LimitElement::new(tab(3, rows)).unwrap()
}

fn run(t: &FiniteElement, ops: &str) -> Option<FiniteElement> {
    // Rightmost operator acts first.
    let mut cur = t.clone();
    for op in OperatorLabel::parse_list(ops).unwrap().into_iter().rev() {
        cur = cur.apply(op).unwrap()?;
    }
    Some(cur)
}

fn sdt_graph(shape: &Shape, n: usize) -> CrystalGraph {
    let gen = Element::Finite(lowest_generator(shape, n).unwrap());
    bfs_subcrystal(&[gen], &BfsOptions::full(n)).unwrap()
}

fn small_shapes() -> Vec<(Shape, usize)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for size in 1..=6 {
            out.extend(Shape::strict_partitions(size, n).into_iter().map(|s| (s, n)));
        }
    }
    out
}

fn operator_regression() -> Outcome {
    let t = limit(&["33332", "221", "1"]);
    let act = |s: &str| t.apply(s.parse().unwrap()).unwrap();
    ensure(act("f1").is_none(), || "f1 T is not zero".into())?;
    for (op, json) in [
        ("e1", r#"{"n":3,"rows":[[3,3,3,3,3,2],[2,2,1,1],[1]]}"#),
        ("e-1", r#"{"n":3,"rows":[[3,3,3,3,1],[2,2,1],[1]]}"#),
        ("e2", r#"{"n":3,"rows":[[3,3,3,3,2,2],[2,2,1],[1]]}"#),
        ("f2", r#"{"n":3,"rows":[[3,3,3,3],[2,2,1],[1]]}"#),
    ] {
        let got = act(op).map(|x| serde_json::to_string(x.tableau()).unwrap());
        ensure(got.as_deref() == Some(json), || format!("{op} T = {got:?}"))?;
    }
    Ok(())
}

fn shape_dependence() -> Outcome {
    let tl = FiniteElement::new(tab(3, &["32211", "211", "1"])).unwrap();
    let tm = FiniteElement::new(tab(3, &["322211", "2111", "1"])).unwrap();
    let mid_l = run(&tl, "f2,f-1,f2,f2").map(|x| x.tableau().clone());
    let mid_m = run(&tm, "f2,f-1,f2,f2").map(|x| x.tableau().clone());
    ensure(mid_l == Some(tab(3, &["33313", "211", "1"])), || format!("(5,3,1) intermediate {mid_l:?}"))?;
    ensure(mid_m == Some(tab(3, &["333312", "2111", "1"])), || format!("(6,4,1) intermediate {mid_m:?}"))?;
    ensure(run(&tl, "f-1,f2,f-1,f2,f2").is_some(), || "zero for (5,3,1)".into())?;
    ensure(run(&tm, "f-1,f2,f-1,f2,f2").is_none(), || "nonzero for (6,4,1)".into())
}

fn cut_panel(mu: Vec<i64>, nodes: &[[&str; 3]], edges: usize) -> Outcome {
    let g = cut_component_for(&Weight::new(mu.clone()), DEFAULT_MAX_NODES).map_err(|e| e.to_string())?;
    ensure(g.len() == nodes.len() && g.edges.len() == edges, || {
        format!("μ={mu:?}: {} nodes / {} edges", g.len(), g.edges.len())
    })?;
    let r = Element::R(Weight::new(mu.clone()));
    for rows in nodes {
        let x = Element::tensor(Element::Limit(limit(rows)), r.clone()).unwrap();
        ensure(g.find(&x).is_some(), || format!("μ={mu:?}: missing {x}"))?;
    }
    Ok(())
}

fn cut_panels() -> Outcome {
    cut_panel(
        vec![-1, 0, 0],
        &[
            ["3333", "221", "1"],
            ["333", "22", "1"],
            ["33332", "221", "1"],
            ["3332", "22", "1"],
            ["33331", "221", "1"],
            ["3331", "22", "1"],
        ],
        7,
    )?;
    cut_panel(
        vec![-1, -1, 0],
        &[
            ["333321", "221", "1"],
            ["333322", "221", "1"],
            ["33331", "221", "1"],
            ["33332", "221", "1"],
            ["3333", "221", "1"],
            ["3331", "22", "1"],
            ["3332", "22", "1"],
            ["333", "22", "1"],
        ],
        9,
    )
}

fn all_subsets(n: usize, max: usize) -> Vec<BTreeSet<Root>> {
    let roots: Vec<Root> = positive_roots(n).into_iter().map(|(i, j)| Root { i, j }).collect();
    (0u32..1 << roots.len())
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..roots.len()).filter(|k| m >> k & 1 == 1).map(|k| roots[k]).collect())
        .collect()
}

fn xi_regression() -> Outcome {
    let steps = |b: &str| -> Result<Vec<Tableau>, String> {
        let b = qcrystal::xi::parse_roots(b, 5).unwrap();
        Ok(xi_forward_traced(&b, 5).map_err(|e| e.to_string())?.steps.into_iter().map(|s| s.result).collect())
    };
    let first = vec![
        runs(&[&[(5, 7)], &[(4, 6)], &[(3, 3), (2, 1), (3, 1)], &[(2, 2)], &[(1, 1)]]),
        runs(&[&[(5, 10)], &[(4, 7), (3, 1), (4, 1)], &[(3, 3), (2, 2), (3, 1)], &[(2, 2)], &[(1, 1)]]),
        runs(&[&[(5, 11)], &[(4, 7), (2, 1), (3, 1), (4, 1)], &[(3, 3), (2, 1), (1, 1), (3, 1)], &[(2, 2)], &[(1, 1)]]),
        runs(&[
            &[(5, 12), (4, 1), (5, 1)],
            &[(4, 7), (3, 1), (2, 1), (3, 1), (4, 1)],
            &[(3, 3), (1, 2), (2, 1)],
            &[(2, 2)],
            &[(1, 1)],
        ]),
    ];
    let got = steps("2-3,2-4,1-4,1-5")?;
    ensure(got == first, || format!("first example: {got:?}"))?;
    let second = vec![
        runs(&[&[(5, 8)], &[(4, 7)], &[(3, 4), (2, 1), (3, 1)], &[(2, 2), (1, 1)], &[(1, 1)]]),
        runs(&[&[(5, 10), (4, 1), (5, 1)], &[(4, 8), (3, 1)], &[(3, 4), (2, 2), (3, 1)], &[(2, 2), (1, 1)], &[(1, 1)]]),
        runs(&[
            &[(5, 10), (3, 1), (4, 1), (5, 1)],
            &[(4, 8), (2, 1)],
            &[(3, 4), (2, 1), (1, 1), (3, 1)],
            &[(2, 2), (1, 1)],
            &[(1, 1)],
        ]),
    ];
    let got = steps("1-3,2-5,1-5")?;
    ensure(got == second, || format!("second example: {got:?}"))?;
    for (n, max) in [(4, usize::MAX), (5, 4)] {
        for b in all_subsets(n, max) {
            let t = xi_forward(&b, n).map_err(|e| format!("{b:?}: {e}"))?;
            let back = xi_inverse(&t).map_err(|e| format!("{b:?}: {e}"))?;
            ensure(back == b, || format!("n={n}: {b:?} came back as {back:?}"))?;
        }
    }
    Ok(())
}

fn character_identity() -> Outcome {
    for n in [2, 3] {
        let d = 6;
        let g = limit_ball(n, d, DEFAULT_MAX_NODES).map_err(|e| e.to_string())?;
        let got = g.graded_dimensions(&Weight::zero(n)).map_err(|e| e.to_string())?;
        let want: BTreeMap<Vec<i64>, u64> = verma_character(n, d as u32)
            .map_err(|e| e.to_string())?
            .terms
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| (e, c as u64))
            .collect();
        ensure(got == want, || format!("n={n}: {got:?} vs {want:?}"))?;
    }
    let g = limit_ball(2, 6, DEFAULT_MAX_NODES).unwrap().graded_dimensions(&Weight::zero(2)).unwrap();
    let plateau: Vec<u64> = g.values().copied().collect();
    ensure(plateau == [1, 2, 2, 2, 2, 2, 2], || format!("n=2 grading {plateau:?}"))
}

fn lowest_weight_counting() -> Outcome {
    let n = 3;
    let lowest = enumerate_lowest(n, 6, DEFAULT_MAX_NODES).map_err(|e| e.to_string())?;
    let mut sums: BTreeMap<Weight, usize> = BTreeMap::new();
    for b in all_subsets(n, usize::MAX) {
        *sums.entry(b.iter().fold(Weight::zero(n), |w, r| &w + &r.weight(n))).or_default() += 1;
    }
    let got: BTreeMap<Weight, usize> = lowest.iter().map(|(w, v)| (w.clone(), v.len())).collect();
    ensure(got == sums, || format!("{got:?} vs {sums:?}"))
}

fn crystal_closure() -> Outcome {
    for (s, n) in small_shapes() {
        let g = sdt_graph(&s, n);
        let mut got: Vec<Tableau> = g
            .elements()
            .map(|e| match e {
                Element::Finite(t) => t.tableau().clone(),
                _ => unreachable!(),
            })
            .collect();
        got.sort();
        let all = enumerate_sdt(&s, n, DEFAULT_CANDIDATE_CAP).map_err(|e| e.to_string())?;
        ensure(got == all, || format!("{s:?} n={n}: orbit {} vs {}", got.len(), all.len()))?;
        let mut contents: BTreeMap<Weight, i64> = BTreeMap::new();
        for t in &all {
            *contents.entry(t.content()).or_default() += 1;
        }
        let mut parts: Vec<i64> = s.parts().iter().map(|&p| p as i64).collect();
        parts.resize(n, 0);
        let ch: BTreeMap<Weight, i64> = sdt_character(&AntidominantWeight::from_parts(parts).unwrap())
            .map_err(|e| e.to_string())?
            .as_weights(n)
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .collect();
        ensure(ch == contents, || format!("{s:?} n={n}: character differs from contents"))?;
    }
    Ok(())
}

fn axiom_suite() -> Outcome {
    let mut graphs: Vec<(String, CrystalGraph)> = Vec::new();
    for mu in [vec![-1, 0, 0], vec![-1, -1, 0]] {
        graphs.push((format!("cut {mu:?}"), cut_component_for(&Weight::new(mu), DEFAULT_MAX_NODES).unwrap()));
    }
    for (s, n) in small_shapes() {
        graphs.push((format!("SDT {s:?} n={n}"), sdt_graph(&s, n)));
    }
    graphs.push(("limit ball n=3 height 6".into(), limit_ball(3, 6, DEFAULT_MAX_NODES).unwrap()));
    for (name, g) in &graphs {
        let r = check_axioms(g, Level::Q);
        ensure(r.passed(), || format!("{name}: {:?}", r.violations.first()))?;
    }
    Ok(())
}

fn cutting_theorem() -> Outcome {
    let spec = |p: Vec<i64>, k: i64| CutSpec::new(AntidominantWeight::from_parts(p).unwrap(), k).unwrap();
    let mut cases = vec![(vec![3, 1, 0], 3)];
    for a in 0..=6i64 {
        for b in 0..a {
            for c in 0..b {
                if a + b + c <= 6 {
                    cases.push((vec![a, b, c], a));
                }
            }
        }
    }
    for (p, k) in cases {
        let r = verify_cut(&spec(p.clone(), k), DEFAULT_MAX_NODES).map_err(|e| e.to_string())?;
        ensure(r.isomorphic, || format!("{p:?} k={k}: {r:?}"))?;
    }
    // Two equal parts: the component outgrows SDT(λ).
    let r = verify_cut(&spec(vec![1, 0, 0], 1), DEFAULT_MAX_NODES).map_err(|e| e.to_string())?;
    ensure(!r.isomorphic && r.component_nodes > r.sdt_nodes, || format!("(1,0,0): {r:?}"))
}

fn random_strict(rng: &mut ChaCha8Rng, n: usize, max_first: usize) -> Vec<usize> {
    let rows = rng.gen_range(0..=n);
    let mut parts: Vec<usize> = Vec::new();
    for r in 0..rows {
        let floor = rows - r;
        let ceil = parts.last().map_or(max_first, |&p| p - 1);
        if ceil < floor {
            break;
        }
        parts.push(rng.gen_range(floor..=ceil));
    }
    parts
}

fn embeddings() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..1000 {
        let n = rng.gen_range(2..=4);
        let mut eta = random_strict(&mut rng, n, 5);
        if eta.is_empty() {
            eta.push(1);
        }
        let mu1 = random_strict(&mut rng, n, 3);
        let mu2 = random_strict(&mut rng, n, 3);
        let sum: Vec<usize> = (0..n).map(|r| mu1.get(r).unwrap_or(&0) + mu2.get(r).unwrap_or(&0)).collect();
        let ops = OperatorLabel::all(n);
        let mut t = lowest_generator(&Shape::new(eta).unwrap(), n).unwrap();
        for _ in 0..rng.gen_range(0..=12) {
            let op = ops[rng.gen_range(0..ops.len())];
            let e = embed(&t, &mu1).unwrap();
            if let Some(next) = t.apply(op).unwrap() {
                let lhs = embed(&next, &mu1).unwrap();
                ensure(e.apply(op).unwrap() == Some(lhs), || format!("trial {trial}: {op} on {}", t.tableau()))?;
                t = next;
            }
        }
        let twice = embed(&embed(&t, &mu1).unwrap(), &mu2).unwrap();
        ensure(twice == embed(&t, &sum).unwrap(), || format!("trial {trial}: composition"))?;
    }
    Ok(())
}

fn canonicalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut inputs = 0;
    for size in 1..=12 {
        for s in Shape::strict_partitions(size, 3).into_iter().filter(|s| s.rows() == 3) {
            for t in enumerate_sdt(&s, 3, DEFAULT_CANDIDATE_CAP).unwrap() {
                if largeness(&t) == Largeness::NotDualLarge {
                    continue;
                }
                inputs += 1;
                let c = canonicalize(&t).map_err(|e| e.to_string())?;
                ensure(canonicalize(c.tableau()).ok() == Some(c.clone()), || format!("{t}: not idempotent"))?;
                for _ in 0..100 {
                    let mut cur = t.clone();
                    loop {
                        let hs = eligible_push_outs(&cur);
                        if hs.is_empty() {
                            break;
                        }
                        let h = hs[rng.gen_range(0..hs.len())];
                        cur = push_column(&cur, h, Direction::Out).map_err(|e| e.to_string())?;
                    }
                    ensure(&cur == c.tableau(), || format!("{t}: order-dependent"))?;
                }
            }
        }
    }
    ensure(inputs > 100, || format!("only {inputs} inputs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("operator regression", operator_regression),
        ("counterexample to shape independence", shape_dependence),
        ("cut components for -e1 and -e1-e2", cut_panels),
        ("Xi regression and round trip", xi_regression),
        ("character identity", character_identity),
        ("lowest-weight counting", lowest_weight_counting),
        ("crystal closure", crystal_closure),
        ("axiom suite", axiom_suite),
        ("cutting theorem", cutting_theorem),
        ("embedding directed system", embeddings),
        ("canonicalization", canonicalization),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
