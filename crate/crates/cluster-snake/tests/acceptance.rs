#![allow(clippy::needless_range_loop)]

//! Acceptance harness: prints one PASS/FAIL line per criterion and exits
//! nonzero when any result differs from the recorded expectation.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::time::{Duration, Instant};

use cluster_snake::expand::{self, Expansion};
use cluster_snake::matchings::{
    end_restriction, enclosed_tiles, enumerate_matchings, is_gamma_symmetric, minimal_maximal, twist_heights,
};
use cluster_snake::mutation::{run_sequence, Seed};
use cluster_snake::poly::{Laurent, Monomial, VarKind};
use cluster_snake::snake::{build_loop_graph, build_snake, SnakeGraph};
use cluster_snake::surface::{ArcBase, CrossingPath, TaggedArc, Triangulation};
use common::*;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn lp(s: &str) -> Laurent {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn mono(s: &str) -> Monomial {
    lp(s).as_term().expect("a single term").0.clone()
}

fn over(num: &str, den: &str) -> Laurent {
    lp(num).mul_monomial(&mono(den).inv())
}

fn at_y1(p: &Laurent) -> Laurent {
    p.set_kind_to_one(VarKind::Y)
}

fn expand_file(surface_name: &str, arc_name: &str) -> (Triangulation, Expansion) {
    let t = surface(surface_name);
    let a = arc(&t, arc_name);
    let e = expand::expand(&t, &a.arc, a.orientation).expect("expansion");
    (t, e)
}

const EXPECTED_GAMMA1: &str = "x1*x2*x4^2*x5*x9 + y3*x4*x5*x9 + y6*x1*x2*x4^2*x7 + y1*y3*x3*x4*x5*x9 \
    + y3*y6*x4*x10*x7 + y5*y6*x1*x2*x4*x6*x7 + y2*y3*x3*x4*x5*x9 + y1*y3*y6*x3*x4*x10*x7 \
    + y3*y5*y6*x6*x7 + y1*y2*y3*x3^2*x4*x5*x9 + y2*y3*y6*x3*x4*x10*x7 + y1*y3*y5*y6*x3*x6*x7 \
    + y3*y4*y5*y6*x3*x5*x6*x7 + y1*y2*y3*y6*x3^2*x4*x10*x7 + y2*y3*y5*y6*x3*x6*x7 \
    + y1*y3*y4*y5*y6*x3^2*x5*x6*x7 + y1*y2*y3*y5*y6*x3^2*x6*x7 + y2*y3*y4*y5*y6*x3^2*x5*x6*x7 \
    + y1*y2*y3*y4*y5*y6*x3^3*x5*x6*x7";

const EXPECTED_GAMMA3: &str = "x3*x4*x6^2*x8 + y5*x4^2*x6*x8 + y7*x3*x4*x6*x8*x9 + y3*y5*x2*x4*x5*x6*x8 \
    + y5*y7*x4^2*x8*x9 + y3*y5*y7*x2*x4*x5*x8*x9 + y5*y6*y7*x4*x5*x7*x9 + y3*y5*y6*y7*x2*x5^2*x7*x9 \
    + y5*y6*y7*y8*x4*x5*x6*x7 + y3*y4*y5*y6*y7*x3*x5*x6*x7*x9 + y3*y5*y6*y7*y8*x2*x5^2*x6*x7 \
    + y3*y4*y5*y6*y7*y8*x3*x5*x6^2*x7";

/// The reference term `y6·x1x2x4²x7` lacks the factor `x10` that the twist
/// structure and the grading require.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (t, e) = expand_file("thrice_punctured_square", "gamma1");
    let elapsed = start.elapsed();
    let reference = over(EXPECTED_GAMMA1, "x1*x2*x3*x4*x5*x6");
    let ours = &e.poly;
    let only_ours: Vec<String> = ours
        .terms()
        .filter(|(m, _)| reference.coefficient(m) == 0.into())
        .map(|(m, _)| m.text())
        .collect();
    let only_reference: Vec<String> = reference
        .terms()
        .filter(|(m, _)| ours.coefficient(m) == 0.into())
        .map(|(m, _)| m.text())
        .collect();
    let den = Expansion::from_poly(ours.clone()).crossing.text();
    let shape_ok = ours.len() == 19
        && ours.terms().all(|(_, c)| *c == 1.into())
        && den == "x1*x2*x3*x4*x5*x6"
        && e.matchings_used == 19
        && elapsed < Duration::from_secs(1)
        && expand::g_vector(&t, &t.signed_adjacency(), &e).is_ok();
    let expected_ours = over("y6*x1*x2*x4^2*x7*x10", "x1*x2*x3*x4*x5*x6");
    let expected_reference = over("y6*x1*x2*x4^2*x7", "x1*x2*x3*x4*x5*x6");
    let exact_known = only_ours == [expected_ours.as_term().unwrap().0.text()]
        && only_reference == [expected_reference.as_term().unwrap().0.text()];
    if reference == *ours && shape_ok {
        return Ok(format!("19 terms over {den}, {elapsed:?}"));
    }
    if shape_ok && exact_known {
        return Err(format!(
            "18 of 19 reference terms match; reference y6*x1*x2*x4^2*x7, computed y6*x1*x2*x4^2*x7*x10 (reference term is not homogeneous); {elapsed:?}"
        ));
    }
    panic!("criterion 1: unexpected discrepancy: only ours {only_ours:?}, only reference {only_reference:?}, shape {shape_ok}");
}

fn criterion_2() -> Outcome {
    let (_, e) = expand_file("thrice_punctured_square", "gamma2");
    let inner1 = lp("x9*x6*x8 + y7*x9^2 + y7*y8*x9*x7*x10");
    let inner2 = lp("x9*x7 + y8*x7^2*x10 + y8*y9*x7*x8*x6");
    let num = &(&lp("x4*x5") * &inner1) + &(&(&lp("y6*y7*x4*x10") + &lp("y5*y6*y7*x6")) * &inner2);
    let reference = num.mul_monomial(&mono("x5*x6*x7*x8*x9").inv());
    let f1 = over("x10*x7 + x6*x8 + x9", "x7*x8*x9");
    let f2 = over("x6*x7 + x4*x7*x10 + x4*x5*x9", "x5*x6");
    let checks = [
        ("9 monomials", reference.len() == 9 && e.poly.len() == 9),
        ("reference expansion", reference == e.poly),
        ("9 symmetric matchings", e.matchings_used == 9),
        ("y=1 factorization", at_y1(&e.poly) == &f1 * &f2),
    ];
    verdict(&checks, "9 terms over x5*x6*x7*x8*x9, two factors at y=1")
}

fn criterion_3() -> Outcome {
    let (_, e) = expand_file("twice_punctured_pentagon", "gamma3");
    let reference = over(EXPECTED_GAMMA3, "x3*x4*x5*x6*x7*x8");
    let f = &(&over("x3*x6 + x4 + x2*x5", "x3*x4*x5") * &over("x6 + x9", "x7*x8")) * &over("x4*x8 + x5*x7", "x6");
    let checks = [
        ("12 compatible pairs", e.matchings_used == 12),
        ("reference expansion", reference == e.poly && e.poly.len() == 12),
        ("y=1 factorization", at_y1(&e.poly) == f),
    ];
    verdict(&checks, "12 pairs, 12 terms over x3*x4*x5*x6*x7*x8, three factors at y=1")
}

fn verdict(checks: &[(&str, bool)], ok: &str) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        Ok(ok.to_string())
    } else {
        Err(format!("failed: {}", failed.join(", ")))
    }
}

const SUITE: [&str; 8] = [
    "square",
    "pentagon",
    "hexagon",
    "digon",
    "punctured_square",
    "annulus",
    "twice_punctured_digon",
    "twice_punctured_digon_flipped",
];

struct Expanded {
    t: Triangulation,
    cases: Vec<(Case, Expansion)>,
}

fn suite() -> Vec<Expanded> {
    SUITE
        .iter()
        .map(|name| {
            let t = surface(name);
            let cases = tagged_arcs(&t, 8)
                .into_iter()
                .map(|c| {
                    let e = expand::expand(&t, &c.arc, c.orientation)
                        .unwrap_or_else(|err| panic!("{name} {}: {err}", c.name));
                    (c, e)
                })
                .collect();
            Expanded { t, cases }
        })
        .collect()
}

fn criterion_4(s: &[Expanded], elapsed: Duration) -> Outcome {
    let mut bad = Vec::new();
    let mut kinds = [0usize; 3];
    for x in s {
        for (c, e) in &x.cases {
            kinds[usize::from(c.arc.notch_start) + usize::from(c.arc.notch_end)] += 1;
            if e.poly.is_zero() || !e.poly.all_coefficients_positive() {
                bad.push(c.name.clone());
            }
        }
    }
    if !bad.is_empty() || elapsed >= Duration::from_secs(60) {
        return Err(format!("{} arcs with nonpositive coefficients, {elapsed:?}", bad.len()));
    }
    Ok(format!(
        "{} plain, {} singly and {} doubly notched arcs positive, {elapsed:?}",
        kinds[0], kinds[1], kinds[2]
    ))
}

/// Exchange-graph exploration of a polygon with the diagonal tracker.
fn polygon_oracle(name: &str, n: usize) -> Result<usize, String> {
    let t = surface(name);
    let labels = t.arc_labels().to_vec();
    let seed = Seed::principal(&labels, &t.signed_adjacency()).map_err(|e| e.to_string())?;
    let mut expected: BTreeMap<Diagonal, Laurent> = BTreeMap::new();
    let mut lookup = |d: Diagonal| -> Laurent {
        expected
            .entry(d)
            .or_insert_with(|| {
                if d.0 == 0 {
                    lp(&format!("x_d{}", d.1 - 1))
                } else {
                    let a = cluster_snake::cli::parse_arc(&fan_arc_json(d.0, d.1), &t).expect("fan arc");
                    expand::expand(&t, &a.arc, None).expect("expansion").poly
                }
            })
            .clone()
    };
    let start = fan(n);
    let mut seen = HashSet::new();
    seen.insert(sorted(&start));
    let mut queue = VecDeque::from([(start, seed)]);
    let mut checked = 0;
    let mut vars = BTreeSet::new();
    while let Some((tri, s)) = queue.pop_front() {
        for k in 0..tri.len() {
            let mut tri2 = tri.clone();
            flip(n, &mut tri2, k);
            let s2 = s.mutate(k).map_err(|e| e.to_string())?;
            if s2.cluster()[k] != lookup(tri2[k]) {
                return Err(format!("{name}: diagonal {:?} differs", tri2[k]));
            }
            checked += 1;
            vars.insert(tri2[k]);
            if seen.insert(sorted(&tri2)) {
                queue.push_back((tri2, s2));
            }
        }
    }
    if vars.len() != n * (n - 3) / 2 {
        return Err(format!("{name}: reached {} diagonals", vars.len()));
    }
    Ok(checked)
}

fn sorted(v: &[Diagonal]) -> Vec<Diagonal> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Hand-listed flips from the star triangulation of a once-punctured
/// n-gon: flipping `r_k` gives the arc cutting off vertex k, continuing
/// with `r_{k+1}` widens it, and on the last step the arc is replaced by
/// the notched radius `r_{k-1}`.
fn punctured_oracle(name: &str, n: usize) -> Result<usize, String> {
    let t = surface(name);
    let labels = t.arc_labels().to_vec();
    let seed = Seed::principal(&labels, &t.signed_adjacency()).map_err(|e| e.to_string())?;
    let cyc = |k: isize| ((k - 1).rem_euclid(n as isize) + 1) as usize;
    let tri = |k: isize| cyc(k) - 1;
    let mut checked = 0;
    for k in 1..=n as isize {
        for len in 1..n {
            let seq: Vec<usize> = (0..len).map(|j| cyc(k + j as isize) - 1).collect();
            let got = run_sequence(&seed, &seq).map_err(|e| e.to_string())?;
            let slot = *seq.last().unwrap();
            let arc = if len + 1 == n {
                let id = t.label_id(&format!("r{}", cyc(k - 1))).unwrap();
                let mut a = TaggedArc::plain(ArcBase::Initial { arc: id, from: None });
                let (s, _) = a.endpoints(&t);
                if t.is_puncture(s) {
                    a.notch_start = true;
                } else {
                    a.notch_end = true;
                }
                a
            } else {
                let steps: Vec<String> = (0..len - 1)
                    .map(|j| {
                        let m = k + j as isize;
                        format!(
                            r#"{{"triangle": {}, "enter": "r{}", "exit": "r{}"}}"#,
                            tri(m),
                            cyc(m),
                            cyc(m + 1)
                        )
                    })
                    .collect();
                let last = k + len as isize - 1;
                let text = format!(
                    r#"{{"version": 1, "start": {{"triangle": {}, "vertex": "r{}"}}, "crossings": [{}], "end": {{"triangle": {}, "vertex": "r{}"}}}}"#,
                    tri(k - 1),
                    cyc(k),
                    steps.join(", "),
                    tri(last),
                    cyc(last)
                );
                cluster_snake::cli::parse_arc(&text, &t).map_err(|e| e.to_string())?.arc
            };
            let e = expand::expand(&t, &arc, None).map_err(|e| e.to_string())?;
            if e.poly != got.cluster()[slot] {
                return Err(format!("{name}: sequence {seq:?} differs"));
            }
            checked += 1;
        }
    }
    // Every variable of the exchange graph is the expansion of a tagged arc.
    let mut arcs = BTreeSet::new();
    for c in tagged_arcs(&t, 8) {
        arcs.insert(expand::expand(&t, &c.arc, c.orientation).map_err(|e| e.to_string())?.poly.canonical_text());
    }
    let all = exchange_variables(&seed);
    if all != arcs {
        return Err(format!("{name}: {} exchange-graph variables, {} tagged arcs", all.len(), arcs.len()));
    }
    Ok(checked + all.len())
}

fn exchange_variables(seed: &Seed) -> BTreeSet<String> {
    let key = |s: &Seed| {
        let mut v: Vec<String> = s.cluster().iter().map(|x| x.canonical_text()).collect();
        v.sort();
        v
    };
    let mut seen = HashSet::from([key(seed)]);
    let mut vars: BTreeSet<String> = seed.cluster().iter().map(|x| x.canonical_text()).collect();
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(s) = queue.pop_front() {
        for k in 0..s.rank() {
            let s2 = s.mutate(k).expect("Laurent");
            vars.insert(s2.cluster()[k].canonical_text());
            if seen.insert(key(&s2)) {
                queue.push_back(s2);
            }
        }
    }
    vars
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for (name, n) in [("pentagon", 5), ("hexagon", 6), ("heptagon", 7), ("octagon", 8)] {
        total += polygon_oracle(name, n)?;
    }
    for (name, n) in [("punctured_triangle", 3), ("punctured_square", 4)] {
        total += punctured_oracle(name, n)?;
    }
    Ok(format!("{total} oracle comparisons equal (A2-A5 exchange graphs, punctured triangle and square)"))
}

fn with_tags(a: &TaggedArc, s: bool, e: bool) -> TaggedArc {
    TaggedArc {
        base: a.base.clone(),
        notch_start: s,
        notch_end: e,
    }
}

/// `x_ρ x_{ρ^(pq)} − x_{ρ^(p)} x_{ρ^(q)} y_ρ^{[ρ∈T]}` divided by
/// `(1 − Y_p)(1 − Y_q)` must be a single y-monomial.
fn identity_holds(t: &Triangulation, rho: &TaggedArc) -> Result<(), String> {
    let x = |s, e| expand::expand(t, &with_tags(rho, s, e), None).map(|x| x.poly).map_err(|e| e.to_string());
    let (p, q) = rho.endpoints(t);
    let y_rho = match rho.base {
        ArcBase::Initial { arc, .. } => Laurent::monomial(t.phi(arc)),
        ArcBase::Path(_) => Laurent::one(),
    };
    let lhs = &(&x(false, false)? * &x(true, true)?) - &(&(&x(true, false)? * &x(false, true)?) * &y_rho);
    let one = Laurent::one();
    let div = &(&one - &Laurent::monomial(t.puncture_y_monomial(p))) * &(&one - &Laurent::monomial(t.puncture_y_monomial(q)));
    let quo = lhs.div_exact(&div).map_err(|e| format!("not divisible: {e}"))?;
    match quo.as_term() {
        Some((m, c)) if *c == 1.into() && m.factors().iter().all(|(v, k)| v.kind() == VarKind::Y && *k > 0) => Ok(()),
        _ => Err(format!("quotient {quo} is not a y-monomial")),
    }
}

fn criterion_6() -> Outcome {
    let mut counts = Vec::new();
    // Arcs between two punctures are unique in the twice-punctured digon;
    // the larger surfaces add longer ones.
    for name in ["twice_punctured_digon", "twice_punctured_digon_flipped", "thrice_punctured_square", "twice_punctured_pentagon"] {
        let t = surface(name);
        let mut in_t = 0;
        let mut not_in_t = 0;
        for c in tagged_arcs(&t, 8) {
            let (p, q) = c.arc.endpoints(&t);
            if c.arc.notch_start || c.arc.notch_end || p == q || !t.is_puncture(p) || !t.is_puncture(q) {
                continue;
            }
            identity_holds(&t, &c.arc).map_err(|e| format!("{name} {}: {e}", c.name))?;
            match c.arc.base {
                ArcBase::Initial { .. } => in_t += 1,
                ArcBase::Path(_) => not_in_t += 1,
            }
        }
        counts.push((in_t, not_in_t));
    }
    let (a, b) = counts.iter().fold((0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1));
    if a == 0 || b == 0 {
        return Err(format!("coverage: {a} arcs in T, {b} not in T"));
    }
    if counts[0] != (1, 0) || counts[1] != (0, 1) {
        return Err(format!("twice-punctured digon coverage {:?}", &counts[..2]));
    }
    Ok(format!("identity exact for {a} arcs in T and {b} arcs not in T"))
}

fn criterion_7() -> Outcome {
    let mut counts = [0usize; 3];
    for name in [
        "digon",
        "punctured_triangle",
        "punctured_square",
        "twice_punctured_digon",
        "twice_punctured_digon_flipped",
        "thrice_punctured_square",
        "twice_punctured_pentagon",
    ] {
        let t = surface(name);
        let z: BTreeMap<usize, Laurent> = (0..t.points().len())
            .filter(|&p| t.is_puncture(p))
            .map(|p| (p, expand::z_factor(&t, p).expect("puncture")))
            .collect();
        let mut cases = tagged_arcs(&t, 5);
        if name == "thrice_punctured_square" {
            // The shortest loops at punctures that are tagged arcs.
            cases.extend(tagged_arcs(&t, 12).into_iter().filter(|c| {
                let (p, q) = c.arc.endpoints(&t);
                p == q && c.arc.notch_start && matches!(&c.arc.base, ArcBase::Path(x) if x.crossings() > 5)
            }));
        }
        for c in cases {
            if !c.arc.notch_start && !c.arc.notch_end {
                continue;
            }
            let plain = with_tags(&c.arc, false, false);
            let base = at_y1(&expand::expand(&t, &plain, None).map_err(|e| e.to_string())?.poly);
            let (p, q) = c.arc.endpoints(&t);
            let mut rhs = base;
            if c.arc.notch_start {
                rhs = &rhs * &z[&p];
            }
            if c.arc.notch_end {
                rhs = &rhs * &z[&q];
            }
            let got = at_y1(&expand::expand(&t, &c.arc, c.orientation).map_err(|e| e.to_string())?.poly);
            if got != rhs {
                return Err(format!("{name} {}: {got} vs {rhs}", c.name));
            }
            let kind = match (c.arc.notch_start && c.arc.notch_end, p == q) {
                (false, _) => 0,
                (true, false) => 1,
                (true, true) => 2,
            };
            counts[kind] += 1;
        }
    }
    if counts.contains(&0) {
        return Err(format!("coverage {counts:?}"));
    }
    Ok(format!("{} single, {} pq and {} pp notchings equal z-multiples at y=1", counts[0], counts[1], counts[2]))
}

fn criterion_8(s: &[Expanded]) -> Outcome {
    let mut n = 0;
    for x in s {
        let t = &x.t;
        let b = t.signed_adjacency();
        for (c, e) in &x.cases {
            let g = expand::g_vector(t, &b, e).map_err(|err| format!("{}: {err}", c.name))?;
            if let (ArcBase::Initial { arc, .. }, false, false) = (&c.arc.base, c.arc.notch_start, c.arc.notch_end) {
                if t.radius_of_loop(*arc).is_none() {
                    let unit: Vec<i64> = (0..t.n()).map(|i| i64::from(i == *arc)).collect();
                    if g != unit {
                        return Err(format!("{}: g-vector {g:?}", c.name));
                    }
                }
            }
            let f = expand::f_polynomial(e);
            if f.coefficient(&Monomial::one()) != 1.into() {
                return Err(format!("{}: F-polynomial {f} lacks constant term 1", c.name));
            }
            if !e.heights.is_empty() && f.coefficient_sum() != e.matchings_used.into() {
                return Err(format!("{}: F(1) = {} but {} matchings", c.name, f.coefficient_sum(), e.matchings_used));
            }
            n += 1;
        }
    }
    Ok(format!("{n} expansions homogeneous with consistent g-vectors and F-polynomials"))
}

fn boundary_matchings(g: &SnakeGraph) -> usize {
    enumerate_matchings(g)
        .iter()
        .filter(|m| m.edges.iter().all(|&e| g.edges[e].boundary))
        .count()
}

fn heights_agree(g: &SnakeGraph) -> Result<usize, String> {
    let all = enumerate_matchings(g);
    let (lo, _) = minimal_maximal(g, &all).map_err(|e| e.to_string())?;
    let twists = twist_heights(g, &all[lo]);
    if twists.len() != all.len() {
        return Err(format!("twist chain reaches {} of {} matchings", twists.len(), all.len()));
    }
    for m in &all {
        if enclosed_tiles(g, &all[lo], m).map_err(|e| e.to_string())? != twists[m] {
            return Err("ray casting and twist chain disagree".into());
        }
    }
    Ok(all.len())
}

fn criterion_9(s: &[Expanded]) -> Outcome {
    let (mut graphs, mut loops, mut matchings) = (0, 0, 0);
    for x in s {
        let t = &x.t;
        for (c, _) in &x.cases {
            let ArcBase::Path(p) = &c.arc.base else { continue };
            if c.arc.notch_start || c.arc.notch_end {
                continue;
            }
            let g = build_snake(t, p, 1).map_err(|e| e.to_string())?;
            if boundary_matchings(&g) != 2 {
                return Err(format!("{}: {} boundary matchings", c.name, boundary_matchings(&g)));
            }
            matchings += heights_agree(&g).map_err(|e| format!("{}: {e}", c.name))?;
            graphs += 1;
            for gamma in [p.clone(), p.reversed()] {
                let end = gamma.end_point(t);
                if !t.is_puncture(end) || t.is_self_folded_puncture(end) {
                    continue;
                }
                loops += check_loop_graph(t, &gamma).map_err(|e| format!("{} loop: {e}", c.name))?;
            }
        }
    }
    Ok(format!(
        "{graphs} snake graphs and {loops} loop graphs: two boundary matchings, P- symmetric, ends perfect, {matchings} heights agree"
    ))
}

fn check_loop_graph(t: &Triangulation, gamma: &CrossingPath) -> Result<usize, String> {
    let lg = build_loop_graph(t, gamma, 1).map_err(|e| e.to_string())?;
    let g = &lg.graph;
    if boundary_matchings(g) != 2 {
        return Err(format!("{} boundary matchings", boundary_matchings(g)));
    }
    let all = enumerate_matchings(g);
    let (lo, _) = minimal_maximal(g, &all).map_err(|e| e.to_string())?;
    if !is_gamma_symmetric(&lg, &all[lo]) {
        return Err("P- is not symmetric".into());
    }
    if all.iter().any(|m| end_restriction(&lg, m).is_none()) {
        return Err("a matching is perfect on neither end".into());
    }
    heights_agree(g)?;
    Ok(1)
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let seeds: Vec<Seed> = ["square", "pentagon", "hexagon", "heptagon", "digon", "punctured_triangle", "punctured_square", "annulus"]
        .iter()
        .map(|name| {
            let t = surface(name);
            Seed::principal(t.arc_labels(), &t.signed_adjacency()).expect("seed")
        })
        .collect();
    let mut steps = 0;
    for _ in 0..1000 {
        let mut s = seeds[rng.gen_range(0..seeds.len())].clone();
        let len = rng.gen_range(1..=12);
        for _ in 0..len {
            let k = rng.gen_range(0..s.rank());
            let next = s.mutate(k).map_err(|e| format!("mutation failed: {e}"))?;
            let back = next.mutate(k).map_err(|e| format!("mutation failed: {e}"))?;
            if back != s {
                return Err("mutation is not an involution".into());
            }
            s = next;
            steps += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        return Err(format!("{elapsed:?}"));
    }
    Ok(format!("1000 sequences, {steps} mutations, no division failure, {elapsed:?}"))
}

fn main() {
    let start = Instant::now();
    let s = suite();
    let suite_time = start.elapsed();
    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4(&s, suite_time)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8(&s)),
        (9, criterion_9(&s)),
        (10, criterion_10()),
    ];
    // Criterion 1 is expected to fail with the recorded one-term discrepancy.
    let expected_fail: BTreeSet<usize> = [1].into();
    let mut unexpected = Vec::new();
    for (i, r) in &results {
        match r {
            Ok(msg) => println!("criterion {i}: PASS ({msg})"),
            Err(msg) => println!("criterion {i}: FAIL ({msg})"),
        }
        if r.is_err() != expected_fail.contains(i) {
            unexpected.push(*i);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
