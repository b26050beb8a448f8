//! Shared helpers for the integration tests: fixture loading, arc
//! enumeration and a diagonal flip tracker for polygons.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use cluster_snake::cli::{self, Orientation, ParsedArc};
use cluster_snake::snake::build_loop_path;
use cluster_snake::surface::{validate_path, ArcBase, CrossingPath, TaggedArc, Triangulation, Visit};

/// Every surface fixture.
pub const ALL_FIXTURES: [&str; 13] = [
    "square",
    "pentagon",
    "hexagon",
    "heptagon",
    "octagon",
    "digon",
    "punctured_triangle",
    "punctured_square",
    "annulus",
    "twice_punctured_digon",
    "twice_punctured_digon_flipped",
    "thrice_punctured_square",
    "twice_punctured_pentagon",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn surface(name: &str) -> Triangulation {
    cli::parse_surface(&read_fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn arc(t: &Triangulation, name: &str) -> ParsedArc {
    cli::parse_arc(&read_fixture(name), t).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn path(v: &[(usize, Option<usize>, Option<usize>)]) -> CrossingPath {
    CrossingPath::new(v.iter().map(|&(t, a, b)| Visit::new(t, a, b)).collect())
}

fn third(a: usize, b: usize) -> usize {
    3 - a - b
}

/// Whether a valid path is realized by a simple arc.
///
/// The segments of the path are redrawn as a normal curve: in each triangle,
/// corner cuts are nested around their corner and terminal segments sit
/// between them. The strand traced from an endpoint must reproduce the path.
pub fn is_simple(t: &Triangulation, p: &CrossingPath) -> bool {
    let nt = t.num_triangles();
    let mut cuts = vec![[0usize; 3]; nt];
    let mut terms = vec![[0usize; 3]; nt];
    for v in &p.visits {
        match (v.enter, v.exit) {
            (Some(a), Some(b)) => cuts[v.tri][third(a, b)] += 1,
            (None, Some(c)) | (Some(c), None) => terms[v.tri][c] += 1,
            (None, None) => return false,
        }
    }
    for tri in 0..nt {
        let corners: Vec<usize> = (0..3).filter(|&c| terms[tri][c] > 0).collect();
        if corners.len() > 1 || corners.iter().any(|&c| cuts[tri][c] > 0) {
            return false;
        }
    }
    let count = |tri: usize, s: usize| cuts[tri][(s + 1) % 3] + terms[tri][s] + cuts[tri][(s + 2) % 3];
    // Terminals sharing a corner may appear in either order.
    let swaps = if p.visits[0].tri == p.visits[p.visits.len() - 1].tri
        && p.visits[0].exit == p.visits[p.visits.len() - 1].enter
    {
        vec![false, true]
    } else {
        vec![false]
    };
    let first = p.visits[0];
    let target = p.reversed();
    for swap in swaps {
        let c = first.exit.unwrap();
        let base = cuts[first.tri][(c + 1) % 3];
        let mut tri = first.tri;
        let mut side = c;
        let mut idx = base + usize::from(swap && terms[first.tri][c] == 2);
        let mut traced = vec![Visit::new(tri, None, Some(side))];
        while let Some((t2, u)) = t.twin(tri, side) {
            let n = count(tri, side);
            let j = n - 1 - idx;
            let n1 = cuts[t2][(u + 1) % 3];
            let m = terms[t2][u];
            if j < n1 {
                // Cut of corner u+1, leaving through side u+2.
                let v = (u + 2) % 3;
                traced.push(Visit::new(t2, Some(u), Some(v)));
                idx = count(t2, v) - 1 - j;
                side = v;
            } else if j < n1 + m {
                traced.push(Visit::new(t2, Some(u), None));
                break;
            } else {
                // Cut of corner u+2, leaving through side u+1.
                let depth = count(t2, u) - 1 - j;
                let v = (u + 1) % 3;
                traced.push(Visit::new(t2, Some(u), Some(v)));
                idx = depth;
                side = v;
            }
            tri = t2;
            if traced.len() > p.visits.len() {
                break;
            }
        }
        if traced == p.visits || traced == target.visits {
            return true;
        }
    }
    false
}

/// A loop whose interior segments all cut corners at one puncture encloses
/// a once-punctured monogon.
fn is_monogon_loop(t: &Triangulation, p: &CrossingPath) -> bool {
    if p.start_point(t) != p.end_point(t) {
        return false;
    }
    let inner = &p.visits[1..p.visits.len() - 1];
    let pts: BTreeSet<usize> = inner
        .iter()
        .map(|v| t.corner_point(v.tri, third(v.enter.unwrap(), v.exit.unwrap())))
        .collect();
    match pts.iter().next() {
        None => true,
        Some(&q) => pts.len() == 1 && t.is_puncture(q),
    }
}

/// Every simple arc with `1..=max` crossings, one orientation each. Loops
/// cutting out a once-punctured monogon are left out.
pub fn enumerate_paths(t: &Triangulation, max: usize) -> Vec<CrossingPath> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Visit>> = Vec::new();
    for tri in 0..t.num_triangles() {
        for s in 0..3 {
            stack.push(vec![Visit::new(tri, None, Some(s))]);
        }
    }
    while let Some(pre) = stack.pop() {
        let last = *pre.last().unwrap();
        let Some((t2, u)) = t.twin(last.tri, last.exit.unwrap()) else { continue };
        let mut done = pre.clone();
        done.push(Visit::new(t2, Some(u), None));
        let p = CrossingPath::new(done);
        if validate_path(t, &p).is_empty() && is_simple(t, &p) && !is_monogon_loop(t, &p) {
            let key = std::cmp::min(p.visits.clone(), p.reversed().visits);
            if seen.insert(key) {
                out.push(p);
            }
        }
        if pre.len() < max {
            for v in 0..3 {
                if v == u {
                    continue;
                }
                let mut next = pre.clone();
                next.push(Visit::new(t2, Some(u), Some(v)));
                // Prune prefixes that are already invalid.
                let mut probe = next.clone();
                if let Some((t3, w)) = t.twin(t2, v) {
                    probe.push(Visit::new(t3, Some(w), None));
                    let errs = validate_path(t, &CrossingPath::new(probe));
                    if errs.iter().any(|e| !e.contains("self-folded")) {
                        continue;
                    }
                    stack.push(next);
                }
            }
        }
    }
    // A loop that runs along an arc to a puncture, circles it and returns
    // also cuts out a once-punctured monogon.
    let mut tails = BTreeSet::new();
    for g in &out {
        for g in [g.clone(), g.reversed()] {
            if g.start_point(t) != g.end_point(t) && t.is_puncture(g.end_point(t)) {
                if let Ok((l, _, _)) = build_loop_path(t, &g) {
                    tails.insert(std::cmp::min(l.visits.clone(), l.reversed().visits));
                }
            }
        }
    }
    out.retain(|p| !tails.contains(&std::cmp::min(p.visits.clone(), p.reversed().visits)));
    out.sort_by(|a, b| a.visits.cmp(&b.visits));
    out
}

/// A tagged arc with a display name and the orientation used for loops.
pub struct Case {
    pub name: String,
    pub arc: TaggedArc,
    pub orientation: Option<Orientation>,
}

fn tag_variants(t: &Triangulation, base: ArcBase, name: String, initial: bool) -> Vec<Case> {
    let plain = TaggedArc::plain(base);
    let (a, b) = plain.endpoints(t);
    let mut tags = vec![(false, false)];
    if a == b {
        if t.is_puncture(a) && !initial {
            tags.push((true, true));
        }
    } else {
        if t.is_puncture(a) {
            tags.push((true, false));
        }
        if t.is_puncture(b) {
            tags.push((false, true));
        }
        if t.is_puncture(a) && t.is_puncture(b) {
            tags.push((true, true));
        }
    }
    tags.into_iter()
        .map(|(s, e)| Case {
            name: format!("{name}{}{}", if s { " notch-start" } else { "" }, if e { " notch-end" } else { "" }),
            arc: TaggedArc {
                base: plain.base.clone(),
                notch_start: s,
                notch_end: e,
            },
            orientation: None,
        })
        .collect()
}

/// All tagged arcs from arcs of the triangulation and simple paths with at
/// most `max` crossings.
pub fn tagged_arcs(t: &Triangulation, max: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for id in 0..t.n() {
        let base = ArcBase::Initial { arc: id, from: None };
        out.extend(tag_variants(t, base, format!("arc {}", t.label(id)), true));
    }
    for p in enumerate_paths(t, max) {
        let name = format!("{:?}", p.visits.iter().map(|v| (v.tri, v.enter, v.exit)).collect::<Vec<_>>());
        out.extend(tag_variants(t, ArcBase::Path(p), name, false));
    }
    out
}

/// Diagonals of an n-gon with vertices `0..n` in order; the fixtures' fan
/// has hub 0 and diagonals `d_k = (0, k + 1)`.
pub type Diagonal = (usize, usize);

pub fn fan(n: usize) -> Vec<Diagonal> {
    (2..n - 1).map(|j| (0, j)).collect()
}

fn is_edge(n: usize, tri: &[Diagonal], a: usize, b: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    b - a == 1 || (a == 0 && b == n - 1) || tri.contains(&(a, b))
}

/// Flips the diagonal in slot `k`. In a convex polygon every triangle of
/// edges is a face, so the two apexes are the vertices joined to both ends.
pub fn flip(n: usize, tri: &mut [Diagonal], k: usize) {
    let (a, b) = tri[k];
    let apexes: Vec<usize> = (0..n)
        .filter(|&c| c != a && c != b && is_edge(n, tri, a, c) && is_edge(n, tri, c, b))
        .collect();
    assert_eq!(apexes.len(), 2, "diagonal {:?} has two adjacent triangles", (a, b));
    let (c, d) = (apexes[0].min(apexes[1]), apexes[0].max(apexes[1]));
    tri[k] = (c, d);
}

/// The crossing path of the diagonal `(i, j)` against the fan, given by
/// arc-file text.
pub fn fan_arc_json(i: usize, j: usize) -> String {
    let (i, j) = (i.min(j), i.max(j));
    assert!(i >= 1 && j >= i + 2, "({i}, {j}) is not a non-fan diagonal");
    let steps: Vec<String> = (i..=j - 3)
        .map(|m| format!(r#"{{"triangle": {m}, "enter": "d{m}", "exit": "d{}"}}"#, m + 1))
        .collect();
    format!(
        r#"{{"version": 1, "start": {{"triangle": {}, "vertex": "d{i}"}}, "crossings": [{}], "end": {{"triangle": {}, "vertex": "d{}"}}}}"#,
        i - 1,
        steps.join(", "),
        j - 2,
        j - 2
    )
}
