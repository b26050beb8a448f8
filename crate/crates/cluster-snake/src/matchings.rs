//! Perfect matchings of snake graphs and the monomials attached to them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::poly::{Monomial, Var};
use crate::snake::{Compass, EdgeId, LoopGraph, SnakeGraph};
use crate::surface::Triangulation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge set is not a perfect matching")]
    NotAMatching,
    #[error("expected exactly two boundary-only matchings, found {0}")]
    BoundaryMatchings(usize),
}

/// A perfect matching as sorted indices into [`SnakeGraph::edges`]. Since the
/// edges are sorted by identity, the derived order is lex order on edge sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pub edges: Vec<usize>,
}

impl Matching {
    pub fn ids<'a>(&'a self, g: &'a SnakeGraph) -> impl Iterator<Item = EdgeId> + 'a {
        self.edges.iter().map(move |&i| g.edges[i].id)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// Number of tiles enclosed by `P ⊖ P₋`, per diagonal label.
pub type HeightExponents = BTreeMap<usize, u32>;

fn tile_vertices(g: &SnakeGraph, j: usize) -> [usize; 4] {
    let (c, r) = g.tiles[j].pos;
    [(c, r), (c + 1, r), (c + 1, r + 1), (c, r + 1)].map(|p| g.vertices.binary_search(&p).unwrap())
}

fn edge_vertices(g: &SnakeGraph, e: usize) -> (usize, usize) {
    let (a, b) = g.edges[e].ends;
    (g.vertices.binary_search(&a).unwrap(), g.vertices.binary_search(&b).unwrap())
}

/// All perfect matchings, sorted.
///
/// Tiles are processed in order. Each edge is handled by the last tile that
/// contains it, and the state carried between tiles is which endpoints of the
/// shared edge are already covered.
pub fn enumerate_matchings(g: &SnakeGraph) -> Vec<Matching> {
    let nt = g.num_tiles();
    let mut owner = vec![0usize; g.edges.len()];
    for (j, te) in g.tile_edges.iter().enumerate() {
        for &e in te {
            owner[e] = owner[e].max(j);
        }
    }
    let verts: Vec<[usize; 4]> = (0..nt).map(|j| tile_vertices(g, j)).collect();
    let frontier = |j: usize| -> Vec<usize> {
        if j + 1 >= nt {
            return Vec::new();
        }
        let mut f: Vec<usize> = verts[j].iter().copied().filter(|v| verts[j + 1].contains(v)).collect();
        f.sort();
        f
    };

    // state: covered vertices among the current frontier
    let mut states: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    states.insert(Vec::new(), vec![Vec::new()]);
    for j in 0..nt {
        let assigned: Vec<usize> = g.tile_edges[j].iter().copied().filter(|&e| owner[e] == j).collect();
        let next_frontier = frontier(j);
        let mut next: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for (covered, partials) in &states {
            for mask in 0u32..(1 << assigned.len()) {
                let mut cov: Vec<usize> = covered.clone();
                let mut chosen = Vec::new();
                let mut ok = true;
                for (i, &e) in assigned.iter().enumerate() {
                    if mask & (1 << i) == 0 {
                        continue;
                    }
                    let (a, b) = edge_vertices(g, e);
                    if cov.contains(&a) || cov.contains(&b) {
                        ok = false;
                        break;
                    }
                    cov.push(a);
                    cov.push(b);
                    chosen.push(e);
                }
                if !ok {
                    continue;
                }
                if verts[j].iter().any(|v| !cov.contains(v) && !next_frontier.contains(v)) {
                    continue;
                }
                let key: Vec<usize> = next_frontier.iter().copied().filter(|v| cov.contains(v)).collect();
                let bucket = next.entry(key).or_default();
                for p in partials {
                    let mut m = p.clone();
                    m.extend_from_slice(&chosen);
                    bucket.push(m);
                }
            }
        }
        states = next;
    }
    let mut out: Vec<Matching> = states
        .into_values()
        .flatten()
        .map(|mut edges| {
            edges.sort();
            Matching { edges }
        })
        .collect();
    out.sort();
    out
}

/// Number of perfect matchings computed from the glue word alone.
pub fn transfer_count(g: &SnakeGraph) -> u128 {
    let n = g.num_tiles();
    if n == 0 {
        return 1;
    }
    // f: matchings of the first j tiles; h: the part that extends through the next glue
    let (mut f_prev, mut f) = (1u128, 2u128);
    let mut h = 1u128;
    for j in 1..n {
        if j >= 2 {
            h = if g.glue[j - 2] == g.glue[j - 1] { f_prev } else { h };
        }
        let f_next = f + h;
        f_prev = f;
        f = f_next;
    }
    f
}

/// Checks that an edge set covers every vertex exactly once.
pub fn is_perfect(g: &SnakeGraph, p: &Matching) -> bool {
    let mut seen = vec![false; g.vertices.len()];
    for &e in &p.edges {
        if e >= g.edges.len() {
            return false;
        }
        let (a, b) = edge_vertices(g, e);
        if seen[a] || seen[b] {
            return false;
        }
        seen[a] = true;
        seen[b] = true;
    }
    seen.into_iter().all(|s| s)
}

/// Indices of `P₋` and `P₊` in `all`: the two matchings made of boundary
/// edges only. `P₋` contains the S edge of the first tile when its relative
/// orientation is +1, and its W edge otherwise.
pub fn minimal_maximal(g: &SnakeGraph, all: &[Matching]) -> Result<(usize, usize), MatchingError> {
    let bms: Vec<usize> = (0..all.len())
        .filter(|&i| all[i].edges.iter().all(|&e| g.edges[e].boundary))
        .collect();
    if bms.len() != 2 {
        return Err(MatchingError::BoundaryMatchings(bms.len()));
    }
    let key = if g.tiles[0].rel == 1 { Compass::S } else { Compass::W };
    let e = g.tile_edges[0][key as usize];
    if all[bms[0]].contains(e) {
        Ok((bms[0], bms[1]))
    } else {
        Ok((bms[1], bms[0]))
    }
}

/// Tiles enclosed by the cycles of `P₋ ⊖ P`, by even–odd ray casting from
/// the tile centres.
pub fn enclosed_tiles(g: &SnakeGraph, pminus: &Matching, p: &Matching) -> Result<Vec<bool>, MatchingError> {
    if !is_perfect(g, p) || !is_perfect(g, pminus) {
        return Err(MatchingError::NotAMatching);
    }
    let sym: Vec<usize> = p
        .edges
        .iter()
        .filter(|e| !pminus.contains(**e))
        .chain(pminus.edges.iter().filter(|e| !p.contains(**e)))
        .copied()
        .collect();
    Ok(g.tiles
        .iter()
        .map(|tile| {
            let (c, r) = tile.pos;
            let crossings = sym
                .iter()
                .filter(|&&e| {
                    let ((x0, y0), (x1, _)) = g.edges[e].ends;
                    x0 == x1 && x0 > c && y0 == r
                })
                .count();
            crossings % 2 == 1
        })
        .collect())
}

/// Height exponents of a matching.
pub fn height_exponents(g: &SnakeGraph, pminus: &Matching, p: &Matching) -> Result<HeightExponents, MatchingError> {
    Ok(exponents_from_tiles(g, &enclosed_tiles(g, pminus, p)?))
}

pub fn exponents_from_tiles(g: &SnakeGraph, tiles: &[bool]) -> HeightExponents {
    let mut m = HeightExponents::new();
    for (j, &inside) in tiles.iter().enumerate() {
        if inside {
            *m.entry(g.tiles[j].diagonal).or_default() += 1;
        }
    }
    m
}

/// Independent height oracle: walks from `P₋` by tile twists, toggling the
/// twisted tile each time.
pub fn twist_heights(g: &SnakeGraph, pminus: &Matching) -> HashMap<Matching, Vec<bool>> {
    let mut seen: HashMap<Matching, Vec<bool>> = HashMap::new();
    seen.insert(pminus.clone(), vec![false; g.num_tiles()]);
    let mut queue = VecDeque::from([pminus.clone()]);
    while let Some(m) = queue.pop_front() {
        let h = seen[&m].clone();
        for (j, te) in g.tile_edges.iter().enumerate() {
            let [s, e, n, w] = *te;
            let (remove, add) = if m.contains(s) && m.contains(n) {
                ([s, n], [w, e])
            } else if m.contains(w) && m.contains(e) {
                ([w, e], [s, n])
            } else {
                continue;
            };
            let mut edges: Vec<usize> = m.edges.iter().copied().filter(|x| !remove.contains(x)).collect();
            edges.extend(add);
            edges.sort();
            let m2 = Matching { edges };
            if !seen.contains_key(&m2) {
                let mut h2 = h.clone();
                h2[j] = !h2[j];
                seen.insert(m2.clone(), h2);
                queue.push_back(m2);
            }
        }
    }
    seen
}

/// `∏ h_τ^{m_τ}` before specialization.
pub fn height_monomial(t: &Triangulation, m: &HeightExponents) -> Monomial {
    Monomial::from_pairs(m.iter().map(|(&id, &k)| (Var::h(t.label(id)), k as i64)))
}

/// `Φ(∏ h_τ^{m_τ})`.
pub fn phi_specialize(t: &Triangulation, m: &HeightExponents) -> Monomial {
    m.iter()
        .fold(Monomial::one(), |acc, (&id, &k)| acc.mul(&t.phi(id).pow(k as i64)))
}

/// `x(P)`: the product of the edge weights.
pub fn matching_weight(t: &Triangulation, g: &SnakeGraph, p: &Matching) -> Monomial {
    p.edges
        .iter()
        .fold(Monomial::one(), |acc, &e| acc.mul(&t.x_weight(g.edges[e].label)))
}

/// Restriction of a loop-graph matching to an end on which it is perfect,
/// written in the visit coordinates of `γ`. `None` if neither end works.
pub fn end_restriction(lg: &LoopGraph, p: &Matching) -> Option<Vec<EdgeId>> {
    let g = &lg.graph;
    let mut r1: Vec<EdgeId> = p.ids(g).filter(|&id| lg.in_end1(id)).collect();
    if r1.len() == lg.d + 1 {
        r1.sort();
        return Some(r1);
    }
    let mut r2: Vec<EdgeId> = p.ids(g).filter(|&id| lg.in_end2(id)).map(|id| lg.mirror(id)).collect();
    if r2.len() == lg.d + 1 {
        r2.sort();
        return Some(r2);
    }
    None
}

/// True when the restrictions to `H_1` and `H_2` agree under the end
/// isomorphism.
pub fn is_gamma_symmetric(lg: &LoopGraph, p: &Matching) -> bool {
    let g = &lg.graph;
    let mut h1: Vec<EdgeId> = p.ids(g).filter(|&id| lg.in_h1(id)).collect();
    let mut h2: Vec<EdgeId> = p.ids(g).filter(|&id| lg.in_h2(id)).map(|id| lg.mirror(id)).collect();
    h1.sort();
    h2.sort();
    h1 == h2
}

/// Indices of the γ-symmetric matchings in `all`.
pub fn gamma_symmetric_filter(lg: &LoopGraph, all: &[Matching]) -> Vec<usize> {
    (0..all.len()).filter(|&i| is_gamma_symmetric(lg, &all[i])).collect()
}

/// γ-compatible pairs, given the γ-symmetric matchings of both loop graphs.
/// `lq` is built from `γ` reversed, so its visit `k` is visit `d - k` of `γ`.
pub fn compatible_pairs(
    lp: &LoopGraph,
    sym_p: &[Matching],
    lq: &LoopGraph,
    sym_q: &[Matching],
) -> Vec<(usize, usize)> {
    let d = lp.d;
    let rp: Vec<Option<Vec<EdgeId>>> = sym_p.iter().map(|m| end_restriction(lp, m)).collect();
    let rq: Vec<Option<Vec<EdgeId>>> = sym_q
        .iter()
        .map(|m| {
            end_restriction(lq, m).map(|r| {
                let mut v: Vec<EdgeId> = r.into_iter().map(|(k, s)| (d - k, s)).collect();
                v.sort();
                v
            })
        })
        .collect();
    let mut out = Vec::new();
    for (i, a) in rp.iter().enumerate() {
        for (j, b) in rq.iter().enumerate() {
            if a.is_some() && a == b {
                out.push((i, j));
            }
        }
    }
    out
}

/// One line per matching: edges, weight, height before and after `Φ`.
pub fn render_matchings(t: &Triangulation, g: &SnakeGraph, all: &[Matching], pminus: &Matching) -> String {
    let mut s = String::new();
    for p in all {
        let ids: Vec<String> = p
            .ids(g)
            .map(|(k, sl)| format!("{k}.{sl}:{}", t.label(g.edges[g.edge_index((k, sl)).unwrap()].label)))
            .collect();
        let m = height_exponents(g, pminus, p).expect("enumerated matchings are perfect");
        let _ = writeln!(
            s,
            "{} | {} | {} | {}",
            ids.join(" "),
            matching_weight(t, g, p).text(),
            height_monomial(t, &m).text(),
            phi_specialize(t, &m).text()
        );
    }
    s
}
