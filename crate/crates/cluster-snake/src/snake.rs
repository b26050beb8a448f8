//! Snake graphs of arcs and the loop graphs used for notched arcs.
//!
//! Tile `j` is the union of the triangles of visits `j` and `j+1` of the
//! crossing path, glued along the crossed arc (its diagonal). Every edge is
//! identified by the visit it comes from and the triangle slot it occupies,
//! so repeated labels never get confused.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::surface::{ccw_next, cw_next, third_slot, validate_path, CrossingPath, Triangulation, Visit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnakeError {
    #[error("invalid path: {}", .0.join("; "))]
    PathInvalid(Vec<String>),
    #[error("glue conflict at tile {0}")]
    GlueConflict(usize),
    #[error("marked point `{0}` is not a puncture")]
    EndpointNotPuncture(String),
    #[error("loop around `{0}` did not close")]
    MalformedLoopGraph(String),
}

/// Edge identity: (visit index, triangle slot).
pub type EdgeId = (usize, usize);

/// Grid point `(col, row)`.
pub type Point = (i64, i64);

/// Compass position of an edge in a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Compass {
    S,
    E,
    N,
    W,
}

impl Compass {
    pub const ALL: [Compass; 4] = [Compass::S, Compass::E, Compass::N, Compass::W];

    fn index(self) -> usize {
        self as usize
    }
}

/// Glue direction from one tile to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Right,
    Up,
}

impl Dir {
    pub fn letter(self) -> char {
        match self {
            Dir::Right => 'R',
            Dir::Up => 'U',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    /// Label id of the diagonal.
    pub diagonal: usize,
    /// Edge identities at S, E, N, W.
    pub edges: [EdgeId; 4],
    pub rel: i8,
    pub pos: Point,
}

impl Tile {
    pub fn edge(&self, c: Compass) -> EdgeId {
        self.edges[c.index()]
    }
}

/// A geometric edge of the snake graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub id: EdgeId,
    pub label: usize,
    pub ends: (Point, Point),
    /// True when the edge belongs to exactly one tile.
    pub boundary: bool,
}

/// The snake graph of a crossing path.
#[derive(Clone, Debug)]
pub struct SnakeGraph {
    pub path: CrossingPath,
    pub tiles: Vec<Tile>,
    pub glue: Vec<Dir>,
    /// Index triples of tiles coming from a loop–radius–loop crossing.
    pub triple_spans: Vec<[usize; 3]>,
    /// Edges sorted by identity; diagonals are not included.
    pub edges: Vec<GraphEdge>,
    /// For each tile, indices into `edges` at S, E, N, W.
    pub tile_edges: Vec<[usize; 4]>,
    pub vertices: Vec<Point>,
}

fn tile_geometry(pos: Point) -> [(Point, Point); 4] {
    let (c, r) = pos;
    [
        ((c, r), (c + 1, r)),
        ((c + 1, r), (c + 1, r + 1)),
        ((c, r + 1), (c + 1, r + 1)),
        ((c, r), (c, r + 1)),
    ]
}

/// Builds the tiles of a path without gluing them.
///
/// `rel1` is the relative orientation of the first tile; later tiles
/// alternate.
pub fn build_tiles(t: &Triangulation, path: &CrossingPath, rel1: i8) -> Result<Vec<Tile>, SnakeError> {
    let v = validate_path(t, path);
    if !v.is_empty() {
        return Err(SnakeError::PathInvalid(v));
    }
    let vs = &path.visits;
    let mut tiles = Vec::with_capacity(vs.len() - 1);
    for j in 0..vs.len() - 1 {
        let rel = if j % 2 == 0 { rel1 } else { -rel1 };
        let out = vs[j].exit.unwrap();
        let s = if rel == 1 { cw_next(out) } else { ccw_next(out) };
        let w = third_slot(out, s);
        let inn = vs[j + 1].enter.unwrap();
        let n = if rel == 1 { cw_next(inn) } else { ccw_next(inn) };
        let e = third_slot(inn, n);
        tiles.push(Tile {
            diagonal: t.side(vs[j].tri, out),
            edges: [(j, s), (j + 1, e), (j + 1, n), (j, w)],
            rel,
            pos: (0, 0),
        });
    }
    Ok(tiles)
}

/// Glues tiles along their shared sides and lays them out on the grid.
pub fn glue_snake(t: &Triangulation, path: &CrossingPath, mut tiles: Vec<Tile>) -> Result<SnakeGraph, SnakeError> {
    let vs = &path.visits;
    let mut glue = Vec::new();
    for j in 0..tiles.len().saturating_sub(1) {
        let up = vs[j + 1];
        let shared = (j + 1, third_slot(up.enter.unwrap(), up.exit.unwrap()));
        let (c, r) = tiles[j].pos;
        if tiles[j].edge(Compass::N) == shared {
            glue.push(Dir::Up);
            tiles[j + 1].pos = (c, r + 1);
        } else if tiles[j].edge(Compass::E) == shared {
            glue.push(Dir::Right);
            tiles[j + 1].pos = (c + 1, r);
        } else {
            return Err(SnakeError::GlueConflict(j));
        }
    }

    let mut by_geo: BTreeMap<(Point, Point), EdgeId> = BTreeMap::new();
    let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (j, tile) in tiles.iter().enumerate() {
        for (k, geo) in tile_geometry(tile.pos).into_iter().enumerate() {
            let id = tile.edges[k];
            if let Some(prev) = by_geo.insert(geo, id) {
                if prev != id {
                    return Err(SnakeError::GlueConflict(j));
                }
            }
            *count.entry(id).or_default() += 1;
        }
    }
    let mut geo_of: BTreeMap<EdgeId, (Point, Point)> = BTreeMap::new();
    for (g, id) in &by_geo {
        geo_of.insert(*id, *g);
    }
    let edges: Vec<GraphEdge> = geo_of
        .iter()
        .map(|(id, g)| GraphEdge {
            id: *id,
            label: t.side(vs[id.0].tri, id.1),
            ends: *g,
            boundary: count[id] == 1,
        })
        .collect();
    let index: BTreeMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
    let tile_edges = tiles
        .iter()
        .map(|tile| tile.edges.map(|id| index[&id]))
        .collect();
    let mut vertices: Vec<Point> = edges.iter().flat_map(|e| [e.ends.0, e.ends.1]).collect();
    vertices.sort();
    vertices.dedup();

    let triple_spans = (1..vs.len().saturating_sub(1))
        .filter(|&j| {
            let x = vs[j];
            t.is_self_folded(x.tri) && x.enter == Some(0) && matches!(x.exit, Some(1) | Some(2))
        })
        .map(|j| [j - 1, j, j + 1])
        .collect();

    Ok(SnakeGraph {
        path: path.clone(),
        tiles,
        glue,
        triple_spans,
        edges,
        tile_edges,
        vertices,
    })
}

/// Builds the snake graph of a path with first-tile orientation `rel1`.
pub fn build_snake(t: &Triangulation, path: &CrossingPath, rel1: i8) -> Result<SnakeGraph, SnakeError> {
    let tiles = build_tiles(t, path, rel1)?;
    glue_snake(t, path, tiles)
}

impl SnakeGraph {
    pub fn num_tiles(&self) -> usize {
        self.tiles.len()
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.cmp(&id)).ok()
    }

    /// Plain-text dump: one line per tile, then the glue word.
    pub fn render_text(&self, t: &Triangulation) -> String {
        let mut s = String::new();
        for (j, tile) in self.tiles.iter().enumerate() {
            let lab = |c: Compass| t.label(self.edges[self.tile_edges[j][c.index()]].label);
            let _ = writeln!(
                s,
                "tile {j} pos ({},{}) diagonal {} rel {:+} S {} E {} N {} W {}",
                tile.pos.0,
                tile.pos.1,
                t.label(tile.diagonal),
                tile.rel,
                lab(Compass::S),
                lab(Compass::E),
                lab(Compass::N),
                lab(Compass::W),
            );
        }
        let word: String = self.glue.iter().map(|d| d.letter()).collect();
        let _ = writeln!(s, "glue {}", if word.is_empty() { "-" } else { &word });
        for span in &self.triple_spans {
            let _ = writeln!(s, "triple {} {} {}", span[0], span[1], span[2]);
        }
        s
    }

    /// Graphviz dump with vertices pinned at their grid positions.
    pub fn render_dot(&self, t: &Triangulation) -> String {
        let mut s = String::from("graph snake {\n  node [shape=point];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [pos=\"{},{}!\"];", v.0, v.1);
        }
        let vid = |p: Point| self.vertices.binary_search(&p).unwrap();
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"{}\"{}];",
                vid(e.ends.0),
                vid(e.ends.1),
                t.label(e.label),
                if e.boundary { "" } else { ", style=dashed" }
            );
        }
        for (j, tile) in self.tiles.iter().enumerate() {
            let _ = writeln!(
                s,
                "  d{j} [shape=plaintext, label=\"{}\", pos=\"{}.5,{}.5!\"];",
                t.label(tile.diagonal),
                tile.pos.0,
                tile.pos.1
            );
        }
        s.push_str("}\n");
        s
    }
}

/// The path `ℓ_p`: follow `γ` to its end `p`, go once around `p`, and return
/// along `γ` reversed. Returns the path, `d` and `e_p`.
pub fn build_loop_path(t: &Triangulation, gamma: &CrossingPath) -> Result<(CrossingPath, usize, usize), SnakeError> {
    let v = validate_path(t, gamma);
    if !v.is_empty() {
        return Err(SnakeError::PathInvalid(v));
    }
    let p = gamma.end_point(t);
    if !t.is_puncture(p) {
        return Err(SnakeError::EndpointNotPuncture(t.point_name(p).to_string()));
    }
    let d = gamma.crossings();
    let last = *gamma.visits.last().unwrap();
    let (td, ind) = (last.tri, last.enter.unwrap());
    let z1 = cw_next(ind);
    let stop = third_slot(ind, z1);
    let mut visits: Vec<Visit> = gamma.visits[..d].to_vec();
    visits.push(Visit::new(td, Some(ind), Some(z1)));
    let (mut tri, mut out) = (td, z1);
    loop {
        let (t2, u) = t.twin(tri, out).ok_or_else(|| SnakeError::MalformedLoopGraph(t.point_name(p).into()))?;
        if t2 == td && u == stop {
            visits.push(Visit::new(td, Some(u), Some(ind)));
            break;
        }
        let ex = ccw_next(u);
        visits.push(Visit::new(t2, Some(u), Some(ex)));
        tri = t2;
        out = ex;
        if visits.len() > d + 3 * t.num_triangles() + 2 {
            return Err(SnakeError::MalformedLoopGraph(t.point_name(p).into()));
        }
    }
    for k in (0..d).rev() {
        let x = gamma.visits[k];
        visits.push(Visit::new(x.tri, x.exit, x.enter));
    }
    let e_p = visits.len() - 1 - 2 * d;
    Ok((CrossingPath::new(visits), d, e_p))
}

/// A loop graph with its two end copies of the snake graph of `γ`.
#[derive(Clone, Debug)]
pub struct LoopGraph {
    pub graph: SnakeGraph,
    pub d: usize,
    pub e_p: usize,
    /// Tile ranges of the two ends.
    pub end1: std::ops::Range<usize>,
    pub end2: std::ops::Range<usize>,
    /// The vertices removed to obtain the `H` subgraphs.
    pub v1: Point,
    pub v2: Point,
    /// Labels crossed while going around the puncture.
    pub zeta: Vec<usize>,
}

impl LoopGraph {
    /// Total number of crossings `K = 2d + e_p`.
    pub fn k(&self) -> usize {
        2 * self.d + self.e_p
    }

    /// Edge of end 2 corresponding to an edge of end 1, and back.
    pub fn mirror(&self, id: EdgeId) -> EdgeId {
        (self.k() - id.0, id.1)
    }

    /// True when the edge lies in the end-1 copy of `G_γ`.
    pub fn in_end1(&self, id: EdgeId) -> bool {
        let enter = self.graph.path.visits[self.d].enter;
        id.0 < self.d || (id.0 == self.d && Some(id.1) != enter)
    }

    /// True when the edge lies in the end-2 copy of `G_γ`.
    pub fn in_end2(&self, id: EdgeId) -> bool {
        let k = self.k();
        let exit = self.graph.path.visits[k - self.d].exit;
        id.0 > k - self.d || (id.0 == k - self.d && Some(id.1) != exit)
    }

    /// True when the edge lies in `H_1`, the end-1 copy without `v_1`.
    pub fn in_h1(&self, id: EdgeId) -> bool {
        id.0 < self.d
    }

    pub fn in_h2(&self, id: EdgeId) -> bool {
        id.0 > self.k() - self.d
    }
}

/// Identifies the end subgraphs of the graph of a loop path.
pub fn end_subgraphs(t: &Triangulation, g: SnakeGraph, d: usize, e_p: usize) -> Result<LoopGraph, SnakeError> {
    let k = 2 * d + e_p;
    let bad = || SnakeError::MalformedLoopGraph(format!("{} tiles, d = {d}, e_p = {e_p}", g.num_tiles()));
    if g.num_tiles() != k || d == 0 {
        return Err(bad());
    }
    let vs = &g.path.visits;
    let shared_point = |visit: usize, skip: Option<usize>| -> Option<Point> {
        let slots: Vec<usize> = (0..3).filter(|&s| Some(s) != skip).collect();
        let a = g.edges[g.edge_index((visit, slots[0]))?].ends;
        let b = g.edges[g.edge_index((visit, slots[1]))?].ends;
        [a.0, a.1].into_iter().find(|p| *p == b.0 || *p == b.1)
    };
    let v1 = shared_point(d, vs[d].enter).ok_or_else(bad)?;
    let v2 = shared_point(k - d, vs[k - d].exit).ok_or_else(bad)?;
    let zeta = (d..d + e_p).map(|j| t.side(vs[j].tri, vs[j].exit.unwrap())).collect();
    Ok(LoopGraph {
        graph: g,
        d,
        e_p,
        end1: 0..d,
        end2: d + e_p..k,
        v1,
        v2,
        zeta,
    })
}

/// Builds the loop graph of `ℓ_p` for an arc `γ` ending at the puncture `p`.
pub fn build_loop_graph(t: &Triangulation, gamma: &CrossingPath, rel1: i8) -> Result<LoopGraph, SnakeError> {
    let (path, d, e_p) = build_loop_path(t, gamma)?;
    let g = build_snake(t, &path, rel1)?;
    end_subgraphs(t, g, d, e_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn square_single_tile() {
        let t = fixtures::square();
        let p = CrossingPath::new(vec![Visit::new(0, None, Some(2)), Visit::new(1, Some(2), None)]);
        let g = build_snake(&t, &p, 1).unwrap();
        assert_eq!(g.num_tiles(), 1);
        assert!(g.glue.is_empty());
        assert_eq!(g.edges.len(), 4);
        assert!(g.edges.iter().all(|e| e.boundary && t.is_boundary(e.label)));
        assert_eq!(t.label(g.tiles[0].diagonal), "d");
    }

    #[test]
    fn digon_loop_path() {
        let t = fixtures::digon();
        let r = fixtures::digon_radius_path();
        let (lp, d, e_p) = build_loop_path(&t, &r).unwrap();
        assert_eq!((d, e_p), (1, 1));
        let labels: Vec<&str> = lp.crossed_labels(&t).iter().map(|&i| t.label(i)).collect();
        assert_eq!(labels, ["l", "r", "l"]);
        let lg = build_loop_graph(&t, &r, 1).unwrap();
        assert_eq!(lg.end1, 0..1);
        assert_eq!(lg.end2, 2..3);
        assert_eq!(lg.graph.triple_spans, vec![[0, 1, 2]]);
    }
}
