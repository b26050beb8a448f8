//! Bordered surfaces with marked points, ideal triangulations and arcs given
//! by their crossing sequences.
//!
//! Triangle sides are listed counterclockwise. Slot `k` of a triangle holds a
//! side label; the corner `k` is the corner opposite side `k`, so it lies
//! between sides `k+1` and `k+2`. A self-folded triangle `(ℓ, r, p)` is stored
//! with sides `[ℓ, r, r]`: corner 0 is the puncture `p`, corners 1 and 2 are the
//! base point of the loop.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::poly::{is_label_char, Laurent, Monomial, Var};

/// Structural problems that prevent building a triangulation at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("arc `{0}` must be a side of exactly two triangle slots, found {1}")]
    ArcOccurrences(String, usize),
    #[error("boundary segment `{0}` must be a side of exactly one triangle slot, found {1}")]
    BoundaryOccurrences(String, usize),
    #[error("marked point named both `{0}` and `{1}`")]
    ConflictingPointNames(String, String),
    #[error("puncture `{0}` is not listed in punctures")]
    UnlistedPuncture(String),
    #[error("marked point `{0}` is not a puncture")]
    NotAPuncture(String),
    #[error("an interior marked point has no name")]
    UnnamedPuncture,
    #[error("`{0}` is not a side of triangle {1}")]
    NotASide(String, usize),
    #[error("self-folded triangle {0}: {1}")]
    SelfFolded(usize, String),
}

/// Topological type `(g, b, p, c)` of the marked surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Topology {
    pub genus: u32,
    pub boundary_components: u32,
    pub punctures: u32,
    pub marked_boundary: u32,
}

/// A triangle of an ideal triangulation as supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triangle {
    /// Sides in counterclockwise order, with optional names of the opposite
    /// marked points.
    Ordinary {
        sides: [String; 3],
        vertices: Option<[String; 3]>,
    },
    /// A loop enclosing a radius that ends at a puncture.
    SelfFolded {
        loop_arc: String,
        radius: String,
        puncture: String,
    },
}

/// A marked point of the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub name: String,
    pub interior: bool,
}

/// A triangulated bordered surface.
///
/// Labels are numbered with the internal arcs first (in the given order) and
/// the boundary segments after them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    topology: Topology,
    labels: Vec<String>,
    n_arcs: usize,
    punctures: Vec<String>,
    triangles: Vec<Triangle>,
    label_index: HashMap<String, usize>,
    sides: Vec<[usize; 3]>,
    twin: Vec<[Option<(usize, usize)>; 3]>,
    corner_point: Vec<[usize; 3]>,
    points: Vec<Point>,
    loop_radius: HashMap<usize, usize>,
    radius_loop: HashMap<usize, usize>,
}

pub(crate) fn ccw_next(s: usize) -> usize {
    (s + 1) % 3
}

pub(crate) fn cw_next(s: usize) -> usize {
    (s + 2) % 3
}

pub(crate) fn third_slot(a: usize, b: usize) -> usize {
    3 - a - b
}

fn check_label(l: &str, extra: &[char]) -> Result<(), SurfaceError> {
    if l.is_empty() || !l.chars().all(|c| (is_label_char(c) && c != ',') || extra.contains(&c)) {
        return Err(SurfaceError::InvalidLabel(l.to_string()));
    }
    Ok(())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Triangulation {
    /// Builds the triangulation and its gluing data.
    ///
    /// Only structural errors are reported here; counting and topology
    /// conditions are checked by [`validate_surface`].
    pub fn new(
        topology: Topology,
        arcs: Vec<String>,
        boundary: Vec<String>,
        punctures: Vec<String>,
        triangles: Vec<Triangle>,
    ) -> Result<Triangulation, SurfaceError> {
        let mut labels = Vec::new();
        let mut label_index = HashMap::new();
        for l in arcs.iter().chain(boundary.iter()) {
            check_label(l, &[])?;
            if label_index.insert(l.clone(), labels.len()).is_some() {
                return Err(SurfaceError::DuplicateLabel(l.clone()));
            }
            labels.push(l.clone());
        }
        let mut seen_punct = std::collections::HashSet::new();
        for p in &punctures {
            check_label(p, &[])?;
            if !seen_punct.insert(p.clone()) {
                return Err(SurfaceError::DuplicateLabel(p.clone()));
            }
        }
        let n_arcs = arcs.len();
        let lookup = |l: &str| {
            label_index
                .get(l)
                .copied()
                .ok_or_else(|| SurfaceError::UnknownLabel(l.to_string()))
        };

        let mut sides = Vec::with_capacity(triangles.len());
        let mut loop_radius = HashMap::new();
        let mut radius_loop = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            match tri {
                Triangle::Ordinary { sides: s, .. } => {
                    sides.push([lookup(&s[0])?, lookup(&s[1])?, lookup(&s[2])?]);
                }
                Triangle::SelfFolded {
                    loop_arc,
                    radius,
                    puncture,
                } => {
                    let (l, r) = (lookup(loop_arc)?, lookup(radius)?);
                    if l == r || l >= n_arcs || r >= n_arcs {
                        return Err(SurfaceError::SelfFolded(
                            t,
                            "loop and radius must be distinct internal arcs".into(),
                        ));
                    }
                    if !punctures.contains(puncture) {
                        return Err(SurfaceError::UnlistedPuncture(puncture.clone()));
                    }
                    loop_radius.insert(l, r);
                    radius_loop.insert(r, l);
                    sides.push([l, r, r]);
                }
            }
        }

        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); labels.len()];
        for (t, s) in sides.iter().enumerate() {
            for k in 0..3 {
                occ[s[k]].push((t, k));
            }
        }
        let mut twin = vec![[None; 3]; sides.len()];
        for (id, o) in occ.iter().enumerate() {
            if id < n_arcs {
                if o.len() != 2 {
                    return Err(SurfaceError::ArcOccurrences(labels[id].clone(), o.len()));
                }
                twin[o[0].0][o[0].1] = Some(o[1]);
                twin[o[1].0][o[1].1] = Some(o[0]);
            } else if o.len() != 1 {
                return Err(SurfaceError::BoundaryOccurrences(labels[id].clone(), o.len()));
            }
        }

        let mut uf = UnionFind((0..sides.len() * 3).collect());
        for t in 0..sides.len() {
            for s in 0..3 {
                if let Some((t2, u)) = twin[t][s] {
                    uf.union(3 * t + ccw_next(s), 3 * t2 + cw_next(u));
                    uf.union(3 * t + cw_next(s), 3 * t2 + ccw_next(u));
                }
            }
        }
        let mut class_names: BTreeMap<usize, String> = BTreeMap::new();
        let mut name_corner = |uf: &mut UnionFind, c: usize, name: &str| -> Result<(), SurfaceError> {
            let r = uf.find(c);
            match class_names.get(&r) {
                Some(prev) if prev != name => {
                    Err(SurfaceError::ConflictingPointNames(prev.clone(), name.to_string()))
                }
                _ => {
                    class_names.insert(r, name.to_string());
                    Ok(())
                }
            }
        };
        for (t, tri) in triangles.iter().enumerate() {
            match tri {
                Triangle::Ordinary {
                    vertices: Some(vs), ..
                } => {
                    for (k, v) in vs.iter().enumerate() {
                        check_label(v, &[])?;
                        name_corner(&mut uf, 3 * t + k, v)?;
                    }
                }
                Triangle::SelfFolded { puncture, .. } => name_corner(&mut uf, 3 * t, puncture)?,
                _ => {}
            }
        }

        let mut root_point: BTreeMap<usize, usize> = BTreeMap::new();
        let mut points: Vec<Point> = Vec::new();
        let mut corner_point = vec![[0usize; 3]; sides.len()];
        for t in 0..sides.len() {
            for k in 0..3 {
                let r = uf.find(3 * t + k);
                let id = *root_point.entry(r).or_insert_with(|| {
                    points.push(Point {
                        name: class_names.get(&r).cloned().unwrap_or_default(),
                        interior: true,
                    });
                    points.len() - 1
                });
                corner_point[t][k] = id;
            }
        }
        for t in 0..sides.len() {
            for k in 0..3 {
                if sides[t][ccw_next(k)] >= n_arcs || sides[t][cw_next(k)] >= n_arcs {
                    points[corner_point[t][k]].interior = false;
                }
            }
        }
        // Unnamed points: boundary points get generated names; a single
        // unnamed puncture takes the single unused puncture name.
        let used: std::collections::HashSet<String> =
            points.iter().map(|p| p.name.clone()).collect();
        let free: Vec<&String> = punctures.iter().filter(|p| !used.contains(*p)).collect();
        let unnamed_interior: Vec<usize> = (0..points.len())
            .filter(|&i| points[i].interior && points[i].name.is_empty())
            .collect();
        if !unnamed_interior.is_empty() {
            if unnamed_interior.len() == 1 && free.len() == 1 {
                points[unnamed_interior[0]].name = free[0].clone();
            } else {
                return Err(SurfaceError::UnnamedPuncture);
            }
        }
        let mut counter = 0;
        for i in 0..points.len() {
            if points[i].name.is_empty() {
                loop {
                    counter += 1;
                    let cand = format!("m{counter}");
                    if !used.contains(&cand) && !punctures.contains(&cand) {
                        points[i].name = cand;
                        break;
                    }
                }
            }
        }
        for p in &points {
            if p.interior && !punctures.contains(&p.name) {
                return Err(SurfaceError::UnlistedPuncture(p.name.clone()));
            }
            if !p.interior && punctures.contains(&p.name) {
                return Err(SurfaceError::NotAPuncture(p.name.clone()));
            }
        }

        Ok(Triangulation {
            topology,
            labels,
            n_arcs,
            punctures,
            triangles,
            label_index,
            sides,
            twin,
            corner_point,
            points,
            loop_radius,
            radius_loop,
        })
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Number of internal arcs.
    pub fn n(&self) -> usize {
        self.n_arcs
    }

    pub fn arc_labels(&self) -> &[String] {
        &self.labels[..self.n_arcs]
    }

    pub fn boundary_labels(&self) -> &[String] {
        &self.labels[self.n_arcs..]
    }

    pub fn puncture_labels(&self) -> &[String] {
        &self.punctures
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn num_triangles(&self) -> usize {
        self.sides.len()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn label_id(&self, l: &str) -> Option<usize> {
        self.label_index.get(l).copied()
    }

    pub fn is_boundary(&self, id: usize) -> bool {
        id >= self.n_arcs
    }

    /// Label id of side `s` of triangle `t`.
    pub fn side(&self, t: usize, s: usize) -> usize {
        self.sides[t][s]
    }

    /// The other slot carrying the same arc, if the side is not boundary.
    pub fn twin(&self, t: usize, s: usize) -> Option<(usize, usize)> {
        self.twin[t][s]
    }

    pub fn is_self_folded(&self, t: usize) -> bool {
        matches!(self.triangles[t], Triangle::SelfFolded { .. })
    }

    /// Radius enclosed by the given loop label.
    pub fn radius_of_loop(&self, l: usize) -> Option<usize> {
        self.loop_radius.get(&l).copied()
    }

    /// Loop enclosing the given radius label.
    pub fn loop_of_radius(&self, r: usize) -> Option<usize> {
        self.radius_loop.get(&r).copied()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point_id(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p.name == name)
    }

    pub fn point_name(&self, id: usize) -> &str {
        &self.points[id].name
    }

    pub fn is_puncture(&self, id: usize) -> bool {
        self.points[id].interior
    }

    /// Marked point at corner `k` of triangle `t`.
    pub fn corner_point(&self, t: usize, k: usize) -> usize {
        self.corner_point[t][k]
    }

    /// The two endpoints of side `s` of triangle `t`.
    pub fn side_endpoints(&self, t: usize, s: usize) -> (usize, usize) {
        (self.corner_point[t][ccw_next(s)], self.corner_point[t][cw_next(s)])
    }

    /// Crosses side `s` of triangle `t` keeping track of corner `k`, an
    /// endpoint of that side. Returns the twin slot and the matching corner on
    /// the other side.
    pub fn glue_corner(&self, t: usize, s: usize, k: usize) -> Option<(usize, usize, usize)> {
        let (t2, u) = self.twin[t][s]?;
        let k2 = if k == ccw_next(s) {
            cw_next(u)
        } else {
            debug_assert_eq!(k, cw_next(s));
            ccw_next(u)
        };
        Some((t2, u, k2))
    }

    /// Corners at an interior marked point in cyclic order. Each corner
    /// `(t, k)` is followed by the corner reached by crossing side `k+1`.
    pub fn corners_around(&self, p: usize) -> Vec<(usize, usize)> {
        let start = (0..self.sides.len())
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| self.corner_point[t][k] == p);
        let Some(start) = start else {
            return Vec::new();
        };
        let mut out = vec![start];
        let (mut t, mut k) = start;
        while let Some((t2, _, k2)) = self.glue_corner(t, ccw_next(k), k) {
            if (t2, k2) == start {
                break;
            }
            out.push((t2, k2));
            t = t2;
            k = k2;
            if out.len() > 3 * self.sides.len() {
                break;
            }
        }
        out
    }

    /// Arc-ends at a puncture, in cyclic order: one label per corner.
    pub fn arc_ends_at(&self, p: usize) -> Vec<usize> {
        self.corners_around(p)
            .into_iter()
            .map(|(t, k)| self.sides[t][ccw_next(k)])
            .collect()
    }

    /// `e_p`: the number of arc-ends at the puncture `p`, loops counted twice.
    pub fn puncture_degree(&self, p: &str) -> Result<usize, SurfaceError> {
        let id = self
            .point_id(p)
            .filter(|&i| self.is_puncture(i))
            .ok_or_else(|| SurfaceError::NotAPuncture(p.to_string()))?;
        Ok(self.corners_around(id).len())
    }

    /// True when `p` is the puncture inside a self-folded triangle.
    pub fn is_self_folded_puncture(&self, p: usize) -> bool {
        (0..self.sides.len()).any(|t| self.is_self_folded(t) && self.corner_point[t][0] == p)
    }

    /// `τ_{[γ_j]}`: the third side for an ordinary triangle, the radius for a
    /// self-folded one.
    pub fn third_arc(&self, a: &str, b: &str, t: usize) -> Result<String, SurfaceError> {
        let ia = self.label_id(a).ok_or_else(|| SurfaceError::UnknownLabel(a.into()))?;
        let ib = self.label_id(b).ok_or_else(|| SurfaceError::UnknownLabel(b.into()))?;
        let s = &self.sides[t];
        if !s.contains(&ia) {
            return Err(SurfaceError::NotASide(a.into(), t));
        }
        if !s.contains(&ib) {
            return Err(SurfaceError::NotASide(b.into(), t));
        }
        if self.is_self_folded(t) {
            return Ok(self.labels[s[1]].clone());
        }
        let sa = (0..3).find(|&k| s[k] == ia).unwrap();
        let sb = (0..3).find(|&k| s[k] == ib && k != sa).unwrap_or(sa);
        Ok(self.labels[s[third_slot(sa, sb)]].clone())
    }

    /// The signed adjacency matrix `B_T`, indexed by internal arcs.
    ///
    /// Each ordinary triangle contributes `+1` at `(i, j)` and `-1` at `(j, i)`
    /// when side `j` follows side `i` clockwise; a radius uses the row and
    /// column of its enclosing loop.
    pub fn signed_adjacency(&self) -> Vec<Vec<i64>> {
        let n = self.n_arcs;
        let mut b = vec![vec![0i64; n]; n];
        let pi = |i: usize| self.radius_loop.get(&i).copied().unwrap_or(i);
        for (t, s) in self.sides.iter().enumerate() {
            if self.is_self_folded(t) {
                continue;
            }
            for k in 0..3 {
                let (a, c) = (s[k], s[cw_next(k)]);
                if a >= n || c >= n {
                    continue;
                }
                for i in 0..n {
                    if pi(i) != a {
                        continue;
                    }
                    for j in 0..n {
                        if pi(j) == c {
                            b[i][j] += 1;
                            b[j][i] -= 1;
                        }
                    }
                }
            }
        }
        b
    }

    /// Rows for the boundary segments under the same rule as
    /// `signed_adjacency`, one per boundary label. Stacked below `B_T` they
    /// give the boundary-coefficient system with frozen variables `x_b`.
    pub fn boundary_rows(&self) -> Vec<Vec<i64>> {
        let n = self.n_arcs;
        let mut rows = vec![vec![0i64; n]; self.labels.len() - n];
        let pi = |i: usize| self.radius_loop.get(&i).copied().unwrap_or(i);
        for (t, s) in self.sides.iter().enumerate() {
            if self.is_self_folded(t) {
                continue;
            }
            for k in 0..3 {
                let (a, c) = (s[k], s[cw_next(k)]);
                for j in 0..n {
                    if a >= n && c < n && pi(j) == c {
                        rows[a - n][j] += 1;
                    }
                    if c >= n && a < n && pi(j) == a {
                        rows[c - n][j] -= 1;
                    }
                }
            }
        }
        rows
    }

    /// Euler characteristic `V - E + F` of the cell structure.
    pub fn euler_characteristic(&self) -> i64 {
        self.points.len() as i64 - self.labels.len() as i64 + self.sides.len() as i64
    }

    /// Number of boundary components found from the gluing.
    pub fn boundary_component_count(&self) -> usize {
        let mut uf = UnionFind((0..self.points.len()).collect());
        let mut on_boundary = vec![false; self.points.len()];
        for t in 0..self.sides.len() {
            for s in 0..3 {
                if self.sides[t][s] >= self.n_arcs {
                    let (a, b) = self.side_endpoints(t, s);
                    uf.union(a, b);
                    on_boundary[a] = true;
                    on_boundary[b] = true;
                }
            }
        }
        let mut roots = std::collections::BTreeSet::new();
        for p in 0..self.points.len() {
            if on_boundary[p] {
                roots.insert(uf.find(p));
            }
        }
        roots.len()
    }

    /// Cluster-variable weight of a side label: 1 for boundary segments,
    /// `x_r·x_ℓ` for a loop `ℓ` around the radius `r`, `x_τ` otherwise.
    pub fn x_weight(&self, id: usize) -> Monomial {
        if self.is_boundary(id) {
            return Monomial::one();
        }
        let v = Monomial::var(Var::x(&self.labels[id]));
        match self.radius_of_loop(id) {
            Some(r) => v.mul(&Monomial::var(Var::x(&self.labels[r]))),
            None => v,
        }
    }

    /// `Φ(h_τ)`: `y_ℓ` for a loop, `y_r / y_ℓ` for a radius, `y_τ` otherwise.
    pub fn phi(&self, id: usize) -> Monomial {
        let v = Monomial::var(Var::y(&self.labels[id]));
        match self.loop_of_radius(id) {
            Some(l) => v.div(&Monomial::var(Var::y(&self.labels[l]))),
            None => v,
        }
    }

    /// `∏ y_τ^{e_p(τ)}` over the arcs of `T` at the puncture `p`, computed as
    /// the product of `Φ(h_τ)` over the arc-ends at `p`.
    pub fn puncture_y_monomial(&self, p: usize) -> Monomial {
        self.arc_ends_at(p)
            .into_iter()
            .fold(Monomial::one(), |m, id| m.mul(&self.phi(id)))
    }

    /// The initial cluster variable of an internal arc as a polynomial.
    pub fn x_var(&self, id: usize) -> Laurent {
        Laurent::var(Var::x(&self.labels[id]))
    }
}

/// Stacks `B` on top of the identity matrix.
pub fn extended_principal(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out: Vec<Vec<i64>> = b.to_vec();
    for i in 0..n {
        out.push((0..n).map(|j| i64::from(i == j)).collect());
    }
    out
}

/// Every violated invariant of the triangulation; empty when valid.
pub fn validate_surface(t: &Triangulation) -> Vec<String> {
    let mut v = Vec::new();
    let top = t.topology;
    let (g, b, p, c) = (
        top.genus as i64,
        top.boundary_components as i64,
        top.punctures as i64,
        top.marked_boundary as i64,
    );
    let n = t.n() as i64;
    if n != 6 * g + 3 * b + 3 * p + c - 6 {
        v.push(format!(
            "arc count {n} differs from 6g+3b+3p+c-6 = {}",
            6 * g + 3 * b + 3 * p + c - 6
        ));
    }
    let f = t.num_triangles() as i64;
    if f != 4 * g + 2 * b + 2 * p + c - 4 {
        v.push(format!(
            "triangle count {f} differs from 4g+2b+2p+c-4 = {}",
            4 * g + 2 * b + 2 * p + c - 4
        ));
    }
    let actual_p = t.points.iter().filter(|q| q.interior).count() as i64;
    let actual_c = t.points.len() as i64 - actual_p;
    if actual_p != p || t.punctures.len() as i64 != p {
        v.push(format!(
            "topology declares {p} punctures, triangulation has {actual_p}, list has {}",
            t.punctures.len()
        ));
    }
    if actual_c != c {
        v.push(format!("topology declares {c} boundary marked points, triangulation has {actual_c}"));
    }
    if t.boundary_labels().len() as i64 != c {
        v.push(format!(
            "{c} boundary marked points need {c} boundary segments, found {}",
            t.boundary_labels().len()
        ));
    }
    let actual_b = t.boundary_component_count() as i64;
    if actual_b != b {
        v.push(format!("topology declares {b} boundary components, gluing gives {actual_b}"));
    }
    let chi = 2 - 2 * g - b;
    if t.euler_characteristic() != chi {
        v.push(format!(
            "Euler characteristic {} differs from 2-2g-b = {chi}",
            t.euler_characteristic()
        ));
    }
    let forbidden = (g == 0 && b == 0 && p <= 3)
        || (g == 0 && b == 1 && c == 1 && p <= 1)
        || (g == 0 && b == 1 && p == 0 && (c == 2 || c == 3));
    if forbidden {
        v.push("forbidden surface".to_string());
    }
    v
}

/// One visit of a path to a triangle. The first visit has no entry (the path
/// starts at the corner opposite its exit), the last has no exit (the path
/// ends at the corner opposite its entry).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub tri: usize,
    pub enter: Option<usize>,
    pub exit: Option<usize>,
}

impl Visit {
    pub fn new(tri: usize, enter: Option<usize>, exit: Option<usize>) -> Visit {
        Visit { tri, enter, exit }
    }
}

/// An arc given by its sequence of triangle visits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossingPath {
    pub visits: Vec<Visit>,
}

impl CrossingPath {
    pub fn new(visits: Vec<Visit>) -> CrossingPath {
        CrossingPath { visits }
    }

    /// Number of crossings `d`.
    pub fn crossings(&self) -> usize {
        self.visits.len().saturating_sub(1)
    }

    /// The same arc traversed backwards.
    pub fn reversed(&self) -> CrossingPath {
        CrossingPath {
            visits: self
                .visits
                .iter()
                .rev()
                .map(|v| Visit::new(v.tri, v.exit, v.enter))
                .collect(),
        }
    }

    /// Labels of the crossed arcs in order.
    pub fn crossed_labels(&self, t: &Triangulation) -> Vec<usize> {
        self.visits[..self.crossings()]
            .iter()
            .map(|v| t.side(v.tri, v.exit.expect("interior visit")))
            .collect()
    }

    pub fn start_point(&self, t: &Triangulation) -> usize {
        let v = self.visits[0];
        t.corner_point(v.tri, v.exit.expect("first visit exits"))
    }

    pub fn end_point(&self, t: &Triangulation) -> usize {
        let v = *self.visits.last().unwrap();
        t.corner_point(v.tri, v.enter.expect("last visit enters"))
    }
}

/// Every violated path invariant; empty when the path is valid.
pub fn validate_path(t: &Triangulation, path: &CrossingPath) -> Vec<String> {
    let mut v = Vec::new();
    let vs = &path.visits;
    if vs.len() < 2 {
        v.push("a path needs at least one crossing".into());
        return v;
    }
    let last = vs.len() - 1;
    for (j, x) in vs.iter().enumerate() {
        if x.tri >= t.num_triangles() {
            v.push(format!("step {j}: triangle {} out of range", x.tri));
            return v;
        }
        if x.enter.is_some_and(|s| s > 2) || x.exit.is_some_and(|s| s > 2) {
            v.push(format!("step {j}: slot out of range"));
            return v;
        }
        if (j == 0) != x.enter.is_none() || (j == last) != x.exit.is_none() {
            v.push(format!("step {j}: only the first step may lack an entry and only the last an exit"));
            return v;
        }
        if x.enter.is_some() && x.enter == x.exit {
            v.push(format!("step {j}: entry equals exit"));
        }
    }
    for j in 0..last {
        let (a, b) = (vs[j], vs[j + 1]);
        let out = a.exit.unwrap();
        if t.is_boundary(t.side(a.tri, out)) {
            v.push(format!("step {j}: crosses boundary segment `{}`", t.label(t.side(a.tri, out))));
            continue;
        }
        if t.twin(a.tri, out) != Some((b.tri, b.enter.unwrap())) {
            v.push(format!("step {j}: discontinuous (exit does not glue to the next entry)"));
        }
        if j + 1 < last && t.side(a.tri, out) == t.side(b.tri, b.exit.unwrap()) {
            v.push(format!("step {j}: crosses `{}` twice in a row", t.label(t.side(a.tri, out))));
        }
    }
    for (j, x) in vs.iter().enumerate() {
        if !t.is_self_folded(x.tri) {
            continue;
        }
        let ok = matches!(
            (x.enter, x.exit),
            (None, Some(0)) | (Some(0), None) | (Some(0), Some(1)) | (Some(0), Some(2))
                | (Some(1), Some(0)) | (Some(2), Some(0))
        );
        if !ok {
            v.push(format!("step {j}: self-folded pattern violated"));
        }
    }
    v
}

/// The underlying arc of a tagged arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcBase {
    /// An arc of the triangulation, oriented from `from` when given.
    Initial { arc: usize, from: Option<usize> },
    /// An arc given by its crossing sequence.
    Path(CrossingPath),
}

/// A tagged arc: an underlying arc with a plain or notched tag at each end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedArc {
    pub base: ArcBase,
    pub notch_start: bool,
    pub notch_end: bool,
}

impl TaggedArc {
    pub fn plain(base: ArcBase) -> TaggedArc {
        TaggedArc {
            base,
            notch_start: false,
            notch_end: false,
        }
    }

    /// Start and end marked points.
    pub fn endpoints(&self, t: &Triangulation) -> (usize, usize) {
        match &self.base {
            ArcBase::Path(p) => (p.start_point(t), p.end_point(t)),
            ArcBase::Initial { arc, from } => initial_endpoints(t, *arc, *from),
        }
    }
}

/// Endpoints of an arc of the triangulation, starting at `from` if it is one
/// of them.
pub fn initial_endpoints(t: &Triangulation, arc: usize, from: Option<usize>) -> (usize, usize) {
    let (tri, s) = (0..t.num_triangles())
        .flat_map(|tri| (0..3).map(move |s| (tri, s)))
        .find(|&(tri, s)| t.side(tri, s) == arc)
        .expect("arc occurs in some triangle");
    let (a, b) = t.side_endpoints(tri, s);
    match from {
        Some(f) if f == b => (b, a),
        _ => (a, b),
    }
}
