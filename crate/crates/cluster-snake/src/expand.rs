//! Cluster expansions of plain, singly-notched and doubly-notched arcs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::cli::Orientation;
use crate::matchings::{
    compatible_pairs, end_restriction, enumerate_matchings, is_gamma_symmetric, height_exponents,
    matching_weight, minimal_maximal, phi_specialize, Matching, MatchingError,
};
use crate::poly::{Laurent, Monomial, PolyError, Var, VarKind};
use crate::snake::{build_loop_graph, build_snake, EdgeId, LoopGraph, SnakeError, SnakeGraph};
use crate::surface::{
    ccw_next, cw_next, ArcBase, CrossingPath, TaggedArc, Triangulation, Visit,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error(transparent)]
    Snake(#[from] SnakeError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("marked point `{0}` is not a puncture")]
    EndpointNotPuncture(String),
    #[error("doubly-notched arcs are not defined on a closed surface with two marked points")]
    ForbiddenSurface,
    #[error("a loop with a single notch needs an orientation")]
    MissingOrientation,
    #[error("expansion is not homogeneous: {0:?} and {1:?}")]
    InhomogeneousExpansion(Vec<i64>, Vec<i64>),
    #[error("unsupported arc: {0}")]
    Unsupported(String),
}

/// A Laurent expansion together with its unreduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    /// The cluster variable as a Laurent polynomial.
    pub poly: Laurent,
    /// Numerator and crossing monomial with `poly = numerator / crossing`.
    pub numerator: Laurent,
    pub crossing: Monomial,
    /// Number of matchings, or of compatible pairs, summed over.
    pub matchings_used: usize,
    /// Specialized height monomial of each summand; empty for closed forms.
    pub heights: Vec<Monomial>,
}

impl Expansion {
    fn from_sum(numerator: Laurent, crossing: Monomial, heights: Vec<Monomial>) -> Expansion {
        Expansion {
            poly: numerator.mul_monomial(&crossing.inv()),
            matchings_used: heights.len(),
            numerator,
            crossing,
            heights,
        }
    }

    /// Wraps a closed-form result; the crossing monomial is the smallest one
    /// clearing all negative exponents.
    pub fn from_poly(poly: Laurent) -> Expansion {
        let mut den: BTreeMap<Var, i64> = BTreeMap::new();
        for (m, _) in poly.terms() {
            for (v, e) in m.factors() {
                if *e < 0 {
                    let d = den.entry(v.clone()).or_default();
                    *d = (*d).max(-e);
                }
            }
        }
        let crossing = Monomial::from_pairs(den);
        Expansion {
            numerator: poly.mul_monomial(&crossing),
            matchings_used: poly.coefficient_sum().to_usize().unwrap_or(usize::MAX),
            poly,
            crossing,
            heights: Vec::new(),
        }
    }

    /// `(numerator) / (crossing)`, or the numerator alone when nothing
    /// divides. With `reduce`, common monomial factors are cancelled first.
    pub fn render(&self, reduce: bool) -> String {
        let (num, den) = if reduce {
            let e = Expansion::from_poly(self.poly.clone());
            (e.numerator, e.crossing)
        } else {
            (self.numerator.clone(), self.crossing.clone())
        };
        if den.is_one() {
            num.canonical_text()
        } else {
            format!("({}) / ({})", num.canonical_text(), den.text())
        }
    }
}

/// The crossing monomial of a path, times `∏ x_τ` over the arc-ends at
/// each notched endpoint.
pub fn crossing_monomial(
    t: &Triangulation,
    gamma: &CrossingPath,
    notch_start: bool,
    notch_end: bool,
) -> Result<Monomial, ExpandError> {
    let mut m = gamma
        .crossed_labels(t)
        .into_iter()
        .fold(Monomial::one(), |acc, id| acc.mul(&t.x_weight(id)));
    for (notched, p) in [(notch_start, gamma.start_point(t)), (notch_end, gamma.end_point(t))] {
        if notched {
            m = m.mul(&ends_monomial(t, p)?);
        }
    }
    Ok(m)
}

fn ends_monomial(t: &Triangulation, p: usize) -> Result<Monomial, ExpandError> {
    if !t.is_puncture(p) {
        return Err(ExpandError::EndpointNotPuncture(t.point_name(p).into()));
    }
    Ok(t.arc_ends_at(p)
        .into_iter()
        .fold(Monomial::one(), |acc, id| acc.mul(&t.x_weight(id))))
}

/// Snake graph with its matchings, `P₋`, weights and specialized heights.
struct Weighted {
    graph: SnakeGraph,
    all: Vec<Matching>,
    x: Vec<Monomial>,
    y: Vec<Monomial>,
}

fn weighted(t: &Triangulation, graph: SnakeGraph) -> Result<Weighted, ExpandError> {
    weighted_where(t, graph, |_| true)
}

/// Like `weighted`, keeping only the matchings accepted by `keep`.
fn weighted_where<F: Fn(&Matching) -> bool>(t: &Triangulation, graph: SnakeGraph, keep: F) -> Result<Weighted, ExpandError> {
    let mut all = enumerate_matchings(&graph);
    let (lo, _) = minimal_maximal(&graph, &all)?;
    let pminus = all[lo].clone();
    all.retain(|m| keep(m));
    let mut x = Vec::with_capacity(all.len());
    let mut y = Vec::with_capacity(all.len());
    for p in &all {
        x.push(matching_weight(t, &graph, p));
        y.push(phi_specialize(t, &height_exponents(&graph, &pminus, p)?));
    }
    Ok(Weighted { graph, all, x, y })
}

impl Weighted {
    fn lookup(&self, edges: &[EdgeId]) -> Option<usize> {
        let mut idx: Vec<usize> = edges.iter().map(|&id| self.graph.edge_index(id)).collect::<Option<_>>()?;
        idx.sort();
        self.all.binary_search(&Matching { edges: idx }).ok()
    }
}

/// Sum over all perfect matchings of the snake graph.
pub fn expand_ordinary(t: &Triangulation, gamma: &CrossingPath) -> Result<Expansion, ExpandError> {
    let w = weighted(t, build_snake(t, gamma, 1)?)?;
    let mut num = Laurent::zero();
    for (x, y) in w.x.iter().zip(&w.y) {
        num.add_term(x.mul(y), BigInt::one());
    }
    Ok(Expansion::from_sum(num, crossing_monomial(t, gamma, false, false)?, w.y))
}

/// An initial cluster variable. The ideal loop of a self-folded triangle
/// expands to `x_r·x_ℓ`.
pub fn expand_initial(t: &Triangulation, arc: usize) -> Expansion {
    let m = t.x_weight(arc);
    Expansion {
        poly: Laurent::monomial(m.clone()),
        numerator: Laurent::monomial(m),
        crossing: Monomial::one(),
        matchings_used: 1,
        heights: vec![Monomial::one()],
    }
}

/// γ-symmetric matchings of `G_{ℓ_p}` with their restrictions to `G_γ`.
struct Symmetric {
    loop_graph: LoopGraph,
    weighted: Weighted,
    kept: Vec<usize>,
    restriction: Vec<Vec<EdgeId>>,
}

fn symmetric(t: &Triangulation, gamma: &CrossingPath) -> Result<Symmetric, ExpandError> {
    let lg = build_loop_graph(t, gamma, 1)?;
    let w = weighted_where(t, lg.graph.clone(), |m| is_gamma_symmetric(&lg, m))?;
    let kept: Vec<usize> = (0..w.all.len()).collect();
    let mut restriction = Vec::with_capacity(kept.len());
    for &i in &kept {
        restriction.push(end_restriction(&lg, &w.all[i]).ok_or(MatchingError::NotAMatching)?);
    }
    Ok(Symmetric {
        loop_graph: lg,
        weighted: w,
        kept,
        restriction,
    })
}

/// `γ` notched at its end, for `γ` not in the triangulation: the sum of
/// `x̄(P)·ȳ(P)` over γ-symmetric matchings of the loop graph.
pub fn expand_single_notch(t: &Triangulation, gamma: &CrossingPath) -> Result<Expansion, ExpandError> {
    let base = weighted(t, build_snake(t, gamma, 1)?)?;
    let s = symmetric(t, gamma)?;
    let mut num = Laurent::zero();
    let mut heights = Vec::with_capacity(s.kept.len());
    for (k, &i) in s.kept.iter().enumerate() {
        let r = base.lookup(&s.restriction[k]).ok_or(MatchingError::NotAMatching)?;
        let x = s.weighted.x[i].div(&base.x[r]);
        let y = s.weighted.y[i].div(&base.y[r]);
        num.add_term(x.mul(&y), BigInt::one());
        heights.push(y);
    }
    Ok(Expansion::from_sum(num, crossing_monomial(t, gamma, false, true)?, heights))
}

/// `γ` notched at both ends, for `γ` not in the triangulation: the sum over
/// γ-compatible pairs.
pub fn expand_double_notch(t: &Triangulation, gamma: &CrossingPath) -> Result<Expansion, ExpandError> {
    let top = t.topology();
    if top.boundary_components == 0 && top.punctures == 2 {
        return Err(ExpandError::ForbiddenSurface);
    }
    let base = weighted(t, build_snake(t, gamma, 1)?)?;
    let sp = symmetric(t, gamma)?;
    let sq = symmetric(t, &gamma.reversed())?;
    let mp: Vec<Matching> = sp.kept.iter().map(|&i| sp.weighted.all[i].clone()).collect();
    let mq: Vec<Matching> = sq.kept.iter().map(|&i| sq.weighted.all[i].clone()).collect();
    let pairs = compatible_pairs(&sp.loop_graph, &mp, &sq.loop_graph, &mq);
    let mut num = Laurent::zero();
    let mut heights = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let r = base.lookup(&sp.restriction[a]).ok_or(MatchingError::NotAMatching)?;
        let (ia, ib) = (sp.kept[a], sq.kept[b]);
        let x = sp.weighted.x[ia].mul(&sq.weighted.x[ib]).div(&base.x[r].pow(3));
        let y = sp.weighted.y[ia].mul(&sq.weighted.y[ib]).div(&base.y[r].pow(3));
        num.add_term(x.mul(&y), BigInt::one());
        heights.push(y);
    }
    Ok(Expansion::from_sum(num, crossing_monomial(t, gamma, true, true)?, heights))
}

/// Notched loop elements. One notch: the γ-symmetric sum for the loop
/// traversed as listed (`ccw`) or reversed (`cw`), notched at its final end.
/// Two notches: the γ-compatible pair sum.
pub fn expand_notched_loop(
    t: &Triangulation,
    rho: &CrossingPath,
    notches: u8,
    orientation: Option<Orientation>,
) -> Result<Expansion, ExpandError> {
    if rho.start_point(t) != rho.end_point(t) {
        return Err(ExpandError::Unsupported("not a loop".into()));
    }
    match notches {
        1 => {
            let path = match orientation.ok_or(ExpandError::MissingOrientation)? {
                Orientation::Ccw => rho.clone(),
                Orientation::Cw => rho.reversed(),
            };
            expand_single_notch(t, &path)
        }
        2 => expand_double_notch(t, rho),
        _ => Err(ExpandError::Unsupported(format!("{notches} notches on a loop"))),
    }
}

/// The loop based at the far endpoint of the initial arc `arc` that goes
/// once around its endpoint `p`, crossing every other arc-end at `p`.
/// `None` when `arc` is the only arc at `p`.
pub fn monogon_loop_path(t: &Triangulation, arc: usize, p: usize) -> Option<CrossingPath> {
    let (tri, s) = (0..t.num_triangles())
        .flat_map(|tri| (0..3).map(move |s| (tri, s)))
        .find(|&(tri, s)| t.side(tri, s) == arc && t.corner_point(tri, ccw_next(s)) == p)?;
    let kp = ccw_next(s);
    let kv = cw_next(s);
    let stop = t.twin(tri, s)?;
    if t.twin(tri, kv) == Some((tri, s)) || (tri, kv) == stop {
        return None;
    }
    let mut visits = vec![Visit::new(tri, None, Some(kv))];
    let (mut cur, mut out, mut corner) = (tri, kv, kp);
    loop {
        let (t2, u, k2) = t.glue_corner(cur, out, corner)?;
        let ex = if ccw_next(k2) == u { cw_next(k2) } else { ccw_next(k2) };
        if (t2, ex) == stop {
            visits.push(Visit::new(t2, Some(u), None));
            return Some(CrossingPath::new(visits));
        }
        visits.push(Visit::new(t2, Some(u), Some(ex)));
        cur = t2;
        out = ex;
        corner = k2;
        if visits.len() > 3 * t.num_triangles() + 2 {
            return None;
        }
    }
}

/// Swaps each arc at a listed puncture with its tag-changed counterpart:
/// a radius with its loop variable, any other arc `τ` with `τ(p)`.
pub fn retag_expansion(t: &Triangulation, e: &Expansion, punctures: &[usize]) -> Expansion {
    let mut swap: BTreeMap<String, String> = BTreeMap::new();
    for &p in punctures {
        let mut ends = t.arc_ends_at(p);
        ends.sort();
        ends.dedup();
        for id in ends {
            let a = t.label(id).to_string();
            let b = match t.loop_of_radius(id) {
                Some(l) if t.is_self_folded_puncture(p) => t.label(l).to_string(),
                _ => format!("{a}({})", t.point_name(p)),
            };
            swap.insert(a.clone(), b.clone());
            swap.insert(b, a);
        }
    }
    let f = |v: &Var| match swap.get(v.name()) {
        Some(n) if v.kind() != VarKind::H => Var::new(v.kind(), n),
        _ => v.clone(),
    };
    let fm = |m: &Monomial| Monomial::from_pairs(m.factors().iter().map(|(v, k)| (f(v), *k)));
    Expansion {
        poly: e.poly.map_vars(f),
        numerator: e.numerator.map_vars(f),
        crossing: fm(&e.crossing),
        matchings_used: e.matchings_used,
        heights: e.heights.iter().map(fm).collect(),
    }
}

/// `z_p`: the sum over corners at `p` of the opposite side's weight divided
/// by the weights of the two sides at the corner.
pub fn z_factor(t: &Triangulation, p: usize) -> Result<Laurent, ExpandError> {
    if !t.is_puncture(p) {
        return Err(ExpandError::EndpointNotPuncture(t.point_name(p).into()));
    }
    let mut z = Laurent::zero();
    for (tri, k) in t.corners_around(p) {
        let m = t
            .x_weight(t.side(tri, k))
            .div(&t.x_weight(t.side(tri, ccw_next(k))).mul(&t.x_weight(t.side(tri, cw_next(k)))));
        z.add_term(m, BigInt::one());
    }
    Ok(z)
}

/// Expands a tagged arc, dispatching the special cases.
pub fn expand(t: &Triangulation, arc: &TaggedArc, orientation: Option<Orientation>) -> Result<Expansion, ExpandError> {
    let (a, b) = arc.endpoints(t);
    for (notched, p) in [(arc.notch_start, a), (arc.notch_end, b)] {
        if notched && !t.is_puncture(p) {
            return Err(ExpandError::EndpointNotPuncture(t.point_name(p).into()));
        }
    }
    // A notch at the puncture of a self-folded triangle is a tag change.
    let mut retag = Vec::new();
    let mut plain = arc.clone();
    if arc.notch_start && t.is_self_folded_puncture(a) {
        plain.notch_start = false;
        retag.push(a);
    }
    if arc.notch_end && t.is_self_folded_puncture(b) {
        plain.notch_end = false;
        if !retag.contains(&b) {
            retag.push(b);
        }
    }
    if !retag.is_empty() {
        let e = expand(t, &plain, orientation)?;
        return Ok(retag_expansion(t, &e, &retag));
    }

    match &arc.base {
        ArcBase::Path(path) => {
            if a == b && (arc.notch_start || arc.notch_end) {
                let n = u8::from(arc.notch_start) + u8::from(arc.notch_end);
                return expand_notched_loop(t, path, n, orientation);
            }
            match (arc.notch_start, arc.notch_end) {
                (false, false) => expand_ordinary(t, path),
                (false, true) => expand_single_notch(t, path),
                (true, false) => expand_single_notch(t, &path.reversed()),
                (true, true) => expand_double_notch(t, path),
            }
        }
        ArcBase::Initial { arc: id, .. } => {
            let id = *id;
            if a == b && (arc.notch_start || arc.notch_end) {
                return Err(ExpandError::Unsupported("notched loop of the triangulation".into()));
            }
            match (arc.notch_start, arc.notch_end) {
                (false, false) => Ok(expand_initial(t, id)),
                (true, false) => Ok(Expansion::from_poly(initial_single(t, id, a)?)),
                (false, true) => Ok(Expansion::from_poly(initial_single(t, id, b)?)),
                (true, true) => {
                    let top = t.topology();
                    if top.boundary_components == 0 && top.punctures == 2 {
                        return Err(ExpandError::ForbiddenSurface);
                    }
                    let xp = initial_single(t, id, a)?;
                    let xq = initial_single(t, id, b)?;
                    let yg = Laurent::monomial(t.phi(id));
                    let one = Laurent::one();
                    let fp = &one - &Laurent::monomial(t.puncture_y_monomial(a));
                    let fq = &one - &Laurent::monomial(t.puncture_y_monomial(b));
                    let num = &(&(&xp * &xq) * &yg) + &(&fp * &fq);
                    Ok(Expansion::from_poly(num.div_exact(&t.x_var(id))?))
                }
            }
        }
    }
}

/// `x_{γ^(p)}` for an initial arc `γ`: the expansion of the loop around `p`
/// divided by `x_γ`.
fn initial_single(t: &Triangulation, id: usize, p: usize) -> Result<Laurent, ExpandError> {
    match monogon_loop_path(t, id, p) {
        Some(path) => Ok(expand_ordinary(t, &path)?.poly.div_exact(&t.x_var(id))?),
        None => match t.loop_of_radius(id) {
            Some(l) => Ok(t.x_var(l)),
            None => Err(ExpandError::Unsupported(format!("no loop around `{}`", t.point_name(p)))),
        },
    }
}

/// The F-polynomial: all `x` set to 1.
pub fn f_polynomial(e: &Expansion) -> Laurent {
    e.poly.set_kind_to_one(VarKind::X)
}

/// Degree vector of a monomial under `deg x_i = e_i`, `deg y_i = -B e_i`.
pub fn degree(t: &Triangulation, b: &[Vec<i64>], m: &Monomial) -> Result<Vec<i64>, ExpandError> {
    let n = t.n();
    let mut d = vec![0i64; n];
    for (v, k) in m.factors() {
        let i = t
            .label_id(v.name())
            .filter(|&i| i < n)
            .ok_or_else(|| ExpandError::Unsupported(format!("variable {v} is not an initial arc")))?;
        match v.kind() {
            VarKind::X => d[i] += k,
            VarKind::Y => {
                for (r, row) in b.iter().enumerate() {
                    d[r] -= k * row[i];
                }
            }
            VarKind::H => return Err(ExpandError::Unsupported("unspecialized height variable".into())),
        }
    }
    Ok(d)
}

/// The g-vector: the common degree of all terms, which must agree.
pub fn g_vector(t: &Triangulation, b: &[Vec<i64>], e: &Expansion) -> Result<Vec<i64>, ExpandError> {
    let mut common: Option<Vec<i64>> = None;
    for (m, _) in e.poly.terms() {
        let d = degree(t, b, m)?;
        match &common {
            None => common = Some(d),
            Some(c) if *c != d => return Err(ExpandError::InhomogeneousExpansion(c.clone(), d)),
            _ => {}
        }
    }
    common.ok_or_else(|| ExpandError::Unsupported("zero expansion".into()))
}

/// Exponent vector of a `y` monomial over the internal arcs.
fn y_vector(t: &Triangulation, m: &Monomial) -> Vec<i64> {
    let mut v = vec![0i64; t.n()];
    for (var, k) in m.factors() {
        if var.kind() == VarKind::Y {
            if let Some(i) = t.label_id(var.name()).filter(|&i| i < t.n()) {
                v[i] += k;
            }
        }
    }
    v
}

/// Counts of summands by dimension vector of their height monomial. Closed
/// forms fall back to the coefficients of the F-polynomial.
pub fn euler_table(t: &Triangulation, e: &Expansion) -> BTreeMap<Vec<i64>, u64> {
    let mut table = BTreeMap::new();
    if e.heights.is_empty() {
        for (m, c) in f_polynomial(e).terms() {
            if c.is_positive() {
                table.insert(y_vector(t, m), c.to_u64().unwrap_or(u64::MAX));
            }
        }
    } else {
        for h in &e.heights {
            *table.entry(y_vector(t, h)).or_default() += 1;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn square_diagonal() {
        let t = fixtures::square();
        let p = CrossingPath::new(vec![Visit::new(0, None, Some(2)), Visit::new(1, Some(2), None)]);
        let e = expand_ordinary(&t, &p).unwrap();
        assert_eq!(e.render(false), "(1 + y_d) / (x_d)");
        assert_eq!(f_polynomial(&e).canonical_text(), "1 + y_d");
        let b = t.signed_adjacency();
        assert_eq!(g_vector(&t, &b, &e).unwrap(), vec![-1]);
        let table = euler_table(&t, &e);
        assert_eq!(table.get(&vec![0]), Some(&1));
        assert_eq!(table.get(&vec![1]), Some(&1));
        assert_eq!(g_vector(&t, &b, &expand_initial(&t, 0)).unwrap(), vec![1]);
    }

    #[test]
    fn digon_notched_radius_is_loop_variable() {
        let t = fixtures::digon();
        let r = t.label_id("r").unwrap();
        let arc = TaggedArc {
            base: ArcBase::Initial { arc: r, from: None },
            notch_start: false,
            notch_end: true,
        };
        let (_, end) = arc.endpoints(&t);
        assert!(t.is_puncture(end));
        let e = expand(&t, &arc, None).unwrap();
        assert_eq!(e.poly.canonical_text(), "x_l");
        assert_eq!(z_factor(&t, end).unwrap().canonical_text(), "x_l*x_r^-1");
    }

    #[test]
    fn retag_is_an_involution() {
        let t = fixtures::digon();
        let p = t.point_id("p").unwrap();
        let e = expand_ordinary(&t, &fixtures::digon_radius_path()).unwrap();
        let once = retag_expansion(&t, &e, &[p]);
        assert_ne!(once, e);
        assert_eq!(retag_expansion(&t, &once, &[p]), e);
    }
}
