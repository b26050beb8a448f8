//! File formats and the command-line driver.
//!
//! Surfaces and arcs are JSON documents with a `version` field; unknown
//! fields are rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{
    validate_path, validate_surface, ArcBase, CrossingPath, SurfaceError, TaggedArc, Topology, Triangle, Triangulation,
    Visit,
};

pub const FORMAT_VERSION: u32 = 1;

/// Driver errors, each mapped to a distinct exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("computation error: {0}")]
    Computation(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Computation(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::UnknownLabel(_) | SurfaceError::InvalidLabel(_) | SurfaceError::DuplicateLabel(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Validation(vec![e.to_string()]),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    version: u32,
    topology: Topology,
    arcs: Vec<String>,
    boundary: Vec<String>,
    #[serde(default)]
    punctures: Vec<String>,
    triangles: Vec<TriangleSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sides: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    self_folded: Option<SelfFoldedSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SelfFoldedSpec {
    #[serde(rename = "loop")]
    loop_arc: String,
    radius: String,
    puncture: String,
}

fn json_error(what: &str, e: serde_json::Error) -> CliError {
    CliError::Parse(format!("{what}: line {} column {}: {e}", e.line(), e.column()))
}

/// Parses a surface file and validates the triangulation.
pub fn parse_surface(text: &str) -> Result<Triangulation, CliError> {
    let f: SurfaceFile = serde_json::from_str(text).map_err(|e| json_error("surface", e))?;
    if f.version != FORMAT_VERSION {
        return Err(CliError::Parse(format!("surface: unsupported version {}", f.version)));
    }
    let mut triangles = Vec::with_capacity(f.triangles.len());
    for (i, t) in f.triangles.into_iter().enumerate() {
        triangles.push(match (t.sides, t.self_folded) {
            (Some(sides), None) => Triangle::Ordinary {
                sides,
                vertices: t.vertices,
            },
            (None, Some(sf)) if t.vertices.is_none() => Triangle::SelfFolded {
                loop_arc: sf.loop_arc,
                radius: sf.radius,
                puncture: sf.puncture,
            },
            _ => {
                return Err(CliError::Parse(format!(
                    "surface: triangles[{i}] needs either `sides` (with optional `vertices`) or `self_folded`"
                )))
            }
        });
    }
    let t = Triangulation::new(f.topology, f.arcs, f.boundary, f.punctures, triangles)?;
    let v = validate_surface(&t);
    if !v.is_empty() {
        return Err(CliError::Validation(v));
    }
    Ok(t)
}

/// Renders a triangulation in the surface file format.
pub fn render_surface(t: &Triangulation) -> String {
    let f = SurfaceFile {
        version: FORMAT_VERSION,
        topology: t.topology(),
        arcs: t.arc_labels().to_vec(),
        boundary: t.boundary_labels().to_vec(),
        punctures: t.puncture_labels().to_vec(),
        triangles: t
            .triangles()
            .iter()
            .map(|tri| match tri {
                Triangle::Ordinary { sides, vertices } => TriangleSpec {
                    sides: Some(sides.clone()),
                    vertices: vertices.clone(),
                    self_folded: None,
                },
                Triangle::SelfFolded {
                    loop_arc,
                    radius,
                    puncture,
                } => TriangleSpec {
                    sides: None,
                    vertices: None,
                    self_folded: Some(SelfFoldedSpec {
                        loop_arc: loop_arc.clone(),
                        radius: radius.clone(),
                        puncture: puncture.clone(),
                    }),
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable") + "\n"
}

/// A side slot given by index or by the label of the side.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SlotRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndSpec {
    triangle: usize,
    /// The corner, named by its opposite side.
    vertex: SlotRef,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepSpec {
    triangle: usize,
    enter: SlotRef,
    exit: SlotRef,
}

/// Orientation of a loop: `ccw` traverses the path as listed, `cw` reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Cw,
    Ccw,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcFile {
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arc: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<EndSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    crossings: Vec<StepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<EndSpec>,
    #[serde(default)]
    notch_start: bool,
    #[serde(default)]
    notch_end: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientation: Option<Orientation>,
}

/// An arc read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedArc {
    pub arc: TaggedArc,
    pub orientation: Option<Orientation>,
}

fn resolve_slot(t: &Triangulation, tri: usize, s: &SlotRef, what: &str) -> Result<usize, CliError> {
    if tri >= t.num_triangles() {
        return Err(CliError::Validation(vec![format!("{what}: triangle {tri} out of range")]));
    }
    match s {
        SlotRef::Index(k) if *k < 3 => Ok(*k),
        SlotRef::Index(k) => Err(CliError::Validation(vec![format!("{what}: slot {k} out of range")])),
        SlotRef::Label(l) => {
            let id = t
                .label_id(l)
                .ok_or_else(|| CliError::Parse(format!("{what}: unknown label `{l}`")))?;
            let slots: Vec<usize> = (0..3).filter(|&k| t.side(tri, k) == id).collect();
            match slots.as_slice() {
                [k] => Ok(*k),
                [] => Err(CliError::Validation(vec![format!("{what}: `{l}` is not a side of triangle {tri}")])),
                _ => Err(CliError::Validation(vec![format!(
                    "{what}: `{l}` occurs twice in triangle {tri}; use a slot index"
                )])),
            }
        }
    }
}

/// Parses an arc file against a triangulation and validates it.
pub fn parse_arc(text: &str, t: &Triangulation) -> Result<ParsedArc, CliError> {
    let f: ArcFile = serde_json::from_str(text).map_err(|e| json_error("arc", e))?;
    if f.version != FORMAT_VERSION {
        return Err(CliError::Parse(format!("arc: unsupported version {}", f.version)));
    }
    let base = match (&f.arc, &f.start, &f.end) {
        (Some(label), None, None) if f.crossings.is_empty() => {
            let id = t
                .label_id(label)
                .filter(|&i| !t.is_boundary(i))
                .ok_or_else(|| CliError::Parse(format!("arc: `{label}` is not an internal arc")))?;
            let from = match &f.from {
                Some(p) => Some(t.point_id(p).ok_or_else(|| CliError::Parse(format!("arc: unknown point `{p}`")))?),
                None => None,
            };
            if let Some(p) = from {
                let (a, b) = crate::surface::initial_endpoints(t, id, None);
                if p != a && p != b {
                    return Err(CliError::Validation(vec![format!(
                        "arc: `{label}` does not end at `{}`",
                        t.point_name(p)
                    )]));
                }
            }
            ArcBase::Initial { arc: id, from }
        }
        (None, Some(s), Some(e)) if f.from.is_none() => {
            let mut visits = vec![Visit::new(s.triangle, None, Some(resolve_slot(t, s.triangle, &s.vertex, "start")?))];
            for (i, st) in f.crossings.iter().enumerate() {
                let what = format!("crossings[{i}]");
                visits.push(Visit::new(
                    st.triangle,
                    Some(resolve_slot(t, st.triangle, &st.enter, &what)?),
                    Some(resolve_slot(t, st.triangle, &st.exit, &what)?),
                ));
            }
            visits.push(Visit::new(e.triangle, Some(resolve_slot(t, e.triangle, &e.vertex, "end")?), None));
            let path = CrossingPath::new(visits);
            let v = validate_path(t, &path);
            if !v.is_empty() {
                return Err(CliError::Validation(v));
            }
            ArcBase::Path(path)
        }
        _ => {
            return Err(CliError::Parse(
                "arc: give either `arc` (with optional `from`) or `start`, `crossings` and `end`".into(),
            ))
        }
    };
    let arc = TaggedArc {
        base,
        notch_start: f.notch_start,
        notch_end: f.notch_end,
    };
    let (a, b) = arc.endpoints(t);
    let mut v = Vec::new();
    if arc.notch_start && !t.is_puncture(a) {
        v.push(format!("notch at start `{}`, which is not a puncture", t.point_name(a)));
    }
    if arc.notch_end && !t.is_puncture(b) {
        v.push(format!("notch at end `{}`, which is not a puncture", t.point_name(b)));
    }
    if !v.is_empty() {
        return Err(CliError::Validation(v));
    }
    Ok(ParsedArc {
        arc,
        orientation: f.orientation,
    })
}

/// Renders an arc in the arc file format.
pub fn render_arc(t: &Triangulation, a: &ParsedArc) -> String {
    let mut f = ArcFile {
        version: FORMAT_VERSION,
        arc: None,
        from: None,
        start: None,
        crossings: Vec::new(),
        end: None,
        notch_start: a.arc.notch_start,
        notch_end: a.arc.notch_end,
        orientation: a.orientation,
    };
    match &a.arc.base {
        ArcBase::Initial { arc, from } => {
            f.arc = Some(t.label(*arc).to_string());
            f.from = from.map(|p| t.point_name(p).to_string());
        }
        ArcBase::Path(p) => {
            let vs = &p.visits;
            let first = vs[0];
            let last = vs[vs.len() - 1];
            f.start = Some(EndSpec {
                triangle: first.tri,
                vertex: SlotRef::Index(first.exit.unwrap()),
            });
            f.end = Some(EndSpec {
                triangle: last.tri,
                vertex: SlotRef::Index(last.enter.unwrap()),
            });
            f.crossings = vs[1..vs.len() - 1]
                .iter()
                .map(|v| StepSpec {
                    triangle: v.tri,
                    enter: SlotRef::Index(v.enter.unwrap()),
                    exit: SlotRef::Index(v.exit.unwrap()),
                })
                .collect();
        }
    }
    serde_json::to_string_pretty(&f).expect("serializable") + "\n"
}

/// Command-line arguments.
#[derive(clap::Parser, Debug)]
#[command(name = "cluster-snake", version, about = "Laurent expansions of cluster variables from snake graphs")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Subcommand, Debug)]
pub enum Command {
    /// Laurent expansion of an arc.
    Expand(JobOpts),
    /// F-polynomial of an arc.
    Fpoly(JobOpts),
    /// g-vector of an arc, in the order of the surface's arc list.
    Gvector(JobOpts),
    /// Perfect matchings used by the expansion, one per line.
    Matchings(JobOpts),
    /// Tiles and glueing of the snake graph (or loop graph).
    Snake(JobOpts),
    /// Mutation of a seed along a sequence of 1-based indices or labels.
    Mutate(JobOpts),
    /// Compares expansions with the mutation oracle over a bundle.
    Verify(JobOpts),
}

#[derive(clap::Args, Debug, Default)]
pub struct JobOpts {
    #[arg(long)]
    pub surface: Option<std::path::PathBuf>,
    #[arg(long)]
    pub arc: Option<std::path::PathBuf>,
    #[arg(long)]
    pub seed: Option<std::path::PathBuf>,
    #[arg(long)]
    pub bundle: Option<std::path::PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub sequence: Vec<String>,
    /// Punctures at which to notch the arc's ends.
    #[arg(long, value_delimiter = ',')]
    pub notch: Vec<String>,
    #[arg(long, value_enum)]
    pub orientation: Option<Orientation>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub dot: bool,
}

/// Result of a run: exit code and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&args.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err((stdout, e)) => Outcome {
            code: e.exit_code(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

type Failure = (String, CliError);

fn fail(e: CliError) -> Failure {
    (String::new(), e)
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_surface(o: &JobOpts) -> Result<Triangulation, CliError> {
    let p = o.surface.as_ref().ok_or_else(|| CliError::Parse("--surface is required".into()))?;
    parse_surface(&read(p)?)
}

fn load_arc(o: &JobOpts, t: &Triangulation) -> Result<ParsedArc, CliError> {
    let p = o.arc.as_ref().ok_or_else(|| CliError::Parse("--arc is required".into()))?;
    let mut a = parse_arc(&read(p)?, t)?;
    apply_notches(t, &mut a, &o.notch)?;
    if o.orientation.is_some() {
        a.orientation = o.orientation;
    }
    Ok(a)
}

/// Notches the ends at the named punctures, each name taking one end.
fn apply_notches(t: &Triangulation, a: &mut ParsedArc, names: &[String]) -> Result<(), CliError> {
    let (s, e) = a.arc.endpoints(t);
    let mut taken = [false, false];
    for name in names {
        let p = t
            .point_id(name)
            .ok_or_else(|| CliError::Parse(format!("--notch: unknown point `{name}`")))?;
        if !t.is_puncture(p) {
            return Err(CliError::Validation(vec![format!("--notch: `{name}` is not a puncture")]));
        }
        if !taken[0] && s == p {
            taken[0] = true;
            a.arc.notch_start = true;
        } else if !taken[1] && e == p {
            taken[1] = true;
            a.arc.notch_end = true;
        } else {
            return Err(CliError::Validation(vec![format!("--notch: the arc has no free end at `{name}`")]));
        }
    }
    Ok(())
}

fn computation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Computation(e.to_string())
}

fn laurent_json(p: &crate::poly::Laurent) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(m, c)| {
            let exps: serde_json::Map<String, serde_json::Value> =
                m.factors().iter().map(|(v, k)| (v.to_string(), (*k).into())).collect();
            serde_json::json!({ "coefficient": c.to_string(), "exponents": exps })
        })
        .collect();
    serde_json::Value::Array(terms)
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn execute(cmd: &Command) -> Result<String, Failure> {
    use crate::expand;
    match cmd {
        Command::Expand(o) => {
            let t = load_surface(o).map_err(fail)?;
            let a = load_arc(o, &t).map_err(fail)?;
            let e = expand::expand(&t, &a.arc, a.orientation).map_err(|e| fail(computation(e)))?;
            let r = expand::Expansion::from_poly(e.poly.clone());
            Ok(if o.json {
                json_text(&serde_json::json!({
                    "text": e.render(true),
                    "denominator": r.crossing.text(),
                    "numerator": laurent_json(&r.numerator),
                    "terms": laurent_json(&e.poly),
                }))
            } else {
                e.render(true) + "\n"
            })
        }
        Command::Fpoly(o) => {
            let t = load_surface(o).map_err(fail)?;
            let a = load_arc(o, &t).map_err(fail)?;
            let e = expand::expand(&t, &a.arc, a.orientation).map_err(|e| fail(computation(e)))?;
            let f = expand::f_polynomial(&e);
            Ok(if o.json {
                json_text(&serde_json::json!({ "text": f.canonical_text(), "terms": laurent_json(&f) }))
            } else {
                f.canonical_text() + "\n"
            })
        }
        Command::Gvector(o) => {
            let t = load_surface(o).map_err(fail)?;
            let a = load_arc(o, &t).map_err(fail)?;
            let e = expand::expand(&t, &a.arc, a.orientation).map_err(|e| fail(computation(e)))?;
            let g = expand::g_vector(&t, &t.signed_adjacency(), &e).map_err(|e| fail(computation(e)))?;
            Ok(if o.json {
                json_text(&serde_json::json!({ "labels": t.arc_labels(), "g": g }))
            } else {
                g.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n"
            })
        }
        Command::Matchings(o) => {
            let t = load_surface(o).map_err(fail)?;
            let a = load_arc(o, &t).map_err(fail)?;
            let lines = matching_lines(&t, &a).map_err(fail)?;
            Ok(lines_output(o.json, &lines))
        }
        Command::Snake(o) => {
            let t = load_surface(o).map_err(fail)?;
            let a = load_arc(o, &t).map_err(fail)?;
            let graphs = graphs_of(&t, &a).map_err(fail)?;
            let mut s = String::new();
            for g in &graphs {
                s += &if o.dot { g.render_dot(&t) } else { g.render_text(&t) };
            }
            Ok(if o.json {
                lines_output(true, &s.lines().map(str::to_string).collect::<Vec<_>>())
            } else {
                s
            })
        }
        Command::Mutate(o) => mutate_command(o).map_err(fail),
        Command::Verify(o) => verify_command(o),
    }
}

fn lines_output(json: bool, lines: &[String]) -> String {
    if json {
        json_text(&serde_json::json!(lines))
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

enum Graphs {
    Plain(crate::snake::SnakeGraph),
    Loops(Vec<crate::snake::LoopGraph>),
}

fn notched_path(t: &Triangulation, a: &ParsedArc) -> Result<(CrossingPath, bool, bool), CliError> {
    match &a.arc.base {
        ArcBase::Path(p) => {
            let (s, e) = a.arc.endpoints(t);
            // Notches at a self-folded puncture only relabel variables.
            let ns = a.arc.notch_start && !t.is_self_folded_puncture(s);
            let ne = a.arc.notch_end && !t.is_self_folded_puncture(e);
            if s == e && ns != ne {
                let p = match a.orientation {
                    Some(Orientation::Cw) => p.reversed(),
                    Some(Orientation::Ccw) => p.clone(),
                    None => return Err(computation(crate::expand::ExpandError::MissingOrientation)),
                };
                return Ok((p, false, true));
            }
            Ok((p.clone(), ns, ne))
        }
        ArcBase::Initial { .. } => Err(CliError::Computation(
            "an arc of the triangulation has no snake graph".into(),
        )),
    }
}

fn build(t: &Triangulation, a: &ParsedArc) -> Result<Graphs, CliError> {
    use crate::snake::{build_loop_graph, build_snake};
    let (p, ns, ne) = notched_path(t, a)?;
    let mut loops = Vec::new();
    if ne {
        loops.push(build_loop_graph(t, &p, 1).map_err(computation)?);
    }
    if ns {
        loops.push(build_loop_graph(t, &p.reversed(), 1).map_err(computation)?);
    }
    if loops.is_empty() {
        Ok(Graphs::Plain(build_snake(t, &p, 1).map_err(computation)?))
    } else {
        Ok(Graphs::Loops(loops))
    }
}

fn graphs_of(t: &Triangulation, a: &ParsedArc) -> Result<Vec<crate::snake::SnakeGraph>, CliError> {
    Ok(match build(t, a)? {
        Graphs::Plain(g) => vec![g],
        Graphs::Loops(ls) => ls.into_iter().map(|l| l.graph).collect(),
    })
}

fn matching_lines(t: &Triangulation, a: &ParsedArc) -> Result<Vec<String>, CliError> {
    use crate::matchings::{compatible_pairs, enumerate_matchings, gamma_symmetric_filter, minimal_maximal, render_matchings};
    let rendered = |g: &crate::snake::SnakeGraph, keep: Option<&[usize]>| -> Result<Vec<String>, CliError> {
        let all = enumerate_matchings(g);
        let (lo, _) = minimal_maximal(g, &all).map_err(computation)?;
        let chosen: Vec<_> = match keep {
            Some(k) => k.iter().map(|&i| all[i].clone()).collect(),
            None => all.clone(),
        };
        Ok(render_matchings(t, g, &chosen, &all[lo]).lines().map(str::to_string).collect())
    };
    match build(t, a)? {
        Graphs::Plain(g) => rendered(&g, None),
        Graphs::Loops(ls) => {
            let sym: Vec<(Vec<usize>, Vec<_>)> = ls
                .iter()
                .map(|l| {
                    let all = enumerate_matchings(&l.graph);
                    let keep = gamma_symmetric_filter(l, &all);
                    let kept: Vec<_> = keep.iter().map(|&i| all[i].clone()).collect();
                    (keep, kept)
                })
                .collect();
            if ls.len() == 1 {
                return rendered(&ls[0].graph, Some(&sym[0].0));
            }
            let lp = rendered(&ls[0].graph, Some(&sym[0].0))?;
            let lq = rendered(&ls[1].graph, Some(&sym[1].0))?;
            Ok(compatible_pairs(&ls[0], &sym[0].1, &ls[1], &sym[1].1)
                .into_iter()
                .map(|(i, j)| format!("{} || {}", lp[i], lq[j]))
                .collect())
        }
    }
}

fn load_seed(o: &JobOpts) -> Result<(Vec<String>, crate::mutation::Seed), CliError> {
    use crate::mutation::{parse_seed, Seed};
    match (&o.seed, &o.surface) {
        (Some(p), None) => {
            parse_seed(&read(p)?).map_err(|e| match e {
                crate::mutation::MutationError::Parse(m) => CliError::Parse(m),
                other => CliError::Validation(vec![other.to_string()]),
            })
        }
        (None, Some(_)) => {
            let t = load_surface(o)?;
            let labels = t.arc_labels().to_vec();
            let s = Seed::principal(&labels, &t.signed_adjacency()).map_err(computation)?;
            Ok((labels, s))
        }
        _ => Err(CliError::Parse("give exactly one of --seed and --surface".into())),
    }
}

fn resolve_sequence(labels: &[String], seq: &[String]) -> Result<Vec<usize>, CliError> {
    seq.iter()
        .map(|k| {
            if let Some(i) = labels.iter().position(|l| l == k) {
                return Ok(i);
            }
            match k.parse::<usize>() {
                Ok(i) if (1..=labels.len()).contains(&i) => Ok(i - 1),
                _ => Err(CliError::Validation(vec![format!("--sequence: `{k}` is not an index in 1..={} or a label", labels.len())])),
            }
        })
        .collect()
}

fn mutate_command(o: &JobOpts) -> Result<String, CliError> {
    let (labels, s) = load_seed(o)?;
    let ks = resolve_sequence(&labels, &o.sequence)?;
    let m = crate::mutation::run_sequence(&s, &ks).map_err(computation)?;
    let texts: Vec<String> = m
        .cluster()
        .iter()
        .map(|x| crate::expand::Expansion::from_poly(x.clone()).render(true))
        .collect();
    if o.json {
        let cluster: Vec<serde_json::Value> = labels
            .iter()
            .zip(m.cluster())
            .zip(&texts)
            .map(|((l, x), tx)| serde_json::json!({ "label": l, "text": tx, "terms": laurent_json(x) }))
            .collect();
        return Ok(json_text(&serde_json::json!({ "matrix": m.matrix(), "cluster": cluster })));
    }
    Ok(labels.iter().zip(&texts).map(|(l, tx)| format!("{l} = {tx}\n")).collect())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Bundle {
    version: u32,
    surface: String,
    entries: Vec<BundleEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleEntry {
    name: String,
    arc: serde_json::Value,
    sequence: Vec<String>,
    variable: String,
}

fn verify_command(o: &JobOpts) -> Result<String, Failure> {
    use crate::mutation::{run_sequence, Seed};
    let path = o.bundle.as_ref().ok_or_else(|| fail(CliError::Parse("--bundle is required".into())))?;
    let b: Bundle = serde_json::from_str(&read(path).map_err(fail)?).map_err(|e| fail(json_error("bundle", e)))?;
    if b.version != FORMAT_VERSION {
        return Err(fail(CliError::Parse(format!("bundle: unsupported version {}", b.version))));
    }
    let dir = path.parent().unwrap_or(std::path::Path::new("."));
    let t = parse_surface(&read(&dir.join(&b.surface)).map_err(fail)?).map_err(fail)?;
    let labels = t.arc_labels().to_vec();
    let seed = Seed::principal(&labels, &t.signed_adjacency()).map_err(|e| fail(computation(e)))?;
    let mut out = String::new();
    let mut differ = Vec::new();
    for e in &b.entries {
        let a = parse_arc(&e.arc.to_string(), &t).map_err(|err| (out.clone(), err))?;
        let ks = resolve_sequence(&labels, &e.sequence).map_err(|err| (out.clone(), err))?;
        let k = labels
            .iter()
            .position(|l| *l == e.variable)
            .ok_or_else(|| (out.clone(), CliError::Validation(vec![format!("{}: unknown variable `{}`", e.name, e.variable)])))?;
        let x = crate::expand::expand(&t, &a.arc, a.orientation).map_err(|err| (out.clone(), computation(err)))?;
        let m = run_sequence(&seed, &ks).map_err(|err| (out.clone(), computation(err)))?;
        let same = m.cluster()[k] == x.poly;
        out += &format!("{} {}\n", e.name, if same { "EQUAL" } else { "DIFFER" });
        if !same {
            differ.push(e.name.clone());
        }
    }
    if differ.is_empty() {
        Ok(out)
    } else {
        Err((out, CliError::Mismatch(differ.join(", "))))
    }
}
