//! Fatgraphs admissible for free-group words and a mechanical check of the
//! turn-graph argument that forces `−χ ≥ n`.
//!
//! Conventions: every half-edge `h` carries the letter of the boundary edge it
//! induces, paired half-edges carry inverse letters, and the boundary edge
//! after `h` belongs to `σ(ι(h))` where `ι` is the pairing and `σ` the cyclic
//! successor at a vertex.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::words::{
    cyclically_reduce, syllable_decomposition, FactorOrder, FactorSignature, Letter, ReducedWord,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fatgraph {
    comments: Vec<String>,
    vertex_names: Vec<String>,
    half_edge_names: Vec<String>,
    /// Cyclically ordered half-edges at each vertex.
    vertices: Vec<Vec<usize>>,
    /// Edges in listing order; the first half-edge carries the written label.
    edges: Vec<(usize, usize)>,
    pairing: Vec<usize>,
    labels: Vec<Letter>,
    vertex_of: Vec<usize>,
    succ: Vec<usize>,
}

impl Fatgraph {
    /// Builds a fatgraph on half-edges `0..n` with default names `v1.., h1..`.
    /// Each edge `(x, y, letter)` labels `x` by `letter` and `y` by its inverse.
    pub fn new(vertices: Vec<Vec<usize>>, edges: Vec<(usize, usize, Letter)>) -> Result<Self> {
        let n = vertices.iter().map(Vec::len).sum();
        let vertex_names = (1..=vertices.len()).map(|k| format!("v{k}")).collect();
        let half_edge_names = (1..=n).map(|k| format!("h{k}")).collect();
        Self::assemble(Vec::new(), vertex_names, half_edge_names, vertices, edges)
    }

    fn assemble(
        comments: Vec<String>,
        vertex_names: Vec<String>,
        half_edge_names: Vec<String>,
        vertices: Vec<Vec<usize>>,
        edges: Vec<(usize, usize, Letter)>,
    ) -> Result<Self> {
        let n = half_edge_names.len();
        let bad = |message: String| Error::InvalidArgument(message);
        let mut vertex_of = vec![usize::MAX; n];
        let mut succ = vec![usize::MAX; n];
        for (v, cycle) in vertices.iter().enumerate() {
            if cycle.is_empty() {
                return Err(bad(format!("vertex {} has no half-edges", vertex_names[v])));
            }
            for (k, &h) in cycle.iter().enumerate() {
                if h >= n {
                    return Err(Error::IndexOutOfRange { index: h, len: n });
                }
                if vertex_of[h] != usize::MAX {
                    return Err(bad(format!(
                        "half-edge {} appears twice",
                        half_edge_names[h]
                    )));
                }
                vertex_of[h] = v;
                succ[h] = cycle[(k + 1) % cycle.len()];
            }
        }
        if let Some(h) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(bad(format!(
                "half-edge {} lies on no vertex",
                half_edge_names[h]
            )));
        }
        let mut pairing = vec![usize::MAX; n];
        let mut labels = vec![Letter::new(0, 0); n];
        for &(x, y, letter) in &edges {
            if x >= n || y >= n {
                return Err(Error::IndexOutOfRange {
                    index: x.max(y),
                    len: n,
                });
            }
            if x == y {
                return Err(bad(format!(
                    "half-edge {} is paired with itself",
                    half_edge_names[x]
                )));
            }
            if letter.exponent.abs() != 1 {
                return Err(bad(format!("label {letter} is not a unit letter")));
            }
            for h in [x, y] {
                if pairing[h] != usize::MAX {
                    return Err(bad(format!(
                        "half-edge {} is paired twice",
                        half_edge_names[h]
                    )));
                }
            }
            pairing[x] = y;
            pairing[y] = x;
            labels[x] = letter;
            labels[y] = letter.inverse();
        }
        if let Some(h) = pairing.iter().position(|&p| p == usize::MAX) {
            return Err(bad(format!("half-edge {} is unpaired", half_edge_names[h])));
        }
        Ok(Self {
            comments,
            vertex_names,
            half_edge_names,
            vertices,
            edges: edges.into_iter().map(|(x, y, _)| (x, y)).collect(),
            pairing,
            labels,
            vertex_of,
            succ,
        })
    }

    /// The fatgraph whose boundary consists of `copies` copies of the cyclic
    /// word `units`, with boundary edge `p` glued to `pairing[p]`. Half-edge
    /// `c·|units| + p` is position `p` of copy `c`.
    pub fn from_boundary_gluing(
        units: &[Letter],
        copies: usize,
        pairing: &[usize],
    ) -> Result<Self> {
        let len = units.len();
        let n = len * copies;
        if pairing.len() != n || n == 0 {
            return Err(Error::Dimension(format!(
                "gluing of {} positions for {copies} copies of a word of length {len}",
                pairing.len()
            )));
        }
        let label = |h: usize| units[h % len];
        let next = |h: usize| (h / len) * len + (h % len + 1) % len;
        let mut edges = Vec::new();
        for (x, &y) in pairing.iter().enumerate() {
            if y >= n {
                return Err(Error::IndexOutOfRange { index: y, len: n });
            }
            if pairing[y] != x || x == y {
                return Err(Error::InvalidArgument(format!(
                    "position {x} is not properly paired"
                )));
            }
            if label(y) != label(x).inverse() {
                return Err(Error::InvalidArgument(format!(
                    "positions {x} and {y} carry {} and {}",
                    label(x),
                    label(y)
                )));
            }
            if x < y {
                edges.push((x, y, label(x)));
            }
        }
        // next(h) = σ(ι(h)) forces σ(x) = next(ι(x))
        let mut seen = vec![false; n];
        let mut vertices = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = next(pairing[h]);
            }
            vertices.push(cycle);
        }
        Self::new(vertices, edges)
    }

    pub fn num_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn pair(&self, h: usize) -> usize {
        self.pairing[h]
    }

    pub fn label(&self, h: usize) -> Letter {
        self.labels[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    /// Cyclic successor of `h` at its vertex.
    pub fn successor(&self, h: usize) -> usize {
        self.succ[h]
    }

    /// The half-edge whose boundary edge follows that of `h`.
    pub fn boundary_next(&self, h: usize) -> usize {
        self.succ[self.pairing[h]]
    }

    pub fn half_edge_name(&self, h: usize) -> &str {
        &self.half_edge_names[h]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Parses the text format:
    ///
    /// ```text
    /// V 1
    /// v1: h1 h4 h3 h2
    /// E 2
    /// h1 h3 a
    /// h2 h4 b
    /// ```
    ///
    /// Lines starting with `#` are comments and are kept for printing.
    pub fn parse(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let mut lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.to_string());
            } else if !line.is_empty() {
                lines.push((k + 1, line));
            }
        }
        let mut it = lines.into_iter();
        let last_line = text.lines().count().max(1);
        let mut header = |key: &str| -> Result<usize> {
            let (line, content) = it.next().ok_or(Error::FatgraphFormat {
                line: last_line,
                message: format!("missing '{key}' header"),
            })?;
            content
                .strip_prefix(key)
                .and_then(|rest| rest.trim().parse().ok())
                .ok_or(Error::FatgraphFormat {
                    line,
                    message: format!("expected '{key} <count>'"),
                })
        };
        let num_vertices = header("V")?;

        let mut vertex_names = Vec::new();
        let mut half_edge_names: Vec<String> = Vec::new();
        let mut half_edge_index: HashMap<String, usize> = HashMap::new();
        let mut vertices = Vec::new();
        for _ in 0..num_vertices {
            let (line, content) = it.next().ok_or(Error::FatgraphFormat {
                line: last_line,
                message: "fewer vertex lines than declared".into(),
            })?;
            let (name, rest) = content.split_once(':').ok_or(Error::FatgraphFormat {
                line,
                message: "expected '<vertex>: <half-edges>'".into(),
            })?;
            let name = name.trim();
            if name.is_empty()
                || name.contains(char::is_whitespace)
                || vertex_names.iter().any(|v| v == name)
            {
                return Err(Error::FatgraphFormat {
                    line,
                    message: format!("bad or repeated vertex name '{name}'"),
                });
            }
            vertex_names.push(name.to_string());
            let mut cycle = Vec::new();
            for h in rest.split_whitespace() {
                if half_edge_index.contains_key(h) {
                    return Err(Error::FatgraphFormat {
                        line,
                        message: format!("half-edge {h} listed twice"),
                    });
                }
                half_edge_index.insert(h.to_string(), half_edge_names.len());
                cycle.push(half_edge_names.len());
                half_edge_names.push(h.to_string());
            }
            if cycle.is_empty() {
                return Err(Error::FatgraphFormat {
                    line,
                    message: format!("vertex {name} has no half-edges"),
                });
            }
            vertices.push(cycle);
        }

        let (line, content) = it.next().ok_or(Error::FatgraphFormat {
            line: last_line,
            message: "missing 'E' header".into(),
        })?;
        let num_edges: usize = content
            .strip_prefix('E')
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or(Error::FatgraphFormat {
                line,
                message: "expected 'E <count>'".into(),
            })?;
        let free = FactorSignature::free(26)?;
        let mut edges = Vec::new();
        for _ in 0..num_edges {
            let (line, content) = it.next().ok_or(Error::FatgraphFormat {
                line: last_line,
                message: "fewer edge lines than declared".into(),
            })?;
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [x, y, label] = fields[..] else {
                return Err(Error::FatgraphFormat {
                    line,
                    message: "expected '<half-edge> <half-edge> <label>'".into(),
                });
            };
            let lookup = |h: &str| {
                half_edge_index
                    .get(h)
                    .copied()
                    .ok_or(Error::FatgraphFormat {
                        line,
                        message: format!("unknown half-edge {h}"),
                    })
            };
            let letters =
                crate::words::parse_tokens(label, &free).map_err(|e| Error::FatgraphFormat {
                    line,
                    message: e.to_string(),
                })?;
            let letter = match letters[..] {
                [l] if l.exponent.abs() == 1 => l,
                _ => {
                    return Err(Error::FatgraphFormat {
                        line,
                        message: format!("label '{label}' is not a single generator or inverse"),
                    })
                }
            };
            edges.push((lookup(x)?, lookup(y)?, letter));
        }
        if let Some((line, _)) = it.next() {
            return Err(Error::FatgraphFormat {
                line,
                message: "more lines than declared".into(),
            });
        }
        Self::assemble(comments, vertex_names, half_edge_names, vertices, edges).map_err(|e| {
            Error::FatgraphFormat {
                line: 0,
                message: e.to_string(),
            }
        })
    }

    /// Traces every boundary component.
    pub fn trace_boundary(&self) -> BoundaryTrace {
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = self.boundary_next(h);
            }
            cycles.push(cycle);
        }
        let words = cycles
            .iter()
            .map(|c| c.iter().map(|&h| self.labels[h]).collect())
            .collect();
        BoundaryTrace {
            half_edges: cycles,
            words,
        }
    }

    /// `#vertices − #edges`.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    /// `Σ (d(v) − 2)`, which is `−2χ` for any fatgraph.
    pub fn valence_excess(&self) -> i64 {
        self.vertices.iter().map(|c| c.len() as i64 - 2).sum()
    }
}

impl fmt::Display for Fatgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "#{c}")?;
        }
        writeln!(f, "V {}", self.vertices.len())?;
        for (name, cycle) in self.vertex_names.iter().zip(&self.vertices) {
            write!(f, "{name}:")?;
            for &h in cycle {
                write!(f, " {}", self.half_edge_names[h])?;
            }
            writeln!(f)?;
        }
        writeln!(f, "E {}", self.edges.len())?;
        for &(x, y) in &self.edges {
            writeln!(
                f,
                "{} {} {}",
                self.half_edge_names[x], self.half_edge_names[y], self.labels[x]
            )?;
        }
        Ok(())
    }
}

/// Boundary components of the fattening, as half-edge cycles and letter cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTrace {
    pub half_edges: Vec<Vec<usize>>,
    pub words: Vec<Vec<Letter>>,
}

impl BoundaryTrace {
    pub fn total_letters(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    /// Whether every component is cyclically reduced as a free-group word.
    pub fn is_reduced(&self) -> bool {
        self.words
            .iter()
            .all(|w| (0..w.len()).all(|k| w.len() < 2 || w[(k + 1) % w.len()] != w[k].inverse()))
    }

    pub fn spell(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| w.iter().map(|l| l.to_string()).collect())
            .collect()
    }
}

/// An admissible fatgraph's boundary pulled back to the positions of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub degree: usize,
    pub word_len: usize,
    /// 0-based position in `g` of each half-edge's boundary edge.
    pub positions: Vec<usize>,
}

fn unit_letters_of_free_word(g: &ReducedWord) -> Result<Vec<Letter>> {
    if g.signature()
        .orders()
        .iter()
        .any(|o| *o != FactorOrder::Infinite)
    {
        return Err(Error::InvalidArgument(
            "fatgraph certificates need a word in a free group".into(),
        ));
    }
    if g.is_empty() {
        return Err(Error::InvalidArgument(
            "the trivial word has no admissible fatgraphs".into(),
        ));
    }
    Ok(g.unit_letters())
}

/// Checks that each boundary component is a positive power of the cyclic
/// word `g` and returns the total degree with the pulled-back positions.
pub fn check_admissible(fg: &Fatgraph, g: &ReducedWord) -> Result<Cover> {
    let units = unit_letters_of_free_word(g)?;
    let len = units.len();
    let trace = fg.trace_boundary();
    let mut positions = vec![0; fg.num_half_edges()];
    for (cycle, word) in trace.half_edges.iter().zip(&trace.words) {
        if word.len() % len != 0 {
            return Err(Error::NotAdmissible(format!(
                "boundary component {} has length {}, not a multiple of {len}",
                trace_name(fg, cycle),
                word.len()
            )));
        }
        let offset = (0..len)
            .find(|&r| {
                word.iter()
                    .enumerate()
                    .all(|(t, l)| *l == units[(t + r) % len])
            })
            .ok_or_else(|| {
                Error::NotAdmissible(format!(
                    "boundary component {} is not a power of the word",
                    trace_name(fg, cycle)
                ))
            })?;
        for (t, &h) in cycle.iter().enumerate() {
            positions[h] = (t + offset) % len;
        }
    }
    Ok(Cover {
        degree: trace.total_letters() / len,
        word_len: len,
        positions,
    })
}

fn trace_name(fg: &Fatgraph, cycle: &[usize]) -> String {
    let spelled: String = cycle.iter().map(|&h| fg.label(h).to_string()).collect();
    format!("starting at {} ({spelled})", fg.half_edge_name(cycle[0]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnGraph {
    pub word_len: usize,
    /// `edges[h]` is the directed edge contributed through half-edge `h`,
    /// with 1-based endpoints.
    pub edges: Vec<(usize, usize)>,
    pub descending_count: usize,
}

impl TurnGraph {
    pub fn is_descending(edge: (usize, usize)) -> bool {
        edge.0 > edge.1
    }
}

/// For each edge pairing boundary edges `(i, i+1)` and `(j, j+1)` of `g`,
/// adds `i+1 → j` and `j+1 → i` (positions 1-based, cyclic).
pub fn build_turn_graph(fg: &Fatgraph, g: &ReducedWord) -> Result<TurnGraph> {
    let cover = check_admissible(fg, g)?;
    turn_graph_from_cover(fg, &cover)
}

fn turn_graph_from_cover(fg: &Fatgraph, cover: &Cover) -> Result<TurnGraph> {
    let len = cover.word_len;
    let mut edges = Vec::with_capacity(fg.num_half_edges());
    for h in 0..fg.num_half_edges() {
        let i = cover.positions[h] + 1;
        let j = cover.positions[fg.pair(h)] + 1;
        let edge = (i % len + 1, j);
        if edge.0 == edge.1 {
            return Err(Error::SelfLoopDetected(edge.0));
        }
        edges.push(edge);
    }
    let descending_count = edges
        .iter()
        .filter(|&&e| TurnGraph::is_descending(e))
        .count();
    Ok(TurnGraph {
        word_len: len,
        edges,
        descending_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl CheckStatus {
    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail(why())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub checks: Vec<CheckItem>,
    pub degree: Option<usize>,
    pub euler_characteristic: i64,
    pub valence_sum: usize,
    pub descending_count: Option<usize>,
    /// `−χ / 2n`, an upper bound for scl.
    pub bound: Option<BigRational>,
}

impl CertificateReport {
    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, CheckStatus::Fail(_)))
    }

    pub fn status(&self, name: &str) -> Option<&CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.status)
    }

    pub fn failures(&self) -> Vec<(&'static str, &str)> {
        self.checks
            .iter()
            .filter_map(|c| match &c.status {
                CheckStatus::Fail(why) => Some((c.name, why.as_str())),
                _ => None,
            })
            .collect()
    }
}

pub const CHECK_ADMISSIBLE: &str = "admissible";
pub const CHECK_VALENCE_SUM: &str = "valence_sum";
pub const CHECK_EULER_FORMULA: &str = "euler_formula";
pub const CHECK_TURN_GRAPH: &str = "turn_graph";
pub const CHECK_CYCLES: &str = "cycle_decomposition";
pub const CHECK_DESCENDING: &str = "descending_count";
pub const CHECK_VERTEX_BOUND: &str = "vertex_bound";
pub const CHECK_EULER_BOUND: &str = "euler_bound";

/// Runs every step of the turn-graph argument on a concrete fatgraph and
/// reports each outcome. Steps that depend on a failed step are reported as
/// not applicable.
pub fn certificate_check(fg: &Fatgraph, g: &ReducedWord) -> CertificateReport {
    let mut checks = Vec::new();
    let mut push = |name, status| checks.push(CheckItem { name, status });
    let chi = fg.euler_characteristic();
    let valence_sum = fg.num_half_edges();
    let mut report_degree = None;
    let mut descending = None;
    let mut bound = None;

    push(
        CHECK_EULER_FORMULA,
        CheckStatus::from_bool(fg.valence_excess() == -2 * chi, || {
            format!(
                "Σ(d(v) − 2) = {} but −2χ = {}",
                fg.valence_excess(),
                -2 * chi
            )
        }),
    );

    let cover = match check_admissible(fg, g) {
        Ok(c) => {
            push(CHECK_ADMISSIBLE, CheckStatus::Pass);
            c
        }
        Err(e) => {
            push(CHECK_ADMISSIBLE, CheckStatus::Fail(e.to_string()));
            for name in [
                CHECK_VALENCE_SUM,
                CHECK_TURN_GRAPH,
                CHECK_CYCLES,
                CHECK_DESCENDING,
                CHECK_VERTEX_BOUND,
                CHECK_EULER_BOUND,
            ] {
                push(name, CheckStatus::NotApplicable("not admissible".into()));
            }
            return CertificateReport {
                checks,
                degree: None,
                euler_characteristic: chi,
                valence_sum,
                descending_count: None,
                bound: None,
            };
        }
    };
    let n = cover.degree;
    let len = cover.word_len;
    report_degree = report_degree.or(Some(n));
    if n > 0 {
        bound = Some(BigRational::new(BigInt::from(-chi), BigInt::from(2 * n)));
    }

    push(
        CHECK_VALENCE_SUM,
        CheckStatus::from_bool(valence_sum == n * len, || {
            format!("Σd(v) = {valence_sum} but n|g| = {}", n * len)
        }),
    );

    match turn_graph_from_cover(fg, &cover) {
        Err(e) => {
            push(CHECK_TURN_GRAPH, CheckStatus::Fail(e.to_string()));
            for name in [CHECK_CYCLES, CHECK_DESCENDING, CHECK_VERTEX_BOUND] {
                push(
                    name,
                    CheckStatus::NotApplicable("turn graph has a self-loop".into()),
                );
            }
        }
        Ok(tg) => {
            push(CHECK_TURN_GRAPH, CheckStatus::Pass);
            push(CHECK_CYCLES, check_cycles(fg, &cover, &tg));
            descending = Some(tg.descending_count);
            push(
                CHECK_DESCENDING,
                if len % 2 == 1 {
                    CheckStatus::NotApplicable(format!("|g| = {len} is odd"))
                } else {
                    let expected = n * (len / 2 - 1);
                    CheckStatus::from_bool(tg.descending_count == expected, || {
                        format!(
                            "{} descending edges, expected {expected}",
                            tg.descending_count
                        )
                    })
                },
            );
            push(
                CHECK_VERTEX_BOUND,
                CheckStatus::from_bool(fg.num_vertices() <= tg.descending_count, || {
                    format!(
                        "{} vertices but only {} descending edges",
                        fg.num_vertices(),
                        tg.descending_count
                    )
                }),
            );
        }
    }
    push(
        CHECK_EULER_BOUND,
        CheckStatus::from_bool(-chi >= n as i64, || format!("−χ = {} < n = {n}", -chi)),
    );
    CertificateReport {
        checks,
        degree: report_degree,
        euler_characteristic: chi,
        valence_sum,
        descending_count: descending,
        bound,
    }
}

/// The edges through the half-edges at each vertex, read against the cyclic
/// order, must chain into one closed directed cycle with a descending edge.
fn check_cycles(fg: &Fatgraph, cover: &Cover, tg: &TurnGraph) -> CheckStatus {
    let pos = |h: usize| cover.positions[h] + 1;
    for (v, cycle) in fg.vertices().iter().enumerate() {
        let mut has_descent = false;
        for &x in cycle {
            // the edge through ι(x) runs pos(σx) → pos(x)
            let edge = tg.edges[fg.pair(x)];
            if edge != (pos(fg.successor(x)), pos(x)) {
                return CheckStatus::Fail(format!(
                    "edge {edge:?} at vertex {} does not chain",
                    v + 1
                ));
            }
            has_descent |= TurnGraph::is_descending(edge);
        }
        if !has_descent {
            return CheckStatus::Fail(format!("cycle at vertex {} never descends", v + 1));
        }
    }
    CheckStatus::Pass
}

/// The split of one factor's side of the surface into pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorContribution {
    pub factor: usize,
    /// Corners between syllables, counted on this side.
    pub corners: usize,
    pub pieces: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub disks: usize,
    /// `corners/4 − χ(R_X)`; the two factors sum to `−χ(S)`.
    pub contribution: BigRational,
    /// `corners/4 − #disks`.
    pub disk_estimate: BigRational,
}

/// Cuts the surface at every corner where the boundary passes from one
/// factor to the other. A vertex whose half-edges alternate between factors in
/// `r ≥ 2` runs keeps its first factor's runs joined in a central piece; every
/// run of the second factor becomes its own piece.
pub fn factor_contribution(fg: &Fatgraph, g: &ReducedWord) -> Result<[FactorContribution; 2]> {
    let alt = syllable_decomposition(&cyclically_reduce(g))?;
    let cover = check_admissible(fg, g)?;
    let (fa, fb) = alt.generators();
    let n = cover.degree;
    let corners = 2 * alt.len() * n;

    // piece id of every half-edge
    let mut piece = vec![usize::MAX; fg.num_half_edges()];
    let mut piece_factor = Vec::new();
    for cycle in fg.vertices() {
        let factor = |h: usize| fg.label(h).factor;
        if cycle.iter().any(|&h| factor(h) != fa && factor(h) != fb) {
            return Err(Error::NotAdmissible("label outside the two factors".into()));
        }
        let d = cycle.len();
        let starts: Vec<usize> = (0..d)
            .filter(|&k| factor(cycle[k]) != factor(cycle[(k + d - 1) % d]))
            .collect();
        let runs_per_factor = starts.len() / 2;
        if runs_per_factor == 0 {
            piece_factor.push(factor(cycle[0]));
            for &h in cycle {
                piece[h] = piece_factor.len() - 1;
            }
            continue;
        }
        let center = piece_factor.len();
        piece_factor.push(fa);
        if runs_per_factor == 1 {
            piece_factor.push(fb);
        }
        for &s in &starts {
            let f = factor(cycle[s]);
            let id = if f == fa {
                center
            } else if runs_per_factor == 1 {
                center + 1
            } else {
                piece_factor.push(fb);
                piece_factor.len() - 1
            };
            let mut k = s;
            while factor(cycle[k]) == f && piece[cycle[k]] == usize::MAX {
                piece[cycle[k]] = id;
                k = (k + 1) % d;
            }
        }
    }

    let side = |f: usize| -> FactorContribution {
        let ids: Vec<usize> = (0..piece_factor.len())
            .filter(|&p| piece_factor[p] == f)
            .collect();
        let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut uf = UnionFind::new(ids.len());
        let mut edge_count = 0;
        let mut comp_edges = Vec::new();
        for &(x, y) in fg.edges() {
            if fg.label(x).factor == f {
                edge_count += 1;
                let (a, b) = (index[&piece[x]], index[&piece[y]]);
                uf.union(a, b);
                comp_edges.push(a);
            }
        }
        let mut comp_vertices: HashMap<usize, i64> = HashMap::new();
        for k in 0..ids.len() {
            *comp_vertices.entry(uf.find(k)).or_default() += 1;
        }
        for a in comp_edges {
            *comp_vertices.entry(uf.find(a)).or_default() -= 1;
        }
        let disks = comp_vertices.values().filter(|&&chi| chi == 1).count();
        let chi = ids.len() as i64 - edge_count as i64;
        let quarter = BigRational::new(BigInt::from(corners), BigInt::from(4));
        FactorContribution {
            factor: f,
            corners,
            pieces: ids.len(),
            edges: edge_count,
            euler_characteristic: chi,
            disks,
            contribution: quarter.clone() - BigRational::from_integer(BigInt::from(chi)),
            disk_estimate: quarter - BigRational::from_integer(BigInt::from(disks)),
        }
    };
    Ok([side(fa), side(fb)])
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Every perfect gluing of `copies` copies of `g` that pairs each letter with
/// an inverse letter. Each result is admissible of degree `copies`; the list
/// grows factorially, so keep `copies·|g|` small.
pub fn all_gluings(g: &ReducedWord, copies: usize) -> Result<Vec<Fatgraph>> {
    let units = unit_letters_of_free_word(g)?;
    let n = units.len() * copies;
    let label = |h: usize| units[h % units.len()];
    let mut out = Vec::new();
    let mut pairing = vec![usize::MAX; n];
    fn go(
        pairing: &mut Vec<usize>,
        label: &dyn Fn(usize) -> Letter,
        units: &[Letter],
        copies: usize,
        out: &mut Vec<Fatgraph>,
    ) -> Result<()> {
        let Some(x) = pairing.iter().position(|&p| p == usize::MAX) else {
            out.push(Fatgraph::from_boundary_gluing(units, copies, pairing)?);
            return Ok(());
        };
        for y in x + 1..pairing.len() {
            if pairing[y] == usize::MAX && label(y) == label(x).inverse() {
                pairing[x] = y;
                pairing[y] = x;
                go(pairing, label, units, copies, out)?;
                pairing[x] = usize::MAX;
                pairing[y] = usize::MAX;
            }
        }
        Ok(())
    }
    go(&mut pairing, &label, &units, copies, &mut out)?;
    let mut seen = HashSet::new();
    out.retain(|fg| seen.insert(fg.to_string()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    const TORUS: &str = "V 1\nv1: h1 h4 h3 h2\nE 2\nh1 h3 a\nh2 h4 b\n";
    const GENUS_ONE: &str = "V 4\nv1: h1 h8 h4\nv2: h2 h7\nv3: h3 h9 h6\nv4: h5 h10\nE 5\nh1 h7 a\nh3 h8 a\nh5 h9 a\nh2 h6 b\nh4 h10 B\n";

    fn free_word(text: &str) -> ReducedWord {
        parse_word(text, &FactorSignature::free(2).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_print_round_trip() {
        for text in [TORUS, GENUS_ONE, "# spine\nV 1\nv: x y\nE 1\nx y A\n"] {
            let fg = Fatgraph::parse(text).unwrap();
            assert_eq!(fg.to_string(), text);
        }
    }

    #[test]
    fn parse_errors() {
        for (text, line) in [
            ("V 1\nv1: h1 h2\nE 1\nh1 h3 a\n", 4),
            ("V 1\nv1: h1 h1\nE 1\nh1 h1 a\n", 2),
            ("V 1\nv1: h1 h2\nE 1\nh1 h2 a^2\n", 4),
            ("V 2\nv1: h1 h2\n", 2),
            ("X 1\n", 1),
        ] {
            match Fatgraph::parse(text) {
                Err(Error::FatgraphFormat { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(Fatgraph::parse("V 1\nv1: h1 h2 h3\nE 1\nh1 h2 a\n").is_err());
    }

    #[test]
    fn traces() {
        let torus = Fatgraph::parse(TORUS).unwrap();
        assert_eq!(torus.trace_boundary().spell(), vec!["abAB"]);
        let genus_one = Fatgraph::parse(GENUS_ONE).unwrap();
        assert_eq!(genus_one.trace_boundary().spell(), vec!["abaBaBAAAb"]);
        let stick = Fatgraph::parse("V 2\nv1: h1\nv2: h2\nE 1\nh1 h2 x\n").unwrap();
        let trace = stick.trace_boundary();
        assert_eq!(trace.spell(), vec!["xX"]);
        assert!(!trace.is_reduced());
        assert_eq!(stick.euler_characteristic(), 1);
    }

    #[test]
    fn admissibility() {
        let torus = Fatgraph::parse(TORUS).unwrap();
        assert_eq!(
            check_admissible(&torus, &free_word("abAB")).unwrap().degree,
            1
        );
        assert_eq!(
            check_admissible(&torus, &free_word("BabA")).unwrap().degree,
            1
        );
        assert!(matches!(
            check_admissible(&torus, &free_word("abab")),
            Err(Error::NotAdmissible(_))
        ));
        let genus_one = Fatgraph::parse(GENUS_ONE).unwrap();
        assert_eq!(
            check_admissible(&genus_one, &free_word("abaBaBAAAb"))
                .unwrap()
                .degree,
            1
        );
    }

    #[test]
    fn torus_certificate() {
        let torus = Fatgraph::parse(TORUS).unwrap();
        let g = free_word("abAB");
        assert_eq!(torus.euler_characteristic(), -1);
        let tg = build_turn_graph(&torus, &g).unwrap();
        assert_eq!(tg.descending_count, 1);
        let report = certificate_check(&torus, &g);
        assert!(report.passed(), "{:?}", report.failures());
        assert_eq!(report.bound, Some(q(1, 2)));
        assert_eq!(report.valence_sum, 4);
    }

    #[test]
    fn genus_one_certificate() {
        let genus_one = Fatgraph::parse(GENUS_ONE).unwrap();
        let g = free_word("abaBaBAAAb");
        let report = certificate_check(&genus_one, &g);
        assert!(report.passed(), "{:?}", report.failures());
        assert_eq!(report.valence_sum, 10);
        assert_eq!(report.euler_characteristic, -1);
        assert_eq!(report.descending_count, Some(4));
        assert_eq!(report.degree, Some(1));
    }

    #[test]
    fn contributions() {
        let genus_one = Fatgraph::parse(GENUS_ONE).unwrap();
        let [a, b] = factor_contribution(&genus_one, &free_word("abaBaBAAAb")).unwrap();
        assert_eq!(
            (a.contribution.clone(), b.contribution.clone()),
            (q(1, 1), q(0, 1))
        );
        assert_eq!((a.disk_estimate, b.disk_estimate), (q(1, 1), q(0, 1)));
        assert_eq!((a.disks, b.disks), (1, 2));

        let torus = Fatgraph::parse(TORUS).unwrap();
        let [a, b] = factor_contribution(&torus, &free_word("abAB")).unwrap();
        assert_eq!(a.contribution + b.contribution, q(1, 1));
        assert!(matches!(
            factor_contribution(&torus, &free_word("aa")),
            Err(Error::NotAlternating)
        ));
    }

    #[test]
    fn unreduced_word_gives_self_loop() {
        // abAB conjugated by c, with the outer c and C glued together
        let sig = FactorSignature::free(3).unwrap();
        let g = parse_word("cabABC", &sig).unwrap();
        let fg = Fatgraph::from_boundary_gluing(&g.unit_letters(), 1, &[5, 3, 4, 1, 2, 0]).unwrap();
        assert_eq!(fg.trace_boundary().spell(), vec!["cabABC"]);
        assert!(matches!(
            build_turn_graph(&fg, &g),
            Err(Error::SelfLoopDetected(1))
        ));
        let report = certificate_check(&fg, &g);
        assert!(!report.passed());
        assert!(matches!(
            report.status(CHECK_TURN_GRAPH),
            Some(CheckStatus::Fail(_))
        ));
    }

    #[test]
    fn gluing_reproduces_torus() {
        let g = free_word("abAB");
        let fg = Fatgraph::from_boundary_gluing(&g.unit_letters(), 1, &[2, 3, 0, 1]).unwrap();
        assert_eq!(fg.to_string(), TORUS);
        assert_eq!(all_gluings(&g, 1).unwrap().len(), 1);
        assert_eq!(all_gluings(&g, 2).unwrap().len(), 4);
    }
}
