//! Triangle presentations: generator sets with a cyclically closed set of
//! ordered triples encoding incidence in a projective plane.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::plane::{validate_plane, PointLineCorrespondence, ProjectivePlane};
use crate::textio::{parse_usize, significant_lines, ParseError};

pub type Gen = usize;

#[derive(Clone, Debug)]
pub struct TrianglePresentation {
    q: usize,
    generators: Vec<String>,
    triples: BTreeSet<(Gen, Gen, Gen)>,
}

impl TrianglePresentation {
    /// Builds a presentation from relators, closing the triple set under
    /// cyclic permutation. A constant relator (x,x,x) contributes a single
    /// ordered triple.
    pub fn new(q: usize, generators: Vec<String>, relators: &[(Gen, Gen, Gen)]) -> Self {
        let mut triples = BTreeSet::new();
        for &(x, y, z) in relators {
            triples.insert((x, y, z));
            triples.insert((y, z, x));
            triples.insert((z, x, y));
        }
        TrianglePresentation {
            q,
            generators,
            triples,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Ordered triples, cyclically closed.
    pub fn triples(&self) -> &BTreeSet<(Gen, Gen, Gen)> {
        &self.triples
    }

    /// The points y appearing after x in some triple, sorted.
    pub fn lambda_derived(&self, x: Gen) -> Vec<Gen> {
        let mut ys: Vec<Gen> = self
            .triples
            .range((x, 0, 0)..=(x, Gen::MAX, Gen::MAX))
            .map(|&(_, y, _)| y)
            .collect();
        ys.sort_unstable();
        ys.dedup();
        ys
    }

    /// All z completing (x, y, z); a valid presentation has exactly one.
    pub fn completions(&self, x: Gen, y: Gen) -> Vec<Gen> {
        self.triples
            .range((x, y, 0)..=(x, y, Gen::MAX))
            .map(|&(_, _, z)| z)
            .collect()
    }

    /// Lexicographically least rotation of each cyclic class, sorted.
    pub fn canonical_relators(&self) -> Vec<(Gen, Gen, Gen)> {
        let mut out: BTreeSet<(Gen, Gen, Gen)> = BTreeSet::new();
        for &(x, y, z) in &self.triples {
            out.insert([(x, y, z), (y, z, x), (z, x, y)].into_iter().min().unwrap());
        }
        out.into_iter().collect()
    }

    /// Runs validation, promoting this presentation when it passes.
    pub fn validated(self) -> Result<ValidatedPresentation, PresentationReport> {
        let report = validate_triangle_presentation(&self);
        if report.pass() {
            Ok(ValidatedPresentation(self))
        } else {
            Err(report)
        }
    }
}

/// A presentation that has passed `validate_triangle_presentation`.
#[derive(Clone, Debug)]
pub struct ValidatedPresentation(TrianglePresentation);

impl ValidatedPresentation {
    pub fn as_presentation(&self) -> &TrianglePresentation {
        &self.0
    }

    pub fn into_presentation(self) -> TrianglePresentation {
        self.0
    }

    /// The unique completion of an incident pair.
    pub fn completion(&self, x: Gen, y: Gen) -> Option<Gen> {
        let zs = self.0.completions(x, y);
        zs.first().copied()
    }

    /// The derived plane: points are the generators, the line associated
    /// to x is lambda_derived(x), and lambda is the index identity.
    pub fn derived_correspondence(&self) -> PointLineCorrespondence {
        let p = &self.0;
        let names = p.generators.to_vec();
        let line_names: Vec<String> = names.iter().map(|n| format!("lambda({n})")).collect();
        let lines: Vec<Vec<usize>> = (0..p.generator_count())
            .map(|x| p.lambda_derived(x))
            .collect();
        let plane = ProjectivePlane::new(p.q, names, line_names, lines);
        let lambda = (0..plane.point_count()).collect();
        PointLineCorrespondence { plane, lambda }
    }
}

impl std::ops::Deref for ValidatedPresentation {
    type Target = TrianglePresentation;

    fn deref(&self) -> &TrianglePresentation {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationAxiom {
    GeneratorCount,
    CyclicClosure,
    CompletionCount,
    CompletionUnique,
    TripleCount,
    LambdaBijection,
    DerivedPlane,
}

impl fmt::Display for PresentationAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PresentationAxiom::GeneratorCount => "generator-count",
            PresentationAxiom::CyclicClosure => "cyclic-closure",
            PresentationAxiom::CompletionCount => "completion-count",
            PresentationAxiom::CompletionUnique => "completion-unique",
            PresentationAxiom::TripleCount => "triple-count",
            PresentationAxiom::LambdaBijection => "lambda-bijection",
            PresentationAxiom::DerivedPlane => "derived-plane",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationViolation {
    pub axiom: PresentationAxiom,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", self.describe())]
pub struct PresentationReport {
    pub violation: Option<PresentationViolation>,
}

impl PresentationReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }

    pub fn describe(&self) -> String {
        match &self.violation {
            None => "pass".to_string(),
            Some(v) => format!("axiom {} violated: {}", v.axiom, v.witness),
        }
    }
}

/// Checks every triangle-presentation axiom, including that the derived
/// line system is a projective plane of order q.
pub fn validate_triangle_presentation(p: &TrianglePresentation) -> PresentationReport {
    let fail = |axiom, witness: String| PresentationReport {
        violation: Some(PresentationViolation { axiom, witness }),
    };
    let q = p.q;
    let n = q * q + q + 1;

    if p.generator_count() != n {
        return fail(
            PresentationAxiom::GeneratorCount,
            format!("expected {n} generators for q={q}, found {}", p.generator_count()),
        );
    }
    for &(x, y, z) in &p.triples {
        if !p.triples.contains(&(y, z, x)) {
            return fail(
                PresentationAxiom::CyclicClosure,
                format!("triple ({x},{y},{z}) present but ({y},{z},{x}) missing"),
            );
        }
    }
    for x in 0..n {
        let lam = p.lambda_derived(x);
        if lam.len() != q + 1 {
            return fail(
                PresentationAxiom::CompletionCount,
                format!(
                    "generator {} starts triples with {} distinct second letters (expected {})",
                    p.generators[x],
                    lam.len(),
                    q + 1
                ),
            );
        }
        for y in lam {
            let zs = p.completions(x, y);
            if zs.len() != 1 {
                return fail(
                    PresentationAxiom::CompletionUnique,
                    format!(
                        "pair ({},{}) completes to {} triples",
                        p.generators[x], p.generators[y], zs.len()
                    ),
                );
            }
        }
    }
    let expected_triples = (q + 1) * n;
    if p.triples.len() != expected_triples {
        return fail(
            PresentationAxiom::TripleCount,
            format!(
                "{} ordered triples, expected {expected_triples}",
                p.triples.len()
            ),
        );
    }
    let lines: Vec<Vec<usize>> = (0..n).map(|x| p.lambda_derived(x)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if lines[i] == lines[j] {
                return fail(
                    PresentationAxiom::LambdaBijection,
                    format!(
                        "lambda({}) = lambda({}) = {{{:?}}}",
                        p.generators[i], p.generators[j], lines[i]
                    ),
                );
            }
        }
    }
    let plane = ProjectivePlane::new(
        q,
        p.generators.to_vec(),
        p.generators.iter().map(|g| format!("lambda({g})")).collect(),
        lines,
    );
    let plane_report = validate_plane(&plane);
    if let Some(v) = plane_report.violation {
        return fail(
            PresentationAxiom::DerivedPlane,
            format!("{}: {}", v.axiom, v.witness),
        );
    }
    PresentationReport { violation: None }
}

/// Presentation file: `q <q>`, a `generators` line, then `relator` lines
/// with exactly three declared generator names each.
pub fn parse_presentation(text: &str) -> Result<TrianglePresentation, ParseError> {
    let lines = significant_lines(text)?;
    let mut it = lines.iter();
    let q_line = it
        .next()
        .ok_or_else(|| ParseError::new(0, "empty presentation file"))?;
    if q_line.fields.len() != 2 || q_line.fields[0] != "q" {
        return Err(ParseError::new(q_line.number, "expected `q <order>`"));
    }
    let q = parse_usize(q_line, q_line.fields[1])?;
    let gen_line = it
        .next()
        .ok_or_else(|| ParseError::new(q_line.number, "missing `generators` line"))?;
    if gen_line.fields.len() < 2 || gen_line.fields[0] != "generators" {
        return Err(ParseError::new(
            gen_line.number,
            "expected `generators <name> ...`",
        ));
    }
    let generators: Vec<String> = gen_line.fields[1..].iter().map(|s| s.to_string()).collect();
    {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(ParseError::new(
                    gen_line.number,
                    format!("duplicate generator `{g}`"),
                ));
            }
        }
    }
    let index_of = |line: &crate::textio::Line<'_>, name: &str| {
        generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| ParseError::new(line.number, format!("undeclared generator `{name}`")))
    };
    let mut relators = Vec::new();
    for line in it {
        if line.fields[0] != "relator" {
            return Err(ParseError::new(
                line.number,
                format!("expected `relator`, got `{}`", line.fields[0]),
            ));
        }
        if line.fields.len() != 4 {
            return Err(ParseError::new(
                line.number,
                format!("relator has length {}, expected 3", line.fields.len() - 1),
            ));
        }
        let x = index_of(line, line.fields[1])?;
        let y = index_of(line, line.fields[2])?;
        let z = index_of(line, line.fields[3])?;
        relators.push((x, y, z));
    }
    Ok(TrianglePresentation::new(q, generators, &relators))
}

pub fn serialize_presentation(p: &TrianglePresentation) -> String {
    let mut out = String::new();
    out.push_str("format 1\n");
    out.push_str(&format!("q {}\n", p.q));
    out.push_str(&format!("generators {}\n", p.generators.join(" ")));
    for (x, y, z) in p.canonical_relators() {
        out.push_str(&format!(
            "relator {} {} {}\n",
            p.generators[x], p.generators[y], p.generators[z]
        ));
    }
    out
}

/// Outcome of a completion search; `complete` is false when the node
/// budget ran out before the tree was exhausted.
#[derive(Debug)]
pub struct SearchOutcome {
    pub presentations: Vec<ValidatedPresentation>,
    pub complete: bool,
    pub nodes: u64,
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("correspondence invalid: {0}")]
    InvalidCorrespondence(String),
}

/// Backtracking over completions (x,y) -> z consistent with cyclic closure
/// and uniqueness. Pairs are processed in index order and candidates tried
/// in increasing index order, so the output order is deterministic.
pub fn search_presentations(
    corr: &PointLineCorrespondence,
    limit: usize,
    budget: u64,
) -> Result<SearchOutcome, SearchError> {
    corr.validate().map_err(SearchError::InvalidCorrespondence)?;
    let n = corr.plane.point_count();
    let q = corr.plane.order();
    let names = corr.plane.point_names().to_vec();

    let mut pairs: Vec<(Gen, Gen)> = Vec::new();
    for x in 0..n {
        for &y in corr.line_of(x) {
            pairs.push((x, y));
        }
    }
    pairs.sort_unstable();
    let pair_pos: BTreeMap<(Gen, Gen), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let on_line: Vec<BTreeSet<Gen>> = (0..n)
        .map(|x| corr.line_of(x).iter().copied().collect())
        .collect();

    struct Ctx<'a> {
        pairs: &'a [(Gen, Gen)],
        pair_pos: &'a BTreeMap<(Gen, Gen), usize>,
        on_line: &'a [BTreeSet<Gen>],
        assign: Vec<Option<Gen>>,
        found: Vec<Vec<Option<Gen>>>,
        limit: usize,
        budget: u64,
        nodes: u64,
        exhausted: bool,
    }

    fn backtrack(ctx: &mut Ctx<'_>, from: usize) {
        if ctx.found.len() >= ctx.limit {
            return;
        }
        if ctx.nodes >= ctx.budget {
            ctx.exhausted = true;
            return;
        }
        ctx.nodes += 1;
        let mut i = from;
        while i < ctx.pairs.len() && ctx.assign[i].is_some() {
            i += 1;
        }
        if i == ctx.pairs.len() {
            ctx.found.push(ctx.assign.clone());
            return;
        }
        let (x, y) = ctx.pairs[i];
        // candidates in increasing index order
        for &z in &ctx.on_line[y].clone() {
            if !ctx.on_line[z].contains(&x) {
                continue;
            }
            let closure = [((x, y), z), ((y, z), x), ((z, x), y)];
            let mut placed: Vec<usize> = Vec::new();
            let mut consistent = true;
            for ((a, b), c) in closure {
                let pos = ctx.pair_pos[&(a, b)];
                match ctx.assign[pos] {
                    Some(existing) if existing != c => {
                        consistent = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        ctx.assign[pos] = Some(c);
                        placed.push(pos);
                    }
                }
            }
            if consistent {
                backtrack(ctx, i + 1);
            }
            for pos in placed {
                ctx.assign[pos] = None;
            }
            if ctx.found.len() >= ctx.limit || ctx.exhausted {
                return;
            }
        }
    }

    let mut ctx = Ctx {
        pairs: &pairs,
        pair_pos: &pair_pos,
        on_line: &on_line,
        assign: vec![None; pairs.len()],
        found: Vec::new(),
        limit,
        budget,
        nodes: 0,
        exhausted: false,
    };
    if limit > 0 {
        backtrack(&mut ctx, 0);
    }

    let mut presentations = Vec::new();
    for assignment in &ctx.found {
        let relators: Vec<(Gen, Gen, Gen)> = pairs
            .iter()
            .zip(assignment)
            .map(|(&(x, y), z)| (x, y, z.expect("complete assignment")))
            .collect();
        let p = TrianglePresentation::new(q, names.clone(), &relators);
        let validated = p
            .validated()
            .expect("search produces only valid presentations");
        presentations.push(validated);
    }
    Ok(SearchOutcome {
        presentations,
        complete: !ctx.exhausted,
        nodes: ctx.nodes,
    })
}
