//! Finite projective planes and point-line correspondences.
//!
//! Prime orders are constructed from homogeneous coordinates over the
//! q-element field; prime-power orders enter through ingested incidence
//! tables. Point and line numbering is canonical (lexicographic on
//! coordinates for constructed planes, file order for ingested ones) so
//! that everything derived downstream is reproducible bit for bit.

use std::fmt;

use thiserror::Error;

use crate::textio::{parse_usize, significant_lines, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("plane order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("order {0} is not prime; ingest an incidence table for prime-power orders")]
    UnsupportedOrder(usize),
}

/// A finite projective plane of order q: q^2+q+1 points (numbered 0..n)
/// and as many lines, each line a sorted set of point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    order: usize,
    point_names: Vec<String>,
    line_names: Vec<String>,
    lines: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    pub fn new(
        order: usize,
        point_names: Vec<String>,
        line_names: Vec<String>,
        lines: Vec<Vec<usize>>,
    ) -> Self {
        let mut lines = lines;
        for l in &mut lines {
            l.sort_unstable();
        }
        ProjectivePlane {
            order,
            point_names,
            line_names,
            lines,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Expected number of points and lines, q^2 + q + 1.
    pub fn size(&self) -> usize {
        self.order * self.order + self.order + 1
    }

    pub fn point_count(&self) -> usize {
        self.point_names.len()
    }

    pub fn point_names(&self) -> &[String] {
        &self.point_names
    }

    pub fn line_names(&self) -> &[String] {
        &self.line_names
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Lines through each point, by point index.
    pub fn lines_through(&self) -> Vec<Vec<usize>> {
        let mut through = vec![Vec::new(); self.point_count()];
        for (li, line) in self.lines.iter().enumerate() {
            for &p in line {
                if p < through.len() {
                    through[p].push(li);
                }
            }
        }
        through
    }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Normalized homogeneous coordinates over F_q: first nonzero entry 1,
/// listed in lexicographic order.
fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// The plane of 1- and 2-dimensional subspaces of F_q^3, for prime q.
pub fn build_pg2(q: usize) -> Result<ProjectivePlane, PlaneError> {
    if q < 2 {
        return Err(PlaneError::OrderTooSmall(q));
    }
    if !is_prime(q) {
        return Err(PlaneError::UnsupportedOrder(q));
    }
    let points = normalized_triples(q);
    let duals = normalized_triples(q);
    let name = |v: &[usize; 3]| format!("[{}:{}:{}]", v[0], v[1], v[2]);
    let lines: Vec<Vec<usize>> = duals
        .iter()
        .map(|d| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| (p[0] * d[0] + p[1] * d[1] + p[2] * d[2]) % q == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(ProjectivePlane::new(
        q,
        points.iter().map(name).collect(),
        duals.iter().map(name).collect(),
        lines,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneViolation {
    pub axiom: PlaneAxiom,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneAxiom {
    PointCount,
    LineCount,
    PointsPerLine,
    LinesPerPoint,
    TwoPointsOneLine,
    TwoLinesOnePoint,
}

impl fmt::Display for PlaneAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlaneAxiom::PointCount => "point-count",
            PlaneAxiom::LineCount => "line-count",
            PlaneAxiom::PointsPerLine => "points-per-line",
            PlaneAxiom::LinesPerPoint => "lines-per-point",
            PlaneAxiom::TwoPointsOneLine => "two-points-one-line",
            PlaneAxiom::TwoLinesOnePoint => "two-lines-one-point",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneReport {
    pub violation: Option<PlaneViolation>,
}

impl PlaneReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks all plane axioms exhaustively and reports the first violation.
pub fn validate_plane(plane: &ProjectivePlane) -> PlaneReport {
    let q = plane.order();
    let n = plane.size();
    let fail = |axiom, witness: String| PlaneReport {
        violation: Some(PlaneViolation { axiom, witness }),
    };

    if plane.point_count() != n {
        return fail(
            PlaneAxiom::PointCount,
            format!("expected {n} points, found {}", plane.point_count()),
        );
    }
    if plane.lines().len() != n {
        return fail(
            PlaneAxiom::LineCount,
            format!("expected {n} lines, found {}", plane.lines().len()),
        );
    }
    for (li, line) in plane.lines().iter().enumerate() {
        let distinct = line.windows(2).all(|w| w[0] != w[1]);
        if line.len() != q + 1 || !distinct {
            return fail(
                PlaneAxiom::PointsPerLine,
                format!("line {li} has {} points (expected {})", line.len(), q + 1),
            );
        }
    }
    let through = plane.lines_through();
    for (p, ls) in through.iter().enumerate() {
        if ls.len() != q + 1 {
            return fail(
                PlaneAxiom::LinesPerPoint,
                format!("point {p} lies on {} lines (expected {})", ls.len(), q + 1),
            );
        }
    }
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            let common = intersect_count(&through[p1], &through[p2]);
            if common != 1 {
                return fail(
                    PlaneAxiom::TwoPointsOneLine,
                    format!("points {p1} and {p2} lie on {common} common lines"),
                );
            }
        }
    }
    for l1 in 0..n {
        for l2 in l1 + 1..n {
            let common = intersect_count(&plane.lines()[l1], &plane.lines()[l2]);
            if common != 1 {
                return fail(
                    PlaneAxiom::TwoLinesOnePoint,
                    format!("lines {l1} and {l2} meet in {common} points"),
                );
            }
        }
    }
    PlaneReport { violation: None }
}

fn intersect_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Incidence-table text: `plane q <q>` then one `line <id> <pt> ...` per line.
pub fn parse_incidence(text: &str) -> Result<ProjectivePlane, ParseError> {
    let lines = significant_lines(text)?;
    let mut it = lines.iter();
    let header = it
        .next()
        .ok_or_else(|| ParseError::new(0, "empty incidence file"))?;
    if header.fields.len() != 3 || header.fields[0] != "plane" || header.fields[1] != "q" {
        return Err(ParseError::new(
            header.number,
            "expected header `plane q <q>`",
        ));
    }
    let q = parse_usize(header, header.fields[2])?;
    let n = q * q + q + 1;
    let mut table: Vec<Vec<usize>> = Vec::new();
    for line in it {
        if line.fields.len() < 2 || line.fields[0] != "line" {
            return Err(ParseError::new(
                line.number,
                "expected `line <id> <point> ...`",
            ));
        }
        let id = parse_usize(line, line.fields[1])?;
        if id != table.len() {
            return Err(ParseError::new(
                line.number,
                format!("line ids must be consecutive from 0, got {id}"),
            ));
        }
        let mut pts = Vec::new();
        for f in &line.fields[2..] {
            let p = parse_usize(line, f)?;
            if p >= n {
                return Err(ParseError::new(
                    line.number,
                    format!("point id {p} out of range for order {q} (max {})", n - 1),
                ));
            }
            pts.push(p);
        }
        table.push(pts);
    }
    let point_names = (0..n).map(|i| i.to_string()).collect();
    let line_names = (0..table.len()).map(|i| i.to_string()).collect();
    Ok(ProjectivePlane::new(q, point_names, line_names, table))
}

pub fn serialize_incidence(plane: &ProjectivePlane) -> String {
    let mut out = String::new();
    out.push_str("format 1\n");
    out.push_str(&format!("plane q {}\n", plane.order()));
    for (i, line) in plane.lines().iter().enumerate() {
        let pts: Vec<String> = line.iter().map(ToString::to_string).collect();
        out.push_str(&format!("line {} {}\n", i, pts.join(" ")));
    }
    out
}

/// A plane together with a bijection from points to lines.
#[derive(Clone, Debug)]
pub struct PointLineCorrespondence {
    pub plane: ProjectivePlane,
    /// lambda[p] = index of the line associated to point p.
    pub lambda: Vec<usize>,
}

impl PointLineCorrespondence {
    /// The line associated to point p, as a sorted set of point indices.
    pub fn line_of(&self, p: usize) -> &[usize] {
        &self.plane.lines()[self.lambda[p]]
    }

    /// Plane axioms plus bijectivity of lambda.
    pub fn validate(&self) -> Result<(), String> {
        let report = validate_plane(&self.plane);
        if let Some(v) = report.violation {
            return Err(format!("plane axiom {} violated: {}", v.axiom, v.witness));
        }
        let n = self.plane.size();
        if self.lambda.len() != n {
            return Err(format!(
                "lambda defined on {} points, expected {n}",
                self.lambda.len()
            ));
        }
        let mut seen = vec![false; n];
        for (p, &l) in self.lambda.iter().enumerate() {
            if l >= n {
                return Err(format!("lambda({p}) = {l} is not a line index"));
            }
            if seen[l] {
                return Err(format!("lambda is not injective: line {l} hit twice"));
            }
            seen[l] = true;
        }
        Ok(())
    }
}

/// Correspondence file: `correspondence q <q>`, a `points` line naming all
/// points, then one `lambda <point> <point> ...` line per point giving the
/// associated line as a point set.
pub fn parse_correspondence(text: &str) -> Result<PointLineCorrespondence, ParseError> {
    let lines = significant_lines(text)?;
    let mut it = lines.iter();
    let header = it
        .next()
        .ok_or_else(|| ParseError::new(0, "empty correspondence file"))?;
    if header.fields.len() != 3 || header.fields[0] != "correspondence" || header.fields[1] != "q"
    {
        return Err(ParseError::new(
            header.number,
            "expected header `correspondence q <q>`",
        ));
    }
    let q = parse_usize(header, header.fields[2])?;
    let points_line = it
        .next()
        .ok_or_else(|| ParseError::new(header.number, "missing `points` line"))?;
    if points_line.fields[0] != "points" || points_line.fields.len() < 2 {
        return Err(ParseError::new(
            points_line.number,
            "expected `points <name> ...`",
        ));
    }
    let names: Vec<String> = points_line.fields[1..].iter().map(|s| s.to_string()).collect();
    let index_of = |line: &crate::textio::Line<'_>, name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ParseError::new(line.number, format!("unknown point `{name}`")))
    };
    let mut lambda_sets: Vec<Option<Vec<usize>>> = vec![None; names.len()];
    for line in it {
        if line.fields.len() < 2 || line.fields[0] != "lambda" {
            return Err(ParseError::new(
                line.number,
                "expected `lambda <point> <point> ...`",
            ));
        }
        let p = index_of(line, line.fields[1])?;
        if lambda_sets[p].is_some() {
            return Err(ParseError::new(
                line.number,
                format!("duplicate lambda line for `{}`", line.fields[1]),
            ));
        }
        let mut set = Vec::new();
        for f in &line.fields[2..] {
            set.push(index_of(line, f)?);
        }
        lambda_sets[p] = Some(set);
    }
    if let Some(p) = lambda_sets.iter().position(Option::is_none) {
        return Err(ParseError::new(
            0,
            format!("missing lambda line for point `{}`", names[p]),
        ));
    }
    let line_sets: Vec<Vec<usize>> = lambda_sets.into_iter().map(Option::unwrap).collect();
    let line_names: Vec<String> = names.iter().map(|n| format!("lambda({n})")).collect();
    let plane = ProjectivePlane::new(q, names, line_names, line_sets);
    let lambda = (0..plane.size().min(plane.lines().len())).collect();
    Ok(PointLineCorrespondence { plane, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg2_2_is_the_fano_plane() {
        let plane = build_pg2(2).unwrap();
        assert_eq!(plane.point_count(), 7);
        assert_eq!(plane.lines().len(), 7);
        assert!(plane.lines().iter().all(|l| l.len() == 3));
        assert!(validate_plane(&plane).pass());
        // canonical lines under lexicographic coordinate order
        let expected: Vec<Vec<usize>> = vec![
            vec![1, 3, 5],
            vec![0, 3, 4],
            vec![2, 3, 6],
            vec![0, 1, 2],
            vec![1, 4, 6],
            vec![0, 5, 6],
            vec![2, 4, 5],
        ];
        assert_eq!(plane.lines(), expected.as_slice());
    }

    #[test]
    fn pg2_3_passes_validation() {
        let plane = build_pg2(3).unwrap();
        assert_eq!(plane.point_count(), 13);
        assert_eq!(plane.lines().len(), 13);
        assert!(plane.lines().iter().all(|l| l.len() == 4));
        assert!(validate_plane(&plane).pass());
    }

    #[test]
    fn non_prime_and_tiny_orders_are_rejected() {
        assert_eq!(build_pg2(6), Err(PlaneError::UnsupportedOrder(6)));
        assert_eq!(build_pg2(1), Err(PlaneError::OrderTooSmall(1)));
        assert_eq!(build_pg2(0), Err(PlaneError::OrderTooSmall(0)));
    }

    #[test]
    fn deleting_an_incidence_is_caught_with_a_witness() {
        let mut plane = build_pg2(2).unwrap();
        plane.lines[3].pop();
        let report = validate_plane(&plane);
        let v = report.violation.expect("must fail");
        assert_eq!(v.axiom, PlaneAxiom::PointsPerLine);
        assert!(v.witness.contains("line 3 has 2 points"), "{}", v.witness);
    }

    #[test]
    fn incidence_roundtrip_and_errors() {
        let plane = build_pg2(2).unwrap();
        let text = serialize_incidence(&plane);
        let back = parse_incidence(&text).unwrap();
        assert_eq!(back.lines(), plane.lines());
        assert_eq!(back.order(), 2);

        assert!(parse_incidence("plane q 2\nline 1 0 1 2\n").is_err());
        assert!(parse_incidence("plane q 2\nline 0 0 1 9\n").is_err());
    }

    #[test]
    fn build_pg2_is_stable_across_runs() {
        assert_eq!(build_pg2(3).unwrap(), build_pg2(3).unwrap());
    }
}
