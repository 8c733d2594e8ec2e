//! Command implementations behind the `ckt` subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use ckt_core::ktheory::{
    building_k_theory, k_theory_rank1, k_theory_rank2, kunneth_predict, tensor_system,
    DiagVerdict, Diagnostic, KTheoryError, KTheoryResult, KunnethPrediction,
};
use ckt_core::plane::{parse_correspondence, parse_incidence, validate_plane};
use ckt_core::presentation::{
    parse_presentation, search_presentations, serialize_presentation,
    validate_triangle_presentation, ValidatedPresentation,
};
use ckt_core::rank1::{ck_simplicity_check, graph_to_matrix, parse_graph, validate_graph};
use ckt_core::system::{parse_matrix, TransitionSystem};
use ckt_core::tiles::TileSystem;
use ckt_core::words::{check_conditions, HCheckOptions, HReport, Verdict};

use crate::report::ReportDocument;
use crate::{CmdError, Command, Format, OutputOpts};

pub fn dispatch(command: Command) -> Result<(), CmdError> {
    match command {
        Command::Validate {
            presentation,
            graph,
            incidence,
            output,
        } => cmd_validate(presentation, graph, incidence, &output),
        Command::Ktheory {
            presentation,
            graph,
            tensor,
            matrix_out,
            output,
        } => cmd_ktheory(presentation, graph, tensor, matrix_out, &output),
        Command::Search {
            q,
            lambda,
            limit,
            out,
            budget,
            output,
        } => cmd_search(q, &lambda, limit, &out, budget, &output),
    }
}

fn read_input(report: &mut ReportDocument, path: &Path) -> Result<String, CmdError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CmdError::Parse(format!("cannot read {}: {e}", path.display())))?;
    report.add_input(&path.display().to_string(), &bytes);
    String::from_utf8(bytes)
        .map_err(|_| CmdError::Parse(format!("{} is not UTF-8 text", path.display())))
}

fn emit(report: &ReportDocument, output: &OutputOpts) -> Result<(), CmdError> {
    let rendered = match output.format {
        Format::Text => report.render_text(),
        Format::Json => report.render_json(),
    };
    print!("{rendered}");
    if let Some(path) = &output.report {
        std::fs::write(path, &rendered)
            .map_err(|e| CmdError::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    if output.timings {
        report.print_timings_to_stderr();
    }
    Ok(())
}

struct Stage<'a> {
    report: &'a mut ReportDocument,
    start: Instant,
    name: String,
}

impl<'a> Stage<'a> {
    fn begin(report: &'a mut ReportDocument, name: &str) -> Self {
        Stage {
            report,
            start: Instant::now(),
            name: name.to_string(),
        }
    }

    fn finish(self) -> &'a mut ReportDocument {
        self.report.timings.push((self.name, self.start.elapsed()));
        self.report
    }
}

/// Parse + validate the presentation and describe it in the report.
fn presentation_sections(
    report: &mut ReportDocument,
    text: &str,
) -> Result<ValidatedPresentation, CmdError> {
    let stage = Stage::begin(report, "parse");
    let pres = parse_presentation(text).map_err(|e| CmdError::Parse(e.to_string()))?;
    let report = stage.finish();

    let stage = Stage::begin(report, "validate");
    let q = pres.q();
    let validation = validate_triangle_presentation(&pres);
    let relators = pres.canonical_relators().len();
    let triples = pres.triples().len();
    let generators = pres.generator_count();
    let report = stage.finish();

    let section = report.section("presentation");
    section
        .kv("q", q)
        .kv("generators", generators)
        .kv("relators", relators)
        .kv("triples", triples);
    match &validation.violation {
        None => {
            section.kv("valid", "pass");
        }
        Some(v) => {
            section
                .kv("valid", "fail")
                .kv("axiom", v.axiom)
                .kv("witness", &v.witness);
        }
    }

    let validated = pres
        .validated()
        .map_err(|r| CmdError::Failure(format!("presentation invalid: {}", r.describe())))?;

    let corr = validated.derived_correspondence();
    let plane_report = validate_plane(&corr.plane);
    let section = report.section("plane");
    section
        .kv("q", corr.plane.order())
        .kv("points", corr.plane.point_count())
        .kv("lines", corr.plane.lines().len())
        .kv("points_per_line", corr.plane.order() + 1)
        .kv("valid", if plane_report.pass() { "pass" } else { "fail" });
    if let Some(v) = &plane_report.violation {
        section.kv("axiom", v.axiom).kv("witness", &v.witness);
    }
    if !plane_report.pass() {
        return Err(CmdError::Failure("derived plane invalid".to_string()));
    }
    Ok(validated)
}

fn hreport_section(report: &mut ReportDocument, system: &TransitionSystem) -> HReport {
    let stage = Stage::begin(report, "hcheck");
    let checks = check_conditions(system, &HCheckOptions::default());
    let report = stage.finish();
    report.section("hreport").raw(&checks.render());
    checks
}

fn ktheory_section(report: &mut ReportDocument, k: &KTheoryResult) {
    let invariant_factors = |g: &ckt_core::zlin::AbelianGroup| {
        if g.torsion().is_empty() {
            "-".to_string()
        } else {
            g.torsion()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        }
    };
    let section = report.section("ktheory");
    section
        .kv("rank_K0", k.k0.free_rank())
        .kv("rank_K1", k.k1.free_rank())
        .kv("invariant_factors_K0", invariant_factors(&k.k0))
        .kv("invariant_factors_K1", invariant_factors(&k.k1))
        .raw(&k.render());
}

fn gate_hreport(checks: &HReport) -> Result<(), CmdError> {
    match checks
        .conditions
        .iter()
        .find(|c| !matches!(c.verdict, Verdict::Pass | Verdict::Vacuous))
    {
        None => Ok(()),
        Some(c) => Err(CmdError::Failure(format!(
            "H-check failed: {} is {}",
            c.name, c.verdict
        ))),
    }
}

fn map_ktheory_error(e: KTheoryError) -> CmdError {
    match e {
        KTheoryError::HGateFailed { condition, verdict } => {
            CmdError::Failure(format!("H-check failed: {condition} is {verdict}"))
        }
        KTheoryError::InternalConsistency(m) => CmdError::Internal(m),
    }
}

fn write_export(dir: &Path, name: &str, content: &str) -> Result<String, CmdError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CmdError::Parse(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CmdError::Parse(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

pub fn cmd_validate(
    presentation: Option<PathBuf>,
    graph: Option<PathBuf>,
    incidence: Option<PathBuf>,
    output: &OutputOpts,
) -> Result<(), CmdError> {
    let mut report = ReportDocument::new("validate");
    let outcome: Result<(), CmdError> = if let Some(path) = presentation {
        let text = read_input(&mut report, &path)?;
        presentation_sections(&mut report, &text).map(|_| ())
    } else if let Some(path) = graph {
        let text = read_input(&mut report, &path)?;
        let g = parse_graph(&text).map_err(|e| CmdError::Parse(e.to_string()))?;
        let validation = validate_graph(&g);
        let section = report.section("graph");
        section
            .kv("vertices", g.vertex_count)
            .kv("edges", g.edges.len())
            .kv("valid", if validation.pass() { "pass" } else { "fail" });
        if let Some(err) = &validation.error {
            section.kv("witness", err);
        }
        if validation.thinness_warnings.is_empty() {
            section.kv("thin_vertices", "-");
        } else {
            let list = validation
                .thinness_warnings
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            section.kv("thin_vertices", list);
        }
        if validation.pass() {
            Ok(())
        } else {
            Err(CmdError::Failure("graph invalid".to_string()))
        }
    } else {
        let path = incidence.expect("clap guarantees one input");
        let text = read_input(&mut report, &path)?;
        let plane = parse_incidence(&text).map_err(|e| CmdError::Parse(e.to_string()))?;
        let validation = validate_plane(&plane);
        let section = report.section("plane");
        section
            .kv("q", plane.order())
            .kv("points", plane.point_count())
            .kv("lines", plane.lines().len())
            .kv("valid", if validation.pass() { "pass" } else { "fail" });
        if let Some(v) = &validation.violation {
            section.kv("axiom", v.axiom).kv("witness", &v.witness);
        }
        if validation.pass() {
            Ok(())
        } else {
            Err(CmdError::Failure("plane invalid".to_string()))
        }
    };
    emit(&report, output)?;
    outcome
}

pub fn cmd_ktheory(
    presentation: Option<PathBuf>,
    graph: Option<PathBuf>,
    tensor: Option<Vec<PathBuf>>,
    matrix_out: Option<PathBuf>,
    output: &OutputOpts,
) -> Result<(), CmdError> {
    let mut report = ReportDocument::new("ktheory");
    let outcome = if let Some(path) = presentation {
        ktheory_presentation(&mut report, &path, matrix_out.as_deref())
    } else if let Some(path) = graph {
        ktheory_graph(&mut report, &path, matrix_out.as_deref())
    } else {
        let files = tensor.expect("clap guarantees one input");
        ktheory_tensor(&mut report, &files[0], &files[1], matrix_out.as_deref())
    };
    emit(&report, output)?;
    outcome
}

fn ktheory_presentation(
    report: &mut ReportDocument,
    path: &Path,
    matrix_out: Option<&Path>,
) -> Result<(), CmdError> {
    let text = read_input(report, path)?;
    let validated = presentation_sections(report, &text)?;

    let stage = Stage::begin(report, "alphabet");
    let ts = TileSystem::from_presentation(&validated)
        .map_err(|e| CmdError::Internal(e.to_string()))?;
    let report = stage.finish();
    let q = ts.q();
    report
        .section("alphabet")
        .kv("tiles", ts.tiles().len())
        .kv("m1_row_sum", q * q)
        .kv("m1_col_sum", q * q)
        .kv("m2_row_sum", q * q)
        .kv("m2_col_sum", q * q);

    let checks = hreport_section(report, ts.system());
    gate_hreport(&checks)?;

    let stage = Stage::begin(report, "ktheory");
    let k = building_k_theory(&ts).map_err(map_ktheory_error)?;
    let report = stage.finish();
    ktheory_section(report, &k);

    if let Some(dir) = matrix_out {
        let stage = Stage::begin(report, "export");
        let files = vec![
            write_export(dir, "M1.m", &ts.system().export_matrix(0, "M1"))?,
            write_export(dir, "M2.m", &ts.system().export_matrix(1, "M2"))?,
            write_export(dir, "tiles.txt", &ts.export_tile_table())?,
            write_export(dir, "letters.txt", &ts.system().export_letters())?,
        ];
        let report = stage.finish();
        let section = report.section("export");
        for f in files {
            section.kv("file", f);
        }
    }
    Ok(())
}

fn ktheory_graph(
    report: &mut ReportDocument,
    path: &Path,
    matrix_out: Option<&Path>,
) -> Result<(), CmdError> {
    let text = read_input(report, path)?;
    let stage = Stage::begin(report, "parse");
    let g = parse_graph(&text).map_err(|e| CmdError::Parse(e.to_string()))?;
    let report = stage.finish();

    let validation = validate_graph(&g);
    {
        let section = report.section("graph");
        section
            .kv("vertices", g.vertex_count)
            .kv("edges", g.edges.len())
            .kv("valid", if validation.pass() { "pass" } else { "fail" });
        if let Some(err) = &validation.error {
            section.kv("witness", err);
        }
    }
    if !validation.pass() {
        return Err(CmdError::Failure("graph invalid".to_string()));
    }

    let stage = Stage::begin(report, "alphabet");
    let sys = graph_to_matrix(&g);
    let report = stage.finish();
    {
        let deco = sys.decoration().expect("graph systems carry a decoration");
        report
            .section("alphabet")
            .kv("letters", sys.len())
            .kv("decorations", deco.targets.len());
    }

    // rank-1 K-theory is defined without an H gate; the report is
    // informational here
    let _checks = hreport_section(report, &sys);

    let stage = Stage::begin(report, "ktheory");
    let simplicity = ck_simplicity_check(sys.matrix(0));
    let k = k_theory_rank1(sys.matrix(0));
    let report = stage.finish();
    report
        .section("simplicity")
        .kv("verdict", simplicity.describe());
    ktheory_section(report, &k);

    if let Some(dir) = matrix_out {
        let files = vec![
            write_export(dir, "M.m", &sys.export_matrix(0, "M"))?,
            write_export(dir, "letters.txt", &sys.export_letters())?,
        ];
        let section = report.section("export");
        for f in files {
            section.kv("file", f);
        }
    }
    Ok(())
}

fn ktheory_tensor(
    report: &mut ReportDocument,
    left: &Path,
    right: &Path,
    matrix_out: Option<&Path>,
) -> Result<(), CmdError> {
    let left_text = read_input(report, left)?;
    let right_text = read_input(report, right)?;
    let stage = Stage::begin(report, "parse");
    let (_, ma) = parse_matrix(&left_text).map_err(|e| CmdError::Parse(e.to_string()))?;
    let (_, mb) = parse_matrix(&right_text).map_err(|e| CmdError::Parse(e.to_string()))?;
    let report = stage.finish();

    let stage = Stage::begin(report, "alphabet");
    let sys = tensor_system(&ma, &mb);
    let report = stage.finish();
    report
        .section("alphabet")
        .kv("letters", sys.len())
        .kv("left_letters", ma.n())
        .kv("right_letters", mb.n());

    let checks = hreport_section(report, &sys);
    gate_hreport(&checks)?;

    let stage = Stage::begin(report, "ktheory");
    let mut k = k_theory_rank2(&sys, &checks).map_err(map_ktheory_error)?;
    let ka = k_theory_rank1(&ma);
    let kb = k_theory_rank1(&mb);
    let prediction = kunneth_predict(&(ka.k0, ka.k1), &(kb.k0, kb.k1));
    let kunneth = match prediction {
        KunnethPrediction::Exact { k0, k1 } => Diagnostic {
            name: "kunneth".to_string(),
            verdict: if k0 == k.k0 && k1 == k.k1 {
                DiagVerdict::Pass
            } else {
                DiagVerdict::Fail
            },
            detail: format!("prediction K0={}, K1={}", k0.render(), k1.render()),
        },
        KunnethPrediction::Unresolved { reason } => Diagnostic {
            name: "kunneth".to_string(),
            verdict: DiagVerdict::NotApplicable,
            detail: reason,
        },
    };
    let kunneth_failed = kunneth.verdict == DiagVerdict::Fail;
    k.diagnostics.push(kunneth);
    let report = stage.finish();
    ktheory_section(report, &k);
    if kunneth_failed {
        return Err(CmdError::Internal(
            "rank-2 K-theory disagrees with the Kunneth prediction".to_string(),
        ));
    }

    if let Some(dir) = matrix_out {
        let files = vec![
            write_export(dir, "M1.m", &sys.export_matrix(0, "M1"))?,
            write_export(dir, "M2.m", &sys.export_matrix(1, "M2"))?,
            write_export(dir, "letters.txt", &sys.export_letters())?,
        ];
        let section = report.section("export");
        for f in files {
            section.kv("file", f);
        }
    }
    Ok(())
}

pub fn cmd_search(
    q: usize,
    lambda: &Path,
    limit: usize,
    out: &Path,
    budget: u64,
    output: &OutputOpts,
) -> Result<(), CmdError> {
    let mut report = ReportDocument::new("search");
    if q > 3 {
        return Err(CmdError::Failure(format!(
            "search is limited to planes of order q <= 3, got q = {q}"
        )));
    }
    let text = read_input(&mut report, lambda)?;
    let corr = parse_correspondence(&text).map_err(|e| CmdError::Parse(e.to_string()))?;
    if corr.plane.order() != q {
        return Err(CmdError::Failure(format!(
            "correspondence file has order {}, expected q = {q}",
            corr.plane.order()
        )));
    }
    corr.validate().map_err(CmdError::Failure)?;

    let stage = Stage::begin(&mut report, "search");
    let outcome = search_presentations(&corr, limit, budget)
        .map_err(|e| CmdError::Failure(e.to_string()))?;
    let report_ref = stage.finish();

    let mut files = Vec::new();
    for (i, found) in outcome.presentations.iter().enumerate() {
        let name = format!("presentation_{i:03}.tri");
        files.push(write_export(out, &name, &serialize_presentation(found))?);
    }
    let section = report_ref.section("search");
    section
        .kv("q", q)
        .kv("limit", limit)
        .kv("found", outcome.presentations.len())
        .kv("complete", outcome.complete)
        .kv("nodes", outcome.nodes);
    for f in &files {
        section.kv("file", f);
    }
    emit(&report, output)?;
    if outcome.presentations.is_empty() {
        return Err(CmdError::Failure(
            "no presentations found within the limit".to_string(),
        ));
    }
    Ok(())
}
