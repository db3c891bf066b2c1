use std::fmt::Write as _;
use std::path::Path;

use nagel2::lpmodel::{
    self, figure1, figure1_csv, figure1_json, solve_case as solve_cell, Bound, CaseResult,
    CaseSpec, ModelError, Scenario,
};
use nagel2::rational::{approx, format_rat, int};
use nagel2::ratlp::text::{outcome_to_text, program_to_text};
use nagel2::ratlp::LpOutcome;
use nagel2::search::{
    check_lemma_corpus, spot_check_lemmas, verify_cover_theorem, verify_nagel_k2, CorpusSpec,
    EnumerationSpec, SearchError, VerificationReport,
};
use nagel2::setfam::io::{read_family, Format};
use nagel2::setfam::{
    incidence, is_two_good, minimal_covers, minimal_two_good_sets, trace_counts, Element,
    FamilyError, Mask, SetFamily,
};
use nagel2::BigRational;

use crate::{
    AnalyzeArgs, CheckLemmasArgs, CliError, CoverTheoremArgs, FamilyInput, InputFormat,
    LemmaCorpusArgs, MinObjectiveArgs, SearchNagelArgs, SolveBaseArgs, SolveCaseArgs, TableArgs,
    TableFormat,
};

fn model_error(e: ModelError) -> CliError {
    match e {
        ModelError::CertificateRejected(m) => {
            CliError::Consistency(format!("certificate rejected: {m}"))
        }
        other => CliError::Usage(other.to_string()),
    }
}

fn search_error(e: SearchError) -> CliError {
    match e {
        SearchError::Family(_) => CliError::Input(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn rational(value: &BigRational, with_approx: bool) -> String {
    if with_approx {
        format!("{} ~ {}", format_rat(value), approx(value))
    } else {
        format_rat(value)
    }
}

fn bound_line(bound: &Bound, with_approx: bool) -> String {
    match bound.value() {
        Some(v) => rational(v, with_approx),
        None => bound.to_string(),
    }
}

fn json_text(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    out.push('\n');
    out
}

pub fn table(args: &TableArgs, with_approx: bool) -> Result<String, CliError> {
    let cells = figure1().map_err(model_error)?;
    if let Some(dir) = &args.dump_lp {
        dump_programs(dir, &cells)?;
    }
    Ok(match args.format {
        TableFormat::Csv => {
            let mut out = figure1_csv(&cells, false);
            if with_approx {
                out.push('\n');
                out.push_str(&figure1_csv(&cells, true));
            }
            out
        }
        TableFormat::Json => {
            let mut value = figure1_json(&cells, args.certificates);
            if with_approx {
                let list = value["cells"].as_array_mut().expect("cells is an array");
                for (cell, result) in list.iter_mut().zip(&cells) {
                    cell["approx"] = serde_json::json!(result.bound.value().map(approx));
                }
            }
            json_text(&value)
        }
    })
}

fn dump_programs(dir: &Path, cells: &[CaseResult]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("writing {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for cell in cells {
        let name = format!("s{}_{}.lp", cell.spec.s, cell.spec.scenario);
        std::fs::write(dir.join(name), program_to_text(&cell.program)).map_err(io)?;
    }
    Ok(())
}

fn report_case(result: &CaseResult, dump_lp: bool, certificate: bool, with_approx: bool) -> String {
    let mut out = String::new();
    if dump_lp {
        out.push_str(&program_to_text(&result.program));
    }
    if certificate || dump_lp {
        out.push_str(&outcome_to_text(&result.program, &result.outcome));
    } else {
        writeln!(out, "{}", bound_line(&result.bound, with_approx)).unwrap();
    }
    out
}

pub fn solve_case(args: &SolveCaseArgs, with_approx: bool) -> Result<String, CliError> {
    let spec = CaseSpec::new(args.s.into(), Scenario::from_covered_count(args.c.into()))
        .map_err(model_error)?;
    let result = solve_cell(spec).map_err(model_error)?;
    Ok(report_case(
        &result,
        args.dump_lp,
        args.certificate,
        with_approx,
    ))
}

pub fn solve_base(args: &SolveBaseArgs, with_approx: bool) -> Result<String, CliError> {
    let scenario = if args.aux_bc {
        Scenario::AuxBC
    } else {
        Scenario::Base
    };
    let spec = CaseSpec::new(args.s.into(), scenario).map_err(model_error)?;
    let result = solve_cell(spec).map_err(model_error)?;
    Ok(report_case(
        &result,
        args.dump_lp,
        args.certificate,
        with_approx,
    ))
}

fn objective_terms(s: usize, text: &str) -> Vec<(String, BigRational)> {
    match text {
        "q_singleton" => vec![(lpmodel::singleton_var(0), int(1))],
        "sum_singletons" => lpmodel::sum_of_singletons(s),
        "total" => lpmodel::total_var_terms(s),
        list => list
            .split('+')
            .map(|name| (name.trim().to_string(), int(1)))
            .collect(),
    }
}

pub fn min_objective(args: &MinObjectiveArgs, with_approx: bool) -> Result<String, CliError> {
    let s = args.s.into();
    let terms = objective_terms(s, &args.objective);
    let mut lp = lpmodel::build_base(s).map_err(model_error)?;
    lp.set_objective(terms.iter().cloned());
    let outcome = lpmodel::min_objective(s, &terms).map_err(model_error)?;
    if !outcome.verify(&lp) {
        return Err(CliError::Consistency(
            "certificate rejected for the objective".into(),
        ));
    }
    if args.certificate {
        return Ok(outcome_to_text(&lp, &outcome));
    }
    Ok(match &outcome {
        LpOutcome::Optimal { value, .. } => format!("{}\n", rational(value, with_approx)),
        LpOutcome::Infeasible { .. } => "infeasible\n".to_string(),
        LpOutcome::Unbounded { .. } => "unbounded\n".to_string(),
    })
}

fn load(input: &FamilyInput) -> Result<SetFamily, CliError> {
    let format = input.format.map(|f| match f {
        InputFormat::Json => Format::Json,
        InputFormat::Text => Format::Text,
    });
    read_family(&input.file, format).map_err(|e| CliError::Input(e.to_string()))
}

/// `2,3,4`, `{2,3,4}` or `2 3 4`.
fn parse_base(text: &str, family: &SetFamily) -> Result<Mask, CliError> {
    let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut elements = Vec::new();
    for tok in trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let e: u8 = tok
            .parse()
            .map_err(|_| CliError::Usage(format!("`{tok}` in --base is not an element")))?;
        if e == 0 || e > family.n() {
            return Err(CliError::Usage(format!(
                "element {e} in --base is outside 1..={}",
                family.n()
            )));
        }
        elements.push(e);
    }
    Ok(Mask::from_elements(elements))
}

pub fn analyze(args: &AnalyzeArgs, with_approx: bool) -> Result<String, CliError> {
    let mut family = load(&args.input)?;
    if args.add_empty {
        family = family.with_empty();
    }
    if family.is_empty() {
        return Err(CliError::Input(FamilyError::EmptyFamily.to_string()));
    }
    let mut out = String::new();
    writeln!(out, "n: {}", family.n()).unwrap();
    writeln!(out, "m: {}", family.len()).unwrap();
    writeln!(out, "union_closed: {}", family.is_union_closed()).unwrap();
    let freqs: Vec<String> = family
        .element_frequencies()
        .iter()
        .map(|(e, c)| format!("{e}:{c}"))
        .collect();
    writeln!(out, "frequencies: {}", freqs.join(" ")).unwrap();
    for k in 1..=2usize {
        match family.kth_frequency(k) {
            Ok((e, _, r)) => {
                writeln!(out, "f_{k}: {} (element {e})", rational(&r, with_approx)).unwrap()
            }
            Err(_) => writeln!(out, "f_{k}: undefined").unwrap(),
        }
    }
    writeln!(out, "minimal 2-good sets:").unwrap();
    for s in minimal_two_good_sets(&family, Element::ONE) {
        writeln!(
            out,
            "  {s} size {} incidence {}",
            s.len(),
            incidence(&family, s)
        )
        .unwrap();
    }
    if let Some(base) = &args.base {
        let s = parse_base(base, &family)?;
        let two_good = is_two_good(&family, s, Element::ONE);
        writeln!(
            out,
            "base {s}: 2-good {two_good}, incidence {}",
            incidence(&family, s)
        )
        .unwrap();
        for (t, q) in trace_counts(&family, s).iter() {
            writeln!(out, "  q_{t} = {q}").unwrap();
        }
    }
    Ok(out)
}

pub fn covers(input: &FamilyInput) -> Result<String, CliError> {
    let family = load(input)?;
    let mc = minimal_covers(&family).map_err(|e| CliError::Input(e.to_string()))?;
    let mut out = String::new();
    writeln!(out, "MC(F):").unwrap();
    for s in mc.sets() {
        writeln!(out, "  {s}").unwrap();
    }
    writeln!(out, "MC(F) antichain: {}", mc.is_antichain()).unwrap();
    let back = minimal_covers(&mc).map_err(|e| CliError::Consistency(e.to_string()))?;
    if family.is_antichain() {
        let holds = back == family;
        writeln!(out, "involution MC(MC(F)) = F: {holds}").unwrap();
        if !holds {
            return Err(CliError::Consistency("MC(MC(F)) differs from F".into()));
        }
    } else {
        writeln!(
            out,
            "involution: F is not an antichain; MC(MC(F)) = minimal elements of F: {}",
            back == family.minimal_elements()
        )
        .unwrap();
    }
    Ok(out)
}

fn report_output(report: &VerificationReport) -> Result<String, CliError> {
    let text = json_text(&report.to_json());
    if report.passed() {
        Ok(text)
    } else {
        // the report still goes to standard error so the violations are visible
        eprint!("{text}");
        Err(CliError::Consistency(format!(
            "{} violations",
            report.violations.len()
        )))
    }
}

pub fn search_nagel(args: &SearchNagelArgs) -> Result<String, CliError> {
    let spec = EnumerationSpec {
        n: args.n,
        require_empty: args.require_empty,
        require_ground_coverage: true,
        max_family_size: args.max_size,
    };
    eprintln!(
        "enumerating union-closed families covering {{1..{}}}",
        args.n
    );
    let report = verify_nagel_k2(&spec).map_err(search_error)?;
    eprintln!("checked {} families", report.families_checked);
    report_output(&report)
}

pub fn check_lemmas(args: &CheckLemmasArgs) -> Result<String, CliError> {
    let family = load(&args.input)?;
    if !family.is_union_closed() {
        return Err(CliError::Input("the family is not union-closed".into()));
    }
    let s = parse_base(&args.base, &family)?;
    let report = spot_check_lemmas(&family, s).map_err(|e| CliError::Input(e.to_string()))?;
    report_output(&report)
}

pub fn cover_theorem(args: &CoverTheoremArgs) -> Result<String, CliError> {
    eprintln!("checking minimal covers up to n = {}", args.n_max);
    let report = verify_cover_theorem(args.n_max).map_err(search_error)?;
    report_output(&report)
}

pub fn lemma_corpus(args: &LemmaCorpusArgs) -> Result<String, CliError> {
    let spec = CorpusSpec {
        seed: args.seed,
        ..CorpusSpec::default()
    };
    eprintln!(
        "checking {} random instances (seed {})",
        args.instances, args.seed
    );
    let report = check_lemma_corpus(&spec, args.instances).map_err(search_error)?;
    report_output(&report)
}
