use std::fs;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use lie2_cases::certificate::{check, Witnesses};
use lie2_cases::reference::{
    cross_check_paper_lists, verify_paper, DiscrepancyReport, DuplicateKind, Sections, VerifyReport, REFERENCE_PATTERNS,
};
use lie2_cases::space::{t_from_coords, t_label};
use lie2_cases::RuleMode;
use lie2_census::{run_census, CensusError, CensusReport, CensusSpec, Sampling, SparseTable};
use lie2_core::catalog::{fixture, Fixture, FIXTURE_NAMES};
use lie2_core::io::{fixture_to_json, from_json, to_json};
use lie2_core::liealg::{is_simple_with_budget, validate_lie, ValidationReport, DEFAULT_SIMPLICITY_BUDGET};
use lie2_core::restricted::{synthesize_two_map, validate_restricted, RestrictedError};
use lie2_core::toruscartan::{
    audit_decomposition, max_tori_and_rank, torus_from_toral, weight_decompose, AuditReport, CartanDecomposition,
    SubAudit, Torus, TorusError, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET, RANK_CAVEAT,
};
use lie2_core::{Fe, Field, LieAlgebra, RestrictedAlgebra, TwoMap};
use serde_json::{json, Value};

use crate::{CatalogAction, Command, ModeArg, OutArg, PaperAction, SectionArg, EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT};

/// Attached to every algebra report.
pub const FIELD_CAVEAT: &str = "computed over a finite field GF(2^k); statements that need an \
algebraically closed field are evidenced here, not proved";

const CROSS_CHECK_CAVEAT: &str = "orbits are taken under GL3(F2) acting on the seven root positions";

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_INPUT, message: message.into() }
    }

    fn fail(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_FAIL, message: message.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

fn torus_error(e: TorusError) -> CliError {
    let code = match e {
        TorusError::BudgetExceeded { .. } | TorusError::FieldTooLarge(_) => EXIT_BUDGET,
        TorusError::InvariantViolation(_) | TorusError::SplitFailed { .. } => EXIT_FAIL,
        _ => EXIT_INPUT,
    };
    CliError { code, message: e.to_string() }
}

fn census_error(e: CensusError) -> CliError {
    let code = match e {
        CensusError::BudgetExceeded { .. } => EXIT_BUDGET,
        CensusError::Internal(_) | CensusError::Restricted(_) | CensusError::Torus(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    };
    CliError { code, message: e.to_string() }
}

macro_rules! say {
    ($io:expr, $($arg:tt)*) => {
        writeln!($io.stdout, $($arg)*)?
    };
}

pub fn dispatch(cmd: Command, io: &mut Io) -> Result<bool, CliError> {
    match cmd {
        Command::Validate { file, restricted, out } => validate(&file, restricted, &out, io),
        Command::Decompose { file, torus, out } => decompose(&file, &torus, &out, io),
        Command::ToralRank { file, budget, node_budget, out } => toral_rank(&file, budget, node_budget, &out, io),
        Command::Paper { action: PaperAction::Verify { section, dims, rule_mode, out } } => {
            paper_verify(section, &dims, rule_mode, &out, io)
        }
        Command::Paper { action: PaperAction::CrossCheck { out } } => cross_check(&out, io),
        Command::Census { dim, field_degree, sample, seed, threads, dump_survivors, out } => {
            let sample = sample.map(|count| Sampling { count, seed });
            let spec = CensusSpec { dim, field_degree, sample, threads };
            census(&spec, dump_survivors.as_deref(), &out, io)
        }
        Command::Catalog { action: CatalogAction::List } => {
            for name in FIXTURE_NAMES {
                say!(io, "{name}");
            }
            say!(io, "paper-lists");
            Ok(true)
        }
        Command::Catalog { action: CatalogAction::Emit { name, field_degree, out } } => {
            emit(&name, field_degree, out.as_deref(), io)
        }
    }
}

fn read_source(path: &str, io: &mut Io) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map_err(|e| CliError::input(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
    }
}

fn load(path: &str, io: &mut Io) -> Result<Fixture, CliError> {
    let text = read_source(path, io)?;
    from_json(&text).map_err(|e| CliError::input(format!("{path}: {e}")))
}

fn write_json(out: &OutArg, value: &Value, io: &mut Io) -> Result<(), CliError> {
    let Some(path) = &out.out else { return Ok(()) };
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    write_text(Some(path), &text, io)
}

fn write_text(path: Option<&Path>, text: &str, io: &mut Io) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
        }
        _ => Ok(io.stdout.write_all(text.as_bytes())?),
    }
}

fn bits(v: &[Fe]) -> Vec<u16> {
    v.iter().map(|c| c.bits()).collect()
}

fn two_map_json(tm: &TwoMap) -> Value {
    json!(tm.images.iter().map(|b| bits(b)).collect::<Vec<_>>())
}

fn header(g: &LieAlgebra) -> String {
    format!("{} over {}, dimension {}", g.name(), g.field(), g.dim())
}

fn print_failures(report: &ValidationReport, io: &mut Io) -> Result<(), CliError> {
    for f in report.failures.iter().take(10) {
        say!(io, "  failure: {}", serde_json::to_string(f).expect("failures serialize"));
    }
    if report.failures.len() > 10 {
        say!(io, "  ... {} more", report.failures.len() - 10);
    }
    Ok(())
}

fn validate(path: &str, restricted: bool, out: &OutArg, io: &mut Io) -> Result<bool, CliError> {
    let fx = load(path, io)?;
    let g = &fx.algebra;
    say!(io, "{}", header(g));
    let lie = validate_lie(g);
    let mut doc = json!({
        "name": g.name(),
        "field": g.field(),
        "dim": g.dim(),
        "lie": lie,
        "caveat": FIELD_CAVEAT,
    });
    let mut pass = lie.is_valid();
    if pass {
        say!(io, "Lie axioms: pass ({} checks)", lie.checks);
        match is_simple_with_budget(g, DEFAULT_SIMPLICITY_BUDGET) {
            Ok(s) => {
                let reason = s.reason.map(|r| format!(" ({r:?})")).unwrap_or_default();
                say!(io, "simple: {}{reason}", if s.simple { "yes" } else { "no" });
                doc["simple"] = json!({"simple": s.simple, "reason": s.reason, "points_checked": s.points_checked,
                    "ideal": s.witness.map(|w| w.basis_vectors().iter().map(|b| bits(b)).collect::<Vec<_>>())});
            }
            Err(e) => {
                say!(io, "simple: not decided ({e})");
                doc["simple"] = Value::Null;
            }
        }
    } else {
        say!(io, "Lie axioms: FAIL ({} of {} checks)", lie.failures.len(), lie.checks);
        print_failures(&lie, io)?;
    }
    if restricted && pass {
        let rerr = |e: RestrictedError| CliError::fail(format!("{path}: {e}"));
        match &fx.two_map {
            Some(tm) => {
                if tm.images.len() != g.dim() || tm.images.iter().any(|b| b.len() != g.dim()) {
                    return Err(CliError::input(format!("{path}: 2-map has the wrong shape")));
                }
                let r = validate_restricted(g, tm).map_err(rerr)?;
                pass = r.is_valid();
                if pass {
                    say!(io, "2-map axioms: pass ({} checks)", r.checks);
                } else {
                    say!(io, "2-map axioms: FAIL ({} of {} checks)", r.failures.len(), r.checks);
                    print_failures(&r, io)?;
                }
                doc["restricted"] = json!({"source": "file", "report": r});
            }
            None => {
                let s = synthesize_two_map(g).map_err(rerr)?;
                let unsolvable = s.unsolvable.clone();
                match s.result {
                    Some(syn) => {
                        let r = validate_restricted(g, &syn.two_map).map_err(rerr)?;
                        pass = r.is_valid();
                        let kind = if syn.unique { "unique" } else { "one of several" };
                        say!(io, "restrictable: synthesized 2-map ({kind})");
                        for (i, b) in syn.two_map.images.iter().enumerate() {
                            say!(io, "  {}^[2] = {:?}", g.label(i), bits(b));
                        }
                        doc["restricted"] = json!({"source": "synthesized", "unique": syn.unique,
                            "two_map": two_map_json(&syn.two_map), "report": r});
                    }
                    None => {
                        pass = false;
                        let names: Vec<String> = unsolvable.iter().map(|&i| g.label(i)).collect();
                        say!(io, "not restrictable: ad(x)^2 is not inner for x in {{{}}}", names.join(", "));
                        doc["restricted"] =
                            json!({"source": "synthesized", "restrictable": false, "unsolvable": unsolvable});
                    }
                }
            }
        }
    }
    say!(io, "caveat: {FIELD_CAVEAT}");
    doc["pass"] = json!(pass);
    write_json(out, &doc, io)?;
    Ok(pass)
}

fn restricted_of(path: &str, fx: Fixture) -> Result<RestrictedAlgebra, CliError> {
    let lie = validate_lie(&fx.algebra);
    if !lie.is_valid() {
        return Err(CliError::input(format!("{path}: not a Lie algebra ({} failed checks)", lie.failures.len())));
    }
    let tm = match fx.two_map {
        Some(tm) => tm,
        None => {
            let s = synthesize_two_map(&fx.algebra).map_err(|e| CliError::input(format!("{path}: {e}")))?;
            match s.result {
                Some(syn) => syn.two_map,
                None => return Err(CliError::input(format!("{path}: not restrictable, no 2-map exists"))),
            }
        }
    };
    RestrictedAlgebra::new(fx.algebra, tm).map_err(|e| CliError::input(format!("{path}: {e}")))
}

fn load_torus(path: &str, ra: &RestrictedAlgebra, io: &mut Io) -> Result<Torus, CliError> {
    let text = read_source(path, io)?;
    let rows: Vec<Vec<u64>> = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{path}: expected a list of bit vectors: {e}")))?;
    let f = ra.field();
    let mut elems = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != ra.dim() {
            return Err(CliError::input(format!("{path}: vector of length {} in dimension {}", row.len(), ra.dim())));
        }
        let v: Result<Vec<Fe>, _> = row.iter().map(|&b| f.elem(b)).collect();
        elems.push(v.map_err(|e| CliError::input(format!("{path}: {e}")))?);
    }
    torus_from_toral(ra, &elems).map_err(|e| CliError { code: EXIT_INPUT, message: format!("{path}: {e}") })
}

fn root_label(bits_: u32, rank: usize) -> String {
    let coords: Vec<String> = (0..rank).map(|i| ((bits_ >> i) & 1).to_string()).collect();
    format!("({})", coords.join(","))
}

fn print_audit(name: &str, a: &SubAudit, io: &mut Io) -> Result<(), CliError> {
    let verdict = if a.pass { "pass" } else { "FAIL" };
    let scope = if a.exhaustive { "exhaustive" } else { "sampled" };
    say!(io, "audit {name}: {verdict} ({} checked, {scope})", a.checked);
    for w in a.witnesses.iter().take(5) {
        say!(io, "  {w}");
    }
    Ok(())
}

fn print_decomposition(cd: &CartanDecomposition, audit: &AuditReport, io: &mut Io) -> Result<(), CliError> {
    let r = cd.rank();
    say!(io, "torus rank {r}, h dimension {}, nil dimension {}", cd.h.dim(), cd.nil.dim());
    for (root, space) in &cd.weights {
        say!(io, "  root {}: dimension {}", root_label(root.0, r), space.dim());
    }
    print_audit("A (eigenvalues in F2)", &audit.a_eigenvalues, io)?;
    print_audit("B (nil kills root lines)", &audit.b_nil_kills_lines, io)?;
    print_audit("C (self-brackets land in h)", &audit.c_self_bracket, io)?;
    print_audit("D (squares move toral parts)", &audit.d_square_transfer, io)?;
    Ok(())
}

fn decompose(path: &str, torus: &str, out: &OutArg, io: &mut Io) -> Result<bool, CliError> {
    let ra = restricted_of(path, load(path, io)?)?;
    say!(io, "{}", header(ra.algebra()));
    let t = if torus == "auto" {
        max_tori_and_rank(&ra, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET).map_err(torus_error)?.witness
    } else {
        load_torus(torus, &ra, io)?
    };
    let cd = weight_decompose(&ra, &t).map_err(torus_error)?;
    let audit = audit_decomposition(&ra, &cd).map_err(torus_error)?;
    print_decomposition(&cd, &audit, io)?;
    let pass = audit.all_pass();
    say!(io, "caveat: {FIELD_CAVEAT}");
    let doc = json!({
        "name": ra.algebra().name(),
        "decomposition": cd.report(),
        "audit": audit,
        "pass": pass,
        "caveat": FIELD_CAVEAT,
    });
    write_json(out, &doc, io)?;
    Ok(pass)
}

fn toral_rank(
    path: &str,
    budget: Option<u64>,
    node_budget: Option<u64>,
    out: &OutArg,
    io: &mut Io,
) -> Result<bool, CliError> {
    let ra = restricted_of(path, load(path, io)?)?;
    say!(io, "{}", header(ra.algebra()));
    let r =
        max_tori_and_rank(&ra, budget.unwrap_or(DEFAULT_ELEMENT_BUDGET), node_budget.unwrap_or(DEFAULT_NODE_BUDGET))
            .map_err(torus_error)?;
    let basis: Vec<Vec<u16>> = match &r.witness.toral_basis {
        Some(b) => b.iter().map(|v| bits(v)).collect(),
        None => r.witness.subspace.basis_vectors().iter().map(|v| bits(v)).collect(),
    };
    let mode = format!("{:?}", r.mode);
    say!(io, "toral rank >= {} ({} toral elements, {} search nodes, {mode})", r.rank_lb, r.toral_count, r.nodes);
    for v in &basis {
        say!(io, "  toral basis vector {v:?}");
    }
    say!(io, "caveat: {RANK_CAVEAT}");
    let doc = json!({
        "name": ra.algebra().name(),
        "rank_lb": r.rank_lb,
        "witness": basis,
        "mode": mode,
        "nodes": r.nodes,
        "toral_count": r.toral_count,
        "caveat": RANK_CAVEAT,
    });
    write_json(out, &doc, io)?;
    Ok(true)
}

/// Accepts `a..b`, `a..=b` (both inclusive) or a single value.
pub fn parse_dims(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::input(format!("invalid --dims `{text}`, expected a..b"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if a > b || b > 64 {
        return Err(bad());
    }
    Ok(a..=b)
}

fn span_label(gens: &[[u8; 3]]) -> String {
    if gens.is_empty() {
        return "0".into();
    }
    let names: Vec<String> = gens.iter().map(|&c| t_label(t_from_coords(c).unwrap_or(0))).collect();
    format!("<{}>", names.join(", "))
}

fn paper_verify(section: SectionArg, dims: &str, mode: ModeArg, out: &OutArg, io: &mut Io) -> Result<bool, CliError> {
    let sections = match section {
        SectionArg::Four => Sections::RootSystems,
        SectionArg::Five => Sections::Patterns,
        SectionArg::All => Sections::All,
    };
    let mode = match mode {
        ModeArg::Paper => RuleMode::Paper,
        ModeArg::Strict => RuleMode::Strict,
    };
    let dims = parse_dims(dims)?;
    let report = verify_paper(sections, dims, mode);
    let check_failures: Vec<String> =
        report.certificates().filter_map(|c| check(c).err()).map(|e| e.to_string()).collect();
    let checked = report.certificates().count();
    render_verify(&report, io)?;
    for f in &check_failures {
        say!(io, "certificate check FAILED: {f}");
    }
    let rank_ok = report.root_systems.as_ref().is_none_or(|r| r.all_rank_deficient);
    let pass = report.replayed && check_failures.is_empty() && rank_ok;
    let mut doc = serde_json::to_value(&report).expect("reports serialize");
    doc["checked"] = json!(checked);
    doc["check_failures"] = json!(check_failures);
    doc["pass"] = json!(pass);
    write_json(out, &doc, io)?;
    Ok(pass)
}

fn render_verify(report: &VerifyReport, io: &mut Io) -> Result<(), CliError> {
    let mode = format!("{:?}", report.mode).to_lowercase();
    if let Some(rs) = &report.root_systems {
        say!(io, "root systems: {} certificates", rs.certificates.len());
        for c in &rs.certificates {
            say!(io, "  {}", c.summary());
        }
        for cmp in rs.comparisons.iter().filter(|c| !c.agrees) {
            say!(io, "  Δ{}: derived admissible spaces differ from the published spans", cmp.index);
            for r in cmp.roots.iter().filter(|r| !r.agrees) {
                say!(io, "    {}: derived {} published {}", r.label, span_label(&r.derived), span_label(&r.asserted));
            }
        }
    }
    if let Some(pr) = &report.patterns {
        say!(io, "patterns, dimensions {}..{}, {mode} rules", pr.dims[0], pr.dims[1]);
        for d in &pr.per_dim {
            let open: Vec<_> = d.certificates.iter().filter(|c| !c.is_kill()).collect();
            say!(io, "  dim {}: {} patterns, {} unrefuted", d.dim, d.patterns, open.len());
            for c in open {
                let tried = match &c.witnesses {
                    Witnesses::Exhausted { rules_tried } => format!(" after {rules_tried:?}"),
                    _ => String::new(),
                };
                say!(io, "    unrefuted {}{tried}", c.subject_label());
            }
        }
        say!(io, "patterns needing R4: {}", pr.needs_r4.len());
        for p in &pr.needs_r4 {
            say!(io, "  {p}");
        }
    }
    let s = report.summary;
    say!(io, "summary: {} sound, {} paper_style, {} unrefuted", s.sound, s.paper_style, s.unrefuted);
    say!(io, "replayed: {}", if report.replayed { "yes" } else { "no" });
    say!(io, "caveat: {}", report.caveat);
    Ok(())
}

fn render_cross_check(r: &DiscrepancyReport, io: &mut Io) -> Result<(), CliError> {
    say!(io, "duplicates: {}", r.duplicates.len());
    for d in &r.duplicates {
        let kind = match d.kind {
            DuplicateKind::Identical => "identical text",
            DuplicateKind::SameOrbit => "same GL3 orbit",
        };
        say!(io, "  dim {} items {}: {kind}, {}", d.dim, d.items.join(", "), d.texts.join(" / "));
    }
    say!(io, "malformed: {}", r.malformed.len());
    for m in &r.malformed {
        say!(io, "  dim {} item {}: {} in {}", m.dim, m.item, m.reason, m.text);
    }
    say!(io, "missing from the lists: {}", r.missing.len());
    for m in &r.missing {
        say!(io, "  {}", m.pattern);
    }
    say!(io, "dim  listed  well-formed  distinct  enumerated  profiles");
    for t in &r.tallies {
        say!(
            io,
            "{:>3}  {:>6}  {:>11}  {:>8}  {:>10}  {:>8}",
            t.dim,
            t.listed,
            t.well_formed,
            t.distinct_orbits,
            t.enumerated,
            t.profiles
        );
    }
    Ok(())
}

fn cross_check(out: &OutArg, io: &mut Io) -> Result<bool, CliError> {
    let r = cross_check_paper_lists();
    render_cross_check(&r, io)?;
    let clean = r.is_clean();
    say!(io, "lists {}", if clean { "agree with the enumeration" } else { "have discrepancies" });
    say!(io, "caveat: {CROSS_CHECK_CAVEAT}");
    let mut doc = serde_json::to_value(&r).expect("reports serialize");
    doc["clean"] = json!(clean);
    doc["caveat"] = json!(CROSS_CHECK_CAVEAT);
    write_json(out, &doc, io)?;
    Ok(clean)
}

fn survivor_algebra(name: String, field: Field, dim: usize, table: &SparseTable) -> Result<LieAlgebra, CliError> {
    let mut entries = Vec::with_capacity(table.len());
    for (i, j, terms) in table {
        let mut v = field.zero_vec(dim);
        for &(k, b) in terms {
            v[k] = Fe(b);
        }
        entries.push((*i, *j, v));
    }
    LieAlgebra::from_table(name, field, dim, &entries).map_err(|e| CliError::fail(e.to_string()))
}

fn census(spec: &CensusSpec, dump: Option<&Path>, out: &OutArg, io: &mut Io) -> Result<bool, CliError> {
    let report: CensusReport = run_census(spec).map_err(census_error)?;
    if let Some(ms) = report.runtime_ms {
        writeln!(io.stderr, "census finished in {ms} ms")?;
    }
    let report = report.deterministic();
    let mode = match report.spec.sample {
        Some(s) => format!("sampled, {} tables, seed {}", s.count, s.seed),
        None => "exhaustive".into(),
    };
    say!(io, "census dimension {} over GF(2^{}), {mode}", spec.dim, spec.field_degree);
    say!(io, "scanned {}", report.candidates_scanned);
    say!(io, "Jacobi {}", report.jacobi_pass);
    say!(io, "simple {}", report.simple_count);
    say!(io, "restrictable simple {}", report.restrictable_simple_count);
    say!(io, "restrictable simple with toral rank >= 3: {}", report.restrictable_rank3_count);
    if let Some(classes) = &report.simple_iso_classes {
        say!(io, "isomorphism classes of simples: {}", classes.len());
        for c in classes {
            let rank = c.toral_rank_lb.map_or("-".to_string(), |r| r.to_string());
            say!(
                io,
                "  table {}: {} members, restrictable {}, toral rank >= {rank}",
                c.representative,
                c.members,
                c.restrictable
            );
        }
    }
    say!(io, "caveat: {}", report.caveat);
    if let (Some(dir), Some(classes)) = (dump, &report.simple_iso_classes) {
        fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
        let field = Field::new(spec.field_degree).map_err(|e| CliError::input(e.to_string()))?;
        for c in classes {
            let name = format!("census{}_{}", spec.dim, c.representative);
            let g = survivor_algebra(name.clone(), field, spec.dim, &c.bracket)?;
            let path: PathBuf = dir.join(format!("{name}.json"));
            fs::write(&path, to_json(&g, None)).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        }
    }
    let pass = report.restrictable_rank3_count == 0;
    write_json(out, &serde_json::to_value(&report).expect("reports serialize"), io)?;
    Ok(pass)
}

fn emit(name: &str, degree: u32, out: Option<&Path>, io: &mut Io) -> Result<bool, CliError> {
    if name == "paper-lists" {
        write_text(out, REFERENCE_PATTERNS, io)?;
        return Ok(true);
    }
    let field = Field::new(degree).map_err(|e| CliError::input(e.to_string()))?;
    let fx = fixture(name, field).map_err(|e| CliError::input(e.to_string()))?;
    write_text(out, &fixture_to_json(&fx), io)?;
    Ok(true)
}
