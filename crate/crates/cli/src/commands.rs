use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unicayley::cayley::build_graph_with_cap;
use unicayley::complex::{
    codim1_connected, export_edge_ideal, export_stanley_reisner, find_shelling, independence_complex, is_pure,
    pure_skeleton, Complex, ShellingOutcome,
};
use unicayley::constructions::{
    avoidance_partner, d_family, d_family_set, has_zero_pattern, product_witness, reduced_diagonal,
    refutation_seeds, row_mix, zero_row_family, ReducedDiagonalSpec,
};
use unicayley::indsets::{
    greedy_extend, is_well_covered_streaming, is_well_covered_with, maximum_independent_set, Answer,
    WellCoveredReport,
};
use unicayley::structure::{classify as classify_spec, FactorList, Question};
use unicayley::verify::{verify_paper, Scale};
use unicayley::{parse_spec, ArithOp, Error, MatrixElem, Result, Ring, UGraph, VertexSet};

use crate::{Common, Format, Report, Status};

#[derive(Args, Debug)]
pub struct RingOnly {
    /// Ring specification, e.g. "M(2,GF(2))".
    #[arg(long)]
    pub ring: String,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Op {
    Add,
    Sub,
    Neg,
    Mul,
}

#[derive(Args, Debug)]
pub struct RingArgs {
    #[arg(long)]
    pub ring: String,
    /// Arithmetic on element indices.
    #[arg(long, value_enum, requires = "a", conflicts_with_all = ["is_unit", "det", "describe"])]
    pub op: Option<Op>,
    #[arg(short, long, requires = "op")]
    pub a: Option<usize>,
    #[arg(short, long, requires = "op")]
    pub b: Option<usize>,
    /// Whether the element with this index is a unit.
    #[arg(long, conflicts_with_all = ["det", "describe"])]
    pub is_unit: Option<usize>,
    /// Determinant of a matrix given as "a,b;c,d" (base-ring indices).
    #[arg(long, conflicts_with = "describe")]
    pub det: Option<String>,
    /// Human-readable form of the element with this index.
    #[arg(long)]
    pub describe: Option<usize>,
}

#[derive(Args, Debug)]
pub struct WellCoveredArgs {
    #[arg(long)]
    pub ring: String,
    /// Print every maximal independent set as it is found (text format).
    #[arg(long)]
    pub stream: bool,
    /// Enumerate without first trying the built-in refutation seeds.
    #[arg(long)]
    pub no_seeds: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum QuestionArg {
    Wellcovered,
    Cm,
    Gorenstein,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long, value_enum, default_value_t = QuestionArg::Wellcovered)]
    pub question: QuestionArg,
}

#[derive(Args, Debug)]
pub struct ComplexArgs {
    #[arg(long)]
    pub ring: String,
    /// Replace the complex by its pure skeleton of this dimension.
    #[arg(long, conflicts_with = "top_skeleton")]
    pub skeleton: Option<usize>,
    /// Replace the complex by its top-dimensional pure skeleton.
    #[arg(long)]
    pub top_skeleton: bool,
    /// Search for a shelling order.
    #[arg(long)]
    pub shelling: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    EdgeIdeal,
    StanleyReisner,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long, value_enum, default_value_t = ExportKind::EdgeIdeal)]
    pub kind: ExportKind,
    /// For the Stanley-Reisner ideal: use the pure skeleton of this dimension.
    #[arg(long)]
    pub skeleton: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ScaleArg {
    Small,
    Medium,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = ScaleArg::Small)]
    pub scale: ScaleArg,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// The reduced k-diagonal matrix D_{k,l}(a_1, ..., a_{n-1}).
    Diagonal {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// Diagonal shift, 1..=n.
        #[arg(long)]
        k: usize,
        /// Zero row, 1..=n; defaults to k.
        #[arg(long)]
        l: Option<usize>,
        /// Comma-separated coefficient indices a_1, ..., a_{n-1}.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        coeffs: Vec<usize>,
    },
    /// The family of all D_k(a) matrices, an independent set of Γ(M_n(F)).
    Family {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
    },
    /// Rows listed in --rows (0-based) from D, the others from A.
    RowMix {
        #[arg(long)]
        a: String,
        #[arg(long)]
        d: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        rows: Vec<usize>,
        /// Report the determinant over this field.
        #[arg(long)]
        field: Option<String>,
    },
    /// A non-unit B such that A - B is a unit.
    Avoid {
        #[arg(long)]
        field: String,
        #[arg(long)]
        matrix: String,
    },
    /// Maximal independent sets of different sizes in Γ(R × M_n(F)).
    Product {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: String,
    },
    /// Greedy maximal independent set containing the D_k family of M_n(F).
    Refute {
        #[arg(long)]
        ring: String,
    },
}

fn make_ring(c: &Common, text: &str) -> Result<Ring> {
    Ring::with_cap(&parse_spec(text)?, c.max_order)
}

fn make_graph(c: &Common, ring: &Ring) -> Result<UGraph> {
    build_graph_with_cap(ring, c.max_vertices)
}

fn braces(s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn definite(text: String, json: Value) -> Report {
    Report { text, json, dot: None, status: Status::Definite }
}

pub fn ring(c: &Common, a: &RingArgs) -> Result<Report> {
    let r = make_ring(c, &a.ring)?;
    let label = r.label().to_string();
    if let Some(op) = a.op {
        let (op, name) = match op {
            Op::Add => (ArithOp::Add, "add"),
            Op::Sub => (ArithOp::Sub, "sub"),
            Op::Neg => (ArithOp::Neg, "neg"),
            Op::Mul => (ArithOp::Mul, "mul"),
        };
        let x = a.a.expect("clap enforces --a");
        let v = r.arith(op, x, a.b)?;
        return Ok(definite(
            format!("{v}\n"),
            json!({"ring": label, "op": name, "a": x, "b": a.b, "result": v, "element": r.describe(v)}),
        ));
    }
    if let Some(x) = a.is_unit {
        let u = r.try_is_unit(x)?;
        return Ok(definite(format!("{}\n", yes_no(u)), json!({"ring": label, "element": x, "unit": u})));
    }
    if let Some(m) = &a.det {
        let m: MatrixElem = m.parse()?;
        let d = r.det(&m)?;
        return Ok(definite(format!("{d}\n"), json!({"ring": label, "matrix": m.to_string(), "det": d})));
    }
    if let Some(x) = a.describe {
        if x >= r.order() {
            return Err(Error::IndexOutOfRange { index: x, order: r.order() });
        }
        let d = r.describe(x);
        return Ok(definite(format!("{d}\n"), json!({"ring": label, "element": x, "describe": d})));
    }
    let meta = r.metadata();
    let commutative = r.spec().is_some_and(|s| s.is_commutative());
    let radical = meta.radical_size.map_or("unknown".to_string(), |s| s.to_string());
    let text = format!(
        "ring: {}\norder: {}\nunits: {}\nradical size: {radical}\nfield: {}\ncommutative: {}\none: {}\n",
        meta.spec,
        meta.order,
        meta.unit_count,
        yes_no(r.is_field()),
        yes_no(commutative),
        r.one()
    );
    let mut json = to_json(&meta);
    json["is_field"] = r.is_field().into();
    json["commutative"] = commutative.into();
    json["one"] = r.one().into();
    Ok(definite(text, json))
}

pub fn graph(c: &Common, a: &RingOnly) -> Result<Report> {
    let r = make_ring(c, &a.ring)?;
    let g = make_graph(c, &r)?;
    let mut text = format!("ring: {}\nvertices: {}\nedges: {}\n", r.label(), g.vertex_count(), g.edge_count());
    if let Some(d) = g.regular_degree() {
        writeln!(text, "regular of degree {d}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(text, "{u} {v}").unwrap();
    }
    Ok(Report { text, json: to_json(&g.to_json()), dot: Some(g.to_dot()), status: Status::Definite })
}

pub fn alpha(c: &Common, a: &RingOnly) -> Result<Report> {
    let r = make_ring(c, &a.ring)?;
    let g = make_graph(c, &r)?;
    match maximum_independent_set(&g, c.budget()) {
        Ok(set) => Ok(definite(
            format!("{}\n", set.len()),
            json!({"ring": r.label(), "alpha": set.len(), "witness": set, "status": "exact"}),
        )),
        Err(Error::BudgetExhausted) => Ok(Report {
            text: "inconclusive: budget exhausted\n".into(),
            json: json!({"ring": r.label(), "alpha": null, "status": "inconclusive"}),
            dot: None,
            status: Status::Inconclusive,
        }),
        Err(e) => Err(e),
    }
}

fn well_covered_text(label: &str, rep: &WellCoveredReport) -> String {
    let answer = match rep.answer {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::Inconclusive => "inconclusive",
    };
    let mut t = format!("ring: {label}\nwell-covered: {answer}\n");
    let alpha_note = if rep.complete { "" } else { " (largest seen)" };
    writeln!(t, "alpha: {}{alpha_note}", rep.alpha).unwrap();
    writeln!(t, "complete: {}", yes_no(rep.complete)).unwrap();
    if let Some(w) = &rep.witness_small {
        writeln!(t, "witness: {}", braces(w)).unwrap();
    }
    if let Some(w) = &rep.witness_large {
        writeln!(t, "larger: {}", braces(w)).unwrap();
    }
    if let Some(counts) = &rep.counts {
        let parts: Vec<String> = counts.iter().map(|(s, n)| format!("{n} of size {s}")).collect();
        writeln!(t, "counts: {}", parts.join(", ")).unwrap();
    }
    writeln!(t, "maximal sets seen: {}", rep.maximal_sets_seen).unwrap();
    t
}

pub fn wellcovered(c: &Common, a: &WellCoveredArgs) -> Result<Report> {
    if a.stream && c.format != Format::Text {
        return Err(Error::InvalidArgument("--stream needs --format text".into()));
    }
    let r = make_ring(c, &a.ring)?;
    let g = make_graph(c, &r)?;
    let seeds = if a.no_seeds { Vec::new() } else { refutation_seeds(&r) };
    let rep = if a.stream {
        let mut out = std::io::stdout().lock();
        is_well_covered_streaming(&g, c.budget(), &seeds, |s| {
            let _ = writeln!(out, "{s}");
        })
    } else {
        is_well_covered_with(&g, c.budget(), c.threads as usize, &seeds)
    };
    let mut json = to_json(&rep);
    json["ring"] = r.label().into();
    let status = if rep.answer == Answer::Inconclusive { Status::Inconclusive } else { Status::Definite };
    Ok(Report { text: well_covered_text(r.label(), &rep), json, dot: None, status })
}

pub fn classify(_c: &Common, a: &ClassifyArgs) -> Result<Report> {
    let spec = parse_spec(&a.ring)?;
    let q = match a.question {
        QuestionArg::Wellcovered => Question::WellCovered,
        QuestionArg::Cm => Question::Cm,
        QuestionArg::Gorenstein => Question::Gorenstein,
    };
    let rep = classify_spec(&spec, q);
    let mut text = format!(
        "ring: {}\nquestion: {}\nanswer: {}\nclause: {}\nsemisimple quotient: {}\n",
        rep.ring,
        q.as_str(),
        yes_no(rep.answer),
        rep.clause,
        FactorList::new(rep.factors.clone())
    );
    if let Some(h) = &rep.witness_hint {
        writeln!(text, "hint: {h}").unwrap();
    }
    Ok(definite(text, to_json(&rep)))
}

pub fn radical(c: &Common, a: &RingOnly) -> Result<Report> {
    let r = make_ring(c, &a.ring)?;
    let j = r.jacobson_radical()?;
    let q = r.semisimple_quotient()?;
    let text = format!(
        "ring: {}\nradical: {}\nsize: {}\nquotient order: {}\nquotient units: {}\n",
        r.label(),
        braces(&j),
        j.len(),
        q.ring.order(),
        q.ring.unit_count()
    );
    let json = json!({
        "ring": r.label(),
        "radical": j,
        "size": j.len(),
        "quotient": {"order": q.ring.order(), "unit_count": q.ring.unit_count(), "projection": q.projection},
    });
    Ok(definite(text, json))
}

fn inconclusive(label: &str, what: &str) -> Report {
    Report {
        text: format!("ring: {label}\ninconclusive: budget exhausted during {what}\n"),
        json: json!({"ring": label, "status": "inconclusive", "stage": what}),
        dot: None,
        status: Status::Inconclusive,
    }
}

pub fn complex(c: &Common, a: &ComplexArgs) -> Result<Report> {
    let r = make_ring(c, &a.ring)?;
    let g = make_graph(c, &r)?;
    let mut cx = match independence_complex(&g, c.budget()) {
        Ok(cx) => cx,
        Err(Error::BudgetExhausted) => return Ok(inconclusive(r.label(), "enumeration")),
        Err(e) => return Err(e),
    };
    let skeleton = if a.top_skeleton { cx.dim() } else { a.skeleton };
    if let Some(d) = skeleton {
        cx = pure_skeleton(&cx, d)?;
    }
    complex_report(c, r.label(), &cx, skeleton, a.shelling)
}

fn complex_report(c: &Common, label: &str, cx: &Complex, skeleton: Option<usize>, shelling: bool) -> Result<Report> {
    let pure = is_pure(cx);
    let mut text = format!("ring: {label}\n");
    let mut json = json!({
        "ring": label,
        "vertices": cx.vertex_count(),
        "facets": cx.facets(),
        "dim": cx.dim(),
        "pure": pure,
    });
    if let Some(d) = skeleton {
        writeln!(text, "skeleton: {d}").unwrap();
        json["skeleton"] = d.into();
    }
    writeln!(text, "vertices: {}\nfacets: {}", cx.vertex_count(), cx.facets().len()).unwrap();
    if let Some(d) = cx.dim() {
        writeln!(text, "dim: {d}").unwrap();
    }
    writeln!(text, "pure: {}", yes_no(pure)).unwrap();
    let mut status = Status::Definite;
    if pure {
        let conn = codim1_connected(cx)?;
        writeln!(
            text,
            "connected in codimension 1: {} ({} components)",
            yes_no(conn.connected),
            conn.components.len()
        )
        .unwrap();
        json["codim1"] = to_json(&conn);
        if shelling {
            let outcome = find_shelling(cx, c.budget())?;
            match &outcome {
                ShellingOutcome::Found { order } => {
                    let o: Vec<String> = order.iter().map(|i| i.to_string()).collect();
                    writeln!(text, "shelling: {}", o.join(" ")).unwrap();
                }
                ShellingOutcome::NoShellingExists { reason } => writeln!(text, "shelling: none exists, {reason}").unwrap(),
                ShellingOutcome::NoneFoundWithinBudget => {
                    writeln!(text, "shelling: none found within budget").unwrap();
                    status = Status::Inconclusive;
                }
            }
            json["shelling"] = to_json(&outcome);
        }
    } else if shelling {
        writeln!(text, "shelling: none exists, the complex is not pure").unwrap();
        json["shelling"] = json!({"status": "no_shelling_exists", "reason": "not pure"});
    }
    for f in cx.facets() {
        writeln!(text, "{}", braces(f)).unwrap();
    }
    Ok(Report { text, json, dot: None, status })
}

pub fn export(c: &Common, a: &ExportArgs) -> Result<Report> {
    let r = make_ring(c, &a.ring)?;
    let g = make_graph(c, &r)?;
    if a.skeleton.is_some() && a.kind != ExportKind::StanleyReisner {
        return Err(Error::InvalidArgument("--skeleton applies to --kind stanley-reisner".into()));
    }
    let (kind, text) = match a.kind {
        ExportKind::EdgeIdeal => ("edge-ideal", export_edge_ideal(&g)?),
        ExportKind::StanleyReisner => {
            let mut cx = match independence_complex(&g, c.budget()) {
                Ok(cx) => cx,
                Err(Error::BudgetExhausted) => return Ok(inconclusive(r.label(), "enumeration")),
                Err(e) => return Err(e),
            };
            if let Some(d) = a.skeleton {
                cx = pure_skeleton(&cx, d)?;
            }
            ("stanley-reisner", export_stanley_reisner(&cx)?)
        }
    };
    let generators: Vec<&str> = text.lines().filter(|l| !l.starts_with("--")).collect();
    let json = json!({"ring": r.label(), "kind": kind, "variables": g.vertex_count(), "generators": generators});
    Ok(definite(text, json))
}

pub fn verify(c: &Common, a: &VerifyArgs) -> Result<Report> {
    let scale = match a.scale {
        ScaleArg::Small => Scale::Small,
        ScaleArg::Medium => Scale::Medium,
    };
    let rep = verify_paper(scale, c.seed);
    let mut text = String::new();
    for ch in &rep.checks {
        writeln!(text, "{} {}: {} [{}]", if ch.passed { "PASS" } else { "FAIL" }, ch.id, ch.certifies, ch.detail)
            .unwrap();
    }
    writeln!(text, "{} checks, {} failed", rep.checks.len(), rep.failed).unwrap();
    let status = if rep.passed { Status::Definite } else { Status::Failed };
    Ok(Report { text, json: to_json(&rep), dot: None, status })
}

fn field(c: &Common, text: &str) -> Result<Ring> {
    let f = make_ring(c, text)?;
    if f.is_field() {
        Ok(f)
    } else {
        Err(Error::Semantic(format!("{text} is not a field")))
    }
}

fn matrix_ring_over(c: &Common, n: usize, f: &Ring) -> Option<Ring> {
    let spec = unicayley::RingSpec::M(n, Box::new(f.spec()?.clone()));
    Ring::with_cap(&spec, c.max_order).ok()
}

pub fn construct(c: &Common, what: &Construct) -> Result<Report> {
    match what {
        Construct::Diagonal { field: fs, n, k, l, coeffs } => {
            let f = field(c, fs)?;
            let spec = ReducedDiagonalSpec { n: *n, k: *k, l: l.unwrap_or(*k), coeffs: coeffs.clone() };
            let m = reduced_diagonal(&spec, &f)?;
            Ok(definite(format!("{m}\n"), json!({"spec": spec, "field": f.label(), "matrix": m.to_string()})))
        }
        Construct::Family { field: fs, n } => {
            let f = field(c, fs)?;
            let fam = d_family(*n, &f)?;
            let ring = matrix_ring_over(c, *n, &f);
            let indices: Option<Vec<usize>> =
                ring.as_ref().map(|r| fam.iter().map(|m| r.encode_matrix(m)).collect::<Result<_>>()).transpose()?;
            let mut text = format!("field: {}\nn: {n}\nsize: {}\n", f.label(), fam.len());
            for (i, m) in fam.iter().enumerate() {
                match &indices {
                    Some(ix) => writeln!(text, "{m}  (index {})", ix[i]).unwrap(),
                    None => writeln!(text, "{m}").unwrap(),
                }
            }
            let matrices: Vec<String> = fam.iter().map(|m| m.to_string()).collect();
            Ok(definite(
                text,
                json!({"field": f.label(), "n": n, "size": fam.len(), "matrices": matrices, "indices": indices}),
            ))
        }
        Construct::RowMix { a, d, rows, field: fs } => {
            let am: MatrixElem = a.parse()?;
            let dm: MatrixElem = d.parse()?;
            let rows: VertexSet = rows.iter().copied().collect();
            let m = row_mix(&am, &dm, &rows)?;
            let det = match fs {
                Some(fs) => {
                    let f = field(c, fs)?;
                    if let Some(&bad) = m.entries().iter().find(|&&e| e >= f.order()) {
                        return Err(Error::IndexOutOfRange { index: bad, order: f.order() });
                    }
                    Some(unicayley::algebra::det_entries(&f, m.size(), m.entries()))
                }
                None => None,
            };
            let mut text = format!("{m}\n");
            if let Some(d) = det {
                writeln!(text, "det: {d}").unwrap();
            }
            Ok(definite(text, json!({"matrix": m.to_string(), "rows_from_d": rows, "det": det})))
        }
        Construct::Avoid { field: fs, matrix } => {
            let f = field(c, fs)?;
            let a: MatrixElem = matrix.parse()?;
            if let Some(&bad) = a.entries().iter().find(|&&e| e >= f.order()) {
                return Err(Error::IndexOutOfRange { index: bad, order: f.order() });
            }
            let b = avoidance_partner(&a, &f)?;
            let n = a.size();
            let det_b = unicayley::algebra::det_entries(&f, n, b.entries());
            let diff = a.sub(&b, &f);
            let det_diff = unicayley::algebra::det_entries(&f, n, diff.entries());
            let text = format!("{b}\ndet(B): {det_b}\nA - B: {diff}\ndet(A - B): {det_diff}\n");
            Ok(definite(
                text,
                json!({"a": a.to_string(), "b": b.to_string(), "det_b": det_b, "a_minus_b": diff.to_string(), "det_a_minus_b": det_diff}),
            ))
        }
        Construct::Product { ring, n, field: fs } => {
            let r = make_ring(c, ring)?;
            let f = field(c, fs)?;
            let w = product_witness(&r, *n, &f)?;
            if w.ring.order() > c.max_vertices {
                return Err(Error::GraphCap { vertices: w.ring.order(), cap: c.max_vertices });
            }
            let small_max = w.graph.is_maximal_independent(&w.small);
            let large_max = w.graph.is_maximal_independent(&w.large);
            let text = format!(
                "ring: {}\nbase set: {}\nN: {} elements, maximal {}\nM x M_n(F): {} elements, maximal {}\n",
                w.ring.label(),
                braces(&w.base_set),
                w.small.len(),
                yes_no(small_max),
                w.large.len(),
                yes_no(large_max)
            );
            let mut json = to_json(&w.summary());
            json["small_maximal"] = small_max.into();
            json["large_maximal"] = large_max.into();
            Ok(definite(text, json))
        }
        Construct::Refute { ring } => {
            let r = make_ring(c, ring)?;
            let g = make_graph(c, &r)?;
            let m = greedy_extend(&g, &d_family_set(&r)?)?;
            let alpha = zero_row_family(&r)?.len();
            let pattern = m.iter().all(|x| r.decode_matrix(x).is_ok_and(|a| has_zero_pattern(&a)));
            let text = format!(
                "ring: {}\nmaximal set containing the family: {} elements\nzero-row family: {alpha} elements\nzero pattern on all elements: {}\n",
                r.label(),
                m.len(),
                yes_no(pattern)
            );
            Ok(definite(
                text,
                json!({"ring": r.label(), "maximal_set": m, "size": m.len(), "zero_row_family_size": alpha, "zero_pattern": pattern}),
            ))
        }
    }
}
