use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dp4aut::classifier::{
    a0_gens_text, a0_text, classify_by_conditions, classify_by_witnesses, cross_check, sample_scenarios, table_row,
    Classification, ClassifyError, Scenario,
};
use dp4aut::picard::{enumerate_conic_classes, enumerate_minus_one, exceptional_pairs, Basis};
use dp4aut::realforms::{envelope_mismatch, form_spec, image_bound, kernel_bound, sigma_arrows, FormId};
use dp4aut::verify::verify_paper;
use dp4aut::weyl::{format_bits, identify_small_group, pair_action, weyl_group, GroupName, Perm};

#[derive(Parser)]
#[command(name = "dp4aut", version, about = "Exact automorphism computations for real quartic del Pezzo surfaces")]
struct Cli {
    /// Emit the canonical JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List (-1)-classes, conic classes or exceptional pairs.
    Enumerate {
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Structure of the lattice automorphism group.
    Weyl(WeylArgs),
    /// Lattice bounds for A0 and A' of one real form.
    Bounds {
        #[arg(long)]
        form: String,
    },
    /// Classify one surface given by its normal-form parameters.
    Classify {
        #[arg(long)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        field_d: i64,
        /// `name=value` in the exact grammar, e.g. `mu=2+w` with w = sqrt(d).
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        #[arg(long, value_enum, default_value = "cross")]
        mode: Mode,
    },
    /// Check every embedded matrix and map fixture.
    VerifyPaper {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        case: Option<u8>,
    },
    /// Classify the sample scenarios and print the table.
    Table1,
}

#[derive(Args)]
#[command(group(ArgGroup::new("what").required(true).multiple(true).args(["order", "kernel", "image"])))]
struct WeylArgs {
    #[arg(long)]
    order: bool,
    #[arg(long)]
    kernel: bool,
    #[arg(long)]
    image: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Quadric,
    Plane,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Lines,
    Conics,
    Pairs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Conditions,
    Witnesses,
    Cross,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    if k.is_empty() || v.is_empty() {
        return Err(format!("expected name=value, got {s:?}"));
    }
    Ok((k.to_string(), v.to_string()))
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Text lines plus the JSON report; `fail > 0` selects exit code 1.
struct Report {
    lines: Vec<String>,
    fields: BTreeMap<String, Value>,
    fail: usize,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut fields = BTreeMap::new();
        fields.insert("command".to_string(), json!(command));
        Report { lines: Vec::new(), fields, fail: 0 }
    }

    fn set(&mut self, k: &str, v: Value) {
        self.fields.insert(k.to_string(), v);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn counts(&mut self, pass: usize, fail: usize) {
        self.fail = fail;
        self.set("pass", json!(pass));
        self.set("fail", json!(fail));
    }
}

fn input_error(msg: impl std::fmt::Display) -> String {
    format!("invalid input: {msg}")
}

fn parse_form(s: &str) -> Result<FormId, String> {
    FormId::parse(s).ok_or_else(|| input_error(format!("unknown form {s:?}; expected q31-02, q31-21, q31-40, q22-02 or q22-40")))
}

fn basis_of(b: BasisArg) -> Basis {
    match b {
        BasisArg::Quadric => Basis::Quadric,
        BasisArg::Plane => Basis::Plane,
    }
}

fn enumerate(basis: BasisArg, what: What) -> Report {
    let basis = basis_of(basis);
    let (name, items): (&str, Vec<String>) = match what {
        What::Lines => ("lines", enumerate_minus_one(basis).iter().map(|c| c.to_string()).collect()),
        What::Conics => ("conics", enumerate_conic_classes(basis).iter().map(|c| c.to_string()).collect()),
        What::Pairs => (
            "pairs",
            exceptional_pairs(basis)
                .iter()
                .map(|p| format!("R{} = {{{}, {}}}", p.index, p.members[0], p.members[1]))
                .collect(),
        ),
    };
    let mut r = Report::new("enumerate");
    r.set("basis", json!(basis.name()));
    r.set("what", json!(name));
    r.set("count", json!(items.len()));
    r.line(format!("{} {name} in the {} basis", items.len(), basis.name()));
    r.lines.extend(items.iter().cloned());
    r.set("items", json!(items));
    r
}

fn weyl(args: &WeylArgs) -> Report {
    let w = weyl_group(Basis::Quadric);
    let pairs = exceptional_pairs(Basis::Quadric);
    let actions: Vec<_> = w.elements.iter().map(|g| pair_action(g, &pairs).expect("W preserves pairs")).collect();
    let mut r = Report::new("weyl");
    if args.order {
        r.set("order", json!(w.order()));
        r.line(format!("|W| = {}", w.order()));
    }
    if args.kernel {
        let mut sigs: Vec<u8> = actions.iter().filter(|a| a.perm.is_identity()).map(|a| a.swaps).collect();
        sigs.sort();
        let text: Vec<String> = sigs.iter().map(|&s| format_bits(s)).collect();
        r.line(format!("kernel of order {}: {}", sigs.len(), text.join(" ")));
        r.set("kernel", json!({ "order": sigs.len(), "signatures": text }));
    }
    if args.image {
        let mut perms: Vec<Perm> = actions.iter().map(|a| a.perm).collect();
        perms.sort();
        perms.dedup();
        let name = identify_small_group(&perms);
        r.line(format!("image of order {} ({name})", perms.len()));
        r.set("image", json!({ "order": perms.len(), "name": name.to_string() }));
    }
    r
}

fn bounds(form: &str) -> Result<Report, String> {
    let id = parse_form(form)?;
    let spec = form_spec(id);
    let kernel = kernel_bound(&spec);
    let image = image_bound(&spec);
    let image_name = identify_small_group(&image);
    let kernel_text: Vec<String> = kernel.iter().map(|&b| format_bits(b)).collect();
    let image_text: Vec<String> = image.iter().map(|p| p.to_string()).collect();
    let arrows = sigma_arrows(&spec);
    let mut r = Report::new("bounds");
    r.set("form", json!(id.as_str()));
    r.set("sigma", json!(arrows));
    r.set("A0", json!({ "order": kernel.len(), "elements": kernel_text }));
    r.set("Aprime", json!({ "order": image.len(), "name": image_name.to_string(), "elements": image_text }));
    r.line(format!("{id}: {}", spec.domain));
    r.line("sigma on the pairs:");
    r.lines.extend(arrows.iter().map(|a| format!("  {a}")));
    r.line(format!("A0 <= {} of order {}: {}", a0_text(&kernel), kernel.len(), kernel_text.join(" ")));
    r.line(format!("A' <= {image_name} of order {}: {}", image.len(), image_text.join(" ")));
    if let Some(note) = envelope_mismatch(&spec) {
        r.set("flags", json!([note.clone()]));
        r.line(format!("NOTE: {note}"));
    } else {
        r.set("flags", json!([]));
    }
    Ok(r)
}

/// Group names allowed for A'.
const POSSIBLE_IMAGES: [GroupName; 7] =
    [GroupName::Trivial, GroupName::Z2, GroupName::Z3, GroupName::Z4, GroupName::Z5, GroupName::Sym3, GroupName::D5];

/// Invariant checks on a classification: A0 is the bound, A' lies in the
/// bound and has an admissible type.
fn invariant_checks(s: &Scenario, c: &Classification) -> Vec<(String, bool)> {
    let spec = form_spec(s.form);
    let image = image_bound(&spec);
    vec![
        ("A0 equals the kernel bound".to_string(), c.a0 == kernel_bound(&spec)),
        ("A' lies in the image bound".to_string(), c.aprime.iter().all(|p| image.contains(p))),
        (format!("A' type {} is admissible", c.aprime_name), POSSIBLE_IMAGES.contains(&c.aprime_name)),
    ]
}

fn perm_texts(ps: &[Perm]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn group_json(c: &Classification) -> (Value, Value) {
    (
        json!({ "order": c.a0.len(), "name": a0_text(&c.a0), "generators": a0_gens_text(&c.a0_gens) }),
        json!({ "order": c.aprime.len(), "name": c.aprime_name.to_string(), "generators": perm_texts(&c.aprime_gens) }),
    )
}

fn group_lines(r: &mut Report, c: &Classification, tag: &str) {
    let gens = |v: Vec<String>| if v.is_empty() { String::new() } else { format!(" <{}>", v.join(",")) };
    r.line(format!("{tag}A0 = {}{}", a0_text(&c.a0), gens(a0_gens_text(&c.a0_gens))));
    r.line(format!("{tag}A' = {}{}", c.aprime_name, gens(perm_texts(&c.aprime_gens))));
}

fn classify(form: &str, d: i64, params: &[(String, String)], mode: Mode) -> Result<Report, String> {
    let id = parse_form(form)?;
    let s = Scenario::parse(id, d, params).map_err(input_error)?;
    let fixture = |e: ClassifyError| format!("fixture error: {e}");
    let (main, other, flags) = match mode {
        Mode::Conditions => (classify_by_conditions(&s), None, vec![]),
        Mode::Witnesses => (classify_by_witnesses(&s).map_err(fixture)?, None, vec![]),
        Mode::Cross => {
            let x = cross_check(&s).map_err(fixture)?;
            (x.witnesses, Some(x.conditions), x.flags)
        }
    };
    let mut r = Report::new("classify");
    r.set("form", json!(id.as_str()));
    r.set("field_d", json!(d));
    r.set("params", json!(s.params_text()));
    r.set("mode", json!(match mode {
        Mode::Conditions => "conditions",
        Mode::Witnesses => "witnesses",
        Mode::Cross => "cross",
    }));
    let (a0, ap) = group_json(&main);
    r.set("A0", a0);
    r.set("Aprime", ap);
    r.line(s.label());
    if let Some(b) = &main.branch {
        r.line(format!("branch: {b}"));
        r.set("branch", json!(b));
    }
    group_lines(&mut r, &main, "");
    if let Some(c) = &other {
        let (a0, ap) = group_json(c);
        r.set("conditions", json!({ "A0": a0, "Aprime": ap, "branch": c.branch }));
        group_lines(&mut r, c, "by conditions: ");
    }
    let witnesses: Vec<Value> = main
        .witnesses
        .iter()
        .map(|w| json!({ "name": w.name, "action": w.action.to_string(), "locus": w.locus, "map": w.map }))
        .collect();
    for w in &main.witnesses {
        let locus = w.locus.as_ref().map(|l| format!(" [{l}]")).unwrap_or_default();
        r.line(format!("witness {} acts as {}{locus}", w.name, w.action));
    }
    r.set("witnesses", json!(witnesses));
    for f in &flags {
        r.line(format!("*** {f}"));
    }
    r.set("flags", json!(flags));
    let checks = invariant_checks(&s, &main);
    let pass = checks.iter().filter(|c| c.1).count();
    for (name, ok) in &checks {
        if !ok {
            r.line(format!("FAIL {name}"));
        }
    }
    r.counts(pass, checks.len() - pass);
    Ok(r)
}

fn verify(case: Option<u8>) -> Result<Report, String> {
    let v = verify_paper(case).map_err(|e| format!("fixture error: {e}"))?;
    let mut r = Report::new("verify-paper");
    if let Some(c) = case {
        r.set("case", json!(c));
    }
    for (form, arrows) in &v.sigma_tables {
        r.line(format!("sigma on {form}: {}", arrows.join("; ")));
    }
    for c in &v.checks {
        r.line(format!("{} case {} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.case, c.name, c.detail));
    }
    for n in &v.notes {
        r.line(format!("NOTE: {n}"));
    }
    for f in &v.flags {
        r.line(format!("*** {f}"));
    }
    r.line(format!("{} passed, {} failed", v.passed(), v.failed()));
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|c| json!({ "case": c.case, "name": c.name, "pass": c.pass, "detail": c.detail }))
        .collect();
    let sigma: BTreeMap<String, Vec<String>> = v.sigma_tables.iter().map(|(f, a)| (f.to_string(), a.clone())).collect();
    r.set("checks", json!(checks));
    r.set("sigma", json!(sigma));
    r.set("notes", json!(v.notes));
    r.set("flags", json!(v.flags));
    r.counts(v.passed(), v.failed());
    Ok(r)
}

fn table1() -> Result<Report, String> {
    let mut r = Report::new("table1");
    let mut rows = Vec::new();
    let mut flags = Vec::new();
    let (mut pass, mut fail) = (0, 0);
    for s in sample_scenarios() {
        let x = cross_check(&s).map_err(|e| format!("fixture error: {e}"))?;
        let mut ok = invariant_checks(&s, &x.witnesses).iter().all(|c| c.1) && x.conditions.a0 == x.witnesses.a0;
        // the witnesses must realise everything the conditions claim
        ok &= x.conditions.aprime.iter().all(|p| x.witnesses.aprime.contains(p));
        if ok {
            pass += 1;
        } else {
            fail += 1;
        }
        let row = table_row(&s, &x.conditions);
        r.line(if ok { row.clone() } else { format!("{row}  FAIL") });
        for f in &x.flags {
            r.line(format!("  *** {f}"));
            flags.push(format!("{}: {f}", s.label()));
        }
        let (a0, ap) = group_json(&x.conditions);
        rows.push(json!({
            "form": s.form.as_str(),
            "field_d": s.d,
            "params": s.params_text(),
            "A0": a0,
            "Aprime": ap,
            "branch": x.conditions.branch,
            "row": row,
            "pass": ok,
        }));
    }
    r.set("rows", json!(rows));
    r.set("flags", json!(flags));
    r.counts(pass, fail);
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate { basis, what } => Ok(enumerate(*basis, *what)),
        Command::Weyl(args) => Ok(weyl(args)),
        Command::Bounds { form } => bounds(form),
        Command::Classify { form, field_d, params, mode } => classify(form, *field_d, params, *mode),
        Command::VerifyPaper { case } => verify(*case),
        Command::Table1 => table1(),
    };
    match result {
        Err(msg) => {
            eprintln!("dp4aut: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Ok(r) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&r.fields).expect("JSON values serialise") + "\n"
            } else {
                r.lines.iter().map(|l| format!("{l}\n")).collect()
            };
            // a closed pipe is not an error of the computation
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if r.fail > 0 {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
