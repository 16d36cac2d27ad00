//! Command dispatch and report assembly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use enriched::ball::{
    b_embedding_check, ball_algebra_check, ball_category, cancellativity_consequences, find_algebra_structure,
    tensored_check, BallTower,
};
use enriched::colimit::{
    algebra_extract, cocompleteness_check, min_characterization, t_homomorphism_check, weighted_colimit,
};
use enriched::dist::{check_adjoint_pair, validate_distributor, VDistributor};
use enriched::lawvere::{cauchy_pair, is_l_complete, lawvere_completion};
use enriched::monadkit::{
    admissible_class_check, bc_star_square_check, lax_idempotency_via_bc, submonad_build, t_embedding_check, MonadData,
    Universe,
};
use enriched::presheaf::{vector_label, PresheafCategory, PresheafTower, DEFAULT_BUDGET};
use enriched::report::{Check, Mode, Verdict};
use enriched::selftest::{run_all, run_criterion, SelftestConfig};
use enriched::vcat::check_adjunction;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::workspace::{emit_document, parse_workspace, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "enriched", version, about = "Exact computations with quantale-enriched categories")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Largest number of candidates any enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 2021, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate workspace files.
    Validate {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Check a property of named records.
    Check {
        #[arg(value_enum)]
        property: Property,
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        sel: Selectors,
    },
    /// Compute a construction and emit it as workspace records.
    Compute {
        #[arg(value_enum)]
        construction: Construction,
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        sel: Selectors,
    },
    /// Compute a completion.
    Complete {
        #[arg(value_enum)]
        kind: Completion,
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        sel: Selectors,
    },
    /// Run the built-in acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Separated,
    FullyFaithful,
    FullyDense,
    Adjunction,
    Distributor,
    BcSquare,
    LaxIdempotent,
    Admissible,
    TEmbedding,
    BEmbedding,
    Tensored,
    BallAlgebra,
    Algebra,
    Homomorphism,
    LComplete,
    Cancellative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Presheaf,
    Ball,
    Submonad,
    Colimit,
    Algebra,
    LawvereCompletion,
    CauchyPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Completion {
    Lawvere,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Monad {
    #[default]
    Presheaf,
    /// Balls with every radius.
    Ball,
    /// Balls with radius different from bottom.
    BallNonzero,
    /// The submonad named by `--spec`.
    Submonad,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Selectors {
    #[arg(long)]
    pub quantale: Option<String>,
    #[arg(long)]
    pub category: Option<String>,
    #[arg(long)]
    pub functor: Option<String>,
    /// Right adjoint candidate for `adjunction`.
    #[arg(long)]
    pub right: Option<String>,
    #[arg(long)]
    pub relation: Option<String>,
    #[arg(long)]
    pub square: Option<String>,
    /// A workspace spec or one of `all`, `right_adjoints`, `ball_image`.
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long)]
    pub sequence: Option<String>,
    #[arg(long, value_enum, default_value = "presheaf")]
    pub monad: Monad,
    /// Use balls of every radius, bottom included.
    #[arg(long)]
    pub extended: bool,
}

fn need<'a>(v: &'a Option<String>, flag: &str, what: &str) -> CliResult<&'a str> {
    v.as_deref()
        .ok_or_else(|| CliError::Usage(format!("{what} needs --{flag}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub budget: u64,
    pub seed: u64,
    pub status: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    /// 0 when everything passed, 1 on any failure, 2 on input errors and
    /// 3 when a budget left something unchecked.
    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "pass" => 0,
            "fail" => 1,
            "unchecked" | "budget" => 3,
            _ => 2,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "command: {}", self.command);
                let _ = writeln!(s, "budget: {}  seed: {}", self.budget, self.seed);
                let _ = writeln!(s, "status: {}", self.status);
                if let Some(e) = &self.error {
                    let _ = writeln!(s, "error: {e}");
                }
                for c in &self.checks {
                    let _ = writeln!(s, "  {c}");
                }
                if let Some(o) = &self.output {
                    let _ = writeln!(s, "output:");
                    let _ = writeln!(s, "{}", serde_json::to_string_pretty(o).expect("values serialize"));
                }
                s
            }
        }
    }
}

struct Outcome {
    checks: Vec<Check>,
    output: Option<Value>,
}

impl Outcome {
    fn checks(checks: Vec<Check>) -> Self {
        Outcome { checks, output: None }
    }

    fn with(mut self, output: Value) -> Self {
        self.output = Some(output);
        self
    }
}

fn exhaustive(name: &str, ok: bool, witness: impl FnOnce() -> String) -> Check {
    Check::exhaustive(name, Verdict::from_bool(ok, witness))
}

/// Runs one parsed invocation. `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: &str) -> Report {
    let result = match &cli.command {
        Command::Validate { files } => validate(files),
        Command::Check { property, files, sel } => {
            parse_workspace(files).and_then(|ws| check(*property, &ws, sel, cli.budget, cli.seed))
        }
        Command::Compute { construction, files, sel } => {
            parse_workspace(files).and_then(|ws| compute(*construction, &ws, sel, cli.budget))
        }
        Command::Complete { kind: Completion::Lawvere, files, sel } => {
            parse_workspace(files).and_then(|ws| compute(Construction::LawvereCompletion, &ws, sel, cli.budget))
        }
        Command::Selftest { criterion } => selftest(*criterion, cli.budget, cli.seed),
    };
    let mut report = Report {
        command: argv.to_string(),
        budget: cli.budget,
        seed: cli.seed,
        status: String::new(),
        checks: Vec::new(),
        output: None,
        error: None,
    };
    match result {
        Ok(o) => {
            report.status = if o.checks.iter().any(|c| c.verdict.failed()) {
                "fail"
            } else if o.checks.iter().any(|c| c.verdict.is_unchecked()) {
                "unchecked"
            } else {
                "pass"
            }
            .to_string();
            report.checks = o.checks;
            report.output = o.output;
        }
        Err(CliError::Core(e @ enriched::Error::BudgetExceeded { .. })) => {
            report.status = "unchecked".into();
            report.checks = vec![Check::new("budget", Verdict::unchecked(e.to_string()), Mode::Skipped)];
        }
        Err(e) => {
            report.status = match e.exit_code() {
                3 => "budget",
                _ => "error",
            }
            .to_string();
            report.error = Some(e.to_string());
        }
    }
    report
}

fn validate(files: &[String]) -> CliResult<Outcome> {
    let ws = parse_workspace(files)?;
    let counts = json!({
        "quantales": ws.quantales.keys().collect::<Vec<_>>(),
        "categories": ws.categories.keys().collect::<Vec<_>>(),
        "functors": ws.functors.keys().collect::<Vec<_>>(),
        "relations": ws.relations.keys().collect::<Vec<_>>(),
        "squares": ws.squares.keys().collect::<Vec<_>>(),
        "submonad_specs": ws.specs.keys().collect::<Vec<_>>(),
        "sequences": ws.sequences.keys().collect::<Vec<_>>(),
    });
    Ok(Outcome::checks(vec![Check::exhaustive("validate", Verdict::Pass)]).with(counts))
}

fn selftest(only: Option<u8>, budget: u64, seed: u64) -> CliResult<Outcome> {
    let cfg = SelftestConfig { budget, seed };
    let results = match only {
        Some(id) if (1..=12).contains(&id) => vec![run_criterion(id, &cfg)],
        Some(id) => return Err(CliError::Usage(format!("criteria are numbered 1 to 12, got {id}"))),
        None => run_all(&cfg),
    };
    let mut details = BTreeMap::new();
    let checks = results
        .iter()
        .map(|r| {
            details.insert(format!("{:02}", r.id), json!({ "title": r.title, "details": r.details }));
            Check::new(&format!("criterion {}: {}", r.id, r.title), r.verdict.clone(), r.mode.clone())
        })
        .collect();
    Ok(Outcome::checks(checks).with(json!(details)))
}

/// The workspace records over one quantale, named by `--quantale` when the
/// workspace mixes several.
fn universe(ws: &Workspace, quantale: Option<&str>) -> CliResult<Universe> {
    let used: std::collections::BTreeSet<&String> = ws.category_quantale.values().collect();
    let qname = match quantale {
        Some(q) => {
            ws.quantale(q)?;
            q.to_string()
        }
        None if used.len() == 1 => used.into_iter().next().expect("one quantale").clone(),
        None => return Err(CliError::Usage("the workspace mixes quantales; admissible needs --quantale".into())),
    };
    let over = |x: &enriched::VCategory| ws.quantale_name_of(x) == Some(qname.as_str());
    let distributors: Vec<VDistributor> = ws
        .relations
        .values()
        .filter(|r| over(&r.dom))
        .filter_map(|r| validate_distributor(&r.rel, &r.dom, &r.cod).ok())
        .collect();
    Ok(Universe {
        categories: ws.categories.values().filter(|x| over(x)).cloned().collect(),
        functors: ws.functors.values().filter(|f| over(f.dom())).cloned().collect(),
        distributors,
    })
}

fn monad_data(ws: &Workspace, sel: &Selectors, budget: u64) -> CliResult<(MonadData, Vec<Check>)> {
    let x = ws.category(need(&sel.category, "category", "lax-idempotent")?)?;
    Ok(match sel.monad {
        Monad::Presheaf => (MonadData::from(&PresheafTower::build(x, budget)?), Vec::new()),
        Monad::Ball | Monad::BallNonzero => {
            let t = BallTower::build(x, sel.monad == Monad::Ball)?;
            (t.monad_data(), t.monad_laws())
        }
        Monad::Submonad => {
            let spec = ws.spec(need(&sel.spec, "spec", "a submonad")?)?;
            let t = submonad_build(&spec, x, budget)?;
            let status = Check::exhaustive("multiplication", t.mult_status.clone());
            (t.monad_data()?, vec![status])
        }
    })
}

fn check(p: Property, ws: &Workspace, sel: &Selectors, budget: u64, seed: u64) -> CliResult<Outcome> {
    let name = p.to_possible_value().expect("named").get_name().to_string();
    let cat = |what: &str| -> CliResult<_> { ws.category(need(&sel.category, "category", what)?).cloned() };
    let fun = |what: &str| -> CliResult<_> { ws.functor(need(&sel.functor, "functor", what)?).cloned() };
    let spec = |what: &str| ws.spec(need(&sel.spec, "spec", what)?);
    Ok(match p {
        Property::Separated => {
            let x = cat(&name)?;
            let w = x.separation_witness();
            Outcome::checks(vec![Check::exhaustive(
                &name,
                Verdict::from_witness(w.map(|(a, b)| format!("{} ≃ {}", x.label(a), x.label(b)))),
            )])
        }
        Property::FullyFaithful => {
            let f = fun(&name)?;
            Outcome::checks(vec![exhaustive(&name, f.is_fully_faithful(), || format!("{} is not fully faithful", f.name()))])
        }
        Property::FullyDense => {
            let f = fun(&name)?;
            Outcome::checks(vec![exhaustive(&name, f.is_fully_dense(), || format!("{} is not fully dense", f.name()))])
        }
        Property::Adjunction => {
            let f = fun(&name)?;
            let g = ws.functor(need(&sel.right, "right", "adjunction")?)?;
            let w = check_adjunction(&f, g)?;
            Outcome::checks(vec![Check::exhaustive(
                &name,
                Verdict::from_witness(w.map(|(a, b)| format!("({}, {})", f.dom().label(a), g.dom().label(b)))),
            )])
        }
        Property::Distributor => {
            let r = ws.relation(need(&sel.relation, "relation", &name)?)?;
            let v = match validate_distributor(&r.rel, &r.dom, &r.cod) {
                Ok(_) => Verdict::Pass,
                Err(
                    e @ (enriched::Error::LeftActionFail(..) | enriched::Error::RightActionFail(..)),
                ) => Verdict::Fail { witness: e.to_string() },
                Err(e) => return Err(e.into()),
            };
            Outcome::checks(vec![Check::exhaustive(&name, v)])
        }
        Property::BcSquare => {
            let sq = ws.square(need(&sel.square, "square", &name)?)?;
            let r = bc_star_square_check(sq)?;
            Outcome::checks(vec![Check::exhaustive(&name, r.verdict())]).with(json!({ "square": sq.describe() }))
        }
        Property::LaxIdempotent => {
            let (data, mut checks) = monad_data(ws, sel, budget)?;
            let r = lax_idempotency_via_bc(&data)?;
            checks.push(exhaustive("bc-square", r.bc_square, || "Tη·μ square is not BC*".into()));
            checks.push(exhaustive("Tη ⊣ μ", r.t_unit_left_of_mult, || "adjunction fails".into()));
            checks.push(exhaustive("μ ⊣ ηT", r.mult_left_of_unit_t, || "adjunction fails".into()));
            checks.push(exhaustive("routes agree", r.agree(), || "square and adjunctions disagree".into()));
            Outcome::checks(checks)
        }
        Property::Admissible => {
            let s = spec(&name)?;
            let r = admissible_class_check(&s, &universe(ws, sel.quantale.as_deref())?, budget, seed)?;
            Outcome::checks(r.conditions)
        }
        Property::TEmbedding => {
            let (s, h) = (spec(&name)?, fun(&name)?);
            let r = t_embedding_check(&s, &h)?;
            Outcome::checks(vec![
                exhaustive("fully-faithful", r.fully_faithful, || format!("{} is not fully faithful", h.name())),
                exhaustive("h_* in Φ(T)", r.h_lower_in_phi, || format!("{}_* is not in Φ({})", h.name(), s.name)),
            ])
        }
        Property::BEmbedding => {
            let h = fun(&name)?;
            let r = b_embedding_check(&h)?;
            let mut checks = vec![Check::exhaustive(
                &name,
                Verdict::from_bool(r.holds(), || r.witness.clone().unwrap_or_else(|| "no factorization".into())),
            )];
            if let Some(a) = r.sharp_adjoint {
                checks.push(exhaustive("B̄h ⊣ B̄h♯", a, || "adjunction fails".into()));
            }
            if let Some(l) = r.factorization {
                checks.push(exhaustive("unit factorization", l, || "identities fail".into()));
            }
            Outcome::checks(checks).with(json!(r))
        }
        Property::Tensored => {
            let x = cat(&name)?;
            let c = x.quantale().require_enumerable()?;
            match tensored_check(&x, &c) {
                Ok(act) => {
                    let q = x.quantale();
                    let table: BTreeMap<String, BTreeMap<String, String>> = (0..x.len())
                        .map(|a| {
                            let row = c
                                .iter()
                                .map(|&r| (q.label(r), act.apply(a, r).map(|z| x.label(z).to_string()).unwrap_or_default()))
                                .collect();
                            (x.label(a).to_string(), row)
                        })
                        .collect();
                    Outcome::checks(vec![Check::exhaustive(&name, Verdict::Pass)]).with(json!({ "action": table }))
                }
                Err(e) => Outcome::checks(vec![Check::exhaustive(
                    &name,
                    Verdict::Fail { witness: format!("no {} ⊕ {}", e.x, e.r) },
                )]),
            }
        }
        Property::BallAlgebra => {
            let x = cat(&name)?;
            let bx = ball_category(&x, true)?;
            match find_algebra_structure(&bx, budget)? {
                None => Outcome::checks(vec![Check::exhaustive(
                    &name,
                    Verdict::Fail { witness: "no V-functor α with α(x, k) = x".into() },
                )]),
                Some(alpha) => {
                    let r = ball_algebra_check(&bx, &alpha)?;
                    let mut checks = vec![
                        exhaustive("V-functor", r.functor, || "α is not a V-functor".into()),
                        exhaustive("(ii)", r.cond_ii, || "α(α(x,r),s) ≄ α(x,r⊗s)".into()),
                        exhaustive("(iii)", r.cond_iii, || "X(x, α(x,r)) ≱ r".into()),
                        exhaustive("(iv)", r.cond_iv, || "α(x,k) ≠ x".into()),
                    ];
                    if let Some(a) = r.adjunction {
                        checks.push(exhaustive("α ⊣ η", a, || "adjunction fails".into()));
                    }
                    let map: BTreeMap<String, String> =
                        (0..bx.len()).map(|i| (bx.cat().label(i).to_string(), x.label(alpha[i]).to_string())).collect();
                    Outcome::checks(checks).with(json!({ "alpha": map }))
                }
            }
        }
        Property::Algebra => {
            let (x, s) = (cat(&name)?, spec(&name)?);
            let alg = algebra_extract(&x, &s, budget)?;
            let coc = cocompleteness_check(&x, &s, budget)?;
            let mut checks = vec![
                Check::exhaustive(
                    &name,
                    match &alg {
                        Ok(_) => Verdict::Pass,
                        Err(fs) => Verdict::Fail { witness: format!("no colimit for {}", fs.join(", ")) },
                    },
                ),
                exhaustive("cocomplete", coc.holds(), || coc.failures.join(", ")),
            ];
            match min_characterization(&x, &s, budget) {
                Ok(m) => {
                    checks.push(exhaustive("minima exist", true, String::new));
                    checks.push(exhaustive("condition (2)", m.condition_2, || "fails".into()));
                }
                Err(enriched::Error::NoMinimum(w)) => checks.push(exhaustive("minima exist", false, || w)),
                Err(e) => return Err(e.into()),
            }
            if let Ok(a) = &alg {
                checks.push(exhaustive("α·η = 1", a.unit_retraction, || "fails".into()));
                checks.push(exhaustive("α ⊣ η", a.left_adjoint, || "fails".into()));
            }
            Outcome::checks(checks)
        }
        Property::Homomorphism => {
            let (f, s) = (fun(&name)?, spec(&name)?);
            let ax = algebra_extract(f.dom(), &s, budget)?
                .map_err(|_| CliError::validation(format!("category {}", f.dom().name()), format!("not a {}-algebra", s.name)))?;
            let ay = algebra_extract(f.cod(), &s, budget)?
                .map_err(|_| CliError::validation(format!("category {}", f.cod().name()), format!("not a {}-algebra", s.name)))?;
            let r = t_homomorphism_check(&f, &ax, &ay)?;
            let w = r.witness.clone().unwrap_or_default();
            Outcome::checks(vec![
                exhaustive("lax", r.lax, || w.clone()),
                exhaustive("strict", r.strict, || w.clone()),
            ])
        }
        Property::LComplete => {
            let x = cat(&name)?;
            let r = is_l_complete(&x, budget)?;
            Outcome::checks(vec![Check::exhaustive(&name, Verdict::from_witness(r.witness.clone()))])
                .with(json!({ "right_adjoints": r.members }))
        }
        Property::Cancellative => {
            let q = ws.quantale(need(&sel.quantale, "quantale", &name)?)?;
            let flags = q.flags();
            let mut checks = vec![Check::exhaustive(
                &name,
                Verdict::from_witness(flags.cancellative_witness.clone().map(|(r, s)| format!("{r} = {s} ⊗ {r}"))),
            )];
            let mut out = json!({ "flags": flags });
            if q.is_integral() && q.is_enumerable() {
                let r = cancellativity_consequences(q, seed)?;
                checks.push(exhaustive("BV separated", r.bv_separated == flags.cancellative, || {
                    format!("separation of BV is {} but cancellativity is {}", r.bv_separated, flags.cancellative)
                }));
                checks.push(exhaustive("B preserves separation", r.preserves_separation == flags.cancellative, || {
                    r.preservation_witness.clone().unwrap_or_default()
                }));
                out["consequences"] = json!(r);
            }
            Outcome::checks(checks).with(out)
        }
    })
}

fn compute(c: Construction, ws: &Workspace, sel: &Selectors, budget: u64) -> CliResult<Outcome> {
    let what = c.to_possible_value().expect("named").get_name().to_string();
    let cat = || -> CliResult<_> { ws.category(need(&sel.category, "category", &what)?).cloned() };
    Ok(match c {
        Construction::Presheaf => {
            let x = cat()?;
            let px = PresheafCategory::build(&x, budget)?;
            let y = px.yoneda()?.renamed(&format!("y_{}", x.name()));
            Outcome::checks(Vec::new()).with(emit_document(ws, &x, &[px.cat()], &[&y])?)
        }
        Construction::Ball => {
            let x = cat()?;
            let bx = ball_category(&x, sel.extended)?;
            let eta = bx.unit()?.renamed(&format!("eta_{}", x.name()));
            Outcome::checks(Vec::new()).with(emit_document(ws, &x, &[bx.cat()], &[&eta])?)
        }
        Construction::Submonad => {
            let x = cat()?;
            let s = ws.spec(need(&sel.spec, "spec", &what)?)?;
            let t = submonad_build(&s, &x, budget)?;
            let unit = t.unit.clone().renamed(&format!("eta_{}", x.name()));
            Outcome::checks(vec![Check::exhaustive("multiplication", t.mult_status.clone())])
                .with(emit_document(ws, &x, &[t.cat()], &[&unit])?)
        }
        Construction::Colimit => {
            let r = ws.relation(need(&sel.relation, "relation", &what)?)?;
            let f = ws.functor(need(&sel.functor, "functor", &what)?)?;
            if !std::sync::Arc::ptr_eq(&r.dom, f.dom()) {
                return Err(CliError::Usage(format!("the weight must start at {}", f.dom().name())));
            }
            match weighted_colimit(&r.rel, &r.cod, f)? {
                Ok(col) => {
                    let map: BTreeMap<String, String> = (0..r.cod.len())
                        .map(|t| (r.cod.label(t).to_string(), f.cod().label(col.g.apply(t)).to_string()))
                        .collect();
                    Outcome::checks(vec![Check::exhaustive("colimit", Verdict::Pass)]).with(json!({
                        "colimit": map,
                        "multiple": col.multiple.iter().map(|&t| r.cod.label(t)).collect::<Vec<_>>(),
                    }))
                }
                Err(e) => Outcome::checks(vec![Check::exhaustive(
                    "colimit",
                    Verdict::Fail { witness: format!("[φ, f_*] is not representable at {}", e.y) },
                )]),
            }
        }
        Construction::Algebra => {
            let x = cat()?;
            let s = ws.spec(need(&sel.spec, "spec", &what)?)?;
            match algebra_extract(&x, &s, budget)? {
                Ok(a) => {
                    let q = x.quantale();
                    let map: BTreeMap<String, String> = a
                        .tx
                        .vectors()
                        .iter()
                        .zip(&a.alpha)
                        .map(|(v, &i)| (vector_label(q, v), x.label(i).to_string()))
                        .collect();
                    Outcome::checks(vec![
                        Check::exhaustive("algebra", Verdict::Pass),
                        exhaustive("α·η = 1", a.unit_retraction, || "fails".into()),
                        exhaustive("α ⊣ η", a.left_adjoint, || "fails".into()),
                    ])
                    .with(json!({ "alpha": map }))
                }
                Err(fs) => Outcome::checks(vec![Check::exhaustive(
                    "algebra",
                    Verdict::Fail { witness: format!("no colimit for {}", fs.join(", ")) },
                )]),
            }
        }
        Construction::LawvereCompletion => {
            let x = cat()?;
            let c = lawvere_completion(&x, budget)?;
            let unit = c.unit.clone().renamed(&format!("y_{}", x.name()));
            let e = enriched::VCategory::unit(x.quantale());
            let mut certified = true;
            for p in &c.pairs {
                let q = x.quantale();
                let ok = check_adjoint_pair(
                    &enriched::VRelation::row_vec(q, &p.psi),
                    &enriched::VRelation::column_vec(q, &p.phi),
                    &e,
                    &x,
                )?
                .holds();
                certified &= ok;
            }
            Outcome::checks(vec![
                exhaustive("pairs certified", certified, || "an adjoint pair fails".into()),
                exhaustive("unit fully faithful", c.unit_fully_faithful, || "fails".into()),
                exhaustive("L(LX) ≅ LX", c.idempotent, || "LX is not Lawvere complete".into()),
            ])
            .with(emit_document(ws, &x, &[c.lx.cat()], &[&unit])?)
        }
        Construction::CauchyPair => {
            let (x, seq) = ws.sequence(need(&sel.sequence, "sequence", &what)?)?;
            let p = cauchy_pair(x, seq)?;
            let rep = p.representative.clone();
            Outcome::checks(vec![
                exhaustive("certified", p.certified, || "unit or counit fails".into()),
                exhaustive("limit", rep.as_deref() == Some(p.limit.as_str()), || format!("representative {rep:?}")),
            ])
            .with(json!(p))
        }
    })
}
