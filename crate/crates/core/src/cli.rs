//! Command-line front end. `run` returns the exit code and both output
//! streams so it can be driven from tests as well as from `main`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify, counts, representatives, ClassLabel};
use crate::error::{Error, Result};
use crate::field::{parse_field_spec, FieldCtx, FieldElem};
use crate::invariants::{
    fst_ram_type, lambda_cr, mu_squared, quad_pair, subclass, theta, FstParams, Subclass,
};
use crate::oracle::{brute_equiv, verify_suite, Report, VerifyOptions, SUITES};
use crate::paper_tables::{check_q, even_table, Claim, TableCheck};
use crate::ramify::ram_type;
use crate::ratfun::RatFun;

#[derive(Parser, Debug)]
#[command(name = "cubic-pgl", version, about = "Degree-3 rational functions over F_q up to PGL(2,q)-equivalence")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; defaults to RAYON_NUM_THREADS or the core count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the JSON result here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// `p^n` or `p`.
    #[arg(long)]
    field: String,
    /// Ascending coefficients of a monic irreducible of degree n over F_p.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct FunArgs {
    #[arg(long)]
    num: String,
    #[arg(long, default_value = "1")]
    den: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Field parameters, optionally with facts about one element.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Equivalence class label of a degree-3 map.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        fun: FunArgs,
    },
    /// Subclass, θ, μ², λ and ramification of f_{s,t}.
    Invariants {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Ramification type as e/d tokens.
    Ramtype {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        fun: FunArgs,
    },
    /// Searches PGL(2,q) for ψ, φ with ψ∘f∘φ = g. Maps are NUM/DEN literals.
    Equiv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// One representative per equivalence class.
    EnumerateClasses {
        #[command(flatten)]
        field: FieldArgs,
    },
    Counts {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Runs a verification suite, or `all` of them.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Recomputes the published tables and compares.
    PaperTables {
        #[arg(long, conflicts_with = "even")]
        q: Option<u32>,
        /// The characteristic-2 correspondence table for --field.
        #[arg(long, requires = "field")]
        even: bool,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        modulus: Option<String>,
    },
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let pool = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let result = pool.install(|| dispatch(&cli.cmd));
    match result {
        Err(e) => {
            let code = match e {
                Error::Internal(_) => 1,
                _ => 2,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
        Ok(out) => {
            let mut o = Outcome { code: if out.ok { 0 } else { 1 }, ..Default::default() };
            let json_text = serde_json::to_string_pretty(&out.json).expect("serializable") + "\n";
            o.stdout = match cli.format {
                Format::Text => out.text,
                Format::Json => json_text.clone(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &json_text) {
                    o.code = 2;
                    o.stderr = format!("error: cannot write {}: {e}\n", path.display());
                }
            }
            o
        }
    }
}

fn make_field(spec: &str, modulus: Option<&str>) -> Result<FieldCtx> {
    let (p, n) = parse_field_spec(spec)?;
    match modulus {
        None => FieldCtx::new(p, n, None),
        Some(m) => {
            let coeffs = m
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad modulus coefficient {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            FieldCtx::new(p, n, Some(&coeffs))
        }
    }
}

fn field_of(a: &FieldArgs) -> Result<FieldCtx> {
    make_field(&a.field, a.modulus.as_deref())
}

fn fun_of(ctx: &FieldCtx, a: &FunArgs) -> Result<RatFun> {
    RatFun::parse(ctx, &format!("{}/{}", a.num, a.den))
}

fn field_json(ctx: &FieldCtx) -> Value {
    json!({"p": ctx.p(), "n": ctx.n(), "q": ctx.q(), "modulus": ctx.modulus()})
}

fn dispatch(cmd: &Cmd) -> Result<Output> {
    match cmd {
        Cmd::Field { field, elem } => cmd_field(&field_of(field)?, elem.as_deref()),
        Cmd::Classify { field, fun } => {
            let ctx = field_of(field)?;
            cmd_classify(&ctx, &fun_of(&ctx, fun)?)
        }
        Cmd::Invariants { field, s, t } => {
            let ctx = field_of(field)?;
            let sp = FstParams::new(&ctx, ctx.parse_elem(s)?, ctx.parse_elem(t)?)?;
            cmd_invariants(&ctx, sp)
        }
        Cmd::Ramtype { field, fun } => {
            let ctx = field_of(field)?;
            let f = fun_of(&ctx, fun)?;
            let rt = ram_type(&ctx, &f)?;
            let mut tokens: Vec<String> = rt.tags().iter().map(|(e, d)| format!("{e}/{d}")).collect();
            tokens.sort();
            Ok(Output {
                text: tokens.join(" ") + "\n",
                json: json!({"field": field_json(&ctx), "function": f.to_literal(&ctx), "ramtype": tokens}),
                ok: true,
            })
        }
        Cmd::Equiv { field, f, g } => {
            let ctx = field_of(field)?;
            cmd_equiv(&ctx, &RatFun::parse(&ctx, f)?, &RatFun::parse(&ctx, g)?)
        }
        Cmd::EnumerateClasses { field } => cmd_enumerate(&field_of(field)?),
        Cmd::Counts { field } => {
            let ctx = field_of(field)?;
            let c = counts(&ctx);
            Ok(Output {
                text: format!("{c}\n"),
                json: json!({"field": field_json(&ctx), "n_i": c.n_i, "n_ii": c.n_ii, "n_iii": c.n_iii, "total": c.total}),
                ok: true,
            })
        }
        Cmd::Verify { field, suite, seed, samples } => {
            let ctx = field_of(field)?;
            cmd_verify(&ctx, suite, VerifyOptions { seed: *seed, samples: *samples })
        }
        Cmd::PaperTables { q, even, field, modulus } => {
            if *even {
                let spec = field.as_deref().expect("clap enforces --field");
                cmd_even(&make_field(spec, modulus.as_deref())?)
            } else {
                let q = q.ok_or_else(|| Error::Parse("paper-tables needs --q 25, --q 27 or --even".into()))?;
                cmd_tables(q)
            }
        }
    }
}

fn cmd_field(ctx: &FieldCtx, elem: Option<&str>) -> Result<Output> {
    let g = ctx.generator();
    let cubes: Vec<String> = ctx.cube_transversal().iter().map(|&x| ctx.format_elem(x)).collect();
    let mut text = format!(
        "q = {} = {}^{}\nmodulus = {:?}\ngenerator = {}\ncube transversal = {}\n",
        ctx.q(),
        ctx.p(),
        ctx.n(),
        ctx.modulus(),
        ctx.format_elem(g),
        cubes.join(" ")
    );
    let mut j = field_json(ctx);
    j["generator"] = json!(ctx.format_elem(g));
    j["cube_transversal"] = json!(cubes);
    if let Some(e) = elem {
        let x = ctx.parse_elem(e)?;
        let inv = ctx.inv(x).map(|y| ctx.format_elem(y));
        let square = ctx.is_square(x).ok();
        text += &format!(
            "element {} = {}\n  inverse = {}\n  square = {}\n",
            ctx.format_elem(x),
            ctx.format_alpha(x),
            inv.clone().unwrap_or_else(|| "none".into()),
            square.map_or_else(|| "n/a".into(), |b| b.to_string()),
        );
        if ctx.p() == 2 {
            text += &format!("  trace = {}\n", ctx.trace_q_over_2(x)?);
        }
        j["element"] = json!({"literal": ctx.format_elem(x), "inverse": inv, "square": square});
    }
    Ok(Output { text, json: j, ok: true })
}

fn label_json(ctx: &FieldCtx, l: &ClassLabel) -> Value {
    l.to_json(ctx)
}

fn cmd_classify(ctx: &FieldCtx, f: &RatFun) -> Result<Output> {
    let l = classify(ctx, f)?;
    let rep = representatives(ctx)?
        .into_iter()
        .find(|(r, _)| *r == l)
        .map(|(_, g)| g);
    let mut text = format!("{}\n", l.display(ctx));
    if let Some(g) = &rep {
        text += &format!("representative: {}\n", g.display(ctx));
    }
    Ok(Output {
        text,
        json: json!({
            "field": field_json(ctx),
            "function": f.to_literal(ctx),
            "label": label_json(ctx, &l),
            "representative": rep.map(|g| g.to_literal(ctx)),
        }),
        ok: true,
    })
}

fn cmd_invariants(ctx: &FieldCtx, sp: FstParams) -> Result<Output> {
    let sub = (ctx.p() != 2).then(|| subclass(ctx, sp));
    let th = theta(ctx, sp);
    let rt = fst_ram_type(ctx, sp)?;
    let lit = |x: FieldElem| ctx.format_elem(x);
    let mut text = format!("f = {}\n", sp.ratfun(ctx).display(ctx));
    match sub {
        Some(s) => text += &format!("subclass = {s}\n"),
        None => text += "subclass = n/a (characteristic 2)\n",
    }
    text += &format!("theta = {}", lit(th));
    if ctx.n() > 1 {
        text += &format!(" = {}", ctx.format_alpha(th));
    }
    text += "\n";
    let mut j = json!({
        "field": field_json(ctx),
        "s": lit(sp.s),
        "t": lit(sp.t),
        "subclass": sub.map(|s| s.to_string()),
        "theta": lit(th),
        "ramtype": rt.to_string(),
    });
    if sub == Some(Subclass::IIIb) {
        let m = mu_squared(ctx, &quad_pair(ctx, sp)?)?;
        let lam = lambda_cr(ctx, sp)?;
        text += &format!("mu2 = {}\nlambda = {}\n", lit(m), lit(lam));
        j["mu2"] = json!(lit(m));
        j["lambda"] = json!(lit(lam));
    }
    text += &format!("ramtype = {rt}\n");
    Ok(Output { text, json: j, ok: true })
}

fn cmd_equiv(ctx: &FieldCtx, f: &RatFun, g: &RatFun) -> Result<Output> {
    let hit = brute_equiv(ctx, f, g)?;
    let (text, j) = match hit {
        Some((psi, phi)) => (
            format!(
                "equivalent\npsi = {}  [{}]\nphi = {}  [{}]\n",
                psi.display(ctx),
                psi.to_literal(ctx),
                phi.display(ctx),
                phi.to_literal(ctx)
            ),
            json!({"equivalent": true, "psi": psi.to_literal(ctx), "phi": phi.to_literal(ctx)}),
        ),
        None => ("not equivalent\n".to_string(), json!({"equivalent": false})),
    };
    Ok(Output { text, json: j, ok: true })
}

fn cmd_enumerate(ctx: &FieldCtx) -> Result<Output> {
    let reps = representatives(ctx)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (l, f) in &reps {
        let rt = ram_type(ctx, f).ok();
        text += &format!(
            "{:<28} {:<40} {}\n",
            l.display(ctx),
            f.display(ctx),
            rt.as_ref().map_or_else(|| "inseparable".into(), |r| r.to_string())
        );
        rows.push(json!({
            "label": label_json(ctx, l),
            "num": f.num().to_literal(ctx),
            "den": f.den().to_literal(ctx),
            "ramtype": rt.map(|r| r.to_string()),
        }));
    }
    text += &format!("{}\n", counts(ctx));
    Ok(Output {
        text,
        json: json!({"field": field_json(ctx), "classes": rows}),
        ok: true,
    })
}

fn cmd_verify(ctx: &FieldCtx, suite: &str, opts: VerifyOptions) -> Result<Output> {
    let reports: Vec<Report> = if suite == "all" {
        let mut v = Vec::new();
        for s in SUITES {
            match verify_suite(ctx, s, opts) {
                Ok(r) => v.push(r),
                Err(Error::Excluded(_)) => {}
                Err(e) => return Err(e),
            }
        }
        v
    } else {
        vec![verify_suite(ctx, suite, opts)?]
    };
    let ok = reports.iter().all(|r| r.passed);
    Ok(Output {
        text: reports.iter().map(Report::text).collect(),
        json: serde_json::to_value(&reports).expect("serializable"),
        ok,
    })
}

fn claims_text(claims: &[Claim]) -> String {
    claims
        .iter()
        .map(|c| {
            format!(
                "  [{}] ({}) {} {}; classified {}\n",
                if c.holds { "ok" } else { "MISMATCH" },
                c.row,
                c.function,
                c.claim,
                c.found
            )
        })
        .collect()
}

fn cmd_tables(q: u32) -> Result<Output> {
    let (tables, claims) = check_q(q)?;
    let mut text = String::new();
    for t in &tables {
        text += &format!("{} ({})\n", t.table, if t.passed() { "all rows match" } else { "MISMATCH" });
        for r in &t.rows {
            text += &format!(
                "  ({}, {}) -> {}{}\n",
                r.s,
                r.t,
                r.computed,
                if r.matches && r.subclass_ok { String::new() } else { format!("   expected {}", r.expected) }
            );
        }
    }
    text += "listed representatives\n";
    text += &claims_text(&claims);
    let ok = tables.iter().all(TableCheck::passed) && claims.iter().all(|c| c.holds);
    Ok(Output {
        text,
        json: json!({"q": q, "tables": tables, "representatives": claims, "passed": ok}),
        ok,
    })
}

fn cmd_even(ctx: &FieldCtx) -> Result<Output> {
    let claims = even_table(ctx)?;
    let ok = claims.iter().all(|c| c.holds);
    Ok(Output {
        text: format!("characteristic-2 correspondence over F_{}\n{}", ctx.q(), claims_text(&claims)),
        json: json!({"field": field_json(ctx), "rows": claims, "passed": ok}),
        ok,
    })
}
