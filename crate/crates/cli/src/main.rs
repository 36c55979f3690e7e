//! Command-line front end. Every subcommand parses its inputs, calls one
//! library operation and prints the result as JSON on stdout.
//!
//! Exit codes: 0 on success, 1 on invalid input or a violated
//! precondition, 2 when a search exhausts its budget.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plane_branch::algebra::json::{poly_from_json, poly_to_json, ypoly_from_json, ypoly_to_json};
use plane_branch::algebra::text::{parse_expr, parse_poly};
use plane_branch::algebra::{format_rational, MultiPoly, Rational, Var, YSeriesPoly};
use plane_branch::branch::{
    family_weierstrass_coeffs, index_set, validate_support, verify_parametrisation, weierstrass_from_puiseux,
    Characteristic, ParamFamily, PuiseuxParam, Vanishing,
};
use plane_branch::grading::Weight;
use plane_branch::hensel::hensel_lift;
use plane_branch::invariants::{a_weight, is_un_invariant, symmetrize};
use plane_branch::rewrite::{
    char_coeff_relation, rewrite_invariant, rewrite_series_invariant, split_required_truncation, split_shifted_series,
    subalgebra_membership_check, translate_nondegeneracy, Budget, Membership, RewriteContext, RewriteResult,
};
use plane_branch::weierstrass::{approximate_root, normalize_leading, weierstrass_prepare};
use plane_branch::Error;
use serde::Deserialize;
use serde_json::{json, Value};

type Poly = MultiPoly<Rational>;

#[derive(Parser)]
#[command(
    name = "plane-branch",
    version,
    about = "Exact computations with plane curve branches"
)]
struct Cli {
    /// TOML file with default budgets (`truncation`, `max_w_degree`,
    /// `max_den_degree`, `ceiling_w_degree`, `ceiling_den_degree`, `excess`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print compact instead of pretty JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic exponents of a parametrisation such as "t^3; t^4+t^7".
    Char { param: String },
    /// Exponents allowed in the support for a characteristic.
    IndexSet {
        #[arg(long = "char")]
        ch: String,
        /// Largest exponent listed (default 3*b_m).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Whether a support has the given characteristic.
    Validate {
        #[arg(long = "char")]
        ch: String,
        #[arg(long, value_delimiter = ',')]
        supp: Vec<u32>,
    },
    /// Weierstrass polynomial of a parametrisation, or the symbolic
    /// coefficients of a family with `--char`.
    Weierstrass {
        param: Option<String>,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// T-order of f(T^n, alpha(T)).
    Verify {
        #[arg(long)]
        f: String,
        #[arg(long)]
        param: String,
        /// X-precision of f (default: from an O-term, else its X-degree).
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Weierstrass preparation f = c * u * w.
    Prepare {
        #[arg(long)]
        f: String,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Approximate d-th root of a monic f.
    ApproxRoot {
        #[arg(long)]
        f: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Graded Hensel lifting of in_w(f) = G*H.
    Hensel {
        #[arg(long)]
        f: String,
        #[arg(long)]
        prec: Option<u32>,
        /// Weight "a,b" of x and y.
        #[arg(long)]
        weight: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        excess: Option<u32>,
    },
    /// Whether Q is invariant under A_i -> eps^i A_i, eps^n = 1.
    Invariant {
        #[arg(long)]
        n: u32,
        #[arg(long = "Q", alias = "q")]
        q: String,
    },
    /// Product of Q over the n rotations.
    Symmetrize {
        #[arg(long)]
        n: u32,
        #[arg(long = "Q", alias = "q")]
        q: String,
    },
    /// Q = W(F)/V(F) for an invariant Q.
    Rewrite {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "Q", alias = "q")]
        q: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Evaluate the relation on a series f = u * w instead.
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// A_{b_k}^{n_k} N = M(F, A) at level k.
    Relation {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Split of f*(T^n, Y + lambda) into one factor per level.
    Split {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        excess: Option<u32>,
    },
    /// Condition Q != 0 on the parametrisation as W != 0 on f.
    Translate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "Q", alias = "q")]
        q: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Whether Q = W(F) for some W of degree at most D.
    Membership {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "Q", alias = "q")]
        q: String,
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Characteristic, e.g. "3,4".
    #[arg(long = "char")]
    ch: Option<String>,
    /// Restrict the support (default: every allowed exponent).
    #[arg(long, value_delimiter = ',')]
    supp: Option<Vec<u32>>,
    /// Truncation P of the parametrisation.
    #[arg(long)]
    truncation: Option<u32>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    max_w_degree: Option<u32>,
    #[arg(long)]
    max_den_degree: Option<u32>,
    #[arg(long)]
    ceiling_w_degree: Option<u32>,
    #[arg(long)]
    ceiling_den_degree: Option<u32>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    truncation: Option<u32>,
    max_w_degree: Option<u32>,
    max_den_degree: Option<u32>,
    ceiling_w_degree: Option<u32>,
    ceiling_den_degree: Option<u32>,
    excess: Option<u32>,
}

/// `-` reads stdin, `@path` reads a file, anything else is literal.
fn read_input(arg: &str) -> Result<String, Error> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn as_json(text: &str) -> Result<Option<Value>, Error> {
    if !text.trim_start().starts_with('{') {
        return Ok(None);
    }
    serde_json::from_str(text).map(Some).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read_poly(arg: &str) -> Result<Poly, Error> {
    let text = read_input(arg)?;
    match as_json(&text)? {
        Some(v) => poly_from_json(&v),
        None => parse_poly(text.trim()),
    }
}

fn read_param(arg: &str) -> Result<PuiseuxParam, Error> {
    let text = read_input(arg)?;
    match as_json(&text)? {
        Some(v) => PuiseuxParam::from_json(&v),
        None => PuiseuxParam::parse(text.trim()),
    }
}

/// A polynomial in `X, Y`; the precision comes from `prec`, an `O(X^k)`
/// term or else treats the polynomial as exact through `X^exact_to` (at
/// least its `X`-degree).
fn read_series(arg: &str, prec: Option<u32>, exact_to: u32) -> Result<YSeriesPoly<Rational>, Error> {
    let text = read_input(arg)?;
    if let Some(v) = as_json(&text)? {
        let f = ypoly_from_json(&v)?;
        return Ok(match prec {
            Some(p) => f.truncate(p),
            None => f,
        });
    }
    let e = parse_expr(text.trim())?;
    let prec = match (prec, e.order) {
        (Some(p), _) => p,
        (None, Some((Var::X, k))) if k >= 1 => k - 1,
        (None, Some((v, _))) => return Err(Error::Usage(format!("order term in {v}, expected X"))),
        (None, None) => e.poly.degree_in(Var::X).unwrap_or(0).max(exact_to),
    };
    YSeriesPoly::from_poly(Var::X, prec, &e.poly.filter(|m| m.exp(Var::X) <= prec))
}

fn parse_weight(s: &str) -> Result<Weight, Error> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Usage(format!("bad weight `{s}`"))))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b] => Weight::new(a, b),
        _ => Err(Error::Usage(format!("weight `{s}` must be `a,b`"))),
    }
}

fn rat_str(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn poly_value(p: &Poly) -> Value {
    let mut v = poly_to_json(p);
    v["text"] = Value::String(p.to_string());
    v
}

fn series_value(f: &YSeriesPoly<Rational>) -> Value {
    let mut v = ypoly_to_json(f);
    v["text"] = Value::String(f.to_poly().to_string());
    v
}

struct Defaults {
    config: Config,
}

impl Defaults {
    fn characteristic(&self, fam: &FamilyArgs) -> Result<Characteristic, Error> {
        let ch = fam
            .ch
            .as_deref()
            .ok_or_else(|| Error::Usage("--char is required".into()))?;
        Characteristic::parse(ch)
    }

    /// Closed families default to the exact truncation, open ones to `3 b_m`.
    fn family(&self, fam: &FamilyArgs) -> Result<ParamFamily, Error> {
        let ch = self.characteristic(fam)?;
        let prec = fam.truncation.or(self.config.truncation);
        match &fam.supp {
            Some(supp) => {
                let supp: BTreeSet<u32> = supp.iter().copied().collect();
                let exact = ch.n() * supp.iter().next_back().copied().unwrap_or(1);
                ParamFamily::closed(&ch, prec.unwrap_or(exact), supp)
            }
            None => ParamFamily::open(&ch, prec.unwrap_or(3 * ch.b_m())),
        }
    }

    fn budget(&self, n: u32, b: &BudgetArgs) -> Budget {
        let base = Budget::default_for(n);
        let d = b.max_w_degree.or(self.config.max_w_degree).unwrap_or(base.max_w_degree);
        let l = b
            .max_den_degree
            .or(self.config.max_den_degree)
            .unwrap_or(base.max_den_degree);
        let cd = b.ceiling_w_degree.or(self.config.ceiling_w_degree).unwrap_or(d);
        let cl = b.ceiling_den_degree.or(self.config.ceiling_den_degree).unwrap_or(l);
        Budget::new(d, l).with_ceiling(cd.max(d), cl.max(l))
    }
}

fn family_value(f: &ParamFamily) -> Value {
    json!({
        "characteristic": f.ch.b(),
        "support": f.support,
        "truncation": f.prec,
    })
}

fn rewrite_value(r: &RewriteResult) -> Value {
    json!({
        "W": poly_value(&r.w),
        "V": poly_value(&r.v),
        "mu": r.mu.to_string(),
        "mu_exponents": r.mu_exponents,
        "budgets": {
            "max_w_degree": r.max_w_degree,
            "max_den_degree": r.max_den_degree,
            "truncation": r.truncation,
        },
        "verified": r.verified,
    })
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| {
                let (line, column) = e.span().map_or((0, 0), |s| line_col(&text, s.start));
                Error::Parse {
                    line,
                    column,
                    message: e.message().to_string(),
                }
            })?
        }
        None => Config::default(),
    };
    let d = Defaults { config };
    Ok(match &cli.command {
        Command::Char { param } => {
            let p = read_param(param)?;
            let ch = p.characteristic()?;
            let b_bar: Vec<u64> = (1..=ch.m()).map(|k| ch.b_bar(k)).collect();
            json!({
                "characteristic": ch.b(),
                "e": ch.e(),
                "n_k": ch.n_k(),
                "b_bar": b_bar,
            })
        }
        Command::IndexSet { ch, bound } => {
            let ch = Characteristic::parse(ch)?;
            let bound = bound.unwrap_or(3 * ch.b_m());
            json!({"characteristic": ch.b(), "bound": bound, "index_set": index_set(&ch, bound)})
        }
        Command::Validate { ch, supp } => {
            let ch = Characteristic::parse(ch)?;
            let supp: BTreeSet<u32> = supp.iter().copied().collect();
            json!({"characteristic": ch.b(), "support": supp, "valid": validate_support(&ch, &supp)})
        }
        Command::Weierstrass { param, family } => match (param, &family.ch) {
            (Some(param), None) => {
                let p = read_param(param)?;
                let f = weierstrass_from_puiseux(&p)?;
                json!({"param": p.to_json(), "f": series_value(&f)})
            }
            (None, Some(_)) => {
                let fam = d.family(family)?;
                let coeffs = family_weierstrass_coeffs(&fam)?;
                let entries: serde_json::Map<String, Value> = coeffs
                    .entries
                    .iter()
                    .filter(|(_, f)| !f.is_zero())
                    .map(|(&(i, j), f)| (Var::C(i, j).to_string(), Value::String(f.to_string())))
                    .collect();
                json!({
                    "family": family_value(&fam),
                    "x_precision": coeffs.x_precision(),
                    "coefficients": entries,
                })
            }
            _ => return Err(Error::Usage("give either a parametrisation or --char".into())),
        },
        Command::Verify { f, param, prec } => {
            let p = read_param(param)?;
            let f = read_series(f, *prec, p.prec / p.n)?;
            let v = verify_parametrisation(&f, &p);
            let (order, exact) = match v {
                Vanishing::Order(k) => (k, true),
                Vanishing::AtLeast(k) => (k, false),
            };
            json!({"order": order, "order_is_exact": exact, "verified": v.vanishes()})
        }
        Command::Prepare { f, prec } => {
            let f = read_series(f, *prec, 0)?;
            let (c, g) = normalize_leading(&f)?;
            let prep = weierstrass_prepare(&g, g.prec())?;
            json!({
                "normalizer": rat_str(&c),
                "u": series_value(&prep.u),
                "w": series_value(&prep.w),
                "x_precision": prep.prec,
            })
        }
        Command::ApproxRoot { f, d: deg, prec } => {
            let f = read_series(f, *prec, 0)?;
            let p = approximate_root(&f, *deg)?;
            let r = f.sub(&p.pow(*deg));
            let rdeg = (!r.is_zero()).then(|| r.degree());
            json!({"root": series_value(&p), "remainder_degree": rdeg})
        }
        Command::Hensel {
            f,
            prec,
            weight,
            g,
            h,
            excess,
        } => {
            let f = read_series(f, *prec, 0)?;
            let w = parse_weight(weight)?;
            let excess = excess.or(d.config.excess).unwrap_or(4);
            let lift = hensel_lift(&f, w, &read_poly(g)?, &read_poly(h)?, excess)?;
            json!({
                "weight": [w.a, w.b],
                "excess": excess,
                "resultant": rat_str(&lift.resultant),
                "g": poly_value(&lift.g_poly()),
                "h": poly_value(&lift.h_poly()),
                "scaled_parts_integral": lift.scaled_parts_integral(),
            })
        }
        Command::Invariant { n, q } => {
            let q = read_poly(q)?;
            let weights: BTreeSet<u64> = q.terms().map(|(m, _)| a_weight(m) % *n as u64).collect();
            json!({"n": n, "invariant": is_un_invariant(&q, *n), "weight_residues": weights})
        }
        Command::Symmetrize { n, q } => {
            let q = read_poly(q)?;
            json!({"n": n, "symmetrized": poly_value(&symmetrize(&q, *n)?)})
        }
        Command::Rewrite {
            family,
            q,
            budget,
            series,
            prec,
        } => {
            let fam = d.family(family)?;
            let ctx = RewriteContext::new(&fam)?;
            let q = read_poly(q)?;
            let budget = d.budget(fam.n(), budget);
            match series {
                None => {
                    let mut v = rewrite_value(&rewrite_invariant(&ctx, &q, budget)?);
                    v["family"] = family_value(&fam);
                    v["Q"] = Value::String(q.to_string());
                    v
                }
                Some(s) => {
                    let f = read_series(s, *prec, fam.prec / fam.n())?;
                    let r = rewrite_series_invariant(&ctx, &f, &q, budget)?;
                    let mut v = rewrite_value(&r.rewrite);
                    v["family"] = family_value(&fam);
                    v["Q"] = Value::String(q.to_string());
                    v["normalizer"] = rat_str(&r.normalizer);
                    v["prepared"] = series_value(&r.prepared.w);
                    v["W_value"] = rat_str(&r.w_value);
                    v["V_value"] = rat_str(&r.v_value);
                    v["Q_value"] = r.q_value.as_ref().map_or(Value::Null, rat_str);
                    v
                }
            }
        }
        Command::Relation { family, k, budget } => {
            let fam = d.family(family)?;
            let ctx = RewriteContext::new(&fam)?;
            let r = char_coeff_relation(&ctx, *k, d.budget(fam.n(), budget))?;
            json!({
                "family": family_value(&fam),
                "k": r.k,
                "n_k": r.n_k,
                "lhs": r.lhs_power(&fam.ch).mul(&r.n_mono).to_string(),
                "N": r.n_mono.to_string(),
                "M": poly_value(&r.m),
                "budgets": {"max_w_degree": r.max_w_degree, "max_den_degree": r.max_den_degree, "truncation": fam.prec},
                "verified": r.verified,
            })
        }
        Command::Split { family, excess } => {
            let excess = excess.or(d.config.excess).unwrap_or(0);
            let ch = d.characteristic(family)?;
            let needed = split_required_truncation(&ch, excess);
            let args = FamilyArgs {
                ch: family.ch.clone(),
                supp: family.supp.clone(),
                truncation: family.truncation.or(d.config.truncation).or(Some(needed)),
            };
            let fam = d.family(&args)?;
            let s = split_shifted_series(&fam, excess)?;
            let factors: Vec<Value> = s
                .factors
                .iter()
                .map(|f| json!({"degree": f.degree(), "text": f.to_string()}))
                .collect();
            let checks = json!({
                "recombination": s.recombination_holds(),
                "seeds": s.seeds_match(),
                "leading_term": s.leading_term_matches(),
                "denominators": s.denominators_ok(),
            });
            let ok = checks.as_object().unwrap().values().all(|v| v == &Value::Bool(true));
            json!({
                "family": family_value(&fam),
                "excesses": s.excesses,
                "factors": factors,
                "b_bar": s.b_bar,
                "leading_order": s.leading_order,
                "leading_coeff": s.leading_coeff.to_string(),
                "checks": checks,
                "verified": ok,
            })
        }
        Command::Translate { family, q, budget } => {
            let fam = d.family(family)?;
            let ctx = RewriteContext::new(&fam)?;
            let q = read_poly(q)?;
            let t = translate_nondegeneracy(&ctx, &q, d.budget(fam.n(), budget))?;
            json!({
                "family": family_value(&fam),
                "Q": q.to_string(),
                "symmetrized": poly_value(&t.symmetrized),
                "W": poly_value(&t.w),
                "homogenized": poly_value(&t.homogenized),
                "k": t.k,
                "rewrite": rewrite_value(&t.rewrite),
                "verified": t.rewrite.verified,
            })
        }
        Command::Membership { family, q, degree } => {
            let fam = d.family(family)?;
            let ctx = RewriteContext::new(&fam)?;
            let q = read_poly(q)?;
            let degree = degree
                .or(d.config.max_w_degree)
                .unwrap_or(Budget::default_for(fam.n()).max_w_degree);
            match subalgebra_membership_check(&ctx, &q, degree)? {
                Membership::Found(w) => json!({"member": true, "W": poly_value(&w), "degree_bound": degree}),
                Membership::NoneUpToDegree(k) => json!({"member": false, "degree_bound": k}),
            }
        }
    })
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn error_value(e: &Error) -> Value {
    let mut v = json!({"code": e.code(), "message": e.to_string()});
    match e {
        Error::ExhaustedBudget {
            max_w_degree,
            max_den_degree,
            truncation,
        } => {
            v["bound"] = json!({
                "max_w_degree": max_w_degree,
                "max_den_degree": max_den_degree,
                "truncation": truncation,
            });
        }
        Error::Parse { line, column, .. } => {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        _ => {}
    }
    json!({"error": v})
}

fn print(v: &Value, compact: bool) {
    let s = if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    };
    println!("{}", s.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(v) => {
            print(&v, cli.compact);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            print(&error_value(&e), cli.compact);
            ExitCode::from(if matches!(e, Error::ExhaustedBudget { .. }) {
                2
            } else {
                1
            })
        }
    }
}
