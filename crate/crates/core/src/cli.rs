//! Command-line front end. Every command writes exactly one document to
//! stdout (or `--out`); progress goes to stderr.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::enumerative::{yukawa_from, QData};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::operator::{fit_operator, operator_equal, ThetaOperator};
use crate::poly::Poly;
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::registry::{family_names, get_family, FamilySpec};
use crate::report::{
    self, bps_tables, geometry_json, operator_json, oracle_json, pf_verify, pscheme_json,
    series_json, CheckStatus, Settings,
};
use crate::series::Series;

#[derive(Parser, Debug)]
#[command(
    name = "cymirror",
    version,
    about = "Periods, Picard-Fuchs operators and BPS invariants of pfaffian Calabi-Yau families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Series truncation order.
    #[arg(long, global = true, default_value_t = 30)]
    pub order: usize,
    /// Highest curve degree in BPS tables.
    #[arg(long, global = true, default_value_t = 5)]
    pub max_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PeriodSource {
    ClosedForm,
    Recurrence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fundamental period coefficients.
    Period {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value = "closed-form")]
        source: PeriodSource,
    },
    /// Check that the operator annihilates the closed-form period.
    PfVerify {
        #[arg(long)]
        family: String,
    },
    /// Recover an operator from the closed-form period.
    PfFit {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        theta_order: usize,
        #[arg(long)]
        phi_degree: Option<usize>,
    },
    /// Singular points and local exponents.
    Pscheme {
        #[arg(long)]
        family: String,
    },
    /// Mirror map q(φ) and its integrality
    MirrorMap {
        #[arg(long)]
        family: String,
    },
    /// Yukawa coupling in q
    Yukawa {
        #[arg(long)]
        family: String,
        #[arg(long)]
        virtual_deg: Option<String>,
    },
    /// Genus 0 or 1 BPS invariants.
    Bps {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        genus: u8,
        /// Discriminant polynomial in `p` replacing the conifold factor.
        #[arg(long)]
        disc: Option<String>,
        #[arg(long)]
        virtual_deg: Option<String>,
    },
    /// Apply a named transform chain from the registry.
    Transform {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "to-infinity")]
        name: String,
    },
    /// Hilbert series, degree, c2·H and h12.
    Geometry {
        #[arg(long)]
        family: String,
    },
    /// Residue constant-term oracle against the closed form.
    Oracle {
        #[arg(long, default_value = "x13")]
        family: String,
        #[arg(long, default_value_t = 4)]
        orders: usize,
        /// Also run the exhaustive enumeration (slow beyond t^14).
        #[arg(long)]
        naive: bool,
    },
    /// Every table for one family or all of them.
    Report {
        #[arg(long)]
        family: Option<String>,
        /// Diff against golden values and exit 1 on any mismatch.
        #[arg(long)]
        check: bool,
    },
}

/// A command result: the JSON document, a flat table for CSV and markdown,
/// and whether verification passed.
pub struct Doc {
    pub json: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub ok: bool,
}

impl Doc {
    fn new(json: Value, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        Doc {
            json,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows,
            ok: true,
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
                w.write_record(&self.columns).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                    .expect("utf-8")
            }
            OutputFormat::Markdown => {
                let esc = |s: &str| s.replace('|', "\\|");
                let mut out = format!(
                    "| {} |\n",
                    self.columns
                        .iter()
                        .map(|c| esc(c))
                        .collect::<Vec<_>>()
                        .join(" | ")
                );
                out += &format!("|{}\n", " --- |".repeat(self.columns.len()));
                for r in &self.rows {
                    out += &format!(
                        "| {} |\n",
                        r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")
                    );
                }
                out
            }
        })
    }
}

fn series_rows(s: &Series, count: usize) -> Vec<Vec<String>> {
    s.coeffs()
        .iter()
        .take(count)
        .enumerate()
        .map(|(n, c)| vec![n.to_string(), fmt_rational(c)])
        .collect()
}

fn parse_disc(src: &str) -> Result<Poly> {
    let m = Expr::parse(src)?.eval_mpoly(&["p"])?;
    let deg = m.terms().keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut c = vec![Rational::zero(); deg + 1];
    for (e, v) in m.terms() {
        c[e[0] as usize] = v.clone();
    }
    Ok(Poly::new(c))
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cmd_period(spec: &FamilySpec, source: PeriodSource, order: usize) -> Result<Doc> {
    let s = match source {
        PeriodSource::ClosedForm => spec.closed_form_period(order)?,
        PeriodSource::Recurrence => spec
            .operator()?
            .recurrence_solve(&Rational::from_integer(1.into()), order)?,
    };
    let json = json!({ "family": spec.name, "source": format!("{source:?}"), "coefficients": series_json(&s, order + 1) });
    Ok(Doc::new(json, &["n", "a_n"], series_rows(&s, order + 1)))
}

fn cmd_pf_fit(
    spec: &FamilySpec,
    order: usize,
    theta_order: usize,
    phi_degree: Option<usize>,
) -> Result<Doc> {
    let printed = spec.operator().ok();
    let phi_degree = phi_degree
        .or(printed.as_ref().map(ThetaOperator::phi_degree))
        .unwrap_or(4);
    let s = spec.closed_form_period(order)?;
    let fitted = fit_operator(&s, theta_order, phi_degree)?;
    let equal = match (&fitted, &printed) {
        (Some(f), Some(p)) => Some(operator_equal(f, p)),
        _ => None,
    };
    let json = json!({
        "family": spec.name,
        "fitted": fitted.as_ref().map(operator_json),
        "matches_registry_operator": equal,
    });
    let rows = match &fitted {
        Some(f) => (0..=f.phi_degree())
            .map(|j| vec![j.to_string(), f.p_poly(j).display_in("T")])
            .collect(),
        None => Vec::new(),
    };
    let mut d = Doc::new(json, &["j", "P_j"], rows);
    d.ok = fitted.is_some() && equal != Some(false);
    Ok(d)
}

fn cmd_report(family: Option<&str>, settings: &Settings, check: bool) -> Result<Doc> {
    let names: Vec<String> = match family {
        Some(f) => vec![f.to_string()],
        None => family_names().into_iter().map(String::from).collect(),
    };
    let mut families = serde_json::Map::new();
    let mut rows = Vec::new();
    let mut counts = [0usize; 3];
    let mut mismatches = Vec::new();
    for name in &names {
        eprintln!("[report] {name}");
        let r = report::family_report(name, settings, &mut |stage| {
            eprintln!("[report] {name}: {stage}")
        })?;
        for c in &r.checks {
            let idx = match c.status {
                CheckStatus::Pass => 0,
                CheckStatus::Fail => 1,
                CheckStatus::KnownDeviation => 2,
            };
            counts[idx] += 1;
            let status = serde_json::to_value(c.status)?;
            rows.push(vec![
                c.family.clone(),
                c.item.clone(),
                compact(&status),
                compact(&c.expected),
                compact(&c.computed),
            ]);
        }
        mismatches.extend(r.failures().map(|c| serde_json::to_value(c).unwrap()));
        families.insert(name.clone(), r.to_json());
    }
    let mut json = json!({
        "families": families,
        "summary": { "pass": counts[0].to_string(), "fail": counts[1].to_string(), "known_deviation": counts[2].to_string() },
    });
    if check {
        json["mismatches"] = Value::Array(mismatches);
    }
    let mut d = Doc::new(
        json,
        &["family", "item", "status", "expected", "computed"],
        rows,
    );
    d.ok = !check || counts[1] == 0;
    Ok(d)
}

pub fn execute(cli: &Cli) -> Result<Doc> {
    let settings = Settings {
        order: cli.order,
        max_degree: cli.max_degree,
    };
    settings.validate()?;
    let order = cli.order;
    Ok(match &cli.command {
        Command::Period { family, source } => cmd_period(&get_family(family)?, *source, order)?,
        Command::PfVerify { family } => {
            let spec = get_family(family)?;
            let (ok, mut json) = pf_verify(&spec, order)?;
            json["family"] = json!(spec.name);
            if let Some(note) = spec.period_rule.as_ref().and_then(|a| a.note.clone()) {
                json["note"] = json!(note);
            }
            let rows = vec![vec![
                spec.name.clone(),
                ok.to_string(),
                compact(&json["first_nonzero_residual"]),
            ]];
            let mut d = Doc::new(
                json,
                &["family", "annihilates", "first_nonzero_residual"],
                rows,
            );
            d.ok = ok;
            d
        }
        Command::PfFit {
            family,
            theta_order,
            phi_degree,
        } => cmd_pf_fit(&get_family(family)?, order, *theta_order, *phi_degree)?,
        Command::Pscheme { family } => {
            let spec = get_family(family)?;
            let ps = pscheme_json(&spec.operator()?)?;
            let rows = ps
                .as_array()
                .unwrap()
                .iter()
                .map(|p| {
                    let ex: Vec<String> = p["exponents"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(compact)
                        .collect();
                    vec![compact(&p["point"]), ex.join(", ")]
                })
                .collect();
            Doc::new(
                json!({ "family": spec.name, "points": ps }),
                &["point", "exponents"],
                rows,
            )
        }
        Command::MirrorMap { family } => {
            let spec = get_family(family)?;
            let qd = QData::new(&spec.operator()?, order)?;
            let q = &qd.q_of_phi;
            let json = json!({ "family": spec.name, "q_of_phi": series_json(q, order + 1), "integral": q.is_integral() });
            Doc::new(json, &["n", "coefficient"], series_rows(q, order + 1))
        }
        Command::Yukawa {
            family,
            virtual_deg,
        } => {
            let spec = get_family(family)?;
            let deg = match virtual_deg {
                Some(v) => parse_rational(v)?,
                None => match &spec.virtual_data {
                    Some(vd) => parse_rational(&vd.deg)?,
                    None => Rational::from_integer(
                        spec.invariants()?
                            .deg
                            .ok_or_else(|| Error::MissingData(format!("{family}: no degree")))?,
                    ),
                },
            };
            let op = spec.operator()?;
            let k = yukawa_from(&QData::new(&op, order)?, &op, &deg)?;
            let n = cli.max_degree + 1;
            Doc::new(
                json!({ "family": spec.name, "yukawa_q": series_json(&k, n) }),
                &["n", "coefficient"],
                series_rows(&k, n),
            )
        }
        Command::Bps {
            family,
            genus,
            disc,
            virtual_deg,
        } => {
            let spec = get_family(family)?;
            let disc = disc.as_deref().map(parse_disc).transpose()?;
            let vd = virtual_deg.as_deref().map(parse_rational).transpose()?;
            let (n0, n1) = bps_tables(&spec, &settings, disc.as_ref(), vd.as_ref())?;
            let table = match genus {
                0 => n0,
                1 => {
                    n1.ok_or_else(|| Error::MissingData(format!("{family}: no genus-one inputs")))?
                }
                g => return Err(Error::Precondition(format!("genus {g} is not supported"))),
            };
            let rows = table
                .entries
                .iter()
                .map(|(d, v)| vec![d.to_string(), fmt_rational(v)])
                .collect();
            let mut d = Doc::new(table.to_json(), &["d", "n_d"], rows);
            d.ok = table.is_integral();
            d
        }
        Command::Transform { family, name } => {
            let spec = get_family(family)?;
            let recipe = spec.transform(name)?;
            let out = spec.transformed(name)?;
            let target = match &recipe.target {
                Some(t) => Some(get_family(t)?.printed_operator()?),
                None => None,
            };
            let json = json!({
                "family": spec.name,
                "transform": name,
                "chain": serde_json::to_value(&recipe.chain)?,
                "operator": operator_json(&out),
                "target": recipe.target,
                "matches_target": target.as_ref().map(|t| operator_equal(&out, t)),
            });
            let rows = (0..=out.phi_degree())
                .map(|j| vec![j.to_string(), out.p_poly(j).display_in("T")])
                .collect();
            Doc::new(json, &["j", "P_j"], rows)
        }
        Command::Geometry { family } => {
            let spec = get_family(family)?;
            let mut json = geometry_json(&spec)?;
            json["family"] = json!(spec.name);
            let keys = ["deg", "h0_H", "c2h", "h12", "palindromic"];
            let mut rows: Vec<Vec<String>> = keys
                .iter()
                .filter_map(|k| json.get(*k).map(|v| vec![k.to_string(), compact(v)]))
                .collect();
            let num: Vec<String> = json["hilbert_numerator"]
                .as_array()
                .unwrap()
                .iter()
                .map(compact)
                .collect();
            rows.insert(0, vec!["hilbert_numerator".into(), num.join(", ")]);
            Doc::new(json, &["quantity", "value"], rows)
        }
        Command::Oracle {
            family,
            orders,
            naive,
        } => {
            let spec = get_family(family)?;
            let (ok, mut json) = oracle_json(&spec, *orders)?;
            let mut ok = ok;
            if *naive {
                let sys = crate::oracle::LaurentMonomialSystem::from_json(
                    spec.residue_system.as_ref().unwrap(),
                )?;
                let agree = (0..=14).all(|p| {
                    sys.constant_term_coefficient(p) == sys.constant_term_coefficient_naive(p)
                });
                json["naive_agrees_to_t14"] = json!(agree);
                ok &= agree;
            }
            let rows = json["coefficients"]
                .as_array()
                .unwrap()
                .iter()
                .zip(json["closed_form"].as_array().unwrap())
                .enumerate()
                .map(|(k, (a, b))| vec![k.to_string(), compact(a), compact(b)])
                .collect();
            let mut d = Doc::new(json, &["k", "oracle", "closed_form"], rows);
            d.ok = ok;
            d
        }
        Command::Report { family, check } => cmd_report(family.as_deref(), &settings, *check)?,
    })
}

fn emit(cli: &Cli, doc: &Doc) -> Result<()> {
    let text = doc.render(cli.output)?;
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(doc) => match emit(&cli, &doc) {
            Ok(()) => i32::from(!doc.ok),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_polynomial() {
        let p = parse_disc("1 - 349*p - 256*p^2").unwrap();
        assert_eq!(p, Poly::from_ints(&[1, -349, -256]));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["cymirror", "period"]), 2);
        assert_eq!(run(["cymirror", "period", "--family", "nope"]), 2);
        assert_eq!(
            run(["cymirror", "bps", "--family", "x13", "--order", "10"]),
            2
        );
    }

    #[test]
    fn renderings() {
        let d = Doc::new(
            json!({"a": "1"}),
            &["k", "v"],
            vec![vec!["1".into(), "a,b".into()]],
        );
        assert_eq!(d.render(OutputFormat::Csv).unwrap(), "k,v\n1,\"a,b\"\n");
        assert_eq!(
            d.render(OutputFormat::Markdown).unwrap(),
            "| k | v |\n| --- | --- |\n| 1 | a,b |\n"
        );
        assert_eq!(
            d.render(OutputFormat::Json).unwrap(),
            "{\n  \"a\": \"1\"\n}\n"
        );
    }
}
