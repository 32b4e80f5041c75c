//! Per-family reproduction of every stored table, diffed against the golden
//! values in the registry.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumerative::{
    bcov_genus1, conifold_discriminant, gv_genus0, virtual_invariants, yukawa_from,
    EnumerativeInputs, GVTable, QData,
};
use crate::error::{Error, Result};
use crate::geometry::{hodge_h12, pfaffian_geometry, sub_pfaffians};
use crate::operator::{operator_equal, pscheme, ThetaOperator};
use crate::oracle::LaurentMonomialSystem;
use crate::poly::Poly;
use crate::rational::{fmt_rational, from_int, parse_rational, rat, Integer, Rational};
use crate::registry::{get_family, FamilySpec, RuleStatus};
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Disagrees with a value the registry marks as misprinted or disputed.
    KnownDeviation,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub family: String,
    pub item: String,
    pub status: CheckStatus,
    pub expected: Value,
    pub computed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub order: usize,
    pub max_degree: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            order: 30,
            max_degree: 5,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> Result<()> {
        if self.order < 4 * self.max_degree + 6 {
            return Err(Error::Precondition(format!(
                "order {} is below 4·max_degree + 6 = {}",
                self.order,
                4 * self.max_degree + 6
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilyReport {
    pub family: String,
    pub sections: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl FamilyReport {
    fn check(&mut self, item: &str, ok: bool, expected: Value, computed: Value) {
        self.push(
            item,
            if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            expected,
            computed,
            None,
        );
    }

    fn push(
        &mut self,
        item: &str,
        status: CheckStatus,
        expected: Value,
        computed: Value,
        note: Option<String>,
    ) {
        self.checks.push(Check {
            family: self.family.clone(),
            item: item.into(),
            status,
            expected,
            computed,
            note,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({ "sections": self.sections, "checks": self.checks })
    }
}

pub fn strings<'a, T: ToString + 'a>(v: impl IntoIterator<Item = &'a T>) -> Value {
    Value::Array(
        v.into_iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

pub fn rationals<'a>(v: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(
        v.into_iter()
            .map(|x| Value::String(fmt_rational(x)))
            .collect(),
    )
}

pub fn series_json(s: &Series, count: usize) -> Value {
    rationals(s.coeffs().iter().take(count))
}

/// Display form and the `P_j` in `L = Σ_j φ^j P_j(Θ)`.
pub fn operator_json(op: &ThetaOperator) -> Value {
    json!({
        "expr": op.to_string(),
        "p_polys": (0..=op.phi_degree()).map(|j| op.p_poly(j).display_in("T")).collect::<Vec<_>>(),
    })
}

pub fn pscheme_json(op: &ThetaOperator) -> Result<Value> {
    let ps = pscheme(op)?;
    Ok(Value::Array(
        ps.points
            .iter()
            .map(|p| {
                let mut row = json!({
                    "point": p.location.to_string(),
                    "exponents": rationals(&p.exponents.roots),
                });
                if let Some(u) = &p.exponents.unresolved {
                    row["unresolved"] = Value::String(u.clone());
                }
                row
            })
            .collect(),
    ))
}

/// Closed form against the operator: `L(Φ₀)` to `order` and the first recurrence coefficients.
pub fn pf_verify(spec: &FamilySpec, order: usize) -> Result<(bool, Value)> {
    let op = spec.operator()?;
    let cf = spec.closed_form_period(order)?;
    let residual = op.apply(&cf);
    let rec = op.recurrence_solve(&rat(1), order.min(6))?;
    let first_bad = residual.coeffs().iter().position(|c| !c.is_zero());
    let ok = first_bad.is_none();
    Ok((
        ok,
        json!({
            "annihilates": ok,
            "order": order.to_string(),
            "first_nonzero_residual": first_bad.map(|k| k.to_string()),
            "closed_form": series_json(&cf, 6),
            "recurrence": series_json(&rec, 6),
        }),
    ))
}

fn invariant(spec: &FamilySpec, v: &Option<Integer>, what: &str) -> Result<Rational> {
    v.clone()
        .map(from_int)
        .ok_or_else(|| Error::MissingData(format!("{}: no {what}", spec.name)))
}

/// Genus-0 and (when the classical data is present) genus-1 tables.
pub fn bps_tables(
    spec: &FamilySpec,
    settings: &Settings,
    disc_override: Option<&Poly>,
    virtual_deg: Option<&Rational>,
) -> Result<(GVTable, Option<GVTable>)> {
    let op = spec.operator()?;
    let max_d = settings.max_degree;
    if let Some(vd) = &spec.virtual_data {
        let deg = match virtual_deg {
            Some(d) => d.clone(),
            None => parse_rational(&vd.deg)?,
        };
        let (mut n0, _) = virtual_invariants(&op, &deg, None, None, max_d, settings.order)?;
        n0.family = spec.name.clone();
        let n1 = match &vd.genus1 {
            Some(g1) => {
                let (_, n1) = virtual_invariants(
                    &op,
                    &parse_rational(&g1.deg)?,
                    Some(&parse_rational(&g1.c2h)?),
                    Some(&parse_rational(&g1.chi)?),
                    max_d,
                    settings.order,
                )?;
                n1.map(|mut t| {
                    t.family = spec.name.clone();
                    t
                })
            }
            None => None,
        };
        return Ok((n0, n1));
    }
    let inv = spec.invariants()?;
    let deg = match virtual_deg {
        Some(d) => d.clone(),
        None => invariant(spec, &inv.deg, "degree")?,
    };
    let qd = QData::new(&op, settings.order)?;
    let k = yukawa_from(&qd, &op, &deg)?;
    let mut n0 = gv_genus0(&k, max_d)?;
    n0.family = spec.name.clone();
    let n1 = match (&inv.c2h, &inv.chi, &inv.h11) {
        (Some(c2h), Some(chi), Some(h11)) => {
            let inputs = EnumerativeInputs {
                deg,
                c2h: from_int(c2h.clone()),
                chi: from_int(chi.clone()),
                h11: from_int(h11.clone()),
            };
            let disc = match disc_override {
                Some(p) => p.clone(),
                None => conifold_discriminant(&op)?,
            };
            Some(bcov_genus1(&qd, &inputs, &disc, &n0, max_d)?)
        }
        _ => None,
    };
    Ok((n0, n1))
}

fn compare_list(
    r: &mut FamilyReport,
    item: &str,
    golden: Option<Result<Vec<Integer>>>,
    computed: Result<Vec<Integer>>,
) -> Result<()> {
    let Some(golden) = golden else { return Ok(()) };
    let golden = golden?;
    match computed {
        Ok(c) => {
            let c: Vec<Integer> = c.into_iter().take(golden.len()).collect();
            r.check(item, c == golden, strings(&golden), strings(&c));
        }
        Err(e) => r.check(item, false, strings(&golden), Value::String(e.to_string())),
    }
    Ok(())
}

fn series_integers(s: &Series, count: usize) -> Result<Vec<Integer>> {
    s.coeffs()
        .iter()
        .take(count)
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral(fmt_rational(c)))
            }
        })
        .collect()
}

fn operator_sections(
    spec: &FamilySpec,
    r: &mut FamilyReport,
    settings: &Settings,
    progress: &mut dyn FnMut(&str),
) -> Result<()> {
    let op = spec.operator()?;
    r.sections.insert("operator".into(), operator_json(&op));

    if spec.period_rule.is_some() {
        progress("period");
        let (ok, doc) = pf_verify(spec, settings.order)?;
        let disputed = spec
            .period_rule
            .as_ref()
            .map(|a| a.status == RuleStatus::Disputed)
            .unwrap_or(false);
        let expected = json!({ "annihilates": true });
        if ok {
            r.check("pf-verify", true, expected, doc.clone());
        } else if disputed {
            let a1 = |k: &str| doc[k][1].clone();
            let golden = spec.golden.disputed_a1.clone().unwrap_or_default();
            let matches = golden.get("closed_form").map(|s| Value::String(s.clone()))
                == Some(a1("closed_form"))
                && golden.get("operator").map(|s| Value::String(s.clone()))
                    == Some(a1("recurrence"));
            let status = if matches {
                CheckStatus::KnownDeviation
            } else {
                CheckStatus::Fail
            };
            r.push(
                "pf-verify",
                status,
                json!(golden),
                doc.clone(),
                spec.period_rule.as_ref().and_then(|a| a.note.clone()),
            );
        } else {
            r.check("pf-verify", false, expected, doc.clone());
        }
        r.sections.insert("pf_verify".into(), doc);
    }

    progress("pscheme");
    match pscheme_json(&op) {
        Ok(ps) => {
            if let Some(golden) = spec.golden_pscheme() {
                let golden = golden?;
                let computed: Vec<Value> = ps
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|p| p["exponents"].clone())
                    .collect();
                let expected: Vec<Value> = golden.iter().map(rationals).collect();
                r.check(
                    "pscheme",
                    computed == expected,
                    Value::Array(expected),
                    Value::Array(computed),
                );
            }
            r.sections.insert("pscheme".into(), ps);
        }
        Err(e) => {
            r.sections
                .insert("pscheme".into(), Value::String(e.to_string()));
        }
    }

    let lf = op.leading_coefficient_factor();
    let factors: Vec<Value> = lf
        .factors
        .iter()
        .map(|(f, m)| json!({ "factor": Poly::from_integers(f).display_in("p"), "multiplicity": m.to_string() }))
        .collect();
    r.sections.insert(
        "leading_coefficient".into(),
        json!({ "content": fmt_rational(&lf.content), "factors": factors }),
    );
    if let Some(q) = spec.golden_conifold_quadratic() {
        let q = q?;
        let found = lf
            .factors
            .iter()
            .any(|(f, m)| *m == 1 && (*f == q || f.iter().map(|c| -c).collect::<Vec<_>>() == q));
        r.check(
            "conifold-quadratic",
            found,
            strings(&q),
            Value::Array(factors.clone()),
        );
    }
    if let Some(pt) = &spec.golden.apparent_point {
        let root = parse_rational(pt)?;
        let mult = spec.golden.apparent_multiplicity.unwrap_or(1);
        let found = lf.factors.iter().any(|(f, m)| {
            let p = Poly::from_integers(f);
            *m == mult && p.degree() == Some(1) && p.eval(&root).is_zero()
        });
        r.check(
            "apparent-point",
            found,
            json!({ "root": pt, "multiplicity": mult.to_string() }),
            Value::Array(factors),
        );
    }
    Ok(())
}

fn enumerative_sections(
    spec: &FamilySpec,
    r: &mut FamilyReport,
    settings: &Settings,
    progress: &mut dyn FnMut(&str),
) -> Result<()> {
    let op = spec.operator()?;
    progress("mirror map");
    let qd10 = QData::new(&op, 10)?;
    r.sections
        .insert("mirror_map".into(), series_json(&qd10.q_of_phi, 6));
    if spec.golden.mirror_map.is_some() || spec.virtual_data.is_none() {
        r.check(
            "mirror-map-integral",
            qd10.q_of_phi.is_integral(),
            Value::Bool(true),
            Value::Bool(qd10.q_of_phi.is_integral()),
        );
    }
    compare_list(
        r,
        "mirror-map",
        spec.golden_mirror_map(),
        series_integers(&qd10.q_of_phi, 6),
    )?;

    if let Some(deg) = spec
        .invariants()?
        .deg
        .filter(|_| spec.virtual_data.is_none())
    {
        let k = yukawa_from(&qd10, &op, &from_int(deg))?;
        r.sections.insert("yukawa".into(), series_json(&k, 5));
        compare_list(r, "yukawa", spec.golden_yukawa(), series_integers(&k, 5))?;
    }

    progress("bps");
    let (n0, n1) = bps_tables(spec, settings, None, None)?;
    r.sections.insert("gv0".into(), n0.to_json());
    compare_list(r, "gv0", spec.golden_gv(0), n0.integers())?;
    if let Some(n1) = n1 {
        r.sections.insert("gv1".into(), n1.to_json());
        compare_list(r, "gv1", spec.golden_gv(1), n1.integers())?;
    }
    Ok(())
}

fn transform_sections(spec: &FamilySpec, r: &mut FamilyReport) -> Result<()> {
    let mut docs = BTreeMap::new();
    for (name, recipe) in &spec.transforms {
        let out = spec.transformed(name)?;
        let (target_name, printed, status) = match &recipe.target {
            Some(t) => {
                let target = get_family(t)?;
                let a = target
                    .operator
                    .clone()
                    .ok_or_else(|| Error::MissingData(format!("{t}: no operator")))?;
                (t.clone(), a.expr, a.status)
            }
            None => match spec.printed.as_ref().and_then(|p| p.prime_operator.clone()) {
                Some(a) => ("printed".to_string(), a.expr, a.status),
                None => continue,
            },
        };
        let equal = operator_equal(&out, &ThetaOperator::parse(&printed)?);
        let item = format!("transform:{name}");
        let computed = operator_json(&out);
        let expected = json!({ "target": target_name, "expr": printed });
        if equal {
            r.check(&item, true, expected, computed.clone());
        } else if status == RuleStatus::Misprinted {
            r.push(
                &item,
                CheckStatus::KnownDeviation,
                expected,
                computed.clone(),
                Some("target operator is recorded as misprinted".into()),
            );
        } else {
            r.check(&item, false, expected, computed.clone());
        }
        docs.insert(
            name.clone(),
            json!({ "operator": computed, "matches_target": equal }),
        );
    }
    if !docs.is_empty() {
        r.sections.insert("transforms".into(), json!(docs));
    }
    Ok(())
}

pub fn geometry_json(spec: &FamilySpec) -> Result<Value> {
    let w = spec.weighted_space()?;
    let g = pfaffian_geometry(
        &w,
        spec.bundle_twists.as_deref().unwrap_or_default(),
        spec.t.unwrap_or(0),
    )?;
    let mut doc = json!({
        "hilbert_numerator": rationals(g.hilbert.num.coeffs()),
        "hilbert_denominator": rationals(g.hilbert.den.coeffs()),
        "palindromic": g.hilbert.is_palindromic_numerator(),
        "deg": g.degree.to_string(),
        "h0_H": g.h0_h.to_string(),
        "c2h": g.c2h.to_string(),
    });
    if let Some(i2) = &spec.i2_resolution {
        doc["h12"] = Value::String(hodge_h12(&w, i2)?.to_string());
    }
    Ok(doc)
}

fn geometry_sections(spec: &FamilySpec, r: &mut FamilyReport) -> Result<()> {
    if !spec.pfaffian_threefold || spec.bundle_twists.is_none() {
        return Ok(());
    }
    let doc = geometry_json(spec)?;
    let inv = spec.invariants()?;
    if let Some(num) = spec.golden_hilbert_numerator() {
        let num = num?;
        r.check(
            "hilbert-numerator",
            doc["hilbert_numerator"] == strings(&num),
            strings(&num),
            doc["hilbert_numerator"].clone(),
        );
    }
    r.check(
        "hilbert-palindromic",
        doc["palindromic"] == Value::Bool(true),
        Value::Bool(true),
        doc["palindromic"].clone(),
    );
    for (key, v) in [("deg", &inv.deg), ("c2h", &inv.c2h), ("h12", &inv.h12)] {
        if let (Some(v), Some(c)) = (v, doc.get(key)) {
            r.check(
                key,
                *c == Value::String(v.to_string()),
                Value::String(v.to_string()),
                c.clone(),
            );
        }
    }
    r.sections.insert("geometry".into(), doc);

    if spec
        .printed
        .as_ref()
        .is_some_and(|p| !p.generators.is_empty())
    {
        let (m, vars) = spec.mirror_matrix()?;
        let ps = sub_pfaffians(&m);
        let gens = spec.printed_generators(&vars)?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        for (i, (p, g)) in ps.iter().zip(&gens).enumerate() {
            let sign = if p == g {
                Some("+")
            } else if *p == -g {
                Some("-")
            } else {
                None
            };
            r.check(
                &format!("generator:P{}", i + 1),
                sign.is_some(),
                Value::String(g.display_with(&names)),
                json!({ "pfaffian": p.display_with(&names), "sign": sign }),
            );
        }
    }
    Ok(())
}

/// Oracle coefficients at `t^{step·k}` against the closed form, and zeros off the lattice.
pub fn oracle_json(spec: &FamilySpec, orders: usize) -> Result<(bool, Value)> {
    let sys = LaurentMonomialSystem::from_json(
        spec.residue_system
            .as_ref()
            .ok_or_else(|| Error::MissingData(format!("{}: no residue system", spec.name)))?,
    )?;
    let basis = sys.solution_basis_check(14);
    let step = *basis.t_degrees.iter().min().unwrap_or(&1);
    let cf = spec.closed_form_period(orders)?;
    let top = step * orders as u64;
    let mut values = Vec::new();
    let mut ok = true;
    let mut off_lattice_zero = true;
    for p in 0..=top {
        let c = sys.constant_term_coefficient(p);
        if p % step == 0 {
            let expected = cf.coeff((p / step) as usize).to_integer();
            ok &= c == expected;
            values.push(c);
        } else {
            off_lattice_zero &= c.is_zero();
        }
    }
    ok &= off_lattice_zero && basis.rank == 3;
    Ok((
        ok,
        json!({
            "rank": basis.rank.to_string(),
            "generator_t_degrees": strings(&basis.t_degrees),
            "free": basis.free,
            "coefficients": strings(&values),
            "closed_form": series_json(&cf, orders + 1),
            "off_lattice_zero": off_lattice_zero,
        }),
    ))
}

pub fn family_report(
    name: &str,
    settings: &Settings,
    progress: &mut dyn FnMut(&str),
) -> Result<FamilyReport> {
    settings.validate()?;
    let spec = get_family(name)?;
    let mut r = FamilyReport {
        family: spec.name.clone(),
        ..Default::default()
    };
    let inv = spec.invariants()?;
    r.sections.insert(
        "invariants".into(),
        json!({
            "deg": inv.deg.map(|v| v.to_string()),
            "c2h": inv.c2h.map(|v| v.to_string()),
            "h11": inv.h11.map(|v| v.to_string()),
            "h12": inv.h12.map(|v| v.to_string()),
            "chi": inv.chi.map(|v| v.to_string()),
        }),
    );
    if spec.operator.is_some() {
        operator_sections(&spec, &mut r, settings, progress)?;
        enumerative_sections(&spec, &mut r, settings, progress)?;
        transform_sections(&spec, &mut r)?;
    }
    progress("geometry");
    geometry_sections(&spec, &mut r)?;
    if spec.residue_system.is_some() {
        progress("oracle");
        let (ok, doc) = oracle_json(&spec, 4)?;
        r.check(
            "oracle",
            ok,
            json!({ "agrees_with_closed_form": true }),
            doc.clone(),
        );
        r.sections.insert("oracle".into(), doc);
    }
    Ok(r)
}
