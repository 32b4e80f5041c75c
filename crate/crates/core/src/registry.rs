//! Family records: operators, closed-form periods, geometry data, transform
//! recipes and golden tables, one JSON document per family.
//!
//! The documents ship inside the library. Setting `CYMIRROR_REGISTRY` to a
//! directory makes [`get_family`] read `<dir>/<name>.json` instead.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::geometry::{GradedResolution, SkewPolyMatrix, WeightedSpace};
use crate::mpoly::MPoly;
use crate::operator::{ThetaOperator, Transform};
use crate::rational::{int, parse_integer, parse_rational, Integer, Rational};
use crate::series::Series;

pub const REGISTRY_ENV: &str = "CYMIRROR_REGISTRY";

const BUILTIN: &[(&str, &str)] = &[
    ("x13", include_str!("../registry/x13.json")),
    ("x5", include_str!("../registry/x5.json")),
    ("x7", include_str!("../registry/x7.json")),
    ("x10", include_str!("../registry/x10.json")),
    ("x9", include_str!("../registry/x9.json")),
    ("x25", include_str!("../registry/x25.json")),
    ("y5", include_str!("../registry/y5.json")),
    ("y10", include_str!("../registry/y10.json")),
    ("x13_tilde", include_str!("../registry/x13_tilde.json")),
    ("x10_tilde", include_str!("../registry/x10_tilde.json")),
    ("x14_ref", include_str!("../registry/x14_ref.json")),
];

pub fn family_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// Families with an operator at a point of maximally unipotent monodromy and
/// full geometric data.
pub const GEOMETRIC_FAMILIES: [&str; 4] = ["x13", "x5", "x7", "x10"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleStatus {
    Verified,
    Disputed,
    Printed,
    Misprinted,
    Suspect,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Annotated {
    pub expr: String,
    pub status: RuleStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EffectivePower {
    pub value: u32,
    pub status: RuleStatus,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RawInvariants {
    pub deg: Option<String>,
    pub c2h: Option<String>,
    pub h11: Option<String>,
    pub h12: Option<String>,
    pub chi: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Invariants {
    pub deg: Option<Integer>,
    pub c2h: Option<Integer>,
    pub h11: Option<Integer>,
    pub h12: Option<Integer>,
    pub chi: Option<Integer>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformStep {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

impl TransformStep {
    pub fn to_transform(&self) -> Result<Transform> {
        let c = || {
            self.c
                .as_deref()
                .ok_or_else(|| Error::Parse(format!("{} step needs a constant", self.kind)))
                .and_then(parse_rational)
        };
        Ok(match self.kind.as_str() {
            "invert" => Transform::Invert,
            "negate" => Transform::Negate,
            "gauge" => Transform::Gauge(c()?),
            "rescale" => Transform::Rescale(c()?),
            k => return Err(Error::Parse(format!("unknown transform kind `{k}`"))),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformRecipe {
    pub target: Option<String>,
    pub chain: Vec<TransformStep>,
}

impl TransformRecipe {
    pub fn transforms(&self) -> Result<Vec<Transform>> {
        self.chain.iter().map(TransformStep::to_transform).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Derivation {
    pub from: String,
    pub transform: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Genus1Inputs {
    pub deg: String,
    pub c2h: String,
    pub chi: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VirtualData {
    pub deg: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus1: Option<Genus1Inputs>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrintedData {
    #[serde(default)]
    pub prime_operator: Option<Annotated>,
    #[serde(default)]
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscChoice {
    pub rule: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Golden {
    pub mirror_map: Option<Vec<String>>,
    pub yukawa: Option<Vec<String>>,
    pub gv0: Option<Vec<String>>,
    pub gv1: Option<Vec<String>>,
    pub conifold_quadratic: Option<Vec<String>>,
    pub apparent_point: Option<String>,
    pub apparent_multiplicity: Option<usize>,
    pub pscheme: Option<Vec<Vec<String>>>,
    pub hilbert_numerator: Option<Vec<String>>,
    pub disputed_a1: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    pub title: String,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub bundle_twists: Option<Vec<i64>>,
    #[serde(default)]
    pub t: Option<i64>,
    #[serde(default)]
    pub pfaffian_threefold: bool,
    #[serde(default)]
    pub period_rule: Option<Annotated>,
    #[serde(default)]
    pub operator: Option<Annotated>,
    #[serde(default)]
    pub invariants: RawInvariants,
    #[serde(default)]
    pub effective_power: Option<EffectivePower>,
    #[serde(default)]
    pub i2_resolution: Option<Vec<Vec<(i64, u64)>>>,
    #[serde(default)]
    pub mirror_matrix: Option<serde_json::Value>,
    #[serde(default)]
    pub mirror_matrix_corrections: Vec<String>,
    #[serde(default)]
    pub disc: Option<DiscChoice>,
    #[serde(default)]
    pub transforms: BTreeMap<String, TransformRecipe>,
    #[serde(default)]
    pub derivation: Option<Derivation>,
    #[serde(default, rename = "virtual")]
    pub virtual_data: Option<VirtualData>,
    #[serde(default)]
    pub printed: Option<PrintedData>,
    #[serde(default)]
    pub residue_system: Option<serde_json::Value>,
    #[serde(default)]
    pub golden: Golden,
}

fn registry_dir() -> Option<PathBuf> {
    std::env::var_os(REGISTRY_ENV).map(PathBuf::from)
}

pub fn parse_family(src: &str) -> Result<FamilySpec> {
    Ok(serde_json::from_str(src)?)
}

pub fn get_family(name: &str) -> Result<FamilySpec> {
    if let Some(dir) = registry_dir() {
        let path = dir.join(format!("{name}.json"));
        if path.exists() {
            return parse_family(&std::fs::read_to_string(path)?);
        }
    }
    let (_, src) = BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    parse_family(src)
}

fn opt_int(s: &Option<String>) -> Result<Option<Integer>> {
    s.as_deref().map(parse_integer).transpose()
}

fn integers(v: &[String]) -> Result<Vec<Integer>> {
    v.iter().map(|s| parse_integer(s)).collect()
}

impl FamilySpec {
    pub fn invariants(&self) -> Result<Invariants> {
        let r = &self.invariants;
        Ok(Invariants {
            deg: opt_int(&r.deg)?,
            c2h: opt_int(&r.c2h)?,
            h11: opt_int(&r.h11)?,
            h12: opt_int(&r.h12)?,
            chi: opt_int(&r.chi)?,
        })
    }

    pub fn weighted_space(&self) -> Result<WeightedSpace> {
        WeightedSpace::new(
            self.weights
                .clone()
                .ok_or_else(|| self.missing("weights"))?,
        )
    }

    fn missing(&self, what: &str) -> Error {
        Error::MissingData(format!("{}: no {what}", self.name))
    }

    pub fn structure_resolution(&self) -> Result<GradedResolution> {
        let tw = self
            .bundle_twists
            .as_ref()
            .ok_or_else(|| self.missing("bundle twists"))?;
        GradedResolution::pfaffian(tw, self.t.ok_or_else(|| self.missing("t"))?)
    }

    /// The operator exactly as printed.
    pub fn printed_operator(&self) -> Result<ThetaOperator> {
        let a = self
            .operator
            .as_ref()
            .ok_or_else(|| self.missing("operator"))?;
        ThetaOperator::parse(&a.expr)
    }

    /// The operator used for computation: the printed one, or for derived
    /// families the source operator pushed through the recorded transform chain.
    pub fn operator(&self) -> Result<ThetaOperator> {
        match &self.derivation {
            Some(d) => {
                let src = get_family(&d.from)?;
                src.transformed(&d.transform)
            }
            None => self.printed_operator(),
        }
    }

    pub fn transform(&self, name: &str) -> Result<&TransformRecipe> {
        self.transforms
            .get(name)
            .ok_or_else(|| Error::MissingData(format!("{}: no transform `{name}`", self.name)))
    }

    pub fn transformed(&self, name: &str) -> Result<ThetaOperator> {
        self.printed_operator()?
            .transform_chain(&self.transform(name)?.transforms()?)
    }

    pub fn period_rule(&self) -> Result<Expr> {
        let a = self
            .period_rule
            .as_ref()
            .ok_or_else(|| self.missing("period rule"))?;
        Expr::parse(&a.expr)
    }

    /// `a_0 .. a_order` of the closed-form fundamental period.
    pub fn closed_form_period(&self, order: usize) -> Result<Series> {
        let e = self.period_rule()?;
        let mut env = HashMap::new();
        let coeffs = (0..=order)
            .map(|n| {
                env.insert("n".to_string(), int(n as i64));
                e.eval_int(&mut env)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::from_integers(coeffs, order))
    }

    pub fn mirror_matrix(&self) -> Result<(SkewPolyMatrix, Vec<String>)> {
        SkewPolyMatrix::from_json(
            self.mirror_matrix
                .as_ref()
                .ok_or_else(|| self.missing("mirror matrix"))?,
        )
    }

    /// Printed generators as polynomials in the matrix variables.
    pub fn printed_generators(&self, vars: &[String]) -> Result<Vec<MPoly>> {
        let p = self
            .printed
            .as_ref()
            .ok_or_else(|| self.missing("printed generators"))?;
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        p.generators
            .iter()
            .map(|g| Expr::parse(g)?.eval_mpoly(&refs))
            .collect()
    }

    pub fn virtual_degree(&self) -> Result<Rational> {
        parse_rational(
            &self
                .virtual_data
                .as_ref()
                .ok_or_else(|| self.missing("virtual degree"))?
                .deg,
        )
    }

    pub fn golden_gv(&self, genus: u8) -> Option<Result<Vec<Integer>>> {
        match genus {
            0 => self.golden.gv0.as_deref().map(integers),
            1 => self.golden.gv1.as_deref().map(integers),
            _ => None,
        }
    }

    pub fn golden_mirror_map(&self) -> Option<Result<Vec<Integer>>> {
        self.golden.mirror_map.as_deref().map(integers)
    }

    pub fn golden_yukawa(&self) -> Option<Result<Vec<Integer>>> {
        self.golden.yukawa.as_deref().map(integers)
    }

    pub fn golden_hilbert_numerator(&self) -> Option<Result<Vec<Integer>>> {
        self.golden.hilbert_numerator.as_deref().map(integers)
    }

    pub fn golden_conifold_quadratic(&self) -> Option<Result<Vec<Integer>>> {
        self.golden.conifold_quadratic.as_deref().map(integers)
    }

    pub fn golden_pscheme(&self) -> Option<Result<Vec<Vec<Rational>>>> {
        self.golden.pscheme.as_ref().map(|rows| {
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(s)).collect())
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn all_records_load() {
        for n in family_names() {
            let f = get_family(n).unwrap();
            assert_eq!(f.name, n);
            let inv = f.invariants().unwrap();
            if let (Some(h11), Some(h12), Some(chi)) = (&inv.h11, &inv.h12, &inv.chi) {
                assert_eq!(*chi, (h11 - h12) * 2, "{n}");
            }
        }
        assert!(matches!(get_family("x99"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn printed_invariants() {
        let x13 = get_family("x13").unwrap().invariants().unwrap();
        assert_eq!(
            (x13.deg.unwrap(), x13.c2h.unwrap(), x13.h12.unwrap()),
            (int(13), int(58), int(61))
        );
        let x25 = get_family("x25").unwrap().invariants().unwrap();
        assert_eq!(
            (x25.deg.unwrap(), x25.c2h.unwrap(), x25.h12.unwrap()),
            (int(25), int(70), int(51))
        );
        let powers: Vec<u32> = ["x13", "x5", "x7", "x10"]
            .iter()
            .map(|n| get_family(n).unwrap().effective_power.unwrap().value)
            .collect();
        assert_eq!(powers, vec![7, 10, 9, 8]);
        assert_eq!(
            get_family("x9").unwrap().effective_power.unwrap().status,
            RuleStatus::Suspect
        );
    }

    #[test]
    fn closed_forms() {
        let a = get_family("x13").unwrap().closed_form_period(2).unwrap();
        assert_eq!(a.coeffs()[..3], [rat(1), rat(20), rat(2196)]);
        assert_eq!(
            *get_family("x9")
                .unwrap()
                .closed_form_period(1)
                .unwrap()
                .coeff(1),
            rat(36)
        );
        assert_eq!(
            *get_family("x10")
                .unwrap()
                .closed_form_period(1)
                .unwrap()
                .coeff(1),
            rat(28)
        );
        assert!(get_family("x25").unwrap().closed_form_period(3).is_err());
    }

    #[test]
    fn transform_steps() {
        let s = TransformStep {
            kind: "gauge".into(),
            c: Some("1/2".into()),
        };
        assert_eq!(s.to_transform().unwrap(), Transform::Gauge(rat(1) / rat(2)));
        assert!(TransformStep {
            kind: "rescale".into(),
            c: None
        }
        .to_transform()
        .is_err());
        assert!(TransformStep {
            kind: "spin".into(),
            c: None
        }
        .to_transform()
        .is_err());
    }

    #[test]
    fn derived_operator_is_mum() {
        let op = get_family("x10_tilde").unwrap().operator().unwrap();
        let p0 = op.p_poly(0);
        assert_eq!(p0.degree(), Some(4));
        assert!(p0.coeffs()[..4].iter().all(|c| *c == rat(0)));
    }
}
