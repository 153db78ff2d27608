//! The on-disk `mtc-data/1` format: UTF-8 JSON with exact scalars
//! first-class.
//!
//! A scalar is either `{"c": [[p,q], ...]}` with exactly `cyclotomic_order`
//! numerator/denominator pairs (the coefficients of `zeta_N^k`), or a
//! quarantined float `{"re": x, "im": y}`. A file must use one variant
//! throughout; float files parse but are rejected by every exact command.
//! Emission embeds all scalars into the lcm of their field orders so the
//! whole file shares one `cyclotomic_order`.
//!
//! Extensions are object-level data and get their own `mtc-extension/1`
//! document: no sector-1 S-matrix exists for them by design.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::extension::{ExtensionData, OrbitKind};
use crate::fermionic::GradedData;
use crate::modular::{FusionTensor, ModularData};
use crate::scalar::{Cyclotomic, ORDER_CAP};
use crate::Error;

pub const FORMAT_DATA: &str = "mtc-data/1";
pub const FORMAT_EXTENSION: &str = "mtc-extension/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarJson {
    Exact { c: Vec<[i64; 2]> },
    Float { re: f64, im: f64 },
}

#[derive(Debug, Serialize, Deserialize)]
struct DocumentJson {
    format: String,
    name: String,
    cyclotomic_order: u32,
    labels: Vec<String>,
    unit: usize,
    #[serde(rename = "S")]
    s: Vec<Vec<ScalarJson>>,
    twists: Vec<ScalarJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fusion: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fermion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grading: Option<BTreeMap<String, u8>>,
}

/// Float-variant payload: kept only so numeric consumers can exist; exact
/// commands reject it.
#[derive(Debug, Clone)]
pub struct FloatData {
    pub labels: Vec<String>,
    pub unit: usize,
    pub s: Vec<Vec<(f64, f64)>>,
    pub twists: Vec<(f64, f64)>,
}

#[derive(Debug)]
pub enum DataVariant {
    Exact(ModularData),
    Float(FloatData),
}

#[derive(Debug)]
pub struct ParsedDocument {
    pub name: String,
    pub data: DataVariant,
    pub fermion: Option<String>,
    pub grading: Option<BTreeMap<String, u8>>,
}

impl ParsedDocument {
    /// The exact payload, or a parse error for float files.
    pub fn require_exact(self) -> Result<(String, ModularData, Option<String>), Error> {
        match self.data {
            DataVariant::Exact(m) => Ok((self.name, m, self.fermion)),
            DataVariant::Float(_) => Err(Error::Parse(
                "file carries float scalars; exact checks require the {\"c\": ...} form".into(),
            )),
        }
    }
}

fn parse_scalar(s: &ScalarJson, order: u32) -> Result<Option<Cyclotomic>, Error> {
    match s {
        ScalarJson::Exact { c } => {
            if c.len() != order as usize {
                return Err(Error::Parse(format!(
                    "scalar has {} coefficients, expected cyclotomic_order = {order}",
                    c.len()
                )));
            }
            let coeffs: Vec<BigRational> = c
                .iter()
                .map(|[p, q]| {
                    if *q == 0 {
                        Err(Error::Parse("zero denominator in scalar coefficient".into()))
                    } else {
                        Ok(BigRational::new(BigInt::from(*p), BigInt::from(*q)))
                    }
                })
                .collect::<Result<_, _>>()?;
            Ok(Some(Cyclotomic::from_coeffs(order, coeffs).map_err(Error::from)?))
        }
        ScalarJson::Float { .. } => Ok(None),
    }
}

pub fn parse_str(text: &str) -> Result<ParsedDocument, Error> {
    let doc: DocumentJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if doc.format != FORMAT_DATA {
        return Err(Error::Parse(format!(
            "unsupported format {:?}, expected {FORMAT_DATA:?}",
            doc.format
        )));
    }
    if doc.cyclotomic_order == 0 || doc.cyclotomic_order > ORDER_CAP {
        return Err(Error::Parse(format!(
            "cyclotomic_order {} out of range",
            doc.cyclotomic_order
        )));
    }
    let rank = doc.labels.len();
    if doc.s.len() != rank || doc.s.iter().any(|row| row.len() != rank) {
        return Err(Error::Parse("S must be a rank x rank matrix".into()));
    }
    if doc.twists.len() != rank {
        return Err(Error::Parse("twists length must equal rank".into()));
    }
    if let Some(g) = &doc.grading {
        for (label, v) in g {
            if !doc.labels.contains(label) {
                return Err(Error::Parse(format!("grading mentions unknown label {label:?}")));
            }
            if *v > 1 {
                return Err(Error::Parse(format!("grading value for {label:?} must be 0 or 1")));
            }
        }
    }
    if let Some(f) = &doc.fermion {
        if !doc.labels.contains(f) {
            return Err(Error::Parse(format!("fermion label {f:?} not among labels")));
        }
    }

    let mut all_exact = true;
    let mut all_float = true;
    for s in doc.s.iter().flatten().chain(doc.twists.iter()) {
        match s {
            ScalarJson::Exact { .. } => all_float = false,
            ScalarJson::Float { .. } => all_exact = false,
        }
    }
    if !all_exact && !all_float {
        return Err(Error::Parse("file mixes exact and float scalars".into()));
    }

    let fusion = match &doc.fusion {
        None => None,
        Some(t) => {
            if t.len() != rank
                || t.iter().any(|x| x.len() != rank || x.iter().any(|y| y.len() != rank))
            {
                return Err(Error::Parse("fusion tensor must be rank^3".into()));
            }
            let mut flat = Vec::with_capacity(rank * rank * rank);
            for a in t {
                for b in a {
                    flat.extend(b.iter().copied());
                }
            }
            Some(FusionTensor::from_coeffs(rank, flat)?)
        }
    };

    let data = if all_exact {
        let s: Vec<Vec<Cyclotomic>> = doc
            .s
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| Ok(parse_scalar(x, doc.cyclotomic_order)?.unwrap()))
                    .collect::<Result<_, Error>>()
            })
            .collect::<Result<_, _>>()?;
        let twists: Vec<Cyclotomic> = doc
            .twists
            .iter()
            .map(|x| Ok(parse_scalar(x, doc.cyclotomic_order)?.unwrap()))
            .collect::<Result<_, Error>>()?;
        DataVariant::Exact(ModularData {
            labels: doc.labels.clone(),
            unit: doc.unit,
            s,
            twists,
            fusion,
        })
    } else {
        let as_float = |x: &ScalarJson| match x {
            ScalarJson::Float { re, im } => (*re, *im),
            ScalarJson::Exact { .. } => unreachable!(),
        };
        DataVariant::Float(FloatData {
            labels: doc.labels.clone(),
            unit: doc.unit,
            s: doc.s.iter().map(|row| row.iter().map(as_float).collect()).collect(),
            twists: doc.twists.iter().map(as_float).collect(),
        })
    };

    Ok(ParsedDocument { name: doc.name, data, fermion: doc.fermion, grading: doc.grading })
}

fn emit_scalar(x: &Cyclotomic, order: u32) -> Result<ScalarJson, Error> {
    let embedded = x.embedded(order)?;
    let mut c = Vec::with_capacity(order as usize);
    for q in embedded.coeffs() {
        let p = q.numer().to_i64().ok_or_else(|| {
            Error::input("scalar numerator exceeds the i64 range of the file format")
        })?;
        let d = q.denom().to_i64().ok_or_else(|| {
            Error::input("scalar denominator exceeds the i64 range of the file format")
        })?;
        c.push([p, d]);
    }
    Ok(ScalarJson::Exact { c })
}

/// Serialize exact modular data (optionally with fermion/grading fields
/// taken from a graded view) as an `mtc-data/1` document.
pub fn emit(data: &ModularData, name: &str, graded: Option<&GradedData>) -> Result<String, Error> {
    let mut order: u64 = 1;
    for x in data.s.iter().flatten().chain(data.twists.iter()) {
        order = num_integer::lcm(order, x.order() as u64);
        if order > ORDER_CAP as u64 {
            return Err(Error::Arithmetic(crate::scalar::ScalarError::OrderCap(order)));
        }
    }
    let order = order as u32;
    let s = data
        .s
        .iter()
        .map(|row| row.iter().map(|x| emit_scalar(x, order)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let twists =
        data.twists.iter().map(|x| emit_scalar(x, order)).collect::<Result<_, _>>()?;
    let fusion = data.fusion.as_ref().map(|f| {
        (0..f.rank())
            .map(|a| {
                (0..f.rank())
                    .map(|b| (0..f.rank()).map(|c| f.get(a, b, c)).collect())
                    .collect()
            })
            .collect()
    });
    let (fermion, grading) = match graded {
        None => (None, None),
        Some(g) => {
            let map: BTreeMap<String, u8> = data
                .labels
                .iter()
                .cloned()
                .zip(g.sector.iter().copied())
                .collect();
            (Some(data.labels[g.fermion].clone()), Some(map))
        }
    };
    let doc = DocumentJson {
        format: FORMAT_DATA.to_string(),
        name: name.to_string(),
        cyclotomic_order: order,
        labels: data.labels.clone(),
        unit: data.unit,
        s,
        twists,
        fusion,
        fermion,
        grading,
    };
    serde_json::to_string_pretty(&doc)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))
}

// --- extension documents ---------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct ExtObjectJson {
    label: String,
    sector: u8,
    dim: ScalarJson,
    twist: ScalarJson,
    orbit: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct ExtensionJson {
    format: String,
    name: String,
    cyclotomic_order: u32,
    source_level: u32,
    objects: Vec<ExtObjectJson>,
    gauss: ScalarJson,
    sector0_dim_sum: ScalarJson,
    sector1_dim_sum: ScalarJson,
}

fn orbit_tag(kind: &OrbitKind) -> String {
    match kind {
        OrbitKind::Sector0Pair(id) => format!("pair:{id}"),
        OrbitKind::QType => "q".to_string(),
        OrbitKind::MPair(id) => format!("m:{id}"),
    }
}

/// Serialize an extension's object table as `mtc-extension/1`.
pub fn emit_extension(e: &ExtensionData, name: &str) -> Result<String, Error> {
    let mut order: u64 = 1;
    for o in &e.objects {
        order = num_integer::lcm(order, o.dim.order() as u64);
        order = num_integer::lcm(order, o.twist.order() as u64);
    }
    order = num_integer::lcm(order, e.gauss.order() as u64);
    if order > ORDER_CAP as u64 {
        return Err(Error::Arithmetic(crate::scalar::ScalarError::OrderCap(order)));
    }
    let order = order as u32;
    let objects = e
        .objects
        .iter()
        .map(|o| {
            Ok(ExtObjectJson {
                label: o.label.clone(),
                sector: o.sector,
                dim: emit_scalar(&o.dim, order)?,
                twist: emit_scalar(&o.twist, order)?,
                orbit: orbit_tag(&o.kind),
            })
        })
        .collect::<Result<_, Error>>()?;
    let doc = ExtensionJson {
        format: FORMAT_EXTENSION.to_string(),
        name: name.to_string(),
        cyclotomic_order: order,
        source_level: e.source.1,
        objects,
        gauss: emit_scalar(&e.gauss, order)?,
        sector0_dim_sum: emit_scalar(&e.sector0_sum, order)?,
        sector1_dim_sum: emit_scalar(&e.sector1_sum, order)?,
    };
    serde_json::to_string_pretty(&doc)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))
}

/// Pretty printer for exact scalars in reports: exact form plus numeric
/// embedding.
pub fn scalar_report(x: &Cyclotomic) -> String {
    let (re, im) = x.to_complex();
    if x.as_rational().is_some() {
        format!("{x}")
    } else if im.abs() < 1e-15 && !x.is_zero() {
        format!("{x} ~ {re:.9}")
    } else {
        format!("{x} ~ {re:.9}{}{:.9}i", if im < 0.0 { " - " } else { " + " }, im.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::ising_like;
    use crate::modular::test_data::ising;

    #[test]
    fn roundtrip_preserves_everything() {
        let g = ising_like(1).unwrap();
        let text = emit(&g.base, "F_1", Some(&g)).unwrap();
        let parsed = parse_str(&text).unwrap();
        let (name, data, fermion) = parsed.require_exact().unwrap();
        assert_eq!(name, "F_1");
        assert_eq!(fermion.as_deref(), Some("psi"));
        assert_eq!(data.labels, g.base.labels);
        assert_eq!(data.unit, g.base.unit);
        assert_eq!(data.s, g.base.s);
        assert_eq!(data.twists, g.base.twists);
        assert_eq!(data.fusion, g.base.fusion);
    }

    #[test]
    fn emission_is_deterministic() {
        let g = ising_like(3).unwrap();
        let a = emit(&g.base, "F_3", Some(&g)).unwrap();
        let b = emit(&g.base, "F_3", Some(&g)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truncated_file_is_parse_error() {
        let g = ising_like(1).unwrap();
        let text = emit(&g.base, "F_1", None).unwrap();
        let truncated = &text[..text.len() / 2];
        assert!(matches!(parse_str(truncated), Err(Error::Parse(_))));
    }

    #[test]
    fn wrong_format_tag_rejected() {
        let g = ising_like(1).unwrap();
        let text = emit(&g.base, "F_1", None).unwrap().replace("mtc-data/1", "mtc-data/9");
        assert!(matches!(parse_str(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn coefficient_count_must_match_order() {
        let g = ising_like(1).unwrap();
        let mut text = emit(&g.base, "F_1", None).unwrap();
        text = text.replace("\"cyclotomic_order\": 16", "\"cyclotomic_order\": 8");
        assert!(matches!(parse_str(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn float_files_parse_but_are_not_exact() {
        let m = ising();
        let float_scalar = |x: &Cyclotomic| {
            let (re, im) = x.to_complex();
            ScalarJson::Float { re, im }
        };
        let doc = DocumentJson {
            format: FORMAT_DATA.into(),
            name: "float-ising".into(),
            cyclotomic_order: 16,
            labels: m.labels.clone(),
            unit: 0,
            s: m.s.iter().map(|r| r.iter().map(float_scalar).collect()).collect(),
            twists: m.twists.iter().map(float_scalar).collect(),
            fusion: None,
            fermion: None,
            grading: None,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let parsed = parse_str(&text).unwrap();
        assert!(matches!(parsed.data, DataVariant::Float(_)));
        let err = parse_str(&text).unwrap().require_exact().unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn extension_document_emits() {
        let g = ising_like(1).unwrap();
        let e = crate::extension::extend(&g, 2).unwrap();
        let text = emit_extension(&e, "F_1+2").unwrap();
        let doc: ExtensionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.format, FORMAT_EXTENSION);
        assert_eq!(doc.objects.len(), e.objects.len());
    }
}
