//! Bundle files: fusion data, chiral data and an optional full field algebra
//! section in canonical JSON.
//!
//! Object keys are sorted, lists follow label order, rationals are strings and
//! scalars are lists of `[exponent, "numerator", "denominator"]` triples in the
//! power basis of ℚ(ζ_N). Labels are referenced by name and multiplicity
//! indices are one based. Saving a loaded canonical file reproduces it byte
//! for byte.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use fullfield_core::chiraldata::{
    CanonicalKind, ChiralData, ChiralError, FTensor, Marker, S3Action,
};
use fullfield_core::exactnum::{field, CycField, CycMatrix, CycScalar, ExactError};
use fullfield_core::ffalgebra::{FfaError, FullFieldAlgebra};
use fullfield_core::fusiondata::{FusionData, FusionError, Label, Space};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use thiserror::Error;

/// Errors raised while reading or writing bundles.
#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error("fusion section: {0}")]
    Fusion(#[from] FusionError),
    #[error("chiral section: {0}")]
    Chiral(#[from] ChiralError),
    #[error("ffa section: {0}")]
    Ffa(#[from] FfaError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn ferr(field: impl Into<String>, message: impl Into<String>) -> BundleError {
    BundleError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// Where a bundle came from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
    pub version: String,
    /// Free-form key/value metadata, e.g. the fixture name or cocycle convention.
    pub extra: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(generator: &str) -> Self {
        Provenance {
            generator: generator.to_string(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            extra: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }
}

/// A data bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub field_order: u32,
    pub provenance: Provenance,
    pub fusion: FusionData,
    pub chiral: Option<ChiralData>,
    pub ffa: Option<FullFieldAlgebra>,
}

impl Bundle {
    /// A bundle with chiral data and no full field algebra section.
    pub fn from_chiral(chiral: ChiralData, provenance: Provenance) -> Self {
        Bundle {
            field_order: chiral.field().order(),
            provenance,
            fusion: chiral.fusion().clone(),
            chiral: Some(chiral),
            ffa: None,
        }
    }

    pub fn field(&self) -> Result<Arc<CycField>, BundleError> {
        Ok(field(self.field_order)?)
    }

    /// The chiral section, or an error naming the missing section.
    pub fn chiral(&self) -> Result<&ChiralData, BundleError> {
        self.chiral
            .as_ref()
            .ok_or_else(|| ferr("chiral", "section is missing"))
    }
}

/// Reads and parses a bundle file.
pub fn load_bundle(path: impl AsRef<Path>) -> Result<Bundle, BundleError> {
    let p = path.as_ref();
    let text = std::fs::read_to_string(p).map_err(|source| BundleError::Io {
        path: p.display().to_string(),
        source,
    })?;
    parse_bundle(&text)
}

/// Writes a bundle in canonical form.
pub fn save_bundle(bundle: &Bundle, path: impl AsRef<Path>) -> Result<(), BundleError> {
    let p = path.as_ref();
    std::fs::write(p, render_bundle(bundle)).map_err(|source| BundleError::Io {
        path: p.display().to_string(),
        source,
    })
}

/// Canonical text of a bundle.
pub fn render_bundle(bundle: &Bundle) -> String {
    let mut s = serde_json::to_string_pretty(&bundle_to_json(bundle)).expect("serializable");
    s.push('\n');
    s
}

/// Parses bundle text.
pub fn parse_bundle(text: &str) -> Result<Bundle, BundleError> {
    let v: Value = serde_json::from_str(text).map_err(|e| BundleError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    bundle_from_json(&v)
}

pub(crate) fn scalar_to_json(s: &CycScalar) -> Value {
    Value::Array(
        s.to_terms()
            .into_iter()
            .map(|(e, n, d)| json!([e, n.to_string(), d.to_string()]))
            .collect(),
    )
}

pub(crate) fn matrix_to_json(m: &CycMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

fn rational_str(q: &BigRational) -> String {
    q.to_string()
}

fn bundle_to_json(b: &Bundle) -> Value {
    let fu = &b.fusion;
    let name = |a: Label| Value::String(fu.name(a).to_string());
    let names3 = |s: Space| json!([fu.name(s.0), fu.name(s.1), fu.name(s.2)]);
    let mut root = Map::new();
    root.insert("field_order".into(), json!(b.field_order));
    let mut prov = Map::new();
    prov.insert("generator".into(), json!(b.provenance.generator));
    prov.insert(
        "seed".into(),
        b.provenance.seed.map_or(Value::Null, |s| json!(s)),
    );
    prov.insert("version".into(), json!(b.provenance.version));
    prov.insert("extra".into(), json!(b.provenance.extra));
    root.insert("provenance".into(), Value::Object(prov));
    root.insert(
        "fusion".into(),
        json!({
            "labels": fu.names(),
            "unit": fu.name(fu.unit()),
            "dual": fu.labels().map(|a| name(fu.dual(a))).collect::<Vec<_>>(),
            "weights": fu.weights().iter().map(rational_str).collect::<Vec<_>>(),
            "fusion": fu.fusion_table().iter()
                .map(|(&(a, b2, c), &m)| json!([fu.name(a), fu.name(b2), fu.name(c), m]))
                .collect::<Vec<_>>(),
        }),
    );
    if let Some(ch) = &b.chiral {
        let f: Vec<Value> = ch
            .f_tensor()
            .iter()
            .map(|((k, m), v)| {
                json!({
                    "labels": FTensor::to_file_order(*k).iter().map(|&a| fu.name(a)).collect::<Vec<_>>(),
                    "mults": m.map(|x| x + 1),
                    "value": scalar_to_json(v),
                })
            })
            .collect();
        let sig = |map: &BTreeMap<Space, CycMatrix>| -> Vec<Value> {
            map.iter()
                .map(|(s, m)| json!({"space": names3(*s), "matrix": matrix_to_json(m)}))
                .collect()
        };
        let markers: Vec<Value> = ch
            .markers()
            .iter()
            .map(|((kind, a), mk)| {
                json!({
                    "kind": kind.as_str(),
                    "label": fu.name(*a),
                    "space": names3(mk.space),
                    "index": mk.index + 1,
                })
            })
            .collect();
        root.insert(
            "chiral".into(),
            json!({
                "f": f,
                "sigma12": sig(&ch.sigma().s12),
                "sigma23": sig(&ch.sigma().s23),
                "markers": markers,
            }),
        );
    }
    if let Some(ffa) = &b.ffa {
        let blocks: Vec<Value> = ffa
            .right_factors()
            .iter()
            .map(|(s, r)| {
                json!({
                    "space": names3(*s),
                    "left": matrix_to_json(&ffa.left_factor(*s)),
                    "right": matrix_to_json(r),
                })
            })
            .collect();
        let form: Vec<Value> = ffa
            .sectors()
            .into_iter()
            .filter_map(|(a, ad)| {
                ffa.chiral().f_a(a).ok().map(
                    |v| json!({"sector": [fu.name(a), fu.name(ad)], "value": scalar_to_json(&v)}),
                )
            })
            .collect();
        root.insert(
            "ffa".into(),
            json!({
                "sectors": ffa.sectors().into_iter().map(|(a, ad)| json!([fu.name(a), fu.name(ad)])).collect::<Vec<_>>(),
                "blocks": blocks,
                "form_weights": form,
                "left_weights": ffa.left_weights().iter().map(rational_str).collect::<Vec<_>>(),
                "right_weights": ffa.right_weights().iter().map(rational_str).collect::<Vec<_>>(),
            }),
        );
    }
    Value::Object(root)
}

struct Reader<'a> {
    fusion: &'a FusionData,
    field: &'a Arc<CycField>,
}

fn get<'v>(v: &'v Value, key: &str, path: &str) -> Result<&'v Value, BundleError> {
    v.get(key)
        .ok_or_else(|| ferr(format!("{path}.{key}"), "missing"))
}

fn arr<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, BundleError> {
    v.as_array().ok_or_else(|| ferr(path, "expected a list"))
}

fn string<'v>(v: &'v Value, path: &str) -> Result<&'v str, BundleError> {
    v.as_str().ok_or_else(|| ferr(path, "expected a string"))
}

fn uint(v: &Value, path: &str) -> Result<u64, BundleError> {
    v.as_u64()
        .ok_or_else(|| ferr(path, "expected a nonnegative integer"))
}

fn rational(v: &Value, path: &str) -> Result<BigRational, BundleError> {
    let s = string(v, path)?;
    s.parse::<BigRational>()
        .map_err(|_| ferr(path, format!("invalid rational {s:?}")))
}

fn bigint(v: &Value, path: &str) -> Result<BigInt, BundleError> {
    let s = string(v, path)?;
    s.parse::<BigInt>()
        .map_err(|_| ferr(path, format!("invalid integer {s:?}")))
}

impl Reader<'_> {
    fn label(&self, v: &Value, path: &str) -> Result<Label, BundleError> {
        let s = string(v, path)?;
        self.fusion.label(s).map_err(|e| ferr(path, e.to_string()))
    }

    fn space(&self, v: &Value, path: &str) -> Result<Space, BundleError> {
        let a = arr(v, path)?;
        if a.len() != 3 {
            return Err(ferr(path, "expected three labels"));
        }
        Ok((
            self.label(&a[0], &format!("{path}[0]"))?,
            self.label(&a[1], &format!("{path}[1]"))?,
            self.label(&a[2], &format!("{path}[2]"))?,
        ))
    }

    fn scalar(&self, v: &Value, path: &str) -> Result<CycScalar, BundleError> {
        let n = self.field.order() as i64;
        let mut terms = Vec::new();
        for (i, t) in arr(v, path)?.iter().enumerate() {
            let p = format!("{path}[{i}]");
            let t = arr(t, &p)?;
            if t.len() != 3 {
                return Err(ferr(&p, "expected [exponent, numerator, denominator]"));
            }
            let e = t[0]
                .as_i64()
                .ok_or_else(|| ferr(&p, "exponent must be an integer"))?;
            if !(0..n).contains(&e) {
                return Err(ferr(&p, format!("exponent {e} outside 0..{n}")));
            }
            let d = bigint(&t[2], &p)?;
            if d == BigInt::from(0) {
                return Err(ferr(&p, "zero denominator"));
            }
            terms.push((e, bigint(&t[1], &p)?, d));
        }
        Ok(CycScalar::from_terms(self.field, &terms)?)
    }

    fn matrix(
        &self,
        v: &Value,
        path: &str,
        rows: usize,
        cols: usize,
    ) -> Result<CycMatrix, BundleError> {
        let r = arr(v, path)?;
        if r.len() != rows {
            return Err(ferr(
                path,
                format!("expected {rows} rows, found {}", r.len()),
            ));
        }
        let mut m = CycMatrix::zeros(self.field, rows, cols);
        for (i, row) in r.iter().enumerate() {
            let p = format!("{path}[{i}]");
            let row = arr(row, &p)?;
            if row.len() != cols {
                return Err(ferr(
                    &p,
                    format!("expected {cols} columns, found {}", row.len()),
                ));
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, self.scalar(x, &format!("{p}[{j}]"))?);
            }
        }
        Ok(m)
    }
}

fn fusion_from_json(v: &Value) -> Result<FusionData, BundleError> {
    let p = "fusion";
    let labels: Vec<String> = arr(get(v, "labels", p)?, "fusion.labels")?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("fusion.labels[{i}]")).map(str::to_string))
        .collect::<Result<_, _>>()?;
    let find = |s: &str, path: &str| {
        labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| ferr(path, format!("unknown label {s:?}")))
    };
    let unit = find(string(get(v, "unit", p)?, "fusion.unit")?, "fusion.unit")?;
    let dual = arr(get(v, "dual", p)?, "fusion.dual")?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let path = format!("fusion.dual[{i}]");
            find(string(x, &path)?, &path)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let weights = arr(get(v, "weights", p)?, "fusion.weights")?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("fusion.weights[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = BTreeMap::new();
    for (i, t) in arr(get(v, "fusion", p)?, "fusion.fusion")?
        .iter()
        .enumerate()
    {
        let path = format!("fusion.fusion[{i}]");
        let t = arr(t, &path)?;
        if t.len() != 4 {
            return Err(ferr(&path, "expected [a1, a2, a3, multiplicity]"));
        }
        let a = find(string(&t[0], &path)?, &path)?;
        let b = find(string(&t[1], &path)?, &path)?;
        let c = find(string(&t[2], &path)?, &path)?;
        table.insert((a, b, c), uint(&t[3], &path)? as u32);
    }
    Ok(FusionData::new(labels, unit, dual, weights, table)?)
}

fn bundle_from_json(v: &Value) -> Result<Bundle, BundleError> {
    let order = uint(get(v, "field_order", "bundle")?, "field_order")?;
    let order = u32::try_from(order).map_err(|_| ferr("field_order", "too large"))?;
    let fld = field(order).map_err(|e| ferr("field_order", e.to_string()))?;
    let pv = get(v, "provenance", "bundle")?;
    let mut extra = BTreeMap::new();
    if let Some(obj) = pv.get("extra").and_then(Value::as_object) {
        for (k, x) in obj {
            extra.insert(
                k.clone(),
                string(x, &format!("provenance.extra.{k}"))?.to_string(),
            );
        }
    }
    let provenance = Provenance {
        generator: string(get(pv, "generator", "provenance")?, "provenance.generator")?.to_string(),
        seed: match pv.get("seed") {
            None | Some(Value::Null) => None,
            Some(s) => Some(uint(s, "provenance.seed")?),
        },
        version: string(get(pv, "version", "provenance")?, "provenance.version")?.to_string(),
        extra,
    };
    let fusion = fusion_from_json(get(v, "fusion", "bundle")?)?;
    fusion.check_field_order(order)?;
    let rd = Reader {
        fusion: &fusion,
        field: &fld,
    };
    let chiral = match v.get("chiral") {
        None | Some(Value::Null) => None,
        Some(c) => Some(chiral_from_json(&rd, c)?),
    };
    let ffa = match (v.get("ffa"), &chiral) {
        (None | Some(Value::Null), _) => None,
        (Some(_), None) => return Err(ferr("ffa", "requires a chiral section")),
        (Some(x), Some(ch)) => Some(ffa_from_json(&rd, x, ch)?),
    };
    Ok(Bundle {
        field_order: order,
        provenance,
        fusion,
        chiral,
        ffa,
    })
}

fn chiral_from_json(rd: &Reader<'_>, v: &Value) -> Result<ChiralData, BundleError> {
    let fu = rd.fusion;
    let mut f = FTensor::new();
    for (i, e) in arr(get(v, "f", "chiral")?, "chiral.f")?.iter().enumerate() {
        let p = format!("chiral.f[{i}]");
        let ls = arr(get(e, "labels", &p)?, &format!("{p}.labels"))?;
        if ls.len() != 6 {
            return Err(ferr(&p, "expected six labels"));
        }
        let mut file = [0; 6];
        for (t, x) in ls.iter().enumerate() {
            file[t] = rd.label(x, &format!("{p}.labels[{t}]"))?;
        }
        let ms = arr(get(e, "mults", &p)?, &format!("{p}.mults"))?;
        if ms.len() != 4 {
            return Err(ferr(&p, "expected four multiplicity indices"));
        }
        let mut m = [0; 4];
        for (t, x) in ms.iter().enumerate() {
            let idx = uint(x, &format!("{p}.mults[{t}]"))? as usize;
            if idx == 0 {
                return Err(ferr(format!("{p}.mults[{t}]"), "indices are one based"));
            }
            m[t] = idx - 1;
        }
        let val = rd.scalar(get(e, "value", &p)?, &format!("{p}.value"))?;
        f.insert(FTensor::from_file_order(file), m, val);
    }
    let mut sigma = S3Action::default();
    for (key, which) in [("sigma12", 12u8), ("sigma23", 23u8)] {
        for (i, e) in arr(get(v, key, "chiral")?, &format!("chiral.{key}"))?
            .iter()
            .enumerate()
        {
            let p = format!("chiral.{key}[{i}]");
            let s = rd.space(get(e, "space", &p)?, &format!("{p}.space"))?;
            let tgt = if which == 12 {
                fu.s12_space(s)
            } else {
                fu.s23_space(s)
            };
            let m = rd.matrix(
                get(e, "matrix", &p)?,
                &format!("{p}.matrix"),
                fu.mult(tgt),
                fu.mult(s),
            )?;
            if which == 12 {
                sigma.s12.insert(s, m);
            } else {
                sigma.s23.insert(s, m);
            }
        }
    }
    let mut markers = BTreeMap::new();
    for (i, e) in arr(get(v, "markers", "chiral")?, "chiral.markers")?
        .iter()
        .enumerate()
    {
        let p = format!("chiral.markers[{i}]");
        let ks = string(get(e, "kind", &p)?, &format!("{p}.kind"))?;
        let kind = CanonicalKind::parse(ks)
            .ok_or_else(|| ferr(format!("{p}.kind"), format!("unknown kind {ks:?}")))?;
        let a = rd.label(get(e, "label", &p)?, &format!("{p}.label"))?;
        let space = rd.space(get(e, "space", &p)?, &format!("{p}.space"))?;
        let index = uint(get(e, "index", &p)?, &format!("{p}.index"))? as usize;
        if index == 0 {
            return Err(ferr(format!("{p}.index"), "indices are one based"));
        }
        markers.insert(
            (kind, a),
            Marker {
                space,
                index: index - 1,
            },
        );
    }
    Ok(ChiralData::new(
        fu.clone(),
        rd.field.clone(),
        f,
        sigma,
        markers,
    )?)
}

fn ffa_from_json(
    rd: &Reader<'_>,
    v: &Value,
    ch: &ChiralData,
) -> Result<FullFieldAlgebra, BundleError> {
    let fu = rd.fusion;
    let weights = |key: &str| -> Result<Vec<BigRational>, BundleError> {
        arr(get(v, key, "ffa")?, &format!("ffa.{key}"))?
            .iter()
            .enumerate()
            .map(|(i, x)| rational(x, &format!("ffa.{key}[{i}]")))
            .collect()
    };
    let mut right = BTreeMap::new();
    for (i, e) in arr(get(v, "blocks", "ffa")?, "ffa.blocks")?
        .iter()
        .enumerate()
    {
        let p = format!("ffa.blocks[{i}]");
        let s = rd.space(get(e, "space", &p)?, &format!("{p}.space"))?;
        let n = fu.mult(s);
        let left = rd.matrix(get(e, "left", &p)?, &format!("{p}.left"), n, n)?;
        if !left.is_identity() {
            return Err(ferr(
                format!("{p}.left"),
                "left factor must be the identity",
            ));
        }
        let r = rd.matrix(
            get(e, "right", &p)?,
            &format!("{p}.right"),
            fu.mult(fu.dual_space(s)),
            n,
        )?;
        right.insert(s, r);
    }
    Ok(FullFieldAlgebra::from_parts(
        ch.clone(),
        weights("left_weights")?,
        weights("right_weights")?,
        right,
    )?)
}
