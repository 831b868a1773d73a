//! Machine- and human-readable renderings of suite reports.

use fullfield_core::report::{CheckRecord, EvalPath, Report};
use serde_json::{json, Map, Value};

/// Output format of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json or text")),
        }
    }
}

/// Overall verdict of a list of reports.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}

pub fn report_to_json(r: &Report) -> Value {
    let records: Vec<Value> = r
        .records
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("identity".into(), json!(c.identity));
            m.insert("index".into(), json!(c.index));
            m.insert(
                "status".into(),
                json!(if c.passed { "pass" } else { "fail" }),
            );
            m.insert("path".into(), json!(c.path.to_string()));
            m.insert(
                "residual".into(),
                c.residual.map_or(Value::Null, |x| json!(x)),
            );
            if let Some(d) = &c.detail {
                m.insert("detail".into(), json!(d));
            }
            Value::Object(m)
        })
        .collect();
    let notes: Vec<Value> = r.notes.iter().map(|(k, v)| json!([k, v])).collect();
    json!({
        "suite": r.suite,
        "header": r.header,
        "verdict": if r.passed() { "pass" } else { "fail" },
        "checks": r.records.len(),
        "failures": r.failure_count(),
        "notes": notes,
        "records": records,
    })
}

/// Renders reports with an overall verdict.
pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "verdict": if all_passed(reports) { "pass" } else { "fail" },
                "reports": reports.iter().map(report_to_json).collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.to_string());
            }
            s.push_str(if all_passed(reports) {
                "verdict: PASS\n"
            } else {
                "verdict: FAIL\n"
            });
            s
        }
    }
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value, String> {
    v.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

fn text(v: &Value, key: &str) -> Result<String, String> {
    field(v, key)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| format!("field {key:?} must be a string"))
}

fn record_from_json(v: &Value) -> Result<CheckRecord, String> {
    let index = field(v, "index")?
        .as_array()
        .ok_or("index must be a list")?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or("index entries must be strings")
        })
        .collect::<Result<Vec<_>, _>>()?;
    let passed = match text(v, "status")?.as_str() {
        "pass" => true,
        "fail" => false,
        s => return Err(format!("unknown status {s:?}")),
    };
    let path = match text(v, "path")?.as_str() {
        "exact" => EvalPath::Exact,
        "numeric" => EvalPath::Numeric,
        s => return Err(format!("unknown path {s:?}")),
    };
    let residual = match v.get("residual") {
        None | Some(Value::Null) => None,
        Some(x) => Some(x.as_f64().ok_or("residual must be a number")?),
    };
    let detail = v.get("detail").and_then(Value::as_str).map(str::to_string);
    Ok(CheckRecord {
        identity: text(v, "identity")?,
        index,
        passed,
        path,
        residual,
        detail,
    })
}

/// Reads reports back from the JSON rendering.
pub fn reports_from_json(text_in: &str) -> Result<Vec<Report>, String> {
    let root: Value = serde_json::from_str(text_in)
        .map_err(|e| format!("line {}, column {}: {e}", e.line(), e.column()))?;
    let mut out = Vec::new();
    for r in field(&root, "reports")?
        .as_array()
        .ok_or("reports must be a list")?
    {
        let mut rep = Report::new(&text(r, "suite")?, &text(r, "header")?);
        for n in field(r, "notes")?
            .as_array()
            .ok_or("notes must be a list")?
        {
            match n.as_array().map(Vec::as_slice) {
                Some([Value::String(k), Value::String(v)]) => rep.note(k, v.clone()),
                _ => return Err("notes must be [key, value] string pairs".into()),
            }
        }
        for c in field(r, "records")?
            .as_array()
            .ok_or("records must be a list")?
        {
            rep.push(record_from_json(c)?);
        }
        out.push(rep);
    }
    Ok(out)
}
