//! JSON and CSV rendering. JSON is canonical; CSV flattens one document to
//! a header and a single row, nested values as compact JSON.

use perfmatch::claims::{ClaimReport, Expected, Quantity, Value as ClaimValue};
use perfmatch::spectra::SpectrumSummary;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn value_json(v: &ClaimValue) -> Value {
    match v {
        ClaimValue::Int(i) => json!(i),
        ClaimValue::Count(c) => json!(c.to_string()),
        ClaimValue::Big(b) => json!(b.to_string()),
        ClaimValue::Ratio(r) => json!(r.to_string()),
        ClaimValue::Bool(b) => json!(b),
        ClaimValue::Float(f) => float_json(*f),
        ClaimValue::Text(s) => json!(s),
        ClaimValue::List(items) => Value::Array(items.iter().map(value_json).collect()),
    }
}

fn float_json(f: f64) -> Value {
    serde_json::Number::from_f64(f).map_or(Value::Null, Value::Number)
}

fn record_json(r: &[(String, ClaimValue)]) -> Value {
    Value::Object(r.iter().map(|(k, v)| (k.clone(), value_json(v))).collect())
}

pub fn quantity_json(q: &Quantity) -> Value {
    match q {
        Quantity::Count(c) => json!(c.to_string()),
        Quantity::Ratio(r) => json!(r.to_string()),
        Quantity::Record(r) => record_json(r),
        Quantity::Table { columns, rows } => json!({
            "columns": columns,
            "rows": rows
                .iter()
                .map(|row| Value::Array(row.iter().map(value_json).collect()))
                .collect::<Vec<_>>(),
        }),
    }
}

fn expected_json(e: &Option<Expected>) -> Value {
    match e {
        Some(e) => json!({"value": quantity_json(&e.value), "provenance": e.provenance}),
        None => Value::Null,
    }
}

pub fn report_json(r: &ClaimReport) -> Value {
    json!({
        "claim_id": r.claim_id,
        "parameters": record_json(&r.parameters),
        "computed": quantity_json(&r.computed),
        "expected": expected_json(&r.expected),
        "verdict": r.verdict.as_str(),
        "runtime_ms": r.runtime_ms,
        "details": record_json(&r.details),
    })
}

pub fn spectrum_json(kind: &str, s: &SpectrumSummary) -> Value {
    json!({
        "kind": kind,
        "dimension": s.dimension,
        "count": s.count.to_string(),
        "charpoly": s.charpoly.coefficients().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "singular_values": s.singular_values.iter().map(|v| float_json(*v)).collect::<Vec<_>>(),
        "singular_value_product": float_json(s.singular_product),
        "constant_term_is_count_squared": s.constant_term_identity,
        "coefficient_signs_alternate": s.alternating_signs,
        "eigenvalues_match_charpoly": s.roots_match,
        "reroot": {
            "roots": s.reroot.roots,
            "identical": s.reroot.identical,
            "deviating": s.reroot.deviating,
        },
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn render(doc: &Value, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(doc)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Format(e.to_string())),
        Format::Csv => {
            let empty = Map::new();
            let obj = doc.as_object().unwrap_or(&empty);
            let mut w = csv::Writer::from_writer(Vec::new());
            let fmt_err = |e: csv::Error| CliError::Format(e.to_string());
            w.write_record(obj.keys()).map_err(fmt_err)?;
            w.write_record(obj.values().map(cell)).map_err(fmt_err)?;
            let bytes = w.into_inner().map_err(|e| CliError::Format(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Format(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use perfmatch::claims::verify_central_ratio;

    #[test]
    fn report_schema() {
        let r = verify_central_ratio(1, false).unwrap();
        let v = report_json(&r);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["claim_id", "parameters", "computed", "expected", "verdict", "runtime_ms", "details"]
        );
        assert_eq!(v["computed"], json!("1/3"));
        assert_eq!(v["expected"]["value"], json!("1/3"));
        assert_eq!(v["details"]["total"], json!("3"));
    }

    #[test]
    fn csv_is_one_header_and_one_row() {
        let doc = json!({"kind": "hexagon", "count": "20", "list": [1, 2]});
        let text = render(&doc, Format::Csv).unwrap();
        assert_eq!(text, "kind,count,list\nhexagon,20,\"[1,2]\"\n");
    }
}
