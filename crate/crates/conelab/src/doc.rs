//! Machine-readable inequality documents: the JSON interchange format for
//! generated cone descriptions. Documents round-trip losslessly and validate
//! against the versioned schema shipped with the crate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ineq::{Block, ConeDescription, LinearInequality};
use crate::{Error, Result};

/// The schema this crate writes, shipped in-repo.
pub const SCHEMA_V1: &str = include_str!("../schema/inequality-document.v1.json");
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocRow {
    /// Integer coefficient vectors keyed by block name.
    pub coeffs: BTreeMap<String, Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityDocument {
    pub schema_version: u32,
    /// Cone family id: `horn`, `lrmn`, `A`, `S`, `T` or `thompson`.
    pub cone: String,
    /// Size parameters: `n`, or `m`/`n`, or `p`/`q`.
    pub params: BTreeMap<String, usize>,
    /// Generator id, e.g. `triples`, `fflp`, `embed`, `half`, `full`.
    pub method: String,
    #[serde(default)]
    pub c1: bool,
    #[serde(default)]
    pub chamber: bool,
    #[serde(default)]
    pub minimized: bool,
    pub blocks: Vec<Block>,
    pub equalities: Vec<DocRow>,
    pub inequalities: Vec<DocRow>,
}

fn split_row(row: &LinearInequality, blocks: &[Block]) -> DocRow {
    let mut coeffs = BTreeMap::new();
    let mut off = 0;
    for b in blocks {
        coeffs.insert(b.name.clone(), row.coeffs[off..off + b.dim].to_vec());
        off += b.dim;
    }
    DocRow { coeffs, provenance: row.provenance.clone() }
}

impl InequalityDocument {
    pub fn from_description(
        desc: &ConeDescription,
        cone: &str,
        params: BTreeMap<String, usize>,
        method: &str,
        c1: bool,
        chamber: bool,
        minimized: bool,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            cone: cone.to_string(),
            params,
            method: method.to_string(),
            c1,
            chamber,
            minimized,
            blocks: desc.blocks.clone(),
            equalities: desc.equalities.iter().map(|r| split_row(r, &desc.blocks)).collect(),
            inequalities: desc
                .inequalities
                .iter()
                .map(|r| split_row(r, &desc.blocks))
                .collect(),
        }
    }

    /// Rebuilds the description; the renderer split is a function of the
    /// cone family.
    pub fn to_description(&self) -> Result<ConeDescription> {
        let mut desc = ConeDescription::new(self.display_name(), self.blocks.clone());
        desc.left_blocks = if self.cone == "horn" { 2 } else { 1 };
        let join = |row: &DocRow| -> Result<Vec<i64>> {
            let mut flat = Vec::new();
            for b in &self.blocks {
                let part = row.coeffs.get(&b.name).ok_or_else(|| {
                    Error::Parse(format!("row missing block {}", b.name))
                })?;
                if part.len() != b.dim {
                    return Err(Error::Parse(format!(
                        "block {} has {} coefficients, expected {}",
                        b.name,
                        part.len(),
                        b.dim
                    )));
                }
                flat.extend_from_slice(part);
            }
            Ok(flat)
        };
        for row in &self.equalities {
            desc.push_eq(join(row)?, row.provenance.clone());
        }
        for row in &self.inequalities {
            desc.push_ge(join(row)?, row.provenance.clone());
        }
        Ok(desc)
    }

    pub fn display_name(&self) -> String {
        let ps: Vec<String> = self.params.values().map(|v| v.to_string()).collect();
        format!("{}({})", self.cone, ps.join(","))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Minimal structural validator for the subset of JSON Schema the shipped
/// schema uses: `type`, `required`, `properties`, `additionalProperties`,
/// `items`, `enum`, `const` and `$ref` into `definitions`.
pub fn validate_schema(doc: &Value, schema: &Value) -> std::result::Result<(), String> {
    let root = schema;
    validate_node(doc, schema, root, "$")
}

fn validate_node(
    doc: &Value,
    schema: &Value,
    root: &Value,
    path: &str,
) -> std::result::Result<(), String> {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let target = reference
            .strip_prefix("#/definitions/")
            .and_then(|name| root.get("definitions").and_then(|d| d.get(name)))
            .ok_or_else(|| format!("{path}: unresolvable $ref {reference}"))?;
        return validate_node(doc, target, root, path);
    }
    if let Some(expected) = schema.get("const") {
        if doc != expected {
            return Err(format!("{path}: expected const {expected}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(doc) {
            return Err(format!("{path}: {doc} not in enum"));
        }
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => doc.is_object(),
            "array" => doc.is_array(),
            "string" => doc.is_string(),
            "integer" => doc.as_i64().is_some() || doc.as_u64().is_some(),
            "number" => doc.is_number(),
            "boolean" => doc.is_boolean(),
            other => return Err(format!("{path}: unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {ty}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if doc.get(key).is_none() {
                return Err(format!("{path}: missing required field {key}"));
            }
        }
    }
    if let Some(obj) = doc.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, value) in obj {
            if let Some(sub) = props.and_then(|p| p.get(key)) {
                validate_node(value, sub, root, &format!("{path}.{key}"))?;
            } else if let Some(extra) = schema.get("additionalProperties") {
                validate_node(value, extra, root, &format!("{path}.{key}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), doc.as_array()) {
        for (i, value) in arr.iter().enumerate() {
            validate_node(value, items, root, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}
