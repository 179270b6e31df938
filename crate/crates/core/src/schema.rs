//! Fuzzy class schemas, object datasets and their JSON files.
//!
//! Schema file:
//!
//! ```json
//! { "class": "Rectangular",
//!   "attributes": [ { "name": "length", "min": 0, "max": 100,
//!                     "algebra": { "negative": "short", "positive": "long", "fm_neg": 0.6,
//!                                  "positive_hedges": [{"name": "More", "mu": 0.25}, …],
//!                                  "negative_hedges": [{"name": "Possibly", "mu": 0.2}, …] },
//!                     "synonyms": { "less small": "Little short" } } ],
//!   "methods": [ { "name": "area", "deps": ["length", "width"], "connective": "and" } ] }
//! ```
//!
//! Dataset file: `{ "class": …, "objects": [ { "id": …, "values": { attr: number | string } } ] }`.
//! Numbers are crisp values, strings are linguistic terms. Unknown keys are
//! rejected in both files.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{
    ConfigError, DomainScale, HedgeAlgebraConfig, HedgeSpec, ScaleError, TermError,
    ValidatedAlgebra,
};
use crate::partition::AttrValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::And => "and",
            Connective::Or => "or",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSpec {
    pub name: String,
    pub scale: DomainScale,
    pub algebra: ValidatedAlgebra,
}

/// A derived method: a connective over dependency attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub name: String,
    pub dependencies: Vec<String>,
    pub connective: Connective,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyClassSchema {
    pub class_name: String,
    pub attributes: Vec<AttributeSpec>,
    pub methods: Vec<MethodSpec>,
}

/// One object; `values[i]` belongs to `schema.attributes[i]`. Crisp values
/// are in domain units.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyObject {
    pub id: String,
    pub values: Vec<AttrValue>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub schema: FuzzyClassSchema,
    pub objects: Vec<FuzzyObject>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoadError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    InvalidAlgebra {
        path: String,
        #[source]
        source: ConfigError,
    },
    #[error("{path}: {message}")]
    Validation { path: String, message: String },
    #[error("{path}: method `{method}` depends on unknown attribute `{dependency}`")]
    UnknownDependency {
        path: String,
        method: String,
        dependency: String,
    },
    #[error("{path}: dataset class `{found}` does not match schema class `{expected}`")]
    ClassMismatch {
        path: String,
        expected: String,
        found: String,
    },
    #[error("{path}: {source}")]
    OutOfDomain {
        path: String,
        #[source]
        source: ScaleError,
    },
    #[error("{path}: unknown term: {source}")]
    UnknownTerm {
        path: String,
        #[source]
        source: TermError,
    },
    #[error("{path}: duplicate object id `{id}`")]
    DuplicateId { path: String, id: String },
    #[error("{path}: missing value for attribute `{attribute}`")]
    MissingAttribute { path: String, attribute: String },
    #[error("{path}: `{attribute}` is not an attribute of the class")]
    UnknownAttribute { path: String, attribute: String },
    #[error("{path}: unsupported value kind ({kind}); expected a number or a string")]
    UnsupportedValueKind { path: String, kind: &'static str },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemaFile {
    class: String,
    attributes: Vec<AttributeFile>,
    #[serde(default)]
    methods: Vec<MethodFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttributeFile {
    name: String,
    min: f64,
    max: f64,
    algebra: AlgebraFile,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    synonyms: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    negative: String,
    positive: String,
    fm_neg: f64,
    positive_hedges: Vec<HedgeFile>,
    negative_hedges: Vec<HedgeFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HedgeFile {
    name: String,
    mu: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodFile {
    name: String,
    deps: Vec<String>,
    connective: Connective,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetFile {
    class: String,
    objects: Vec<ObjectFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectFile {
    id: String,
    values: serde_json::Map<String, Value>,
}

fn parse_json<'a, T: Deserialize<'a>>(bytes: &'a [u8]) -> Result<T, LoadError> {
    serde_json::from_slice(bytes).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Validation {
        path: path.into(),
        message: message.into(),
    }
}

/// Parse and validate a schema file.
pub fn load_schema(bytes: &[u8]) -> Result<FuzzyClassSchema, LoadError> {
    let file: SchemaFile = parse_json(bytes)?;

    if file.class.trim().is_empty() {
        return Err(invalid("$.class", "class name is empty"));
    }
    if file.attributes.is_empty() {
        return Err(invalid(
            "$.attributes",
            "a class needs at least one attribute",
        ));
    }

    let mut names = HashSet::new();
    let mut attributes = Vec::with_capacity(file.attributes.len());
    for (i, a) in file.attributes.into_iter().enumerate() {
        let path = format!("$.attributes[{i}]");
        if a.name.trim().is_empty() {
            return Err(invalid(format!("{path}.name"), "attribute name is empty"));
        }
        if !names.insert(a.name.clone()) {
            return Err(invalid(
                format!("{path}.name"),
                format!("duplicate name `{}`", a.name),
            ));
        }
        let scale = DomainScale::new(a.min, a.max).map_err(|e| invalid(&path, e.to_string()))?;
        let config = HedgeAlgebraConfig {
            negative_generator: a.algebra.negative,
            positive_generator: a.algebra.positive,
            fm_neg: a.algebra.fm_neg,
            fm_pos: 1.0 - a.algebra.fm_neg,
            positive_hedges: to_hedges(a.algebra.positive_hedges),
            negative_hedges: to_hedges(a.algebra.negative_hedges),
            synonyms: a.synonyms,
        };
        let algebra =
            ValidatedAlgebra::new(config).map_err(|source| LoadError::InvalidAlgebra {
                path: format!("{path}.algebra"),
                source,
            })?;
        attributes.push(AttributeSpec {
            name: a.name,
            scale,
            algebra,
        });
    }

    let mut methods = Vec::with_capacity(file.methods.len());
    for (i, m) in file.methods.into_iter().enumerate() {
        let path = format!("$.methods[{i}]");
        if m.name.trim().is_empty() {
            return Err(invalid(format!("{path}.name"), "method name is empty"));
        }
        if !names.insert(m.name.clone()) {
            return Err(invalid(
                format!("{path}.name"),
                format!("duplicate name `{}`", m.name),
            ));
        }
        if m.deps.is_empty() {
            return Err(invalid(
                format!("{path}.deps"),
                "a method needs at least one dependency",
            ));
        }
        for (j, d) in m.deps.iter().enumerate() {
            if !attributes.iter().any(|a| &a.name == d) {
                return Err(LoadError::UnknownDependency {
                    path: format!("{path}.deps[{j}]"),
                    method: m.name.clone(),
                    dependency: d.clone(),
                });
            }
        }
        methods.push(MethodSpec {
            name: m.name,
            dependencies: m.deps,
            connective: m.connective,
        });
    }

    Ok(FuzzyClassSchema {
        class_name: file.class,
        attributes,
        methods,
    })
}

fn to_hedges(hs: Vec<HedgeFile>) -> Vec<HedgeSpec> {
    hs.into_iter()
        .map(|h| HedgeSpec::new(h.name, h.mu))
        .collect()
}

fn value_kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "collection",
        Value::Object(_) => "object reference",
    }
}

/// Parse a dataset file against `schema`.
pub fn load_dataset(bytes: &[u8], schema: &FuzzyClassSchema) -> Result<Dataset, LoadError> {
    let file: DatasetFile = parse_json(bytes)?;
    if file.class != schema.class_name {
        return Err(LoadError::ClassMismatch {
            path: "$.class".into(),
            expected: schema.class_name.clone(),
            found: file.class,
        });
    }

    let mut objects = Vec::with_capacity(file.objects.len());
    for (i, o) in file.objects.into_iter().enumerate() {
        let path = format!("$.objects[{i}]");
        for key in o.values.keys() {
            if schema.attribute_index(key).is_none() {
                return Err(LoadError::UnknownAttribute {
                    path: format!("{path}.values"),
                    attribute: key.clone(),
                });
            }
        }
        let mut values = Vec::with_capacity(schema.attributes.len());
        for attr in &schema.attributes {
            let vpath = format!("{path}.values.{}", attr.name);
            let raw = o
                .values
                .get(&attr.name)
                .ok_or_else(|| LoadError::MissingAttribute {
                    path: format!("{path}.values"),
                    attribute: attr.name.clone(),
                })?;
            let value =
                match raw {
                    Value::Number(n) => AttrValue::Crisp(n.as_f64().ok_or_else(|| {
                        invalid(&vpath, format!("number {n} is not representable"))
                    })?),
                    Value::String(s) => {
                        AttrValue::Linguistic(attr.algebra.parse_term(s).map_err(|source| {
                            LoadError::UnknownTerm {
                                path: vpath.clone(),
                                source,
                            }
                        })?)
                    }
                    other => {
                        return Err(LoadError::UnsupportedValueKind {
                            path: vpath,
                            kind: value_kind(other),
                        })
                    }
                };
            values.push(value);
        }
        objects.push(FuzzyObject { id: o.id, values });
    }

    Dataset::new(schema.clone(), objects)
}

impl FuzzyClassSchema {
    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn attribute(&self, name: &str) -> Option<&AttributeSpec> {
        self.attributes.iter().find(|a| a.name == name)
    }

    pub fn method(&self, name: &str) -> Option<&MethodSpec> {
        self.methods.iter().find(|m| m.name == name)
    }

    /// Synonym lookup for an attribute, or for a method through its
    /// dependencies in order. Text without a synonym is returned unchanged.
    pub fn resolve_synonym(&self, name: &str, text: &str) -> String {
        let hit = match self.attribute(name) {
            Some(a) => a.algebra.resolve_synonym(text),
            None => self.method(name).and_then(|m| {
                m.dependencies
                    .iter()
                    .filter_map(|d| self.attribute(d))
                    .find_map(|a| a.algebra.resolve_synonym(text))
            }),
        };
        hit.unwrap_or(text).to_string()
    }

    /// Serialize back to the schema file format.
    pub fn to_json(&self) -> String {
        let file = SchemaFile {
            class: self.class_name.clone(),
            attributes: self
                .attributes
                .iter()
                .map(|a| {
                    let c = a.algebra.config();
                    let hedges = |hs: &[HedgeSpec]| {
                        hs.iter()
                            .map(|h| HedgeFile {
                                name: h.name.clone(),
                                mu: h.mu,
                            })
                            .collect()
                    };
                    AttributeFile {
                        name: a.name.clone(),
                        min: a.scale.min(),
                        max: a.scale.max(),
                        algebra: AlgebraFile {
                            negative: c.negative_generator.clone(),
                            positive: c.positive_generator.clone(),
                            fm_neg: c.fm_neg,
                            positive_hedges: hedges(&c.positive_hedges),
                            negative_hedges: hedges(&c.negative_hedges),
                        },
                        synonyms: c.synonyms.clone(),
                    }
                })
                .collect(),
            methods: self
                .methods
                .iter()
                .map(|m| MethodFile {
                    name: m.name.clone(),
                    deps: m.dependencies.clone(),
                    connective: m.connective,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("schema serializes")
    }
}

/// Convenience wrapper over [`FuzzyClassSchema::resolve_synonym`].
pub fn resolve_synonym(schema: &FuzzyClassSchema, name: &str, text: &str) -> String {
    schema.resolve_synonym(name, text)
}

impl Dataset {
    /// Validate programmatically built objects against `schema`.
    pub fn new(schema: FuzzyClassSchema, objects: Vec<FuzzyObject>) -> Result<Self, LoadError> {
        let mut ids = HashSet::new();
        for (i, o) in objects.iter().enumerate() {
            let path = format!("$.objects[{i}]");
            if !ids.insert(o.id.as_str()) {
                return Err(LoadError::DuplicateId {
                    path: format!("{path}.id"),
                    id: o.id.clone(),
                });
            }
            if o.values.len() != schema.attributes.len() {
                let attribute = schema
                    .attributes
                    .get(o.values.len())
                    .map_or_else(String::new, |a| a.name.clone());
                return Err(LoadError::MissingAttribute {
                    path: format!("{path}.values"),
                    attribute,
                });
            }
            for (attr, v) in schema.attributes.iter().zip(&o.values) {
                if let AttrValue::Crisp(x) = v {
                    attr.scale
                        .unscale(*x)
                        .map_err(|source| LoadError::OutOfDomain {
                            path: format!("{path}.values.{}", attr.name),
                            source,
                        })?;
                }
            }
        }
        Ok(Self { schema, objects })
    }

    pub fn object(&self, id: &str) -> Option<&FuzzyObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Display text of one value: a number in domain units or a term.
    pub fn render_value(&self, attribute: usize, v: &AttrValue) -> String {
        match v {
            AttrValue::Crisp(x) => crate::display::format_number(*x),
            AttrValue::Linguistic(t) => self.schema.attributes[attribute].algebra.render_value(t),
        }
    }

    /// Serialize back to the dataset file format.
    pub fn to_json(&self) -> String {
        let file = DatasetFile {
            class: self.schema.class_name.clone(),
            objects: self
                .objects
                .iter()
                .map(|o| ObjectFile {
                    id: o.id.clone(),
                    values: self
                        .schema
                        .attributes
                        .iter()
                        .zip(&o.values)
                        .map(|(a, v)| {
                            let json = match v {
                                AttrValue::Crisp(x) => Value::from(*x),
                                AttrValue::Linguistic(t) => {
                                    Value::String(a.algebra.render_value(t))
                                }
                            };
                            (a.name.clone(), json)
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("dataset serializes")
    }
}
