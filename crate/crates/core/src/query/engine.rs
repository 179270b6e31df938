//! Query binding and evaluation.
//!
//! Binding resolves every condition term in its attribute's algebra, picks
//! the leaf's partition level from the term length, builds one partition per
//! `(attribute, level)` pair, and locates the condition value once. The
//! executor then visits every `(object, leaf)` pair exactly once and folds the
//! leaf outcomes through the and/or tree.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use super::ast::{CompareOp, Condition, Operand, Projection, QueryAst};
use super::parser::{parse_query, SyntaxError};
use crate::algebra::{ScaleError, TermError};
use crate::display::{class_name, format_interval, PartitionTable};
use crate::partition::{build_partition, AttrValue, LevelPartition, Located, MAX_LEVEL};
use crate::schema::{Connective, Dataset, FuzzyClassSchema, FuzzyObject};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unknown class `{found}`, the schema defines `{expected}`")]
    UnknownClass { found: String, expected: String },
    #[error("position {position}: unknown attribute `{name}`")]
    UnknownAttribute { name: String, position: usize },
    #[error("position {position}: unknown method `{name}`")]
    UnknownMethod { name: String, position: usize },
    #[error("position {position}: unknown term for `{attribute}`: {source}")]
    UnknownTerm {
        attribute: String,
        position: usize,
        #[source]
        source: TermError,
    },
    #[error("position {position}: `{attribute}`: {source}")]
    OutOfDomain {
        attribute: String,
        position: usize,
        #[source]
        source: ScaleError,
    },
    #[error("{0}")]
    UnsupportedShape(&'static str),
    #[error("level {0} is outside 1..={max}", max = MAX_LEVEL)]
    LevelOutOfRange(usize),
}

/// A condition whose neighborhood is a gap; the leaf then matches nothing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnmatchableCondition {
    pub condition: String,
    pub attribute: String,
    pub level: usize,
    pub position: usize,
}

impl std::fmt::Display for UnmatchableCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "position {}: condition `{}` has no neighborhood on `{}` at level {} and matches nothing",
            self.position, self.condition, self.attribute, self.level
        )
    }
}

/// One attribute-level comparison: the condition value located in one
/// partition.
#[derive(Debug, Clone)]
pub struct ConditionBinding {
    pub attribute: usize,
    pub level: usize,
    /// Index into [`BoundQuery::partitions`].
    pub partition: usize,
    /// Unit-scaled crisp value or resolved term.
    pub value: AttrValue,
    pub located: Located,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeafKind {
    Attribute(CompareOp),
    Method {
        method: usize,
        connective: Connective,
    },
}

/// A bound where-clause leaf. Attribute leaves carry one binding, method
/// leaves one per dependency.
#[derive(Debug, Clone)]
pub struct BoundLeaf {
    pub text: String,
    pub kind: LeafKind,
    pub bindings: Vec<ConditionBinding>,
}

#[derive(Debug, Clone)]
enum BoundCondition {
    And(Vec<BoundCondition>),
    Or(Vec<BoundCondition>),
    Leaf(usize),
}

impl BoundCondition {
    fn eval(&self, leaves: &[bool]) -> bool {
        match self {
            BoundCondition::And(cs) => cs.iter().all(|c| c.eval(leaves)),
            BoundCondition::Or(cs) => cs.iter().any(|c| c.eval(leaves)),
            BoundCondition::Leaf(i) => leaves[*i],
        }
    }
}

/// An immutable evaluation plan.
#[derive(Debug, Clone)]
pub struct BoundQuery {
    pub text: String,
    /// Attribute indices to display, in order.
    pub projection: Vec<usize>,
    pub leaves: Vec<BoundLeaf>,
    pub unmatchable: Vec<UnmatchableCondition>,
    condition: BoundCondition,
    partitions: Vec<(usize, LevelPartition)>,
    schema: FuzzyClassSchema,
}

/// Matched object ids in dataset order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultSet {
    pub ids: Vec<String>,
    pub indices: Vec<usize>,
    /// Number of `(object, leaf)` evaluations performed.
    pub leaf_evaluations: usize,
}

fn clamp_level(len: usize) -> usize {
    len.clamp(1, MAX_LEVEL)
}

struct Binder<'a> {
    schema: &'a FuzzyClassSchema,
    partitions: Vec<(usize, LevelPartition)>,
    cache: HashMap<(usize, usize), usize>,
    leaves: Vec<BoundLeaf>,
    unmatchable: Vec<UnmatchableCondition>,
    fixed_level: Option<usize>,
}

impl Binder<'_> {
    fn partition(&mut self, attribute: usize, level: usize) -> usize {
        if let Some(&i) = self.cache.get(&(attribute, level)) {
            return i;
        }
        let part = build_partition(&self.schema.attributes[attribute].algebra, level)
            .expect("level is clamped to the supported range");
        self.partitions.push((attribute, part));
        let i = self.partitions.len() - 1;
        self.cache.insert((attribute, level), i);
        i
    }

    fn binding(&mut self, attribute: usize, level: usize, value: AttrValue) -> ConditionBinding {
        let partition = self.partition(attribute, level);
        let located = self.partitions[partition].1.locate(&value);
        ConditionBinding {
            attribute,
            level,
            partition,
            value,
            located,
        }
    }

    fn attribute(&self, name: &str, position: usize) -> Result<usize, QueryError> {
        self.schema
            .attribute_index(name)
            .ok_or_else(|| QueryError::UnknownAttribute {
                name: name.to_string(),
                position,
            })
    }

    fn term_value(
        &self,
        attribute: usize,
        text: &str,
        position: usize,
    ) -> Result<AttrValue, QueryError> {
        let spec = &self.schema.attributes[attribute];
        spec.algebra
            .parse_term(text)
            .map(AttrValue::Linguistic)
            .map_err(|source| QueryError::UnknownTerm {
                attribute: spec.name.clone(),
                position,
                source,
            })
    }

    fn value_level(&self, v: &AttrValue) -> usize {
        if let Some(k) = self.fixed_level {
            return k;
        }
        match v {
            AttrValue::Linguistic(t) => clamp_level(t.len()),
            AttrValue::Crisp(_) => CRISP_LEVEL,
        }
    }

    fn bind(&mut self, c: &Condition) -> Result<BoundCondition, QueryError> {
        match c {
            Condition::And(cs) => Ok(BoundCondition::And(
                cs.iter().map(|c| self.bind(c)).collect::<Result<_, _>>()?,
            )),
            Condition::Or(cs) => Ok(BoundCondition::Or(
                cs.iter().map(|c| self.bind(c)).collect::<Result<_, _>>()?,
            )),
            Condition::Attr(p) => {
                let attribute = self.attribute(&p.attribute, p.position)?;
                let value = match &p.rhs {
                    Operand::Term(text) => self.term_value(attribute, text, p.position)?,
                    Operand::Number(x) => {
                        let spec = &self.schema.attributes[attribute];
                        AttrValue::Crisp(spec.scale.unscale(*x).map_err(|source| {
                            QueryError::OutOfDomain {
                                attribute: spec.name.clone(),
                                position: p.position,
                                source,
                            }
                        })?)
                    }
                };
                let level = self.value_level(&value);
                let binding = self.binding(attribute, level, value);
                self.push_leaf(c, LeafKind::Attribute(p.op), vec![binding], p.position)
            }
            Condition::Method(m) => {
                let method = self
                    .schema
                    .methods
                    .iter()
                    .position(|s| s.name == m.method)
                    .ok_or_else(|| QueryError::UnknownMethod {
                        name: m.method.clone(),
                        position: m.position,
                    })?;
                let spec = &self.schema.methods[method];
                let connective = spec.connective;
                let mut bindings = Vec::with_capacity(spec.dependencies.len());
                for dep in spec.dependencies.clone() {
                    let attribute = self.attribute(&dep, m.position)?;
                    let value = self.term_value(attribute, &m.term, m.position)?;
                    let level = self.value_level(&value);
                    bindings.push(self.binding(attribute, level, value));
                }
                self.push_leaf(
                    c,
                    LeafKind::Method { method, connective },
                    bindings,
                    m.position,
                )
            }
        }
    }

    fn push_leaf(
        &mut self,
        c: &Condition,
        kind: LeafKind,
        bindings: Vec<ConditionBinding>,
        position: usize,
    ) -> Result<BoundCondition, QueryError> {
        let text = c.to_string();
        for b in &bindings {
            if matches!(b.value, AttrValue::Linguistic(_)) && b.located.class().is_none() {
                self.unmatchable.push(UnmatchableCondition {
                    condition: text.clone(),
                    attribute: self.schema.attributes[b.attribute].name.clone(),
                    level: b.level,
                    position,
                });
            }
        }
        self.leaves.push(BoundLeaf {
            text,
            kind,
            bindings,
        });
        Ok(BoundCondition::Leaf(self.leaves.len() - 1))
    }
}

/// Level used by leaves with a crisp right-hand side. Level 1 has no gaps,
/// so a crisp condition always has a neighborhood.
const CRISP_LEVEL: usize = 1;

/// Bind a parsed query to a schema.
pub fn bind(ast: &QueryAst, schema: &FuzzyClassSchema) -> Result<BoundQuery, QueryError> {
    bind_with_level(ast, schema, None)
}

/// Like [`bind`], but `Some(k)` evaluates every leaf at level `k` instead of
/// the per-leaf level.
pub fn bind_with_level(
    ast: &QueryAst,
    schema: &FuzzyClassSchema,
    level: Option<usize>,
) -> Result<BoundQuery, QueryError> {
    if let Some(k) = level {
        if !(1..=MAX_LEVEL).contains(&k) {
            return Err(QueryError::LevelOutOfRange(k));
        }
    }
    if ast.class != schema.class_name {
        return Err(QueryError::UnknownClass {
            found: ast.class.clone(),
            expected: schema.class_name.clone(),
        });
    }
    let projection = match &ast.projection {
        Projection::All => (0..schema.attributes.len()).collect(),
        Projection::Names(names) => names
            .iter()
            .map(|n| {
                schema
                    .attribute_index(n)
                    .ok_or_else(|| QueryError::UnknownAttribute {
                        name: n.clone(),
                        position: 0,
                    })
            })
            .collect::<Result<_, _>>()?,
    };

    let mut binder = Binder {
        schema,
        partitions: Vec::new(),
        cache: HashMap::new(),
        leaves: Vec::new(),
        unmatchable: Vec::new(),
        fixed_level: level,
    };
    let condition = binder.bind(&ast.condition)?;

    Ok(BoundQuery {
        text: ast.condition.to_string(),
        projection,
        leaves: binder.leaves,
        unmatchable: binder.unmatchable,
        condition,
        partitions: binder.partitions,
        schema: schema.clone(),
    })
}

/// Outcome of one attribute-level comparison for one object.
#[derive(Debug, Clone, Copy)]
struct Check {
    object: Located,
    matched: bool,
}

impl BoundQuery {
    /// `(attribute index, partition)` pairs built for this query.
    pub fn partitions(&self) -> &[(usize, LevelPartition)] {
        &self.partitions
    }

    pub fn partition_of(&self, binding: &ConditionBinding) -> &LevelPartition {
        &self.partitions[binding.partition].1
    }

    pub fn schema(&self) -> &FuzzyClassSchema {
        &self.schema
    }

    fn object_value(&self, o: &FuzzyObject, attribute: usize) -> AttrValue {
        match &o.values[attribute] {
            AttrValue::Crisp(x) => AttrValue::Crisp(
                self.schema.attributes[attribute]
                    .scale
                    .unscale(*x)
                    .unwrap_or(f64::NAN),
            ),
            v => v.clone(),
        }
    }

    fn check(&self, o: &FuzzyObject, b: &ConditionBinding, op: CompareOp) -> Check {
        let part = self.partition_of(b);
        let object = part.locate(&self.object_value(o, b.attribute));
        let matched = match op {
            CompareOp::EqK => part.equal_located(object, b.located),
            CompareOp::GeK => part.ge_located(object, b.located).unwrap_or(false),
        };
        Check { object, matched }
    }

    fn eval_leaf(&self, o: &FuzzyObject, leaf: &BoundLeaf, checks: &mut Vec<Check>) -> bool {
        checks.clear();
        match leaf.kind {
            LeafKind::Attribute(op) => {
                let c = self.check(o, &leaf.bindings[0], op);
                checks.push(c);
                c.matched
            }
            LeafKind::Method { connective, .. } => {
                checks.extend(
                    leaf.bindings
                        .iter()
                        .map(|b| self.check(o, b, CompareOp::EqK)),
                );
                match connective {
                    Connective::And => checks.iter().all(|c| c.matched),
                    Connective::Or => checks.iter().any(|c| c.matched),
                }
            }
        }
    }

    fn is_attribute_only(&self) -> bool {
        self.leaves
            .iter()
            .all(|l| matches!(l.kind, LeafKind::Attribute(_)))
    }

    fn is_single_method(&self) -> bool {
        self.leaves.len() == 1 && matches!(self.leaves[0].kind, LeafKind::Method { .. })
    }
}

/// Evaluate any bound where-tree over `data`.
pub fn execute(bound: &BoundQuery, data: &Dataset) -> ResultSet {
    let mut result = ResultSet::default();
    let mut outcomes = vec![false; bound.leaves.len()];
    let mut checks = Vec::new();
    for (i, o) in data.objects.iter().enumerate() {
        for (slot, leaf) in outcomes.iter_mut().zip(&bound.leaves) {
            *slot = bound.eval_leaf(o, leaf, &mut checks);
            result.leaf_evaluations += 1;
        }
        if bound.condition.eval(&outcomes) {
            result.ids.push(o.id.clone());
            result.indices.push(i);
        }
    }
    result
}

/// Attribute conditions combined with and/or.
pub fn exec_sasn(bound: &BoundQuery, data: &Dataset) -> Result<ResultSet, QueryError> {
    if !bound.is_attribute_only() {
        return Err(QueryError::UnsupportedShape(
            "attribute search expects only attribute conditions",
        ));
    }
    Ok(execute(bound, data))
}

/// A single method condition.
pub fn exec_smsn(bound: &BoundQuery, data: &Dataset) -> Result<ResultSet, QueryError> {
    if !bound.is_single_method() {
        return Err(QueryError::UnsupportedShape(
            "method search expects exactly one method condition",
        ));
    }
    Ok(execute(bound, data))
}

/// Parse, bind and evaluate `text` over `data`.
pub fn run_query(text: &str, data: &Dataset) -> Result<(BoundQuery, ResultSet), QueryError> {
    let ast = parse_query(text)?;
    let bound = bind(&ast, &data.schema)?;
    let result = execute(&bound, data);
    Ok((bound, result))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckTrace {
    pub attribute: String,
    pub level: usize,
    pub value: String,
    /// The object's neighborhood, `gap`, or `-` for crisp-only comparisons.
    pub located: String,
    pub condition: String,
    pub outcome: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafTrace {
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connective: Option<Connective>,
    pub outcome: bool,
    pub checks: Vec<CheckTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObjectTrace {
    pub id: String,
    pub matched: bool,
    pub leaves: Vec<LeafTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub query: String,
    pub partitions: Vec<PartitionTable>,
    pub unmatchable: Vec<UnmatchableCondition>,
    pub objects: Vec<ObjectTrace>,
}

fn describe(part: &LevelPartition, scale: &crate::algebra::DomainScale, l: Located) -> String {
    match l.class() {
        Some(i) => {
            let c = part.class(i);
            format!(
                "{} {}",
                class_name(part, c),
                format_interval(scale, &c.interval)
            )
        }
        None => "gap".to_string(),
    }
}

/// Per-object, per-leaf evaluation details plus the partitions used.
pub fn explain(bound: &BoundQuery, data: &Dataset) -> Trace {
    let schema = &bound.schema;
    let partitions = bound
        .partitions
        .iter()
        .map(|(a, part)| {
            let spec = &schema.attributes[*a];
            PartitionTable::new(&spec.name, &spec.scale, part)
        })
        .collect();

    let mut checks = Vec::new();
    let objects = data
        .objects
        .iter()
        .map(|o| {
            let mut outcomes = Vec::with_capacity(bound.leaves.len());
            let leaves = bound
                .leaves
                .iter()
                .map(|leaf| {
                    let outcome = bound.eval_leaf(o, leaf, &mut checks);
                    outcomes.push(outcome);
                    let connective = match leaf.kind {
                        LeafKind::Method { connective, .. } => Some(connective),
                        LeafKind::Attribute(_) => None,
                    };
                    let checks = leaf
                        .bindings
                        .iter()
                        .zip(&checks)
                        .map(|(b, c)| {
                            let part = bound.partition_of(b);
                            let spec = &schema.attributes[b.attribute];
                            let crisp_only = matches!(
                                (c.object, b.located),
                                (Located::Crisp { .. }, Located::Crisp { .. })
                            ) && leaf.kind == LeafKind::Attribute(CompareOp::GeK);
                            CheckTrace {
                                attribute: spec.name.clone(),
                                level: b.level,
                                value: data.render_value(b.attribute, &o.values[b.attribute]),
                                located: if crisp_only {
                                    "-".to_string()
                                } else {
                                    describe(part, &spec.scale, c.object)
                                },
                                condition: if crisp_only {
                                    "-".to_string()
                                } else {
                                    describe(part, &spec.scale, b.located)
                                },
                                outcome: c.matched,
                            }
                        })
                        .collect();
                    LeafTrace {
                        condition: leaf.text.clone(),
                        connective,
                        outcome,
                        checks,
                    }
                })
                .collect();
            ObjectTrace {
                id: o.id.clone(),
                matched: bound.condition.eval(&outcomes),
                leaves,
            }
        })
        .collect();

    Trace {
        query: bound.text.clone(),
        partitions,
        unmatchable: bound.unmatchable.clone(),
        objects,
    }
}
