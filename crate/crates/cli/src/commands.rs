use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hedgeql_core::display::{class_name, format_interval, render_table, round6, PartitionTable};
use hedgeql_core::{
    bind_with_level, build_partition, execute, explain, load_dataset, load_schema, parse_query,
    AttrValue, BoundQuery, Dataset, FuzzyClassSchema, QueryError, Trace, MAX_LEVEL,
};
use serde::Serialize;

use crate::args::Format;
use crate::render::render_trace;

/// Exit status for invalid input files, queries or values.
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

pub fn read_schema(path: &Path) -> Result<FuzzyClassSchema, CliError> {
    load_schema(&read(path)?).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

pub fn read_dataset(path: &Path, schema: &FuzzyClassSchema) -> Result<Dataset, CliError> {
    load_dataset(&read(path)?, schema)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

pub fn check_level(level: usize) -> Result<(), CliError> {
    if (1..=MAX_LEVEL).contains(&level) {
        Ok(())
    } else {
        Err(CliError::invalid(format!(
            "level {level} is out of range, expected 1 to {MAX_LEVEL}"
        )))
    }
}

pub fn query_error(text: &str, e: QueryError) -> CliError {
    match e {
        QueryError::Syntax(s) => CliError::invalid(format!("query: {s}\n{}", s.render(text))),
        other => CliError::invalid(format!("query: {other}")),
    }
}

/// Output of one query run, before formatting.
pub struct QueryRun {
    pub text: String,
    pub bound: BoundQuery,
    pub matched: Vec<usize>,
    pub trace: Option<Trace>,
}

pub fn run_query(
    text: &str,
    data: &Dataset,
    level: Option<usize>,
    with_trace: bool,
) -> Result<QueryRun, CliError> {
    let ast = parse_query(text).map_err(|e| query_error(text, e.into()))?;
    let bound = bind_with_level(&ast, &data.schema, level).map_err(|e| query_error(text, e))?;
    let result = execute(&bound, data);
    let trace = with_trace.then(|| explain(&bound, data));
    Ok(QueryRun {
        text: text.to_string(),
        bound,
        matched: result.indices,
        trace,
    })
}

#[derive(Serialize)]
struct QueryJson<'a> {
    query: &'a str,
    matched: Vec<&'a str>,
    explain: Option<&'a Trace>,
}

/// Diagnostics for conditions that can never match.
pub fn warnings(run: &QueryRun) -> Vec<String> {
    run.bound
        .unmatchable
        .iter()
        .map(|u| format!("warning: {u}"))
        .collect()
}

pub fn format_query(run: &QueryRun, data: &Dataset, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = QueryJson {
                query: &run.text,
                matched: run
                    .matched
                    .iter()
                    .map(|&i| data.objects[i].id.as_str())
                    .collect(),
                explain: run.trace.as_ref(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("query output serializes");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut header = vec!["id".to_string()];
            header.extend(
                run.bound
                    .projection
                    .iter()
                    .map(|&a| data.schema.attributes[a].name.clone()),
            );
            let mut rows = vec![header];
            for &i in &run.matched {
                let o = &data.objects[i];
                let mut row = vec![o.id.clone()];
                row.extend(
                    run.bound
                        .projection
                        .iter()
                        .map(|&a| data.render_value(a, &o.values[a])),
                );
                rows.push(row);
            }
            let mut out = render_table(&rows);
            let _ = writeln!(out, "({})", plural(run.matched.len(), "row"));
            if let Some(t) = &run.trace {
                out.push('\n');
                out.push_str(&render_trace(t));
            }
            out
        }
    }
}

pub fn partition_table(
    schema: &FuzzyClassSchema,
    attr: &str,
    level: usize,
) -> Result<PartitionTable, CliError> {
    check_level(level)?;
    let spec = schema
        .attribute(attr)
        .ok_or_else(|| CliError::invalid(format!("unknown attribute `{attr}`")))?;
    let part =
        build_partition(&spec.algebra, level).map_err(|e| CliError::invalid(e.to_string()))?;
    Ok(PartitionTable::new(&spec.name, &spec.scale, &part))
}

pub fn format_partition(table: &PartitionTable, format: Format) -> String {
    match format {
        Format::Table => table.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("partition serializes");
            s.push('\n');
            s
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LocateOutput {
    pub attribute: String,
    pub level: usize,
    pub input: String,
    /// `S(label)`, or `None` inside a gap.
    pub class: Option<String>,
    pub lower: f64,
    pub upper: f64,
    pub closed_lower: bool,
    #[serde(skip)]
    text: String,
}

pub fn locate(
    schema: &FuzzyClassSchema,
    attr: &str,
    level: usize,
    input: &str,
) -> Result<LocateOutput, CliError> {
    check_level(level)?;
    let spec = schema
        .attribute(attr)
        .ok_or_else(|| CliError::invalid(format!("unknown attribute `{attr}`")))?;
    let part =
        build_partition(&spec.algebra, level).map_err(|e| CliError::invalid(e.to_string()))?;

    let trimmed = input.trim();
    let (value, u) = match trimmed.parse::<f64>() {
        Ok(x) if x.is_finite() => {
            let u = spec
                .scale
                .unscale(x)
                .map_err(|e| CliError::invalid(format!("`{attr}`: {e}")))?;
            (AttrValue::Crisp(u), u)
        }
        _ => {
            let text = schema.resolve_synonym(attr, trimmed);
            let v = spec
                .algebra
                .parse_term(&text)
                .map_err(|e| CliError::invalid(format!("`{attr}`: unknown term: {e}")))?;
            let u = spec.algebra.representative_value(&v);
            (AttrValue::Linguistic(v), u)
        }
    };

    let (interval, class) = match part.locate(&value).class() {
        Some(i) => {
            let c = part.class(i);
            (c.interval, Some(class_name(&part, c)))
        }
        None => part
            .segments()
            .find(|(s, owner)| owner.is_none() && s.contains(u))
            .map(|(s, _)| (s, None))
            .ok_or_else(|| CliError::invalid(format!("`{input}` lies outside the partition")))?,
    };
    let shown = format_interval(&spec.scale, &interval);
    let text = match &class {
        Some(name) => format!("{name} {shown}"),
        None => format!("gap {shown}"),
    };
    let (lower, upper) = spec.scale.scale_interval(&interval);
    Ok(LocateOutput {
        attribute: spec.name.clone(),
        level,
        input: trimmed.to_string(),
        class,
        lower: round6(lower),
        upper: round6(upper),
        closed_lower: interval.closed_lower,
        text,
    })
}

pub fn format_locate(out: &LocateOutput, format: Format) -> String {
    match format {
        Format::Table => format!("{}\n", out.text),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(out).expect("locate output serializes");
            s.push('\n');
            s
        }
    }
}

pub fn validate(schema_path: &Path, data_path: Option<&Path>) -> Result<String, CliError> {
    let schema = read_schema(schema_path)?;
    let mut out = format!(
        "{}: ok, class {} with {} and {}\n",
        schema_path.display(),
        schema.class_name,
        plural(schema.attributes.len(), "attribute"),
        plural(schema.methods.len(), "method")
    );
    if let Some(p) = data_path {
        let data = read_dataset(p, &schema)?;
        let _ = writeln!(
            out,
            "{}: ok, {}",
            p.display(),
            plural(data.objects.len(), "object")
        );
    }
    Ok(out)
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}
