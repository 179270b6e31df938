//! Acceptance gate: one PASS/FAIL line per criterion.

mod oracle;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hedgeql_core::fixtures::{rectangle_dataset, rectangle_schema};
use hedgeql_core::partition::expected_class_count;
use hedgeql_core::query::ResultSet;
use hedgeql_core::schema::MethodSpec;
use hedgeql_core::{
    bind, build_partition, exec_sasn, exec_smsn, execute, explain, parse_query, run_query,
    AttrValue, AttributeSpec, BoundaryTerm, Connective, Dataset, DomainScale, FuzzyClassSchema,
    FuzzyObject, HedgeAlgebraConfig, HedgeId, HedgeSpec, LinguisticValue, Polarity, Term,
    ValidatedAlgebra,
};
use oracle::{Measures, OLabel, OTerm, OValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUNDARY_TOL: f64 = 1e-9;
const MEASURE_TOL: f64 = 1e-12;
const PROPERTY_CONFIGS: usize = 1000;
const POINTS_PER_CONFIG: usize = 100;
const ENGINE_DATASETS: usize = 200;

/// Hedge names by library id: positive weakest first, then negative.
const HEDGE_NAMES: [&str; 4] = ["More", "Very", "Possibly", "Little"];

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
        }
    }
}

fn run(id: &str, name: &str, f: impl FnOnce() -> Outcome, failures: &mut Vec<String>) {
    let start = Instant::now();
    let out = f();
    let ms = start.elapsed().as_millis();
    let tag = if out.ok { "PASS" } else { "FAIL" };
    println!("{tag} [{id}] {name}: {} ({ms} ms)", out.detail);
    if !out.ok {
        failures.push(id.to_string());
    }
}

fn main() -> ExitCode {
    let mut failures = Vec::new();
    run(
        "1",
        "level-2 partition boundaries",
        partition_regression,
        &mut failures,
    );
    run("2", "query 1 result", query_one, &mut failures);
    run("3", "query 2 result", query_two, &mut failures);
    run(
        "4",
        "representative values",
        representative_values,
        &mut failures,
    );
    run(
        "5",
        "randomized partition properties",
        property_suite,
        &mut failures,
    );
    run(
        "6",
        "engine oracle equivalence",
        engine_oracle,
        &mut failures,
    );
    run(
        "7",
        "linear scaling in object count",
        complexity_smoke,
        &mut failures,
    );
    run(
        "I1",
        "leaf evaluation count",
        termination_count,
        &mut failures,
    );
    run("I2", "and/or monotonicity", monotonicity, &mut failures);
    run(
        "I3",
        "determinism of results and traces",
        determinism,
        &mut failures,
    );
    if failures.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {}", failures.join(", "));
        ExitCode::FAILURE
    }
}

// ---------------------------------------------------------------- helpers

fn to_lib(l: &OLabel) -> LinguisticValue {
    match l {
        OLabel::Zero => LinguisticValue::Boundary(BoundaryTerm::Zero),
        OLabel::W => LinguisticValue::Boundary(BoundaryTerm::W),
        OLabel::One => LinguisticValue::Boundary(BoundaryTerm::One),
        OLabel::Term(t) => LinguisticValue::Term(lib_term(t)),
    }
}

fn lib_term(t: &OTerm) -> Term {
    Term::new(t.side, t.hedges.iter().map(|&h| HedgeId(h)).collect())
}

fn label_len(l: &OLabel) -> usize {
    match l {
        OLabel::Term(t) => t.len(),
        _ => 1,
    }
}

fn config(m: &Measures, neg: &str, pos: &str) -> HedgeAlgebraConfig {
    HedgeAlgebraConfig {
        negative_generator: neg.into(),
        positive_generator: pos.into(),
        fm_neg: m.fm_neg,
        fm_pos: 1.0 - m.fm_neg,
        positive_hedges: vec![
            HedgeSpec::new(HEDGE_NAMES[0], m.positive[0]),
            HedgeSpec::new(HEDGE_NAMES[1], m.positive[1]),
        ],
        negative_hedges: vec![
            HedgeSpec::new(HEDGE_NAMES[2], m.negative[0]),
            HedgeSpec::new(HEDGE_NAMES[3], m.negative[1]),
        ],
        synonyms: Default::default(),
    }
}

fn random_measures(rng: &mut ChaCha8Rng) -> Measures {
    let raw: Vec<f64> = (0..4).map(|_| rng.random_range(0.05..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    let mu: Vec<f64> = raw.iter().map(|x| x / sum).collect();
    let fm_neg = loop {
        let x = rng.random_range(0.1..0.9);
        if x > 0.1 {
            break x;
        }
    };
    Measures {
        fm_neg,
        positive: mu[..2].to_vec(),
        negative: mu[2..].to_vec(),
    }
}

fn random_term(rng: &mut ChaCha8Rng, max_len: usize) -> OTerm {
    let side = if rng.random_bool(0.5) {
        Polarity::Negative
    } else {
        Polarity::Positive
    };
    let len = rng.random_range(1..=max_len);
    OTerm {
        side,
        hedges: (1..len).map(|_| rng.random_range(0..4u8)).collect(),
    }
}

fn random_label(rng: &mut ChaCha8Rng, max_len: usize) -> OLabel {
    match rng.random_range(0..20) {
        0 => OLabel::Zero,
        1 => OLabel::W,
        2 => OLabel::One,
        _ => OLabel::Term(random_term(rng, max_len)),
    }
}

fn label_text(l: &OLabel, neg: &str, pos: &str) -> String {
    match l {
        OLabel::Zero => "0".into(),
        OLabel::W => "W".into(),
        OLabel::One => "1".into(),
        OLabel::Term(t) => {
            let mut words: Vec<&str> = t.hedges.iter().map(|&h| HEDGE_NAMES[h as usize]).collect();
            words.push(match t.side {
                Polarity::Negative => neg,
                Polarity::Positive => pos,
            });
            words.join(" ")
        }
    }
}

fn id_set(r: &ResultSet) -> BTreeSet<String> {
    r.ids.iter().cloned().collect()
}

fn ids(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

// ------------------------------------------------------------- criterion 1

fn partition_regression() -> Outcome {
    let start = Instant::now();
    let schema = rectangle_schema();
    let attr = schema.attribute("length").expect("length attribute");
    let part = match build_partition(&attr.algebra, 2) {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    // Published boundaries on [0, 100], ascending.
    let published: [(&str, f64, f64, bool); 11] = [
        ("0", 0.0, 7.35, true),
        ("Very short", 7.35, 16.8, false),
        ("More short", 26.25, 33.0, false),
        ("Possibly short", 40.2, 45.6, false),
        ("Little short", 52.2, 57.6, false),
        ("W", 57.6, 61.6, false),
        ("Little long", 61.6, 65.2, false),
        ("Possibly long", 69.6, 73.2, false),
        ("More long", 78.0, 82.5, false),
        ("Very long", 88.8, 95.1, false),
        ("1", 95.1, 100.0, false),
    ];
    let classes = part.classes();
    if classes.len() != published.len() {
        return Outcome::new(false, format!("{} classes", classes.len()));
    }
    let mut worst: f64 = 0.0;
    for (c, (label, lo, hi, closed)) in classes.iter().zip(published) {
        let want = attr
            .algebra
            .parse_term(label)
            .expect("published label parses");
        if c.label != want || c.interval.closed_lower != closed {
            return Outcome::new(
                false,
                format!("class {} differs from S({label})", c.ordinal),
            );
        }
        let (a, b) = attr.scale.scale_interval(&c.interval);
        worst = worst.max((a - lo).abs()).max((b - hi).abs());
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= BOUNDARY_TOL && elapsed < Duration::from_secs(1),
        format!("11 classes, max endpoint error {worst:.1e}, build {elapsed:?}"),
    )
}

// ---------------------------------------------------------- criteria 2, 3

const QUERY_1: &str =
    r#"select * from Rectangular where length = "little long" or width = "little short""#;
const QUERY_2: &str = r#"select * from Rectangular where area() = "less small""#;

fn query_result(q: &str, want: &[&str]) -> Outcome {
    match run_query(q, &rectangle_dataset()) {
        Ok((_, r)) => Outcome::new(id_set(&r) == ids(want), format!("{:?}", r.ids)),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn query_one() -> Outcome {
    query_result(QUERY_1, &["iD1", "iD2", "iD5", "iD6"])
}

fn query_two() -> Outcome {
    query_result(QUERY_2, &["iD2", "iD6"])
}

// ------------------------------------------------------------- criterion 4

fn representative_values() -> Outcome {
    let schema = rectangle_schema();
    let attr = schema.attribute("length").expect("length attribute");
    let mut worst: f64 = 0.0;
    let mut got = Vec::new();
    for (text, want) in [("W", 60.0), ("short", 36.0), ("long", 76.0)] {
        let v = attr.algebra.parse_term(text).expect("term parses");
        let x = attr.scale.scale(attr.algebra.representative_value(&v));
        worst = worst.max((x - want).abs());
        got.push(format!("v({text})={x}"));
    }
    Outcome::new(
        worst <= BOUNDARY_TOL,
        format!("{}, max error {worst:.1e}", got.join(" ")),
    )
}

// ------------------------------------------------------------- criterion 5

#[derive(Default)]
struct PropertyStats {
    terms: usize,
    points: usize,
    skipped: usize,
    first_failure: Option<String>,
}

impl PropertyStats {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut stats = PropertyStats::default();
    for n in 0..PROPERTY_CONFIGS {
        let m = random_measures(&mut rng);
        let alg = match ValidatedAlgebra::new(config(&m, "short", "long")) {
            Ok(a) => a,
            Err(e) => return Outcome::new(false, format!("config {n} rejected: {e}")),
        };
        check_config(n, &m, &alg, &mut rng, &mut stats);
        if stats.first_failure.is_some() {
            break;
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{PROPERTY_CONFIGS} configs x k=1..4, {} terms, {} located points ({} skipped near a boundary), {elapsed:?}",
        stats.terms, stats.points, stats.skipped
    );
    match stats.first_failure {
        Some(f) => Outcome::new(false, format!("{f}; {detail}")),
        None => Outcome::new(elapsed < Duration::from_secs(30), detail),
    }
}

fn check_config(
    n: usize,
    m: &Measures,
    alg: &ValidatedAlgebra,
    rng: &mut ChaCha8Rng,
    stats: &mut PropertyStats,
) {
    let sides = [Polarity::Negative, Polarity::Positive];
    let gens =
        alg.generator_measure(Polarity::Negative) + alg.generator_measure(Polarity::Positive);
    stats.check((gens - 1.0).abs() <= MEASURE_TOL, || {
        format!("config {n}: generator measures sum to {gens}")
    });

    // Measures and intervals for every term up to length 5.
    for k in 1..=5 {
        let mut intervals = Vec::new();
        for side in sides {
            for t in m.terms(side, k) {
                stats.terms += 1;
                let lt = lib_term(&t);
                let fm = alg.fuzziness_measure(&lt);
                let i = alg.fuzzy_interval(&lt);
                let (lo, hi) = m.interval(&t);
                stats.check((fm - m.fm(&t)).abs() <= MEASURE_TOL, || {
                    format!("config {n}: fm({t:?}) = {fm}, oracle {}", m.fm(&t))
                });
                stats.check((i.width() - fm).abs() <= MEASURE_TOL, || {
                    format!("config {n}: |I({t:?})| = {} but fm = {fm}", i.width())
                });
                stats.check(
                    (i.lower - lo).abs() <= MEASURE_TOL && (i.upper - hi).abs() <= MEASURE_TOL,
                    || format!("config {n}: I({t:?}) = {i:?}, oracle ({lo}, {hi})"),
                );
                if k <= 4 {
                    let sum: f64 = alg
                        .hedge_ids()
                        .map(|h| alg.fuzziness_measure(&lt.with_hedge(h)))
                        .sum();
                    stats.check((sum - fm).abs() <= MEASURE_TOL, || {
                        format!("config {n}: children of {t:?} sum to {sum}, fm = {fm}")
                    });
                }
                intervals.push(i);
            }
        }
        intervals.sort_by(|a, b| a.lower.total_cmp(&b.lower));
        let tiles = intervals.first().map(|i| i.lower) == Some(0.0)
            && intervals.last().map(|i| i.upper) == Some(1.0)
            && intervals.windows(2).all(|w| w[0].upper == w[1].lower);
        stats.check(tiles, || {
            format!("config {n}: depth-{k} intervals do not tile")
        });
    }

    for k in 1..=4 {
        let part = match build_partition(alg, k) {
            Ok(p) => p,
            Err(e) => {
                stats.check(false, || format!("config {n}: {e}"));
                return;
            }
        };
        let op = m.partition(k);

        let segs: Vec<_> = part.segments().collect();
        let tiles = segs.first().map(|s| s.0.lower) == Some(0.0)
            && segs.last().map(|s| s.0.upper) == Some(1.0)
            && segs.windows(2).all(|w| w[0].0.upper == w[1].0.lower)
            && segs.iter().all(|s| s.0.lower <= s.0.upper);
        stats.check(tiles, || {
            format!("config {n} k={k}: classes and gaps do not tile")
        });

        let want = 2 * 4usize.pow(k as u32 - 1) + 3;
        stats.check(
            part.classes().len() == want
                && expected_class_count(2, 2, k) == want
                && op.labels.len() == want,
            || {
                format!(
                    "config {n} k={k}: {} classes, want {want}",
                    part.classes().len()
                )
            },
        );

        for (c, label) in part.classes().iter().zip(&op.labels) {
            let (lo, hi) = op.class_bounds(c.ordinal);
            stats.check(
                c.label == to_lib(label)
                    && (c.interval.lower - lo).abs() <= MEASURE_TOL
                    && (c.interval.upper - hi).abs() <= MEASURE_TOL,
                || {
                    format!(
                        "config {n} k={k}: class {} differs from oracle {label:?}",
                        c.ordinal
                    )
                },
            );
        }

        let gaps = op.gaps();
        stats.check(part.gaps().len() == gaps.len(), || {
            format!(
                "config {n} k={k}: {} gaps, oracle {}",
                part.gaps().len(),
                gaps.len()
            )
        });
        for (g, (lo, hi)) in part.gaps().iter().zip(&gaps) {
            stats.check(
                (g.lower - lo).abs() <= MEASURE_TOL && (g.upper - hi).abs() <= MEASURE_TOL,
                || format!("config {n} k={k}: gap {g:?}, oracle ({lo}, {hi})"),
            );
        }

        for side in sides {
            for t in m.terms(side, k) {
                let label = LinguisticValue::Term(lib_term(&t));
                let v = alg.representative_value(&label);
                let inside = part
                    .class_of(&label)
                    .is_some_and(|c| c.interval.lower < v && v < c.interval.upper);
                stats.check(inside && (v - m.v(&t)).abs() <= MEASURE_TOL, || {
                    format!("config {n} k={k}: v({t:?}) = {v} not strictly inside S")
                });
            }
        }

        for _ in 0..POINTS_PER_CONFIG {
            let u: f64 = rng.random_range(0.0..=1.0);
            if op.boundary_distance(u) <= MEASURE_TOL && u != 0.0 && u != 1.0 {
                stats.skipped += 1;
                continue;
            }
            stats.points += 1;
            let got = part.locate_crisp(u).map(|c| c.label.clone());
            let want = op.locate(u).map(|c| to_lib(&op.labels[c]));
            stats.check(got == want, || {
                format!("config {n} k={k}: locate({u}) = {got:?}, oracle {want:?}")
            });
        }
    }
}

// ------------------------------------------------------------- criterion 6

struct World {
    measures: Vec<Measures>,
    scales: Vec<(f64, f64)>,
    /// Oracle copy of each object's values.
    values: Vec<Vec<OValue>>,
    data: Dataset,
}

const NEG: &str = "low";
const POS: &str = "high";

fn random_world(rng: &mut ChaCha8Rng) -> World {
    let n_attr = rng.random_range(1..=3);
    let mut measures = Vec::new();
    let mut scales = Vec::new();
    let mut attributes = Vec::new();
    for a in 0..n_attr {
        let m = random_measures(rng);
        let min = rng.random_range(-50.0..50.0);
        let max = min + rng.random_range(1.0..200.0);
        attributes.push(AttributeSpec {
            name: format!("a{a}"),
            scale: DomainScale::new(min, max).expect("valid domain"),
            algebra: ValidatedAlgebra::new(config(&m, NEG, POS)).expect("valid config"),
        });
        measures.push(m);
        scales.push((min, max));
    }
    let methods = (0..rng.random_range(1..=2))
        .map(|i| {
            let mut deps: Vec<String> = (0..n_attr)
                .filter(|_| rng.random_bool(0.6))
                .map(|a| format!("a{a}"))
                .collect();
            if deps.is_empty() {
                deps.push(format!("a{}", rng.random_range(0..n_attr)));
            }
            MethodSpec {
                name: format!("m{i}"),
                dependencies: deps,
                connective: if rng.random_bool(0.5) {
                    Connective::And
                } else {
                    Connective::Or
                },
            }
        })
        .collect();
    let schema = FuzzyClassSchema {
        class_name: "C".into(),
        attributes,
        methods,
    };

    let n_obj = rng.random_range(0..=50);
    let mut values = Vec::new();
    let mut objects = Vec::new();
    for i in 0..n_obj {
        let mut ov = Vec::new();
        let mut lv = Vec::new();
        for &(min, max) in &scales {
            if rng.random_bool(0.5) {
                let x: f64 = rng.random_range(min..=max);
                ov.push(OValue::Crisp((x - min) / (max - min)));
                lv.push(AttrValue::Crisp(x));
            } else {
                let l = random_label(rng, 5);
                lv.push(AttrValue::Linguistic(to_lib(&l)));
                ov.push(OValue::Label(l));
            }
        }
        values.push(ov);
        objects.push(FuzzyObject {
            id: format!("o{i}"),
            values: lv,
        });
    }
    let data = Dataset::new(schema, objects).expect("generated dataset validates");
    World {
        measures,
        scales,
        values,
        data,
    }
}

#[derive(Debug, Clone)]
enum Rhs {
    Label(OLabel),
    /// Domain units.
    Number(f64),
}

#[derive(Debug, Clone)]
struct Leaf {
    attr: usize,
    ge: bool,
    rhs: Rhs,
}

fn random_leaf(rng: &mut ChaCha8Rng, w: &World) -> Leaf {
    let attr = rng.random_range(0..w.measures.len());
    let rhs = if rng.random_bool(0.7) {
        Rhs::Label(random_label(rng, 5))
    } else {
        let (min, max) = w.scales[attr];
        Rhs::Number(rng.random_range(min..=max))
    };
    Leaf {
        attr,
        ge: rng.random_bool(0.4),
        rhs,
    }
}

fn query_text(leaves: &[Leaf], and: bool) -> String {
    let conds: Vec<String> = leaves
        .iter()
        .map(|l| {
            let op = if l.ge { ">=" } else { "=" };
            let rhs = match &l.rhs {
                Rhs::Label(t) => format!("\"{}\"", label_text(t, NEG, POS)),
                Rhs::Number(x) => format!("{x}"),
            };
            format!("a{} {op} {rhs}", l.attr)
        })
        .collect();
    let joiner = if and { " and " } else { " or " };
    format!("select * from C where {}", conds.join(joiner))
}

/// Crisp conditions use level 1. Re-derives every neighborhood from the raw measures for every object and
/// every leaf.
fn naive_sasn(w: &World, leaves: &[Leaf], and: bool) -> Vec<String> {
    let mut out = Vec::new();
    for (o, vals) in w.data.objects.iter().zip(&w.values) {
        let outcomes = leaves.iter().map(|l| {
            let m = &w.measures[l.attr];
            let (k, cond) = match &l.rhs {
                Rhs::Label(t) => (label_len(t).clamp(1, 4), OValue::Label(t.clone())),
                Rhs::Number(x) => {
                    let (min, max) = w.scales[l.attr];
                    (1, OValue::Crisp((x - min) / (max - min)))
                }
            };
            let part = m.partition(k);
            let a = oracle::locate(m, &part, k, &vals[l.attr]);
            let b = oracle::locate(m, &part, k, &cond);
            if l.ge {
                oracle::greater_equal(&part, a, b)
            } else {
                oracle::equal(a, b)
            }
        });
        let hit = if and {
            outcomes.fold(true, |acc, x| acc & x)
        } else {
            outcomes.fold(false, |acc, x| acc | x)
        };
        if hit {
            out.push(o.id.clone());
        }
    }
    out
}

fn run_sasn(w: &World, text: &str) -> Result<ResultSet, String> {
    let ast = parse_query(text).map_err(|e| format!("{text}: {e}"))?;
    let bound = bind(&ast, &w.data.schema).map_err(|e| format!("{text}: {e}"))?;
    exec_sasn(&bound, &w.data).map_err(|e| format!("{text}: {e}"))
}

fn engine_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut sasn, mut smsn, mut objects) = (0, 0, 0);
    for d in 0..ENGINE_DATASETS {
        let w = random_world(&mut rng);
        objects += w.data.objects.len();

        for _ in 0..3 {
            let leaves: Vec<Leaf> = (0..rng.random_range(1..=4))
                .map(|_| random_leaf(&mut rng, &w))
                .collect();
            let and = rng.random_bool(0.5);
            let text = query_text(&leaves, and);
            let got = match run_sasn(&w, &text) {
                Ok(r) => r.ids,
                Err(e) => return Outcome::new(false, format!("dataset {d}: {e}")),
            };
            let want = naive_sasn(&w, &leaves, and);
            if got != want {
                let diff: Vec<String> = w
                    .data
                    .objects
                    .iter()
                    .filter(|o| got.contains(&o.id) != want.contains(&o.id))
                    .map(|o| format!("{} {:?}", o.id, o.values))
                    .collect();
                return Outcome::new(
                    false,
                    format!("dataset {d}: `{text}` gave {got:?}, oracle {want:?}; differing {diff:?}; schema {:?}", w.data.schema.attributes),
                );
            }
            sasn += 1;
        }

        for method in &w.data.schema.methods {
            let term = label_text(&random_label(&mut rng, 5), NEG, POS);
            let text = format!("select * from C where {}() = \"{term}\"", method.name);
            let got = match parse_query(&text)
                .map_err(|e| e.to_string())
                .and_then(|a| bind(&a, &w.data.schema).map_err(|e| e.to_string()))
                .and_then(|b| exec_smsn(&b, &w.data).map_err(|e| e.to_string()))
            {
                Ok(r) => r.ids,
                Err(e) => return Outcome::new(false, format!("dataset {d}: {text}: {e}")),
            };
            let mut per_dep = Vec::new();
            for dep in &method.dependencies {
                match run_sasn(&w, &format!("select * from C where {dep} = \"{term}\"")) {
                    Ok(r) => per_dep.push(id_set(&r)),
                    Err(e) => return Outcome::new(false, format!("dataset {d}: {e}")),
                }
            }
            let want: Vec<String> = w
                .data
                .objects
                .iter()
                .map(|o| &o.id)
                .filter(|id| match method.connective {
                    Connective::And => per_dep.iter().all(|s| s.contains(*id)),
                    Connective::Or => per_dep.iter().any(|s| s.contains(*id)),
                })
                .cloned()
                .collect();
            if got != want {
                return Outcome::new(
                    false,
                    format!("dataset {d}: `{text}` gave {got:?}, expected {want:?}"),
                );
            }
            smsn += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        elapsed < Duration::from_secs(30),
        format!(
            "{ENGINE_DATASETS} datasets ({objects} objects), {sasn} attribute queries, {smsn} method queries, {elapsed:?}"
        ),
    )
}

// ------------------------------------------------------------- criterion 7

fn synthetic(n: usize, seed: u64) -> Dataset {
    let schema = rectangle_schema();
    let alg = schema.attributes[0].algebra.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for side in [Polarity::Negative, Polarity::Positive] {
        for k in 1..=3 {
            terms.extend(alg.terms_of_length(side, k));
        }
    }
    let objects = (0..n)
        .map(|i| FuzzyObject {
            id: format!("o{i}"),
            values: (0..2)
                .map(|_| {
                    if rng.random_bool(0.5) {
                        AttrValue::Crisp(rng.random_range(0.0..=100.0))
                    } else {
                        let t = &terms[rng.random_range(0..terms.len())];
                        AttrValue::Linguistic(LinguisticValue::Term(t.clone()))
                    }
                })
                .collect(),
        })
        .collect();
    Dataset::new(schema, objects).expect("synthetic dataset validates")
}

fn best_time(data: &Dataset, runs: usize) -> Duration {
    let bound = bind(&parse_query(QUERY_1).expect("query parses"), &data.schema).expect("binds");
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            let r = execute(&bound, data);
            std::hint::black_box(r);
            t.elapsed()
        })
        .min()
        .expect("at least one run")
}

fn complexity_smoke() -> Outcome {
    let small = synthetic(10_000, 7);
    let large = synthetic(100_000, 8);
    // Warm up allocator and caches before timing.
    best_time(&small, 1);
    let t_small = best_time(&small, 5);
    let t_large = best_time(&large, 5);
    let ratio = t_large.as_secs_f64() / t_small.as_secs_f64().max(1e-9);
    Outcome::new(
        ratio <= 30.0,
        format!("10k {t_small:?}, 100k {t_large:?}, ratio {ratio:.2} (limit 30)"),
    )
}

// -------------------------------------------------------------- invariants

fn invariant_worlds() -> Vec<(World, Vec<Leaf>, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0101);
    (0..100)
        .map(|_| {
            let w = random_world(&mut rng);
            let leaves = (0..rng.random_range(1..=4))
                .map(|_| random_leaf(&mut rng, &w))
                .collect();
            let and = rng.random_bool(0.5);
            (w, leaves, and)
        })
        .collect()
}

fn termination_count() -> Outcome {
    let mut checked = 0;
    for (w, leaves, and) in invariant_worlds() {
        let text = query_text(&leaves, and);
        let r = match run_sasn(&w, &text) {
            Ok(r) => r,
            Err(e) => return Outcome::new(false, e),
        };
        if r.leaf_evaluations != w.data.objects.len() * leaves.len() {
            return Outcome::new(
                false,
                format!("`{text}`: {} evaluations", r.leaf_evaluations),
            );
        }
        checked += 1;
    }
    let (bound, r) = run_query(QUERY_2, &rectangle_dataset()).expect("query 2 runs");
    let ok = r.leaf_evaluations == 6 * bound.leaves.len();
    Outcome::new(
        ok,
        format!("{checked} queries, evaluations = objects x leaves"),
    )
}

fn monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0102);
    let mut checked = 0;
    for (w, mut leaves, and) in invariant_worlds() {
        let before = match run_sasn(&w, &query_text(&leaves, and)) {
            Ok(r) => id_set(&r),
            Err(e) => return Outcome::new(false, e),
        };
        leaves.push(random_leaf(&mut rng, &w));
        let text = query_text(&leaves, and);
        let after = match run_sasn(&w, &text) {
            Ok(r) => id_set(&r),
            Err(e) => return Outcome::new(false, e),
        };
        let ok = if and {
            after.is_subset(&before)
        } else {
            after.is_superset(&before)
        };
        if !ok {
            return Outcome::new(false, format!("`{text}` changed the result the wrong way"));
        }
        checked += 1;
    }
    Outcome::new(true, format!("{checked} leaf additions"))
}

fn determinism() -> Outcome {
    let mut checked = 0;
    for (w, leaves, and) in invariant_worlds() {
        let text = query_text(&leaves, and);
        let once = || {
            let ast = parse_query(&text).expect("query parses");
            let bound = bind(&ast, &w.data.schema).expect("query binds");
            (execute(&bound, &w.data), explain(&bound, &w.data))
        };
        let (r1, t1) = once();
        let (r2, t2) = once();
        if r1 != r2 || t1 != t2 {
            return Outcome::new(false, format!("`{text}` is not deterministic"));
        }
        checked += 1;
    }
    Outcome::new(true, format!("{checked} queries evaluated twice"))
}
