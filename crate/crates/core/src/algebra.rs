//! Hedge-algebra kernel.
//!
//! A linguistic domain is generated from two primary terms (`c⁻`, `c⁺`) by
//! repeatedly applying hedges. Each hedge `h` carries a measure `μ(h)`, and
//! each term `t` a fuzziness measure `fm(t)`: the product of the hedge
//! measures along its chain times the measure of its generator. Terms map to
//! nested sub-intervals of `[0, 1]` whose lengths equal their fuzziness
//! measures, so the terms of a fixed length tile the unit interval.
//!
//! Child intervals are laid out with one fixed orientation per generator
//! side. Below `c⁻` the strongest positive hedge sits nearest 0 and the
//! strongest negative hedge nearest the neutral point; above `c⁺` the layout
//! is mirrored so the strongest positive hedge sits nearest 1.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Absolute tolerance for measure sums.
pub const MEASURE_TOLERANCE: f64 = 1e-12;

/// Longest hedge chain accepted from surface text.
pub const MAX_HEDGES: usize = 4;

/// Longest term (generator plus hedges) whose interval is ever materialized.
pub const MAX_DEPTH: usize = MAX_HEDGES + 1;

/// A named hedge with its measure.
#[derive(Debug, Clone, PartialEq)]
pub struct HedgeSpec {
    pub name: String,
    pub mu: f64,
}

impl HedgeSpec {
    pub fn new(name: impl Into<String>, mu: f64) -> Self {
        Self {
            name: name.into(),
            mu,
        }
    }
}

/// Raw, unvalidated description of one attribute's linguistic universe.
///
/// Hedge lists are ordered weakest first: `positive_hedges` is `h₁ < … < h_p`
/// and `negative_hedges` is `h₋₁ < … < h₋q`.
#[derive(Debug, Clone, PartialEq)]
pub struct HedgeAlgebraConfig {
    pub negative_generator: String,
    pub positive_generator: String,
    pub fm_neg: f64,
    pub fm_pos: f64,
    pub positive_hedges: Vec<HedgeSpec>,
    pub negative_hedges: Vec<HedgeSpec>,
    /// Surface text to canonical term text, matched case-insensitively.
    pub synonyms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Generators,
    Hedges,
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureKind::Generators => f.write_str("generator measures"),
            MeasureKind::Hedges => f.write_str("hedge measures"),
        }
    }
}

/// One violated constraint found while validating a [`HedgeAlgebraConfig`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("{kind} sum to {sum}, expected 1")]
    MeasureSumViolation { kind: MeasureKind, sum: f64 },
    #[error("measure of `{name}` is {value}, expected a value in (0, 1)")]
    MeasureOutOfRange { name: String, value: f64 },
    #[error("no {0} hedges given")]
    EmptyHedgeSide(Polarity),
    #[error("name `{0}` is used more than once")]
    DuplicateName(String),
    #[error("name `{0}` must be a single non-empty word")]
    InvalidName(String),
    #[error("synonym `{from}` -> `{to}`: {reason}")]
    BadSynonym {
        from: String,
        to: String,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid hedge algebra: {}", join_violations(.violations))]
pub struct ConfigError {
    pub violations: Vec<Violation>,
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("empty term")]
    EmptyInput,
    #[error("unknown word `{word}` in term `{text}`")]
    UnknownWord { word: String, text: String },
    #[error("term `{text}` has {hedges} hedges, at most {max} are supported", max = MAX_HEDGES)]
    TermTooDeep { text: String, hedges: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    fn index(self) -> usize {
        match self {
            Polarity::Negative => 0,
            Polarity::Positive => 1,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Negative => f.write_str("negative"),
            Polarity::Positive => f.write_str("positive"),
        }
    }
}

/// Index of a hedge within its [`ValidatedAlgebra`].
///
/// Positive hedges take ids `0..p` (weakest first), negative hedges
/// `p..p+q` (weakest first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HedgeId(pub u8);

/// A generator with an outermost-first hedge chain.
///
/// `very little short` is `hedges = [Very, Little]` over the negative
/// generator. A term is only meaningful relative to the algebra whose hedge
/// ids it uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub generator: Polarity,
    pub hedges: Vec<HedgeId>,
}

impl Term {
    pub fn generator(generator: Polarity) -> Self {
        Self {
            generator,
            hedges: Vec::new(),
        }
    }

    pub fn new(generator: Polarity, hedges: Vec<HedgeId>) -> Self {
        Self { generator, hedges }
    }

    /// Generator plus hedge count; always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        1 + self.hedges.len()
    }

    /// `h t` for this term `t`.
    pub fn with_hedge(&self, hedge: HedgeId) -> Self {
        let mut hedges = Vec::with_capacity(self.hedges.len() + 1);
        hedges.push(hedge);
        hedges.extend_from_slice(&self.hedges);
        Self {
            generator: self.generator,
            hedges,
        }
    }

    /// The unique term of length `k` this term was derived from, or `None`
    /// when the term is shorter than `k`.
    pub fn ancestor(&self, k: usize) -> Option<Term> {
        if k == 0 || k > self.len() {
            return None;
        }
        let drop = self.len() - k;
        Some(Term {
            generator: self.generator,
            hedges: self.hedges[drop..].to_vec(),
        })
    }
}

/// The constants `0`, `W` and `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryTerm {
    Zero,
    W,
    One,
}

impl fmt::Display for BoundaryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryTerm::Zero => "0",
            BoundaryTerm::W => "W",
            BoundaryTerm::One => "1",
        })
    }
}

/// Either a hedged term or one of the boundary constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinguisticValue {
    Term(Term),
    Boundary(BoundaryTerm),
}

impl LinguisticValue {
    /// Term length; boundary constants count as length 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            LinguisticValue::Term(t) => t.len(),
            LinguisticValue::Boundary(_) => 1,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            LinguisticValue::Term(t) => Some(t),
            LinguisticValue::Boundary(_) => None,
        }
    }
}

impl From<Term> for LinguisticValue {
    fn from(t: Term) -> Self {
        LinguisticValue::Term(t)
    }
}

impl From<BoundaryTerm> for LinguisticValue {
    fn from(b: BoundaryTerm) -> Self {
        LinguisticValue::Boundary(b)
    }
}

/// A sub-interval of `[0, 1]`, left-open and right-closed unless it starts
/// at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyInterval {
    pub lower: f64,
    pub upper: f64,
    pub closed_lower: bool,
}

impl FuzzyInterval {
    pub fn new(lower: f64, upper: f64) -> Self {
        debug_assert!(lower <= upper, "inverted interval ({lower}, {upper}]");
        Self {
            lower,
            upper,
            closed_lower: lower == 0.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, u: f64) -> bool {
        let above = if self.closed_lower {
            u >= self.lower
        } else {
            u > self.lower
        };
        above && u <= self.upper
    }

    /// Whether `other` lies inside this interval.
    pub fn includes(&self, other: &FuzzyInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

/// The real endpoints of an attribute domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainScale {
    min: f64,
    max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ScaleError {
    #[error("invalid domain [{min}, {max}]: need finite min < max")]
    InvalidDomain { min: f64, max: f64 },
    #[error("value {value} is outside the domain [{min}, {max}]")]
    OutOfDomain { value: f64, min: f64, max: f64 },
}

impl DomainScale {
    pub fn new(min: f64, max: f64) -> Result<Self, ScaleError> {
        if min.is_finite() && max.is_finite() && min < max {
            Ok(Self { min, max })
        } else {
            Err(ScaleError::InvalidDomain { min, max })
        }
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn scale(&self, u: f64) -> f64 {
        self.min + (self.max - self.min) * u
    }

    pub fn unscale(&self, x: f64) -> Result<f64, ScaleError> {
        if !(self.min..=self.max).contains(&x) {
            return Err(ScaleError::OutOfDomain {
                value: x,
                min: self.min,
                max: self.max,
            });
        }
        Ok((x - self.min) / (self.max - self.min))
    }

    pub fn scale_interval(&self, i: &FuzzyInterval) -> (f64, f64) {
        (self.scale(i.lower), self.scale(i.upper))
    }
}

#[derive(Debug)]
struct HedgeInfo {
    name: String,
    mu: f64,
}

#[derive(Debug)]
struct Inner {
    config: HedgeAlgebraConfig,
    hedges: Vec<HedgeInfo>,
    p: usize,
    /// Ascending child order per generator side.
    layout: [Vec<HedgeId>; 2],
    /// `prefix[side][j]` = Σ μ over the first `j` hedges of `layout[side]`.
    prefix: [Vec<f64>; 2],
    /// Position of each hedge id within `layout[side]`.
    position: [Vec<usize>; 2],
    /// Lower-cased synonym table.
    synonyms: HashMap<String, String>,
}

/// An immutable, validated hedge algebra. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct ValidatedAlgebra(Arc<Inner>);

impl PartialEq for ValidatedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.config == other.0.config
    }
}

/// Check every constraint on `cfg` and build the algebra.
pub fn validate_config(cfg: HedgeAlgebraConfig) -> Result<ValidatedAlgebra, ConfigError> {
    ValidatedAlgebra::new(cfg)
}

fn normalize(text: &str) -> String {
    text.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

fn in_unit_open(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

impl ValidatedAlgebra {
    pub fn new(cfg: HedgeAlgebraConfig) -> Result<Self, ConfigError> {
        let mut violations = Vec::new();

        for (name, value) in [
            (&cfg.negative_generator, cfg.fm_neg),
            (&cfg.positive_generator, cfg.fm_pos),
        ] {
            if !in_unit_open(value) {
                violations.push(Violation::MeasureOutOfRange {
                    name: name.clone(),
                    value,
                });
            }
        }
        let fm_sum = cfg.fm_neg + cfg.fm_pos;
        if !sums_to_one(fm_sum) {
            violations.push(Violation::MeasureSumViolation {
                kind: MeasureKind::Generators,
                sum: fm_sum,
            });
        }

        if cfg.positive_hedges.is_empty() {
            violations.push(Violation::EmptyHedgeSide(Polarity::Positive));
        }
        if cfg.negative_hedges.is_empty() {
            violations.push(Violation::EmptyHedgeSide(Polarity::Negative));
        }
        if cfg.positive_hedges.len() + cfg.negative_hedges.len() > usize::from(u8::MAX) {
            violations.push(Violation::InvalidName("too many hedges".into()));
        }

        let all_hedges = cfg.positive_hedges.iter().chain(&cfg.negative_hedges);
        let mut mu_sum = 0.0;
        for h in all_hedges.clone() {
            if !in_unit_open(h.mu) {
                violations.push(Violation::MeasureOutOfRange {
                    name: h.name.clone(),
                    value: h.mu,
                });
            }
            mu_sum += h.mu;
        }
        if !cfg.positive_hedges.is_empty()
            && !cfg.negative_hedges.is_empty()
            && !sums_to_one(mu_sum)
        {
            violations.push(Violation::MeasureSumViolation {
                kind: MeasureKind::Hedges,
                sum: mu_sum,
            });
        }

        let names = [&cfg.negative_generator, &cfg.positive_generator]
            .into_iter()
            .chain(all_hedges.map(|h| &h.name));
        let mut seen = HashMap::new();
        for name in names {
            if name.is_empty() || name.split_whitespace().count() != 1 || is_boundary_word(name) {
                violations.push(Violation::InvalidName(name.clone()));
                continue;
            }
            let count = seen.entry(name.to_lowercase()).or_insert(0usize);
            *count += 1;
            if *count == 2 {
                violations.push(Violation::DuplicateName(name.clone()));
            }
        }

        if !violations.is_empty() {
            return Err(ConfigError { violations });
        }

        let p = cfg.positive_hedges.len();
        let q = cfg.negative_hedges.len();
        let hedges: Vec<HedgeInfo> = cfg
            .positive_hedges
            .iter()
            .chain(&cfg.negative_hedges)
            .map(|h| HedgeInfo {
                name: h.name.clone(),
                mu: h.mu,
            })
            .collect();

        // c⁻ side: h_p … h₁ h₋₁ … h₋q; c⁺ side is the mirror image.
        let negative_layout: Vec<HedgeId> = (0..p)
            .rev()
            .chain(p..p + q)
            .map(|i| HedgeId(i as u8))
            .collect();
        let positive_layout: Vec<HedgeId> = negative_layout.iter().rev().copied().collect();

        let prefix_of = |layout: &[HedgeId]| {
            let mut acc = 0.0;
            let mut out = Vec::with_capacity(layout.len() + 1);
            out.push(0.0);
            for h in layout {
                acc += hedges[usize::from(h.0)].mu;
                out.push(acc);
            }
            out
        };
        let position_of = |layout: &[HedgeId]| {
            let mut pos = vec![0; layout.len()];
            for (j, h) in layout.iter().enumerate() {
                pos[usize::from(h.0)] = j;
            }
            pos
        };

        let prefix = [prefix_of(&negative_layout), prefix_of(&positive_layout)];
        let position = [position_of(&negative_layout), position_of(&positive_layout)];

        let synonyms = cfg
            .synonyms
            .iter()
            .map(|(k, v)| (normalize(k), v.clone()))
            .collect();

        let alg = ValidatedAlgebra(Arc::new(Inner {
            config: cfg,
            hedges,
            p,
            layout: [negative_layout, positive_layout],
            prefix,
            position,
            synonyms,
        }));

        let mut violations = Vec::new();
        for (from, to) in &alg.0.config.synonyms {
            if let Err(e) = alg.parse_words(to) {
                violations.push(Violation::BadSynonym {
                    from: from.clone(),
                    to: to.clone(),
                    reason: e.to_string(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(ConfigError { violations });
        }
        Ok(alg)
    }

    pub fn config(&self) -> &HedgeAlgebraConfig {
        &self.0.config
    }

    /// Number of positive hedges.
    pub fn p(&self) -> usize {
        self.0.p
    }

    /// Number of negative hedges.
    pub fn q(&self) -> usize {
        self.0.hedges.len() - self.0.p
    }

    pub fn hedge_count(&self) -> usize {
        self.0.hedges.len()
    }

    pub fn hedge_ids(&self) -> impl Iterator<Item = HedgeId> + '_ {
        (0..self.0.hedges.len()).map(|i| HedgeId(i as u8))
    }

    pub fn hedge_name(&self, h: HedgeId) -> &str {
        &self.0.hedges[usize::from(h.0)].name
    }

    pub fn mu(&self, h: HedgeId) -> f64 {
        self.0.hedges[usize::from(h.0)].mu
    }

    pub fn is_positive_hedge(&self, h: HedgeId) -> bool {
        usize::from(h.0) < self.0.p
    }

    /// `h_p`.
    pub fn strongest_positive(&self) -> HedgeId {
        HedgeId((self.0.p - 1) as u8)
    }

    /// `h₋q`.
    pub fn strongest_negative(&self) -> HedgeId {
        HedgeId((self.0.hedges.len() - 1) as u8)
    }

    /// Σ μ over negative hedges.
    pub fn alpha(&self) -> f64 {
        self.0.hedges[self.0.p..].iter().map(|h| h.mu).sum()
    }

    /// Σ μ over positive hedges.
    pub fn beta(&self) -> f64 {
        self.0.hedges[..self.0.p].iter().map(|h| h.mu).sum()
    }

    /// Hedges in ascending child-interval order for terms on `side`.
    pub fn layout(&self, side: Polarity) -> &[HedgeId] {
        &self.0.layout[side.index()]
    }

    pub fn generator_name(&self, side: Polarity) -> &str {
        match side {
            Polarity::Negative => &self.0.config.negative_generator,
            Polarity::Positive => &self.0.config.positive_generator,
        }
    }

    pub fn generator_measure(&self, side: Polarity) -> f64 {
        match side {
            Polarity::Negative => self.0.config.fm_neg,
            Polarity::Positive => self.0.config.fm_pos,
        }
    }

    /// Canonical text of a term, e.g. `Little short`.
    pub fn render(&self, t: &Term) -> String {
        let mut words: Vec<&str> = t.hedges.iter().map(|&h| self.hedge_name(h)).collect();
        words.push(self.generator_name(t.generator));
        words.join(" ")
    }

    pub fn render_value(&self, v: &LinguisticValue) -> String {
        match v {
            LinguisticValue::Term(t) => self.render(t),
            LinguisticValue::Boundary(b) => b.to_string(),
        }
    }

    /// Synonym-table lookup, case-insensitive.
    pub fn resolve_synonym(&self, text: &str) -> Option<&str> {
        self.0.synonyms.get(&normalize(text)).map(String::as_str)
    }

    /// Parse surface text into a term or boundary constant.
    ///
    /// The synonym table is consulted on the whole text first; otherwise the
    /// last word names a generator and preceding words name hedges.
    pub fn parse_term(&self, text: &str) -> Result<LinguisticValue, TermError> {
        match self.resolve_synonym(text) {
            Some(target) => self.parse_words(target),
            None => self.parse_words(text),
        }
    }

    fn parse_words(&self, text: &str) -> Result<LinguisticValue, TermError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let Some((last, hedge_words)) = words.split_last() else {
            return Err(TermError::EmptyInput);
        };
        if hedge_words.is_empty() {
            match last.to_lowercase().as_str() {
                "0" => return Ok(BoundaryTerm::Zero.into()),
                "w" => return Ok(BoundaryTerm::W.into()),
                "1" => return Ok(BoundaryTerm::One.into()),
                _ => {}
            }
        }
        let unknown = |word: &str| TermError::UnknownWord {
            word: word.to_string(),
            text: text.to_string(),
        };
        let last_lower = last.to_lowercase();
        let generator = if last_lower == self.0.config.negative_generator.to_lowercase() {
            Polarity::Negative
        } else if last_lower == self.0.config.positive_generator.to_lowercase() {
            Polarity::Positive
        } else {
            return Err(unknown(last));
        };
        if hedge_words.len() > MAX_HEDGES {
            return Err(TermError::TermTooDeep {
                text: text.to_string(),
                hedges: hedge_words.len(),
            });
        }
        let hedges = hedge_words
            .iter()
            .map(|w| {
                let lw = w.to_lowercase();
                self.hedge_ids()
                    .find(|&h| self.hedge_name(h).to_lowercase() == lw)
                    .ok_or_else(|| unknown(w))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Term::new(generator, hedges).into())
    }

    /// `fm(hₙ…h₁c) = μ(hₙ)·…·μ(h₁)·fm(c)`.
    pub fn fuzziness_measure(&self, t: &Term) -> f64 {
        t.hedges
            .iter()
            .rev()
            .fold(self.generator_measure(t.generator), |fm, &h| {
                fm * self.mu(h)
            })
    }

    pub fn boundary_measure(&self, _b: BoundaryTerm) -> f64 {
        0.0
    }

    pub fn value_measure(&self, v: &LinguisticValue) -> f64 {
        match v {
            LinguisticValue::Term(t) => self.fuzziness_measure(t),
            LinguisticValue::Boundary(b) => self.boundary_measure(*b),
        }
    }

    /// Boundary `j` (0 ≤ j ≤ p+q) between consecutive children of an
    /// interval `[lower, upper]` with measure `fm`. The outer boundaries are
    /// the parent's own endpoints, so children tile the parent exactly.
    fn child_boundary(&self, side: Polarity, lower: f64, upper: f64, fm: f64, j: usize) -> f64 {
        let prefix = &self.0.prefix[side.index()];
        if j + 1 == prefix.len() {
            upper
        } else {
            lower + fm * prefix[j]
        }
    }

    /// `(lower, upper, fm)` of a term, computed by descending from its
    /// generator.
    fn interval_parts(&self, t: &Term) -> (f64, f64, f64) {
        let side = t.generator;
        let fm_neg = self.0.config.fm_neg;
        let (mut lower, mut upper, mut fm) = match side {
            Polarity::Negative => (0.0, fm_neg, fm_neg),
            Polarity::Positive => (fm_neg, 1.0, self.0.config.fm_pos),
        };
        for &h in t.hedges.iter().rev() {
            let j = self.0.position[side.index()][usize::from(h.0)];
            let lo = self.child_boundary(side, lower, upper, fm, j);
            let hi = self.child_boundary(side, lower, upper, fm, j + 1);
            lower = lo;
            upper = hi;
            fm *= self.mu(h);
        }
        (lower, upper, fm)
    }

    /// The fuzzy interval `I(t)`.
    pub fn fuzzy_interval(&self, t: &Term) -> FuzzyInterval {
        let (lower, upper, _) = self.interval_parts(t);
        FuzzyInterval::new(lower, upper)
    }

    /// Children `h t` of `t` with their intervals, in ascending order.
    pub fn child_intervals(&self, t: &Term) -> Vec<(Term, FuzzyInterval)> {
        let (lower, upper, fm) = self.interval_parts(t);
        let side = t.generator;
        self.layout(side)
            .iter()
            .enumerate()
            .map(|(j, &h)| {
                let lo = self.child_boundary(side, lower, upper, fm, j);
                let hi = self.child_boundary(side, lower, upper, fm, j + 1);
                (t.with_hedge(h), FuzzyInterval::new(lo, hi))
            })
            .collect()
    }

    /// The quantitative semantic value `v(t)`.
    ///
    /// For a hedged term this is the point of `I(t)` separating the block of
    /// positive-hedge children from the block of negative-hedge children.
    pub fn representative_value(&self, v: &LinguisticValue) -> f64 {
        match v {
            LinguisticValue::Boundary(BoundaryTerm::Zero) => 0.0,
            LinguisticValue::Boundary(BoundaryTerm::One) => 1.0,
            LinguisticValue::Boundary(BoundaryTerm::W) => self.0.config.fm_neg,
            LinguisticValue::Term(t) => {
                let (lower, upper, fm) = self.interval_parts(t);
                let split = match t.generator {
                    Polarity::Negative => self.p(),
                    Polarity::Positive => self.q(),
                };
                self.child_boundary(t.generator, lower, upper, fm, split)
            }
        }
    }

    /// `u =_k v`: some length-`k` interval contains both `I(u)` and `I(v)`.
    pub fn equal_at_level(&self, u: &Term, v: &Term, k: usize) -> bool {
        debug_assert!((1..=MAX_DEPTH).contains(&k));
        let candidate = match (u.ancestor(k), v.ancestor(k)) {
            (Some(a), Some(b)) => return a == b,
            (Some(a), None) | (None, Some(a)) => a,
            // Every length-k interval is strictly narrower than both.
            (None, None) => return false,
        };
        let w = self.fuzzy_interval(&candidate);
        w.includes(&self.fuzzy_interval(u)) && w.includes(&self.fuzzy_interval(v))
    }

    /// All terms of length exactly `k` on one side, in ascending interval
    /// order.
    pub fn terms_of_length(&self, side: Polarity, k: usize) -> Vec<Term> {
        let mut terms = vec![Term::generator(side)];
        for _ in 1..k {
            terms = terms
                .iter()
                .flat_map(|t| self.layout(side).iter().map(move |&h| t.with_hedge(h)))
                .collect();
        }
        terms
    }
}

/// False for NaN sums as well.
fn sums_to_one(sum: f64) -> bool {
    (sum - 1.0).abs() <= MEASURE_TOLERANCE
}

fn is_boundary_word(name: &str) -> bool {
    matches!(name.to_lowercase().as_str(), "0" | "1" | "w")
}

/// Parse `text` in `alg`; see [`ValidatedAlgebra::parse_term`].
pub fn parse_term(text: &str, alg: &ValidatedAlgebra) -> Result<LinguisticValue, TermError> {
    alg.parse_term(text)
}
