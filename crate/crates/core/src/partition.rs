//! Level-k similarity partitions and neighborhood matching.
//!
//! At level `k` every term `x` of length `k` owns the class `S(x)`: its
//! interval `I(x)` with the two extreme children trimmed off. The extreme
//! children at the ends of `[0, 1]` become `S(0)` and `S(1)`, the two that
//! meet at `fm(c⁻)` merge into `S(W)`, and every other trimmed child is a
//! gap that matches nothing.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{
    BoundaryTerm, FuzzyInterval, LinguisticValue, Polarity, Term, ValidatedAlgebra,
};

/// Highest supported partition level.
pub const MAX_LEVEL: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("level {0} is out of range, expected 1..={max}", max = MAX_LEVEL)]
    LevelOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("value has no neighborhood at this level (it falls in a gap)")]
    UnmatchableValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityClass {
    pub label: LinguisticValue,
    pub interval: FuzzyInterval,
    pub ordinal: usize,
}

/// A crisp (unit-scaled) or linguistic attribute value.
#[derive(Debug, Clone, PartialEq)]
pub enum AttrValue {
    Crisp(f64),
    Linguistic(LinguisticValue),
}

/// A value together with its neighborhood in one partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Located {
    Crisp { value: f64, class: Option<usize> },
    Linguistic { class: Option<usize> },
}

impl Located {
    /// Ordinal of the neighborhood, `None` for a gap.
    pub fn class(&self) -> Option<usize> {
        match *self {
            Located::Crisp { class, .. } | Located::Linguistic { class } => class,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    upper: f64,
    class: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct LevelPartition {
    algebra: ValidatedAlgebra,
    level: usize,
    classes: Vec<SimilarityClass>,
    gaps: Vec<FuzzyInterval>,
    /// Classes and gaps in ascending order, tiling `[0, 1]`.
    segments: Vec<Segment>,
    by_term: HashMap<Term, usize>,
}

enum Piece {
    Class(Term),
    Zero,
    WLow,
    WHigh,
    One,
    Gap,
}

/// Build the level-`k` partition of `[0, 1]` for `alg`.
pub fn build_partition(alg: &ValidatedAlgebra, k: usize) -> Result<LevelPartition, PartitionError> {
    if !(1..=MAX_LEVEL).contains(&k) {
        return Err(PartitionError::LevelOutOfRange(k));
    }

    let mut pieces: Vec<(FuzzyInterval, Piece)> = Vec::new();
    for side in [Polarity::Negative, Polarity::Positive] {
        let terms = alg.terms_of_length(side, k);
        let last_term = terms.len() - 1;
        for (i, x) in terms.iter().enumerate() {
            let kids = alg.child_intervals(x);
            let first = kids[0].1;
            let last = kids[kids.len() - 1].1;
            let first_kind = match (side, i) {
                (Polarity::Negative, 0) => Piece::Zero,
                (Polarity::Positive, 0) => Piece::WHigh,
                _ => Piece::Gap,
            };
            let last_kind = match side {
                Polarity::Negative if i == last_term => Piece::WLow,
                Polarity::Positive if i == last_term => Piece::One,
                _ => Piece::Gap,
            };
            pieces.push((first, first_kind));
            pieces.push((
                FuzzyInterval::new(first.upper, last.lower),
                Piece::Class(x.clone()),
            ));
            pieces.push((last, last_kind));
        }
    }

    let mut classes = Vec::new();
    let mut gaps = Vec::new();
    let mut segments = Vec::new();
    let mut by_term = HashMap::new();
    let mut w_low: Option<FuzzyInterval> = None;

    let mut push_class =
        |segments: &mut Vec<Segment>, label: LinguisticValue, interval: FuzzyInterval| {
            let ordinal = classes.len();
            if let LinguisticValue::Term(t) = &label {
                by_term.insert(t.clone(), ordinal);
            }
            classes.push(SimilarityClass {
                label,
                interval,
                ordinal,
            });
            segments.push(Segment {
                upper: interval.upper,
                class: Some(ordinal),
            });
        };

    for (interval, kind) in pieces {
        let segs = &mut segments;
        match kind {
            Piece::Zero => push_class(segs, BoundaryTerm::Zero.into(), interval),
            Piece::One => push_class(segs, BoundaryTerm::One.into(), interval),
            Piece::Class(t) => push_class(segs, t.into(), interval),
            Piece::WLow => w_low = Some(interval),
            Piece::WHigh => {
                let low = w_low.take().expect("negative side precedes positive side");
                push_class(
                    segs,
                    BoundaryTerm::W.into(),
                    FuzzyInterval::new(low.lower, interval.upper),
                );
            }
            Piece::Gap => {
                gaps.push(interval);
                segs.push(Segment {
                    upper: interval.upper,
                    class: None,
                });
            }
        }
    }

    Ok(LevelPartition {
        algebra: alg.clone(),
        level: k,
        classes,
        gaps,
        segments,
        by_term,
    })
}

/// Number of classes in a level-`k` partition: `2·(p+q)^(k−1) + 3`.
pub fn expected_class_count(p: usize, q: usize, k: usize) -> usize {
    2 * (p + q).pow(k as u32 - 1) + 3
}

impl LevelPartition {
    pub fn algebra(&self) -> &ValidatedAlgebra {
        &self.algebra
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn classes(&self) -> &[SimilarityClass] {
        &self.classes
    }

    pub fn gaps(&self) -> &[FuzzyInterval] {
        &self.gaps
    }

    pub fn class(&self, ordinal: usize) -> &SimilarityClass {
        &self.classes[ordinal]
    }

    /// The class labelled `label`, if the partition has one.
    pub fn class_of(&self, label: &LinguisticValue) -> Option<&SimilarityClass> {
        match label {
            LinguisticValue::Term(t) => self.by_term.get(t).map(|&i| &self.classes[i]),
            LinguisticValue::Boundary(b) => self
                .classes
                .iter()
                .find(|c| c.label == LinguisticValue::Boundary(*b)),
        }
    }

    /// Every class and gap, ascending, as `(interval, class ordinal)`.
    pub fn segments(&self) -> impl Iterator<Item = (FuzzyInterval, Option<usize>)> + '_ {
        let mut lower = 0.0;
        self.segments.iter().map(move |s| {
            let interval = FuzzyInterval::new(lower, s.upper);
            lower = s.upper;
            (interval, s.class)
        })
    }

    fn locate_ordinal(&self, u: f64) -> Option<usize> {
        if !(0.0..=1.0).contains(&u) {
            return None;
        }
        let i = self.segments.partition_point(|s| s.upper < u);
        self.segments.get(i).and_then(|s| s.class)
    }

    /// The class containing the unit value `u`, or `None` inside a gap.
    pub fn locate_crisp(&self, u: f64) -> Option<&SimilarityClass> {
        self.locate_ordinal(u).map(|i| &self.classes[i])
    }

    fn term_ordinal(&self, v: &LinguisticValue) -> Option<usize> {
        if let LinguisticValue::Term(t) = v {
            if t.len() == self.level {
                return self.by_term.get(t).copied();
            }
        }
        self.locate_ordinal(self.algebra.representative_value(v))
    }

    /// `FRN_k(t)`: `S(t)` directly when `|t| = k`, otherwise the class that
    /// contains `v(t)`.
    pub fn neighborhood_of_term(&self, v: &LinguisticValue) -> Option<&SimilarityClass> {
        self.term_ordinal(v).map(|i| &self.classes[i])
    }

    pub fn locate(&self, v: &AttrValue) -> Located {
        match v {
            AttrValue::Crisp(u) => Located::Crisp {
                value: *u,
                class: self.locate_ordinal(*u),
            },
            AttrValue::Linguistic(t) => Located::Linguistic {
                class: self.term_ordinal(t),
            },
        }
    }

    /// `a =_k b` on already located values.
    pub fn equal_located(&self, a: Located, b: Located) -> bool {
        match (a, b) {
            (
                Located::Crisp {
                    value: x,
                    class: cx,
                },
                Located::Crisp {
                    value: y,
                    class: cy,
                },
            ) => x == y || (cx.is_some() && cx == cy),
            _ => a.class().is_some() && a.class() == b.class(),
        }
    }

    /// `a ≥_k b` on already located values.
    pub fn ge_located(&self, a: Located, b: Located) -> Result<bool, MatchError> {
        let need = |c: Option<usize>| c.ok_or(MatchError::UnmatchableValue);
        match (a, b) {
            (Located::Crisp { value: x, .. }, Located::Crisp { value: y, .. }) => Ok(x >= y),
            (Located::Crisp { value: x, .. }, Located::Linguistic { class }) => {
                Ok(x > self.classes[need(class)?].interval.lower)
            }
            (Located::Linguistic { class: ca }, Located::Linguistic { class: cb }) => {
                let cb = need(cb)?;
                Ok(need(ca)? >= cb)
            }
            (
                Located::Linguistic { class: ca },
                Located::Crisp {
                    value: y,
                    class: cy,
                },
            ) => {
                let ca = need(ca)?;
                Ok(match cy {
                    Some(cy) => ca >= cy,
                    None => self.classes[ca].interval.upper >= y,
                })
            }
        }
    }

    /// `a =_k b`.
    pub fn match_equal_level(&self, a: &AttrValue, b: &AttrValue) -> bool {
        self.equal_located(self.locate(a), self.locate(b))
    }

    /// `a ≥_k b`.
    pub fn match_ge_level(&self, a: &AttrValue, b: &AttrValue) -> Result<bool, MatchError> {
        self.ge_located(self.locate(a), self.locate(b))
    }
}
