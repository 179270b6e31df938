//! Naive reference implementations used by the acceptance suite.
//!
//! Everything here is recomputed from the raw hedge measures by plain
//! summation and linear scans, without calling into the library's interval,
//! partition or matching code.

#![allow(dead_code)]

use hedgeql_core::Polarity;

/// Raw measures. Hedge ids follow the library numbering: positive hedges
/// `0..p` weakest first, then negative hedges `p..p+q` weakest first.
#[derive(Debug, Clone)]
pub struct Measures {
    pub fm_neg: f64,
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
}

/// An oracle term: generator side plus outermost-first hedge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OTerm {
    pub side: Polarity,
    pub hedges: Vec<u8>,
}

impl OTerm {
    pub fn len(&self) -> usize {
        self.hedges.len() + 1
    }

    fn child(&self, h: u8) -> OTerm {
        let mut hedges = vec![h];
        hedges.extend(&self.hedges);
        OTerm {
            side: self.side,
            hedges,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OLabel {
    Zero,
    W,
    One,
    Term(OTerm),
}

impl Measures {
    pub fn p(&self) -> usize {
        self.positive.len()
    }

    pub fn q(&self) -> usize {
        self.negative.len()
    }

    pub fn mu(&self, h: u8) -> f64 {
        let h = h as usize;
        if h < self.p() {
            self.positive[h]
        } else {
            self.negative[h - self.p()]
        }
    }

    /// Left-to-right child order inside a term of the given side.
    pub fn order(&self, side: Polarity) -> Vec<u8> {
        let p = self.p() as u8;
        let q = self.q() as u8;
        let mut neg_side: Vec<u8> = (0..p).rev().collect();
        neg_side.extend(p..p + q);
        match side {
            Polarity::Negative => neg_side,
            Polarity::Positive => neg_side.into_iter().rev().collect(),
        }
    }

    pub fn fm(&self, t: &OTerm) -> f64 {
        let g = match t.side {
            Polarity::Negative => self.fm_neg,
            Polarity::Positive => 1.0 - self.fm_neg,
        };
        t.hedges.iter().fold(g, |acc, &h| acc * self.mu(h))
    }

    /// `(lower, upper)` by walking from the generator inwards.
    pub fn interval(&self, t: &OTerm) -> (f64, f64) {
        let mut cur = OTerm {
            side: t.side,
            hedges: Vec::new(),
        };
        let (mut lo, mut hi) = match t.side {
            Polarity::Negative => (0.0, self.fm_neg),
            Polarity::Positive => (self.fm_neg, 1.0),
        };
        for &h in t.hedges.iter().rev() {
            let parent_fm = self.fm(&cur);
            let mut offset = 0.0;
            for g in self.order(t.side) {
                if g == h {
                    break;
                }
                offset += parent_fm * self.mu(g);
            }
            cur = cur.child(h);
            lo += offset;
            hi = lo + self.fm(&cur);
        }
        (lo, hi)
    }

    pub fn children(&self, t: &OTerm) -> Vec<OTerm> {
        self.order(t.side).into_iter().map(|h| t.child(h)).collect()
    }

    /// Boundary between the positive-hedge and negative-hedge children.
    pub fn v(&self, t: &OTerm) -> f64 {
        let inner = match t.side {
            Polarity::Negative => 0u8,
            Polarity::Positive => self.p() as u8,
        };
        self.interval(&t.child(inner)).1
    }

    pub fn v_label(&self, l: &OLabel) -> f64 {
        match l {
            OLabel::Zero => 0.0,
            OLabel::W => self.fm_neg,
            OLabel::One => 1.0,
            OLabel::Term(t) => self.v(t),
        }
    }

    /// Every term of length `k` on one side, in no particular order.
    pub fn terms(&self, side: Polarity, k: usize) -> Vec<OTerm> {
        let n = (self.p() + self.q()) as u8;
        let mut out = vec![OTerm {
            side,
            hedges: Vec::new(),
        }];
        for _ in 1..k {
            out = out
                .iter()
                .flat_map(|t| (0..n).map(move |h| t.child(h)))
                .collect();
        }
        out
    }

    fn sorted_terms(&self, side: Polarity, k: usize) -> Vec<OTerm> {
        let mut ts: Vec<(f64, OTerm)> = self
            .terms(side, k)
            .into_iter()
            .map(|t| (self.interval(&t).0, t))
            .collect();
        ts.sort_by(|a, b| a.0.total_cmp(&b.0));
        ts.into_iter().map(|(_, t)| t).collect()
    }

    pub fn partition(&self, k: usize) -> OPartition {
        let mut leaves: Vec<(f64, f64, Option<OLabel>)> = Vec::new();
        for side in [Polarity::Negative, Polarity::Positive] {
            let terms = self.sorted_terms(side, k);
            let last = terms.len() - 1;
            for (i, x) in terms.iter().enumerate() {
                let mut kids: Vec<(f64, f64)> =
                    self.children(x).iter().map(|c| self.interval(c)).collect();
                kids.sort_by(|a, b| a.0.total_cmp(&b.0));
                let n = kids.len();
                for (j, &(lo, hi)) in kids.iter().enumerate() {
                    let label = if j == 0 {
                        match (side, i) {
                            (Polarity::Negative, 0) => Some(OLabel::Zero),
                            (Polarity::Positive, 0) => Some(OLabel::W),
                            _ => None,
                        }
                    } else if j == n - 1 {
                        match side {
                            Polarity::Negative if i == last => Some(OLabel::W),
                            Polarity::Positive if i == last => Some(OLabel::One),
                            _ => None,
                        }
                    } else {
                        Some(OLabel::Term(x.clone()))
                    };
                    leaves.push((lo, hi, label));
                }
            }
        }
        leaves.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut labels: Vec<OLabel> = Vec::new();
        let mut owned = Vec::with_capacity(leaves.len());
        for (lo, hi, label) in leaves {
            let class = label.map(|l| match labels.iter().position(|x| *x == l) {
                Some(i) => i,
                None => {
                    labels.push(l);
                    labels.len() - 1
                }
            });
            owned.push((lo, hi, class));
        }
        OPartition {
            leaves: owned,
            labels,
        }
    }
}

/// Level-k partition as a flat list of depth-(k+1) leaves, each mapped to
/// its owning class (ascending ordinal) or to a gap.
#[derive(Debug, Clone)]
pub struct OPartition {
    pub leaves: Vec<(f64, f64, Option<usize>)>,
    pub labels: Vec<OLabel>,
}

impl OPartition {
    pub fn locate(&self, u: f64) -> Option<usize> {
        for &(lo, hi, class) in &self.leaves {
            if (lo < u || (lo == 0.0 && u == 0.0)) && u <= hi {
                return class;
            }
        }
        None
    }

    pub fn class_bounds(&self, c: usize) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(a, b, owner) in &self.leaves {
            if owner == Some(c) {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        (lo, hi)
    }

    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.leaves
            .iter()
            .filter(|l| l.2.is_none())
            .map(|l| (l.0, l.1))
            .collect()
    }

    /// Distance from `u` to the nearest leaf boundary.
    pub fn boundary_distance(&self, u: f64) -> f64 {
        self.leaves
            .iter()
            .flat_map(|l| [l.0, l.1])
            .map(|b| (b - u).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// A value as seen by the naive matcher.
#[derive(Debug, Clone)]
pub enum OValue {
    Crisp(f64),
    Label(OLabel),
}

#[derive(Debug, Clone, Copy)]
pub enum OLocated {
    Crisp(f64, Option<usize>),
    Ling(Option<usize>),
}

impl OLocated {
    fn class(self) -> Option<usize> {
        match self {
            OLocated::Crisp(_, c) | OLocated::Ling(c) => c,
        }
    }
}

pub fn locate(m: &Measures, part: &OPartition, k: usize, v: &OValue) -> OLocated {
    match v {
        OValue::Crisp(u) => OLocated::Crisp(*u, part.locate(*u)),
        OValue::Label(OLabel::Term(t)) if t.len() == k => OLocated::Ling(
            part.labels
                .iter()
                .position(|l| *l == OLabel::Term(t.clone())),
        ),
        // The constants own the classes named after them.
        OValue::Label(l @ (OLabel::Zero | OLabel::W | OLabel::One)) => {
            OLocated::Ling(part.labels.iter().position(|x| x == l))
        }
        OValue::Label(l) => OLocated::Ling(part.locate(m.v_label(l))),
    }
}

pub fn equal(a: OLocated, b: OLocated) -> bool {
    match (a, b) {
        (OLocated::Crisp(x, cx), OLocated::Crisp(y, cy)) => x == y || (cx.is_some() && cx == cy),
        _ => a.class().is_some() && a.class() == b.class(),
    }
}

pub fn greater_equal(part: &OPartition, a: OLocated, b: OLocated) -> bool {
    match (a, b) {
        (OLocated::Crisp(x, _), OLocated::Crisp(y, _)) => x >= y,
        (OLocated::Crisp(x, _), OLocated::Ling(Some(c))) => x > part.class_bounds(c).0,
        (OLocated::Ling(Some(a)), OLocated::Ling(Some(b))) => a >= b,
        (OLocated::Ling(Some(a)), OLocated::Crisp(y, cy)) => match cy {
            Some(c) => a >= c,
            None => part.class_bounds(a).1 >= y,
        },
        _ => false,
    }
}
