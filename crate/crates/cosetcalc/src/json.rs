//! JSON documents emitted by `--json`. Rationals are strings such as
//! `"-3/4"`; elements are integer arrays; field order is fixed.

use serde::Serialize;

use cosetcalc_core::graded::{Component, PeriodicFn};
use cosetcalc_core::norm::Interval;
use cosetcalc_core::{Elem, GradedElement, Rational};
use num_traits::Zero;

#[derive(Clone, Debug, Serialize)]
pub struct IntervalJson {
    pub lo: f64,
    pub hi: f64,
}

impl From<&Interval> for IntervalJson {
    fn from(i: &Interval) -> Self {
        IntervalJson { lo: i.lo, hi: i.hi }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedJson {
    pub group: String,
    pub components: Vec<ComponentJson>,
    pub norm: IntervalJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub tag: String,
    pub data: DataJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DataJson {
    /// Values on the residues of `lattice`; residues not listed carry `background`.
    Periodic { lattice: Vec<Vec<i64>>, background: String, entries: Vec<EntryJson> },
    Lines { direction: [i64; 2], lines: Vec<LineJson> },
    Points { points: Vec<EntryJson> },
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryJson {
    pub at: Elem,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineJson {
    pub line: i64,
    pub pattern: Vec<String>,
}

/// The most frequent value, preferring zero on ties, and the residues that differ from it.
pub fn split_background(f: &PeriodicFn) -> (Rational, Vec<(Elem, Rational)>) {
    let mut counts: Vec<(&Rational, usize)> = Vec::new();
    for v in f.values() {
        match counts.iter_mut().find(|(w, _)| *w == v) {
            Some((_, n)) => *n += 1,
            None => counts.push((v, 1)),
        }
    }
    let mut best = counts[0];
    for &(v, n) in &counts[1..] {
        if n > best.1 || (n == best.1 && v.is_zero()) {
            best = (v, n);
        }
    }
    let background = best.0.clone();
    let entries = f.entries().filter(|(_, v)| **v != background).map(|(x, v)| (x, v.clone())).collect();
    (background, entries)
}

pub fn component(c: &Component) -> DataJson {
    match c {
        Component::Periodic(f) => {
            let (background, entries) = split_background(f);
            DataJson::Periodic {
                lattice: f.lattice().basis().to_vec(),
                background: background.to_string(),
                entries: entries.into_iter().map(|(at, v)| EntryJson { at, value: v.to_string() }).collect(),
            }
        }
        Component::Lines(l) => DataJson::Lines {
            direction: l.direction().vector(),
            lines: l
                .lines()
                .iter()
                .map(|(&line, p)| LineJson { line, pattern: p.iter().map(|q| q.to_string()).collect() })
                .collect(),
        },
        Component::Points(d) => DataJson::Points {
            points: d.values().iter().map(|(x, v)| EntryJson { at: x.clone(), value: v.to_string() }).collect(),
        },
    }
}

pub fn graded(u: &GradedElement, norm: &Interval) -> GradedJson {
    GradedJson {
        group: u.group().discrete_part().to_string(),
        components: u
            .components()
            .iter()
            .map(|(tag, c)| ComponentJson { tag: tag.to_string(), data: component(c) })
            .collect(),
        norm: norm.into(),
    }
}

#[derive(Serialize)]
pub struct CanonJson {
    pub group: String,
    pub expression: String,
    pub empty: bool,
}

#[derive(Serialize)]
pub struct BucketNormJson {
    pub tag: String,
    pub norm: IntervalJson,
}

#[derive(Serialize)]
pub struct NormJson {
    pub group: String,
    pub norm: IntervalJson,
    pub buckets: Vec<BucketNormJson>,
}

#[derive(Serialize)]
pub struct EvalJson {
    pub group: String,
    pub at: Elem,
    pub value: String,
    pub member: bool,
}

#[derive(Serialize)]
pub struct JoinJson {
    pub group: String,
    pub tags: Vec<String>,
    pub join: String,
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub group: String,
    pub finite: bool,
    pub tags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
}

#[derive(Serialize)]
pub struct SpectrumJson {
    pub group: String,
    pub point: String,
    pub precision: Option<u64>,
    pub value: String,
}

#[derive(Serialize)]
pub struct ApplyJson {
    pub source: String,
    pub target: String,
    pub at: Elem,
    pub image: Elem,
}

#[derive(Serialize)]
pub struct PullbackJson {
    pub source: String,
    pub target: String,
    pub expression: String,
    pub decomposition: GradedJson,
}

#[derive(Serialize)]
pub struct AmenableJson {
    pub group: String,
    pub operator_amenable: bool,
    pub amenable: bool,
}
