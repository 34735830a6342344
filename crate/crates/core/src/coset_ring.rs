//! The Boolean ring generated by cosets, in canonical layered form.
//!
//! A set is stored through its indicator function, decomposed as in
//! [`crate::graded`]: a periodic layer, line layers per direction and a
//! finite point correction. Boolean operations are ring operations on
//! indicators (`A ∪ B = a + b - ab`, `A ∩ B = ab`, ...), so every result is
//! canonical as soon as it is built.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{Component, GradedElement, Rational};
use crate::lattice::{Ambient, Coset, Elem, GroupDescriptor, Subgroup};
use crate::topology::{Direction, TopologyTag};

/// A Boolean expression over cosets of one ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetExpr {
    Coset(Coset),
    /// A finite set of elements.
    Points(Vec<Elem>),
    Empty,
    Full,
    Union(Box<CosetExpr>, Box<CosetExpr>),
    Intersection(Box<CosetExpr>, Box<CosetExpr>),
    Difference(Box<CosetExpr>, Box<CosetExpr>),
    SymmetricDifference(Box<CosetExpr>, Box<CosetExpr>),
    Complement(Box<CosetExpr>),
}

impl CosetExpr {
    pub fn union(a: CosetExpr, b: CosetExpr) -> Self {
        CosetExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: CosetExpr, b: CosetExpr) -> Self {
        CosetExpr::Intersection(Box::new(a), Box::new(b))
    }

    pub fn difference(a: CosetExpr, b: CosetExpr) -> Self {
        CosetExpr::Difference(Box::new(a), Box::new(b))
    }

    pub fn symmetric_difference(a: CosetExpr, b: CosetExpr) -> Self {
        CosetExpr::SymmetricDifference(Box::new(a), Box::new(b))
    }

    pub fn complement(a: CosetExpr) -> Self {
        CosetExpr::Complement(Box::new(a))
    }

    /// Direct membership by walking the tree.
    pub fn contains(&self, group: &GroupDescriptor, x: &[i64]) -> bool {
        use CosetExpr::*;
        match self {
            Coset(c) => c.contains(x),
            Points(ps) => {
                let x = group.reduce(x);
                ps.iter().any(|p| group.reduce(p) == x)
            }
            Empty => false,
            Full => true,
            Union(a, b) => a.contains(group, x) || b.contains(group, x),
            Intersection(a, b) => a.contains(group, x) && b.contains(group, x),
            Difference(a, b) => a.contains(group, x) && !b.contains(group, x),
            SymmetricDifference(a, b) => a.contains(group, x) != b.contains(group, x),
            Complement(a) => !a.contains(group, x),
        }
    }

    pub fn depth(&self) -> usize {
        use CosetExpr::*;
        match self {
            Coset(_) | Points(_) | Empty | Full => 0,
            Complement(a) => 1 + a.depth(),
            Union(a, b) | Intersection(a, b) | Difference(a, b) | SymmetricDifference(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }
}

/// A member of the coset ring in canonical form; equality of values is
/// equality of sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalCosetSet {
    indicator: GradedElement,
}

pub fn canonicalize(group: &GroupDescriptor, expr: &CosetExpr) -> Result<CanonicalCosetSet> {
    CanonicalCosetSet::canonicalize(group, expr)
}

impl GradedElement {
    /// The indicator of `s` with its graded decomposition.
    pub fn from_idempotent(s: &CanonicalCosetSet) -> GradedElement {
        s.indicator().clone()
    }
}

impl CanonicalCosetSet {
    pub fn canonicalize(group: &GroupDescriptor, expr: &CosetExpr) -> Result<Self> {
        group.ambient()?;
        let g = group.discrete_part();
        Self::build(&g, expr)
    }

    fn build(g: &GroupDescriptor, expr: &CosetExpr) -> Result<Self> {
        use CosetExpr::*;
        Ok(match expr {
            Coset(c) => {
                if c.subgroup().dim() != g.dim() {
                    return Err(Error::DimensionMismatch { expected: g.dim(), found: c.subgroup().dim() });
                }
                CanonicalCosetSet { indicator: GradedElement::from_coset(g, c)? }
            }
            Points(ps) => {
                let mut pts: Vec<Elem> = ps.iter().map(|p| g.element(p)).collect::<Result<_>>()?;
                pts.sort();
                pts.dedup();
                let trivial = Subgroup::trivial(g);
                let cosets = pts
                    .iter()
                    .map(|p| Ok((crate::lattice::Coset::new(g, p, trivial.clone())?, Rational::one())))
                    .collect::<Result<Vec<_>>>()?;
                CanonicalCosetSet { indicator: GradedElement::from_weighted_cosets(g, cosets)? }
            }
            Empty => Self::empty(g),
            Full => Self::full(g)?,
            Union(a, b) => Self::build(g, a)?.union(&Self::build(g, b)?),
            Intersection(a, b) => Self::build(g, a)?.intersect(&Self::build(g, b)?),
            Difference(a, b) => Self::build(g, a)?.difference(&Self::build(g, b)?),
            SymmetricDifference(a, b) => Self::build(g, a)?.symmetric_difference(&Self::build(g, b)?),
            Complement(a) => Self::build(g, a)?.complement(),
        })
    }

    pub fn empty(group: &GroupDescriptor) -> Self {
        CanonicalCosetSet { indicator: GradedElement::zero(group) }
    }

    pub fn full(group: &GroupDescriptor) -> Result<Self> {
        Ok(CanonicalCosetSet { indicator: GradedElement::one(group)? })
    }

    pub fn from_coset(group: &GroupDescriptor, coset: &Coset) -> Result<Self> {
        Ok(CanonicalCosetSet { indicator: GradedElement::from_coset(group, coset)? })
    }

    /// Wraps a graded element known to be an indicator, such as the pullback
    /// of an indicator.
    pub(crate) fn from_indicator_unchecked(indicator: GradedElement) -> Self {
        CanonicalCosetSet { indicator }
    }

    pub fn group(&self) -> &GroupDescriptor {
        self.indicator.group()
    }

    /// The indicator as an element of the graded algebra.
    pub fn indicator(&self) -> &GradedElement {
        &self.indicator
    }

    pub fn into_indicator(self) -> GradedElement {
        self.indicator
    }

    pub fn member(&self, x: &[i64]) -> bool {
        self.indicator.evaluate(x).is_one()
    }

    pub fn is_empty(&self) -> bool {
        self.indicator.is_zero()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.indicator, &other.indicator);
        CanonicalCosetSet { indicator: &(a + b) - &(a * b) }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        CanonicalCosetSet { indicator: &self.indicator * &other.indicator }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let (a, b) = (&self.indicator, &other.indicator);
        CanonicalCosetSet { indicator: a - &(a * b) }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        let (a, b) = (&self.indicator, &other.indicator);
        let ab = a * b;
        CanonicalCosetSet { indicator: &(a + b) - &(&ab + &ab) }
    }

    pub fn complement(&self) -> Self {
        let one = GradedElement::one(self.group()).expect("supported group");
        CanonicalCosetSet { indicator: &one - &self.indicator }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// The periodic layer: its lattice and the residues it contains.
    pub fn periodic_layer(&self) -> Option<(&Subgroup, Vec<Elem>)> {
        match self.indicator.component(TopologyTag::Td)? {
            Component::Periodic(p) => {
                Some((p.lattice(), p.entries().filter(|(_, v)| v.is_one()).map(|(r, _)| r).collect()))
            }
            _ => None,
        }
    }

    /// Period and residues of the periodic layer over `Z` (period 1 and no
    /// residues for a finite set).
    pub fn period_and_residues(&self) -> Option<(i64, Vec<i64>)> {
        if self.group().ambient().ok()? != Ambient::Integers {
            return None;
        }
        Some(match self.periodic_layer() {
            Some((l, rs)) => (l.basis()[0][0], rs.into_iter().map(|r| r[0]).collect()),
            None => (1, Vec::new()),
        })
    }

    /// Line layers by direction: line index to along-line pattern.
    pub fn line_layers(&self) -> impl Iterator<Item = (Direction, &BTreeMap<i64, Vec<Rational>>)> + '_ {
        self.indicator.components().values().filter_map(|c| match c {
            Component::Lines(l) => Some((l.direction(), l.lines())),
            _ => None,
        })
    }

    /// Signed point corrections (the whole set for a finite group).
    pub fn point_layer(&self) -> BTreeMap<Elem, Rational> {
        match self.indicator.component(TopologyTag::Discrete) {
            Some(Component::Points(d)) => d.values().clone(),
            _ => BTreeMap::new(),
        }
    }

    /// Points added to, respectively removed from, the periodic and line layers.
    pub fn exceptions(&self) -> (Vec<Elem>, Vec<Elem>) {
        let pts = self.point_layer();
        let add = pts.iter().filter(|(_, v)| v.is_positive_int()).map(|(x, _)| x.clone()).collect();
        let remove = pts.iter().filter(|(_, v)| !v.is_positive_int()).map(|(x, _)| x.clone()).collect();
        (add, remove)
    }

    /// An expression that canonicalizes back to this set.
    ///
    /// Over `Z` this is `(periodic ∪ added) \ removed`. In general the
    /// layers are integer valued, so the set is the symmetric difference of
    /// the odd parts of its layers, each a finite union of cosets.
    pub fn to_expr(&self) -> CosetExpr {
        let g = self.group().clone();
        if g.ambient() == Ok(Ambient::Finite) {
            let pts: Vec<Elem> = self.point_layer().into_keys().collect();
            return if pts.is_empty() { CosetExpr::Empty } else { CosetExpr::Points(pts) };
        }
        let periodic = self.periodic_expr(&g, |v| v.is_one());
        if g.ambient() == Ok(Ambient::Integers) {
            let (add, remove) = self.exceptions();
            let mut e = periodic;
            if !add.is_empty() {
                e = union_or(e, CosetExpr::Points(add));
            }
            if !remove.is_empty() {
                e = CosetExpr::difference(e, CosetExpr::Points(remove));
            }
            return e;
        }
        let odd = |v: &Rational| !(v.to_integer() % 2u8).is_zero();
        let mut parts = Vec::new();
        let periodic_odd = self.periodic_expr(&g, odd);
        if periodic_odd != CosetExpr::Empty {
            parts.push(periodic_odd);
        }
        for (v, lines) in self.line_layers() {
            let mut cosets = Vec::new();
            for (&s, pattern) in lines {
                let k = pattern.len() as i64;
                let step = [k * v.vector()[0], k * v.vector()[1]];
                let h = Subgroup::generated(&g, &[step.to_vec()]).expect("dims match");
                for (t, val) in pattern.iter().enumerate() {
                    if odd(val) {
                        let x = v.point(s, t as i64);
                        cosets.push(CosetExpr::Coset(Coset::new(&g, &x, h.clone()).expect("dims match")));
                    }
                }
            }
            if let Some(e) = balanced(cosets, CosetExpr::union) {
                parts.push(e);
            }
        }
        let pts: Vec<Elem> = self.point_layer().into_iter().filter(|(_, v)| odd(v)).map(|(x, _)| x).collect();
        if !pts.is_empty() {
            parts.push(CosetExpr::Points(pts));
        }
        parts.into_iter().reduce(CosetExpr::symmetric_difference).unwrap_or(CosetExpr::Empty)
    }

    fn periodic_expr(&self, g: &GroupDescriptor, keep: impl Fn(&Rational) -> bool) -> CosetExpr {
        let Some(Component::Periodic(p)) = self.indicator.component(TopologyTag::Td) else {
            return CosetExpr::Empty;
        };
        let lattice = p.lattice().clone();
        if lattice.index() == crate::lattice::Index::Finite(1) && keep(&p.values()[0]) {
            return CosetExpr::Full;
        }
        let h = Subgroup::generated(g, lattice.basis()).expect("dims match");
        let cosets = p
            .entries()
            .filter(|(_, v)| keep(v))
            .map(|(r, _)| CosetExpr::Coset(Coset::new(g, &r, h.clone()).expect("dims match")))
            .collect();
        balanced(cosets, CosetExpr::union).unwrap_or(CosetExpr::Empty)
    }
}

/// Combines `items` as a balanced binary tree.
fn balanced(mut items: Vec<CosetExpr>, op: fn(CosetExpr, CosetExpr) -> CosetExpr) -> Option<CosetExpr> {
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => op(a, b),
                None => a,
            });
        }
        items = next;
    }
    items.pop()
}

fn union_or(a: CosetExpr, b: CosetExpr) -> CosetExpr {
    if a == CosetExpr::Empty {
        b
    } else {
        CosetExpr::union(a, b)
    }
}

trait PositiveInt {
    fn is_positive_int(&self) -> bool;
}

impl PositiveInt for Rational {
    fn is_positive_int(&self) -> bool {
        self > &Rational::zero()
    }
}
