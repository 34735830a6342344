//! The semilattice of non-quotient pre-totally disconnected topologies on
//! the supported groups, and its hereditary directed subsets.
//!
//! For a finite group there is a single tag, `Discrete`. For `Z` the tags
//! are `Td < Discrete`. For `Z^2` there is additionally one tag `Dir(v)`
//! per rational direction, all pairwise incomparable, with
//! `Dir(v) v Dir(w) = Discrete` for `v != w`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::int::{ext_gcd, gcd};
use crate::lattice::{Ambient, GroupDescriptor};

/// A primitive vector `(a, b)` with `a > 0`, or `a = 0` and `b = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    a: i64,
    b: i64,
}

impl Direction {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if gcd(a, b) != 1 || a < 0 || (a == 0 && b != 1) {
            return Err(Error::InvalidDirection(a, b));
        }
        Ok(Direction { a, b })
    }

    /// The direction of a nonzero vector, sign normalised.
    pub fn of_vector(x: i64, y: i64) -> Option<Self> {
        let g = gcd(x, y);
        if g == 0 {
            return None;
        }
        let (mut a, mut b) = (x / g, y / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
        }
        Some(Direction { a, b })
    }

    pub fn vector(&self) -> [i64; 2] {
        [self.a, self.b]
    }

    /// Completion `w` of `v` to a basis with `det[v; w] = 1`.
    pub fn complement(&self) -> [i64; 2] {
        let (_, p, q) = ext_gcd(self.a, self.b);
        [-q, p]
    }

    /// Which line of direction `v` contains `x`: `det[v; x]`.
    pub fn line_of(&self, x: &[i64]) -> i64 {
        self.a * x[1] - self.b * x[0]
    }

    /// Position of `x` along its line: the `v`-coordinate in the basis `(v, w)`.
    pub fn position(&self, x: &[i64]) -> i64 {
        let w = self.complement();
        x[0] * w[1] - x[1] * w[0]
    }

    /// The point at `position` on `line`.
    pub fn point(&self, line: i64, position: i64) -> [i64; 2] {
        let w = self.complement();
        [position * self.a + line * w[0], position * self.b + line * w[1]]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// An element of the tag semilattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopologyTag {
    /// The totally disconnected compactification topology.
    Td,
    /// The join of the line topology along `v` with `Td` (free rank 2 only).
    Dir(Direction),
    /// The discrete topology.
    Discrete,
}

impl TopologyTag {
    pub fn join(self, other: TopologyTag) -> TopologyTag {
        use TopologyTag::*;
        match (self, other) {
            (Td, t) | (t, Td) => t,
            (Discrete, _) | (_, Discrete) => Discrete,
            (Dir(v), Dir(w)) if v == w => Dir(v),
            (Dir(_), Dir(_)) => Discrete,
        }
    }

    /// Greatest lower bound; the tag sets here happen to be lattices.
    pub fn meet(self, other: TopologyTag) -> TopologyTag {
        use TopologyTag::*;
        match (self, other) {
            (Discrete, t) | (t, Discrete) => t,
            (Td, _) | (_, Td) => Td,
            (Dir(v), Dir(w)) if v == w => Dir(v),
            (Dir(_), Dir(_)) => Td,
        }
    }

    pub fn leq(self, other: TopologyTag) -> bool {
        self.join(other) == other
    }

    /// Whether the tag belongs to the tag set of `group` (connected markers ignored).
    pub fn belongs_to(self, group: &GroupDescriptor) -> bool {
        match (group.ambient(), self) {
            (Ok(Ambient::Finite), t) => t == TopologyTag::Discrete,
            (Ok(Ambient::Integers), t) => !matches!(t, TopologyTag::Dir(_)),
            (Ok(Ambient::Plane), _) => true,
            (Err(_), _) => false,
        }
    }
}

impl fmt::Display for TopologyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyTag::Td => f.write_str("TD"),
            TopologyTag::Dir(v) => write!(f, "dir:{v}"),
            TopologyTag::Discrete => f.write_str("D"),
        }
    }
}

/// Breadth-first Stern–Brocot enumeration of all directions: `(0,1)`,
/// `(1,0)`, then each positive slope `p/q` in tree order followed by `-p/q`.
#[derive(Clone, Debug)]
pub struct Directions {
    emitted_axes: u8,
    queue: alloc::collections::VecDeque<(i64, i64, i64, i64)>,
    pending_negative: Option<Direction>,
}

impl Directions {
    pub fn new() -> Self {
        let mut queue = alloc::collections::VecDeque::new();
        // mediant interval (0/1, 1/0) yields 1/1 first
        queue.push_back((0, 1, 1, 0));
        Directions { emitted_axes: 0, queue, pending_negative: None }
    }
}

impl Default for Directions {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Directions {
    type Item = Direction;

    fn next(&mut self) -> Option<Direction> {
        match self.emitted_axes {
            0 => {
                self.emitted_axes = 1;
                return Some(Direction { a: 0, b: 1 });
            }
            1 => {
                self.emitted_axes = 2;
                return Some(Direction { a: 1, b: 0 });
            }
            _ => {}
        }
        if let Some(d) = self.pending_negative.take() {
            return Some(d);
        }
        let (p0, q0, p1, q1) = self.queue.pop_front()?;
        let (p, q) = (p0 + p1, q0 + q1);
        self.queue.push_back((p0, q0, p, q));
        self.queue.push_back((p, q, p1, q1));
        // slope p/q is the vector (q, p)
        self.pending_negative = Some(Direction { a: q, b: -p });
        Some(Direction { a: q, b: p })
    }
}

/// The tags of `group`: a finite list, or the infinite family for `Z^2`.
#[derive(Clone, Debug)]
pub enum TagSet {
    Finite(Vec<TopologyTag>),
    /// `Td`, `Discrete` and every `Dir(v)`; iterate with [`TagSet::iter`].
    Plane,
}

impl TagSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, TagSet::Finite(_))
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            TagSet::Finite(t) => Some(t.len()),
            TagSet::Plane => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TagSet::Finite(t) if t.is_empty())
    }

    pub fn contains(&self, tag: TopologyTag) -> bool {
        match self {
            TagSet::Finite(t) => t.contains(&tag),
            TagSet::Plane => true,
        }
    }

    /// `Td`, `Discrete`, then directions in Stern–Brocot order.
    pub fn iter(&self) -> alloc::boxed::Box<dyn Iterator<Item = TopologyTag> + '_> {
        match self {
            TagSet::Finite(t) => alloc::boxed::Box::new(t.iter().copied()),
            TagSet::Plane => alloc::boxed::Box::new(
                [TopologyTag::Td, TopologyTag::Discrete]
                    .into_iter()
                    .chain(Directions::new().map(TopologyTag::Dir)),
            ),
        }
    }
}

pub fn tnqtd_tags(group: &GroupDescriptor) -> Result<TagSet> {
    Ok(match group.ambient()? {
        Ambient::Finite => TagSet::Finite(vec![TopologyTag::Discrete]),
        Ambient::Integers => TagSet::Finite(vec![TopologyTag::Td, TopologyTag::Discrete]),
        Ambient::Plane => TagSet::Plane,
    })
}

/// A hereditary directed set of tags. For the supported groups every such
/// set is principal, `{t : t <= top}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HdSet {
    top: TopologyTag,
}

impl HdSet {
    pub fn principal(top: TopologyTag) -> Self {
        HdSet { top }
    }

    /// The smallest hereditary directed set containing `tags`.
    pub fn generated_by(tags: &[TopologyTag], group: &GroupDescriptor) -> Result<Self> {
        let bottom = bottom_tag(group)?;
        let top = tags.iter().fold(bottom, |acc, &t| acc.join(t));
        Ok(HdSet { top })
    }

    /// Checks that an explicitly listed finite set of tags is hereditary and
    /// directed, and returns it.
    pub fn from_tags(tags: &[TopologyTag], group: &GroupDescriptor) -> Result<Self> {
        if let Some(t) = tags.iter().find(|t| !t.belongs_to(group)) {
            return Err(Error::InvalidTag(format!("{t} is not a tag of {group}")));
        }
        let bottom = bottom_tag(group)?;
        if tags.is_empty() {
            return Err(Error::NotPrincipal("the empty set has no characters; every set must contain the bottom tag".into()));
        }
        for &s in tags {
            for &t in tags {
                let j = s.join(t);
                if !tags.contains(&j) {
                    return Err(Error::NotPrincipal(format!(
                        "not directed: the join {j} of {s} and {t} is missing"
                    )));
                }
            }
        }
        let top = tags.iter().fold(bottom, |acc, &t| acc.join(t));
        let expected = HdSet { top }.finite_members(group);
        match expected {
            Some(members) if members.len() == dedup_len(tags) => Ok(HdSet { top }),
            Some(members) => {
                let missing = members.into_iter().find(|m| !tags.contains(m)).unwrap();
                Err(Error::NotPrincipal(format!("not hereditary: {missing} lies below {top}")))
            }
            None => Err(Error::NotPrincipal(format!(
                "directedness forces {top}, whose down-set is infinite"
            ))),
        }
    }

    pub fn top(&self) -> TopologyTag {
        self.top
    }

    pub fn contains(&self, tag: TopologyTag) -> bool {
        tag.leq(self.top)
    }

    pub fn intersect(&self, other: &HdSet) -> HdSet {
        HdSet { top: self.top.meet(other.top) }
    }

    /// Members, when finite.
    pub fn finite_members(&self, group: &GroupDescriptor) -> Option<Vec<TopologyTag>> {
        match tnqtd_tags(group).ok()? {
            TagSet::Finite(tags) => Some(tags.into_iter().filter(|&t| self.contains(t)).collect()),
            TagSet::Plane => match self.top {
                TopologyTag::Td => Some(vec![TopologyTag::Td]),
                TopologyTag::Dir(v) => Some(vec![TopologyTag::Td, TopologyTag::Dir(v)]),
                TopologyTag::Discrete => None,
            },
        }
    }
}

impl fmt::Display for HdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{}]", self.top)
    }
}

fn dedup_len(tags: &[TopologyTag]) -> usize {
    let mut v = tags.to_vec();
    v.sort();
    v.dedup();
    v.len()
}

fn bottom_tag(group: &GroupDescriptor) -> Result<TopologyTag> {
    Ok(match group.ambient()? {
        Ambient::Finite => TopologyTag::Discrete,
        _ => TopologyTag::Td,
    })
}

/// All hereditary directed sets: finite for finite groups and `Z`, an
/// infinite stream for `Z^2`.
pub fn hd_sets(group: &GroupDescriptor) -> Result<alloc::boxed::Box<dyn Iterator<Item = HdSet>>> {
    let tags = tnqtd_tags(group)?;
    let list: alloc::boxed::Box<dyn Iterator<Item = HdSet>> = match tags {
        TagSet::Finite(t) => alloc::boxed::Box::new(t.into_iter().map(HdSet::principal)),
        TagSet::Plane => alloc::boxed::Box::new(
            [TopologyTag::Td, TopologyTag::Discrete]
                .into_iter()
                .chain(Directions::new().map(TopologyTag::Dir))
                .map(HdSet::principal),
        ),
    };
    Ok(list)
}

/// Operator amenability of the idempotent algebra: the quotient by the
/// identity component is abelian here, so this is finiteness of the tag set.
pub fn is_operator_amenable(group: &GroupDescriptor) -> Result<bool> {
    Ok(tnqtd_tags(group)?.is_finite())
}

/// Amenability; abelian groups trivially have an abelian subgroup of finite
/// index, so the criterion coincides with the operator one.
pub fn is_amenable_algebra(group: &GroupDescriptor) -> Result<bool> {
    is_operator_amenable(group)
}
