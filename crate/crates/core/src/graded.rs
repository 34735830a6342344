//! Elements of the idempotent algebra as finite sums over topology tags.
//!
//! Over `Z` and `Z^2` an element is `p + sum_v g_v + h` where `p` is
//! periodic modulo a finite-index lattice (tag `Td`), each `g_v` lives on
//! finitely many lines of direction `v` and is periodic along each line
//! (tag `Dir(v)`), and `h` is finitely supported (tag `Discrete`). Over a
//! finite group everything is a single `Discrete` component. With every
//! component in normal form the decomposition is unique, so structural
//! equality is pointwise equality.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::int::{divisors, lcm};
use crate::lattice::{box_point, Ambient, Coset, Elem, GroupDescriptor, Index, Subgroup};
use crate::topology::{Direction, TopologyTag};

pub type Rational = num_rational::BigRational;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A function on `Z^n` that is periodic modulo a finite-index lattice.
/// `values` is indexed by the box enumeration of the lattice's residues,
/// and the lattice is the full period lattice of the function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicFn {
    lattice: Subgroup,
    values: Vec<Rational>,
}

impl PeriodicFn {
    pub fn lattice(&self) -> &Subgroup {
        &self.lattice
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, x: &[i64]) -> &Rational {
        &self.values[self.lattice.residue_index(x)]
    }

    /// Canonical residues paired with their values.
    pub fn entries(&self) -> impl Iterator<Item = (Elem, &Rational)> + '_ {
        self.lattice.residues().expect("full rank").zip(&self.values)
    }

    fn combine(&self, other: &PeriodicFn, op: impl Fn(&Rational, &Rational) -> Rational) -> Option<PeriodicFn> {
        let lattice = if self.lattice == other.lattice {
            self.lattice.clone()
        } else {
            self.lattice.intersect(&other.lattice)
        };
        let values = lattice
            .residues()
            .expect("full rank")
            .map(|r| op(self.eval(&r), other.eval(&r)))
            .collect();
        normalize_periodic(lattice, values)
    }

    /// Order of `v` in `Z^n / L`.
    fn order_of(&self, v: &[i64]) -> i64 {
        let mut m = 1i64;
        loop {
            let w: Vec<i64> = v.iter().map(|a| a * m).collect();
            if self.lattice.contains(&w) {
                return m;
            }
            m += 1;
        }
    }
}

/// Brings a periodic function to its full period lattice; `None` when zero.
pub(crate) fn normalize_periodic(lattice: Subgroup, values: Vec<Rational>) -> Option<PeriodicFn> {
    if values.iter().all(Zero::is_zero) {
        return None;
    }
    let diag = lattice.diagonal().expect("full rank");
    let n = lattice.dim();
    let mut counts: BTreeMap<&Rational, usize> = BTreeMap::new();
    for v in &values {
        *counts.entry(v).or_default() += 1;
    }
    let background = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(v, _)| (*v).clone()).unwrap();
    let support: Vec<usize> = (0..values.len()).filter(|&i| values[i] != background).collect();
    if support.is_empty() {
        let whole = Subgroup::lattice(n, &identity_rows(n));
        return Some(PeriodicFn { lattice: whole, values: vec![background] });
    }
    let point = |i: usize| box_point(&diag, i as u64);
    let x0 = point(support[0]);
    let v0 = &values[support[0]];
    let mut current = lattice.clone();
    for &j in &support {
        if &values[j] != v0 {
            continue;
        }
        let t: Vec<i64> = point(j).iter().zip(&x0).map(|(a, b)| a - b).collect();
        if current.contains(&t) {
            continue;
        }
        let periodic = support.iter().all(|&i| {
            let shifted: Vec<i64> = point(i).iter().zip(&t).map(|(a, b)| a + b).collect();
            values[lattice.residue_index(&shifted)] == values[i]
        });
        if periodic {
            let mut rows = current.basis().to_vec();
            rows.push(t);
            current = Subgroup::lattice(n, &rows);
        }
    }
    if current == lattice {
        return Some(PeriodicFn { lattice, values });
    }
    let new_values = current.residues().unwrap().map(|r| values[lattice.residue_index(&r)].clone()).collect();
    Some(PeriodicFn { lattice: current, values: new_values })
}

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Functions on finitely many lines of one direction in `Z^2`, periodic along each line.
/// Lines are keyed by [`Direction::line_of`]; patterns are indexed by
/// [`Direction::position`] modulo their (minimal) length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineFn {
    direction: Direction,
    lines: BTreeMap<i64, Vec<Rational>>,
}

impl LineFn {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn lines(&self) -> &BTreeMap<i64, Vec<Rational>> {
        &self.lines
    }

    pub fn eval(&self, x: &[i64]) -> Rational {
        match self.lines.get(&self.direction.line_of(x)) {
            Some(p) => pattern_at(p, self.direction.position(x)).clone(),
            None => Rational::zero(),
        }
    }
}

fn pattern_at(p: &[Rational], t: i64) -> &Rational {
    &p[t.rem_euclid(p.len() as i64) as usize]
}

fn minimize_pattern(p: Vec<Rational>) -> Option<Vec<Rational>> {
    if p.iter().all(Zero::is_zero) {
        return None;
    }
    let k = p.len();
    for d in divisors(k as u64) {
        let d = d as usize;
        if (d..k).all(|i| p[i] == p[i % d]) {
            let mut p = p;
            p.truncate(d);
            return Some(p);
        }
    }
    unreachable!("k divides k")
}

fn combine_patterns(a: &[Rational], b: &[Rational], op: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
    let k = lcm(a.len() as i64, b.len() as i64) as usize;
    (0..k).map(|t| op(&a[t % a.len()], &b[t % b.len()])).collect()
}

/// A finitely supported function; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteFn {
    values: BTreeMap<Elem, Rational>,
}

impl DiscreteFn {
    pub fn values(&self) -> &BTreeMap<Elem, Rational> {
        &self.values
    }

    pub fn eval(&self, x: &[i64]) -> Rational {
        self.values.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_at(&mut self, x: Elem, v: Rational) {
        if v.is_zero() {
            return;
        }
        match self.values.entry(x) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// One graded summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Periodic(PeriodicFn),
    Lines(LineFn),
    Points(DiscreteFn),
}

impl Component {
    pub fn eval(&self, x: &[i64]) -> Rational {
        match self {
            Component::Periodic(p) => p.eval(x).clone(),
            Component::Lines(l) => l.eval(x),
            Component::Points(d) => d.eval(x),
        }
    }
}

/// An element `u = sum_tag u_tag` of the idempotent algebra of a supported group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedElement {
    group: GroupDescriptor,
    components: BTreeMap<TopologyTag, Component>,
}

/// Running sum of components, normalised once at the end.
struct Accumulator {
    group: GroupDescriptor,
    periodic: Option<PeriodicFn>,
    lines: BTreeMap<Direction, BTreeMap<i64, Vec<Rational>>>,
    points: DiscreteFn,
}

impl Accumulator {
    fn new(group: &GroupDescriptor) -> Self {
        Accumulator { group: group.clone(), periodic: None, lines: BTreeMap::new(), points: DiscreteFn::default() }
    }

    fn add_periodic(&mut self, p: PeriodicFn) {
        self.periodic = match self.periodic.take() {
            None => Some(p),
            Some(q) => q.combine(&p, |a, b| a + b),
        };
    }

    fn add_line(&mut self, v: Direction, line: i64, pattern: Vec<Rational>) {
        let lines = self.lines.entry(v).or_default();
        match lines.remove(&line) {
            None => {
                lines.insert(line, pattern);
            }
            Some(old) => {
                lines.insert(line, combine_patterns(&old, &pattern, |a, b| a + b));
            }
        }
    }

    fn add_component(&mut self, c: Component) {
        match c {
            Component::Periodic(p) => self.add_periodic(p),
            Component::Lines(l) => {
                for (s, p) in l.lines {
                    self.add_line(l.direction, s, p);
                }
            }
            Component::Points(d) => {
                for (x, v) in d.values {
                    self.points.add_at(x, v);
                }
            }
        }
    }

    fn finish(self) -> GradedElement {
        let mut components = BTreeMap::new();
        if let Some(p) = self.periodic {
            components.insert(TopologyTag::Td, Component::Periodic(p));
        }
        for (v, lines) in self.lines {
            let lines: BTreeMap<i64, Vec<Rational>> =
                lines.into_iter().filter_map(|(s, p)| minimize_pattern(p).map(|p| (s, p))).collect();
            if !lines.is_empty() {
                components.insert(TopologyTag::Dir(v), Component::Lines(LineFn { direction: v, lines }));
            }
        }
        if !self.points.values.is_empty() {
            components.insert(TopologyTag::Discrete, Component::Points(self.points));
        }
        GradedElement { group: self.group, components }
    }
}

impl GradedElement {
    /// The zero element over the discrete part of `group`.
    pub fn zero(group: &GroupDescriptor) -> Self {
        GradedElement { group: group.discrete_part(), components: BTreeMap::new() }
    }

    /// The unit `1_G`.
    pub fn one(group: &GroupDescriptor) -> Result<Self> {
        let g = group.discrete_part();
        Self::from_coset(&g, &Coset::new(&g, &g.zero(), Subgroup::whole(&g))?)
    }

    /// The indicator of a coset.
    pub fn from_coset(group: &GroupDescriptor, coset: &Coset) -> Result<Self> {
        Self::from_weighted_cosets(group, [(coset.clone(), Rational::one())])
    }

    /// `sum c_i 1_{C_i}` for cosets `C_i`; cosets sharing a finite-index
    /// subgroup are accumulated together.
    pub fn from_weighted_cosets(
        group: &GroupDescriptor,
        items: impl IntoIterator<Item = (Coset, Rational)>,
    ) -> Result<Self> {
        let group = group.discrete_part();
        let ambient = group.ambient()?;
        let mut acc = Accumulator::new(&group);
        let mut periodic: BTreeMap<Subgroup, Vec<Rational>> = BTreeMap::new();
        for (coset, c) in items {
            let h = coset.subgroup();
            if h.dim() != group.dim() {
                return Err(Error::DimensionMismatch { expected: group.dim(), found: h.dim() });
            }
            if c.is_zero() {
                continue;
            }
            match ambient {
                Ambient::Finite => {
                    for x in group.elements().unwrap() {
                        if coset.contains(&x) {
                            acc.points.add_at(x, c.clone());
                        }
                    }
                }
                _ if h.is_full_rank() => {
                    let values = periodic.entry(h.clone()).or_insert_with(|| {
                        let Index::Finite(n) = h.index() else { unreachable!() };
                        vec![Rational::zero(); n as usize]
                    });
                    values[h.residue_index(coset.offset())] += c;
                }
                _ if h.rank() == 0 => acc.points.add_at(coset.offset().to_vec(), c),
                _ => {
                    // a rank-one subgroup of Z^2: k v with v primitive
                    let row = &h.basis()[0];
                    let k = crate::int::gcd(row[0], row[1]);
                    let v = Direction::of_vector(row[0], row[1]).unwrap();
                    let mut pattern = vec![Rational::zero(); k as usize];
                    pattern[v.position(coset.offset()).rem_euclid(k) as usize] = c;
                    acc.add_line(v, v.line_of(coset.offset()), pattern);
                }
            }
        }
        for (h, values) in periodic {
            if let Some(p) = normalize_periodic(h, values) {
                acc.add_periodic(p);
            }
        }
        Ok(acc.finish())
    }

    /// The element `c * delta_x`.
    pub fn point_mass(group: &GroupDescriptor, x: &[i64], c: Rational) -> Result<Self> {
        let group = group.discrete_part();
        group.ambient()?;
        let x = group.element(x)?;
        let mut acc = Accumulator::new(&group);
        acc.points.add_at(x, c);
        Ok(acc.finish())
    }

    /// Assembles an element from components, normalising them. Tags must
    /// match the component kinds and belong to the group.
    pub fn from_components(group: &GroupDescriptor, parts: Vec<(TopologyTag, Component)>) -> Result<Self> {
        let group = group.discrete_part();
        group.ambient()?;
        let mut acc = Accumulator::new(&group);
        for (tag, c) in parts {
            let ok = tag.belongs_to(&group)
                && match (&tag, &c) {
                    (TopologyTag::Td, Component::Periodic(p)) => p.lattice.dim() == group.dim(),
                    (TopologyTag::Dir(v), Component::Lines(l)) => *v == l.direction,
                    (TopologyTag::Discrete, Component::Points(_)) => true,
                    _ => false,
                };
            if !ok {
                return Err(Error::InvalidTag(alloc::format!("{tag} does not match its component")));
            }
            acc.add_component(c);
        }
        Ok(acc.finish())
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn components(&self) -> &BTreeMap<TopologyTag, Component> {
        &self.components
    }

    pub fn component(&self, tag: TopologyTag) -> Option<&Component> {
        self.components.get(&tag)
    }

    pub fn support(&self) -> impl Iterator<Item = TopologyTag> + '_ {
        self.components.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The single-bucket element `u_tag`.
    pub fn bucket(&self, tag: TopologyTag) -> GradedElement {
        let mut components = BTreeMap::new();
        if let Some(c) = self.components.get(&tag) {
            components.insert(tag, c.clone());
        }
        GradedElement { group: self.group.clone(), components }
    }

    pub fn evaluate(&self, x: &[i64]) -> Rational {
        let x = self.group.reduce(x);
        self.components.values().map(|c| c.eval(&x)).fold(Rational::zero(), |a, b| a + b)
    }

    fn check_same_group(&self, other: &GradedElement) {
        assert_eq!(self.group, other.group, "operands must live over the same group");
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        self.check_same_group(other);
        let mut acc = Accumulator::new(&self.group);
        for c in self.components.values().chain(other.components.values()) {
            acc.add_component(c.clone());
        }
        acc.finish()
    }

    pub fn scale(&self, q: &Rational) -> GradedElement {
        if q.is_zero() {
            return GradedElement::zero(&self.group);
        }
        let components = self
            .components
            .iter()
            .map(|(t, c)| {
                let c = match c {
                    Component::Periodic(p) => Component::Periodic(PeriodicFn {
                        lattice: p.lattice.clone(),
                        values: p.values.iter().map(|v| v * q).collect(),
                    }),
                    Component::Lines(l) => Component::Lines(LineFn {
                        direction: l.direction,
                        lines: l.lines.iter().map(|(s, p)| (*s, p.iter().map(|v| v * q).collect())).collect(),
                    }),
                    Component::Points(d) => Component::Points(DiscreteFn {
                        values: d.values.iter().map(|(x, v)| (x.clone(), v * q)).collect(),
                    }),
                };
                (*t, c)
            })
            .collect();
        GradedElement { group: self.group.clone(), components }
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }

    /// Pointwise product; the product of the `t1` and `t2` summands lands in the `t1 v t2` summand.
    pub fn multiply(&self, other: &GradedElement) -> GradedElement {
        self.check_same_group(other);
        let mut acc = Accumulator::new(&self.group);
        for a in self.components.values() {
            for b in other.components.values() {
                multiply_into(&mut acc, a, b);
            }
        }
        acc.finish()
    }
}

fn multiply_into(acc: &mut Accumulator, a: &Component, b: &Component) {
    use Component::*;
    match (a, b) {
        (Periodic(p), Periodic(q)) => {
            if let Some(r) = p.combine(q, |x, y| x * y) {
                acc.add_periodic(r);
            }
        }
        (Periodic(p), Lines(l)) | (Lines(l), Periodic(p)) => {
            let v = l.direction;
            let m = p.order_of(&v.vector());
            for (&s, g) in &l.lines {
                let k = lcm(g.len() as i64, m) as usize;
                let pattern = (0..k)
                    .map(|t| pattern_at(g, t as i64) * p.eval(&v.point(s, t as i64)))
                    .collect();
                acc.add_line(v, s, pattern);
            }
        }
        (Lines(l1), Lines(l2)) if l1.direction == l2.direction => {
            for (s, g1) in &l1.lines {
                if let Some(g2) = l2.lines.get(s) {
                    acc.add_line(l1.direction, *s, combine_patterns(g1, g2, |x, y| x * y));
                }
            }
        }
        (Lines(l1), Lines(l2)) => {
            for (&s1, g1) in &l1.lines {
                for (&s2, g2) in &l2.lines {
                    if let Some(x) = line_crossing(l1.direction, s1, l2.direction, s2) {
                        let v = pattern_at(g1, l1.direction.position(&x)) * pattern_at(g2, l2.direction.position(&x));
                        acc.points.add_at(x.to_vec(), v);
                    }
                }
            }
        }
        (other, Points(d)) | (Points(d), other) => {
            for (x, v) in &d.values {
                acc.points.add_at(x.clone(), other.eval(x) * v);
            }
        }
    }
}

/// The lattice point where line `s1` of direction `v` meets line `s2` of direction `w`, if any.
fn line_crossing(v: Direction, s1: i64, w: Direction, s2: i64) -> Option<[i64; 2]> {
    // -v1 x0 + v0 x1 = s1, -w1 x0 + w0 x1 = s2
    let [v0, v1] = v.vector();
    let [w0, w1] = w.vector();
    let det = (-v1 * w0 + v0 * w1) as i128;
    let n0 = s1 as i128 * w0 as i128 - v0 as i128 * s2 as i128;
    let n1 = -(v1 as i128) * s2 as i128 + w1 as i128 * s1 as i128;
    if n0 % det != 0 || n1 % det != 0 {
        return None;
    }
    Some([(n0 / det) as i64, (n1 / det) as i64])
}

impl core::ops::Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        GradedElement::add(self, rhs)
    }
}

impl core::ops::Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        GradedElement::sub(self, rhs)
    }
}

impl core::ops::Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        self.multiply(rhs)
    }
}

impl core::ops::Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        GradedElement::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GroupDescriptor {
        GroupDescriptor::integers()
    }

    fn coset_z(d: i64, a: i64) -> GradedElement {
        let g = z();
        let h = if d == 0 { Subgroup::trivial(&g) } else { Subgroup::generated(&g, &[vec![d]]).unwrap() };
        GradedElement::from_coset(&g, &Coset::new(&g, &[a], h).unwrap()).unwrap()
    }

    fn coset_plane(rows: &[Vec<i64>], a: [i64; 2]) -> GradedElement {
        let g = GroupDescriptor::plane();
        let h = Subgroup::generated(&g, rows).unwrap();
        GradedElement::from_coset(&g, &Coset::new(&g, &a, h).unwrap()).unwrap()
    }

    #[test]
    fn partition_merges_to_constant() {
        let u = &coset_z(2, 0) + &coset_z(2, 1);
        assert_eq!(u, GradedElement::one(&z()).unwrap());
        let Component::Periodic(p) = u.component(TopologyTag::Td).unwrap() else { panic!() };
        assert_eq!(p.lattice().basis(), &[vec![1]]);
        assert_eq!(p.values(), &[rat(1)]);
    }

    #[test]
    fn period_is_minimised() {
        let u = &coset_z(4, 0) + &coset_z(4, 2);
        assert_eq!(u, coset_z(2, 0));
    }

    #[test]
    fn products_of_periodic_parts() {
        let u = &coset_z(2, 0) * &coset_z(3, 0);
        assert_eq!(u, coset_z(6, 0));
        let one = GradedElement::one(&z()).unwrap();
        assert_eq!(&u * &one, u);
    }

    #[test]
    fn additive_inverse_is_empty() {
        let u = &coset_z(3, 1) + &coset_z(0, 5);
        let zero = &u + &u.neg();
        assert!(zero.is_zero());
        assert_eq!(&u + &GradedElement::zero(&z()), u);
    }

    #[test]
    fn evaluation() {
        assert_eq!(coset_z(3, 0).evaluate(&[6]), rat(1));
        let u = &coset_z(2, 0) - &coset_z(4, 0);
        assert_eq!(u.evaluate(&[2]), rat(1));
        assert_eq!(u.evaluate(&[4]), rat(0));
    }

    #[test]
    fn line_times_lattice_lands_in_line_bucket() {
        let axis = coset_plane(&[vec![1, 0]], [0, 0]);
        let strip = coset_plane(&[vec![2, 0], vec![0, 1]], [0, 0]);
        let prod = &axis * &strip;
        let expected = coset_plane(&[vec![2, 0]], [0, 0]);
        assert_eq!(prod, expected);
        let x = Direction::new(1, 0).unwrap();
        assert_eq!(prod.support().collect::<Vec<_>>(), [TopologyTag::Dir(x)]);
        for a in -12..=12 {
            for b in -12..=12 {
                let want = (b == 0 && a % 2 == 0) as i64;
                assert_eq!(prod.evaluate(&[a, b]), rat(want));
            }
        }
    }

    #[test]
    fn crossing_lines_meet_in_points() {
        let h = coset_plane(&[vec![1, 0]], [0, 3]);
        let v = coset_plane(&[vec![0, 1]], [2, 0]);
        let prod = &h * &v;
        assert_eq!(prod, GradedElement::point_mass(&GroupDescriptor::plane(), &[2, 3], rat(1)).unwrap());
        let d = coset_plane(&[vec![1, 1]], [0, 1]);
        let e = coset_plane(&[vec![1, -1]], [0, 0]);
        // x - y = -1 and x + y = 0 have no integer solution
        assert!((&d * &e).is_zero());
    }

    #[test]
    fn unions_in_the_plane_are_idempotent() {
        let axis = coset_plane(&[vec![1, 0]], [0, 0]);
        let lat = coset_plane(&[vec![2, 0], vec![0, 2]], [0, 0]);
        let union = &(&axis + &lat) - &(&axis * &lat);
        assert_eq!(&union * &union, union);
        for a in -12..=12i64 {
            for b in -12..=12i64 {
                let want = b == 0 || (a % 2 == 0 && b % 2 == 0);
                assert_eq!(union.evaluate(&[a, b]), rat(want as i64), "at {a},{b}");
            }
        }
        // lattice bucket is the periodic layer, line correction keeps odd points of the axis
        let Component::Lines(l) = union.component(TopologyTag::Dir(Direction::new(1, 0).unwrap())).unwrap() else {
            panic!()
        };
        assert_eq!(l.lines().len(), 1);
        assert_eq!(l.lines()[&0].len(), 2);
    }

    #[test]
    fn finite_groups_use_one_bucket() {
        let g = GroupDescriptor::cyclic(6).unwrap();
        let h = Subgroup::generated(&g, &[vec![2]]).unwrap();
        let u = GradedElement::from_coset(&g, &Coset::new(&g, &[1], h).unwrap()).unwrap();
        assert_eq!(u.support().collect::<Vec<_>>(), [TopologyTag::Discrete]);
        assert_eq!(u.evaluate(&[3]), rat(1));
        assert_eq!(u.evaluate(&[7]), rat(1));
        assert_eq!(u.evaluate(&[2]), rat(0));
    }

    #[test]
    fn connected_marker_is_dropped() {
        let g = GroupDescriptor::integers().with_connected(2);
        assert_eq!(GradedElement::one(&g).unwrap(), GradedElement::one(&z()).unwrap());
    }
}
