//! Points of the idempotent compactification and the characters they define.
//!
//! A point lives over a hereditary directed set `S = {t : t <= top}` and is
//! given by its coordinate at `top`; coordinates at smaller tags are images
//! of that one. At `Discrete` the coordinate is a group element. At `Dir(v)`
//! it is a line index together with a profinite position along the line.
//! At `Td` it is a profinite vector. Profinite values are exact integers or
//! residues modulo the point's precision `M`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{Component, GradedElement, Rational};
use crate::int::{crt, gcd, lcm};
use crate::lattice::{Elem, GroupDescriptor};
use crate::topology::{Direction, HdSet, TopologyTag};

/// Default precision modulus `2^3 3^2 5 7`.
pub const DEFAULT_PRECISION: u64 = 2520;

/// Three-valued answer for questions only decidable up to precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certainty {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectrumPoint {
    group: GroupDescriptor,
    hd: HdSet,
    /// The element, `[line, position]`, or the profinite vector.
    coords: Vec<i64>,
    /// `None` for exact coordinates.
    precision: Option<u64>,
}

/// The image of `x` in the unitary part.
pub fn embed(group: &GroupDescriptor, x: &[i64]) -> Result<SpectrumPoint> {
    let g = group.discrete_part();
    let coords = g.element(x)?;
    Ok(SpectrumPoint { group: g, hd: HdSet::principal(TopologyTag::Discrete), coords, precision: None })
}

/// The identity `e_S` of the group `G_S`.
pub fn idempotent_of(group: &GroupDescriptor, hd: HdSet) -> Result<SpectrumPoint> {
    let g = group.discrete_part();
    check_tag(&g, hd.top())?;
    let len = match hd.top() {
        TopologyTag::Dir(_) => 2,
        _ => g.dim(),
    };
    Ok(SpectrumPoint { group: g, hd, coords: alloc::vec![0; len], precision: None })
}

/// A point over `{Td}` given by compatible congruences `x = r_i mod m_i`
/// (coordinatewise). Its precision is the lcm of the moduli.
pub fn profinite(group: &GroupDescriptor, congruences: &[(Vec<i64>, u64)]) -> Result<SpectrumPoint> {
    let g = group.discrete_part();
    check_tag(&g, TopologyTag::Td)?;
    let n = g.dim();
    let mut residue = alloc::vec![0i64; n];
    let mut modulus = 1i64;
    for (r, m) in congruences {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        if *m == 0 {
            return Err(Error::InconsistentResidues("modulus must be positive".into()));
        }
        let mut next = residue.clone();
        let mut next_mod = modulus;
        for i in 0..n {
            let (x, l) = crt(residue[i], modulus, r[i], *m as i64).ok_or_else(|| {
                Error::InconsistentResidues(alloc::format!(
                    "{} mod {} contradicts {} mod {}",
                    r[i],
                    m,
                    residue[i],
                    modulus
                ))
            })?;
            next[i] = x;
            next_mod = l;
        }
        residue = next;
        modulus = next_mod;
    }
    Ok(SpectrumPoint {
        group: g,
        hd: HdSet::principal(TopologyTag::Td),
        coords: residue,
        precision: Some(modulus as u64),
    })
}

/// A point over `{Td, Dir(v)}`: a line of direction `v` and a position on it,
/// exact or modulo `precision`.
pub fn line_point(
    group: &GroupDescriptor,
    direction: Direction,
    line: i64,
    position: i64,
    precision: Option<u64>,
) -> Result<SpectrumPoint> {
    let g = group.discrete_part();
    let tag = TopologyTag::Dir(direction);
    check_tag(&g, tag)?;
    let mut p = SpectrumPoint { group: g, hd: HdSet::principal(tag), coords: alloc::vec![line, position], precision };
    p.normalize();
    Ok(p)
}

fn check_tag(group: &GroupDescriptor, tag: TopologyTag) -> Result<()> {
    group.ambient()?;
    if tag.belongs_to(group) {
        Ok(())
    } else {
        Err(Error::InvalidTag(alloc::format!("{tag} is not a tag of {group}")))
    }
}

impl SpectrumPoint {
    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn hd(&self) -> HdSet {
        self.hd
    }

    pub fn coordinates(&self) -> &[i64] {
        &self.coords
    }

    pub fn precision(&self) -> Option<u64> {
        self.precision
    }

    fn normalize(&mut self) {
        match (self.hd.top(), self.precision) {
            (TopologyTag::Discrete, _) => self.coords = self.group.reduce(&self.coords),
            (TopologyTag::Dir(_), Some(m)) => self.coords[1] = self.coords[1].rem_euclid(m as i64),
            (TopologyTag::Td, Some(m)) => {
                for c in &mut self.coords {
                    *c = c.rem_euclid(m as i64);
                }
            }
            _ => {}
        }
    }

    /// The same point known only modulo `m`.
    pub fn truncate(&self, m: u64) -> SpectrumPoint {
        if self.hd.top() == TopologyTag::Discrete || m == 0 {
            return self.clone();
        }
        let precision = Some(match self.precision {
            Some(p) => gcd(p as i64, m as i64) as u64,
            None => m,
        });
        let mut p = SpectrumPoint { precision, ..self.clone() };
        p.normalize();
        p
    }

    /// The image in `G_T` for a smaller hereditary directed set `T`.
    pub fn restrict(&self, hd: HdSet) -> Result<SpectrumPoint> {
        let (from, to) = (self.hd.top(), hd.top());
        if !to.leq(from) {
            return Err(Error::InvalidTag(alloc::format!("{to} does not lie below {from}")));
        }
        let coords = match (from, to) {
            (a, b) if a == b => self.coords.clone(),
            (TopologyTag::Discrete, TopologyTag::Dir(v)) => {
                alloc::vec![v.line_of(&self.coords), v.position(&self.coords)]
            }
            (TopologyTag::Discrete, TopologyTag::Td) => self.coords.clone(),
            (TopologyTag::Dir(v), TopologyTag::Td) => v.point(self.coords[0], self.coords[1]).to_vec(),
            _ => unreachable!("tags below Dir(v) are Dir(v) and Td"),
        };
        let mut p = SpectrumPoint { group: self.group.clone(), hd, coords, precision: self.precision };
        p.normalize();
        Ok(p)
    }

    /// The product: both points restricted to `S1 ∩ S2`, then added.
    pub fn mult(&self, other: &SpectrumPoint) -> Result<SpectrumPoint> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let hd = self.hd.intersect(&other.hd);
        let a = self.restrict(hd)?;
        let b = other.restrict(hd)?;
        let precision = match (a.precision, b.precision) {
            (Some(p), Some(q)) => Some(gcd(p as i64, q as i64) as u64),
            (p, None) | (None, p) => p,
        };
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        let mut p = SpectrumPoint { group: a.group, hd, coords, precision };
        p.normalize();
        Ok(p)
    }

    /// The inverse within `G_S`.
    pub fn star(&self) -> SpectrumPoint {
        let mut p = SpectrumPoint { coords: self.coords.iter().map(|x| -x).collect(), ..self.clone() };
        p.normalize();
        p
    }

    pub fn is_idempotent(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// Whether the point lies in the unitary part, the copy of the group
    /// over the full tag set. Membership is read off the tag set, so the
    /// answer is always certain.
    pub fn is_unitary(&self) -> Certainty {
        if self.hd.top() == TopologyTag::Discrete {
            Certainty::Yes
        } else {
            Certainty::No
        }
    }

    /// Whether the top coordinate is the image of a group element, with a
    /// representative when one is known. Truncated profinite coordinates
    /// agree with infinitely many integers and cannot be decided.
    pub fn integer_coordinate(&self) -> (Certainty, Option<Elem>) {
        match (self.hd.top(), self.precision) {
            (TopologyTag::Discrete, _) => (Certainty::Yes, Some(self.coords.clone())),
            (TopologyTag::Dir(v), None) => (Certainty::Yes, Some(v.point(self.coords[0], self.coords[1]).to_vec())),
            (TopologyTag::Td, None) => (Certainty::Yes, Some(self.coords.clone())),
            (TopologyTag::Dir(v), Some(_)) => (Certainty::Unknown, Some(v.point(self.coords[0], self.coords[1]).to_vec())),
            (TopologyTag::Td, Some(_)) => (Certainty::Unknown, Some(self.coords.clone())),
        }
    }

    /// The character `u -> sum_{t in S} uhat_t(s_t)`.
    pub fn chi(&self, u: &GradedElement) -> Result<Rational> {
        if u.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut total = Rational::zero();
        for (&tag, c) in u.components() {
            if !self.hd.contains(tag) {
                continue;
            }
            let p = self.restrict(HdSet::principal(tag))?;
            total += match c {
                Component::Points(_) => c.eval(&p.coords),
                Component::Lines(l) => {
                    let k = l.lines().values().fold(1i64, |a, pat| lcm(a, pat.len() as i64)) as u64;
                    p.require(k)?;
                    let x = l.direction().point(p.coords[0], p.coords[1]);
                    c.eval(&x)
                }
                Component::Periodic(f) => {
                    let exponent = f.lattice().quotient_map().expect("full rank").moduli().iter().fold(1, |a, &m| lcm(a, m));
                    p.require(exponent as u64)?;
                    f.eval(&p.coords).clone()
                }
            };
        }
        Ok(total)
    }

    fn require(&self, needed: u64) -> Result<()> {
        match self.precision {
            Some(m) if m % needed != 0 => Err(Error::InsufficientPrecision { needed, available: m }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SpectrumPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let modulus = |f: &mut fmt::Formatter<'_>| match self.precision {
            Some(m) => write!(f, " mod {m}"),
            None => Ok(()),
        };
        let tuple = |xs: &[i64]| {
            if xs.len() == 1 {
                alloc::format!("{}", xs[0])
            } else {
                let parts: Vec<_> = xs.iter().map(|x| alloc::format!("{x}")).collect();
                alloc::format!("({})", parts.join(","))
            }
        };
        match self.hd.top() {
            TopologyTag::Discrete => write!(f, "emb({})", tuple(&self.coords)),
            TopologyTag::Td => {
                write!(f, "prof({}", tuple(&self.coords))?;
                modulus(f)?;
                f.write_str(")")
            }
            TopologyTag::Dir(v) => {
                write!(f, "line({v}; {}; {}", self.coords[0], self.coords[1])?;
                modulus(f)?;
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Coset, Subgroup};
    use alloc::vec;

    fn z() -> GroupDescriptor {
        GroupDescriptor::integers()
    }

    fn coset_z(d: i64, a: i64) -> GradedElement {
        let g = z();
        let h = if d == 0 { Subgroup::trivial(&g) } else { Subgroup::generated(&g, &[vec![d]]).unwrap() };
        GradedElement::from_coset(&g, &Coset::new(&g, &[a], h).unwrap()).unwrap()
    }

    fn e_td() -> SpectrumPoint {
        idempotent_of(&z(), HdSet::principal(TopologyTag::Td)).unwrap()
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let g = z();
        let s = embed(&g, &[2]).unwrap().mult(&embed(&g, &[3]).unwrap()).unwrap();
        assert_eq!(s, embed(&g, &[5]).unwrap());
        assert!(embed(&g, &[0]).unwrap().is_idempotent());
        let r = embed(&g, &[5]).unwrap().restrict(HdSet::principal(TopologyTag::Td)).unwrap().truncate(3);
        assert_eq!(r.coordinates(), &[2]);
    }

    #[test]
    fn projection_onto_td() {
        let s = embed(&z(), &[1]).unwrap().mult(&e_td()).unwrap().truncate(DEFAULT_PRECISION);
        assert_eq!(s.hd().top(), TopologyTag::Td);
        assert_eq!(s.coordinates(), &[1]);
        assert_eq!(s.precision(), Some(2520));
        assert_eq!(s.is_unitary(), Certainty::No);
        assert_eq!(s.integer_coordinate().0, Certainty::Unknown);
    }

    #[test]
    fn inverses_and_idempotents() {
        let s = profinite(&z(), &[(vec![7], 9), (vec![1], 8)]).unwrap();
        assert_eq!(s.coordinates(), &[25]);
        assert_eq!(s.precision(), Some(72));
        assert!(s.star().mult(&s).unwrap().is_idempotent());
        let e_d = idempotent_of(&z(), HdSet::principal(TopologyTag::Discrete)).unwrap();
        assert_eq!(e_td().mult(&e_d).unwrap(), e_td());
        assert!(profinite(&z(), &[(vec![1], 4), (vec![2], 6)]).is_err());
    }

    #[test]
    fn characters() {
        let u = coset_z(3, 0);
        assert_eq!(e_td().truncate(DEFAULT_PRECISION).chi(&u).unwrap(), Rational::from_integer(1.into()));
        let s = profinite(&z(), &[(vec![1], 2520)]).unwrap();
        assert!(s.chi(&coset_z(0, 5)).unwrap().is_zero());
        let w = &coset_z(2, 0) + &coset_z(0, 5);
        assert_eq!(embed(&z(), &[5]).unwrap().chi(&w).unwrap(), w.evaluate(&[5]));
        let coarse = profinite(&z(), &[(vec![1], 4)]).unwrap();
        assert!(matches!(coarse.chi(&coset_z(3, 0)), Err(Error::InsufficientPrecision { needed: 3, available: 4 })));
    }

    #[test]
    fn plane_points() {
        let p = GroupDescriptor::plane();
        let v = Direction::new(1, 0).unwrap();
        let axis = GradedElement::from_coset(
            &p,
            &Coset::new(&p, &[0, 0], Subgroup::generated(&p, &[vec![2, 0]]).unwrap()).unwrap(),
        )
        .unwrap();
        let on = line_point(&p, v, 0, 4, Some(2520)).unwrap();
        let off = line_point(&p, v, 0, 3, Some(2520)).unwrap();
        assert_eq!(on.chi(&axis).unwrap(), Rational::from_integer(1.into()));
        assert!(off.chi(&axis).unwrap().is_zero());
        let other = line_point(&p, Direction::new(0, 1).unwrap(), 2, 0, None).unwrap();
        let m = on.mult(&other).unwrap();
        assert_eq!(m.hd().top(), TopologyTag::Td);
        // line 2 of direction (0,1) is x = -2
        assert_eq!(m.coordinates(), &[2, 0]);
    }
}
