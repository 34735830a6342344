//! Piecewise affine maps between supported groups and their pullbacks.
//!
//! A piece is a coset `L = x0 + H` of the source together with an affine
//! map on it, stored as the image `y0` of `x0` and the images of the Hermite
//! basis rows of `H`'s preimage lattice. On a subset `Y` of `L` the map
//! `x0 + c B -> y0 + c D` is applied. The pullback of `u` is `u o alpha` on
//! the union of the pieces and zero elsewhere.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::coset_ring::CanonicalCosetSet;
use crate::error::{Error, Result};
use crate::graded::{Component, GradedElement, Rational};
use crate::lattice::{Coset, Elem, GroupDescriptor, Subgroup};

/// An affine map on one coset of the source, restricted to a subset of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    domain: CanonicalCosetSet,
    coset: Coset,
    base_image: Elem,
    /// Images of the basis rows of the coset's subgroup, as differences.
    steps: Vec<Elem>,
}

impl AffinePiece {
    /// `x -> A x + b` on `coset`, restricted to `domain`. `a` has one row per
    /// target coordinate.
    pub fn linear(
        source: &GroupDescriptor,
        target: &GroupDescriptor,
        domain: CanonicalCosetSet,
        coset: Coset,
        a: &[Vec<i64>],
        b: &[i64],
    ) -> Result<Self> {
        let (source, target) = (source.discrete_part(), target.discrete_part());
        if a.len() != target.dim() || b.len() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: a.len() });
        }
        if let Some(row) = a.iter().find(|r| r.len() != source.dim()) {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: row.len() });
        }
        let apply = |x: &[i64]| -> Elem {
            let y: Vec<i64> = a.iter().zip(b).map(|(row, bi)| row.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() + bi).collect();
            target.reduce(&y)
        };
        let base_image = apply(coset.offset());
        let zero = alloc::vec![0; source.dim()];
        let steps = coset
            .subgroup()
            .basis()
            .iter()
            .map(|row| {
                let linear: Vec<i64> = apply(row).iter().zip(&apply(&zero)).map(|(p, q)| p - q).collect();
                target.reduce(&linear)
            })
            .collect();
        Self::checked(&source, &target, domain, coset, base_image, steps)
    }

    /// Fits an affine map on `coset` to tabulated values, which must include
    /// the coset offset and the offset plus each basis row of the coset's
    /// subgroup. Every entry of the table is checked against the fit.
    pub fn from_table(
        source: &GroupDescriptor,
        target: &GroupDescriptor,
        domain: CanonicalCosetSet,
        coset: Coset,
        table: &[(Elem, Elem)],
    ) -> Result<Self> {
        let (source, target) = (source.discrete_part(), target.discrete_part());
        let lookup = |x: &[i64]| -> Result<Elem> {
            let x = source.reduce(x);
            table
                .iter()
                .find(|(p, _)| source.reduce(p) == x)
                .map(|(_, y)| target.reduce(y))
                .ok_or_else(|| Error::NotAffine(alloc::format!("no value tabulated at {x:?}")))
        };
        let x0 = coset.offset().to_vec();
        let base_image = lookup(&x0)?;
        let mut steps = Vec::new();
        for row in coset.subgroup().basis() {
            let x: Vec<i64> = x0.iter().zip(row).map(|(p, q)| p + q).collect();
            let y = lookup(&x)?;
            steps.push(target.reduce(&y.iter().zip(&base_image).map(|(p, q)| p - q).collect::<Vec<_>>()));
        }
        let piece = Self::checked(&source, &target, domain, coset, base_image, steps)?;
        for (x, y) in table {
            if !piece.coset.contains(x) {
                return Err(Error::NotAffine(alloc::format!("{x:?} lies outside the coset")));
            }
            if piece.image(&target, x) != target.reduce(y) {
                return Err(Error::NotAffine(alloc::format!("the value at {x:?} breaks the affine law")));
            }
        }
        Ok(piece)
    }

    fn checked(
        source: &GroupDescriptor,
        target: &GroupDescriptor,
        domain: CanonicalCosetSet,
        coset: Coset,
        base_image: Elem,
        steps: Vec<Elem>,
    ) -> Result<Self> {
        source.ambient()?;
        target.ambient()?;
        if domain.group() != source || coset.subgroup().dim() != source.dim() {
            return Err(Error::GroupMismatch);
        }
        let c = CanonicalCosetSet::from_coset(source, &coset)?;
        if !domain.is_subset_of(&c) {
            return Err(Error::InvalidPieces("a piece's domain is not contained in its coset".into()));
        }
        let piece = AffinePiece { domain, coset, base_image, steps };
        // relations of the source must map to zero
        let x0 = piece.coset.offset().to_vec();
        for r in source.relations() {
            let shifted: Vec<i64> = x0.iter().zip(&r).map(|(p, q)| p + q).collect();
            if piece.image(target, &shifted) != piece.base_image {
                return Err(Error::NotAffine("the map is not well defined on the source group".into()));
            }
        }
        Ok(piece)
    }

    pub fn domain(&self) -> &CanonicalCosetSet {
        &self.domain
    }

    pub fn coset(&self) -> &Coset {
        &self.coset
    }

    /// Coordinates of `x - x0` in the basis of the coset's subgroup.
    fn coordinates(&self, x: &[i64]) -> Vec<i64> {
        let basis = self.coset.subgroup().basis();
        let mut d: Vec<i64> = x.iter().zip(self.coset.offset()).map(|(p, q)| p - q).collect();
        let mut c = Vec::with_capacity(basis.len());
        for row in basis {
            let j = row.iter().position(|&a| a != 0).expect("nonzero row");
            let k = d[j] / row[j];
            debug_assert_eq!(d[j], k * row[j]);
            for (di, ri) in d.iter_mut().zip(row) {
                *di -= k * ri;
            }
            c.push(k);
        }
        c
    }

    fn image(&self, target: &GroupDescriptor, x: &[i64]) -> Elem {
        let c = self.coordinates(x);
        let mut y = self.base_image.clone();
        for (ci, step) in c.iter().zip(&self.steps) {
            for (yi, si) in y.iter_mut().zip(step) {
                *yi += ci * si;
            }
        }
        target.reduce(&y)
    }

    /// The steps as a matrix with one row per target coordinate.
    fn step_matrix(&self, target_dim: usize) -> Vec<Vec<i64>> {
        (0..target_dim).map(|i| self.steps.iter().map(|s| s[i]).collect()).collect()
    }

    /// `{x in L : alpha(x) in C}` for a target coset `C`.
    fn pull_coset(&self, source: &GroupDescriptor, target_dim: usize, c: &Coset) -> Option<Coset> {
        let d = self.step_matrix(target_dim);
        let k = c.subgroup();
        let diff: Vec<i64> = c.offset().iter().zip(&self.base_image).map(|(p, q)| p - q).collect();
        let c0 = if self.steps.is_empty() {
            if k.contains(&diff) {
                Vec::new()
            } else {
                return None;
            }
        } else {
            k.solve(&d, &diff)?
        };
        let basis = self.coset.subgroup().basis();
        let lift = |coeffs: &[i64]| -> Vec<i64> {
            let mut x = alloc::vec![0i64; source.dim()];
            for (ci, row) in coeffs.iter().zip(basis) {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi += ci * ri;
                }
            }
            x
        };
        let offset: Vec<i64> = self.coset.offset().iter().zip(lift(&c0)).map(|(p, q)| p + q).collect();
        let gens: Vec<Vec<i64>> = if self.steps.is_empty() {
            Vec::new()
        } else {
            k.preimage(&d).basis().iter().map(|r| lift(r)).collect()
        };
        let h = Subgroup::generated(source, &gens).ok()?;
        Coset::new(source, &offset, h).ok()
    }

    /// `u o alpha` on the coset, as weighted source cosets.
    fn pull_component(
        &self,
        source: &GroupDescriptor,
        target: &GroupDescriptor,
        c: &Component,
        out: &mut Vec<(Coset, Rational)>,
    ) -> Result<()> {
        let n = target.dim();
        match c {
            Component::Points(d) => {
                for (y, v) in d.values() {
                    let pt = Coset::new(target, y, Subgroup::trivial(target))?;
                    if let Some(x) = self.pull_coset(source, n, &pt) {
                        out.push((x, v.clone()));
                    }
                }
            }
            Component::Lines(l) => {
                let v = l.direction();
                for (&s, pattern) in l.lines() {
                    let k = pattern.len() as i64;
                    let step = v.vector().map(|a| a * k).to_vec();
                    let h = Subgroup::generated(target, &[step])?;
                    for (t, val) in pattern.iter().enumerate() {
                        if val.is_zero() {
                            continue;
                        }
                        let y = v.point(s, t as i64);
                        if let Some(x) = self.pull_coset(source, n, &Coset::new(target, &y, h.clone())?) {
                            out.push((x, val.clone()));
                        }
                    }
                }
            }
            Component::Periodic(p) => {
                // u o alpha is periodic modulo the preimage of the period lattice
                let lattice = p.lattice();
                let basis = self.coset.subgroup().basis();
                let (lambda, residues): (Vec<Vec<i64>>, Vec<Vec<i64>>) = if self.steps.is_empty() {
                    (Vec::new(), alloc::vec![Vec::new()])
                } else {
                    let pre = lattice.preimage(&self.step_matrix(n));
                    let residues = pre.residues().expect("finite index").collect();
                    (pre.basis().to_vec(), residues)
                };
                let lift = |coeffs: &[i64]| -> Vec<i64> {
                    let mut x = alloc::vec![0i64; source.dim()];
                    for (ci, row) in coeffs.iter().zip(basis) {
                        for (xi, ri) in x.iter_mut().zip(row) {
                            *xi += ci * ri;
                        }
                    }
                    x
                };
                let gens: Vec<Vec<i64>> = lambda.iter().map(|r| lift(r)).collect();
                let h = Subgroup::generated(source, &gens)?;
                for r in residues {
                    let x: Vec<i64> = self.coset.offset().iter().zip(lift(&r)).map(|(a, b)| a + b).collect();
                    let value = p.eval(&self.image(target, &x)).clone();
                    if !value.is_zero() {
                        out.push((Coset::new(source, &x, h.clone())?, value));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map defined piecewise on disjoint subsets of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineMap {
    source: GroupDescriptor,
    target: GroupDescriptor,
    pieces: Vec<AffinePiece>,
    domain: CanonicalCosetSet,
}

/// Outcome of [`PiecewiseAffineMap::check_homomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub checked: usize,
    /// Index of the first sample pair whose product is not preserved.
    pub counterexample: Option<usize>,
}

impl HomReport {
    pub fn is_success(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl PiecewiseAffineMap {
    pub fn new(source: &GroupDescriptor, target: &GroupDescriptor, pieces: Vec<AffinePiece>) -> Result<Self> {
        let (source, target) = (source.discrete_part(), target.discrete_part());
        source.ambient()?;
        target.ambient()?;
        let mut domain = CanonicalCosetSet::empty(&source);
        for p in &pieces {
            if p.domain.group() != &source || p.base_image.len() != target.dim() {
                return Err(Error::GroupMismatch);
            }
            if !domain.intersect(&p.domain).is_empty() {
                return Err(Error::InvalidPieces("piece domains overlap".into()));
            }
            domain = domain.union(&p.domain);
        }
        Ok(PiecewiseAffineMap { source, target, pieces, domain })
    }

    /// A single affine map `x -> A x + b` on all of the source.
    pub fn affine(source: &GroupDescriptor, target: &GroupDescriptor, a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        let s = source.discrete_part();
        let whole = Coset::new(&s, &s.zero(), Subgroup::whole(&s))?;
        let piece = AffinePiece::linear(&s, target, CanonicalCosetSet::full(&s)?, whole, a, b)?;
        Self::new(&s, target, alloc::vec![piece])
    }

    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn domain(&self) -> &CanonicalCosetSet {
        &self.domain
    }

    pub fn apply(&self, h: &[i64]) -> Result<Elem> {
        let h = self.source.element(h)?;
        self.pieces
            .iter()
            .find(|p| p.domain.member(&h))
            .map(|p| p.image(&self.target, &h))
            .ok_or(Error::OutsideDomain)
    }

    /// `u o alpha` on the domain, zero elsewhere.
    pub fn pullback(&self, u: &GradedElement) -> Result<GradedElement> {
        if u.group() != &self.target {
            return Err(Error::GroupMismatch);
        }
        let mut total = GradedElement::zero(&self.source);
        for p in &self.pieces {
            let mut cosets = Vec::new();
            for c in u.components().values() {
                p.pull_component(&self.source, &self.target, c, &mut cosets)?;
            }
            let on_coset = GradedElement::from_weighted_cosets(&self.source, cosets)?;
            total = &total + &(&on_coset * p.domain.indicator());
        }
        Ok(total)
    }

    /// The preimage of a set, as a set.
    pub fn pullback_set(&self, s: &CanonicalCosetSet) -> Result<CanonicalCosetSet> {
        Ok(CanonicalCosetSet::from_indicator_unchecked(self.pullback(s.indicator())?))
    }

    /// `self o inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &PiecewiseAffineMap) -> Result<PiecewiseAffineMap> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch);
        }
        let mut pieces = Vec::new();
        for q in &inner.pieces {
            for p in &self.pieces {
                let single = PiecewiseAffineMap {
                    source: inner.source.clone(),
                    target: inner.target.clone(),
                    pieces: alloc::vec![q.clone()],
                    domain: q.domain.clone(),
                };
                let through = single.pullback_set(&p.domain)?;
                if through.is_empty() {
                    continue;
                }
                let coset = single_coset(&inner.source, q, &p.coset)?;
                let x0 = coset.offset().to_vec();
                let mut table = alloc::vec![(x0.clone(), p.image(&self.target, &q.image(&inner.target, &x0)))];
                for row in coset.subgroup().basis() {
                    let x: Vec<i64> = x0.iter().zip(row).map(|(a, b)| a + b).collect();
                    table.push((x.clone(), p.image(&self.target, &q.image(&inner.target, &x))));
                }
                pieces.push(AffinePiece::from_table(&inner.source, &self.target, through, coset, &table)?);
            }
        }
        PiecewiseAffineMap::new(&inner.source, &self.target, pieces)
    }

    /// Checks `Phi(uv) = Phi(u) Phi(v)` on sample pairs.
    pub fn check_homomorphism(&self, samples: &[(GradedElement, GradedElement)]) -> Result<HomReport> {
        for (i, (u, v)) in samples.iter().enumerate() {
            let lhs = self.pullback(&(u * v))?;
            let rhs = &self.pullback(u)? * &self.pullback(v)?;
            if lhs != rhs {
                return Ok(HomReport { checked: i + 1, counterexample: Some(i) });
            }
        }
        Ok(HomReport { checked: samples.len(), counterexample: None })
    }
}

/// `{x in L_q : q(x) in L_p}`, a coset of the source.
fn single_coset(source: &GroupDescriptor, q: &AffinePiece, lp: &Coset) -> Result<Coset> {
    q.pull_coset(source, lp.offset().len(), lp)
        .ok_or_else(|| Error::InvalidPieces("empty composite piece".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z() -> GroupDescriptor {
        GroupDescriptor::integers()
    }

    fn ap(d: i64, a: i64) -> Coset {
        let g = z();
        Coset::new(&g, &[a], Subgroup::generated(&g, &[vec![d]]).unwrap()).unwrap()
    }

    fn set(c: &Coset) -> CanonicalCosetSet {
        CanonicalCosetSet::from_coset(&z(), c).unwrap()
    }

    fn two_piece() -> PiecewiseAffineMap {
        let g = z();
        let even = AffinePiece::linear(&g, &g, set(&ap(2, 0)), ap(2, 0), &[vec![1]], &[0]).unwrap();
        let odd = AffinePiece::linear(&g, &g, set(&ap(2, 1)), ap(2, 1), &[vec![0]], &[0]).unwrap();
        PiecewiseAffineMap::new(&g, &g, vec![even, odd]).unwrap()
    }

    #[test]
    fn apply_pieces() {
        let g = z();
        let m = PiecewiseAffineMap::affine(&g, &g, &[vec![2]], &[1]).unwrap();
        assert_eq!(m.apply(&[3]).unwrap(), vec![7]);
        assert_eq!(two_piece().apply(&[5]).unwrap(), vec![0]);
        assert_eq!(two_piece().apply(&[4]).unwrap(), vec![4]);
        let id_even = AffinePiece::linear(&g, &g, set(&ap(2, 0)), ap(2, 0), &[vec![1]], &[0]).unwrap();
        let partial = PiecewiseAffineMap::new(&g, &g, vec![id_even]).unwrap();
        assert_eq!(partial.apply(&[3]), Err(Error::OutsideDomain));
    }

    #[test]
    fn pullbacks() {
        let g = z();
        let m = PiecewiseAffineMap::affine(&g, &g, &[vec![2]], &[1]).unwrap();
        let u = GradedElement::from_coset(&g, &ap(3, 0)).unwrap();
        assert_eq!(m.pullback(&u).unwrap(), GradedElement::from_coset(&g, &ap(3, 1)).unwrap());

        let id_even = AffinePiece::linear(&g, &g, set(&ap(2, 0)), ap(2, 0), &[vec![1]], &[0]).unwrap();
        let partial = PiecewiseAffineMap::new(&g, &g, vec![id_even]).unwrap();
        let one = GradedElement::one(&g).unwrap();
        assert_eq!(partial.pullback(&one).unwrap(), GradedElement::from_coset(&g, &ap(2, 0)).unwrap());

        let w = GradedElement::from_coset(&g, &ap(4, 0)).unwrap();
        let expected = set(&ap(4, 0)).union(&set(&ap(2, 1)));
        assert_eq!(&two_piece().pullback(&w).unwrap(), expected.indicator());
    }

    #[test]
    fn pullback_of_points_and_lines() {
        let g = z();
        let p = GroupDescriptor::plane();
        // x -> (x, 2x)
        let m = PiecewiseAffineMap::affine(&g, &p, &[vec![1], vec![2]], &[0, 0]).unwrap();
        let line = Coset::new(&p, &[0, 0], Subgroup::generated(&p, &[vec![3, 6]]).unwrap()).unwrap();
        let u = GradedElement::from_coset(&p, &line).unwrap();
        assert_eq!(m.pullback(&u).unwrap(), GradedElement::from_coset(&g, &ap(3, 0)).unwrap());
        let pt = GradedElement::point_mass(&p, &[2, 4], Rational::from_integer(3.into())).unwrap();
        assert_eq!(m.pullback(&pt).unwrap(), GradedElement::point_mass(&g, &[2], Rational::from_integer(3.into())).unwrap());
        // a constant map pulls a point back to everything
        let c = PiecewiseAffineMap::affine(&g, &p, &[vec![0], vec![0]], &[2, 4]).unwrap();
        assert_eq!(c.pullback(&pt).unwrap(), GradedElement::one(&g).unwrap().scale(&Rational::from_integer(3.into())));
    }

    #[test]
    fn non_affine_tables_are_rejected() {
        let g = z();
        let whole = ap(1, 0);
        let table: Vec<(Elem, Elem)> = (-3..=3).map(|x| (vec![x], vec![x * x])).collect();
        let r = AffinePiece::from_table(&g, &g, CanonicalCosetSet::full(&g).unwrap(), whole.clone(), &table);
        assert!(matches!(r, Err(Error::NotAffine(_))));
        let table: Vec<(Elem, Elem)> = (-3..=3).map(|x| (vec![x], vec![3 * x - 1])).collect();
        assert!(AffinePiece::from_table(&g, &g, CanonicalCosetSet::full(&g).unwrap(), whole, &table).is_ok());
    }

    #[test]
    fn overlapping_pieces_are_rejected() {
        let g = z();
        let a = AffinePiece::linear(&g, &g, set(&ap(2, 0)), ap(2, 0), &[vec![1]], &[0]).unwrap();
        let b = AffinePiece::linear(&g, &g, set(&ap(3, 0)), ap(3, 0), &[vec![1]], &[0]).unwrap();
        assert!(matches!(PiecewiseAffineMap::new(&g, &g, vec![a, b]), Err(Error::InvalidPieces(_))));
        assert!(AffinePiece::linear(&g, &g, set(&ap(2, 0)), ap(4, 0), &[vec![1]], &[0]).is_err());
    }

    #[test]
    fn torsion_targets_and_sources() {
        let g = z();
        let z6 = GroupDescriptor::cyclic(6).unwrap();
        let m = PiecewiseAffineMap::affine(&g, &z6, &[vec![1]], &[0]).unwrap();
        let sub = Coset::new(&z6, &[0], Subgroup::generated(&z6, &[vec![2]]).unwrap()).unwrap();
        let u = GradedElement::from_coset(&z6, &sub).unwrap();
        assert_eq!(m.pullback(&u).unwrap(), GradedElement::from_coset(&g, &ap(2, 0)).unwrap());
        // Z/6 -> Z is not well defined unless constant
        assert!(PiecewiseAffineMap::affine(&z6, &g, &[vec![1]], &[0]).is_err());
        assert!(PiecewiseAffineMap::affine(&z6, &g, &[vec![0]], &[4]).is_ok());
    }

    #[test]
    fn composition() {
        let g = z();
        let f = PiecewiseAffineMap::affine(&g, &g, &[vec![2]], &[1]).unwrap();
        let h = two_piece();
        let fh = f.compose(&h).unwrap();
        for x in -10..10 {
            assert_eq!(fh.apply(&[x]).unwrap(), f.apply(&h.apply(&[x]).unwrap()).unwrap());
        }
        let u = GradedElement::from_coset(&g, &ap(5, 2)).unwrap();
        assert_eq!(fh.pullback(&u).unwrap(), h.pullback(&f.pullback(&u).unwrap()).unwrap());
    }

    #[test]
    fn homomorphism_report() {
        let g = z();
        let u = GradedElement::from_coset(&g, &ap(3, 1)).unwrap();
        let v = &GradedElement::from_coset(&g, &ap(2, 0)).unwrap() + &GradedElement::point_mass(&g, &[1], Rational::from_integer(1.into())).unwrap();
        let r = two_piece().check_homomorphism(&[(u.clone(), v.clone()), (v, u)]).unwrap();
        assert!(r.is_success());
        assert_eq!(r.checked, 2);
    }
}
