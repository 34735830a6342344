//! Finitely generated abelian groups `Z^r x Z/d_1 x ... x Z/d_k`, their
//! subgroups and cosets.
//!
//! A group with `r` free and `k` torsion coordinates is handled as the
//! quotient of `Z^(r+k)` by its relation lattice. A subgroup is stored as
//! the Hermite normal form of its preimage in `Z^(r+k)`, which always
//! contains the relations. Two subgroups are equal exactly when their
//! bases are identical.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::int::div_floor;

/// A group element: free coordinates first, then residues modulo each torsion coefficient.
pub type Elem = Vec<i64>;

/// `R^c x Z^r x Z/d_1 x ... x Z/d_k`. The `R^c` factor is a connected
/// marker only; all lattice arithmetic happens on the discrete part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupDescriptor {
    free_rank: usize,
    torsion: Vec<u64>,
    connected_dim: usize,
}

/// The discrete groups the coset-ring and graded-algebra layers support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Finite,
    Integers,
    Plane,
}

impl GroupDescriptor {
    pub fn new(free_rank: usize, torsion: Vec<u64>, connected_dim: usize) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidTorsion(d));
        }
        Ok(GroupDescriptor { free_rank, torsion, connected_dim })
    }

    pub fn integers() -> Self {
        GroupDescriptor { free_rank: 1, torsion: Vec::new(), connected_dim: 0 }
    }

    pub fn plane() -> Self {
        GroupDescriptor { free_rank: 2, torsion: Vec::new(), connected_dim: 0 }
    }

    pub fn cyclic(d: u64) -> Result<Self> {
        Self::new(0, vec![d], 0)
    }

    pub fn with_connected(mut self, connected_dim: usize) -> Self {
        self.connected_dim = connected_dim;
        self
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn connected_dim(&self) -> usize {
        self.connected_dim
    }

    /// `G / G_e`: the same group with the connected marker dropped.
    pub fn discrete_part(&self) -> Self {
        GroupDescriptor { connected_dim: 0, ..self.clone() }
    }

    /// Number of coordinates of an element.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the discrete part, if finite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn ambient(&self) -> Result<Ambient> {
        match (self.free_rank, self.torsion.is_empty()) {
            (0, _) => Ok(Ambient::Finite),
            (1, true) => Ok(Ambient::Integers),
            (2, true) => Ok(Ambient::Plane),
            _ => Err(Error::UnsupportedGroup(self.to_string_lossy())),
        }
    }

    /// Rows generating the relation lattice in `Z^dim`.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = vec![0; n];
                row[self.free_rank + i] = d as i64;
                row
            })
            .collect()
    }

    /// Checks the length of `x` and reduces the torsion coordinates.
    pub fn element(&self, x: &[i64]) -> Result<Elem> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(self.reduce(x))
    }

    pub(crate) fn reduce(&self, x: &[i64]) -> Elem {
        let mut out = x.to_vec();
        for (i, &d) in self.torsion.iter().enumerate() {
            let j = self.free_rank + i;
            out[j] = out[j].rem_euclid(d as i64);
        }
        out
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Elem {
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&sum)
    }

    pub fn neg(&self, x: &[i64]) -> Elem {
        let n: Vec<i64> = x.iter().map(|a| -a).collect();
        self.reduce(&n)
    }

    /// All elements of a finite group in mixed-radix order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Elem> + '_> {
        let order = self.order()?;
        Some((0..order).map(move |mut k| {
            let mut x = vec![0i64; self.dim()];
            for (i, &d) in self.torsion.iter().enumerate().rev() {
                x[i] = (k % d) as i64;
                k /= d;
            }
            x
        }))
    }

    fn to_string_lossy(&self) -> String {
        use alloc::string::ToString;
        self.to_string()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.connected_dim {
            0 => {}
            1 => parts.push("R".into()),
            c => parts.push(alloc::format!("R^{c}")),
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(alloc::format!("Z/{d}"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Index of a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(u64),
    Infinite,
}

/// Invariants of `G/H`: a free rank and torsion coefficients in Smith order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// A subgroup, stored as the Hermite normal form of its preimage lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    dim: usize,
    basis: Vec<Vec<i64>>,
}

impl Subgroup {
    /// The subgroup generated by `gens` inside `group`.
    pub fn generated(group: &GroupDescriptor, gens: &[Vec<i64>]) -> Result<Self> {
        let n = group.dim();
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
        let mut rows = gens.to_vec();
        rows.extend(group.relations());
        Ok(Self::lattice(n, &rows))
    }

    pub fn whole(group: &GroupDescriptor) -> Self {
        Self::lattice(group.dim(), &identity(group.dim()))
    }

    pub fn trivial(group: &GroupDescriptor) -> Self {
        Self::lattice(group.dim(), &group.relations())
    }

    /// The lattice spanned by `rows` in `Z^dim`.
    pub fn lattice(dim: usize, rows: &[Vec<i64>]) -> Self {
        Subgroup { dim, basis: hnf(rows, dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hermite normal form rows.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// Pivot entries of a full-rank basis; the canonical residues are the box `prod [0, d_i)`.
    pub fn diagonal(&self) -> Option<Vec<i64>> {
        self.is_full_rank().then(|| (0..self.dim).map(|i| self.basis[i][i]).collect())
    }

    pub fn index(&self) -> Index {
        match self.diagonal() {
            Some(d) => Index::Finite(d.iter().map(|&x| x as u64).product()),
            None => Index::Infinite,
        }
    }

    /// Canonical representative of `x` modulo this subgroup.
    pub fn reduce(&self, x: &[i64]) -> Elem {
        let mut out: Vec<i128> = x.iter().map(|&a| a as i128).collect();
        for row in &self.basis {
            let p = pivot(row).expect("hnf rows are nonzero");
            let q = div_floor(out[p], row[p] as i128);
            if q != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o -= q * r as i128;
                }
            }
        }
        out.into_iter().map(narrow).collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.reduce(x).iter().all(|&a| a == 0)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        debug_assert_eq!(self.dim, other.dim);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let (_, kernel) = left_kernel(&rows, self.dim);
        let k1 = self.basis.len();
        let gens: Vec<Vec<i64>> = kernel.iter().map(|c| combine(&c[..k1], &self.basis, self.dim)).collect();
        Subgroup::lattice(self.dim, &gens)
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subgroup::lattice(self.dim, &rows)
    }

    /// The largest subgroup containing this one with finite index over it.
    pub fn saturation(&self) -> Subgroup {
        let s = snf(&self.basis, self.dim);
        let rank = s.diag.iter().take_while(|&&d| d != 0).count();
        Subgroup::lattice(self.dim, &s.v_inv[..rank])
    }

    pub fn quotient_invariants(&self) -> QuotientInvariants {
        let s = snf(&self.basis, self.dim);
        let rank = s.diag.iter().take_while(|&&d| d != 0).count();
        QuotientInvariants {
            free_rank: self.dim - rank,
            torsion: s.diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect(),
        }
    }

    /// An explicit isomorphism `Z^dim / L -> Z/d_1 x ... x Z/d_k` for a full-rank lattice.
    pub fn quotient_map(&self) -> Option<QuotientMap> {
        if !self.is_full_rank() {
            return None;
        }
        let s = snf(&self.basis, self.dim);
        Some(QuotientMap { v: s.v, moduli: s.diag })
    }

    /// `{x : A x in self}` for an integer matrix `a` with `self.dim()` rows.
    pub fn preimage(&self, a: &[Vec<i64>]) -> Subgroup {
        let m = a.first().map_or(0, |r| r.len());
        let rows = map_rows(a, m, &self.basis);
        let (_, kernel) = left_kernel(&rows, self.dim);
        let gens: Vec<Vec<i64>> = kernel.iter().map(|c| c[..m].to_vec()).collect();
        Subgroup::lattice(m, &gens)
    }

    /// Some `x` with `A x - y` in this lattice, if one exists.
    pub fn solve(&self, a: &[Vec<i64>], y: &[i64]) -> Option<Elem> {
        let m = a.first().map_or(0, |r| r.len());
        let rows = map_rows(a, m, &self.basis);
        solve_left(&rows, self.dim, y).map(|c| c[..m].to_vec())
    }

    /// Elements of a finite quotient `Z^dim / L` as canonical residues (full rank only).
    pub fn residues(&self) -> Option<impl Iterator<Item = Elem> + '_> {
        let diag = self.diagonal()?;
        let total: u64 = diag.iter().map(|&d| d as u64).product();
        Some((0..total).map(move |k| box_point(&diag, k)))
    }

    /// Position of a canonical residue in the box enumeration of `residues`.
    pub fn residue_index(&self, x: &[i64]) -> usize {
        let r = self.reduce(x);
        let mut idx = 0usize;
        for (i, &a) in r.iter().enumerate() {
            idx = idx * self.basis[i][i] as usize + a as usize;
        }
        idx
    }
}

/// Mixed-radix point `k` of the box `prod [0, diag_i)`.
pub(crate) fn box_point(diag: &[i64], mut k: u64) -> Elem {
    let mut x = vec![0i64; diag.len()];
    for i in (0..diag.len()).rev() {
        let d = diag[i] as u64;
        x[i] = (k % d) as i64;
        k /= d;
    }
    x
}

/// `x -> (x V)_i mod d_i`; coordinates with `d_i = 1` are identically zero.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    v: Vec<Vec<i64>>,
    moduli: Vec<i64>,
}

impl QuotientMap {
    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.moduli.len())
            .map(|j| {
                let s: i128 = x.iter().zip(&self.v).map(|(&a, row)| a as i128 * row[j] as i128).sum();
                narrow(s.rem_euclid(self.moduli[j] as i128))
            })
            .collect()
    }
}

/// A coset `offset + H` with `offset` reduced modulo `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    offset: Elem,
    subgroup: Subgroup,
}

impl Coset {
    pub fn new(group: &GroupDescriptor, offset: &[i64], subgroup: Subgroup) -> Result<Self> {
        let x = group.element(offset)?;
        if subgroup.dim() != group.dim() {
            return Err(Error::DimensionMismatch { expected: group.dim(), found: subgroup.dim() });
        }
        Ok(Coset { offset: subgroup.reduce(&x), subgroup })
    }

    pub fn offset(&self) -> &[i64] {
        &self.offset
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let d: Vec<i64> = x.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        self.subgroup.contains(&d)
    }

    /// The intersection, a coset of `H1 ∩ H2`, or `None` when empty.
    pub fn intersect(&self, other: &Coset) -> Option<Coset> {
        let dim = self.subgroup.dim;
        let mut rows = self.subgroup.basis.clone();
        rows.extend(other.subgroup.basis.iter().cloned());
        let target: Vec<i64> = other.offset.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        let c = solve_left(&rows, dim, &target)?;
        let k1 = self.subgroup.basis.len();
        let step = combine(&c[..k1], &self.subgroup.basis, dim);
        let x: Vec<i64> = self.offset.iter().zip(&step).map(|(a, b)| a + b).collect();
        let h = self.subgroup.intersect(&other.subgroup);
        Some(Coset { offset: h.reduce(&x), subgroup: h })
    }
}

// ---------------------------------------------------------------------------
// Integer matrix kernels

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice arithmetic")
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

fn pivot(row: &[i64]) -> Option<usize> {
    row.iter().position(|&a| a != 0)
}

fn combine(coeffs: &[i64], rows: &[Vec<i64>], dim: usize) -> Vec<i64> {
    let mut out = vec![0i128; dim];
    for (&c, row) in coeffs.iter().zip(rows) {
        for (o, &r) in out.iter_mut().zip(row) {
            *o += c as i128 * r as i128;
        }
    }
    out.into_iter().map(narrow).collect()
}

/// Rows `A e_1, ..., A e_m` followed by `basis`.
fn map_rows(a: &[Vec<i64>], m: usize, basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect();
    rows.extend(basis.iter().cloned());
    rows
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let (h, _) = hnf_transform(rows, ncols);
    h
}

/// Echelon reduction on `[rows | I]`. Returns the HNF and the transform
/// rows; transform rows past the HNF length span the left kernel.
fn hnf_transform(rows: &[Vec<i64>], ncols: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let m = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<i128> = r.iter().map(|&x| x as i128).collect();
            row.resize(ncols, 0);
            row.extend((0..m).map(|j| (i == j) as i128));
            row
        })
        .collect();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m).filter(|&i| a[i][col] != 0).min_by_key(|&i| a[i][col].abs());
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in r + 1..m {
                if a[i][col] != 0 {
                    let q = div_floor(a[i][col], a[r][col]);
                    sub_row(&mut a, i, r, q);
                    if a[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][col] == 0 {
            continue;
        }
        if a[r][col] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = div_floor(a[i][col], a[r][col]);
            if q != 0 {
                sub_row(&mut a, i, r, q);
            }
        }
        r += 1;
    }
    let h = a[..r].iter().map(|row| row[..ncols].iter().map(|&x| narrow(x)).collect()).collect();
    let t = a.iter().map(|row| row[ncols..].iter().map(|&x| narrow(x)).collect()).collect();
    (h, t)
}

fn sub_row(a: &mut [Vec<i128>], i: usize, r: usize, q: i128) {
    let (lo, hi) = a.split_at_mut(i.max(r));
    let (target, source) = if i > r { (&mut hi[0], &lo[r]) } else { (&mut lo[i], &hi[0]) };
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// HNF of `rows` plus a basis of `{c : c . rows = 0}`.
fn left_kernel(rows: &[Vec<i64>], ncols: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let (h, t) = hnf_transform(rows, ncols);
    let kernel = t[h.len()..].to_vec();
    (h, kernel)
}

/// Integer `c` with `c . rows = target`, if any.
fn solve_left(rows: &[Vec<i64>], ncols: usize, target: &[i64]) -> Option<Vec<i64>> {
    let (h, t) = hnf_transform(rows, ncols);
    let mut rest: Vec<i128> = target.iter().map(|&x| x as i128).collect();
    let mut z = vec![0i128; h.len()];
    for (j, row) in h.iter().enumerate() {
        let p = pivot(row)?;
        let pv = row[p] as i128;
        if rest[p] % pv != 0 {
            return None;
        }
        z[j] = rest[p] / pv;
        for (x, &y) in rest.iter_mut().zip(row) {
            *x -= z[j] * y as i128;
        }
    }
    if rest.iter().any(|&x| x != 0) {
        return None;
    }
    let m = rows.len();
    let mut c = vec![0i128; m];
    for (j, &zj) in z.iter().enumerate() {
        for (ci, &u) in c.iter_mut().zip(&t[j]) {
            *ci += zj * u as i128;
        }
    }
    Some(c.into_iter().map(narrow).collect())
}

struct Smith {
    diag: Vec<i64>,
    v: Vec<Vec<i64>>,
    v_inv: Vec<Vec<i64>>,
}

/// Smith normal form `U A V = D`, returning `D`'s diagonal (length `ncols`,
/// padded with zeros), `V` and `V^{-1}`.
fn snf(rows: &[Vec<i64>], ncols: usize) -> Smith {
    let m = rows.len();
    let n = ncols;
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut v: Vec<Vec<i128>> = identity(n).into_iter().map(|r| r.into_iter().map(|x| x as i128).collect()).collect();
    let mut vi = v.clone();
    let mut diag = vec![0i64; n];

    // column op: col_j -= q col_k, tracked as V <- V E and V^{-1} <- E^{-1} V^{-1}
    let col_sub = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vi: &mut Vec<Vec<i128>>, j: usize, k: usize, q: i128| {
        for row in a.iter_mut() {
            row[j] -= q * row[k];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[k];
        }
        let src = vi[j].clone();
        for (x, s) in vi[k].iter_mut().zip(src) {
            *x += q * s;
        }
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vi: &mut Vec<Vec<i128>>, j: usize, k: usize| {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        for row in v.iter_mut() {
            row.swap(j, k);
        }
        vi.swap(j, k);
    };

    for k in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(k, bi);
            if bj != k {
                col_swap(&mut a, &mut v, &mut vi, k, bj);
            }
            let p = a[k][k];
            let mut clean = true;
            for i in k + 1..m {
                let q = div_floor(a[i][k], p);
                if q != 0 {
                    let src = a[k].clone();
                    for (x, s) in a[i].iter_mut().zip(src) {
                        *x -= q * s;
                    }
                }
                clean &= a[i][k] == 0;
            }
            for j in k + 1..n {
                let q = div_floor(a[k][j], p);
                if q != 0 {
                    col_sub(&mut a, &mut v, &mut vi, j, k, q);
                }
                clean &= a[k][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..m).find(|&i| (k + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[k].iter_mut().zip(src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        diag[k] = narrow(a[k][k].abs());
    }
    let to64 = |m: Vec<Vec<i128>>| m.into_iter().map(|r| r.into_iter().map(narrow).collect()).collect();
    // Sign of a pivot only flips a row of U; V is unaffected.
    Smith { diag, v: to64(v), v_inv: to64(vi) }
}
