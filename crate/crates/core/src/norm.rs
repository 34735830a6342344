//! Certified norms of graded elements.
//!
//! The norm is the sum of the component norms. A periodic component, and
//! any function on a finite group, has the `l1` norm of its discrete
//! Fourier transform. A finitely supported function on `Z` or `Z^2` has the
//! `L1` norm of its trigonometric polynomial over the torus, computed by
//! adaptive Gauss-Legendre quadrature with Bernstein-ellipse remainder
//! bounds. A line component of direction `v` has norm
//! `sum_j || sum_s ghat_s(j) e^{i s t} ||_1`, where `s` runs over the lines,
//! `ghat_s` is the DFT of the along-line pattern at period `k` and `j`
//! runs over `Z/k`.
//!
//! All results are intervals that contain the true value; floating point
//! error is accounted for by explicit allowances.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graded::{Component, DiscreteFn, GradedElement, LineFn, PeriodicFn, Rational};
use crate::int::lcm;
use crate::lattice::{Ambient, Elem, GroupDescriptor};

/// Target width of a norm interval.
pub const NORM_TOLERANCE: f64 = 1e-9;

const U: f64 = f64::EPSILON / 2.0;
const TWO_PI: f64 = 2.0 * PI;
const GL_NODES: usize = 16;
const GL_NODES_2D: usize = 10;
const RHOS: [f64; 8] = [1.05, 1.2, 1.5, 2.0, 3.0, 5.0, 8.0, 16.0];
const BUDGET_1D: usize = 200_000;
const BUDGET_2D: usize = 40_000;

/// A closed interval of reals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// `[mid - err, mid + err]`, widened for the rounding of the endpoints.
    fn around(mid: f64, err: f64) -> Self {
        let slack = (mid.abs() + err) * 4.0 * U + f64::MIN_POSITIVE;
        Interval { lo: mid - err - slack, hi: mid + err + slack }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let lo = self.lo + other.lo;
        let hi = self.hi + other.hi;
        Interval { lo: lo - lo.abs() * 2.0 * U, hi: hi + hi.abs() * 2.0 * U }
    }

    fn scale(&self, c: f64) -> Interval {
        let (lo, hi) = (self.lo * c, self.hi * c);
        Interval { lo: lo - lo.abs() * 2.0 * U, hi: hi + hi.abs() * 2.0 * U }
    }

    /// Norms are nonnegative.
    fn clamp_nonneg(self) -> Interval {
        Interval { lo: self.lo.max(0.0), hi: self.hi.max(0.0) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// The norm of `u`, to width at most [`NORM_TOLERANCE`].
pub fn norm(u: &GradedElement) -> Result<Interval> {
    let parts = u.components().len().max(1);
    let share = 0.5 * NORM_TOLERANCE / parts as f64;
    let mut total = Interval::point(0.0);
    let mut failed = false;
    for c in u.components().values() {
        match component_norm(u.group(), c, share) {
            Ok(i) => total = total.add(&i),
            Err(Error::PrecisionFailure { lo, hi }) => {
                failed = true;
                total = total.add(&Interval::new(lo, hi));
            }
            Err(e) => return Err(e),
        }
    }
    if failed || total.width() > NORM_TOLERANCE {
        return Err(Error::PrecisionFailure { lo: total.lo, hi: total.hi });
    }
    Ok(total)
}

/// Norms of the individual buckets, in tag order.
pub fn bucket_norms(u: &GradedElement) -> Result<Vec<Interval>> {
    let share = 0.5 * NORM_TOLERANCE;
    u.components().values().map(|c| component_norm(u.group(), c, share)).collect()
}

/// The norm of one component with width at most about `tol`.
pub fn component_norm(group: &GroupDescriptor, c: &Component, tol: f64) -> Result<Interval> {
    match (group.ambient()?, c) {
        (_, Component::Periodic(p)) => Ok(periodic_norm(p)),
        (_, Component::Lines(l)) => line_norm(l, tol),
        (Ambient::Finite, Component::Points(d)) => Ok(finite_norm(group, d)),
        (Ambient::Integers, Component::Points(d)) => {
            let coeffs: Vec<(i64, C64)> = d.values().iter().map(|(x, v)| (x[0], C64::new(to_f64(v), 0.0))).collect();
            trig_l1(&coeffs, f64_coeff_err(&coeffs), tol)
        }
        (Ambient::Plane, Component::Points(d)) => plane_points_norm(d, tol),
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Rounding error of rationals converted to `f64`.
fn f64_coeff_err(coeffs: &[(i64, C64)]) -> f64 {
    coeffs.iter().map(|(_, c)| c.norm() * U).sum()
}

fn periodic_norm(p: &PeriodicFn) -> Interval {
    let q = p.lattice().quotient_map().expect("full rank");
    let entries: Vec<(Elem, &Rational)> = p.entries().collect();
    let background = most_frequent(entries.iter().map(|(_, v)| *v));
    let support: Vec<(Vec<i64>, f64)> = entries
        .iter()
        .filter(|(_, v)| **v != background)
        .map(|(x, v)| (q.apply(x), to_f64(&(*v - &background))))
        .collect();
    dft_l1(q.moduli(), &support, to_f64(&background))
}

fn finite_norm(group: &GroupDescriptor, d: &DiscreteFn) -> Interval {
    let moduli: Vec<i64> = group.torsion().iter().map(|&t| t as i64).collect();
    let support: Vec<(Vec<i64>, f64)> = d.values().iter().map(|(x, v)| (x.clone(), to_f64(v))).collect();
    dft_l1(&moduli, &support, 0.0)
}

fn most_frequent<'a>(values: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut counts: BTreeMap<&Rational, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    counts.into_iter().find(|(_, c)| *c == best).map(|(v, _)| v.clone()).unwrap_or_else(Rational::zero)
}

/// Compensated summation.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
    abs: f64,
    n: usize,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
        self.n += 1;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }

    /// Bound on the summation error.
    fn err(&self) -> f64 {
        (2.0 * U + 2.0 * self.n as f64 * U * U) * self.abs
    }
}

/// `sum_chi |fhat(chi)|` for `f = background + q` on `prod Z/m_i`, where `q`
/// is given on its support.
fn dft_l1(moduli: &[i64], support: &[(Vec<i64>, f64)], background: f64) -> Interval {
    let n: usize = moduli.iter().map(|&m| m as usize).product();
    let big_m = moduli.iter().fold(1, |a, &m| lcm(a, m));
    let scale: Vec<i64> = moduli.iter().map(|&m| big_m / m).collect();
    let table: Vec<C64> = (0..big_m).map(|k| C64::from_polar(1.0, -TWO_PI * k as f64 / big_m as f64)).collect();
    let table_err = 1e-14;
    let mass: f64 = support.iter().map(|(_, v)| v.abs()).sum();
    // per support point phase step for each coordinate of the character
    let steps: Vec<Vec<i64>> = support
        .iter()
        .map(|(y, _)| y.iter().zip(&scale).map(|(&yi, &s)| (yi * s).rem_euclid(big_m)).collect())
        .collect();
    let mut total = Sum::default();
    let mut j = vec![0i64; moduli.len()];
    let nf = n as f64;
    for idx in 0..n {
        let (mut re, mut im) = (Sum::default(), Sum::default());
        for ((_, v), st) in support.iter().zip(&steps) {
            let k = j.iter().zip(st).fold(0i64, |a, (&ji, &s)| (a + ji * s) % big_m);
            let w = table[k as usize] * *v;
            re.add(w.re);
            im.add(w.im);
        }
        let mut coeff = C64::new(re.value(), im.value()) / nf;
        if idx == 0 {
            coeff.re += background;
        }
        total.add(coeff.norm());
        // next character in mixed radix order
        for (ji, &m) in j.iter_mut().zip(moduli) {
            *ji += 1;
            if *ji < m {
                break;
            }
            *ji = 0;
        }
    }
    let value = total.value();
    let err = mass * (table_err + 16.0 * U + 4.0 * support.len() as f64 * U * U)
        + background.abs() * 4.0 * U
        + value * 8.0 * U
        + total.err();
    Interval::around(value, err).clamp_nonneg()
}

fn line_norm(l: &LineFn, tol: f64) -> Result<Interval> {
    let k = l.lines().values().fold(1i64, |a, p| lcm(a, p.len() as i64));
    let share = tol / k as f64;
    let mut total = Interval::point(0.0);
    let mut failed = false;
    let patterns: Vec<(i64, Vec<f64>)> =
        l.lines().iter().map(|(&s, p)| (s, p.iter().map(to_f64).collect())).collect();
    for j in 0..k {
        let mut coeffs = Vec::new();
        let mut err = 0.0;
        for (s, p) in &patterns {
            let mut acc = C64::zero();
            let mut mass = 0.0;
            for t in 0..k {
                let v = p[t as usize % p.len()];
                acc += C64::from_polar(1.0, -TWO_PI * ((j * t) % k) as f64 / k as f64) * v;
                mass += v.abs();
            }
            let c = acc / k as f64;
            err += mass / k as f64 * (1e-14 + (k as f64 + 8.0) * 2.0 * U);
            if c.norm() > 0.0 {
                coeffs.push((*s, c));
            }
        }
        if coeffs.is_empty() {
            total = total.add(&Interval::new(0.0, err));
            continue;
        }
        match trig_l1(&coeffs, err, share) {
            Ok(i) => total = total.add(&i),
            Err(Error::PrecisionFailure { lo, hi }) => {
                failed = true;
                total = total.add(&Interval::new(lo, hi));
            }
            Err(e) => return Err(e),
        }
    }
    if failed {
        return Err(Error::PrecisionFailure { lo: total.lo, hi: total.hi });
    }
    Ok(total)
}

fn plane_points_norm(d: &DiscreteFn, tol: f64) -> Result<Interval> {
    let pts: Vec<(&Elem, f64)> = d.values().iter().map(|(x, v)| (x, to_f64(v))).collect();
    if pts.len() == 1 {
        return Ok(Interval::around(pts[0].1.abs(), pts[0].1.abs() * U));
    }
    let p0 = pts[0].0;
    // collinear support reduces to one variable
    let (dx, dy) = (pts[1].0[0] - p0[0], pts[1].0[1] - p0[1]);
    let collinear = pts.iter().all(|(x, _)| (x[0] - p0[0]) * dy - (x[1] - p0[1]) * dx == 0);
    if collinear {
        let g = crate::int::gcd(dx, dy);
        let (wx, wy) = (dx / g, dy / g);
        let coeffs: Vec<(i64, C64)> = pts
            .iter()
            .map(|(x, v)| {
                let k = if wx != 0 { (x[0] - p0[0]) / wx } else { (x[1] - p0[1]) / wy };
                (k, C64::new(*v, 0.0))
            })
            .collect();
        return trig_l1(&coeffs, f64_coeff_err(&coeffs), tol);
    }
    let coeffs: Vec<([i64; 2], C64)> = pts.iter().map(|(x, v)| ([x[0], x[1]], C64::new(*v, 0.0))).collect();
    let err = coeffs.iter().map(|(_, c)| c.norm() * U).sum();
    trig2_l1(&coeffs, err, tol)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Gauss-Legendre remainder factor for functions bounded by 1 in the
/// Bernstein ellipse of parameter `rho`, on `[-1, 1]`.
fn gl_remainder(rho: f64, n: usize) -> f64 {
    64.0 / 15.0 * libm::pow(rho, -2.0 * n as f64) / (rho * rho - 1.0)
}

/// Distance from 0 to `{p + q t : |t| <= a}`.
fn segment_distance(p: C64, q: C64, a: f64) -> f64 {
    let qq = q.norm_sqr();
    if qq == 0.0 {
        return p.norm();
    }
    let t = (-(p.re * q.re + p.im * q.im) / qq).clamp(-a, a);
    (p + q * t).norm()
}

/// A trigonometric polynomial `sum c_n e^{i n x}` in one variable.
struct Trig1 {
    terms: Vec<(f64, C64)>,
    m0: f64,
    m1: f64,
    m2: f64,
    /// bound on the error of a computed value
    eval_err: f64,
    deriv_err: f64,
}

impl Trig1 {
    fn new(coeffs: &[(i64, C64)], coeff_err: f64) -> Self {
        let lo = coeffs.iter().map(|c| c.0).min().unwrap_or(0);
        let hi = coeffs.iter().map(|c| c.0).max().unwrap_or(0);
        let shift = lo + (hi - lo) / 2;
        let terms: Vec<(f64, C64)> = coeffs.iter().map(|(n, c)| ((n - shift) as f64, *c)).collect();
        let m0: f64 = terms.iter().map(|(_, c)| c.norm()).sum();
        let m1: f64 = terms.iter().map(|(n, c)| n.abs() * c.norm()).sum();
        let m2: f64 = terms.iter().map(|(n, c)| n * n * c.norm()).sum();
        let eval_err = terms.iter().map(|(n, c)| c.norm() * (8.0 * n.abs() + 16.0) * U).sum::<f64>()
            + 4.0 * terms.len() as f64 * U * m0
            + coeff_err;
        let deriv_err = terms.iter().map(|(n, c)| c.norm() * n.abs() * (8.0 * n.abs() + 16.0) * U).sum::<f64>()
            + 4.0 * terms.len() as f64 * U * m1
            + coeff_err * terms.iter().map(|t| t.0.abs()).fold(0.0, f64::max);
        Trig1 { terms, m0, m1, m2, eval_err, deriv_err }
    }

    fn eval(&self, x: f64) -> C64 {
        self.terms.iter().map(|(n, c)| c * C64::cis(n * x)).sum()
    }

    fn deriv(&self, x: f64) -> C64 {
        self.terms.iter().map(|(n, c)| c * C64::new(0.0, *n) * C64::cis(n * x)).sum()
    }

    fn growth(&self, y: f64) -> (f64, f64) {
        let mut m = 0.0;
        let mut delta = 0.0;
        for (n, c) in &self.terms {
            m += c.norm() * libm::exp(n.abs() * y);
            delta += c.norm() * libm::expm1(n.abs() * y);
        }
        (m * (1.0 + 1e-12), delta * (1.0 + 1e-12))
    }
}

/// An integral over a subinterval with a certified error radius.
struct Piece {
    value: f64,
    err: f64,
}

/// `(1/2pi) int_0^{2pi} |sum c_n e^{i n x}| dx`, where each computed
/// coefficient may be off by a total of `coeff_err`.
fn trig_l1(coeffs: &[(i64, C64)], coeff_err: f64, tol: f64) -> Result<Interval> {
    if coeffs.len() == 1 {
        let c = coeffs[0].1.norm();
        return Ok(Interval::around(c, coeff_err + 2.0 * U * c).clamp_nonneg());
    }
    let f = Trig1::new(coeffs, coeff_err);
    let nodes = gauss_legendre(GL_NODES);
    let span = f.terms.iter().map(|t| t.0.abs()).fold(0.0, f64::max);
    let initial = (libm::ceil(span / 2.0) as usize).clamp(4, 4096);
    let density = tol;
    let h = TWO_PI / initial as f64;
    let mut stack: Vec<(f64, f64)> = (0..initial).rev().map(|i| (i as f64 * h, (i + 1) as f64 * h)).collect();
    let mut total = Sum::default();
    let mut err = Sum::default();
    let mut processed = 0usize;
    let mut exhausted = false;
    while let Some((a, b)) = stack.pop() {
        processed += 1;
        let allowed = density * (b - a);
        let piece = if exhausted {
            lipschitz_piece(&f, a, b)
        } else {
            match quad_piece(&f, &nodes, a, b) {
                Some(p) if p.err <= allowed => p,
                _ => {
                    let lip = lipschitz_piece(&f, a, b);
                    if lip.err <= allowed {
                        lip
                    } else if processed >= BUDGET_1D {
                        exhausted = true;
                        lip
                    } else {
                        let m = 0.5 * (a + b);
                        stack.push((m, b));
                        stack.push((a, m));
                        continue;
                    }
                }
            }
        };
        total.add(piece.value);
        err.add(piece.err);
    }
    // the computed endpoint of [0, 2pi] is off by at most one rounding
    let e = err.value() * (1.0 + 4.0 * U) + total.err() + f.m0 * TWO_PI * U * 2.0;
    let result = Interval::around(total.value(), e).scale(1.0 / TWO_PI).clamp_nonneg();
    let result = Interval::new(result.lo * (1.0 - 4.0 * U), result.hi * (1.0 + 4.0 * U));
    if exhausted {
        return Err(Error::PrecisionFailure { lo: result.lo, hi: result.hi });
    }
    Ok(result)
}

fn lipschitz_piece(f: &Trig1, a: f64, b: f64) -> Piece {
    let r = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let v = f.eval(m).norm();
    Piece { value: 2.0 * r * v, err: r * r * f.m1 + 2.0 * r * (f.eval_err + 4.0 * U * f.m0) }
}

fn quad_piece(f: &Trig1, nodes: &[(f64, f64)], a: f64, b: f64) -> Option<Piece> {
    let r = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let fm = f.eval(m);
    let dm = f.deriv(m);
    let mut best: Option<f64> = None;
    for &rho in &RHOS {
        let reach = 0.5 * r * (rho + 1.0 / rho);
        let y = 0.5 * r * (rho - 1.0 / rho);
        let lower = segment_distance(fm, dm, reach) - f.eval_err - reach * f.deriv_err - 0.5 * f.m2 * reach * reach;
        let (bound, delta) = f.growth(y);
        if lower <= (1.0 + core::f64::consts::SQRT_2) * delta {
            break;
        }
        let e = r * bound * gl_remainder(rho, nodes.len());
        best = Some(best.map_or(e, |b: f64| b.min(e)));
    }
    let remainder = best?;
    let mut s = Sum::default();
    for &(x, w) in nodes {
        s.add(w * f.eval(m + r * x).norm());
    }
    let value = r * s.value();
    let rounding = 2.0 * r * (f.eval_err + 16.0 * U * f.m0 + 32.0 * U * f.m1) + r * s.err();
    Some(Piece { value, err: remainder + rounding })
}

/// A trigonometric polynomial in two variables.
struct Trig2 {
    terms: Vec<([f64; 2], C64)>,
    m0: f64,
    m1: [f64; 2],
    eval_err: f64,
    deriv_err: [f64; 2],
}

impl Trig2 {
    fn new(coeffs: &[([i64; 2], C64)], coeff_err: f64) -> Self {
        let mut shift = [0i64; 2];
        for (k, s) in shift.iter_mut().enumerate() {
            let lo = coeffs.iter().map(|c| c.0[k]).min().unwrap_or(0);
            let hi = coeffs.iter().map(|c| c.0[k]).max().unwrap_or(0);
            *s = lo + (hi - lo) / 2;
        }
        let terms: Vec<([f64; 2], C64)> =
            coeffs.iter().map(|(n, c)| ([(n[0] - shift[0]) as f64, (n[1] - shift[1]) as f64], *c)).collect();
        let m0: f64 = terms.iter().map(|(_, c)| c.norm()).sum();
        let m1 = [0, 1].map(|k| terms.iter().map(|(n, c)| n[k].abs() * c.norm()).sum::<f64>());
        let per = |n: &[f64; 2]| (8.0 * (n[0].abs() + n[1].abs()) + 16.0) * U;
        let eval_err =
            terms.iter().map(|(n, c)| c.norm() * per(n)).sum::<f64>() + 4.0 * terms.len() as f64 * U * m0 + coeff_err;
        let nmax = [0, 1].map(|k| terms.iter().map(|t| t.0[k].abs()).fold(0.0, f64::max));
        let deriv_err = [0, 1].map(|k| {
            terms.iter().map(|(n, c)| c.norm() * n[k].abs() * per(n)).sum::<f64>()
                + 4.0 * terms.len() as f64 * U * m1[k]
                + coeff_err * nmax[k]
        });
        Trig2 { terms, m0, m1, eval_err, deriv_err }
    }

    fn eval(&self, x: [f64; 2]) -> C64 {
        self.terms.iter().map(|(n, c)| c * C64::cis(n[0] * x[0] + n[1] * x[1])).sum()
    }

    fn grad(&self, x: [f64; 2]) -> [C64; 2] {
        let mut g = [C64::zero(); 2];
        for (n, c) in &self.terms {
            let e = c * C64::cis(n[0] * x[0] + n[1] * x[1]) * C64::i();
            g[0] += e * n[0];
            g[1] += e * n[1];
        }
        g
    }

    /// Bounds `sum |c| e^{|n|.y}`, `sum |c| (e^{|n|.y} - 1)` and
    /// `sum |c| (|n|.a)^2`.
    fn growth(&self, y: [f64; 2], a: [f64; 2]) -> (f64, f64, f64) {
        let mut m = 0.0;
        let mut delta = 0.0;
        let mut second = 0.0;
        for (n, c) in &self.terms {
            let t = n[0].abs() * y[0] + n[1].abs() * y[1];
            m += c.norm() * libm::exp(t);
            delta += c.norm() * libm::expm1(t);
            let s = n[0].abs() * a[0] + n[1].abs() * a[1];
            second += c.norm() * s * s;
        }
        (m * (1.0 + 1e-12), delta * (1.0 + 1e-12), second * (1.0 + 1e-12))
    }
}

/// Distance from 0 to `{p + q1 t1 + q2 t2 : |t1| <= a1, |t2| <= a2}`.
fn parallelogram_distance(p: C64, q: [C64; 2], a: [f64; 2]) -> f64 {
    let det = q[0].re * q[1].im - q[0].im * q[1].re;
    if det != 0.0 {
        // solve q1 t1 + q2 t2 = -p
        let t1 = (-p.re * q[1].im + p.im * q[1].re) / det;
        let t2 = (-q[0].re * p.im + q[0].im * p.re) / det;
        if t1.abs() <= a[0] && t2.abs() <= a[1] {
            return 0.0;
        }
    }
    let e1 = segment_distance(p + q[1] * a[1], q[0], a[0]);
    let e2 = segment_distance(p - q[1] * a[1], q[0], a[0]);
    let e3 = segment_distance(p + q[0] * a[0], q[1], a[1]);
    let e4 = segment_distance(p - q[0] * a[0], q[1], a[1]);
    e1.min(e2).min(e3).min(e4)
}

/// `(1/4pi^2) int_{T^2} |sum c_n e^{i n.x}| dx`.
fn trig2_l1(coeffs: &[([i64; 2], C64)], coeff_err: f64, tol: f64) -> Result<Interval> {
    let f = Trig2::new(coeffs, coeff_err);
    let nodes = gauss_legendre(GL_NODES_2D);
    let area_total = TWO_PI * TWO_PI;
    let density = tol;
    let span = [0, 1].map(|k| f.terms.iter().map(|t| t.0[k].abs()).fold(0.0, f64::max));
    let init = span.map(|s| (libm::ceil(s / 2.0) as usize).clamp(2, 256));
    let h = [TWO_PI / init[0] as f64, TWO_PI / init[1] as f64];
    let mut stack = Vec::new();
    for i in (0..init[0]).rev() {
        for j in (0..init[1]).rev() {
            stack.push(([i as f64 * h[0], j as f64 * h[1]], [(i + 1) as f64 * h[0], (j + 1) as f64 * h[1]]));
        }
    }
    let mut total = Sum::default();
    let mut err = Sum::default();
    let mut processed = 0usize;
    let mut exhausted = false;
    while let Some((a, b)) = stack.pop() {
        processed += 1;
        let area = (b[0] - a[0]) * (b[1] - a[1]);
        let allowed = density * area;
        let piece = if exhausted {
            lipschitz_box(&f, a, b)
        } else {
            match quad_box(&f, &nodes, a, b) {
                Some(p) if p.err <= allowed => p,
                _ => {
                    let lip = lipschitz_box(&f, a, b);
                    if lip.err <= allowed {
                        lip
                    } else if processed >= BUDGET_2D {
                        exhausted = true;
                        lip
                    } else {
                        // split the longer side
                        let k = if b[0] - a[0] >= b[1] - a[1] { 0 } else { 1 };
                        let m = 0.5 * (a[k] + b[k]);
                        let (mut b1, mut a2) = (b, a);
                        b1[k] = m;
                        a2[k] = m;
                        stack.push((a2, b));
                        stack.push((a, b1));
                        continue;
                    }
                }
            }
        };
        total.add(piece.value);
        err.add(piece.err);
    }
    let e = err.value() * (1.0 + 4.0 * U) + total.err() + f.m0 * area_total * 4.0 * U;
    let result = Interval::around(total.value(), e).scale(1.0 / area_total).clamp_nonneg();
    let result = Interval::new(result.lo * (1.0 - 4.0 * U), result.hi * (1.0 + 4.0 * U));
    if exhausted {
        return Err(Error::PrecisionFailure { lo: result.lo, hi: result.hi });
    }
    Ok(result)
}

fn lipschitz_box(f: &Trig2, a: [f64; 2], b: [f64; 2]) -> Piece {
    let r = [0.5 * (b[0] - a[0]), 0.5 * (b[1] - a[1])];
    let m = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    let area = 4.0 * r[0] * r[1];
    let v = f.eval(m).norm();
    Piece { value: area * v, err: area * (f.m1[0] * r[0] + f.m1[1] * r[1] + f.eval_err + 4.0 * U * f.m0) }
}

fn quad_box(f: &Trig2, nodes: &[(f64, f64)], a: [f64; 2], b: [f64; 2]) -> Option<Piece> {
    let r = [0.5 * (b[0] - a[0]), 0.5 * (b[1] - a[1])];
    let m = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    let fm = f.eval(m);
    let g = f.grad(m);
    let mut best: Option<f64> = None;
    for &rho in &RHOS {
        let reach = [0.5 * r[0] * (rho + 1.0 / rho), 0.5 * r[1] * (rho + 1.0 / rho)];
        let y = [0.5 * r[0] * (rho - 1.0 / rho), 0.5 * r[1] * (rho - 1.0 / rho)];
        let (bound, delta, second) = f.growth(y, reach);
        let lower = parallelogram_distance(fm, g, reach)
            - f.eval_err
            - reach[0] * f.deriv_err[0]
            - reach[1] * f.deriv_err[1]
            - 0.5 * second;
        if lower <= (1.0 + core::f64::consts::SQRT_2) * delta {
            break;
        }
        let e = 4.0 * r[0] * r[1] * bound * gl_remainder(rho, nodes.len());
        best = Some(best.map_or(e, |b: f64| b.min(e)));
    }
    let remainder = best?;
    let mut s = Sum::default();
    for &(x, wx) in nodes {
        for &(y, wy) in nodes {
            s.add(wx * wy * f.eval([m[0] + r[0] * x, m[1] + r[1] * y]).norm());
        }
    }
    let value = r[0] * r[1] * s.value();
    let area = 4.0 * r[0] * r[1];
    let rounding = area * (f.eval_err + 32.0 * U * f.m0 + 64.0 * U * (f.m1[0] + f.m1[1])) + r[0] * r[1] * s.err();
    Some(Piece { value, err: remainder + rounding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Coset, Subgroup};

    fn coset_z(d: i64, a: i64) -> GradedElement {
        let g = GroupDescriptor::integers();
        let h = if d == 0 { Subgroup::trivial(&g) } else { Subgroup::generated(&g, &[vec![d]]).unwrap() };
        GradedElement::from_coset(&g, &Coset::new(&g, &[a], h).unwrap()).unwrap()
    }

    fn close(i: Interval, x: f64, tol: f64) {
        assert!(i.lo - tol <= x && x <= i.hi + tol, "{i} vs {x}");
        assert!(i.width() <= NORM_TOLERANCE, "width {}", i.width());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let nodes = gauss_legendre(GL_NODES);
        let s: f64 = nodes.iter().map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
        assert!((nodes.iter().map(|n| n.1).sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn coset_indicators_have_norm_one() {
        for (d, a) in [(1, 0), (2, 1), (3, 2), (12, 5), (0, 7)] {
            close(norm(&coset_z(d, a)).unwrap(), 1.0, 1e-12);
        }
    }

    #[test]
    fn two_point_mass() {
        let u = &coset_z(0, 0) + &coset_z(0, 1);
        close(norm(&u).unwrap(), 4.0 / PI, 1e-12);
    }

    #[test]
    fn lattice_plus_point() {
        let u = &coset_z(2, 0) + &coset_z(0, 5);
        close(norm(&u).unwrap(), 2.0, 1e-12);
    }

    #[test]
    fn character() {
        let two = Rational::from_integer(2.into());
        let u = &coset_z(2, 0).scale(&two) - &coset_z(1, 0);
        close(norm(&u).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn lines_in_the_plane() {
        let p = GroupDescriptor::plane();
        let axis = Coset::new(&p, &[0, 0], Subgroup::generated(&p, &[vec![1, 0]]).unwrap()).unwrap();
        let u = GradedElement::from_coset(&p, &axis).unwrap();
        close(norm(&u).unwrap(), 1.0, 1e-12);
        let sparse = Coset::new(&p, &[1, 2], Subgroup::generated(&p, &[vec![3, 3]]).unwrap()).unwrap();
        close(norm(&GradedElement::from_coset(&p, &sparse).unwrap()).unwrap(), 1.0, 1e-12);
        // two parallel lines: (1/2pi) int |1 + e^{it}| = 4/pi
        let other = Coset::new(&p, &[0, 1], Subgroup::generated(&p, &[vec![1, 0]]).unwrap()).unwrap();
        let two = &u + &GradedElement::from_coset(&p, &other).unwrap();
        close(norm(&two).unwrap(), 4.0 / PI, 1e-12);
    }

    #[test]
    fn line_pattern_tensor_factorises() {
        // 1_{line 0 pattern [1,0]} + 1_{line 1 pattern [1,0]}: (4/pi) * 1
        let p = GroupDescriptor::plane();
        let h = Subgroup::generated(&p, &[vec![2, 0]]).unwrap();
        let a = GradedElement::from_coset(&p, &Coset::new(&p, &[0, 0], h.clone()).unwrap()).unwrap();
        let b = GradedElement::from_coset(&p, &Coset::new(&p, &[0, 1], h).unwrap()).unwrap();
        close(norm(&(&a + &b)).unwrap(), 4.0 / PI, 1e-12);
    }

    #[test]
    fn plane_points() {
        let p = GroupDescriptor::plane();
        let one = Rational::from_integer(1.into());
        let pt = |x: i64, y: i64| GradedElement::point_mass(&p, &[x, y], one.clone()).unwrap();
        close(norm(&pt(3, 4)).unwrap(), 1.0, 1e-12);
        close(norm(&(&pt(0, 0) + &pt(2, 2))).unwrap(), 4.0 / PI, 1e-12);
        // 1 + e^{ix} + e^{iy}
        let u = &(&pt(0, 0) + &pt(1, 0)) + &pt(0, 1);
        match norm(&u) {
            Ok(i) => assert!(i.lo > 1.0 && i.hi < 3.0),
            Err(Error::PrecisionFailure { lo, hi }) => assert!(lo <= hi),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn finite_groups() {
        let g = GroupDescriptor::cyclic(6).unwrap();
        let h = Subgroup::generated(&g, &[vec![2]]).unwrap();
        let u = GradedElement::from_coset(&g, &Coset::new(&g, &[1], h).unwrap()).unwrap();
        close(norm(&u).unwrap(), 1.0, 1e-12);
        // delta_0 + delta_1 on Z/2 is constant
        let z2 = GroupDescriptor::cyclic(2).unwrap();
        let one = Rational::from_integer(1.into());
        let v = &GradedElement::point_mass(&z2, &[0], one.clone()).unwrap()
            + &GradedElement::point_mass(&z2, &[1], one).unwrap();
        close(norm(&v).unwrap(), 1.0, 1e-12);
    }
}
