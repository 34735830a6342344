//! Random coset-ring expressions with a membership test that does not go
//! through the library, printable in CLI syntax.

#![allow(dead_code)]

use cosetcalc_core::{Coset, CosetExpr, GroupDescriptor, Subgroup};
use rand::Rng;

/// Divisors of 2520 up to 30.
pub const PERIODS: [i64; 19] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 21, 24, 28, 30];

pub const DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)];

#[derive(Clone, Debug)]
pub enum Tree {
    /// `dZ + a` over `Z`.
    Progression { d: i64, a: i64 },
    /// `o + <(a, b), (0, c)>` over `Z^2`.
    Lattice { a: i64, b: i64, c: i64, o: [i64; 2] },
    /// `o + Z k (p, q)` over `Z^2`.
    Line { p: i64, q: i64, k: i64, o: [i64; 2] },
    Points(Vec<Vec<i64>>),
    Empty,
    Full,
    Union(Box<Tree>, Box<Tree>),
    Inter(Box<Tree>, Box<Tree>),
    Diff(Box<Tree>, Box<Tree>),
    Sym(Box<Tree>, Box<Tree>),
    Not(Box<Tree>),
}

fn divides(d: i64, x: i64) -> bool {
    if d == 0 {
        x == 0
    } else {
        x % d == 0
    }
}

impl Tree {
    pub fn contains(&self, x: &[i64]) -> bool {
        match self {
            Tree::Progression { d, a } => divides(*d, x[0] - a),
            Tree::Lattice { a, b, c, o } => {
                let (u, v) = (x[0] - o[0], x[1] - o[1]);
                divides(*a, u) && divides(*c, v - (u / a) * b)
            }
            Tree::Line { p, q, k, o } => {
                let (u, v) = (x[0] - o[0], x[1] - o[1]);
                let t = if *p != 0 { u / (k * p) } else { v / (k * q) };
                u == t * k * p && v == t * k * q
            }
            Tree::Points(xs) => xs.iter().any(|y| y.as_slice() == x),
            Tree::Empty => false,
            Tree::Full => true,
            Tree::Union(a, b) => a.contains(x) || b.contains(x),
            Tree::Inter(a, b) => a.contains(x) && b.contains(x),
            Tree::Diff(a, b) => a.contains(x) && !b.contains(x),
            Tree::Sym(a, b) => a.contains(x) != b.contains(x),
            Tree::Not(a) => !a.contains(x),
        }
    }

    pub fn to_expr(&self, g: &GroupDescriptor) -> CosetExpr {
        let coset = |o: &[i64], gens: &[Vec<i64>]| {
            CosetExpr::Coset(Coset::new(g, o, Subgroup::generated(g, gens).unwrap()).unwrap())
        };
        let pair = |a: &Tree, b: &Tree| (a.to_expr(g), b.to_expr(g));
        match self {
            Tree::Progression { d, a } => coset(&[*a], &[vec![*d]]),
            Tree::Lattice { a, b, c, o } => coset(o, &[vec![*a, *b], vec![0, *c]]),
            Tree::Line { p, q, k, o } => coset(o, &[vec![k * p, k * q]]),
            Tree::Points(xs) if xs.is_empty() => CosetExpr::Empty,
            Tree::Points(xs) => CosetExpr::Points(xs.clone()),
            Tree::Empty => CosetExpr::Empty,
            Tree::Full => CosetExpr::Full,
            Tree::Union(a, b) => {
                let (a, b) = pair(a, b);
                CosetExpr::union(a, b)
            }
            Tree::Inter(a, b) => {
                let (a, b) = pair(a, b);
                CosetExpr::intersection(a, b)
            }
            Tree::Diff(a, b) => {
                let (a, b) = pair(a, b);
                CosetExpr::difference(a, b)
            }
            Tree::Sym(a, b) => {
                let (a, b) = pair(a, b);
                CosetExpr::symmetric_difference(a, b)
            }
            Tree::Not(a) => CosetExpr::complement(a.to_expr(g)),
        }
    }

    /// Fully parenthesised CLI syntax.
    pub fn to_text(&self) -> String {
        let elem = |x: &[i64]| match x {
            [a] => a.to_string(),
            _ => format!("({})", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
        };
        match self {
            Tree::Progression { d, a } => format!("coset({d};{a})"),
            Tree::Lattice { a, b, c, o } => format!("coset([[{a},{b}],[0,{c}]];{})", elem(o)),
            Tree::Line { p, q, k, o } => format!("coset([[{},{}]];{})", k * p, k * q, elem(o)),
            Tree::Points(xs) => format!("{{{}}}", xs.iter().map(|x| elem(x)).collect::<Vec<_>>().join(", ")),
            Tree::Empty => "{}".into(),
            Tree::Full => "G".into(),
            Tree::Union(a, b) => format!("({} | {})", a.to_text(), b.to_text()),
            Tree::Inter(a, b) => format!("({} & {})", a.to_text(), b.to_text()),
            Tree::Diff(a, b) => format!("({} \\ {})", a.to_text(), b.to_text()),
            Tree::Sym(a, b) => format!("({} ^ {})", a.to_text(), b.to_text()),
            Tree::Not(a) => format!("~{}", a.to_text()),
        }
    }

    /// The lcm of the progression periods.
    pub fn period(&self) -> i64 {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 { a.abs() } else { gcd(b, a % b) }
        }
        match self {
            Tree::Progression { d, .. } => *d,
            Tree::Union(a, b) | Tree::Inter(a, b) | Tree::Diff(a, b) | Tree::Sym(a, b) => {
                let (p, q) = (a.period(), b.period());
                p / gcd(p, q) * q
            }
            Tree::Not(a) => a.period(),
            _ => 1,
        }
    }
}

fn combine(rng: &mut impl Rng, a: Tree, b: Tree) -> Tree {
    let (a, b) = (Box::new(a), Box::new(b));
    match rng.gen_range(0..4) {
        0 => Tree::Union(a, b),
        1 => Tree::Inter(a, b),
        2 => Tree::Diff(a, b),
        _ => Tree::Sym(a, b),
    }
}

/// Depth at most `depth`, periods from [`PERIODS`], at most 10 exceptional points per leaf in `[-40, 40]`.
pub fn z_tree(rng: &mut impl Rng, depth: usize) -> Tree {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0..=5 => Tree::Progression { d: PERIODS[rng.gen_range(0..PERIODS.len())], a: rng.gen_range(-30..30) },
            6 | 7 => {
                let n = rng.gen_range(1..=10);
                Tree::Points((0..n).map(|_| vec![rng.gen_range(-40..=40)]).collect())
            }
            8 => Tree::Empty,
            _ => Tree::Full,
        };
    }
    if rng.gen_bool(0.15) {
        return Tree::Not(Box::new(z_tree(rng, depth - 1)));
    }
    let a = z_tree(rng, depth - 1);
    let b = z_tree(rng, depth - 1);
    combine(rng, a, b)
}

pub fn plane_tree(rng: &mut impl Rng, depth: usize) -> Tree {
    let o = |rng: &mut dyn rand::RngCore| [rng.gen_range(-5..5), rng.gen_range(-5..5)];
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0..=2 => {
                let a = rng.gen_range(1..4);
                Tree::Lattice { a, b: rng.gen_range(0..a), c: rng.gen_range(1..4), o: o(rng) }
            }
            3..=5 => {
                let (p, q) = DIRECTIONS[rng.gen_range(0..DIRECTIONS.len())];
                Tree::Line { p, q, k: rng.gen_range(1..3), o: o(rng) }
            }
            6 => Tree::Points((0..rng.gen_range(1..4)).map(|_| o(rng).to_vec()).collect()),
            _ => Tree::Full,
        };
    }
    if rng.gen_bool(0.15) {
        return Tree::Not(Box::new(plane_tree(rng, depth - 1)));
    }
    let a = plane_tree(rng, depth - 1);
    let b = plane_tree(rng, depth - 1);
    combine(rng, a, b)
}

pub fn z_window() -> impl Iterator<Item = Vec<i64>> {
    (-120..=120).map(|x| vec![x])
}

pub fn plane_window() -> impl Iterator<Item = Vec<i64>> {
    (-12..=12).flat_map(|x| (-12..=12).map(move |y| vec![x, y]))
}
