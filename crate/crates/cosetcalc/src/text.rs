//! Human-readable output. Expressions print in the parser's syntax with
//! the fewest parentheses that preserve the tree.

use std::fmt::Write;

use cosetcalc_core::graded::Component;
use cosetcalc_core::norm::Interval;
use cosetcalc_core::{Coset, CosetExpr, GradedElement, Rational};

pub fn elem(x: &[i64]) -> String {
    match x {
        [a] => a.to_string(),
        _ => format!("({})", join(x.iter().map(i64::to_string))),
    }
}

pub fn rational(q: &Rational) -> String {
    q.to_string()
}

pub fn matrix(rows: &[Vec<i64>]) -> String {
    format!("[{}]", join(rows.iter().map(|r| format!("[{}]", join(r.iter().map(i64::to_string))))))
}

pub fn interval(i: &Interval) -> String {
    format!("[{:.12}, {:.12}]", i.lo, i.hi)
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ")
}

fn coset(c: &Coset) -> String {
    let basis = c.subgroup().basis();
    let n = c.subgroup().dim();
    let scalar = basis.len() == n
        && basis.first().map(|r| r[0]).is_some_and(|d| {
            basis.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == if i == j { d } else { 0 }))
        });
    let gens = if basis.is_empty() {
        "0".to_string()
    } else if scalar {
        basis[0][0].to_string()
    } else {
        matrix(basis)
    };
    format!("coset({gens}; {})", elem(c.offset()))
}

fn precedence(e: &CosetExpr) -> u8 {
    match e {
        CosetExpr::Union(..) => 1,
        CosetExpr::SymmetricDifference(..) => 2,
        CosetExpr::Difference(..) => 3,
        CosetExpr::Intersection(..) => 4,
        CosetExpr::Complement(_) => 5,
        _ => 6,
    }
}

/// Prints an expression so that parsing the result gives back the same tree.
pub fn expr(e: &CosetExpr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

fn write_expr(out: &mut String, e: &CosetExpr) {
    let child = |out: &mut String, c: &CosetExpr, min: u8| {
        if precedence(c) < min {
            out.push('(');
            write_expr(out, c);
            out.push(')');
        } else {
            write_expr(out, c);
        }
    };
    let p = precedence(e);
    match e {
        CosetExpr::Coset(c) => out.push_str(&coset(c)),
        CosetExpr::Points(xs) => {
            let _ = write!(out, "{{{}}}", join(xs.iter().map(|x| elem(x))));
        }
        CosetExpr::Empty => out.push_str("{}"),
        CosetExpr::Full => out.push('G'),
        CosetExpr::Complement(a) => {
            out.push('~');
            child(out, a, p);
        }
        CosetExpr::Union(a, b)
        | CosetExpr::SymmetricDifference(a, b)
        | CosetExpr::Difference(a, b)
        | CosetExpr::Intersection(a, b) => {
            let op = match e {
                CosetExpr::Union(..) => " | ",
                CosetExpr::SymmetricDifference(..) => " ^ ",
                CosetExpr::Difference(..) => " \\ ",
                _ => " & ",
            };
            child(out, a, p);
            out.push_str(op);
            child(out, b, p + 1);
        }
    }
}

/// One line per bucket, then the norm when given.
pub fn graded(u: &GradedElement, norm: Option<&Interval>) -> String {
    let mut out = format!("group: {}\n", u.group().discrete_part());
    if u.is_zero() {
        out.push_str("zero\n");
    }
    for (tag, c) in u.components() {
        let body = match c {
            Component::Periodic(f) => {
                let (background, entries) = crate::json::split_background(f);
                let listed = join(entries.iter().map(|(x, v)| format!("{} -> {}", elem(x), v)));
                format!(
                    "periodic mod {}, background {}{}{}",
                    matrix(f.lattice().basis()),
                    background,
                    if listed.is_empty() { "" } else { ", " },
                    listed
                )
            }
            Component::Lines(l) => {
                let lines = l
                    .lines()
                    .iter()
                    .map(|(s, p)| format!("line {s} pattern [{}]", join(p.iter().map(rational))));
                lines.collect::<Vec<_>>().join("; ")
            }
            Component::Points(d) => join(d.values().iter().map(|(x, v)| format!("{} -> {}", elem(x), v))),
        };
        let _ = writeln!(out, "{tag}: {body}");
    }
    if let Some(n) = norm {
        let _ = writeln!(out, "norm: {}", interval(n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_set;
    use cosetcalc_core::{canonicalize, GroupDescriptor};

    fn round_trip(g: &GroupDescriptor, text: &str) {
        let (g, e) = parse_set(text, g).unwrap();
        let printed = expr(&e);
        let (_, back) = parse_set(&printed, &g).unwrap();
        assert_eq!(back, e, "{text} printed as {printed}");
        let s = canonicalize(&g, &e).unwrap();
        let canon = expr(&s.to_expr());
        assert_eq!(canonicalize(&g, &parse_set(&canon, &g).unwrap().1).unwrap(), s, "{canon}");
    }

    #[test]
    fn printed_expressions_reparse() {
        let z = GroupDescriptor::integers();
        for text in [
            "coset(3;1) | coset(5;0)",
            "~coset(2;0)",
            "(coset(2;0) | {5}) & ~{4, 6}",
            "G \\ ({1} \\ {2})",
            "{1} ^ ({2} ^ {3}) | {}",
            "~~{0} & coset(0;3)",
        ] {
            round_trip(&z, text);
        }
        let z2 = GroupDescriptor::plane();
        for text in ["coset([[1,0]]; (0,2)) | coset(2; (1,1)) \\ {(0,0)}", "coset([[2,1],[0,3]]; (1,0)) ^ coset([[1,1]]; (0,0))"] {
            round_trip(&z2, text);
        }
        round_trip(&GroupDescriptor::cyclic(6).unwrap(), "coset(2;1) | {0}");
    }

    #[test]
    fn canonical_text() {
        let z = GroupDescriptor::integers();
        let (_, e) = parse_set("coset(2;0) | {5}", &z).unwrap();
        let s = canonicalize(&z, &e).unwrap();
        assert_eq!(expr(&s.to_expr()), "coset(2; 0) | {5}");
    }
}
