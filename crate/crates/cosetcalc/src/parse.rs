//! Recursive-descent parsers for groups, coset expressions, tags, elements
//! and spectrum points. Columns are 1-based and count characters.
//!
//! ```text
//! input    := [group [':']] union
//! union    := symdiff (('|' | '∪') symdiff)*
//! symdiff  := diff (('^' | '△') diff)*
//! diff     := inter (('\' | '∖') inter)*
//! inter    := unary (('&' | '∩') unary)*
//! unary    := ('~' | '¬') unary | primary
//! primary  := 'coset' '(' gens ';' elem ')' | '{' [elem (',' elem)*] '}' | 'G' | '(' union ')'
//! gens     := int | '[' [row (',' row)*] ']'
//! elem     := int | '(' int (',' int)* ')'
//! group    := factor (('x' | '×') factor)*
//! factor   := 'Z' | 'Z' int | 'Z^' int | 'Z/' int | 'R' | 'R^' int
//! ```

use std::fmt;
use std::ops::Range;

use cosetcalc_core::spectrum::{embed, idempotent_of, line_point, profinite};
use cosetcalc_core::{Coset, CosetExpr, Direction, GroupDescriptor, HdSet, SpectrumPoint, Subgroup, TopologyTag};

/// A syntax or lowering error at a 1-based column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type Result<T> = std::result::Result<T, ParseError>;

/// Half-open range of 1-based columns.
pub type Span = Range<usize>;

/// Generators of a coset's subgroup as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    /// `d` stands for `d` times every coordinate vector.
    Scalar(i64),
    Rows(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Coset { generators: Generators, offset: Vec<i64> },
    Points(Vec<Vec<i64>>),
    Full,
    Union(Box<Expr>, Box<Expr>),
    Intersection(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    SymmetricDifference(Box<Expr>, Box<Expr>),
    Complement(Box<Expr>),
}

impl Expr {
    /// Builds the core expression over `group`, checking widths.
    pub fn lower(&self, group: &GroupDescriptor) -> Result<CosetExpr> {
        let at = |message: String| ParseError { column: self.span.start, message };
        let width = |v: &[i64], what: &str| {
            if v.len() == group.dim() {
                Ok(())
            } else {
                Err(at(format!("{what} has {} coordinates but {group} has {}", v.len(), group.dim())))
            }
        };
        Ok(match &self.kind {
            ExprKind::Coset { generators, offset } => {
                width(offset, "the offset")?;
                let rows = match generators {
                    Generators::Scalar(d) => (0..group.dim())
                        .map(|i| {
                            let mut r = vec![0; group.dim()];
                            r[i] = *d;
                            r
                        })
                        .collect(),
                    Generators::Rows(rows) => rows.clone(),
                };
                for r in &rows {
                    width(r, "a generator")?;
                }
                let h = Subgroup::generated(group, &rows).map_err(|e| at(e.to_string()))?;
                CosetExpr::Coset(Coset::new(group, offset, h).map_err(|e| at(e.to_string()))?)
            }
            ExprKind::Points(xs) if xs.is_empty() => CosetExpr::Empty,
            ExprKind::Points(xs) => {
                for x in xs {
                    width(x, "an element")?;
                }
                CosetExpr::Points(xs.clone())
            }
            ExprKind::Full => CosetExpr::Full,
            ExprKind::Union(a, b) => CosetExpr::union(a.lower(group)?, b.lower(group)?),
            ExprKind::Intersection(a, b) => CosetExpr::intersection(a.lower(group)?, b.lower(group)?),
            ExprKind::Difference(a, b) => CosetExpr::difference(a.lower(group)?, b.lower(group)?),
            ExprKind::SymmetricDifference(a, b) => CosetExpr::symmetric_difference(a.lower(group)?, b.lower(group)?),
            ExprKind::Complement(a) => CosetExpr::complement(a.lower(group)?),
        })
    }
}

/// An expression with its optional group prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub group: Option<GroupDescriptor>,
    pub expr: Expr,
}

/// A spectrum point as written; built against a group and a precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointExpr {
    Idempotent(TopologyTag),
    Embedded(Vec<i64>),
    /// Residues with their moduli; `None` means the working precision.
    Profinite(Vec<(Vec<i64>, Option<u64>)>),
    Line { direction: Direction, line: i64, position: i64, modulus: Option<u64> },
    Product(Box<PointExpr>, Box<PointExpr>),
}

impl PointExpr {
    /// Exact literals stay exact; profinite ones are truncated to `precision`.
    pub fn build(&self, group: &GroupDescriptor, precision: u64) -> cosetcalc_core::Result<SpectrumPoint> {
        Ok(match self {
            PointExpr::Idempotent(t) => idempotent_of(group, HdSet::principal(*t))?,
            PointExpr::Embedded(x) => embed(group, x)?,
            PointExpr::Profinite(parts) => {
                let congruences: Vec<_> = parts.iter().map(|(r, m)| (r.clone(), m.unwrap_or(precision))).collect();
                profinite(group, &congruences)?.truncate(precision)
            }
            PointExpr::Line { direction, line, position, modulus } => {
                let p = line_point(group, *direction, *line, *position, *modulus)?;
                if modulus.is_some() {
                    p.truncate(precision)
                } else {
                    p
                }
            }
            PointExpr::Product(a, b) => a.build(group, precision)?.mult(&b.build(group, precision)?)?,
        })
    }
}

pub fn parse_group(text: &str) -> Result<GroupDescriptor> {
    let mut c = Cursor::new(text);
    let g = c.group()?;
    c.finish()?;
    Ok(g)
}

pub fn parse_expr(text: &str) -> Result<Parsed> {
    let mut c = Cursor::new(text);
    let group = match c.peek() {
        Some('Z' | 'R') => {
            let g = c.group()?;
            c.eat(':');
            Some(g)
        }
        _ => None,
    };
    let expr = c.union()?;
    c.finish()?;
    Ok(Parsed { group, expr })
}

/// Parses and lowers an expression; a group prefix overrides `default`.
pub fn parse_set(text: &str, default: &GroupDescriptor) -> Result<(GroupDescriptor, CosetExpr)> {
    let parsed = parse_expr(text)?;
    let group = parsed.group.unwrap_or_else(|| default.clone());
    let expr = parsed.expr.lower(&group)?;
    Ok((group, expr))
}

pub fn parse_tag(text: &str) -> Result<TopologyTag> {
    let mut c = Cursor::new(text);
    let t = c.tag()?;
    c.finish()?;
    Ok(t)
}

pub fn parse_elem(text: &str) -> Result<Vec<i64>> {
    let mut c = Cursor::new(text);
    let x = c.elem()?;
    c.finish()?;
    Ok(x)
}

pub fn parse_point(text: &str) -> Result<PointExpr> {
    let mut c = Cursor::new(text);
    let mut p = c.point_atom()?;
    while c.eat('*') || c.eat('·') {
        p = PointExpr::Product(Box::new(p), Box::new(c.point_atom()?));
    }
    c.finish()?;
    Ok(p)
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0 }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&mut self, expected: &str) -> Result<T> {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        };
        Err(ParseError { column: self.column(), message: format!("expected {expected}, found {found}") })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.error("an operator or end of input"),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.error("an integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| ParseError { column: start + 1, message: format!("integer {text} is out of range") })
    }

    fn natural(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.column();
        let n = self.integer()?;
        u64::try_from(n).map_err(|_| ParseError { column: start, message: format!("expected a nonnegative integer, found {n}") })
    }

    fn elem(&mut self) -> Result<Vec<i64>> {
        if self.eat('(') {
            let mut xs = vec![self.integer()?];
            while self.eat(',') {
                xs.push(self.integer()?);
            }
            self.expect(')')?;
            Ok(xs)
        } else {
            Ok(vec![self.integer()?])
        }
    }

    fn row(&mut self) -> Result<Vec<i64>> {
        self.expect('[')?;
        let mut xs = Vec::new();
        if !self.eat(']') {
            xs.push(self.integer()?);
            while self.eat(',') {
                xs.push(self.integer()?);
            }
            self.expect(']')?;
        }
        Ok(xs)
    }

    fn group(&mut self) -> Result<GroupDescriptor> {
        let (mut free, mut torsion, mut connected) = (0usize, Vec::new(), 0usize);
        loop {
            let start = self.column();
            match self.peek() {
                Some('Z') => {
                    self.pos += 1;
                    match self.chars.get(self.pos) {
                        Some('^') => {
                            self.pos += 1;
                            free += self.natural()? as usize;
                        }
                        Some('/') => {
                            self.pos += 1;
                            let d = self.natural()?;
                            if d < 2 {
                                return Err(ParseError { column: start, message: format!("torsion order {d} must be at least 2") });
                            }
                            torsion.push(d);
                        }
                        Some(c) if c.is_ascii_digit() => free += self.natural()? as usize,
                        _ => free += 1,
                    }
                }
                Some('R') => {
                    self.pos += 1;
                    if self.chars.get(self.pos) == Some(&'^') {
                        self.pos += 1;
                        connected += self.natural()? as usize;
                    } else {
                        connected += 1;
                    }
                }
                _ => return self.error("a group factor 'Z', 'Z^n', 'Z/n' or 'R^n'"),
            }
            if !(self.eat('x') || self.eat('×')) {
                break;
            }
        }
        GroupDescriptor::new(free, torsion, connected)
            .map_err(|e| ParseError { column: self.column(), message: e.to_string() })
    }

    fn union(&mut self) -> Result<Expr> {
        let mut a = self.symdiff()?;
        while self.eat('|') || self.eat('∪') {
            let b = self.symdiff()?;
            a = binary(a, b, ExprKind::Union);
        }
        Ok(a)
    }

    fn symdiff(&mut self) -> Result<Expr> {
        let mut a = self.diff()?;
        while self.eat('^') || self.eat('△') {
            let b = self.diff()?;
            a = binary(a, b, ExprKind::SymmetricDifference);
        }
        Ok(a)
    }

    fn diff(&mut self) -> Result<Expr> {
        let mut a = self.inter()?;
        while self.eat('\\') || self.eat('∖') {
            let b = self.inter()?;
            a = binary(a, b, ExprKind::Difference);
        }
        Ok(a)
    }

    fn inter(&mut self) -> Result<Expr> {
        let mut a = self.unary()?;
        while self.eat('&') || self.eat('∩') {
            let b = self.unary()?;
            a = binary(a, b, ExprKind::Intersection);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.column();
        if self.eat('~') || self.eat('¬') {
            let a = self.unary()?;
            let span = start..a.span.end;
            return Ok(Expr { kind: ExprKind::Complement(Box::new(a)), span });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr> {
        let start = self.column();
        let kind = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                self.expect(')')?;
                return Ok(Expr { kind: inner.kind, span: start..self.column() });
            }
            Some('{') => {
                self.pos += 1;
                let mut xs = Vec::new();
                if !self.eat('}') {
                    xs.push(self.elem()?);
                    while self.eat(',') {
                        xs.push(self.elem()?);
                    }
                    self.expect('}')?;
                }
                ExprKind::Points(xs)
            }
            Some(c) if c.is_ascii_alphabetic() => match self.word().as_str() {
                "G" => ExprKind::Full,
                "coset" => {
                    self.expect('(')?;
                    let generators = if self.peek() == Some('[') {
                        self.pos += 1;
                        let mut rows = Vec::new();
                        if !self.eat(']') {
                            rows.push(self.row()?);
                            while self.eat(',') {
                                rows.push(self.row()?);
                            }
                            self.expect(']')?;
                        }
                        Generators::Rows(rows)
                    } else {
                        Generators::Scalar(self.integer()?)
                    };
                    self.expect(';')?;
                    let offset = self.elem()?;
                    self.expect(')')?;
                    ExprKind::Coset { generators, offset }
                }
                w => {
                    return Err(ParseError { column: start, message: format!("unknown name '{w}'") });
                }
            },
            _ => return self.error("an operand"),
        };
        Ok(Expr { kind, span: start..self.column() })
    }

    fn direction(&mut self) -> Result<Direction> {
        let start = self.column();
        self.expect('(')?;
        let a = self.integer()?;
        self.expect(',')?;
        let b = self.integer()?;
        self.expect(')')?;
        Direction::of_vector(a, b).ok_or(ParseError { column: start, message: "the zero vector has no direction".into() })
    }

    fn tag(&mut self) -> Result<TopologyTag> {
        let start = self.pos;
        match self.word().as_str() {
            "TD" => Ok(TopologyTag::Td),
            "D" => Ok(TopologyTag::Discrete),
            "dir" => {
                self.eat(':');
                Ok(TopologyTag::Dir(self.direction()?))
            }
            _ => {
                self.pos = start;
                self.error("a tag 'TD', 'D' or 'dir(a,b)'")
            }
        }
    }

    fn modulus(&mut self) -> Result<Option<u64>> {
        let save = self.pos;
        if self.word() == "mod" {
            let start = self.column();
            let m = self.natural()?;
            if m == 0 {
                return Err(ParseError { column: start, message: "modulus must be positive".into() });
            }
            Ok(Some(m))
        } else {
            self.pos = save;
            Ok(None)
        }
    }

    fn point_atom(&mut self) -> Result<PointExpr> {
        let start = self.pos;
        let p = match self.word().as_str() {
            "e" => {
                self.expect('(')?;
                let t = self.tag()?;
                self.expect(')')?;
                PointExpr::Idempotent(t)
            }
            "emb" => {
                self.expect('(')?;
                let x = self.elem()?;
                self.expect(')')?;
                PointExpr::Embedded(x)
            }
            "prof" => {
                self.expect('(')?;
                let mut parts = Vec::new();
                loop {
                    let r = self.elem()?;
                    parts.push((r, self.modulus()?));
                    if !self.eat(';') {
                        break;
                    }
                }
                self.expect(')')?;
                PointExpr::Profinite(parts)
            }
            "line" => {
                self.expect('(')?;
                let at = self.column();
                let v = self.elem()?;
                let direction = match v.as_slice() {
                    [a, b] => Direction::new(*a, *b).map_err(|e| ParseError { column: at, message: e.to_string() })?,
                    _ => return Err(ParseError { column: at, message: "a direction has two coordinates".into() }),
                };
                self.expect(';')?;
                let line = self.integer()?;
                self.expect(';')?;
                let position = self.integer()?;
                let modulus = self.modulus()?;
                self.expect(')')?;
                PointExpr::Line { direction, line, position, modulus }
            }
            _ => {
                self.pos = start;
                return self.error("a point 'e(..)', 'emb(..)', 'prof(..)' or 'line(..)'");
            }
        };
        Ok(p)
    }
}

fn binary(a: Expr, b: Expr, op: fn(Box<Expr>, Box<Expr>) -> ExprKind) -> Expr {
    let span = a.span.start..b.span.end;
    Expr { kind: op(Box::new(a), Box::new(b)), span }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_precedence() {
        let e = parse_expr("coset(3;1) | coset(5;0) & ~{2}").unwrap().expr;
        let ExprKind::Union(_, rhs) = e.kind else { panic!("{e:?}") };
        let ExprKind::Intersection(_, c) = rhs.kind else { panic!() };
        assert!(matches!(c.kind, ExprKind::Complement(_)));
        let e = parse_expr("~coset(2;0)").unwrap().expr;
        assert!(matches!(e.kind, ExprKind::Complement(_)));
        let e = parse_expr("G \\ {1} \\ {2}").unwrap().expr;
        let ExprKind::Difference(lhs, _) = e.kind else { panic!() };
        assert!(matches!(lhs.kind, ExprKind::Difference(..)));
    }

    #[test]
    fn unicode_aliases_match_ascii() {
        let a = parse_expr("coset(2;0) ∪ {1} ∩ ¬{3} ∖ {4} △ G").unwrap().expr;
        let b = parse_expr("coset(2;0) | {1} & ~{3} \\ {4} ^ G").unwrap().expr;
        assert_eq!(format!("{:?}", a.kind).len(), format!("{:?}", b.kind).len());
        let z = GroupDescriptor::integers();
        assert_eq!(a.lower(&z).unwrap(), b.lower(&z).unwrap());
    }

    #[test]
    fn error_columns() {
        assert_eq!(parse_expr("coset(3;1) &").unwrap_err().column, 13);
        assert_eq!(parse_expr("coset(3 1)").unwrap_err().column, 9);
        assert_eq!(parse_expr("{1,}").unwrap_err().column, 4);
        assert_eq!(parse_expr("cosets(1;0)").unwrap_err().column, 1);
        assert_eq!(parse_expr("{1} {2}").unwrap_err().column, 5);
        let (g, _) = parse_set("Z2: coset(2;(0,1))", &GroupDescriptor::integers()).unwrap();
        assert_eq!(g, GroupDescriptor::plane());
        let err = parse_set("{1} | coset(2;(0,1))", &GroupDescriptor::integers()).unwrap_err();
        assert_eq!(err.column, 7);
    }

    #[test]
    fn groups() {
        let g = parse_group("R^2 x Z").unwrap();
        assert_eq!((g.connected_dim(), g.free_rank()), (2, 1));
        let g = parse_group("Z × Z/4").unwrap();
        assert_eq!(g.torsion(), &[4]);
        assert_eq!(parse_group("Z2").unwrap(), GroupDescriptor::plane());
        assert_eq!(parse_group("Z^2").unwrap(), GroupDescriptor::plane());
        assert_eq!(parse_group("Z/6").unwrap(), GroupDescriptor::cyclic(6).unwrap());
        assert_eq!(parse_group("Z/1").unwrap_err().column, 1);
        assert!(parse_group("Q").is_err());
    }

    #[test]
    fn tags_and_points() {
        assert_eq!(parse_tag("TD").unwrap(), TopologyTag::Td);
        assert_eq!(parse_tag("dir:(2,-4)").unwrap(), TopologyTag::Dir(Direction::new(1, -2).unwrap()));
        assert_eq!(parse_tag("dir(0,-1)").unwrap(), parse_tag("dir(0,1)").unwrap());
        assert!(parse_tag("dir(0,0)").is_err());
        let p = parse_point("prof(3 mod 4; 1 mod 9)").unwrap();
        let s = p.build(&GroupDescriptor::integers(), 2520).unwrap();
        assert_eq!(s.coordinates(), &[19]);
        assert_eq!(s.precision(), Some(36));
        let p = parse_point("e(TD) * emb(5)").unwrap();
        let s = p.build(&GroupDescriptor::integers(), 2520).unwrap();
        assert_eq!(s.to_string(), "prof(5)");
    }

    #[test]
    fn point_display_reparses() {
        let z2 = GroupDescriptor::plane();
        for text in ["emb((1,-2))", "prof((3,4) mod 12)", "line((1,2); 3; 5 mod 2520)", "line((1,0); -1; 7)"] {
            let s = parse_point(text).unwrap().build(&z2, 2520).unwrap();
            assert_eq!(s.to_string(), text);
        }
    }
}
