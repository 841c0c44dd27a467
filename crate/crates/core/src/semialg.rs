//! Semi-algebraic sets as polynomial sign formulas, with exact evaluation,
//! cubical rasterization, grid thickening and distance enclosures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{Signed, Zero};

use crate::cell::{Cell, Cube};
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::CubicalGrid;
use crate::rational::{self, Q};

/// Multivariate polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Q) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate `x_i`.
    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars, "variable index out of range");
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Polynomial::zero(vars);
        p.add_term(e, rational::int(1));
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Q)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        debug_assert_eq!(e.len(), self.vars);
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Same polynomial in `n ≥ vars` variables.
    pub fn widen(&self, n: usize) -> Self {
        assert!(n >= self.vars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e.resize(n, 0);
            (e, c.clone())
        });
        Polynomial { vars: n, terms: terms.collect() }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let n = self.vars.max(other.vars);
        (self.widen(n), other.widen(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn neg(&self) -> Self {
        Polynomial { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = Polynomial::zero(a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::constant(self.vars, rational::int(1)), |acc, _| acc.mul(self))
    }

    /// Exact value at `p`; `p` may have more coordinates than variables.
    pub fn eval(&self, p: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in p.iter().zip(e) {
                if k > 0 {
                    t *= num::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }
}

fn var_name(i: usize, vars: usize) -> String {
    if vars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    /// Prefix form accepted by [`parse_formula`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |e: &[u32], c: &Q| -> String {
            let mut factors = vec![];
            if !(c == &rational::int(1) && e.iter().any(|&k| k > 0)) {
                factors.push(rational::fmt(c));
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(var_name(i, self.vars)),
                    k => factors.push(format!("(^ {} {k})", var_name(i, self.vars))),
                }
            }
            if factors.len() == 1 { factors.pop().unwrap() } else { format!("(* {})", factors.join(" ")) }
        };
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| mono(e, c)).collect();
        match parts.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", parts[0]),
            _ => write!(f, "(+ {})", parts.join(" ")),
        }
    }
}

/// Sign relation of an atom `p ρ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

impl Relation {
    fn holds(self, v: &Q) -> bool {
        match self {
            Relation::Lt => v.is_negative(),
            Relation::Le => !v.is_positive(),
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
            Relation::Gt => v.is_positive(),
            Relation::Ne => !v.is_zero(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Ne => "!=",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "<" => Relation::Lt,
            "<=" | "≤" => Relation::Le,
            "=" | "==" => Relation::Eq,
            ">=" | "≥" => Relation::Ge,
            ">" => Relation::Gt,
            "!=" | "≠" => Relation::Ne,
            _ => return None,
        })
    }
}

/// Boolean combination of polynomial sign conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SAFormula {
    Const(bool),
    /// `poly ρ 0`
    Atom(Polynomial, Relation),
    And(Vec<SAFormula>),
    Or(Vec<SAFormula>),
    Not(Box<SAFormula>),
}

impl SAFormula {
    /// `lhs ρ rhs`
    pub fn compare(lhs: &Polynomial, rel: Relation, rhs: &Polynomial) -> Self {
        SAFormula::Atom(lhs.sub(rhs), rel)
    }

    /// Number of variables (largest across atoms).
    pub fn arity(&self) -> usize {
        match self {
            SAFormula::Const(_) => 0,
            SAFormula::Atom(p, _) => p.vars(),
            SAFormula::And(fs) | SAFormula::Or(fs) => fs.iter().map(SAFormula::arity).max().unwrap_or(0),
            SAFormula::Not(f) => f.arity(),
        }
    }

    /// True if some atom is an equation (a measure-zero set under center sampling).
    pub fn has_equality(&self) -> bool {
        match self {
            SAFormula::Const(_) => false,
            SAFormula::Atom(_, r) => *r == Relation::Eq,
            SAFormula::And(fs) | SAFormula::Or(fs) => fs.iter().any(SAFormula::has_equality),
            SAFormula::Not(f) => f.has_equality(),
        }
    }

    fn holds(&self, p: &[Q]) -> bool {
        match self {
            SAFormula::Const(b) => *b,
            SAFormula::Atom(q, r) => r.holds(&q.eval(p)),
            SAFormula::And(fs) => fs.iter().all(|f| f.holds(p)),
            SAFormula::Or(fs) => fs.iter().any(|f| f.holds(p)),
            SAFormula::Not(f) => !f.holds(p),
        }
    }
}

impl fmt::Display for SAFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |fs: &[SAFormula]| fs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        match self {
            SAFormula::Const(b) => write!(f, "{b}"),
            SAFormula::Atom(p, r) => write!(f, "({} {p} 0)", r.symbol()),
            SAFormula::And(fs) => write!(f, "(and {})", join(fs)),
            SAFormula::Or(fs) => write!(f, "(or {})", join(fs)),
            SAFormula::Not(g) => write!(f, "(not {g})"),
        }
    }
}

/// Exact membership test; `p` must have exactly `arity` coordinates.
pub fn eval(f: &SAFormula, p: &[Q]) -> Result<bool> {
    if p.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: p.len() });
    }
    Ok(f.holds(p))
}

#[derive(Debug, Clone, PartialEq)]
enum SExpr {
    Atom(String, usize),
    List(Vec<SExpr>, usize),
}

impl SExpr {
    fn line(&self) -> usize {
        match self {
            SExpr::Atom(_, l) | SExpr::List(_, l) => *l,
        }
    }
}

fn tokenize(src: &str) -> Vec<(String, usize)> {
    let mut out = vec![];
    for (ln, line) in src.lines().enumerate() {
        let line = line.split(';').next().unwrap_or("");
        let spaced = line.replace('(', " ( ").replace(')', " ) ");
        out.extend(spaced.split_whitespace().map(|t| (t.to_string(), ln + 1)));
    }
    out
}

fn read(tokens: &[(String, usize)], pos: &mut usize) -> Result<SExpr> {
    let Some((tok, line)) = tokens.get(*pos) else {
        return Err(Error::parse(tokens.last().map_or(1, |t| t.1), "unexpected end of input"));
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = vec![];
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::parse(*line, "unclosed parenthesis")),
                    Some((t, _)) if t == ")" => {
                        *pos += 1;
                        return Ok(SExpr::List(items, *line));
                    }
                    _ => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(Error::parse(*line, "unexpected ')'")),
        _ => Ok(SExpr::Atom(tok.clone(), *line)),
    }
}

fn var_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "w" => Some(3),
        _ => name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()).filter(|&i| i >= 1).map(|i| i - 1),
    }
}

fn poly(e: &SExpr) -> Result<Polynomial> {
    match e {
        SExpr::Atom(t, line) => {
            if let Some(i) = var_index(t) {
                return Ok(Polynomial::var(i + 1, i));
            }
            rational::parse(t).map(|c| Polynomial::constant(0, c)).ok_or_else(|| Error::parse(*line, format!("not a number or variable: {t}")))
        }
        SExpr::List(items, line) => {
            let Some((SExpr::Atom(op, _), args)) = items.split_first() else {
                return Err(Error::parse(*line, "expected an operator"));
            };
            let args: Vec<Polynomial> = args.iter().map(poly).collect::<Result<_>>()?;
            let fold = |init: Polynomial, f: fn(&Polynomial, &Polynomial) -> Polynomial| args.iter().fold(init, |a, b| f(&a, b));
            match (op.as_str(), args.len()) {
                ("+", _) => Ok(fold(Polynomial::zero(0), Polynomial::add)),
                ("*", _) => Ok(fold(Polynomial::constant(0, rational::int(1)), Polynomial::mul)),
                ("-", 1) => Ok(args[0].neg()),
                ("-", n) if n > 1 => Ok(args[1..].iter().fold(args[0].clone(), |a, b| a.sub(b))),
                ("^", 2) => {
                    let k = match &items[2] {
                        SExpr::Atom(t, _) => t.parse::<u32>().ok(),
                        _ => None,
                    };
                    k.map(|k| args[0].pow(k)).ok_or_else(|| Error::parse(*line, "exponent must be a nonnegative integer literal"))
                }
                _ => Err(Error::parse(*line, format!("bad polynomial operator `{op}` with {} arguments", args.len()))),
            }
        }
    }
}

fn formula(e: &SExpr) -> Result<SAFormula> {
    match e {
        SExpr::Atom(t, line) => match t.as_str() {
            "true" => Ok(SAFormula::Const(true)),
            "false" => Ok(SAFormula::Const(false)),
            _ => Err(Error::parse(*line, format!("expected a formula, found `{t}`"))),
        },
        SExpr::List(items, line) => {
            let Some((SExpr::Atom(op, _), args)) = items.split_first() else {
                return Err(Error::parse(*line, "expected a connective or relation"));
            };
            if let Some(rel) = Relation::parse(op) {
                if args.len() != 2 {
                    return Err(Error::parse(*line, format!("relation `{op}` takes two arguments")));
                }
                return Ok(SAFormula::compare(&poly(&args[0])?, rel, &poly(&args[1])?));
            }
            let subs = || args.iter().map(formula).collect::<Result<Vec<_>>>();
            match op.as_str() {
                "and" => Ok(SAFormula::And(subs()?)),
                "or" => Ok(SAFormula::Or(subs()?)),
                "not" if args.len() == 1 => Ok(SAFormula::Not(Box::new(formula(&args[0])?))),
                _ => Err(Error::parse(e.line(), format!("unknown connective `{op}`"))),
            }
        }
    }
}

/// Parses the prefix grammar, e.g. `(and (<= (+ (^ x 2) (^ y 2)) 1) (> y 0))`.
pub fn parse_formula(src: &str) -> Result<SAFormula> {
    let tokens = tokenize(src);
    let mut pos = 0;
    let e = read(&tokens, &mut pos)?;
    if let Some((t, line)) = tokens.get(pos) {
        return Err(Error::parse(*line, format!("trailing input at `{t}`")));
    }
    formula(&e)
}

/// Which points of a top cell must satisfy the formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Center,
    Corners,
    Both,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "center" => Ok(Scheme::Center),
            "corners" => Ok(Scheme::Corners),
            "both" => Ok(Scheme::Both),
            _ => Err(Error::parse(0, format!("unknown scheme `{s}`"))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Center => "center",
            Scheme::Corners => "corners",
            Scheme::Both => "both",
        })
    }
}

/// Top cells of a grid selected by a formula, and their face closure.
#[derive(Debug, Clone)]
pub struct Rasterization {
    pub formula: SAFormula,
    pub grid: CubicalGrid,
    pub scheme: Scheme,
    /// Anchors of the included top cells, lexicographic.
    pub included: Vec<Vec<i64>>,
    pub complex: CellComplex,
}

fn samples(g: &CubicalGrid, anchor: &[i64], scheme: Scheme) -> Vec<Vec<Q>> {
    let cube = Cube::top(anchor.to_vec());
    let mut out = vec![];
    if scheme != Scheme::Corners {
        out.push(g.center(&cube));
    }
    if scheme != Scheme::Center {
        out.extend(cube.vertices().iter().map(|v| g.point(v)));
    }
    out
}

/// Includes each top cell whose sample points all satisfy `f`.
pub fn rasterize(f: &SAFormula, g: &CubicalGrid, scheme: Scheme, exec: Exec) -> Result<Rasterization> {
    if g.extent().contains(&0) {
        return Err(Error::EmptyBBox);
    }
    if f.arity() > g.dim() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: g.dim() });
    }
    let anchors = g.top_anchors();
    let keep = exec.map(&anchors, |a| samples(g, a, scheme).iter().all(|p| f.holds(p)));
    let included: Vec<Vec<i64>> = anchors.into_iter().zip(keep).filter_map(|(a, k)| k.then_some(a)).collect();
    let complex = CellComplex::cubical_closure(g.clone(), included.iter().cloned().map(Cube::top))?;
    Ok(Rasterization { formula: f.clone(), grid: g.clone(), scheme, included, complex })
}

/// Lattice interval `[lo, hi]` of a closed cell along each axis.
fn lattice_box(c: &Cube) -> Vec<(i64, i64)> {
    (0..c.ambient()).map(|i| (c.anchor[i], c.anchor[i] + i64::from(c.spans(i)))).collect()
}

/// `X` together with every top cell whose closure lies within `r − 1` cells
/// (Chebyshev) of a cell of `X`; for a top cell this is the block of anchors
/// within distance `r`. `thicken(X, 0) = X`.
pub fn thicken(x: &CellComplex, r: u32, exec: Exec) -> Result<CellComplex> {
    let g = x.grid().ok_or(Error::NotCubical)?;
    if r == 0 || x.is_empty() {
        return Ok(x.clone());
    }
    let r = i64::from(r);
    let n = g.dim();
    let maximal: Vec<Cube> = x.maximal_cells().iter().map(|c| c.as_cube().expect("cubical complex").clone()).collect();
    let blocks: Vec<Result<Vec<Vec<i64>>>> = exec.map(&maximal, |c| {
        let ranges: Vec<(i64, i64)> = lattice_box(c).into_iter().map(|(lo, hi)| (lo - r, hi + r - 1)).collect();
        for (i, &(lo, hi)) in ranges.iter().enumerate() {
            if g.period[i].is_none() && (lo < g.lo[i] || hi + 1 > g.hi[i]) {
                return Err(Error::BBoxOverflow);
            }
        }
        let mut out = vec![];
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        'outer: loop {
            out.push(g.normalize(Cube::top(cur.clone())).anchor);
            for i in (0..n).rev() {
                if cur[i] < ranges[i].1 {
                    cur[i] += 1;
                    continue 'outer;
                }
                cur[i] = ranges[i].0;
            }
            break;
        }
        Ok(out)
    });
    let mut tops = BTreeSet::new();
    for b in blocks {
        tops.extend(b?);
    }
    let mut cells: Vec<Cell> = x.all_cells().cloned().collect();
    cells.extend(tops.into_iter().map(|a| Cell::Cube(Cube::top(a))));
    x.with_cells(cells)
}

/// Euclidean distance from `p` to the closed box, squared.
fn box_distance_sq(p: &[Q], b: &[(Q, Q)]) -> Q {
    p.iter()
        .zip(b)
        .map(|(x, (lo, hi))| {
            let d = if x < lo { lo - x } else if x > hi { x - hi } else { Q::zero() };
            &d * &d
        })
        .sum()
}

fn dist_sq(p: &[Q], q: &[Q]) -> Q {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Bits of precision in the rational square-root bounds.
pub const SQRT_BITS: u32 = 32;

/// Enclosure `[lo, hi]` of the Euclidean distance from `p` to the rasterized
/// set `f` on `g` (center scheme): `lo` is the exact distance to the nearest
/// included box (rounded down), `hi` the distance to the nearest included
/// corner (rounded up).
pub fn distance_estimate(p: &[Q], f: &SAFormula, g: &CubicalGrid, exec: Exec) -> Result<(Q, Q)> {
    if p.len() != g.dim() {
        return Err(Error::ArityMismatch { expected: g.dim(), got: p.len() });
    }
    let r = rasterize(f, g, Scheme::Center, exec)?;
    distance_to_cells(p, g, &r.included, exec)
}

/// [`distance_estimate`] for an explicit set of top cells.
pub fn distance_to_cells(p: &[Q], g: &CubicalGrid, anchors: &[Vec<i64>], exec: Exec) -> Result<(Q, Q)> {
    if anchors.is_empty() {
        return Err(Error::EmptySet);
    }
    let per_cell = exec.map(anchors, |a| {
        let cube = Cube::top(a.clone());
        let near = box_distance_sq(p, &g.bounds(&cube));
        let corner = cube.vertices().iter().map(|v| dist_sq(p, &g.point(v))).min().expect("a cube has vertices");
        (near, corner)
    });
    let lo_sq = per_cell.iter().map(|c| c.0.clone()).min().unwrap();
    let hi_sq = per_cell.into_iter().map(|c| c.1).min().unwrap();
    Ok((rational::sqrt_bounds(&lo_sq, SQRT_BITS).0, rational::sqrt_bounds(&hi_sq, SQRT_BITS).1))
}

/// `x² + y² ≤ r²`
pub fn disk(r: Q) -> SAFormula {
    let (x, y) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
    SAFormula::compare(&x.pow(2).add(&y.pow(2)), Relation::Le, &Polynomial::constant(2, &r * &r))
}

/// `r_in² ≤ x² + y² ≤ r_out²`
pub fn annulus(r_in: Q, r_out: Q) -> SAFormula {
    let (x, y) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
    let s = x.pow(2).add(&y.pow(2));
    SAFormula::And(vec![
        SAFormula::compare(&s, Relation::Ge, &Polynomial::constant(2, &r_in * &r_in)),
        SAFormula::compare(&s, Relation::Le, &Polynomial::constant(2, &r_out * &r_out)),
    ])
}

/// Square grid of edge `eps` covering `[-half, half]²`.
pub fn square_grid(eps: Q, half: Q) -> Result<CubicalGrid> {
    let cells = (&half / &eps).ceil().to_integer();
    let m = num::ToPrimitive::to_i64(&cells).ok_or(Error::BBoxOverflow)?;
    CubicalGrid::boxed(eps, vec![-m, -m], vec![m, m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_numbers;
    use crate::rational::{frac, int};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn eval_examples() {
        let f = parse_formula("(<= (+ (^ x 2) (^ y 2)) 1)").unwrap();
        assert!(eval(&f, &q(&[0, 0])).unwrap());
        assert!(!eval(&f, &q(&[1, 1])).unwrap());
        let cusp = parse_formula("(= (^ y 2) (^ x 3))").unwrap();
        assert!(eval(&cusp, &q(&[1, 1])).unwrap());
        assert!(eval(&cusp, &q(&[1, -1])).unwrap());
        assert!(!eval(&cusp, &q(&[2, 1])).unwrap());
        assert!(cusp.has_equality());
        assert_eq!(eval(&f, &q(&[0])).unwrap_err().kind(), "ArityMismatch");
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let src = "(and (<= (+ (^ x 2) (^ y 2)) 1) (not (< y -1/2)) (or true (!= (* 3/4 x y) 0)))";
        let f = parse_formula(src).unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        let g = parse_formula("(> (- x3 (* 2 x1)) 0.5)").unwrap();
        assert_eq!(g.arity(), 3);
        for bad in ["(and", "(<= x)", "(<= x y) x", "(^ x y)", "(foo x)", "(<= (^ x y) 1)"] {
            assert_eq!(parse_formula(bad).unwrap_err().kind(), "Parse", "{bad}");
        }
    }

    #[test]
    fn rasterize_examples() {
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![4, 4]).unwrap();
        let none = rasterize(&SAFormula::Const(false), &g, Scheme::Center, Exec::default()).unwrap();
        assert!(none.complex.is_empty());
        let all = rasterize(&SAFormula::Const(true), &g, Scheme::Center, Exec::default()).unwrap();
        assert_eq!(all.included.len(), 16);

        let g = square_grid(frac(1, 2), int(2)).unwrap();
        let f = disk(int(1));
        let r = rasterize(&f, &g, Scheme::Center, Exec::default()).unwrap();
        let oracle = g.top_anchors().iter().filter(|a| {
            let c: Vec<Q> = a.iter().map(|&x| frac(2 * x + 1, 4)).collect();
            &c[0] * &c[0] + &c[1] * &c[1] <= int(1)
        }).count();
        assert_eq!(g.top_anchors().len(), 64);
        assert_eq!(r.included.len(), oracle);
        let seq = rasterize(&f, &g, Scheme::Center, Exec::Sequential).unwrap();
        assert_eq!(seq.included, r.included);
        let inner = rasterize(&f, &g, Scheme::Corners, Exec::default()).unwrap();
        assert!(inner.included.iter().all(|a| r.included.contains(a)));
    }

    #[test]
    fn disk_and_annulus_topology() {
        let g = square_grid(frac(1, 4), frac(5, 4)).unwrap();
        let d = rasterize(&disk(int(1)), &g, Scheme::Center, Exec::default()).unwrap();
        assert_eq!(betti_numbers(&d.complex).unwrap(), vec![1, 0, 0]);
        let a = rasterize(&annulus(frac(1, 2), int(1)), &g, Scheme::Center, Exec::default()).unwrap();
        assert_eq!(betti_numbers(&a.complex).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn thicken_examples() {
        let g = CubicalGrid::boxed(int(1), vec![-3, -3], vec![4, 4]).unwrap();
        let one = CellComplex::cubical_closure(g.clone(), [Cube::top(vec![0, 0])]).unwrap();
        assert_eq!(thicken(&one, 0, Exec::default()).unwrap(), one);
        assert_eq!(thicken(&one, 1, Exec::default()).unwrap().count(2), 9);
        let two = thicken(&one, 2, Exec::default()).unwrap();
        assert_eq!(thicken(&thicken(&one, 1, Exec::default()).unwrap(), 1, Exec::default()).unwrap(), two);
        assert_eq!(thicken(&one, 4, Exec::default()).unwrap_err().kind(), "BBoxOverflow");
        let v = CellComplex::cubical_closure(g, [Cube::new(vec![0, 0], vec![]).unwrap()]).unwrap();
        assert_eq!(thicken(&v, 1, Exec::default()).unwrap().count(2), 4);
    }

    #[test]
    fn thicken_annulus_shrinks_hole() {
        let g = square_grid(frac(1, 4), frac(3, 2)).unwrap();
        let a = rasterize(&annulus(frac(1, 2), int(1)), &g, Scheme::Center, Exec::default()).unwrap();
        let t = thicken(&a.complex, 1, Exec::default()).unwrap();
        let holes = |x: &CellComplex| -> usize {
            g.top_anchors().iter().filter(|v| v.iter().all(|&c| (-2..2).contains(&c)) && !x.contains(&Cell::Cube(Cube::top(v.to_vec())))).count()
        };
        assert!(holes(&t) < holes(&a.complex));
        for v in g.top_anchors() {
            let inside = a.included.iter().any(|w| w.iter().zip(&v).all(|(x, y)| (x - y).abs() <= 1));
            assert_eq!(t.contains(&Cell::Cube(Cube::top(v.clone()))), inside);
        }
    }

    #[test]
    fn distance_examples() {
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![8, 8]).unwrap();
        let only = |a: Vec<i64>| vec![a];
        let (lo, hi) = distance_to_cells(&[frac(1, 2), frac(1, 2)], &g, &only(vec![0, 0]), Exec::default()).unwrap();
        assert_eq!(lo, int(0));
        assert!(hi <= frac(3, 2));
        let p = [frac(7, 2), frac(1, 2)];
        let (lo, hi) = distance_to_cells(&p, &g, &only(vec![0, 0]), Exec::default()).unwrap();
        assert!(lo >= int(2) && hi <= int(4) * int(2));
        assert_eq!(distance_to_cells(&p, &g, &[], Exec::default()).unwrap_err().kind(), "EmptySet");
        let full = distance_estimate(&[int(3), int(3)], &SAFormula::Const(true), &g, Exec::default()).unwrap();
        assert_eq!(full.0, int(0));
    }
}
