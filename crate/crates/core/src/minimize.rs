//! Mass-minimizing representatives of a homology class and the discrete
//! systole.
//!
//! For a k-cycle `z` we look for an integer (k+1)-chain `y` minimizing
//! `mass(z + ∂y) = Σ wᵢ |(z + D y)ᵢ|`. Written with `y = u − v` and
//! `z + D y = p − n` this is the linear program
//!
//! ```text
//! min Σ wᵢ (pᵢ + nᵢ)   s.t.   D u − D v − p + n = −z,   u, v, p, n ≥ 0
//! ```
//!
//! When `D` is totally unimodular every basic optimum is integral and one
//! simplex solve suffices. Otherwise the program is solved as an integer
//! program by best-first branch and bound. Everything is exact rational
//! arithmetic.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::chain::Chain;
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::homology::homology;
use crate::matrix::IntMatrix;
use crate::rational::{self, Q};
use crate::snf;

/// Default branch-and-bound / exhaustive node budget.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;
/// Largest matrix side for which all square minors are enumerated.
pub const TU_MINOR_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    Lp,
    Ilp,
    Exhaustive,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "lp" => Ok(Method::Lp),
            "ilp" => Ok(Method::Ilp),
            "exhaustive" => Ok(Method::Exhaustive),
            _ => Err(format!("unknown method {s:?} (auto, lp, ilp, exhaustive)")),
        }
    }
}

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solved {
    LpTu,
    Ilp,
    Exhaustive,
}

impl fmt::Display for Solved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solved::LpTu => "lp-tu",
            Solved::Ilp => "ilp",
            Solved::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub method: Method,
    pub node_budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { method: Method::Auto, node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Debug, Clone)]
pub struct OhcpInstance<'a> {
    pub complex: &'a CellComplex,
    pub z: Chain,
}

impl<'a> OhcpInstance<'a> {
    pub fn new(complex: &'a CellComplex, z: Chain) -> Result<Self> {
        complex.check_chain(&z)?;
        if z.dim() > 0 && !complex.boundary(&z)?.is_zero() {
            return Err(Error::NotACycle(format!("boundary of the {}-chain is nonzero", z.dim())));
        }
        Ok(OhcpInstance { complex, z })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizeResult {
    pub minimizer: Chain,
    /// `minimizer = z + ∂witness`
    pub witness: Chain,
    pub method: Solved,
    pub optimal_mass: Q,
    /// LP solves (or search nodes for the exhaustive method).
    pub nodes: usize,
    /// False when the node budget ran out; the minimizer is then the best
    /// incumbent found.
    pub optimal: bool,
}

impl MinimizeResult {
    pub fn report(&self) -> String {
        format!("optimal_mass={} method={} nodes={}", rational::fmt(&self.optimal_mass), self.method, self.nodes)
    }
}

// ---------------------------------------------------------------------------
// exact simplex

#[derive(Debug, Clone, PartialEq)]
enum Lp {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

/// `min c·x` subject to `A x = b`, `x ≥ 0`; two-phase tableau simplex with
/// Bland's rule.
fn simplex(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Lp {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = Vec::with_capacity(width);
            row.extend(a[i].iter().map(|x| if flip { -x } else { x.clone() }));
            row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row.push(if flip { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimize the sum of artificials
    let mut obj: Vec<Q> = vec![Q::zero(); width];
    for j in n..n + m {
        obj[j] = Q::one();
    }
    price_out(&mut obj, &t, &basis);
    if run(&mut t, &mut obj, &mut basis, n + m).is_err() {
        unreachable!("phase one is bounded below by zero");
    }
    if obj[width - 1] != Q::zero() {
        return Lp::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            match (0..n).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut obj, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // phase two
    let mut obj: Vec<Q> = vec![Q::zero(); width];
    obj[..n].clone_from_slice(c);
    price_out(&mut obj, &t, &basis);
    if run(&mut t, &mut obj, &mut basis, n).is_err() {
        return Lp::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &j) in basis.iter().enumerate() {
        x[j] = t[r][width - 1].clone();
    }
    let value = x.iter().zip(c).map(|(x, c)| x * c).sum();
    Lp::Optimal { x, value }
}

/// Makes the objective row zero on basic columns. The last entry holds the
/// negated objective value.
fn price_out(obj: &mut [Q], t: &[Vec<Q>], basis: &[usize]) {
    for (r, &j) in basis.iter().enumerate() {
        if !obj[j].is_zero() {
            let f = obj[j].clone();
            for (o, x) in obj.iter_mut().zip(&t[r]) {
                *o -= &f * x;
            }
        }
    }
}

fn pivot(t: &mut [Vec<Q>], obj: &mut [Q], basis: &mut [usize], r: usize, j: usize) {
    let inv = t[r][j].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[j].is_zero() {
            let f = row[j].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    if !obj[j].is_zero() {
        let f = obj[j].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
    }
    basis[r] = j;
}

/// Bland's rule iterations over columns `0..cols`. `Err` means unbounded.
fn run(t: &mut [Vec<Q>], obj: &mut [Q], basis: &mut [usize], cols: usize) -> std::result::Result<(), ()> {
    let last = obj.len() - 1;
    loop {
        let Some(j) = (0..cols).find(|&j| obj[j].is_negative()) else { return Ok(()) };
        let mut best: Option<(Q, usize, usize)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[last] / &row[j];
                let better = match &best {
                    None => true,
                    Some((q, _, b)) => ratio < *q || (ratio == *q && basis[r] < *b),
                };
                if better {
                    best = Some((ratio, r, basis[r]));
                }
            }
        }
        let Some((_, r, _)) = best else { return Err(()) };
        pivot(t, obj, basis, r, j);
    }
}

// ---------------------------------------------------------------------------
// the boundary program

struct Program {
    /// `D_{k+1}` columns: (k-cell index, sign)
    cols: Vec<Vec<(usize, i64)>>,
    z: Vec<i64>,
    w: Vec<Q>,
}

impl Program {
    fn new(inst: &OhcpInstance) -> Self {
        let x = inst.complex;
        let k = inst.z.dim();
        let cols = x.boundary_matrix(k + 1).columns;
        let z = x.to_vector(&inst.z).expect("instance chain lies in the complex");
        let w = (0..x.count(k)).map(|i| x.weight_of(&x.cells(k)[i]).expect("cell weight")).collect();
        Program { cols, z, w }
    }

    fn image(&self, y: &[i64]) -> Vec<i64> {
        let mut out = self.z.clone();
        for (col, &c) in self.cols.iter().zip(y) {
            for &(i, s) in col {
                out[i] += s * c;
            }
        }
        out
    }

    fn mass(&self, v: &[i64]) -> Q {
        v.iter().zip(&self.w).map(|(&x, w)| w * rational::int(x.abs())).sum()
    }

    /// LP relaxation with optional integer bounds on `y`.
    fn relax(&self, lo: &BTreeMap<usize, i64>, hi: &BTreeMap<usize, i64>) -> Option<(Vec<Q>, Q)> {
        let ny = self.cols.len();
        let nk = self.z.len();
        let extra = lo.len() + hi.len();
        let n = 2 * ny + 2 * nk + extra;
        let mut a = vec![vec![Q::zero(); n]; nk + extra];
        let mut b = vec![Q::zero(); nk + extra];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, s) in col {
                a[i][j] = rational::int(s);
                a[i][ny + j] = rational::int(-s);
            }
        }
        for i in 0..nk {
            a[i][2 * ny + i] = -Q::one();
            a[i][2 * ny + nk + i] = Q::one();
            b[i] = rational::int(-self.z[i]);
        }
        let bounds = lo.iter().map(|(&j, &v)| (j, v, -1)).chain(hi.iter().map(|(&j, &v)| (j, v, 1)));
        for (e, (j, v, slack)) in bounds.enumerate() {
            let r = nk + e;
            a[r][j] = Q::one();
            a[r][ny + j] = -Q::one();
            a[r][2 * ny + 2 * nk + e] = rational::int(slack);
            b[r] = rational::int(v);
        }
        let mut c = vec![Q::zero(); n];
        for i in 0..nk {
            c[2 * ny + i] = self.w[i].clone();
            c[2 * ny + nk + i] = self.w[i].clone();
        }
        match simplex(&a, &b, &c) {
            Lp::Optimal { x, value } => Some(((0..ny).map(|j| &x[j] - &x[ny + j]).collect(), value)),
            Lp::Infeasible => None,
            Lp::Unbounded => unreachable!("mass is bounded below"),
        }
    }
}

fn integral(y: &[Q]) -> Option<Vec<i64>> {
    y.iter().map(|v| v.is_integer().then(|| v.to_integer().to_i64()).flatten()).collect()
}

/// Index of the most fractional entry, ties by lowest index.
fn most_fractional(y: &[Q]) -> Option<usize> {
    let half = rational::frac(1, 2);
    y.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_integer())
        .map(|(j, v)| ((v.fract().abs() - &half).abs(), j))
        .min()
        .map(|(_, j)| j)
}

struct Outcome {
    y: Vec<i64>,
    nodes: usize,
    optimal: bool,
}

fn branch_and_bound(p: &Program, budget: usize) -> Outcome {
    let mut best_y = vec![0; p.cols.len()];
    let mut best = p.mass(&p.z);
    let mut nodes = 0;
    let mut heap = BinaryHeap::new();
    type Node = (BTreeMap<usize, i64>, BTreeMap<usize, i64>, Vec<Q>);
    let mut store: Vec<Node> = vec![];
    let visit = |lo: BTreeMap<usize, i64>, hi: BTreeMap<usize, i64>, nodes: &mut usize, heap: &mut BinaryHeap<Reverse<(Q, usize)>>, store: &mut Vec<Node>, best: &Q| {
        *nodes += 1;
        if let Some((y, value)) = p.relax(&lo, &hi) {
            if value < *best {
                heap.push(Reverse((value, store.len())));
                store.push((lo, hi, y));
            }
        }
    };
    visit(BTreeMap::new(), BTreeMap::new(), &mut nodes, &mut heap, &mut store, &best);
    let mut optimal = true;
    while let Some(Reverse((value, id))) = heap.pop() {
        if value >= best {
            continue;
        }
        let (lo, hi, y) = store[id].clone();
        match most_fractional(&y) {
            None => {
                let yi = integral(&y).expect("integral relaxation");
                best = p.mass(&p.image(&yi));
                best_y = yi;
            }
            Some(j) => {
                if nodes + 2 > budget {
                    optimal = false;
                    break;
                }
                let f = y[j].floor().to_integer().to_i64().expect("bounded branch value");
                let mut h = hi.clone();
                h.insert(j, f);
                visit(lo.clone(), h, &mut nodes, &mut heap, &mut store, &best);
                let mut l = lo.clone();
                l.insert(j, f + 1);
                visit(l, hi, &mut nodes, &mut heap, &mut store, &best);
            }
        }
    }
    Outcome { y: best_y, nodes, optimal }
}

/// Coefficient box for the exhaustive search: `ceil(mass(z) / min weight)`.
pub fn coefficient_box(complex: &CellComplex, z: &Chain) -> i64 {
    let Some(w) = complex.min_weight(z.dim()) else { return 0 };
    let m = z.mass(complex) / w;
    m.ceil().to_integer().to_i64().expect("coefficient box fits in i64")
}

/// Depth-first search over every `y ∈ [−B, B]^N`, pruned only by the mass of
/// k-cells whose cofaces are all fixed.
fn exhaustive_search(p: &Program, bound: i64, budget: usize) -> Outcome {
    let ny = p.cols.len();
    let nk = p.z.len();
    let mut last = vec![None; nk];
    for (j, col) in p.cols.iter().enumerate() {
        for &(i, _) in col {
            last[i] = Some(j);
        }
    }
    let mut finals: Vec<Vec<usize>> = vec![vec![]; ny];
    let mut partial = Q::zero();
    for i in 0..nk {
        match last[i] {
            Some(j) => finals[j].push(i),
            None => partial += &p.w[i] * rational::int(p.z[i].abs()),
        }
    }
    let values: Vec<i64> = std::iter::once(0).chain((1..=bound).flat_map(|v| [v, -v])).collect();
    struct State<'a> {
        p: &'a Program,
        finals: Vec<Vec<usize>>,
        values: Vec<i64>,
        cur: Vec<i64>,
        y: Vec<i64>,
        best: Q,
        best_y: Vec<i64>,
        nodes: usize,
        budget: usize,
        exhausted: bool,
    }
    fn go(s: &mut State, d: usize, partial: Q) {
        if partial >= s.best || s.exhausted {
            return;
        }
        if d == s.y.len() {
            s.best = partial;
            s.best_y = s.y.clone();
            return;
        }
        for vi in 0..s.values.len() {
            s.nodes += 1;
            if s.nodes > s.budget {
                s.exhausted = true;
                return;
            }
            let v = s.values[vi];
            for &(i, sign) in &s.p.cols[d] {
                s.cur[i] += sign * v;
            }
            s.y[d] = v;
            let add: Q = s.finals[d].iter().map(|&i| &s.p.w[i] * rational::int(s.cur[i].abs())).sum();
            go(s, d + 1, &partial + add);
            for &(i, sign) in &s.p.cols[d] {
                s.cur[i] -= sign * v;
            }
        }
        s.y[d] = 0;
    }
    let mut s = State {
        p,
        finals,
        values,
        cur: p.z.clone(),
        y: vec![0; ny],
        best: p.mass(&p.z),
        best_y: vec![0; ny],
        nodes: 0,
        budget,
        exhausted: false,
    };
    // y = 0 is the starting incumbent; the search looks for strictly better
    go(&mut s, 0, partial);
    Outcome { y: s.best_y, nodes: s.nodes, optimal: !s.exhausted }
}

/// Solves an instance, returning the best incumbent with `optimal = false`
/// when the node budget runs out.
pub fn minimize(inst: &OhcpInstance, opts: Options) -> Result<MinimizeResult> {
    let x = inst.complex;
    let k = inst.z.dim();
    let p = Program::new(inst);
    let (out, method) = match opts.method {
        Method::Exhaustive => (exhaustive_search(&p, coefficient_box(x, &inst.z), opts.node_budget), Solved::Exhaustive),
        Method::Lp => {
            let (y, _) = p.relax(&BTreeMap::new(), &BTreeMap::new()).expect("y = 0 is feasible");
            let y = integral(&y).ok_or_else(|| Error::Infeasible("LP optimum is fractional; use --method ilp".into()))?;
            (Outcome { y, nodes: 1, optimal: true }, Solved::LpTu)
        }
        Method::Auto if is_totally_unimodular(&x.dense_boundary(k + 1)) => {
            let (y, _) = p.relax(&BTreeMap::new(), &BTreeMap::new()).expect("y = 0 is feasible");
            match integral(&y) {
                Some(y) => (Outcome { y, nodes: 1, optimal: true }, Solved::LpTu),
                None => (branch_and_bound(&p, opts.node_budget), Solved::Ilp),
            }
        }
        Method::Auto | Method::Ilp => (branch_and_bound(&p, opts.node_budget), Solved::Ilp),
    };
    let witness = x.from_vector(k + 1, &out.y);
    let image = p.image(&out.y);
    let minimizer = x.from_vector(k, &image);
    Ok(MinimizeResult { optimal_mass: p.mass(&image), minimizer, witness, method, nodes: out.nodes, optimal: out.optimal })
}

/// Mass-minimizing representative of `[z]`. Running out of nodes is an error.
pub fn optimal_homologous(inst: &OhcpInstance, opts: Options) -> Result<MinimizeResult> {
    let r = minimize(inst, opts)?;
    if !r.optimal {
        return Err(Error::SolverLimit { budget: opts.node_budget, incumbent: rational::fmt(&r.optimal_mass) });
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// total unimodularity

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tu {
    Yes,
    No,
    Unknown,
}

/// Entries in `{−1, 0, 1}` first; then every square minor when both sides
/// are at most [`TU_MINOR_CAP`]; then the two-nonzeros-per-column
/// characterization on `A` or `Aᵀ`.
pub fn total_unimodularity(a: &IntMatrix) -> Tu {
    let unit = |x: &BigInt| x.abs() <= BigInt::one();
    if !(0..a.rows()).all(|i| a.row(i).iter().all(unit)) {
        return Tu::No;
    }
    if a.rows() <= TU_MINOR_CAP && a.cols() <= TU_MINOR_CAP {
        return if all_minors_unit(a) { Tu::Yes } else { Tu::No };
    }
    for m in [a.clone(), a.transpose()] {
        if let Some(ok) = two_per_column(&m) {
            return if ok { Tu::Yes } else { Tu::No };
        }
    }
    Tu::Unknown
}

/// `Unknown` counts as false.
pub fn is_totally_unimodular(a: &IntMatrix) -> bool {
    total_unimodularity(a) == Tu::Yes
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

fn all_minors_unit(a: &IntMatrix) -> bool {
    (2..=a.rows().min(a.cols())).all(|k| {
        let cols = subsets(a.cols(), k);
        subsets(a.rows(), k).iter().all(|r| cols.iter().all(|c| a.select(r, c).det().abs() <= BigInt::one()))
    })
}

/// For a `{0, ±1}` matrix with at most two nonzeros per column: TU iff the
/// rows split in two so that equal-sign pairs are split and opposite-sign
/// pairs are not. `None` if some column has three or more nonzeros.
fn two_per_column(a: &IntMatrix) -> Option<bool> {
    let mut edges: Vec<Vec<(usize, bool)>> = vec![vec![]; a.rows()];
    for j in 0..a.cols() {
        let nz: Vec<(usize, BigInt)> = a.column(j).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        match nz.as_slice() {
            [] | [_] => {}
            [(r, x), (s, y)] => {
                let split = x == y;
                edges[*r].push((*s, split));
                edges[*s].push((*r, split));
            }
            _ => return None,
        }
    }
    let mut side: Vec<Option<bool>> = vec![None; a.rows()];
    for start in 0..a.rows() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            let sr = side[r].unwrap();
            for &(s, split) in &edges[r] {
                let want = sr ^ split;
                match side[s] {
                    None => {
                        side[s] = Some(want);
                        stack.push(s);
                    }
                    Some(v) if v != want => return Some(false),
                    _ => {}
                }
            }
        }
    }
    Some(true)
}

// ---------------------------------------------------------------------------
// systole

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Systole {
    pub mass: Q,
    pub cycle: Chain,
    /// free coordinates then torsion residues of the realizing class
    pub pattern: Vec<i64>,
}

/// Minimal mass of a non-bounding k-cycle, searched over class patterns with
/// free coordinates in `[−box, box]` and all torsion residues. `None` when
/// `H_k = 0`.
pub fn systole(x: &CellComplex, k: usize, coord_box: i64, opts: Options, exec: Exec) -> Result<Option<Systole>> {
    let h = homology(x, k)?;
    if h.is_trivial() {
        return Ok(None);
    }
    let torsion = h.torsion_i64();
    let mut patterns: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..h.betti {
        patterns = patterns.into_iter().flat_map(|p| (-coord_box..=coord_box).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    for &d in &torsion {
        patterns = patterns.into_iter().flat_map(|p| (0..d).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    patterns.retain(|p| p.iter().any(|&v| v != 0));
    let solved = exec.map(&patterns, |pat| {
        let z = h.representative(&pat[..h.betti], &pat[h.betti..]);
        let inst = OhcpInstance::new(x, z)?;
        optimal_homologous(&inst, opts)
    });
    let mut best: Option<Systole> = None;
    for (pat, r) in patterns.into_iter().zip(solved) {
        let r = r?;
        if best.as_ref().is_none_or(|b| r.optimal_mass < b.mass) {
            best = Some(Systole { mass: r.optimal_mass, cycle: r.minimizer, pattern: pat });
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// the linear system D x = β

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub d: IntMatrix,
    pub beta: Vec<BigInt>,
}

impl LinearSystem {
    /// `D_{k+1} x = β` with `β` the coefficient vector of the k-chain `c`.
    pub fn for_chain(x: &CellComplex, c: &Chain) -> Result<Self> {
        let beta = x.to_vector(c)?.into_iter().map(BigInt::from).collect();
        Ok(LinearSystem { d: x.dense_boundary(c.dim() + 1), beta })
    }
}

/// Some integer solution of `D x = β`, or `None`.
pub fn solve_boundary_system(sys: &LinearSystem) -> Option<Vec<BigInt>> {
    if sys.beta.iter().all(Zero::is_zero) {
        return Some(vec![BigInt::zero(); sys.d.cols()]);
    }
    snf::solve_integer(&sys.d, &sys.beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::Cell;
    use crate::corpus;
    use crate::grid::CubicalGrid;
    use crate::homology::is_boundary;
    use crate::rational::int;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simplex_small() {
        // min −x − y  s.t. x + 2y + s = 4, 3x + y + t = 6
        let a = vec![q(&[1, 2, 1, 0]), q(&[3, 1, 0, 1])];
        match simplex(&a, &q(&[4, 6]), &q(&[-1, -1, 0, 0])) {
            Lp::Optimal { x, value } => {
                assert_eq!(value, rational::frac(-14, 5));
                assert_eq!(&x[..2], &[rational::frac(8, 5), rational::frac(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(simplex(&[q(&[1, 1])], &q(&[-1]), &q(&[0, 0])), Lp::Infeasible);
        assert_eq!(simplex(&[q(&[1, -1])], &q(&[0]), &q(&[-1, 0])), Lp::Unbounded);
        // redundant row
        let a = vec![q(&[1, 1]), q(&[2, 2])];
        assert!(matches!(simplex(&a, &q(&[1, 2]), &q(&[1, 2])), Lp::Optimal { value, .. } if value == int(1)));
    }

    #[test]
    fn tu_examples() {
        let interval = IntMatrix::from_rows(&[vec![1, 1, 1, 0, 0], vec![0, 1, 1, 1, 0], vec![0, 0, 1, 1, 1]]);
        assert_eq!(total_unimodularity(&interval), Tu::Yes);
        let odd = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(odd.det(), BigInt::from(2));
        assert_eq!(total_unimodularity(&odd), Tu::No);
        assert_eq!(total_unimodularity(&IntMatrix::zeros(0, 0)), Tu::Yes);
        assert_eq!(total_unimodularity(&IntMatrix::from_rows(&[vec![2]])), Tu::No);
        let planar = corpus::holed_box(4, 1, 2).dense_boundary(2);
        assert_eq!(total_unimodularity(&planar), Tu::Yes);
        let rp2 = corpus::projective_plane().dense_boundary(2);
        assert_ne!(total_unimodularity(&rp2), Tu::Yes);
    }

    fn ring() -> CellComplex {
        corpus::holed_box(4, 1, 2)
    }

    fn loop_at(x: &CellComplex, lo: i64, hi: i64) -> Chain {
        let sq = CellComplex::full_grid(corpus::unit_grid(vec![lo, lo], vec![hi, hi])).unwrap();
        let z = sq.boundary(&sq.full_chain(2)).unwrap();
        x.check_chain(&z).unwrap();
        z
    }

    #[test]
    fn annulus_outer_to_inner() {
        let x = ring();
        let outer = loop_at(&x, 0, 4);
        let inner = loop_at(&x, 1, 3);
        let inst = OhcpInstance::new(&x, outer.clone()).unwrap();
        for method in [Method::Auto, Method::Ilp, Method::Exhaustive] {
            let r = optimal_homologous(&inst, Options { method, ..Options::default() }).unwrap();
            assert_eq!(r.optimal_mass, int(8), "{method:?}");
            assert_eq!(r.minimizer, inner);
            assert_eq!(x.boundary(&r.witness).unwrap(), &r.minimizer - &outer);
        }
        let auto = optimal_homologous(&inst, Options::default()).unwrap();
        assert_eq!(auto.method, Solved::LpTu);
        assert_eq!(auto.report(), "optimal_mass=8 method=lp-tu nodes=1");
    }

    #[test]
    fn trivial_and_minimal_inputs() {
        let x = ring();
        let y0 = Chain::cell(Cell::Cube(x.cells(2)[0].as_cube().unwrap().clone()), 1);
        let z = x.boundary(&y0).unwrap();
        let r = optimal_homologous(&OhcpInstance::new(&x, z).unwrap(), Options::default()).unwrap();
        assert_eq!(r.optimal_mass, int(0));
        assert!(r.minimizer.is_zero());
        let inner = loop_at(&x, 1, 3);
        let r = optimal_homologous(&OhcpInstance::new(&x, inner).unwrap(), Options::default()).unwrap();
        assert_eq!(r.optimal_mass, int(8));
        let bad = Chain::cell(x.cells(1)[0].clone(), 1);
        assert_eq!(OhcpInstance::new(&x, bad).unwrap_err().kind(), "NotACycle");
    }

    #[test]
    fn non_tu_instance_uses_branch_and_bound() {
        let x = corpus::projective_plane();
        let h = homology(&x, 1).unwrap();
        let z = h.representative(&[], &[1]).scale(2);
        let r = optimal_homologous(&OhcpInstance::new(&x, z.clone()).unwrap(), Options::default()).unwrap();
        assert_eq!(r.method, Solved::Ilp);
        let e = optimal_homologous(&OhcpInstance::new(&x, z).unwrap(), Options { method: Method::Exhaustive, ..Options::default() }).unwrap();
        assert_eq!(r.optimal_mass, e.optimal_mass);
        assert_eq!(h.class_coordinates(&r.minimizer, &x).unwrap(), h.class_coordinates(&e.minimizer, &x).unwrap());
    }

    #[test]
    fn node_budget() {
        let x = corpus::projective_plane();
        let h = homology(&x, 1).unwrap();
        let z = h.representative(&[], &[1]).scale(5);
        let inst = OhcpInstance::new(&x, z).unwrap();
        let opts = Options { method: Method::Exhaustive, node_budget: 3 };
        assert_eq!(optimal_homologous(&inst, opts).unwrap_err().kind(), "SolverLimit");
        assert!(!minimize(&inst, opts).unwrap().optimal);
    }

    #[test]
    fn systoles() {
        assert_eq!(systole(&corpus::solid_square(), 1, 1, Options::default(), Exec::Sequential).unwrap(), None);
        let x = ring();
        let s = systole(&x, 1, 1, Options::default(), Exec::Parallel).unwrap().unwrap();
        assert_eq!(s.mass, int(8));
        assert!(is_boundary(&s.cycle, &x).unwrap().is_none());
        for (a, b) in [(3, 4), (2, 5), (4, 4)] {
            let t = CellComplex::full_grid(CubicalGrid::torus(&[a, b]).unwrap()).unwrap();
            let s = systole(&t, 1, 1, Options::default(), Exec::Sequential).unwrap().unwrap();
            assert_eq!(s.mass, int(a.min(b)), "{a}x{b}");
        }
    }

    #[test]
    fn boundary_system() {
        let x = ring();
        let zero = LinearSystem::for_chain(&x, &Chain::zero(1)).unwrap();
        assert!(solve_boundary_system(&zero).unwrap().iter().all(Zero::is_zero));
        let col0: Vec<BigInt> = x.dense_boundary(2).column(0);
        let sys = LinearSystem { d: x.dense_boundary(2), beta: col0.clone() };
        let sol = solve_boundary_system(&sys).unwrap();
        assert_eq!(sys.d.mul_vec(&sol), col0);
        let rp2 = corpus::projective_plane();
        let g = homology(&rp2, 1).unwrap().representative(&[], &[1]);
        assert!(solve_boundary_system(&LinearSystem::for_chain(&rp2, &g).unwrap()).is_none());
        assert!(solve_boundary_system(&LinearSystem::for_chain(&rp2, &g.scale(2)).unwrap()).is_some());
    }
}
