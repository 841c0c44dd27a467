//! Smith normal form over ℤ with unimodular transforms.
//!
//! The elimination runs on `i64` with checked arithmetic and restarts on
//! `BigInt` the first time an intermediate overflows, so results are always
//! exact. Pivot choice: the nonzero entry of least absolute value, ties
//! broken by lowest `(row, col)`.

use num::{BigInt, CheckedAdd, CheckedMul, CheckedSub, Integer, One, Signed, Zero};

use crate::matrix::IntMatrix;

/// `u · a · v = s` with `u`, `v` unimodular and `s` diagonal,
/// `s[0][0] | s[1][1] | ...`, diagonal entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub s: IntMatrix,
    /// Nonzero diagonal entries, in order; `len()` is the rank.
    pub diag: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Scalar: Clone + Ord + Zero + One + Signed + Integer + CheckedAdd + CheckedMul + CheckedSub {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn from_big(b: &BigInt) -> Option<Self> {
        num::ToPrimitive::to_i64(b).filter(|v| v.unsigned_abs() < 1 << 62)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

struct Dense<T> {
    rows: usize,
    cols: usize,
    d: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn identity(n: usize) -> Self {
        let mut d = vec![T::zero(); n * n];
        for i in 0..n {
            d[i * n + i] = T::one();
        }
        Dense { rows: n, cols: n, d }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.d[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.d.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.d.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let s = &self.d[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let p = q.checked_mul(s).ok_or(Overflow)?;
            let v = self.d[dst * self.cols + j].checked_add(&p).ok_or(Overflow)?;
            self.d[dst * self.cols + j] = T::from_big(&v.to_big()).ok_or(Overflow)?;
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let s = &self.d[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let p = q.checked_mul(s).ok_or(Overflow)?;
            let v = self.d[i * self.cols + dst].checked_add(&p).ok_or(Overflow)?;
            self.d[i * self.cols + dst] = T::from_big(&v.to_big()).ok_or(Overflow)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.d[i * self.cols + j].clone();
            self.d[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.d[i * self.cols + j].clone();
            self.d[i * self.cols + j] = v;
        }
    }

    fn to_int(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).to_big());
            }
        }
        m
    }
}

struct Engine<T> {
    a: Dense<T>,
    u: Dense<T>,
    u_inv: Dense<T>,
    v: Dense<T>,
    v_inv: Dense<T>,
}

impl<T: Scalar> Engine<T> {
    fn new(m: &IntMatrix) -> Option<Self> {
        let (r, c) = (m.rows(), m.cols());
        let mut d = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                d.push(T::from_big(m.get(i, j))?);
            }
        }
        Some(Engine {
            a: Dense { rows: r, cols: c, d },
            u: Dense::identity(r),
            u_inv: Dense::identity(r),
            v: Dense::identity(c),
            v_inv: Dense::identity(c),
        })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let nq = -q.clone();
        self.a.add_row(dst, src, &nq)?;
        self.u.add_row(dst, src, &nq)?;
        self.u_inv.add_col(src, dst, q)
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let nq = -q.clone();
        self.a.add_col(dst, src, &nq)?;
        self.v.add_col(dst, src, &nq)?;
        self.v_inv.add_row(src, dst, q)
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                    best = Some((ax, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> Result<(), Overflow> {
        let n = self.a.rows.min(self.a.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_in(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                // clear column t below the pivot
                for i in t + 1..self.a.rows {
                    if self.a.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.at(i, t).div_floor(self.a.at(t, t));
                    self.sub_row(i, t, &q)?;
                    if !self.a.at(i, t).is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..self.a.cols {
                    if self.a.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.at(t, j).div_floor(self.a.at(t, t));
                    self.sub_col(j, t, &q)?;
                    if !self.a.at(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    self.repivot_line(t);
                    continue;
                }
                // divisibility: fold an offending row into row t
                let p = self.a.at(t, t).clone();
                let bad = (t + 1..self.a.rows).find(|&i| (t + 1..self.a.cols).any(|j| !self.a.at(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let mone = -T::one();
                        self.sub_row(t, i, &mone)?;
                    }
                    None => break,
                }
            }
            if self.a.at(t, t).is_negative() {
                self.negate_row(t);
            }
        }
        Ok(())
    }

    /// Moves the smallest nonzero entry of row t / column t into the pivot.
    fn repivot_line(&mut self, t: usize) {
        let mut best: Option<(T, usize, usize)> = None;
        let cands = (t..self.a.rows).map(|i| (i, t)).chain((t + 1..self.a.cols).map(|j| (t, j)));
        let mut cands: Vec<(usize, usize)> = cands.collect();
        cands.sort_unstable();
        for (i, j) in cands {
            let x = self.a.at(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                best = Some((ax, i, j));
            }
        }
        if let Some((_, i, j)) = best {
            self.swap_rows(t, i);
            self.swap_cols(t, j);
        }
    }

    fn finish(self) -> SnfResult {
        let n = self.a.rows.min(self.a.cols);
        let diag = (0..n).map(|i| self.a.at(i, i).to_big()).take_while(|d| !d.is_zero()).collect();
        SnfResult {
            u: self.u.to_int(),
            u_inv: self.u_inv.to_int(),
            v: self.v.to_int(),
            v_inv: self.v_inv.to_int(),
            s: self.a.to_int(),
            diag,
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    if let Some(mut e) = Engine::<i64>::new(a) {
        if e.run().is_ok() {
            return e.finish();
        }
    }
    let mut e = Engine::<BigInt>::new(a).expect("BigInt always converts");
    match e.run() {
        Ok(()) => e.finish(),
        Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
    }
}

/// Some integer `x` with `a · x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let snf = smith_normal_form(a);
    solve_with(&snf, b)
}

/// Solves `a · x = b` reusing a precomputed decomposition of `a`.
pub fn solve_with(snf: &SnfResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut t = vec![BigInt::zero(); snf.v.rows()];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&snf.diag[i]);
        if !rem.is_zero() {
            return None;
        }
        t[i] = q;
    }
    Some(snf.v.mul_vec(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.s, "U A V = S");
        assert!(r.u.det().abs().is_one() && r.v.det().abs().is_one());
        assert_eq!(r.u.mul(&r.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(r.v.mul(&r.v_inv), IntMatrix::identity(a.cols()));
        for w in r.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s.get(i, j).is_zero());
                }
            }
        }
        r
    }

    #[test]
    fn identity_and_zero() {
        let r = check(&IntMatrix::identity(3));
        assert_eq!(r.diag, vec![BigInt::one(); 3]);
        let r = check(&IntMatrix::zeros(2, 3));
        assert!(r.diag.is_empty());
        let r = check(&IntMatrix::zeros(0, 0));
        assert!(r.diag.is_empty());
    }

    #[test]
    fn two_by_two() {
        let r = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(r.diag, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 61;
        let r = check(&IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 3, big + 5]]));
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(solve_integer(&a, &b(&[4, 9])), Some(b(&[2, 3])));
        assert_eq!(solve_integer(&a, &b(&[1, 0])), None);
    }
}
