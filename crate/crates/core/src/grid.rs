//! The standard cubical decomposition of a box in ℝⁿ.

use num::{One, Signed, Zero};

use crate::cell::{Cell, Cube};
use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Lattice of cubes of side `edge`, shifted by `offset`, restricted to the
/// lattice box `[lo, hi]`. Lattice point `p` sits at `offset + edge * p`.
///
/// An axis with a period wraps around (the box is then `[0, period]` on that
/// axis); this is how flat tori are represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalGrid {
    pub edge: Q,
    pub offset: Vec<Q>,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub period: Vec<Option<i64>>,
}

impl CubicalGrid {
    pub fn new(edge: Q, offset: Vec<Q>, lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        let n = offset.len();
        if n == 0 || lo.len() != n || hi.len() != n {
            return Err(Error::DimensionMismatch("grid vectors must share a positive length".into()));
        }
        if !edge.is_positive() {
            return Err(Error::DimensionMismatch("edge must be positive".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::EmptyBBox);
        }
        Ok(CubicalGrid { edge, offset, lo, hi, period: vec![None; n] })
    }

    /// Unit-offset grid on `[lo, hi]` with the given edge.
    pub fn boxed(edge: Q, lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        let n = lo.len();
        CubicalGrid::new(edge, vec![Q::zero(); n], lo, hi)
    }

    /// Flat torus `ℝⁿ / (periods · ℤⁿ)` with edge 1.
    pub fn torus(periods: &[i64]) -> Result<Self> {
        if periods.iter().any(|&p| p < 1) {
            return Err(Error::EmptyBBox);
        }
        let n = periods.len();
        let mut g = CubicalGrid::boxed(Q::one(), vec![0; n], periods.to_vec())?;
        g.period = periods.iter().map(|&p| Some(p)).collect();
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.period.iter().any(Option::is_some)
    }

    /// Mass weight of a k-cube.
    pub fn weight(&self, k: usize) -> Q {
        num::pow(self.edge.clone(), k)
    }

    pub fn point(&self, lattice: &[i64]) -> Vec<Q> {
        lattice
            .iter()
            .zip(&self.offset)
            .map(|(&p, o)| o + &self.edge * rational::int(p))
            .collect()
    }

    pub fn center(&self, cube: &Cube) -> Vec<Q> {
        let half = rational::frac(1, 2);
        cube.anchor
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut x = rational::int(a);
                if cube.spans(i) {
                    x += &half;
                }
                &self.offset[i] + &self.edge * x
            })
            .collect()
    }

    /// Closed real box `[min, max]` per axis.
    pub fn bounds(&self, cube: &Cube) -> Vec<(Q, Q)> {
        (0..self.dim())
            .map(|i| {
                let a = cube.anchor[i];
                let b = if cube.spans(i) { a + 1 } else { a };
                (&self.offset[i] + &self.edge * rational::int(a), &self.offset[i] + &self.edge * rational::int(b))
            })
            .collect()
    }

    /// Wraps periodic coordinates into `[0, period)`.
    pub fn normalize(&self, mut cube: Cube) -> Cube {
        for (i, p) in self.period.iter().enumerate() {
            if let Some(p) = p {
                cube.anchor[i] = cube.anchor[i].rem_euclid(*p);
            }
        }
        cube
    }

    pub fn contains(&self, cube: &Cube) -> bool {
        cube.ambient() == self.dim()
            && (0..self.dim()).all(|i| {
                let a = cube.anchor[i];
                let b = if cube.spans(i) { a + 1 } else { a };
                match self.period[i] {
                    Some(p) => (0..p).contains(&a),
                    None => a >= self.lo[i] && b <= self.hi[i],
                }
            })
    }

    /// Faces of a cube with incidence signs, wrapped on periodic axes.
    pub fn faces(&self, cube: &Cube) -> Vec<(Cube, i64)> {
        let raw = cube.faces();
        if !self.is_periodic() {
            return raw;
        }
        raw.into_iter().map(|(f, s)| (self.normalize(f), s)).collect()
    }

    pub fn closure(&self, cube: &Cube) -> Vec<Cube> {
        let raw = cube.closure();
        if !self.is_periodic() {
            return raw;
        }
        let mut out: Vec<Cube> = raw.into_iter().map(|c| self.normalize(c)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Number of top cells along each axis.
    pub fn extent(&self) -> Vec<i64> {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).collect()
    }

    /// Anchors of all top-dimensional cubes, in lexicographic order.
    pub fn top_anchors(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut out = vec![];
        let mut cur = self.lo.clone();
        loop {
            out.push(cur.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.hi[i] {
                    break;
                }
                cur[i] = self.lo[i];
            }
        }
    }

    /// Every cube of every dimension inside the box.
    pub fn all_cells(&self) -> Vec<Cell> {
        let mut set = std::collections::BTreeSet::new();
        for a in self.top_anchors() {
            for c in self.closure(&Cube::top(a)) {
                set.insert(c);
            }
        }
        set.into_iter().map(Cell::Cube).collect()
    }

    /// Lattice coordinate of a real point along one axis, if it is a lattice value.
    pub fn lattice_coord(&self, axis: usize, x: &Q) -> Option<i64> {
        let t = (x - &self.offset[axis]) / &self.edge;
        if t.is_integer() {
            num::ToPrimitive::to_i64(&t.to_integer())
        } else {
            None
        }
    }
}
