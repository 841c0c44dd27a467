//! Integer chains: finite sums of oriented cells with nonzero coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::Zero;

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::grid::CubicalGrid;
use crate::rational::{self, Q};

/// A k-chain in canonical sparse form. Equality is equality of term maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Cell, i64>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, terms: BTreeMap::new() }
    }

    pub fn cell(cell: Cell, coeff: i64) -> Self {
        let mut c = Chain::zero(cell.dim());
        c.add_term(cell, coeff);
        c
    }

    /// Sums the given terms; all cells must have dimension `dim`.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Cell, i64)>) -> Result<Self> {
        let mut c = Chain::zero(dim);
        for (cell, coeff) in terms {
            if cell.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "cell {cell} has dimension {}, chain has {dim}",
                    cell.dim()
                )));
            }
            c.add_term(cell, coeff);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, cell: &Cell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cell, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.terms.keys()
    }

    /// Adds `coeff · cell`, dropping the term if it cancels.
    pub fn add_term(&mut self, cell: Cell, coeff: i64) {
        debug_assert_eq!(cell.dim(), self.dim);
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(cell) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(coeff).expect("chain coefficient overflow");
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, m: i64) -> Chain {
        if m == 0 {
            return Chain::zero(self.dim);
        }
        Chain {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(c, &k)| (c.clone(), k.checked_mul(m).expect("chain coefficient overflow")))
                .collect(),
        }
    }

    /// Terms whose cell satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&Cell) -> bool) -> Chain {
        Chain {
            dim: self.dim,
            terms: self.terms.iter().filter(|(c, _)| keep(c)).map(|(c, &k)| (c.clone(), k)).collect(),
        }
    }

    /// Boundary using the intrinsic cell incidences (no periodic wrap).
    pub fn boundary(&self) -> Result<Chain> {
        self.boundary_with(|cell| cell.faces())
    }

    /// Boundary with a caller-supplied incidence rule.
    pub fn boundary_with(&self, faces: impl Fn(&Cell) -> Vec<(Cell, i64)>) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::ZeroDimBoundary);
        }
        let mut out = Chain::zero(self.dim - 1);
        for (cell, k) in self.iter() {
            for (face, s) in faces(cell) {
                out.add_term(face, s * k);
            }
        }
        Ok(out)
    }

    /// `Σ |coeff| · weight(cell)`.
    pub fn mass(&self, weights: &impl CellWeights) -> Q {
        self.iter()
            .map(|(c, k)| weights.weight(c) * rational::int(k.abs()))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> i64 {
        self.terms.values().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// Applies a linear map cell-by-cell and sums the images.
    pub fn map_cells(&self, dim: usize, mut f: impl FnMut(&Cell) -> Result<Vec<(Cell, i64)>>) -> Result<Chain> {
        let mut out = Chain::zero(dim);
        for (cell, k) in self.iter() {
            for (img, s) in f(cell)? {
                out.add_term(img, s * k);
            }
        }
        Ok(out)
    }
}

/// Per-cell mass weights.
pub trait CellWeights {
    fn weight(&self, cell: &Cell) -> Q;
}

impl CellWeights for CubicalGrid {
    fn weight(&self, cell: &Cell) -> Q {
        self.weight(cell.dim())
    }
}

impl<F: Fn(&Cell) -> Q> CellWeights for F {
    fn weight(&self, cell: &Cell) -> Q {
        self(cell)
    }
}

/// Weight 1 on every cell.
pub struct UnitWeights;

impl CellWeights for UnitWeights {
    fn weight(&self, _: &Cell) -> Q {
        rational::int(1)
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Chain {
    type Output = Chain;
    fn add(mut self, rhs: Chain) -> Chain {
        self += &rhs;
        self
    }
}

impl Sub for Chain {
    type Output = Chain;
    fn sub(mut self, rhs: Chain) -> Chain {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            self.dim = rhs.dim;
        }
        assert_eq!(self.dim, rhs.dim, "adding chains of different dimension");
        for (c, k) in rhs.iter() {
            self.add_term(c.clone(), k);
        }
    }
}

impl SubAssign<&Chain> for Chain {
    fn sub_assign(&mut self, rhs: &Chain) {
        *self += &(-rhs);
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scale(-1)
    }
}

impl Neg for Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scale(-1)
    }
}

impl Mul<i64> for &Chain {
    type Output = Chain;
    fn mul(self, m: i64) -> Chain {
        self.scale(m)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(c, k)| format!("{k}[{c}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `mass(c)` as a free function.
pub fn mass(c: &Chain, weights: &impl CellWeights) -> Q {
    c.mass(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn edge(a: Vec<i64>, axis: usize) -> Cell {
        Cell::cube(a, vec![axis])
    }

    #[test]
    fn edge_boundary() {
        let c = Chain::cell(edge(vec![0, 0], 0), 1);
        let b = c.boundary().unwrap();
        let expect = Chain::from_terms(0, [(Cell::cube(vec![1, 0], vec![]), 1), (Cell::cube(vec![0, 0], vec![]), -1)]).unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn square_boundary_and_dd() {
        let sq = Chain::cell(Cell::cube(vec![0, 0], vec![0, 1]), 1);
        let b = sq.boundary().unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.boundary().unwrap().is_zero());
    }

    #[test]
    fn adjacent_squares_share_edge() {
        // [0,1]x[0,1] + [1,2]x[0,1]: the edge x=1 cancels, leaving the 6-edge loop
        let c = Chain::from_terms(2, [(Cell::cube(vec![0, 0], vec![0, 1]), 1), (Cell::cube(vec![1, 0], vec![0, 1]), 1)]).unwrap();
        let b = c.boundary().unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.coeff(&edge(vec![1, 0], 1)), 0);
        let expect = Chain::from_terms(
            1,
            [
                (edge(vec![0, 0], 0), 1),
                (edge(vec![1, 0], 0), 1),
                (edge(vec![2, 0], 1), 1),
                (edge(vec![1, 1], 0), -1),
                (edge(vec![0, 1], 0), -1),
                (edge(vec![0, 0], 1), -1),
            ],
        )
        .unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn zero_dim_boundary_rejected() {
        let v = Chain::cell(Cell::cube(vec![0], vec![]), 1);
        assert_eq!(v.boundary(), Err(Error::ZeroDimBoundary));
    }

    #[test]
    fn mass_examples() {
        let g = CubicalGrid::boxed(frac(1, 2), vec![0, 0], vec![4, 4]).unwrap();
        assert_eq!(Chain::cell(edge(vec![0, 0], 0), 3).mass(&g), frac(3, 2));
        assert_eq!(Chain::zero(1).mass(&g), int(0));
        let g1 = CubicalGrid::boxed(int(1), vec![0, 0], vec![4, 4]).unwrap();
        let c = Chain::from_terms(2, [(Cell::cube(vec![0, 0], vec![0, 1]), 1), (Cell::cube(vec![1, 0], vec![0, 1]), -2)]).unwrap();
        assert_eq!(c.mass(&g1), int(3));
    }

    #[test]
    fn arithmetic_cancels() {
        let c = Chain::cell(edge(vec![0, 0], 0), 2);
        assert!((&c - &c).is_zero());
        assert_eq!(&c + &c, c.scale(2));
        assert!(c.scale(0).is_zero());
    }
}
