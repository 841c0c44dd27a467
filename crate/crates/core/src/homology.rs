//! Integral homology of cell complexes and of pairs, via Smith normal form.
//!
//! For a pair `(X, A)` the chain groups are spanned by the cells of `X` not
//! in `A`, with boundaries taken modulo `A`; `A = ∅` gives absolute homology.
//!
//! With `D_k = U⁻¹ S V⁻¹`, the last columns of `V` form a lattice basis `Z` of
//! the cycles. Writing `D_{k+1} = Z · M` and reducing `M` gives a basis of
//! `Z` adapted to the boundaries: unit factors are boundaries, factors > 1
//! are torsion generators, and the remaining columns are free generators.

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::cell::Cell;
use crate::chain::Chain;
use crate::complex::{CellComplex, Geometry};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::IntMatrix;
use crate::snf::{smith_normal_form, solve_integer};

/// A subcomplex `sub ⊆ ambient`.
#[derive(Debug, Clone)]
pub struct RelativePair {
    pub ambient: CellComplex,
    pub sub: CellComplex,
}

impl RelativePair {
    pub fn new(ambient: CellComplex, sub: CellComplex) -> Result<Self> {
        if let Some(c) = sub.all_cells().find(|c| !ambient.contains(c)) {
            return Err(Error::SubNotContained(c.key()));
        }
        Ok(RelativePair { ambient, sub })
    }
}

/// Coordinates of a homology class: integers on the free generators and
/// residues in `[0, d)` on torsion generators of order `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassCoordinates {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    pub fn free_i64(&self) -> Vec<i64> {
        self.free.iter().map(|x| x.to_i64().expect("coordinate fits in i64")).collect()
    }
}

#[derive(Debug, Clone)]
struct ClassBasis {
    /// k-cells of the (quotient) complex, in column order.
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    /// rows of `V⁻¹` for `D_k` that give kernel coordinates
    kernel_coords: IntMatrix,
    /// `U'` from the reduction of `M`
    adapt: IntMatrix,
    /// invariant factors of `M`
    factors: Vec<BigInt>,
    /// (k-1)-cells of the quotient, for the cycle check
    lower_index: HashMap<Cell, usize>,
}

/// `H_k` of a complex or pair.
#[derive(Debug, Clone)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Cycles representing the free generators.
    pub generators: Vec<Chain>,
    /// Cycles representing the torsion generators (same order as `torsion`).
    pub torsion_generators: Vec<Chain>,
    basis: ClassBasis,
    sub_cells: Option<Vec<Cell>>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Number of generators (free plus torsion).
    pub fn rank_with_torsion(&self) -> usize {
        self.betti + self.torsion.len()
    }

    /// Orders of the torsion generators, as `i64`.
    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion.iter().map(|t| t.to_i64().expect("torsion coefficient fits in i64")).collect()
    }

    /// Restricts a chain to the quotient cells (drops cells of the subcomplex).
    fn quotient(&self, z: &Chain) -> Chain {
        z.restrict(|c| self.basis.index.contains_key(c))
    }

    /// Class coordinates of a (relative) cycle. Two cycles are homologous iff
    /// their coordinates agree.
    pub fn class_coordinates(&self, z: &Chain, complex: &CellComplex) -> Result<ClassCoordinates> {
        if z.dim() != self.dim && !z.is_zero() {
            return Err(Error::DimensionMismatch(format!("chain of dimension {} against H_{}", z.dim(), self.dim)));
        }
        complex.check_chain(z)?;
        let q = self.quotient(z);
        if self.dim > 0 {
            let b = complex.boundary(&q)?;
            if b.cells().any(|c| self.basis.lower_index.contains_key(c)) {
                return Err(Error::NotACycle("boundary does not vanish modulo the subcomplex".into()));
            }
        }
        let mut x = vec![BigInt::zero(); self.basis.cells.len()];
        for (cell, k) in q.iter() {
            x[self.basis.index[cell]] = BigInt::from(k);
        }
        let w = self.basis.kernel_coords.mul_vec(&x);
        let c = self.basis.adapt.mul_vec(&w);
        let s = self.basis.factors.len();
        let torsion = self.basis.factors.iter().zip(&c).filter(|(d, _)| !d.is_one()).map(|(d, ci)| ci.mod_floor(d)).collect();
        Ok(ClassCoordinates { free: c[s..].to_vec(), torsion })
    }

    /// Cycle with the given class coordinates (free part only, torsion residues).
    pub fn representative(&self, free: &[i64], torsion: &[i64]) -> Chain {
        let mut out = Chain::zero(self.dim);
        for (g, &k) in self.generators.iter().zip(free) {
            out += &g.scale(k);
        }
        for (g, &k) in self.torsion_generators.iter().zip(torsion) {
            out += &g.scale(k);
        }
        out
    }

    /// Cells of the subcomplex (relative groups only).
    pub fn sub_cells(&self) -> Option<&[Cell]> {
        self.sub_cells.as_deref()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "H_{} = {}", self.dim, parts.join(" + "))
    }
}

fn ambient_dim(x: &CellComplex) -> usize {
    match x.geometry() {
        Geometry::Cubical(g) => g.dim(),
        Geometry::Simplicial(c) => c.first().map_or(0, Vec::len),
    }
}

struct Level {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

fn level(x: &CellComplex, sub: Option<&CellComplex>, k: usize) -> Level {
    let cells: Vec<Cell> = x.cells(k).iter().filter(|c| sub.is_none_or(|a| !a.contains(c))).cloned().collect();
    let index = cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    Level { cells, index }
}

fn quotient_boundary(x: &CellComplex, rows: &Level, cols: &Level) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.cells.len(), cols.cells.len());
    for (j, cell) in cols.cells.iter().enumerate() {
        for (f, s) in x.faces(cell) {
            if let Some(&i) = rows.index.get(&f) {
                let v = m.get(i, j) + BigInt::from(s);
                m.set(i, j, v);
            }
        }
    }
    m
}

fn compute(x: &CellComplex, sub: Option<&CellComplex>, k: usize) -> Result<HomologyGroup> {
    let amb = ambient_dim(x);
    if k > amb {
        return Err(Error::DimensionOutOfRange { k, top: amb });
    }
    let lk = level(x, sub, k);
    let lk1 = level(x, sub, k + 1);
    let lower = if k > 0 { level(x, sub, k - 1) } else { Level { cells: vec![], index: HashMap::new() } };
    let n = lk.cells.len();
    let dk = quotient_boundary(x, &lower, &lk);
    let dk1 = quotient_boundary(x, &lk, &lk1);

    let s1 = smith_normal_form(&dk);
    let r = s1.rank();
    let m_dim = n - r;
    let kernel_rows: Vec<usize> = (r..n).collect();
    let all_cols: Vec<usize> = (0..n).collect();
    let kernel_coords = s1.v_inv.select(&kernel_rows, &all_cols);
    let z = s1.v.select(&all_cols, &kernel_rows);
    let m = kernel_coords.mul(&dk1);
    let s2 = smith_normal_form(&m);
    let zb = z.mul(&s2.u_inv);

    let column_chain = |j: usize| -> Chain {
        let mut c = Chain::zero(k);
        for i in 0..n {
            let v = zb.get(i, j);
            if !v.is_zero() {
                c.add_term(lk.cells[i].clone(), v.to_i64().expect("generator coefficient fits in i64"));
            }
        }
        c
    };
    let s = s2.rank();
    let mut torsion = Vec::new();
    let mut torsion_generators = Vec::new();
    for (i, d) in s2.diag.iter().enumerate() {
        if !d.is_one() {
            torsion.push(d.clone());
            torsion_generators.push(column_chain(i));
        }
    }
    let generators: Vec<Chain> = (s..m_dim).map(column_chain).collect();
    Ok(HomologyGroup {
        dim: k,
        betti: m_dim - s,
        torsion,
        generators,
        torsion_generators,
        basis: ClassBasis {
            cells: lk.cells,
            index: lk.index,
            kernel_coords,
            adapt: s2.u,
            factors: s2.diag,
            lower_index: lower.index,
        },
        sub_cells: sub.map(|a| a.all_cells().cloned().collect()),
    })
}

/// `H_k(X)`. Dimensions above the top cell dimension give the zero group;
/// `k` above the ambient dimension is an error.
pub fn homology(x: &CellComplex, k: usize) -> Result<HomologyGroup> {
    compute(x, None, k)
}

/// `H_k(X, A)`, computed on the quotient complex.
pub fn relative_homology(p: &RelativePair, k: usize) -> Result<HomologyGroup> {
    compute(&p.ambient, Some(&p.sub), k)
}

/// All groups `H_0 ..= H_top`.
pub fn homology_all(x: &CellComplex, exec: Exec) -> Result<Vec<HomologyGroup>> {
    let top = x.dim().unwrap_or(0);
    exec.map_range(top + 1, |k| homology(x, k)).into_iter().collect()
}

/// Betti numbers `b_0 ..= b_top`.
pub fn betti_numbers(x: &CellComplex) -> Result<Vec<usize>> {
    Ok(homology_all(x, Exec::Sequential)?.iter().map(|h| h.betti).collect())
}

/// Some `(k+1)`-chain `y` on `X` with `∂y = z`, or `None` if `z` does not bound.
pub fn is_boundary(z: &Chain, x: &CellComplex) -> Result<Option<Chain>> {
    x.check_chain(z)?;
    let k = z.dim();
    if k > 0 && !x.boundary(z)?.is_zero() {
        return Err(Error::NotACycle("input has nonzero boundary".into()));
    }
    if z.is_zero() {
        return Ok(Some(Chain::zero(k + 1)));
    }
    let d = x.dense_boundary(k + 1);
    let d = if d.rows() == x.count(k) { d } else { IntMatrix::zeros(x.count(k), 0) };
    let rhs: Vec<BigInt> = x.to_vector(z)?.into_iter().map(BigInt::from).collect();
    Ok(solve_integer(&d, &rhs).map(|y| {
        let y: Vec<i64> = y.iter().map(|v| v.to_i64().expect("filling coefficient fits in i64")).collect();
        x.from_vector(k + 1, &y)
    }))
}

/// Class coordinates of `z` in `h` (free function form).
pub fn class_coordinates(z: &Chain, h: &HomologyGroup, x: &CellComplex) -> Result<ClassCoordinates> {
    h.class_coordinates(z, x)
}

/// Rank of a dense integer matrix over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// True if the integer vectors span a lattice equal to `ℤ^n` (unimodular square).
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.det().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{Cube, Simplex};
    use crate::complex::SimplexWeights;
    use crate::grid::CubicalGrid;
    use crate::rational::int;

    fn hollow_square() -> CellComplex {
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![1, 1]).unwrap();
        let sq = Chain::cell(Cell::Cube(Cube::top(vec![0, 0])), 1);
        let edges: Vec<Cube> = sq.boundary().unwrap().cells().map(|c| c.as_cube().unwrap().clone()).collect();
        CellComplex::cubical_closure(g, edges).unwrap()
    }

    #[test]
    fn point_dimension_axiom() {
        let p = CellComplex::point(vec![int(0), int(0), int(0)]);
        let h0 = homology(&p, 0).unwrap();
        assert_eq!((h0.betti, h0.torsion.len()), (1, 0));
        assert_eq!(h0.to_string(), "H_0 = Z");
        for k in 1..=3 {
            assert!(homology(&p, k).unwrap().is_trivial());
        }
        assert_eq!(homology(&p, 4).unwrap_err().kind(), "DimensionOutOfRange");
    }

    #[test]
    fn hollow_square_has_a_loop() {
        let x = hollow_square();
        let h1 = homology(&x, 1).unwrap();
        assert_eq!(h1.betti, 1);
        let g = &h1.generators[0];
        assert!(x.boundary(g).unwrap().is_zero());
        assert!(is_boundary(g, &x).unwrap().is_none());
        assert_eq!(h1.class_coordinates(g, &x).unwrap().free_i64(), vec![1]);
    }

    #[test]
    fn solid_square_fills_its_boundary() {
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![1, 1]).unwrap();
        let x = CellComplex::full_grid(g).unwrap();
        let sq = Chain::cell(Cell::Cube(Cube::top(vec![0, 0])), 1);
        let z = sq.boundary().unwrap();
        let y = is_boundary(&z, &x).unwrap().unwrap();
        assert_eq!(x.boundary(&y).unwrap(), z);
        assert_eq!(homology(&x, 1).unwrap().betti, 0);
        let rel = RelativePair::new(x.clone(), hollow_square()).unwrap();
        assert_eq!(relative_homology(&rel, 2).unwrap().betti, 1);
    }

    #[test]
    fn interval_rel_endpoints() {
        let coords = vec![vec![int(0)], vec![int(1)]];
        let x = CellComplex::simplicial(coords.clone(), [Simplex { vertices: vec![0, 1] }], SimplexWeights::Unit).unwrap();
        let a = CellComplex::simplicial(coords, [Simplex { vertices: vec![0] }, Simplex { vertices: vec![1] }], SimplexWeights::Unit).unwrap();
        let h = relative_homology(&RelativePair::new(x, a).unwrap(), 1).unwrap();
        assert_eq!(h.betti, 1);
    }

    #[test]
    fn sub_not_contained() {
        let x = hollow_square();
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![1, 1]).unwrap();
        let full = CellComplex::full_grid(g).unwrap();
        assert_eq!(RelativePair::new(x, full).unwrap_err().kind(), "SubNotContained");
    }

    #[test]
    fn not_a_cycle() {
        let x = hollow_square();
        let e = Chain::cell(Cell::cube(vec![0, 0], vec![0]), 1);
        assert_eq!(is_boundary(&e, &x).unwrap_err().kind(), "NotACycle");
        let h = homology(&x, 1).unwrap();
        assert_eq!(h.class_coordinates(&e, &x).unwrap_err().kind(), "NotACycle");
    }
    pub(crate) fn rp2() -> CellComplex {
        let coords: Vec<Vec<_>> = (1..=6i64).map(|t| (1..=5u32).map(|e| int(t.pow(e))).collect()).collect();
        let tris = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
        let simplices = tris.iter().map(|t| Simplex::oriented(t.to_vec()).unwrap().0);
        CellComplex::simplicial(coords, simplices, SimplexWeights::Unit).unwrap()
    }

    #[test]
    fn projective_plane_torsion() {
        let x = rp2();
        let h: Vec<_> = (0..=2).map(|k| homology(&x, k).unwrap()).collect();
        assert_eq!(h[0].betti, 1);
        assert_eq!((h[1].betti, h[1].torsion_i64()), (0, vec![2]));
        assert!(h[2].is_trivial());
        let g = &h[1].torsion_generators[0];
        assert!(is_boundary(g, &x).unwrap().is_none());
        assert!(is_boundary(&g.scale(2), &x).unwrap().is_some());
        assert_eq!(h[1].class_coordinates(&g.scale(3), &x).unwrap().torsion, vec![BigInt::one()]);
    }

    #[test]
    fn torus_betti_and_coordinates() {
        let x = CellComplex::full_grid(CubicalGrid::torus(&[3, 3]).unwrap()).unwrap();
        assert_eq!(betti_numbers(&x).unwrap(), vec![1, 2, 1]);
        let h1 = homology(&x, 1).unwrap();
        let z = h1.representative(&[3, -1], &[]);
        assert_eq!(h1.class_coordinates(&z, &x).unwrap().free_i64(), vec![3, -1]);
        let b = x.boundary(&Chain::cell(Cell::cube(vec![1, 1], vec![0, 1]), 1)).unwrap();
        let shifted = &z + &b;
        assert_eq!(h1.class_coordinates(&shifted, &x).unwrap().free_i64(), vec![3, -1]);
    }
}
