//! Finite face-closed cell complexes with mass weights.

use std::collections::{BTreeSet, HashMap};

use num::{One, Signed, Zero};

use crate::cell::{Cell, Cube, Simplex};
use crate::chain::{CellWeights, Chain};
use crate::error::{Error, Result};
use crate::grid::CubicalGrid;
use crate::matrix::{IntMatrix, SparseMatrix};
use crate::rational::{self, Q};

/// How simplex weights are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimplexWeights {
    /// Every simplex has weight 1.
    #[default]
    Unit,
    /// Exact Euclidean k-volume; fails if some volume is irrational.
    Euclidean,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Geometry {
    Cubical(CubicalGrid),
    /// Vertex coordinates indexed by vertex id.
    Simplicial(Vec<Vec<Q>>),
}

#[derive(Debug, Clone)]
pub struct CellComplex {
    geometry: Geometry,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    weights: Vec<Vec<Q>>,
    scheme: SimplexWeights,
}

impl PartialEq for CellComplex {
    fn eq(&self, other: &Self) -> bool {
        self.geometry == other.geometry && self.cells == other.cells && self.weights == other.weights
    }
}

impl Eq for CellComplex {}

impl CellComplex {
    fn assemble(geometry: Geometry, scheme: SimplexWeights, set: BTreeSet<Cell>, weight: impl Fn(&Cell) -> Result<Q>) -> Result<Self> {
        let top = set.iter().map(Cell::dim).max();
        let levels = top.map_or(0, |t| t + 1);
        let mut cells = vec![Vec::new(); levels];
        for c in set {
            cells[c.dim()].push(c);
        }
        let index = cells
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        let weights = cells
            .iter()
            .map(|level| level.iter().map(&weight).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(CellComplex { geometry, cells, index, weights, scheme })
    }

    /// Cubical complex on `grid` made of the given cubes and all their faces.
    pub fn cubical_closure(grid: CubicalGrid, cubes: impl IntoIterator<Item = Cube>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for c in cubes {
            let c = grid.normalize(c);
            if !grid.contains(&c) {
                return Err(Error::DimensionMismatch(format!("cube {} lies outside the grid box", Cell::Cube(c))));
            }
            for f in grid.closure(&c) {
                set.insert(Cell::Cube(f));
            }
        }
        let g = grid.clone();
        CellComplex::assemble(Geometry::Cubical(grid), SimplexWeights::Unit, set, |c| Ok(g.weight(c.dim())))
    }

    /// Cubical complex from an explicit cell list that must already be face-closed.
    pub fn cubical(grid: CubicalGrid, cubes: impl IntoIterator<Item = Cube>) -> Result<Self> {
        let set: BTreeSet<Cell> = cubes.into_iter().map(|c| Cell::Cube(grid.normalize(c))).collect();
        for c in &set {
            let cube = c.as_cube().unwrap();
            if !grid.contains(cube) {
                return Err(Error::DimensionMismatch(format!("cube {c} lies outside the grid box")));
            }
            for (f, _) in grid.faces(cube) {
                let f = Cell::Cube(f);
                if !set.contains(&f) {
                    return Err(Error::NotFaceClosed(f.key()));
                }
            }
        }
        let g = grid.clone();
        CellComplex::assemble(Geometry::Cubical(grid), SimplexWeights::Unit, set, |c| Ok(g.weight(c.dim())))
    }

    /// Every cell of the grid box.
    pub fn full_grid(grid: CubicalGrid) -> Result<Self> {
        let tops: Vec<Cube> = grid.top_anchors().into_iter().map(Cube::top).collect();
        CellComplex::cubical_closure(grid, tops)
    }

    /// Simplicial complex generated by `simplices` (face closure is taken).
    /// Every simplex must have affinely independent vertices.
    pub fn simplicial(coords: Vec<Vec<Q>>, simplices: impl IntoIterator<Item = Simplex>, weights: SimplexWeights) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in simplices {
            if let Some(&v) = s.vertices.iter().find(|&&v| v >= coords.len()) {
                return Err(Error::DimensionMismatch(format!("vertex {v} has no coordinates")));
            }
            for f in s.closure() {
                set.insert(Cell::Simplex(f));
            }
        }
        CellComplex::simplicial_checked(coords, set, weights, true)
    }

    /// Like [`CellComplex::simplicial`] without the degeneracy check, for
    /// subdivisions of complexes already known to be nondegenerate.
    pub(crate) fn simplicial_trusted(coords: Vec<Vec<Q>>, simplices: impl IntoIterator<Item = Simplex>, weights: SimplexWeights) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in simplices {
            for f in s.closure() {
                set.insert(Cell::Simplex(f));
            }
        }
        CellComplex::simplicial_checked(coords, set, weights, false)
    }

    /// Simplicial complex from an explicit, already face-closed, simplex set.
    pub fn simplicial_exact(coords: Vec<Vec<Q>>, simplices: impl IntoIterator<Item = Simplex>, weights: SimplexWeights) -> Result<Self> {
        let set: BTreeSet<Cell> = simplices.into_iter().map(Cell::Simplex).collect();
        for c in &set {
            let s = c.as_simplex().unwrap();
            if let Some(&v) = s.vertices.iter().find(|&&v| v >= coords.len()) {
                return Err(Error::DimensionMismatch(format!("vertex {v} has no coordinates")));
            }
            for (f, _) in s.faces() {
                let f = Cell::Simplex(f);
                if !set.contains(&f) {
                    return Err(Error::NotFaceClosed(f.key()));
                }
            }
        }
        CellComplex::simplicial_checked(coords, set, weights, true)
    }

    fn simplicial_checked(coords: Vec<Vec<Q>>, set: BTreeSet<Cell>, weights: SimplexWeights, check: bool) -> Result<Self> {
        let gram = |c: &Cell| gram_det(&coords, c.as_simplex().unwrap());
        for c in set.iter().filter(|_| check) {
            if !gram(c).is_positive() {
                return Err(Error::DegenerateSimplex(c.key()));
            }
        }
        let vol = |c: &Cell| -> Result<Q> {
            match weights {
                SimplexWeights::Unit => Ok(Q::one()),
                SimplexWeights::Euclidean => simplex_volume(&coords, c.as_simplex().unwrap()).ok_or_else(|| Error::IrrationalVolume(c.key())),
            }
        };
        let weights_table: Vec<(Cell, Q)> = set.iter().map(|c| Ok((c.clone(), vol(c)?))).collect::<Result<_>>()?;
        let lookup: HashMap<Cell, Q> = weights_table.into_iter().collect();
        CellComplex::assemble(Geometry::Simplicial(coords), weights, set, |c| Ok(lookup[c].clone()))
    }

    /// The one-point complex `{a}` in ℝⁿ.
    pub fn point(a: Vec<Q>) -> Self {
        CellComplex::simplicial(vec![a], [Simplex { vertices: vec![0] }], SimplexWeights::Unit).expect("a point is a valid complex")
    }

    /// Same geometry, different cell set (closure is taken).
    pub fn with_cells(&self, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        match &self.geometry {
            Geometry::Cubical(g) => {
                let cubes: Vec<Cube> = cells.into_iter().map(|c| c.as_cube().cloned().ok_or(Error::NotCubical)).collect::<Result<_>>()?;
                CellComplex::cubical_closure(g.clone(), cubes)
            }
            Geometry::Simplicial(coords) => {
                let simplices: Vec<Simplex> = cells.into_iter().map(|c| c.as_simplex().cloned().ok_or(Error::NotSimplicial)).collect::<Result<_>>()?;
                let mut set = BTreeSet::new();
                for s in simplices {
                    for f in s.closure() {
                        set.insert(Cell::Simplex(f));
                    }
                }
                // keep this complex's weights for shared simplices
                let w: HashMap<Cell, Q> = set.iter().map(|c| (c.clone(), self.weight_of(c).unwrap_or_else(Q::one))).collect();
                CellComplex::assemble(Geometry::Simplicial(coords.clone()), self.scheme, set, |c| Ok(w[c].clone()))
            }
        }
    }

    /// Weight scheme of a simplicial complex (`Unit` for cubical ones).
    pub fn weight_scheme(&self) -> SimplexWeights {
        self.scheme
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn grid(&self) -> Option<&CubicalGrid> {
        match &self.geometry {
            Geometry::Cubical(g) => Some(g),
            Geometry::Simplicial(_) => None,
        }
    }

    pub fn coords(&self) -> Option<&[Vec<Q>]> {
        match &self.geometry {
            Geometry::Simplicial(c) => Some(c),
            Geometry::Cubical(_) => None,
        }
    }

    pub fn is_simplicial(&self) -> bool {
        matches!(self.geometry, Geometry::Simplicial(_))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Vec::is_empty)
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, k: usize) -> &[Cell] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells(k).len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn all_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().flatten()
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell.dim())?.get(cell).copied()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.index_of(cell).is_some()
    }

    pub fn weight_of(&self, cell: &Cell) -> Option<Q> {
        self.index_of(cell).map(|i| self.weights[cell.dim()][i].clone())
    }

    pub fn min_weight(&self, k: usize) -> Option<Q> {
        self.weights.get(k)?.iter().min().cloned()
    }

    /// Codimension-one faces of a cell (periodic axes wrap).
    pub fn faces(&self, cell: &Cell) -> Vec<(Cell, i64)> {
        match (&self.geometry, cell) {
            (Geometry::Cubical(g), Cell::Cube(c)) => g.faces(c).into_iter().map(|(f, s)| (Cell::Cube(f), s)).collect(),
            _ => cell.faces(),
        }
    }

    pub fn check_chain(&self, c: &Chain) -> Result<()> {
        match c.cells().find(|cell| !self.contains(cell)) {
            Some(cell) => Err(Error::NotSubcomplex(format!("chain cell {cell} is not in the complex"))),
            None => Ok(()),
        }
    }

    /// Boundary of a chain using this complex's incidences.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        c.boundary_with(|cell| self.faces(cell))
    }

    /// `D_k`: rows indexed by (k-1)-cells, columns by k-cells.
    pub fn boundary_matrix(&self, k: usize) -> SparseMatrix {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let mut m = SparseMatrix::new(rows, self.count(k));
        if k == 0 {
            return m;
        }
        for (j, cell) in self.cells(k).iter().enumerate() {
            let mut col: Vec<(usize, i64)> = Vec::new();
            for (f, s) in self.faces(cell) {
                let i = self.index_of(&f).expect("complex is face-closed");
                match col.iter_mut().find(|(r, _)| *r == i) {
                    Some(e) => e.1 += s,
                    None => col.push((i, s)),
                }
            }
            col.retain(|&(_, v)| v != 0);
            col.sort_unstable();
            m.columns[j] = col;
        }
        m
    }

    /// Coefficient vector of a k-chain in this complex's cell order.
    pub fn to_vector(&self, c: &Chain) -> Result<Vec<i64>> {
        let mut v = vec![0; self.count(c.dim())];
        for (cell, k) in c.iter() {
            let i = self.index_of(cell).ok_or_else(|| Error::NotSubcomplex(format!("chain cell {cell} is not in the complex")))?;
            v[i] = k;
        }
        Ok(v)
    }

    pub fn from_vector(&self, k: usize, v: &[i64]) -> Chain {
        let mut c = Chain::zero(k);
        for (cell, &x) in self.cells(k).iter().zip(v) {
            c.add_term(cell.clone(), x);
        }
        c
    }

    /// The sum of all k-cells with coefficient 1.
    pub fn full_chain(&self, k: usize) -> Chain {
        self.from_vector(k, &vec![1; self.count(k)])
    }

    /// True if every cell of `sub` is a cell of `self`.
    pub fn contains_complex(&self, sub: &CellComplex) -> bool {
        sub.all_cells().all(|c| self.contains(c))
    }

    /// Cells not contained in any higher-dimensional cell.
    pub fn maximal_cells(&self) -> Vec<Cell> {
        let mut covered: BTreeSet<&Cell> = BTreeSet::new();
        let mut faces_store = Vec::new();
        for level in self.cells.iter().skip(1) {
            for c in level {
                faces_store.extend(self.faces(c).into_iter().map(|(f, _)| f));
            }
        }
        covered.extend(faces_store.iter());
        self.all_cells().filter(|c| !covered.contains(c)).cloned().collect()
    }

    /// Vertex coordinates of a cell (real space).
    pub fn vertex_points(&self, cell: &Cell) -> Vec<Vec<Q>> {
        match (&self.geometry, cell) {
            (Geometry::Cubical(g), Cell::Cube(c)) => c.vertices().iter().map(|v| g.point(v)).collect(),
            (Geometry::Simplicial(coords), Cell::Simplex(s)) => s.vertices.iter().map(|&v| coords[v].clone()).collect(),
            _ => panic!("cell kind does not match complex geometry"),
        }
    }

    /// Barycenter of a cell.
    pub fn center(&self, cell: &Cell) -> Vec<Q> {
        match (&self.geometry, cell) {
            (Geometry::Cubical(g), Cell::Cube(c)) => g.center(c),
            _ => {
                let pts = self.vertex_points(cell);
                let n = rational::int(pts.len() as i64);
                let dim = pts[0].len();
                (0..dim).map(|i| pts.iter().map(|p| p[i].clone()).sum::<Q>() / &n).collect()
            }
        }
    }

    /// Dense `D_k` for small complexes and diagnostics.
    pub fn dense_boundary(&self, k: usize) -> IntMatrix {
        self.boundary_matrix(k).to_dense()
    }
}

impl CellWeights for CellComplex {
    fn weight(&self, cell: &Cell) -> Q {
        self.weight_of(cell).unwrap_or_else(|| panic!("cell {cell} is not in the complex"))
    }
}

/// Gram determinant of the edge vectors `v_i - v_0`.
pub fn gram_det(coords: &[Vec<Q>], s: &Simplex) -> Q {
    let base = &coords[s.vertices[0]];
    let edges: Vec<Vec<Q>> = s.vertices[1..].iter().map(|&v| coords[v].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let k = edges.len();
    let mut g: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| edges[i].iter().zip(&edges[j]).map(|(a, b)| a * b).sum()).collect()).collect();
    rational_det(&mut g)
}

/// Exact Euclidean k-volume when it is rational.
pub fn simplex_volume(coords: &[Vec<Q>], s: &Simplex) -> Option<Q> {
    let k = s.dim();
    let root = rational::exact_sqrt(&gram_det(coords, s))?;
    let fact: i64 = (1..=k as i64).product();
    Some(root / rational::int(fact))
}

/// Determinant over ℚ by Gaussian elimination (destroys `m`).
pub fn rational_det(m: &mut [Vec<Q>]) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}
