//! Elementary chain operations: boundary, mass, restriction, slicing,
//! pushforward along cellular maps, and the prism (homotopy) operator.

use num::Signed;

use crate::cell::{permutation_sign, Cell, Cube, Simplex};
use crate::chain::{CellWeights, Chain};
use crate::complex::{CellComplex, Geometry};
use crate::error::{Error, Result};
use crate::grid::CubicalGrid;
use crate::rational::{self, Q};

pub fn boundary(c: &Chain) -> Result<Chain> {
    c.boundary()
}

pub fn mass(c: &Chain, weights: &impl CellWeights) -> Q {
    c.mass(weights)
}

pub fn restrict(c: &Chain, keep: impl Fn(&Cell) -> bool) -> Chain {
    c.restrict(keep)
}

/// Sup-norm distance `max_i |x_i - z_i|`.
pub fn sup_distance(x: &[Q], z: &[Q]) -> Q {
    x.iter().zip(z).map(|(a, b)| (a - b).abs()).max().unwrap_or_default()
}

/// Slice of a cycle by the sup-distance from `x0` at level `y`:
/// the boundary of the part of `c` whose cell centers lie beyond `y`.
pub fn slice(c: &Chain, x0: &[Q], y: &Q, complex: &CellComplex) -> Result<Chain> {
    if c.dim() == 0 {
        return Err(Error::ZeroDimBoundary);
    }
    complex.check_chain(c)?;
    if !complex.boundary(c)?.is_zero() {
        return Err(Error::NotACycle("slice input has nonzero boundary".into()));
    }
    for cell in c.cells() {
        for v in complex.vertex_points(cell) {
            if v.len() != x0.len() {
                return Err(Error::ArityMismatch { expected: v.len(), got: x0.len() });
            }
            if sup_distance(&v, x0) == *y {
                return Err(Error::NonGenericRadius(rational::fmt_vec(&v)));
            }
        }
    }
    let outer = c.restrict(|cell| sup_distance(&complex.center(cell), x0) > *y);
    complex.boundary(&outer)
}

/// Vertex map between simplicial complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn identity(n: usize) -> Self {
        SimplicialMap { vertex_map: (0..n).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        let vertex_map = self
            .vertex_map
            .iter()
            .map(|&v| other.vertex_map.get(v).copied().ok_or_else(|| Error::NotCellular(format!("vertex {v} not in the second map's domain"))))
            .collect::<Result<_>>()?;
        Ok(SimplicialMap { vertex_map })
    }

    fn image(&self, s: &Simplex) -> Result<Option<(Simplex, i64)>> {
        let imgs = s
            .vertices
            .iter()
            .map(|&v| self.vertex_map.get(v).copied().ok_or_else(|| Error::NotCellular(format!("vertex {v} is not mapped"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Simplex::oriented(imgs))
    }
}

/// One target coordinate of a cubical lattice map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisMap {
    Const(i64),
    /// `t ↦ values[t - start]` applied to source axis `source`;
    /// consecutive values differ by at most one.
    Table { source: usize, start: i64, values: Vec<i64> },
}

impl AxisMap {
    pub fn table(source: usize, start: i64, values: Vec<i64>) -> Result<AxisMap> {
        if values.windows(2).any(|w| (w[1] - w[0]).abs() > 1) {
            return Err(Error::NotCellular("axis table jumps by more than one".into()));
        }
        Ok(AxisMap::Table { source, start, values })
    }

    fn eval(&self, x: &[i64]) -> Result<i64> {
        match self {
            AxisMap::Const(c) => Ok(*c),
            AxisMap::Table { source, start, values } => {
                let t = x[*source] - start;
                usize::try_from(t).ok().and_then(|i| values.get(i).copied()).ok_or_else(|| Error::NotCellular(format!("coordinate {} outside the axis table", x[*source])))
            }
        }
    }
}

/// Coordinatewise lattice map `ℤⁿ → ℤᵐ`; each target axis is constant or a
/// 1-Lipschitz step function of one source axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalMap {
    pub source_dim: usize,
    pub components: Vec<AxisMap>,
}

impl CubicalMap {
    /// Identity on the lattice box `[lo, hi]`.
    pub fn identity(lo: &[i64], hi: &[i64]) -> Self {
        CubicalMap {
            source_dim: lo.len(),
            components: lo.iter().zip(hi).enumerate().map(|(i, (&l, &h))| AxisMap::Table { source: i, start: l, values: (l..=h).collect() }).collect(),
        }
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// `other ∘ self`, tabulated over the source box `[lo, hi]`.
    pub fn then(&self, other: &CubicalMap, lo: &[i64], hi: &[i64]) -> Result<CubicalMap> {
        let components = other
            .components
            .iter()
            .map(|oc| match oc {
                AxisMap::Const(c) => Ok(AxisMap::Const(*c)),
                AxisMap::Table { source, .. } => match &self.components[*source] {
                    AxisMap::Const(c) => {
                        let mut probe = vec![0; other.source_dim];
                        probe[*source] = *c;
                        Ok(AxisMap::Const(oc.eval(&probe)?))
                    }
                    AxisMap::Table { source: s0, .. } => {
                        let s0 = *s0;
                        let mut probe = lo.to_vec();
                        let values = (lo[s0]..=hi[s0])
                            .map(|t| {
                                probe[s0] = t;
                                let mid = self.apply(&probe)?;
                                oc.eval(&mid)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        AxisMap::table(s0, lo[s0], values)
                    }
                },
            })
            .collect::<Result<_>>()?;
        Ok(CubicalMap { source_dim: self.source_dim, components })
    }

    fn image(&self, c: &Cube) -> Result<Option<(Cube, i64)>> {
        if c.ambient() != self.source_dim {
            return Err(Error::DimensionMismatch("cube and map have different source dimension".into()));
        }
        let mut anchor = Vec::with_capacity(self.components.len());
        // (source axis, target axis, step sign)
        let mut spanned: Vec<(usize, usize, i64)> = Vec::new();
        for (j, comp) in self.components.iter().enumerate() {
            match comp {
                AxisMap::Const(v) => anchor.push(*v),
                AxisMap::Table { source, .. } => {
                    let a = comp.eval(&c.anchor)?;
                    if c.spans(*source) {
                        let mut far = c.anchor.clone();
                        far[*source] += 1;
                        let b = comp.eval(&far)?;
                        if a == b {
                            anchor.push(a);
                        } else {
                            if spanned.iter().any(|&(s, _, _)| s == *source) {
                                return Err(Error::NotCellular(format!("source axis {source} spans two target axes")));
                            }
                            spanned.push((*source, j, b - a));
                            anchor.push(a.min(b));
                        }
                    } else {
                        anchor.push(a);
                    }
                }
            }
        }
        if spanned.len() < c.dim() {
            return Ok(None);
        }
        spanned.sort_unstable();
        let mut targets: Vec<usize> = spanned.iter().map(|&(_, j, _)| j).collect();
        let sign = permutation_sign(&mut targets) * spanned.iter().map(|&(_, _, s)| s).product::<i64>();
        Ok(Some((Cube { anchor, axes: targets }, sign)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellularMap {
    Simplicial(SimplicialMap),
    Cubical(CubicalMap),
}

impl CellularMap {
    /// Image of a single cell: `None` when degenerate.
    pub fn image(&self, cell: &Cell) -> Result<Option<(Cell, i64)>> {
        match (self, cell) {
            (CellularMap::Simplicial(m), Cell::Simplex(s)) => Ok(m.image(s)?.map(|(s, k)| (Cell::Simplex(s), k))),
            (CellularMap::Cubical(m), Cell::Cube(c)) => Ok(m.image(c)?.map(|(c, k)| (Cell::Cube(c), k))),
            _ => Err(Error::NotCellular("map and cell kinds differ".into())),
        }
    }
}

/// Pushforward of `c` along `f` into `target`. Degenerate images vanish.
pub fn pushforward(c: &Chain, f: &CellularMap, target: &CellComplex) -> Result<Chain> {
    c.map_cells(c.dim(), |cell| {
        let Some((img, s)) = f.image(cell)? else {
            return Ok(vec![]);
        };
        let img = match (&img, target.grid()) {
            (Cell::Cube(cube), Some(g)) => Cell::Cube(g.normalize(cube.clone())),
            _ => img,
        };
        if !target.contains(&img) {
            return Err(Error::NotCellular(format!("image {img} of {cell} is not a cell of the target")));
        }
        Ok(vec![(img, s)])
    })
}

/// Maps every cell of `source` and reports whether all images are target cells.
pub fn check_cellular(f: &CellularMap, source: &CellComplex, target: &CellComplex) -> Result<()> {
    for cell in source.all_cells() {
        pushforward(&Chain::cell(cell.clone(), 1), f, target)?;
    }
    Ok(())
}

fn lift_cube(c: &Cube, level: i64, with_interval: bool) -> Cube {
    let mut anchor = Vec::with_capacity(c.anchor.len() + 1);
    anchor.push(level);
    anchor.extend_from_slice(&c.anchor);
    let mut axes = Vec::with_capacity(c.axes.len() + 1);
    if with_interval {
        axes.push(0);
    }
    axes.extend(c.axes.iter().map(|a| a + 1));
    Cube { anchor, axes }
}

/// Prism `[0,1] × c`. The new interval is the first axis (cubical) or the
/// staircase triangulation of `Δᵏ × I` with vertex `(v, l) ↦ 2v + l`
/// (simplicial). Satisfies `∂ prism(c) = top(c) - bottom(c) - prism(∂c)`.
pub fn prism(c: &Chain) -> Chain {
    let mut out = Chain::zero(c.dim() + 1);
    for (cell, k) in c.iter() {
        match cell {
            Cell::Cube(q) => out.add_term(Cell::Cube(lift_cube(q, 0, true)), k),
            Cell::Simplex(s) => {
                let v = &s.vertices;
                for i in 0..v.len() {
                    let mut verts: Vec<usize> = v[..=i].iter().map(|&x| 2 * x).collect();
                    verts.extend(v[i..].iter().map(|&x| 2 * x + 1));
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    out.add_term(Cell::Simplex(Simplex { vertices: verts }), sign * k);
                }
            }
        }
    }
    out
}

fn level(c: &Chain, l: i64) -> Chain {
    let mut out = Chain::zero(c.dim());
    for (cell, k) in c.iter() {
        let img = match cell {
            Cell::Cube(q) => Cell::Cube(lift_cube(q, l, false)),
            Cell::Simplex(s) => Cell::Simplex(Simplex { vertices: s.vertices.iter().map(|&v| 2 * v + l as usize).collect() }),
        };
        out.add_term(img, k);
    }
    out
}

/// Inclusion at level 1 of the prism.
pub fn top(c: &Chain) -> Chain {
    level(c, 1)
}

/// Inclusion at level 0 of the prism.
pub fn bottom(c: &Chain) -> Chain {
    level(c, 0)
}

/// Grid carrying prisms of chains on `g`: one extra leading axis `[0, 1]`.
pub fn prism_grid(g: &CubicalGrid) -> CubicalGrid {
    let mut offset = vec![Q::default()];
    offset.extend(g.offset.iter().cloned());
    let mut lo = vec![0];
    lo.extend(&g.lo);
    let mut hi = vec![1];
    hi.extend(&g.hi);
    let mut period = vec![None];
    period.extend(&g.period);
    CubicalGrid { edge: g.edge.clone(), offset, lo, hi, period }
}

/// `X × [0,1]` as a complex containing prisms, tops and bottoms of all chains on `X`.
pub fn prism_complex(x: &CellComplex) -> Result<CellComplex> {
    let maximal = x.maximal_cells();
    match x.geometry() {
        Geometry::Cubical(g) => {
            let cubes = maximal.iter().map(|c| lift_cube(c.as_cube().unwrap(), 0, true));
            CellComplex::cubical_closure(prism_grid(g), cubes)
        }
        Geometry::Simplicial(coords) => {
            let mut pc = Vec::with_capacity(2 * coords.len());
            for p in coords {
                for l in 0..2 {
                    let mut q = p.clone();
                    q.push(rational::int(l));
                    pc.push(q);
                }
            }
            let tops = maximal.iter().flat_map(|c| prism(&Chain::cell(c.clone(), 1)).cells().map(|c| c.as_simplex().unwrap().clone()).collect::<Vec<_>>());
            CellComplex::simplicial(pc, tops, crate::complex::SimplexWeights::Unit)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn unit_grid(n: i64) -> CubicalGrid {
        CubicalGrid::boxed(int(1), vec![0, 0], vec![n, n]).unwrap()
    }

    #[test]
    fn restrict_examples() {
        let x = CellComplex::full_grid(unit_grid(4)).unwrap();
        let c = x.full_chain(2);
        assert_eq!(restrict(&c, |_| true), c);
        assert!(restrict(&c, |_| false).is_zero());
        let left = restrict(&c, |cell| x.center(cell)[0] < int(2));
        assert_eq!(left.len(), 8);
        assert_eq!(restrict(&left, |cell| x.center(cell)[0] < int(2)), left);
    }

    #[test]
    fn slice_around_center() {
        let x = CellComplex::full_grid(unit_grid(4)).unwrap();
        let c = x.full_chain(2);
        // a 2-chain with boundary: slicing requires a cycle
        assert_eq!(slice(&c, &[int(2), int(2)], &frac(3, 2), &x).unwrap_err().kind(), "NotACycle");
    }

    #[test]
    fn slice_generic_check() {
        // cycle: boundary of the full 4x4 block
        let x = CellComplex::full_grid(unit_grid(4)).unwrap();
        let z = x.boundary(&x.full_chain(2)).unwrap();
        let err = slice(&z, &[int(2), int(2)], &int(2), &x).unwrap_err();
        assert_eq!(err.kind(), "NonGenericRadius");
    }

    #[test]
    fn cubical_map_orientation() {
        // reflection x ↦ 2 - x on [0,2]: an edge maps with sign -1
        let f = CubicalMap { source_dim: 1, components: vec![AxisMap::table(0, 0, vec![2, 1, 0]).unwrap()] };
        let (img, s) = f.image(&Cube { anchor: vec![0], axes: vec![0] }).unwrap().unwrap();
        assert_eq!((img.anchor, s), (vec![1], -1));
        // swapping axes reverses the orientation of a square
        let swap = CubicalMap {
            source_dim: 2,
            components: vec![AxisMap::table(1, 0, vec![0, 1]).unwrap(), AxisMap::table(0, 0, vec![0, 1]).unwrap()],
        };
        assert_eq!(swap.image(&Cube::top(vec![0, 0])).unwrap().unwrap().1, -1);
    }

    #[test]
    fn prism_examples() {
        let v = Chain::cell(Cell::cube(vec![3, 4], vec![]), 1);
        let p = prism(&v);
        assert_eq!(p.len(), 1);
        assert_eq!(p.boundary().unwrap(), &top(&v) - &bottom(&v));

        let e = Chain::cell(Cell::cube(vec![0, 0], vec![0]), 1);
        let lhs = prism(&e).boundary().unwrap();
        let rhs = &(&top(&e) - &bottom(&e)) - &prism(&e.boundary().unwrap());
        assert_eq!(lhs, rhs);

        let sq = Chain::cell(Cell::cube(vec![0, 0], vec![0, 1]), 1);
        let lp = sq.boundary().unwrap();
        assert_eq!(prism(&lp).boundary().unwrap(), &top(&lp) - &bottom(&lp));
    }

    #[test]
    fn simplicial_prism_formula() {
        let t = Chain::cell(Cell::simplex(vec![0, 2, 5]), 3);
        let lhs = prism(&t).boundary().unwrap();
        let rhs = &(&top(&t) - &bottom(&t)) - &prism(&t.boundary().unwrap());
        assert_eq!(lhs, rhs);
    }
}
