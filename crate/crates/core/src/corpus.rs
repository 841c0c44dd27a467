//! Small named complexes used by tests, the axiom suite and the self-test.

use crate::cell::{Cell, Cube, Simplex};
use crate::complex::{CellComplex, SimplexWeights};
use crate::grid::CubicalGrid;
use crate::exec::Exec;
use crate::rational::{frac, int, Q};
use crate::semialg::{self, Scheme};

/// Points on the moment curve `(t, t², t³, t⁴, t⁵)`, `t = 1..=n`; any six are
/// affinely independent.
pub fn moment_coords(n: usize) -> Vec<Vec<Q>> {
    (1..=n as i64).map(|t| (1..=5u32).map(|e| int(t.pow(e))).collect()).collect()
}

/// Simplicial complex on the moment curve spanned by the given simplices.
pub fn simplicial(nverts: usize, simplices: &[Vec<usize>]) -> CellComplex {
    let s = simplices.iter().map(|v| Simplex::new(v.clone()).expect("distinct vertices"));
    CellComplex::simplicial(moment_coords(nverts), s, SimplexWeights::Unit).expect("moment-curve simplices are nondegenerate")
}

pub fn point() -> CellComplex {
    CellComplex::point(vec![int(0), int(0), int(0)])
}

/// Cubical complex generated by the top cells with the given anchors.
pub fn cubes(grid: &CubicalGrid, anchors: impl IntoIterator<Item = Vec<i64>>) -> CellComplex {
    CellComplex::cubical_closure(grid.clone(), anchors.into_iter().map(Cube::top)).expect("anchors lie in the grid")
}

pub fn unit_grid(lo: Vec<i64>, hi: Vec<i64>) -> CubicalGrid {
    CubicalGrid::boxed(int(1), lo, hi).expect("nonempty box")
}

pub fn solid_square() -> CellComplex {
    CellComplex::full_grid(unit_grid(vec![0, 0], vec![1, 1])).expect("box")
}

/// The four edges and vertices of the unit square.
pub fn hollow_square() -> CellComplex {
    let sq = solid_square();
    sq.with_cells(sq.cells(1).to_vec()).expect("edges of a square")
}

/// `w × w` box with the `h × h` block of top cells starting at `(a, a)` removed.
pub fn holed_box(w: i64, a: i64, h: i64) -> CellComplex {
    let g = unit_grid(vec![0, 0], vec![w, w]);
    let inside = |v: &Vec<i64>| v.iter().all(|&x| a <= x && x < a + h);
    let tops: Vec<Vec<i64>> = g.top_anchors().into_iter().filter(|v| !inside(v)).collect();
    cubes(&g, tops)
}

/// Periodic `n × n` cubical torus.
pub fn torus(n: i64) -> CellComplex {
    CellComplex::full_grid(CubicalGrid::torus(&[n, n]).expect("period ≥ 1")).expect("torus")
}

/// Minimal six-vertex triangulation of the projective plane.
pub fn projective_plane() -> CellComplex {
    let tris = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    simplicial(6, &tris.iter().map(|t| t.to_vec()).collect::<Vec<_>>())
}

/// Edges of the `n`-cycle, vertex `i` joined to `i + 1 mod n`.
pub fn polygon_simplices(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i, (i + 1) % n]).collect()
}

pub fn polygon(n: usize) -> CellComplex {
    simplicial(n, &polygon_simplices(n))
}

/// Triangles `{i, i+1, i+2}` mod `n`: a band with the homotopy type of a circle.
pub fn band_simplices(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i, (i + 1) % n, (i + 2) % n]).collect()
}

pub fn band(n: usize) -> CellComplex {
    simplicial(n, &band_simplices(n))
}

/// Triangulated annulus: inner `n`-cycle on `0..n`, outer on `n..2n`.
/// The inner cycle is a full subcomplex.
pub fn strip(n: usize) -> (CellComplex, CellComplex) {
    let mut tris = vec![];
    for i in 0..n {
        let j = (i + 1) % n;
        tris.push(vec![i, j, n + i]);
        tris.push(vec![j, n + i, n + j]);
    }
    let k = simplicial(2 * n, &tris);
    let l = k.with_cells(polygon_simplices(n).into_iter().map(Cell::simplex)).expect("inner cycle");
    (k, l)
}

/// Cone with apex `n` over the given simplices on vertices `0..n`.
pub fn cone(n: usize, simplices: &[Vec<usize>]) -> CellComplex {
    let s: Vec<Vec<usize>> = simplices.iter().map(|s| s.iter().copied().chain([n]).collect()).collect();
    simplicial(n + 1, &s)
}

/// The `k`-skeleton of a complex.
pub fn skeleton(x: &CellComplex, k: usize) -> CellComplex {
    let cells: Vec<Cell> = (0..=k).flat_map(|j| x.cells(j).to_vec()).collect();
    x.with_cells(cells).expect("skeleton of a complex")
}

/// Unit disk rasterized at `ε = 1/4` (center sampling).
pub fn disk() -> CellComplex {
    let g = semialg::square_grid(frac(1, 4), frac(5, 4)).expect("grid");
    semialg::rasterize(&semialg::disk(int(1)), &g, Scheme::Center, Exec::Sequential).expect("rasterize").complex
}

/// Annulus `1/2 ≤ |x| ≤ 1` rasterized at `ε = 1/4` (center sampling).
pub fn annulus() -> CellComplex {
    let g = semialg::square_grid(frac(1, 4), frac(5, 4)).expect("grid");
    semialg::rasterize(&semialg::annulus(frac(1, 2), int(1)), &g, Scheme::Center, Exec::Sequential).expect("rasterize").complex
}

/// Named complexes with their expected betti numbers.
pub fn homology_corpus() -> Vec<(&'static str, CellComplex, Vec<usize>)> {
    vec![
        ("point", point(), vec![1]),
        ("hollow-square", hollow_square(), vec![1, 1]),
        ("solid-square", solid_square(), vec![1, 0, 0]),
        ("disk", disk(), vec![1, 0, 0]),
        ("annulus", annulus(), vec![1, 1, 0]),
        ("holed-box", holed_box(4, 1, 2), vec![1, 1, 0]),
        ("torus", torus(3), vec![1, 2, 1]),
        ("projective-plane", projective_plane(), vec![1, 0, 0]),
        ("polygon", polygon(7), vec![1, 1]),
        ("band", band(8), vec![1, 1, 0]),
        ("disk-cone", cone(6, &polygon_simplices(6)), vec![1, 0, 0]),
    ]
}
