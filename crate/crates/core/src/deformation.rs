//! Deformation of fine-grid chains onto a coarse cubical grid:
//! `T = P + Q + ∂L` with `P` on the coarse `k`-skeleton.
//!
//! Everything happens on a refined lattice of edge `u` that contains both the
//! fine lattice and the coarse lattice (edge `ε = M·u`, origin `o`). Along one
//! axis, `f` sends a vertex to the nearest coarse vertex (ties toward −∞) and
//! an edge to the coarse edge its endpoints land on; `h` sends a vertex to
//! the path from its image back to it and edges to zero, so that
//! `id − f = ∂h + h∂`. On cubes `F = f ⊗ … ⊗ f` and
//!
//! ```text
//! H(x₁ ⊗ … ⊗ xₙ) = Σᵢ (−1)^(|x₁|+…+|xᵢ₋₁|) f(x₁) ⊗ … ⊗ f(xᵢ₋₁) ⊗ h(xᵢ) ⊗ xᵢ₊₁ ⊗ … ⊗ xₙ
//! ```
//!
//! satisfies `id − F = ∂H + H∂`; then `P = F(T)`, `Q = H(∂T)`, `L = H(T)`.

use std::collections::{BTreeMap, HashMap};

use num::{Integer, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cell::{Cell, Cube};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::CubicalGrid;
use crate::rational::{self, Q};

/// Candidate offsets tried by [`select_offset`] after the template offset.
pub const OFFSET_RETRIES: usize = 50;

/// A one-dimensional cell: the vertex `x` or the edge `[x, x + 1]`.
type Cell1 = (i64, bool);
type Chain1 = Vec<(Cell1, i64)>;

/// The `j`-skeleton `W_j` of a cubical grid and its dual `W''_(n−j−1)`.
#[derive(Debug, Clone)]
pub struct GridSkeleton {
    pub grid: CubicalGrid,
    pub dim: usize,
}

impl GridSkeleton {
    pub fn new(grid: CubicalGrid, dim: usize) -> Self {
        GridSkeleton { grid, dim }
    }

    /// The `j`-cells of the grid inside its box.
    pub fn cells(&self) -> Vec<Cell> {
        self.grid.all_cells().into_iter().filter(|c| c.dim() == self.dim).collect()
    }

    /// Whether `p` lies on the dual skeleton: at least `j + 1` coordinates at
    /// cube-center positions.
    pub fn dual_contains(&self, p: &[Q]) -> bool {
        let half = rational::frac(1, 2);
        let count = p
            .iter()
            .zip(&self.grid.offset)
            .filter(|(x, o)| {
                let t = (*x - *o) / &self.grid.edge - &half;
                t.is_integer()
            })
            .count();
        count > self.dim
    }
}

/// Radial projection of `p` in the closed top cube `cube` of `g` onto the
/// `target`-skeleton: repeatedly push `p` from the center of the smallest face
/// containing it to that face's boundary.
pub fn radial_project(p: &[Q], cube: &Cube, target: usize, g: &CubicalGrid) -> Result<Vec<Q>> {
    if p.len() != g.dim() || cube.ambient() != g.dim() {
        return Err(Error::ArityMismatch { expected: g.dim(), got: p.len() });
    }
    let b = g.bounds(cube);
    if p.iter().zip(&b).any(|(x, (lo, hi))| x < lo || x > hi) {
        return Err(Error::OutsideCube);
    }
    let two = rational::int(2);
    let mut y = p.to_vec();
    loop {
        let free: Vec<usize> = (0..y.len()).filter(|&i| b[i].0 < y[i] && y[i] < b[i].1).collect();
        if free.len() <= target {
            return Ok(y);
        }
        let c: Vec<Q> = free.iter().map(|&i| (&b[i].0 + &b[i].1) / &two).collect();
        let v: Vec<Q> = free.iter().zip(&c).map(|(&i, ci)| &y[i] - ci).collect();
        if v.iter().all(Zero::is_zero) {
            return Err(Error::CenterSingularity);
        }
        let t = free
            .iter()
            .zip(&v)
            .filter(|(_, vi)| !vi.is_zero())
            .map(|(&i, vi)| (&b[i].1 - &b[i].0) / &two / vi.abs())
            .min()
            .expect("some direction is nonzero");
        for ((&i, ci), vi) in free.iter().zip(&c).zip(&v) {
            y[i] = ci + &t * vi;
        }
    }
}

/// Observed mass ratios; `None` is an infinite ratio (nonzero over zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa {
    /// `M(P) / (M(T) + ε M(∂T))`
    pub p: Option<Q>,
    /// `M(∂P) / M(∂T)`
    pub boundary: Option<Q>,
    /// `M(Q) / (ε M(∂T))`
    pub q: Option<Q>,
    /// `M(L) / (ε M(T))`
    pub l: Option<Q>,
}

impl Kappa {
    pub fn all(&self) -> [&Option<Q>; 4] {
        [&self.p, &self.boundary, &self.q, &self.l]
    }

    pub fn is_finite(&self) -> bool {
        self.all().iter().all(|k| k.is_some())
    }

    /// Largest ratio (`None` if any is infinite).
    pub fn max(&self) -> Option<Q> {
        self.all().iter().map(|k| (*k).clone()).collect::<Option<Vec<Q>>>().map(|v| v.into_iter().max().unwrap_or_else(Q::zero))
    }
}

fn ratio(num: &Q, den: &Q) -> Option<Q> {
    match (num.is_zero(), den.is_zero()) {
        (true, _) => Some(Q::zero()),
        (false, true) => None,
        (false, false) => Some(num / den),
    }
}

#[derive(Debug, Clone)]
pub struct DeformationResult {
    /// The input, subdivided onto the refined lattice.
    pub t: Chain,
    pub p: Chain,
    pub q: Chain,
    pub l: Chain,
    /// `P` as a chain of coarse cells.
    pub p_coarse: Chain,
    /// Grid carrying `t`, `p`, `q` and `l`.
    pub refined: CubicalGrid,
    /// Grid carrying `p_coarse`.
    pub coarse: CubicalGrid,
    pub kappa: Kappa,
    /// Largest Chebyshev distance from a cell center of `P`, `Q` or `L` to `spt(T)`.
    pub support_radius: Q,
    /// `2 n ε`
    pub support_bound: Q,
}

impl DeformationResult {
    /// `T − P − Q − ∂L`
    pub fn residual(&self) -> Result<Chain> {
        let mut r = &(&self.t - &self.p) - &self.q;
        if !self.l.is_zero() {
            r -= &self.l.boundary()?;
        }
        Ok(r)
    }
}

/// Fine grid, coarse grid and the refined lattice relating them.
#[derive(Debug, Clone)]
pub struct Deformer {
    pub fine: CubicalGrid,
    pub coarse: CubicalGrid,
    pub refined: CubicalGrid,
    /// refined cells per fine edge
    r: i64,
    /// refined cells per coarse edge
    big_m: i64,
    /// refined coordinate of the coarse origin
    origin: Vec<i64>,
}

fn to_i64(x: &Q) -> Result<i64> {
    x.to_integer().to_i64().ok_or(Error::BBoxOverflow)
}

impl Deformer {
    /// `coarse` supplies the edge `ε` and the offset; its box is recomputed to
    /// cover the fine box.
    pub fn new(fine: &CubicalGrid, coarse: &CubicalGrid) -> Result<Self> {
        let n = fine.dim();
        if coarse.dim() != n {
            return Err(Error::DimensionMismatch(format!("fine grid has dimension {n}, coarse {}", coarse.dim())));
        }
        if fine.is_periodic() || coarse.is_periodic() {
            return Err(Error::DimensionMismatch("deformation needs non-periodic grids".into()));
        }
        let m = &coarse.edge / &fine.edge;
        if !m.is_integer() || !m.is_positive() {
            return Err(Error::DimensionMismatch(format!("fine edge {} does not divide coarse edge {}", rational::fmt(&fine.edge), rational::fmt(&coarse.edge))));
        }
        let shifts: Vec<Q> = coarse.offset.iter().zip(&fine.offset).map(|(a, b)| (a - b) / &fine.edge).collect();
        let r = to_i64(&Q::from(rational::common_denominator(&shifts)))?;
        let big_m = to_i64(&m)? * r;
        let origin: Vec<i64> = shifts.iter().map(|s| to_i64(&(s * rational::int(r)))).collect::<Result<_>>()?;
        let pad = 2 * big_m;
        let refined = CubicalGrid::new(
            &fine.edge / rational::int(r),
            fine.offset.clone(),
            fine.lo.iter().map(|x| x * r - pad).collect(),
            fine.hi.iter().map(|x| x * r + pad).collect(),
        )?;
        let clo: Vec<i64> = (0..n).map(|i| Integer::div_floor(&(refined.lo[i] - origin[i]), &big_m)).collect();
        let chi: Vec<i64> = (0..n).map(|i| Integer::div_ceil(&(refined.hi[i] - origin[i]), &big_m)).collect();
        let coarse = CubicalGrid::new(coarse.edge.clone(), coarse.offset.clone(), clo, chi)?;
        Ok(Deformer { fine: fine.clone(), coarse, refined, r, big_m, origin })
    }

    pub fn refinement(&self) -> i64 {
        self.r
    }

    /// Subdivides a fine chain onto the refined lattice.
    pub fn refine(&self, t: &Chain) -> Chain {
        if self.r == 1 {
            return t.clone();
        }
        let r = self.r;
        let mut out = Chain::zero(t.dim());
        for (cell, k) in t.iter() {
            let c = cell.as_cube().expect("cubical chain");
            let base: Vec<i64> = c.anchor.iter().map(|x| x * r).collect();
            let mut offs = vec![0i64; c.axes.len()];
            'outer: loop {
                let mut anchor = base.clone();
                for (j, &a) in c.axes.iter().enumerate() {
                    anchor[a] += offs[j];
                }
                out.add_term(Cell::Cube(Cube { anchor, axes: c.axes.clone() }), k);
                for j in (0..offs.len()).rev() {
                    if offs[j] + 1 < r {
                        offs[j] += 1;
                        continue 'outer;
                    }
                    offs[j] = 0;
                }
                break;
            }
        }
        out
    }

    /// Coarse index of the coarse vertex nearest to refined coordinate `x` on `axis`.
    fn round(&self, axis: usize, x: i64) -> i64 {
        let d = x - self.origin[axis];
        let (z, rem) = d.div_mod_floor(&self.big_m);
        if 2 * rem > self.big_m { z + 1 } else { z }
    }

    fn vertex_of(&self, axis: usize, z: i64) -> i64 {
        self.origin[axis] + self.big_m * z
    }

    /// Coarse image of a 1-cell (coarse units).
    fn f_coarse(&self, axis: usize, c: Cell1) -> Option<Cell1> {
        let (x, edge) = c;
        let z = self.round(axis, x);
        if !edge {
            return Some((z, false));
        }
        let z1 = self.round(axis, x + 1);
        (z1 != z).then_some((z, true))
    }

    /// Refined image of a 1-cell.
    fn f(&self, axis: usize, c: Cell1) -> Chain1 {
        match self.f_coarse(axis, c) {
            None => vec![],
            Some((z, false)) => vec![((self.vertex_of(axis, z), false), 1)],
            Some((z, true)) => {
                let v = self.vertex_of(axis, z);
                (0..self.big_m).map(|j| ((v + j, true), 1)).collect()
            }
        }
    }

    /// Path from the image of a vertex back to it; zero on edges.
    fn h(&self, axis: usize, c: Cell1) -> Chain1 {
        let (x, edge) = c;
        if edge {
            return vec![];
        }
        let v = self.vertex_of(axis, self.round(axis, x));
        if v <= x {
            (v..x).map(|j| ((j, true), 1)).collect()
        } else {
            (x..v).map(|j| ((j, true), -1)).collect()
        }
    }

    fn factors(c: &Cube) -> Vec<Cell1> {
        (0..c.ambient()).map(|i| (c.anchor[i], c.spans(i))).collect()
    }

    /// Adds `sign · (a₁ ⊗ … ⊗ aₙ)` to `out`.
    fn tensor(parts: &[Chain1], sign: i64, out: &mut BTreeMap<Cube, i64>) {
        if parts.iter().any(Vec::is_empty) {
            return;
        }
        let n = parts.len();
        let mut idx = vec![0usize; n];
        'outer: loop {
            let mut coeff = sign;
            let mut anchor = Vec::with_capacity(n);
            let mut axes = vec![];
            for (i, p) in parts.iter().enumerate() {
                let ((x, edge), k) = p[idx[i]];
                coeff *= k;
                anchor.push(x);
                if edge {
                    axes.push(i);
                }
            }
            *out.entry(Cube { anchor, axes }).or_insert(0) += coeff;
            for i in (0..n).rev() {
                if idx[i] + 1 < parts[i].len() {
                    idx[i] += 1;
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
    }

    fn collect(dim: usize, terms: BTreeMap<Cube, i64>) -> Chain {
        Chain::from_terms(dim, terms.into_iter().map(|(c, k)| (Cell::Cube(c), k))).expect("cells of one dimension")
    }

    /// `F(c)` in coarse cells.
    fn f_chain_coarse(&self, t: &Chain) -> Chain {
        let mut out = BTreeMap::new();
        for (cell, k) in t.iter() {
            let parts: Option<Vec<Cell1>> = Self::factors(cell.as_cube().expect("cubical chain")).into_iter().enumerate().map(|(i, c)| self.f_coarse(i, c)).collect();
            if let Some(parts) = parts {
                let parts: Vec<Chain1> = parts.into_iter().map(|c| vec![(c, 1)]).collect();
                Self::tensor(&parts, k, &mut out);
            }
        }
        Self::collect(t.dim(), out)
    }

    /// Subdivides a coarse chain onto the refined lattice.
    pub fn expand(&self, c: &Chain) -> Chain {
        let mut out = BTreeMap::new();
        for (cell, k) in c.iter() {
            let cube = cell.as_cube().expect("cubical chain");
            let parts: Vec<Chain1> = Self::factors(cube)
                .into_iter()
                .enumerate()
                .map(|(i, (z, edge))| {
                    let v = self.vertex_of(i, z);
                    if edge { (0..self.big_m).map(|j| ((v + j, true), 1)).collect() } else { vec![((v, false), 1)] }
                })
                .collect();
            Self::tensor(&parts, k, &mut out);
        }
        Self::collect(c.dim(), out)
    }

    /// `H(c)` on the refined lattice.
    fn h_chain(&self, t: &Chain) -> Chain {
        let mut out = BTreeMap::new();
        for (cell, k) in t.iter() {
            let xs = Self::factors(cell.as_cube().expect("cubical chain"));
            let n = xs.len();
            let mut sign = k;
            for i in 0..n {
                let mut parts: Vec<Chain1> = Vec::with_capacity(n);
                parts.extend((0..i).map(|j| self.f(j, xs[j])));
                parts.push(self.h(i, xs[i]));
                parts.extend((i + 1..n).map(|j| vec![(xs[j], 1)]));
                Self::tensor(&parts, sign, &mut out);
                if xs[i].1 {
                    sign = -sign;
                }
            }
        }
        Self::collect(t.dim() + 1, out)
    }

    /// A cell of the refined chain meeting the dual skeleton `W''_(n−k−1)`.
    pub fn conflict(&self, t: &Chain) -> Option<Cell> {
        let m2 = 2 * self.big_m;
        t.cells()
            .find(|cell| {
                let c = cell.as_cube().expect("cubical chain");
                let hits = (0..c.ambient())
                    .filter(|&i| {
                        let w = 2 * (c.anchor[i] - self.origin[i]) - self.big_m;
                        if c.spans(i) { (-w).rem_euclid(m2) <= 2 } else { w.rem_euclid(m2) == 0 }
                    })
                    .count();
                hits > t.dim()
            })
            .cloned()
    }

    /// Whether every cell of a refined chain lies in the coarse skeleton of its dimension.
    pub fn on_coarse_skeleton(&self, c: &Chain) -> bool {
        c.cells().all(|cell| {
            let q = cell.as_cube().expect("cubical chain");
            (0..q.ambient()).all(|i| q.spans(i) || (q.anchor[i] - self.origin[i]).rem_euclid(self.big_m) == 0)
        })
    }

    fn mass(&self, c: &Chain) -> Q {
        let w = self.refined.weight(c.dim());
        Q::from(num::BigInt::from(c.iter().map(|(_, k)| k.unsigned_abs()).sum::<u64>())) * w
    }

    /// Largest Chebyshev distance from a cell center of the chains to `spt(t)`.
    fn support_radius(&self, t: &Chain, chains: &[&Chain]) -> Q {
        // doubled refined units
        let boxes: Vec<Vec<(i64, i64)>> = t
            .cells()
            .map(|c| {
                let q = c.as_cube().unwrap();
                (0..q.ambient()).map(|i| (2 * q.anchor[i], 2 * q.anchor[i] + 2 * i64::from(q.spans(i)))).collect()
            })
            .collect();
        let mut worst = 0i64;
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        for c in chains.iter().flat_map(|c| c.cells()) {
            let q = c.as_cube().unwrap();
            let center: Vec<i64> = (0..q.ambient()).map(|i| 2 * q.anchor[i] + i64::from(q.spans(i))).collect();
            if seen.insert(center.clone(), ()).is_some() {
                continue;
            }
            let d = boxes
                .iter()
                .map(|b| center.iter().zip(b).map(|(&x, &(lo, hi))| (lo - x).max(x - hi).max(0)).max().unwrap_or(0))
                .min()
                .unwrap_or(0);
            worst = worst.max(d);
        }
        rational::int(worst) * &self.refined.edge / rational::int(2)
    }

    /// Deforms a fine-grid chain.
    pub fn deform(&self, t: &Chain) -> Result<DeformationResult> {
        if let Some(c) = t.cells().next() {
            if c.as_cube().map(Cube::ambient) != Some(self.fine.dim()) {
                return Err(Error::DimensionMismatch("chain does not live on the fine grid".into()));
            }
        }
        let t = self.refine(t);
        if let Some(c) = self.conflict(&t) {
            return Err(Error::OffsetConflict(format!("cell {c} meets the dual skeleton")));
        }
        let k = t.dim();
        let bt = if k == 0 { Chain::zero(0) } else { t.boundary()? };
        let p_coarse = self.f_chain_coarse(&t);
        let p = self.expand(&p_coarse);
        let l = self.h_chain(&t);
        let q = if k == 0 { Chain::zero(0) } else { self.h_chain(&bt) };

        let eps = &self.coarse.edge;
        let (mt, mbt, mp, mq, ml) = (self.mass(&t), self.mass(&bt), self.mass(&p), self.mass(&q), self.mass(&l));
        let mbp = if k == 0 { Q::zero() } else { self.mass(&p.boundary()?) };
        let kappa = Kappa {
            p: ratio(&mp, &(&mt + eps * &mbt)),
            boundary: ratio(&mbp, &mbt),
            q: ratio(&mq, &(eps * &mbt)),
            l: ratio(&ml, &(eps * &mt)),
        };
        let support_radius = self.support_radius(&t, &[&p, &q, &l]);
        let support_bound = rational::int(2 * self.fine.dim() as i64) * eps;
        Ok(DeformationResult { t, p, q, l, p_coarse, refined: self.refined.clone(), coarse: self.coarse.clone(), kappa, support_radius, support_bound })
    }
}

/// Deforms `t` onto the coarse grid (edge and offset taken from `coarse`).
pub fn deform(t: &Chain, fine: &CubicalGrid, coarse: &CubicalGrid) -> Result<DeformationResult> {
    Deformer::new(fine, coarse)?.deform(t)
}

fn with_offset(template: &CubicalGrid, offset: Vec<Q>) -> Result<CubicalGrid> {
    CubicalGrid::new(template.edge.clone(), offset, template.lo.clone(), template.hi.clone())
}

/// An offset for the coarse grid such that no chain in `batch` meets the dual
/// skeleton. Tries the template's offset first, then seeded random shifts by
/// multiples of half a fine edge.
pub fn select_offset(batch: &[Chain], fine: &CubicalGrid, coarse: &CubicalGrid, seed: u64) -> Result<Vec<Q>> {
    if batch.is_empty() {
        return Err(Error::EmptySet);
    }
    let ok = |offset: &Vec<Q>| -> Result<bool> {
        let d = Deformer::new(fine, &with_offset(coarse, offset.clone())?)?;
        Ok(batch.iter().all(|t| d.conflict(&d.refine(t)).is_none()))
    };
    if ok(&coarse.offset)? {
        return Ok(coarse.offset.clone());
    }
    let steps = to_i64(&(rational::int(2) * &coarse.edge / &fine.edge))?;
    let half = &fine.edge / rational::int(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..OFFSET_RETRIES {
        let cand: Vec<Q> = coarse.offset.iter().map(|o| o + &half * rational::int(rng.gen_range(0..steps))).collect();
        if ok(&cand)? {
            return Ok(cand);
        }
    }
    Err(Error::OffsetSearchExhausted(OFFSET_RETRIES))
}

/// Picks one offset for the whole batch, then deforms every member.
pub fn deform_batch(batch: &[Chain], fine: &CubicalGrid, coarse: &CubicalGrid, seed: u64, exec: Exec) -> Result<(Vec<Q>, Vec<DeformationResult>)> {
    let a = select_offset(batch, fine, coarse, seed)?;
    let d = Deformer::new(fine, &with_offset(coarse, a.clone())?)?;
    let results = exec.map(batch, |t| d.deform(t)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok((a, results))
}

/// A random fine chain: `cells` distinct `k`-cubes with coefficients in `[-2, 2] ∖ {0}`
/// inside the box of `g`.
pub fn random_chain(rng: &mut impl Rng, g: &CubicalGrid, k: usize, cells: usize) -> Chain {
    let n = g.dim();
    let mut c = Chain::zero(k);
    while c.len() < cells {
        let mut axes: Vec<usize> = rand::seq::index::sample(rng, n, k).into_vec();
        axes.sort_unstable();
        let anchor: Vec<i64> = (0..n)
            .map(|i| {
                let top = if axes.contains(&i) { g.hi[i] - 1 } else { g.hi[i] };
                rng.gen_range(g.lo[i]..=top)
            })
            .collect();
        let mut coeff = rng.gen_range(1..=2);
        if rng.gen_bool(0.5) {
            coeff = -coeff;
        }
        c.add_term(Cell::Cube(Cube { anchor, axes }), coeff);
    }
    c
}

/// A random fine cycle: the boundary of a random `(k+1)`-chain.
pub fn random_cycle(rng: &mut impl Rng, g: &CubicalGrid, k: usize, cells: usize) -> Chain {
    loop {
        let c = random_chain(rng, g, k + 1, cells).boundary().expect("k + 1 ≥ 1");
        if !c.is_zero() {
            return c;
        }
    }
}

/// Largest observed `κ` and whether it stays below `ceiling`.
pub fn kappa_within(results: &[DeformationResult], ceiling: &Q) -> (Option<Q>, bool) {
    let mut worst = Some(Q::zero());
    for r in results {
        worst = match (worst, r.kappa.max()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    let ok = worst.as_ref().is_some_and(|w| w < ceiling);
    (worst, ok)
}

/// Default regression ceiling `6ⁿ`.
pub fn default_kappa_ceiling(n: usize) -> Q {
    rational::int(6i64.pow(n as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn grids(n: usize, fine: Q, w: i64) -> (CubicalGrid, CubicalGrid) {
        let hi = to_i64(&(int(w) / &fine)).unwrap();
        let f = CubicalGrid::boxed(fine, vec![0; n], vec![hi; n]).unwrap();
        let c = CubicalGrid::boxed(int(1), vec![0; n], vec![w; n]).unwrap();
        (f, c)
    }

    #[test]
    fn radial_projection_examples() {
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![2, 2]).unwrap();
        let cube = Cube::top(vec![0, 0]);
        let y = radial_project(&[frac(3, 4), frac(1, 2)], &cube, 1, &g).unwrap();
        assert_eq!(y, vec![int(1), frac(1, 2)]);
        let face_center = [int(1), frac(1, 2)];
        assert_eq!(radial_project(&face_center, &cube, 1, &g).unwrap(), face_center.to_vec());
        assert_eq!(radial_project(&[frac(1, 2), frac(1, 2)], &cube, 1, &g).unwrap_err().kind(), "CenterSingularity");
        assert_eq!(radial_project(&face_center, &cube, 0, &g).unwrap_err().kind(), "CenterSingularity");
        let v = radial_project(&[frac(7, 8), frac(5, 8)], &cube, 0, &g).unwrap();
        assert_eq!(v, vec![int(1), int(1)]);
        assert_eq!(radial_project(&[int(3), int(0)], &cube, 0, &g).unwrap_err().kind(), "OutsideCube");
    }

    #[test]
    fn coarse_chain_is_fixed() {
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![4, 4]).unwrap();
        let t = Chain::cell(Cell::Cube(Cube::top(vec![1, 1])), 1).boundary().unwrap();
        let r = deform(&t, &g, &g).unwrap();
        assert_eq!(r.p, t);
        assert!(r.q.is_zero() && r.l.is_zero());
    }

    #[test]
    fn staircase_cycle() {
        let (f, c) = grids(2, frac(1, 4), 8);
        // boundary of the region under a diagonal staircase
        let region = Chain::from_terms(2, (1..30).flat_map(|i| (1..i).map(move |j| (Cell::Cube(Cube::top(vec![i, j])), 1)))).unwrap();
        let t = region.boundary().unwrap();
        assert_eq!(deform(&t, &f, &c).unwrap_err().kind(), "OffsetConflict");
        let (_, rs) = deform_batch(std::slice::from_ref(&t), &f, &c, 0, Exec::Sequential).unwrap();
        let r = &rs[0];
        assert!(r.q.is_zero());
        assert!(r.residual().unwrap().is_zero());
        assert!(r.p.boundary().unwrap().is_zero());
        assert!(r.support_radius <= r.support_bound);
    }

    #[test]
    fn vertex_goes_to_nearest_coarse_vertex() {
        let (f, c) = grids(2, frac(1, 4), 4);
        let t = Chain::cell(Cell::cube(vec![5, 7], vec![]), 1);
        let d = Deformer::new(&f, &c).unwrap();
        let r = d.deform(&t).unwrap();
        assert_eq!(r.p, Chain::cell(Cell::cube(vec![4, 8], vec![]), 1));
        assert_eq!(r.p_coarse, Chain::cell(Cell::cube(vec![1, 2], vec![]), 1));
        assert!(r.q.is_zero());
        assert_eq!(r.l.len(), 2);
        assert_eq!(r.l.boundary().unwrap(), &t - &r.p);
    }

    #[test]
    fn offset_selection() {
        let (f, c) = grids(2, frac(1, 4), 4);
        let fine_ok = Chain::cell(Cell::cube(vec![1, 1], vec![]), 1);
        assert_eq!(select_offset(&[fine_ok], &f, &c, 0).unwrap(), c.offset);
        let at_center = Chain::cell(Cell::cube(vec![2, 2], vec![]), 1);
        let d = Deformer::new(&f, &c).unwrap();
        assert_eq!(d.deform(&at_center).unwrap_err().kind(), "OffsetConflict");
        let a = select_offset(std::slice::from_ref(&at_center), &f, &c, 3).unwrap();
        assert_ne!(a, c.offset);
        let shifted = CubicalGrid::new(c.edge.clone(), a, c.lo.clone(), c.hi.clone()).unwrap();
        let r = deform(&at_center, &f, &shifted).unwrap();
        assert!(r.residual().unwrap().is_zero());
        let sk = GridSkeleton::new(shifted, 0);
        assert!(!sk.dual_contains(&f.point(&[2, 2])));
    }

    #[test]
    fn random_identity_and_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=3 {
            let (f, c) = grids(n, frac(1, 4), 3);
            for k in 0..n {
                let batch: Vec<Chain> = (0..6).map(|_| random_chain(&mut rng, &f, k, 5)).collect();
                let (_, res) = deform_batch(&batch, &f, &c, 1, Exec::default()).unwrap();
                for r in &res {
                    assert!(r.residual().unwrap().is_zero());
                    assert!(r.support_radius <= r.support_bound);
                    assert!(r.kappa.is_finite());
                }
                let (a, _) = deform_batch(&batch, &f, &c, 1, Exec::default()).unwrap();
                let d = Deformer::new(&f, &CubicalGrid::new(c.edge.clone(), a, c.lo.clone(), c.hi.clone()).unwrap()).unwrap();
                let sum = d.deform(&(&batch[0] + &batch[1])).unwrap();
                assert_eq!(sum.p, &res[0].p + &res[1].p);
                assert_eq!(sum.l, &res[0].l + &res[1].l);
                assert_eq!(sum.q, &res[0].q + &res[1].q);
            }
        }
    }

    #[test]
    fn half_offsets_refine() {
        let (f, c) = grids(2, frac(1, 2), 3);
        let shifted = CubicalGrid::new(int(1), vec![frac(1, 4), frac(3, 4)], c.lo.clone(), c.hi.clone()).unwrap();
        let d = Deformer::new(&f, &shifted).unwrap();
        assert_eq!(d.refinement(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_cycle(&mut rng, &f, 1, 4);
        let r = d.deform(&t).unwrap();
        assert!(r.residual().unwrap().is_zero());
        assert!(r.q.is_zero());
        assert!(d.on_coarse_skeleton(&r.p));
        assert_eq!(d.expand(&r.p_coarse), r.p);
    }
}
