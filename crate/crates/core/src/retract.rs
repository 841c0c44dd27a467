//! Barycentric subdivision, full subcomplexes, regular neighborhoods and the
//! retraction `r : N(L) → |L|`,
//! `r(α) = Σ_{a ∈ L} α(a)·a / Σ_{a ∈ L} α(a)`,
//! on points (barycentric coordinates) and on chains (via a simplicial
//! approximation followed by the last-vertex maps back down to `L`).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num::{Signed, Zero};
use rand::Rng;

use crate::cell::{Cell, Simplex};
use crate::chain::Chain;
use crate::complex::{CellComplex, Geometry};
use crate::error::{Error, Result};
use crate::ops::{pushforward, CellularMap, SimplicialMap};
use crate::rational::{self, Q};

/// Subdivision rounds tried by [`retract_chain`] before giving up.
pub const SUBDIVISION_CAP: usize = 5;

fn coords(k: &CellComplex) -> Result<&[Vec<Q>]> {
    match k.geometry() {
        Geometry::Simplicial(c) => Ok(c),
        Geometry::Cubical(_) => Err(Error::NotSimplicial),
    }
}

fn simplex(c: &Cell) -> &Simplex {
    c.as_simplex().expect("simplicial complex")
}

/// `sd(K)` with the subdivision chain map. Vertex `i` of `sd(K)` is the
/// barycenter of the `i`-th simplex of `K` (dimension-major, sorted).
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: CellComplex,
    /// simplex of `K` behind each new vertex
    pub origin: Vec<Simplex>,
    vertex_of: HashMap<Simplex, usize>,
}

impl Subdivision {
    /// Barycenter vertex of a simplex of `K`.
    pub fn barycenter(&self, s: &Simplex) -> Option<usize> {
        self.vertex_of.get(s).copied()
    }

    /// `sd(v) = v`, `sd(σ) = b_σ * sd(∂σ)`.
    pub fn apply(&self, c: &Chain) -> Result<Chain> {
        let mut memo: HashMap<Simplex, Chain> = HashMap::new();
        let mut out = Chain::zero(c.dim());
        for (cell, k) in c.iter() {
            let s = cell.as_simplex().ok_or(Error::NotSimplicial)?;
            let img = self.sd(s, &mut memo)?;
            out += &img.scale(k);
        }
        Ok(out)
    }

    fn sd(&self, s: &Simplex, memo: &mut HashMap<Simplex, Chain>) -> Result<Chain> {
        if let Some(c) = memo.get(s) {
            return Ok(c.clone());
        }
        let b = self.barycenter(s).ok_or_else(|| Error::NotSubcomplex(Cell::Simplex(s.clone()).key()))?;
        let out = if s.vertices.len() == 1 {
            Chain::cell(Cell::Simplex(Simplex { vertices: vec![b] }), 1)
        } else {
            let mut boundary = Chain::zero(s.vertices.len() - 2);
            for (f, sign) in s.faces() {
                boundary += &self.sd(&f, memo)?.scale(sign);
            }
            cone(b, &boundary)
        };
        memo.insert(s.clone(), out.clone());
        Ok(out)
    }

    /// `sd(L)` as a subcomplex of `sd(K)`.
    pub fn subcomplex(&self, l: &CellComplex) -> Result<CellComplex> {
        let keep: Vec<Cell> = self
            .complex
            .all_cells()
            .filter(|c| simplex(c).vertices.iter().all(|&v| l.contains(&Cell::Simplex(self.origin[v].clone()))))
            .cloned()
            .collect();
        self.complex.with_cells(keep)
    }

    /// Simplicial approximation of the identity `sd(K) → K`: each barycenter
    /// goes to the lowest vertex of its simplex. Left inverse of `sd` on chains.
    pub fn last_vertex_map(&self) -> SimplicialMap {
        SimplicialMap { vertex_map: self.origin.iter().map(|s| s.vertices[0]).collect() }
    }
}

/// Cone `b * c`.
fn cone(b: usize, c: &Chain) -> Chain {
    let mut out = Chain::zero(c.dim() + 1);
    for (cell, k) in c.iter() {
        let mut v = vec![b];
        v.extend(&simplex(cell).vertices);
        if let Some((s, sign)) = Simplex::oriented(v) {
            out.add_term(Cell::Simplex(s), sign * k);
        }
    }
    out
}

/// Barycentric subdivision of a simplicial complex.
pub fn barycentric_subdivision(k: &CellComplex) -> Result<Subdivision> {
    let pts = coords(k)?;
    let origin: Vec<Simplex> = k.all_cells().map(|c| simplex(c).clone()).collect();
    let vertex_of: HashMap<Simplex, usize> = origin.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let new_coords: Vec<Vec<Q>> = origin
        .iter()
        .map(|s| {
            let n = rational::int(s.vertices.len() as i64);
            let dim = pts[s.vertices[0]].len();
            (0..dim).map(|i| s.vertices.iter().map(|&v| pts[v][i].clone()).sum::<Q>() / &n).collect()
        })
        .collect();
    let mut tops = BTreeSet::new();
    for m in k.maximal_cells() {
        for_each_permutation(&simplex(&m).vertices, &mut |perm| {
            let flag: Vec<usize> = (1..=perm.len())
                .map(|j| {
                    let mut face = perm[..j].to_vec();
                    face.sort_unstable();
                    vertex_of[&Simplex { vertices: face }]
                })
                .collect();
            tops.insert(Simplex::new(flag).expect("flags have distinct barycenters"));
        });
    }
    let complex = CellComplex::simplicial_trusted(new_coords, tops, k.weight_scheme())?;
    Ok(Subdivision { complex, origin, vertex_of })
}

fn for_each_permutation(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn go(cur: &mut Vec<usize>, rest: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if rest.is_empty() {
            f(cur);
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(cur, rest, f);
            cur.pop();
            rest.insert(i, x);
        }
    }
    go(&mut vec![], &mut items.to_vec(), f);
}

fn check_sub(k: &CellComplex, l: &CellComplex) -> Result<()> {
    coords(k)?;
    coords(l)?;
    match l.all_cells().find(|c| !k.contains(c)) {
        Some(c) => Err(Error::NotSubcomplex(c.key())),
        None => Ok(()),
    }
}

fn vertex_set(l: &CellComplex) -> HashSet<usize> {
    l.cells(0).iter().map(|c| simplex(c).vertices[0]).collect()
}

/// Every simplex of `K` spanned by vertices of `L` belongs to `L`.
pub fn is_full(k: &CellComplex, l: &CellComplex) -> Result<bool> {
    check_sub(k, l)?;
    let lv = vertex_set(l);
    Ok(k.all_cells().all(|c| !simplex(c).vertices.iter().all(|v| lv.contains(v)) || l.contains(c)))
}

/// Simplices of `K` with at least one vertex in `L`.
pub fn regular_neighborhood(k: &CellComplex, l: &CellComplex) -> Result<Vec<Cell>> {
    if !is_full(k, l)? {
        return Err(Error::NotFull);
    }
    let lv = vertex_set(l);
    Ok(k.all_cells().filter(|c| simplex(c).vertices.iter().any(|v| lv.contains(v))).cloned().collect())
}

/// A point of `|K|` in barycentric coordinates on its carrier simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricPoint {
    pub carrier: Simplex,
    /// Positive weights on carrier vertices, summing to one.
    pub coords: BTreeMap<usize, Q>,
}

impl BarycentricPoint {
    pub fn new(carrier: Simplex, weights: impl IntoIterator<Item = (usize, Q)>) -> Result<Self> {
        let mut coords = BTreeMap::new();
        for (v, w) in weights {
            if w.is_negative() {
                return Err(Error::DimensionMismatch(format!("negative barycentric weight on vertex {v}")));
            }
            if !carrier.vertices.contains(&v) {
                return Err(Error::DimensionMismatch(format!("vertex {v} is not in the carrier")));
            }
            if !w.is_zero() {
                *coords.entry(v).or_insert_with(Q::zero) += w;
            }
        }
        let total: Q = coords.values().sum();
        if total != rational::int(1) {
            return Err(Error::DimensionMismatch(format!("weights sum to {}", rational::fmt(&total))));
        }
        Ok(BarycentricPoint { carrier, coords })
    }

    /// Position in the ambient space of `K`.
    pub fn position(&self, k: &CellComplex) -> Result<Vec<Q>> {
        let pts = coords(k)?;
        let dim = pts.first().map_or(0, Vec::len);
        Ok((0..dim).map(|i| self.coords.iter().map(|(&v, w)| w * &pts[v][i]).sum()).collect())
    }
}

/// `r(α)`: drops the weight off `L` and renormalizes. Points already on `L`
/// are returned unchanged.
pub fn retract_point(a: &BarycentricPoint, k: &CellComplex, l: &CellComplex) -> Result<BarycentricPoint> {
    check_sub(k, l)?;
    if !k.contains(&Cell::Simplex(a.carrier.clone())) {
        return Err(Error::NotSubcomplex(Cell::Simplex(a.carrier.clone()).key()));
    }
    let lv = vertex_set(l);
    if a.coords.keys().all(|v| lv.contains(v)) {
        return Ok(a.clone());
    }
    let mass: Q = a.coords.iter().filter(|(v, _)| lv.contains(v)).map(|(_, w)| w.clone()).sum();
    if mass.is_zero() {
        return Err(Error::OutsideNeighborhood);
    }
    let coords: BTreeMap<usize, Q> = a.coords.iter().filter(|(v, _)| lv.contains(v)).map(|(&v, w)| (v, w / &mass)).collect();
    let carrier = Simplex { vertices: coords.keys().copied().collect() };
    Ok(BarycentricPoint { carrier, coords })
}

/// Random point of `N(L)`: a random simplex with an `L` vertex and random
/// positive weights.
pub fn random_neighborhood_point(rng: &mut impl Rng, k: &CellComplex, l: &CellComplex) -> Result<BarycentricPoint> {
    let n = regular_neighborhood(k, l)?;
    let s = simplex(&n[rng.gen_range(0..n.len())]).clone();
    let raw: Vec<i64> = s.vertices.iter().map(|_| rng.gen_range(1..=12)).collect();
    let total: i64 = raw.iter().sum();
    BarycentricPoint::new(s.clone(), s.vertices.iter().zip(raw).map(|(&v, w)| (v, rational::frac(w, total))))
}

/// One level of the subdivision tower.
struct Level {
    k: CellComplex,
    l: CellComplex,
    /// barycentric coordinates of each vertex over the vertices of the base complex
    base: Vec<BTreeMap<usize, Q>>,
    /// last-vertex map down to the previous level
    down: Option<SimplicialMap>,
    /// coordinates of the base vertices
    origin: Vec<Vec<Q>>,
}

fn dist_sq(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Solves `x = Σ λᵢ pᵢ` with `λ ≥ 0`, `Σ λᵢ = 1`; returns `λ` if it exists.
fn barycentric_in(points: &[&BTreeMap<usize, Q>], x: &BTreeMap<usize, Q>) -> Option<Vec<Q>> {
    let keys: BTreeSet<usize> = points.iter().flat_map(|p| p.keys().copied()).chain(x.keys().copied()).collect();
    let m = points.len();
    // augmented rows: coordinates, then Σλ = 1
    let mut rows: Vec<Vec<Q>> = keys
        .iter()
        .map(|key| {
            let mut r: Vec<Q> = points.iter().map(|p| p.get(key).cloned().unwrap_or_else(Q::zero)).collect();
            r.push(x.get(key).cloned().unwrap_or_else(Q::zero));
            r
        })
        .collect();
    rows.push(vec![rational::int(1); m + 1]);
    let mut pivot_row = 0;
    let mut pivots = vec![];
    for col in 0..m {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let prow = rows[pivot_row].clone();
                for (a, b) in rows[r].iter_mut().zip(prow) {
                    *a -= &f * b;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[m].is_zero()) || pivots.len() < m {
        return None;
    }
    let lambda: Vec<Q> = (0..m).map(|i| rows[i][m].clone()).collect();
    lambda.iter().all(|l| !l.is_negative()).then_some(lambda)
}

impl Level {
    fn base(k: &CellComplex, l: &CellComplex) -> Self {
        let n = coords(k).map_or(0, <[Vec<Q>]>::len);
        let base = (0..n).map(|v| BTreeMap::from([(v, rational::int(1))])).collect();
        Level { k: k.clone(), l: l.clone(), base, down: None, origin: coords(k).map_or_else(|_| vec![], <[Vec<Q>]>::to_vec) }
    }

    fn next(&self) -> Result<(Self, Subdivision)> {
        let sd = barycentric_subdivision(&self.k)?;
        let base = sd
            .origin
            .iter()
            .map(|s| {
                let n = rational::int(s.vertices.len() as i64);
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for &v in &s.vertices {
                    for (key, w) in &self.base[v] {
                        *acc.entry(*key).or_insert_with(Q::zero) += w / &n;
                    }
                }
                acc
            })
            .collect();
        let l = sd.subcomplex(&self.l)?;
        let next = Level { down: Some(sd.last_vertex_map()), k: sd.complex.clone(), l, base, origin: self.origin.clone() };
        Ok((next, sd))
    }

    /// Image vertex in `L` of a vertex `v` of this level; `None` if a finer
    /// subdivision is needed. A vertex with no `L`-mass and no neighbor in `L`
    /// is an error at once: its descendants under subdivision never gain one.
    fn target(&self, v: usize, base_l: &HashSet<usize>, lv: &HashSet<usize>) -> Result<Option<usize>> {
        if lv.contains(&v) {
            return Ok(Some(v));
        }
        let pts = coords(&self.k)?;
        let x = &self.base[v];
        let mass: Q = x.iter().filter(|(a, _)| base_l.contains(a)).map(|(_, w)| w.clone()).sum();
        let nearest = |cands: &mut dyn Iterator<Item = usize>, p: &[Q]| cands.map(|w| (dist_sq(&pts[w], p), w)).min().map(|(_, w)| w);
        if mass.is_zero() {
            let mut adj = self.k.all_cells().filter(|c| simplex(c).vertices.contains(&v)).flat_map(|c| simplex(c).vertices.clone()).filter(|w| lv.contains(w)).collect::<BTreeSet<_>>().into_iter();
            return nearest(&mut adj, &pts[v]).map(Some).ok_or(Error::SupportEscapesNeighborhood(format!("vertex {v} has no neighbor in L")));
        }
        let y: BTreeMap<usize, Q> = x.iter().filter(|(a, _)| base_l.contains(a)).map(|(&a, w)| (a, w / &mass)).collect();
        let ypos: Vec<Q> = {
            let dim = pts[0].len();
            let base_pts: Vec<Vec<Q>> = y.keys().map(|&a| self.position_of_base(a)).collect();
            (0..dim).map(|i| y.values().zip(&base_pts).map(|(w, p)| w * &p[i]).sum()).collect()
        };
        let support: BTreeSet<usize> = y.keys().copied().collect();
        for d in 0..=self.l.dim().unwrap_or(0) {
            for c in self.l.cells(d) {
                let s = simplex(c);
                if !s.vertices.iter().all(|&w| self.base[w].keys().all(|a| support.contains(a))) {
                    continue;
                }
                let ps: Vec<&BTreeMap<usize, Q>> = s.vertices.iter().map(|&w| &self.base[w]).collect();
                if barycentric_in(&ps, &y).is_some() {
                    return Ok(nearest(&mut s.vertices.iter().copied(), &ypos));
                }
            }
        }
        Ok(None)
    }

    fn position_of_base(&self, a: usize) -> Vec<Q> {
        self.origin[a].clone()
    }
}

/// Pushes a chain in `N(L)` onto `L` by a chain map that is the identity on
/// chains of `L` and commutes with `∂`.
pub fn retract_chain(c: &Chain, k: &CellComplex, l: &CellComplex) -> Result<Chain> {
    if !is_full(k, l)? {
        return Err(Error::NotFull);
    }
    k.check_chain(c)?;
    let lv0 = vertex_set(l);
    if let Some(cell) = c.cells().find(|cell| !simplex(cell).vertices.iter().any(|v| lv0.contains(v))) {
        return Err(Error::SupportEscapesNeighborhood(cell.key()));
    }
    // only the closed star of the support takes part
    let sv: HashSet<usize> = c.cells().flat_map(|cell| simplex(cell).vertices.iter().copied()).collect();
    let star = k.with_cells(k.all_cells().filter(|s| simplex(s).vertices.iter().any(|v| sv.contains(v))).cloned())?;
    let l_star = star.with_cells(l.all_cells().filter(|s| star.contains(s)).cloned())?;
    let mut levels = vec![Level::base(&star, &l_star)];
    let mut chain = c.clone();
    for round in 0..=SUBDIVISION_CAP {
        if round > 0 {
            let (next, sd) = levels.last().unwrap().next()?;
            chain = sd.apply(&chain)?;
            levels.push(next);
        }
        let lvl = levels.last().unwrap();
        let lv = vertex_set(&lvl.l);
        let closure: BTreeSet<Simplex> = chain.cells().flat_map(|c| simplex(c).closure()).collect();
        let verts: BTreeSet<usize> = closure.iter().filter(|s| s.vertices.len() == 1).map(|s| s.vertices[0]).collect();
        let mut map = vec![0usize; coords(&lvl.k)?.len()];
        let mut defined = true;
        for &v in &verts {
            match lvl.target(v, &lv0, &lv)? {
                Some(w) => map[v] = w,
                None => {
                    defined = false;
                    break;
                }
            }
        }
        if !defined {
            continue;
        }
        let simplicial = closure.iter().all(|s| {
            let img: BTreeSet<usize> = s.vertices.iter().map(|&v| map[v]).collect();
            lvl.l.contains(&Cell::Simplex(Simplex { vertices: img.into_iter().collect() }))
        });
        if !simplicial {
            continue;
        }
        let g = CellularMap::Simplicial(SimplicialMap { vertex_map: map });
        let mut out = pushforward(&chain, &g, &lvl.l)?;
        for i in (1..levels.len()).rev() {
            let down = CellularMap::Simplicial(levels[i].down.clone().expect("subdivided level"));
            out = pushforward(&out, &down, &levels[i - 1].l)?;
        }
        return Ok(out);
    }
    Err(Error::SubdivisionCapExceeded(SUBDIVISION_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplexWeights;
    use crate::corpus;
    use crate::homology::homology;
    use crate::rational::{frac, int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tri_plane() -> CellComplex {
        let c = vec![vec![int(0), int(0)], vec![int(4), int(0)], vec![int(0), int(4)]];
        CellComplex::simplicial(c, [Simplex::new(vec![0, 1, 2]).unwrap()], SimplexWeights::Unit).unwrap()
    }

    fn area(k: &CellComplex, c: &Cell) -> Q {
        let Geometry::Simplicial(p) = k.geometry() else { unreachable!() };
        let v = &simplex(c).vertices;
        let (a, b, d) = (&p[v[0]], &p[v[1]], &p[v[2]]);
        let cross = (&b[0] - &a[0]) * (&d[1] - &a[1]) - (&b[1] - &a[1]) * (&d[0] - &a[0]);
        cross.abs() / int(2)
    }

    fn path() -> CellComplex {
        corpus::simplicial(3, &[vec![0, 1], vec![1, 2]])
    }

    #[test]
    fn subdivide_edge_and_triangle() {
        let e = corpus::simplicial(2, &[vec![0, 1]]);
        let sd = barycentric_subdivision(&e).unwrap();
        assert_eq!((sd.complex.count(0), sd.complex.count(1)), (3, 2));
        let c = Chain::cell(e.cells(1)[0].clone(), 1);
        let s = sd.apply(&c).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(sd.complex.boundary(&s).unwrap(), sd.apply(&e.boundary(&c).unwrap()).unwrap());

        let t = tri_plane();
        let sd = barycentric_subdivision(&t).unwrap();
        assert_eq!((sd.complex.count(0), sd.complex.count(2)), (7, 6));
        let f = t.full_chain(2);
        let s = sd.apply(&f).unwrap();
        assert_eq!(s.len(), 6);
        let total: Q = s.cells().map(|c| area(&sd.complex, c)).sum();
        assert_eq!(total, area(&t, &t.cells(2)[0]));
        assert_eq!(total, int(8));
        assert!(s.cells().all(|c| area(&sd.complex, c) == frac(4, 3)));
        let back = pushforward(&s, &CellularMap::Simplicial(sd.last_vertex_map()), &t).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn fullness() {
        let two = corpus::simplicial(2, &[vec![0], vec![1]]);
        let a = two.with_cells([two.cells(0)[0].clone()]).unwrap();
        assert!(is_full(&two, &a).unwrap());
        let t = corpus::simplicial(3, &[vec![0, 1, 2]]);
        let hollow = corpus::skeleton(&t, 1);
        assert!(!is_full(&t, &hollow).unwrap());
        assert_eq!(regular_neighborhood(&t, &hollow).unwrap_err().kind(), "NotFull");
        let sd = barycentric_subdivision(&t).unwrap();
        assert!(is_full(&sd.complex, &sd.subcomplex(&hollow).unwrap()).unwrap());
        assert_eq!(is_full(&hollow, &t).unwrap_err().kind(), "NotSubcomplex");
    }

    #[test]
    fn neighborhoods() {
        let p = path();
        let a = p.with_cells([p.cells(0)[0].clone()]).unwrap();
        let n = regular_neighborhood(&p, &a).unwrap();
        assert_eq!(n.iter().map(Cell::key).collect::<Vec<_>>(), vec!["0", "0 1"]);
        assert_eq!(regular_neighborhood(&p, &p).unwrap().len(), p.total_cells());
    }

    #[test]
    fn point_retraction() {
        let t = corpus::simplicial(3, &[vec![0, 1, 2]]);
        let l = t.with_cells([Cell::simplex(vec![0, 1])]).unwrap();
        let a = BarycentricPoint::new(Simplex::new(vec![0, 1, 2]).unwrap(), [(0, frac(1, 4)), (1, frac(1, 4)), (2, frac(1, 2))]).unwrap();
        let r = retract_point(&a, &t, &l).unwrap();
        assert_eq!(r.coords, BTreeMap::from([(0, frac(1, 2)), (1, frac(1, 2))]));
        assert_eq!(retract_point(&r, &t, &l).unwrap(), r);
        let c = BarycentricPoint::new(Simplex::new(vec![0, 1, 2]).unwrap(), [(2, int(1))]).unwrap();
        assert_eq!(retract_point(&c, &t, &l).unwrap_err().kind(), "OutsideNeighborhood");
        assert!(BarycentricPoint::new(Simplex::new(vec![0, 1]).unwrap(), [(0, frac(1, 2))]).is_err());
    }

    #[test]
    fn chain_retraction_examples() {
        let p = path();
        let l = p.with_cells([Cell::simplex(vec![0, 1])]).unwrap();
        let ab = Chain::cell(Cell::simplex(vec![0, 1]), 1);
        assert_eq!(retract_chain(&ab, &p, &l).unwrap(), ab);
        let bc = Chain::cell(Cell::simplex(vec![1, 2]), 1);
        assert!(retract_chain(&bc, &p, &l).unwrap().is_zero());
        let far = Chain::cell(Cell::simplex(vec![2]), 1);
        assert_eq!(retract_chain(&far, &p, &l).unwrap_err().kind(), "SupportEscapesNeighborhood");
    }

    #[test]
    fn retraction_of_band_onto_core() {
        let n = 6;
        let (k, l) = corpus::strip(n);
        assert!(is_full(&k, &l).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = homology(&l, 1).unwrap();
        // zigzag cycle through the strip, homologous to the core
        let mut z = Chain::zero(1);
        for i in 0..n {
            let j = (i + 1) % n;
            for (a, b) in [(i, n + i), (n + i, j)] {
                let (e, sign) = Simplex::oriented(vec![a, b]).unwrap();
                z.add_term(Cell::Simplex(e), sign);
            }
        }
        assert!(k.boundary(&z).unwrap().is_zero());
        let rz = retract_chain(&z, &k, &l).unwrap();
        assert!(l.boundary(&rz).unwrap().is_zero());
        assert_eq!(h.class_coordinates(&rz, &l).unwrap().free_i64().iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
        for _ in 0..20 {
            let cell = regular_neighborhood(&k, &l).unwrap();
            let c = &cell[rng.gen_range(0..cell.len())];
            if c.dim() == 0 {
                continue;
            }
            let ch = Chain::cell(c.clone(), 1);
            let r = retract_chain(&ch, &k, &l).unwrap();
            let rb = retract_chain(&k.boundary(&ch).unwrap(), &k, &l);
            if let Ok(rb) = rb {
                assert_eq!(if r.is_zero() { Chain::zero(c.dim() - 1) } else { l.boundary(&r).unwrap() }, rb);
            }
        }
    }
}
