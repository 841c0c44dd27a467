//! Discrete Eilenberg–Steenrod checks.
//!
//! A homology group with `b` free and `t` torsion generators is presented as
//! `ℤ^(b+t)` modulo the relation lattice spanned by `dᵢ·e_(b+i)`. Induced
//! maps are integer matrices in these coordinates, and exactness, injectivity
//! and surjectivity are decided as lattice containments over ℤ.

use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cell::Cell;
use crate::chain::Chain;
use crate::complex::CellComplex;
use crate::corpus;
use crate::error::Result;
use crate::exec::Exec;
use crate::homology::{homology, relative_homology, HomologyGroup, RelativePair};
use crate::matrix::IntMatrix;
use crate::ops::{bottom, prism, prism_complex, pushforward, top, CellularMap, SimplicialMap};
use crate::rational::{frac, Q};
use crate::snf::{smith_normal_form, solve_integer};

/// Outcome of one axiom family.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn new(name: &'static str) -> Self {
        AxiomReport { name, checks: 0, failures: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn generators(h: &HomologyGroup) -> impl Iterator<Item = &Chain> {
    h.generators.iter().chain(&h.torsion_generators)
}

fn order(h: &HomologyGroup) -> usize {
    h.betti + h.torsion.len()
}

/// Relation lattice of `h` as columns.
fn relations(h: &HomologyGroup) -> IntMatrix {
    let mut r = IntMatrix::zeros(order(h), h.torsion.len());
    for (i, d) in h.torsion.iter().enumerate() {
        r.set(h.betti + i, i, d.clone());
    }
    r
}

fn hcat(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), b.rows());
    let mut m = IntMatrix::zeros(a.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
        for j in 0..b.cols() {
            m.set(i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

/// Basis (columns) of the integer kernel of `a`.
fn kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let n = a.cols();
    s.v.select(&(0..n).collect::<Vec<_>>(), &(s.rank()..n).collect::<Vec<_>>())
}

fn in_lattice(x: &[BigInt], lattice: &IntMatrix) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    lattice.cols() > 0 && solve_integer(lattice, x).is_some()
}

/// Coordinates of `x ∈ ℤ^m` modulo the relations of `h`.
fn coordinates(h: &HomologyGroup, x: &CellComplex, z: &Chain) -> Result<Vec<BigInt>> {
    let c = h.class_coordinates(z, x)?;
    Ok(c.free.into_iter().chain(c.torsion).collect())
}

/// Matrix of the map `src → dst` induced by the chain-level map `f`.
pub fn induced_map(src: &HomologyGroup, dst: &HomologyGroup, dst_complex: &CellComplex, f: impl Fn(&Chain) -> Result<Chain>) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(order(dst), order(src));
    for (j, g) in generators(src).enumerate() {
        let img = f(g)?;
        let img = if img.is_zero() { Chain::zero(dst.dim) } else { img };
        for (i, v) in coordinates(dst, dst_complex, &img)?.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Columns of `a` agree with columns of `b` modulo the relations of `h`.
pub fn maps_agree(a: &IntMatrix, b: &IntMatrix, h: &HomologyGroup) -> bool {
    let r = relations(h);
    (0..a.cols()).all(|j| {
        let d: Vec<BigInt> = (0..a.rows()).map(|i| a.get(i, j) - b.get(i, j)).collect();
        in_lattice(&d, &r)
    })
}

/// Elements of `ℤ^m` (as columns) mapping into the relations of `h` under `f`.
fn kernel_lift(f: &IntMatrix, h: &HomologyGroup) -> IntMatrix {
    let m = f.cols();
    let k = kernel(&hcat(f, &relations(h)));
    k.select(&(0..m).collect::<Vec<_>>(), &(0..k.cols()).collect::<Vec<_>>())
}

/// `G1 →f G2 →g G3` is exact at `G2`.
pub fn is_exact(f: &IntMatrix, g: &IntMatrix, g2: &HomologyGroup, g3: &HomologyGroup) -> bool {
    if !maps_agree(&g.mul(f), &IntMatrix::zeros(order(g3), f.cols()), g3) {
        return false;
    }
    let image = hcat(f, &relations(g2));
    let ker = kernel_lift(g, g3);
    (0..ker.cols()).all(|j| in_lattice(&ker.column(j), &image))
}

pub fn is_injective(f: &IntMatrix, src: &HomologyGroup, dst: &HomologyGroup) -> bool {
    let ker = kernel_lift(f, dst);
    let r = relations(src);
    (0..ker.cols()).all(|j| in_lattice(&ker.column(j), &r))
}

pub fn is_surjective(f: &IntMatrix, dst: &HomologyGroup) -> bool {
    let image = hcat(f, &relations(dst));
    (0..order(dst)).all(|i| {
        let mut e = vec![BigInt::zero(); order(dst)];
        e[i] = BigInt::one();
        in_lattice(&e, &image)
    })
}

pub fn is_isomorphism(f: &IntMatrix, src: &HomologyGroup, dst: &HomologyGroup) -> bool {
    is_injective(f, src, dst) && is_surjective(f, dst)
}

fn simplicial(map: &[usize]) -> CellularMap {
    CellularMap::Simplicial(SimplicialMap { vertex_map: map.to_vec() })
}

/// Random closed walk `Z_n → Z_m` with steps in `{-1, 0, 1}`.
pub fn random_polygon_map(rng: &mut impl Rng, n: usize, m: usize) -> Vec<usize> {
    loop {
        let mut v = vec![rng.gen_range(0..m)];
        for _ in 1..n {
            let step = rng.gen_range(0..3) as usize;
            v.push((v.last().unwrap() + m + step - 1) % m);
        }
        let d = (v[0] + m - v[n - 1]) % m;
        if d == 0 || d == 1 || d == m - 1 {
            return v;
        }
    }
}

/// Axioms 1–2 on random maps between polygons: identity induces the
/// identity and `(g∘f)_♯ = g_♯ ∘ f_♯` in every dimension.
pub fn functoriality(seed: u64, pairs: usize) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("functoriality");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..pairs {
        let (n, m, p) = (rng.gen_range(3..9), rng.gen_range(3..9), rng.gen_range(3..9));
        let (x, y, z) = (corpus::polygon(n), corpus::polygon(m), corpus::polygon(p));
        let f = SimplicialMap { vertex_map: random_polygon_map(&mut rng, n, m) };
        let g = SimplicialMap { vertex_map: random_polygon_map(&mut rng, m, p) };
        let gf = f.then(&g)?;
        let (fm, gm, gfm) = (CellularMap::Simplicial(f), CellularMap::Simplicial(g), CellularMap::Simplicial(gf));
        for k in 0..=1 {
            let (hx, hy, hz) = (homology(&x, k)?, homology(&y, k)?, homology(&z, k)?);
            let id = induced_map(&hx, &hx, &x, |c| pushforward(c, &simplicial(&(0..n).collect::<Vec<_>>()), &x))?;
            rep.check(maps_agree(&id, &IntMatrix::identity(order(&hx)), &hx), || format!("pair {t}: identity fails on H_{k}"));
            let a = induced_map(&hx, &hy, &y, |c| pushforward(c, &fm, &y))?;
            let b = induced_map(&hy, &hz, &z, |c| pushforward(c, &gm, &z))?;
            let ab = induced_map(&hx, &hz, &z, |c| pushforward(c, &gfm, &z))?;
            rep.check(maps_agree(&ab, &b.mul(&a), &hz), || format!("pair {t}: composition fails on H_{k}"));
        }
    }
    Ok(rep)
}

/// Pair map `(cone C_n, C_n) → (cone C_m, C_m)` coning a winding map.
fn cone_pair(n: usize, m: usize, walk: &[usize]) -> Result<(RelativePair, RelativePair, CellularMap)> {
    let x = corpus::cone(n, &corpus::polygon_simplices(n));
    let y = corpus::cone(m, &corpus::polygon_simplices(m));
    let a = corpus::skeleton(&x, 1).with_cells(x.cells(1).iter().filter(|c| !c.as_simplex().unwrap().vertices.contains(&n)).cloned())?;
    let b = corpus::skeleton(&y, 1).with_cells(y.cells(1).iter().filter(|c| !c.as_simplex().unwrap().vertices.contains(&m)).cloned())?;
    let mut map = walk.to_vec();
    map.push(m);
    Ok((RelativePair::new(x, a)?, RelativePair::new(y, b)?, simplicial(&map)))
}

/// Axiom 3: `(f|_A)_♯ ∘ ∂ = ∂ ∘ f_♯` for maps of pairs of disks rel boundary.
pub fn boundary_naturality() -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("boundary-naturality");
    let walks: [(usize, usize, Vec<usize>); 5] = [
        (4, 4, vec![0, 1, 2, 3]),
        (6, 3, vec![0, 1, 2, 0, 1, 2]),
        (5, 5, vec![0, 4, 3, 2, 1]),
        (4, 5, vec![0, 1, 1, 0]),
        (6, 4, vec![0, 1, 2, 3, 3, 3]),
    ];
    for (t, (n, m, walk)) in walks.iter().enumerate() {
        let (p, q, f) = cone_pair(*n, *m, walk)?;
        let src = relative_homology(&p, 2)?;
        let dst = relative_homology(&q, 2)?;
        let src_a = homology(&p.sub, 1)?;
        let dst_b = homology(&q.sub, 1)?;
        let fx = induced_map(&src, &dst, &q.ambient, |c| pushforward(c, &f, &q.ambient))?;
        let d_dst = induced_map(&dst, &dst_b, &q.sub, |c| q.ambient.boundary(c))?;
        let d_src = induced_map(&src, &src_a, &p.sub, |c| p.ambient.boundary(c))?;
        let fa = induced_map(&src_a, &dst_b, &q.sub, |c| pushforward(c, &f, &q.sub))?;
        rep.check(maps_agree(&d_dst.mul(&fx), &fa.mul(&d_src), &dst_b), || format!("pair {t}: ∂ does not commute with f"));
    }
    Ok(rep)
}

/// Axiom 4 for the triple `A ⊂ X₀ ⊂ X`: the sequence
/// `… → H_k(X₀,A) → H_k(X,A) → H_k(X,X₀) → H_{k-1}(X₀,A) → …` is exact,
/// injective at the top and surjective onto `H_0(X,X₀)`.
pub fn check_triple(x: &CellComplex, x0: &CellComplex, a: &CellComplex) -> Result<Vec<String>> {
    let mut bad = vec![];
    let top = x.dim().unwrap_or(0);
    let p0a = RelativePair::new(x0.clone(), a.clone())?;
    let pxa = RelativePair::new(x.clone(), a.clone())?;
    let pxx0 = RelativePair::new(x.clone(), x0.clone())?;
    let mut h0a = vec![];
    let mut hxa = vec![];
    let mut hxx0 = vec![];
    for k in 0..=top {
        h0a.push(relative_homology(&p0a, k)?);
        hxa.push(relative_homology(&pxa, k)?);
        hxx0.push(relative_homology(&pxx0, k)?);
    }
    let mut i = vec![];
    let mut j = vec![];
    let mut d = vec![None];
    for k in 0..=top {
        i.push(induced_map(&h0a[k], &hxa[k], x, |c| Ok(c.clone()))?);
        j.push(induced_map(&hxa[k], &hxx0[k], x, |c| Ok(c.clone()))?);
        if k > 0 {
            d.push(Some(induced_map(&hxx0[k], &h0a[k - 1], x0, |c| x.boundary(c))?));
        }
    }
    if !is_injective(&i[top], &h0a[top], &hxa[top]) {
        bad.push(format!("i not injective on H_{top}"));
    }
    for k in 0..=top {
        if !is_exact(&i[k], &j[k], &hxa[k], &hxx0[k]) {
            bad.push(format!("not exact at H_{k}(X,A)"));
        }
        if let Some(dk) = &d[k] {
            if !is_exact(&j[k], dk, &hxx0[k], &h0a[k - 1]) {
                bad.push(format!("not exact at H_{k}(X,X0)"));
            }
            if !is_exact(dk, &i[k - 1], &h0a[k - 1], &hxa[k - 1]) {
                bad.push(format!("not exact at H_{}(X0,A)", k - 1));
            }
        }
    }
    if !is_surjective(&j[0], &hxx0[0]) {
        bad.push("j not surjective on H_0".into());
    }
    Ok(bad)
}

/// The five fixed triples `(X, X₀, A)` of the exactness check.
pub fn exactness_triples() -> Result<Vec<(&'static str, CellComplex, CellComplex, CellComplex)>> {
    let mut out = vec![];
    let vertex = |x: &CellComplex, i: usize| x.with_cells([x.cells(0)[i].clone()]);

    let g = corpus::unit_grid(vec![0, 0], vec![3, 3]);
    let x = CellComplex::full_grid(g.clone())?;
    let x0 = x.with_cells(boundary_edges(&x))?;
    out.push(("box/boundary/vertex", x.clone(), x0.clone(), vertex(&x0, 0)?));

    let x = corpus::holed_box(3, 1, 1);
    let x0 = x.with_cells(boundary_edges(&CellComplex::full_grid(g)?))?;
    out.push(("ring/outer/vertex", x.clone(), x0.clone(), vertex(&x0, 0)?));

    let x = corpus::torus(3);
    let x0 = x.with_cells(x.cells(1).iter().filter(|c| {
        let q = c.as_cube().unwrap();
        q.axes == [0] && q.anchor[1] == 0
    }).cloned())?;
    out.push(("torus/meridian/vertex", x.clone(), x0.clone(), vertex(&x0, 0)?));

    let x = corpus::projective_plane();
    let x0 = x.with_cells([x.cells(2)[0].clone()])?;
    out.push(("rp2/triangle/vertex", x.clone(), x0.clone(), vertex(&x0, 0)?));

    let g3 = corpus::unit_grid(vec![0, 0, 0], vec![2, 2, 1]);
    let x = CellComplex::full_grid(g3)?;
    let x0 = x.with_cells(x.cells(2).iter().filter(|c| {
        let q = c.as_cube().unwrap();
        q.axes == [0, 1] && q.anchor[2] == 0
    }).cloned())?;
    let a = x0.with_cells([x0.cells(1)[0].clone()])?;
    out.push(("slab/bottom/edge", x, x0, a));
    Ok(out)
}

fn boundary_edges(x: &CellComplex) -> Vec<Cell> {
    let top = x.dim().unwrap_or(0);
    let full = x.full_chain(top);
    x.boundary(&full).map(|b| b.cells().cloned().collect()).unwrap_or_default()
}

/// Axiom 4 on the fixed triples.
pub fn exactness() -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("exactness");
    for (name, x, x0, a) in exactness_triples()? {
        let bad = check_triple(&x, &x0, &a)?;
        rep.check(bad.is_empty(), || format!("{name}: {}", bad.join("; ")));
    }
    Ok(rep)
}

/// `(name, K, L, f₀, f₁)` with the maps as vertex tables.
pub type HomotopyPair = (&'static str, CellComplex, CellComplex, Vec<usize>, Vec<usize>);

/// Homotopic pairs `f₀, f₁ : K → L` given by a simplicial map on the prism of `K`.
pub fn homotopy_pairs() -> Vec<HomotopyPair> {
    let n = 8;
    let id: Vec<usize> = (0..n).collect();
    let rot = |s: usize| (0..n).map(|i| (i + s) % n).collect::<Vec<_>>();
    let mut collapse = id.clone();
    collapse[1] = 0;
    vec![
        ("polygon→band: id ~ rot1", corpus::polygon(n), corpus::band(n), id.clone(), rot(1)),
        ("polygon→band: rot1 ~ rot2", corpus::polygon(n), corpus::band(n), rot(1), rot(2)),
        ("polygon→band: id ~ collapse", corpus::polygon(n), corpus::band(n), id.clone(), collapse),
        ("polygon→cone: inclusion ~ apex", corpus::polygon(n), corpus::cone(n, &corpus::polygon_simplices(n)), id.clone(), vec![n; n]),
        ("band→cone: inclusion ~ apex", corpus::band(n), corpus::cone(n, &corpus::band_simplices(n)), id, vec![n; n]),
    ]
}

/// Axiom 5: for `H` on `K × I` with `H∘bottom = f₀` and `H∘top = f₁`, the
/// chain homotopy `f₁ − f₀ = ∂HP + HP∂` holds and `f₀_♯ = f₁_♯`.
pub fn homotopy_invariance() -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("homotopy");
    for (name, k, l, f0, f1) in homotopy_pairs() {
        let pk = prism_complex(&k)?;
        let hmap: Vec<usize> = (0..2 * f0.len()).map(|v| if v % 2 == 0 { f0[v / 2] } else { f1[v / 2] }).collect();
        let (f0m, f1m, hm) = (simplicial(&f0), simplicial(&f1), simplicial(&hmap));
        for cell in k.all_cells() {
            let c = Chain::cell(cell.clone(), 1);
            let lhs = &pushforward(&c, &f1m, &l)? - &pushforward(&c, &f0m, &l)?;
            let mut rhs = l.boundary(&pushforward(&prism(&c), &hm, &l)?).unwrap_or_else(|_| Chain::zero(c.dim()));
            if c.dim() > 0 {
                rhs += &pushforward(&prism(&k.boundary(&c)?), &hm, &l)?;
            }
            rep.check(pk.check_chain(&prism(&c)).is_ok(), || format!("{name}: prism of {cell} leaves K × I"));
            rep.check(lhs == rhs, || format!("{name}: chain homotopy fails on {cell}"));
            rep.check(pushforward(&bottom(&c), &hm, &l)? == pushforward(&c, &f0m, &l)? && pushforward(&top(&c), &hm, &l)? == pushforward(&c, &f1m, &l)?, || format!("{name}: ends mismatch on {cell}"));
        }
        for d in 0..=k.dim().unwrap_or(0) {
            let (hk, hl) = (homology(&k, d)?, homology(&l, d)?);
            let a = induced_map(&hk, &hl, &l, |c| pushforward(c, &f0m, &l))?;
            let b = induced_map(&hk, &hl, &l, |c| pushforward(c, &f1m, &l))?;
            rep.check(maps_agree(&a, &b, &hl), || format!("{name}: induced maps differ on H_{d}"));
        }
    }
    Ok(rep)
}

fn box_distance(p: &[Q], bounds: &[(Q, Q)]) -> Q {
    let zero = Q::zero();
    p.iter()
        .zip(bounds)
        .map(|(x, (lo, hi))| if x < lo { lo - x } else if x > hi { x - hi } else { zero.clone() })
        .max()
        .unwrap_or(zero)
}

/// An excision instance `(X, A) ⊂ (X', A')`.
#[derive(Debug, Clone)]
pub struct ExcisionPair {
    pub name: &'static str,
    pub small: RelativePair,
    pub big: RelativePair,
}

/// Builds `X` from `X'`, `A'` and an excised region `U ⊂ A'` as the top cells
/// of `X'` whose centers lie in `E = {dist(·, X'∖A') ≤ dist(·, U)}`; `A = X ∩ A'`.
/// Fails if the closures of `X'∖A'` and `X'∖X` meet.
pub fn excision_pair(name: &'static str, big: &CellComplex, sub_tops: &[Vec<i64>], excised: &[Vec<i64>]) -> Result<ExcisionPair> {
    let g = big.grid().expect("cubical").clone();
    let tops: Vec<Vec<i64>> = big.cells(g.dim()).iter().map(|c| c.as_cube().unwrap().anchor.clone()).collect();
    let bounds = |a: &Vec<i64>| g.bounds(&crate::cell::Cube::top(a.clone()));
    let outside: Vec<&Vec<i64>> = tops.iter().filter(|a| !sub_tops.contains(a)).collect();
    let dist = |p: &[Q], set: &[&Vec<i64>]| set.iter().map(|a| box_distance(p, &bounds(a))).min();
    let excised_ref: Vec<&Vec<i64>> = excised.iter().collect();
    let x_tops: Vec<Vec<i64>> = tops
        .iter()
        .filter(|a| {
            let c = g.center(&crate::cell::Cube::top((*a).clone()));
            match (dist(&c, &outside), dist(&c, &excised_ref)) {
                (Some(d1), Some(d2)) => d1 <= d2,
                (_, None) => true,
                (None, Some(_)) => false,
            }
        })
        .cloned()
        .collect();
    let a_big = corpus::cubes(&g, sub_tops.to_vec());
    let x = corpus::cubes(&g, x_tops.clone());
    let a = x.with_cells(x.all_cells().filter(|c| a_big.contains(c)).cloned())?;
    let not_x: Vec<&Vec<i64>> = tops.iter().filter(|a| !x_tops.contains(a)).collect();
    let verts = |set: &[&Vec<i64>]| -> std::collections::HashSet<Vec<i64>> {
        set.iter().flat_map(|a| crate::cell::Cube::top((*a).clone()).vertices()).collect()
    };
    let (v1, v2) = (verts(&outside), verts(&not_x));
    if let Some(v) = v1.intersection(&v2).next() {
        return Err(crate::error::Error::NotSubcomplex(format!("{name}: closures meet at {v:?}")));
    }
    Ok(ExcisionPair { name, small: RelativePair::new(x, a)?, big: RelativePair::new(big.clone(), a_big)? })
}

/// The three fixed excision instances.
pub fn excision_pairs() -> Result<Vec<ExcisionPair>> {
    let ring = corpus::holed_box(6, 2, 2);
    let ring_tops: Vec<Vec<i64>> = ring.cells(2).iter().map(|c| c.as_cube().unwrap().anchor.clone()).collect();
    let sel = |f: &dyn Fn(&Vec<i64>) -> bool| ring_tops.iter().filter(|a| f(a)).cloned().collect::<Vec<_>>();

    let mut out = vec![];
    out.push(excision_pair("ring rel right half", &ring, &sel(&|a| a[0] >= 3), &sel(&|a| a[0] >= 5))?);
    out.push(excision_pair("ring rel two sides", &ring, &sel(&|a| a[0] <= 1 || a[0] >= 4), &sel(&|a| a[0] == 0 || a[0] == 5))?);

    let ring8 = corpus::holed_box(8, 3, 2);
    let tops8: Vec<Vec<i64>> = ring8.cells(2).iter().map(|c| c.as_cube().unwrap().anchor.clone()).collect();
    let outer = |w: i64| move |a: &Vec<i64>| a.iter().any(|&x| x < w || x >= 8 - w);
    let a8: Vec<Vec<i64>> = tops8.iter().filter(|a| outer(2)(a)).cloned().collect();
    let u8: Vec<Vec<i64>> = tops8.iter().filter(|a| outer(1)(a)).cloned().collect();
    out.push(excision_pair("ring rel outer collar", &ring8, &a8, &u8)?);
    Ok(out)
}

/// Axiom 6: the inclusion `(X, A) → (X', A')` is an isomorphism in every dimension.
pub fn excision() -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("excision");
    for p in excision_pairs()? {
        for k in 0..=p.big.ambient.dim().unwrap_or(0) {
            let hs = relative_homology(&p.small, k)?;
            let hb = relative_homology(&p.big, k)?;
            let f = induced_map(&hs, &hb, &p.big.ambient, |c| Ok(c.clone()))?;
            rep.check(hs.betti == hb.betti && hs.torsion == hb.torsion && is_isomorphism(&f, &hs, &hb), || format!("{}: H_{k} not isomorphic ({hs} vs {hb})", p.name));
        }
    }
    Ok(rep)
}

/// Axiom 7 on points in ℝ¹ and ℝ³.
pub fn dimension() -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("dimension");
    for p in [CellComplex::point(vec![frac(1, 3)]), corpus::point()] {
        let amb = p.coords().unwrap()[0].len();
        for k in 0..=amb {
            let h = homology(&p, k)?;
            let ok = if k == 0 { h.betti == 1 && h.torsion.is_empty() } else { h.is_trivial() };
            rep.check(ok, || format!("point in R^{amb}: {h}"));
        }
    }
    Ok(rep)
}

/// All axiom families; the random functoriality pairs are drawn from `seed`.
pub fn run_all(seed: u64, exec: Exec) -> Result<Vec<AxiomReport>> {
    type Job = Box<dyn Fn() -> Result<AxiomReport> + Send + Sync>;
    let jobs: Vec<Job> = vec![
        Box::new(move || functoriality(seed, 10)),
        Box::new(boundary_naturality),
        Box::new(exactness),
        Box::new(homotopy_invariance),
        Box::new(excision),
        Box::new(dimension),
    ];
    exec.map(&jobs, |j| j()).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_axioms_hold() {
        for r in run_all(7, Exec::default()).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn exactness_detects_a_broken_sequence() {
        let x = corpus::polygon(4);
        let h1 = homology(&x, 1).unwrap();
        let zero = IntMatrix::zeros(1, 1);
        assert!(!is_exact(&zero, &zero, &h1, &h1));
        assert!(is_exact(&IntMatrix::identity(1), &zero, &h1, &h1));
        assert!(!is_surjective(&IntMatrix::from_rows(&[vec![2]]), &h1));
        assert!(is_injective(&IntMatrix::from_rows(&[vec![2]]), &h1, &h1));
    }

    #[test]
    fn excision_fixture_is_nontrivial() {
        let pairs = excision_pairs().unwrap();
        let h = relative_homology(&pairs[1].big, 1).unwrap();
        assert_eq!(h.betti, 2);
    }

    #[test]
    fn torsion_relations_respected() {
        let x = corpus::projective_plane();
        let h = homology(&x, 1).unwrap();
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert!(maps_agree(&two, &IntMatrix::zeros(1, 1), &h));
        assert!(!is_injective(&IntMatrix::from_rows(&[vec![2]]), &h, &h));
    }
}
