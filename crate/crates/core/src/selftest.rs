//! The acceptance criteria as runnable checks, plus the independent oracles
//! they compare against.
//!
//! Each criterion returns one [`Outcome`]; [`Outcome::line`] is the single
//! pass/fail line printed by the acceptance test and by `semichain selftest`.
//! [`Scale::Fast`] shrinks the random sample sizes for the command-line run.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num::{BigInt, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms;
use crate::cell::Cell;
use crate::chain::Chain;
use crate::complex::CellComplex;
use crate::corpus;
use crate::deformation::{self, Deformer};
use crate::error::Result;
use crate::exec::Exec;
use crate::grid::CubicalGrid;
use crate::homology::{self, homology, is_boundary, HomologyGroup};
use crate::matrix::IntMatrix;
use crate::minimize::{self, Method, OhcpInstance, Options};
use crate::ops::{self, pushforward, CellularMap};
use crate::rational::{self, frac, int, Q};
use crate::retract;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Full,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub exec: Exec,
    pub scale: Scale,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, exec: Exec::default(), scale: Scale::Full }
    }
}

impl Config {
    fn pick(&self, full: usize, fast: usize) -> usize {
        match self.scale {
            Scale::Full => full,
            Scale::Fast => fast,
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {:<22} {} elapsed={:.3}s limit={}s {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            fmt_limit(self.limit),
            self.detail
        )
    }
}

fn fmt_limit(d: Duration) -> String {
    let s = d.as_secs_f64();
    if s < 1.0 { format!("{s:.3}") } else { format!("{s:.0}") }
}

/// Criterion ids, names and wall-clock limits.
pub const CRITERIA: [(usize, &str, Duration); 9] = [
    (1, "dimension-axiom", Duration::from_millis(1)),
    (2, "homology-corpus", Duration::from_secs(11)),
    (3, "eilenberg-steenrod", Duration::from_secs(30)),
    (4, "deformation", Duration::from_secs(120)),
    (5, "ohcp-oracle", Duration::from_secs(120)),
    (6, "lp-ilp-tu", Duration::from_secs(120)),
    (7, "small-cycles", Duration::from_secs(60)),
    (8, "retraction", Duration::from_secs(30)),
    (9, "slicing", Duration::from_secs(30)),
];

/// Per-complex limit inside criterion 2.
pub const CORPUS_COMPLEX_LIMIT: Duration = Duration::from_secs(1);

type Check = (bool, String);

pub fn run_criterion(id: usize, cfg: &Config) -> Outcome {
    let (_, name, limit) = CRITERIA[id - 1];
    let start = Instant::now();
    let res: Result<Check> = match id {
        1 => dimension_axiom(),
        2 => homology_corpus(),
        3 => eilenberg_steenrod(cfg),
        4 => deformation_identity(cfg),
        5 => ohcp_oracle(cfg),
        6 => lp_ilp_tu(cfg),
        7 => small_cycles(cfg),
        8 => retraction(cfg),
        9 => slicing(cfg),
        _ => unreachable!("criterion ids are 1..=9"),
    };
    let elapsed = start.elapsed();
    let (ok, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, name, passed: ok && elapsed <= limit, detail, elapsed, limit }
}

pub fn run_all(cfg: &Config) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, cfg)).collect()
}

// ---------------------------------------------------------------------------
// oracles

/// Rank over ℚ by fraction-free elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in c..cols {
                let v = &a[r][j] * &piv - &f * &a[rank][j];
                a[r][j] = v;
            }
            // keep entries small
            let g = a[r].iter().fold(BigInt::zero(), |g, x| num::integer::gcd(g, x.clone()));
            if g > BigInt::from(1) {
                for x in a[r].iter_mut() {
                    *x /= &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the field with `p` elements.
pub fn rank_mod(m: &IntMatrix, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| (x % BigInt::from(p)).try_into().map(|v: i64| v.rem_euclid(p)).expect("residue fits")).collect())
        .collect();
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).expect("p is prime");
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(r0) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, r0);
        let iv = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = *x * iv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..m.cols() {
                    a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers `n_k − rank D_k − rank D_{k+1}` from ranks over ℚ.
pub fn betti_oracle(x: &CellComplex) -> Vec<usize> {
    let top = x.dim().unwrap_or(0);
    let ranks: Vec<usize> = (0..=top + 1).map(|k| if k == 0 { 0 } else { rank_rational(&x.dense_boundary(k)) }).collect();
    (0..=top).map(|k| x.count(k) - ranks[k] - ranks[k + 1]).collect()
}

/// Number of torsion coefficients of `H_k` divisible by the prime `p`.
pub fn torsion_p_oracle(x: &CellComplex, k: usize, p: i64) -> usize {
    let d = x.dense_boundary(k + 1);
    rank_rational(&d) - rank_mod(&d, p)
}

// ---------------------------------------------------------------------------
// 1, 2, 3

fn dimension_axiom() -> Result<Check> {
    let p = corpus::point();
    let hs: Vec<HomologyGroup> = (0..=3).map(|k| homology(&p, k)).collect::<Result<_>>()?;
    let ok = hs[0].betti == 1 && hs[0].torsion.is_empty() && hs[1..].iter().all(HomologyGroup::is_trivial);
    Ok((ok, hs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
}

fn homology_corpus() -> Result<Check> {
    let mut bad = vec![];
    let mut slowest = Duration::ZERO;
    let corpus = corpus::homology_corpus();
    for (name, x, expected) in &corpus {
        let start = Instant::now();
        let betti = homology::betti_numbers(x)?;
        let top = x.dim().unwrap_or(0);
        let torsion: Vec<Vec<i64>> = (0..=top).map(|k| homology(x, k).map(|h| h.torsion_i64())).collect::<Result<_>>()?;
        slowest = slowest.max(start.elapsed());
        if start.elapsed() > CORPUS_COMPLEX_LIMIT {
            bad.push(format!("{name}: slow"));
        }
        let want_torsion: Vec<Vec<i64>> = (0..=top).map(|k| if *name == "projective-plane" && k == 1 { vec![2] } else { vec![] }).collect();
        if &betti != expected || torsion != want_torsion {
            bad.push(format!("{name}: betti {betti:?} torsion {torsion:?}"));
        }
        if betti_oracle(x) != betti {
            bad.push(format!("{name}: rank oracle {:?}", betti_oracle(x)));
        }
        for k in 0..=top {
            for p in [2, 3] {
                let count = torsion[k].iter().filter(|t| *t % p == 0).count();
                if torsion_p_oracle(x, k, p) != count {
                    bad.push(format!("{name}: H_{k} {p}-torsion oracle"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("complexes={} slowest={:.3}s {}", corpus.len(), slowest.as_secs_f64(), bad.join("; "))))
}

fn eilenberg_steenrod(cfg: &Config) -> Result<Check> {
    let reports = axioms::run_all(cfg.seed, cfg.exec)?;
    let ok = reports.iter().all(axioms::AxiomReport::passed);
    let detail = reports
        .iter()
        .map(|r| if r.passed() { format!("{}={}", r.name, r.checks) } else { format!("{}=FAIL({})", r.name, r.failures.join(", ")) })
        .collect::<Vec<_>>()
        .join(" ");
    Ok((ok, detail))
}

// ---------------------------------------------------------------------------
// 4

fn deformation_grids(n: usize) -> (CubicalGrid, CubicalGrid) {
    let (fine_edge, hi) = if n == 2 { (frac(1, 3), 9) } else { (frac(1, 2), 6) };
    let fine = CubicalGrid::boxed(fine_edge, vec![0; n], vec![hi; n]).expect("box");
    let coarse = CubicalGrid::boxed(int(1), vec![0; n], vec![1; n]).expect("box");
    (fine, coarse)
}

fn deformation_identity(cfg: &Config) -> Result<Check> {
    const BATCH: usize = 100;
    let batches = cfg.pick(5, 1);
    let mut rng = cfg.rng(4);
    let mut bad = vec![];
    let mut kappa_max = Q::zero();
    let mut cycles = 0;
    for b in 0..batches {
        let n = 2 + b % 2;
        let (fine, coarse) = deformation_grids(n);
        let batch: Vec<Chain> = (0..BATCH)
            .map(|i| {
                let k = i % 3;
                let cells = rng.gen_range(1..=4);
                if k < n && i % 2 == 0 {
                    deformation::random_cycle(&mut rng, &fine, k, cells)
                } else {
                    deformation::random_chain(&mut rng, &fine, k, cells)
                }
            })
            .collect();
        let (offset, results) = deformation::deform_batch(&batch, &fine, &coarse, cfg.seed.wrapping_add(b as u64), cfg.exec)?;
        let d = Deformer::new(&fine, &CubicalGrid::new(coarse.edge.clone(), offset, coarse.lo.clone(), coarse.hi.clone())?)?;
        if let Some(t) = batch.iter().find(|t| d.conflict(&d.refine(t)).is_some()) {
            bad.push(format!("batch {b}: shared offset conflicts with {t}"));
        }
        let ceiling = deformation::default_kappa_ceiling(n);
        let (worst, within) = deformation::kappa_within(&results, &ceiling);
        if !within {
            bad.push(format!("batch {b}: kappa {:?} not below {}", worst.as_ref().map(rational::fmt), rational::fmt(&ceiling)));
        }
        if let Some(w) = worst {
            kappa_max = kappa_max.max(w);
        }
        for (i, r) in results.iter().enumerate() {
            if !r.residual()?.is_zero() {
                bad.push(format!("batch {b} chain {i}: T - P - Q - dL != 0"));
            }
            if r.support_radius > r.support_bound {
                bad.push(format!("batch {b} chain {i}: support radius {}", rational::fmt(&r.support_radius)));
            }
            let closed = r.t.dim() == 0 || r.t.boundary()?.is_zero();
            if closed {
                cycles += 1;
                if !r.q.is_zero() {
                    bad.push(format!("batch {b} chain {i}: cycle with Q != 0"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("chains={} cycles={} kappa_max={} {}", batches * BATCH, cycles, rational::fmt(&kappa_max), bad.join("; "))))
}

// ---------------------------------------------------------------------------
// 5, 6

/// Exhaustive-search budget for oracle instances.
pub const ORACLE_NODE_BUDGET: usize = 20_000_000;

/// A random cycle: a combination of homology generators with coefficients in
/// `{−1, 0, 1}` plus up to three signed (k+1)-cell boundaries.
fn random_class_cycle(rng: &mut impl Rng, x: &CellComplex, h: &HomologyGroup, k: usize) -> Result<Chain> {
    loop {
        let free: Vec<i64> = (0..h.betti).map(|_| rng.gen_range(-1..=1)).collect();
        let tors: Vec<i64> = h.torsion_i64().iter().map(|&d| rng.gen_range(0..d)).collect();
        let mut z = h.representative(&free, &tors);
        let tops = x.cells(k + 1);
        for _ in 0..rng.gen_range(0..=3.min(tops.len())) {
            let c = Chain::cell(tops[rng.gen_range(0..tops.len())].clone(), if rng.gen_bool(0.5) { 1 } else { -1 });
            z += &x.boundary(&c)?;
        }
        if !z.is_zero() {
            return Ok(z);
        }
    }
}

/// Random oracle instances: subcomplexes of the 3×3 grid, the 3×3 torus and
/// the projective plane, all with at most 24 cells in dimensions 1 and 2.
pub fn oracle_instances(seed: u64, count: usize) -> Result<Vec<(String, CellComplex, Chain)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = corpus::unit_grid(vec![0, 0], vec![3, 3]);
    let torus = corpus::torus(3);
    let rp2 = corpus::projective_plane();
    let mut out = vec![];
    for i in 0..count {
        let (name, x) = match i % 5 {
            0..=2 => {
                let mut tops = grid.top_anchors();
                tops.shuffle(&mut rng);
                tops.truncate(rng.gen_range(4..=9));
                tops.sort();
                (format!("grid-sub-{i}"), corpus::cubes(&grid, tops))
            }
            3 => (format!("torus-{i}"), torus.clone()),
            _ => (format!("rp2-{i}"), rp2.clone()),
        };
        let h = homology(&x, 1)?;
        let z = random_class_cycle(&mut rng, &x, &h, 1)?;
        out.push((name, x, z));
    }
    Ok(out)
}

fn ohcp_oracle(cfg: &Config) -> Result<Check> {
    let count = cfg.pick(50, 10);
    let instances = oracle_instances(cfg.seed, count)?;
    let mut bad = vec![];
    let mut largest = 0;
    for (name, x, z) in &instances {
        largest = largest.max(x.count(1)).max(x.count(2));
        let inst = OhcpInstance::new(x, z.clone())?;
        let fast = minimize::optimal_homologous(&inst, Options::default())?;
        let slow = minimize::optimal_homologous(&inst, Options { method: Method::Exhaustive, node_budget: ORACLE_NODE_BUDGET })?;
        if fast.optimal_mass != slow.optimal_mass {
            bad.push(format!("{name}: {} vs exhaustive {}", rational::fmt(&fast.optimal_mass), rational::fmt(&slow.optimal_mass)));
        }
        let h = homology(x, 1)?;
        if h.class_coordinates(&fast.minimizer, x)? != h.class_coordinates(z, x)? || &fast.minimizer - z != x.boundary(&fast.witness)? {
            bad.push(format!("{name}: minimizer leaves the class"));
        }
    }
    // annulus: outer loop goes to the inner loop
    let ring = corpus::holed_box(4, 1, 2);
    let outer = square_loop(0, 4);
    let inner = square_loop(1, 3);
    let r = minimize::optimal_homologous(&OhcpInstance::new(&ring, outer)?, Options::default())?;
    if r.optimal_mass != inner.mass(&ring) {
        bad.push(format!("annulus: {}", rational::fmt(&r.optimal_mass)));
    }
    if largest > 24 {
        bad.push(format!("instance with {largest} cells"));
    }
    Ok((bad.is_empty(), format!("instances={} max_cells={} annulus_mass={} {}", instances.len(), largest, rational::fmt(&r.optimal_mass), bad.join("; "))))
}

/// Boundary of the square `[lo, hi]²` on the unit grid.
fn square_loop(lo: i64, hi: i64) -> Chain {
    let sq = CellComplex::full_grid(corpus::unit_grid(vec![lo, lo], vec![hi, hi])).expect("box");
    sq.boundary(&sq.full_chain(2)).expect("2-chain")
}

fn lp_ilp_tu(cfg: &Config) -> Result<Check> {
    let mut instances = oracle_instances(cfg.seed, cfg.pick(50, 10))?;
    let ring = corpus::holed_box(4, 1, 2);
    instances.push(("annulus".into(), ring.clone(), square_loop(0, 4)));
    for (name, x) in [("holed-box-6", corpus::holed_box(6, 2, 2)), ("torus-4", corpus::torus(4)), ("rasterized-annulus", corpus::annulus())] {
        let h = homology(&x, 1)?;
        let mut rng = cfg.rng(6);
        let z = random_class_cycle(&mut rng, &x, &h, 1)?;
        instances.push((name.into(), x, z));
    }
    let (mut tu, mut other) = (0, 0);
    let mut bad = vec![];
    for (name, x, z) in &instances {
        if !minimize::is_totally_unimodular(&x.dense_boundary(2)) {
            other += 1;
            continue;
        }
        tu += 1;
        let inst = OhcpInstance::new(x, z.clone())?;
        match minimize::optimal_homologous(&inst, Options { method: Method::Lp, ..Options::default() }) {
            Ok(lp) => {
                let ilp = minimize::optimal_homologous(&inst, Options { method: Method::Ilp, ..Options::default() })?;
                if lp.optimal_mass != ilp.optimal_mass {
                    bad.push(format!("{name}: lp {} ilp {}", rational::fmt(&lp.optimal_mass), rational::fmt(&ilp.optimal_mass)));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    Ok((bad.is_empty() && tu > 0, format!("tu_instances={tu} non_tu={other} {}", bad.join("; "))))
}

// ---------------------------------------------------------------------------
// 7

/// A closed walk of at most `max_len` steps on the 1-skeleton, as a chain.
fn random_closed_walk(rng: &mut impl Rng, x: &CellComplex, max_len: usize) -> Option<Chain> {
    let verts = x.cells(0);
    let start = verts[rng.gen_range(0..verts.len())].clone();
    let edges = x.cells(1);
    let mut at = start.clone();
    let mut z = Chain::zero(1);
    for _ in 0..max_len {
        let incident: Vec<(&Cell, i64)> = edges
            .iter()
            .filter_map(|e| {
                let f = x.faces(e);
                f.iter().find(|(v, _)| *v == at).map(|(_, s)| (e, -s))
            })
            .collect();
        let (e, sign) = incident[rng.gen_range(0..incident.len())];
        z.add_term(e.clone(), sign);
        at = x.faces(e).into_iter().find(|(v, _)| *v != at).map(|(v, _)| v).expect("edge has two ends");
        if at == start {
            return (!z.is_zero()).then_some(z);
        }
    }
    None
}

fn small_cycles(cfg: &Config) -> Result<Check> {
    let x = corpus::holed_box(4, 1, 2);
    let inner = square_loop(1, 3);
    let s = minimize::systole(&x, 1, 1, Options::default(), cfg.exec)?.ok_or(crate::Error::EmptySet)?;
    let mut bad = vec![];
    if s.mass != inner.mass(&x) {
        bad.push(format!("systole {} != inner loop {}", rational::fmt(&s.mass), rational::fmt(&inner.mass(&x))));
    }
    if is_boundary(&s.cycle, &x)?.is_some() {
        bad.push("realizing cycle bounds".into());
    }
    let want = cfg.pick(200, 50);
    let h = homology(&x, 1)?;
    let mut rng = cfg.rng(7);
    let (mut small, mut heavy_nontrivial, mut tries) = (0, 0, 0);
    while small < want && tries < 200 * want {
        tries += 1;
        let z = if tries % 2 == 0 { random_closed_walk(&mut rng, &x, 7) } else { Some(random_class_cycle(&mut rng, &x, &h, 1)?) };
        let Some(z) = z else { continue };
        let m = z.mass(&x);
        if m >= s.mass {
            if !h.class_coordinates(&z, &x)?.is_zero() {
                heavy_nontrivial += 1;
            }
            continue;
        }
        small += 1;
        match is_boundary(&z, &x)? {
            Some(w) if x.boundary(&w)? == z => {}
            _ => bad.push(format!("cycle of mass {} does not bound: {z}", rational::fmt(&m))),
        }
    }
    if small < want {
        bad.push(format!("only {small} small cycles sampled"));
    }
    Ok((bad.is_empty(), format!("systole={} small_cycles={small} rejected_nontrivial={heavy_nontrivial} {}", rational::fmt(&s.mass), bad.join("; "))))
}

// ---------------------------------------------------------------------------
// 8

/// Complexes with a full subcomplex.
pub fn retraction_pairs() -> Result<Vec<(&'static str, CellComplex, CellComplex)>> {
    let mut out = vec![];
    let (k, l) = corpus::strip(6);
    out.push(("strip", k, l));
    let band = corpus::band(8);
    let core = band.with_cells(corpus::polygon_simplices(8).into_iter().map(Cell::simplex))?;
    let sd = retract::barycentric_subdivision(&band)?;
    out.push(("band-core", sd.complex.clone(), sd.subcomplex(&core)?));
    let rp2 = corpus::projective_plane();
    let tri = rp2.with_cells([Cell::simplex(vec![0, 1]), Cell::simplex(vec![1, 2]), Cell::simplex(vec![0, 2])])?;
    let sd = retract::barycentric_subdivision(&rp2)?;
    out.push(("rp2-triangle", sd.complex.clone(), sd.subcomplex(&tri)?));
    let cone = corpus::cone(6, &corpus::polygon_simplices(6));
    let apex = cone.with_cells([Cell::simplex(vec![6])])?;
    out.push(("cone-apex", cone, apex));
    Ok(out)
}

fn random_chain_on(rng: &mut impl Rng, cells: &[Cell], dim: usize, terms: usize) -> Chain {
    let pool: Vec<&Cell> = cells.iter().filter(|c| c.dim() == dim).collect();
    let mut c = Chain::zero(dim);
    if pool.is_empty() {
        return c;
    }
    for _ in 0..terms {
        c.add_term(pool[rng.gen_range(0..pool.len())].clone(), rng.gen_range(-2..=2));
    }
    c
}

fn retraction(cfg: &Config) -> Result<Check> {
    let mut rng = cfg.rng(8);
    let mut bad = vec![];
    let pairs = retraction_pairs()?;
    let (mut identity_checks, mut commute_checks) = (0, 0);
    for (name, k, l) in &pairs {
        if !retract::is_full(k, l)? {
            bad.push(format!("{name}: not full"));
            continue;
        }
        let lcells: Vec<Cell> = l.all_cells().cloned().collect();
        // cells with two vertices in L: every facet stays in N(L)
        let lverts: BTreeSet<usize> = l.cells(0).iter().map(|c| c.as_simplex().expect("simplicial").vertices[0]).collect();
        let ncells: Vec<Cell> = retract::regular_neighborhood(k, l)?
            .into_iter()
            .filter(|c| c.as_simplex().expect("simplicial").vertices.iter().filter(|v| lverts.contains(v)).count() >= 2)
            .collect();
        for _ in 0..cfg.pick(10, 3) {
            for d in 0..=l.dim().unwrap_or(0) {
                let c = random_chain_on(&mut rng, &lcells, d, 3);
                identity_checks += 1;
                if retract::retract_chain(&c, k, l)? != c {
                    bad.push(format!("{name}: r(c) != c for {c}"));
                }
            }
            // chain map on neighborhood chains whose faces stay in N(L)
            let d = rng.gen_range(1..=k.dim().unwrap_or(1).max(1));
            let c = random_chain_on(&mut rng, &ncells, d, 2);
            if c.is_zero() {
                continue;
            }
            let bc = k.boundary(&c)?;
            if let (Ok(rc), Ok(rbc)) = (retract::retract_chain(&c, k, l), retract::retract_chain(&bc, k, l)) {
                commute_checks += 1;
                if l.boundary(&rc)? != rbc {
                    bad.push(format!("{name}: r does not commute with the boundary on {c}"));
                }
            }
        }
    }
    let points = cfg.pick(1000, 200);
    for i in 0..points {
        let (name, k, l) = &pairs[i % pairs.len()];
        let a = retract::random_neighborhood_point(&mut rng, k, l)?;
        let r = retract::retract_point(&a, k, l)?;
        let lv: BTreeSet<usize> = l.cells(0).iter().map(|c| c.as_simplex().expect("simplicial").vertices[0]).collect();
        if retract::retract_point(&r, k, l)? != r || !r.coords.keys().all(|v| lv.contains(v)) {
            bad.push(format!("{name}: retraction not idempotent at {a:?}"));
        }
    }
    let mut sd_checks = 0;
    for (name, x, _) in corpus::homology_corpus() {
        if !x.is_simplicial() {
            continue;
        }
        let sd = retract::barycentric_subdivision(&x)?;
        let back = CellularMap::Simplicial(sd.last_vertex_map());
        for d in 0..=x.dim().unwrap_or(0) {
            let h = homology(&x, d)?;
            let hs = homology(&sd.complex, d)?;
            let m = axioms::induced_map(&h, &hs, &sd.complex, |c| sd.apply(c))?;
            sd_checks += 1;
            if !axioms::is_isomorphism(&m, &h, &hs) {
                bad.push(format!("{name}: sd is not an isomorphism on H_{d}"));
            }
            for g in h.generators.iter().chain(&h.torsion_generators) {
                if pushforward(&sd.apply(g)?, &back, &x)? != *g {
                    bad.push(format!("{name}: last-vertex map does not undo sd"));
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("identity={identity_checks} commute={commute_checks} points={points} sd_groups={sd_checks} {}", bad.iter().take(3).cloned().collect::<Vec<_>>().join("; ")),
    ))
}

// ---------------------------------------------------------------------------
// 9

fn slicing(cfg: &Config) -> Result<Check> {
    let mut rng = cfg.rng(9);
    let mut bad = vec![];
    let count = cfg.pick(100, 20);
    let mut nonzero = 0;
    for i in 0..count {
        let n = 2 + i % 2;
        let g = CubicalGrid::boxed(int(1), vec![0; n], vec![6; n])?;
        let x = CellComplex::full_grid(g.clone())?;
        let k = 1 + rng.gen_range(0..n - 1);
        let terms = rng.gen_range(2..=6);
        let z = deformation::random_cycle(&mut rng, &g, k, terms);
        // centre on the lattice or half-way; vertices then sit at multiples of 1/2
        let x0: Vec<Q> = (0..n).map(|_| frac(rng.gen_range(0..=12), 2)).collect();
        let y = int(rng.gen_range(0..4)) + frac(1, 3);
        let s = ops::slice(&z, &x0, &y, &x)?;
        if !s.is_zero() {
            nonzero += 1;
        }
        // oracle: restriction by cell centres, boundary through the matrix
        let keep = x.to_vector(&z)?.iter().zip(x.cells(k)).map(|(&c, cell)| if ops::sup_distance(&x.center(cell), &x0) > y { c } else { 0 }).collect::<Vec<_>>();
        let expect = x.from_vector(k - 1, &x.boundary_matrix(k).mul_vec(&keep));
        if s != expect {
            bad.push(format!("chain {i}: slice differs from the boundary of the restriction"));
        }
        if k >= 2 && !x.boundary(&s)?.is_zero() {
            bad.push(format!("chain {i}: slice is not a cycle"));
        }
        if k == 1 && s.iter().map(|(_, c)| c).sum::<i64>() != 0 {
            bad.push(format!("chain {i}: 0-dimensional slice has nonzero augmentation"));
        }
        let half = frac(1, 2) * &g.edge;
        let outside = s.cells().find(|c| (ops::sup_distance(&x.center(c), &x0) - &y).abs() > half).cloned();
        if let Some(c) = outside {
            bad.push(format!("chain {i}: {c} outside the level-set shell"));
        }
    }
    Ok((bad.is_empty(), format!("cycles={count} nonzero_slices={nonzero} {}", bad.join("; "))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_oracles() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2], vec![2, 2]]);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod(&m, 2), 0);
        assert_eq!(rank_mod(&m, 3), 2);
        let rp2 = corpus::projective_plane();
        assert_eq!(betti_oracle(&rp2), vec![1, 0, 0]);
        assert_eq!(torsion_p_oracle(&rp2, 1, 2), 1);
        assert_eq!(torsion_p_oracle(&rp2, 1, 3), 0);
    }

    #[test]
    fn fast_criteria_pass() {
        let cfg = Config { seed: 1, exec: Exec::Parallel, scale: Scale::Fast };
        for id in [1, 2, 7, 9] {
            let o = run_criterion(id, &cfg);
            assert!(o.passed || o.elapsed > o.limit, "{}", o.line());
        }
    }

    #[test]
    fn oracle_instances_are_small() {
        for (name, x, z) in oracle_instances(3, 10).unwrap() {
            assert!(x.count(1) <= 24 && x.count(2) <= 24, "{name}");
            assert!(x.boundary(&z).unwrap().is_zero());
        }
    }
}
