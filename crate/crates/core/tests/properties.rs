use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semichain::deformation;
use semichain::homology::{self, is_boundary};
use semichain::minimize::{self, total_unimodularity, OhcpInstance, Options, Tu};
use semichain::ops::{self, pushforward, CellularMap};
use semichain::rational::{frac, int};
use semichain::semialg::{self, SAFormula, Scheme};
use semichain::{corpus, io, retract, Cell, CellComplex, Chain, Cube, CubicalGrid, Exec, Q};

fn random_on(rng: &mut impl Rng, x: &CellComplex, k: usize) -> Chain {
    let v: Vec<i64> = (0..x.count(k)).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 }).collect();
    x.from_vector(k, &v)
}

fn grid_subset(rng: &mut impl Rng, n: usize, side: i64) -> CellComplex {
    let g = corpus::unit_grid(vec![0; n], vec![side; n]);
    let mut tops: Vec<Vec<i64>> = g.top_anchors().into_iter().filter(|_| rng.gen_bool(0.6)).collect();
    if tops.is_empty() {
        tops.push(vec![0; n]);
    }
    corpus::cubes(&g, tops)
}

fn simplicial_corpus() -> Vec<CellComplex> {
    corpus::homology_corpus().into_iter().map(|(_, x, _)| x).filter(CellComplex::is_simplicial).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, n, 3);
        for k in 2..=n {
            let c = random_on(&mut rng, &x, k);
            prop_assert!(x.boundary(&x.boundary(&c).unwrap()).unwrap().is_zero());
        }
        let torus = corpus::torus(3);
        let c = random_on(&mut rng, &torus, 2);
        prop_assert!(torus.boundary(&torus.boundary(&c).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, n, 3);
        let betti = homology::betti_numbers(&x).unwrap();
        let sign = |k: usize| 1 - 2 * (k as i64 % 2);
        let chi_cells: i64 = (0..=n).map(|k| sign(k) * x.count(k) as i64).sum();
        let chi_betti: i64 = betti.iter().enumerate().map(|(k, &b)| sign(k) * b as i64).sum();
        prop_assert_eq!(chi_cells, chi_betti);
    }

    #[test]
    fn subdivision_commutes_with_boundary(seed in any::<u64>(), which in 0usize..16) {
        let xs = simplicial_corpus();
        let x = &xs[which % xs.len()];
        let sd = retract::barycentric_subdivision(x).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 1..=x.dim().unwrap_or(0) {
            let c = random_on(&mut rng, x, k);
            let lhs = sd.complex.boundary(&sd.apply(&c).unwrap()).unwrap();
            let rhs = sd.apply(&x.boundary(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pushforward_commutes_with_boundary(seed in any::<u64>(), which in 0usize..16) {
        let xs = simplicial_corpus();
        let x = &xs[which % xs.len()];
        let sd = retract::barycentric_subdivision(x).unwrap();
        let f = CellularMap::Simplicial(sd.last_vertex_map());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 1..=sd.complex.dim().unwrap_or(0) {
            let c = random_on(&mut rng, &sd.complex, k);
            let lhs = x.boundary(&pushforward(&c, &f, x).unwrap()).unwrap();
            let rhs = pushforward(&sd.complex.boundary(&c).unwrap(), &f, x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn minimizer_stays_in_class(seed in any::<u64>(), winding in -2i64..=2) {
        let x = corpus::holed_box(4, 1, 2);
        let h = homology::homology(&x, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let filler = random_on(&mut rng, &x, 2);
        let z = &h.representative(&[winding], &[]) + &x.boundary(&filler).unwrap();
        let inst = OhcpInstance::new(&x, z.clone()).unwrap();
        let r = minimize::minimize(&inst, Options::default()).unwrap();
        prop_assert!(r.optimal);
        prop_assert!(r.minimizer.mass(&x) <= z.mass(&x));
        prop_assert_eq!(r.optimal_mass.clone(), r.minimizer.mass(&x));
        prop_assert!(is_boundary(&(&r.minimizer - &z), &x).unwrap().is_some());
        prop_assert_eq!(r.optimal_mass, int(8 * winding.abs()));
    }

    #[test]
    fn deformation_decomposes_exactly(seed in any::<u64>(), n in 2usize..=3, k in 0usize..=2, cycle: bool) {
        let k = k.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fine = CubicalGrid::boxed(frac(1, 3), vec![0; n], vec![6; n]).unwrap();
        let coarse = CubicalGrid::boxed(int(1), vec![0; n], vec![1; n]).unwrap();
        let t = if cycle && k < n { deformation::random_cycle(&mut rng, &fine, k, 3) } else { deformation::random_chain(&mut rng, &fine, k, 3) };
        let (_, rs) = deformation::deform_batch(std::slice::from_ref(&t), &fine, &coarse, seed, semichain::Exec::Sequential).unwrap();
        let r = &rs[0];
        prop_assert!(r.residual().unwrap().is_zero());
        prop_assert!(r.support_radius <= r.support_bound);
        if cycle && k > 0 && k < n {
            prop_assert!(r.q.is_zero());
        }
    }

    #[test]
    fn files_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, n, 3);
        let text = io::write_complex(&x);
        let y = io::parse_complex(&text).unwrap();
        prop_assert_eq!(io::write_complex(&y), text);
        prop_assert_eq!(y.total_cells(), x.total_cells());
        for k in 0..=n {
            let c = random_on(&mut rng, &x, k);
            prop_assert_eq!(io::parse_chain(&io::write_chain(&c)).unwrap(), c);
        }
    }

    #[test]
    fn planar_boundary_matrices_are_unimodular(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, 2, 4);
        prop_assert_eq!(total_unimodularity(&x.boundary_matrix(2).to_dense()), Tu::Yes);
    }

    #[test]
    fn retraction_fixes_subcomplex_chains(seed in any::<u64>(), n in 4usize..=8) {
        let (k, l) = corpus::strip(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for d in 0..=1 {
            let c = random_on(&mut rng, &l, d);
            prop_assert_eq!(retract::retract_chain(&c, &k, &l).unwrap(), c);
        }
    }

    #[test]
    fn slices_are_cycles(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CubicalGrid::boxed(int(1), vec![0; n], vec![5; n]).unwrap();
        let x = CellComplex::full_grid(g.clone()).unwrap();
        let z = deformation::random_cycle(&mut rng, &g, n - 1, 4);
        let x0: Vec<_> = (0..n).map(|_| frac(rng.gen_range(0..=10), 2)).collect();
        let y = int(rng.gen_range(0..3)) + frac(1, 3);
        let s = ops::slice(&z, &x0, &y, &x).unwrap();
        if s.dim() > 0 {
            prop_assert!(x.boundary(&s).unwrap().is_zero());
        } else {
            prop_assert_eq!(s.iter().map(|(_, c)| c).sum::<i64>(), 0);
        }
    }
}

fn covered(g: &CubicalGrid, included: &BTreeSet<Vec<i64>>, p: &[Q]) -> bool {
    // lattice cells whose closure holds p
    let mut cands: Vec<Vec<i64>> = vec![vec![]];
    for (i, x) in p.iter().enumerate() {
        let t = (x - &g.offset[i]) / &g.edge;
        let f: i64 = t.floor().to_integer().try_into().unwrap();
        let opts = if t.is_integer() { vec![f - 1, f] } else { vec![f] };
        cands = cands.into_iter().flat_map(|c| opts.iter().map(move |&o| [c.clone(), vec![o]].concat())).collect();
    }
    cands.iter().any(|c| included.contains(c))
}

fn included(f: &SAFormula, g: &CubicalGrid, scheme: Scheme) -> BTreeSet<Vec<i64>> {
    semialg::rasterize(f, g, scheme, Exec::Sequential).unwrap().included.into_iter().collect()
}

/// 1000 rational points at least half a fine diagonal inside the set stay
/// covered after halving the edge.
#[test]
fn refinement_keeps_interior_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let coarse = semialg::square_grid(frac(1, 4), frac(3, 2)).unwrap();
    let fine = semialg::square_grid(frac(1, 8), frac(3, 2)).unwrap();
    // half diagonal of a fine cell: √2 / 16 < 3/32
    let margin = frac(3, 32);
    let cases = [(semialg::disk(int(1)), int(0), int(1)), (semialg::annulus(frac(1, 2), int(1)), frac(1, 2), int(1))];
    for (f, r_in, r_out) in cases {
        let (a, b) = (included(&f, &coarse, Scheme::Center), included(&f, &fine, Scheme::Center));
        let (lo, hi) = (&r_in + &margin, &r_out - &margin);
        let mut n = 0;
        while n < 1000 {
            let p = [frac(rng.gen_range(-1000..=1000), 1000), frac(rng.gen_range(-1000..=1000), 1000)];
            let r2 = &p[0] * &p[0] + &p[1] * &p[1];
            if r2 <= &lo * &lo || r2 >= &hi * &hi {
                continue;
            }
            n += 1;
            assert!(covered(&fine, &b, &p), "{p:?} lost at the fine scale");
            if covered(&coarse, &a, &p) {
                assert!(covered(&fine, &b, &p));
            }
        }
    }
}

/// Refining the grid never raises the least mass: the refined image of the
/// coarse minimizer is a competitor of the same mass.
#[test]
fn refined_optimum_is_no_larger() {
    let instances = [(4, 1, 2), (5, 1, 2), (5, 2, 1), (6, 2, 2), (6, 1, 3)];
    for (w, a, h) in instances {
        let x = corpus::holed_box(w, a, h);
        let g = x.grid().unwrap().clone();
        let fg = CubicalGrid::boxed(&g.edge / int(2), g.lo.iter().map(|v| 2 * v).collect(), g.hi.iter().map(|v| 2 * v).collect()).unwrap();
        let tops = x.cells(2).iter().flat_map(|c| {
            let a = &c.as_cube().unwrap().anchor;
            [[0, 0], [0, 1], [1, 0], [1, 1]].map(|d| Cube::top(vec![2 * a[0] + d[0], 2 * a[1] + d[1]]))
        });
        let fx = CellComplex::cubical_closure(fg, tops).unwrap();
        let refine = |c: &Chain| {
            let mut out = Chain::zero(1);
            for (cell, k) in c.iter() {
                let cube = cell.as_cube().unwrap();
                let base: Vec<i64> = cube.anchor.iter().map(|v| 2 * v).collect();
                let axis = cube.axes[0];
                let mut next = base.clone();
                next[axis] += 1;
                out.add_term(Cell::Cube(Cube::new(base, vec![axis]).unwrap()), k);
                out.add_term(Cell::Cube(Cube::new(next, vec![axis]).unwrap()), k);
            }
            out
        };
        let h1 = homology::homology(&x, 1).unwrap();
        let z = h1.representative(&[1], &[]);
        let coarse = minimize::optimal_homologous(&OhcpInstance::new(&x, z.clone()).unwrap(), Options::default()).unwrap();
        let image = refine(&coarse.minimizer);
        assert_eq!(image.mass(&fx), coarse.optimal_mass);
        let fine = minimize::optimal_homologous(&OhcpInstance::new(&fx, refine(&z)).unwrap(), Options::default()).unwrap();
        assert!(fine.optimal_mass <= image.mass(&fx), "{w} {a} {h}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rasterization_is_monotone(r1 in 1i64..=6, extra in 0i64..=4, scheme in 0usize..3) {
        let scheme = [Scheme::Center, Scheme::Corners, Scheme::Both][scheme];
        let g = semialg::square_grid(frac(1, 4), int(2)).unwrap();
        let small = semialg::disk(frac(r1, 4));
        let big = semialg::disk(frac(r1 + extra, 4));
        prop_assert!(included(&small, &g, scheme).is_subset(&included(&big, &g, scheme)));
        let both = SAFormula::And(vec![small.clone(), semialg::annulus(frac(1, 4), int(2))]);
        prop_assert!(included(&both, &g, scheme).is_subset(&included(&small, &g, scheme)));
    }

    #[test]
    fn thickening_adds(seed in any::<u64>(), a in 0u32..=2, b in 0u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = corpus::unit_grid(vec![0, 0], vec![12, 12]);
        let tops: Vec<Vec<i64>> = (0..rng.gen_range(1..5)).map(|_| vec![rng.gen_range(5..8), rng.gen_range(5..8)]).collect();
        let x = corpus::cubes(&g, tops);
        let ab = semialg::thicken(&x, a + b, Exec::Sequential).unwrap();
        let stepwise = semialg::thicken(&semialg::thicken(&x, a, Exec::Sequential).unwrap(), b, Exec::Sequential).unwrap();
        prop_assert_eq!(stepwise, ab);
    }

    #[test]
    fn distance_interval_holds_corner_minimum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CubicalGrid::boxed(int(1), vec![0, 0], vec![8, 8]).unwrap();
        let anchors: Vec<Vec<i64>> = (0..rng.gen_range(1..6)).map(|_| vec![rng.gen_range(0..8), rng.gen_range(0..8)]).collect();
        let p = [frac(rng.gen_range(-8..=72), 8), frac(rng.gen_range(-8..=72), 8)];
        let (lo, hi) = semialg::distance_to_cells(&p, &g, &anchors, Exec::Sequential).unwrap();
        let brute = anchors
            .iter()
            .flat_map(|a| Cube::top(a.clone()).vertices())
            .map(|v| {
                let c = g.point(&v);
                (&c[0] - &p[0]) * (&c[0] - &p[0]) + (&c[1] - &p[1]) * (&c[1] - &p[1])
            })
            .min()
            .unwrap();
        prop_assert!(&lo * &lo <= brute && brute <= &hi * &hi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mass_is_a_norm(seed in any::<u64>(), m in -4i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, 2, 4);
        let (a, b) = (random_on(&mut rng, &x, 1), random_on(&mut rng, &x, 1));
        prop_assert_eq!((&a * m).mass(&x), a.mass(&x) * int(m.abs()));
        prop_assert!((&a + &b).mass(&x) <= a.mass(&x) + b.mass(&x));
    }

    #[test]
    fn restriction_splits_a_chain(seed in any::<u64>(), k in 0usize..=2, cut in 0i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, 2, 4);
        let c = random_on(&mut rng, &x, k);
        let keep = |cell: &Cell| cell.as_cube().unwrap().anchor[0] < cut;
        let split = &ops::restrict(&c, keep) + &ops::restrict(&c, |cell| !keep(cell));
        prop_assert_eq!(split, c);
    }

    #[test]
    fn slice_cells_touch_both_sides(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CubicalGrid::boxed(int(1), vec![0; n], vec![5; n]).unwrap();
        let x = CellComplex::full_grid(g.clone()).unwrap();
        let z = deformation::random_cycle(&mut rng, &g, 1, 4);
        let x0: Vec<Q> = (0..n).map(|_| frac(rng.gen_range(0..=10), 2)).collect();
        let y = int(rng.gen_range(0..3)) + frac(1, 3);
        let s = ops::slice(&z, &x0, &y, &x).unwrap();
        let far = |cell: &Cell| ops::sup_distance(&g.center(cell.as_cube().unwrap()), &x0) > y;
        for f in s.cells() {
            let touches = |side: bool| z.cells().any(|c| far(c) == side && x.faces(c).iter().any(|(g, _)| g == f));
            prop_assert!(touches(true) && touches(false), "{f:?}");
        }
    }

    #[test]
    fn prism_is_a_chain_homotopy(seed in any::<u64>(), k in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = grid_subset(&mut rng, 2, 3);
        let c = random_on(&mut rng, &x, k);
        let dp = ops::prism(&c).boundary().unwrap();
        let mut rhs = &ops::top(&c) - &ops::bottom(&c);
        if k > 0 {
            rhs = &rhs - &ops::prism(&c.boundary().unwrap());
        }
        prop_assert_eq!(dp, rhs);
        let s = simplicial_corpus().swap_remove(seed as usize % 3);
        let c = random_on(&mut rng, &s, k.min(s.dim().unwrap_or(0)));
        let mut rhs = &ops::top(&c) - &ops::bottom(&c);
        if c.dim() > 0 {
            rhs = &rhs - &ops::prism(&c.boundary().unwrap());
        }
        prop_assert_eq!(ops::prism(&c).boundary().unwrap(), rhs);
    }

    #[test]
    fn deformed_cycles_keep_closed_pieces(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fine = CubicalGrid::boxed(frac(1, 3), vec![0; n], vec![6; n]).unwrap();
        let coarse = CubicalGrid::boxed(int(1), vec![0; n], vec![1; n]).unwrap();
        let t = deformation::random_cycle(&mut rng, &fine, 1, 3);
        let (_, rs) = deformation::deform_batch(std::slice::from_ref(&t), &fine, &coarse, seed, Exec::Sequential).unwrap();
        prop_assert!(rs[0].q.is_zero());
        prop_assert!(rs[0].p.boundary().unwrap().is_zero());
    }
}

#[test]
fn corpus_boundary_matrices_compose_to_zero() {
    for (name, x, _) in corpus::homology_corpus() {
        for k in 1..x.dim().unwrap_or(0) {
            let d = x.boundary_matrix(k).to_dense().mul(&x.boundary_matrix(k + 1).to_dense());
            assert!(d.is_zero(), "{name}: D_{k} D_{}", k + 1);
        }
    }
}

#[test]
fn generators_are_non_bounding_cycles() {
    for (name, x, _) in corpus::homology_corpus() {
        for h in homology::homology_all(&x, Exec::Sequential).unwrap() {
            for g in h.generators.iter().chain(&h.torsion_generators) {
                if g.dim() > 0 {
                    assert!(x.boundary(g).unwrap().is_zero(), "{name}");
                }
                assert!(is_boundary(g, &x).unwrap().is_none(), "{name}: H_{} generator bounds", h.dim);
            }
        }
    }
}
