//! End-to-end acceptance run. Each criterion prints one `PASS` or `FAIL`
//! line; the test fails if any of them fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_kernel, check_identities, chain_windows, element_order, fixtures, squad, FREE_ONE};
use squadk::chain::{cylinder_complex, is_quasi_iso, ChainMap, ChainWindow};
use squadk::derived::{build_comparison, check_saturation, verify_lemma_la, verify_theorem_el, Comparison};
use squadk::lattice::{smith_diagonal, smith_normal_form, IntMatrix};
use squadk::squad::{Squad, SquadPresentation};
use squadk::waldhausen::{pointed_sets_window, present_dstar};

/// Wall-clock limit for the free squad on one generator.
const FREE_SQUAD_LIMIT: Duration = Duration::from_secs(1);
/// Random tuples drawn per fixture in the identity suite.
const IDENTITY_SAMPLES: usize = 200;
const MIN_IDENTITY_ELEMENTS: usize = 1000;
const MIN_FIXTURES: usize = 5;
/// Wall-clock limit per chain window for the comparison.
const COMPARISON_LIMIT: Duration = Duration::from_secs(300);
const SNF_SAMPLES: usize = 1000;
const SNF_MAX_DIM: usize = 8;
const SNF_MAX_ENTRY: i64 = 20;
/// Largest cardinality in the pointed-set window.
const POINTED_CARD: usize = 3;

struct Tally {
    failed: Vec<u32>,
}

impl Tally {
    fn record(&mut self, n: u32, ok: bool, detail: String) {
        println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(n);
        }
    }
}

fn k_is_nonzero(s: &Squad) -> bool {
    let k = s.k_invariant().unwrap();
    (0..k.matrix.cols()).any(|j| !k.codomain.is_zero_element(&k.matrix.column(j)).unwrap())
}

fn criterion_1(t: &mut Tally) {
    let start = Instant::now();
    let s = squad(FREE_ONE);
    let pi0 = s.pi0().invariant_factors().to_string();
    let pi1 = s.pi1().unwrap().group.invariant_factors().to_string();
    let k = k_is_nonzero(&s);
    let elapsed = start.elapsed();
    let ok = pi0 == "Z" && pi1 == "Z/2" && k && elapsed < FREE_SQUAD_LIMIT;
    t.record(1, ok, format!("pi0 {pi0}, pi1 {pi1}, k nonzero {k}, {elapsed:?}"));
}

fn criterion_2(t: &mut Tally, chain: &ChainWindow) {
    let mut all = fixtures();
    all.push(("chain p=2", Squad::new(present_dstar(&chain.window).unwrap().presentation).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for (name, s) in &all {
        for _ in 0..IDENTITY_SAMPLES {
            for f in check_identities(s, &mut rng) {
                failures.push(format!("{name}: {f}"));
            }
        }
    }
    // each tuple draws four C₀ and three C₁ elements
    let elements = all.len() * IDENTITY_SAMPLES * 7;
    failures.dedup();
    let ok = failures.is_empty() && elements >= MIN_IDENTITY_ELEMENTS && all.len() >= MIN_FIXTURES;
    t.record(2, ok, format!("{} fixtures, {elements} elements, failures {failures:?}", all.len()));
}

fn well_formed(p: &SquadPresentation) -> bool {
    Squad::check_well_formed(p).unwrap().is_empty()
}

fn criterion_3(t: &mut Tally, windows: &[(String, ChainWindow)]) -> Vec<(Comparison, Duration)> {
    let pointed = pointed_sets_window(POINTED_CARD).unwrap();
    let mut detail = Vec::new();
    let mut ok = true;
    let d = present_dstar(&pointed).unwrap().presentation;
    let dd = squadk::derived::present_ddstar(&pointed, squadk::derived::DEPTH_CAP).unwrap().presentation;
    ok &= well_formed(&d) && well_formed(&dd);
    detail.push(format!("pointed card<={POINTED_CARD}: {ok}"));
    let mut comparisons = Vec::new();
    for (name, cw) in windows {
        let start = Instant::now();
        let cmp = build_comparison(&cw.window).unwrap();
        let good = well_formed(&cmp.dstar.presentation) && well_formed(&cmp.derived.presentation);
        detail.push(format!("{name}: {good}"));
        ok &= good;
        comparisons.push((cmp, start.elapsed()));
    }
    t.record(3, ok, detail.join(", "));
    comparisons
}

fn criterion_4(t: &mut Tally, windows: &[(String, ChainWindow)], cmps: &[(Comparison, Duration)]) {
    let mut ok = true;
    let mut detail = Vec::new();
    for ((name, cw), (cmp, built)) in windows.iter().zip(cmps) {
        let start = Instant::now();
        let el = verify_theorem_el(&cw.window, cmp).unwrap();
        let elapsed = *built + start.elapsed();
        let good = el.passed() && elapsed < COMPARISON_LIMIT;
        ok &= good;
        detail.push(format!(
            "{name}: {} generators, {} alternates, {elapsed:.1?}, failures {:?}",
            el.generators_checked, el.alternates_checked, el.failures
        ));
    }
    t.record(4, ok, detail.join("; "));
}

fn criterion_5(t: &mut Tally, windows: &[(String, ChainWindow)], cmps: &[(Comparison, Duration)]) {
    let mut ok = true;
    let mut detail = Vec::new();
    for ((name, cw), (cmp, _)) in windows.iter().zip(cmps) {
        let la = verify_lemma_la(&cw.window, &cmp.d).unwrap();
        ok &= la.passed();
        detail.push(format!("{name}: {} pairs, {} failures", la.pairs_checked, la.failures.len()));
    }
    t.record(5, ok, detail.join(", "));
}

/// Element orders of `Z/t₁ ⊕ … ⊕ Z/t_k`, sorted.
fn orders_of(torsion: &[BigInt]) -> Vec<usize> {
    let ts: Vec<usize> = torsion.iter().map(|t| t.try_into().unwrap()).collect();
    let mut orders = vec![1usize];
    for t in ts {
        orders = orders.iter().flat_map(|&o| (0..t).map(move |x| o.lcm(&(t / x.gcd(&t))))).collect();
    }
    orders.sort();
    orders
}

fn criterion_6(t: &mut Tally) {
    let s = Squad::new(present_dstar(&pointed_sets_window(POINTED_CARD).unwrap()).unwrap().presentation).unwrap();
    let p = s.presentation();
    // π₀ is Z^n0 modulo the abelianized relations and boundaries
    let words = p.rels0.iter().chain(p.gens1.iter().map(|(_, w)| w));
    let columns: Vec<Vec<BigInt>> = words
        .map(|w| {
            let mut v = vec![BigInt::zero(); p.gens0.len()];
            for l in &w.0 {
                let i = p.gens0.iter().position(|g| *g == l.name).unwrap();
                v[i] += if l.inverse { -1 } else { 1 };
            }
            v
        })
        .collect();
    let diag = smith_diagonal(&IntMatrix::from_columns(p.gens0.len(), &columns));
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let free = p.gens0.len() - rank;
    let torsion = diag.iter().filter(|d| d.abs() > BigInt::from(1)).count();
    let pi0 = s.pi0().invariant_factors();
    let pi0_ok = free == 1 && torsion == 0 && pi0.to_string() == "Z";

    let pi1 = s.pi1().unwrap();
    let found = brute_force_kernel(&s);
    let factors = pi1.group.invariant_factors();
    let bound = factors.order().map(|o| usize::try_from(o).unwrap()).unwrap_or(0);
    let mut found_orders: Vec<usize> = found.iter().filter_map(|x| element_order(&s, x, bound)).collect();
    found_orders.sort();
    let generators_found = pi1.generators.iter().all(|g| found.iter().any(|x| s.equal1(x, g).unwrap()));
    let pi1_ok = factors.free_rank == 0
        && found_orders.len() == found.len()
        && found_orders == orders_of(&factors.torsion)
        && generators_found;
    t.record(
        6,
        pi0_ok && pi1_ok,
        format!("pi0 {pi0} (SNF free rank {free}), pi1 {factors}, brute force found {} elements of orders {found_orders:?}", found.len()),
    );
}

fn criterion_7(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..SNF_SAMPLES {
        let (r, c) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
        let rows: Vec<Vec<i64>> =
            (0..r).map(|_| (0..c).map(|_| rng.gen_range(-SNF_MAX_ENTRY..=SNF_MAX_ENTRY)).collect()).collect();
        let m = IntMatrix::from_rows(&rows);
        let f = smith_normal_form(&m);
        let d = f.diagonal();
        let chain = d.iter().all(|x| !x.is_negative())
            && d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        let ok = f.u.mul(&m).unwrap().mul(&f.v).unwrap() == f.s
            && f.s.is_diagonal()
            && chain
            && f.u.is_unimodular()
            && f.v.is_unimodular();
        bad += usize::from(!ok);
    }
    t.record(7, bad == 0, format!("{SNF_SAMPLES} matrices up to {SNF_MAX_DIM}x{SNF_MAX_DIM}, {bad} failures"));
}

fn criterion_8(t: &mut Tally, windows: &[(String, ChainWindow)]) {
    let mut checked = 0;
    let mut problems = Vec::new();
    for (name, cw) in windows {
        for (i, a) in cw.complexes.iter().enumerate() {
            let cyl = cylinder_complex(a);
            let c = &cyl.complex;
            let k = *c.field();
            let label = format!("{name} {}", cw.window.cat.object_name(i));
            if !c.degrees().all(|n| c.d(n + 1).mul(&k, &c.d(n)).is_zero()) {
                problems.push(format!("{label}: d^2"));
            }
            let one = ChainMap::identity(&cyl.p.target);
            if cyl.p.after(&cyl.i0) != one || cyl.p.after(&cyl.i1) != one {
                problems.push(format!("{label}: p i"));
            }
            // (i0, i1) out of A ⊕ A is injective in each degree
            let joint = c.degrees().all(|n| {
                let m = cyl.i0.at(n);
                let cols: Vec<Vec<u32>> = (0..m.cols()).map(|j| m.column(j)).chain((0..m.cols()).map(|j| cyl.i1.at(n).column(j))).collect();
                squadk::chain::FpMatrix::from_columns(m.rows(), &cols).rank(&k) == 2 * m.cols()
            });
            if !joint {
                problems.push(format!("{label}: (i0, i1) not injective"));
            }
            if !is_quasi_iso(&cyl.p) {
                problems.push(format!("{label}: p not a quasi-isomorphism"));
            }
            checked += 1;
        }
        let cat = &cw.window.cat;
        for (&a, row) in cw.window.cylinders() {
            let id = cat.identity(a);
            if cat.comp(row.p, row.i0) != id || cat.comp(row.p, row.i1) != id || !cw.window.is_weak_equivalence(row.p) {
                problems.push(format!("{name}: cylinder row of {}", cat.object_name(a)));
            }
            checked += 1;
        }
    }
    t.record(8, problems.is_empty(), format!("{checked} cylinders, problems {problems:?}"));
}

fn criterion_9(t: &mut Tally, windows: &[(String, ChainWindow)]) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, cw) in windows {
        let report = check_saturation(&cw.window).unwrap();
        ok &= report.is_empty();
        detail.push(format!("{name}: {} unsaturated", report.len()));
    }
    let mut w = windows[0].1.window.clone();
    let e = w.cat.object("C00_1").unwrap();
    let f = w.from_zero(e).unwrap();
    w.unmark_weak_equivalence(f);
    let report = check_saturation(&w).unwrap();
    let caught = report.iter().any(|r| r.starts_with(w.cat.name(f)));
    ok &= caught;
    detail.push(format!("removing {} detected: {caught}", w.cat.name(f)));
    t.record(9, ok, detail.join(", "));
}

#[test]
fn acceptance() {
    let mut t = Tally { failed: Vec::new() };
    let windows = chain_windows();
    criterion_1(&mut t);
    criterion_2(&mut t, &windows[0].1);
    let cmps = criterion_3(&mut t, &windows);
    criterion_4(&mut t, &windows, &cmps);
    criterion_5(&mut t, &windows, &cmps);
    criterion_6(&mut t);
    criterion_7(&mut t);
    criterion_8(&mut t, &windows);
    criterion_9(&mut t, &windows);
    assert!(t.failed.is_empty(), "failed criteria: {:?}", t.failed);
}
