//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use squadk::chain::{build_window, ChainMap, ChainWindow, DimCap, FpMatrix, PrimeField, WindowCaps};
use squadk::squad::{parse_sqpres, C0Element, C1Element, Expr1, Letter, Squad, Word0};
use squadk::waldhausen::{pointed_sets_window, present_dstar};

pub const FREE_ONE: &str = "gens0:\n  e\ngens1:\nrels0:\nrels1:\n";

pub fn squad(text: &str) -> Squad {
    Squad::new(parse_sqpres(text).unwrap()).unwrap()
}

/// Small presentations exercising free, torsion, cone and window cases.
pub fn fixtures() -> Vec<(&'static str, Squad)> {
    vec![
        ("free on e", squad(FREE_ONE)),
        ("free on a, b", squad("gens0:\n  a\n  b\ngens1:\n")),
        ("mixed", squad("gens0:\n  a\n  b\ngens1:\n  x := +a -b\n  y := +b +b\n  z := 0\n")),
        ("moore mod 2", squad("gens0:\n  e\ngens1:\n  x := +e +e\n")),
        ("relations", squad("gens0:\n  a\n  b\ngens1:\n  x := +a\n  y := 0\nrels0:\n  +b +b +b\nrels1:\n  y - <+a | +a>\n")),
        ("pointed sets", Squad::new(present_dstar(&pointed_sets_window(3).unwrap()).unwrap().presentation).unwrap()),
    ]
}

pub fn chain_window(p: u32, cap: DimCap) -> ChainWindow {
    build_window(p, 0, 1, cap, WindowCaps::default()).unwrap()
}

/// The three chain windows of the acceptance suite.
pub fn chain_windows() -> Vec<(String, ChainWindow)> {
    [(2, DimCap::Total(2)), (3, DimCap::Total(2)), (2, DimCap::PerDegree(2))]
        .into_iter()
        .map(|(p, cap)| (format!("p={p} {cap:?}"), chain_window(p, cap)))
        .collect()
}

fn random_word(s: &Squad, rng: &mut impl Rng, len: usize) -> Word0 {
    let gens = &s.presentation().gens0;
    Word0(
        (0..rng.gen_range(0..=len))
            .map(|_| Letter { name: gens[rng.gen_range(0..gens.len())].clone(), inverse: rng.gen_bool(0.5) })
            .collect(),
    )
}

fn random_expr(s: &Squad, rng: &mut impl Rng, depth: usize) -> Expr1 {
    let gens1 = &s.presentation().gens1;
    let choice = rng.gen_range(0..if depth == 0 { 2 } else { 5 });
    match choice {
        0 if !gens1.is_empty() => Expr1::gen(gens1[rng.gen_range(0..gens1.len())].0.clone()),
        0 | 1 => Expr1::bracket(random_word(s, rng, 3), random_word(s, rng, 3)),
        2 => random_expr(s, rng, depth - 1).neg(),
        3 => random_expr(s, rng, depth - 1).act(random_word(s, rng, 2)),
        _ => Expr1::sum((0..rng.gen_range(2..4)).map(|_| random_expr(s, rng, depth - 1)).collect()),
    }
}

pub fn random_c0(s: &Squad, rng: &mut impl Rng) -> C0Element {
    s.normalize0(&random_word(s, rng, 6)).unwrap()
}

pub fn random_c1(s: &Squad, rng: &mut impl Rng) -> C1Element {
    s.eval1(&random_expr(s, rng, 3)).unwrap()
}

/// Random element of `ker ∂`, drawn from the `π₁` generators.
pub fn random_kernel(s: &Squad, rng: &mut impl Rng) -> C1Element {
    let gens = &s.pi1().unwrap().generators;
    let mut x = s.identity1();
    for g in gens {
        for _ in 0..rng.gen_range(0..3) {
            x = s.mul1(&x, g).unwrap();
        }
    }
    x
}

/// `[x, y] = -x - y + x + y` in `C₀`.
fn comm0(s: &Squad, x: &C0Element, y: &C0Element) -> C0Element {
    let a = s.mul0(&s.inv0(x).unwrap(), &s.inv0(y).unwrap()).unwrap();
    s.mul0(&s.mul0(&a, x).unwrap(), y).unwrap()
}

fn comm1(s: &Squad, x: &C1Element, y: &C1Element) -> C1Element {
    let a = s.mul1(&s.inv1(x).unwrap(), &s.inv1(y).unwrap()).unwrap();
    s.mul1(&s.mul1(&a, x).unwrap(), y).unwrap()
}

/// Checks the defining identities and their standard consequences on one
/// random tuple; returns the names of the identities that fail.
pub fn check_identities(s: &Squad, rng: &mut impl Rng) -> Vec<&'static str> {
    let (c0, d0, g, h) = (random_c0(s, rng), random_c0(s, rng), random_c0(s, rng), random_c0(s, rng));
    let (c1, d1) = (random_c1(s, rng), random_c1(s, rng));
    let k = random_kernel(s, rng);
    let e0 = |x: &C0Element, y: &C0Element| s.equal0(x, y).unwrap();
    let e1 = |x: &C1Element, y: &C1Element| s.equal1(x, y).unwrap();
    let m1 = |x: &C1Element, y: &C1Element| s.mul1(x, y).unwrap();
    let act = |x: &C1Element, y: &C0Element| s.act(x, y).unwrap();
    let bd = |x: &C1Element| s.boundary(x).unwrap();
    let br = |x: &C0Element, y: &C0Element| s.bracket(x, y).unwrap();
    let mut failed = Vec::new();
    let mut check = |ok: bool, name| {
        if !ok {
            failed.push(name)
        }
    };
    check(e0(&bd(&br(&c0, &d0)), &comm0(s, &d0, &c0)), "d<c,d> = [d,c]");
    check(e1(&br(&bd(&c1), &bd(&d1)), &comm1(s, &d1, &c1)), "<dc,dd> = [d,c]");
    check(e1(&m1(&br(&c0, &d0), &br(&d0, &c0)), &s.identity1()), "<c,d> + <d,c> = 0");
    check(e1(&act(&c1, &g), &m1(&c1, &br(&g, &bd(&c1)))), "action formula");
    check(e1(&act(&act(&c1, &g), &h), &act(&c1, &s.mul0(&g, &h).unwrap())), "right action");
    check(e1(&act(&m1(&c1, &d1), &g), &m1(&act(&c1, &g), &act(&d1, &g))), "action by automorphisms");
    let b = br(&c0, &d0);
    check(e1(&m1(&b, &c1), &m1(&c1, &b)), "brackets are central");
    check(e1(&m1(&k, &c1), &m1(&c1, &k)), "kernel is central");
    check(e0(&bd(&k), &s.identity0()), "kernel has trivial boundary");
    let conj = s.mul0(&s.mul0(&s.inv0(&g).unwrap(), &bd(&c1)).unwrap(), &g).unwrap();
    check(e0(&bd(&act(&c1, &g)), &conj), "d(c^g) = -g + dc + g");
    check(e1(&act(&c1, &bd(&d1)), &m1(&m1(&s.inv1(&d1).unwrap(), &c1), &d1)), "Peiffer identity");
    check(e1(&act(&c1, &comm0(s, &g, &h)), &c1), "commutators act trivially");
    check(e1(&act(&b, &g), &b), "trivial action on brackets");
    check(e1(&act(&k, &g), &k), "trivial action on the kernel");
    failed
}

/// Brute-force `ker ∂`: every product `Σ εᵢ eᵢ + Σ δ ⟨a, b⟩` with
/// coefficients in `{-1, 0, 1}` whose abelianized boundary vanishes is
/// evaluated, and the distinct elements with trivial boundary are
/// collected.
pub fn brute_force_kernel(s: &Squad) -> Vec<C1Element> {
    let p = s.presentation();
    let (n0, n1) = (p.gens0.len(), p.gens1.len());
    let index: std::collections::HashMap<&str, usize> =
        p.gens0.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let ab: Vec<Vec<i64>> = p
        .gens1
        .iter()
        .map(|(_, w)| {
            let mut v = vec![0; n0];
            for l in &w.0 {
                v[index[l.name.as_str()]] += if l.inverse { -1 } else { 1 };
            }
            v
        })
        .collect();
    let signed = |x: C1Element| -> [C1Element; 3] {
        [s.inv1(&x).unwrap(), s.identity1(), x]
    };
    let gens: Vec<[C1Element; 3]> = (0..n1).map(|i| signed(s.generator1(i).unwrap())).collect();
    let brackets: Vec<[C1Element; 3]> = (0..n0)
        .flat_map(|a| (a..n0).map(move |b| (a, b)))
        .map(|(a, b)| signed(s.bracket(&s.generator0(a), &s.generator0(b)).unwrap()))
        .collect();
    // every combination of the central brackets, computed once
    let mut central = vec![s.identity1()];
    for b in &brackets {
        central = central.iter().flat_map(|c| b.iter().map(|t| s.mul1(c, t).unwrap())).collect();
    }
    let mut found: Vec<C1Element> = Vec::new();
    let mut coeffs = vec![-1i64; n1];
    loop {
        let zero = (0..n0).all(|j| (0..n1).map(|i| coeffs[i] * ab[i][j]).sum::<i64>() == 0);
        if zero {
            let mut x = s.identity1();
            for (g, &c) in gens.iter().zip(&coeffs) {
                x = s.mul1(&x, &g[(c + 1) as usize]).unwrap();
            }
            for c in &central {
                let y = s.mul1(&x, c).unwrap();
                if s.equal0(&s.boundary(&y).unwrap(), &s.identity0()).unwrap()
                    && !found.iter().any(|z| s.equal1(z, &y).unwrap())
                {
                    found.push(y);
                }
            }
        }
        if !odometer(&mut coeffs) {
            break;
        }
    }
    found
}

/// Steps through `{-1, 0, 1}^n`; false once every vector was visited.
fn odometer(v: &mut [i64]) -> bool {
    for x in v.iter_mut() {
        if *x < 1 {
            *x += 1;
            return true;
        }
        *x = -1;
    }
    false
}

/// Order of `x` in a group whose exponent divides `bound`.
pub fn element_order(s: &Squad, x: &C1Element, bound: usize) -> Option<usize> {
    let mut y = x.clone();
    for n in 1..=bound {
        if s.equal1(&y, &s.identity1()).unwrap() {
            return Some(n);
        }
        y = s.mul1(&y, x).unwrap();
    }
    None
}

/// Whether `f - g = d h + h d` for some `h` of degree `-1`, by Gaussian
/// elimination on the entries of `h`.
pub fn chain_homotopic(k: &PrimeField, f: &ChainMap, g: &ChainMap) -> bool {
    let (a, b) = (&f.source, &f.target);
    let degrees: Vec<i32> = a.degrees().collect();
    let flatten = |maps: &[FpMatrix]| -> Vec<u32> { maps.iter().flat_map(|m| m.entries().to_vec()).collect() };
    let diff: Vec<FpMatrix> = degrees.iter().map(|&n| f.at(n).add(k, &g.at(n).scale(k, k.neg(1)))).collect();
    let rows = flatten(&diff).len();
    let mut columns = Vec::new();
    for &m in &degrees {
        for i in 0..b.dim(m - 1) {
            for j in 0..a.dim(m) {
                // h nonzero only in degree m, one entry
                let h = |n: i32| {
                    let mut x = FpMatrix::zeros(b.dim(n - 1), a.dim(n));
                    if n == m {
                        x.set(i, j, 1);
                    }
                    x
                };
                let image: Vec<FpMatrix> = degrees
                    .iter()
                    .map(|&n| b.d(n - 1).mul(k, &h(n)).add(k, &h(n + 1).mul(k, &a.d(n))))
                    .collect();
                columns.push(flatten(&image));
            }
        }
    }
    let target = flatten(&diff);
    let m = FpMatrix::from_columns(rows, &columns);
    let mut with = columns.clone();
    with.push(target);
    m.rank(k) == FpMatrix::from_columns(rows, &with).rank(k)
}
