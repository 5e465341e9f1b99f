use std::sync::Arc;

use super::ddstar::{iso_generator, mu_bar, nu_bar, nu_image, present_ddstar, DerivedPresented};
use super::fractions::homotopic;
use super::DEPTH_CAP;
use crate::squad::{Expr1, Squad, SquadMorphism};
use crate::waldhausen::{present_dstar, we_generator, Presented, WaldhausenWindow, WindowError};

/// Alternate representatives compared against the chosen one, per class.
const ALTERNATES_PER_CLASS: usize = 8;

/// Outcome of checking that homotopic weak equivalences agree in `D*₁W`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaReport {
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl LaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every pair of distinct parallel weak equivalences out of an object
/// with a cylinder that are found homotopic, checks `[f] = [g]` in `dstar`.
pub fn verify_lemma_la(w: &WaldhausenWindow, dstar: &Squad) -> Result<LaReport, WindowError> {
    let c = &w.cat;
    let mut report = LaReport::default();
    for a in 0..c.n_objects() {
        if w.cylinder(a).is_none() {
            continue;
        }
        for b in 0..c.n_objects() {
            let hom: Vec<_> = w.we_hom(a, b).collect();
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i + 1..] {
                    let Some(wit) = homotopic(w, f, g)? else { continue };
                    report.pairs_checked += 1;
                    let (ef, eg) = (Expr1::gen(we_generator(w, f)), Expr1::gen(we_generator(w, g)));
                    if !dstar.expr_equal(&ef, &eg)? {
                        report.failures.push(format!(
                            "{} ~ {} (via {}, {}) but the generators differ",
                            c.name(f),
                            c.name(g),
                            c.name(wit.h),
                            c.name(wit.homotopy)
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Both presentations with the comparison maps between them.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub dstar: Presented,
    pub derived: DerivedPresented,
    pub d: Arc<Squad>,
    pub dd: Arc<Squad>,
    pub mu: SquadMorphism,
    pub nu: SquadMorphism,
}

pub fn build_comparison(w: &WaldhausenWindow) -> Result<Comparison, WindowError> {
    let dstar = present_dstar(w)?;
    let derived = present_ddstar(w, DEPTH_CAP)?;
    let d = Arc::new(Squad::new(dstar.presentation.clone())?);
    let dd = Arc::new(Squad::new(derived.presentation.clone())?);
    let mu = mu_bar(w, d.clone(), dd.clone(), &derived)?;
    let nu = nu_bar(w, dd.clone(), d.clone(), &derived)?;
    Ok(Comparison { dstar, derived, d, dd, mu, nu })
}

/// Outcome of checking that `μ̄` and `ν̄` are mutually inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElReport {
    pub failures: Vec<String>,
    pub generators_checked: usize,
    pub alternates_checked: usize,
    pub mu0_iso: bool,
    pub mu1_iso: bool,
}

impl ElReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.mu0_iso && self.mu1_iso
    }
}

pub fn verify_theorem_el(w: &WaldhausenWindow, cmp: &Comparison) -> Result<ElReport, WindowError> {
    let c = &w.cat;
    let table = &cmp.derived.isos;
    let mut r = ElReport::default();
    for (label, m) in [("mu", &cmp.mu), ("nu", &cmp.nu)] {
        for v in m.verify()? {
            r.failures.push(format!("{label}: {v}"));
        }
    }
    if !r.failures.is_empty() {
        return Ok(r);
    }

    // ν̄μ̄ on weak equivalence generators; objects and cofiber sequences
    // are fixed by both maps by construction
    for f in w.weak_equivalences() {
        let k = table.zeta_class(w, f).ok_or_else(|| WindowError::Invalid(format!("no class for ζ({})", c.name(f))))?;
        let image = nu_image(w, &table.isos[k].representative());
        if !cmp.d.expr_equal(&image, &Expr1::gen(we_generator(w, f)))? {
            r.failures.push(format!("nu.mu(we:{}) = {image}", c.name(f)));
        }
        r.generators_checked += 1;
    }
    let iso = |k: usize| Expr1::gen(iso_generator(w, table, k));
    for (k, h) in table.isos.iter().enumerate() {
        let rep = h.representative();
        let (Some(k1), Some(k2)) = (table.zeta_class(w, rep.a1), table.zeta_class(w, rep.a2)) else {
            r.failures.push(format!("{}: a leg has no ζ class", iso_generator(w, table, k)));
            continue;
        };
        let image = Expr1::sum(vec![iso(k2).neg(), iso(k1)]);
        if !cmp.dd.expr_equal(&image, &iso(k))? {
            r.failures.push(format!("mu.nu({}) = {image}", iso_generator(w, table, k)));
        }
        r.generators_checked += 1;
        let chosen = nu_image(w, &rep);
        for alt in h.members.iter().filter(|&&m| m != rep).take(ALTERNATES_PER_CLASS) {
            if !cmp.d.expr_equal(&nu_image(w, alt), &chosen)? {
                r.failures.push(format!("{}: representative {} gives a different image", iso_generator(w, table, k), alt.describe(w)));
            }
            r.alternates_checked += 1;
        }
    }
    let r_len = cmp.d.presentation().gens0.len() + cmp.dstar.sequences.len();
    r.generators_checked += r_len;
    let (pi0, pi1) = cmp.mu.homotopy_group_maps()?;
    r.mu0_iso = pi0.is_iso();
    r.mu1_iso = pi1.is_iso();
    Ok(r)
}
