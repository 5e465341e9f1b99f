use super::category::MorId;
use super::window::{Pushout, WaldhausenWindow};

/// Findings of [`validate_window`]. Only `violations` and `gaps` make a
/// window invalid; `info` carries the informational flags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WindowReport {
    pub violations: Vec<String>,
    pub gaps: Vec<String>,
    pub info: Vec<String>,
}

impl WindowReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.gaps.is_empty()
    }
}

/// Checks the category laws and the Waldhausen axioms on every instance
/// present in the window. Searches stop after `budget` elementary checks
/// each; truncation is noted in `info`.
pub fn validate_window(w: &WaldhausenWindow, budget: u64) -> WindowReport {
    let mut r = WindowReport::default();
    let c = &w.cat;
    let name = |f: MorId| c.name(f).to_string();

    for (g, f) in c.missing_composites() {
        r.violations.push(format!("composite {}.{} is not recorded", name(g), name(f)));
    }
    let (bad, checked) = c.associativity_failures(budget);
    for (h, g, f) in bad {
        r.violations.push(format!("associativity fails for {}.{}.{}", name(h), name(g), name(f)));
    }
    if checked >= budget {
        r.info.push(format!("associativity checked on the first {checked} triples only"));
    }
    if !r.violations.is_empty() {
        // the remaining checks assume a category
        return r;
    }

    for a in 0..c.n_objects() {
        let on = c.object_name(a);
        match c.hom(w.zero, a).len() {
            1 => {
                let z = c.hom(w.zero, a)[0];
                if !w.is_cofibration(z) {
                    r.violations.push(format!("0 -> {on} is not a cofibration"));
                }
            }
            n => r.violations.push(format!("{n} morphisms 0 -> {on}; zero must be initial")),
        }
        if c.hom(a, w.zero).len() != 1 {
            r.violations.push(format!("{} morphisms {on} -> 0; zero must be terminal", c.hom(a, w.zero).len()));
        }
    }

    for f in 0..c.n_morphisms() {
        if c.is_iso(f) && !(w.is_cofibration(f) && w.is_weak_equivalence(f)) {
            r.violations.push(format!("isomorphism {} must be a cofibration and a weak equivalence", name(f)));
        }
    }

    // both classes are subcategories; 2-out-of-3 is only reported
    let mut two_of_three = 0usize;
    for f in 0..c.n_morphisms() {
        for &g in c.out(c.target(f)) {
            let gf = c.comp(g, f);
            if w.is_cofibration(f) && w.is_cofibration(g) && !w.is_cofibration(gf) {
                r.violations.push(format!("composite {}.{} of cofibrations is not a cofibration", name(g), name(f)));
            }
            let n_we = [f, g, gf].iter().filter(|&&m| w.is_weak_equivalence(m)).count();
            if w.is_weak_equivalence(f) && w.is_weak_equivalence(g) && !w.is_weak_equivalence(gf) {
                r.violations.push(format!("composite {}.{} of weak equivalences is not one", name(g), name(f)));
            } else if n_we == 2 {
                two_of_three += 1;
            }
        }
    }
    if two_of_three == 0 {
        r.info.push("2-out-of-3 holds".into());
    } else {
        r.info.push(format!("2-out-of-3 fails on {two_of_three} composable pairs"));
    }

    for (&(f, g), p) in w.pushouts() {
        let label = format!("pushout {} along {}", name(f), name(g));
        if !w.is_cofibration(f) {
            r.violations.push(format!("{label}: {} is not a cofibration", name(f)));
        }
        let shape_ok = c.source(p.leg_b) == c.target(f)
            && c.source(p.leg_x) == c.target(g)
            && c.target(p.leg_b) == p.object
            && c.target(p.leg_x) == p.object;
        if !shape_ok {
            r.violations.push(format!("{label}: legs have the wrong shape"));
            continue;
        }
        if c.comp(p.leg_b, f) != c.comp(p.leg_x, g) {
            r.violations.push(format!("{label}: square does not commute"));
        }
        if !w.is_cofibration(p.leg_x) {
            r.violations.push(format!("{label}: lower leg {} is not a cofibration", name(p.leg_x)));
        }
    }

    for f in w.cofibrations() {
        let a = c.source(f);
        match w.to_zero(a) {
            Some(t) if w.pushout(f, t).is_some() => {}
            _ => r.gaps.push(format!("cofiber of {} is not recorded", name(f))),
        }
    }
    for a in 0..c.n_objects() {
        let on = c.object_name(a);
        let id = c.identity(a);
        if let (Some(t), Some(z)) = (w.to_zero(a), w.from_zero(a)) {
            if let Some(p) = w.pushout(id, t) {
                if p.object != w.zero {
                    r.violations.push(format!("cofiber of id_{on} is not the zero object"));
                }
            }
            if let Some(p) = w.pushout(z, w.cat.identity(w.zero)) {
                if p.object != a || p.leg_b != id {
                    r.violations.push(format!("cofiber of 0 -> {on} is not ({on}, id_{on})"));
                }
            }
        }
    }

    for (&(a, b), cp) in w.coproducts() {
        let label = format!("coproduct {} {}", c.object_name(a), c.object_name(b));
        let s = cp.object;
        let shape_ok = [(cp.i1, a, s), (cp.i2, b, s), (cp.p1, s, a), (cp.p2, s, b)]
            .iter()
            .all(|&(m, x, y)| c.source(m) == x && c.target(m) == y);
        if !shape_ok {
            r.violations.push(format!("{label}: maps have the wrong shape"));
            continue;
        }
        let ok = c.comp(cp.p1, cp.i1) == c.identity(a)
            && c.comp(cp.p2, cp.i2) == c.identity(b)
            && Some(c.comp(cp.p1, cp.i2)) == w.zero_map(b, a)
            && Some(c.comp(cp.p2, cp.i1)) == w.zero_map(a, b);
        if !ok {
            r.violations.push(format!("{label}: inclusions and projections do not compose correctly"));
        }
        if !w.is_cofibration(cp.i1) || !w.is_cofibration(cp.i2) {
            r.violations.push(format!("{label}: inclusions must be cofibrations"));
        }
        for (i, q, other) in [(cp.i1, cp.p2, b), (cp.i2, cp.p1, a)] {
            let src = c.source(i);
            match w.to_zero(src).and_then(|t| w.pushout(i, t)) {
                None => r.gaps.push(format!("{label}: cofiber of {} is not recorded", name(i))),
                Some(p) if p.object != other || p.leg_b != q => {
                    r.gaps.push(format!("{label}: cofiber of {} is not ({}, {})", name(i), c.object_name(other), name(q)))
                }
                Some(_) => {}
            }
        }
    }

    for (&a, cy) in w.cylinders() {
        let label = format!("cylinder {}", c.object_name(a));
        let shape_ok = [(cy.i0, a, cy.object), (cy.i1, a, cy.object), (cy.p, cy.object, a)]
            .iter()
            .all(|&(m, x, y)| c.source(m) == x && c.target(m) == y);
        if !shape_ok {
            r.violations.push(format!("{label}: maps have the wrong shape"));
            continue;
        }
        let id = c.identity(a);
        if c.comp(cy.p, cy.i0) != id || c.comp(cy.p, cy.i1) != id {
            r.violations.push(format!("{label}: p does not retract i0 and i1"));
        }
        if !w.is_weak_equivalence(cy.p) {
            r.violations.push(format!("{label}: p is not a weak equivalence"));
        }
        match w.coproduct(a, a) {
            None => {
                if a != w.zero {
                    r.gaps.push(format!("{label}: coproduct {0} {0} is not recorded", c.object_name(a)));
                }
            }
            Some(cp) => {
                let joint = c
                    .hom(cp.object, cy.object)
                    .iter()
                    .copied()
                    .find(|&u| c.comp(u, cp.i1) == cy.i0 && c.comp(u, cp.i2) == cy.i1);
                match joint {
                    Some(u) if w.is_cofibration(u) => {}
                    Some(_) => r.violations.push(format!("{label}: (i0, i1) is not a cofibration")),
                    None => r.violations.push(format!("{label}: (i0, i1) is not in the window")),
                }
            }
        }
    }

    gluing(w, budget, &mut r);
    r
}

/// Gluing axiom on pairs of recorded pushouts joined by weak equivalences.
fn gluing(w: &WaldhausenWindow, budget: u64, r: &mut WindowReport) {
    let c = &w.cat;
    let mut by_source: Vec<Vec<(MorId, MorId, Pushout)>> = vec![Vec::new(); c.n_objects()];
    for (&(f, g), &p) in w.pushouts() {
        by_source[c.source(f)].push((f, g, p));
    }
    let mut checked = 0u64;
    let mut instances = 0u64;
    'outer: for rows in &by_source {
        for &(f, g, p) in rows {
            let (a, b, x) = (c.source(f), c.target(f), c.target(g));
            for &ea in c.out(a) {
                if !w.is_weak_equivalence(ea) {
                    continue;
                }
                for &(f2, g2, p2) in &by_source[c.target(ea)] {
                    let (fa, ga) = (c.comp(f2, ea), c.comp(g2, ea));
                    for eb in w.we_hom(b, c.target(f2)) {
                        checked += 1;
                        if checked > budget {
                            break 'outer;
                        }
                        if c.comp(eb, f) != fa {
                            continue;
                        }
                        for ex in w.we_hom(x, c.target(g2)) {
                            if c.comp(ex, g) != ga {
                                continue;
                            }
                            instances += 1;
                            glue_instance(w, (f, g, p), (f2, g2, p2), eb, ex, r);
                        }
                    }
                }
            }
        }
    }
    if checked > budget {
        r.info.push(format!("gluing checked on {instances} instances before the budget ran out"));
    } else {
        r.info.push(format!("gluing checked on all {instances} instances"));
    }
}

fn glue_instance(
    w: &WaldhausenWindow,
    (f, g, p): (MorId, MorId, Pushout),
    (f2, g2, p2): (MorId, MorId, Pushout),
    eb: MorId,
    ex: MorId,
    r: &mut WindowReport,
) {
    let c = &w.cat;
    let ub = c.comp(p2.leg_b, eb);
    let ux = c.comp(p2.leg_x, ex);
    let induced = c
        .hom(p.object, p2.object)
        .iter()
        .copied()
        .find(|&m| c.comp(m, p.leg_b) == ub && c.comp(m, p.leg_x) == ux);
    let label = || format!("pushouts {} along {} and {} along {}", c.name(f), c.name(g), c.name(f2), c.name(g2));
    match induced {
        Some(m) if w.is_weak_equivalence(m) => {}
        Some(m) => r
            .violations
            .push(format!("gluing: induced map {} between {} is not a weak equivalence", c.name(m), label())),
        None => r.gaps.push(format!("gluing: no induced map between {}", label())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::{parse_wcat, pointed_sets_window, write_wcat};

    #[test]
    fn zero_window_is_valid() {
        assert!(validate_window(&pointed_sets_window(1).unwrap(), 1000).is_valid());
    }

    #[test]
    fn dropping_a_weak_equivalence_breaks_the_axioms() {
        let mut w = pointed_sets_window(2).unwrap();
        let s2 = w.cat.object("S2").unwrap();
        w.unmark_weak_equivalence(w.cat.identity(s2));
        assert!(!validate_window(&w, 1_000_000).is_valid());
    }

    #[test]
    fn dropping_a_pushout_row_is_a_gap() {
        let w = pointed_sets_window(2).unwrap();
        let text = write_wcat(&w);
        let mut lines: Vec<&str> = text.lines().collect();
        let start = lines.iter().position(|l| *l == "[pushout]").unwrap();
        lines.remove(start + 1);
        let broken = parse_wcat(&lines.join("\n")).unwrap();
        let r = validate_window(&broken, 1_000_000);
        assert!(!r.is_valid());
    }
}
