//! Finite pointed sets of bounded cardinality, with injections as
//! cofibrations and bijections as weak equivalences.

use std::collections::HashMap;

use super::category::{CategoryBuilder, MorId, ObjId};
use super::window::{Coproduct, Cylinder, Pushout, WaldhausenWindow};
use super::WindowError;

/// A pointed map `S_m → S_n`; `images[i]` is the image of point `i + 1`,
/// with `0` the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PMap {
    m: usize,
    n: usize,
    images: Vec<usize>,
}

impl PMap {
    fn apply(&self, x: usize) -> usize {
        if x == 0 {
            0
        } else {
            self.images[x - 1]
        }
    }

    fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    fn is_bijective(&self) -> bool {
        self.m == self.n && self.is_injective()
    }

    fn from_fn(m: usize, n: usize, f: impl Fn(usize) -> usize) -> PMap {
        PMap { m, n, images: (1..m).map(f).collect() }
    }
}

/// All pointed sets `S1, …, S<max_card>` (`S_k` has `k` points including the
/// basepoint) and all pointed maps between them. `S1` is the zero object.
/// Pushouts and coproducts are recorded whenever they fit; only the zero
/// object has a cylinder, since no bijection folds `A ∨ A` onto `A`.
pub fn pointed_sets_window(max_card: usize) -> Result<WaldhausenWindow, WindowError> {
    if !(1..=4).contains(&max_card) {
        return Err(WindowError::TooLarge(format!("pointed sets of cardinality up to {max_card}")));
    }
    let mut b = CategoryBuilder::new();
    let objs: Vec<ObjId> = (1..=max_card).map(|k| b.add_object(&format!("S{k}"))).collect::<Result<_, _>>()?;
    let obj = |k: usize| objs[k - 1];
    let mut maps: Vec<PMap> = Vec::new();
    let mut ids: HashMap<PMap, MorId> = HashMap::new();
    for m in 1..=max_card {
        for n in 1..=max_card {
            let count = n.pow((m - 1) as u32);
            for code in 0..count {
                let mut c = code;
                let images: Vec<usize> = (1..m)
                    .map(|_| {
                        let d = c % n;
                        c /= n;
                        d
                    })
                    .collect();
                let pm = PMap { m, n, images };
                let id = if m == n && pm.images.iter().enumerate().all(|(i, &y)| y == i + 1) {
                    b.morphism(&format!("id_S{m}")).expect("identity exists")
                } else {
                    let digits: String = pm.images.iter().map(|d| d.to_string()).collect();
                    b.add_morphism(&format!("p{m}{n}_{digits}"), obj(m), obj(n))?
                };
                maps.push(pm.clone());
                ids.insert(pm, id);
            }
        }
    }
    let by_id: HashMap<MorId, PMap> = ids.iter().map(|(p, &i)| (i, p.clone())).collect();
    let lookup = |p: &PMap| ids[p];
    for f in &maps {
        for g in maps.iter().filter(|g| g.m == f.n) {
            let h = PMap::from_fn(f.m, g.n, |x| g.apply(f.apply(x)));
            b.set_composite(lookup(g), lookup(f), lookup(&h))?;
        }
    }
    let cat = b.build();
    let cofs: Vec<MorId> = maps.iter().filter(|p| p.is_injective()).map(lookup).collect();
    let wes: Vec<MorId> = maps.iter().filter(|p| p.is_bijective()).map(lookup).collect();
    let mut w = WaldhausenWindow::new(cat, obj(1), &cofs, &wes);

    // P = X ⊔ (B \ f(A)), with the points of X first
    for &f in &cofs {
        let pf = &by_id[&f];
        for g in maps.iter().filter(|g| g.m == pf.m) {
            let card = g.n + pf.n - pf.m;
            if card > max_card {
                continue;
            }
            let mut fresh = HashMap::new();
            for y in 1..pf.n {
                if !pf.images.contains(&y) {
                    let next = g.n + fresh.len();
                    fresh.insert(y, next);
                }
            }
            let inv: HashMap<usize, usize> = (1..pf.m).map(|x| (pf.apply(x), x)).collect();
            let leg_b = PMap::from_fn(pf.n, card, |y| match inv.get(&y) {
                Some(&x) => g.apply(x),
                None => fresh[&y],
            });
            let leg_x = PMap::from_fn(g.n, card, |x| x);
            w.add_pushout(f, lookup(g), Pushout { object: obj(card), leg_b: lookup(&leg_b), leg_x: lookup(&leg_x) })?;
        }
    }

    for a in 1..=max_card {
        for c in 1..=max_card {
            let s = a + c - 1;
            if s > max_card {
                continue;
            }
            let i1 = PMap::from_fn(a, s, |x| x);
            let i2 = PMap::from_fn(c, s, |x| x + a - 1);
            let p1 = PMap::from_fn(s, a, |x| if x < a { x } else { 0 });
            let p2 = PMap::from_fn(s, c, |x| if x < a { 0 } else { x + 1 - a });
            let row = Coproduct { object: obj(s), i1: lookup(&i1), i2: lookup(&i2), p1: lookup(&p1), p2: lookup(&p2) };
            w.add_coproduct(obj(a), obj(c), row)?;
        }
    }
    let z = w.cat.identity(obj(1));
    w.add_cylinder(obj(1), Cylinder { object: obj(1), i0: z, i1: z, p: z })?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::{present_dstar, validate_window};
    use crate::squad::Squad;

    #[test]
    fn sizes_and_validity() {
        let w = pointed_sets_window(3).unwrap();
        assert_eq!(w.cat.n_objects(), 3);
        assert_eq!(w.cat.n_morphisms(), 3 + 6 + 14);
        // injections: 0 -> S_k, S2 -> S2, S2 -> S3 (two), automorphisms of S3
        assert_eq!(w.cofibrations().count(), 3 + 1 + 2 + 2);
        assert_eq!(w.weak_equivalences().count(), 1 + 1 + 2);
        let r = validate_window(&w, 1_000_000);
        assert!(r.is_valid(), "{r:?}");
    }

    #[test]
    fn pi0_is_integers() {
        let w = pointed_sets_window(3).unwrap();
        let p = present_dstar(&w).unwrap();
        let sq = Squad::new(p.presentation).unwrap();
        assert_eq!(sq.pi0().invariant_factors().to_string(), "Z");
    }
}
