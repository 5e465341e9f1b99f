use std::collections::HashMap;

use super::category::{MorId, ObjId};
use super::window::WaldhausenWindow;
use super::WindowError;

/// A chosen cofiber sequence `A ↣ B ↠ B/A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CofiberSeq {
    pub cof: MorId,
    pub quotient: ObjId,
    pub projection: MorId,
}

impl CofiberSeq {
    pub fn sub(&self, w: &WaldhausenWindow) -> ObjId {
        w.cat.source(self.cof)
    }

    pub fn total(&self, w: &WaldhausenWindow) -> ObjId {
        w.cat.target(self.cof)
    }
}

/// The recorded pushout of `cof` along `A → 0`.
pub fn cofiber_of(w: &WaldhausenWindow, cof: MorId) -> Result<CofiberSeq, WindowError> {
    let a = w.cat.source(cof);
    let missing = || WindowError::MissingPushout(format!("{} along {} -> 0", w.cat.name(cof), w.cat.object_name(a)));
    if !w.is_cofibration(cof) {
        return Err(WindowError::Invalid(format!("{} is not a cofibration", w.cat.name(cof))));
    }
    let t = w.to_zero(a).ok_or_else(missing)?;
    let p = w.pushout(cof, t).ok_or_else(missing)?;
    Ok(CofiberSeq { cof, quotient: p.object, projection: p.leg_b })
}

/// One cofiber sequence per cofibration, in morphism order.
pub fn enumerate_cofiber_sequences(w: &WaldhausenWindow) -> Result<Vec<CofiberSeq>, WindowError> {
    w.cofibrations().map(|f| cofiber_of(w, f)).collect()
}

/// Levelwise weak equivalence `(a, b, c)` from `seqs[source]` to `seqs[target]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeOfCofSeq {
    pub source: usize,
    pub target: usize,
    pub a: MorId,
    pub b: MorId,
    pub c: MorId,
}

impl WeOfCofSeq {
    pub fn is_identity(&self, w: &WaldhausenWindow) -> bool {
        self.source == self.target && [self.a, self.b, self.c].iter().all(|&m| w.cat.is_identity(m))
    }
}

/// All commuting ladders of weak equivalences between the given sequences.
pub fn enumerate_we_of_cofseq(w: &WaldhausenWindow, seqs: &[CofiberSeq]) -> Vec<WeOfCofSeq> {
    let c = &w.cat;
    let mut by_sub: HashMap<ObjId, Vec<usize>> = HashMap::new();
    for (i, s) in seqs.iter().enumerate() {
        by_sub.entry(s.sub(w)).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, s) in seqs.iter().enumerate() {
        let (a0, b0) = (s.sub(w), s.total(w));
        for &a in c.out(a0) {
            if !w.is_weak_equivalence(a) {
                continue;
            }
            let Some(targets) = by_sub.get(&c.target(a)) else { continue };
            let fa = |t: &CofiberSeq| c.comp(t.cof, a);
            for &j in targets {
                let t = &seqs[j];
                let lhs = fa(t);
                for b in w.we_hom(b0, t.total(w)) {
                    if c.comp(b, s.cof) != lhs {
                        continue;
                    }
                    let qb = c.comp(t.projection, b);
                    for m in w.we_hom(s.quotient, t.quotient) {
                        if c.comp(m, s.projection) == qb {
                            out.push(WeOfCofSeq { source: i, target: j, a, b, c: m });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Composable cofibrations `f: A ↣ B`, `g: B ↣ C` together with the four
/// cofiber sequences of the pair, given as indices into the sequence list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CofPair {
    pub f: usize,
    pub g: usize,
    pub h: usize,
    /// Cofiber sequence of the induced `k: B/A ↣ C/A`.
    pub k: usize,
    /// Comparison `C/A ↠ C/B`.
    pub r: MorId,
}

#[derive(Clone, Debug, Default)]
pub struct CofPairs {
    pub pairs: Vec<CofPair>,
    /// Pairs whose induced map exists but whose chosen cofiber differs from
    /// `(C/B, r)`.
    pub incoherent: usize,
    /// Pairs for which the induced map or the comparison is outside the window.
    pub incomplete: usize,
}

pub fn enumerate_cof_pairs(w: &WaldhausenWindow, seqs: &[CofiberSeq]) -> CofPairs {
    let c = &w.cat;
    let index: HashMap<MorId, usize> = seqs.iter().enumerate().map(|(i, s)| (s.cof, i)).collect();
    let mut res = CofPairs::default();
    for (fi, sf) in seqs.iter().enumerate() {
        for (gi, sg) in seqs.iter().enumerate() {
            if sg.sub(w) != sf.total(w) {
                continue;
            }
            let h = c.comp(sg.cof, sf.cof);
            let Some(&hi) = index.get(&h) else {
                res.incomplete += 1;
                continue;
            };
            let sh = &seqs[hi];
            let want_k = c.comp(sh.projection, sg.cof);
            let k = c.hom(sf.quotient, sh.quotient).iter().copied().find(|&k| c.comp(k, sf.projection) == want_k);
            let r = c
                .hom(sh.quotient, sg.quotient)
                .iter()
                .copied()
                .find(|&r| c.comp(r, sh.projection) == sg.projection);
            let (Some(k), Some(r)) = (k, r) else {
                res.incomplete += 1;
                continue;
            };
            match index.get(&k) {
                Some(&ki) if seqs[ki].quotient == sg.quotient && seqs[ki].projection == r => {
                    res.pairs.push(CofPair { f: fi, g: gi, h: hi, k: ki, r });
                }
                Some(_) => res.incoherent += 1,
                None => res.incomplete += 1,
            }
        }
    }
    res
}
