use std::collections::HashSet;

use super::category::{MorId, ObjId};
use super::enumerate::{enumerate_cof_pairs, enumerate_cofiber_sequences, enumerate_we_of_cofseq, CofiberSeq};
use super::window::WaldhausenWindow;
use super::WindowError;
use crate::squad::{Expr1, SquadPresentation, Word0};

pub fn obj_generator(w: &WaldhausenWindow, a: ObjId) -> String {
    format!("obj:{}", w.cat.object_name(a))
}

pub fn we_generator(w: &WaldhausenWindow, f: MorId) -> String {
    format!("we:{}", w.cat.name(f))
}

pub fn cof_generator(w: &WaldhausenWindow, s: &CofiberSeq) -> String {
    format!("cof:{}/{}", w.cat.name(s.cof), w.cat.object_name(s.quotient))
}

/// A generated presentation with counts of the instances behind each
/// relation family.
#[derive(Clone, Debug)]
pub struct Presented {
    pub presentation: SquadPresentation,
    pub sequences: Vec<CofiberSeq>,
    pub notes: Vec<String>,
}

/// `-[target] + [source]`.
pub(crate) fn we_boundary(w: &WaldhausenWindow, a: ObjId, b: ObjId) -> Word0 {
    Word0::gen_inv(obj_generator(w, b)).then(&Word0::gen(obj_generator(w, a)))
}

/// `-[B] + [B/A] + [A]`.
pub(crate) fn cof_boundary(w: &WaldhausenWindow, s: &CofiberSeq) -> Word0 {
    Word0::gen_inv(obj_generator(w, s.total(w)))
        .then(&Word0::gen(obj_generator(w, s.quotient)))
        .then(&Word0::gen(obj_generator(w, s.sub(w))))
}

/// Cofiber generators with their boundaries, the relations shared by both
/// presentations (R5, R8, R9) and the object generators with R3.
pub(crate) struct Common {
    pub gens0: Vec<String>,
    pub rels0: Vec<Word0>,
    pub cof_gens: Vec<(String, Word0)>,
    pub rels1: Vec<Expr1>,
    pub notes: Vec<String>,
}

pub(crate) fn common_part(w: &WaldhausenWindow, seqs: &[CofiberSeq]) -> Result<Common, WindowError> {
    let c = &w.cat;
    let gens0 = (0..c.n_objects()).map(|a| obj_generator(w, a)).collect();
    let rels0 = vec![Word0::gen(obj_generator(w, w.zero))];
    let cof_gens = seqs.iter().map(|s| (cof_generator(w, s), cof_boundary(w, s))).collect();
    let g = |i: usize| Expr1::gen(cof_generator(w, &seqs[i]));
    let seq_of = |f: MorId| seqs.iter().position(|s| s.cof == f);
    let mut rels1 = Vec::new();
    let mut notes = Vec::new();

    // R5
    for a in 0..c.n_objects() {
        let id = seq_of(c.identity(a)).ok_or_else(|| WindowError::NotClosed(format!("cofiber of id_{}", c.object_name(a))))?;
        if seqs[id].quotient != w.zero {
            return Err(WindowError::Invalid(format!("cofiber of id_{} is not zero", c.object_name(a))));
        }
        rels1.push(g(id));
        if a != w.zero {
            let z = w.from_zero(a).ok_or_else(|| WindowError::NotClosed(format!("0 -> {}", c.object_name(a))))?;
            let zi = seq_of(z).ok_or_else(|| WindowError::NotClosed(format!("cofiber of 0 -> {}", c.object_name(a))))?;
            if seqs[zi].quotient != a || seqs[zi].projection != c.identity(a) {
                return Err(WindowError::Invalid(format!("cofiber of 0 -> {} is not the identity", c.object_name(a))));
            }
            rels1.push(g(zi));
        }
    }

    // R8
    let pairs = enumerate_cof_pairs(w, seqs);
    let mut seen = HashSet::new();
    for p in &pairs.pairs {
        let a = Word0::gen(obj_generator(w, seqs[p.f].sub(w)));
        let e = Expr1::sum(vec![g(p.g), g(p.f), Expr1::sum(vec![g(p.h), g(p.k).act(a)]).neg()]);
        if seen.insert(e.to_string()) {
            rels1.push(e);
        }
    }
    notes.push(format!(
        "R8: {} instances, {} pairs with a non-matching chosen cofiber dropped, {} pairs leaving the window",
        pairs.pairs.len(),
        pairs.incoherent,
        pairs.incomplete
    ));

    // R9, on recorded coproducts
    let mut n9 = 0;
    for (&(a, b), cp) in w.coproducts() {
        let s1 = seq_of(cp.i1).ok_or_else(|| WindowError::NotClosed(format!("cofiber of {}", c.name(cp.i1))))?;
        let s2 = seq_of(cp.i2).ok_or_else(|| WindowError::NotClosed(format!("cofiber of {}", c.name(cp.i2))))?;
        if seqs[s1].quotient != b || seqs[s1].projection != cp.p2 || seqs[s2].quotient != a || seqs[s2].projection != cp.p1 {
            return Err(WindowError::NotClosed(format!(
                "chosen cofibers of the coproduct {} {} are not its projections",
                c.object_name(a),
                c.object_name(b)
            )));
        }
        let bracket = Expr1::bracket(Word0::gen(obj_generator(w, a)), Word0::gen(obj_generator(w, b)));
        rels1.push(Expr1::sum(vec![bracket, Expr1::sum(vec![g(s2).neg(), g(s1)]).neg()]));
        n9 += 1;
    }
    notes.push(format!("R9: {n9} coproduct rows"));
    Ok(Common { gens0, rels0, cof_gens, rels1, notes })
}

/// The presentation `D*W`: generators `obj:A`, `we:f`, `cof:f/Q` and
/// relations R1 to R9 instantiated on every diagram of the window.
pub fn present_dstar(w: &WaldhausenWindow) -> Result<Presented, WindowError> {
    let c = &w.cat;
    let seqs = enumerate_cofiber_sequences(w)?;
    let common = common_part(w, &seqs)?;
    let mut gens1: Vec<(String, Word0)> = w
        .weak_equivalences()
        .map(|f| (we_generator(w, f), we_boundary(w, c.source(f), c.target(f))))
        .collect();
    gens1.extend(common.cof_gens);
    let we = |f: MorId| Expr1::gen(we_generator(w, f));
    let mut rels1 = Vec::new();

    // R4
    for a in 0..c.n_objects() {
        rels1.push(we(c.identity(a)));
    }
    rels1.extend(common.rels1);

    // R6
    let mut n6 = 0;
    for f in w.weak_equivalences().filter(|&f| !c.is_identity(f)) {
        for &g in c.out(c.target(f)) {
            if !w.is_weak_equivalence(g) || c.is_identity(g) {
                continue;
            }
            rels1.push(Expr1::sum(vec![we(c.comp(g, f)), we(f).neg(), we(g).neg()]));
            n6 += 1;
        }
    }

    // R7
    let cg = |i: usize| Expr1::gen(cof_generator(w, &seqs[i]));
    let ladders = enumerate_we_of_cofseq(w, &seqs);
    let mut n7 = 0;
    for l in ladders.iter().filter(|l| !l.is_identity(w)) {
        let a_obj = Word0::gen(obj_generator(w, seqs[l.source].sub(w)));
        let lhs = Expr1::sum(vec![we(l.a), we(l.c).act(a_obj)]);
        let rhs = Expr1::sum(vec![cg(l.target).neg(), we(l.b), cg(l.source)]);
        rels1.push(Expr1::sum(vec![lhs, rhs.neg()]));
        n7 += 1;
    }

    let mut notes = vec![format!("R6: {n6} composable pairs"), format!("R7: {n7} ladders")];
    notes.extend(common.notes);
    Ok(Presented {
        presentation: SquadPresentation { gens0: common.gens0, gens1, rels0: common.rels0, rels1 },
        sequences: seqs,
        notes,
    })
}
