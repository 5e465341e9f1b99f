//! Text format for windows.
//!
//! ```text
//! [objects]
//! 0 A
//! [zero]
//! 0
//! [morphisms]
//! z: 0 -> A
//! t: A -> 0
//! [compose]
//! t.z = id_0
//! [cofibrations]
//! z
//! [weak_equivalences]
//! [pushout]
//! z along id_0 = (A, id_A, z)
//! [coproduct]
//! A 0 = (A, id_A, z, id_A, t)
//! [cylinder]
//! 0 = (0, id_0, id_0, id_0)
//! ```
//!
//! Identities `id_<object>` exist implicitly, as do composites with them.
//! Everything after `#` on a line is ignored.

use std::fmt::Write as _;

use super::category::{CategoryBuilder, MorId, ObjId};
use super::window::{Coproduct, Cylinder, Pushout, WaldhausenWindow};
use super::WindowError;

pub fn is_window_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_'*@~".contains(c))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objects,
    Zero,
    Morphisms,
    Compose,
    Cofibrations,
    WeakEquivalences,
    Pushout,
    Coproduct,
    Cylinder,
}

fn perr(line: usize, msg: impl Into<String>) -> WindowError {
    WindowError::Parse { line, msg: msg.into() }
}

/// Splits `(a, b, c)` into its trimmed components.
fn tuple(s: &str, n: usize, line: usize) -> Result<Vec<String>, WindowError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| perr(line, "expected a parenthesised tuple"))?;
    let parts: Vec<String> = inner.split(',').map(|p| p.trim().to_string()).collect();
    if parts.len() != n {
        return Err(perr(line, format!("expected {n} entries, found {}", parts.len())));
    }
    Ok(parts)
}

struct Pending {
    line: usize,
    kind: Section,
    text: String,
}

pub fn parse_wcat(text: &str) -> Result<WaldhausenWindow, WindowError> {
    let mut b = CategoryBuilder::new();
    let mut zero: Option<(usize, String)> = None;
    let mut later: Vec<Pending> = Vec::new();
    let mut section = Section::None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if s.starts_with('[') {
            section = match s {
                "[objects]" => Section::Objects,
                "[zero]" => Section::Zero,
                "[morphisms]" => Section::Morphisms,
                "[compose]" => Section::Compose,
                "[cofibrations]" => Section::Cofibrations,
                "[weak_equivalences]" => Section::WeakEquivalences,
                "[pushout]" => Section::Pushout,
                "[coproduct]" => Section::Coproduct,
                "[cylinder]" => Section::Cylinder,
                _ => return Err(perr(line, format!("unknown section {s}"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(perr(line, "entry before any section header")),
            Section::Objects => {
                for name in s.split_whitespace() {
                    if !is_window_name(name) {
                        return Err(perr(line, format!("invalid object name '{name}'")));
                    }
                    b.add_object(name).map_err(|e| perr(line, e.to_string()))?;
                }
            }
            Section::Zero => {
                if zero.is_some() {
                    return Err(perr(line, "zero object given twice"));
                }
                zero = Some((line, s.to_string()));
            }
            Section::Morphisms => {
                let (name, rest) = s.split_once(':').ok_or_else(|| perr(line, "expected 'name: A -> B'"))?;
                let (src, tgt) = rest.split_once("->").ok_or_else(|| perr(line, "expected 'name: A -> B'"))?;
                let name = name.trim();
                if !is_window_name(name) {
                    return Err(perr(line, format!("invalid morphism name '{name}'")));
                }
                let src = b.object(src.trim()).ok_or_else(|| perr(line, format!("unknown object '{}'", src.trim())))?;
                let tgt = b.object(tgt.trim()).ok_or_else(|| perr(line, format!("unknown object '{}'", tgt.trim())))?;
                b.add_morphism(name, src, tgt).map_err(|e| perr(line, e.to_string()))?;
            }
            kind => later.push(Pending { line, kind, text: s.to_string() }),
        }
    }
    let mor = |b: &CategoryBuilder, name: &str, line: usize| -> Result<MorId, WindowError> {
        b.morphism(name).ok_or_else(|| perr(line, format!("unknown morphism '{name}'")))
    };
    let obj = |b: &CategoryBuilder, name: &str, line: usize| -> Result<ObjId, WindowError> {
        b.object(name).ok_or_else(|| perr(line, format!("unknown object '{name}'")))
    };
    for p in later.iter().filter(|p| p.kind == Section::Compose) {
        let (lhs, h) = p.text.split_once('=').ok_or_else(|| perr(p.line, "expected 'g.f = h'"))?;
        let (g, f) = lhs.split_once('.').ok_or_else(|| perr(p.line, "expected 'g.f = h'"))?;
        let (g, f, h) = (mor(&b, g.trim(), p.line)?, mor(&b, f.trim(), p.line)?, mor(&b, h.trim(), p.line)?);
        b.set_composite(g, f, h).map_err(|e| perr(p.line, e.to_string()))?;
    }
    let (zline, zname) = zero.ok_or_else(|| perr(0, "missing [zero] section"))?;
    let z = obj(&b, &zname, zline)?;
    let mut cofs = Vec::new();
    let mut wes = Vec::new();
    for p in &later {
        match p.kind {
            Section::Cofibrations => {
                for n in p.text.split_whitespace() {
                    cofs.push(mor(&b, n, p.line)?);
                }
            }
            Section::WeakEquivalences => {
                for n in p.text.split_whitespace() {
                    wes.push(mor(&b, n, p.line)?);
                }
            }
            _ => {}
        }
    }
    // structured rows are resolved against the finished category below
    let mut rows = Vec::new();
    for p in &later {
        match p.kind {
            Section::Pushout => {
                let (lhs, rhs) = p.text.split_once('=').ok_or_else(|| perr(p.line, "expected 'f along g = (P, l1, l2)'"))?;
                let (f, g) = lhs.split_once(" along ").ok_or_else(|| perr(p.line, "expected 'f along g'"))?;
                let t = tuple(rhs, 3, p.line)?;
                let row = Pushout { object: obj(&b, &t[0], p.line)?, leg_b: mor(&b, &t[1], p.line)?, leg_x: mor(&b, &t[2], p.line)? };
                rows.push((p.line, Row::Pushout(mor(&b, f.trim(), p.line)?, mor(&b, g.trim(), p.line)?, row)));
            }
            Section::Coproduct => {
                let (lhs, rhs) = p.text.split_once('=').ok_or_else(|| perr(p.line, "expected 'A B = (C, i1, i2, p1, p2)'"))?;
                let names: Vec<&str> = lhs.split_whitespace().collect();
                if names.len() != 2 {
                    return Err(perr(p.line, "expected two objects before '='"));
                }
                let t = tuple(rhs, 5, p.line)?;
                let row = Coproduct {
                    object: obj(&b, &t[0], p.line)?,
                    i1: mor(&b, &t[1], p.line)?,
                    i2: mor(&b, &t[2], p.line)?,
                    p1: mor(&b, &t[3], p.line)?,
                    p2: mor(&b, &t[4], p.line)?,
                };
                rows.push((p.line, Row::Coproduct(obj(&b, names[0], p.line)?, obj(&b, names[1], p.line)?, row)));
            }
            Section::Cylinder => {
                let (lhs, rhs) = p.text.split_once('=').ok_or_else(|| perr(p.line, "expected 'A = (IA, i0, i1, p)'"))?;
                let t = tuple(rhs, 4, p.line)?;
                let row = Cylinder {
                    object: obj(&b, &t[0], p.line)?,
                    i0: mor(&b, &t[1], p.line)?,
                    i1: mor(&b, &t[2], p.line)?,
                    p: mor(&b, &t[3], p.line)?,
                };
                rows.push((p.line, Row::Cylinder(obj(&b, lhs.trim(), p.line)?, row)));
            }
            _ => {}
        }
    }
    let mut w = WaldhausenWindow::new(b.build(), z, &cofs, &wes);
    for (line, row) in rows {
        let r = match row {
            Row::Pushout(f, g, r) => w.add_pushout(f, g, r),
            Row::Coproduct(a, c, r) => w.add_coproduct(a, c, r),
            Row::Cylinder(a, r) => w.add_cylinder(a, r),
        };
        r.map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(w)
}

enum Row {
    Pushout(MorId, MorId, Pushout),
    Coproduct(ObjId, ObjId, Coproduct),
    Cylinder(ObjId, Cylinder),
}

/// Canonical text form; `parse_wcat(&write_wcat(w))` reproduces `w`.
pub fn write_wcat(w: &WaldhausenWindow) -> String {
    let c = &w.cat;
    let mut out = String::new();
    out.push_str("[objects]\n");
    for o in c.objects() {
        let _ = writeln!(out, "{o}");
    }
    let _ = writeln!(out, "[zero]\n{}", c.object_name(w.zero));
    out.push_str("[morphisms]\n");
    for (i, m) in c.morphisms().iter().enumerate() {
        if !c.is_identity(i) {
            let _ = writeln!(out, "{}: {} -> {}", m.name, c.object_name(m.source), c.object_name(m.target));
        }
    }
    out.push_str("[compose]\n");
    for f in 0..c.n_morphisms() {
        if c.is_identity(f) {
            continue;
        }
        for &g in c.out(c.target(f)) {
            if c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.compose(g, f) {
                let _ = writeln!(out, "{}.{} = {}", c.name(g), c.name(f), c.name(h));
            }
        }
    }
    out.push_str("[cofibrations]\n");
    for f in w.cofibrations().filter(|&f| !c.is_identity(f)) {
        let _ = writeln!(out, "{}", c.name(f));
    }
    out.push_str("[weak_equivalences]\n");
    for f in w.weak_equivalences().filter(|&f| !c.is_identity(f)) {
        let _ = writeln!(out, "{}", c.name(f));
    }
    out.push_str("[pushout]\n");
    for (&(f, g), r) in w.pushouts() {
        let _ = writeln!(
            out,
            "{} along {} = ({}, {}, {})",
            c.name(f),
            c.name(g),
            c.object_name(r.object),
            c.name(r.leg_b),
            c.name(r.leg_x)
        );
    }
    out.push_str("[coproduct]\n");
    for (&(a, b), r) in w.coproducts() {
        let _ = writeln!(
            out,
            "{} {} = ({}, {}, {}, {}, {})",
            c.object_name(a),
            c.object_name(b),
            c.object_name(r.object),
            c.name(r.i1),
            c.name(r.i2),
            c.name(r.p1),
            c.name(r.p2)
        );
    }
    out.push_str("[cylinder]\n");
    for (&a, r) in w.cylinders() {
        let _ = writeln!(
            out,
            "{} = ({}, {}, {}, {})",
            c.object_name(a),
            c.object_name(r.object),
            c.name(r.i0),
            c.name(r.i1),
            c.name(r.p)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waldhausen::{pointed_sets_window, validate_window};

    #[test]
    fn round_trip_is_exact() {
        for n in 1..=3 {
            let w = pointed_sets_window(n).unwrap();
            let text = write_wcat(&w);
            let back = parse_wcat(&text).unwrap();
            assert_eq!(write_wcat(&back), text);
            assert_eq!(back.cat.n_morphisms(), w.cat.n_morphisms());
            assert!(validate_window(&back, 1_000_000).is_valid());
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("[objects]\n0\n[bogus]\n", 3),
            ("0\n", 1),
            ("[objects]\n0 A\n[morphisms]\nf: A => 0\n", 4),
            ("[objects]\n0\n[zero]\n0\n[coproduct]\n0 0 = (0, id_0)\n", 6),
            ("[objects]\n0 0\n", 2),
        ];
        for (text, line) in cases {
            match parse_wcat(text) {
                Err(WindowError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_are_ignored() {
        let w = pointed_sets_window(2).unwrap();
        let text = format!("# generated\n{}", write_wcat(&w).replace('\n', "  # note\n"));
        assert_eq!(write_wcat(&parse_wcat(&text).unwrap()), write_wcat(&w));
    }
}
