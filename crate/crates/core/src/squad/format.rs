//! Text format for presentations.
//!
//! ```text
//! # free squad on one generator
//! gens0:
//!   e
//! gens1:
//!   x := +e -e
//! rels0:
//! rels1:
//!   x - <+e | +e>
//! ```
//!
//! Words are sequences of signed letters `+name` / `-name` (a missing sign
//! means `+`), with `0` for the empty word. Degree-1 expressions are sums of
//! terms joined by `+` / `-`; a term is a generator name, a bracket
//! `<w | w>`, a parenthesised expression, an action `(expr)^{w}` or `0`.
//! Lines whose first visible character is `#` are comments.

use super::expr::{Expr1, Letter, SquadPresentation, Word0};
use super::SquadError;

/// Characters allowed in generator names besides ASCII alphanumerics.
const NAME_EXTRA: &[char] = &['_', ':', '.', '/', '#', '@', '\'', '*', '~'];

pub fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || NAME_EXTRA.contains(&c)
}

pub fn is_valid_name(s: &str) -> bool {
    !s.is_empty() && s != "0" && s.chars().all(is_name_char)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Sym(char),
}

fn lex(text: &str, line: usize) -> Result<Vec<Tok>, SquadError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if "+-|<>(){}^".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(SquadError::Parse { line, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SquadError> {
        Err(SquadError::Parse { line: self.line, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect(&mut self, c: char) -> Result<(), SquadError> {
        if self.peek_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Word up to (not including) one of the `stop` symbols or the end.
    fn word(&mut self, stop: &[char]) -> Result<Word0, SquadError> {
        if let Some(Tok::Name(n)) = self.peek() {
            if n == "0" {
                self.pos += 1;
                return Ok(Word0::empty());
            }
        }
        let mut letters = Vec::new();
        loop {
            match self.peek().cloned() {
                None => break,
                Some(Tok::Sym(c)) if stop.contains(&c) => break,
                Some(Tok::Sym(c @ ('+' | '-'))) => {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Name(n)) if n != "0" => {
                            self.pos += 1;
                            letters.push(Letter { name: n, inverse: c == '-' });
                        }
                        _ => return self.err("expected a generator after sign"),
                    }
                }
                Some(Tok::Name(n)) if n != "0" => {
                    self.pos += 1;
                    letters.push(Letter { name: n, inverse: false });
                }
                Some(t) => return self.err(format!("unexpected {t:?} in word")),
            }
        }
        if letters.is_empty() {
            return self.err("empty word (write 0)");
        }
        Ok(Word0(letters))
    }

    fn expr(&mut self) -> Result<Expr1, SquadError> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek_sym('-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            terms.push(if negate { t.neg() } else { t });
            if self.peek_sym('+') {
                self.pos += 1;
                negate = false;
            } else if self.peek_sym('-') {
                self.pos += 1;
                negate = true;
            } else {
                break;
            }
        }
        Ok(Expr1::sum(terms))
    }

    fn term(&mut self) -> Result<Expr1, SquadError> {
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(if n == "0" { Expr1::Zero } else { Expr1::Gen(n) })
            }
            Some(Tok::Sym('<')) => {
                self.pos += 1;
                let a = self.word(&['|'])?;
                self.expect('|')?;
                let b = self.word(&['>'])?;
                self.expect('>')?;
                Ok(Expr1::Bracket(a, b))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                if self.peek_sym('^') {
                    self.pos += 1;
                    let w = if self.peek_sym('{') {
                        self.pos += 1;
                        let w = self.word(&['}'])?;
                        self.expect('}')?;
                        w
                    } else {
                        self.single_letter()?
                    };
                    Ok(inner.act(w))
                } else {
                    Ok(inner)
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn single_letter(&mut self) -> Result<Word0, SquadError> {
        let inverse = if self.peek_sym('-') {
            self.pos += 1;
            true
        } else {
            if self.peek_sym('+') {
                self.pos += 1;
            }
            false
        };
        match self.peek().cloned() {
            Some(Tok::Name(n)) if n != "0" => {
                self.pos += 1;
                Ok(Word0(vec![Letter { name: n, inverse }]))
            }
            _ => self.err("expected an exponent"),
        }
    }
}

pub fn parse_word(text: &str) -> Result<Word0, SquadError> {
    parse_word_at(text, 1)
}

fn parse_word_at(text: &str, line: usize) -> Result<Word0, SquadError> {
    let mut p = Parser { toks: lex(text, line)?, pos: 0, line };
    let w = p.word(&[])?;
    if !p.at_end() {
        return p.err("trailing input after word");
    }
    Ok(w)
}

pub fn parse_expr(text: &str) -> Result<Expr1, SquadError> {
    parse_expr_at(text, 1)
}

fn parse_expr_at(text: &str, line: usize) -> Result<Expr1, SquadError> {
    let mut p = Parser { toks: lex(text, line)?, pos: 0, line };
    let e = p.expr()?;
    if !p.at_end() {
        return p.err("trailing input after expression");
    }
    Ok(e)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Gens0,
    Gens1,
    Rels0,
    Rels1,
}

pub fn parse_sqpres(text: &str) -> Result<SquadPresentation, SquadError> {
    let mut p = SquadPresentation::default();
    let mut section = Section::None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let next = match s {
            "gens0:" => Some(Section::Gens0),
            "gens1:" => Some(Section::Gens1),
            "rels0:" => Some(Section::Rels0),
            "rels1:" => Some(Section::Rels1),
            _ => None,
        };
        if let Some(n) = next {
            section = n;
            continue;
        }
        match section {
            Section::None => return Err(SquadError::Parse { line, msg: "entry before any section header".into() }),
            Section::Gens0 => {
                if !is_valid_name(s) {
                    return Err(SquadError::Parse { line, msg: format!("invalid generator name '{s}'") });
                }
                p.gens0.push(s.to_string());
            }
            Section::Gens1 => {
                let Some((name, bd)) = s.split_once(":=") else {
                    return Err(SquadError::Parse { line, msg: "expected 'name := boundary'".into() });
                };
                let name = name.trim();
                if !is_valid_name(name) {
                    return Err(SquadError::Parse { line, msg: format!("invalid generator name '{name}'") });
                }
                p.gens1.push((name.to_string(), parse_word_at(bd, line)?));
            }
            Section::Rels0 => p.rels0.push(parse_word_at(s, line)?),
            Section::Rels1 => p.rels1.push(parse_expr_at(s, line)?),
        }
    }
    Ok(p)
}

pub fn write_sqpres(p: &SquadPresentation) -> String {
    let mut out = String::from("gens0:\n");
    for g in &p.gens0 {
        out.push_str(&format!("  {g}\n"));
    }
    out.push_str("gens1:\n");
    for (g, b) in &p.gens1 {
        out.push_str(&format!("  {g} := {b}\n"));
    }
    out.push_str("rels0:\n");
    for r in &p.rels0 {
        out.push_str(&format!("  {r}\n"));
    }
    out.push_str("rels1:\n");
    for r in &p.rels1 {
        out.push_str(&format!("  {r}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_round_trip() {
        for s in [
            "we:gf - we:f - we:g",
            "-x + (y)^{+obj:A -obj:B} - <+a | -b +c>",
            "0",
            "-(-x)",
            "a - (b + c)",
            "(x - y)^{0}",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn exponent_shorthand() {
        assert_eq!(parse_expr("(x)^a").unwrap(), Expr1::gen("x").act(Word0::gen("a")));
        assert_eq!(parse_expr("(x)^-a").unwrap(), Expr1::gen("x").act(Word0::gen_inv("a")));
    }

    #[test]
    fn presentation_round_trip() {
        let text = "gens0:\n  a\n  b\ngens1:\n  x := -a +b\n  y := 0\nrels0:\n  +a +a\nrels1:\n  x + y - <+a | +b>\n";
        let p = parse_sqpres(text).unwrap();
        assert_eq!(p.gens1[1].1, Word0::empty());
        assert_eq!(write_sqpres(&p), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_sqpres("gens0:\n  a\nrels1:\n  x + (y\n").unwrap_err();
        assert!(matches!(err, SquadError::Parse { line: 4, .. }));
        assert!(parse_sqpres("  a\n").is_err());
        assert!(parse_sqpres("gens0:\n  a-b\n").is_err());
    }
}
