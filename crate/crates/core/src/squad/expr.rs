use std::fmt;

/// Dimension tag of a generator symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Zero,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym {
    pub dim: Dim,
    pub name: String,
}

impl GenSym {
    pub fn new(dim: Dim, name: impl Into<String>) -> Self {
        GenSym { dim, name: name.into() }
    }
}

/// One letter `g` or `g⁻¹` of a free-group word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub inverse: bool,
}

/// Word in the degree-0 generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word0(pub Vec<Letter>);

impl Word0 {
    pub fn empty() -> Self {
        Word0(Vec::new())
    }

    pub fn gen(name: impl Into<String>) -> Self {
        Word0(vec![Letter { name: name.into(), inverse: false }])
    }

    pub fn gen_inv(name: impl Into<String>) -> Self {
        Word0(vec![Letter { name: name.into(), inverse: true }])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Concatenation `self · other`.
    pub fn then(mut self, other: &Word0) -> Self {
        self.0.extend(other.0.iter().cloned());
        self
    }

    pub fn inverse(&self) -> Self {
        Word0(self.0.iter().rev().map(|l| Letter { name: l.name.clone(), inverse: !l.inverse }).collect())
    }
}

impl fmt::Display for Word0 {
    /// `+a -b +c`, or `0` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if l.inverse { '-' } else { '+' }, l.name)?;
        }
        Ok(())
    }
}

/// Expression denoting an element of `C₁`, written additively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr1 {
    Zero,
    Gen(String),
    /// `⟨w, w′⟩`.
    Bracket(Word0, Word0),
    /// `x^w = x + ⟨w, ∂x⟩`.
    Act(Box<Expr1>, Word0),
    Neg(Box<Expr1>),
    /// Ordered sum, evaluated left to right.
    Sum(Vec<Expr1>),
}

impl Expr1 {
    pub fn gen(name: impl Into<String>) -> Self {
        Expr1::Gen(name.into())
    }

    pub fn bracket(a: Word0, b: Word0) -> Self {
        Expr1::Bracket(a, b)
    }

    pub fn act(self, w: Word0) -> Self {
        Expr1::Act(Box::new(self), w)
    }

    pub fn neg(self) -> Self {
        Expr1::Neg(Box::new(self))
    }

    /// Sum with the trivial cases collapsed so printing and parsing agree.
    pub fn sum(mut terms: Vec<Expr1>) -> Self {
        match terms.len() {
            0 => Expr1::Zero,
            1 => terms.pop().expect("one term"),
            _ => Expr1::Sum(terms),
        }
    }

    fn fmt_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr1::Zero => write!(f, "0"),
            Expr1::Gen(n) => write!(f, "{n}"),
            Expr1::Bracket(a, b) => write!(f, "<{a} | {b}>"),
            Expr1::Act(x, w) => write!(f, "({x})^{{{w}}}"),
            Expr1::Neg(_) | Expr1::Sum(_) => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Expr1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr1::Neg(x) => {
                write!(f, "-")?;
                x.fmt_term(f)
            }
            Expr1::Sum(terms) if !terms.is_empty() => {
                for (i, t) in terms.iter().enumerate() {
                    match (i, t) {
                        (0, Expr1::Neg(x)) => {
                            write!(f, "-")?;
                            x.fmt_term(f)?;
                        }
                        (0, t) => t.fmt_term(f)?,
                        (_, Expr1::Neg(x)) => {
                            write!(f, " - ")?;
                            x.fmt_term(f)?;
                        }
                        (_, t) => {
                            write!(f, " + ")?;
                            t.fmt_term(f)?;
                        }
                    }
                }
                Ok(())
            }
            Expr1::Sum(_) => write!(f, "0"),
            other => other.fmt_term(f),
        }
    }
}

/// Generators and relations of a stable quadratic module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquadPresentation {
    pub gens0: Vec<String>,
    /// Degree-1 generators with their prescribed boundaries.
    pub gens1: Vec<(String, Word0)>,
    pub rels0: Vec<Word0>,
    /// Each expression is asserted to vanish.
    pub rels1: Vec<Expr1>,
}

impl SquadPresentation {
    pub fn generators(&self) -> impl Iterator<Item = GenSym> + '_ {
        self.gens0
            .iter()
            .map(|n| GenSym::new(Dim::Zero, n.clone()))
            .chain(self.gens1.iter().map(|(n, _)| GenSym::new(Dim::One, n.clone())))
    }
}
