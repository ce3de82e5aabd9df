//! A closed, typed term language over the primitive operations.
//!
//! Terms denote functions between finite objects. They are type checked
//! against a signature ([`type_of`]), evaluated pointwise ([`eval`]) and
//! compared by exhaustive enumeration of their domain ([`equiv`]).

mod eval;
mod obj;
mod parse;
mod print;
mod typing;

use crate::signature::{Elem, ExcVal, FamilySignature, Ix, State};

pub use eval::{equiv, eval, TermFn, Verdict};
pub use obj::{Obj, Spelling, ENUMERATION_LIMIT};
pub use parse::{parse, parse_obj};
pub use typing::{type_of, Arrow};

/// Overrides how carrier elements are printed.
pub type Labeler<'a> = Option<&'a dyn Fn(Ix, Elem) -> String>;

/// An element of some object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Elem(Elem),
    State(State),
    Exc(ExcVal),
    Pair(Box<Value>, Box<Value>),
    Inl(Box<Value>),
    Inr(Box<Value>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    /// The left injection into `y + exc`.
    pub fn normal(v: Value) -> Value {
        Value::Inl(Box::new(v))
    }

    /// The right injection of an exception into `y + exc`.
    pub fn exceptional(e: ExcVal) -> Value {
        Value::Inr(Box::new(Value::Exc(e)))
    }

    pub fn as_exceptional(&self) -> Option<ExcVal> {
        match self {
            Value::Inr(e) => match **e {
                Value::Exc(e) => Some(e),
                _ => None,
            },
            _ => None,
        }
    }

    /// Renders without type information.
    pub fn render(&self, sig: &FamilySignature, label: Labeler<'_>) -> String {
        obj::render_untyped(sig, self, label)
    }
}

/// Terms. `Compose(after, before)` is `after ∘ before`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Id(Obj),
    Compose(Box<Term>, Box<Term>),
    Lookup(String),
    Update(String),
    Constructor(String),
    Recovery(String),
    Raise(String, Obj),
    Prl(Obj, Obj),
    Prr(Obj, Obj),
    Inl(Obj, Obj),
    Inr(Obj, Obj),
    Pair(Box<Term>, Box<Term>),
    Case(Box<Term>, Box<Term>),
    Handle(Box<Term>, Vec<(String, Term)>),
}

impl Term {
    pub fn compose(after: Term, before: Term) -> Term {
        Term::Compose(Box::new(after), Box::new(before))
    }

    pub fn lookup(i: impl Into<String>) -> Term {
        Term::Lookup(i.into())
    }

    pub fn update(i: impl Into<String>) -> Term {
        Term::Update(i.into())
    }

    pub fn constructor(i: impl Into<String>) -> Term {
        Term::Constructor(i.into())
    }

    pub fn recovery(i: impl Into<String>) -> Term {
        Term::Recovery(i.into())
    }

    pub fn raise(i: impl Into<String>, target: Obj) -> Term {
        Term::Raise(i.into(), target)
    }

    pub fn pair(f: Term, g: Term) -> Term {
        Term::Pair(Box::new(f), Box::new(g))
    }

    pub fn case(f: Term, g: Term) -> Term {
        Term::Case(Box::new(f), Box::new(g))
    }

    pub fn handle(f: Term, handlers: Vec<(String, Term)>) -> Term {
        Term::Handle(Box::new(f), handlers)
    }

    /// Name of the outermost constructor, as used in diagnostics.
    pub fn constructor_name(&self) -> &'static str {
        match self {
            Term::Id(_) => "Id",
            Term::Compose(..) => "Compose",
            Term::Lookup(_) => "Lookup",
            Term::Update(_) => "Update",
            Term::Constructor(_) => "Constructor",
            Term::Recovery(_) => "Recovery",
            Term::Raise(..) => "Raise",
            Term::Prl(..) => "Prl",
            Term::Prr(..) => "Prr",
            Term::Inl(..) => "Inl",
            Term::Inr(..) => "Inr",
            Term::Pair(..) => "Pair",
            Term::Case(..) => "Case",
            Term::Handle(..) => "Handle",
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Compose(a, b) | Term::Pair(a, b) | Term::Case(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Term::Handle(f, hs) => {
                1 + hs
                    .iter()
                    .map(|(_, h)| h.depth())
                    .fold(f.depth(), usize::max)
            }
            _ => 1,
        }
    }
}

/// A named equation between two terms of the same type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Law {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        Law {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// Decides the law by exhaustive enumeration.
    pub fn check(&self, sig: &FamilySignature) -> crate::Result<Verdict> {
        equiv(sig, &self.lhs, &self.rhs)
    }
}
