use crate::error::{Error, Result};
use crate::semantics::{self, Apply};
use crate::signature::{FamilySignature, Ix};

use super::{type_of, Arrow, Obj, Term, Value};

fn shape_error(sig: &FamilySignature, t: &Term, x: &Value) -> Error {
    Error::NotAnElement {
        value: x.render(sig, None),
        obj: format!("the domain of `{t}`"),
    }
}

/// Evaluation of a term already known to be well typed.
pub(crate) fn eval_typed(sig: &FamilySignature, t: &Term, x: &Value) -> Result<Value> {
    let elem = |x: &Value| match x {
        Value::Elem(a) => Ok(*a),
        _ => Err(shape_error(sig, t, x)),
    };
    match t {
        Term::Id(_) => Ok(x.clone()),
        Term::Compose(after, before) => {
            let y = eval_typed(sig, before, x)?;
            eval_typed(sig, after, &y)
        }
        Term::Lookup(i) => match x {
            Value::State(s) => Ok(Value::Elem(semantics::lookup(sig, sig.ix(i)?, s)?)),
            _ => Err(shape_error(sig, t, x)),
        },
        Term::Update(i) => match x {
            Value::Pair(a, s) => match (&**a, &**s) {
                (Value::Elem(a), Value::State(s)) => {
                    Ok(Value::State(semantics::update(sig, sig.ix(i)?, *a, s)?))
                }
                _ => Err(shape_error(sig, t, x)),
            },
            _ => Err(shape_error(sig, t, x)),
        },
        Term::Constructor(i) => Ok(Value::Exc(semantics::construct(sig, sig.ix(i)?, elem(x)?)?)),
        Term::Recovery(i) => match x {
            Value::Exc(e) => Ok(semantics::recover(sig, sig.ix(i)?, e)?.into_value()),
            _ => Err(shape_error(sig, t, x)),
        },
        Term::Raise(i, target) => {
            Ok(semantics::raise(sig, sig.ix(i)?, target, elem(x)?)?.into_value())
        }
        Term::Prl(..) => match x {
            Value::Pair(a, _) => Ok((**a).clone()),
            _ => Err(shape_error(sig, t, x)),
        },
        Term::Prr(..) => match x {
            Value::Pair(_, b) => Ok((**b).clone()),
            _ => Err(shape_error(sig, t, x)),
        },
        Term::Inl(..) => Ok(Value::Inl(Box::new(x.clone()))),
        Term::Inr(..) => Ok(Value::Inr(Box::new(x.clone()))),
        Term::Pair(f, g) => Ok(Value::pair(eval_typed(sig, f, x)?, eval_typed(sig, g, x)?)),
        Term::Case(f, g) => match x {
            Value::Inl(a) => eval_typed(sig, f, a),
            Value::Inr(b) => eval_typed(sig, g, b),
            _ => Err(shape_error(sig, t, x)),
        },
        Term::Handle(f, handlers) => {
            let body = TermFn::typed(sig, f);
            let fns: Vec<(Ix, TermFn<'_>)> = handlers
                .iter()
                .map(|(i, h)| Ok((sig.ix(i)?, TermFn::typed(sig, h))))
                .collect::<Result<_>>()?;
            let hs: Vec<(Ix, &dyn Apply)> =
                fns.iter().map(|(i, h)| (*i, h as &dyn Apply)).collect();
            semantics::handle_at(sig, &body, &hs, x, None)
        }
    }
}

/// A term viewed as a function. Construct with [`TermFn::new`], which type
/// checks the term once.
pub struct TermFn<'a> {
    sig: &'a FamilySignature,
    term: &'a Term,
}

impl<'a> TermFn<'a> {
    pub fn new(sig: &'a FamilySignature, term: &'a Term) -> Result<(Self, Arrow)> {
        let ty = type_of(sig, term)?;
        Ok((TermFn { sig, term }, ty))
    }

    fn typed(sig: &'a FamilySignature, term: &'a Term) -> Self {
        TermFn { sig, term }
    }
}

impl Apply for TermFn<'_> {
    fn apply(&self, x: &Value) -> Result<Value> {
        eval_typed(self.sig, self.term, x)
    }
}

/// Applies `t` to `x`, after checking that `t` is well typed and `x` lies
/// in its domain.
pub fn eval(sig: &FamilySignature, t: &Term, x: &Value) -> Result<Value> {
    let ty = type_of(sig, t)?;
    ty.domain.check(sig, x)?;
    eval_typed(sig, t, x)
}

/// Result of an exhaustive comparison of two terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The terms agree on all `checked` inputs.
    Equal { checked: usize },
    /// The first input in enumeration order where they disagree.
    Counterexample {
        input: Value,
        lhs: Value,
        rhs: Value,
    },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }
}

/// Two objects denote the same set when their canonical enumerations
/// coincide; e.g. `val[i]` and `val[j]` when both carriers have the same
/// size.
fn same_set(sig: &FamilySignature, a: &Obj, b: &Obj) -> Result<bool> {
    if a.same_as(b) {
        return Ok(true);
    }
    if a.cardinality(sig)? != b.cardinality(sig)? {
        return Ok(false);
    }
    Ok(a.elements(sig)? == b.elements(sig)?)
}

/// Decides whether `t1` and `t2` are extensionally equal by evaluating
/// both on every element of their common domain.
pub fn equiv(sig: &FamilySignature, t1: &Term, t2: &Term) -> Result<Verdict> {
    let ty1 = type_of(sig, t1)?;
    let ty2 = type_of(sig, t2)?;
    if !same_set(sig, &ty1.domain, &ty2.domain)? || !same_set(sig, &ty1.codomain, &ty2.codomain)? {
        return Err(Error::TypeMismatch {
            term: format!("{t1}  vs  {t2}"),
            expected: ty1.to_string(),
            found: ty2.to_string(),
        });
    }
    let inputs = ty1.domain.elements(sig)?;
    let checked = inputs.len();
    for input in inputs {
        let lhs = eval_typed(sig, t1, &input)?;
        let rhs = eval_typed(sig, t2, &input)?;
        if lhs != rhs {
            return Ok(Verdict::Counterexample { input, lhs, rhs });
        }
    }
    Ok(Verdict::Equal { checked })
}
