use std::fmt;

use crate::error::{Error, Result};
use crate::signature::FamilySignature;

use super::{Obj, Term};

/// The type of a term: a function from `domain` to `codomain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub domain: Obj,
    pub codomain: Obj,
}

impl Arrow {
    pub fn new(domain: Obj, codomain: Obj) -> Self {
        Arrow { domain, codomain }
    }

    pub fn same_as(&self, other: &Arrow) -> bool {
        self.domain.same_as(&other.domain) && self.codomain.same_as(&other.codomain)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.domain, self.codomain)
    }
}

fn mismatch(term: &Term, expected: impl fmt::Display, found: impl fmt::Display) -> Error {
    Error::TypeMismatch {
        term: term.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Computes the type of `t`.
///
/// Carriers are compared up to spelling. Primitive operations on states
/// produce `val[..]` carriers and operations on exceptions `par[..]`
/// carriers.
pub fn type_of(sig: &FamilySignature, t: &Term) -> Result<Arrow> {
    let carrier = |i: &str, par: bool| -> Result<Obj> {
        sig.ix(i)?;
        Ok(if par { Obj::par(i) } else { Obj::val(i) })
    };
    Ok(match t {
        Term::Id(o) => {
            o.validate(sig)?;
            Arrow::new(o.clone(), o.clone())
        }
        Term::Compose(after, before) => {
            let g = type_of(sig, after)?;
            let f = type_of(sig, before)?;
            if !f.codomain.same_as(&g.domain) {
                return Err(mismatch(t, &g.domain, &f.codomain));
            }
            Arrow::new(f.domain, g.codomain)
        }
        Term::Lookup(i) => Arrow::new(Obj::St, carrier(i, false)?),
        Term::Update(i) => Arrow::new(Obj::prod(carrier(i, false)?, Obj::St), Obj::St),
        Term::Constructor(i) => Arrow::new(carrier(i, true)?, Obj::Exc),
        Term::Recovery(i) => Arrow::new(Obj::Exc, Obj::with_exc(carrier(i, true)?)),
        Term::Raise(i, target) => {
            target.validate(sig)?;
            Arrow::new(carrier(i, true)?, Obj::with_exc(target.clone()))
        }
        Term::Prl(a, b) => {
            a.validate(sig)?;
            b.validate(sig)?;
            Arrow::new(Obj::prod(a.clone(), b.clone()), a.clone())
        }
        Term::Prr(a, b) => {
            a.validate(sig)?;
            b.validate(sig)?;
            Arrow::new(Obj::prod(a.clone(), b.clone()), b.clone())
        }
        Term::Inl(a, b) => {
            a.validate(sig)?;
            b.validate(sig)?;
            Arrow::new(a.clone(), Obj::sum(a.clone(), b.clone()))
        }
        Term::Inr(a, b) => {
            a.validate(sig)?;
            b.validate(sig)?;
            Arrow::new(b.clone(), Obj::sum(a.clone(), b.clone()))
        }
        Term::Pair(f, g) => {
            let tf = type_of(sig, f)?;
            let tg = type_of(sig, g)?;
            if !tf.domain.same_as(&tg.domain) {
                return Err(mismatch(t, &tf.domain, &tg.domain));
            }
            Arrow::new(tf.domain, Obj::prod(tf.codomain, tg.codomain))
        }
        Term::Case(f, g) => {
            let tf = type_of(sig, f)?;
            let tg = type_of(sig, g)?;
            if !tf.codomain.same_as(&tg.codomain) {
                return Err(mismatch(t, &tf.codomain, &tg.codomain));
            }
            Arrow::new(Obj::sum(tf.domain, tg.domain), tf.codomain)
        }
        Term::Handle(f, handlers) => {
            let tf = type_of(sig, f)?;
            if tf.codomain.exc_sum_left().is_none() {
                return Err(mismatch(t, "sum{_, exc}", &tf.codomain));
            }
            for (i, h) in handlers {
                let th = type_of(sig, h)?;
                let expected_domain = carrier(i, true)?;
                if !th.domain.same_as(&expected_domain) {
                    return Err(mismatch(h, &expected_domain, &th.domain));
                }
                if !th.codomain.same_as(&tf.codomain) {
                    return Err(mismatch(h, &tf.codomain, &th.codomain));
                }
            }
            Arrow::new(Obj::with_exc(tf.domain), tf.codomain)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig23() -> FamilySignature {
        FamilySignature::new([("i", 2), ("j", 3)]).unwrap()
    }

    #[test]
    fn lookup_after_update() {
        let t = Term::compose(Term::lookup("i"), Term::update("i"));
        assert_eq!(
            type_of(&sig23(), &t).unwrap(),
            Arrow::new(Obj::prod(Obj::val("i"), Obj::St), Obj::val("i"))
        );
    }

    #[test]
    fn recovery_after_constructor() {
        let t = Term::compose(Term::recovery("i"), Term::constructor("i"));
        assert_eq!(
            type_of(&sig23(), &t).unwrap(),
            Arrow::new(Obj::par("i"), Obj::with_exc(Obj::par("i")))
        );
    }

    #[test]
    fn lookup_after_constructor_is_ill_typed() {
        let t = Term::compose(Term::lookup("i"), Term::constructor("i"));
        match type_of(&sig23(), &t) {
            Err(Error::TypeMismatch {
                expected, found, ..
            }) => {
                assert_eq!(expected, "st");
                assert_eq!(found, "exc");
            }
            other => panic!("expected a type mismatch, got {other:?}"),
        }
    }

    #[test]
    fn unknown_index_is_reported() {
        assert_eq!(
            type_of(&sig23(), &Term::lookup("k")),
            Err(Error::UnknownIndex("k".into()))
        );
        assert_eq!(
            type_of(&sig23(), &Term::Id(Obj::val("k"))),
            Err(Error::UnknownIndex("k".into()))
        );
    }

    #[test]
    fn handle_typing() {
        let sig = sig23();
        let f = Term::raise("i", Obj::val("j"));
        let t = Term::handle(f.clone(), vec![]);
        assert_eq!(
            type_of(&sig, &t).unwrap(),
            Arrow::new(Obj::with_exc(Obj::par("i")), Obj::with_exc(Obj::val("j")))
        );

        let reraise = Term::raise("j", Obj::val("j"));
        let ok = Term::handle(f.clone(), vec![("j".into(), reraise.clone())]);
        assert!(type_of(&sig, &ok).is_ok());

        // handler for `i` must start at par[i]
        let bad = Term::handle(f.clone(), vec![("i".into(), reraise)]);
        assert!(matches!(
            type_of(&sig, &bad),
            Err(Error::TypeMismatch { .. })
        ));

        // handler codomain must be val[j] + exc
        let inl = Term::Inl(Obj::par("i"), Obj::Exc);
        let bad = Term::handle(f, vec![("i".into(), inl)]);
        assert!(matches!(
            type_of(&sig, &bad),
            Err(Error::TypeMismatch { .. })
        ));

        let not_exc = Term::handle(Term::lookup("i"), vec![]);
        assert!(matches!(
            type_of(&sig, &not_exc),
            Err(Error::TypeMismatch { .. })
        ));
    }

    #[test]
    fn pair_and_case() {
        let sig = sig23();
        let p = Term::pair(Term::lookup("i"), Term::Id(Obj::St));
        assert_eq!(
            type_of(&sig, &p).unwrap(),
            Arrow::new(Obj::St, Obj::prod(Obj::val("i"), Obj::St))
        );
        let c = Term::case(Term::Inl(Obj::par("i"), Obj::Exc), Term::recovery("i"));
        assert_eq!(
            type_of(&sig, &c).unwrap(),
            Arrow::new(
                Obj::sum(Obj::par("i"), Obj::Exc),
                Obj::sum(Obj::par("i"), Obj::Exc)
            )
        );
        let bad = Term::case(Term::lookup("i"), Term::lookup("j"));
        assert!(type_of(&sig, &bad).is_err());
    }
}
