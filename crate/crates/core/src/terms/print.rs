use std::fmt;

use super::Term;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(o) => write!(f, "id{{{o}}}"),
            Term::Compose(after, before) => {
                // `.` associates to the right, so only a composite on the
                // left needs parentheses.
                if matches!(**after, Term::Compose(..)) {
                    write!(f, "({after}) . {before}")
                } else {
                    write!(f, "{after} . {before}")
                }
            }
            Term::Lookup(i) => write!(f, "lookup[{i}]"),
            Term::Update(i) => write!(f, "update[{i}]"),
            Term::Constructor(i) => write!(f, "constructor[{i}]"),
            Term::Recovery(i) => write!(f, "recovery[{i}]"),
            Term::Raise(i, y) => write!(f, "raise[{i}]{{{y}}}"),
            Term::Prl(a, b) => write!(f, "prl{{{a}, {b}}}"),
            Term::Prr(a, b) => write!(f, "prr{{{a}, {b}}}"),
            Term::Inl(a, b) => write!(f, "inl{{{a}, {b}}}"),
            Term::Inr(a, b) => write!(f, "inr{{{a}, {b}}}"),
            Term::Pair(a, b) => write!(f, "pair({a}, {b})"),
            Term::Case(a, b) => write!(f, "case({a}, {b})"),
            Term::Handle(body, handlers) => {
                write!(f, "handle({body}")?;
                for (i, h) in handlers {
                    write!(f, ", {i} => {h}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::Obj;

    #[test]
    fn canonical_forms() {
        assert_eq!(
            Term::compose(Term::lookup("i"), Term::update("i")).to_string(),
            "lookup[i] . update[i]"
        );
        assert_eq!(Term::Id(Obj::St).to_string(), "id{st}");
        assert_eq!(
            Term::raise("i", Obj::prod(Obj::val("j"), Obj::St)).to_string(),
            "raise[i]{prod{val[j], st}}"
        );
        let h = Term::handle(
            Term::raise("i", Obj::val("j")),
            vec![("i".into(), Term::Inl(Obj::par("i"), Obj::Exc))],
        );
        assert_eq!(
            h.to_string(),
            "handle(raise[i]{val[j]}, i => inl{par[i], exc})"
        );
    }

    #[test]
    fn left_nested_composition_is_parenthesized() {
        let a = Term::lookup("i");
        let b = Term::update("i");
        let c = Term::Id(Obj::prod(Obj::val("i"), Obj::St));
        let right = Term::compose(a.clone(), Term::compose(b.clone(), c.clone()));
        let left = Term::compose(Term::compose(a, b), c);
        assert_eq!(
            right.to_string(),
            "lookup[i] . update[i] . id{prod{val[i], st}}"
        );
        assert_eq!(
            left.to_string(),
            "(lookup[i] . update[i]) . id{prod{val[i], st}}"
        );
    }
}
