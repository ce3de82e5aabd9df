use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{ExcVal, FamilySignature, State};
use crate::terms::Labeler;

use super::Value;

/// Upper bound on the size of any object whose elements get enumerated.
pub const ENUMERATION_LIMIT: usize = 1 << 20;

/// How a carrier was written: `val[i]` (a location's values) or `par[i]`
/// (an exception's parameters). Both denote the same set; the spelling only
/// survives for printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Spelling {
    #[default]
    Val,
    Par,
}

impl Spelling {
    pub fn flipped(self) -> Self {
        match self {
            Spelling::Val => Spelling::Par,
            Spelling::Par => Spelling::Val,
        }
    }
}

/// Objects: finite sets built from carriers, the state space and the
/// exception space with binary products and sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Obj {
    Carrier { index: String, spelling: Spelling },
    St,
    Exc,
    Prod(Box<Obj>, Box<Obj>),
    Sum(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn val(index: impl Into<String>) -> Obj {
        Obj::Carrier {
            index: index.into(),
            spelling: Spelling::Val,
        }
    }

    pub fn par(index: impl Into<String>) -> Obj {
        Obj::Carrier {
            index: index.into(),
            spelling: Spelling::Par,
        }
    }

    pub fn prod(a: Obj, b: Obj) -> Obj {
        Obj::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Obj, b: Obj) -> Obj {
        Obj::Sum(Box::new(a), Box::new(b))
    }

    /// `y + exc`.
    pub fn with_exc(y: Obj) -> Obj {
        Obj::sum(y, Obj::Exc)
    }

    /// Equality up to carrier spelling: the notion of "same object" used by
    /// the type checker.
    pub fn same_as(&self, other: &Obj) -> bool {
        match (self, other) {
            (Obj::Carrier { index: a, .. }, Obj::Carrier { index: b, .. }) => a == b,
            (Obj::St, Obj::St) | (Obj::Exc, Obj::Exc) => true,
            (Obj::Prod(a1, b1), Obj::Prod(a2, b2)) | (Obj::Sum(a1, b1), Obj::Sum(a2, b2)) => {
                a1.same_as(a2) && b1.same_as(b2)
            }
            _ => false,
        }
    }

    /// For `y + exc`, returns `y`.
    pub fn exc_sum_left(&self) -> Option<&Obj> {
        match self {
            Obj::Sum(y, e) if **e == Obj::Exc => Some(y),
            _ => None,
        }
    }

    pub fn validate(&self, sig: &FamilySignature) -> Result<()> {
        match self {
            Obj::Carrier { index, .. } => sig.ix(index).map(|_| ()),
            Obj::St | Obj::Exc => Ok(()),
            Obj::Prod(a, b) | Obj::Sum(a, b) => {
                a.validate(sig)?;
                b.validate(sig)
            }
        }
    }

    pub fn cardinality(&self, sig: &FamilySignature) -> Result<usize> {
        let too_large = || Error::TooLarge {
            obj: self.to_string(),
            limit: ENUMERATION_LIMIT,
        };
        let n = match self {
            Obj::Carrier { index, .. } => sig.size(sig.ix(index)?)?,
            Obj::St => sig.state_count().ok_or_else(too_large)?,
            Obj::Exc => sig.exception_count(),
            Obj::Prod(a, b) => a
                .cardinality(sig)?
                .checked_mul(b.cardinality(sig)?)
                .ok_or_else(too_large)?,
            Obj::Sum(a, b) => a
                .cardinality(sig)?
                .checked_add(b.cardinality(sig)?)
                .ok_or_else(too_large)?,
        };
        if n > ENUMERATION_LIMIT {
            return Err(too_large());
        }
        Ok(n)
    }

    /// Elements in canonical order: products lexicographic (left component
    /// slowest), sums left summand first.
    pub fn elements(&self, sig: &FamilySignature) -> Result<Vec<Value>> {
        self.cardinality(sig)?;
        self.elements_unchecked(sig)
    }

    fn elements_unchecked(&self, sig: &FamilySignature) -> Result<Vec<Value>> {
        Ok(match self {
            Obj::Carrier { index, .. } => {
                let n = sig.size(sig.ix(index)?)?;
                (0..n).map(|a| Value::Elem(crate::Elem(a))).collect()
            }
            Obj::St => sig
                .enumerate_states()
                .into_iter()
                .map(Value::State)
                .collect(),
            Obj::Exc => sig
                .enumerate_exceptions()
                .into_iter()
                .map(Value::Exc)
                .collect(),
            Obj::Prod(a, b) => {
                let left = a.elements_unchecked(sig)?;
                let right = b.elements_unchecked(sig)?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for x in &left {
                    for y in &right {
                        out.push(Value::pair(x.clone(), y.clone()));
                    }
                }
                out
            }
            Obj::Sum(a, b) => {
                let mut out: Vec<Value> = a
                    .elements_unchecked(sig)?
                    .into_iter()
                    .map(|v| Value::Inl(Box::new(v)))
                    .collect();
                out.extend(
                    b.elements_unchecked(sig)?
                        .into_iter()
                        .map(|v| Value::Inr(Box::new(v))),
                );
                out
            }
        })
    }

    pub fn contains(&self, sig: &FamilySignature, v: &Value) -> bool {
        match (self, v) {
            (Obj::Carrier { index, .. }, Value::Elem(a)) => {
                sig.ix(index).and_then(|ix| sig.check_elem(ix, *a)).is_ok()
            }
            (Obj::St, Value::State(s)) => sig.contains_state(s),
            (Obj::Exc, Value::Exc(e)) => sig.contains_exc(e),
            (Obj::Prod(a, b), Value::Pair(x, y)) => a.contains(sig, x) && b.contains(sig, y),
            (Obj::Sum(a, _), Value::Inl(x)) => a.contains(sig, x),
            (Obj::Sum(_, b), Value::Inr(y)) => b.contains(sig, y),
            _ => false,
        }
    }

    /// Errors unless `v` belongs to this object.
    pub fn check(&self, sig: &FamilySignature, v: &Value) -> Result<()> {
        if self.contains(sig, v) {
            Ok(())
        } else {
            Err(Error::NotAnElement {
                value: v.render(sig, None),
                obj: self.to_string(),
            })
        }
    }

    /// Renders `v` as an element of this object.
    ///
    /// Summands of `y + exc` render as `normal(..)` / `exceptional(..)`,
    /// other sums as `inl(..)` / `inr(..)`. `label` overrides how carrier
    /// elements print.
    pub fn render(&self, sig: &FamilySignature, v: &Value, label: Labeler<'_>) -> String {
        let mut out = String::new();
        self.render_into(sig, v, label, &mut out);
        out
    }

    fn render_into(&self, sig: &FamilySignature, v: &Value, label: Labeler<'_>, out: &mut String) {
        match (self, v) {
            (Obj::Carrier { index, .. }, Value::Elem(a)) => match (sig.ix(index), label) {
                (Ok(ix), Some(label)) => out.push_str(&label(ix, *a)),
                _ => out.push_str(&a.to_string()),
            },
            (Obj::Prod(a, b), Value::Pair(x, y)) => {
                out.push('(');
                a.render_into(sig, x, label, out);
                out.push_str(", ");
                b.render_into(sig, y, label, out);
                out.push(')');
            }
            (Obj::Sum(a, b), Value::Inl(x)) => {
                out.push_str(if **b == Obj::Exc { "normal(" } else { "inl(" });
                a.render_into(sig, x, label, out);
                out.push(')');
            }
            (Obj::Sum(_, b), Value::Inr(y)) => {
                out.push_str(if **b == Obj::Exc {
                    "exceptional("
                } else {
                    "inr("
                });
                b.render_into(sig, y, label, out);
                out.push(')');
            }
            _ => out.push_str(&render_untyped(sig, v, label)),
        }
    }
}

pub(crate) fn render_state(sig: &FamilySignature, s: &State, label: Labeler<'_>) -> String {
    let parts: Vec<String> = sig
        .indices()
        .zip(s.elems())
        .map(|(ix, a)| match label {
            Some(label) => format!("{}:{}", sig.name(ix), label(ix, *a)),
            None => format!("{}:{}", sig.name(ix), a),
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn render_exc(sig: &FamilySignature, e: &ExcVal, label: Labeler<'_>) -> String {
    match label {
        Some(label) => format!("({},{})", sig.name(e.index), label(e.index, e.payload)),
        None => format!("({},{})", sig.name(e.index), e.payload),
    }
}

pub(crate) fn render_untyped(sig: &FamilySignature, v: &Value, label: Labeler<'_>) -> String {
    match v {
        Value::Elem(a) => a.to_string(),
        Value::State(s) => render_state(sig, s, label),
        Value::Exc(e) => render_exc(sig, e, label),
        Value::Pair(x, y) => format!(
            "({}, {})",
            render_untyped(sig, x, label),
            render_untyped(sig, y, label)
        ),
        Value::Inl(x) => format!("inl({})", render_untyped(sig, x, label)),
        Value::Inr(y) => match **y {
            Value::Exc(e) => format!("exceptional({})", render_exc(sig, &e, label)),
            _ => format!("inr({})", render_untyped(sig, y, label)),
        },
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Carrier {
                index,
                spelling: Spelling::Val,
            } => write!(f, "val[{index}]"),
            Obj::Carrier {
                index,
                spelling: Spelling::Par,
            } => write!(f, "par[{index}]"),
            Obj::St => f.write_str("st"),
            Obj::Exc => f.write_str("exc"),
            Obj::Prod(a, b) => write!(f, "prod{{{a}, {b}}}"),
            Obj::Sum(a, b) => write!(f, "sum{{{a}, {b}}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Elem;

    fn sig23() -> FamilySignature {
        FamilySignature::new([("i", 2), ("j", 3)]).unwrap()
    }

    #[test]
    fn cardinalities() {
        let sig = sig23();
        assert_eq!(Obj::St.cardinality(&sig), Ok(6));
        assert_eq!(Obj::Exc.cardinality(&sig), Ok(5));
        assert_eq!(Obj::prod(Obj::val("i"), Obj::St).cardinality(&sig), Ok(12));
        assert_eq!(Obj::with_exc(Obj::par("j")).cardinality(&sig), Ok(8));
    }

    #[test]
    fn elements_match_cardinality_and_are_members() {
        let sig = sig23();
        let obj = Obj::sum(Obj::prod(Obj::val("i"), Obj::St), Obj::Exc);
        let elems = obj.elements(&sig).unwrap();
        assert_eq!(elems.len(), 17);
        assert!(elems.iter().all(|v| obj.contains(&sig, v)));
        assert_eq!(
            elems[0],
            Value::Inl(Box::new(Value::pair(
                Value::Elem(Elem(0)),
                Value::State(sig.state([Elem(0), Elem(0)]).unwrap())
            )))
        );
    }

    #[test]
    fn spelling_is_ignored_by_same_as() {
        assert!(Obj::val("i").same_as(&Obj::par("i")));
        assert_ne!(Obj::val("i"), Obj::par("i"));
        assert!(!Obj::val("i").same_as(&Obj::val("j")));
    }

    #[test]
    fn rendering() {
        let sig = sig23();
        let obj = Obj::with_exc(Obj::prod(Obj::val("i"), Obj::St));
        let s = sig.state([Elem(1), Elem(2)]).unwrap();
        let v = Value::normal(Value::pair(Value::Elem(Elem(1)), Value::State(s)));
        assert_eq!(obj.render(&sig, &v, None), "normal((1, {i:1,j:2}))");
        let e = sig.exc(sig.ix("j").unwrap(), Elem(2)).unwrap();
        assert_eq!(
            obj.render(&sig, &Value::exceptional(e), None),
            "exceptional((j,2))"
        );
    }

    #[test]
    fn oversized_objects_are_refused() {
        let sig = FamilySignature::new([("a", 64), ("b", 64), ("c", 64), ("d", 64)]).unwrap();
        assert!(matches!(
            Obj::St.elements(&sig),
            Err(Error::TooLarge { .. })
        ));
    }
}
