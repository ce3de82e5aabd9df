//! Element-level semantics of the primitive operations.
//!
//! States: `lookup` projects a component, `update` replaces one.
//! Exceptions: `construct` tags a parameter, `recover` untags exceptions of
//! one index and propagates all others. `raise`, `extend` and `handle` are
//! built from these.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{Elem, ExcVal, FamilySignature, Ix, State, SumVal};
use crate::terms::{Labeler, Obj, Value};

pub fn lookup(sig: &FamilySignature, i: Ix, s: &State) -> Result<Elem> {
    sig.size(i)?;
    s.get(i).ok_or_else(|| Error::NotAnElement {
        value: format!("{s:?}"),
        obj: "st".into(),
    })
}

/// Returns `s` with component `i` set to `a`; `s` itself is untouched.
pub fn update(sig: &FamilySignature, i: Ix, a: Elem, s: &State) -> Result<State> {
    sig.check_elem(i, a)?;
    if !sig.contains_state(s) {
        return Err(Error::NotAnElement {
            value: format!("{s:?}"),
            obj: "st".into(),
        });
    }
    Ok(s.with(i, a))
}

pub fn construct(sig: &FamilySignature, i: Ix, a: Elem) -> Result<ExcVal> {
    sig.exc(i, a)
}

pub fn recover(sig: &FamilySignature, i: Ix, e: &ExcVal) -> Result<SumVal> {
    sig.size(i)?;
    if e.index == i {
        Ok(SumVal::Normal(Value::Elem(e.payload)))
    } else {
        Ok(SumVal::Exceptional(*e))
    }
}

/// The constructor for `i` followed by the inclusion of `exc` into
/// `target + exc`.
pub fn raise(sig: &FamilySignature, i: Ix, target: &Obj, a: Elem) -> Result<SumVal> {
    target.validate(sig)?;
    Ok(SumVal::Exceptional(construct(sig, i, a)?))
}

/// Anything that maps values to values.
pub trait Apply {
    fn apply(&self, x: &Value) -> Result<Value>;
}

impl<F> Apply for F
where
    F: Fn(&Value) -> Result<Value>,
{
    fn apply(&self, x: &Value) -> Result<Value> {
        self(x)
    }
}

/// A function between finite objects, given by its full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemFunction {
    domain: Obj,
    codomain: Obj,
    table: BTreeMap<Value, Value>,
}

impl ElemFunction {
    /// Builds the table of `f` over every element of `domain`, checking that
    /// each output lies in `codomain`.
    pub fn tabulate(
        sig: &FamilySignature,
        domain: Obj,
        codomain: Obj,
        mut f: impl FnMut(&Value) -> Result<Value>,
    ) -> Result<Self> {
        codomain.validate(sig)?;
        let mut table = BTreeMap::new();
        for x in domain.elements(sig)? {
            let y = f(&x)?;
            codomain.check(sig, &y)?;
            table.insert(x, y);
        }
        Ok(ElemFunction {
            domain,
            codomain,
            table,
        })
    }

    /// Every function from `domain` to `codomain`, in lexicographic order of
    /// their tables.
    pub fn enumerate_all(
        sig: &FamilySignature,
        domain: &Obj,
        codomain: &Obj,
    ) -> Result<Vec<ElemFunction>> {
        let xs = domain.elements(sig)?;
        let ys = codomain.elements(sig)?;
        let total = u32::try_from(xs.len())
            .ok()
            .and_then(|n| ys.len().checked_pow(n))
            .filter(|&n| n <= crate::terms::ENUMERATION_LIMIT)
            .ok_or_else(|| Error::TooLarge {
                obj: format!("{domain} -> {codomain}"),
                limit: crate::terms::ENUMERATION_LIMIT,
            })?;
        let mut out = Vec::with_capacity(total);
        if ys.is_empty() && !xs.is_empty() {
            return Ok(out);
        }
        let mut choice = vec![0usize; xs.len()];
        loop {
            let table = xs
                .iter()
                .zip(&choice)
                .map(|(x, &c)| (x.clone(), ys[c].clone()))
                .collect();
            out.push(ElemFunction {
                domain: domain.clone(),
                codomain: codomain.clone(),
                table,
            });
            let mut pos = xs.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < ys.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    pub fn domain(&self) -> &Obj {
        &self.domain
    }

    pub fn codomain(&self) -> &Obj {
        &self.codomain
    }

    pub fn table(&self) -> &BTreeMap<Value, Value> {
        &self.table
    }

    pub fn get(&self, x: &Value) -> Option<&Value> {
        self.table.get(x)
    }
}

impl Apply for ElemFunction {
    fn apply(&self, x: &Value) -> Result<Value> {
        self.table
            .get(x)
            .cloned()
            .ok_or_else(|| Error::NotAnElement {
                value: format!("{x:?}"),
                obj: self.domain.to_string(),
            })
    }
}

/// The unique extension of `f: X -> Y + exc` to `X + exc -> Y + exc` that
/// is the identity on `exc`.
pub fn extend(sig: &FamilySignature, f: &ElemFunction) -> Result<ElemFunction> {
    if f.codomain.exc_sum_left().is_none() {
        return Err(Error::NotExceptionSum(f.codomain.to_string()));
    }
    ElemFunction::tabulate(
        sig,
        Obj::with_exc(f.domain.clone()),
        f.codomain.clone(),
        |x| match x {
            Value::Inl(v) => f.apply(v),
            other => Ok(other.clone()),
        },
    )
}

/// Ordered handlers `(i_k, g_k)`; the first matching index wins.
#[derive(Debug, Clone, Default)]
pub struct HandlerList {
    entries: Vec<(Ix, ElemFunction)>,
}

impl HandlerList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, index: Ix, handler: ElemFunction) {
        self.entries.push((index, handler));
    }

    pub fn with(mut self, index: Ix, handler: ElemFunction) -> Self {
        self.push(index, handler);
        self
    }

    pub fn entries(&self) -> &[(Ix, ElemFunction)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromIterator<(Ix, ElemFunction)> for HandlerList {
    fn from_iter<T: IntoIterator<Item = (Ix, ElemFunction)>>(iter: T) -> Self {
        HandlerList {
            entries: iter.into_iter().collect(),
        }
    }
}

/// One step of the handling procedure, for tracing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HandleStep {
    /// The input already was an exception and is returned unchanged.
    Propagated(ExcVal),
    /// The body returned an ordinary value.
    Normal(Value),
    /// The body raised an exception.
    Raised(ExcVal),
    /// Recovery for handler `k` (1-based) did not match.
    Skipped { k: usize, index: Ix },
    /// Recovery for handler `k` matched and its handler produced `result`.
    Matched {
        k: usize,
        index: Ix,
        payload: Elem,
        result: Value,
    },
    /// No handler matched; the exception leaves the handler.
    Unhandled(ExcVal),
}

impl HandleStep {
    /// `y` is the ordinary result object of the handled body.
    pub fn describe(&self, sig: &FamilySignature, y: &Obj, label: Labeler<'_>) -> String {
        let exc = |e: &ExcVal| Value::Exc(*e).render(sig, label);
        let elem = |ix: Ix, a: Elem| match label {
            Some(label) => label(ix, a),
            None => a.to_string(),
        };
        match self {
            HandleStep::Propagated(e) => format!(
                "input {} was an exception before the try: it is just propagated",
                exc(e)
            ),
            HandleStep::Normal(v) => format!(
                "body returned the ordinary value {}: returned",
                y.render(sig, v, label)
            ),
            HandleStep::Raised(e) => format!("body raised {}", exc(e)),
            HandleStep::Skipped { k, index } => {
                format!("k={k}: recovery[{}] does not match", sig.name(*index))
            }
            HandleStep::Matched {
                k,
                index,
                payload,
                result,
            } => format!(
                "k={k}: recovery[{}] matched with parameter {}; handler returned {}",
                sig.name(*index),
                elem(*index, *payload),
                Obj::with_exc(y.clone()).render(sig, result, label)
            ),
            HandleStep::Unhandled(e) => format!(
                "{} does not have any handled index: it is propagated",
                exc(e)
            ),
        }
    }
}

/// Runs the handling procedure on one input `x` of `X + exc`.
///
/// Pre-existing exceptions propagate untouched. Otherwise `f` runs; an
/// ordinary result is returned, and an exception is passed through the
/// recovery operations of the handlers in order. The first match applies
/// its handler to the recovered parameter and returns the handler's result
/// as-is, even if it raises.
pub fn handle_at(
    sig: &FamilySignature,
    f: &dyn Apply,
    handlers: &[(Ix, &dyn Apply)],
    x: &Value,
    mut trace: Option<&mut Vec<HandleStep>>,
) -> Result<Value> {
    let mut log = |step: HandleStep| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(step);
        }
    };
    let x = match x {
        Value::Inl(x) => x,
        Value::Inr(e) => {
            if let Value::Exc(e) = **e {
                log(HandleStep::Propagated(e));
            }
            return Ok(Value::Inr(e.clone()));
        }
        other => {
            return Err(Error::NotAnElement {
                value: other.render(sig, None),
                obj: "sum{_, exc}".into(),
            })
        }
    };
    let y = f.apply(x)?;
    let mut exc = match SumVal::from_value(&y) {
        Some(SumVal::Exceptional(e)) => e,
        Some(SumVal::Normal(v)) => {
            log(HandleStep::Normal(v));
            return Ok(y);
        }
        None => {
            return Err(Error::NotAnElement {
                value: y.render(sig, None),
                obj: "sum{_, exc}".into(),
            })
        }
    };
    log(HandleStep::Raised(exc));
    for (k, (index, g)) in handlers.iter().enumerate() {
        match recover(sig, *index, &exc)? {
            SumVal::Normal(payload) => {
                let result = g.apply(&payload)?;
                let Value::Elem(payload) = payload else {
                    unreachable!("recovery yields a carrier element")
                };
                log(HandleStep::Matched {
                    k: k + 1,
                    index: *index,
                    payload,
                    result: result.clone(),
                });
                return Ok(result);
            }
            SumVal::Exceptional(e) => {
                log(HandleStep::Skipped {
                    k: k + 1,
                    index: *index,
                });
                exc = e;
            }
        }
    }
    log(HandleStep::Unhandled(exc));
    Ok(Value::exceptional(exc))
}

/// Tabulates the handling construct over all of `X + exc`.
pub fn handle(
    sig: &FamilySignature,
    f: &ElemFunction,
    handlers: &HandlerList,
) -> Result<ElemFunction> {
    if f.codomain.exc_sum_left().is_none() {
        return Err(Error::NotExceptionSum(f.codomain.to_string()));
    }
    for (index, g) in &handlers.entries {
        let expected = Obj::par(sig.name(*index));
        sig.size(*index)?;
        if !g.domain.same_as(&expected) || !g.codomain.same_as(&f.codomain) {
            return Err(Error::TypeMismatch {
                term: format!("handler for {}", sig.name(*index)),
                expected: format!("{} -> {}", expected, f.codomain),
                found: format!("{} -> {}", g.domain, g.codomain),
            });
        }
    }
    let hs: Vec<(Ix, &dyn Apply)> = handlers
        .entries
        .iter()
        .map(|(i, g)| (*i, g as &dyn Apply))
        .collect();
    ElemFunction::tabulate(
        sig,
        Obj::with_exc(f.domain.clone()),
        f.codomain.clone(),
        |x| handle_at(sig, f, &hs, x, None),
    )
}

/// Lookup and update, abstracted so that property checks can be run
/// against altered implementations.
pub trait StateOps {
    fn lookup(&self, sig: &FamilySignature, i: Ix, s: &State) -> Result<Elem>;
    fn update(&self, sig: &FamilySignature, i: Ix, a: Elem, s: &State) -> Result<State>;
}

/// Constructor and recovery, abstracted like [`StateOps`].
pub trait ExceptionOps {
    fn construct(&self, sig: &FamilySignature, i: Ix, a: Elem) -> Result<ExcVal>;
    fn recover(&self, sig: &FamilySignature, i: Ix, e: &ExcVal) -> Result<SumVal>;
}

/// The operations defined in this module.
#[derive(Debug, Clone, Copy, Default)]
pub struct Standard;

impl StateOps for Standard {
    fn lookup(&self, sig: &FamilySignature, i: Ix, s: &State) -> Result<Elem> {
        lookup(sig, i, s)
    }

    fn update(&self, sig: &FamilySignature, i: Ix, a: Elem, s: &State) -> Result<State> {
        update(sig, i, a, s)
    }
}

impl ExceptionOps for Standard {
    fn construct(&self, sig: &FamilySignature, i: Ix, a: Elem) -> Result<ExcVal> {
        construct(sig, i, a)
    }

    fn recover(&self, sig: &FamilySignature, i: Ix, e: &ExcVal) -> Result<SumVal> {
        recover(sig, i, e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropFailure {
    /// `lookup(i, update(j, b, update(i, a, s)))` returned `observed` instead of `a`.
    PrevUpdate {
        a: Elem,
        b: Elem,
        state: State,
        observed: Elem,
    },
    /// For `e = construct(i, a)`, one of the two recoveries misbehaved.
    NextRecovery {
        a: Elem,
        other: SumVal,
        matching: SumVal,
    },
}

impl PropFailure {
    pub fn describe(&self, sig: &FamilySignature, i: Ix, j: Ix) -> String {
        let (ni, nj) = (sig.name(i), sig.name(j));
        match self {
            PropFailure::PrevUpdate {
                a,
                b,
                state,
                observed,
            } => format!(
                "lookup[{ni}](update[{nj}]({b}, update[{ni}]({a}, {}))) = {observed}, expected {a}",
                Value::State(state.clone()).render(sig, None)
            ),
            PropFailure::NextRecovery { a, other, matching } => format!(
                "e = ({ni},{a}): recovery[{nj}](e) = {}, recovery[{ni}](e) = {}",
                other.clone().into_value().render(sig, None),
                matching.clone().into_value().render(sig, None)
            ),
        }
    }
}

/// Outcome of an exhaustive property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropReport {
    pub cases: usize,
    /// The first failing case in enumeration order.
    pub failure: Option<PropFailure>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn distinct(sig: &FamilySignature, i: Ix, j: Ix) -> Result<()> {
    sig.size(i)?;
    sig.size(j)?;
    if i == j {
        Err(Error::SameIndex(sig.name(i).to_string()))
    } else {
        Ok(())
    }
}

/// Looking up `i` only depends on the previous update of `i`: an
/// intervening update of another index `j` is invisible.
pub fn prop_prev_update(sig: &FamilySignature, i: Ix, j: Ix) -> Result<PropReport> {
    prop_prev_update_with(&Standard, sig, i, j)
}

pub fn prop_prev_update_with(
    ops: &impl StateOps,
    sig: &FamilySignature,
    i: Ix,
    j: Ix,
) -> Result<PropReport> {
    distinct(sig, i, j)?;
    let mut cases = 0;
    for a in (0..sig.size(i)?).map(Elem) {
        for b in (0..sig.size(j)?).map(Elem) {
            for s in sig.enumerate_states() {
                cases += 1;
                let inner = ops.update(sig, i, a, &s)?;
                let outer = ops.update(sig, j, b, &inner)?;
                let observed = ops.lookup(sig, i, &outer)?;
                if observed != a {
                    return Ok(PropReport {
                        cases,
                        failure: Some(PropFailure::PrevUpdate {
                            a,
                            b,
                            state: s,
                            observed,
                        }),
                    });
                }
            }
        }
    }
    Ok(PropReport {
        cases,
        failure: None,
    })
}

/// An exception built with the constructor of `i` passes through the
/// recovery of any other index `j` unchanged and is caught by the recovery
/// of `i`.
pub fn prop_next_recovery(sig: &FamilySignature, i: Ix, j: Ix) -> Result<PropReport> {
    prop_next_recovery_with(&Standard, sig, i, j)
}

pub fn prop_next_recovery_with(
    ops: &impl ExceptionOps,
    sig: &FamilySignature,
    i: Ix,
    j: Ix,
) -> Result<PropReport> {
    distinct(sig, i, j)?;
    let mut cases = 0;
    for a in (0..sig.size(i)?).map(Elem) {
        cases += 1;
        let e = ops.construct(sig, i, a)?;
        let other = ops.recover(sig, j, &e)?;
        let matching = ops.recover(sig, i, &e)?;
        let other_ok = other == SumVal::Exceptional(e);
        let matching_ok = matching == SumVal::Normal(Value::Elem(a));
        if !(other_ok && matching_ok) {
            return Ok(PropReport {
                cases,
                failure: Some(PropFailure::NextRecovery { a, other, matching }),
            });
        }
    }
    Ok(PropReport {
        cases,
        failure: None,
    })
}

impl fmt::Display for PropReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass ({} cases)", self.cases),
            Some(_) => write!(f, "fail after {} cases", self.cases),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig23() -> FamilySignature {
        FamilySignature::new([("i", 2), ("j", 3)]).unwrap()
    }

    fn ij(sig: &FamilySignature) -> (Ix, Ix) {
        (sig.ix("i").unwrap(), sig.ix("j").unwrap())
    }

    #[test]
    fn lookup_projects() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        let s = sig.state([Elem(1), Elem(2)]).unwrap();
        assert_eq!(lookup(&sig, i, &s), Ok(Elem(1)));
        let s0 = sig.state([Elem(0), Elem(0)]).unwrap();
        assert_eq!(lookup(&sig, j, &s0), Ok(Elem(0)));
    }

    #[test]
    fn lookups_cover_all_pairs_once() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        let mut pairs: Vec<(Elem, Elem)> = sig
            .enumerate_states()
            .iter()
            .map(|s| (lookup(&sig, i, s).unwrap(), lookup(&sig, j, s).unwrap()))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 6);
    }

    #[test]
    fn update_sets_one_component() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        let s = sig.state([Elem(0), Elem(2)]).unwrap();
        let snapshot = s.clone();
        let r = update(&sig, i, Elem(1), &s).unwrap();
        assert_eq!(r, sig.state([Elem(1), Elem(2)]).unwrap());
        assert_eq!(lookup(&sig, j, &r), Ok(Elem(2)));
        assert_eq!(s, snapshot);
    }

    #[test]
    fn update_with_current_value_is_identity() {
        let sig = sig23();
        for ix in sig.indices() {
            for s in sig.enumerate_states() {
                let a = lookup(&sig, ix, &s).unwrap();
                assert_eq!(update(&sig, ix, a, &s).unwrap(), s);
            }
        }
    }

    #[test]
    fn update_errors() {
        let sig = sig23();
        let (i, _) = ij(&sig);
        let s = sig.state([Elem(0), Elem(0)]).unwrap();
        assert!(matches!(
            update(&sig, i, Elem(2), &s),
            Err(Error::OutOfRange { .. })
        ));
        let other = FamilySignature::new([("k", 9)]).unwrap();
        assert!(update(&other, other.ix("k").unwrap(), Elem(5), &s).is_err());
    }

    #[test]
    fn constructors_have_disjoint_images_covering_exc() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        assert_ne!(construct(&sig, i, Elem(0)), construct(&sig, j, Elem(0)));
        let mut image: Vec<ExcVal> = (0..2)
            .map(|a| construct(&sig, i, Elem(a)).unwrap())
            .chain((0..3).map(|b| construct(&sig, j, Elem(b)).unwrap()))
            .collect();
        image.sort();
        image.dedup();
        assert_eq!(image, sig.enumerate_exceptions());
    }

    #[test]
    fn recovery_matches_only_its_index() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        let ti0 = construct(&sig, i, Elem(0)).unwrap();
        assert_eq!(
            recover(&sig, i, &ti0),
            Ok(SumVal::Normal(Value::Elem(Elem(0))))
        );
        let tj2 = construct(&sig, j, Elem(2)).unwrap();
        assert_eq!(recover(&sig, i, &tj2), Ok(SumVal::Exceptional(tj2)));
        for e in sig.enumerate_exceptions() {
            let normals = [i, j]
                .iter()
                .filter(|&&k| recover(&sig, k, &e).unwrap().is_normal())
                .count();
            assert_eq!(normals, 1);
        }
    }

    #[test]
    fn raise_is_never_normal() {
        let sig = sig23();
        let (i, _) = ij(&sig);
        assert_eq!(
            raise(&sig, i, &Obj::val("j"), Elem(1)),
            Ok(SumVal::Exceptional(sig.exc(i, Elem(1)).unwrap()))
        );
        for e in sig.enumerate_exceptions() {
            let r = raise(&sig, e.index, &Obj::St, e.payload).unwrap();
            assert!(!r.is_normal());
            assert_eq!(r, raise(&sig, e.index, &Obj::val("i"), e.payload).unwrap());
        }
        assert!(raise(&sig, i, &Obj::val("k"), Elem(0)).is_err());
    }

    #[test]
    fn extend_rejects_non_exception_codomain() {
        let sig = sig23();
        let f = ElemFunction::tabulate(&sig, Obj::St, Obj::St, |s| Ok(s.clone())).unwrap();
        assert!(matches!(extend(&sig, &f), Err(Error::NotExceptionSum(_))));
    }

    #[test]
    fn enumerate_all_counts() {
        let sig = sig23();
        let fs = ElemFunction::enumerate_all(&sig, &Obj::par("i"), &Obj::par("j")).unwrap();
        assert_eq!(fs.len(), 9);
        let mut tables: Vec<_> = fs.iter().map(|f| f.table().clone()).collect();
        tables.dedup();
        assert_eq!(tables.len(), 9);
    }

    #[test]
    fn handle_rejects_mismatched_handler() {
        let sig = sig23();
        let (i, _) = ij(&sig);
        let y = Obj::with_exc(Obj::val("j"));
        let f = ElemFunction::tabulate(&sig, Obj::par("i"), y, |x| Ok(Value::normal(x.clone())))
            .unwrap();
        let g = ElemFunction::tabulate(&sig, Obj::par("i"), Obj::with_exc(Obj::St), |_| {
            Ok(Value::exceptional(sig.exc(i, Elem(0)).unwrap()))
        })
        .unwrap();
        let err = handle(&sig, &f, &HandlerList::new().with(i, g)).unwrap_err();
        assert!(matches!(err, Error::TypeMismatch { .. }));
    }

    #[test]
    fn props_reject_equal_indices() {
        let sig = sig23();
        let (i, _) = ij(&sig);
        assert_eq!(
            prop_prev_update(&sig, i, i),
            Err(Error::SameIndex("i".into()))
        );
        assert_eq!(
            prop_next_recovery(&sig, i, i),
            Err(Error::SameIndex("i".into()))
        );
    }

    #[test]
    fn props_pass_on_standard_semantics() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        let r = prop_prev_update(&sig, i, j).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 36);
        let r = prop_next_recovery(&sig, i, j).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 2);

        let tiny = FamilySignature::new([("i", 1), ("j", 1)]).unwrap();
        let (i, j) = ij(&tiny);
        assert_eq!(prop_prev_update(&tiny, i, j).unwrap().cases, 1);
        assert_eq!(prop_next_recovery(&tiny, i, j).unwrap().cases, 1);
    }

    /// Writes to the other index of a two-index signature.
    struct SwappedUpdate;

    impl StateOps for SwappedUpdate {
        fn lookup(&self, sig: &FamilySignature, i: Ix, s: &State) -> Result<Elem> {
            lookup(sig, i, s)
        }

        fn update(&self, sig: &FamilySignature, i: Ix, a: Elem, s: &State) -> Result<State> {
            let other = sig.indices().find(|&k| k != i).unwrap();
            let a = Elem(a.0 % sig.size(other)?);
            update(sig, other, a, s)
        }
    }

    struct RecoverOnOther;

    impl ExceptionOps for RecoverOnOther {
        fn construct(&self, sig: &FamilySignature, i: Ix, a: Elem) -> Result<ExcVal> {
            construct(sig, i, a)
        }

        fn recover(&self, sig: &FamilySignature, i: Ix, e: &ExcVal) -> Result<SumVal> {
            let other = sig.indices().find(|&k| k != i).unwrap();
            recover(sig, other, e)
        }
    }

    #[test]
    fn mutations_are_caught_with_first_counterexample() {
        let sig = sig23();
        let (i, j) = ij(&sig);
        let r = prop_prev_update_with(&SwappedUpdate, &sig, i, j).unwrap();
        // The swapped outer update writes b into i, so the first failure is
        // the first case with b != a.
        assert_eq!(
            r.failure,
            Some(PropFailure::PrevUpdate {
                a: Elem(0),
                b: Elem(1),
                state: sig.state([Elem(0), Elem(0)]).unwrap(),
                observed: Elem(1),
            })
        );
        assert_eq!(r.cases, 7);

        let r = prop_next_recovery_with(&RecoverOnOther, &sig, i, j).unwrap();
        let e = sig.exc(i, Elem(0)).unwrap();
        assert_eq!(
            r.failure,
            Some(PropFailure::NextRecovery {
                a: Elem(0),
                other: SumVal::Normal(Value::Elem(Elem(0))),
                matching: SumVal::Exceptional(e),
            })
        );
    }
}
