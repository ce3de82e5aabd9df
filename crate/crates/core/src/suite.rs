//! The full battery of checks run against a signature: both law families,
//! structural duality, the derived properties and the handling/extension
//! checks against a fixed pool of functions.

use std::fmt;

use crate::duality::{check_duality, exception_laws, state_laws};
use crate::error::Result;
use crate::semantics::{
    extend, handle, prop_next_recovery, prop_prev_update, Apply, ElemFunction, HandlerList,
};
use crate::signature::{Elem, FamilySignature, Ix};
use crate::terms::{type_of, Labeler, Law, Obj, Value, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            detail: Some(detail.into()),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            detail: Some(detail.into()),
        }
    }

    pub fn error(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Error,
            detail: Some(detail.into()),
        }
    }

    fn from_result(name: String, r: Result<CheckResult>) -> Self {
        r.unwrap_or_else(|e| CheckResult::error(name, e.to_string()))
    }
}

/// Describes a counterexample to `lhs = rhs`.
pub fn describe_counterexample(
    sig: &FamilySignature,
    domain: &Obj,
    codomain: &Obj,
    verdict: &Verdict,
    label: Labeler<'_>,
) -> String {
    match verdict {
        Verdict::Equal { checked } => format!("equal on all {checked} inputs"),
        Verdict::Counterexample { input, lhs, rhs } => format!(
            "at {}: lhs = {}, rhs = {}",
            domain.render(sig, input, label),
            codomain.render(sig, lhs, label),
            codomain.render(sig, rhs, label)
        ),
    }
}

fn check_law(sig: &FamilySignature, law: &Law, label: Labeler<'_>) -> Result<CheckResult> {
    let ty = type_of(sig, &law.lhs)?;
    let verdict = law.check(sig)?;
    let detail = describe_counterexample(sig, &ty.domain, &ty.codomain, &verdict, label);
    Ok(if verdict.is_equal() {
        CheckResult::pass(&law.name, detail)
    } else {
        CheckResult::fail(&law.name, detail)
    })
}

fn distinct_pairs(sig: &FamilySignature) -> Vec<(Ix, Ix)> {
    sig.indices()
        .flat_map(|i| sig.indices().filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Named functions `X -> Y + exc` used as handled bodies.
pub fn body_pool(sig: &FamilySignature) -> Result<Vec<(String, ElemFunction)>> {
    let y = pool_target(sig);
    let y_size = sig.size(first(sig))?;
    let mut pool = Vec::new();
    for k in sig.indices() {
        let name = sig.name(k);
        let next = next_index(sig, k);
        let next_size = sig.size(next)?;
        let x = Obj::par(name);
        pool.push((
            format!("raise[{name}]"),
            ElemFunction::tabulate(sig, x.clone(), y.clone(), |v| {
                Ok(Value::exceptional(sig.exc(k, elem(v))?))
            })?,
        ));
        pool.push((
            format!("const-normal-0 on par[{name}]"),
            ElemFunction::tabulate(sig, x.clone(), y.clone(), |_| {
                Ok(Value::normal(Value::Elem(Elem(0))))
            })?,
        ));
        pool.push((
            format!("mixed on par[{name}]"),
            ElemFunction::tabulate(sig, x, y.clone(), |v| {
                let a = elem(v).0;
                if a.is_multiple_of(2) {
                    Ok(Value::normal(Value::Elem(Elem(a % y_size))))
                } else {
                    Ok(Value::exceptional(sig.exc(next, Elem(a % next_size))?))
                }
            })?,
        ));
    }
    Ok(pool)
}

/// Named handlers `par[k] -> Y + exc`, some of which raise.
pub fn handler_pool(sig: &FamilySignature) -> Result<Vec<(String, Ix, ElemFunction)>> {
    let y = pool_target(sig);
    let y_size = sig.size(first(sig))?;
    let mut pool = Vec::new();
    for k in sig.indices() {
        let name = sig.name(k);
        let next = next_index(sig, k);
        let next_size = sig.size(next)?;
        let x = Obj::par(name);
        pool.push((
            format!("{name} => wrap"),
            k,
            ElemFunction::tabulate(sig, x.clone(), y.clone(), |v| {
                Ok(Value::normal(Value::Elem(Elem(elem(v).0 % y_size))))
            })?,
        ));
        pool.push((
            format!("{name} => const-last"),
            k,
            ElemFunction::tabulate(sig, x.clone(), y.clone(), |_| {
                Ok(Value::normal(Value::Elem(Elem(y_size - 1))))
            })?,
        ));
        pool.push((
            format!("{name} => reraise-next"),
            k,
            ElemFunction::tabulate(sig, x, y.clone(), |v| {
                Ok(Value::exceptional(
                    sig.exc(next, Elem(elem(v).0 % next_size))?,
                ))
            })?,
        ));
    }
    Ok(pool)
}

fn first(sig: &FamilySignature) -> Ix {
    sig.indices().next().expect("signatures are nonempty")
}

fn next_index(sig: &FamilySignature, k: Ix) -> Ix {
    sig.indices()
        .nth((k.position() + 1) % sig.len())
        .expect("position is in range")
}

fn pool_target(sig: &FamilySignature) -> Obj {
    Obj::with_exc(Obj::val(sig.name(first(sig))))
}

fn elem(v: &Value) -> Elem {
    match v {
        Value::Elem(a) => *a,
        _ => Elem(0),
    }
}

/// Direct case analysis on tables: what handling must return, written
/// without the recovery operations.
pub fn handle_oracle(
    f: &ElemFunction,
    handlers: &[(Ix, &ElemFunction)],
    x: &Value,
) -> Option<Value> {
    match x {
        Value::Inr(_) => Some(x.clone()),
        Value::Inl(v) => {
            let y = f.get(v)?;
            match y.as_exceptional() {
                None => Some(y.clone()),
                Some(e) => match handlers.iter().find(|(ix, _)| *ix == e.index) {
                    Some((_, g)) => g.get(&Value::Elem(e.payload)).cloned(),
                    None => Some(y.clone()),
                },
            }
        }
        _ => None,
    }
}

/// Every handler list of length at most `max_len` drawn from `pool`,
/// repetitions allowed, shortest first.
pub fn handler_lists<T: Clone>(pool: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &frontier {
            for h in pool {
                let mut list: Vec<T> = prefix.clone();
                list.push(h.clone());
                next.push(list);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn check_handle_oracle(sig: &FamilySignature, label: Labeler<'_>) -> Result<CheckResult> {
    let bodies = body_pool(sig)?;
    let pool = handler_pool(sig)?;
    let refs: Vec<&(String, Ix, ElemFunction)> = pool.iter().collect();
    let mut cases = 0;
    for (fname, f) in &bodies {
        let domain = Obj::with_exc(f.domain().clone());
        for list in handler_lists(&refs, 2) {
            let hl: HandlerList = list.iter().map(|(_, ix, g)| (*ix, g.clone())).collect();
            let handled = handle(sig, f, &hl)?;
            let oracle_hs: Vec<(Ix, &ElemFunction)> =
                list.iter().map(|(_, ix, g)| (*ix, g)).collect();
            for x in domain.elements(sig)? {
                cases += 1;
                let got = handled.apply(&x)?;
                let want = handle_oracle(f, &oracle_hs, &x);
                if want.as_ref() != Some(&got) {
                    let names: Vec<&str> = list.iter().map(|(n, _, _)| n.as_str()).collect();
                    let cod = f.codomain();
                    return Ok(CheckResult::fail(
                        "handle-vs-oracle",
                        format!(
                            "f = {fname}, handlers = [{}], input {}: handle = {}, oracle = {}",
                            names.join(", "),
                            domain.render(sig, &x, label),
                            cod.render(sig, &got, label),
                            want.map_or("undefined".into(), |w| cod.render(sig, &w, label))
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckResult::pass(
        "handle-vs-oracle",
        format!("{cases} (body, handlers, input) cases agree"),
    ))
}

fn check_empty_handle(sig: &FamilySignature) -> Result<CheckResult> {
    let mut cases = 0;
    for (fname, f) in body_pool(sig)? {
        cases += 1;
        if handle(sig, &f, &HandlerList::new())? != extend(sig, &f)? {
            return Ok(CheckResult::fail(
                "handle-empty-is-extend",
                format!("f = {fname}"),
            ));
        }
    }
    Ok(CheckResult::pass(
        "handle-empty-is-extend",
        format!("{cases} bodies"),
    ))
}

fn check_extend_propagates(sig: &FamilySignature, label: Labeler<'_>) -> Result<CheckResult> {
    let mut cases = 0;
    for (fname, f) in body_pool(sig)? {
        let ext = extend(sig, &f)?;
        for e in sig.enumerate_exceptions() {
            cases += 1;
            let x = Value::exceptional(e);
            let got = ext.apply(&x)?;
            if got != x {
                return Ok(CheckResult::fail(
                    "extend-propagates",
                    format!(
                        "f = {fname}: extend(f)({}) = {}",
                        x.render(sig, label),
                        got.render(sig, label)
                    ),
                ));
            }
        }
    }
    Ok(CheckResult::pass(
        "extend-propagates",
        format!("{cases} (body, exception) cases"),
    ))
}

/// Counts candidate functions `X + exc -> Y + exc` that agree with `f` on
/// `X` and are the identity on `exc`, by brute force.
pub fn count_propagating_extensions(
    sig: &FamilySignature,
    f: &ElemFunction,
) -> Result<(usize, Vec<ElemFunction>)> {
    let domain = Obj::with_exc(f.domain().clone());
    let candidates = ElemFunction::enumerate_all(sig, &domain, f.codomain())?;
    let total = candidates.len();
    let matching = candidates
        .into_iter()
        .filter(|g| {
            g.table().iter().all(|(x, y)| match x {
                Value::Inl(v) => f.get(v) == Some(y),
                other => other == y,
            })
        })
        .collect();
    Ok((total, matching))
}

/// Brute-force uniqueness of the propagating extension at `|X| = |Y| = 1`
/// and one or two exceptions.
pub fn check_extend_unique() -> Result<CheckResult> {
    let sigs = [
        FamilySignature::new([("i", 1)])?,
        FamilySignature::new([("i", 1), ("j", 1)])?,
    ];
    let mut cases = 0;
    for sig in &sigs {
        let x = Obj::par("i");
        let y = Obj::with_exc(Obj::val("i"));
        for f in ElemFunction::enumerate_all(sig, &x, &y)? {
            cases += 1;
            let (_, matching) = count_propagating_extensions(sig, &f)?;
            let ext = extend(sig, &f)?;
            if matching.len() != 1 || matching[0].table() != ext.table() {
                return Ok(CheckResult::fail(
                    "extend-unique",
                    format!(
                        "signature {sig}: {} propagating extensions found",
                        matching.len()
                    ),
                ));
            }
        }
    }
    Ok(CheckResult::pass(
        "extend-unique",
        format!("{cases} functions, each with exactly one propagating extension"),
    ))
}

/// Runs every check against `sig`. Errors inside a check become results
/// with [`Status::Error`].
pub fn run_all(sig: &FamilySignature, label: Labeler<'_>) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for law in state_laws(sig).iter().chain(&exception_laws(sig)) {
        out.push(CheckResult::from_result(
            law.name.clone(),
            check_law(sig, law, label),
        ));
    }
    out.push(CheckResult::from_result(
        "duality".into(),
        check_duality(sig).map(|report| {
            if report.all_match {
                CheckResult::pass(
                    "duality",
                    format!(
                        "{} state laws dualize to exception laws",
                        report.pairs.len()
                    ),
                )
            } else {
                let bad: Vec<&str> = report.mismatches().map(|p| p.state_law.as_str()).collect();
                CheckResult::fail(
                    "duality",
                    format!(
                        "mismatched: [{}]; failing laws: [{}]",
                        bad.join(", "),
                        report.failing_laws.join(", ")
                    ),
                )
            }
        }),
    ));
    for (i, j) in distinct_pairs(sig) {
        let (ni, nj) = (sig.name(i), sig.name(j));
        for (name, report) in [
            (
                format!("prev-update-{ni}-{nj}"),
                prop_prev_update(sig, i, j),
            ),
            (
                format!("next-recovery-{ni}-{nj}"),
                prop_next_recovery(sig, i, j),
            ),
        ] {
            out.push(match report {
                Ok(r) => match &r.failure {
                    None => CheckResult::pass(name, format!("{} cases", r.cases)),
                    Some(f) => CheckResult::fail(name, f.describe(sig, i, j)),
                },
                Err(e) => CheckResult::error(name, e.to_string()),
            });
        }
    }
    out.push(CheckResult::from_result(
        "handle-vs-oracle".into(),
        check_handle_oracle(sig, label),
    ));
    out.push(CheckResult::from_result(
        "handle-empty-is-extend".into(),
        check_empty_handle(sig),
    ));
    out.push(CheckResult::from_result(
        "extend-propagates".into(),
        check_extend_propagates(sig, label),
    ));
    out.push(CheckResult::from_result(
        "extend-unique".into(),
        check_extend_unique(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes_on_the_canonical_signature() {
        let sig = FamilySignature::new([("i", 2), ("j", 3)]).unwrap();
        let results = run_all(&sig, None);
        for r in &results {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
        // 8 laws, duality, 2 x 2 derived, 4 handling/extension checks
        assert_eq!(results.len(), 8 + 1 + 4 + 4);
    }

    #[test]
    fn single_index_runs_a_reduced_suite() {
        let sig = FamilySignature::new([("i", 1)]).unwrap();
        let results = run_all(&sig, None);
        assert!(results.iter().all(|r| r.status == Status::Pass));
        assert_eq!(results.len(), 2 + 1 + 4);
    }

    #[test]
    fn handler_list_counts() {
        assert_eq!(handler_lists(&[1, 2, 3], 2).len(), 1 + 3 + 9);
        assert_eq!(handler_lists(&[1], 0), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn extension_brute_force() {
        let sig = FamilySignature::new([("i", 1), ("j", 1)]).unwrap();
        let f = ElemFunction::tabulate(&sig, Obj::par("i"), Obj::with_exc(Obj::val("i")), |_| {
            Ok(Value::normal(Value::Elem(Elem(0))))
        })
        .unwrap();
        let (total, matching) = count_propagating_extensions(&sig, &f).unwrap();
        assert_eq!(total, 27);
        assert_eq!(matching.len(), 1);
    }

    #[test]
    fn labels_show_up_in_details() {
        let sig = FamilySignature::new([("i", 2), ("j", 2)]).unwrap();
        let label = |_: Ix, a: Elem| ["no", "yes"][a.0].to_string();
        let ty = type_of(&sig, &crate::terms::Term::lookup("i")).unwrap();
        let verdict = crate::terms::equiv(
            &sig,
            &crate::terms::Term::lookup("i"),
            &crate::terms::Term::lookup("j"),
        )
        .unwrap();
        assert_eq!(
            describe_counterexample(&sig, &ty.domain, &ty.codomain, &verdict, Some(&label)),
            "at {i:no,j:yes}: lhs = no, rhs = yes"
        );
    }
}
