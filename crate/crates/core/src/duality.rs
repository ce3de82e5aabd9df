//! The product/sum dualizer and the two bundled law families.
//!
//! Dualizing swaps `st` with `exc`, products with sums, lookup with
//! constructor, update with recovery, projections with injections and
//! tupling with case analysis, and reverses composition. Applied to the
//! lookup/update equations it produces, term for term, the
//! constructor/recovery equations.

use crate::error::{Error, Result};
use crate::signature::FamilySignature;
use crate::terms::{Law, Obj, Term};

pub fn dualize_obj(o: &Obj) -> Obj {
    match o {
        Obj::Carrier { index, spelling } => Obj::Carrier {
            index: index.clone(),
            spelling: spelling.flipped(),
        },
        Obj::St => Obj::Exc,
        Obj::Exc => Obj::St,
        Obj::Prod(a, b) => Obj::sum(dualize_obj(a), dualize_obj(b)),
        Obj::Sum(a, b) => Obj::prod(dualize_obj(a), dualize_obj(b)),
    }
}

/// Dual of a term in the product/sum fragment. `Raise` and `Handle` have no
/// dual and are rejected, naming the first one met in pre-order.
pub fn dualize(t: &Term) -> Result<Term> {
    Ok(match t {
        Term::Id(o) => Term::Id(dualize_obj(o)),
        Term::Compose(after, before) => Term::compose(dualize(before)?, dualize(after)?),
        Term::Lookup(i) => Term::Constructor(i.clone()),
        Term::Constructor(i) => Term::Lookup(i.clone()),
        Term::Update(i) => Term::Recovery(i.clone()),
        Term::Recovery(i) => Term::Update(i.clone()),
        Term::Prl(a, b) => Term::Inl(dualize_obj(a), dualize_obj(b)),
        Term::Inl(a, b) => Term::Prl(dualize_obj(a), dualize_obj(b)),
        Term::Prr(a, b) => Term::Inr(dualize_obj(a), dualize_obj(b)),
        Term::Inr(a, b) => Term::Prr(dualize_obj(a), dualize_obj(b)),
        Term::Pair(f, g) => Term::case(dualize(f)?, dualize(g)?),
        Term::Case(f, g) => Term::pair(dualize(f)?, dualize(g)?),
        Term::Raise(..) => return Err(Error::NotDualizable("Raise")),
        Term::Handle(..) => return Err(Error::NotDualizable("Handle")),
    })
}

/// `l_i ∘ u_i = prl` for every `i`, then `l_j ∘ u_i = l_j ∘ prr` for every
/// ordered pair `i ≠ j`.
pub fn state_laws(sig: &FamilySignature) -> Vec<Law> {
    let names: Vec<&str> = sig.entries().iter().map(|e| e.name()).collect();
    let mut laws: Vec<Law> = names
        .iter()
        .map(|&i| {
            Law::new(
                format!("state-lu-same-{i}"),
                Term::compose(Term::lookup(i), Term::update(i)),
                Term::Prl(Obj::val(i), Obj::St),
            )
        })
        .collect();
    for &i in &names {
        for &j in names.iter().filter(|&&j| j != i) {
            laws.push(Law::new(
                format!("state-lu-other-{i}-{j}"),
                Term::compose(Term::lookup(j), Term::update(i)),
                Term::compose(Term::lookup(j), Term::Prr(Obj::val(i), Obj::St)),
            ));
        }
    }
    laws
}

/// `c_i ∘ t_i = inl` for every `i`, then `c_i ∘ t_j = inr ∘ t_j` for every
/// ordered pair `i ≠ j`.
pub fn exception_laws(sig: &FamilySignature) -> Vec<Law> {
    let names: Vec<&str> = sig.entries().iter().map(|e| e.name()).collect();
    let mut laws: Vec<Law> = names
        .iter()
        .map(|&i| {
            Law::new(
                format!("exc-ct-same-{i}"),
                Term::compose(Term::recovery(i), Term::constructor(i)),
                Term::Inl(Obj::par(i), Obj::Exc),
            )
        })
        .collect();
    for &i in &names {
        for &j in names.iter().filter(|&&j| j != i) {
            laws.push(Law::new(
                format!("exc-ct-other-{i}-{j}"),
                Term::compose(Term::recovery(i), Term::constructor(j)),
                Term::compose(Term::Inr(Obj::par(i), Obj::Exc), Term::constructor(j)),
            ));
        }
    }
    laws
}

/// Name of the exception law a state law should dualize to.
pub fn dual_law_name(state_law: &str) -> Option<String> {
    state_law
        .strip_prefix("state-lu-")
        .map(|rest| format!("exc-ct-{rest}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPair {
    pub state_law: String,
    /// `None` when the dualizer failed on the law.
    pub dual_lhs: Option<Term>,
    pub dual_rhs: Option<Term>,
    pub exception_law: String,
    pub structural_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualReport {
    pub pairs: Vec<DualPair>,
    /// Names of laws that failed the exhaustive semantic check.
    pub failing_laws: Vec<String>,
    pub all_match: bool,
}

impl DualReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &DualPair> {
        self.pairs.iter().filter(|p| !p.structural_match)
    }
}

pub fn check_duality(sig: &FamilySignature) -> Result<DualReport> {
    check_duality_with(sig, dualize)
}

/// Like [`check_duality`], with the dualizer supplied by the caller.
pub fn check_duality_with(
    sig: &FamilySignature,
    dualizer: impl Fn(&Term) -> Result<Term>,
) -> Result<DualReport> {
    let states = state_laws(sig);
    let excs = exception_laws(sig);
    let mut failing_laws = Vec::new();
    for law in states.iter().chain(&excs) {
        if !law.check(sig)?.is_equal() {
            failing_laws.push(law.name.clone());
        }
    }
    let mut pairs = Vec::with_capacity(states.len());
    for law in &states {
        let target_name = dual_law_name(&law.name).unwrap_or_default();
        let target = excs.iter().find(|e| e.name == target_name);
        let dual_lhs = dualizer(&law.lhs).ok();
        let dual_rhs = dualizer(&law.rhs).ok();
        let structural_match = match (target, &dual_lhs, &dual_rhs) {
            (Some(target), Some(l), Some(r)) => *l == target.lhs && *r == target.rhs,
            _ => false,
        };
        pairs.push(DualPair {
            state_law: law.name.clone(),
            dual_lhs,
            dual_rhs,
            exception_law: target_name,
            structural_match,
        });
    }
    let all_match = pairs.len() == excs.len()
        && pairs.iter().all(|p| p.structural_match)
        && failing_laws.is_empty();
    Ok(DualReport {
        pairs,
        failing_laws,
        all_match,
    })
}
