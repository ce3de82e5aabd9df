use effdual_core::duality::dualize;
use effdual_core::semantics::{handle_at, Apply, HandleStep};
use effdual_core::suite::{self, describe_counterexample};
use effdual_core::terms::TermFn;
use effdual_core::{equiv, eval, parse, type_of, Elem, Ix, Labeler, Term};

use crate::config::Config;
use crate::input::parse_value;
use crate::report::{Report, ResultEntry, Status};

/// Shared state for one invocation: the loaded config and whether display
/// labels should be used.
pub struct Context<'a> {
    pub config: &'a Config,
    pub use_labels: bool,
}

impl Context<'_> {
    fn with_labeler<R>(&self, f: impl FnOnce(Labeler<'_>) -> R) -> R {
        let label = |ix: Ix, a: Elem| self.config.label(ix, a);
        if self.use_labels && self.config.has_labels() {
            f(Some(&label))
        } else {
            f(None)
        }
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, Some(&self.config.signature))
    }
}

fn entry(name: &str, status: Status, detail: impl Into<String>) -> ResultEntry {
    ResultEntry {
        name: name.to_string(),
        status,
        detail: Some(detail.into()),
    }
}

fn parse_term(report: &mut Report, name: &str, src: &str) -> Option<Term> {
    match parse(src) {
        Ok(t) => Some(t),
        Err(e) => {
            report.push_error(name, format!("{e}"));
            None
        }
    }
}

pub fn cmd_laws(ctx: &Context<'_>) -> Report {
    let mut report = ctx.report("laws");
    let results = ctx.with_labeler(|label| suite::run_all(&ctx.config.signature, label));
    for r in results {
        report.push(r);
    }
    report
}

pub fn cmd_equiv(ctx: &Context<'_>, lhs_src: &str, rhs_src: &str) -> Report {
    let sig = &ctx.config.signature;
    let mut report = ctx.report("equiv");
    let (Some(lhs), Some(rhs)) = (
        parse_term(&mut report, "term1", lhs_src),
        parse_term(&mut report, "term2", rhs_src),
    ) else {
        return report;
    };
    let ty = match type_of(sig, &lhs) {
        Ok(ty) => ty,
        Err(e) => {
            report.push_error("term1", e.to_string());
            return report;
        }
    };
    match equiv(sig, &lhs, &rhs) {
        Ok(verdict) => {
            let detail = ctx.with_labeler(|label| {
                describe_counterexample(sig, &ty.domain, &ty.codomain, &verdict, label)
            });
            let status = if verdict.is_equal() {
                Status::Pass
            } else {
                Status::Fail
            };
            report.push(entry("equiv", status, detail));
        }
        Err(e) => report.push_error("equiv", e.to_string()),
    }
    report
}

pub fn cmd_eval(ctx: &Context<'_>, term_src: &str, input_src: &str) -> Report {
    let sig = &ctx.config.signature;
    let mut report = ctx.report("eval");
    let Some(term) = parse_term(&mut report, "term", term_src) else {
        return report;
    };
    let ty = match type_of(sig, &term) {
        Ok(ty) => ty,
        Err(e) => {
            report.push_error("term", e.to_string());
            return report;
        }
    };
    let x = match parse_value(sig, &ty.domain, input_src) {
        Ok(x) => x,
        Err(e) => {
            report.push_error("input", e);
            return report;
        }
    };
    match eval(sig, &term, &x) {
        Ok(y) => {
            let shown = ctx.with_labeler(|label| ty.codomain.render(sig, &y, label));
            report.push(entry("eval", Status::Pass, format!("{term} : {ty}")));
            report.output = Some(shown);
        }
        Err(e) => report.push_error("eval", e.to_string()),
    }
    report
}

pub fn cmd_dualize(ctx: &Context<'_>, term_src: &str) -> Report {
    let sig = &ctx.config.signature;
    let mut report = ctx.report("dualize");
    let Some(term) = parse_term(&mut report, "term", term_src) else {
        return report;
    };
    if let Err(e) = type_of(sig, &term) {
        report.push_error("term", e.to_string());
        return report;
    }
    match dualize(&term) {
        Ok(dual) => {
            let text = dual.to_string();
            report.push(entry("dualize", Status::Pass, text.clone()));
            report.output = Some(text);
        }
        Err(e) => report.push(entry("dualize", Status::Fail, e.to_string())),
    }
    report
}

pub fn cmd_handle_demo(
    ctx: &Context<'_>,
    body_src: &str,
    handler_srcs: &[(String, String)],
    input_src: &str,
) -> Report {
    let sig = &ctx.config.signature;
    let mut report = ctx.report("handle-demo");
    let Some(body) = parse_term(&mut report, "f", body_src) else {
        return report;
    };
    let mut handlers = Vec::with_capacity(handler_srcs.len());
    for (k, (ix, src)) in handler_srcs.iter().enumerate() {
        let Some(h) = parse_term(&mut report, &format!("handler {}", k + 1), src) else {
            return report;
        };
        handlers.push((ix.clone(), h));
    }
    let whole = Term::handle(body.clone(), handlers.clone());
    let ty = match type_of(sig, &whole) {
        Ok(ty) => ty,
        Err(e) => {
            report.push_error("handle", e.to_string());
            return report;
        }
    };
    let x = match parse_value(sig, &ty.domain, input_src) {
        Ok(x) => x,
        Err(e) => {
            report.push_error("input", e);
            return report;
        }
    };

    let run = || -> effdual_core::Result<(effdual_core::Value, Vec<HandleStep>)> {
        let (f, _) = TermFn::new(sig, &body)?;
        let mut fns = Vec::with_capacity(handlers.len());
        for (ix, h) in &handlers {
            fns.push((sig.ix(ix)?, TermFn::new(sig, h)?.0));
        }
        let hs: Vec<(Ix, &dyn Apply)> = fns.iter().map(|(i, g)| (*i, g as &dyn Apply)).collect();
        let mut trace = Vec::new();
        let y = handle_at(sig, &f, &hs, &x, Some(&mut trace))?;
        Ok((y, trace))
    };
    match run() {
        Ok((y, trace)) => {
            let normal = ty.codomain.exc_sum_left().expect("handle codomain");
            ctx.with_labeler(|label| {
                report.trace = trace
                    .iter()
                    .map(|s| s.describe(sig, normal, label))
                    .collect();
                report.output = Some(ty.codomain.render(sig, &y, label));
            });
            // The traced run must agree with evaluating the handle term.
            let status = match eval(sig, &whole, &x) {
                Ok(z) if z == y => Status::Pass,
                _ => Status::Fail,
            };
            report.push(entry("handle", status, whole.to_string()));
        }
        Err(e) => report.push_error("handle", e.to_string()),
    }
    report
}

/// Reported when the command line itself is unusable.
pub fn usage_error(command: &str, message: impl Into<String>) -> Report {
    let mut r = Report::new(command, None);
    r.push_error("usage", message);
    r
}
