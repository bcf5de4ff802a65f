use serde_json::{json, Value};

use carlitz_core::goss::{
    bernoulli_range, infinity_interpolation_check, lfunction_direct, lfunction_exact, zeta_infty,
    zeta_infty_digits, zeta_neg, CharacterIndex, PolyX,
};
use carlitz_core::invariants::{estmi_bound_holds, m_invariant, MValue};
use carlitz_core::local::{digits_for_precision, LaurentElem, PadicElem, ZpApprox};
use carlitz_core::sinnott::{kernel_witness, sinnott_map, stick_lfun_all};
use carlitz_core::stickelberger::{default_cutoff, n_invariant, theta_series, theta_sharp, GroupRing, NInvariant};
use carlitz_core::verify::{run_suite, Matrix, Suite};
use carlitz_core::{Context, Error, Result};

use crate::config::RunConfig;
use crate::output::{self, Report};

/// Exit status for a command that produced output.
pub const OK: i32 = 0;
pub const FAILED: i32 = 1;
pub const GUARD: i32 = 3;
pub const UNRESOLVED: i32 = 4;

pub const DEFAULT_PREC: u32 = 4;
pub const DEFAULT_XDEG: usize = 6;

fn config_json(ctx: &Context) -> Value {
    let s = ctx.spec();
    json!({ "p": s.p, "e": s.e, "modulus": s.modulus, "pi": ctx.pi().to_ints() })
}

fn character(ctx: &Context, i: i64) -> Result<CharacterIndex> {
    if i < 0 {
        Ok(CharacterIndex::reduce(ctx, i))
    } else {
        CharacterIndex::new(ctx, i as u64)
    }
}

/// Nontrivial characters `1 ≤ i ≤ q^d - 2`, or just `i`.
fn characters(ctx: &Context, i: Option<i64>) -> Result<Vec<CharacterIndex>> {
    match i {
        Some(i) => Ok(vec![character(ctx, i)?]),
        None => Ok(CharacterIndex::all(ctx).filter(|c| c.value() != 0).collect()),
    }
}

fn exponent(ctx: &Context, y: i64, digits: u32) -> Result<ZpApprox> {
    ZpApprox::from_int(ctx.p(), y, digits)
}

pub fn bernoulli(cfg: &RunConfig, jmax: u64) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    let betas = bernoulli_range(&ctx, jmax);
    let with_v = cfg.prime_given;
    let header: &[&str] = if with_v { &["j", "beta", "deg", "v"] } else { &["j", "beta", "deg"] };
    let mut rows = Vec::new();
    let mut out = Report::new(Value::Null, header);
    for (j, b) in betas.iter().enumerate() {
        let deg = b.degree().map_or(-1, |d| d as i64);
        let mut row = json!({ "j": j, "beta": b, "degree": deg });
        let mut cells = vec![j.to_string(), b.to_string(), deg.to_string()];
        if with_v {
            let v = ctx.padic().poly_valuation(b);
            row["valuation"] = json!(v);
            cells.push(v.to_string());
        }
        rows.push(row);
        out.row(cells);
    }
    out.json = json!({ "config": config_json(&ctx), "jmax": jmax, "rows": rows });
    Ok((out, OK))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exact,
    Direct,
    Both,
}

fn series_rows(out: &mut Report, label: &str, s: &PolyX<PadicElem>) {
    for (k, c) in s.coeffs().iter().enumerate() {
        out.row(vec![label.into(), k.to_string(), output::padic(c)]);
    }
}

pub fn lfunction(cfg: &RunConfig, i: i64, y: i64, method: Method, at_one: bool) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    let i = character(&ctx, i)?;
    let prec = cfg.prec.unwrap_or(DEFAULT_PREC);
    let digits = cfg.ydigits.unwrap_or_else(|| digits_for_precision(ctx.p(), u64::from(prec)));
    let y = exponent(&ctx, y, digits)?;
    let padic = ctx.padic();

    let exact = match method {
        Method::Exact | Method::Both => Some(lfunction_exact(&ctx, i, &y, prec)?),
        Method::Direct => None,
    };
    let direct = match method {
        Method::Direct => Some(lfunction_direct(&ctx, i, &y, prec, cfg.xdeg.unwrap_or(DEFAULT_XDEG))?),
        // one coefficient past the exact length, which must vanish
        Method::Both => {
            let len = exact.as_ref().map_or(0, |e| e.len());
            Some(lfunction_direct(&ctx, i, &y, prec, cfg.xdeg.unwrap_or(len).max(len))?)
        }
        Method::Exact => None,
    };

    let mut out = Report::new(Value::Null, &["method", "k", "coeff"]);
    let mut doc = json!({
        "config": config_json(&ctx),
        "index": i.value(),
        "y": y,
        "precision": prec,
    });
    if let Some(e) = &exact {
        series_rows(&mut out, "exact", e);
        doc["exact"] = json!(e);
    }
    if let Some(d) = &direct {
        series_rows(&mut out, "direct", d);
        doc["direct"] = json!(d);
    }
    let mut code = OK;
    if let (Some(e), Some(d)) = (&exact, &direct) {
        let n = e.len().max(d.len());
        let diff: Vec<Value> = (0..n)
            .filter(|&k| e.coeff_or_zero(padic, k) != d.coeff_or_zero(padic, k))
            .map(|k| json!({ "k": k, "exact": e.coeff_or_zero(padic, k), "direct": d.coeff_or_zero(padic, k) }))
            .collect();
        out.notes.push(format!("diff: {} coefficient(s) differ", diff.len()));
        if !diff.is_empty() {
            code = FAILED;
        }
        doc["diff"] = Value::Array(diff);
    }
    if at_one {
        let s = exact.as_ref().or(direct.as_ref()).expect("one method always runs");
        let (v1, d1) = (s.eval_one(padic), s.derivative_at_one(padic));
        out.notes.push(format!("L(1) = {}  (v = {})", output::padic(&v1), padic.valuation(&v1)));
        out.notes.push(format!("L'(1) = {}  (v = {})", output::padic(&d1), padic.valuation(&d1)));
        doc["at_one"] = json!({
            "value": v1,
            "valuation": padic.valuation(&v1),
            "derivative": d1,
            "derivative_valuation": padic.valuation(&d1),
        });
    }
    out.json = doc;
    Ok((out, code))
}

pub fn stickelberger(cfg: &RunConfig, i: i64, sharp: bool, at_one: bool) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    let i = character(&ctx, i)?;
    let n = cfg.level.unwrap_or(0);
    let series = if sharp {
        theta_sharp(&ctx, n, i, cfg.xdeg)?
    } else {
        theta_series(&ctx, n, i, cfg.xdeg.unwrap_or_else(|| default_cutoff(&ctx, n)))?
    };
    let ring = GroupRing::new(&ctx, n)?;
    let mut doc = json!({
        "config": config_json(&ctx),
        "level": n,
        "index": i.value(),
        "sharp": sharp,
        "cutoff": series.cutoff,
    });
    if at_one {
        let total = series.coeffs.iter().try_fold(ring.zero(), |acc, c| ring.add(&acc, c))?;
        let mut out = Report::new(Value::Null, &["value"]);
        out.row(vec![output::group_ring(&ring, &total)]);
        doc["at_one"] = output::group_ring_json(&ring, &total);
        out.json = doc;
        return Ok((out, OK));
    }
    let mut out = Report::new(Value::Null, &["k", "coeff"]);
    let mut coeffs = Vec::new();
    for (k, c) in series.coeffs.iter().enumerate() {
        out.row(vec![k.to_string(), output::group_ring(&ring, c)]);
        coeffs.push(output::group_ring_json(&ring, c));
    }
    doc["coeffs"] = Value::Array(coeffs);
    out.json = doc;
    Ok((out, OK))
}

pub fn invariants(
    cfg: &RunConfig,
    i: Option<i64>,
    n_max: u32,
    m_cap: u32,
    m_init: Option<u32>,
) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    let mut out = Report::new(Value::Null, &["i", "N(i)", "m(i)", "-i", "m(-i)", "N(i) <= m(-i)", "m(i) bound"]);
    let mut rows = Vec::new();
    let mut code = OK;
    let show = |v: Option<u32>| v.map_or("?".to_string(), |x| x.to_string());
    for ci in characters(&ctx, i)? {
        if ci.value() == 0 {
            return Err(Error::Precondition("invariants are defined for 1 ≤ i ≤ q^d - 2".into()));
        }
        let n = n_invariant(&ctx, ci, n_max)?;
        let m = m_invariant(&ctx, ci, m_init, m_cap)?;
        let neg = ci.neg();
        let m_neg = if neg == ci { m.clone() } else { m_invariant(&ctx, neg, m_init, m_cap)? };
        let holds = match (n.level(), m_neg.value()) {
            (Some(a), Some(b)) => Some(a <= b),
            _ => None,
        };
        // the upper bound applies to odd characters
        let bound = match (ci.is_even(), m.value()) {
            (false, Some(v)) => Some(estmi_bound_holds(&ctx, ci.value(), u64::from(v))),
            _ => None,
        };
        if m.value == MValue::Unresolved || m_neg.value == MValue::Unresolved || matches!(n, NInvariant::NotFound(_)) {
            code = UNRESOLVED;
        } else if holds == Some(false) || bound == Some(false) {
            code = FAILED;
        }
        let word = |b: Option<bool>| match b {
            Some(true) => "OK".to_string(),
            Some(false) => "VIOLATED".to_string(),
            None => "n/a".to_string(),
        };
        out.row(vec![
            ci.value().to_string(),
            show(n.level()),
            show(m.value()),
            neg.value().to_string(),
            show(m_neg.value()),
            word(holds),
            word(bound),
        ]);
        rows.push(json!({
            "index": ci.value(),
            "n": n,
            "m": m,
            "neg_index": neg.value(),
            "m_neg": m_neg.value,
            "inequality": holds,
            "upper_bound": bound,
        }));
    }
    out.json = json!({ "config": config_json(&ctx), "n_max": n_max, "m_cap": m_cap, "rows": rows });
    Ok((out, code))
}

pub fn sinnott(cfg: &RunConfig, i: Option<i64>) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    let n = cfg.level.unwrap_or(1);
    let ring = GroupRing::new(&ctx, n)?;
    let w = kernel_witness(&ctx, n)?;
    let f = sinnott_map(&ctx, &w)?;
    let zero = f.is_zero() && !w.is_zero();
    let mut out = Report::new(Value::Null, &["y", "s(witness)(y)"]);
    for (y, v) in f.values.iter().enumerate() {
        out.row(vec![y.to_string(), output::padic(v)]);
    }
    out.notes.push(format!("witness: {}", output::group_ring(&ring, &w)));
    out.notes.push(format!("zero function: {zero}"));
    let mut code = if zero { OK } else { FAILED };
    let mut doc = json!({
        "config": config_json(&ctx),
        "level": n,
        "witness": output::group_ring_json(&ring, &w),
        "values": f.values,
        "zero_function": zero,
    });
    if let Some(i) = i {
        let ci = character(&ctx, i)?;
        let d = cfg.xdeg.unwrap_or_else(|| default_cutoff(&ctx, n));
        let reports = stick_lfun_all(&ctx, ci, n, d)?;
        let agree = reports.iter().all(|r| r.agree());
        out.notes.push(format!("s_n(Θ_n(X, ω^-{})) = L_𝔭(X, -y, ω^{}) mod π^{}: {agree}", ci.value(), ci.value(), n + 1));
        if !agree {
            code = FAILED;
        }
        doc["stick_lfun"] = json!(reports);
    }
    out.json = doc;
    Ok((out, code))
}

pub struct ZetaArgs {
    pub j: Option<u64>,
    pub x: Option<i64>,
    pub y: Option<i64>,
    pub target: Option<i64>,
    pub euler: Option<usize>,
}

pub fn zeta(cfg: &RunConfig, a: &ZetaArgs) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    if let Some(j) = a.j {
        let z = zeta_neg(&ctx, j);
        let mut out = Report::new(json!({ "config": config_json(&ctx), "j": j, "value": z }), &["j", "zeta(-j)"]);
        out.row(vec![j.to_string(), z.to_string()]);
        return Ok((out, OK));
    }
    let (Some(k), Some(y)) = (a.x, a.y) else {
        return Err(Error::Precondition("zeta needs --j, or --x and --y".into()));
    };
    // x = θ^k has v_∞(x) = -k
    let x = LaurentElem::theta_pow(k);
    let target = a.target.unwrap_or(8);
    let digits = cfg.ydigits.unwrap_or_else(|| zeta_infty_digits(&ctx, x.val(), target));
    let y = exponent(&ctx, y, digits)?;
    let mut doc = json!({ "config": config_json(&ctx), "x_theta_power": k, "y": y, "target": target });
    let mut out = Report::new(Value::Null, &["quantity", "value"]);
    let mut code = OK;
    if let Some(d) = a.euler {
        let r = infinity_interpolation_check(&ctx, &x, &y, d, target)?;
        out.row(vec!["euler product".into(), output::laurent(&r.euler_product)]);
        out.row(vec!["zeta side".into(), output::laurent(&r.zeta_side)]);
        out.notes.push(format!("primes used: {}, certified to t^{}, agree: {}", r.primes_used, r.certified, r.agree));
        if !r.agree {
            code = FAILED;
        }
        doc["interpolation"] = json!(r);
    } else {
        let z = zeta_infty(&ctx, &x, &y, target)?;
        out.row(vec!["zeta(x, y)".into(), output::laurent(&z.value)]);
        out.notes.push(format!("blocks: {}, certified to t^{}", z.blocks, z.certified));
        doc["zeta"] = json!(z);
    }
    out.json = doc;
    Ok((out, code))
}

pub fn lvaluations(cfg: &RunConfig, i: Option<i64>) -> Result<(Report, i32)> {
    let ctx = cfg.context()?;
    let prec = cfg.prec.unwrap_or(DEFAULT_PREC);
    let digits = cfg.ydigits.unwrap_or_else(|| digits_for_precision(ctx.p(), u64::from(prec)));
    let padic = ctx.padic();
    let mut out = Report::new(Value::Null, &["i", "y", "v(L(1))", "v(L'(1))"]);
    let mut rows = Vec::new();
    for ci in characters(&ctx, i)? {
        for y in ZpApprox::all_classes(ctx.p(), digits)? {
            let l = lfunction_exact(&ctx, ci, &y, prec)?;
            let (v, dv) = (padic.valuation(&l.eval_one(padic)), padic.valuation(&l.derivative_at_one(padic)));
            out.row(vec![ci.value().to_string(), y.value().to_string(), v.to_string(), dv.to_string()]);
            rows.push(json!({ "index": ci.value(), "y": y.value(), "value": v, "derivative": dv }));
        }
    }
    out.json = json!({ "config": config_json(&ctx), "precision": prec, "digits": digits, "rows": rows });
    Ok((out, OK))
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<(Report, i32)> {
    let matrix = if cfg.explicit { Matrix::single(cfg.context()?) } else { Matrix::desk()? };
    let report = run_suite(suite, &matrix);
    let mut out = Report::new(serde_json::to_value(&report).expect("reports serialize"), &["suite", "cases", "failures"]);
    let subs = if report.suites.is_empty() { std::slice::from_ref(&report) } else { &report.suites[..] };
    for s in subs {
        out.row(vec![s.suite.clone(), s.cases.to_string(), s.failures.len().to_string()]);
    }
    for f in &report.failures {
        out.notes.push(format!("FAIL {} {:?}: {} inputs={}", f.case, f.kind, f.detail, f.inputs));
    }
    let code = if report.has_guard_failure() {
        GUARD
    } else if report.passed() {
        OK
    } else {
        FAILED
    };
    Ok((out, code))
}
