//! Problem dispatch and result documents.

use std::time::Instant;

use algint_core::basis::initial_suitable_basis;
use algint_core::polyred::additive_decompose;
use algint_core::{lazy_hermite_reduce, telescope, verify_telescoper, AlgElem, Certificate, Curve, Error, Poly, Qt, Rat, RatFunc, Telescoper};
use serde_json::{json, Map, Value};

use crate::expr::{parse_constant, parse_curve, parse_element, parse_expression, Coeffs, ParseError, ShapeError, Var};

/// Version tag carried by every structured document.
pub const SCHEMA: &str = "algint-result/1";

pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UPDATE: i32 = 4;
pub const EXIT_MAX_ORDER: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Reduce,
    Decompose,
    Integrate,
    Telescope,
    Verify,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Reduce => "reduce",
            Mode::Decompose => "decompose",
            Mode::Integrate => "integrate",
            Mode::Telescope => "telescope",
            Mode::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub curve: String,
    pub integrand: String,
    pub mode: Mode,
    pub max_order: usize,
    pub seed: Option<u64>,
    /// Comma-separated operator coefficients, for `verify`.
    pub operator: Option<String>,
    /// Certificate expression, for `verify`.
    pub certificate: Option<String>,
    pub timings: bool,
}

impl ProblemSpec {
    pub fn new(mode: Mode, curve: &str, integrand: &str) -> Self {
        ProblemSpec {
            curve: curve.into(),
            integrand: integrand.into(),
            mode,
            max_order: 20,
            seed: None,
            operator: None,
            certificate: None,
            timings: false,
        }
    }
}

/// A finished run: the document and the process exit status.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub doc: Value,
    pub exit_code: i32,
}

/// Process exit status for an engine error.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UpdateCandidatesExhausted(_) | Error::SuitabilityFailure(_) => EXIT_UPDATE,
        Error::MaxOrderExceeded { .. } => EXIT_MAX_ORDER,
        _ => EXIT_PRECONDITION,
    }
}

#[derive(Debug)]
enum Failure {
    Parse { input: &'static str, err: ParseError },
    Shape { input: &'static str, message: String },
    Engine(Error),
    Verification(String),
    Internal(String),
}

impl Failure {
    fn at(input: &'static str) -> impl Fn(ShapeError) -> Failure {
        move |e| match e {
            ShapeError::Parse(err) => Failure::Parse { input, err },
            ShapeError::Shape(message) => Failure::Shape { input, message },
            ShapeError::Engine(e) => Failure::Engine(e),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse { .. } => EXIT_PARSE,
            Failure::Shape { .. } => EXIT_PRECONDITION,
            Failure::Engine(e) => exit_code_for(e),
            Failure::Verification(_) | Failure::Internal(_) => EXIT_VERIFICATION,
        }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        let code = match self {
            Failure::Parse { input, err } => {
                m.insert("input".into(), json!(input));
                m.insert("offset".into(), json!(err.offset()));
                m.insert("message".into(), json!(err.to_string()));
                match err {
                    ParseError::Syntax { .. } => "syntax",
                    ParseError::UnknownVariable { .. } => "unknown-variable",
                }
            }
            Failure::Shape { input, message } => {
                m.insert("input".into(), json!(input));
                m.insert("message".into(), json!(message));
                "precondition"
            }
            Failure::Engine(e) => {
                m.insert("message".into(), json!(e.to_string()));
                match e {
                    Error::UpdateCandidatesExhausted(_) => "update-candidates-exhausted",
                    Error::SuitabilityFailure(_) => "suitability-failure",
                    Error::MaxOrderExceeded { trace, .. } => {
                        m.insert("rank_trace".into(), json!(trace));
                        "max-order-exceeded"
                    }
                    Error::CurveReducible { .. } => "curve-reducible",
                    _ => "precondition",
                }
            }
            Failure::Verification(message) => {
                m.insert("message".into(), json!(message));
                "verification"
            }
            Failure::Internal(message) => {
                m.insert("message".into(), json!(message));
                "internal"
            }
        };
        m.insert("code".into(), json!(code));
        Value::Object(m)
    }
}

/// Prints elements and records whether each printed form parses back to
/// the same value.
struct Emitter<'a, K: Coeffs> {
    curve: &'a Curve<K>,
    round_trips: bool,
}

impl<'a, K: Coeffs> Emitter<'a, K> {
    fn elem(&mut self, f: &AlgElem<K>) -> Value {
        let s = f.to_expr_string();
        if parse_element(self.curve, &s).ok().as_ref() != Some(f) {
            self.round_trips = false;
        }
        json!(s)
    }

    fn poly(&mut self, p: &Poly<K>) -> Value {
        self.elem(&self.curve.base(RatFunc::from_poly(p.clone())))
    }

    fn elems(&mut self, fs: &[AlgElem<K>]) -> Value {
        Value::Array(fs.iter().map(|f| self.elem(f)).collect())
    }

    fn constant(&mut self, c: &K) -> Value {
        let s = c.to_string();
        if parse_constant::<K>(&s).ok().as_ref() != Some(c) {
            self.round_trips = false;
        }
        json!(s)
    }

    fn curve(&mut self) -> Value {
        let s = self.curve.to_expr_string();
        match parse_curve::<K>(&s) {
            Ok(c) if c.defining_poly() == self.curve.defining_poly() => {}
            _ => self.round_trips = false,
        }
        json!(s)
    }
}

struct Payload {
    result: Value,
    verified: bool,
    update_log: Value,
    curve: Value,
}

/// Largest `t`-degree among the coefficients of a printed operator.
pub fn operator_degree(l: &Telescoper<Qt>) -> usize {
    l.coeffs.iter().map(|c| c.inner().numer().deg().max(c.inner().denom().deg()).max(0) as usize).max().unwrap_or(0)
}

fn run_in<K: Coeffs>(spec: &ProblemSpec) -> Result<Payload, Failure> {
    let curve = parse_curve::<K>(&spec.curve).map_err(Failure::at("curve"))?;
    let f = parse_element(&curve, &spec.integrand).map_err(Failure::at("integrand"))?;
    let mut em = Emitter { curve: &curve, round_trips: true };
    let curve_text = em.curve();
    let (result, verified, update_log) = match spec.mode {
        Mode::Reduce => {
            let w0 = initial_suitable_basis(&curve).map_err(Failure::Engine)?;
            let r = lazy_hermite_reduce(&curve, &f, &w0).map_err(Failure::Engine)?;
            let ok = &curve.dx(&r.g) + &r.h.to_elem() == f;
            let result = json!({
                "g": em.elem(&r.g),
                "h": em.elem(&r.h.to_elem()),
                "basis": em.elems(r.basis.elements()),
                "e": em.poly(r.basis.e()),
            });
            (result, ok, em.elems(&r.update_log))
        }
        Mode::Decompose | Mode::Integrate => {
            let dec = additive_decompose(&curve, &f).map_err(Failure::Engine)?;
            let integrable = dec.is_integrable();
            let ok = dec.reassemble(&curve) == f && (!integrable || curve.dx(&dec.g) == f);
            let anti = if integrable { em.elem(&dec.g) } else { Value::Null };
            let result = if spec.mode == Mode::Integrate {
                let rem = if integrable { Value::Null } else { em.elem(&dec.remainder()) };
                json!({ "integrable": integrable, "antiderivative": anti, "remainder": rem })
            } else {
                json!({
                    "integrable": integrable,
                    "antiderivative": anti,
                    "g": em.elem(&dec.g),
                    "d": em.poly(&dec.d),
                    "remainder_finite": em.elem(&dec.w.combine_poly(&dec.p, &dec.d)),
                    "remainder_infinite": em.elem(&dec.v.combine_poly(&dec.q, &dec.a)),
                    "u": em.poly(&dec.u),
                    "basis_w": em.elems(dec.w.elements()),
                    "basis_v": em.elems(dec.v.elements()),
                })
            };
            (result, ok, em.elems(&dec.update_log))
        }
        Mode::Telescope | Mode::Verify => unreachable!("handled over Q(t)"),
    };
    if !em.round_trips {
        return Err(Failure::Verification("an emitted expression does not parse back to itself".into()));
    }
    Ok(Payload { result, verified, update_log, curve: curve_text })
}

fn run_param(spec: &ProblemSpec) -> Result<Payload, Failure> {
    let curve = parse_curve::<Qt>(&spec.curve).map_err(Failure::at("curve"))?;
    let f = parse_element(&curve, &spec.integrand).map_err(Failure::at("integrand"))?;
    let mut em = Emitter { curve: &curve, round_trips: true };
    let curve_text = em.curve();
    let (l, g) = if spec.mode == Mode::Verify {
        let op = spec.operator.as_deref().ok_or_else(|| Failure::Shape { input: "operator", message: "verify needs --operator".into() })?;
        let cert = spec
            .certificate
            .as_deref()
            .ok_or_else(|| Failure::Shape { input: "certificate", message: "verify needs --certificate".into() })?;
        let coeffs = op.split(',').map(parse_constant::<Qt>).collect::<Result<Vec<_>, _>>().map_err(Failure::at("operator"))?;
        let g = parse_element(&curve, cert).map_err(Failure::at("certificate"))?;
        (Telescoper { coeffs }, Certificate { g })
    } else {
        telescope(&curve, &f, spec.max_order).map_err(Failure::Engine)?
    };
    let verified = verify_telescoper(&curve, &l, &g, &f);
    let operator: Vec<Value> = l.coeffs.iter().map(|c| em.constant(c)).collect();
    let result = json!({
        "order": l.order(),
        "degree": operator_degree(&l),
        "operator": operator,
        "certificate": em.elem(&g.g),
    });
    if !em.round_trips {
        return Err(Failure::Verification("an emitted expression does not parse back to itself".into()));
    }
    Ok(Payload { result, verified, update_log: json!([]), curve: curve_text })
}

/// Run one problem. Never panics on bad input; every failure becomes an
/// error document with a nonzero exit status.
pub fn run(spec: &ProblemSpec) -> RunOutput {
    let start = Instant::now();
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("mode".into(), json!(spec.mode.name()));
    let mut input = Map::new();
    input.insert("curve".into(), json!(spec.curve));
    input.insert("integrand".into(), json!(spec.integrand));
    if spec.mode == Mode::Telescope {
        input.insert("max_order".into(), json!(spec.max_order));
    }
    if let Some(op) = &spec.operator {
        input.insert("operator".into(), json!(op));
    }
    if let Some(c) = &spec.certificate {
        input.insert("certificate".into(), json!(c));
    }
    if let Some(s) = spec.seed {
        input.insert("seed".into(), json!(s));
    }
    doc.insert("input".into(), Value::Object(input));

    let outcome = choose_field(spec).and_then(|param| {
        doc.insert("field".into(), json!(if param { Qt::NAME } else { Rat::NAME }));
        let go = || match (param, spec.mode) {
            (_, Mode::Telescope | Mode::Verify) => run_param(spec),
            (true, _) => run_in::<Qt>(spec),
            (false, _) => run_in::<Rat>(spec),
        };
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(go)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "engine panicked".into());
            Err(Failure::Internal(msg))
        })
    });
    let exit_code = match outcome {
        Ok(p) => {
            doc.insert("curve".into(), p.curve);
            doc.insert("result".into(), p.result);
            doc.insert("update_log".into(), p.update_log);
            doc.insert("verified".into(), json!(p.verified));
            let must_verify = spec.mode != Mode::Verify;
            if p.verified {
                0
            } else if must_verify {
                let f = Failure::Verification("the computed identity does not hold".into());
                doc.insert("error".into(), f.to_json());
                f.exit_code()
            } else {
                EXIT_VERIFICATION
            }
        }
        Err(f) => {
            doc.insert("error".into(), f.to_json());
            f.exit_code()
        }
    };
    if spec.timings {
        doc.insert("wall_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    }
    doc.insert("exit_code".into(), json!(exit_code));
    RunOutput { doc: Value::Object(doc), exit_code }
}

/// Whether the problem needs `K = ℚ(t)`. Also surfaces syntax errors.
fn choose_field(spec: &ProblemSpec) -> Result<bool, Failure> {
    let c = parse_expression(&spec.curve).map_err(|err| Failure::Parse { input: "curve", err })?;
    let f = parse_expression(&spec.integrand).map_err(|err| Failure::Parse { input: "integrand", err })?;
    Ok(matches!(spec.mode, Mode::Telescope | Mode::Verify) || c.mentions(Var::T) || f.mentions(Var::T))
}

/// Human-readable rendering of a document.
pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    let get = |k: &str| doc.get(k).cloned().unwrap_or(Value::Null);
    out.push_str(&format!("mode: {}\n", get("mode").as_str().unwrap_or("?")));
    if let Some(c) = doc.get("curve").and_then(Value::as_str) {
        out.push_str(&format!("curve: {c} = 0 over {}\n", get("field").as_str().unwrap_or("?")));
    }
    if let Some(r) = doc.get("result").and_then(Value::as_object) {
        for (k, v) in r {
            match v {
                Value::Array(xs) => {
                    out.push_str(&format!("{k}:\n"));
                    for x in xs {
                        out.push_str(&format!("  {}\n", plain(x)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", plain(v))),
            }
        }
    }
    if let Some(log) = doc.get("update_log").and_then(Value::as_array) {
        if !log.is_empty() {
            out.push_str("basis updates:\n");
            for x in log {
                out.push_str(&format!("  {}\n", plain(x)));
            }
        }
    }
    if let Some(v) = doc.get("verified") {
        out.push_str(&format!("verified: {}\n", plain(v)));
    }
    if let Some(e) = doc.get("error") {
        out.push_str(&format!("error [{}]: {}\n", plain(&e["code"]), plain(&e["message"])));
    }
    if let Some(ms) = doc.get("wall_ms").and_then(Value::as_f64) {
        out.push_str(&format!("time: {ms:.1} ms\n"));
    }
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
