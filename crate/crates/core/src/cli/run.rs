//! Command dispatch and report rendering.

use serde_json::{json, Map, Value};

use super::config::{Context, Format, RunConfig};
use super::expr::{parse_a_poly, parse_gr_laurent};
use crate::algebra::{enumerate_monic_irreducibles, Poly, PolyRing, EXACT};
use crate::error::{Error, Result};
use crate::fields::{reduction, KInfOps, PrimeOfA, TamingModule};
use crate::grpring::{GrElem, GrLaurent, GroupAlgebra};
use crate::lvalue::{theta_m, theta_with, CutoffPolicy, ThetaValue};
use crate::modsize::gsize;
use crate::nuclear::trace_check_with;
use crate::volume::{
    brumer_stark_check, coates_sinnott_check, etnf_check, regulator_index, taelman_data, volume_formula_check,
    FittingReport, TaelmanOptions,
};

pub const COMMANDS: &[&str] = &[
    "theta0",
    "theta-s",
    "theta-m",
    "gsize",
    "monic",
    "trace-check",
    "etnf-check",
    "hmodule",
    "expinv",
    "bs-check",
    "cs-check",
    "vol-check",
];

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A computation without an identity to check.
    Done,
    Pass,
    Fail,
}

impl Status {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Done | Status::Pass => EXIT_OK,
            Status::Fail => EXIT_FAIL,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Status::Done => "OK",
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub header: Vec<(String, String)>,
    /// Printed bare on its own line in text output.
    pub value: Option<String>,
    pub body: Vec<(String, String)>,
    /// One row per Euler factor or prime.
    pub audit: Vec<Vec<(String, String)>>,
    pub status: Status,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Jsonl => self.render_jsonl(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("# command: {}\n", self.command);
        for (k, v) in &self.header {
            out += &format!("# {k}: {v}\n");
        }
        if let Some(v) = &self.value {
            out += v;
            out.push('\n');
        }
        for (k, v) in &self.body {
            out += &format!("{k} = {v}\n");
        }
        for row in &self.audit {
            let cells: Vec<String> = row.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out += &format!("# {}\n", cells.join("  "));
        }
        out += &format!("result: {}\n", self.status.label());
        out
    }

    fn render_jsonl(&self) -> String {
        let obj = |kind: &str, pairs: &[(String, String)]| {
            let mut m = Map::new();
            m.insert("record".into(), json!(kind));
            for (k, v) in pairs {
                m.insert(k.clone(), json!(v));
            }
            Value::Object(m).to_string()
        };
        let mut lines = Vec::new();
        let mut head = self.header.clone();
        head.insert(0, ("command".into(), self.command.clone()));
        lines.push(obj("header", &head));
        for row in &self.audit {
            lines.push(obj("audit", row));
        }
        let mut body = self.body.clone();
        if let Some(v) = &self.value {
            body.insert(0, ("value".into(), v.clone()));
        }
        body.push(("status".into(), self.status.label().into()));
        lines.push(obj("result", &body));
        lines.join("\n") + "\n"
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision: Option<usize>,
    pub max_prime_degree: Option<usize>,
    pub set: Option<String>,
    pub m: Option<usize>,
    pub format: Option<Format>,
}

pub fn apply_overrides(mut cfg: RunConfig, ov: &Overrides) -> Result<RunConfig> {
    if let Some(n) = ov.precision {
        cfg.precision = n;
    }
    if let Some(d) = ov.max_prime_degree {
        cfg.max_prime_degree = Some(d);
    }
    if let Some(m) = ov.m {
        cfg.m = Some(m);
    }
    if let Some(f) = ov.format {
        cfg.format = f;
    }
    if let Some(s) = &ov.set {
        let fq = crate::algebra::FiniteField::new(&cfg.field)?;
        cfg.taming_set = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| parse_a_poly(p, &fq).map_err(|e| Error::Config(format!("--set: {e}"))))
            .collect::<Result<_>>()?;
    }
    cfg.context()?;
    Ok(cfg)
}

struct Fmt<'a> {
    alg: &'a GroupAlgebra,
}

impl Fmt<'_> {
    fn laurent(&self, x: &GrLaurent) -> String {
        self.alg.laurent_ring(EXACT).fmt_laurent(x)
    }

    fn poly(&self, p: &Poly<GrElem>) -> String {
        PolyRing::new(self.alg.gr.clone()).fmt_poly(p)
    }
}

fn header(cfg: &RunConfig, ctx: &Context, cutoff: Option<usize>) -> Vec<(String, String)> {
    let a = ctx.x.a();
    let s: Vec<String> = ctx.s.iter().map(|v| a.fmt_poly(&v.p)).collect();
    vec![
        ("field".into(), cfg.field.to_string()),
        ("group".into(), ctx.x.group.describe()),
        ("extension".into(), ctx.x.describe()),
        ("module".into(), format!("{} with phi(t) = {}", ctx.e.describe(), ctx.e.fmt_phi_t())),
        ("taming_set".into(), if s.is_empty() { "none".into() } else { s.join(", ") }),
        ("precision".into(), cfg.precision.to_string()),
        ("cutoff".into(), cutoff.map_or("none".into(), |d| d.to_string())),
    ]
}

fn policy(cfg: &RunConfig) -> CutoffPolicy {
    let mut p = CutoffPolicy::default();
    if let Some(d) = cfg.max_prime_degree {
        p.max_degree = d;
    }
    p
}

fn factor_audit(f: &Fmt, a: &crate::algebra::ARing, theta: &ThetaValue) -> Vec<Vec<(String, String)>> {
    theta
        .factors
        .iter()
        .filter(|fac| !fac.trivial_to(theta.precision))
        .map(|fac| {
            vec![
                ("prime".into(), a.fmt_poly(&fac.prime.p)),
                ("lie".into(), f.poly(&fac.num)),
                ("e".into(), f.poly(&fac.den)),
            ]
        })
        .collect()
}

fn twist(cfg: &RunConfig) -> usize {
    cfg.m.unwrap_or(1)
}

fn fitting_body(f: &Fmt, r: &FittingReport) -> Vec<(String, String)> {
    vec![
        ("theta".into(), f.laurent(&r.theta.value)),
        ("candidate".into(), f.laurent(&r.candidate)),
        ("h_dim".into(), r.h_dim.to_string()),
        ("h_size".into(), f.poly(&r.h_size)),
        ("contains".into(), r.contains.to_string()),
        ("equal".into(), r.equal.to_string()),
    ]
}

/// Runs one command; errors are returned for the caller to map to exit code 2 or 1.
pub fn run(command: &str, cfg: &RunConfig) -> Result<Report> {
    if !COMMANDS.contains(&command) {
        return Err(Error::Config(format!("unknown command '{command}' (expected one of {})", COMMANDS.join(", "))));
    }
    let ctx = cfg.context()?;
    let Context { alg, x, e, s, .. } = &ctx;
    let f = Fmt { alg };
    let a = x.a();
    let n = cfg.precision;
    let full = TamingModule::full(&a);
    let opts = TaelmanOptions { precision: n, ..TaelmanOptions::default() };
    let mut cutoff = None;
    let mut value = None;
    let mut body = Vec::new();
    let mut audit = Vec::new();
    let mut status = Status::Done;
    match command {
        "theta0" | "theta-s" | "theta-m" => {
            let theta = match command {
                "theta0" => theta_with(alg, e, x, &full, n, &[], policy(cfg))?,
                "theta-s" => theta_with(alg, e, x, &full, n, s, policy(cfg))?,
                _ => {
                    body.push(("m".into(), twist(cfg).to_string()));
                    theta_m(alg, e, x, s, twist(cfg), n)?
                }
            };
            cutoff = Some(theta.cutoff);
            value = Some(f.laurent(&theta.value));
            audit = factor_audit(&f, &a, &theta);
        }
        "gsize" => {
            let primes: Vec<PrimeOfA> = if s.is_empty() {
                let d = cfg.max_prime_degree.unwrap_or(1);
                (1..=d).flat_map(|k| enumerate_monic_irreducibles(&a, k)).map(|p| PrimeOfA { p }).collect()
            } else {
                s.clone()
            };
            for v in &primes {
                let (lie, em) = reduction(alg, x, &full, v, e)?;
                audit.push(vec![
                    ("prime".into(), a.fmt_poly(&v.p)),
                    ("lie".into(), f.poly(&gsize(alg, &lie)?)),
                    ("e".into(), f.poly(&gsize(alg, &em)?)),
                ]);
            }
            body.push(("primes".into(), primes.len().to_string()));
        }
        "monic" => {
            let text = cfg
                .element
                .as_ref()
                .ok_or_else(|| Error::Config("monic needs [input] element".into()))?;
            let y = parse_gr_laurent(text, alg).map_err(|e| Error::Config(format!("[input] element: {e}")))?;
            let (plus, unit) = alg.monic_part(&y)?;
            body.push(("input".into(), f.laurent(&y)));
            value = Some(f.laurent(&plus));
            body.push(("unit".into(), f.poly(&unit)));
        }
        "trace-check" => {
            let r = trace_check_with(alg, e, x, &full, n, policy(cfg))?;
            cutoff = Some(r.theta.cutoff);
            body.push(("theta".into(), f.laurent(&r.theta.value)));
            body.push(("det".into(), f.laurent(&r.det)));
            body.push(("residual".into(), f.laurent(&r.residual)));
            body.push(("depth".into(), r.depth.to_string()));
            audit = factor_audit(&f, &a, &r.theta);
            status = Status::from_pass(r.pass);
        }
        "etnf-check" => {
            let r = etnf_check(alg, e, x, n)?;
            cutoff = Some(r.theta.cutoff);
            body.push(("theta".into(), f.laurent(&r.theta.value)));
            body.push(("index".into(), f.laurent(&r.index)));
            body.push(("h_dim".into(), r.h_dim.to_string()));
            body.push(("h_size".into(), f.laurent(&r.h_size)));
            body.push(("product".into(), f.laurent(&r.product)));
            body.push(("volume_ratio".into(), f.laurent(&r.volume_ratio)));
            body.push(("residual".into(), f.laurent(&r.residual)));
            body.push(("depth".into(), r.depth.to_string()));
            status = Status::from_pass(r.pass);
        }
        "hmodule" | "expinv" => {
            let data = taelman_data(alg, e, x, &opts)?;
            body.push(("depth".into(), data.depth.to_string()));
            if command == "hmodule" {
                body.push(("dim".into(), data.h.dim().to_string()));
                for (c, cp) in data.h.charpolys.iter().enumerate() {
                    body.push((format!("charpoly[{c}]"), a.fmt_poly(cp)));
                }
                body.push(("gsize".into(), f.poly(&data.h.gsize_poly(alg)?)));
            } else {
                let kinf = KInfOps::new(x);
                for (c, frame) in data.lattice.vectors.iter().enumerate() {
                    for (j, vecs) in frame.iter().enumerate() {
                        let coords: Vec<String> = vecs.iter().map(|z| kinf.fmt(z)).collect();
                        body.push((format!("degree[{c},{j}]"), data.lattice.degrees[c][j].to_string()));
                        body.push((format!("lambda[{c},{j}]"), format!("({})", coords.join(", "))));
                    }
                }
                body.push(("index".into(), f.laurent(&regulator_index(alg, &data, n)?)));
                body.push(("search_degree".into(), data.lattice.search_degree.to_string()));
            }
        }
        "bs-check" | "cs-check" => {
            let r = if command == "bs-check" {
                brumer_stark_check(alg, e, x, n)?
            } else {
                body.push(("m".into(), twist(cfg).to_string()));
                coates_sinnott_check(alg, e, x, s, twist(cfg), n)?
            };
            cutoff = Some(r.theta.cutoff);
            body.extend(fitting_body(&f, &r));
            status = Status::from_pass(r.contains && (!alg.is_tame() || r.equal));
        }
        "vol-check" => {
            let r = volume_formula_check(alg, e, x, n)?;
            body.push(("det".into(), f.laurent(&r.det)));
            body.push(("vol1".into(), f.laurent(&r.vol1)));
            body.push(("vol2".into(), f.laurent(&r.vol2)));
            body.push(("ratio".into(), f.laurent(&r.ratio)));
            body.push(("residual".into(), f.laurent(&r.residual)));
            body.push(("depth".into(), r.depth.to_string()));
            status = Status::from_pass(r.pass);
        }
        _ => unreachable!("checked against COMMANDS"),
    }
    Ok(Report { command: command.into(), header: header(cfg, &ctx, cutoff), value, body, audit, status })
}

/// Runs a command and renders it; returns the exit code and the text for stdout and stderr.
pub fn execute(command: &str, cfg: &RunConfig) -> (i32, String, String) {
    match run(command, cfg) {
        Ok(r) => (r.status.exit_code(), r.render(cfg.format), String::new()),
        Err(e) => (error_code(&e), String::new(), format!("error: {e}\n")),
    }
}

/// Exit 2 for bad input, 1 when a computation could not be completed.
pub fn error_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;

    #[test]
    fn theta0_prints_the_zeta_value() {
        let cfg = RunConfig::default();
        let r = run("theta0", &cfg).unwrap();
        assert_eq!(r.value.as_deref(), Some("1 + t^-2 + t^-3 + t^-4 + O(t^-5)"));
        let text = r.render(Format::Text);
        assert!(text.lines().any(|l| l == "1 + t^-2 + t^-3 + t^-4 + O(t^-5)"));
        assert!(text.contains("# field: GF(2^1) mod x\n"));
        assert_eq!(r.status.exit_code(), 0);
    }

    #[test]
    fn jsonl_has_header_and_result_records() {
        let cfg = parse_config("[field]\np = 2\n[run]\nformat = jsonl\n").unwrap();
        let (code, out, _) = execute("trace-check", &cfg);
        assert_eq!(code, 0);
        let recs: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(recs[0]["record"], "header");
        assert_eq!(recs[0]["precision"], "4");
        let last = recs.last().unwrap();
        assert_eq!(last["record"], "result");
        assert_eq!(last["status"], "PASS");
    }

    #[test]
    fn unknown_command_is_an_input_error() {
        let (code, out, err) = execute("zeta", &RunConfig::default());
        assert_eq!(code, EXIT_INPUT);
        assert!(out.is_empty() && err.contains("unknown command"));
    }

    #[test]
    fn monic_of_a_scaled_polynomial() {
        let cfg = parse_config("[field]\np = 3\n[input]\nelement = 2*t^2 + 1\n").unwrap();
        let r = run("monic", &cfg).unwrap();
        assert_eq!(r.value.as_deref(), Some("t^2 + 2"));
    }

    #[test]
    fn overrides_take_precedence() {
        let ov = Overrides { precision: Some(2), set: Some("t, t+1".into()), ..Overrides::default() };
        let cfg = apply_overrides(RunConfig::default(), &ov).unwrap();
        assert_eq!(cfg.precision, 2);
        assert_eq!(cfg.taming_set.len(), 2);
        let bad = Overrides { set: Some("t^2+1".into()), ..Overrides::default() };
        assert!(matches!(apply_overrides(RunConfig::default(), &bad), Err(Error::Config(_))));
    }
}
