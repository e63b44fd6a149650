//! Line-based run configuration: `[section]` headers and `key = value` pairs.

use std::collections::BTreeMap;

use super::expr::{parse_a_poly, parse_fp_poly};
use crate::algebra::{fq::fmt_fp_poly, APoly, FieldSpec, FiniteField, PolyRing};
use crate::error::{Error, Result};
use crate::fields::{carlitz_cyclotomic_deg1, trivial_extension, ExtensionData, PrimeOfA};
use crate::grpring::GroupAlgebra;
use crate::tmodule::{carlitz_tensor, make_carlitz, make_drinfeld, TModuleSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Jsonl,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(Error::Config(format!("unknown format '{s}' (expected text or jsonl)"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExtensionChoice {
    Trivial,
    CarlitzCyclotomic { prime: APoly },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleChoice {
    Carlitz,
    /// phi(t) = t + a_1 tau + ... + a_r tau^r
    Drinfeld { coeffs: Vec<APoly> },
    CarlitzTensor { m: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub extension: ExtensionChoice,
    pub module: ModuleChoice,
    /// The set S of finite primes, as monic irreducibles.
    pub taming_set: Vec<APoly>,
    pub precision: usize,
    /// Largest prime degree the adaptive cutoff may reach.
    pub max_prime_degree: Option<usize>,
    /// Twist for theta-m and cs-check.
    pub m: Option<usize>,
    pub format: Format,
    /// Input element for the monic command.
    pub element: Option<String>,
}

/// Everything a command needs, built from a validated config.
pub struct Context {
    pub fq: FiniteField,
    pub x: ExtensionData,
    pub alg: GroupAlgebra,
    pub e: TModuleSpec,
    pub s: Vec<PrimeOfA>,
}

const KEYS: &[(&str, &[&str])] = &[
    ("field", &["p", "r", "modulus"]),
    ("extension", &["kind", "prime"]),
    ("module", &["kind", "coeffs", "m"]),
    ("taming", &["set"]),
    ("run", &["precision", "max_prime_degree", "m", "format"]),
    ("input", &["element"]),
];

struct Entry {
    value: String,
    line: usize,
}

type Raw = BTreeMap<(String, String), Entry>;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::ConfigSyntax { line, msg: msg.into() }
}

fn read_raw(text: &str) -> Result<Raw> {
    let mut raw = Raw::new();
    let mut section: Option<String> = None;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let l = full.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| syntax(line, "unterminated section header"))?.trim();
            if !KEYS.iter().any(|(s, _)| *s == name) {
                return Err(syntax(line, format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let (k, v) = l.split_once('=').ok_or_else(|| syntax(line, "expected 'key = value'"))?;
        let (k, v) = (k.trim(), v.trim());
        let sec = section.as_deref().ok_or_else(|| syntax(line, "key outside of a section"))?;
        let allowed = KEYS.iter().find(|(s, _)| *s == sec).map(|(_, ks)| *ks).unwrap_or(&[]);
        if !allowed.contains(&k) {
            return Err(syntax(line, format!("unknown key '{k}' in [{sec}]")));
        }
        if v.is_empty() {
            return Err(syntax(line, format!("empty value for '{k}'")));
        }
        let key = (sec.to_string(), k.to_string());
        if let Some(prev) = raw.get(&key) {
            return Err(syntax(line, format!("duplicate key '{k}' (first set on line {})", prev.line)));
        }
        raw.insert(key, Entry { value: v.to_string(), line });
    }
    Ok(raw)
}

fn get<'a>(raw: &'a Raw, sec: &str, key: &str) -> Option<&'a Entry> {
    raw.get(&(sec.to_string(), key.to_string()))
}

fn int<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T> {
    e.value.parse().map_err(|_| syntax(e.line, format!("{what} must be a non-negative integer, got '{}'", e.value)))
}

fn poly_list(e: &Entry, fq: &FiniteField) -> Result<Vec<APoly>> {
    e.value
        .split(',')
        .map(|s| parse_a_poly(s.trim(), fq).map_err(|err| syntax(e.line, err.to_string())))
        .collect()
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw = read_raw(text)?;
    let p_entry = get(&raw, "field", "p").ok_or_else(|| Error::Config("[field] p is required".into()))?;
    let p: u32 = int(p_entry, "p")?;
    let r: u32 = match get(&raw, "field", "r") {
        Some(e) => int(e, "r")?,
        None => 1,
    };
    let modulus = match get(&raw, "field", "modulus") {
        Some(e) => parse_fp_poly(&e.value, p).map_err(|err| syntax(e.line, err.to_string()))?,
        None if r == 1 => vec![0, 1],
        None => return Err(Error::Config("[field] modulus is required when r > 1".into())),
    };
    let field = FieldSpec::new(p, r, modulus).map_err(|e| Error::Config(e.to_string()))?;
    let fq = FiniteField::new(&field)?;

    let extension = match get(&raw, "extension", "kind").map(|e| e.value.as_str()) {
        None | Some("trivial") => {
            if let Some(e) = get(&raw, "extension", "prime") {
                return Err(syntax(e.line, "'prime' only applies to carlitz_cyclotomic"));
            }
            ExtensionChoice::Trivial
        }
        Some("carlitz_cyclotomic") => {
            let e = get(&raw, "extension", "prime")
                .ok_or_else(|| Error::Config("carlitz_cyclotomic needs [extension] prime".into()))?;
            ExtensionChoice::CarlitzCyclotomic { prime: parse_a_poly(&e.value, &fq).map_err(|err| syntax(e.line, err.to_string()))? }
        }
        Some(other) => {
            let line = get(&raw, "extension", "kind").map_or(0, |e| e.line);
            return Err(syntax(line, format!("unknown extension kind '{other}'")));
        }
    };

    let kind_line = get(&raw, "module", "kind").map_or(0, |e| e.line);
    let coeffs = get(&raw, "module", "coeffs");
    let mod_m = get(&raw, "module", "m");
    let module = match get(&raw, "module", "kind").map(|e| e.value.as_str()) {
        None | Some("carlitz") => ModuleChoice::Carlitz,
        Some("drinfeld") => {
            let e = coeffs.ok_or_else(|| Error::Config("drinfeld needs [module] coeffs".into()))?;
            ModuleChoice::Drinfeld { coeffs: poly_list(e, &fq)? }
        }
        Some("carlitz_tensor") => {
            let e = mod_m.ok_or_else(|| Error::Config("carlitz_tensor needs [module] m".into()))?;
            ModuleChoice::CarlitzTensor { m: int(e, "m")? }
        }
        Some(other) => return Err(syntax(kind_line, format!("unknown module kind '{other}'"))),
    };
    match (&module, coeffs, mod_m) {
        (ModuleChoice::Drinfeld { .. }, _, Some(e)) | (ModuleChoice::CarlitzTensor { .. }, Some(e), _) => {
            return Err(syntax(e.line, "key does not apply to this module kind"));
        }
        (ModuleChoice::Carlitz, Some(e), _) | (ModuleChoice::Carlitz, _, Some(e)) => {
            return Err(syntax(e.line, "carlitz takes no parameters"));
        }
        _ => {}
    }

    let taming_set = match get(&raw, "taming", "set") {
        Some(e) => poly_list(e, &fq)?,
        None => vec![],
    };
    let precision = match get(&raw, "run", "precision") {
        Some(e) => int(e, "precision")?,
        None => 4,
    };
    let max_prime_degree = get(&raw, "run", "max_prime_degree").map(|e| int(e, "max_prime_degree")).transpose()?;
    let m = get(&raw, "run", "m").map(|e| int(e, "m")).transpose()?;
    let format = match get(&raw, "run", "format") {
        Some(e) => Format::parse(&e.value).map_err(|err| syntax(e.line, err.to_string()))?,
        None => Format::Text,
    };
    let element = get(&raw, "input", "element").map(|e| e.value.clone());
    let cfg = RunConfig { field, extension, module, taming_set, precision, max_prime_degree, m, format, element };
    cfg.context()?;
    Ok(cfg)
}

impl Default for RunConfig {
    /// Carlitz over the trivial extension of F_2, N = 4.
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::prime(2).expect("2 is prime"),
            extension: ExtensionChoice::Trivial,
            module: ModuleChoice::Carlitz,
            taming_set: vec![],
            precision: 4,
            max_prime_degree: None,
            m: None,
            format: Format::Text,
            element: None,
        }
    }
}

impl RunConfig {
    /// Builds the field, extension, group algebra, module and S; semantic errors become `Error::Config`.
    pub fn context(&self) -> Result<Context> {
        let cfg_err = |e: Error| match e {
            Error::Config(_) | Error::ConfigSyntax { .. } => e,
            other => Error::Config(other.to_string()),
        };
        if self.precision == 0 {
            return Err(Error::Config("precision must be at least 1".into()));
        }
        let fq = FiniteField::new(&self.field).map_err(cfg_err)?;
        let x = match &self.extension {
            ExtensionChoice::Trivial => trivial_extension(&fq),
            ExtensionChoice::CarlitzCyclotomic { prime } => carlitz_cyclotomic_deg1(&fq, prime).map_err(cfg_err)?,
        };
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).map_err(cfg_err)?;
        let e = match &self.module {
            ModuleChoice::Carlitz => make_carlitz(&fq),
            ModuleChoice::Drinfeld { coeffs } => make_drinfeld(&fq, coeffs.clone()).map_err(cfg_err)?,
            ModuleChoice::CarlitzTensor { m } => carlitz_tensor(&fq, *m).map_err(cfg_err)?,
        };
        let a = x.a();
        let s = self
            .taming_set
            .iter()
            .map(|p| PrimeOfA::new(&a, p.clone()))
            .collect::<Result<Vec<_>>>()
            .map_err(cfg_err)?;
        Ok(Context { fq, x, alg, e, s })
    }

    /// The canonical text form; `parse_config(serialize(c)) == c`.
    pub fn serialize(&self) -> String {
        let fq = FiniteField::new(&self.field).expect("validated field");
        let a = PolyRing::new(fq);
        let list = |v: &[APoly]| v.iter().map(|p| a.fmt_poly(p)).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        out += &format!(
            "[field]\np = {}\nr = {}\nmodulus = {}\n",
            self.field.p,
            self.field.r,
            fmt_fp_poly(&self.field.modulus, "x")
        );
        out += "\n[extension]\n";
        match &self.extension {
            ExtensionChoice::Trivial => out += "kind = trivial\n",
            ExtensionChoice::CarlitzCyclotomic { prime } => {
                out += &format!("kind = carlitz_cyclotomic\nprime = {}\n", a.fmt_poly(prime))
            }
        }
        out += "\n[module]\n";
        match &self.module {
            ModuleChoice::Carlitz => out += "kind = carlitz\n",
            ModuleChoice::Drinfeld { coeffs } => out += &format!("kind = drinfeld\ncoeffs = {}\n", list(coeffs)),
            ModuleChoice::CarlitzTensor { m } => out += &format!("kind = carlitz_tensor\nm = {m}\n"),
        }
        if !self.taming_set.is_empty() {
            out += &format!("\n[taming]\nset = {}\n", list(&self.taming_set));
        }
        out += &format!("\n[run]\nprecision = {}\n", self.precision);
        if let Some(d) = self.max_prime_degree {
            out += &format!("max_prime_degree = {d}\n");
        }
        if let Some(m) = self.m {
            out += &format!("m = {m}\n");
        }
        out += &format!("format = {}\n", self.format.as_str());
        if let Some(el) = &self.element {
            out += &format!("\n[input]\nelement = {el}\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = parse_config("[field]\np = 2\n").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.field.q(), 2);
        assert_eq!(c.precision, 4);
    }

    #[test]
    fn cyclotomic_over_f2_is_a_semantic_error() {
        let text = "[field]\np = 2\n[extension]\nkind = carlitz_cyclotomic\nprime = t\n";
        match parse_config(text) {
            Err(Error::Config(msg)) => assert!(msg.contains("q >= 3"), "{msg}"),
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("[field]\np = 2\nbogus = 1\n", 3),
            ("[field]\np = 2\n[nowhere]\n", 3),
            ("p = 2\n", 1),
            ("[field]\np = 2\np = 3\n", 3),
            ("[field]\np 2\n", 2),
            ("[field]\np = 2\n[run]\nprecision = many\n", 4),
            ("[field]\np = 2\n[module]\nkind = drinfeld\ncoeffs = t, 1/t\n", 5),
        ];
        for (text, line) in cases {
            match parse_config(text) {
                Err(Error::ConfigSyntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "# rank two over F_9\n[field]\np = 3\nr = 2\nmodulus = x^2 + 1\n\n[module]\nkind = drinfeld\n\
                    coeffs = 1,  t^2+x*t\n[taming]\nset = t+1 , t\n[run]\nprecision = 3\nm = 2\nformat = jsonl\n";
        let c = parse_config(text).unwrap();
        let canon = c.serialize();
        assert_eq!(parse_config(&canon).unwrap(), c);
        assert_eq!(parse_config(&canon).unwrap().serialize(), canon);
        assert!(canon.contains("coeffs = 1, t^2+x*t\n"), "{canon}");
    }

    #[test]
    fn reducible_modulus_and_bad_primes_are_rejected() {
        assert!(matches!(parse_config("[field]\np = 2\nr = 2\nmodulus = x^2 + 1\n"), Err(Error::Config(_))));
        assert!(matches!(parse_config("[field]\np = 2\n[taming]\nset = t^2 + 1\n"), Err(Error::Config(_))));
        assert!(matches!(parse_config("[field]\np = 4\n"), Err(Error::Config(_))));
    }
}
