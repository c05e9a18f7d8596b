//! Experiment configuration: TOML sections, defaults, overrides and validation.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};
use toml::{Table, Value};

use super::error::{ConfigError, ConfigProblem};
use crate::diagnostics::{DiagnosticFlags, VirialParams};
use crate::evolution::Integrator;
use crate::spectral::ModelParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridConfig {
    pub n_points: usize,
    pub length: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeConfig {
    pub dt: f64,
    pub t_end: f64,
    pub checkpoint_stride: usize,
    pub integrator: Integrator,
    pub dealias: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialKind {
    Gaussian,
    Soliton,
    /// Little-endian `f64` samples, one per grid node.
    File,
}

impl InitialKind {
    fn name(self) -> &'static str {
        match self {
            InitialKind::Gaussian => "gaussian",
            InitialKind::Soliton => "soliton",
            InitialKind::File => "file",
        }
    }
}

/// Initial datum; the Gaussian is `amplitude · exp(-((x - center)/width)²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialConfig {
    pub kind: InitialKind,
    pub amplitude: f64,
    pub width: f64,
    pub center: f64,
    pub soliton_speed: f64,
    pub path: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    pub virial: VirialParams,
    pub flags: DiagnosticFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputFormat {
    Csv,
    Binary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputConfig {
    pub directory: String,
    pub formats: Vec<OutputFormat>,
}

impl OutputConfig {
    pub fn wants(&self, format: OutputFormat) -> bool {
        self.formats.contains(&format)
    }
}

/// Depth sweeps for the deep- and shallow-water comparisons.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitsConfig {
    pub deep_deltas: Vec<f64>,
    pub shallow_deltas: Vec<f64>,
    /// Comparison time (KdV time for the shallow sweep).
    pub horizon: f64,
    pub dt_kdv: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequalityConfig {
    pub enabled: bool,
    pub battery_size: usize,
}

/// Fully validated experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub model: ModelParams,
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub initial: InitialConfig,
    pub diagnostics: DiagnosticsConfig,
    pub output: OutputConfig,
    pub limits: LimitsConfig,
    pub inequalities: InequalityConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            model: ModelParams { delta: 1.0 },
            grid: GridConfig { n_points: 1024, length: 200.0 },
            time: TimeConfig {
                dt: 1e-3,
                t_end: 5.0,
                checkpoint_stride: 100,
                integrator: Integrator::default(),
                dealias: true,
            },
            initial: InitialConfig {
                kind: InitialKind::Gaussian,
                amplitude: 1.0,
                width: 1.0,
                center: 0.0,
                soliton_speed: 1.5,
                path: None,
            },
            diagnostics: DiagnosticsConfig { virial: VirialParams::default(), flags: DiagnosticFlags::default() },
            output: OutputConfig { directory: "runs".into(), formats: vec![OutputFormat::Csv, OutputFormat::Binary] },
            limits: LimitsConfig { deep_deltas: vec![5.0, 20.0, 50.0], shallow_deltas: vec![0.1, 0.3], horizon: 1.0, dt_kdv: 1e-3 },
            inequalities: InequalityConfig { enabled: false, battery_size: 12 },
        }
    }
}

/// Typed reads from one section, remembering which keys were consumed.
struct Section<'a> {
    name: &'static str,
    table: Option<&'a Table>,
    used: BTreeSet<&'static str>,
    problems: Vec<ConfigProblem>,
}

impl<'a> Section<'a> {
    fn new(root: &'a Table, name: &'static str, problems: &mut Vec<ConfigProblem>) -> Self {
        let table = match root.get(name) {
            None => None,
            Some(Value::Table(t)) => Some(t),
            Some(_) => {
                problems.push(ConfigProblem::Invalid { key: name.into(), message: "must be a table".into() });
                None
            }
        };
        Self { name, table, used: BTreeSet::new(), problems: Vec::new() }
    }

    fn key(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a Value> {
        self.used.insert(key);
        self.table.and_then(|t| t.get(key))
    }

    fn bad(&mut self, key: &str, message: impl Into<String>) {
        let key = self.key(key);
        self.problems.push(ConfigProblem::Invalid { key, message: message.into() });
    }

    fn f64(&mut self, key: &'static str, default: f64) -> f64 {
        match self.raw(key) {
            None => default,
            Some(Value::Float(v)) => *v,
            Some(Value::Integer(v)) => *v as f64,
            Some(other) => {
                self.bad(key, format!("expected a number, found {}", other.type_str()));
                default
            }
        }
    }

    fn int(&mut self, key: &'static str, default: i64) -> i64 {
        match self.raw(key) {
            None => default,
            Some(Value::Integer(v)) => *v,
            Some(other) => {
                self.bad(key, format!("expected an integer, found {}", other.type_str()));
                default
            }
        }
    }

    fn usize(&mut self, key: &'static str, default: usize) -> usize {
        let v = self.int(key, default as i64);
        if v < 0 {
            self.bad(key, format!("{v} must be non-negative"));
            return default;
        }
        v as usize
    }

    fn bool(&mut self, key: &'static str, default: bool) -> bool {
        match self.raw(key) {
            None => default,
            Some(Value::Boolean(v)) => *v,
            Some(other) => {
                self.bad(key, format!("expected a boolean, found {}", other.type_str()));
                default
            }
        }
    }

    fn string(&mut self, key: &'static str) -> Option<String> {
        match self.raw(key) {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => {
                self.bad(key, format!("expected a string, found {}", other.type_str()));
                None
            }
        }
    }

    fn list(&mut self, key: &'static str) -> Option<&'a Vec<Value>> {
        match self.raw(key) {
            None => None,
            Some(Value::Array(a)) => Some(a),
            Some(other) => {
                self.bad(key, format!("expected an array, found {}", other.type_str()));
                None
            }
        }
    }

    fn f64_list(&mut self, key: &'static str, default: &[f64]) -> Vec<f64> {
        let Some(items) = self.list(key) else { return default.to_vec() };
        let mut out = Vec::with_capacity(items.len());
        for v in items {
            match v {
                Value::Float(x) => out.push(*x),
                Value::Integer(x) => out.push(*x as f64),
                other => {
                    self.bad(key, format!("expected numbers, found {}", other.type_str()));
                    return default.to_vec();
                }
            }
        }
        out
    }

    fn finish(self, problems: &mut Vec<ConfigProblem>) {
        if let Some(t) = self.table {
            for k in t.keys() {
                if !self.used.contains(k.as_str()) {
                    problems.push(ConfigProblem::UnknownKey(format!("{}.{k}", self.name)));
                }
            }
        }
        problems.extend(self.problems);
    }
}

const SECTIONS: [&str; 8] = ["model", "grid", "time", "initial", "diagnostics", "output", "limits", "inequalities"];

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
    (line, column)
}

/// Parse a TOML document into a table, reporting syntax errors with position.
pub fn parse_document(text: &str) -> Result<Table, ConfigError> {
    text.parse::<Table>().map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
        ConfigError::single(ConfigProblem::Syntax { line, column, message: e.message().trim().to_string() })
    })
}

/// Parse and validate a configuration document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    parse_config_with_overrides(text, &[])
}

/// As [`parse_config`], applying `section.key = value` overrides first.
pub fn parse_config_with_overrides(text: &str, overrides: &[(String, String)]) -> Result<ExperimentConfig, ConfigError> {
    let mut table = parse_document(text)?;
    let mut problems = Vec::new();
    for (key, value) in overrides {
        if let Err(p) = apply_override(&mut table, key, value) {
            problems.push(p);
        }
    }
    match from_table(&table) {
        Ok(cfg) if problems.is_empty() => Ok(cfg),
        Ok(_) => Err(ConfigError { problems }),
        Err(e) => {
            problems.extend(e.problems);
            Err(ConfigError { problems })
        }
    }
}

/// Set `key` (`section.name` or a top-level name) to `raw`, read as a TOML value
/// when possible and as a string otherwise.
pub fn apply_override(table: &mut Table, key: &str, raw: &str) -> Result<(), ConfigProblem> {
    let value = format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    match parts.as_slice() {
        [name] if !name.is_empty() => {
            table.insert(name.to_string(), value);
            Ok(())
        }
        [section, name] if !section.is_empty() && !name.is_empty() => {
            let entry = table.entry(section.to_string()).or_insert_with(|| Value::Table(Table::new()));
            match entry {
                Value::Table(t) => {
                    t.insert(name.to_string(), value);
                    Ok(())
                }
                _ => Err(ConfigProblem::Invalid { key: section.to_string(), message: "must be a table".into() }),
            }
        }
        _ => Err(ConfigProblem::Invalid { key: key.into(), message: "overrides take the form section.key=value".into() }),
    }
}

/// Build and validate a configuration from a parsed document.
pub fn from_table(root: &Table) -> Result<ExperimentConfig, ConfigError> {
    let d = ExperimentConfig::default();
    let mut problems = Vec::new();
    for key in root.keys() {
        if key != "seed" && !SECTIONS.contains(&key.as_str()) {
            problems.push(ConfigProblem::UnknownKey(key.clone()));
        }
    }
    let seed = match root.get("seed") {
        None => d.seed,
        Some(Value::Integer(v)) if *v >= 0 => *v as u64,
        Some(other) => {
            problems.push(ConfigProblem::Invalid { key: "seed".into(), message: format!("expected a non-negative integer, found {other}") });
            d.seed
        }
    };

    let mut s = Section::new(root, "model", &mut problems);
    let model = ModelParams { delta: s.f64("delta", d.model.delta) };
    if !(model.delta.is_finite() && model.delta > 0.0) {
        s.bad("delta", format!("delta = {} must be positive", model.delta));
    }
    s.finish(&mut problems);

    let mut s = Section::new(root, "grid", &mut problems);
    let grid = GridConfig { n_points: s.usize("n_points", d.grid.n_points), length: s.f64("length", d.grid.length) };
    if grid.n_points < 16 || grid.n_points % 2 != 0 {
        s.bad("n_points", format!("n_points = {} must be even and at least 16", grid.n_points));
    }
    if !(grid.length.is_finite() && grid.length > 0.0) {
        s.bad("length", format!("length = {} must be positive", grid.length));
    }
    s.finish(&mut problems);

    let mut s = Section::new(root, "time", &mut problems);
    let dt = s.f64("dt", d.time.dt);
    let t_end = s.f64("t_end", d.time.t_end);
    let checkpoint_stride = s.usize("checkpoint_stride", d.time.checkpoint_stride);
    let integrator = match s.raw("integrator") {
        None => d.time.integrator,
        Some(v) => v.clone().try_into::<Integrator>().unwrap_or_else(|_| {
            s.bad("integrator", format!("unknown integrator {v}; use \"integrating-factor-rk4\" or \"etd-rk4\""));
            d.time.integrator
        }),
    };
    let dealias = s.bool("dealias", d.time.dealias);
    if !(dt.is_finite() && dt > 0.0) {
        s.bad("dt", format!("dt = {dt} must be positive"));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        s.bad("t_end", format!("t_end = {t_end} must be non-negative"));
    }
    if checkpoint_stride == 0 {
        s.bad("checkpoint_stride", "must be at least 1");
    }
    s.finish(&mut problems);
    let time = TimeConfig { dt, t_end, checkpoint_stride, integrator, dealias };

    let mut s = Section::new(root, "initial", &mut problems);
    let kind = match s.string("kind").as_deref() {
        None | Some("gaussian") => InitialKind::Gaussian,
        Some("soliton") => InitialKind::Soliton,
        Some("file") => InitialKind::File,
        Some(other) => {
            s.bad("kind", format!("unknown kind \"{other}\"; use gaussian, soliton or file"));
            InitialKind::Gaussian
        }
    };
    let initial = InitialConfig {
        kind,
        amplitude: s.f64("amplitude", d.initial.amplitude),
        width: s.f64("width", d.initial.width),
        center: s.f64("center", d.initial.center),
        soliton_speed: s.f64("soliton_speed", d.initial.soliton_speed),
        path: s.string("path"),
    };
    if !initial.amplitude.is_finite() {
        s.bad("amplitude", "must be finite");
    }
    if !(initial.width.is_finite() && initial.width > 0.0) {
        s.bad("width", format!("width = {} must be positive", initial.width));
    }
    if !(initial.center.is_finite() && initial.center.abs() < 0.5 * grid.length) {
        s.bad("center", format!("center = {} must lie inside the box (-{L}, {L})", initial.center, L = 0.5 * grid.length));
    }
    if kind == InitialKind::Soliton && !(initial.soliton_speed > 1.0 / model.delta) {
        s.bad(
            "soliton_speed",
            format!("c = {} must exceed 1/delta = {}", initial.soliton_speed, 1.0 / model.delta),
        );
    }
    if kind == InitialKind::File && initial.path.as_deref().map_or(true, str::is_empty) {
        s.bad("path", "kind = \"file\" needs a path");
    }
    s.finish(&mut problems);

    let mut s = Section::new(root, "diagnostics", &mut problems);
    let dv = d.diagnostics.virial;
    let virial = VirialParams {
        b: s.f64("b", dv.b),
        m: s.f64("m", dv.m),
        q_exp: s.f64("q_exp", dv.q_exp),
        sigma: s.f64("sigma", dv.sigma),
        lambda: s.f64("lambda", dv.lambda),
        alpha: s.f64("alpha", dv.alpha),
        c0: s.f64("c0", dv.c0),
        c1: s.f64("c1", dv.c1),
        corollary: s.bool("corollary", dv.corollary),
    };
    let df = d.diagnostics.flags;
    let flags = DiagnosticFlags {
        region_masses: s.bool("region_masses", df.region_masses),
        functionals: s.bool("functionals", df.functionals),
        smoothing: s.bool("smoothing", df.smoothing),
    };
    for (key, message) in virial.violations() {
        s.bad(key, message);
    }
    s.finish(&mut problems);

    let mut s = Section::new(root, "output", &mut problems);
    let directory = s.string("directory").unwrap_or(d.output.directory.clone());
    if directory.is_empty() {
        s.bad("directory", "must not be empty");
    }
    let formats = match s.list("formats") {
        None => d.output.formats.clone(),
        Some(items) => {
            let mut out = BTreeSet::new();
            for v in items {
                match v.as_str() {
                    Some("csv") => {
                        out.insert(OutputFormat::Csv);
                    }
                    Some("binary") => {
                        out.insert(OutputFormat::Binary);
                    }
                    _ => s.bad("formats", format!("unknown format {v}; use \"csv\" or \"binary\"")),
                }
            }
            out.into_iter().collect()
        }
    };
    s.finish(&mut problems);
    let output = OutputConfig { directory, formats };

    let mut s = Section::new(root, "limits", &mut problems);
    let limits = LimitsConfig {
        deep_deltas: s.f64_list("deep_deltas", &d.limits.deep_deltas),
        shallow_deltas: s.f64_list("shallow_deltas", &d.limits.shallow_deltas),
        horizon: s.f64("horizon", d.limits.horizon),
        dt_kdv: s.f64("dt_kdv", d.limits.dt_kdv),
    };
    if limits.deep_deltas.iter().chain(&limits.shallow_deltas).any(|v| !(v.is_finite() && *v > 0.0)) {
        s.bad("deep_deltas", "depths must be positive");
    }
    if !(limits.horizon.is_finite() && limits.horizon > 0.0) {
        s.bad("horizon", format!("horizon = {} must be positive", limits.horizon));
    }
    if !(limits.dt_kdv.is_finite() && limits.dt_kdv > 0.0) {
        s.bad("dt_kdv", format!("dt_kdv = {} must be positive", limits.dt_kdv));
    }
    s.finish(&mut problems);

    let mut s = Section::new(root, "inequalities", &mut problems);
    let inequalities = InequalityConfig {
        enabled: s.bool("enabled", d.inequalities.enabled),
        battery_size: s.usize("battery_size", d.inequalities.battery_size),
    };
    if inequalities.battery_size < 2 {
        s.bad("battery_size", "needs at least 2 functions");
    }
    s.finish(&mut problems);

    if problems.is_empty() {
        Ok(ExperimentConfig {
            seed,
            model,
            grid,
            time,
            initial,
            diagnostics: DiagnosticsConfig { virial, flags },
            output,
            limits,
            inequalities,
        })
    } else {
        Err(ConfigError { problems })
    }
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| Value::Float(x)).collect())
}

impl ExperimentConfig {
    /// Canonical TOML form; `parse_config(&c.emit()) == Ok(c)`.
    pub fn emit(&self) -> String {
        let mut root = Table::new();
        root.insert("seed".into(), Value::Integer(self.seed as i64));
        let mut t = Table::new();
        t.insert("delta".into(), Value::Float(self.model.delta));
        root.insert("model".into(), Value::Table(t));

        let mut t = Table::new();
        t.insert("n_points".into(), Value::Integer(self.grid.n_points as i64));
        t.insert("length".into(), Value::Float(self.grid.length));
        root.insert("grid".into(), Value::Table(t));

        let mut t = Table::new();
        t.insert("dt".into(), Value::Float(self.time.dt));
        t.insert("t_end".into(), Value::Float(self.time.t_end));
        t.insert("checkpoint_stride".into(), Value::Integer(self.time.checkpoint_stride as i64));
        t.insert("integrator".into(), Value::try_from(self.time.integrator).expect("integrator serializes"));
        t.insert("dealias".into(), Value::Boolean(self.time.dealias));
        root.insert("time".into(), Value::Table(t));

        let mut t = Table::new();
        t.insert("kind".into(), Value::String(self.initial.kind.name().into()));
        t.insert("amplitude".into(), Value::Float(self.initial.amplitude));
        t.insert("width".into(), Value::Float(self.initial.width));
        t.insert("center".into(), Value::Float(self.initial.center));
        t.insert("soliton_speed".into(), Value::Float(self.initial.soliton_speed));
        if let Some(p) = &self.initial.path {
            t.insert("path".into(), Value::String(p.clone()));
        }
        root.insert("initial".into(), Value::Table(t));

        let v = &self.diagnostics.virial;
        let f = &self.diagnostics.flags;
        let mut t = Table::new();
        for (k, x) in [
            ("b", v.b),
            ("m", v.m),
            ("q_exp", v.q_exp),
            ("sigma", v.sigma),
            ("lambda", v.lambda),
            ("alpha", v.alpha),
            ("c0", v.c0),
            ("c1", v.c1),
        ] {
            t.insert(k.into(), Value::Float(x));
        }
        t.insert("corollary".into(), Value::Boolean(v.corollary));
        t.insert("region_masses".into(), Value::Boolean(f.region_masses));
        t.insert("functionals".into(), Value::Boolean(f.functionals));
        t.insert("smoothing".into(), Value::Boolean(f.smoothing));
        root.insert("diagnostics".into(), Value::Table(t));

        let mut t = Table::new();
        t.insert("directory".into(), Value::String(self.output.directory.clone()));
        let formats = self
            .output
            .formats
            .iter()
            .map(|f| Value::String(match f { OutputFormat::Csv => "csv", OutputFormat::Binary => "binary" }.into()))
            .collect();
        t.insert("formats".into(), Value::Array(formats));
        root.insert("output".into(), Value::Table(t));

        let mut t = Table::new();
        t.insert("deep_deltas".into(), floats(&self.limits.deep_deltas));
        t.insert("shallow_deltas".into(), floats(&self.limits.shallow_deltas));
        t.insert("horizon".into(), Value::Float(self.limits.horizon));
        t.insert("dt_kdv".into(), Value::Float(self.limits.dt_kdv));
        root.insert("limits".into(), Value::Table(t));

        let mut t = Table::new();
        t.insert("enabled".into(), Value::Boolean(self.inequalities.enabled));
        t.insert("battery_size".into(), Value::Integer(self.inequalities.battery_size as i64));
        root.insert("inequalities".into(), Value::Table(t));

        toml::to_string(&root).expect("configuration tables serialize")
    }

    /// Hex SHA-256 of [`ExperimentConfig::emit`].
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.emit().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), ExperimentConfig::default());
    }

    #[test]
    fn emit_parse_round_trip() {
        let mut c = ExperimentConfig::default();
        c.seed = 42;
        c.time.dt = 0.1 + 0.2;
        c.initial.path = Some("u0.bin".into());
        c.diagnostics.virial.corollary = true;
        c.diagnostics.virial.m = 0.1;
        assert_eq!(parse_config(&c.emit()).unwrap(), c);
        assert_eq!(c.emit(), parse_config(&c.emit()).unwrap().emit());
    }

    #[test]
    fn reports_every_problem() {
        let text = "[model]\ndelta = -1\n[grid]\nn_points = 15\nbogus = 1\n[diagnostics]\nb = 0.7\n[extra]\n";
        let err = parse_config(text).unwrap_err();
        let all = err.to_string();
        assert!(all.contains("delta"));
        assert!(all.contains("n_points"));
        assert!(all.contains("grid.bogus"));
        assert!(all.contains("0 < b < 2/3"));
        assert!(err.problems.contains(&ConfigProblem::UnknownKey("extra".into())));
        assert!(err.problems.len() >= 5);
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_config("[model]\ndelta = = 1\n").unwrap_err();
        match &err.problems[0] {
            ConfigProblem::Syntax { line, .. } => assert_eq!(*line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn soliton_threshold() {
        let err = parse_config("[initial]\nkind = \"soliton\"\nsoliton_speed = 1.0\n").unwrap_err();
        assert!(err.to_string().contains("1/delta"));
        assert!(parse_config("[initial]\nkind = \"soliton\"\nsoliton_speed = 1.5\n").is_ok());
    }

    #[test]
    fn overrides_apply() {
        let o = vec![
            ("model.delta".to_string(), "2.5".to_string()),
            ("time.integrator".to_string(), "etd-rk4".to_string()),
            ("seed".to_string(), "9".to_string()),
        ];
        let c = parse_config_with_overrides("", &o).unwrap();
        assert_eq!(c.model.delta, 2.5);
        assert_eq!(c.time.integrator, Integrator::EtdRk4);
        assert_eq!(c.seed, 9);
        let bad = vec![("a.b.c".to_string(), "1".to_string())];
        assert!(parse_config_with_overrides("", &bad).is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        b.seed = 1;
        assert_eq!(a.content_hash(), ExperimentConfig::default().content_hash());
        assert_ne!(a.content_hash(), b.content_hash());
    }
}
