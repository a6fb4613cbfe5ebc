//! Experiment configuration: flat `key = value` files merged with
//! command-line flags, and the generator / window / weight spec syntax.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::generators::{
    fundamental_domain, localization_op_real, multiwindow_op, random_op, underspread_op,
    window_box, window_gaussian, window_random, WindowSet,
};
use crate::lattice::{parse_point, Lattice};
use crate::seqspace::Weight;
use crate::tfcore::random::{gaussian_signal, seeded};
use crate::tfcore::textio::{parse_op, parse_signal, OP_HEADER, SIGNAL_HEADER};
use crate::tfcore::{rank_one, Op, PhaseTable, Signal, C64};

pub const KEYS: &[&str] = &[
    "command", "L", "lattice", "gen", "p", "weight", "probes", "seed", "window", "target",
];

/// Raw settings before validation; later sources override earlier ones.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
    /// Directory that relative `file:` paths resolve against.
    pub base_dir: PathBuf,
}

impl Settings {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("config line {}: expected key = value", n + 1))
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Parse(format!(
                    "config line {}: unknown key '{key}'",
                    n + 1
                )));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self {
            values,
            base_dir: base_dir.to_path_buf(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        Self::parse(&text, &base)
    }

    pub fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

/// Validated experiment configuration.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub command: Option<String>,
    pub len: usize,
    pub lattice: Lattice,
    pub lattice_spec: String,
    pub gen_spec: String,
    pub p: f64,
    pub weight: Weight,
    pub weight_spec: String,
    pub probes: usize,
    pub seed: u64,
    pub window_spec: String,
    pub target: Option<String>,
    pub base_dir: PathBuf,
}

fn field_err(field: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{field}: {e}"))
}

impl ExperimentConfig {
    pub fn from_settings(s: &Settings) -> Result<Self> {
        let len: usize = s
            .get("L")
            .ok_or_else(|| field_err("L", "missing"))?
            .parse()
            .map_err(|e| field_err("L", e))?;
        if len < 2 {
            return Err(field_err("L", "must be at least 2"));
        }
        let lattice_spec = s.get("lattice").unwrap_or("sep:1,1").to_string();
        let lattice = Lattice::parse(&lattice_spec, len).map_err(|e| field_err("lattice", e))?;
        let p = match s.get("p").unwrap_or("2") {
            "inf" | "infinity" => f64::INFINITY,
            v => v.parse().map_err(|e| field_err("p", e))?,
        };
        if !(p >= 1.0) {
            return Err(field_err("p", format!("must be >= 1, got {p}")));
        }
        let probes = s
            .get("probes")
            .unwrap_or("100")
            .parse()
            .map_err(|e| field_err("probes", e))?;
        let seed = s
            .get("seed")
            .unwrap_or("0")
            .parse()
            .map_err(|e| field_err("seed", e))?;
        let weight_spec = s.get("weight").unwrap_or("const").to_string();
        let weight =
            parse_weight(&weight_spec, len, &s.base_dir).map_err(|e| field_err("weight", e))?;
        let cfg = Self {
            command: s.get("command").map(str::to_string),
            len,
            lattice,
            lattice_spec,
            gen_spec: s.get("gen").unwrap_or("gaussian").to_string(),
            p,
            weight,
            weight_spec,
            probes,
            seed,
            window_spec: s.get("window").unwrap_or("gaussian").to_string(),
            target: s.get("target").map(str::to_string),
            base_dir: s.base_dir.clone(),
        };
        // Fail early on a malformed generator.
        cfg.generator().map_err(|e| field_err("gen", e))?;
        Ok(cfg)
    }

    fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn generator(&self) -> Result<Op> {
        self.op_spec(&self.gen_spec)
    }

    /// Parses an operator spec:
    /// `gaussian | box:w | randwin:seed | identity | file:path | random:rank:seed |
    ///  multiwindow:w1+w2+... | locop:mask:window | underspread:(k,l)=c;...`.
    /// Window specs give the rank-one operator `phi (x) phi` for unit `phi`.
    pub fn op_spec(&self, spec: &str) -> Result<Op> {
        let len = self.len;
        let spec = spec.trim();
        if spec == "identity" {
            return Op::identity(len);
        }
        if let Some(rest) = spec.strip_prefix("random:") {
            let (rank, seed) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("'{spec}': expected random:rank:seed")))?;
            let rank = rank
                .parse()
                .map_err(|e| Error::Parse(format!("'{spec}': rank: {e}")))?;
            let seed = seed
                .parse()
                .map_err(|e| Error::Parse(format!("'{spec}': seed: {e}")))?;
            return random_op(len, rank, seed);
        }
        if let Some(rest) = spec.strip_prefix("multiwindow:") {
            let windows = rest
                .split('+')
                .map(|w| self.window_spec_signal(w))
                .collect::<Result<Vec<_>>>()?;
            return multiwindow_op(&WindowSet::uniform(len, windows)?);
        }
        if let Some(rest) = spec.strip_prefix("locop:") {
            let (mask, window) = rest.split_once(':').unwrap_or((rest, "gaussian"));
            let mask = self.mask(mask)?;
            return localization_op_real(&mask, &self.window_spec_signal(window)?);
        }
        if let Some(rest) = spec.strip_prefix("underspread:") {
            let mut points = Vec::new();
            let mut coeffs = Vec::new();
            for term in rest.split(';').filter(|t| !t.trim().is_empty()) {
                let (z, c) = term.split_once('=').unwrap_or((term, "1"));
                points.push(parse_point(z, len)?);
                coeffs.push(parse_complex(c)?);
            }
            return underspread_op(&points, &coeffs, &self.lattice);
        }
        if let Some(path) = spec.strip_prefix("file:") {
            let text = fs::read_to_string(self.resolve(path))?;
            if text.trim_start().starts_with(OP_HEADER) {
                let op = parse_op(&text)?;
                op.check_dim(len)?;
                return Ok(op);
            }
            let phi = parse_signal(&text)?.normalized()?;
            phi.check_len(len)?;
            return rank_one(&phi, &phi);
        }
        let phi = self.window_spec_signal(spec)?;
        rank_one(&phi, &phi)
    }

    /// Unit-norm window: `gaussian | box:w | randwin:seed | file:path`.
    pub fn window_spec_signal(&self, spec: &str) -> Result<Signal> {
        let len = self.len;
        let spec = spec.trim();
        let sig = if spec == "gaussian" {
            window_gaussian(len)?
        } else if let Some(w) = spec.strip_prefix("box:") {
            let w = w
                .parse()
                .map_err(|e| Error::Parse(format!("'{spec}': width: {e}")))?;
            window_box(len, w)?
        } else if let Some(seed) = spec.strip_prefix("randwin:") {
            let seed = seed
                .parse()
                .map_err(|e| Error::Parse(format!("'{spec}': seed: {e}")))?;
            window_random(len, seed)?
        } else if let Some(path) = spec.strip_prefix("file:") {
            parse_signal(&fs::read_to_string(self.resolve(path))?)?.normalized()?
        } else {
            return Err(Error::Parse(format!(
                "unknown generator '{spec}' (expected gaussian, box:w, randwin:seed, file:path, \
                 identity, random:rank:seed, multiwindow:..., locop:..., underspread:...)"
            )));
        };
        if sig.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: sig.len(),
            });
        }
        Ok(sig)
    }

    /// Test signal: a window spec, or `random` / `random:seed` for an
    /// unnormalized complex Gaussian vector (default seed from the config).
    pub fn signal_spec(&self, spec: Option<&str>) -> Result<Signal> {
        match spec.map(str::trim) {
            None | Some("random") => Ok(gaussian_signal(&mut seeded(self.seed), self.len)),
            Some(s) if s.starts_with("random:") => {
                let seed = s["random:".len()..]
                    .parse()
                    .map_err(|e| Error::Parse(format!("'{s}': seed: {e}")))?;
                Ok(gaussian_signal(&mut seeded(seed), self.len))
            }
            Some(s) => self.window_spec_signal(s),
        }
    }

    /// Mask spec: `tile` (fundamental domain of the lattice), `ones`, `zero`,
    /// or a CSV file with `L` rows of `L` nonnegative values.
    pub fn mask(&self, spec: &str) -> Result<PhaseTable<f64>> {
        let len = self.len;
        match spec.trim() {
            "tile" => Ok(fundamental_domain(&self.lattice)),
            "ones" => Ok(PhaseTable::filled(len, 1.0)),
            "zero" => Ok(PhaseTable::filled(len, 0.0)),
            path => read_csv_grid(&self.resolve(path), len),
        }
    }
}

pub fn parse_weight(spec: &str, len: usize, base: &Path) -> Result<Weight> {
    if let Some(path) = spec.strip_prefix("file:") {
        let p = base.join(path);
        return Weight::table(read_csv_grid(&p, len)?);
    }
    Weight::parse(spec)
}

/// `L x L` grid of reals, one row per `k`, comma separated.
pub fn read_csv_grid(path: &Path, len: usize) -> Result<PhaseTable<f64>> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::with_capacity(len * len);
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        for tok in line.split(',') {
            values.push(
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{}: '{tok}': {e}", path.display())))?,
            );
        }
    }
    PhaseTable::from_vec(len, values)
}

/// `re`, `re+imj`, `re-imj`, `imj`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let s = s.trim();
    let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("complex '{s}': {e}"));
    if let Some(body) = s.strip_suffix('j') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&i| {
            (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
        });
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().map_err(|e| bad(&e))?;
                let im: f64 = body[i..].parse().map_err(|e| bad(&e))?;
                Ok(C64::new(re, im))
            }
            None => Ok(C64::new(0.0, body.parse().map_err(|e| bad(&e))?)),
        }
    } else {
        Ok(C64::new(s.parse().map_err(|e| bad(&e))?, 0.0))
    }
}

/// Signal or operator file header sniffing, for `file:` inputs.
pub fn file_kind(text: &str) -> Option<&'static str> {
    let head = text.split_whitespace().next()?;
    [SIGNAL_HEADER, OP_HEADER].into_iter().find(|h| *h == head)
}
