//! Run configuration: command-line flags merged with an optional config file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use krein_ext::{
    degenerate_sl, indefinite_sl, zero_chardata, CharacteristicData, ExtensionParams, Potential,
    SearchBox, Step, SturmLiouvilleModel,
};

use crate::Failure;

pub const TOL_ENV: &str = "KREIN_EXT_TOL";
pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ProviderKind {
    DegenerateSl,
    IndefiniteSl,
    Zero,
}

impl ProviderKind {
    pub fn name(self) -> &'static str {
        match self {
            ProviderKind::DegenerateSl => "degenerate_sl",
            ProviderKind::IndefiniteSl => "indefinite_sl",
            ProviderKind::Zero => "zero",
        }
    }
}

/// Flags shared by `classify`, `family` and `spectrum`.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Config file with `key = value` lines; keys are the flag names without dashes.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Characteristic-function provider.
    #[arg(long, value_enum)]
    pub provider: Option<ProviderKind>,
    /// Potential for indefinite_sl: `zero`, `constant=C` or `steps=A:B:V,...`.
    #[arg(long)]
    pub potential: Option<String>,
    /// Initial truncation radius X for the Titchmarsh-Weyl coefficients.
    #[arg(long)]
    pub truncation: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    /// Radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Radians.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Radians.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    /// Residual tolerance of the s+ ~ s- test.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    #[arg(long)]
    pub im_min: Option<f64>,
    #[arg(long)]
    pub im_max: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "provider", "potential", "truncation", "q", "r", "phi", "gamma", "xi", "tol", "re_min", "re_max",
    "im_min", "im_max", "output", "csv",
];

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// dashes in keys are accepted in place of underscores.
pub fn parse_config_text(text: &str, origin: &Path) -> Result<BTreeMap<String, String>, Failure> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::validation(format!(
                "{}:{}: expected `key = value`",
                origin.display(),
                lineno + 1
            )));
        };
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(Failure::validation(format!(
                "{}:{}: unknown key `{key}`",
                origin.display(),
                lineno + 1
            )));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(Failure::validation(format!(
                "{}:{}: duplicate key `{key}`",
                origin.display(),
                lineno + 1
            )));
        }
    }
    Ok(map)
}

fn parse_f64(key: &str, s: &str) -> Result<f64, Failure> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Failure::validation(format!("{key}: cannot parse `{s}` as a number")))?;
    if !v.is_finite() {
        return Err(Failure::validation(format!("{key} must be finite")));
    }
    Ok(v)
}

pub fn parse_potential(s: &str) -> Result<Potential, Failure> {
    let s = s.trim();
    if s == "zero" {
        return Ok(Potential::Zero);
    }
    if let Some(c) = s.strip_prefix("constant=") {
        return Ok(Potential::Constant(parse_f64("potential", c)?));
    }
    if let Some(list) = s.strip_prefix("steps=") {
        let mut steps = Vec::new();
        for item in list.split(',').filter(|t| !t.trim().is_empty()) {
            let parts: Vec<&str> = item.split(':').collect();
            let [a, b, v] = parts[..] else {
                return Err(Failure::validation(format!("potential step `{item}` is not FROM:TO:VALUE")));
            };
            steps.push(Step {
                from: parse_f64("potential", a)?,
                to: parse_f64("potential", b)?,
                value: parse_f64("potential", v)?,
            });
        }
        return Potential::steps(steps).map_err(Failure::from);
    }
    Err(Failure::validation(format!(
        "unknown potential `{s}` (expected zero, constant=C or steps=A:B:V,...)"
    )))
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub provider: ProviderKind,
    pub potential: Potential,
    pub potential_text: String,
    pub truncation: f64,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub phi: f64,
    pub gamma: f64,
    pub xi: f64,
    pub tol: f64,
    pub search_box: SearchBox,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

struct Layer<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layer<'_> {
    fn num(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>, Failure> {
        if let Some(v) = flag {
            if !v.is_finite() {
                return Err(Failure::validation(format!("{key} must be finite")));
            }
            return Ok(Some(v));
        }
        self.file.get(key).map(|s| parse_f64(key, s)).transpose()
    }

    fn text(&self, key: &str, flag: Option<String>) -> Option<String> {
        flag.or_else(|| self.file.get(key).cloned())
    }
}

impl RunConfig {
    /// Precedence: flag, config file, `KREIN_EXT_TOL` (tolerance only), default.
    pub fn resolve(args: CommonArgs, csv: Option<PathBuf>) -> Result<Self, Failure> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
                parse_config_text(&text, path)?
            }
            None => BTreeMap::new(),
        };
        let layer = Layer { file: &file };

        let provider = match args.provider {
            Some(p) => p,
            None => match file.get("provider") {
                Some(s) => ProviderKind::from_str(s, false)
                    .map_err(|_| Failure::validation(format!("unknown provider `{s}`")))?,
                None => ProviderKind::DegenerateSl,
            },
        };

        let potential_text = layer.text("potential", args.potential);
        let truncation = layer.num("truncation", args.truncation)?;
        if provider != ProviderKind::IndefiniteSl && (potential_text.is_some() || truncation.is_some()) {
            return Err(Failure::validation(
                "potential and truncation only apply to the indefinite_sl provider".into(),
            ));
        }
        let potential_text = potential_text.unwrap_or_else(|| "zero".into());
        let potential = parse_potential(&potential_text)?;
        let truncation = truncation.unwrap_or(SturmLiouvilleModel::DEFAULT_TRUNCATION);
        if truncation <= 0.0 {
            return Err(Failure::validation("truncation must be positive".into()));
        }

        let tol = match layer.num("tol", args.tol)? {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(s) => parse_f64(TOL_ENV, &s)?,
                Err(_) => DEFAULT_TOL,
            },
        };
        if tol <= 0.0 {
            return Err(Failure::validation("tol must be positive".into()));
        }

        let search_box = SearchBox::new(
            layer.num("re_min", args.re_min)?.unwrap_or(-10.0),
            layer.num("re_max", args.re_max)?.unwrap_or(10.0),
            layer.num("im_min", args.im_min)?.unwrap_or(0.5),
            layer.num("im_max", args.im_max)?.unwrap_or(10.0),
        )?;

        Ok(Self {
            provider,
            potential,
            potential_text,
            truncation,
            q: layer.num("q", args.q)?,
            r: layer.num("r", args.r)?,
            phi: layer.num("phi", args.phi)?.unwrap_or(0.0),
            gamma: layer.num("gamma", args.gamma)?.unwrap_or(0.0),
            xi: layer.num("xi", args.xi)?.unwrap_or(0.0),
            tol,
            search_box,
            output: layer.text("output", args.output.map(|p| p.display().to_string())).map(PathBuf::from),
            csv: layer.text("csv", csv.map(|p| p.display().to_string())).map(PathBuf::from),
        })
    }

    /// The extension `U`; the missing one of `q`, `r` follows from `q² + r² = 1`.
    pub fn extension(&self) -> Result<ExtensionParams, Failure> {
        let (q, r) = match (self.q, self.r) {
            (Some(q), Some(r)) => (q, r),
            (Some(q), None) => {
                if !(0.0..=1.0).contains(&q) {
                    return Err(Failure::validation(format!("q must lie in [0, 1], got {q}")));
                }
                (q, (1.0 - q * q).sqrt())
            }
            (None, Some(r)) => {
                if !(0.0..=1.0).contains(&r) {
                    return Err(Failure::validation(format!("r must lie in [0, 1], got {r}")));
                }
                ((1.0 - r * r).sqrt(), r)
            }
            (None, None) => return Err(Failure::validation("at least one of q and r is required".into())),
        };
        Ok(ExtensionParams::new(self.phi, self.gamma, self.xi, q, r)?)
    }

    pub fn chardata(&self) -> Result<CharacteristicData, Failure> {
        Ok(match self.provider {
            ProviderKind::DegenerateSl => degenerate_sl(),
            ProviderKind::Zero => zero_chardata(),
            ProviderKind::IndefiniteSl => indefinite_sl(
                SturmLiouvilleModel::new(self.potential.clone()).with_truncation(self.truncation),
            )?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_dashes() {
        let m = parse_config_text("# header\nre-min = -3 # trailing\n\nq=0.5\n", Path::new("x")).unwrap();
        assert_eq!(m["re_min"], "-3");
        assert_eq!(m["q"], "0.5");
    }

    #[test]
    fn unknown_key_rejected() {
        let e = parse_config_text("colour = red\n", Path::new("x")).unwrap_err();
        assert_eq!(e.code, crate::EXIT_VALIDATION);
    }

    #[test]
    fn potentials() {
        assert_eq!(parse_potential("zero").unwrap(), Potential::Zero);
        assert_eq!(parse_potential("constant=-2.5").unwrap(), Potential::Constant(-2.5));
        let Potential::Steps(s) = parse_potential("steps=0:1:2,-3:-1:0.5").unwrap() else {
            panic!("expected steps");
        };
        assert_eq!(s.len(), 2);
        assert!(parse_potential("steps=0:1").is_err());
        assert!(parse_potential("cubic").is_err());
    }

    #[test]
    fn q_or_r_completes_the_pair() {
        let mut cfg = RunConfig::resolve(CommonArgs { r: Some(0.8), ..Default::default() }, None).unwrap();
        let u = cfg.extension().unwrap();
        assert!((u.q - 0.6).abs() < 1e-15);
        cfg.r = None;
        assert!(cfg.extension().is_err());
    }
}
