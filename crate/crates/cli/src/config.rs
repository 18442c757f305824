//! Settings resolved from three layers: built-in defaults, an optional flat
//! `key = value` config file, then command-line flags. Later layers win.
//! Unknown or malformed file entries are rejected with their file:line.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chaff_core::detector::DetectorWeights;
use chaff_core::faker::{DateBias, RelationWeights, SubstitutePos};
use chaff_core::vault::{MaskingConfig, DEFAULT_PRIME};

pub const DETECTOR_NAMES: [&str; 6] = ["ngram", "zipf", "benford", "timestamp", "svd", "bump"];

/// A settings problem: bad file entry, bad flag value, or an inconsistent
/// combination. Always a caller mistake, so it maps to the usage exit code.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone)]
pub struct Settings {
    pub overlap: f64,
    pub fakes: usize,
    pub seed: u64,
    pub prime: u64,
    pub bank: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub weights: DetectorWeights,
    pub only: Option<String>,
    pub svd_rank: usize,
    pub substitute_pos: SubstitutePos,
    pub cache: Option<PathBuf>,
    pub date_bias: DateBias,
    pub relation_weights: RelationWeights,
    pub masking: MaskingConfig,
    pub provider_thesaurus: Option<String>,
    pub provider_association: Option<String>,
    pub provider_frequency: Option<String>,
    pub provider_grammar: Option<String>,
}

impl Default for Settings {
    fn default() -> Settings {
        Settings {
            overlap: 0.7,
            fakes: 100,
            seed: 0,
            prime: DEFAULT_PRIME,
            bank: None,
            out_dir: None,
            weights: DetectorWeights::default(),
            only: None,
            svd_rank: 3,
            substitute_pos: SubstitutePos::default(),
            cache: None,
            date_bias: DateBias::default(),
            relation_weights: RelationWeights::default(),
            masking: MaskingConfig::default(),
            provider_thesaurus: None,
            provider_association: None,
            provider_frequency: None,
            provider_grammar: None,
        }
    }
}

impl Settings {
    /// Apply every `key = value` line of `path` over the current values.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let at = |msg: String| ConfigError(format!("{}:{}: {msg}", path.display(), idx + 1));
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(at("expected key = value".into()));
            }
            if seen.iter().any(|k| k == key) {
                return Err(at(format!("duplicate config key {key:?}")));
            }
            seen.push(key.to_string());
            self.apply_key(key, value).map_err(at)?;
        }
        Ok(())
    }

    /// Set one settings field from its config key. Errors carry no location;
    /// `apply_file` adds it.
    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "overlap" => self.overlap = parse_num(key, value)?,
            "fakes" => self.fakes = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "prime" => self.prime = parse_num(key, value)?,
            "bank" => self.bank = Some(PathBuf::from(value)),
            "out_dir" => self.out_dir = Some(PathBuf::from(value)),
            "weights" => self.weights = parse_weights(value, self.weights)?,
            "only" => self.only = Some(parse_detector_name(value)?),
            "svd_rank" => self.svd_rank = parse_num(key, value)?,
            "substitute_pos" => {
                self.substitute_pos = SubstitutePos::parse(value).ok_or_else(|| {
                    format!("invalid value for substitute_pos: {value:?} (want nouns or open_class)")
                })?;
            }
            "cache" => self.cache = Some(PathBuf::from(value)),
            "date.mean_days" => self.date_bias.mean_days = parse_num(key, value)?,
            "date.std_days" => self.date_bias.std_days = parse_num(key, value)?,
            "date.day_first" => self.date_bias.day_first = parse_bool(key, value)?,
            "relation.synonym" => self.relation_weights.synonym = parse_num(key, value)?,
            "relation.antonym" => self.relation_weights.antonym = parse_num(key, value)?,
            "relation.associated" => self.relation_weights.associated = parse_num(key, value)?,
            "masking.min_interval" => self.masking.min_interval = parse_seconds(key, value)?,
            "masking.max_interval" => self.masking.max_interval = parse_seconds(key, value)?,
            "masking.min_tail" => self.masking.min_tail = parse_seconds(key, value)?,
            "masking.max_tail" => self.masking.max_tail = parse_seconds(key, value)?,
            "provider.thesaurus.url" => self.provider_thesaurus = Some(value.to_string()),
            "provider.association.url" => self.provider_association = Some(value.to_string()),
            "provider.frequency.url" => self.provider_frequency = Some(value.to_string()),
            "provider.grammar.url" => self.provider_grammar = Some(value.to_string()),
            _ => return Err(format!("unknown config key {key:?}")),
        }
        Ok(())
    }

    /// Cross-field checks that single-key parsing cannot see.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.svd_rank == 0 {
            return Err(ConfigError("svd_rank must be at least 1".into()));
        }
        if self.masking.min_interval > self.masking.max_interval {
            return Err(ConfigError("masking.min_interval exceeds masking.max_interval".into()));
        }
        if self.masking.min_tail > self.masking.max_tail {
            return Err(ConfigError("masking.min_tail exceeds masking.max_tail".into()));
        }
        if self.provider_thesaurus.is_some() != self.provider_association.is_some() {
            return Err(ConfigError(
                "provider.thesaurus.url and provider.association.url must be set together".into(),
            ));
        }
        Ok(())
    }

    /// Detector weights after the `only` override. `--only ngram` means the
    /// combined score is the ngram ordering alone.
    pub fn resolve_weights(&self) -> DetectorWeights {
        let Some(name) = &self.only else { return self.weights };
        let mut w = DetectorWeights { ngram: 0.0, zipf: 0.0, benford: 0.0, timestamp: 0.0, svd: 0.0, bump: 0.0 };
        *field_mut(&mut w, name) = 1.0;
        w
    }

    pub fn out_dir_or(&self, fallback: &str) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from(fallback))
    }
}

fn field_mut<'a>(w: &'a mut DetectorWeights, name: &str) -> &'a mut f64 {
    match name {
        "ngram" => &mut w.ngram,
        "zipf" => &mut w.zipf,
        "benford" => &mut w.benford,
        "timestamp" => &mut w.timestamp,
        "svd" => &mut w.svd,
        "bump" => &mut w.bump,
        _ => unreachable!("detector names are validated on entry"),
    }
}

pub fn parse_detector_name(value: &str) -> Result<String, String> {
    if DETECTOR_NAMES.contains(&value) {
        Ok(value.to_string())
    } else {
        Err(format!(
            "unknown detector {value:?} (want one of {})",
            DETECTOR_NAMES.join(", ")
        ))
    }
}

/// Parse `name=weight` pairs separated by commas, updating `base`:
/// `ngram=2,svd=0.5` leaves the other detectors untouched.
pub fn parse_weights(spec: &str, base: DetectorWeights) -> Result<DetectorWeights, String> {
    let mut w = base;
    for part in spec.split(',') {
        let part = part.trim();
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("invalid weights entry {part:?} (want name=value)"))?;
        let name = parse_detector_name(name.trim())?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("invalid weight for {name}: {:?}", value.trim()))?;
        if !value.is_finite() || value < 0.0 {
            return Err(format!("weight for {name} must be finite and >= 0, got {value}"));
        }
        *field_mut(&mut w, &name) = value;
    }
    Ok(w)
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value for {key}: {value:?}"))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("invalid value for {key}: {value:?} (want true or false)")),
    }
}

fn parse_seconds(key: &str, value: &str) -> Result<Duration, String> {
    let secs: f64 = parse_num(key, value)?;
    if !secs.is_finite() || secs < 0.0 {
        return Err(format!("invalid value for {key}: {value:?} (want seconds >= 0)"));
    }
    Ok(Duration::from_secs_f64(secs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file_with(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn file_values_override_defaults() {
        let f = file_with(
            "# comment\n\noverlap = 0.5\nfakes = 7\nseed=9\nprime = 101\n\
             weights = ngram=2, svd=0.5\ndate.day_first = true\nmasking.min_tail = 0.25\n",
        );
        let mut s = Settings::default();
        s.apply_file(f.path()).unwrap();
        assert_eq!(s.overlap, 0.5);
        assert_eq!(s.fakes, 7);
        assert_eq!(s.seed, 9);
        assert_eq!(s.prime, 101);
        assert_eq!(s.weights.ngram, 2.0);
        assert_eq!(s.weights.svd, 0.5);
        assert_eq!(s.weights.zipf, 1.0);
        assert!(s.date_bias.day_first);
        assert_eq!(s.masking.min_tail, Duration::from_millis(250));
    }

    #[test]
    fn unknown_key_is_rejected_with_location() {
        let f = file_with("overlap = 0.5\nbogus = 1\n");
        let err = Settings::default().apply_file(f.path()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":2: "), "{msg}");
        assert!(msg.contains("unknown config key \"bogus\""), "{msg}");
    }

    #[test]
    fn malformed_lines_are_rejected_with_location() {
        for (body, line) in [("just words\n", 1), ("fakes = 3\noverlap 0.5\n", 2), ("fakes =\n", 1)] {
            let f = file_with(body);
            let msg = Settings::default().apply_file(f.path()).unwrap_err().to_string();
            assert!(msg.contains(&format!(":{line}: ")), "{msg}");
        }
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let f = file_with("fakes = 3\nfakes = 4\n");
        let msg = Settings::default().apply_file(f.path()).unwrap_err().to_string();
        assert!(msg.contains(":2: duplicate config key \"fakes\""), "{msg}");
    }

    #[test]
    fn bad_values_name_the_key() {
        for (body, want) in [
            ("fakes = many\n", "invalid value for fakes"),
            ("date.day_first = yes\n", "want true or false"),
            ("masking.min_tail = -1\n", "seconds >= 0"),
            ("weights = warp=1\n", "unknown detector"),
            ("weights = ngram\n", "want name=value"),
            ("only = everything\n", "unknown detector"),
            ("substitute_pos = all\n", "substitute_pos"),
        ] {
            let f = file_with(body);
            let msg = Settings::default().apply_file(f.path()).unwrap_err().to_string();
            assert!(msg.contains(want), "{body:?} -> {msg}");
        }
    }

    #[test]
    fn only_collapses_weights_to_one_detector() {
        let mut s = Settings::default();
        s.only = Some("zipf".into());
        let w = s.resolve_weights();
        assert_eq!(w.zipf, 1.0);
        assert_eq!(w.ngram + w.benford + w.timestamp + w.svd + w.bump, 0.0);
    }

    #[test]
    fn validate_catches_inconsistent_pairs() {
        let mut s = Settings::default();
        s.masking.min_interval = Duration::from_secs(9);
        s.masking.max_interval = Duration::from_secs(1);
        assert!(s.validate().is_err());

        let mut s = Settings::default();
        s.provider_thesaurus = Some("http://localhost:1/t".into());
        assert!(s.validate().unwrap_err().to_string().contains("set together"));

        let mut s = Settings::default();
        s.svd_rank = 0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn provider_urls_parse() {
        let f = file_with(
            "provider.thesaurus.url = http://localhost:9/t\n\
             provider.association.url = http://localhost:9/a\n\
             provider.frequency.url = http://localhost:9/f\n\
             provider.grammar.url = http://localhost:9/g\n",
        );
        let mut s = Settings::default();
        s.apply_file(f.path()).unwrap();
        s.validate().unwrap();
        assert_eq!(s.provider_frequency.as_deref(), Some("http://localhost:9/f"));
    }
}
