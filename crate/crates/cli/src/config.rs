//! Flag/config-file merging and family resolution.

use std::path::Path;

use mopw_core::mop::{MultiIndex, PathSpec, WeightFamily};
use mopw_core::ratcore::rational::{parse_rational, parse_rational_list};
use mopw_core::ratcore::Rational;
use serde_json::{Map, Value};

use crate::CliError;

/// Options read from a `--config` JSON object. Keys mirror the long flag
/// names with dashes or underscores; values may be strings, numbers or
/// arrays. Flags given on the command line always win.
#[derive(Default)]
pub struct ConfigFile {
    map: Map<String, Value>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(map)) => Ok(ConfigFile { map }),
            Ok(_) => Err(CliError::usage("config must be a JSON object")),
            Err(e) => Err(CliError::usage(format!("config is not valid JSON: {e}"))),
        }
    }

    fn lookup(&self, key: &str) -> Option<&Value> {
        self.map.get(key).or_else(|| self.map.get(&key.replace('-', "_")))
    }

    /// The value under `key` rendered the way the matching flag would be
    /// written: arrays become comma lists, objects stay JSON.
    pub fn text(&self, key: &str) -> Option<String> {
        self.lookup(key).map(render)
    }

    /// `flag` if given, else the config value.
    pub fn pick(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.text(key))
    }

    pub fn pick_parsed<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.text(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| CliError::usage(format!("config key {key}: cannot parse {s:?}"))),
        }
    }

    pub fn pick_bool(&self, flag: bool, key: &str) -> bool {
        flag || matches!(self.lookup(key), Some(Value::Bool(true)))
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(","),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Resolves `--family` (JSON or a kind name) together with `--c` and
/// `--alpha`. Without `--family`, `--c` alone means Hermite, `--alpha` alone
/// means Laguerre of the first kind, and both mean the second kind.
pub fn resolve_family(family: Option<&str>, c: Option<&str>, alpha: Option<&str>) -> Result<WeightFamily, CliError> {
    let list = |s: Option<&str>, what: &str| -> Result<Vec<Rational>, CliError> {
        let s = s.ok_or_else(|| CliError::usage(format!("--{what} is required for this family")))?;
        Ok(parse_rational_list(s)?)
    };
    let single = |s: Option<&str>| -> Result<Rational, CliError> {
        let s = s.ok_or_else(|| CliError::usage("--alpha is required for this family"))?;
        Ok(parse_rational(s.trim())?)
    };
    match family.map(str::trim) {
        Some(j) if j.starts_with('{') => {
            serde_json::from_str(j).map_err(|e| CliError::usage(format!("bad --family JSON: {e}")))
        }
        Some("hermite") => Ok(WeightFamily::hermite(list(c, "c")?)?),
        Some("laguerre1") => Ok(WeightFamily::laguerre_first(list(alpha, "alpha")?)?),
        Some("laguerre2") => Ok(WeightFamily::laguerre_second(single(alpha)?, list(c, "c")?)?),
        Some(other) => Err(CliError::usage(format!(
            "unknown family {other:?}; expected hermite, laguerre1, laguerre2 or a JSON object"
        ))),
        None => match (c, alpha) {
            (Some(_), None) => Ok(WeightFamily::hermite(list(c, "c")?)?),
            (None, Some(_)) => Ok(WeightFamily::laguerre_first(list(alpha, "alpha")?)?),
            (Some(_), Some(_)) => Ok(WeightFamily::laguerre_second(single(alpha)?, list(c, "c")?)?),
            (None, None) => Err(CliError::usage("no family given: use --family, --c or --alpha")),
        },
    }
}

pub fn parse_index(s: &str) -> Result<MultiIndex, CliError> {
    Ok(MultiIndex::parse(s)?)
}

pub fn parse_dirs(s: &str) -> Result<Vec<usize>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad direction {t:?}")))
        })
        .collect()
}

/// An explicit step list, or `l - 1` steps along `dir`.
pub fn build_path(start: MultiIndex, l: usize, steps: Option<&str>, dir: usize) -> Result<PathSpec, CliError> {
    let path = match steps {
        Some(s) => {
            let steps = parse_dirs(s)?;
            if steps.len() + 1 != l {
                return Err(CliError::usage(format!(
                    "--steps has {} entries but --l {l} needs {}",
                    steps.len(),
                    l.saturating_sub(1)
                )));
            }
            PathSpec::new(start, steps)
        }
        None => {
            if l == 0 {
                return Err(CliError::usage("--l must be at least 1"));
            }
            PathSpec::straight(start, dir, l)
        }
    };
    path.validate()?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shorthands() {
        assert!(matches!(
            resolve_family(None, Some("0,1"), None).unwrap(),
            WeightFamily::Hermite { .. }
        ));
        assert!(matches!(
            resolve_family(None, None, Some("1/2,1/3")).unwrap(),
            WeightFamily::LaguerreFirst { .. }
        ));
        assert!(matches!(
            resolve_family(None, Some("2,3/5"), Some("1/2")).unwrap(),
            WeightFamily::LaguerreSecond { .. }
        ));
        assert!(resolve_family(None, None, None).is_err());
        assert!(resolve_family(Some("jacobi"), Some("1"), None).is_err());
        let j = r#"{"kind":"hermite","c":["0","1"]}"#;
        assert_eq!(resolve_family(Some(j), None, None).unwrap().r(), 2);
    }

    #[test]
    fn config_rendering() {
        let cfg = ConfigFile {
            map: serde_json::from_str(r#"{"n":[1,2],"c":["0","1/2"],"l":3,"series_by":"n"}"#).unwrap(),
        };
        assert_eq!(cfg.text("n").unwrap(), "1,2");
        assert_eq!(cfg.text("c").unwrap(), "0,1/2");
        assert_eq!(cfg.pick_parsed::<usize>(None, "l").unwrap(), Some(3));
        assert_eq!(cfg.pick_parsed::<usize>(Some(5), "l").unwrap(), Some(5));
        assert_eq!(cfg.text("series-by").unwrap(), "n");
    }

    #[test]
    fn paths() {
        let n = parse_index("1,1").unwrap();
        assert_eq!(build_path(n.clone(), 3, None, 2).unwrap().steps, vec![2, 2]);
        assert!(build_path(n.clone(), 3, Some("1"), 1).is_err());
        assert!(build_path(n, 2, Some("3"), 1).is_err());
    }
}
