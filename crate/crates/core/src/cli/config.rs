//! `key = value` configuration files.
//!
//! Each non-empty line that does not start with `#` becomes the flag
//! `--key value`. The flags are inserted directly after the subcommand so
//! that anything given on the command line overrides them.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

pub const CONFIG_ENV: &str = "VACENT_CONFIG";

pub fn parse(text: &str) -> Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() || key == "config" {
            return Err(format!("line {}: invalid key '{key}'", n + 1));
        }
        out.push(format!("--{key}").into());
        out.push(value.trim().into());
    }
    Ok(out)
}

/// Finds `--config PATH` or `--config=PATH` and removes it from `args`.
fn take_config_flag(args: &mut Vec<OsString>) -> Result<Option<PathBuf>, String> {
    let mut found = None;
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy().into_owned();
        if s == "--" {
            break;
        }
        if s == "--config" {
            if i + 1 >= args.len() {
                return Err("--config needs a path".into());
            }
            found = Some(PathBuf::from(args.remove(i + 1)));
            args.remove(i);
            continue;
        }
        if let Some(p) = s.strip_prefix("--config=") {
            found = Some(PathBuf::from(p));
            args.remove(i);
            continue;
        }
        i += 1;
    }
    Ok(found)
}

fn read(path: &Path) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

const SUBCOMMANDS: [&str; 3] = ["point", "sweep", "validate"];

/// Expands the configuration file, if any, into the argument list.
pub fn expand(mut args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let path = match take_config_flag(&mut args)? {
        Some(p) => Some(p),
        None => std::env::var_os(CONFIG_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(args);
    };
    let extra = read(&path)?;
    let Some(pos) = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
    else {
        return Ok(args);
    };
    let tail = args.split_off(pos + 1);
    args.extend(extra);
    args.extend(tail);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_pairs_and_comments() {
        let got = parse("# sweep\nmu = 1e-4\n\n--points=5\n").unwrap();
        assert_eq!(got, os(&["--mu", "1e-4", "--points", "5"]));
        assert!(parse("mu 1e-4").is_err());
        assert!(parse("config = x").is_err());
    }

    #[test]
    fn file_flags_precede_command_line_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.cfg");
        std::fs::write(&path, "mu = 1\nx = 2\n").unwrap();
        let args = os(&["vacent", "point", "--config", path.to_str().unwrap(), "--mu", "3"]);
        let got = expand(args).unwrap();
        assert_eq!(got, os(&["vacent", "point", "--mu", "1", "--x", "2", "--mu", "3"]));
    }

    #[test]
    fn missing_file_is_an_error() {
        assert!(expand(os(&["vacent", "point", "--config=/nonexistent/file"])).is_err());
        assert!(expand(os(&["vacent", "point", "--config"])).is_err());
    }
}
