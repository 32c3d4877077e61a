//! `key = value` configuration files. Each key names a long flag of the
//! chosen subcommand; the values are spliced in ahead of the command line,
//! so explicit flags win.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Parses the file into `--key value` pairs. `key = true` becomes a bare
/// flag and `key = false` is dropped.
pub fn load(path: &Path) -> CliResult<Vec<OsString>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse(&text, path)
}

pub fn parse(text: &str, path: &Path) -> CliResult<Vec<OsString>> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| CliError::Config { path: path.into(), line: i + 1, message: message.into() };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`"))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
            return Err(err("malformed key"));
        }
        if matches!(key.as_str(), "config" | "out" | "csv" | "threads") {
            return Err(err("output and thread settings belong on the command line or in the environment"));
        }
        match value {
            "true" => args.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                args.push(format!("--{key}").into());
                args.push(value.trim_matches('"').into());
            }
        }
    }
    Ok(args)
}

/// Finds `--config PATH` or `--config=PATH` before clap sees the arguments.
pub fn find_path(args: &[OsString]) -> CliResult<Option<PathBuf>> {
    let mut found = None;
    let mut iter = args.iter().skip(1);
    while let Some(arg) = iter.next() {
        let Some(s) = arg.to_str() else { continue };
        if s == "--" {
            break;
        }
        if s == "--config" {
            let path = iter.next().ok_or_else(|| CliError::Usage("--config needs a path".into()))?;
            found = Some(PathBuf::from(path));
        } else if let Some(p) = s.strip_prefix("--config=") {
            found = Some(PathBuf::from(p));
        }
    }
    Ok(found)
}

/// Inserts the config arguments right after the subcommand name.
pub fn splice(args: Vec<OsString>, extra: Vec<OsString>) -> Vec<OsString> {
    const COMMANDS: [&str; 4] = ["stat", "efficiency", "simulate", "green"];
    let Some(pos) = args.iter().position(|a| a.to_str().is_some_and(|s| COMMANDS.contains(&s))) else {
        return args;
    };
    let mut out = args[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[pos + 1..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_flags() {
        let args = parse("# comment\nalpha = 0.01\nclose = true\nverbose = false\nfamily = \"12,13\"\n", Path::new("c"))
            .unwrap();
        let args: Vec<String> = args.into_iter().map(|a| a.into_string().unwrap()).collect();
        assert_eq!(args, ["--alpha", "0.01", "--close", "--family", "12,13"]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse("alpha 0.1", Path::new("c")), Err(CliError::Config { line: 1, .. })));
        assert!(parse("out = x.json", Path::new("c")).is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let args: Vec<OsString> = ["mvrho", "--threads", "2", "stat", "data.csv"].iter().map(OsString::from).collect();
        let out = splice(args, vec!["--alpha".into(), "0.1".into()]);
        let out: Vec<&str> = out.iter().map(|a| a.to_str().unwrap()).collect();
        assert_eq!(out, ["mvrho", "--threads", "2", "stat", "--alpha", "0.1", "data.csv"]);
    }
}
