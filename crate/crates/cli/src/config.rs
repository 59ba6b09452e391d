//! Flat `key = value` config files merged underneath command-line flags.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::CommandFactory;

use crate::args::Cli;

/// The subcommand and `--config` path, located without full parsing so that
/// options supplied only by the file do not trip required-argument checks.
pub fn locate(args: &[OsString]) -> Option<(String, PathBuf)> {
    let sub = args.iter().skip(1).find(|a| !a.to_string_lossy().starts_with('-'))?.to_string_lossy().into_owned();
    let mut iter = args.iter().skip(1).map(|a| a.to_string_lossy());
    let mut path = None;
    while let Some(arg) = iter.next() {
        if arg == "--" {
            break;
        }
        if arg == "--config" {
            path = iter.next().map(|p| PathBuf::from(p.as_ref()));
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    path.map(|p| (sub, p))
}

/// Parsed `(key, value)` pairs in file order. Keys use the long flag names
/// with or without leading dashes; `_` and `-` are interchangeable.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected `key = value`, found `{line}`", lineno + 1);
        };
        let key = key.trim().trim_start_matches('-').replace('_', "-");
        if key.is_empty() {
            bail!("line {}: empty key", lineno + 1);
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Turns config entries into flags for `subcommand`, validated against its
/// declared arguments.
pub fn to_flags(subcommand: &str, entries: &[(String, String)]) -> Result<Vec<OsString>> {
    let root = Cli::command();
    let sub = root.find_subcommand(subcommand).with_context(|| format!("unknown subcommand `{subcommand}`"))?;
    let mut flags = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            bail!("config files cannot include other config files");
        }
        let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) else {
            bail!("config key `{key}` is not an option of `{subcommand}`");
        };
        if arg.get_action().takes_values() {
            flags.push(OsString::from(format!("--{key}={value}")));
        } else {
            match value.as_str() {
                "true" | "yes" | "1" => flags.push(OsString::from(format!("--{key}"))),
                "false" | "no" | "0" => {}
                other => bail!("config key `{key}` is a switch; expected true or false, found `{other}`"),
            }
        }
    }
    Ok(flags)
}

/// Rebuilds the argument list as `program subcommand <file flags> <user flags>`
/// so that later (user) occurrences override file values.
pub fn merge(args: &[OsString], subcommand: &str, path: &Path) -> Result<Vec<OsString>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config file {}", path.display()))?;
    let entries = parse(&text).with_context(|| format!("in config file {}", path.display()))?;
    let flags = to_flags(subcommand, &entries).with_context(|| format!("in config file {}", path.display()))?;
    let pos = args
        .iter()
        .position(|a| a.to_str() == Some(subcommand))
        .with_context(|| format!("subcommand `{subcommand}` missing from arguments"))?;
    let mut merged: Vec<OsString> = args[..=pos].to_vec();
    merged.extend(flags);
    merged.extend_from_slice(&args[pos + 1..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let entries = parse("# header\n\nalpha = 2.5  # trailing\nbeta_steps=11\n--threads = 2\n").unwrap();
        assert_eq!(
            entries,
            vec![
                ("alpha".to_string(), "2.5".to_string()),
                ("beta-steps".to_string(), "11".to_string()),
                ("threads".to_string(), "2".to_string())
            ]
        );
        assert!(parse("alpha 2").is_err());
    }

    #[test]
    fn locates_config_flag() {
        let args: Vec<OsString> = ["fockport", "sweep", "--alpha", "2", "--config=a.conf"].iter().map(OsString::from).collect();
        assert_eq!(locate(&args), Some(("sweep".to_string(), PathBuf::from("a.conf"))));
        let args: Vec<OsString> = ["fockport", "fidelity", "--config", "b.conf"].iter().map(OsString::from).collect();
        assert_eq!(locate(&args), Some(("fidelity".to_string(), PathBuf::from("b.conf"))));
        let args: Vec<OsString> = ["fockport", "sweep", "--total", "4"].iter().map(OsString::from).collect();
        assert_eq!(locate(&args), None);
    }

    #[test]
    fn maps_entries_to_flags() {
        let flags = to_flags("oracle-check", &[("max-total".into(), "5".into()), ("quiet".into(), "true".into())]).unwrap();
        assert_eq!(flags, vec![OsString::from("--max-total=5"), OsString::from("--quiet")]);
        assert!(to_flags("oracle-check", &[("alpha".into(), "1".into())]).is_err());
        assert!(to_flags("oracle-check", &[("quiet".into(), "maybe".into())]).is_err());
    }
}
