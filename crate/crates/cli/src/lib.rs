//! The `defkit` command line: argument parsing, configuration, dispatch and
//! report assembly. [`run`] is the whole program minus process plumbing, so
//! tests drive it in-process.

mod args;
mod commands;
mod config;

use std::ffi::OsString;
use std::io::Read;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, Format};
pub use config::{RunConfig, BUDGET_ENV};

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Structured error as it appears in the `errors` array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorObject {
    /// `usage`, `parse`, `domain` or `internal`.
    pub kind: &'static str,
    /// Module that raised a domain error.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<&'static str>,
    pub message: String,
    /// 1-based column of a parse error.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    /// The offending input, for parse errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
}

impl ErrorObject {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        ErrorObject { kind: "usage", module: None, message: message.into(), column: None, input: None }
    }

    pub(crate) fn domain(module: &'static str, err: impl std::fmt::Display) -> Self {
        ErrorObject { kind: "domain", module: Some(module), message: err.to_string(), column: None, input: None }
    }

    pub(crate) fn parse(input: &str, err: &defkit::ParseError) -> Self {
        ErrorObject {
            kind: "parse",
            module: None,
            message: err.kind.to_string(),
            column: Some(err.column),
            input: Some(input.to_string()),
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind {
            "usage" | "parse" => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }
}

/// What a command produced: the JSON result and its text rendering.
pub(crate) struct Done {
    pub result: Value,
    pub text: String,
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return clap_failure(e),
    };
    let config = match RunConfig::resolve(&cli, std::env::var(BUDGET_ENV).ok().as_deref()) {
        Ok(c) => c,
        Err(e) => return finish(&cli, None, Err(e)),
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| config.budget.scope(|| commands::dispatch(&cli.command, &config, stdin))));
    let result = outcome.unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown failure".into());
        Err(ErrorObject { kind: "internal", module: None, message: msg, column: None, input: None })
    });
    finish(&cli, Some(&config), result)
}

fn clap_failure(e: clap::Error) -> Outcome {
    let rendered = e.render().to_string();
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
        }
        _ => {
            let first = rendered.lines().next().unwrap_or("usage error").trim_start_matches("error: ").to_string();
            let report = json!({
                "command": Value::Null,
                "config": Value::Null,
                "result": Value::Null,
                "errors": [ErrorObject::usage(first)],
            });
            Outcome { code: EXIT_USAGE, stdout: pretty(&report), stderr: rendered }
        }
    }
}

fn finish(cli: &Cli, config: Option<&RunConfig>, result: Result<Done, ErrorObject>) -> Outcome {
    let command = commands::name(&cli.command);
    let (code, result_value, text, errors) = match result {
        Ok(done) => (EXIT_OK, done.result, done.text, Vec::new()),
        Err(e) => (e.exit_code(), Value::Null, String::new(), vec![e]),
    };
    let stderr: String = errors.iter().map(|e| format!("defkit: {}: {}\n", e.kind, describe(e))).collect();
    let stdout = match cli.format {
        Format::Json => pretty(&json!({
            "command": command,
            "config": config,
            "result": result_value,
            "errors": errors,
        })),
        Format::Text if errors.is_empty() => ensure_newline(text),
        Format::Text => String::new(),
    };
    Outcome { code, stdout, stderr }
}

fn describe(e: &ErrorObject) -> String {
    match (&e.input, e.column) {
        (Some(input), Some(col)) => format!("{} at column {col} of `{input}`", e.message),
        _ => e.message.clone(),
    }
}

fn pretty(v: &Value) -> String {
    ensure_newline(serde_json::to_string_pretty(v).expect("JSON values always serialize"))
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
