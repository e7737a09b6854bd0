use defkit::algebra::Budget;
use serde::Serialize;

use crate::args::{Cli, Format};
use crate::ErrorObject;

/// Environment variable with `key=value` overrides, comma separated, e.g.
/// `max_basis_elements=5000,jet_degree_cap=32`. Flags win over it.
pub const BUDGET_ENV: &str = "DEFKIT_BUDGET";

const KEYS: [&str; 5] =
    ["max_basis_elements", "max_saturation_iterations", "jet_degree_cap", "max_minors", "resolution_cap"];

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub budget: Budget,
    pub resolution_cap: usize,
    /// Where each non-default cap came from: `env` or `flag`.
    pub overrides: Vec<(String, &'static str)>,
}

impl RunConfig {
    pub fn resolve(cli: &Cli, env: Option<&str>) -> Result<Self, ErrorObject> {
        let mut cfg = RunConfig {
            format: cli.format,
            seed: cli.seed,
            budget: Budget::default(),
            resolution_cap: defkit::resolve::DEFAULT_CAP,
            overrides: Vec::new(),
        };
        if let Some(env) = env.filter(|e| !e.trim().is_empty()) {
            for item in env.split(',') {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| ErrorObject::usage(format!("{BUDGET_ENV}: expected key=value, got `{item}`")))?;
                let value: u64 = value
                    .trim()
                    .parse()
                    .ok()
                    .filter(|v| *v > 0)
                    .ok_or_else(|| ErrorObject::usage(format!("{BUDGET_ENV}: `{}` needs a positive integer", key.trim())))?;
                cfg.set(key.trim(), value, "env")?;
            }
        }
        let flags = [
            ("max_basis_elements", cli.max_basis),
            ("max_saturation_iterations", cli.max_saturation),
            ("jet_degree_cap", cli.jet_cap.map(u64::from)),
            ("max_minors", cli.max_minors),
            ("resolution_cap", cli.resolution_cap),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v, "flag")?;
            }
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: u64, source: &'static str) -> Result<(), ErrorObject> {
        let too_big = || ErrorObject::usage(format!("{key} = {value} is out of range"));
        match key {
            "max_basis_elements" => self.budget.max_basis_elements = usize::try_from(value).map_err(|_| too_big())?,
            "max_saturation_iterations" => {
                self.budget.max_saturation_iterations = usize::try_from(value).map_err(|_| too_big())?
            }
            "jet_degree_cap" => self.budget.jet_degree_cap = u32::try_from(value).map_err(|_| too_big())?,
            "max_minors" => self.budget.max_minors = usize::try_from(value).map_err(|_| too_big())?,
            "resolution_cap" => self.resolution_cap = usize::try_from(value).map_err(|_| too_big())?,
            _ => {
                return Err(ErrorObject::usage(format!(
                    "{BUDGET_ENV}: unknown key `{key}` (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        self.overrides.retain(|(k, _)| k != key);
        self.overrides.push((key.to_string(), source));
        Ok(())
    }
}
