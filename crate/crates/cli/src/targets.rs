//! Built-in test functions addressed by name, with `key=value` overrides.

use onb_core::testfns::{LangermannParams, LissajousParams, SincParams};
use onb_core::Interval;

use crate::error::{CliError, CliResult};

pub const NAMES: [&str; 3] = ["lissajous", "sinc", "langermann"];

#[derive(Clone, Debug)]
pub enum Target {
    Lissajous(LissajousParams),
    Sinc(SincParams),
    Langermann(LangermannParams),
}

impl Target {
    pub fn parse(name: &str, overrides: &[String]) -> CliResult<Self> {
        let mut target = match name {
            "lissajous" => Target::Lissajous(LissajousParams::default()),
            "sinc" => Target::Sinc(SincParams::default()),
            "langermann" => Target::Langermann(LangermannParams::default()),
            other => {
                return Err(CliError::config(format!(
                    "unknown target '{other}'; valid targets: {}",
                    NAMES.join(", ")
                )))
            }
        };
        for kv in overrides {
            let (key, value) = kv.split_once('=').ok_or_else(|| {
                CliError::config(format!("--param expects key=value, got '{kv}'"))
            })?;
            target.set(key.trim(), value.trim())?;
        }
        if let Target::Langermann(p) = &target {
            p.validate()?;
        }
        Ok(target)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Target::Lissajous(_) => "lissajous",
            Target::Sinc(_) => "sinc",
            Target::Langermann(_) => "langermann",
        }
    }

    pub fn is_curve(&self) -> bool {
        matches!(self, Target::Lissajous(_))
    }

    /// Parameter interval for curves, square side for surfaces.
    pub fn domain(&self) -> Interval {
        match self {
            Target::Lissajous(p) => p.t_interval,
            Target::Sinc(p) => p.domain,
            Target::Langermann(p) => p.domain,
        }
    }

    pub fn set_domain(&mut self, iv: Interval) {
        match self {
            Target::Lissajous(p) => p.t_interval = iv,
            Target::Sinc(p) => p.domain = iv,
            Target::Langermann(p) => p.domain = iv,
        }
    }

    pub fn surface(&self) -> Option<Box<dyn Fn(f64, f64) -> f64 + Sync + '_>> {
        match self {
            Target::Lissajous(_) => None,
            Target::Sinc(p) => Some(Box::new(move |x, y| p.eval(x, y))),
            Target::Langermann(p) => Some(Box::new(move |x, y| p.eval(x, y))),
        }
    }

    fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let name = self.name();
        let bad = || {
            CliError::config(format!(
                "invalid value '{value}' for {name} parameter '{key}'"
            ))
        };
        let unknown = |valid: &str| {
            CliError::config(format!("unknown {name} parameter '{key}'; valid: {valid}"))
        };
        let num = |v: &str| v.parse::<f64>().ok().filter(|x| x.is_finite());
        match self {
            Target::Lissajous(p) => match key {
                "amp_x" => p.amp_x = num(value).ok_or_else(bad)?,
                "amp_y" => p.amp_y = num(value).ok_or_else(bad)?,
                "a_freq" => p.a_freq = value.parse().map_err(|_| bad())?,
                "b_freq" => p.b_freq = value.parse().map_err(|_| bad())?,
                "delta" => p.delta = num(value).ok_or_else(bad)?,
                _ => return Err(unknown("amp_x, amp_y, a_freq, b_freq, delta")),
            },
            Target::Sinc(p) => match key {
                "s" => p.s = num(value).ok_or_else(bad)?,
                _ => return Err(unknown("s")),
            },
            Target::Langermann(p) => {
                let list = value
                    .split(',')
                    .map(|v| num(v.trim()))
                    .collect::<Option<Vec<f64>>>()
                    .ok_or_else(bad)?;
                match key {
                    "c" => p.c = list,
                    "q" => p.q = list,
                    "r" => p.r = list,
                    _ => return Err(unknown("c, q, r (comma-separated lists)")),
                }
            }
        }
        Ok(())
    }
}
