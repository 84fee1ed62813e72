//! Canonical renderings of the polynomial families for inspection.

use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use cuboid_core::cuboid::{build_f, build_g, build_ps, build_qpq, build_uv_param, ParamError};
use cuboid_core::{CuboidParams, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Qpq,
    Ps,
    F,
    G,
    Param,
}

impl FromStr for Target {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qpq" => Ok(Target::Qpq),
            "ps" => Ok(Target::Ps),
            "f" => Ok(Target::F),
            "g" => Ok(Target::G),
            "param" => Ok(Target::Param),
            other => Err(anyhow!("unknown target {:?}: expected qpq, ps, f, g or param", other)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShowArgs {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub s: Option<String>,
}

/// Coprime positive `p, q`; the excluded pair `(1, 1)` is allowed here.
fn params(p: u64, q: u64) -> Result<CuboidParams> {
    match CuboidParams::new(p, q) {
        Ok(params) => Ok(params),
        Err(ParamError::Excluded(1)) => Ok(CuboidParams::control()),
        Err(e) => Err(e.into()),
    }
}

fn pair(args: &ShowArgs) -> Result<Option<CuboidParams>> {
    match (args.p, args.q) {
        (Some(p), Some(q)) => params(p, q).map(Some),
        (None, None) => Ok(None),
        _ => bail!("--p and --q must be given together"),
    }
}

/// Renders `target` as canonical text. Invalid or missing parameters are
/// errors.
pub fn show(target: Target, args: &ShowArgs) -> Result<String> {
    let pq = pair(args)?;
    if pq.is_some() && args.s.is_some() {
        bail!("give either --p/--q or --s, not both");
    }
    match target {
        Target::Qpq => {
            if args.s.is_some() {
                bail!("qpq takes --p and --q");
            }
            let params = pq.ok_or_else(|| anyhow!("qpq needs --p and --q"))?;
            Ok(build_qpq(&params).display_in(Var::T))
        }
        Target::Ps => {
            let s = match (&args.s, pq) {
                (Some(text), _) => Rational::from_str(text).map_err(|e| anyhow!("--s: {}", e))?,
                (None, Some(params)) => params.s(),
                (None, None) => bail!("ps needs --s NUM/DEN or --p and --q"),
            };
            if !s.is_positive() {
                bail!("--s must be a positive rational");
            }
            Ok(build_ps(&s).to_string())
        }
        Target::F | Target::G | Target::Param => {
            if pq.is_some() || args.s.is_some() {
                bail!("this target takes no parameters");
            }
            Ok(match target {
                Target::F => build_f().to_string(),
                Target::G => build_g().to_string(),
                _ => {
                    let (u, v) = build_uv_param();
                    format!("U = {}\nV = {}", u, v)
                }
            })
        }
    }
}
