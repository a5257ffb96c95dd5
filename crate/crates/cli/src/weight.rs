//! Weight specifications as they arrive from the command line.

use kostant_core::{EpsVector, RankContext};

use crate::Failure;

/// Parses the value of a weight flag: `highest-root`, `zero`, `fund:a1,…,ar`,
/// `eps:x1,…,xn`, or a bare list of fundamental coefficients.
pub fn parse(flag: &str, text: &str, ctx: &RankContext) -> Result<EpsVector, Failure> {
    match text {
        "highest-root" => return Ok(ctx.highest_root().clone()),
        "zero" => return Ok(ctx.zero()),
        _ => {}
    }
    let (style, list) = match text.split_once(':') {
        Some((style, list)) => (style, list),
        None => ("fund", text),
    };
    let values = parse_list(flag, list)?;
    match style {
        "fund" => {
            if values.len() != ctx.rank() {
                return Err(Failure::usage(format!(
                    "{flag}: expected {} fundamental coefficients for rank {}, got {}",
                    ctx.rank(),
                    ctx.rank(),
                    values.len()
                )));
            }
            ctx.from_fundamental_coeffs(&values)
                .map_err(|e| Failure::usage(format!("{flag}: {e}")))
        }
        "eps" => {
            if values.len() != ctx.n() {
                return Err(Failure::usage(format!(
                    "{flag}: expected {} ε-coordinates for rank {}, got {}",
                    ctx.n(),
                    ctx.rank(),
                    values.len()
                )));
            }
            Ok(EpsVector::new(values))
        }
        other => Err(Failure::usage(format!(
            "{flag}: unknown weight style `{other}` (use --fund, --eps, --highest-root or --zero)"
        ))),
    }
}

fn parse_list(flag: &str, list: &str) -> Result<Vec<i64>, Failure> {
    let malformed = || Failure::usage(format!("{flag}: malformed weight list `{list}`"));
    if list.trim().is_empty() {
        return Err(malformed());
    }
    list.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| malformed()))
        .collect()
}
