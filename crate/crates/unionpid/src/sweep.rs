//! Parameter sweeps over the one-parameter families.

use std::fmt::Write as _;

use unionpid_core::{CorpusName, OptimizerConfig};

use crate::error::{CliError, Result};
use crate::measures::Measure;
use crate::reproduce::load;

pub const FAMILIES: [CorpusName; 3] = [
    CorpusName::AdaptedXor,
    CorpusName::AdaptedXorV2,
    CorpusName::AdaptedReducedOr,
];

pub fn parse_family(s: &str) -> Result<CorpusName> {
    let name: CorpusName = s.parse()?;
    if FAMILIES.contains(&name) {
        Ok(name)
    } else {
        Err(CliError::arg(format!("{name} is not a parametric family")))
    }
}

/// `steps + 1` evenly spaced points covering `[0, 1]`.
pub fn even_grid(steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(CliError::arg("a grid needs at least one step"));
    }
    Ok((0..=steps).map(|k| k as f64 / steps as f64).collect())
}

/// CSV with header `r,<measure>...` and one row per grid point, every
/// non-target variable taken as a singleton source.
pub fn sweep(
    family: CorpusName,
    grid: &[f64],
    measures: &[Measure],
    config: &OptimizerConfig,
) -> Result<String> {
    if measures.is_empty() {
        return Err(CliError::arg("no measures requested"));
    }
    if let Some(r) = grid.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(CliError::arg(format!("grid point {r} is outside [0, 1]")));
    }
    let mut out = String::from("r");
    for m in measures {
        out.push(',');
        out.push_str(m.name());
    }
    out.push('\n');
    for &r in grid {
        let (d, t, c) = load(family, Some(r))?;
        let _ = write!(out, "{r}");
        for m in measures {
            let _ = write!(out, ",{:.6}", m.evaluate(&d, t, &c, config)?);
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adapted_xor_ci_synergy() {
        let csv = sweep(
            CorpusName::AdaptedXor,
            &[0.0, 1.0],
            &[Measure::SCi],
            &OptimizerConfig::default(),
        )
        .unwrap();
        assert_eq!(csv, "r,s_ci\n0,0.270426\n1,1.000000\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_family("XOR").is_err());
        assert!(even_grid(0).is_err());
        assert_eq!(even_grid(4).unwrap(), [0.0, 0.25, 0.5, 0.75, 1.0]);
        let cfg = OptimizerConfig::default();
        assert!(sweep(CorpusName::AdaptedXor, &[1.5], &[Measure::SCi], &cfg).is_err());
        assert!(sweep(CorpusName::AdaptedXor, &[0.5], &[], &cfg).is_err());
    }
}
