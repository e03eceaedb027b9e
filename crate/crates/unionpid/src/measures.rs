//! Measures selectable by name from the command line.

use std::fmt;
use std::str::FromStr;

use unionpid_core::{
    ci_synergy, ci_union_information, degradation_redundancy, delta_i_synergy, dep_synergy,
    imin_redundancy, marginalize, mutual_information, s_d, vk_union_information, wb_pid,
    wms_synergy, JointDistribution, OptimizerConfig, SourceCollection, VariableSet,
};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    ITotal,
    ICupCi,
    SCi,
    SWms,
    SWb,
    SDeltaI,
    ICapD,
    ICupD,
    SD,
    SDep,
    IMin,
}

impl Measure {
    pub const ALL: [Measure; 11] = [
        Measure::ITotal,
        Measure::ICupCi,
        Measure::SCi,
        Measure::SWms,
        Measure::SWb,
        Measure::SDeltaI,
        Measure::ICapD,
        Measure::ICupD,
        Measure::SD,
        Measure::SDep,
        Measure::IMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::ITotal => "i_total",
            Measure::ICupCi => "i_cup_ci",
            Measure::SCi => "s_ci",
            Measure::SWms => "s_wms",
            Measure::SWb => "s_wb",
            Measure::SDeltaI => "s_delta_i",
            Measure::ICapD => "i_cap_d",
            Measure::ICupD => "i_cup_d",
            Measure::SD => "s_d",
            Measure::SDep => "s_dep",
            Measure::IMin => "i_min",
        }
    }

    /// Measures defined on every non-target variable as a singleton source.
    fn needs_singletons(self) -> bool {
        matches!(
            self,
            Measure::SWms | Measure::SWb | Measure::SDeltaI | Measure::SDep
        )
    }

    /// Evaluates the measure in bits.
    pub fn evaluate(
        self,
        dist: &JointDistribution,
        target: VariableSet,
        sources: &SourceCollection,
        config: &OptimizerConfig,
    ) -> Result<f64> {
        let value = match self {
            Measure::ITotal => mutual_information(dist, sources.union(), target)?,
            Measure::ICupCi => ci_union_information(dist, target, sources)?,
            Measure::SCi => ci_synergy(dist, target, sources)?,
            Measure::ICapD => degradation_redundancy(dist, target, sources, config)?.value,
            Measure::ICupD => vk_union_information(dist, target, sources, config)?.value,
            Measure::SD => s_d(dist, target, sources, config)?,
            Measure::IMin => imin_redundancy(dist, target, sources)?,
            Measure::SWms | Measure::SWb | Measure::SDeltaI | Measure::SDep => {
                let (d, t) = singleton_marginal(self, dist, target, sources)?;
                match self {
                    Measure::SWms => wms_synergy(&d, t)?,
                    Measure::SWb => wb_pid(&d, t)?.synergy(),
                    Measure::SDeltaI => delta_i_synergy(&d, t)?,
                    _ => dep_synergy(&d, t)?.synergy,
                }
            }
        };
        Ok(value)
    }
}

/// Restricts `dist` to the target and the sources, which must be distinct
/// single variables.
fn singleton_marginal(
    m: Measure,
    dist: &JointDistribution,
    target: VariableSet,
    sources: &SourceCollection,
) -> Result<(JointDistribution, VariableSet)> {
    let union = sources.union();
    if sources.sources().iter().any(|s| s.members().len() != 1) || sources.len() != union.len() {
        return Err(CliError::arg(format!(
            "{} needs distinct single-variable sources",
            m.name()
        )));
    }
    debug_assert!(m.needs_singletons());
    let d = marginalize(dist, target.union(union))?;
    let names: Vec<&str> = target
        .iter()
        .map(|i| dist.var_names()[i].as_str())
        .collect();
    let t = d.vars(&names)?;
    Ok((d, t))
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Measure::ALL.iter().map(|m| m.name()).collect();
                CliError::arg(format!(
                    "unknown measure {s}; expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use unionpid_core::{canonical, CorpusName};

    #[test]
    fn names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("s_sd".parse::<Measure>().is_err());
    }

    #[test]
    fn singleton_measures_use_the_named_sources_only() {
        let d = canonical(CorpusName::XorLoses, None).unwrap();
        let t = d.vars(&["T"]).unwrap();
        let cfg = OptimizerConfig::default();
        let pair = SourceCollection::parse("Y1;Y2", &d).unwrap();
        let s = Measure::SWms.evaluate(&d, t, &pair, &cfg).unwrap();
        assert!((s - 1.0).abs() < 1e-9);
        let joint = SourceCollection::parse("Y1,Y2", &d).unwrap();
        assert!(Measure::SWb.evaluate(&d, t, &joint, &cfg).is_err());
    }
}
