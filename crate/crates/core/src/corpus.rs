//! Canonical example distributions and parametric families.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{JointDistribution, PidError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CorpusName {
    Xor,
    And,
    Copy,
    /// `T = Y1` with `Y2` an independent fair bit.
    TEqualsY1,
    TweakedCopy,
    Boom,
    AdaptedReducedOr,
    /// `T = Y1 AND Y2` together with `Z = (Y1, Y2)`.
    TargetMonoAnd,
    /// Five-outcome counterexample over `T, Z, Y1, Y2`.
    TargetMonoCi,
    /// `T1` a relabelled COPY target and `T2 = Y1 xor Y2`.
    CopyXorTargets,
    AdaptedXor,
    AdaptedXorV2,
    RdnXor,
    RdnUnqXor,
    XorDuplicate,
    AndDuplicate,
    XorLoses,
    XorMultiCoal,
}

/// Metadata for one canonical distribution.
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: CorpusName,
    pub key: &'static str,
    pub target_var: &'static str,
    pub takes_parameter: bool,
    pub citation: &'static str,
}

const ENTRIES: &[CorpusEntry] = &[
    entry(
        CorpusName::Xor,
        "XOR",
        "T",
        false,
        "T = Y1 xor Y2, fair independent inputs",
    ),
    entry(
        CorpusName::And,
        "AND",
        "T",
        false,
        "T = Y1 and Y2, fair independent inputs",
    ),
    entry(
        CorpusName::Copy,
        "COPY",
        "T",
        false,
        "T = (Y1, Y2), fair independent inputs",
    ),
    entry(
        CorpusName::TEqualsY1,
        "T_EQ_Y1",
        "T",
        false,
        "T = Y1, Y2 an independent fair bit",
    ),
    entry(
        CorpusName::TweakedCopy,
        "TWEAKED_COPY",
        "T",
        false,
        "tweaked COPY distribution",
    ),
    entry(
        CorpusName::Boom,
        "BOOM",
        "T",
        false,
        "BOOM, overlapping three-symbol sources",
    ),
    entry(
        CorpusName::AdaptedReducedOr,
        "ADAPTED_REDUCED_OR",
        "T",
        true,
        "adapted ReducedOR distribution",
    ),
    entry(
        CorpusName::TargetMonoAnd,
        "TARGET_MONO_AND",
        "T",
        false,
        "target monotonicity counterexample with Z = (Y1, Y2)",
    ),
    entry(
        CorpusName::TargetMonoCi,
        "TARGET_MONO_CI",
        "T",
        false,
        "target monotonicity counterexample, five outcomes",
    ),
    entry(
        CorpusName::CopyXorTargets,
        "COPY_XOR_TARGETS",
        "T1",
        false,
        "T1 = COPY, T2 = XOR",
    ),
    entry(
        CorpusName::AdaptedXor,
        "ADAPTED_XOR",
        "T",
        true,
        "adapted XOR distribution",
    ),
    entry(
        CorpusName::AdaptedXorV2,
        "ADAPTED_XOR_V2",
        "T",
        true,
        "adapted XOR distribution v2",
    ),
    entry(
        CorpusName::RdnXor,
        "RDNXOR",
        "T",
        false,
        "redundant bit plus an XOR bit",
    ),
    entry(
        CorpusName::RdnUnqXor,
        "RDNUNQXOR",
        "T",
        false,
        "redundant, unique and XOR bits",
    ),
    entry(
        CorpusName::XorDuplicate,
        "XORDUPLICATE",
        "T",
        false,
        "XOR with Y3 = Y2",
    ),
    entry(
        CorpusName::AndDuplicate,
        "ANDDUPLICATE",
        "T",
        false,
        "AND with Y3 = Y2",
    ),
    entry(
        CorpusName::XorLoses,
        "XORLOSES",
        "T",
        false,
        "XOR plus a third source Y3 = T",
    ),
    entry(
        CorpusName::XorMultiCoal,
        "XORMULTICOAL",
        "T",
        false,
        "XOR target recoverable from any pair of sources",
    ),
];

const fn entry(
    name: CorpusName,
    key: &'static str,
    target_var: &'static str,
    takes_parameter: bool,
    citation: &'static str,
) -> CorpusEntry {
    CorpusEntry {
        name,
        key,
        target_var,
        takes_parameter,
        citation,
    }
}

impl CorpusName {
    pub fn all() -> impl Iterator<Item = CorpusName> {
        ENTRIES.iter().map(|e| e.name)
    }

    pub fn entry(self) -> &'static CorpusEntry {
        ENTRIES
            .iter()
            .find(|e| e.name == self)
            .unwrap_or_else(|| unreachable!())
    }

    pub fn key(self) -> &'static str {
        self.entry().key
    }

    pub fn target_var(self) -> &'static str {
        self.entry().target_var
    }
}

impl fmt::Display for CorpusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for CorpusName {
    type Err = PidError;

    fn from_str(s: &str) -> Result<Self> {
        ENTRIES
            .iter()
            .find(|e| e.key.eq_ignore_ascii_case(s))
            .map(|e| e.name)
            .ok_or_else(|| PidError::arg(format!("unknown corpus distribution {s}")))
    }
}

fn build(names: &[&str], rows: &[(&[&str], f64)]) -> Result<JointDistribution> {
    JointDistribution::from_rows(names, rows)
}

/// Equiprobable rows given as integer symbols.
fn uniform(names: &[&str], rows: &[&[u32]]) -> Result<JointDistribution> {
    let p = 1.0 / rows.len() as f64;
    let symbols: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|v| format!("{v}")).collect())
        .collect();
    let refs: Vec<Vec<&str>> = symbols
        .iter()
        .map(|r| r.iter().map(String::as_str).collect())
        .collect();
    let rows: Vec<(&[&str], f64)> = refs.iter().map(|r| (r.as_slice(), p)).collect();
    JointDistribution::from_rows(names, &rows)
}

/// Builds a canonical distribution. Parametric families need `param = Some(r)`
/// with `r` in `[0, 1]`; the others reject a parameter.
pub fn canonical(name: CorpusName, param: Option<f64>) -> Result<JointDistribution> {
    let entry = name.entry();
    let r = match (entry.takes_parameter, param) {
        (true, Some(r)) if (0.0..=1.0).contains(&r) => r,
        (true, Some(r)) => {
            return Err(PidError::arg(format!(
                "{} parameter r = {r} is outside [0, 1]",
                entry.key
            )))
        }
        (true, None) => return Err(PidError::arg(format!("{} needs a parameter r", entry.key))),
        (false, Some(_)) => return Err(PidError::arg(format!("{} takes no parameter", entry.key))),
        (false, None) => 0.0,
    };
    let tyy = ["T", "Y1", "Y2"];
    let tyyy = ["T", "Y1", "Y2", "Y3"];
    match name {
        CorpusName::Xor => uniform(&tyy, &[&[0, 0, 0], &[1, 0, 1], &[1, 1, 0], &[0, 1, 1]]),
        CorpusName::And => uniform(&tyy, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 1, 1]]),
        CorpusName::Copy => build(
            &tyy,
            &[
                (&["(0,0)", "0", "0"], 0.25),
                (&["(0,1)", "0", "1"], 0.25),
                (&["(1,0)", "1", "0"], 0.25),
                (&["(1,1)", "1", "1"], 0.25),
            ],
        ),
        CorpusName::TEqualsY1 => uniform(&tyy, &[&[0, 0, 0], &[0, 0, 1], &[1, 1, 0], &[1, 1, 1]]),
        CorpusName::TweakedCopy => build(
            &tyy,
            &[
                (&["(0,0)", "0", "0"], 1.0 / 3.0),
                (&["(0,1)", "0", "1"], 1.0 / 3.0),
                (&["(1,0)", "1", "0"], 1.0 / 3.0),
            ],
        ),
        CorpusName::Boom => uniform(
            &tyy,
            &[
                &[0, 0, 2],
                &[1, 0, 0],
                &[1, 1, 2],
                &[2, 0, 0],
                &[2, 2, 0],
                &[2, 2, 1],
            ],
        ),
        CorpusName::AdaptedReducedOr => build(
            &tyy,
            &[
                (&["0", "0", "0"], 0.5),
                (&["1", "0", "0"], r / 4.0),
                (&["1", "1", "0"], (1.0 - r) / 4.0),
                (&["1", "0", "1"], (1.0 - r) / 4.0),
                (&["1", "1", "1"], r / 4.0),
            ],
        ),
        CorpusName::TargetMonoAnd => build(
            &["T", "Z", "Y1", "Y2"],
            &[
                (&["0", "(0,0)", "0", "0"], 0.25),
                (&["0", "(0,1)", "0", "1"], 0.25),
                (&["0", "(1,0)", "1", "0"], 0.25),
                (&["1", "(1,1)", "1", "1"], 0.25),
            ],
        ),
        CorpusName::TargetMonoCi => build(
            &["T", "Z", "Y1", "Y2"],
            &[
                (&["0", "0", "1", "0"], 0.419),
                (&["1", "1", "2", "1"], 0.203),
                (&["2", "1", "3", "0"], 0.007),
                (&["0", "0", "3", "1"], 0.346),
                (&["2", "2", "4", "4"], 0.025),
            ],
        ),
        CorpusName::CopyXorTargets => uniform(
            &["T2", "T1", "Y1", "Y2"],
            &[&[0, 0, 0, 0], &[1, 1, 0, 1], &[1, 2, 1, 0], &[0, 3, 1, 1]],
        ),
        CorpusName::AdaptedXor => build(
            &tyy,
            &[
                (&["0", "0", "0"], r / 4.0),
                (&["1", "0", "0"], (1.0 - r) / 4.0),
                (&["1", "1", "0"], 0.25),
                (&["1", "0", "1"], 0.25),
                (&["0", "1", "1"], 0.25),
            ],
        ),
        CorpusName::AdaptedXorV2 => build(
            &tyy,
            &[
                (&["0", "0", "0"], r / 10.0),
                (&["1", "0", "0"], (1.0 - r) / 10.0),
                (&["1", "1", "0"], 0.4),
                (&["1", "0", "1"], 0.4),
                (&["0", "1", "1"], 0.1),
            ],
        ),
        CorpusName::RdnXor => uniform(
            &tyy,
            &[
                &[0, 0, 0],
                &[1, 0, 1],
                &[1, 1, 0],
                &[0, 1, 1],
                &[2, 2, 2],
                &[3, 2, 3],
                &[3, 3, 2],
                &[2, 3, 3],
            ],
        ),
        CorpusName::RdnUnqXor => uniform(
            &tyy,
            &[
                &[0, 0, 0],
                &[1, 0, 1],
                &[1, 1, 0],
                &[0, 1, 1],
                &[2, 0, 2],
                &[3, 0, 3],
                &[3, 1, 2],
                &[2, 1, 3],
                &[4, 2, 0],
                &[5, 2, 1],
                &[5, 3, 0],
                &[4, 3, 1],
                &[6, 2, 2],
                &[7, 2, 3],
                &[7, 3, 2],
                &[6, 3, 3],
                &[8, 4, 4],
                &[9, 4, 5],
                &[9, 5, 4],
                &[8, 5, 5],
                &[10, 4, 6],
                &[11, 4, 7],
                &[11, 5, 6],
                &[10, 5, 7],
                &[12, 6, 4],
                &[13, 6, 5],
                &[13, 7, 4],
                &[12, 7, 5],
                &[14, 6, 6],
                &[15, 6, 7],
                &[15, 7, 6],
                &[14, 7, 7],
            ],
        ),
        CorpusName::XorDuplicate => uniform(
            &tyyy,
            &[&[0, 0, 0, 0], &[1, 0, 1, 1], &[1, 1, 0, 0], &[0, 1, 1, 1]],
        ),
        CorpusName::AndDuplicate => uniform(
            &tyyy,
            &[&[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 1, 0, 0], &[1, 1, 1, 1]],
        ),
        CorpusName::XorLoses => uniform(
            &tyyy,
            &[&[0, 0, 0, 0], &[1, 0, 1, 1], &[1, 1, 0, 1], &[0, 1, 1, 0]],
        ),
        CorpusName::XorMultiCoal => uniform(
            &tyyy,
            &[
                &[0, 0, 0, 0],
                &[0, 1, 1, 1],
                &[0, 2, 2, 2],
                &[0, 3, 3, 3],
                &[1, 2, 1, 0],
                &[1, 3, 0, 1],
                &[1, 0, 3, 2],
                &[1, 1, 2, 3],
            ],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::mutual_information;

    #[test]
    fn every_entry_builds() {
        for name in CorpusName::all() {
            let param = name.entry().takes_parameter.then_some(0.3);
            let d = canonical(name, param).unwrap();
            assert!(d.var_index(name.target_var()).is_some(), "{name}");
            assert_eq!(name.key().parse::<CorpusName>().unwrap(), name);
        }
    }

    #[test]
    fn boom_has_six_equal_rows() {
        let d = canonical(CorpusName::Boom, None).unwrap();
        assert_eq!(d.entries().len(), 6);
        assert!(d.entries().iter().all(|e| e.1 == 1.0 / 6.0));
    }

    #[test]
    fn target_mono_ci_probabilities() {
        let d = canonical(CorpusName::TargetMonoCi, None).unwrap();
        let p: Vec<f64> = d.entries().iter().map(|e| e.1).collect();
        assert_eq!(p, [0.419, 0.203, 0.007, 0.346, 0.025]);
    }

    #[test]
    fn adapted_xor_at_one_is_xor_plus_zero_row() {
        let d = canonical(CorpusName::AdaptedXor, Some(1.0)).unwrap();
        let xor = canonical(CorpusName::Xor, None).unwrap();
        assert_eq!(d.entries().len(), 5);
        assert_eq!(d.support().count(), 4);
        let key = |dist: &JointDistribution| {
            let mut v: Vec<(Vec<String>, f64)> = dist
                .support()
                .map(|(o, p)| {
                    (
                        o.iter()
                            .enumerate()
                            .map(|(i, &s)| dist.alphabets()[i][s].clone())
                            .collect(),
                        p,
                    )
                })
                .collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v
        };
        assert_eq!(key(&d), key(&xor));
    }

    #[test]
    fn parameter_validation() {
        assert!(canonical(CorpusName::AdaptedXor, None).is_err());
        assert!(canonical(CorpusName::AdaptedXor, Some(1.5)).is_err());
        assert!(canonical(CorpusName::Xor, Some(0.5)).is_err());
        assert!("NOPE".parse::<CorpusName>().is_err());
    }

    #[test]
    fn total_information_matches_known_values() {
        let cases = [
            (CorpusName::Xor, 1.0),
            (CorpusName::And, 0.811_278_124_459),
            (CorpusName::Copy, 2.0),
            (CorpusName::RdnXor, 2.0),
            (CorpusName::RdnUnqXor, 4.0),
            (CorpusName::XorDuplicate, 1.0),
            (CorpusName::AndDuplicate, 0.811_278_124_459),
            (CorpusName::XorLoses, 1.0),
            (CorpusName::XorMultiCoal, 1.0),
            (CorpusName::TweakedCopy, 1.584_962_500_721),
        ];
        for (name, expected) in cases {
            let d = canonical(name, None).unwrap();
            let t = d.vars(&["T"]).unwrap();
            let v = mutual_information(&d, d.complement(t), t).unwrap();
            assert!((v - expected).abs() < 1e-9, "{name}: {v}");
        }
    }
}
