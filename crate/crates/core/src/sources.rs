//! Sources, source collections and conditional-independence partitions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::distribution::{raw_entropy, JointDistribution, VariableSet};
use crate::{PidError, Result};

/// Deterministic-function threshold on `H(a | b)`.
pub const DETERMINISM_TOLERANCE: f64 = 1e-9;

/// A non-empty group of source variables treated as one unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Source(VariableSet);

impl Source {
    pub fn new(members: VariableSet) -> Result<Self> {
        if members.is_empty() {
            Err(PidError::arg("a source must contain at least one variable"))
        } else {
            Ok(Source(members))
        }
    }

    pub fn members(self) -> VariableSet {
        self.0
    }
}

/// An ordered, non-empty list of sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceCollection(Vec<Source>);

impl SourceCollection {
    pub fn new(sources: Vec<Source>) -> Result<Self> {
        if sources.is_empty() {
            Err(PidError::arg("a source collection must not be empty"))
        } else {
            Ok(SourceCollection(sources))
        }
    }

    /// One singleton source per variable of `vars`, in ascending order.
    pub fn singletons(vars: VariableSet) -> Result<Self> {
        Self::new(
            vars.iter()
                .map(|i| Source(VariableSet::single(i)))
                .collect(),
        )
    }

    pub fn from_sets<I: IntoIterator<Item = VariableSet>>(sets: I) -> Result<Self> {
        Self::new(sets.into_iter().map(Source::new).collect::<Result<_>>()?)
    }

    /// Parses `"Y1,Y2;Y3"` into `{{Y1,Y2},{Y3}}` against the variable names of `dist`.
    pub fn parse(spec: &str, dist: &JointDistribution) -> Result<Self> {
        let mut sources = Vec::new();
        for part in spec.split(';') {
            let names: Vec<&str> = part
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return Err(PidError::arg(format!("empty source in \"{spec}\"")));
            }
            sources.push(Source::new(dist.vars(&names)?)?);
        }
        Self::new(sources)
    }

    pub fn sources(&self) -> &[Source] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union of all source variables.
    pub fn union(&self) -> VariableSet {
        self.0
            .iter()
            .fold(VariableSet::EMPTY, |acc, s| acc.union(s.members()))
    }

    pub fn with(&self, extra: Source) -> Self {
        let mut v = self.0.clone();
        v.push(extra);
        SourceCollection(v)
    }

    pub fn label(&self, dist: &JointDistribution) -> String {
        let parts: Vec<String> = self.0.iter().map(|s| dist.label(s.members())).collect();
        parts.join(";")
    }

    pub(crate) fn validate(&self, dist: &JointDistribution, target: VariableSet) -> Result<()> {
        dist.check_vars(target.union(self.union()))?;
        if target.is_empty() {
            return Err(PidError::arg(
                "the target must contain at least one variable",
            ));
        }
        if !self.union().is_disjoint(target) {
            return Err(PidError::arg("sources may not contain target variables"));
        }
        Ok(())
    }
}

/// True iff `H(a | given) <= 1e-9`.
pub fn is_deterministic(dist: &JointDistribution, a: VariableSet, given: VariableSet) -> bool {
    let h = raw_entropy(dist, a.union(given)) - raw_entropy(dist, given);
    h <= DETERMINISM_TOLERANCE
}

/// Removes sources contained in another source, then sources that are a
/// deterministic function of a single other retained source.
///
/// Exact duplicates keep their first occurrence. Deterministic candidates are
/// scanned from the last-listed source to the first, so of two mutually
/// deterministic sources the earlier one survives.
pub fn normalize_sources(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
) -> Result<SourceCollection> {
    coll.validate(dist, target)?;
    let src = coll.sources();
    let mut kept: Vec<Source> = Vec::with_capacity(src.len());
    for (i, s) in src.iter().enumerate() {
        let dominated = src.iter().enumerate().any(|(j, other)| {
            j != i
                && s.members().is_subset_of(other.members())
                && (s.members() != other.members() || j < i)
        });
        if !dominated {
            kept.push(*s);
        }
    }
    let mut j = kept.len();
    while j > 0 {
        j -= 1;
        let cand = kept[j].members();
        let removable = kept
            .iter()
            .enumerate()
            .any(|(i, other)| i != j && is_deterministic(dist, cand, other.members()));
        if removable {
            kept.remove(j);
        }
    }
    SourceCollection::new(kept)
}

/// A partition of the union of a collection into blocks, each inside a source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiPartition {
    blocks: Vec<VariableSet>,
    witness: Vec<usize>,
}

impl CiPartition {
    pub fn blocks(&self) -> &[VariableSet] {
        &self.blocks
    }

    /// For each block, the index of the first source containing it.
    pub fn witness(&self) -> &[usize] {
        &self.witness
    }

    pub fn union(&self) -> VariableSet {
        self.blocks
            .iter()
            .fold(VariableSet::EMPTY, |acc, b| acc.union(*b))
    }

    pub fn label(&self, dist: &JointDistribution) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|b| dist.label(*b)).collect();
        parts.join("|")
    }
}

/// Every set partition of the union whose blocks each fit inside some source.
///
/// Partitions are produced in restricted-growth-string order: the coarsest
/// candidate first, the all-singletons partition last. Blocks are ordered by
/// their smallest variable.
pub fn enumerate_ci_partitions(coll: &SourceCollection) -> Vec<CiPartition> {
    let elements = coll.union().to_vec();
    let n = elements.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = alloc::vec![0usize; n];
    loop {
        let blocks_count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = alloc::vec![VariableSet::EMPTY; blocks_count];
        for (k, &b) in rgs.iter().enumerate() {
            blocks[b] = blocks[b].union(VariableSet::single(elements[k]));
        }
        let witness: Option<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                coll.sources()
                    .iter()
                    .position(|s| b.is_subset_of(s.members()))
            })
            .collect();
        if let Some(witness) = witness {
            out.push(CiPartition { blocks, witness });
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    out
}

/// Advances a restricted growth string; returns false after the last one.
fn next_rgs(rgs: &mut [usize]) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= prefix_max {
            rgs[i] += 1;
            for v in rgs[i + 1..].iter_mut() {
                *v = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{canonical, CorpusName};
    use alloc::vec;

    fn set(v: &[usize]) -> VariableSet {
        VariableSet::from_indices(v.iter().copied())
    }

    #[test]
    fn parse_source_spec() {
        let d = canonical(CorpusName::XorLoses, None).unwrap();
        let c = SourceCollection::parse("Y1,Y2;Y3", &d).unwrap();
        assert_eq!(c.sources()[0].members(), set(&[1, 2]));
        assert_eq!(c.sources()[1].members(), set(&[3]));
        assert_eq!(c.label(&d), "Y1,Y2;Y3");
        assert!(SourceCollection::parse("Y1;;Y2", &d).is_err());
        assert!(SourceCollection::parse("Y9", &d).is_err());
    }

    #[test]
    fn duplicate_source_is_dropped() {
        let d = canonical(CorpusName::Xor, None).unwrap();
        let t = d.vars(&["T"]).unwrap();
        let c = SourceCollection::parse("Y1;Y2;Y2", &d).unwrap();
        let n = normalize_sources(&d, t, &c).unwrap();
        assert_eq!(n, SourceCollection::parse("Y1;Y2", &d).unwrap());
    }

    #[test]
    fn deterministic_duplicate_variable_is_dropped() {
        let d = canonical(CorpusName::AndDuplicate, None).unwrap();
        let t = d.vars(&["T"]).unwrap();
        let c = SourceCollection::parse("Y1;Y2;Y3", &d).unwrap();
        let n = normalize_sources(&d, t, &c).unwrap();
        assert_eq!(n, SourceCollection::parse("Y1;Y2", &d).unwrap());
        // the earlier-listed of two mutually deterministic sources survives
        let c = SourceCollection::parse("Y3;Y1;Y2", &d).unwrap();
        let n = normalize_sources(&d, t, &c).unwrap();
        assert_eq!(n, SourceCollection::parse("Y3;Y1", &d).unwrap());
    }

    #[test]
    fn joint_functions_are_kept() {
        let d = canonical(CorpusName::XorLoses, None).unwrap();
        let t = d.vars(&["T"]).unwrap();
        let c = SourceCollection::parse("Y1;Y2;Y3", &d).unwrap();
        assert_eq!(normalize_sources(&d, t, &c).unwrap(), c);
    }

    #[test]
    fn normalization_rejects_target_overlap() {
        let d = canonical(CorpusName::Xor, None).unwrap();
        let t = d.vars(&["T"]).unwrap();
        let c = SourceCollection::parse("T;Y1", &d).unwrap();
        assert!(normalize_sources(&d, t, &c).is_err());
    }

    #[test]
    fn determinism_examples() {
        let d = canonical(CorpusName::AndDuplicate, None).unwrap();
        assert!(is_deterministic(&d, set(&[3]), set(&[2])));
        let xor = canonical(CorpusName::Xor, None).unwrap();
        assert!(!is_deterministic(&xor, set(&[0]), set(&[1])));
        assert!(is_deterministic(&xor, set(&[0]), set(&[1, 2])));
    }

    #[test]
    fn partition_examples() {
        let d = canonical(CorpusName::XorLoses, None).unwrap();
        let p = enumerate_ci_partitions(&SourceCollection::parse("Y1,Y2;Y3", &d).unwrap());
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].blocks(), &[set(&[1, 2]), set(&[3])]);
        assert_eq!(p[1].blocks(), &[set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(p[0].label(&d), "Y1,Y2|Y3");

        let p = enumerate_ci_partitions(&SourceCollection::parse("Y1,Y2;Y1,Y3;Y2,Y3", &d).unwrap());
        assert_eq!(p.len(), 4);

        let p = enumerate_ci_partitions(&SourceCollection::parse("Y1;Y2", &d).unwrap());
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].blocks(), &[set(&[1]), set(&[2])]);
    }

    #[test]
    fn rgs_enumerates_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let c = SourceCollection::from_sets(vec![VariableSet::full(n)]).unwrap();
            assert_eq!(enumerate_ci_partitions(&c).len(), bell);
        }
    }

    /// Exhaustive check over every collection of subsets of 4 variables with at
    /// most 3 sources: blocks are disjoint, cover the union and sit in their witness.
    #[test]
    fn partitions_satisfy_invariants_exhaustively() {
        let subsets: Vec<VariableSet> = (1u64..16).map(VariableSet::from_bits).collect();
        let mut collections = Vec::new();
        for a in 0..subsets.len() {
            collections.push(vec![subsets[a]]);
            for b in a + 1..subsets.len() {
                collections.push(vec![subsets[a], subsets[b]]);
                for c in b + 1..subsets.len() {
                    collections.push(vec![subsets[a], subsets[b], subsets[c]]);
                }
            }
        }
        for sets in collections {
            let coll = SourceCollection::from_sets(sets.clone()).unwrap();
            let parts = enumerate_ci_partitions(&coll);
            assert!(!parts.is_empty());
            let singles = parts.last().unwrap();
            assert_eq!(singles.blocks().len(), coll.union().len());
            for p in &parts {
                let mut seen = VariableSet::EMPTY;
                for (b, &w) in p.blocks().iter().zip(p.witness()) {
                    assert!(!b.is_empty());
                    assert!(b.is_disjoint(seen));
                    seen = seen.union(*b);
                    assert!(b.is_subset_of(sets[w]));
                }
                assert_eq!(seen, coll.union());
            }
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    assert_ne!(parts[i].blocks(), parts[j].blocks());
                }
            }
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::strategies::{arb_dist, target};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn normalization_is_idempotent(d in arb_dist(3)) {
            let t = target(&d);
            let ys: Vec<VariableSet> = d.complement(t).iter().map(VariableSet::single).collect();
            let mut sets = ys.clone();
            sets.push(ys[0]);
            sets.push(ys[0].union(ys[1]));
            let c = SourceCollection::from_sets(sets).unwrap();
            let once = normalize_sources(&d, t, &c).unwrap();
            let twice = normalize_sources(&d, t, &once).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
