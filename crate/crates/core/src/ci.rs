//! Conditional-independence union information and synergy.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::distribution::{raw_entropy, raw_mutual_information, JointDistribution, VariableSet};
use crate::math::clamp_nonnegative;
use crate::sources::{enumerate_ci_partitions, normalize_sources, CiPartition, SourceCollection};
use crate::{PidError, Result};

/// Named values in bits, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PidResult {
    entries: Vec<(String, f64)>,
}

impl PidResult {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `label` to `value`, replacing an earlier value with the same label.
    pub fn insert(&mut self, label: impl Into<String>, value: f64) {
        let label = label.into();
        match self.entries.iter_mut().find(|(l, _)| *l == label) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((label, value)),
        }
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(l, v)| (l.as_str(), *v))
    }
}

/// `t -> (p(t), {v -> p(v | t)})` over the positive-probability target states.
pub(crate) type ConditionalTable = BTreeMap<Vec<usize>, (f64, BTreeMap<Vec<usize>, f64>)>;

pub(crate) fn conditional_table(
    dist: &JointDistribution,
    target: VariableSet,
    vars: VariableSet,
) -> ConditionalTable {
    let t_idx = target.to_vec();
    let v_idx = vars.to_vec();
    let mut table: ConditionalTable = BTreeMap::new();
    for (o, p) in dist.support() {
        let t: Vec<usize> = t_idx.iter().map(|&i| o[i]).collect();
        let v: Vec<usize> = v_idx.iter().map(|&i| o[i]).collect();
        let slot = table.entry(t).or_insert_with(|| (0.0, BTreeMap::new()));
        slot.0 += p;
        *slot.1.entry(v).or_insert(0.0) += p;
    }
    for (pt, cond) in table.values_mut() {
        for v in cond.values_mut() {
            *v /= *pt;
        }
    }
    table
}

/// The distribution `q(t, a) = p(t) prod_blocks p(block | t)` over the target
/// and the variables of the partition, in the variable order of `dist`.
pub fn build_q(
    dist: &JointDistribution,
    target: VariableSet,
    partition: &CiPartition,
) -> Result<JointDistribution> {
    let union = partition.union();
    dist.check_vars(target.union(union))?;
    if target.is_empty() || !target.is_disjoint(union) {
        return Err(PidError::arg(
            "the partition must be non-empty and disjoint from the target",
        ));
    }
    let out_vars = target.union(union).to_vec();
    let pos = |i: usize| out_vars.iter().position(|&v| v == i).unwrap_or(usize::MAX);
    let t_pos: Vec<usize> = target.iter().map(pos).collect();
    let tables: Vec<(Vec<usize>, ConditionalTable)> = partition
        .blocks()
        .iter()
        .map(|&b| {
            (
                b.iter().map(pos).collect(),
                conditional_table(dist, target, b),
            )
        })
        .collect();
    let p_t = dist.marginal_pmf(target);

    let mut entries = Vec::new();
    for (t, &pt) in &p_t {
        let mut partial: Vec<(Vec<usize>, f64)> = {
            let mut o = alloc::vec![0usize; out_vars.len()];
            for (&p, &s) in t_pos.iter().zip(t) {
                o[p] = s;
            }
            alloc::vec![(o, pt)]
        };
        for (positions, table) in &tables {
            let cond = &table[t].1;
            let mut next = Vec::with_capacity(partial.len() * cond.len());
            for (o, p) in &partial {
                for (v, &pv) in cond {
                    let mut o2 = o.clone();
                    for (&ps, &s) in positions.iter().zip(v) {
                        o2[ps] = s;
                    }
                    next.push((o2, p * pv));
                }
            }
            partial = next;
        }
        entries.extend(partial);
    }
    let names = out_vars
        .iter()
        .map(|&i| dist.var_names()[i].clone())
        .collect();
    let alphabets = out_vars
        .iter()
        .map(|&i| dist.alphabets()[i].clone())
        .collect();
    JointDistribution::new(names, alphabets, entries)
}

/// `I_q(A; T)` for the distribution `q` produced by [`build_q`].
pub(crate) fn q_information(
    q: &JointDistribution,
    dist: &JointDistribution,
    target: VariableSet,
) -> Result<f64> {
    let names: Vec<&str> = target
        .iter()
        .map(|i| dist.var_names()[i].as_str())
        .collect();
    let qt = q.vars(&names)?;
    raw_mutual_information(q, q.complement(qt), qt)
}

/// Every quantity behind one evaluation of `I_cup^CI`.
#[derive(Clone, Debug)]
pub struct CiUnionDetails {
    /// The collection after removing contained and deterministic sources.
    pub normalized: SourceCollection,
    /// `I_p(A; T)` for the union `A` of the normalized sources.
    pub i_p: f64,
    /// Each CI partition with its `I_q(A; T)`, in canonical order.
    pub q_values: Vec<(CiPartition, f64)>,
    /// Index into `q_values` of the first maximizer.
    pub best: usize,
    /// `min(I_p, max_q I_q)`.
    pub value: f64,
}

pub fn ci_union_details(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
) -> Result<CiUnionDetails> {
    let normalized = normalize_sources(dist, target, coll)?;
    let union = normalized.union();
    let i_p = raw_mutual_information(dist, union, target)?;
    let mut q_values: Vec<(CiPartition, f64)> = Vec::new();
    let mut best = 0;
    for (k, part) in enumerate_ci_partitions(&normalized).into_iter().enumerate() {
        let q = build_q(dist, target, &part)?;
        let iq = q_information(&q, dist, target)?;
        if k > 0 && iq > q_values[best].1 {
            best = k;
        }
        q_values.push((part, iq));
    }
    let value = i_p.min(q_values[best].1);
    Ok(CiUnionDetails {
        normalized,
        i_p,
        q_values,
        best,
        value,
    })
}

/// `I_cup^CI`: `min(I_p(A; T), max_q I_q(A; T))` over the CI partitions of the
/// normalized collection.
pub fn ci_union_information(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
) -> Result<f64> {
    Ok(ci_union_details(dist, target, coll)?.value)
}

/// `S^CI = I(Y; T) - I_cup^CI`, where `Y` is every non-target variable of `dist`.
pub fn ci_synergy(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
) -> Result<f64> {
    let union = ci_union_information(dist, target, coll)?;
    let total = raw_mutual_information(dist, dist.complement(target), target)?;
    clamp_nonnegative(total - union, "CI synergy")
}

/// The two-source decomposition `R, U1, U2, S` induced by `I_cup^CI`.
pub fn ci_bivariate_decomposition(
    dist: &JointDistribution,
    target: VariableSet,
) -> Result<PidResult> {
    let (y1, y2) = two_sources(dist, target)?;
    let coll = SourceCollection::from_sets([y1, y2])?;
    let i_cup = ci_union_information(dist, target, &coll)?;
    let total = raw_mutual_information(dist, y1.union(y2), target)?;
    let i1 = raw_mutual_information(dist, y1, target)?;
    let i2 = raw_mutual_information(dist, y2, target)?;
    let u1 = i_cup - i2;
    let u2 = i_cup - i1;
    let mut out = PidResult::new();
    out.insert("R", i1 - u1);
    out.insert("U1", u1);
    out.insert("U2", u2);
    out.insert("S", total - i_cup);
    out.insert("I_cup", i_cup);
    out.insert("I_total", total);
    Ok(out)
}

/// The two non-target variables of a bivariate distribution.
pub(crate) fn two_sources(
    dist: &JointDistribution,
    target: VariableSet,
) -> Result<(VariableSet, VariableSet)> {
    dist.check_vars(target)?;
    if target.is_empty() {
        return Err(PidError::arg(
            "the target must contain at least one variable",
        ));
    }
    let rest = dist.complement(target).to_vec();
    if rest.len() != 2 {
        return Err(PidError::arg(format!(
            "expected exactly two source variables, found {}",
            rest.len()
        )));
    }
    Ok((VariableSet::single(rest[0]), VariableSet::single(rest[1])))
}

/// True when `I(a; b | c)` vanishes to within 1e-12.
pub fn conditionally_independent(
    dist: &JointDistribution,
    a: VariableSet,
    b: VariableSet,
    c: VariableSet,
) -> bool {
    let v = raw_entropy(dist, a.union(c)) + raw_entropy(dist, b.union(c))
        - raw_entropy(dist, a.union(b).union(c))
        - raw_entropy(dist, c);
    v.abs() <= 1e-12
}

impl core::fmt::Display for PidResult {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (l, v) in &self.entries {
            writeln!(f, "{l}\t{v:.6}")?;
        }
        Ok(())
    }
}
