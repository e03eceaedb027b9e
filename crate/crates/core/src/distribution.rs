//! Joint distributions, channels and Shannon quantities (all in bits).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::math::{clamp_nonnegative, log2, neg_xlogx};
use crate::{PidError, Result, NORMALIZATION_TOLERANCE};

/// A set of variable positions within a [`JointDistribution`], stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VariableSet(u64);

impl VariableSet {
    pub const EMPTY: VariableSet = VariableSet(0);
    /// Largest number of variables a distribution may carry.
    pub const CAPACITY: usize = 64;

    pub fn single(index: usize) -> Self {
        assert!(
            index < Self::CAPACITY,
            "variable index {index} out of range"
        );
        VariableSet(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Self::EMPTY, |acc, i| acc.union(Self::single(i)))
    }

    /// All positions `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        if n == Self::CAPACITY {
            VariableSet(u64::MAX)
        } else {
            VariableSet((1u64 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        VariableSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < Self::CAPACITY && self.0 & (1 << index) != 0
    }

    pub fn union(self, other: Self) -> Self {
        VariableSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VariableSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VariableSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Ascending positions.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..Self::CAPACITY).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VariableSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

/// A finite joint pmf over named variables.
///
/// Outcomes are stored as symbol indices into the per-variable alphabets, in
/// insertion order. Outcomes that are not listed have probability zero;
/// listed outcomes may also carry an explicit zero.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    names: Vec<String>,
    alphabets: Vec<Vec<String>>,
    entries: Vec<(Vec<usize>, f64)>,
}

impl JointDistribution {
    pub fn new(
        names: Vec<String>,
        alphabets: Vec<Vec<String>>,
        entries: Vec<(Vec<usize>, f64)>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(PidError::arg("a distribution needs at least one variable"));
        }
        if names.len() > VariableSet::CAPACITY {
            return Err(PidError::arg(format!(
                "at most {} variables are supported",
                VariableSet::CAPACITY
            )));
        }
        if alphabets.len() != names.len() {
            return Err(PidError::arg("one alphabet per variable is required"));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PidError::arg(format!("duplicate variable name {n}")));
            }
        }
        let mut seen = BTreeMap::new();
        let mut total = 0.0;
        for (row, (outcome, p)) in entries.iter().enumerate() {
            if outcome.len() != names.len() {
                return Err(PidError::arg(format!(
                    "outcome {row} has {} symbols, expected {}",
                    outcome.len(),
                    names.len()
                )));
            }
            for (v, &s) in outcome.iter().enumerate() {
                if s >= alphabets[v].len() {
                    return Err(PidError::arg(format!(
                        "outcome {row}: symbol index {s} outside the alphabet of {}",
                        names[v]
                    )));
                }
            }
            if !p.is_finite() || *p < 0.0 {
                return Err(PidError::arg(format!(
                    "outcome {row} has invalid probability {p}"
                )));
            }
            if seen.insert(outcome.clone(), row).is_some() {
                return Err(PidError::arg(format!("outcome {row} is listed twice")));
            }
            total += p;
        }
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(PidError::arg(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(JointDistribution {
            names,
            alphabets,
            entries,
        })
    }

    /// Builds a distribution from symbolic rows; alphabets are collected in
    /// order of first appearance.
    pub fn from_rows<N, S>(names: &[N], rows: &[(&[S], f64)]) -> Result<Self>
    where
        N: AsRef<str>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        let mut alphabets: Vec<Vec<String>> = alloc::vec![Vec::new(); names.len()];
        let mut entries = Vec::with_capacity(rows.len());
        for (row, (symbols, p)) in rows.iter().enumerate() {
            if symbols.len() != names.len() {
                return Err(PidError::arg(format!(
                    "row {row} has {} symbols, expected {}",
                    symbols.len(),
                    names.len()
                )));
            }
            let outcome = symbols
                .iter()
                .zip(alphabets.iter_mut())
                .map(|(s, alphabet)| symbol_index(alphabet, s.as_ref()))
                .collect();
            entries.push((outcome, *p));
        }
        Self::new(names, alphabets, entries)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabets(&self) -> &[Vec<String>] {
        &self.alphabets
    }

    /// All listed outcomes, including explicit zeros.
    pub fn entries(&self) -> &[(Vec<usize>, f64)] {
        &self.entries
    }

    /// Outcomes with strictly positive probability.
    pub fn support(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.entries
            .iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(o, p)| (o.as_slice(), *p))
    }

    pub fn prob(&self, outcome: &[usize]) -> f64 {
        self.entries
            .iter()
            .find(|(o, _)| o.as_slice() == outcome)
            .map_or(0.0, |(_, p)| *p)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves variable names to a set.
    pub fn vars<S: AsRef<str>>(&self, names: &[S]) -> Result<VariableSet> {
        names
            .iter()
            .map(|n| {
                self.var_index(n.as_ref())
                    .ok_or_else(|| PidError::arg(format!("unknown variable {}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(VariableSet::from_indices)
    }

    pub fn all_vars(&self) -> VariableSet {
        VariableSet::full(self.num_vars())
    }

    /// Every variable not in `target`.
    pub fn complement(&self, target: VariableSet) -> VariableSet {
        self.all_vars().difference(target)
    }

    pub fn check_vars(&self, vars: VariableSet) -> Result<()> {
        if vars.is_subset_of(self.all_vars()) {
            Ok(())
        } else {
            Err(PidError::arg(format!(
                "variable set {vars:?} out of range for {} variables",
                self.num_vars()
            )))
        }
    }

    /// Human-readable label of a variable set, e.g. `Y1,Y2`.
    pub fn label(&self, vars: VariableSet) -> String {
        let parts: Vec<&str> = vars
            .iter()
            .filter_map(|i| self.names.get(i).map(String::as_str))
            .collect();
        parts.join(",")
    }

    /// Marginal pmf on `vars`, keyed by the projected outcome (positions in
    /// ascending order). Zero-probability outcomes are omitted.
    pub fn marginal_pmf(&self, vars: VariableSet) -> BTreeMap<Vec<usize>, f64> {
        let idx = vars.to_vec();
        let mut out = BTreeMap::new();
        for (o, p) in self.support() {
            let key: Vec<usize> = idx.iter().map(|&i| o[i]).collect();
            *out.entry(key).or_insert(0.0) += p;
        }
        out
    }
}

fn symbol_index(alphabet: &mut Vec<String>, symbol: &str) -> usize {
    match alphabet.iter().position(|s| s == symbol) {
        Some(i) => i,
        None => {
            alphabet.push(symbol.to_string());
            alphabet.len() - 1
        }
    }
}

/// Entropy of a marginal without argument checks; the empty set has entropy 0.
pub(crate) fn raw_entropy(dist: &JointDistribution, vars: VariableSet) -> f64 {
    if vars.is_empty() {
        return 0.0;
    }
    dist.marginal_pmf(vars)
        .values()
        .map(|&p| neg_xlogx(p))
        .sum()
}

pub fn entropy(dist: &JointDistribution, vars: VariableSet) -> Result<f64> {
    dist.check_vars(vars)?;
    if vars.is_empty() {
        return Err(PidError::arg("entropy of an empty variable set"));
    }
    clamp_nonnegative(raw_entropy(dist, vars), "entropy")
}

/// `H(a | given)`; the sets may overlap.
pub fn conditional_entropy(
    dist: &JointDistribution,
    a: VariableSet,
    given: VariableSet,
) -> Result<f64> {
    dist.check_vars(a.union(given))?;
    let v = raw_entropy(dist, a.union(given)) - raw_entropy(dist, given);
    clamp_nonnegative(v, "conditional entropy")
}

pub fn mutual_information(dist: &JointDistribution, a: VariableSet, b: VariableSet) -> Result<f64> {
    dist.check_vars(a.union(b))?;
    if a.is_empty() || b.is_empty() {
        return Err(PidError::arg("mutual information needs non-empty sets"));
    }
    if !a.is_disjoint(b) {
        return Err(PidError::arg(format!(
            "mutual information of overlapping sets {a:?} and {b:?}"
        )));
    }
    raw_mutual_information(dist, a, b)
}

pub(crate) fn raw_mutual_information(
    dist: &JointDistribution,
    a: VariableSet,
    b: VariableSet,
) -> Result<f64> {
    let v = raw_entropy(dist, a) + raw_entropy(dist, b) - raw_entropy(dist, a.union(b));
    clamp_nonnegative(v, "mutual information")
}

/// `I(a; b | c)`; `c` may be empty.
pub fn conditional_mutual_information(
    dist: &JointDistribution,
    a: VariableSet,
    b: VariableSet,
    c: VariableSet,
) -> Result<f64> {
    dist.check_vars(a.union(b).union(c))?;
    if a.is_empty() || b.is_empty() {
        return Err(PidError::arg(
            "conditional mutual information needs non-empty a and b",
        ));
    }
    if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
        return Err(PidError::arg(
            "conditional mutual information needs pairwise disjoint sets",
        ));
    }
    let v = raw_entropy(dist, a.union(c)) + raw_entropy(dist, b.union(c))
        - raw_entropy(dist, a.union(b).union(c))
        - raw_entropy(dist, c);
    clamp_nonnegative(v, "conditional mutual information")
}

/// Sums out every variable not in `vars`. Projected outcomes keep the order of
/// their first appearance, so marginalizing onto all variables is the identity.
pub fn marginalize(dist: &JointDistribution, vars: VariableSet) -> Result<JointDistribution> {
    dist.check_vars(vars)?;
    if vars.is_empty() {
        return Err(PidError::arg("cannot marginalize onto no variables"));
    }
    let idx = vars.to_vec();
    let mut position: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut entries: Vec<(Vec<usize>, f64)> = Vec::new();
    for (o, p) in dist.entries() {
        let key: Vec<usize> = idx.iter().map(|&i| o[i]).collect();
        match position.get(&key) {
            Some(&k) => entries[k].1 += p,
            None => {
                position.insert(key.clone(), entries.len());
                entries.push((key, *p));
            }
        }
    }
    JointDistribution::new(
        idx.iter().map(|&i| dist.names[i].clone()).collect(),
        idx.iter().map(|&i| dist.alphabets[i].clone()).collect(),
        entries,
    )
}

/// A discrete memoryless channel `p(output | input)` together with the input
/// marginal. Inputs with zero probability are never represented.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    input_states: Vec<Vec<usize>>,
    input_marginal: Vec<f64>,
    output_alphabet: Vec<Vec<usize>>,
    matrix: Vec<Vec<f64>>,
}

impl Channel {
    /// Builds a channel from a bare matrix; states are labelled `[0]`, `[1]`, ...
    pub fn new(input_marginal: Vec<f64>, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let outputs = matrix.first().map_or(0, Vec::len);
        Self::with_labels(
            (0..input_marginal.len()).map(|i| alloc::vec![i]).collect(),
            input_marginal,
            (0..outputs).map(|j| alloc::vec![j]).collect(),
            matrix,
        )
    }

    pub fn with_labels(
        input_states: Vec<Vec<usize>>,
        input_marginal: Vec<f64>,
        output_alphabet: Vec<Vec<usize>>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if input_states.len() != input_marginal.len() || matrix.len() != input_marginal.len() {
            return Err(PidError::arg("channel rows, states and marginal disagree"));
        }
        if input_marginal.is_empty() || output_alphabet.is_empty() {
            return Err(PidError::arg("channel must have inputs and outputs"));
        }
        let total: f64 = input_marginal.iter().sum();
        if input_marginal.iter().any(|&p| p.is_nan() || p <= 0.0)
            || (total - 1.0).abs() > NORMALIZATION_TOLERANCE
        {
            return Err(PidError::arg(
                "input marginal must be strictly positive and sum to 1",
            ));
        }
        for (t, row) in matrix.iter().enumerate() {
            if row.len() != output_alphabet.len() {
                return Err(PidError::arg(format!("channel row {t} has wrong length")));
            }
            let s: f64 = row.iter().sum();
            if row.iter().any(|&v| v < 0.0 || !v.is_finite())
                || (s - 1.0).abs() > NORMALIZATION_TOLERANCE
            {
                return Err(PidError::arg(format!("channel row {t} is not stochastic")));
            }
        }
        Ok(Channel {
            input_states,
            input_marginal,
            output_alphabet,
            matrix,
        })
    }

    pub fn input_states(&self) -> &[Vec<usize>] {
        &self.input_states
    }

    pub fn input_marginal(&self) -> &[f64] {
        &self.input_marginal
    }

    pub fn output_alphabet(&self) -> &[Vec<usize>] {
        &self.output_alphabet
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn num_inputs(&self) -> usize {
        self.input_marginal.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.output_alphabet.len()
    }

    pub fn output_marginal(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.num_outputs()];
        for (row, &pt) in self.matrix.iter().zip(&self.input_marginal) {
            for (o, &k) in out.iter_mut().zip(row) {
                *o += pt * k;
            }
        }
        out
    }

    /// `I(input; output)` in bits.
    pub fn mutual_information(&self) -> f64 {
        channel_information(&self.input_marginal, &self.matrix)
    }

    /// The channel `K · garbling`.
    pub fn compose(&self, garbling: &[Vec<f64>]) -> Result<Channel> {
        if garbling.len() != self.num_outputs() {
            return Err(PidError::arg("garbling rows must match channel outputs"));
        }
        let cols = garbling.first().map_or(0, Vec::len);
        let matrix = mat_mul(&self.matrix, garbling, cols);
        Channel::with_labels(
            self.input_states.clone(),
            self.input_marginal.clone(),
            (0..cols).map(|j| alloc::vec![j]).collect(),
            matrix,
        )
    }
}

pub(crate) fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>], cols: usize) -> Vec<Vec<f64>> {
    a.iter()
        .map(|row| {
            let mut out = alloc::vec![0.0; cols];
            for (&x, brow) in row.iter().zip(b) {
                if x != 0.0 {
                    for (o, &y) in out.iter_mut().zip(brow) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// `I(T; Q)` for input marginal `pt` and channel rows `k[t][q]`.
pub(crate) fn channel_information(pt: &[f64], k: &[Vec<f64>]) -> f64 {
    let cols = k.first().map_or(0, Vec::len);
    let mut pq = alloc::vec![0.0; cols];
    for (row, &p) in k.iter().zip(pt) {
        for (o, &v) in pq.iter_mut().zip(row) {
            *o += p * v;
        }
    }
    let mut info = 0.0;
    for (row, &p) in k.iter().zip(pt) {
        for (&v, &q) in row.iter().zip(&pq) {
            if v > 0.0 && q > 0.0 {
                info += p * v * log2(v / q);
            }
        }
    }
    info.max(0.0)
}

/// The channel from `target` to `source`: rows are target states with
/// positive probability, columns the observed source outcomes.
pub fn channel_from(
    dist: &JointDistribution,
    target: VariableSet,
    source: VariableSet,
) -> Result<Channel> {
    dist.check_vars(target.union(source))?;
    if target.is_empty() || source.is_empty() || !target.is_disjoint(source) {
        return Err(PidError::arg(
            "channel needs disjoint non-empty target and source",
        ));
    }
    let pt = dist.marginal_pmf(target);
    let ps = dist.marginal_pmf(source);
    let t_idx = target.to_vec();
    let s_idx = source.to_vec();
    let states: Vec<Vec<usize>> = pt.keys().cloned().collect();
    let outputs: Vec<Vec<usize>> = ps.keys().cloned().collect();
    let mut matrix = alloc::vec![alloc::vec![0.0; outputs.len()]; states.len()];
    for (o, p) in dist.support() {
        let t: Vec<usize> = t_idx.iter().map(|&i| o[i]).collect();
        let s: Vec<usize> = s_idx.iter().map(|&i| o[i]).collect();
        // both keys exist because the outcome has positive mass
        let r = states.binary_search(&t).unwrap_or_else(|_| unreachable!());
        let c = outputs.binary_search(&s).unwrap_or_else(|_| unreachable!());
        matrix[r][c] += p;
    }
    let total: f64 = pt.values().sum();
    let marginal: Vec<f64> = pt.values().map(|p| p / total).collect();
    for (row, &p) in matrix.iter_mut().zip(pt.values()) {
        for v in row.iter_mut() {
            *v /= p;
        }
    }
    Channel::with_labels(states, marginal, outputs, matrix)
}

/// `D(p || q)` in bits.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(PidError::arg(
            "KL divergence of vectors of different length",
        ));
    }
    let mut d = 0.0;
    for (i, (&a, &b)) in p.iter().zip(q).enumerate() {
        if a > 0.0 {
            if b <= 0.0 {
                return Err(PidError::Domain(format!(
                    "p[{i}] = {a} is positive where q[{i}] = 0"
                )));
            }
            d += a * log2(a / b);
        }
    }
    clamp_nonnegative(d, "KL divergence")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{canonical, CorpusName};
    use alloc::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn entropy_basics() {
        let d = JointDistribution::from_rows(&["X"], &[(&["0"], 0.5), (&["1"], 0.5)]).unwrap();
        assert!(close(
            entropy(&d, VariableSet::single(0)).unwrap(),
            1.0,
            1e-12
        ));
        let d = JointDistribution::from_rows(&["X"], &[(&["a"], 1.0)]).unwrap();
        assert_eq!(entropy(&d, VariableSet::single(0)).unwrap(), 0.0);
        let and = canonical(CorpusName::And, None).unwrap();
        let t = and.vars(&["T"]).unwrap();
        assert!(close(entropy(&and, t).unwrap(), 0.811278124459, 1e-9));
    }

    #[test]
    fn entropy_rejects_bad_sets() {
        let xor = canonical(CorpusName::Xor, None).unwrap();
        assert!(matches!(
            entropy(&xor, VariableSet::single(7)),
            Err(PidError::Argument(_))
        ));
        assert!(entropy(&xor, VariableSet::EMPTY).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let xor = canonical(CorpusName::Xor, None).unwrap();
        let t = xor.vars(&["T"]).unwrap();
        let y1 = xor.vars(&["Y1"]).unwrap();
        let y = xor.vars(&["Y1", "Y2"]).unwrap();
        assert!(close(mutual_information(&xor, y1, t).unwrap(), 0.0, 1e-12));
        assert!(close(mutual_information(&xor, y, t).unwrap(), 1.0, 1e-12));
        assert!(mutual_information(&xor, y, y1).is_err());
        let tc = canonical(CorpusName::TweakedCopy, None).unwrap();
        let t = tc.vars(&["T"]).unwrap();
        let y = tc.vars(&["Y1", "Y2"]).unwrap();
        assert!(close(
            mutual_information(&tc, y, t).unwrap(),
            1.584962500721,
            1e-9
        ));
    }

    #[test]
    fn conditional_mutual_information_examples() {
        for name in [CorpusName::Xor, CorpusName::Copy] {
            let d = canonical(name, None).unwrap();
            let t = d.vars(&["T"]).unwrap();
            let y1 = d.vars(&["Y1"]).unwrap();
            let y2 = d.vars(&["Y2"]).unwrap();
            let v = conditional_mutual_information(&d, y1, t, y2).unwrap();
            assert!(close(v, 1.0, 1e-12), "{name:?}: {v}");
            let empty = conditional_mutual_information(&d, y1, t, VariableSet::EMPTY).unwrap();
            assert!(close(empty, mutual_information(&d, y1, t).unwrap(), 1e-15));
        }
        let xor = canonical(CorpusName::Xor, None).unwrap();
        let t = xor.vars(&["T"]).unwrap();
        assert!(conditional_mutual_information(&xor, t, t, VariableSet::EMPTY).is_err());
    }

    #[test]
    fn marginalize_examples() {
        let and = canonical(CorpusName::And, None).unwrap();
        let m = marginalize(&and, and.vars(&["Y1"]).unwrap()).unwrap();
        let probs: Vec<f64> = m.entries().iter().map(|e| e.1).collect();
        assert_eq!(probs, vec![0.5, 0.5]);
        let copy = canonical(CorpusName::Copy, None).unwrap();
        let m = marginalize(&copy, copy.vars(&["T"]).unwrap()).unwrap();
        assert_eq!(m.entries().len(), 4);
        assert!(m.entries().iter().all(|e| e.1 == 0.25));
        assert_eq!(marginalize(&copy, copy.all_vars()).unwrap(), copy);
    }

    #[test]
    fn channel_examples() {
        let d = canonical(CorpusName::TEqualsY1, None).unwrap();
        let k = channel_from(&d, d.vars(&["T"]).unwrap(), d.vars(&["Y1"]).unwrap()).unwrap();
        assert_eq!(k.matrix(), &[vec![1.0, 0.0], vec![0.0, 1.0]]);

        let xor = canonical(CorpusName::Xor, None).unwrap();
        let k = channel_from(&xor, xor.vars(&["T"]).unwrap(), xor.vars(&["Y1"]).unwrap()).unwrap();
        assert!(k.matrix().iter().flatten().all(|&v| v == 0.5));

        let boom = canonical(CorpusName::Boom, None).unwrap();
        let k = channel_from(
            &boom,
            boom.vars(&["T"]).unwrap(),
            boom.vars(&["Y1"]).unwrap(),
        )
        .unwrap();
        let expected = [
            [1.0, 0.0, 0.0],
            [0.5, 0.5, 0.0],
            [1.0 / 3.0, 0.0, 2.0 / 3.0],
        ];
        for (row, exp) in k.matrix().iter().zip(expected) {
            for (a, b) in row.iter().zip(exp) {
                assert!(close(*a, b, 1e-12));
            }
        }
    }

    #[test]
    fn channel_drops_zero_probability_targets() {
        let d = canonical(CorpusName::AdaptedXor, Some(1.0)).unwrap();
        let k = channel_from(&d, d.vars(&["T"]).unwrap(), d.vars(&["Y1", "Y2"]).unwrap()).unwrap();
        assert_eq!(k.num_inputs(), 2);
        assert_eq!(k.num_outputs(), 4);
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_divergence(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert!(close(
            kl_divergence(&[1.0, 0.0], &[0.5, 0.5]).unwrap(),
            1.0,
            1e-15
        ));
        // 3/4 log2(3/2) + 1/4 log2(1/2)
        assert!(close(
            kl_divergence(&[0.75, 0.25], &[0.5, 0.5]).unwrap(),
            0.188_721_875_540_867,
            1e-12
        ));
        assert!(matches!(
            kl_divergence(&[0.5, 0.5], &[1.0, 0.0]),
            Err(PidError::Domain(_))
        ));
    }

    #[test]
    fn construction_errors() {
        assert!(JointDistribution::from_rows(&["X"], &[(&["0"], 0.5), (&["1"], 0.6)]).is_err());
        assert!(JointDistribution::from_rows(&["X"], &[(&["0"], -0.5), (&["1"], 1.5)]).is_err());
        assert!(JointDistribution::from_rows(&["X"], &[(&["0"], 0.5), (&["0"], 0.5)]).is_err());
        assert!(JointDistribution::from_rows(&["X", "Y"], &[(&["0"][..], 1.0)]).is_err());
    }

    #[test]
    fn channel_validation() {
        assert!(Channel::new(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![0.6, 0.6]]).is_err());
        assert!(Channel::new(vec![1.0, 0.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
        let k = Channel::new(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(close(k.mutual_information(), 1.0, 1e-15));
    }
}
