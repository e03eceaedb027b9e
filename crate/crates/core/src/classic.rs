//! Baseline measures: whole-minus-sum, Williams–Beer `I_min`, ΔI, maximum
//! entropy fitting and the dependency-based synergy.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::ci::{build_q, conditional_table, q_information, two_sources, PidResult};
use crate::distribution::{raw_entropy, raw_mutual_information, JointDistribution, VariableSet};
use crate::lattice::{redundancy_lattice, RedundancyLattice};
use crate::lp::{maximize, LpOutcome};
use crate::math::{clamp_nonnegative, log2};
use crate::sources::{enumerate_ci_partitions, Source, SourceCollection};
use crate::{PidError, Result};

/// Largest marginal violation accepted by [`maxent_ipf`].
pub const IPF_TOLERANCE: f64 = 1e-10;
/// Sweep budget of [`maxent_ipf`].
pub const IPF_MAX_SWEEPS: usize = 10_000;

fn source_variables(dist: &JointDistribution, target: VariableSet) -> Result<Vec<VariableSet>> {
    dist.check_vars(target)?;
    if target.is_empty() {
        return Err(PidError::arg(
            "the target must contain at least one variable",
        ));
    }
    Ok(dist
        .complement(target)
        .iter()
        .map(VariableSet::single)
        .collect())
}

/// `I(Y; T) - sum_i I(Y_i; T)`; may be negative.
pub fn wms_synergy(dist: &JointDistribution, target: VariableSet) -> Result<f64> {
    let ys = source_variables(dist, target)?;
    if ys.len() < 2 {
        return Err(PidError::arg("whole-minus-sum needs at least two sources"));
    }
    let total = raw_mutual_information(dist, dist.complement(target), target)?;
    let mut parts = 0.0;
    for &y in &ys {
        parts += raw_mutual_information(dist, y, target)?;
    }
    Ok(total - parts)
}

/// `I(T = t; A) = sum_a p(a | t) [log p(t | a) - log p(t)]`, where `t` lists
/// symbol indices of the target variables in ascending variable order.
pub fn specific_information(
    dist: &JointDistribution,
    target: VariableSet,
    source: Source,
    t: &[usize],
) -> Result<f64> {
    let a = source.members();
    dist.check_vars(target.union(a))?;
    if t.len() != target.len() {
        return Err(PidError::arg("target state has the wrong arity"));
    }
    let table = conditional_table(dist, target, a);
    let Some((pt, cond)) = table.get(t) else {
        return Err(PidError::arg(format!(
            "target state {t:?} has zero probability"
        )));
    };
    let pa = dist.marginal_pmf(a);
    let mut v = 0.0;
    for (av, &p_a_given_t) in cond {
        let p_t_given_a = p_a_given_t * pt / pa[av];
        v += p_a_given_t * (log2(p_t_given_a) - log2(*pt));
    }
    Ok(v)
}

/// Specific information of every source at every target state.
fn specific_table(
    dist: &JointDistribution,
    target: VariableSet,
    sources: &[VariableSet],
) -> Result<Vec<(f64, Vec<f64>)>> {
    let pt = dist.marginal_pmf(target);
    let mut out = Vec::with_capacity(pt.len());
    for (t, &p) in &pt {
        let mut row = Vec::with_capacity(sources.len());
        for &s in sources {
            row.push(specific_information(dist, target, Source::new(s)?, t)?);
        }
        out.push((p, row));
    }
    Ok(out)
}

fn imin_from_table(table: &[(f64, Vec<f64>)], members: &[usize]) -> f64 {
    table
        .iter()
        .map(|(p, row)| {
            p * members
                .iter()
                .map(|&i| row[i])
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// Williams–Beer redundancy `sum_t p(t) min_i I(T = t; A_i)`.
pub fn imin_redundancy(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
) -> Result<f64> {
    coll.validate(dist, target)?;
    let sets: Vec<VariableSet> = coll.sources().iter().map(|s| s.members()).collect();
    let table = specific_table(dist, target, &sets)?;
    let all: Vec<usize> = (0..sets.len()).collect();
    clamp_nonnegative(imin_from_table(&table, &all), "I_min")
}

/// Williams–Beer decomposition over the redundancy lattice.
#[derive(Clone, Debug)]
pub struct WbDecomposition {
    pub lattice: RedundancyLattice,
    /// `I_min` at every lattice node, in lattice order.
    pub redundancy: Vec<f64>,
    /// Möbius-inverted atoms, in lattice order.
    pub atoms: Vec<f64>,
}

impl WbDecomposition {
    /// `I(Y; T) - I_cup^WB`: the atoms of every node not below a single
    /// source. With two sources this is the top atom alone.
    pub fn synergy(&self) -> f64 {
        let singles: Vec<usize> = (0..self.lattice.num_sources())
            .filter_map(|i| self.lattice.find(&[1u8 << i]))
            .collect();
        (0..self.lattice.len())
            .filter(|&a| singles.iter().all(|&s| !self.lattice.leq(a, s)))
            .map(|a| self.atoms[a])
            .sum()
    }

    /// The atom at the top node, `{Y_1 .. Y_n}` taken as one source.
    pub fn top_atom(&self) -> f64 {
        self.atoms[self.lattice.top()]
    }

    /// The atom at the bottom node, the fully redundant information.
    pub fn shared(&self) -> f64 {
        self.atoms[self.lattice.bottom()]
    }

    pub fn to_result(&self) -> PidResult {
        let mut r = PidResult::new();
        for (node, &v) in self.lattice.nodes().iter().zip(&self.atoms) {
            r.insert(node.label(), v);
        }
        r
    }
}

/// Williams–Beer PID with each non-target variable as one source (2 or 3 sources).
pub fn wb_pid(dist: &JointDistribution, target: VariableSet) -> Result<WbDecomposition> {
    let ys = source_variables(dist, target)?;
    if ys.len() < 2 {
        return Err(PidError::arg(
            "Williams–Beer PID needs at least two sources",
        ));
    }
    let lattice = redundancy_lattice(ys.len())?;
    // every union of sources that appears in some antichain
    let unions: Vec<VariableSet> = (1u8..(1 << ys.len()))
        .map(|mask| {
            ys.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(VariableSet::EMPTY, |acc, (_, y)| acc.union(*y))
        })
        .collect();
    let table = specific_table(dist, target, &unions)?;
    let redundancy: Vec<f64> = lattice
        .nodes()
        .iter()
        .map(|node| {
            let members: Vec<usize> = node.antichain().iter().map(|&m| m as usize - 1).collect();
            imin_from_table(&table, &members)
        })
        .collect();
    let atoms = lattice.mobius_inverse(&redundancy);
    Ok(WbDecomposition {
        lattice,
        redundancy,
        atoms,
    })
}

/// Correlational importance `sum p(t, y) log [p(t | y) / p_ind(t | y)]` with
/// `p_ind` the conditionally independent predictor over all sources.
pub fn delta_i_synergy(dist: &JointDistribution, target: VariableSet) -> Result<f64> {
    let ys = source_variables(dist, target)?;
    if ys.len() < 2 {
        return Err(PidError::arg("ΔI needs at least two sources"));
    }
    let tables: Vec<_> = ys
        .iter()
        .map(|&y| conditional_table(dist, target, y))
        .collect();
    let y_all = dist.complement(target);
    let y_idx = y_all.to_vec();
    let t_idx = target.to_vec();
    let py = dist.marginal_pmf(y_all);
    let pt = dist.marginal_pmf(target);
    let p_ind_numerator = |t: &Vec<usize>, y: &[usize]| -> f64 {
        let mut v = pt[t];
        for (table, &yi) in tables.iter().zip(y) {
            v *= table[t].1.get(&alloc::vec![yi]).copied().unwrap_or(0.0);
        }
        v
    };
    let mut total = 0.0;
    let mut denominators: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (o, p) in dist.support() {
        let y: Vec<usize> = y_idx.iter().map(|&i| o[i]).collect();
        let t: Vec<usize> = t_idx.iter().map(|&i| o[i]).collect();
        let denom = *denominators
            .entry(y.clone())
            .or_insert_with(|| pt.keys().map(|tt| p_ind_numerator(tt, &y)).sum());
        if denom <= 0.0 {
            return Err(PidError::Domain(format!(
                "conditionally independent predictor vanishes at outcome {}",
                dist.label(y_all)
            )));
        }
        let p_ind = p_ind_numerator(&t, &y) / denom;
        let p_cond = p / py[&y];
        total += p * log2(p_cond / p_ind);
    }
    clamp_nonnegative(total, "ΔI")
}

/// The maximum-entropy distribution over the product alphabet of `dist` that
/// matches `dist` on every set in `preserved`, by iterative proportional fitting.
///
/// Cells that every matching distribution must leave empty are found by linear
/// programming and zeroed up front; the fit then converges geometrically even
/// when the solution lies on the boundary of the simplex.
pub fn maxent_ipf(
    dist: &JointDistribution,
    preserved: &[VariableSet],
) -> Result<JointDistribution> {
    let covered = preserved
        .iter()
        .fold(VariableSet::EMPTY, |acc, s| acc.union(*s));
    dist.check_vars(covered)?;
    if covered != dist.all_vars() || preserved.iter().any(|s| s.is_empty()) {
        return Err(PidError::arg(
            "preserved marginals must be non-empty and cover every variable",
        ));
    }
    let sizes: Vec<usize> = dist.alphabets().iter().map(Vec::len).collect();
    let cells = product_cells(&sizes);
    let targets: Vec<BTreeMap<Vec<usize>, f64>> =
        preserved.iter().map(|&s| dist.marginal_pmf(s)).collect();
    let proj: Vec<Vec<usize>> = preserved.iter().map(|s| s.to_vec()).collect();
    let key =
        |cell: &[usize], k: usize| -> Vec<usize> { proj[k].iter().map(|&i| cell[i]).collect() };

    let mut x: Vec<f64> = cells
        .iter()
        .map(|c| {
            let open = (0..preserved.len()).all(|k| targets[k].contains_key(&key(c, k)));
            if open {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for i in forced_zero_cells(&cells, &x, &targets, &key)? {
        x[i] = 0.0;
    }
    let mass: f64 = x.iter().sum();
    if mass <= 0.0 {
        return Err(PidError::Internal(
            "no cell is compatible with the marginals".into(),
        ));
    }
    for v in x.iter_mut() {
        *v /= mass;
    }

    let mut residual = f64::INFINITY;
    for _ in 0..IPF_MAX_SWEEPS {
        for (k, target) in targets.iter().enumerate() {
            let mut current: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
            for (c, &v) in cells.iter().zip(&x) {
                *current.entry(key(c, k)).or_insert(0.0) += v;
            }
            for (c, v) in cells.iter().zip(x.iter_mut()) {
                if *v > 0.0 {
                    let kk = key(c, k);
                    *v *= target[&kk] / current[&kk];
                }
            }
        }
        residual = 0.0;
        for (k, target) in targets.iter().enumerate() {
            let mut current: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
            for (c, &v) in cells.iter().zip(&x) {
                if v > 0.0 {
                    *current.entry(key(c, k)).or_insert(0.0) += v;
                }
            }
            for (kk, &want) in target {
                let got = current.get(kk).copied().unwrap_or(0.0);
                residual = residual.max((got - want).abs());
            }
        }
        if residual < IPF_TOLERANCE {
            let entries = cells.into_iter().zip(x).filter(|&(_, v)| v > 0.0).collect();
            let mut entries: Vec<(Vec<usize>, f64)> = entries;
            let total: f64 = entries.iter().map(|e| e.1).sum();
            for e in entries.iter_mut() {
                e.1 /= total;
            }
            return JointDistribution::new(
                dist.var_names().to_vec(),
                dist.alphabets().to_vec(),
                entries,
            );
        }
    }
    Err(PidError::IterationLimit {
        iterations: IPF_MAX_SWEEPS,
        residual,
    })
}

/// Every outcome of the product alphabet, in lexicographic order.
fn product_cells(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut cells = alloc::vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(cells.len() * s);
        for c in &cells {
            for v in 0..s {
                let mut c2: Vec<usize> = c.clone();
                c2.push(v);
                next.push(c2);
            }
        }
        cells = next;
    }
    cells
}

/// Open cells (positive start value) that vanish in every distribution
/// matching the marginals.
fn forced_zero_cells(
    cells: &[Vec<usize>],
    start: &[f64],
    targets: &[BTreeMap<Vec<usize>, f64>],
    key: &dyn Fn(&[usize], usize) -> Vec<usize>,
) -> Result<Vec<usize>> {
    let open: Vec<usize> = (0..cells.len()).filter(|&i| start[i] > 0.0).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        for (kk, &want) in t {
            rows.push(
                open.iter()
                    .map(|&i| if key(&cells[i], k) == *kk { 1.0 } else { 0.0 })
                    .collect::<Vec<f64>>(),
            );
            rhs.push(want);
        }
    }
    let mut candidates: Vec<usize> = (0..open.len()).collect();
    loop {
        if candidates.is_empty() {
            return Ok(Vec::new());
        }
        let mut c = alloc::vec![0.0; open.len()];
        for &j in &candidates {
            c[j] = 1.0;
        }
        let x = match maximize(&c, &rows, &rhs)? {
            LpOutcome::Optimal { x, .. } => x,
            LpOutcome::Infeasible { residual } => {
                return Err(PidError::Internal(format!(
                    "preserved marginals are inconsistent (residual {residual:e})"
                )))
            }
            LpOutcome::Unbounded => {
                return Err(PidError::Internal(
                    "bounded program reported unbounded".into(),
                ))
            }
        };
        let before = candidates.len();
        candidates.retain(|&j| x[j] <= 1e-9);
        if candidates.len() == before {
            return Ok(candidates.into_iter().map(|j| open[j]).collect());
        }
    }
}

/// Dependency-based synergy with its auxiliary quantities.
#[derive(Clone, Debug)]
pub struct DepSynergy {
    pub synergy: f64,
    /// `I_q(Y; T)` for the conditionally independent product `q`.
    pub i_q: f64,
    /// `I_r(Y; T)` for the maximum-entropy fit `r` keeping all pairwise marginals.
    pub i_r: f64,
    pub u1: f64,
    pub u2: f64,
    pub r: JointDistribution,
}

/// `S^dep = I(Y; T) - min(I_q(Y; T), I_r(Y; T))` for two sources.
pub fn dep_synergy(dist: &JointDistribution, target: VariableSet) -> Result<DepSynergy> {
    let (y1, y2) = two_sources(dist, target)?;
    let coll = SourceCollection::from_sets([y1, y2])?;
    let part = enumerate_ci_partitions(&coll)
        .pop()
        .ok_or_else(|| PidError::Internal("no singleton partition".into()))?;
    let q = build_q(dist, target, &part)?;
    let i_q = q_information(&q, dist, target)?;
    let r = maxent_ipf(dist, &[y1.union(target), y2.union(target), y1.union(y2)])?;
    let i_r = raw_mutual_information(&r, y1.union(y2), target)?;
    let total = raw_mutual_information(dist, y1.union(y2), target)?;

    let cmi = |d: &JointDistribution, a: VariableSet, c: VariableSet| -> Result<f64> {
        let v = raw_entropy(d, a.union(c)) + raw_entropy(d, target.union(c))
            - raw_entropy(d, a.union(c).union(target))
            - raw_entropy(d, c);
        clamp_nonnegative(v, "conditional mutual information")
    };
    // q keeps the variable order of dist restricted to target and sources,
    // which for a bivariate distribution is all of them
    let u1 = cmi(&q, y1, y2)?.min(cmi(&r, y1, y2)?);
    let u2 = cmi(&q, y2, y1)?.min(cmi(&r, y2, y1)?);
    Ok(DepSynergy {
        synergy: clamp_nonnegative(total - i_q.min(i_r), "dependency synergy")?,
        i_q,
        i_r,
        u1,
        u2,
        r,
    })
}

/// Bivariate bookkeeping `U_i = I(Y_i; T) - R`, `S = I(Y; T) - R - U1 - U2`
/// for a given redundancy `R`; atoms may be negative.
pub fn iep_bivariate_from_redundancy(
    dist: &JointDistribution,
    target: VariableSet,
    redundancy: f64,
) -> Result<PidResult> {
    let (y1, y2) = two_sources(dist, target)?;
    let total = raw_mutual_information(dist, y1.union(y2), target)?;
    let u1 = raw_mutual_information(dist, y1, target)? - redundancy;
    let u2 = raw_mutual_information(dist, y2, target)? - redundancy;
    let mut out = PidResult::new();
    out.insert("R", redundancy);
    out.insert("U1", u1);
    out.insert("U2", u2);
    out.insert("S", total - redundancy - u1 - u2);
    out.insert("I_total", total);
    Ok(out)
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::distribution::{entropy, mutual_information};
    use crate::strategies::{arb_dist, target};
    use crate::VariableSet;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn correlational_importance_is_nonnegative(d in arb_dist(3)) {
            prop_assert!(delta_i_synergy(&d, target(&d)).unwrap() >= 0.0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn maxent_fit_is_a_local_entropy_maximum(d in arb_dist(2), seed in any::<u64>()) {
            let t = target(&d);
            let ys: Vec<VariableSet> = d.complement(t).iter().map(VariableSet::single).collect();
            let sets = [ys[0].union(t), ys[1].union(t), ys[0].union(ys[1])];
            let r = maxent_ipf(&d, &sets).unwrap();
            let i_r = mutual_information(&r, ys[0].union(ys[1]), t).unwrap();
            let i_p = mutual_information(&d, ys[0].union(ys[1]), t).unwrap();
            prop_assert!(i_r <= i_p + 1e-7);
            for set in sets {
                let want = d.marginal_pmf(set);
                let got = r.marginal_pmf(set);
                for (k, v) in &want {
                    prop_assert!((got.get(k).copied().unwrap_or(0.0) - v).abs() < 1e-8);
                }
            }
            // moving mass around a 2x2x2 cycle keeps every pairwise marginal
            let h = entropy(&r, r.all_vars()).unwrap();
            let sizes: Vec<usize> = r.alphabets().iter().map(Vec::len).collect();
            let mut state = seed;
            let mut next = |m: usize| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as usize) % m
            };
            for _ in 0..100 {
                let a: Vec<(usize, usize)> = sizes.iter().map(|&s| {
                    let x = next(s);
                    (x, (x + 1 + next(s - 1)) % s)
                }).collect();
                let eps = 1e-4;
                let mut cells = BTreeMap::new();
                for (o, p) in r.entries() {
                    cells.insert(o.clone(), *p);
                }
                let mut ok = true;
                for bits in 0..8u32 {
                    let o: Vec<usize> = (0..3).map(|i| if bits >> i & 1 == 0 { a[i].0 } else { a[i].1 }).collect();
                    let sign = if bits.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    let v = cells.entry(o).or_insert(0.0);
                    *v += sign * eps;
                    if *v < 0.0 {
                        ok = false;
                    }
                }
                if !ok {
                    continue;
                }
                let entries: Vec<(Vec<usize>, f64)> = cells.into_iter().collect();
                let perturbed = JointDistribution::new(
                    r.var_names().to_vec(), r.alphabets().to_vec(), entries).unwrap();
                prop_assert!(entropy(&perturbed, perturbed.all_vars()).unwrap() <= h + 1e-12);
            }
        }
    }
}
