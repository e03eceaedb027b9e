//! Randomized checks of the union-information axioms and the synergy
//! properties that follow from them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ci::{ci_synergy, ci_union_information, conditionally_independent};
use crate::distribution::{
    entropy, marginalize, mutual_information, JointDistribution, VariableSet,
};
use crate::sources::{Source, SourceCollection};
use crate::Result;

/// Slack allowed on every comparison; all checked quantities are exact
/// compositions of Shannon terms.
pub const AXIOM_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyTally {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
    /// Largest violation seen, zero when none.
    pub worst: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyTally>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.violations == 0)
    }

    /// One line per property plus a summary line.
    pub fn render(&self) -> String {
        let mut out = format!("axiom suite: {} trials, seed {}\n", self.trials, self.seed);
        for p in &self.properties {
            out.push_str(&format!(
                "{:<38} {:>5} checked {:>3} violations  {}\n",
                p.name,
                p.checked,
                p.violations,
                if p.violations == 0 { "PASS" } else { "FAIL" }
            ));
        }
        out.push_str(if self.passed() {
            "overall PASS\n"
        } else {
            "overall FAIL\n"
        });
        out
    }
}

const NAMES: [&str; 13] = [
    "symmetry",
    "self-redundancy",
    "monotonicity",
    "equality for monotonicity",
    "global positivity",
    "weak local positivity",
    "strong identity",
    "duplicate predictor invariance",
    "added predictor never adds synergy",
    "synergy non-negative",
    "synergy bounded by information",
    "zero synergy in a single variable",
    "conditional independence, no synergy",
];

struct Tallies(Vec<PropertyTally>);

impl Tallies {
    fn record(&mut self, k: usize, excess: f64) {
        let t = &mut self.0[k];
        t.checked += 1;
        if excess > AXIOM_TOLERANCE {
            t.violations += 1;
            t.worst = t.worst.max(excess);
        }
    }
}

/// A random distribution over `T` and two or three sources, alphabets of size
/// two or three, with about a third of the cells empty.
pub fn random_distribution(rng: &mut ChaCha8Rng) -> JointDistribution {
    let n = rng.gen_range(2..=3usize);
    let sizes: Vec<usize> = (0..=n).map(|_| rng.gen_range(2..=3usize)).collect();
    let cells: usize = sizes.iter().product();
    let mut weights: Vec<f64> = (0..cells)
        .map(|_| {
            if rng.gen_bool(1.0 / 3.0) {
                0.0
            } else {
                rng.gen_range(0.01..1.0)
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0.0) {
        weights[0] = 1.0;
    }
    let total: f64 = weights.iter().sum();
    let mut entries = Vec::new();
    for (k, w) in weights.into_iter().enumerate() {
        if w > 0.0 {
            let mut rest = k;
            let mut o = alloc::vec![0; sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                o[i] = rest % s;
                rest /= s;
            }
            entries.push((o, w / total));
        }
    }
    let names = core::iter::once("T".to_string())
        .chain((1..=n).map(|i| format!("Y{i}")))
        .collect();
    let alphabets = sizes
        .iter()
        .map(|&s| (0..s).map(|v| v.to_string()).collect())
        .collect();
    // the weights were normalized above, so construction cannot fail
    JointDistribution::new(names, alphabets, entries).unwrap_or_else(|e| panic!("{e}"))
}

fn random_subset(rng: &mut ChaCha8Rng, vars: &[usize]) -> VariableSet {
    loop {
        let s = VariableSet::from_indices(vars.iter().copied().filter(|_| rng.gen_bool(0.5)));
        if !s.is_empty() {
            return s;
        }
    }
}

/// `dist` with an extra variable `name` that copies variable `of`.
fn with_copy(dist: &JointDistribution, of: usize, name: &str) -> JointDistribution {
    let mut names = dist.var_names().to_vec();
    names.push(name.to_string());
    let mut alphabets = dist.alphabets().to_vec();
    alphabets.push(dist.alphabets()[of].clone());
    let entries = dist
        .entries()
        .iter()
        .map(|(o, p)| {
            let mut o2 = o.clone();
            o2.push(o[of]);
            (o2, *p)
        })
        .collect();
    JointDistribution::new(names, alphabets, entries).unwrap_or_else(|e| panic!("{e}"))
}

/// `p(t) p(y1 | t) p(y2 | t)` for a distribution over `T, Y1, Y2` in that
/// order.
fn conditional_product(d: &JointDistribution) -> Result<JointDistribution> {
    let p_ty1 = d.marginal_pmf(VariableSet::from_indices([0, 1]));
    let p_ty2 = d.marginal_pmf(VariableSet::from_indices([0, 2]));
    let p_t = d.marginal_pmf(VariableSet::single(0));
    let mut entries = Vec::new();
    for (a, &pa) in &p_ty1 {
        for (b, &pb) in &p_ty2 {
            if a[0] == b[0] && pa > 0.0 && pb > 0.0 {
                entries.push((alloc::vec![a[0], a[1], b[1]], pa * pb / p_t[&a[..1]]));
            }
        }
    }
    JointDistribution::new(d.var_names().to_vec(), d.alphabets().to_vec(), entries)
}

/// Runs `trials` random instances from `seed`. Identical arguments give an
/// identical report.
pub fn run_axiom_suite(trials: usize, seed: u64) -> Result<AxiomReport> {
    let mut tallies = Tallies(
        NAMES
            .iter()
            .map(|&name| PropertyTally {
                name,
                checked: 0,
                violations: 0,
                worst: 0.0,
            })
            .collect(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let d = random_distribution(&mut rng);
        let t = VariableSet::single(0);
        let ys: Vec<usize> = d.complement(t).to_vec();
        let y_all = d.complement(t);
        let total = mutual_information(&d, y_all, t)?;

        let m = rng.gen_range(1..=3usize);
        let sets: Vec<VariableSet> = (0..m).map(|_| random_subset(&mut rng, &ys)).collect();
        let coll = SourceCollection::from_sets(sets.clone())?;
        let u = ci_union_information(&d, t, &coll)?;

        let mut shuffled = sets.clone();
        shuffled.shuffle(&mut rng);
        let u_perm = ci_union_information(&d, t, &SourceCollection::from_sets(shuffled)?)?;
        tallies.record(0, (u - u_perm).abs());

        let a = sets[0];
        let self_u = ci_union_information(&d, t, &SourceCollection::from_sets([a])?)?;
        tallies.record(1, (self_u - mutual_information(&d, a, t)?).abs());

        let extra = random_subset(&mut rng, &ys);
        let grown = coll.with(Source::new(extra)?);
        let u_grown = ci_union_information(&d, t, &grown)?;
        tallies.record(2, u - u_grown);

        let inside = VariableSet::from_indices(sets[m - 1].iter().filter(|_| rng.gen_bool(0.5)));
        if !inside.is_empty() {
            let u_in = ci_union_information(&d, t, &coll.with(Source::new(inside)?))?;
            tallies.record(3, (u_in - u).abs());
        }

        tallies.record(4, -u);

        let y1 = VariableSet::single(ys[0]);
        let y2 = VariableSet::single(ys[1]);
        let pair = ci_union_information(&d, t, &SourceCollection::from_sets([y1, y2])?)?;
        let lower = mutual_information(&d, y1, t)?.max(mutual_information(&d, y2, t)?);
        let upper = mutual_information(&d, y1.union(y2), t)?;
        tallies.record(5, (lower - pair).max(pair - upper));

        let copied = with_copy(&d, 0, "T_copy");
        let tc = VariableSet::single(copied.num_vars() - 1);
        let ident = ci_union_information(&copied, t, &SourceCollection::from_sets([tc])?)?;
        tallies.record(6, (ident - entropy(&d, t)?).abs());

        let s = ci_synergy(&d, t, &coll)?;
        let dup_of = ys[rng.gen_range(0..ys.len())];
        let dup = with_copy(&d, dup_of, "Y_dup");
        let dup_var = VariableSet::single(dup.num_vars() - 1);
        let s_dup = ci_synergy(&dup, t, &coll.with(Source::new(dup_var)?))?;
        let s_plain = ci_synergy(&d, t, &coll.with(Source::new(VariableSet::single(dup_of))?))?;
        tallies.record(7, (s_dup - s_plain).abs());

        let s_grown = ci_synergy(&d, t, &grown)?;
        tallies.record(8, s_grown - s);

        tallies.record(9, -s);
        tallies.record(10, s - total);

        let yi = ys[rng.gen_range(0..ys.len())];
        let single = marginalize(&d, t.union(VariableSet::single(yi)))?;
        let st = single.vars(&["T"])?;
        let s_single = ci_synergy(
            &single,
            st,
            &SourceCollection::from_sets([single.complement(st)])?,
        )?;
        tallies.record(11, s_single.abs());

        let bivariate = marginalize(&d, t.union(y1).union(y2))?;
        let bt = bivariate.vars(&["T"])?;
        let b1 = bivariate.complement(bt).to_vec();
        let (b1, b2) = (VariableSet::single(b1[0]), VariableSet::single(b1[1]));
        let pair = SourceCollection::from_sets([b1, b2])?;
        if conditionally_independent(&bivariate, b1, b2, bt) {
            tallies.record(12, ci_synergy(&bivariate, bt, &pair)?.abs());
        }
        let q = conditional_product(&bivariate)?;
        tallies.record(12, ci_synergy(&q, bt, &pair)?.abs());
    }
    Ok(AxiomReport {
        trials,
        seed,
        properties: tallies.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_is_deterministic() {
        let a = run_axiom_suite(40, 3).unwrap();
        assert!(a.passed(), "{}", a.render());
        assert_eq!(a, run_axiom_suite(40, 3).unwrap());
        assert_eq!(a.properties[0].checked, 40);
    }

    #[test]
    fn render_reports_every_property() {
        let r = run_axiom_suite(1, 0).unwrap();
        let text = r.render();
        assert_eq!(text.lines().count(), NAMES.len() + 2);
        assert!(text.ends_with("overall PASS\n"));
    }
}
