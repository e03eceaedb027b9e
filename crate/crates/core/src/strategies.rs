//! Proptest strategies shared by the module tests.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use crate::{JointDistribution, SourceCollection, VariableSet};

/// A random pmf over `T` followed by two to `max_sources` source variables
/// with alphabets of two or three symbols. Roughly a third of the cells are
/// zero; the first cell is forced positive.
pub(crate) fn arb_dist(max_sources: usize) -> impl Strategy<Value = JointDistribution> {
    (2..=max_sources)
        .prop_flat_map(|n| prop::collection::vec(2usize..=3, n + 1))
        .prop_flat_map(|sizes| {
            let cells: usize = sizes.iter().product();
            (
                Just(sizes),
                prop::collection::vec(prop_oneof![1 => Just(0u32), 2 => 1u32..100], cells),
            )
        })
        .prop_map(|(sizes, mut weights)| {
            weights[0] = weights[0].max(1);
            build(&sizes, &weights)
        })
}

fn build(sizes: &[usize], weights: &[u32]) -> JointDistribution {
    let names: Vec<String> = core::iter::once("T".to_string())
        .chain((1..sizes.len()).map(|i| format!("Y{i}")))
        .collect();
    let alphabets: Vec<Vec<String>> = sizes
        .iter()
        .map(|&s| (0..s).map(|v| v.to_string()).collect())
        .collect();
    let total: u32 = weights.iter().sum();
    let mut entries = Vec::new();
    for (k, &w) in weights.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let mut rest = k;
        let mut o = vec![0; sizes.len()];
        for (i, &s) in sizes.iter().enumerate().rev() {
            o[i] = rest % s;
            rest /= s;
        }
        entries.push((o, w as f64 / total as f64));
    }
    JointDistribution::new(names, alphabets, entries).unwrap()
}

pub(crate) fn target(d: &JointDistribution) -> VariableSet {
    d.vars(&["T"]).unwrap()
}

pub(crate) fn singletons(d: &JointDistribution) -> SourceCollection {
    SourceCollection::singletons(d.complement(target(d))).unwrap()
}

/// A row-stochastic matrix filled from `seed`, with extra weight on a
/// diagonal so that no row is empty.
pub(crate) fn random_channel(inputs: usize, outputs: usize, seed: &[u32]) -> Vec<Vec<f64>> {
    (0..inputs)
        .map(|t| {
            let row: Vec<f64> = (0..outputs)
                .map(|y| {
                    seed[(t * outputs + y) % seed.len()] as f64
                        + if y == t % outputs { 1.0 } else { 0.0 }
                })
                .collect();
            let s: f64 = row.iter().sum();
            row.into_iter().map(|v| v / s).collect()
        })
        .collect()
}
