//! The redundancy lattice of antichains over at most three sources.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{PidError, Result};

/// An antichain of non-empty subsets of source positions; each subset is a
/// bitmask over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeNode {
    antichain: Vec<u8>,
}

impl LatticeNode {
    pub fn antichain(&self) -> &[u8] {
        &self.antichain
    }

    /// Label such as `{1}{2}` or `{12}` with 1-based source numbers.
    pub fn label(&self) -> String {
        let mut s = String::new();
        for &m in &self.antichain {
            s.push('{');
            for i in 0..8 {
                if m & (1 << i) != 0 {
                    s.push_str(&format!("{}", i + 1));
                }
            }
            s.push('}');
        }
        s
    }
}

/// `alpha <= beta` iff every member of `beta` contains some member of `alpha`.
fn precedes(alpha: &[u8], beta: &[u8]) -> bool {
    beta.iter().all(|&b| alpha.iter().any(|&a| a & !b == 0))
}

#[derive(Clone, Debug)]
pub struct RedundancyLattice {
    n: usize,
    nodes: Vec<LatticeNode>,
    order: Vec<Vec<bool>>,
}

impl RedundancyLattice {
    pub fn num_sources(&self) -> usize {
        self.n
    }

    /// Nodes sorted so that every node comes after all nodes below it.
    pub fn nodes(&self) -> &[LatticeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    /// Index of `{1..n}` as a single source.
    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Index of `{1}{2}...{n}`.
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn find(&self, antichain: &[u8]) -> Option<usize> {
        let mut key = antichain.to_vec();
        key.sort_unstable();
        self.nodes.iter().position(|n| n.antichain == key)
    }

    /// All nodes `beta <= node`, including `node`.
    pub fn down_set(&self, node: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.order[b][node]).collect()
    }

    /// Pairs `(lower, upper)` where `upper` covers `lower`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b && self.order[a][b] {
                    let between = (0..self.len())
                        .any(|c| c != a && c != b && self.order[a][c] && self.order[c][b]);
                    if !between {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Möbius inversion: atom values whose down-set sums reproduce `values`.
    pub fn mobius_inverse(&self, values: &[f64]) -> Vec<f64> {
        let mut atoms = alloc::vec![0.0; self.len()];
        for a in 0..self.len() {
            let below: f64 = (0..a).filter(|&b| self.order[b][a]).map(|b| atoms[b]).sum();
            atoms[a] = values[a] - below;
        }
        atoms
    }
}

/// Builds the lattice for `n` in `{1, 2, 3}` sources.
pub fn redundancy_lattice(n: usize) -> Result<RedundancyLattice> {
    if n == 0 {
        return Err(PidError::arg("the lattice needs at least one source"));
    }
    if n > 3 {
        return Err(PidError::Unsupported(format!(
            "redundancy lattice for {n} sources (at most 3 supported)"
        )));
    }
    let subsets: Vec<u8> = (1u8..(1 << n)).collect();
    let mut nodes = Vec::new();
    for family in 1u32..(1 << subsets.len()) {
        let members: Vec<u8> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| family & (1 << i) != 0)
            .map(|(_, &m)| m)
            .collect();
        let antichain = members.iter().enumerate().all(|(i, &a)| {
            members
                .iter()
                .enumerate()
                .all(|(j, &b)| i == j || a & !b != 0)
        });
        if antichain {
            nodes.push(LatticeNode { antichain: members });
        }
    }
    let below_count = |node: &LatticeNode| {
        nodes
            .iter()
            .filter(|o| precedes(&o.antichain, &node.antichain))
            .count()
    };
    let mut keyed: Vec<(usize, LatticeNode)> = nodes
        .iter()
        .map(|nd| (below_count(nd), nd.clone()))
        .collect();
    keyed.sort();
    let nodes: Vec<LatticeNode> = keyed.into_iter().map(|(_, nd)| nd).collect();
    let order = nodes
        .iter()
        .map(|a| {
            nodes
                .iter()
                .map(|b| precedes(&a.antichain, &b.antichain))
                .collect()
        })
        .collect();
    Ok(RedundancyLattice { n, nodes, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn bivariate_lattice() {
        let l = redundancy_lattice(2).unwrap();
        assert_eq!(l.len(), 4);
        let labels: Vec<String> = l.nodes().iter().map(LatticeNode::label).collect();
        assert_eq!(labels[l.bottom()], "{1}{2}");
        assert_eq!(labels[l.top()], "{12}");
        assert!(labels.contains(&String::from("{1}")));
        assert!(labels.contains(&String::from("{2}")));
        assert_eq!(l.covers().len(), 4);
    }

    /// Brute force: count families of non-empty subsets of {1,2,3} that are
    /// antichains, written independently of the lattice builder.
    #[test]
    fn trivariate_lattice_has_18_nodes() {
        let mut count = 0;
        for family in 1u32..128 {
            let sets: Vec<u32> = (0..7)
                .filter(|i| family >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let mut ok = true;
            for &a in &sets {
                for &b in &sets {
                    if a != b && a & b == a {
                        ok = false;
                    }
                }
            }
            if ok {
                count += 1;
            }
        }
        assert_eq!(count, 18);
        let l = redundancy_lattice(3).unwrap();
        assert_eq!(l.len(), 18);
        assert_eq!(l.nodes()[l.top()].antichain(), &[0b111]);
        assert_eq!(l.nodes()[l.bottom()].antichain(), &[1, 2, 4]);
    }

    #[test]
    fn order_is_a_partial_order() {
        for n in 1..=3 {
            let l = redundancy_lattice(n).unwrap();
            let m = l.len();
            for a in 0..m {
                assert!(l.leq(a, a));
                assert!(l.leq(l.bottom(), a));
                assert!(l.leq(a, l.top()));
                for b in 0..m {
                    if a != b {
                        assert!(!(l.leq(a, b) && l.leq(b, a)));
                    }
                    for c in 0..m {
                        if l.leq(a, b) && l.leq(b, c) {
                            assert!(l.leq(a, c));
                        }
                    }
                    // topological order of the node list
                    if l.leq(a, b) {
                        assert!(a <= b);
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_inversion_round_trips() {
        let l = redundancy_lattice(3).unwrap();
        let values: Vec<f64> = (0..l.len()).map(|i| (i * i) as f64 * 0.1).collect();
        let atoms = l.mobius_inverse(&values);
        for (node, value) in values.iter().enumerate() {
            let s: f64 = l.down_set(node).iter().map(|&b| atoms[b]).sum();
            assert!((s - value).abs() < 1e-12);
        }
    }

    #[test]
    fn unsupported_sizes() {
        assert!(matches!(
            redundancy_lattice(4),
            Err(PidError::Unsupported(_))
        ));
        assert!(redundancy_lattice(0).is_err());
        assert_eq!(redundancy_lattice(2).unwrap().find(&[2, 1]), Some(0));
        let _ = vec![0u8];
    }
}
