//! The degradation (Blackwell) order between channels, the redundancy
//! `I_cap^d` it induces and the union information `I_cup^d`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ci::conditional_table;
use crate::distribution::{
    channel_from, channel_information, mat_mul, raw_mutual_information, Channel, JointDistribution,
    VariableSet,
};
use crate::lp::{maximize, LpOutcome};
use crate::math::{clamp_nonnegative, log2, sqrt};
use crate::sources::{normalize_sources, SourceCollection};
use crate::{PidError, Result, NORMALIZATION_TOLERANCE};

/// Settings shared by the optimizers in this module.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Random restarts of the redundancy maximization, on top of the uniform start.
    pub restarts: usize,
    pub seed: u64,
    /// Relative objective change that ends a descent.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 64,
            seed: 0,
            tolerance: 1e-9,
            max_iterations: 20_000,
        }
    }
}

/// A garbling `M` with `K = K' M`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegradationWitness {
    pub m_matrix: Vec<Vec<f64>>,
    /// Largest absolute entry of `K - K' M`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizationReport {
    /// Best objective value found, in bits.
    pub value: f64,
    /// The optimizer: the channel `K^Q` for redundancy, the conditional
    /// `p*(a | t)` (one row per target state over the product alphabet of the
    /// sources) for union information.
    pub argument: Vec<Vec<f64>>,
    pub restarts_used: usize,
    /// For a maximization, an upper bound on the optimum; for a minimization,
    /// a lower bound.
    pub certificate: f64,
    pub converged: bool,
}

/// Decides `k ⪯_d k_prime`, returning a garbling when it holds.
pub fn degradation_leq(k: &Channel, k_prime: &Channel) -> Result<Option<DegradationWitness>> {
    if k.input_states() != k_prime.input_states()
        || k.input_marginal()
            .iter()
            .zip(k_prime.input_marginal())
            .any(|(a, b)| (a - b).abs() > NORMALIZATION_TOLERANCE)
    {
        return Err(PidError::arg(
            "channels must share input states and input marginal",
        ));
    }
    let nt = k.num_inputs();
    let ny = k_prime.num_outputs();
    let nz = k.num_outputs();
    let var = |y: usize, z: usize| y * nz + z;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in 0..nt {
        for z in 0..nz {
            let mut row = alloc::vec![0.0; ny * nz];
            for y in 0..ny {
                row[var(y, z)] = k_prime.matrix()[t][y];
            }
            rows.push(row);
            rhs.push(k.matrix()[t][z]);
        }
    }
    for y in 0..ny {
        let mut row = alloc::vec![0.0; ny * nz];
        for z in 0..nz {
            row[var(y, z)] = 1.0;
        }
        rows.push(row);
        rhs.push(1.0);
    }
    let x = match maximize(&alloc::vec![0.0; ny * nz], &rows, &rhs)? {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Infeasible { .. } => return Ok(None),
        LpOutcome::Unbounded => {
            return Err(PidError::Internal("feasibility program unbounded".into()))
        }
    };
    let m_matrix: Vec<Vec<f64>> = (0..ny)
        .map(|y| {
            let row: Vec<f64> = (0..nz).map(|z| x[var(y, z)].max(0.0)).collect();
            let s: f64 = row.iter().sum();
            row.into_iter().map(|v| v / s).collect()
        })
        .collect();
    let product = mat_mul(k_prime.matrix(), &m_matrix, nz);
    let residual = product
        .iter()
        .zip(k.matrix())
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    Ok(Some(DegradationWitness { m_matrix, residual }))
}

/// Linear description of `{(M_1..M_m) : K^(1) M_1 = K^(i) M_i, rows stochastic}`.
struct RedundancyPolytope {
    pt: Vec<f64>,
    k1: Vec<Vec<f64>>,
    nq: usize,
    /// `(offset, rows)` of each `M_i` in the variable vector.
    blocks: Vec<(usize, usize)>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    nvars: usize,
}

impl RedundancyPolytope {
    fn new(channels: &[Channel]) -> Self {
        let nt = channels[0].num_inputs();
        let total_outputs: usize = channels.iter().map(Channel::num_outputs).sum();
        let nq = nt.max(total_outputs + 1 - channels.len());
        let mut blocks = Vec::new();
        let mut offset = 0;
        for c in channels {
            blocks.push((offset, c.num_outputs()));
            offset += c.num_outputs() * nq;
        }
        let nvars = offset;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &(off, ny) in &blocks {
            for y in 0..ny {
                let mut row = alloc::vec![0.0; nvars];
                for q in 0..nq {
                    row[off + y * nq + q] = 1.0;
                }
                rows.push(row);
                rhs.push(1.0);
            }
        }
        let (off1, ny1) = blocks[0];
        for (c, &(off, ny)) in channels.iter().zip(&blocks).skip(1) {
            for t in 0..nt {
                for q in 0..nq {
                    let mut row = alloc::vec![0.0; nvars];
                    for y in 0..ny1 {
                        row[off1 + y * nq + q] = channels[0].matrix()[t][y];
                    }
                    for y in 0..ny {
                        row[off + y * nq + q] -= c.matrix()[t][y];
                    }
                    rows.push(row);
                    rhs.push(0.0);
                }
            }
        }
        RedundancyPolytope {
            pt: channels[0].input_marginal().to_vec(),
            k1: channels[0].matrix().to_vec(),
            nq,
            blocks,
            rows,
            rhs,
            nvars,
        }
    }

    fn channel(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let (off, ny) = self.blocks[0];
        let m1: Vec<Vec<f64>> = (0..ny)
            .map(|y| x[off + y * self.nq..off + (y + 1) * self.nq].to_vec())
            .collect();
        mat_mul(&self.k1, &m1, self.nq)
    }

    fn objective(&self, x: &[f64]) -> f64 {
        channel_information(&self.pt, &self.channel(x))
    }

    /// Gradient of `I(Q; T)` with respect to the variables.
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        const EPS: f64 = 1e-300;
        let k = self.channel(x);
        let mut pq = alloc::vec![0.0; self.nq];
        for (row, &p) in k.iter().zip(&self.pt) {
            for (o, &v) in pq.iter_mut().zip(row) {
                *o += p * v;
            }
        }
        let g: Vec<Vec<f64>> = k
            .iter()
            .zip(&self.pt)
            .map(|(row, &p)| {
                row.iter()
                    .zip(&pq)
                    .map(|(&v, &q)| p * log2(v.max(EPS) / q.max(EPS)))
                    .collect()
            })
            .collect();
        let mut out = alloc::vec![0.0; self.nvars];
        let (off, ny) = self.blocks[0];
        for y in 0..ny {
            for q in 0..self.nq {
                out[off + y * self.nq + q] = self
                    .k1
                    .iter()
                    .zip(&g)
                    .map(|(krow, grow)| krow[y] * grow[q])
                    .sum();
            }
        }
        out
    }

    fn vertex(&self, c: &[f64]) -> Result<Vec<f64>> {
        match maximize(c, &self.rows, &self.rhs)? {
            LpOutcome::Optimal { x, .. } => Ok(x),
            other => Err(PidError::Solver(format!(
                "redundancy linear program failed: {other:?}"
            ))),
        }
    }

    /// Conditional-gradient ascent. A convex objective attains its maximum on a
    /// segment at an endpoint, so each step moves to the linearization vertex
    /// whenever that improves the objective.
    fn ascend(&self, mut x: Vec<f64>, config: &OptimizerConfig) -> Result<(Vec<f64>, f64, bool)> {
        let mut f = self.objective(&x);
        for _ in 0..config.max_iterations {
            let g = self.gradient(&x);
            let v = self.vertex(&g)?;
            let fv = self.objective(&v);
            if fv > f + config.tolerance * f.abs().max(1.0) {
                x = v;
                f = fv;
            } else {
                return Ok((x, f, true));
            }
        }
        Ok((x, f, false))
    }
}

/// `I_cap^d`: the most informative channel `T -> Q` dominated by every source
/// channel, found by multi-start conditional-gradient ascent.
///
/// `Q` gets `max(|T|, sum_i |A_i| - m + 1)` outputs, enough for an optimal
/// channel. The reported value is a lower bound on the supremum; the
/// certificate is the upper bound `min_i I(A_i; T)`.
pub fn degradation_redundancy(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
    config: &OptimizerConfig,
) -> Result<OptimizationReport> {
    coll.validate(dist, target)?;
    let channels: Vec<Channel> = coll
        .sources()
        .iter()
        .map(|s| channel_from(dist, target, s.members()))
        .collect::<Result<_>>()?;
    let certificate = channels
        .iter()
        .map(Channel::mutual_information)
        .fold(f64::INFINITY, f64::min);
    let poly = RedundancyPolytope::new(&channels);

    let mut uniform = alloc::vec![0.0; poly.nvars];
    for v in uniform.iter_mut() {
        *v = 1.0 / poly.nq as f64;
    }
    let mut best = poly.ascend(uniform, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.restarts {
        let c: Vec<f64> = (0..poly.nvars).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let start = poly.vertex(&c)?;
        let run = poly.ascend(start, config)?;
        // strict improvement keeps the earliest start on ties
        if run.1 > best.1 {
            best = run;
        }
    }
    let (x, value, converged) = best;
    Ok(OptimizationReport {
        value,
        argument: poly.channel(&x),
        restarts_used: config.restarts,
        certificate,
        converged,
    })
}

/// Per-target-state piece of the union-information problem.
struct StateBlock {
    weight: f64,
    /// Global cell index of every local coordinate.
    cells: Vec<usize>,
    /// Orthonormal basis of the constraint rows.
    basis: Vec<Vec<f64>>,
    /// Rows and right-hand sides of the constraints, for residual checks.
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    /// The true conditional `p(a | t)`, a feasible point.
    anchor: Vec<f64>,
}

impl StateBlock {
    fn residual(&self, x: &[f64]) -> f64 {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| (row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - b).abs())
            .fold(0.0, f64::max)
    }

    /// Euclidean projection of `z` onto `{x >= 0 : rows x = rhs}` by a primal
    /// active-set method started at the feasible point `start`.
    fn project(&self, z: &[f64], start: &[f64]) -> Result<Vec<f64>> {
        const ZERO_STEP: f64 = 1e-13;
        const MULTIPLIER_TOLERANCE: f64 = 1e-12;
        let n = z.len();
        let mut x = start.to_vec();
        let mut active: Vec<usize> = Vec::new();
        // orthonormal basis of the rows and the active coordinate constraints,
        // and each active unit vector with its row-space component removed
        let mut basis = self.basis.clone();
        let mut reduced: Vec<Vec<f64>> = Vec::new();
        let add = |i: usize, basis: &mut Vec<Vec<f64>>, reduced: &mut Vec<Vec<f64>>| {
            let mut e = alloc::vec![0.0; n];
            e[i] = 1.0;
            let r = remove_span(&e, &self.basis);
            let v = remove_span(&r, &basis[self.basis.len()..]);
            let norm = sqrt(v.iter().map(|a| a * a).sum());
            if norm > 1e-12 {
                basis.push(v.into_iter().map(|a| a / norm).collect());
            }
            reduced.push(r);
        };
        for _ in 0..(20 * n + 100) {
            let toward: Vec<f64> = z.iter().zip(&x).map(|(a, b)| a - b).collect();
            let step = remove_span(&toward, &basis);
            if step.iter().all(|s| s.abs() <= ZERO_STEP) {
                // multipliers of the active bounds from R g = sum_i lambda_i R e_i,
                // with R the projector onto the null space of the rows
                let g: Vec<f64> = x.iter().zip(z).map(|(a, b)| a - b).collect();
                let rg = remove_span(&g, &self.basis);
                let lambda = least_squares(&reduced, &rg);
                let worst = lambda
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .filter(|(_, &l)| l < -MULTIPLIER_TOLERANCE);
                match worst {
                    Some((k, _)) => {
                        active.remove(k);
                        basis.truncate(self.basis.len());
                        reduced.clear();
                        for &i in &active {
                            add(i, &mut basis, &mut reduced);
                        }
                        continue;
                    }
                    None => {
                        for v in x.iter_mut() {
                            *v = v.max(0.0);
                        }
                        let residual = self.residual(&x);
                        if residual > 1e-9 {
                            return Err(PidError::Solver(format!(
                                "projection left a constraint residual of {residual:e}"
                            )));
                        }
                        return Ok(x);
                    }
                }
            }
            let mut alpha = 1.0;
            let mut blocking = None;
            for i in 0..n {
                if step[i] < 0.0 && !active.contains(&i) {
                    let a = (x[i].max(0.0) / -step[i]).max(0.0);
                    if a < alpha {
                        alpha = a;
                        blocking = Some(i);
                    }
                }
            }
            for (xi, si) in x.iter_mut().zip(&step) {
                *xi += alpha * si;
            }
            if let Some(i) = blocking {
                x[i] = 0.0;
                active.push(i);
                add(i, &mut basis, &mut reduced);
            }
        }
        Err(PidError::Solver("projection did not terminate".into()))
    }
}

/// `v` minus its components along the orthonormal vectors `basis`.
fn remove_span(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut out = v.to_vec();
    for _ in 0..2 {
        for q in basis {
            let c: f64 = q.iter().zip(&out).map(|(a, b)| a * b).sum();
            for (o, &qi) in out.iter_mut().zip(q) {
                *o -= c * qi;
            }
        }
    }
    out
}

/// Coefficients `c` minimizing `|sum_i c_i cols[i] - target|`, by Gaussian
/// elimination on the normal equations. The columns are linearly independent.
fn least_squares(cols: &[Vec<f64>], target: &[f64]) -> Vec<f64> {
    let m = cols.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..m).map(|j| dot(&cols[i], &cols[j])).collect();
            row.push(dot(&cols[i], target));
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap_or(c);
        a.swap(c, p);
        let pivot = a[c][c];
        if pivot.abs() < 1e-300 {
            continue;
        }
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            let f = row[c] / pivot;
            if r != c && f != 0.0 {
                for (v, &pv) in row[c..=m].iter_mut().zip(&pivot_row[c..=m]) {
                    *v -= f * pv;
                }
            }
        }
    }
    (0..m)
        .map(|i| {
            if a[i][i].abs() < 1e-300 {
                0.0
            } else {
                a[i][m] / a[i][i]
            }
        })
        .collect()
}

struct UnionProblem {
    blocks: Vec<StateBlock>,
    ncells: usize,
    /// Product-alphabet outcome of every global cell.
    cell_keys: Vec<Vec<usize>>,
}

impl UnionProblem {
    fn marginal(&self, x: &[Vec<f64>]) -> Vec<f64> {
        let mut pa = alloc::vec![0.0; self.ncells];
        for (b, xb) in self.blocks.iter().zip(x) {
            for (&c, &v) in b.cells.iter().zip(xb) {
                pa[c] += b.weight * v;
            }
        }
        pa
    }

    fn objective(&self, x: &[Vec<f64>]) -> f64 {
        let pa = self.marginal(x);
        let mut f = 0.0;
        for (b, xb) in self.blocks.iter().zip(x) {
            for (&c, &v) in b.cells.iter().zip(xb) {
                if v > 0.0 && pa[c] > 0.0 {
                    f += b.weight * v * log2(v / pa[c]);
                }
            }
        }
        f
    }

    fn gradient(&self, x: &[Vec<f64>]) -> Vec<Vec<f64>> {
        const EPS: f64 = 1e-12;
        let pa = self.marginal(x);
        self.blocks
            .iter()
            .zip(x)
            .map(|(b, xb)| {
                b.cells
                    .iter()
                    .zip(xb)
                    .map(|(&c, &v)| b.weight * log2(v.max(EPS) / pa[c].max(EPS)))
                    .collect()
            })
            .collect()
    }

    fn project(&self, z: &[Vec<f64>], start: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        self.blocks
            .iter()
            .zip(z)
            .zip(start)
            .map(|((b, zb), sb)| b.project(zb, sb))
            .collect()
    }

    /// Projected gradient descent with backtracking; returns the final point,
    /// its value and whether the stopping rule fired.
    fn descend(
        &self,
        start: Vec<Vec<f64>>,
        config: &OptimizerConfig,
    ) -> Result<(Vec<Vec<f64>>, f64, bool)> {
        let mut x = start;
        let mut f = self.objective(&x);
        let mut step = 1.0;
        for _ in 0..config.max_iterations {
            let g = self.gradient(&x);
            let mut accepted = None;
            while step > 1e-16 {
                let trial: Vec<Vec<f64>> = x
                    .iter()
                    .zip(&g)
                    .map(|(xb, gb)| xb.iter().zip(gb).map(|(a, b)| a - step * b).collect())
                    .collect();
                let y = self.project(&trial, &x)?;
                let dist2: f64 = y
                    .iter()
                    .zip(&x)
                    .flat_map(|(a, b)| a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)))
                    .sum();
                let fy = self.objective(&y);
                if fy <= f - 1e-4 * dist2 / step {
                    accepted = Some((y, fy, dist2));
                    break;
                }
                step *= 0.5;
            }
            let Some((y, fy, dist2)) = accepted else {
                return Ok((x, f, true));
            };
            let decrease = f - fy;
            x = y;
            f = fy;
            if decrease <= config.tolerance * f.abs().max(1.0) || sqrt(dist2) < 1e-15 {
                return Ok((x, f, true));
            }
            step = (step * 2.0).min(1e3);
        }
        Ok((x, f, false))
    }
}

fn union_problem(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
) -> Result<UnionProblem> {
    let union = coll.union();
    let vars = union.to_vec();
    let pos = |i: usize| vars.iter().position(|&v| v == i).unwrap_or(usize::MAX);
    let per_var: Vec<_> = vars
        .iter()
        .map(|&v| conditional_table(dist, target, VariableSet::single(v)))
        .collect();
    let per_source: Vec<(Vec<usize>, _)> = coll
        .sources()
        .iter()
        .map(|s| {
            (
                s.members().iter().map(pos).collect::<Vec<usize>>(),
                conditional_table(dist, target, s.members()),
            )
        })
        .collect();
    let joint = conditional_table(dist, target, union);

    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut cell_keys = Vec::new();
    let mut blocks = Vec::new();
    for (t, (weight, exact)) in &joint {
        let mut cells: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        for table in &per_var {
            let support: Vec<usize> = table[t].1.keys().map(|k| k[0]).collect();
            let mut next = Vec::new();
            for c in &cells {
                for &s in &support {
                    let mut c2 = c.clone();
                    c2.push(s);
                    next.push(c2);
                }
            }
            cells = next;
        }
        cells.retain(|c| {
            per_source.iter().all(|(positions, table)| {
                let key: Vec<usize> = positions.iter().map(|&p| c[p]).collect();
                table[t].1.contains_key(&key)
            })
        });
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (positions, table) in &per_source {
            for (key, &p) in &table[t].1 {
                rows.push(
                    cells
                        .iter()
                        .map(|c| {
                            let matches = positions.iter().zip(key).all(|(&pp, &s)| c[pp] == s);
                            if matches {
                                1.0
                            } else {
                                0.0
                            }
                        })
                        .collect::<Vec<f64>>(),
                );
                rhs.push(p);
            }
        }
        let anchor: Vec<f64> = cells
            .iter()
            .map(|c| exact.get(c).copied().unwrap_or(0.0))
            .collect();
        let ids: Vec<usize> = cells
            .iter()
            .map(|c| {
                let next = index.len();
                *index.entry(c.clone()).or_insert_with(|| {
                    cell_keys.push(c.clone());
                    next
                })
            })
            .collect();
        blocks.push(StateBlock {
            weight: *weight,
            cells: ids,
            basis: orthonormal_basis(&rows),
            rows,
            rhs,
            anchor,
        });
    }
    Ok(UnionProblem {
        blocks,
        ncells: index.len(),
        cell_keys,
    })
}

/// Orthonormal basis of the span of `rows` by twice-applied Gram–Schmidt.
fn orthonormal_basis(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for _ in 0..2 {
            for q in &basis {
                let c: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let norm = sqrt(v.iter().map(|a| a * a).sum());
        if norm > 1e-9 {
            basis.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    basis
}

/// `I_cup^d`: the least `I(A; T)` over joint conditionals `p*(a | t)` that
/// keep every source channel `p(a_i | t)`.
///
/// The problem is convex. It is solved by projected gradient descent started
/// at the true conditional and at the conditionally independent product. The
/// certificate is the lower bound `max_i I(A_i; T)`.
pub fn vk_union_information(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
    config: &OptimizerConfig,
) -> Result<OptimizationReport> {
    let coll = normalize_sources(dist, target, coll)?;
    let mut certificate = 0.0f64;
    for s in coll.sources() {
        certificate = certificate.max(raw_mutual_information(dist, s.members(), target)?);
    }
    let problem = union_problem(dist, target, &coll)?;
    let vars = coll.union().to_vec();
    let per_var: Vec<_> = vars
        .iter()
        .map(|&v| conditional_table(dist, target, VariableSet::single(v)))
        .collect();
    let joint_keys: Vec<Vec<usize>> = conditional_table(dist, target, coll.union())
        .into_keys()
        .collect();

    let truth: Vec<Vec<f64>> = problem.blocks.iter().map(|b| b.anchor.clone()).collect();
    let product: Vec<Vec<f64>> = problem
        .blocks
        .iter()
        .zip(&joint_keys)
        .map(|(b, t)| {
            b.cells
                .iter()
                .map(|&c| {
                    problem.cell_keys[c]
                        .iter()
                        .zip(&per_var)
                        .map(|(&s, table)| table[t].1[&alloc::vec![s]])
                        .product()
                })
                .collect()
        })
        .collect();
    let product = problem.project(&product, &truth)?;

    let mut best = problem.descend(truth, config)?;
    let run = problem.descend(product, config)?;
    if run.1 < best.1 {
        best = run;
    }
    let (x, value, converged) = best;
    let argument = x
        .iter()
        .zip(&problem.blocks)
        .map(|(xb, b)| {
            let mut row = alloc::vec![0.0; problem.ncells];
            for (&c, &v) in b.cells.iter().zip(xb) {
                row[c] = v;
            }
            row
        })
        .collect();
    Ok(OptimizationReport {
        value: clamp_nonnegative(value, "union information")?,
        argument,
        restarts_used: 1,
        certificate,
        converged,
    })
}

/// `S^d = I(Y; T) - I_cup^d`, where `Y` is every non-target variable of `dist`.
pub fn s_d(
    dist: &JointDistribution,
    target: VariableSet,
    coll: &SourceCollection,
    config: &OptimizerConfig,
) -> Result<f64> {
    let union = vk_union_information(dist, target, coll, config)?;
    let total = raw_mutual_information(dist, dist.complement(target), target)?;
    clamp_nonnegative(total - union.value, "degradation synergy")
}
