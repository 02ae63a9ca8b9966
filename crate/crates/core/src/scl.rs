//! Stable commutator length of alternating words via disk-vector programs.
//!
//! For `g = a_1 b_1 ... a_L b_L` in `A * B`,
//!
//! ```text
//! 2·scl(g) = L − max { κ_A(v) + κ_B(φ(v)) : v ∈ V }
//! ```
//!
//! where `κ_X(v)` is the largest total weight of disk vectors fitting under
//! `v`. Equality holds for cyclic factors. Both κ terms are linear programs in
//! `v`, so the maximum is a single joint program over `v` and the disk weights.

use std::fmt;

use std::collections::HashSet;

use crate::disks::{
    default_k_max, enumerate_irreducible, is_disk_sequence, DiskEnumeration, DiskVector,
};
use crate::error::{Error, Result};
use crate::polytope::{phi_inverse_index, StochasticMatrix};
use crate::pricing::{cheapest_disks, walk_bound};
use crate::scalar::Scalar;
use crate::simplex::{simplex_solve, LinearProgram, Relation};
use crate::words::{require_commutator, AlternatingWord, FactorOrder};

/// `v = Σ t_d·d + remainder` with `t_d ≥ 0` and a nonnegative remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaDecomposition<T> {
    pub terms: Vec<(DiskVector, T)>,
    /// Row-major `L × L`.
    pub remainder: Vec<T>,
    pub objective: T,
}

impl<T: Scalar> KappaDecomposition<T> {
    /// `Σ t_d·d + remainder`, row-major.
    pub fn reconstruct(&self, dim: usize) -> Vec<T> {
        let mut out = self.remainder.clone();
        for (disk, weight) in &self.terms {
            for (k, &c) in disk.pair_counts().iter().enumerate() {
                if c != 0 {
                    out[k] = out[k].clone() + weight.clone() * T::from_int(c as i64);
                }
            }
        }
        debug_assert_eq!(out.len(), dim * dim);
        out
    }

    fn problems(
        &self,
        side: &str,
        target: &StochasticMatrix<T>,
        exponents: &[i64],
        order: FactorOrder,
    ) -> Vec<String> {
        let dim = target.dim();
        let mut out = Vec::new();
        if self.remainder.len() != dim * dim {
            out.push(format!("{side}: remainder has wrong size"));
            return out;
        }
        let mut total = T::zero();
        for (disk, weight) in &self.terms {
            if disk.dim() != dim {
                out.push(format!("{side}: disk vector has dimension {}", disk.dim()));
                return out;
            }
            if weight.is_neg() {
                out.push(format!("{side}: negative weight {weight}"));
            }
            match is_disk_sequence(disk.sequence(), exponents, order) {
                Ok(true) => {}
                Ok(false) => out.push(format!(
                    "{side}: sequence {:?} does not multiply to the identity",
                    one_based(disk.sequence())
                )),
                Err(e) => out.push(format!("{side}: {e}")),
            }
            total = total + weight.clone();
        }
        if self.remainder.iter().any(|x| x.is_neg()) {
            out.push(format!("{side}: remainder has a negative entry"));
        }
        let rebuilt = self.reconstruct(dim);
        if rebuilt
            .iter()
            .zip(target.entries())
            .any(|(a, b)| !a.approx_eq(b))
        {
            out.push(format!("{side}: decomposition does not sum to its target"));
        }
        if !total.approx_eq(&self.objective) {
            out.push(format!(
                "{side}: objective {} differs from total weight {total}",
                self.objective
            ));
        }
        out
    }
}

fn one_based(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|i| i + 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// The value is scl itself.
    Exact,
    /// scl is at least the value.
    LowerBound,
    /// scl is at most the value (a truncated disk set under-counts κ).
    UpperBound,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::LowerBound => "lower_bound",
            BoundKind::UpperBound => "upper_bound",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "exact" => Some(BoundKind::Exact),
            "lower_bound" => Some(BoundKind::LowerBound),
            "upper_bound" => Some(BoundKind::UpperBound),
            _ => None,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SclResult<T> {
    pub word: AlternatingWord,
    pub value: T,
    pub exact: bool,
    pub bound_kind: BoundKind,
    pub optimum_v: StochasticMatrix<T>,
    pub decomp_a: KappaDecomposition<T>,
    pub decomp_b: KappaDecomposition<T>,
    pub opt_objective: T,
    /// Longest disk priced for each factor: `L·N` for finite order, `k_max` otherwise.
    pub k_max: (usize, usize),
}

/// Drops every disk vector that entrywise dominates another one. Replacing a
/// column by a dominated one never hurts feasibility and keeps the objective.
pub fn undominated(disks: &[DiskVector]) -> Vec<DiskVector> {
    let mut seen = HashSet::new();
    disks
        .iter()
        .enumerate()
        .filter(|(i, d)| {
            !disks
                .iter()
                .enumerate()
                .any(|(j, e)| j != *i && e.dominated_by(d) && e.pair_counts() != d.pair_counts())
        })
        .filter(|(_, d)| seen.insert(d.pair_counts().to_vec()))
        .map(|(_, d)| d.clone())
        .collect()
}

fn check_dims(disks: &[DiskVector], dim: usize) -> Result<()> {
    match disks.iter().find(|d| d.dim() != dim) {
        Some(d) => Err(Error::Dimension(format!(
            "disk vector of dimension {} used with L = {dim}",
            d.dim()
        ))),
        None => Ok(()),
    }
}

fn decomposition<T: Scalar>(
    disks: &[DiskVector],
    weights: &[T],
    target: &StochasticMatrix<T>,
) -> KappaDecomposition<T> {
    let mut terms = Vec::new();
    let mut objective = T::zero();
    for (d, w) in disks.iter().zip(weights) {
        if !w.is_zero() {
            objective = objective + w.clone();
            terms.push((d.clone(), w.clone()));
        }
    }
    let mut decomp = KappaDecomposition {
        terms,
        remainder: vec![T::zero(); target.dim() * target.dim()],
        objective,
    };
    let used = decomp.reconstruct(target.dim());
    decomp.remainder = target
        .entries()
        .iter()
        .zip(used)
        .map(|(v, u)| {
            let r = v.clone() - u;
            if r.is_negligible() {
                T::zero()
            } else {
                r
            }
        })
        .collect();
    decomp
}

/// The disk-vector columns of one factor, grown on demand by pricing.
#[derive(Clone, Debug)]
struct FactorColumns<'a> {
    exponents: &'a [i64],
    order: FactorOrder,
    /// Longest walk priced; `None` keeps the columns fixed.
    walk_bound: Option<usize>,
    columns: Vec<DiskVector>,
    known: HashSet<Vec<u32>>,
}

impl<'a> FactorColumns<'a> {
    fn new(
        exponents: &'a [i64],
        order: FactorOrder,
        walk_bound: Option<usize>,
        seeds: &[DiskVector],
    ) -> Self {
        let columns = undominated(seeds);
        let known = columns.iter().map(|d| d.pair_counts().to_vec()).collect();
        Self {
            exponents,
            order,
            walk_bound,
            columns,
            known,
        }
    }

    /// Adds every cheapest disk of cost below one under `costs`, the dual
    /// prices of this factor's packing rows. Returns the number added.
    fn price<T: Scalar>(&mut self, costs: &[T]) -> usize {
        let Some(bound) = self.walk_bound else {
            return 0;
        };
        let dim = self.exponents.len();
        let mut added = 0;
        for (seq, cost) in cheapest_disks(costs, self.exponents, self.order, bound) {
            let gain = T::one() - cost;
            if !gain.is_pos() || gain.is_negligible() {
                continue;
            }
            let disk = DiskVector::from_sequence(seq, dim).expect("indices in range");
            if self.known.insert(disk.pair_counts().to_vec()) {
                self.columns.push(disk);
                added += 1;
            }
        }
        added
    }
}

/// Column generation always terminates in exact arithmetic; this only guards
/// floating-point runs against stalling.
const MAX_PRICING_ROUNDS: usize = 10_000;

fn stalled() -> Error {
    Error::InvalidArgument("column generation did not converge".into())
}

fn packing_row<T: Scalar>(
    columns: &[DiskVector],
    first_var: usize,
    i: usize,
    j: usize,
) -> Vec<(usize, T)> {
    columns
        .iter()
        .enumerate()
        .filter(|(_, d)| d.count(i, j) > 0)
        .map(|(k, d)| (first_var + k, T::from_int(d.count(i, j) as i64)))
        .collect()
}

fn kappa_program<T: Scalar>(
    v: &StochasticMatrix<T>,
    side: &mut FactorColumns,
) -> Result<KappaDecomposition<T>> {
    let dim = v.dim();
    for _ in 0..MAX_PRICING_ROUNDS {
        let cols = &side.columns;
        let mut lp = LinearProgram::new(cols.len());
        for k in 0..cols.len() {
            lp.set_objective(k, T::one());
        }
        for i in 0..dim {
            for j in 0..dim {
                lp.add_constraint(
                    packing_row(cols, 0, i, j),
                    Relation::Le,
                    v.get(i, j).clone(),
                );
            }
        }
        let sol = simplex_solve(&lp)?;
        if side.price(&sol.duals) == 0 {
            return Ok(decomposition(&side.columns, &sol.primal, v));
        }
    }
    Err(stalled())
}

/// `κ(v)` over exactly the given disks, with a witness.
pub fn kappa<T: Scalar>(
    v: &StochasticMatrix<T>,
    disks: &[DiskVector],
) -> Result<KappaDecomposition<T>> {
    check_dims(disks, v.dim())?;
    kappa_program(
        v,
        &mut FactorColumns::new(&[], FactorOrder::Infinite, None, disks),
    )
}

/// `κ(v)` over every disk vector of a factor with the given exponents. For
/// finite order this is exact; for infinite order disks are limited to length
/// `k_max`.
pub fn kappa_complete<T: Scalar>(
    v: &StochasticMatrix<T>,
    exponents: &[i64],
    order: FactorOrder,
    k_max: usize,
) -> Result<KappaDecomposition<T>> {
    let dim = v.dim();
    if exponents.len() != dim {
        return Err(Error::Dimension(format!(
            "{} exponents for L = {dim}",
            exponents.len()
        )));
    }
    let bound = walk_bound(dim, order, k_max);
    let seeds = enumerate_irreducible(exponents, order, bound.min(SEED_LENGTH)).disks;
    kappa_program(
        v,
        &mut FactorColumns::new(exponents, order, Some(bound), &seeds),
    )
}

/// Longest irreducible disks used to seed column generation.
const SEED_LENGTH: usize = 6;

/// Short irreducible disks to start column generation from, carrying `k_max`
/// as the pricing length for an infinite-order factor.
pub fn seed_columns(exponents: &[i64], order: FactorOrder, k_max: usize) -> DiskEnumeration {
    let mut e = enumerate_irreducible(exponents, order, k_max.min(SEED_LENGTH));
    e.k_max = k_max;
    e
}

fn joint_program<T: Scalar>(
    w: &AlternatingWord,
    side_a: &mut FactorColumns,
    side_b: &mut FactorColumns,
) -> Result<SclResult<T>> {
    let dim = w.len();
    let n_x = dim * dim;
    for _ in 0..MAX_PRICING_ROUNDS {
        let (cols_a, cols_b) = (&side_a.columns, &side_b.columns);
        let first_t = n_x;
        let first_s = n_x + cols_a.len();
        let mut lp = LinearProgram::new(first_s + cols_b.len());
        for k in first_t..lp.num_vars() {
            lp.set_objective(k, T::one());
        }
        for i in 0..dim {
            let row = (0..dim).map(|j| (i * dim + j, T::one())).collect();
            lp.add_constraint(row, Relation::Eq, T::one());
            let col = (0..dim).map(|j| (j * dim + i, T::one())).collect();
            lp.add_constraint(col, Relation::Eq, T::one());
        }
        let first_row = lp.constraints().len();
        for i in 0..dim {
            for j in 0..dim {
                let mut row = packing_row(cols_a, first_t, i, j);
                row.push((i * dim + j, -T::one()));
                lp.add_constraint(row, Relation::Le, T::zero());
            }
        }
        // φ(x)(k, l) = x(φ⁻¹(k, l))
        for k in 0..dim {
            for l in 0..dim {
                let (i, j) = phi_inverse_index(k, l, dim);
                let mut row = packing_row(cols_b, first_s, k, l);
                row.push((i * dim + j, -T::one()));
                lp.add_constraint(row, Relation::Le, T::zero());
            }
        }

        let sol = simplex_solve(&lp).map_err(|e| match e {
            // V is never empty and every weight is bounded by the mass of v
            Error::Unbounded | Error::Infeasible => {
                Error::InvalidArgument(format!("joint program reported {e}; solver bug"))
            }
            other => other,
        })?;
        let duals_a = &sol.duals[first_row..first_row + n_x];
        let duals_b = &sol.duals[first_row + n_x..first_row + 2 * n_x];
        let added = side_a.price(duals_a) + side_b.price(duals_b);
        if added > 0 {
            continue;
        }

        let (cols_a, cols_b) = (&side_a.columns, &side_b.columns);
        let v = StochasticMatrix::from_entries_unchecked(dim, sol.primal[..n_x].to_vec())?;
        let decomp_a = decomposition(cols_a, &sol.primal[first_t..first_s], &v);
        let decomp_b = decomposition(cols_b, &sol.primal[first_s..], &v.phi());
        let complete = |side: &FactorColumns| side.order.is_finite() && side.walk_bound.is_some();
        let exact = T::is_exact() && complete(side_a) && complete(side_b);
        let opt_objective = decomp_a.objective.clone() + decomp_b.objective.clone();
        return Ok(SclResult {
            word: w.clone(),
            value: scl_from_objective(dim, &opt_objective, exact),
            exact,
            bound_kind: if exact {
                BoundKind::Exact
            } else {
                BoundKind::UpperBound
            },
            optimum_v: v,
            decomp_a,
            decomp_b,
            opt_objective,
            k_max: (
                side_a.walk_bound.unwrap_or(0),
                side_b.walk_bound.unwrap_or(0),
            ),
        });
    }
    Err(stalled())
}

/// Solves the joint program starting from the given disk vectors and adding
/// any disk vector that improves the optimum. Finite-order factors are priced
/// over all disks, so the result is exact when both factors are finite.
/// Infinite-order factors are priced over disks of length up to the
/// enumeration's `k_max`, giving an upper bound until a saturation check
/// confirms it (see [`compute_scl`]).
pub fn joint_optimize<T: Scalar>(
    w: &AlternatingWord,
    disks_a: &DiskEnumeration,
    disks_b: &DiskEnumeration,
) -> Result<SclResult<T>> {
    require_commutator(w)?;
    let dim = w.len();
    check_dims(&disks_a.disks, dim)?;
    check_dims(&disks_b.disks, dim)?;
    let bound_a = walk_bound(dim, w.order_a(), disks_a.k_max);
    let bound_b = walk_bound(dim, w.order_b(), disks_b.k_max);
    joint_program(
        w,
        &mut FactorColumns::new(w.exp_a(), w.order_a(), Some(bound_a), &disks_a.disks),
        &mut FactorColumns::new(w.exp_b(), w.order_b(), Some(bound_b), &disks_b.disks),
    )
}

/// The joint program over exactly the given disk vectors. Missing disks can
/// only lower the optimum, so the value is an upper bound for scl.
pub fn restricted_optimize<T: Scalar>(
    w: &AlternatingWord,
    disks_a: &[DiskVector],
    disks_b: &[DiskVector],
) -> Result<SclResult<T>> {
    require_commutator(w)?;
    check_dims(disks_a, w.len())?;
    check_dims(disks_b, w.len())?;
    joint_program(
        w,
        &mut FactorColumns::new(w.exp_a(), w.order_a(), None, disks_a),
        &mut FactorColumns::new(w.exp_b(), w.order_b(), None, disks_b),
    )
}

/// `(L − objective)/2`, clamped at zero for bound-only results.
pub fn scl_from_objective<T: Scalar>(dim: usize, objective: &T, exact: bool) -> T {
    let raw = (T::from_int(dim as i64) - objective.clone()) / T::from_int(2);
    if exact {
        raw
    } else {
        T::max_of(raw, T::zero())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SclOptions {
    /// Disk length bound for infinite-order factors; finite-order factors are
    /// always priced completely.
    pub k_max: Option<usize>,
    /// Skip the doubling check for infinite-order factors.
    pub skip_saturation: bool,
}

/// Computes scl with the joint program. When a factor has infinite order the
/// program is solved again with its disk length bound doubled; a change in
/// the optimum is reported as [`Error::BoundTooSmall`].
pub fn compute_scl<T: Scalar>(w: &AlternatingWord, opts: &SclOptions) -> Result<SclResult<T>> {
    require_commutator(w)?;
    let k_a = opts
        .k_max
        .unwrap_or_else(|| default_k_max(w.exp_a(), w.order_a()));
    let k_b = opts
        .k_max
        .unwrap_or_else(|| default_k_max(w.exp_b(), w.order_b()));
    let enum_a = seed_columns(w.exp_a(), w.order_a(), k_a);
    let enum_b = seed_columns(w.exp_b(), w.order_b(), k_b);
    let mut result = joint_optimize::<T>(w, &enum_a, &enum_b)?;

    let needs_check = !w.order_a().is_finite() || !w.order_b().is_finite();
    if !T::is_exact() || !needs_check || opts.skip_saturation {
        return Ok(result);
    }
    let widen = |mut e: DiskEnumeration| {
        e.k_max *= 2;
        e
    };
    let wide = joint_optimize::<T>(w, &widen(enum_a), &widen(enum_b))?;
    if wide.opt_objective != result.opt_objective {
        return Err(Error::BoundTooSmall {
            k_max: k_a.max(k_b),
            detail: format!(
                "optimum moved from {} to {} when the bound was doubled",
                result.opt_objective, wide.opt_objective
            ),
        });
    }
    result.exact = true;
    result.bound_kind = BoundKind::Exact;
    result.value = scl_from_objective(w.len(), &result.opt_objective, true);
    Ok(result)
}

/// Outcome of [`verify_certificate`]; empty `problems` means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateCheck {
    pub problems: Vec<String>,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Re-checks every claim of a result without re-solving anything.
pub fn verify_certificate<T: Scalar>(r: &SclResult<T>) -> CertificateCheck {
    let mut problems = Vec::new();
    let w = &r.word;
    let dim = w.len();
    if r.optimum_v.dim() != dim {
        problems.push(format!(
            "optimum has dimension {}, word has L = {dim}",
            r.optimum_v.dim()
        ));
        return CertificateCheck { problems };
    }
    problems.extend(
        r.optimum_v
            .violations()
            .into_iter()
            .map(|v| format!("optimum_v: {v}")),
    );
    problems.extend(
        r.decomp_a
            .problems("A", &r.optimum_v, w.exp_a(), w.order_a()),
    );
    problems.extend(
        r.decomp_b
            .problems("B", &r.optimum_v.phi(), w.exp_b(), w.order_b()),
    );
    let total = r.decomp_a.objective.clone() + r.decomp_b.objective.clone();
    if !total.approx_eq(&r.opt_objective) {
        problems.push(format!(
            "objective {} differs from κ_A + κ_B = {total}",
            r.opt_objective
        ));
    }
    let expected = scl_from_objective(dim, &r.opt_objective, r.exact);
    if !expected.approx_eq(&r.value) {
        problems.push(format!(
            "value {} differs from (L − objective)/2 = {expected}",
            r.value
        ));
    }
    if r.exact != (r.bound_kind == BoundKind::Exact) {
        problems.push("exact flag disagrees with bound kind".into());
    }
    CertificateCheck { problems }
}
