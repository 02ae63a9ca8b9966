//! Dense two-phase primal simplex with Bland's rule.
//!
//! Over an exact scalar type every pivot is exact and Bland's rule guarantees
//! termination. Problems here are small (tens of rows, a few hundred columns)
//! so the tableau is kept dense and pivots skip zero entries.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

/// `maximize c·x` subject to linear constraints and `x ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    objective: Vec<T>,
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![T::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[T] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn set_objective(&mut self, var: usize, coeff: T) {
        self.objective[var] = coeff;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, T)>, relation: Relation, rhs: T) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.objective.len()));
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub primal: Vec<T>,
    /// One multiplier per constraint with `c − yᵀA ≤ 0` on every column;
    /// nonnegative for `≤` rows and nonpositive for `≥` rows.
    pub duals: Vec<T>,
    /// Basic structural variables at the optimum.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    // reduced costs; the final entry holds minus the objective value
    obj: Vec<T>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.width();
        let p = self.rows[r][c].clone();
        let nonzero: Vec<usize> = (0..=width)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &nonzero {
            let v = std::mem::replace(&mut self.rows[r][j], T::zero());
            self.rows[r][j] = v / p.clone();
        }
        let (before, rest) = self.rows.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().expect("pivot row exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            eliminate(row, prow, c, &nonzero);
        }
        eliminate(&mut self.obj, prow, c, &nonzero);
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs Bland's rule until optimal. Columns with `allowed[j] == false`
    /// never enter.
    fn optimize(&mut self, allowed: &[bool]) -> Result<()> {
        loop {
            let Some(c) = (0..self.width()).find(|&j| allowed[j] && self.obj[j].is_pos()) else {
                return Ok(());
            };
            let rhs = self.width();
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_pos() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[c].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio.approx_eq(br) && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(Error::Unbounded),
            }
        }
    }
}

fn eliminate<T: Scalar>(row: &mut [T], prow: &[T], c: usize, nonzero: &[usize]) {
    if row[c].is_zero() {
        return;
    }
    let f = row[c].clone();
    for &j in nonzero {
        let v = std::mem::replace(&mut row[j], T::zero());
        let mut updated = v - f.clone() * prow[j].clone();
        if !T::is_exact() && updated.abs() < T::epsilon() * T::ratio(1, 1000) {
            updated = T::zero();
        }
        row[j] = updated;
    }
    // exact zero in the pivot column regardless of rounding
    row[c] = T::zero();
}

/// Solves `lp` to optimality.
pub fn simplex_solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    let n = lp.num_vars();
    let mut kinds = vec![ColumnKind::Structural; n];
    let m = lp.constraints.len();

    // normalize to nonnegative right-hand sides
    let normalized: Vec<Constraint<T>> = lp
        .constraints
        .iter()
        .map(|con| {
            if con.rhs.is_neg() {
                Constraint {
                    coeffs: con.coeffs.iter().map(|(v, a)| (*v, -a.clone())).collect(),
                    relation: match con.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    },
                    rhs: -con.rhs.clone(),
                }
            } else {
                con.clone()
            }
        })
        .collect();

    let mut slack_of = vec![None; m];
    let mut artificial_of = vec![None; m];
    for (i, con) in normalized.iter().enumerate() {
        match con.relation {
            Relation::Le => {
                slack_of[i] = Some(kinds.len());
                kinds.push(ColumnKind::Slack);
            }
            Relation::Ge => {
                slack_of[i] = Some(kinds.len());
                kinds.push(ColumnKind::Slack);
                artificial_of[i] = Some(kinds.len());
                kinds.push(ColumnKind::Artificial);
            }
            Relation::Eq => {
                artificial_of[i] = Some(kinds.len());
                kinds.push(ColumnKind::Artificial);
            }
        }
    }
    let width = kinds.len();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut removed = vec![false; m];
    for (i, con) in normalized.iter().enumerate() {
        let mut row = vec![T::zero(); width + 1];
        for (v, a) in &con.coeffs {
            row[*v] = row[*v].clone() + a.clone();
        }
        match con.relation {
            Relation::Le => {
                row[slack_of[i].unwrap()] = T::one();
                basis.push(slack_of[i].unwrap());
            }
            Relation::Ge => {
                row[slack_of[i].unwrap()] = -T::one();
                row[artificial_of[i].unwrap()] = T::one();
                basis.push(artificial_of[i].unwrap());
            }
            Relation::Eq => {
                row[artificial_of[i].unwrap()] = T::one();
                basis.push(artificial_of[i].unwrap());
            }
        }
        row[width] = con.rhs.clone();
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        obj: vec![T::zero(); width + 1],
        basis,
        kinds,
        pivots: 0,
    };

    let not_artificial: Vec<bool> = tab
        .kinds
        .iter()
        .map(|k| *k != ColumnKind::Artificial)
        .collect();

    if tab.kinds.contains(&ColumnKind::Artificial) {
        // phase 1: maximize minus the sum of artificials
        for (i, row) in tab.rows.iter().enumerate() {
            if tab.kinds[tab.basis[i]] == ColumnKind::Artificial {
                for (j, x) in row.iter().enumerate().take(width + 1) {
                    if tab.kinds.get(j) != Some(&ColumnKind::Artificial) && !x.is_zero() {
                        tab.obj[j] = tab.obj[j].clone() + x.clone();
                    }
                }
            }
        }
        tab.optimize(&not_artificial)?;
        if tab.obj[width].is_pos() {
            return Err(Error::Infeasible);
        }
        // pivot remaining (zero-level) artificials out, dropping redundant rows
        let mut origin: Vec<usize> = (0..m).collect();
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.kinds[tab.basis[i]] != ColumnKind::Artificial {
                i += 1;
                continue;
            }
            let entering =
                (0..width).find(|&j| not_artificial[j] && !tab.rows[i][j].is_negligible());
            match entering {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    removed[origin.remove(i)] = true;
                }
            }
        }
    }

    // phase 2
    tab.obj = vec![T::zero(); width + 1];
    for (j, c) in lp.objective.iter().enumerate() {
        tab.obj[j] = c.clone();
    }
    for i in 0..tab.rows.len() {
        let b = tab.basis[i];
        if b < n && !lp.objective[b].is_zero() {
            let cb = lp.objective[b].clone();
            for j in 0..=width {
                if !tab.rows[i][j].is_zero() {
                    tab.obj[j] = tab.obj[j].clone() - cb.clone() * tab.rows[i][j].clone();
                }
            }
        }
    }
    tab.optimize(&not_artificial)?;

    let mut primal = vec![T::zero(); n];
    let mut basic = Vec::new();
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            primal[b] = tab.rows[i][width].clone();
            basic.push(b);
        }
    }
    basic.sort_unstable();
    // reduced cost of a slack or artificial column is minus its row's multiplier
    let duals = (0..m)
        .map(|i| {
            if removed[i] {
                return T::zero();
            }
            let y = match normalized[i].relation {
                Relation::Le => -tab.obj[slack_of[i].unwrap()].clone(),
                Relation::Ge => tab.obj[slack_of[i].unwrap()].clone(),
                Relation::Eq => -tab.obj[artificial_of[i].unwrap()].clone(),
            };
            if lp.constraints[i].rhs.is_neg() {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpSolution {
        value: -tab.obj[width].clone(),
        primal,
        duals,
        basis: basic,
        pivots: tab.pivots,
    })
}
