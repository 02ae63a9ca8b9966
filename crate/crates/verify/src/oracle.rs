//! Floating-point value of the joint program, computed without listing disks.
//!
//! The oracle solves the dual. For each factor it carries prices `y ≥ 0` on
//! the `L²` index pairs and requires every disk sequence to cost at least one.
//! That infinite family of constraints is encoded with shortest-path
//! potentials on the graph of states `(index, exponent sum so far)`: from each
//! start state, every path that returns to exponent sum zero at the start
//! index must cost at least one. The master side stays the usual pair of
//! doubly stochastic equalities.
//!
//! Distances capped at one are still feasible potentials, so every potential
//! lives in `[0, 1]` with the start pinned to 0 and the return pinned to 1.
//! Prices above one never help either.

use microlp::{ComparisonOp, OptimizationDirection, Problem, Variable};
use sclkit::polytope::phi_index;
use sclkit::{AlternatingWord, FactorOrder};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("float solver failed: {0}")]
    Solver(#[from] microlp::Error),
    #[error("float solver stopped before reaching an optimum")]
    Interrupted,
}

const FREE: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);
const UNIT: (f64, f64) = (0.0, 1.0);

/// A potential: a variable, or a pinned value at the start and return.
#[derive(Clone, Copy)]
enum Node {
    Var(Variable),
    Fixed(f64),
}

/// Exponent sums an infinite-order walk may visit: `|s| ≤ window`.
fn prefix_range(order: FactorOrder, window: i64) -> Vec<i64> {
    match order {
        FactorOrder::Finite(n) => (0..n as i64).collect(),
        FactorOrder::Infinite => (-window..=window).collect(),
    }
}

/// Adds, for every start index, potentials forcing each disk to cost `≥ 1`
/// under the prices `y` (indexed `a·L + b`).
fn add_disk_cuts(lp: &mut Problem, y: &[Variable], exps: &[i64], order: FactorOrder, window: i64) {
    let dim = exps.len();
    let sums = prefix_range(order, window);
    let slot = |s: i64| sums.iter().position(|&t| t == s);
    let step = |s: i64, e: i64| match order {
        FactorOrder::Finite(n) => Some((s + e).rem_euclid(n as i64)),
        FactorOrder::Infinite => Some(s + e).filter(|t| t.abs() <= window),
    };

    for start in 0..dim {
        let zero = slot(0).expect("zero is a prefix sum");
        let potential: Vec<Vec<Node>> = (0..dim)
            .map(|k| {
                (0..sums.len())
                    .map(|si| match (k, si) {
                        (k, si) if k == start && si == zero => Node::Fixed(0.0),
                        _ => Node::Var(lp.add_var(0.0, UNIT)),
                    })
                    .collect()
            })
            .collect();

        for j in 0..dim {
            for (si, &s) in sums.iter().enumerate() {
                let Some(t) = step(s, exps[j]) else { continue };
                let from = potential[j][si];
                for k in 0..dim {
                    let to = if k == start && t == 0 {
                        Node::Fixed(1.0)
                    } else {
                        potential[k][slot(t).expect("step stays in range")]
                    };
                    // p(to) − p(from) ≤ y(j, k)
                    let mut terms = vec![(y[j * dim + k], -1.0)];
                    let mut rhs = 0.0;
                    for (node, sign) in [(to, 1.0), (from, -1.0)] {
                        match node {
                            Node::Var(v) => terms.push((v, sign)),
                            Node::Fixed(c) => rhs -= sign * c,
                        }
                    }
                    lp.add_constraint(terms, ComparisonOp::Le, rhs);
                }
            }
        }
    }
}

/// The optimum of the joint program, `L − 2·scl`. For an infinite-order
/// factor, disks are limited to those whose exponent sums stay within
/// `±window`.
pub fn joint_optimum(w: &AlternatingWord, window: i64) -> Result<f64, OracleError> {
    let dim = w.len();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let alpha: Vec<Variable> = (0..dim).map(|_| lp.add_var(1.0, FREE)).collect();
    // shifting α up and β down by the same amount changes nothing; pin β_0
    let beta: Vec<Variable> = (0..dim)
        .map(|j| lp.add_var(1.0, if j == 0 { (0.0, 0.0) } else { FREE }))
        .collect();
    let y_a: Vec<Variable> = (0..dim * dim).map(|_| lp.add_var(0.0, UNIT)).collect();
    let y_b: Vec<Variable> = (0..dim * dim).map(|_| lp.add_var(0.0, UNIT)).collect();

    // dual of x_ij ≥ 0: x feeds A's packing row (i, j) and B's row φ(i, j)
    for i in 0..dim {
        for j in 0..dim {
            let (k, l) = phi_index(i, j, dim);
            lp.add_constraint(
                [
                    (alpha[i], 1.0),
                    (beta[j], 1.0),
                    (y_a[i * dim + j], -1.0),
                    (y_b[k * dim + l], -1.0),
                ],
                ComparisonOp::Ge,
                0.0,
            );
        }
    }
    add_disk_cuts(&mut lp, &y_a, w.exp_a(), w.order_a(), window);
    add_disk_cuts(&mut lp, &y_b, w.exp_b(), w.order_b(), window);

    let solution = lp
        .solve()?
        .into_solution()
        .map_err(|_| OracleError::Interrupted)?;
    Ok(solution.objective())
}

/// A window that contains every disk of length at most `k_max`.
pub fn window_for(w: &AlternatingWord, k_max: usize) -> i64 {
    let step = w
        .exp_a()
        .iter()
        .chain(w.exp_b())
        .map(|e| e.abs())
        .max()
        .unwrap_or(1);
    (k_max as i64 * step + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use sclkit::FactorSignature;

    fn optimum(text: &str, orders: &str) -> f64 {
        let w = AlternatingWord::parse(text, &FactorSignature::parse(orders).unwrap()).unwrap();
        joint_optimum(&w, 8).unwrap()
    }

    #[test]
    fn commutator_values() {
        // L − 2·scl with scl([a, b]) = 1/2 − 1/min(m, n)
        assert!((optimum("abAB", "inf,inf") - 1.0).abs() < 1e-9);
        assert!((optimum("abAB", "2,3") - 2.0).abs() < 1e-9);
        assert!((optimum("abAB", "3,4") - 5.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn matches_the_exact_solver() {
        use num_traits::ToPrimitive;
        use sclkit::{compute_scl, Rational, SclOptions};

        let sig = FactorSignature::parse("inf,inf").unwrap();
        let w = AlternatingWord::parse("abaBaBAAAb", &sig).unwrap();
        let r = compute_scl::<Rational>(&w, &SclOptions::default()).unwrap();
        assert!(r.value >= Rational::new(1.into(), 2.into()));
        let k = r.k_max.0.max(r.k_max.1);
        let float = joint_optimum(&w, window_for(&w, k)).unwrap();
        assert!((float - r.opt_objective.to_f64().unwrap()).abs() < 1e-6);
    }

    #[test]
    fn sees_reducible_disks() {
        // scl is 1/2 here, but 19/36 if only irreducible disks are allowed
        assert!((optimum("ab^2a^3b^4a^4b^5a^4b", "6,6") - 3.0).abs() < 1e-9);
    }
}
