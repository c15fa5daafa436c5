//! Discrepancies of a resolved surface singularity.
//!
//! Writing `K_Y = f*K_X + sum alpha_i E_i` over the contraction `f` and
//! pairing with each exceptional curve gives the linear system
//! `sum_i alpha_i (E_i.E_j) = K_Y.E_j`, which has a unique exact solution
//! whenever the intersection matrix is negative definite. The solved vector
//! classifies the singularities and corrects `K_Y^2` to `K_X^2`.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::Ratio;
use num::{Integer, One, Signed, Zero};

use crate::divisor::CurveId;
use crate::error::{Error, Result};
use crate::graph::DualGraph;
use crate::num::{int, rat_int, Scalar};

/// Coarse classification read off the discrepancy vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityCategory {
    /// No exceptional curves at all.
    TerminalSmooth,
    /// Every discrepancy is >= 0 (all zero on a minimal resolution).
    Canonical,
    /// Every discrepancy lies in (-1, 0], at least one is negative.
    LogTerminalStrict,
    /// Some discrepancy is <= -1.
    NotLogTerminal,
}

impl fmt::Display for SingularityCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityCategory::TerminalSmooth => "terminal-smooth",
            SingularityCategory::Canonical => "canonical",
            SingularityCategory::LogTerminalStrict => "log terminal (strict)",
            SingularityCategory::NotLogTerminal => "not log terminal",
        })
    }
}

/// Solved discrepancy data for one exceptional configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport<T: Scalar> {
    alphas: BTreeMap<CurveId, Ratio<T>>,
    category: SingularityCategory,
    ks_squared_correction: Ratio<T>,
    denominator_lcm: T,
    non_minimal: bool,
}

impl<T: Scalar> DiscrepancyReport<T> {
    pub fn alphas(&self) -> impl Iterator<Item = (&CurveId, &Ratio<T>)> {
        self.alphas.iter()
    }

    pub fn alpha(&self, id: &CurveId) -> Option<&Ratio<T>> {
        self.alphas.get(id)
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn category(&self) -> SingularityCategory {
        self.category
    }

    /// The amount `-sum alpha_i (K_Y.E_i)` added to `K_Y^2` by contraction.
    pub fn ks_squared_correction(&self) -> &Ratio<T> {
        &self.ks_squared_correction
    }

    /// `K_X^2 = K_Y^2 - sum alpha_i (K_Y.E_i)` on the contracted surface,
    /// from `f*K_X = K_Y - sum alpha_i E_i` paired with `K_Y`.
    pub fn ks_squared(&self, ky_squared: i64) -> Ratio<T> {
        rat_int::<T>(ky_squared) + self.ks_squared_correction.clone()
    }

    /// Least common multiple of the reduced discrepancy denominators; 1 when
    /// every discrepancy is an integer. A lower-bound witness for the index
    /// of `K_X`, not the index itself.
    pub fn denominator_lcm(&self) -> &T {
        &self.denominator_lcm
    }

    /// True when the input configuration contains a (-1)-curve, so the
    /// ambient resolution is not minimal.
    pub fn non_minimal(&self) -> bool {
        self.non_minimal
    }

    /// All discrepancies lie in the interval (-1, 0].
    pub fn satisfies_log_terminal_hypothesis(&self) -> bool {
        self.alphas
            .values()
            .all(|a| a > &-Ratio::one() && a <= &Ratio::zero())
    }
}

/// Solves the defining linear system of the discrepancies on every connected
/// component of `g`, exactly.
pub fn solve_discrepancies<T: Scalar>(g: &DualGraph) -> Result<DiscrepancyReport<T>> {
    let mut alphas: BTreeMap<CurveId, Ratio<T>> = BTreeMap::new();
    for component in g.components() {
        let (order, matrix) = component.intersection_matrix::<T>();
        if let Some((k, minor)) = matrix.offending_minor() {
            return Err(Error::NotNegativeDefinite {
                component: order[0].clone(),
                minor_index: k,
                minor: minor.to_string(),
            });
        }
        let rhs: Vec<T> = order
            .iter()
            .map(|id| int(component.canonical_intersection(id).expect("vertex")))
            .collect();
        let solution = matrix.solve(&rhs)?;
        // Defining system must hold exactly; a residual means the solver is
        // broken, not the input.
        for (j, target) in rhs.iter().enumerate() {
            let mut acc: Ratio<T> = Ratio::zero();
            for (i, alpha) in solution.iter().enumerate() {
                acc = acc + alpha.clone() * Ratio::from_integer(matrix.get(i, j).clone());
            }
            if acc != Ratio::from_integer(target.clone()) {
                return Err(Error::SingularSystem);
            }
        }
        for (id, alpha) in order.into_iter().zip(solution) {
            alphas.insert(id, alpha);
        }
    }

    let category = if alphas.is_empty() {
        SingularityCategory::TerminalSmooth
    } else if alphas.values().any(|a| a <= &-Ratio::one()) {
        SingularityCategory::NotLogTerminal
    } else if alphas.values().all(|a| a >= &Ratio::zero()) {
        SingularityCategory::Canonical
    } else {
        SingularityCategory::LogTerminalStrict
    };

    let mut correction: Ratio<T> = Ratio::zero();
    for (id, alpha) in &alphas {
        let ke = g.canonical_intersection(id).expect("vertex");
        correction = correction - alpha.clone() * rat_int(ke);
    }

    let denominator_lcm = alphas
        .values()
        .fold(T::one(), |acc, a| acc.lcm(a.denom()));

    Ok(DiscrepancyReport {
        alphas,
        category,
        ks_squared_correction: correction,
        denominator_lcm,
        non_minimal: !g.is_minimal_configuration(),
    })
}

/// Convenience accessor mirroring the report field.
pub fn discrepancy_denominator<T: Scalar>(report: &DiscrepancyReport<T>) -> T {
    report.denominator_lcm.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chain;
    use crate::num::rat;
    use num::BigInt;
    use proptest::prelude::*;

    type Report = DiscrepancyReport<BigInt>;

    fn solve(g: &DualGraph) -> Report {
        solve_discrepancies(g).unwrap()
    }

    fn minus_two_chain(n: usize) -> DualGraph {
        let entries: Vec<(String, i64)> = (0..n).map(|i| (format!("E{i:02}"), -2)).collect();
        chain(&entries)
    }

    #[test]
    fn du_val_chain_has_zero_discrepancies() {
        let report = solve(&minus_two_chain(5));
        for (_, alpha) in report.alphas() {
            assert!(alpha.is_zero());
        }
        assert_eq!(report.category(), SingularityCategory::Canonical);
        assert_eq!(report.denominator_lcm(), &BigInt::from(1));
        assert!(!report.non_minimal());
    }

    #[test]
    fn single_minus_three_curve() {
        let mut g = DualGraph::new();
        g.add_curve("E", -3).unwrap();
        let report = solve(&g);
        assert_eq!(report.alpha(&"E".into()), Some(&rat(-1, 3)));
        assert_eq!(report.category(), SingularityCategory::LogTerminalStrict);
        assert_eq!(report.denominator_lcm(), &BigInt::from(3));
        // K_X^2 = K_Y^2 - (-1/3) * (K.E = 1) = K_Y^2 + 1/3.
        assert_eq!(report.ks_squared(5), rat(16, 3));
    }

    #[test]
    fn empty_graph_is_terminal_smooth() {
        let report = solve(&DualGraph::new());
        assert!(report.is_empty());
        assert_eq!(report.category(), SingularityCategory::TerminalSmooth);
        assert_eq!(report.ks_squared(9), rat(9, 1));
        assert_eq!(report.denominator_lcm(), &BigInt::from(1));
    }

    #[test]
    fn minus_one_curve_is_canonical_with_warning() {
        // alpha = 1 on a (-1)-curve: all alphas >= 0, but the resolution is
        // not minimal and the report says so.
        let mut g = DualGraph::new();
        g.add_curve("E", -1).unwrap();
        let report = solve(&g);
        assert_eq!(report.alpha(&"E".into()), Some(&rat(1, 1)));
        assert_eq!(report.category(), SingularityCategory::Canonical);
        assert!(report.non_minimal());
        assert!(!report.satisfies_log_terminal_hypothesis());
    }

    #[test]
    fn cusp_configuration_is_not_log_terminal() {
        // A single (-2)-curve with a double edge to a (-3)-curve is an
        // elliptic-type configuration: solve and find alpha <= -1.
        let mut g = DualGraph::new();
        g.add_curve("A", -3).unwrap();
        g.add_curve("B", -4).unwrap();
        g.add_meeting("A", "B", 3).unwrap();
        // det = 12 - 9 = 3 > 0 with negative diagonal: negative definite.
        let report = solve(&g);
        assert_eq!(report.category(), SingularityCategory::NotLogTerminal);
    }

    #[test]
    fn non_negative_definite_rejected_with_minor() {
        let mut g = DualGraph::new();
        g.add_curve("A", -1).unwrap();
        g.add_curve("B", -1).unwrap();
        g.add_meeting("A", "B", 1).unwrap();
        match solve_discrepancies::<BigInt>(&g).unwrap_err() {
            Error::NotNegativeDefinite {
                component,
                minor_index,
                minor,
            } => {
                assert_eq!(component, "A".into());
                assert_eq!(minor_index, 2);
                assert_eq!(minor, "0");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn correction_is_additive_over_components() {
        let mut g = DualGraph::new();
        g.add_curve("A", -3).unwrap();
        g.add_curve("B", -4).unwrap();
        let whole = solve(&g);
        let parts: Ratio<BigInt> = g
            .components()
            .iter()
            .map(|c| solve(c).ks_squared_correction().clone())
            .sum();
        assert_eq!(whole.ks_squared_correction(), &parts);
    }

    proptest! {
        // Hirzebruch-Jung chains (weights <= -2) always land in (-1, 0].
        #[test]
        fn hirzebruch_jung_chains_are_log_terminal(ws in proptest::collection::vec(-5i64..=-2, 1..=8)) {
            let entries: Vec<(String, i64)> = ws
                .iter()
                .enumerate()
                .map(|(i, &w)| (format!("E{i:02}"), w))
                .collect();
            let g = chain(&entries);
            let report = solve_discrepancies::<BigInt>(&g).unwrap();
            prop_assert!(report.satisfies_log_terminal_hypothesis());
            for (_, alpha) in report.alphas() {
                prop_assert!(alpha > &rat(-1, 1) && alpha <= &rat(0, 1));
            }
        }

        // The defining residual is exactly zero for arbitrary solvable input.
        #[test]
        fn residual_is_exactly_zero(ws in proptest::collection::vec(-6i64..=-2, 1..=6)) {
            let entries: Vec<(String, i64)> = ws
                .iter()
                .enumerate()
                .map(|(i, &w)| (format!("E{i:02}"), w))
                .collect();
            let g = chain(&entries);
            let report = solve_discrepancies::<BigInt>(&g).unwrap();
            let (order, matrix) = g.intersection_matrix::<BigInt>();
            for (j, id_j) in order.iter().enumerate() {
                let mut acc: Ratio<BigInt> = Ratio::zero();
                for (i, id_i) in order.iter().enumerate() {
                    acc = acc
                        + report.alpha(id_i).unwrap().clone()
                            * Ratio::from_integer(matrix.get(i, j).clone());
                }
                let ke = g.canonical_intersection(id_j).unwrap();
                prop_assert_eq!(acc, rat(ke, 1));
            }
        }
    }
}
