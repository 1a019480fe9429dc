//! Exhaustive comparisons of the arithmetic formulas against brute-force
//! lattice counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    a_formula_odd, f_n, gauss_count, is_squarefree, l_one_chi, nonsquarefree_majorant, FmnVariant,
};
use crate::error::Result;
use crate::lattice::{enumerate, is_three_square_representable, pair_table_of};

/// One pair (n, t) where the brute count is neither 0 nor the formula value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub t: i64,
    pub brute: u64,
    pub formula: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArithReport {
    pub n_max: u64,
    pub squarefree_n: u64,
    pub pairs_checked: u64,
    /// Pairs where the count was 0 although the odd-prime product was not,
    /// i.e. the 2-adic factor vanished.
    pub two_adic_zero: u64,
    pub mismatches: u64,
    pub first_mismatches: Vec<Mismatch>,
    /// Pairs with A(n,t) > 24 f_n(n² - t²).
    pub fn_bound_violations: u64,
    pub nonsquarefree_pairs: u64,
    /// Largest A(n,t) / majorant over non-squarefree n for each reading of f_{m,n}.
    pub max_ratio_divides_n: f64,
    pub max_ratio_literal: f64,
}

impl ArithReport {
    pub fn ok(&self) -> bool {
        self.mismatches == 0 && self.fn_bound_violations == 0
    }
}

#[derive(Default)]
struct PerN {
    squarefree: bool,
    pairs: u64,
    two_adic_zero: u64,
    mismatches: Vec<Mismatch>,
    fn_violations: u64,
    nsf_pairs: u64,
    ratio_divides: f64,
    ratio_literal: f64,
}

fn check_n(n: u64) -> Result<PerN> {
    let mut out = PerN { squarefree: is_squarefree(n), ..Default::default() };
    if !is_three_square_representable(n) {
        return Ok(out);
    }
    let set = enumerate(n);
    let table = pair_table_of(&set);
    let ni = n as i64;
    for t in (1 - ni)..ni {
        let brute = table.get(t);
        if out.squarefree {
            out.pairs += 1;
            let formula = a_formula_odd(n, t)?;
            if brute == 0 && formula != 0 {
                out.two_adic_zero += 1;
            } else if brute as u128 != formula {
                out.mismatches.push(Mismatch { n, t, brute, formula });
            }
            let diff = (n as u128).pow(2) - (t.unsigned_abs() as u128).pow(2);
            if brute as u128 > 24 * f_n(n, diff)? {
                out.fn_violations += 1;
            }
        } else {
            out.nsf_pairs += 1;
            let a = brute as f64;
            out.ratio_divides = out.ratio_divides.max(a / nonsquarefree_majorant(n, t, FmnVariant::DividesN)?);
            out.ratio_literal = out.ratio_literal.max(a / nonsquarefree_majorant(n, t, FmnVariant::Literal)?);
        }
    }
    Ok(out)
}

/// Compares A(n,t) by direct counting with the local-density product for
/// squarefree n ≤ `n_max` and every |t| < n, checks the f_n bound, and
/// records how the non-squarefree majorant behaves under both readings.
pub fn verify_arith(n_max: u64) -> Result<ArithReport> {
    let per: Vec<PerN> = (1..=n_max).into_par_iter().map(check_n).collect::<Result<_>>()?;
    let mut report = ArithReport {
        n_max,
        squarefree_n: 0,
        pairs_checked: 0,
        two_adic_zero: 0,
        mismatches: 0,
        first_mismatches: Vec::new(),
        fn_bound_violations: 0,
        nonsquarefree_pairs: 0,
        max_ratio_divides_n: 0.0,
        max_ratio_literal: 0.0,
    };
    for p in per {
        report.squarefree_n += p.squarefree as u64;
        report.pairs_checked += p.pairs;
        report.two_adic_zero += p.two_adic_zero;
        report.mismatches += p.mismatches.len() as u64;
        for m in p.mismatches {
            if report.first_mismatches.len() < 10 {
                report.first_mismatches.push(m);
            }
        }
        report.fn_bound_violations += p.fn_violations;
        report.nonsquarefree_pairs += p.nsf_pairs;
        report.max_ratio_divides_n = report.max_ratio_divides_n.max(p.ratio_divides);
        report.max_ratio_literal = report.max_ratio_literal.max(p.ratio_literal);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussReport {
    pub n_max: u64,
    pub target_error: f64,
    pub checked: u64,
    pub count_mismatches: Vec<u64>,
    /// Largest |N_n - (24/π)√n L| / N_n.
    pub max_relative_error: f64,
    /// Cases where that difference exceeds (24/π)√n · 2ε.
    pub l_bound_violations: Vec<u64>,
}

impl GaussReport {
    pub fn ok(&self) -> bool {
        self.count_mismatches.is_empty() && self.l_bound_violations.is_empty()
    }
}

/// Class-number count and L-value count against enumeration for squarefree
/// 3 < n ≤ `n_max`, n ≢ 7 (mod 8).
pub fn verify_gauss(n_max: u64, target_error: f64) -> Result<GaussReport> {
    let ns: Vec<u64> = (4..=n_max).filter(|&n| n % 8 != 7 && is_squarefree(n)).collect();
    let rows: Vec<(u64, bool, f64, bool)> = ns
        .par_iter()
        .map(|&n| {
            let count = enumerate(n).len() as u64;
            let gauss = gauss_count(n)?;
            let l = l_one_chi(n, target_error)?;
            let scale = 24.0 / std::f64::consts::PI * (n as f64).sqrt();
            let diff = (count as f64 - scale * l.value).abs();
            Ok((n, gauss == count, diff / count as f64, diff <= scale * 2.0 * target_error))
        })
        .collect::<Result<_>>()?;
    Ok(GaussReport {
        n_max,
        target_error,
        checked: rows.len() as u64,
        count_mismatches: rows.iter().filter(|r| !r.1).map(|r| r.0).collect(),
        max_relative_error: rows.iter().map(|r| r.2).fold(0.0, f64::max),
        l_bound_violations: rows.iter().filter(|r| !r.3).map(|r| r.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_is_clean() {
        let r = verify_arith(60).unwrap();
        assert!(r.ok(), "{:?}", r.first_mismatches);
        assert!(r.pairs_checked > 1000);
        let g = verify_gauss(300, 1e-8).unwrap();
        assert!(g.ok());
        assert!(g.max_relative_error < 1e-6);
    }
}
