//! Integers that are sums of two squares: a segmented sieve, maximal gaps
//! in dyadic windows, and the probe relating points of E(m²) near the pole
//! to the distance from 2m to the nearest sum of two squares.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{points_near_pole, LatticePoint};

/// True iff every prime p ≡ 3 (mod 4) divides `n` to an even power.
pub fn is_sum_two_squares(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut m = n >> n.trailing_zeros();
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            if p % 4 == 3 && k % 2 == 1 {
                return false;
            }
        }
        p += 2;
    }
    m % 4 != 3
}

fn primes_3_mod_4(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        if p % 4 == 3 {
            out.push(p as u64);
        }
        for q in (p * p..=limit).step_by(p) {
            composite[q] = true;
        }
    }
    out
}

const SEGMENT: u64 = 1 << 18;

/// Membership flags for [lo, hi), sieving with `primes` (all primes
/// ≡ 3 mod 4 up to √hi).
///
/// After removing 2s and every small prime ≡ 3 (mod 4), what remains is a
/// product of primes ≡ 1 (mod 4) times at most one large prime q, so the
/// remainder is ≡ 3 (mod 4) exactly when q ≡ 3 (mod 4).
fn sieve_segment(lo: u64, hi: u64, primes: &[u64]) -> Vec<bool> {
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).map(|v| if v == 0 { 1 } else { v >> v.trailing_zeros() }).collect();
    let mut ok = vec![true; len];
    for &p in primes {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut v = first;
        while v < hi {
            let i = (v - lo) as usize;
            let mut k = 0;
            while rest[i] % p == 0 {
                rest[i] /= p;
                k += 1;
            }
            if k % 2 == 1 {
                ok[i] = false;
            }
            v += p;
        }
    }
    for i in 0..len {
        if rest[i] % 4 == 3 {
            ok[i] = false;
        }
    }
    ok
}

/// Calls `f` with each sum of two squares in [lo, hi) in increasing order.
pub fn for_each_member<F: FnMut(u64)>(lo: u64, hi: u64, mut f: F) {
    if lo >= hi {
        return;
    }
    let primes = primes_3_mod_4(hi.isqrt() + 1);
    let mut start = lo;
    while start < hi {
        let end = (start + SEGMENT).min(hi);
        for (i, member) in sieve_segment(start, end, &primes).into_iter().enumerate() {
            if member {
                f(start + i as u64);
            }
        }
        start = end;
    }
}

/// S₂ ∩ [Y, 2Y) with its largest internal gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoSquaresWindow {
    pub y: u64,
    pub members: Vec<u64>,
    /// Zero when the window has fewer than two members.
    pub max_gap: u64,
    pub argmax_pair: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, Default)]
struct GapTracker {
    last: Option<u64>,
    max_gap: u64,
    argmax: Option<(u64, u64)>,
}

impl GapTracker {
    fn push(&mut self, v: u64) {
        if let Some(prev) = self.last {
            if v - prev > self.max_gap {
                self.max_gap = v - prev;
                self.argmax = Some((prev, v));
            }
        }
        self.last = Some(v);
    }
}

pub fn window(y: u64) -> Result<TwoSquaresWindow> {
    if y == 0 {
        return Err(Error::domain("window start Y must be at least 1"));
    }
    let mut members = Vec::new();
    let mut gaps = GapTracker::default();
    for_each_member(y, 2 * y, |v| {
        members.push(v);
        gaps.push(v);
    });
    Ok(TwoSquaresWindow { y, members, max_gap: gaps.max_gap, argmax_pair: gaps.argmax })
}

/// G(Y) without storing the window.
pub fn max_gap(y: u64) -> Result<(u64, Option<(u64, u64)>)> {
    if y == 0 {
        return Err(Error::domain("window start Y must be at least 1"));
    }
    let mut gaps = GapTracker::default();
    for_each_member(y, 2 * y, |v| gaps.push(v));
    Ok((gaps.max_gap, gaps.argmax))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub y: u64,
    pub g: u64,
    /// G(Y) / Y^{1/4}.
    pub ratio: f64,
}

pub fn gap_scan(ys: &[u64]) -> Result<Vec<GapRow>> {
    ys.iter()
        .map(|&y| {
            let (g, _) = max_gap(y)?;
            Ok(GapRow { y, g, ratio: g as f64 / (y as f64).powf(0.25) })
        })
        .collect()
}

/// |2m - s| minimized over sums of two squares s, by outward search.
pub fn dist_to_s2(v: u64) -> u64 {
    (0..)
        .find(|&d| is_sum_two_squares(v + d) || (d <= v && is_sum_two_squares(v - d)))
        .unwrap()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub m: u64,
    pub h: u64,
    /// Largest x₃ < m over points with m + x₃ a sum of two squares; the pole
    /// itself only when nothing else qualifies.
    pub best_x3: Option<i64>,
    /// m - best_x3, an upper bound for dist(2m, S₂).
    pub probe_distance: Option<u64>,
    pub dist_2m_to_s2: u64,
    /// Points x with m - x₃ ≤ H and m + x₃ ∈ S₂.
    pub qualifying: Vec<LatticePoint>,
    /// Points near the pole (pole excluded) examined.
    pub examined: usize,
    /// m has no prime factor ≤ H.
    pub rough: bool,
    /// When `rough`, every examined point qualified.
    pub all_qualify_when_rough: bool,
    /// No lattice point other than the pole within H of it.
    pub exhausted: bool,
}

/// Scan E(m²) near the north pole for x with m + x₃ ∈ S₂.
pub fn gap_probe(m: u64, h: u64) -> Result<ProbeReport> {
    if m == 0 || h == 0 {
        return Err(Error::domain("probe needs m >= 1 and H >= 1"));
    }
    if h >= 2 * m {
        return Err(Error::domain(format!("probe needs H < 2m; got m={m}, H={h}")));
    }
    let mi = m as i64;
    let near: Vec<LatticePoint> = points_near_pole(m, h).into_iter().filter(|p| p.x3 < mi).collect();
    for p in &near {
        let lhs = (p.x1 as i128).pow(2) + (p.x2 as i128).pow(2);
        let rhs = (mi - p.x3) as i128 * (mi + p.x3) as i128;
        if lhs != rhs {
            return Err(Error::Invariant(format!(
                "x1^2 + x2^2 = (m - x3)(m + x3) fails at ({}, {}, {})",
                p.x1, p.x2, p.x3
            )));
        }
    }
    let qualifying: Vec<LatticePoint> =
        near.iter().copied().filter(|p| is_sum_two_squares((mi + p.x3) as u64)).collect();
    let rough = (2..=h.min(m)).filter(|&q| crate::arith::is_prime(q as u128)).all(|q| m % q != 0);
    let all_qualify_when_rough = !rough || qualifying.len() == near.len();
    let exhausted = near.is_empty();

    let mut best_x3 = qualifying.iter().map(|p| p.x3).max();
    if best_x3.is_none() && is_sum_two_squares(2 * m) {
        best_x3 = Some(mi);
    }
    let probe_distance = best_x3.map(|x3| (mi - x3) as u64);
    let dist_2m_to_s2 = dist_to_s2(2 * m);
    if let Some(d) = probe_distance {
        if dist_2m_to_s2 > d {
            return Err(Error::Invariant(format!(
                "dist(2m, S2) = {dist_2m_to_s2} exceeds the probe bound m - x3 = {d}"
            )));
        }
    }
    Ok(ProbeReport {
        m,
        h,
        best_x3,
        probe_distance,
        dist_2m_to_s2,
        examined: near.len(),
        qualifying,
        rough,
        all_qualify_when_rough,
        exhausted,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BrunStep {
    pub y: u64,
    pub g: u64,
    /// Interval length ⌈G / 8⌉.
    pub length: u64,
    /// Smoothness cutoff G^δ.
    pub cutoff: f64,
    /// Longest run in [Y, 2Y) with no integer free of primes ≤ cutoff.
    pub longest_run: u64,
    pub holds: bool,
}

/// Checks that every subinterval of [Y, 2Y) of length ⌈G(Y)/8⌉ holds an
/// integer with no prime factor ≤ G(Y)^δ.
pub fn brun_step_check(y: u64, delta: f64) -> Result<BrunStep> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!("delta must be positive; got {delta}")));
    }
    let (g, _) = max_gap(y)?;
    let length = g.div_ceil(8).max(1);
    let cutoff = (g as f64).powf(delta);
    let small: Vec<u64> = (2..=cutoff.floor() as u64).filter(|&q| crate::arith::is_prime(q as u128)).collect();
    let mut run = 0u64;
    let mut longest_run = 0u64;
    for v in y..2 * y {
        if small.iter().any(|&q| v % q == 0) {
            run += 1;
            longest_run = longest_run.max(run);
        } else {
            run = 0;
        }
    }
    Ok(BrunStep { y, g, length, cutoff, longest_run, holds: longest_run < length })
}
