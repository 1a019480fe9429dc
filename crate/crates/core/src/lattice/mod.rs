//! Integer points on the sphere x₁² + x₂² + x₃² = n and their exact pair
//! statistics.

mod io;

pub use io::{parse_lattice_set, parse_pair_table_csv, write_lattice_set, write_pair_table_csv};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

/// A point of E(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub x1: i64,
    pub x2: i64,
    pub x3: i64,
}

impl LatticePoint {
    pub const fn new(x1: i64, x2: i64, x3: i64) -> Self {
        LatticePoint { x1, x2, x3 }
    }

    pub fn norm_sq(&self) -> i64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn dot(&self, other: &LatticePoint) -> i64 {
        self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn is_primitive(&self) -> bool {
        let g = crate::arith::gcd(self.x1.unsigned_abs() as u128, self.x2.unsigned_abs() as u128);
        crate::arith::gcd(g, self.x3.unsigned_abs() as u128) == 1
    }

    pub fn coords(&self) -> [i64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn to_unit(&self, n: u64) -> [f64; 3] {
        let r = (n as f64).sqrt();
        [self.x1 as f64 / r, self.x2 as f64 / r, self.x3 as f64 / r]
    }
}

/// The full solution set E(n) in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSet {
    pub n: u64,
    pub points: Vec<LatticePoint>,
    /// `primitive[i]` is true when gcd of the coordinates of `points[i]` is 1.
    pub primitive: Vec<bool>,
}

impl LatticeSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// True iff n is not of the form 4^a (8b + 7).
pub fn is_three_square_representable(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut m = n;
    while m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

/// All signed permutations of (a, b, c), deduplicated.
fn orbit(a: i64, b: i64, c: i64, out: &mut Vec<LatticePoint>) {
    let start = out.len();
    let perms = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    for p in perms {
        for signs in 0..8u8 {
            let s = |i: usize| if signs >> i & 1 == 1 { -p[i] } else { p[i] };
            out.push(LatticePoint::new(s(0), s(1), s(2)));
        }
    }
    let tail = &mut out[start..];
    tail.sort_unstable();
    let mut w = start;
    for r in start..out.len() {
        if r == start || out[r] != out[w - 1] {
            out[w] = out[r];
            w += 1;
        }
    }
    out.truncate(w);
}

/// Enumerate E(n).
///
/// Loops over representatives 0 ≤ x₁ ≤ x₂ ≤ x₃, with an integer square-root
/// test for x₃, then expands each by the signed permutation group.
pub fn enumerate(n: u64) -> LatticeSet {
    let r = n.isqrt();
    let mut points: Vec<LatticePoint> = (0..=r)
        .into_par_iter()
        .flat_map_iter(|x1| {
            let mut local = Vec::new();
            let rest1 = n - x1 * x1;
            let mut x2 = x1;
            while x2 * x2 * 2 <= rest1 {
                let rest2 = rest1 - x2 * x2;
                let x3 = rest2.isqrt();
                if x3 * x3 == rest2 && x3 >= x2 {
                    orbit(x1 as i64, x2 as i64, x3 as i64, &mut local);
                }
                x2 += 1;
            }
            local
        })
        .collect();
    points.sort_unstable();
    points.dedup();
    let primitive = points.iter().map(LatticePoint::is_primitive).collect();
    LatticeSet { n, points, primitive }
}

/// Number of ordered pairs (x, y) in E(n)² with x·y = t.
pub fn a_brute(n: u64, t: i64) -> u64 {
    let set = enumerate(n);
    a_brute_in(&set, t)
}

pub(crate) fn a_brute_in(set: &LatticeSet, t: i64) -> u64 {
    set.points
        .par_iter()
        .map(|x| set.points.iter().filter(|y| x.dot(y) == t).count() as u64)
        .sum()
}

/// The histogram t ↦ A(n, t) over all realized inner products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCountTable {
    pub n: u64,
    pub entries: BTreeMap<i64, u64>,
}

impl PairCountTable {
    pub fn get(&self, t: i64) -> u64 {
        self.entries.get(&t).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ A(n,t) over n - b/2 < t < n - a/2, i.e. over pairs with
    /// a < |x - y|² < b, using |x - y|² = 2(n - t).
    pub fn shell_sum(&self, a: f64, b: f64) -> u64 {
        self.entries
            .iter()
            .filter(|&(&t, _)| {
                let d = (2 * (self.n as i64 - t)) as f64;
                a < d && d < b
            })
            .map(|(_, &c)| c)
            .sum()
    }
}

const PAIR_CHUNK: usize = 256;

/// Full inner-product histogram of E(n).
///
/// Uses a dense array of length 2n + 1 per chunk of outer points, merged in
/// chunk order, so the result does not depend on the worker count.
pub fn pair_table(n: u64) -> PairCountTable {
    pair_table_of(&enumerate(n))
}

pub fn pair_table_of(set: &LatticeSet) -> PairCountTable {
    let n = set.n;
    if set.is_empty() {
        return PairCountTable { n, entries: BTreeMap::new() };
    }
    let width = 2 * n as usize + 1;
    let offset = n as i64;
    let dense = set
        .points
        .par_chunks(PAIR_CHUNK)
        .map(|chunk| {
            let mut hist = vec![0u64; width];
            for x in chunk {
                for y in &set.points {
                    hist[(x.dot(y) + offset) as usize] += 1;
                }
            }
            hist
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(u, v)| *u += v);
                a
            },
        );
    let entries = dense
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (i as i64 - offset, c))
        .collect();
    PairCountTable { n, entries }
}

/// #{(x, y) ∈ E(n)²: a < |x - y|² < b} by direct double loop.
pub fn m_count(n: u64, a: f64, b: f64) -> u64 {
    m_count_in(&enumerate(n), a, b)
}

pub fn m_count_in(set: &LatticeSet, a: f64, b: f64) -> u64 {
    let n = set.n as i64;
    set.points
        .par_iter()
        .map(|x| {
            set.points
                .iter()
                .filter(|y| {
                    let d = (2 * (n - x.dot(y))) as f64;
                    a < d && d < b
                })
                .count() as u64
        })
        .sum()
}

/// Is `r` a sum of two squares (every prime ≡ 3 mod 4 to an even power)?
pub(crate) fn two_square_representable(r: u128) -> bool {
    if r == 0 {
        return true;
    }
    match crate::arith::factorize(r) {
        Ok(f) => f.factors.iter().all(|&(p, k)| p % 4 != 3 || k % 2 == 0),
        Err(_) => false,
    }
}

/// Points x ∈ E(m²) with m - x₃ ≤ H, found without enumerating E(m²).
///
/// Scans x₃ = m, m-1, ..., m-H, skips x₃ for which m² - x₃² is not a sum of
/// two squares, and lists the representations of the others.
pub fn points_near_pole(m: u64, h: u64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let m = m as i64;
    let lowest = (m - h as i64).max(-m);
    for x3 in (lowest..=m).rev() {
        let rest = (m * m - x3 * x3) as u128;
        if !two_square_representable(rest) {
            continue;
        }
        let rest = rest as i64;
        let mut x1 = 0i64;
        while 2 * x1 * x1 <= rest {
            let r2 = rest - x1 * x1;
            let x2 = (r2 as u64).isqrt() as i64;
            if x2 * x2 == r2 {
                for (a, b) in [(x1, x2), (x2, x1)] {
                    for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        out.push(LatticePoint::new(sa * a, sb * b, x3));
                    }
                }
            }
            x1 += 1;
        }
    }
    out.sort_unstable_by(|p, q| q.x3.cmp(&p.x3).then(p.cmp(q)));
    out.dedup();
    out
}
