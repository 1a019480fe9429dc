use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use super::{LatticePoint, LatticeSet, PairCountTable};
use crate::error::{Error, Result};

/// Plain-text point list: a `# n=<n> N=<N>` header, then `x1 x2 x3` lines.
pub fn write_lattice_set<W: Write>(set: &LatticeSet, mut w: W) -> Result<()> {
    writeln!(w, "# n={} N={}", set.n, set.len())?;
    for p in &set.points {
        writeln!(w, "{} {} {}", p.x1, p.x2, p.x3)?;
    }
    Ok(())
}

fn parse_header(line: &str) -> Option<(u64, usize)> {
    let body = line.strip_prefix('#')?.trim();
    let mut n = None;
    let mut count = None;
    for tok in body.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("N=") {
            count = v.parse().ok();
        }
    }
    Some((n?, count?))
}

/// Inverse of [`write_lattice_set`]. Verifies every point lies on the sphere
/// and that the count matches the header.
pub fn parse_lattice_set<R: BufRead>(r: R) -> Result<LatticeSet> {
    let mut header = None;
    let mut points = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if header.is_none() {
                header = parse_header(line);
            }
            continue;
        }
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::domain(format!("line {}: {e}", lineno + 1)))?;
        let [x1, x2, x3] = nums[..] else {
            return Err(Error::domain(format!("line {}: expected 3 integers", lineno + 1)));
        };
        points.push(LatticePoint::new(x1, x2, x3));
    }
    let (n, count) = header.ok_or_else(|| Error::domain("missing '# n=.. N=..' header"))?;
    if count != points.len() {
        return Err(Error::Invariant(format!(
            "header declares N={count} but {} points were read",
            points.len()
        )));
    }
    if let Some(p) = points.iter().find(|p| p.norm_sq() != n as i64) {
        return Err(Error::Invariant(format!(
            "point ({}, {}, {}) is not on the sphere of norm {n}",
            p.x1, p.x2, p.x3
        )));
    }
    points.sort_unstable();
    let primitive = points.iter().map(LatticePoint::is_primitive).collect();
    Ok(LatticeSet { n, points, primitive })
}

/// CSV with header `t,count`, one row per realized inner product.
pub fn write_pair_table_csv<W: Write>(table: &PairCountTable, mut w: W) -> Result<()> {
    writeln!(w, "t,count")?;
    for (t, c) in &table.entries {
        writeln!(w, "{t},{c}")?;
    }
    Ok(())
}

/// Inverse of [`write_pair_table_csv`]; `#` comment lines are skipped.
pub fn parse_pair_table_csv<R: BufRead>(n: u64, r: R) -> Result<PairCountTable> {
    let mut entries = BTreeMap::new();
    let mut seen_header = false;
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            if line != "t,count" {
                return Err(Error::domain(format!("expected 't,count' header, found '{line}'")));
            }
            seen_header = true;
            continue;
        }
        let (t, c) = line
            .split_once(',')
            .ok_or_else(|| Error::domain(format!("malformed row '{line}'")))?;
        let t: i64 = t.parse().map_err(|_| Error::domain(format!("bad t in '{line}'")))?;
        let c: u64 = c.parse().map_err(|_| Error::domain(format!("bad count in '{line}'")))?;
        entries.insert(t, c);
    }
    Ok(PairCountTable { n, entries })
}
