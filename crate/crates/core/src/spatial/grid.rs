use super::{dist2, Vec3};

/// Uniform cubic grid over [-1, 1]³ for nearest-point queries.
#[derive(Debug, Clone)]
pub struct PointGrid {
    points: Vec<Vec3>,
    side: usize,
    cell: f64,
    starts: Vec<u32>,
    members: Vec<u32>,
}

impl PointGrid {
    /// Cells are sized for about two points per occupied cell.
    pub fn new(points: &[Vec3]) -> Self {
        let n = points.len().max(1) as f64;
        let cell = (8.0 * std::f64::consts::PI / n).sqrt().min(2.0);
        let side = (2.0 / cell).ceil() as usize;
        let mut grid = PointGrid { points: points.to_vec(), side, cell, starts: vec![], members: vec![] };
        let keys: Vec<usize> = points.iter().map(|p| grid.key(grid.coords(p))).collect();
        let mut counts = vec![0u32; side * side * side + 1];
        for &k in &keys {
            counts[k + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut members = vec![0u32; points.len()];
        for (i, &k) in keys.iter().enumerate() {
            members[fill[k] as usize] = i as u32;
            fill[k] += 1;
        }
        grid.starts = counts;
        grid.members = members;
        grid
    }

    fn coords(&self, p: &Vec3) -> [usize; 3] {
        p.map(|c| (((c + 1.0) / self.cell).floor().max(0.0) as usize).min(self.side - 1))
    }

    fn key(&self, c: [usize; 3]) -> usize {
        (c[0] * self.side + c[1]) * self.side + c[2]
    }

    fn cell_members(&self, c: [usize; 3]) -> &[u32] {
        let k = self.key(c);
        &self.members[self.starts[k] as usize..self.starts[k + 1] as usize]
    }

    /// Index and squared distance of the point nearest to `q`.
    pub fn nearest(&self, q: &Vec3) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let c = self.coords(q);
        let mut best: Option<(usize, f64)> = None;
        for ring in 0..=self.side {
            let r = ring as isize;
            for dx in -r..=r {
                for dy in -r..=r {
                    for dz in -r..=r {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != r {
                            continue;
                        }
                        let cc = [c[0] as isize + dx, c[1] as isize + dy, c[2] as isize + dz];
                        if cc.iter().any(|&v| v < 0 || v >= self.side as isize) {
                            continue;
                        }
                        let cc = cc.map(|v| v as usize);
                        for &i in self.cell_members(cc) {
                            let d2 = dist2(q, &self.points[i as usize]);
                            if best.is_none_or(|(_, b)| d2 < b) {
                                best = Some((i as usize, d2));
                            }
                        }
                    }
                }
            }
            // Everything outside the searched block is at least ring * cell away.
            if let Some((_, b)) = best {
                let reach = ring as f64 * self.cell;
                if b <= reach * reach {
                    break;
                }
            }
        }
        best
    }
}
