//! Zero level set of a sampled field by marching squares.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Edge of the sampling grid, identified by its lower-left node and
/// direction. Two cells sharing an edge produce the same key, which is how
/// segments are chained without comparing floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum EdgeKey {
    /// Between `(i, j)` and `(i + 1, j)`.
    H(usize, usize),
    /// Between `(i, j)` and `(i, j + 1)`.
    V(usize, usize),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Contours {
    /// Polylines of `(x, y)` points; closed loops repeat their first point.
    pub polylines: Vec<Vec<(f64, f64)>>,
    /// Cells with a non-finite corner value.
    pub skipped_cells: usize,
}

/// Extracts `{f = 0}` from `values[j * xs.len() + i] = f(xs[i], ys[j])`
/// with linear interpolation along cell edges. Saddle cells are resolved by
/// the sign of the cell mean.
pub fn zero_contours(xs: &[f64], ys: &[f64], values: &[f64]) -> Contours {
    let nx = xs.len();
    let ny = ys.len();
    assert_eq!(values.len(), nx * ny, "value grid does not match axes");
    let at = |i: usize, j: usize| values[j * nx + i];
    let point = |e: EdgeKey| -> (f64, f64) {
        let (a, b, pa, pb) = match e {
            EdgeKey::H(i, j) => (at(i, j), at(i + 1, j), (xs[i], ys[j]), (xs[i + 1], ys[j])),
            EdgeKey::V(i, j) => (at(i, j), at(i, j + 1), (xs[i], ys[j]), (xs[i], ys[j + 1])),
        };
        let t = if a == b { 0.5 } else { (a / (a - b)).clamp(0.0, 1.0) };
        (pa.0 + t * (pb.0 - pa.0), pa.1 + t * (pb.1 - pa.1))
    };

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    let mut skipped = 0;
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let v = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            if v.iter().any(|x| !x.is_finite()) {
                skipped += 1;
                continue;
            }
            // corners counter-clockwise from bottom-left; edges follow
            let edges = [EdgeKey::H(i, j), EdgeKey::V(i + 1, j), EdgeKey::H(i, j + 1), EdgeKey::V(i, j)];
            let pos = v.map(|x| x >= 0.0);
            let crossing: Vec<usize> = (0..4).filter(|&k| pos[k] != pos[(k + 1) % 4]).collect();
            match crossing.len() {
                2 => segments.push((edges[crossing[0]], edges[crossing[1]])),
                4 => {
                    let center_pos = (v[0] + v[1] + v[2] + v[3]) >= 0.0;
                    // join each edge to the neighbour that keeps the centre's
                    // sign region connected
                    if center_pos == pos[0] {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let chains = chain(&segments);
    let polylines = chains
        .into_iter()
        .map(|keys| {
            let mut pts: Vec<(f64, f64)> = Vec::with_capacity(keys.len());
            for k in keys {
                let p = point(k);
                if pts.last() != Some(&p) {
                    pts.push(p);
                }
            }
            pts
        })
        .filter(|p| p.len() >= 2)
        .collect();
    Contours {
        polylines,
        skipped_cells: skipped,
    }
}

fn chain(segments: &[(EdgeKey, EdgeKey)]) -> Vec<Vec<EdgeKey>> {
    let mut adjacency: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(s);
        adjacency.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start_seg: usize, from: EdgeKey, used: &mut Vec<bool>| -> Vec<EdgeKey> {
        let mut keys = vec![from];
        let mut seg = start_seg;
        let mut at = from;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            keys.push(next);
            at = next;
            match adjacency[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        keys
    };

    // open chains start at keys used by a single segment
    for (&key, segs) in &adjacency {
        if segs.len() == 1 && !used[segs[0]] {
            out.push(walk(segs[0], key, &mut used));
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            out.push(walk(s, segments[s].0, &mut used));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, f: impl Fn(f64, f64) -> f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let xs: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * (i as f64 + 0.5) / n as f64).collect();
        let ys = xs.clone();
        let mut v = Vec::with_capacity(n * n);
        for &y in &ys {
            for &x in &xs {
                v.push(f(x, y));
            }
        }
        (xs, ys, v)
    }

    #[test]
    fn circle_is_one_closed_loop() {
        let (xs, ys, v) = grid(64, |x, y| x * x + y * y - 0.25);
        let c = zero_contours(&xs, &ys, &v);
        assert_eq!(c.polylines.len(), 1);
        let p = &c.polylines[0];
        assert_eq!(p.first(), p.last());
        for &(x, y) in p {
            assert!(((x * x + y * y).sqrt() - 0.5).abs() < 2e-3);
        }
    }

    #[test]
    fn line_is_one_open_polyline() {
        let (xs, ys, v) = grid(32, |x, y| y - 0.3 * x - 0.1);
        let c = zero_contours(&xs, &ys, &v);
        assert_eq!(c.polylines.len(), 1);
        for &(x, y) in &c.polylines[0] {
            assert!((y - 0.3 * x - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn crossing_lines_at_saddle() {
        let (xs, ys, v) = grid(33, |x, y| x * y);
        let c = zero_contours(&xs, &ys, &v);
        let total: usize = c.polylines.iter().map(|p| p.len()).sum();
        assert!(c.polylines.len() >= 2 && total > 60);
    }

    #[test]
    fn non_finite_cells_are_skipped() {
        let (xs, ys, mut v) = grid(16, |x, _| x - 0.01);
        v[5 * 16 + 8] = f64::NAN;
        let c = zero_contours(&xs, &ys, &v);
        assert_eq!(c.skipped_cells, 4);
        assert_eq!(c.polylines.len(), 2);
    }
}
