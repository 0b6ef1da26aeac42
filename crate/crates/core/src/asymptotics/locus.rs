//! Zero set of `Re φ(z_k; a(x))` over the saddles `z_k`, traced on a square grid of
//! `x` values by marching squares.
//!
//! The product over all `2N` saddles is `(−1)^N Π_j (Re φ(z_j))²` because the
//! saddles come in `±` pairs with opposite `Re φ`, so it never changes sign.
//! Each pair is traced on its own instead: inside a cell, the saddles and the
//! square root are continued from the first corner, which makes every per-pair
//! field continuous there, and the union of the per-pair zero sets is the locus.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rug::Complex;

use super::{branch_a, corner_radius, from_c64, p_in_zeta, phi_with_root, principal_root, star_corners, to_c64};
use crate::error::{Error, Result};
use crate::roots::aberth;

#[derive(Clone, Debug, PartialEq)]
pub struct LocusOptions {
    /// Half-width `L` of the square `[−L, L]²`; defaults to `1.3 |x_0^{[N]}|`.
    pub half_width: Option<f64>,
    /// Sample points per side.
    pub resolution: usize,
    pub precision: u32,
    /// Evaluate with `−(z²+a²)^{1/2}` in place of the principal root.
    pub flip_root: bool,
    pub threads: Option<usize>,
}

impl Default for LocusOptions {
    fn default() -> Self {
        LocusOptions {
            half_width: None,
            resolution: 400,
            precision: super::DEFAULT_PRECISION,
            flip_root: false,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusArcs {
    pub n_cap: usize,
    pub half_width: f64,
    pub resolution: usize,
    pub arcs: Vec<Vec<Complex64>>,
    pub masked_cells: usize,
}

/// Saddle representatives `z_j` (one per `±` pair), their roots `s_j` and `Re φ`.
struct Vertex {
    z: Vec<Complex64>,
    s: Vec<Complex64>,
    phi: Vec<f64>,
}

fn evaluate(x: Complex64, n_cap: usize, prec: u32, flip: bool) -> Result<Vertex> {
    let a = branch_a(&from_c64(prec, x), n_cap)?;
    let (zetas, _) = aberth(&p_in_zeta(&a, n_cap)?, prec)?;
    let mut v = Vertex {
        z: Vec::with_capacity(n_cap),
        s: Vec::with_capacity(n_cap),
        phi: Vec::with_capacity(n_cap),
    };
    for zeta in zetas {
        let z: Complex = zeta.sqrt();
        let mut s = principal_root(&z, &a);
        if flip {
            s = -s;
        }
        v.phi.push(phi_with_root(&z, &a, &s, n_cap)?.real().to_f64());
        v.z.push(to_c64(&z));
        v.s.push(to_c64(&s));
    }
    Ok(v)
}

/// `Re φ` of the saddle continued from `(z0, s0)` to vertex `v`. Uses
/// `Re φ(−z; s) = Re φ(z; −s) = −Re φ(z; s)`.
fn continued_value(v: &Vertex, z0: Complex64, s0: Complex64) -> f64 {
    let mut best = (f64::INFINITY, 0, 1.0);
    for m in 0..v.z.len() {
        for sigma in [1.0, -1.0] {
            let d = (v.z[m] * sigma - z0).norm();
            if d < best.0 {
                best = (d, m, sigma);
            }
        }
    }
    let (_, m, sigma) = best;
    let mut val = sigma * v.phi[m];
    if (v.s[m] - s0).norm() > (v.s[m] + s0).norm() {
        val = -val;
    }
    val
}

/// Liang–Barsky test of the segment `[0, p]` against an axis-aligned box.
fn segment_hits_box(p: Complex64, lo: Complex64, hi: Complex64) -> bool {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (d, l, h) in [(p.re, lo.re, hi.re), (p.im, lo.im, hi.im)] {
        if d == 0.0 {
            if 0.0 < l || 0.0 > h {
                return false;
            }
            continue;
        }
        let (mut a, mut b) = (l / d, h / d);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        t0 = t0.max(a);
        t1 = t1.min(b);
        if t0 > t1 {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct EndKey {
    vertical: bool,
    i: usize,
    j: usize,
    t: i64,
}

struct Grid {
    res: usize,
    lo: f64,
    step: f64,
}

impl Grid {
    fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.lo + self.step * i as f64, self.lo + self.step * j as f64)
    }
}

/// Crossing on the edge from vertex `(i, j)` along `+x` (or `+y` when vertical).
fn crossing(g: &Grid, vertical: bool, i: usize, j: usize, fa: f64, fb: f64) -> (EndKey, Complex64) {
    let t = fa / (fa - fb);
    let a = g.point(i, j);
    let b = if vertical { g.point(i, j + 1) } else { g.point(i + 1, j) };
    let key = EndKey {
        vertical,
        i,
        j,
        t: (t * 4_294_967_296.0).round() as i64,
    };
    (key, a + (b - a) * t)
}

type Segment = ((EndKey, Complex64), (EndKey, Complex64));

/// Marching squares in one cell; `f` holds the corner values counterclockwise
/// from the lower-left corner `(i, j)`.
fn cell_segments(g: &Grid, i: usize, j: usize, f: [f64; 4], out: &mut Vec<Segment>) {
    // edges: bottom, right, top, left, each in the grid's canonical direction
    let edges = [
        (false, i, j, f[0], f[1]),
        (true, i + 1, j, f[1], f[2]),
        (false, i, j + 1, f[3], f[2]),
        (true, i, j, f[0], f[3]),
    ];
    let mut hits = Vec::with_capacity(4);
    for (e, &(vertical, ei, ej, fa, fb)) in edges.iter().enumerate() {
        if (fa >= 0.0) != (fb >= 0.0) {
            hits.push((e, crossing(g, vertical, ei, ej, fa, fb)));
        }
    }
    match hits.len() {
        2 => out.push((hits[0].1, hits[1].1)),
        4 => {
            // ambiguous cell: join around the corners whose sign differs from the centre
            let centre = 0.25 * f.iter().sum::<f64>();
            if (centre >= 0.0) == (f[0] >= 0.0) {
                out.push((hits[0].1, hits[1].1));
                out.push((hits[2].1, hits[3].1));
            } else {
                out.push((hits[3].1, hits[0].1));
                out.push((hits[1].1, hits[2].1));
            }
        }
        _ => {}
    }
}

fn chain(segments: Vec<Segment>) -> Vec<Vec<Complex64>> {
    let mut at: HashMap<EndKey, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        at.entry(a.0).or_default().push(k);
        at.entry(b.0).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut arcs = Vec::new();
    let next = |key: &EndKey, used: &[bool]| at.get(key).and_then(|v| v.iter().copied().find(|&k| !used[k]));
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut forward = vec![a, b];
        while let Some(k) = next(&forward.last().expect("nonempty").0, &used) {
            used[k] = true;
            let (p, q) = segments[k];
            forward.push(if p.0 == forward.last().expect("nonempty").0 { q } else { p });
        }
        let mut backward = Vec::new();
        let mut tail = a.0;
        while let Some(k) = next(&tail, &used) {
            used[k] = true;
            let (p, q) = segments[k];
            let other = if p.0 == tail { q } else { p };
            backward.push(other);
            tail = other.0;
        }
        backward.reverse();
        backward.extend(forward);
        arcs.push(backward.into_iter().map(|e| e.1).collect());
    }
    arcs
}

/// [`locus_trace_with`] using the default options at the given half-width and resolution.
pub fn locus_trace(n_cap: usize, half_width: Option<f64>, resolution: usize, precision: u32) -> Result<LocusArcs> {
    locus_trace_with(
        n_cap,
        &LocusOptions {
            half_width,
            resolution,
            precision,
            ..LocusOptions::default()
        },
    )
}

pub fn locus_trace_with(n_cap: usize, opts: &LocusOptions) -> Result<LocusArcs> {
    if n_cap == 0 || opts.resolution < 2 {
        return Err(Error::InvalidArgument("locus needs N >= 1 and at least two samples per side".into()));
    }
    let half_width = opts.half_width.unwrap_or(1.3 * corner_radius(n_cap));
    if half_width.is_nan() || half_width <= 0.0 {
        return Err(Error::InvalidArgument("half-width must be positive".into()));
    }
    let res = opts.resolution;
    let g = Grid {
        res,
        lo: -half_width,
        step: 2.0 * half_width / (res - 1) as f64,
    };
    let prec = opts.precision.max(super::MIN_PRECISION);
    let threads = opts
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, res);

    let mut vertices: Vec<Option<Vertex>> = Vec::with_capacity(res * res);
    let rows_per = res.div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let g = &g;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for j in (t * rows_per)..((t + 1) * rows_per).min(g.res) {
                        for i in 0..g.res {
                            out.push(evaluate(g.point(i, j), n_cap, prec, opts.flip_root).ok());
                        }
                    }
                    out
                })
            })
            .collect();
        for h in handles {
            vertices.extend(h.join().expect("grid worker panicked"));
        }
    });

    let cuts: Vec<Complex64> = star_corners(n_cap, 64)?.iter().map(to_c64).collect();
    let mut segments = Vec::new();
    let mut masked = 0;
    for j in 0..res - 1 {
        for i in 0..res - 1 {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let vs: Vec<&Vertex> = corners.iter().filter_map(|&(ci, cj)| vertices[cj * res + ci].as_ref()).collect();
            let (lo, hi) = (g.point(i, j), g.point(i + 1, j + 1));
            if vs.len() < 4 || cuts.iter().any(|&c| segment_hits_box(c, lo, hi)) {
                masked += 1;
                continue;
            }
            for k in 0..n_cap {
                let (z0, s0) = (vs[0].z[k], vs[0].s[k]);
                let f = [vs[0].phi[k], continued_value(vs[1], z0, s0), continued_value(vs[2], z0, s0), continued_value(vs[3], z0, s0)];
                cell_segments(&g, i, j, f, &mut segments);
            }
        }
    }
    Ok(LocusArcs {
        n_cap,
        half_width,
        resolution: res,
        arcs: chain(segments),
        masked_cells: masked,
    })
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { ((p - a).re * d.re + (p - a).im * d.im) / len2 };
    (p - (a + d * t.clamp(0.0, 1.0))).norm()
}

/// Uniform buckets over the traced square for nearest-segment queries.
struct SegmentIndex {
    segments: Vec<(Complex64, Complex64)>,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    size: f64,
    span: i64,
}

impl SegmentIndex {
    fn new(arcs: &LocusArcs) -> Self {
        let size = 4.0 * arcs.cell_diagonal();
        let segments: Vec<(Complex64, Complex64)> = arcs
            .arcs
            .iter()
            .flat_map(|a| a.windows(2).map(|w| (w[0], w[1])).chain((a.len() == 1).then(|| (a[0], a[0]))))
            .collect();
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let cell = |v: f64| (v / size).floor() as i64;
        for (k, (a, b)) in segments.iter().enumerate() {
            for bx in cell(a.re.min(b.re))..=cell(a.re.max(b.re)) {
                for by in cell(a.im.min(b.im))..=cell(a.im.max(b.im)) {
                    buckets.entry((bx, by)).or_default().push(k);
                }
            }
        }
        let span = (2.0 * arcs.half_width / size).ceil() as i64 + 2;
        SegmentIndex {
            segments,
            buckets,
            size,
            span,
        }
    }

    fn distance(&self, p: Complex64) -> f64 {
        let (cx, cy) = ((p.re / self.size).floor() as i64, (p.im / self.size).floor() as i64);
        let mut best = f64::INFINITY;
        for ring in 0..=self.span {
            for bx in cx - ring..=cx + ring {
                for by in cy - ring..=cy + ring {
                    if (bx - cx).abs() != ring && (by - cy).abs() != ring {
                        continue;
                    }
                    if let Some(ks) = self.buckets.get(&(bx, by)) {
                        for &k in ks {
                            let (a, b) = self.segments[k];
                            best = best.min(point_segment_distance(p, a, b));
                        }
                    }
                }
            }
            if best <= ring as f64 * self.size {
                break;
            }
        }
        best
    }
}

impl LocusArcs {
    pub fn cell_diagonal(&self) -> f64 {
        2.0 * self.half_width / (self.resolution - 1) as f64 * std::f64::consts::SQRT_2
    }

    pub fn vertex_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    /// Distance from `p` to the nearest traced segment.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        SegmentIndex::new(self).distance(p)
    }

    /// Distances from each point to the nearest traced segment.
    pub fn distances_to(&self, points: &[Complex64]) -> Vec<f64> {
        let index = SegmentIndex::new(self);
        points.iter().map(|&p| index.distance(p)).collect()
    }

    /// Columns `arc_id,re_x,im_x` after a `#` metadata line.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# N={},half_width={},resolution={},masked_cells={}\narc_id,re_x,im_x\n",
            self.n_cap, self.half_width, self.resolution, self.masked_cells
        );
        for (id, arc) in self.arcs.iter().enumerate() {
            for p in arc {
                let _ = writeln!(out, "{id},{},{}", p.re, p.im);
            }
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut arcs = LocusArcs {
            n_cap: 0,
            half_width: 0.0,
            resolution: 2,
            arcs: Vec::new(),
            masked_cells: 0,
        };
        let bad = |what: &str| Error::Parse(format!("locus csv: bad {what}"));
        let mut last_id = None;
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(meta) = line.strip_prefix('#') {
                for field in meta.trim().split(',') {
                    let Some((k, v)) = field.split_once('=') else { continue };
                    match k {
                        "N" => arcs.n_cap = v.parse().map_err(|_| bad("N"))?,
                        "half_width" => arcs.half_width = v.parse().map_err(|_| bad("half_width"))?,
                        "resolution" => arcs.resolution = v.parse().map_err(|_| bad("resolution"))?,
                        "masked_cells" => arcs.masked_cells = v.parse().map_err(|_| bad("masked_cells"))?,
                        _ => {}
                    }
                }
                continue;
            }
            if line.starts_with("arc_id") {
                continue;
            }
            let mut parts = line.split(',');
            let mut field = |what: &str| parts.next().ok_or_else(|| bad(what));
            let id: usize = field("arc_id")?.parse().map_err(|_| bad("arc_id"))?;
            let re: f64 = field("re_x")?.parse().map_err(|_| bad("re_x"))?;
            let im: f64 = field("im_x")?.parse().map_err(|_| bad("im_x"))?;
            if last_id != Some(id) {
                arcs.arcs.push(Vec::new());
                last_id = Some(id);
            }
            arcs.arcs.last_mut().expect("just pushed").push(Complex64::new(re, im));
        }
        if arcs.half_width <= 0.0 {
            arcs.half_width = arcs
                .arcs
                .iter()
                .flatten()
                .map(|p| p.re.abs().max(p.im.abs()))
                .fold(1.0, f64::max);
        }
        Ok(arcs)
    }

    pub fn to_svg(&self) -> String {
        render_svg(Some(self), &[], self.half_width)
    }
}

/// Largest distance between a traced point within `radius` of the origin and the
/// traced set, after rotating the point by `±2π/(2N+1)`.
pub fn rotation_hausdorff(arcs: &LocusArcs, radius: f64) -> f64 {
    let index = SegmentIndex::new(arcs);
    let m = (2 * arcs.n_cap + 1) as f64;
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / m);
    let mut worst = 0.0f64;
    for p in arcs.arcs.iter().flatten().filter(|p| p.norm() <= radius) {
        worst = worst.max(index.distance(p * omega)).max(index.distance(p / omega));
    }
    worst
}

/// Static SVG with axes, locus polylines and root dots over `[−L, L]²`.
pub fn render_svg(arcs: Option<&LocusArcs>, roots: &[Complex64], half_width: f64) -> String {
    let size = 800.0;
    let map = |p: Complex64| ((p.re + half_width) / (2.0 * half_width) * size, (half_width - p.im) / (2.0 * half_width) * size);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"0\" y1=\"{h}\" x2=\"{size}\" y2=\"{h}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n\
         <line x1=\"{h}\" y1=\"0\" x2=\"{h}\" y2=\"{size}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n",
        h = size / 2.0
    );
    if let Some(arcs) = arcs {
        for arc in &arcs.arcs {
            let pts: Vec<String> = arc
                .iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1\"/>",
                pts.join(" ")
            );
        }
    }
    for &r in roots {
        let (x, y) = map(r);
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"2\" fill=\"#c0392b\"/>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_intersection() {
        let p = Complex64::new(2.0, 0.0);
        assert!(segment_hits_box(p, Complex64::new(1.0, -0.1), Complex64::new(1.2, 0.1)));
        assert!(!segment_hits_box(p, Complex64::new(2.1, -0.1), Complex64::new(2.2, 0.1)));
        assert!(!segment_hits_box(p, Complex64::new(1.0, 0.1), Complex64::new(1.2, 0.2)));
    }

    #[test]
    fn marching_squares_single_crossing() {
        let g = Grid { res: 3, lo: 0.0, step: 1.0 };
        let mut out = Vec::new();
        cell_segments(&g, 0, 0, [-1.0, 1.0, 1.0, -1.0], &mut out);
        assert_eq!(out.len(), 1);
        let ((_, a), (_, b)) = out[0];
        assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((b - Complex64::new(0.5, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn chaining_joins_neighbours() {
        let g = Grid { res: 4, lo: 0.0, step: 1.0 };
        let mut segs = Vec::new();
        cell_segments(&g, 0, 0, [-1.0, 1.0, 1.0, -1.0], &mut segs);
        cell_segments(&g, 0, 1, [-1.0, 1.0, 1.0, -1.0], &mut segs);
        let arcs = chain(segs);
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].len(), 3);
    }
}
