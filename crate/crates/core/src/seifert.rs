//! Seifert circles, the surface from Seifert's algorithm, and its Seifert
//! matrix.
//!
//! The surface is modelled as flat disks (one per Seifert circle) joined by
//! half-twisted bands at the crossings. A band whose disk lies on the same side
//! as the crossing's gap folds back over that disk. Homology generators are
//! the fundamental cycles of the Seifert graph. Each generator runs along a
//! thin collar just inside every circle it visits, in the direction of the
//! circle, and crosses bands along their core. All projection crossings
//! between a generator and the pushoff of another then sit either inside a
//! shared band (one crossing from the half twist) or in a collar near a foot,
//! so the linking number is a sum of local terms.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::AlgebraError;
use crate::matrix::{det_int, is_square, to_big, transpose, IntMatrix};

/// Seifert matrix `V[i][j] = lk(a_i, a_j^+)` for a basis of `H_1` of a
/// genus-`g` Seifert surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub genus: usize,
    pub rows: IntMatrix,
}

impl SeifertMatrix {
    /// Validate shape and `det(V - V^T) = 1`.
    pub fn new(rows: IntMatrix) -> Result<Self, AlgebraError> {
        if !is_square(&rows) || !rows.len().is_multiple_of(2) {
            return Err(AlgebraError::Shape);
        }
        let m = SeifertMatrix { genus: rows.len() / 2, rows };
        let det = m.intersection_det();
        if !det.is_one() {
            return Err(AlgebraError::NotUnimodular(det.to_string()));
        }
        Ok(m)
    }

    /// Accept a file record, checking the declared genus too.
    pub fn from_record(genus: usize, rows: IntMatrix) -> Result<Self, AlgebraError> {
        let m = Self::new(rows)?;
        if m.genus != genus {
            return Err(AlgebraError::Shape);
        }
        Ok(m)
    }

    pub fn unknot() -> Self {
        SeifertMatrix { genus: 0, rows: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn transposed(&self) -> Self {
        SeifertMatrix { genus: self.genus, rows: transpose(&self.rows) }
    }

    pub fn negated(&self) -> Self {
        SeifertMatrix { genus: self.genus, rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// Seifert matrix of the mirror image.
    pub fn mirror(&self) -> Self {
        self.transposed().negated()
    }

    /// Block sum, the Seifert matrix of a connected sum.
    pub fn block_sum(&self, o: &SeifertMatrix) -> Self {
        let (n, m) = (self.dim(), o.dim());
        let mut rows = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            rows[i][..n].copy_from_slice(&self.rows[i]);
        }
        for i in 0..m {
            rows[n + i][n..].copy_from_slice(&o.rows[i]);
        }
        SeifertMatrix { genus: self.genus + o.genus, rows }
    }

    /// `V + V^T`
    pub fn symmetrized(&self) -> IntMatrix {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.rows[i][j] + self.rows[j][i]).collect()).collect()
    }

    /// `V - V^T`
    pub fn antisymmetrized(&self) -> IntMatrix {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.rows[i][j] - self.rows[j][i]).collect()).collect()
    }

    pub fn intersection_det(&self) -> BigInt {
        det_int(&to_big(&self.antisymmetrized()))
    }

    /// Compute from a diagram via Seifert's algorithm.
    pub fn from_diagram(d: &Diagram) -> Result<Self, AlgebraError> {
        let s = SeifertSurface::new(d);
        let rows = s.seifert_matrix();
        Self::new(rows).map_err(|e| match e {
            AlgebraError::NotUnimodular(det) => AlgebraError::Other(format!(
                "internal error: Seifert form from diagram has det(V - V^T) = {det}; pd = {:?}",
                d.pd()
            )),
            other => other,
        })
    }
}

/// Which side of a crossing's band a circle sits on, looking along the
/// crossing with both smoothed arcs pointing up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct Band {
    pub crossing: usize,
    pub sign: i8,
    pub left: usize,
    pub right: usize,
    /// Whether the band folds back over the disk at that end.
    pub fold_left: bool,
    pub fold_right: bool,
}

impl Band {
    fn circle(&self, e: End) -> usize {
        match e {
            End::Left => self.left,
            End::Right => self.right,
        }
    }
    fn fold(&self, e: End) -> bool {
        match e {
            End::Left => self.fold_left,
            End::Right => self.fold_right,
        }
    }
}

/// The surface produced by Seifert's algorithm.
#[derive(Debug, Clone)]
pub struct SeifertSurface {
    /// Arcs of each circle in order along the orientation.
    pub circles: Vec<Vec<u32>>,
    /// Crossings met along each circle, with the band end used.
    pub feet: Vec<Vec<(usize, End)>>,
    /// Whether each circle runs counterclockwise in the plane.
    pub ccw: Vec<bool>,
    pub bands: Vec<Band>,
}

/// Arc following `l` after smoothing the crossing at its head.
fn smooth_next(d: &Diagram, l: u32) -> u32 {
    let (x, p) = d.head(l);
    let s = d.strands(x);
    if p == 0 {
        s.over_out
    } else {
        s.under_out
    }
}

pub fn seifert_circles(d: &Diagram) -> Vec<Vec<u32>> {
    let mut seen: HashMap<u32, bool> = HashMap::new();
    let mut out = vec![];
    for l in d.labels() {
        if seen.contains_key(&l) {
            continue;
        }
        let mut c = vec![];
        let mut cur = l;
        while seen.insert(cur, true).is_none() {
            c.push(cur);
            cur = smooth_next(d, cur);
        }
        out.push(c);
    }
    out
}

/// Genus of the surface from Seifert's algorithm, `(c - s + 1) / 2`.
pub fn seifert_genus(d: &Diagram) -> usize {
    if d.crossing_count() == 0 {
        return 0;
    }
    (d.crossing_count() + 1 - seifert_circles(d).len()) / 2
}

impl SeifertSurface {
    pub fn new(d: &Diagram) -> Self {
        let circles = seifert_circles(d);
        let n = d.crossing_count();
        let mut circle_of: HashMap<u32, usize> = HashMap::new();
        for (i, c) in circles.iter().enumerate() {
            for &l in c {
                circle_of.insert(l, i);
            }
        }
        // faces: corner -> face id
        let faces = d.faces();
        let mut face_of = vec![[0usize; 4]; n];
        for (f, cs) in faces.iter().enumerate() {
            for &(x, p) in cs {
                face_of[x][p] = f;
            }
        }
        let gap = |x: usize| -> (usize, usize) {
            if d.sign(x) > 0 {
                (face_of[x][3], face_of[x][1])
            } else {
                (face_of[x][0], face_of[x][2])
            }
        };
        let side_faces = |l: u32| -> (usize, usize) {
            let (x, p) = d.tail(l);
            // (left, right) looking along the arc
            (face_of[x][p], face_of[x][(p + 3) % 4])
        };
        // For each circle, the set of faces on the side away from face 0.
        let outer = 0usize;
        let mut inside: Vec<Vec<bool>> = vec![];
        for c in &circles {
            let mut adj: Vec<Vec<usize>> = vec![vec![]; faces.len()];
            for l in d.labels() {
                if c.contains(&l) {
                    continue;
                }
                let (a, b) = side_faces(l);
                adj[a].push(b);
                adj[b].push(a);
            }
            for x in 0..n {
                let (a, b) = gap(x);
                adj[a].push(b);
                adj[b].push(a);
            }
            let mut reach = vec![false; faces.len()];
            let mut q = VecDeque::from([outer]);
            reach[outer] = true;
            while let Some(f) = q.pop_front() {
                for &g in &adj[f] {
                    if !reach[g] {
                        reach[g] = true;
                        q.push_back(g);
                    }
                }
            }
            inside.push(reach.iter().map(|r| !r).collect());
        }
        let ccw: Vec<bool> = circles.iter().enumerate().map(|(i, c)| inside[i][side_faces(c[0]).0]).collect();
        let mut bands = vec![];
        for x in 0..n {
            let s = d.strands(x);
            let (left, right) = if d.sign(x) > 0 {
                (circle_of[&s.over_in], circle_of[&s.under_in])
            } else {
                (circle_of[&s.under_in], circle_of[&s.over_in])
            };
            let (g, _) = gap(x);
            let fold_left = inside[left][g];
            let fold_right = inside[right][g];
            debug_assert_eq!(fold_left, !ccw[left]);
            debug_assert_eq!(fold_right, ccw[right]);
            bands.push(Band { crossing: x, sign: d.sign(x), left, right, fold_left, fold_right });
        }
        let mut feet = vec![];
        for c in &circles {
            let mut fs = vec![];
            for &l in c {
                let (x, _) = d.head(l);
                let e = if bands[x].left == circle_of[&l] && bands[x].right != circle_of[&l] {
                    End::Left
                } else {
                    End::Right
                };
                fs.push((x, e));
            }
            feet.push(fs);
        }
        SeifertSurface { circles, feet, ccw, bands }
    }

    pub fn genus(&self) -> usize {
        (self.bands.len() + 1 - self.circles.len().max(1)) / 2
    }

    /// Fundamental cycles of the Seifert graph, each a list of
    /// `(band, direction)` steps with `+1` meaning left to right.
    pub fn generators(&self) -> Vec<Vec<(usize, i8)>> {
        let nc = self.circles.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]; nc];
        for b in &self.bands {
            adj[b.left].push((b.crossing, b.right));
            adj[b.right].push((b.crossing, b.left));
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nc]; // (band, parent circle)
        let mut depth = vec![usize::MAX; nc];
        let mut tree = vec![false; self.bands.len()];
        if nc == 0 {
            return vec![];
        }
        depth[0] = 0;
        let mut q = VecDeque::from([0usize]);
        while let Some(u) = q.pop_front() {
            for &(b, v) in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some((b, u));
                    tree[b] = true;
                    q.push_back(v);
                }
            }
        }
        let step = |b: usize, from: usize| -> (usize, i8) {
            if self.bands[b].left == from {
                (b, 1)
            } else {
                (b, -1)
            }
        };
        let mut gens = vec![];
        for b in &self.bands {
            if tree[b.crossing] {
                continue;
            }
            // left --b--> right, then the tree path right -> left
            let mut cyc = vec![(b.crossing, 1i8)];
            let (mut u, mut v) = (b.right, b.left);
            let mut up = vec![];
            let mut down = vec![];
            while u != v {
                if depth[u] >= depth[v] {
                    let (pb, pu) = parent[u].unwrap();
                    up.push(step(pb, u));
                    u = pu;
                } else {
                    let (pb, pv) = parent[v].unwrap();
                    down.push(step(pb, pv));
                    v = pv;
                }
            }
            down.reverse();
            cyc.extend(up);
            cyc.extend(down);
            gens.push(cyc);
        }
        gens
    }

    pub fn seifert_matrix(&self) -> IntMatrix {
        let gens = self.generators();
        let g = gens.len();
        let pieces: Vec<BTreeMap<usize, Vec<Piece>>> = (0..g).map(|k| self.pieces(&gens[k], k, false)).collect();
        let pushed: Vec<BTreeMap<usize, Vec<Piece>>> = (0..g).map(|k| self.pieces(&gens[k], k, true)).collect();
        let mut v = vec![vec![0i64; g]; g];
        for i in 0..g {
            for j in 0..g {
                let mut twice = 0i64;
                // half twist inside every shared band
                for &(bi, di) in &gens[i] {
                    for &(bj, dj) in &gens[j] {
                        if bi == bj {
                            twice -= self.bands[bi].sign as i64 * di as i64 * dj as i64;
                        }
                    }
                }
                for (c, pa) in &pieces[i] {
                    if let Some(pb) = pushed[j].get(c) {
                        twice += self.collar_crossings(*c, pa, pb);
                    }
                }
                debug_assert!(twice % 2 == 0, "odd crossing count");
                v[i][j] = twice / 2;
            }
        }
        v
    }

    const FOOT: i64 = 1_000_000;

    fn foot_index(&self, c: usize, x: usize) -> usize {
        self.feet[c].iter().position(|f| f.0 == x).expect("band meets circle")
    }

    /// Pieces of generator `k` on each collar; `pushed` gives the copy moved
    /// slightly to its left inside the surface.
    fn pieces(&self, cyc: &[(usize, i8)], k: usize, pushed: bool) -> BTreeMap<usize, Vec<Piece>> {
        let lane = 100 * (k as i64 + 1);
        let eta = if pushed { 1 } else { 0 };
        let mut out: BTreeMap<usize, Vec<Piece>> = BTreeMap::new();
        let m = cyc.len();
        for i in 0..m {
            let (bin, din) = cyc[i];
            let (bout, _) = cyc[(i + 1) % m];
            // the circle between step i and step i+1
            let ein = if din > 0 { End::Right } else { End::Left };
            let c = self.bands[bin].circle(ein);
            let eout = if self.bands[bout].left == c { End::Left } else { End::Right };
            debug_assert_eq!(self.bands[bout].circle(eout), c);
            let per = Self::FOOT * self.feet[c].len() as i64;
            let sig = |e: End| if e == End::Left { 1 } else { -1 };
            let s_in = (Self::FOOT * self.foot_index(c, bin) as i64 + sig(ein) * lane - eta).rem_euclid(per);
            let s_out = (Self::FOOT * self.foot_index(c, bout) as i64 + sig(eout) * lane + eta).rem_euclid(per);
            let depth = lane + eta;
            let e = out.entry(c).or_default();
            e.push(Piece::Along { from: s_in, to: s_out, depth });
            e.push(Piece::Radial { s: s_in, reach: Some(depth), dir: 1 });
            e.push(Piece::Radial { s: s_out, reach: Some(depth), dir: -1 });
            if self.bands[bin].fold(ein) {
                e.push(Piece::Radial { s: s_in, reach: None, dir: -1 });
            }
            if self.bands[bout].fold(eout) {
                e.push(Piece::Radial { s: s_out, reach: None, dir: 1 });
            }
        }
        out
    }

    /// Twice the signed count of collar crossings between `a` and the pushed
    /// copy `b` on circle `c`, counting both over and under crossings.
    fn collar_crossings(&self, c: usize, a: &[Piece], b: &[Piece]) -> i64 {
        let per = Self::FOOT * self.feet[c].len() as i64;
        let nz: i64 = if self.ccw[c] { 1 } else { -1 };
        let within = |s: i64, from: i64, to: i64| {
            let len = (to - from).rem_euclid(per);
            let off = (s - from).rem_euclid(per);
            off > 0 && off < len
        };
        let mut total = 0;
        for (pa, a_is_pushed) in a.iter().map(|p| (p, false)).chain(b.iter().map(|p| (p, true))) {
            let Piece::Along { from, to, depth } = *pa else { continue };
            let others = if a_is_pushed { a } else { b };
            for q in others {
                let Piece::Radial { s, reach, dir } = *q else { continue };
                if !within(s, from, to) || reach.is_some_and(|r| depth >= r) {
                    continue;
                }
                // band pieces sit above the disk; in the disk the pushed copy
                // is above exactly when the disk normal points up
                let radial_over = reach.is_none() || (a_is_pushed != self.ccw[c]);
                let sign = if radial_over { -nz * dir } else { nz * dir };
                total += sign;
            }
        }
        total
    }
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    /// Runs along the collar in the circle's direction at fixed depth.
    Along { from: i64, to: i64, depth: i64 },
    /// Crosses the collar at position `s`; `reach` is `None` for a band lying
    /// over the collar. `dir` is `+1` inward.
    Radial { s: i64, reach: Option<i64>, dir: i64 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::braid_closure;
    use crate::matrix::{symmetric_signature, to_rational};

    fn sig(v: &SeifertMatrix) -> i64 {
        symmetric_signature(&to_rational(&v.symmetrized())).0
    }

    #[test]
    fn trefoil_matrix() {
        let d = braid_closure(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(seifert_circles(&d).len(), 2);
        let v = SeifertMatrix::from_diagram(&d).unwrap();
        assert_eq!(v.genus, 1);
        assert_eq!(sig(&v), -2);
        assert_eq!(sig(&SeifertMatrix::from_diagram(&d.mirror()).unwrap()), 2);
    }

    #[test]
    fn figure_eight_matrix() {
        let d = braid_closure(3, &[(0, 1), (1, -1), (0, 1), (1, -1)]).unwrap();
        let v = SeifertMatrix::from_diagram(&d).unwrap();
        assert_eq!(seifert_circles(&d).len(), 3);
        assert_eq!(sig(&v), 0);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(SeifertMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(SeifertMatrix::new(vec![vec![1]]).is_err());
        assert!(SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).is_ok());
    }
}
