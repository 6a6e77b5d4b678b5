//! Oriented knot diagrams given as planar diagram (PD) codes.
//!
//! Each crossing is a tuple `(a, b, c, d)` of arc labels read counterclockwise,
//! starting with the incoming under-strand. So `a` enters under and `c` leaves
//! under. The crossing is positive when the over-strand runs `d -> b` and
//! negative when it runs `b -> d`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

pub const CONVENTION: &str = "incoming-under-first";

/// Position of an arc end inside the crossing list: `(crossing, slot)`.
pub type Slot = (usize, usize);

/// A validated, oriented, single-component planar diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pd: Vec<[u32; 4]>,
    signs: Vec<i8>,
    occ: HashMap<u32, [Slot; 2]>,
}

/// The four strand ends of a crossing, by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strands {
    pub under_in: u32,
    pub under_out: u32,
    pub over_in: u32,
    pub over_out: u32,
}

impl Diagram {
    pub fn unknot() -> Self {
        Diagram { pd: vec![], signs: vec![], occ: HashMap::new() }
    }

    /// Parse and validate a PD code.
    pub fn from_pd(code: &[Vec<i64>]) -> Result<Self, DiagramError> {
        let mut pd = Vec::with_capacity(code.len());
        for (i, t) in code.iter().enumerate() {
            if t.len() != 4 || t.iter().any(|&l| l <= 0 || l > u32::MAX as i64) {
                return Err(DiagramError::MalformedTuple { crossing: i });
            }
            pd.push([t[0] as u32, t[1] as u32, t[2] as u32, t[3] as u32]);
        }
        Self::from_tuples(pd)
    }

    pub fn from_tuples(pd: Vec<[u32; 4]>) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (x, t) in pd.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                if l == 0 {
                    return Err(DiagramError::MalformedTuple { crossing: x });
                }
                seen.entry(l).or_default().push((x, p));
            }
        }
        let mut occ = HashMap::new();
        for (l, v) in seen {
            if v.len() != 2 {
                return Err(DiagramError::LabelCount { label: l as i64, count: v.len() });
            }
            occ.insert(l, [v[0], v[1]]);
        }
        let n = pd.len();
        let mut d = Diagram { pd, signs: vec![0; n], occ };
        if n == 0 {
            return Ok(d);
        }
        // Walk the knot from the first under-in slot; entering a crossing at a
        // slot tells us that slot is incoming.
        let mut over_in: Vec<Option<usize>> = vec![None; n];
        let mut under_seen = vec![false; n];
        let (mut x, mut p) = (0usize, 0usize);
        for _ in 0..2 * n {
            match p {
                0 => {
                    if under_seen[x] {
                        return Err(DiagramError::MultipleComponents);
                    }
                    under_seen[x] = true;
                }
                2 => return Err(DiagramError::OrientationInconsistent { crossing: x }),
                _ => {
                    if over_in[x].is_some() {
                        return Err(DiagramError::MultipleComponents);
                    }
                    over_in[x] = Some(p);
                }
            }
            let next = d.other_end((x, (p + 2) % 4));
            x = next.0;
            p = next.1;
        }
        if (x, p) != (0, 0) || under_seen.iter().any(|s| !s) || over_in.iter().any(|o| o.is_none()) {
            return Err(DiagramError::MultipleComponents);
        }
        for (i, o) in over_in.iter().enumerate() {
            d.signs[i] = if o.unwrap() == 3 { 1 } else { -1 };
        }
        let faces = d.faces().len();
        if faces != n + 2 {
            return Err(DiagramError::NonPlanar { faces, expected: n + 2 });
        }
        Ok(d)
    }

    pub fn pd(&self) -> &[[u32; 4]] {
        &self.pd
    }

    pub fn pd_i64(&self) -> Vec<Vec<i64>> {
        self.pd.iter().map(|t| t.iter().map(|&l| l as i64).collect()).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.len()
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        let mut v: Vec<u32> = self.occ.keys().copied().collect();
        v.sort_unstable();
        v.into_iter()
    }

    /// The slot at the other end of the arc that occupies `s`.
    pub fn other_end(&self, s: Slot) -> Slot {
        let l = self.pd[s.0][s.1];
        let [u, v] = self.occ[&l];
        if u == s {
            v
        } else {
            u
        }
    }

    pub fn slots_of(&self, label: u32) -> [Slot; 2] {
        self.occ[&label]
    }

    /// Slot index of the incoming over-strand at crossing `i`.
    pub fn over_in_slot(&self, i: usize) -> usize {
        if self.signs[i] > 0 {
            3
        } else {
            1
        }
    }

    pub fn is_incoming(&self, s: Slot) -> bool {
        s.1 == 0 || s.1 == self.over_in_slot(s.0)
    }

    pub fn strands(&self, i: usize) -> Strands {
        let t = self.pd[i];
        let oi = self.over_in_slot(i);
        Strands { under_in: t[0], under_out: t[2], over_in: t[oi], over_out: t[(oi + 2) % 4] }
    }

    /// Slot where `label` leaves a crossing.
    pub fn tail(&self, label: u32) -> Slot {
        let [u, v] = self.occ[&label];
        if self.is_incoming(u) {
            v
        } else {
            u
        }
    }

    /// Slot where `label` enters a crossing.
    pub fn head(&self, label: u32) -> Slot {
        let [u, v] = self.occ[&label];
        if self.is_incoming(u) {
            u
        } else {
            v
        }
    }

    /// Arc labels in the order met while walking the knot, starting with the
    /// arc that enters crossing 0 from below.
    pub fn traversal(&self) -> Vec<u32> {
        if self.pd.is_empty() {
            return vec![];
        }
        let mut out = Vec::with_capacity(2 * self.pd.len());
        let mut s: Slot = (0, 0);
        loop {
            out.push(self.pd[s.0][s.1]);
            let exit = (s.0, (s.1 + 2) % 4);
            s = self.other_end(exit);
            if s == (0, 0) {
                break;
            }
        }
        out
    }

    /// Relabel arcs `1..=2n` along the orientation.
    pub fn canonical(&self) -> Diagram {
        let map: HashMap<u32, u32> = self.traversal().into_iter().enumerate().map(|(i, l)| (l, i as u32 + 1)).collect();
        let pd = self.pd.iter().map(|t| t.map(|l| map[&l])).collect();
        Diagram::from_tuples(pd).expect("relabeling preserves validity")
    }

    /// Faces as cyclic lists of corners; corner `(x, p)` sits between slots
    /// `p` and `p + 1` of crossing `x`.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let n = self.pd.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = vec![];
        for x in 0..n {
            for p in 0..4 {
                if seen[x][p] {
                    continue;
                }
                let mut face = vec![];
                let mut c = (x, p);
                while !seen[c.0][c.1] {
                    seen[c.0][c.1] = true;
                    face.push(c);
                    c = self.next_corner(c);
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn next_corner(&self, c: Slot) -> Slot {
        self.other_end((c.0, (c.1 + 1) % 4))
    }

    /// Switch crossing `i`: over and under swap, the sign flips.
    pub fn change_crossing(&self, i: usize) -> Diagram {
        let mut pd = self.pd.clone();
        let [a, b, c, d] = pd[i];
        pd[i] = if self.signs[i] > 0 { [d, a, b, c] } else { [b, c, d, a] };
        Diagram::from_tuples(pd).expect("crossing change preserves validity")
    }

    pub fn change_crossings(&self, idx: &[usize]) -> Diagram {
        idx.iter().fold(self.clone(), |d, &i| d.change_crossing(i))
    }

    pub fn mirror(&self) -> Diagram {
        let all: Vec<usize> = (0..self.pd.len()).collect();
        self.change_crossings(&all)
    }

    /// Band the two knots together along their lowest-labelled arcs.
    pub fn connected_sum(&self, other: &Diagram) -> Diagram {
        if self.pd.is_empty() {
            return other.clone();
        }
        if other.pd.is_empty() {
            return self.clone();
        }
        let off = self.occ.keys().max().copied().unwrap_or(0);
        let l1 = *self.occ.keys().min().unwrap();
        let l2 = *other.occ.keys().min().unwrap() + off;
        let y = self.head(l1);
        let w = other.head(l2 - off);
        let n1 = self.pd.len();
        let mut pd: Vec<[u32; 4]> = self.pd.clone();
        pd.extend(other.pd.iter().map(|t| t.map(|l| l + off)));
        // X -> W keeps l1, Z -> Y takes l2.
        pd[y.0][y.1] = l2;
        pd[n1 + w.0][w.1] = l1;
        Diagram::from_tuples(pd).expect("connected sum of valid diagrams is valid").canonical()
    }

    /// Build a crossing tuple from strand roles and a sign.
    pub fn tuple_from_strands(s: Strands, sign: i8) -> [u32; 4] {
        if sign > 0 {
            [s.under_in, s.over_out, s.under_out, s.over_in]
        } else {
            [s.under_in, s.over_in, s.under_out, s.over_out]
        }
    }

    /// A short key that is equal for diagrams differing only by arc labels
    /// and crossing order.
    pub fn shape_key(&self) -> Vec<u32> {
        if self.pd.is_empty() {
            return vec![];
        }
        let mut best: Option<Vec<u32>> = None;
        for start in 0..self.pd.len() {
            let key = self.key_from(start);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap()
    }

    fn key_from(&self, start: usize) -> Vec<u32> {
        // Relabel arcs along the walk that begins under crossing `start`, then
        // sort the tuples.
        let mut map = HashMap::new();
        let mut s: Slot = (start, 0);
        let mut k = 1;
        loop {
            map.insert(self.pd[s.0][s.1], k);
            k += 1;
            s = self.other_end((s.0, (s.1 + 2) % 4));
            if s == (start, 0) {
                break;
            }
        }
        let mut ts: Vec<[u32; 4]> = self.pd.iter().map(|t| t.map(|l| map[&l])).collect();
        ts.sort_unstable();
        ts.into_iter().flatten().collect()
    }
}

/// On-disk knot description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct KnotFile {
    pub name: String,
    pub pd: Vec<Vec<i64>>,
    #[serde(default = "default_convention")]
    pub convention: String,
}

fn default_convention() -> String {
    CONVENTION.to_string()
}

impl KnotFile {
    pub fn new(name: &str, d: &Diagram) -> Self {
        KnotFile { name: name.to_string(), pd: d.pd_i64(), convention: CONVENTION.to_string() }
    }

    pub fn diagram(&self) -> Result<Diagram, DiagramError> {
        if self.convention != CONVENTION {
            return Err(DiagramError::InvalidMove(format!("unsupported convention {:?}", self.convention)));
        }
        Diagram::from_pd(&self.pd)
    }
}
