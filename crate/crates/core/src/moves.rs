//! Reidemeister moves on PD codes and a bounded search for an unknotting
//! sequence.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Slot, Strands};
use crate::error::DiagramError;

/// A single move, addressed in the diagram it is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum Move {
    /// Remove the kink whose loop occupies slots `slot` and `slot + 1`.
    R1 { crossing: usize, slot: usize },
    /// Remove the bigon face containing `corner`.
    R2 { corner: Slot },
    /// Slide a strand across the triangular face containing `corner`.
    R3 { corner: Slot },
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub trace: Vec<Move>,
    pub result: Diagram,
    pub unknotted: bool,
}

pub const DEFAULT_R3_BUDGET: usize = 8;

pub fn apply_move(d: &Diagram, m: &Move) -> Result<Diagram, DiagramError> {
    match *m {
        Move::R1 { crossing, slot } => r1(d, crossing, slot),
        Move::R2 { corner } => r2(d, corner),
        Move::R3 { corner } => r3(d, corner),
    }
}

pub fn replay(d: &Diagram, trace: &[Move]) -> Result<Diagram, DiagramError> {
    trace.iter().try_fold(d.clone(), |acc, m| apply_move(&acc, m))
}

fn bad(msg: &str) -> DiagramError {
    DiagramError::InvalidMove(msg.to_string())
}

/// Drop crossings in `gone`, merge label classes, and revalidate.
fn rebuild(d: &Diagram, gone: &[usize], merges: &[(u32, u32)]) -> Result<Diagram, DiagramError> {
    let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
    fn find(p: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(x, r);
        r
    }
    for &(a, b) in merges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent.insert(hi, lo);
        parent.insert(lo, lo);
    }
    let pd: Vec<[u32; 4]> = d
        .pd()
        .iter()
        .enumerate()
        .filter(|(i, _)| !gone.contains(i))
        .map(|(_, t)| t.map(|l| find(&mut parent, l)))
        .collect();
    Diagram::from_tuples(pd)
}

fn r1(d: &Diagram, x: usize, p: usize) -> Result<Diagram, DiagramError> {
    if x >= d.crossing_count() || p > 3 {
        return Err(bad("R1 out of range"));
    }
    let t = d.pd()[x];
    if t[p] != t[(p + 1) % 4] {
        return Err(bad("no kink at this crossing"));
    }
    rebuild(d, &[x], &[(t[(p + 2) % 4], t[(p + 3) % 4])])
}

fn r2(d: &Diagram, c: Slot) -> Result<Diagram, DiagramError> {
    if c.0 >= d.crossing_count() || c.1 > 3 {
        return Err(bad("R2 out of range"));
    }
    let (x, p) = c;
    let (y, q) = d.next_corner(c);
    if y == x || d.next_corner((y, q)) != c {
        return Err(bad("corner does not bound a bigon"));
    }
    let pa = (p + 1) % 4;
    if pa % 2 != q % 2 {
        return Err(bad("bigon is alternating"));
    }
    let t = d.pd();
    let merges = [(t[x][(p + 3) % 4], t[y][(q + 2) % 4]), (t[y][(q + 3) % 4], t[x][(p + 2) % 4])];
    rebuild(d, &[x, y], &merges)
}

fn triangle(d: &Diagram, c: Slot) -> Option<[Slot; 3]> {
    let c1 = d.next_corner(c);
    let c2 = d.next_corner(c1);
    if d.next_corner(c2) != c {
        return None;
    }
    let xs = [c.0, c1.0, c2.0];
    if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
        return None;
    }
    Some([c, c1, c2])
}

fn r3_applies(tri: &[Slot; 3]) -> bool {
    // side i leaves corner i through slot p+1 and reaches corner i+1 at slot q
    let mut over_over = false;
    let mut under_under = false;
    for i in 0..3 {
        let a = (tri[i].1 + 1) % 4;
        let b = tri[(i + 1) % 3].1;
        over_over |= a % 2 == 1 && b % 2 == 1;
        under_under |= a.is_multiple_of(2) && b.is_multiple_of(2);
    }
    over_over && under_under
}

fn r3(d: &Diagram, c: Slot) -> Result<Diagram, DiagramError> {
    if c.0 >= d.crossing_count() || c.1 > 3 {
        return Err(bad("R3 out of range"));
    }
    let tri = triangle(d, c).ok_or_else(|| bad("corner does not bound a triangle"))?;
    if !r3_applies(&tri) {
        return Err(bad("triangle does not admit a third move"));
    }
    let t = d.pd();
    let xs: Vec<usize> = tri.iter().map(|s| s.0).collect();
    let mut new: BTreeMap<usize, Strands> = xs.iter().map(|&x| (x, d.strands(x))).collect();
    for i in 0..3 {
        let side = t[tri[i].0][(tri[i].1 + 1) % 4];
        let tail = d.tail(side);
        let head = d.head(side);
        let in_arc = t[tail.0][(tail.1 + 2) % 4];
        let out_arc = t[head.0][(head.1 + 2) % 4];
        // Along this strand the two crossings swap order; the side arc now
        // runs from the old head crossing to the old tail crossing.
        let h = new.get_mut(&head.0).unwrap();
        if head.1.is_multiple_of(2) {
            h.under_in = in_arc;
            h.under_out = side;
        } else {
            h.over_in = in_arc;
            h.over_out = side;
        }
        let tl = new.get_mut(&tail.0).unwrap();
        if tail.1.is_multiple_of(2) {
            tl.under_in = side;
            tl.under_out = out_arc;
        } else {
            tl.over_in = side;
            tl.over_out = out_arc;
        }
    }
    let mut pd = t.to_vec();
    for (&x, s) in &new {
        pd[x] = Diagram::tuple_from_strands(*s, d.sign(x));
    }
    Diagram::from_tuples(pd)
}

/// Every R1 or R2 move available, R1 first.
pub fn simplifying_moves(d: &Diagram) -> Vec<Move> {
    let mut out = vec![];
    for (x, t) in d.pd().iter().enumerate() {
        for p in 0..4 {
            if t[p] == t[(p + 1) % 4] {
                out.push(Move::R1 { crossing: x, slot: p });
            }
        }
    }
    for face in d.faces() {
        if face.len() == 2 && face[0].0 != face[1].0 {
            let m = Move::R2 { corner: face[0] };
            if apply_move(d, &m).is_ok() {
                out.push(m);
            }
        }
    }
    out
}

pub fn third_moves(d: &Diagram) -> Vec<Move> {
    let mut out = vec![];
    for face in d.faces() {
        if face.len() == 3 {
            if let Some(tri) = triangle(d, face[0]) {
                if r3_applies(&tri) {
                    out.push(Move::R3 { corner: face[0] });
                }
            }
        }
    }
    out
}

/// Greedy R1/R2 simplification interleaved with breadth-first search over at
/// most `r3_budget` third moves in total.
pub fn reduce_to_unknot(d: &Diagram, r3_budget: usize) -> Reduction {
    let mut cur = d.clone();
    let mut trace = vec![];
    let mut budget = r3_budget;
    loop {
        while let Some(m) = simplifying_moves(&cur).into_iter().next() {
            cur = apply_move(&cur, &m).expect("listed move applies");
            trace.push(m);
        }
        if cur.crossing_count() == 0 {
            return Reduction { trace, result: cur, unknotted: true };
        }
        match search_r3(&cur, budget) {
            Some(path) => {
                budget -= path.len();
                for m in path {
                    cur = apply_move(&cur, &m).expect("searched move applies");
                    trace.push(m);
                }
            }
            None => return Reduction { trace, result: cur, unknotted: false },
        }
    }
}

fn search_r3(d: &Diagram, budget: usize) -> Option<Vec<Move>> {
    let mut seen = HashSet::new();
    seen.insert(d.shape_key());
    let mut queue = VecDeque::new();
    queue.push_back((d.clone(), vec![]));
    while let Some((cur, path)) = queue.pop_front() {
        if path.len() >= budget {
            continue;
        }
        for m in third_moves(&cur) {
            let Ok(next) = apply_move(&cur, &m) else { continue };
            if !seen.insert(next.shape_key()) {
                continue;
            }
            let mut p2: Vec<Move> = path.clone();
            p2.push(m);
            if !simplifying_moves(&next).is_empty() {
                return Some(p2);
            }
            queue.push_back((next, p2));
        }
    }
    None
}
