//! Assemble PD codes from braid words with a choice of closure.
//!
//! Strand positions run left to right and strands run upward. A letter
//! `(i, +1)` crosses positions `i` and `i + 1` with the strand coming from the
//! lower left passing over; `(i, -1)` puts the lower-right strand on top.

use std::collections::HashMap;

use rand::Rng;

use crate::diagram::Diagram;
use crate::error::DiagramError;

/// One braid generator: position and exponent sign.
pub type Letter = (usize, i8);

#[derive(Debug, Clone, Copy)]
enum Closure<'a> {
    Braid,
    Caps { top: &'a [(usize, usize)], bottom: &'a [(usize, usize)] },
}

/// Standard closure: the top of each position is joined to its bottom.
pub fn braid_closure(strands: usize, word: &[Letter]) -> Result<Diagram, DiagramError> {
    build(strands, word, Closure::Braid)
}

/// Close the braid with arcs joining pairs of positions at the top and at the
/// bottom. The pairings must be non-crossing.
pub fn cap_closure(
    strands: usize,
    word: &[Letter],
    top: &[(usize, usize)],
    bottom: &[(usize, usize)],
) -> Result<Diagram, DiagramError> {
    build(strands, word, Closure::Caps { top, bottom })
}

// Node ids: slot k of crossing x is 4x + k with slots ordered counterclockwise
// BR, TR, TL, BL. Terminals follow: bottom ends then top ends.
fn build(strands: usize, word: &[Letter], closure: Closure) -> Result<Diagram, DiagramError> {
    let n = word.len();
    if n == 0 {
        return Ok(Diagram::unknot());
    }
    let bottom = |p: usize| 4 * n + p;
    let top = |p: usize| 4 * n + strands + p;
    let mut link: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut join = |a: usize, b: usize| {
        link.entry(a).or_default().push(b);
        link.entry(b).or_default().push(a);
    };
    let mut cur: Vec<usize> = (0..strands).map(bottom).collect();
    let mut over_diag = Vec::with_capacity(n);
    for (x, &(i, s)) in word.iter().enumerate() {
        if i + 1 >= strands {
            return Err(DiagramError::InvalidMove(format!("generator {i} out of range")));
        }
        join(cur[i], 4 * x + 3);
        join(cur[i + 1], 4 * x);
        cur[i] = 4 * x + 2;
        cur[i + 1] = 4 * x + 1;
        // over diagonal as (slot pair): BL-TR or BR-TL
        over_diag.push(if s > 0 { (3usize, 1usize) } else { (0, 2) });
    }
    for (p, &c) in cur.iter().enumerate() {
        join(c, top(p));
    }
    match closure {
        Closure::Braid => {
            for p in 0..strands {
                join(top(p), bottom(p));
            }
        }
        Closure::Caps { top: tc, bottom: bc } => {
            for &(a, b) in tc {
                join(top(a), top(b));
            }
            for &(a, b) in bc {
                join(bottom(a), bottom(b));
            }
        }
    }
    // Collapse terminal chains so every slot points at its partner slot.
    let mut partner = vec![usize::MAX; 4 * n];
    for s in 0..4 * n {
        let nb = link.get(&s).cloned().unwrap_or_default();
        if nb.len() != 1 {
            return Err(DiagramError::InvalidMove("dangling strand end".into()));
        }
        let (mut prev, mut at) = (s, nb[0]);
        let mut guard = 0;
        while at >= 4 * n {
            let ns = &link[&at];
            if ns.len() != 2 {
                return Err(DiagramError::InvalidMove("open strand in closure".into()));
            }
            let nxt = if ns[0] == prev { ns[1] } else { ns[0] };
            prev = at;
            at = nxt;
            guard += 1;
            if guard > 4 * strands + 4 {
                return Err(DiagramError::MultipleComponents);
            }
        }
        partner[s] = at;
    }
    // Walk and label; entering a slot marks it incoming.
    let mut label = vec![0u32; 4 * n];
    let mut incoming = vec![false; 4 * n];
    let mut s = 3usize; // enter crossing 0 at BL
    let mut k = 0u32;
    for _ in 0..2 * n {
        if incoming[s] {
            return Err(DiagramError::MultipleComponents);
        }
        incoming[s] = true;
        let exit = 4 * (s / 4) + (s % 4 + 2) % 4;
        k += 1;
        label[exit] = k;
        let nxt = partner[exit];
        label[nxt] = k;
        s = nxt;
    }
    if s != 3 || incoming.iter().filter(|&&b| b).count() != 2 * n {
        return Err(DiagramError::MultipleComponents);
    }
    let mut pd = Vec::with_capacity(n);
    for x in 0..n {
        let (o1, _) = over_diag[x];
        let under = if o1 == 3 { [0, 2] } else { [1, 3] };
        let uin = if incoming[4 * x + under[0]] { under[0] } else { under[1] };
        pd.push([0, 1, 2, 3].map(|j| label[4 * x + (uin + j) % 4]));
    }
    Diagram::from_tuples(pd)
}

/// Pretzel diagram with columns of `cols[i]` half twists.
pub fn pretzel(cols: &[i64]) -> Result<Diagram, DiagramError> {
    let k = cols.len();
    let mut word = vec![];
    for (c, &t) in cols.iter().enumerate() {
        let s = if t > 0 { 1 } else { -1 };
        for _ in 0..t.unsigned_abs() {
            word.push((2 * c, s));
        }
    }
    let mut caps: Vec<(usize, usize)> = (0..k - 1).map(|c| (2 * c + 1, 2 * c + 2)).collect();
    caps.push((0, 2 * k - 1));
    cap_closure(2 * k, &word, &caps, &caps)
}

fn random_word<R: Rng>(r: &mut R, strands: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| (r.gen_range(0..strands - 1), if r.gen_bool(0.5) { 1 } else { -1 })).collect()
}

/// A random valid knot diagram with at most about `max_len` crossings, drawn
/// from braid closures, plat closures and connected sums of those.
/// Random knot diagram: braid closures on 2-4 strands, plat closures on 4 or
/// 6 strands, or a connected sum of two such; at most `max_len + 2`
/// crossings.
pub fn random_diagram<R: Rng>(r: &mut R, max_len: usize) -> Diagram {
    loop {
        let kind = r.gen_range(0..4);
        let d = match kind {
            0 => {
                let m = r.gen_range(2..=4);
                let len = r.gen_range(1..=max_len);
                braid_closure(m, &random_word(r, m, len))
            }
            1 | 2 => {
                let m = if r.gen_bool(0.5) { 4 } else { 6 };
                let len = r.gen_range(1..=max_len);
                let caps: Vec<(usize, usize)> = (0..m / 2).map(|i| (2 * i, 2 * i + 1)).collect();
                cap_closure(m, &random_word(r, m, len), &caps, &caps)
            }
            _ => {
                let a = random_diagram(r, max_len / 2 + 1);
                let b = random_diagram(r, max_len / 2 + 1);
                Ok(a.connected_sum(&b))
            }
        };
        if let Ok(d) = d {
            if d.crossing_count() <= max_len + 2 {
                return d;
            }
        }
    }
}

/// Alexander matrix from Wirtinger arcs, evaluated at an integer `t`, with
/// the last row and column removed. Determinant by exact elimination over
/// rationals in i128.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_braid() {
        let d = braid_closure(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn figure_eight_braid() {
        let d = braid_closure(3, &[(0, 1), (1, -1), (0, 1), (1, -1)]).unwrap();
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn two_component_closure_rejected() {
        assert!(braid_closure(2, &[(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn pretzel_builds() {
        let d = pretzel(&[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(pretzel(&[-3, 5, 7]).unwrap().crossing_count(), 15);
        assert_eq!(pretzel(&[0, 1, 1]).unwrap().crossing_count(), 2);
    }
}
