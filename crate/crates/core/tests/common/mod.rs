#![allow(dead_code, clippy::needless_range_loop)]
//! Shared helpers for integration tests: random diagrams and independent
//! oracles.

use std::collections::HashMap;

use concordance_lab::builder::random_diagram;
use concordance_lab::diagram::Diagram;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_knot(r: &mut ChaCha8Rng, max_len: usize) -> Diagram {
    random_diagram(r, max_len)
}

pub fn fox_alexander_at(d: &Diagram, t: i128) -> i128 {
    let n = d.crossing_count();
    if n == 0 {
        return 1;
    }
    // union the two PD arcs of every over-strand
    let mut parent: HashMap<u32, u32> = d.labels().map(|l| (l, l)).collect();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let q = p[&x];
        if q == x {
            return x;
        }
        let r = find(p, q);
        p.insert(x, r);
        r
    }
    for x in 0..n {
        let s = d.strands(x);
        let (a, b) = (find(&mut parent, s.over_in), find(&mut parent, s.over_out));
        parent.insert(a, b);
    }
    let mut ids: HashMap<u32, usize> = HashMap::new();
    for l in d.labels() {
        let root = find(&mut parent, l);
        let k = ids.len();
        ids.entry(root).or_insert(k);
    }
    assert_eq!(ids.len(), n, "a knot diagram has as many over-strands as crossings");
    let mut m = vec![vec![0i128; n]; n];
    for x in 0..n {
        let s = d.strands(x);
        let o = ids[&find(&mut parent, s.over_in)];
        let ui = ids[&find(&mut parent, s.under_in)];
        let uo = ids[&find(&mut parent, s.under_out)];
        if d.sign(x) > 0 {
            m[x][o] += 1 - t;
            m[x][ui] += t;
            m[x][uo] -= 1;
        } else {
            m[x][o] += t - 1;
            m[x][ui] += 1;
            m[x][uo] -= t;
        }
    }
    let minor: Vec<Vec<i128>> = m[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    bareiss(minor)
}

pub fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut prev = 1i128;
    let mut sign = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Knot signature through a Goeritz matrix with a linking correction, from a
/// checkerboard colouring of the diagram. `eta_sign` and `count_incoming`
/// select one of four local conventions; tests calibrate them on a few
/// knots with known signature.
pub fn goeritz_signature(d: &Diagram, eta_sign: i64, count_incoming: bool) -> i64 {
    use concordance_lab::matrix::{symmetric_signature, to_rational};
    let n = d.crossing_count();
    if n == 0 {
        return 0;
    }
    let faces = d.faces();
    let mut face_of = vec![[0usize; 4]; n];
    for (f, cs) in faces.iter().enumerate() {
        for &(x, p) in cs {
            face_of[x][p] = f;
        }
    }
    // corners k and k+1 at a crossing lie on opposite sides of an arc
    let nf = faces.len();
    let mut colour: Vec<Option<bool>> = vec![None; nf];
    colour[0] = Some(true);
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        let c = colour[f].unwrap();
        for &(x, p) in &faces[f] {
            for q in [(p + 1) % 4, (p + 3) % 4] {
                let g = face_of[x][q];
                match colour[g] {
                    None => {
                        colour[g] = Some(!c);
                        stack.push(g);
                    }
                    Some(cg) => assert_ne!(cg, c, "checkerboard colouring failed"),
                }
            }
        }
    }
    let shaded = |f: usize| colour[f] == Some(true);
    let white: Vec<usize> = (0..nf).filter(|&f| !shaded(f)).collect();
    let idx: HashMap<usize, usize> = white.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = white.len();
    let mut g = vec![vec![0i64; m]; m];
    let mut mu = 0i64;
    for x in 0..n {
        let eta = if shaded(face_of[x][0]) { eta_sign } else { -eta_sign };
        let incoming_corner = if d.sign(x) > 0 { 3 } else { 0 };
        if shaded(face_of[x][incoming_corner]) == count_incoming {
            mu += eta;
        }
        let ws: Vec<usize> = (0..4).map(|k| face_of[x][k]).filter(|&f| !shaded(f)).collect();
        let (i, j) = (idx[&ws[0]], idx[&ws[1]]);
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
        }
    }
    for i in 0..m {
        let s: i64 = (0..m).filter(|&j| j != i).map(|j| g[i][j]).sum();
        g[i][i] = -s;
    }
    let red: Vec<Vec<i64>> = g[1..].iter().map(|r| r[1..].to_vec()).collect();
    symmetric_signature(&to_rational(&red)).0 - mu
}
