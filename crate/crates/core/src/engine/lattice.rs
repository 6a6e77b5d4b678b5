//! Filtration sets, their canonical forms and the inclusion graph.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// n-solvable
    F,
    Fodd,
    /// n-positive / n-negative
    P,
    N,
    /// grope height n
    G,
    /// height-two gropes with second-stage curves deep in the derived series
    G2,
    /// Whitney tower height n
    W,
    /// Casson tower height n, unsigned and with base kinks of one sign
    C,
    Cplus,
    Cminus,
    /// height-two Casson towers with standard curves deep in the derived series
    C2,
    C2plus,
    C2minus,
    /// topologically slice
    T,
    All,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::F,
        Family::Fodd,
        Family::P,
        Family::N,
        Family::G,
        Family::G2,
        Family::W,
        Family::C,
        Family::Cplus,
        Family::Cminus,
        Family::C2,
        Family::C2plus,
        Family::C2minus,
        Family::T,
        Family::All,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Family::F => "F",
            Family::Fodd => "Fodd",
            Family::P => "P",
            Family::N => "N",
            Family::G => "G",
            Family::G2 => "G2",
            Family::W => "W",
            Family::C => "C",
            Family::Cplus => "C+",
            Family::Cminus => "C-",
            Family::C2 => "C2",
            Family::C2plus => "C2+",
            Family::C2minus => "C2-",
            Family::T => "T",
            Family::All => "ALL",
        }
    }

    /// Smallest index, or `None` for unindexed families.
    pub fn min_index(self) -> Option<u32> {
        match self {
            Family::T | Family::All => None,
            Family::G | Family::W | Family::C | Family::Cplus | Family::Cminus => Some(1),
            _ => Some(0),
        }
    }

    pub fn mirror(self) -> Family {
        match self {
            Family::P => Family::N,
            Family::N => Family::P,
            Family::Cplus => Family::Cminus,
            Family::Cminus => Family::Cplus,
            Family::C2plus => Family::C2minus,
            Family::C2minus => Family::C2plus,
            f => f,
        }
    }
}

/// Knot-level positivity notions that sit beside the filtrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Predicate {
    PositiveBraid,
    PositiveProjection,
    StronglyQuasipositive,
    Quasipositive,
    NegativeBraid,
    NegativeProjection,
    StronglyQuasinegative,
    Quasinegative,
}

impl Predicate {
    pub const ALL: [Predicate; 8] = [
        Predicate::PositiveBraid,
        Predicate::PositiveProjection,
        Predicate::StronglyQuasipositive,
        Predicate::Quasipositive,
        Predicate::NegativeBraid,
        Predicate::NegativeProjection,
        Predicate::StronglyQuasinegative,
        Predicate::Quasinegative,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Predicate::PositiveBraid => "pos_braid",
            Predicate::PositiveProjection => "pos_projection",
            Predicate::StronglyQuasipositive => "sqp",
            Predicate::Quasipositive => "qp",
            Predicate::NegativeBraid => "neg_braid",
            Predicate::NegativeProjection => "neg_projection",
            Predicate::StronglyQuasinegative => "sqn",
            Predicate::Quasinegative => "qn",
        }
    }

    pub fn mirror(self) -> Predicate {
        use Predicate::*;
        match self {
            PositiveBraid => NegativeBraid,
            PositiveProjection => NegativeProjection,
            StronglyQuasipositive => StronglyQuasinegative,
            Quasipositive => Quasinegative,
            NegativeBraid => PositiveBraid,
            NegativeProjection => PositiveProjection,
            StronglyQuasinegative => StronglyQuasipositive,
            Quasinegative => Quasipositive,
        }
    }
}

/// A vertex of the inclusion graph: a filtration set or a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Set(Family, Option<u32>),
    Pred(Predicate),
}

impl Node {
    pub fn set(f: Family, n: u32) -> Node {
        Node::Set(f, Some(n))
    }

    pub const T: Node = Node::Set(Family::T, None);
    pub const ALL: Node = Node::Set(Family::All, None);

    /// Representative of the equivalence class under the identifications
    /// `C2_0 = C_2` (and signed), `C_k = T` and `C±_k = C±_5` for `k >= 5`,
    /// `C_1 = ALL`. `G_1` and `W_1` follow from the last: every knot bounds
    /// a Seifert surface.
    pub fn canonical(self) -> Node {
        use Family::*;
        match self {
            Node::Set(G | W, Some(1)) => Node::ALL,
            Node::Set(C2, Some(0)) => Node::set(C, 2),
            Node::Set(C2plus, Some(0)) => Node::set(Cplus, 2),
            Node::Set(C2minus, Some(0)) => Node::set(Cminus, 2),
            Node::Set(C, Some(1)) => Node::ALL,
            Node::Set(C, Some(k)) if k >= 5 => Node::T,
            Node::Set(f @ (Cplus | Cminus), Some(k)) if k >= 5 => Node::set(f, 5),
            n => n,
        }
    }

    pub fn mirror(self) -> Node {
        match self {
            Node::Set(f, i) => Node::Set(f.mirror(), i),
            Node::Pred(p) => Node::Pred(p.mirror()),
        }
    }

    pub fn index(self) -> Option<u32> {
        match self {
            Node::Set(_, i) => i,
            Node::Pred(_) => None,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Set(fam, None) => f.write_str(fam.token()),
            Node::Set(fam, Some(n)) => write!(f, "{}_{n}", fam.token()),
            Node::Pred(p) => f.write_str(p.token()),
        }
    }
}

impl FromStr for Node {
    type Err = EngineError;
    fn from_str(s: &str) -> Result<Node, EngineError> {
        let bad = || EngineError::UnknownSet(s.to_string());
        let s = s.trim();
        if let Some(p) = Predicate::ALL.iter().find(|p| p.token() == s) {
            return Ok(Node::Pred(*p));
        }
        match s {
            "kappa_minus_zero" => return Ok(Node::set(Family::Cplus, 1)),
            "kappa_plus_zero" => return Ok(Node::set(Family::Cminus, 1)),
            _ => {}
        }
        let (head, idx) = match s.rsplit_once('_') {
            Some((h, i)) => (h, Some(i.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let fam = Family::ALL.iter().copied().find(|f| f.token() == head).ok_or_else(bad)?;
        match (fam.min_index(), idx) {
            (None, None) => Ok(Node::Set(fam, None)),
            (Some(lo), Some(i)) if i >= lo => Ok(Node::Set(fam, Some(i))),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Node {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Directed inclusion `from ⊆ to` between canonical nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub rule: &'static str,
    pub conjectural: bool,
}

/// Canonical nodes with all indices up to `bound`, and every inclusion
/// axiom between them.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub bound: u32,
    pub nodes: Vec<Node>,
    index: BTreeMap<Node, usize>,
    pub edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    reach: Vec<Vec<bool>>,
}

/// The inclusion axioms, stated on raw (uncanonicalised) nodes.
pub fn axioms(bound: u32, conjectures: bool) -> Vec<(Node, Node, &'static str, bool)> {
    use Family::*;
    let mut ax = vec![];
    let mut add = |a: Node, b: Node, rule: &'static str| ax.push((a, b, rule, false));
    let s = Node::set;
    for n in 0..=bound {
        for f in [F, Fodd, P, N, G2, C2, C2plus, C2minus] {
            if n < bound {
                add(s(f, n + 1), s(f, n), "filtration");
            }
        }
        for f in [G, W] {
            if n >= 1 && n < bound {
                add(s(f, n + 1), s(f, n), "filtration");
            }
        }
        if n >= 1 {
            add(s(Cplus, n), s(C, n), "forget kink signs");
            add(s(Cminus, n), s(C, n), "forget kink signs");
            add(s(C, n), s(G, n), "grope inside a Casson tower");
            add(s(G, n), s(W, n), "Whitney tower from a grope");
            add(Node::T, s(G, n), "topologically slice knots bound gropes");
        }
        add(s(C2plus, n), s(C2, n), "forget kink signs");
        add(s(C2minus, n), s(C2, n), "forget kink signs");
        add(s(C2, n), s(G2, n), "grope inside a Casson tower");
        add(s(G2, n), s(F, n), "solvability from height-two gropes");
        add(s(C2plus, n), s(P, n), "blow up positive kinks");
        add(s(C2minus, n), s(N, n), "blow up negative kinks");
        add(s(F, n), s(Fodd, n), "solvable knots are odd-solvable");
        add(s(P, n), s(Fodd, n), "positive knots are odd-solvable");
        add(s(N, n), s(Fodd, n), "negative knots are odd-solvable");
        add(s(C, 3), s(C2, n), "height-three towers");
        add(s(Cplus, 3), s(C2plus, n), "height-three towers");
        add(s(Cminus, 3), s(C2minus, n), "height-three towers");
        if n + 2 <= bound {
            add(s(C, n + 2), s(C2, n), "upper stages bound towers");
            add(s(Cplus, n + 2), s(C2plus, n), "upper stages bound towers");
            add(s(Cminus, n + 2), s(C2minus, n), "upper stages bound towers");
            add(s(G, n + 2), s(G2, n), "upper stages bound gropes");
            add(s(W, n + 2), s(F, n), "solvability from Whitney towers");
        }
    }
    // Casson towers are always instantiated up to the height where they
    // stabilise
    for n in 1..bound.max(5) {
        for f in [C, Cplus, Cminus] {
            add(s(f, n + 1), s(f, n), "filtration");
        }
    }
    add(s(Cplus, 1), s(P, 0), "blow up positive kinks");
    add(s(Cminus, 1), s(N, 0), "blow up negative kinks");
    use Predicate::*;
    let p = Node::Pred;
    add(p(PositiveBraid), p(PositiveProjection), "braid closures are projections");
    add(p(PositiveProjection), p(StronglyQuasipositive), "positive diagrams are strongly quasipositive");
    add(p(StronglyQuasipositive), p(Quasipositive), "strong quasipositivity");
    add(p(PositiveProjection), s(Cplus, 1), "switch positive crossings");
    add(p(NegativeBraid), p(NegativeProjection), "braid closures are projections");
    add(p(NegativeProjection), p(StronglyQuasinegative), "negative diagrams are strongly quasinegative");
    add(p(StronglyQuasinegative), p(Quasinegative), "strong quasipositivity");
    add(p(NegativeProjection), s(Cminus, 1), "switch negative crossings");
    if conjectures {
        ax.push((s(C, 3), Node::T, "conjecture: height-three towers are topologically slice", true));
        ax.push((s(F, bound), Node::T, "conjecture: the solvable filtration meets in T", true));
    }
    ax
}

impl Lattice {
    pub fn new(bound: u32, conjectures: bool) -> Self {
        let mut raw = vec![Node::T, Node::ALL];
        for f in Family::ALL {
            if let Some(lo) = f.min_index() {
                let hi = if matches!(f, Family::C | Family::Cplus | Family::Cminus) { bound.max(5) } else { bound };
                raw.extend((lo..=hi).map(|n| Node::set(f, n)));
            }
        }
        raw.extend(Predicate::ALL.map(Node::Pred));
        let mut nodes = vec![];
        let mut index = BTreeMap::new();
        for n in raw {
            let c = n.canonical();
            if let std::collections::btree_map::Entry::Vacant(e) = index.entry(c) {
                e.insert(nodes.len());
                nodes.push(c);
            }
        }
        let mut edges = vec![];
        for (a, b, rule, conjectural) in axioms(bound, conjectures) {
            let (Some(&from), Some(&to)) = (index.get(&a.canonical()), index.get(&b.canonical())) else {
                continue;
            };
            if from != to && !edges.iter().any(|e: &Edge| e.from == from && e.to == to) {
                edges.push(Edge { from, to, rule, conjectural });
            }
        }
        let all = index[&Node::ALL];
        for i in 0..nodes.len() {
            if i != all && matches!(nodes[i], Node::Set(..)) {
                edges.push(Edge { from: i, to: all, rule: "every knot", conjectural: false });
            }
        }
        let mut out = vec![vec![]; nodes.len()];
        for (k, e) in edges.iter().enumerate() {
            out[e.from].push(k);
        }
        let mut lat = Lattice { bound, nodes, index, edges, out, reach: vec![] };
        lat.reach = (0..lat.nodes.len()).map(|i| lat.reachable_from(i, true)).collect();
        lat
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Position of the canonical form of `n`; indices beyond the bound are
    /// accepted only when they canonicalise into range.
    pub fn locate(&self, n: Node) -> Result<usize, EngineError> {
        self.index
            .get(&n.canonical())
            .copied()
            .ok_or_else(|| EngineError::UnknownSet(format!("{n} (index bound {})", self.bound)))
    }

    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = &Edge> {
        self.out[i].iter().map(move |&k| &self.edges[k])
    }

    fn reachable_from(&self, i: usize, conjectural: bool) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[i] = true;
        let mut q = VecDeque::from([i]);
        while let Some(x) = q.pop_front() {
            for e in self.out_edges(x) {
                if (conjectural || !e.conjectural) && !seen[e.to] {
                    seen[e.to] = true;
                    q.push_back(e.to);
                }
            }
        }
        seen
    }

    /// `a ⊆ b` in the reflexive-transitive closure.
    pub fn subset_of(&self, a: Node, b: Node) -> Result<bool, EngineError> {
        Ok(self.reach[self.locate(a)?][self.locate(b)?])
    }

    /// Pairs of distinct canonical nodes that contain each other.
    pub fn cycles(&self) -> Vec<(Node, Node)> {
        let mut out = vec![];
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.reach[i][j] && self.reach[j][i] {
                    out.push((self.nodes[i], self.nodes[j]));
                }
            }
        }
        out
    }
}
