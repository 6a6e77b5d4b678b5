//! Fact store and the monotone membership fixpoint.

use std::collections::VecDeque;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::lattice::{Family, Lattice, Node};
use crate::certificate::CrossingChangeCertificate;
use crate::error::{EngineError, Error, Result};
use crate::families::Clasp;
use crate::invariants::{alexander_polynomial, arf, fox_milnor, jump_points, levine_tristram, simplest_between};
use crate::seifert::SeifertMatrix;
use crate::tower::{CassonTower, PositivityCertificate, SignClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    Member,
    NonMember,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Justification {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl Justification {
    pub fn rule(rule: &str) -> Self {
        Justification { rule: rule.to_string(), premises: vec![], citation: None, tags: vec![] }
    }

    pub fn cited(rule: &str, citation: &str) -> Self {
        Justification { citation: Some(citation.to_string()), ..Self::rule(rule) }
    }

    fn describe(&self) -> String {
        let mut s = self.rule.clone();
        if let Some(c) = &self.citation {
            s.push_str(&format!(" ({c})"));
        }
        if !self.tags.is_empty() {
            s.push_str(&format!(" [{}]", self.tags.join(", ")));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub knot: String,
    pub set: Node,
    pub polarity: Polarity,
    pub justification: Justification,
}

impl Fact {
    pub fn mirrored(&self, knot: &str) -> Fact {
        Fact { knot: knot.to_string(), set: self.set.mirror(), ..self.clone() }
    }
}

/// Invariant signs taken on trust from the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum External {
    TauNegative,
    TauPositive,
    SNegative,
    SPositive,
    StronglyQuasipositiveNontrivial,
    StronglyQuasinegativeNontrivial,
    /// d-invariant argument against `P_0` (`+`) or `N_0` (`-`)
    DInvariantPositive,
    DInvariantNegative,
}

/// Non-membership evidence, each carrying its witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    ArfNonzero {
        arf: u8,
    },
    NotAlgebraicallySlice {
        alexander: String,
    },
    /// Levine-Tristram signature at `exp(2 pi i q)`.
    LtPositive {
        q: String,
        value: i64,
    },
    LtNegative {
        q: String,
        value: i64,
    },
    External {
        external: External,
        citation: String,
    },
}

/// Membership evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    CrossingChange {
        certificate: CrossingChangeCertificate,
    },
    /// Switching crossings of one sign reaches a knot asserted to be slice
    /// rather than the unknot.
    SliceTarget {
        sign: Clasp,
        citation: String,
    },
    Tower {
        tower: CassonTower,
    },
    Positivity {
        certificate: PositivityCertificate,
    },
    Curated {
        set: Node,
        citation: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub set: Node,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub set: Node,
    pub verdict: Verdict,
    #[serde(default)]
    pub conjectural: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Deduction {
    pub knot: String,
    pub entries: Vec<Entry>,
}

impl Deduction {
    pub fn verdict(&self, set: Node) -> Verdict {
        let c = set.canonical();
        self.entries.iter().find(|e| e.set == c).map_or(Verdict::Unknown, |e| e.verdict)
    }

    pub fn entry(&self, set: Node) -> Option<&Entry> {
        let c = set.canonical();
        self.entries.iter().find(|e| e.set == c)
    }

    pub fn render(&self, trace: bool) -> String {
        let mut s = format!("knot {}\n", self.knot);
        for e in &self.entries {
            let tag = if e.conjectural { " (conjectural)" } else { "" };
            s.push_str(&format!("  {:<16} {}{tag}\n", e.set.to_string(), e.verdict));
            if trace && e.verdict != Verdict::Unknown {
                s.push_str(&render_trace(&e.trace, "      "));
            }
        }
        s
    }
}

fn render_trace(t: &[TraceStep], indent: &str) -> String {
    t.iter().map(|st| format!("{indent}{}: {}\n", st.set, st.reason)).collect()
}

/// Append-only fact store over a fixed lattice.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    pub lattice: Lattice,
    pub conjectures: bool,
    facts: Vec<Fact>,
}

pub const DEFAULT_BOUND: u32 = 8;

impl KnowledgeBase {
    pub fn new(bound: u32, conjectures: bool) -> Self {
        KnowledgeBase { lattice: Lattice::new(bound, conjectures), conjectures, facts: vec![] }
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn add_fact(&mut self, fact: Fact) -> Result<usize> {
        self.lattice.locate(fact.set)?;
        if let Some(p) = fact.justification.premises.iter().find(|&&p| p >= self.facts.len()) {
            return Err(EngineError::BadCertificate(format!("premise {p} does not exist yet")).into());
        }
        self.facts.push(fact);
        Ok(self.facts.len() - 1)
    }

    fn seed(&mut self, knot: &str, set: Node, polarity: Polarity, j: Justification) -> Result<usize> {
        self.add_fact(Fact { knot: knot.to_string(), set, polarity, justification: j })
    }

    pub fn register_obstruction(&mut self, knot: &str, o: &Obstruction) -> Result<Vec<usize>> {
        use External::*;
        let s = Node::set;
        let (set, j) = match o {
            Obstruction::ArfNonzero { arf } => {
                if *arf != 1 {
                    return Err(EngineError::BadCertificate(format!("Arf witness {arf} is not 1")).into());
                }
                (s(Family::F, 0), Justification::rule("Arf invariant is 1; 0-solvable knots have Arf 0"))
            }
            Obstruction::NotAlgebraicallySlice { alexander } => (
                s(Family::F, 1),
                Justification::rule(&format!(
                    "Alexander polynomial {alexander} is not f(t)f(1/t); 1-solvable knots are algebraically slice"
                )),
            ),
            Obstruction::LtPositive { q, value } | Obstruction::LtNegative { q, value } => {
                let positive = matches!(o, Obstruction::LtPositive { .. });
                if (*value > 0) != positive || *value == 0 {
                    return Err(
                        EngineError::BadCertificate(format!("signature witness {value} has the wrong sign")).into()
                    );
                }
                let set = if positive { s(Family::P, 0) } else { s(Family::N, 0) };
                (set, Justification::rule(&format!("Levine-Tristram signature {value} at q = {q}")))
            }
            Obstruction::External { external, citation } => {
                if citation.trim().is_empty() {
                    return Err(EngineError::BadCertificate("external obstruction without citation".into()).into());
                }
                let set = match external {
                    TauNegative | SNegative | DInvariantPositive => s(Family::P, 0),
                    TauPositive | SPositive | DInvariantNegative => s(Family::N, 0),
                    StronglyQuasipositiveNontrivial => s(Family::N, 0),
                    StronglyQuasinegativeNontrivial => s(Family::P, 0),
                };
                let label = serde_json::to_value(external).unwrap().as_str().unwrap().to_string();
                (set, Justification::cited(&format!("external: {label}"), citation))
            }
        };
        Ok(vec![self.seed(knot, set, Polarity::NonMember, j)?])
    }

    pub fn register_certificate(&mut self, knot: &str, c: &Certificate) -> Result<Vec<usize>> {
        let s = Node::set;
        match c {
            Certificate::CrossingChange { certificate } => {
                certificate
                    .verify()
                    .map_err(|e| EngineError::BadCertificate(format!("crossing changes do not unknot: {e}")))?;
                let (p, n) = certificate.switch_counts();
                let set = match (p, n) {
                    (_, 0) => s(Family::Cplus, 1),
                    (0, _) => s(Family::Cminus, 1),
                    _ => Node::ALL,
                };
                let j = Justification::rule(&format!(
                    "unknotted by switching crossings {:?} ({p} positive, {n} negative)",
                    certificate.switches
                ));
                Ok(vec![self.seed(knot, set, Polarity::Member, j)?])
            }
            Certificate::SliceTarget { sign, citation } => {
                if citation.trim().is_empty() {
                    return Err(EngineError::BadCertificate("slice target without citation".into()).into());
                }
                let set = if *sign == Clasp::Plus { s(Family::Cplus, 1) } else { s(Family::Cminus, 1) };
                let mut j = Justification::cited(&format!("switching {sign} crossings gives a slice knot"), citation);
                j.tags.push("slice-target".into());
                Ok(vec![self.seed(knot, set, Polarity::Member, j)?])
            }
            Certificate::Tower { tower } => {
                tower.validate()?;
                let h = tower.height() as u32;
                let fam = match tower.sign_class() {
                    SignClass::Positive => Family::Cplus,
                    SignClass::Negative => Family::Cminus,
                    SignClass::Mixed => Family::C,
                };
                let j = Justification::rule(&format!("bounds a Casson tower of height {}", tower.height()));
                Ok(vec![self.seed(knot, s(fam, h), Polarity::Member, j)?])
            }
            Certificate::Positivity { certificate } => {
                certificate.check()?;
                let fam = if certificate.sign == Clasp::Plus { Family::P } else { Family::N };
                let j = Justification::rule(&format!(
                    "blow-up at {} kinks with generator genera {:?}",
                    certificate.b2, certificate.generator_genera
                ));
                Ok(vec![self.seed(knot, s(fam, certificate.asserted_level as u32), Polarity::Member, j)?])
            }
            Certificate::Curated { set, citation } => {
                if citation.trim().is_empty() {
                    return Err(EngineError::BadCertificate("curated fact without citation".into()).into());
                }
                Ok(vec![self.seed(knot, *set, Polarity::Member, Justification::cited("curated", citation))?])
            }
        }
    }

    /// A smoothly slice knot lies in every set.
    pub fn register_slice(&mut self, knot: &str, citation: &str) -> Result<Vec<usize>> {
        let mut out = vec![];
        for f in [Family::Cplus, Family::Cminus] {
            out.push(self.seed(knot, Node::set(f, 5), Polarity::Member, Justification::cited("slice", citation))?);
        }
        Ok(out)
    }

    /// Compute Arf, Fox-Milnor and Levine-Tristram signs from a Seifert
    /// matrix and register whatever they obstruct.
    pub fn register_invariants(&mut self, knot: &str, v: &SeifertMatrix) -> Result<Vec<usize>> {
        let mut out = vec![];
        if arf(v) == 1 {
            out.extend(self.register_obstruction(knot, &Obstruction::ArfNonzero { arf: 1 })?);
        }
        let delta = alexander_polynomial(v);
        if !fox_milnor(&delta)? {
            out.extend(
                self.register_obstruction(knot, &Obstruction::NotAlgebraicallySlice { alexander: delta.to_string() })?,
            );
        }
        let (mut pos, mut neg) = (None, None);
        for q in lt_sample_points(v) {
            let Ok(val) = levine_tristram(v, &q) else { continue };
            if val > 0 && pos.is_none() {
                pos = Some((q.clone(), val));
            }
            if val < 0 && neg.is_none() {
                neg = Some((q, val));
            }
        }
        if let Some((q, value)) = pos {
            out.extend(self.register_obstruction(knot, &Obstruction::LtPositive { q: q.to_string(), value })?);
        }
        if let Some((q, value)) = neg {
            out.extend(self.register_obstruction(knot, &Obstruction::LtNegative { q: q.to_string(), value })?);
        }
        Ok(out)
    }

    /// Untwisted Whitehead double: if `knot` lies in `C_k` then `double`
    /// lies in `C^clasp_{k+1}`. Uses the largest `k` currently deducible.
    pub fn whitehead_lift(&mut self, knot: &str, double: &str, clasp: Clasp) -> Result<usize> {
        let d = self.deduce(knot)?;
        let k = (2..=5).rev().find(|&k| d.verdict(Node::set(Family::C, k)) == Verdict::Member).unwrap_or(1);
        let premises: Vec<usize> =
            self.facts.iter().enumerate().filter(|(_, f)| f.knot == knot).map(|(i, _)| i).collect();
        let fam = if clasp == Clasp::Plus { Family::Cplus } else { Family::Cminus };
        let mut j = Justification::rule(&format!("Whitehead double with a {clasp} clasp of a knot in C_{k}"));
        j.premises = premises;
        self.seed(double, Node::set(fam, k + 1), Polarity::Member, j)
    }

    /// Propagate membership up and non-membership down the inclusion graph.
    pub fn deduce(&self, knot: &str) -> Result<Deduction> {
        let lat = &self.lattice;
        let seeds: Vec<(usize, &Fact)> =
            self.facts.iter().filter(|f| f.knot == knot).map(|f| (lat.locate(f.set).unwrap(), f)).collect();
        let member = self.propagate(&seeds, Polarity::Member);
        let non = self.propagate(&seeds, Polarity::NonMember);
        let mut entries = vec![];
        for i in 0..lat.len() {
            let set = lat.nodes[i];
            match (&member[i], &non[i]) {
                (Some(m), Some(n)) => {
                    return Err(Error::Engine(EngineError::Contradiction {
                        knot: knot.to_string(),
                        set: set.to_string(),
                        member_trace: render_trace(&m.0, "    "),
                        non_member_trace: render_trace(&n.0, "    "),
                    }))
                }
                (Some((t, c)), None) => {
                    entries.push(Entry { set, verdict: Verdict::Member, conjectural: *c, trace: t.clone() })
                }
                (None, Some((t, c))) => {
                    entries.push(Entry { set, verdict: Verdict::NonMember, conjectural: *c, trace: t.clone() })
                }
                (None, None) => {
                    entries.push(Entry { set, verdict: Verdict::Unknown, conjectural: false, trace: vec![] })
                }
            }
        }
        Ok(Deduction { knot: knot.to_string(), entries })
    }

    /// Breadth-first search from the seeds, first along proven edges only and
    /// then, for what remains, allowing conjectural ones.
    fn propagate(&self, seeds: &[(usize, &Fact)], pol: Polarity) -> Vec<Option<(Vec<TraceStep>, bool)>> {
        let lat = &self.lattice;
        let n = lat.len();
        // predecessor edge list per node, per direction
        let mut rev: Vec<Vec<usize>> = vec![vec![]; n];
        for (k, e) in lat.edges.iter().enumerate() {
            rev[e.to].push(k);
        }
        let mut result: Vec<Option<(Vec<TraceStep>, bool)>> = vec![None; n];
        if pol == Polarity::Member {
            let all = lat.locate(Node::ALL).unwrap();
            result[all] = Some((vec![TraceStep { set: Node::ALL, reason: "every knot".into() }], false));
        }
        for allow_conj in [false, true] {
            let mut q = VecDeque::new();
            for (i, f) in seeds {
                if f.polarity != pol || result[*i].is_some() {
                    continue;
                }
                let conj = f.justification.tags.iter().any(|t| t == "conjectural");
                if conj && !allow_conj {
                    continue;
                }
                let step = TraceStep { set: f.set, reason: f.justification.describe() };
                result[*i] = Some((vec![step], conj));
                q.push_back(*i);
            }
            // restart from every decided node so second pass extends the first
            if allow_conj {
                q = (0..n).filter(|&i| result[i].is_some()).collect();
            }
            while let Some(x) = q.pop_front() {
                let (trace, conj) = result[x].clone().unwrap();
                let next: Vec<(usize, &super::lattice::Edge)> = match pol {
                    Polarity::Member => lat.out_edges(x).map(|e| (e.to, e)).collect(),
                    Polarity::NonMember => rev[x].iter().map(|&k| (lat.edges[k].from, &lat.edges[k])).collect(),
                };
                for (y, e) in next {
                    if result[y].is_some() || (e.conjectural && !allow_conj) {
                        continue;
                    }
                    let mut t = trace.clone();
                    let rel = match pol {
                        Polarity::Member => format!("{} ⊆ {}", lat.nodes[x], lat.nodes[y]),
                        Polarity::NonMember => format!("{} ⊆ {}", lat.nodes[y], lat.nodes[x]),
                    };
                    t.push(TraceStep { set: lat.nodes[y], reason: format!("{rel} ({})", e.rule) });
                    result[y] = Some((t, conj || e.conjectural));
                    q.push_back(y);
                }
            }
        }
        result
    }
}

/// Simple rational points well inside each arc of the upper unit half-circle
/// between unit-circle Alexander roots.
pub fn lt_sample_points(v: &SeifertMatrix) -> Vec<BigRational> {
    let mut cuts: Vec<f64> = jump_points(v).into_iter().filter(|&q| q > 0.0 && q <= 0.5).collect();
    cuts.insert(0, 0.0);
    cuts.push(0.5);
    let mut out = vec![];
    for w in cuts.windows(2) {
        let pad = (w[1] - w[0]) / 8.0;
        let q = simplest_between(w[0] + pad, w[1] - pad);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out.push(BigRational::new(1.into(), 2.into()));
    out
}
