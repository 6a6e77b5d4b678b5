//! Checkable witnesses: crossing changes that unknot a diagram.

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::DiagramError;
use crate::moves::{reduce_to_unknot, replay, Move};

/// Switching `switches` in `pd` and then applying `trace` yields the
/// crossingless diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingChangeCertificate {
    pub pd: Vec<Vec<i64>>,
    pub switches: Vec<usize>,
    pub trace: Vec<Move>,
}

impl CrossingChangeCertificate {
    pub fn diagram(&self) -> Result<Diagram, DiagramError> {
        Diagram::from_pd(&self.pd)
    }

    pub fn verify(&self) -> Result<(), DiagramError> {
        let d = self.diagram()?;
        let mut seen = self.switches.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.switches.len() || seen.iter().any(|&i| i >= d.crossing_count()) {
            return Err(DiagramError::InvalidMove("bad crossing index in switch list".into()));
        }
        let end = replay(&d.change_crossings(&self.switches), &self.trace)?;
        if end.crossing_count() != 0 {
            return Err(DiagramError::InvalidMove(format!("trace ends with {} crossings", end.crossing_count())));
        }
        Ok(())
    }

    /// `(positive, negative)` crossings switched, signs read in the original
    /// diagram.
    pub fn switch_counts(&self) -> (usize, usize) {
        let Ok(d) = self.diagram() else { return (0, 0) };
        let pos = self.switches.iter().filter(|&&i| d.sign(i) > 0).count();
        (pos, self.switches.len() - pos)
    }

    /// Search switch sets of increasing size (at most `max_switches`),
    /// preferring sets that use only one sign.
    pub fn search(d: &Diagram, max_switches: usize, r3_budget: usize) -> Option<Self> {
        Self::search_signed(d, None, max_switches, r3_budget)
    }

    /// As [`search`](Self::search), optionally restricted to crossings of one
    /// sign.
    pub fn search_signed(d: &Diagram, only: Option<i8>, max_switches: usize, r3_budget: usize) -> Option<Self> {
        let pool: Vec<usize> = (0..d.crossing_count()).filter(|&i| only.is_none_or(|s| d.sign(i) == s)).collect();
        for k in 0..=max_switches.min(pool.len()) {
            let mut found: Option<Self> = None;
            for idx in subsets(pool.len(), k) {
                let set: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
                let red = reduce_to_unknot(&d.change_crossings(&set), r3_budget);
                if !red.unknotted {
                    continue;
                }
                let cert = CrossingChangeCertificate { pd: d.pd_i64(), switches: set, trace: red.trace };
                let (p, m) = cert.switch_counts();
                if p == 0 || m == 0 {
                    return Some(cert);
                }
                found.get_or_insert(cert);
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_unknots_with_one_switch() {
        let d = Diagram::from_pd(&[vec![4, 2, 5, 1], vec![8, 6, 1, 5], vec![6, 3, 7, 4], vec![2, 7, 3, 8]]).unwrap();
        let c = CrossingChangeCertificate::search(&d, 1, 8).unwrap();
        c.verify().unwrap();
        assert_eq!(c.switches.len(), 1);
        for s in [1, -1] {
            let c = CrossingChangeCertificate::search_signed(&d, Some(s), 1, 8).unwrap();
            c.verify().unwrap();
            assert_eq!(c.switch_counts(), if s > 0 { (1, 0) } else { (0, 1) });
        }
        let mut bad = c.clone();
        bad.trace.pop();
        assert!(bad.verify().is_err());
    }
}
