//! Casson towers and gropes as labelled rooted trees.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::TowerError;
use crate::families::Clasp;

/// One kinky handle. Its children are the kinky handles attached along its
/// standard curves, one per kink, positives first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CassonTower {
    pub pos: usize,
    pub neg: usize,
    #[serde(default)]
    pub children: Vec<CassonTower>,
}

/// One surface stage; `2 * genus` children, one per symplectic basis curve,
/// in (meridian, longitude) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grope {
    pub genus: usize,
    #[serde(default)]
    pub children: Vec<Grope>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Positive,
    Negative,
    Mixed,
}

/// Evidence that blowing up the base kinks yields a definite 4-manifold:
/// `b2` blow-ups, each generator of genus equal to the kink count of the
/// second-stage handle above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub sign: Clasp,
    pub b2: usize,
    pub generator_genera: Vec<usize>,
    pub asserted_level: usize,
}

impl CassonTower {
    pub fn leaf(pos: usize, neg: usize) -> Self {
        CassonTower { pos, neg, children: vec![] }
    }

    pub fn node(pos: usize, neg: usize, children: Vec<CassonTower>) -> Self {
        CassonTower { pos, neg, children }
    }

    /// Height-`h` tower with a single kink of sign `s` at every stage.
    pub fn single_kink(h: usize, s: Clasp) -> Self {
        let (p, n) = if s == Clasp::Plus { (1, 0) } else { (0, 1) };
        let mut t = CassonTower::leaf(p, n);
        for _ in 1..h {
            t = CassonTower::node(p, n, vec![t]);
        }
        t
    }

    pub fn kinks(&self) -> usize {
        self.pos + self.neg
    }

    pub fn validate(&self) -> Result<(), TowerError> {
        let mut depth = None;
        self.validate_at(&mut vec![], &mut depth)
    }

    fn validate_at(&self, path: &mut Vec<usize>, depth: &mut Option<usize>) -> Result<(), TowerError> {
        if self.kinks() == 0 {
            return Err(TowerError::NoKinks { path: path.clone() });
        }
        if self.children.is_empty() {
            let d = path.len() + 1;
            if *depth.get_or_insert(d) != d {
                return Err(TowerError::RaggedLeaves);
            }
            return Ok(());
        }
        if self.children.len() != self.kinks() {
            return Err(TowerError::ChildCount {
                path: path.clone(),
                found: self.children.len(),
                expected: self.kinks(),
            });
        }
        for (i, c) in self.children.iter().enumerate() {
            path.push(i);
            c.validate_at(path, depth)?;
            path.pop();
        }
        Ok(())
    }

    /// Number of stages. Assumes a valid tower.
    pub fn height(&self) -> usize {
        1 + self.children.first().map_or(0, |c| c.height())
    }

    pub fn sign_class(&self) -> SignClass {
        match (self.pos, self.neg) {
            (_, 0) => SignClass::Positive,
            (0, _) => SignClass::Negative,
            _ => SignClass::Mixed,
        }
    }

    pub fn stage(&self, k: usize) -> Vec<&CassonTower> {
        let mut level = vec![self];
        for _ in 1..k {
            level = level.iter().flat_map(|n| n.children.iter()).collect();
        }
        level
    }

    /// Kink totals of the stage-`k` handles, as value -> multiplicity.
    pub fn kink_multiset(&self, k: usize) -> Result<BTreeMap<usize, usize>, TowerError> {
        self.validate()?;
        let h = self.height();
        if k == 0 || k > h {
            return Err(TowerError::StageOutOfRange { stage: k, height: h });
        }
        Ok(multiset(self.stage(k).iter().map(|n| n.kinks())))
    }

    /// Size of the standard set of curves of the whole tower: kinks summed
    /// over the terminal stage.
    pub fn standard_curve_count(&self) -> Result<usize, TowerError> {
        self.validate()?;
        Ok(self.stage(self.height()).iter().map(|n| n.kinks()).sum())
    }

    /// Tubing each kink of a handle into its standard curve yields a surface
    /// of genus equal to the kink count; both curves of the `i`-th symplectic
    /// pair bound the grope coming from the `i`-th attached handle.
    pub fn to_grope(&self) -> Result<Grope, TowerError> {
        self.validate()?;
        Ok(self.convert())
    }

    fn convert(&self) -> Grope {
        let children = self
            .children
            .iter()
            .flat_map(|c| {
                let g = c.convert();
                [g.clone(), g]
            })
            .collect();
        Grope { genus: self.kinks(), children }
    }

    pub fn blow_up_certificate(&self) -> Result<PositivityCertificate, TowerError> {
        self.validate()?;
        let h = self.height();
        if h < 2 {
            return Err(TowerError::TooShort(h));
        }
        let sign = match self.sign_class() {
            SignClass::Positive => Clasp::Plus,
            SignClass::Negative => Clasp::Minus,
            SignClass::Mixed => return Err(TowerError::MixedSigns),
        };
        Ok(PositivityCertificate {
            sign,
            b2: self.kinks(),
            generator_genera: self.children.iter().map(|c| c.kinks()).collect(),
            asserted_level: h - 2,
        })
    }

    /// The tower bounded by the untwisted Whitehead double of a knot that
    /// bounds `self`: one clasp kink below a copy of `self`.
    pub fn whitehead_lift(&self, clasp: Clasp) -> CassonTower {
        let (p, n) = if clasp == Clasp::Plus { (1, 0) } else { (0, 1) };
        CassonTower::node(p, n, vec![self.clone()])
    }
}

impl PositivityCertificate {
    pub fn check(&self) -> Result<(), TowerError> {
        if self.generator_genera.len() != self.b2 || self.b2 == 0 {
            return Err(TowerError::ChildCount { path: vec![], found: self.generator_genera.len(), expected: self.b2 });
        }
        if let Some(i) = self.generator_genera.iter().position(|&g| g == 0) {
            return Err(TowerError::NoKinks { path: vec![i] });
        }
        Ok(())
    }
}

impl Grope {
    pub fn validate(&self) -> Result<(), TowerError> {
        let mut depth = None;
        self.validate_at(&mut vec![], &mut depth)
    }

    fn validate_at(&self, path: &mut Vec<usize>, depth: &mut Option<usize>) -> Result<(), TowerError> {
        if self.genus == 0 {
            return Err(TowerError::ZeroGenus { path: path.clone() });
        }
        if self.children.is_empty() {
            let d = path.len() + 1;
            if *depth.get_or_insert(d) != d {
                return Err(TowerError::RaggedLeaves);
            }
            return Ok(());
        }
        if self.children.len() != 2 * self.genus {
            return Err(TowerError::ChildCount {
                path: path.clone(),
                found: self.children.len(),
                expected: 2 * self.genus,
            });
        }
        for (i, c) in self.children.iter().enumerate() {
            path.push(i);
            c.validate_at(path, depth)?;
            path.pop();
        }
        Ok(())
    }

    pub fn height(&self) -> usize {
        1 + self.children.first().map_or(0, |c| c.height())
    }

    pub fn stage(&self, k: usize) -> Vec<&Grope> {
        let mut level = vec![self];
        for _ in 1..k {
            level = level.iter().flat_map(|n| n.children.iter()).collect();
        }
        level
    }

    pub fn genus_multiset(&self, k: usize) -> BTreeMap<usize, usize> {
        multiset(self.stage(k).iter().map(|g| g.genus))
    }
}

fn multiset(it: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for x in it {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}
