//! Parametric knot families (twist knots, twisted Whitehead doubles, odd
//! pretzels) and a small atlas of named knots.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::builder::{braid_closure, pretzel};
use crate::certificate::CrossingChangeCertificate;
use crate::diagram::Diagram;
use crate::error::{AlgebraError, Error, Result};
use crate::moves::DEFAULT_R3_BUDGET;
use crate::seifert::SeifertMatrix;

/// Sign of the top-left entry of a clasp-`+` genus-one family matrix. The
/// other setting makes every `+` clasp knot have `|Delta(-1)| = 4n - 1`,
/// which is never a square for `n > 0`.
pub const CLASP_SIGN_CONVENTION: i64 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clasp {
    Plus,
    Minus,
}

impl Clasp {
    pub fn value(self) -> i64 {
        match self {
            Clasp::Plus => 1,
            Clasp::Minus => -1,
        }
    }

    pub fn flip(self) -> Clasp {
        match self {
            Clasp::Plus => Clasp::Minus,
            Clasp::Minus => Clasp::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Clasp::Plus => "+",
            Clasp::Minus => "-",
        }
    }
}

impl fmt::Display for Clasp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Clasp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(Clasp::Plus),
            "-" | "minus" | "-1" => Ok(Clasp::Minus),
            _ => Err(Error::Usage(format!("clasp sign must be + or -, got {s:?}"))),
        }
    }
}

impl Serialize for Clasp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Clasp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Twist { n: i64, clasp: Clasp },
    WhiteheadDouble { n: i64, clasp: Clasp, companion: String },
    Pretzel { p: i64, q: i64, r: i64 },
    Atlas { name: String },
}

impl FamilySpec {
    pub fn name(&self) -> String {
        match self {
            FamilySpec::Twist { n, clasp } => format!("T{clasp}_{n}"),
            FamilySpec::WhiteheadDouble { n, clasp, companion } => format!("Wh{clasp}_{n}({companion})"),
            FamilySpec::Pretzel { p, q, r } => format!("P({p},{q},{r})"),
            FamilySpec::Atlas { name } => name.clone(),
        }
    }
}

/// A generated knot: always a Seifert matrix, and a diagram where one is
/// constructed.
#[derive(Debug, Clone)]
pub struct Generated {
    pub spec: FamilySpec,
    pub diagram: Option<Diagram>,
    pub matrix: SeifertMatrix,
}

pub fn generate(spec: &FamilySpec) -> Result<Generated> {
    match spec {
        FamilySpec::Twist { n, clasp } => {
            let (d, m) = twist_knot(*n, *clasp);
            Ok(Generated { spec: spec.clone(), diagram: Some(d), matrix: m })
        }
        FamilySpec::WhiteheadDouble { n, clasp, .. } => {
            Ok(Generated { spec: spec.clone(), diagram: None, matrix: whitehead_double_matrix(*n, *clasp) })
        }
        FamilySpec::Pretzel { p, q, r } => {
            let (d, m) = pretzel_knot(*p, *q, *r)?;
            Ok(Generated { spec: spec.clone(), diagram: Some(d), matrix: m })
        }
        FamilySpec::Atlas { name } => {
            let a = atlas(name)?;
            Ok(Generated { spec: spec.clone(), diagram: Some(a.diagrams[0].clone()), matrix: a.matrix })
        }
    }
}

pub fn twist_matrix(n: i64, clasp: Clasp) -> SeifertMatrix {
    SeifertMatrix::new(vec![vec![CLASP_SIGN_CONVENTION * clasp.value(), 1], vec![0, n]])
        .expect("genus-one family matrix is unimodular")
}

/// Twist knot with `n` full twists: a column of `2n` half twists followed by
/// a two-crossing clasp. Crossings `0..2|n|` are the twists, the last two the
/// clasp.
pub fn twist_knot(n: i64, clasp: Clasp) -> (Diagram, SeifertMatrix) {
    let c = clasp.value();
    let d = pretzel(&[2 * n, c, c]).expect("twist knot diagram is valid");
    (d, twist_matrix(n, clasp))
}

/// Seifert form of the `n`-twisted Whitehead double; it does not depend on
/// the companion.
pub fn whitehead_double_matrix(n: i64, clasp: Clasp) -> SeifertMatrix {
    twist_matrix(n, clasp)
}

pub fn pretzel_matrix(p: i64, q: i64, r: i64) -> Result<SeifertMatrix> {
    if [p, q, r].iter().any(|x| x % 2 == 0) {
        return Err(AlgebraError::OutOfRange(format!("pretzel parameters must be odd, got ({p},{q},{r})")).into());
    }
    Ok(SeifertMatrix::new(vec![vec![(p + q) / 2, (q + 1) / 2], vec![(q - 1) / 2, (q + r) / 2]])?)
}

pub fn pretzel_knot(p: i64, q: i64, r: i64) -> Result<(Diagram, SeifertMatrix)> {
    let m = pretzel_matrix(p, q, r)?;
    Ok((pretzel(&[p, q, r])?, m))
}

/// Crossing-change witnesses for a twist knot: one clasp crossing, and for
/// `n != 0` every other twist crossing.
pub fn twist_certificates(n: i64, clasp: Clasp) -> Vec<CrossingChangeCertificate> {
    let (d, _) = twist_knot(n, clasp);
    let twists = 2 * n.unsigned_abs() as usize;
    let mut out = vec![];
    let mut sets = vec![vec![twists]];
    if n != 0 {
        sets.push((0..twists).step_by(2).collect());
    }
    for set in sets {
        let red = crate::moves::reduce_to_unknot(&d.change_crossings(&set), DEFAULT_R3_BUDGET);
        if red.unknotted {
            out.push(CrossingChangeCertificate { pd: d.pd_i64(), switches: set, trace: red.trace });
        }
    }
    out
}

pub const ATLAS_NAMES: [&str; 4] = ["unknot", "trefoil_rh", "trefoil_lh", "figure_eight"];

#[derive(Debug, Clone)]
pub struct AtlasEntry {
    pub name: &'static str,
    /// Distinct diagrams of the same knot.
    pub diagrams: Vec<Diagram>,
    pub matrix: SeifertMatrix,
    pub certificates: Vec<CrossingChangeCertificate>,
}

fn pd(code: &[[i64; 4]]) -> Diagram {
    let v: Vec<Vec<i64>> = code.iter().map(|t| t.to_vec()).collect();
    Diagram::from_pd(&v).expect("atlas diagram is valid")
}

pub fn atlas(name: &str) -> Result<AtlasEntry> {
    let trefoil = || {
        vec![
            pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]),
            braid_closure(3, &[(0, 1), (0, 1), (0, 1), (1, 1)]).expect("stabilized trefoil"),
        ]
    };
    let (name, diagrams): (&'static str, Vec<Diagram>) = match name {
        "unknot" => ("unknot", vec![Diagram::unknot(), pd(&[[1, 2, 2, 1]])]),
        "trefoil_rh" => ("trefoil_rh", trefoil()),
        "trefoil_lh" => ("trefoil_lh", trefoil().iter().map(Diagram::mirror).collect()),
        "figure_eight" => (
            "figure_eight",
            vec![
                pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
                braid_closure(3, &[(0, 1), (1, -1), (0, 1), (1, -1)]).expect("figure-eight braid"),
            ],
        ),
        other => return Err(Error::Usage(format!("unknown atlas knot {other:?}"))),
    };
    let matrix = SeifertMatrix::from_diagram(&diagrams[0])?;
    let certificates = [Some(1), Some(-1)]
        .into_iter()
        .filter_map(|s| CrossingChangeCertificate::search_signed(&diagrams[0], s, 1, DEFAULT_R3_BUDGET))
        .collect();
    Ok(AtlasEntry { name, diagrams, matrix, certificates })
}
