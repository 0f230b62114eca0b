use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gain::GainSignedGraph;
use crate::group::Integers;
use crate::signed::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Shi,
    Catalan,
    Linial,
    SignSymmetricShi,
    ShiThreshold,
    LinialThreshold,
    CatalanThreshold,
    GeneralizedThreshold,
    CustomDeformation,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Shi,
        Family::Catalan,
        Family::Linial,
        Family::SignSymmetricShi,
        Family::ShiThreshold,
        Family::LinialThreshold,
        Family::CatalanThreshold,
        Family::GeneralizedThreshold,
        Family::CustomDeformation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Shi => "shi",
            Family::Catalan => "catalan",
            Family::Linial => "linial",
            Family::SignSymmetricShi => "sign-symmetric-shi",
            Family::ShiThreshold => "shi-threshold",
            Family::LinialThreshold => "linial-threshold",
            Family::CatalanThreshold => "catalan-threshold",
            Family::GeneralizedThreshold => "generalized-threshold",
            Family::CustomDeformation => "custom-deformation",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

/// Which signs the links of a custom deformation carry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignPattern {
    /// +e_ij: deformations of the braid arrangement.
    #[default]
    Positive,
    /// −e_ij only.
    Negative,
    /// ±e_ij.
    Both,
    /// ±e_ij plus a negative loop at every vertex.
    BothWithLoops,
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "+" => Ok(SignPattern::Positive),
            "negative" | "-" => Ok(SignPattern::Negative),
            "both" | "+-" => Ok(SignPattern::Both),
            "both-with-loops" => Ok(SignPattern::BothWithLoops),
            _ => Err(Error::Invalid(format!("unknown sign pattern {s:?}"))),
        }
    }
}

/// A named family on `n` coordinates. `k` and `l` give the gain window
/// [−k, l] for the generalized threshold and custom families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub k: i64,
    pub l: i64,
    pub pattern: SignPattern,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, k: 0, l: 0, pattern: SignPattern::Positive }
    }

    pub fn window(mut self, k: i64, l: i64) -> Self {
        self.k = k;
        self.l = l;
        self
    }

    pub fn pattern(mut self, pattern: SignPattern) -> Self {
        self.pattern = pattern;
        self
    }
}

/// Build the gain signed graph of a family. Links come in (i, j, gain, sign)
/// order with the reference orientation, followed by loops and half edges.
pub fn generate_family(spec: &FamilySpec) -> Result<GainSignedGraph<Integers>> {
    use Sign::*;
    if spec.n == 0 {
        return Err(Error::Invalid("a family needs n >= 1".into()));
    }
    let window = || -> Result<Vec<i64>> {
        if -spec.k > spec.l {
            return Err(Error::Invalid(format!("empty gain window [-{}, {}]", spec.k, spec.l)));
        }
        Ok((-spec.k..=spec.l).collect())
    };
    let (gains, signs, loops, halves): (Vec<i64>, Vec<Sign>, bool, Vec<i64>) = match spec.family {
        Family::Shi => (vec![0, 1], vec![Plus], false, vec![]),
        Family::Catalan => (vec![-1, 0, 1], vec![Plus], false, vec![]),
        Family::Linial => (vec![1], vec![Plus], false, vec![]),
        Family::SignSymmetricShi => (vec![0, 1], vec![Plus, Minus], false, vec![]),
        Family::ShiThreshold => (vec![0, 1], vec![Minus], false, vec![]),
        Family::LinialThreshold => (vec![1], vec![Minus], false, vec![0, 1]),
        Family::CatalanThreshold => (vec![-1, 0, 1], vec![Minus], false, vec![]),
        Family::GeneralizedThreshold => (window()?, vec![Minus], false, vec![]),
        Family::CustomDeformation => {
            let (signs, loops) = match spec.pattern {
                SignPattern::Positive => (vec![Plus], false),
                SignPattern::Negative => (vec![Minus], false),
                SignPattern::Both => (vec![Plus, Minus], false),
                SignPattern::BothWithLoops => (vec![Plus, Minus], true),
            };
            (window()?, signs, loops, vec![])
        }
    };
    let mut u = GainSignedGraph::new(Integers, spec.n);
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            for &g in &gains {
                for &s in &signs {
                    u.add_link(i, j, s, g.into())?;
                }
            }
        }
    }
    for i in 0..spec.n {
        if loops {
            for &g in &gains {
                u.add_link(i, i, Minus, g.into())?;
            }
        }
        for &g in &halves {
            u.add_half(i, g.into())?;
        }
    }
    Ok(u)
}
