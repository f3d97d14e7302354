use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DimError;

/// Default mechanical base dimensions.
pub const DEFAULT_BASE: [&str; 3] = ["L", "T", "M"];

pub fn default_base() -> Vec<String> {
    DEFAULT_BASE.iter().map(|s| s.to_string()).collect()
}

/// Exponent vector of a quantity over an ordered list of base dimensions.
///
/// Multiplying two quantities adds their vectors, dividing subtracts them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<Rational64>);

impl DimVector {
    pub fn new(exponents: Vec<Rational64>) -> Self {
        DimVector(exponents)
    }

    pub fn from_ints(exponents: &[i64]) -> Self {
        DimVector(exponents.iter().map(|&e| Rational64::from_integer(e)).collect())
    }

    pub fn dimensionless(len: usize) -> Self {
        DimVector(vec![Rational64::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[Rational64] {
        &self.0
    }

    pub fn is_dimensionless(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, exponent: Rational64) -> DimVector {
        DimVector(self.0.iter().map(|e| e * exponent).collect())
    }

    pub fn powi(&self, exponent: i64) -> DimVector {
        self.pow(Rational64::from_integer(exponent))
    }

    pub fn inv(&self) -> DimVector {
        DimVector(self.0.iter().map(|e| -e).collect())
    }

    /// Renders the vector as a formula over `base`, e.g. `L^3 T^-2 M^-1`.
    pub fn render(&self, base: &[String]) -> String {
        let parts: Vec<String> = base
            .iter()
            .zip(&self.0)
            .filter(|(_, e)| !e.is_zero())
            .map(|(name, e)| {
                if e.is_one() {
                    name.clone()
                } else if e.is_integer() {
                    format!("{name}^{}", e.numer())
                } else {
                    format!("{name}^({}/{})", e.numer(), e.denom())
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    fn check_len(&self, other: &DimVector) {
        assert_eq!(
            self.0.len(),
            other.0.len(),
            "dimension vectors over different bases"
        );
    }
}

impl Mul for &DimVector {
    type Output = DimVector;

    fn mul(self, rhs: &DimVector) -> DimVector {
        self.check_len(rhs);
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Mul for DimVector {
    type Output = DimVector;

    fn mul(self, rhs: DimVector) -> DimVector {
        &self * &rhs
    }
}

impl Div for &DimVector {
    type Output = DimVector;

    fn div(self, rhs: &DimVector) -> DimVector {
        self.check_len(rhs);
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Div for DimVector {
    type Output = DimVector;

    fn div(self, rhs: DimVector) -> DimVector {
        &self / &rhs
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A named quantity variable with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantityVar {
    pub name: String,
    pub dim: DimVector,
}

impl QuantityVar {
    pub fn new(name: impl Into<String>, dim: DimVector) -> Self {
        QuantityVar {
            name: name.into(),
            dim,
        }
    }

    /// Builds a variable by parsing `formula` over `base`.
    pub fn parse(name: impl Into<String>, formula: &str, base: &[String]) -> Result<Self, DimError> {
        Ok(QuantityVar::new(name, parse_dim(formula, base)?))
    }
}

/// Serialized form of a variable inside problem files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantitySpec {
    pub name: String,
    pub dim: String,
}

const SUPERSCRIPTS: [(char, char); 13] = [
    ('⁰', '0'),
    ('¹', '1'),
    ('²', '2'),
    ('³', '3'),
    ('⁴', '4'),
    ('⁵', '5'),
    ('⁶', '6'),
    ('⁷', '7'),
    ('⁸', '8'),
    ('⁹', '9'),
    ('⁻', '-'),
    ('⁺', '+'),
    ('ᐟ', '/'),
];

fn superscript_value(c: char) -> Option<char> {
    SUPERSCRIPTS.iter().find(|(s, _)| *s == c).map(|(_, v)| *v)
}

/// Parses a dimensional formula such as `L T^-2 M`, `L^3 T^-2 M^-1`,
/// `L^(1/2)`, `T⁻²` or `1` into an exponent vector over `base`.
///
/// Factors are separated by whitespace, `*` or `·`; repeated names accumulate.
pub fn parse_dim(formula: &str, base: &[String]) -> Result<DimVector, DimError> {
    let mut exps = vec![Rational64::zero(); base.len()];
    let normalized: String = formula
        .chars()
        .map(|c| if c == '*' || c == '·' { ' ' } else { c })
        .collect();
    let trimmed = normalized.trim();
    if trimmed.is_empty() {
        return Err(DimError::Malformed {
            formula: formula.to_string(),
            reason: "empty formula".into(),
        });
    }
    if trimmed == "1" {
        return Ok(DimVector(exps));
    }

    for token in trimmed.split_whitespace() {
        let (name, exp) = split_factor(token).map_err(|reason| DimError::Malformed {
            formula: formula.to_string(),
            reason,
        })?;
        let idx = base
            .iter()
            .position(|b| b == &name)
            .ok_or_else(|| DimError::UnknownBase {
                name: name.clone(),
                base: base.to_vec(),
            })?;
        exps[idx] += exp;
    }
    Ok(DimVector(exps))
}

fn split_factor(token: &str) -> Result<(String, Rational64), String> {
    let (name, raw_exp) = if let Some((name, exp)) = token.split_once('^') {
        (name.to_string(), exp.to_string())
    } else if let Some(pos) = token.find(|c| superscript_value(c).is_some()) {
        let exp: String = token[pos..]
            .chars()
            .map(|c| superscript_value(c).ok_or_else(|| format!("bad superscript in `{token}`")))
            .collect::<Result<_, _>>()?;
        (token[..pos].to_string(), exp)
    } else {
        (token.to_string(), "1".to_string())
    };

    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(format!("bad dimension name in `{token}`"));
    }
    let exp_str = raw_exp
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim();
    Ok((name, parse_rational(exp_str).ok_or_else(|| format!("bad exponent in `{token}`"))?))
}

fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational64::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
    }
}
