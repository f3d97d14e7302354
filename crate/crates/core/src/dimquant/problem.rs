use serde::{Deserialize, Serialize};

use super::{default_base, DimError, DimMatrix, QuantitySpec, QuantityVar};

/// On-disk problem definition:
///
/// ```json
/// { "base": ["L","T","M"], "target": {"name":"T","dim":"T"},
///   "args": [{"name":"m1","dim":"M"}, ...], "symmetric": ["m1","m2"] }
/// ```
///
/// `base` defaults to `L, T, M`. `symmetric` is optional; see
/// [`ProblemFile::symmetric_indices`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default = "default_base")]
    pub base: Vec<String>,
    pub target: QuantitySpec,
    pub args: Vec<QuantitySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<Vec<String>>,
}

impl ProblemFile {
    pub fn to_matrix(&self) -> Result<DimMatrix, DimError> {
        let target = QuantityVar::parse(&self.target.name, &self.target.dim, &self.base)?;
        let args = self
            .args
            .iter()
            .map(|a| QuantityVar::parse(&a.name, &a.dim, &self.base))
            .collect::<Result<Vec<_>, _>>()?;
        DimMatrix::new(self.base.clone(), target, args)
    }

    /// Indices of the interchangeable arguments. When `symmetric` is absent,
    /// the largest group (at least two) of arguments sharing one dimension is
    /// used, earliest group first on ties; no such group means none.
    pub fn symmetric_indices(&self, m: &DimMatrix) -> Result<Vec<usize>, DimError> {
        if let Some(names) = &self.symmetric {
            return names
                .iter()
                .map(|n| m.arg_index(n).ok_or_else(|| DimError::UnknownVariable(n.clone())))
                .collect();
        }
        let mut best: Vec<usize> = Vec::new();
        for (i, a) in m.args().iter().enumerate() {
            let group: Vec<usize> = (0..m.args().len())
                .filter(|&j| m.args()[j].dim == a.dim)
                .collect();
            if group[0] == i && group.len() >= 2 && group.len() > best.len() {
                best = group;
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_infers_masses() {
        let json = r#"{ "base": ["L","T","M"], "target": {"name":"T","dim":"T"},
            "args": [{"name":"m1","dim":"M"},{"name":"m2","dim":"M"},
                     {"name":"d","dim":"L"},{"name":"G","dim":"L^3 T^-2 M^-1"}] }"#;
        let p: ProblemFile = serde_json::from_str(json).unwrap();
        let m = p.to_matrix().unwrap();
        assert_eq!(p.symmetric_indices(&m).unwrap(), vec![0, 1]);
    }

    #[test]
    fn explicit_symmetric_names() {
        let json = r#"{ "target": {"name":"T","dim":"T"},
            "args": [{"name":"m1","dim":"M"},{"name":"m2","dim":"M"}],
            "symmetric": ["m2", "zz"] }"#;
        let p: ProblemFile = serde_json::from_str(json).unwrap();
        let m = p.to_matrix().unwrap();
        assert_eq!(
            p.symmetric_indices(&m),
            Err(DimError::UnknownVariable("zz".into()))
        );
    }
}
