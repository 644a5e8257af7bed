use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Variables of a polynomial ring: `n` cyclic coordinates `x0..x{n-1}` and an
/// ordered list of named parameters.
///
/// A space with `n = 0` carries parameters only; constraint systems live there.
#[derive(Clone)]
pub struct VarSpace {
    n: usize,
    params: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarSpace {
    /// Coordinate space with `n >= 2` coordinates.
    pub fn new<S: AsRef<str>>(n: usize, params: &[S]) -> Result<Arc<VarSpace>> {
        if n < 2 {
            return Err(Error::InvalidVarSpace(format!(
                "need at least two coordinates, got {n}"
            )));
        }
        Self::build(n, params)
    }

    /// Parameter-only space (no coordinates).
    pub fn params_only<S: AsRef<str>>(params: &[S]) -> Result<Arc<VarSpace>> {
        Self::build(0, params)
    }

    fn build<S: AsRef<str>>(n: usize, params: &[S]) -> Result<Arc<VarSpace>> {
        let mut index = HashMap::with_capacity(params.len());
        let mut names = Vec::with_capacity(params.len());
        for (i, p) in params.iter().enumerate() {
            let p = p.as_ref();
            if !is_identifier(p) {
                return Err(Error::InvalidVarSpace(format!(
                    "`{p}` is not an identifier"
                )));
            }
            if coordinate_index(p).is_some_and(|c| c < n) {
                return Err(Error::InvalidVarSpace(format!(
                    "parameter `{p}` collides with a coordinate name"
                )));
            }
            if index.insert(p.to_string(), i).is_some() {
                return Err(Error::InvalidVarSpace(format!("duplicate parameter `{p}`")));
            }
            names.push(p.to_string());
        }
        Ok(Arc::new(VarSpace {
            n,
            params: names,
            index,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn param_name(&self, i: usize) -> &str {
        &self.params[i]
    }

    /// Same coordinates, parameters of `self` followed by the ones of `extra`
    /// that are not already present.
    pub fn with_params<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<VarSpace>> {
        let mut params = self.params.clone();
        for p in extra {
            if self.param_index(p.as_ref()).is_none() && !params.iter().any(|q| q == p.as_ref()) {
                params.push(p.as_ref().to_string());
            }
        }
        Self::build(self.n, &params)
    }

    /// Same parameters with a different coordinate count.
    pub fn with_n(&self, n: usize) -> Result<Arc<VarSpace>> {
        if n == 0 {
            Self::params_only(&self.params)
        } else {
            Self::new(n, &self.params)
        }
    }

    /// Drops the listed parameters, keeping the order of the rest.
    pub fn without_params<S: AsRef<str>>(&self, drop: &[S]) -> Result<Arc<VarSpace>> {
        let params: Vec<&String> = self
            .params
            .iter()
            .filter(|p| !drop.iter().any(|d| d.as_ref() == p.as_str()))
            .collect();
        Self::build(self.n, &params)
    }
}

impl PartialEq for VarSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.params == other.params
    }
}

impl Eq for VarSpace {}

impl fmt::Debug for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VarSpace")
            .field("n", &self.n)
            .field("params", &self.params)
            .finish()
    }
}

pub(crate) fn same_space(a: &Arc<VarSpace>, b: &Arc<VarSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `Some(i)` when `name` has the shape `x<digits>` without leading zeros.
pub(crate) fn coordinate_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_n_and_bad_params() {
        assert!(VarSpace::new(1, &["a"]).is_err());
        assert!(VarSpace::new(3, &["x1"]).is_err());
        assert!(VarSpace::new(3, &["a", "a"]).is_err());
        assert!(VarSpace::new(3, &["1a"]).is_err());
        // x5 is not a coordinate when n = 3
        assert!(VarSpace::new(3, &["x5"]).is_ok());
    }

    #[test]
    fn with_params_appends_new_names_only() {
        let vs = VarSpace::new(3, &["A1", "A2"]).unwrap();
        let ext = vs.with_params(&["A2", "lam"]).unwrap();
        assert_eq!(ext.params(), &["A1", "A2", "lam"]);
    }

    #[test]
    fn coordinate_names() {
        assert_eq!(coordinate_index("x0"), Some(0));
        assert_eq!(coordinate_index("x12"), Some(12));
        assert_eq!(coordinate_index("x01"), None);
        assert_eq!(coordinate_index("xa"), None);
    }
}
