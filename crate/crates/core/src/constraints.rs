//! Polynomial systems in the parameters of a generic tensor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bivector::{Bivector, VerificationReport};
use crate::error::{Error, Result};
use crate::heisenberg::GenericTensor;
use crate::linalg::rank;
use crate::polyring::{Assignment, Monomial, Poly, Value, VarSpace};

/// Nonzero, primitive, sign-normalized parameter polynomials, deduplicated
/// and sorted in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    vs: Arc<VarSpace>,
    polys: Vec<Poly>,
}

impl ConstraintSystem {
    /// Normalizes `polys` into a system over the parameter names `params`.
    pub fn new<S: AsRef<str>>(params: &[S], polys: impl IntoIterator<Item = Poly>) -> Result<Self> {
        let vs = VarSpace::params_only(params)?;
        let polys = polys
            .into_iter()
            .map(|p| {
                if !p.is_param_only() {
                    return Err(Error::InvalidArgument(format!(
                        "constraint `{p}` involves coordinates"
                    )));
                }
                p.embed(&vs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(vs, polys))
    }

    pub fn parse<S: AsRef<str>>(params: &[S], polys: &[&str]) -> Result<Self> {
        let vs = VarSpace::params_only(params)?;
        let parsed = polys
            .iter()
            .map(|s| Poly::parse(s, &vs))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(vs, parsed))
    }

    fn normalize(vs: Arc<VarSpace>, polys: Vec<Poly>) -> Self {
        let set: BTreeSet<Poly> = polys
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.primitive())
            .collect();
        ConstraintSystem {
            vs,
            polys: set.into_iter().collect(),
        }
    }

    pub fn normalized(&self) -> Self {
        Self::normalize(self.vs.clone(), self.polys.clone())
    }

    pub fn vs(&self) -> &Arc<VarSpace> {
        &self.vs
    }

    pub fn params(&self) -> &[String] {
        self.vs.params()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Whether both systems span the same rational vector space of
    /// polynomials.
    pub fn span_equivalent(&self, other: &ConstraintSystem) -> Result<bool> {
        Ok(self.outside_span(other)?.is_none() && other.outside_span(self)?.is_none())
    }

    /// First polynomial of `other` that is not a rational linear combination
    /// of `self`.
    pub fn outside_span<'a>(&self, other: &'a ConstraintSystem) -> Result<Option<&'a Poly>> {
        if self.params() != other.params() {
            return Err(Error::ParamSpaceMismatch(
                self.params().to_vec(),
                other.params().to_vec(),
            ));
        }
        let basis: BTreeMap<&Monomial, usize> = self
            .polys
            .iter()
            .chain(&other.polys)
            .flat_map(|p| p.terms().map(|(m, _)| m))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let row = |p: &Poly| -> Vec<BigRational> {
            let mut row = vec![BigRational::zero(); basis.len()];
            for (m, c) in p.terms() {
                row[basis[m]] = c.clone();
            }
            row
        };
        let mut rows: Vec<Vec<BigRational>> = self.polys.iter().map(row).collect();
        let base = rank(&rows);
        for p in &other.polys {
            rows.push(row(p));
            if rank(&rows) > base {
                return Ok(Some(p));
            }
            rows.pop();
        }
        Ok(None)
    }

    /// Substitutes `assign` into every polynomial; passes iff all vanish.
    ///
    /// Values may contain parameters of their own (a curve parameter, say);
    /// these are kept symbolic. Every parameter of the system needs a value.
    pub fn verify_assignment(&self, assign: &Assignment) -> Result<VerificationReport> {
        if let Some(missing) = self.params().iter().find(|p| !assign.contains_key(*p)) {
            return Err(Error::MissingAssignment(missing.clone()));
        }
        let mut names: Vec<String> = self.params().to_vec();
        for v in assign.values() {
            if let Value::Poly(p) = v {
                if !p.is_param_only() {
                    return Err(Error::InvalidArgument(format!(
                        "assigned value `{p}` involves coordinates"
                    )));
                }
                for name in p.vs().params() {
                    if !names.contains(name) {
                        names.push(name.clone());
                    }
                }
            }
        }
        let union = VarSpace::params_only(&names)?;
        let mut candidates = Vec::with_capacity(self.polys.len());
        for (k, p) in self.polys.iter().enumerate() {
            let value = p.embed(&union)?.substitute(assign)?;
            candidates.push((vec![k], value));
        }
        Ok(VerificationReport::first_nonzero("constraints", candidates))
    }

    pub fn to_json(&self) -> String {
        let dto = ConstraintSystemJson {
            params: self.params().to_vec(),
            polys: self.polys.iter().map(Poly::to_string).collect(),
        };
        serde_json::to_string_pretty(&dto).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: ConstraintSystemJson =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        let polys: Vec<&str> = dto.polys.iter().map(String::as_str).collect();
        Self::parse(&dto.params, &polys)
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "params = {}", self.params().join(", "))?;
        for p in &self.polys {
            writeln!(f, "{p} = 0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ConstraintSystemJson {
    params: Vec<String>,
    polys: Vec<String>,
}

/// Coefficients of every coordinate monomial of every Jacobiator
/// `J_ijk`, `i < j < k`.
pub fn jacobi_constraints(g: &GenericTensor) -> Result<ConstraintSystem> {
    bivector_jacobi_constraints(&g.bivector)
}

pub fn bivector_jacobi_constraints(b: &Bivector) -> Result<ConstraintSystem> {
    let params_vs = VarSpace::params_only(b.vs().params())?;
    let n = b.n();
    let mut polys = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let jac = b.jacobiator(i, j, k)?;
                polys.extend(jac.coordinate_coefficients(&params_vs)?.into_values());
            }
        }
    }
    Ok(ConstraintSystem::normalize(params_vs, polys))
}
