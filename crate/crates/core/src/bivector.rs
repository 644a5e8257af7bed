//! Antisymmetric polynomial matrices as Poisson tensor candidates.
//!
//! A [`Bivector`] stores the strict upper triangle `P_ij` (`i < j`); the
//! lower triangle is read as `-P_ji` and the diagonal as zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::det_bareiss;
use crate::polyring::{same_space, Assignment, Poly, Value, VarSpace};

#[derive(Clone, PartialEq, Eq)]
pub struct Bivector {
    vs: Arc<VarSpace>,
    entries: BTreeMap<(usize, usize), Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    vs: Arc<VarSpace>,
    components: Vec<Poly>,
}

/// First nonzero polynomial found by a failed check, with the indices that
/// locate it (a coordinate triple, an entry, or a component).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: Vec<usize>,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    check: String,
    witness: Option<Witness>,
}

impl VerificationReport {
    pub fn pass(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            witness: None,
        }
    }

    pub fn fail(check: impl Into<String>, index: Vec<usize>, poly: Poly) -> Self {
        VerificationReport {
            check: check.into(),
            witness: Some(Witness { index, poly }),
        }
    }

    pub fn check(&self) -> &str {
        &self.check
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// First failing index among `candidates`, in iteration order.
    pub(crate) fn first_nonzero<I>(check: &str, candidates: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        candidates
            .into_iter()
            .find(|(_, p)| !p.is_zero())
            .map_or_else(
                || Self::pass(check),
                |(index, poly)| Self::fail(check, index, poly),
            )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass", self.check),
            Some(w) => write!(f, "{}: FAIL at {:?}: {}", self.check, w.index, w.poly),
        }
    }
}

impl VectorField {
    pub fn new(vs: &Arc<VarSpace>, components: Vec<Poly>) -> Result<Self> {
        if components.len() != vs.n() || components.iter().any(|c| !same_space(c.vs(), vs)) {
            return Err(Error::VarSpaceMismatch);
        }
        Ok(VectorField {
            vs: vs.clone(),
            components,
        })
    }

    pub fn vs(&self) -> &Arc<VarSpace> {
        &self.vs
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }
}

impl Bivector {
    pub fn zero(vs: &Arc<VarSpace>) -> Self {
        Bivector {
            vs: vs.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn vs(&self) -> &Arc<VarSpace> {
        &self.vs
    }

    pub fn n(&self) -> usize {
        self.vs.n()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            })
        }
    }

    /// Sets `{x_i, x_j} = p`; the transposed entry follows by antisymmetry.
    pub fn set(&mut self, i: usize, j: usize, p: Poly) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::RepeatedIndices(vec![i, j]));
        }
        let p = if same_space(p.vs(), &self.vs) {
            p
        } else {
            p.embed(&self.vs)?
        };
        let (key, p) = if i < j { ((i, j), p) } else { ((j, i), -p) };
        if p.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, p);
        }
        Ok(())
    }

    /// `{x_i, x_j}` with antisymmetric extension. Panics on out-of-range indices.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        assert!(i < self.n() && j < self.n(), "index out of range");
        if i < j {
            self.entries
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Poly::zero(&self.vs))
        } else if i > j {
            self.entries
                .get(&(j, i))
                .map_or_else(|| Poly::zero(&self.vs), |p| -p)
        } else {
            Poly::zero(&self.vs)
        }
    }

    /// Nonzero upper-triangle entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.entries.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map_entries<F>(&self, vs: &Arc<VarSpace>, mut f: F) -> Result<Bivector>
    where
        F: FnMut(&Poly) -> Result<Poly>,
    {
        let mut out = Bivector::zero(vs);
        for (&(i, j), p) in &self.entries {
            out.set(i, j, f(p)?)?;
        }
        Ok(out)
    }

    pub fn substitute(&self, assign: &Assignment) -> Result<Bivector> {
        self.map_entries(&self.vs, |p| p.substitute(assign))
    }

    /// Substitutes `assign` and removes the assigned parameters from the
    /// space. Parameters occurring in polynomial values are appended.
    pub fn specialize(&self, assign: &Assignment) -> Result<Bivector> {
        let mut extra: Vec<String> = Vec::new();
        for v in assign.values() {
            if let Value::Poly(p) = v {
                for name in p.vs().params() {
                    if self.vs.param_index(name).is_none() && !extra.contains(name) {
                        extra.push(name.clone());
                    }
                }
            }
        }
        let wide = self.vs.with_params(&extra)?;
        let substituted = self.embed(&wide)?.substitute(assign)?;
        let assigned: Vec<&String> = assign
            .keys()
            .filter(|k| self.vs.param_index(k).is_some())
            .collect();
        let narrow = wide.without_params(&assigned)?;
        substituted.embed(&narrow)
    }

    /// Re-expresses every entry over `target` (same `n`).
    pub fn embed(&self, target: &Arc<VarSpace>) -> Result<Bivector> {
        if target.n() != self.n() {
            return Err(Error::VarSpaceMismatch);
        }
        self.map_entries(target, |p| p.embed(target))
    }

    pub fn scale(&self, c: &BigRational) -> Bivector {
        self.map_entries(&self.vs, |p| Ok(p.scale(c)))
            .expect("scaling keeps the variable space")
    }

    fn check_space(&self, p: &Poly) -> Result<()> {
        if same_space(p.vs(), &self.vs) {
            Ok(())
        } else {
            Err(Error::VarSpaceMismatch)
        }
    }

    /// `{f, g} = sum_{i<j} P_ij (d_i f d_j g - d_j f d_i g)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check_space(f)?;
        self.check_space(g)?;
        let n = self.n();
        let df: Vec<Poly> = (0..n).map(|i| f.partial(i)).collect::<Result<_>>()?;
        let dg: Vec<Poly> = (0..n).map(|i| g.partial(i)).collect::<Result<_>>()?;
        let mut out = Poly::zero(&self.vs);
        for (&(i, j), p) in &self.entries {
            let w = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !w.is_zero() {
                out = &out + &(p * &w);
            }
        }
        Ok(out)
    }

    /// `J_ijk = sum_l (P_il d_l P_jk + P_jl d_l P_ki + P_kl d_l P_ij)`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Result<Poly> {
        for &t in &[i, j, k] {
            self.check_index(t)?;
        }
        if i == j || j == k || i == k {
            return Err(Error::RepeatedIndices(vec![i, j, k]));
        }
        let mut out = Poly::zero(&self.vs);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let target = self.get(b, c);
            if target.is_zero() {
                continue;
            }
            for l in 0..self.n() {
                let pal = self.get(a, l);
                if pal.is_zero() {
                    continue;
                }
                let d = target.partial(l)?;
                if !d.is_zero() {
                    out = &out + &(&pal * &d);
                }
            }
        }
        Ok(out)
    }

    /// Jacobi identity on every coordinate triple; the witness is the lowest
    /// failing triple.
    pub fn is_poisson(&self) -> VerificationReport {
        let n = self.n();
        let triples = (0..n)
            .flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))));
        VerificationReport::first_nonzero(
            "jacobi",
            triples.map(|(i, j, k)| {
                let jac = self.jacobiator(i, j, k).expect("distinct in-range indices");
                (vec![i, j, k], jac)
            }),
        )
    }

    /// Divergence field: component `i` is `2 sum_j d P_ij / d x_j`.
    pub fn modular_field(&self) -> VectorField {
        let n = self.n();
        let two = BigRational::from_integer(2.into());
        let components = (0..n)
            .map(|i| self.modular_component(i).scale(&two))
            .collect();
        VectorField {
            vs: self.vs.clone(),
            components,
        }
    }

    fn modular_component(&self, i: usize) -> Poly {
        let mut acc = Poly::zero(&self.vs);
        for j in 0..self.n() {
            let p = self.get(i, j);
            if !p.is_zero() {
                acc = &acc + &p.partial(j).expect("index in range");
            }
        }
        acc
    }

    /// Unimodularity by the divergence criterion, every component.
    pub fn is_unimodular_div(&self) -> VerificationReport {
        self.is_unimodular_div_with(UnimodularCheck::Full)
    }

    pub fn is_unimodular_div_with(&self, mode: UnimodularCheck) -> VerificationReport {
        let n = match mode {
            UnimodularCheck::Full => self.n(),
            UnimodularCheck::FirstComponent => 1,
        };
        let two = BigRational::from_integer(2.into());
        VerificationReport::first_nonzero(
            "unimodular",
            (0..n).map(|i| (vec![i], self.modular_component(i).scale(&two))),
        )
    }

    /// `f` is a Casimir iff `{x_i, f} = 0` for every coordinate.
    pub fn is_casimir(&self, f: &Poly) -> Result<VerificationReport> {
        self.check_space(f)?;
        let n = self.n();
        let df: Vec<Poly> = (0..n).map(|j| f.partial(j)).collect::<Result<_>>()?;
        let cands = (0..n).map(|i| {
            let mut acc = Poly::zero(&self.vs);
            for (j, d) in df.iter().enumerate() {
                if d.is_zero() || i == j {
                    continue;
                }
                acc = &acc + &(&self.get(i, j) * d);
            }
            (vec![i], acc)
        });
        Ok(VerificationReport::first_nonzero("casimir", cands))
    }

    /// Jacobian Poisson structure: `P_ij = mult * det(e_i; e_j; grad Q_1; ...;
    /// grad Q_{n-2})`.
    pub fn jps_from_casimirs(
        vs: &Arc<VarSpace>,
        casimirs: &[Poly],
        mult: &Poly,
    ) -> Result<Bivector> {
        let n = vs.n();
        if casimirs.len() + 2 != n {
            return Err(Error::CasimirCount {
                expected: n.saturating_sub(2),
                got: casimirs.len(),
            });
        }
        let mult = mult.embed(vs)?;
        let grads: Vec<Vec<Poly>> = casimirs
            .iter()
            .map(|q| {
                let q = q.embed(vs)?;
                (0..n).map(|l| q.partial(l)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let unit = |i: usize| -> Vec<Poly> {
            (0..n)
                .map(|l| {
                    if l == i {
                        Poly::one(vs)
                    } else {
                        Poly::zero(vs)
                    }
                })
                .collect()
        };
        let mut out = Bivector::zero(vs);
        for i in 0..n {
            for j in i + 1..n {
                let mut m = vec![unit(i), unit(j)];
                m.extend(grads.iter().cloned());
                let d = det_bareiss(vs, m)?;
                out.set(i, j, &mult * &d)?;
            }
        }
        Ok(out)
    }

    /// `P_ij P_kl + P_ki P_jl + P_jk P_il` for `(i, j, k, l, m)` the cyclic
    /// rotation of `(0, 1, 2, 3, 4)` ending in `m`.
    pub fn wedge_square_cyclic5(&self, m: usize) -> Result<Poly> {
        if self.n() != 5 {
            return Err(Error::Dimension {
                expected: 5,
                got: self.n(),
            });
        }
        self.check_index(m)?;
        let [i, j, k, l] = [1, 2, 3, 4].map(|t| (m + t) % 5);
        let p = |a, b| self.get(a, b);
        Ok(&(&(&p(i, j) * &p(k, l)) + &(&p(k, i) * &p(j, l))) + &(&p(j, k) * &p(i, l)))
    }
}

/// Which components of the modular field the divergence check inspects.
/// For H-invariant tensors the first component decides the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnimodularCheck {
    Full,
    FirstComponent,
}

impl fmt::Debug for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

/// Line-oriented text form.
impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n())?;
        writeln!(f, "params = {}", self.vs.params().join(", "))?;
        for (&(i, j), p) in &self.entries {
            writeln!(f, "{{x{i}, x{j}}} = {p}")?;
        }
        Ok(())
    }
}

// JSON interchange -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct BivectorJson {
    pub n: usize,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub poly: String,
}

impl Bivector {
    pub fn to_json_value(&self) -> BivectorJson {
        BivectorJson {
            n: self.n(),
            params: self.vs.params().to_vec(),
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), p)| EntryJson {
                    i,
                    j,
                    poly: p.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json_value(v: &BivectorJson) -> Result<Bivector> {
        let vs = VarSpace::new(v.n, &v.params)?;
        let mut out = Bivector::zero(&vs);
        for e in &v.entries {
            if e.i >= e.j {
                return Err(Error::Input(format!(
                    "entry ({}, {}) must have i < j",
                    e.i, e.j
                )));
            }
            if out.entries.contains_key(&(e.i, e.j)) {
                return Err(Error::Input(format!("duplicate entry ({}, {})", e.i, e.j)));
            }
            let p = Poly::parse(&e.poly, &vs)?;
            out.set(e.i, e.j, p)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Bivector> {
        let v: BivectorJson =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize) -> Arc<VarSpace> {
        VarSpace::new(n, &["k"]).unwrap()
    }

    fn p(vs: &Arc<VarSpace>, s: &str) -> Poly {
        Poly::parse(s, vs).unwrap()
    }

    #[test]
    fn antisymmetric_storage() {
        let v = vs(3);
        let mut b = Bivector::zero(&v);
        b.set(2, 0, p(&v, "x1")).unwrap();
        assert_eq!(b.get(0, 2), p(&v, "-x1"));
        assert_eq!(b.get(2, 0), p(&v, "x1"));
        assert!(b.get(1, 1).is_zero());
        assert!(b.set(1, 1, p(&v, "x0")).is_err());
        assert!(b.set(0, 3, p(&v, "x0")).is_err());
    }

    #[test]
    fn bracket_of_coordinates_is_entry() {
        let v = vs(4);
        let mut b = Bivector::zero(&v);
        b.set(0, 1, p(&v, "k^2*x0*x1 - x2*x3")).unwrap();
        b.set(1, 3, p(&v, "x0^2")).unwrap();
        let x = |i| Poly::coord(&v, i).unwrap();
        assert_eq!(b.bracket(&x(0), &x(1)).unwrap(), p(&v, "k^2*x0*x1 - x2*x3"));
        assert_eq!(b.bracket(&x(3), &x(1)).unwrap(), p(&v, "-x0^2"));
        let f = p(&v, "x0*x3 + k*x1^2");
        assert!(b.bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn jacobiator_errors() {
        let b = Bivector::zero(&vs(3));
        assert!(matches!(
            b.jacobiator(0, 0, 1),
            Err(Error::RepeatedIndices(_))
        ));
        assert!(b.jacobiator(0, 1, 3).is_err());
        assert!(b.jacobiator(0, 1, 2).unwrap().is_zero());
        assert!(b.is_poisson().passed());
    }

    #[test]
    fn modular_field_of_square_entry() {
        let v = VarSpace::new(2, &[] as &[&str]).unwrap();
        let mut b = Bivector::zero(&v);
        b.set(0, 1, p(&v, "x0^2")).unwrap();
        let field = b.modular_field();
        assert!(field.components()[0].is_zero());
        assert_eq!(field.components()[1], p(&v, "-4*x0"));
        let r = b.is_unimodular_div();
        assert!(!r.passed());
        assert_eq!(r.witness().unwrap().index, vec![1]);
        // the first-component shortcut is only sound for H-invariant tensors
        assert!(b
            .is_unimodular_div_with(UnimodularCheck::FirstComponent)
            .passed());
    }

    #[test]
    fn constant_bivectors_are_unimodular() {
        let v = vs(4);
        let mut b = Bivector::zero(&v);
        b.set(0, 1, p(&v, "3*k")).unwrap();
        b.set(2, 3, p(&v, "-1/2")).unwrap();
        assert!(b.is_unimodular_div().passed());
        assert!(b.is_poisson().passed());
    }

    #[test]
    fn casimir_of_constant() {
        let v = vs(3);
        let mut b = Bivector::zero(&v);
        b.set(0, 1, p(&v, "x2^2")).unwrap();
        assert!(b.is_casimir(&p(&v, "7*k")).unwrap().passed());
        assert!(!b.is_casimir(&p(&v, "x0")).unwrap().passed());
    }

    #[test]
    fn jps_counts_casimirs() {
        let v = vs(4);
        let one = Poly::one(&v);
        assert!(matches!(
            Bivector::jps_from_casimirs(&v, &[p(&v, "x0")], &one),
            Err(Error::CasimirCount {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn jps_linear_casimir_gives_constant_entries() {
        let v = VarSpace::new(3, &[] as &[&str]).unwrap();
        let b = Bivector::jps_from_casimirs(&v, &[p(&v, "x0 + x1 + x2")], &Poly::one(&v)).unwrap();
        assert_eq!(b.get(0, 1), p(&v, "1"));
        assert_eq!(b.get(1, 2), p(&v, "1"));
        assert_eq!(b.get(0, 2), p(&v, "-1"));
        assert!(b.is_poisson().passed());
    }

    #[test]
    fn wedge_requires_five() {
        let b = Bivector::zero(&vs(4));
        assert!(matches!(
            b.wedge_square_cyclic5(0),
            Err(Error::Dimension { .. })
        ));
        let b = Bivector::zero(&vs(5));
        assert!(b.wedge_square_cyclic5(4).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"n": 3, "params": ["a"], "entries": [{"i": 0, "j": 1, "poly": "a*x2^2"}]}"#;
        let b = Bivector::from_json(text).unwrap();
        assert_eq!(Bivector::from_json(&b.to_json()).unwrap(), b);
        assert!(
            Bivector::from_json(r#"{"n": 3, "entries": [{"i": 1, "j": 0, "poly": "x0"}]}"#)
                .is_err()
        );
        assert!(
            Bivector::from_json(r#"{"n": 3, "entries": [{"i": 0, "j": 1, "poly": "y"}]}"#).is_err()
        );
        assert!(Bivector::from_json(r#"{"n": 3, "entries": [{"i": 0"#).is_err());
    }
}
