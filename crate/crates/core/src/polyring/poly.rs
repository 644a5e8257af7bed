use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::varspace::{same_space, VarSpace};
use crate::error::{Error, Result};

/// Sparse polynomial with rational coefficients in the coordinates and
/// (Laurent) parameters of a [`VarSpace`].
#[derive(Clone)]
pub struct Poly {
    vs: Arc<VarSpace>,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Residue class of the weighted degree `sum i * a_i mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauDegree {
    Residue(usize),
    Mixed,
}

/// Range of total coordinate degrees; `zero` is set for the zero polynomial,
/// whose range is reported as `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XDegree {
    pub min: u32,
    pub max: u32,
    pub zero: bool,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero(vs: &Arc<VarSpace>) -> Poly {
        Poly {
            vs: vs.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vs: &Arc<VarSpace>) -> Poly {
        Self::constant(vs, BigRational::one())
    }

    pub fn constant(vs: &Arc<VarSpace>, c: BigRational) -> Poly {
        Self::monomial(vs, Monomial::one(vs.n()), c)
    }

    pub fn from_i64(vs: &Arc<VarSpace>, c: i64) -> Poly {
        Self::constant(vs, BigRational::from_integer(c.into()))
    }

    pub fn monomial(vs: &Arc<VarSpace>, m: Monomial, c: BigRational) -> Poly {
        debug_assert_eq!(m.coords.len(), vs.n());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            vs: vs.clone(),
            terms,
        }
    }

    /// The coordinate function `x_i`.
    pub fn coord(vs: &Arc<VarSpace>, i: usize) -> Result<Poly> {
        if i >= vs.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: vs.n(),
            });
        }
        Ok(Self::monomial(
            vs,
            Monomial::coordinate(vs.n(), i),
            BigRational::one(),
        ))
    }

    pub fn param(vs: &Arc<VarSpace>, name: &str) -> Result<Poly> {
        let p = vs.param_index(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        let m = Monomial::from_parts(vec![0; vs.n()], vec![(p as u32, 1)]);
        Ok(Self::monomial(vs, m, BigRational::one()))
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(vs: &Arc<VarSpace>, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(vs);
        for (m, c) in terms {
            debug_assert_eq!(m.coords.len(), vs.n());
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vs(&self) -> &Arc<VarSpace> {
        &self.vs
    }

    pub fn n(&self) -> usize {
        self.vs.n()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_param_only(&self) -> bool {
        self.terms.keys().all(Monomial::is_param_only)
    }

    fn check_space(&self, other: &Poly) -> Result<()> {
        if same_space(&self.vs, &other.vs) {
            Ok(())
        } else {
            Err(Error::VarSpaceMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_space(other)?;
        let mut out = Poly::zero(&self.vs);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vs);
        }
        Poly {
            vs: self.vs.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vs);
        }
        Poly {
            vs: self.vs.clone(),
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vs);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_i`; parameters are constants.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        let mut out = Poly::zero(&self.vs);
        for (m, c) in &self.terms {
            let e = m.coords[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.coords[i] -= 1;
            out.terms.insert(d, c * BigRational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Applies `sigma^s`: every `x_i` becomes `x_{i+s mod n}`.
    pub fn sigma_apply(&self, s: i64) -> Poly {
        let n = self.n();
        if n == 0 {
            return self.clone();
        }
        let s = s.rem_euclid(n as i64) as usize;
        if s == 0 {
            return self.clone();
        }
        Poly {
            vs: self.vs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(s), c.clone()))
                .collect(),
        }
    }

    /// Common weighted degree of all monomials; the zero polynomial has residue 0.
    pub fn tau_degree(&self) -> TauDegree {
        let mut it = self.terms.keys().map(Monomial::tau_degree);
        let Some(first) = it.next() else {
            return TauDegree::Residue(0);
        };
        if it.all(|d| d == first) {
            TauDegree::Residue(first)
        } else {
            TauDegree::Mixed
        }
    }

    pub fn x_degree(&self) -> XDegree {
        let mut degs = self.terms.keys().map(Monomial::coord_degree);
        let Some(first) = degs.next() else {
            return XDegree {
                min: 0,
                max: 0,
                zero: true,
            };
        };
        let (min, max) = degs.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
        XDegree {
            min,
            max,
            zero: false,
        }
    }

    pub fn is_x_homogeneous(&self) -> bool {
        let d = self.x_degree();
        d.min == d.max
    }

    /// Re-expresses `self` over `target`, matching parameters by name.
    ///
    /// Coordinates carry over when both spaces have the same `n`; a polynomial
    /// without coordinates may move between spaces of any `n`.
    pub fn embed(&self, target: &Arc<VarSpace>) -> Result<Poly> {
        if same_space(&self.vs, target) {
            return Ok(self.clone());
        }
        let same_n = self.n() == target.n();
        if !same_n && !self.is_param_only() {
            return Err(Error::VarSpaceMismatch);
        }
        let map: Vec<Option<usize>> = self
            .vs
            .params()
            .iter()
            .map(|p| target.param_index(p))
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let coords = if same_n {
                m.coords.clone()
            } else {
                vec![0; target.n()]
            };
            let mut params = Vec::with_capacity(m.params.len());
            for &(p, e) in &m.params {
                let q = map[p as usize].ok_or_else(|| Error::UnknownVariable {
                    name: self.vs.param_name(p as usize).to_string(),
                    pos: 0,
                })?;
                params.push((q as u32, e));
            }
            out.add_term(Monomial::from_parts(coords, params), c.clone());
        }
        Ok(out)
    }

    /// Groups terms by coordinate monomial; each coefficient is a polynomial in
    /// the parameters only, expressed over `params_vs`.
    pub fn coordinate_coefficients(
        &self,
        params_vs: &Arc<VarSpace>,
    ) -> Result<BTreeMap<Vec<u32>, Poly>> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut params = Vec::with_capacity(m.params.len());
            for &(p, e) in &m.params {
                let name = self.vs.param_name(p as usize);
                let q = params_vs
                    .param_index(name)
                    .ok_or_else(|| Error::UnknownVariable {
                        name: name.to_string(),
                        pos: 0,
                    })?;
                params.push((q as u32, e));
            }
            let pm = Monomial::from_parts(vec![0; params_vs.n()], params);
            out.entry(m.coords.clone())
                .or_insert_with(|| Poly::zero(params_vs))
                .add_term(pm, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Scales to integer coefficients with content 1 and a positive leading
    /// coefficient. The zero polynomial is returned unchanged.
    pub fn primitive(&self) -> Poly {
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        let den_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut factor = BigRational::from_integer(den_lcm);
        let cleared_gcd = self
            .terms
            .values()
            .map(|c| (c * &factor).to_integer())
            .fold(BigInt::zero(), |g, v| g.gcd(&v));
        factor /= BigRational::from_integer(cleared_gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Parameters may carry negative exponents, so the quotient is
    /// taken in the Laurent ring over the parameters.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        self.check_space(divisor)?;
        if divisor.is_zero() {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(Poly::zero(&self.vs)));
        }
        // Any exact quotient has parameter exponents inside this box; leaving
        // it proves a remainder and bounds the loop.
        let (a_lo, a_hi) = self.param_ranges();
        let (b_lo, b_hi) = divisor.param_ranges();
        let np = self.vs.num_params();
        let lo: Vec<i64> = (0..np).map(|p| a_lo[p] - b_hi[p]).collect();
        let hi: Vec<i64> = (0..np).map(|p| a_hi[p] - b_lo[p]).collect();

        let (lm_b, lc_b) = divisor.leading_term().expect("nonzero divisor");
        let (lm_b, lc_b) = (lm_b.clone(), lc_b.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vs);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let Some(qm) = lm_r.div(&lm_b) else {
                return Ok(None);
            };
            let in_box = (0..np).all(|p| {
                let e = qm.param_exp(p) as i64;
                lo[p] <= e && e <= hi[p]
            });
            if !in_box {
                return Ok(None);
            }
            let qc = lc_r / &lc_b;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Per-parameter minimum and maximum exponent over all terms (absent = 0).
    fn param_ranges(&self) -> (Vec<i64>, Vec<i64>) {
        let np = self.vs.num_params();
        let mut lo = vec![i64::MAX; np];
        let mut hi = vec![i64::MIN; np];
        for m in self.terms.keys() {
            for p in 0..np {
                let e = m.param_exp(p) as i64;
                lo[p] = lo[p].min(e);
                hi[p] = hi[p].max(e);
            }
        }
        (lo, hi)
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.vs, &other.vs) && self.terms == other.terms
    }
}

impl Eq for Poly {}

/// Canonical order: compares term by term from the leading term down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let factors = monomial_factors(&self.vs, m);
            if factors.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str("*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn monomial_factors(vs: &VarSpace, m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &e) in m.coords.iter().enumerate() {
        match e {
            0 => {}
            1 => out.push(format!("x{i}")),
            _ => out.push(format!("x{i}^{e}")),
        }
    }
    for &(p, e) in &m.params {
        let name = vs.param_name(p as usize);
        if e == 1 {
            out.push(name.to_string());
        } else {
            out.push(format!("{name}^{e}"));
        }
    }
    out
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live over different variable spaces; use
        /// the `try_` methods to get an error instead.
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("variable space mismatch")
            }
        }

        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vs: self.vs.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
