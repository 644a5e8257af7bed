use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Value assigned to a parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(BigRational),
    Poly(Poly),
}

impl From<BigRational> for Value {
    fn from(r: BigRational) -> Self {
        Value::Rational(r)
    }
}

impl From<Poly> for Value {
    fn from(p: Poly) -> Self {
        Value::Poly(p)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Rational(BigRational::from_integer(v.into()))
    }
}

/// Parameter name to value.
pub type Assignment = BTreeMap<String, Value>;

impl Poly {
    /// Replaces parameters by values and expands.
    ///
    /// Polynomial values are re-expressed over `self`'s variable space by name.
    /// A parameter that occurs with a negative exponent needs an invertible
    /// value: a nonzero rational, or a single term without coordinates.
    /// Names not declared in the space are ignored.
    pub fn substitute(&self, assign: &Assignment) -> Result<Poly> {
        let vs = self.vs().clone();
        let np = vs.num_params();
        let mut values: Vec<Option<Poly>> = vec![None; np];
        for (name, v) in assign {
            let Some(p) = vs.param_index(name) else {
                continue;
            };
            values[p] = Some(match v {
                Value::Rational(r) => Poly::constant(&vs, r.clone()),
                Value::Poly(q) => q.embed(&vs)?,
            });
        }

        let mut powers: HashMap<(usize, i32), Poly> = HashMap::new();
        let mut out = Poly::zero(&vs);
        for (m, c) in self.raw_terms() {
            let mut kept = Vec::new();
            let mut factor: Option<Poly> = None;
            for &(p, e) in m.param_exps() {
                let p = p as usize;
                let Some(val) = &values[p] else {
                    kept.push((p as u32, e));
                    continue;
                };
                let pw = match powers.get(&(p, e)) {
                    Some(pw) => pw.clone(),
                    None => {
                        let pw = power(val, e, vs.param_name(p))?;
                        powers.insert((p, e), pw.clone());
                        pw
                    }
                };
                factor = Some(match factor {
                    None => pw,
                    Some(f) => &f * &pw,
                });
            }
            let base = Monomial::from_parts(m.coord_exps().to_vec(), kept);
            match factor {
                None => out.add_term(base, c.clone()),
                Some(f) => {
                    for (fm, fc) in f.raw_terms() {
                        out.add_term(base.mul(fm), c * fc);
                    }
                }
            }
        }
        Ok(out)
    }
}

fn power(val: &Poly, e: i32, name: &str) -> Result<Poly> {
    if e >= 0 {
        return Ok(val.pow(e as u32));
    }
    let inv = invert(val, name)?;
    Ok(inv.pow(e.unsigned_abs()))
}

fn invert(val: &Poly, name: &str) -> Result<Poly> {
    if val.is_zero() {
        return Err(Error::DivisionByZero(name.to_string()));
    }
    if val.num_terms() != 1 {
        return Err(Error::NotInvertible(name.to_string()));
    }
    let (m, c) = val.leading_term().expect("one term");
    if !m.is_param_only() {
        return Err(Error::NotInvertible(name.to_string()));
    }
    let inv_m = Monomial::from_parts(
        vec![0; val.n()],
        m.param_exps().iter().map(|&(p, e)| (p, -e)).collect(),
    );
    Ok(Poly::monomial(val.vs(), inv_m, c.recip()))
}
