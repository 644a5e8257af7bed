//! Named structures and printed constraint systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::bivector::Bivector;
use crate::constraints::ConstraintSystem;
use crate::error::{Error, Result};
use crate::heisenberg::generic_invariant_quadratic;
use crate::polyring::{rat, Assignment, Poly, Value, VarSpace};

pub const NAMES: [&str; 7] = ["q3", "q4", "q51", "q52", "linear5", "q6sum", "h3cubic"];

/// Name of the curve parameter of the five-dimensional families.
pub const LAMBDA: &str = "lam";

fn rational_assignment(pairs: &[(&str, &Option<BigRational>)]) -> Assignment {
    pairs
        .iter()
        .filter_map(|(name, v)| {
            v.as_ref()
                .map(|v| (name.to_string(), Value::from(v.clone())))
        })
        .collect()
}

/// `P_01 = A1 x0 x1 + A2 x2^2` and its shifts. `None` keeps a coefficient
/// symbolic.
pub fn q3(a1: Option<BigRational>, a2: Option<BigRational>) -> Result<Bivector> {
    let g = generic_invariant_quadratic(3)?;
    g.bivector
        .specialize(&rational_assignment(&[("A1", &a1), ("A2", &a2)]))
}

/// `{x_i, x_{i+1}} = k^2 x_i x_{i+1} - x_{i+2} x_{i+3}`,
/// `{x_i, x_{i+2}} = k (x_{i+3}^2 - x_{i+1}^2)`, indices mod 4.
pub fn q4(k: Option<BigRational>) -> Result<Bivector> {
    let vs = VarSpace::new(4, &["k"])?;
    let mut b = Bivector::zero(&vs);
    for i in 0..4 {
        let [a, b1, c, d] = [0, 1, 2, 3].map(|t| (i + t) % 4);
        let adjacent = format!("k^2*x{a}*x{b1} - x{c}*x{d}");
        b.set(a, b1, Poly::parse(&adjacent, &vs)?)?;
        if i < 2 {
            let across = format!("k*x{d}^2 - k*x{b1}^2");
            b.set(a, c, Poly::parse(&across, &vs)?)?;
        }
    }
    b.specialize(&rational_assignment(&[("k", &k)]))
}

/// `q1 = (x0^2 + x2^2)/2 + k x1 x3`, `q2 = (x1^2 + x3^2)/2 + k x0 x2`.
pub fn q4_casimirs(k: Option<BigRational>) -> Result<(Poly, Poly)> {
    let vs = VarSpace::new(4, &["k"])?;
    let q1 = Poly::parse("1/2*x0^2 + 1/2*x2^2 + k*x1*x3", &vs)?;
    let q2 = Poly::parse("1/2*x1^2 + 1/2*x3^2 + k*x0*x2", &vs)?;
    let Some(k) = k else {
        return Ok((q1, q2));
    };
    let fixed = vs.without_params(&["k"])?;
    let assign = rational_assignment(&[("k", &Some(k))]);
    Ok((
        q1.substitute(&assign)?.embed(&fixed)?,
        q2.substitute(&assign)?.embed(&fixed)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Q51,
    Q52,
    Linear5,
}

/// Coefficients `A1..A3`, `B1..B3` of the generic five-dimensional tensor as
/// Laurent polynomials in `lam`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFamily {
    pub name: FamilyName,
    pub a: [Poly; 3],
    pub b: [Poly; 3],
}

impl CoefficientFamily {
    pub fn new(name: FamilyName) -> Self {
        let vs = VarSpace::new(5, &[LAMBDA]).expect("valid space");
        let p = |s: &str| Poly::parse(s, &vs).expect("valid literal");
        let (a, b) = match name {
            FamilyName::Q51 => (
                ["-3/5*lam^2 + 1/5*lam^-3", "-2*lam^-1", "lam^-2"],
                ["-1/5*lam^2 - 3/5*lam^-3", "2", "lam"],
            ),
            FamilyName::Q52 => (
                ["2/5*lam^2 + 1/5*lam^-3", "lam", "-lam^-1"],
                ["-1/5*lam^2 + 2/5*lam^-3", "-lam^-2", "1"],
            ),
            FamilyName::Linear5 => (
                ["-1/2*lam + 1", "lam", "-1/2*lam - 1"],
                ["1/2*lam + 1", "-2", "-1/2*lam + 1"],
            ),
        };
        CoefficientFamily {
            name,
            a: a.map(p),
            b: b.map(p),
        }
    }

    pub fn q51() -> Self {
        Self::new(FamilyName::Q51)
    }

    pub fn q52() -> Self {
        Self::new(FamilyName::Q52)
    }

    pub fn linear5() -> Self {
        Self::new(FamilyName::Linear5)
    }

    /// `A1..A3`, `B1..B3` as an assignment.
    pub fn assignment(&self) -> Assignment {
        let names = ["A1", "A2", "A3", "B1", "B2", "B3"];
        names
            .iter()
            .zip(self.a.iter().chain(&self.b))
            .map(|(n, p)| (n.to_string(), Value::Poly(p.clone())))
            .collect()
    }

    /// The family at a fixed nonzero `lam`.
    pub fn at(&self, lam: &BigRational) -> Result<CoefficientFamily> {
        if lam.is_zero() {
            return Err(Error::DivisionByZero(LAMBDA.into()));
        }
        let mut assign = Assignment::new();
        assign.insert(LAMBDA.into(), lam.clone().into());
        let eval = |p: &Poly| p.substitute(&assign);
        Ok(CoefficientFamily {
            name: self.name,
            a: [eval(&self.a[0])?, eval(&self.a[1])?, eval(&self.a[2])?],
            b: [eval(&self.b[0])?, eval(&self.b[1])?, eval(&self.b[2])?],
        })
    }
}

/// Generic five-dimensional tensor at the family's coefficients, with `lam`
/// symbolic or fixed.
pub fn q5(family: &CoefficientFamily, lam: Option<BigRational>) -> Result<Bivector> {
    let family = match &lam {
        Some(l) => family.at(l)?,
        None => family.clone(),
    };
    let g = generic_invariant_quadratic(5)?;
    let b = g.bivector.specialize(&family.assignment())?;
    match lam {
        Some(_) => b.embed(&b.vs().without_params(&[LAMBDA])?),
        None => Ok(b),
    }
}

/// Common space of six coefficients, which must agree.
fn coefficient_space(a: &[Poly; 3], b: &[Poly; 3]) -> Result<Arc<VarSpace>> {
    let vs = a[0].vs().clone();
    if a.iter().chain(b).any(|p| **p.vs() != *vs) {
        return Err(Error::VarSpaceMismatch);
    }
    if a.iter().chain(b).any(|p| !p.is_param_only()) {
        return Err(Error::InvalidArgument(
            "coefficients must not involve coordinates".into(),
        ));
    }
    Ok(vs)
}

/// Quintic Casimir of the five-dimensional tensor with coefficients `a`, `b`.
pub fn k5_casimir(a: &[Poly; 3], b: &[Poly; 3]) -> Result<Poly> {
    let src = coefficient_space(a, b)?;
    let vs = src.with_n(5)?;
    let [a1, a2, a3] = a.clone().map(|p| p.embed(&vs));
    let [b1, b2, b3] = b.clone().map(|p| p.embed(&vs));
    let (a1, a2, a3, b1, b2, b3) = (a1?, a2?, a3?, b1?, b2?, b3?);
    let half = rat(1, 2);
    let c5 = (&a3 * &b3).scale(&rat(-1, 5));
    let c4 = &a1 * &a3;
    let c3 = -(&b1 * &b3);
    let c2 = (&(&a1 * &a2) - &(&b2 * &b3)).scale(&half);
    let c1 = (&(&a2 * &a3) - &(&b1 * &b2)).scale(&half);
    let c0 = &(&(&(&a1 * &a1) - &(&b1 * &b1)) - &(&a1 * &b1)) - &(&a2 * &b2);

    let orbit = |text: &str| -> Result<Poly> {
        let m = Poly::parse(text, &vs)?;
        Ok((0..5).fold(Poly::zero(&vs), |acc, s| &acc + &m.sigma_apply(s)))
    };
    let mut k = &c5 * &orbit("x0^5")?;
    k = &k + &(&c4 * &orbit("x0^3*x1*x4")?);
    k = &k + &(&c3 * &orbit("x0^3*x2*x3")?);
    k = &k + &(&c2 * &orbit("x0*x1^2*x4^2")?);
    k = &k + &(&c1 * &orbit("x0*x2^2*x3^2")?);
    k = &k + &(&c0 * &Poly::parse("x0*x1*x2*x3*x4", &vs)?);
    Ok(k)
}

/// Unreduced fraction `num / den` of parameter polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionPair {
    pub num: Poly,
    pub den: Poly,
}

impl FractionPair {
    /// The value when both parts are constants.
    pub fn value(&self) -> Option<BigRational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }
}

/// Proportionality constant between the wedge square and `dK5`:
/// `-2 (B2 A1 + B3^2) / (A2 A3 - B1 B2)`.
pub fn qr5_constant(a: &[Poly; 3], b: &[Poly; 3]) -> Result<FractionPair> {
    coefficient_space(a, b)?;
    let num = (&(&b[1] * &a[0]) + &(&b[2] * &b[2])).scale(&rat(-2, 1));
    let den = &(&a[1] * &a[2]) - &(&b[0] * &b[1]);
    if den.is_zero() {
        return Err(Error::InvalidArgument(
            "denominator A2*A3 - B1*B2 vanishes identically".into(),
        ));
    }
    Ok(FractionPair { num, den })
}

const JAC5_PARAMS: [&str; 6] = ["A1", "A2", "A3", "B1", "B2", "B3"];
const JAC6_PARAMS: [&str; 8] = ["A1", "A2", "A3", "B1", "B2", "B3", "B4", "C"];

/// Printed Jacobi system of the generic five-dimensional tensor.
pub fn jac5_system() -> ConstraintSystem {
    ConstraintSystem::parse(
        &JAC5_PARAMS,
        &[
            "B2^2 + 3*A1*A3 + B1*A3 + A2*B3",
            "2*A3^2 - 2*A2*B1 - A1*A2 + B2*B3",
            "-A2^2 - 3*B1*B3 + A1*B3 + B2*A3",
            "-2*B3^2 - 2*B2*A1 + B1*B2 - A2*A3",
        ],
    )
    .expect("valid fixture")
}

/// Printed Jacobi system of the generic six-dimensional tensor.
pub fn jac6_system() -> ConstraintSystem {
    ConstraintSystem::parse(
        &JAC6_PARAMS,
        &[
            "B2^2 + C*A2 - A3^2",
            "C*B2 - 2*B3*B4 - A2*B3",
            "A2*A1 - B4*A3 + B1*A2 - B2*B3",
            "C*B4 - B1*A3 - A1*A3",
            "C*B3 + B2*B1 + A1*B2",
            "-2*B3^2 + 2*C*A1 - C*B1 - B4*A2",
            "-B2*B4 - A3*B3",
            "-A2^2 - 2*C*B1 - 2*B4*A2 - C*A3 + C*A1",
            "-C^2 - 2*B1*A2 + 2*B4*A3 - 2*B2*B3 - A2*A3 + A2*A1",
            "B1*A2 - B4*A3 - B4*A1",
            "B2*B4 - 2*B3*B1 + A1*B3 - A2*B2",
        ],
    )
    .expect("valid fixture")
}

/// Printed relation of the generic four-dimensional tensor.
pub fn n4_system() -> ConstraintSystem {
    ConstraintSystem::parse(&["A1", "A2", "B"], &["A1*A2 - B^2"]).expect("valid fixture")
}

/// Generic six-dimensional tensor with only `B1` and `B4` nonzero: two
/// three-dimensional structures on the even and odd coordinates.
pub fn q6_direct_sum(b1: Option<BigRational>, b4: Option<BigRational>) -> Result<Bivector> {
    let g = generic_invariant_quadratic(6)?;
    let mut assign = rational_assignment(&[("B1", &b1), ("B4", &b4)]);
    for name in ["A1", "A2", "A3", "B2", "B3", "C"] {
        assign.insert(name.into(), 0.into());
    }
    g.bivector.specialize(&assign)
}

/// Jacobian structure of `C = x0^2 x1^2 x2^2 / 2` in three variables.
pub fn h3_cubic_jps() -> Result<Bivector> {
    let vs = VarSpace::new(3, &[] as &[&str])?;
    let c = Poly::parse("1/2*x0^2*x1^2*x2^2", &vs)?;
    Bivector::jps_from_casimirs(&vs, &[c], &Poly::one(&vs))
}

/// Catalog entry by name with rational values for some of its parameters.
/// Unassigned parameters stay symbolic.
pub fn lookup(name: &str, values: &BTreeMap<String, BigRational>) -> Result<Bivector> {
    let accepted: &[&str] = match name {
        "q3" => &["A1", "A2"],
        "q4" => &["k"],
        "q51" | "q52" | "linear5" => &[LAMBDA],
        "q6sum" => &["B1", "B4"],
        "h3cubic" => &[],
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    };
    if let Some(extra) = values.keys().find(|k| !accepted.contains(&k.as_str())) {
        return Err(Error::InvalidArgument(format!(
            "`{name}` has no parameter `{extra}`"
        )));
    }
    let get = |k: &str| values.get(k).cloned();
    match name {
        "q3" => q3(get("A1"), get("A2")),
        "q4" => q4(get("k")),
        "q51" => q5(&CoefficientFamily::q51(), get(LAMBDA)),
        "q52" => q5(&CoefficientFamily::q52(), get(LAMBDA)),
        "linear5" => q5(&CoefficientFamily::linear5(), get(LAMBDA)),
        "q6sum" => q6_direct_sum(get("B1"), get("B4")),
        _ => h3_cubic_jps(),
    }
}
