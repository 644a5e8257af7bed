//! Invariance under the Heisenberg generators and generic invariant tensors.
//!
//! `sigma` shifts coordinates `x_i -> x_{i+1}`; `tau` scales `x_i` by
//! `eps^i`. A bivector is invariant when `sigma(P_ij) = P_{i+1,j+1}` and each
//! `P_ij` has tau-degree `i + j mod n`.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bivector::{Bivector, BivectorJson, VerificationReport};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, VarSpace};

pub fn is_sigma_invariant(b: &Bivector) -> VerificationReport {
    let n = b.n();
    let pairs = (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    VerificationReport::first_nonzero(
        "sigma",
        pairs.map(|(i, j)| {
            let shifted = b.get(i, j).sigma_apply(1);
            let target = b.get((i + 1) % n, (j + 1) % n);
            (vec![i, j], &shifted - &target)
        }),
    )
}

/// The witness for a failing entry is its part of the wrong tau-degree.
pub fn is_tau_invariant(b: &Bivector) -> VerificationReport {
    let n = b.n();
    VerificationReport::first_nonzero(
        "tau",
        b.entries().map(|(i, j, p)| {
            let want = (i + j) % n;
            let stray = Poly::from_terms(
                p.vs(),
                p.terms()
                    .filter(|(m, _)| m.tau_degree() != want)
                    .map(|(m, c)| (m.clone(), c.clone())),
            );
            (vec![i, j], stray)
        }),
    )
}

/// Checks applicable to a candidate tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Jacobi,
    Sigma,
    Tau,
    Unimodular,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Jacobi, Check::Sigma, Check::Tau, Check::Unimodular];

    pub fn name(self) -> &'static str {
        match self {
            Check::Jacobi => "jacobi",
            Check::Sigma => "sigma",
            Check::Tau => "tau",
            Check::Unimodular => "unimodular",
        }
    }

    pub fn run(self, b: &Bivector) -> VerificationReport {
        match self {
            Check::Jacobi => b.is_poisson(),
            Check::Sigma => is_sigma_invariant(b),
            Check::Tau => is_tau_invariant(b),
            Check::Unimodular => b.is_unimodular_div(),
        }
    }
}

impl std::str::FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

/// Homogeneous invariant tensors of coordinate degree `degree` exist only
/// when `degree = 2 + s*n`.
pub fn admissible_degree(n: usize, degree: usize) -> bool {
    n > 0 && degree % n == 2 % n
}

/// Free parameter of a generic tensor and the polynomial it multiplies in
/// the slot `P_{0,slot}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamOrigin {
    pub param: String,
    pub slot: usize,
    pub monomial: Poly,
}

/// Bivector that is sigma- and tau-invariant for every value of its
/// parameters, which enter linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericTensor {
    pub bivector: Bivector,
    pub provenance: Vec<ParamOrigin>,
}

impl GenericTensor {
    pub fn params(&self) -> &[String] {
        self.bivector.vs().params()
    }

    pub fn vs(&self) -> &Arc<VarSpace> {
        self.bivector.vs()
    }

    pub fn to_json(&self) -> String {
        let dto = GenericTensorJson {
            bivector: self.bivector.to_json_value(),
            provenance: self
                .provenance
                .iter()
                .map(|o| ProvenanceJson {
                    param: o.param.clone(),
                    slot: o.slot,
                    monomial: o.monomial.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct GenericTensorJson {
    #[serde(flatten)]
    bivector: BivectorJson,
    provenance: Vec<ProvenanceJson>,
}

#[derive(Serialize, Deserialize)]
struct ProvenanceJson {
    param: String,
    slot: usize,
    monomial: String,
}

pub fn generic_invariant_quadratic(n: usize) -> Result<GenericTensor> {
    generic_invariant_homogeneous(n, 2)
}

/// Generic invariant tensor with entries homogeneous of degree `degree`.
///
/// Slot `P_{0,d}` for `d = 1..n/2` starts as the general polynomial of
/// tau-degree `d`; the other entries are its sigma-shifts. A monomial whose
/// shifts land in the wrong tau-degree gets coefficient zero. For even `n`
/// the middle slot must satisfy `sigma^{n/2}(P) = -P`; each orbit pair keeps
/// its later-declared parameter.
pub fn generic_invariant_homogeneous(n: usize, degree: usize) -> Result<GenericTensor> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
    }
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let degree = u32::try_from(degree)
        .map_err(|_| Error::InvalidArgument(format!("degree {degree} too large")))?;
    let slots = slot_monomials(n, degree);
    let names = classical_names(n, degree);

    let mut origins: Vec<(String, usize, Combination)> = Vec::new();
    for (d, monos) in slots {
        let shifts = shift_count(n, d);
        let survivors: Vec<Vec<u32>> = monos
            .into_iter()
            .filter(|m| tau_compatible(m, d, shifts))
            .collect();
        let declared = declaration_order(d, &survivors, names.as_ref().map(|t| &t[d - 1]));
        let free = if 2 * d == n {
            eliminate_middle(n, &declared)
        } else {
            declared
                .iter()
                .map(|(name, m)| (name.clone(), vec![(m.clone(), BigRational::one())]))
                .collect()
        };
        for (name, contribution) in free {
            let name = match &names {
                Some(table) => table[d - 1]
                    .renames
                    .iter()
                    .find(|(from, _)| *from == name)
                    .map_or(name, |(_, to)| to.to_string()),
                None => name,
            };
            origins.push((name, d, contribution));
        }
    }

    let param_names: Vec<&str> = origins.iter().map(|(p, _, _)| p.as_str()).collect();
    let vs = VarSpace::new(n, &param_names)?;
    let unit_vs = VarSpace::new(n, &[] as &[&str])?;
    let mut slot_polys: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); n / 2 + 1];
    let mut provenance = Vec::with_capacity(origins.len());
    for (p, (name, d, contribution)) in origins.into_iter().enumerate() {
        for (coords, c) in &contribution {
            slot_polys[d].push((
                Monomial::from_parts(coords.clone(), vec![(p as u32, 1)]),
                c.clone(),
            ));
        }
        let monomial = Poly::from_terms(
            &unit_vs,
            contribution
                .into_iter()
                .map(|(coords, c)| (Monomial::from_parts(coords, vec![]), c)),
        );
        provenance.push(ParamOrigin {
            param: name,
            slot: d,
            monomial,
        });
    }

    let mut bivector = Bivector::zero(&vs);
    for (d, terms) in slot_polys.into_iter().enumerate().skip(1) {
        if terms.is_empty() {
            continue;
        }
        let base = Poly::from_terms(&vs, terms);
        for k in 0..shift_count(n, d) {
            let entry = base.sigma_apply(k as i64);
            bivector.set(k, (k + d) % n, entry)?;
        }
    }
    Ok(GenericTensor {
        bivector,
        provenance,
    })
}

/// Entries `P_{k,k+d}` generated from slot `d`: all `k` except for the
/// middle slot, which repeats after `n/2` shifts.
fn shift_count(n: usize, d: usize) -> usize {
    if 2 * d == n {
        n / 2
    } else {
        n
    }
}

fn tau_compatible(m: &[u32], d: usize, shifts: usize) -> bool {
    let n = m.len();
    let mono = Monomial::from_parts(m.to_vec(), vec![]);
    (1..shifts).all(|k| mono.shifted(k).tau_degree() == (2 * k + d) % n)
}

/// Degree-`degree` monomials grouped by tau-degree `1..=n/2`, each list in
/// descending canonical order.
fn slot_monomials(n: usize, degree: u32) -> Vec<(usize, Vec<Vec<u32>>)> {
    let mut slots: Vec<(usize, Vec<Vec<u32>>)> = (1..=n / 2).map(|d| (d, Vec::new())).collect();
    let mut exps = vec![0u32; n];
    fn walk(i: usize, left: u32, exps: &mut Vec<u32>, slots: &mut [(usize, Vec<Vec<u32>>)]) {
        let n = exps.len();
        if i == n - 1 {
            exps[i] = left;
            let tau = exps
                .iter()
                .enumerate()
                .map(|(k, &e)| k as u64 * e as u64)
                .sum::<u64>()
                % n as u64;
            let tau = tau as usize;
            if (1..=n / 2).contains(&tau) {
                slots[tau - 1].1.push(exps.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            walk(i + 1, left - e, exps, slots);
        }
        exps[i] = 0;
    }
    walk(0, degree, &mut exps, &mut slots);
    slots
}

/// Names for the monomials of one slot, in declaration order.
fn declaration_order(
    d: usize,
    monos: &[Vec<u32>],
    table: Option<&SlotNames>,
) -> Vec<(String, Vec<u32>)> {
    match table {
        Some(t) => {
            debug_assert_eq!(t.declared.len(), monos.len());
            t.declared
                .iter()
                .filter_map(|(name, m)| {
                    monos
                        .iter()
                        .find(|x| x.as_slice() == *m)
                        .map(|x| (name.to_string(), x.clone()))
                })
                .collect()
        }
        None => monos
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("p_{d}_{}", i + 1), m.clone()))
            .collect(),
    }
}

/// Rational combination of coordinate exponent vectors.
type Combination = Vec<(Vec<u32>, BigRational)>;

/// Solves `c_m + c_{sigma^{n/2} m} = 0` on the middle slot. Fixed monomials
/// vanish; in each pair the earlier-declared parameter is dependent.
fn eliminate_middle(n: usize, declared: &[(String, Vec<u32>)]) -> Vec<(String, Combination)> {
    let half = n / 2;
    let position: HashMap<&[u32], usize> = declared
        .iter()
        .enumerate()
        .map(|(i, (_, m))| (m.as_slice(), i))
        .collect();
    let mut free = Vec::new();
    for (i, (name, m)) in declared.iter().enumerate() {
        let image = Monomial::from_parts(m.clone(), vec![])
            .shifted(half)
            .coord_exps()
            .to_vec();
        let partner = position[image.as_slice()];
        if partner < i {
            free.push((
                name.clone(),
                vec![
                    (m.clone(), BigRational::one()),
                    (image, -BigRational::one()),
                ],
            ));
        }
    }
    free
}

struct SlotNames {
    declared: Vec<(&'static str, &'static [u32])>,
    renames: Vec<(&'static str, &'static str)>,
}

/// Parameter names of the quadratic tensors for `n = 3..6`.
fn classical_names(n: usize, degree: u32) -> Option<Vec<SlotNames>> {
    if degree != 2 {
        return None;
    }
    let slot = |declared: Vec<(&'static str, &'static [u32])>| SlotNames {
        declared,
        renames: vec![],
    };
    Some(match n {
        3 => vec![slot(vec![("A1", &[1, 1, 0]), ("A2", &[0, 0, 2])])],
        4 => vec![
            slot(vec![("A1", &[1, 1, 0, 0]), ("A2", &[0, 0, 1, 1])]),
            SlotNames {
                declared: vec![
                    ("B1", &[1, 0, 1, 0]),
                    ("B3", &[0, 2, 0, 0]),
                    ("B2", &[0, 0, 0, 2]),
                ],
                renames: vec![("B2", "B")],
            },
        ],
        5 => vec![
            slot(vec![
                ("A1", &[1, 1, 0, 0, 0]),
                ("A2", &[0, 0, 1, 0, 1]),
                ("A3", &[0, 0, 0, 2, 0]),
            ]),
            slot(vec![
                ("B1", &[1, 0, 1, 0, 0]),
                ("B2", &[0, 0, 0, 1, 1]),
                ("B3", &[0, 2, 0, 0, 0]),
            ]),
        ],
        6 => vec![
            slot(vec![
                ("A1", &[1, 1, 0, 0, 0, 0]),
                ("A2", &[0, 0, 1, 0, 0, 1]),
                ("A3", &[0, 0, 0, 1, 1, 0]),
            ]),
            slot(vec![
                ("B1", &[1, 0, 1, 0, 0, 0]),
                ("B2", &[0, 0, 0, 1, 0, 1]),
                ("B3", &[0, 2, 0, 0, 0, 0]),
                ("B4", &[0, 0, 0, 0, 2, 0]),
            ]),
            SlotNames {
                declared: vec![
                    ("C1", &[1, 0, 0, 1, 0, 0]),
                    ("C2", &[0, 0, 0, 0, 1, 1]),
                    ("C3", &[0, 1, 1, 0, 0, 0]),
                ],
                renames: vec![("C3", "C")],
            },
        ],
        _ => return None,
    })
}
