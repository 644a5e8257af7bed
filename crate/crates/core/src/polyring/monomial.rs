use std::cmp::Ordering;

/// Power product of coordinates (non-negative exponents) and parameters
/// (integer exponents, zeros never stored).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub(crate) coords: Vec<u32>,
    // sorted by parameter index
    pub(crate) params: Vec<(u32, i32)>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            coords: vec![0; n],
            params: Vec::new(),
        }
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.coords[i] = 1;
        m
    }

    pub fn from_parts(coords: Vec<u32>, mut params: Vec<(u32, i32)>) -> Self {
        params.retain(|&(_, e)| e != 0);
        params.sort_unstable_by_key(|&(p, _)| p);
        debug_assert!(params.windows(2).all(|w| w[0].0 != w[1].0));
        Monomial { coords, params }
    }

    pub fn coord_exps(&self) -> &[u32] {
        &self.coords
    }

    pub fn param_exps(&self) -> &[(u32, i32)] {
        &self.params
    }

    pub fn param_exp(&self, p: usize) -> i32 {
        self.params
            .iter()
            .find(|&&(q, _)| q as usize == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn coord_degree(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn param_degree(&self) -> i64 {
        self.params.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.params.is_empty() && self.coords.iter().all(|&e| e == 0)
    }

    pub fn is_param_only(&self) -> bool {
        self.coords.iter().all(|&e| e == 0)
    }

    /// Residue of `sum i * e_i` modulo `n`.
    pub fn tau_degree(&self) -> usize {
        let n = self.coords.len();
        if n == 0 {
            return 0;
        }
        let s: u64 = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &e)| i as u64 * e as u64)
            .sum();
        (s % n as u64) as usize
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        let mut params = Vec::with_capacity(self.params.len() + other.params.len());
        let (mut i, mut j) = (0, 0);
        while i < self.params.len() || j < other.params.len() {
            match (self.params.get(i), other.params.get(j)) {
                (Some(&(p, a)), Some(&(q, b))) if p == q => {
                    if a + b != 0 {
                        params.push((p, a + b));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(p, a)), Some(&(q, _))) if p < q => {
                    params.push((p, a));
                    i += 1;
                }
                (Some(_), Some(&(q, b))) => {
                    params.push((q, b));
                    j += 1;
                }
                (Some(&t), None) => {
                    params.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    params.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { coords, params }
    }

    /// `self / other` when the quotient has non-negative coordinate exponents.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            coords.push(a.checked_sub(*b)?);
        }
        let inv = Monomial {
            coords: vec![0; other.coords.len()],
            params: other.params.iter().map(|&(p, e)| (p, -e)).collect(),
        };
        let mut q = Monomial {
            coords,
            params: self.params.clone(),
        }
        .mul(&inv);
        q.coords.truncate(self.coords.len());
        Some(q)
    }

    /// Cyclic shift: the exponent of `x_{i+s}` in the image is the exponent of
    /// `x_i` in `self`.
    pub fn shifted(&self, s: usize) -> Monomial {
        let n = self.coords.len();
        if n == 0 {
            return self.clone();
        }
        let mut coords = vec![0; n];
        for (i, &e) in self.coords.iter().enumerate() {
            coords[(i + s) % n] = e;
        }
        Monomial {
            coords,
            params: self.params.clone(),
        }
    }
}

/// Graded lexicographic order: coordinate degree, then coordinate exponents
/// with `x0` most significant, then parameter degree, then parameter
/// exponents in declaration order. Larger monomials print first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coord_degree()
            .cmp(&other.coord_degree())
            .then_with(|| self.coords.cmp(&other.coords))
            .then_with(|| self.param_degree().cmp(&other.param_degree()))
            .then_with(|| cmp_param_lex(&self.params, &other.params))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn cmp_param_lex(a: &[(u32, i32)], b: &[(u32, i32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        let (pa, pb) = (a.get(i), b.get(j));
        let (idx, ea, eb) = match (pa, pb) {
            (None, None) => return Ordering::Equal,
            (Some(&(p, x)), Some(&(q, y))) if p == q => (p, x, y),
            (Some(&(p, x)), Some(&(q, _))) if p < q => (p, x, 0),
            (Some(_), Some(&(q, y))) => (q, 0, y),
            (Some(&(p, x)), None) => (p, x, 0),
            (None, Some(&(q, y))) => (q, 0, y),
        };
        match ea.cmp(&eb) {
            Ordering::Equal => {}
            o => return o,
        }
        if pa.is_some_and(|t| t.0 == idx) {
            i += 1;
        }
        if pb.is_some_and(|t| t.0 == idx) {
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_cancels_parameter_exponents() {
        let a = Monomial::from_parts(vec![1, 0], vec![(0, -1), (2, 3)]);
        let b = Monomial::from_parts(vec![0, 1], vec![(0, 1), (1, 2)]);
        let c = a.mul(&b);
        assert_eq!(c.coords, vec![1, 1]);
        assert_eq!(c.params, vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn order_is_graded() {
        let x0 = Monomial::coordinate(3, 0);
        let x1x2 = Monomial::from_parts(vec![0, 1, 1], vec![]);
        let x0x1 = Monomial::from_parts(vec![1, 1, 0], vec![]);
        assert!(x1x2 > x0);
        assert!(x0x1 > x1x2);
        let a = Monomial::from_parts(vec![0, 0], vec![(0, 1)]);
        let b = Monomial::from_parts(vec![0, 0], vec![(1, 1)]);
        assert!(a > b);
    }

    #[test]
    fn shift_wraps() {
        let m = Monomial::from_parts(vec![0, 0, 2], vec![]);
        assert_eq!(m.shifted(1).coords, vec![2, 0, 0]);
        assert_eq!(m.tau_degree(), 1);
    }

    #[test]
    fn division() {
        let a = Monomial::from_parts(vec![2, 1], vec![(0, 1)]);
        let b = Monomial::from_parts(vec![1, 1], vec![(0, 2)]);
        let q = a.div(&b).unwrap();
        assert_eq!(q.coords, vec![1, 0]);
        assert_eq!(q.params, vec![(0, -1)]);
        assert!(b.div(&a).is_none());
    }
}
