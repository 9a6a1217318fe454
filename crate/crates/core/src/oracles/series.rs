//! Exact truncated power series, read as exponential generating functions.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::symgrp::factorial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Q>,
}

impl FormalSeries {
    /// Coefficients `c_0..c_N`.
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c_0");
        FormalSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        FormalSeries { coeffs: vec![Q::zero(); order + 1] }
    }

    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Q::one();
        }
        s
    }

    /// The series with `c_n = dims[n] / n!`.
    pub fn from_dims(dims: &[Q]) -> Self {
        let coeffs = dims.iter().enumerate().map(|(n, d)| d / Q::from_integer(factorial(n).into())).collect();
        Self::new(coeffs)
    }

    /// `e^x - 1`.
    pub fn exp_minus_one(order: usize) -> Self {
        let mut s = Self::zero(order);
        for n in 1..=order {
            s.coeffs[n] = Q::new(1.into(), factorial(n).into());
        }
        s
    }

    /// `x / (1 - x)`.
    pub fn geometric(order: usize) -> Self {
        let mut s = Self::zero(order);
        for n in 1..=order {
            s.coeffs[n] = Q::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(Q::zero)
    }

    /// `n!·c_n` for `n = 0..=N`.
    pub fn dims(&self) -> Vec<Q> {
        self.coeffs.iter().enumerate().map(|(n, c)| c * Q::from_integer(factorial(n).into())).collect()
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        let order = self.order().min(other.order());
        FormalSeries { coeffs: (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect() }
    }

    pub fn scaled(&self, c: &Q) -> FormalSeries {
        FormalSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Q::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        FormalSeries { coeffs }
    }

    pub fn pow(&self, k: usize) -> FormalSeries {
        let mut out = FormalSeries::zero(self.order());
        out.coeffs[0] = Q::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// `a(xi(x))`, truncated at the smaller order.
pub fn egf_compose(a: &FormalSeries, xi: &FormalSeries) -> Result<FormalSeries> {
    if !xi.coeffs[0].is_zero() {
        return Err(Error::Precondition("inner series has a nonzero constant term".into()));
    }
    let order = a.order().min(xi.order());
    let xi = FormalSeries { coeffs: xi.coeffs[..=order].to_vec() };
    let mut out = FormalSeries::zero(order);
    let mut power = FormalSeries::zero(order);
    power.coeffs[0] = Q::one();
    for k in 0..=order {
        out = out.add(&power.scaled(&a.coeffs[k]));
        power = power.mul(&xi);
    }
    Ok(out)
}

/// The equation `f = x + Σ_k c_k f^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointEquation {
    pub terms: Vec<(usize, Q)>,
}

/// The unique solution of `f = x + Φ(f)` up to `x^order`, by iteration.
pub fn egf_fixed_point(eq: &FixedPointEquation, order: usize) -> Result<FormalSeries> {
    if eq.terms.iter().any(|(k, c)| *k <= 1 && !c.is_zero()) {
        return Err(Error::Precondition("the right-hand side is not order-raising".into()));
    }
    let step = |f: &FormalSeries| {
        let mut next = FormalSeries::x(order);
        for (k, c) in &eq.terms {
            next = next.add(&f.pow(*k).scaled(c));
        }
        next
    };
    let mut f = FormalSeries::zero(order);
    for _ in 0..=order {
        f = step(&f);
    }
    debug_assert_eq!(step(&f), f);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn geometric_composed_with_itself() {
        let f = FormalSeries::geometric(4);
        let ff = egf_compose(&f, &f).unwrap();
        assert_eq!(ff.dims(), ints(&[0, 1, 4, 24, 192]));
    }

    #[test]
    fn exponential_compositions_count_set_partitions() {
        let e = FormalSeries::exp_minus_one(5);
        assert_eq!(egf_compose(&e, &e).unwrap().dims(), ints(&[0, 1, 2, 5, 15, 52]));
    }

    #[test]
    fn binary_tree_fixed_point() {
        let eq = FixedPointEquation { terms: vec![(2, crate::linalg::q_frac(1, 2))] };
        assert_eq!(egf_fixed_point(&eq, 5).unwrap().dims(), ints(&[0, 1, 1, 3, 15, 105]));
    }

    #[test]
    fn rejects_bad_inputs() {
        let one = FormalSeries::new(ints(&[1, 1]));
        assert!(egf_compose(&one, &one).is_err());
        let eq = FixedPointEquation { terms: vec![(1, q(1))] };
        assert!(egf_fixed_point(&eq, 3).is_err());
    }
}
