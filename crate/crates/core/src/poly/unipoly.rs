use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly, PolyError, Var};
use crate::arith::{Integer, Rational};

/// Dense univariate polynomial with integer coefficients, ascending degree.
/// The coefficient vector is trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPolyZ {
    coeffs: Vec<Integer>,
}

impl UniPolyZ {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolyZ { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Integer {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs.iter().rev().fold(Integer::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + &Rational::from(c))
    }

    /// Value mod `m` at a residue `x < m`; `m` must fit in 63 bits.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m128 = m as u128;
        self.coeffs_mod(m)
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % m128) as u64
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn coeffs_mod(&self, m: u64) -> Vec<u64> {
        let mb = Integer::from(m);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c % &mb;
                let r = if r.is_negative() { r + &mb } else { r };
                u64::try_from(r).expect("residue fits")
            })
            .collect()
    }

    /// `f(X^2)`.
    pub fn compose_square(&self) -> UniPolyZ {
        let mut out = vec![Integer::zero(); self.coeffs.len() * 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        UniPolyZ::new(out)
    }

    /// `f / X`; requires a zero constant term.
    pub fn div_by_x(&self) -> Option<UniPolyZ> {
        if !self.constant_term().is_zero() {
            return None;
        }
        Some(UniPolyZ::new(self.coeffs.iter().skip(1).cloned().collect()))
    }

    pub fn to_multipoly(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero().with_vars(super::VarSet::of(&[v]));
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_term(Monomial::of(v, k as u16), Rational::from(c));
        }
        out
    }

    /// Reads a polynomial in `v` alone with integer coefficients.
    pub fn from_multipoly(f: &MultiPoly, v: Var) -> Result<UniPolyZ, PolyError> {
        let Some(deg) = f.degree_in(v) else {
            return Ok(UniPolyZ::default());
        };
        let mut coeffs = vec![Integer::zero(); deg as usize + 1];
        for (m, c) in f.terms() {
            if m.exp(v) as u32 != m.total_degree() {
                return Err(PolyError::NotUnivariate(v));
            }
            if !c.is_integer() {
                return Err(PolyError::NonIntegerCoefficient(c.clone()));
            }
            coeffs[m.exp(v) as usize] = c.numer().clone();
        }
        Ok(UniPolyZ::new(coeffs))
    }

    /// Renders in the variable `v` using the canonical multivariate syntax.
    pub fn display_in(&self, v: Var) -> alloc::string::String {
        alloc::format!("{}", self.to_multipoly(v))
    }
}

impl fmt::Debug for UniPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly(Var::X))
    }
}
