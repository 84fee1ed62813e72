//! Polynomial engine: sparse multivariate polynomials over [`Rational`],
//! dense univariate integer polynomials, rational functions, and two
//! independent resultant algorithms.
//!
//! All multivariate polynomials share one global variable order
//! `p, q, t, r, u, s, x, y, U, V, tau, w`; monomials compare lexicographically
//! in that order, which fixes term iteration and rendering.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use thiserror::Error;

use crate::arith::Rational;

mod multi;
mod parse;
mod ratfun;
mod resultant;
mod unipoly;

pub use multi::{Monomial, MultiPoly};
pub use ratfun::RationalFunction;
pub use resultant::{
    bareiss_determinant, quadratic_norm_resultant, reduce_mod_monic_quadratic,
    sylvester_matrix, sylvester_resultant,
};
pub use unipoly::UniPolyZ;

pub const NVARS: usize = 12;

/// A symbol of the global variable order. `Tau` is the slope of the lines
/// through the singular point of `G = 0`, kept distinct from the cuboid `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P,
    Q,
    T,
    R,
    Uu,
    S,
    X,
    Y,
    U,
    V,
    Tau,
    W,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::P,
        Var::Q,
        Var::T,
        Var::R,
        Var::Uu,
        Var::S,
        Var::X,
        Var::Y,
        Var::U,
        Var::V,
        Var::Tau,
        Var::W,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::Q => "q",
            Var::T => "t",
            Var::R => "r",
            Var::Uu => "u",
            Var::S => "s",
            Var::X => "x",
            Var::Y => "y",
            Var::U => "U",
            Var::V => "V",
            Var::Tau => "tau",
            Var::W => "w",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of declared variables, as a bitmask over the global order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct VarSet(u16);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn of(vars: &[Var]) -> VarSet {
        vars.iter().fold(VarSet::EMPTY, |acc, &v| acc.with(v))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn with(self, v: Var) -> VarSet {
        VarSet(self.0 | (1 << v.index()))
    }

    pub fn without(self, v: Var) -> VarSet {
        VarSet(self.0 & !(1 << v.index()))
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |&v| self.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("variable {0} is not a variable of the polynomial")]
    UnknownVariable(Var),
    #[error("no value assigned to variable {0}")]
    MissingVariable(Var),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: Box<MultiPoly> },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("resultant of a zero polynomial")]
    ZeroPolynomial,
    #[error("trace polynomial must not contain {0}")]
    TraceContainsVariable(Var),
    #[error("degree {degree} in {var} exceeds the reversal degree {bound}")]
    DegreeExceedsBound { var: Var, degree: u32, bound: u32 },
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(Var),
    #[error("non-integer coefficient {0}")]
    NonIntegerCoefficient(Rational),
    #[error("pole: denominator vanishes at {0}")]
    Pole(Rational),
    #[error("parse error: {0}")]
    Parse(String),
}
