use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Var, VarSet, NVARS};
use crate::arith::{Integer, Rational};

/// Exponent vector over the global variable order. The derived `Ord` is the
/// lexicographic monomial order with `p` most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn of(var: Var, exp: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[var.index()] = exp;
        m
    }

    pub fn exp(&self, var: Var) -> u16 {
        self.0[var.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    fn with_exp(mut self, var: Var, exp: u16) -> Monomial {
        self.0[var.index()] = exp;
        self
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// The term map never stores zero coefficients, so two polynomials are equal
/// exactly when their term maps are. The declared variable set only matters
/// for [`MultiPoly::substitute`] and [`MultiPoly::eval`] preconditions and
/// is not part of equality.
#[derive(Clone, Default)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn int(c: i64) -> Self {
        MultiPoly::constant(Rational::from(c))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Rational::one(), &[(v, 1)])
    }

    pub fn term(c: Rational, powers: &[(Var, u16)]) -> Self {
        let mut m = Monomial::ONE;
        let mut vars = VarSet::EMPTY;
        for &(v, e) in powers {
            m.0[v.index()] += e;
            vars = vars.with(v);
        }
        let mut p = MultiPoly { vars, terms: BTreeMap::new() };
        p.add_term(m, c);
        p
    }

    /// Builds from raw terms; zero coefficients are dropped and like terms
    /// merged. Every variable occurring in a term is declared.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses the canonical text form, e.g. `"s^2*y^5 - 3/2*s + 1"`.
    pub fn parse(src: &str) -> Result<Self, PolyError> {
        super::parse::parse(src)
    }

    /// Declares extra variables without changing the value.
    pub fn with_vars(mut self, vars: VarSet) -> Self {
        self.vars = self.vars.union(vars);
        self
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        for v in Var::ALL {
            if m.exp(v) > 0 {
                self.vars = self.vars.with(v);
            }
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.terms.keys().all(|m| m.exp(v) == 0)
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v) as u32).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Coefficients with respect to `v`, ascending: entry `k` multiplies `v^k`
    /// and is free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let Some(deg) = self.degree_in(v) else {
            return Vec::new();
        };
        let rest = self.vars.without(v);
        let mut out = vec![MultiPoly::zero().with_vars(rest); deg as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero().with_vars(VarSet::of(&[v]));
        for (k, c) in coeffs.iter().enumerate() {
            out.vars = out.vars.union(c.vars);
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                out.add_term(m.with_exp(v, k as u16), a.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero().with_vars(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero().with_vars(self.vars);
        for (n, a) in &self.terms {
            out.add_term(n.mul(m), a * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one().with_vars(self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// [`MultiPoly::pow`] for a signed exponent; negative is a domain error.
    pub fn checked_pow(&self, exp: i64) -> Result<MultiPoly, PolyError> {
        let e = u32::try_from(exp).map_err(|_| PolyError::NegativeExponent(exp))?;
        Ok(self.pow(e))
    }

    /// Replaces every occurrence of `v` by `g` and expands (Horner in `v`).
    pub fn substitute(&self, v: Var, g: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.vars.contains(v) {
            return Err(PolyError::UnknownVariable(v));
        }
        let coeffs = self.coefficients_in(v);
        let vars = self.vars.without(v).union(g.vars);
        let mut acc = MultiPoly::zero().with_vars(vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        Ok(acc.with_vars(vars))
    }

    /// Evaluates `v = value`, leaving the other variables symbolic.
    pub fn partial_eval(&self, v: Var, value: &Rational) -> Result<MultiPoly, PolyError> {
        if !self.vars.contains(v) {
            return Err(PolyError::UnknownVariable(v));
        }
        let mut out = MultiPoly::zero().with_vars(self.vars.without(v));
        let mut powers: Vec<Rational> = vec![Rational::one()];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exp(v, 0), c * &powers[k]);
        }
        Ok(out)
    }

    /// Exact value at a point covering all declared variables; one Horner
    /// pass per variable.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational, PolyError> {
        if let Some(v) = self.vars.iter().find(|v| !point.contains_key(v)) {
            return Err(PolyError::MissingVariable(v));
        }
        let mut cur = self.clone();
        for v in self.vars.iter() {
            cur = cur.horner_at(v, &point[&v]);
        }
        Ok(cur.as_constant().expect("all variables assigned"))
    }

    fn horner_at(&self, v: Var, value: &Rational) -> MultiPoly {
        let coeffs = self.coefficients_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &acc.scale(value) + c;
        }
        acc.with_vars(self.vars.without(v))
    }

    /// Exact quotient `self / g`, by lexicographic leading-term division.
    pub fn divexact(&self, g: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let Some((lm_g, lc_g)) = g.leading_term() else {
            return Err(PolyError::DivisionByZero);
        };
        if let Some(c) = g.as_constant() {
            return Ok(self.scale(&c.recip().expect("nonzero constant")));
        }
        let (lm_g, lc_g) = (*lm_g, lc_g.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero().with_vars(self.vars);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let Some(m) = lm_r.div(&lm_g) else {
                return Err(PolyError::NotDivisible { remainder: Box::new(rem) });
            };
            let c = lc_r / &lc_g;
            let sub = g.mul_term(&m, &c);
            quot.add_term(m, c);
            rem = &rem - &sub;
        }
        Ok(quot)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients with a positive leading coefficient up to sign; zero for
    /// the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num = Integer::zero();
        let mut den = Integer::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        Rational::new(num.abs(), den).expect("positive denominator")
    }

    /// `self / content`, with integer coefficients and positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> MultiPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let mut pp = self.scale(&c.recip().unwrap());
        if pp.leading_term().is_some_and(|(_, lc)| lc.is_negative()) {
            pp = -pp;
        }
        pp
    }

    /// `v^bound * self(1/v)`: maps `v^k` to `v^(bound-k)` in every term.
    pub fn reverse_in(&self, v: Var, bound: u32) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero().with_vars(self.vars);
        for (m, c) in &self.terms {
            let k = m.exp(v) as u32;
            if k > bound {
                return Err(PolyError::DegreeExceedsBound { var: v, degree: k, bound });
            }
            out.add_term(m.with_exp(v, (bound - k) as u16), c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to each term, merging the results.
    pub fn map_terms<F>(&self, mut f: F) -> Result<MultiPoly, PolyError>
    where
        F: FnMut(&Monomial, &Rational) -> Result<(Monomial, Rational), PolyError>,
    {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (m2, c2) = f(m, c)?;
            out.add_term(m2, c2);
        }
        Ok(out)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut big, small) =
            if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        big.vars = big.vars.union(small.vars);
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone().with_vars(rhs.vars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero().with_vars(self.vars.union(rhs.vars));
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly { (&self).$m(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v)?;
        } else {
            write!(f, "{}^{}", v, e)?;
        }
    }
    Ok(())
}

/// Canonical rendering: terms in descending monomial order, `coef*x^e*y^f`,
/// unit coefficients omitted, signs folded into ` + ` / ` - ` separators.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
