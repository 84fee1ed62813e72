use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{MultiPoly, PolyError, Var, VarSet};
use crate::arith::Rational;

/// Quotient of two univariate polynomials in one variable.
///
/// Stored with the denominator made primitive (coprime integer
/// coefficients, positive leading coefficient); the scalar removed from it is
/// moved into the numerator. No polynomial GCD is taken, so common factors
/// may remain. Equality of values is [`RationalFunction::same_value`], by
/// cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    var: Var,
    num: MultiPoly,
    den: MultiPoly,
}

fn check_univariate(f: &MultiPoly, v: Var) -> Result<(), PolyError> {
    if f.terms().all(|(m, _)| m.exp(v) as u32 == m.total_degree()) {
        Ok(())
    } else {
        Err(PolyError::NotUnivariate(v))
    }
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly, var: Var) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        check_univariate(&num, var)?;
        check_univariate(&den, var)?;
        let vars = VarSet::of(&[var]);
        let c = den.content();
        let sign = if den.leading_term().is_some_and(|(_, lc)| lc.is_negative()) {
            -c
        } else {
            c
        };
        let inv = sign.recip().expect("nonzero content");
        Ok(RationalFunction { var, num: num.scale(&inv).with_vars(vars), den: den.scale(&inv).with_vars(vars) })
    }

    pub fn polynomial(f: MultiPoly, var: Var) -> Result<Self, PolyError> {
        Self::new(f, MultiPoly::one(), var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    fn at(f: &MultiPoly, v: Var, x: &Rational) -> Rational {
        let pt: BTreeMap<Var, Rational> = [(v, x.clone())].into_iter().collect();
        f.clone().with_vars(VarSet::of(&[v])).eval(&pt).expect("univariate")
    }

    pub fn eval_numerator(&self, x: &Rational) -> Rational {
        Self::at(&self.num, self.var, x)
    }

    pub fn eval_denominator(&self, x: &Rational) -> Rational {
        Self::at(&self.den, self.var, x)
    }

    /// Value at `x`; a vanishing denominator is reported as a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational, PolyError> {
        let d = self.eval_denominator(x);
        if d.is_zero() {
            return Err(PolyError::Pole(x.clone()));
        }
        Ok(&self.eval_numerator(x) / &d)
    }

    /// Limit as the variable tends to infinity; `None` when it diverges.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree_in(self.var);
        let dd = self.den.degree_in(self.var).expect("nonzero denominator");
        match dn {
            None => Some(Rational::zero()),
            Some(n) if n < dd => Some(Rational::zero()),
            Some(n) if n == dd => {
                let lc = |f: &MultiPoly| f.leading_term().map(|(_, c)| c.clone()).unwrap();
                Some(&lc(&self.num) / &lc(&self.den))
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(MultiPoly, MultiPoly) -> MultiPoly) -> Self {
        assert_eq!(self.var, other.var, "rational functions in different variables");
        if self.den == other.den {
            return Self::new(op(self.num.clone(), other.num.clone()), self.den.clone(), self.var).unwrap();
        }
        let num = op(&self.num * &other.den, &other.num * &self.den);
        Self::new(num, &self.den * &other.den, self.var).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "rational functions in different variables");
        Self::new(&self.num * &other.num, &self.den * &other.den, self.var).unwrap()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { var: self.var, num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.num.pow(e), self.den.pow(e), self.var).unwrap()
    }

    /// Value equality by cross-multiplication: `a/b = c/d` iff `a*d = c*b`.
    pub fn same_value(&self, other: &Self) -> bool {
        self.var == other.var && &self.num * &other.den == &other.num * &self.den
    }

    /// The cross-multiplied difference `a*d - c*b`; zero iff equal values.
    pub fn cross_difference(&self, other: &Self) -> MultiPoly {
        &self.num * &other.den - &other.num * &self.den
    }

    /// Substitutes rational functions (all in one variable) for the variables
    /// of `g`. Each variable is cleared over its own denominator raised to the
    /// degree of `g` in it, so no fraction additions are needed.
    pub fn compose(g: &MultiPoly, assignment: &[(Var, &RationalFunction)]) -> Result<Self, PolyError> {
        let Some((_, first)) = assignment.first() else {
            return Err(PolyError::Parse("empty assignment".into()));
        };
        let var = first.var;
        if let Some(v) = g.vars().iter().find(|v| !assignment.iter().any(|(a, _)| a == v)) {
            return Err(PolyError::MissingVariable(v));
        }
        let degs: Vec<u32> = assignment.iter().map(|(v, _)| g.degree_in(*v).unwrap_or(0)).collect();
        let mut num = MultiPoly::zero();
        for (m, c) in g.terms() {
            let mut t = MultiPoly::constant(c.clone());
            for ((v, rf), &d) in assignment.iter().zip(&degs) {
                let e = m.exp(*v) as u32;
                t = &t * &(&rf.num.pow(e) * &rf.den.pow(d - e));
            }
            num = &num + &t;
        }
        let den = assignment
            .iter()
            .zip(&degs)
            .fold(MultiPoly::one(), |acc, ((_, rf), &d)| &acc * &rf.den.pow(d));
        Self::new(num, den, var)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d), Var::Tau).unwrap()
    }

    #[test]
    fn normalizes_denominator_content() {
        let f = rf("3*tau", "-6*tau^2 + 2");
        assert_eq!(f.denominator(), &p("3*tau^2 - 1"));
        assert_eq!(f.numerator(), &p("-3/2*tau"));
        assert!(RationalFunction::new(p("1"), MultiPoly::zero(), Var::Tau).is_err());
    }

    #[test]
    fn eval_and_poles() {
        let f = rf("tau + 1", "tau - 1");
        assert_eq!(f.eval(&Rational::from(3)).unwrap(), Rational::from(2));
        assert_eq!(f.eval(&Rational::one()), Err(PolyError::Pole(Rational::one())));
        assert_eq!(f.limit_at_infinity(), Some(Rational::one()));
        assert_eq!(rf("tau^2", "tau - 1").limit_at_infinity(), None);
        assert_eq!(rf("1", "tau").limit_at_infinity(), Some(Rational::zero()));
    }

    #[test]
    fn field_operations() {
        let a = rf("1", "tau");
        let b = rf("1", "tau + 1");
        assert!(a.sub(&b).same_value(&rf("1", "tau^2 + tau")));
        assert!(a.mul(&b).add(&b).same_value(&rf("1", "tau")));
        assert!(a.pow(2).scale(&Rational::from(2)).same_value(&rf("2", "tau^2")));
    }

    #[test]
    fn compose_clears_denominators() {
        // g(U, V) = U*V - 1 at U = 1/tau, V = tau gives 0
        let g = p("U*V - 1");
        let u = rf("1", "tau");
        let v = rf("tau", "1");
        let r = RationalFunction::compose(&g, &[(Var::U, &u), (Var::V, &v)]).unwrap();
        assert!(r.numerator().is_zero());
        let r = RationalFunction::compose(&p("U^2 + V"), &[(Var::U, &u), (Var::V, &v)]).unwrap();
        assert!(r.same_value(&rf("1 + tau^3", "tau^2")));
    }
}
