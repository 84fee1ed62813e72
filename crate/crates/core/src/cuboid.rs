//! The cuboid polynomial families and their symbolic identities.
//!
//! Chain of objects: the even degree-10 polynomial `Q_{p,q}(t)`, its
//! one-parameter normalization `Q_r(u)`, the monic quintic `P_s(x)` with
//! `Q_r(u) = P_s(u^2)`, the scaled root equation `F(s, y)` (`x = s*y`), the
//! plane curve `G(U, V)` obtained by eliminating against the reciprocal
//! quadratics `s^2 - U*s + 1` and `y^2 - V*y + 1`, and the rational
//! parametrization `U(tau)`, `V(tau)` of `G = 0` by lines through `(2, -2)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use thiserror::Error;

use crate::arith::{rational_sqrt, Integer, Rational};
use crate::check::{CheckId, CheckResult, CheckStatus};
use crate::curve::{self, CurvePoint, ExternalCertificate};
use crate::poly::{
    quadratic_norm_resultant, sylvester_resultant, MultiPoly, PolyError, RationalFunction, UniPolyZ, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("parameters must be positive, got p={0}, q={1}")]
    NonPositive(u64, u64),
    #[error("parameters must be coprime, got p={0}, q={1}")]
    NotCoprime(u64, u64),
    #[error("p = q = {0} is the excluded case s = 1")]
    Excluded(u64),
}

/// Cuboid parameters `p, q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuboidParams {
    p: u64,
    q: u64,
}

impl CuboidParams {
    /// Parameters in the range of the theorem: coprime and distinct.
    pub fn new(p: u64, q: u64) -> Result<Self, ParamError> {
        let params = Self::unrestricted(p, q)?;
        if p.gcd(&q) != 1 {
            return Err(ParamError::NotCoprime(p, q));
        }
        if p == q {
            return Err(ParamError::Excluded(p));
        }
        Ok(params)
    }

    /// Any positive pair, including the excluded `p = q` used as a control.
    pub fn unrestricted(p: u64, q: u64) -> Result<Self, ParamError> {
        if p == 0 || q == 0 {
            return Err(ParamError::NonPositive(p, q));
        }
        Ok(CuboidParams { p, q })
    }

    /// The control pair `(1, 1)`, where `s = 1` and `P_1(-1) = 0`.
    pub fn control() -> Self {
        CuboidParams { p: 1, q: 1 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `s = (p/q)^2`.
    pub fn s(&self) -> Rational {
        let r = Rational::new(self.p.into(), self.q.into()).expect("q > 0");
        &r * &r
    }
}

impl fmt::Display for CuboidParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p, q) = ({}, {})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityName {
    Normalization,
    EvenToQuintic,
    ScaledRoot,
    Inversion,
    ResultantIsGSquared,
    LineFactorization,
    ParamOnG,
    UDisc,
    VDisc,
    FFactorizationOfC,
}

impl IdentityName {
    pub const ALL: [IdentityName; 10] = [
        IdentityName::Normalization,
        IdentityName::EvenToQuintic,
        IdentityName::ScaledRoot,
        IdentityName::Inversion,
        IdentityName::ResultantIsGSquared,
        IdentityName::LineFactorization,
        IdentityName::ParamOnG,
        IdentityName::UDisc,
        IdentityName::VDisc,
        IdentityName::FFactorizationOfC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Normalization => "NORMALIZATION",
            IdentityName::EvenToQuintic => "EVEN_TO_QUINTIC",
            IdentityName::ScaledRoot => "SCALED_ROOT",
            IdentityName::Inversion => "INVERSION",
            IdentityName::ResultantIsGSquared => "RESULTANT_IS_G_SQUARED",
            IdentityName::LineFactorization => "LINE_FACTORIZATION",
            IdentityName::ParamOnG => "PARAM_ON_G",
            IdentityName::UDisc => "U_DISC",
            IdentityName::VDisc => "V_DISC",
            IdentityName::FFactorizationOfC => "F_FACTORIZATION_OF_C",
        }
    }

    /// The statement this identity establishes.
    pub fn citation(self) -> &'static str {
        match self {
            IdentityName::Normalization => "weighted normalization: Q_{p,q}(q^2*u) = q^20 * Q_r(u) with r = p/q",
            IdentityName::EvenToQuintic => "even-to-quintic: Q_r(u) = P_s(u^2) with s = r^2",
            IdentityName::ScaledRoot => "scaled root equation: P_s(s*y) = s^3 * F(s, y)",
            IdentityName::Inversion => "inversion symmetry: F(1/s, 1/y) = -F(s, y) / (s^4*y^5)",
            IdentityName::ResultantIsGSquared => {
                "double resultant: Res_y(Res_s(F, s^2 - U*s + 1), y^2 - V*y + 1) = G(U, V)^2"
            }
            IdentityName::LineFactorization => {
                "line factorization: G(U, tau*(U - 2) - 2) = (U - 2)^4 * (U*(tau^5 + 4*tau^4 - 10*tau^3 + 4*tau^2 + tau) - (2*tau^5 + 12*tau^4 + 60*tau^3 + 32*tau^2 + 18*tau + 4))"
            }
            IdentityName::ParamOnG => "parametrization: G(U(tau), V(tau)) = 0 with V(tau) = tau*(U(tau) - 2) - 2",
            IdentityName::UDisc => {
                "U discriminant: U(tau)^2 - 4 = 16*(tau + 1)^5*(tau^4 + 20*tau^3 + 6*tau^2 + 4*tau + 1) / (tau^2*(tau - 1)^4*(tau^2 + 6*tau + 1)^2)"
            }
            IdentityName::VDisc => {
                "V discriminant: V(tau)^2 - 4 = 256*tau^2*(tau + 1)*(tau^4 + 20*tau^3 + 6*tau^2 + 4*tau + 1) / ((tau - 1)^4*(tau^2 + 6*tau + 1)^2)"
            }
            IdentityName::FFactorizationOfC => {
                "curve factorization: t^5 + 21*t^4 + 26*t^3 + 10*t^2 + 5*t + 1 = (t + 1)*(t^4 + 20*t^3 + 6*t^2 + 4*t + 1)"
            }
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn parse(src: &str) -> MultiPoly {
    MultiPoly::parse(src).expect("built-in polynomial literal")
}

/// `Q_{p,q}(t)` with symbolic `p, q`.
pub fn qpq_symbolic() -> MultiPoly {
    parse(
        "t^10 + (2*q^2 + p^2)*(3*q^2 - 2*p^2)*t^8 \
         + (q^8 + 10*p^2*q^6 + 4*p^4*q^4 - 14*p^6*q^2 + p^8)*t^6 \
         - p^2*q^2*(q^8 - 14*p^2*q^6 + 4*p^4*q^4 + 10*p^6*q^2 + p^8)*t^4 \
         - p^6*q^6*(q^2 + 2*p^2)*(-2*q^2 + 3*p^2)*t^2 \
         - p^10*q^10",
    )
}

/// The normalized family `Q_r(u)`.
pub fn qr_symbolic() -> MultiPoly {
    parse(
        "u^10 + (2 + r^2)*(3 - 2*r^2)*u^8 + (1 + 10*r^2 + 4*r^4 - 14*r^6 + r^8)*u^6 \
         - r^2*(1 - 14*r^2 + 4*r^4 + 10*r^6 + r^8)*u^4 \
         - r^6*(1 + 2*r^2)*(-2 + 3*r^2)*u^2 - r^10",
    )
}

/// The monic quintic `P_s(x)` with symbolic `s`.
pub fn ps_symbolic() -> MultiPoly {
    parse(
        "x^5 + (2 + s)*(3 - 2*s)*x^4 + (1 + 10*s + 4*s^2 - 14*s^3 + s^4)*x^3 \
         - s*(1 - 14*s + 4*s^2 + 10*s^3 + s^4)*x^2 \
         - s^3*(1 + 2*s)*(-2 + 3*s)*x - s^5",
    )
}

/// `Q_{p,q}(t)` for concrete parameters.
pub fn build_qpq(params: &CuboidParams) -> UniPolyZ {
    let f = qpq_symbolic()
        .partial_eval(Var::P, &Rational::from(Integer::from(params.p)))
        .and_then(|f| f.partial_eval(Var::Q, &Rational::from(Integer::from(params.q))))
        .expect("p and q are variables of Q_{p,q}");
    UniPolyZ::from_multipoly(&f, Var::T).expect("integer polynomial in t")
}

/// `P_s(x)` for a concrete `s`, as a polynomial in `x`.
pub fn build_ps(s: &Rational) -> MultiPoly {
    ps_symbolic().partial_eval(Var::S, s).expect("s is a variable of P_s")
}

/// The scaled root equation `F(s, y)`.
pub fn build_f() -> MultiPoly {
    parse(
        "s^2*y^5 + (-2*s^3 - s^2 + 6*s)*y^4 + (s^4 - 14*s^3 + 4*s^2 + 10*s + 1)*y^3 \
         + (-s^4 - 10*s^3 - 4*s^2 + 14*s - 1)*y^2 + (-6*s^3 + s^2 + 2*s)*y - s^2",
    )
}

/// The quotient curve `G(U, V)`.
pub fn build_g() -> MultiPoly {
    parse(
        "V^5 + (4*U - 2)*V^4 + (-10*U^2 - 8*U + 64)*V^3 + (4*U^3 - 108*U^2 + 384)*V^2 \
         + (U^4 - 8*U^3 - 192*U^2 + 768)*V + (-2*U^4 - 128*U^2 + 512)",
    )
}

/// `(U(tau), V(tau))`, the parametrization of `G = 0` by the lines
/// `V + 2 = tau*(U - 2)`.
pub fn build_uv_param() -> (RationalFunction, RationalFunction) {
    let u = RationalFunction::new(
        parse("2*(tau^5 + 6*tau^4 + 30*tau^3 + 16*tau^2 + 9*tau + 2)"),
        parse("tau*(tau - 1)^2*(tau^2 + 6*tau + 1)"),
        Var::Tau,
    )
    .expect("nonzero denominator");
    let v = RationalFunction::new(
        parse("2*(tau^4 + 36*tau^3 + 22*tau^2 + 4*tau + 1)"),
        parse("(tau - 1)^2*(tau^2 + 6*tau + 1)"),
        Var::Tau,
    )
    .expect("nonzero denominator");
    (u, v)
}

/// The factor of `G(U, tau*(U - 2) - 2)` left after removing `(U - 2)^4`.
pub fn line_residual_factor() -> MultiPoly {
    parse("U*(tau^5 + 4*tau^4 - 10*tau^3 + 4*tau^2 + tau) - (2*tau^5 + 12*tau^4 + 60*tau^3 + 32*tau^2 + 18*tau + 4)")
}

/// Rewrites a polynomial in `(r, u)` of weight at most `weight` (deg r = 1,
/// the rest weight 0 here) into `q^weight * f(p/q, u)`, a polynomial in
/// `(p, q, u)`.
pub fn clear_ratio(f: &MultiPoly, weight: u16) -> Result<MultiPoly, PolyError> {
    f.map_terms(|m, c| {
        let a = m.exp(Var::R);
        if a > weight {
            return Err(PolyError::DegreeExceedsBound { var: Var::R, degree: a as u32, bound: weight as u32 });
        }
        let mut out = *m;
        out.0[Var::R.index()] = 0;
        out.0[Var::P.index()] += a;
        out.0[Var::Q.index()] += weight - a;
        Ok((out, c.clone()))
    })
}

/// Both stages of the double elimination by the two resultant routes.
#[derive(Debug, Clone)]
pub struct DoubleResultant {
    pub norm_stage1: MultiPoly,
    pub norm_stage2: MultiPoly,
    pub sylvester_stage1: MultiPoly,
    pub sylvester_stage2: MultiPoly,
}

impl DoubleResultant {
    pub fn compute() -> Result<Self, PolyError> {
        let f = build_f();
        let u = MultiPoly::var(Var::U);
        let v = MultiPoly::var(Var::V);
        let quad_s = parse("s^2 - U*s + 1");
        let quad_y = parse("y^2 - V*y + 1");
        let norm_stage1 = quadratic_norm_resultant(&f, Var::S, &u)?;
        let norm_stage2 = quadratic_norm_resultant(&norm_stage1, Var::Y, &v)?;
        let sylvester_stage1 = sylvester_resultant(&quad_s, &f, Var::S)?;
        let sylvester_stage2 = sylvester_resultant(&quad_y, &sylvester_stage1, Var::Y)?;
        Ok(DoubleResultant { norm_stage1, norm_stage2, sylvester_stage1, sylvester_stage2 })
    }

    pub fn routes_agree(&self) -> bool {
        self.norm_stage1 == self.sylvester_stage1 && self.norm_stage2 == self.sylvester_stage2
    }
}

/// `c` with `f = c * g`, if it exists.
pub fn unit_ratio(f: &MultiPoly, g: &MultiPoly) -> Option<Rational> {
    let (_, lf) = f.leading_term()?;
    let (_, lg) = g.leading_term()?;
    let c = lf / lg;
    (g.scale(&c) == *f).then_some(c)
}

/// The two sides of an identity as polynomials; rational-function identities
/// are returned cross-multiplied.
pub fn identity_sides(name: IdentityName) -> Result<(MultiPoly, MultiPoly), PolyError> {
    match name {
        IdentityName::Normalization => {
            let lhs = qpq_symbolic().substitute(Var::T, &parse("q^2*u"))?;
            let rhs = clear_ratio(&qr_symbolic(), 20)?;
            Ok((lhs, rhs))
        }
        IdentityName::EvenToQuintic => {
            let rhs = ps_symbolic().substitute(Var::X, &parse("u^2"))?.substitute(Var::S, &parse("r^2"))?;
            Ok((qr_symbolic(), rhs))
        }
        IdentityName::ScaledRoot => {
            let lhs = ps_symbolic().substitute(Var::X, &parse("s*y"))?;
            let rhs = &parse("s^3") * &build_f();
            Ok((lhs, rhs))
        }
        IdentityName::Inversion => {
            let f = build_f();
            let rev = f.reverse_in(Var::S, 4)?.reverse_in(Var::Y, 5)?;
            Ok((rev, -f))
        }
        IdentityName::ResultantIsGSquared => {
            let r = DoubleResultant::compute()?;
            Ok((r.norm_stage2, build_g().pow(2)))
        }
        IdentityName::LineFactorization => {
            let lhs = build_g().substitute(Var::V, &parse("tau*(U - 2) - 2"))?;
            let rhs = &parse("U - 2").pow(4) * &line_residual_factor();
            Ok((lhs, rhs))
        }
        IdentityName::ParamOnG => {
            let (u, v) = build_uv_param();
            let on_g = RationalFunction::compose(&build_g(), &[(Var::U, &u), (Var::V, &v)])?;
            Ok((on_g.numerator().clone(), MultiPoly::zero()))
        }
        IdentityName::UDisc => {
            let (u, _) = build_uv_param();
            let lhs = u.pow(2).sub(&constant_rf(4));
            let rhs = RationalFunction::new(
                parse("16*(tau + 1)^5*(tau^4 + 20*tau^3 + 6*tau^2 + 4*tau + 1)"),
                parse("tau^2*(tau - 1)^4*(tau^2 + 6*tau + 1)^2"),
                Var::Tau,
            )?;
            Ok(cross_sides(&lhs, &rhs))
        }
        IdentityName::VDisc => {
            let (_, v) = build_uv_param();
            let lhs = v.pow(2).sub(&constant_rf(4));
            let rhs = RationalFunction::new(
                parse("256*tau^2*(tau + 1)*(tau^4 + 20*tau^3 + 6*tau^2 + 4*tau + 1)"),
                parse("(tau - 1)^4*(tau^2 + 6*tau + 1)^2"),
                Var::Tau,
            )?;
            Ok(cross_sides(&lhs, &rhs))
        }
        IdentityName::FFactorizationOfC => {
            let (product, quintic) = curve::factorization_sides();
            Ok((product, quintic))
        }
    }
}

fn tau_rf() -> RationalFunction {
    RationalFunction::polynomial(MultiPoly::var(Var::Tau), Var::Tau).unwrap()
}

fn constant_rf(c: i64) -> RationalFunction {
    RationalFunction::polynomial(MultiPoly::int(c), Var::Tau).unwrap()
}

fn cross_sides(a: &RationalFunction, b: &RationalFunction) -> (MultiPoly, MultiPoly) {
    (a.numerator() * b.denominator(), b.numerator() * a.denominator())
}

fn compare(name: IdentityName, lhs: &MultiPoly, rhs: &MultiPoly, note: &str) -> CheckResult {
    let id = CheckId::Identity(name);
    if lhs == rhs {
        let witness = format!("{}lhs = rhs = {}", note, lhs);
        CheckResult::new(id, CheckStatus::Pass, name.citation(), witness)
    } else {
        let witness = format!("{}lhs - rhs = {}", note, lhs - rhs);
        CheckResult::new(id, CheckStatus::Fail, name.citation(), witness)
    }
}

/// Runs one identity as an exact polynomial equality.
pub fn verify_identity(name: IdentityName) -> CheckResult {
    let id = CheckId::Identity(name);
    let fail = |e: PolyError| CheckResult::new(id, CheckStatus::Fail, name.citation(), format!("error: {}", e));
    match name {
        IdentityName::ResultantIsGSquared => match DoubleResultant::compute() {
            Ok(r) => verify_double_resultant(&r),
            Err(e) => fail(e),
        },
        IdentityName::LineFactorization => {
            let (lhs, rhs) = match identity_sides(name) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let quotient = lhs.divexact(&parse("U - 2").pow(4));
            let note = match &quotient {
                Ok(q) if *q == line_residual_factor() => String::from("(U - 2)^4 divides exactly; "),
                Ok(q) => {
                    return CheckResult::new(
                        id,
                        CheckStatus::Fail,
                        name.citation(),
                        format!("quotient by (U - 2)^4 is {}", q),
                    )
                }
                Err(e) => return fail(e.clone()),
            };
            compare(name, &lhs, &rhs, &note)
        }
        IdentityName::ParamOnG => {
            let (u, v) = build_uv_param();
            let composed = RationalFunction::compose(&build_g(), &[(Var::U, &u), (Var::V, &v)]);
            let line = RationalFunction::compose(&parse("tau*(U - 2) - 2"), &[(Var::U, &u), (Var::Tau, &tau_rf())]);
            match (composed, line) {
                (Ok(g), Ok(line)) => {
                    let on_g = g.numerator().clone();
                    let line_diff = v.cross_difference(&line);
                    let ok = on_g.is_zero() && line_diff.is_zero();
                    let witness = format!(
                        "U = {}; V = {}; numerator of G(U, V) = {}; V - (tau*(U - 2) - 2) cross-multiplied = {}",
                        u, v, on_g, line_diff
                    );
                    let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
                    CheckResult::new(id, status, name.citation(), witness)
                }
                (Err(e), _) | (_, Err(e)) => fail(e),
            }
        }
        IdentityName::FFactorizationOfC => curve::check_f_factorization(),
        _ => match identity_sides(name) {
            Ok((lhs, rhs)) => compare(name, &lhs, &rhs, ""),
            Err(e) => fail(e),
        },
    }
}

/// Compares the norm-route double resultant with `G^2`, records the unit
/// constant, and cross-checks both stages against the Sylvester route.
pub fn verify_double_resultant(r: &DoubleResultant) -> CheckResult {
    let name = IdentityName::ResultantIsGSquared;
    let g2 = build_g().pow(2);
    let unit = unit_ratio(&r.norm_stage2, &g2);
    let agree = r.routes_agree();
    let status = if unit.is_some() && agree { CheckStatus::Pass } else { CheckStatus::Fail };
    let unit_text = match &unit {
        Some(c) => format!("unit = {}", c),
        None => format!("not a constant multiple: lhs - rhs = {}", &r.norm_stage2 - &g2),
    };
    let witness = format!(
        "{}; sylvester oracle {} at both stages; G = {}",
        unit_text,
        if agree { "agrees" } else { "DISAGREES" },
        build_g()
    );
    CheckResult::new(CheckId::Identity(name), status, name.citation(), witness)
}

/// All rational `s` with `s^2 - U*s + 1 = 0`, ascending.
pub fn solve_s_from_u(u: &Rational) -> Vec<Rational> {
    let two = Rational::from(2);
    let disc = &(u * u) - &Rational::from(4);
    match rational_sqrt(&disc) {
        None => Vec::new(),
        Some(root) if root.is_zero() => alloc::vec![u / &two],
        Some(root) => alloc::vec![&(u - &root) / &two, &(u + &root) / &two],
    }
}

/// How `U(tau)` behaves at one curve parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UBehaviour {
    /// `tau = infinity`: the limit of `U`.
    Limit(Rational),
    /// Finite value `numerator / denominator`.
    Value { numerator: Rational, denominator: Rational, value: Rational },
    /// Pole: the denominator vanishes, the numerator does not.
    Pole { numerator: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterCase {
    /// `None` is the point at infinity.
    pub tau: Option<Rational>,
    pub behaviour: UBehaviour,
    /// All rational `s` with `s + 1/s = U`.
    pub solutions: Vec<Rational>,
    pub positive: Vec<Rational>,
}

impl fmt::Display for ParameterCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tau {
            None => f.write_str("tau = infinity: ")?,
            Some(t) => write!(f, "tau = {}: ", t)?,
        }
        match &self.behaviour {
            UBehaviour::Limit(l) => write!(f, "U -> {}", l)?,
            UBehaviour::Value { numerator, denominator, value } => {
                write!(f, "U = {}/{} = {}", numerator, denominator, value)?
            }
            UBehaviour::Pole { numerator } => write!(f, "pole, numerator = {}", numerator)?,
        }
        f.write_str(", s in {")?;
        for (i, s) in self.solutions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", s)?;
        }
        f.write_str("}")
    }
}

/// Works out `U(tau)` and the rational `s` above it for each distinct
/// `tau`-coordinate of the given curve points.
pub fn parameter_cases(points: &[CurvePoint]) -> Vec<ParameterCase> {
    let (u, _) = build_uv_param();
    let taus: BTreeSet<Option<Rational>> = points
        .iter()
        .map(|pt| match pt {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { t, .. } => Some(t.clone()),
        })
        .collect();
    // infinity last, finite values ascending
    let mut ordered: Vec<Option<Rational>> = taus.iter().filter(|t| t.is_some()).cloned().collect();
    if taus.contains(&None) {
        ordered.insert(0, None);
    }
    ordered
        .into_iter()
        .map(|tau| {
            let (behaviour, solutions) = match &tau {
                None => match u.limit_at_infinity() {
                    Some(l) => {
                        let sols = solve_s_from_u(&l);
                        (UBehaviour::Limit(l), sols)
                    }
                    None => (UBehaviour::Pole { numerator: Rational::zero() }, Vec::new()),
                },
                Some(t) => {
                    let numerator = u.eval_numerator(t);
                    let denominator = u.eval_denominator(t);
                    if denominator.is_zero() {
                        (UBehaviour::Pole { numerator }, Vec::new())
                    } else {
                        let value = &numerator / &denominator;
                        let sols = solve_s_from_u(&value);
                        (UBehaviour::Value { numerator, denominator, value }, sols)
                    }
                }
            };
            let positive = solutions.iter().filter(|s| s.is_positive()).cloned().collect();
            ParameterCase { tau, behaviour, solutions, positive }
        })
        .collect()
}

fn expected_cases() -> Vec<ParameterCase> {
    let r = Rational::from;
    alloc::vec![
        ParameterCase {
            tau: None,
            behaviour: UBehaviour::Limit(r(2)),
            solutions: alloc::vec![r(1)],
            positive: alloc::vec![r(1)],
        },
        ParameterCase {
            tau: Some(r(-1)),
            behaviour: UBehaviour::Value { numerator: r(-32), denominator: r(16), value: r(-2) },
            solutions: alloc::vec![r(-1)],
            positive: Vec::new(),
        },
        ParameterCase {
            tau: Some(r(0)),
            behaviour: UBehaviour::Pole { numerator: r(4) },
            solutions: Vec::new(),
            positive: Vec::new(),
        },
        ParameterCase {
            tau: Some(r(1)),
            behaviour: UBehaviour::Pole { numerator: r(128) },
            solutions: Vec::new(),
            positive: Vec::new(),
        },
    ]
}

/// Mechanized case analysis over the given curve points: the only positive
/// rational `s` above them must be `s = 1`, and each case must match the
/// expected table (limit 2 at infinity, `U(-1) = -32/16`, poles at 0 and 1
/// with numerators 4 and 128).
pub fn no_admissible_report_for(points: &[CurvePoint]) -> CheckResult {
    let cases = parameter_cases(points);
    let expected = expected_cases();
    let mut problems: Vec<String> = Vec::new();
    for case in &cases {
        match expected.iter().find(|e| e.tau == case.tau) {
            Some(e) if e == case => {}
            Some(e) => problems.push(format!("case {} deviates from expected {}", case, e)),
            None => problems.push(format!("unexpected case {}", case)),
        }
    }
    for e in &expected {
        if !cases.iter().any(|c| c.tau == e.tau) {
            problems.push(format!("missing case {}", e));
        }
    }
    let admissible: BTreeSet<Rational> = cases.iter().flat_map(|c| c.positive.iter().cloned()).collect();
    if admissible.iter().ne([Rational::from(1)].iter()) {
        problems.push(format!("positive s found: {:?}", admissible));
    }
    let mut witness = String::new();
    for case in &cases {
        witness.push_str(&format!("{}; ", case));
    }
    let status = if problems.is_empty() {
        witness.push_str("only admissible s is 1 (the excluded case p = q)");
        CheckStatus::Pass
    } else {
        witness.push_str(&problems.join("; "));
        CheckStatus::Fail
    };
    CheckResult::new(
        CheckId::NoAdmissibleParameter,
        status,
        "no admissible parameter: the only positive rational s with s + 1/s = U(tau) over the rational points of C is s = 1",
        witness,
    )
}

/// [`no_admissible_report_for`] over the externally certified point set.
pub fn lemma_noadmissible_report() -> CheckResult {
    no_admissible_report_for(&ExternalCertificate::from_transcript().claimed_points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn eval(f: &MultiPoly, vals: &[(Var, Rational)]) -> Rational {
        let pt: BTreeMap<Var, Rational> = vals.iter().cloned().collect();
        f.eval(&pt).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CuboidParams::new(1, 2).is_ok());
        assert_eq!(CuboidParams::new(2, 4), Err(ParamError::NotCoprime(2, 4)));
        assert_eq!(CuboidParams::new(1, 1), Err(ParamError::Excluded(1)));
        assert_eq!(CuboidParams::new(0, 1), Err(ParamError::NonPositive(0, 1)));
        assert_eq!(CuboidParams::control().s(), r(1));
        assert_eq!(CuboidParams::new(2, 3).unwrap().s(), Rational::frac(4, 9));
    }

    #[test]
    fn qpq_examples() {
        let q12 = build_qpq(&CuboidParams::new(1, 2).unwrap());
        assert_eq!(q12, UniPolyZ::from_i64(&[-1024, 0, 1920, 0, 2140, 0, 905, 0, 90, 0, 1]));
        let q11 = build_qpq(&CuboidParams::control());
        assert_eq!(q11.constant_term(), Integer::from(-1));
        assert_eq!(q11.coeff(8), Integer::from(3));
        for (p, q) in [(1, 2), (3, 7), (5, 2)] {
            let f = build_qpq(&CuboidParams::new(p, q).unwrap());
            assert!(f.is_monic());
            assert_eq!(f.degree(), Some(10));
            assert!(f.coeffs().iter().skip(1).step_by(2).all(|c| *c == Integer::from(0)));
        }
    }

    #[test]
    fn ps_examples() {
        assert_eq!(build_ps(&r(1)), parse("x^5 + 3*x^4 + 2*x^3 - 2*x^2 - 3*x - 1"));
        assert_eq!(eval(&build_ps(&r(1)), &[(Var::X, r(-1))]), r(0));
        assert_eq!(build_ps(&r(0)), parse("x^5 + 6*x^4 + x^3"));
        for s in [Rational::frac(3, 7), r(-2), r(5)] {
            let at0 = eval(&build_ps(&s), &[(Var::X, r(0))]);
            assert_eq!(at0, -s.pow(5).unwrap());
        }
    }

    #[test]
    fn f_examples() {
        let f = build_f();
        let cy = f.coefficients_in(Var::Y);
        assert_eq!(cy[5], parse("s^2"));
        assert_eq!(cy[0], parse("-s^2"));
        assert_eq!(eval(&f, &[(Var::S, r(1)), (Var::Y, r(1))]), r(0));
    }

    #[test]
    fn g_examples() {
        let g = build_g();
        let cv = g.coefficients_in(Var::V);
        assert_eq!(cv[4], parse("4*U - 2"));
        assert_eq!(cv[0], parse("-2*U^4 - 128*U^2 + 512"));
        assert_eq!(eval(&g, &[(Var::U, r(2)), (Var::V, r(-2))]), r(0));
    }

    #[test]
    fn uv_param_examples() {
        let (u, _) = build_uv_param();
        assert_eq!(u.eval_numerator(&r(-1)), r(-32));
        assert_eq!(u.eval_denominator(&r(-1)), r(16));
        assert_eq!(u.eval(&r(-1)).unwrap(), r(-2));
        assert_eq!(u.eval(&r(2)).unwrap(), Rational::frac(452, 17));
        assert_eq!(u.eval_numerator(&r(0)), r(4));
        assert_eq!(u.eval_numerator(&r(1)), r(128));
        assert!(u.eval(&r(0)).is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_s_from_u(&r(2)), [r(1)]);
        assert_eq!(solve_s_from_u(&r(-2)), [r(-1)]);
        assert_eq!(solve_s_from_u(&Rational::frac(5, 2)), [Rational::frac(1, 2), r(2)]);
        assert!(solve_s_from_u(&r(3)).is_empty());
        assert!(solve_s_from_u(&r(0)).is_empty());
    }

    #[test]
    fn reciprocal_solutions_multiply_to_one() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let s = Rational::frac(rng.gen_range(1..50), rng.gen_range(1..50));
            let u = &s + &s.recip().unwrap();
            let sols = solve_s_from_u(&u);
            assert!(sols.contains(&s));
            if sols.len() == 2 {
                assert_eq!(&sols[0] * &sols[1], r(1));
            }
        }
    }

    #[test]
    fn cheap_identities_pass() {
        for name in IdentityName::ALL {
            if name == IdentityName::ResultantIsGSquared {
                continue;
            }
            let res = verify_identity(name);
            assert_eq!(res.status, CheckStatus::Pass, "{}: {}", name, res.witness);
        }
    }

    #[test]
    fn broken_identity_reports_difference() {
        let lhs = build_f();
        let rhs = &build_f() + &parse("y");
        let res = compare(IdentityName::Inversion, &lhs, &rhs, "");
        assert_eq!(res.status, CheckStatus::Fail);
        assert!(res.witness.ends_with("-y"), "{}", res.witness);
    }

    #[test]
    fn noadmissible_report_passes() {
        let res = lemma_noadmissible_report();
        assert_eq!(res.status, CheckStatus::Pass, "{}", res.witness);
    }

    #[test]
    fn noadmissible_flags_foreign_points() {
        // tau = 2 gives U = 452/17, not a valid case
        let mut pts = ExternalCertificate::from_transcript().claimed_points;
        pts.push(CurvePoint::Affine { t: r(2), w: r(5) });
        assert_eq!(no_admissible_report_for(&pts).status, CheckStatus::Fail);
        let mut pts = ExternalCertificate::from_transcript().claimed_points;
        pts.retain(|p| *p != CurvePoint::Infinity);
        assert_eq!(no_admissible_report_for(&pts).status, CheckStatus::Fail);
    }

    #[test]
    fn control_root_and_even_factor() {
        let params = CuboidParams::control();
        let q11 = build_qpq(&params).to_multipoly(Var::T);
        let x0 = r(-1);
        assert_eq!(eval(&build_ps(&params.s()), &[(Var::X, x0.clone())]), r(0));
        // t^2 - q^4*x0 with q = 1
        let quotient = q11.divexact(&parse("t^2 + 1")).unwrap();
        assert_eq!(&quotient * &parse("t^2 + 1"), q11);
        let qr1 = qr_symbolic().partial_eval(Var::R, &r(1)).unwrap();
        assert!(qr1.divexact(&parse("u^2 + 1")).is_ok());
    }

    fn random_rational(rng: &mut StdRng) -> Rational {
        let num = rng.gen_range(-40..=40);
        let den = rng.gen_range(1..=25);
        Rational::frac(num, den)
    }

    fn nonzero(rng: &mut StdRng) -> Rational {
        loop {
            let x = random_rational(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    // Every identity, evaluated numerically at random points from the
    // unexpanded definitions rather than the symbolic sides.
    #[test]
    fn numeric_shadow_of_identities() {
        let mut rng = StdRng::seed_from_u64(2024);
        let qpq = qpq_symbolic();
        let qr = qr_symbolic();
        let ps = ps_symbolic();
        let f = build_f();
        let g = build_g();
        let (uf, vf) = build_uv_param();
        let quartic = parse("t^4 + 20*t^3 + 6*t^2 + 4*t + 1");
        let quintic = parse("t^5 + 21*t^4 + 26*t^3 + 10*t^2 + 5*t + 1");
        for _ in 0..20 {
            let p = nonzero(&mut rng);
            let q = nonzero(&mut rng);
            let u = random_rational(&mut rng);
            let r_ = &p / &q;
            let lhs = eval(&qpq, &[(Var::P, p.clone()), (Var::Q, q.clone()), (Var::T, &(&q * &q) * &u)]);
            let rhs = &q.pow(20).unwrap() * &eval(&qr, &[(Var::R, r_.clone()), (Var::Uu, u.clone())]);
            assert_eq!(lhs, rhs, "normalization");

            let s_ = &r_ * &r_;
            let lhs = eval(&qr, &[(Var::R, r_.clone()), (Var::Uu, u.clone())]);
            let rhs = eval(&ps, &[(Var::S, s_.clone()), (Var::X, &u * &u)]);
            assert_eq!(lhs, rhs, "even to quintic");

            let s = nonzero(&mut rng);
            let y = nonzero(&mut rng);
            let lhs = eval(&ps, &[(Var::S, s.clone()), (Var::X, &s * &y)]);
            let rhs = &s.pow(3).unwrap() * &eval(&f, &[(Var::S, s.clone()), (Var::Y, y.clone())]);
            assert_eq!(lhs, rhs, "scaled root");

            let inv = eval(&f, &[(Var::S, s.recip().unwrap()), (Var::Y, y.recip().unwrap())]);
            let lhs = &(&s.pow(4).unwrap() * &y.pow(5).unwrap()) * &inv;
            assert!((&lhs + &eval(&f, &[(Var::S, s.clone()), (Var::Y, y.clone())])).is_zero(), "inversion");

            // G vanishes at (s + 1/s, y + 1/y) whenever F(s, y) vanishes; off
            // the curve, the double resultant equals the product of F over the
            // four lifts, which must equal G^2.
            let uu = &s + &s.recip().unwrap();
            let vv = &y + &y.recip().unwrap();
            let lifts = [(&s, &y), (&s, &y.recip().unwrap()), (&s.recip().unwrap(), &y), (&s.recip().unwrap(), &y.recip().unwrap())];
            let prod: Rational = lifts
                .iter()
                .map(|(a, b)| eval(&f, &[(Var::S, (*a).clone()), (Var::Y, (*b).clone())]))
                .fold(r(1), |acc, x| &acc * &x);
            let gv = eval(&g, &[(Var::U, uu.clone()), (Var::V, vv.clone())]);
            assert_eq!(prod, &gv * &gv, "double resultant");

            let uval = random_rational(&mut rng);
            let tau = loop {
                let t = random_rational(&mut rng);
                if !uf.eval_denominator(&t).is_zero() {
                    break t;
                }
            };
            let line_v = &(&tau * &(&uval - &r(2))) - &r(2);
            let lhs = eval(&g, &[(Var::U, uval.clone()), (Var::V, line_v)]);
            let rhs = &(&uval - &r(2)).pow(4).unwrap()
                * &eval(&line_residual_factor(), &[(Var::U, uval.clone()), (Var::Tau, tau.clone())]);
            assert_eq!(lhs, rhs, "line factorization");

            let ut = uf.eval(&tau).unwrap();
            let vt = vf.eval(&tau).unwrap();
            assert!(eval(&g, &[(Var::U, ut.clone()), (Var::V, vt.clone())]).is_zero(), "param on G");
            assert_eq!(vt, &(&tau * &(&ut - &r(2))) - &r(2));

            let qv = eval(&quartic, &[(Var::T, tau.clone())]);
            let sq = |x: &Rational| x * x;
            let a = &tau + &r(1);
            let b = &tau - &r(1);
            let c = eval(&parse("t^2 + 6*t + 1"), &[(Var::T, tau.clone())]);
            let rhs = &(&r(16) * &a.pow(5).unwrap()) * &qv / (&(&sq(&tau) * &b.pow(4).unwrap()) * &sq(&c));
            assert_eq!(&sq(&ut) - &r(4), rhs, "U disc");
            let rhs = &(&(&r(256) * &sq(&tau)) * &a) * &qv / (&b.pow(4).unwrap() * &sq(&c));
            assert_eq!(&sq(&vt) - &r(4), rhs, "V disc");

            let t = random_rational(&mut rng);
            assert_eq!(
                eval(&quintic, &[(Var::T, t.clone())]),
                &(&t + &r(1)) * &eval(&quartic, &[(Var::T, t.clone())]),
                "curve factorization"
            );
        }
    }
}
