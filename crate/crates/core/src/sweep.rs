//! Brute-force rational root sweep over cuboid parameters.
//!
//! For `s = (p/q)^2` the cleared quintic `P^(X) = q^20 * P_s(X / q^4)` is monic
//! with integer coefficients and constant term `-p^10 q^10`, so its rational
//! roots are integer divisors of `p^10 q^10`, and the factorization of that
//! number comes for free from those of `p` and `q`. The same divisors bound
//! the integer roots of `Q_{p,q}(t) = P^(t^2)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{Integer, Rational};
use crate::cuboid::{build_ps, build_qpq, qr_symbolic, CuboidParams};
use crate::poly::{MultiPoly, UniPolyZ, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("sweep bound must be at least 2, got {0}")]
    BoundTooSmall(u64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub type Factorization = Vec<(Integer, u32)>;

/// Trial division. Fast for the smooth numbers arising here; a large prime
/// cofactor costs `O(sqrt(n))`.
pub fn factor_integer(n: &Integer) -> Factorization {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = Integer::from(2u32);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == Integer::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

fn factor_u64(n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Factorization of `p^10 q^10`.
pub fn factor_constant(params: &CuboidParams) -> Factorization {
    let mut merged = factor_u64(params.p());
    for (prime, e) in factor_u64(params.q()) {
        *merged.entry(prime).or_insert(0) += e;
    }
    merged.into_iter().map(|(prime, e)| (Integer::from(prime), 10 * e)).collect()
}

// Moduli for screening candidate roots before exact evaluation.
const SCREEN: [u64; 2] = [(1 << 61) - 1, 1_000_000_007];

fn residue(n: &Integer, m: u64) -> u64 {
    let r = n % Integer::from(m);
    let r = if r.is_negative() { r + Integer::from(m) } else { r };
    r.to_u64().expect("residue fits")
}

/// Positive divisors paired with their residues modulo [`SCREEN`].
fn divisors_with_residues(factors: &[(Integer, u32)]) -> Vec<(Integer, [u64; 2])> {
    let mut out = alloc::vec![(Integer::one(), [1u64, 1u64])];
    for (prime, e) in factors {
        let pr = [residue(prime, SCREEN[0]), residue(prime, SCREEN[1])];
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for (d, res) in &out {
            let mut d = d.clone();
            let mut res = *res;
            next.push((d.clone(), res));
            for _ in 0..*e {
                d *= prime;
                for i in 0..2 {
                    res[i] = ((res[i] as u128 * pr[i] as u128) % SCREEN[i] as u128) as u64;
                }
                next.push((d.clone(), res));
            }
        }
        out = next;
    }
    out
}

/// Integer roots of a monic polynomial, given the factorization of the
/// absolute value of its constant term. A zero constant term contributes the
/// root 0 and the search continues on `f / X`.
pub fn integer_roots_monic_with(f: &UniPolyZ, factors: &[(Integer, u32)]) -> Result<Vec<Integer>, SweepError> {
    if f.is_zero() {
        return Err(SweepError::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(SweepError::NotMonic);
    }
    let mut f = f.clone();
    let mut roots = Vec::new();
    while f.constant_term().is_zero() && f.degree() > Some(0) {
        roots.push(Integer::zero());
        f = f.div_by_x().expect("zero constant term");
    }
    if f.degree() == Some(0) {
        return Ok(roots);
    }
    let screen = [f.coeffs_mod(SCREEN[0]), f.coeffs_mod(SCREEN[1])];
    let eval_mod = |coeffs: &[u64], x: u64, m: u64| -> u64 {
        coeffs.iter().rev().fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % m as u128) as u64
    };
    for (d, res) in divisors_with_residues(factors) {
        for negative in [false, true] {
            let passes = (0..2).all(|i| {
                let x = if negative { (SCREEN[i] - res[i]) % SCREEN[i] } else { res[i] };
                eval_mod(&screen[i], x, SCREEN[i]) == 0
            });
            if !passes {
                continue;
            }
            let x = if negative { -d.clone() } else { d.clone() };
            if f.eval(&x).is_zero() {
                roots.push(x);
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Integer roots of a monic polynomial by enumerating the divisors of its
/// constant term, factored by trial division.
pub fn integer_roots_monic(f: &UniPolyZ) -> Result<Vec<Integer>, SweepError> {
    let mut g = f.clone();
    while g.constant_term().is_zero() && g.degree() > Some(0) {
        g = g.div_by_x().unwrap();
    }
    let factors = factor_integer(&g.constant_term());
    integer_roots_monic_with(f, &factors)
}

/// `P^(X) = q^20 * P_s(X / q^4)` with `s = (p/q)^2`.
pub fn clear_to_integer_quintic(params: &CuboidParams) -> UniPolyZ {
    let ps = build_ps(&params.s());
    let q = Integer::from(params.q());
    let coeffs = ps.coefficients_in(Var::X);
    let cleared: Vec<Integer> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let c = c.as_constant().expect("coefficients of P_s are constants");
            let scaled = &c * &Rational::from(num_traits::pow(q.clone(), 20 - 4 * k));
            assert!(scaled.is_integer(), "cleared quintic has integer coefficients");
            scaled.numer().clone()
        })
        .collect();
    UniPolyZ::new(cleared)
}

/// Rational roots of `P_s`, `s = (p/q)^2`: the integer roots of the cleared
/// quintic divided by `q^4`. Complete because the cleared quintic is monic.
pub fn rational_roots_ps(params: &CuboidParams) -> Vec<Rational> {
    let cleared = clear_to_integer_quintic(params);
    let q4 = Rational::from(Integer::from(params.q()).pow(4));
    integer_roots_monic_with(&cleared, &factor_constant(params))
        .expect("cleared quintic is monic")
        .into_iter()
        .map(|x| &Rational::from(x) / &q4)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// `P_s` has a rational root.
    PsRoot,
    /// `Q_{p,q}` has an integer root.
    QpqRoot,
    /// `P^(t^2) != Q_{p,q}(t)`.
    Composition,
    /// A root of `Q_{p,q}` without the matching root of `P_s`.
    Bridge,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::PsRoot => "ps_root",
            ViolationKind::QpqRoot => "qpq_root",
            ViolationKind::Composition => "composition",
            ViolationKind::Bridge => "bridge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub p: u64,
    pub q: u64,
    pub kind: ViolationKind,
    /// The offending root, or the mismatch.
    pub detail: String,
}

/// Everything checked for one parameter pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub params: CuboidParams,
    pub ps_roots: Vec<Rational>,
    pub qpq_roots: Vec<Integer>,
    pub composition_holds: bool,
}

impl PairOutcome {
    pub fn violations(&self) -> Vec<Violation> {
        let (p, q) = (self.params.p(), self.params.q());
        let mut out = Vec::new();
        if !self.composition_holds {
            out.push(Violation { p, q, kind: ViolationKind::Composition, detail: "P^(t^2) != Q_{p,q}(t)".into() });
        }
        for x in &self.ps_roots {
            out.push(Violation { p, q, kind: ViolationKind::PsRoot, detail: format!("{}", x) });
        }
        let q2 = Rational::from(Integer::from(q).pow(2));
        for t0 in &self.qpq_roots {
            out.push(Violation { p, q, kind: ViolationKind::QpqRoot, detail: format!("{}", t0) });
            let u0 = &Rational::from(t0) / &q2;
            let x0 = &u0 * &u0;
            if !self.ps_roots.contains(&x0) {
                out.push(Violation { p, q, kind: ViolationKind::Bridge, detail: format!("t = {}, x = {}", t0, x0) });
            }
        }
        out
    }
}

pub fn check_pair(params: &CuboidParams) -> PairOutcome {
    let cleared = clear_to_integer_quintic(params);
    let qpq = build_qpq(params);
    let factors = factor_constant(params);
    let qpq_roots = integer_roots_monic_with(&qpq, &factors).expect("Q_{p,q} is monic");
    PairOutcome {
        params: *params,
        ps_roots: rational_roots_ps(params),
        qpq_roots,
        composition_holds: cleared.compose_square() == qpq,
    }
}

/// The excluded pair `p = q = 1`, where a root must be found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlCase {
    pub params: CuboidParams,
    pub ps_roots: Vec<Rational>,
    pub qpq_integer_roots: Vec<Integer>,
    /// `t^2 - q^4*x0` for the root `x0`.
    pub even_factor: Option<MultiPoly>,
    /// `Q_{p,q}(t) / (t^2 - q^4*x0)` when the division is exact.
    pub quotient: Option<MultiPoly>,
    /// `u^2 - x0` divides `Q_r(u)`.
    pub normalized_factor_divides: bool,
}

impl ControlCase {
    pub fn compute() -> Self {
        let params = CuboidParams::control();
        let ps_roots = rational_roots_ps(&params);
        let qpq = build_qpq(&params);
        let qpq_integer_roots = integer_roots_monic_with(&qpq, &factor_constant(&params)).expect("monic");
        let q4 = Rational::from(Integer::from(params.q()).pow(4));
        let minus_one = Rational::from(-1);
        let x0 = ps_roots.iter().find(|&x| *x == minus_one).cloned();
        let even_factor = x0.as_ref().map(|x0| {
            &MultiPoly::parse("t^2").unwrap() - &MultiPoly::constant(&q4 * x0)
        });
        let quotient = even_factor.as_ref().and_then(|f| qpq.to_multipoly(Var::T).divexact(f).ok());
        let normalized_factor_divides = x0.as_ref().is_some_and(|x0| {
            let r = Rational::new(params.p().into(), params.q().into()).unwrap();
            let qr = qr_symbolic().partial_eval(Var::R, &r).unwrap();
            let factor = &MultiPoly::parse("u^2").unwrap() - &MultiPoly::constant(x0.clone());
            qr.divexact(&factor).is_ok()
        });
        ControlCase { params, ps_roots, qpq_integer_roots, even_factor, quotient, normalized_factor_divides }
    }

    /// The root `-1` of `P_1` is found, both even factors divide, and every
    /// integer root `t0` of `Q_{1,1}` maps to the root `t0^2` of `P_1`.
    pub fn ok(&self) -> bool {
        let bridge = self.qpq_integer_roots.iter().all(|t0| {
            let x = Rational::from(t0 * t0);
            self.ps_roots.contains(&x)
        });
        self.ps_roots.contains(&Rational::from(-1)) && self.quotient.is_some() && self.normalized_factor_divides && bridge
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub bound: u64,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
    pub control_case: ControlCase,
}

impl SweepReport {
    /// Orders violations by `(p, q)` so the report does not depend on the
    /// order outcomes arrived in.
    pub fn assemble(bound: u64, outcomes: &[PairOutcome], control_case: ControlCase) -> Self {
        let mut violations: Vec<Violation> = outcomes.iter().flat_map(PairOutcome::violations).collect();
        violations.sort();
        SweepReport { bound, pairs_checked: outcomes.len(), violations, control_case }
    }

    pub fn confirmed(&self) -> bool {
        self.violations.is_empty() && self.control_case.ok()
    }
}

/// Ordered coprime pairs `p != q` in `[1, bound]`, by `p` then `q`.
pub fn coprime_pairs(bound: u64) -> Vec<CuboidParams> {
    let mut out = Vec::new();
    for p in 1..=bound {
        for q in 1..=bound {
            if let Ok(params) = CuboidParams::new(p, q) {
                out.push(params);
            }
        }
    }
    out
}

pub fn validate_bound(bound: u64) -> Result<(), SweepError> {
    if bound < 2 {
        Err(SweepError::BoundTooSmall(bound))
    } else {
        Ok(())
    }
}

/// Sequential sweep over [`coprime_pairs`].
pub fn sweep(bound: u64) -> Result<SweepReport, SweepError> {
    validate_bound(bound)?;
    let outcomes: Vec<PairOutcome> = coprime_pairs(bound).iter().map(check_pair).collect();
    Ok(SweepReport::assemble(bound, &outcomes, ControlCase::compute()))
}
