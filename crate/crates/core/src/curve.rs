//! The genus-2 curve `C: w^2 = t^5 + 21t^4 + 26t^3 + 10t^2 + 5t + 1`.
//!
//! Membership, a bounded-height search for rational points, and the record
//! of the externally computed point set. Completeness of `C(Q)` rests on a
//! rank bound plus Chabauty computation done elsewhere; this module only
//! reproduces the search and keeps that result as an explicit assumption.
//!
//! Projective output of the form `(X : Y : Z)` uses weights `(1, 3, 1)`, so an
//! affine point is `(t, w) = (X/Z, Y/Z^3)` and `(1 : 0 : 0)` is the single
//! point at infinity (`deg f = 5` is odd).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{isqrt, isqrt_u128, may_be_square, may_be_square_u128, Integer, Rational};
use crate::check::{CheckId, CheckResult, CheckStatus};
use crate::cuboid::IdentityName;
use crate::poly::MultiPoly;

/// Coefficients of the curve quintic, ascending.
pub const CURVE_COEFFS: [i64; 6] = [1, 5, 10, 26, 21, 1];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("search height must be at least 1")]
    ZeroHeight,
    #[error("malformed projective point {0:?}")]
    BadPoint(String),
    #[error("transcript line {0:?} not found")]
    MissingTranscriptLine(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { t: Rational, w: Rational },
}

impl CurvePoint {
    pub fn affine(t: Rational, w: Rational) -> Self {
        CurvePoint::Affine { t, w }
    }

    /// The image under the hyperelliptic involution `w -> -w`.
    pub fn negate(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { t, w } => CurvePoint::Affine { t: t.clone(), w: -w },
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("infinity"),
            CurvePoint::Affine { t, w } => write!(f, "({}, {})", t, w),
        }
    }
}

/// The curve quintic as a polynomial in `t`.
pub fn curve_quintic() -> MultiPoly {
    MultiPoly::parse("t^5 + 21*t^4 + 26*t^3 + 10*t^2 + 5*t + 1").unwrap()
}

/// `(t + 1)*(t^4 + 20*t^3 + 6*t^2 + 4*t + 1)` expanded, and the quintic.
pub fn factorization_sides() -> (MultiPoly, MultiPoly) {
    let linear = MultiPoly::parse("t + 1").unwrap();
    let quartic = MultiPoly::parse("t^4 + 20*t^3 + 6*t^2 + 4*t + 1").unwrap();
    (&linear * &quartic, curve_quintic())
}

pub fn check_f_factorization() -> CheckResult {
    let name = IdentityName::FFactorizationOfC;
    let (product, quintic) = factorization_sides();
    let id = CheckId::Identity(name);
    if product == quintic {
        CheckResult::new(id, CheckStatus::Pass, name.citation(), format!("lhs = rhs = {}", quintic))
    } else {
        CheckResult::new(id, CheckStatus::Fail, name.citation(), format!("lhs - rhs = {}", &product - &quintic))
    }
}

/// Exact value of the curve quintic at `t`.
pub fn f_eval(t: &Rational) -> Rational {
    CURVE_COEFFS
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, &c| &(&acc * t) + &Rational::from(c))
}

pub fn on_curve(pt: &CurvePoint) -> bool {
    match pt {
        CurvePoint::Infinity => true,
        CurvePoint::Affine { t, w } => w * w == f_eval(t),
    }
}

/// `b^6 * f(a/b)` in machine integers; `None` on overflow.
fn scaled_value_i128(a: i128, b: i128) -> Option<i128> {
    let mut h: i128 = 1;
    let mut bp: i128 = 1;
    for &c in CURVE_COEFFS[..5].iter().rev() {
        bp = bp.checked_mul(b)?;
        h = h.checked_mul(a)?.checked_add((c as i128).checked_mul(bp)?)?;
    }
    h.checked_mul(b)
}

fn scaled_value(a: &Integer, b: &Integer) -> Integer {
    let mut h = Integer::from(1);
    let mut bp = Integer::from(1);
    for &c in CURVE_COEFFS[..5].iter().rev() {
        bp *= b;
        h = h * a + &bp * c;
    }
    h * b
}

/// Square root of a non-negative `n`, if it is a perfect square.
fn exact_sqrt(n: &Integer, prefilter: bool) -> Option<Integer> {
    if prefilter && !may_be_square(n) {
        return None;
    }
    match isqrt(n) {
        Ok((root, true)) => Some(root),
        _ => None,
    }
}

fn sqrt_of_scaled(a: i64, b: i64, prefilter: bool) -> Option<Integer> {
    if let Some(n) = scaled_value_i128(a as i128, b as i128) {
        if n < 0 {
            return None;
        }
        let n = n as u128;
        if prefilter && !may_be_square_u128(n) {
            return None;
        }
        let root = isqrt_u128(n);
        return (root * root == n).then(|| Integer::from(root));
    }
    let n = scaled_value(&Integer::from(a), &Integer::from(b));
    if n.is_negative() {
        return None;
    }
    exact_sqrt(&n, prefilter)
}

/// Affine points `(a/b, w)` with `gcd(a, b) = 1`, `b` in `denominators` and
/// `|a| <= height`, unsorted. With `prefilter`, candidates are first screened
/// by quadratic residues; the result is the same either way.
pub fn search_denominators(denominators: RangeInclusive<u64>, height: u64, prefilter: bool) -> Vec<CurvePoint> {
    let h = height as i64;
    let mut out = Vec::new();
    for b in denominators {
        let b = b as i64;
        let b3 = Integer::from(b).pow(3);
        for a in -h..=h {
            if (a.unsigned_abs()).gcd(&(b as u64)) != 1 {
                continue;
            }
            let Some(m) = sqrt_of_scaled(a, b, prefilter) else {
                continue;
            };
            let t = Rational::new(a.into(), b.into()).expect("b > 0");
            let w = Rational::new(m, b3.clone()).expect("b > 0");
            if w.is_zero() {
                out.push(CurvePoint::affine(t, w));
            } else {
                out.push(CurvePoint::affine(t.clone(), -&w));
                out.push(CurvePoint::affine(t, w));
            }
        }
    }
    out
}

/// Sorts, deduplicates and adds the point at infinity.
pub fn finish_point_set(mut points: Vec<CurvePoint>) -> Vec<CurvePoint> {
    points.push(CurvePoint::Infinity);
    points.sort();
    points.dedup();
    points
}

/// All rational points of height at most `height`, plus infinity, sorted.
pub fn search_points(height: u64) -> Result<Vec<CurvePoint>, CurveError> {
    search_points_with(height, true)
}

pub fn search_points_with(height: u64, prefilter: bool) -> Result<Vec<CurvePoint>, CurveError> {
    if height == 0 {
        return Err(CurveError::ZeroHeight);
    }
    Ok(finish_point_set(search_denominators(1..=height, height, prefilter)))
}

/// Verbatim output of the external rank-bound and Chabauty computation.
pub const CHABAUTY_TRANSCRIPT: &str = "\
Found points: {@ (1 : 0 : 0), (-1 : 0 : 1), (0 : -1 : 1), (0 : 1 : 1), (1 : -8 :
1), (1 : 8 : 1) @}
Rank Bound: 1
Rank is 1. Using Chabauty (requires a generator)...
All proven rational points: { (1 : -8 : 1), (0 : -1 : 1), (1 : 8 : 1), (-1 : 0 :
1), (0 : 1 : 1), (1 : 0 : 0) }";

/// Reads `(X : Y : Z)` tuples from text; `Z = 0` must be `(1 : 0 : 0)`.
pub fn parse_projective_points(text: &str) -> Result<Vec<CurvePoint>, CurveError> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find('(') {
        let close = rest[open..].find(')').ok_or_else(|| CurveError::BadPoint(rest[open..].to_string()))? + open;
        let inner = &rest[open + 1..close];
        let bad = || CurveError::BadPoint(inner.to_string());
        let coords: Vec<Integer> = inner
            .split(':')
            .map(|c| c.trim().parse::<Integer>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [x, y, z] = coords.as_slice() else {
            return Err(bad());
        };
        if z.is_zero() {
            if *y != Integer::zero() || x.is_zero() {
                return Err(bad());
            }
            out.push(CurvePoint::Infinity);
        } else {
            let t = Rational::new(x.clone(), z.clone()).map_err(|_| bad())?;
            let w = Rational::new(y.clone(), z.pow(3)).map_err(|_| bad())?;
            out.push(CurvePoint::affine(t, w));
        }
        rest = &rest[close + 1..];
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn statement_after<'a>(text: &'a str, label: &'static str) -> Result<&'a str, CurveError> {
    let start = text.find(label).ok_or(CurveError::MissingTranscriptLine(label))? + label.len();
    let tail = &text[start..];
    let end = tail.find(['}']).map(|i| i + 1).unwrap_or(tail.len());
    Ok(&tail[..end])
}

/// The externally computed point set, kept as a trust anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalCertificate {
    pub claim: String,
    pub source: String,
    /// The transcript lines relied on, verbatim.
    pub transcript: Vec<String>,
    pub claimed_points: Vec<CurvePoint>,
    /// The points of the naive search in the same transcript.
    pub naive_points: Vec<CurvePoint>,
    pub rank_bound: u32,
}

impl ExternalCertificate {
    /// Parses [`CHABAUTY_TRANSCRIPT`].
    pub fn from_transcript() -> Self {
        Self::parse(CHABAUTY_TRANSCRIPT).expect("built-in transcript parses")
    }

    pub fn parse(transcript: &str) -> Result<Self, CurveError> {
        let claimed_points = parse_projective_points(statement_after(transcript, "All proven rational points:")?)?;
        let naive_points = parse_projective_points(statement_after(transcript, "Found points:")?)?;
        let rank_line = statement_after(transcript, "Rank Bound:")?;
        let rank_bound = rank_line
            .lines()
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or(CurveError::MissingTranscriptLine("Rank Bound:"))?;
        Ok(ExternalCertificate {
            claim: "C(Q) = {infinity, (-1, 0), (0, 1), (0, -1), (1, 8), (1, -8)}: Jacobian rank bound 1, \
                    a point of infinite order, and Chabauty's method"
                .to_string(),
            source: "Magma transcript: RationalPoints(C : Bound := 1000), RankBound(J), Chabauty(pt_J)".to_string(),
            transcript: transcript.lines().map(String::from).collect(),
            claimed_points,
            naive_points,
            rank_bound,
        })
    }
}

fn list(points: &[CurvePoint]) -> String {
    let items: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// Compares a search result at `height` with the external point set. Passes
/// when every found point is claimed and every claimed point is on `C`; a
/// found point outside the claimed set refutes the external claim.
pub fn certify_points(search: &[CurvePoint], ext: &ExternalCertificate, height: u64) -> CheckResult {
    let citation = "rational points of C: the bounded search reproduces the externally certified set";
    let off_curve: Vec<CurvePoint> = ext.claimed_points.iter().filter(|p| !on_curve(p)).cloned().collect();
    let extra: Vec<CurvePoint> = search.iter().filter(|p| !ext.claimed_points.contains(p)).cloned().collect();
    let (status, witness) = if !extra.is_empty() {
        (CheckStatus::Fail, format!("points outside the claimed set at height {}: {}", height, list(&extra)))
    } else if !off_curve.is_empty() {
        (CheckStatus::Fail, format!("claimed points not on C: {}", list(&off_curve)))
    } else if search.len() == ext.claimed_points.len() {
        (CheckStatus::Pass, format!("reproduced at height {}: {} (equal to the claimed set)", height, list(search)))
    } else {
        (
            CheckStatus::Pass,
            format!(
                "reproduced at height {}: {} ({} of {} claimed points)",
                height,
                list(search),
                search.len(),
                ext.claimed_points.len()
            ),
        )
    };
    CheckResult::new(CheckId::CurvePoints, status, citation, witness)
}

/// The completeness of `C(Q)`, recorded as an assumption rather than checked.
pub fn completeness_record(ext: &ExternalCertificate) -> CheckResult {
    CheckResult::new(
        CheckId::CurveCompleteness,
        CheckStatus::ExternalAssumption,
        "completeness of C(Q): no rational points beyond the claimed set at any height",
        format!("{}; trusted source: {}; rank bound {}", list(&ext.claimed_points), ext.source, ext.rank_bound),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn pt(t: i64, w: i64) -> CurvePoint {
        CurvePoint::affine(r(t), r(w))
    }

    fn known() -> Vec<CurvePoint> {
        let mut v = alloc::vec![CurvePoint::Infinity, pt(-1, 0), pt(0, 1), pt(0, -1), pt(1, 8), pt(1, -8)];
        v.sort();
        v
    }

    #[test]
    fn f_eval_examples() {
        assert_eq!(f_eval(&r(0)), r(1));
        assert_eq!(f_eval(&r(1)), r(64));
        assert_eq!(f_eval(&r(-1)), r(0));
        assert_eq!(f_eval(&r(2)), r(627));
    }

    #[test]
    fn factorization_passes() {
        assert_eq!(check_f_factorization().status, CheckStatus::Pass);
        let (product, _) = factorization_sides();
        let c = product.coefficients_in(crate::poly::Var::T);
        assert_eq!(c[4], MultiPoly::int(21));
        assert_eq!(c[0], MultiPoly::int(1));
    }

    #[test]
    fn membership() {
        assert!(on_curve(&pt(1, 8)));
        assert!(on_curve(&pt(-1, 0)));
        assert!(on_curve(&CurvePoint::Infinity));
        assert!(!on_curve(&pt(2, 10)));
    }

    #[test]
    fn scaled_value_agrees_with_bigint() {
        for a in -30i64..=30 {
            for b in 1i64..=30 {
                let small = scaled_value_i128(a as i128, b as i128).unwrap();
                assert_eq!(Integer::from(small), scaled_value(&a.into(), &b.into()));
                let expected = &f_eval(&Rational::frac(a, b)) * &Rational::from(Integer::from(b).pow(6));
                assert_eq!(Rational::from(Integer::from(small)), expected);
            }
        }
        assert!(scaled_value_i128(i64::MAX as i128, 3).is_none());
    }

    #[test]
    fn small_heights() {
        assert_eq!(search_points(1).unwrap(), known());
        assert_eq!(search_points(10).unwrap(), known());
        assert_eq!(search_points(0), Err(CurveError::ZeroHeight));
    }

    #[test]
    fn prefilter_is_harmless() {
        assert_eq!(search_points_with(200, true).unwrap(), search_points_with(200, false).unwrap());
    }

    #[test]
    fn search_output_invariants() {
        let small = search_points(20).unwrap();
        let large = search_points(60).unwrap();
        for p in &large {
            assert!(on_curve(p));
            assert!(large.contains(&p.negate()));
        }
        assert!(small.iter().all(|p| large.contains(p)));
    }

    #[test]
    fn transcript_parses_to_known_points() {
        let ext = ExternalCertificate::from_transcript();
        assert_eq!(ext.claimed_points, known());
        assert_eq!(ext.naive_points, known());
        assert_eq!(ext.rank_bound, 1);
        assert_eq!(ext.transcript.len(), 6);
    }

    #[test]
    fn projective_mapping() {
        let pts = parse_projective_points("(2 : 16 : 2), (1 : 0 : 0)").unwrap();
        assert_eq!(pts, [CurvePoint::Infinity, CurvePoint::affine(r(1), r(2))]);
        assert!(parse_projective_points("(1 : 2)").is_err());
        assert!(parse_projective_points("(0 : 1 : 0)").is_err());
    }

    #[test]
    fn certify() {
        let ext = ExternalCertificate::from_transcript();
        assert_eq!(certify_points(&known(), &ext, 1000).status, CheckStatus::Pass);
        let partial = [CurvePoint::Infinity, pt(0, 1)];
        assert_eq!(certify_points(&partial, &ext, 10).status, CheckStatus::Pass);
        let mut forged = known();
        forged.push(pt(2, 10));
        let res = certify_points(&forged, &ext, 1000);
        assert_eq!(res.status, CheckStatus::Fail);
        assert!(res.witness.contains("(2, 10)"));
        assert_eq!(completeness_record(&ext).status, CheckStatus::ExternalAssumption);
    }
}
