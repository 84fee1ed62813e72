//! Two independent resultant routes.
//!
//! * [`quadratic_norm_resultant`] handles a monic reciprocal quadratic
//!   `X^2 - T*X + 1` in closed form: reduce `f` to `A*X + B` modulo the
//!   quadratic, then `f(a)*f(b) = A^2 + A*B*T + B^2` since `a + b = T` and
//!   `a*b = 1`.
//! * [`sylvester_resultant`] is the determinant of the Sylvester matrix,
//!   computed by fraction-free (Bareiss) elimination with polynomial entries.
//!
//! Convention: `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of
//! `f`, which is the Sylvester determinant with the `deg(g)` shifted rows of
//! `f` on top. Hence `Res(f, g) = (-1)^(deg f * deg g) * Res(g, f)`, and
//! `Res(X^2 - T*X + 1, f)` equals the norm route on the nose.

use alloc::vec;
use alloc::vec::Vec;

use super::{MultiPoly, PolyError, Var};

/// `f = A*var + B (mod var^2 - trace*var + 1)` with `A`, `B` free of `var`.
///
/// Horner over the coefficients of `f`, rewriting `var^2 -> trace*var - 1`
/// after every multiplication by `var`.
pub fn reduce_mod_monic_quadratic(
    f: &MultiPoly,
    var: Var,
    trace: &MultiPoly,
) -> Result<(MultiPoly, MultiPoly), PolyError> {
    if !trace.is_free_of(var) {
        return Err(PolyError::TraceContainsVariable(var));
    }
    let rest = f.vars().without(var);
    let mut a = MultiPoly::zero().with_vars(rest);
    let mut b = MultiPoly::zero().with_vars(rest);
    for c in f.coefficients_in(var).iter().rev() {
        // (a*X + b)*X + c = (a*T + b)*X + (c - a)
        let next_a = &(&a * trace) + &b;
        let next_b = c - &a;
        a = next_a;
        b = next_b;
    }
    Ok((a, b))
}

/// `Res(var^2 - trace*var + 1, f)` via the norm form `A^2 + A*B*trace + B^2`.
pub fn quadratic_norm_resultant(f: &MultiPoly, var: Var, trace: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let (a, b) = reduce_mod_monic_quadratic(f, var, trace)?;
    Ok(&(&a * &a) + &(&(&(&a * &b) * trace) + &(&b * &b)))
}

/// Sylvester matrix of `f` (degree `m`) and `g` (degree `n`) in `var`:
/// `n` shifted copies of the coefficients of `f`, leading coefficient first,
/// followed by `m` shifted copies of those of `g`.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: Var) -> Vec<Vec<MultiPoly>> {
    let cf = f.coefficients_in(var);
    let cg = g.coefficients_in(var);
    let m = cf.len().saturating_sub(1);
    let n = cg.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for (j, c) in cf.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for (j, c) in cg.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant over the polynomial ring by Bareiss fraction-free elimination.
///
/// Each step divides exactly by the previous pivot. Pivots are chosen as the
/// nonzero entry with the fewest terms in the current column; row swaps flip
/// the sign.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        let pivot_row = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms());
        let Some(pr) = pivot_row else {
            return Ok(MultiPoly::zero());
        };
        if pr != k {
            m.swap(pr, k);
            negate = !negate;
        }
        let prev_const = prev.as_constant();
        for i in k + 1..n {
            for j in k + 1..n {
                let mut v = &m[i][j] * &m[k][k];
                if !m[i][k].is_zero() && !m[k][j].is_zero() {
                    v = &v - &(&m[i][k] * &m[k][j]);
                }
                m[i][j] = match &prev_const {
                    Some(c) if c.is_one() => v,
                    Some(c) => v.scale(&c.recip().expect("nonzero pivot")),
                    None => v.divexact(&prev)?,
                };
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// `Res(f, g)` with respect to `var` as a Sylvester determinant.
///
/// Degenerate degrees follow the same product formula: for constant `f` the
/// result is `f^deg(g)`, for constant `g` it is `g^deg(f)`, and for two
/// nonzero constants it is 1 (empty determinant).
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: Var) -> Result<MultiPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = f.degree_in(var).unwrap();
    let n = g.degree_in(var).unwrap();
    match (m, n) {
        (0, 0) => Ok(MultiPoly::one()),
        (0, n) => Ok(f.pow(n)),
        (m, 0) => Ok(g.pow(m)),
        _ => bareiss_determinant(sylvester_matrix(f, g, var)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use alloc::collections::BTreeMap;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    fn u() -> MultiPoly {
        MultiPoly::var(Var::U)
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_monic_quadratic(&p("s^2"), Var::S, &u()).unwrap(), (p("U"), p("-1")));
        assert_eq!(reduce_mod_monic_quadratic(&p("s"), Var::S, &u()).unwrap(), (p("1"), p("0")));
        assert_eq!(reduce_mod_monic_quadratic(&p("s^3"), Var::S, &u()).unwrap(), (p("U^2 - 1"), p("-U")));
        assert_eq!(
            reduce_mod_monic_quadratic(&p("s"), Var::S, &p("s + U")),
            Err(PolyError::TraceContainsVariable(Var::S))
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(quadratic_norm_resultant(&p("s"), Var::S, &u()).unwrap(), p("1"));
        assert_eq!(quadratic_norm_resultant(&p("s - 7"), Var::S, &u()).unwrap(), p("49 - 7*U + 1"));
        assert_eq!(quadratic_norm_resultant(&p("s^2"), Var::S, &u()).unwrap(), p("1"));
    }

    #[test]
    fn sylvester_examples() {
        assert!(sylvester_resultant(&p("y^2 - 3*y + 2"), &p("y - 1"), Var::Y).unwrap().is_zero());
        // Res(y - a, y - b) = a - b in the lc(f)^n * prod g(roots of f) convention
        assert_eq!(sylvester_resultant(&p("y - 3"), &p("y - 5"), Var::Y).unwrap(), p("-2"));
        let quad = p("s^2 - U*s + 1");
        let lin = p("s - 7");
        assert_eq!(sylvester_resultant(&quad, &lin, Var::S).unwrap(), p("49 - 7*U + 1"));
        assert_eq!(sylvester_resultant(&lin, &quad, Var::S).unwrap(), p("49 - 7*U + 1"));
    }

    #[test]
    fn sylvester_degenerate_degrees() {
        assert_eq!(sylvester_resultant(&p("3"), &p("4"), Var::Y).unwrap(), p("1"));
        assert_eq!(sylvester_resultant(&p("3"), &p("y^2 + 1"), Var::Y).unwrap(), p("9"));
        assert_eq!(sylvester_resultant(&p("y^3 + 1"), &p("U"), Var::Y).unwrap(), p("U^3"));
        assert_eq!(sylvester_resultant(&MultiPoly::zero(), &p("y"), Var::Y), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn bareiss_matches_cofactor_on_integer_matrix() {
        let rows = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 5, 1, -1], [3, 0, 2, 2]];
        let m: Vec<Vec<MultiPoly>> = rows.iter().map(|r| r.iter().map(|&x| MultiPoly::int(x)).collect()).collect();
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> =
                        m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let ints: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        assert_eq!(bareiss_determinant(m).unwrap(), MultiPoly::int(cofactor(&ints)));
    }

    #[test]
    fn resultant_vanishes_exactly_at_roots() {
        let f = p("y^3 - 2*y^2 - 5*y + 6");
        for c in -4i64..=4 {
            let r = sylvester_resultant(&f, &(&p("y") - &MultiPoly::int(c)), Var::Y).unwrap();
            let pt: BTreeMap<Var, Rational> = [(Var::Y, Rational::from(c))].into_iter().collect();
            assert_eq!(r.is_zero(), f.eval(&pt).unwrap().is_zero(), "c = {}", c);
        }
    }
}
