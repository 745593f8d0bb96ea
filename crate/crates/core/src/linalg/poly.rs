//! Minimal polynomials of matrices on vectors, and their roots in the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{solve, Matrix};
use super::scalar::{Field, Scalar};

/// Largest prime for which roots are found by exhaustive evaluation.
const EXHAUSTIVE_PRIME_LIMIT: u64 = 1 << 16;
/// Integer coefficients beyond this size are not factored for rational roots.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Monic minimal polynomial of `a` relative to `v`, coefficients low degree first.
pub fn local_minimal_polynomial(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    let field = a.field();
    let n = a.rows();
    let mut krylov: Vec<Vec<Scalar>> = vec![v.to_vec()];
    loop {
        let next = a.mul_vec(krylov.last().unwrap());
        let basis = Matrix::from_columns(field, n, &krylov);
        if let Some(c) = solve(&basis, &next) {
            // t^d - sum c_i t^i
            let mut poly: Vec<Scalar> = c.iter().map(|x| -x).collect();
            poly.push(field.one());
            return poly;
        }
        krylov.push(next);
    }
}

pub fn evaluate(poly: &[Scalar], x: &Scalar) -> Scalar {
    let field = x.field();
    poly.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c)
}

/// Roots of `poly` in the ground field that this routine can find:
/// all of them over small prime fields and over the rationals when the
/// cleared coefficients are of moderate size.
pub fn field_roots(field: Field, poly: &[Scalar]) -> Vec<Scalar> {
    let mut roots = Vec::new();
    match field {
        Field::Prime(p) => {
            if p <= EXHAUSTIVE_PRIME_LIMIT {
                for x in 0..p {
                    let s = field.from_i64(x as i64);
                    if evaluate(poly, &s).is_zero() {
                        roots.push(s);
                    }
                }
            }
        }
        Field::Rational => {
            let ints = clear_denominators(poly);
            let Some(ints) = ints else { return roots };
            // strip factors of t
            let shift = ints.iter().take_while(|c| c.is_zero()).count();
            if shift > 0 {
                roots.push(field.zero());
            }
            let ints = &ints[shift..];
            if ints.len() < 2 {
                return roots;
            }
            let (Some(a0), Some(an)) = (
                ints[0].abs().to_u64().filter(|&x| x <= DIVISOR_LIMIT),
                ints[ints.len() - 1].abs().to_u64().filter(|&x| x <= DIVISOR_LIMIT),
            ) else {
                return roots;
            };
            for p in divisors(a0) {
                for q in divisors(an) {
                    if p.gcd(&q) != 1 {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let cand =
                            Scalar::Rational(BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q)));
                        if !roots.contains(&cand) && evaluate(poly, &cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots
}

fn clear_denominators(poly: &[Scalar]) -> Option<Vec<BigInt>> {
    let rats: Vec<&BigRational> = poly.iter().map(|s| s.as_rational()).collect::<Option<_>>()?;
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    Some(rats.iter().map(|r| (*r * BigRational::from_integer(lcm.clone())).to_integer()).collect())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
