//! Exact arithmetic: arbitrary-precision integers and rationals, q-analog
//! counting functions and integer polynomials.
//!
//! Nothing in this crate ever rounds. Gaussian binomials are formed as an
//! exact quotient of two products and the division is checked.

mod poly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as BigRat;
pub use poly::IntPolynomial;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `[j 1]_b = 1 + b + ... + b^(j-1)`, with `bracket(0, b) = 0`.
pub fn bracket(j: u32, b: u64) -> BigInt {
    let b = BigInt::from(b);
    let mut term = BigInt::one();
    let mut sum = BigInt::zero();
    for _ in 0..j {
        sum += &term;
        term *= &b;
    }
    sum
}

/// `b^e` as a big integer.
pub fn pow(b: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

/// The q-ary Gaussian binomial `[n m]_q`.
///
/// Computed as `prod (q^(n-i) - 1) / prod (q^(m-i) - 1)` for `i < m`; the
/// quotient is asserted to be exact. `m > n` is an error rather than 0.
pub fn gaussian_binomial(n: u32, m: u32, q: u64) -> Result<BigInt> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "gaussian binomial needs 0 <= m <= n, got n={n}, m={m}"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("gaussian binomial needs q >= 2, got {q}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= pow(q, n - i) - 1u32;
        den *= pow(q, m - i) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "gaussian binomial quotient not exact");
    Ok(quot)
}

/// The diameter threshold `chi(q)`: 9, 8, 7 (q in 4..=6), 6 (q >= 7).
pub fn chi(q: u64) -> Result<u32> {
    match q {
        0 | 1 => Err(Error::InvalidArgument(format!("chi(q) needs q >= 2, got {q}"))),
        2 => Ok(9),
        3 => Ok(8),
        4..=6 => Ok(7),
        _ => Ok(6),
    }
}

/// Rational from a ratio of integers.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRat {
    BigRat::new(num.into(), den.into())
}

/// Rational from an integer.
pub fn int_rat(v: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(v.into())
}

/// Convert a rational to an integer if it is one.
pub fn to_integer(r: &BigRat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Solve a square linear system exactly by Gaussian elimination over Q.
pub fn solve_rational(mut a: Vec<Vec<BigRat>>, mut rhs: Vec<BigRat>) -> Result<Vec<BigRat>> {
    let n = rhs.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("system is not square".into()));
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &rhs[col];
            rhs[r] -= d;
        }
    }
    Ok(rhs)
}

/// `a mod m` in `[0, |m|)`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(&m.abs())
}
