use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Polynomial with big-integer coefficients, lowest degree first.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and `degree() == None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x - root`.
    pub fn linear(root: impl Into<BigInt>) -> Self {
        Self::new(vec![-root.into(), BigInt::one()])
    }

    /// `lead * prod (x - r)`.
    pub fn from_roots(lead: impl Into<BigInt>, roots: &[BigInt]) -> Self {
        roots
            .iter()
            .fold(Self::constant(lead), |acc, r| acc.mul(&Self::linear(r.clone())))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a rational.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Synthetic division by `x - r`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, r: &BigInt) -> (Self, BigInt) {
        if self.is_zero() {
            return (Self::zero(), BigInt::zero());
        }
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - 1];
        let mut carry = BigInt::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (Self::new(quot), v);
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// All integer roots, repeated by multiplicity, ascending.
    ///
    /// Candidates come from floating-point approximations of the roots of
    /// the polynomial and of each of its derivatives (a root of multiplicity
    /// m is a simple root of the (m-1)-th derivative). Every candidate must
    /// divide the trailing nonzero coefficient and is then confirmed and
    /// deflated exactly, so a reported root is always a true root.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut p = self.clone();
        while p.degree() > Some(0) && p.coeffs[0].is_zero() {
            roots.push(BigInt::zero());
            p = Self::new(p.coeffs[1..].to_vec());
        }
        loop {
            if p.degree().unwrap_or(0) == 0 {
                break;
            }
            let mut found = false;
            for cand in p.root_candidates() {
                if cand.is_zero() || !p.coeffs[0].is_multiple_of(&cand) {
                    continue;
                }
                loop {
                    let (q, rem) = p.div_linear(&cand);
                    if !rem.is_zero() {
                        break;
                    }
                    roots.push(cand.clone());
                    p = q;
                    found = true;
                }
            }
            if !found {
                break;
            }
        }
        roots.sort();
        roots
    }

    fn root_candidates(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = self.clone();
        while d.degree().unwrap_or(0) >= 1 {
            for z in d.approximate_roots() {
                let center = z.re.round();
                if !center.is_finite() {
                    continue;
                }
                let Some(c) = BigInt::from_f64(center) else { continue };
                for off in -2i32..=2 {
                    out.push(&c + off);
                }
            }
            d = d.derivative();
        }
        out.sort();
        out.dedup();
        out
    }

    /// Durand-Kerner iteration on the monic normalisation.
    fn approximate_roots(&self) -> Vec<Complex64> {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return Vec::new();
        }
        let lead = self.leading();
        let monic: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| BigRational::new(c.clone(), lead.clone()).to_f64().unwrap_or(f64::NAN))
            .collect();
        if n == 1 {
            return vec![Complex64::new(-monic[0], 0.0)];
        }
        let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let seed = Complex64::new(0.4, 0.9);
        let mut zs: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= zs[i] - zs[j];
                    }
                }
                if den.norm() == 0.0 {
                    continue;
                }
                let step = eval(zs[i]) / den;
                zs[i] -= step;
                delta = delta.max(step.norm() / (1.0 + zs[i].norm()));
            }
            if delta < 1e-15 {
                break;
            }
        }
        zs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}x")?,
                _ if a.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}
