//! Classical parameters, intersection arrays, intersection numbers and the
//! closed-form spectra used as references by the verification layer.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{bracket, gaussian_binomial, pow, BigInt};

/// Classical parameters `(D, b, alpha, beta)` of a distance-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassicalParams {
    pub diameter: u32,
    pub b: u64,
    pub alpha: BigInt,
    pub beta: BigInt,
}

impl ClassicalParams {
    pub fn new(diameter: u32, b: u64, alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Result<Self> {
        if diameter < 2 {
            return Err(Error::InvalidArgument(format!("classical parameters need D >= 2, got {diameter}")));
        }
        if b < 2 {
            return Err(Error::InvalidArgument(format!("classical parameters need b >= 2, got {b}")));
        }
        Ok(Self { diameter, b, alpha: alpha.into(), beta: beta.into() })
    }

    /// `[j 1]_b` in this parameter set's base.
    pub fn bracket(&self, j: u32) -> BigInt {
        bracket(j, self.b)
    }

    /// If these are the parameters of some `J_q(n, D)`, `n >= 2D`, return `(n, D, q)`.
    pub fn as_grassmann(&self) -> Option<(u32, u32, u64)> {
        let q = self.b;
        if self.alpha != BigInt::from(q) {
            return None;
        }
        let target = &self.beta + 1u32;
        let d = self.diameter;
        let mut m = d + 1;
        loop {
            let v = bracket(m, q);
            if v == target {
                return Some((m + d - 1, d, q));
            }
            if v > target {
                return None;
            }
            m += 1;
        }
    }

    /// If these are the parameters of `J_q(2D, D)`, return `(q, D)`.
    pub fn as_square_grassmann(&self) -> Option<(u64, u32)> {
        let q = self.b;
        let ok = self.alpha == BigInt::from(q) && self.beta == bracket(self.diameter + 1, q) - 1u32;
        ok.then_some((q, self.diameter))
    }
}

impl fmt::Display for ClassicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.diameter, self.b, self.alpha, self.beta)
    }
}

/// Intersection array `{b_0, ..., b_{D-1}; c_1, ..., c_D}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    b: Vec<BigInt>,
    c: Vec<BigInt>,
}

impl IntersectionArray {
    pub fn new(b: Vec<BigInt>, c: Vec<BigInt>) -> Result<Self> {
        if b.is_empty() || b.len() != c.len() {
            return Err(Error::InconsistentArray(format!(
                "need equally long non-empty b and c lists, got {} and {}",
                b.len(),
                c.len()
            )));
        }
        if let Some(x) = b.iter().chain(&c).find(|x| !x.is_positive()) {
            return Err(Error::InconsistentArray(format!("entry {x} is not positive")));
        }
        if !c[0].is_one() {
            return Err(Error::InconsistentArray(format!("c_1 = {} (must be 1)", c[0])));
        }
        let ia = Self { b, c };
        for i in 1..=ia.diameter() {
            if ia.a(i).is_negative() {
                return Err(Error::InconsistentArray(format!("a_{i} = {} is negative", ia.a(i))));
            }
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 1..=ia.diameter() {
            num *= ia.b(i - 1);
            den *= ia.c(i);
            if !num.is_multiple_of(&den) {
                return Err(Error::InconsistentArray(format!("k_{i} = {num}/{den} is not an integer")));
            }
        }
        Ok(ia)
    }

    pub fn from_i64(b: &[i64], c: &[i64]) -> Result<Self> {
        Self::new(b.iter().map(|&x| x.into()).collect(), c.iter().map(|&x| x.into()).collect())
    }

    pub fn diameter(&self) -> u32 {
        self.b.len() as u32
    }

    pub fn k(&self) -> BigInt {
        self.b[0].clone()
    }

    /// `b_i`, with `b_D = 0`.
    pub fn b(&self, i: u32) -> BigInt {
        self.b.get(i as usize).cloned().unwrap_or_default()
    }

    /// `c_i`, with `c_0 = 0`.
    pub fn c(&self, i: u32) -> BigInt {
        if i == 0 {
            BigInt::zero()
        } else {
            self.c.get(i as usize - 1).cloned().unwrap_or_default()
        }
    }

    /// `a_i = k - b_i - c_i`.
    pub fn a(&self, i: u32) -> BigInt {
        if i > self.diameter() {
            return BigInt::zero();
        }
        self.k() - self.b(i) - self.c(i)
    }

    /// `k_i = b_0 ... b_{i-1} / (c_1 ... c_i)`.
    pub fn k_i(&self, i: u32) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for j in 1..=i {
            num *= self.b(j - 1);
            den *= self.c(j);
        }
        num / den
    }

    pub fn vertex_count(&self) -> BigInt {
        (0..=self.diameter()).map(|i| self.k_i(i)).sum()
    }

    pub fn b_list(&self) -> &[BigInt] {
        &self.b
    }

    pub fn c_list(&self) -> &[BigInt] {
        &self.c
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Eigenvalues with multiplicities; distinct eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    pairs: Vec<(BigInt, BigInt)>,
}

impl Spectrum {
    /// Sort descending, merge repeated eigenvalues and drop zero multiplicities.
    pub fn new(mut pairs: Vec<(BigInt, BigInt)>) -> Self {
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(BigInt, BigInt)> = Vec::with_capacity(pairs.len());
        for (theta, m) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == theta => last.1 += m,
                _ => out.push((theta, m)),
            }
        }
        out.retain(|(_, m)| !m.is_zero());
        Self { pairs: out }
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(t, m)| (t.into(), m.into())).collect())
    }

    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &BigInt> {
        self.pairs.iter().map(|(t, _)| t)
    }

    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    pub fn multiplicity(&self, theta: &BigInt) -> BigInt {
        self.pairs.iter().find(|(t, _)| t == theta).map(|(_, m)| m.clone()).unwrap_or_default()
    }

    /// `sum m_j theta_j^l`, the trace of `A^l` for a graph with this spectrum.
    pub fn moment(&self, l: u32) -> BigInt {
        self.pairs.iter().map(|(t, m)| m * num_traits::pow(t.clone(), l as usize)).sum()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs.iter().map(|(t, m)| format!("({t},{m})")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// All intersection numbers `p^h_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    diameter: u32,
    p: Vec<BigInt>,
}

impl PTable {
    fn idx(&self, h: u32, i: u32, j: u32) -> usize {
        let n = self.diameter as usize + 1;
        (h as usize * n + i as usize) * n + j as usize
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// `p^h_{ij}`; zero outside `0..=D`.
    pub fn get(&self, h: u32, i: u32, j: u32) -> BigInt {
        let d = self.diameter;
        if h > d || i > d || j > d {
            return BigInt::zero();
        }
        self.p[self.idx(h, i, j)].clone()
    }
}

/// Intersection array from classical parameters:
/// `c_i = [i](1 + alpha [i-1])`, `b_i = ([D] - [i])(beta - alpha [i])`.
pub fn array_from_classical(cp: &ClassicalParams) -> Result<IntersectionArray> {
    let d = cp.diameter;
    let top = cp.bracket(d);
    let b: Vec<BigInt> = (0..d)
        .map(|i| (&top - cp.bracket(i)) * (&cp.beta - &cp.alpha * cp.bracket(i)))
        .collect();
    let c: Vec<BigInt> = (1..=d)
        .map(|i| cp.bracket(i) * (BigInt::one() + &cp.alpha * cp.bracket(i - 1)))
        .collect();
    if let Some((i, x)) = b.iter().enumerate().find(|(_, x)| !x.is_positive()) {
        return Err(Error::Infeasible(format!("b_{i} = {x} for {cp}")));
    }
    if let Some((i, x)) = c.iter().enumerate().find(|(_, x)| !x.is_positive()) {
        return Err(Error::Infeasible(format!("c_{} = {x} for {cp}", i + 1)));
    }
    IntersectionArray::new(b, c).map_err(|e| Error::Infeasible(format!("{cp}: {e}")))
}

fn check_grassmann_args(n: u32, d: u32, q: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("need D >= 2, got {d}")));
    }
    if n < 2 * d {
        return Err(Error::InvalidArgument(format!("need n >= 2D, got n={n}, D={d}")));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("need q >= 2, got {q}")));
    }
    Ok(())
}

/// Classical parameters of `J_q(n, D)`: `(D, q, q, [n-D+1]_q - 1)`.
pub fn grassmann_classical(n: u32, d: u32, q: u64) -> Result<ClassicalParams> {
    check_grassmann_args(n, d, q)?;
    ClassicalParams::new(d, q, q, bracket(n - d + 1, q) - 1u32)
}

/// Intersection array of `J_q(n, D)` straight from the Grassmann formulas
/// `b_{j-1} = q^(2j-1) [n-D-j+1] [D-j+1]`, `c_j = [j]^2`. Independent of
/// [`array_from_classical`].
pub fn grassmann_array(n: u32, d: u32, q: u64) -> Result<IntersectionArray> {
    check_grassmann_args(n, d, q)?;
    let b = (1..=d)
        .map(|j| pow(q, 2 * j - 1) * bracket(n - d - j + 1, q) * bracket(d - j + 1, q))
        .collect();
    let c = (1..=d).map(|j| num_traits::pow(bracket(j, q), 2)).collect();
    IntersectionArray::new(b, c)
}

/// Intersection numbers from the array.
///
/// Uses `A_i A = b_{i-1} A_{i-1} + a_i A_i + c_{i+1} A_{i+1}` on both sides of
/// `A_i A_{j+1} = (A_i A A_j - b_{j-1} A_i A_{j-1} - a_j A_i A_j) / c_{j+1}`,
/// giving, for every `h`,
///
/// ```text
/// c_{j+1} p^h_{i,j+1} = b_{i-1} p^h_{i-1,j} + a_i p^h_{i,j} + c_{i+1} p^h_{i+1,j}
///                      - b_{j-1} p^h_{i,j-1} - a_j p^h_{i,j}
/// ```
///
/// seeded by `p^h_{i0} = [h = i]` and with out-of-range indices read as zero.
pub fn p_table(ia: &IntersectionArray) -> Result<PTable> {
    let d = ia.diameter();
    let n = d as usize + 1;
    let mut t = PTable { diameter: d, p: vec![BigInt::zero(); n * n * n] };
    for h in 0..=d {
        let i = t.idx(h, h, 0);
        t.p[i] = BigInt::one();
    }
    for j in 0..d {
        for h in 0..=d {
            for i in 0..=d {
                let mut acc = ia.a(i) * t.get(h, i, j) - ia.a(j) * t.get(h, i, j)
                    + ia.c(i + 1) * t.get(h, i + 1, j);
                if i > 0 {
                    acc += ia.b(i - 1) * t.get(h, i - 1, j);
                }
                if j > 0 {
                    acc -= ia.b(j - 1) * t.get(h, i, j - 1);
                }
                let (val, rem) = acc.div_rem(&ia.c(j + 1));
                if !rem.is_zero() || val.is_negative() {
                    return Err(Error::InconsistentArray(format!(
                        "p^{h}_{{{i},{}}} = {acc}/{} is not a non-negative integer",
                        j + 1,
                        ia.c(j + 1)
                    )));
                }
                let idx = t.idx(h, i, j + 1);
                t.p[idx] = val;
            }
        }
    }
    Ok(t)
}

/// Eigenvalues from classical parameters:
/// `theta_i = [D-i](beta - alpha [i]) - [i]`, `i = 0..=D`.
pub fn classical_eigenvalues(cp: &ClassicalParams) -> Vec<BigInt> {
    let d = cp.diameter;
    (0..=d)
        .map(|i| cp.bracket(d - i) * (&cp.beta - &cp.alpha * cp.bracket(i)) - cp.bracket(i))
        .collect()
}

/// Spectrum of `J_q(n, D)`:
/// `theta_j = q^(j+1) [n-D-j] [D-j] - [j]`, `m_j = [n j]_q - [n j-1]_q`.
pub fn classical_spectrum(n: u32, d: u32, q: u64) -> Result<Spectrum> {
    check_grassmann_args(n, d, q)?;
    let mut pairs = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let theta = pow(q, j + 1) * bracket(n - d - j, q) * bracket(d - j, q) - bracket(j, q);
        let m = if j == 0 {
            BigInt::one()
        } else {
            gaussian_binomial(n, j, q)? - gaussian_binomial(n, j - 1, q)?
        };
        pairs.push((theta, m));
    }
    Ok(Spectrum::new(pairs))
}

/// Spectrum of the `(s x s)`-grid.
pub fn grid_spectrum(s: u64) -> Spectrum {
    let s = BigInt::from(s);
    let one = BigInt::one();
    Spectrum::new(vec![
        (BigInt::from(2) * (&s - 1u32), one),
        (&s - 2u32, BigInt::from(2) * (&s - 1u32)),
        (BigInt::from(-2), num_traits::pow(&s - 1u32, 2)),
    ])
}

/// Spectrum of the `(s x t)`-grid, the Cartesian product `K_s x K_t`.
pub fn rect_grid_spectrum(s: u64, t: u64) -> Spectrum {
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    Spectrum::new(vec![
        (&s + &t - 2u32, BigInt::one()),
        (&s - 2u32, &t - 1u32),
        (&t - 2u32, &s - 1u32),
        (BigInt::from(-2), (&s - 1u32) * (&t - 1u32)),
    ])
}

/// Spectrum of the q-clique extension of the `(r x r)`-grid.
pub fn clique_ext_grid_spectrum(q: u64, r: impl Into<BigInt>) -> Spectrum {
    let r: BigInt = r.into();
    let q = BigInt::from(q);
    let one = BigInt::one();
    let two = BigInt::from(2);
    Spectrum::new(vec![
        (&q * (&two * &r - 1u32) - 1u32, one.clone()),
        (&q * (&r - 1u32) - 1u32, &two * (&r - 1u32)),
        (BigInt::from(-1), (&q - 1u32) * &r * &r),
        (-&q - 1u32, num_traits::pow(&r - 1u32, 2)),
    ])
}

/// Spectrum of the q-clique extension of any graph with spectrum `base`:
/// every eigenvalue `theta != -1` becomes `q(theta + 1) - 1`, the rest is `-1`.
pub fn clique_extension_spectrum(base: &Spectrum, q: u64) -> Spectrum {
    let qb = BigInt::from(q);
    let total = base.pairs().iter().map(|(_, m)| m).sum::<BigInt>() * &qb;
    let mut pairs = Vec::new();
    let mut used = BigInt::zero();
    for (theta, m) in base.pairs() {
        if *theta == BigInt::from(-1) {
            continue;
        }
        pairs.push((&qb * (theta + 1u32) - 1u32, m.clone()));
        used += m;
    }
    pairs.push((BigInt::from(-1), total - used));
    Spectrum::new(pairs)
}

/// The trace identities: `sum m = v`, `sum m theta = 0`, `sum m theta^2 = v k`.
pub fn check_moments(sp: &Spectrum, v: &BigInt, k: &BigInt) -> bool {
    sp.moment(0) == *v && sp.moment(1).is_zero() && sp.moment(2) == v * k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ia(b: &[i64], c: &[i64]) -> IntersectionArray {
        IntersectionArray::from_i64(b, c).unwrap()
    }

    #[test]
    fn classical_to_array_examples() {
        let cases = [
            ((2, 2, 2, 6), ia(&[18, 8], &[1, 9])),
            ((3, 2, 2, 14), ia(&[98, 72, 32], &[1, 9, 49])),
            ((2, 3, 3, 12), ia(&[48, 27], &[1, 16])),
        ];
        for ((d, b, al, be), want) in cases {
            let cp = ClassicalParams::new(d, b, al, be).unwrap();
            assert_eq!(array_from_classical(&cp).unwrap(), want);
        }
    }

    #[test]
    fn infeasible_classical_is_typed_error() {
        // beta too small: b_1 = ([2]-[1])(beta - alpha) = 3 * (1 - 2) < 0
        let cp = ClassicalParams::new(2, 2, 2, 1).unwrap();
        assert!(matches!(array_from_classical(&cp), Err(Error::Infeasible(_))));
    }

    #[test]
    fn grassmann_classical_examples() {
        let cp = |d, b, a: i64, be: i64| ClassicalParams::new(d, b, a, be).unwrap();
        assert_eq!(grassmann_classical(4, 2, 2).unwrap(), cp(2, 2, 2, 6));
        assert_eq!(grassmann_classical(6, 3, 2).unwrap(), cp(3, 2, 2, 14));
        assert_eq!(grassmann_classical(4, 2, 3).unwrap(), cp(2, 3, 3, 12));
        assert!(grassmann_classical(3, 2, 2).is_err());
        assert_eq!(grassmann_classical(6, 3, 2).unwrap().as_square_grassmann(), Some((2, 3)));
        assert_eq!(grassmann_classical(7, 3, 2).unwrap().as_square_grassmann(), None);
        assert_eq!(grassmann_classical(9, 3, 3).unwrap().as_grassmann(), Some((9, 3, 3)));
        assert_eq!(ClassicalParams::new(3, 2, 2, 13).unwrap().as_grassmann(), None);
    }

    #[test]
    fn two_array_routes_agree() {
        for q in 2..=4u64 {
            for d in 2..=4u32 {
                for n in 2 * d..=2 * d + 4 {
                    let a = array_from_classical(&grassmann_classical(n, d, q).unwrap()).unwrap();
                    let b = grassmann_array(n, d, q).unwrap();
                    assert_eq!(a, b, "n={n} D={d} q={q}");
                    // a_1 of J_q(2D,D) is the local valency q(2[D]-1)-1
                    if n == 2 * d {
                        let a1 = BigInt::from(q) * (bracket(d, q) * 2u32 - 1u32) - 1u32;
                        assert_eq!(a.a(1), a1);
                        assert_eq!(a.a(1), a.k() - a.b(1) - 1u32);
                    }
                }
            }
        }
    }

    #[test]
    fn p_table_basics() {
        let t = p_table(&ia(&[18, 8], &[1, 9])).unwrap();
        assert_eq!(t.get(0, 2, 2), BigInt::from(16));
        let a = ia(&[98, 72, 32], &[1, 9, 49]);
        let t = p_table(&a).unwrap();
        for i in 0..=3 {
            if i < 3 {
                assert_eq!(t.get(i, 1, i + 1), a.b(i));
            }
            if i > 0 {
                assert_eq!(t.get(i, 1, i - 1), a.c(i));
            }
            assert_eq!(t.get(i, 1, i), a.a(i));
        }
        assert_eq!(t.get(1, 2, 3), BigInt::from(256));
    }

    #[test]
    fn p_table_invariants_hold_for_grassmann_family() {
        for q in 2..=4u64 {
            for d in 2..=4u32 {
                for n in 2 * d..=2 * d + 2 {
                    let a = grassmann_array(n, d, q).unwrap();
                    let t = p_table(&a).unwrap();
                    for h in 0..=d {
                        for i in 0..=d {
                            let row: BigInt = (0..=d).map(|j| t.get(h, i, j)).sum();
                            assert_eq!(row, a.k_i(i));
                            for j in 0..=d {
                                assert_eq!(t.get(h, i, j), t.get(h, j, i));
                                if i + j < h || i.abs_diff(j) > h {
                                    assert!(t.get(h, i, j).is_zero());
                                }
                            }
                        }
                        assert_eq!(t.get(0, h, h), a.k_i(h));
                    }
                }
            }
        }
    }

    #[test]
    fn inconsistent_array_rejected() {
        assert!(IntersectionArray::from_i64(&[3, 2], &[2, 1]).is_err());
        assert!(IntersectionArray::from_i64(&[3, 0], &[1, 1]).is_err());
        // k_2 = 5*4/3 is not integral
        assert!(IntersectionArray::from_i64(&[5, 4], &[1, 3]).is_err());
    }

    #[test]
    fn classical_spectrum_examples() {
        assert_eq!(classical_spectrum(4, 2, 2).unwrap(), Spectrum::from_i64(&[(18, 1), (3, 14), (-3, 20)]));
        assert_eq!(
            classical_spectrum(6, 3, 2).unwrap(),
            Spectrum::from_i64(&[(98, 1), (35, 62), (5, 588), (-7, 744)])
        );
        assert_eq!(classical_spectrum(4, 2, 3).unwrap(), Spectrum::from_i64(&[(48, 1), (8, 39), (-4, 90)]));
    }

    #[test]
    fn classical_spectrum_moments_and_eigen_routes() {
        for q in 2..=4u64 {
            for d in 2..=4u32 {
                for n in 2 * d..=2 * d + 3 {
                    let sp = classical_spectrum(n, d, q).unwrap();
                    let a = grassmann_array(n, d, q).unwrap();
                    assert!(check_moments(&sp, &a.vertex_count(), &a.k()), "n={n} D={d} q={q}");
                    let cp = grassmann_classical(n, d, q).unwrap();
                    let thetas: Vec<BigInt> = sp.eigenvalues().cloned().collect();
                    assert_eq!(thetas, classical_eigenvalues(&cp));
                }
            }
        }
    }

    #[test]
    fn grid_spectra() {
        assert_eq!(grid_spectrum(4), Spectrum::from_i64(&[(6, 1), (2, 6), (-2, 9)]));
        assert_eq!(grid_spectrum(2), Spectrum::from_i64(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(grid_spectrum(7), Spectrum::from_i64(&[(12, 1), (5, 12), (-2, 36)]));
        assert_eq!(rect_grid_spectrum(3, 5), Spectrum::from_i64(&[(6, 1), (3, 2), (1, 4), (-2, 8)]));
        for s in 2..8u64 {
            assert_eq!(rect_grid_spectrum(s, s), grid_spectrum(s));
            for t in 2..8u64 {
                let (v, k) = (BigInt::from(s * t), BigInt::from(s + t - 2));
                assert!(check_moments(&rect_grid_spectrum(s, t), &v, &k));
            }
        }
    }

    #[test]
    fn clique_extension_spectra() {
        assert_eq!(
            clique_ext_grid_spectrum(2, 7),
            Spectrum::from_i64(&[(25, 1), (11, 12), (-1, 49), (-3, 36)])
        );
        assert_eq!(clique_ext_grid_spectrum(3, 4), Spectrum::from_i64(&[(20, 1), (8, 6), (-1, 32), (-4, 9)]));
        for s in 2..10u64 {
            assert_eq!(clique_ext_grid_spectrum(1, s), grid_spectrum(s));
            for q in 1..5u64 {
                assert_eq!(clique_ext_grid_spectrum(q, s), clique_extension_spectrum(&grid_spectrum(s), q));
            }
        }
    }

    #[test]
    fn moments_examples() {
        let sp = classical_spectrum(6, 3, 2).unwrap();
        assert!(check_moments(&sp, &1395.into(), &98.into()));
        assert!(!check_moments(&Spectrum::from_i64(&[(5, 1)]), &1.into(), &5.into()));
        assert!(check_moments(&clique_ext_grid_spectrum(2, 7), &98.into(), &25.into()));
    }
}
