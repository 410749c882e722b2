use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{popcount_and, Graph};
use crate::error::{Error, Result};
use crate::exact::{int_rat, to_integer, BigRat};
use crate::params::Spectrum;

/// Matrix entry arithmetic that may refuse to overflow.
trait Entry: Clone + Send + Sync + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    /// `self - t * x`.
    fn sub_scaled(&self, t: &BigInt, x: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub_scaled(&self, t: &BigInt, x: &Self) -> Option<Self> {
        self.checked_sub(t.to_i64()?.checked_mul(*x)?)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub_scaled(&self, t: &BigInt, x: &Self) -> Option<Self> {
        Some(self - t * x)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn identity<T: Entry>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

/// `(A - theta I) M`, one adjacency row at a time: `n * k * n` work.
fn shifted_product<T: Entry>(g: &Graph, m: &[T], theta: &BigInt) -> Option<Vec<T>> {
    let n = g.vertex_count();
    let rows: Option<Vec<Vec<T>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut acc = vec![T::zero(); n];
            for y in g.neighbors(x) {
                for (a, b) in acc.iter_mut().zip(&m[y * n..(y + 1) * n]) {
                    *a = a.add(b)?;
                }
            }
            if !theta.is_zero() {
                for (a, b) in acc.iter_mut().zip(&m[x * n..(x + 1) * n]) {
                    *a = a.sub_scaled(theta, b)?;
                }
            }
            Some(acc)
        })
        .collect();
    Some(rows?.concat())
}

/// `Tr(P Q)` for symmetric `P`, `Q`.
fn trace_of_product<T: Entry>(p: &[T], q: &[T]) -> Option<BigInt> {
    let parts: Option<Vec<BigInt>> = p
        .par_chunks(1024)
        .zip(q.par_chunks(1024))
        .map(|(a, b)| {
            let mut s = T::zero();
            for (x, y) in a.iter().zip(b) {
                s = s.add(&x.mul(y)?)?;
            }
            Some(s.to_big())
        })
        .collect();
    Some(parts?.into_iter().sum())
}

fn run_checks<T: Entry>(g: &Graph, sp: &Spectrum) -> Option<(bool, Vec<BigInt>)> {
    let n = g.vertex_count();
    let mut m = identity::<T>(n);
    for theta in sp.eigenvalues() {
        m = shifted_product(g, &m, theta)?;
    }
    let annihilates = m.iter().all(|x| x.to_big().is_zero());
    drop(m);

    // Tr(A^(a+b)) = Tr(A^a A^b), so powers up to ceil(d/2) suffice.
    let d = sp.distinct().saturating_sub(1);
    let half = d.div_ceil(2);
    let mut powers = vec![identity::<T>(n)];
    for _ in 0..half {
        let next = shifted_product(g, powers.last().expect("nonempty"), &<BigInt as Zero>::zero())?;
        powers.push(next);
    }
    let traces = (0..=d)
        .map(|l| trace_of_product(&powers[l.div_ceil(2)], &powers[l / 2]))
        .collect::<Option<Vec<_>>>()?;
    Some((annihilates, traces))
}

/// Outcome of the exact two-stage spectrum check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumCheck {
    /// `prod_j (A - theta_j I) = 0`.
    pub annihilates: bool,
    /// `Tr(A^l)` by walk counting, `l = 0..=d`.
    pub traces: Vec<BigInt>,
    /// `sum_j m_j theta_j^l`, `l = 0..=d`.
    pub expected: Vec<BigInt>,
    /// Whether machine-word arithmetic overflowed and big integers were used.
    pub promoted: bool,
}

impl SpectrumCheck {
    pub fn passed(&self) -> bool {
        self.annihilates && self.traces == self.expected
    }
}

/// Exact spectrum certificate: the minimal-polynomial annihilation confines
/// the eigenvalues to the given `d + 1` values, and the moments `l = 0..=d`
/// then fix the multiplicities through a Vandermonde system.
pub fn spectrum_check(g: &Graph, sp: &Spectrum) -> SpectrumCheck {
    let expected = (0..sp.distinct() as u32).map(|l| sp.moment(l)).collect();
    let (annihilates, traces, promoted) = match run_checks::<i64>(g, sp) {
        Some((a, t)) => (a, t, false),
        None => {
            let (a, t) = run_checks::<BigInt>(g, sp).expect("big integers never overflow");
            (a, t, true)
        }
    };
    SpectrumCheck { annihilates, traces, expected, promoted }
}

pub fn verify_spectrum_exact(g: &Graph, sp: &Spectrum) -> bool {
    spectrum_check(g, sp).passed()
}

/// Triangles and quadrangles through every vertex.
///
/// A quadrangle through `x` is a 4-cycle `x, a, y, b` of the graph, with
/// chords `xy` and `ab` allowed; there are `sum_{y != x} C(|Γ(x) ∩ Γ(y)|, 2)`
/// of them, which for a `k`-regular graph equals `(A^4)_xx / 2 - k^2 + k / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCounts {
    pub triangles: BigInt,
    pub quadrangles: BigInt,
}

/// Per-vertex triangles and quadrangles predicted by `sp` for a regular
/// graph, confirmed by direct counting at every vertex.
pub fn triangle_quadrangle_check(g: &Graph, sp: &Spectrum) -> Result<LocalCounts> {
    let k = g.regular_degree().ok_or_else(|| Error::InvalidArgument("graph is not regular".into()))?;
    let v = BigInt::from(g.vertex_count());
    let kb = BigInt::from(k);
    let tri = BigRat::new(sp.moment(3), &v * 2u32);
    let quad = BigRat::new(sp.moment(4), &v * 2u32) - int_rat(&kb * &kb) + BigRat::new(kb.clone(), BigInt::from(2));
    let triangles = to_integer(&tri).ok_or_else(|| Error::NonIntegral(format!("triangles per vertex {tri}")))?;
    let quadrangles = to_integer(&quad).ok_or_else(|| Error::NonIntegral(format!("quadrangles per vertex {quad}")))?;

    let direct: Vec<(u64, u64)> = (0..g.vertex_count())
        .into_par_iter()
        .map(|x| {
            let mut t = 0u64;
            let mut q = 0u64;
            for y in 0..g.vertex_count() {
                if y == x {
                    continue;
                }
                let c = g.common_count(x, y) as u64;
                if g.has_edge(x, y) {
                    t += c;
                }
                q += c * c.saturating_sub(1) / 2;
            }
            (t / 2, q)
        })
        .collect();
    for (x, &(t, q)) in direct.iter().enumerate() {
        if BigInt::from(t) != triangles || BigInt::from(q) != quadrangles {
            return Err(Error::NonConstant(format!(
                "vertex {x} has {t} triangles and {q} quadrangles, spectrum predicts {triangles} and {quadrangles}"
            )));
        }
    }
    Ok(LocalCounts { triangles, quadrangles })
}

/// Quotient matrix of a vertex partition: entry `(i, j)` is the average number
/// of neighbours in part `j` of a vertex in part `i`.
pub fn quotient_matrix(g: &Graph, parts: &[Vec<usize>]) -> Result<Vec<Vec<BigRat>>> {
    let bitsets: Vec<Vec<u64>> = parts.iter().map(|p| g.bitset(p.iter().copied())).collect();
    parts
        .iter()
        .map(|p| {
            if p.is_empty() {
                return Err(Error::InvalidArgument("empty part in partition".into()));
            }
            Ok(bitsets
                .iter()
                .map(|bs| {
                    let total: usize = p.iter().map(|&u| popcount_and(g.row(u), bs)).sum();
                    BigRat::new(BigInt::from(total), BigInt::from(p.len()))
                })
                .collect())
        })
        .collect()
}

/// Second eigenvalue of the quotient matrix for `{clique, rest}` in a regular
/// graph; by interlacing it is at most the second eigenvalue of the graph.
pub fn clique_quotient_second_eigenvalue(g: &Graph, clique: &[usize]) -> Result<BigRat> {
    let k = g.regular_degree().ok_or_else(|| Error::InvalidArgument("graph is not regular".into()))?;
    if !g.is_clique(clique) {
        return Err(Error::InvalidArgument("vertex set is not a clique".into()));
    }
    let inside = g.bitset(clique.iter().copied());
    let rest: Vec<usize> = (0..g.vertex_count()).filter(|&u| inside[u / 64] >> (u % 64) & 1 == 0).collect();
    let b = quotient_matrix(g, &[clique.to_vec(), rest])?;
    // Row sums are k, so k is one eigenvalue and the trace gives the other.
    Ok(&b[0][0] + &b[1][1] - int_rat(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{clique_extension, grid_graph, shrikhande};
    use crate::params::{clique_ext_grid_spectrum, grid_spectrum};

    #[test]
    fn grid_and_shrikhande_spectra() {
        assert!(verify_spectrum_exact(&grid_graph(4, 4), &grid_spectrum(4)));
        assert!(verify_spectrum_exact(&shrikhande(), &grid_spectrum(4)));
        assert!(!verify_spectrum_exact(&grid_graph(4, 4), &grid_spectrum(5)));
        // Right eigenvalues, wrong multiplicities: annihilation alone passes.
        let wrong = Spectrum::from_i64(&[(6, 1), (2, 5), (-2, 10)]);
        let c = spectrum_check(&grid_graph(4, 4), &wrong);
        assert!(c.annihilates && !c.passed());
    }

    #[test]
    fn clique_extension_spectrum_exact() {
        for (q, r) in [(2, 3), (3, 4), (2, 7)] {
            let g = clique_extension(&grid_graph(r, r), q);
            assert!(verify_spectrum_exact(&g, &clique_ext_grid_spectrum(q as u64, r as u64)), "q={q} r={r}");
        }
    }

    #[test]
    fn big_integer_path_agrees() {
        let g = grid_graph(3, 3);
        let sp = grid_spectrum(3);
        let (a, t) = run_checks::<BigInt>(&g, &sp).unwrap();
        let (a2, t2) = run_checks::<i64>(&g, &sp).unwrap();
        assert_eq!((a, t), (a2, t2));
        // An eigenvalue outside i64 forces promotion.
        let huge = Spectrum::new(vec![(BigInt::from(i64::MAX) * 4, BigInt::from(1)), (BigInt::from(1), BigInt::from(1))]);
        let c = spectrum_check(&g, &huge);
        assert!(c.promoted && !c.passed());
    }

    /// Every 4-cycle through `x`, found by trying all 4-sets containing it
    /// and every cyclic order of the other three.
    fn enumerate_quadrangles(g: &Graph, x: usize) -> u64 {
        let others: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != x).collect();
        let mut count = 0;
        for (i, &a) in others.iter().enumerate() {
            for (j, &b) in others.iter().enumerate().skip(i + 1) {
                for &c in &others[j + 1..] {
                    // The three distinct 4-cycles on {x,a,b,c}: x-?-?-?-x with
                    // the vertex opposite x being a, b or c.
                    for (opp, s, t) in [(a, b, c), (b, a, c), (c, a, b)] {
                        if g.has_edge(x, s) && g.has_edge(s, opp) && g.has_edge(opp, t) && g.has_edge(t, x) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn quadrangle_convention_matches_enumeration() {
        for s in [3, 4] {
            let g = grid_graph(s, s);
            let counts = triangle_quadrangle_check(&g, &grid_spectrum(s as u64)).unwrap();
            for x in 0..g.vertex_count() {
                assert_eq!(BigInt::from(enumerate_quadrangles(&g, x)), counts.quadrangles, "s={s} x={x}");
            }
        }
        let g = shrikhande();
        let counts = triangle_quadrangle_check(&g, &grid_spectrum(4)).unwrap();
        assert_eq!(BigInt::from(enumerate_quadrangles(&g, 0)), counts.quadrangles);
    }

    #[test]
    fn local_graph_of_extension_counts() {
        let g = clique_extension(&grid_graph(7, 7), 2);
        let c = triangle_quadrangle_check(&g, &clique_ext_grid_spectrum(2, 7)).unwrap();
        assert_eq!(c.triangles, BigInt::from(156));
        let mut h = Graph::new(4);
        h.add_edge(0, 1);
        assert!(triangle_quadrangle_check(&h, &grid_spectrum(2)).is_err());
    }

    #[test]
    fn interlacing_on_a_line() {
        let (q, r) = (2usize, 7usize);
        let g = clique_extension(&grid_graph(r, r), q);
        let line: Vec<usize> = (0..r * q).collect();
        let second = clique_quotient_second_eigenvalue(&g, &line).unwrap();
        assert_eq!(second, int_rat((q * (r - 1)) as i64 - 1));
        assert!(clique_quotient_second_eigenvalue(&g, &[0, 20]).is_err());
    }
}
