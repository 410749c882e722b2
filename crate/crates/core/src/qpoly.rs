//! Consequences of the Q-polynomial property for graphs with classical
//! parameters: triple intersection number identities, the congruences they
//! force on local graphs of `J_q(2D, D)`, the local eigenvalue bounds, the
//! Terwilliger polynomial and the trace argument that pins the local spectrum.
//!
//! Every formula is evaluated in exact rationals; conversion to a count is an
//! explicit, checked step.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{bracket, gaussian_binomial, int_rat, modulo, pow, solve_rational, to_integer, BigInt, BigRat, IntPolynomial};
use crate::params::{
    array_from_classical, classical_eigenvalues, classical_spectrum, clique_ext_grid_spectrum, p_table,
    ClassicalParams, Spectrum,
};

/// How two neighbours `y`, `z` of a base vertex `x` are related.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Same,
    Adjacent,
    Distance2,
}

impl Relation {
    /// `j = d(y, z)`.
    pub fn distance(self) -> u32 {
        match self {
            Relation::Same => 0,
            Relation::Adjacent => 1,
            Relation::Distance2 => 2,
        }
    }

    pub fn from_distance(d: u32) -> Option<Self> {
        match d {
            0 => Some(Relation::Same),
            1 => Some(Relation::Adjacent),
            2 => Some(Relation::Distance2),
            _ => None,
        }
    }
}

/// `[1,2,2]` from `[1,1,1]`: `b_1` if `y = z`, `b_1 - a_1 + 1 + [1,1,1]` if
/// adjacent, `b_1 - a_1 - 1 + [1,1,1]` at distance 2.
pub fn triple_122_from_111(cp: &ClassicalParams, relation: Relation, t111: &BigInt) -> Result<BigInt> {
    let ia = array_from_classical(cp)?;
    let (b1, a1) = (ia.b(1), ia.a(1));
    Ok(match relation {
        Relation::Same => b1,
        Relation::Adjacent => b1 - a1 + 1u32 + t111,
        Relation::Distance2 => b1 - a1 - 1u32 + t111,
    })
}

/// Scalars of the `[i, i+1, i+1]` identity at level `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleConstants {
    pub i: u32,
    /// `sigma_i = [i 1]_b`.
    pub sigma_i: BigInt,
    /// `rho_{i1} = -b [i-1 1]`.
    pub rho_i1: BigRat,
    /// `rho_{i2} = rho_{i1} + (b / b_1)(c_i - sigma_i)`.
    pub rho_i2: BigRat,
    /// `p^1_{i,i+1}`.
    pub p1_i_iplus1: BigInt,
    pub b1: BigInt,
}

pub fn triple_constants(cp: &ClassicalParams, i: u32) -> Result<TripleConstants> {
    if i < 1 || i >= cp.diameter {
        return Err(Error::InvalidArgument(format!("level i must be in 1..={}, got {i}", cp.diameter - 1)));
    }
    let ia = array_from_classical(cp)?;
    let pt = p_table(&ia)?;
    let b = BigInt::from(cp.b);
    let b1 = ia.b(1);
    let sigma_i = cp.bracket(i);
    let rho_i1 = int_rat(-(&b * cp.bracket(i - 1)));
    let rho_i2 = &rho_i1 + BigRat::new(b.clone(), b1.clone()) * int_rat(ia.c(i) - &sigma_i);
    Ok(TripleConstants { i, sigma_i, rho_i1, rho_i2, p1_i_iplus1: pt.get(1, i, i + 1), b1 })
}

/// `[i, i+1, i+1] = p^1_{i,i+1} (sigma_i / b_1 [1,2,2] + rho_{ij})` for
/// neighbours `y`, `z` of `x` at distance `j` in {1, 2}.
pub fn triple_spear(cp: &ClassicalParams, i: u32, j: u32, t122: &BigInt) -> Result<BigRat> {
    let tc = triple_constants(cp, i)?;
    let rho = match j {
        1 => &tc.rho_i1,
        2 => &tc.rho_i2,
        _ => return Err(Error::InvalidArgument(format!("j must be 1 or 2, got {j}"))),
    };
    let inner = BigRat::new(tc.sigma_i.clone() * t122, tc.b1.clone()) + rho;
    Ok(int_rat(tc.p1_i_iplus1) * inner)
}

/// Interpret a formula value as a triple count: it must be a non-negative integer.
pub fn as_count(value: &BigRat, what: &str) -> Result<BigInt> {
    match to_integer(value) {
        Some(v) if !v.is_negative() => Ok(v),
        _ => Err(Error::NonIntegral(format!("{what} = {value}"))),
    }
}

/// `[i, i+1, i+1]` as a checked count.
pub fn triple_spear_count(cp: &ClassicalParams, i: u32, j: u32, t122: &BigInt) -> Result<BigInt> {
    as_count(&triple_spear(cp, i, j, t122)?, &format!("[{i},{},{}]", i + 1, i + 1))
}

/// Constants of the `[D-1, D, D]` formula for `J_q(n, D)` parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaDddConstants {
    /// `q^(D^2-4) [n-D-1 D-1]_q / [n-D-1 1]_q`.
    pub gamma: BigRat,
    /// `q^3 [n-D-1]([D-1] + 1) - q [n-D][D] + 2`.
    pub adjacent_offset: BigInt,
    /// `q^2 (q^(n-D-1) - 1) - q (q^(D-1) + 1)`.
    pub distance2_offset: BigInt,
}

fn grassmann_of(cp: &ClassicalParams) -> Result<(u32, u32, u64)> {
    cp.as_grassmann()
        .ok_or_else(|| Error::InvalidArgument(format!("{cp} are not the classical parameters of a Grassmann graph")))
}

pub fn lemma_ddd_constants(cp: &ClassicalParams) -> Result<LemmaDddConstants> {
    let (n, d, q) = grassmann_of(cp)?;
    if d < 3 {
        return Err(Error::InvalidArgument(format!("[D-1,D,D] formula needs D >= 3, got {d}")));
    }
    let qb = BigInt::from(q);
    let gamma = BigRat::new(
        pow(q, d * d - 4) * gaussian_binomial(n - d - 1, d - 1, q)?,
        bracket(n - d - 1, q),
    );
    let adjacent_offset = pow(q, 3) * bracket(n - d - 1, q) * (bracket(d - 1, q) + 1u32)
        - &qb * bracket(n - d, q) * bracket(d, q)
        + 2u32;
    let distance2_offset = pow(q, 2) * (pow(q, n - d - 1) - 1u32) - &qb * (pow(q, d - 1) + 1u32);
    Ok(LemmaDddConstants { gamma, adjacent_offset, distance2_offset })
}

/// `[D-1, D, D]` in terms of `[1,1,1]` for `J_q(n, D)` parameters.
pub fn lemma_ddd(cp: &ClassicalParams, relation: Relation, t111: &BigInt) -> Result<BigRat> {
    let c = lemma_ddd_constants(cp)?;
    let offset = match relation {
        Relation::Adjacent => &c.adjacent_offset,
        Relation::Distance2 => &c.distance2_offset,
        Relation::Same => return Err(Error::InvalidArgument("[D-1,D,D] formula needs y != z".into())),
    };
    Ok(c.gamma * int_rat(t111 + offset))
}

/// Residues that `[1,1,1]` is forced into for `J_q(2D, D)` parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceObstruction {
    /// `[D-1 1]_q`.
    pub modulus: BigInt,
    /// `(q - 2) mod [D-1]` for adjacent `y, z`.
    pub residue_adjacent: BigInt,
    /// `2q mod [D-1]` for `y, z` at distance 2.
    pub residue_dist2: BigInt,
    /// For `D >= 4`, `[D-1] > (q+1)^2 - 1` so `[1,1,1] = 2q` exactly at distance 2.
    pub exact_dist2: Option<BigInt>,
}

pub fn congruence_obstruction(cp: &ClassicalParams) -> Result<CongruenceObstruction> {
    let (q, d) = cp
        .as_square_grassmann()
        .ok_or_else(|| Error::InvalidArgument(format!("{cp} are not the parameters of J_q(2D,D)")))?;
    if d < 3 {
        return Err(Error::InvalidArgument(format!("congruences need D >= 3, got {d}")));
    }
    let modulus = bracket(d - 1, q);
    let qb = BigInt::from(q);
    Ok(CongruenceObstruction {
        residue_adjacent: modulo(&(&qb - 2u32), &modulus),
        residue_dist2: modulo(&(&qb * 2u32), &modulus),
        exact_dist2: (d >= 4).then(|| &qb * 2u32),
        modulus,
    })
}

impl CongruenceObstruction {
    pub fn admits(&self, relation: Relation, t111: &BigInt) -> bool {
        match relation {
            Relation::Same => true,
            Relation::Adjacent => modulo(t111, &self.modulus) == self.residue_adjacent,
            Relation::Distance2 => match &self.exact_dist2 {
                Some(v) => t111 == v,
                None => modulo(t111, &self.modulus) == self.residue_dist2,
            },
        }
    }
}

/// Lower bound on local eigenvalues and the admissible window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBound {
    /// `-1 - b_1 / (theta_1 + 1)`.
    pub theta_hat_1: BigRat,
    /// `q^2 [D-1]_q - 1`.
    pub theta_hat_d: BigInt,
    /// `b_0 - m_1`.
    pub min_mult_theta_hat_1: BigInt,
}

impl LocalBound {
    /// Whether a non-principal local eigenvalue lies in
    /// `[theta_hat_1, -1] U {theta_hat_D}`.
    pub fn admits(&self, eta: &BigRat) -> bool {
        (eta >= &self.theta_hat_1 && eta <= &int_rat(-1)) || *eta == int_rat(self.theta_hat_d.clone())
    }
}

pub fn local_eigenvalue_window(cp: &ClassicalParams) -> Result<LocalBound> {
    let (q, d) = cp
        .as_square_grassmann()
        .ok_or_else(|| Error::InvalidArgument(format!("{cp} are not the parameters of J_q(2D,D)")))?;
    if d < 3 {
        return Err(Error::InvalidArgument(format!("local eigenvalue window needs D >= 3, got {d}")));
    }
    let ia = array_from_classical(cp)?;
    let theta = classical_eigenvalues(cp);
    let theta_hat_1 = int_rat(-1) - BigRat::new(ia.b(1), &theta[1] + 1u32);
    let sp = classical_spectrum(2 * d, d, q)?;
    let m1 = sp.multiplicity(&theta[1]);
    Ok(LocalBound {
        theta_hat_1,
        theta_hat_d: pow(q, 2) * bracket(d - 1, q) - 1u32,
        min_mult_theta_hat_1: ia.k() - m1,
    })
}

/// The Terwilliger polynomial at one level and its roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerwilligerReport {
    pub i: u32,
    pub poly: IntPolynomial,
    /// Integer roots, ascending, with multiplicity.
    pub roots: Vec<BigInt>,
    pub leading_negative: bool,
}

impl TerwilligerReport {
    /// `T_i(eta) >= 0`.
    pub fn nonnegative_at(&self, eta: &BigRat) -> bool {
        !self.poly.eval_rat(eta).is_negative()
    }
}

/// The four roots as stated: `beta - alpha - 1`, `-1`, `-b - 1`, `alpha b [D-1] - 1`.
pub fn terwilliger_factor_roots(cp: &ClassicalParams) -> [BigInt; 4] {
    let b = BigInt::from(cp.b);
    [
        &cp.beta - &cp.alpha - 1u32,
        BigInt::from(-1),
        -&b - 1u32,
        &cp.alpha * &b * cp.bracket(cp.diameter - 1) - 1u32,
    ]
}

/// `T_i(z) = -(b^i - 1)(b^(i-1) - 1)(z - beta + alpha + 1)(z + 1)(z + b + 1)(z - alpha b [D-1] + 1)`,
/// expanded, with roots recovered from the expanded coefficients.
pub fn terwilliger_poly(cp: &ClassicalParams, i: u32) -> Result<TerwilligerReport> {
    let d = cp.diameter;
    if d < 3 {
        return Err(Error::InvalidArgument(format!("Terwilliger polynomial needs D >= 3, got {d}")));
    }
    if i < 2 || i > d - 1 {
        return Err(Error::InvalidArgument(format!("level i must be in 2..={}, got {i}", d - 1)));
    }
    let lead = -((pow(cp.b, i) - 1u32) * (pow(cp.b, i - 1) - 1u32));
    let poly = IntPolynomial::from_roots(lead.clone(), &terwilliger_factor_roots(cp));
    let roots = poly.integer_roots();
    if roots.len() != 4 {
        return Err(Error::NonIntegral(format!("T_{i} = {poly} has only {} integer roots", roots.len())));
    }
    Ok(TerwilligerReport { i, leading_negative: poly.leading().is_negative(), poly, roots })
}

/// For `J_q(2D, D)`: `q^2 [D-1] - 1 == [D+1] - q - 2`, the two largest
/// Terwilliger roots coincide.
pub fn terwilliger_roots_coincide(q: u64, d: u32) -> bool {
    pow(q, 2) * bracket(d - 1, q) - 1u32 == bracket(d + 1, q) - q - 2u32
}

/// The trace-difference argument for local graphs of `J_q(2D, D)`.
///
/// A local graph has valency `a_1` on `b_0` vertices and non-principal
/// eigenvalues in `[theta_hat_1, -1] U {theta_hat_D}` with at least the
/// forced multiplicity of `theta_hat_1`. Comparing traces of `A^0, A, A^2`
/// with the q-clique extension of the grid gives three equations in the
/// excess multiplicities `e_D, e_{-1}, e_1` and the extra eigenvalues `eta_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDifference {
    pub q: u64,
    pub diameter: u32,
    pub a1: BigInt,
    pub b0: BigInt,
    pub theta_hat_1: BigInt,
    pub theta_hat_d: BigInt,
    /// Multiplicities of `theta_hat_1, -1, theta_hat_D` solved from the three
    /// trace equations with no extra eigenvalues.
    pub solved: [BigInt; 3],
    /// Coefficients of `e_D, e_{-1}, e_1` in
    /// `Eq2 - theta_hat_D Eq0 - (theta_hat_D - 1) Eq1`.
    pub combination: [BigInt; 3],
    /// The same combination applied to an extra eigenvalue `eta`.
    pub eta_weight: IntPolynomial,
    /// `eta_weight > 0` on the open interval `(theta_hat_1, -1)`.
    pub eta_weight_positive: bool,
    /// Excess multiplicities `(e_D, e_{-1}, e_1)` over the reference spectrum.
    pub excess: [BigInt; 3],
    /// Number `s` of eigenvalues outside `{theta_hat_1, -1, theta_hat_D}`.
    pub extra: usize,
}

pub fn trace_difference(cp: &ClassicalParams) -> Result<TraceDifference> {
    let (q, d) = cp
        .as_square_grassmann()
        .ok_or_else(|| Error::InvalidArgument(format!("{cp} are not the parameters of J_q(2D,D)")))?;
    let window = local_eigenvalue_window(cp)?;
    let ia = array_from_classical(cp)?;
    let (a1, b0) = (ia.a(1), ia.k());
    let t1 = to_integer(&window.theta_hat_1)
        .ok_or_else(|| Error::NonIntegral(format!("theta_hat_1 = {}", window.theta_hat_1)))?;
    let td = window.theta_hat_d.clone();
    let minus1 = BigInt::from(-1);

    // Eq0: sum of multiplicities; Eq1: trace; Eq2: trace of A^2, all over the
    // non-principal part.
    let eigs = [t1.clone(), minus1.clone(), td.clone()];
    let rows: Vec<Vec<BigRat>> = (0..3u32)
        .map(|l| eigs.iter().map(|t| int_rat(num_traits::pow(t.clone(), l as usize))).collect())
        .collect();
    let rhs = vec![
        int_rat(&b0 - 1u32),
        int_rat(-a1.clone()),
        int_rat(&b0 * &a1 - &a1 * &a1),
    ];
    let sol = solve_rational(rows, rhs)?;
    let mut solved: [BigInt; 3] = Default::default();
    for (slot, v) in solved.iter_mut().zip(&sol) {
        *slot = to_integer(v)
            .filter(|x| !x.is_negative())
            .ok_or_else(|| Error::NonIntegral(format!("solved local multiplicity {v}")))?;
    }

    // Eq2 - td*Eq0 - (td-1)*Eq1 on a generic eigenvalue z: z^2 - (td-1) z - td.
    let eta_weight = IntPolynomial::new(vec![-td.clone(), -(&td - 1u32), BigInt::one()]);
    let combination = [
        eta_weight.eval(&td),
        eta_weight.eval(&minus1),
        eta_weight.eval(&t1),
    ];
    // Roots of eta_weight are -1 and td, leading coefficient positive: it is
    // positive left of -1 whenever td > -1.
    let eta_weight_positive = td > minus1 && t1 < minus1 && eta_weight.integer_roots() == vec![minus1.clone(), td.clone()];

    // combination = (0, 0, c1 > 0) and positive eta weights force s = e_1 = 0;
    // then e_D + e_{-1} = 0 and td e_D - e_{-1} = 0 have determinant -(td + 1) != 0.
    let forced = combination[0].is_zero()
        && combination[1].is_zero()
        && combination[2].is_positive()
        && eta_weight_positive
        && !(&td + 1u32).is_zero();
    if !forced {
        return Err(Error::InvalidArgument(format!(
            "trace-difference argument does not close for {cp}: combination {combination:?}"
        )));
    }
    // With s = e_1 = 0 the first two differences read e_D + e_{-1} = 0 and
    // td e_D - e_{-1} = 0.
    let homog = solve_rational(
        vec![vec![int_rat(1), int_rat(1)], vec![int_rat(td.clone()), int_rat(-1)]],
        vec![int_rat(0), int_rat(0)],
    )?;
    let excess = [homog[0].to_integer(), homog[1].to_integer(), BigInt::zero()];
    if solved[0] < window.min_mult_theta_hat_1 {
        return Err(Error::Infeasible(format!(
            "solved multiplicity {} of theta_hat_1 below forced minimum {}",
            solved[0], window.min_mult_theta_hat_1
        )));
    }
    Ok(TraceDifference {
        q,
        diameter: d,
        a1,
        b0,
        theta_hat_1: t1,
        theta_hat_d: td,
        solved,
        combination,
        eta_weight,
        eta_weight_positive,
        excess,
        extra: 0,
    })
}

/// The local spectrum every graph with the parameters of `J_q(2D, D)` must
/// have, derived from the trace equations and checked against the spectrum of
/// the q-clique extension of the `([D] x [D])`-grid.
pub fn forced_local_spectrum(cp: &ClassicalParams) -> Result<Spectrum> {
    let td = trace_difference(cp)?;
    let [m1, mm1, md] = td.solved.clone();
    let sp = Spectrum::new(vec![
        (td.a1.clone(), BigInt::one()),
        (td.theta_hat_1.clone(), m1),
        (BigInt::from(-1), mm1),
        (td.theta_hat_d.clone(), md),
    ]);
    let expected = clique_ext_grid_spectrum(td.q, bracket(td.diameter, td.q));
    if sp != expected {
        return Err(Error::Infeasible(format!("derived local spectrum {sp} differs from {expected}")));
    }
    Ok(sp)
}

/// Residues of `[1,1,1]` modulo `[D-1]` for which the `[D-1, D, D]` formula is
/// integral, found by trying every residue. Used to cross-check
/// [`congruence_obstruction`].
pub fn integral_residues(cp: &ClassicalParams, relation: Relation) -> Result<Vec<BigInt>> {
    let (_, d) = cp
        .as_square_grassmann()
        .ok_or_else(|| Error::InvalidArgument(format!("{cp} are not the parameters of J_q(2D,D)")))?;
    let modulus = cp.bracket(d - 1);
    let mut out = Vec::new();
    let mut t = BigInt::zero();
    while t < modulus {
        if lemma_ddd(cp, relation, &t)?.is_integer() {
            out.push(t.clone());
        }
        t += 1u32;
    }
    Ok(out)
}

/// `gcd(q^(D^2-4), [D-1])`; equal to 1, which is what makes the congruences work.
pub fn gamma_gcd(q: u64, d: u32) -> BigInt {
    pow(q, d * d - 4).gcd(&bracket(d - 1, q))
}
