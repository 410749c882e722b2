//! Finite fields of order at most 16, as dense lookup tables.
//!
//! Elements are indices `0..q`. An element of `GF(p^e)` is the polynomial
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` over `GF(p)` with index
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, so `0` and `1` are the identities.
//! Extension fields reduce modulo a fixed irreducible polynomial:
//!
//! | q  | modulus         |
//! |----|-----------------|
//! | 4  | `x^2 + x + 1`   |
//! | 8  | `x^3 + x + 1`   |
//! | 9  | `x^2 + 1`       |
//! | 16 | `x^4 + x + 1`   |

use crate::error::{Error, Result};

/// Index of a field element, `0..q`.
pub type FieldElem = u8;

pub const MAX_ORDER: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: usize,
    p: u32,
    e: u32,
    add: Vec<FieldElem>,
    mul: Vec<FieldElem>,
    neg: Vec<FieldElem>,
    inv: Vec<FieldElem>,
}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Low-to-high coefficients of the reduction polynomial, without the
/// leading 1.
fn modulus(p: u64, e: u32) -> &'static [u8] {
    match (p, e) {
        (2, 2) => &[1, 1],
        (2, 3) => &[1, 1, 0],
        (2, 4) => &[1, 1, 0, 0],
        (3, 2) => &[1, 0],
        _ => &[],
    }
}

pub fn make_field(q: u64) -> Result<Field> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > MAX_ORDER {
        return Err(Error::UnsupportedOrder(q));
    }
    let qn = q as usize;
    let pu = p as u8;
    let digits = |mut v: usize| -> Vec<u8> {
        (0..e)
            .map(|_| {
                let d = (v % p as usize) as u8;
                v /= p as usize;
                d
            })
            .collect()
    };
    let index = |ds: &[u8]| ds.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
    let red = modulus(p, e);

    let mut add = vec![0; qn * qn];
    let mut mul = vec![0; qn * qn];
    for a in 0..qn {
        let da = digits(a);
        for b in 0..qn {
            let db = digits(b);
            let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
            add[a * qn + b] = index(&sum) as FieldElem;

            let mut prod = vec![0u32; 2 * e as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] += *x as u32 * *y as u32;
                }
            }
            // x^k = -(red) x^(k-e) for k >= e.
            for k in (e as usize..prod.len()).rev() {
                let c = prod[k] % p as u32;
                prod[k] = 0;
                for (t, r) in red.iter().enumerate() {
                    prod[k - e as usize + t] += c * (p as u32 - *r as u32);
                }
            }
            let low: Vec<u8> = prod[..e as usize].iter().map(|c| (c % p as u32) as u8).collect();
            mul[a * qn + b] = index(&low) as FieldElem;
        }
    }
    let neg = (0..qn)
        .map(|a| (0..qn).find(|&b| add[a * qn + b] == 0).expect("additive inverse") as FieldElem)
        .collect();
    let mut inv = vec![0; qn];
    for a in 1..qn {
        inv[a] = (1..qn)
            .find(|&b| mul[a * qn + b] == 1)
            .ok_or_else(|| Error::InvalidArgument(format!("GF({q}) table has no inverse for {a}")))?
            as FieldElem;
    }
    Ok(Field { q: qn, p: p as u32, e, add, mul, neg, inv })
}

impl Field {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (a != 0).then(|| self.inv[a as usize])
    }
}

/// Reduced row-echelon form in place; returns the rank. Zero rows end up last.
pub fn rref_in_place(f: &Field, m: &mut [Vec<FieldElem>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pr);
        let inv = f.inv(m[rank][c]).expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// `(rank, rref)` of a matrix over `f`.
pub fn rref(f: &Field, matrix: &[Vec<FieldElem>]) -> (usize, Vec<Vec<FieldElem>>) {
    let mut m = matrix.to_vec();
    let rank = rref_in_place(f, &mut m);
    (rank, m)
}

/// Rank without keeping the reduced matrix.
pub fn rank(f: &Field, matrix: &[Vec<FieldElem>]) -> usize {
    rref(f, matrix).0
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn prime_field_examples() {
        let f = make_field(5).unwrap();
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(4, 3), 2);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = make_field(4).unwrap();
        // x has index 2, x + 1 has index 3.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn gf9_uses_x2_plus_1() {
        let f = make_field(9).unwrap();
        // x is index 3; x^2 = -1 = 2.
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(make_field(6), Err(Error::NotPrimePower(6)));
        assert_eq!(make_field(12), Err(Error::NotPrimePower(12)));
        assert_eq!(make_field(1), Err(Error::NotPrimePower(1)));
        assert_eq!(make_field(17), Err(Error::UnsupportedOrder(17)));
        assert_eq!(make_field(32), Err(Error::UnsupportedOrder(32)));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = make_field(q).unwrap();
            let n = q as FieldElem;
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "zero divisor in GF({q})");
                    }
                    for c in 0..n {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rref_examples() {
        let f = make_field(2).unwrap();
        let (r, m) = rref(&f, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0]]);
        assert_eq!(r, 2);
        assert_eq!(m, vec![vec![1, 0, 1, 0], vec![0, 1, 1, 0]]);
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(rref(&f, &id), (3, id.clone()));
        let zero = vec![vec![0; 4]; 3];
        assert_eq!(rref(&f, &zero), (0, zero.clone()));
    }

    #[test]
    fn rref_idempotent_and_row_space_preserving() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for q in ORDERS {
            let f = make_field(q).unwrap();
            for _ in 0..50 {
                let rows = rng.gen_range(1..=5);
                let cols = rng.gen_range(1..=7);
                let m: Vec<Vec<FieldElem>> =
                    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..q) as FieldElem).collect()).collect();
                let (r, red) = rref(&f, &m);
                assert_eq!(rref(&f, &red), (r, red.clone()));
                // Each original row lies in the row space of the reduced matrix.
                for row in &m {
                    let mut stacked = red[..r].to_vec();
                    stacked.push(row.clone());
                    assert_eq!(rank(&f, &stacked), r);
                }
                // Pivots are 1 with zeros elsewhere in their column.
                for (i, row) in red[..r].iter().enumerate() {
                    let c = row.iter().position(|&x| x != 0).unwrap();
                    assert_eq!(row[c], 1);
                    assert!(red.iter().enumerate().all(|(j, other)| j == i || other[c] == 0));
                }
            }
        }
    }
}
