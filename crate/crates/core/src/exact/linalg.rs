//! Exact determinants, characteristic polynomials, inverses and ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::laurent::Laurent;
use super::matrix::Matrix;
use super::ring::{ExactDiv, Ring};

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
pub fn det_bareiss<R: ExactDiv>(a: &Matrix<R>) -> R {
    let n = a.order();
    if n == 0 {
        return R::one();
    }
    let mut m = a.rows();
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Coefficients of `det(λI - A)`, degree-descending, computed with the
/// division-free Berkowitz recurrence. The leading coefficient is 1.
pub fn berkowitz<R: Ring>(a: &Matrix<R>) -> Vec<R> {
    let n = a.order();
    if n == 0 {
        return vec![R::one()];
    }
    let mut v = vec![R::one(), -a.get(0, 0).clone()];
    for r in 1..n {
        // partition the leading (r+1)x(r+1) block as [[A_r, c], [row, a_rr]]
        let col: Vec<R> = (0..r).map(|i| a.get(i, r).clone()).collect();
        let row: Vec<R> = (0..r).map(|j| a.get(r, j).clone()).collect();
        let mut q = Vec::with_capacity(r + 2);
        q.push(R::one());
        q.push(-a.get(r, r).clone());
        let mut x = col;
        for _ in 0..r {
            let dot = row.iter().zip(&x).fold(R::zero(), |acc, (p, y)| acc + p.clone() * y.clone());
            q.push(-dot);
            x = (0..r)
                .map(|i| (0..r).fold(R::zero(), |acc, j| acc + a.get(i, j).clone() * x[j].clone()))
                .collect();
        }
        let next: Vec<R> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(R::zero(), |acc, j| acc + q[i - j].clone() * v[j].clone())
            })
            .collect();
        v = next;
    }
    v
}

/// Coefficients of `det(A - λI)`, degree-descending; the leading one is `(-1)^n`.
pub fn charpoly<R: Ring>(a: &Matrix<R>) -> Vec<R> {
    let n = a.order();
    let monic = berkowitz(a);
    if n % 2 == 0 {
        monic
    } else {
        monic.into_iter().map(|c| -c).collect()
    }
}

/// Sums of principal minors `(p_0, ..., p_n)` with `p_k = Σ_{|P|=k} det(A_P)`.
/// These are the degree-descending coefficients of `det(A + λI)`.
pub fn minor_sums<R: Ring>(a: &Matrix<R>) -> Vec<R> {
    berkowitz(a)
        .into_iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { c } else { -c })
        .collect()
}

/// Determinant without divisions, valid over any commutative ring.
pub fn det_division_free<R: Ring>(a: &Matrix<R>) -> R {
    minor_sums(a).pop().expect("non-empty coefficient list")
}

/// Adjugate via Cayley–Hamilton: `adj(A) = (-1)^(n-1) Σ_{k<n} c_k A^(n-1-k)`.
pub fn adjugate<R: Ring>(a: &Matrix<R>) -> Matrix<R> {
    let n = a.order();
    if n == 0 {
        return Matrix::identity(0);
    }
    let c = berkowitz(a);
    // Horner: B = A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I
    let mut b = Matrix::identity(n);
    for ck in c.iter().take(n).skip(1) {
        b = b.mat_mul(a).expect("same order").add(&Matrix::identity(n).scale(ck)).expect("same order");
    }
    if n % 2 == 0 {
        b.scale(&-R::one())
    } else {
        b
    }
}

/// Determinant with the algorithm suited to the ring.
pub trait Determinant: Ring {
    fn det(a: &Matrix<Self>) -> Self;
}

impl Determinant for BigInt {
    fn det(a: &Matrix<Self>) -> Self {
        det_bareiss(a)
    }
}

impl Determinant for BigRational {
    fn det(a: &Matrix<Self>) -> Self {
        det_bareiss(a)
    }
}

impl Determinant for Laurent {
    /// Clears the lowest power of `t` from every row, eliminates over `Z[t]`
    /// and shifts back.
    fn det(a: &Matrix<Self>) -> Self {
        let n = a.order();
        let mut total_shift = 0i64;
        let mut rows = a.rows();
        for row in rows.iter_mut() {
            let lo = row.iter().filter(|e| !e.is_zero()).map(Laurent::min_exp).min().unwrap_or(0);
            total_shift += lo;
            for e in row.iter_mut() {
                *e = e.shifted(-lo);
            }
        }
        let m = Matrix::from_rows(rows).expect("square");
        debug_assert!((0..n).all(|i| m.row(i).iter().all(Laurent::is_polynomial)));
        det_bareiss(&m).shifted(total_shift)
    }
}

impl Determinant for super::bipoly::BiPoly {
    fn det(a: &Matrix<Self>) -> Self {
        det_division_free(a)
    }
}

/// Exact inverse, computed in the fraction field where the ring has one in this crate.
pub trait Invertible: Ring {
    type Inverse: Ring;
    fn inverse(a: &Matrix<Self>) -> Result<Matrix<Self::Inverse>>;
}

impl Invertible for BigRational {
    type Inverse = BigRational;

    fn inverse(a: &Matrix<Self>) -> Result<Matrix<BigRational>> {
        gauss_jordan_inverse(a)
    }
}

impl Invertible for BigInt {
    type Inverse = BigRational;

    fn inverse(a: &Matrix<Self>) -> Result<Matrix<BigRational>> {
        gauss_jordan_inverse(&a.map(|v| BigRational::from_integer(v.clone())))
    }
}

impl Invertible for Laurent {
    type Inverse = Laurent;

    /// Adjugate divided by the determinant. Fails with `NotDivisible` when the
    /// inverse has entries outside `Z[t, 1/t]`.
    fn inverse(a: &Matrix<Self>) -> Result<Matrix<Laurent>> {
        let d = Laurent::det(a);
        if d.is_zero() {
            return Err(Error::Singular);
        }
        adjugate(a)
            .try_map(|e| e.div_exact(&d))
            .ok_or_else(|| Error::NotDivisible(format!("inverse entries are not Laurent polynomials (det = {d})")))
    }
}

fn gauss_jordan_inverse(a: &Matrix<BigRational>) -> Result<Matrix<BigRational>> {
    let n = a.order();
    let mut m = a.rows();
    let mut inv = Matrix::<BigRational>::identity(n).rows();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let mv = &f * &m[col][j];
                m[r][j] -= mv;
                let iv = &f * &inv[col][j];
                inv[r][j] -= iv;
            }
        }
    }
    Matrix::from_rows(inv)
}

impl<R: Determinant> Matrix<R> {
    pub fn det(&self) -> R {
        R::det(self)
    }
}

impl<R: Invertible> Matrix<R> {
    pub fn inverse(&self) -> Result<Matrix<R::Inverse>> {
        R::inverse(self)
    }
}

impl<R: Ring> Matrix<R> {
    pub fn charpoly(&self) -> Vec<R> {
        charpoly(self)
    }
}

/// Primes just below 2^61, 2^62 and 2^63 used for modular rank.
pub const RANK_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783];

/// Integer matrices after clearing denominators row by row.
pub trait IntegerRows: Ring {
    fn integer_rows(a: &Matrix<Self>) -> Vec<Vec<BigInt>>;
}

impl IntegerRows for BigInt {
    fn integer_rows(a: &Matrix<Self>) -> Vec<Vec<BigInt>> {
        a.rows()
    }
}

impl IntegerRows for BigRational {
    fn integer_rows(a: &Matrix<Self>) -> Vec<Vec<BigInt>> {
        a.rows()
            .into_iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }
}

/// Rank over a prime field `F_p`.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.mod_floor(&pb).to_u64().expect("reduced mod p")).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for j in col..ncols {
            m[rank][j] = mulmod(m[rank][j], inv);
        }
        for r in 0..nrows {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            for j in col..ncols {
                let sub = mulmod(f, m[rank][j]);
                m[r][j] = (m[r][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank_bareiss(rows: &[Vec<BigInt>]) -> usize {
    let mut m = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            for j in col + 1..ncols {
                let num = &m[r][j] * &m[rank][col] - &m[r][col] * &m[rank][j];
                m[r][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over the rationals: modular elimination at three primes, accepted when
/// all agree, otherwise recomputed by fraction-free elimination.
pub fn rank_exact<R: IntegerRows>(a: &Matrix<R>) -> usize {
    let rows = R::integer_rows(a);
    let ranks: Vec<usize> = RANK_PRIMES.iter().map(|&p| rank_mod_p(&rows, p)).collect();
    if ranks.iter().all(|&r| r == ranks[0]) {
        ranks[0]
    } else {
        rank_bareiss(&rows)
    }
}

impl<R: IntegerRows> Matrix<R> {
    pub fn rank(&self) -> usize {
        rank_exact(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bipoly::BiPoly;

    type M = Matrix<BigInt>;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn det_identity_and_zero_pivot() {
        assert_eq!(M::identity(3).det(), BigInt::from(1));
        let a = M::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(a.det(), BigInt::from(-1));
        let s = M::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.det(), BigInt::from(0));
    }

    #[test]
    fn det_of_symbolic_example_instantiation() {
        // [[x,0,x],[0,y,y],[x,y,x+y+z]] at (2,3,5)
        let a = M::from_i64_rows(&[&[2, 0, 2], &[0, 3, 3], &[2, 3, 10]]).unwrap();
        assert_eq!(a.det(), BigInt::from(30));
        assert_eq!(det_division_free(&a), BigInt::from(30));
    }

    #[test]
    fn charpoly_two_by_two() {
        let a = M::from_i64_rows(&[&[1, 1], &[1, 2]]).unwrap();
        assert_eq!(a.charpoly(), ints(&[1, -3, 1]));
        assert_eq!(minor_sums(&a), ints(&[1, 3, 1]));
    }

    #[test]
    fn charpoly_complete_two() {
        let a = M::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 3]]).unwrap();
        assert_eq!(a.charpoly(), ints(&[-1, 5, -5, 1]));
    }

    #[test]
    fn inverse_rational() {
        let a = M::from_i64_rows(&[&[1, 1], &[1, 2]]).unwrap();
        let inv = a.inverse().unwrap();
        let expected = M::from_i64_rows(&[&[2, -1], &[-1, 1]]).unwrap().map(|v| BigRational::from_integer(v.clone()));
        assert_eq!(inv, expected);
        assert_eq!(M::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap().inverse(), Err(Error::Singular));
        let half = M::from_i64_rows(&[&[2]]).unwrap().inverse().unwrap();
        assert_eq!(*half.get(0, 0), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn adjugate_matches_inverse_times_det() {
        let a = M::from_i64_rows(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]).unwrap();
        let adj = adjugate(&a);
        let prod = a.mat_mul(&adj).unwrap();
        assert_eq!(prod, M::identity(3).scale(&a.det()));
    }

    #[test]
    fn laurent_inverse_and_det() {
        let t = Laurent::t();
        // [[-t]] has inverse [[-1/t]]
        let a = Matrix::from_rows(vec![vec![-t.clone()]]).unwrap();
        assert_eq!(*a.inverse().unwrap().get(0, 0), Laurent::monomial(-1, -1));
        let b = Matrix::from_rows(vec![
            vec![Laurent::monomial(1, -1), Laurent::one()],
            vec![Laurent::zero(), t.clone()],
        ])
        .unwrap();
        assert_eq!(b.det(), Laurent::one());
        assert_eq!(det_division_free(&b), Laurent::one());
        let c = Matrix::from_rows(vec![vec![Laurent::constant(2)]]).unwrap();
        assert!(matches!(c.inverse(), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn bipoly_determinant() {
        let t = BiPoly::var_t();
        let h = BiPoly::var_h();
        let a = Matrix::from_rows(vec![vec![BiPoly::one(), t.clone()], vec![BiPoly::one(), h.clone() * t.clone() + t.clone()]]).unwrap();
        assert_eq!(a.det(), h * t);
    }

    #[test]
    fn ranks() {
        assert_eq!(M::identity(5).rank(), 5);
        assert_eq!(M::zeros(4).rank(), 0);
        let a = M::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(rank_bareiss(&a.rows()), 2);
        let r = Matrix::<BigRational>::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())],
            vec![BigRational::new(3.into(), 2.into()), BigRational::from_integer(1.into())],
        ])
        .unwrap();
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn modular_rank_can_drop_at_a_dividing_prime() {
        // det = 6: full rank over Q, rank 1 mod 2 and mod 3
        let rows = vec![ints(&[2, 0]), ints(&[0, 3])];
        assert_eq!(rank_mod_p(&rows, 2), 1);
        assert_eq!(rank_mod_p(&rows, 3), 1);
        assert_eq!(rank_bareiss(&rows), 2);
    }
}
