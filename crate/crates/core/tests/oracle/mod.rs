//! Reference computations written straight from the definitions, sharing no
//! code with the library beyond the input types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Mat = Vec<Vec<Q>>;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qmat(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

pub fn set(c: &[u32]) -> BTreeSet<u32> {
    c.iter().copied().collect()
}

/// `(-1)^(|x|-1)`
pub fn omega(c: &[u32]) -> i64 {
    if c.len() % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `L⁻⁻(x,y) = Σ_{z ⊆ x∩y} h(z)` by direct enumeration.
pub fn lmm(cells: &[Vec<u32>], h: &[Q]) -> Mat {
    let sets: Vec<BTreeSet<u32>> = cells.iter().map(|c| set(c)).collect();
    let n = sets.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let meet: BTreeSet<u32> = sets[i].intersection(&sets[j]).copied().collect();
                    (0..n).filter(|&k| sets[k].is_subset(&meet)).fold(Q::zero(), |a, k| a + &h[k])
                })
                .collect()
        })
        .collect()
}

/// `L⁺⁺(x,y) = Σ_{z ⊇ x∪y} h(z)`.
pub fn lpp(cells: &[Vec<u32>], h: &[Q]) -> Mat {
    let sets: Vec<BTreeSet<u32>> = cells.iter().map(|c| set(c)).collect();
    let n = sets.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let join: BTreeSet<u32> = sets[i].union(&sets[j]).copied().collect();
                    (0..n).filter(|&k| join.is_subset(&sets[k])).fold(Q::zero(), |a, k| a + &h[k])
                })
                .collect()
        })
        .collect()
}

/// `S L⁺⁺ S`.
pub fn green(cells: &[Vec<u32>], h: &[Q]) -> Mat {
    let p = lpp(cells, h);
    p.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, v)| v * q(omega(&cells[i]) * omega(&cells[j]))).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).fold(Q::zero(), |s, k| s + &a[i][k] * &b[k][j])).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    (0..n * m).map(|r| (0..n * m).map(|c| &a[r / m][c / m] * &b[r % m][c % m]).collect()).collect()
}

pub fn total(a: &Mat) -> Q {
    a.iter().flatten().fold(Q::zero(), |s, v| s + v)
}

/// Gaussian elimination with row swaps over the rationals.
pub fn det(a: &Mat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    d
}

pub fn principal(a: &Mat, idx: &[usize]) -> Mat {
    idx.iter().map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect()).collect()
}

/// Faddeev–LeVerrier: coefficients of `det(λ - A)`, leading 1 first.
pub fn charpoly_monic(a: &Mat) -> Vec<Q> {
    let n = a.len();
    let mut c = vec![Q::one()];
    let mut mk = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = matmul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[k - 1];
        }
        mk = next;
        let am = matmul(a, &mk);
        let tr = (0..n).fold(Q::zero(), |s, i| s + &am[i][i]);
        c.push(-tr / q(k as i64));
    }
    c
}

/// Coefficients of `det(A - λ)`, highest power first.
pub fn charpoly(a: &Mat) -> Vec<Q> {
    let sign = if a.len() % 2 == 0 { Q::one() } else { -Q::one() };
    charpoly_monic(a).into_iter().map(|v| v * &sign).collect()
}

/// Inertia `(negative, zero, positive)` of a symmetric matrix from sign
/// changes of its characteristic polynomial (exact for real-rooted polynomials).
pub fn inertia(a: &Mat) -> (usize, usize, usize) {
    let c = charpoly_monic(a);
    let n = a.len();
    let zero = c.iter().rev().take_while(|v| v.is_zero()).count();
    let changes = |v: &[Q]| {
        let signs: Vec<bool> = v.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = changes(&c);
    let flipped: Vec<Q> = c.iter().enumerate().map(|(k, v)| if (n - k) % 2 == 1 { -v } else { v.clone() }).collect();
    let neg = changes(&flipped);
    (neg, zero, pos)
}

/// Leading principal minors `D_1..D_n` from one elimination without pivoting;
/// `None` when some `D_k` vanishes.
pub fn leading_minors(a: &Mat) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m = a.clone();
    let mut out = Vec::with_capacity(n);
    let mut d = Q::one();
    for c in 0..n {
        if m[c][c].is_zero() {
            return None;
        }
        d *= &m[c][c];
        out.push(d.clone());
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    Some(out)
}

/// Inertia by Jacobi's rule: negative eigenvalues are the sign changes in
/// `1, D_1, ..., D_n`. Falls back to [`inertia`] when a minor vanishes.
pub fn inertia_jacobi(a: &Mat) -> (usize, usize, usize) {
    let Some(d) = leading_minors(a) else {
        return inertia(a);
    };
    let mut prev = true;
    let mut neg = 0;
    for v in &d {
        let pos = v.is_positive();
        neg += usize::from(pos != prev);
        prev = pos;
    }
    (neg, 0, a.len() - neg)
}

/// Sylvester: every leading principal minor positive.
pub fn positive_definite(a: &Mat) -> bool {
    leading_minors(a).is_some_and(|d| d.iter().all(Signed::is_positive))
}

/// Rank over `Z/p` for integer matrices.
pub fn rank_mod_p(a: &[Vec<i64>], p: i64) -> usize {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut x: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as i128 * b as i128) % p as i128) as i64;
            }
            b = ((b as i128 * b as i128) % p as i128) as i64;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..m {
        let Some(piv) = (rank..n).find(|&r| x[r][c] != 0) else {
            continue;
        };
        x.swap(piv, rank);
        let inv = pow(x[rank][c], p - 2);
        for r in 0..n {
            if r != rank && x[r][c] != 0 {
                let f = (x[r][c] as i128 * inv as i128 % p as i128) as i64;
                for k in c..m {
                    x[r][k] = ((x[r][k] as i128 - f as i128 * x[rank][k] as i128).rem_euclid(p as i128)) as i64;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Sum of the `k × k` principal minors for `k = 0..=n`.
pub fn minor_sums(a: &Mat) -> Vec<Q> {
    let n = a.len();
    let mut e = vec![Q::zero(); n + 1];
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        e[idx.len()] += det(&principal(a, &idx));
    }
    e
}
