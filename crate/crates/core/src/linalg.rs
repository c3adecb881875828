//! Small exact linear algebra used by the hull and cell routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::types::{Rat, RatVec};

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut [RatVec], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v /= &lead;
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{g : M g = 0}` for an `r × ncols` matrix.
pub(crate) fn nullspace(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut g = vec![Rat::zero(); ncols];
            g[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                g[pc] = -m[r][f].clone();
            }
            g
        })
        .collect()
}

#[cfg(test)]
fn rank(rows: &[RatVec], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction.
pub(crate) fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    make_primitive(ints)
}

/// Divides out the gcd of the entries (no-op on the zero vector).
pub(crate) fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Bareiss determinant with checked `i128` arithmetic; `None` on overflow.
pub(crate) fn det_i128(m: &mut [Vec<i128>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

/// A vector orthogonal to each of the `n − 1` given vectors in `Z^n`
/// (signed maximal minors); zero iff they are linearly dependent.
pub(crate) fn cross_product(vectors: &[Vec<BigInt>], n: usize) -> Vec<BigInt> {
    debug_assert_eq!(vectors.len() + 1, n);
    if let Some(small) = cross_product_small(vectors, n) {
        return small;
    }
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det_big(minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn cross_product_small(vectors: &[Vec<BigInt>], n: usize) -> Option<Vec<BigInt>> {
    let rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect::<Option<_>>()?;
    (0..n)
        .map(|skip| {
            let mut minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det_i128(&mut minor)?;
            Some(BigInt::from(if skip % 2 == 0 { d } else { -d }))
        })
        .collect()
}

/// Calls `f` on every `k`-subset of `0..m` in lexicographic order.
pub(crate) fn for_each_combination(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Solution of the square integer system `M x = r`, or `None` when singular.
/// Uses Cramer's rule over `i128` and falls back to `BigInt` on overflow.
pub(crate) fn solve_integer_square(m: &[Vec<BigInt>], r: &[BigInt]) -> Option<RatVec> {
    if let Some(res) = solve_small(m, r) {
        return res;
    }
    let d = det_big(m.to_vec());
    if d.is_zero() {
        return None;
    }
    let n = m.len();
    Some(
        (0..n)
            .map(|col| {
                let replaced: Vec<Vec<BigInt>> = m
                    .iter()
                    .zip(r)
                    .map(|(row, ri)| {
                        let mut row = row.clone();
                        row[col] = ri.clone();
                        row
                    })
                    .collect();
                Rat::new(det_big(replaced), d.clone())
            })
            .collect(),
    )
}

/// Outer `None`: overflow; inner `None`: singular.
fn solve_small(m: &[Vec<BigInt>], r: &[BigInt]) -> Option<Option<RatVec>> {
    let to_small = |v: &BigInt| v.to_i64().map(i128::from);
    let base: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(to_small).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let rhs: Vec<i128> = r.iter().map(to_small).collect::<Option<_>>()?;
    let d = det_i128(&mut base.clone())?;
    if d == 0 {
        return Some(None);
    }
    let n = base.len();
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        let mut mm = base.clone();
        for (row, ri) in mm.iter_mut().zip(&rhs) {
            row[col] = *ri;
        }
        let num = det_i128(&mut mm)?;
        out.push(Rat::new(BigInt::from(num), BigInt::from(d)));
    }
    Some(Some(out))
}

pub(crate) fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn rat_int_dot(a: &[BigInt], x: &[Rat]) -> Rat {
    a.iter()
        .zip(x)
        .fold(Rat::zero(), |acc, (ai, xi)| acc + xi * ai)
}

pub(crate) fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub(crate) fn negate(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{rat, rat_int};

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn determinants_agree() {
        let m = big(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // cofactor expansion: 2(-6-20) + 1(-2-0) = -54
        assert_eq!(det_big(m.clone()), BigInt::from(-54));
        let mut small: Vec<Vec<i128>> = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        assert_eq!(det_i128(&mut small), Some(-54));
        assert_eq!(det_big(big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_big(big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let vs = big(&[&[1, 0, 2], &[0, 1, -1]]);
        let h = cross_product(&vs, 3);
        for v in &vs {
            assert!(int_dot(&h, v).is_zero());
        }
        assert!(!is_zero_vec(&h));
        let dependent = big(&[&[1, 1, 1], &[2, 2, 2]]);
        assert!(is_zero_vec(&cross_product(&dependent, 3)));
    }

    #[test]
    fn nullspace_and_rank() {
        let rows = vec![
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(2), rat_int(2), rat_int(0)],
        ];
        assert_eq!(rank(&rows, 3), 1);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for g in &ns {
            assert!((&g[0] + &g[1]).is_zero());
        }
        assert_eq!(
            primitive_integer(&[rat(1, 2), rat(-3, 4)]),
            vec![BigInt::from(2), BigInt::from(-3)]
        );
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_combination(3, 0, |_| count += 1);
        assert_eq!(count, 1);
        for_each_combination(2, 3, |_| panic!("no 3-subsets of a 2-set"));
    }

    #[test]
    fn square_solve_small_and_big() {
        let m = big(&[&[2, 1], &[1, -1]]);
        let r = vec![BigInt::from(3), BigInt::from(0)];
        assert_eq!(solve_integer_square(&m, &r).unwrap(), vec![rat_int(1), rat_int(1)]);
        assert!(solve_integer_square(&big(&[&[1, 2], &[2, 4]]), &r).is_none());

        let huge = BigInt::from(10).pow(30);
        let m = vec![
            vec![huge.clone(), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
        ];
        let r = vec![huge.clone(), BigInt::from(1)];
        assert_eq!(solve_integer_square(&m, &r).unwrap(), vec![rat_int(1), rat(1, 2)]);
    }
}
