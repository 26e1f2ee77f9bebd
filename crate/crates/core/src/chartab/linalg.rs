//! Dense linear algebra over a prime field `F_p`, `p < 2^32`.

use crate::arith::inv_mod;

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

/// Row-reduces in place and returns the pivot columns; zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = f * rows[r][j] % p;
                    rows[i][j] = sub_mod(rows[i][j], t, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for a square or rectangular `A` (given by rows).
pub fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(x I - A)`, ascending coefficients, via
/// reduction to upper Hessenberg form.
pub fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p).unwrap();
        for i in m + 1..n {
            let u = h[i][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = u * h[m][j] % p;
                h[i][j] = sub_mod(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = u * row[i] % p;
                row[m] = (row[m] + t) % p;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (h_{i+1,i} ... h_{m,m-1}) p_{i-1}, 1-based
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (j, &c) in prev.iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % p;
            next[j] = sub_mod(next[j], h[m - 1][m - 1] * c % p, p);
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = t * h[i][i - 1] % p;
            let coef = h[i - 1][m - 1] * t % p;
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i - 1].iter().enumerate() {
                next[j] = sub_mod(next[j], coef * c % p, p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion_like_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3: x^2 - 4x + 3
        let p = 101;
        let cp = charpoly(&[vec![2, 1], vec![1, 2]], p);
        assert_eq!(cp, vec![3, p - 4, 1]);
        let a = vec![vec![0, 1, 0], vec![0, 0, 1], vec![6, p - 11, 6]];
        // companion of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        assert_eq!(charpoly(&a, p), vec![p - 6, 11, p - 6, 1]);
        for r in [1, 2, 3] {
            assert_eq!(eval_poly(&charpoly(&a, p), r, p), 0);
        }
    }

    #[test]
    fn nullspace_dimension() {
        let p = 7;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&a, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: u64 = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert_eq!(s % p, 0);
        }
    }
}
