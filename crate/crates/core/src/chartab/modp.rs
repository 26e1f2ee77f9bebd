//! Class constants and the mod-p stage of Dixon–Schneider.

use crate::arith::{inv_mod, is_prime, isqrt, mul_mod};
use crate::group::Group;
use crate::structure::ConjugacyClasses;

use super::linalg::{charpoly, eval_poly, nullspace, rref};

/// `a[i][j][t] = #{x in C_i : x^-1 z_t in C_j}` for the representative `z_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConstants {
    k: usize,
    data: Vec<u32>,
}

impl ClassConstants {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize, t: usize) -> u32 {
        self.data[(i * self.k + j) * self.k + t]
    }
}

pub fn class_constants(g: &Group, cc: &ConjugacyClasses) -> ClassConstants {
    let k = cc.k();
    let mut data = vec![0u32; k * k * k];
    for (t, &z) in cc.reps().iter().enumerate() {
        for i in 0..k {
            for &x in cc.members(i) {
                let j = cc.class_of(g.mul(g.inv(x), z));
                data[(i * k + j) * k + t] += 1;
            }
        }
    }
    ClassConstants { k, data }
}

/// Least prime `p = 1 (mod e)` with `p > 2 * ceil(sqrt(n))`.
pub fn split_prime(e: u64, n: u64) -> u64 {
    next_split_prime(e, n, 0)
}

/// The next admissible prime after `after`.
pub fn next_split_prime(e: u64, n: u64, after: u64) -> u64 {
    let mut root = isqrt(n);
    if root * root < n {
        root += 1;
    }
    let floor = (2 * root).max(after);
    // least p = 1 mod e above floor
    let mut p = floor + 1;
    let r = (p + e - 1) % e;
    if r != 0 {
        p += e - r;
    }
    while !is_prime(p) {
        p += e;
    }
    p
}

/// Characters mod p: `values[chi][t] = chi(z_t) mod p`, plus degrees.
#[derive(Clone, Debug)]
pub struct ModpTable {
    pub p: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<u64>>,
}

/// Simultaneous eigenvectors of the class matrices `M_i = (a[i][j][t])_{j,t}`.
///
/// Each is the central character `omega_t = |C_t| chi(z_t) / chi(1)` mod p.
pub fn modp_table(
    cc: &ConjugacyClasses,
    consts: &ClassConstants,
    n: u64,
    p: u64,
) -> Result<ModpTable, String> {
    let k = cc.k();
    let sizes = cc.sizes();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|r| (0..k).map(|c| (r == c) as u64).collect())
        .collect()];
    for i in 0..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = (0..k)
            .map(|j| (0..k).map(|t| consts.get(i, j, t) as u64 % p).collect())
            .collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(&m, space, p)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err("class matrices do not separate the characters".into());
    }
    let mut degrees = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    let inv_sizes: Vec<u64> = sizes.iter().map(|&s| inv_mod(s % p, p).unwrap()).collect();
    for space in spaces {
        let v = &space[0];
        let Some(scale) = inv_mod(v[0], p) else {
            return Err("eigenvector vanishes at the identity class".into());
        };
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, scale, p)).collect();
        // sum_t omega_t omega_{t*} / |C_t| = |G| / chi(1)^2
        let s = (0..k).fold(0, |acc, t| {
            let term = mul_mod(
                mul_mod(omega[t], omega[cc.inverse_class(t)], p),
                inv_sizes[t],
                p,
            );
            (acc + term) % p
        });
        let Some(s_inv) = inv_mod(s, p) else {
            return Err("degree relation is singular".into());
        };
        let target = mul_mod(n % p, s_inv, p);
        let d = (1..=isqrt(n))
            .filter(|d| n % d == 0)
            .find(|&d| mul_mod(d, d, p) == target)
            .ok_or_else(|| "no degree fits the degree relation".to_string())?;
        values.push(
            (0..k)
                .map(|t| mul_mod(mul_mod(omega[t], d % p, p), inv_sizes[t], p))
                .collect(),
        );
        degrees.push(d);
    }
    Ok(ModpTable { p, degrees, values })
}

/// Splits an invariant subspace (RREF basis rows) into eigenspaces of `m`.
fn split(m: &[Vec<u64>], basis: Vec<Vec<u64>>, p: u64) -> Result<Vec<Vec<Vec<u64>>>, String> {
    let d = basis.len();
    let k = m.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    // restricted[s][r] = coordinate s of M b_r
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|j| (0..k).fold(0, |acc, t| (acc + m[j][t] * b[t]) % p))
                .collect()
        })
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|s| (0..d).map(|r| images[r][pivots[s]]).collect())
        .collect();
    let cp = charpoly(&restricted, p);
    let mut roots = Vec::new();
    let mut remaining = d;
    for lambda in 0..p {
        if remaining == 0 {
            break;
        }
        if eval_poly(&cp, lambda, p) == 0 {
            roots.push(lambda);
            remaining -= 1;
        }
    }
    if roots.len() == 1 {
        return Ok(vec![basis]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|s| {
                (0..d)
                    .map(|r| {
                        let diag = if r == s { lambda } else { 0 };
                        (restricted[s][r] + p - diag) % p
                    })
                    .collect()
            })
            .collect();
        let coords = nullspace(&shifted, p);
        let mut vecs: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                (0..k)
                    .map(|t| (0..d).fold(0, |acc, s| (acc + c[s] * basis[s][t]) % p))
                    .collect()
            })
            .collect();
        rref(&mut vecs, p);
        total += vecs.len();
        out.push(vecs);
    }
    if total != d {
        return Err("class matrix is not diagonalizable modulo p".into());
    }
    Ok(out)
}
