//! Group families, bundled generator data, the sporadic-order catalog and the
//! builtin corpus.

pub mod corpus;
pub mod data;
pub mod gf;

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, SpecKind};
use gf::Gf;

/// Largest order accepted by the table-backed families.
const TABLE_FAMILY_LIMIT: u64 = 65_536;

/// Families that can be realized.
pub const FAMILIES: &[&str] = &[
    "cyclic",
    "abelian",
    "elementary_abelian",
    "dihedral",
    "symmetric",
    "extraspecial",
    "modular_maximal_cyclic",
    "affine_frobenius",
    "v_rtimes_q8",
    "suzuki_frobenius",
    "alternating5",
    "psl27",
    "sz8",
];

/// Names known only by order.
pub const CATALOG_ONLY: &[&str] = &["J2", "J3", "M22", "Ru", "Th", "3D4(2)", "A5xTh"];

pub fn cyclic(n: i64) -> GroupSpec {
    GroupSpec::family("cyclic", &[n])
}

pub fn abelian(ds: &[i64]) -> GroupSpec {
    GroupSpec::family("abelian", ds)
}

pub fn elementary_abelian(q: i64, n: i64) -> GroupSpec {
    GroupSpec::family("elementary_abelian", &[q, n])
}

pub fn dihedral(m: i64) -> GroupSpec {
    GroupSpec::family("dihedral", &[m])
}

pub fn symmetric(n: i64) -> GroupSpec {
    GroupSpec::family("symmetric", &[n])
}

/// `minus` selects the minus type for p = 2 and exponent p^2 for odd p.
pub fn extraspecial(p: i64, n: i64, minus: bool) -> GroupSpec {
    GroupSpec::family("extraspecial", &[p, n, minus as i64])
}

pub fn modular_maximal_cyclic(p: i64, n: i64) -> GroupSpec {
    GroupSpec::family("modular_maximal_cyclic", &[p, n])
}

pub fn affine_frobenius(q: i64, n: i64, d: i64) -> GroupSpec {
    GroupSpec::family("affine_frobenius", &[q, n, d])
}

pub fn v_rtimes_q8(q: i64) -> GroupSpec {
    GroupSpec::family("v_rtimes_q8", &[q])
}

pub fn suzuki_frobenius(n: i64) -> GroupSpec {
    GroupSpec::family("suzuki_frobenius", &[n])
}

pub fn alternating5() -> GroupSpec {
    GroupSpec::family("alternating5", &[])
}

pub fn psl27() -> GroupSpec {
    GroupSpec::family("psl27", &[])
}

pub fn sz8() -> GroupSpec {
    GroupSpec::family("sz8", &[])
}

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        family: family.to_string(),
        reason: reason.into(),
    }
}

fn arity(name: &str, params: &[i64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(invalid(
            name,
            format!("expected {n} parameters, got {}", params.len()),
        ));
    }
    Ok(())
}

fn prime(name: &str, p: i64) -> Result<u64> {
    if p < 2 || !is_prime(p as u64) {
        return Err(invalid(name, format!("{p} is not a prime")));
    }
    Ok(p as u64)
}

fn checked_pow(name: &str, q: u64, n: i64) -> Result<u64> {
    if n < 1 {
        return Err(invalid(name, "exponent must be at least 1"));
    }
    let v = (q as u128)
        .checked_pow(n as u32)
        .filter(|&v| v <= TABLE_FAMILY_LIMIT as u128);
    v.map(|v| v as u64)
        .ok_or_else(|| invalid(name, format!("{q}^{n} exceeds {TABLE_FAMILY_LIMIT}")))
}

/// Checks a family name and its parameters without building anything.
pub fn validate_family(name: &str, params: &[i64]) -> Result<()> {
    match name {
        "cyclic" => {
            arity(name, params, 1)?;
            if !(1..=TABLE_FAMILY_LIMIT as i64).contains(&params[0]) {
                return Err(invalid(name, "order must be in 1..=65536"));
            }
        }
        "abelian" => {
            if params.is_empty() {
                return Err(invalid(name, "at least one cyclic factor is required"));
            }
            let mut n: u64 = 1;
            for &d in params {
                if d < 1 {
                    return Err(invalid(name, "factor orders must be positive"));
                }
                n = n.saturating_mul(d as u64);
            }
            if n > TABLE_FAMILY_LIMIT {
                return Err(invalid(name, "order exceeds 65536"));
            }
        }
        "elementary_abelian" => {
            arity(name, params, 2)?;
            let q = prime(name, params[0])?;
            checked_pow(name, q, params[1])?;
        }
        "dihedral" => {
            arity(name, params, 1)?;
            if !(1..=TABLE_FAMILY_LIMIT as i64 / 2).contains(&params[0]) {
                return Err(invalid(name, "rotation order must be in 1..=32768"));
            }
        }
        "symmetric" => {
            arity(name, params, 1)?;
            if !(1..=8).contains(&params[0]) {
                return Err(invalid(name, "degree must be in 1..=8"));
            }
        }
        "extraspecial" => {
            arity(name, params, 3)?;
            let p = prime(name, params[0])?;
            if params[1] < 1 {
                return Err(invalid(name, "n must be at least 1"));
            }
            checked_pow(name, p, 1 + 2 * params[1])?;
            if !(0..=1).contains(&params[2]) {
                return Err(invalid(
                    name,
                    "variant must be 0 (plus / exp-p) or 1 (minus / exp-p2)",
                ));
            }
        }
        "modular_maximal_cyclic" => {
            arity(name, params, 2)?;
            let p = prime(name, params[0])?;
            let min = if p == 2 { 4 } else { 3 };
            if params[1] < min {
                return Err(invalid(
                    name,
                    format!("n must be at least {min} for p = {p}"),
                ));
            }
            checked_pow(name, p, params[1])?;
        }
        "affine_frobenius" => {
            arity(name, params, 3)?;
            let q = prime(name, params[0])?;
            let size = checked_pow(name, q, params[1])?;
            let d = params[2];
            if d < 1 || (size - 1) % d as u64 != 0 {
                return Err(invalid(
                    name,
                    format!("d = {d} does not divide {}", size - 1),
                ));
            }
        }
        "v_rtimes_q8" => {
            arity(name, params, 1)?;
            if params[0] != 3 && params[0] != 7 {
                return Err(invalid(name, "q must be 3 or 7"));
            }
        }
        "suzuki_frobenius" => {
            arity(name, params, 1)?;
            let n = params[0];
            if n < 3 || n % 2 == 0 {
                return Err(invalid(name, "n must be odd and at least 3"));
            }
            if n > 5 {
                return Err(invalid(name, "the kernel table is limited to n <= 5"));
            }
        }
        "alternating5" | "psl27" | "sz8" => arity(name, params, 0)?,
        _ if CATALOG_ONLY.contains(&name) => arity(name, params, 0)?,
        _ => return Err(Error::UnknownFamily(name.to_string())),
    }
    Ok(())
}

/// Reads command-line parameters; extraspecial variants may also be given as
/// `+`, `-`, `plus`, `minus`, `exp-p` or `exp-p2`.
pub fn parse_family_params(name: &str, raw: &[String]) -> Result<Vec<i64>> {
    let params = raw
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if name == "extraspecial" && i == 2 {
                match s.as_str() {
                    "+" | "plus" | "exp-p" => return Ok(0),
                    "-" | "minus" | "exp-p2" => return Ok(1),
                    _ => {}
                }
            }
            s.parse::<i64>()
                .map_err(|_| invalid(name, format!("`{s}` is not an integer")))
        })
        .collect::<Result<Vec<i64>>>()?;
    validate_family(name, &params)?;
    Ok(params)
}

/// Rewrites a family spec into constructive kinds (which may nest families).
pub fn expand_family(name: &str, params: &[i64]) -> Result<GroupSpec> {
    validate_family(name, params)?;
    if CATALOG_ONLY.contains(&name) {
        return Err(Error::CatalogOnly(name.to_string()));
    }
    let table = |t: Vec<Vec<u32>>| GroupSpec::new(SpecKind::MultTable { table: t });
    let semidirect = |kernel: GroupSpec, actor: GroupSpec, action: Vec<Vec<u32>>| {
        GroupSpec::new(SpecKind::Semidirect {
            kernel: Box::new(kernel),
            actor: Box::new(actor),
            action,
        })
    };
    let perms = |degree: usize, generators: Vec<Vec<u32>>| {
        GroupSpec::new(SpecKind::PermGens { degree, generators })
    };
    let p = |i: usize| params[i] as u64;
    Ok(match name {
        "cyclic" => table(abelian_table(&[p(0)])),
        "abelian" => table(abelian_table(
            &params.iter().map(|&d| d as u64).collect::<Vec<_>>(),
        )),
        "elementary_abelian" => table(abelian_table(&vec![p(0); params[1] as usize])),
        "dihedral" => {
            let m = p(0);
            let inversion = (0..m).map(|x| ((m - x) % m) as u32).collect();
            semidirect(cyclic(m as i64), cyclic(2), vec![inversion])
        }
        "symmetric" => {
            let n = p(0) as u32;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push((0..n).map(|i| (i + 1) % n).collect());
                gens.push((0..n).map(|i| if i < 2 { 1 - i } else { i }).collect());
            }
            if gens.is_empty() {
                gens.push(vec![0]);
            }
            perms(n as usize, gens)
        }
        "extraspecial" => table(extraspecial_table(p(0), p(1) as u32, params[2] == 1)),
        "modular_maximal_cyclic" => {
            let (pp, n) = (p(0), p(1) as u32);
            let m = pp.pow(n - 1);
            let k = 1 + pp.pow(n - 2);
            let act = (0..m).map(|x| ((x * k) % m) as u32).collect();
            semidirect(cyclic(m as i64), cyclic(pp as i64), vec![act])
        }
        "affine_frobenius" => {
            let (q, n, d) = (p(0), p(1) as u32, p(2));
            let f = Gf::new(q, n);
            let m = (f.size() - 1) / d;
            let lambda = f.pow(f.primitive(), d);
            let action = if m == 1 {
                Vec::new()
            } else {
                vec![(0..f.size()).map(|v| f.mul(lambda, v) as u32).collect()]
            };
            semidirect(
                elementary_abelian(q as i64, n as i64),
                cyclic(m as i64),
                action,
            )
        }
        "v_rtimes_q8" => {
            let q = p(0);
            let (a, b) = q8_pair(q);
            let neg = |x: u64| (q - x % q) % q;
            let vec_idx = |x0: u64, x1: u64| (x0 % q + q * (x1 % q)) as u32;
            let apply = |m: [[u64; 2]; 2]| -> Vec<u32> {
                (0..q * q)
                    .map(|v| {
                        let (x0, x1) = (v % q, v / q);
                        vec_idx(m[0][0] * x0 + m[0][1] * x1, m[1][0] * x0 + m[1][1] * x1)
                    })
                    .collect()
            };
            let i = apply([[0, neg(1)], [1, 0]]);
            let j = apply([[a, b], [b, neg(a)]]);
            // Perm-gens compose left to right, so the left action uses inverses.
            let inverse = |pm: &Vec<u32>| {
                let mut out = vec![0u32; pm.len()];
                for (x, &y) in pm.iter().enumerate() {
                    out[y as usize] = x as u32;
                }
                out
            };
            let action = vec![inverse(&i), inverse(&j)];
            semidirect(
                elementary_abelian(q as i64, 2),
                perms((q * q) as usize, vec![i, j]),
                action,
            )
        }
        "suzuki_frobenius" => {
            let n = p(0) as u32;
            let f = Gf::new(2, n);
            let s = f.size();
            let lambda = f.primitive();
            let l3 = f.pow(lambda, 3);
            let act = (0..s * s)
                .map(|x| {
                    let (a, b) = (x % s, x / s);
                    (f.mul(lambda, a) + s * f.mul(l3, b)) as u32
                })
                .collect();
            semidirect(
                table(suzuki_kernel_table(&f)),
                cyclic((s - 1) as i64),
                vec![act],
            )
        }
        "alternating5" => perms(5, vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]),
        "psl27" => perms(
            7,
            vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 1, 4, 3, 2, 6, 5]],
        ),
        "sz8" => {
            let b = data::sz8_generators()?;
            perms(b.degree, b.generators)
        }
        _ => unreachable!("validated above"),
    })
}

/// Index of `(c_1, ..., c_r)` is `c_1 + d_1 c_2 + d_1 d_2 c_3 + ...`.
fn abelian_table(ds: &[u64]) -> Vec<Vec<u32>> {
    let n: u64 = ds.iter().product();
    let add = |a: u64, b: u64| {
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0, 1);
        for &d in ds {
            out += ((a % d + b % d) % d) * scale;
            a /= d;
            b /= d;
            scale *= d;
        }
        out as u32
    };
    (0..n)
        .map(|a| (0..n).map(|b| add(a, b)).collect())
        .collect()
}

/// Central extension of `F_p^(2n)` by `C_p` through an explicit 2-cocycle.
///
/// Coordinates `(x_1..x_n, y_1..y_n)`, then the central coordinate `z`.
/// The cocycle is `sum x_i y'_i`; the minus type adds `x_1 x'_1 + y_1 y'_1`
/// (p = 2) and exponent p^2 adds the carry of `x_1 + x'_1` (odd p).
fn extraspecial_table(p: u64, n: u32, variant: bool) -> Vec<Vec<u32>> {
    let dim = 2 * n as usize;
    let pv = p.pow(dim as u32);
    let size = pv * p;
    let coords = |mut v: u64| -> Vec<u64> {
        (0..dim)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let all: Vec<Vec<u64>> = (0..pv).map(coords).collect();
    let cocycle = |a: &[u64], b: &[u64]| -> u64 {
        let n = n as usize;
        let mut s: u64 = (0..n).map(|i| a[i] * b[n + i]).sum();
        if variant {
            if p == 2 {
                s += a[0] * b[0] + a[n] * b[n];
            } else if a[0] + b[0] >= p {
                s += 1;
            }
        }
        s % p
    };
    (0..size)
        .map(|x| {
            let (va, za) = (x % pv, x / pv);
            (0..size)
                .map(|y| {
                    let (vb, zb) = (y % pv, y / pv);
                    let (a, b) = (&all[va as usize], &all[vb as usize]);
                    let v: u64 = a
                        .iter()
                        .zip(b)
                        .rev()
                        .fold(0, |acc, (s, t)| acc * p + (s + t) % p);
                    let z = (za + zb + cocycle(a, b)) % p;
                    (v + pv * z) as u32
                })
                .collect()
        })
        .collect()
}

/// `(a, b)(c, d) = (a + c, b + d + a^2 c)` over GF(2^n), index `a + 2^n b`.
fn suzuki_kernel_table(f: &Gf) -> Vec<Vec<u32>> {
    let s = f.size();
    (0..s * s)
        .map(|x| {
            let (a, b) = (x % s, x / s);
            let a2 = f.mul(a, a);
            (0..s * s)
                .map(|y| {
                    let (c, d) = (y % s, y / s);
                    let top = f.add(f.add(b, d), f.mul(a2, c));
                    (f.add(a, c) + s * top) as u32
                })
                .collect()
        })
        .collect()
}

/// Least `(a, b)` with `a^2 + b^2 = -1 (mod q)`.
fn q8_pair(q: u64) -> (u64, u64) {
    for a in 0..q {
        for b in 0..q {
            if (a * a + b * b + 1) % q == 0 {
                return (a, b);
            }
        }
    }
    unreachable!("every odd prime field has such a pair")
}

/// `gcd(d, n) == 1 && d | q - 1`, the divisibility condition on the affine family.
pub fn affine_b2_condition(q: u64, n: u64, d: u64) -> bool {
    (q - 1) % d == 0 && gcd(d, n) == 1
}
