//! Small finite fields GF(q^n) via log tables.
//!
//! An element `sum c_i x^i` is encoded as the integer `sum c_i q^i`, which is
//! also its index in `elementary_abelian(q, n)`.

pub struct Gf {
    q: u64,
    n: u32,
    size: u64,
    /// low coefficients `c_0..c_{n-1}` of the monic modulus
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf {
    /// Uses the primitive modulus whose low coefficients, read as a base-q
    /// integer, are least.
    pub fn new(q: u64, n: u32) -> Gf {
        assert!(n >= 1 && q >= 2);
        let size = q.pow(n);
        for enc in 1..size {
            let modulus = digits(enc, q, n);
            if modulus[0] == 0 {
                continue;
            }
            let mut f = Gf {
                q,
                n,
                size,
                modulus,
                exp: Vec::new(),
                log: Vec::new(),
            };
            if let Some(exp) = f.powers_of_x() {
                let mut log = vec![u32::MAX; size as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                f.exp = exp;
                f.log = log;
                return f;
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    fn times_x(&self, a: u64) -> u64 {
        let d = digits(a, self.q, self.n);
        let top = d[self.n as usize - 1];
        let mut out = vec![0u64; self.n as usize];
        for i in (1..self.n as usize).rev() {
            out[i] = d[i - 1];
        }
        for (slot, &c) in out.iter_mut().zip(&self.modulus) {
            *slot = (*slot + (self.q - c) * top) % self.q;
        }
        undigits(&out, self.q)
    }

    /// `x^0, x^1, ...` if `x` has order `size - 1`.
    fn powers_of_x(&self) -> Option<Vec<u32>> {
        let x = if self.n == 1 { self.times_x(1) } else { self.q };
        let mut out = vec![1u32];
        let mut cur = x;
        while cur != 1 {
            if cur == 0 || out.len() as u64 >= self.size - 1 {
                return None;
            }
            out.push(cur as u32);
            cur = self.times_x(cur);
        }
        (out.len() as u64 == self.size - 1).then_some(out)
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// The primitive element `x`.
    pub fn primitive(&self) -> u64 {
        self.exp[1 % self.exp.len()] as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (digits(a, self.q, self.n), digits(b, self.q, self.n));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.q).collect();
        undigits(&s, self.q)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.size - 1;
        let l = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % m;
        self.exp[l as usize] as u64
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let m = self.size - 1;
        self.exp[((self.log[a as usize] as u64 * (k % m)) % m) as usize] as u64
    }
}

fn digits(mut a: u64, q: u64, n: u32) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = a % q;
            a /= q;
            d
        })
        .collect()
}

fn undigits(d: &[u64], q: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * q + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (q, n) in [(2, 1), (3, 1), (2, 3), (3, 2), (5, 2), (7, 2), (2, 5)] {
            let f = Gf::new(q, n);
            let s = f.size();
            for a in 0..s {
                for b in 0..s.min(40) {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..s.min(7) {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "GF({q}^{n})"
                        );
                    }
                }
            }
            // the primitive element generates the unit group
            let g = f.primitive();
            let mut seen = std::collections::HashSet::new();
            for k in 0..s - 1 {
                seen.insert(f.pow(g, k));
            }
            assert_eq!(seen.len() as u64, s - 1);
        }
    }

    #[test]
    fn gf8_uses_x3_plus_x_plus_1() {
        let f = Gf::new(2, 3);
        // x^3 = x + 1
        assert_eq!(f.pow(2, 3), 0b011);
    }
}
