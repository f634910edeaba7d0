//! `GF(p^k)` as polynomials over `Z_p` modulo a fixed irreducible polynomial.
//!
//! An element with coefficients `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` has index
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, so `GF(p)` indexes like `Z(p)`.
//! The modulus is the monic irreducible polynomial of degree `k` whose lower
//! coefficients have the smallest index in that same encoding, which is the
//! lexicographically smallest when compared from the top coefficient down.

use super::numth;

/// Fields up to this order get full addition and multiplication tables.
const TABLE_LIMIT: usize = 256;

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: usize,
    k: usize,
    q: usize,
    /// Monic modulus, `modulus[i]` is the coefficient of `x^i`, length `k + 1`.
    modulus: Vec<usize>,
    tables: Option<(Vec<u32>, Vec<u32>)>,
}

impl GaloisField {
    /// Panics if `q` is not a prime power; callers validate specs first.
    pub fn new(q: usize) -> Self {
        let (p, k) = numth::prime_power(q as u64).expect("field order must be a prime power");
        let (p, k) = (p as usize, k as usize);
        let modulus = smallest_irreducible(p, k);
        let mut field = GaloisField { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = field.add_slow(a, b) as u32;
                    mul[a * q + b] = field.mul_slow(a, b) as u32;
                }
            }
            field.tables = Some((add, mul));
        }
        field
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some((add, _)) => add[a * self.q + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some((_, mul)) => mul[a * self.q + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        let c = self.coeffs(a);
        self.encode(c.iter().map(|&x| (self.p - x) % self.p))
    }

    fn coeffs(&self, mut a: usize) -> Vec<usize> {
        let mut c = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            c.push(a % self.p);
            a /= self.p;
        }
        c
    }

    fn encode(&self, coeffs: impl DoubleEndedIterator<Item = usize>) -> usize {
        coeffs.rev().fold(0, |acc, c| acc * self.p + c)
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        self.encode(ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p))
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let p = self.p;
        let mut prod = vec![0usize; 2 * self.k];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        reduce(&mut prod, &self.modulus, p);
        self.encode(prod[..self.k].iter().copied())
    }
}

/// Reduces `poly` in place modulo a monic `modulus` over `Z_p`.
fn reduce(poly: &mut [usize], modulus: &[usize], p: usize) {
    let k = modulus.len() - 1;
    for top in (k..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let at = top - k + i;
            poly[at] = (poly[at] + (p - c) * m) % p;
        }
    }
}

/// Whether the monic polynomial `f` (coefficients low to high) is irreducible over `Z_p`.
fn is_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            let mut rem = f.to_vec();
            reduce(&mut rem, &g, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0, 1];
    }
    (0..p.pow(k as u32))
        .map(|low| {
            let mut f = Vec::with_capacity(k + 1);
            let mut x = low;
            for _ in 0..k {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}
