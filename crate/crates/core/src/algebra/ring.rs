//! Finite rings with a canonical element indexing `0..order`.
//!
//! Elements are encoded positionally: matrix entries row-major (only the
//! upper triangle for `T`), product components in factor order, the first
//! digit most significant. Index 0 is always the additive zero.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::gf::GaloisField;
use super::matrix::{det_entries, MatrixElem};
use super::numth;
use super::spec::RingSpec;
use crate::error::{Error, Result};
use crate::sets::VertexSet;

pub const DEFAULT_ORDER_CAP: usize = 1 << 20;

/// Largest order for which the quadratic quasi-regularity scan is attempted.
pub const BRUTE_RADICAL_CAP: usize = 1 << 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Neg,
    Mul,
}

#[derive(Debug, Clone)]
pub struct Ring {
    spec: Option<RingSpec>,
    label: String,
    order: usize,
    one: usize,
    kind: Kind,
    units: Vec<bool>,
    unit_count: usize,
}

#[derive(Debug, Clone)]
enum Kind {
    Zn(usize),
    Gf(GaloisField),
    Matrix(MatrixRing),
    Product(ProductRing),
    Table(TableRing),
}

#[derive(Debug, Clone)]
struct MatrixRing {
    n: usize,
    base: Box<Ring>,
    triangular: bool,
    /// Stored positions in encoding order.
    positions: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
struct ProductRing {
    factors: Vec<Ring>,
    strides: Vec<usize>,
}

#[derive(Debug, Clone)]
struct TableRing {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// Ring metadata as dumped by the `ring` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMetadata {
    pub spec: String,
    pub order: usize,
    pub unit_count: usize,
    pub radical_size: Option<usize>,
}

/// A quotient ring together with the natural projection `R -> R/I`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ring: Ring,
    pub projection: Vec<usize>,
}

impl Quotient {
    /// Full preimage of a set of quotient elements.
    pub fn preimage(&self, set: &VertexSet) -> VertexSet {
        self.projection
            .iter()
            .enumerate()
            .filter(|(_, c)| set.contains(**c))
            .map(|(x, _)| x)
            .collect()
    }

    pub fn image(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|x| self.projection[x]).collect()
    }
}

impl Ring {
    pub fn new(spec: &RingSpec) -> Result<Ring> {
        Self::with_cap(spec, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(spec: &RingSpec, cap: usize) -> Result<Ring> {
        spec.validate()?;
        let order = spec.order().unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::OrderCap { order, cap });
        }
        Ok(Self::build(spec))
    }

    pub fn parse(text: &str) -> Result<Ring> {
        Self::new(&super::spec::parse_spec(text)?)
    }

    fn build(spec: &RingSpec) -> Ring {
        let kind = match spec {
            RingSpec::Z(m) => Kind::Zn(*m as usize),
            RingSpec::GF(q) => Kind::Gf(GaloisField::new(*q as usize)),
            RingSpec::M(n, base) | RingSpec::T(n, base) => {
                let triangular = matches!(spec, RingSpec::T(..));
                let positions = (0..*n)
                    .flat_map(|i| (0..*n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !triangular || j >= i)
                    .collect();
                Kind::Matrix(MatrixRing {
                    n: *n,
                    base: Box::new(Self::build(base)),
                    triangular,
                    positions,
                })
            }
            RingSpec::Prod(fs) => {
                let factors: Vec<Ring> = fs.iter().map(Self::build).collect();
                let mut strides = vec![1; factors.len()];
                for i in (0..factors.len().saturating_sub(1)).rev() {
                    strides[i] = strides[i + 1] * factors[i + 1].order;
                }
                Kind::Product(ProductRing { factors, strides })
            }
        };
        let order = spec.order().expect("checked by caller") as usize;
        Self::finish(Some(spec.clone()), spec.to_string(), order, kind)
    }

    fn finish(spec: Option<RingSpec>, label: String, order: usize, kind: Kind) -> Ring {
        let mut ring = Ring { spec, label, order, one: 0, kind, units: Vec::new(), unit_count: 0 };
        ring.one = ring.compute_one();
        ring.units = (0..order).map(|a| ring.compute_is_unit(a)).collect();
        ring.unit_count = ring.units.iter().filter(|&&u| u).count();
        ring
    }

    fn compute_one(&self) -> usize {
        match &self.kind {
            Kind::Zn(m) => 1 % m,
            Kind::Gf(_) => 1,
            Kind::Matrix(mr) => {
                let one = mr.base.one();
                let mut e = MatrixElem::zero(mr.n);
                for i in 0..mr.n {
                    e.set(i, i, one);
                }
                self.encode_entries(mr, e.entries())
            }
            Kind::Product(pr) => pr.factors.iter().zip(&pr.strides).map(|(f, s)| f.one() * s).sum(),
            Kind::Table(_) => unreachable!("table rings set their identity explicitly"),
        }
    }

    fn compute_is_unit(&self, a: usize) -> bool {
        match &self.kind {
            Kind::Zn(m) => a.gcd(m) == 1,
            Kind::Gf(_) => a != 0,
            Kind::Matrix(mr) => {
                let e = self.decode_entries(mr, a);
                if mr.triangular {
                    (0..mr.n).all(|i| mr.base.is_unit(e[i * mr.n + i]))
                } else {
                    mr.base.is_unit(det_entries(&mr.base, mr.n, &e))
                }
            }
            Kind::Product(pr) => {
                pr.factors.iter().zip(self.split(pr, a)).all(|(f, c)| f.is_unit(c))
            }
            Kind::Table(t) => {
                let n = self.order;
                (0..n).any(|b| {
                    t.mul[a * n + b] as usize == self.one && t.mul[b * n + a] as usize == self.one
                })
            }
        }
    }

    pub fn spec(&self) -> Option<&RingSpec> {
        self.spec.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    /// Indices of all units, ascending.
    pub fn units(&self) -> VertexSet {
        self.units.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    #[inline]
    pub fn is_unit(&self, a: usize) -> bool {
        self.units[a]
    }

    pub fn try_is_unit(&self, a: usize) -> Result<bool> {
        self.check(a)?;
        Ok(self.units[a])
    }

    /// True for `GF(q)` and `Z(p)` with `p` prime.
    pub fn is_field(&self) -> bool {
        match &self.kind {
            Kind::Zn(m) => numth::is_prime(*m as u64),
            Kind::Gf(_) => true,
            _ => false,
        }
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, order: self.order })
        }
    }

    /// Checked arithmetic; `b` is ignored for `neg` and required otherwise.
    pub fn arith(&self, op: ArithOp, a: usize, b: Option<usize>) -> Result<usize> {
        self.check(a)?;
        if op == ArithOp::Neg {
            return Ok(self.neg(a));
        }
        let b = b.ok_or_else(|| Error::InvalidArgument("binary operation needs two operands".into()))?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => unreachable!(),
        })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zn(m) => (a + b) % m,
            Kind::Gf(f) => f.add(a, b),
            Kind::Matrix(mr) => {
                let (x, y) = (self.decode_entries(mr, a), self.decode_entries(mr, b));
                let z: Vec<usize> = x.iter().zip(&y).map(|(&u, &v)| mr.base.add(u, v)).collect();
                self.encode_entries(mr, &z)
            }
            Kind::Product(pr) => self.zip_components(pr, a, b, |f, x, y| f.add(x, y)),
            Kind::Table(t) => t.add[a * self.order + b] as usize,
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.kind {
            Kind::Zn(m) => (m - a) % m,
            Kind::Gf(f) => f.neg(a),
            Kind::Matrix(mr) => {
                let x = self.decode_entries(mr, a);
                let z: Vec<usize> = x.iter().map(|&u| mr.base.neg(u)).collect();
                self.encode_entries(mr, &z)
            }
            Kind::Product(pr) => {
                let cs = self.split(pr, a);
                pr.factors.iter().zip(cs).zip(&pr.strides).map(|((f, c), s)| f.neg(c) * s).sum()
            }
            Kind::Table(t) => t.neg[a] as usize,
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zn(m) => (a + m - b) % m,
            Kind::Product(pr) => self.zip_components(pr, a, b, |f, x, y| f.sub(x, y)),
            Kind::Matrix(mr) => {
                let (x, y) = (self.decode_entries(mr, a), self.decode_entries(mr, b));
                let z: Vec<usize> = x.iter().zip(&y).map(|(&u, &v)| mr.base.sub(u, v)).collect();
                self.encode_entries(mr, &z)
            }
            _ => self.add(a, self.neg(b)),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zn(m) => (a * b) % m,
            Kind::Gf(f) => f.mul(a, b),
            Kind::Matrix(mr) => {
                let n = mr.n;
                let (x, y) = (self.decode_entries(mr, a), self.decode_entries(mr, b));
                let mut z = vec![0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0;
                        for l in 0..n {
                            let (u, v) = (x[i * n + l], y[l * n + j]);
                            if u != 0 && v != 0 {
                                acc = mr.base.add(acc, mr.base.mul(u, v));
                            }
                        }
                        z[i * n + j] = acc;
                    }
                }
                self.encode_entries(mr, &z)
            }
            Kind::Product(pr) => self.zip_components(pr, a, b, |f, x, y| f.mul(x, y)),
            Kind::Table(t) => t.mul[a * self.order + b] as usize,
        }
    }

    fn zip_components(
        &self,
        pr: &ProductRing,
        a: usize,
        b: usize,
        op: impl Fn(&Ring, usize, usize) -> usize,
    ) -> usize {
        let (ca, cb) = (self.split(pr, a), self.split(pr, b));
        pr.factors
            .iter()
            .zip(ca.iter().zip(&cb))
            .zip(&pr.strides)
            .map(|((f, (&x, &y)), s)| op(f, x, y) * s)
            .sum()
    }

    fn split(&self, pr: &ProductRing, a: usize) -> Vec<usize> {
        pr.factors.iter().zip(&pr.strides).map(|(f, s)| (a / s) % f.order).collect()
    }

    fn decode_entries(&self, mr: &MatrixRing, mut a: usize) -> Vec<usize> {
        let b = mr.base.order;
        let mut e = vec![0; mr.n * mr.n];
        for &(i, j) in mr.positions.iter().rev() {
            e[i * mr.n + j] = a % b;
            a /= b;
        }
        e
    }

    fn encode_entries(&self, mr: &MatrixRing, e: &[usize]) -> usize {
        let b = mr.base.order;
        mr.positions.iter().fold(0, |acc, &(i, j)| acc * b + e[i * mr.n + j])
    }

    fn matrix_ring(&self) -> Result<&MatrixRing> {
        match &self.kind {
            Kind::Matrix(mr) => Ok(mr),
            _ => Err(Error::WrongRingKind("a matrix ring")),
        }
    }

    /// Matrix size when this is an `M` or `T` ring.
    pub fn matrix_size(&self) -> Option<usize> {
        self.matrix_ring().ok().map(|mr| mr.n)
    }

    /// Base ring when this is an `M` or `T` ring.
    pub fn matrix_base(&self) -> Option<&Ring> {
        self.matrix_ring().ok().map(|mr| &*mr.base)
    }

    pub fn is_triangular(&self) -> bool {
        self.matrix_ring().is_ok_and(|mr| mr.triangular)
    }

    pub fn decode_matrix(&self, a: usize) -> Result<MatrixElem> {
        let mr = self.matrix_ring()?;
        self.check(a)?;
        MatrixElem::from_entries(mr.n, self.decode_entries(mr, a))
    }

    pub fn encode_matrix(&self, m: &MatrixElem) -> Result<usize> {
        let mr = self.matrix_ring()?;
        if m.size() != mr.n {
            return Err(Error::InvalidArgument(format!(
                "expected a {0}x{0} matrix, got {1}x{1}",
                mr.n,
                m.size()
            )));
        }
        if let Some(&bad) = m.entries().iter().find(|&&e| e >= mr.base.order) {
            return Err(Error::IndexOutOfRange { index: bad, order: mr.base.order });
        }
        if mr.triangular && (0..mr.n).any(|i| (0..i).any(|j| m.get(i, j) != 0)) {
            return Err(Error::InvalidArgument("entry below the diagonal of a triangular matrix".into()));
        }
        Ok(self.encode_entries(mr, m.entries()))
    }

    /// Determinant of a matrix over the (commutative) base ring, as a base index.
    pub fn det(&self, m: &MatrixElem) -> Result<usize> {
        let mr = self.matrix_ring()?;
        if m.size() != mr.n {
            return Err(Error::InvalidArgument("matrix size does not match the ring".into()));
        }
        Ok(det_entries(&mr.base, mr.n, m.entries()))
    }

    pub fn det_of(&self, a: usize) -> Result<usize> {
        self.det(&self.decode_matrix(a)?)
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match &self.kind {
            Kind::Product(pr) => Some(&pr.factors),
            _ => None,
        }
    }

    /// Component indices of a product element.
    pub fn components(&self, a: usize) -> Result<Vec<usize>> {
        match &self.kind {
            Kind::Product(pr) => {
                self.check(a)?;
                Ok(self.split(pr, a))
            }
            _ => Err(Error::WrongRingKind("a product ring")),
        }
    }

    pub fn from_components(&self, cs: &[usize]) -> Result<usize> {
        match &self.kind {
            Kind::Product(pr) if cs.len() == pr.factors.len() => {
                for (f, &c) in pr.factors.iter().zip(cs) {
                    f.check(c)?;
                }
                Ok(cs.iter().zip(&pr.strides).map(|(c, s)| c * s).sum())
            }
            Kind::Product(_) => Err(Error::InvalidArgument("wrong number of components".into())),
            _ => Err(Error::WrongRingKind("a product ring")),
        }
    }

    /// Human-readable element: integers, `a,b;c,d` matrices, `(x, y)` tuples.
    pub fn describe(&self, a: usize) -> String {
        match &self.kind {
            Kind::Zn(_) | Kind::Gf(_) => a.to_string(),
            Kind::Matrix(mr) => {
                MatrixElem::from_entries(mr.n, self.decode_entries(mr, a)).expect("square").to_string()
            }
            Kind::Product(pr) => {
                let parts: Vec<String> = pr
                    .factors
                    .iter()
                    .zip(self.split(pr, a))
                    .map(|(f, c)| f.describe(c))
                    .collect();
                format!("({})", parts.join(", "))
            }
            Kind::Table(_) => format!("#{a}"),
        }
    }

    /// Membership mask of `J(R)` from the structured rules, when available.
    fn radical_mask(&self) -> Option<Vec<bool>> {
        Some(match &self.kind {
            Kind::Zn(m) => {
                let r = numth::radical(*m as u64) as usize;
                (0..self.order).map(|x| x % r == 0).collect()
            }
            Kind::Gf(_) => (0..self.order).map(|x| x == 0).collect(),
            Kind::Matrix(mr) => {
                let base = mr.base.radical_mask()?;
                (0..self.order)
                    .map(|x| {
                        let e = self.decode_entries(mr, x);
                        if mr.triangular {
                            (0..mr.n).all(|i| base[e[i * mr.n + i]])
                        } else {
                            e.iter().all(|&v| base[v])
                        }
                    })
                    .collect()
            }
            Kind::Product(pr) => {
                let masks: Option<Vec<Vec<bool>>> = pr.factors.iter().map(Ring::radical_mask).collect();
                let masks = masks?;
                (0..self.order)
                    .map(|x| self.split(pr, x).iter().zip(&masks).all(|(&c, m)| m[c]))
                    .collect()
            }
            Kind::Table(_) => return None,
        })
    }

    /// `J(R)` from the structured rules (`Z(m)`: multiples of the squarefree
    /// part of `m`; fields: zero; `M(n,S)`: `M(n,J(S))`; `T(n,F)`: zero
    /// diagonal; products componentwise). `None` for table rings.
    pub fn jacobson_radical_structured(&self) -> Option<VertexSet> {
        let mask = self.radical_mask()?;
        Some(mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
    }

    /// `J(R)` by quasi-regularity: `x` is in `J(R)` iff `1 - r x` is a unit for every `r`.
    pub fn jacobson_radical_brute(&self) -> Result<VertexSet> {
        if self.order > BRUTE_RADICAL_CAP {
            return Err(Error::RadicalTooLarge { order: self.order });
        }
        Ok((0..self.order)
            .filter(|&x| (0..self.order).all(|r| self.is_unit(self.sub(self.one, self.mul(r, x)))))
            .collect())
    }

    pub fn jacobson_radical(&self) -> Result<VertexSet> {
        match self.jacobson_radical_structured() {
            Some(j) => Ok(j),
            None => self.jacobson_radical_brute(),
        }
    }

    pub fn metadata(&self) -> RingMetadata {
        RingMetadata {
            spec: self.label.clone(),
            order: self.order,
            unit_count: self.unit_count,
            radical_size: self.jacobson_radical().ok().map(|j| j.len()),
        }
    }

    /// Verifies that `ideal` is a two-sided ideal.
    pub fn check_ideal(&self, ideal: &VertexSet) -> Result<()> {
        if let Some(&bad) = ideal.as_slice().last().filter(|&&x| x >= self.order) {
            return Err(Error::IndexOutOfRange { index: bad, order: self.order });
        }
        if !ideal.contains(0) {
            return Err(Error::NotIdeal("does not contain zero".into()));
        }
        for a in ideal.iter() {
            for b in ideal.iter() {
                if !ideal.contains(self.sub(a, b)) {
                    return Err(Error::NotIdeal(format!(
                        "not closed under subtraction ({} - {})",
                        self.describe(a),
                        self.describe(b)
                    )));
                }
            }
        }
        for r in 0..self.order {
            for a in ideal.iter() {
                if !ideal.contains(self.mul(r, a)) || !ideal.contains(self.mul(a, r)) {
                    return Err(Error::NotIdeal(format!(
                        "does not absorb multiplication by {}",
                        self.describe(r)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `R/I` on coset representatives; coset `c` is numbered by the rank of
    /// its smallest element, so the zero coset is 0.
    pub fn quotient(&self, ideal: &VertexSet) -> Result<Quotient> {
        self.check_ideal(ideal)?;
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if projection[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for i in ideal.iter() {
                projection[self.add(x, i)] = c;
            }
        }
        let k = reps.len();
        let mut add = vec![0u32; k * k];
        let mut mul = vec![0u32; k * k];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                add[a * k + b] = projection[self.add(ra, rb)] as u32;
                mul[a * k + b] = projection[self.mul(ra, rb)] as u32;
            }
        }
        let neg = reps.iter().map(|&r| projection[self.neg(r)] as u32).collect();
        let label = format!("{}/I", self.label);
        let mut ring = Ring {
            spec: None,
            label,
            order: k,
            one: projection[self.one],
            kind: Kind::Table(TableRing { add, mul, neg }),
            units: Vec::new(),
            unit_count: 0,
        };
        ring.units = (0..k).map(|a| ring.compute_is_unit(a)).collect();
        ring.unit_count = ring.units.iter().filter(|&&u| u).count();
        Ok(Quotient { ring, projection })
    }

    /// `R/J(R)`, labelled accordingly.
    pub fn semisimple_quotient(&self) -> Result<Quotient> {
        let j = self.jacobson_radical()?;
        let mut q = self.quotient(&j)?;
        q.ring.label = format!("{}/J", self.label);
        Ok(q)
    }
}
