//! Explicit matrices and vertex sets used to build or refute
//! well-coveredness: reduced k-diagonal matrices and the family built from
//! them, row mixing, avoidance partners and the product witness.
//!
//! The parameters `k` and `l` of a reduced diagonal matrix are 1-based with
//! indices taken modulo `n` into `1..=n`. Everything else (row sets, entry
//! positions) is 0-based like [`MatrixElem`].

use serde::{Deserialize, Serialize};

use crate::algebra::{det_entries, MatrixElem, Ring, RingSpec};
use crate::cayley::{build_graph, UGraph};
use crate::error::{Error, Result};
use crate::indsets::greedy_extend;
use crate::sets::VertexSet;

/// Parameters of `D_{k,l}(a_1, ..., a_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedDiagonalSpec {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub coeffs: Vec<usize>,
}

impl ReducedDiagonalSpec {
    /// `D_k = D_{k,k}`.
    pub fn diagonal(n: usize, k: usize, coeffs: Vec<usize>) -> Self {
        ReducedDiagonalSpec { n, k, l: k, coeffs }
    }
}

/// Representative of `x mod n` in `1..=n`.
fn wrap(x: isize, n: usize) -> usize {
    let r = x.rem_euclid(n as isize) as usize;
    if r == 0 {
        n
    } else {
        r
    }
}

fn require_field(field: &Ring) -> Result<()> {
    if field.is_field() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{} is not a field", field.label())))
    }
}

/// Entry `(i, j)` is `a_{i-l}` when `j - i = k` and `i != l`, and zero
/// otherwise, with 1-based indices modulo `n`.
pub fn reduced_diagonal(spec: &ReducedDiagonalSpec, field: &Ring) -> Result<MatrixElem> {
    let n = spec.n;
    if n == 0 || !(1..=n).contains(&spec.k) || !(1..=n).contains(&spec.l) {
        return Err(Error::InvalidArgument(format!("need 1 <= k, l <= n, got n={n} k={} l={}", spec.k, spec.l)));
    }
    if spec.coeffs.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} coefficients, got {}", n - 1, spec.coeffs.len())));
    }
    if let Some(&c) = spec.coeffs.iter().find(|&&c| c >= field.order()) {
        return Err(Error::IndexOutOfRange { index: c, order: field.order() });
    }
    let mut m = MatrixElem::zero(n);
    for i in (1..=n).filter(|&i| i != spec.l) {
        let j = wrap((i + spec.k) as isize, n);
        let a = wrap(i as isize - spec.l as isize, n);
        m.set(i - 1, j - 1, spec.coeffs[a - 1]);
    }
    Ok(m)
}

fn coefficient_tuples(q: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = q.pow(len as u32);
    (0..total).map(move |mut t| {
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = t % q;
            t /= q;
        }
        digits
    })
}

/// `{D_k(a) : 1 <= k <= n, a in F^{n-1}}` with the zero matrix once, first;
/// then by `k` and coefficient tuple. Size `n(q^{n-1} - 1) + 1`.
pub fn d_family(n: usize, field: &Ring) -> Result<Vec<MatrixElem>> {
    require_field(field)?;
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    let mut out = vec![MatrixElem::zero(n)];
    for k in 1..=n {
        for coeffs in coefficient_tuples(field.order(), n - 1) {
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            out.push(reduced_diagonal(&ReducedDiagonalSpec::diagonal(n, k, coeffs), field)?);
        }
    }
    Ok(out)
}

/// Matrix size and base field of `M(n, F)`.
fn full_matrix_ring(ring: &Ring) -> Result<(usize, &Ring)> {
    match (ring.matrix_size(), ring.matrix_base()) {
        (Some(n), Some(base)) if !ring.is_triangular() && base.is_field() => Ok((n, base)),
        _ => Err(Error::WrongRingKind("a full matrix ring over a field")),
    }
}

/// The family of [`d_family`] as vertices of `Γ(M(n, F))`.
pub fn d_family_set(ring: &Ring) -> Result<VertexSet> {
    let (n, field) = full_matrix_ring(ring)?;
    d_family(n, field)?.iter().map(|m| ring.encode_matrix(m)).collect()
}

/// Matrices whose first row is zero: an independent set of size `q^{n^2-n}`.
pub fn zero_row_family(ring: &Ring) -> Result<VertexSet> {
    full_matrix_ring(ring)?;
    Ok((0..ring.order()).filter(|&a| ring.decode_matrix(a).is_ok_and(|m| m.row(0).iter().all(|&e| e == 0))).collect())
}

/// Every pairwise difference has zero determinant.
pub fn pairwise_singular(family: &[MatrixElem], field: &Ring) -> bool {
    family.iter().enumerate().all(|(i, a)| {
        family[i + 1..].iter().all(|b| {
            let d = a.sub(b, field);
            det_entries(field, d.size(), d.entries()) == 0
        })
    })
}

/// Rows listed in `rows_from_d` (0-based) come from `d`, the others from `a`.
pub fn row_mix(a: &MatrixElem, d: &MatrixElem, rows_from_d: &VertexSet) -> Result<MatrixElem> {
    let n = a.size();
    if d.size() != n {
        return Err(Error::InvalidArgument(format!("size mismatch: {n} vs {}", d.size())));
    }
    if let Some(r) = rows_from_d.iter().find(|&r| r >= n) {
        return Err(Error::InvalidArgument(format!("row {r} out of range for size {n}")));
    }
    let mut out = a.clone();
    for r in rows_from_d.iter() {
        out.set_row(r, d.row(r));
    }
    Ok(out)
}

/// A non-unit `B` with `A - B` a unit, for nonzero `A` and `n > 1`.
///
/// Take the first nonzero entry `a_ij` in row-major order, zero row `i` of
/// `A` and subtract `D_{k,i}(1, ..., 1)` with `k = j - i`. Row `i` of `B` is
/// zero and `det(A - B) = ±a_ij`.
pub fn avoidance_partner(a: &MatrixElem, field: &Ring) -> Result<MatrixElem> {
    require_field(field)?;
    let n = a.size();
    if n < 2 {
        return Err(Error::InvalidArgument("matrix size must be at least 2".into()));
    }
    let pos = a.entries().iter().position(|&e| e != 0).ok_or_else(|| {
        Error::InvalidArgument("the zero matrix has no avoidance partner".into())
    })?;
    let (i, j) = (pos / n + 1, pos % n + 1);
    let k = wrap(j as isize - i as isize, n);
    let mut trimmed = a.clone();
    trimmed.set_row(i - 1, &vec![0; n]);
    let d = reduced_diagonal(&ReducedDiagonalSpec { n, k, l: i, coeffs: vec![field.one(); n - 1] }, field)?;
    Ok(trimmed.sub(&d, field))
}

/// 0-based positions `(k, 2k mod n)` for `k = 1..n` (1-based, 0 read as `n`).
pub fn zero_pattern(n: usize) -> Vec<(usize, usize)> {
    (1..=n).map(|k| (k - 1, wrap(2 * k as isize, n) - 1)).collect()
}

pub fn has_zero_pattern(m: &MatrixElem) -> bool {
    zero_pattern(m.size()).into_iter().all(|(i, j)| m.get(i, j) == 0)
}

/// `diag(I_{n-2}, [[0,1],[1,0]])`, for `n >= 2`.
pub fn permuted_identity(n: usize, field: &Ring) -> Result<MatrixElem> {
    if n < 2 {
        return Err(Error::InvalidArgument("matrix size must be at least 2".into()));
    }
    let mut m = MatrixElem::zero(n);
    for i in 0..n - 2 {
        m.set(i, i, field.one());
    }
    m.set(n - 2, n - 1, field.one());
    m.set(n - 1, n - 2, field.one());
    Ok(m)
}

/// Two maximal independent sets of `Γ(R × M_n(F))` of different sizes.
#[derive(Debug, Clone)]
pub struct ProductWitness {
    pub ring: Ring,
    pub graph: UGraph,
    /// Greedy maximal independent set of `Γ(R)`.
    pub base_set: VertexSet,
    /// `(R × {0}) ∪ (M × X)`, `X` the nonzero non-units of `M_n(F)`.
    pub small: VertexSet,
    /// `M × M_n(F)`.
    pub large: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWitnessSummary {
    pub ring: String,
    pub base_set: VertexSet,
    pub small_size: usize,
    pub large_size: usize,
    pub small: VertexSet,
}

impl ProductWitness {
    pub fn summary(&self) -> ProductWitnessSummary {
        ProductWitnessSummary {
            ring: self.ring.label().to_string(),
            base_set: self.base_set.clone(),
            small_size: self.small.len(),
            large_size: self.large.len(),
            small: self.small.clone(),
        }
    }
}

/// Builds `R × M_n(F)` and its witness sets; `n > 1`.
pub fn product_witness(r: &Ring, n: usize, field: &Ring) -> Result<ProductWitness> {
    require_field(field)?;
    if n < 2 {
        return Err(Error::InvalidArgument("matrix size must be at least 2".into()));
    }
    let (rs, fs) = match (r.spec(), field.spec()) {
        (Some(rs), Some(fs)) => (rs.clone(), fs.clone()),
        _ => return Err(Error::InvalidArgument("product witness needs structured rings".into())),
    };
    let ring = Ring::new(&RingSpec::Prod(vec![rs, RingSpec::M(n, Box::new(fs))]))?;
    let base_set = greedy_extend(&build_graph(r)?, &VertexSet::new())?;
    let graph = build_graph(&ring)?;
    let factors = ring.factors().expect("product ring");
    let matrices = &factors[1];
    let nonunits: Vec<usize> = (1..matrices.order()).filter(|&x| !matrices.is_unit(x)).collect();
    let mut small: Vec<usize> = (0..r.order()).map(|x| ring.from_components(&[x, 0])).collect::<Result<_>>()?;
    let mut large = Vec::new();
    for m in base_set.iter() {
        for &x in &nonunits {
            small.push(ring.from_components(&[m, x])?);
        }
        for x in 0..matrices.order() {
            large.push(ring.from_components(&[m, x])?);
        }
    }
    Ok(ProductWitness { ring, graph, base_set, small: small.into(), large: large.into() })
}

/// Independent sets likely to extend to maximal sets of different sizes,
/// used to refute well-coveredness before enumerating.
pub fn refutation_seeds(ring: &Ring) -> Vec<VertexSet> {
    let mut seeds = Vec::new();
    if let Ok((n, _)) = full_matrix_ring(ring) {
        if n >= 2 {
            seeds.extend(zero_row_family(ring));
        }
        if n >= 3 {
            seeds.extend(d_family_set(ring));
        }
    }
    if let Some([r, m]) = ring.factors() {
        if let (Ok((n, field)), Some(_)) = (full_matrix_ring(m), r.spec()) {
            if n >= 2 {
                if let Ok(w) = product_witness(r, n, field) {
                    seeds.push(w.small);
                    seeds.push(w.large);
                }
            }
        }
    }
    seeds
}
