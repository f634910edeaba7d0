//! Self-check harness: reproduces the finite results this crate is built
//! around and reports one pass/fail record per check.
//!
//! Reports are deterministic for a given scale and seed. They carry no
//! timings.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{det_entries, MatrixElem, Ring, RingSpec};
use crate::cayley::{build_graph, conjunction_product, UGraph};
use crate::complex::{codim1_connected, find_shelling, independence_complex, pure_skeleton, ShellingOutcome};
use crate::constructions::{
    avoidance_partner, d_family, d_family_set, has_zero_pattern, pairwise_singular, permuted_identity,
    product_witness, row_mix,
};
use crate::error::{Error, Result};
use crate::indsets::{greedy_extend, independence_number, is_well_covered, maximal_independent_sets, Answer, Budget};
use crate::sets::{sort_canonical, VertexSet};
use crate::structure::{classify_gorenstein, classify_well_covered};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Medium,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Small => "small",
            Scale::Medium => "medium",
        })
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Scale::Small),
            "medium" => Ok(Scale::Medium),
            _ => Err(Error::InvalidArgument(format!("unknown scale {s:?} (expected small or medium)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    /// The statement the check certifies on this instance.
    pub certifies: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scale: Scale,
    pub seed: u64,
    pub passed: bool,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

/// Rings on which the theorem-based classification is compared with
/// enumeration.
pub fn catalog(scale: Scale) -> Vec<String> {
    let mut out: Vec<String> = (1..=16).map(|m| format!("Z({m})")).collect();
    out.extend([2, 3, 4, 5, 7, 8, 9].iter().map(|q| format!("GF({q})")));
    out.extend(
        [
            "T(2,GF(2))",
            "T(3,GF(2))",
            "T(2,GF(3))",
            "M(2,GF(2))",
            "M(2,GF(3))",
            "prod(Z(2),Z(2))",
            "prod(Z(2),Z(2),Z(2))",
            "prod(Z(2),Z(3))",
            "prod(Z(3),Z(3))",
            "M(2,Z(4))",
        ]
        .map(String::from),
    );
    if scale == Scale::Medium {
        out.extend((17..=30).map(|m| format!("Z({m})")));
        out.extend(
            ["GF(11)", "GF(16)", "T(2,GF(4))", "M(2,GF(4))", "prod(Z(4),Z(3))", "prod(GF(4),GF(4))", "prod(GF(4),Z(2))"]
                .map(String::from),
        );
    }
    out
}

struct Harness {
    checks: Vec<CheckResult>,
}

impl Harness {
    fn check(&mut self, id: impl Into<String>, certifies: impl Into<String>, run: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(CheckResult { id: id.into(), certifies: certifies.into(), passed, detail });
    }
}

fn ring(s: &str) -> Result<Ring> {
    Ring::parse(s)
}

fn graph(s: &str) -> Result<UGraph> {
    build_graph(&ring(s)?)
}

fn gf(q: u64) -> Result<Ring> {
    Ring::new(&RingSpec::GF(q))
}

fn gl_order(n: u32, q: u64) -> u64 {
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

/// Runs every check at the given scale.
pub fn verify_paper(scale: Scale, seed: u64) -> VerifyReport {
    let mut h = Harness { checks: Vec::new() };
    alpha_checks(&mut h, scale);
    well_covered_small_matrix_checks(&mut h, scale);
    refutation_checks(&mut h, scale);
    family_checks(&mut h, scale);
    row_mix_checks(&mut h);
    radical_checks(&mut h, scale);
    avoidance_checks(&mut h, scale, seed);
    product_checks(&mut h, scale);
    conjunction_checks(&mut h);
    classification_checks(&mut h, scale);
    cm_checks(&mut h, scale);
    unit_count_checks(&mut h, scale);
    let failed = h.checks.iter().filter(|c| !c.passed).count();
    VerifyReport { scale, seed, passed: failed == 0, failed, checks: h.checks }
}

fn alpha_checks(h: &mut Harness, scale: Scale) {
    let mut cases = vec![(1, 2), (1, 3), (2, 2), (2, 3)];
    if scale == Scale::Medium {
        cases.extend([(2, 4), (2, 5)]);
    }
    for (n, q) in cases {
        h.check(
            format!("lemma-ess-alpha-{n}-{q}"),
            format!("α(Γ(M_{n}(F_{q}))) = {q}^({n}²-{n})"),
            || {
                let expected = (q as usize).pow(n * n - n);
                let a = independence_number(&graph(&format!("M({n},GF({q}))"))?, Budget::UNLIMITED)?;
                Ok((a == expected, format!("alpha {a}, expected {expected}")))
            },
        );
    }
}

fn well_covered_small_matrix_checks(h: &mut Harness, scale: Scale) {
    let mut cases = vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3)];
    if scale == Scale::Medium {
        cases.extend([(1, 7), (2, 4)]);
    }
    for (n, q) in cases {
        h.check(
            format!("prop-m2f-{n}-{q}"),
            format!("every maximal independent set of Γ(M_{n}(F_{q})) has size {q}^({n}²-{n})"),
            || {
                let expected = (q as usize).pow(n * n - n);
                let sets = maximal_independent_sets(&graph(&format!("M({n},GF({q}))"))?, Budget::UNLIMITED)?;
                let bad = sets.iter().filter(|s| s.len() != expected).count();
                Ok((bad == 0, format!("{} maximal sets, {bad} of a size other than {expected}", sets.len())))
            },
        );
    }
}

fn refutation_checks(h: &mut Harness, scale: Scale) {
    h.check(
        "thm-mnf-refute-3-2",
        "a maximal independent set of Γ(M_3(F_2)) containing the reduced diagonal family is smaller than α = 64, and its elements vanish at (k, 2k mod 3)",
        || {
            let r = ring("M(3,GF(2))")?;
            let g = build_graph(&r)?;
            let m = greedy_extend(&g, &d_family_set(&r)?)?;
            let patterned = m.iter().all(|x| r.decode_matrix(x).is_ok_and(|a| has_zero_pattern(&a)));
            let ok = g.is_maximal_independent(&m) && m.len() < 64 && patterned;
            Ok((ok, format!("maximal set size {} (< 64), zero pattern {}", m.len(), if patterned { "holds" } else { "fails" })))
        },
    );
    let mut cases = vec![(3, 2), (4, 2)];
    if scale == Scale::Medium {
        cases.extend([(3, 3), (5, 2)]);
    }
    for (n, q) in cases {
        h.check(
            format!("thm-mnf-permuted-identity-{n}-{q}"),
            format!("a unit of M_{n}(F_{q}) vanishes on the zero pattern, so the pattern sets are not of size α"),
            || {
                let f = gf(q)?;
                let p = permuted_identity(n, &f)?;
                let unit = f.is_unit(det_entries(&f, n, p.entries()));
                Ok((unit && has_zero_pattern(&p), format!("pattern {}, unit {unit}", has_zero_pattern(&p))))
            },
        );
    }
}

fn family_checks(h: &mut Harness, scale: Scale) {
    let mut cases = vec![(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)];
    if scale == Scale::Medium {
        cases.extend([(4, 3), (3, 4), (3, 5)]);
    }
    for (n, q) in cases {
        h.check(
            format!("lemma-dk-{n}-{q}"),
            format!("the reduced diagonal family in M_{n}(F_{q}) is independent of size n(q^(n-1)-1)+1"),
            || {
                let f = gf(q)?;
                let fam = d_family(n, &f)?;
                let expected = n * ((q as usize).pow(n as u32 - 1) - 1) + 1;
                let indep = pairwise_singular(&fam, &f);
                Ok((indep && fam.len() == expected, format!("size {} (expected {expected}), independent {indep}", fam.len())))
            },
        );
    }
}

fn row_mix_checks(h: &mut Harness) {
    h.check(
        "lemma-comrows-3-2",
        "mixing rows of any member of a maximal set containing the family with rows of any family member gives a singular matrix in M_3(F_2)",
        || {
            let r = ring("M(3,GF(2))")?;
            let f = gf(2)?;
            let g = build_graph(&r)?;
            let fam = d_family(3, &f)?;
            let m = greedy_extend(&g, &d_family_set(&r)?)?;
            let mut total = 0usize;
            let mut bad = 0usize;
            for a in m.iter() {
                let a = r.decode_matrix(a)?;
                for d in &fam {
                    for mask in 1..8usize {
                        let rows: VertexSet = (0..3).filter(|b| mask >> b & 1 == 1).collect();
                        let mixed = row_mix(&a, d, &rows)?;
                        total += 1;
                        if det_entries(&f, 3, mixed.entries()) != 0 {
                            bad += 1;
                        }
                    }
                }
            }
            Ok((bad == 0, format!("{total} row mixes, {bad} invertible")))
        },
    );
}

/// Maximal sets of `Γ(R)` versus full preimages of maximal sets of
/// `Γ(R/J)`, and the same through saturating the smallest lifts.
fn radical_correspondence(s: &str) -> Result<(bool, String)> {
    let r = ring(s)?;
    let j = r.jacobson_radical()?;
    let q = r.semisimple_quotient()?;
    let mut upstairs = maximal_independent_sets(&build_graph(&r)?, Budget::UNLIMITED)?;
    let down = maximal_independent_sets(&build_graph(&q.ring)?, Budget::UNLIMITED)?;
    let mut lifted: Vec<VertexSet> = down.iter().map(|s| q.preimage(s)).collect();
    let mut saturated: Vec<VertexSet> = down
        .iter()
        .map(|s| {
            let reps: VertexSet =
                s.iter().map(|c| q.projection.iter().position(|&p| p == c).expect("surjective")).collect();
            crate::indsets::radical_saturate(&r, &j, &reps)
        })
        .collect();
    sort_canonical(&mut upstairs);
    sort_canonical(&mut lifted);
    sort_canonical(&mut saturated);
    let wc_up = upstairs.windows(2).all(|w| w[0].len() == w[1].len());
    let wc_down = down.windows(2).all(|w| w[0].len() == w[1].len());
    let ok = upstairs == lifted && upstairs == saturated && wc_up == wc_down;
    Ok((
        ok,
        format!(
            "|J| = {}, {} maximal sets upstairs, {} in the quotient, well-covered {wc_up}/{wc_down}",
            j.len(),
            upstairs.len(),
            down.len()
        ),
    ))
}

fn radical_checks(h: &mut Harness, scale: Scale) {
    let mut cases = vec![("prop-rj-z4", "Z(4)"), ("prop-rj-z8", "Z(8)"), ("prop-rj-z12", "Z(12)"), ("prop-rj-t2-f2", "T(2,GF(2))")];
    if scale == Scale::Medium {
        cases.extend([("prop-rj-z16", "Z(16)"), ("prop-rj-z18", "Z(18)"), ("prop-rj-t2-f3", "T(2,GF(3))"), ("prop-rj-m2-z4", "M(2,Z(4))")]);
    }
    for (id, s) in cases {
        h.check(
            id,
            format!("the facets of ind(Γ({s})) are exactly the J-saturated lifts of the facets of ind(Γ({s}/J)), and well-coveredness agrees"),
            || radical_correspondence(s),
        );
    }
}

fn avoidance_scan(f: &Ring, matrices: impl Iterator<Item = MatrixElem>) -> (usize, usize) {
    let mut total = 0;
    let mut bad = 0;
    for a in matrices.filter(|a| !a.is_zero()) {
        total += 1;
        let n = a.size();
        let ok = avoidance_partner(&a, f).is_ok_and(|b| {
            !f.is_unit(det_entries(f, n, b.entries())) && f.is_unit(det_entries(f, n, a.sub(&b, f).entries()))
        });
        if !ok {
            bad += 1;
        }
    }
    (total, bad)
}

fn avoidance_checks(h: &mut Harness, scale: Scale, seed: u64) {
    let mut exhaustive = vec![(2, 2), (2, 3)];
    if scale == Scale::Medium {
        exhaustive.extend([(2, 4), (2, 5), (3, 2)]);
    }
    for (n, q) in exhaustive {
        h.check(
            format!("lemma-ab-{n}-{q}"),
            format!("every nonzero A in M_{n}(F_{q}) has a non-unit B with A - B a unit"),
            || {
                let r = ring(&format!("M({n},GF({q}))"))?;
                let f = gf(q)?;
                let (total, bad) = avoidance_scan(&f, (0..r.order()).filter_map(|x| r.decode_matrix(x).ok()));
                Ok((bad == 0, format!("{total} matrices, {bad} failures")))
            },
        );
    }
    let samples = if scale == Scale::Medium { 5000 } else { 500 };
    h.check(
        "lemma-ab-3-3-random",
        format!("{samples} random nonzero A in M_3(F_3) have a non-unit B with A - B a unit"),
        || {
            let f = gf(3)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = Vec::with_capacity(samples);
            while picked.len() < samples {
                let a = MatrixElem::from_entries(3, (0..9).map(|_| rng.gen_range(0..3)).collect())?;
                if !a.is_zero() {
                    picked.push(a);
                }
            }
            let (total, bad) = avoidance_scan(&f, picked.into_iter());
            Ok((bad == 0, format!("{total} matrices, {bad} failures")))
        },
    );
}

fn product_checks(h: &mut Harness, scale: Scale) {
    let mut cases = vec![("Z(2)", 2, 2, 11, 16), ("Z(3)", 2, 2, 12, 16)];
    if scale == Scale::Medium {
        cases.push(("Z(2)", 2, 3, 2 + (81 - 48 - 1), 81));
    }
    for (base, n, q, small, large) in cases {
        h.check(
            format!("prop-prod-{}-m{n}-f{q}", slug(base)),
            format!("Γ({base} × M_{n}(F_{q})) has maximal independent sets of sizes {small} and {large}, so it is not well-covered"),
            || {
                let w = product_witness(&ring(base)?, n, &gf(q)?)?;
                let maximal = w.graph.is_maximal_independent(&w.small) && w.graph.is_maximal_independent(&w.large);
                let report = is_well_covered(&w.graph, Budget::UNLIMITED);
                let ok = maximal && w.small.len() == small && w.large.len() == large && report.answer == Answer::No;
                Ok((
                    ok,
                    format!(
                        "|N| = {}, |M × M_n(F)| = {}, both maximal {maximal}, enumeration says {:?}",
                        w.small.len(),
                        w.large.len(),
                        report.answer
                    ),
                ))
            },
        );
    }
}

fn conjunction_checks(h: &mut Harness) {
    for (a, b) in [("Z(2)", "Z(3)"), ("Z(2)", "M(2,GF(2))")] {
        h.check(
            format!("conj-product-{}-{}", slug(a), slug(b)),
            format!("Γ({a} × {b}) is the conjunction product of Γ({a}) and Γ({b})"),
            || {
                let p = ring(&format!("prod({a},{b})"))?;
                let g2 = graph(b)?;
                let conj = conjunction_product(&graph(a)?, &g2);
                let perm: Vec<usize> = (0..p.order())
                    .map(|x| p.components(x).map(|c| c[0] * g2.vertex_count() + c[1]))
                    .collect::<Result<_>>()?;
                let relabeled = build_graph(&p)?.relabel(&perm)?;
                let ok = relabeled.same_edges(&conj);
                Ok((ok, format!("{} vertices, {} edges", conj.vertex_count(), conj.edge_count())))
            },
        );
    }
}

fn classification_checks(h: &mut Harness, scale: Scale) {
    for s in catalog(scale) {
        h.check(
            format!("classify-vs-enum-{}", slug(&s)),
            format!("the structural well-covered verdict for {s} matches enumeration"),
            || {
                let r = ring(&s)?;
                let spec = r.spec().cloned().ok_or_else(|| Error::Semantic("unstructured ring".into()))?;
                let verdict = classify_well_covered(&spec);
                let report = is_well_covered(&build_graph(&r)?, Budget::UNLIMITED);
                let enumerated = match report.answer {
                    Answer::Yes => true,
                    Answer::No => false,
                    Answer::Inconclusive => return Ok((false, "enumeration inconclusive".into())),
                };
                Ok((
                    verdict.answer == enumerated,
                    format!("classification {} ({}), enumeration {enumerated}", verdict.answer, verdict.clause),
                ))
            },
        );
    }
}

fn top_skeleton_disconnected(s: &str) -> Result<(bool, String)> {
    let c = independence_complex(&graph(s)?, Budget::UNLIMITED)?;
    let d = c.dim().ok_or_else(|| Error::Semantic("void complex".into()))?;
    let conn = codim1_connected(&pure_skeleton(&c, d)?)?;
    Ok((!conn.connected, format!("dimension {d}, {} components", conn.components.len())))
}

fn cm_checks(h: &mut Harness, scale: Scale) {
    let mut disconnected = vec![("lemma-st-conn-m2-f2", "M(2,GF(2))"), ("lemma-st-conn-j-z4", "Z(4)")];
    disconnected.extend([("lemma-st-conn-m2-f3", "M(2,GF(3))"), ("lemma-st-conn-j-z8", "Z(8)"), ("lemma-st-conn-j-t2-f2", "T(2,GF(2))")]);
    if scale == Scale::Medium {
        disconnected.extend([("lemma-st-conn-j-z9", "Z(9)"), ("lemma-st-conn-j-m2-z4", "M(2,Z(4))")]);
    }
    for (id, s) in disconnected {
        h.check(id, format!("the top pure skeleton of ind(Γ({s})) is disconnected in codimension 1"), || {
            top_skeleton_disconnected(s)
        });
    }
    let mut shellable: Vec<String> = vec!["Z(2)".into(), "prod(Z(2),Z(2))".into(), "prod(Z(2),Z(2),Z(2))".into()];
    shellable.extend(["GF(2)", "GF(3)", "GF(4)", "GF(5)"].map(String::from));
    if scale == Scale::Medium {
        shellable.extend(["prod(Z(2),Z(2),Z(2),Z(2))", "GF(7)", "GF(8)", "GF(9)"].map(String::from));
    }
    for s in shellable {
        h.check(
            format!("thm-cayleycm-shelling-{}", slug(&s)),
            format!("ind(Γ({s})) is shellable"),
            || {
                let c = independence_complex(&graph(&s)?, Budget::UNLIMITED)?;
                match find_shelling(&c, Budget::nodes(1_000_000))? {
                    ShellingOutcome::Found { order } => {
                        Ok((crate::complex::is_shelling(&c, &order), format!("shelling of {} facets", order.len())))
                    }
                    other => Ok((false, format!("{other:?}"))),
                }
            },
        );
    }
    h.check(
        "cor-gorencay-catalog",
        "classify_gorenstein answers yes exactly on the rings Z_2^k of the catalog",
        || {
            let mut yes = Vec::new();
            let mut ok = true;
            for s in catalog(scale) {
                let spec = crate::algebra::parse_spec(&s)?;
                let answer = classify_gorenstein(&spec).answer;
                let expected = is_z2_power(&spec);
                ok &= answer == expected;
                if answer {
                    yes.push(s);
                }
            }
            Ok((ok, format!("yes on {}", yes.join(", "))))
        },
    );
}

/// Syntactic `Z_2^k` test, independent of the structure module: every
/// factor is `Z(2)`, `GF(2)`, `M(1, Z_2^k)`, `T(1, ...)`, or a product of
/// such. `Z(1)` counts as `k = 0`.
fn is_z2_power(spec: &RingSpec) -> bool {
    match spec {
        RingSpec::Z(1) | RingSpec::Z(2) | RingSpec::GF(2) => true,
        RingSpec::M(1, b) | RingSpec::T(1, b) => is_z2_power(b),
        RingSpec::Prod(fs) => fs.iter().all(is_z2_power),
        _ => false,
    }
}

fn unit_count_checks(h: &mut Harness, scale: Scale) {
    let mut cases = vec![(2, 2), (2, 3), (3, 2)];
    if scale == Scale::Medium {
        cases.extend([(2, 4), (2, 5), (3, 3), (4, 2)]);
    }
    for (n, q) in cases {
        h.check(
            format!("prop-prod-units-{n}-{q}"),
            format!("|U(M_{n}(F_{q}))| = (q^n - 1)(q^n - q)...(q^n - q^(n-1))"),
            || {
                let r = ring(&format!("M({n},GF({q}))"))?;
                let counted = (0..r.order()).filter(|&x| r.det_of(x).is_ok_and(|d| d != 0)).count() as u64;
                let expected = gl_order(n, q);
                Ok((counted == expected && r.unit_count() as u64 == expected, format!("{counted} units, expected {expected}")))
            },
        );
    }
}
