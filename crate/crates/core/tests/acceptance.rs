//! Acceptance suite. Runs as a plain binary (no libtest harness) so the
//! per-criterion lines are always printed; exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unicayley::cayley::{build_graph, conjunction_product, UGraph};
use unicayley::complex::{
    codim1_connected, find_shelling, independence_complex, is_shelling, pure_skeleton, ShellingOutcome,
};
use unicayley::constructions::{avoidance_partner, d_family, d_family_set, row_mix};
use unicayley::indsets::{
    greedy_extend, independence_number, is_well_covered, maximal_independent_sets, radical_saturate, Answer, Budget,
};
use unicayley::sets::{sort_canonical, VertexSet};
use unicayley::structure::{classify_gorenstein, classify_well_covered};
use unicayley::verify::{verify_paper, Scale};
use unicayley::{parse_spec, MatrixElem, Ring};

type Outcome = Result<String, String>;

type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ring(s: &str) -> Ring {
    Ring::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn graph(s: &str) -> UGraph {
    build_graph(&ring(s)).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Rank over the prime field `Z/p` by Gaussian elimination.
fn rank_mod_p(n: usize, entries: &[usize], p: usize) -> usize {
    let mut m: Vec<Vec<usize>> = entries.chunks(n).map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let inv = |a: usize| (1..p).find(|&b| a * b % p == 1).expect("prime modulus");
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        let f = inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..n {
            if r != rank && m[r][col] != 0 {
                let c = m[r][col];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x = (*x + p * p - c * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn invertible(m: &MatrixElem, p: usize) -> bool {
    rank_mod_p(m.size(), m.entries(), p) == m.size()
}

fn sub_mod(a: &MatrixElem, b: &MatrixElem, p: usize) -> MatrixElem {
    let e = a.entries().iter().zip(b.entries()).map(|(x, y)| (x + p - y) % p).collect();
    MatrixElem::from_entries(a.size(), e).unwrap()
}

fn gl_order(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

fn criterion_1() -> Outcome {
    let a2 = independence_number(&graph("M(2,GF(2))"), Budget::UNLIMITED).map_err(|e| e.to_string())?;
    let a3 = independence_number(&graph("M(2,GF(3))"), Budget::UNLIMITED).map_err(|e| e.to_string())?;
    ensure(a2 == 4 && a3 == 9, format!("alpha {a2} and {a3}, expected 4 and 9"))?;
    Ok(format!("alpha(M_2(F_2)) = {a2}, alpha(M_2(F_3)) = {a3}"))
}

fn criterion_2() -> Outcome {
    let mut cases: Vec<(u32, u64)> = (2..=5).map(|q| (1, q)).collect();
    cases.extend([(2, 2), (2, 3)]);
    let mut notes = Vec::new();
    for (n, q) in cases {
        let expected = q.pow(n * n - n) as usize;
        let sets = maximal_independent_sets(&graph(&format!("M({n},GF({q}))")), Budget::UNLIMITED)
            .map_err(|e| e.to_string())?;
        ensure(sets.iter().all(|s| s.len() == expected), format!("M_{n}(F_{q}) has a maximal set of another size"))?;
        notes.push(format!("M_{n}(F_{q}): {} sets of size {expected}", sets.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_3() -> Outcome {
    let r = ring("M(3,GF(2))");
    let g = build_graph(&r).unwrap();
    let m = greedy_extend(&g, &d_family_set(&r).unwrap()).map_err(|e| e.to_string())?;
    ensure(g.is_maximal_independent(&m), "greedy extension is not maximal")?;
    ensure(m.len() < 64, format!("size {} is not below 64", m.len()))?;
    for x in m.iter() {
        let a = r.decode_matrix(x).unwrap();
        for k in 1..=3usize {
            // (k, 2k mod 3) with 1-based indices and 0 read as 3
            let col = match (2 * k) % 3 {
                0 => 3,
                c => c,
            };
            ensure(a.get(k - 1, col - 1) == 0, format!("{a} is nonzero at ({k}, {col})"))?;
        }
    }
    Ok(format!("maximal set of size {} < 64, zero pattern holds on all elements", m.len()))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (n, q) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let f = ring(&format!("GF({q})"));
        let fam = d_family(n, &f).map_err(|e| e.to_string())?;
        let expected = n * (q.pow(n as u32 - 1) - 1) + 1;
        ensure(fam.len() == expected, format!("({n},{q}): size {} expected {expected}", fam.len()))?;
        for (i, a) in fam.iter().enumerate() {
            for b in &fam[i + 1..] {
                ensure(!invertible(&sub_mod(a, b, q), q), format!("({n},{q}): {a} - {b} invertible"))?;
            }
        }
        notes.push(format!("({n},{q}) size {expected}"));
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Outcome {
    let r = ring("M(3,GF(2))");
    let g = build_graph(&r).unwrap();
    let fam = d_family(3, &ring("GF(2)")).unwrap();
    let m = greedy_extend(&g, &d_family_set(&r).unwrap()).map_err(|e| e.to_string())?;
    let mut count = 0;
    for a in m.iter().map(|x| r.decode_matrix(x).unwrap()) {
        for d in &fam {
            for mask in 1..8usize {
                let rows: VertexSet = (0..3).filter(|b| mask >> b & 1 == 1).collect();
                let mixed = row_mix(&a, d, &rows).map_err(|e| e.to_string())?;
                for i in 0..3 {
                    let src = if rows.contains(i) { d } else { &a };
                    ensure(mixed.row(i) == src.row(i), "row_mix picked the wrong row")?;
                }
                ensure(!invertible(&mixed, 2), format!("mix of {a} with {d} on {rows} is invertible"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} row mixes over {} elements, all singular", m.len()))
}

/// Hand-written quotient maps `R -> R/J` and the quotient ring.
fn radical_case(s: &str) -> (Ring, Ring, Vec<usize>) {
    let r = ring(s);
    if let Some(m) = s.strip_prefix("Z(").and_then(|t| t.strip_suffix(')')) {
        let m: usize = m.parse().unwrap();
        let rad: usize = (2..=m).filter(|p| m.is_multiple_of(*p) && (2..*p).all(|d| p % d != 0)).product();
        let q = ring(&format!("Z({rad})"));
        let proj = (0..m).map(|x| x % rad).collect();
        (r, q, proj)
    } else {
        // T(2, F_2): keep the diagonal
        let q = ring("prod(Z(2),Z(2))");
        let proj = (0..r.order())
            .map(|x| {
                let a = r.decode_matrix(x).unwrap();
                q.from_components(&[a.get(0, 0), a.get(1, 1)]).unwrap()
            })
            .collect();
        (r, q, proj)
    }
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for s in ["Z(4)", "Z(8)", "Z(12)", "T(2,GF(2))"] {
        let (r, q, proj) = radical_case(s);
        let kernel: VertexSet = (0..r.order()).filter(|&x| proj[x] == 0).collect();
        let j = r.jacobson_radical().map_err(|e| e.to_string())?;
        ensure(j == kernel, format!("{s}: radical {j} differs from kernel {kernel}"))?;
        let mut up = maximal_independent_sets(&build_graph(&r).unwrap(), Budget::UNLIMITED).unwrap();
        let down = maximal_independent_sets(&build_graph(&q).unwrap(), Budget::UNLIMITED).unwrap();
        let mut lifted: Vec<VertexSet> = down
            .iter()
            .map(|d| {
                let lift: VertexSet = d.iter().map(|c| proj.iter().position(|&p| p == c).unwrap()).collect();
                radical_saturate(&r, &j, &lift)
            })
            .collect();
        sort_canonical(&mut up);
        sort_canonical(&mut lifted);
        ensure(up == lifted, format!("{s}: maximal sets are not the saturated lifts"))?;
        let wc = |v: &[VertexSet]| v.windows(2).all(|w| w[0].len() == w[1].len());
        ensure(wc(&up) == wc(&down), format!("{s}: well-covered verdicts differ"))?;
        notes.push(format!("{s}: {} facets", up.len()));
    }
    Ok(notes.join(", "))
}

fn check_partner(a: &MatrixElem, f: &Ring, p: usize) -> Result<(), String> {
    let b = avoidance_partner(a, f).map_err(|e| e.to_string())?;
    ensure(!invertible(&b, p), format!("partner of {a} is a unit"))?;
    ensure(invertible(&sub_mod(a, &b, p), p), format!("{a} minus its partner is singular"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for (s, p) in [("M(2,GF(2))", 2), ("M(2,GF(3))", 3)] {
        let r = ring(s);
        let f = r.matrix_base().unwrap().clone();
        for x in 1..r.order() {
            check_partner(&r.decode_matrix(x).unwrap(), &f, p)?;
            count += 1;
        }
    }
    let f3 = ring("GF(3)");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sampled = 0;
    while sampled < 500 {
        let a = MatrixElem::from_entries(3, (0..9).map(|_| rng.gen_range(0..3)).collect()).unwrap();
        if !a.is_zero() {
            check_partner(&a, &f3, 3)?;
            sampled += 1;
        }
    }
    Ok(format!("{count} exhaustive and {sampled} random matrices"))
}

fn criterion_8() -> Outcome {
    let p = ring("prod(Z(2),M(2,GF(2)))");
    let g = build_graph(&p).unwrap();
    let m2 = ring("M(2,GF(2))");
    // Γ(Z_2) = K_2, so {0} is a maximal independent set of it
    let nonunits: Vec<usize> = (1..16).filter(|&x| !invertible(&m2.decode_matrix(x).unwrap(), 2)).collect();
    let mut n_set = vec![p.from_components(&[0, 0]).unwrap(), p.from_components(&[1, 0]).unwrap()];
    n_set.extend(nonunits.iter().map(|&x| p.from_components(&[0, x]).unwrap()));
    let n_set = VertexSet::from(n_set);
    let big: VertexSet = (0..16).map(|x| p.from_components(&[0, x]).unwrap()).collect();
    ensure(n_set.len() == 11 && big.len() == 16, "unexpected witness sizes")?;
    ensure(g.is_maximal_independent(&n_set), "N is not maximal independent")?;
    ensure(g.is_maximal_independent(&big), "M x M_2(F_2) is not maximal independent")?;
    let report = is_well_covered(&g, Budget::UNLIMITED);
    ensure(report.answer == Answer::No, format!("is_well_covered said {:?}", report.answer))?;
    Ok(format!("|N| = 11, |M x M_2(F_2)| = 16, enumeration: no (alpha {})", report.alpha))
}

fn criterion_9() -> Outcome {
    for (a, b) in [("Z(2)", "Z(3)"), ("Z(2)", "M(2,GF(2))")] {
        let p = ring(&format!("prod({a},{b})"));
        let g2 = graph(b);
        let conj = conjunction_product(&graph(a), &g2);
        let perm: Vec<usize> = (0..p.order())
            .map(|x| {
                let c = p.components(x).unwrap();
                c[0] * g2.vertex_count() + c[1]
            })
            .collect();
        let relabeled = build_graph(&p).unwrap().relabel(&perm).unwrap();
        ensure(relabeled.same_edges(&conj), format!("prod({a},{b}) differs from the conjunction product"))?;
    }
    Ok("prod(Z(2),Z(3)) and prod(Z(2),M(2,GF(2))) match".into())
}

const CATALOG_EXTRA: &[&str] = &[
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
];

fn catalog() -> Vec<String> {
    let mut c: Vec<String> = (1..=16).map(|m| format!("Z({m})")).collect();
    c.extend([2, 3, 4, 5, 7, 8, 9].iter().map(|q| format!("GF({q})")));
    c.extend(CATALOG_EXTRA.iter().map(|s| s.to_string()));
    c
}

fn criterion_10() -> Outcome {
    let mut yes = 0;
    let cat = catalog();
    for s in &cat {
        let verdict = classify_well_covered(&parse_spec(s).unwrap());
        let report = is_well_covered(&graph(s), Budget::UNLIMITED);
        let enumerated = match report.answer {
            Answer::Yes => true,
            Answer::No => false,
            Answer::Inconclusive => return Err(format!("{s}: enumeration inconclusive")),
        };
        ensure(verdict.answer == enumerated, format!("{s}: classification {} vs enumeration {enumerated}", verdict.answer))?;
        yes += enumerated as usize;
    }
    Ok(format!("{} rings agree ({yes} well-covered)", cat.len()))
}

fn criterion_11() -> Outcome {
    for s in ["M(2,GF(2))", "Z(4)"] {
        let c = independence_complex(&graph(s), Budget::UNLIMITED).unwrap();
        let top = pure_skeleton(&c, c.dim().unwrap()).unwrap();
        ensure(!codim1_connected(&top).unwrap().connected, format!("{s}: top skeleton connected"))?;
    }
    for s in ["Z(2)", "prod(Z(2),Z(2))", "prod(Z(2),Z(2),Z(2))", "GF(2)", "GF(3)", "GF(4)", "GF(5)"] {
        let c = independence_complex(&graph(s), Budget::UNLIMITED).unwrap();
        match find_shelling(&c, Budget::nodes(1_000_000)).unwrap() {
            ShellingOutcome::Found { order } => ensure(is_shelling(&c, &order), format!("{s}: bad shelling"))?,
            other => return Err(format!("{s}: {other:?}")),
        }
    }
    let expected = ["Z(1)", "Z(2)", "GF(2)", "prod(Z(2),Z(2))", "prod(Z(2),Z(2),Z(2))"];
    let yes: Vec<String> =
        catalog().into_iter().filter(|s| classify_gorenstein(&parse_spec(s).unwrap()).answer).collect();
    ensure(yes == expected, format!("gorenstein yes on {yes:?}"))?;
    Ok(format!("obstructions found, 7 shellings, gorenstein exactly on {}", yes.join(" ")))
}

fn criterion_12() -> Outcome {
    let mut notes = Vec::new();
    for (n, q) in [(2u32, 2u64), (2, 3), (3, 2)] {
        let r = ring(&format!("M({n},GF({q}))"));
        let counted = (0..r.order()).filter(|&x| invertible(&r.decode_matrix(x).unwrap(), q as usize)).count() as u64;
        let formula = gl_order(n, q);
        ensure(counted == formula, format!("({n},{q}): {counted} units, formula {formula}"))?;
        ensure(r.unit_count() as u64 == formula, format!("({n},{q}): ring reports {}", r.unit_count()))?;
        notes.push(format!("|GL_{n}(F_{q})| = {formula}"));
    }
    Ok(notes.join(", "))
}

fn self_check() -> Outcome {
    let report = verify_paper(Scale::Small, 0);
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    ensure(failed.is_empty(), format!("failed: {}", failed.join(", ")))?;
    Ok(format!("{} checks", report.checks.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("1 independence number of M_2(F_q)", 10, criterion_1),
        ("2 well-covered for n <= 2", 60, criterion_2),
        ("3 refutation in M_3(F_2)", 120, criterion_3),
        ("4 reduced diagonal family", 30, criterion_4),
        ("5 row mixing", 60, criterion_5),
        ("6 radical correspondence", 30, criterion_6),
        ("7 avoidance partner", 30, criterion_7),
        ("8 product refutation", 60, criterion_8),
        ("9 conjunction product", 10, criterion_9),
        ("10 classification vs enumeration", 600, criterion_10),
        ("11 Cohen-Macaulay obstructions", 300, criterion_11),
        ("12 unit counts", 30, criterion_12),
        ("self-check harness (small)", 120, self_check),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(budget);
        let (ok, detail) = match outcome {
            Ok(d) if within => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!(
            "{} criterion {name}: {detail} [{:.2}s / {budget}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
