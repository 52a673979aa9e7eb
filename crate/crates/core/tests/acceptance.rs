//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the output is a stable
//! table. Every criterion is timed against its budget; a criterion that
//! finishes its checks but overruns the budget fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use dpbound::bounds::{
    check_witness, depth_lower_bound, expander_bound, matching_number, max_separated, mixedness_check,
    product_rectangle_cap, progress_measure_suite, random_enrichments, rectangle_bound, schnorr_measure,
    separated_check, transfer, Certificate, MeasureId, SchnorrMode,
};
use dpbound::circuit::{Cut, Measure};
use dpbound::equivalence::{agree_on_grid, decide};
use dpbound::generators::{
    build_floyd_warshall, edge_index, gen_clique, gen_fg, gen_layered_stconn, gen_perm, gen_triangle,
    random_circuit, random_graph, random_multilinear_polynomial, Graph,
};
use dpbound::oracle::{min_compute_size, min_produce_size, oracle_domain, verify_certificate, OracleValue};
use dpbound::{Circuit, ExtInt, Monomial, Polynomial, SemiringId};

const ORACLE_MAX: usize = 7;
const TERM_CAP: usize = 1 << 16;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Certificates gathered by the other criteria for the dominance check.
#[derive(Default)]
struct Pool {
    certs: Vec<(String, Polynomial, Certificate)>,
}

impl Pool {
    /// Keeps one copy per (polynomial, measure, value).
    fn add(&mut self, label: impl Into<String>, f: &Polynomial, c: &Certificate) {
        let dup = self.certs.iter().any(|(_, g, d)| d.applies_to == c.applies_to && d.value == c.value && g == f);
        if !dup {
            self.certs.push((label.into(), f.clone(), c.clone()));
        }
    }
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn run(&mut self, id: usize, name: &str, budget: Duration, body: impl FnOnce() -> Check) {
        let start = Instant::now();
        let out = body();
        let took = start.elapsed();
        let timing = format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs());
        let (ok, detail) = match out {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over time budget")),
            Err(e) => (false, e),
        };
        if !ok {
            self.failures += 1;
        }
        println!("{} [{id:>2}] {name}: {detail} ({timing})", if ok { "PASS" } else { "FAIL" });
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn triangle_schnorr(pool: &mut Pool) -> Check {
    let mut parts = Vec::new();
    for n in [2u64, 3] {
        let start = Instant::now();
        let f = gen_triangle(n as usize).map_err(err)?;
        let c = max_separated(&f, SchnorrMode::Exact).map_err(err)?;
        let dt = start.elapsed();
        ensure(c.value == n * n * n - 1, || format!("Δ_{n}: got {}, want {}", c.value, n * n * n - 1))?;
        ensure(dt < secs(10), || format!("Δ_{n} took {dt:?}"))?;
        let all: Vec<Dense> = dense_set(&f).into_iter().collect();
        let idx: Vec<usize> = (0..all.len()).collect();
        ensure(separated_naive(&all, &idx), || format!("Δ_{n} is not separated by the reference check"))?;
        pool.add(format!("Δ_{n} schnorr"), &f, &c);
        parts.push(format!("Δ_{n} = {}", c.value));
    }
    Ok(parts.join(", "))
}

fn clique_schnorr(pool: &mut Pool) -> Check {
    let mut parts = Vec::new();
    for n in [4u64, 5, 6] {
        let f = gen_clique(n as usize, 3).map_err(err)?;
        let ms: Vec<Monomial> = f.monomials().cloned().collect();
        ensure(separated_check(&f, &ms).map_err(err)?, || format!("Clique_{{{n},3}} not separated"))?;
        let all: Vec<Dense> = dense_set(&f).into_iter().collect();
        let idx: Vec<usize> = (0..all.len()).collect();
        ensure(separated_naive(&all, &idx), || format!("Clique_{{{n},3}} fails the reference check"))?;
        let c = max_separated(&f, SchnorrMode::Exact).map_err(err)?;
        let want = binom(n, 3) - 1;
        ensure(c.value == want, || format!("Clique_{{{n},3}}: got {}, want {want}", c.value))?;
        ensure(check_witness(&f, &c).map_err(err)?.ok, || "witness rejected".into())?;
        pool.add(format!("Clique_{{{n},3}} schnorr"), &f, &c);
        parts.push(format!("n={n}: {}", c.value));
    }
    Ok(parts.join(", "))
}

fn perm_rectangle(pool: &mut Pool) -> Check {
    let mut last = 0;
    for n in 2u64..=6 {
        let f = gen_perm(n as usize).map_err(err)?;
        for r in 0..=n {
            let d = f.factor_density(r).map_err(err)?;
            ensure(d == factorial(n - r), || format!("PERM_{n}: d(f,{r}) = {d}, want {}", factorial(n - r)))?;
        }
        if n < 3 {
            // the bound needs minimum degree at least 3
            continue;
        }
        let c = rectangle_bound(&f, Measure::Degree).map_err(err)?;
        let want = (n.div_ceil(3)..=2 * n / 3).map(|r| binom(n, r)).min().unwrap();
        ensure(c.value == want, || format!("PERM_{n}: rectangle {} want {want}", c.value))?;
        ensure(check_witness(&f, &c).map_err(err)?.ok, || format!("PERM_{n}: witness rejected"))?;
        pool.add(format!("PERM_{n} rectangle"), &f, &c);
        last = c.value;
    }
    ensure(last == 15, || format!("PERM_6 rectangle {last}"))?;
    Ok(format!("densities (n−r)! for n ≤ 6, PERM_6 rectangle = {last}"))
}

fn floyd_warshall() -> Check {
    let mut sizes = Vec::new();
    let mut compared = 0usize;
    for n in 2usize..=8 {
        let c = build_floyd_warshall(n).map_err(err)?;
        ensure(c.size() == n * (n - 1) * (n - 2), || format!("n={n}: {} gates", c.size()))?;
        sizes.push(c.size() as i64);
        let mut rng = ChaCha8Rng::seed_from_u64(0xF00D + n as u64);
        for trial in 0..100 {
            let mut w = vec![vec![None; n]; n];
            let mut a = vec![ExtInt::PosInf; c.n_vars()];
            for i in 0..n {
                for j in i + 1..n {
                    let v = rng.gen_range(0..11i64);
                    // 10 stands for a missing edge
                    let x = (v < 10).then_some(v);
                    w[i][j] = x;
                    w[j][i] = x;
                    a[edge_index(n, i as u32, j as u32) as usize] = x.map_or(ExtInt::PosInf, ExtInt::Fin);
                }
            }
            let got = c.eval(SemiringId::MinNat, &a).map_err(err)?;
            let want = apsp_brute(&w);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let exp = want[i][j].map_or(ExtInt::PosInf, ExtInt::Fin);
                    ensure(got[k] == exp, || format!("n={n} trial {trial} pair ({i},{j}): {} vs {exp}", got[k]))?;
                    k += 1;
                    compared += 1;
                }
            }
        }
    }
    // exact cubic: third differences of the gate counts are 3! · 1
    let d3: BTreeSet<i64> = sizes.windows(4).map(|w| w[3] - 3 * w[2] + 3 * w[1] - w[0]).collect();
    ensure(d3 == BTreeSet::from([6]), || format!("third differences {d3:?}"))?;
    Ok(format!("{compared} pair distances equal, size = n(n−1)(n−2) for n = 2..8"))
}

fn proof_domain(id: SemiringId) -> Vec<ExtInt> {
    use ExtInt::*;
    match id {
        SemiringId::MinNat => vec![Fin(0), Fin(1), PosInf],
        SemiringId::MaxNat | SemiringId::Bool => vec![Fin(0), Fin(1)],
        SemiringId::MinInt | SemiringId::MaxInt => vec![Fin(-1), Fin(0), Fin(1)],
        SemiringId::NatArith => vec![Fin(0), Fin(1), Fin(2)],
    }
}

/// A multilinear partner for `f`: unrelated, a copy with extra multiples
/// (same `lmin`), a copy with extra divisors (same `lmax`), or `f` itself.
fn partner(f: &Polynomial, rng: &mut ChaCha8Rng, seed: u64) -> Polynomial {
    let n = f.n_vars();
    let mut ms: BTreeSet<Monomial> = f.monomials().cloned().collect();
    match rng.gen_range(0..4) {
        0 => return random_multilinear_polynomial(n, rng.gen_range(1..=5), 3, seed ^ 0xABCD).unwrap(),
        1 => {
            let base: Vec<Monomial> = ms.iter().cloned().collect();
            for m in base {
                let v = rng.gen_range(0..n as u32);
                if m.exp(v) == 0 && rng.gen_bool(0.6) {
                    ms.insert(m.mul(&Monomial::var(v)).unwrap());
                }
            }
        }
        2 => {
            let base: Vec<Monomial> = ms.iter().cloned().collect();
            for m in base {
                let vars: Vec<u32> = m.vars().collect();
                if vars.len() > 1 && rng.gen_bool(0.6) {
                    let drop = vars[rng.gen_range(0..vars.len())];
                    ms.insert(Monomial::from_vars(vars.into_iter().filter(|&v| v != drop)));
                }
            }
        }
        _ => {}
    }
    Polynomial::from_monomials(n, ms).unwrap()
}

fn structure_suite() -> Check {
    let ids = [SemiringId::MinNat, SemiringId::MaxNat, SemiringId::MinInt, SemiringId::MaxInt, SemiringId::Bool];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut equal, mut unequal) = (0usize, 0usize);
    for t in 0..500u64 {
        let n = rng.gen_range(1..=4);
        let f = random_multilinear_polynomial(n, rng.gen_range(1..=5), 3, 1000 + t).map_err(err)?;
        let h = partner(&f, &mut rng, 1000 + t);
        for id in ids {
            let v = decide(&f, &h, id, None).map_err(err)?;
            ensure(v.is_equivalent() || v.is_inequivalent(), || format!("pair {t} over {id}: undecided"))?;
            let truth = agree_exhaustively(&f, &h, id, &proof_domain(id));
            ensure(v.is_equivalent() == truth, || {
                format!("pair {t} over {id}: verdict {v:?}, exhaustive {truth}: {} vs {}", f.pretty(), h.pretty())
            })?;
            if let Some(w) = v.witness() {
                ensure(eval_naive(&f, id, &w.assignment) != eval_naive(&h, id, &w.assignment), || {
                    format!("pair {t} over {id}: witness does not separate")
                })?;
            }
            if truth {
                equal += 1;
            } else {
                unequal += 1;
            }
        }
    }
    Ok(format!("2500 verdicts agree ({equal} equivalent, {unequal} not), 0 disagreements"))
}

fn union_of(parts: impl IntoIterator<Item = BTreeSet<Dense>>) -> BTreeSet<Dense> {
    parts.into_iter().flatten().collect()
}

fn decomposition_identities() -> Check {
    let (mut splits, mut cuts, mut sops) = (0usize, 0usize, 0usize);
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nv = rng.gen_range(1..=4);
        let gates = rng.gen_range(1..=12);
        let c = random_circuit(nv, gates, seed % 3 == 0, seed).map_err(err)?;
        let out = c.outputs()[0];
        let naive = produce_naive(&c);
        let f = c.produce_sets(TERM_CAP).map_err(err)?.remove(0);
        ensure(dense_set(&f) == naive[out], || format!("circuit {seed}: produce disagrees with reference"))?;

        for g in 0..c.gates().len() {
            let (p, e, rest) = c.gate_split(g, TERM_CAP).map_err(err)?;
            let whole = union_of([set_mul(&dense_set(&p), &dense_set(&e)), dense_set(&rest)]);
            ensure(whole == naive[out], || format!("circuit {seed}: split at gate {g} loses monomials"))?;
            splits += 1;
        }

        let inputs: Vec<usize> = (0..c.gates().len()).filter(|&g| c.gates()[g].is_input()).collect();
        let mut candidates = vec![Cut::Node(inputs.clone()), Cut::Node(vec![out])];
        let wires: Vec<(usize, usize)> = c
            .gates()
            .iter()
            .enumerate()
            .filter_map(|(v, g)| g.inputs().map(|(l, r)| (v, l, r)))
            .flat_map(|(v, l, r)| [(l, v), (r, v)])
            .filter(|&(u, _)| inputs.contains(&u))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        candidates.push(Cut::Edge(wires));
        for _ in 0..4 {
            let pick: Vec<usize> = (0..c.gates().len()).filter(|_| rng.gen_bool(0.4)).collect();
            candidates.push(Cut::Node(pick));
        }
        for cut in candidates {
            if !c.is_cut(&cut).map_err(err)? {
                continue;
            }
            let parts = c.cut_decompose(&cut, TERM_CAP).map_err(err)?;
            let whole = union_of(parts.iter().map(|p| set_mul(&dense_set(&p.produced), &dense_set(&p.ext))));
            ensure(whole == naive[out], || format!("circuit {seed}: cut {cut:?} loses monomials"))?;
            cuts += 1;
        }

        let m = f.min_degree();
        if matches!(m, ExtInt::Fin(d) if d >= 3) {
            let parts = c.sum_of_products_decompose(Measure::Degree, TERM_CAP).map_err(err)?;
            let whole = union_of(parts.iter().map(|p| set_mul(&dense_set(&p.a), &dense_set(&p.b))));
            ensure(whole == naive[out], || format!("circuit {seed}: sum of products loses monomials"))?;
            ensure(parts.len() <= c.n_product_gates(), || {
                format!("circuit {seed}: {} parts > {} product gates", parts.len(), c.n_product_gates())
            })?;
            let m = m.finite().unwrap() as u64;
            for p in &parts {
                ensure(3 * p.measure >= m && 3 * p.measure <= 2 * m, || format!("circuit {seed}: unbalanced part"))?;
                ensure(set_mul(&dense_set(&p.a_left), &dense_set(&p.a_right)) == dense_set(&p.a), || {
                    format!("circuit {seed}: part is not a product")
                })?;
            }
            sops += 1;
        }
    }
    Ok(format!("{splits} splits, {cuts} cuts, {sops} sum-of-products checks; 0 failures"))
}

fn homogeneous_multilinear(seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=3u32);
    let all: Vec<Vec<u32>> = (0u32..16).filter(|s| s.count_ones() == d).map(|s| (0..4).filter(|i| s >> i & 1 == 1).collect()).collect();
    loop {
        let pick: Vec<&Vec<u32>> = all.iter().filter(|_| rng.gen_bool(0.5)).collect();
        if !pick.is_empty() {
            return Polynomial::from_monomials(4, pick.into_iter().map(|m| Monomial::from_vars(m.iter().copied()))).unwrap();
        }
    }
}

fn homogeneity_transfer(pool: &mut Pool) -> Check {
    let mut sizes = BTreeSet::new();
    for t in 0..50u64 {
        let f = homogeneous_multilinear(700 + t);
        let r = min_produce_size(&f, ORACLE_MAX).map_err(err)?.size;
        let min = min_compute_size(&f, SemiringId::MinNat, ORACLE_MAX, None).map_err(err)?.size();
        let max = min_compute_size(&f, SemiringId::MaxNat, ORACLE_MAX, None).map_err(err)?.size();
        ensure(r.is_some(), || format!("{}: produce size above {ORACLE_MAX}", f.pretty()))?;
        ensure(min == r && max == r, || format!("{}: Min {min:?}, Max {max:?}, R {r:?}", f.pretty()))?;
        sizes.insert(r.unwrap());
        let s = max_separated(&f, SchnorrMode::Exact).map_err(err)?;
        pool.add(format!("homogeneous #{t} schnorr"), &f, &s);
        if t < 10 {
            for to in [MeasureId::MinSize, MeasureId::MaxSize] {
                pool.add(format!("homogeneous #{t} → {to}"), &f, &transfer(&s, &f, to).map_err(err)?);
            }
        }
    }
    Ok(format!("50 polynomials, Min = Max = R in every case, sizes {sizes:?}"))
}

fn saturation_gap(pool: &mut Pool) -> Check {
    // x = 0, y = 1, u = 2, v = 3
    let f = poly(4, &[&[0, 2], &[1, 3]]);
    let lsat = f.saturate_low().map_err(err)?;
    let shat = schnorr_measure(&f).map_err(err)?;
    ensure(shat == 1 && shat_naive(&f) == 1, || format!("ŝ(f) = {shat}"))?;

    let mut c = Circuit::builder(4);
    let xs: Vec<usize> = (0..4).map(|i| c.var(i)).collect();
    let a = c.sum(xs[0], xs[1]);
    let b = c.sum(a, xs[2]);
    let o = c.sum(b, xs[3]);
    c.set_outputs(vec![o]).map_err(err)?;
    ensure(c.size() <= 4, || "explicit circuit too large".into())?;
    let dom = oracle_domain(SemiringId::MinNat);
    ensure(agree_on_grid(&c, &lsat, SemiringId::MinNat, &dom).map_err(err)?, || "explicit circuit rejected".into())?;
    for a in grid(4, &[0, 1, 2, 3], &[ExtInt::Fin(0), ExtInt::Fin(3), ExtInt::Fin(7), ExtInt::PosInf], ExtInt::Fin(0)) {
        let got = c.eval(SemiringId::MinNat, &a).map_err(err)?[0];
        ensure(got == eval_naive(&lsat, SemiringId::MinNat, &a), || format!("explicit circuit differs at {a:?}"))?;
    }
    let min = min_compute_size(&lsat, SemiringId::MinNat, ORACLE_MAX, None).map_err(err)?.size();
    ensure(min.is_some_and(|m| m <= c.size()), || format!("oracle Min size {min:?}"))?;

    let henv = lsat.higher_envelope().map_err(err)?;
    ensure(henv.set_eq(&f), || "higher envelope of lsat f is not f".into())?;
    let s = max_separated(&henv, SchnorrMode::Exact).map_err(err)?;
    let cert = transfer(&s, &lsat, MeasureId::MaxSize).map_err(err)?;
    ensure(check_witness(&lsat, &cert).map_err(err)?.ok, || "Max certificate rejected".into())?;
    ensure(cert.value >= shat, || format!("Max certificate {} < ŝ(f)", cert.value))?;
    pool.add("lsat{xu,yv} → max-size", &lsat, &cert);
    Ok(format!("Min(lsat f) = {} ≤ {} (explicit), Max(lsat f) ≥ {} = ŝ(f)", min.unwrap(), c.size(), cert.value))
}

fn connected_sample(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.25..0.9);
    (0..)
        .map(|k| random_graph(n, p, seed.wrapping_mul(1000) + k))
        .find(|g| g.is_connected())
        .unwrap()
}

/// Every two disjoint `s`-sets are joined by an edge, by enumeration.
fn mixed_naive(g: &Graph, s: usize) -> bool {
    let n = g.n();
    let sets: Vec<u64> = (0u64..1 << n).filter(|a| a.count_ones() as usize == s).collect();
    let adj = g.adjacency_masks();
    sets.iter().all(|&a| {
        sets.iter().all(|&b| {
            a & b != 0 || (0..n).any(|v| a >> v & 1 == 1 && adj[v] & b != 0)
        })
    })
}

fn expander_suite(pool: &mut Pool) -> Check {
    let mut mixed_checks = 0;
    for t in 0..500u64 {
        let n = 2 + (t % 7) as usize;
        let g = connected_sample(n, t);
        let edges: Vec<(u32, u32)> = g.edges().collect();
        let f = gen_fg(&g).map_err(err)?;
        let count = parity_count(n, &edges);
        ensure(f.len() as u64 == count, || format!("graph {t}: |f_G| = {}, reference {count}", f.len()))?;
        ensure(count >= 1 << (n - 2), || format!("graph {t}: |f_G| = {count} < 2^{}", n - 2))?;
        let m = matching_number(&g).map_err(err)?.value;
        let d = g.max_degree() as u64;
        for s in 1..=n / 2 {
            let mixed = mixedness_check(&g, s).map_err(err)?;
            ensure(mixed == mixed_naive(&g, s), || format!("graph {t}: mixedness({s}) disagrees"))?;
            if mixed {
                // m(G) ≥ (⌊n/3⌋ − s)/(2d + 1)
                ensure(m as i64 * (2 * d as i64 + 1) >= (n / 3) as i64 - s as i64, || {
                    format!("graph {t}: m(G) = {m} below the mixedness bound at s = {s}")
                })?;
                mixed_checks += 1;
            }
        }
        if n <= 4 {
            pool.add(format!("f_G graph {t}"), &f, &expander_bound(&g).map_err(err)?);
        }
    }
    let mut rects = 0;
    for t in 0..60u64 {
        let n = 4 + (t % 6) as usize;
        let g = connected_sample(n, 9000 + t);
        let r = product_rectangle_cap(&g).map_err(err)?;
        ensure(r.violations == 0, || format!("rectangle graph {t}: {} partitions over 2^(n−m_P)", r.violations))?;
        ensure(r.max_product <= r.global_cap, || format!("rectangle graph {t}: {} > {}", r.max_product, r.global_cap))?;
        rects += r.partitions;
    }
    Ok(format!("500 graphs, {mixed_checks} mixedness bounds, 60 rectangle searches over {rects} partitions"))
}

fn depth_suite(pool: &mut Pool) -> Check {
    let mut parts = Vec::new();
    for n in [2u64, 4] {
        for d in [2u64, 4, 8] {
            let f = gen_layered_stconn(n as usize, d as usize).map_err(err)?;
            let c = depth_lower_bound(&f).map_err(err)?;
            let want = d.ilog2() as u64 * (1 + n.ilog2() as u64);
            ensure(c.value == want, || format!("layered ({n},{d}): {} want {want}", c.value))?;
            ensure(check_witness(&f, &c).map_err(err)?.ok, || format!("layered ({n},{d}): witness rejected"))?;
            pool.add(format!("layered ({n},{d}) depth"), &f, &c);
            parts.push(format!("({n},{d})={}", c.value));
        }
    }
    let p = gen_perm(4).map_err(err)?;
    let c = depth_lower_bound(&p).map_err(err)?;
    ensure(c.value >= 5, || format!("PERM_4 depth {}", c.value))?;
    pool.add("PERM_4 depth", &p, &c);
    Ok(format!("layered {}; PERM_4 ≥ {}", parts.join(" "), c.value))
}

fn oracle_dominance(pool: &Pool) -> Check {
    let (mut checked, mut skipped) = (0usize, 0usize);
    for (label, f, c) in &pool.certs {
        if f.support().len() > dpbound::oracle::MAX_VARS {
            skipped += 1;
            continue;
        }
        let r = verify_certificate(f, c, ORACLE_MAX).map_err(err)?;
        ensure(!r.violation, || format!("{label}: certificate {} above oracle {:?}", c.value, r.oracle))?;
        if r.checkable {
            if let Some(OracleValue::Exact(v)) = r.oracle {
                ensure(c.value <= v, || format!("{label}: {} > {v}", c.value))?;
            }
            checked += 1;
        } else {
            skipped += 1;
        }
    }
    ensure(checked >= 20, || format!("only {checked} cross-checks ran"))?;
    Ok(format!("{checked} cross-checks, 0 violations ({skipped} over caps)"))
}

fn progress_harness() -> Check {
    let mut gs = vec![gen_clique(4, 3).map_err(err)?, gen_perm(3).map_err(err)?];
    for s in 0..2 {
        gs.push(random_multilinear_polynomial(5, 5, 3, 40 + s).map_err(err)?);
    }
    let (mut steps, mut sums, mut prods, mut naive) = (0, 0, 0, 0);
    for (k, g) in gs.iter().enumerate() {
        let es = random_enrichments(g, 50, 77 + k as u64);
        ensure(es.len() == 50, || format!("only {} enrichments for polynomial {k}", es.len()))?;
        let rep = progress_measure_suite(g, &es).map_err(err)?;
        ensure(rep.variables_ok, || "ŝ of a variable is not 0".into())?;
        ensure(rep.violations == 0, || format!("polynomial {k}: {} violations", rep.violations))?;
        let before = shat_naive(g);
        for st in &rep.steps {
            let e = st.enrichment;
            let h = g.enrich(e.k, e.i, e.j, e.mode()).map_err(err)?;
            if h.len() <= 16 {
                let after = shat_naive(&h);
                ensure(after == st.after && before == st.before, || format!("polynomial {k}: ŝ disagrees with reference"))?;
                naive += 1;
            }
            let limit = if e.product { st.before } else { st.before + 1 };
            ensure(st.after <= limit, || format!("polynomial {k}: {e:?} raises ŝ to {}", st.after))?;
            if e.product {
                prods += 1;
            } else {
                sums += 1;
            }
            steps += 1;
        }
    }
    Ok(format!("{steps} steps ({sums} sum, {prods} product), {naive} re-checked by enumeration, 0 violations"))
}

fn main() -> ExitCode {
    let mut runner = Runner { failures: 0 };
    let mut pool = Pool::default();
    runner.run(1, "triangle separated sets", secs(20), || triangle_schnorr(&mut pool));
    runner.run(2, "clique separated sets", secs(30), || clique_schnorr(&mut pool));
    runner.run(3, "PERM densities and rectangle bound", secs(60), || perm_rectangle(&mut pool));
    runner.run(4, "Floyd–Warshall against brute-force shortest paths", secs(30), floyd_warshall);
    runner.run(5, "antichain equivalence against exhaustive evaluation", secs(300), structure_suite);
    runner.run(6, "split, cut and sum-of-products identities", secs(300), decomposition_identities);
    runner.run(7, "homogeneous multilinear: Min = Max = R", secs(600), || homogeneity_transfer(&mut pool));
    runner.run(8, "saturation gap for {xu, yv}", secs(60), || saturation_gap(&mut pool));
    runner.run(9, "expander machinery", secs(900), || expander_suite(&mut pool));
    runner.run(10, "depth bounds", secs(60), || depth_suite(&mut pool));
    runner.run(11, "oracle dominance", secs(600), || oracle_dominance(&pool));
    runner.run(12, "progress-measure harness", secs(120), progress_harness);
    if runner.failures == 0 {
        println!("acceptance: 12/12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 12 criteria failed", runner.failures);
        ExitCode::FAILURE
    }
}
