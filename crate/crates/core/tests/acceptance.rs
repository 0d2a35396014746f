//! End-to-end acceptance checks. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use binlcp::codes::security_parameter;
use binlcp::constructions::{
    belov_condition, decompose_deficiency, griesmer_bound, reed_muller_1, solomon_stiffler_code,
    ss_lcp_from_spec, SolomonStifflerSpec,
};
use binlcp::gf2::factorial;
use binlcp::lcppair::{
    self, build_lcp, build_lcp_padded, check_lcp_condition, exists_permutation_oracle,
    hull_shift_pair, recomputed_dim, standard_form, OracleMode,
};
use binlcp::search::{
    best_distance, d_lcp_exact_tiny, guenda_conjecture_check, lcp_security_search,
    optimal_codes_report, DlcpRoute, SearchConfig,
};
use binlcp::{BitVec, LinearCode, Permutation, Strategy};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_worked_example() -> Outcome {
    let g1 = code(&["10001110", "01010001", "00101100", "00011100"]);
    let g2 = code(&["10000010", "01000001", "00110111", "00011101"]);
    let cert = build_lcp(&g1, &g2).map_err(err)?;
    ensure!(
        cert.final_dim == 0 && cert.verified,
        "pipeline final_dim {}",
        cert.final_dim
    );
    ensure!(
        cert.check(&g1, &g2).map_err(err)?,
        "pipeline certificate does not re-verify"
    );
    // (c1,…,c8) ↦ (c3,c1,c2,c5,c4,c6,c7,c8)
    let sigma = Permutation::from_images(vec![1, 2, 0, 4, 3, 5, 6, 7]).map_err(err)?;
    let moved = g2.generator().apply_permutation(&sigma).map_err(err)?;
    ensure!(
        moved.column(0) == g2.generator().column(2),
        "σ convention mismatch"
    );
    let permuted = g2.permute(&sigma).map_err(err)?;
    let direct = naive_intersection_dim(&g1, &permuted.dual());
    ensure!(
        direct == 0,
        "given σ leaves intersection dimension {direct}"
    );
    ensure!(
        recomputed_dim(&g1, &g2, &sigma).map_err(err)? == 0,
        "recomputed dim nonzero"
    );
    Ok(format!(
        "pipeline σ = {:?}, given σ verified",
        one_based(&cert.sigma)
    ))
}

fn one_based(p: &Permutation) -> Vec<usize> {
    p.images().iter().map(|x| x + 1).collect()
}

fn c2_hull_example() -> Outcome {
    let c = code(&["1001101", "0101011", "0010111"]);
    ensure!(c.hull().k() == 3, "code is not self-orthogonal");
    let g = c.generator().clone();
    // σ₁ cycles the first three coordinates: c1→c2→c3→c1.
    let sigma1 = Permutation::from_images(vec![1, 2, 0, 3, 4, 5, 6]).map_err(err)?;
    let g_sigma1 = g.select_columns(&[2, 0, 1, 3, 4, 5, 6]).map_err(err)?;
    ensure!(
        g.apply_permutation(&sigma1).map_err(err)? == g_sigma1,
        "σ₁ convention mismatch"
    );
    let rank = g.mul_transpose(&g_sigma1).map_err(err)?.rank();
    ensure!(rank == 2, "rank(G σ₁(G)ᵀ) = {rank}");

    let shifted_dual = LinearCode::from_generator(&g_sigma1).dual();
    let meet: HashSet<BitVec> = codewords(&c)
        .into_iter()
        .filter(|w| shifted_dual.contains(w))
        .collect();
    let expected: HashSet<BitVec> = ["0000000", "1110001"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    ensure!(meet == expected, "intermediate intersection {meet:?}");

    let sigma2 = Permutation::transposition(7, 2, 3).map_err(err)?;
    let sigma = sigma2.compose(&sigma1).map_err(err)?;
    ensure!(
        sigma.images() == [1, 3, 0, 2, 4, 5, 6],
        "σ₂σ₁ = {:?}",
        sigma.images()
    );
    let fin = naive_intersection_dim(&c, &c.permute(&sigma).map_err(err)?.dual());
    ensure!(fin == 0, "σ₂σ₁ leaves dimension {fin}");

    let cert = hull_shift_pair(&c, 0).map_err(err)?;
    ensure!(
        cert.final_dim == 0 && cert.trace.len() == 2,
        "pipeline trace {:?}",
        cert.trace
    );
    let p1 = cert.trace[0].mv.to_permutation(7).map_err(err)?;
    let r1 = g
        .mul_transpose(&g.apply_permutation(&p1).map_err(err)?)
        .map_err(err)?
        .rank();
    let mid: HashSet<BitVec> = codewords(&c)
        .into_iter()
        .filter(|w| c.permute(&p1).unwrap().dual().contains(w))
        .collect();
    ensure!(
        p1 == sigma1 && r1 == 2 && mid == expected,
        "pipeline intermediate differs"
    );
    ensure!(
        cert.check(&c, &c).map_err(err)?,
        "pipeline certificate does not re-verify"
    );
    Ok(format!("pipeline σ = {:?}", one_based(&cert.sigma)))
}

fn c3_characterization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut obstructed = 0;
    for t in 0..500 {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..n);
        let (c1, c2) = match t % 4 {
            0 => (
                random_code_with_one(&mut rng, n, k),
                random_even_code(&mut rng, n, k),
            ),
            1 => (
                random_even_code(&mut rng, n, k),
                random_code_with_one(&mut rng, n, k),
            ),
            _ => (random_code(&mut rng, n, k), random_code(&mut rng, n, k)),
        };
        let built = build_lcp(&c1, &c2);
        if let Ok(cert) = &built {
            ensure!(
                cert.check(&c1, &c2).map_err(err)?,
                "pair {t}: certificate fails"
            );
        }
        // 1 ∈ C1 ∩ C2⊥ tested on the codeword sets directly.
        let one = BitVec::ones(n);
        let c2d = c2.dual();
        let c1d = c1.dual();
        let blocked = (codewords(&c1).contains(&one) && codewords(&c2d).contains(&one))
            || (codewords(&c2).contains(&one) && codewords(&c1d).contains(&one));
        let oracle =
            exists_permutation_oracle(&c1, &c2, 0, OracleMode::Exhaustive, Strategy::default())
                .map_err(err)?;
        obstructed += usize::from(blocked);
        ensure!(
            built.is_ok() == !blocked && oracle.is_some() == !blocked,
            "pair {t} (n={n}, k={k}): build {} / condition {} / oracle {}",
            built.is_ok(),
            !blocked,
            oracle.is_some()
        );
        ensure!(
            check_lcp_condition(&c1, &c2).is_ok() == !blocked,
            "pair {t}: condition check"
        );
        if let Some(p) = oracle {
            ensure!(
                recomputed_dim(&c1, &c2, &p).map_err(err)? == 0,
                "pair {t}: oracle witness"
            );
        }
    }
    Ok(format!(
        "500 pairs, {obstructed} obstructed, 0 discrepancies"
    ))
}

fn c4_padded_totality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for t in 0..1000 {
        let n = rng.gen_range(2..=12);
        let k = rng.gen_range(1..n);
        let (c1, c2) = match t % 3 {
            0 => (
                random_code_with_one(&mut rng, n, k),
                random_even_code(&mut rng, n, k),
            ),
            _ => (random_code(&mut rng, n, k), random_code(&mut rng, n, k)),
        };
        let cert = build_lcp_padded(&c1, &c2).map_err(|e| format!("pair {t}: {e}"))?;
        ensure!(
            cert.final_dim == 0 && cert.padded,
            "pair {t}: final_dim {}",
            cert.final_dim
        );
        ensure!(
            cert.check(&c1, &c2).map_err(err)?,
            "pair {t}: certificate fails"
        );
    }
    Ok("1000 padded pairs, all reach dimension 0".into())
}

fn c5_small_dlcp() -> Outcome {
    let cfg = SearchConfig::default();
    let mut notes = Vec::new();
    for (k, d_l, n_optimal) in [(2usize, 2usize, None), (3, 4, Some(30u64))] {
        let n = 1 << k;
        let dim = k + 1;
        ensure!(
            best_distance(n, dim, &cfg).map_err(err)? == d_l,
            "d_L({n},{dim}) ≠ {d_l}"
        );
        let report = optimal_codes_report(n, dim, d_l, &cfg).map_err(err)?;
        ensure!(
            report.all_even_like_with_one(),
            "({n},{dim}): counter-witness found"
        );
        ensure!(report.with_distance > 0, "({n},{dim}): no optimal codes");
        if let Some(expected) = n_optimal {
            ensure!(report.scanned == 200787, "scanned {}", report.scanned);
            // Independent count: distinct coordinate permutations of R(1,3).
            let rm = reed_muller_1(k);
            let orbit: HashSet<LinearCode> = (0..factorial(n))
                .map(|r| rm.permute(&Permutation::unrank(n, r)).unwrap())
                .collect();
            ensure!(
                orbit.len() as u64 == expected && report.with_distance == expected,
                "optimal count {} vs orbit {}",
                report.with_distance,
                orbit.len()
            );
        }
        ensure!(
            lcp_security_search(n, dim, d_l, &cfg)
                .map_err(err)?
                .is_none(),
            "({n},{dim}): a code with 1 outside its hull reaches d_L"
        );
        let r = d_lcp_exact_tiny(n, dim, &cfg).map_err(err)?;
        ensure!(
            r.d_lcp == d_l - 1 && r.route == DlcpRoute::PuncturedOptimal,
            "d_LCP({n},{dim}) = {}",
            r.d_lcp
        );
        ensure!(
            r.certificate.verified && r.certificate.final_dim == 0,
            "certificate not verified"
        );
        let meet = naive_intersection_dim(&r.code, &r.partner);
        let sp = security_parameter(&r.code, &r.partner).map_err(err)?;
        ensure!(
            meet == 0 && r.code.k() + r.partner.k() == n && sp == d_l - 1,
            "emitted pair: meet {meet}, security {sp}"
        );
        ensure!(
            naive_min_distance(&r.code) == d_l - 1,
            "pair code distance differs by enumeration"
        );
        notes.push(format!("d_LCP({n},{dim})={}", r.d_lcp));
    }
    Ok(notes.join(", "))
}

fn c6_guenda() -> Outcome {
    let r = guenda_conjecture_check(8, 4, 4, 4, 4, &SearchConfig::default()).map_err(err)?;
    ensure!(
        r.codes1 == 30 && r.codes2 == 30,
        "found {} / {} codes",
        r.codes1,
        r.codes2
    );
    ensure!(
        r.exists(0) == Some(false),
        "a 0-intersection pair was found"
    );
    ensure!(r.exists(4) == Some(true), "no identical pair found");
    let summary: Vec<String> = r
        .by_ell
        .iter()
        .map(|(l, w)| format!("ℓ={l}:{}", if w.is_some() { "yes" } else { "no" }))
        .collect();
    Ok(summary.join(" "))
}

fn c7_solomon_stiffler() -> Outcome {
    let mut cases = 0;
    for k in 2..=5usize {
        let half = 1usize << (k - 1);
        for d in half + 1..=3 * half {
            let (s, u) = decompose_deficiency(k, d);
            if !belov_condition(s, k, &u) {
                continue;
            }
            let ctx = |e: String| format!("k={k}, d={d}: {e}");
            let spec = SolomonStifflerSpec::new(k, d).map_err(err).map_err(ctx)?;
            let ss = solomon_stiffler_code(&spec).map_err(err).map_err(ctx)?;
            let c = &ss.code;
            let n = griesmer_bound(k, d);
            ensure!(
                c.n() == n && c.k() == k && naive_min_distance(c) == d,
                "k={k}, d={d}: parameters [{}, {}]",
                c.n(),
                c.k()
            );
            // Anticode law on the unreduced generators, message by message.
            for m in 1u64..1 << k {
                let msg = BitVec::from_words(k, &[m]);
                let w = ss
                    .generator
                    .transpose()
                    .mul_vec(&msg)
                    .map_err(err)?
                    .weight()
                    + ss.anticode.transpose().mul_vec(&msg).map_err(err)?.weight();
                ensure!(
                    w == s * half,
                    "k={k}, d={d}: anticode weight {w} for message {m}"
                );
            }
            ensure!(
                !codewords(c).iter().any(BitVec::is_all_one),
                "k={k}, d={d}: 1 ∈ C"
            );
            let lcp = ss_lcp_from_spec(&spec).map_err(err).map_err(ctx)?;
            let sp = security_parameter(&lcp.c1, &lcp.c2).map_err(err)?;
            ensure!(
                lcp.certificate.check(c, c).map_err(err)? && lcp.certificate.final_dim == 0,
                "k={k}, d={d}: certificate fails"
            );
            ensure!(
                lcp.c1.intersection(&lcp.c2).map_err(err)?.k() == 0 && sp == d,
                "k={k}, d={d}: security {sp}"
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} Belov-feasible (k, d) pairs"))
}

fn c8_rank_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let mut counts = [0usize; 4];

    while counts[0] < 1000 || counts[1] < 1000 {
        let n = rng.gen_range(2..=10);
        let k1 = rng.gen_range(1..=n);
        let k2 = if rng.gen() { k1 } else { rng.gen_range(1..=n) };
        let c1 = random_code(&mut rng, n, k1);
        let c2 = random_code(&mut rng, n, k2);
        let via_rank = k1
            - c1.generator()
                .mul_transpose(c2.generator())
                .map_err(err)?
                .rank();
        let explicit = naive_intersection_dim(&c1, &c2.dual());
        ensure!(via_rank == explicit, "rank formula: {via_rank} vs {explicit}");
        counts[0] += 1;
        if k1 == k2 {
            let other = naive_intersection_dim(&c2, &c1.dual());
            ensure!(explicit == other, "symmetry: {explicit} vs {other}");
            counts[1] += 1;
        }
    }

    while counts[2] < 1000 {
        let n = rng.gen_range(2..=12);
        let (ra, cb) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_matrix(&mut rng, ra, n);
        let b = random_matrix(&mut rng, n, cb);
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut cols: Vec<usize> = (0..n).collect();
        cols.swap(i, j);
        let lhs = a
            .select_columns(&cols)
            .map_err(err)?
            .multiply(&b)
            .map_err(err)?;
        let mut col = a.column(i);
        col.xor_assign(&a.column(j));
        let mut row = b.row_vec(i);
        row.xor_assign(&b.row_vec(j));
        let mut rhs = a.multiply(&b).map_err(err)?;
        for r in col.ones_iter() {
            for c in row.ones_iter() {
                let v = rhs.get(r, c);
                rhs.set(r, c, !v);
            }
        }
        ensure!(lhs == rhs, "transposition identity fails for ({i}, {j})");
        counts[2] += 1;
    }

    while counts[3] < 1000 {
        let n = rng.gen_range(3..=12);
        let k = rng.gen_range(1..n);
        let c = random_code(&mut rng, n, k);
        let h = c.hull().k();
        if h == 0 {
            continue;
        }
        let sf = standard_form(&c, &c).map_err(err)?;
        let g = &sf.g2;
        for i in 1..=h {
            // π_i: coordinate t moves to t+1 for t < i−1, coordinate i−1 to 0.
            let mut cols: Vec<usize> = (0..n).collect();
            cols[0] = i - 1;
            for (t, col) in cols.iter_mut().enumerate().take(i).skip(1) {
                *col = t - 1;
            }
            let shifted = g.select_columns(&cols).map_err(err)?;
            let rank = g.mul_transpose(&shifted).map_err(err)?.rank();
            ensure!(
                rank == k - h + i - 1,
                "hull shift: rank {rank}, k={k}, h={h}, i={i}"
            );
            ensure!(
                lcppair::shift_rank(&sf, i).map_err(err)? == rank,
                "library shift rank differs"
            );
        }
        counts[3] += 1;
    }
    Ok(format!(
        "instances: rank formula {}, symmetry {}, transposition {}, hull shift {}",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1 two-code worked example",
            c1_worked_example,
            Duration::from_secs(1),
        ),
        (
            "2 self-orthogonal worked example",
            c2_hull_example,
            Duration::from_secs(1),
        ),
        (
            "3 LCP characterization vs oracle",
            c3_characterization,
            Duration::from_secs(300),
        ),
        (
            "4 padded totality",
            c4_padded_totality,
            Duration::from_secs(60),
        ),
        (
            "5 d_LCP for k = 2, 3",
            c5_small_dlcp,
            Duration::from_secs(120),
        ),
        (
            "6 [8,4,4] intersection pairs",
            c6_guenda,
            Duration::from_secs(120),
        ),
        (
            "7 Solomon-Stiffler LCPs",
            c7_solomon_stiffler,
            Duration::from_secs(300),
        ),
        ("8 rank laws", c8_rank_laws, Duration::from_secs(120)),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
