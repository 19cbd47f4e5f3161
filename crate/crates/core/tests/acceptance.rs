//! Acceptance suite: one line per criterion, each with its own time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use hypgrp_core::creduction::{c_reduce, is_c_reduced, CReductionOutcome};
use hypgrp_core::decisions::*;
use hypgrp_core::geometry::bounds::{lemstab, v1, v2, v3};
use hypgrp_core::geometry::estimate_delta_lower_bound;
use hypgrp_core::kernel::are_conjugate;
use hypgrp_core::oracle::{validate_local_geodesics, Oracle, OracleSearch};
use hypgrp_core::words::all_letters;
use hypgrp_core::{Constants, HyperbolicContext, KProvider, Rational, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn random_word(ctx: &HyperbolicContext, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let letters: Vec<_> = all_letters(ctx.rank()).collect();
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

fn random_infinite_order(ctx: &HyperbolicContext, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    loop {
        let h = random_word(ctx, rng, max_len);
        if !ctx.is_trivial(&h) && matches!(classify_element(ctx, &h), Ok(ElementClass::InfiniteOrder { .. })) {
            return h;
        }
    }
}

fn word_problem() -> Outcome {
    let mut pairs = 0u64;
    for (ctx, n) in [(f2(), 6), (dinf(), 6), (sigma2(), 4)] {
        let words = all_words(ctx, n);
        let oracle = Oracle::new(ctx, n).map_err(|e| e.to_string())?;
        let ids: Vec<usize> =
            words.iter().map(|w| oracle.vertex(w)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for i in 0..words.len() {
            for j in i..words.len() {
                pairs += 1;
                ensure!(
                    ctx.are_equal(&words[i], &words[j]) == (ids[i] == ids[j]),
                    "disagreement on {} vs {}",
                    ctx.format(&words[i]),
                    ctx.format(&words[j])
                );
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn conjugacy() -> Outcome {
    let mut pairs = 0u64;
    let mut conjugate = 0u64;
    for ctx in [f2(), dinf()] {
        let words = all_words(ctx, 4);
        let oracle = Oracle::new(ctx, 4).map_err(|e| e.to_string())?;
        for u in &words {
            for v in &words {
                pairs += 1;
                let kernel = are_conjugate(ctx, u, v);
                let truth = oracle.conjugator(u, v);
                ensure!(
                    kernel.is_some() == truth.found().is_some(),
                    "disagreement on {} ~ {}",
                    ctx.format(u),
                    ctx.format(v)
                );
                if let Some(wit) = kernel {
                    conjugate += 1;
                    ensure!(
                        oracle.equal_unbounded(&u.conjugate_by(&wit.conjugator), v),
                        "witness for {} ~ {} fails",
                        ctx.format(u),
                        ctx.format(v)
                    );
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {conjugate} conjugate, witnesses verified"))
}

fn c_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut torsion, mut reduced) = (0, 0);
    for ctx in [f2(), dinf(), sigma2(), z3()] {
        let oracle = Oracle::new(ctx, 0).map_err(|e| e.to_string())?;
        let one = Word::empty();
        for _ in 0..500 {
            let w = random_word(ctx, &mut rng, 8);
            if ctx.is_trivial(&w) {
                continue;
            }
            match c_reduce(ctx, &w).map_err(|e| format!("{}: {e}", ctx.format(&w)))? {
                CReductionOutcome::Torsion { order } => {
                    torsion += 1;
                    ensure!(
                        oracle.equal_unbounded(&w.pow(order as i64), &one),
                        "{}^{order} is not trivial",
                        ctx.format(&w)
                    );
                    ensure!(
                        (1..order).all(|m| !oracle.equal_unbounded(&w.pow(m as i64), &one)),
                        "{} has order below {order}",
                        ctx.format(&w)
                    );
                }
                CReductionOutcome::CReduced { h1, u, n } => {
                    reduced += 1;
                    ensure!(is_c_reduced(ctx, &h1), "{} is not C-reduced", ctx.format(&h1));
                    ensure!(
                        ctx.are_equal(&h1, &w.pow(n as i64).conjugate_by(&u)),
                        "bad certificate for {}",
                        ctx.format(&w)
                    );
                }
            }
        }
    }
    Ok(format!("{torsion} torsion, {reduced} reduced"))
}

fn two_element_cap() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut hits = 0;
    for (ctx, cap) in [(f2(), 1), (dinf(), 2), (sigma2(), 1)] {
        for i in 0..200 {
            let h = random_infinite_order(ctx, &mut rng, 4);
            let w = if i % 2 == 0 {
                let g = random_word(ctx, &mut rng, 3);
                let n = rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 };
                h.pow(n).conjugate_by(&g)
            } else {
                random_word(ctx, &mut rng, 6)
            };
            let found = conjugate_into_cyclic(ctx, &w, &h)
                .map_err(|e| format!("{} into {}: {e}", ctx.format(&w), ctx.format(&h)))?;
            ensure!(found.len() <= cap, "{} into {}: {found:?}", ctx.format(&w), ctx.format(&h));
            for &n in &found {
                ensure!(
                    are_conjugate(ctx, &w, &h.pow(n)).is_some(),
                    "{} is not conjugate to {}^{n}",
                    ctx.format(&w),
                    ctx.format(&h)
                );
            }
            hits += usize::from(!found.is_empty());
        }
    }
    let d = dinf();
    let mut got = conjugate_into_cyclic(d, &w(d, "ts"), &w(d, "st")).map_err(|e| e.to_string())?;
    got.sort();
    ensure!(got == [-1, 1], "ts into <st>: {got:?}");
    Ok(format!("600 pairs, {hits} nonempty, D∞ (ts, st) -> {{-1, 1}}"))
}

fn not_in_cyclic(g: &Word, h: &Word, oracle: &Oracle) -> bool {
    (-12..=12).all(|j| !oracle.equal_unbounded(g, &h.pow(j)))
}

fn malnormality() -> Outcome {
    let (f, d) = (f2(), dinf());
    ensure!(
        malnormal_cyclic(f, &w(f, "a")).map_err(|e| e.to_string())? == MalnormalityVerdict::Malnormal,
        "<a> not malnormal"
    );

    let h = w(d, "st");
    let verdict = malnormal_cyclic(d, &h).map_err(|e| e.to_string())?;
    ensure!(verdict == MalnormalityVerdict::Witness { g: w(d, "s"), p: 1, q: -1 }, "<st>: {verdict:?}");
    let od = Oracle::new(d, 0).map_err(|e| e.to_string())?;
    ensure!(od.equal_unbounded(&h.conjugate_by(&w(d, "s")), &h.inverse()), "s·st·s⁻¹ != ts");
    ensure!(not_in_cyclic(&w(d, "s"), &h, &od), "s lies in <st>");

    let of = Oracle::new(f, 0).map_err(|e| e.to_string())?;
    let h = w(f, "aa");
    let MalnormalityVerdict::Witness { g, p, q } = malnormal_cyclic(f, &h).map_err(|e| e.to_string())? else {
        return Err("<a²> reported malnormal".into());
    };
    ensure!(of.equal_unbounded(&h.pow(p).conjugate_by(&g), &h.pow(q)), "<a²> witness fails");
    ensure!(not_in_cyclic(&g, &h, &of), "<a²> witness lies in the subgroup");

    let square_witness = f.format(&g);
    let hs = [w(f, "a"), w(f, "baB")];
    let FamilyVerdict::CrossWitness { i, j, g, p, q } = malnormal_family(f, &hs).map_err(|e| e.to_string())? else {
        return Err("family reported malnormal".into());
    };
    ensure!(i != j, "expected a cross witness, got i = j = {i}");
    ensure!(of.equal_unbounded(&hs[i].pow(p).conjugate_by(&g), &hs[j].pow(q)), "family witness fails");
    Ok(format!("<a²> via {square_witness}, family via {}", f.format(&g)))
}

fn transversals() -> Outcome {
    let (f, d) = (f2(), dinf());
    let a = w(f, "a");
    let z = centralizer_cyclic(f, &a).map_err(|e| e.to_string())?;
    ensure!(z.representatives == [Word::empty()], "Z(a) = {:?}", z.representatives);
    let oracle = Oracle::new(f, 5).map_err(|e| e.to_string())?;
    let brute = oracle.centralizer(&a);
    for g in &brute {
        ensure!(
            member_of_virtually_z(f, g, &z.representatives, &a).map_err(|e| e.to_string())?,
            "{} centralizes a but is missed",
            f.format(g)
        );
    }

    let h = w(d, "st");
    let hinv = h.inverse();
    let n = normalizer_cyclic(d, &h).map_err(|e| e.to_string())?;
    ensure!(n.representatives.len() == 2, "N(<st>) has {} representatives", n.representatives.len());
    let oracle = Oracle::new(d, 5).map_err(|e| e.to_string())?;
    for r in &n.representatives {
        let c = h.conjugate_by(r);
        ensure!(
            oracle.equal_unbounded(&c, &h) || oracle.equal_unbounded(&c, &hinv),
            "{} does not normalize",
            d.format(r)
        );
    }
    let diff = n.representatives[0].inverse().concat(&n.representatives[1]);
    ensure!(member_of_cyclic(d, &diff, &h).map_err(|e| e.to_string())?.is_none(), "representatives share a coset");
    let mut normalizing = 0;
    for g in oracle.vertices() {
        let c = h.conjugate_by(g);
        if oracle.equal_unbounded(&c, &h) || oracle.equal_unbounded(&c, &hinv) {
            normalizing += 1;
            ensure!(
                member_of_virtually_z(d, g, &n.representatives, &h).map_err(|e| e.to_string())?,
                "{} normalizes but is missed",
                d.format(g)
            );
        }
    }
    let zc = centralizer_cyclic(d, &h).map_err(|e| e.to_string())?;
    ensure!(zc.representatives == [Word::empty()], "Z(st) = {:?}", zc.representatives);
    for g in oracle.centralizer(&h) {
        ensure!(
            member_of_cyclic(d, &g, &h).map_err(|e| e.to_string())?.is_some(),
            "{} centralizes st but is missed",
            d.format(&g)
        );
    }
    Ok(format!("{} F2 and {normalizing} D∞ ball elements covered", brute.len()))
}

fn roots_check() -> Outcome {
    let f = f2();
    let h = w(f, "a").pow(12);
    let got = roots(f, &h).map_err(|e| e.to_string())?;
    let mut expected: Vec<(Word, u64)> =
        [12, 6, 4, 3, 2, 1].iter().map(|&e| (w(f, "a").pow(12 / e as i64), e)).collect();
    expected.sort_by_key(|x| std::cmp::Reverse(x.1));
    ensure!(got == expected, "roots(a¹²) = {got:?}");

    let oracle = Oracle::new(f, 0).map_err(|e| e.to_string())?;
    let line: Vec<Word> = (-12..=12).map(|j| w(f, "a").pow(j)).collect();
    let mut brute = Vec::new();
    for r in &line {
        for m in 1..=12u64 {
            if oracle.equal_unbounded(&r.pow(m as i64), &h) {
                brute.push((f.geodesic(r), m));
            }
        }
    }
    brute.sort_by_key(|x| std::cmp::Reverse(x.1));
    ensure!(brute == got, "oracle line enumeration gives {brute:?}");
    let index = centralizer_cyclic(f, &h).map_err(|e| e.to_string())?.representatives.len();
    ensure!(got.len() <= index, "{} roots exceed the index {index}", got.len());

    let ab = w(f, "ab");
    let got = roots(f, &ab).map_err(|e| e.to_string())?;
    ensure!(got == [(ab, 1)], "roots(ab) = {got:?}");
    Ok(format!("6 roots of a¹², index {index}"))
}

fn torsion_classes() -> Outcome {
    let (f, d, z) = (f2(), dinf(), z3());
    let reps = torsion_class_representatives(d).map_err(|e| e.to_string())?;
    ensure!(reps == [Word::empty(), w(d, "s"), w(d, "t")], "D∞: {reps:?}");
    let oracle = Oracle::new(d, 5).map_err(|e| e.to_string())?;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            ensure!(
                oracle.conjugator(&reps[i], &reps[j]) == OracleSearch::NoneWithinRadius,
                "D∞ classes {i}, {j} meet"
            );
        }
    }
    let reps_f = torsion_class_representatives(f).map_err(|e| e.to_string())?;
    ensure!(reps_f == [Word::empty()], "F2: {reps_f:?}");
    let reps_z = torsion_class_representatives(z).map_err(|e| e.to_string())?;
    ensure!(reps_z.len() == 3, "Z/3: {} classes", reps_z.len());
    let oracle = Oracle::new(z, 3).map_err(|e| e.to_string())?;
    for i in 0..3 {
        for j in i + 1..3 {
            ensure!(oracle.conjugator(&reps_z[i], &reps_z[j]).found().is_none(), "Z/3 classes {i}, {j} meet");
        }
    }
    Ok("D∞ 3, F2 1, Z/3 3".into())
}

fn bs_property() -> Outcome {
    let mut checked = 0u64;
    for ctx in [f2(), dinf()] {
        let oracle = Oracle::new(ctx, 4).map_err(|e| e.to_string())?;
        let ball = oracle.vertices();
        let hs: Vec<&Word> = ball
            .iter()
            .filter(|h| !h.is_empty() && matches!(classify_element(ctx, h), Ok(ElementClass::InfiniteOrder { .. })))
            .collect();
        for h in hs {
            let powers: Vec<(i64, Word)> = (-4..=4).filter(|&p| p != 0).map(|p| (p, h.pow(p))).collect();
            for a in ball {
                for (p, hp) in &powers {
                    let c = hp.conjugate_by(a);
                    for (q, hq) in &powers {
                        checked += 1;
                        if p.abs() != q.abs() {
                            ensure!(
                                !oracle.equal_unbounded(&c, hq),
                                "a={} h={} p={p} q={q}",
                                ctx.format(a),
                                ctx.format(h)
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} quadruples"))
}

fn geometry() -> Outcome {
    let zero = Rational::from_integer(0);
    for ctx in [f2(), dinf()] {
        let delta = estimate_delta_lower_bound(ctx, 4).map_err(|e| e.to_string())?;
        ensure!(delta == zero, "δ estimate {delta}");
        validate_local_geodesics(ctx, 6).map_err(|e| e.to_string())?;
    }
    let sigma = estimate_delta_lower_bound(sigma2(), 3).map_err(|e| e.to_string())?;
    ensure!(sigma == Rational::from_integer(4), "Σ2 δ estimate {sigma}, regression value 4");
    Ok(format!("F2, D∞ δ = 0; Σ2 δ ≥ {sigma}"))
}

fn bound_formulas() -> Outcome {
    let r = Rational::from_integer;
    let c = Constants::from_delta(r(0), KProvider::Tree).map_err(|e| e.to_string())?;
    ensure!(c.c == 1 && c.lambda == r(1) && c.epsilon == r(0) && c.k == r(0), "δ=0 bundle {c:?}");
    let c1 = Constants::from_delta(r(1), KProvider::Conservative).map_err(|e| e.to_string())?;
    ensure!(c1.c == 9 && c1.lambda == Rational::new(13, 5) && c1.epsilon == r(2), "δ=1 bundle {c1:?}");

    let s = |e: hypgrp_core::Error| e.to_string();
    for (h, want) in [(2, 2), (5, 5)] {
        let b = lemstab(&c, h).map_err(s)?;
        ensure!(b.exact == r(want) && b.value == want as u64, "lemstab({h}) = {b:?}");
    }
    for (wl, hl, want) in [(6, 2, 9), (2, 2, 3)] {
        let b = v1(&c, wl, hl).map_err(s)?;
        ensure!(b.exact == r(want) && b.value == want as u64, "V1({wl}, {hl}) = {b:?}");
    }
    let cap = 1_000_000;
    let b = v2(&c, 4, (2, 2, 2, 2), cap).map_err(s)?;
    ensure!(b.k1.exact == r(4) && b.m1_cap == 256 && b.k2.exact == r(258) && b.k == 258, "V2(2,2,2,2) = {b:?}");
    let b = v2(&c, 4, (1, 1, 1, 1), cap).map_err(s)?;
    ensure!(b.k1.exact == r(2) && b.m1_cap == 16 && b.k2.exact == r(18) && b.k == 18, "V2(1,1,1,1) = {b:?}");
    for (hl, uv) in [(2, 4), (1, 2)] {
        let b3 = v3(&c, 4, hl, hl, cap).map_err(s)?;
        let b2 = v2(&c, 4, (uv, uv, hl, hl), cap).map_err(s)?;
        ensure!(b3 == b2, "V3({hl}, {hl}) = {b3:?}, V2 at {uv} = {b2:?}");
    }
    Ok("lemstab, V1, V2, V3 exact".into())
}

fn centers() -> Outcome {
    let trivial = CentralizerResult::Finite { elements: vec![Word::empty()] };
    for (name, ctx) in [("F2", f2()), ("D∞", dinf())] {
        let got = center(ctx, 4).map_err(|e| e.to_string())?;
        ensure!(got == trivial, "{name}: {got:?}");
    }
    let zc = z();
    let got = center(zc, 4).map_err(|e| e.to_string())?;
    let CentralizerResult::VirtuallyZ { transversal } = &got else {
        return Err(format!("Z: {got:?}"));
    };
    let a = w(zc, "a");
    ensure!(
        transversal.representatives == [Word::empty()]
            && (zc.are_equal(&transversal.base, &a) || zc.are_equal(&transversal.base, &a.inverse())),
        "Z: {got:?}"
    );
    Ok("F2 {ε}, D∞ {ε}, Z = <a>".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "word problem vs oracle", limit: Duration::from_secs(60), run: word_problem },
        Criterion { id: 2, name: "conjugacy vs oracle", limit: Duration::from_secs(120), run: conjugacy },
        Criterion { id: 3, name: "C-reduction soundness", limit: Duration::from_secs(120), run: c_reduction },
        Criterion { id: 4, name: "at most two exponents", limit: Duration::from_secs(60), run: two_element_cap },
        Criterion { id: 5, name: "malnormality verdicts", limit: Duration::from_secs(60), run: malnormality },
        Criterion {
            id: 6,
            name: "centralizer and normalizer transversals",
            limit: Duration::from_secs(60),
            run: transversals,
        },
        Criterion { id: 7, name: "roots", limit: Duration::from_secs(60), run: roots_check },
        Criterion { id: 8, name: "torsion classes", limit: Duration::from_secs(30), run: torsion_classes },
        Criterion { id: 9, name: "p = ±q for conjugate powers", limit: Duration::from_secs(120), run: bs_property },
        Criterion { id: 10, name: "geometry validation", limit: Duration::from_secs(180), run: geometry },
        Criterion { id: 11, name: "bound formulas", limit: Duration::from_secs(1), run: bound_formulas },
        Criterion { id: 12, name: "center", limit: Duration::from_secs(30), run: centers },
    ];
    // Contexts are shared; build them before any clock starts.
    let _ = (f2(), dinf(), sigma2(), z3(), z());
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > c.limit => ("FAIL", "time limit exceeded".to_string()),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {:>2} {}: {detail} ({:.2} s, limit {} s)",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
