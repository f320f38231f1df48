//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qlab::rst::cycle_overhang;
use qlab::symbolic::StopReason;
use qlab::{
    abc_profile, behavior_tree, congruence_check, evaluate, is_exceptional, qc_pattern_check,
    qt_pattern_check, symbolic_extend, verify_against_bruteforce, Affine, BigInt, Convention,
    Hypotheses, InitialCondition, NConstraint, NodeKind, SequenceStatus,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn plain(n: usize) -> InitialCondition {
    InitialCondition::identity(n)
}

fn zero_ext(n: usize) -> InitialCondition {
    InitialCondition::zero_extended_identity(n)
}

fn death_length_law() -> Verdict {
    let start = Instant::now();
    for (range, extra) in [(21..=200usize, 28), (14..=20, 32)] {
        for n in range {
            let q = evaluate::<i64>(&plain(n), n + 100).map_err(|e| e.to_string())?;
            ensure!(
                q.len() == n + extra && q.status() == SequenceStatus::Died { at_index: n + extra + 1 },
                "N={n}: {} terms, {}",
                q.len(),
                q.status()
            );
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(5), "took {took:?}");
    Ok(format!("N in 14..=200 in {:.2?}", took))
}

fn spot_values() -> Verdict {
    for (n, index, value) in [(8usize, 420usize, 430i64), (11, 199, 206), (12, 69, 77)] {
        let q = evaluate::<i64>(&plain(n), 1_000_000).map_err(|e| e.to_string())?;
        ensure!(q.term(index) == Some(&value), "Q_{n}({index}) = {:?}", q.term(index));
        ensure!(
            matches!(q.status(), SequenceStatus::Died { .. }),
            "Q_{n} is {}",
            q.status()
        );
    }
    Ok("Q_8(420)=430, Q_11(199)=206, Q_12(69)=77, all die".into())
}

fn plain_prefix() -> Verdict {
    let expected = common::first_terms_plain();
    let p = symbolic_extend(Convention::Plain, NConstraint::at_least(14), 28).map_err(|e| e.to_string())?;
    ensure!(p.terms.len() == 28, "{} terms", p.terms.len());
    ensure!(p.stop_reason == StopReason::Completed, "{:?}", p.stop_reason);
    for (t, &(offset, a, b, bound)) in p.terms.iter().zip(&expected) {
        ensure!(
            t.offset == offset && t.value == Affine::new(a, b) && t.min_valid_n == bound,
            "offset {offset}: got {} (N>={}), want {} (N>={bound})",
            t.value,
            t.min_valid_n,
            Affine::new(a, b)
        );
    }
    ensure!(p.overall_min_valid_n() == Some(13), "overall {:?}", p.overall_min_valid_n());

    let q = symbolic_extend(Convention::Plain, NConstraint::between(14, 20), 40).map_err(|e| e.to_string())?;
    let tail: Vec<Affine> = q.terms[28..].iter().map(|t| t.value).collect();
    let want = [
        Affine::constant(27),
        Affine::constant(24),
        Affine::constant(12),
        Affine::new(2, 19),
    ];
    ensure!(tail == want, "offsets 29.. = {tail:?}");
    ensure!(
        matches!(q.stop_reason, StopReason::SymbolicDeath { offset: 33, .. }),
        "{:?}",
        q.stop_reason
    );
    Ok("28 terms and bounds, N>=13 overall; 14<=N<=20 gives 27, 24, 12, 2N+19 then dies".into())
}

fn zero_extended_sporadic() -> Verdict {
    let p = symbolic_extend(Convention::ZeroExtended, NConstraint::at_least(35), 34)
        .map_err(|e| e.to_string())?;
    ensure!(p.terms.len() == 34, "{} terms, {:?}", p.terms.len(), p.stop_reason);
    for (t, &(_, a, b, _)) in p.terms.iter().zip(&common::first_terms_plain()) {
        ensure!(t.value == Affine::new(a, b), "offset {}: {}", t.offset, t.value);
    }
    let got: Vec<Affine> = p.terms[28..].iter().map(|t| t.value).collect();
    let want = [
        Affine::new(1, 6),
        Affine::constant(24),
        Affine::constant(32),
        Affine::new(2, 4),
        Affine::constant(3),
        Affine::constant(32),
    ];
    ensure!(got == want, "offsets 29..34 = {got:?}");
    Ok("N+6, 24, 32, 2N+4, 3, 32".into())
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut terms = 0;
    for n in 35..=500i64 {
        if is_exceptional(n) {
            continue;
        }
        let r = verify_against_bruteforce(n, 200_000).map_err(|e| format!("N={n}: {e}"))?;
        ensure!(r.exact(), "N={n}: {r:?}");
        checked += 1;
        terms += r.matched_through;
    }
    Ok(format!(
        "{checked} values of N, {terms} terms, 0 mismatches in {:.2?}",
        start.elapsed()
    ))
}

fn class0_tails() -> Verdict {
    let table = common::final_terms_class0();
    let mut ns = vec![121i64];
    let mut deeper = None;
    for n in 118..2000i64 {
        let (a, _, c) = common::profile_i128(n as i128, 4);
        if c[c.len() - 1] != 0 || n == 121 {
            continue;
        }
        if a.len() > 2 && deeper.is_none() {
            deeper = Some(n);
        } else if ns.len() < 3 {
            ns.push(n);
        }
    }
    ns.extend(deeper);
    for &n in &ns {
        let (a, b, c) = common::profile_i128(n as i128, 4);
        let j = c.len();
        let (aj, aj1, bj) = (a[j], a[j - 1], b[j - 1]);
        ensure!((aj - aj1 - 2) % 5 == 0, "N={n}: gap not divisible");
        let d = aj * ((aj - aj1 - 2) / 5);
        let base = aj as usize;
        let q = evaluate::<i64>(&zero_ext(n as usize), base + 1000).map_err(|e| e.to_string())?;
        ensure!(
            q.len() == base + 160 && q.status() == SequenceStatus::Ended { at_index: base + 161 },
            "N={n}: {} terms, {}",
            q.len(),
            q.status()
        );
        for &(offset, [cd, ca, cb], k) in &table {
            let want = cd as i128 * d + ca as i128 * aj + cb as i128 * bj + k as i128;
            let got = *q.term(base + offset).unwrap() as i128;
            ensure!(got == want, "N={n}: Q(A_j+{offset}) = {got}, table {want}");
        }
        ensure!(q.term(base + 160) == Some(&0), "N={n}: last term");
    }
    Ok(format!("N in {ns:?}"))
}

fn rst_interleaving() -> Verdict {
    let r = qt_pattern_check(&[], 9, 6, 20_000, Hypotheses::Enforce).map_err(|e| e.to_string())?;
    ensure!(r.holds() && r.holds_through_k == 20_000, "{r:?}");
    let bad = qt_pattern_check(&[], 8, 6, 20, Hypotheses::Relax).map_err(|e| e.to_string())?;
    let v = bad.first_violation.ok_or("lambda = 8 shows no violation")?;
    ensure!(v.index <= 60, "first violation at {}", v.index);
    Ok(format!(
        "lambda=9 holds for k<=20000; lambda=8 breaks at index {}",
        v.index
    ))
}

fn chunk_persistence() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5c7c);
    for _ in 0..50 {
        let k0 = rng.gen_range(0..=12usize);
        let lambda = rng.gen_range(k0 as i64 + 6..=k0 as i64 + 80);
        let mu_min = k0 as i64 + 7 - lambda;
        let mu = rng.gen_range(mu_min..=mu_min + 100);
        let prefix: Vec<i64> = (0..k0).map(|_| rng.gen_range(-50..=50)).collect();
        let nu = ((k0 as i64 + 4 - lambda).rem_euclid(5) - 1).max(0);
        let last = (lambda + nu) as usize;

        let mut ic = prefix.clone();
        ic.extend([mu, 5, lambda, 3]);
        let ic = InitialCondition::new(ic, true).unwrap();
        let q = evaluate::<i64>(&ic, last + 10).map_err(|e| e.to_string())?;
        for i in k0 + 1..=last {
            let off = i - k0;
            let (k, r) = ((off / 5) as i64, off % 5);
            let want = [5, lambda * k + mu, 5, lambda, 3][r];
            ensure!(
                q.term(i) == Some(&want),
                "K={k0} lambda={lambda} mu={mu}: index {i} is {:?}, want {want}",
                q.term(i)
            );
        }
        let rep = qc_pattern_check(&prefix, mu, lambda, 1, Hypotheses::Enforce).map_err(|e| e.to_string())?;
        ensure!(
            rep.holds() && rep.nu == nu && rep.guaranteed_through == last && cycle_overhang(k0, lambda) == nu,
            "K={k0} lambda={lambda} mu={mu}: {rep:?}"
        );
    }
    Ok("50 random (K, lambda, mu) triples".into())
}

fn congruences() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0xc0de);
    let mut tested = 0;
    let mut by_j = [0usize; 5];
    while tested < 1000 {
        let n = rng.gen_range(1..=1_000_000i64);
        let p = abc_profile(n, 4).map_err(|e| e.to_string())?;
        let Some(j) = p.j() else { continue };
        for m in 1..=3 {
            ensure!(congruence_check(n, m) == Ok(true), "N={n} multiplier {m}");
        }
        by_j[j] += 1;
        tested += 1;
    }
    Ok(format!("1000 N, j=1..4 counts {:?}", &by_j[1..]))
}

fn tree_levels() -> Verdict {
    let t = behavior_tree(3).map_err(|e| e.to_string())?;
    let label = |digits: &str| -> String {
        match t.find(digits).map(|n| n.kind) {
            Some(NodeKind::Leaf { class }) => format!("{digits}:{class}"),
            Some(_) => digits.to_string(),
            None => format!("{digits}?"),
        }
    };
    let levels: [&[&str]; 3] = [
        &["0:4", "1:0", "2", "3:2", "4:3"],
        &["02:2", "12:0", "22:3", "32", "42:4"],
        &["032:4", "132:2", "232:0", "332:3", "432"],
    ];
    for (depth, want) in levels.iter().enumerate() {
        let got: Vec<String> = t.level(depth + 1).iter().map(|n| label(&n.digits)).collect();
        ensure!(got == *want, "level {}: {got:?}", depth + 1);
    }
    let leaf = t.traverse(&BigInt::from(42));
    ensure!(
        leaf.digits == "132" && leaf.kind == NodeKind::Leaf { class: 2 },
        "42 reaches {:?}",
        leaf
    );
    Ok("levels 1-3 and N=42 -> 132:2".into())
}

fn long_lives() -> Verdict {
    let q = evaluate::<i64>(&InitialCondition::new(vec![1, 1], false).unwrap(), 10_000_000)
        .map_err(|e| e.to_string())?;
    ensure!(q.status() == SequenceStatus::Alive, "<1,1>: {}", q.status());
    for n in [4, 5, 6, 7, 9, 10, 13] {
        let q = evaluate::<i64>(&plain(n), 1_000_000).map_err(|e| e.to_string())?;
        ensure!(q.status() == SequenceStatus::Alive, "Q_{n}: {}", q.status());
    }
    Ok("<1,1> alive through 10^7; Q_4..Q_13 sample alive through 10^6".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("death-length law", death_length_law),
        ("spot values", spot_values),
        ("plain symbolic prefix", plain_prefix),
        ("zero-extended sporadic terms", zero_extended_sporadic),
        ("predictor vs brute force", oracle_equivalence),
        ("classification-0 tails", class0_tails),
        ("R/S/T interleaving", rst_interleaving),
        ("period-5 chunk persistence", chunk_persistence),
        ("profile congruences", congruences),
        ("classification tree", tree_levels),
        ("bounded long-life checks", long_lives),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        match check() {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(why) => {
                println!("criterion {id:>2} FAIL  {name}: {why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
