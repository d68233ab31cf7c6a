//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Lines go straight to stderr so they show up
//! without `--nocapture`.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use congmon::arith::{gcd, partition_count_u64, totient};
use congmon::gen::{completeness_threshold, forced_layer};
use congmon::monoid::extremals;
use congmon::reduce::general_indecomposables;
use congmon::verify::{any_proved_failure, Status, Tier};
use congmon::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn say(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn sol(n: u32, c: &[i64]) -> Solution {
    Solution::new(n, c).unwrap()
}

fn ac1_example_four(_: &Harness) -> Outcome {
    let im = indecomposables(4).map_err(|e| e.to_string())?;
    let listed = [
        sol(4, &[4, 0, 0]),
        sol(4, &[0, 2, 0]),
        sol(4, &[0, 0, 4]),
        sol(4, &[1, 0, 1]),
        sol(4, &[2, 1, 0]),
        sol(4, &[0, 1, 2]),
    ];
    let got: BTreeSet<&Solution> = im.elements().iter().collect();
    let want: BTreeSet<&Solution> = listed.iter().collect();
    ensure!(got == want, "IM(4) = {:?}", im.elements());
    let degrees: Vec<u64> = listed.iter().map(Solution::degree).collect();
    let mults: Vec<u64> = listed.iter().map(Solution::multiplicity).collect();
    ensure!(degrees == [4, 2, 4, 2, 3, 3], "degrees {degrees:?}");
    ensure!(mults == [1, 1, 3, 1, 1, 2], "multiplicities {mults:?}");
    Ok(())
}

fn ac2_example_nine(_: &Harness) -> Outcome {
    let group = UnitGroup::new(9).map_err(|e| e.to_string())?;
    ensure!(
        group.elements() == [1, 2, 4, 5, 7, 8],
        "units {:?}",
        group.elements()
    );
    let expected: [(u32, Vec<Vec<u32>>); 6] = [
        (1, (1..9).map(|i| vec![i]).collect()),
        (2, vec![vec![1, 2, 4, 8, 7, 5], vec![3, 6]]),
        (4, vec![vec![1, 4, 7], vec![2, 8, 5], vec![3], vec![6]]),
        (5, vec![vec![1, 5, 7, 8, 4, 2], vec![3, 6]]),
        (7, vec![vec![1, 7, 4], vec![2, 5, 8], vec![3], vec![6]]),
        (8, vec![vec![1, 8], vec![2, 7], vec![3, 6], vec![4, 5]]),
    ];
    for (g, cycles) in expected {
        let got = group.cycles(g).map_err(|e| e.to_string())?;
        ensure!(got == cycles, "sigma_{g} = {got:?}");
    }
    // Distinct counts make the coordinate shuffle readable from the output.
    let a = sol(9, &[1, 2, 3, 4, 5, 6, 7, 14]);
    let pick = |idx: [usize; 8]| -> Vec<u32> { idx.iter().map(|&i| a.counts()[i - 1]).collect() };
    let two = act(2, &a).map_err(|e| e.to_string())?;
    ensure!(
        two.counts() == pick([5, 1, 6, 2, 7, 3, 8, 4]),
        "2.A = {two}"
    );
    let four = act(4, &a).map_err(|e| e.to_string())?;
    ensure!(
        four.counts() == pick([7, 5, 3, 1, 8, 6, 4, 2]),
        "4.A = {four}"
    );
    Ok(())
}

fn ac3_example_six(h: &Harness) -> Outcome {
    let a1 = sol(6, &[1, 0, 1, 2, 0]);
    let a2 = sol(6, &[0, 2, 1, 0, 1]);
    let im = h.im(6).map_err(|e| e.to_string())?;
    for a in [&a1, &a2] {
        ensure!(im.contains(a), "{a} missing from IM(6)");
        ensure!(
            monoid::is_indecomposable(a, None) == Ok(true),
            "{a} decomposable by reachability test"
        );
        ensure!(a.multiplicity() == 2, "m({a}) = {}", a.multiplicity());
    }
    ensure!(act(5, &a1).as_ref() == Ok(&a2), "-1.A1 != A2");
    let orbit = orbit_of(&a1);
    ensure!(
        orbit.elements == vec![a2.clone(), a1.clone()],
        "orbit {:?}",
        orbit.elements
    );
    ensure!(orbit.level == 2, "level {}", orbit.level);
    Ok(())
}

fn ac4_oracle_equivalence(h: &Harness) -> Outcome {
    for n in 2..=12 {
        let sweep = h.im(n).map_err(|e| e.to_string())?;
        let oracle = brute_force_im(n).map_err(|e| e.to_string())?;
        ensure!(
            *sweep == oracle,
            "n={n}: sweep {} vs oracle {}",
            sweep.len(),
            oracle.len()
        );
    }
    Ok(())
}

fn ac5_level1_layer(h: &Harness) -> Outcome {
    for n in 4..=12u32 {
        let im = h.im(n).map_err(|e| e.to_string())?;
        let phi = totient(n as u64) as usize;
        for k in completeness_threshold(n)..=n {
            let slice = im.degree_slice(k as u64);
            let exhaustive: BTreeSet<Solution> =
                slice.iter().filter(|a| level(a) == 1).cloned().collect();
            let req = GeneratorRequest::new(n, k, GeneratorMode::FullOrbits).unwrap();
            let layer = level1_layer(&req).map_err(|e| e.to_string())?;
            let generated: BTreeSet<Solution> = layer.solutions().into_iter().collect();
            ensure!(
                generated == exhaustive,
                "n={n} k={k}: layer differs from level-1 IM(k)"
            );

            let req = GeneratorRequest::new(n, k, GeneratorMode::Mult1Only).unwrap();
            let mult1 = level1_layer(&req).map_err(|e| e.to_string())?.solutions();
            let p = partition_count_u64(n - k) as usize;
            ensure!(
                mult1.len() == p,
                "n={n} k={k}: {} mult-1, p = {p}",
                mult1.len()
            );
            let exhaustive_mult1 = slice.iter().filter(|a| a.multiplicity() == 1).count();
            ensure!(
                exhaustive_mult1 == p,
                "n={n} k={k}: IM(k) has {exhaustive_mult1} mult-1"
            );

            let Layer::Orbits(orbits) = layer else {
                return Err("orbit mode returned solutions".into());
            };
            for o in &orbits {
                ensure!(o.size == phi, "n={n} k={k}: orbit size {} != {phi}", o.size);
                let ones = o.multiplicity_one().count();
                ensure!(ones == 1, "n={n} k={k}: {ones} mult-1 members");
            }
        }
    }
    Ok(())
}

fn ac6_quadratic(h: &Harness) -> Outcome {
    for n in 2..=10 {
        let r = h.check_quadratic(n, n as u64).map_err(|e| e.to_string())?;
        ensure!(r.witnesses.is_empty(), "n={n}: {:?}", r.witnesses.first());
        ensure!(r.status == Status::ProvedAndVerified, "n={n}: {}", r.status);
        ensure!(
            r.counts["hypothesis_met"] > 0,
            "n={n}: hypothesis never met"
        );
    }
    Ok(())
}

fn ac7_identities(h: &Harness) -> Outcome {
    for n in 2..=12u32 {
        let im = h.im(n).map_err(|e| e.to_string())?;
        let group = UnitGroup::shared(n).unwrap();
        for a in im.elements() {
            let neg = group.act(n - 1, a).unwrap();
            ensure!(
                a.multiplicity() + neg.multiplicity() == a.degree(),
                "n={n}: involution identity fails for {a}"
            );
            let orbit = group.orbit_of(a).unwrap();
            let sum: u64 = orbit.elements.iter().map(Solution::multiplicity).sum();
            ensure!(
                2 * sum == a.degree() * orbit.size as u64,
                "n={n}: orbit average fails for {a}"
            );
        }
        let r = h.check_identities(n).map_err(|e| e.to_string())?;
        ensure!(
            r.status == Status::ProvedAndVerified,
            "n={n}: harness {}",
            r.status
        );
    }
    Ok(())
}

fn ac8_noether(h: &Harness) -> Outcome {
    for n in 2..=12u32 {
        let im = h.im(n).map_err(|e| e.to_string())?;
        ensure!(
            im.max_degree() == Some(n as u64),
            "n={n}: max degree {:?}",
            im.max_degree()
        );
        let top: BTreeSet<Solution> = im.degree_slice(n as u64).iter().cloned().collect();
        let coprime: BTreeSet<Solution> = (1..n)
            .filter(|&i| gcd(i as u64, n as u64) == 1)
            .map(|i| Solution::extremal(n, i).unwrap())
            .collect();
        ensure!(top == coprime, "n={n}: degree-n slice {top:?}");
        ensure!(top.len() as u64 == totient(n as u64), "n={n}: slice size");
        let flagged: BTreeSet<Solution> = extremals(n)
            .unwrap()
            .into_iter()
            .filter(|e| e.indecomposable)
            .map(|e| e.solution)
            .collect();
        ensure!(flagged == coprime, "n={n}: extremal flags");
        let r = h.check_noether(n).map_err(|e| e.to_string())?;
        ensure!(
            r.status == Status::ProvedAndVerified,
            "n={n}: harness {}",
            r.status
        );
    }
    Ok(())
}

/// Indecomposables of `sum w_i x_i = 0 (mod n)` found directly on the
/// original variables: every vector in the box `x_i <= n` (each non-zero
/// weight has `n e_i` as a solution, so generators live in this box), tested
/// against every proper sub-vector.
fn direct_indecomposables(n: u32, weights: &[i64]) -> Vec<Vec<u32>> {
    let r = weights.len();
    let ok = |x: &[u32]| {
        weights
            .iter()
            .zip(x)
            .map(|(&w, &a)| w as i128 * a as i128)
            .sum::<i128>()
            .rem_euclid(n as i128)
            == 0
    };
    let next = |v: &mut Vec<u32>, cap: &[u32]| -> bool {
        for i in 0..v.len() {
            if v[i] < cap[i] {
                v[i] += 1;
                return true;
            }
            v[i] = 0;
        }
        false
    };
    let mut out = Vec::new();
    let boxcap = vec![n; r];
    let mut x = vec![0u32; r];
    while next(&mut x, &boxcap) {
        if !ok(&x) {
            continue;
        }
        let mut b = vec![0u32; r];
        let mut decomposable = false;
        while next(&mut b, &x) {
            if b != x && ok(&b) {
                decomposable = true;
                break;
            }
        }
        if !decomposable {
            out.push(x.clone());
        }
    }
    out.sort_by_key(|v| (v.iter().map(|&a| a as u64).sum::<u64>(), v.clone()));
    out
}

fn ac9_reduction(_: &Harness) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut cases: Vec<(u32, Vec<i64>)> = vec![
        (4, vec![2, 6]),
        (4, vec![4, 1]),
        (6, vec![3, 9, 0, -3]),
        (8, vec![5, 5, 5, 2]),
        (2, vec![1]),
    ];
    for n in 2..=8u32 {
        for _ in 0..12 {
            let r = rng.gen_range(1..=4);
            let span = 2 * n as i64;
            let weights = (0..r).map(|_| rng.gen_range(-span..=span)).collect();
            cases.push((n, weights));
        }
    }
    let mut with_dup = 0;
    let mut with_zero = 0;
    for (n, weights) in &cases {
        let gc = GeneralCongruence::new(*n, weights.clone()).unwrap();
        let rm = reduce(&gc);
        with_zero += usize::from(!rm.dropped.is_empty());
        with_dup += usize::from(rm.groups.values().any(|g| g.len() > 1));
        let lifted = general_indecomposables(&gc).map_err(|e| e.to_string())?;
        ensure!(
            lifted.iter().all(|x| gc.is_solution(x)),
            "n={n} {weights:?}: unsound lift"
        );
        let direct = direct_indecomposables(*n, weights);
        ensure!(
            lifted == direct,
            "n={n} {weights:?}: lifted {lifted:?} vs direct {direct:?}"
        );
    }
    ensure!(
        with_dup > 0 && with_zero > 0,
        "sample lacks duplicate or zero weights"
    );
    Ok(())
}

fn ac10_conjecture_reports(h: &Harness) -> Outcome {
    let moduli: Vec<u32> = (2..=12).collect();
    let open = h
        .run_many(&[Check::Conjecture1, Check::Conjecture2], &moduli)
        .map_err(|e| e.to_string())?;
    ensure!(open.len() == 22, "expected 22 reports, got {}", open.len());
    for r in &open {
        ensure!(r.is_well_formed(), "malformed report {r:?}");
        ensure!(r.tier == Tier::Open, "{} tiered as proved", r.check_name);
        ensure!(
            r.status != Status::ProvedAndVerified,
            "open check marked proved"
        );
        for w in &r.witnesses {
            ensure!(
                h.reproduces(r, w) == Ok(true),
                "witness does not reproduce: {w:?}"
            );
        }
    }
    let json = serde_json::to_value(&open).unwrap();
    for item in json.as_array().unwrap() {
        for key in [
            "check_name",
            "modulus",
            "scope",
            "tier",
            "status",
            "witnesses",
            "counts",
        ] {
            ensure!(item.get(key).is_some(), "report lacks {key}");
        }
    }
    let proved_checks: Vec<Check> = Check::ALL
        .into_iter()
        .filter(|c| c.tier() == Tier::Proved && *c != Check::Quadratic)
        .collect();
    let proved = h
        .run_many(&proved_checks, &moduli)
        .map_err(|e| e.to_string())?;
    ensure!(!any_proved_failure(&proved), "a proved-tier check failed");
    let mut all = open.clone();
    all.extend(proved);
    ensure!(
        !any_proved_failure(&all),
        "conjecture reports leaked into the proved tier"
    );
    for r in open.iter().filter(|r| r.failed()) {
        say(&format!(
            "      note: {} fails at n={} ({} witnesses)",
            r.check_name,
            r.modulus,
            r.witnesses.len()
        ));
    }
    Ok(())
}

fn ac11_summary_table(h: &Harness) -> Outcome {
    let rows = h.summary_table(12).map_err(|e| e.to_string())?;
    ensure!(rows.len() == 11, "{} rows", rows.len());
    let four = &rows[2];
    ensure!(
        (
            four.n,
            four.f,
            four.p,
            four.phi,
            four.kac_bound,
            four.bound_met
        ) == (4, 6, 5, 2, 6, true),
        "row n=4: {four:?}"
    );
    for row in &rows {
        let exact = brute_force_im(row.n).map_err(|e| e.to_string())?.len() as u64;
        ensure!(
            row.f == exact,
            "n={}: F={} but oracle {}",
            row.n,
            row.f,
            exact
        );
        ensure!(row.p == partition_count_u64(row.n), "n={}: p", row.n);
        ensure!(row.phi == totient(row.n as u64), "n={}: phi", row.n);
        ensure!(row.kac_bound == row.p + row.phi - 1, "n={}: bound", row.n);
        ensure!(
            row.bound_met == (row.f >= row.kac_bound),
            "n={}: flag",
            row.n
        );
    }
    Ok(())
}

#[test]
fn acceptance_suite() {
    type Criterion = (&'static str, fn(&Harness) -> Outcome, Duration);
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        (
            "AC1  n=4 example: IM, degrees, multiplicities",
            ac1_example_four,
            secs(1),
        ),
        (
            "AC2  n=9 example: permutations and shuffles",
            ac2_example_nine,
            secs(1),
        ),
        ("AC3  n=6 example: level-2 orbit", ac3_example_six, secs(1)),
        (
            "AC4  sweep equals brute-force oracle, n=2..12",
            ac4_oracle_equivalence,
            secs(120),
        ),
        (
            "AC5  level-1 layer theorem, n=4..12",
            ac5_level1_layer,
            secs(120),
        ),
        (
            "AC6  quadratic condition, n<=10, k<=n",
            ac6_quadratic,
            secs(120),
        ),
        (
            "AC7  orbit identities on IM, n<=12",
            ac7_identities,
            secs(120),
        ),
        (
            "AC8  Noether bound and top slice, n<=12",
            ac8_noether,
            secs(120),
        ),
        (
            "AC9  reduction + lift vs direct oracle, n<=8, r<=4",
            ac9_reduction,
            secs(120),
        ),
        (
            "AC10 conjecture 1-2 reports well-formed",
            ac10_conjecture_reports,
            secs(120),
        ),
        ("AC11 summary table", ac11_summary_table, secs(120)),
    ];
    let harness = Harness::default();
    let mut failures = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&harness)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= budget {
                Ok(())
            } else {
                Err(format!("took {elapsed:?}, budget {budget:?}"))
            }
        });
        match &outcome {
            Ok(()) => say(&format!("PASS  {name}  ({elapsed:.2?})")),
            Err(why) => {
                say(&format!("FAIL  {name}  ({elapsed:.2?}): {why}"));
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn forced_generation_below_threshold_is_a_subset() {
    // Below the threshold the construction still yields genuine
    // multiplicity-1 generators, just not necessarily all of them.
    let h = Harness::default();
    for n in 4..=10u32 {
        let im = h.im(n).unwrap();
        for k in 1..completeness_threshold(n) {
            let req = GeneratorRequest::new(n, k, GeneratorMode::Mult1Only).unwrap();
            assert!(level1_layer(&req).is_err());
            for a in forced_layer(&req).unwrap().solutions() {
                assert_eq!(a.multiplicity(), 1);
                assert!(im.contains(&a), "n={n} k={k} {a}");
            }
        }
    }
}
