//! Acceptance criteria. Prints one PASS/FAIL line per criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wadge::diffhier::{self, RankSet};
use wadge::engine::{self, LevelKind, RenderWindow, WadgeInvariant};
use wadge::oracle::{self, GeneratorConfig, TermFilter};
use wadge::ordinal::{ExtOrdinal, Ordinal};
use wadge::space::{self, parse_term, CbType, Degree, SpaceTerm};

type Check = Result<String, String>;

fn t(s: &str) -> SpaceTerm {
    parse_term(s).unwrap()
}

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn e(s: &str) -> ExtOrdinal {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inv_of(s: &str) -> WadgeInvariant {
    engine::wadge_invariant(&t(s)).unwrap()
}

fn invariant_golden_set() -> Check {
    let big = WadgeInvariant { alpha: ExtOrdinal::BigTheta, theta: ExtOrdinal::BigTheta };
    let cantor_like = WadgeInvariant { alpha: e("0"), theta: ExtOrdinal::BigTheta };
    ensure(inv_of("N") == big, || "Baire".into())?;
    ensure(inv_of("w*C") == big, || "w*C".into())?;
    ensure(engine::same_hierarchy(&t("N"), &t("w*C")).unwrap(), || "same(N, w*C)".into())?;
    ensure(inv_of("C") == cantor_like, || "Cantor".into())?;
    ensure(inv_of("sum(w*1, C)") == cantor_like, || "w (+) C".into())?;
    ensure(engine::theta_of(&t("1")).unwrap() == e("2"), || "theta(1)".into())?;
    Ok("5 spaces".into())
}

fn y_z_dichotomy() -> Check {
    for a in ["w", "w*2", "w^2"] {
        let alpha = o(a);
        let y = SpaceTerm::Y(alpha.clone());
        let z = SpaceTerm::Z(alpha.clone());
        ensure(engine::level_kind(&y, &alpha).unwrap() == LevelKind::SelfdualDegree, || format!("Y({a}) kind"))?;
        ensure(engine::level_kind(&z, &alpha).unwrap() == LevelKind::NonselfdualPair, || format!("Z({a}) kind"))?;
        ensure(space::cb_rank(&y).unwrap() == alpha, || format!("rank Y({a})"))?;
        let simple_type = CbType { rank: alpha.successor(), degree: Degree::Finite(1) };
        ensure(space::cb_type(&z).unwrap() == simple_type, || format!("type Z({a})"))?;
        ensure(space::comp_rank(&y).unwrap() == alpha, || format!("comp rank Y({a})"))?;
        ensure(space::comp_rank(&z).unwrap() == alpha, || format!("comp rank Z({a})"))?;
    }
    Ok("alpha in {w, w*2, w^2}".into())
}

/// Levels of `t` to inspect: every listed level below theta, or below `w^2*3` when theta is big.
fn sample_levels(t: &SpaceTerm) -> (ExtOrdinal, Vec<(Ordinal, LevelKind)>) {
    let theta = engine::theta_of(t).unwrap();
    let bound = theta.countable().cloned().unwrap_or_else(|| o("w^2*3"));
    let window = RenderWindow { max_coeff: 3, max_levels: 400 };
    let r = engine::hierarchy_render_with(t, &bound, &window).unwrap();
    (theta, r.levels.into_iter().map(|d| (d.level, d.kind)).collect())
}

fn alternation() -> Check {
    let cfg = GeneratorConfig { seed: 101, ..Default::default() };
    let (mut countable, mut checked) = (0, 0);
    for term in oracle::generate_terms(cfg).take(300) {
        countable += usize::from(space::is_countable(&term));
        let (theta, levels) = sample_levels(&term);
        ensure(levels[0].1 == LevelKind::NonselfdualPair, || format!("{term}: level 1"))?;
        if theta > e("2") {
            ensure(levels[1].1 == LevelKind::SelfdualDegree, || format!("{term}: level 2"))?;
        }
        for (a, kind) in &levels {
            let next = a.successor();
            if ExtOrdinal::Countable(next.clone()) < theta {
                let next_kind = engine::level_kind(&term, &next).unwrap();
                ensure(*kind != next_kind, || format!("{term}: levels {a} and {next}"))?;
                ensure(
                    (*kind == LevelKind::SelfdualDegree) == (next_kind == LevelKind::NonselfdualPair),
                    || format!("{term}: level {a}"),
                )?;
                checked += 1;
            }
        }
    }
    ensure(countable > 30 && countable < 270, || format!("only {countable} countable terms"))?;
    Ok(format!("300 terms ({countable} countable), {checked} level pairs"))
}

fn theta_formula() -> Check {
    let cfg = GeneratorConfig { seed: 202, filter: TermFilter::Countable, ..Default::default() };
    for term in oracle::generate_terms(cfg).take(300) {
        let theta = engine::theta_of(&term).unwrap().countable().unwrap().clone();
        let (lambda, n) = space::cb_rank(&term).unwrap().split();
        let (theta_lambda, m) = theta.split();
        ensure(theta_lambda == lambda, || format!("{term}: theta {theta}"))?;
        let diff = m as i64 - 2 * n as i64;
        ensure((-1..=1).contains(&diff), || format!("{term}: theta {theta} vs rank"))?;
        let last = theta.predecessor().unwrap();
        let simple = space::is_simple(&term).unwrap();
        let kind = engine::level_kind(&term, &last).unwrap();
        ensure((kind == LevelKind::NonselfdualPair) == simple, || format!("{term}: last level {last}"))?;
    }
    Ok("300 countable terms".into())
}

fn oracle_agreement() -> Check {
    let pool = ["1", "2", "3", "w", "w+1", "w*2", "w*3+2"].iter().map(|s| o(s)).collect();
    let cfg = GeneratorConfig {
        seed: 303,
        ordinal_pool: pool,
        allow_uncountable: false,
        filter: TermFilter::CompactCountable,
        ..Default::default()
    };
    let limit = o("w^2");
    let mut count = 0;
    for term in oracle::generate_terms(cfg).filter(|t| space::cb_rank(t).unwrap() < limit).take(250) {
        let a = space::cb_type(&term).unwrap();
        let b = oracle::cb_type_oracle(&term).unwrap();
        ensure(a == b, || format!("{term}: {a} vs oracle {b}"))?;
        count += 1;
    }
    Ok(format!("{count} compact countable terms, 0 disagreements"))
}

fn realization_round_trip() -> Check {
    let round_trip = |alphas: &[&str], thetas: &[&str]| -> Result<usize, String> {
        let mut cases = 0;
        for a in alphas {
            for th in thetas {
                let inv = WadgeInvariant { alpha: e(a), theta: e(th) };
                if engine::validate_invariant(&inv).is_err() {
                    continue;
                }
                let term = engine::realize_invariant(&inv).map_err(|err| format!("{inv}: {err}"))?;
                let got = engine::wadge_invariant(&term).unwrap();
                ensure(got == inv, || format!("{inv} realized by {term} has {got}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    };
    let listed = round_trip(&["0", "w+1", "w*2+1", "w^2", "T"], &["4", "w+3", "w*2+5", "T"])?;
    let extra = round_trip(
        &["0", "w+1", "w^2", "w^2+1", "w^2*2+w+1", "w^3", "T"],
        &["3", "w+1", "w+4", "w^2+1", "w^2+2", "w^2*2+w+6", "w^3+5", "T"],
    )?;
    ensure(listed + extra >= 12, || format!("only {} cases", listed + extra))?;
    Ok(format!("{listed} cases on the listed grid, {extra} on an extended grid"))
}

fn difference_hierarchy() -> Check {
    let mut points = 0u64;
    for (a, depth) in [("1", 8), ("2", 8), ("3", 8), ("w", 6)] {
        let alpha = o(a);
        let set = RankSet::a_alpha(&alpha);
        let w = diffhier::difference_witness(&set).unwrap();
        ensure(w.beta == alpha, || format!("beta {} for alpha {a}", w.beta))?;
        for p in diffhier::enumerate_points(&set.space, depth).unwrap() {
            let lhs = diffhier::eval_difference(&w.opens, &w.beta, &set.space, &p).unwrap();
            let rhs = diffhier::a_alpha_membership(&alpha, &set.space, &p).unwrap();
            ensure(lhs == rhs, || format!("alpha {a} at {p}"))?;
            points += 1;
        }
        let report = diffhier::verify_reduction(&diffhier::reduction_for_a(&alpha), depth).unwrap();
        ensure(report.mismatches == 0 && !report.truncated, || format!("alpha {a}: {report:?}"))?;
        points += report.checked;
    }
    Ok(format!("alpha in {{1, 2, 3, w}}, {points} point checks"))
}

fn point_and_space_consistency() -> Check {
    let cfg = GeneratorConfig { seed: 404, filter: TermFilter::CompactCountable, ..Default::default() };
    let mut simple = 0;
    for term in oracle::generate_terms(cfg).filter(|t| space::is_simple(t).unwrap()).take(150) {
        let mut top: Option<(diffhier::PointAddress, Ordinal)> = None;
        diffhier::visit_points(&term, 8, 2, &mut |p, r| {
            if top.as_ref().is_none_or(|(_, best)| r > best) {
                top = Some((p.clone(), r.clone()));
            }
            true
        })
        .unwrap();
        let (p, r) = top.unwrap();
        ensure(diffhier::point_cb_rank(&term, &p).unwrap() == r, || format!("{term} at {p}"))?;
        ensure(r.successor() == space::cb_rank(&term).unwrap(), || format!("{term}: top point rank {r}"))?;
        simple += 1;
    }
    let cfg = GeneratorConfig { seed: 405, filter: TermFilter::Countable, ..Default::default() };
    let mut remarks = 0;
    for term in oracle::generate_terms(cfg).take(2000) {
        let rank = space::cb_rank(&term).unwrap();
        if rank.is_limit() && space::comp_rank(&term).unwrap() == rank {
            ensure(space::limit_partition_selfdual(&term, &rank).unwrap(), || format!("{term}"))?;
            remarks += 1;
        }
    }
    ensure(remarks >= 20, || format!("only {remarks} terms with equal limit ranks"))?;
    Ok(format!("{simple} simple compact terms, {remarks} equal-limit-rank terms"))
}

fn random_ordinal(rng: &mut ChaCha8Rng, depth: u32) -> Ordinal {
    let terms = rng.gen_range(0..=3);
    let mut exps: Vec<Ordinal> = (0..terms)
        .map(|_| if depth == 0 { Ordinal::from(rng.gen_range(0..4)) } else { random_ordinal(rng, depth - 1) })
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    exps.into_iter().fold(Ordinal::zero(), |acc, x| acc.add(&Ordinal::monomial(x, rng.gen_range(1..4))))
}

fn ordinal_kernel() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let omega = Ordinal::omega();
    for i in 0..500 {
        let (a, b, c) = (random_ordinal(&mut rng, 1), random_ordinal(&mut rng, 1), random_ordinal(&mut rng, 1));
        ensure(a.add(&b).add(&c) == a.add(&b.add(&c)), || format!("#{i}: add assoc {a}, {b}, {c}"))?;
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || format!("#{i}: mul assoc {a}, {b}, {c}"))?;
        ensure(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || format!("#{i}: distributivity"))?;
        if !b.is_zero() && a < Ordinal::omega_pow(b.leading_exponent()) {
            ensure(a.add(&b) == b, || format!("#{i}: absorption {a} + {b}"))?;
        }
        ensure(a <= a.add(&b) && b <= a.add(&b), || format!("#{i}: monotone sum"))?;
        let (lambda, n) = a.split();
        ensure(lambda.plus(n) == a && (lambda.is_zero() || lambda.is_limit()), || format!("#{i}: split {a}"))?;
        ensure(a.parity() == Ordinal::from(n).parity(), || format!("#{i}: parity {a}"))?;
        let l = a.add(&omega.mul(&b.successor()));
        ensure(l.is_limit(), || format!("#{i}: {l} limit"))?;
        let seq: Vec<Ordinal> = (0..6).map(|k| l.fundamental_sequence(k).unwrap()).collect();
        ensure(seq.windows(2).all(|w| w[0] < w[1]) && seq.iter().all(|x| *x < l), || format!("#{i}: {l}[n]"))?;
        for beta in [Ordinal::zero(), a.clone(), l.leading_exponent(), lambda.plus(7)] {
            if beta < l {
                let hit = (0..64).any(|k| l.fundamental_sequence(k).unwrap() > beta);
                ensure(hit, || format!("#{i}: {l}[n] not cofinal above {beta}"))?;
            }
        }
    }
    Ok("500 random triples".into())
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 9] = [
        ("invariant golden set", invariant_golden_set),
        ("Y/Z dichotomy", y_z_dichotomy),
        ("alternation property", alternation),
        ("theta formula", theta_formula),
        ("oracle agreement", oracle_agreement),
        ("realization round-trip", realization_round_trip),
        ("difference hierarchy", difference_hierarchy),
        ("CB point/space consistency", point_and_space_consistency),
        ("ordinal kernel", ordinal_kernel),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
