//! Acceptance checks, one line per criterion.
//!
//! Set `ACCEPTANCE_STRETCH=1` to include the genus-3 gravity constant.
//! The process fails if a criterion that is expected to pass does not.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use hurwitz_atlas::algebra::{fit_escalating, AElement};
use hurwitz_atlas::bracket::{f_series, BracketTable, ClosedBracket, Monomial};
use hurwitz_atlas::bracket::for_each_multiset;
use hurwitz_atlas::dendrology::{path_moments, MomentKind};
use hurwitz_atlas::graph::{automorphism_count, catalog, extension_level_total, f_h_closed_form};
use hurwitz_atlas::hurwitz::{self, brute_force_oracle, connected_counts, genus0_closed, HurwitzQuery, Partition};
use hurwitz_atlas::rational::{big, factorial, frac, int, pow_i, Rational};
use hurwitz_atlas::series::{a_number, gen_y, gen_z, PowerSeries};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: Vec::new() }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }
}

fn egf(s: &PowerSeries, n: usize) -> Rational {
    s.coeff(n) * big(factorial(n as u64))
}

fn criterion_1() -> Outcome {
    let n = 32;
    let y = gen_y(n);
    let z = gen_z(n);
    let q = PowerSeries::monomial(int(1), 1, n);
    let one = PowerSeries::one(n);
    let checks = [
        ("q e^Y = Y", &q * &y.exp().expect("exp"), y.clone()),
        ("(1-Y)(1+Z) = 1", &(&one - &y) * &(&one + &z), one.clone()),
        ("Z = DY", y.d_operator(), z.clone()),
        ("DZ = Z(1+Z)^2", z.d_operator(), &z * &(&(&one + &z) * &(&one + &z))),
        (
            "D(Z^2) = 2Z^2(1+Z)^2",
            (&z * &z).d_operator(),
            (&(&z * &z) * &(&(&one + &z) * &(&one + &z))).scale(&int(2)),
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(_, a, b)| a != b).map(|(name, _, _)| *name).collect();
    Outcome::new(failed.is_empty(), "tree series identities to order 32").note(if failed.is_empty() {
        "all five identities hold".to_string()
    } else {
        format!("failed: {}", failed.join(", "))
    })
}

fn criterion_2() -> Outcome {
    let order = 24;
    let y = gen_y(order);
    let mut power = PowerSeries::one(order);
    let mut bad = Vec::new();
    for k in 1..=8u64 {
        power = &power * &y;
        for n in 1..=order as u64 {
            let falling: BigInt = (1..k).map(|i| BigInt::from(n as i64 - i as i64)).product();
            let expect = if n < k { Rational::zero() } else { big(falling * k) * pow_i(n as i64, n as i64 - k as i64) };
            if egf(&power, n as usize) != expect {
                bad.push(format!("k={k} n={n}"));
            }
        }
    }
    Outcome::new(bad.is_empty(), "n![q^n] Y^k = k(n-1)...(n-k+1) n^(n-k) for k <= 8, n <= 24")
        .note(format!("{} of 192 coefficients differ {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn criterion_3() -> Outcome {
    let first: Vec<BigInt> = (1..=5).map(a_number).collect();
    let head_ok = first == [0, 2, 24, 312, 4720].map(BigInt::from).to_vec();
    let mut bad = Vec::new();
    for n in 1..=20u64 {
        let sum: Rational = (0..=n.saturating_sub(2))
            .filter(|_| n >= 2)
            .map(|k| pow_i(n as i64, k as i64) / big(factorial(k)))
            .fold(Rational::zero(), |a, b| a + b);
        if big(a_number(n)) != sum * big(factorial(n)) {
            bad.push(n);
        }
    }
    Outcome::new(head_ok && bad.is_empty(), "A_n = 0, 2, 24, 312, 4720 and A_n = n! sum n^k/k! for n <= 20")
        .note(format!("first values {:?}; mismatches at n = {bad:?}", first.iter().map(|b| b.to_string()).collect::<Vec<_>>()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let order = 8;
    let z = gen_z(order);
    let mut bad = Vec::new();
    let mut zp = &z * &z;
    for k in 1..=3u32 {
        for n in 2..=8usize {
            let brute = path_moments(n, k, MomentKind::P).expect("within guard");
            if brute != egf(&zp, n) {
                bad.push(format!("p n={n} k={k}"));
            }
        }
        zp = &zp * &z;
    }
    let m21 = path_moments(2, 1, MomentKind::M).expect("within guard");
    if m21 != int(2) {
        bad.push(format!("m_2,1 = {m21}"));
    }
    for n in 2..=8usize {
        if path_moments(n, 1, MomentKind::M).expect("within guard") != big(a_number(n as u64)) {
            bad.push(format!("m n={n}"));
        }
    }
    Outcome::new(bad.is_empty(), "tree path moments by enumeration match Z^(k+1) and A_n")
        .note(format!("mismatches {bad:?}; {:.1?}", start.elapsed()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let auts: Vec<(String, BigInt)> = catalog::genus2()
        .iter()
        .map(|g| (g.name.clone(), automorphism_count(g.graph.graph()).into()))
        .collect();
    let aut_ok = auts.iter().map(|(_, a)| a.clone()).collect::<Vec<_>>() == [8, 4, 4].map(BigInt::from).to_vec();
    let mut bad = Vec::new();
    let mut checked = 0;
    for named in catalog::builtin() {
        let h = &named.graph;
        let series = f_h_closed_form(h).to_series(5);
        for n in 0..=5 {
            let total = extension_level_total(h, n, 0).expect("within guard");
            checked += 1;
            if total != egf(&series, n) {
                bad.push(format!("{} n={n}", named.name));
            }
        }
    }
    let auts_text: Vec<String> = auts.iter().map(|(n, a)| format!("{n}:{a}")).collect();
    Outcome::new(aut_ok && bad.is_empty(), "automorphisms 8, 4, 4 and extension totals match Y^v(1+Z)^e/|Aut|")
        .note(format!("|Aut| {}; {checked} levels checked, mismatches {bad:?}; {:.1?}", auts_text.join(" "), start.elapsed()))
}

fn criterion_6() -> (Outcome, bool) {
    // Genus-0 recursion against the closed form.
    let table = BracketTable::genus0();
    let mut recursion_bad = 0;
    let mut recursion_checked = 0;
    for n in 0..=8 {
        for_each_multiset(n, 10, &mut |d| {
            let m = Monomial::new(d.to_vec());
            recursion_checked += 1;
            if table.eval(&m).expect("eval") != ClosedBracket::G0.eval(&m) {
                recursion_bad += 1;
            }
        });
    }

    // Genus-2 series against the stated element and the corrected one.
    let t = BracketTable::genus2_beta1();
    let f = f_series(&t, 10).expect("series");
    let y = AElement::y();
    let opz = AElement::one_plus_z();
    let element = |c3: Rational| {
        y.mul(&opz.pow(3))
            .scale(&frac(1, 1152))
            .add(&y.pow(2).mul(&opz.pow(4)).scale(&frac(29, 5760)))
            .add(&y.pow(3).mul(&opz.pow(5)).scale(&c3))
    };
    let literal = element(frac(7, 240)).to_series(10);
    let corrected = element(frac(7, 1440)).to_series(10);
    let first_diff = (0..=10).find(|&n| f.coeff(n) != literal.coeff(n));

    // Genus 1: F itself is not in the algebra, DF is.
    let g1 = f_series(&ClosedBracket::G1, 28).expect("series");
    let g1_fails = fit_escalating(&g1, 10, 8).is_err();
    let dg1_fits = fit_escalating(&g1.d_operator(), 10, 8).is_ok();

    let literal_ok = first_diff.is_none();
    let rest_ok = recursion_bad == 0 && g1_fails && dg1_fits && f == corrected;
    let outcome = Outcome::new(rest_ok && literal_ok, "bracket recursion, genus-2 series, genus-1 fit behaviour")
        .note(format!("genus-0 recursion equals closed form on {recursion_checked} monomials: {}", recursion_bad == 0))
        .note(format!(
            "genus-2 series equals Y(1+Z)^3/1152 + 29Y^2(1+Z)^4/5760 + 7Y^3(1+Z)^5/240: {literal_ok}{}",
            first_diff.map_or(String::new(), |n| format!(
                " (first difference at q^{n}: series {}, element {})",
                f.coeff(n),
                literal.coeff(n)
            ))
        ))
        .note(format!(
            "with the last coefficient 7/1440, i.e. <t2 t2 t2>·|Aut H222|/3!, the series matches: {}",
            f == corrected
        ))
        .note(format!("genus-1 series fails to fit up to window 10: {g1_fails}; its D-image fits: {dg1_fits}"));
    // The literal clause is known to fail; only the rest is expected to hold.
    (outcome, rest_ok)
}

fn small_partitions() -> Vec<Partition> {
    (1..=9)
        .flat_map(Partition::all)
        .filter(|p| p.len() <= 3 && p.parts().iter().all(|&b| b <= 3))
        .collect()
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let parts = small_partitions();
    let mut profiles: Vec<Vec<Partition>> = vec![Vec::new()];
    profiles.extend(parts.iter().map(|p| vec![p.clone()]));
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i..] {
            profiles.push(vec![a.clone(), b.clone()]);
        }
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for mus in &profiles {
        for g in 0..=5u32 {
            let queries: Vec<HurwitzQuery> = (1..=5)
                .map(|n| HurwitzQuery::new(g, mus.clone(), n))
                .filter(|q| q.simple_points().is_some_and(|c| c as u64 <= hurwitz::BRUTE_SIMPLE_LIMIT))
                .collect();
            if queries.is_empty() {
                continue;
            }
            let dp = connected_counts(g, mus, 5).expect("dp");
            for q in queries {
                checked += 1;
                if dp[q.n as usize] != brute_force_oracle(&q).expect("oracle") {
                    bad.push(format!("g={g} mu={mus:?} n={}", q.n));
                }
            }
        }
    }
    let mut formula_checked = 0;
    for m in 0..=4 {
        for mu in Partition::all(m) {
            let dp = connected_counts(0, std::slice::from_ref(&mu), 10).expect("dp");
            for (n, h) in dp.iter().enumerate().skip(1) {
                formula_checked += 1;
                if *h != genus0_closed(n, &mu) {
                    bad.push(format!("genus 0 ({mu}) n={n}"));
                }
            }
        }
    }
    Outcome::new(bad.is_empty(), "cut-and-join counts match enumeration and the genus-0 formula").note(format!(
        "{checked} oracle queries, {formula_checked} formula values, mismatches {:?}; {:.1?}",
        bad.iter().take(5).collect::<Vec<_>>(),
        start.elapsed()
    ))
}

fn profile(list: &[&str]) -> Vec<Partition> {
    list.iter().map(|s| s.parse().expect("partition")).collect()
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let cases: [(u32, &[&str]); 7] =
        [(0, &[]), (0, &["2"]), (0, &["3"]), (0, &["2", "2"]), (1, &["1"]), (1, &["2"]), (2, &[])];
    let mut lines = Vec::new();
    let mut ok = true;
    for (g, mus) in cases {
        let series = hurwitz::h_series(g, &profile(mus), 28).expect("series");
        let fitted = fit_escalating(&series, 10, 8);
        ok &= fitted.is_ok();
        lines.push(format!("(g={g}, {mus:?}): {}", match &fitted {
            Ok(e) => format!("fits, X^{}..X^{}", e.min_exponent().unwrap_or(0), e.max_exponent().unwrap_or(0)),
            Err(f) => format!("does not fit: {f}"),
        }));
    }
    let exceptional = hurwitz::h_series(1, &[], 28).expect("series");
    let exc_fails = fit_escalating(&exceptional, 10, 8).is_err();
    ok &= exc_fails;
    lines.push(format!("(g=1, []) fails to fit up to window 10: {exc_fails}"));
    let mut out = Outcome::new(ok, "Hurwitz series fit in the algebra at order 28, except genus 1 unramified");
    for l in lines {
        out = out.note(l);
    }
    out.note(format!("{:.1?}", start.elapsed()))
}

fn criterion_9(stretch: bool) -> (Outcome, bool) {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    let mut check = |label: &str, g: u32, mus: &[&str], order: usize, want: (Rational, Rational, Rational)| -> bool {
        match hurwitz::fit_and_b(g, &profile(mus), order, 10) {
            Ok((_, a)) => {
                let good = (a.alpha.clone(), a.c_gauss.clone(), a.c_plain.clone()) == want;
                lines.push(format!(
                    "{label}: alpha {}, c = {}/sqrt(2pi) + {} = {}: {}",
                    a.alpha,
                    a.c_gauss,
                    a.c_plain,
                    a.c_decimal(20),
                    if good { "ok" } else { "MISMATCH" }
                ));
                good
            }
            Err(e) => {
                lines.push(format!("{label}: {e}"));
                false
            }
        }
    };
    ok &= check("b0", 0, &[], 28, (frac(-7, 2), int(1), int(0)));
    ok &= check("b1 (mu=(1))", 1, &["1"], 28, (int(0), int(0), frac(1, 48)));
    ok &= check("b2", 2, &[], 28, (frac(3, 2), frac(7, 4320), int(0)));
    let stretch_ok = if stretch {
        let good = check("b3 (stretch)", 3, &[], 30, (int(4), int(0), frac(245, 15925248)));
        Some(good)
    } else {
        lines.push("b3 (stretch): skipped, set ACCEPTANCE_STRETCH=1".into());
        None
    };
    let mut out = Outcome::new(ok && stretch_ok != Some(false), if stretch {
        "gravity constants b0, b1, b2, b3 exactly"
    } else {
        "gravity constants b0, b1, b2 exactly"
    });
    for l in lines {
        out = out.note(l);
    }
    let pass = out.pass;
    (out.note(format!("{:.1?}", start.elapsed())), pass)
}

fn criterion_10() -> Outcome {
    Outcome::new(true, "out of scope by design: Painleve I and the continuum free energy are not computed")
        .note("their inputs, the constants b_g, are checked under criterion 9")
}

fn main() {
    let stretch = std::env::var("ACCEPTANCE_STRETCH").is_ok_and(|v| !v.is_empty() && v != "0");
    let mut unexpected = Vec::new();
    let mut report = |id: u32, o: Outcome, expected_ok: bool| {
        let status = if id == 10 { "N/A " } else if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2}: {status}  {}", o.summary);
        for d in &o.details {
            println!("               {d}");
        }
        if !expected_ok {
            unexpected.push(id);
        }
    };
    let o = criterion_1();
    let p = o.pass;
    report(1, o, p);
    let o = criterion_2();
    let p = o.pass;
    report(2, o, p);
    let o = criterion_3();
    let p = o.pass;
    report(3, o, p);
    let o = criterion_4();
    let p = o.pass;
    report(4, o, p);
    let o = criterion_5();
    let p = o.pass;
    report(5, o, p);
    let (o, p) = criterion_6();
    report(6, o, p);
    let o = criterion_7();
    let p = o.pass;
    report(7, o, p);
    let o = criterion_8();
    let p = o.pass;
    report(8, o, p);
    let (o, p) = criterion_9(stretch);
    report(9, o, p);
    report(10, criterion_10(), true);
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
