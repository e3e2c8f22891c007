//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `SYMSCHUB_ACCEPT_M6=1` or `SYMSCHUB_ACCEPT_M7=1` to also enumerate the
//! larger rows of the table.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symschub_core::instance::random_flag;
use symschub_core::linalg::{ratio, rat, GaussianRational};
use symschub_core::partition::enumerate_strict;
use symschub_core::system::{count_real_and_pairs, mod4_verdict, DEFAULT_TOL};
use symschub_core::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(id: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let ok = out.ok && elapsed <= limit;
    let timing = if elapsed <= limit { String::new() } else { format!(" [over the {limit:?} limit]") };
    println!(
        "criterion {id}: {} {} ({:.2?}){timing}",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed
    );
    ok
}

fn table_row(m: u32) -> (usize, usize) {
    let r = table1_row(bm(m), &EnumerationFilter::default(), rayon_jobs()).unwrap();
    (r.n_symmetric, r.n_lower_bound)
}

fn rayon_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn criterion_1a() -> Outcome {
    let got: Vec<(usize, usize)> = (2..=4).map(table_row).collect();
    let want = vec![(1, 0), (8, 2), (81, 14)];
    Outcome { ok: got == want, detail: format!("table rows m=2..4 {got:?}, expected {want:?}") }
}

fn criterion_1b() -> Outcome {
    let got = table_row(5);
    Outcome { ok: got == (1037, 199), detail: format!("table row m=5 {got:?}, expected (1037, 199)") }
}

fn criterion_2() -> Outcome {
    let d4 = problem_degree(&SchubertProblem::new(bm(2), vec![p("1"); 4]).unwrap()).unwrap();
    let d9 = problem_degree(&SchubertProblem::new(bm(3), vec![p("1"); 9]).unwrap()).unwrap();
    let d497 = problem_degree(
        &SchubertProblem::new(bm(4), vec![p("3,2,1"), p("3,2,1"), p("2,1"), p("1")]).unwrap(),
    )
    .unwrap();
    let ok = d4 == hook_count(&[2, 2]) && d9 == hook_count(&[3, 3, 3]) && d497 == BigUint::from(8u32);
    Outcome { ok, detail: format!("d((1)^4)={d4}, d((1)^9)={d9}, d(497)={d497}") }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut triples = 0;
    let mut nonzero = 0;
    let mut bad = 0;
    while triples < 600 {
        let n = rng.gen_range(1..=10u32);
        let a = rng.gen_range(0..=n);
        let mus = partitions_of(a, a);
        let nus = partitions_of(n - a, n - a);
        let lams = partitions_of(n, n);
        let mu = Partition::new(mus[rng.gen_range(0..mus.len())].clone()).unwrap();
        let nu = Partition::new(nus[rng.gen_range(0..nus.len())].clone()).unwrap();
        let lam = Partition::new(lams[rng.gen_range(0..lams.len())].clone()).unwrap();
        let c = lr_coefficient(&mu, &nu, &lam);
        if c != lr_coefficient(&nu, &mu, &lam) || c != lr_coefficient(&mu.conjugate(), &nu.conjugate(), &lam.conjugate()) {
            bad += 1;
        }
        if mu.len() <= 5 {
            let want = schur_product(mu.parts(), nu.parts()).get(lam.parts()).copied().unwrap_or(0);
            if c as i64 != want {
                bad += 1;
            }
        }
        nonzero += (c > 0) as usize;
        triples += 1;
    }
    Outcome { ok: bad == 0, detail: format!("{triples} triples ({nonzero} nonzero), {bad} violations") }
}

fn criterion_4() -> Outcome {
    let quadric = lg_problem_degree(&vec![p("1"); 3], bm(2)).unwrap();
    let mut duality_bad = 0;
    let mut pairs = 0;
    for m in 1..=4u32 {
        let strict = enumerate_strict(m);
        for a in &strict {
            for b in &strict {
                if a.weight() + b.weight() != lg_dimension(m) {
                    continue;
                }
                pairs += 1;
                let top = lg_multiply(&ClassVectorC::basis(m, a.clone()).unwrap(), &ClassVectorC::basis(m, b.clone()).unwrap())
                    .unwrap()
                    .top_coefficient();
                if top != BigInt::from((*b == a.dual(m)) as u32) {
                    duality_bad += 1;
                }
            }
        }
    }
    let candidates = [
        vec![p("3,1,1"), p("3,1,1"), p("2,1"), p("2,1")],
        vec![p("4,1,1,1"), p("4,1,1,1"), p("1"), p("1")],
    ];
    let mut found = Vec::new();
    for c in &candidates {
        let d = problem_degree(&SchubertProblem::new(bm(4), c.clone()).unwrap()).unwrap();
        let lg = lg_problem_degree(c, bm(4)).unwrap();
        found.push((d, lg));
    }
    let with_eight: Vec<_> = found.iter().filter(|(d, _)| *d == BigUint::from(8u32)).collect();
    let ok_490 = with_eight.len() == 1 && with_eight[0].1 == BigUint::from(4u32);
    let ok = quadric == BigUint::from(2u32) && duality_bad == 0 && ok_490;
    let shown: Vec<String> = found.iter().map(|(d, lg)| format!("d={d} c={lg}")).collect();
    Outcome {
        ok,
        detail: format!(
            "quadric threefold {quadric}, duality {pairs} pairs {duality_bad} bad, 490 candidates [{}]",
            shown.join(", ")
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut iso_bad = 0;
    for k in 0..50 {
        let m = 1 + (k % 4) as u32;
        let t = ratio(rng.gen_range(-50..=50), rng.gen_range(1..=9));
        if !is_isotropic(&osculating_flag(&t, bm(m)), &standard_form(bm(m))) {
            iso_bad += 1;
        }
    }
    let mut lemma_bad = 0;
    let mut members = 0;
    for k in 0..240 {
        let m = 1 + (k % 3) as u32;
        let b = bm(m);
        let j = standard_form(b);
        let f = random_flag(rng.gen(), b);
        let lam = random_box_partition(&mut rng, m);
        let h = if k % 2 == 0 { random_member(&mut rng, &lam, &f) } else { random_subspace(&mut rng, m as usize) };
        let a = schubert_membership(&h, &lam, &f).unwrap();
        members += a as usize;
        if a != schubert_membership(&annihilator(&h, &j), &lam.conjugate(), &involute_flag(&f, &j)).unwrap() {
            lemma_bad += 1;
        }
    }
    let mut inv_bad = 0;
    for seed in 0..30 {
        let m = 1 + (seed % 3) as u32;
        let j = standard_form(bm(m));
        let f = random_flag(seed, bm(m));
        if !involute_flag(&involute_flag(&f, &j), &j).same_steps(&f) {
            inv_bad += 1;
        }
        let w = f.step(1 + (seed as usize % (2 * m as usize)));
        if !annihilator(&annihilator(&w, &j), &j).same_span(&w) || w.dim() + annihilator(&w, &j).dim() != 2 * m as usize {
            inv_bad += 1;
        }
    }
    Outcome {
        ok: iso_bad == 0 && lemma_bad == 0 && inv_bad == 0,
        detail: format!(
            "isotropy 50 points {iso_bad} bad, involution exchange 240 samples ({members} members) {lemma_bad} bad, involution laws {inv_bad} bad"
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut total = 0;
    let mut bad = 0;
    for m in 1..=4u32 {
        for r in enumerate_problems(bm(m), &EnumerationFilter::all(), rayon_jobs()).unwrap() {
            total += 1;
            let s = r.classification.sum_length;
            if s < m || s % 2 != m % 2 {
                bad += 1;
            }
        }
    }
    Outcome { ok: bad == 0, detail: format!("{total} problems with d != 0 for m <= 4, {bad} violations") }
}

fn criterion_7() -> Outcome {
    let b = bm(2);
    let four = SchubertProblem::new(b, vec![p("1"); 4]).unwrap();
    let flags: Vec<FlagMatrix> = (0..4).map(|t| osculating_flag(&rat(t), b)).collect();
    let sys = generate_system(&four, &flags).unwrap();
    let shape_ok = sys.n_vars() == 4 && sys.polynomials.len() == 4 && sys.polynomials.iter().all(|q| q.degree() == 2);

    let point = SchubertProblem::new(b, vec![p("2,2")]).unwrap();
    let flag = random_isotropic_flag(7, b);
    let psys = generate_system(&point, std::slice::from_ref(&flag)).unwrap();
    let y = psys.chart().unwrap().coordinates(flag.step(2).basis()).unwrap();
    let exact: Vec<GaussianRational> = y.into_iter().map(|q| GaussianRational::new(q, rat(0))).collect();
    let rep = verify_solutions(&psys, &SolutionSet::from_exact(vec![exact], "constructed"), DEFAULT_TOL).unwrap();
    let point_ok = rep.residual_max == 0.0 && rep.n_lagrangian == 1 && rep.n_real == 1;

    let c = |re: f64, im: f64| vec![Complex64::new(re, im)];
    let six = BigUint::from(6u32);
    let (r1, _) = count_real_and_pairs(&[c(1., 0.), c(2., 0.), c(0., 1.), c(0., -1.), c(5., 3.), c(5., -3.)], DEFAULT_TOL);
    let (r2, _) = count_real_and_pairs(&[c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.), c(0., 1.), c(0., -1.)], DEFAULT_TOL);
    let verdicts = (mod4_verdict(r1, &six, true), mod4_verdict(r2, &six, true));
    let verdict_ok = verdicts == (Some(true), Some(false));
    Outcome {
        ok: shape_ok && point_ok && verdict_ok,
        detail: format!(
            "four lines {} vars {} polys, point problem residual {} lagrangian {}, synthetic verdicts {:?}",
            sys.n_vars(),
            sys.polynomials.len(),
            rep.residual_max,
            rep.n_lagrangian,
            verdicts
        ),
    }
}

fn main() {
    let mut all = true;
    all &= run("1 (m<=4)", Duration::from_secs(60), criterion_1a);
    all &= run("1 (m=5)", Duration::from_secs(30 * 60), criterion_1b);
    all &= run("2", Duration::from_secs(3), criterion_2);
    all &= run("3", Duration::from_secs(60), criterion_3);
    all &= run("4", Duration::from_secs(10), criterion_4);
    all &= run("5", Duration::from_secs(120), criterion_5);
    all &= run("6", Duration::from_secs(60), criterion_6);
    all &= run("7", Duration::from_secs(1), criterion_7);
    if std::env::var_os("SYMSCHUB_ACCEPT_M6").is_some() {
        all &= run("8 (m=6)", Duration::from_secs(30 * 60), || {
            let got = table_row(6);
            Outcome { ok: got == (16933, 3289), detail: format!("table row m=6 {got:?}, expected (16933, 3289)") }
        });
    }
    if std::env::var_os("SYMSCHUB_ACCEPT_M7").is_some() {
        all &= run("8 (m=7)", Duration::from_secs(4 * 3600), || {
            let got = table_row(7);
            Outcome { ok: got == (349844, 82753), detail: format!("table row m=7 {got:?}, expected (349844, 82753)") }
        });
    } else {
        println!("criterion 8: SKIP real-solution experiments need an external solver; larger table rows run with SYMSCHUB_ACCEPT_M6/M7");
    }
    if !all {
        std::process::exit(1);
    }
}
