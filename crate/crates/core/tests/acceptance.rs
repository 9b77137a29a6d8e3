//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use common::*;
use nogo_core::certificate::{verify, Certificate, Payload};
use nogo_core::liealg::{Builtin, LieAlgebra, Subspace};
use nogo_core::nogo::{
    bracket_decomposition, derived_ideal_certificate, feasibility_probe,
    gram_positivity_certificate, verify_trivial_preq,
};
use nogo_core::orbit::{
    is_regular, isotropy_decomposition, minimality_witness, OrbitError, OrbitPoint,
};
use nogo_core::poisson::sample::{random_combination, random_polynomial};
use nogo_core::poisson::{
    bracket_mod, check_ad_invariance, laplacian, laplacian_analysis, lie_poisson_bracket, mean,
    poly_space, ActingSet, Monomial, OrbitIdeal, PolySpace, Polynomial,
};
use nogo_core::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn su2() -> LieAlgebra {
    Builtin::Su2.build().unwrap()
}

fn sphere_space(k: u32) -> PolySpace {
    poly_space(&su2(), k, Some(OrbitIdeal::sphere(q(1))), 100).unwrap()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    }
}

fn structural_laws() -> Outcome {
    let start = Instant::now();
    for b in [Builtin::Su2, Builtin::So4, Builtin::SuN(3)] {
        let l = b.build().map_err(|e| format!("{b}: {e}"))?;
        let n = l.dim();
        // Antisymmetry and Jacobi, recomputed directly from the constants.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ensure!(
                        (l.c(i, j, k) + l.c(j, i, k)).is_zero(),
                        "{b}: antisymmetry at {i},{j},{k}"
                    );
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = l.bracket(
                        &l.basis_vector(i),
                        &l.bracket(&l.basis_vector(j), &l.basis_vector(k)),
                    );
                    let y = l.bracket(
                        &l.basis_vector(j),
                        &l.bracket(&l.basis_vector(k), &l.basis_vector(i)),
                    );
                    let z = l.bracket(
                        &l.basis_vector(k),
                        &l.bracket(&l.basis_vector(i), &l.basis_vector(j)),
                    );
                    ensure!(
                        (0..n).all(|a| (&x[a] + &y[a] + &z[a]).is_zero()),
                        "{b}: Jacobi fails at {i},{j},{k}"
                    );
                }
            }
        }
        ensure!(l.is_semisimple(), "{b}: not semisimple");
        ensure!(l.is_compact_type(), "{b}: not compact");
        ensure!(l.center().is_zero(), "{b}: nonzero center");
    }
    // Killing form from explicit ad matrices: (ad e_i)_{kj} = eps_ijk.
    let ad = |i: usize| -> Vec<Vec<i64>> {
        (0..3)
            .map(|k| (0..3).map(|j| eps(i, j, k)).collect())
            .collect()
    };
    let l = su2();
    let killing = l.killing_form().matrix;
    for a in 0..3 {
        for b in 0..3 {
            let (x, y) = (ad(a), ad(b));
            let trace: i64 = (0..3)
                .map(|r| (0..3).map(|s| x[r][s] * y[s][r]).sum::<i64>())
                .sum();
            ensure!(
                trace == if a == b { -2 } else { 0 },
                "oracle Killing entry {a},{b} = {trace}"
            );
            ensure!(
                killing.get(a, b) == &q(trace),
                "Killing entry {a},{b} is {}",
                killing.get(a, b)
            );
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "structural checks")?;
    Ok(format!(
        "su2, so4, su3 compact semisimple with zero center; K(su2) = -2 I in {elapsed:.2?}"
    ))
}

fn ad_invariance_chain() -> Outcome {
    let l = su2();
    let s = sphere_space(2);
    let report =
        check_ad_invariance(&l, &s, ActingSet::Full, 200, 0x00AC_CE55).map_err(|e| e.to_string())?;
    ensure!(report.holds(), "library residual {}", report.max_residual);
    let n = s.dim();
    ensure!(
        report.triples == n * n * n,
        "{} triples, expected {}",
        report.triples,
        n * n * n
    );
    ensure!(report.samples == 200, "{} samples", report.samples);

    let pairing = |f: &Polynomial, g: &Polynomial| sphere_mean(&f.mul(g));
    let residual = |f: &Polynomial, g: &Polynomial, h: &Polynomial| {
        pairing(&su2_bracket(f, g), h) + pairing(g, &su2_bracket(f, h))
    };
    let el = s.elements();
    for f in &el {
        for g in &el {
            for h in &el {
                let r = residual(f, g, h);
                ensure!(r.is_zero(), "oracle residual {r} at ({f}, {g}, {h})");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let (f, g, h) = (
            random_combination(&mut rng, &el, 4),
            random_combination(&mut rng, &el, 4),
            random_combination(&mut rng, &el, 4),
        );
        let r = residual(&f, &g, &h);
        ensure!(r.is_zero(), "oracle residual {r} at random triple");
    }
    Ok(format!(
        "{} basis triples and 200 samples, residual exactly 0",
        n * n * n
    ))
}

fn bracket_laws() -> Outcome {
    let l = su2();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let br = |f: &Polynomial, g: &Polynomial| lie_poisson_bracket(f, g, &l).unwrap();
    for t in 0..500 {
        let f = random_polynomial(&mut rng, 3, 4, 4);
        let g = random_polynomial(&mut rng, 3, 4, 4);
        let h = random_polynomial(&mut rng, 3, 4, 4);
        ensure!(
            br(&f, &g) == su2_bracket(&f, &g),
            "triple {t}: bracket differs from the oracle"
        );
        let jacobi = br(&f, &br(&g, &h))
            .add(&br(&g, &br(&h, &f)))
            .add(&br(&h, &br(&f, &g)));
        ensure!(jacobi.is_zero(), "triple {t}: Jacobi residual {jacobi}");
        let leibniz = br(&f, &g.mul(&h))
            .sub(&br(&f, &g).mul(&h))
            .sub(&g.mul(&br(&f, &h)));
        ensure!(leibniz.is_zero(), "triple {t}: Leibniz residual {leibniz}");
        let cyclic = br(&f, &g.mul(&h))
            .add(&br(&g, &h.mul(&f)))
            .add(&br(&h, &f.mul(&g)));
        ensure!(
            cyclic.is_zero(),
            "triple {t}: cyclic identity residual {cyclic}"
        );
    }
    Ok("Jacobi, Leibniz and cyclic identity exact on 500 triples".into())
}

fn integer_rows(m: &nogo_core::linalg::Matrix<Rational>) -> Result<Vec<Vec<BigInt>>, String> {
    m.to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(format!("non-integer Laplacian entry {x}"))
                    }
                })
                .collect()
        })
        .collect()
}

fn laplacian_spectrum() -> Outcome {
    let l = su2();
    let mut at_six = Duration::ZERO;
    for k in 1..=6u32 {
        let start = Instant::now();
        let s = sphere_space(k);
        let op = laplacian(&l, &s).map_err(|e| e.to_string())?;
        let a = laplacian_analysis(&op);
        let elapsed = start.elapsed();
        if k == 6 {
            at_six = elapsed;
        }
        let n = ((k + 1) * (k + 1)) as usize;
        ensure!(s.dim() == n, "k={k}: dim {} != {n}", s.dim());
        ensure!(a.rank == n - 1, "k={k}: rank {}", a.rank);
        ensure!(
            a.kernel_is_constants(),
            "k={k}: kernel is not the constants"
        );
        let expected: Vec<(Rational, usize)> = (0..=k as i64)
            .map(|d| (q(d * (d + 1)), (2 * d + 1) as usize))
            .collect();
        ensure!(
            a.eigenvalues == expected,
            "k={k}: eigenvalues {:?}",
            a.eigenvalues
        );
        ensure!(
            a.irrational_degree == 0,
            "k={k}: irrational factor of degree {}",
            a.irrational_degree
        );

        // Oracle: det(tI - Δ) agrees with prod (t - l(l+1))^(2l+1) at n + 1 points.
        let m = integer_rows(&op.matrix)?;
        for t in -1..n as i64 {
            let expected: BigInt = (0..=k as i64)
                .map(|d| BigInt::from(t - d * (d + 1)).pow((2 * d + 1) as u32))
                .product();
            ensure!(
                char_poly_at(&m, t) == expected,
                "k={k}: char poly differs at t={t}"
            );
        }
    }
    within(at_six, Duration::from_secs(10), "k = 6 spectrum")?;
    Ok(format!(
        "spectrum {{l(l+1)}} with multiplicity 2l+1 for k = 1..6; k = 6 in {at_six:.2?}"
    ))
}

fn mean_consistency() -> Outcome {
    let l = su2();
    let s6 = sphere_space(6);
    let mut count = 0;
    for d in 0..=6 {
        for m in Monomial::of_degree(3, d) {
            let p = Polynomial::term(m.clone(), q(1));
            let got = mean(&l, &p, &s6).map_err(|e| e.to_string())?;
            let want = sphere_average(&m);
            ensure!(got == want, "mean({m}) = {got}, oracle {want}");
            count += 1;
        }
    }
    let s3 = sphere_space(3);
    let el = s3.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let f = random_combination(&mut rng, &el, 5);
        let g = random_combination(&mut rng, &el, 5);
        let b = bracket_mod(&f, &g, &l, s6.ideal()).map_err(|e| e.to_string())?;
        let m = mean(&l, &b, &s6).map_err(|e| e.to_string())?;
        ensure!(m.is_zero(), "mean of a bracket is {m}");
        ensure!(
            sphere_mean(&su2_bracket(&f, &g)).is_zero(),
            "oracle mean of a bracket is nonzero"
        );
    }
    Ok(format!(
        "{count} monomials match the sphere integral; 200 brackets have mean 0"
    ))
}

fn derived_ideal_certificates() -> Outcome {
    let l = su2();
    let pts = sphere_points(120);
    let mut total = 0;
    for k in 1..=4u32 {
        let s = sphere_space(k);
        // Evaluation at the sample points is injective on the reduced space
        // that contains every residual below, so vanishing there is exact.
        let check_space = sphere_space(k + 1);
        let basis = check_space.elements();
        ensure!(
            rank(&evaluation_rows(&basis, &pts)) == basis.len(),
            "sample points do not separate P^{}",
            k + 1
        );
        for e in s.elements().into_iter().filter(|e| e.degree() != Some(0)) {
            let f = e.sub(&Polynomial::constant(3, sphere_mean(&e)));
            let cert = bracket_decomposition(&l, &s, &f).map_err(|x| format!("{e}: {x}"))?;
            verify(&cert).map_err(|x| format!("{e}: {x}"))?;
            let Payload::BracketDecomposition(p) = &cert.body else {
                return Err("wrong certificate kind".into());
            };
            let sum = p.pairs.iter().fold(Polynomial::zero(3), |acc, (u, v)| {
                acc.add(&su2_bracket(u, v))
            });
            let residual = sum.sub(&f);
            ensure!(
                vanishes_on_sphere(&residual, &pts),
                "sum of brackets differs from {f} on the sphere"
            );
            total += 1;
        }
    }
    Ok(format!(
        "{total} zero-mean basis elements decomposed and re-verified"
    ))
}

fn gram_positivity() -> Outcome {
    let l = su2();
    for k in 0..=4u32 {
        let s = sphere_space(k);
        let cert = gram_positivity_certificate(&l, &s).map_err(|e| e.to_string())?;
        verify(&cert).map_err(|e| e.to_string())?;
        let Payload::GramPositivity(p) = &cert.body else {
            return Err("wrong certificate kind".into());
        };
        let el = s.elements();
        let gram: Vec<Vec<Rational>> = el
            .iter()
            .map(|a| el.iter().map(|b| sphere_mean(&a.mul(b))).collect())
            .collect();
        ensure!(
            gram == p.gram,
            "k={k}: Gram matrix differs from the sphere integrals"
        );
        let minors = leading_minors(&gram);
        ensure!(minors == p.minors, "k={k}: minors differ from the oracle");
        ensure!(
            minors.iter().all(Signed::is_positive),
            "k={k}: nonpositive minor"
        );
    }
    // Control: without the orbit ideal the Casimir sits in ker Δ.
    let free = poly_space(&l, 2, None, 100).unwrap();
    let err = match derived_ideal_certificate(&l, &free) {
        Ok(_) => return Err("derived-ideal step passed without an orbit ideal".into()),
        Err(e) => e.to_string(),
    };
    ensure!(
        err.contains("kernel contains nonconstant invariants"),
        "control failed with: {err}"
    );
    let a = laplacian_analysis(&laplacian(&l, &free).unwrap());
    let kernel: Vec<Vec<Rational>> = a.kernel.iter().map(|p| free.coords(p).unwrap()).collect();
    let with_casimir: Vec<Vec<Rational>> = kernel
        .iter()
        .cloned()
        .chain(std::iter::once(free.coords(&casimir()).unwrap()))
        .collect();
    ensure!(
        rank(&with_casimir) == rank(&kernel) && kernel.len() == 2,
        "Casimir not exhibited in ker Δ"
    );
    Ok("minors positive for k = 0..4; no-ideal control fails at the derived ideal with the Casimir in ker Δ".into())
}

fn isotropy_minimality() -> Outcome {
    let l = su2();
    let p = OrbitPoint::new(l.clone(), vec![q(0), q(0), q(1)]).unwrap();
    let d = isotropy_decomposition(&p).map_err(|e| e.to_string())?;
    ensure!(
        d.direct && d.containment,
        "su2: decomposition not direct or not contained"
    );
    ensure!(
        d.isotropy == Subspace::span(3, &[vec![q(0), q(0), q(1)]]),
        "su2: isotropy is not span(e3)"
    );
    let generated = l.lie_generate(&d.tangent);
    ensure!(
        generated.subspace.dim() == 3,
        "su2: [b,h] generates dimension {}",
        generated.subspace.dim()
    );
    let w = minimality_witness(&p).map_err(|e| e.to_string())?;
    verify(&w).map_err(|e| e.to_string())?;
    ensure!(is_regular(&p).is_regular(), "su2: e3 reported singular");

    let so4 = Builtin::So4.build().unwrap();
    let h: Vec<Rational> = [0, 0, 1, 0, 0, 0].iter().map(|&x| q(x)).collect();
    let p4 = OrbitPoint::new(so4, h).unwrap();
    let r = is_regular(&p4);
    ensure!(!r.is_regular(), "so4: point in one factor reported regular");
    ensure!(!r.isotropy_abelian, "so4: isotropy reported abelian");
    ensure!(
        matches!(minimality_witness(&p4), Err(OrbitError::NotSimple)),
        "so4: minimality should be refused"
    );
    Ok(
        "su2 decomposition direct, [b,h] generates b; so4 singular with non-abelian isotropy"
            .into(),
    )
}

fn run_nogo(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nogo"))
        .args(args)
        .output()
        .expect("nogo binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn nogo_report_cli() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("certs");
    let out_s = out.to_str().unwrap();
    let (code, stdout, stderr) = run_nogo(&[
        "certify",
        "--builtin",
        "su2",
        "--sphere",
        "1",
        "--k",
        "3",
        "--out",
        out_s,
    ]);
    ensure!(code == 0, "certify exited {code}: {stderr}");
    ensure!(stdout.contains("chain complete"), "no completion line");
    let names = [
        "derived_ideal.json",
        "gram_positivity.json",
        "ad_invariance.json",
        "nogo_report.json",
    ];
    let files: Vec<_> = std::fs::read_dir(&out)
        .map_err(|e| e.to_string())?
        .collect();
    ensure!(files.len() == 4, "{} files written", files.len());
    for name in names {
        let path = out.join(name);
        let (code, _, stderr) = run_nogo(&["verify", path.to_str().unwrap()]);
        ensure!(code == 0, "verify {name} exited {code}: {stderr}");
        let text = std::fs::read_to_string(&path).unwrap();
        verify(&Certificate::from_json(&text).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    }

    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, su2_json_with_c312("2")).unwrap();
    let controls: [(Vec<&str>, &str); 3] = [
        (
            vec!["--builtin", "abelian3", "--sphere", "1"],
            "semisimplicity",
        ),
        (vec!["--builtin", "su2"], "derived ideal"),
        (
            vec!["--algebra", tampered.to_str().unwrap(), "--sphere", "1"],
            "orbit ideal",
        ),
    ];
    for (extra, step) in controls {
        let ctl_out = dir.path().join("control");
        let mut args = vec!["certify", "--k", "3", "--out", ctl_out.to_str().unwrap()];
        args.extend(extra.iter().copied());
        let (code, _, stderr) = run_nogo(&args);
        ensure!(code == 1, "{extra:?} exited {code}");
        ensure!(
            stderr.contains(&format!("failed at {step} (")),
            "{extra:?} failed elsewhere: {stderr}"
        );
        ensure!(!ctl_out.exists(), "{extra:?} wrote certificates");
    }
    Ok(
        "4 certificates re-verified; abelian, no-ideal and tampered controls fail at their steps"
            .into(),
    )
}

fn feasibility_probe_verdicts() -> Outcome {
    let mut lines = Vec::new();
    for j in [qq(1, 2), q(1), qq(3, 2)] {
        let a = feasibility_probe(&j, 2).map_err(|e| e.to_string())?;
        let b = feasibility_probe(&j, 2).map_err(|e| e.to_string())?;
        ensure!(a == b, "j={j}: probe is not deterministic");
        ensure!(a.verdict.is_definite(), "j={j}: {:?}", a.verdict);
        let cert = Certificate::new(Payload::FeasibilityVerdict(a.clone()));
        let reloaded = Certificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
        ensure!(
            reloaded.body == cert.body,
            "j={j}: JSON round trip changed the payload"
        );
        verify(&reloaded).map_err(|e| format!("j={j}: {e}"))?;
        lines.push(format!("j={j}: {}", a.verdict.class()));
    }
    Ok(lines.join(", "))
}

fn trivial_prequantization() -> Outcome {
    let l = su2();
    let s = sphere_space(3);
    let c = verify_trivial_preq(&l, &s).map_err(|e| e.to_string())?;
    ensure!(
        c.holds(),
        "Q(1) = {}, {} violations",
        c.q_one,
        c.violations.len()
    );
    ensure!(c.q_one.is_one(), "Q(1) = {}", c.q_one);
    let n = s.dim();
    ensure!(
        c.pairs == n * n,
        "{} pairs checked, expected {}",
        c.pairs,
        n * n
    );
    let el = s.elements();
    for f in &el {
        for g in &el {
            ensure!(
                sphere_mean(&su2_bracket(f, g)).is_zero(),
                "oracle Q({{{f}, {g}}}) != 0"
            );
        }
    }
    Ok(format!(
        "Q(1) = 1 and Q({{f,g}}) = 0 = [Q(f),Q(g)] on all {} pairs of P^3",
        n * n
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("structural laws", structural_laws),
        ("ad-invariance chain", ad_invariance_chain),
        ("bracket laws", bracket_laws),
        ("Laplacian spectrum", laplacian_spectrum),
        ("mean consistency", mean_consistency),
        ("derived-ideal certificates", derived_ideal_certificates),
        ("Gram positivity", gram_positivity),
        ("isotropy and minimality", isotropy_minimality),
        ("no-go report", nogo_report_cli),
        ("feasibility probe", feasibility_probe_verdicts),
        ("trivial prequantization", trivial_prequantization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.2}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
