//! Acceptance suite: one line per criterion.
//!
//! A criterion whose stated equality does not hold prints FAIL together with
//! the relation that does hold. The process fails only if a criterion breaks
//! in a way not already accounted for (a PASS turning into FAIL, or a
//! recorded relation no longer holding).

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use higgs_betti_core::algebra::{LaurentPoly, VarId};
use higgs_betti_core::mellit::{self, APoly};
use higgs_betti_core::rank2::{p_rank2, p_rank2_signed};
use higgs_betti_core::specialization::{
    complex_betti, real_betti, real_betti_with, real_from_a, specialize_alpha_early, t_poly, Pipeline,
};
use higgs_betti_core::verify::{self, component_sum_check};
use higgs_betti_core::zeta::zeta_substitution_check;

enum Outcome {
    Pass(String),
    /// Stated equality fails; the attached analysis was confirmed.
    KnownFail(String),
    /// Unexpected failure.
    Broken(String),
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn outcome(r: Result<String, String>) -> Outcome {
    match r {
        Ok(s) => Outcome::Pass(s),
        Err(s) => Outcome::Broken(s),
    }
}

/// `t^n p(1/t)`.
fn reflect(p: &LaurentPoly, n: i32) -> LaurentPoly {
    let coeffs: Vec<(i32, i64)> = p
        .univariate_coeffs(VarId::T)
        .into_iter()
        .map(|(e, c)| (n - e, c.to_i64().unwrap()))
        .collect();
    t_poly(&coeffs)
}

fn c1_published_value() -> Outcome {
    // 4t^5 (1-t)^2 (4t^3 - 6t^2 + 3t - 1)
    let one_minus_t = t_poly(&[(0, 1), (1, -1)]);
    let printed = t_poly(&[(5, 4)]) * one_minus_t.pow(2) * t_poly(&[(3, 4), (2, -6), (1, 3), (0, -1)]);
    let computed = match real_betti(2, 2, 2) {
        Ok(r) => r.poly,
        Err(e) => return Outcome::Broken(e.to_string()),
    };
    if computed == printed {
        return Outcome::Pass("real_betti(2,2,2) equals the published value".into());
    }
    // The recorded discrepancy: computed = -t^15 printed(1/t), i.e. the
    // published cubic is the reciprocal of ours, 4t^5(1-t)^2(t^3-3t^2+6t-4).
    let dual = -reflect(&printed, 15);
    let ours = t_poly(&[(5, 4)]) * one_minus_t.pow(2) * t_poly(&[(3, 1), (2, -3), (1, 6), (0, -4)]);
    let others: Result<Vec<_>, _> = [Pipeline::Generic, Pipeline::ClosedFormR2]
        .into_iter()
        .map(|p| real_betti_with(2, 2, 2, p).map(|r| r.poly))
        .collect();
    let agree = others.is_ok_and(|v| v.iter().all(|p| *p == computed));
    if agree && computed == dual && computed == ours && computed.degree_in(VarId::T) == Some(10) {
        Outcome::KnownFail(
            "computed 4t^5(1-t)^2(t^3-3t^2+6t-4); published value is -t^15 times it at 1/t \
             (identical degree, factor 4(1-t)^2 and t^5; the cubic is reversed). All three pipelines agree on the computed value."
                .into(),
        )
    } else {
        Outcome::Broken(format!(
            "computed {computed}, published {printed}, and the recorded duality fails"
        ))
    }
}

fn c2_rank_one() -> Outcome {
    outcome((|| {
        let one_minus_t = t_poly(&[(0, 1), (1, -1)]);
        for g in 1..=6usize {
            let sign = if g % 2 == 0 { 1 } else { -1 };
            for b in 0..=g {
                let expected = t_poly(&[(g as i32, sign << b)]) * one_minus_t.pow(g as u32);
                let got = real_betti(g, b, 1).map_err(|e| e.to_string())?.poly;
                ensure(got == expected, || format!("real g={g} b={b}: {got} != {expected}"))?;
            }
            let expected = t_poly(&[(2 * g as i32, 1)]) * one_minus_t.pow(2 * g as u32);
            let got = complex_betti(g, 1).map_err(|e| e.to_string())?.poly;
            ensure(got == expected, || format!("complex g={g}: {got} != {expected}"))?;
        }
        Ok("27 real and 6 complex rank-one values, g <= 6".into())
    })())
}

fn c3_rank_two_closed_form() -> Outcome {
    let mut cases = 0;
    for g in 1..=5usize {
        for b in 0..=g {
            let spec = match real_betti(g, b, 2) {
                Ok(r) => r.poly,
                Err(e) => return Outcome::Broken(e.to_string()),
            };
            let (lit, signed) = match (p_rank2(g, b), p_rank2_signed(g, b)) {
                (Ok(l), Ok(s)) => (l.poly, s.poly),
                (Err(e), _) | (_, Err(e)) => return Outcome::Broken(e.to_string()),
            };
            if lit == spec {
                continue;
            }
            if lit != -&spec || signed != spec {
                return Outcome::Broken(format!("g={g} b={b}: closed form {lit} vs specialization {spec}"));
            }
            cases += 1;
        }
    }
    if cases == 0 {
        return Outcome::Pass("closed form equals specialization for 1 <= g <= 5, 0 <= b <= g".into());
    }
    Outcome::KnownFail(format!(
        "closed form with prefactor t^(4g-3) equals minus the specialization in all {cases} cases (1 <= g <= 5, 0 <= b <= g); \
         with (-t)^(4g-3), the power the general real formula gives at r = 2 since (g-1)r^2+1 = 4g-3, it agrees exactly"
    ))
}

fn c4_divisibility() -> Outcome {
    outcome((|| {
        let mut n = 0;
        for g in 1..=3usize {
            for b in 0..=g {
                let polys = specialize_alpha_early(g, b, 4).map_err(|e| e.to_string())?;
                for (i, p) in polys.iter().enumerate() {
                    let rep = verify::divisibility_of(p, g, b, i + 1);
                    ensure(rep.passed, || rep.to_string())?;
                    n += 1;
                }
            }
        }
        Ok(format!(
            "{n} real values (g <= 3, r <= 4) divide by 2^b(1-t)^g with integer quotient"
        ))
    })())
}

fn c5_c6_polynomiality_and_symmetry(a: &Result<Vec<Vec<APoly>>, String>) -> (Outcome, Outcome) {
    let a = match a {
        Ok(a) => a,
        Err(e) => return (Outcome::Broken(e.clone()), Outcome::Broken(e.clone())),
    };
    let c5 = Outcome::Pass(format!(
        "H_(g,r) normalizes to a Laurent polynomial for g <= 3, r <= 4 ({} values)",
        a.iter().map(Vec::len).sum::<usize>()
    ));
    let c6 = outcome((|| {
        for list in a {
            for ap in list.iter().take(3) {
                let rep = verify::symmetry_of(ap);
                ensure(rep.passed, || rep.to_string())?;
            }
        }
        Ok("A_(g,r) fixed by all transpositions and a_i -> q/a_i, g <= 3, r <= 3".into())
    })());
    (c5, c6)
}

fn c7_zeta() -> Outcome {
    outcome((|| {
        for g in 0..=5usize {
            for b in 0..=g {
                zeta_substitution_check(g, b).map_err(|e| format!("g={g} b={b}: {e}"))?;
            }
        }
        Ok("cross-multiplied identity holds for 0 <= b <= g <= 5".into())
    })())
}

fn c8_component_sum() -> Outcome {
    outcome((|| {
        for g in 1..=4usize {
            for b in 0..=g {
                let rep = component_sum_check(g, b, 10);
                ensure(rep.passed, || rep.to_string())?;
            }
        }
        Ok("closed form equals the component sum to z^10 for g <= 4, b <= g".into())
    })())
}

fn c9_pipelines(a: &Result<Vec<Vec<APoly>>, String>) -> Outcome {
    outcome((|| {
        let a = a.as_ref().map_err(Clone::clone)?;
        for (gi, list) in a.iter().enumerate() {
            let g = gi + 1;
            for b in 0..=g {
                let fast = specialize_alpha_early(g, b, 3).map_err(|e| e.to_string())?;
                for (ap, f) in list.iter().zip(&fast) {
                    let generic = real_from_a(ap, b).map_err(|e| e.to_string())?;
                    ensure(&generic == f, || format!("g={g} b={b} r={}: {generic} != {f}", ap.rank))?;
                }
            }
        }
        Ok("generic and fast pipelines agree for g <= 3, b <= g, r <= 3".into())
    })())
}

fn cli(cache: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_higgs-betti"))
        .args(args)
        .env("HIGGS_BETTI_CACHE", cache)
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            o.status.code(),
            String::from_utf8_lossy(&o.stderr)
        ));
    }
    Ok(o.stdout)
}

fn c10_determinism() -> Outcome {
    outcome((|| {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cache = dir.path();
        let mut compared = 0;
        for field in ["real", "complex"] {
            let base = [
                "table",
                "--g",
                "1..3",
                "--r",
                "1..3",
                "--field",
                field,
                "--format",
                "json",
                "--no-timing",
            ];
            let with = |extra: &[&'static str]| {
                let mut v = base.to_vec();
                v.extend_from_slice(extra);
                v
            };
            let cold_seq = cli(cache, &with(&["--jobs", "1"]))?;
            let warm_par = cli(cache, &with(&["--jobs", "4"]))?;
            let warm_seq = cli(cache, &with(&["--jobs", "1"]))?;
            let nocache_par = cli(cache, &with(&["--jobs", "4", "--no-cache"]))?;
            for other in [&warm_par, &warm_seq, &nocache_par] {
                ensure(&cold_seq == other, || {
                    format!("{field} table output differs between runs")
                })?;
            }
            compared += 1;
        }
        let seq = cli(cache, &["verify", "--jobs", "1", "--format", "json"])?;
        let par = cli(cache, &["verify", "--jobs", "4", "--format", "json"])?;
        ensure(seq == par, || {
            "verify report differs between sequential and parallel runs".into()
        })?;
        Ok(format!(
            "default grid (g <= 3, b <= g, r <= 3): {compared} tables and the verify report byte-identical across jobs 1/4, cold/warm/no cache"
        ))
    })())
}

fn main() {
    let start = Instant::now();
    // A_(g,r) for g <= 3, r <= 4, shared by criteria 5, 6 and 9.
    let (a_polys, rest) = std::thread::scope(|s| {
        let a = s.spawn(|| {
            (1..=3usize)
                .map(|g| mellit::a_polys(g, 4).map_err(|e| format!("g={g}: {e}")))
                .collect::<Result<Vec<_>, _>>()
        });
        let others = [
            s.spawn(c1_published_value),
            s.spawn(c2_rank_one),
            s.spawn(c3_rank_two_closed_form),
            s.spawn(c4_divisibility),
            s.spawn(c7_zeta),
            s.spawn(c8_component_sum),
            s.spawn(c10_determinism),
        ];
        let a = a.join().expect("A computation");
        (a, others.map(|h| h.join().expect("criterion thread")))
    });
    let [c1, c2, c3, c4, c7, c8, c10] = rest;
    let (c5, c6) = c5_c6_polynomiality_and_symmetry(&a_polys);
    let c9 = c9_pipelines(&a_polys.map(|v| v.into_iter().map(|l| l.into_iter().take(3).collect()).collect()));

    let results = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10];
    let names = [
        "published genus-two value",
        "rank-one oracle",
        "rank-two closed form",
        "divisibility by 2^b(1-t)^g",
        "polynomiality of H",
        "symmetry of A",
        "zeta substitution identity",
        "symmetric-product components",
        "pipeline agreement",
        "determinism",
    ];
    let mut broken = 0;
    for (i, (name, res)) in names.iter().zip(&results).enumerate() {
        let (tag, msg) = match res {
            Outcome::Pass(m) => ("PASS", m),
            Outcome::KnownFail(m) => ("FAIL", m),
            Outcome::Broken(m) => {
                broken += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {:>2} {tag} {name}: {msg}", i + 1);
    }
    let passed = results.iter().filter(|r| matches!(r, Outcome::Pass(_))).count();
    println!(
        "acceptance: {passed}/10 pass, {} fail ({broken} unexpected), {:.1}s",
        10 - passed,
        start.elapsed().as_secs_f64()
    );
    if broken > 0 {
        std::process::exit(1);
    }
}
