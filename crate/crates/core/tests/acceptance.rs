//! End-to-end acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frobkit::endpresent::{
    block_centers, build_generators, relations_report, verify_center, verify_generation, verify_tensor_rules, BlockKind,
};
use frobkit::exactfield::{FieldCtx, FieldElement, Matrix};
use frobkit::homology::{certify_generic_seed, restricted_simples, split_indecomposables};
use frobkit::repcore::{simple_restricted, tensor};
use frobkit::report::Report;
use frobkit::steinberg::{hat_borel_irreducibles, steinberg_block_equivalence, verify_restriction_simplicity, verify_steinberg};
use frobkit::vermatwist::{generic_seeds, verify_equivalence, verify_hom_iso, verify_projectives, verify_twist};
use frobkit::Result;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn generic(ctx: FieldCtx) -> FieldElement {
    generic_seeds(ctx, ctx.size()).into_iter().find(|d| certify_generic_seed(*d).is_ok()).expect("a generic seed")
}

fn summarize(reps: &[Report]) -> (bool, String) {
    let total: usize = reps.iter().map(|r| r.checks.len()).sum();
    let failed: Vec<String> =
        reps.iter().flat_map(|r| r.checks.iter().filter(|c| c.status != frobkit::report::Status::Pass).map(move |c| format!("{}/{}", r.command, c.name))).collect();
    let mut msg = format!("{} checks, {} failed", total, failed.len());
    if !failed.is_empty() {
        msg.push_str(&format!(": {}", failed.join("; ")));
    }
    (total > 0 && failed.is_empty(), msg)
}

fn twist_coefficients() -> Outcome {
    let mut reps = Vec::new();
    for p in [3, 5, 7] {
        let ctx = FieldCtx::new(p, 2)?;
        let seeds = generic_seeds(ctx, 5);
        assert_eq!(seeds.len(), 5);
        reps.push(verify_twist(ctx, &seeds)?);
    }
    Ok(summarize(&reps))
}

fn steinberg_theorem() -> Outcome {
    let c3 = FieldCtx::new(3, 2)?;
    let c5 = FieldCtx::new(5, 2)?;
    let reps = vec![
        verify_steinberg(c3, 2, None)?,
        verify_steinberg(c3, 3, None)?,
        verify_steinberg(c5, 2, None)?,
        verify_steinberg(c3, 2, Some(generic(c3)))?,
    ];
    Ok(summarize(&reps))
}

fn restriction_simplicity() -> Outcome {
    let reps = [3, 5].iter().map(|&p| verify_restriction_simplicity(FieldCtx::new(p, 1)?, 2, 1)).collect::<Result<Vec<_>>>()?;
    Ok(summarize(&reps))
}

fn hat_borel() -> Outcome {
    let ctx = FieldCtx::new(3, 2)?;
    let rep = hat_borel_irreducibles(ctx, 2, generic(ctx))?;
    let irreducible = rep.checks.iter().filter(|c| c.name.starts_with("irreducible (")).count();
    let (ok, msg) = summarize(&[rep]);
    Ok((ok && irreducible == 9, format!("{irreducible} label/extension pairs, {msg}")))
}

fn tensor_rules() -> Outcome {
    let reps = [3, 5, 7].iter().map(|&p| verify_tensor_rules(FieldCtx::new(p, 1)?, 0)).collect::<Result<Vec<_>>>()?;
    let rules: usize = reps.iter().map(|r| r.checks.len()).sum();
    let (ok, msg) = summarize(&reps);
    Ok((ok && rules == 3 + 5 + 7, msg))
}

fn hom_iso() -> Outcome {
    let ctx = FieldCtx::new(3, 2)?;
    Ok(summarize(&[verify_hom_iso(ctx, generic(ctx), 2, 0)?]))
}

fn projectives() -> Outcome {
    let ctx = FieldCtx::new(3, 2)?;
    let rep = verify_projectives(ctx, 2, Some(generic(ctx)), 0)?;
    let labels = rep.checks.iter().filter(|c| c.name.starts_with("dim P(")).count();
    let (ok, msg) = summarize(&[rep]);
    Ok((ok && labels == 9, format!("{labels} labels, {msg}")))
}

fn equivalence() -> Outcome {
    let ctx = FieldCtx::new(3, 2)?;
    Ok(summarize(&[verify_equivalence(ctx, generic(ctx), 2, 0)?]))
}

fn relations_and_generation() -> Outcome {
    let mut reps = Vec::new();
    for (p, r) in [(3, 1), (3, 2), (5, 1)] {
        let pres = build_generators(FieldCtx::new(p, 1)?, r, 0)?;
        reps.push(relations_report(&pres, 0)?);
        let all: Vec<usize> = (0..pres.objects.len()).collect();
        reps.push(verify_generation(&pres, &all, 2)?);
    }
    // every proportionality scalar is a nonzero field element
    let zero_scalar = reps.iter().flat_map(|r| &r.checks).flat_map(|c| c.measured_scalars.iter()).any(|(k, v)| k == "scalar" && v == "0");
    let (ok, msg) = summarize(&reps);
    Ok((ok && !zero_scalar, msg))
}

fn center() -> Outcome {
    let mut reps = Vec::new();
    let mut dims_ok = true;
    for (p, r) in [(3, 1), (3, 2), (5, 1)] {
        let pres = build_generators(FieldCtx::new(p, 1)?, r, 0)?;
        for bc in block_centers(&pres)? {
            match bc.kind {
                BlockKind::Steinberg => dims_ok &= bc.center_dim == 1,
                BlockKind::Regular if (p, r) == (3, 1) => dims_ok &= bc.center_dim == 3,
                _ => {}
            }
        }
        reps.push(verify_center(&pres)?);
    }
    reps.push(steinberg_block_equivalence(FieldCtx::new(3, 1)?, 0)?);
    let (ok, msg) = summarize(&reps);
    Ok((ok && dims_ok, msg))
}

fn infrastructure() -> Outcome {
    // field axioms, exhaustively on F_9
    let ctx = FieldCtx::new(3, 2)?;
    let els: Vec<FieldElement> = ctx.elements().collect();
    let (zero, one) = (ctx.zero(), ctx.one());
    let mut axioms = els.len() == 9;
    for &a in &els {
        axioms &= a + zero == a && a * one == a && a + (-a) == zero;
        if !a.is_zero() {
            axioms &= a * a.inv()? == one;
        }
        for &b in &els {
            axioms &= a + b == b + a && a * b == b * a;
            for &c in &els {
                axioms &= (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c;
            }
        }
    }
    // solver round trip: residual exactly zero on 100 random consistent systems
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut solved = 0;
    for _ in 0..100 {
        let (m, n) = (rng.gen_range(1..9), rng.gen_range(1..9));
        let mut random = |r: usize, c: usize| {
            let vals: Vec<FieldElement> = (0..r * c).map(|_| els[rng.gen_range(0..9)]).collect();
            let mut x = Matrix::zeros(ctx, r, c);
            for (i, v) in vals.into_iter().enumerate() {
                x.set(i / c, i % c, v);
            }
            x
        };
        let a = random(m, n);
        let x = random(n, 2);
        let b = a.mul(&x);
        if let Some(sol) = a.solve(&b)? {
            if a.mul(&sol.particular) == b && a.mul(&sol.kernel).is_zero() && sol.kernel.cols() == n - a.rank() {
                solved += 1;
            }
        }
    }
    // Fitting decomposition: same summand labels for three seeds
    let c3 = FieldCtx::new(3, 1)?;
    let simples = restricted_simples(c3, 2, 2)?;
    let m = tensor(&tensor(&simple_restricted(c3, 2, 2)?, &simple_restricted(c3, 2, 2)?)?, &simple_restricted(c3, 1, 2)?)?;
    let sigs = [0u64, 1, 2].iter().map(|&s| Ok(split_indecomposables(&m, &simples, s)?.signature())).collect::<Result<Vec<_>>>()?;
    let stable = sigs.windows(2).all(|w| w[0] == w[1]) && sigs[0].len() > 1;
    Ok((
        axioms && solved == 100 && stable,
        format!("axioms {axioms}, {solved}/100 systems exact, {} summands stable {stable}", sigs[0].len()),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("twist coefficients, p = 3, 5, 7", twist_coefficients),
        ("tensor product theorem for simples", steinberg_theorem),
        ("restriction simplicity", restriction_simplicity),
        ("hat-Borel irreducibles", hat_borel),
        ("P_i (x) V decomposition rules", tensor_rules),
        ("Hom-space isomorphism", hom_iso),
        ("projectives as tensor products", projectives),
        ("twisted End equivalence", equivalence),
        ("relations and generation", relations_and_generation),
        ("centre and Steinberg-block equivalence", center),
        ("infrastructure properties", infrastructure),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, msg) = match run() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {:>2}: {name} ({msg}) [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            n + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 11 passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
