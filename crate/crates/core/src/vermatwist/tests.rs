use super::*;
use crate::exactfield::FieldCtx;

fn f9() -> FieldCtx {
    FieldCtx::new(3, 2).unwrap()
}

#[test]
fn twist_report_p3() {
    let ctx = f9();
    let rep = verify_twist(ctx, &generic_seeds(ctx, 6)).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn hom_iso_report_p3() {
    let ctx = f9();
    let d = generic_seeds(ctx, 1)[0];
    let rep = verify_hom_iso(ctx, d, 2, 0).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn projectives_report_p3_generic() {
    let ctx = f9();
    let d = generic_seeds(ctx, 1)[0];
    let rep = verify_projectives(ctx, 2, Some(d), 0).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
    assert_eq!(rep.tables[0].rows.len(), 9);
}

#[test]
fn rescaling_recurrence() {
    let ctx = f9();
    let d = generic_seeds(ctx, 1)[0];
    let sol = solve_rescaling(d, -2, 2).unwrap();
    assert!(sol.residuals().unwrap().iter().all(|(_, r)| r.is_zero()));
    assert!(sol.dminus.iter().all(|x| !x.is_zero()));
    let one = solve_rescaling(d, 0, 0).unwrap();
    assert!(one.residuals().unwrap().is_empty());
}

#[test]
fn twisted_rules_on_l1_pairs() {
    let ctx = f9();
    let d = generic_seeds(ctx, 1)[0];
    let g = GradedEnd::new(ctx, 1, 0).unwrap();
    let tw = twisted_product(&g, d).unwrap();
    let n = g.algebra.dim();
    let unit = |i: usize| {
        let mut v = vec![ctx.zero(); n];
        v[i] = ctx.one();
        v
    };
    let mut scaled_pairs = 0;
    for (i, bi) in g.algebra.basis.iter().enumerate() {
        for (j, bj) in g.algebra.basis.iter().enumerate() {
            if bj.tgt != bi.src {
                continue;
            }
            let plain = g.algebra.mul(&unit(i), &unit(j));
            let twisted = tw.mul(&unit(i), &unit(j));
            if bi.degree == 0 || bj.degree == 0 {
                assert_eq!(plain, twisted, "weight-zero factors multiply unchanged");
            } else if bi.degree == -1 && bj.degree == 1 {
                // rule (1) in diagrammatic order: v_1 first, then v_-1
                assert_eq!(plain, twisted);
            } else if bi.degree == 1 && bj.degree == -1 {
                let mid = g.objects[bj.tgt].1;
                let f = twist_closed_form(d + ctx.from_int(mid)).unwrap().one_minus_a1();
                let scaled: Vec<_> = plain.iter().map(|x| *x * f).collect();
                assert_eq!(twisted, scaled);
                scaled_pairs += 1;
            }
        }
    }
    assert!(scaled_pairs > 0);
}

#[test]
fn equivalence_p3_window1() {
    let ctx = f9();
    let d = generic_seeds(ctx, 1)[0];
    let rep = verify_equivalence(ctx, d, 1, 0).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
#[ignore]
fn dump_equivalence() {
    let ctx = f9();
    let d = generic_seeds(ctx, 1)[0];
    println!("{}", verify_equivalence(ctx, d, 2, 0).unwrap().to_json());
}
