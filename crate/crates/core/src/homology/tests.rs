use crate::exactfield::{FieldCtx, Matrix};
use crate::repcore::{baby_verma, dual, extend_levels, frobenius_twist, simple_restricted, tensor};

use super::*;

fn simples(f: FieldCtx, levels: usize) -> Vec<crate::repcore::ModuleRep> {
    (0..f.p()).map(|i| simple_restricted(f, i, levels).unwrap()).collect()
}

#[test]
fn schur_for_restricted_simples() {
    for p in [3, 5, 7] {
        let f = FieldCtx::new(p, 1).unwrap();
        let ls = simples(f, 1);
        for (i, a) in ls.iter().enumerate() {
            for (j, b) in ls.iter().enumerate() {
                let d = hom_space(a, b, Degree::All).unwrap().dim();
                assert_eq!(d, usize::from(i == j), "p={p} i={i} j={j}");
            }
            assert!(is_simple(a).unwrap().is_simple());
        }
    }
}

#[test]
fn blocked_and_unblocked_agree() {
    let f = FieldCtx::new(3, 1).unwrap();
    let l1 = simple_restricted(f, 1, 1).unwrap();
    let l2 = simple_restricted(f, 2, 1).unwrap();
    let t = tensor(&tensor(&l1, &l1).unwrap(), &l1).unwrap();
    for (a, b) in [(&t, &t), (&t, &l1), (&l2, &t)] {
        for deg in [Degree::All, Degree::Shift(0), Degree::Shift(3)] {
            let x = hom_space(a, b, deg).unwrap();
            let y = hom_space_unblocked(a, b, deg).unwrap();
            assert_eq!(x.dim(), y.dim());
            for phi in &x.basis {
                assert!(y.coordinates(phi).is_some());
            }
        }
    }
}

#[test]
fn dual_of_simple_is_isomorphic() {
    let f = FieldCtx::new(5, 1).unwrap();
    for l in simples(f, 1) {
        assert!(is_isomorphic(&l, &dual(&l), 0).unwrap());
    }
}

#[test]
fn generic_verma_tensor_homs() {
    // graded: dim Hom(Z_mu, Z_mu' (x) L_1) is 1 exactly when mu - mu' = +-1
    let f = FieldCtx::new(3, 2).unwrap();
    let d = f.generator().unwrap();
    let l1 = simple_restricted(f, 1, 1).unwrap();
    for t in -2i64..=2 {
        let z = baby_verma(d + f.from_int(t), t).unwrap();
        let z0 = baby_verma(d, 0).unwrap();
        let h = hom_space(&z, &tensor(&z0, &l1).unwrap(), Degree::Shift(0)).unwrap();
        assert_eq!(h.dim(), usize::from(t.abs() == 1), "t={t}");
        assert!(is_simple(&z).unwrap().is_simple());
    }
}

#[test]
fn spin_of_generic_lowest_vector_is_everything() {
    let f = FieldCtx::new(5, 2).unwrap();
    let z = baby_verma(f.generator().unwrap(), 0).unwrap();
    let mut v = Matrix::zeros(f, 5, 1);
    v.set(4, 0, f.one());
    assert_eq!(spin(&z, &v).unwrap().cols(), 5);
}

#[test]
fn tensor_of_l1_splits_at_three() {
    let f = FieldCtx::new(3, 1).unwrap();
    let l1 = simple_restricted(f, 1, 1).unwrap();
    let t = tensor(&l1, &l1).unwrap();
    assert!(!is_simple(&t).unwrap().is_simple());
    let dec = split_indecomposables(&t, &simples(f, 1), 0).unwrap();
    assert_eq!(dec.signature(), vec![(0, 1), (2, 3)]);
    let mut sum = Matrix::zeros(f, 4, 4);
    for s in &dec.summands {
        sum = sum.add(&s.idempotent());
    }
    assert_eq!(sum, Matrix::identity(f, 4));
}

#[test]
fn steinberg_tensor_product_is_simple() {
    let f = FieldCtx::new(3, 1).unwrap();
    let l1 = simple_restricted(f, 1, 2).unwrap();
    let l2 = extend_levels(&frobenius_twist(&simple_restricted(f, 2, 1).unwrap(), 1), 2).unwrap();
    let m = tensor(&l1, &l2).unwrap();
    assert_eq!(m.dim(), 6);
    assert_eq!(is_simple(&m).unwrap(), Simplicity::Simple);
}

#[test]
fn first_kernel_projectives_at_three() {
    let f = FieldCtx::new(3, 1).unwrap();
    let ps = projective_covers(f, 1, None, 0).unwrap();
    let dims: Vec<usize> = ps.iter().map(|p| p.module.dim()).collect();
    assert_eq!(dims, vec![6, 6, 3]);
    for p in &ps {
        assert!(crate::repcore::validate(&p.module).ok());
        assert_eq!(p.module.levels(), 2);
    }
    let res: Vec<_> = ps.iter().map(|p| crate::repcore::restrict_levels(&p.module, 1).unwrap()).collect();
    assert_eq!(blocks(&res).unwrap(), vec![vec![0, 1], vec![2]]);
}

#[test]
fn regular_module_splits_into_projectives() {
    use crate::smallalg::{build_u_chi, PChar};
    let f = FieldCtx::new(3, 1).unwrap();
    let reg = build_u_chi(f, PChar::zero(f)).regular_module().unwrap();
    let dec = split_indecomposables(&reg, &simples(f, 1), 0).unwrap();
    let mut counts = [0usize; 3];
    for s in &dec.summands {
        counts[s.head] += 1;
    }
    assert_eq!(counts, [1, 2, 3]);
    let ps: Vec<_> = first_kernel_projectives(f, 1, 0).unwrap();
    for s in &dec.summands {
        assert!(is_isomorphic(&s.module, &ps[s.head], 0).unwrap());
    }
}

#[test]
fn blocks_at_five() {
    let f = FieldCtx::new(5, 1).unwrap();
    let ps = first_kernel_projectives(f, 1, 0).unwrap();
    assert_eq!(blocks(&ps).unwrap(), vec![vec![0, 3], vec![1, 2], vec![4]]);
}

fn split_labels(p: u32, i: u32) -> Vec<(usize, usize)> {
    let f = FieldCtx::new(p, 1).unwrap();
    let ps = first_kernel_projectives(f, 2, 0).unwrap();
    let v = simple_restricted(f, 1, 2).unwrap();
    let m = tensor(&ps[i as usize], &v).unwrap();
    let g_simples = restricted_simples(f, 2, 2).unwrap();
    split_indecomposables(&m, &g_simples, 0).unwrap().signature()
}

#[test]
fn projective_tensor_v_decompositions() {
    // head index in the two-level simple list is k_0 + p k_1
    assert_eq!(split_labels(5, 1), vec![(0, 10), (2, 10)]);
    assert_eq!(split_labels(3, 1), vec![(0, 6), (2, 3), (2, 3)]);
    // P_0 (x) V = V^(1) (x) P_2 + P_1, head of the first summand is L_2 (x) L_1^(1)
    assert_eq!(split_labels(3, 0), vec![(1, 6), (5, 6)]);
}

#[test]
fn end_algebras_and_centres_at_three() {
    let f = FieldCtx::new(3, 1).unwrap();
    let ps = first_kernel_projectives(f, 1, 0).unwrap();
    let e0 = end_algebra(&ps[..1], Degree::All).unwrap();
    assert_eq!(e0.dim(), 2);
    let blk = end_algebra(&ps[..2], Degree::All).unwrap();
    assert!(blk.is_associative());
    assert_eq!(blk.center().unwrap().len(), 3);
    let id = blk.identity().unwrap();
    assert_eq!(blk.mul(&id, &id), id);
    let st = end_algebra(&ps[2..], Degree::All).unwrap();
    assert_eq!(st.center().unwrap().len(), 1);
}

#[test]
fn hom_spaces_as_g_modules() {
    let f = FieldCtx::new(3, 1).unwrap();
    let ps = first_kernel_projectives(f, 2, 0).unwrap();
    let g00 = hom_as_gmodule(&ps[0], &ps[0], 1).unwrap();
    assert_eq!(g00.space.dim(), 2);
    assert!(g00.e.is_zero() && g00.f.is_zero());
    let g01 = hom_as_gmodule(&ps[0], &ps[1], 1).unwrap();
    assert_eq!(g01.space.dim(), 2);
    assert!(g01.satisfies_sl2());
    let hm = g01.as_module().unwrap();
    assert!(is_simple(&hm).unwrap().is_simple());
}
