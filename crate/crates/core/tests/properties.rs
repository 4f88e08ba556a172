use proptest::prelude::*;

use frobkit::exactfield::{FieldCtx, FieldElement, Matrix};
use frobkit::homology::{restricted_simples, split_indecomposables};
use frobkit::repcore::{frobenius_twist, simple_restricted, tensor, ModuleRep};
use frobkit::vermatwist::{twist_closed_form, twist_oracle};

fn f25() -> FieldCtx {
    FieldCtx::new(5, 2).unwrap()
}

fn el(ctx: FieldCtx, a: u32, b: u32) -> FieldElement {
    ctx.from_coeffs(&[a, b]).unwrap()
}

fn matrix(ctx: FieldCtx, rows: usize, cols: usize, vals: &[(u32, u32)]) -> Matrix {
    let mut m = Matrix::zeros(ctx, rows, cols);
    for i in 0..rows * cols {
        let (a, b) = vals[i % vals.len()];
        m.set(i / cols, i % cols, el(ctx, a, b));
    }
    m
}

fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // Lucas
    let (mut n, mut k, mut out) = (n, k, 1u64);
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) / (i + 1);
        }
        out = out * (c % p) % p;
        n /= p;
        k /= p;
    }
    out
}

fn simple(p: u32, i: u32, levels: usize) -> ModuleRep {
    simple_restricted(FieldCtx::new(p, 1).unwrap(), i, levels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_on_f25(a in (0u32..5, 0u32..5), b in (0u32..5, 0u32..5), c in (0u32..5, 0u32..5)) {
        let ctx = f25();
        let (x, y, z) = (el(ctx, a.0, a.1), el(ctx, b.0, b.1), el(ctx, c.0, c.1));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x + y, y + x);
        if !y.is_zero() {
            prop_assert_eq!((x / y) * y, x);
        }
    }

    #[test]
    fn solve_round_trip(rows in 1usize..7, cols in 1usize..7, vals in prop::collection::vec((0u32..5, 0u32..5), 1..40)) {
        let ctx = f25();
        let a = matrix(ctx, rows, cols, &vals);
        let x = matrix(ctx, cols, 1, &vals[vals.len() / 2..]);
        let b = a.mul(&x);
        let sol = a.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul(&sol.particular), b);
        prop_assert!(a.mul(&sol.kernel).is_zero());
        prop_assert_eq!(sol.kernel.cols() + a.rank(), cols);
    }

    #[test]
    fn twist_oracle_matches_closed_form(a in 0u32..5, b in 1u32..5) {
        let d = el(f25(), a, b);
        prop_assert_eq!(twist_oracle(d).unwrap().a, twist_closed_form(d).unwrap().a);
    }

    #[test]
    fn divided_powers_multiply(i in 0u32..3, j in 0u32..3, a in 0u64..9, b in 0u64..9) {
        prop_assume!(a + b < 9);
        let m = tensor(&simple(3, i, 2), &simple(3, j, 2)).unwrap();
        for raising in [true, false] {
            let lhs = m.divided_power(a, raising).unwrap().mul(&m.divided_power(b, raising).unwrap());
            let c = m.ctx().from_int(binom_mod(a + b, a, 3) as i64);
            prop_assert_eq!(lhs, m.divided_power(a + b, raising).unwrap().scale(c));
        }
    }

    #[test]
    fn twist_is_monoidal(i in 0u32..3, j in 0u32..3) {
        let (m, n) = (simple(3, i, 1), simple(3, j, 1));
        let lhs = frobenius_twist(&tensor(&m, &n).unwrap(), 1);
        let rhs = tensor(&frobenius_twist(&m, 1), &frobenius_twist(&n, 1)).unwrap();
        for l in 0..2 {
            prop_assert_eq!(lhs.e(l), rhs.e(l));
            prop_assert_eq!(lhs.f(l), rhs.f(l));
        }
        prop_assert_eq!(lhs.grading(), rhs.grading());
    }

    #[test]
    fn fitting_labels_independent_of_seed(seed in 0u64..1000, i in 0u32..3) {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let simples = restricted_simples(ctx, 2, 2).unwrap();
        let m = tensor(&tensor(&simple(3, 2, 2), &simple(3, i, 2)).unwrap(), &simple(3, 1, 2)).unwrap();
        let base = split_indecomposables(&m, &simples, 0).unwrap().signature();
        let dec = split_indecomposables(&m, &simples, seed).unwrap();
        prop_assert_eq!(dec.signature(), base);
        // idempotents orthogonal and complete
        let n = m.dim();
        let mut sum = Matrix::zeros(ctx, n, n);
        for (x, s) in dec.summands.iter().enumerate() {
            sum = sum.add(&s.idempotent());
            for (y, t) in dec.summands.iter().enumerate() {
                let prod = s.idempotent().mul(&t.idempotent());
                if x == y {
                    prop_assert_eq!(prod, s.idempotent());
                } else {
                    prop_assert!(prod.is_zero());
                }
            }
        }
        prop_assert_eq!(sum, Matrix::identity(ctx, n));
    }
}
