use num_bigint::BigInt;

use super::*;
use crate::exactnum::Quad;
use crate::format::parse_table;
use crate::oracle;
use crate::QuadNum;

fn t(text: &str) -> ExactMatrix<BigInt> {
    parse_table(text).unwrap()
}

fn q(n: i64) -> QuadNum {
    Quad::from_int(n)
}

fn rank3_eigen() -> ExactMatrix<BigInt> {
    t("rank 3 disc 2 role eigen\n1 1 2\n1 1 -2\n1 -1 0\n")
}

fn rank3_allen() -> ExactMatrix<BigInt> {
    t("rank 3 disc 2 role allen\n1 1 r\n1 1 -r\n1 -1 0\n")
}

fn z3_allen() -> ExactMatrix<BigInt> {
    t("rank 3 disc -3 role allen\n1 1 1\n1 -1/2+1/2*r -1/2-1/2*r\n1 -1/2-1/2*r -1/2+1/2*r\n")
}

fn rank4_first() -> ExactMatrix<BigInt> {
    t("rank 4 disc 2 role eigen\n1 1 2 2\n1 -1 2 -2\n1 1 -1 -1\n1 -1 -1 1\n")
}

fn rank5_first() -> ExactMatrix<BigInt> {
    t("rank 5 disc 2 role eigen\n1 1 2 2 2\n1 1 2 -2 -2\n1 1 -2 0 0\n1 -1 0 r -r\n1 -1 0 -r r\n")
}

fn rank5_order12() -> ExactMatrix<BigInt> {
    t("rank 5 disc 3 role eigen\n1 1 4 3 3\n1 1 4 -3 -3\n1 1 -2 0 0\n1 -1 0 r -r\n1 -1 0 -r r\n")
}

fn separate_rank5() -> ExactMatrix<BigInt> {
    t("rank 5 disc 2 role eigen\n1 1 2 2 2\n1 1 -2 -2 2\n1 -1 r -r 0\n1 -1 -r r 0\n1 1 0 0 -2\n")
}

fn p1() -> ExactMatrix<BigInt> {
    t("rank 5 role eigen\n1 1 4 12 18\n1 1 4 12 -18\n1 1 4 -6 0\n1 1 1 -3 0\n1 -1 0 0 0\n")
}

#[test]
fn allen_from_fourier_rank2() {
    let f = t("rank 2 role fourier\nrowscale: 2 2\n1 1\n1 -1\n");
    let s = allen_from_fourier(&f).unwrap();
    assert_eq!(s.entries(), t("rank 2 role allen\n1 1\n1 -1\n").entries());
}

#[test]
fn allen_from_fourier_z3_with_row_radicands() {
    let f = t("rank 3 disc -3 role fourier\nrowscale: 3 3 3\n1 1 1\n1 -1/2+1/2*r -1/2-1/2*r\n1 -1/2-1/2*r -1/2+1/2*r\n");
    assert_eq!(
        allen_from_fourier(&f).unwrap().entries(),
        z3_allen().entries()
    );
    assert!(verify_fourier(&f).passed(), "{}", verify_fourier(&f));
}

#[test]
fn eigen_and_allen_conversions_rank3() {
    let p = eigen_from_allen(&rank3_allen()).unwrap();
    assert_eq!(p.entries(), rank3_eigen().entries());
    let s = allen_from_eigen(&rank3_eigen()).unwrap();
    assert_eq!(s.entries(), rank3_allen().entries());
}

#[test]
fn allen_from_eigen_rank4_divides_columns() {
    let s = allen_from_eigen(&rank4_first()).unwrap();
    let r2 = Quad::sqrt_of(BigInt::from(2));
    assert_eq!(s.get(0, 2), &r2);
    assert_eq!(s.get(2, 3), &(-Quad::from_frac(1, 2) * &r2));
}

#[test]
fn allen_from_eigen_outside_field() {
    match allen_from_eigen(&p1()) {
        Err(TableError::SqrtNotInField { index, .. }) => assert_eq!(index, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn fourier_from_allen_rank3_rows() {
    let f = fourier_from_allen(&rank3_allen()).unwrap();
    // rows divided by 2, 2 and sqrt(2)
    assert_eq!(f.get(0, 0), &Quad::from_frac(1, 2));
    assert_eq!(
        f.get(2, 0),
        &(Quad::from_frac(1, 2) * Quad::sqrt_of(BigInt::from(2)))
    );
    assert_eq!(
        allen_from_fourier(&f).unwrap().entries(),
        rank3_allen().entries()
    );
    assert!(verify_fourier(&f).passed());
}

#[test]
fn fourier_from_allen_rank2_keeps_radicand() {
    let s = t("rank 2 role allen\n1 1\n1 -1\n");
    assert!(matches!(
        fourier_from_allen(&s),
        Err(TableError::SqrtNotInField { index: 0, .. })
    ));
    let f = fourier_from_allen_radicands(&s).unwrap();
    assert_eq!(f.row_scale().unwrap().len(), 2);
    assert!(verify_fourier(&f).passed());
}

#[test]
fn norms_examples() {
    assert_eq!(norms(&rank3_allen()), vec![q(4), q(4), q(2)]);
    assert_eq!(
        norms(&t("rank 2 role allen\n1 1\n1 -1\n")),
        vec![q(2), q(2)]
    );
    assert_eq!(norms(&z3_allen()), vec![q(3), q(3), q(3)]);
}

#[test]
fn n_constants_against_oracle() {
    let z3 = structure_constants_n(&z3_allen()).unwrap();
    assert_eq!(z3.get(1, 1, 2), &q(1));
    assert_eq!(z3.get(1, 2, 1), &q(0));
    let r2 = structure_constants_n(&t("rank 2 role allen\n1 1\n1 -1\n")).unwrap();
    assert_eq!(r2.get(1, 1, 1), &q(0));
    let n = structure_constants_n(&rank3_allen()).unwrap();
    let f = oracle::fourier_of_eigen(&oracle::to_grid(&rank3_eigen()));
    let expect = oracle::n_tensor(&f);
    for (i, j, k) in n.triples() {
        assert!(
            oracle::to_c(n.get(i, j, k)).close(expect[i][j][k]),
            "N_{i}{j}{k}"
        );
    }
    assert!(oracle::to_c(n.get(2, 2, 1)).close(expect[2][2][1]));
    assert_eq!(n.get(2, 2, 1), &q(1));
}

#[test]
fn lambda_constants_against_oracle() {
    for p in [
        rank3_eigen(),
        rank4_first(),
        rank5_first(),
        rank5_order12(),
        p1(),
    ] {
        let lam = structure_constants_lambda(&p).unwrap();
        let expect = oracle::lambda_tensor(&oracle::to_grid(&p));
        for (i, j, k) in lam.triples() {
            assert!(oracle::to_c(lam.get(i, j, k)).close(expect[i][j][k]));
        }
        for j in 0..p.rank() {
            for k in 0..p.rank() {
                assert_eq!(lam.get(0, j, k), &q((j == k) as i64));
            }
        }
    }
    let lam = structure_constants_lambda(&rank3_eigen()).unwrap();
    assert_eq!(
        [lam.get(2, 2, 0), lam.get(2, 2, 1), lam.get(2, 2, 2)],
        [&q(2), &q(2), &q(0)]
    );
    let lam = structure_constants_lambda(&rank5_order12()).unwrap();
    assert_eq!(lam.get(3, 4, 2), &Quad::from_frac(3, 2));
}

#[test]
fn singular_eigenmatrix_is_an_error() {
    let p = t("rank 2 role eigen\n1 1\n1 1\n");
    assert_eq!(
        structure_constants_lambda(&p).unwrap_err(),
        TableError::SingularEigenmatrix
    );
}

#[test]
fn verify_fourier_identity_fails_first_column() {
    let f = t("rank 2 role fourier\n1 0\n0 1\n");
    let rep = verify_fourier(&f);
    assert!(!rep.failed("symmetric"));
    assert!(!rep.failed("unitary"));
    assert!(rep.failed("first_column_positive"));
    assert!(!rep.passed());
}

#[test]
fn verify_integral_fourier_examples() {
    assert!(verify_integral_fourier(&t("rank 2 role allen\n1 1\n1 -1\n")).passed());
    let z4 = t("rank 4 disc -1 role allen\n1 1 1 1\n1 r -1 -r\n1 -1 1 -1\n1 -r -1 r\n");
    let rep = verify_integral_fourier(&z4);
    assert!(rep.failed("integer_entries"));
    assert!(verify_allen(&z4).passed(), "{}", verify_allen(&z4));
    assert!(verify_integral_fourier(&rank3_allen()).failed("integer_entries"));
}

#[test]
fn verify_allen_rank3_and_z3() {
    assert!(verify_allen(&rank3_allen()).passed());
    assert!(verify_allen(&z3_allen()).passed());
}

#[test]
fn c_algebra_axioms() {
    for p in [rank3_eigen(), rank4_first(), rank5_first(), rank5_order12()] {
        let rep = verify_c_algebra(&p);
        assert!(rep.passed(), "{rep}");
    }
    let z3 = eigen_from_allen(&z3_allen()).unwrap();
    assert!(verify_c_algebra(&z3).passed());
    assert_eq!(involution(&z3).unwrap(), vec![0, 2, 1]);
    let bad = t("rank 2 role eigen\n1 1\n1 1\n");
    let rep = verify_c_algebra(&bad);
    assert!(rep.failed("nonsingular"));
    assert!(rep.failed("involution"));
}

#[test]
fn multiplicities_rank3() {
    let rep = degrees_multiplicities(&rank3_eigen());
    assert!(rep.passed(), "{rep}");
    assert_eq!(
        multiplicities(&rank3_eigen()).unwrap(),
        vec![q(1), q(1), q(2)]
    );
}

#[test]
fn rank2_wrong_degree_fails_divisibility() {
    // (1,k) with k = 3: row 1 forced to (1,-1) by the row sum
    let p = t("rank 2 role eigen\n1 3\n1 -1\n");
    let rep = degrees_multiplicities(&p);
    assert!(rep.failed("degree_divides_order"));
}

#[test]
fn orthogonality_examples() {
    for p in [rank4_first(), rank5_first()] {
        let rep = verify_orthogonality(&p);
        assert!(rep.passed(), "{rep}");
    }
    let z4 = t("rank 4 disc -1 role eigen\n1 1 1 1\n1 r -1 -r\n1 -1 1 -1\n1 -r -1 r\n");
    assert!(verify_orthogonality(&z4).passed());
    let v4 = t("rank 4 role eigen\n1 1 1 1\n1 -1 1 -1\n1 1 -1 -1\n1 -1 -1 1\n");
    assert!(verify_orthogonality(&v4).passed());
}

#[test]
fn product_conventions_are_reported() {
    assert_eq!(product_conventions(&rank3_eigen()), (true, false));
    let v4 = t("rank 4 role eigen\n1 1 1 1\n1 -1 1 -1\n1 1 -1 -1\n1 -1 -1 1\n");
    assert_eq!(product_conventions(&v4), (true, true));
}

#[test]
fn allen_integrality_examples() {
    let rep = allen_integrality(&rank5_order12());
    assert!(rep.passed(), "{rep}");
    assert!(allen_integrality(&rank3_eigen()).passed());
    assert!(allen_integrality(&p1()).failed("allen_integrality"));
}

#[test]
fn allen_entries_of_p1_are_not_integral() {
    let rep = verify_allen_entries(&p1());
    assert!(rep.failed("allen_entries_algebraic_integer"));
    assert_eq!(
        rep.check("allen_entries_algebraic_integer")
            .unwrap()
            .indices,
        vec![3, 2]
    );
}

#[test]
fn self_duality_on_symmetric_tables() {
    for p in [rank3_eigen(), rank4_first(), rank5_first(), rank5_order12()] {
        assert!(verify_self_duality(&p).passed());
    }
    assert!(verify_self_duality(&p1()).failed("self_dual_symmetry"));
}

#[test]
fn canonical_form_merges_separate_rank5_with_first() {
    let a = canonical_form(&separate_rank5());
    let b = canonical_form(&rank5_first());
    assert_eq!(a.entries(), b.entries());
    // explicit relabelling 2 -> 4 -> 3 -> 2
    let moved = separate_rank5().permuted(&[0, 1, 4, 2, 3]);
    assert_eq!(canonical_form(&moved).entries(), b.entries());
}

#[test]
fn canonical_form_rank2_is_itself() {
    let p = t("rank 2 role eigen\n1 1\n1 -1\n");
    assert_eq!(canonical_form(&p), p);
}

#[test]
fn round_trips_on_examples() {
    for p in [rank3_eigen(), rank4_first(), rank5_first(), rank5_order12()] {
        let s = allen_from_eigen(&p).unwrap();
        assert_eq!(eigen_from_allen(&s).unwrap().entries(), p.entries());
        let f = fourier_from_allen_radicands(&s).unwrap();
        assert_eq!(allen_from_fourier(&f).unwrap().entries(), s.entries());
    }
}
