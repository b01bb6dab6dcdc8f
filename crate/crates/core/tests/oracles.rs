//! Frozen values from an independent computation: projectors built from
//! eigenvectors, moment equations solved as a generic linear system, and
//! symbolic projectors simplified by a computer algebra system.

use borel_core::borel::{diagonalizing_borel, orbit_limit, OneParamSubgroup};
use borel_core::idempotents::idempotent_family;
use borel_core::invariants::InvariantVector;
use borel_core::moment::{in_zero_fiber_rss, moment, solve_subdiagonal_s};
use borel_core::scalar::Var;
use borel_core::symbolic::{expand_f, XYMonomial};
use borel_core::{BorelMatrix, DualBorelMatrix, Matrix, Quadruple, Rational};

fn q(text: &str) -> Rational {
    borel_core::parse_rational(text).unwrap()
}

fn m(rows: &[&[&str]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| q(x)).collect()).collect()).unwrap()
}

fn v(xs: &[&str]) -> Vec<Rational> {
    xs.iter().map(|x| q(x)).collect()
}

fn r3() -> BorelMatrix<Rational> {
    BorelMatrix::new(m(&[&["1", "3", "-1"], &["0", "2", "5"], &["0", "0", "-4"]])).unwrap()
}

#[test]
fn projectors_of_three_by_three() {
    let family = idempotent_family(&r3()).unwrap();
    assert_eq!(family[0].matrix(), &m(&[&["1", "-3", "-16/5"], &["0", "0", "0"], &["0", "0", "0"]]));
    assert_eq!(family[1].matrix(), &m(&[&["0", "3", "5/2"], &["0", "1", "5/6"], &["0", "0", "0"]]));
    assert_eq!(family[2].matrix(), &m(&[&["0", "0", "7/10"], &["0", "0", "-5/6"], &["0", "0", "1"]]));
}

#[test]
fn diagonalizer_of_three_by_three() {
    let d = diagonalizing_borel(&r3(), None).unwrap();
    assert_eq!(d.b.matrix(), &m(&[&["1", "-3", "-16/5"], &["0", "1", "5/6"], &["0", "0", "1"]]));
    assert_eq!(d.b_inv.matrix(), &m(&[&["1", "3", "7/10"], &["0", "1", "-5/6"], &["0", "0", "1"]]));
}

#[test]
fn invariants_and_moment_of_a_free_point() {
    let s = DualBorelMatrix::new(m(&[&["1", "0", "0"], &["2", "-1", "0"], &["3", "4", "5"]])).unwrap();
    let x = Quadruple::new(r3(), s, v(&["1", "2", "3"]), v(&["-1", "0", "2"])).unwrap();
    let inv = InvariantVector::of(&x).unwrap();
    assert_eq!(inv.f, v(&["73/5", "-27/2", "39/10"]));
    assert_eq!(inv.g, v(&["-73/5", "95/6", "113/30"]));
    assert_eq!(inv.h, v(&["1", "2", "-4"]));
    assert_eq!(moment(&x).matrix(), &m(&[&["2", "0", "0"], &["15", "14", "0"], &["-18", "-33", "-11"]]));
}

fn fiber_point() -> Quadruple<Rational> {
    let i = v(&["6", "2", "0"]);
    let j = v(&["3", "-9", "-53/5"]);
    let s = solve_subdiagonal_s(&r3(), &i, &j, &v(&["1", "-2", "1/2"])).unwrap();
    Quadruple::new(r3(), s, i, j).unwrap()
}

#[test]
fn elimination_matches_generic_solve() {
    let x = fiber_point();
    assert_eq!(x.s().matrix(), &m(&[&["1", "0", "0"], &["-6", "-2", "0"], &["0", "0", "1/2"]]));
    assert!(in_zero_fiber_rss(&x));
}

#[test]
fn orbit_limit_of_a_fiber_point() {
    let x = fiber_point();
    let result = orbit_limit(&x).unwrap();
    assert_eq!(result.exponents, OneParamSubgroup::new(vec![-1, 1, -1]));
    assert_eq!(result.diagonalized.s().matrix(), &m(&[&["19", "0", "0"], &["-6", "-20", "0"], &["0", "0", "1/2"]]));
    assert_eq!(result.diagonalized.i(), v(&["0", "2", "0"]).as_slice());
    assert_eq!(result.diagonalized.j(), v(&["3", "0", "-1"]).as_slice());
    let expected = Quadruple::closed_orbit_point(&v(&["1", "2", "-4"]), &v(&["19", "-20", "1/2"])).unwrap();
    assert_eq!(result.limit, expected);
    assert_eq!(result.min_exponent, Some(0));
}

#[test]
fn symbolic_coefficients_of_f2_at_n3() {
    let f = expand_f(3, 2).unwrap();
    let point = |r: [&str; 6]| {
        let [r11, r12, r13, r22, r23, r33] = r.map(q);
        move |var: Var| match var {
            Var::R(1, 1) => Some(r11.clone()),
            Var::R(1, 2) => Some(r12.clone()),
            Var::R(1, 3) => Some(r13.clone()),
            Var::R(2, 2) => Some(r22.clone()),
            Var::R(2, 3) => Some(r23.clone()),
            Var::R(3, 3) => Some(r33.clone()),
            _ => None,
        }
    };
    let at = |mono: XYMonomial, r: [&str; 6]| f.coefficient(&mono).unwrap().evaluate(&point(r));
    let pt = ["1", "3", "-1", "2", "5", "-4"];
    let pt2 = ["1/2", "-7", "2/3", "4", "-3/5", "0"];
    assert_eq!(at(XYMonomial::bilinear(3, 3, 1), pt), Some(q("5/2")));
    assert_eq!(at(XYMonomial::bilinear(3, 3, 1), pt2), Some(q("3/10")));
    assert_eq!(at(XYMonomial::bilinear(3, 2, 1), pt), Some(q("3")));
    assert_eq!(at(XYMonomial::bilinear(3, 2, 1), pt2), Some(q("-2")));
    assert_eq!(at(XYMonomial::bilinear(3, 3, 2), pt2), Some(q("-3/20")));
    assert_eq!(f.terms().len(), 4);
}

#[test]
fn running_example_end_to_end() {
    let x = Quadruple::new(
        BorelMatrix::new(m(&[&["1", "1"], &["0", "2"]])).unwrap(),
        DualBorelMatrix::new(m(&[&["0", "0"], &["-1", "0"]])).unwrap(),
        v(&["1", "1"]),
        v(&["1", "-1"]),
    )
    .unwrap();
    assert!(moment(&x).is_zero());
    let result = orbit_limit(&x).unwrap();
    assert_eq!(result.exponents, OneParamSubgroup::new(vec![-1, 1]));
    assert_eq!(result.limit, Quadruple::closed_orbit_point(&v(&["1", "2"]), &v(&["1", "-1"])).unwrap());
    assert_eq!(
        serde_json::to_string(&x).unwrap(),
        r#"{"n":2,"r":[["1","1"],["0","2"]],"s":[["0","0"],["-1","0"]],"i":["1","1"],"j":["1","-1"]}"#
    );
}
