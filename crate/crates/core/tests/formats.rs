use specbasis::bases::{analyze, fourier_basis, hadamard_basis, unitary_basis, BasisSet, CoeffTable};
use specbasis::grouprep::fourier_group;
use specbasis::hadamard::{sylvester, HMatrix};
use specbasis::io::{read_coeffs, read_matrix, write_coeffs, write_matrix};
use specbasis::matcore::{CMatrix, Monomial};
use specbasis::pseudoclosure::check_pseudo_closure;
use specbasis::sampling::{random_matrix, rng};

fn tmp(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn matrix_json_shape() {
    let m = CMatrix::identity(2);
    let v: serde_json::Value = serde_json::to_value(&m).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["entries"][0][0], serde_json::json!([1.0, 0.0]));
    assert_eq!(v["entries"][1][0], serde_json::json!([0.0, 0.0]));
    let back: CMatrix = serde_json::from_value(v).unwrap();
    assert_eq!(back, m);
}

#[test]
fn matrix_json_rejects_bad_shapes() {
    assert!(serde_json::from_str::<CMatrix>(r#"{"n":2,"entries":[[[1,0]]]}"#).is_err());
    assert!(serde_json::from_str::<CMatrix>(r#"{"n":1,"entries":[[[1,0,3]]]}"#).is_err());
}

#[test]
fn monomial_json_shape() {
    let b = Monomial::fourier(3, 1, 2);
    let v = serde_json::to_value(&b).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["m"], 3);
    assert_eq!(v["perm"], serde_json::json!([1, 2, 0]));
    assert_eq!(v["phase_exp"], serde_json::json!([0, 2, 1]));
    assert_eq!(serde_json::from_value::<Monomial>(v).unwrap(), b);
    assert!(serde_json::from_str::<Monomial>(r#"{"n":2,"m":2,"perm":[0,0],"phase_exp":[0,0]}"#).is_err());
}

#[test]
fn basis_json_round_trip_keeps_behaviour() {
    let basis = hadamard_basis(&sylvester(2)).unwrap();
    let text = serde_json::to_string(&basis).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["kind"], "hadamard");
    assert_eq!(v["labels"].as_array().unwrap().len(), 16);
    let back: BasisSet = serde_json::from_str(&text).unwrap();
    assert_eq!(back.elements(), basis.elements());
    assert!(check_pseudo_closure(&back, 2, 1e-9).verdict);
}

#[test]
fn basis_json_rejects_incomplete_sets() {
    let basis = fourier_basis(2);
    let mut v = serde_json::to_value(&basis).unwrap();
    v["elements"].as_array_mut().unwrap().pop();
    v["labels"].as_array_mut().unwrap().pop();
    assert!(serde_json::from_value::<BasisSet>(v).is_err());
}

#[test]
fn hadamard_json_and_text() {
    let h = sylvester(2);
    let v = serde_json::to_value(&h).unwrap();
    assert_eq!(v["rows"][1], serde_json::json!([1, -1, 1, -1]));
    assert_eq!(serde_json::from_value::<HMatrix>(v).unwrap(), h);
    let text = h.to_text();
    assert_eq!(text.lines().next(), Some("++++"));
    assert_eq!(HMatrix::from_text(&text).unwrap(), h);
}

#[test]
fn file_round_trips_by_extension() {
    let m = random_matrix(3, &mut rng(77));
    for name in ["m.json", "m.csv"] {
        let p = tmp(name);
        write_matrix(&m, &p).unwrap();
        assert_eq!(read_matrix(&p).unwrap(), m);
    }
    let c = analyze(&m, &fourier_basis(3)).unwrap();
    for name in ["c.json", "c.csv"] {
        let p = tmp(name);
        write_coeffs(&c, &p).unwrap();
        let back: CoeffTable = read_coeffs(&p).unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn coeff_json_has_labels_header() {
    let c = CoeffTable::delta(2, 1, 0);
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["labels"], serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
}

#[test]
fn group_table_serializes_monomials() {
    let g = fourier_group(2, 100).unwrap();
    let v = serde_json::to_value(&g).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn unitary_basis_from_dft_is_closed_under_analysis() {
    let n = 4;
    let f = specbasis::bases::dft_matrix(n).scale_real(0.5);
    let basis = unitary_basis(&f, 1e-12).unwrap();
    let a = random_matrix(n, &mut rng(5));
    let back = specbasis::bases::synthesize(&analyze(&a, &basis).unwrap(), &basis).unwrap();
    assert!(specbasis::matcore::approx_eq(&a, &back, 1e-12));
}
