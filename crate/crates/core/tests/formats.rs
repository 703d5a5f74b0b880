use maxqap::formats::{read_instance, read_json, read_qaplib, write_json, write_qaplib, AsymmetryPolicy};
use maxqap::instance::value_qap;
use maxqap::Error;

const SYM12: &[u8] = include_bytes!("fixtures/sym12.dat");

// Checksums computed independently of this crate.
#[test]
fn qaplib_12_checksums() {
    let inst = read_qaplib(SYM12, AsymmetryPolicy::Reject).unwrap();
    assert_eq!(inst.n_g(), 12);
    let sum = |w: &maxqap::instance::WeightedGraph| w.rows().iter().flatten().sum::<f64>();
    assert_eq!(sum(inst.g()), 540.0);
    assert_eq!(sum(inst.h()), 594.0);
    let identity: Vec<usize> = (0..12).collect();
    let reversed: Vec<usize> = (0..12).rev().collect();
    let shift = [3, 8, 1, 6, 11, 4, 9, 2, 7, 0, 5, 10];
    assert_eq!(value_qap(&inst, &identity).unwrap(), 2316.0);
    assert_eq!(value_qap(&inst, &reversed).unwrap(), 2472.0);
    assert_eq!(value_qap(&inst, &shift).unwrap(), 2204.0);
}

#[test]
fn qaplib_and_json_round_trip() {
    let inst = read_qaplib(SYM12, AsymmetryPolicy::Reject).unwrap();
    let again = read_qaplib(&write_qaplib(&inst).unwrap(), AsymmetryPolicy::Reject).unwrap();
    assert_eq!(again, inst);
    let json = write_json(&inst).unwrap();
    assert_eq!(read_json(&json).unwrap(), inst);
    assert_eq!(read_instance(&json, AsymmetryPolicy::Reject).unwrap(), inst);
    assert_eq!(read_instance(SYM12, AsymmetryPolicy::Reject).unwrap(), inst);
}

#[test]
fn asymmetric_input_is_rejected_or_averaged() {
    let text = b"2\n0 4\n2 0\n\n0 1\n1 0\n";
    assert!(matches!(
        read_qaplib(text, AsymmetryPolicy::Reject),
        Err(Error::Asymmetric { .. })
    ));
    let inst = read_qaplib(text, AsymmetryPolicy::Symmetrize).unwrap();
    assert_eq!(inst.g().weight(0, 1), 3.0);
    assert_eq!(inst.g().weight(1, 0), 3.0);
}

#[test]
fn malformed_inputs() {
    for text in [&b""[..], b"x", b"2\n0 1\n1 0\n", b"2\n0 1 1 0 0 1 1 0 9", b"2\n0 -1 -1 0 0 1 1 0"] {
        assert!(read_qaplib(text, AsymmetryPolicy::Reject).is_err(), "{:?}", String::from_utf8_lossy(text));
    }
    assert!(read_json(br#"{"n_g":2,"n_h":1,"w_g":[[0,1],[1,0]],"w_h":[[0]],"unweighted":false}"#).is_err());
    assert!(read_json(br#"{"n_g":1,"n_h":1,"w_g":[[0]],"w_h":[[2]],"unweighted":true}"#).is_err());
}
