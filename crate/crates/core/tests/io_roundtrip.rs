use cohenclass::grid::SetDomain;
use cohenclass::operators::{OperatorMatrix, Provenance};
use cohenclass::{io, Complex64, Grid, MeasurableSet, Signal, TfFunction};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![any::<f64>().prop_filter("finite", |v| v.is_finite()), -1e3..1e3f64]
}

fn samples(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((finite(), finite()).prop_map(|(re, im)| Complex64::new(re, im)), n)
}

// Structured operators expand their symbol to matrix entries, so keep them
// clear of overflow.
fn moderate(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-1e3..1e3f64, -1e3..1e3f64).prop_map(|(re, im)| Complex64::new(re, im)),
        n,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn signal_round_trip_is_bitwise(v in samples(16), x0 in -4.0..0.0f64) {
        let g = Grid::new(1, 16, 0.25, x0).unwrap();
        let f = Signal::new(g, v).unwrap();
        let back = io::signal_from_json(&io::signal_to_json(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn tf_round_trip_is_bitwise(v in samples(64)) {
        let f = TfFunction::new(Grid::centered(1, 8, 0.5).unwrap(), v).unwrap();
        prop_assert_eq!(io::tf_from_str(&io::tf_to_string(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn operator_round_trip_is_bitwise(v in samples(64), diag in moderate(8)) {
        let g = Grid::centered(1, 8, 0.5).unwrap();
        let dense = OperatorMatrix::dense(g, v, Provenance::new("weyl")).unwrap();
        prop_assert_eq!(io::operator_from_str(&io::operator_to_string(&dense).unwrap()).unwrap(), dense);
        let mult = OperatorMatrix::multiplication(g, diag).unwrap();
        prop_assert_eq!(io::operator_from_str(&io::operator_to_string(&mult).unwrap()).unwrap(), mult);
    }

    #[test]
    fn set_round_trip(mask in prop::collection::vec(any::<bool>(), 16)) {
        let g = Grid::centered(1, 16, 0.5).unwrap();
        let set = MeasurableSet::from_mask(g, SetDomain::Frequency, mask).unwrap();
        let back = io::set_from_json(&io::set_to_json(&set).unwrap(), None, SetDomain::Frequency).unwrap();
        prop_assert_eq!(back, set);
    }
}

#[test]
fn files_on_disk_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = Grid::centered(1, 8, 0.5).unwrap();
    let f = Signal::from_fn(g, |x| Complex64::new(x[0].sin(), 1.0 / 3.0)).unwrap();
    let p = dir.path().join("f.json");
    io::write_signal(&p, &f).unwrap();
    assert_eq!(io::read_signal(&p).unwrap(), f);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1, "no temp files left behind");
}
