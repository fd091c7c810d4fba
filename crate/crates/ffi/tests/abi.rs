use std::ffi::{CStr, CString};
use std::ptr;

use cohenclass_ffi::*;

fn last_error() -> String {
    let p = cc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn constants_match_core() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(cc_h_const(4.0, 2.0, 1, &mut v), CcStatus::Ok);
        assert!((v - 0.5f64.powf(0.25)).abs() < 1e-15);
        assert_eq!(cc_babenko(f64::INFINITY, &mut v), CcStatus::Ok);
        assert_eq!(v, 1.0);
        assert_eq!(cc_ds_classical_bound(0.05, 0.05, &mut v), CcStatus::Ok);
        assert!((v - 0.81).abs() < 1e-15);
        assert_eq!(cc_ds_bound_at(1.0, 0.05, 0.05, 1, &mut v), CcStatus::Ok);
        assert_eq!(v, 0.9f64 * 0.9);

        let mut o = CcDsOptimum {
            r_star: 0.0,
            bound: 0.0,
            at_boundary: false,
        };
        assert_eq!(cc_ds_bound_optimize(0.0, 0.0, 1, 1e3, &mut o), CcStatus::Ok);
        assert!(o.at_boundary);
        assert!((o.bound - std::f64::consts::E / 2.0).abs() < 1e-3);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(cc_h_const(0.5, 2.0, 1, &mut v), CcStatus::InvalidExponent);
        assert!(last_error().contains("exponent"));
        assert_eq!(cc_h_const(1e6, 1.0, 1, &mut v), CcStatus::Inadmissible);
        assert_eq!(cc_h_const(4.0, 2.0, 1, ptr::null_mut()), CcStatus::NullPointer);
        assert!(last_error().contains("null"));
        let mut g = ptr::null_mut();
        assert_eq!(cc_grid_centered(7, 0.5, &mut g), CcStatus::InvalidGrid);
        assert!(g.is_null());
        let bad = CString::new("/nonexistent/dir/f.json").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(cc_signal_read(bad.as_ptr(), &mut s), CcStatus::Io);
    }
}

#[test]
fn wigner_of_gaussian_peaks_at_two() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_grid_centered(64, 0.125, &mut g), CcStatus::Ok);
        assert_eq!(cc_grid_len(g), 64);
        let mut phi = ptr::null_mut();
        assert_eq!(
            cc_signal_gaussian(g, CcGaussianKind::UnitL2, 1.0, &mut phi),
            CcStatus::Ok
        );
        let mut w = ptr::null_mut();
        assert_eq!(cc_wigner(phi, phi, &mut w), CcStatus::Ok);
        assert_eq!(cc_tf_n(w), 64);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(cc_tf_get(w, 32, 32, &mut re, &mut im), CcStatus::Ok);
        assert!((re - 2.0).abs() < 1e-6 && im.abs() < 1e-9);
        assert_eq!(cc_tf_get(w, 64, 0, &mut re, &mut im), CcStatus::InvalidArgument);

        let dirac = CString::new("dirac").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(cc_cohen(dirac.as_ptr(), phi, phi, &mut c), CcStatus::Ok);
        let (mut cre, mut cim) = (0.0, 0.0);
        assert_eq!(cc_tf_get(c, 32, 32, &mut cre, &mut cim), CcStatus::Ok);
        assert!((cre - 2.0).abs() < 1e-6);

        cc_tf_free(c);
        cc_tf_free(w);
        cc_signal_free(phi);
        cc_grid_free(g);
        cc_grid_free(ptr::null_mut());
    }
}

#[test]
fn weyl_identity_symbol_is_identity() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cc_grid_centered(32, 0.25, &mut g), CcStatus::Ok);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("one.tf");
        let grid = cohenclass::Grid::centered(1, 32, 0.25).unwrap();
        let one = cohenclass::TfFunction::from_fn(grid, |_, _| cohenclass::Complex64::new(1.0, 0.0)).unwrap();
        cohenclass::io::write_tf(&path, &one).unwrap();
        let cpath = CString::new(path.to_str().unwrap()).unwrap();
        let mut a = ptr::null_mut();
        assert_eq!(cc_tf_read(cpath.as_ptr(), &mut a), CcStatus::Ok);
        let mut op = ptr::null_mut();
        assert_eq!(cc_weyl_operator(a, &mut op), CcStatus::Ok);
        let mut norm = 0.0;
        assert_eq!(cc_operator_norm(op, &mut norm), CcStatus::Ok);
        assert!((norm - 1.0).abs() < 1e-8);

        let re: Vec<f64> = (0..32).map(|j| (j as f64 * 0.3).sin()).collect();
        let mut f = ptr::null_mut();
        assert_eq!(cc_signal_new(g, re.as_ptr(), ptr::null(), 32, &mut f), CcStatus::Ok);
        let mut af = ptr::null_mut();
        assert_eq!(cc_operator_apply(op, f, &mut af), CcStatus::Ok);
        let (mut out_re, mut out_im) = (vec![0.0; 32], vec![0.0; 32]);
        assert_eq!(
            cc_signal_samples(af, out_re.as_mut_ptr(), out_im.as_mut_ptr(), 32),
            CcStatus::Ok
        );
        for j in 0..32 {
            assert!((out_re[j] - re[j]).abs() < 1e-10 && out_im[j].abs() < 1e-10);
        }
        assert_eq!(
            cc_signal_samples(af, out_re.as_mut_ptr(), out_im.as_mut_ptr(), 31),
            CcStatus::InvalidArgument
        );

        let mut phi = ptr::null_mut();
        assert_eq!(
            cc_signal_gaussian(g, CcGaussianKind::UnitL2, 1.0, &mut phi),
            CcStatus::Ok
        );
        let (mut direct, mut via) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            cc_localization_operator(a, phi, phi, CcLocPath::Direct, &mut direct),
            CcStatus::Ok
        );
        assert_eq!(
            cc_localization_operator(a, phi, phi, CcLocPath::ViaWeyl, &mut via),
            CcStatus::Ok
        );
        let (mut d_re, mut d_im, mut v_re, mut v_im) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(cc_operator_entry(direct, 16, 16, &mut d_re, &mut d_im), CcStatus::Ok);
        assert_eq!(cc_operator_entry(via, 16, 16, &mut v_re, &mut v_im), CcStatus::Ok);
        assert!((d_re - v_re).abs() < 1e-8 && (d_im - v_im).abs() < 1e-8);

        for h in [direct, via, op] {
            cc_operator_free(h);
        }
        for s in [phi, af, f] {
            cc_signal_free(s);
        }
        cc_tf_free(a);
        cc_grid_free(g);
    }
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(cc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
