use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qes_ffi::*;

fn pt(kind: QesHyperbolicKind, twoj: u32) -> *mut QesPotential {
    let mut out = ptr::null_mut();
    let status = unsafe { qes_potential_hyperbolic(kind, 1.0, 2.0, 0.5, 1.0, twoj, &mut out) };
    assert_eq!(status, QesStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let n = unsafe { qes_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0, "expected a stored error message");
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn spectrum(pot: *const QesPotential, method: QesMethod) -> *mut QesSpectrum {
    let mut out = ptr::null_mut();
    let status = unsafe { qes_spectrum_compute(pot, method, QesPrecision::Double, &mut out) };
    assert_eq!(status, QesStatus::Ok);
    out
}

#[test]
fn spectrum_matches_library() {
    let pot = pt(QesHyperbolicKind::PoschlTeller, 2);
    let spec = spectrum(pot, QesMethod::Roots);
    let n = unsafe { qes_spectrum_len(spec) };
    assert_eq!(n, 3);

    let p = qes::PoschlTellerParams::new(1.0, 2.0, 0.5, 1.0, qes::TwoJ(2)).unwrap();
    let direct = qes::spectra::lambda_spectrum_roots(&qes::PotentialFamily::PoschlTeller(p), qes::Precision::Double)
        .unwrap();
    for i in 0..n {
        let (mut l, mut e, mut r) = (0.0, 0.0, 0.0);
        unsafe {
            assert_eq!(qes_spectrum_lambda(spec, i, &mut l), QesStatus::Ok);
            assert_eq!(qes_spectrum_energy(spec, i, &mut e), QesStatus::Ok);
            assert_eq!(qes_spectrum_residual(spec, i, &mut r), QesStatus::Ok);
        }
        assert_eq!(l, direct.lambda_roots[i]);
        assert_eq!(e, direct.energies[i]);
        assert!(r < 1e-6);
    }
    unsafe {
        qes_spectrum_free(spec);
        qes_potential_free(pot);
    }
}

#[test]
fn tridiagonal_agrees_with_roots() {
    let pot = pt(QesHyperbolicKind::GeneralizedPt, 4);
    let a = spectrum(pot, QesMethod::Roots);
    let b = spectrum(pot, QesMethod::Tridiagonal);
    let n = unsafe { qes_spectrum_len(a) };
    assert_eq!(n, unsafe { qes_spectrum_len(b) });
    for i in 0..n {
        let (mut x, mut y) = (0.0, 0.0);
        unsafe {
            qes_spectrum_lambda(a, i, &mut x);
            qes_spectrum_lambda(b, i, &mut y);
        }
        assert!((x - y).abs() < 1e-8 * (1.0 + x.abs()), "{x} vs {y}");
    }
    unsafe {
        qes_spectrum_free(a);
        qes_spectrum_free(b);
        qes_potential_free(pot);
    }
}

#[test]
fn scarf_potential_is_pt_symmetric() {
    let pot = pt(QesHyperbolicKind::ScarfPt, 1);
    let (mut r1, mut i1, mut r2, mut i2) = (0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(qes_potential_eval(pot, 0.7, &mut r1, &mut i1), QesStatus::Ok);
        assert_eq!(qes_potential_eval(pot, -0.7, &mut r2, &mut i2), QesStatus::Ok);
        qes_potential_free(pot);
    }
    assert!((r1 - r2).abs() < 1e-12);
    assert!((i1 + i2).abs() < 1e-12);
    assert!(i1.abs() > 0.0);
}

#[test]
fn wavefunction_round_trip() {
    let mut pot = ptr::null_mut();
    unsafe {
        assert_eq!(qes_potential_sextic(0.0, 1.0, 1.0, 0.0, 0, &mut pot), QesStatus::Ok);
    }
    let mut wf = ptr::null_mut();
    unsafe {
        assert_eq!(qes_wavefunction_new(pot, 0.0, &mut wf), QesStatus::Ok);
    }
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(qes_wavefunction_eval(wf, 1.5, &mut re, &mut im), QesStatus::Ok);
        qes_wavefunction_free(wf);
        qes_potential_free(pot);
    }
    let expected = 1.5 * (-1.5f64 * 1.5 / 2.0).exp();
    assert!((re - expected).abs() < 1e-14);
    assert_eq!(im, 0.0);
}

#[test]
fn invalid_parameters_report_status_and_message() {
    let mut out = ptr::null_mut();
    let status = unsafe { qes_potential_hyperbolic(QesHyperbolicKind::PoschlTeller, 1.0, 2.0, 0.5, -1.0, 2, &mut out) };
    assert_eq!(status, QesStatus::InvalidParameter);
    assert!(out.is_null());
    assert!(last_error().to_lowercase().contains("alpha"), "{}", last_error());
}

#[test]
fn singular_point_is_an_error() {
    let pot = pt(QesHyperbolicKind::PoschlTeller, 0);
    let (mut re, mut im) = (0.0, 0.0);
    let status = unsafe { qes_potential_eval(pot, 0.0, &mut re, &mut im) };
    unsafe { qes_potential_free(pot) };
    assert_eq!(status, QesStatus::Singularity);
    assert!(!last_error().is_empty());
}

#[test]
fn degenerate_spectrum_is_an_error() {
    let mut pot = ptr::null_mut();
    unsafe {
        assert_eq!(qes_potential_sextic(0.0, 1.0, 1.0, 0.0, 2, &mut pot), QesStatus::Ok);
    }
    let mut spec = ptr::null_mut();
    let status = unsafe { qes_spectrum_compute(pot, QesMethod::Roots, QesPrecision::Double, &mut spec) };
    unsafe { qes_potential_free(pot) };
    assert_eq!(status, QesStatus::DegenerateParameters);
    assert!(spec.is_null());
}

#[test]
fn null_pointers_are_rejected() {
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(qes_potential_eval(ptr::null(), 1.0, &mut re, &mut im), QesStatus::NullPointer);
        assert_eq!(
            qes_potential_hyperbolic(QesHyperbolicKind::PoschlTeller, 1.0, 2.0, 0.5, 1.0, 2, ptr::null_mut()),
            QesStatus::NullPointer
        );
        assert_eq!(qes_spectrum_len(ptr::null()), 0);
        assert_eq!(qes_spectrum_complex_len(ptr::null()), 0);
        let mut x = 0.0;
        assert_eq!(qes_spectrum_energy(ptr::null(), 0, &mut x), QesStatus::NullPointer);
        qes_potential_free(ptr::null_mut());
        qes_spectrum_free(ptr::null_mut());
        qes_wavefunction_free(ptr::null_mut());
    }
    assert!(last_error().contains("null") || last_error().contains("NULL"));
}

#[test]
fn index_out_of_range() {
    let pot = pt(QesHyperbolicKind::PoschlTeller, 1);
    let spec = spectrum(pot, QesMethod::Roots);
    let mut x = 0.0;
    let status = unsafe { qes_spectrum_lambda(spec, 99, &mut x) };
    unsafe {
        qes_spectrum_free(spec);
        qes_potential_free(pot);
    }
    assert_eq!(status, QesStatus::OutOfRange);
}

#[test]
fn message_buffer_truncates() {
    let status = unsafe { qes_potential_sextic(0.0, 1.0, 1.0, 0.0, 0, ptr::null_mut()) };
    assert_eq!(status, QesStatus::NullPointer);
    let full = unsafe { qes_last_error_message(ptr::null_mut(), 0) };
    let mut buf = [1 as std::ffi::c_char; 4];
    let n = unsafe { qes_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert_eq!(n, full);
    assert_eq!(buf[3], 0);
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(qes_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qes.h")).unwrap()
}

#[test]
fn header_declares_every_export() {
    let h = header();
    for name in [
        "qes_last_error_message",
        "qes_version",
        "qes_potential_hyperbolic",
        "qes_potential_sextic",
        "qes_potential_pt_anharmonic",
        "qes_potential_eval",
        "qes_potential_free",
        "qes_spectrum_compute",
        "qes_spectrum_len",
        "qes_spectrum_complex_len",
        "qes_spectrum_lambda",
        "qes_spectrum_energy",
        "qes_spectrum_residual",
        "qes_spectrum_free",
        "qes_wavefunction_new",
        "qes_wavefunction_eval",
        "qes_wavefunction_free",
    ] {
        assert!(h.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(h.contains("typedef struct QesPotential QesPotential") || h.contains("struct QesPotential;"));
    assert!(h.contains("QES_STATUS_NULL_POINTER = 15"));
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/<test-binary>
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libqes_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_static_library() {
    let (Some(lib), Ok(cc)) = (static_lib(), which_cc()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("qes_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "smoke exited with {:?}: {stdout}", run.status.code());
    assert_eq!(stdout.lines().filter(|l| l.starts_with('E')).count(), 3);
    assert!(stdout.contains(&format!("version {}", env!("CARGO_PKG_VERSION"))));
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
