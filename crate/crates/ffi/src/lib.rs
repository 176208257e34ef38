//! C ABI over the `qes` library.
//!
//! Objects are opaque handles created by `qes_*_new`/`qes_*_compute` and
//! released by the matching `*_free`. Every fallible call returns a
//! [`QesStatus`]; the message of the most recent failure on the calling
//! thread is available from [`qes_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qes::potentials::eval_potential;
use qes::spectra::{lambda_spectrum_roots, lambda_spectrum_tridiagonal};
use qes::wavefunctions::{eval_wavefunction, EigenfunctionSpec};
use qes::{PTAnharmonicParams, PoschlTellerParams, PotentialFamily, Precision, QesError, SexticParams, SpectralSolution, TwoJ};

/// Status codes. `QES_STATUS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QesStatus {
    Ok = 0,
    InvalidParameter = 1,
    NegativeRadicand = 2,
    OutOfRange = 3,
    DegenerateParameters = 4,
    Singularity = 5,
    Domain = 6,
    Pole = 7,
    GammaPole = 8,
    InconsistentCoefficients = 9,
    ComplexPotential = 10,
    NotConverged = 11,
    StepUnderflow = 12,
    NonNormalizable = 13,
    Numerical = 14,
    NullPointer = 15,
    Panic = 16,
}

/// Which image of the Pöschl–Teller potential a handle describes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QesHyperbolicKind {
    PoschlTeller = 0,
    GeneralizedPt = 1,
    ScarfPt = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QesMethod {
    Roots = 0,
    Tridiagonal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QesPrecision {
    Double = 0,
    Extended = 1,
}

/// Opaque potential handle.
pub struct QesPotential(PotentialFamily);

/// Opaque spectrum handle.
pub struct QesSpectrum(SpectralSolution);

/// Opaque eigenfunction handle.
pub struct QesWavefunction(EigenfunctionSpec);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &QesError) -> QesStatus {
    match err {
        QesError::InvalidParameter(_) => QesStatus::InvalidParameter,
        QesError::NegativeRadicand { .. } => QesStatus::NegativeRadicand,
        QesError::OutOfRange { .. } => QesStatus::OutOfRange,
        QesError::DegenerateParameters(_) => QesStatus::DegenerateParameters,
        QesError::Singularity { .. } => QesStatus::Singularity,
        QesError::Domain { .. } => QesStatus::Domain,
        QesError::Pole { .. } => QesStatus::Pole,
        QesError::GammaPole { .. } => QesStatus::GammaPole,
        QesError::InconsistentCoefficients { .. } => QesStatus::InconsistentCoefficients,
        QesError::ComplexPotential => QesStatus::ComplexPotential,
        QesError::NotConverged { .. } => QesStatus::NotConverged,
        QesError::StepUnderflow { .. } => QesStatus::StepUnderflow,
        QesError::NonNormalizable { .. } => QesStatus::NonNormalizable,
        QesError::Numerical(_) => QesStatus::Numerical,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard<F>(f: F) -> QesStatus
where
    F: FnOnce() -> Result<(), QesStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QesStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            QesStatus::Panic
        }
    }
}

fn lift<T>(r: qes::Result<T>) -> Result<T, QesStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), QesStatus> {
    if p.is_null() {
        set_error(format!("{name} is NULL"));
        Err(QesStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn publish<T>(out: *mut *mut T, value: T) {
    // SAFETY: callers check `out` for NULL before producing `value`.
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL,
/// or 0 when there is no error.
///
/// # Safety
/// `buf` must be NULL or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn qes_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            // SAFETY: `buf` has `len` bytes and n < len.
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qes_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a Pöschl–Teller-type potential; `twoj` is twice the QES index.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qes_potential_hyperbolic(
    kind: QesHyperbolicKind,
    l: f64,
    a: f64,
    q: f64,
    alpha: f64,
    twoj: u32,
    out: *mut *mut QesPotential,
) -> QesStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = lift(PoschlTellerParams::new(l, a, q, alpha, TwoJ(twoj)))?;
        let fam = match kind {
            QesHyperbolicKind::PoschlTeller => PotentialFamily::PoschlTeller(p),
            QesHyperbolicKind::GeneralizedPt => PotentialFamily::GeneralizedPT(p),
            QesHyperbolicKind::ScarfPt => PotentialFamily::ScarfPT(p),
        };
        publish(out, QesPotential(fam));
        Ok(())
    })
}

/// Creates a radial sextic oscillator.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qes_potential_sextic(
    l: f64,
    b: f64,
    a: f64,
    q: f64,
    twoj: u32,
    out: *mut *mut QesPotential,
) -> QesStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = lift(SexticParams::new(l, b, a, q, TwoJ(twoj)))?;
        publish(out, QesPotential(PotentialFamily::Sextic(p)));
        Ok(())
    })
}

/// Creates a PT-symmetric anharmonic oscillator.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn qes_potential_pt_anharmonic(
    b: f64,
    a: f64,
    q: f64,
    ell: f64,
    twoj: u32,
    out: *mut *mut QesPotential,
) -> QesStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = lift(PTAnharmonicParams::new(b, a, q, ell, TwoJ(twoj)))?;
        publish(out, QesPotential(PotentialFamily::PTAnharmonic(p)));
        Ok(())
    })
}

/// V(x) as real and imaginary parts.
///
/// # Safety
/// `pot` must come from a `qes_potential_*` constructor; `re` and `im` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_potential_eval(pot: *const QesPotential, x: f64, re: *mut f64, im: *mut f64) -> QesStatus {
    guard(|| {
        non_null(pot, "pot")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        // SAFETY: checked non-null; validity is the caller's contract.
        let v = lift(eval_potential(unsafe { &(*pot).0 }, x))?;
        unsafe {
            *re = v.re;
            *im = v.im;
        }
        Ok(())
    })
}

/// Releases a potential handle. NULL is ignored.
///
/// # Safety
/// `pot` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qes_potential_free(pot: *mut QesPotential) {
    if !pot.is_null() {
        // SAFETY: produced by Box::into_raw in a constructor.
        drop(unsafe { Box::from_raw(pot) });
    }
}

/// Computes the algebraic spectrum of a potential.
///
/// # Safety
/// `pot` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_compute(
    pot: *const QesPotential,
    method: QesMethod,
    precision: QesPrecision,
    out: *mut *mut QesSpectrum,
) -> QesStatus {
    guard(|| {
        non_null(pot, "pot")?;
        non_null(out, "out")?;
        // SAFETY: checked non-null.
        let fam = unsafe { &(*pot).0 };
        let precision = match precision {
            QesPrecision::Double => Precision::Double,
            QesPrecision::Extended => Precision::Extended,
        };
        let sol = lift(match method {
            QesMethod::Roots => lambda_spectrum_roots(fam, precision),
            QesMethod::Tridiagonal => lambda_spectrum_tridiagonal(fam, precision),
        })?;
        publish(out, QesSpectrum(sol));
        Ok(())
    })
}

/// Number of real roots in the spectrum.
///
/// # Safety
/// `spec` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_len(spec: *const QesSpectrum) -> usize {
    if spec.is_null() {
        return 0;
    }
    // SAFETY: checked non-null.
    unsafe { (*spec).0.lambda_roots.len() }
}

/// Number of roots quarantined as complex.
///
/// # Safety
/// `spec` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_complex_len(spec: *const QesSpectrum) -> usize {
    if spec.is_null() {
        return 0;
    }
    // SAFETY: checked non-null.
    unsafe { (*spec).0.complex_roots.len() }
}

unsafe fn spectrum_entry(
    spec: *const QesSpectrum,
    index: usize,
    out: *mut f64,
    pick: fn(&SpectralSolution) -> &[f64],
) -> QesStatus {
    guard(|| {
        non_null(spec, "spectrum")?;
        non_null(out, "out")?;
        // SAFETY: checked non-null.
        let values = pick(unsafe { &(*spec).0 });
        let v = *values.get(index).ok_or_else(|| {
            set_error(format!("index {index} out of range ({} roots)", values.len()));
            QesStatus::OutOfRange
        })?;
        unsafe { *out = v };
        Ok(())
    })
}

/// The `index`-th real spectral parameter (ascending).
///
/// # Safety
/// `spec` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_lambda(spec: *const QesSpectrum, index: usize, out: *mut f64) -> QesStatus {
    unsafe { spectrum_entry(spec, index, out, |s| &s.lambda_roots) }
}

/// Energy of the `index`-th real root.
///
/// # Safety
/// `spec` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_energy(spec: *const QesSpectrum, index: usize, out: *mut f64) -> QesStatus {
    unsafe { spectrum_entry(spec, index, out, |s| &s.energies) }
}

/// |P_{2j+1}| at the `index`-th real root.
///
/// # Safety
/// `spec` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_residual(spec: *const QesSpectrum, index: usize, out: *mut f64) -> QesStatus {
    unsafe { spectrum_entry(spec, index, out, |s| &s.residuals) }
}

/// Releases a spectrum handle. NULL is ignored.
///
/// # Safety
/// `spec` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qes_spectrum_free(spec: *mut QesSpectrum) {
    if !spec.is_null() {
        // SAFETY: produced by Box::into_raw in qes_spectrum_compute.
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Closed-form eigenfunction of `pot` at spectral parameter `lambda`.
///
/// # Safety
/// `pot` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_wavefunction_new(
    pot: *const QesPotential,
    lambda: f64,
    out: *mut *mut QesWavefunction,
) -> QesStatus {
    guard(|| {
        non_null(pot, "pot")?;
        non_null(out, "out")?;
        // SAFETY: checked non-null.
        let spec = lift(EigenfunctionSpec::new(unsafe { (*pot).0 }, lambda))?;
        publish(out, QesWavefunction(spec));
        Ok(())
    })
}

/// ψ(x) as real and imaginary parts.
///
/// # Safety
/// `wf` must be a live handle; `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qes_wavefunction_eval(wf: *const QesWavefunction, x: f64, re: *mut f64, im: *mut f64) -> QesStatus {
    guard(|| {
        non_null(wf, "wf")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        // SAFETY: checked non-null.
        let v = lift(eval_wavefunction(unsafe { &(*wf).0 }, x))?;
        unsafe {
            *re = v.re;
            *im = v.im;
        }
        Ok(())
    })
}

/// Releases an eigenfunction handle. NULL is ignored.
///
/// # Safety
/// `wf` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qes_wavefunction_free(wf: *mut QesWavefunction) {
    if !wf.is_null() {
        // SAFETY: produced by Box::into_raw in qes_wavefunction_new.
        drop(unsafe { Box::from_raw(wf) });
    }
}
