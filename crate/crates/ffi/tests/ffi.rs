use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use altfact_ffi::*;

const L2: f64 = 0.403_652_637_676_805_9;

struct Ctx(*mut AltfactContext);

impl Ctx {
    fn new() -> Self {
        let p = altfact_context_new();
        assert!(!p.is_null());
        Ctx(p)
    }

    fn last_error(&self) -> String {
        unsafe { CStr::from_ptr(altfact_context_last_error(self.0)) }.to_str().unwrap().to_string()
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { altfact_context_free(self.0) }
    }
}

fn eval_a(ctx: &Ctx, re: f64, im: f64, method: AltfactMethod) -> (AltfactStatus, AltfactOutcome) {
    let mut out = AltfactOutcome::default();
    let s = unsafe { altfact_eval_a(ctx.0, re, im, method as i32, &mut out) };
    (s, out)
}

fn eval_a1(ctx: &Ctx, re: f64, im: f64, method: AltfactMethod) -> (AltfactStatus, AltfactOutcome) {
    let mut out = AltfactOutcome::default();
    let s = unsafe { altfact_eval_a1(ctx.0, re, im, method as i32, &mut out) };
    (s, out)
}

#[test]
fn integer_values() {
    let ctx = Ctx::new();
    for (n, v) in [(1, 1.0), (2, 1.0), (3, 5.0), (4, 19.0), (7, 4421.0), (10, 3_301_819.0)] {
        let (s, out) = eval_a(&ctx, n as f64, 0.0, AltfactMethod::Auto);
        assert_eq!(s, AltfactStatus::Ok);
        assert_eq!((out.value_re, out.value_im), (v, 0.0));
        assert_ne!(out.method, AltfactMethod::Auto as i32);
    }
    let (s, out) = eval_a(&ctx, -1.0, 0.0, AltfactMethod::Auto);
    assert_eq!(s, AltfactStatus::Ok);
    assert_eq!(out.value_re, 1.0);
}

#[test]
fn representations_agree() {
    let ctx = Ctx::new();
    let (_, reference) = eval_a(&ctx, 0.5, 1.5, AltfactMethod::Integral);
    for m in [AltfactMethod::Recurrence, AltfactMethod::ClosedForm, AltfactMethod::Slavic] {
        let (s, out) = eval_a(&ctx, 0.5, 1.5, m);
        assert_eq!(s, AltfactStatus::Ok);
        assert_eq!(out.method, m as i32);
        let d = (out.value_re - reference.value_re).hypot(out.value_im - reference.value_im);
        assert!(d < 1e-10, "{m:?}: {d}");
    }
    let (_, s1) = eval_a1(&ctx, 0.5, 1.5, AltfactMethod::Series);
    let (_, c1) = eval_a1(&ctx, 0.5, 1.5, AltfactMethod::ClosedForm);
    assert!((s1.value_re - c1.value_re).hypot(s1.value_im - c1.value_im) < 1e-10);
}

#[test]
fn errors_map_to_status_codes() {
    let ctx = Ctx::new();
    assert_eq!(ctx.last_error(), "");

    let (s, _) = eval_a1(&ctx, 2.0, 0.0, AltfactMethod::Auto);
    assert_eq!(s, AltfactStatus::PoleProximity);
    assert!(ctx.last_error().contains("integer 2"), "{}", ctx.last_error());

    let (s, _) = eval_a(&ctx, 0.5, 0.0, AltfactMethod::Series);
    assert_eq!(s, AltfactStatus::Domain);

    let mut out = AltfactOutcome::default();
    let s = unsafe { altfact_eval_a(ctx.0, 0.5, 0.0, 42, &mut out) };
    assert_eq!(s, AltfactStatus::InvalidArgument);

    let (s, _) = eval_a(&ctx, f64::NAN, 0.0, AltfactMethod::Auto);
    assert_eq!(s, AltfactStatus::InvalidArgument);

    let s = unsafe { altfact_eval_a(ctx.0, 0.5, 0.0, AltfactMethod::Auto as i32, ptr::null_mut()) };
    assert_eq!(s, AltfactStatus::NullPointer);
    let s = unsafe { altfact_eval_a(ptr::null_mut(), 0.5, 0.0, AltfactMethod::Auto as i32, &mut out) };
    assert_eq!(s, AltfactStatus::NullPointer);
}

#[test]
fn context_settings() {
    let ctx = Ctx::new();
    unsafe {
        assert_eq!(altfact_context_set_tolerance(ctx.0, 0.0), AltfactStatus::InvalidArgument);
        assert!(ctx.last_error().contains("tol_rel"));
        assert_eq!(altfact_context_set_tolerance(ctx.0, 1e-10), AltfactStatus::Ok);
        assert_eq!(altfact_context_set_max_terms(ctx.0, 2), AltfactStatus::InvalidArgument);
        assert_eq!(altfact_context_set_max_terms(ctx.0, 200), AltfactStatus::Ok);
        assert_eq!(altfact_context_set_tolerance(ptr::null_mut(), 1e-10), AltfactStatus::NullPointer);
        altfact_context_free(ptr::null_mut());
        assert_eq!(CStr::from_ptr(altfact_context_last_error(ptr::null())).to_bytes(), b"");
    }
    let (s, out) = eval_a(&ctx, 1.5, 0.0, AltfactMethod::Auto);
    assert_eq!(s, AltfactStatus::Ok);
    assert!(out.value_re.is_finite());
}

#[test]
fn gamma_and_constants() {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { altfact_gamma(5.0, 0.0, &mut re, &mut im) }, AltfactStatus::Ok);
    assert!((re - 24.0).abs() < 1e-12 && im == 0.0);
    assert_eq!(unsafe { altfact_gamma(-2.0, 0.0, &mut re, &mut im) }, AltfactStatus::PoleProximity);
    assert_eq!(unsafe { altfact_gamma(1.0, 0.0, ptr::null_mut(), &mut im) }, AltfactStatus::NullPointer);
    assert!((altfact_constant_l2() - L2).abs() < 1e-15);
    assert!((altfact_constant_gompertz() - (1.0 - L2)).abs() < 1e-15);
}

#[test]
fn singularities() {
    let mut s = AltfactSingularity::default();
    assert_eq!(unsafe { altfact_singularity(AltfactFunction::A1 as i32, 0, &mut s) }, AltfactStatus::Ok);
    assert_eq!(s.order, 1);
    assert!((s.residue_re + std::f64::consts::E).abs() < 1e-15);
    assert!((s.principal_value_re - L2).abs() < 1e-14);

    assert_eq!(unsafe { altfact_singularity(AltfactFunction::A as i32, -4, &mut s) }, AltfactStatus::Ok);
    assert_eq!((s.location, s.residue_re), (-4, 2.5));

    assert_eq!(unsafe { altfact_singularity(AltfactFunction::A as i32, 3, &mut s) }, AltfactStatus::Ok);
    assert_eq!((s.order, s.principal_value_re), (0, 5.0));

    assert_eq!(unsafe { altfact_singularity(7, 0, &mut s) }, AltfactStatus::InvalidArgument);
    assert_eq!(unsafe { altfact_singularity(0, 0, ptr::null_mut()) }, AltfactStatus::NullPointer);
}

#[test]
fn oracle_buffer_protocol() {
    let mut need = 0usize;
    let s = unsafe { altfact_integer_oracle(7, ptr::null_mut(), 0, &mut need) };
    assert_eq!((s, need), (AltfactStatus::BufferTooSmall, 5));

    let mut small = [1 as std::ffi::c_char; 4];
    let s = unsafe { altfact_integer_oracle(7, small.as_mut_ptr(), small.len(), ptr::null_mut()) };
    assert_eq!(s, AltfactStatus::BufferTooSmall);
    assert!(small.iter().all(|&c| c == 1));

    let mut buf = vec![0 as std::ffi::c_char; 1200];
    let s = unsafe { altfact_integer_oracle(500, buf.as_mut_ptr(), buf.len(), &mut need) };
    assert_eq!(s, AltfactStatus::Ok);
    let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(text.len() + 1, need);
    assert!(text.bytes().all(|b| b.is_ascii_digit()));

    let s = unsafe { altfact_integer_oracle(501, buf.as_mut_ptr(), buf.len(), &mut need) };
    assert_eq!(s, AltfactStatus::Domain);
}

#[test]
fn status_messages() {
    for code in 0..=8 {
        let msg = unsafe { CStr::from_ptr(altfact_status_message(code)) }.to_str().unwrap();
        assert!(!msg.is_empty() && msg != "unknown status");
    }
    let msg = unsafe { CStr::from_ptr(altfact_status_message(99)) };
    assert_eq!(msg.to_bytes(), b"unknown status");
}

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/altfact.h")).unwrap()
}

#[test]
fn header_declares_the_interface() {
    let h = header();
    for name in [
        "typedef struct AltfactContext AltfactContext;",
        "altfact_context_new(void)",
        "altfact_context_free(",
        "altfact_context_set_tolerance(",
        "altfact_context_set_max_terms(",
        "altfact_context_last_error(",
        "altfact_status_message(",
        "altfact_eval_a(",
        "altfact_eval_a1(",
        "altfact_gamma(",
        "altfact_singularity(",
        "altfact_constant_l2(void)",
        "altfact_constant_gompertz(void)",
        "altfact_integer_oracle(",
        "ALTFACT_STATUS_PANIC = 8",
        "ALTFACT_METHOD_AUTO = 5",
        "ALTFACT_FUNCTION_GAMMA = 2",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_smoke_test() {
    let lib = target_dir().join("libaltfact_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("altfact_smoke");
    let compiled = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    match compiled {
        Ok(status) => assert!(status.success(), "C compilation failed"),
        Err(e) => {
            eprintln!("skipping: no C compiler ({e})");
            return;
        }
    }
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
