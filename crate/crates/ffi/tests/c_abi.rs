use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use pwt_ffi::*;

fn last_error() -> String {
    let p = pwt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn generated(n: usize, seed: u64) -> *mut PwtInstance {
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { pwt_instance_generate(n, seed, false, &mut inst) },
        PwtStatus::Ok
    );
    assert!(!inst.is_null());
    inst
}

#[test]
fn generate_evaluate_and_free() {
    let inst = generated(30, 4);
    unsafe {
        assert_eq!(pwt_instance_n(inst), 30);
        assert_eq!(pwt_instance_capacity(inst), 8000);

        let bits = [0u8; 30];
        let (mut w, mut b, mut q) = (1u64, 0.0f64, 1i64);
        assert_eq!(
            pwt_evaluate(inst, bits.as_ptr(), 30, &mut w, &mut b, &mut q),
            PwtStatus::Ok
        );
        assert_eq!((w, q), (0, 0));
        // empty packing travels at full speed: -R d / v_max
        assert_eq!(b, -70.0 * 50.0);

        let all = [1u8; 30];
        assert_eq!(
            pwt_evaluate(inst, all.as_ptr(), 30, &mut w, ptr::null_mut(), &mut q),
            PwtStatus::Ok
        );
        assert!(w > 0);
        assert_eq!(q, (8000i64 - w as i64).min(0));
        pwt_instance_free(inst);
    }
}

#[test]
fn run_reaches_optimum() {
    let inst = generated(40, 9);
    unsafe {
        let (mut k, mut best) = (0usize, 0.0f64);
        assert_eq!(pwt_optimal_prefix(inst, &mut k, &mut best), PwtStatus::Ok);

        for alg in [PwtAlgorithm::RlsSwap, PwtAlgorithm::Gsemo] {
            let mut result = ptr::null_mut();
            let status = pwt_run(inst, alg as u32, 1_000_000, 3, true, true, &mut result);
            assert_eq!(status, PwtStatus::Ok);
            assert!(pwt_result_hit_target(result));
            assert!(pwt_result_evaluations(result) > 0);
            assert_eq!(pwt_result_best_violation(result), 0);
            assert!((pwt_result_best_benefit(result) - best).abs() <= 1e-9 * best.abs().max(1.0));

            let mut bits = vec![9u8; 40];
            assert_eq!(
                pwt_result_best_bits(result, bits.as_mut_ptr(), 40),
                PwtStatus::Ok
            );
            let expected: Vec<u8> = (0..40).map(|i| u8::from(i < k)).collect();
            assert_eq!(bits, expected);
            assert_eq!(
                pwt_result_best_bits(result, bits.as_mut_ptr(), 39),
                PwtStatus::InvalidArgument
            );
            pwt_result_free(result);
        }
        pwt_instance_free(inst);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(
            pwt_instance_generate(0, 1, false, &mut inst),
            PwtStatus::InvalidArgument
        );
        assert!(inst.is_null());
        assert!(last_error().contains("n must be positive"));

        assert_eq!(
            pwt_instance_generate(5, 1, false, ptr::null_mut()),
            PwtStatus::NullPointer
        );

        let bad = CString::new("{\"version\": 1}").unwrap();
        assert_eq!(
            pwt_instance_from_json(bad.as_ptr(), &mut inst),
            PwtStatus::Parse
        );

        let missing = CString::new("/nonexistent/instance.json").unwrap();
        assert_eq!(
            pwt_instance_load(missing.as_ptr(), &mut inst),
            PwtStatus::Io
        );

        assert_eq!(
            pwt_optimal_prefix(ptr::null(), ptr::null_mut(), ptr::null_mut()),
            PwtStatus::NullPointer
        );

        let inst = generated(5, 2);
        let bits = [1u8; 4];
        assert_eq!(
            pwt_evaluate(
                inst,
                bits.as_ptr(),
                4,
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            PwtStatus::InvalidInstance
        );
        let mut result = ptr::null_mut();
        assert_eq!(
            pwt_run(inst, 17, 10, 0, true, false, &mut result),
            PwtStatus::InvalidArgument
        );
        assert!(last_error().contains("unknown algorithm"));
        assert_eq!(
            pwt_run(inst, 0, 0, 0, true, false, &mut result),
            PwtStatus::InvalidArgument
        );
        pwt_instance_free(inst);

        // null handles are tolerated by the release and accessor functions
        pwt_instance_free(ptr::null_mut());
        pwt_result_free(ptr::null_mut());
        assert_eq!(pwt_instance_n(ptr::null()), 0);
        assert!(pwt_result_best_benefit(ptr::null()).is_nan());
    }
}

#[test]
fn json_round_trip_through_abi() {
    let inst = generated(12, 5);
    let rust_side =
        pwt::generate::gen_correlated(&pwt::generate::GenParams::correlated(12, 5)).unwrap();
    let json = CString::new(rust_side.to_json().unwrap()).unwrap();
    unsafe {
        let mut copy = ptr::null_mut();
        assert_eq!(
            pwt_instance_from_json(json.as_ptr(), &mut copy),
            PwtStatus::Ok
        );
        let (mut k1, mut k2) = (0, 0);
        let (mut b1, mut b2) = (0.0, 0.0);
        pwt_optimal_prefix(inst, &mut k1, &mut b1);
        pwt_optimal_prefix(copy, &mut k2, &mut b2);
        assert_eq!((k1, b1), (k2, b2));
        pwt_instance_free(copy);
        pwt_instance_free(inst);
    }
}

#[test]
fn header_matches_exports() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/pwt.h")).unwrap();
    for name in [
        "pwt_last_error",
        "pwt_instance_generate",
        "pwt_instance_from_json",
        "pwt_instance_load",
        "pwt_instance_free",
        "pwt_instance_n",
        "pwt_instance_capacity",
        "pwt_evaluate",
        "pwt_optimal_prefix",
        "pwt_run",
        "pwt_result_free",
        "pwt_result_evaluations",
        "pwt_result_best_benefit",
        "pwt_result_best_violation",
        "pwt_result_hit_target",
        "pwt_result_best_bits",
        "typedef struct PwtInstance PwtInstance;",
        "PWT_ALGORITHM_SEMO_SWAP = 4",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }

    // the header must compile as C when a compiler is around
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        return;
    };
    if !cc.status.success() {
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"pwt.h\"\nint main(void) { PwtInstance *i = 0; return pwt_instance_generate(3, 1, false, &i) == PWT_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
