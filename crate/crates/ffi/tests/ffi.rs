use std::ffi::{c_char, CStr};
use std::path::Path;
use std::process::Command;

use madcap_ffi::*;

fn channel(g1: f64, g2: f64, g3: f64) -> *mut MadcapChannel {
    let mut h = std::ptr::null_mut();
    assert_eq!(unsafe { madcap_channel_new(g1, g2, g3, &mut h) }, MadcapStatus::Ok);
    h
}

#[test]
fn apply_and_complement_of_excited_state() {
    let h = channel(0.3, 0.2, 0.5);
    let mut re = [0.0; 9];
    let im = [0.0; 9];
    re[8] = 1.0; // |2><2|
    let (mut o_re, mut o_im) = ([0.0; 9], [0.0; 9]);
    let s = unsafe { madcap_channel_apply(h, re.as_ptr(), im.as_ptr(), o_re.as_mut_ptr(), o_im.as_mut_ptr()) };
    assert_eq!(s, MadcapStatus::Ok);
    let diag = [o_re[0], o_re[4], o_re[8]];
    for (got, want) in diag.iter().zip([0.5, 0.2, 0.3]) {
        assert!((got - want).abs() < 1e-12);
    }
    let (mut e_re, mut e_im) = ([0.0; 16], [0.0; 16]);
    let s = unsafe {
        madcap_channel_complement(h, re.as_ptr(), im.as_ptr(), e_re.as_mut_ptr(), e_im.as_mut_ptr())
    };
    assert_eq!(s, MadcapStatus::Ok);
    let trace: f64 = (0..4).map(|k| e_re[k * 5]).sum();
    assert!((trace - 1.0).abs() < 1e-12);
    assert!(e_im.iter().all(|x| x.abs() < 1e-15));
    unsafe { madcap_channel_free(h) };
}

#[test]
fn rejects_non_states() {
    let h = channel(0.1, 0.1, 0.1);
    let re = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]; // trace 3
    let im = [0.0; 9];
    let (mut o_re, mut o_im) = ([0.0; 9], [0.0; 9]);
    let s = unsafe { madcap_channel_apply(h, re.as_ptr(), im.as_ptr(), o_re.as_mut_ptr(), o_im.as_mut_ptr()) };
    assert_eq!(s, MadcapStatus::InvalidArgument);
    let s = unsafe { madcap_channel_apply(h, std::ptr::null(), im.as_ptr(), o_re.as_mut_ptr(), o_im.as_mut_ptr()) };
    assert_eq!(s, MadcapStatus::NullPointer);
    unsafe { madcap_channel_free(h) };
}

#[test]
fn classify_and_capacity() {
    let h = channel(0.7, 0.1, 0.6);
    let mut c = MadcapClassification {
        degradable: -1,
        antidegradable: MadcapAntidegradable::Unknown,
    };
    assert_eq!(unsafe { madcap_channel_classify(h, 1e-9, &mut c) }, MadcapStatus::Ok);
    assert_eq!(c.degradable, 0);
    assert_eq!(c.antidegradable, MadcapAntidegradable::Yes);
    assert_eq!(unsafe { madcap_channel_classify(h, -1.0, &mut c) }, MadcapStatus::InvalidArgument);
    let mut est = MadcapEstimate {
        lower: -1.0,
        upper: -1.0,
        has_upper: -1,
        status: MadcapEstimateStatus::Interval,
    };
    let mut buf = [0 as c_char; 64];
    let s = unsafe { madcap_channel_capacity(h, MadcapQuantity::Q, &mut est, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(s, MadcapStatus::Ok);
    assert_eq!(est.status, MadcapEstimateStatus::Zero);
    assert_eq!(est.lower, 0.0);
    assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "zero-region");
    unsafe { madcap_channel_free(h) };

    let h = channel(0.3, 0.0, 0.0);
    let mut short = [0 as c_char; 5];
    let s = unsafe { madcap_channel_capacity(h, MadcapQuantity::Qe, &mut est, short.as_mut_ptr(), short.len()) };
    assert_eq!(s, MadcapStatus::Ok);
    assert!((est.lower - 1.336940180908083).abs() < 1e-5);
    assert_eq!(unsafe { CStr::from_ptr(short.as_ptr()) }.to_str().unwrap(), "enta");
    unsafe { madcap_channel_free(h) };
}

#[test]
fn composition_through_handles() {
    let a = channel(0.2, 0.1, 0.3);
    let b = channel(0.4, 0.3, 0.2);
    let mut c = std::ptr::null_mut();
    assert_eq!(unsafe { madcap_compose_rates(a, b, &mut c) }, MadcapStatus::Ok);
    let mut g = [0.0; 3];
    assert_eq!(unsafe { madcap_channel_rates(c, g.as_mut_ptr()) }, MadcapStatus::Ok);
    assert!((g[0] - (0.4 + 0.2 - 0.08)).abs() < 1e-15);
    assert!((g[1] - (0.3 * (1.0 - 0.2 - 0.1) + 0.1 * (1.0 - 0.2))).abs() < 1e-15);
    assert!((g[2] - (0.2 + 0.3 * (0.2 - 0.3) + 0.3 * (1.0 - 0.2))).abs() < 1e-15);
    assert_eq!(unsafe { madcap_compose_rates(a, std::ptr::null(), &mut c) }, MadcapStatus::NullPointer);
    unsafe {
        madcap_channel_free(a);
        madcap_channel_free(b);
        madcap_channel_free(c);
        madcap_channel_free(std::ptr::null_mut());
    }
}

#[test]
fn header_is_generated_and_parses_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/madcap.h");
    let text = std::fs::read_to_string(&header).expect("header written by the build script");
    for name in [
        "madcap_channel_new",
        "madcap_channel_free",
        "madcap_channel_apply",
        "madcap_channel_complement",
        "madcap_channel_classify",
        "madcap_channel_capacity",
        "madcap_compose_rates",
        "madcap_last_error_message",
        "madcap_version",
        "MADCAP_STATUS_INVALID_RATES",
        "typedef struct MadcapChannel MadcapChannel",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
