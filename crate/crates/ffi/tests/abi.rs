use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use interval_dps_ffi::*;

fn last_error() -> String {
    let p = idps_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn build_and_verify_through_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(idps_instance_random(60, 8, 11, 1, &mut g), IdpsStatus::Ok);
        assert_eq!(idps_instance_len(g), 60);
        assert_eq!(idps_instance_terminal_count(g), 8);

        for build in [idps_build_das as unsafe extern "C" fn(_, _) -> _, idps_build_dps] {
            let mut h = ptr::null_mut();
            assert_eq!(build(g, &mut h), IdpsStatus::Ok);
            let mut ok = false;
            assert_eq!(idps_verify(g, h, 1, &mut ok), IdpsStatus::Ok);
            assert!(ok);

            let m = idps_subgraph_edge_count(h);
            let mut written = 0;
            assert_eq!(idps_subgraph_edges(h, ptr::null_mut(), 0, &mut written), if m == 0 { IdpsStatus::Ok } else { IdpsStatus::BufferTooSmall });
            assert_eq!(written, m);
            let mut buf = vec![0usize; 2 * m];
            assert_eq!(idps_subgraph_edges(h, buf.as_mut_ptr(), m, &mut written), IdpsStatus::Ok);
            assert!(buf.chunks(2).all(|e| e[0] < e[1]));
            idps_subgraph_free(h);
        }
        idps_instance_free(g);
    }
}

#[test]
fn explicit_intervals_and_distance() {
    // [0,1] point-terminal at 0, [1,2], terminal point at 2.
    let coords: [i64; 16] = [0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 2, 1, 2, 1, 2, 1];
    let term = [1u8, 0, 0, 1];
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(idps_instance_new(coords.as_ptr(), term.as_ptr(), 4, &mut g), IdpsStatus::Ok);
        let mut d = 0;
        assert_eq!(idps_distance(g, 0, 3, &mut d), IdpsStatus::Ok);
        assert_eq!(d, 3);
        assert_eq!(idps_distance(g, 0, 9, &mut d), IdpsStatus::InvalidArgument);
        assert!(last_error().contains('9'));
        idps_instance_free(g);
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(idps_instance_random(20, 4, 5, 0, &mut g), IdpsStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(idps_instance_to_json(g, &mut s), IdpsStatus::Ok);
        let text = CStr::from_ptr(s).to_owned();
        let mut g2 = ptr::null_mut();
        assert_eq!(idps_instance_from_json(text.as_ptr(), &mut g2), IdpsStatus::Ok);
        let mut s2 = ptr::null_mut();
        assert_eq!(idps_instance_to_json(g2, &mut s2), IdpsStatus::Ok);
        assert_eq!(CStr::from_ptr(s2), text.as_c_str());
        idps_string_free(s);
        idps_string_free(s2);
        idps_instance_free(g);
        idps_instance_free(g2);
    }
}

#[test]
fn errors_are_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(idps_instance_new(ptr::null(), ptr::null(), 0, &mut g), IdpsStatus::NullPointer);
        assert_eq!(idps_instance_random(5, 9, 0, 0, &mut g), IdpsStatus::InvalidArgument);
        assert_eq!(idps_instance_random(5, 2, 0, 7, &mut g), IdpsStatus::InvalidArgument);
        let bad = CString::new("{\"version\":1}").unwrap();
        assert_eq!(idps_instance_from_json(bad.as_ptr(), &mut g), IdpsStatus::InvalidInstance);
        let coords: [i64; 4] = [2, 1, 1, 1];
        assert_eq!(idps_instance_new(coords.as_ptr(), [1u8].as_ptr(), 1, &mut g), IdpsStatus::InvalidInstance);
        assert!(g.is_null());

        // Two components: the exact builder reports the split.
        let coords: [i64; 8] = [0, 1, 0, 1, 5, 1, 5, 1];
        assert_eq!(idps_instance_new(coords.as_ptr(), [1u8, 1].as_ptr(), 2, &mut g), IdpsStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(idps_build_dps(g, &mut h), IdpsStatus::Disconnected);
        assert!(!last_error().is_empty());
        idps_instance_free(g);
        idps_instance_free(ptr::null_mut());
        idps_subgraph_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/interval_dps.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["idps_build_dps", "idps_build_das", "idps_verify", "idps_last_error", "IdpsStatus_Ok"] {
        assert!(text.contains(f), "header lacks {f}");
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
