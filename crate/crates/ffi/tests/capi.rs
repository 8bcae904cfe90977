use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use stardisc_ffi::*;

fn last_error() -> String {
    let p = stardisc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn example() -> *mut StardiscPointSet {
    let coords = [0.1, 0.4, 0.2, 0.9, 0.7, 0.6, 0.8, 0.7];
    let mut set = ptr::null_mut();
    let st = unsafe { stardisc_pointset_new(2, coords.as_ptr(), 4, &mut set) };
    assert_eq!(st, StardiscStatus::Ok);
    set
}

#[test]
fn discrepancy_through_handles() {
    let set = example();
    unsafe {
        assert_eq!(
            (stardisc_pointset_len(set), stardisc_pointset_dim(set)),
            (4, 2)
        );
        let mut value = 0.0;
        let mut witness = [0.0; 2];
        let mut closed = -1;
        let st = stardisc_discrepancy(set, &mut value, witness.as_mut_ptr(), &mut closed);
        assert_eq!(st, StardiscStatus::Ok);
        assert_eq!((value, witness, closed), (0.4, [1.0, 0.4], 0));
        let mut coords = [0.0; 8];
        assert_eq!(
            stardisc_pointset_coords(set, coords.as_mut_ptr(), 8),
            StardiscStatus::Ok
        );
        assert_eq!(coords[3], 0.9);
        assert_eq!(
            stardisc_pointset_coords(set, coords.as_mut_ptr(), 7),
            StardiscStatus::InvalidArgument
        );
        stardisc_pointset_free(set);
    }
}

#[test]
fn subset_selection_matches_brute_force() {
    let kind = CString::new("fibonacci").unwrap();
    let mut set = ptr::null_mut();
    unsafe {
        assert_eq!(
            stardisc_pointset_generate(kind.as_ptr(), 2, 12, 0, &mut set),
            StardiscStatus::Ok
        );
        let mut values = Vec::new();
        for solver in [StardiscSolver::BranchAndBound, StardiscSolver::BruteForce] {
            let mut sel = ptr::null_mut();
            let st = stardisc_subset(set, 5, solver, 0, 0, 0, &mut sel);
            assert_eq!(st, StardiscStatus::Ok);
            assert_eq!(
                stardisc_selection_status(sel),
                StardiscSelectionStatus::Optimal
            );
            let mut idx = [usize::MAX; 5];
            assert_eq!(stardisc_selection_len(sel), 5);
            assert_eq!(
                stardisc_selection_indices(sel, idx.as_mut_ptr(), 5),
                StardiscStatus::Ok
            );
            assert!(idx.windows(2).all(|w| w[0] < w[1]) && idx[4] < 12);
            values.push(stardisc_selection_value(sel));
            stardisc_selection_free(sel);
        }
        assert_eq!(values[0], values[1]);

        let mut sel = ptr::null_mut();
        let st = stardisc_subset(set, 5, StardiscSolver::Random, 0, 50, 3, &mut sel);
        assert_eq!(st, StardiscStatus::Ok);
        assert!(stardisc_selection_value(sel) >= values[0]);
        assert_eq!(stardisc_selection_nodes(sel), 50);
        stardisc_selection_free(sel);
        stardisc_pointset_free(set);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    let mut set = ptr::null_mut();
    let bad = [0.5, 1.5];
    unsafe {
        assert_eq!(
            stardisc_pointset_new(2, bad.as_ptr(), 1, &mut set),
            StardiscStatus::InvalidInput
        );
        assert!(set.is_null());
        assert!(last_error().contains("outside"));

        let kind = CString::new("nope").unwrap();
        assert_eq!(
            stardisc_pointset_generate(kind.as_ptr(), 2, 4, 0, &mut set),
            StardiscStatus::InvalidArgument
        );
        assert_eq!(
            stardisc_pointset_generate(ptr::null(), 2, 4, 0, &mut set),
            StardiscStatus::NullPointer
        );

        let ex = example();
        let mut sel = ptr::null_mut();
        assert_eq!(
            stardisc_subset(ex, 9, StardiscSolver::Greedy, 0, 0, 0, &mut sel),
            StardiscStatus::InvalidArgument
        );
        let path = CString::new("/nonexistent/dir/x.lp").unwrap();
        assert_eq!(stardisc_lp_export(ex, 2, path.as_ptr()), StardiscStatus::Io);
        stardisc_pointset_free(ex);
        stardisc_pointset_free(ptr::null_mut());
        stardisc_selection_free(ptr::null_mut());
        assert!(stardisc_selection_value(ptr::null()).is_nan());
    }
}

#[test]
fn lp_export_and_read_back() {
    let dir = std::env::temp_dir().join(format!("stardisc-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lp = dir.join("ex1.lp");
    let set = example();
    let path = CString::new(lp.to_str().unwrap()).unwrap();
    unsafe {
        assert_eq!(
            stardisc_lp_export(set, 2, path.as_ptr()),
            StardiscStatus::Ok
        );
        stardisc_pointset_free(set);
    }
    let text = std::fs::read_to_string(&lp).unwrap();
    let problem = stardisc::milp::read_lp(&text).unwrap();
    assert_eq!(problem.rows.len(), 42);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/stardisc.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "stardisc_subset",
        "StardiscPointSet",
        "STARDISC_STATUS_CAP_EXCEEDED",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-xc", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .output()
    else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
