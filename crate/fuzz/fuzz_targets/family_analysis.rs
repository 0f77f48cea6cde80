//! Parsed families through certificates and the pipeline. Small inputs only;
//! the properties are the same ones the seeded campaign checks.
#![no_main]

use libfuzzer_sys::fuzz_target;
use vcx_core::pipeline::check::verify_report;
use vcx_core::{build_assignment, run_pipeline, vc_dimension, Error, PipelineOptions, UniformFamily};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(fam) = UniformFamily::parse_fam(text) else { return };
    if fam.n() > 12 || fam.len() > 80 || fam.k() < 2 {
        return;
    }
    let d = fam.k() as usize - 1;
    let vc = vc_dimension(&fam);
    match build_assignment(&fam, d) {
        Ok(_) => assert!(vc <= d as i32),
        Err(Error::MemberShattered(m)) => {
            assert_eq!(vc, fam.k() as i32);
            assert!(fam.contains(m));
        }
        Err(e) => panic!("unexpected certificate error: {e}"),
    }
    match run_pipeline(&fam, d, PipelineOptions::default()) {
        Ok(report) => {
            assert!(vc <= d as i32);
            verify_report(&report).expect("report re-derives");
            assert!(report.audit.slack >= 0);
        }
        Err(Error::Usage(_)) => assert!(vc > d as i32),
        Err(e) => panic!("VC <= d family broke the pipeline: {e}"),
    }
});
