//! Round-robin iteration over an indexed map family, the common-fixed-point
//! certificate, and the brute-force oracle cross-check.

use gfix::analysis::{CoefficientTensor, PhiFunction};
use gfix::gspace::{FiniteGSpace, GValue};
use gfix::map::{MapFamily, TabulatedMap};
use gfix::oracle::brute_common_fixed_points;
use gfix::solver::{certify_family, common_fixed_point, CertifyOptions, TheoremId};

fn main() {
    let space = FiniteGSpace::three_point();
    // T_odd = const 0, T_even = the three-point map; both fix 0.
    let family = MapFamily::new(
        vec![
            TabulatedMap::constant(3, 0).unwrap(),
            TabulatedMap::three_point_example_map(),
        ],
        "alternating",
    )
    .unwrap();

    let run = common_fixed_point(&space, &family, 2, GValue::new(1e-12).unwrap(), 64).unwrap();
    println!(
        "round-robin from 2: points {:?}, converged = {}, iterations = {}",
        run.trace.points, run.trace.converged, run.trace.iterations
    );
    println!("  claimed common fixed point: {:?}", run.fixed_point);
    for (k, r) in &run.residuals {
        println!("  G(u, T_{k} u, T_{k} u) = {r}");
    }

    let oracle = brute_common_fixed_points(&space, &family, 4).unwrap();
    println!(
        "oracle: common fixed points {:?}, unique = {}",
        oracle.fixed_points, oracle.unique
    );

    // Certificate for the three-tensor common-fixed-point condition. The
    // alternating family is not a uniform contraction, so hypotheses may
    // fail; the constant family certifies cleanly.
    let zeros = MapFamily::new(
        vec![
            TabulatedMap::constant(3, 0).unwrap(),
            TabulatedMap::constant(3, 0).unwrap(),
        ],
        "constant family",
    )
    .unwrap();
    for (label, fam) in [("alternating", &family), ("constant", &zeros)] {
        let opts = CertifyOptions::<usize> {
            delta: Some(CoefficientTensor::constant(0.05, 16).unwrap()),
            theta: Some(CoefficientTensor::constant(0.05, 16).unwrap()),
            lam_tensor: Some(CoefficientTensor::constant(0.05, 16).unwrap()),
            idx_n: 4,
            ..CertifyOptions::default()
        };
        let cert = certify_family(&space, fam, TheoremId::Common, &opts).unwrap();
        println!("{label} family: COMMON certificate valid = {}", cert.valid);
        for h in cert.hypotheses.iter().filter(|h| !h.holds) {
            println!("  failed: {} - {}", h.name, h.detail);
        }
    }

    // The Phi-wrapped variant with the square root.
    let opts = CertifyOptions::<usize> {
        delta: Some(CoefficientTensor::constant(0.003, 16).unwrap()),
        theta: Some(CoefficientTensor::constant(0.003, 16).unwrap()),
        lam_tensor: Some(CoefficientTensor::constant(0.003, 16).unwrap()),
        phi: Some(PhiFunction::sqrt()),
        idx_n: 4,
        ..CertifyOptions::default()
    };
    let cert = certify_family(&space, &zeros, TheoremId::CommonPhi, &opts).unwrap();
    println!("constant family: COMMON_PHI certificate valid = {}", cert.valid);
}
