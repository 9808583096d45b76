//! Certificates for the coefficient-condition theorems on the interval
//! example: the plain sequential form and its square-root Phi wrapping, with
//! the printed tail bounds evaluated along the orbit.

use gfix::analysis::{CoefficientSeq, PhiFunction};
use gfix::gspace::AnalyticGSpace;
use gfix::map::AffineMap;
use gfix::solver::{bound_phi_an, bound_seq_an, certify_generic, CertifyOptions, TheoremId};

fn main() {
    // Work on a 33-point grid; verdicts carry the sampled flag.
    let space = AnalyticGSpace::interval_maxval().with_grid(33).unwrap();
    let map = AffineMap::sixteenth();
    let seq = CoefficientSeq::inv_sq_shifted(16);
    let phi = PhiFunction::sqrt();

    for (theorem, use_phi) in [(TheoremId::SeqAn, false), (TheoremId::PhiAn, true)] {
        let mut opts = CertifyOptions::<f64> {
            seq: Some(seq.clone()),
            condition_n: 6,
            x0: Some(1.0),
            ..CertifyOptions::default()
        };
        if use_phi {
            opts.phi = Some(phi);
        }
        let cert = certify_generic(&space, &map, theorem, &opts).unwrap();
        println!("{theorem:?}: valid = {}, sampled = {}", cert.valid, cert.sampled);
        for h in &cert.hypotheses {
            println!(
                "  [{}]{} {} - {}",
                if h.holds { "ok" } else { "FAIL" },
                if h.assumed { " (assumed)" } else { "" },
                h.name,
                h.detail
            );
        }
        print!("  a-priori bound at m = 1..6:");
        for m in 1..=6usize {
            print!(" {:.3e}", cert.bound_at(m).unwrap().get());
        }
        println!();
    }

    // The printed bound expressions directly.
    let g0 = gfix::gspace::GValue::new(1.0).unwrap();
    println!(
        "tail bound, plain (n = 1, m = 1, G0 = 1): {}",
        bound_seq_an(&seq, g0, 1, 1).unwrap()
    );
    println!(
        "tail bound, sqrt-wrapped F-domain (n = 1, m = 1, F(G0) = 1): {}",
        bound_phi_an(&seq, &phi, g0, 1, 1).unwrap()
    );
}
