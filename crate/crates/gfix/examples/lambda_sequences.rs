//! Lambda-sequence certificates under the max metric, partial-product series
//! verdicts, and the combined tensor check feeding them.

use gfix::analysis::{
    common_coefficient_check, lambda_sequence_check, product_series_check, CoefficientSeq,
    CoefficientTensor, LambdaOutcome, SeqFamily,
};

fn show(label: &str, seq: &CoefficientSeq) {
    match lambda_sequence_check(seq).unwrap() {
        LambdaOutcome::Certified(c) => println!(
            "{label}: lambda-sequence with lambda = {}, n(lambda) = {} (horizon {})",
            c.lambda, c.n_lambda, c.horizon
        ),
        LambdaOutcome::Rejected(r) => println!(
            "{label}: rejected at lambda = {}, n = {}: {:?}",
            r.at_lambda, r.at_n, r.violation
        ),
    }
}

fn main() {
    // r_i = 2^-i is the canonical example: lambda = 1/2 from the first index.
    show("r_i = 2^-i", &CoefficientSeq::halving(64));
    show(
        "r_i = 1 (constant)",
        &CoefficientSeq::new(SeqFamily::Constant { value: 1.0 }, 64).unwrap(),
    );
    show(
        "r_i = 1/i",
        &CoefficientSeq::new(SeqFamily::Harmonic, 64).unwrap(),
    );

    // Partial products: C_n = prod r_i.
    for (label, family) in [
        ("r = 1/2", SeqFamily::Constant { value: 0.5 }),
        ("r_i = 2^-i", SeqFamily::Geometric { q: 1.0, rho: 0.5 }),
        ("r = 1", SeqFamily::Constant { value: 1.0 }),
    ] {
        let seq = CoefficientSeq::new(family, 16).unwrap();
        let rep = product_series_check(&seq).unwrap();
        println!(
            "sum of partial products for {label}: {:?} (limsup surrogate {}, sum {:.6})",
            rep.series.verdict, rep.limsup_surrogate, rep.series.partial_sum
        );
    }

    // The three-tensor bound and its derived ratio sequence.
    let h = 16;
    let delta = CoefficientTensor::constant(0.1, h).unwrap();
    let theta = CoefficientTensor::constant(0.05, h).unwrap();
    let lam = CoefficientTensor::constant(0.05, h).unwrap();
    let rep = common_coefficient_check(&delta, &theta, &lam, h).unwrap();
    println!(
        "tensor bound delta + 3 theta + 4 lambda < 1/2: {} ; r_i = {:.6}, non-increasing = {}",
        rep.bound_holds,
        rep.r_values[0],
        rep.r_nonincreasing
    );
    if let Some(LambdaOutcome::Certified(c)) = rep.lambda {
        println!(
            "  ratio sequence certified with lambda = {}, n(lambda) = {}",
            c.lambda, c.n_lambda
        );
    }

    let too_big = CoefficientTensor::constant(0.2, h).unwrap();
    let t2 = CoefficientTensor::constant(0.1, h).unwrap();
    let rep = common_coefficient_check(&too_big, &t2, &t2, h).unwrap();
    println!(
        "with delta = 0.2, theta = lambda = 0.1 the bound fails at {:?}",
        rep.bound_counterexample
    );
}
