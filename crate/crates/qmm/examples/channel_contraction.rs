//! Monotonicity in action: every stochastic (CPTP) map contracts every
//! metric in the family, and completely positive maps obey the operator
//! Schwarz inequality T(K)T(D)⁻¹T(K)† ≤ T(K D⁻¹ K†).
//!
//! Run with: cargo run --example channel_contraction

use qmm::channel::{check_contraction, check_schwarz, pinching, random_channel};
use qmm::hermitian::{ginibre, random_density, random_tangent};
use qmm::omf::default_catalog;

fn main() {
    let d = random_density(3, 31, 1e-9).unwrap();
    let a = random_tangent(3, 32);

    println!("random Stinespring channel (3-dimensional, 2 Kraus operators):");
    let ch = random_channel(3, 2, 33).unwrap();
    println!("{:<10} {:>12} {:>12} {:>10}", "kind", "before", "after", "margin");
    for kind in default_catalog() {
        let rep = check_contraction(kind, &ch, &d, &a).unwrap().unwrap();
        assert!(rep.passed);
        println!(
            "{:<10} {:>12.6} {:>12.6} {:>10.6}",
            kind.name(),
            rep.value_before,
            rep.value_after,
            rep.margin
        );
    }

    println!("\npinching to diagonal blocks [2, 1] contracts too:");
    let pinch = pinching(&[2, 1]).unwrap();
    for kind in [default_catalog()[0], default_catalog()[2]] {
        let rep = check_contraction(kind, &pinch, &d, &a).unwrap().unwrap();
        assert!(rep.passed);
        println!(
            "  {}: {:.6} -> {:.6}",
            kind.name(),
            rep.value_before,
            rep.value_after
        );
    }

    let k = ginibre(3, 3, 34);
    let schwarz = check_schwarz(&ch, &d, &k).unwrap().unwrap();
    println!(
        "\noperator Schwarz difference least eigenvalue: {:.3e} (must be >= -1e-8)",
        schwarz.min_eigenvalue
    );
    assert!(schwarz.passed);
}
