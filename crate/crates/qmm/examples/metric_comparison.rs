//! Evaluate every catalog metric on one random state and tangent, showing
//! the extremal ordering: the SLD (Bures) metric is the smallest monotone
//! metric and the RLD metric the largest.
//!
//! Run with: cargo run --example metric_comparison

use qmm::hermitian::{random_density, random_tangent};
use qmm::metric::{metric_rld, metric_sld, metric_value};
use qmm::omf::default_catalog;

fn main() {
    let d = random_density(4, 7, 1e-9).unwrap();
    let a = random_tangent(4, 11);

    let sld = metric_sld(&d, &a, &a);
    let rld = metric_rld(&d, &a, &a);
    println!("state spectrum: {:?}", d.eigenvalues());
    println!("closed-form extremes: sld = {sld:.9}, rld = {rld:.9}\n");

    let mut rows: Vec<(String, f64)> = default_catalog()
        .into_iter()
        .map(|kind| (kind.name(), metric_value(kind, &d, &a, &a).unwrap()))
        .collect();
    rows.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());

    println!("{:<10} {:>14}", "kind", "K_D(A, A)");
    for (name, value) in &rows {
        println!("{name:<10} {value:>14.9}");
        assert!(*value >= sld * (1.0 - 1e-10) && *value <= rld * (1.0 + 1e-10));
    }
    println!("\nall values bracketed by the closed-form sld and rld, as they must be");
}
