//! The Wigner-Yanase-Dyson α-family: metrics from the Hessian of the
//! α-entropies, their Kubo-Mori limit at α → ±1, and the commutator form
//! whose ratio to the raw trace Tr [D^β, X][D^{1-β}, X] is the constant
//! -4/(1-α²).
//!
//! Run with: cargo run --example alpha_family

use qmm::hermitian::{random_density, random_hermitian, random_tangent};
use qmm::metric::{alpha_entropy, alpha_metric_hessian, commutator_form, metric_value};
use qmm::omf::MonotoneKind;

fn main() {
    let d = random_density(3, 5, 1e-2).unwrap();
    let a = random_tangent(3, 6);
    let a = a.scaled(1.0 / a.frobenius_norm());
    let d2 = random_density(3, 9, 1e-2).unwrap();

    println!("alpha-entropy S_alpha(D, D2) across the family:");
    for alpha in [-1.5, -0.5, 0.0, 0.5, 1.5] {
        println!("  alpha = {alpha:>4}: {:.9}", alpha_entropy(&d, &d2, alpha).unwrap());
    }

    println!("\nHessian of S_alpha against the closed eigenbasis value:");
    for alpha in [-0.5, 0.0, 0.5] {
        let fd = alpha_metric_hessian(&d, &a, &a, alpha, 1e-4).unwrap();
        let closed = metric_value(MonotoneKind::wyd(alpha).unwrap(), &d, &a, &a).unwrap();
        println!("  alpha = {alpha:>4}: finite difference {fd:.8}, closed {closed:.8}");
        assert!((fd - closed).abs() < 1e-3 * closed);
    }

    let km = metric_value(MonotoneKind::KuboMori, &d, &a, &a).unwrap();
    let near = alpha_metric_hessian(&d, &a, &a, 1.0 - 1e-4, 1e-4).unwrap();
    println!("\nalpha -> 1 recovers Kubo-Mori: {near:.8} vs {km:.8}");

    println!("\ncommutator form ratio (depends on alpha only):");
    for alpha in [-0.5, 0.0, 0.5] {
        let x = random_hermitian(3, 42);
        let form = commutator_form(&d, &x, alpha).unwrap();
        println!(
            "  alpha = {alpha:>4}: metric/raw = {:.9}, -4/(1-alpha^2) = {:.9}",
            form.ratio.unwrap(),
            form.expected_ratio
        );
    }
}
