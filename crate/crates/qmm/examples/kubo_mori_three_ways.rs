//! The Kubo-Mori (Bogoliubov) metric computed three independent ways:
//! the eigenbasis sum with c(x, y) = (log x - log y)/(x - y), the resolvent
//! integral ∫ Tr (D+t)⁻¹A(D+t)⁻¹B dt by adaptive quadrature, and the mixed
//! second difference of the von Neumann trace functional Tr (D log D).
//!
//! Run with: cargo run --example kubo_mori_three_ways

use qmm::bloch::sigma_x;
use qmm::hermitian::{DensityMatrix, TangentVector};
use qmm::metric::{hessian_metric, metric_km_quadrature, metric_value, EntropyGenerator};
use qmm::omf::MonotoneKind;

fn main() {
    // The pinned instance: D = Diag(3/4, 1/4), A = sigma_x gives 4 log 3.
    let d = DensityMatrix::from_probabilities(&[0.75, 0.25], 0.0).unwrap();
    let a = TangentVector::new(sigma_x()).unwrap();

    let eigen = metric_value(MonotoneKind::KuboMori, &d, &a, &a).unwrap();
    let quad = metric_km_quadrature(&d, &a, &a, 1e-8).unwrap();
    let hess = hessian_metric(&EntropyGenerator::von_neumann(), &d, &a, &a, 1e-4).unwrap();
    let exact = 4.0 * 3.0f64.ln();

    println!("D = Diag(3/4, 1/4), A = sigma_x");
    println!("  eigenbasis sum:        {eigen:.12}");
    println!("  resolvent quadrature:  {quad:.12}");
    println!("  entropy Hessian:       {hess:.12}");
    println!("  4 log 3 =              {exact:.12}");
    assert!((eigen - exact).abs() < 1e-10);
    assert!((quad - exact).abs() < 1e-6 * exact);
    assert!((hess - exact).abs() < 1e-4 * exact);

    // A quadratic generator shows the G'' dependence: Tr G(D + tA) with
    // G(t) = t^2 has Hessian 2 Tr A^2, not Fisher adjusted.
    let quadratic = hessian_metric(&EntropyGenerator::quadratic(), &d, &a, &a, 1e-4).unwrap();
    println!("\nG(t) = t^2 gives 2 Tr A^2 = {quadratic:.9} (not a Fisher-adjusted metric)");
}
