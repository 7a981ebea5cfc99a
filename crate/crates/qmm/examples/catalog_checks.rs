//! Walk the operator monotone function catalog and verify the defining
//! properties of every member: the Fisher normalization f(1) = 1, the
//! symmetry f(t) = t f(1/t), the extremality bounds between the harmonic
//! and arithmetic means, and sampled operator monotonicity on matrices.
//!
//! Run with: cargo run --example catalog_checks

use qmm::omf::{
    check_bounds, check_operator_monotone_sample, check_symmetry, default_catalog, eval_f,
    f_at_zero,
};

fn main() {
    let seed = 2024;
    println!("{:<10} {:>8} {:>10} {:>10} {:>12}", "kind", "f(0)", "symmetry", "bounds", "monotone(3x3)");
    for kind in default_catalog() {
        assert_eq!(eval_f(kind, 1.0).unwrap(), 1.0, "{kind}: f(1) must be 1");
        let sym = check_symmetry(kind, 500, seed).unwrap();
        let bnd = check_bounds(kind, 500, seed).unwrap();
        let mono = check_operator_monotone_sample(kind, 3, 100, seed).unwrap();
        println!(
            "{:<10} {:>8.4} {:>10} {:>10} {:>12}",
            kind.name(),
            f_at_zero(kind),
            if sym.violations == 0 { "ok" } else { "VIOLATED" },
            if bnd.violations == 0 { "ok" } else { "VIOLATED" },
            format!("{} viol", mono.violations),
        );
    }
    println!("\nThe harmonic mean 2t/(1+t) (rld) and the arithmetic mean (1+t)/2 (sld)");
    println!("bound the whole family; every member interpolates between them.");
}
