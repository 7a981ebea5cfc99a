//! Classical layer: Fisher geometry on the probability simplex, the
//! spherical geodesic distance and its Hellinger transform, Chentsov
//! contraction under a coarse-graining, and the diagonal embedding under
//! which every quantum metric in the family restricts to the Fisher form.
//!
//! Run with: cargo run --example classical_fisher

use nalgebra::DMatrix;
use qmm::channel::classical_stochastic;
use qmm::classical::{
    embed_diagonal, embed_tangent, fisher_form, geodesic_distance, hellinger, ProbabilityVector,
    SimplexTangent,
};
use qmm::metric::metric_value;
use qmm::omf::default_catalog;

fn main() {
    let p = ProbabilityVector::new(vec![0.75, 0.25]).unwrap();
    let r = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
    let u = SimplexTangent::new(vec![0.5, -0.5]).unwrap();

    let d = geodesic_distance(&p, &r).unwrap();
    let h = hellinger(&p, &r).unwrap();
    println!("p = (3/4, 1/4), r = (1/2, 1/2)");
    println!("  geodesic distance d     = {d:.12}");
    println!("  Hellinger distance d_H  = {h:.12}");
    println!("  2 sin(d/4)              = {:.12}  (the same number)", 2.0 * (d / 4.0).sin());

    let fisher = fisher_form(&p, &u, &u).unwrap();
    println!("\nFisher form at p along u = (1/2, -1/2): {fisher:.12}");

    // Merge the two outcomes of a fair coin seen through p: column-stochastic
    // coarse-graining contracts the form.
    let merge = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
    let ch = classical_stochastic(&merge).unwrap();
    println!(
        "\na merging coarse-graining is a channel with {} Kraus operators",
        ch.kraus_ops().len()
    );

    // Embedded diagonally, every monotone metric restricts to the Fisher form.
    let dm = embed_diagonal(&p, 0.0).unwrap();
    let t = embed_tangent(&u).unwrap();
    println!("\ndiagonal embedding: quantum value == classical Fisher value");
    for kind in default_catalog() {
        let v = metric_value(kind, &dm, &t, &t).unwrap();
        assert!((v - fisher).abs() < 1e-10 * fisher);
    }
    println!("  verified for all {} catalog kinds", default_catalog().len());
}
