//! The pure-state boundary: lift tangents of a pure state horizontally to
//! interior states approaching it and watch the lifted inner product. The
//! limit exists exactly when f(0) != 0 and then equals the Fubini-Study
//! form divided by f(0).
//!
//! Run with: cargo run --example pure_state_limit

use qmm::boundary::{
    fubini_study, radial_extension_limit, radial_projection, BoundarySequence, HorizontalVector,
    LimitOutcome,
};
use qmm::hermitian::random_density;
use qmm::omf::MonotoneKind;

fn main() {
    // Radial projection picks the dominant eigenvector.
    let d = random_density(3, 17, 1e-6).unwrap();
    let pure = radial_projection(&d).unwrap();
    println!("dominant eigenvalue {:.6} projects to the pure state", d.eigenvalues()[0]);
    println!("  |v|^2 components: {:?}\n", pure.vector().iter().map(|z| z.norm_sqr()).collect::<Vec<_>>());

    let seq = BoundarySequence::standard(3).unwrap();
    let u = HorizontalVector::from_reals(&[0.8, -0.5]);
    println!("h(u, u) = {:.6}\n", fubini_study(&u, &u));

    for kind in [
        MonotoneKind::Sld,
        MonotoneKind::Wyd(0.0),
        MonotoneKind::KuboMori,
        MonotoneKind::Rld,
    ] {
        let rep = radial_extension_limit(kind, &seq, &u, &u).unwrap();
        println!("{} (f(0) = {}):", rep.kind, rep.f0);
        for g in &rep.grid {
            match g.error {
                Some(e) => println!("  eps = {:>8.0e}  value = {:>12.6}  error = {:.3e}", g.eps, g.value, e),
                None => println!("  eps = {:>8.0e}  value = {:>12.6}", g.eps, g.value),
            }
        }
        match rep.outcome {
            LimitOutcome::Finite { limit, .. } => {
                println!("  -> converges to h/f(0) = {limit:.6}\n");
            }
            LimitOutcome::Divergent { .. } => println!("  -> divergent (f(0) = 0)\n"),
        }
    }
}
