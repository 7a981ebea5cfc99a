//! Radial/tangential split of the qubit line element in Stokes
//! coordinates. The radial coefficient 1/(1-r²) is the same for every
//! metric; the tangential coefficient distinguishes them (constant for
//! SLD, 1/(1-r²) for RLD) and its r -> 1 limit exists exactly when
//! f(0) != 0.
//!
//! Run with: cargo run --example bloch_profile

use qmm::bloch::{
    crosscheck_bloch, radial_coefficient, tangential_coefficient, tangential_limit, Direction,
    TangentialLimit,
};
use qmm::omf::{default_catalog, MonotoneKind};

fn main() {
    let kinds = [
        MonotoneKind::Sld,
        MonotoneKind::Rld,
        MonotoneKind::KuboMori,
        MonotoneKind::Wyd(0.0),
    ];
    print!("{:>5} {:>12}", "r", "radial");
    for kind in kinds {
        print!(" {:>12}", kind.name());
    }
    println!();
    for k in 1..=9 {
        let r = k as f64 / 10.0;
        print!("{:>5} {:>12.6}", r, radial_coefficient(r).unwrap());
        for kind in kinds {
            print!(" {:>12.6}", tangential_coefficient(kind, r).unwrap());
        }
        println!();
    }

    // The closed form agrees with the general eigenbasis evaluator.
    for kind in default_catalog() {
        for direction in [Direction::Radial, Direction::Tangential] {
            let chk = crosscheck_bloch(kind, 0.5, direction).unwrap();
            assert!(chk.rel_diff < 1e-9);
        }
    }
    println!("\nclosed form vs general evaluator at r = 0.5: agree for all kinds");

    println!("\ntangential limit at the pure-state rim (1/(2 f(0)) when finite):");
    for kind in default_catalog() {
        match tangential_limit(kind).unwrap() {
            TangentialLimit::Finite(v) => println!("  {:<10} -> {v}", kind.name()),
            TangentialLimit::Divergent => println!("  {:<10} -> divergent", kind.name()),
        }
    }
}
