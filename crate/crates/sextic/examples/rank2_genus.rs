//! Positive definite even rank-2 lattices: Gauss reduction to M(a,b,c), the
//! six-case orthogonal-group table, and genus enumeration by discriminant
//! form (the det-76 genus splits into two classes — the source of the
//! symmetric/asymmetric pair over A₁₈ ⊕ A₁).
//!
//! Run with: cargo run --example rank2_genus

use sextic::config::Limits;
use sextic::rank2::{
    enumerate_genus, has_disorienting_isometry, orthogonal_group, reduce, ReducedForm,
};

fn main() {
    let limits = Limits::default();

    println!("reduction:");
    for gram in [[[4, 3], [3, 4]], [[38, 0], [0, 2]], [[8, 2], [2, 10]]] {
        let rows: Vec<Vec<i64>> = gram.iter().map(|r| r.to_vec()).collect();
        let (m, basis) = reduce(&rows).unwrap();
        println!("  {:?} → {m} via basis {:?}", gram, basis);
    }

    println!("\northogonal groups (six cases):");
    for (a, b, c) in [
        (4, 2, 5),
        (2, 1, 2),
        (1, 0, 2),
        (5, 0, 5),
        (1, 1, 2),
        (6, 6, 6),
    ] {
        let m = ReducedForm::new(a, b, c).unwrap();
        let case = orthogonal_group(&m);
        println!(
            "  {m}: {:?}, order {}, +disorienting isometry: {}",
            case.tag,
            case.order,
            has_disorienting_isometry(&m),
        );
    }

    println!("\ngenus enumeration:");
    for (label, target) in [
        (
            "det 76 (A18+A1 complement)",
            ReducedForm::new(1, 0, 19).unwrap().discriminant_form(),
        ),
        (
            "det 8  (D19 complement)",
            ReducedForm::new(1, 0, 2).unwrap().discriminant_form(),
        ),
        (
            "det 40 (A19 complement)",
            ReducedForm::new(1, 0, 10).unwrap().discriminant_form(),
        ),
    ] {
        let genus = enumerate_genus(&target, &limits).unwrap();
        let names: Vec<String> = genus.iter().map(|m| m.to_string()).collect();
        println!("  {label}: {}", names.join(", "));
    }
}
