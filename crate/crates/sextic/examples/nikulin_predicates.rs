//! Genus-level predicates: existence of an even lattice with prescribed
//! signature and discriminant form, uniqueness in the genus, surjectivity of
//! O(L) → Aut 𝓛, and the guaranteed square-2 vector — with the per-condition
//! report the CLI serializes under `genus_checks`.
//!
//! Run with: cargo run --example nikulin_predicates

use sextic::fqf::{from_blocks, parse_form_expression, FiniteQuadraticForm};
use sextic::nikulin::{
    aut_onto, exists_even_lattice, guaranteed_square_two, unique_in_genus, GenusSymbol,
};

fn form(expr: &str) -> FiniteQuadraticForm {
    from_blocks(&parse_form_expression(expr).unwrap()).unwrap()
}

fn main() {
    // A genus that cannot exist: a rank-2 positive definite even unimodular
    // lattice (the Brown condition fails).
    let g = GenusSymbol::new(2, 0, FiniteQuadraticForm::trivial());
    let r = exists_even_lattice(&g);
    println!("(2,0; 0) exists: {}", r.exists);
    for c in &r.conditions {
        println!(
            "  [{}] {}  — {}",
            if c.holds { "ok" } else { "fail" },
            c.condition,
            c.detail
        );
    }

    // The ⟨6⟩ witness for the p-adic determinant bookkeeping.
    let l = sextic::lattice::GramLattice::rank1(6).unwrap();
    let d = l.discriminant_form().unwrap();
    let g = GenusSymbol::new(1, 0, d.form);
    println!("\n(1,0; <1/6>) exists: {}", exists_even_lattice(&g).exists);

    // Indefinite certificates for the Zariski-pair complements.
    for (label, sig, expr) in [
        (
            "2E6+A5 complement",
            (2usize, 2usize),
            "<-1/2>+<-1/2>+<-2/3>+<-2/3>+<-2/3>",
        ),
        ("3E6 complement", (2, 1), "<-2/3>+<-2/3>+<-2/3>+<-1/2>"),
        (
            "generic μ=12 complement",
            (2, 7),
            "<-2/3>+<-2/3>+<-2/3>+<-2/3>+<-2/3>+<-2/3>+<-1/2>",
        ),
    ] {
        let g = GenusSymbol::new(sig.0, sig.1, form(expr));
        println!(
            "\n{label}: exists {} | unique {:?} | onto {:?} | square-2 guaranteed {}",
            exists_even_lattice(&g).exists,
            unique_in_genus(&g).unwrap(),
            aut_onto(&g).unwrap(),
            guaranteed_square_two(&g),
        );
    }
}
