//! Discriminant forms of the ADE root lattices, computed two ways: Smith
//! normal form of the Gram matrix vs the closed-form table, plus the van der
//! Blij signature identity on each.
//!
//! Run with: cargo run --example discriminant_forms

use sextic::fqf::{brown_gauss, is_isomorphic, normal_form, render_blocks};
use sextic::lattice::AdeSymbol;
use sextic::rootdata::{make_root_lattice, table_discriminant};

fn main() {
    let symbols: Vec<AdeSymbol> = (1..=9)
        .map(AdeSymbol::A)
        .chain((4..=9).map(AdeSymbol::D))
        .chain((6..=8).map(AdeSymbol::E))
        .collect();
    println!(
        "{:<5} {:<18} {:<10} {}",
        "L", "discr L", "Br", "σ₊−σ₋ mod 8"
    );
    for s in symbols {
        let l = make_root_lattice(s).unwrap();
        let inv = l.invariants();
        let table = sextic::fqf::from_blocks(&table_discriminant(s).unwrap()).unwrap();
        let computed = if inv.det.magnitude() == &num_bigint::BigUint::from(1u8) {
            sextic::fqf::FiniteQuadraticForm::trivial()
        } else {
            let d = l.discriminant_form().unwrap();
            assert!(is_isomorphic(&d.form, &table), "table mismatch at {s}");
            d.form
        };
        let br = brown_gauss(&computed);
        let sig = (inv.sig_plus as i64 - inv.sig_minus as i64).rem_euclid(8);
        assert_eq!(br as i64, sig, "van der Blij fails at {s}");
        println!(
            "{:<5} {:<18} {:<10} {}",
            s.to_string(),
            render_blocks(&normal_form(&computed)),
            br,
            sig
        );
    }
}
