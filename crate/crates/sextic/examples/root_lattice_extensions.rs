//! Finite-index extensions of root lattices along isotropic kernels: the
//! classical saturations 3A₂ → E₆ and E₆ ⊕ A₂ → E₈, detected by root growth,
//! and the coherence discr(extension) ≅ 𝒦⊥/𝒦.
//!
//! Run with: cargo run --example root_lattice_extensions

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use sextic::config::Limits;
use sextic::fqf::{is_isomorphic, isotropic_subgroups, quotient_form};
use sextic::lattice::AdeSymbol;
use sextic::rootdata::{make_root_lattice, parse_singularities};

fn main() {
    let limits = Limits::default();
    for name in ["3A2", "E6+A2", "A8", "A5+A1", "D8", "E7+A1"] {
        let sigma = parse_singularities(name).unwrap();
        let l = sigma.lattice();
        let disc = l.discriminant_form().unwrap();
        println!(
            "{name}: {} roots, |discr| = {}",
            sigma.total_roots(),
            disc.form.group_order().unwrap()
        );
        for kernel in isotropic_subgroups(&disc.form, &limits).unwrap() {
            if kernel.order() == 1 {
                continue;
            }
            // lift the kernel generators into L ⊗ Q and extend
            let lifts: Vec<Vec<BigRational>> = kernel
                .gens
                .iter()
                .map(|g| {
                    let mut acc = vec![BigRational::zero(); l.rank()];
                    for (c, lift) in g.iter().zip(&disc.lifts) {
                        for i in 0..l.rank() {
                            acc[i] += BigRational::from_integer(BigInt::from(*c)) * &lift[i];
                        }
                    }
                    acc
                })
                .collect();
            let ext = l.finite_index_extension(&lifts).unwrap();
            let dec = ext.lattice.root_sublattice(&limits).unwrap();
            let labels: Vec<String> = dec.symbols.iter().map(|s| s.to_string()).collect();
            println!(
                "  kernel of order {} → index-{} extension, {} roots: {}",
                kernel.order(),
                ext.index,
                dec.root_count,
                labels.join("+"),
            );
            // discriminant coherence with the form-level quotient
            let q = quotient_form(&disc.form, &kernel).unwrap();
            if ext.lattice.det().magnitude() != &num_bigint::BigUint::from(1u8) {
                let ed = ext.lattice.discriminant_form().unwrap();
                assert!(is_isomorphic(&ed.form, &q.form));
            } else {
                assert_eq!(q.form.group_order().unwrap(), 1);
            }
        }
    }
    // E₆ should have 72 roots
    let e6 = make_root_lattice(AdeSymbol::E(6)).unwrap();
    println!("\nE6 has {} roots", e6.roots(&limits).unwrap().len());
}
