//! The five maximal (μ = 19) showcase classifications, where the complement
//! of the configuration is a positive definite rank-2 lattice and everything
//! is decided exactly: complements, gluing cosets, symmetry, class counts.
//!
//! Run with: cargo run --release --example classify_maximal

use sextic::classify::rigid_isotopy_classes;
use sextic::config::Limits;
use sextic::rootdata::parse_singularities;

fn main() {
    let limits = Limits::default();
    for name in ["D19", "A19", "A18+A1", "2A9+A1", "E6+A7+A3+A2+A1"] {
        let sigma = parse_singularities(name).unwrap();
        let report = rigid_isotopy_classes(&sigma, &limits).unwrap();
        println!("════ {name} ════");
        print!("{}", report.render_text());
        println!();
    }
}
