//! Classical Zariski pairs: for every nodeless set of the shape
//! e·E₆ ⊕ ⊕ a_i·A_{3i−1} (2e + Σ i·a_i = 6) there are exactly two
//! deformation families of irreducible sextics — one abundant (kernel Z/3,
//! carrying the extra conic) and one not. Six-cusp sextics are the original
//! example.
//!
//! Run with: cargo run --release --example zariski_pairs

use sextic::classify::rigid_isotopy_classes;
use sextic::config::Limits;
use sextic::rootdata::parse_singularities;

fn main() {
    let limits = Limits::default();
    let sets = [
        "6A2",
        "A5+4A2",
        "2A5+2A2",
        "3A5",
        "A8+3A2",
        "A8+A5+A2",
        "2A8",
        "A11+2A2",
        "A11+A5",
        "A14+A2",
        "A17",
        "E6+4A2",
        "E6+A5+2A2",
        "E6+2A5",
        "E6+A8+A2",
        "E6+A11",
    ];
    println!(
        "{:<12} {:>3} {:>8} {:>14} {:>14}",
        "sigma", "g", "configs", "irreducible", "classes"
    );
    for name in sets {
        let sigma = parse_singularities(name).unwrap();
        let report = rigid_isotopy_classes(&sigma, &limits).unwrap();
        let z = report.zariski.clone().expect("shape set");
        let irred: Vec<_> = report
            .configurations
            .iter()
            .filter(|c| !c.reducible)
            .collect();
        let abundant = irred.iter().filter(|c| c.abundant == Some(true)).count();
        let classes: u64 = irred.iter().map(|c| c.class_range().0).sum();
        println!(
            "{:<12} {:>3} {:>8} {:>10} ({abundant} abundant) {:>3}",
            name,
            z.virtual_genus,
            report.configurations.len(),
            irred.len(),
            classes,
        );
        assert_eq!(irred.len(), 2);
        assert_eq!(abundant, 1);
        assert_eq!(classes, 2);
    }
    println!("\nplane sextics with six cusps form exactly two deformation families:");
    let report = rigid_isotopy_classes(&parse_singularities("6A2").unwrap(), &limits).unwrap();
    print!("{}", report.render_text());
}
