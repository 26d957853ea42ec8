//! The Brown invariant by exact Gauss sum (cyclotomic integers, no floats)
//! against the per-block closed formulas: the two independent routes must
//! agree on every form.
//!
//! Run with: cargo run --example brown_invariants

use sextic::fqf::{brown_blocks, brown_gauss, from_blocks, parse_form_expression};

fn main() {
    let expressions = [
        "<1/2>",
        "<-1/2>",
        "V(2)",
        "U(2)",
        "<-2/3>",
        "<4/5>+<1/4>+<1/2>",
        "<-19/20>+<1/2>",
        "<2/9>+V(4)",
        "<-9/10>+<-9/10>+<-1/2>+<1/2>",
    ];
    println!("{:<34} {:>6} {:>7}", "form", "gauss", "blocks");
    for expr in expressions {
        let f = from_blocks(&parse_form_expression(expr).unwrap()).unwrap();
        let g = brown_gauss(&f);
        let b = brown_blocks(&f);
        assert_eq!(g, b);
        println!("{expr:<34} {g:>6} {b:>7}");
    }
    println!("\nBr is additive: Br(f ⊕ g) = Br f + Br g (mod 8); e.g.");
    let f = from_blocks(&parse_form_expression("<-2/3>").unwrap()).unwrap();
    let g = from_blocks(&parse_form_expression("<1/4>").unwrap()).unwrap();
    println!(
        "Br(<-2/3>) + Br(<1/4>) = {} + {} ≡ {} = Br(<-2/3>+<1/4>)",
        brown_gauss(&f),
        brown_gauss(&g),
        brown_gauss(&f.direct_sum(&g)),
    );
}
