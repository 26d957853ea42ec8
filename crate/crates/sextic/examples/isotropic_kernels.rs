//! Isotropic kernels and quotients of finite quadratic forms: the engine
//! behind configuration enumeration. Shows 𝒮(2A₉ ⊕ A₁), its isotropic
//! subgroups, and the induced forms 𝒦⊥/𝒦.
//!
//! Run with: cargo run --example isotropic_kernels

use sextic::config::Limits;
use sextic::fqf::{isotropic_subgroups, normal_form, quotient_form, render_blocks, subgroup_perp};
use sextic::rootdata::{build_s, parse_singularities};

fn main() {
    let limits = Limits::default();
    let s = build_s(&parse_singularities("2A9+A1").unwrap()).unwrap();
    println!(
        "𝒮(2A9+A1) = {} (order {})",
        render_blocks(&normal_form(&s.s_form)),
        s.s_form.group_order().unwrap()
    );
    let kernels = isotropic_subgroups(&s.s_form, &limits).unwrap();
    println!("isotropic subgroups: {}", kernels.len());
    for k in &kernels {
        let perp = subgroup_perp(&s.s_form, k);
        let q = quotient_form(&s.s_form, k).unwrap();
        println!(
            "  |𝒦| = {:>2}  |𝒦⊥| = {:>3}  𝒦⊥/𝒦 = {}",
            k.order(),
            perp.order(),
            render_blocks(&normal_form(&q.form)),
        );
        assert_eq!(k.order() * perp.order(), s.s_form.group_order().unwrap());
    }
}
