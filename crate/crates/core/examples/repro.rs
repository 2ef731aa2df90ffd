use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qdecomp_core::laurent::LaurentPoly;
use qdecomp_core::solver::basic_solve;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51ab_cafe);
    let mut random_bar_invariant = |rng: &mut ChaCha8Rng, half_width: i32| {
        let mut poly = LaurentPoly::term(rng.random_range(-4i64..=4), 0);
        for exp in 1..=half_width {
            let c = rng.random_range(-4i64..=4);
            poly += &LaurentPoly::term(c, exp);
            poly += &LaurentPoly::term(c, -exp);
        }
        poly
    };
    for round in 0..6usize {
        let d_poly = LaurentPoly::from_terms((1..=12i32).filter_map(|exp| {
            let c = rng.random_range(0i64..=3);
            (c > 0).then_some((c, exp))
        }));
        let m_poly = random_bar_invariant(&mut rng, 6);
        let r_poly = loop {
            let r = random_bar_invariant(&mut rng, 3);
            if !r.is_zero() { break r; }
        };
        let f = &(&d_poly * &r_poly) + &m_poly;
        if round == 5 {
            println!("d = {d_poly}");
            println!("m = {m_poly}");
            println!("r = {r_poly}");
            println!("f = {f}");
            match basic_solve(&f, &r_poly) {
                Ok(sol) => println!("solved: d = {}, m = {}", sol.d_part, sol.m_part),
                Err(e) => println!("error: {e}"),
            }
        }
    }
}
