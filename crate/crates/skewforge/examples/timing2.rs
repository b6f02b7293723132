use skewforge::presets::{build_gt, gt_generator_image, Sign};

fn main() {
    let s = build_gt(3).unwrap();
    let e2p = gt_generator_image(&s, 2, Sign::Plus).unwrap();
    let mut acc = e2p.as_skew().clone();
    for step in 1..4 {
        let t0 = std::time::Instant::now();
        acc = acc.mul(e2p.as_skew()).unwrap();
        println!("(E2+)^{}: {} ms, {} terms", step + 1, t0.elapsed().as_millis(), acc.num_terms());
        for (aut, c) in acc.terms() {
            println!(
                "   {} : num {} terms deg {} / den {} terms deg {}",
                aut.render(),
                c.num().num_terms(),
                c.num().degree(),
                c.den().num_terms(),
                c.den().degree()
            );
        }
    }
}
