use skewforge::presets::{build_gt, gt_generator_image, Sign};
use skewforge::ratfunc::RatFunc;

fn main() {
    let s = build_gt(3).unwrap();
    let e2p = gt_generator_image(&s, 2, Sign::Plus).unwrap();
    let acc = e2p.as_skew().mul(e2p.as_skew()).unwrap();
    // manually redo acc * e2p term by term
    let mut partials: std::collections::BTreeMap<skewforge::aut::AffineAut, Vec<RatFunc>> = Default::default();
    for (m1, r1) in acc.terms() {
        for (m2, r2) in e2p.as_skew().terms() {
            let t0 = std::time::Instant::now();
            let twisted = m1.apply(r2).unwrap();
            let t_apply = t0.elapsed().as_millis();
            let t0 = std::time::Instant::now();
            let prod = r1.mul(&twisted);
            let t_mul = t0.elapsed().as_millis();
            println!(
                "mul {}x{} terms: apply {} ms, mul {} ms -> num {} deg {}, den {} deg {}",
                r1.num().num_terms(), twisted.num().num_terms(),
                t_apply, t_mul,
                prod.num().num_terms(), prod.num().degree(),
                prod.den().num_terms(), prod.den().degree()
            );
            partials.entry(m1.compose(m2).unwrap()).or_default().push(prod);
        }
    }
    for (aut, parts) in &partials {
        println!("key {}: {} partials", aut.render(), parts.len());
        let mut sum = RatFunc::zero();
        for (i, p) in parts.iter().enumerate() {
            let t0 = std::time::Instant::now();
            sum = sum.add(p);
            println!(
                "  add {}: {} ms -> num {} deg {} / den {} deg {}",
                i, t0.elapsed().as_millis(),
                sum.num().num_terms(), sum.num().degree(),
                sum.den().num_terms(), sum.den().degree()
            );
        }
    }
}
