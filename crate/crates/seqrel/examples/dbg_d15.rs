use std::time::Instant;
use seqrel::guessers::guess_div;
use seqrel::monomials::{Monomial, MonomialOrder};
use seqrel::tables::{family_table, FamilyKind};

fn main() {
    let ord = MonomialOrder::drl(2);
    for d in [10u32, 15] {
        let (t, lms) = family_table(FamilyKind::Rectangle, 2, d, 42).unwrap();
        // a = max(S u lms)
        let stair: Vec<Monomial> = {
            use seqrel::polynomials::Poly;
            use seqrel::scalars::Field;
            let gens: Vec<Poly> = lms.iter().map(|m| Poly::term(m.clone(), Field::Fp(65521).one())).collect();
            let gb = seqrel::tables::GroebnerBasis::new(gens, ord.clone());
            gb.staircase().unwrap().monomials().to_vec()
        };
        let mut a = lms[0].clone();
        for m in lms.iter().chain(stair.iter()) {
            if ord.cmp(m, &a) == std::cmp::Ordering::Greater { a = m.clone(); }
        }
        let start = Instant::now();
        let wide = a.mul(&a);
        let run = guess_div(&t, &ord, &wide, &Monomial::one(2), true).unwrap();
        println!("d={d} a={} |S|={} muls={} ratio={} elapsed={:?}",
            a.display(&ord), run.staircase.len(), run.muls,
            run.muls as f64 / (run.staircase.len() as f64).powi(2), start.elapsed());
    }
}
