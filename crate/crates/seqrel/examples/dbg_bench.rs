use seqrel::guessers::guess_div;
use seqrel::monomials::{Monomial, MonomialOrder};
use seqrel::tables::{family_table, FamilyKind};

fn main() {
    let ord = MonomialOrder::drl(2);
    let bound = Monomial::parse("x^5", &ord).unwrap();
    let one = Monomial::one(2);
    let wide = bound.mul(&bound);

    let (t1, _) = family_table(FamilyKind::Rectangle, 2, 5, 42).unwrap();
    let r1 = guess_div(&t1, &ord, &wide, &one, true).unwrap();
    println!("(a^2, 1): muls={} queries={} |S|={}", r1.muls, r1.queries, r1.staircase.len());

    let (t2, _) = family_table(FamilyKind::Rectangle, 2, 5, 42).unwrap();
    let r2 = guess_div(&t2, &ord, &bound, &bound, true).unwrap();
    println!("(a, a):   muls={} queries={} |S|={}", r2.muls, r2.queries, r2.staircase.len());
}
