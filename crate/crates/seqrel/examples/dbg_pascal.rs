use seqrel::guessers::{guess_div, DivTraceEvent};
use seqrel::monomials::{Monomial, MonomialOrder};
use seqrel::scalars::Field;
use seqrel::tables::pascal_variant_table;

fn main() {
    let ord = MonomialOrder::drl(2);
    let t = pascal_variant_table(Field::Rational);
    let a = Monomial::parse("y^5", &ord).unwrap();
    let run = guess_div(&t, &ord, &a, &Monomial::one(2), false).unwrap();
    for ev in &run.trace {
        match ev {
            DivTraceEvent::PairCreated { tag, f, c } => {
                println!("CREATE {}: c = {} | f = {}", tag.display(&ord), c.display(&ord), f.display(&ord));
            }
            DivTraceEvent::Tested { tag, lm_f, lm_masked, shift, valid } => {
                println!(
                    "TEST {}: lm_f={:?} lm_masked={:?} shift={:?} valid={}",
                    tag.display(&ord),
                    lm_f.as_ref().map(|m| format!("{}", m.display(&ord))),
                    lm_masked.as_ref().map(|m| format!("{}", m.display(&ord))),
                    shift.as_ref().map(|m| format!("{}", m.display(&ord))),
                    valid
                );
            }
        }
    }
    for rel in run.gb.relations() {
        println!("G: {}", rel.display(&ord));
    }
}
