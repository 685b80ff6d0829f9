use seqrel::guessers::guess_adaptive;
use seqrel::monomials::MonomialOrder;
use seqrel::scalars::Field;
use seqrel::tables::adaptive_example_table;

fn main() {
    let ord = MonomialOrder::drl(2);
    let t = adaptive_example_table(Field::Rational);
    match guess_adaptive(&t, &ord, 64) {
        Ok(run) => {
            for step in &run.trace {
                println!(
                    "tag={} accepted={} c={} | f={}",
                    step.tag.display(&ord),
                    step.accepted,
                    step.c.display(&ord),
                    step.f.display(&ord)
                );
            }
            for rel in run.gb.relations() {
                println!("G: {}", rel.display(&ord));
            }
        }
        Err(e) => println!("error: {e}"),
    }
}
