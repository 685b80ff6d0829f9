//! The guessing algorithms.
//!
//! Three front ends share the pair machinery of [`crate::relation_engine`]:
//!
//! - [`berlekamp_massey`]: the univariate guesser, realized as the truncated
//!   extended Euclidean algorithm on `x^{D+1}` and the mirror of the table;
//! - [`guess_div`]: the division-based guesser over the windows `T[a]`,
//!   `T[b]`, discovering the staircase from failing candidate relations;
//! - [`guess_adaptive`]: the adaptive variant that grows the staircase one
//!   monomial at a time and only ever touches terms indexed by `2S'`, making
//!   its query count output-sensitive.

use std::cmp::Ordering;

use crate::monomials::{minkowski_sum, Monomial, MonomialOrder, Staircase};
use crate::polynomials::{Poly, PowerIdeal};
use crate::relation_engine::{
    new_pair, normalize_monic, pair_normal_form_capped, GuessContext, GuessError, PairR,
};
use crate::scalars::{OpCounter, Scalar};
use crate::tables::{mirror_series, GroebnerBasis, Table};

/// One structured record per processed candidate of a division run.
#[derive(Clone, Debug)]
pub enum DivTraceEvent {
    PairCreated {
        tag: Monomial,
        f: Poly,
        c: Poly,
    },
    Tested {
        tag: Monomial,
        lm_f: Option<Monomial>,
        lm_masked: Option<Monomial>,
        shift: Option<Monomial>,
        valid: bool,
    },
}

/// Result of a [`guess_div`] run.
#[derive(Debug)]
pub struct DivRun {
    pub gb: GroebnerBasis,
    pub staircase: Staircase,
    pub muls: u64,
    pub queries: u64,
    pub trace: Vec<DivTraceEvent>,
    pub warnings: Vec<String>,
}

/// The division-based guesser. Tests candidate relations through the leading
/// monomial of their masked residual; every failure certifies a staircase
/// monomial and spawns new candidates on the border. With `interreduce` set
/// (the default for user-facing output) the returned basis is reduced;
/// without it the accepted pairs are returned as built, which is the mode
/// golden-trace tests compare against.
pub fn guess_div(
    table: &Table,
    ord: &MonomialOrder,
    a: &Monomial,
    b: &Monomial,
    interreduce_output: bool,
) -> Result<DivRun, GuessError> {
    let queries_before = table.query_count();
    let ctx = GuessContext::new(table, ord, a, b)?;
    let borders = ctx.make_border_pairs();
    let mut trace = Vec::new();

    let r1 = ctx.initial_pair();
    trace.push(DivTraceEvent::PairCreated {
        tag: r1.tag.clone(),
        f: r1.f.clone(),
        c: r1.c.clone(),
    });
    let mut worklist: Vec<PairR> = vec![r1];
    let mut failing: Vec<PairR> = Vec::new();
    let mut staircase = Staircase::empty(ord);
    let mut accepted: Vec<PairR> = Vec::new();

    let mut phase_pending = 0u64;
    let mut phase_new = 0u64;
    while !worklist.is_empty() {
        let pair = worklist.remove(0);
        let shift = ctx.max_shift(&pair.tag);
        let masked = ctx.masked_residual(&pair);
        let valid = ctx.validity_test(&pair);
        trace.push(DivTraceEvent::Tested {
            tag: pair.tag.clone(),
            lm_f: pair.f.lm().cloned(),
            lm_masked: masked.lm().cloned(),
            shift: shift.clone(),
            valid,
        });
        if valid {
            accepted.push(pair);
            continue;
        }
        // reduce the pending candidates by the failing pair; each keeps its
        // own relation lead, so over-shooting steps are skipped
        {
            let snap = ctx.counter.mul_count();
            let mut reducers: Vec<&PairR> = borders.iter().collect();
            reducers.push(&pair);
            for r in worklist.iter_mut() {
                let tag = r.tag.clone();
                let reduced =
                    pair_normal_form_capped(r, &reducers, Some(&tag), ord, &ctx.counter);
                let reduced = normalize_monic(reduced, &ctx.counter);
                debug_assert_eq!(reduced.c.lm(), Some(&reduced.tag));
                ctx.debug_verify_pair(&reduced);
                *r = reduced;
            }
            phase_pending += ctx.counter.mul_count() - snap;
        }
        staircase.insert(pair.tag.clone());
        failing.push(pair);
        for h in staircase.border() {
            if accepted.iter().any(|g| g.tag == h) || worklist.iter().any(|r| r.tag == h) {
                continue;
            }
            let snap = ctx.counter.mul_count();
            let fresh = new_pair(&ctx, &h, &failing, &borders);
            phase_new += ctx.counter.mul_count() - snap;
            trace.push(DivTraceEvent::PairCreated {
                tag: fresh.tag.clone(),
                f: fresh.f.clone(),
                c: fresh.c.clone(),
            });
            let pos = worklist
                .binary_search_by(|r| ord.cmp(&r.tag, &h))
                .unwrap_err();
            worklist.insert(pos, fresh);
        }
    }

    // the tested shift window must cover the discovered staircase for the
    // output to be certified; warn when it provably does not
    let mut warnings = Vec::new();
    if let Some(max_s) = staircase.max() {
        for g in &accepted {
            let wide_enough = match ctx.max_shift(&g.tag) {
                Some(s) => ord.cmp(max_s, &s) != Ordering::Greater,
                None => false,
            };
            if !wide_enough {
                warnings.push(format!(
                    "relation at {} was tested on shifts short of the discovered staircase (up to {})",
                    g.tag.display(ord),
                    max_s.display(ord),
                ));
            }
        }
    }

    if std::env::var("SEQREL_PHASES").is_ok() {
        eprintln!(
            "phases: new_pair={phase_new} pending={phase_pending} total={}",
            ctx.counter.mul_count()
        );
    }
    let mut relations: Vec<Poly> = accepted.into_iter().map(|p| p.c).collect();
    // drop redundant leading monomials; the output is minimal whenever the
    // window hypotheses hold, this keeps degenerate inputs safe
    relations = minimalize(relations, ord);
    let gb = if interreduce_output {
        interreduce(&relations, ord, &ctx.counter)
    } else {
        GroebnerBasis::new(relations, ord.clone())
    };
    Ok(DivRun {
        gb,
        staircase,
        muls: ctx.counter.mul_count(),
        queries: table.query_count() - queries_before,
        trace,
        warnings,
    })
}

fn minimalize(mut relations: Vec<Poly>, ord: &MonomialOrder) -> Vec<Poly> {
    relations.sort_by(|p, q| ord.cmp(p.lm().unwrap(), q.lm().unwrap()));
    let mut kept: Vec<Poly> = Vec::new();
    for p in relations {
        if !kept.iter().any(|k| k.lm().unwrap().divides(p.lm().unwrap())) {
            kept.push(p);
        }
    }
    kept
}

/// Mutual reduction to a fixpoint: returns the reduced, monic, minimal basis
/// generating the same ideal. Already-reduced inputs pass through unchanged.
pub fn interreduce(relations: &[Poly], ord: &MonomialOrder, counter: &OpCounter) -> GroebnerBasis {
    let mut polys: Vec<Poly> = relations.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        assert!(rounds < 1000, "interreduction failed to stabilize");
        polys.sort_by(|p, q| ord.cmp(p.lm().unwrap(), q.lm().unwrap()));
        let mut changed = false;
        for i in 0..polys.len() {
            let others: Vec<&Poly> = polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            let (_, r) = polys[i].normal_form(&others, ord, counter);
            let r = r.monic(counter);
            if r != polys[i] {
                changed = true;
                if r.is_zero() {
                    polys.remove(i);
                } else {
                    polys[i] = r;
                }
                break;
            }
        }
        if !changed {
            break;
        }
    }
    GroebnerBasis::new(polys, ord.clone())
}

/// Result of a [`berlekamp_massey`] run.
#[derive(Debug)]
pub struct BmRun {
    pub relation: Poly,
    pub muls: u64,
    pub queries: u64,
}

/// The univariate guesser: runs the extended Euclidean algorithm on
/// `x^{D+1}` and the mirror of `T[x^D]`, keeping only the second cofactor,
/// and stops at the first pair whose residual drops below its relation's
/// leading monomial. Returns the monic relation of least degree whose shifts
/// vanish across the window; on a window with no valid relation the result's
/// degree exceeds `D`.
pub fn berlekamp_massey(table: &Table, d_bound: u32) -> Result<BmRun, GuessError> {
    assert_eq!(table.dimension(), 1, "berlekamp_massey expects a 1-dimensional table");
    let ord = MonomialOrder::drl(1);
    let counter = OpCounter::new();
    let queries_before = table.query_count();
    let support = ord.enumerate_below(&Monomial::new(vec![d_bound]))?;
    let (mirror, _) = mirror_series(table, &support, &ord)?;
    let field = table.field();

    let modulus = Monomial::new(vec![d_bound + 1]);
    let mut prev = PairR {
        tag: modulus.clone(),
        f: Poly::term(modulus, field.one()),
        c: Poly::zero(),
    };
    let mut curr = PairR {
        tag: Monomial::one(1),
        f: mirror,
        c: Poly::constant(field.one(), 1),
    };
    // stop once lm(F) < lm(C); a zero residual stops immediately
    loop {
        let done = match (curr.f.lm(), curr.c.lm()) {
            (None, _) => true,
            (Some(fm), Some(cm)) => ord.cmp(fm, cm) == Ordering::Less,
            (Some(_), None) => unreachable!("cofactor chain keeps C nonzero"),
        };
        if done {
            break;
        }
        let (quots, rem) = prev.f.normal_form(&[&curr.f], &ord, &counter);
        let c_next = prev.c.sub(&quots[0].mul(&curr.c, &ord, &counter), &ord);
        let mut next = PairR {
            tag: c_next.lm().expect("cofactor is nonzero").clone(),
            f: rem,
            c: c_next,
        };
        next = normalize_monic(next, &counter);
        prev = curr;
        curr = next;
    }
    Ok(BmRun {
        relation: curr.c.monic(&counter),
        muls: counter.mul_count(),
        queries: table.query_count() - queries_before,
    })
}

// ---------------------------------------------------------------------------
// Adaptive variant
// ---------------------------------------------------------------------------

/// One record per processed candidate of an adaptive run, taken after all
/// reductions, on the current `2S'` support.
#[derive(Clone, Debug)]
pub struct AdaptiveStep {
    pub tag: Monomial,
    pub f: Poly,
    pub c: Poly,
    pub masked_lt: Option<(Monomial, Scalar)>,
    pub threshold: Monomial,
    pub accepted: bool,
}

/// Result of a [`guess_adaptive`] run.
#[derive(Debug)]
pub struct AdaptiveRun {
    pub gb: GroebnerBasis,
    pub staircase: Staircase,
    pub muls: u64,
    pub queries: u64,
    pub trace: Vec<AdaptiveStep>,
}

/// Reduces the relation component of `pair` by the accepted relations,
/// applying each quotient to the whole pair, so that the support of `C`
/// returns to the current staircase.
pub fn normal_form_right_side(
    pair: &PairR,
    accepted: &[&PairR],
    ord: &MonomialOrder,
    counter: &OpCounter,
) -> PairR {
    let mut f = pair.f.clone();
    let mut c_rem: Vec<(Monomial, Scalar)> = Vec::new();
    let mut work = pair.c.clone();
    'outer: loop {
        let (wm, wc) = match work.lt() {
            Some((m, s)) => (m.clone(), s.clone()),
            None => break,
        };
        for red in accepted {
            let (dm, dc) = red.c.lt().expect("accepted relations are nonzero");
            if let Some(q) = dm.quotient_of(&wm) {
                let qc = wc.div(dc, counter).expect("monic relation");
                work = work.sub(&red.c.term_mul(&q, &qc, counter), ord);
                f = f.sub(&red.f.term_mul(&q, &qc, counter), ord);
                continue 'outer;
            }
        }
        c_rem.push(work.pop_leading().expect("leading term exists"));
    }
    PairR {
        tag: pair.tag.clone(),
        f,
        c: Poly::from_sorted_terms(c_rem, ord),
    }
}

/// Like a plain pair normal form, except the division is steered by the
/// higher parts: dividend and non-border reducers are masked by the accepted
/// leading monomials before leading terms are compared. Quotients still
/// apply to the full pairs.
pub fn normal_form_higher_part(
    pair: &PairR,
    reducers: &[&PairR],
    mask: &[Monomial],
    m_lcm: &Monomial,
    ord: &MonomialOrder,
    counter: &OpCounter,
) -> PairR {
    let masked_reducers: Vec<Poly> = reducers
        .iter()
        .map(|r| {
            if r.is_border() {
                r.f.clone()
            } else {
                r.f.mask_higher_part(m_lcm, mask)
            }
        })
        .collect();
    let mut f = pair.f.clone();
    let mut c = pair.c.clone();
    let mut work = pair.f.mask_higher_part(m_lcm, mask);
    'outer: loop {
        let (wm, wc) = match work.lt() {
            Some((m, s)) => (m.clone(), s.clone()),
            None => break,
        };
        for (red, masked) in reducers.iter().zip(&masked_reducers) {
            let (dm, dc) = match masked.lt() {
                Some(t) => t,
                None => continue,
            };
            if let Some(q) = dm.quotient_of(&wm) {
                let qc = wc.div(dc, counter).expect("masked residual lc is nonzero");
                work = work.sub(&masked.term_mul(&q, &qc, counter), ord);
                f = f.sub(&red.f.term_mul(&q, &qc, counter), ord);
                if !red.c.is_zero() {
                    c = c.sub(&red.c.term_mul(&q, &qc, counter), ord);
                }
                continue 'outer;
            }
        }
        work.pop_leading();
    }
    PairR { tag: pair.tag.clone(), f, c }
}

struct AdaptiveState<'t> {
    table: &'t Table,
    ord: MonomialOrder,
    counter: OpCounter,
    stair_monos: Vec<Monomial>,
    stair_pairs: Vec<PairR>,
    accepted: Vec<PairR>,
    worklist: Vec<Monomial>,
}

impl AdaptiveState<'_> {
    fn accepted_lms(&self) -> Vec<Monomial> {
        self.accepted.iter().map(|p| p.tag.clone()).collect()
    }

    /// Rebuilds the mirror support machinery for the trial staircase and
    /// refreshes every retained pair's residual on it.
    fn refresh_support(
        &mut self,
        s_prime: &[Monomial],
        old_lcm2: Option<&Monomial>,
    ) -> Result<(Poly, Monomial, PowerIdeal, Vec<PairR>), GuessError> {
        let ord = self.ord.clone();
        let supp2 = minkowski_sum(s_prime, s_prime, &ord);
        let (p2, m_lcm) = mirror_series(self.table, &supp2, &ord)?;
        let bounds = PowerIdeal::bounding(&m_lcm);
        let borders: Vec<PairR> = (0..ord.nvars())
            .map(|var| {
                let g = bounds.generator(var);
                PairR {
                    tag: g.clone(),
                    f: Poly::term(g, self.table.field().one()),
                    c: Poly::zero(),
                }
            })
            .collect();
        let mask = self.accepted_lms();
        let ratio = old_lcm2.map(|old| old.quotient_of(&m_lcm).expect("support only grows"));
        for pair in self.stair_pairs.iter_mut() {
            let old_masked_lm = match (&ratio, old_lcm2) {
                (Some(_), Some(old)) => pair.f.mask_higher_part(old, &mask).lm().cloned(),
                _ => None,
            };
            pair.f = p2.mul_mod(&pair.c, &bounds, &ord, &self.counter);
            // staircase pairs keep their masked leading monomial up to the
            // lcm ratio; accepted pairs carry no such guarantee
            if let (Some(r), Some(old_lm)) = (&ratio, old_masked_lm) {
                debug_assert_eq!(
                    pair.f.mask_higher_part(&m_lcm, &mask).lm(),
                    Some(&old_lm.mul(r)),
                    "masked leading monomial must be stable across the support update"
                );
            }
        }
        for pair in self.accepted.iter_mut() {
            pair.f = p2.mul_mod(&pair.c, &bounds, &ord, &self.counter);
        }
        Ok((p2, m_lcm, bounds, borders))
    }
}

/// The adaptive guesser: worklist-driven staircase discovery where each
/// candidate `m` extends the trial staircase to `S' = S + {m}`, all pairs
/// are rebuilt on the `2S'` support, and the candidate relation is
/// initialized by dividing the two pairs below it. A candidate is accepted
/// when the masked residual leads strictly below `lcm(S')^2 / m`.
/// `max_staircase` guards against non linear recurrent input.
pub fn guess_adaptive(
    table: &Table,
    ord: &MonomialOrder,
    max_staircase: usize,
) -> Result<AdaptiveRun, GuessError> {
    if !ord.is_weight_order() {
        return Err(GuessError::Order(
            crate::monomials::MonomialError::NotAWeightOrder,
        ));
    }
    let n = ord.nvars();
    let field = table.field();
    let queries_before = table.query_count();
    let mut state = AdaptiveState {
        table,
        ord: ord.clone(),
        counter: OpCounter::new(),
        stair_monos: Vec::new(),
        stair_pairs: Vec::new(),
        accepted: Vec::new(),
        worklist: vec![Monomial::one(n)],
    };
    let mut trace = Vec::new();
    let mut cur_lcm2: Option<Monomial> = None;

    while !state.worklist.is_empty() {
        let m = state.worklist.remove(0);
        let mut s_prime = state.stair_monos.clone();
        let pos = s_prime.binary_search_by(|c| ord.cmp(c, &m)).unwrap_err();
        s_prime.insert(pos, m.clone());

        let (p2, m_lcm, bounds, borders) = state.refresh_support(&s_prime, cur_lcm2.as_ref())?;
        let mask = state.accepted_lms();

        // initialize the candidate pair
        let init = if m.is_one() {
            PairR {
                tag: m.clone(),
                f: p2.clone(),
                c: Poly::constant(field.one(), n),
            }
        } else if let Some((mu_pair, head)) = find_square_step(&state, &m) {
            // m = mu * x_i^2 with mu and mu*x_i in S: one division step
            let mut reducers: Vec<&PairR> = vec![head];
            reducers.extend(borders.iter());
            let mut pair =
                normal_form_higher_part(mu_pair, &reducers, &mask, &m_lcm, ord, &state.counter);
            pair.tag = m.clone();
            pair
        } else {
            // m = mu * x_i with mu in S: shift and clean up
            let (mu_pair, var) = find_shift_step(&state, &m)
                .expect("worklist candidates extend the staircase by one variable");
            let xi = Monomial::var(n, var);
            PairR {
                tag: m.clone(),
                f: mu_pair.f.mono_mul(&xi).reduce_mod_power_ideal(&bounds),
                c: mu_pair.c.mono_mul(&xi),
            }
        };

        // pull the relation support back into the staircase, clean high
        // terms, then eliminate the staircase rows
        let accepted_refs: Vec<&PairR> = {
            let mut v: Vec<&PairR> = state.accepted.iter().collect();
            v.sort_by(|x, y| ord.cmp(&y.tag, &x.tag));
            v
        };
        let mut pair = normal_form_right_side(&init, &accepted_refs, ord, &state.counter);
        pair.f = pair.f.reduce_mod_power_ideal(&bounds);
        let stair_refs: Vec<&PairR> = state.stair_pairs.iter().collect();
        pair = normal_form_higher_part(&pair, &stair_refs, &mask, &m_lcm, ord, &state.counter);
        pair = normalize_monic(pair, &state.counter);
        assert_eq!(pair.c.lm(), Some(&m), "candidate relation must be led by its tag");

        let masked = pair.f.mask_higher_part(&m_lcm, &mask);
        let threshold = m.quotient_of(&m_lcm).expect("m divides lcm(S')^2");
        let accepted = match masked.lm() {
            None => true,
            Some(lm) => ord.cmp(lm, &threshold) == Ordering::Less,
        };
        trace.push(AdaptiveStep {
            tag: m.clone(),
            f: pair.f.clone(),
            c: pair.c.clone(),
            masked_lt: masked.lt().map(|(mm, cc)| (mm.clone(), cc.clone())),
            threshold: threshold.clone(),
            accepted,
        });

        if accepted {
            // the staircase keeps its old extent: shrink the accepted pair
            // and every retained pair back onto the 2S support
            let supp_old = minkowski_sum(&state.stair_monos, &state.stair_monos, ord);
            let (p_old, lcm_old) = mirror_series(table, &supp_old, ord)?;
            let bounds_old = PowerIdeal::bounding(&lcm_old);
            let f_small = p_old.mul_mod(&pair.c, &bounds_old, ord, &state.counter);
            for retained in state.stair_pairs.iter_mut().chain(state.accepted.iter_mut()) {
                retained.f = p_old.mul_mod(&retained.c, &bounds_old, ord, &state.counter);
            }
            state.accepted.push(PairR { tag: m.clone(), f: f_small, c: pair.c });
            state.worklist.retain(|w| !m.divides(w));
            cur_lcm2 = Some(lcm_old);
        } else {
            state.stair_monos = s_prime;
            let pos = state
                .stair_pairs
                .binary_search_by(|p| ord.cmp(&p.tag, &m))
                .unwrap_err();
            state.stair_pairs.insert(pos, pair);
            cur_lcm2 = Some(m_lcm);
            if state.stair_monos.len() > max_staircase {
                return Err(GuessError::StaircaseLimit(format!("{}", m.display(ord))));
            }
            let lms = state.accepted_lms();
            for var in 0..n {
                let next = m.mul(&Monomial::var(n, var));
                if !state.worklist.contains(&next) && !lms.iter().any(|g| g.divides(&next)) {
                    state.worklist.push(next);
                }
            }
            state.worklist.sort_by(|x, y| ord.cmp(x, y));
        }
    }

    let relations: Vec<Poly> = state.accepted.iter().map(|p| p.c.clone()).collect();
    let gb = GroebnerBasis::new(relations, ord.clone());
    Ok(AdaptiveRun {
        gb,
        staircase: Staircase::stabilize(state.stair_monos.iter().cloned(), ord),
        muls: state.counter.mul_count(),
        queries: table.query_count() - queries_before,
        trace,
    })
}

/// Finds `mu = m / x_i^2` with both `mu` and `mu * x_i` in the staircase,
/// preferring the lowest variable index (highest default precedence).
/// Returns the `mu` pair and the `mu * x_i` pair (the head of the division).
fn find_square_step<'a>(state: &'a AdaptiveState, m: &Monomial) -> Option<(&'a PairR, &'a PairR)> {
    let n = m.nvars();
    for var in 0..n {
        if m.exp(var) < 2 {
            continue;
        }
        let xi = Monomial::var(n, var);
        let mu = xi.mul(&xi).quotient_of(m).unwrap();
        let mu_xi = xi.quotient_of(m).unwrap();
        let mu_pair = state.stair_pairs.iter().find(|p| p.tag == mu);
        let head = state.stair_pairs.iter().find(|p| p.tag == mu_xi);
        if let (Some(a), Some(b)) = (mu_pair, head) {
            return Some((a, b));
        }
    }
    None
}

fn find_shift_step<'a>(state: &'a AdaptiveState, m: &Monomial) -> Option<(&'a PairR, usize)> {
    let n = m.nvars();
    (0..n).find_map(|var| {
        if m.exp(var) == 0 {
            return None;
        }
        let mu = Monomial::var(n, var).quotient_of(m).unwrap();
        state
            .stair_pairs
            .iter()
            .find(|p| p.tag == mu)
            .map(|p| (p, var))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use crate::tables::{
        adaptive_example_table, binomial_table, bracket_eval, fibonacci_table,
        pascal_variant_table, primes_table, Table,
    };

    fn drl(n: usize) -> MonomialOrder {
        MonomialOrder::drl(n)
    }

    fn poly(s: &str, ord: &MonomialOrder) -> Poly {
        Poly::parse(s, ord, &Field::Rational).unwrap()
    }

    fn mono(s: &str, ord: &MonomialOrder) -> Monomial {
        Monomial::parse(s, ord).unwrap()
    }

    #[test]
    fn bm_fibonacci() {
        let t = fibonacci_table(Field::Rational);
        let run = berlekamp_massey(&t, 5).unwrap();
        assert_eq!(run.relation, poly("x^2 - x - 1", &drl(1)));
        assert_eq!(run.queries, 6);
    }

    #[test]
    fn bm_zero_table() {
        let t = Table::from_rule(1, Field::Rational, |_, f| f.zero());
        let run = berlekamp_massey(&t, 4).unwrap();
        assert_eq!(run.relation, poly("1", &drl(1)));
    }

    #[test]
    fn bm_geometric() {
        // w_i = 3^i has the relation x - 3
        let t = Table::from_rule(1, Field::Rational, |idx, f| f.from_i64(3i64.pow(idx[0])));
        let run = berlekamp_massey(&t, 4).unwrap();
        assert_eq!(run.relation, poly("x - 3", &drl(1)));
    }

    #[test]
    fn bm_no_relation_in_window() {
        // only the last window term is nonzero: the result degree exceeds D
        let t = Table::from_rule(1, Field::Rational, |idx, f| {
            if idx[0] == 2 {
                f.one()
            } else {
                f.zero()
            }
        });
        let run = berlekamp_massey(&t, 2).unwrap();
        assert_eq!(run.relation, poly("x^3", &drl(1)));
    }

    #[test]
    fn divalgo_binomial_golden() {
        let ord = drl(2);
        let t = binomial_table(Field::Rational);
        let run = guess_div(&t, &ord, &mono("x^3", &ord), &Monomial::one(2), true).unwrap();
        let expect: Vec<Poly> = ["y^2", "x*y - y - 1", "x^2 - 2*x + 1"]
            .iter()
            .map(|s| poly(s, &ord))
            .collect();
        assert_eq!(run.gb.relations(), expect.as_slice());
        assert_eq!(
            run.staircase.monomials(),
            &[Monomial::one(2), mono("y", &ord), mono("x", &ord)]
        );
        // the run visits exactly |T[a] + T[b]| table terms
        assert_eq!(run.queries, 10);
    }

    #[test]
    fn divalgo_binomial_trace_pairs() {
        let ord = drl(2);
        let t = binomial_table(Field::Rational);
        let run = guess_div(&t, &ord, &mono("x^3", &ord), &Monomial::one(2), false).unwrap();
        let find = |tag: &Monomial| {
            run.trace.iter().find_map(|e| match e {
                DivTraceEvent::PairCreated { tag: t, f, c } if t == tag => {
                    Some((f.clone(), c.clone()))
                }
                _ => None,
            })
        };
        let (f_y, c_y) = find(&mono("y", &ord)).unwrap();
        assert_eq!(f_y, poly("x^2*y^3 + 2*x*y^3", &ord));
        assert_eq!(c_y, poly("y", &ord));
        let (f_x2, c_x2) = find(&mono("x^2", &ord)).unwrap();
        assert_eq!(f_x2, poly("-3*x^2*y^2 - x*y^3 + 2*x*y^2 + y^3", &ord));
        assert_eq!(c_x2, poly("x^2 - 2*x + 1", &ord));
    }

    #[test]
    fn divalgo_pascal_variant_golden() {
        let ord = drl(2);
        let t = pascal_variant_table(Field::Rational);
        let run = guess_div(&t, &ord, &mono("y^5", &ord), &Monomial::one(2), true).unwrap();
        let expect: Vec<Poly> = [
            "x*y - x + y - 1",
            "x^2 + y^2 - 2*x + 2*y - 2",
            "y^3 + y^2 - y - 1",
        ]
        .iter()
        .map(|s| poly(s, &ord))
        .collect();
        assert_eq!(run.gb.relations(), expect.as_slice());
    }

    #[test]
    fn divalgo_zero_table() {
        let ord = drl(2);
        let t = Table::from_rule(2, Field::Rational, |_, f| f.zero());
        let run = guess_div(&t, &ord, &mono("x^2", &ord), &Monomial::one(2), true).unwrap();
        assert_eq!(run.gb.relations(), &[poly("1", &ord)]);
        assert!(run.staircase.is_empty());
    }

    #[test]
    fn divalgo_second_binomial_window() {
        // a = b = x y^2 discovers the wider window's basis
        let ord = drl(2);
        let t = binomial_table(Field::Rational);
        let a = mono("x*y^2", &ord);
        let run = guess_div(&t, &ord, &a, &a, false).unwrap();
        let lms: Vec<Monomial> = run.gb.leading_monomials();
        assert_eq!(
            lms,
            vec![mono("x*y", &ord), mono("y^3", &ord), mono("x^3", &ord)]
        );
        // the x y relation is the binomial rule itself
        assert_eq!(run.gb.relations()[0], poly("x*y - y - 1", &ord));
    }

    #[test]
    fn interreduce_examples() {
        let ord = drl(1);
        let counter = OpCounter::new();
        // an already reduced basis passes through
        let ord2 = drl(2);
        let reduced: Vec<Poly> = ["y^2", "x*y - y - 1", "x^2 - 2*x + 1"]
            .iter()
            .map(|s| poly(s, &ord2))
            .collect();
        let gb = interreduce(&reduced, &ord2, &counter);
        assert_eq!(gb.relations(), reduced.as_slice());
        // mutual reduction finds the single generator
        let pair = vec![poly("x^2 - 1", &ord), poly("x^2 + x", &ord)];
        let gb1 = interreduce(&pair, &ord, &counter);
        assert_eq!(gb1.relations(), &[poly("x + 1", &ord)]);
    }

    #[test]
    fn adaptive_worked_example() {
        let ord = drl(2);
        let t = adaptive_example_table(Field::Rational);
        let run = guess_adaptive(&t, &ord, 64).unwrap();
        let expect: Vec<Poly> = ["x*y + x - y - 1", "x^2 - 1", "y^5 + 1"]
            .iter()
            .map(|s| poly(s, &ord))
            .collect();
        assert_eq!(run.gb.relations(), expect.as_slice());
        assert_eq!(run.staircase.len(), 6);
    }

    #[test]
    fn adaptive_trace_checkpoints() {
        // intermediate coefficients from the worked trace
        let ord = drl(2);
        let t = adaptive_example_table(Field::Rational);
        let run = guess_adaptive(&t, &ord, 64).unwrap();
        let step = |tag: &Monomial| run.trace.iter().find(|s| s.tag == *tag).unwrap();

        let y_step = step(&mono("y", &ord));
        assert_eq!(y_step.c, poly("y - 3/2", &ord));
        assert_eq!(y_step.f, poly("-17/2*y - 15/2", &ord));
        assert!(!y_step.accepted);

        let x_step = step(&mono("x", &ord));
        assert_eq!(x_step.c, poly("x + 15/17*y - 31/17", &ord));
        assert!(!x_step.accepted);

        let y2_step = step(&mono("y^2", &ord));
        assert_eq!(y2_step.c, poly("y^2 + 106/189*x - 17/63*y - 134/189", &ord));
        assert!(!y2_step.accepted);

        let xy_step = step(&mono("x*y", &ord));
        assert_eq!(xy_step.c, poly("x*y + x - y - 1", &ord));
        assert_eq!(
            xy_step.f,
            poly(
                "-15*y^4 - 7*x^2*y - x*y^2 - 14*y^3 - 10*x^2 - 4*x*y - 5*y^2",
                &ord
            )
        );
        assert!(xy_step.accepted);

        let x2_step = step(&mono("x^2", &ord));
        assert_eq!(x2_step.c, poly("x^2 - 1", &ord));
        assert!(x2_step.accepted);

        // the y^3 candidate fails with masked leading coefficient -25651/1381
        let y3_step = step(&mono("y^3", &ord));
        let (lm, lc) = y3_step.masked_lt.clone().unwrap();
        assert_eq!(lm, mono("x^2*y^3", &ord));
        assert_eq!(lc, Field::Rational.from_ratio(-25651, 1381));
        assert!(!y3_step.accepted);

        let y5_step = step(&mono("y^5", &ord));
        assert_eq!(y5_step.c, poly("y^5 + 1", &ord));
        assert!(y5_step.accepted);
    }

    #[test]
    fn adaptive_primes_table() {
        let ord = drl(3);
        let t = primes_table(3, 4, Field::Rational);
        let run = guess_adaptive(&t, &ord, 64).unwrap();
        let lms = run.gb.leading_monomials();
        assert_eq!(lms, vec![mono("z", &ord), mono("y", &ord), mono("x^4", &ord)]);
        assert_eq!(run.gb.relations()[0], poly("z - 1", &ord));
        assert_eq!(run.gb.relations()[1], poly("y - 1", &ord));
        // output-sensitive query bound
        let union: Vec<Monomial> = run
            .staircase
            .monomials()
            .iter()
            .cloned()
            .chain(lms)
            .collect();
        let bound = minkowski_sum(&union, &union, &ord).len() as u64;
        assert!(run.queries <= bound, "{} > {}", run.queries, bound);
    }

    #[test]
    fn adaptive_geometric_table() {
        let f = Field::Rational;
        let t = Table::from_rule(2, f, |idx, f| {
            f.from_i64(2i64.pow(idx[0]) * 3i64.pow(idx[1]))
        });
        let ord = drl(2);
        let run = guess_adaptive(&t, &ord, 16).unwrap();
        let expect = vec![poly("y - 3", &ord), poly("x - 2", &ord)];
        assert_eq!(run.gb.relations(), expect.as_slice());
        for rel in run.gb.relations() {
            for i in 0..5 {
                for j in 0..5 {
                    let sh = Monomial::new(vec![i, j]);
                    assert!(bracket_eval(&t, rel, &sh).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn adaptive_zero_at_origin() {
        // w_0 = 0 accepts the unit relation immediately
        let t = Table::from_rule(2, Field::Rational, |_, f| f.zero());
        let ord = drl(2);
        let run = guess_adaptive(&t, &ord, 16).unwrap();
        assert_eq!(run.gb.relations(), &[poly("1", &ord)]);
    }

    #[test]
    fn adaptive_staircase_guard() {
        // the factorial-like table is not linear recurrent
        let t = Table::from_rule(1, Field::Rational, |idx, f| {
            f.from_i64((1..=idx[0] as i64 + 1).product::<i64>())
        });
        let ord = drl(1);
        match guess_adaptive(&t, &ord, 8) {
            Err(GuessError::StaircaseLimit(_)) => {}
            other => panic!("expected the staircase guard, got {other:?}"),
        }
    }

    #[test]
    fn one_dimensional_consistency() {
        // guess_div restricted to one variable agrees with the Euclidean view
        let t = fibonacci_table(Field::Rational);
        let ord = drl(1);
        let run = guess_div(&t, &ord, &Monomial::new(vec![5]), &Monomial::one(1), true).unwrap();
        assert_eq!(run.gb.relations(), &[poly("x^2 - x - 1", &ord)]);
        let bm = berlekamp_massey(&t, 5).unwrap();
        assert_eq!(run.gb.relations()[0], bm.relation);
    }
}
