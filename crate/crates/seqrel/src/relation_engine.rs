//! The pair machinery shared by the guessing algorithms.
//!
//! A pair `R_m = [F_m, C_m]` couples a candidate relation `C_m` (leading
//! monomial `m`) with its residual `F_m = P * C_m mod B`, where `P` is the
//! mirror of the truncated generating series and `B` the pure-power ideal
//! bounding its support. Border pairs `[x_i^{D_i+1}, 0]` carry no relation
//! and only clean high-degree terms. Division of residuals drives both the
//! validity test and the construction of new candidate relations.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use crate::monomials::{mask_generators, minkowski_sum, Monomial, MonomialError, MonomialOrder};
use crate::polynomials::{Poly, PowerIdeal};
use crate::scalars::{Field, OpCounter};
use crate::tables::{mirror_series, Table, TableError};

/// A candidate pair. `tag` is the leading monomial of `c`, or the pure
/// border power for border pairs (`c = 0`).
#[derive(Clone, Debug)]
pub struct PairR {
    pub tag: Monomial,
    pub f: Poly,
    pub c: Poly,
}

impl PairR {
    pub fn is_border(&self) -> bool {
        self.c.is_zero()
    }
}

/// Errors shared by the guessing front ends.
#[derive(Debug)]
pub enum GuessError {
    Order(MonomialError),
    Table(TableError),
    /// The adaptive staircase outgrew its safety bound; the payload names the
    /// last monomial added.
    StaircaseLimit(String),
}

impl std::fmt::Display for GuessError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GuessError::Order(e) => write!(f, "{e}"),
            GuessError::Table(e) => write!(f, "{e}"),
            GuessError::StaircaseLimit(m) => {
                write!(f, "staircase bound exceeded (last monomial {m}); the table may not be linear recurrent")
            }
        }
    }
}

impl std::error::Error for GuessError {}

impl From<MonomialError> for GuessError {
    fn from(e: MonomialError) -> Self {
        GuessError::Order(e)
    }
}

impl From<TableError> for GuessError {
    fn from(e: TableError) -> Self {
        GuessError::Table(e)
    }
}

/// Everything one division-based guessing run needs: the mirror polynomial
/// `P` over `T[a] + T[b]`, its lcm `M`, the bounding ideal `B`, and the
/// multiplication counter of the run.
pub struct GuessContext<'t> {
    pub table: &'t Table,
    pub ord: MonomialOrder,
    pub field: Field,
    pub a: Monomial,
    pub b: Monomial,
    pub below_a: Vec<Monomial>,
    pub support: Vec<Monomial>,
    pub mirror: Poly,
    pub m_lcm: Monomial,
    pub bounds: PowerIdeal,
    pub counter: OpCounter,
    mask_cache: RefCell<HashMap<Monomial, Vec<Monomial>>>,
}

impl<'t> GuessContext<'t> {
    pub fn new(
        table: &'t Table,
        ord: &MonomialOrder,
        a: &Monomial,
        b: &Monomial,
    ) -> Result<Self, GuessError> {
        let below_a = ord.enumerate_below(a)?;
        let below_b = ord.enumerate_below(b)?;
        let support = minkowski_sum(&below_a, &below_b, ord);
        let (mirror, m_lcm) = mirror_series(table, &support, ord)?;
        let bounds = PowerIdeal::bounding(&m_lcm);
        Ok(GuessContext {
            table,
            ord: ord.clone(),
            field: table.field(),
            a: a.clone(),
            b: b.clone(),
            below_a,
            support,
            mirror,
            m_lcm,
            bounds,
            counter: OpCounter::new(),
            mask_cache: RefCell::new(HashMap::new()),
        })
    }

    /// The starting pair `R_1 = [P, 1]`.
    pub fn initial_pair(&self) -> PairR {
        let n = self.ord.nvars();
        PairR {
            tag: Monomial::one(n),
            f: self.mirror.clone(),
            c: Poly::constant(self.field.one(), n),
        }
    }

    /// The edge pairs `R_{B_i} = [x_i^{1 + deg_i M}, 0]`.
    pub fn make_border_pairs(&self) -> Vec<PairR> {
        (0..self.ord.nvars())
            .map(|var| {
                let g = self.bounds.generator(var);
                PairR {
                    tag: g.clone(),
                    f: Poly::term(g, self.field.one()),
                    c: Poly::zero(),
                }
            })
            .collect()
    }

    /// Builds `[P*C mod B, C]` directly from a relation candidate.
    pub fn pair_from_relation(&self, c: &Poly) -> PairR {
        PairR {
            tag: c.lm().expect("nonzero relation").clone(),
            f: self.mirror.mul_mod(c, &self.bounds, &self.ord, &self.counter),
            c: c.clone(),
        }
    }

    /// Greatest shift of `m` staying below `a`, or `None` when `m` is
    /// already past `a`.
    pub fn max_shift(&self, m: &Monomial) -> Option<Monomial> {
        max_shift_in(m, &self.a, &self.below_a, &self.ord)
    }

    /// Row labels the validity test must ignore for shift `s`, memoized.
    pub fn mask_for_shift(&self, s: &Monomial) -> Vec<Monomial> {
        if self.b.is_one() {
            return Vec::new();
        }
        if let Some(m) = self.mask_cache.borrow().get(s) {
            return m.clone();
        }
        let gens = mask_generators(&self.b, s, &self.ord).expect("weight order");
        self.mask_cache.borrow_mut().insert(s.clone(), gens.clone());
        gens
    }

    /// The residual with masked rows, as used by the validity criterion.
    pub fn masked_residual(&self, pair: &PairR) -> Poly {
        match self.max_shift(&pair.tag) {
            None => pair.f.clone(),
            Some(s) => pair.f.mask_higher_part(&self.m_lcm, &self.mask_for_shift(&s)),
        }
    }

    /// The criterion: a pair whose tag lies past `a` is valid outright;
    /// otherwise the relation holds for all tested shifts iff the masked
    /// residual's leading monomial falls below `M / (b*s)`.
    pub fn validity_test(&self, pair: &PairR) -> bool {
        let Some(s) = self.max_shift(&pair.tag) else {
            return true;
        };
        let mask = self.mask_for_shift(&s);
        let masked = pair.f.mask_higher_part(&self.m_lcm, &mask);
        let threshold = self
            .b
            .mul(&s)
            .quotient_of(&self.m_lcm)
            .expect("b*s divides M");
        match masked.lm() {
            None => true,
            Some(lm) => self.ord.cmp(lm, &threshold) == Ordering::Less,
        }
    }

    /// Checks `F = P*C mod B` on a scratch counter (debug builds only).
    pub fn debug_verify_pair(&self, pair: &PairR) {
        if cfg!(debug_assertions) && !pair.is_border() {
            let scratch = OpCounter::new();
            let expect = self.mirror.mul_mod(&pair.c, &self.bounds, &self.ord, &scratch);
            assert_eq!(
                pair.f.reduce_mod_power_ideal(&self.bounds),
                expect,
                "pair invariant F = P*C mod B broken for tag {:?}",
                pair.tag
            );
        }
    }
}

/// Greatest `sigma` with `sigma * m <= a`, searching the enumeration of
/// `T[a]`; `None` iff `m` is greater than `a`.
pub fn max_shift_in(
    m: &Monomial,
    a: &Monomial,
    below_a: &[Monomial],
    ord: &MonomialOrder,
) -> Option<Monomial> {
    // below_a is ascending, so the last admissible shift is the greatest
    below_a
        .iter()
        .rev()
        .find(|sigma| ord.cmp(&sigma.mul(m), a) != Ordering::Greater)
        .cloned()
}

/// Standalone form of [`GuessContext::max_shift`].
pub fn max_shift(
    m: &Monomial,
    a: &Monomial,
    ord: &MonomialOrder,
) -> Result<Option<Monomial>, MonomialError> {
    Ok(max_shift_in(m, a, &ord.enumerate_below(a)?, ord))
}

/// Divides `start.f` by the residuals of `reducers` in list order (leftmost
/// matching leading monomial wins), applying every quotient to both
/// components. Zero residuals are skipped. Returns the reduced pair.
pub fn pair_normal_form(
    start: &PairR,
    reducers: &[&PairR],
    ord: &MonomialOrder,
    counter: &OpCounter,
) -> PairR {
    pair_normal_form_capped(start, reducers, None, ord, counter)
}

/// [`pair_normal_form`] with a guard on the relation component: a reduction
/// step contributing `q * lm(C_red)` at or above `cap` is skipped, so the
/// reduced pair keeps its own leading relation monomial. Used when cleaning
/// pending candidates, whose tag must survive the reduction.
pub fn pair_normal_form_capped(
    start: &PairR,
    reducers: &[&PairR],
    cap: Option<&Monomial>,
    ord: &MonomialOrder,
    counter: &OpCounter,
) -> PairR {
    divide_pair(start, reducers, cap, None, ord, counter)
}

/// The shared division core. `cap` protects the relation lead as in
/// [`pair_normal_form_capped`]. `blocked_head`, when set, names a reducer
/// that may not touch the dividend's original leading term (a pair must not
/// cancel its own shift outright), but participates normally afterwards.
fn divide_pair(
    start: &PairR,
    reducers: &[&PairR],
    cap: Option<&Monomial>,
    blocked_head: Option<usize>,
    ord: &MonomialOrder,
    counter: &OpCounter,
) -> PairR {
    let start_lm = start.f.lm().cloned();
    let mut f_rem: Vec<(Monomial, crate::scalars::Scalar)> = Vec::new();
    let mut work = start.f.clone();
    let mut c = start.c.clone();
    'outer: loop {
        let (wm, wc) = match work.lt() {
            Some((m, s)) => (m.clone(), s.clone()),
            None => break,
        };
        let at_head = start_lm.as_ref() == Some(&wm);
        for (i, red) in reducers.iter().enumerate() {
            if at_head && blocked_head == Some(i) {
                continue;
            }
            let (dm, dc) = match red.f.lt() {
                Some(t) => t,
                None => continue,
            };
            if let Some(q) = dm.quotient_of(&wm) {
                if let (Some(cap), Some(red_lm)) = (cap, red.c.lm()) {
                    if ord.cmp(&q.mul(red_lm), cap) != Ordering::Less {
                        continue;
                    }
                }
                let qc = wc.div(dc, counter).expect("residual lc is nonzero");
                work = work.sub(&red.f.term_mul(&q, &qc, counter), ord);
                if !red.c.is_zero() {
                    c = c.sub(&red.c.term_mul(&q, &qc, counter), ord);
                }
                continue 'outer;
            }
        }
        f_rem.push(work.pop_leading().expect("leading term exists"));
    }
    PairR {
        tag: start.tag.clone(),
        f: Poly::from_sorted_terms(f_rem, ord),
        c,
    }
}

/// Scales the pair so that `C` is monic (border pairs pass through). Counts
/// the inversion and per-term products.
pub fn normalize_monic(pair: PairR, counter: &OpCounter) -> PairR {
    let Some(lc) = pair.c.lc() else { return pair };
    if lc.is_one() {
        return pair;
    }
    let inv = lc.inv(counter).expect("nonzero leading coefficient");
    PairR {
        tag: pair.tag,
        f: pair.f.scalar_mul(&inv, counter),
        c: pair.c.scalar_mul(&inv, counter),
    }
}

/// Builds the pair for a fresh border monomial `h` from the failing pairs:
/// pick the failing `R_m` with `m | h`, `m` greatest; if some other failing
/// pair's residual leads at `(h/m) * lm(F_m)`, reduce that pair by `R_m`
/// first (an honest division step); otherwise shift `R_m` by `h/m` and
/// reduce. The result is normalized monic and tagged `h`.
pub fn new_pair(ctx: &GuessContext, h: &Monomial, failing: &[PairR], borders: &[PairR]) -> PairR {
    let ord = &ctx.ord;
    let source = failing
        .iter()
        .filter(|r| r.tag.divides(h))
        .max_by(|x, y| ord.cmp(&x.tag, &y.tag))
        .expect("no admissible source pair");
    let q = source.tag.quotient_of(h).expect("source tag divides h");
    let shifted_lm = q.mul(source.f.lm().expect("failing residual is nonzero"));

    let mut tail: Vec<&PairR> = failing.iter().filter(|r| r.tag != source.tag).collect();
    tail.sort_by(|x, y| ord.cmp(y.f.lm().unwrap(), x.f.lm().unwrap()));

    let partner = tail
        .iter()
        .filter(|r| r.f.lm() == Some(&shifted_lm))
        .max_by(|x, y| ord.cmp(&x.tag, &y.tag))
        .copied();

    let raw = match partner {
        Some(other) => {
            // reduce the partner by the source pair, then the edge, then the
            // remaining failing pairs by decreasing residual
            let mut reducers: Vec<&PairR> = vec![source];
            reducers.extend(borders.iter());
            reducers.extend(tail.iter().filter(|r| r.tag != other.tag).copied());
            let mut start = other.clone();
            start.tag = h.clone();
            pair_normal_form(&start, &reducers, ord, &ctx.counter)
        }
        None if ctx.bounds.contains(&shifted_lm) => {
            // equivalent single-monomial start [q * lm(F_m), 0]
            let start = PairR {
                tag: h.clone(),
                f: Poly::term(shifted_lm, ctx.field.one()),
                c: Poly::zero(),
            };
            let mut reducers: Vec<&PairR> = vec![source];
            reducers.extend(borders.iter());
            reducers.extend(tail.iter().copied());
            pair_normal_form(&start, &reducers, ord, &ctx.counter)
        }
        None => {
            // shift the source; it still reduces lower terms but must not
            // cancel its own shifted lead
            let start = PairR {
                tag: h.clone(),
                f: source.f.mono_mul(&q),
                c: source.c.mono_mul(&q),
            };
            let nb = borders.len();
            let mut reducers: Vec<&PairR> = Vec::new();
            reducers.extend(borders.iter());
            let mut all_failing: Vec<&PairR> = failing.iter().collect();
            all_failing.sort_by(|x, y| ord.cmp(y.f.lm().unwrap(), x.f.lm().unwrap()));
            let src_pos = nb
                + all_failing
                    .iter()
                    .position(|r| r.tag == source.tag)
                    .expect("source is failing");
            reducers.extend(all_failing);
            divide_pair(&start, &reducers, None, Some(src_pos), ord, &ctx.counter)
        }
    };
    let pair = normalize_monic(raw, &ctx.counter);
    assert_eq!(
        pair.c.lm(),
        Some(h),
        "new pair must carry a relation led by the border monomial"
    );
    ctx.debug_verify_pair(&pair);
    pair
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use crate::tables::{binomial_table, fibonacci_table};

    fn drl2() -> MonomialOrder {
        MonomialOrder::drl(2)
    }

    fn mono(s: &str, ord: &MonomialOrder) -> Monomial {
        Monomial::parse(s, ord).unwrap()
    }

    fn poly(s: &str, ord: &MonomialOrder) -> Poly {
        Poly::parse(s, ord, &Field::Rational).unwrap()
    }

    #[test]
    fn border_pairs_from_lcm() {
        let ord = drl2();
        let t = binomial_table(Field::Rational);
        let ctx = GuessContext::new(&t, &ord, &mono("x^3", &ord), &Monomial::one(2)).unwrap();
        assert_eq!(ctx.m_lcm, mono("x^3*y^3", &ord));
        let borders = ctx.make_border_pairs();
        assert_eq!(borders.len(), 2);
        assert_eq!(*borders[0].f.lm().unwrap(), mono("x^4", &ord));
        assert_eq!(*borders[1].f.lm().unwrap(), mono("y^4", &ord));
        assert!(borders.iter().all(|b| b.c.is_zero()));

        let ctx2 =
            GuessContext::new(&t, &ord, &mono("x*y^2", &ord), &mono("x*y^2", &ord)).unwrap();
        assert_eq!(ctx2.m_lcm, mono("x^4*y^6", &ord));
        let borders2 = ctx2.make_border_pairs();
        assert_eq!(*borders2[0].f.lm().unwrap(), mono("x^5", &ord));
        assert_eq!(*borders2[1].f.lm().unwrap(), mono("y^7", &ord));

        let ord1 = MonomialOrder::drl(1);
        let fib = fibonacci_table(Field::Rational);
        let ctx1 =
            GuessContext::new(&fib, &ord1, &Monomial::new(vec![5]), &Monomial::one(1)).unwrap();
        let borders1 = ctx1.make_border_pairs();
        assert_eq!(*borders1[0].f.lm().unwrap(), Monomial::new(vec![6]));
    }

    #[test]
    fn max_shift_examples() {
        let ord = drl2();
        let a = mono("x*y^2", &ord);
        assert_eq!(
            max_shift(&mono("x*y", &ord), &a, &ord).unwrap(),
            Some(mono("y", &ord))
        );
        assert_eq!(max_shift(&Monomial::one(2), &a, &ord).unwrap(), Some(a.clone()));
        // m = x^2, a = x^3: brute force over T[a] gives x
        let a3 = mono("x^3", &ord);
        let got = max_shift(&mono("x^2", &ord), &a3, &ord).unwrap();
        let brute = ord
            .enumerate_below(&a3)
            .unwrap()
            .into_iter()
            .filter(|s| ord.cmp(&s.mul(&mono("x^2", &ord)), &a3) != Ordering::Greater)
            .max_by(|x, y| ord.cmp(x, y));
        assert_eq!(got, brute);
        assert_eq!(got, Some(mono("x", &ord)));
        // past the bound there is no shift
        assert_eq!(max_shift(&mono("x^3*y", &ord), &a3, &ord).unwrap(), None);
    }

    #[test]
    fn binomial_trace_pairs() {
        // the worked binomial run with a = x^3, b = 1
        let ord = drl2();
        let t = binomial_table(Field::Rational);
        let a = mono("x^3", &ord);
        let ctx = GuessContext::new(&t, &ord, &a, &Monomial::one(2)).unwrap();
        assert_eq!(
            ctx.mirror,
            poly("x^3*y^3 + x^2*y^3 + x^2*y^2 + x*y^3 + 2*x*y^2 + y^3", &ord)
        );
        let borders = ctx.make_border_pairs();
        let r1 = ctx.initial_pair();

        // R_1 fails when shifted by 1
        assert!(!ctx.validity_test(&r1));
        let failing = vec![r1.clone()];

        // R_y = [x^2 y^3 + 2 x y^3, y]
        let r_y = new_pair(&ctx, &mono("y", &ord), &failing, &borders);
        assert_eq!(r_y.f, poly("x^2*y^3 + 2*x*y^3", &ord));
        assert_eq!(r_y.c, poly("y", &ord));

        // R_x = [x^3 y^2 + x^2 y^2 - 2 x y^2 - y^3, x - 1]
        let r_x = new_pair(&ctx, &mono("x", &ord), &failing, &borders);
        assert_eq!(r_x.f, poly("x^3*y^2 + x^2*y^2 - 2*x*y^2 - y^3", &ord));
        assert_eq!(r_x.c, poly("x - 1", &ord));

        assert!(!ctx.validity_test(&r_y));
        assert!(!ctx.validity_test(&r_x));
        let failing = vec![r1.clone(), r_y.clone(), r_x.clone()];

        // R_{y^2} = [0, y^2]
        let r_y2 = new_pair(&ctx, &mono("y^2", &ord), &failing[..2], &borders);
        assert!(r_y2.f.is_zero());
        assert_eq!(r_y2.c, poly("y^2", &ord));
        assert!(ctx.validity_test(&r_y2));

        // R_{x y} = [-x^2 y^2 - 3 x y^3 - 2 x y^2 - y^3, x y - y - 1]
        let r_xy = new_pair(&ctx, &mono("x*y", &ord), &failing, &borders);
        assert_eq!(r_xy.f, poly("-x^2*y^2 - 3*x*y^3 - 2*x*y^2 - y^3", &ord));
        assert_eq!(r_xy.c, poly("x*y - y - 1", &ord));
        assert!(ctx.validity_test(&r_xy));

        // R_{x^2} = [-3 x^2 y^2 - x y^3 + 2 x y^2 + y^3, x^2 - 2 x + 1]
        let r_x2 = new_pair(&ctx, &mono("x^2", &ord), &failing, &borders);
        assert_eq!(r_x2.f, poly("-3*x^2*y^2 - x*y^3 + 2*x*y^2 + y^3", &ord));
        assert_eq!(r_x2.c, poly("x^2 - 2*x + 1", &ord));
        assert!(ctx.validity_test(&r_x2));
    }

    #[test]
    fn masked_validity_on_shared_bounds() {
        // a = b = x y^2: the x y candidate is valid only thanks to masking
        let ord = drl2();
        let t = binomial_table(Field::Rational);
        let a = mono("x*y^2", &ord);
        let ctx = GuessContext::new(&t, &ord, &a, &a).unwrap();
        let r_xy = ctx.pair_from_relation(&poly("x*y - y - 1", &ord));
        assert_eq!(
            r_xy.f,
            poly("-4*x*y^6 - x^2*y^4 - 6*x*y^5 - y^6 - 3*x*y^4", &ord)
        );
        let masked = ctx.masked_residual(&r_xy);
        assert_eq!(masked, poly("-x^2*y^4", &ord));
        assert!(ctx.validity_test(&r_xy));
        // without masking the raw residual sits above the threshold
        assert_eq!(*r_xy.f.lm().unwrap(), mono("x*y^6", &ord));

        // past-the-bound tags are valid unconditionally
        let past = ctx.pair_from_relation(&poly("x^3", &ord));
        assert!(ctx.validity_test(&past));
    }

    #[test]
    fn pair_invariant_after_reduction() {
        let ord = drl2();
        let t = binomial_table(Field::Rational);
        let ctx = GuessContext::new(&t, &ord, &mono("x^3", &ord), &Monomial::one(2)).unwrap();
        let borders = ctx.make_border_pairs();
        let r1 = ctx.initial_pair();
        let r_y = new_pair(&ctx, &mono("y", &ord), &[r1.clone()], &borders);
        let mut reducers: Vec<&PairR> = borders.iter().collect();
        reducers.push(&r_y);
        let reduced = pair_normal_form(&r1, &reducers, &ord, &ctx.counter);
        ctx.debug_verify_pair(&reduced);
    }
}
