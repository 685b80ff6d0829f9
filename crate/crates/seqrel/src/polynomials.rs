//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept strictly decreasing for the active monomial ordering, with
//! no zero coefficients and no duplicate monomials. Every operation that
//! multiplies field elements routes through the computation's [`OpCounter`];
//! term reordering, additions and the power-ideal truncation are free.

use std::cmp::Ordering;
use std::fmt;

use crate::monomials::{Exp, Monomial, MonomialOrder};
use crate::scalars::{parse_scalar, Field, OpCounter, Scalar};

/// A pure-power monomial ideal `(x_1^{e_1}, ..., x_n^{e_n})` used to truncate
/// mirror-polynomial products. All generator exponents are at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerIdeal {
    gen_exps: Vec<Exp>,
}

impl PowerIdeal {
    pub fn new(gen_exps: Vec<Exp>) -> Self {
        assert!(gen_exps.iter().all(|&e| e >= 1), "generator exponents must be >= 1");
        PowerIdeal { gen_exps }
    }

    /// The ideal `(x_1^{deg_1(M)+1}, ..., x_n^{deg_n(M)+1})` just past the
    /// divisors of `M`.
    pub fn bounding(m: &Monomial) -> Self {
        PowerIdeal {
            gen_exps: m.exps().iter().map(|&e| e + 1).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.gen_exps.len()
    }

    /// The generator for variable `var`, as a monomial.
    pub fn generator(&self, var: usize) -> Monomial {
        let mut exps = vec![0 as Exp; self.nvars()];
        exps[var] = self.gen_exps[var];
        Monomial::new(exps)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.exps().iter().zip(&self.gen_exps).any(|(&e, &g)| e >= g)
    }
}

/// A sparse polynomial: terms sorted strictly decreasing by the ordering.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: Scalar, n: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(Monomial::one(n), c)] }
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(m, c)] }
    }

    /// Canonicalizes an arbitrary term list: sort descending, merge duplicate
    /// monomials, drop zeros.
    pub fn from_terms(terms: Vec<(Monomial, Scalar)>, ord: &MonomialOrder) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        let p = Poly { terms: merged };
        p.debug_check(ord);
        p
    }

    fn debug_check(&self, ord: &MonomialOrder) {
        if cfg!(debug_assertions) {
            for w in self.terms.windows(2) {
                assert_eq!(ord.cmp(&w[0].0, &w[1].0), Ordering::Greater, "terms out of order");
            }
            assert!(self.terms.iter().all(|(_, c)| !c.is_zero()), "zero coefficient kept");
        }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    /// Removes and returns the leading term; order is preserved in place.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Wraps a term list that is already strictly decreasing with no zero
    /// coefficients; checked in debug builds.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Scalar)>, ord: &MonomialOrder) -> Self {
        let p = Poly { terms };
        p.debug_check(ord);
        p
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Leading monomial; `None` is the zero sentinel, below every monomial.
    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn lt(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial, ord: &MonomialOrder, field: &Field) -> Scalar {
        match self.terms.binary_search_by(|(t, _)| ord.cmp(m, t)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => field.zero(),
        }
    }

    pub fn add(&self, rhs: &Poly, ord: &MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match ord.cmp(&self.terms[i].0, &rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&rhs.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        let p = Poly { terms: out };
        p.debug_check(ord);
        p
    }

    pub fn sub(&self, rhs: &Poly, ord: &MonomialOrder) -> Poly {
        self.add(&rhs.neg(), ord)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    /// Multiplies every coefficient by `c`; one counted product per term.
    pub fn scalar_mul(&self, c: &Scalar, counter: &OpCounter) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c, counter)))
                .collect(),
        }
    }

    /// Multiplies by a monomial; order-compatible, so no re-sort and no
    /// counted operations.
    pub fn mono_mul(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn term_mul(&self, m: &Monomial, c: &Scalar, counter: &OpCounter) -> Poly {
        self.mono_mul(m).scalar_mul(c, counter)
    }

    /// Full product; performs `|supp p| * |supp q|` counted multiplications.
    pub fn mul(&self, rhs: &Poly, ord: &MonomialOrder, counter: &OpCounter) -> Poly {
        let mut acc = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (t, k) in &rhs.terms {
                acc.push((m.mul(t), c.mul(k, counter)));
            }
        }
        Poly::from_terms(acc, ord)
    }

    /// Product truncated modulo a pure-power ideal: terms landing in the
    /// ideal are never materialized and their products are not counted.
    pub fn mul_mod(
        &self,
        rhs: &Poly,
        modulus: &PowerIdeal,
        ord: &MonomialOrder,
        counter: &OpCounter,
    ) -> Poly {
        let mut acc = Vec::new();
        for (m, c) in &self.terms {
            for (t, k) in &rhs.terms {
                let prod = m.mul(t);
                if !modulus.contains(&prod) {
                    acc.push((prod, c.mul(k, counter)));
                }
            }
        }
        Poly::from_terms(acc, ord)
    }

    /// Drops every term whose monomial lies in the ideal. Free of counted
    /// operations; this is the quotient-less cleanup reduction.
    pub fn reduce_mod_power_ideal(&self, modulus: &PowerIdeal) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !modulus.contains(m))
                .cloned()
                .collect(),
        }
    }

    /// Divides the polynomial by `lc`, making it monic. Counts one inversion
    /// plus one product per remaining term.
    pub fn monic(&self, counter: &OpCounter) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => {
                let inv = c.inv(counter).expect("leading coefficient is nonzero");
                self.scalar_mul(&inv, counter)
            }
        }
    }

    /// Masks the higher part: removes every term `M/u` whose row label `u` is
    /// a multiple of some mask generator. Every term must divide `M`.
    pub fn mask_higher_part(&self, m_lcm: &Monomial, mask: &[Monomial]) -> Poly {
        if mask.is_empty() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| {
                    let u = t.quotient_of(m_lcm).expect("term must divide the lcm");
                    !mask.iter().any(|g| g.divides(&u))
                })
                .cloned()
                .collect(),
        }
    }

    /// Multi-divisor division with quotient tracking: returns quotients and a
    /// remainder with `p = sum(Q_i d_i) + r` such that no remainder monomial
    /// is divisible by any divisor's leading monomial. At each step the
    /// leading term is cancelled against the first divisor in list order
    /// whose leading monomial divides it; zero divisors are skipped. Counts
    /// one division per quotient term plus the support of the divisor.
    pub fn normal_form(
        &self,
        divisors: &[&Poly],
        ord: &MonomialOrder,
        counter: &OpCounter,
    ) -> (Vec<Poly>, Poly) {
        let mut quotients = vec![Poly::zero(); divisors.len()];
        let mut remainder: Vec<(Monomial, Scalar)> = Vec::new();
        let mut work = self.clone();
        'outer: while let Some((wm, wc)) = work.lt() {
            for (i, d) in divisors.iter().enumerate() {
                let (dm, dc) = match d.lt() {
                    Some(t) => t,
                    None => continue,
                };
                if let Some(q) = dm.quotient_of(wm) {
                    let qc = wc.div(dc, counter).expect("divisor lc is nonzero");
                    let qterm = Poly::term(q.clone(), qc.clone());
                    quotients[i] = quotients[i].add(&qterm, ord);
                    work = work.sub(&d.term_mul(&q, &qc, counter), ord);
                    continue 'outer;
                }
            }
            remainder.push((wm.clone(), wc.clone()));
            work.terms.remove(0);
        }
        (quotients, Poly::from_terms(remainder, ord))
    }

    /// Renders with the order's variable names: `x^2 - 2*x + 1`.
    pub fn display<'a>(&'a self, ord: &'a MonomialOrder) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ord }
    }

    /// Parses the human-readable syntax, e.g. `x*y - y - 1` or
    /// `y^2 + 1/2*x`.
    pub fn parse(s: &str, ord: &MonomialOrder, field: &Field) -> Result<Poly, String> {
        let scratch = OpCounter::new();
        let n = ord.nvars();
        let mut terms = Vec::new();
        let mut rest = s.trim();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        if rest.is_empty() {
            return Err("empty polynomial".into());
        }
        while !rest.is_empty() {
            let end = rest
                .char_indices()
                .find(|(i, c)| *i > 0 && (*c == '+' || *c == '-'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let chunk = rest[..end].trim();
            let mut coeff = field.from_i64(sign);
            let mut mono = Monomial::one(n);
            for atom in chunk.split('*') {
                let atom = atom.trim();
                if atom.is_empty() {
                    return Err(format!("empty factor in `{chunk}`"));
                }
                if atom.chars().next().unwrap().is_ascii_digit() {
                    let c = parse_scalar(atom, field)?;
                    coeff = coeff.mul(&c, &scratch);
                } else {
                    let factor = Monomial::parse(atom, ord)?;
                    mono = mono.mul(&factor);
                }
            }
            terms.push((mono, coeff));
            if end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
            rest = rest[end + 1..].trim_start();
        }
        Ok(Poly::from_terms(terms, ord))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    ord: &'a MonomialOrder,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let txt = format!("{c}");
            let (neg, mag) = match txt.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, txt),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", m.display(self.ord))?;
            } else {
                write!(f, "{}*{}", mag, m.display(self.ord))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ord2() -> MonomialOrder {
        MonomialOrder::drl(2)
    }

    fn q() -> Field {
        Field::Rational
    }

    fn p(s: &str, ord: &MonomialOrder) -> Poly {
        Poly::parse(s, ord, &q()).unwrap()
    }

    #[test]
    fn leading_term_accessors() {
        let ord = ord2();
        let f = p("x^2 - x - 1", &ord);
        assert_eq!(*f.lm().unwrap(), Monomial::parse("x^2", &ord).unwrap());
        assert_eq!(Poly::zero().lm(), None);
        let g = p("-13*x - 8", &ord);
        assert_eq!(*g.lc().unwrap(), q().from_i64(-13));
    }

    #[test]
    fn arithmetic_basics() {
        let ord = ord2();
        let c = OpCounter::new();
        let f = p("x - 1", &ord);
        let g = p("x + 1", &ord);
        assert_eq!(f.add(&Poly::zero(), &ord), f);
        assert_eq!(f.mul(&g, &ord, &c), p("x^2 - 1", &ord));
        assert_eq!(c.mul_count(), 4);
        let h = p("x*y - y - 1", &ord);
        let y = Monomial::parse("y", &ord).unwrap();
        assert_eq!(h.mono_mul(&y), p("x*y^2 - y^2 - y", &ord));
    }

    #[test]
    fn power_ideal_truncation() {
        let ord1 = MonomialOrder::drl(1);
        let f = Poly::parse("x^6 + x^2", &ord1, &q()).unwrap();
        let b = PowerIdeal::new(vec![6]);
        assert_eq!(f.reduce_mod_power_ideal(&b), Poly::parse("x^2", &ord1, &q()).unwrap());
        assert_eq!(Poly::zero().reduce_mod_power_ideal(&b), Poly::zero());
    }

    #[test]
    fn binomial_mirror_times_pure_power_vanishes() {
        // P_{T[x^2 y]} * y^3 mod (x^3, y^4) = 0 for the binomial mirror
        let ord = ord2();
        let c = OpCounter::new();
        let mirror = p("x^2*y^3 + x*y^3 + x*y^2 + y^3 + 2*y^2", &ord);
        let b = PowerIdeal::new(vec![3, 4]);
        let y3 = Poly::term(Monomial::parse("y^3", &ord).unwrap(), q().one());
        assert!(mirror.mul_mod(&y3, &b, &ord, &c).is_zero());
    }

    #[test]
    fn normal_form_self_division() {
        let ord = ord2();
        let c = OpCounter::new();
        let f = p("x*y - y - 1", &ord);
        let (qs, r) = f.normal_form(&[&f], &ord, &c);
        assert_eq!(qs[0], p("1", &ord));
        assert!(r.is_zero());
    }

    #[test]
    fn fibonacci_euclid_step() {
        let ord = MonomialOrder::drl(1);
        let c = OpCounter::new();
        let b = Poly::parse("x^6", &ord, &q()).unwrap();
        let mirror = Poly::parse("x^5 + x^4 + 2*x^3 + 3*x^2 + 5*x + 8", &ord, &q()).unwrap();
        let (qs, r) = b.normal_form(&[&mirror], &ord, &c);
        assert_eq!(qs[0], Poly::parse("x - 1", &ord, &q()).unwrap());
        // the paper's pair stores the monic-normalized negative of this
        assert_eq!(
            r.neg(),
            Poly::parse("x^4 + x^3 + 2*x^2 + 3*x - 8", &ord, &q()).unwrap()
        );
        // second Euclidean step
        let (qs2, r2) = mirror.normal_form(&[&r.neg()], &ord, &c);
        assert_eq!(qs2[0], Poly::parse("x", &ord, &q()).unwrap());
        assert_eq!(r2, Poly::parse("13*x + 8", &ord, &q()).unwrap());
    }

    #[test]
    fn normal_form_empty_divisors() {
        let ord = ord2();
        let c = OpCounter::new();
        let f = p("x^2 + y", &ord);
        let (qs, r) = f.normal_form(&[], &ord, &c);
        assert!(qs.is_empty());
        assert_eq!(r, f);
    }

    #[test]
    fn normal_form_identity_randomized() {
        // p = sum Q_i d_i + r, no remainder monomial divisible by a divisor lm
        let field = Field::Fp(65521);
        let counter = OpCounter::new();
        for n in 1..=3usize {
            let ord = MonomialOrder::drl(n);
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64 * 31);
            for _ in 0..170 {
                let rand_poly = |rng: &mut ChaCha8Rng| {
                    let terms: Vec<(Monomial, Scalar)> = (0..rng.gen_range(1..8))
                        .map(|_| {
                            let mono =
                                Monomial::new((0..n).map(|_| rng.gen_range(0..4)).collect());
                            (mono, field.from_i64(rng.gen_range(-20..20)))
                        })
                        .collect();
                    Poly::from_terms(terms, &ord)
                };
                let f = rand_poly(&mut rng);
                let ds: Vec<Poly> = (0..rng.gen_range(1..4))
                    .map(|_| rand_poly(&mut rng))
                    .collect();
                let refs: Vec<&Poly> = ds.iter().collect();
                let (qs, r) = f.normal_form(&refs, &ord, &counter);
                let mut recomposed = r.clone();
                for (quot, d) in qs.iter().zip(&ds) {
                    recomposed = recomposed.add(&quot.mul(d, &ord, &counter), &ord);
                }
                assert_eq!(recomposed, f);
                for (m, _) in r.terms() {
                    for d in &ds {
                        if let Some(dm) = d.lm() {
                            assert!(!dm.divides(m), "reducible remainder term");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mask_higher_part_example() {
        // F_{xy} loses the term M/x^3 = x*y^6 under the mask {x^3}
        let ord = ord2();
        let f = p("-4*x*y^6 - x^2*y^4 - 6*x*y^5 - y^6 - 3*x*y^4", &ord);
        let m = Monomial::parse("x^4*y^6", &ord).unwrap();
        let mask = vec![Monomial::parse("x^3", &ord).unwrap()];
        assert_eq!(f.mask_higher_part(&m, &mask), p("-x^2*y^4", &ord));
        assert_eq!(f.mask_higher_part(&m, &[]), f);
        assert_eq!(Poly::zero().mask_higher_part(&m, &mask), Poly::zero());
    }

    #[test]
    fn monic_counts_operations() {
        let ord = ord2();
        let c = OpCounter::new();
        let f = p("2*x^2 + 4", &ord);
        assert_eq!(f.monic(&c), p("x^2 + 2", &ord));
        // one inversion plus one product per term
        assert_eq!(c.mul_count(), 3);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let ord = ord2();
        for s in ["x^2 - 2*x + 1", "x*y - y - 1", "-3/2*y + 5", "0"] {
            if s == "0" {
                assert_eq!(format!("{}", Poly::zero().display(&ord)), "0");
                continue;
            }
            let f = p(s, &ord);
            assert_eq!(format!("{}", f.display(&ord)), s);
        }
    }
}
