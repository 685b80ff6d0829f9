//! Independent multi-Hankel linear algebra, used as ground truth for the
//! division-based guessers and as the comparison curve in benchmarks.
//!
//! Everything here is dense and exact. The implementations favor being
//! obviously correct over being fast; test matrices stay well under 500x500.


use crate::monomials::{Monomial, MonomialOrder, Staircase};
use crate::polynomials::Poly;
use crate::relation_engine::GuessError;
use crate::scalars::{Field, OpCounter, Scalar};
use crate::tables::{GroebnerBasis, Table, TableError};

/// A matrix with rows and columns labeled by monomials; the entry at
/// `(u, t)` is the table term at index `u * t`, so equal products give equal
/// entries.
#[derive(Clone, Debug)]
pub struct MultiHankel {
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    entries: Vec<Scalar>,
}

impl MultiHankel {
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols.len()..(i + 1) * self.cols.len()]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows()).map(|i| self.entry(i, j).clone()).collect()
    }

    /// Matrix-vector product over the table's field.
    pub fn mul_vec(&self, v: &[Scalar], field: &Field, counter: &OpCounter) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols());
        (0..self.nrows())
            .map(|i| {
                let mut acc = field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = acc.add(&a.mul(b, counter));
                }
                acc
            })
            .collect()
    }
}

/// Builds `H_{U,T}`; queries exactly the distinct products `U + T`.
pub fn build_multi_hankel(
    t: &Table,
    rows: &[Monomial],
    cols: &[Monomial],
) -> Result<MultiHankel, TableError> {
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for u in rows {
        for c in cols {
            entries.push(t.query_mono(&u.mul(c))?);
        }
    }
    Ok(MultiHankel { rows: rows.to_vec(), cols: cols.to_vec(), entries })
}

/// A basis of the right kernel, one vector per free column, computed by
/// Gaussian elimination with deterministic pivoting (leftmost pivot column,
/// first nonzero row). Each basis vector has a 1 at its free column.
pub fn kernel_basis(h: &MultiHankel, field: &Field, counter: &OpCounter) -> Vec<Vec<Scalar>> {
    let (nr, nc) = (h.nrows(), h.ncols());
    let mut mat: Vec<Vec<Scalar>> = (0..nr).map(|i| h.row(i).to_vec()).collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..nc {
        let Some(pr) = (rank..nr).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].inv(counter).expect("pivot is nonzero");
        for x in mat[rank].iter_mut() {
            *x = x.mul(&inv, counter);
        }
        for i in 0..nr {
            if i != rank && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                let pivot_row = mat[rank].clone();
                for (a, b) in mat[i].iter_mut().zip(pivot_row.iter()) {
                    *a = a.sub(&f.mul(b, counter));
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..nc {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); nc];
        v[free] = field.one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = mat[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

fn rank_of(h: &MultiHankel, counter: &OpCounter) -> usize {
    let (nr, nc) = (h.nrows(), h.ncols());
    let mut mat: Vec<Vec<Scalar>> = (0..nr).map(|i| h.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..nc {
        let Some(pr) = (rank..nr).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].inv(counter).expect("pivot is nonzero");
        for i in rank + 1..nr {
            if !mat[i][col].is_zero() {
                let f = mat[i][col].mul(&inv, counter);
                let pivot_row = mat[rank].clone();
                for (a, b) in mat[i].iter_mut().zip(pivot_row.iter()).skip(col) {
                    *a = a.sub(&f.mul(b, counter));
                }
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Solves `A x = b` where `A` is given by columns; `None` when inconsistent.
fn solve_columns(
    cols: &[Vec<Scalar>],
    b: &[Scalar],
    field: &Field,
    counter: &OpCounter,
) -> Option<Vec<Scalar>> {
    let rows = b.len();
    let nc = cols.len();
    let mut mat: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; nc];
    let mut rank = 0;
    for col in 0..nc {
        let Some(pr) = (rank..rows).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].inv(counter).expect("pivot is nonzero");
        for x in mat[rank].iter_mut() {
            *x = x.mul(&inv, counter);
        }
        for i in 0..rows {
            if i != rank && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                let pivot_row = mat[rank].clone();
                for (a, b) in mat[i].iter_mut().zip(pivot_row.iter()) {
                    *a = a.sub(&f.mul(b, counter));
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    for row in mat.iter().skip(rank) {
        if !row[nc].is_zero() {
            return None;
        }
    }
    let mut x = vec![field.zero(); nc];
    for (col, &pr) in pivot_of_col.iter().enumerate() {
        if pr != usize::MAX {
            x[col] = mat[pr][nc].clone();
        }
    }
    Some(x)
}

/// Result of an oracle run.
#[derive(Debug)]
pub struct OracleRun {
    pub gb: GroebnerBasis,
    pub staircase: Staircase,
    pub muls: u64,
    pub queries: u64,
}

/// The linear-algebra relation guesser on the window `T = U = T[a]`: the
/// staircase is the greedy (lexicographically first for the ordering)
/// maximal independent column set; each border monomial within the window
/// yields one monic relation by solving against the staircase columns.
pub fn scalar_fglm(
    table: &Table,
    ord: &MonomialOrder,
    a: &Monomial,
) -> Result<OracleRun, GuessError> {
    let counter = OpCounter::new();
    let field = table.field();
    let queries_before = table.query_count();
    let window = ord.enumerate_below(a)?;
    let h = build_multi_hankel(table, &window, &window)?;

    // greedy staircase discovery: keep a column iff it is independent of the
    // kept ones; pivots are tracked incrementally for determinism
    let mut kept: Vec<usize> = Vec::new();
    let mut reduced: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for j in 0..h.ncols() {
        let mut v = h.column(j);
        for (pr, basis) in &reduced {
            if v[*pr].is_zero() {
                continue;
            }
            let f = v[*pr].clone();
            for (a, b) in v.iter_mut().zip(basis) {
                *a = a.sub(&f.mul(b, &counter));
            }
        }
        if let Some(pr) = (0..v.len()).find(|&i| !v[i].is_zero()) {
            let inv = v[pr].inv(&counter).expect("nonzero pivot");
            let vr: Vec<Scalar> = v.iter().map(|x| x.mul(&inv, &counter)).collect();
            reduced.push((pr, vr));
            kept.push(j);
        }
    }
    let stair_monos: Vec<Monomial> = kept.iter().map(|&j| window[j].clone()).collect();
    let staircase = Staircase::stabilize(stair_monos.iter().cloned(), ord);

    // one relation per border monomial inside the window
    let stair_cols: Vec<Vec<Scalar>> = kept.iter().map(|&j| h.column(j)).collect();
    let mut relations = Vec::new();
    for g in staircase.border() {
        let Ok(j) = window.binary_search_by(|c| ord.cmp(c, &g)) else {
            continue; // outside the window; untestable here
        };
        let gamma = solve_columns(&stair_cols, &h.column(j), &field, &counter)
            .expect("border columns are dependent on the staircase");
        let mut terms = vec![(g.clone(), field.one())];
        for (s, c) in stair_monos.iter().zip(gamma) {
            terms.push((s.clone(), c.neg()));
        }
        relations.push(Poly::from_terms(terms, ord));
    }
    Ok(OracleRun {
        gb: GroebnerBasis::new(relations, ord.clone()),
        staircase,
        muls: counter.mul_count(),
        queries: table.query_count() - queries_before,
    })
}

/// The rank-growth adaptive variant: grow `S` while `H_{S+m,S+m}` has full
/// rank; a rank defect yields the relation for `m` by solving the square
/// staircase system. Query-optimal in the same sense as the division-based
/// adaptive guesser.
pub fn adaptive_sfglm(
    table: &Table,
    ord: &MonomialOrder,
    max_staircase: usize,
) -> Result<OracleRun, GuessError> {
    if !ord.is_weight_order() {
        return Err(GuessError::Order(
            crate::monomials::MonomialError::NotAWeightOrder,
        ));
    }
    let counter = OpCounter::new();
    let field = table.field();
    let queries_before = table.query_count();
    let n = ord.nvars();
    let mut stair: Vec<Monomial> = Vec::new();
    let mut relations: Vec<Poly> = Vec::new();
    let mut worklist = vec![Monomial::one(n)];
    while !worklist.is_empty() {
        let m = worklist.remove(0);
        let mut trial = stair.clone();
        let pos = trial.binary_search_by(|c| ord.cmp(c, &m)).unwrap_err();
        trial.insert(pos, m.clone());
        let h = build_multi_hankel(table, &trial, &trial)?;
        if rank_of(&h, &counter) > stair.len() {
            stair = trial;
            if stair.len() > max_staircase {
                return Err(GuessError::StaircaseLimit(format!("{}", m.display(ord))));
            }
            let lms: Vec<Monomial> = relations.iter().map(|p| p.lm().unwrap().clone()).collect();
            for var in 0..n {
                let next = m.mul(&Monomial::var(n, var));
                if !worklist.contains(&next) && !lms.iter().any(|g| g.divides(&next)) {
                    worklist.push(next);
                }
            }
            worklist.sort_by(|x, y| ord.cmp(x, y));
        } else {
            // the m column depends on the staircase columns over rows S
            let hs = build_multi_hankel(table, &stair, &stair)?;
            let cols: Vec<Vec<Scalar>> = (0..hs.ncols()).map(|j| hs.column(j)).collect();
            let target: Vec<Scalar> = stair
                .iter()
                .map(|u| table.query_mono(&u.mul(&m)))
                .collect::<Result<_, _>>()?;
            let gamma = solve_columns(&cols, &target, &field, &counter)
                .expect("rank defect makes the system consistent");
            let mut terms = vec![(m.clone(), field.one())];
            for (s, c) in stair.iter().zip(gamma) {
                terms.push((s.clone(), c.neg()));
            }
            relations.push(Poly::from_terms(terms, ord));
            worklist.retain(|w| !m.divides(w));
        }
    }
    Ok(OracleRun {
        gb: GroebnerBasis::new(relations, ord.clone()),
        staircase: Staircase::stabilize(stair, ord),
        muls: counter.mul_count(),
        queries: table.query_count() - queries_before,
    })
}
