//! Smith and Hermite normal forms over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, IntVector};

/// Smith decomposition `D = left * M * right` with `left`, `right`
/// unimodular. The inverses are tracked alongside so callers can move
/// between the original and the diagonal coordinates without inverting.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

struct SmithCalc {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl SmithCalc {
    // row_i -= c * row_t
    fn row_sub(&mut self, i: usize, t: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.a.cols() {
            let v = &self.a[(t, j)] * c;
            self.a[(i, j)] -= v;
        }
        for j in 0..self.p.cols() {
            let v = &self.p[(t, j)] * c;
            self.p[(i, j)] -= v;
        }
        for r in 0..self.p_inv.rows() {
            let v = &self.p_inv[(r, i)] * c;
            self.p_inv[(r, t)] += v;
        }
    }

    // col_j -= c * col_t
    fn col_sub(&mut self, j: usize, t: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.a.rows() {
            let v = &self.a[(i, t)] * c;
            self.a[(i, j)] -= v;
        }
        for i in 0..self.q.rows() {
            let v = &self.q[(i, t)] * c;
            self.q[(i, j)] -= v;
        }
        for k in 0..self.q_inv.cols() {
            let v = &self.q_inv[(j, k)] * c;
            self.q_inv[(t, k)] += v;
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.p.swap_rows(i, k);
        self.p_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.q.swap_cols(j, k);
        self.q_inv.swap_rows(j, k);
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            self.a[(i, j)] = -&self.a[(i, j)];
        }
        for j in 0..self.p.cols() {
            self.p[(i, j)] = -&self.p[(i, j)];
        }
        for r in 0..self.p_inv.rows() {
            self.p_inv[(r, i)] = -&self.p_inv[(r, i)];
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let n = self.a.rows().min(self.a.cols());
        let mut rank = 0;
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.min_entry(t) else {
                    return rank;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..self.a.rows() {
                    let q = &self.a[(i, t)] / &pivot;
                    self.row_sub(i, t, &q);
                    if !self.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.a.cols() {
                    let q = &self.a[(t, j)] / &pivot;
                    self.col_sub(j, t, &q);
                    if !self.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility condition on the remaining block
                let bad = (t + 1..self.a.rows())
                    .flat_map(|i| (t + 1..self.a.cols()).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.a[(i, j)].is_multiple_of(&pivot));
                match bad {
                    Some((i, _)) => {
                        let minus_one = -BigInt::one();
                        self.row_sub(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            rank += 1;
        }
        rank
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut calc = SmithCalc {
        a: m.clone(),
        p: IntMatrix::identity(m.rows()),
        p_inv: IntMatrix::identity(m.rows()),
        q: IntMatrix::identity(m.cols()),
        q_inv: IntMatrix::identity(m.cols()),
    };
    let rank = calc.run();
    let divisors = (0..rank).map(|i| calc.a[(i, i)].clone()).collect();
    SmithForm {
        divisors,
        rank,
        left: calc.p,
        left_inv: calc.p_inv,
        right: calc.q,
        right_inv: calc.q_inv,
    }
}

/// Smith-normal-form diagonal `d_1 | d_2 | ...` of length `min(rows, cols)`:
/// the nonzero divisors first, then zeros.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    let n = m.rows().min(m.cols());
    let mut out = snf.divisors;
    out.resize(n, BigInt::zero());
    out
}

/// Row-style Hermite normal form: returns the nonzero rows of an echelon
/// basis of the row lattice of `m`, with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> Vec<IntVector> {
    let mut rows = m.to_rows();
    let cols = m.cols();
    let mut out: Vec<IntVector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..cols {
        // gcd-combine every remaining row with a nonzero entry in column c
        let mut idx: Option<usize> = None;
        for r in 0..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            match idx {
                None => idx = Some(r),
                Some(p) => {
                    let (a, b) = (rows[p][c].clone(), rows[r][c].clone());
                    let e = a.extended_gcd(&b);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let new_p: IntVector =
                        rows[p].iter().zip(&rows[r]).map(|(u, v)| &x * u + &y * v).collect();
                    let new_r: IntVector =
                        rows[p].iter().zip(&rows[r]).map(|(u, v)| &ag * v - &bg * u).collect();
                    rows[p] = new_p;
                    rows[r] = new_r;
                }
            }
        }
        if let Some(p) = idx {
            let mut row = rows.remove(p);
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(row);
            pivots.push(c);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        if rows.is_empty() {
            break;
        }
    }
    // reduce entries above pivots
    for k in 0..out.len() {
        let c = pivots[k];
        let piv = out[k][c].clone();
        for i in 0..k {
            let q = out[i][c].div_floor(&piv);
            if !q.is_zero() {
                let sub: IntVector = out[k].iter().map(|x| x * &q).collect();
                for (x, s) in out[i].iter_mut().zip(sub) {
                    *x -= s;
                }
            }
        }
    }
    out
}

/// Pivot column of each row of an echelon basis from [`hermite_rows`].
pub fn pivot_columns(rows: &[IntVector]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero echelon row"))
        .collect()
}

/// Reduces `v` modulo the lattice spanned by `basis` (which must be in
/// Hermite form), so that the entry at every pivot column lies in
/// `[0, pivot)`.
pub fn reduce_modulo(v: &[BigInt], basis: &[IntVector]) -> IntVector {
    let mut out = v.to_vec();
    for (row, &c) in basis.iter().zip(&pivot_columns(basis)) {
        let q = out[c].div_floor(&row[c]);
        if !q.is_zero() {
            for (x, b) in out.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
    }
    out
}

/// Integer basis of `{ y : m * y = 0 }`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|j| snf.right.col_vec(j)).collect()
}

/// Basis of the saturation `span_Q(rows) ∩ Z^n` of the row lattice, in
/// Hermite form.
pub fn saturated_row_basis(m: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(m);
    let rows: Vec<IntVector> = (0..snf.rank).map(|i| snf.right_inv.row_vec(i)).collect();
    if rows.is_empty() {
        return rows;
    }
    hermite_rows(&IntMatrix::from_rows(&rows, m.cols()).expect("uniform rows"))
}
