//! Exact two-phase simplex over the rationals, for the small feasibility
//! and optimization problems that show up in hull and covering checks.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntVector, RatVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, x: RatVector },
}

struct Tableau {
    rows: Vec<RatVector>, // each row: coefficients then rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = BigRational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    // Maximizes obj over the columns in `allowed`, Bland's rule throughout.
    fn run(&mut self, obj: &[BigRational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &obj[b] * &self.rows[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `<c, x>` subject to `A x = b`, `x >= 0`.
pub fn maximize(c: &[BigRational], a: &[RatVector], b: &[BigRational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    debug_assert_eq!(b.len(), m);
    // phase 1: artificial variable per row, rhs made nonnegative
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: RatVector = Vec::with_capacity(ncols + 1);
        for x in &a[i][..n] {
            row.push(if neg { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis: (n..n + m).collect(), ncols };
    let mut phase1 = vec![BigRational::zero(); ncols];
    for x in phase1.iter_mut().skip(n) {
        *x = -BigRational::one();
    }
    tab.run(&phase1, ncols);
    if (0..m).any(|i| tab.basis[i] >= n && !tab.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut obj = c.to_vec();
    obj.resize(ncols, BigRational::zero());
    if !tab.run(&obj, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.rhs(i).clone();
        }
    }
    let value = c.iter().zip(&x).fold(BigRational::zero(), |s, (ci, xi)| s + ci * xi);
    LpOutcome::Optimal { value, x }
}

/// Whether `A x = b`, `x >= 0` has a solution.
pub fn feasible(a: &[RatVector], b: &[BigRational]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    !matches!(maximize(&vec![BigRational::zero(); n], a, b), LpOutcome::Infeasible)
}

fn to_rat(v: &[num_bigint::BigInt]) -> RatVector {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Whether `p` is a convex combination of `points`.
pub fn in_convex_hull(p: &[num_bigint::BigInt], points: &[IntVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = p.len();
    let mut a: Vec<RatVector> = (0..d)
        .map(|i| points.iter().map(|q| BigRational::from_integer(q[i].clone())).collect())
        .collect();
    a.push(vec![BigRational::one(); points.len()]);
    let mut b = to_rat(p);
    b.push(BigRational::one());
    feasible(&a, &b)
}

/// Whether some nonzero nonnegative combination of `gens` vanishes, i.e. the
/// cone they span contains a line (or a generator is zero).
pub fn has_nontrivial_zero_combination(gens: &[IntVector]) -> bool {
    if gens.is_empty() {
        return false;
    }
    let d = gens[0].len();
    let mut a: Vec<RatVector> = (0..d)
        .map(|i| gens.iter().map(|g| BigRational::from_integer(g[i].clone())).collect())
        .collect();
    a.push(vec![BigRational::one(); gens.len()]);
    let mut b = vec![BigRational::zero(); d];
    b.push(BigRational::one());
    feasible(&a, &b)
}

/// Whether `p` is a nonnegative combination of `gens`.
pub fn in_cone(p: &[num_bigint::BigInt], gens: &[IntVector]) -> bool {
    let d = p.len();
    if gens.is_empty() {
        return p.iter().all(Zero::is_zero);
    }
    let a: Vec<RatVector> = (0..d)
        .map(|i| gens.iter().map(|g| BigRational::from_integer(g[i].clone())).collect())
        .collect();
    feasible(&a, &to_rat(p))
}
