//! Normal forms: Hermite over `Z`, Howell over `Z/N`, reduced row echelon
//! over `Q`, and Smith normal form with transforms over `Z` and `Z/N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::{big, normalizing_unit, Elem, Ring};
use crate::error::{Error, Result};

type IntRows = Vec<Vec<BigInt>>;

pub(crate) fn to_int_rows(rows: &[Vec<Elem>]) -> IntRows {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

pub(crate) fn from_int_rows(rows: IntRows) -> Vec<Vec<Elem>> {
    rows.into_iter().map(|r| r.into_iter().map(big).collect()).collect()
}

/// The ring's canonical echelon form of the row space spanned by `rows`.
/// Zero rows are dropped.
pub fn echelon_canonical(ring: &Ring, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    match ring {
        Ring::Integers => from_int_rows(hermite_int(to_int_rows(rows), ncols)),
        Ring::IntegersMod(n) => from_int_rows(howell_mod(to_int_rows(rows), ncols, n)),
        Ring::Rationals => rref_rat(rows.to_vec(), ncols),
    }
}

fn sub_multiple(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for (x, p) in row[from..].iter_mut().zip(&pivot[from..]) {
        if !p.is_zero() {
            *x -= q * p;
        }
    }
}

/// Row-style Hermite normal form over the integers: echelon rows with
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_int(mut a: IntRows, ncols: usize) -> IntRows {
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let m = a.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (head, tail) = a.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q, c);
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r][c..].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            let (head, tail) = a.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q, c);
        }
        r += 1;
    }
    a.truncate(r);
    a
}

fn reduce_row(row: &mut [BigInt], n: &BigInt) {
    for x in row.iter_mut() {
        if x.is_negative() || &*x >= n {
            *x = x.mod_floor(n);
        }
    }
}

/// Howell form over `Z/N`: the unique echelon form whose pivots divide `N`,
/// whose entries above pivots are reduced modulo the pivot, and whose rows
/// with zeros in the first `c` columns span every element of the row space
/// with that property.
pub fn howell_mod(rows: IntRows, ncols: usize, n: &BigInt) -> IntRows {
    let mut pool: IntRows = rows
        .into_iter()
        .map(|mut r| {
            reduce_row(&mut r, n);
            r
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut out: IntRows = Vec::new();
    for c in 0..ncols {
        let Some(first) = pool.iter().position(|r| !r[c].is_zero()) else {
            continue;
        };
        let mut pivot = pool.swap_remove(first);
        for other in pool.iter_mut() {
            if other[c].is_zero() {
                continue;
            }
            let a = pivot[c].clone();
            let b = other[c].clone();
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            for j in c..ncols {
                let p = &pivot[j];
                let o = &other[j];
                let np = (&e.x * p + &e.y * o).mod_floor(n);
                let no = (&ag * o - &bg * p).mod_floor(n);
                pivot[j] = np;
                other[j] = no;
            }
        }
        pool.retain(|r| r.iter().any(|x| !x.is_zero()));
        let u = normalizing_unit(&pivot[c], n);
        if !u.is_one() {
            for x in pivot[c..].iter_mut() {
                *x = (&*x * &u).mod_floor(n);
            }
        }
        let d = pivot[c].clone();
        let extra: Vec<BigInt> = pivot.iter().map(|x| (x * (n / &d)).mod_floor(n)).collect();
        if extra.iter().any(|x| !x.is_zero()) {
            pool.push(extra);
        }
        for row in out.iter_mut() {
            let q = row[c].div_floor(&d);
            if !q.is_zero() {
                sub_multiple(row, &pivot, &q, c);
                reduce_row(row, n);
            }
        }
        out.push(pivot);
    }
    out
}

/// Howell form computed by lifting to the integers, adjoining `N * I`, and
/// taking the Hermite form. Slower than [`howell_mod`]; kept as an
/// independent route for cross-checking.
pub fn howell_via_lattice(rows: IntRows, ncols: usize, n: &BigInt) -> IntRows {
    let mut lifted = rows;
    for j in 0..ncols {
        let mut r = vec![BigInt::zero(); ncols];
        r[j] = n.clone();
        lifted.push(r);
    }
    hermite_int(lifted, ncols)
        .into_iter()
        .filter(|r| {
            let p = r.iter().find(|x| !x.is_zero()).expect("nonzero row");
            p != n
        })
        .collect()
}

/// Reduced row echelon form over the rationals.
pub fn rref_rat(mut a: Vec<Vec<Elem>>, ncols: usize) -> Vec<Vec<Elem>> {
    let m = a.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let (pr, ir) = if i < r {
                let (h, t) = a.split_at_mut(r);
                (&t[0], &mut h[i])
            } else {
                let (h, t) = a.split_at_mut(i);
                (&h[r], &mut t[0])
            };
            for j in c..ncols {
                if !pr[j].is_zero() {
                    ir[j] = &ir[j] - &f * &pr[j];
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// `M = U * S * V` with `U`, `V` invertible over the ring and `S` diagonal
/// with `d_1 | d_2 | ...`. Over `Z/N` the diagonal entries are divisors of
/// `N` (with `N` itself written as 0).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }
}

struct SnfState<'a> {
    a: IntRows,
    uinv: IntRows,
    vinv: IntRows,
    modulus: Option<&'a BigInt>,
}

impl SnfState<'_> {
    fn red(&self, x: BigInt) -> BigInt {
        match self.modulus {
            Some(n) => x.mod_floor(n),
            None => x,
        }
    }

    /// Rows `i`, `j` of `a` become `[[s, t], [u, v]]` times themselves; the
    /// inverse acts on the columns of `uinv`. The determinant must be a unit.
    fn row_op(&mut self, i: usize, j: usize, t: [&BigInt; 4], det: &BigInt) {
        let [s, tt, u, v] = t;
        for k in 0..self.a[0].len() {
            let (x, y) = (self.a[i][k].clone(), self.a[j][k].clone());
            self.a[i][k] = self.red(s * &x + tt * &y);
            self.a[j][k] = self.red(u * &x + v * &y);
        }
        let dinv = self.det_inverse(det);
        for row in self.uinv.iter_mut() {
            let (x, y) = (row[i].clone(), row[j].clone());
            let ni = (v * &x - u * &y) * &dinv;
            let nj = (s * &y - tt * &x) * &dinv;
            row[i] = ni;
            row[j] = nj;
        }
        if let Some(n) = self.modulus {
            for row in self.uinv.iter_mut() {
                row[i] = row[i].mod_floor(n);
                row[j] = row[j].mod_floor(n);
            }
        }
    }

    fn col_op(&mut self, i: usize, j: usize, t: [&BigInt; 4], det: &BigInt) {
        let [s, tt, u, v] = t;
        for row in self.a.iter_mut() {
            let (x, y) = (row[i].clone(), row[j].clone());
            row[i] = s * &x + tt * &y;
            row[j] = u * &x + v * &y;
        }
        if let Some(n) = self.modulus {
            for row in self.a.iter_mut() {
                row[i] = row[i].mod_floor(n);
                row[j] = row[j].mod_floor(n);
            }
        }
        let dinv = self.det_inverse(det);
        let ncols = self.vinv[0].len();
        for k in 0..ncols {
            let (x, y) = (self.vinv[i][k].clone(), self.vinv[j][k].clone());
            self.vinv[i][k] = self.red((v * &x - u * &y) * &dinv);
            self.vinv[j][k] = self.red((s * &y - tt * &x) * &dinv);
        }
    }

    fn det_inverse(&self, det: &BigInt) -> BigInt {
        match self.modulus {
            Some(n) => super::ring::mod_inverse(det, n).expect("unit determinant"),
            None => det.clone(),
        }
    }

    fn scale_row(&mut self, i: usize, unit: &BigInt) {
        let inv = self.det_inverse(unit);
        for k in 0..self.a[0].len() {
            let x = std::mem::take(&mut self.a[i][k]);
            self.a[i][k] = self.red(x * unit);
        }
        for row in self.uinv.iter_mut() {
            let x = std::mem::take(&mut row[i]);
            row[i] = match self.modulus {
                Some(n) => (x * &inv).mod_floor(n),
                None => x * &inv,
            };
        }
    }
}

fn smith_int(a: IntRows, rows: usize, cols: usize, modulus: Option<&BigInt>) -> (IntRows, IntRows, IntRows) {
    let ident = |n: usize| -> IntRows {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };
    let mut st = SnfState {
        a,
        uinv: ident(rows),
        vinv: ident(cols),
        modulus,
    };
    if let Some(n) = modulus {
        for r in st.a.iter_mut() {
            reduce_row(r, n);
        }
    }
    let one = BigInt::one();
    let zero = BigInt::zero();
    let neg_one = -BigInt::one();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !st.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| st.a[i][j].abs() < st.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            st.row_op(t, pi, [&zero, &one, &one, &zero], &neg_one);
        }
        if pj != t {
            st.col_op(t, pj, [&zero, &one, &one, &zero], &neg_one);
        }
        loop {
            loop {
                let mut changed = false;
                for i in t + 1..rows {
                    if st.a[i][t].is_zero() {
                        continue;
                    }
                    let (a, b) = (st.a[t][t].clone(), st.a[i][t].clone());
                    if (&b % &a).is_zero() {
                        let q = -(&b / &a);
                        st.row_op(t, i, [&one, &zero, &q, &one], &one);
                    } else {
                        let e = a.extended_gcd(&b);
                        let (u, v) = (-(&b / &e.gcd), &a / &e.gcd);
                        st.row_op(t, i, [&e.x, &e.y, &u, &v], &one);
                    }
                    changed = true;
                }
                for j in t + 1..cols {
                    if st.a[t][j].is_zero() {
                        continue;
                    }
                    let (a, b) = (st.a[t][t].clone(), st.a[t][j].clone());
                    if (&b % &a).is_zero() {
                        let q = -(&b / &a);
                        st.col_op(t, j, [&one, &zero, &q, &one], &one);
                    } else {
                        let e = a.extended_gcd(&b);
                        let (u, v) = (-(&b / &e.gcd), &a / &e.gcd);
                        st.col_op(t, j, [&e.x, &e.y, &u, &v], &one);
                    }
                    changed = true;
                }
                if !changed {
                    break;
                }
            }
            let p = st.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&st.a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => st.row_op(t, i, [&one, &one, &zero, &one], &one),
                None => break,
            }
        }
        match modulus {
            None => {
                if st.a[t][t].is_negative() {
                    st.scale_row(t, &neg_one);
                }
            }
            Some(n) => {
                let u = normalizing_unit(&st.a[t][t], n);
                if !u.is_one() {
                    st.scale_row(t, &u);
                }
            }
        }
        t += 1;
    }
    (st.a, st.uinv, st.vinv)
}

/// Smith normal form with transforms. Rejects the rationals.
pub fn snf(m: &Matrix) -> Result<SmithForm> {
    let ring = m.ring().clone();
    let modulus = match &ring {
        Ring::Rationals => return Err(Error::UnsupportedRing("Q (use echelon reduction)".into())),
        Ring::Integers => None,
        Ring::IntegersMod(n) => Some(n.clone()),
    };
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return Ok(SmithForm {
            u: Matrix::identity(&ring, rows),
            s: m.clone(),
            v: Matrix::identity(&ring, cols),
        });
    }
    let a = to_int_rows(&m.row_vecs());
    let (s, u, v) = smith_int(a, rows, cols, modulus.as_ref());
    let conv = |x: IntRows, c: usize| Matrix::from_rows(&ring, c, from_int_rows(x)).expect("shape preserved");
    Ok(SmithForm {
        u: conv(u, rows),
        s: conv(s, cols),
        v: conv(v, cols),
    })
}

/// Invariant-factor diagonal of an integer or residue matrix, without
/// transforms exposed.
pub(crate) fn smith_diagonal(ring: &Ring, rows: &[Vec<Elem>], ncols: usize) -> Vec<BigInt> {
    if rows.is_empty() || ncols == 0 {
        return Vec::new();
    }
    let modulus = ring.modulus();
    let (s, _, _) = smith_int(to_int_rows(rows), rows.len(), ncols, modulus);
    (0..rows.len().min(ncols)).map(|i| s[i][i].clone()).collect()
}
