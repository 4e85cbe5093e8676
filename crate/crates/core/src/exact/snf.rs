use num_integer::Integer;

use super::matrix::IntMatrix;

/// `u * input * v == s` with `u`, `v` unimodular and `s` diagonal,
/// each nonzero diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `s`, length `min(rows, cols)`; zeros trail.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|&&d| d != 0).count()
    }
}

/// Elimination by Bezout steps. The transforms are not size-reduced, so dense
/// inputs with large minors can exceed `i64`; that panics rather than wraps.
// TODO: lattice-reduce `u` and `v` if dense inputs ever reach this path.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pr, pc)) = min_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            // Each Bezout step replaces the pivot by a gcd, so |s[t][t]| only shrinks.
            for r in t + 1..m {
                if s[(r, t)] != 0 {
                    let (x, y, p, q) = bezout(s[(t, t)], s[(r, t)]);
                    combine_rows(&mut s, t, r, x, y, p, q);
                    combine_rows(&mut u, t, r, x, y, p, q);
                }
            }
            for c in t + 1..n {
                if s[(t, c)] != 0 {
                    let (x, y, p, q) = bezout(s[(t, t)], s[(t, c)]);
                    combine_cols(&mut s, t, c, x, y, p, q);
                    combine_cols(&mut v, t, c, x, y, p, q);
                }
            }
            if (t + 1..m).any(|r| s[(r, t)] != 0) {
                continue;
            }
            let pivot = s[(t, t)];
            let offender = (t + 1..m).find(|&r| (t + 1..n).any(|c| s[(r, c)] % pivot != 0));
            match offender {
                Some(r) => {
                    add_row_multiple(&mut s, t, r, 1);
                    add_row_multiple(&mut u, t, r, 1);
                }
                None => break,
            }
        }
        if s[(t, t)] < 0 {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    SmithForm { u, s, v }
}

/// `(x, y, p, q)` with `x a + y b = g = gcd(a, b)`, `p = a / g`, `q = b / g`.
///
/// The matrix `[[x, y], [-q, p]]` is unimodular and maps `(a, b)` to `(g, 0)`.
/// When `b` is a multiple of `a` the plain elimination `x = 1, y = 0` is used.
fn bezout(a: i64, b: i64) -> (i64, i64, i64, i64) {
    if b % a == 0 {
        return (1, 0, 1, b / a);
    }
    let e = a.extended_gcd(&b);
    (e.x, e.y, a / e.gcd, b / e.gcd)
}

const OVERFLOW: &str = "Smith normal form entries exceed i64";

/// `x a + y b`, panicking instead of wrapping.
fn lin(x: i64, a: i64, y: i64, b: i64) -> i64 {
    x.checked_mul(a)
        .and_then(|xa| y.checked_mul(b).and_then(|yb| xa.checked_add(yb)))
        .expect(OVERFLOW)
}

/// `(row_i, row_j) <- (x row_i + y row_j, -q row_i + p row_j)`.
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, x: i64, y: i64, p: i64, q: i64) {
    for c in 0..m.cols() {
        let (a, b) = (m[(i, c)], m[(j, c)]);
        m[(i, c)] = lin(x, a, y, b);
        m[(j, c)] = lin(-q, a, p, b);
    }
}

fn combine_cols(m: &mut IntMatrix, i: usize, j: usize, x: i64, y: i64, p: i64, q: i64) {
    for r in 0..m.rows() {
        let (a, b) = (m[(r, i)], m[(r, j)]);
        m[(r, i)] = lin(x, a, y, b);
        m[(r, j)] = lin(-q, a, p, b);
    }
}

fn min_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for r in t..s.rows() {
        for c in t..s.cols() {
            let x = s[(r, c)].abs();
            if x != 0 && best.map_or(true, |(_, _, b)| x < b) {
                best = Some((r, c, x));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// row[dst] += k * row[src]
fn add_row_multiple(m: &mut IntMatrix, dst: usize, src: usize, k: i64) {
    for c in 0..m.cols() {
        m[(dst, c)] = lin(1, m[(dst, c)], k, m[(src, c)]);
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        m[(r, c)] = -m[(r, c)];
    }
}

/// Inverse of a unimodular integer matrix. Panics if `a` is not unimodular.
pub fn unimodular_inverse(a: &IntMatrix) -> IntMatrix {
    a.to_rational()
        .inverse()
        .and_then(|inv| inv.to_integer())
        .expect("matrix is not unimodular")
}

/// Basis (as columns) of the saturated lattice `ker(a) ∩ Z^n`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_columns(&cols)
}

/// Basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    // a = u^-1 s v^-1, so the columns of u^-1 s span the same lattice.
    let uinv = unimodular_inverse(&snf.u);
    let us = uinv.mul_mat(&snf.s);
    us.select_columns(&(0..r).collect::<Vec<_>>())
}
