use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::geodesic::AlgState;

pub type Matrix4 = [[Rational64; 4]; 4];

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Transition matrix of the input states, rows and columns ordered
/// `w0, w>0, b, j`.
pub fn reference_matrix() -> Matrix4 {
    [
        [r(1, 4), r(1, 4), r(1, 2), r(0, 1)],
        [r(1, 16), r(5, 16), r(5, 8), r(0, 1)],
        [r(3, 32), r(7, 32), r(7, 16), r(1, 4)],
        [r(1, 8), r(1, 8), r(1, 4), r(1, 2)],
    ]
}

/// Law of the first input state.
pub fn reference_initial() -> [Rational64; 4] {
    [r(1, 4), r(1, 4), r(1, 2), r(0, 1)]
}

/// The stationary law `π` with `πM = π`, solved exactly.
pub fn stationary() -> [Rational64; 4] {
    let m = reference_matrix();
    // (M^T - I) π = 0 with the last equation replaced by Σπ = 1
    let mut a = [[Rational64::zero(); 5]; 4];
    for i in 0..3 {
        for j in 0..4 {
            a[i][j] = m[j][i] - if i == j { Rational64::one() } else { Rational64::zero() };
        }
    }
    a[3] = [Rational64::one(); 5];
    for col in 0..4 {
        let pivot = (col..4).find(|&row| !a[row][col].is_zero()).expect("M is irreducible");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for row in 0..4 {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col];
                let pivot_row = a[col];
                for (x, v) in a[row].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
    }
    [a[0][4], a[1][4], a[2][4], a[3][4]]
}

/// Stationary probability of a non-jump state, the almost sure limit of
/// distance over height.
pub fn limit_constant() -> Rational64 {
    Rational64::one() - stationary()[AlgState::J.index()]
}
