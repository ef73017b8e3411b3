//! Eigenvectors of real symmetric tridiagonal matrices whose eigenvalue is
//! known exactly.
//!
//! Both the Wigner small-d columns and the coefficients `<j m; l 0|j m>` are
//! eigenvectors of such matrices (with eigenvalues `m` and `l(l+1)`), and a
//! plain three-term recursion for either of them is unstable once it runs into
//! the exponentially decaying tail. The twisted factorization used here runs
//! the recursion inwards from both ends and joins the two halves at the index
//! where the vector is largest, so every ratio is taken in its stable direction.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

/// Returns the unit eigenvector of the symmetric tridiagonal matrix with
/// diagonal `shifted_diag + lambda` and off-diagonal `off`, for the eigenvalue
/// `lambda` (the caller passes the diagonal with `lambda` already subtracted).
///
/// `off[i]` couples rows `i` and `i + 1`. The overall sign is chosen so that
/// component `reference` has the sign of `reference_positive`; signs are
/// tracked separately from magnitudes, so this works even when that component
/// underflows to zero.
pub fn known_eigenvector(shifted_diag: &[f64], off: &[f64], reference: usize, reference_positive: bool) -> Vec<f64> {
    let n = shifted_diag.len();
    assert!(n >= 1 && off.len() + 1 == n, "tridiagonal shape mismatch");
    assert!(reference < n);
    if n == 1 {
        return vec![if reference_positive { 1.0 } else { -1.0 }];
    }

    let scale = off
        .iter()
        .chain(shifted_diag.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * scale;
    let guard = |d: f64| if d == 0.0 { tiny } else { d };

    // Top-down and bottom-up LDL^T pivots of (T - lambda I).
    let mut top = vec![0.0; n];
    top[0] = shifted_diag[0];
    for i in 1..n {
        top[i] = shifted_diag[i] - off[i - 1] * off[i - 1] / guard(top[i - 1]);
    }
    let mut bottom = vec![0.0; n];
    bottom[n - 1] = shifted_diag[n - 1];
    for i in (0..n - 1).rev() {
        bottom[i] = shifted_diag[i] - off[i] * off[i] / guard(bottom[i + 1]);
    }

    let mut twist = 0;
    let mut best = f64::INFINITY;
    for k in 0..n {
        let gamma = top[k] + bottom[k] - shifted_diag[k];
        let g = gamma.abs();
        if g < best {
            best = g;
            twist = k;
        }
    }

    let mut z = vec![0.0; n];
    let mut negative = vec![false; n];
    z[twist] = 1.0;
    for i in (0..twist).rev() {
        let factor = -off[i] / guard(top[i]);
        z[i] = factor * z[i + 1];
        negative[i] = negative[i + 1] ^ (factor < 0.0);
    }
    for i in twist + 1..n {
        let factor = -off[i - 1] / guard(bottom[i]);
        z[i] = factor * z[i - 1];
        negative[i] = negative[i - 1] ^ (factor < 0.0);
    }

    let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    let flip = negative[reference] == reference_positive;
    let s = if flip { -1.0 / norm } else { 1.0 / norm };
    for v in z.iter_mut() {
        *v *= s;
    }
    z
}
