//! The symmetric group S₃ as a finite quantum group: its representation ring
//! and explicit unitary irreps.

use num::complex::Complex64;

use super::Label;

pub const TRIV: Label = Label([0, 0, 0]);
pub const SGN: Label = Label([1, 0, 0]);
pub const STD: Label = Label([2, 0, 0]);

pub const LABELS: [Label; 3] = [TRIV, SGN, STD];
pub const NAMES: [&str; 3] = ["triv", "sgn", "std"];

pub fn dim(u: Label) -> u64 {
    if u == STD {
        2
    } else {
        1
    }
}

pub fn name(u: Label) -> &'static str {
    NAMES[u.0[0] as usize]
}

pub fn from_name(s: &str) -> Option<Label> {
    NAMES.iter().position(|n| *n == s).map(|k| LABELS[k])
}

pub fn fuse(u: Label, v: Label) -> Vec<(Label, u64)> {
    match (u, v) {
        (TRIV, w) | (w, TRIV) => vec![(w, 1)],
        (SGN, SGN) => vec![(TRIV, 1)],
        (SGN, STD) | (STD, SGN) => vec![(STD, 1)],
        _ => vec![(TRIV, 1), (SGN, 1), (STD, 1)],
    }
}

/// The six group elements `r^k s^e` as `(k, e)`.
pub fn elements() -> [(u8, u8); 6] {
    [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
}

/// Unitary matrix of irrep `u` at the group element `(k, e)`, row-major,
/// of size `dim(u)²`.
pub fn irrep_matrix(u: Label, g: (u8, u8)) -> Vec<Complex64> {
    let (k, e) = g;
    match u {
        TRIV => vec![Complex64::new(1.0, 0.0)],
        SGN => vec![Complex64::new(if e == 1 { -1.0 } else { 1.0 }, 0.0)],
        _ => {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let (c, s) = (theta.cos(), theta.sin());
            // R^k S^e with S = diag(1, -1)
            let sign = if e == 1 { -1.0 } else { 1.0 };
            [c, -s * sign, s, c * sign]
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect()
        }
    }
}
