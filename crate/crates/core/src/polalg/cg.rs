//! Real orthonormal Clebsch–Gordan coefficients (Condon–Shortley phase).
//!
//! Spins are passed doubled (`a = 2 j`). Basis index `i ∈ 1..=a+1` of the
//! spin-`a/2` irrep has doubled weight `m = a − 2(i − 1)`.

/// Doubled weight of basis index `i` (1-based) in irrep `a`.
pub fn weight(a: i64, i: u32) -> i64 {
    a - 2 * (i as i64 - 1)
}

/// Basis index (1-based) of doubled weight `m` in irrep `a`.
pub fn index(a: i64, m: i64) -> u32 {
    ((a - m) / 2 + 1) as u32
}

/// All coefficients `⟨a/2, m₁; b/2, m₂ | c/2, m₁+m₂⟩` for one triple.
#[derive(Clone, Debug)]
pub struct CgTable {
    a: i64,
    b: i64,
    c: i64,
    /// Indexed by `(i - 1) * (b + 1) + (k - 1)`.
    values: Vec<f64>,
}

fn raise(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

fn lower(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m - 1.0)).max(0.0).sqrt()
}

impl CgTable {
    /// Highest-weight vector from the `J₊|J J⟩ = 0` recursion, then the
    /// lowering recursion `J₋|J M⟩ = √(J(J+1) − M(M−1)) |J M−1⟩`.
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        assert!(a >= 0 && b >= 0 && c >= 0);
        let mut values = vec![0.0; ((a + 1) * (b + 1)) as usize];
        let valid = (a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0;
        if !valid {
            return CgTable { a, b, c, values };
        }
        let (j1, j2, jj) = (a as f64 / 2.0, b as f64 / 2.0, c as f64 / 2.0);
        // current[M] as a map over doubled m1 in [-a, a]
        let width = (a + 1) as usize;
        let slot = |m1: i64| ((a - m1) / 2) as usize;
        let mut cur = vec![0.0f64; width];
        let mm = c; // doubled M = J
        let lo = (-a).max(mm - b);
        let hi = a.min(mm + b);
        cur[slot(hi)] = 1.0;
        let mut m1 = hi - 2;
        while m1 >= lo {
            let m1f = m1 as f64 / 2.0;
            let prev = cur[slot(m1 + 2)];
            cur[slot(m1)] = -prev * raise(j2, jj - m1f - 1.0) / raise(j1, m1f);
            m1 -= 2;
        }
        let norm: f64 = cur.iter().map(|x| x * x).sum::<f64>().sqrt();
        let sign = if cur[slot(a)] < 0.0 { -1.0 } else { 1.0 };
        for x in cur.iter_mut() {
            *x *= sign / norm;
        }
        let mut m_total = mm;
        loop {
            for m1 in (-a..=a).step_by(2) {
                let m2 = m_total - m1;
                if m2.abs() <= b {
                    let (i, k) = (index(a, m1), index(b, m2));
                    values[((i - 1) as i64 * (b + 1) + (k - 1) as i64) as usize] = cur[slot(m1)];
                }
            }
            if m_total == -c {
                break;
            }
            let mf = m_total as f64 / 2.0;
            let denom = lower(jj, mf);
            let mut next = vec![0.0f64; width];
            for m1 in (-a..=a).step_by(2) {
                let m2 = m_total - 2 - m1;
                if m2.abs() > b {
                    continue;
                }
                let m1f = m1 as f64 / 2.0;
                let mut acc = 0.0;
                if m1 + 2 <= a {
                    acc += cur[slot(m1 + 2)] * lower(j1, m1f + 1.0);
                }
                if (m2 + 2).abs() <= b {
                    acc += cur[slot(m1)] * lower(j2, m2 as f64 / 2.0 + 1.0);
                }
                next[slot(m1)] = acc / denom;
            }
            cur = next;
            m_total -= 2;
        }
        CgTable { a, b, c, values }
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// `C(a,i; b,k | c, m_i + m_k)` with 1-based indices.
    pub fn get(&self, i: u32, k: u32) -> f64 {
        self.values[((i - 1) as i64 * (self.b + 1) + (k - 1) as i64) as usize]
    }
}
