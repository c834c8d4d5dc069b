//! Discrete groups whose group rings serve as cocommutative fusion rings.

use std::fmt;

use crate::error::{Error, Result};

use super::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// ℤ
    Free,
    /// ℤ/m
    Cyclic(i64),
}

/// Group law on labels. Abelian groups are products of at most three
/// factors; the Heisenberg group uses normal-form words `x^a y^b z^c` with
/// `z = x y x⁻¹ y⁻¹` central, optionally reduced mod `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupLaw {
    Abelian(Vec<Factor>),
    Heisenberg { modulus: Option<i64> },
}

fn reduce(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

impl GroupLaw {
    pub fn parse(tag: &str) -> Result<GroupLaw> {
        let bad = || Error::UnknownRing(format!("group:{tag}"));
        if let Some(rest) = tag.strip_prefix("heisenberg") {
            if rest.is_empty() {
                return Ok(GroupLaw::Heisenberg { modulus: None });
            }
            let m: i64 = rest
                .strip_prefix('/')
                .and_then(|s| s.parse().ok())
                .ok_or_else(bad)?;
            if m < 2 {
                return Err(bad());
            }
            return Ok(GroupLaw::Heisenberg { modulus: Some(m) });
        }
        let mut factors = Vec::new();
        // Split on 'x' outside parentheses.
        let mut depth = 0usize;
        let mut token = String::new();
        let mut tokens = Vec::new();
        for ch in tag.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    token.push(ch);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(bad)?;
                    token.push(ch);
                }
                'x' | '×' if depth == 0 => tokens.push(std::mem::take(&mut token)),
                _ => token.push(ch),
            }
        }
        tokens.push(token);
        for tok in tokens {
            let (base, power) = match tok.rsplit_once('^') {
                Some((b, p)) => (b.to_string(), p.parse::<usize>().map_err(|_| bad())?),
                None => (tok.clone(), 1),
            };
            let base = base
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .map(str::to_string)
                .unwrap_or(base);
            let factor = if base == "Z" {
                Factor::Free
            } else if let Some(m) = base.strip_prefix("Z/") {
                let m: i64 = m.parse().map_err(|_| bad())?;
                if m < 1 {
                    return Err(bad());
                }
                Factor::Cyclic(m)
            } else {
                return Err(bad());
            };
            if power == 0 {
                return Err(bad());
            }
            factors.extend(std::iter::repeat_n(factor, power));
        }
        if factors.is_empty() || factors.len() > 3 {
            return Err(bad());
        }
        Ok(GroupLaw::Abelian(factors))
    }

    pub fn arity(&self) -> usize {
        match self {
            GroupLaw::Abelian(f) => f.len(),
            GroupLaw::Heisenberg { .. } => 3,
        }
    }

    pub fn identity(&self) -> Label {
        Label::ZERO
    }

    pub fn contains(&self, g: Label) -> bool {
        let c = g.0;
        match self {
            GroupLaw::Abelian(factors) => {
                (factors.len()..3).all(|k| c[k] == 0)
                    && factors.iter().zip(c).all(|(f, x)| match f {
                        Factor::Free => true,
                        Factor::Cyclic(m) => (0..*m).contains(&x),
                    })
            }
            GroupLaw::Heisenberg { modulus: None } => true,
            GroupLaw::Heisenberg { modulus: Some(m) } => c.iter().all(|x| (0..*m).contains(x)),
        }
    }

    pub fn mul(&self, g: Label, h: Label) -> Label {
        let (a, b) = (g.0, h.0);
        match self {
            GroupLaw::Abelian(factors) => {
                let mut out = [0i64; 3];
                for (k, f) in factors.iter().enumerate() {
                    out[k] = match f {
                        Factor::Free => a[k] + b[k],
                        Factor::Cyclic(m) => reduce(a[k] + b[k], *m),
                    };
                }
                Label(out)
            }
            GroupLaw::Heisenberg { modulus } => {
                // y^b x^a' = x^a' y^b z^(-a' b)
                let out = [a[0] + b[0], a[1] + b[1], a[2] + b[2] - a[1] * b[0]];
                match modulus {
                    None => Label(out),
                    Some(m) => Label(out.map(|x| reduce(x, *m))),
                }
            }
        }
    }

    pub fn inv(&self, g: Label) -> Label {
        let a = g.0;
        match self {
            GroupLaw::Abelian(factors) => {
                let mut out = [0i64; 3];
                for (k, f) in factors.iter().enumerate() {
                    out[k] = match f {
                        Factor::Free => -a[k],
                        Factor::Cyclic(m) => reduce(-a[k], *m),
                    };
                }
                Label(out)
            }
            GroupLaw::Heisenberg { modulus } => {
                let out = [-a[0], -a[1], -a[2] - a[0] * a[1]];
                match modulus {
                    None => Label(out),
                    Some(m) => Label(out.map(|x| reduce(x, *m))),
                }
            }
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupLaw::Abelian(factors) => factors.iter().try_fold(1u64, |acc, f| match f {
                Factor::Free => None,
                Factor::Cyclic(m) => Some(acc * *m as u64),
            }),
            GroupLaw::Heisenberg { modulus } => modulus.map(|m| (m as u64).pow(3)),
        }
    }

    pub fn elements(&self) -> Option<Vec<Label>> {
        self.order()?;
        let ranges: Vec<i64> = match self {
            GroupLaw::Abelian(factors) => factors
                .iter()
                .map(|f| match f {
                    Factor::Cyclic(m) => *m,
                    Factor::Free => unreachable!(),
                })
                .collect(),
            GroupLaw::Heisenberg { modulus } => vec![modulus.unwrap(); 3],
        };
        let mut out = vec![Label::ZERO];
        for (k, m) in ranges.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|l| {
                    (0..*m).map(move |x| {
                        let mut c = l.0;
                        c[k] = x;
                        Label(c)
                    })
                })
                .collect();
        }
        out.sort();
        Some(out)
    }

    /// Standard generators (without inverses).
    pub fn generators(&self) -> Vec<Label> {
        match self {
            GroupLaw::Abelian(factors) => (0..factors.len())
                .filter(|&k| factors[k] != Factor::Cyclic(1))
                .map(|k| {
                    let mut c = [0i64; 3];
                    c[k] = 1;
                    Label(c)
                })
                .collect(),
            GroupLaw::Heisenberg { .. } => vec![Label([1, 0, 0]), Label([0, 1, 0])],
        }
    }

    /// Reduces every coordinate of `g` into the representative range of this
    /// group. Used for quotient maps.
    pub fn canonicalize(&self, g: Label) -> Label {
        match self {
            GroupLaw::Abelian(factors) => {
                let mut c = [0i64; 3];
                for (k, f) in factors.iter().enumerate() {
                    c[k] = match f {
                        Factor::Free => g.0[k],
                        Factor::Cyclic(m) => reduce(g.0[k], *m),
                    };
                }
                Label(c)
            }
            GroupLaw::Heisenberg { modulus: None } => g,
            GroupLaw::Heisenberg { modulus: Some(m) } => Label(g.0.map(|x| reduce(x, *m))),
        }
    }
}

impl fmt::Display for GroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLaw::Heisenberg { modulus: None } => f.write_str("heisenberg"),
            GroupLaw::Heisenberg { modulus: Some(m) } => write!(f, "heisenberg/{m}"),
            GroupLaw::Abelian(factors) => {
                let mut parts = Vec::new();
                let mut i = 0;
                while i < factors.len() {
                    let mut j = i;
                    while j < factors.len() && factors[j] == factors[i] {
                        j += 1;
                    }
                    let run = j - i;
                    parts.push(match (factors[i], run) {
                        (Factor::Free, 1) => "Z".to_string(),
                        (Factor::Free, r) => format!("Z^{r}"),
                        (Factor::Cyclic(m), 1) => format!("Z/{m}"),
                        (Factor::Cyclic(m), r) => format!("(Z/{m})^{r}"),
                    });
                    i = j;
                }
                f.write_str(&parts.join("x"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_roundtrip() {
        for tag in ["Z", "Z^2", "Z/6", "ZxZ/2", "(Z/5)^2", "Z/9xZ/2", "heisenberg", "heisenberg/7"] {
            assert_eq!(GroupLaw::parse(tag).unwrap().to_string(), tag);
        }
        assert!(GroupLaw::parse("Q").is_err());
        assert!(GroupLaw::parse("Z^4").is_err());
        assert!(GroupLaw::parse("heisenberg/1").is_err());
    }

    // Upper unitriangular matrices [[1,p,r],[0,1,q],[0,0,1]] as an independent model.
    fn unitri(l: Label) -> [i64; 3] {
        // x^a y^b z^c with x=(1,0,0), y=(0,1,0), z=[x,y]=(0,0,1) in (p,q,r) coordinates
        // x^a = (a,0,0), y^b = (0,b,0), x^a y^b = (a,b,ab), z^c = (0,0,c)
        let [a, b, c] = l.0;
        [a, b, a * b + c]
    }

    fn unitri_mul(x: [i64; 3], y: [i64; 3]) -> [i64; 3] {
        [x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]]
    }

    #[test]
    fn heisenberg_law_matches_matrix_model() {
        let h = GroupLaw::Heisenberg { modulus: None };
        let pts: Vec<Label> = (-2..=2)
            .flat_map(|a| (-2..=2).flat_map(move |b| (-1..=1).map(move |c| Label([a, b, c]))))
            .collect();
        for &g in &pts {
            for &k in &pts {
                assert_eq!(unitri(h.mul(g, k)), unitri_mul(unitri(g), unitri(k)));
            }
            assert_eq!(h.mul(g, h.inv(g)), Label::ZERO);
            assert_eq!(h.mul(h.inv(g), g), Label::ZERO);
        }
        // z = x y x^-1 y^-1
        let (x, y) = (Label([1, 0, 0]), Label([0, 1, 0]));
        let z = h.mul(h.mul(x, y), h.mul(h.inv(x), h.inv(y)));
        assert_eq!(z, Label([0, 0, 1]));
    }

    #[test]
    fn finite_enumeration() {
        assert_eq!(GroupLaw::parse("Z/6").unwrap().elements().unwrap().len(), 6);
        assert_eq!(GroupLaw::parse("heisenberg/3").unwrap().elements().unwrap().len(), 27);
        assert!(GroupLaw::parse("ZxZ/2").unwrap().elements().is_none());
    }
}
