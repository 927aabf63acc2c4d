//! Exact affine expressions `c + k_g g + k_1 n1 + ... + k_6 n6` in the base
//! genus and the branch-type counts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ram::TypeCounts;

pub type Q = Ratio<i64>;

pub const VARIABLES: [&str; 7] = ["g", "n1", "n2", "n3", "n4", "n5", "n6"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub constant: Q,
    /// Coefficients of `g, n1, ..., n6`.
    pub coeffs: [Q; 7],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad affine form {text:?}: {reason}")]
pub struct FormParseError {
    text: String,
    reason: String,
}

impl AffineForm {
    pub fn zero() -> AffineForm {
        AffineForm {
            constant: Q::zero(),
            coeffs: [Q::zero(); 7],
        }
    }

    pub fn constant(c: i64) -> AffineForm {
        AffineForm {
            constant: Q::from_integer(c),
            ..AffineForm::zero()
        }
    }

    /// `c + kg*g + sum k[i]*n(i+1)` with integer coefficients.
    pub fn new(c: i64, kg: i64, k: [i64; 6]) -> AffineForm {
        let mut f = AffineForm::constant(c);
        f.coeffs[0] = Q::from_integer(kg);
        for i in 0..6 {
            f.coeffs[i + 1] = Q::from_integer(k[i]);
        }
        f
    }

    pub fn genus() -> AffineForm {
        AffineForm::new(0, 1, [0; 6])
    }

    /// The count `n_i`, `i` in `1..=6`.
    pub fn count(i: usize) -> AffineForm {
        let mut f = AffineForm::zero();
        f.coeffs[i] = Q::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        *self == AffineForm::zero()
    }

    pub fn eval(&self, g: u32, n: &TypeCounts) -> Q {
        let mut v = self.constant + self.coeffs[0] * Q::from_integer(g as i64);
        for i in 0..6 {
            v += self.coeffs[i + 1] * Q::from_integer(n.0[i] as i64);
        }
        v
    }

    /// The value when it is an integer.
    pub fn eval_int(&self, g: u32, n: &TypeCounts) -> Option<i64> {
        let v = self.eval(g, n);
        v.is_integer().then(|| v.to_integer())
    }

    /// The form with the counts fixed, leaving only `g` free.
    pub fn at_counts(&self, n: &TypeCounts) -> AffineForm {
        let mut f = AffineForm::zero();
        f.constant = self.eval(0, n);
        f.coeffs[0] = self.coeffs[0];
        f
    }

    pub fn scale(&self, k: Q) -> AffineForm {
        AffineForm {
            constant: self.constant * k,
            coeffs: self.coeffs.map(|c| c * k),
        }
    }
}

impl Default for AffineForm {
    fn default() -> AffineForm {
        AffineForm::zero()
    }
}

impl Add for AffineForm {
    type Output = AffineForm;
    fn add(self, o: AffineForm) -> AffineForm {
        let mut coeffs = self.coeffs;
        for (c, d) in coeffs.iter_mut().zip(o.coeffs) {
            *c += d;
        }
        AffineForm {
            constant: self.constant + o.constant,
            coeffs,
        }
    }
}

impl Neg for AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        self.scale(-Q::one())
    }
}

impl Sub for AffineForm {
    type Output = AffineForm;
    fn sub(self, o: AffineForm) -> AffineForm {
        self + -o
    }
}

impl Mul<i64> for AffineForm {
    type Output = AffineForm;
    fn mul(self, k: i64) -> AffineForm {
        self.scale(Q::from_integer(k))
    }
}

impl Mul<AffineForm> for i64 {
    type Output = AffineForm;
    fn mul(self, f: AffineForm) -> AffineForm {
        f * self
    }
}

impl std::iter::Sum for AffineForm {
    fn sum<I: Iterator<Item = AffineForm>>(it: I) -> AffineForm {
        it.fold(AffineForm::zero(), |a, b| a + b)
    }
}

fn term(k: Q, var: Option<&str>) -> String {
    let mag = k.abs();
    match var {
        None => mag.to_string(),
        Some(v) if mag.is_one() => v.to_string(),
        Some(v) => format!("{mag}*{v}"),
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = std::iter::once((self.constant, None))
            .chain(self.coeffs.iter().zip(VARIABLES).map(|(k, v)| (*k, Some(v))))
            .filter(|(k, _)| !k.is_zero());
        let mut first = true;
        for (k, v) in terms {
            let body = term(k, v);
            match (first, k.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for AffineForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts the rendered form as well as the loose notation used in
/// published tables, e.g. `10g + 4n1 + 5n2/2 - 9`.
impl FromStr for AffineForm {
    type Err = FormParseError;

    fn from_str(text: &str) -> Result<AffineForm, FormParseError> {
        let err = |reason: &str| FormParseError {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut out = AffineForm::zero();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut signed = false;
        for ch in compact.chars() {
            if ch == '+' || ch == '-' {
                if !cur.is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                } else if !chunks.is_empty() || signed {
                    return Err(err("dangling sign"));
                }
                neg = ch == '-';
                signed = true;
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err("dangling sign"));
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            // Both `5n2/2` and `5/2*n2`.
            let (body, den) = match chunk.split_once('/') {
                Some((b, d)) => {
                    let k = d.find(|c: char| !c.is_ascii_digit()).unwrap_or(d.len());
                    let den = d[..k].parse::<i64>().map_err(|_| err("bad denominator"))?;
                    let var = d[k..].strip_prefix('*').unwrap_or(&d[k..]);
                    if !var.is_empty() && b.contains(|c: char| c.is_ascii_alphabetic()) {
                        return Err(err("two variables in one term"));
                    }
                    (format!("{b}{var}"), den)
                }
                None => (chunk.clone(), 1),
            };
            if den == 0 {
                return Err(err("zero denominator"));
            }
            let split = body.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(body.len());
            let (num, var) = body.split_at(split);
            let num = num.trim_end_matches('*');
            let num: i64 = if num.is_empty() {
                1
            } else {
                num.parse().map_err(|_| err("bad coefficient"))?
            };
            let mut k = Q::new(num, den);
            if neg {
                k = -k;
            }
            if var.is_empty() {
                out.constant += k;
            } else {
                let var = if var == "g_Y" { "g" } else { var };
                let i = VARIABLES
                    .iter()
                    .position(|v| *v == var)
                    .ok_or_else(|| err("unknown variable"))?;
                out.coeffs[i] += k;
            }
        }
        Ok(out)
    }
}

/// Shorthand for transcribed forms; panics on malformed input.
pub fn form(text: &str) -> AffineForm {
    text.parse().unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        assert_eq!(form("10g + 4n1 + 5n2/2 - 9").to_string(), "-9 + 10*g + 4*n1 + 5/2*n2");
        assert_eq!(AffineForm::zero().to_string(), "0");
        assert_eq!(form("g - n3/2").to_string(), "g - 1/2*n3");
        assert_eq!(form("-g").to_string(), "-g");
        assert_eq!(form("2*n2 + n3").to_string(), "2*n2 + n3");
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let d5 = form("g") + form("g + n2/2 - 1") + 2 * form("4g + 2n1 + n2 - 4");
        assert_eq!(d5, form("10g + 4n1 + 5n2/2 - 9"));
        let n = TypeCounts([1, 2, 0, 0, 0, 0]);
        assert_eq!(d5.eval_int(2, &n), Some(20 + 4 + 5 - 9));
        assert_eq!(form("n2/2").eval_int(0, &TypeCounts([0, 1, 0, 0, 0, 0])), None);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "g +", "3/0", "++g", "n7"] {
            assert!(bad.parse::<AffineForm>().is_err(), "{bad}");
        }
    }

    fn any_form() -> impl Strategy<Value = AffineForm> {
        (prop::array::uniform8(-20i64..20), 1i64..4).prop_map(|(k, den)| {
            let mut f = AffineForm::zero();
            f.constant = Q::new(k[0], den);
            for i in 0..7 {
                f.coeffs[i] = Q::new(k[i + 1], den);
            }
            f
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(f in any_form()) {
            prop_assert_eq!(f.to_string().parse::<AffineForm>().unwrap(), f);
        }

        #[test]
        fn evaluation_is_linear(a in any_form(), b in any_form(), g in 0u32..5, n in prop::array::uniform6(0u32..4)) {
            let n = TypeCounts(n);
            prop_assert_eq!((a + b).eval(g, &n), a.eval(g, &n) + b.eval(g, &n));
            prop_assert_eq!((a - a).eval(g, &n), Q::zero());
        }
    }
}
