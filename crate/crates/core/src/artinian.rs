//! Truncated polynomial scalars `Q[e]/(e^s)`.
//!
//! An `ArtinianScalar` is a coefficient vector `c_0 + c_1 e + ... +
//! c_{s-1} e^{s-1}` with `e^s = 0`; the truncation order `s` travels with
//! the value and all arithmetic truncates products at it.  These are the
//! test rings that deformation and Maurer-Cartan solution sets are probed
//! over: a solution "over `Q[e]/(e^s)`" is one whose coordinates lie in
//! the nilpotent ideal `(e)`.

use num_traits::{One, Signed, Zero};

use crate::rat::{parse_rat, rat_string, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianScalar {
    /// `coeffs[k]` multiplies `e^k`; the length is the truncation order.
    coeffs: Vec<Rat>,
}

impl ArtinianScalar {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        ArtinianScalar { coeffs: vec![Rat::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = Rat::one();
        x
    }

    /// The nilpotent generator `e`; zero when the order is 1.
    pub fn eps(order: usize) -> Self {
        let mut x = Self::zero(order);
        if order > 1 {
            x.coeffs[1] = Rat::one();
        }
        x
    }

    pub fn from_rat(order: usize, c: Rat) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = c;
        x
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be at least 1");
        ArtinianScalar { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the value lies in the maximal ideal `(e)`.
    pub fn is_nilpotent(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    fn check_order(&self, other: &Self) -> usize {
        assert_eq!(
            self.order(),
            other.order(),
            "mixed truncation orders in Artinian arithmetic"
        );
        self.order()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        ArtinianScalar { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ArtinianScalar { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.check_order(other);
        let mut out = Self::zero(s);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= s {
                    break;
                }
                if !b.is_zero() {
                    let cur = out.coeffs[i + j].clone();
                    out.coeffs[i + j] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        ArtinianScalar { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Parses sums of terms `c`, `e`, `c*e`, `e^k`, `c*e^k` with `+`/`-`
    /// separators, e.g. `"1 - 1/2*e + e^2"`.
    pub fn parse(src: &str, order: usize) -> Result<Self> {
        assert!(order >= 1, "truncation order must be at least 1");
        let mut out = Self::zero(order);
        let s = src.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty scalar literal".into()));
        }
        // Split into signed terms at top level; no parentheses in this grammar.
        let mut terms: Vec<(i32, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1;
        let mut seen_any = false;
        for ch in s.chars() {
            match ch {
                '+' | '-' if seen_any && !cur.trim().is_empty() => {
                    terms.push((sign, cur.trim().to_string()));
                    cur = String::new();
                    sign = if ch == '-' { -1 } else { 1 };
                }
                '-' if cur.trim().is_empty() => {
                    sign = -sign;
                    seen_any = true;
                }
                '+' if cur.trim().is_empty() => {
                    seen_any = true;
                }
                _ => {
                    cur.push(ch);
                    seen_any = true;
                }
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::InvalidInput(format!("malformed scalar literal {src:?}")));
        }
        terms.push((sign, cur.trim().to_string()));

        for (sg, term) in terms {
            let (coeff_src, power) = match term.find('e') {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let before = term[..pos].trim().trim_end_matches('*').trim();
                    let after = term[pos + 1..].trim();
                    let power = if after.is_empty() {
                        1
                    } else {
                        let digits = after
                            .strip_prefix('^')
                            .ok_or_else(|| {
                                Error::InvalidInput(format!("malformed scalar term {term:?}"))
                            })?
                            .trim();
                        digits.parse::<usize>().map_err(|_| {
                            Error::InvalidInput(format!("malformed exponent in {term:?}"))
                        })?
                    };
                    (if before.is_empty() { "1" } else { before }, power)
                }
            };
            let mut c = parse_rat(coeff_src)?;
            if sg < 0 {
                c = -c;
            }
            if power < order {
                let cur = out.coeffs[power].clone();
                out.coeffs[power] = cur + c;
            }
        }
        Ok(out)
    }

    pub fn to_canonical_string(&self) -> String {
        let mut parts: Vec<(i32, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.clone().abs();
            let var = match k {
                0 => String::new(),
                1 => "e".to_string(),
                _ => format!("e^{k}"),
            };
            let body = if var.is_empty() {
                rat_string(&mag)
            } else if mag.is_one() {
                var
            } else {
                format!("{}*{}", rat_string(&mag), var)
            };
            parts.push((if c < &Rat::zero() { -1 } else { 1 }, body));
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (sg, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *sg < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if *sg < 0 { " - " } else { " + " });
            }
            s.push_str(body);
        }
        s
    }
}
