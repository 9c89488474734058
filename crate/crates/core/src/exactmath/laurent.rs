use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer Laurent polynomial in `v`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    coeffs: BTreeMap<i32, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c v^k`.
    pub fn monomial(k: i32, c: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(k, BigInt::from(c));
        l
    }

    /// `v^k`.
    pub fn v_pow(k: i32) -> Self {
        Self::monomial(k, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, k: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// If the polynomial is `v^k` return `k`.
    pub fn as_v_power(&self) -> Option<i32> {
        match self.coeffs.iter().next() {
            Some((k, c)) if self.coeffs.len() == 1 && c.is_one() => Some(*k),
            _ => None,
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// JSON object mapping exponent strings to coefficients.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, c) in &self.coeffs {
            let v = match i64::try_from(c) {
                Ok(x) => Value::from(x),
                Err(_) => Value::String(c.to_string()),
            };
            m.insert(k.to_string(), v);
        }
        Value::Object(m)
    }
}

/// Negate all exponents.
pub fn bar(p: &Laurent) -> Laurent {
    Laurent {
        coeffs: p.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (k, c) in &o.coeffs {
            r.add_term(*k, c.clone());
        }
        r
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl fmt::Display for Laurent {
    /// Renders e.g. `v^2 + 1`, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = match *k {
                0 => String::new(),
                1 => "v".to_string(),
                k => format!("v^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}
