use super::{Field, Rational};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

/// The `n`-th cyclotomic polynomial, coefficients lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = divide_monic(&p, &cached_phi(d));
    }
    p
}

/// Exact quotient of integer polynomials by a monic divisor.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (i, d) in den.iter().enumerate() {
            r[k + i] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|c| *c == 0), "inexact cyclotomic division");
    q
}

fn cached_phi(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&n) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_polynomial(n));
    cache.lock().expect("cyclotomic cache").insert(n, p.clone());
    p
}

/// Element of `Q[x]/(Phi_c(x))`, stored as its canonical residue.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
    modulus: Arc<Vec<i64>>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        self.conductor == o.conductor && self.coeffs == o.coeffs
    }
}
impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 [z=zeta_{}]", self.conductor)
        } else {
            write!(f, "{} [z=zeta_{}]", terms.join(" + "), self.conductor)
        }
    }
}

impl Cyclotomic {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Residue of an arbitrary polynomial (lowest degree first).
    pub fn from_poly(conductor: u32, poly: Vec<Rational>) -> Self {
        let modulus = cached_phi(conductor);
        let mut c = Cyclotomic {
            conductor,
            coeffs: poly,
            modulus,
        };
        c.reduce();
        c
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        Self::from_poly(conductor, vec![r])
    }

    /// The canonical primitive root: the class of `x`.
    pub fn generator(conductor: u32) -> Self {
        Self::from_poly(conductor, vec![Rational::zero(), Rational::one()])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let d = self.degree();
        while self.coeffs.len() > d {
            let top = self.coeffs.len() - 1;
            let c = self.coeffs.pop().expect("nonempty");
            if !c.is_zero() {
                for (i, m) in self.modulus.iter().enumerate().take(d) {
                    let idx = top - d + i;
                    self.coeffs[idx] -= &c * Rational::from_integer((*m).into());
                }
            }
        }
        self.coeffs.resize(d, Rational::zero());
    }

    fn check(&self, o: &Self) {
        assert_eq!(
            self.conductor, o.conductor,
            "mixed cyclotomic conductors {} and {}",
            self.conductor, o.conductor
        );
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv_ref() } else { self.clone() };
        let mut acc = self.one_like();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        Self::from_poly(self.conductor, vec![])
    }
    fn one_like(&self) -> Self {
        Self::from_rational(self.conductor, Rational::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
            modulus: self.modulus.clone(),
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.degree();
        let mut prod = vec![Rational::zero(); (2 * d).max(1)];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::from_poly(self.conductor, prod)
    }
    fn neg_ref(&self) -> Self {
        self.scale(&-Rational::one())
    }
    /// Solves `self * a = 1` via the multiplication matrix.
    fn inv_ref(&self) -> Self {
        assert!(!self.is_zero_elem(), "inverse of zero");
        let d = self.degree();
        // column j is self * x^j
        let mut x_pow = self.one_like();
        let gen = Self::generator(self.conductor);
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push(self.mul_ref(&x_pow).coeffs);
            x_pow = x_pow.mul_ref(&gen);
        }
        // augmented rows
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut r: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
                r.push(if i == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                r
            })
            .collect();
        for c in 0..d {
            let p = (c..d)
                .find(|r| !rows[*r][c].is_zero())
                .expect("field element is invertible");
            rows.swap(c, p);
            let piv = rows[c][c].recip();
            for v in rows[c].iter_mut() {
                *v *= &piv;
            }
            let pivot = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate().take(d) {
                if r != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row[c..=d].iter_mut().zip(&pivot[c..=d]) {
                        *x -= y * &f;
                    }
                }
            }
        }
        Self::from_poly(
            self.conductor,
            rows.into_iter().map(|r| r[d].clone()).collect(),
        )
    }
    fn field_tag(&self) -> u64 {
        self.conductor as u64
    }
}

/// Balanced quantum integer `q^{-k+1} + q^{-k+3} + ... + q^{k-1}`.
pub fn quantum_integer(k: i64, q: &Cyclotomic) -> Cyclotomic {
    assert!(k >= 0, "quantum integer needs k >= 0");
    let mut acc = q.zero_like();
    let step = q.mul_ref(q);
    let mut term = q.pow(1 - k);
    for _ in 0..k {
        acc = acc.add_ref(&term);
        term = term.mul_ref(&step);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn quantum_integers_at_zeta8() {
        let q = Cyclotomic::generator(8);
        assert!(quantum_integer(0, &q).is_zero_elem());
        assert_eq!(quantum_integer(2, &q), q.add_ref(&q.inv_ref()));
        assert_eq!(quantum_integer(3, &q), Cyclotomic::from_rational(8, rat(1)));
    }

    #[test]
    fn inverse_round_trip() {
        let q = Cyclotomic::generator(10);
        let a = q.add_ref(&Cyclotomic::from_rational(10, rat(3)));
        assert_eq!(a.mul_ref(&a.inv_ref()), a.one_like());
    }
}
