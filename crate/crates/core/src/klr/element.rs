use super::module::{word_operator, GradedModule};
use super::ops::{unit, QVec, SparseOp};
use super::specht::{build_specht_with, SpechtModule};
use crate::alcoves::GeometryParams;
use crate::characters::weight_order;
use crate::error::{Error, Result};
use crate::exactmath::{rank, solve_unique, ExactMatrix, Rational};
use crate::weights::{Bipartition, ResidueSeq, WordRule};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A generator of the KLR presentation; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Token {
    Psi(usize),
    Y(usize),
    Idem(ResidueSeq),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Psi(r) => write!(f, "psi{r}"),
            Token::Y(r) => write!(f, "y{r}"),
            Token::Idem(i) => write!(f, "e{i}"),
        }
    }
}

/// Product of generators, read left to right.
pub type KLRWord = Vec<Token>;

/// `psi_{r_1} ... psi_{r_k}`.
pub fn psi_word(rs: &[usize]) -> KLRWord {
    rs.iter().map(|r| Token::Psi(*r)).collect()
}

/// Rational linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KLRElement {
    terms: BTreeMap<KLRWord, Rational>,
}

impl KLRElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: KLRWord) -> Self {
        let mut x = Self::zero();
        x.add_term(w, Rational::one());
        x
    }

    pub fn idem(i: &ResidueSeq) -> Self {
        Self::word(vec![Token::Idem(i.clone())])
    }

    pub fn add_term(&mut self, w: KLRWord, c: Rational) {
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KLRWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, &Rational::one())
    }

    pub fn add_scaled(&self, o: &Self, c: &Rational) -> Self {
        let mut x = self.clone();
        for (w, v) in &o.terms {
            x.add_term(w.clone(), v * c);
        }
        x
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::zero().add_scaled(self, c)
    }

    /// Concatenation product `self · o`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut x = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let w: KLRWord = a.iter().chain(b).cloned().collect();
                x.add_term(w, c * d);
            }
        }
        x
    }

    /// The anti-involution fixing every generator.
    pub fn bar(&self) -> Self {
        let mut x = Self::zero();
        for (w, c) in &self.terms {
            x.add_term(w.iter().rev().cloned().collect(), c.clone());
        }
        x
    }
}

impl fmt::Display for KLRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let body = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join("·")
                };
                format!("({c})·{body}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Whether some standard tableau of some shape of size `len(i)` has residues `i`.
pub fn valid_idempotent(i: &[u32], g: &GeometryParams) -> bool {
    let e = g.e() as i64;
    let [k1, k2] = g.kappa();
    let mut states: BTreeSet<(i64, i64)> = BTreeSet::from([(0, 0)]);
    for x in i {
        let mut next = BTreeSet::new();
        for (a, b) in states {
            if (k1 as i64 - a).rem_euclid(e) == *x as i64 {
                next.insert((a + 1, b));
            }
            if (k2 as i64 - b).rem_euclid(e) == *x as i64 {
                next.insert((a, b + 1));
            }
        }
        if next.is_empty() {
            return false;
        }
        states = next;
    }
    true
}

/// Block-diagonal operator on a direct sum of cell modules and any extra
/// witness modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorElement {
    pub blocks: Vec<(Bipartition, SparseOp)>,
    pub extra: Vec<(String, SparseOp)>,
}

impl OperatorElement {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|(_, b)| b.is_zero()) && self.extra.iter().all(|(_, b)| b.is_zero())
    }

    pub fn block(&self, l: &Bipartition) -> Option<&SparseOp> {
        self.blocks.iter().find(|(b, _)| b == l).map(|(_, op)| op)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .zip(&o.blocks)
            .map(|((l, a), (_, b))| (*l, a.compose(b)))
            .collect();
        let extra = self
            .extra
            .iter()
            .zip(&o.extra)
            .map(|((l, a), (_, b))| (l.clone(), a.compose(b)))
            .collect();
        OperatorElement { blocks, extra }
    }

    pub fn add_scaled(&self, o: &Self, c: &Rational) -> Self {
        let mut x = self.clone();
        for ((_, a), (_, b)) in x.blocks.iter_mut().zip(&o.blocks) {
            a.add_scaled(c, b);
        }
        for ((_, a), (_, b)) in x.extra.iter_mut().zip(&o.extra) {
            a.add_scaled(c, b);
        }
        x
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let blocks = self.blocks.iter().map(|(l, b)| (*l, b.scaled(c))).collect();
        let extra = self
            .extra
            .iter()
            .map(|(l, b)| (l.clone(), b.scaled(c)))
            .collect();
        OperatorElement { blocks, extra }
    }

    /// `Some(1)` if equal, `Some(-1)` if `self = -o`, otherwise `None`.
    pub fn sign_against(&self, o: &Self) -> Option<i32> {
        if self == o {
            Some(1)
        } else if *self == o.scaled(&-Rational::one()) {
            Some(-1)
        } else {
            None
        }
    }

    /// Weights whose block is nonzero.
    pub fn support(&self) -> Vec<Bipartition> {
        self.blocks
            .iter()
            .filter(|(_, b)| !b.is_zero())
            .map(|(l, _)| *l)
            .collect()
    }

    /// Labels of every module, cell or extra, on which the operator is nonzero.
    pub fn support_labels(&self) -> Vec<String> {
        let cells = self.blocks.iter().map(|(l, b)| (format!("Δ{l}"), b));
        let extra = self.extra.iter().map(|(l, b)| (l.clone(), b));
        cells
            .chain(extra)
            .filter(|(_, b)| !b.is_zero())
            .map(|(l, _)| l)
            .collect()
    }
}

/// Cell modules of `B_n` used as an evaluation environment.
#[derive(Clone, Debug)]
pub struct KlrEnv {
    pub n: usize,
    pub geometry: GeometryParams,
    pub modules: Vec<SpechtModule>,
    /// Further modules on which every element is also evaluated.
    pub witnesses: Vec<GradedModule>,
}

impl KlrEnv {
    /// Every cell module of `Λ(n)`, in the fixed weight order.
    pub fn build(n: usize, g: &GeometryParams) -> Result<Self> {
        Self::build_with(n, g, WordRule::SmallestDescent, &weight_order(n))
    }

    pub fn build_with(
        n: usize,
        g: &GeometryParams,
        rule: WordRule,
        shapes: &[Bipartition],
    ) -> Result<Self> {
        let built: Vec<Result<SpechtModule>> = std::thread::scope(|s| {
            let handles: Vec<_> = shapes
                .iter()
                .map(|l| s.spawn(move || build_specht_with(l, g, rule)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("module builder panicked"))
                .collect()
        });
        let modules = built.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(KlrEnv {
            n,
            geometry: *g,
            modules,
            witnesses: Vec::new(),
        })
    }

    pub fn module(&self, l: &Bipartition) -> Option<&SpechtModule> {
        self.modules.iter().find(|m| m.shape == *l)
    }

    /// Action of an element on every module.
    pub fn act(&self, x: &KLRElement) -> Result<OperatorElement> {
        for (w, _) in x.terms() {
            for t in w {
                let ok = match t {
                    Token::Psi(r) => (1..self.n).contains(r),
                    Token::Y(r) => (1..=self.n).contains(r),
                    Token::Idem(i) => i.len() == self.n,
                };
                if !ok {
                    return Err(Error::InvalidParams(format!(
                        "token {t} out of range for n = {}",
                        self.n
                    )));
                }
            }
        }
        let terms: Vec<(Rational, KLRWord)> =
            x.terms().map(|(w, c)| (c.clone(), w.clone())).collect();
        let blocks = self
            .modules
            .iter()
            .map(|m| (m.shape, word_operator(m, &terms)))
            .collect();
        let extra = self
            .witnesses
            .iter()
            .map(|m| (m.label.clone(), word_operator(m, &terms)))
            .collect();
        Ok(OperatorElement { blocks, extra })
    }
}

/// `⟨ψ_s, ψ_t⟩`: coefficient of the dominant vector in `bar(ψ_{d_s}) v^t`.
pub fn gram_matrix(m: &SpechtModule) -> ExactMatrix<Rational> {
    let dim = m.dim();
    let mut g = ExactMatrix::new(dim, dim);
    for s in 0..dim {
        for t in 0..dim {
            if m.residues[s] != m.residues[t] {
                continue;
            }
            let mut v = unit(t);
            for r in &m.words[s] {
                v = m.apply_psi(*r, &v);
            }
            if let Some(c) = v.get(&m.dominant) {
                g.set(s, t, c.clone());
            }
        }
    }
    g
}

/// Rank of the Gram block on basis vectors of residue `i`.
pub fn gram_block_rank(
    m: &SpechtModule,
    gram: &ExactMatrix<Rational>,
    i: &ResidueSeq,
) -> Result<usize> {
    let idx: Vec<usize> = (0..m.dim()).filter(|k| m.residues[*k] == *i).collect();
    let mut b = ExactMatrix::new(idx.len(), idx.len());
    for (a, s) in idx.iter().enumerate() {
        for (c, t) in idx.iter().enumerate() {
            if let Some(v) = gram.get(*s, *t) {
                b.set(a, c, v.clone());
            }
        }
    }
    rank(&b)
}

/// Ungraded decomposition numbers from the Gram forms: with
/// `A[μ][λ'] = dim e(i^{λ'})Δ(μ)` and `B[λ][λ'] = dim e(i^{λ'})L(λ)`,
/// solve `A = D B`. Rows and columns follow the fixed weight order.
pub fn decomposition_from_gram(env: &KlrEnv) -> Result<Vec<Vec<i64>>> {
    let order = weight_order(env.n);
    let idems: Vec<ResidueSeq> = order
        .iter()
        .map(|l| env.module(l).map(|m| m.residues[m.dominant].clone()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Precondition("environment lacks some cell module".into()))?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for l in &order {
        let m = env.module(l).expect("checked above");
        let gram = gram_matrix(m);
        let mut arow = QVec::new();
        let mut brow = QVec::new();
        for (k, i) in idems.iter().enumerate() {
            let count = m.residues.iter().filter(|r| *r == i).count();
            if count > 0 {
                arow.insert(k, Rational::from_integer(count.into()));
                let r = gram_block_rank(m, &gram, i)?;
                if r > 0 {
                    brow.insert(k, Rational::from_integer(r.into()));
                }
            }
        }
        a.push(arow);
        b.push(brow);
    }
    solve_rows(&a, &b)
}

/// Solve `A = D B` row by row for integer `D`.
pub fn solve_rows(a: &[QVec], b: &[QVec]) -> Result<Vec<Vec<i64>>> {
    let mut d = Vec::new();
    for row in a {
        let x = solve_unique(b, row)?;
        let mut out = vec![0i64; b.len()];
        for (k, v) in x {
            if !v.is_integer() {
                return Err(Error::LinearSystem(format!(
                    "non-integral decomposition number {v}"
                )));
            }
            out[k] = i64::try_from(v.to_integer())
                .map_err(|_| Error::LinearSystem("overflow".into()))?;
            if out[k] < 0 {
                return Err(Error::LinearSystem(format!(
                    "negative decomposition number {}",
                    out[k]
                )));
            }
        }
        d.push(out);
    }
    Ok(d)
}
