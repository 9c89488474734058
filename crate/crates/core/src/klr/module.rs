//! Graded modules given by generator matrices, and the defining relations
//! as explicit linear combinations of words.

use super::element::Token;
use super::ops::{axpy, unit, QVec, SparseOp};
use crate::alcoves::GeometryParams;
use crate::error::{Error, Result};
use crate::exactmath::{rat, Rational};
use crate::weights::{psi_degree, ResidueSeq};
use std::collections::{BTreeSet, HashMap};

/// A module for the KLR presentation with a homogeneous weight basis.
pub trait KlrModule {
    fn label(&self) -> String;
    fn n(&self) -> usize;
    fn geometry(&self) -> &GeometryParams;
    fn residues(&self) -> &[ResidueSeq];
    fn degrees(&self) -> &[i64];
    /// `psi_ops()[r-1]` acts as `psi_r`.
    fn psi_ops(&self) -> &[SparseOp];
    /// `y_ops()[r-1]` acts as `y_r`.
    fn y_ops(&self) -> &[SparseOp];

    fn dim(&self) -> usize {
        self.residues().len()
    }

    fn generator(&self, t: &Token) -> Option<&SparseOp> {
        match t {
            Token::Psi(r) => Some(&self.psi_ops()[r - 1]),
            Token::Y(r) => Some(&self.y_ops()[r - 1]),
            Token::Idem(_) => None,
        }
    }
}

/// Apply a word (rightmost token first) to a vector.
pub fn apply_word<M: KlrModule + ?Sized>(m: &M, w: &[Token], mut v: QVec) -> QVec {
    for t in w.iter().rev() {
        if v.is_empty() {
            break;
        }
        v = match t {
            Token::Idem(i) => v
                .into_iter()
                .filter(|(k, _)| m.residues()[*k] == *i)
                .collect(),
            g => m.generator(g).expect("generator token").apply(&v),
        };
    }
    v
}

/// A module stored as plain generator matrices.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub label: String,
    pub geometry: GeometryParams,
    pub n: usize,
    pub residues: Vec<ResidueSeq>,
    pub degrees: Vec<i64>,
    pub psi: Vec<SparseOp>,
    pub y: Vec<SparseOp>,
}

impl KlrModule for GradedModule {
    fn label(&self) -> String {
        self.label.clone()
    }
    fn n(&self) -> usize {
        self.n
    }
    fn geometry(&self) -> &GeometryParams {
        &self.geometry
    }
    fn residues(&self) -> &[ResidueSeq] {
        &self.residues
    }
    fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    fn psi_ops(&self) -> &[SparseOp] {
        &self.psi
    }
    fn y_ops(&self) -> &[SparseOp] {
        &self.y
    }
}

/// One relation instance: `Σ c·w` must act as zero on `e(i)`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(Rational, Vec<Token>)>,
}

fn rel(name: String, terms: Vec<(i64, Vec<Token>)>) -> Relation {
    Relation {
        name,
        terms: terms.into_iter().map(|(c, w)| (rat(c), w)).collect(),
    }
}

/// Every relation of the presentation that involves words applied to `e(i)`.
pub fn relations_at(i: &[u32], g: &GeometryParams) -> Vec<Relation> {
    use Token::{Psi, Y};
    let n = i.len();
    let e = g.e();
    let mut out = Vec::new();
    if n > 0 {
        out.push(rel("cyclotomic y_1 e(i) = 0".into(), vec![(1, vec![Y(1)])]));
    }
    for s in 1..=n {
        for s2 in s + 1..=n {
            out.push(rel(
                format!("y_{s} y_{s2} = y_{s2} y_{s}"),
                vec![(1, vec![Y(s), Y(s2)]), (-1, vec![Y(s2), Y(s)])],
            ));
        }
    }
    for r in 1..n {
        for s in (1..=n).filter(|s| *s != r && *s != r + 1) {
            out.push(rel(
                format!("psi_{r} y_{s} = y_{s} psi_{r}"),
                vec![(1, vec![Psi(r), Y(s)]), (-1, vec![Y(s), Psi(r)])],
            ));
        }
        for s in r + 2..n {
            out.push(rel(
                format!("psi_{r} psi_{s} = psi_{s} psi_{r}"),
                vec![(1, vec![Psi(r), Psi(s)]), (-1, vec![Psi(s), Psi(r)])],
            ));
        }
        let delta = i64::from(i[r - 1] == i[r]);
        out.push(rel(
            format!("psi_{r} y_{} slide", r + 1),
            vec![
                (1, vec![Psi(r), Y(r + 1)]),
                (-1, vec![Y(r), Psi(r)]),
                (delta, vec![]),
            ],
        ));
        out.push(rel(
            format!("y_{} psi_{r} slide", r + 1),
            vec![
                (1, vec![Y(r + 1), Psi(r)]),
                (-1, vec![Psi(r), Y(r)]),
                (delta, vec![]),
            ],
        ));
        let (a, b) = (i[r - 1], i[r]);
        let mut quad = vec![(1, vec![Psi(r), Psi(r)])];
        if a == b {
        } else if (a + 1) % e == b {
            quad.extend([(-1, vec![Y(r + 1)]), (1, vec![Y(r)])]);
        } else if (b + 1) % e == a {
            quad.extend([(-1, vec![Y(r)]), (1, vec![Y(r + 1)])]);
        } else {
            quad.push((-1, vec![]));
        }
        out.push(rel(format!("quadratic relation for psi_{r}"), quad));
        if r + 1 < n {
            let alpha = if i[r + 1] == i[r - 1] && (i[r - 1] + 1) % e == i[r] {
                -1
            } else if i[r + 1] == i[r - 1] && (i[r] + 1) % e == i[r - 1] {
                1
            } else {
                0
            };
            out.push(rel(
                format!("braid relation at {r}"),
                vec![
                    (1, vec![Psi(r), Psi(r + 1), Psi(r)]),
                    (-1, vec![Psi(r + 1), Psi(r), Psi(r + 1)]),
                    (-alpha, vec![]),
                ],
            ));
        }
    }
    out
}

/// Degree of a generator applied to `e(i)`.
pub fn token_degree(t: &Token, i: &[u32], e: u32) -> i64 {
    match t {
        Token::Psi(r) => psi_degree(i, *r, e),
        Token::Y(_) => 2,
        Token::Idem(_) => 0,
    }
}

/// Residue sequence after applying a generator to `e(i)`.
pub fn token_residue(t: &Token, i: &[u32]) -> Vec<u32> {
    let mut x = i.to_vec();
    if let Token::Psi(r) = t {
        x.swap(r - 1, *r);
    }
    x
}

fn fail<M: KlrModule + ?Sized>(m: &M, what: &str) -> Error {
    Error::RelationViolated(format!("{what} on {}", m.label()))
}

/// Evaluate `Σ c·w` on `v`, caching suffix products.
pub(crate) fn eval_relation<M: KlrModule + ?Sized>(
    m: &M,
    r: &Relation,
    v: &QVec,
    cache: &mut HashMap<Vec<Token>, QVec>,
) -> QVec {
    let mut out = QVec::new();
    for (c, w) in &r.terms {
        let mut acc = v.clone();
        for k in (0..w.len()).rev() {
            let key = w[k..].to_vec();
            if let Some(x) = cache.get(&key) {
                acc = x.clone();
                continue;
            }
            acc = m.generator(&w[k]).expect("generator token").apply(&acc);
            cache.insert(key, acc.clone());
        }
        axpy(&mut out, c, &acc);
    }
    out
}

/// Idempotent decomposition, cyclotomic and blob conditions, homogeneity of
/// every generator and every relation of the presentation, exactly.
pub fn check_presentation<M: KlrModule + ?Sized>(m: &M) -> Result<()> {
    let n = m.n();
    let g = *m.geometry();
    let e = g.e();
    let kappa = g.kappa();
    if m.psi_ops().len() + 1 != n.max(1) || m.y_ops().len() != n {
        return Err(fail(m, "generator count"));
    }
    let classes: BTreeSet<&ResidueSeq> = m.residues().iter().collect();
    for i in &classes {
        if i.len() != n {
            return Err(fail(m, "residue length"));
        }
        if n > 0 && !kappa.contains(&i.0[0]) {
            return Err(fail(m, "e(i) = 0 when i_1 is not a charge"));
        }
        if n > 1 && (i.0[0] + 1) % e == i.0[1] {
            return Err(fail(m, "e(i) = 0 when i_2 = i_1 + 1"));
        }
    }
    let rels: HashMap<&ResidueSeq, Vec<Relation>> = classes
        .iter()
        .map(|i| (*i, relations_at(&i.0, &g)))
        .collect();
    let gens: Vec<Token> = (1..n)
        .map(Token::Psi)
        .chain((1..=n).map(Token::Y))
        .collect();
    for t in 0..m.dim() {
        let i = &m.residues()[t];
        let v = unit(t);
        for gen in &gens {
            let w = m.generator(gen).expect("generator").apply(&v);
            let target = token_residue(gen, &i.0);
            if w.keys().any(|k| m.residues()[*k].0 != target) {
                return Err(fail(m, &format!("{gen} e(i) = e({gen}·i) {gen}")));
            }
            let d = m.degrees()[t] + token_degree(gen, &i.0, e);
            if w.keys().any(|k| m.degrees()[*k] != d) {
                return Err(fail(m, &format!("degree of {gen} e(i)")));
            }
        }
        let mut cache = HashMap::new();
        for r in &rels[i] {
            if !eval_relation(m, r, &v, &mut cache).is_empty() {
                return Err(fail(m, &r.name));
            }
        }
    }
    Ok(())
}

/// Operator of a formal combination of words on a module.
pub fn word_operator<M: KlrModule + ?Sized>(m: &M, terms: &[(Rational, Vec<Token>)]) -> SparseOp {
    let mut op = SparseOp::zero(m.dim());
    for (c, w) in terms {
        for (j, col) in op.cols.iter_mut().enumerate() {
            axpy(col, c, &apply_word(m, w, unit(j)));
        }
    }
    op
}
