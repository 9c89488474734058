//! Graded extensions of one module by another, found by solving the defining
//! relations for the off-diagonal block of the generators.

use super::element::Token;
use super::module::{
    apply_word, check_presentation, relations_at, token_degree, token_residue, GradedModule,
    KlrModule,
};
use super::ops::{axpy, unit, QVec, SparseOp};
use crate::error::{Error, Result};
use crate::exactmath::{rank, rank_and_kernel, ExactMatrix, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Cocycles for gluing `sub⟨shift⟩` underneath `quot`.
#[derive(Clone, Debug)]
pub struct ExtensionSpace {
    /// Unknown `k` is the coefficient of `u` in `X_g(q)` for `(g, u, q)`.
    pub unknowns: Vec<(Token, usize, usize)>,
    pub cocycles: Vec<QVec>,
    pub coboundary_rank: usize,
}

impl ExtensionSpace {
    /// Dimension of the graded Ext group in this degree.
    pub fn ext_dim(&self) -> usize {
        self.cocycles.len() - self.coboundary_rank
    }
}

fn generators(n: usize) -> Vec<Token> {
    (1..n)
        .map(Token::Psi)
        .chain((1..=n).map(Token::Y))
        .collect()
}

fn to_rational_rows(rows: Vec<BTreeMap<usize, Rational>>, cols: usize) -> ExactMatrix<Rational> {
    let mut m = ExactMatrix::new(rows.len(), cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            m.set(r, c, v);
        }
    }
    m
}

/// Solve for all homogeneous off-diagonal blocks making
/// `[[A, X], [0, B]]` a module, where `A` acts on `sub⟨shift⟩` and `B` on `quot`.
pub fn extension_space<S, Q>(sub: &S, shift: i64, quot: &Q) -> Result<ExtensionSpace>
where
    S: KlrModule + ?Sized,
    Q: KlrModule + ?Sized,
{
    let n = quot.n();
    let g = *quot.geometry();
    if sub.n() != n || *sub.geometry() != g {
        return Err(Error::Precondition("modules for different algebras".into()));
    }
    let e = g.e();
    let gens = generators(n);
    let mut unknowns = Vec::new();
    let mut slots: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (gi, gen) in gens.iter().enumerate() {
        for q in 0..quot.dim() {
            let i = &quot.residues()[q].0;
            let target = token_residue(gen, i);
            let d = quot.degrees()[q] + token_degree(gen, i, e);
            for u in 0..sub.dim() {
                if sub.residues()[u].0 == target && sub.degrees()[u] + shift == d {
                    slots.entry((gi, q)).or_default().push((u, unknowns.len()));
                    unknowns.push((gen.clone(), u, q));
                }
            }
        }
    }
    let gen_index: HashMap<Token, usize> = gens
        .iter()
        .cloned()
        .enumerate()
        .map(|(a, b)| (b, a))
        .collect();

    let mut rows = Vec::new();
    let mut prefix_cache: HashMap<(Vec<Token>, usize), QVec> = HashMap::new();
    for q in 0..quot.dim() {
        for r in relations_at(&quot.residues()[q].0, &g) {
            let mut eq: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
            for (c, w) in &r.terms {
                for k in 0..w.len() {
                    let bq = apply_word(quot, &w[k + 1..], unit(q));
                    let gi = gen_index[&w[k]];
                    for (q2, beta) in &bq {
                        let Some(list) = slots.get(&(gi, *q2)) else {
                            continue;
                        };
                        for (u, idx) in list {
                            let img = prefix_cache
                                .entry((w[..k].to_vec(), *u))
                                .or_insert_with(|| apply_word(sub, &w[..k], unit(*u)));
                            for (s, alpha) in img.iter() {
                                let row = eq.entry(*s).or_default();
                                let slot = row.entry(*idx).or_insert_with(Rational::zero);
                                *slot += c * beta * alpha;
                            }
                        }
                    }
                }
            }
            rows.extend(eq.into_values().map(|mut row| {
                row.retain(|_, v| !v.is_zero());
                row
            }));
        }
    }
    rows.retain(|r| !r.is_empty());
    let cocycles = if unknowns.is_empty() {
        Vec::new()
    } else if rows.is_empty() {
        (0..unknowns.len()).map(unit).collect()
    } else {
        rank_and_kernel(&to_rational_rows(rows, unknowns.len()))?.1
    };

    let index: HashMap<(usize, usize, usize), usize> = unknowns
        .iter()
        .enumerate()
        .map(|(k, (t, u, q))| ((gen_index[t], *u, *q), k))
        .collect();
    let mut boundaries = Vec::new();
    for u in 0..sub.dim() {
        for q in 0..quot.dim() {
            if sub.residues()[u] != quot.residues()[q]
                || sub.degrees()[u] + shift != quot.degrees()[q]
            {
                continue;
            }
            let mut x: BTreeMap<usize, Rational> = BTreeMap::new();
            for (gi, gen) in gens.iter().enumerate() {
                let au = sub.generator(gen).expect("generator").apply(&unit(u));
                let mut put = |uu: usize, qq: usize, v: &Rational| -> Result<()> {
                    let k = index.get(&(gi, uu, qq)).ok_or_else(|| {
                        Error::Precondition("coboundary outside the homogeneous ansatz".into())
                    })?;
                    let slot = x.entry(*k).or_insert_with(Rational::zero);
                    *slot += v;
                    Ok(())
                };
                for (uu, v) in &au {
                    put(*uu, q, v)?;
                }
                let bop = quot.generator(gen).expect("generator");
                for (q2, col) in bop.cols.iter().enumerate() {
                    if let Some(beta) = col.get(&q) {
                        put(u, q2, &-beta.clone())?;
                    }
                }
            }
            x.retain(|_, v| !v.is_zero());
            if !x.is_empty() {
                boundaries.push(x);
            }
        }
    }
    let coboundary_rank = if boundaries.is_empty() {
        0
    } else {
        rank(&to_rational_rows(boundaries, unknowns.len()))?
    };
    Ok(ExtensionSpace {
        unknowns,
        cocycles,
        coboundary_rank,
    })
}

/// The module `[[A, X], [0, B]]` for the cocycle `x`, with `sub` first in
/// the basis. The result is checked against the full presentation.
pub fn glue<S, Q>(
    sub: &S,
    shift: i64,
    quot: &Q,
    space: &ExtensionSpace,
    x: &QVec,
) -> Result<GradedModule>
where
    S: KlrModule + ?Sized,
    Q: KlrModule + ?Sized,
{
    let n = quot.n();
    let ds = sub.dim();
    let dim = ds + quot.dim();
    let block = |gen: &Token| -> SparseOp {
        let a = sub.generator(gen).expect("generator");
        let b = quot.generator(gen).expect("generator");
        let mut cols: Vec<QVec> = a.cols.clone();
        cols.extend(
            b.cols
                .iter()
                .map(|c| c.iter().map(|(k, v)| (k + ds, v.clone())).collect()),
        );
        SparseOp { dim, cols }
    };
    let mut psi: Vec<SparseOp> = (1..n).map(|r| block(&Token::Psi(r))).collect();
    let mut y: Vec<SparseOp> = (1..=n).map(|r| block(&Token::Y(r))).collect();
    for (k, c) in x {
        let (t, u, q) = &space.unknowns[*k];
        let op = match t {
            Token::Psi(r) => &mut psi[r - 1],
            Token::Y(r) => &mut y[r - 1],
            Token::Idem(_) => unreachable!("idempotents carry no unknowns"),
        };
        axpy(&mut op.cols[ds + q], c, &unit(*u));
    }
    let m = GradedModule {
        label: format!("[{}⟨{shift}⟩ | {}]", sub.label(), quot.label()),
        geometry: *quot.geometry(),
        n,
        residues: sub
            .residues()
            .iter()
            .chain(quot.residues())
            .cloned()
            .collect(),
        degrees: sub
            .degrees()
            .iter()
            .map(|d| d + shift)
            .chain(quot.degrees().iter().copied())
            .collect(),
        psi,
        y,
    };
    check_presentation(&m)?;
    Ok(m)
}

/// A cocycle representing a generic class: a combination of the basis with
/// distinct small integer weights.
pub fn generic_cocycle(space: &ExtensionSpace) -> QVec {
    let mut x = QVec::new();
    for (k, c) in space.cocycles.iter().enumerate() {
        let w = Rational::one() + Rational::from_integer(((k * k + 3 * k) % 11).into());
        axpy(&mut x, &w, c);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcoves::GeometryParams;
    use crate::klr::build_specht;
    use crate::weights::Bipartition;

    #[test]
    fn trivial_extensions_are_coboundaries() {
        let g = GeometryParams::new(4, 0, 2).unwrap();
        let l = Bipartition::new(2, 1);
        let m = build_specht(&l, &g).unwrap();
        let s = extension_space(&m, 0, &m).unwrap();
        assert!(s.coboundary_rank <= s.cocycles.len());
        for c in &s.cocycles {
            glue(&m, 0, &m, &s, c).unwrap();
        }
    }

    #[test]
    fn glued_modules_satisfy_the_presentation() {
        let g = GeometryParams::new(4, 0, 2).unwrap();
        let top = build_specht(&Bipartition::new(6, 0), &g).unwrap();
        for mu in [Bipartition::new(4, 2), Bipartition::new(3, 3)] {
            let bottom = build_specht(&mu, &g).unwrap();
            for shift in 0..=3 {
                let s = extension_space(&bottom, shift, &top).unwrap();
                if !s.cocycles.is_empty() {
                    glue(&bottom, shift, &top, &s, &generic_cocycle(&s)).unwrap();
                }
            }
        }
    }
}
