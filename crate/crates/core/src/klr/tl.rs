//! Diamonds, the degree-zero Temperley–Lieb subalgebra and its
//! Jones–Wenzl projector.

use super::element::{psi_word, KLRElement, Token};
use crate::alcoves::{f_lambda, GeometryParams};
use crate::error::{Error, Result};
use crate::exactmath::{rat, Rational};
use crate::weights::{dominant_residues, Bipartition};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Temperley–Lieb diagram on `strands` strands: points `0..s` on top,
/// `s..2s` on the bottom (left to right), `pairs[p]` is the partner of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    strands: usize,
    pairs: Vec<usize>,
}

impl TLDiagram {
    pub fn identity(strands: usize) -> Self {
        let pairs = (0..2 * strands)
            .map(|p| {
                if p < strands {
                    p + strands
                } else {
                    p - strands
                }
            })
            .collect();
        TLDiagram { strands, pairs }
    }

    /// Cup-cap generator joining strands `i` and `i+1` (1-based).
    pub fn generator(strands: usize, i: usize) -> Self {
        let mut d = Self::identity(strands);
        let (a, b) = (i - 1, i);
        d.pairs[a] = b;
        d.pairs[b] = a;
        d.pairs[strands + a] = strands + b;
        d.pairs[strands + b] = strands + a;
        d
    }

    /// `self · o` with `self` stacked on top; returns the number of closed loops.
    pub fn compose(&self, o: &TLDiagram) -> (TLDiagram, usize) {
        let s = self.strands;
        // glued middle row: bottom of self = top of o
        let mut pairs = vec![usize::MAX; 2 * s];
        let mut seen = vec![false; s];
        for start in 0..2 * s {
            if pairs[start] != usize::MAX {
                continue;
            }
            // external point: top of self (start < s) or bottom of o
            let (mut in_self, mut p) = if start < s {
                (true, start)
            } else {
                (false, start)
            };
            loop {
                let q = if in_self { self.pairs[p] } else { o.pairs[p] };
                if in_self && q < s {
                    pairs[start] = q;
                    pairs[q] = start;
                    break;
                }
                if !in_self && q >= s {
                    pairs[start] = q;
                    pairs[q] = start;
                    break;
                }
                // crossing the middle row
                let mid = if in_self { q - s } else { q };
                seen[mid] = true;
                if in_self {
                    in_self = false;
                    p = mid;
                } else {
                    in_self = true;
                    p = mid + s;
                }
            }
        }
        let mut loops = 0;
        for m in 0..s {
            if seen[m] {
                continue;
            }
            loops += 1;
            let mut p = m;
            loop {
                seen[p] = true;
                let q = self.pairs[p + s] - s;
                seen[q] = true;
                p = o.pairs[q];
                if p == m {
                    break;
                }
            }
        }
        (TLDiagram { strands: s, pairs }, loops)
    }
}

/// Jones normal forms `U_{r_1,s_1} ... U_{r_p,s_p}` with `r` and `s`
/// strictly decreasing and `r_j <= s_j`, where `U_{r,s} = U_r U_{r+1} ... U_s`.
/// Generators are numbered `1..=gens`.
pub fn tl_normal_forms(gens: usize) -> Vec<Vec<usize>> {
    fn rec(max_r: usize, max_s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for r in 1..max_r {
            for s in r..max_s {
                let n0 = cur.len();
                cur.extend(r..=s);
                rec(r, s, cur, out);
                cur.truncate(n0);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens + 1, gens + 1, &mut Vec::new(), &mut out);
    out
}

/// Element of the Temperley–Lieb algebra with loop value `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    pub strands: usize,
    pub delta: Rational,
    pub terms: BTreeMap<TLDiagram, Rational>,
}

impl TLElement {
    pub fn from_diagram(d: TLDiagram, delta: &Rational) -> Self {
        TLElement {
            strands: d.strands,
            delta: delta.clone(),
            terms: BTreeMap::from([(d, Rational::one())]),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<TLDiagram, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let (d, loops) = a.compose(b);
                let mut c = x * y;
                for _ in 0..loops {
                    c *= &self.delta;
                }
                *terms.entry(d).or_insert_with(Rational::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TLElement {
            strands: self.strands,
            delta: self.delta.clone(),
            terms,
        }
    }

    pub fn add_scaled(&self, o: &Self, c: &Rational) -> Self {
        let mut terms = self.terms.clone();
        for (d, x) in &o.terms {
            *terms.entry(d.clone()).or_insert_with(Rational::zero) += x * c;
        }
        terms.retain(|_, c| !c.is_zero());
        TLElement {
            strands: self.strands,
            delta: self.delta.clone(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rewrite in the Jones normal form basis: word to coefficient.
    pub fn normal_form(&self) -> BTreeMap<Vec<usize>, Rational> {
        let gens = self.strands - 1;
        let lookup: BTreeMap<TLDiagram, Vec<usize>> = tl_normal_forms(gens)
            .into_iter()
            .map(|w| (tl_word_diagram(self.strands, &w).0, w))
            .collect();
        self.terms
            .iter()
            .map(|(d, c)| (lookup[d].clone(), c.clone()))
            .collect()
    }
}

/// Diagram of a word in the generators, with the number of loops removed.
pub fn tl_word_diagram(strands: usize, w: &[usize]) -> (TLDiagram, usize) {
    let mut d = TLDiagram::identity(strands);
    let mut loops = 0;
    for i in w {
        let (x, l) = d.compose(&TLDiagram::generator(strands, *i));
        d = x;
        loops += l;
    }
    (d, loops)
}

/// Jones–Wenzl projector on `gens + 1` strands by Wenzl's recursion
/// `p_{k+1} = p_k − (Δ_{k−1}/Δ_k) p_k U_k p_k`.
pub fn wenzl_projector(gens: usize, delta: &Rational) -> Result<TLElement> {
    let s = gens + 1;
    let mut p = TLElement::from_diagram(TLDiagram::identity(s), delta);
    let (mut prev, mut cur) = (Rational::one(), delta.clone());
    for k in 1..=gens {
        if cur.is_zero() {
            return Err(Error::Precondition("Wenzl denominator vanishes".into()));
        }
        let u = TLElement::from_diagram(TLDiagram::generator(s, k), delta);
        let pup = p.mul(&u).mul(&p);
        p = p.add_scaled(&pup, &-(&prev / &cur));
        let next = delta * &cur - &prev;
        prev = cur;
        cur = next;
    }
    Ok(p)
}

/// Loop parameter `2(−1)^{e−1}` of the diamond subalgebra.
pub fn loop_parameter(g: &GeometryParams) -> Rational {
    if g.e().is_multiple_of(2) {
        rat(-2)
    } else {
        rat(2)
    }
}

/// Indices `j` with a diamond at `f(j) = f_λ + je`: every ψ of the layered
/// word is defined (`e ≤ f(j) ≤ n − e`) and the block swap it performs fixes
/// `i^λ`, i.e. the dominant path runs straight through the window.
pub fn diamond_indices(l: &Bipartition, g: &GeometryParams) -> Vec<usize> {
    let Ok(f) = f_lambda(l, g) else {
        return Vec::new();
    };
    let e = g.e() as usize;
    let i = dominant_residues(l, g);
    (0..)
        .take_while(|j| f + j * e + e <= l.n())
        .filter(|j| {
            let p = f + j * e;
            p >= e && i.0[p - e..p] == i.0[p..p + e]
        })
        .collect()
}

/// The diamond `U_j^λ` as a word ending in `e(i^λ)`.
pub fn diamond(l: &Bipartition, j: usize, g: &GeometryParams) -> Result<KLRElement> {
    if !diamond_indices(l, g).contains(&j) {
        return Err(Error::Precondition(format!(
            "no diamond of {l} at index {j}"
        )));
    }
    let e = g.e() as usize;
    let p = f_lambda(l, g)? + j * e;
    let layer = |k: usize| -> Vec<usize> { (0..k).map(|a| p + 1 + 2 * a - k).collect() };
    let mut rs = Vec::new();
    for k in (1..=e).chain((1..e).rev()) {
        rs.extend(layer(k));
    }
    let mut w = psi_word(&rs);
    w.push(Token::Idem(dominant_residues(l, g)));
    Ok(KLRElement::word(w))
}

/// Image of a TL word (generators numbered from 1 over the diamond indices).
pub fn tl_monomial(l: &Bipartition, word: &[usize], g: &GeometryParams) -> Result<KLRElement> {
    let js = diamond_indices(l, g);
    let mut x = KLRElement::idem(&dominant_residues(l, g));
    for i in word {
        let j = *js
            .get(i - 1)
            .ok_or_else(|| Error::Precondition(format!("no TL generator {i} for {l}")))?;
        x = x.mul(&diamond(l, j, g)?);
    }
    Ok(x)
}

/// `JW^λ` in the Jones normal form basis of the diamond subalgebra.
pub fn jones_wenzl(l: &Bipartition, g: &GeometryParams) -> Result<KLRElement> {
    let gens = diamond_indices(l, g).len();
    let p = wenzl_projector(gens, &loop_parameter(g))?;
    let mut x = KLRElement::zero();
    for (w, c) in p.normal_form() {
        x = x.add_scaled(&tl_monomial(l, &w, g)?, &c);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn normal_form_counts() {
        for gens in 0..6 {
            let forms = tl_normal_forms(gens);
            assert_eq!(forms.len(), catalan(gens + 1));
            let diagrams: std::collections::BTreeSet<_> =
                forms.iter().map(|w| tl_word_diagram(gens + 1, w)).collect();
            assert_eq!(diagrams.len(), forms.len());
            assert!(diagrams.iter().all(|(_, loops)| *loops == 0));
        }
    }

    #[test]
    fn degree_zero_part_has_catalan_dimension() {
        use crate::weights::{all_bipartitions, enumerate_std, residue_sequence, word_degree};
        for (e, k1, k2, max_n) in [(4, 0, 2, 12), (5, 0, 2, 12), (6, 0, 3, 14), (6, 1, 4, 14)] {
            let g = GeometryParams::new(e, k1, k2).unwrap();
            for n in 1..=max_n {
                for l in all_bipartitions(n) {
                    let i = dominant_residues(&l, &g);
                    let dim: usize = all_bipartitions(n)
                        .iter()
                        .map(|mu| {
                            let c = enumerate_std(mu)
                                .iter()
                                .filter(|t| residue_sequence(t, &g) == i && word_degree(t, &g) == 0)
                                .count();
                            c * c
                        })
                        .sum();
                    assert_eq!(dim, catalan(diamond_indices(&l, &g).len() + 1), "{l}");
                }
            }
        }
    }

    #[test]
    fn tl_relations() {
        let s = 5;
        let u = |i| TLDiagram::generator(s, i);
        assert_eq!(u(2).compose(&u(2)), (u(2), 1));
        assert_eq!(u(2).compose(&u(3)).0.compose(&u(2)), (u(2), 0));
        assert_eq!(u(1).compose(&u(3)), u(3).compose(&u(1)));
    }

    #[test]
    fn wenzl_is_idempotent_and_killed() {
        for delta in [rat(-2), rat(2)] {
            for gens in 1..5 {
                let p = wenzl_projector(gens, &delta).unwrap();
                assert_eq!(p.mul(&p), p);
                for i in 1..=gens {
                    let u = TLElement::from_diagram(TLDiagram::generator(gens + 1, i), &delta);
                    assert!(u.mul(&p).is_zero());
                    assert!(p.mul(&u).is_zero());
                }
            }
        }
        let p = wenzl_projector(1, &rat(-2)).unwrap().normal_form();
        assert_eq!(p[&vec![]], rat(1));
        assert_eq!(p[&vec![1]], crate::exactmath::ratio(1, 2));
    }
}
