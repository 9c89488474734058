//! One-column bipartitions, standard tableaux, lattice paths and residues.

use crate::alcoves::GeometryParams;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The bipartition `(1^first, 1^second)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Bipartition {
    pub first: usize,
    pub second: usize,
}

impl From<Bipartition> for [usize; 2] {
    fn from(b: Bipartition) -> Self {
        [b.first, b.second]
    }
}

impl From<[usize; 2]> for Bipartition {
    fn from(a: [usize; 2]) -> Self {
        Bipartition::new(a[0], a[1])
    }
}

impl Bipartition {
    pub const fn new(first: usize, second: usize) -> Self {
        Bipartition { first, second }
    }

    pub fn n(&self) -> usize {
        self.first + self.second
    }

    /// The bipartition of `n` with classical weight `w`.
    pub fn from_weight(n: usize, w: i64) -> Result<Self> {
        let n_i = n as i64;
        if w.abs() > n_i || (n_i - w) % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "no bipartition of {n} has weight {w}"
            )));
        }
        Ok(Bipartition::new(
            ((n_i + w) / 2) as usize,
            ((n_i - w) / 2) as usize,
        ))
    }

    pub fn weight(&self) -> i64 {
        self.first as i64 - self.second as i64
    }

    /// Length of the given column (component 1 or 2).
    pub fn column(&self, component: u8) -> usize {
        if component == 1 {
            self.first
        } else {
            self.second
        }
    }

    /// Boxes in book order: row by row, left column first.
    pub fn boxes_in_book_order(&self) -> Vec<Box> {
        let mut out = Vec::with_capacity(self.n());
        for row in 1..=self.first.max(self.second) {
            for component in [1u8, 2] {
                if row <= self.column(component) {
                    out.push(Box { row, component });
                }
            }
        }
        out
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |k: usize| match k {
            0 => "∅".to_string(),
            1 => "1".to_string(),
            k => format!("1^{k}"),
        };
        write!(f, "({},{})", part(self.first), part(self.second))
    }
}

/// All one-column bipartitions of `n`, first column decreasing.
pub fn all_bipartitions(n: usize) -> Vec<Bipartition> {
    (0..=n).rev().map(|a| Bipartition::new(a, n - a)).collect()
}

pub fn classical_weight(l: &Bipartition) -> i64 {
    l.weight()
}

/// `mu` strictly dominates `lambda`: `|lambda_1 - lambda_2| > |mu_1 - mu_2|`.
pub fn dominates(mu: &Bipartition, lambda: &Bipartition) -> Result<bool> {
    if mu.n() != lambda.n() {
        return Err(Error::InvalidParams(format!(
            "{mu} and {lambda} have different sizes"
        )));
    }
    Ok(lambda.weight().abs() > mu.weight().abs())
}

/// `lambda ⊴ mu`: strict dominance or equality.
pub fn dominates_eq(mu: &Bipartition, lambda: &Bipartition) -> Result<bool> {
    Ok(mu == lambda || dominates(mu, lambda)?)
}

/// Box in row `row` (1-based) of column `component` (1 or 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Box {
    pub row: usize,
    pub component: u8,
}

/// Residue `kappa_m + 1 - r mod e`.
pub fn box_residue(b: Box, g: &GeometryParams) -> u32 {
    let kappa = g.kappa()[(b.component - 1) as usize] as i64;
    (kappa + 1 - b.row as i64).rem_euclid(g.e() as i64) as u32
}

/// Residue sequence with values in `0..e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueSeq(pub Vec<u32>);

impl ResidueSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_r i` for 1-based `r`.
    pub fn swapped(&self, r: usize) -> ResidueSeq {
        let mut v = self.0.clone();
        v.swap(r - 1, r);
        ResidueSeq(v)
    }
}

impl fmt::Display for ResidueSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Standard tableau of a one-column bipartition, stored as the column
/// (1 or 2) holding each entry `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StdTableau {
    shape: Bipartition,
    comps: Vec<u8>,
}

impl StdTableau {
    /// Any 1/2 sequence is standard: columns fill top to bottom.
    pub fn from_components(comps: Vec<u8>) -> Result<Self> {
        if let Some(c) = comps.iter().find(|c| **c != 1 && **c != 2) {
            return Err(Error::InvalidParams(format!("component {c} is not 1 or 2")));
        }
        let first = comps.iter().filter(|c| **c == 1).count();
        let shape = Bipartition::new(first, comps.len() - first);
        Ok(StdTableau { shape, comps })
    }

    pub fn shape(&self) -> Bipartition {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[u8] {
        &self.comps
    }

    /// The box containing entry `k` (1-based).
    pub fn box_of(&self, k: usize) -> Box {
        let component = self.comps[k - 1];
        let row = self.comps[..k].iter().filter(|c| **c == component).count();
        Box { row, component }
    }

    /// The entry in box `b`, if the box lies in the shape.
    pub fn entry_of(&self, b: Box) -> Option<usize> {
        let mut row = 0;
        for (i, c) in self.comps.iter().enumerate() {
            if *c == b.component {
                row += 1;
                if row == b.row {
                    return Some(i + 1);
                }
            }
        }
        None
    }

    /// `s_r t`: entries `r` and `r+1` exchanged (may be non-standard only
    /// in the sense of leaving the tableau unchanged; callers check).
    pub fn swapped(&self, r: usize) -> StdTableau {
        let mut comps = self.comps.clone();
        comps.swap(r - 1, r);
        StdTableau {
            shape: self.shape,
            comps,
        }
    }

    /// Book-order position (0-based) of the box holding each entry.
    pub fn book_positions(&self) -> Vec<usize> {
        let order = self.shape.boxes_in_book_order();
        let mut pos = vec![0; self.n()];
        for (p, b) in order.iter().enumerate() {
            let k = self.entry_of(*b).expect("box in shape");
            pos[k - 1] = p;
        }
        pos
    }
}

impl fmt::Display for StdTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", tableau_to_path(self))
    }
}

impl Serialize for StdTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        tableau_to_path(self).points.serialize(s)
    }
}

/// Lattice path `p(0) = 0, p(1), ..., p(n)` with unit steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub points: Vec<i64>,
}

impl LatticePath {
    pub fn new(points: Vec<i64>) -> Result<Self> {
        if points.first() != Some(&0) {
            return Err(Error::InvalidParams("a path starts at 0".into()));
        }
        if points.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return Err(Error::InvalidParams("path steps must be ±1".into()));
        }
        Ok(LatticePath { points })
    }

    pub fn end(&self) -> i64 {
        *self.points.last().expect("nonempty path")
    }

    pub fn steps(&self) -> Vec<i64> {
        self.points.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dominant tableau: boxes filled in book order.
pub fn dominant_tableau(l: &Bipartition) -> StdTableau {
    let comps = l
        .boxes_in_book_order()
        .iter()
        .map(|b| b.component)
        .collect();
    StdTableau { shape: *l, comps }
}

pub fn residue_sequence(t: &StdTableau, g: &GeometryParams) -> ResidueSeq {
    ResidueSeq((1..=t.n()).map(|k| box_residue(t.box_of(k), g)).collect())
}

/// Residue sequence of the dominant tableau, `i^lambda`.
pub fn dominant_residues(l: &Bipartition, g: &GeometryParams) -> ResidueSeq {
    residue_sequence(&dominant_tableau(l), g)
}

/// Column 1 is a `+1` step, column 2 a `-1` step.
pub fn tableau_to_path(t: &StdTableau) -> LatticePath {
    let mut points = Vec::with_capacity(t.n() + 1);
    let mut p = 0i64;
    points.push(p);
    for c in &t.comps {
        p += if *c == 1 { 1 } else { -1 };
        points.push(p);
    }
    LatticePath { points }
}

pub fn path_to_tableau(p: &LatticePath) -> Result<StdTableau> {
    LatticePath::new(p.points.clone())?;
    StdTableau::from_components(
        p.steps()
            .iter()
            .map(|s| if *s == 1 { 1 } else { 2 })
            .collect(),
    )
}

/// All standard tableaux of shape `l` in path-lexicographic order
/// (a `-1` step sorts before a `+1` step).
pub fn enumerate_std(l: &Bipartition) -> Vec<StdTableau> {
    fn rec(a: usize, b: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if a == 0 && b == 0 {
            out.push(cur.clone());
            return;
        }
        if b > 0 {
            cur.push(2);
            rec(a, b - 1, cur, out);
            cur.pop();
        }
        if a > 0 {
            cur.push(1);
            rec(a - 1, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l.first, l.second, &mut Vec::with_capacity(l.n()), &mut out);
    out.into_iter()
        .map(|comps| StdTableau { shape: *l, comps })
        .collect()
}

/// Rule used to pick a reduced expression for `d_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum WordRule {
    /// Repeatedly strip the smallest left descent.
    #[default]
    SmallestDescent,
    /// Repeatedly strip the largest left descent.
    LargestDescent,
}

/// A permutation of `1..=n` with a reduced word `r_1 ... r_k`, meaning
/// `s_{r_1} ... s_{r_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    pub one_line: Vec<usize>,
    pub word: Vec<usize>,
}

impl Permutation {
    /// Number of inversions.
    pub fn coxeter_length(&self) -> usize {
        let v = &self.one_line;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|j| v[i] > v[*j]).count())
            .sum()
    }

    /// Evaluate a word on the identity, `s_{r_1} ... s_{r_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = (1..=n).collect();
        for r in word.iter().rev() {
            // left multiplication exchanges the values r and r+1
            for x in v.iter_mut() {
                if *x == *r {
                    *x = r + 1;
                } else if *x == r + 1 {
                    *x = *r;
                }
            }
        }
        v
    }
}

/// Left descents of `d_t`: `r` such that `d^{-1}(r) > d^{-1}(r+1)`.
pub fn left_descents(t: &StdTableau) -> Vec<usize> {
    let pos = t.book_positions();
    (1..t.n()).filter(|r| pos[r - 1] > pos[*r]).collect()
}

/// Reduced word of `d_t` under the given rule.
pub fn reduced_word(t: &StdTableau, rule: WordRule) -> Vec<usize> {
    let mut pos = t.book_positions();
    let mut word = Vec::new();
    loop {
        let mut desc = (1..pos.len()).filter(|r| pos[r - 1] > pos[*r]);
        let r = match rule {
            WordRule::SmallestDescent => desc.next(),
            WordRule::LargestDescent => desc.next_back(),
        };
        let Some(r) = r else { break };
        word.push(r);
        pos.swap(r - 1, r);
    }
    word
}

/// The permutation `d_t` with `d_t t^lambda = t`, with canonical word.
pub fn tableau_permutation(t: &StdTableau) -> Permutation {
    let pos = t.book_positions();
    let mut one_line = vec![0; t.n()];
    for (k, p) in pos.iter().enumerate() {
        one_line[*p] = k + 1;
    }
    Permutation {
        one_line,
        word: reduced_word(t, WordRule::SmallestDescent),
    }
}

/// Apply a permutation to the entries of a tableau, if the result is standard.
pub fn act_on_tableau(one_line: &[usize], t: &StdTableau) -> StdTableau {
    let mut comps = vec![0u8; t.n()];
    for k in 1..=t.n() {
        comps[one_line[k - 1] - 1] = t.comps[k - 1];
    }
    StdTableau {
        shape: t.shape,
        comps,
    }
}

/// Degree of `psi_r e(i)` for 1-based `r`.
pub fn psi_degree(i: &[u32], r: usize, e: u32) -> i64 {
    let (a, b) = (i[r - 1], i[r]);
    if a == b {
        -2
    } else if (a + 1) % e == b || (b + 1) % e == a {
        1
    } else {
        0
    }
}

/// Degree of `psi_{d_t} e(i^lambda)` along the canonical word.
pub fn word_degree(t: &StdTableau, g: &GeometryParams) -> i64 {
    let dom = dominant_tableau(&t.shape);
    let mut res = residue_sequence(&dom, g).0;
    let word = reduced_word(t, WordRule::SmallestDescent);
    let mut deg = 0;
    for r in word.iter().rev() {
        deg += psi_degree(&res, *r, g.e());
        res.swap(r - 1, *r);
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> GeometryParams {
        GeometryParams::new(4, 0, 2).unwrap()
    }

    #[test]
    fn weights_and_dominance() {
        assert_eq!(Bipartition::new(8, 1).weight(), 7);
        assert_eq!(Bipartition::new(0, 9).weight(), -9);
        assert_eq!(Bipartition::new(3, 3).weight(), 0);
        assert!(dominates(&Bipartition::new(4, 5), &Bipartition::new(8, 1)).unwrap());
        assert!(dominates(&Bipartition::new(8, 1), &Bipartition::new(0, 9)).unwrap());
        assert!(!dominates(&Bipartition::new(5, 4), &Bipartition::new(4, 5)).unwrap());
        assert!(!dominates(&Bipartition::new(4, 5), &Bipartition::new(5, 4)).unwrap());
        assert!(dominates(&Bipartition::new(4, 5), &Bipartition::new(5, 5)).is_err());
    }

    #[test]
    fn residues() {
        let g = g();
        assert_eq!(
            box_residue(
                Box {
                    row: 1,
                    component: 1
                },
                &g
            ),
            0
        );
        assert_eq!(
            box_residue(
                Box {
                    row: 3,
                    component: 1
                },
                &g
            ),
            2
        );
        assert_eq!(
            box_residue(
                Box {
                    row: 1,
                    component: 2
                },
                &g
            ),
            2
        );
        let l = Bipartition::new(8, 1);
        assert_eq!(dominant_residues(&l, &g).0, vec![0, 2, 3, 2, 1, 0, 3, 2, 1]);
        assert_eq!(dominant_residues(&Bipartition::new(1, 0), &g).0, vec![0]);
        assert_eq!(dominant_residues(&Bipartition::new(0, 1), &g).0, vec![2]);
    }

    #[test]
    fn dominant_examples() {
        let t = dominant_tableau(&Bipartition::new(8, 1));
        assert_eq!(
            t.entry_of(Box {
                row: 1,
                component: 1
            }),
            Some(1)
        );
        assert_eq!(
            t.entry_of(Box {
                row: 1,
                component: 2
            }),
            Some(2)
        );
        assert_eq!(
            t.entry_of(Box {
                row: 2,
                component: 1
            }),
            Some(3)
        );
        assert_eq!(
            tableau_to_path(&t).points,
            vec![0, 1, 0, 1, 2, 3, 4, 5, 6, 7]
        );
        let straight = LatticePath::new((0..=5).collect()).unwrap();
        assert_eq!(
            path_to_tableau(&straight).unwrap(),
            dominant_tableau(&Bipartition::new(5, 0))
        );
        assert!(LatticePath::new(vec![0, 2]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_std(&Bipartition::new(7, 0)).len(), 1);
        assert_eq!(enumerate_std(&Bipartition::new(2, 1)).len(), 3);
        assert_eq!(enumerate_std(&Bipartition::new(4, 5)).len(), 126);
    }

    #[test]
    fn permutation_examples() {
        let l = Bipartition::new(2, 1);
        let dom = dominant_tableau(&l);
        assert_eq!(dom.components(), &[1, 2, 1]);
        let p = tableau_permutation(&dom);
        assert!(p.word.is_empty());
        assert_eq!(p.one_line, vec![1, 2, 3]);
        // 1,2 in column 1 and 3 in column 2
        let t = StdTableau::from_components(vec![1, 1, 2]).unwrap();
        assert_eq!(tableau_permutation(&t).word, vec![2]);
        // 1,3 in column 1 and 2 in column 2 is the dominant tableau itself
        assert_eq!(StdTableau::from_components(vec![1, 2, 1]).unwrap(), dom);
    }
}
