//! Alcove geometry of the infinite dihedral group, linkage, tableau
//! degrees and Kazhdan–Lusztig polynomials.

use crate::error::{Error, Result};
use crate::exactmath::Laurent;
use crate::weights::{
    dominant_tableau, path_to_tableau, tableau_to_path, Bipartition, LatticePath, StdTableau,
};
use serde::Serialize;
use std::collections::BTreeSet;

/// Quantum characteristic `e` and an adjacency-free bicharge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeometryParams {
    e: u32,
    kappa: [u32; 2],
}

impl GeometryParams {
    pub fn new(e: u32, kappa1: u32, kappa2: u32) -> Result<Self> {
        if e < 4 {
            return Err(Error::InvalidParams(format!("e = {e} must be at least 4")));
        }
        let (k1, k2) = (kappa1 % e, kappa2 % e);
        if k1 == k2 || k1 == (k2 + 1) % e || (k1 + 1) % e == k2 {
            return Err(Error::InvalidParams(format!(
                "bicharge ({kappa1},{kappa2}) is not adjacency-free for e = {e}"
            )));
        }
        Ok(GeometryParams { e, kappa: [k1, k2] })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn kappa(&self) -> [u32; 2] {
        self.kappa
    }

    /// Representative of `kappa_1 - kappa_2` in `2..=e-2`: the right wall
    /// of the fundamental alcove.
    pub fn wall_offset(&self) -> i64 {
        (self.kappa[0] as i64 - self.kappa[1] as i64).rem_euclid(self.e as i64)
    }

    /// The two walls of the fundamental alcove, left then right.
    pub fn fundamental_walls(&self) -> (i64, i64) {
        (self.wall_offset() - self.e as i64, self.wall_offset())
    }

    /// Walls lying in `[-n, n]`.
    pub fn walls_in_range(&self, n: usize) -> Vec<i64> {
        let n = n as i64;
        (-n..=n).filter(|c| is_wall(*c, self)).collect()
    }
}

pub fn is_wall(c: i64, g: &GeometryParams) -> bool {
    (c - g.wall_offset()).rem_euclid(g.e() as i64) == 0
}

/// Number of walls strictly between 0 and `c`.
pub fn walls_between(c: i64, g: &GeometryParams) -> usize {
    let e = g.e() as i64;
    let (left, right) = g.fundamental_walls();
    let count = if c > 0 {
        if c <= right {
            0
        } else {
            (c - right - 1) / e + 1
        }
    } else if c >= left {
        0
    } else {
        (left - c - 1) / e + 1
    };
    count as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Element of the infinite dihedral group: length and the side of the
/// fundamental alcove its reduced word leaves through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WElement {
    pub length: usize,
    pub side: Option<Side>,
}

impl WElement {
    pub fn identity() -> Self {
        WElement {
            length: 0,
            side: None,
        }
    }

    pub fn new(length: usize, side: Side) -> Self {
        if length == 0 {
            Self::identity()
        } else {
            WElement {
                length,
                side: Some(side),
            }
        }
    }

    /// Alternating reduced word in the reflections `0` (right fundamental
    /// wall) and `1` (left fundamental wall), starting through `side`.
    pub fn reduced_word(&self) -> Vec<u8> {
        let first = usize::from(self.side == Some(Side::Left));
        (0..self.length).map(|i| ((first + i) % 2) as u8).collect()
    }
}

pub fn weyl_element_of(l: &Bipartition, g: &GeometryParams) -> Result<WElement> {
    let c = l.weight();
    if is_wall(c, g) {
        return Err(Error::Precondition(format!("{l} is singular")));
    }
    let side = if c > 0 { Side::Right } else { Side::Left };
    Ok(WElement::new(walls_between(c, g), side))
}

/// Bruhat order: `y <= x`.
pub fn bruhat_leq(y: &WElement, x: &WElement) -> bool {
    y == x || y.length < x.length
}

/// `h_{y,x}(v)`.
pub fn kl_poly(y: &WElement, x: &WElement) -> Laurent {
    if bruhat_leq(y, x) {
        Laurent::v_pow((x.length - y.length) as i32)
    } else {
        Laurent::zero()
    }
}

/// `h^{x,y}(v)`; in type Ã₁ it has the same closed form.
pub fn inverse_kl_poly(x: &WElement, y: &WElement) -> Laurent {
    kl_poly(y, x)
}

/// A W-orbit of classical weights inside `[-n, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkageClass {
    pub n: usize,
    /// Classical weights, decreasing.
    pub members: Vec<i64>,
}

impl LinkageClass {
    pub fn bipartitions(&self) -> Vec<Bipartition> {
        self.members
            .iter()
            .map(|w| Bipartition::from_weight(self.n, *w).expect("member in range"))
            .collect()
    }

    pub fn contains(&self, w: i64) -> bool {
        self.members.contains(&w)
    }
}

/// Reflection of `c` about wall `w`.
fn reflect(c: i64, w: i64) -> i64 {
    2 * w - c
}

pub fn linkage_class(l: &Bipartition, g: &GeometryParams) -> LinkageClass {
    let n = l.n() as i64;
    let e = g.e() as i64;
    let c = l.weight();
    let mirror = 2 * g.wall_offset() - c;
    let mut members: Vec<i64> = (-n..=n)
        .filter(|x| (x - c).rem_euclid(2 * e) == 0 || (x - mirror).rem_euclid(2 * e) == 0)
        .collect();
    members.reverse();
    LinkageClass { n: l.n(), members }
}

/// Whether `mu` and `lambda` lie in one linkage class.
pub fn linked(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> bool {
    mu.n() == l.n() && linkage_class(l, g).contains(mu.weight())
}

/// `lambda ⊴ mu` inside a linkage class: Bruhat order on regular weights,
/// the chain by distance from the origin on singular ones.
pub fn class_leq(l: &Bipartition, mu: &Bipartition, g: &GeometryParams) -> Result<bool> {
    if !linked(mu, l, g) {
        return Err(Error::Precondition(format!("{mu} and {l} are not linked")));
    }
    if is_wall(l.weight(), g) {
        return Ok(mu.weight().abs() <= l.weight().abs());
    }
    Ok(bruhat_leq(
        &weyl_element_of(mu, g)?,
        &weyl_element_of(l, g)?,
    ))
}

/// Labels `lambda_0 = lambda, lambda_1, ...` of the weights dominating a
/// singular `lambda`, alternating between the two ends of the class.
pub fn singular_labels(l: &Bipartition, g: &GeometryParams) -> Result<Vec<Bipartition>> {
    let c = l.weight();
    if !is_wall(c, g) {
        return Err(Error::Precondition(format!("{l} is regular")));
    }
    let mut rest: BTreeSet<i64> = linkage_class(l, g)
        .members
        .into_iter()
        .filter(|x| x.abs() < c.abs())
        .collect();
    let mut out = vec![c];
    let mut k = 0;
    while !rest.is_empty() {
        let take_left = (k % 2 == 0) == (c > 0);
        let x = if take_left {
            *rest.first().expect("nonempty")
        } else {
            *rest.last().expect("nonempty")
        };
        rest.remove(&x);
        out.push(x);
        k += 1;
    }
    out.into_iter()
        .map(|w| Bipartition::from_weight(l.n(), w))
        .collect()
}

/// Minimal positive step at which the dominant path of `lambda` touches a
/// wall of the fundamental alcove.
pub fn f_lambda(l: &Bipartition, g: &GeometryParams) -> Result<usize> {
    let (left, right) = g.fundamental_walls();
    tableau_to_path(&dominant_tableau(l))
        .points
        .iter()
        .position(|c| *c == left || *c == right)
        .ok_or_else(|| Error::Precondition(format!("{l} lies inside the fundamental alcove")))
}

/// Reflection closure of the dominant path of `lambda`: tails may be
/// reflected about any wall the path touches.
pub fn linked_paths(l: &Bipartition, g: &GeometryParams) -> Vec<LatticePath> {
    let start = tableau_to_path(&dominant_tableau(l));
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack = vec![start.points];
    while let Some(p) = stack.pop() {
        if !seen.insert(p.clone()) {
            continue;
        }
        for k in 1..p.len() - 1 {
            if is_wall(p[k], g) {
                let mut q = p.clone();
                for x in q.iter_mut().skip(k + 1) {
                    *x = reflect(*x, p[k]);
                }
                if !seen.contains(&q) {
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter()
        .map(|points| LatticePath { points })
        .collect()
}

/// `Std_lambda(mu)`: tableaux of shape `mu` linked to the dominant tableau of `lambda`.
pub fn linked_tableaux(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> Vec<StdTableau> {
    if mu.n() != l.n() {
        return Vec::new();
    }
    let mut out: Vec<StdTableau> = linked_paths(l, g)
        .iter()
        .filter(|p| p.end() == mu.weight())
        .map(|p| path_to_tableau(p).expect("closure paths are valid"))
        .collect();
    out.sort_by_key(tableau_to_path);
    out
}

/// Windows `[i, i+e]` of the path running between the two fundamental walls.
fn wall_to_wall_windows(p: &[i64], g: &GeometryParams) -> Vec<usize> {
    let e = g.e() as usize;
    let (left, right) = g.fundamental_walls();
    let wins: Vec<usize> = (0..p.len().saturating_sub(e))
        .filter(|i| {
            let (a, b) = (p[*i], p[i + e]);
            (a == left && b == right) || (a == right && b == left)
        })
        .collect();
    for w in wins.windows(2) {
        assert!(
            w[1] >= w[0] + e,
            "overlapping wall-to-wall steps at {} and {}",
            w[0],
            w[1]
        );
    }
    wins
}

/// Number of wall-to-wall steps across the fundamental alcove.
pub fn wall_to_wall_steps(t: &StdTableau, g: &GeometryParams) -> usize {
    wall_to_wall_windows(&tableau_to_path(t).points, g).len()
}

/// Degree of a tableau read off its path: a step leaving a wall towards the
/// origin adds one, a step reaching a wall from the far side subtracts one.
pub fn tableau_degree(t: &StdTableau, g: &GeometryParams) -> i64 {
    tableau_to_path(t)
        .points
        .windows(2)
        .map(
            |w| match (w[1].abs() < w[0].abs(), is_wall(w[0], g), is_wall(w[1], g)) {
                (true, true, _) => 1,
                (true, _, true) => -1,
                _ => 0,
            },
        )
        .sum()
}

/// The unique tableau of maximal degree in `Std_lambda(mu)`, for `lambda ⊴ mu`.
pub fn max_degree_tableau(
    mu: &Bipartition,
    l: &Bipartition,
    g: &GeometryParams,
) -> Result<StdTableau> {
    if !class_leq(l, mu, g)? {
        return Err(Error::Precondition(format!("{l} is not dominated by {mu}")));
    }
    let tabs = linked_tableaux(mu, l, g);
    let degs: Vec<i64> = tabs.iter().map(|t| tableau_degree(t, g)).collect();
    let top = *degs
        .iter()
        .max()
        .ok_or_else(|| Error::Precondition("empty Std_lambda(mu)".into()))?;
    let mut winners = tabs.iter().zip(&degs).filter(|(_, d)| **d == top);
    let (t, _) = winners.next().expect("maximum attained");
    if winners.next().is_some() {
        return Err(Error::Precondition(format!(
            "maximal degree {top} not unique in Std_{l}({mu})"
        )));
    }
    Ok(t.clone())
}

/// The degree `ℓ(w_λ) − ℓ(w_μ)` (regular) or label `k` (singular) that
/// the maximal tableau of `Std_lambda(mu)` should have.
pub fn expected_top_degree(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> Result<usize> {
    if is_wall(l.weight(), g) {
        singular_labels(l, g)?
            .iter()
            .position(|x| x == mu)
            .ok_or_else(|| Error::Precondition(format!("{mu} is not a label of {l}")))
    } else {
        weyl_element_of(l, g)?
            .length
            .checked_sub(weyl_element_of(mu, g)?.length)
            .ok_or_else(|| Error::Precondition(format!("{l} is not dominated by {mu}")))
    }
}

/// `⊴`-maximal member and the one or two `⊴`-minimal members of the class.
pub fn extremes(l: &Bipartition, g: &GeometryParams) -> (Bipartition, Vec<Bipartition>) {
    let class = linkage_class(l, g).bipartitions();
    let level = |b: &Bipartition| walls_between(b.weight(), g);
    let lo = class.iter().map(level).min().expect("class nonempty");
    let hi = class.iter().map(level).max().expect("class nonempty");
    let max = *class
        .iter()
        .find(|b| level(b) == lo)
        .expect("minimum attained");
    let mins = class.iter().filter(|b| level(b) == hi).copied().collect();
    (max, mins)
}

/// Whether the class of a regular `lambda` holds an incomparable partner of it.
pub fn is_paired(l: &Bipartition, g: &GeometryParams) -> bool {
    if is_wall(l.weight(), g) {
        return false;
    }
    let len = walls_between(l.weight(), g);
    linkage_class(l, g)
        .members
        .iter()
        .any(|w| *w != l.weight() && walls_between(*w, g) == len && len > 0)
}

/// The closed-form pairing criterion: unpaired iff `ℓ = 0` or `|λ₁−λ₂| < 2ℓe − n`.
pub fn is_paired_by_inequality(l: &Bipartition, g: &GeometryParams) -> bool {
    if is_wall(l.weight(), g) {
        return false;
    }
    let len = walls_between(l.weight(), g) as i64;
    let unpaired = len == 0 || l.weight().abs() < 2 * len * g.e() as i64 - l.n() as i64;
    !unpaired
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{all_bipartitions, enumerate_std, word_degree};

    fn g() -> GeometryParams {
        GeometryParams::new(4, 0, 2).unwrap()
    }

    #[test]
    fn adjacency_free() {
        assert!(GeometryParams::new(4, 0, 1).is_err());
        assert!(GeometryParams::new(4, 1, 0).is_err());
        assert!(GeometryParams::new(4, 3, 0).is_err());
        assert!(GeometryParams::new(3, 0, 2).is_err());
        assert_eq!(g().wall_offset(), 2);
    }

    #[test]
    fn walls() {
        let g = g();
        assert!(is_wall(6, &g));
        assert!(!is_wall(0, &g));
        assert!(!is_wall(7, &g));
    }

    #[test]
    fn weyl_elements() {
        let g = g();
        let a = weyl_element_of(&Bipartition::new(8, 1), &g).unwrap();
        let b = weyl_element_of(&Bipartition::new(0, 9), &g).unwrap();
        assert_eq!(a.length, 2);
        assert_eq!(b.length, 2);
        assert_ne!(a.side, b.side);
        assert_eq!(
            weyl_element_of(&Bipartition::new(5, 4), &g).unwrap(),
            WElement::identity()
        );
        assert!(weyl_element_of(&Bipartition::new(6, 0), &g).is_err());
        assert!(!bruhat_leq(&a, &b) && !bruhat_leq(&b, &a));
        assert!(bruhat_leq(&WElement::new(1, Side::Left), &a));
        assert_eq!(kl_poly(&WElement::identity(), &a), Laurent::v_pow(2));
        assert_eq!(kl_poly(&a, &a), Laurent::one());
        assert!(kl_poly(&a, &WElement::new(1, Side::Right)).is_zero());
    }

    #[test]
    fn linkage_examples() {
        let g = g();
        assert_eq!(
            linkage_class(&Bipartition::new(8, 1), &g).members,
            vec![7, 5, -1, -3, -9]
        );
        assert_eq!(
            linkage_class(&Bipartition::new(6, 0), &g).members,
            vec![6, -2]
        );
        assert_eq!(linkage_class(&Bipartition::new(1, 0), &g).members, vec![1]);
    }

    #[test]
    fn labels() {
        let g = g();
        let eta = singular_labels(&Bipartition::new(6, 0), &g).unwrap();
        assert_eq!(
            eta.iter().map(|b| b.weight()).collect::<Vec<_>>(),
            vec![6, -2]
        );
        let eta = singular_labels(&Bipartition::new(10, 0), &g).unwrap();
        assert_eq!(
            eta.iter().map(|b| b.weight()).collect::<Vec<_>>(),
            vec![10, -6, 2]
        );
        let mirror = GeometryParams::new(4, 2, 0).unwrap();
        let eta = singular_labels(&Bipartition::new(0, 6), &mirror).unwrap();
        assert_eq!(
            eta.iter().map(|b| b.weight()).collect::<Vec<_>>(),
            vec![-6, 2]
        );
        assert!(singular_labels(&Bipartition::new(5, 4), &g).is_err());
    }

    #[test]
    fn f_values() {
        let g = g();
        assert_eq!(f_lambda(&Bipartition::new(8, 1), &g).unwrap(), 4);
        assert_eq!(f_lambda(&Bipartition::new(6, 0), &g).unwrap(), 2);
        assert!(f_lambda(&Bipartition::new(5, 4), &g).is_err());
    }

    #[test]
    fn linked_examples() {
        let g = g();
        let l = Bipartition::new(8, 1);
        assert_eq!(linked_paths(&l, &g).len(), 4);
        let t = linked_tableaux(&Bipartition::new(4, 5), &l, &g);
        assert_eq!(t.len(), 1);
        assert_eq!(tableau_degree(&t[0], &g), 2);
        let m = max_degree_tableau(&Bipartition::new(4, 5), &l, &g).unwrap();
        assert_eq!(m, t[0]);
    }

    #[test]
    fn degree_examples() {
        let g = g();
        let t = path_to_tableau(&LatticePath::new(vec![0, 1, 2, 1, 0, -1, -2]).unwrap()).unwrap();
        assert_eq!(tableau_degree(&t, &g), 1);
        let eta = Bipartition::new(6, 0);
        assert_eq!(
            max_degree_tableau(&Bipartition::new(2, 4), &eta, &g).unwrap(),
            t
        );
        assert_eq!(
            tableau_degree(&dominant_tableau(&Bipartition::new(8, 1)), &g),
            0
        );
    }

    #[test]
    fn path_degree_matches_word_degree() {
        for (e, a, b) in [(4, 0, 2), (5, 0, 2), (5, 0, 3), (6, 1, 4)] {
            let g = GeometryParams::new(e, a, b).unwrap();
            for n in 1..=10 {
                for l in all_bipartitions(n) {
                    for t in enumerate_std(&l) {
                        assert_eq!(tableau_degree(&t, &g), word_degree(&t, &g), "{t}");
                    }
                    for mu in all_bipartitions(n) {
                        for t in linked_tableaux(&mu, &l, &g) {
                            let (d, w) =
                                (tableau_degree(&t, &g), wall_to_wall_steps(&t, &g) as i64);
                            assert!(d == w || d == w + 1, "{t}: deg {d}, w {w}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_and_extremes() {
        let g = g();
        assert!(!is_paired(&Bipartition::new(4, 5), &g));
        assert!(is_paired(&Bipartition::new(8, 1), &g));
        assert!(!is_paired(&Bipartition::new(6, 0), &g));
        let (max, mins) = extremes(&Bipartition::new(8, 1), &g);
        assert_eq!(max.weight(), -1);
        assert_eq!(
            mins.iter().map(|b| b.weight()).collect::<Vec<_>>(),
            vec![7, -9]
        );
        let (max, mins) = extremes(&Bipartition::new(6, 0), &g);
        assert_eq!((max.weight(), mins[0].weight(), mins.len()), (-2, 6, 1));
        let (max, mins) = extremes(&Bipartition::new(1, 0), &g);
        assert_eq!(
            (max, mins),
            (Bipartition::new(1, 0), vec![Bipartition::new(1, 0)])
        );
    }
}
