//! Graded decomposition, projective, Cartan and tilting characters.

use crate::alcoves::{
    bruhat_leq, class_leq, extremes, inverse_kl_poly, is_paired, is_wall, kl_poly, linkage_class,
    linked, linked_tableaux, max_degree_tableau, singular_labels, tableau_degree, weyl_element_of,
    GeometryParams,
};
use crate::error::{Error, Result};
use crate::exactmath::{bar, Laurent};
use crate::weights::{all_bipartitions, enumerate_std, word_degree, Bipartition};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Laurent-valued matrix indexed by weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMultiplicityMatrix {
    pub row_weights: Vec<Bipartition>,
    pub col_weights: Vec<Bipartition>,
    pub entries: Vec<Vec<Laurent>>,
}

impl GradedMultiplicityMatrix {
    pub fn zero(rows: Vec<Bipartition>, cols: Vec<Bipartition>) -> Self {
        let entries = vec![vec![Laurent::zero(); cols.len()]; rows.len()];
        GradedMultiplicityMatrix {
            row_weights: rows,
            col_weights: cols,
            entries,
        }
    }

    fn row_index(&self, b: &Bipartition) -> usize {
        self.row_weights
            .iter()
            .position(|x| x == b)
            .expect("row weight present")
    }

    fn col_index(&self, b: &Bipartition) -> usize {
        self.col_weights
            .iter()
            .position(|x| x == b)
            .expect("column weight present")
    }

    pub fn get(&self, row: &Bipartition, col: &Bipartition) -> &Laurent {
        &self.entries[self.row_index(row)][self.col_index(col)]
    }

    pub fn set(&mut self, row: &Bipartition, col: &Bipartition, v: Laurent) {
        let (r, c) = (self.row_index(row), self.col_index(col));
        self.entries[r][c] = v;
    }

    /// Entries evaluated at `v = 1`.
    pub fn at_one(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(Laurent::eval_one).collect())
            .collect()
    }

    /// Positions where two matrices over the same weights differ.
    pub fn diff(&self, o: &Self) -> Vec<(Bipartition, Bipartition, Laurent, Laurent)> {
        let mut out = Vec::new();
        for (i, r) in self.row_weights.iter().enumerate() {
            for (j, c) in self.col_weights.iter().enumerate() {
                let other = o.get(r, c);
                if &self.entries[i][j] != other {
                    out.push((*r, *c, self.entries[i][j].clone(), other.clone()));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.row_weights,
            "cols": self.col_weights,
            "entries": self.entries.iter()
                .map(|r| r.iter().map(Laurent::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("\"\"");
        for c in &self.col_weights {
            s.push_str(&format!(",\"{c}\""));
        }
        s.push('\n');
        for (r, row) in self.row_weights.iter().zip(&self.entries) {
            s.push_str(&format!("\"{r}\""));
            for x in row {
                s.push_str(&format!(",\"{x}\""));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let head: Vec<String> = self
            .col_weights
            .iter()
            .map(|c| c.weight().to_string())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .chain(&head)
            .map(|c| c.chars().count())
            .max()
            .unwrap_or(1);
        let mut s = format!("{:>6} |", "");
        for h in &head {
            s.push_str(&format!(" {h:>width$}"));
        }
        s.push('\n');
        for (r, row) in self.row_weights.iter().zip(&cells) {
            s.push_str(&format!("{:>6} |", r.weight()));
            for x in row {
                s.push_str(&format!(" {x:>width$}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Linear extension of dominance: decreasing `|weight|`, positive first.
pub fn weight_order(n: usize) -> Vec<Bipartition> {
    let mut w = all_bipartitions(n);
    w.sort_by_key(|b| (-b.weight().abs(), -b.weight()));
    w
}

/// `[Δ(mu) : L(lambda)]_v` from the Kazhdan–Lusztig closed forms.
pub fn decomposition_number(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> Laurent {
    if mu == l {
        return Laurent::one();
    }
    if !linked(mu, l, g) {
        return Laurent::zero();
    }
    if is_wall(l.weight(), g) {
        let labels = singular_labels(l, g).expect("singular weight");
        return match labels.iter().position(|x| x == mu) {
            Some(k) => Laurent::v_pow(k as i32),
            None => Laurent::zero(),
        };
    }
    let wm = weyl_element_of(mu, g).expect("regular");
    let wl = weyl_element_of(l, g).expect("regular");
    kl_poly(&wm, &wl)
}

pub fn graded_decomposition_matrix(n: usize, g: &GeometryParams) -> GradedMultiplicityMatrix {
    let order = weight_order(n);
    let mut m = GradedMultiplicityMatrix::zero(order.clone(), order.clone());
    for mu in &order {
        for l in &order {
            m.set(mu, l, decomposition_number(mu, l, g));
        }
    }
    m
}

/// `Σ_{t ∈ Std(lambda)} v^{deg t}`.
pub fn graded_weyl_dim(l: &Bipartition, g: &GeometryParams) -> Laurent {
    let mut p = Laurent::zero();
    for t in enumerate_std(l) {
        p.add_term(word_degree(&t, g) as i32, BigInt::from(1));
    }
    p
}

/// `Σ_{t ∈ Std_lambda(mu)} v^{deg t}`, the graded dimension of `e(i^λ)Δ(μ)`.
pub fn truncated_weyl_dim(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> Laurent {
    let mut p = Laurent::zero();
    for t in linked_tableaux(mu, l, g) {
        p.add_term(tableau_degree(&t, g) as i32, BigInt::from(1));
    }
    p
}

/// Rows `P(lambda)`, columns `Δ(mu)`: `(P(λ):Δ(μ))_v = [Δ(μ):L(λ)]_v`.
pub fn projective_delta_multiplicities(n: usize, g: &GeometryParams) -> GradedMultiplicityMatrix {
    let d = graded_decomposition_matrix(n, g);
    let order = weight_order(n);
    let mut p = GradedMultiplicityMatrix::zero(order.clone(), order.clone());
    for l in &order {
        for mu in &order {
            p.set(l, mu, d.get(mu, l).clone());
        }
    }
    p
}

/// Rows `P(lambda)`, columns `L(nu)`.
pub fn graded_cartan_matrix(n: usize, g: &GeometryParams) -> GradedMultiplicityMatrix {
    let d = graded_decomposition_matrix(n, g);
    let p = projective_delta_multiplicities(n, g);
    let order = weight_order(n);
    let mut c = GradedMultiplicityMatrix::zero(order.clone(), order.clone());
    for l in &order {
        for nu in &order {
            let mut acc = Laurent::zero();
            for mu in &order {
                acc = &acc + &(p.get(l, mu) * d.get(mu, nu));
            }
            c.set(l, nu, acc);
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TiltingMode {
    Formula,
    Construction,
}

/// `(T(mu):Δ(lambda))_v` from the inverse Kazhdan–Lusztig closed forms.
fn tilting_formula_entry(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> Laurent {
    if mu == l {
        return Laurent::one();
    }
    if !linked(mu, l, g) {
        return Laurent::zero();
    }
    if is_wall(l.weight(), g) {
        let labels = singular_labels(l, g).expect("singular weight");
        return match labels.iter().position(|x| x == mu) {
            Some(k) => Laurent::v_pow(-(k as i32)),
            None => Laurent::zero(),
        };
    }
    let wm = weyl_element_of(mu, g).expect("regular");
    let wl = weyl_element_of(l, g).expect("regular");
    bar(&inverse_kl_poly(&wl, &wm))
}

/// Degree of the maximal tableau in `Std_lambda(mu)`.
fn top_degree(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> i32 {
    let t = max_degree_tableau(mu, l, g).expect("dominance holds inside the class");
    tableau_degree(&t, g) as i32
}

/// Character of the tilting module of the `⊴`-maximal weight of a class,
/// built from the projective cover of a minimal weight.
fn top_tilting_character(
    class: &[Bipartition],
    p: &GradedMultiplicityMatrix,
    g: &GeometryParams,
) -> (Bipartition, BTreeMap<Bipartition, Laurent>) {
    let (lmax, mins) = extremes(&class[0], g);
    let lmin = mins[0];
    let d = top_degree(&lmax, &lmin, g);
    let mut ch: BTreeMap<Bipartition, Laurent> = class
        .iter()
        .map(|nu| (*nu, p.get(&lmin, nu).shift(-d)))
        .collect();
    if is_paired(&lmin, g) {
        let partner = mins[1];
        let slot = ch.get_mut(&partner).expect("partner in class");
        *slot = &*slot + &Laurent::v_pow(-d);
    }
    (lmax, ch)
}

/// Rows `T(mu)`, columns `Δ(lambda)`.
pub fn tilting_delta_multiplicities(
    n: usize,
    g: &GeometryParams,
    mode: TiltingMode,
) -> GradedMultiplicityMatrix {
    let order = weight_order(n);
    let mut t = GradedMultiplicityMatrix::zero(order.clone(), order.clone());
    match mode {
        TiltingMode::Formula => {
            for mu in &order {
                for l in &order {
                    t.set(mu, l, tilting_formula_entry(mu, l, g));
                }
            }
        }
        TiltingMode::Construction => {
            let p = projective_delta_multiplicities(n, g);
            for class in linkage_classes(n, g) {
                let (lmax, top) = top_tilting_character(&class, &p, g);
                for l in &class {
                    // truncate to the weights below l and renormalise
                    let s = top_degree(&lmax, l, g);
                    for nu in &class {
                        if class_leq(nu, l, g).expect("same class") {
                            t.set(l, nu, top[nu].shift(s));
                        }
                    }
                }
            }
        }
    }
    t
}

/// Shift of the `O_{⊴λ}` truncation that restores `(T(λ):Δ(λ))_v = 1`.
pub fn restricted_tilting_shift(l: &Bipartition, g: &GeometryParams) -> Result<i32> {
    let n = l.n();
    let class: Vec<Bipartition> = linkage_class(l, g).bipartitions();
    let p = projective_delta_multiplicities(n, g);
    let (_, top) = top_tilting_character(&class, &p, g);
    let c = &top[l];
    c.as_v_power()
        .map(|k| -k)
        .ok_or_else(|| Error::Precondition(format!("(T(λmax):Δ({l})) = {c} is not a power of v")))
}

/// Distinct linkage classes of `Λ(n)`, each in decreasing weight order.
pub fn linkage_classes(n: usize, g: &GeometryParams) -> Vec<Vec<Bipartition>> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for b in weight_order(n) {
        if seen.contains(&b) {
            continue;
        }
        let class = linkage_class(&b, g).bipartitions();
        seen.extend(class.iter().copied());
        out.push(class);
    }
    out
}

/// Simple constituents of the socle of `P(lambda)` and their common shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleDescriptor {
    pub constituents: Vec<(Bipartition, i32)>,
}

pub fn socle_of_projective(l: &Bipartition, g: &GeometryParams) -> SocleDescriptor {
    let (lmax, mins) = extremes(l, g);
    let lmin = if mins.contains(l) { *l } else { mins[0] };
    let shift = 2 * top_degree(&lmax, l, g) + top_degree(l, &lmin, g);
    let mut constituents = vec![(lmin, shift)];
    if is_paired(&lmin, g) {
        let partner = *mins
            .iter()
            .find(|x| **x != lmin)
            .expect("paired weights come in twos");
        constituents.push((partner, shift));
    }
    SocleDescriptor { constituents }
}

/// Outer terms `(sub, quotient)` of the restriction of `Δ(lambda)` from
/// `n+1` to `n`, or the single term at the boundary.
pub fn restriction_delta_pair(l: &Bipartition) -> Vec<Bipartition> {
    let (a, b) = (l.first, l.second);
    if b == 0 {
        return vec![Bipartition::new(a - 1, 0)];
    }
    if a == 0 {
        return vec![Bipartition::new(0, b - 1)];
    }
    if a >= b {
        vec![Bipartition::new(a - 1, b), Bipartition::new(a, b - 1)]
    } else {
        vec![Bipartition::new(a, b - 1), Bipartition::new(a - 1, b)]
    }
}

/// `dim L(lambda)` for every weight, solving the unitriangular system.
pub fn simple_dimensions(n: usize, g: &GeometryParams) -> Result<BTreeMap<Bipartition, BigInt>> {
    let d = graded_decomposition_matrix(n, g).at_one();
    let order = weight_order(n);
    let mut dims: BTreeMap<Bipartition, BigInt> = BTreeMap::new();
    for (i, mu) in order.iter().enumerate() {
        let mut x = BigInt::from(enumerate_std(mu).len());
        for (j, l) in order.iter().enumerate().take(i) {
            x -= &d[i][j] * &dims[l];
        }
        for v in d[i].iter().skip(i + 1) {
            if !v.is_zero() {
                return Err(Error::Precondition(
                    "decomposition matrix is not unitriangular".into(),
                ));
            }
        }
        if !x.is_positive() {
            return Err(Error::Precondition(format!(
                "dim L({mu}) = {x} is not positive"
            )));
        }
        dims.insert(*mu, x);
    }
    Ok(dims)
}

/// Bruhat order check between two regular weights.
pub fn regular_leq(mu: &Bipartition, l: &Bipartition, g: &GeometryParams) -> Result<bool> {
    Ok(bruhat_leq(
        &weyl_element_of(mu, g)?,
        &weyl_element_of(l, g)?,
    ))
}
