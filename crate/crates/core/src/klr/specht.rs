//! Graded Specht modules of one-column bipartitions, built from a highest
//! weight vector and certified against every defining relation.

use super::module::{GradedModule, KlrModule};
use super::ops::{axpy, unit, QVec, SparseOp};
use crate::alcoves::GeometryParams;
use crate::error::{Error, Result};
use crate::exactmath::{solve_unique, Rational};
use crate::weights::{
    dominant_tableau, enumerate_std, psi_degree, reduced_word, residue_sequence, Bipartition,
    ResidueSeq, StdTableau, WordRule,
};
use num_traits::{One, Zero};
use std::collections::{HashMap, HashSet};

/// Stack size for the recursive straightening.
const STACK_BYTES: usize = 1 << 30;

/// Cap on straightening calls per module.
const STEP_BUDGET: usize = 200_000_000;

/// A cell module `Δ(λ)` with explicit generator matrices.
#[derive(Clone, Debug)]
pub struct SpechtModule {
    pub shape: Bipartition,
    pub geometry: GeometryParams,
    pub rule: WordRule,
    pub basis: Vec<StdTableau>,
    pub degrees: Vec<i64>,
    pub residues: Vec<ResidueSeq>,
    /// Reduced word of `d_t` (1-based letters) for each basis tableau.
    pub words: Vec<Vec<usize>>,
    /// `psi[r-1]` is the action of `psi_r`.
    pub psi: Vec<SparseOp>,
    /// `y[r-1]` is the action of `y_r`.
    pub y: Vec<SparseOp>,
    /// Position of the dominant tableau in `basis`.
    pub dominant: usize,
}

impl SpechtModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn index_of(&self, t: &StdTableau) -> Option<usize> {
        self.basis.iter().position(|x| x == t)
    }

    /// Projection onto basis vectors of residue sequence `i`.
    pub fn idempotent(&self, i: &[u32]) -> SparseOp {
        SparseOp::projection(self.dim(), |j| self.residues[j].0 == i)
    }

    /// Basis vector `v^t`.
    pub fn cellular_vector(&self, t: &StdTableau) -> Result<QVec> {
        self.index_of(t).map(unit).ok_or_else(|| {
            Error::Precondition(format!("{t} is not a tableau of shape {}", self.shape))
        })
    }

    pub fn apply_psi(&self, r: usize, v: &QVec) -> QVec {
        self.psi[r - 1].apply(v)
    }

    pub fn apply_y(&self, r: usize, v: &QVec) -> QVec {
        self.y[r - 1].apply(v)
    }
}

impl SpechtModule {
    pub fn to_graded(&self) -> GradedModule {
        GradedModule {
            label: self.label(),
            geometry: self.geometry,
            n: self.shape.n(),
            residues: self.residues.clone(),
            degrees: self.degrees.clone(),
            psi: self.psi.clone(),
            y: self.y.clone(),
        }
    }
}

impl KlrModule for SpechtModule {
    fn label(&self) -> String {
        format!("Δ{}", self.shape)
    }
    fn n(&self) -> usize {
        self.shape.n()
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

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Tok {
    P(u8),
    Y(u8),
}

/// Straightening state; indices `r` are 0-based (`r` means `psi_{r+1}`).
struct Builder {
    e: u32,
    tabs: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    res: Vec<Vec<u32>>,
    desc: Vec<Vec<usize>>,
    len: Vec<usize>,
    canon: Vec<Vec<usize>>,
    deg: Vec<i64>,
    wsp: HashMap<Vec<u32>, HashMap<i64, Vec<usize>>>,
    dom: usize,
    amemo: HashMap<(usize, usize), QVec>,
    inprog: HashSet<(usize, usize)>,
    nmemo: HashMap<Vec<Tok>, QVec>,
    steps: usize,
}

fn straightening(msg: String) -> Error {
    Error::Straightening(msg)
}

impl Builder {
    fn new(shape: &Bipartition, g: &GeometryParams, rule: WordRule) -> Self {
        let basis = enumerate_std(shape);
        let dom_t = dominant_tableau(shape);
        let n = shape.n();
        let mut b = Builder {
            e: g.e(),
            tabs: Vec::new(),
            index: HashMap::new(),
            res: Vec::new(),
            desc: Vec::new(),
            len: Vec::new(),
            canon: Vec::new(),
            deg: Vec::new(),
            wsp: HashMap::new(),
            dom: 0,
            amemo: HashMap::new(),
            inprog: HashSet::new(),
            nmemo: HashMap::new(),
            steps: 0,
        };
        for (i, t) in basis.iter().enumerate() {
            let comps = t.components().to_vec();
            let pos = t.book_positions();
            b.desc.push(
                (0..n.saturating_sub(1))
                    .filter(|r| pos[*r] > pos[r + 1])
                    .collect(),
            );
            b.len.push(
                (0..n)
                    .map(|x| (x + 1..n).filter(|y| pos[x] > pos[*y]).count())
                    .sum(),
            );
            b.res.push(residue_sequence(t, g).0);
            b.canon
                .push(reduced_word(t, rule).iter().map(|r| r - 1).collect());
            b.index.insert(comps.clone(), i);
            b.tabs.push(comps);
            if *t == dom_t {
                b.dom = i;
            }
        }
        let dom_res = b.res[b.dom].clone();
        for i in 0..basis.len() {
            let mut res = dom_res.clone();
            let mut d = 0;
            for r in b.canon[i].iter().rev() {
                d += psi_degree(&res, r + 1, b.e);
                res.swap(*r, r + 1);
            }
            debug_assert_eq!(res, b.res[i]);
            b.deg.push(d);
            b.wsp
                .entry(b.res[i].clone())
                .or_default()
                .entry(d)
                .or_default()
                .push(i);
        }
        b
    }

    fn occupied(&self, res: &[u32], d: i64) -> bool {
        self.wsp.get(res).is_some_and(|m| m.contains_key(&d))
    }

    fn swap(&self, t: usize, r: usize) -> usize {
        let mut c = self.tabs[t].clone();
        c.swap(r, r + 1);
        self.index[&c]
    }

    fn apply(&mut self, r: usize, v: &QVec) -> Result<QVec> {
        let mut out = QVec::new();
        for (t, c) in v {
            let a = self.act(r, *t)?;
            axpy(&mut out, c, &a);
        }
        Ok(out)
    }

    fn yact(&mut self, s: usize, t: usize) -> Result<QVec> {
        let mut w = vec![Tok::Y(s as u8)];
        w.extend(self.canon[t].iter().map(|r| Tok::P(*r as u8)));
        self.nw(&w)
    }

    /// A word applied to the highest weight vector.
    fn nw(&mut self, w: &[Tok]) -> Result<QVec> {
        if let Some(v) = self.nmemo.get(w) {
            return Ok(v.clone());
        }
        let mut res = self.res[self.dom].clone();
        let mut d = 0;
        let mut seq = vec![res.clone()];
        for tok in w.iter().rev() {
            match tok {
                Tok::P(r) => {
                    let r = *r as usize;
                    d += psi_degree(&res, r + 1, self.e);
                    res.swap(r, r + 1);
                }
                Tok::Y(_) => d += 2,
            }
            if !self.occupied(&res, d) {
                self.nmemo.insert(w.to_vec(), QVec::new());
                return Ok(QVec::new());
            }
            seq.push(res.clone());
        }
        let out = if let Some(k) = w.iter().rposition(|t| matches!(t, Tok::Y(_))) {
            let Tok::Y(s) = w[k] else { unreachable!() };
            if k == w.len() - 1 {
                QVec::new()
            } else {
                let Tok::P(r) = w[k + 1] else { unreachable!() };
                let j = &seq[w.len() - k - 2];
                let delta = j[r as usize] == j[r as usize + 1];
                let (pre, post) = (&w[..k], &w[k + 2..]);
                let join = |mid: &[Tok]| -> Vec<Tok> {
                    pre.iter().chain(mid).chain(post).copied().collect()
                };
                let mut out;
                if s != r && s != r + 1 {
                    out = self.nw(&join(&[Tok::P(r), Tok::Y(s)]))?;
                } else if s == r + 1 {
                    out = self.nw(&join(&[Tok::P(r), Tok::Y(r)]))?;
                    if delta {
                        let z = self.nw(&join(&[]))?;
                        axpy(&mut out, &-Rational::one(), &z);
                    }
                } else {
                    out = self.nw(&join(&[Tok::P(r), Tok::Y(r + 1)]))?;
                    if delta {
                        let z = self.nw(&join(&[]))?;
                        axpy(&mut out, &Rational::one(), &z);
                    }
                }
                out
            }
        } else if w.is_empty() {
            unit(self.dom)
        } else {
            let Tok::P(r) = w[0] else { unreachable!() };
            let rest = self.nw(&w[1..])?;
            self.apply(r as usize, &rest)?
        };
        self.nmemo.insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// `psi_r^2 v^t` from the quadratic relation.
    fn quad(&mut self, r: usize, t: usize) -> Result<QVec> {
        let (a, b) = (self.res[t][r], self.res[t][r + 1]);
        let e = self.e;
        let one = Rational::one();
        if a == b {
            Ok(QVec::new())
        } else if (a + 1) % e == b {
            let mut out = self.yact(r + 1, t)?;
            let z = self.yact(r, t)?;
            axpy(&mut out, &-one, &z);
            Ok(out)
        } else if (b + 1) % e == a {
            let mut out = self.yact(r, t)?;
            let z = self.yact(r + 1, t)?;
            axpy(&mut out, &-one, &z);
            Ok(out)
        } else {
            Ok(unit(t))
        }
    }

    fn braid_alpha(&self, a: usize, j: &[u32]) -> i64 {
        let e = self.e;
        if j[a + 2] == j[a] && (j[a] + 1) % e == j[a + 1] {
            -1
        } else if j[a + 2] == j[a] && (j[a + 1] + 1) % e == j[a] {
            1
        } else {
            0
        }
    }

    fn act(&mut self, r: usize, t: usize) -> Result<QVec> {
        if let Some(v) = self.amemo.get(&(r, t)) {
            return Ok(v.clone());
        }
        if !self.inprog.insert((r, t)) {
            return Err(straightening(format!(
                "cyclic dependency at psi_{} on tableau {:?}",
                r + 1,
                self.tabs[t]
            )));
        }
        self.steps += 1;
        if self.steps > STEP_BUDGET {
            return Err(straightening("step budget exceeded".into()));
        }
        let out = self.act_inner(r, t)?;
        self.inprog.remove(&(r, t));
        self.amemo.insert((r, t), out.clone());
        Ok(out)
    }

    /// Split `X = v^t + R`, checking the leading coefficient.
    fn leading(&self, mut x: QVec, t: usize, what: &str) -> Result<QVec> {
        if x.remove(&t) != Some(Rational::one()) {
            return Err(straightening(format!(
                "{what}: expected leading term on {:?}",
                self.tabs[t]
            )));
        }
        if let Some(u) = x.keys().find(|u| self.len[**u] >= self.len[t]) {
            return Err(straightening(format!(
                "{what}: correction {:?} is not shorter",
                self.tabs[*u]
            )));
        }
        Ok(x)
    }

    fn subtract_corrections(&mut self, out: &mut QVec, r: usize, rest: &QVec) -> Result<()> {
        for (w, c) in rest {
            let a = self.act(r, *w)?;
            axpy(out, &-c, &a);
        }
        Ok(())
    }

    fn act_inner(&mut self, r: usize, t: usize) -> Result<QVec> {
        let mut nres = self.res[t].clone();
        nres.swap(r, r + 1);
        let nd = self.deg[t] + psi_degree(&self.res[t], r + 1, self.e);
        if !self.occupied(&nres, nd) {
            return Ok(QVec::new());
        }
        let same_column = self.tabs[t][r] == self.tabs[t][r + 1];
        if t == self.dom {
            return Ok(if same_column {
                QVec::new()
            } else {
                unit(self.swap(t, r))
            });
        }
        let len = self.len[t];
        if self.desc[t].contains(&r) {
            // psi_r v^t = psi_r^2 v^{t2} minus corrections
            let t2 = self.swap(t, r);
            let x = self.act(r, t2)?;
            let rest = self.leading(x, t, "descent")?;
            let mut out = self.quad(r, t2)?;
            self.subtract_corrections(&mut out, r, &rest)?;
            return Ok(out);
        }
        if !same_column {
            let u = self.swap(t, r);
            let rho = self.canon[u][0];
            if rho == r {
                return Ok(unit(u));
            }
            if rho.abs_diff(r) > 1 {
                let t3 = self.swap(t, rho);
                let x = self.act(rho, t3)?;
                let rest = self.leading(x, t, "commuting")?;
                let inner = self.act(r, t3)?;
                let mut out = self.apply(rho, &inner)?;
                self.subtract_corrections(&mut out, r, &rest)?;
                return Ok(out);
            }
            let t5 = self.swap(t, rho);
            let t4 = self.swap(t5, r);
            if self.len[t4] + 2 != len {
                return Err(straightening(format!(
                    "braid reduction failed on {:?}",
                    self.tabs[t]
                )));
            }
            let inner = self.act(r, t4)?;
            let x = self.apply(rho, &inner)?;
            let rest = self.leading(x, t, "braid")?;
            let a = r.min(rho);
            let alpha = self.braid_alpha(a, &self.res[t4].clone());
            let sign = if r == a { 1 } else { -1 };
            let inner = self.act(rho, t4)?;
            let mid = self.apply(r, &inner)?;
            let mut out = self.apply(rho, &mid)?;
            if alpha != 0 {
                axpy(
                    &mut out,
                    &Rational::from_integer((sign * alpha).into()),
                    &unit(t4),
                );
            }
            self.subtract_corrections(&mut out, r, &rest)?;
            return Ok(out);
        }
        // r, r+1 in one column: psi_r v^t is fixed by psi_r^2 = y_r - y_{r+1}
        let j = &self.res[t];
        if (j[r + 1] + 1) % self.e != j[r] {
            return Err(straightening(format!("unexpected residues {j:?} at {r}")));
        }
        let cands = self.wsp[&nres][&nd].clone();
        let mut target = self.yact(r, t)?;
        let z = self.yact(r + 1, t)?;
        axpy(&mut target, &-Rational::one(), &z);
        let mut cols = Vec::with_capacity(cands.len());
        for s in &cands {
            cols.push(self.act(r, *s)?);
        }
        let x = solve_unique(&cols, &target)
            .map_err(|e| straightening(format!("psi_{} on {:?}: {e}", r + 1, self.tabs[t])))?;
        Ok(x.into_iter().map(|(i, c)| (cands[i], c)).collect())
    }
}

/// Build `Δ(λ)` with the canonical (smallest descent) reduced words.
pub fn build_specht(shape: &Bipartition, g: &GeometryParams) -> Result<SpechtModule> {
    build_specht_with(shape, g, WordRule::SmallestDescent)
}

/// Build and validate `Δ(λ)` using the given reduced-word rule.
pub fn build_specht_with(
    shape: &Bipartition,
    g: &GeometryParams,
    rule: WordRule,
) -> Result<SpechtModule> {
    let (shape, g) = (*shape, *g);
    let m = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || construct(&shape, &g, rule))
        .map_err(|e| straightening(format!("cannot spawn worker: {e}")))?
        .join()
        .map_err(|_| straightening("straightening worker panicked".into()))??;
    super::relations::validate(&m)?;
    Ok(m)
}

fn construct(shape: &Bipartition, g: &GeometryParams, rule: WordRule) -> Result<SpechtModule> {
    let n = shape.n();
    let mut b = Builder::new(shape, g, rule);
    let dim = b.tabs.len();
    let mut psi = Vec::new();
    for r in 0..n.saturating_sub(1) {
        let mut op = SparseOp::zero(dim);
        for t in 0..dim {
            op.cols[t] = b.act(r, t)?;
        }
        psi.push(op);
    }
    let mut y = Vec::new();
    for s in 0..n {
        let mut op = SparseOp::zero(dim);
        for t in 0..dim {
            op.cols[t] = b.yact(s, t)?;
        }
        y.push(op);
    }
    for op in psi.iter().chain(&y) {
        for col in &op.cols {
            debug_assert!(col.values().all(|c| !c.is_zero()));
        }
    }
    let basis = enumerate_std(shape);
    Ok(SpechtModule {
        shape: *shape,
        geometry: *g,
        rule,
        residues: b.res.iter().map(|r| ResidueSeq(r.clone())).collect(),
        degrees: b.deg.clone(),
        words: b
            .canon
            .iter()
            .map(|w| w.iter().map(|r| r + 1).collect())
            .collect(),
        basis,
        psi,
        y,
        dominant: b.dom,
    })
}
