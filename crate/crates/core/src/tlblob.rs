//! The classical blob algebra on decorated Temperley–Lieb diagrams over a
//! cyclotomic field, with its cell modules, Gram forms and an independent
//! computation of decomposition numbers.
//!
//! Points `0..n` lie on the top edge and `n..2n` on the bottom edge, both
//! numbered from the left wall. `U_0` puts a blob on the first strand and
//! `U_r` joins strands `r` and `r + 1` by a cap and a cup.

use crate::alcoves::GeometryParams;
use crate::characters::weight_order;
use crate::error::{Error, Result};
use crate::exactmath::{
    inverse, pivot_columns, quantum_integer, rank, solve_unique, Cyclotomic, ExactMatrix, Field,
    Rational, SparseVec,
};
use crate::weights::Bipartition;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Parameters of the classical presentation with bicharge `(0, m)`.
#[derive(Clone, Debug)]
pub struct BlobParams {
    pub e: u32,
    pub m: u32,
    /// A primitive `e'`th root of unity.
    pub q: Cyclotomic,
    /// Value of a closed loop without blobs, `−[2]`.
    pub loop_plain: Cyclotomic,
    /// Factor for two blobs merging on one line, `−[m]`.
    pub merge: Cyclotomic,
    /// Value of a closed loop carrying one blob, `[m+1]`.
    pub loop_blob: Cyclotomic,
}

impl BlobParams {
    /// `q` is the canonical generator of `Q[x]/(Φ_{e'}(x))`.
    pub fn new(e: u32, m: u32) -> Result<Self> {
        Self::with_root(e, m, 1)
    }

    /// `q = ζ^k` for the canonical generator `ζ`; `k` must be prime to `e'`.
    pub fn with_root(e: u32, m: u32, k: u32) -> Result<Self> {
        if !(1 < m && m + 1 < e) {
            return Err(Error::InvalidParams(format!(
                "need 1 < m < e - 1, got e={e}, m={m}"
            )));
        }
        let c = if e.is_multiple_of(2) { 2 * e } else { e };
        if k.gcd(&c) != 1 {
            return Err(Error::InvalidParams(format!(
                "ζ^{k} is not a primitive {c}th root"
            )));
        }
        let q = Cyclotomic::generator(c).pow(k.into());
        let qi = |k: u32| quantum_integer(k.into(), &q);
        Ok(BlobParams {
            e,
            m,
            loop_plain: qi(2).neg_ref(),
            merge: qi(m).neg_ref(),
            loop_blob: qi(m + 1),
            q,
        })
    }

    /// The order `e'` of `q`.
    pub fn conductor(&self) -> u32 {
        self.q.conductor()
    }

    /// The KLR geometry with the same parameters, `κ = (0, m)`.
    pub fn geometry(&self) -> Result<GeometryParams> {
        GeometryParams::new(self.e, 0, self.m)
    }

    pub fn one(&self) -> Cyclotomic {
        self.q.one_like()
    }

    pub fn zero(&self) -> Cyclotomic {
        self.q.zero_like()
    }

    /// Scalar for a line carrying `k ≥ 1` blobs, relative to a single blob.
    fn merged(&self, k: usize) -> Cyclotomic {
        self.merge.pow(k as i64 - 1)
    }

    /// Scalar of a closed loop carrying `k` blobs.
    fn closed_loop(&self, k: usize) -> Cyclotomic {
        if k == 0 {
            self.loop_plain.clone()
        } else {
            self.merged(k).mul_ref(&self.loop_blob)
        }
    }
}

/// Position of a point when walking clockwise round the boundary from the
/// top left corner; the left wall sits between `2n − 1` and `0`.
fn cyclic_position(n: usize, p: usize) -> usize {
    if p < n {
        p
    } else {
        3 * n - 1 - p
    }
}

/// A non-crossing pairing of `2n` points with blobs on some chords.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlobDiagram {
    n: usize,
    partner: Vec<usize>,
    /// Set on both endpoints of a blobbed chord.
    blob: Vec<bool>,
}

#[derive(Serialize)]
struct DiagramJson {
    pairing: Vec<[usize; 2]>,
    blobs: Vec<usize>,
}

impl BlobDiagram {
    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n)
            .map(|p| if p < n { p + n } else { p - n })
            .collect();
        BlobDiagram {
            n,
            partner,
            blob: vec![false; 2 * n],
        }
    }

    /// `U_r`: `U_0` is the blob on strand 1, `U_r` the cup-cap at `r, r + 1`.
    pub fn generator(n: usize, r: usize) -> Result<Self> {
        let mut d = Self::identity(n);
        if r == 0 {
            if n == 0 {
                return Err(Error::InvalidParams("U_0 needs n >= 1".into()));
            }
            d.blob[0] = true;
            d.blob[n] = true;
        } else if r < n {
            let (a, b) = (r - 1, r);
            d.partner[a] = b;
            d.partner[b] = a;
            d.partner[a + n] = b + n;
            d.partner[b + n] = a + n;
        } else {
            return Err(Error::InvalidParams(format!(
                "U_{r} out of range for n = {n}"
            )));
        }
        Ok(d)
    }

    /// Build from chords and the indices of blobbed chords; validated.
    pub fn from_pairing(n: usize, pairing: &[[usize; 2]], blobs: &[usize]) -> Result<Self> {
        let bad = |s: &str| Error::InvalidParams(format!("not a blob diagram: {s}"));
        let mut partner = vec![usize::MAX; 2 * n];
        for [a, b] in pairing {
            if *a >= 2 * n || *b >= 2 * n || a == b {
                return Err(bad("point out of range"));
            }
            if partner[*a] != usize::MAX || partner[*b] != usize::MAX {
                return Err(bad("point used twice"));
            }
            partner[*a] = *b;
            partner[*b] = *a;
        }
        if partner.contains(&usize::MAX) {
            return Err(bad("unpaired point"));
        }
        let mut blob = vec![false; 2 * n];
        for k in blobs {
            let [a, b] = pairing
                .get(*k)
                .ok_or_else(|| bad("blob on a missing chord"))?;
            blob[*a] = true;
            blob[*b] = true;
        }
        let d = BlobDiagram { n, partner, blob };
        d.validate()?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Chords as `[a, b]` with `a < b`, sorted.
    pub fn pairing(&self) -> Vec<[usize; 2]> {
        (0..2 * self.n)
            .filter(|p| *p < self.partner[*p])
            .map(|p| [p, self.partner[p]])
            .collect()
    }

    /// Indices into [`Self::pairing`] of blobbed chords.
    pub fn blobs(&self) -> Vec<usize> {
        self.pairing()
            .iter()
            .enumerate()
            .filter(|(_, [a, _])| self.blob[*a])
            .map(|(k, _)| k)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson {
            pairing: self.pairing(),
            blobs: self.blobs(),
        })
        .expect("diagram serializes")
    }

    fn chord_interval(&self, p: usize) -> (usize, usize) {
        let a = cyclic_position(self.n, p);
        let b = cyclic_position(self.n, self.partner[p]);
        (a.min(b), a.max(b))
    }

    /// Per point: does its chord touch the region next to the left wall?
    pub fn exposed(&self) -> Vec<bool> {
        let ivs: Vec<(usize, usize)> = (0..2 * self.n).map(|p| self.chord_interval(p)).collect();
        ivs.iter()
            .map(|(a, b)| !ivs.iter().any(|(c, d)| c < a && b < d))
            .collect()
    }

    /// Non-crossing, and blobs only on chords next to the left wall.
    pub fn validate(&self) -> Result<()> {
        let ivs: Vec<(usize, usize)> = (0..2 * self.n).map(|p| self.chord_interval(p)).collect();
        for (a, b) in &ivs {
            for (c, d) in &ivs {
                if a < c && c < b && b < d {
                    return Err(Error::InvalidParams("crossing chords".into()));
                }
            }
        }
        for (p, exposed) in self.exposed().into_iter().enumerate() {
            if self.blob[p] != self.blob[self.partner[p]] {
                return Err(Error::InvalidParams("blob on one end of a chord".into()));
            }
            if self.blob[p] && !exposed {
                return Err(Error::InvalidParams(
                    "blob on a chord away from the wall".into(),
                ));
            }
        }
        Ok(())
    }

    /// Upside-down diagram.
    pub fn flip(&self) -> Self {
        let n = self.n;
        let swap = |p: usize| if p < n { p + n } else { p - n };
        let mut partner = vec![0; 2 * n];
        let mut blob = vec![false; 2 * n];
        for p in 0..2 * n {
            partner[swap(p)] = swap(self.partner[p]);
            blob[swap(p)] = self.blob[p];
        }
        BlobDiagram { n, partner, blob }
    }

    /// `self · o` with `self` on top: the scalar from closed loops and
    /// merged blobs, and the resulting diagram.
    pub fn compose(&self, o: &Self, p: &BlobParams) -> Result<(Cyclotomic, BlobDiagram)> {
        if self.n != o.n {
            return Err(Error::InvalidParams(
                "diagrams on different numbers of strands".into(),
            ));
        }
        let n = self.n;
        let mut partner = vec![usize::MAX; 2 * n];
        let mut blob = vec![false; 2 * n];
        let mut coeff = p.one();
        let mut seen_mid = vec![false; n];
        for start in 0..2 * n {
            if partner[start] != usize::MAX {
                continue;
            }
            let (mut top_layer, mut pt) = (start < n, start);
            let mut k = 0;
            let end = loop {
                let d = if top_layer { self } else { o };
                let q = d.partner[pt];
                k += usize::from(d.blob[pt]);
                if top_layer && q < n || !top_layer && q >= n {
                    break q;
                }
                if top_layer {
                    seen_mid[q - n] = true;
                    pt = q - n;
                } else {
                    seen_mid[q] = true;
                    pt = q + n;
                }
                top_layer = !top_layer;
            };
            partner[start] = end;
            partner[end] = start;
            if k > 0 {
                blob[start] = true;
                blob[end] = true;
                coeff = coeff.mul_ref(&p.merged(k));
            }
        }
        for j in 0..n {
            if seen_mid[j] {
                continue;
            }
            let mut k = 0;
            let mut cur = j;
            loop {
                seen_mid[cur] = true;
                let up = o.partner[cur];
                k += usize::from(o.blob[cur]);
                seen_mid[up] = true;
                let down = self.partner[up + n];
                k += usize::from(self.blob[up + n]);
                cur = down - n;
                if cur == j {
                    break;
                }
            }
            coeff = coeff.mul_ref(&p.closed_loop(k));
        }
        let d = BlobDiagram { n, partner, blob };
        d.validate()
            .map_err(|e| Error::RelationViolated(format!("product left the diagram basis: {e}")))?;
        Ok((coeff, d))
    }
}

/// Non-crossing perfect matchings of positions `lo..hi`.
fn matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (lo + 1..hi).step_by(2) {
        for inner in matchings(lo + 1, k) {
            for outer in matchings(k + 1, hi) {
                let mut m = vec![(lo, k)];
                m.extend(inner.iter().copied());
                m.extend(outer.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

/// Every blob diagram on `n` strands, sorted.
pub fn enumerate_basis(n: usize) -> Vec<BlobDiagram> {
    let mut out = BTreeSet::new();
    for m in matchings(0, 2 * n) {
        let mut plain = BlobDiagram {
            n,
            partner: vec![0; 2 * n],
            blob: vec![false; 2 * n],
        };
        for (a, b) in m {
            let (pa, pb) = (cyclic_position(n, a), cyclic_position(n, b));
            plain.partner[pa] = pb;
            plain.partner[pb] = pa;
        }
        let exposed = plain.exposed();
        let free: Vec<usize> = (0..2 * n)
            .filter(|p| *p < plain.partner[*p] && exposed[*p])
            .collect();
        for mask in 0..1u64 << free.len() {
            let mut d = plain.clone();
            for (bit, p) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    d.blob[*p] = true;
                    d.blob[d.partner[*p]] = true;
                }
            }
            out.insert(d);
        }
    }
    out.into_iter().collect()
}

/// A linear combination of blob diagrams.
#[derive(Clone, Debug, PartialEq)]
pub struct BlobElement {
    pub n: usize,
    terms: BTreeMap<BlobDiagram, Cyclotomic>,
}

impl BlobElement {
    pub fn zero(n: usize) -> Self {
        BlobElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn diagram(d: BlobDiagram, p: &BlobParams) -> Self {
        let n = d.n;
        BlobElement {
            n,
            terms: BTreeMap::from([(d, p.one())]),
        }
    }

    pub fn generator(n: usize, r: usize, p: &BlobParams) -> Result<Self> {
        Ok(Self::diagram(BlobDiagram::generator(n, r)?, p))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BlobDiagram, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, d: BlobDiagram, c: Cyclotomic) {
        let v = match self.terms.remove(&d) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if !v.is_zero_elem() {
            self.terms.insert(d, v);
        }
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, o: &Self, c: &Cyclotomic) -> Self {
        let mut x = self.clone();
        for (d, v) in &o.terms {
            x.add_term(d.clone(), v.mul_ref(c));
        }
        x
    }

    pub fn mul(&self, o: &Self, p: &BlobParams) -> Result<Self> {
        let mut x = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let (s, d) = a.compose(b, p)?;
                x.add_term(d, s.mul_ref(ca).mul_ref(cb));
            }
        }
        Ok(x)
    }

    /// Product of generators `U_{w_1} ⋯ U_{w_k}`.
    pub fn word(n: usize, w: &[usize], p: &BlobParams) -> Result<Self> {
        let mut x = Self::diagram(BlobDiagram::identity(n), p);
        for r in w {
            x = x.mul(&Self::generator(n, *r, p)?, p)?;
        }
        Ok(x)
    }
}

/// Check every relation of the classical presentation on `n` strands;
/// returns the number of relation instances checked.
pub fn check_relations(n: usize, p: &BlobParams) -> Result<usize> {
    let u = |w: &[usize]| BlobElement::word(n, w, p);
    let mut count = 0;
    let mut expect = |name: String, lhs: BlobElement, rhs: BlobElement| -> Result<()> {
        count += 1;
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::RelationViolated(format!("{name} on {n} strands")))
        }
    };
    let neg2 = p.loop_plain.clone();
    for r in 1..n {
        expect(
            format!("U_{r}^2 = -[2] U_{r}"),
            u(&[r, r])?,
            u(&[r])?.scaled(&neg2),
        )?;
        for s in [r.wrapping_sub(1), r + 1] {
            if (1..n).contains(&s) {
                expect(
                    format!("U_{r} U_{s} U_{r} = U_{r}"),
                    u(&[r, s, r])?,
                    u(&[r])?,
                )?;
            }
        }
    }
    for r in 0..n {
        for s in 0..n {
            if r.abs_diff(s) > 1 {
                expect(
                    format!("U_{r} U_{s} = U_{s} U_{r}"),
                    u(&[r, s])?,
                    u(&[s, r])?,
                )?;
            }
        }
    }
    if n >= 2 {
        expect(
            "U_1 U_0 U_1 = [m+1] U_1".into(),
            u(&[1, 0, 1])?,
            u(&[1])?.scaled(&p.loop_blob),
        )?;
    }
    if n >= 1 {
        expect(
            "U_0^2 = -[m] U_0".into(),
            u(&[0, 0])?,
            u(&[0])?.scaled(&p.merge),
        )?;
    }
    Ok(count)
}

impl BlobElement {
    pub fn scaled(&self, c: &Cyclotomic) -> Self {
        Self::zero(self.n).add_scaled(self, c)
    }
}

/// Decoration of the leftmost through line of a cell module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mark {
    /// No through lines.
    None,
    /// The leftmost line carries a blob.
    Blob,
    /// The leftmost line carries the complementary idempotent `−[m] − U_0`,
    /// which kills every further blob.
    AntiBlob,
}

/// A half diagram: arcs among `n` points and through lines (`None`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfDiagram {
    pub partner: Vec<Option<usize>>,
    pub blob: Vec<bool>,
}

impl HalfDiagram {
    pub fn defects(&self) -> usize {
        self.partner.iter().filter(|p| p.is_none()).count()
    }
}

fn half_shapes(n: usize, t: usize) -> Vec<Vec<Option<usize>>> {
    fn go(
        pos: usize,
        n: usize,
        left: usize,
        stack: &mut Vec<usize>,
        cur: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if pos == n {
            if stack.is_empty() && left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if stack.len() + 1 < n - pos {
            stack.push(pos);
            go(pos + 1, n, left, stack, cur, out);
            stack.pop();
        }
        if let Some(a) = stack.pop() {
            cur[a] = Some(pos);
            cur[pos] = Some(a);
            go(pos + 1, n, left, stack, cur, out);
            cur[a] = None;
            cur[pos] = None;
            stack.push(a);
        }
        if stack.is_empty() && left > 0 {
            go(pos + 1, n, left - 1, stack, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, n, t, &mut Vec::new(), &mut vec![None; n], &mut out);
    out
}

/// Per point: is the arc at the top level and left of every through line?
fn half_exposed(partner: &[Option<usize>]) -> Vec<bool> {
    let n = partner.len();
    let first_defect = partner.iter().position(|p| p.is_none()).unwrap_or(n);
    let mut out = vec![false; n];
    let mut depth = 0usize;
    for a in 0..n {
        match partner[a] {
            Some(b) if b > a => {
                if depth == 0 && a < first_defect {
                    out[a] = true;
                    out[b] = true;
                }
                depth += 1;
            }
            Some(_) => depth -= 1,
            None => {}
        }
    }
    out
}

/// The cell module of the classical blob algebra for a classical weight.
#[derive(Clone, Debug)]
pub struct BlobCellModule {
    pub n: usize,
    pub weight: i64,
    pub defects: usize,
    pub mark: Mark,
    pub basis: Vec<HalfDiagram>,
    index: HashMap<HalfDiagram, usize>,
    params: BlobParams,
}

/// Outcome of tracing a path that ends on a through line.
struct LinePath {
    start: usize,
    blobs: usize,
}

impl BlobCellModule {
    /// Weight `w > 0` has a blobbed leftmost line, `w < 0` an anti-blobbed one.
    pub fn new(w: i64, n: usize, p: &BlobParams) -> Result<Self> {
        let ni = n as i64;
        if w.abs() > ni || (ni - w).rem_euclid(2) != 0 {
            return Err(Error::InvalidParams(format!(
                "no cell module of weight {w} on {n} strands"
            )));
        }
        let t = w.unsigned_abs() as usize;
        let mark = match w.signum() {
            0 => Mark::None,
            1 => Mark::Blob,
            _ => Mark::AntiBlob,
        };
        let mut basis = Vec::new();
        for partner in half_shapes(n, t) {
            let exposed = half_exposed(&partner);
            let free: Vec<usize> = (0..n)
                .filter(|a| exposed[*a] && partner[*a].is_some_and(|b| b > *a))
                .collect();
            for mask in 0..1u64 << free.len() {
                let mut blob = vec![false; n];
                for (bit, a) in free.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        blob[*a] = true;
                        blob[partner[*a].expect("arc")] = true;
                    }
                }
                basis.push(HalfDiagram {
                    partner: partner.clone(),
                    blob,
                });
            }
        }
        basis.sort();
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, h)| (h, k))
            .collect();
        Ok(BlobCellModule {
            n,
            weight: w,
            defects: t,
            mark,
            basis,
            index,
            params: p.clone(),
        })
    }

    /// The module for a bipartition, via its classical weight.
    pub fn for_bipartition(l: &Bipartition, p: &BlobParams) -> Result<Self> {
        Self::new(l.weight(), l.n(), p)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Scalar picked up by the leftmost line carrying `k` further blobs;
    /// `None` when the result vanishes.
    fn line_factor(&self, k: usize) -> Option<Cyclotomic> {
        match (self.mark, k) {
            (_, 0) => Some(self.params.one()),
            (Mark::Blob, k) => Some(self.params.merge.pow(k as i64)),
            _ => None,
        }
    }

    /// `d · basis[h]`: `None` if zero, otherwise the basis index and scalar.
    pub fn act(&self, d: &BlobDiagram, h: usize) -> Result<Option<(usize, Cyclotomic)>> {
        let n = self.n;
        if d.n != n {
            return Err(Error::InvalidParams(
                "diagram size does not match the module".into(),
            ));
        }
        let p = &self.params;
        let hd = &self.basis[h];
        let mut partner = vec![None; n];
        let mut blob = vec![false; n];
        let mut coeff = p.one();
        let mut seen = vec![false; n];
        let mut lines = Vec::new();
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut pt = start;
            let mut k = 0;
            let end = loop {
                let q = d.partner[pt];
                k += usize::from(d.blob[pt]);
                if q < n {
                    break Some(q);
                }
                let j = q - n;
                seen[j] = true;
                match hd.partner[j] {
                    None => break None,
                    Some(j2) => {
                        k += usize::from(hd.blob[j]);
                        seen[j2] = true;
                        pt = j2 + n;
                    }
                }
            };
            done[start] = true;
            match end {
                Some(q) => {
                    done[q] = true;
                    partner[start] = Some(q);
                    partner[q] = Some(start);
                    if k > 0 {
                        blob[start] = true;
                        blob[q] = true;
                        coeff = coeff.mul_ref(&p.merged(k));
                    }
                }
                None => lines.push(LinePath { start, blobs: k }),
            }
        }
        if lines.len() < self.defects {
            return Ok(None);
        }
        for (i, l) in lines.iter().enumerate() {
            if i == 0 {
                match self.line_factor(l.blobs) {
                    Some(c) => coeff = coeff.mul_ref(&c),
                    None => return Ok(None),
                }
            } else if l.blobs > 0 {
                return Err(Error::RelationViolated(format!(
                    "blob reached through line at {}",
                    l.start
                )));
            }
        }
        for j in 0..n {
            if seen[j] || hd.partner[j].is_none() {
                continue;
            }
            let mut k = 0;
            let mut cur = j;
            loop {
                seen[cur] = true;
                let j2 = hd.partner[cur].expect("arc in a closed loop");
                k += usize::from(hd.blob[cur]);
                seen[j2] = true;
                let q = d.partner[j2 + n];
                k += usize::from(d.blob[j2 + n]);
                cur = q - n;
                if cur == j {
                    break;
                }
            }
            coeff = coeff.mul_ref(&p.closed_loop(k));
        }
        let result = HalfDiagram { partner, blob };
        let idx = self
            .index
            .get(&result)
            .ok_or_else(|| Error::RelationViolated("product left the half-diagram basis".into()))?;
        Ok(Some((*idx, coeff)))
    }

    /// Matrix of a diagram on the module; column `j` is the image of `basis[j]`.
    pub fn action_matrix(&self, d: &BlobDiagram) -> Result<ExactMatrix<Cyclotomic>> {
        let mut m = ExactMatrix::new(self.dim(), self.dim());
        for j in 0..self.dim() {
            if let Some((i, c)) = self.act(d, j)? {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// Matrix of an element.
    pub fn element_matrix(&self, x: &BlobElement) -> Result<ExactMatrix<Cyclotomic>> {
        let mut acc: BTreeMap<(usize, usize), Cyclotomic> = BTreeMap::new();
        for (d, c) in x.terms() {
            for j in 0..self.dim() {
                if let Some((i, v)) = self.act(d, j)? {
                    let t = v.mul_ref(c);
                    let slot = acc.entry((i, j)).or_insert_with(|| self.params.zero());
                    *slot = slot.add_ref(&t);
                }
            }
        }
        let mut m = ExactMatrix::new(self.dim(), self.dim());
        for ((i, j), v) in acc {
            m.set(i, j, v);
        }
        Ok(m)
    }

    /// The cellular pairing of two basis vectors: glue them along their
    /// points; lines must join up in order, and the leftmost line's two
    /// marks contribute nothing beyond the blobs in between.
    pub fn pairing(&self, a: usize, b: usize) -> Cyclotomic {
        let p = &self.params;
        let (x, y) = (&self.basis[a], &self.basis[b]);
        let n = self.n;
        let mut seen = vec![false; n];
        let mut coeff = p.one();
        let mut first = true;
        for d in 0..n {
            if x.partner[d].is_some() {
                continue;
            }
            seen[d] = true;
            let mut k = 0;
            let mut cur = d;
            loop {
                match y.partner[cur] {
                    None => break,
                    Some(c2) => {
                        k += usize::from(y.blob[cur]);
                        seen[c2] = true;
                        match x.partner[c2] {
                            None => return p.zero(),
                            Some(c3) => {
                                k += usize::from(x.blob[c2]);
                                seen[c3] = true;
                                cur = c3;
                            }
                        }
                    }
                }
            }
            if first {
                match self.line_factor(k) {
                    Some(c) => coeff = coeff.mul_ref(&c),
                    None => return p.zero(),
                }
                first = false;
            } else if k > 0 {
                return p.zero();
            }
        }
        for j in 0..n {
            if seen[j] {
                continue;
            }
            let mut k = 0;
            let mut cur = j;
            loop {
                seen[cur] = true;
                let c2 = y.partner[cur].expect("closed loop");
                k += usize::from(y.blob[cur]);
                seen[c2] = true;
                let c3 = x.partner[c2].expect("closed loop");
                k += usize::from(x.blob[c2]);
                cur = c3;
                if cur == j {
                    break;
                }
            }
            coeff = coeff.mul_ref(&p.closed_loop(k));
        }
        coeff
    }

    pub fn gram(&self) -> ExactMatrix<Cyclotomic> {
        let mut g = ExactMatrix::new(self.dim(), self.dim());
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                g.set(a, b, self.pairing(a, b));
            }
        }
        g
    }
}

/// A cell module with the data needed for traces on its simple head.
struct SimpleHead {
    module: BlobCellModule,
    gram: ExactMatrix<Cyclotomic>,
    /// Indices of a nonsingular principal block of the Gram matrix.
    support: Vec<usize>,
    /// Inverse of that block.
    block_inverse: ExactMatrix<Cyclotomic>,
}

impl SimpleHead {
    fn new(module: BlobCellModule) -> Result<Self> {
        let gram = module.gram();
        let support = pivot_columns(&gram)?;
        let mut block = ExactMatrix::new(support.len(), support.len());
        for (a, s) in support.iter().enumerate() {
            for (b, t) in support.iter().enumerate() {
                if let Some(v) = gram.get(*s, *t) {
                    block.set(a, b, v.clone());
                }
            }
        }
        let block_inverse = inverse(&block)?;
        Ok(SimpleHead {
            module,
            gram,
            support,
            block_inverse,
        })
    }

    fn trace(
        &self,
        x: &BlobElement,
        f: fn(&Self, &BlobDiagram) -> Result<Cyclotomic>,
    ) -> Result<Cyclotomic> {
        let mut t = self.module.params.zero();
        for (d, c) in x.terms() {
            t = t.add_ref(&f(self, d)?.mul_ref(c));
        }
        Ok(t)
    }

    fn trace_cell(&self, d: &BlobDiagram) -> Result<Cyclotomic> {
        let mut t = self.module.params.zero();
        for j in 0..self.module.dim() {
            if let Some((i, c)) = self.module.act(d, j)? {
                if i == j {
                    t = t.add_ref(&c);
                }
            }
        }
        Ok(t)
    }

    /// Trace on `Δ/rad`, realized as the image of the Gram map.
    fn trace_simple(&self, d: &BlobDiagram) -> Result<Cyclotomic> {
        let mut t = self.module.params.zero();
        for (ci, c) in self.support.iter().enumerate() {
            let Some((img, v)) = self.module.act(d, *c)? else {
                continue;
            };
            for (si, s) in self.support.iter().enumerate() {
                if let (Some(m), Some(g)) = (self.block_inverse.get(ci, si), self.gram.get(*s, img))
                {
                    t = t.add_ref(&m.mul_ref(g).mul_ref(&v));
                }
            }
        }
        Ok(t)
    }
}

/// Dimension of a cell module and the rank of its Gram matrix, per weight
/// in the fixed weight order.
pub fn gram_ranks(n: usize, p: &BlobParams) -> Result<Vec<(Bipartition, usize, usize)>> {
    weight_order(n)
        .into_iter()
        .map(|l| {
            let m = BlobCellModule::for_bipartition(&l, p)?;
            Ok((l, m.dim(), rank(&m.gram())?))
        })
        .collect()
}

/// A product of `n + 1` elements `U_r + q` and `U_0 + 1`, with
/// `r` drawn from a fixed linear congruential sequence.
fn hecke_word(n: usize, p: &BlobParams, seed: &mut u64) -> Result<BlobElement> {
    let one = BlobElement::diagram(BlobDiagram::identity(n), p);
    let mut x = one.clone();
    for _ in 0..=n {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let r = (*seed >> 33) as usize % n;
        let shift = if r == 0 { p.one() } else { p.q.clone() };
        let g = BlobElement::generator(n, r, p)?.add_scaled(&one, &shift);
        x = x.mul(&g, p)?;
    }
    Ok(x)
}

fn as_integer(c: &Cyclotomic) -> Option<i64> {
    let co = c.coeffs();
    if co.iter().skip(1).any(|x| !x.is_zero()) {
        return None;
    }
    let v = co.first().cloned().unwrap_or_else(Rational::zero);
    if !v.is_integer() || v.abs() > Rational::from_integer(i64::MAX.into()) {
        return None;
    }
    i64::try_from(v.to_integer()).ok()
}

/// Ungraded decomposition numbers `[Δ(μ):L(λ)]`, rows `μ` and columns `λ` in
/// the fixed weight order. The simple heads are `Δ/rad` of the Gram form;
/// multiplicities come from `χ_Δ(μ) = Σ_λ [Δ(μ):L(λ)] χ_L(λ)` on enough
/// diagrams to separate the simple characters (the trace of the identity
/// gives the dimension equation).
pub fn decomposition_from_gram(n: usize, p: &BlobParams) -> Result<Vec<Vec<i64>>> {
    let order = weight_order(n);
    let heads = order
        .iter()
        .map(|l| SimpleHead::new(BlobCellModule::for_bipartition(l, p)?))
        .collect::<Result<Vec<_>>>()?;
    let mut probes = vec![BlobElement::diagram(BlobDiagram::identity(n), p)];
    let mut seed = 0x9e37_79b9_u64;
    let table = loop {
        let mut t = ExactMatrix::new(heads.len(), probes.len());
        for (i, h) in heads.iter().enumerate() {
            for (j, x) in probes.iter().enumerate() {
                t.set(i, j, h.trace(x, SimpleHead::trace_simple)?);
            }
        }
        if rank(&t)? == heads.len() {
            break t;
        }
        if probes.len() > 8 * heads.len() {
            return Err(Error::LinearSystem(
                "simple characters are not separated".into(),
            ));
        }
        for _ in 0..heads.len() {
            probes.push(hecke_word(n, p, &mut seed)?);
        }
    };
    let columns: Vec<SparseVec<Cyclotomic>> = (0..heads.len())
        .map(|i| {
            (0..probes.len())
                .filter_map(|j| table.get(i, j).map(|v| (j, v.clone())))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(heads.len());
    for (mu, h) in order.iter().zip(&heads) {
        let mut target = SparseVec::new();
        for (j, x) in probes.iter().enumerate() {
            let v = h.trace(x, SimpleHead::trace_cell)?;
            if !v.is_zero_elem() {
                target.insert(j, v);
            }
        }
        let x = solve_unique(&columns, &target)?;
        let mut row = vec![0i64; heads.len()];
        for (k, v) in x {
            row[k] = as_integer(&v).filter(|v| *v >= 0).ok_or_else(|| {
                Error::LinearSystem(format!(
                    "multiplicity [Δ{mu}:L{}] = {v} is not a non-negative integer",
                    order[k]
                ))
            })?;
        }
        if row[order.iter().position(|l| l == mu).expect("own weight")] != 1 {
            return Err(Error::LinearSystem(format!("[Δ{mu}:L{mu}] is not 1")));
        }
        out.push(row);
    }
    Ok(out)
}
