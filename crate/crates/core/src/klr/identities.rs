//! Operator-level checks of the vanishing, factorization and
//! non-vanishing statements about the singular weight `η = (1^n, ∅)`.

use super::element::{psi_word, KLRElement, KLRWord, KlrEnv, OperatorElement, Token};
use super::extension::{extension_space, generic_cocycle, glue};
use super::module::GradedModule;
use super::specht::build_specht_with;
use super::tl::{diamond, diamond_indices, jones_wenzl, tl_monomial, tl_normal_forms};
use crate::alcoves::{f_lambda, is_wall, max_degree_tableau, singular_labels, GeometryParams};
use crate::characters::weight_order;
use crate::error::{Error, Result};
use crate::weights::{
    dominant_residues, dominant_tableau, dominates, reduced_word, residue_sequence, Bipartition,
    ResidueSeq, StdTableau, WordRule,
};
use serde::Serialize;

/// `η` and its singular labels `η_0 = η, ..., η_m` with `n = f_η + me`.
#[derive(Clone, Debug)]
pub struct EtaFamily {
    pub n: usize,
    pub geometry: GeometryParams,
    pub f: usize,
    pub m: usize,
    pub labels: Vec<Bipartition>,
    pub rule: WordRule,
}

impl EtaFamily {
    pub fn new(n: usize, g: &GeometryParams) -> Result<Self> {
        Self::with_rule(n, g, WordRule::SmallestDescent)
    }

    pub fn with_rule(n: usize, g: &GeometryParams, rule: WordRule) -> Result<Self> {
        let eta = Bipartition::new(n, 0);
        if n == 0 || !is_wall(n as i64, g) {
            return Err(Error::Precondition(format!(
                "no wall at n = {n} for kappa {:?}",
                g.kappa()
            )));
        }
        let f = f_lambda(&eta, g)?;
        let e = g.e() as usize;
        let m = (n - f) / e;
        let labels = singular_labels(&eta, g)?;
        if labels.len() != m + 1 {
            return Err(Error::Precondition(format!(
                "expected {} labels for {eta}, found {}",
                m + 1,
                labels.len()
            )));
        }
        Ok(EtaFamily {
            n,
            geometry: *g,
            f,
            m,
            labels,
            rule,
        })
    }

    pub fn eta(&self, k: usize) -> &Bipartition {
        &self.labels[k]
    }

    pub fn residues(&self, k: usize) -> ResidueSeq {
        dominant_residues(&self.labels[k], &self.geometry)
    }

    /// `θ(k, j)`, the maximal degree tableau of shape `η_k` and residue `i^{η_j}`.
    pub fn theta(&self, k: usize, j: usize) -> Result<StdTableau> {
        max_degree_tableau(&self.labels[k], &self.labels[j], &self.geometry)
    }

    /// Position `f_η + je` of the `j`th wall crossing.
    pub fn position(&self, j: usize) -> usize {
        self.f + j * self.geometry.e() as usize
    }

    fn word_of(&self, t: &StdTableau) -> KLRWord {
        psi_word(&reduced_word(t, self.rule))
    }

    /// Cellular basis element `ψ_{st}` for `s, t` of a common shape.
    pub fn psi_st(&self, s: &StdTableau, t: &StdTableau) -> Result<KLRElement> {
        if s.shape() != t.shape() {
            return Err(Error::Precondition(
                "ψ_st needs tableaux of one shape".into(),
            ));
        }
        let mut w = self.word_of(s);
        w.push(Token::Idem(dominant_residues(&s.shape(), &self.geometry)));
        w.extend(self.word_of(t).into_iter().rev());
        Ok(KLRElement::word(w))
    }

    /// `ψ_{t^{η_k} θ(k,j)}`.
    pub fn psi_dom_theta(&self, k: usize, j: usize) -> Result<KLRElement> {
        self.psi_st(&dominant_tableau(&self.labels[k]), &self.theta(k, j)?)
    }

    /// `ψ_{θ(k,j) t^{η_k}}`.
    pub fn psi_theta_dom(&self, k: usize, j: usize) -> Result<KLRElement> {
        self.psi_st(&self.theta(k, j)?, &dominant_tableau(&self.labels[k]))
    }

    /// `ψ_{θ(k,j) θ(k,j)}`.
    pub fn psi_theta_theta(&self, k: usize, j: usize) -> Result<KLRElement> {
        let t = self.theta(k, j)?;
        self.psi_st(&t, &t)
    }

    /// `ψ_{p_1}^2 ... ψ_{p_r}^2 e(i)` at the listed positions.
    pub fn double_crossings(&self, positions: &[usize], i: &ResidueSeq) -> KLRElement {
        let rs: Vec<usize> = positions.iter().flat_map(|p| [*p, *p]).collect();
        let mut w = psi_word(&rs);
        w.push(Token::Idem(i.clone()));
        KLRElement::word(w)
    }

    /// The diamond `U^η_k`, numbered by wall crossings.
    pub fn u(&self, k: usize) -> Result<KLRElement> {
        diamond(&self.labels[0], k, &self.geometry)
    }

    /// `U^η_{r,s} = U_r U_{r+1} ... U_s`.
    pub fn u_range(&self, r: usize, s: usize) -> Result<KLRElement> {
        let word: Vec<usize> = (r..=s).collect();
        self.tl_word(&word)
    }

    fn tl_word(&self, word: &[usize]) -> Result<KLRElement> {
        // η's diamonds sit at j = 1..m−1, so TL generator i is U_i.
        tl_monomial(&self.labels[0], word, &self.geometry)
    }

    pub fn jw(&self) -> Result<KLRElement> {
        jones_wenzl(&self.labels[0], &self.geometry)
    }

    /// A module with layers `Δ(η_k)⟨k⟩` for `k = m, ..., 0` from the bottom,
    /// each glued on along a generic extension class. Cell modules alone
    /// cannot detect positive degree elements of the top cell, this module can.
    pub fn layered_witness(&self) -> Result<GradedModule> {
        let g = &self.geometry;
        let mut top = build_specht_with(&self.labels[0], g, self.rule)?.to_graded();
        for k in 1..=self.m {
            let cell = build_specht_with(&self.labels[k], g, self.rule)?;
            let shift = k as i64;
            let space = extension_space(&cell, shift, &top)?;
            if space.ext_dim() == 0 {
                return Err(Error::Precondition(format!(
                    "no extension of {} by Δ{}⟨{shift}⟩",
                    top.label, self.labels[k]
                )));
            }
            top = glue(&cell, shift, &top, &space, &generic_cocycle(&space))?;
        }
        Ok(top)
    }

    /// All cell modules of `B_n` together with the layered witness.
    pub fn environment(&self) -> Result<KlrEnv> {
        let mut env = KlrEnv::build_with(self.n, &self.geometry, self.rule, &weight_order(self.n))?;
        env.witnesses.push(self.layered_witness()?);
        Ok(env)
    }
}

/// How a status should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    /// Exact equality of operators on every cell module.
    ExactEquality,
    /// Zero on every cell module; necessary but not sufficient for vanishing.
    NecessaryCondition,
    /// Nonzero operator, hence a nonzero element.
    Conclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Consistent,
}

/// Which identity to check; each field is a parameter used by some identities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: IdentityParams,
    pub status: Status,
    pub sign: Option<i32>,
    pub n: usize,
    pub e: u32,
    pub kappa: [u32; 2],
    pub semantics: Semantics,
    /// False when both sides of an equality act as zero.
    pub nontrivial: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// A registered identity: short name, long name and a description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityInfo {
    pub short: &'static str,
    pub slug: &'static str,
    pub description: &'static str,
}

const fn info(short: &'static str, slug: &'static str, description: &'static str) -> IdentityInfo {
    IdentityInfo {
        short,
        slug,
        description,
    }
}

/// The registered identities.
pub const IDENTITIES: [IdentityInfo; 9] = [
    info("a", "transitivityofpsi", "transitivity of ψ_{t θ}"),
    info(
        "b",
        "psidoublecrosses",
        "ψ_{θθ} as a product of double crossings",
    ),
    info("c", "deg1vanishing", "degree-one vanishing"),
    info("d", "crossU1cross", "crossing a diamond"),
    info("e", "Uoffcenterdoublecross", "off-centre double crossing"),
    info("f", "Ucenterdoublecross", "centre double crossing vanishes"),
    info("g", "U_1k-nonvanishing", "reduction of ψ U_{r,s} ψ_{θθ} JW"),
    info(
        "h",
        "othermonomials",
        "other monomials lie in a higher cell ideal",
    ),
    info("i", "socle-nonvanishing", "key non-vanishing product"),
];

/// Resolve a short or long identity name; `endwallprojsimplesocle` is
/// accepted for `i`.
pub fn lookup_identity(name: &str) -> Result<&'static IdentityInfo> {
    let name = if name == "endwallprojsimplesocle" {
        "i"
    } else {
        name
    };
    IDENTITIES
        .iter()
        .find(|x| x.short == name || x.slug == name)
        .ok_or_else(|| Error::InvalidParams(format!("unknown identity {name:?}")))
}

/// Every admissible parameter choice for an identity on this family.
pub fn parameter_sets(name: &str, fam: &EtaFamily) -> Result<Vec<IdentityParams>> {
    let name = lookup_identity(name)?.short;
    let m = fam.m;
    let k = |k| IdentityParams {
        k: Some(k),
        ..Default::default()
    };
    Ok(match name {
        "a" => {
            let mut out = Vec::new();
            for l in 0..=m {
                for kk in 0..=l {
                    for j in 0..=kk {
                        out.push(IdentityParams {
                            j: Some(j),
                            k: Some(kk),
                            l: Some(l),
                        });
                    }
                }
            }
            out
        }
        "b" => (0..=m)
            .flat_map(|kk| {
                (0..=kk).map(move |j| IdentityParams {
                    j: Some(j),
                    k: Some(kk),
                    l: None,
                })
            })
            .collect(),
        "c" if m >= 1 => vec![IdentityParams::default()],
        "d" => (1..m).map(k).collect(),
        "e" => (2..m).map(k).collect(),
        "f" => (2..m).map(k).collect(),
        "g" | "h" => (1..m).map(k).collect(),
        "i" => (0..m).map(k).collect(),
        "c" => Vec::new(),
        _ => return Err(Error::InvalidParams(format!("unknown identity {name:?}"))),
    })
}

struct Ctx<'a> {
    env: &'a KlrEnv,
}

impl Ctx<'_> {
    fn op(&self, x: &KLRElement) -> Result<OperatorElement> {
        self.env.act(x)
    }

    fn product(&self, xs: &[KLRElement]) -> Result<OperatorElement> {
        let mut it = xs.iter();
        let mut acc = self.op(it.next().expect("nonempty product"))?;
        for x in it {
            acc = acc.compose(&self.op(x)?);
        }
        Ok(acc)
    }
}

fn need(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(what.to_string()))
    }
}

fn get(p: Option<usize>, name: &str) -> Result<usize> {
    p.ok_or_else(|| Error::InvalidParams(format!("parameter {name} is required")))
}

/// Run one identity on the cell modules in `env`.
pub fn verify_identity(
    name: &str,
    params: IdentityParams,
    fam: &EtaFamily,
    env: &KlrEnv,
) -> Result<IdentityReport> {
    if env.n != fam.n || env.geometry != fam.geometry {
        return Err(Error::Precondition(
            "environment does not match the family".into(),
        ));
    }
    let name = lookup_identity(name)?.short;
    let cx = Ctx { env };
    let m = fam.m;
    let mut report = IdentityReport {
        identity: name.to_string(),
        params,
        status: Status::Fails,
        sign: None,
        n: fam.n,
        e: fam.geometry.e(),
        kappa: fam.geometry.kappa(),
        semantics: Semantics::ExactEquality,
        nontrivial: true,
        detail: String::new(),
    };
    let equal =
        |r: &mut IdentityReport, lhs: OperatorElement, rhs: OperatorElement, signed: bool| {
            let s = lhs.sign_against(&rhs);
            r.nontrivial = !lhs.is_zero();
            r.sign = if signed { s } else { s.filter(|x| *x == 1) };
            r.status = if r.sign.is_some() {
                Status::Holds
            } else {
                Status::Fails
            };
            if !signed {
                r.sign = None;
            }
        };
    let vanish = |r: &mut IdentityReport, x: OperatorElement| {
        r.semantics = Semantics::NecessaryCondition;
        r.nontrivial = false;
        r.status = if x.is_zero() {
            Status::Consistent
        } else {
            Status::Fails
        };
        if !x.is_zero() {
            r.detail = format!("nonzero on {}", fmt_support(&x));
        }
    };
    match name {
        "a" => {
            let (j, k, l) = (
                get(params.j, "j")?,
                get(params.k, "k")?,
                get(params.l, "l")?,
            );
            need(j <= k && k <= l && l <= m, "need 0 <= j <= k <= l <= m")?;
            let lhs = cx.product(&[fam.psi_dom_theta(l, k)?, fam.psi_dom_theta(k, j)?])?;
            let rhs = cx.op(&fam.psi_dom_theta(l, j)?)?;
            equal(&mut report, lhs, rhs, false);
        }
        "b" => {
            let (j, k) = (get(params.j, "j")?, get(params.k, "k")?);
            need(j <= k && k <= m, "need 0 <= j <= k <= m")?;
            let lhs = cx.op(&fam.psi_theta_theta(k, j)?)?;
            let pos: Vec<usize> = (j..k).map(|r| fam.position(r)).collect();
            let rhs = cx.op(&fam.double_crossings(&pos, &fam.residues(j)))?;
            equal(&mut report, lhs, rhs, false);
        }
        "c" => {
            need(m >= 1, "need m >= 1")?;
            let i = fam.residues(0).swapped(fam.f);
            let x = cx.op(&fam.double_crossings(&[fam.f], &i))?;
            let y = cx.product(&[fam.psi_dom_theta(1, 0)?, fam.psi_theta_dom(1, 0)?])?;
            vanish(&mut report, x);
            if !y.is_zero() {
                report.status = Status::Fails;
                report.detail = format!("ψ_(t θ)ψ_(θ t) nonzero on {}", fmt_support(&y));
            }
        }
        "d" => {
            let k = get(params.k, "k")?;
            need(1 <= k && k < m, "need 1 <= k < m")?;
            let a = fam.position(k - 1);
            let pa = KLRElement::word(psi_word(&[a]));
            let lhs = cx.product(&[pa.clone(), fam.u(k)?, pa])?;
            let i = fam.residues(0).swapped(a);
            let rhs = cx.op(&fam.double_crossings(&[fam.position(k)], &i))?;
            equal(&mut report, lhs, rhs, true);
        }
        "e" => {
            let k = get(params.k, "k")?;
            need(2 <= k && k < m, "need 2 <= k < m")?;
            let i = fam.residues(0);
            let lhs = cx.product(&[
                fam.u(k)?,
                fam.u(k - 1)?,
                fam.double_crossings(&[fam.position(k)], &i),
            ])?;
            let rhs = cx.product(&[fam.u(k)?, fam.double_crossings(&[fam.position(k - 1)], &i)])?;
            equal(&mut report, lhs, rhs, true);
        }
        "f" => {
            let k = get(params.k, "k")?;
            need(1 < k && k < m, "need 1 < k < m")?;
            let x = cx.product(&[fam.u(k - 1)?, fam.psi_theta_theta(k, 0)?])?;
            vanish(&mut report, x);
        }
        "g" => {
            let k = get(params.k, "k")?;
            need(1 <= k && k < m, "need 1 <= k < m")?;
            let head = cx.op(&fam.psi_dom_theta(1, 0)?)?;
            let tail = cx.product(&[fam.psi_theta_theta(k, 0)?, fam.jw()?])?;
            let mut stray = Vec::new();
            for r in 1..m {
                for s in r..m {
                    if (r, s) == (1, k) {
                        continue;
                    }
                    let x = head.compose(&cx.op(&fam.u_range(r, s)?)?).compose(&tail);
                    if !x.is_zero() {
                        stray.push(format!("U_({r},{s})"));
                    }
                }
            }
            let lhs = head.compose(&cx.op(&fam.u_range(1, k)?)?).compose(&tail);
            let rhs = cx
                .op(&fam.psi_st(&fam.theta(k + 1, 1)?, &fam.theta(k + 1, 0)?)?)?
                .compose(&cx.op(&fam.jw()?)?);
            equal(&mut report, lhs, rhs, true);
            if !stray.is_empty() {
                report.status = Status::Fails;
                report.detail = format!("nonzero for {}", stray.join(", "));
            }
        }
        "h" => {
            let k = get(params.k, "k")?;
            need(1 <= k && k < m, "need 1 <= k < m")?;
            let target = fam.eta(k + 1);
            let head = cx.op(&fam.psi_dom_theta(1, 0)?)?;
            let tail = cx.product(&[fam.psi_theta_theta(k, 0)?, fam.jw()?])?;
            let main: Vec<usize> = (1..=k).collect();
            let gens = diamond_indices(fam.eta(0), &fam.geometry).len();
            report.semantics = Semantics::NecessaryCondition;
            report.nontrivial = false;
            report.status = Status::Consistent;
            for w in tl_normal_forms(gens) {
                if w == main {
                    continue;
                }
                let x = head.compose(&cx.op(&fam.tl_word(&w)?)?).compose(&tail);
                for l in x.support() {
                    if !dominates(&l, target)? {
                        report.status = Status::Fails;
                        report.detail = format!("monomial {w:?} acts on Δ{l}");
                    }
                }
            }
        }
        "i" => {
            let k = get(params.k, "k")?;
            need(k < m, "need 0 <= k < m")?;
            let jw = cx.op(&fam.jw()?)?;
            let x = cx
                .op(&fam.psi_dom_theta(1, 0)?)?
                .compose(&jw)
                .compose(&cx.op(&fam.psi_theta_theta(k, 0)?)?)
                .compose(&jw);
            report.semantics = Semantics::Conclusive;
            if x.is_zero() {
                report.status = Status::Fails;
                report.detail = if env.witnesses.is_empty() {
                    "zero on every cell module; no witness module attached".into()
                } else {
                    "zero on every module".into()
                };
            } else {
                report.status = Status::Holds;
                report.detail = format!("nonzero on {}", fmt_support(&x));
            }
        }
        _ => return Err(Error::InvalidParams(format!("unknown identity {name:?}"))),
    }
    Ok(report)
}

fn fmt_support(x: &OperatorElement) -> String {
    x.support_labels().join(" ")
}

/// Graded piece of `e(i^λ)Δ(μ)` in its top degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleWitness {
    pub lambda: Bipartition,
    pub mu: Bipartition,
    pub degree: i64,
    pub expected_degree: i64,
    pub dimension: usize,
    pub spanned_by_max_tableau: bool,
}

/// Check that the top degree part of `e(i^λ)Δ(μ)` is one-dimensional, sits
/// in the expected degree and is spanned by the maximal degree tableau.
pub fn truncated_socle_witness(
    l: &Bipartition,
    mu: &Bipartition,
    env: &KlrEnv,
) -> Result<SocleWitness> {
    let g = &env.geometry;
    let module = env
        .module(mu)
        .ok_or_else(|| Error::Precondition(format!("{mu} is not in the environment")))?;
    let i = dominant_residues(l, g);
    let top = max_degree_tableau(mu, l, g)?;
    let expected = crate::alcoves::expected_top_degree(mu, l, g)? as i64;
    let members: Vec<usize> = (0..module.dim())
        .filter(|x| module.residues[*x] == i)
        .collect();
    let degree = members
        .iter()
        .map(|x| module.degrees[*x])
        .max()
        .unwrap_or(i64::MIN);
    let in_top: Vec<usize> = members
        .into_iter()
        .filter(|x| module.degrees[*x] == degree)
        .collect();
    let spanned =
        in_top.len() == 1 && module.basis[in_top[0]] == top && residue_sequence(&top, g) == i;
    Ok(SocleWitness {
        lambda: *l,
        mu: *mu,
        degree,
        expected_degree: expected,
        dimension: in_top.len(),
        spanned_by_max_tableau: spanned,
    })
}
