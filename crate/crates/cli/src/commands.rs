//! One function per subcommand.

use crate::render::{document, join, Header, Sink, Table};
use crate::{Command, Common, Failure, Format, Mode};
use blobrep::alcoves::{is_paired, is_wall, linkage_class, linked_paths, GeometryParams};
use blobrep::characters::{
    graded_decomposition_matrix, graded_weyl_dim, linkage_classes, simple_dimensions,
    socle_of_projective, tilting_delta_multiplicities, weight_order, GradedMultiplicityMatrix,
    TiltingMode,
};
use blobrep::exactmath::rank;
use blobrep::klr::{
    build_specht, gram_matrix, lookup_identity, parameter_sets, verify_identity, EtaFamily,
    IdentityInfo, IdentityReport, Semantics, Status, IDENTITIES,
};
use blobrep::tlblob::{gram_ranks, BlobParams};
use blobrep::weights::{
    enumerate_std, residue_sequence, tableau_to_path, word_degree, Bipartition,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// Largest n for commands that build KLR modules.
const KLR_LIMIT: usize = 14;
/// Largest n for Gram ranks over cyclotomic fields.
const GRAM_LIMIT: usize = 10;

struct Ctx {
    n: usize,
    g: GeometryParams,
    sink: Sink,
    force: bool,
}

impl Ctx {
    fn new(c: &Common) -> Result<Self, Failure> {
        if c.n == 0 {
            return Err(Failure::Usage("n must be at least 1".into()));
        }
        let g = GeometryParams::new(c.e, c.kappa.0, c.kappa.1)?;
        Ok(Ctx {
            n: c.n,
            g,
            sink: Sink {
                format: c.format,
                out: c.out.clone(),
            },
            force: c.force,
        })
    }

    fn header(&self, command: &'static str) -> Header {
        Header {
            command,
            n: self.n,
            e: self.g.e(),
            kappa: self.g.kappa(),
            walls: self.g.walls_in_range(self.n),
        }
    }

    fn guard(&self, limit: usize, what: &str) -> Result<(), Failure> {
        if self.n > limit && !self.force {
            return Err(Failure::Usage(format!(
                "{what} refuses n > {limit} (got {}); pass --force to run anyway",
                self.n
            )));
        }
        Ok(())
    }

    fn emit(
        &self,
        command: &'static str,
        payload: Value,
        csv: impl FnOnce() -> String,
        pretty: impl FnOnce() -> String,
    ) -> Result<(), Failure> {
        let Value::Object(payload) = payload else {
            unreachable!("payloads are objects")
        };
        let text = document(
            &self.header(command),
            self.sink.format,
            payload,
            csv,
            pretty,
        );
        self.sink.write(&text)
    }

    fn bipartition(&self, pair: (u32, u32)) -> Result<Bipartition, Failure> {
        let b = Bipartition::new(pair.0 as usize, pair.1 as usize);
        if b.n() != self.n {
            return Err(Failure::Usage(format!(
                "{b} is not a bipartition of n = {}",
                self.n
            )));
        }
        Ok(b)
    }
}

pub fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Decomp(c) => decomp(&Ctx::new(&c)?),
        Command::Tilting { common, mode } => tilting(&Ctx::new(&common)?, mode),
        Command::WeylDims(c) => weyl_dims(&Ctx::new(&c)?),
        Command::Socle(c) => socle(&Ctx::new(&c)?),
        Command::Gram(c) => gram(&Ctx::new(&c)?),
        Command::Verify {
            common,
            identity,
            k,
            all,
        } => verify(&Ctx::new(&common)?, identity.as_deref(), k, all),
        Command::Linkage { common, lambda } => linkage(&Ctx::new(&common)?, lambda),
        Command::Basis { common, lambda } => basis(&Ctx::new(&common)?, lambda),
    }
}

fn matrix_doc(
    cx: &Ctx,
    command: &'static str,
    m: &GradedMultiplicityMatrix,
) -> Result<(), Failure> {
    cx.emit(
        command,
        json!({ "matrix": m.to_json() }),
        || m.to_csv(),
        || m.to_pretty(),
    )
}

fn decomp(cx: &Ctx) -> Result<(), Failure> {
    matrix_doc(cx, "decomp", &graded_decomposition_matrix(cx.n, &cx.g))
}

fn tilting(cx: &Ctx, mode: Mode) -> Result<(), Failure> {
    let single = |m: TiltingMode| tilting_delta_multiplicities(cx.n, &cx.g, m);
    match mode {
        Mode::Formula => matrix_doc(cx, "tilting", &single(TiltingMode::Formula)),
        Mode::Construction => matrix_doc(cx, "tilting", &single(TiltingMode::Construction)),
        Mode::Both => {
            let f = single(TiltingMode::Formula);
            let c = single(TiltingMode::Construction);
            let diff = f.diff(&c);
            let mut table = Table::new(&["row", "col", "formula", "construction"]);
            for (r, col, a, b) in &diff {
                table.push(vec![
                    r.to_string(),
                    col.to_string(),
                    a.to_string(),
                    b.to_string(),
                ]);
            }
            let payload = json!({
                "mode": "both",
                "formula": f.to_json(),
                "construction": c.to_json(),
                "diff": diff.iter().map(|(r, col, a, b)| json!({
                    "row": r, "col": col, "formula": a.to_json(), "construction": b.to_json(),
                })).collect::<Vec<_>>(),
            });
            cx.emit(
                "tilting",
                payload,
                || format!("{}\n{}\n{}", f.to_csv(), c.to_csv(), table.to_csv()),
                || {
                    let d = if diff.is_empty() {
                        "diff: empty\n".to_string()
                    } else {
                        table.to_pretty()
                    };
                    format!(
                        "formula\n{}construction\n{}{d}",
                        f.to_pretty(),
                        c.to_pretty()
                    )
                },
            )?;
            if diff.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "modes differ in {} entries",
                    diff.len()
                )))
            }
        }
    }
}

fn weyl_dims(cx: &Ctx) -> Result<(), Failure> {
    let mut table = Table::new(&["weight", "classical", "dim", "graded"]);
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for l in weight_order(cx.n) {
        let dim = enumerate_std(&l).len();
        let graded = graded_weyl_dim(&l, &cx.g);
        if graded.eval_one() != BigInt::from(dim) {
            bad.push(l.to_string());
        }
        table.push(vec![
            l.to_string(),
            l.weight().to_string(),
            dim.to_string(),
            graded.to_string(),
        ]);
        rows.push(json!({
            "weight": l, "classical": l.weight(), "dim": dim, "graded": graded.to_json(),
        }));
    }
    cx.emit(
        "weyl-dims",
        json!({ "rows": rows }),
        || table.to_csv(),
        || table.to_pretty(),
    )?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "graded dimension at v=1 is off for {}",
            bad.join(" ")
        )))
    }
}

fn socle(cx: &Ctx) -> Result<(), Failure> {
    let mut table = Table::new(&["weight", "classical", "paired", "socle"]);
    let mut rows = Vec::new();
    for l in weight_order(cx.n) {
        let s = socle_of_projective(&l, &cx.g);
        let paired = is_paired(&l, &cx.g);
        let text: Vec<String> = s
            .constituents
            .iter()
            .map(|(b, k)| format!("L{b}⟨{k}⟩"))
            .collect();
        table.push(vec![
            l.to_string(),
            l.weight().to_string(),
            paired.to_string(),
            text.join(" ⊕ "),
        ]);
        rows.push(json!({
            "weight": l,
            "paired": paired,
            "socle": s.constituents.iter()
                .map(|(b, k)| json!({ "weight": b, "shift": k }))
                .collect::<Vec<_>>(),
        }));
    }
    cx.emit(
        "socle",
        json!({ "rows": rows }),
        || table.to_csv(),
        || table.to_pretty(),
    )
}

/// The diagram side uses `κ = (0, m)`; shifting both charges is an
/// isomorphism, so `m = κ2 − κ1 mod e`.
fn diagram_m(g: &GeometryParams) -> u32 {
    let [k1, k2] = g.kappa();
    (k2 + g.e() - k1) % g.e()
}

fn gram(cx: &Ctx) -> Result<(), Failure> {
    cx.guard(GRAM_LIMIT, "gram")?;
    let p = BlobParams::new(cx.g.e(), diagram_m(&cx.g))?;
    let diagram = gram_ranks(cx.n, &p)?;
    let simple = simple_dimensions(cx.n, &cx.g)?;
    let mut table = Table::new(&[
        "weight",
        "dim",
        "rank_diagram",
        "rank_klr",
        "dim_simple",
        "agree",
    ]);
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (l, ddim, drank) in diagram {
        let module = build_specht(&l, &cx.g)?;
        let krank = rank(&gram_matrix(&module))?;
        let dim = enumerate_std(&l).len();
        let dl = &simple[&l];
        let agree = ddim == dim
            && module.dim() == dim
            && BigInt::from(drank) == *dl
            && BigInt::from(krank) == *dl;
        if !agree {
            bad.push(l.to_string());
        }
        table.push(vec![
            l.to_string(),
            dim.to_string(),
            drank.to_string(),
            krank.to_string(),
            dl.to_string(),
            agree.to_string(),
        ]);
        rows.push(json!({
            "weight": l,
            "dim": dim,
            "rank_diagram": drank,
            "rank_klr": krank,
            "dim_simple": u64::try_from(dl).expect("dimension fits in u64"),
            "agree": agree,
        }));
    }
    cx.emit(
        "gram",
        json!({ "m": p.m, "rows": rows }),
        || table.to_csv(),
        || table.to_pretty(),
    )?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "three-way disagreement at {}",
            bad.join(" ")
        )))
    }
}

/// Human-readable hypothesis for the identities with a `k` range.
fn requirement(short: &str) -> &'static str {
    match short {
        "c" => "m ≥ 1",
        "d" | "g" | "h" => "1 ≤ k < m",
        "e" | "f" => "2 ≤ k < m, so m ≥ 3",
        "i" => "0 ≤ k < m",
        _ => "no hypothesis",
    }
}

fn verify_ok(r: &IdentityReport) -> bool {
    match r.status {
        Status::Holds => true,
        Status::Consistent => r.semantics == Semantics::NecessaryCondition,
        Status::Fails => false,
    }
}

fn verify(cx: &Ctx, identity: Option<&str>, k: Option<usize>, all: bool) -> Result<(), Failure> {
    cx.guard(KLR_LIMIT, "verify")?;
    let (n, e) = (cx.n as i64, cx.g.e() as i64);
    if !is_wall(n, &cx.g) {
        return Err(Failure::Usage(format!(
            "verify needs n on a wall: n ≡ κ1 − κ2 ≡ {} (mod {e}), got n = {n}",
            cx.g.wall_offset()
        )));
    }
    let fam = EtaFamily::new(cx.n, &cx.g).map_err(|err| Failure::Usage(err.to_string()))?;
    let selected: Vec<&IdentityInfo> = if all {
        IDENTITIES.iter().collect()
    } else {
        vec![lookup_identity(
            identity.expect("clap requires a selector"),
        )?]
    };
    let mut jobs = Vec::new();
    for info in selected {
        let sets: Vec<_> = parameter_sets(info.short, &fam)?
            .into_iter()
            .filter(|p| k.is_none() || p.k == k)
            .collect();
        if sets.is_empty() {
            let msg = format!(
                "identity {} needs {}; n = {n} gives m = {} (m grows by one as n grows by {e})",
                info.slug,
                requirement(info.short),
                fam.m
            );
            if all {
                eprintln!("skipped: {msg}");
                continue;
            }
            return Err(Failure::Usage(msg));
        }
        jobs.extend(sets.into_iter().map(|p| (info, p)));
    }
    let env = fam.environment()?;
    let walls = cx.g.walls_in_range(cx.n);
    let mut reports = Vec::new();
    for (info, p) in jobs {
        reports.push((info, verify_identity(info.short, p, &fam, &env)?));
    }

    let text = match cx.sink.format {
        Format::Json => {
            let mut s = String::new();
            for (info, r) in &reports {
                let mut v: Map<String, Value> = match serde_json::to_value(r).expect("report") {
                    Value::Object(m) => m,
                    _ => unreachable!("reports are objects"),
                };
                v.insert("slug".into(), info.slug.into());
                v.insert("walls".into(), walls.clone().into());
                s.push_str(&serde_json::to_string(&v).expect("json"));
                s.push('\n');
            }
            s
        }
        Format::Csv | Format::Pretty => {
            let mut t = Table::new(&[
                "identity",
                "slug",
                "j",
                "k",
                "l",
                "status",
                "sign",
                "semantics",
                "nontrivial",
                "detail",
            ]);
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            for (info, r) in &reports {
                t.push(vec![
                    r.identity.clone(),
                    info.slug.to_string(),
                    opt(r.params.j),
                    opt(r.params.k),
                    opt(r.params.l),
                    json!(r.status).as_str().unwrap_or_default().to_string(),
                    r.sign.map(|s| format!("{s:+}")).unwrap_or_default(),
                    json!(r.semantics).as_str().unwrap_or_default().to_string(),
                    r.nontrivial.to_string(),
                    r.detail.clone(),
                ]);
            }
            let h = cx.header("verify").comment();
            if cx.sink.format == Format::Csv {
                h + &t.to_csv()
            } else {
                h + &t.to_pretty()
            }
        }
    };
    cx.sink.write(&text)?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !verify_ok(r))
        .map(|(_, r)| format!("{} {}", r.identity, json!(r.params)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join("; ")))
    }
}

fn linkage(cx: &Ctx, lambda: Option<(u32, u32)>) -> Result<(), Failure> {
    if let Some(pair) = lambda {
        let l = cx.bipartition(pair)?;
        let class = linkage_class(&l, &cx.g);
        let paths = linked_paths(&l, &cx.g);
        let mut table = Table::new(&["path", "end"]);
        for p in &paths {
            table.push(vec![p.to_string(), p.end().to_string()]);
        }
        let payload = json!({
            "lambda": l,
            "class": class,
            "count": paths.len(),
            "paths": paths.iter().map(|p| &p.points).collect::<Vec<_>>(),
        });
        return cx.emit("linkage", payload, || table.to_csv(), || table.to_pretty());
    }
    let mut table = Table::new(&["members", "paired"]);
    let mut classes = Vec::new();
    for class in linkage_classes(cx.n, &cx.g) {
        let members: Vec<i64> = class.iter().map(Bipartition::weight).collect();
        let paired: Vec<bool> = class.iter().map(|b| is_paired(b, &cx.g)).collect();
        table.push(vec![
            format!("{{{}}}", join(&members, ",")),
            join(&paired, ","),
        ]);
        classes.push(json!({ "n": cx.n, "members": members, "paired": paired }));
    }
    cx.emit(
        "linkage",
        json!({ "classes": classes }),
        || table.to_csv(),
        || table.to_pretty(),
    )
}

fn basis(cx: &Ctx, lambda: Option<(u32, u32)>) -> Result<(), Failure> {
    cx.guard(KLR_LIMIT, "basis")?;
    let shapes = match lambda {
        Some(pair) => vec![cx.bipartition(pair)?],
        None => weight_order(cx.n),
    };
    let mut table = Table::new(&["shape", "path", "degree", "residues"]);
    let mut out = Vec::new();
    for l in shapes {
        let mut tabs = Vec::new();
        for t in enumerate_std(&l) {
            let path = tableau_to_path(&t);
            let deg = word_degree(&t, &cx.g);
            let res = residue_sequence(&t, &cx.g);
            table.push(vec![
                l.to_string(),
                path.to_string(),
                deg.to_string(),
                res.to_string(),
            ]);
            tabs.push(json!({ "path": path.points, "degree": deg, "residues": res.0 }));
        }
        out.push(json!({ "shape": l, "tableaux": tabs }));
    }
    cx.emit(
        "basis",
        json!({ "shapes": out }),
        || table.to_csv(),
        || table.to_pretty(),
    )
}
