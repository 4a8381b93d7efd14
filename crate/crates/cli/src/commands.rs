//! The subcommands, generic over the instance.

use std::path::PathBuf;

use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tricat::category::{CatError, TriangleMorphism, Triangulated};
use tricat::frobenius::FrobeniusInstance;
use tricat::localization::{
    homotopy_pushout, is_thick, kernel_of_loc, loc, loc_vanishes, thick_closure_member, verify_localized_triangulation,
    Subcategory,
};
use tricat::report::{anchors, Checks, Report};
use tricat::toolkit::dot::{braid_dot, grid_dot};
use tricat::toolkit::{
    braid, check_braid, check_cone, check_cone_shift, check_filling, check_filling_iso, check_grid, check_iso_criterion,
    check_puppe, check_triple, check_vanishing, filling_morphism, hom_exactness, puppe, sample_rng, three_by_three,
    triple_composition, validate_instance_octahedron, verify_axioms, verify_constructions, Sampler, VerifyConfig,
};

use crate::input::{read_text, InputError, SubcatSpec};
use crate::instances::{CliInstance, SampleLimits, SubcatChoice};

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub seed: u64,
    pub samples: usize,
    pub limits: SampleLimits,
    pub subcat: Option<SubcatSpec>,
    pub threads: usize,
}

impl Ctx {
    fn config(&self) -> VerifyConfig {
        VerifyConfig { samples: self.samples, seed: self.seed, threads: self.threads }
    }
}

/// A finished report and an optional DOT rendering.
pub struct Outcome {
    pub report: Report,
    pub dot: Option<String>,
}

impl Outcome {
    fn plain(report: Report) -> Self {
        Outcome { report, dot: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizeCheck {
    Triangulation,
    Trivial,
    Thick,
    Kernel,
    Members,
}

#[derive(Clone, Debug)]
pub enum Command {
    Cone { f: Option<PathBuf> },
    Octahedron { f: Option<PathBuf>, g: Option<PathBuf> },
    Fill { f: Option<PathBuf>, j: Option<PathBuf>, k: Option<PathBuf>, f2: Option<PathBuf> },
    Puppe { f: Option<PathBuf>, left: usize, right: usize },
    Braid { f: Option<PathBuf>, g: Option<PathBuf> },
    ThreeByThree { f: Option<PathBuf>, g: Option<PathBuf>, h: Option<PathBuf>, k: Option<PathBuf> },
    Triple { f: Option<PathBuf>, g: Option<PathBuf>, h: Option<PathBuf> },
    VerifyAxioms { constructions: bool },
    Localize { check: LocalizeCheck },
    Stable { bound: usize, source: Option<(usize, usize)>, target: Option<(usize, usize)> },
    Decompose { input: PathBuf },
}

/// Errors caused by the input become exit status 2; anything else the
/// library reports is a failed check.
fn record_error(report: &mut Report, anchor: &str, e: CatError) -> Result<(), InputError> {
    match e {
        CatError::ShapeMismatch(_) | CatError::PreconditionViolated(_) => Err(e.into()),
        e => {
            let mut c = Checks::new();
            c.push(anchor, false, e.to_string());
            report.absorb(&c);
            Ok(())
        }
    }
}

fn load<I: CliInstance>(inst: &I, path: &Option<PathBuf>) -> Result<Option<I::Mor>, InputError> {
    path.as_ref().map(|p| inst.parse_mor(&read_text(p)?)).transpose()
}

/// Morphism samples for arguments not given on the command line.
struct Fill<'a, I: CliInstance> {
    inst: &'a I,
    sampler: I::S,
    rng: ChaCha8Rng,
}

impl<'a, I: CliInstance> Fill<'a, I> {
    fn new(inst: &'a I, ctx: &Ctx) -> Self {
        Fill { inst, sampler: inst.sampler(ctx.limits), rng: sample_rng(ctx.seed, 0) }
    }

    fn object(&mut self) -> I::Obj {
        self.sampler.object(self.inst, &mut self.rng)
    }

    fn mor(&mut self, given: Option<I::Mor>, x: Option<I::Obj>, y: Option<I::Obj>) -> I::Mor {
        if let Some(f) = given {
            return f;
        }
        let x = x.unwrap_or_else(|| self.object());
        let y = y.unwrap_or_else(|| self.object());
        self.sampler.morphism(self.inst, &x, &y, &mut self.rng)
    }

    /// A composable chain of maps, sampling the missing ones around the
    /// given ones.
    fn chain(&mut self, given: Vec<Option<I::Mor>>) -> Result<Vec<I::Mor>, InputError> {
        let n = given.len();
        let mut objs: Vec<Option<I::Obj>> = vec![None; n + 1];
        for (i, m) in given.iter().enumerate() {
            if let Some(m) = m {
                for (slot, o) in [(i, self.inst.source(m)), (i + 1, self.inst.target(m))] {
                    if objs[slot].as_ref().is_some_and(|p| *p != o) {
                        return Err(InputError("the given maps are not composable".into()));
                    }
                    objs[slot] = Some(o);
                }
            }
        }
        let objs: Vec<I::Obj> = objs.into_iter().map(|o| o.unwrap_or_else(|| self.object())).collect();
        Ok(given
            .into_iter()
            .enumerate()
            .map(|(i, m)| self.mor(m, Some(objs[i].clone()), Some(objs[i + 1].clone())))
            .collect())
    }
}

fn report<I: CliInstance>(inst: &I, command: &str, ctx: &Ctx) -> Report {
    Report::new(command, &inst.name(), Some(ctx.seed))
}

pub fn run<I: CliInstance>(inst: &I, cmd: &Command, ctx: &Ctx) -> Result<Outcome, InputError> {
    match cmd {
        Command::Cone { f } => cone(inst, ctx, f),
        Command::Octahedron { f, g } => octahedron(inst, ctx, f, g),
        Command::Fill { f, j, k, f2 } => fill(inst, ctx, f, j, k, f2),
        Command::Puppe { f, left, right } => puppe_cmd(inst, ctx, f, *left, *right),
        Command::Braid { f, g } => braid_cmd(inst, ctx, f, g),
        Command::ThreeByThree { f, g, h, k } => grid(inst, ctx, f, g, h, k),
        Command::Triple { f, g, h } => triple(inst, ctx, f, g, h),
        Command::VerifyAxioms { constructions } => axioms(inst, ctx, *constructions),
        Command::Localize { check } => localize(inst, ctx, *check),
        Command::Stable { .. } => Err(InputError("stable is only available for --instance frobenius".into())),
        Command::Decompose { input } => {
            let mut r = report(inst, "decompose", ctx);
            r.seed = None;
            r.set_data("decomposition", inst.decompose(&read_text(input)?)?);
            Ok(Outcome::plain(r))
        }
    }
}

fn cone<I: CliInstance>(inst: &I, ctx: &Ctx, f: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let mut fill = Fill::new(inst, ctx);
    let f = fill.mor(load(inst, f)?, None, None);
    let t = inst.cone(&f);
    let mut r = report(inst, "cone", ctx);
    let mut c = check_cone(inst, &f);
    c.extend(check_vanishing(inst, &t));
    c.extend(check_cone_shift(inst, &f));
    c.extend(check_iso_criterion(inst, &f));
    for w in [inst.source(&f), inst.target(&f), inst.target(&t.g)] {
        c.extend(hom_exactness(inst, &w, &t));
    }
    r.absorb(&c);
    let z = inst.target(&t.g);
    r.set_data("cone", inst.obj_json(&z));
    r.set_data("cone_is_zero", inst.is_zero_object(&z).into());
    r.set_data("triangle", inst.triangle_json(&t));
    Ok(Outcome::plain(r))
}

fn octahedron<I: CliInstance>(
    inst: &I,
    ctx: &Ctx,
    f: &Option<PathBuf>,
    g: &Option<PathBuf>,
) -> Result<Outcome, InputError> {
    let maps = Fill::new(inst, ctx).chain(vec![load(inst, f)?, load(inst, g)?])?;
    let mut r = report(inst, "octahedron", ctx);
    match inst.octahedron(&maps[0], &maps[1]) {
        Ok(o) => {
            r.absorb(&validate_instance_octahedron(inst, &o));
            r.set_data("octahedron", json!({
                "k": inst.mor_json(&o.k),
                "k1": inst.mor_json(&o.k1),
                "k2": inst.mor_json(&o.k2),
                "c_f": inst.obj_json(&inst.target(&o.first.g)),
                "c_g": inst.obj_json(&inst.target(&o.second.g)),
                "c_h": inst.obj_json(&inst.target(&o.composite.g)),
            }));
        }
        Err(e) => record_error(&mut r, anchors::T5, e)?,
    }
    Ok(Outcome { report: r, dot: Some(braid_dot().render()) })
}

fn fill<I: CliInstance>(
    inst: &I,
    ctx: &Ctx,
    f: &Option<PathBuf>,
    j: &Option<PathBuf>,
    k: &Option<PathBuf>,
    f2: &Option<PathBuf>,
) -> Result<Outcome, InputError> {
    let mut s = Fill::new(inst, ctx);
    let f1 = s.mor(load(inst, f)?, None, None);
    let (j, k, f2) = (load(inst, j)?, load(inst, k)?, load(inst, f2)?);
    let (j, k, f2) = match (j, k, f2) {
        (Some(j), Some(k), Some(f2)) => (j, k, f2),
        (j, None, None) => {
            // Complete (j, f1) to a commuting square by a homotopy pushout.
            let j = s.mor(j, Some(inst.source(&f1)), None);
            let p = homotopy_pushout(inst, &j, &f1)?;
            (j, p.w, p.f)
        }
        _ => return Err(InputError("fill needs --j, --k and --f2 together, or at most --j".into())),
    };
    let (t1, t2) = (inst.cone(&f1), inst.cone(&f2));
    let mut r = report(inst, "fill", ctx);
    match filling_morphism(inst, &t1, &t2, &j, &k) {
        Ok(m) => {
            let tm = TriangleMorphism { source: t1, target: t2, a: j, b: k, c: m.clone() };
            let mut c = check_filling(inst, &tm);
            c.extend(check_filling_iso(inst, &tm));
            r.absorb(&c);
            r.set_data("m", inst.mor_json(&m));
            r.set_data("m_invertible", inst.inverse(&m).is_some().into());
        }
        Err(e) => record_error(&mut r, anchors::FILLING, e)?,
    }
    Ok(Outcome::plain(r))
}

fn puppe_cmd<I: CliInstance>(
    inst: &I,
    ctx: &Ctx,
    f: &Option<PathBuf>,
    left: usize,
    right: usize,
) -> Result<Outcome, InputError> {
    let f = Fill::new(inst, ctx).mor(load(inst, f)?, None, None);
    let seq = puppe(inst, &inst.cone(&f), left, right);
    let mut r = report(inst, "puppe", ctx);
    r.absorb(&check_puppe(inst, &seq));
    let objects: Vec<Value> = seq
        .maps
        .iter()
        .map(|m| inst.obj_json(&inst.source(m)))
        .chain(seq.maps.last().map(|m| inst.obj_json(&inst.target(m))))
        .collect();
    let signs: Vec<Value> =
        (0..seq.maps.len().saturating_sub(2)).map(|i| json!(if seq.window_is_positive(i) { "+" } else { "-" })).collect();
    r.set_data("objects", objects.into());
    r.set_data("base", seq.base.into());
    r.set_data("window_signs", signs.into());
    Ok(Outcome::plain(r))
}

fn braid_cmd<I: CliInstance>(
    inst: &I,
    ctx: &Ctx,
    f: &Option<PathBuf>,
    g: &Option<PathBuf>,
) -> Result<Outcome, InputError> {
    let maps = Fill::new(inst, ctx).chain(vec![load(inst, f)?, load(inst, g)?])?;
    let mut r = report(inst, "braid", ctx);
    match braid(inst, &maps[0], &maps[1]) {
        Ok(b) => {
            r.absorb(&check_braid(inst, &b));
            r.set_data("strands", b.strands.len().into());
        }
        Err(e) => record_error(&mut r, anchors::BRAID, e)?,
    }
    Ok(Outcome { report: r, dot: Some(braid_dot().render()) })
}

fn grid<I: CliInstance>(
    inst: &I,
    ctx: &Ctx,
    f: &Option<PathBuf>,
    g: &Option<PathBuf>,
    h: &Option<PathBuf>,
    k: &Option<PathBuf>,
) -> Result<Outcome, InputError> {
    let mut s = Fill::new(inst, ctx);
    let f = s.mor(load(inst, f)?, None, None);
    let (g, h, k) = (load(inst, g)?, load(inst, h)?, load(inst, k)?);
    let (g, h, k) = match (g, h, k) {
        (Some(g), Some(h), Some(k)) => (g, h, k),
        (g, None, None) => {
            let g = s.mor(g, Some(inst.source(&f)), None);
            let p = homotopy_pushout(inst, &g, &f)?;
            (g, p.f, p.w)
        }
        _ => return Err(InputError("three-by-three needs --g, --h and --k together, or at most --g".into())),
    };
    let mut r = report(inst, "three-by-three", ctx);
    let [row1, row2, col1, col2] = [&f, &h, &g, &k].map(|m| inst.cone(m));
    match three_by_three(inst, &row1, &row2, &col1, &col2) {
        Ok(grid) => {
            r.absorb(&check_grid(inst, &grid));
            let m = &grid.cols[2].f;
            r.set_data("m", inst.mor_json(m));
            r.set_data("j", inst.mor_json(&grid.rows[2].f));
        }
        Err(e) => record_error(&mut r, anchors::GRID_SQUARE, e)?,
    }
    Ok(Outcome { report: r, dot: Some(grid_dot().render()) })
}

fn triple<I: CliInstance>(
    inst: &I,
    ctx: &Ctx,
    f: &Option<PathBuf>,
    g: &Option<PathBuf>,
    h: &Option<PathBuf>,
) -> Result<Outcome, InputError> {
    let maps = Fill::new(inst, ctx).chain(vec![load(inst, f)?, load(inst, g)?, load(inst, h)?])?;
    let mut r = report(inst, "triple", ctx);
    match triple_composition(inst, &maps[0], &maps[1], &maps[2]) {
        Ok(t) => {
            r.absorb(&check_triple(inst, &t));
            r.set_data("alpha", inst.mor_json(&t.alpha));
            r.set_data("beta", inst.mor_json(&t.beta));
            r.set_data("triangle", inst.triangle_json(&t.triangle));
        }
        Err(e) => record_error(&mut r, anchors::TRIPLE, e)?,
    }
    Ok(Outcome::plain(r))
}

fn axioms<I: CliInstance>(inst: &I, ctx: &Ctx, constructions: bool) -> Result<Outcome, InputError> {
    let sampler = inst.sampler(ctx.limits);
    let mut r = verify_axioms(inst, &sampler, ctx.config());
    if constructions {
        let extra = verify_constructions(inst, &sampler, ctx.config());
        r.entries.extend(extra.entries);
    }
    r.set_data("samples", ctx.samples.into());
    r.set_data("max_dim", ctx.limits.max_dim.into());
    Ok(Outcome::plain(r))
}

fn localize<I: CliInstance>(inst: &I, ctx: &Ctx, check: LocalizeCheck) -> Result<Outcome, InputError> {
    let spec = ctx.subcat.as_ref().ok_or_else(|| InputError("localize needs --subcat".into()))?;
    let sampler = inst.sampler(ctx.limits);
    let d = match inst.subcategory(spec)? {
        SubcatChoice::Exact(d) => d,
        SubcatChoice::Generated(g) => {
            if check != LocalizeCheck::Members {
                return Err(InputError(format!("{} on this instance supports --check members only", spec.kind)));
            }
            let mut r = report(inst, "localize", ctx);
            let mut c = Checks::new();
            let mut members = Vec::new();
            for i in 0..ctx.samples {
                let x = sampler.object(inst, &mut sample_rng(ctx.seed, i));
                match g.contains(inst, &x) {
                    Ok(m) => {
                        c.push(anchors::THICK_CLOSURE, true, None);
                        members.push(json!({ "object": inst.obj_json(&x), "member": m }));
                    }
                    Err(e) => c.push(anchors::THICK_CLOSURE, false, format!("{}: {e}", inst.display_obj(&x))),
                }
            }
            r.absorb(&c);
            r.set_data("subcategory", spec.kind.clone().into());
            r.set_data("members", members.into());
            return Ok(Outcome::plain(r));
        }
    };
    let r = match check {
        LocalizeCheck::Triangulation => verify_localized_triangulation(inst, &d, &sampler, ctx.config()),
        LocalizeCheck::Trivial => trivial(inst, &d, &sampler, ctx)?,
        LocalizeCheck::Thick => {
            let t = is_thick(inst, &d, &sampler, ctx.samples, ctx.seed);
            let mut r = report(inst, "localize", ctx);
            r.absorb(&t.checks);
            r.set_data("subcategory", d.name().into());
            r.set_data("thick", t.is_thick().into());
            if let Some((x, s)) = t.witness {
                r.set_data("witness", json!({ "summand": inst.obj_json(&x), "member": inst.obj_json(&s) }));
            }
            r
        }
        LocalizeCheck::Kernel => {
            let mut r = report(inst, "localize", ctx);
            let mut c = Checks::new();
            for i in 0..ctx.samples {
                let x = sampler.object(inst, &mut sample_rng(ctx.seed, i));
                match kernel_of_loc(inst, &d, &x) {
                    Ok(k) => {
                        let closure = thick_closure_member(inst, &d, &x);
                        c.expect(anchors::LOC_KERNEL, k == closure, || {
                            format!("{}: Loc(X) ≅ 0 is {k} but thick closure membership is {closure}", inst.display_obj(&x))
                        });
                    }
                    Err(e) => c.push(anchors::LOC_KERNEL, false, format!("{}: {e}", inst.display_obj(&x))),
                }
            }
            r.absorb(&c);
            r.set_data("subcategory", d.name().into());
            r
        }
        LocalizeCheck::Members => {
            let mut r = report(inst, "localize", ctx);
            let mut c = Checks::new();
            let mut members = Vec::new();
            for i in 0..ctx.samples {
                let x = sampler.object(inst, &mut sample_rng(ctx.seed, i));
                let m = thick_closure_member(inst, &d, &x);
                c.push(anchors::THICK_CLOSURE, true, None);
                members.push(json!({ "object": inst.obj_json(&x), "member": m }));
            }
            r.absorb(&c);
            r.set_data("subcategory", d.name().into());
            r.set_data("members", members.into());
            r
        }
    };
    Ok(Outcome::plain(r))
}

/// Every sampled object and every sampled map becomes zero in `C/D`.
fn trivial<I: CliInstance>(inst: &I, d: &Subcategory<I>, sampler: &I::S, ctx: &Ctx) -> Result<Report, InputError> {
    let mut r = report(inst, "localize", ctx);
    let mut c = Checks::new();
    let (mut zero_objects, mut zero_maps) = (0usize, 0usize);
    for i in 0..ctx.samples {
        let mut rng = sample_rng(ctx.seed, i);
        let (x, y) = (sampler.object(inst, &mut rng), sampler.object(inst, &mut rng));
        let f = sampler.morphism(inst, &x, &y, &mut rng);
        match kernel_of_loc(inst, d, &x) {
            Ok(z) => {
                zero_objects += z as usize;
                c.expect(anchors::LOC_KERNEL, z, || format!("{} is not zero in C/D", inst.display_obj(&x)));
            }
            Err(e) => c.push(anchors::LOC_KERNEL, false, format!("{}: {e}", inst.display_obj(&x))),
        }
        match loc_vanishes(inst, d, &loc(inst, &f).f) {
            Ok(v) => {
                zero_maps += v.is_equal() as usize;
                c.expect(anchors::FRACTION_EQ, v.is_equal(), || "a sampled map survives in C/D".into());
            }
            Err(e) => c.push(anchors::FRACTION_EQ, false, e.to_string()),
        }
    }
    r.absorb(&c);
    let summary = if zero_objects == ctx.samples {
        "all sampled objects zero".to_string()
    } else {
        format!("{zero_objects} of {} sampled objects zero", ctx.samples)
    };
    r.set_data("subcategory", d.name().into());
    r.set_data("zero_objects", zero_objects.into());
    r.set_data("zero_maps", zero_maps.into());
    r.set_data("summary", summary.into());
    Ok(r)
}

/// Stable hom dimensions against the `b₁·b₂` formula, plus `Σ` on free and
/// trivial modules.
pub fn stable(
    inst: &FrobeniusInstance,
    bound: usize,
    source: Option<(usize, usize)>,
    target: Option<(usize, usize)>,
) -> Result<Outcome, InputError> {
    let range: Vec<(usize, usize)> = (0..=bound).flat_map(|a| (0..=bound).map(move |b| (a, b))).collect();
    let sources = source.map(|s| vec![s]).unwrap_or_else(|| range.clone());
    let targets = target.map(|t| vec![t]).unwrap_or(range);
    let mut r = Report::new("stable", &inst.name(), None);
    let mut c = Checks::new();
    let mut dims = Vec::new();
    for &(a1, b1) in &sources {
        for &(a2, b2) in &targets {
            let dim = inst.hom_space(&inst.object(a1, b1), &inst.object(a2, b2)).dim();
            c.expect("stable hom dimension", dim == b1 * b2, || {
                format!("Hom(N({a1},{b1}), N({a2},{b2})) has dimension {dim}, expected {}", b1 * b2)
            });
            if source.is_some() || target.is_some() {
                dims.push(json!({ "source": [a1, b1], "target": [a2, b2], "dim": dim }));
            }
        }
    }
    for a in 1..=bound.max(1) {
        let free = inst.module(&inst.object(a, 0));
        let (sigma, _) = free.suspend();
        c.expect("suspension of free is zero", sigma.dim() == 0, || format!("Σ of free rank {a} has dim {}", sigma.dim()));
    }
    let k = inst.module(&inst.object(0, 1));
    let sk = k.suspend().0.decompose();
    c.expect("suspension of k is k", (sk.free_rank, sk.trivial_rank) == (0, 1), || {
        format!("Σk decomposes as ({}, {})", sk.free_rank, sk.trivial_rank)
    });
    let nk = inst.object(0, 1);
    let id_k = inst.identity(&nk);
    c.expect("id_k is stably nonzero", !inst.mor_equal(&id_k, &inst.zero(&nk, &nk)), || "id_k is stably zero".into());
    r.absorb(&c);
    r.set_data("bound", bound.into());
    if !dims.is_empty() {
        r.set_data("dims", dims.into());
    }
    Ok(Outcome::plain(r))
}
