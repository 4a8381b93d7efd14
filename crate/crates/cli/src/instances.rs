//! What the front end needs from each instance beyond [`Triangulated`]:
//! samplers, file formats and the named subcategories.

use serde_json::{json, Value};
use tricat::category::{Triangle, Triangulated};
use tricat::chain::{ChainInstance, ChainMap, ChainSampler, Complex};
use tricat::frobenius::{FrobeniusInstance, FrobeniusSampler, NormalForm, SqZeroModule, StableMor};
use tricat::linalg::{matrix_to_json, ExactMatrix};
use tricat::localization::{
    acyclic, d_from_morphism_class, d_from_morphism_class_vect, even_dim, vect_all, GeneratedSubcategory, Subcategory,
};
use tricat::toolkit::{Op, OpSampler, Sampler};
use tricat::vect::{VectInstance, VectSampler, VectSpace};

use crate::input::{matrix_value, parse_json, parse_matrix, InputError, SubcatSpec};

/// Saturation budget for subcategories generated by cones.
pub const SATURATION_BUDGET: usize = 200;

/// Sampler size limits from the command line.
#[derive(Clone, Copy, Debug)]
pub struct SampleLimits {
    pub max_dim: usize,
    pub max_len: usize,
}

pub enum SubcatChoice<I: Triangulated> {
    Exact(Subcategory<I>),
    Generated(GeneratedSubcategory<I>),
}

pub trait CliInstance: Triangulated + Sized + 'static {
    type S: Sampler<Self>;

    fn sampler(&self, limits: SampleLimits) -> Self::S;
    fn parse_mor(&self, text: &str) -> Result<Self::Mor, InputError>;
    fn mor_json(&self, f: &Self::Mor) -> Value;
    fn obj_json(&self, x: &Self::Obj) -> Value;
    fn subcategory(&self, spec: &SubcatSpec) -> Result<SubcatChoice<Self>, InputError>;
    /// Instance-specific structure of an input file.
    fn decompose(&self, text: &str) -> Result<Value, InputError>;

    fn triangle_json(&self, t: &Triangle<Self::Mor>) -> Value {
        json!({ "f": self.mor_json(&t.f), "g": self.mor_json(&t.g), "h": self.mor_json(&t.h) })
    }
}

fn unknown_kind(kind: &str, instance: &str) -> InputError {
    InputError(format!("subcategory kind {kind:?} is not available for {instance}"))
}

fn generator_mors<I: CliInstance>(inst: &I, spec: &SubcatSpec) -> Result<Vec<I::Mor>, InputError> {
    spec.generators.iter().map(|g| inst.parse_mor(&g.to_string())).collect()
}

impl CliInstance for VectInstance {
    type S = VectSampler;

    fn sampler(&self, limits: SampleLimits) -> VectSampler {
        VectSampler { max_dim: limits.max_dim }
    }

    fn parse_mor(&self, text: &str) -> Result<ExactMatrix, InputError> {
        parse_matrix(text, self.field())
    }

    fn mor_json(&self, f: &ExactMatrix) -> Value {
        matrix_to_json(f)
    }

    fn obj_json(&self, x: &VectSpace) -> Value {
        json!({ "dim": x.dim })
    }

    fn subcategory(&self, spec: &SubcatSpec) -> Result<SubcatChoice<Self>, InputError> {
        Ok(SubcatChoice::Exact(match spec.kind.as_str() {
            "even_dim" => even_dim(self),
            "zero_only" => Subcategory::zero_only(),
            "all" => vect_all(self),
            "generated_by_cones" => d_from_morphism_class_vect(self, &generator_mors(self, spec)?),
            k => return Err(unknown_kind(k, "vect")),
        }))
    }

    /// A triangle `{"f", "g", "h"}` split into elementary triangles.
    fn decompose(&self, text: &str) -> Result<Value, InputError> {
        let v = parse_json(text)?;
        let part = |k: &str| -> Result<ExactMatrix, InputError> {
            matrix_value(v.get(k).ok_or_else(|| InputError(format!("triangle needs \"{k}\"")))?, self.field())
        };
        let t = Triangle::new(part("f")?, part("g")?, part("h")?);
        let d = self.decompose_triangle(&t)?;
        Ok(json!({
            "counts": [d.counts.0, d.counts.1, d.counts.2],
            "iso": { "a": matrix_to_json(&d.iso.a), "b": matrix_to_json(&d.iso.b), "c": matrix_to_json(&d.iso.c) },
        }))
    }
}

impl CliInstance for ChainInstance {
    type S = ChainSampler;

    fn sampler(&self, limits: SampleLimits) -> ChainSampler {
        ChainSampler { max_dim: limits.max_dim, max_len: limits.max_len }
    }

    fn parse_mor(&self, text: &str) -> Result<ChainMap, InputError> {
        let f = ChainMap::from_json(&parse_json(text)?)?;
        if f.source().field() != self.field() {
            return Err(InputError(format!("chain map is over {} but --field is {}", f.source().field(), self.field())));
        }
        Ok(f)
    }

    fn mor_json(&self, f: &ChainMap) -> Value {
        f.to_json()
    }

    fn obj_json(&self, x: &Complex) -> Value {
        let mut v = x.to_json();
        v["homology"] = json!(x.homology_dims());
        v
    }

    fn subcategory(&self, spec: &SubcatSpec) -> Result<SubcatChoice<Self>, InputError> {
        Ok(match spec.kind.as_str() {
            "zero_only" => SubcatChoice::Exact(Subcategory::zero_only()),
            "acyclic" => SubcatChoice::Exact(acyclic()),
            "all" => {
                let gens = (-6..=6).map(|n| Complex::concentrated(self.field(), n, 1)).collect();
                SubcatChoice::Exact(Subcategory::all(gens))
            }
            "generated_by_cones" => {
                SubcatChoice::Generated(d_from_morphism_class(self, &generator_mors(self, spec)?, SATURATION_BUDGET))
            }
            k => return Err(unknown_kind(k, "chain")),
        })
    }

    /// A complex and its homology dimensions.
    fn decompose(&self, text: &str) -> Result<Value, InputError> {
        let x = Complex::from_json(&parse_json(text)?)?;
        Ok(json!({ "complex": x.to_json(), "homology": x.homology_dims(), "acyclic": x.is_acyclic() }))
    }
}

/// A normal form `{"free": a, "trivial": b}`, or a module `{"dim", "x"}`
/// with the isomorphism from its normal form.
fn parse_module_side(inst: &FrobeniusInstance, v: &Value) -> Result<(NormalForm, ExactMatrix), InputError> {
    if let (Some(a), Some(b)) = (v.get("free").and_then(Value::as_u64), v.get("trivial").and_then(Value::as_u64)) {
        let x = inst.object(a as usize, b as usize);
        return Ok((x, ExactMatrix::identity(inst.field(), x.dim())));
    }
    let m = SqZeroModule::from_json(v)?;
    if m.field() != inst.field() {
        return Err(InputError(format!("module is over {} but --field is {}", m.field(), inst.field())));
    }
    Ok(inst.normalize(&m))
}

impl CliInstance for FrobeniusInstance {
    type S = FrobeniusSampler;

    fn sampler(&self, limits: SampleLimits) -> FrobeniusSampler {
        FrobeniusSampler { max_dim: limits.max_dim }
    }

    /// `{"source", "target", "matrix"}`; module endpoints are transported
    /// to their normal forms.
    fn parse_mor(&self, text: &str) -> Result<StableMor, InputError> {
        let v = parse_json(text)?;
        let side = |k: &str| v.get(k).ok_or_else(|| InputError(format!("module map needs \"{k}\"")));
        let (s, ps) = parse_module_side(self, side("source")?)?;
        let (t, pt) = parse_module_side(self, side("target")?)?;
        let m = matrix_value(side("matrix")?, self.field())?;
        if m.shape() != (t.dim(), s.dim()) {
            return Err(InputError("matrix shape does not match the modules".into()));
        }
        let inv = pt.inverse().ok_or_else(|| InputError("singular normal-form basis".into()))?;
        Ok(self.mor(s, t, &(&inv * &m) * &ps)?)
    }

    fn mor_json(&self, f: &StableMor) -> Value {
        json!({ "source": self.obj_json(&f.source), "target": self.obj_json(&f.target), "matrix": matrix_to_json(&f.matrix) })
    }

    fn obj_json(&self, x: &NormalForm) -> Value {
        json!({ "free": x.free_rank, "trivial": x.trivial_rank })
    }

    fn subcategory(&self, spec: &SubcatSpec) -> Result<SubcatChoice<Self>, InputError> {
        Ok(match spec.kind.as_str() {
            "zero_only" => SubcatChoice::Exact(Subcategory::zero_only()),
            "all" => SubcatChoice::Exact(Subcategory::all(vec![self.object(0, 1)])),
            "generated_by_cones" => {
                SubcatChoice::Generated(d_from_morphism_class(self, &generator_mors(self, spec)?, SATURATION_BUDGET))
            }
            k => return Err(unknown_kind(k, "frobenius")),
        })
    }

    /// A module `{"dim", "x"}` split into free and trivial summands.
    fn decompose(&self, text: &str) -> Result<Value, InputError> {
        let m = SqZeroModule::from_json(&parse_json(text)?)?;
        let d = m.decompose();
        let (sigma, _) = m.suspend();
        let sd = sigma.decompose();
        Ok(json!({
            "free": d.free_rank,
            "trivial": d.trivial_rank,
            "basis": matrix_to_json(&d.basis),
            "suspension": { "free": sd.free_rank, "trivial": sd.trivial_rank },
        }))
    }
}

impl<I: CliInstance + Clone> CliInstance for Op<I> {
    type S = OpSampler<I::S>;

    fn sampler(&self, limits: SampleLimits) -> Self::S {
        OpSampler(self.inner().sampler(limits))
    }

    fn parse_mor(&self, text: &str) -> Result<I::Mor, InputError> {
        self.inner().parse_mor(text)
    }

    fn mor_json(&self, f: &I::Mor) -> Value {
        self.inner().mor_json(f)
    }

    fn obj_json(&self, x: &I::Obj) -> Value {
        self.inner().obj_json(x)
    }

    fn subcategory(&self, spec: &SubcatSpec) -> Result<SubcatChoice<Self>, InputError> {
        Ok(match self.inner().subcategory(spec)? {
            SubcatChoice::Exact(d) => SubcatChoice::Exact(d.opposite()),
            SubcatChoice::Generated(g) => SubcatChoice::Generated(GeneratedSubcategory { cones: g.cones, budget: g.budget }),
        })
    }

    fn decompose(&self, text: &str) -> Result<Value, InputError> {
        self.inner().decompose(text)
    }
}
