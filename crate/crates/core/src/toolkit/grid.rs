//! The 3×3 completion of a commuting square and biproducts obtained from it.

use crate::category::{Biproduct, CatError, Triangle, Triangulated};
use crate::report::{anchors, Checks};

use super::basic::{negate_triangle, rotate, square_anticommutes, square_commutes, suspend_each};
use super::biproducts::check_biproduct;
use super::filling::octahedron_for;

/// A 3×3 diagram of triangles completing a commuting square.
///
/// ```text
///  X   --f-->  Y   --f'-->  C_f  --f''-->  ΣX
///  |g          |k           |m             |Σg
///  X'  --h-->  Y'  --h'-->  C_h  --h''-->  ΣX'
///  |g'         |k'          |m'            |Σg'
///  C_g --j-->  C_k --j'-->  C_m  --j''-->  ΣC_g
///  |g''        |k''         |m''           |Σg''
///  ΣX  --Σf--> ΣY  --Σf'--> ΣC_f --Σf''--> Σ²X
/// ```
#[derive(Clone, Debug)]
pub struct GridCompletion<M> {
    pub rows: [Triangle<M>; 3],
    pub cols: [Triangle<M>; 3],
}

/// Completes the square `k∘f = h∘g` whose sides carry the triangles
/// `row1` on `f`, `row2` on `h`, `col1` on `g` and `col2` on `k`.
///
/// With `d = k∘f`, octahedra on `(f, k)` and `(g, h)` give triangles
/// `C_f → C_d → C_k` and `C_g → C_d → C_h`; a third octahedron on
/// `p: C_f → C_d` followed by `q': C_d → C_h` supplies the bottom row.
pub fn three_by_three<I: Triangulated>(
    inst: &I,
    row1: &Triangle<I::Mor>,
    row2: &Triangle<I::Mor>,
    col1: &Triangle<I::Mor>,
    col2: &Triangle<I::Mor>,
) -> Result<GridCompletion<I::Mor>, CatError> {
    let (f, h, g, k) = (&row1.f, &row2.f, &col1.f, &col2.f);
    if inst.source(f) != inst.source(g)
        || inst.target(f) != inst.source(k)
        || inst.target(g) != inst.source(h)
        || inst.target(h) != inst.target(k)
    {
        return Err(CatError::ShapeMismatch("the four maps do not form a square".into()));
    }
    if !square_commutes(inst, k, f, h, g) {
        return Err(CatError::PreconditionViolated("k∘f ≠ h∘g".into()));
    }
    let d = inst.compose(k, f)?;
    let td = inst.cone(&d);
    let p_oct = octahedron_for(inst, row1, col2, &td)?;
    let td_hg = Triangle::new(inst.compose(h, g)?, td.g.clone(), td.h.clone());
    let q_oct = octahedron_for(inst, col1, row2, &td_hg)?;
    let p_tri = p_oct.triangle();
    let q_tri = q_oct.triangle();
    let m = inst.compose(&q_tri.g, &p_tri.f)?;
    let m_tri = inst.cone(&m);
    let j_oct = octahedron_for(inst, &p_tri, &rotate(inst, &q_tri), &m_tri)?;
    let j = inst.compose(&p_tri.g, &q_tri.f)?;
    let row3 = Triangle::new(j, j_oct.k.clone(), j_oct.k1.clone());
    Ok(GridCompletion { rows: [row1.clone(), row2.clone(), row3], cols: [col1.clone(), col2.clone(), m_tri] })
}

/// Rows and columns are triangles, eight squares commute and the bottom
/// right square anticommutes.
pub fn check_grid<I: Triangulated>(inst: &I, grid: &GridCompletion<I::Mor>) -> Checks {
    let mut c = Checks::new();
    let [r1, r2, r3] = &grid.rows;
    let [c1, c2, c3] = &grid.cols;
    for (name, t) in [("row 1", r1), ("row 2", r2), ("row 3", r3), ("column 1", c1), ("column 2", c2), ("column 3", c3)] {
        c.expect(anchors::GRID_LINES, inst.is_triangle(t), || format!("{name} is not a triangle"));
    }
    for (name, t) in [("row 4", r1), ("column 4", c1)] {
        let ok = inst.is_triangle(&negate_triangle(inst, &suspend_each(inst, t)));
        c.expect(anchors::GRID_LINES, ok, || format!("{name} is not the negative of a triangle"));
    }
    let s = |m: &I::Mor| inst.suspend_mor(m);
    // (label, a, b, c, d) meaning a∘b = c∘d.
    #[allow(clippy::type_complexity)]
    let squares: [(&str, &I::Mor, &I::Mor, &I::Mor, &I::Mor); 8] = [
        ("k∘f = h∘g", &c2.f, &r1.f, &r2.f, &c1.f),
        ("m∘f' = h'∘k", &c3.f, &r1.g, &r2.g, &c2.f),
        ("Σg∘f'' = h''∘m", &s(&c1.f), &r1.h, &r2.h, &c3.f),
        ("k'∘h = j∘g'", &c2.g, &r2.f, &r3.f, &c1.g),
        ("m'∘h' = j'∘k'", &c3.g, &r2.g, &r3.g, &c2.g),
        ("Σg'∘h'' = j''∘m'", &s(&c1.g), &r2.h, &r3.h, &c3.g),
        ("k''∘j = Σf∘g''", &c2.h, &r3.f, &s(&r1.f), &c1.h),
        ("m''∘j' = Σf'∘k''", &c3.h, &r3.g, &s(&r1.g), &c2.h),
    ];
    for (label, a, b, cc, d) in squares {
        c.expect(anchors::GRID_SQUARE, square_commutes(inst, a, b, cc, d), || format!("{label} fails"));
    }
    c.expect(
        anchors::GRID_CORNER,
        square_anticommutes(inst, &s(&r1.h), &c3.h, &s(&c1.h), &r3.h),
        || "Σf''∘m'' ≠ −Σg''∘j''".into(),
    );
    c
}

/// The biproduct `X ⊕ Y` read off the 3×3 completion of the square of zero
/// maps on `0`, `Σ⁻¹X`, `Σ⁻¹Y`, `0`.
///
/// Rows are `0 → Σ⁻¹X = Σ⁻¹X → 0` and `Σ⁻¹Y → 0 → Y = Y`, columns
/// `0 → Σ⁻¹Y = Σ⁻¹Y → 0` and `Σ⁻¹X → 0 → X = X`; the third column then
/// reads `Σ⁻¹X --0--> Y --i_Y--> X ⊕ Y --p_X--> X` and the third row
/// `Σ⁻¹Y --0--> X --i_X--> X ⊕ Y --p_Y--> Y`.
#[allow(clippy::type_complexity)]
pub fn biproduct_from_axioms<I: Triangulated>(
    inst: &I,
    x: &I::Obj,
    y: &I::Obj,
) -> Result<(GridCompletion<I::Mor>, Biproduct<I::Obj, I::Mor>), CatError> {
    let zero = inst.zero_object();
    let sz = inst.suspend_obj(&zero);
    let dx = inst.desuspend_obj(x);
    let dy = inst.desuspend_obj(y);
    if inst.suspend_obj(&dx) != *x || inst.suspend_obj(&dy) != *y {
        return Err(CatError::PreconditionViolated("Σ⁻¹ is not inverse to Σ on these objects".into()));
    }
    let row1 = Triangle::new(inst.zero(&zero, &dx), inst.identity(&dx), inst.zero(&dx, &sz));
    let row2 = Triangle::new(inst.zero(&dy, &zero), inst.zero(&zero, y), inst.identity(y));
    let col1 = Triangle::new(inst.zero(&zero, &dy), inst.identity(&dy), inst.zero(&dy, &sz));
    let col2 = Triangle::new(inst.zero(&dx, &zero), inst.zero(&zero, x), inst.identity(x));
    let grid = three_by_three(inst, &row1, &row2, &col1, &col2)?;
    let (r3, c3) = (&grid.rows[2], &grid.cols[2]);
    let b = Biproduct {
        object: inst.target(&c3.g),
        i1: r3.g.clone(),
        i2: c3.g.clone(),
        p1: c3.h.clone(),
        p2: r3.h.clone(),
    };
    Ok((grid, b))
}

/// [`check_grid`] plus the biproduct equations for the degenerate grid.
pub fn check_biproduct_from_axioms<I: Triangulated>(
    inst: &I,
    x: &I::Obj,
    y: &I::Obj,
    grid: &GridCompletion<I::Mor>,
    b: &Biproduct<I::Obj, I::Mor>,
) -> Checks {
    let mut c = check_grid(inst, grid);
    c.extend(check_biproduct(inst, x, y, b, anchors::BIPRODUCT_AXIOMS));
    c
}
