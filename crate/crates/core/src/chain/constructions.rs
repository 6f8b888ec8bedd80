//! Standard constructions on complexes with their explicit block matrices.
//!
//! Block conventions (homological grading, `d` lowers degree):
//!
//! * cone: `C_n = X_n ⊕ X_{n-1}`, `d(x, x') = (dx - x', -dx')`.
//! * mapping cylinder of `f: X -> Y`: `Cyl_n = X_n ⊕ X_{n-1} ⊕ Y_n`,
//!   `d(x, x', y) = (dx - x', -dx', dy + f x')`, `i(x) = (x, 0, 0)`,
//!   `σ(x, x', y) = f x + y`.
//! * mapping cocylinder of `f: X -> Y`: `E_n = X_n ⊕ Y_n ⊕ Y_{n+1}`,
//!   `d(x, y, y') = (dx, dy, y - f x - dy')`, `τ(x) = (x, f x, 0)`,
//!   `p(x, y, y') = y`.
//!
//! The cone is literally the cylinder of `X -> 0`.

use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::jcat::{Factorization, FactorizationKind, PullbackSquare, PushoutSquare};
use crate::linalg::Mat;

/// Assembles a block matrix from `(block_row, block_col, block)` entries.
fn assemble(row_dims: &[usize], col_dims: &[usize], blocks: Vec<(usize, usize, Mat)>) -> Mat {
    let offset = |dims: &[usize], k: usize| dims[..k].iter().sum::<usize>();
    let mut m = Mat::zeros(row_dims.iter().sum(), col_dims.iter().sum());
    for (r, c, b) in blocks {
        assert_eq!(b.shape(), (row_dims[r], col_dims[c]), "block ({r}, {c}) has wrong shape");
        m.set_block(offset(row_dims, r), offset(col_dims, c), &b);
    }
    m
}

fn complex_from_blocks(
    degrees: impl IntoIterator<Item = i64>,
    dims_of: impl Fn(i64) -> Vec<usize>,
    diff_of: impl Fn(i64) -> Vec<(usize, usize, Mat)>,
) -> Result<Complex> {
    let degrees: Vec<i64> = degrees.into_iter().collect();
    let dims = degrees.iter().map(|&n| (n, dims_of(n).iter().sum())).collect();
    let diff = degrees
        .iter()
        .map(|&n| (n, assemble(&dims_of(n - 1), &dims_of(n), diff_of(n))))
        .collect();
    Complex::new(dims, diff)
}

fn sorted_union(parts: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = parts.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn map_from_blocks(
    source: &Complex,
    target: &Complex,
    src_dims: impl Fn(i64) -> Vec<usize>,
    tgt_dims: impl Fn(i64) -> Vec<usize>,
    blocks: impl Fn(i64) -> Vec<(usize, usize, Mat)>,
) -> Result<ChainMap> {
    let comps = source
        .degrees()
        .filter(|&n| target.dim(n) > 0)
        .map(|n| (n, assemble(&tgt_dims(n), &src_dims(n), blocks(n))))
        .collect();
    ChainMap::new(source.clone(), target.clone(), comps)
}

pub fn direct_sum(x: &Complex, y: &Complex) -> Complex {
    let degrees = Complex::degree_union([x, y]);
    complex_from_blocks(
        degrees,
        |n| vec![x.dim(n), y.dim(n)],
        |n| vec![(0, 0, x.d(n).into_owned()), (1, 1, y.d(n).into_owned())],
    )
    .expect("sum of complexes is a complex")
}

/// `x ⊕ y` with its inclusions and projections.
pub struct DirectSum {
    pub object: Complex,
    pub in_left: ChainMap,
    pub in_right: ChainMap,
    pub pr_left: ChainMap,
    pub pr_right: ChainMap,
}

pub fn direct_sum_with_maps(x: &Complex, y: &Complex) -> DirectSum {
    let s = direct_sum(x, y);
    let dims = |n: i64| vec![x.dim(n), y.dim(n)];
    let one = |n: i64| vec![x.dim(n)];
    let two = |n: i64| vec![y.dim(n)];
    let build = |src: &Complex, tgt: &Complex, sd: &dyn Fn(i64) -> Vec<usize>, td: &dyn Fn(i64) -> Vec<usize>, r: usize, c: usize, dim: &dyn Fn(i64) -> usize| {
        map_from_blocks(src, tgt, sd, td, |n| vec![(r, c, Mat::identity(dim(n)))])
            .expect("coordinate maps commute with block differentials")
    };
    let xd = |n: i64| x.dim(n);
    let yd = |n: i64| y.dim(n);
    DirectSum {
        in_left: build(x, &s, &one, &dims, 0, 0, &xd),
        in_right: build(y, &s, &two, &dims, 1, 0, &yd),
        pr_left: build(&s, x, &dims, &one, 0, 0, &xd),
        pr_right: build(&s, y, &dims, &two, 0, 1, &yd),
        object: s,
    }
}

/// Block sum `f ⊕ g: X ⊕ X' -> Y ⊕ Y'`.
pub fn direct_sum_map(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let source = direct_sum(f.source(), g.source());
    let target = direct_sum(f.target(), g.target());
    map_from_blocks(
        &source,
        &target,
        |n| vec![f.source().dim(n), g.source().dim(n)],
        |n| vec![f.target().dim(n), g.target().dim(n)],
        |n| vec![(0, 0, f.comp(n).into_owned()), (1, 1, g.comp(n).into_owned())],
    )
    .expect("sum of chain maps is a chain map")
}

/// `X[k]_n = X_{n-k}` with differential `(-1)^k d`.
pub fn shift(x: &Complex, k: i64) -> Complex {
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let dims = x.dims().iter().map(|(&n, &d)| (n + k, d)).collect();
    let diff = x
        .degrees()
        .map(|n| (n + k, x.d(n).scale(&sign.into())))
        .collect();
    Complex::new(dims, diff).expect("shift preserves d^2 = 0")
}

/// Linear dual: `(X*)_n = (X_{-n})*` with `d*_n = (d_{1-n})^T`.
pub fn dualize(x: &Complex) -> Complex {
    let dims = x.dims().iter().map(|(&n, &d)| (-n, d)).collect();
    let diff = x.degrees().map(|n| (1 - n, x.d(n).transpose())).collect();
    Complex::new(dims, diff).expect("transpose preserves d^2 = 0")
}

/// `f: X -> Y` becomes `f*: Y* -> X*` with `(f*)_n = (f_{-n})^T`.
pub fn dualize_map(f: &ChainMap) -> ChainMap {
    let source = dualize(f.target());
    let target = dualize(f.source());
    let comps = f.comps().iter().map(|(&n, m)| (-n, m.transpose())).collect();
    ChainMap::new(source, target, comps).expect("transpose of a chain map is a chain map")
}

/// The cone on `x` with its inclusion and the collapse to zero.
pub struct Cone {
    pub object: Complex,
    pub incl: ChainMap,
    pub collapse: ChainMap,
}

pub fn cone(x: &Complex) -> Cone {
    let fact = cylinder_factor(&ChainMap::zero(x.clone(), Complex::zero()))
        .expect("cylinder of a zero map");
    Cone { object: fact.middle, incl: fact.first, collapse: fact.second }
}

/// C-type factorization through the mapping cylinder: `f = σ ∘ i`.
pub fn cylinder_factor(f: &ChainMap) -> Result<Factorization<Complex, ChainMap>> {
    let (x, y) = (f.source(), f.target());
    let dims = |n: i64| vec![x.dim(n), x.dim(n - 1), y.dim(n)];
    let degrees = sorted_union(x.degrees().flat_map(|n| [n, n + 1]).chain(y.degrees()));
    let cyl = complex_from_blocks(degrees, dims, |n| {
        let ident = Mat::identity(x.dim(n - 1));
        vec![
            (0, 0, x.d(n).into_owned()),
            (0, 1, ident.neg()),
            (1, 1, x.d(n - 1).neg()),
            (2, 1, f.comp(n - 1).into_owned()),
            (2, 2, y.d(n).into_owned()),
        ]
    })?;
    let i = map_from_blocks(x, &cyl, |n| vec![x.dim(n)], dims, |n| {
        vec![(0, 0, Mat::identity(x.dim(n)))]
    })?;
    let sigma = map_from_blocks(&cyl, y, dims, |n| vec![y.dim(n)], |n| {
        vec![(0, 0, f.comp(n).into_owned()), (0, 2, Mat::identity(y.dim(n)))]
    })?;
    Ok(Factorization { kind: FactorizationKind::C, first: i, middle: cyl, second: sigma })
}

/// F-type factorization through the mapping cocylinder: `f = p ∘ τ`.
pub fn cocylinder_factor(f: &ChainMap) -> Result<Factorization<Complex, ChainMap>> {
    let (x, y) = (f.source(), f.target());
    let dims = |n: i64| vec![x.dim(n), y.dim(n), y.dim(n + 1)];
    let degrees = sorted_union(x.degrees().chain(y.degrees().flat_map(|n| [n, n - 1])));
    let path = complex_from_blocks(degrees, dims, |n| {
        vec![
            (0, 0, x.d(n).into_owned()),
            (1, 1, y.d(n).into_owned()),
            (2, 0, f.comp(n).neg()),
            (2, 1, Mat::identity(y.dim(n))),
            (2, 2, y.d(n + 1).neg()),
        ]
    })?;
    let tau = map_from_blocks(x, &path, |n| vec![x.dim(n)], dims, |n| {
        vec![(0, 0, Mat::identity(x.dim(n))), (1, 0, f.comp(n).into_owned())]
    })?;
    let p = map_from_blocks(&path, y, dims, |n| vec![y.dim(n)], |n| {
        vec![(0, 1, Mat::identity(y.dim(n)))]
    })?;
    Ok(Factorization { kind: FactorizationKind::F, first: tau, middle: path, second: p })
}

fn check_square(f: &ChainMap, g: &ChainMap, top: &ChainMap, bottom: &ChainMap) -> Result<()> {
    // top: f.source -> g.source, bottom: f.target -> g.target, g∘top = bottom∘f.
    let lhs = g.after(top).map_err(|e| Error::NonFunctorial(e.to_string()))?;
    let rhs = bottom.after(f).map_err(|e| Error::NonFunctorial(e.to_string()))?;
    if lhs != rhs {
        return Err(Error::NonFunctorial("square of maps does not commute".into()));
    }
    Ok(())
}

/// Induced map `Cyl(f) -> Cyl(g)` for a commuting square `g∘top = bottom∘f`:
/// `(x, x', y) ↦ (top x, top x', bottom y)`.
pub fn cylinder_map(
    f: &ChainMap,
    g: &ChainMap,
    top: &ChainMap,
    bottom: &ChainMap,
) -> Result<ChainMap> {
    check_square(f, g, top, bottom)?;
    let (from, to) = (cylinder_factor(f)?, cylinder_factor(g)?);
    let (x, y) = (f.source(), f.target());
    let (x2, y2) = (g.source(), g.target());
    map_from_blocks(
        &from.middle,
        &to.middle,
        |n| vec![x.dim(n), x.dim(n - 1), y.dim(n)],
        |n| vec![x2.dim(n), x2.dim(n - 1), y2.dim(n)],
        |n| {
            vec![
                (0, 0, top.comp(n).into_owned()),
                (1, 1, top.comp(n - 1).into_owned()),
                (2, 2, bottom.comp(n).into_owned()),
            ]
        },
    )
}

/// Induced map `Cocyl(f) -> Cocyl(g)`: `(x, y, y') ↦ (top x, bottom y, bottom y')`.
pub fn cocylinder_map(
    f: &ChainMap,
    g: &ChainMap,
    top: &ChainMap,
    bottom: &ChainMap,
) -> Result<ChainMap> {
    check_square(f, g, top, bottom)?;
    let (from, to) = (cocylinder_factor(f)?, cocylinder_factor(g)?);
    let (x, y) = (f.source(), f.target());
    let (x2, y2) = (g.source(), g.target());
    map_from_blocks(
        &from.middle,
        &to.middle,
        |n| vec![x.dim(n), y.dim(n), y.dim(n + 1)],
        |n| vec![x2.dim(n), y2.dim(n), y2.dim(n + 1)],
        |n| {
            vec![
                (0, 0, top.comp(n).into_owned()),
                (1, 1, bottom.comp(n).into_owned()),
                (2, 2, bottom.comp(n + 1).into_owned()),
            ]
        },
    )
}

/// Strict pullback, computed degreewise as the kernel of `[f | -p]` with the
/// deterministic kernel basis.
pub type Pullback = PullbackSquare<Complex, ChainMap>;

pub fn pullback(f: &ChainMap, p: &ChainMap) -> Result<Pullback> {
    if f.target() != p.target() {
        return Err(Error::TargetMismatch("pullback of maps with different targets".into()));
    }
    let (a, e) = (f.source(), p.source());
    let degrees = Complex::degree_union([a, e]);
    let kernels: BTreeMap<i64, Mat> = degrees
        .iter()
        .map(|&n| {
            let m = f.comp(n).hstack(&p.comp(n).neg()).expect("common target");
            (n, m.kernel_basis())
        })
        .collect();
    let kernel = |n: i64| {
        kernels.get(&n).cloned().unwrap_or_else(|| Mat::zeros(a.dim(n) + e.dim(n), 0))
    };
    let mut dims = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for &n in &degrees {
        let k = kernel(n);
        dims.insert(n, k.cols());
        let ambient = a.d(n).block_diag(&e.d(n));
        let rhs = ambient.dot(&k);
        let d = kernel(n - 1)
            .solve(&rhs)?
            .expect("the kernel is a subcomplex of A ⊕ E");
        diff.insert(n, d);
    }
    let object = Complex::new(dims, diff)?;
    let proj = |lo: fn(&Complex, i64) -> usize, hi: fn(&Complex, &Complex, i64) -> usize, tgt: &Complex| {
        let comps = object
            .degrees()
            .map(|n| {
                let k = kernel(n);
                (n, k.submatrix(lo(a, n), hi(a, e, n), 0, k.cols()))
            })
            .collect();
        ChainMap::new(object.clone(), tgt.clone(), comps)
    };
    let pr_f = proj(|_, _| 0, |a, _, n| a.dim(n), a)?;
    let pr_p = proj(|a, n| a.dim(n), |a, e, n| a.dim(n) + e.dim(n), e)?;
    Ok(Pullback { object, pr_f, pr_p })
}

/// Unique `m: T -> P` with `pr_f m = u` and `pr_p m = v`, or `None` when
/// `(u, v)` does not land in the pullback.
pub fn pullback_mediator(pb: &Pullback, u: &ChainMap, v: &ChainMap) -> Result<Option<ChainMap>> {
    if u.source() != v.source() || u.target() != pb.pr_f.target() || v.target() != pb.pr_p.target() {
        return Err(Error::ShapeMismatch("mediator legs do not match the pullback".into()));
    }
    let t = u.source();
    let mut comps = BTreeMap::new();
    for n in t.degrees() {
        let k = pb.pr_f.comp(n).vstack(&pb.pr_p.comp(n))?;
        let rhs = u.comp(n).vstack(&v.comp(n))?;
        match k.solve(&rhs)? {
            Some(m) => {
                comps.insert(n, m);
            }
            None => return Ok(None),
        }
    }
    ChainMap::new(t.clone(), pb.object.clone(), comps).map(Some)
}

/// Strict pushout, computed degreewise as the cokernel of `[i ; -g]`.
pub type Pushout = PushoutSquare<Complex, ChainMap>;

pub fn pushout(i: &ChainMap, g: &ChainMap) -> Result<Pushout> {
    if i.source() != g.source() {
        return Err(Error::SourceMismatch("pushout of maps with different sources".into()));
    }
    let (x, y) = (i.target(), g.target());
    let degrees = Complex::degree_union([x, y]);
    let quotients: BTreeMap<i64, Mat> = degrees
        .iter()
        .map(|&n| {
            let m = i.comp(n).vstack(&g.comp(n).neg()).expect("common source");
            (n, m.transpose().kernel_basis().transpose())
        })
        .collect();
    let quotient = |n: i64| {
        quotients.get(&n).cloned().unwrap_or_else(|| Mat::zeros(0, x.dim(n) + y.dim(n)))
    };
    let mut dims = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for &n in &degrees {
        let q = quotient(n);
        dims.insert(n, q.rows());
        let ambient = x.d(n).block_diag(&y.d(n));
        let rhs = quotient(n - 1).dot(&ambient);
        let dt = q
            .transpose()
            .solve(&rhs.transpose())?
            .expect("the image of [i; -g] is a subcomplex");
        diff.insert(n, dt.transpose());
    }
    let object = Complex::new(dims, diff)?;
    let leg = |src: &Complex, lo: &dyn Fn(i64) -> usize, hi: &dyn Fn(i64) -> usize| {
        let comps = src
            .degrees()
            .filter(|&n| object.dim(n) > 0)
            .map(|n| {
                let q = quotient(n);
                (n, q.submatrix(0, q.rows(), lo(n), hi(n)))
            })
            .collect();
        ChainMap::new(src.clone(), object.clone(), comps)
    };
    let in_i = leg(x, &|_| 0, &|n| x.dim(n))?;
    let in_g = leg(y, &|n| x.dim(n), &|n| x.dim(n) + y.dim(n))?;
    Ok(Pushout { object, in_i, in_g })
}

/// Unique `h: Q -> T` with `h in_i = u` and `h in_g = v`, or `None` when
/// `(u, v)` does not factor through the pushout.
pub fn pushout_mediator(po: &Pushout, u: &ChainMap, v: &ChainMap) -> Result<Option<ChainMap>> {
    if u.target() != v.target() || u.source() != po.in_i.source() || v.source() != po.in_g.source() {
        return Err(Error::ShapeMismatch("mediator legs do not match the pushout".into()));
    }
    let t = u.target();
    let mut comps = BTreeMap::new();
    for n in po.object.degrees() {
        let q = po.in_i.comp(n).hstack(&po.in_g.comp(n))?;
        let rhs = u.comp(n).hstack(&v.comp(n))?;
        match q.transpose().solve(&rhs.transpose())? {
            Some(ht) => {
                comps.insert(n, ht.transpose());
            }
            None => return Ok(None),
        }
    }
    // Degrees where Q vanishes but the legs do not must have zero legs.
    for n in Complex::degree_union([po.in_i.source(), po.in_g.source()]) {
        if po.object.dim(n) == 0 && !(u.comp(n).is_zero() && v.comp(n).is_zero()) {
            return Ok(None);
        }
    }
    ChainMap::new(po.object.clone(), t.clone(), comps).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology::{homology_dims, is_acyclic, is_quasi_iso, GradedDims};

    #[test]
    fn cone_examples() {
        let c = cone(&Complex::zero());
        assert!(c.object.is_zero());
        let c = cone(&Complex::sphere(2));
        assert_eq!(c.object.dims(), &BTreeMap::from([(2, 1), (3, 1)]));
        assert!(is_acyclic(&c.object));
        assert!(c.incl.is_injective());
    }

    #[test]
    fn shift_and_dual() {
        assert_eq!(shift(&Complex::sphere(0), 3), Complex::sphere(3));
        assert_eq!(dualize(&Complex::sphere(2)), Complex::sphere(-2));
        let d = Complex::disc(1);
        assert_eq!(dualize(&dualize(&d)), d);
        assert_eq!(homology_dims(&shift(&d, 1)), GradedDims::default());
    }

    #[test]
    fn cylinder_of_identity() {
        let s0 = Complex::sphere(0);
        let f = ChainMap::identity(s0.clone());
        let fact = cylinder_factor(&f).unwrap();
        assert_eq!(fact.second.after(&fact.first).unwrap(), f);
        assert!(fact.first.is_injective());
        assert!(fact.second.is_surjective() && is_quasi_iso(&fact.second));
        assert_eq!(homology_dims(&fact.middle), homology_dims(&s0));
    }

    #[test]
    fn cylinder_of_zero_inclusion_is_target() {
        let y = Complex::disc(2);
        let f = ChainMap::zero(Complex::zero(), y.clone());
        let fact = cylinder_factor(&f).unwrap();
        assert_eq!(fact.middle, y);
        assert!(fact.second.is_identity());
    }

    #[test]
    fn cocylinder_examples() {
        let f = ChainMap::zero(Complex::zero(), Complex::sphere(0));
        let fact = cocylinder_factor(&f).unwrap();
        assert!(is_acyclic(&fact.middle));
        assert!(fact.second.is_surjective());
        let id = ChainMap::identity(Complex::sphere(1));
        let fact = cocylinder_factor(&id).unwrap();
        assert!(fact.second.after(&fact.first).unwrap().is_identity());
        assert!(fact.first.is_injective() && is_quasi_iso(&fact.first));
    }

    #[test]
    fn pullback_examples() {
        let x = Complex::disc(1);
        let pb = pullback(
            &ChainMap::zero(x.clone(), Complex::zero()),
            &ChainMap::zero(Complex::zero(), Complex::zero()),
        )
        .unwrap();
        assert_eq!(pb.object, x);
        assert!(pb.pr_f.is_identity());

        // Fibre of the cocylinder projection over zero.
        let s0 = Complex::sphere(0);
        let fact = cocylinder_factor(&ChainMap::identity(s0.clone())).unwrap();
        let pb = pullback(&ChainMap::zero(Complex::zero(), s0), &fact.second).unwrap();
        assert_eq!(pb.object.total_dim(), fact.middle.total_dim() - 1);
        assert!(pb.pr_p.is_injective());
    }

    #[test]
    fn pushout_examples() {
        let x = Complex::sphere(3);
        let po = pushout(
            &ChainMap::zero(Complex::zero(), Complex::zero()),
            &ChainMap::zero(Complex::zero(), x.clone()),
        )
        .unwrap();
        assert_eq!(po.object, x);

        // Collapsing the cone on S(1) along S(1) -> 0 gives homology of S(2).
        let a = Complex::sphere(1);
        let c = cone(&a);
        let po = pushout(&c.incl, &ChainMap::zero(a, Complex::zero())).unwrap();
        assert_eq!(homology_dims(&po.object), GradedDims::new([(2, 1)]));
    }

    #[test]
    fn mediators() {
        let a = Complex::sphere(0);
        let c = cone(&a);
        let g = ChainMap::zero(a.clone(), Complex::zero());
        let po = pushout(&c.incl, &g).unwrap();
        let h = pushout_mediator(&po, &po.in_i, &po.in_g).unwrap().unwrap();
        assert!(h.is_identity());
        let bogus = ChainMap::zero(c.object.clone(), po.object.clone());
        let bad_v = ChainMap::zero(Complex::zero(), po.object.clone());
        // (0, 0) always factors; the zero map does.
        assert!(pushout_mediator(&po, &bogus, &bad_v).unwrap().unwrap().is_zero());
    }
}
