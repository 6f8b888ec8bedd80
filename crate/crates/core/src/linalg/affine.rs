//! Affine systems in unknown matrix blocks.
//!
//! A constraint is `sum_t L_t * U_{b_t} * R_t = K` where each `U_b` is an unknown
//! block of declared shape and `L_t`, `R_t`, `K` are constant matrices. Every
//! existence question the engine asks of the chain instance (sections, lifts,
//! chain-map fillers, mediating maps) reduces to one of these.
//!
//! The flattened system is very sparse, so elimination runs on sparse rows.

use std::collections::BTreeMap;

use rand::Rng;

use super::{Mat, Rational};
use crate::error::{Error, Result};

/// One `L * U_block * R` summand.
#[derive(Debug, Clone)]
pub struct Term {
    pub left: Mat,
    pub block: usize,
    pub right: Mat,
}

impl Term {
    pub fn new(left: Mat, block: usize, right: Mat) -> Self {
        Term { left, block, right }
    }
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub terms: Vec<Term>,
    pub constant: Mat,
}

impl Constraint {
    pub fn new(terms: Vec<Term>, constant: Mat) -> Self {
        Constraint { terms, constant }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AffineSystem {
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    constraints: Vec<Constraint>,
}

/// A particular solution together with a basis of the homogeneous solutions.
#[derive(Debug, Clone)]
pub struct SolutionSpace {
    pub particular: Vec<Mat>,
    pub homogeneous: Vec<Vec<Mat>>,
}

type SparseRow = Vec<(usize, Rational)>;

impl AffineSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an unknown block and returns its index.
    pub fn unknown(&mut self, rows: usize, cols: usize) -> usize {
        let offset = self.offsets.last().copied().unwrap_or(0)
            + self.shapes.last().map(|(r, c)| r * c).unwrap_or(0);
        self.shapes.push((rows, cols));
        self.offsets.push(offset);
        self.shapes.len() - 1
    }

    pub fn shapes(&self) -> &[(usize, usize)] {
        &self.shapes
    }

    pub fn num_variables(&self) -> usize {
        self.shapes.iter().map(|(r, c)| r * c).sum()
    }

    pub fn constrain(&mut self, c: Constraint) -> Result<()> {
        let (kr, kc) = c.constant.shape();
        for t in &c.terms {
            let Some(&(br, bc)) = self.shapes.get(t.block) else {
                return Err(Error::ShapeMismatch(format!("unknown block {}", t.block)));
            };
            if t.left.shape() != (kr, br) || t.right.shape() != (bc, kc) {
                return Err(Error::ShapeMismatch(format!(
                    "term {}x{} * U{}[{}x{}] * {}x{} does not match constant {}x{}",
                    t.left.rows(),
                    t.left.cols(),
                    t.block,
                    br,
                    bc,
                    t.right.rows(),
                    t.right.cols(),
                    kr,
                    kc
                )));
            }
        }
        self.constraints.push(c);
        Ok(())
    }

    fn flatten(&self) -> Vec<(SparseRow, Rational)> {
        let mut rows = Vec::new();
        for c in &self.constraints {
            let (kr, kc) = c.constant.shape();
            for r in 0..kr {
                for col in 0..kc {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for t in &c.terms {
                        let bc = self.shapes[t.block].1;
                        let off = self.offsets[t.block];
                        for a in 0..t.left.cols() {
                            let l = &t.left[(r, a)];
                            if l.is_zero() {
                                continue;
                            }
                            for b in 0..t.right.rows() {
                                let rr = &t.right[(b, col)];
                                if rr.is_zero() {
                                    continue;
                                }
                                let e = acc.entry(off + a * bc + b).or_insert_with(Rational::zero);
                                *e += &(l * rr);
                            }
                        }
                    }
                    let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    rows.push((row, c.constant[(r, col)].clone()));
                }
            }
        }
        rows
    }

    /// Echelon form: pivot column -> (row normalized to leading 1, constant).
    fn eliminate(&self) -> Option<BTreeMap<usize, (SparseRow, Rational)>> {
        let mut pivots: BTreeMap<usize, (SparseRow, Rational)> = BTreeMap::new();
        for (mut row, mut k) in self.flatten() {
            loop {
                let Some(&(lead, _)) = row.first() else {
                    if !k.is_zero() {
                        return None;
                    }
                    break;
                };
                match pivots.get(&lead) {
                    Some((prow, pk)) => {
                        let factor = row[0].1.clone();
                        row = axpy(&row, &factor, prow);
                        k -= &(&factor * pk);
                    }
                    None => {
                        let inv = row[0].1.recip();
                        for (_, v) in row.iter_mut() {
                            *v *= &inv;
                        }
                        k *= &inv;
                        pivots.insert(lead, (row, k));
                        break;
                    }
                }
            }
        }
        Some(pivots)
    }

    fn back_substitute(
        &self,
        pivots: &BTreeMap<usize, (SparseRow, Rational)>,
        free_values: &BTreeMap<usize, Rational>,
        homogeneous: bool,
    ) -> Vec<Rational> {
        let n = self.num_variables();
        let mut x = vec![Rational::zero(); n];
        for (&v, val) in free_values {
            x[v] = val.clone();
        }
        for (&p, (row, k)) in pivots.iter().rev() {
            let mut val = if homogeneous { Rational::zero() } else { k.clone() };
            for (j, c) in row.iter().skip(1) {
                if !x[*j].is_zero() {
                    val -= &(c * &x[*j]);
                }
            }
            x[p] = val;
        }
        x
    }

    fn unflatten(&self, x: &[Rational]) -> Vec<Mat> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| Mat::from_vec(r, c, x[off..off + r * c].to_vec()))
            .collect()
    }

    /// An exact assignment of all blocks, free variables set to zero; `None`
    /// when inconsistent.
    pub fn solve(&self) -> Option<Vec<Mat>> {
        let pivots = self.eliminate()?;
        let x = self.back_substitute(&pivots, &BTreeMap::new(), false);
        Some(self.unflatten(&x))
    }

    /// Particular solution plus a basis of the homogeneous solution space.
    pub fn solve_space(&self) -> Option<SolutionSpace> {
        let pivots = self.eliminate()?;
        let particular = self.unflatten(&self.back_substitute(&pivots, &BTreeMap::new(), false));
        let homogeneous = (0..self.num_variables())
            .filter(|v| !pivots.contains_key(v))
            .map(|f| {
                let free = BTreeMap::from([(f, Rational::one())]);
                self.unflatten(&self.back_substitute(&pivots, &free, true))
            })
            .collect();
        Some(SolutionSpace { particular, homogeneous })
    }

    /// Checks an assignment against every constraint exactly.
    pub fn is_satisfied_by(&self, blocks: &[Mat]) -> bool {
        if blocks.len() != self.shapes.len()
            || blocks.iter().zip(&self.shapes).any(|(b, s)| b.shape() != *s)
        {
            return false;
        }
        self.constraints.iter().all(|c| {
            let mut acc = Mat::zeros(c.constant.rows(), c.constant.cols());
            for t in &c.terms {
                let v = t.left.dot(&blocks[t.block]).dot(&t.right);
                acc = acc.add(&v).expect("shapes checked on insert");
            }
            acc == c.constant
        })
    }
}

impl SolutionSpace {
    /// Particular solution plus a combination of homogeneous generators with
    /// coefficients drawn uniformly from `-range..=range`.
    pub fn sample(&self, rng: &mut impl Rng, range: i64) -> Vec<Mat> {
        let mut out = self.particular.clone();
        for gen in &self.homogeneous {
            let c = Rational::from_int(rng.gen_range(-range..=range));
            if c.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(gen) {
                *o = o.add(&g.scale(&c)).expect("same shapes");
            }
        }
        out
    }
}

/// `row - factor * pivot_row`, merging two sorted sparse rows.
fn axpy(row: &SparseRow, factor: &Rational, pivot_row: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot_row.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &pivot_row[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot_row[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
