//! Morphism spaces, isomorphism testing and Krull-Schmidt decomposition.

use crate::error::{Error, Result};
use crate::linalg::{CoefficientIter, Matrix};
use crate::module::{direct_sum, RepMorphism, Representation};

/// Default bound on the number of elements enumerated by exhaustive searches.
pub const DEFAULT_SEARCH_CAP: u128 = 1 << 20;

/// A basis of `Hom_A(M, N)` together with the data to take coordinates.
#[derive(Debug, Clone)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    basis: Vec<RepMorphism>,
    /// Columns are the flattened basis morphisms.
    basis_matrix: Matrix,
}

impl HomSpace {
    pub fn new(m: &Representation, n: &Representation) -> Result<Self> {
        m.check_same_algebra(n)?;
        let f = m.field();
        let verts = m.dims().len();
        let mut offsets = Vec::with_capacity(verts + 1);
        let mut total = 0;
        for v in 0..verts {
            offsets.push(total);
            total += n.dim(v) * m.dim(v);
        }
        // Unknown X_v is dim N_v x dim M_v, row-major at offsets[v].
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dim(v) + c;
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        for (ai, a) in m.algebra().arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let na = n.map(ai);
            let ma = m.map(ai);
            // (N_a X_s - X_t M_a)[i][j] = 0
            for i in 0..n.dim(t) {
                for j in 0..m.dim(s) {
                    let mut row = vec![0u32; total];
                    for k in 0..n.dim(s) {
                        let c = na.get(i, k);
                        if c != 0 {
                            let idx = var(s, k, j);
                            row[idx] = f.add(row[idx], c);
                        }
                    }
                    for k in 0..m.dim(t) {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let idx = var(t, i, k);
                            row[idx] = f.sub(row[idx], c);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        eqs.push(row);
                    }
                }
            }
        }
        let system = if eqs.is_empty() {
            Matrix::zeros(f, 0, total)
        } else {
            let data = eqs.concat();
            Matrix::new(f, eqs.len(), total, data)
        };
        let ns = system.nullspace();
        let basis_matrix = Matrix::from_columns(f, total, &ns);
        let basis = ns
            .iter()
            .map(|vec| {
                let maps = (0..verts)
                    .map(|v| {
                        let len = n.dim(v) * m.dim(v);
                        Matrix::new(f, n.dim(v), m.dim(v), vec[offsets[v]..offsets[v] + len].to_vec())
                    })
                    .collect();
                RepMorphism::new_unchecked(m.clone(), n.clone(), maps)
            })
            .collect();
        Ok(HomSpace {
            source: m.clone(),
            target: n.clone(),
            basis,
            basis_matrix,
        })
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMorphism] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<RepMorphism> {
        self.basis
    }

    /// Coordinates of `f` over the basis, or `None` if `f` is not a morphism
    /// between these modules.
    pub fn coords(&self, f: &RepMorphism) -> Option<Vec<u32>> {
        self.basis_matrix.solve(&f.flatten())
    }

    /// The morphism with the given coordinates.
    pub fn element(&self, coeffs: &[u32]) -> RepMorphism {
        let fld = self.source.field();
        let mut acc = RepMorphism::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(fld.reduce(*c as i64)));
            }
        }
        acc
    }

    /// Number of elements, or an error when it exceeds `cap`.
    pub fn checked_size(&self, what: &'static str, cap: u128) -> Result<u128> {
        let f = self.source.field();
        match f.space_size(self.dim()) {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::CapExceeded {
                what,
                needed: format!("{}^{}", f.characteristic(), self.dim()),
                cap,
            }),
        }
    }

    /// Every element of the space, after checking the size against `cap`.
    pub fn elements(&self, what: &'static str, cap: u128) -> Result<impl Iterator<Item = RepMorphism> + '_> {
        self.checked_size(what, cap)?;
        Ok(CoefficientIter::new(self.source.field(), self.dim()).map(move |c| self.element(&c)))
    }
}

pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    Ok(HomSpace::new(m, n)?.into_basis())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(HomSpace::new(m, n)?.dim())
}

/// Isomorphism test with the default search cap.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    Ok(find_isomorphism(m, n, DEFAULT_SEARCH_CAP)?.is_some())
}

/// Cheap invariants that isomorphic modules share.
fn prefilter(m: &Representation, n: &Representation) -> bool {
    m.dims() == n.dims() && m.top_dims() == n.top_dims() && m.socle_dims() == n.socle_dims()
}

/// An isomorphism `m -> n`, if one exists. Searches the finite hom space.
pub fn find_isomorphism(m: &Representation, n: &Representation, cap: u128) -> Result<Option<RepMorphism>> {
    m.check_same_algebra(n)?;
    if !prefilter(m, n) {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(RepMorphism::zero(m, n)));
    }
    let h = HomSpace::new(m, n)?;
    let back = hom_dim(n, m)?;
    if h.dim() != back || h.dim() != hom_dim(m, m)? || back != hom_dim(n, n)? {
        return Ok(None);
    }
    // Single basis elements are frequently isomorphisms already.
    if let Some(f) = h.basis().iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    for f in h.elements("isomorphism search", cap)? {
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Endomorphism that is neither nilpotent nor invertible, if any.
fn splitting_endomorphism(m: &Representation, cap: u128) -> Result<Option<Matrix2>> {
    let end = HomSpace::new(m, m)?;
    if end.dim() <= 1 {
        return Ok(None);
    }
    let d = m.total_dim() as u32;
    let test = |f: &RepMorphism| -> Option<Matrix2> {
        let powered: Vec<Matrix> = f.maps().iter().map(|x| x.pow(d)).collect();
        let nil = powered.iter().all(Matrix::is_zero);
        let inv = powered.iter().all(Matrix::is_invertible);
        (!nil && !inv).then_some(powered)
    };
    for b in end.basis() {
        if let Some(p) = test(b) {
            return Ok(Some(p));
        }
    }
    for f in end.elements("endomorphism scan", cap)? {
        if let Some(p) = test(&f) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

type Matrix2 = Vec<Matrix>;

/// Whether `m` is indecomposable (nonzero with local endomorphism ring).
pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    if m.top_dims().iter().sum::<usize>() == 1 || m.socle_dims().iter().sum::<usize>() == 1 {
        return Ok(true);
    }
    Ok(splitting_endomorphism(m, DEFAULT_SEARCH_CAP)?.is_none())
}

/// Indecomposable summands of `m`, with repetition, as submodules of `m`.
pub fn indecomposable_summands(m: &Representation) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        if x.top_dims().iter().sum::<usize>() == 1 || x.socle_dims().iter().sum::<usize>() == 1 {
            out.push(x);
            continue;
        }
        match splitting_endomorphism(&x, DEFAULT_SEARCH_CAP)? {
            None => out.push(x),
            Some(p) => {
                let kernel: Vec<Matrix> = p.iter().map(Matrix::nullspace_matrix).collect();
                let image: Vec<Matrix> = p.iter().map(Matrix::column_space).collect();
                let (k, _) = x.submodule(&kernel)?;
                let (i, _) = x.submodule(&image)?;
                stack.push(i);
                stack.push(k);
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// Summands grouped into isomorphism classes.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub summands: Vec<(Representation, usize)>,
    pub rank: usize,
}

impl DecompositionReport {
    /// Direct sum of the summands with multiplicity.
    pub fn reassemble(&self, like: &Representation) -> Result<Representation> {
        let parts: Vec<Representation> = self
            .summands
            .iter()
            .flat_map(|(s, k)| std::iter::repeat_n(s.clone(), *k))
            .collect();
        direct_sum(like.algebra(), &parts)
    }
}

pub fn decompose(m: &Representation) -> Result<DecompositionReport> {
    let mut classes: Vec<(Representation, usize)> = Vec::new();
    for s in indecomposable_summands(m)? {
        let mut found = false;
        for (rep, k) in classes.iter_mut() {
            if is_isomorphic(rep, &s)? {
                *k += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push((s, 1));
        }
    }
    let rank = classes.len();
    Ok(DecompositionReport {
        summands: classes,
        rank,
    })
}
