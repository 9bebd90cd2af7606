//! Trace and reject, `Fac`/`Sub` membership, torsion pairs generated by
//! τ-rigid modules, smallest torsion classes and Jasso subcategories.

use crate::error::{Error, Result};
use crate::hom::{hom_basis, hom_dim, indecomposable_summands, DEFAULT_SEARCH_CAP};
use crate::homology::{tau, ExtSpace};
use crate::linalg::Matrix;
use crate::module::{direct_sum, intersect_spaces, RepMorphism, Representation};
use crate::universe::Universe;

/// Per-vertex bases of `Tr_X(M)`.
pub fn trace_spaces(x: &Representation, m: &Representation) -> Result<Vec<Matrix>> {
    let f = m.field();
    let basis = hom_basis(x, m)?;
    Ok((0..m.dims().len())
        .map(|v| {
            basis
                .iter()
                .fold(Matrix::zeros(f, m.dim(v), 0), |acc, g| acc.hstack(g.map(v)))
                .column_space()
        })
        .collect())
}

/// `Tr_X(M)` as a submodule of `M` with its inclusion.
pub fn trace(x: &Representation, m: &Representation) -> Result<(Representation, RepMorphism)> {
    m.submodule(&trace_spaces(x, m)?)
}

/// Per-vertex bases of `Rej_X(M)`.
pub fn reject_spaces(x: &Representation, m: &Representation) -> Result<Vec<Matrix>> {
    let f = m.field();
    let mut spaces: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
    for g in hom_basis(m, x)? {
        for (v, s) in spaces.iter_mut().enumerate() {
            *s = intersect_spaces(s, &g.map(v).nullspace_matrix());
        }
    }
    Ok(spaces)
}

/// `Rej_X(M)` as a submodule of `M` with its inclusion.
pub fn reject(x: &Representation, m: &Representation) -> Result<(Representation, RepMorphism)> {
    m.submodule(&reject_spaces(x, m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Fac,
    Sub,
}

/// `X ∈ Fac(M)` (trace is everything) or `X ∈ Sub(M)` (reject vanishes).
pub fn fac_sub_membership(m: &Representation, x: &Representation, side: Side) -> Result<bool> {
    match side {
        Side::Fac => {
            let t = trace_spaces(m, x)?;
            Ok(t.iter().zip(x.dims()).all(|(s, &d)| s.cols() == d))
        }
        Side::Sub => Ok(reject_spaces(m, x)?.iter().all(|s| s.cols() == 0)),
    }
}

pub fn in_fac(m: &Representation, x: &Representation) -> Result<bool> {
    fac_sub_membership(m, x, Side::Fac)
}

pub fn in_sub(m: &Representation, x: &Representation) -> Result<bool> {
    fac_sub_membership(m, x, Side::Sub)
}

pub fn is_tau_rigid(m: &Representation) -> Result<bool> {
    Ok(hom_dim(m, &tau(m)?)? == 0)
}

/// `0 -> t(X) -> X -> f(X) -> 0`
#[derive(Debug, Clone)]
pub struct CanonicalSes {
    pub torsion: Representation,
    pub inclusion: RepMorphism,
    pub module: Representation,
    pub free: Representation,
    pub projection: RepMorphism,
}

/// The torsion pair `(Fac(M), M^⊥)` for a τ-rigid `M`.
#[derive(Debug, Clone)]
pub struct TorsionPairHandle {
    generator: Representation,
}

impl TorsionPairHandle {
    pub fn new(generator: Representation) -> Result<Self> {
        if !is_tau_rigid(&generator)? {
            return Err(Error::NotTauRigid("torsion pair generator".into()));
        }
        Ok(TorsionPairHandle { generator })
    }

    pub fn generator(&self) -> &Representation {
        &self.generator
    }

    pub fn canonical_ses(&self, x: &Representation) -> Result<CanonicalSes> {
        let (torsion, inclusion) = trace(&self.generator, x)?;
        let (free, projection) = x.quotient(&inclusion)?;
        if cfg!(debug_assertions) && hom_dim(&self.generator, &free)? != 0 {
            return Err(Error::Invariant("torsion-free part receives maps from the generator".into()));
        }
        Ok(CanonicalSes {
            torsion,
            inclusion,
            module: x.clone(),
            free,
            projection,
        })
    }

    /// `t(X)`
    pub fn torsion_part(&self, x: &Representation) -> Result<Representation> {
        Ok(trace(&self.generator, x)?.0)
    }

    /// `f(X)`
    pub fn torsion_free_part(&self, x: &Representation) -> Result<Representation> {
        Ok(self.canonical_ses(x)?.free)
    }

    pub fn in_torsion_class(&self, x: &Representation) -> Result<bool> {
        in_fac(&self.generator, x)
    }

    pub fn in_torsion_free_class(&self, x: &Representation) -> Result<bool> {
        Ok(hom_dim(&self.generator, x)? == 0)
    }
}

/// Indices of the universe members in `Fac(⊕ members)`.
fn fac_closure(universe: &Universe, members: &[usize]) -> Result<Vec<usize>> {
    let gen = universe.sum(members);
    (0..universe.len())
        .filter_map(|i| match in_fac(&gen, universe.module(i)) {
            Ok(true) => Some(Ok(i)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// Smallest torsion class containing the seeds, as sorted universe indices:
/// alternately close under quotients of sums and under middle terms of
/// extensions between members, until nothing changes.
pub fn smallest_torsion_class(seeds: &[Representation], universe: &Universe) -> Result<Vec<usize>> {
    universe.require_complete()?;
    let mut class: Vec<usize> = Vec::new();
    for s in seeds {
        for i in universe.decompose_indices(s)? {
            if !class.contains(&i) {
                class.push(i);
            }
        }
    }
    class.sort_unstable();
    if class.is_empty() {
        return Ok(class);
    }
    let mut checked_pairs = std::collections::HashSet::new();
    loop {
        let mut next = fac_closure(universe, &class)?;
        for &i in &class {
            for &j in &class {
                if !checked_pairs.insert((i, j)) || universe.ext_dim(i, j) == 0 {
                    continue;
                }
                let e = ExtSpace::new(universe.module(i), universe.module(j))?;
                for mid in e.all_middle_terms(DEFAULT_SEARCH_CAP)? {
                    for k in universe.decompose_indices(&mid)? {
                        if !next.contains(&k) {
                            next.push(k);
                        }
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        if next == class {
            return Ok(class);
        }
        class = next;
    }
}

/// `X ∈ J(M) = M^⊥ ∩ ^⊥(τM)` for τ-rigid `M`.
pub fn jasso_membership(m: &Representation, x: &Representation) -> Result<bool> {
    let tm = tau(m)?;
    if hom_dim(m, &tm)? != 0 {
        return Err(Error::NotTauRigid("Jasso subcategory generator".into()));
    }
    Ok(hom_dim(m, x)? == 0 && hom_dim(x, &tm)? == 0)
}

/// Torsion-free quotient `X / Rej_F(X)` where `F` is the sum of the universe
/// members receiving no maps from `generator`.
pub fn torsion_free_by_reject(
    generator: &Representation,
    x: &Representation,
    universe: &Universe,
) -> Result<Representation> {
    universe.require_complete()?;
    let free: Vec<Representation> = (0..universe.len())
        .map(|i| Ok((i, hom_dim(generator, universe.module(i))? == 0)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, b)| *b)
        .map(|(i, _)| universe.module(i).clone())
        .collect();
    let f = direct_sum(universe.algebra(), &free)?;
    let (_, inc) = reject(&f, x)?;
    Ok(x.quotient(&inc)?.0)
}

/// Indecomposable summands of `m` that are nonzero, as universe indices.
pub fn summand_indices(m: &Representation, universe: &Universe) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for s in indecomposable_summands(m)? {
        out.push(universe.identify(&s)?.ok_or(Error::IncompleteUniverse)?);
    }
    Ok(out)
}
