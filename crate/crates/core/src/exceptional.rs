//! Signed τ-rigid objects `M ⊔ P[1]`, Jasso reductions and signed
//! τ-exceptional sequences.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hom::{decompose, hom_dim, indecomposable_summands, is_isomorphic};
use crate::module::{direct_sum, Representation};
use crate::quiver::Algebra;
use crate::strat::build_delta;
use crate::tilting::{enumerate_tau_rigid, TfAdmissibleOrder};
use crate::torsion::{is_tau_rigid, jasso_membership, trace};
use crate::universe::Universe;

/// An object `M ⊔ P[1]` of `C(A)`; `shifted` must be projective.
#[derive(Debug, Clone)]
pub struct SignedObject {
    pub module: Representation,
    pub shifted: Representation,
}

impl SignedObject {
    pub fn new(module: Representation, shifted: Representation) -> Result<Self> {
        module.check_same_algebra(&shifted)?;
        Ok(SignedObject { module, shifted })
    }

    pub fn unshifted(module: Representation) -> Self {
        let shifted = Representation::zero(module.algebra());
        SignedObject { module, shifted }
    }

    pub fn shifted(projective: Representation) -> Self {
        let module = Representation::zero(projective.algebra());
        SignedObject {
            module,
            shifted: projective,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero() && self.shifted.is_zero()
    }

    pub fn is_shifted(&self) -> bool {
        !self.shifted.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRigidity {
    pub tau_rigid: bool,
    pub support_tau_tilting: bool,
    pub reason: Option<String>,
}

/// `M` τ-rigid, `P` projective and `Hom(P, M) = 0`; support τ-tilting when
/// additionally the summand ranks add up to the number of vertices.
pub fn is_signed_tau_rigid(obj: &SignedObject) -> Result<SignedRigidity> {
    let fail = |reason: &str| {
        Ok(SignedRigidity {
            tau_rigid: false,
            support_tau_tilting: false,
            reason: Some(reason.to_string()),
        })
    };
    if !obj.shifted.is_projective_structurally() {
        return fail("shifted part is not projective");
    }
    if !is_tau_rigid(&obj.module)? {
        return fail("module part is not τ-rigid");
    }
    if hom_dim(&obj.shifted, &obj.module)? != 0 {
        return fail("shifted part maps nontrivially to the module part");
    }
    let rank = decompose(&obj.module)?.rank + decompose(&obj.shifted)?.rank;
    Ok(SignedRigidity {
        tau_rigid: true,
        support_tau_tilting: rank == obj.algebra().vertex_count(),
        reason: None,
    })
}

/// `X ∈ J(M) ∩ P^⊥` for a signed τ-rigid `M ⊔ P[1]`.
pub fn signed_jasso_membership(obj: &SignedObject, x: &Representation) -> Result<bool> {
    if !is_signed_tau_rigid(obj)?.tau_rigid {
        return Err(Error::NotTauRigid("signed Jasso generator".into()));
    }
    Ok(jasso_membership(&obj.module, x)? && hom_dim(&obj.shifted, x)? == 0)
}

/// Signed sequence `(U_1, …, U_t)`, entries indecomposable.
#[derive(Debug, Clone)]
pub struct SignedSequence {
    pub entries: Vec<SignedObject>,
}

impl SignedSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entrywise isomorphism of both parts.
    pub fn isomorphic_to(&self, other: &SignedSequence) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !is_isomorphic(&a.module, &b.module)? || !is_isomorphic(&a.shifted, &b.shifted)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(Δ(1) ⊔ 0, …, Δ(t) ⊔ 0)`.
pub fn delta_sequence(order: &TfAdmissibleOrder) -> Result<SignedSequence> {
    let sys = build_delta(order, None)?;
    Ok(SignedSequence {
        entries: sys.theta.into_iter().map(SignedObject::unshifted).collect(),
    })
}

/// `X / Tr_T(X)`: the torsion-free part of `X` for `(Fac T, T^⊥)`.
pub fn relative_torsion_free(tail: &Representation, x: &Representation) -> Result<Representation> {
    if !is_tau_rigid(tail)? {
        return Err(Error::NotTauRigid("torsion-free functor generator".into()));
    }
    let (_, inc) = trace(tail, x)?;
    Ok(x.quotient(&inc)?.0)
}

/// Applies the torsion-free functors of `generators` one after another.
pub fn iterated_torsion_free(generators: &[Representation], x: &Representation) -> Result<Representation> {
    let mut cur = x.clone();
    for g in generators {
        if cur.is_zero() {
            break;
        }
        let (_, inc) = trace(g, &cur)?;
        cur = cur.quotient(&inc)?.0;
    }
    Ok(cur)
}

/// A module `M′` with `M ⊕ M′` τ-rigid, `Hom(P, M′) = 0` and
/// `f_M(M′) ≅ N`, searched over sums of universe members with as many
/// summands as `N`.
pub fn relative_tau_rigid_certificate(
    n: &Representation,
    ambient: &SignedObject,
    universe: &Universe,
) -> Result<Option<Representation>> {
    universe.require_complete()?;
    if !is_signed_tau_rigid(ambient)?.tau_rigid {
        return Err(Error::NotTauRigid("ambient object".into()));
    }
    if !signed_jasso_membership(ambient, n)? {
        return Err(Error::Precondition("module does not lie in the Jasso subcategory".into()));
    }
    if n.is_zero() {
        return Ok(Some(Representation::zero(n.algebra())));
    }
    let k = indecomposable_summands(n)?.len();
    let candidates: Vec<Vec<usize>> = enumerate_tau_rigid(universe)?
        .into_iter()
        .filter(|s| s.len() == k)
        .collect();
    let m = &ambient.module;
    let found: Vec<Option<Representation>> = candidates
        .par_iter()
        .map(|s| -> Result<Option<Representation>> {
            let cand = universe.sum(s);
            if cand.dims().iter().zip(n.dims()).any(|(c, d)| c < d) {
                return Ok(None);
            }
            if hom_dim(&ambient.shifted, &cand)? != 0 {
                return Ok(None);
            }
            let both = direct_sum(universe.algebra(), &[m.clone(), cand.clone()])?;
            if !is_tau_rigid(&both)? {
                return Ok(None);
            }
            let f = iterated_torsion_free(std::slice::from_ref(m), &cand)?;
            Ok(if is_isomorphic(&f, n)? { Some(cand) } else { None })
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceVerdict {
    Pass,
    /// Position (1-based) and reason.
    Fail(usize, String),
}

impl SequenceVerdict {
    pub fn passed(&self) -> bool {
        *self == SequenceVerdict::Pass
    }
}

impl fmt::Display for SequenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceVerdict::Pass => write!(f, "pass"),
            SequenceVerdict::Fail(i, why) => write!(f, "fail at entry {i}: {why}"),
        }
    }
}

/// Checks the recursive definition, reducing by the last entry and then by
/// certified preimages of the earlier ones inside the accumulated ambient
/// Jasso subcategory.
pub fn verify_signed_sequence(seq: &SignedSequence, universe: &Universe) -> Result<SequenceVerdict> {
    universe.require_complete()?;
    let t = seq.len();
    if t == 0 {
        return Ok(SequenceVerdict::Pass);
    }
    for (i, e) in seq.entries.iter().enumerate() {
        let parts = indecomposable_summands(&e.module)?.len() + indecomposable_summands(&e.shifted)?.len();
        if parts != 1 {
            return Ok(SequenceVerdict::Fail(i + 1, "entry is not indecomposable".into()));
        }
        if i + 1 < t && e.is_shifted() {
            return Err(Error::Unsupported("shifted entry below top level".into()));
        }
    }
    let top = &seq.entries[t - 1];
    let r = is_signed_tau_rigid(top)?;
    if !r.tau_rigid {
        return Ok(SequenceVerdict::Fail(t, r.reason.unwrap_or_default()));
    }
    let mut ambient = top.clone();
    for k in (0..t - 1).rev() {
        for (j, e) in seq.entries[..=k].iter().enumerate() {
            if !signed_jasso_membership(&ambient, &e.module)? {
                return Ok(SequenceVerdict::Fail(j + 1, "entry leaves the reduced subcategory".into()));
            }
        }
        let Some(pre) = relative_tau_rigid_certificate(&seq.entries[k].module, &ambient, universe)? else {
            return Ok(SequenceVerdict::Fail(k + 1, "entry is not τ-rigid in the reduced subcategory".into()));
        };
        ambient.module = direct_sum(universe.algebra(), &[ambient.module.clone(), pre])?;
    }
    Ok(SequenceVerdict::Pass)
}

/// `N_i = f̃_{i+1}(…f̃_t(M_i))` where each `f̃_k` is the torsion-free functor
/// of the already reduced `N_k`.
pub fn sequence_from_ordered(tuple: &[Representation]) -> Result<SignedSequence> {
    let Some(first) = tuple.first() else {
        return Ok(SignedSequence { entries: Vec::new() });
    };
    let sum = direct_sum(first.algebra(), tuple)?;
    if !is_tau_rigid(&sum)? {
        return Err(Error::NotTauRigid("ordered tuple".into()));
    }
    let t = tuple.len();
    let mut reduced: Vec<Option<Representation>> = vec![None; t];
    for i in (0..t).rev() {
        let gens: Vec<Representation> = (i + 1..t).rev().map(|k| reduced[k].clone().unwrap()).collect();
        let n = iterated_torsion_free(&gens, &tuple[i])?;
        if n.is_zero() {
            return Err(Error::Precondition(format!(
                "reduced module at position {} vanishes; tuple is not TF-admissible",
                i + 1
            )));
        }
        reduced[i] = Some(n);
    }
    Ok(SignedSequence {
        entries: reduced.into_iter().map(|n| SignedObject::unshifted(n.unwrap())).collect(),
    })
}

/// Unshifted sequences of indecomposable universe members of length `len`
/// that pass verification, as index tuples.
pub fn enumerate_unshifted_sequences(universe: &Universe, len: usize) -> Result<Vec<Vec<usize>>> {
    let tuples: Vec<Vec<usize>> = (0..len).map(|_| 0..universe.len()).multi_cartesian_product().collect();
    let verdicts: Vec<bool> = tuples
        .par_iter()
        .map(|tup| {
            let seq = SignedSequence {
                entries: tup.iter().map(|&i| SignedObject::unshifted(universe.module(i).clone())).collect(),
            };
            verify_signed_sequence(&seq, universe).map(|v| v.passed())
        })
        .collect::<Result<_>>()?;
    Ok(tuples.into_iter().zip(verdicts).filter(|(_, ok)| *ok).map(|(t, _)| t).collect())
}
