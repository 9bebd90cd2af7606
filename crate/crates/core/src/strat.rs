//! Stratifying systems induced by torsion-free admissible orders, filtration
//! search, Ext-projective / Ext-injective systems and the per-module census.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hom::{find_isomorphism, hom_dim, is_indecomposable, is_isomorphic, HomSpace, DEFAULT_SEARCH_CAP};
use crate::homology::ext1_dim;
use crate::linalg::Matrix;
use crate::module::{direct_sum, RepMorphism, Representation};
use crate::quiver::Algebra;
use crate::tilting::{is_tau_rigid, is_tf_admissible, tf_admissible_permutations, TauRigidPair, TfAdmissibleOrder};
use crate::torsion::{torsion_free_by_reject, trace};
use crate::universe::Universe;

/// Limits for exhaustive filtration and epimorphism searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchCaps {
    /// Largest hom space (in elements) enumerated when looking for maps.
    pub hom_elements: u128,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps { hom_elements: 1 << 12 }
    }
}

/// `0 = X_0 ⊆ X_1 ⊆ … ⊆ X_s = X` with `X_k / X_{k-1} ≅ Θ(labels[k-1])`.
/// `chain[k]` holds per-vertex bases of `X_k` inside `X`.
#[derive(Debug, Clone)]
pub struct FiltrationWitness {
    pub chain: Vec<Vec<Matrix>>,
    pub labels: Vec<usize>,
}

impl FiltrationWitness {
    fn trivial(x: &Representation) -> Self {
        let f = x.field();
        FiltrationWitness {
            chain: vec![x.dims().iter().map(|&d| Matrix::zeros(f, d, 0)).collect()],
            labels: Vec::new(),
        }
    }

    /// Re-checks every layer against the labelled members of `theta`.
    pub fn verify(&self, x: &Representation, theta: &[Representation]) -> Result<bool> {
        if self.chain.len() != self.labels.len() + 1 {
            return Ok(false);
        }
        if self.chain[0].iter().any(|m| m.cols() != 0) {
            return Ok(false);
        }
        if self.chain.last().unwrap().iter().zip(x.dims()).any(|(m, &d)| m.rank() != d) {
            return Ok(false);
        }
        for k in 1..self.chain.len() {
            let (upper, _) = x.submodule(&self.chain[k])?;
            // Lower layer in the coordinates of the upper one.
            let lower: Vec<Matrix> = self.chain[k - 1]
                .iter()
                .zip(&self.chain[k])
                .map(|(lo, up)| up.column_space().solve_matrix(lo))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Invariant("filtration chain is not increasing".into()))?;
            let (quot, _) = upper.quotient_by_spaces(&lower)?;
            if !is_isomorphic(&quot, &theta[self.labels[k - 1]])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Depth-first search for `Θ`-filtrations, peeling a quotient `X ↠ Θ(j)` and
/// recursing on the kernel. Negative answers are memoized by isomorphism class.
pub struct FiltrationSearch<'a> {
    theta: &'a [Representation],
    caps: SearchCaps,
    failed: Vec<Representation>,
}

impl<'a> FiltrationSearch<'a> {
    pub fn new(theta: &'a [Representation], caps: SearchCaps) -> Self {
        FiltrationSearch {
            theta,
            caps,
            failed: Vec::new(),
        }
    }

    fn dims_reachable(&self, dims: &[usize]) -> bool {
        fn rec(theta: &[Representation], dims: &mut Vec<usize>, seen: &mut HashSet<Vec<usize>>) -> bool {
            if dims.iter().all(|&d| d == 0) {
                return true;
            }
            if !seen.insert(dims.clone()) {
                return false;
            }
            for t in theta {
                if t.is_zero() || t.dims().iter().zip(dims.iter()).any(|(a, b)| a > b) {
                    continue;
                }
                for (d, a) in dims.iter_mut().zip(t.dims()) {
                    *d -= a;
                }
                let ok = rec(theta, dims, seen);
                for (d, a) in dims.iter_mut().zip(t.dims()) {
                    *d += a;
                }
                if ok {
                    return true;
                }
            }
            false
        }
        rec(self.theta, &mut dims.to_vec(), &mut HashSet::new())
    }

    pub fn search(&mut self, x: &Representation) -> Result<Option<FiltrationWitness>> {
        if x.is_zero() {
            return Ok(Some(FiltrationWitness::trivial(x)));
        }
        if !self.dims_reachable(x.dims()) {
            return Ok(None);
        }
        for known in &self.failed {
            if known.dims() == x.dims() && is_isomorphic(known, x)? {
                return Ok(None);
            }
        }
        for (j, t) in self.theta.iter().enumerate() {
            if t.is_zero() || t.dims().iter().zip(x.dims()).any(|(a, b)| a > b) {
                continue;
            }
            let h = HomSpace::new(x, t)?;
            if h.dim() == 0 {
                continue;
            }
            let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
            for g in h.elements("filtration search", self.caps.hom_elements)? {
                if !g.is_surjective() {
                    continue;
                }
                let kernel: Vec<Matrix> = g.maps().iter().map(Matrix::nullspace_matrix).collect();
                let key: Vec<Vec<u32>> = kernel
                    .iter()
                    .map(|k| k.canonical_column_basis().data().to_vec())
                    .collect();
                if !seen.insert(key) {
                    continue;
                }
                let (k, inc) = x.submodule(&kernel)?;
                if let Some(w) = self.search(&k)? {
                    let mut chain: Vec<Vec<Matrix>> = w
                        .chain
                        .iter()
                        .map(|spaces| spaces.iter().enumerate().map(|(v, s)| inc.map(v).mul(s)).collect())
                        .collect();
                    chain.push(x.dims().iter().map(|&d| Matrix::identity(x.field(), d)).collect());
                    let mut labels = w.labels;
                    labels.push(j);
                    return Ok(Some(FiltrationWitness { chain, labels }));
                }
            }
        }
        self.failed.push(x.clone());
        Ok(None)
    }
}

/// A `Θ`-filtration of `x`, if one exists.
pub fn filtration_membership(
    x: &Representation,
    theta: &[Representation],
    caps: SearchCaps,
) -> Result<Option<FiltrationWitness>> {
    FiltrationSearch::new(theta, caps).search(x)
}

/// A family certified to satisfy the stratifying-system axioms.
#[derive(Debug, Clone)]
pub struct StratifyingSystem {
    pub theta: Vec<Representation>,
    /// `hom[j][i] = dim Hom(Θ(j), Θ(i))`
    pub hom: Vec<Vec<usize>>,
    /// `ext[j][i] = dim Ext^1(Θ(j), Θ(i))`
    pub ext: Vec<Vec<usize>>,
}

impl StratifyingSystem {
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }
}

/// Why a family fails to be a stratifying system (positions 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SsViolation {
    NotIndecomposable { i: usize },
    /// `Hom(Θ(j), Θ(i)) ≠ 0` with `j > i`
    Hom { j: usize, i: usize, dim: usize },
    /// `Ext^1(Θ(j), Θ(i)) ≠ 0` with `j ≥ i`
    Ext { j: usize, i: usize, dim: usize },
}

impl fmt::Display for SsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsViolation::NotIndecomposable { i } => write!(f, "member {} is not indecomposable", i + 1),
            SsViolation::Hom { j, i, dim } => {
                write!(f, "dim Hom(Θ({}), Θ({})) = {dim}", j + 1, i + 1)
            }
            SsViolation::Ext { j, i, dim } => {
                write!(f, "dim Ext¹(Θ({}), Θ({})) = {dim}", j + 1, i + 1)
            }
        }
    }
}

/// Checks indecomposability, `Hom(Θ(j), Θ(i)) = 0` for `j > i` and
/// `Ext^1(Θ(j), Θ(i)) = 0` for `j ≥ i`.
pub fn verify_ss(theta: &[Representation]) -> Result<std::result::Result<StratifyingSystem, SsViolation>> {
    for (i, t) in theta.iter().enumerate() {
        if !is_indecomposable(t)? {
            return Ok(Err(SsViolation::NotIndecomposable { i }));
        }
    }
    let t = theta.len();
    let mut hom = vec![vec![0; t]; t];
    let mut ext = vec![vec![0; t]; t];
    for j in 0..t {
        for i in 0..t {
            hom[j][i] = hom_dim(&theta[j], &theta[i])?;
            ext[j][i] = ext1_dim(&theta[j], &theta[i])?;
        }
    }
    for j in 0..t {
        for i in 0..t {
            if j > i && hom[j][i] != 0 {
                return Ok(Err(SsViolation::Hom { j, i, dim: hom[j][i] }));
            }
            if j >= i && ext[j][i] != 0 {
                return Ok(Err(SsViolation::Ext { j, i, dim: ext[j][i] }));
            }
        }
    }
    Ok(Ok(StratifyingSystem {
        theta: theta.to_vec(),
        hom,
        ext,
    }))
}

/// One entry of the construction: `0 -> Tr(M_i) -> M_i --β--> Δ(i) -> 0`.
#[derive(Debug, Clone)]
pub struct DeltaTerm {
    pub summand: Representation,
    pub trace: Representation,
    pub trace_inclusion: RepMorphism,
    pub delta: Representation,
    pub projection: RepMorphism,
}

/// `Δ(i) = M_i / Tr_{M_{i+1} ⊕ … ⊕ M_t}(M_i)` for every position.
pub fn delta_terms(order: &TfAdmissibleOrder) -> Result<Vec<DeltaTerm>> {
    (0..order.len())
        .map(|i| {
            let m = &order.summands()[i];
            let (tr, inc) = trace(&order.tail_after(i), m)?;
            let (delta, projection) = m.quotient(&inc)?;
            Ok(DeltaTerm {
                summand: m.clone(),
                trace: tr,
                trace_inclusion: inc,
                delta,
                projection,
            })
        })
        .collect()
}

/// The stratifying system `Δ` of a TF-admissible order. With a universe the
/// torsion-free quotients are recomputed through rejects and compared.
pub fn build_delta(order: &TfAdmissibleOrder, universe: Option<&Universe>) -> Result<StratifyingSystem> {
    let terms = delta_terms(order)?;
    if let Some(u) = universe {
        for (i, term) in terms.iter().enumerate() {
            let other = torsion_free_by_reject(&order.tail_after(i), &term.summand, u)?;
            if !is_isomorphic(&other, &term.delta)? {
                return Err(Error::Invariant(format!(
                    "torsion-free quotient and trace quotient differ at position {}",
                    i + 1
                )));
            }
        }
    }
    let theta: Vec<Representation> = terms.into_iter().map(|t| t.delta).collect();
    verify_ss(&theta)?.map_err(|v| Error::Invariant(format!("induced family is not stratifying: {v}")))
}

/// Whether every summand of the order is filtered by its `Δ`.
pub fn is_tf_proper(order: &TfAdmissibleOrder, caps: SearchCaps) -> Result<bool> {
    let delta = build_delta(order, None)?;
    let mut search = FiltrationSearch::new(&delta.theta, caps);
    for m in order.summands() {
        if search.search(m)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    ExtProjective,
    ExtInjective,
}

/// `(Θ, partners, ≤)`: `partners` are `Q(i)` (Ext-projective flavour) or
/// `Y(i)` (Ext-injective flavour); `witnesses[i]` filters the kernel `K(i)`
/// or cokernel `Z(i)` when known.
#[derive(Debug, Clone)]
pub struct PssTriple {
    pub flavor: Flavor,
    pub theta: Vec<Representation>,
    pub partners: Vec<Representation>,
    pub kernels: Vec<Representation>,
    pub witnesses: Vec<Option<FiltrationWitness>>,
}

/// The Ext-projective system `(Δ, {M_i}, ≤)` of an order with `M ∈ F(Δ)`,
/// with `K(i) = Tr(M_i)`.
pub fn psi(order: &TfAdmissibleOrder, caps: SearchCaps) -> Result<PssTriple> {
    if !is_tf_proper(order, caps)? {
        return Err(Error::Precondition("module is not filtered by its induced system".into()));
    }
    let terms = delta_terms(order)?;
    let theta: Vec<Representation> = terms.iter().map(|t| t.delta.clone()).collect();
    let mut witnesses = Vec::new();
    for (i, term) in terms.iter().enumerate() {
        let later = &theta[i + 1..];
        let w = filtration_membership(&term.trace, later, caps)?
            .ok_or_else(|| Error::Invariant(format!("kernel at position {} is not filtered by later terms", i + 1)))?;
        // Relabel into positions of the whole family.
        witnesses.push(Some(FiltrationWitness {
            chain: w.chain,
            labels: w.labels.into_iter().map(|l| l + i + 1).collect(),
        }));
    }
    Ok(PssTriple {
        flavor: Flavor::ExtProjective,
        theta,
        partners: order.summands().to_vec(),
        kernels: terms.into_iter().map(|t| t.trace).collect(),
        witnesses,
    })
}

/// `(⊕Q(i), (Q(1), …, Q(t)))` for an Ext-projective triple whose partners
/// form a τ-rigid module in TF-admissible order.
pub fn upsilon(triple: &PssTriple) -> Result<(Representation, Vec<Representation>)> {
    if triple.flavor != Flavor::ExtProjective || triple.partners.is_empty() {
        return Err(Error::Precondition("expected a nonempty Ext-projective triple".into()));
    }
    let q = direct_sum(triple.partners[0].algebra(), &triple.partners)?;
    if !is_tau_rigid(&q)? {
        return Err(Error::NotTauRigid("sum of the Ext-projectives".into()));
    }
    if !is_tf_admissible(&triple.partners)? {
        return Err(Error::Precondition("partners are not in TF-admissible order".into()));
    }
    Ok((q, triple.partners.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PssVerdict {
    Pass,
    Fail(String),
}

impl PssVerdict {
    pub fn passed(&self) -> bool {
        *self == PssVerdict::Pass
    }
}

/// Checks the three axioms of an Ext-projective (or Ext-injective)
/// stratifying system. The Ext-vanishing axiom is checked against every
/// universe member filtered by `Θ`.
pub fn verify_pss(triple: &PssTriple, universe: &Universe, caps: SearchCaps) -> Result<PssVerdict> {
    let theta = &triple.theta;
    let t = theta.len();
    if triple.partners.len() != t {
        return Ok(PssVerdict::Fail("family sizes differ".into()));
    }
    for j in 0..t {
        for i in 0..j {
            let d = hom_dim(&theta[j], &theta[i])?;
            if d != 0 {
                return Ok(PssVerdict::Fail(format!("dim Hom(Θ({}), Θ({})) = {d}", j + 1, i + 1)));
            }
        }
    }
    for (i, p) in triple.partners.iter().enumerate() {
        if !is_indecomposable(p)? {
            return Ok(PssVerdict::Fail(format!("partner {} is not indecomposable", i + 1)));
        }
        let ok = match triple.flavor {
            Flavor::ExtProjective => {
                let later = &theta[i + 1..];
                exists_epi_with_filtered_kernel(p, &theta[i], later, caps)?
            }
            Flavor::ExtInjective => {
                let earlier = &theta[..i];
                exists_mono_with_filtered_cokernel(&theta[i], p, earlier, caps)?
            }
        };
        if !ok {
            return Ok(PssVerdict::Fail(format!("no admissible exact sequence at position {}", i + 1)));
        }
    }
    let partner_sum = direct_sum(universe.algebra(), &triple.partners)?;
    let mut search = FiltrationSearch::new(theta, caps);
    for x in universe.modules() {
        if search.search(x)?.is_none() {
            continue;
        }
        let d = match triple.flavor {
            Flavor::ExtProjective => ext1_dim(&partner_sum, x)?,
            Flavor::ExtInjective => ext1_dim(x, &partner_sum)?,
        };
        if d != 0 {
            return Ok(PssVerdict::Fail(format!("Ext¹ of dimension {d} against a filtered module")));
        }
    }
    Ok(PssVerdict::Pass)
}

fn exists_epi_with_filtered_kernel(
    q: &Representation,
    theta_i: &Representation,
    allowed: &[Representation],
    caps: SearchCaps,
) -> Result<bool> {
    let h = HomSpace::new(q, theta_i)?;
    let mut search = FiltrationSearch::new(allowed, caps);
    let mut seen = HashSet::new();
    for g in h.elements("epimorphism search", caps.hom_elements)? {
        if !g.is_surjective() {
            continue;
        }
        let kernel: Vec<Matrix> = g.maps().iter().map(Matrix::nullspace_matrix).collect();
        let key: Vec<Vec<u32>> = kernel.iter().map(|k| k.canonical_column_basis().data().to_vec()).collect();
        if !seen.insert(key) {
            continue;
        }
        let (k, _) = q.submodule(&kernel)?;
        if search.search(&k)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn exists_mono_with_filtered_cokernel(
    theta_i: &Representation,
    y: &Representation,
    allowed: &[Representation],
    caps: SearchCaps,
) -> Result<bool> {
    let h = HomSpace::new(theta_i, y)?;
    let mut search = FiltrationSearch::new(allowed, caps);
    let mut seen = HashSet::new();
    for g in h.elements("monomorphism search", caps.hom_elements)? {
        if !g.is_injective() {
            continue;
        }
        let image: Vec<Matrix> = g.maps().iter().map(Matrix::column_space).collect();
        let key: Vec<Vec<u32>> = image.iter().map(|k| k.canonical_column_basis().data().to_vec()).collect();
        if !seen.insert(key) {
            continue;
        }
        let (c, _) = y.quotient_by_spaces(&image)?;
        if search.search(&c)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether every map from the given objects into the target of `beta`
/// factors through `beta`.
pub fn is_right_approximation(beta: &RepMorphism, objects: &[Representation]) -> Result<bool> {
    let f = beta.source().field();
    for x in objects {
        let to_target = HomSpace::new(x, beta.target())?;
        if to_target.dim() == 0 {
            continue;
        }
        let to_source = HomSpace::new(x, beta.source())?;
        let cols: Vec<Vec<u32>> = to_source
            .basis()
            .iter()
            .map(|h| {
                to_target
                    .coords(&beta.after(h))
                    .ok_or_else(|| Error::Invariant("composite is not a morphism".into()))
            })
            .collect::<Result<_>>()?;
        let rank = Matrix::from_columns(f, to_target.dim(), &cols).rank();
        if rank != to_target.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Standard modules of `A` for a vertex order and the derived verdicts.
#[derive(Debug, Clone)]
pub struct StratificationProfile {
    /// Vertices (0-based) from smallest to largest in the order.
    pub vertex_order: Vec<usize>,
    /// `Δ(v)` listed along `vertex_order`.
    pub standard_modules: Vec<Representation>,
    pub standardly_stratified: bool,
    pub quasi_hereditary: bool,
}

pub fn stratification_profile(
    algebra: &Arc<Algebra>,
    vertex_order: &[usize],
    caps: SearchCaps,
) -> Result<StratificationProfile> {
    let n = algebra.vertex_count();
    let mut sorted = vertex_order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::Precondition("vertex order must list every vertex once".into()));
    }
    let p: Vec<Representation> = vertex_order
        .iter()
        .map(|&v| Representation::projective(algebra, v))
        .collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..i {
            if is_isomorphic(&p[i], &p[j])? {
                return Err(Error::Precondition("algebra is not basic".into()));
            }
        }
    }
    let order = TfAdmissibleOrder::trusted(p.clone());
    let standard: Vec<Representation> = delta_terms(&order)?.into_iter().map(|t| t.delta).collect();
    let mut search = FiltrationSearch::new(&standard, caps);
    let mut stratified = true;
    for x in &p {
        if search.search(x)?.is_none() {
            stratified = false;
            break;
        }
    }
    let mut division = true;
    if stratified {
        for d in &standard {
            let end = HomSpace::new(d, d)?;
            for g in end.elements("endomorphism scan", DEFAULT_SEARCH_CAP)? {
                if !g.is_zero() && !g.is_isomorphism() {
                    division = false;
                    break;
                }
            }
        }
    }
    Ok(StratificationProfile {
        vertex_order: vertex_order.to_vec(),
        standard_modules: standard,
        standardly_stratified: stratified,
        quasi_hereditary: stratified && division,
    })
}

/// One τ-tilting module's census of induced systems (universe indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub module: Vec<usize>,
    pub orders: Vec<Vec<usize>>,
    pub delta_systems: Vec<Vec<usize>>,
    pub tf_proper: Vec<bool>,
    pub count_orders: usize,
    pub count_ordered: usize,
    pub count_unordered: usize,
    pub count_tfepss: usize,
}

/// Census for one basic τ-rigid module given by universe indices.
pub fn census_row(universe: &Universe, module: &[usize], caps: SearchCaps) -> Result<TableRow> {
    let pair = TauRigidPair::from_universe(universe, module)?;
    let perms = tf_admissible_permutations(&pair)?;
    let mut orders = Vec::new();
    let mut deltas = Vec::new();
    let mut proper = Vec::new();
    for perm in &perms {
        let idx: Vec<usize> = perm.iter().map(|&k| module[k]).collect();
        let order = TfAdmissibleOrder::trusted(idx.iter().map(|&i| universe.module(i).clone()).collect());
        let sys = build_delta(&order, Some(universe))?;
        let delta_idx: Vec<usize> = sys
            .theta
            .iter()
            .map(|d| universe.identify(d)?.ok_or(Error::IncompleteUniverse))
            .collect::<Result<_>>()?;
        let mut search = FiltrationSearch::new(&sys.theta, caps);
        let mut ok = true;
        for m in order.summands() {
            if search.search(m)?.is_none() {
                ok = false;
                break;
            }
        }
        orders.push(idx);
        deltas.push(delta_idx);
        proper.push(ok);
    }
    let ordered: HashSet<&Vec<usize>> = deltas.iter().collect();
    let unordered: HashSet<Vec<usize>> = deltas
        .iter()
        .map(|d| d.iter().copied().sorted().collect())
        .collect();
    let tfepss: HashSet<(&Vec<usize>, &Vec<usize>)> = deltas
        .iter()
        .zip(&orders)
        .zip(&proper)
        .filter(|(_, p)| **p)
        .map(|(pair, _)| pair)
        .collect();
    Ok(TableRow {
        module: module.to_vec(),
        count_orders: orders.len(),
        count_ordered: ordered.len(),
        count_unordered: unordered.len(),
        count_tfepss: tfepss.len(),
        orders,
        delta_systems: deltas,
        tf_proper: proper,
    })
}

/// Census rows for every τ-tilting module of the universe, in canonical order.
pub fn count_induced_systems(universe: &Universe, caps: SearchCaps) -> Result<Vec<TableRow>> {
    universe.require_complete()?;
    let modules = crate::tilting::tau_tilting_indices(universe)?;
    modules.par_iter().map(|m| census_row(universe, m, caps)).collect()
}

/// Componentwise isomorphism of two module families.
pub fn families_isomorphic(a: &[Representation], b: &[Representation]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, y) in a.iter().zip(b) {
        if find_isomorphism(x, y, DEFAULT_SEARCH_CAP)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::cyclic;
    use crate::quiver::parse_algebra;
    use crate::universe::{enumerate_indecomposables, EnumerationCaps};

    fn fixture() -> Universe {
        enumerate_indecomposables(&cyclic(), EnumerationCaps::default()).unwrap()
    }

    fn mods(u: &Universe, names: &[&str]) -> Vec<Representation> {
        names.iter().map(|n| u.module(u.index_of(n).unwrap()).clone()).collect()
    }

    fn order(u: &Universe, names: &[&str]) -> TfAdmissibleOrder {
        TfAdmissibleOrder::new(mods(u, names)).unwrap()
    }

    #[test]
    fn delta_examples() {
        let u = fixture();
        let single = build_delta(&order(&u, &["M12"]), Some(&u)).unwrap();
        assert!(is_isomorphic(&single.theta[0], &mods(&u, &["M12"])[0]).unwrap());
        let d = build_delta(&order(&u, &["P1", "M12", "S1"]), Some(&u)).unwrap();
        assert!(families_isomorphic(&d.theta, &mods(&u, &["P1", "M12", "S1"])).unwrap());
        let d = build_delta(&order(&u, &["P1", "P2", "S2"]), Some(&u)).unwrap();
        assert!(families_isomorphic(&d.theta, &mods(&u, &["S1", "P2", "S2"])).unwrap());
    }

    #[test]
    fn ss_verification() {
        let u = fixture();
        assert!(verify_ss(&mods(&u, &["S1", "S2", "P3"])).unwrap().is_ok());
        assert!(verify_ss(&mods(&u, &["S1", "S2"])).unwrap().is_ok());
        let bad = verify_ss(&mods(&u, &["S2", "S1"])).unwrap().unwrap_err();
        assert_eq!(bad, SsViolation::Ext { j: 1, i: 0, dim: 1 });
        assert!(verify_ss(&[]).unwrap().is_ok());
        let hom_bad = verify_ss(&mods(&u, &["S1", "M12"])).unwrap().unwrap_err();
        assert!(matches!(hom_bad, SsViolation::Hom { .. }));
    }

    #[test]
    fn filtrations() {
        let u = fixture();
        let caps = SearchCaps::default();
        let theta = mods(&u, &["S1", "S2"]);
        let m12 = &mods(&u, &["M12"])[0];
        let w = filtration_membership(m12, &theta, caps).unwrap().unwrap();
        assert_eq!(w.labels, vec![1, 0]);
        assert!(w.verify(m12, &theta).unwrap());
        let w = filtration_membership(&theta[0], &theta, caps).unwrap().unwrap();
        assert_eq!(w.labels, vec![0]);
        let theta = mods(&u, &["S1", "P2", "S2"]);
        assert!(filtration_membership(&mods(&u, &["P1"])[0], &theta, caps).unwrap().is_none());
    }

    #[test]
    fn proper_orders() {
        let u = fixture();
        let caps = SearchCaps::default();
        assert!(is_tf_proper(&order(&u, &["P1", "M12", "S2"]), caps).unwrap());
        assert!(is_tf_proper(&order(&u, &["P1", "M12", "S1"]), caps).unwrap());
        for perm in mods(&u, &["P1", "P2", "P3"]).into_iter().permutations(3) {
            assert!(!is_tf_proper(&TfAdmissibleOrder::new(perm).unwrap(), caps).unwrap());
        }
    }

    #[test]
    fn psi_and_upsilon() {
        let u = fixture();
        let caps = SearchCaps::default();
        let o = order(&u, &["P1", "M12", "S2"]);
        let triple = psi(&o, caps).unwrap();
        assert!(is_isomorphic(&triple.kernels[1], &mods(&u, &["S2"])[0]).unwrap());
        assert!(triple.kernels[0].is_zero() || hom_dim(&triple.kernels[0], &triple.kernels[0]).unwrap() > 0);
        assert!(verify_pss(&triple, &u, caps).unwrap().passed());
        let (q, parts) = upsilon(&triple).unwrap();
        assert_eq!(q.dims(), o.module().dims());
        assert!(families_isomorphic(&parts, o.summands()).unwrap());
        let row6 = psi(&order(&u, &["P1", "M12", "S1"]), caps).unwrap();
        assert!(row6.kernels.iter().all(Representation::is_zero));
        assert!(psi(&order(&u, &["P1", "P2", "P3"]), caps).is_err());
    }

    #[test]
    fn pss_failures() {
        let u = fixture();
        let caps = SearchCaps::default();
        let bad = PssTriple {
            flavor: Flavor::ExtProjective,
            theta: mods(&u, &["S1", "S2"]),
            partners: mods(&u, &["S1", "S2"]),
            kernels: vec![],
            witnesses: vec![],
        };
        assert!(!verify_pss(&bad, &u, caps).unwrap().passed());
        let single = PssTriple {
            flavor: Flavor::ExtProjective,
            theta: mods(&u, &["P1"]),
            partners: mods(&u, &["P1"]),
            kernels: vec![],
            witnesses: vec![],
        };
        assert!(verify_pss(&single, &u, caps).unwrap().passed());
    }

    #[test]
    fn profiles() {
        let a = cyclic();
        let caps = SearchCaps::default();
        let u = fixture();
        let p = stratification_profile(&a, &[0, 1, 2], caps).unwrap();
        assert!(families_isomorphic(&p.standard_modules, &mods(&u, &["S1", "S2", "P3"])).unwrap());
        for perm in (0..3).permutations(3) {
            let p = stratification_profile(&a, &perm, caps).unwrap();
            assert!(!p.standardly_stratified);
        }
        let lin = parse_algebra("vertices 2\narrow a 1 2\n").unwrap();
        let p = stratification_profile(&lin, &[0, 1], caps).unwrap();
        assert!(p.standardly_stratified && p.quasi_hereditary);
    }

    #[test]
    fn census_rows() {
        let u = fixture();
        let caps = SearchCaps::default();
        let idx = |names: &[&str]| -> Vec<usize> {
            let mut v: Vec<usize> = names.iter().map(|n| u.index_of(n).unwrap()).collect();
            v.sort();
            v
        };
        let r = census_row(&u, &idx(&["P1", "M12", "S1"]), caps).unwrap();
        assert_eq!((r.count_orders, r.count_ordered, r.count_unordered, r.count_tfepss), (1, 1, 1, 1));
        let r = census_row(&u, &idx(&["P1", "P2", "P3"]), caps).unwrap();
        assert_eq!((r.count_ordered, r.count_unordered, r.count_tfepss), (6, 6, 0));
        let r = census_row(&u, &idx(&["P1", "M12", "S2"]), caps).unwrap();
        assert_eq!(r.count_tfepss, 3);
        let r = census_row(&u, &idx(&["P1", "P2", "S2"]), caps).unwrap();
        assert_eq!((r.count_ordered, r.count_unordered), (3, 2));
    }
}
