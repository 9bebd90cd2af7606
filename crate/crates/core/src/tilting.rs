//! τ-rigid, τ-tilting and support τ-tilting modules, Bongartz completion and
//! torsion-free admissible orders.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hom::{hom_dim, is_indecomposable, is_isomorphic};
use crate::homology::tau;
use crate::module::{direct_sum, Representation};
use crate::torsion::in_fac;
use crate::universe::Universe;

pub use crate::torsion::is_tau_rigid;

/// A basic τ-rigid module with an ordered list of its indecomposable summands.
#[derive(Debug, Clone)]
pub struct TauRigidPair {
    module: Representation,
    summands: Vec<Representation>,
}

impl TauRigidPair {
    /// Validates indecomposability, pairwise non-isomorphism and τ-rigidity.
    pub fn new(summands: Vec<Representation>) -> Result<Self> {
        let first = summands
            .first()
            .ok_or_else(|| Error::Precondition("a τ-rigid pair needs at least one summand".into()))?;
        let module = direct_sum(first.algebra(), &summands)?;
        for (i, s) in summands.iter().enumerate() {
            if !is_indecomposable(s)? {
                return Err(Error::Precondition(format!("summand {} is not indecomposable", i + 1)));
            }
            for t in &summands[..i] {
                if is_isomorphic(s, t)? {
                    return Err(Error::Precondition("summands are not pairwise non-isomorphic".into()));
                }
            }
        }
        if !is_tau_rigid(&module)? {
            return Err(Error::NotTauRigid(format!("{} summands", summands.len())));
        }
        Ok(TauRigidPair { module, summands })
    }

    /// Builds from universe members already known to form a τ-rigid set.
    pub fn from_universe(universe: &Universe, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() || !indices.iter().all_unique() {
            return Err(Error::Precondition("need distinct universe members".into()));
        }
        if !universe.is_tau_rigid_set(indices) {
            return Err(Error::NotTauRigid(universe.sum_name(indices)));
        }
        Ok(TauRigidPair {
            module: universe.sum(indices),
            summands: indices.iter().map(|&i| universe.module(i).clone()).collect(),
        })
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn summands(&self) -> &[Representation] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }
}

/// All nonempty τ-rigid sets of universe members, as sorted index lists.
pub fn enumerate_tau_rigid(universe: &Universe) -> Result<Vec<Vec<usize>>> {
    universe.require_complete()?;
    let n = universe.algebra().vertex_count();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(u: &Universe, start: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..u.len() {
            if current.len() == n {
                return;
            }
            let ok = u.hom_tau_dim(i, i) == 0
                && current
                    .iter()
                    .all(|&j| u.hom_tau_dim(i, j) == 0 && u.hom_tau_dim(j, i) == 0);
            if ok {
                current.push(i);
                out.push(current.clone());
                rec(u, i + 1, n, current, out);
                current.pop();
            }
        }
    }
    rec(universe, 0, n, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// τ-tilting modules (τ-rigid with as many summands as vertices), as sorted
/// universe index lists in canonical order.
pub fn tau_tilting_indices(universe: &Universe) -> Result<Vec<Vec<usize>>> {
    let n = universe.algebra().vertex_count();
    Ok(enumerate_tau_rigid(universe)?
        .into_iter()
        .filter(|s| s.len() == n)
        .collect())
}

pub fn enumerate_tau_tilting(universe: &Universe) -> Result<Vec<TauRigidPair>> {
    tau_tilting_indices(universe)?
        .iter()
        .map(|s| TauRigidPair::from_universe(universe, s))
        .collect()
}

/// A support τ-tilting pair `(M, P)`: `M` as universe indices, `P` as the
/// vertices of its indecomposable projective summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTauTilting {
    pub module: Vec<usize>,
    pub projective_vertices: Vec<usize>,
}

pub fn enumerate_support_tau_tilting(universe: &Universe) -> Result<Vec<SupportTauTilting>> {
    universe.require_complete()?;
    let n = universe.algebra().vertex_count();
    let mut rigid = enumerate_tau_rigid(universe)?;
    rigid.insert(0, Vec::new());
    let mut out = Vec::new();
    for m in rigid {
        // Hom(P(v), M) = 0 iff M vanishes at v.
        let free: Vec<usize> = (0..n)
            .filter(|&v| m.iter().all(|&i| universe.module(i).dim(v) == 0))
            .collect();
        let need = n - m.len();
        for p in free.into_iter().combinations(need) {
            out.push(SupportTauTilting {
                module: m.clone(),
                projective_vertices: p,
            });
        }
    }
    Ok(out)
}

/// Universe indices of the Bongartz completion of `m`: the Ext-projectives of
/// `^⊥(τM)`.
pub fn bongartz_indices(m: &Representation, universe: &Universe) -> Result<Vec<usize>> {
    universe.require_complete()?;
    let tm = tau(m)?;
    if hom_dim(m, &tm)? != 0 {
        return Err(Error::NotTauRigid("Bongartz completion input".into()));
    }
    let mut perp = Vec::new();
    for i in 0..universe.len() {
        if hom_dim(universe.module(i), &tm)? == 0 {
            perp.push(i);
        }
    }
    let completion: Vec<usize> = perp
        .iter()
        .copied()
        .filter(|&x| perp.iter().all(|&y| universe.ext_dim(x, y) == 0))
        .collect();
    let n = universe.algebra().vertex_count();
    if completion.len() != n {
        return Err(Error::IncompleteUniverse);
    }
    for s in universe.decompose_indices(m)? {
        if !completion.contains(&s) {
            return Err(Error::Invariant("Bongartz completion misses a summand of the input".into()));
        }
    }
    Ok(completion)
}

pub fn bongartz_completion(m: &Representation, universe: &Universe) -> Result<TauRigidPair> {
    let idx = bongartz_indices(m, universe)?;
    TauRigidPair::from_universe(universe, &idx)
}

/// An ordering `M_1, …, M_t` with `M_i ∉ Fac(M_{i+1} ⊕ … ⊕ M_t)` for all `i`.
#[derive(Debug, Clone)]
pub struct TfAdmissibleOrder {
    summands: Vec<Representation>,
}

/// Whether the given ordering satisfies the torsion-free admissibility test.
pub fn is_tf_admissible(summands: &[Representation]) -> Result<bool> {
    let Some(first) = summands.first() else {
        return Ok(true);
    };
    for i in 0..summands.len() {
        let rest = direct_sum(first.algebra(), &summands[i + 1..])?;
        if in_fac(&rest, &summands[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl TfAdmissibleOrder {
    pub fn new(summands: Vec<Representation>) -> Result<Self> {
        TauRigidPair::new(summands.clone())?;
        if !is_tf_admissible(&summands)? {
            return Err(Error::Precondition("order is not torsion-free admissible".into()));
        }
        Ok(TfAdmissibleOrder { summands })
    }

    /// Skips validation; for orders produced by [`tf_admissible_orders`].
    pub(crate) fn trusted(summands: Vec<Representation>) -> Self {
        TfAdmissibleOrder { summands }
    }

    pub fn summands(&self) -> &[Representation] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn module(&self) -> Representation {
        direct_sum(self.summands[0].algebra(), &self.summands).expect("summands share the algebra")
    }

    /// `M_{i+1} ⊕ … ⊕ M_t` (0-based `i`).
    pub fn tail_after(&self, i: usize) -> Representation {
        direct_sum(self.summands[0].algebra(), &self.summands[i + 1..]).expect("summands share the algebra")
    }
}

/// Positions (into `pair.summands()`) of every TF-admissible ordering,
/// in lexicographic order of the permutations.
pub fn tf_admissible_permutations(pair: &TauRigidPair) -> Result<Vec<Vec<usize>>> {
    let s = pair.summands();
    let t = s.len();
    let algebra = s[0].algebra();
    let mut memo: HashMap<(usize, u64), bool> = HashMap::new();
    let mut in_fac_of = |i: usize, rest: &[usize]| -> Result<bool> {
        let mask = rest.iter().fold(0u64, |m, &j| m | (1 << j));
        if let Some(&b) = memo.get(&(i, mask)) {
            return Ok(b);
        }
        let parts: Vec<Representation> = rest.iter().map(|&j| s[j].clone()).collect();
        let b = in_fac(&direct_sum(algebra, &parts)?, &s[i])?;
        memo.insert((i, mask), b);
        Ok(b)
    };
    let mut out = Vec::new();
    'perm: for perm in (0..t).permutations(t) {
        for k in 0..t {
            if in_fac_of(perm[k], &perm[k + 1..])? {
                continue 'perm;
            }
        }
        out.push(perm);
    }
    if out.is_empty() {
        return Err(Error::Invariant("τ-rigid module without a TF-admissible order".into()));
    }
    Ok(out)
}

pub fn tf_admissible_orders(pair: &TauRigidPair) -> Result<Vec<TfAdmissibleOrder>> {
    Ok(tf_admissible_permutations(pair)?
        .into_iter()
        .map(|p| TfAdmissibleOrder::trusted(p.iter().map(|&i| pair.summands()[i].clone()).collect()))
        .collect())
}

/// Extends an order of `M` to one of its Bongartz completion `B`: the
/// complement summands first (first admissible arrangement in their order
/// within `B`), then the given order.
pub fn extend_order_to_bongartz(order: &TfAdmissibleOrder, b: &TauRigidPair) -> Result<TfAdmissibleOrder> {
    let mut used = vec![false; b.rank()];
    for s in order.summands() {
        let mut hit = false;
        for (k, x) in b.summands().iter().enumerate() {
            if !used[k] && is_isomorphic(s, x)? {
                used[k] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Err(Error::Precondition("completion does not contain the module".into()));
        }
    }
    let complement: Vec<Representation> = b
        .summands()
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(x, _)| x.clone())
        .collect();
    let c = complement.len();
    for perm in (0..c).permutations(c) {
        let mut full: Vec<Representation> = perm.iter().map(|&i| complement[i].clone()).collect();
        full.extend(order.summands().iter().cloned());
        if is_tf_admissible(&full)? {
            return Ok(TfAdmissibleOrder::trusted(full));
        }
    }
    Err(Error::Invariant("no admissible arrangement of the Bongartz complement".into()))
}
