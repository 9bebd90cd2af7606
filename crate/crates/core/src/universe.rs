//! Enumerated lists of indecomposable modules with cached invariants.

use std::cmp::Reverse;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hom::{find_isomorphism, hom_dim, indecomposable_summands, DEFAULT_SEARCH_CAP};
use crate::homology::{cosyzygy, ext1_dim, syzygy, tau, tau_inverse};
use crate::module::{direct_sum, Representation};
use crate::quiver::Algebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Candidates of larger total dimension make the closure incomplete.
    pub dim_bound: usize,
    /// Maximum number of closure rounds.
    pub iteration_bound: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            dim_bound: 64,
            iteration_bound: 64,
        }
    }
}

/// Indecomposable modules, pairwise non-isomorphic, in canonical order,
/// together with τ, τ⁻ and the Hom / Ext grids between them.
#[derive(Debug, Clone)]
pub struct Universe {
    algebra: Arc<Algebra>,
    modules: Vec<Representation>,
    names: Vec<String>,
    complete: bool,
    tau: Vec<Representation>,
    tau_inverse: Vec<Representation>,
    hom: Vec<Vec<usize>>,
    /// `hom_tau[i][j] = dim Hom(X_i, τ X_j)`
    hom_tau: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    projective: Vec<bool>,
    injective: Vec<bool>,
}

fn same_invariants(a: &Representation, b: &Representation) -> bool {
    a.dims() == b.dims() && a.top_dims() == b.top_dims() && a.socle_dims() == b.socle_dims()
}

/// Index of the module in `list` isomorphic to `m`.
fn find_in(list: &[Representation], m: &Representation) -> Result<Option<usize>> {
    for (i, x) in list.iter().enumerate() {
        if same_invariants(x, m) && find_isomorphism(x, m, DEFAULT_SEARCH_CAP)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Modules derived from `m` whose summands the closure adds.
fn neighbours(m: &Representation) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    let (rad, _) = m.submodule(&m.radical_spaces())?;
    out.push(rad);
    out.push(m.quotient_by_spaces(&m.socle_spaces())?.0);
    out.push(syzygy(m)?);
    out.push(cosyzygy(m)?);
    out.push(tau(m)?);
    out.push(tau_inverse(m)?);
    Ok(out)
}

/// Closure enumeration of indecomposables: seeds are simples, projectives
/// and injectives; each round adds the indecomposable summands of radicals,
/// socle quotients, syzygies, cosyzygies, τ and τ⁻ of the new modules.
pub fn enumerate_indecomposables(algebra: &Arc<Algebra>, caps: EnumerationCaps) -> Result<Universe> {
    if caps.dim_bound == 0 || caps.iteration_bound == 0 {
        return Err(Error::Precondition("caps must be positive".into()));
    }
    let n = algebra.vertex_count();
    let mut seeds = Vec::new();
    for v in 0..n {
        seeds.push(Representation::simple(algebra, v)?);
        seeds.push(Representation::projective(algebra, v)?);
        seeds.push(Representation::injective(algebra, v)?);
    }
    let mut known: Vec<Representation> = Vec::new();
    let mut fresh: Vec<Representation> = Vec::new();
    let absorb = |cands: Vec<Representation>, known: &mut Vec<Representation>, fresh: &mut Vec<Representation>| -> Result<()> {
        for c in cands {
            for s in indecomposable_summands(&c)? {
                if s.total_dim() > caps.dim_bound {
                    return Err(Error::ClosureIncomplete(format!(
                        "found an indecomposable of dimension {} above the bound {}",
                        s.total_dim(),
                        caps.dim_bound
                    )));
                }
                if find_in(known, &s)?.is_none() {
                    known.push(s.clone());
                    fresh.push(s);
                }
            }
        }
        Ok(())
    };
    absorb(seeds, &mut known, &mut fresh)?;
    let mut rounds = 0;
    while !fresh.is_empty() {
        rounds += 1;
        if rounds > caps.iteration_bound {
            return Err(Error::ClosureIncomplete(format!(
                "no fixed point after {} rounds ({} modules so far)",
                caps.iteration_bound,
                known.len()
            )));
        }
        let batch = std::mem::take(&mut fresh);
        let cands: Vec<Vec<Representation>> = batch.par_iter().map(neighbours).collect::<Result<_>>()?;
        absorb(cands.into_iter().flatten().collect(), &mut known, &mut fresh)?;
    }
    Universe::from_modules(algebra, known, true)
}

fn layers_are_simple(m: &Representation) -> Option<Vec<usize>> {
    m.loewy_layers()
        .iter()
        .map(|layer| {
            if layer.iter().sum::<usize>() == 1 {
                layer.iter().position(|&d| d == 1)
            } else {
                None
            }
        })
        .collect()
}

fn base_name(m: &Representation) -> String {
    let top = m.top_dims();
    let soc = m.socle_dims();
    let one = |d: &[usize]| (d.iter().sum::<usize>() == 1).then(|| d.iter().position(|&x| x == 1).unwrap());
    if m.total_dim() == 1 {
        return format!("S{}", one(m.dims()).unwrap() + 1);
    }
    if let Some(v) = one(&top) {
        if m.is_projective_structurally() {
            return format!("P{}", v + 1);
        }
    }
    if let Some(v) = one(&soc) {
        if m.is_injective_structurally() {
            return format!("I{}", v + 1);
        }
    }
    if let Some(seq) = layers_are_simple(m) {
        let s: Vec<String> = seq.iter().map(|v| (v + 1).to_string()).collect();
        return format!("M{}", s.join(""));
    }
    let d: Vec<String> = m.dims().iter().map(|x| x.to_string()).collect();
    format!("M({})", d.join(","))
}

impl Universe {
    /// Wrap a list of pairwise non-isomorphic indecomposables; sorts them
    /// canonically and computes names and grids.
    pub fn from_modules(algebra: &Arc<Algebra>, modules: Vec<Representation>, complete: bool) -> Result<Self> {
        let mut keyed: Vec<_> = modules
            .into_iter()
            .map(|m| {
                let layers = m.loewy_layers();
                ((m.total_dim(), Reverse(layers), m.serialization_key()), m)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let modules: Vec<Representation> = keyed.into_iter().map(|(_, m)| m).collect();
        let mut names: Vec<String> = Vec::with_capacity(modules.len());
        for m in &modules {
            let base = base_name(m);
            let mut name = base.clone();
            let mut k = 2;
            while names.contains(&name) {
                name = format!("{base}_{k}");
                k += 1;
            }
            names.push(name);
        }
        let tau: Vec<Representation> = modules.par_iter().map(tau).collect::<Result<_>>()?;
        let tau_inverse: Vec<Representation> = modules.par_iter().map(tau_inverse).collect::<Result<_>>()?;
        let grid = |f: &(dyn Fn(usize, usize) -> Result<usize> + Sync)| -> Result<Vec<Vec<usize>>> {
            (0..modules.len())
                .into_par_iter()
                .map(|i| (0..modules.len()).map(|j| f(i, j)).collect())
                .collect()
        };
        let hom = grid(&|i, j| hom_dim(&modules[i], &modules[j]))?;
        let hom_tau = grid(&|i, j| hom_dim(&modules[i], &tau[j]))?;
        let ext = grid(&|i, j| ext1_dim(&modules[i], &modules[j]))?;
        let projective = tau.iter().map(Representation::is_zero).collect();
        let injective = tau_inverse.iter().map(Representation::is_zero).collect();
        Ok(Universe {
            algebra: algebra.clone(),
            modules,
            names,
            complete,
            tau,
            tau_inverse,
            hom,
            hom_tau,
            ext,
            projective,
            injective,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteUniverse)
        }
    }

    pub fn modules(&self) -> &[Representation] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &Representation {
        &self.modules[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn tau(&self, i: usize) -> &Representation {
        &self.tau[i]
    }

    pub fn tau_inverse(&self, i: usize) -> &Representation {
        &self.tau_inverse[i]
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    /// `dim Hom(X_i, τ X_j)`
    pub fn hom_tau_dim(&self, i: usize, j: usize) -> usize {
        self.hom_tau[i][j]
    }

    pub fn ext_dim(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn is_projective(&self, i: usize) -> bool {
        self.projective[i]
    }

    pub fn is_injective(&self, i: usize) -> bool {
        self.injective[i]
    }

    /// Index of the indecomposable projective `P(vertex)`.
    pub fn projective_index(&self, vertex: usize) -> Result<usize> {
        let p = Representation::projective(&self.algebra, vertex)?;
        self.identify(&p)?.ok_or(Error::IncompleteUniverse)
    }

    /// Index of the member isomorphic to the indecomposable `m`.
    pub fn identify(&self, m: &Representation) -> Result<Option<usize>> {
        find_in(&self.modules, m)
    }

    /// Indices of the indecomposable summands of `m`, with repetition, sorted.
    pub fn decompose_indices(&self, m: &Representation) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for s in indecomposable_summands(m)? {
            out.push(self.identify(&s)?.ok_or(Error::IncompleteUniverse)?);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn sum(&self, indices: &[usize]) -> Representation {
        let parts: Vec<Representation> = indices.iter().map(|&i| self.modules[i].clone()).collect();
        direct_sum(&self.algebra, &parts).expect("members share the algebra")
    }

    /// `X1⊕X2⊕…` naming for a list of members (`0` when empty).
    pub fn sum_name(&self, indices: &[usize]) -> String {
        if indices.is_empty() {
            return "0".into();
        }
        indices.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("⊕")
    }

    /// Whether `⊕ X_i` over the given members is τ-rigid (from the grid).
    pub fn is_tau_rigid_set(&self, indices: &[usize]) -> bool {
        indices
            .iter()
            .all(|&i| indices.iter().all(|&j| self.hom_tau[i][j] == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::cyclic;
    use crate::quiver::parse_algebra;

    #[test]
    fn fixture_inventory() {
        let u = enumerate_indecomposables(&cyclic(), EnumerationCaps::default()).unwrap();
        assert_eq!(u.names(), &["S1", "S2", "S3", "M12", "M23", "M31", "P1", "P2", "P3"]);
        let dims: Vec<Vec<usize>> = u.modules().iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(dims[3], vec![1, 1, 0]);
        assert_eq!(dims[5], vec![1, 0, 1]);
        assert!(u.is_projective(6) && u.is_injective(6) && !u.is_projective(3));
    }

    #[test]
    fn single_vertex() {
        let a = parse_algebra("vertices 1\n").unwrap();
        let u = enumerate_indecomposables(&a, EnumerationCaps::default()).unwrap();
        assert_eq!(u.names(), &["S1"]);
    }

    #[test]
    fn linear_quiver() {
        let a = parse_algebra("vertices 2\narrow a 1 2\n").unwrap();
        let u = enumerate_indecomposables(&a, EnumerationCaps::default()).unwrap();
        assert_eq!(u.names(), &["S1", "S2", "P1"]);
    }

    #[test]
    fn tau_grid_closed() {
        let u = enumerate_indecomposables(&cyclic(), EnumerationCaps::default()).unwrap();
        for i in 0..u.len() {
            if !u.is_projective(i) {
                assert!(u.identify(u.tau(i)).unwrap().is_some());
            }
            if !u.is_injective(i) {
                assert!(u.identify(u.tau_inverse(i)).unwrap().is_some());
            }
        }
        let s1 = u.index_of("S1").unwrap();
        assert_eq!(u.identify(u.tau(s1)).unwrap(), u.index_of("S2"));
        let m12 = u.index_of("M12").unwrap();
        assert_eq!(u.identify(u.tau(m12)).unwrap(), u.index_of("M23"));
    }

    #[test]
    fn caps_are_checked() {
        let caps = EnumerationCaps {
            dim_bound: 2,
            iteration_bound: 10,
        };
        let err = enumerate_indecomposables(&cyclic(), caps).unwrap_err();
        assert!(err.is_inconclusive());
    }
}
