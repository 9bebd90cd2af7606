//! Projective presentations, transpose, duality, AR translates and `Ext^1`.

use crate::error::{Error, Result};
use crate::hom::{hom_dim, HomSpace};
use crate::linalg::{CoefficientIter, Matrix};
use crate::module::{direct_sum, RepMorphism, Representation};
use crate::quiver::Path;

/// The morphism `P(vertex) -> target` sending `e_vertex` to `element`.
pub fn morphism_from_projective(
    projective: &Representation,
    vertex: usize,
    target: &Representation,
    element: &[u32],
) -> RepMorphism {
    let a = projective.algebra();
    let f = a.field();
    let maps = (0..a.vertex_count())
        .map(|j| {
            let cols: Vec<Vec<u32>> = a
                .basis_between(vertex, j)
                .into_iter()
                .map(|p| target.path_matrix(p).mul_vec(element))
                .collect();
            Matrix::from_columns(f, target.dim(j), &cols)
        })
        .collect();
    RepMorphism::new_unchecked(projective.clone(), target.clone(), maps)
}

/// A projective cover `P -> M` with `P = ⊕ P(v)` over `vertices`.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    pub vertices: Vec<usize>,
    pub module: Representation,
    pub map: RepMorphism,
}

pub fn projective_cover(m: &Representation) -> Result<ProjectiveCover> {
    let a = m.algebra();
    let rad = m.radical_spaces();
    let mut vertices = Vec::new();
    let mut parts = Vec::new();
    let mut generators = Vec::new();
    for v in 0..a.vertex_count() {
        let p = Representation::projective(a, v)?;
        for k in rad[v].complement_units() {
            let mut e = vec![0; m.dim(v)];
            e[k] = 1;
            vertices.push(v);
            parts.push(p.clone());
            generators.push(e);
        }
    }
    let module = direct_sum(a, &parts)?;
    let comps: Vec<RepMorphism> = parts
        .iter()
        .zip(&vertices)
        .zip(&generators)
        .map(|((p, &v), g)| morphism_from_projective(p, v, m, g))
        .collect();
    let map = RepMorphism::from_source_blocks(&module, m, &comps);
    debug_assert!(map.is_surjective());
    Ok(ProjectiveCover {
        vertices,
        module,
        map,
    })
}

/// `P1 --p1--> P0 --p0--> M -> 0`, minimal.
#[derive(Debug, Clone)]
pub struct ProjectivePresentation {
    pub module: Representation,
    pub p0: ProjectiveCover,
    pub syzygy: (Representation, RepMorphism),
    pub p1: ProjectiveCover,
    /// `P1 -> P0`, the cover of the syzygy followed by its inclusion.
    pub map: RepMorphism,
}

pub fn min_proj_presentation(m: &Representation) -> Result<ProjectivePresentation> {
    let p0 = projective_cover(m)?;
    let syzygy = p0.map.kernel();
    let p1 = projective_cover(&syzygy.0)?;
    let map = syzygy.1.after(&p1.map);
    Ok(ProjectivePresentation {
        module: m.clone(),
        p0,
        syzygy,
        p1,
        map,
    })
}

pub fn syzygy(m: &Representation) -> Result<Representation> {
    Ok(projective_cover(m)?.map.kernel().0)
}

pub fn cosyzygy(m: &Representation) -> Result<Representation> {
    syzygy(&m.dual())?.dual().rebase(m.algebra())
}

/// `Hom_A(X, A)` as a representation of the opposite algebra: the space at
/// vertex `k` is `Hom(X, P(k))`, and the opposite of an arrow `j -> k` acts
/// by composing with `P(k) -> P(j), e_k ↦ arrow`.
struct RegularDual {
    spaces: Vec<HomSpace>,
    module: Representation,
}

fn regular_dual(x: &Representation, projectives: &[Representation]) -> Result<RegularDual> {
    let a = x.algebra();
    let op = a.opposite();
    let f = a.field();
    let spaces: Vec<HomSpace> = projectives
        .iter()
        .map(|p| HomSpace::new(x, p))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let mut maps = Vec::with_capacity(a.arrows().len());
    for (ai, arrow) in a.arrows().iter().enumerate() {
        let (j, k) = (arrow.source, arrow.target);
        let alpha = Path {
            source: j,
            target: k,
            arrows: vec![ai],
        };
        let rho = morphism_from_projective(&projectives[k], k, &projectives[j], &a.normal_form(&alpha));
        let cols: Vec<Vec<u32>> = spaces[k]
            .basis()
            .iter()
            .map(|g| {
                spaces[j]
                    .coords(&rho.after(g))
                    .ok_or_else(|| Error::Invariant("composite is not a morphism".into()))
            })
            .collect::<Result<_>>()?;
        maps.push(Matrix::from_columns(f, dims[j], &cols));
    }
    let module = Representation::new_unchecked(op, dims, maps)?;
    Ok(RegularDual { spaces, module })
}

/// The transpose `Tr M`, a module over the opposite algebra.
pub fn transpose(m: &Representation) -> Result<Representation> {
    let a = m.algebra();
    let pres = min_proj_presentation(m)?;
    let projectives: Vec<Representation> = (0..a.vertex_count())
        .map(|v| Representation::projective(a, v))
        .collect::<Result<_>>()?;
    let h0 = regular_dual(&pres.p0.module, &projectives)?;
    let h1 = regular_dual(&pres.p1.module, &projectives)?;
    let f = a.field();
    let maps: Vec<Matrix> = (0..a.vertex_count())
        .map(|k| {
            let cols: Vec<Vec<u32>> = h0.spaces[k]
                .basis()
                .iter()
                .map(|g| {
                    h1.spaces[k]
                        .coords(&g.after(&pres.map))
                        .ok_or_else(|| Error::Invariant("composite is not a morphism".into()))
                })
                .collect::<Result<_>>()?;
            Ok(Matrix::from_columns(f, h1.module.dim(k), &cols))
        })
        .collect::<Result<_>>()?;
    let hp = RepMorphism::new_unchecked(h0.module, h1.module, maps);
    debug_assert!(hp.commutes());
    Ok(hp.cokernel().0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `τ = D Tr`
    Forward,
    /// `τ⁻ = Tr D`
    Backward,
}

pub fn ar_translate(m: &Representation, direction: Direction) -> Result<Representation> {
    match direction {
        Direction::Forward => transpose(m)?.dual().rebase(m.algebra()),
        Direction::Backward => transpose(&m.dual())?.rebase(m.algebra()),
    }
}

pub fn tau(m: &Representation) -> Result<Representation> {
    ar_translate(m, Direction::Forward)
}

pub fn tau_inverse(m: &Representation) -> Result<Representation> {
    ar_translate(m, Direction::Backward)
}

/// Data for computing `Ext^1(M, N)` from `0 -> ΩM -> P0 -> M -> 0`.
#[derive(Debug, Clone)]
pub struct ExtSpace {
    presentation_cover: ProjectiveCover,
    syzygy: (Representation, RepMorphism),
    target: Representation,
    hom_syzygy: HomSpace,
    /// Coordinates (in `Hom(ΩM, N)`) of a complement to the restricted maps.
    complement: Vec<Vec<u32>>,
}

impl ExtSpace {
    pub fn new(m: &Representation, n: &Representation) -> Result<Self> {
        m.check_same_algebra(n)?;
        let cover = projective_cover(m)?;
        let syzygy = cover.map.kernel();
        let hom_syzygy = HomSpace::new(&syzygy.0, n)?;
        let hom_cover = HomSpace::new(&cover.module, n)?;
        let f = m.field();
        let restricted: Vec<Vec<u32>> = hom_cover
            .basis()
            .iter()
            .map(|g| {
                hom_syzygy
                    .coords(&g.after(&syzygy.1))
                    .ok_or_else(|| Error::Invariant("restriction is not a morphism".into()))
            })
            .collect::<Result<_>>()?;
        let image = Matrix::from_columns(f, hom_syzygy.dim(), &restricted).column_space();
        let complement = image
            .complement_units()
            .into_iter()
            .map(|k| {
                let mut e = vec![0; hom_syzygy.dim()];
                e[k] = 1;
                e
            })
            .collect();
        Ok(ExtSpace {
            presentation_cover: cover,
            syzygy,
            target: n.clone(),
            hom_syzygy,
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Middle term of the extension class with the given coordinates
    /// (over a basis of `Ext^1`): the pushout of `ΩM -> P0` along `ΩM -> N`.
    pub fn middle_term(&self, coeffs: &[u32]) -> Result<Representation> {
        let f = self.target.field();
        let mut g = vec![0u32; self.hom_syzygy.dim()];
        for (c, v) in coeffs.iter().zip(&self.complement) {
            for (gi, vi) in g.iter_mut().zip(v) {
                *gi = f.add(*gi, f.mul(*c, *vi));
            }
        }
        let g = self.hom_syzygy.element(&g);
        let a = self.target.algebra();
        let p0 = &self.presentation_cover.module;
        let sum = direct_sum(a, &[self.target.clone(), p0.clone()])?;
        let neg_inc = self.syzygy.1.scale(f.neg(1));
        let into = RepMorphism::from_target_blocks(&self.syzygy.0, &sum, &[g, neg_inc]);
        Ok(into.cokernel().0)
    }

    /// A non-split middle term, if `Ext^1` is nonzero.
    pub fn witness(&self) -> Result<Option<Representation>> {
        if self.dim() == 0 {
            return Ok(None);
        }
        let mut c = vec![0; self.dim()];
        c[0] = 1;
        self.middle_term(&c).map(Some)
    }

    /// Middle terms of all nonzero classes up to scalar multiples.
    pub fn all_middle_terms(&self, cap: u128) -> Result<Vec<Representation>> {
        let f = self.target.field();
        match f.space_size(self.dim()) {
            Some(n) if n <= cap => {}
            _ => {
                return Err(Error::CapExceeded {
                    what: "extension enumeration",
                    needed: format!("{}^{}", f.characteristic(), self.dim()),
                    cap,
                })
            }
        }
        CoefficientIter::new(f, self.dim())
            .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
            .map(|c| self.middle_term(&c))
            .collect()
    }
}

pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(ExtSpace::new(m, n)?.dim())
}

/// `dim Ext^1(M, N)` and, when nonzero, a non-split middle term.
pub fn ext1(m: &Representation, n: &Representation) -> Result<(usize, Option<Representation>)> {
    let e = ExtSpace::new(m, n)?;
    Ok((e.dim(), e.witness()?))
}

/// `Hom(M, τN)`-based quick check used by τ-rigidity.
pub fn hom_into_tau(m: &Representation, n: &Representation) -> Result<usize> {
    hom_dim(m, &tau(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;
    use crate::module::tests::cyclic;
    use crate::quiver::Algebra;
    use std::sync::Arc;

    fn projectives(a: &Arc<Algebra>) -> Vec<Representation> {
        (0..a.vertex_count()).map(|v| Representation::projective(a, v).unwrap()).collect()
    }

    fn fixture() -> (Arc<Algebra>, Vec<Representation>, Vec<Representation>) {
        let a = cyclic();
        let s = (0..3).map(|v| Representation::simple(&a, v).unwrap()).collect();
        let p = projectives(&a);
        (a, s, p)
    }

    fn m12(a: &Arc<Algebra>) -> Representation {
        let p1 = Representation::projective(a, 0).unwrap();
        p1.quotient_by_spaces(&p1.socle_spaces()).unwrap().0
    }

    #[test]
    fn presentation_of_s1() {
        let (_, s, p) = fixture();
        let pres = min_proj_presentation(&s[0]).unwrap();
        assert_eq!(pres.p0.vertices, vec![0]);
        assert_eq!(pres.syzygy.0.dims(), &[0, 1, 1]);
        assert_eq!(pres.p1.vertices, vec![1]);
        assert!(is_isomorphic(&pres.p1.module, &p[1]).unwrap());
    }

    #[test]
    fn presentation_of_projective() {
        let (_, _, p) = fixture();
        let pres = min_proj_presentation(&p[2]).unwrap();
        assert!(pres.p1.module.is_zero());
        assert!(pres.p0.map.is_isomorphism());
    }

    #[test]
    fn presentation_of_m12() {
        let (a, s, _) = fixture();
        let pres = min_proj_presentation(&m12(&a)).unwrap();
        assert_eq!(pres.p0.vertices, vec![0]);
        assert!(is_isomorphic(&pres.syzygy.0, &s[2]).unwrap());
        assert_eq!(pres.p1.vertices, vec![2]);
    }

    #[test]
    fn tau_on_fixture() {
        let (a, s, p) = fixture();
        for v in 0..3 {
            assert!(tau(&p[v]).unwrap().is_zero());
            let t = tau(&s[v]).unwrap();
            assert!(is_isomorphic(&t, &s[(v + 1) % 3]).unwrap(), "tau S{}", v + 1);
            let back = tau_inverse(&t).unwrap();
            assert!(is_isomorphic(&back, &s[v]).unwrap());
        }
        let m = m12(&a);
        let t = tau(&m).unwrap();
        assert_eq!(t.dims(), &[0, 1, 1]);
    }

    #[test]
    fn double_transpose_and_dual() {
        let (a, s, _) = fixture();
        let tt = transpose(&transpose(&s[0]).unwrap()).unwrap().rebase(&a).unwrap();
        assert!(is_isomorphic(&tt, &s[0]).unwrap());
        let dd = s[1].dual().dual().rebase(&a).unwrap();
        assert!(is_isomorphic(&dd, &s[1]).unwrap());
        assert!(Representation::zero(&a).dual().is_zero());
    }

    #[test]
    fn ext_between_simples_counts_arrows() {
        let (_, s, p) = fixture();
        for i in 0..3 {
            for j in 0..3 {
                let expected = usize::from(j == (i + 1) % 3);
                assert_eq!(ext1_dim(&s[i], &s[j]).unwrap(), expected, "Ext(S{}, S{})", i + 1, j + 1);
            }
            assert_eq!(ext1_dim(&p[i], &s[(i + 1) % 3]).unwrap(), 0);
        }
    }

    #[test]
    fn ext_witness_is_nonsplit() {
        let (a, s, _) = fixture();
        let (d, w) = ext1(&s[0], &s[1]).unwrap();
        assert_eq!(d, 1);
        let w = w.unwrap();
        assert!(is_isomorphic(&w, &m12(&a)).unwrap());
    }

    #[test]
    fn cosyzygy_of_simple() {
        let (_, s, _) = fixture();
        // S3 embeds in I3 = P1 with cokernel M12.
        let c = cosyzygy(&s[2]).unwrap();
        assert_eq!(c.dims(), &[1, 1, 0]);
    }
}
