//! Representations of bound quivers and morphisms between them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Algebra, Path};

/// A finite dimensional left module, given as a vector space per vertex and
/// a matrix per arrow (`dim(target) x dim(source)`).
#[derive(Clone)]
pub struct Representation(Arc<RepData>);

struct RepData {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// Which structural module to build at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Projective,
    Injective,
    Simple,
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Validates matrix shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let rep = Representation::new_unchecked(algebra, dims, maps)?;
        rep.check_relations()?;
        Ok(rep)
    }

    /// Shape-checked construction without the relation check; used where
    /// relations hold by construction (subquotients, sums).
    pub(crate) fn new_unchecked(
        algebra: Arc<Algebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "dimension vector has {} entries, algebra has {} vertices",
                dims.len(),
                algebra.vertex_count()
            )));
        }
        if maps.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "{} arrow matrices given, algebra has {} arrows",
                maps.len(),
                algebra.arrows().len()
            )));
        }
        for (a, m) in algebra.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` matrix is over the wrong field",
                    a.name
                )));
            }
        }
        Ok(Representation(Arc::new(RepData {
            algebra,
            dims,
            maps,
        })))
    }

    fn check_relations(&self) -> Result<()> {
        for rel in self.algebra().annihilator_checks() {
            let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
            let mut acc = Matrix::zeros(self.field(), self.dim(t), self.dim(s));
            for (c, p) in &rel.terms {
                acc = acc.axpy(*c, &self.path_matrix(p));
            }
            if !acc.is_zero() {
                let q = self.algebra().quiver();
                let desc: Vec<String> = rel.terms.iter().map(|(c, p)| format!("{c}*{}", p.display(q))).collect();
                return Err(Error::InvalidModule(format!(
                    "relation {} does not act as zero",
                    desc.join(" + ")
                )));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let dims = vec![0; algebra.vertex_count()];
        let maps = algebra
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(algebra.field(), 0, 0))
            .collect();
        Representation::new_unchecked(algebra.clone(), dims, maps).unwrap()
    }

    pub fn simple(algebra: &Arc<Algebra>, vertex: usize) -> Result<Self> {
        check_vertex(algebra, vertex)?;
        let mut dims = vec![0; algebra.vertex_count()];
        dims[vertex] = 1;
        let maps = algebra
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(algebra.field(), dims[a.target], dims[a.source]))
            .collect();
        Representation::new_unchecked(algebra.clone(), dims, maps)
    }

    /// The indecomposable projective `P(vertex)`: the space at `j` has the
    /// basis paths from `vertex` to `j`, arrows act by extending paths.
    pub fn projective(algebra: &Arc<Algebra>, vertex: usize) -> Result<Self> {
        check_vertex(algebra, vertex)?;
        let n = algebra.vertex_count();
        let dims: Vec<usize> = (0..n).map(|j| algebra.dim_between(vertex, j)).collect();
        let field = algebra.field();
        let maps = algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let cols: Vec<Vec<u32>> = algebra
                    .basis_between(vertex, a.source)
                    .into_iter()
                    .map(|p| {
                        let ext = p
                            .then(&Path {
                                source: a.source,
                                target: a.target,
                                arrows: vec![ai],
                            })
                            .unwrap();
                        algebra.normal_form(&ext)
                    })
                    .collect();
                Matrix::from_columns(field, dims[a.target], &cols)
            })
            .collect();
        Representation::new_unchecked(algebra.clone(), dims, maps)
    }

    /// The indecomposable injective `I(vertex)`, built as the dual of the
    /// projective of the opposite algebra.
    pub fn injective(algebra: &Arc<Algebra>, vertex: usize) -> Result<Self> {
        let op = algebra.opposite();
        Representation::projective(&op, vertex)?.dual().rebase(algebra)
    }

    pub fn structure_module(algebra: &Arc<Algebra>, kind: StructureKind, vertex: usize) -> Result<Self> {
        match kind {
            StructureKind::Projective => Representation::projective(algebra, vertex),
            StructureKind::Injective => Representation::injective(algebra, vertex),
            StructureKind::Simple => Representation::simple(algebra, vertex),
        }
    }

    /// The free module `A` as the direct sum of all indecomposable projectives.
    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        let parts: Vec<_> = (0..algebra.vertex_count())
            .map(|v| Representation::projective(algebra, v).unwrap())
            .collect();
        direct_sum(algebra, &parts).unwrap()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.0.dims[vertex]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.0.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.0.maps[arrow]
    }

    /// Matrix by which a path acts.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dim(p.source));
        for &a in &p.arrows {
            acc = self.map(a).mul(&acc);
        }
        acc
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        same_algebra(self.algebra(), other.algebra())
    }

    pub(crate) fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Reattach to a structurally equal algebra handle.
    pub fn rebase(&self, algebra: &Arc<Algebra>) -> Result<Representation> {
        if !same_algebra(self.algebra(), algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Representation::new_unchecked(algebra.clone(), self.dims().to_vec(), self.maps().to_vec())
    }

    /// The dual module over the opposite algebra: spaces dualized, arrow
    /// matrices transposed.
    pub fn dual(&self) -> Representation {
        let op = self.algebra().opposite();
        let maps = self.maps().iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(op, self.dims().to_vec(), maps).unwrap()
    }

    /// Per-vertex bases of the radical `sum of arrow images`.
    pub fn radical_spaces(&self) -> Vec<Matrix> {
        let full: Vec<Matrix> = (0..self.dims().len())
            .map(|v| Matrix::identity(self.field(), self.dim(v)))
            .collect();
        self.apply_arrows(&full)
    }

    /// Per-vertex span of all arrow images of the given subspaces.
    fn apply_arrows(&self, spaces: &[Matrix]) -> Vec<Matrix> {
        let f = self.field();
        let mut out: Vec<Matrix> = self.dims().iter().map(|&d| Matrix::zeros(f, d, 0)).collect();
        for (ai, a) in self.algebra().arrows().iter().enumerate() {
            let img = self.map(ai).mul(&spaces[a.source]);
            out[a.target] = out[a.target].hstack(&img);
        }
        out.into_iter().map(|m| m.column_space()).collect()
    }

    /// Dimension vectors of the radical layers `rad^k M / rad^(k+1) M`.
    pub fn loewy_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut current: Vec<Matrix> = (0..self.dims().len())
            .map(|v| Matrix::identity(self.field(), self.dim(v)))
            .collect();
        loop {
            let cur_dims: Vec<usize> = current.iter().map(Matrix::cols).collect();
            if cur_dims.iter().all(|&d| d == 0) {
                break;
            }
            let next = self.apply_arrows(&current);
            layers.push(
                cur_dims
                    .iter()
                    .zip(&next)
                    .map(|(&c, n)| c - n.cols())
                    .collect(),
            );
            current = next;
        }
        layers
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.dims()
            .iter()
            .zip(self.radical_spaces())
            .map(|(&d, r)| d - r.cols())
            .collect()
    }

    /// Per-vertex bases of the socle (vectors killed by every arrow).
    pub fn socle_spaces(&self) -> Vec<Matrix> {
        let f = self.field();
        (0..self.dims().len())
            .map(|v| {
                let mut stacked = Matrix::zeros(f, 0, self.dim(v));
                for (ai, a) in self.algebra().arrows().iter().enumerate() {
                    if a.source == v {
                        stacked = stacked.vstack(self.map(ai));
                    }
                }
                stacked.nullspace_matrix()
            })
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_spaces().iter().map(Matrix::cols).collect()
    }

    /// Smallest submodule containing the given per-vertex vectors.
    pub fn generated_spaces(&self, generators: &[Matrix]) -> Vec<Matrix> {
        let mut spaces: Vec<Matrix> = generators.iter().map(Matrix::column_space).collect();
        loop {
            let pushed = self.apply_arrows(&spaces);
            let mut grew = false;
            for (s, p) in spaces.iter_mut().zip(pushed) {
                let joined = s.hstack(&p).column_space();
                if joined.cols() > s.cols() {
                    grew = true;
                }
                *s = joined;
            }
            if !grew {
                return spaces;
            }
        }
    }

    /// The submodule with the given per-vertex bases (columns independent,
    /// closed under the arrows) and its inclusion.
    pub fn submodule(&self, spaces: &[Matrix]) -> Result<(Representation, RepMorphism)> {
        let f = self.field();
        let spaces: Vec<Matrix> = spaces.iter().map(Matrix::column_space).collect();
        let dims: Vec<usize> = spaces.iter().map(Matrix::cols).collect();
        let mut maps = Vec::with_capacity(self.maps().len());
        for (ai, a) in self.algebra().arrows().iter().enumerate() {
            let img = self.map(ai).mul(&spaces[a.source]);
            let induced = spaces[a.target].solve_matrix(&img).ok_or_else(|| {
                Error::InvalidModule(format!("subspace not closed under arrow `{}`", a.name))
            })?;
            maps.push(induced);
        }
        let _ = f;
        let sub = Representation::new_unchecked(self.algebra().clone(), dims, maps)?;
        let inc = RepMorphism::new_unchecked(sub.clone(), self.clone(), spaces);
        Ok((sub, inc))
    }

    /// Quotient by the submodule spanned per vertex by `spaces`, with the
    /// projection. Coordinates of the quotient are the standard basis
    /// vectors greedily completing each subspace.
    pub fn quotient_by_spaces(&self, spaces: &[Matrix]) -> Result<(Representation, RepMorphism)> {
        let f = self.field();
        let n = self.dims().len();
        let mut complements = Vec::with_capacity(n);
        let mut projections = Vec::with_capacity(n);
        for v in 0..n {
            let s = spaces[v].column_space();
            let units = s.complement_units();
            let d = self.dim(v);
            let c = Matrix::from_columns(
                f,
                d,
                &units
                    .iter()
                    .map(|&k| {
                        let mut e = vec![0; d];
                        e[k] = 1;
                        e
                    })
                    .collect::<Vec<_>>(),
            );
            let full = s.hstack(&c);
            let inv = full
                .inverse()
                .ok_or_else(|| Error::Invariant("complement does not span".into()))?;
            projections.push(inv.submatrix(s.cols()..d, 0..d));
            complements.push(c);
        }
        let mut maps = Vec::with_capacity(self.maps().len());
        for (ai, a) in self.algebra().arrows().iter().enumerate() {
            let img = self.map(ai).mul(&complements[a.source]);
            maps.push(projections[a.target].mul(&img));
        }
        let dims = complements.iter().map(Matrix::cols).collect();
        let q = Representation::new_unchecked(self.algebra().clone(), dims, maps)?;
        let proj = RepMorphism::new_unchecked(self.clone(), q.clone(), projections);
        // The quotient is only well defined when the spaces form a submodule.
        if !proj.commutes() {
            return Err(Error::InvalidModule("quotient by a non-submodule".into()));
        }
        Ok((q, proj))
    }

    /// `M / sub` for an injective morphism `sub` into `self`.
    pub fn quotient(&self, sub: &RepMorphism) -> Result<(Representation, RepMorphism)> {
        if !sub.target().same_algebra(self) || sub.target().dims() != self.dims() {
            return Err(Error::InvalidMorphism("submodule target is not this module".into()));
        }
        if !sub.is_injective() {
            return Err(Error::InvalidMorphism("quotient by a non-injective morphism".into()));
        }
        self.quotient_by_spaces(sub.maps())
    }

    /// Deterministic text used for canonical ordering.
    pub fn serialization_key(&self) -> String {
        let mut s = format!("{:?}", self.dims());
        for m in self.maps() {
            s.push('|');
            for x in m.data() {
                s.push(char::from_digit(*x % 36, 36).unwrap_or('?'));
            }
        }
        s
    }

    pub fn is_projective_structurally(&self) -> bool {
        // dim M equals dim of its projective cover
        let top = self.top_dims();
        let cover: usize = top
            .iter()
            .enumerate()
            .map(|(v, &t)| t * (0..self.dims().len()).map(|j| self.algebra().dim_between(v, j)).sum::<usize>())
            .sum();
        cover == self.total_dim()
    }

    pub fn is_injective_structurally(&self) -> bool {
        self.dual().is_projective_structurally()
    }
}

fn check_vertex(algebra: &Algebra, vertex: usize) -> Result<()> {
    if vertex >= algebra.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: vertex + 1,
            count: algebra.vertex_count(),
        });
    }
    Ok(())
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims())?;
        let arrows = self.algebra().arrows();
        let mut dbg = f.debug_map();
        for (a, m) in arrows.iter().zip(self.maps()) {
            dbg.entry(&a.name, &m.to_rows());
        }
        dbg.finish()
    }
}

impl PartialEq for Representation {
    /// Literal equality of the presentation (not isomorphism).
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims() == other.dims() && self.maps() == other.maps()
    }
}

impl Eq for Representation {}

/// Direct sum with block-diagonal arrow matrices, summands in order.
pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Representation]) -> Result<Representation> {
    for p in parts {
        if !same_algebra(p.algebra(), algebra) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let n = algebra.vertex_count();
    let f = algebra.field();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dim(v)).sum()).collect();
    let maps = (0..algebra.arrows().len())
        .map(|ai| {
            parts
                .iter()
                .fold(Matrix::zeros(f, 0, 0), |acc, p| acc.block_diag(p.map(ai)))
        })
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, maps)
}

/// Coordinate offsets of each summand inside a direct sum, per vertex.
pub fn summand_offsets(parts: &[Representation], vertex: usize) -> Vec<usize> {
    let mut acc = 0;
    parts
        .iter()
        .map(|p| {
            let o = acc;
            acc += p.dim(vertex);
            o
        })
        .collect()
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.check_same_algebra(&target)?;
        if maps.len() != source.dims().len() {
            return Err(Error::InvalidMorphism("one matrix per vertex required".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != target.dim(v) || m.cols() != source.dim(v) {
                return Err(Error::InvalidMorphism(format!("wrong shape at vertex {}", v + 1)));
            }
        }
        let f = RepMorphism {
            source,
            target,
            maps,
        };
        if !f.commutes() {
            return Err(Error::InvalidMorphism("squares do not commute".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, maps: Vec<Matrix>) -> Self {
        RepMorphism {
            source,
            target,
            maps,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        let maps = (0..source.dims().len())
            .map(|v| Matrix::zeros(f, target.dim(v), source.dim(v)))
            .collect();
        RepMorphism::new_unchecked(source.clone(), target.clone(), maps)
    }

    pub fn identity(m: &Representation) -> Self {
        let maps = m
            .dims()
            .iter()
            .map(|&d| Matrix::identity(m.field(), d))
            .collect();
        RepMorphism::new_unchecked(m.clone(), m.clone(), maps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, vertex: usize) -> &Matrix {
        &self.maps[vertex]
    }

    pub fn commutes(&self) -> bool {
        self.source
            .algebra()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| {
                self.target.map(ai).mul(&self.maps[a.source]) == self.maps[a.target].mul(self.source.map(ai))
            })
    }

    /// `self ∘ first`
    pub fn after(&self, first: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect();
        RepMorphism::new_unchecked(first.source.clone(), self.target.clone(), maps)
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        RepMorphism::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn scale(&self, c: u32) -> RepMorphism {
        let maps = self.maps.iter().map(|a| a.scale(c)).collect();
        RepMorphism::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// Flattened coordinates (vertex by vertex, row-major).
    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn kernel(&self) -> (Representation, RepMorphism) {
        let spaces: Vec<Matrix> = self.maps.iter().map(Matrix::nullspace_matrix).collect();
        self.source.submodule(&spaces).expect("kernels are submodules")
    }

    pub fn image(&self) -> (Representation, RepMorphism) {
        let spaces: Vec<Matrix> = self.maps.iter().map(Matrix::column_space).collect();
        self.target.submodule(&spaces).expect("images are submodules")
    }

    pub fn cokernel(&self) -> (Representation, RepMorphism) {
        let spaces: Vec<Matrix> = self.maps.iter().map(Matrix::column_space).collect();
        self.target
            .quotient_by_spaces(&spaces)
            .expect("images are submodules")
    }

    /// Kernel, image and cokernel together.
    pub fn image_factorization(&self) -> ImageFactorization {
        ImageFactorization {
            kernel: self.kernel(),
            image: self.image(),
            cokernel: self.cokernel(),
        }
    }

    /// Morphism `⊕ sources -> target` from components.
    pub fn from_source_blocks(
        sum: &Representation,
        target: &Representation,
        components: &[RepMorphism],
    ) -> RepMorphism {
        let f = sum.field();
        let maps = (0..sum.dims().len())
            .map(|v| {
                components
                    .iter()
                    .fold(Matrix::zeros(f, target.dim(v), 0), |acc, c| acc.hstack(c.map(v)))
            })
            .collect();
        RepMorphism::new_unchecked(sum.clone(), target.clone(), maps)
    }

    /// Morphism `source -> ⊕ targets` from components.
    pub fn from_target_blocks(
        source: &Representation,
        sum: &Representation,
        components: &[RepMorphism],
    ) -> RepMorphism {
        let f = source.field();
        let maps = (0..source.dims().len())
            .map(|v| {
                components
                    .iter()
                    .fold(Matrix::zeros(f, 0, source.dim(v)), |acc, c| acc.vstack(c.map(v)))
            })
            .collect();
        RepMorphism::new_unchecked(source.clone(), sum.clone(), maps)
    }
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepMorphism")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("maps", &self.maps.iter().map(Matrix::to_rows).collect::<Vec<_>>())
            .finish()
    }
}

/// Kernel, image and cokernel of a morphism with their structure maps.
#[derive(Debug, Clone)]
pub struct ImageFactorization {
    pub kernel: (Representation, RepMorphism),
    pub image: (Representation, RepMorphism),
    pub cokernel: (Representation, RepMorphism),
}

/// Sum of the given submodules of `m` (each given by per-vertex bases).
pub fn sum_of_spaces(m: &Representation, parts: &[Vec<Matrix>]) -> Vec<Matrix> {
    let f = m.field();
    (0..m.dims().len())
        .map(|v| {
            parts
                .iter()
                .fold(Matrix::zeros(f, m.dim(v), 0), |acc, p| acc.hstack(&p[v]))
                .column_space()
        })
        .collect()
}

/// Intersection of two subspaces given by column bases.
pub fn intersect_spaces(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    if a.cols() == 0 || b.cols() == 0 {
        return Matrix::zeros(f, a.rows(), 0);
    }
    // a x = b y  <=>  [a | -b] (x, y) = 0
    let neg_b = b.scale(f.neg(1));
    let ns = a.hstack(&neg_b).nullspace_matrix();
    let xs = ns.submatrix(0..a.cols(), 0..ns.cols());
    a.mul(&xs).column_space()
}
