//! Bound quiver algebras `kQ/I` and their text format.
//!
//! Paths are written in travel order: `a*b` means "first `a`, then `b`".
//! Representations are left modules; an arrow `a: i -> j` acts as a
//! `dim_j x dim_i` matrix on column vectors, so the path `a*b` acts as
//! `M_b * M_a`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// Admissibility is searched for up to this nilpotency degree by default.
pub const DEFAULT_DEGREE_CAP: usize = 12;

const MAX_PATHS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    /// 0-based source vertex.
    pub source: usize,
    /// 0-based target vertex.
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path in the quiver; `arrows` lists arrow indices in travel order.
/// Trivial paths (`e_i`) have no arrows and `source == target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source + 1)
        } else {
            self.arrows
                .iter()
                .map(|&a| quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    fn sort_key(&self, quiver: &Quiver) -> (usize, Vec<String>, usize) {
        let names = self
            .arrows
            .iter()
            .map(|&a| quiver.arrows[a].name.clone())
            .collect();
        (self.len(), names, self.source)
    }
}

/// A linear combination of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    /// Global basis indices of the basis paths from `s` to `t`.
    basis: Vec<usize>,
}

/// A finite dimensional algebra `kQ/I` with `I` admissible.
#[derive(Debug)]
pub struct Algebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    radical_power: Option<usize>,
    nilpotency: usize,
    basis: Vec<Path>,
    blocks: HashMap<(usize, usize), Block>,
    /// Normal form of every path of length < nilpotency, as coordinates over
    /// the block basis of its (source, target) pair.
    normal_forms: HashMap<Path, Vec<u32>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.radical_power == other.radical_power
    }
}

impl Eq for Algebra {}

/// Incremental construction of an algebra from code.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    field: Field,
    vertex_count: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<(i64, Vec<String>)>>,
    radical_power: Option<usize>,
    degree_cap: usize,
}

impl AlgebraBuilder {
    pub fn new(field: Field, vertex_count: usize) -> Self {
        AlgebraBuilder {
            field,
            vertex_count,
            arrows: Vec::new(),
            relations: Vec::new(),
            radical_power: None,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    /// Add an arrow with 1-based endpoints.
    pub fn arrow(mut self, name: &str, source: usize, target: usize) -> Self {
        self.arrows.push(Arrow {
            name: name.to_string(),
            source: source.wrapping_sub(1),
            target: target.wrapping_sub(1),
        });
        self
    }

    /// Add a relation given as `(coefficient, [arrow names in travel order])`.
    pub fn relation(mut self, terms: &[(i64, &[&str])]) -> Self {
        self.relations.push(
            terms
                .iter()
                .map(|(c, p)| (*c, p.iter().map(|s| s.to_string()).collect()))
                .collect(),
        );
        self
    }

    pub fn radical_power(mut self, n: usize) -> Self {
        self.radical_power = Some(n);
        self
    }

    pub fn degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn build(self) -> Result<Arc<Algebra>> {
        let n = self.vertex_count;
        if n == 0 {
            return Err(Error::Precondition("quiver needs at least one vertex".into()));
        }
        for a in &self.arrows {
            for v in [a.source, a.target] {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v.wrapping_add(1),
                        count: n,
                    });
                }
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Precondition(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        let quiver = Quiver {
            vertex_count: n,
            arrows: self.arrows,
        };
        let mut relations = Vec::new();
        for rel in self.relations {
            let mut terms: Vec<(u32, Path)> = Vec::new();
            for (coef, names) in rel {
                let path = path_from_names(&quiver, &names)?;
                if path.len() < 2 {
                    return Err(Error::Precondition(format!(
                        "relation term `{}` has length < 2; the ideal must lie in the square of the arrow ideal",
                        names.join("*")
                    )));
                }
                let c = self.field.reduce(coef);
                if let Some(t) = terms.iter_mut().find(|(_, p)| *p == path) {
                    t.0 = self.field.add(t.0, c);
                } else {
                    terms.push((c, path));
                }
            }
            terms.retain(|(c, _)| *c != 0);
            if let Some((_, first)) = terms.first() {
                let (s, t) = (first.source, first.target);
                if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
                    return Err(Error::Precondition(
                        "paths in a relation must share source and target".into(),
                    ));
                }
                relations.push(Relation { terms });
            }
        }
        Algebra::assemble(self.field, quiver, relations, self.radical_power, self.degree_cap)
            .map(Arc::new)
    }
}

fn path_from_names(quiver: &Quiver, names: &[String]) -> Result<Path> {
    let mut arrows = Vec::with_capacity(names.len());
    for name in names {
        let idx = quiver
            .arrow_index(name)
            .ok_or_else(|| Error::Precondition(format!("unknown arrow `{name}`")))?;
        arrows.push(idx);
    }
    let Some(&first) = arrows.first() else {
        return Err(Error::Precondition("empty path".into()));
    };
    for w in arrows.windows(2) {
        if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
            return Err(Error::Precondition(format!(
                "path `{}` is not composable",
                names.join("*")
            )));
        }
    }
    Ok(Path {
        source: quiver.arrows[first].source,
        target: quiver.arrows[*arrows.last().unwrap()].target,
        arrows,
    })
}

/// All paths of each length `0..=max_len`, grouped by length.
fn paths_by_length(quiver: &Quiver, max_len: usize) -> Result<Vec<Vec<Path>>> {
    let mut out: Vec<Vec<Path>> = vec![(0..quiver.vertex_count).map(Path::trivial).collect()];
    let mut total = quiver.vertex_count;
    for _ in 0..max_len {
        let prev = out.last().unwrap();
        let mut next = Vec::new();
        for p in prev {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        total += next.len();
        if total > MAX_PATHS {
            return Err(Error::CapExceeded {
                what: "path enumeration",
                needed: format!("> {total}"),
                cap: MAX_PATHS as u128,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Generators `u * r * v` of the two-sided ideal whose longest term has
/// length `<= max_len`, as sparse combinations of paths.
fn ideal_generators(
    relations: &[Relation],
    paths: &[Vec<Path>],
    max_len: usize,
) -> Vec<Vec<(u32, Path)>> {
    let mut gens = Vec::new();
    for rel in relations {
        let longest = rel.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        if longest > max_len {
            continue;
        }
        let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
        for lu in 0..=max_len - longest {
            for u in paths[lu].iter().filter(|u| u.target == s) {
                for lv in 0..=max_len - longest - lu {
                    for v in paths[lv].iter().filter(|v| v.source == t) {
                        let g = rel
                            .terms
                            .iter()
                            .map(|(c, p)| (*c, u.then(p).unwrap().then(v).unwrap()))
                            .collect();
                        gens.push(g);
                    }
                }
            }
        }
    }
    gens
}

impl Algebra {
    pub fn builder(field: Field, vertex_count: usize) -> AlgebraBuilder {
        AlgebraBuilder::new(field, vertex_count)
    }

    fn assemble(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        radical_power: Option<usize>,
        degree_cap: usize,
    ) -> Result<Algebra> {
        let nilpotency = find_nilpotency(field, &quiver, &relations, radical_power, degree_cap)?;
        let paths = paths_by_length(&quiver, nilpotency.saturating_sub(1))?;

        // Ideal generators truncated below the nilpotency degree.
        let gens: Vec<Vec<(u32, Path)>> = truncated_generators(&relations, &paths, nilpotency);

        let mut all_paths: Vec<Path> = paths.iter().flatten().cloned().collect();
        all_paths.sort_by_key(|p| p.sort_key(&quiver));

        let mut by_pair: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
        for p in &all_paths {
            by_pair.entry((p.source, p.target)).or_default().push(p.clone());
        }
        let mut gens_by_pair: HashMap<(usize, usize), Vec<Vec<(u32, Path)>>> = HashMap::new();
        for g in gens {
            let key = (g[0].1.source, g[0].1.target);
            gens_by_pair.entry(key).or_default().push(g);
        }

        // Per (s, t): reduce generators with columns in *descending* path
        // order so pivots land on the largest paths; the remaining
        // (smallest) paths form the basis.
        let mut basis_paths: Vec<Path> = Vec::new();
        let mut reductions: HashMap<Path, Vec<(u32, Path)>> = HashMap::new();
        let mut pairs: Vec<_> = by_pair.keys().copied().collect();
        pairs.sort();
        for key in pairs {
            let ps = &by_pair[&key];
            let desc: Vec<&Path> = ps.iter().rev().collect();
            let col_of: HashMap<&Path, usize> =
                desc.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let g = gens_by_pair.remove(&key).unwrap_or_default();
            let mut m = Matrix::zeros(field, g.len(), desc.len());
            for (r, terms) in g.iter().enumerate() {
                for (c, p) in terms {
                    let col = col_of[p];
                    m.set(r, col, field.add(m.get(r, col), *c));
                }
            }
            let rref = m.rref();
            let pivot_set: Vec<bool> = {
                let mut v = vec![false; desc.len()];
                for &c in &rref.pivots {
                    v[c] = true;
                }
                v
            };
            for (col, p) in desc.iter().enumerate() {
                if pivot_set[col] {
                    let row = rref.pivots.iter().position(|&c| c == col).unwrap();
                    let combo = (0..desc.len())
                        .filter(|&j| !pivot_set[j] && rref.matrix.get(row, j) != 0)
                        .map(|j| (field.neg(rref.matrix.get(row, j)), desc[j].clone()))
                        .collect();
                    reductions.insert((*p).clone(), combo);
                } else {
                    basis_paths.push((*p).clone());
                    reductions.insert((*p).clone(), vec![(1, (*p).clone())]);
                }
            }
        }
        basis_paths.sort_by_key(|p| p.sort_key(&quiver));

        let mut blocks: HashMap<(usize, usize), Block> = HashMap::new();
        for (gi, p) in basis_paths.iter().enumerate() {
            blocks
                .entry((p.source, p.target))
                .or_insert_with(|| Block { basis: Vec::new() })
                .basis
                .push(gi);
        }
        let mut normal_forms = HashMap::new();
        for (p, combo) in reductions {
            let block = blocks.get(&(p.source, p.target));
            let len = block.map_or(0, |b| b.basis.len());
            let mut v = vec![0u32; len];
            for (c, q) in combo {
                let gi = basis_paths.iter().position(|b| *b == q).unwrap();
                let local = block.unwrap().basis.iter().position(|&x| x == gi).unwrap();
                v[local] = field.add(v[local], c);
            }
            normal_forms.insert(p, v);
        }

        Ok(Algebra {
            field,
            quiver,
            relations,
            radical_power,
            nilpotency,
            basis: basis_paths,
            blocks,
            normal_forms,
            opposite: OnceLock::new(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn radical_power(&self) -> Option<usize> {
        self.radical_power
    }

    /// Smallest `N` with every path of length `N` in the ideal.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// Canonical path basis, ordered by length, then arrow names, then vertex.
    pub fn path_basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis paths from `s` to `t` (0-based), in canonical order.
    pub fn basis_between(&self, s: usize, t: usize) -> Vec<&Path> {
        self.blocks
            .get(&(s, t))
            .map(|b| b.basis.iter().map(|&i| &self.basis[i]).collect())
            .unwrap_or_default()
    }

    pub fn dim_between(&self, s: usize, t: usize) -> usize {
        self.blocks.get(&(s, t)).map_or(0, |b| b.basis.len())
    }

    /// Coordinates of `path` over `basis_between(path.source, path.target)`.
    pub fn normal_form(&self, path: &Path) -> Vec<u32> {
        if path.len() >= self.nilpotency {
            return vec![0; self.dim_between(path.source, path.target)];
        }
        self.normal_forms
            .get(path)
            .cloned()
            .unwrap_or_else(|| vec![0; self.dim_between(path.source, path.target)])
    }

    /// All ideal elements a representation must annihilate: the relations
    /// and every path of length equal to the nilpotency degree.
    pub fn annihilator_checks(&self) -> Vec<Relation> {
        let mut checks = self.relations.clone();
        if let Ok(paths) = paths_by_length(&self.quiver, self.nilpotency) {
            for p in &paths[self.nilpotency] {
                checks.push(Relation {
                    terms: vec![(1, p.clone())],
                });
            }
        }
        checks
    }

    /// The opposite algebra: arrows reversed, relation paths reversed.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let quiver = Quiver {
                    vertex_count: self.quiver.vertex_count,
                    arrows: self
                        .quiver
                        .arrows
                        .iter()
                        .map(|a| Arrow {
                            name: a.name.clone(),
                            source: a.target,
                            target: a.source,
                        })
                        .collect(),
                };
                let relations = self
                    .relations
                    .iter()
                    .map(|r| Relation {
                        terms: r
                            .terms
                            .iter()
                            .map(|(c, p)| (*c, reverse_path(p)))
                            .collect(),
                    })
                    .collect();
                Arc::new(
                    Algebra::assemble(
                        self.field,
                        quiver,
                        relations,
                        self.radical_power,
                        self.nilpotency.max(DEFAULT_DEGREE_CAP),
                    )
                    .expect("opposite of an admissible algebra is admissible"),
                )
            })
            .clone()
    }

    /// Same quiver and relations over a different prime field.
    pub fn with_field(&self, field: Field) -> Result<Arc<Algebra>> {
        let p = self.field.characteristic() as i64;
        let mut b = AlgebraBuilder::new(field, self.vertex_count());
        for a in self.arrows() {
            b = b.arrow(&a.name, a.source + 1, a.target + 1);
        }
        b.relations = self
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, path)| {
                        // Lift coefficients symmetrically so that -1 stays -1.
                        let c = *c as i64;
                        let lifted = if c > p / 2 { c - p } else { c };
                        let names = path
                            .arrows
                            .iter()
                            .map(|&i| self.quiver.arrows[i].name.clone())
                            .collect();
                        (lifted, names)
                    })
                    .collect()
            })
            .collect();
        b.radical_power = self.radical_power;
        b.build()
    }

    /// Render in the text format accepted by [`parse_algebra`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", self.field.characteristic()));
        out.push_str(&format!("vertices {}\n", self.vertex_count()));
        for a in self.arrows() {
            out.push_str(&format!("arrow {} {} {}\n", a.name, a.source + 1, a.target + 1));
        }
        for r in &self.relations {
            out.push_str("relation");
            for (c, p) in &r.terms {
                out.push_str(&format!(" +{} {}", c, p.display(&self.quiver)));
            }
            out.push('\n');
        }
        if let Some(n) = self.radical_power {
            out.push_str(&format!("radical_power {n}\n"));
        }
        out
    }
}

fn reverse_path(p: &Path) -> Path {
    Path {
        source: p.target,
        target: p.source,
        arrows: p.arrows.iter().rev().copied().collect(),
    }
}

fn truncated_generators(
    relations: &[Relation],
    paths: &[Vec<Path>],
    nilpotency: usize,
) -> Vec<Vec<(u32, Path)>> {
    let mut gens = Vec::new();
    let max = nilpotency.saturating_sub(1);
    for rel in relations {
        let shortest = rel.terms.iter().map(|(_, p)| p.len()).min().unwrap();
        if shortest > max {
            continue;
        }
        let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
        for lu in 0..=max - shortest {
            for u in paths[lu].iter().filter(|u| u.target == s) {
                for lv in 0..=max - shortest - lu {
                    for v in paths[lv].iter().filter(|v| v.source == t) {
                        let g: Vec<_> = rel
                            .terms
                            .iter()
                            .map(|(c, p)| (*c, u.then(p).unwrap().then(v).unwrap()))
                            .filter(|(_, p)| p.len() <= max)
                            .collect();
                        if !g.is_empty() {
                            gens.push(g);
                        }
                    }
                }
            }
        }
    }
    gens
}

/// Smallest `d <= cap` such that every path of length `d` is provably in the
/// ideal, using generators whose terms have length at most `d + longest`.
fn find_nilpotency(
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    radical_power: Option<usize>,
    cap: usize,
) -> Result<usize> {
    let mut rels = relations.to_vec();
    let cap = radical_power.map_or(cap, |n| n.max(1).min(cap.max(n)));
    let longest = rels
        .iter()
        .flat_map(|r| r.terms.iter().map(|(_, p)| p.len()))
        .max()
        .unwrap_or(0);
    let horizon = cap + longest;
    let paths = paths_by_length(quiver, horizon)?;
    if let Some(n) = radical_power {
        if n == 0 {
            return Err(Error::Precondition("radical_power must be positive".into()));
        }
        for p in &paths[n] {
            rels.push(Relation {
                terms: vec![(1, p.clone())],
            });
        }
    }
    for d in 1..=cap {
        if paths[d].is_empty() {
            return Ok(d);
        }
        let window = d + longest;
        let gens = ideal_generators(&rels, &paths, window);
        // Coordinates over all paths of length <= window.
        let mut index: HashMap<&Path, usize> = HashMap::new();
        for p in paths[..=window].iter().flatten() {
            let next = index.len();
            index.insert(p, next);
        }
        let mut m = Matrix::zeros(field, gens.len(), index.len());
        for (r, g) in gens.iter().enumerate() {
            for (c, p) in g {
                let col = index[p];
                m.set(r, col, field.add(m.get(r, col), *c));
            }
        }
        let base_rank = m.rank();
        let all_in = paths[d].iter().all(|p| {
            let mut row = Matrix::zeros(field, 1, index.len());
            row.set(0, index[p], 1);
            m.vstack(&row).rank() == base_rank
        });
        if all_in {
            return Ok(d);
        }
    }
    Err(Error::NotAdmissible { cap })
}

/// Parse the line-oriented algebra format:
///
/// ```text
/// field 2
/// vertices 3
/// arrow a 1 2
/// relation +1 a*b -1 c*d
/// radical_power 3
/// ```
///
/// `#` starts a comment. `field` defaults to 2.
pub fn parse_algebra(text: &str) -> Result<Arc<Algebra>> {
    parse_algebra_with_cap(text, DEFAULT_DEGREE_CAP)
}

pub fn parse_algebra_with_cap(text: &str, degree_cap: usize) -> Result<Arc<Algebra>> {
    let perr = |line: usize, column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };
    let mut field = Field::new(2)?;
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<(String, usize, usize, usize)> = Vec::new();
    let mut relations: Vec<Vec<(i64, Vec<String>)>> = Vec::new();
    let mut radical_power = None;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        // Tokens with their 1-based starting column.
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, ch) in line.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, &line[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &line[s..]));
        }
        let Some(&(kw_col, keyword)) = tokens.first() else {
            continue;
        };
        let num = |idx: usize, what: &str| -> Result<usize> {
            let (col, tok) = tokens
                .get(idx)
                .ok_or_else(|| perr(line_no, line.len() + 1, format!("missing {what}")))?;
            tok.parse::<usize>()
                .map_err(|_| perr(line_no, *col, format!("expected {what}, found `{tok}`")))
        };
        let expect_len = |n: usize| -> Result<()> {
            if tokens.len() != n {
                let col = tokens.get(n).map_or(line.len() + 1, |t| t.0);
                return Err(perr(
                    line_no,
                    col,
                    format!("`{keyword}` takes {} argument(s)", n - 1),
                ));
            }
            Ok(())
        };
        match keyword {
            "field" => {
                expect_len(2)?;
                let p = num(1, "characteristic")?;
                field = Field::new(p as u32).map_err(|_| {
                    perr(line_no, tokens[1].0, format!("characteristic {p} is not prime"))
                })?;
            }
            "vertices" => {
                expect_len(2)?;
                let n = num(1, "vertex count")?;
                if n == 0 {
                    return Err(perr(line_no, tokens[1].0, "vertex count must be positive".into()));
                }
                vertices = Some(n);
            }
            "arrow" => {
                expect_len(4)?;
                let name = tokens[1].1.to_string();
                if !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(perr(line_no, tokens[1].0, format!("invalid arrow name `{name}`")));
                }
                if arrows.iter().any(|a| a.0 == name) {
                    return Err(perr(line_no, tokens[1].0, format!("duplicate arrow `{name}`")));
                }
                let s = num(2, "source vertex")?;
                let t = num(3, "target vertex")?;
                let n = vertices.ok_or_else(|| {
                    perr(line_no, kw_col, "`vertices` must precede arrows".into())
                })?;
                for (idx, v) in [(2, s), (3, t)] {
                    if v == 0 || v > n {
                        return Err(perr(
                            line_no,
                            tokens[idx].0,
                            format!("vertex {v} out of range 1..={n}"),
                        ));
                    }
                }
                arrows.push((name, s, t, line_no));
            }
            "relation" => {
                if tokens.len() < 3 || tokens.len().is_multiple_of(2) {
                    return Err(perr(
                        line_no,
                        kw_col,
                        "relation expects pairs `<coef> <path>`".into(),
                    ));
                }
                let mut terms = Vec::new();
                for pair in tokens[1..].chunks(2) {
                    let (ccol, ctok) = pair[0];
                    let coef: i64 = ctok
                        .strip_prefix('+')
                        .unwrap_or(ctok)
                        .parse()
                        .map_err(|_| perr(line_no, ccol, format!("bad coefficient `{ctok}`")))?;
                    let (pcol, ptok) = pair[1];
                    let names: Vec<String> = ptok.split('*').map(str::to_string).collect();
                    for nm in &names {
                        if !arrows.iter().any(|a| &a.0 == nm) {
                            return Err(perr(line_no, pcol, format!("unknown arrow `{nm}`")));
                        }
                    }
                    terms.push((coef, names));
                }
                relations.push(terms);
            }
            "radical_power" => {
                expect_len(2)?;
                let n = num(1, "radical power")?;
                if n == 0 {
                    return Err(perr(line_no, tokens[1].0, "radical power must be positive".into()));
                }
                radical_power = Some(n);
            }
            other => {
                return Err(perr(line_no, kw_col, format!("unknown directive `{other}`")));
            }
        }
    }
    let n = vertices.ok_or_else(|| perr(1, 1, "missing `vertices` directive".into()))?;
    let mut b = AlgebraBuilder::new(field, n).degree_cap(degree_cap);
    for (name, s, t, _) in &arrows {
        b = b.arrow(name, *s, *t);
    }
    b.relations = relations;
    b.radical_power = radical_power;
    b.build()
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kQ/I over F_{}: {} vertices, {} arrows, dim {}",
            self.field.characteristic(),
            self.vertex_count(),
            self.arrows().len(),
            self.dimension()
        )
    }
}
