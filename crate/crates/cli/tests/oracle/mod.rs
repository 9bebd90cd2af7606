//! Brute-force reference computations over a small prime field, independent
//! of the library's linear algebra: representations are enumerated entry by
//! entry, isomorphism classes are GL-orbits, Hom is counted by testing every
//! tuple of linear maps and Ext¹ by counting block upper-triangular
//! extensions modulo coboundaries.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use taustrat::{Algebra, Matrix, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    fn at(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = 0;
                for k in 0..self.cols {
                    s += self.at(i, k) * other.at(k, j);
                }
                out.data[i * other.cols + j] = s % p;
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Every matrix of the given shape, in counting order.
fn all_matrices(rows: usize, cols: usize, p: u32) -> Vec<Mat> {
    let n = rows * cols;
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut data = vec![0; n];
            for d in data.iter_mut() {
                *d = (k % p as usize) as u32;
                k /= p as usize;
            }
            Mat { rows, cols, data }
        })
        .collect()
}

fn invertible_matrices(n: usize, p: u32) -> Vec<(Mat, Mat)> {
    let vectors = all_matrices(n, 1, p);
    let mut out = Vec::new();
    for g in all_matrices(n, n, p) {
        // Column j of the inverse is the unique v with g v = e_j.
        let mut inv = Mat::zero(n, n);
        let mut invertible = true;
        for j in 0..n {
            let mut e = Mat::zero(n, 1);
            e.data[j] = 1;
            let sols: Vec<&Mat> = vectors.iter().filter(|v| g.mul(v, p) == e).collect();
            if sols.len() != 1 {
                invertible = false;
                break;
            }
            for i in 0..n {
                inv.data[i * n + j] = sols[0].data[i];
            }
        }
        if invertible {
            out.push((g, inv));
        }
    }
    out
}

/// Quiver data read off the algebra: arrows and the relations to test,
/// each relation a list of `(coefficient, arrows in order of traversal)`.
pub struct Setting {
    pub p: u32,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Vec<(u32, Vec<usize>)>>,
}

impl Setting {
    pub fn from_algebra(a: &Algebra) -> Self {
        let p = a.field().characteristic();
        let arrows: Vec<(usize, usize)> = a.arrows().iter().map(|x| (x.source, x.target)).collect();
        let mut relations: Vec<Vec<(u32, Vec<usize>)>> = a
            .relations()
            .iter()
            .map(|r| r.terms.iter().map(|(c, path)| (*c, path.arrows.clone())).collect())
            .collect();
        if let Some(n) = a.radical_power() {
            let mut paths: Vec<Vec<usize>> = (0..arrows.len()).map(|i| vec![i]).collect();
            for _ in 1..n {
                let mut longer = Vec::new();
                for path in &paths {
                    let end = arrows[*path.last().unwrap()].1;
                    for b in (0..arrows.len()).filter(|&b| arrows[b].0 == end) {
                        let mut q = path.clone();
                        q.push(b);
                        longer.push(q);
                    }
                }
                paths = longer;
            }
            relations.extend(paths.into_iter().map(|path| vec![(1, path)]));
        }
        Setting { p, vertices: a.vertex_count(), arrows, relations }
    }

    fn path_matrix(&self, dims: &[usize], maps: &[Mat], path: &[usize]) -> Mat {
        let (s, _) = self.arrows[path[0]];
        let mut acc = Mat::identity(dims[s]);
        for &a in path {
            acc = maps[a].mul(&acc, self.p);
        }
        acc
    }

    fn satisfies(&self, dims: &[usize], maps: &[Mat]) -> bool {
        self.relations.iter().all(|rel| {
            let (s, t) = (self.arrows[rel[0].1[0]].0, self.arrows[*rel[0].1.last().unwrap()].1);
            let mut sum = Mat::zero(dims[t], dims[s]);
            for (c, path) in rel {
                let m = self.path_matrix(dims, maps, path);
                for (x, y) in sum.data.iter_mut().zip(&m.data) {
                    *x = (*x + c * y) % self.p;
                }
            }
            sum.is_zero()
        })
    }

    /// Every dimension vector with total at most `bound`.
    pub fn dim_vectors(&self, bound: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..self.vertices {
            out = out
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    let used: usize = v.iter().sum();
                    (0..=bound - used).map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// All representations with this dimension vector.
    pub fn representations(&self, dims: &[usize]) -> Vec<Vec<Mat>> {
        let mut out: Vec<Vec<Mat>> = vec![vec![]];
        for &(s, t) in &self.arrows {
            let choices = all_matrices(dims[t], dims[s], self.p);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |m| {
                        let mut v = prefix.clone();
                        v.push(m.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().filter(|maps| self.satisfies(dims, maps)).collect()
    }

    /// Orbit labels under `g · M_α = g_t M_α g_s^{-1}`; equal labels mean
    /// isomorphic.
    pub fn orbit_labels(&self, dims: &[usize], reps: &[Vec<Mat>]) -> Vec<usize> {
        let index: HashMap<&Vec<Mat>, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let groups: Vec<Vec<(Mat, Mat)>> = dims.iter().map(|&d| invertible_matrices(d, self.p)).collect();
        let mut label = vec![usize::MAX; reps.len()];
        let mut next = 0;
        for start in 0..reps.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut choice = vec![0usize; dims.len()];
            loop {
                let moved: Vec<Mat> = self
                    .arrows
                    .iter()
                    .zip(&reps[start])
                    .map(|(&(s, t), m)| {
                        let gt = &groups[t][choice[t]].0;
                        let gs_inv = &groups[s][choice[s]].1;
                        gt.mul(m, self.p).mul(gs_inv, self.p)
                    })
                    .collect();
                let j = index[&moved];
                label[j] = next;
                // Advance the mixed-radix counter over the group product.
                let mut v = 0;
                while v < dims.len() {
                    choice[v] += 1;
                    if choice[v] < groups[v].len() {
                        break;
                    }
                    choice[v] = 0;
                    v += 1;
                }
                if v == dims.len() {
                    break;
                }
            }
            next += 1;
        }
        label
    }

    /// `|Hom(M, N)|` by testing every tuple of linear maps.
    pub fn hom_count(&self, dm: &[usize], m: &[Mat], dn: &[usize], n: &[Mat]) -> u64 {
        let per_vertex: Vec<Vec<Mat>> = (0..self.vertices).map(|v| all_matrices(dn[v], dm[v], self.p)).collect();
        let mut count = 0;
        let mut choice = vec![0usize; self.vertices];
        loop {
            let ok = self.arrows.iter().enumerate().all(|(a, &(s, t))| {
                let lhs = per_vertex[t][choice[t]].mul(&m[a], self.p);
                let rhs = n[a].mul(&per_vertex[s][choice[s]], self.p);
                lhs == rhs
            });
            if ok {
                count += 1;
            }
            let mut v = 0;
            while v < self.vertices {
                choice[v] += 1;
                if choice[v] < per_vertex[v].len() {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
            if v == self.vertices {
                return count;
            }
        }
    }

    /// `dim Ext¹(M, N)`: extensions `E_α = [[N_α, X_α], [0, M_α]]` that satisfy
    /// the relations, modulo `X_α = N_α h_s - h_t M_α`.
    pub fn ext_dim(&self, dm: &[usize], m: &[Mat], dn: &[usize], n: &[Mat]) -> u32 {
        let p = self.p;
        let de: Vec<usize> = dm.iter().zip(dn).map(|(a, b)| a + b).collect();
        let block = |x: &[Mat]| -> Vec<Mat> {
            self.arrows
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let mut e = Mat::zero(de[t], de[s]);
                    for r in 0..dn[t] {
                        for c in 0..dn[s] {
                            e.data[r * de[s] + c] = n[a].at(r, c);
                        }
                        for c in 0..dm[s] {
                            e.data[r * de[s] + dn[s] + c] = x[a].at(r, c);
                        }
                    }
                    for r in 0..dm[t] {
                        for c in 0..dm[s] {
                            e.data[(dn[t] + r) * de[s] + dn[s] + c] = m[a].at(r, c);
                        }
                    }
                    e
                })
                .collect()
        };
        let xs: Vec<Vec<Mat>> = self.arrows.iter().map(|&(s, t)| all_matrices(dn[t], dm[s], p)).collect();
        let mut cocycles = 0u64;
        let mut choice = vec![0usize; self.arrows.len()];
        loop {
            let x: Vec<Mat> = choice.iter().enumerate().map(|(a, &k)| xs[a][k].clone()).collect();
            if self.satisfies(&de, &block(&x)) {
                cocycles += 1;
            }
            let mut a = 0;
            while a < choice.len() {
                choice[a] += 1;
                if choice[a] < xs[a].len() {
                    break;
                }
                choice[a] = 0;
                a += 1;
            }
            if a == choice.len() {
                break;
            }
        }
        let hs: Vec<Vec<Mat>> = (0..self.vertices).map(|v| all_matrices(dn[v], dm[v], p)).collect();
        let mut boundaries: HashSet<Vec<Mat>> = HashSet::new();
        let mut choice = vec![0usize; self.vertices];
        loop {
            let x: Vec<Mat> = self
                .arrows
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let l = n[a].mul(&hs[s][choice[s]], p);
                    let r = hs[t][choice[t]].mul(&m[a], p);
                    Mat {
                        rows: l.rows,
                        cols: l.cols,
                        data: l.data.iter().zip(&r.data).map(|(x, y)| (x + p - y) % p).collect(),
                    }
                })
                .collect();
            boundaries.insert(x);
            let mut v = 0;
            while v < self.vertices {
                choice[v] += 1;
                if choice[v] < hs[v].len() {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
            if v == self.vertices {
                break;
            }
        }
        let quotient = cocycles / boundaries.len() as u64;
        log_p(quotient, p)
    }

    pub fn to_library(&self, algebra: &Arc<Algebra>, dims: &[usize], maps: &[Mat]) -> Representation {
        let f = algebra.field();
        let mats = maps.iter().map(|m| Matrix::new(f, m.rows, m.cols, m.data.clone())).collect();
        Representation::new(algebra.clone(), dims.to_vec(), mats).expect("oracle representation is valid")
    }

    /// Whether a library morphism's maps commute with the arrows.
    pub fn commutes(&self, m: &[Mat], n: &[Mat], f: &[Mat]) -> bool {
        self.arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| f[t].mul(&m[a], self.p) == n[a].mul(&f[s], self.p))
    }
}

pub fn log_p(mut x: u64, p: u32) -> u32 {
    let mut k = 0;
    while x > 1 {
        assert_eq!(x % p as u64, 0, "count is not a power of p");
        x /= p as u64;
        k += 1;
    }
    k
}

pub fn from_library(m: &Matrix) -> Mat {
    Mat {
        rows: m.rows(),
        cols: m.cols(),
        data: (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| m.get(r, c))).collect(),
    }
}
