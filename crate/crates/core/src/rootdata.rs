//! Root systems from Cartan matrices: validation, positive-root closure,
//! the root poset, admissible (upward-closed) subsets, and the normalized
//! invariant bilinear form.
//!
//! Conventions. The Cartan matrix is stored so that row `i` is the vector of
//! Dynkin labels of the simple root `α_i`; equivalently `A[i][j] =
//! ⟨α_i, α_j^∨⟩`. A weight written in the simple-root basis with coordinate
//! vector `c` has Dynkin labels `cᵀA`. Simple-root numbering of the built-in
//! algebras follows the dictionary ordering in which the adjoint highest
//! weights are G2 (10), F4 (1000), E6 (000001), E7 (1000000), E8 (00000010).
//!
//! The bilinear form is normalized per block so long roots have squared
//! length 2; the quadratic Casimir is rescaled by `1/(2h^∨)` per block, which
//! makes the adjoint eigenvalue exactly 1 on every simple factor. Direct
//! sums use no relative scaling between blocks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::reps::Weight;
use crate::{Error, Result};

/// A validated (possibly block-diagonal) Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSpec {
    name: String,
    matrix: Vec<Vec<i64>>,
    /// Half-open index ranges of the irreducible diagonal blocks.
    blocks: Vec<(usize, usize)>,
}

/// One positive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the simple-root basis (all nonnegative).
    pub coords: Vec<i64>,
    /// Sum of the coordinates.
    pub height: i64,
    /// Index of the simple summand the root belongs to.
    pub block: usize,
}

/// A root system with all derived data the rest of the crate needs.
#[derive(Debug, Clone)]
pub struct RootDatum {
    spec: CartanSpec,
    /// Sorted by (height descending, coords lexicographic ascending), so the
    /// highest root of a simple algebra is index 0.
    positive_roots: Vec<Root>,
    /// Dynkin labels of each positive root, parallel to `positive_roots`.
    root_labels: Vec<Vec<i64>>,
    /// Arrow (k, ℓ) present iff root_ℓ = root_k + α_i for some simple α_i.
    arrows: Vec<(usize, usize)>,
    /// Arrow targets per source root. Targets always have smaller index.
    successors: Vec<Vec<usize>>,
    /// Index of the highest root of each block.
    highest: Vec<usize>,
    /// Per-block dual Coxeter number.
    dual_coxeter: Vec<i64>,
    /// Half squared lengths d_i = (α_i, α_i)/2, long roots normalized to d = 1.
    half_lengths: Vec<BigRational>,
    /// Gram matrix of the fundamental weights, scaled by `scale`.
    gram_scaled: Vec<Vec<BigInt>>,
    /// d_i scaled by `scale`.
    half_lengths_scaled: Vec<BigInt>,
    /// Common denominator clearing both `gram` and `half_lengths`.
    scale: BigInt,
    /// (Aᵀ)⁻¹, the labels → simple-root-coordinates basis change.
    inv_transpose: Vec<Vec<BigRational>>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CartanSpec {
    /// Validate a square integer matrix as a Cartan matrix of finite type and
    /// auto-detect its irreducible blocks from the zero pattern.
    pub fn new(name: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let name = name.into();
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is {}, must be 2",
                    row[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if matrix[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry ({i},{j}) is positive"
                        )));
                    }
                    if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "entries ({i},{j}) and ({j},{i}) must vanish together"
                        )));
                    }
                }
            }
        }

        let blocks = detect_blocks(&matrix)?;
        for (b, &(lo, hi)) in blocks.iter().enumerate() {
            check_finite_type(&matrix, lo, hi).map_err(|_| Error::NotFiniteType {
                block: b,
                name: name.clone(),
            })?;
        }
        Ok(CartanSpec {
            name,
            matrix,
            blocks,
        })
    }

    /// Parse `{"name": ..., "matrix": [[int]]}`; blocks are auto-detected.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            name: String,
            matrix: Vec<Vec<i64>>,
        }
        let doc: Doc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidCartan(format!("bad JSON: {e}")))?;
        CartanSpec::new(doc.name, doc.matrix)
    }

    /// Re-number the nodes: node `i` of the new spec is node `perm[i]` of the
    /// old one. `perm` must be a permutation of `0..rank`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank();
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidCartan("not a permutation".into()));
            }
            seen[p] = true;
        }
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[perm[i]][perm[j]]).collect())
            .collect();
        CartanSpec::new(self.name.clone(), matrix)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn block_of(&self, node: usize) -> usize {
        self.blocks
            .iter()
            .position(|&(lo, hi)| lo <= node && node < hi)
            .expect("node within rank")
    }
}

/// Connected components of the off-diagonal adjacency, as contiguous ranges.
fn detect_blocks(matrix: &[Vec<i64>]) -> Result<Vec<(usize, usize)>> {
    let n = matrix.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0usize;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && matrix[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    // Components must be contiguous index ranges so blocks can be addressed
    // as ranges; ask the caller to re-number otherwise.
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let c = comp[i];
        let lo = i;
        while i < n && comp[i] == c {
            i += 1;
        }
        if comp[lo..i].iter().any(|&x| x != c) || comp.iter().skip(i).any(|&x| x == c) {
            return Err(Error::InvalidCartan(
                "diagonal blocks are interleaved; permute the nodes so each block is contiguous"
                    .into(),
            ));
        }
        blocks.push((lo, i));
    }
    Ok(blocks)
}

/// Symmetrize one block and check positive definiteness (Sylvester).
fn check_finite_type(matrix: &[Vec<i64>], lo: usize, hi: usize) -> Result<()> {
    let m = hi - lo;
    // Propagate half-lengths over edges: d_j = d_i · A_ji / A_ij.
    let mut d: Vec<Option<BigRational>> = vec![None; m];
    d[0] = Some(BigRational::one());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let di = d[i].clone().expect("set before queueing");
        for j in 0..m {
            let a_ij = matrix[lo + i][lo + j];
            let a_ji = matrix[lo + j][lo + i];
            if i == j || a_ij == 0 {
                continue;
            }
            let dj = &di * ratio(a_ji, a_ij);
            match &d[j] {
                None => {
                    d[j] = Some(dj);
                    queue.push(j);
                }
                Some(prev) => {
                    if *prev != dj {
                        // Not symmetrizable: cannot be of finite type.
                        return Err(Error::SingularSystem);
                    }
                }
            }
        }
    }
    let d: Vec<BigRational> = d
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::SingularSystem)?;
    // S_ij = A_ij · d_j is symmetric; positive definite iff finite type.
    let s: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| BigRational::from(BigInt::from(matrix[lo + i][lo + j])) * &d[j])
                .collect()
        })
        .collect();
    // Leading principal minors via fraction-free forward elimination.
    let mut work = s;
    for k in 0..m {
        if work[k][k] <= BigRational::zero() {
            return Err(Error::SingularSystem);
        }
        for i in (k + 1)..m {
            let f = &work[i][k] / &work[k][k];
            for j in k..m {
                let sub = &f * &work[k][j];
                work[i][j] = &work[i][j] - sub;
            }
        }
    }
    Ok(())
}

/// Exact inverse by Gauss-Jordan elimination.
fn invert(matrix: &[Vec<i64>]) -> Result<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let s = &f * &a[col][j];
                    a[r][j] = &a[r][j] - s;
                    let s = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - s;
                }
            }
        }
    }
    Ok(inv)
}

impl RootDatum {
    /// Enumerate the positive roots and derive the poset, the normalized
    /// form, and the per-block Casimir scale. Deterministic.
    pub fn build(spec: CartanSpec) -> Result<Self> {
        let n = spec.rank();
        let a = &spec.matrix;

        // Half-lengths per node, normalized per block so long roots get d = 1.
        let mut d: Vec<BigRational> = vec![BigRational::one(); n];
        for &(lo, hi) in &spec.blocks {
            let mut queue = vec![lo];
            let mut set = vec![false; n];
            set[lo] = true;
            while let Some(i) = queue.pop() {
                for j in lo..hi {
                    if i != j && a[i][j] != 0 && !set[j] {
                        d[j] = &d[i] * ratio(a[j][i], a[i][j]);
                        set[j] = true;
                        queue.push(j);
                    }
                }
            }
            let max = d[lo..hi]
                .iter()
                .max()
                .cloned()
                .expect("nonempty block");
            for item in d.iter_mut().take(hi).skip(lo) {
                *item = &*item / &max;
            }
        }

        // Positive roots by closure over root strings.
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut levels: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut simple_level = Vec::new();
        for i in 0..n {
            let mut c = vec![0i64; n];
            c[i] = 1;
            found.insert(c.clone());
            simple_level.push(c);
        }
        levels.push(simple_level);
        loop {
            let last = levels.last().expect("at least simple roots");
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for beta in last {
                for i in 0..n {
                    let label_i: i64 = (0..n).map(|j| beta[j] * a[j][i]).sum();
                    // String-down length through already-known roots.
                    let mut p = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if probe[i] < 0 || !found.contains(&probe) {
                            break;
                        }
                        p += 1;
                    }
                    if p - label_i > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !found.contains(&up) {
                            next.insert(up);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            for c in &next {
                found.insert(c.clone());
            }
            levels.push(next.into_iter().collect());
        }

        let block_of_coords = |c: &[i64]| -> usize {
            let node = c.iter().position(|&x| x != 0).expect("nonzero root");
            spec.block_of(node)
        };

        let mut positive_roots: Vec<Root> = found
            .iter()
            .map(|c| Root {
                coords: c.clone(),
                height: c.iter().sum(),
                block: block_of_coords(c),
            })
            .collect();
        positive_roots.sort_by(|x, y| {
            y.height
                .cmp(&x.height)
                .then_with(|| x.coords.cmp(&y.coords))
        });

        let index: BTreeMap<Vec<i64>, usize> = positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();

        let mut arrows = Vec::new();
        let mut successors = vec![Vec::new(); positive_roots.len()];
        for (k, r) in positive_roots.iter().enumerate() {
            for i in 0..n {
                let mut up = r.coords.clone();
                up[i] += 1;
                if let Some(&l) = index.get(&up) {
                    debug_assert!(l < k, "arrows must point to earlier (higher) roots");
                    arrows.push((k, l));
                    successors[k].push(l);
                }
            }
            successors[k].sort_unstable();
            successors[k].dedup();
        }
        arrows.sort_unstable();

        // Highest root per block: the unique root with no outgoing arrow.
        let mut highest = Vec::new();
        for b in 0..spec.blocks.len() {
            let mut tops = positive_roots
                .iter()
                .enumerate()
                .filter(|(k, r)| r.block == b && successors[*k].is_empty())
                .map(|(k, _)| k);
            let top = tops.next().ok_or_else(|| Error::Internal(
                "block without maximal root".into(),
            ))?;
            if tops.next().is_some() {
                return Err(Error::Internal("non-unique highest root in block".into()));
            }
            highest.push(top);
        }

        let root_labels: Vec<Vec<i64>> = positive_roots
            .iter()
            .map(|r| (0..n).map(|k| (0..n).map(|j| r.coords[j] * a[j][k]).sum()).collect())
            .collect();

        // Gram matrix of fundamental weights: G = diag(d) · (Aᵀ)⁻¹.
        let inv = invert(a)?;
        let inv_transpose: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| inv[j][i].clone()).collect()).collect();
        let gram: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| &d[i] * &inv_transpose[i][j]).collect())
            .collect();
        let mut scale = BigInt::one();
        for row in &gram {
            for x in row {
                scale = scale.lcm(x.denom());
            }
        }
        for x in &d {
            scale = scale.lcm(x.denom());
        }
        let to_scaled = |x: &BigRational| -> BigInt {
            let v = x * BigRational::from(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        };
        let gram_scaled: Vec<Vec<BigInt>> = gram
            .iter()
            .map(|row| row.iter().map(to_scaled).collect())
            .collect();
        let half_lengths_scaled: Vec<BigInt> = d.iter().map(to_scaled).collect();

        let mut datum = RootDatum {
            spec,
            positive_roots,
            root_labels,
            arrows,
            successors,
            highest,
            dual_coxeter: Vec::new(),
            half_lengths: d,
            gram_scaled,
            half_lengths_scaled,
            scale,
            inv_transpose,
        };

        // h^∨ per block from ⟨θ, θ + 2δ⟩ = 2 h^∨ in the long-root-2 form.
        let delta = datum.weyl_vector();
        for b in 0..datum.spec.blocks.len() {
            let theta = datum.root_labels[datum.highest[b]].clone();
            let mut s = datum.pairing_scaled(&theta, &theta);
            s += BigInt::from(2) * datum.pairing_scaled(&theta, delta.labels());
            let twice = BigRational::new(s, BigInt::from(2) * &datum.scale);
            if !twice.is_integer() {
                return Err(Error::Internal("dual Coxeter number not integral".into()));
            }
            let h: BigInt = twice.to_integer();
            let h: i64 = i64::try_from(&h)
                .map_err(|_| Error::Internal("dual Coxeter number overflow".into()))?;
            if h <= 0 {
                return Err(Error::Internal("nonpositive dual Coxeter number".into()));
            }
            datum.dual_coxeter.push(h);
        }
        Ok(datum)
    }

    /// Look up a registry name such as `"F4"`, `"A5"`, or `"A1+A1+A1"`.
    pub fn named(name: &str) -> Result<Self> {
        RootDatum::build(lookup(name)?)
    }

    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        self.spec.name()
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    /// Dimension of the algebra: rank + number of roots.
    pub fn dim(&self) -> i64 {
        self.rank() as i64 + 2 * self.positive_roots.len() as i64
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        self.spec.matrix()
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        self.spec.blocks()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Dynkin labels of positive root `k`.
    pub fn root_labels(&self, k: usize) -> &[i64] {
        &self.root_labels[k]
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn successors(&self, k: usize) -> &[usize] {
        &self.successors[k]
    }

    /// Index of the highest root of block `b`.
    pub fn highest_root(&self, b: usize) -> usize {
        self.highest[b]
    }

    /// Dynkin labels of the adjoint highest weight (θ of every block).
    pub fn adjoint_weight(&self) -> Weight {
        let mut labels = vec![0i64; self.rank()];
        for b in 0..self.blocks().len() {
            let theta = &self.root_labels[self.highest[b]];
            for (i, &x) in theta.iter().enumerate() {
                labels[i] += x;
            }
        }
        Weight::new(labels)
    }

    pub fn dual_coxeter(&self, b: usize) -> i64 {
        self.dual_coxeter[b]
    }

    /// Per-block Casimir normalization 1/(2 h^∨).
    pub fn casimir_scale(&self, b: usize) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(2 * self.dual_coxeter[b]))
    }

    /// The Weyl vector δ: all Dynkin labels 1.
    pub fn weyl_vector(&self) -> Weight {
        Weight::new(vec![1; self.rank()])
    }

    /// Half squared lengths (α_i, α_i)/2 in the long-root-2 normalization.
    pub fn half_lengths(&self) -> &[BigRational] {
        &self.half_lengths
    }

    /// The symmetric form (α_i, α_j) on simple roots, per spec normalization.
    pub fn simple_root_form(&self) -> Vec<Vec<BigRational>> {
        let n = self.rank();
        let a = self.spec.matrix();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(BigInt::from(a[i][j])) * &self.half_lengths[j])
                    .collect()
            })
            .collect()
    }

    /// Common denominator used by the scaled pairings.
    pub fn gram_scale(&self) -> &BigInt {
        &self.scale
    }

    /// `scale · ⟨x, y⟩` for weights in Dynkin labels.
    pub fn pairing_scaled(&self, x: &[i64], y: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    row += &self.gram_scaled[i][j] * BigInt::from(yj);
                }
            }
            acc += row * BigInt::from(xi);
        }
        acc
    }

    /// `scale · ⟨x, y⟩` restricted to block `b`.
    pub fn pairing_block_scaled(&self, b: usize, x: &[i64], y: &[i64]) -> BigInt {
        let (lo, hi) = self.spec.blocks()[b];
        let mut acc = BigInt::zero();
        for i in lo..hi {
            if x[i] == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for j in lo..hi {
                if y[j] != 0 {
                    row += &self.gram_scaled[i][j] * BigInt::from(y[j]);
                }
            }
            acc += row * BigInt::from(x[i]);
        }
        acc
    }

    /// Exact ⟨x, y⟩ as a rational.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> BigRational {
        BigRational::new(self.pairing_scaled(x, y), self.scale.clone())
    }

    /// `scale · ⟨w, α⟩` for a weight `w` (labels) against a root given by
    /// simple-root coordinates: Σ_j w_j c_j d_j.
    pub fn pair_weight_root_scaled(&self, w: &[i64], coords: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (j, &cj) in coords.iter().enumerate() {
            if cj != 0 && w[j] != 0 {
                acc += &self.half_lengths_scaled[j] * BigInt::from(cj * w[j]);
            }
        }
        acc
    }

    /// Dynkin labels of a vector in the simple-root basis: labels = cᵀA.
    pub fn dynkin_labels(&self, coords: &[i64]) -> Result<Weight> {
        let n = self.rank();
        if coords.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: coords.len(),
            });
        }
        let a = self.spec.matrix();
        Ok(Weight::new(
            (0..n)
                .map(|k| (0..n).map(|j| coords[j] * a[j][k]).sum())
                .collect(),
        ))
    }

    /// Inverse basis change: exact simple-root coordinates of a weight.
    pub fn simple_root_coords(&self, w: &Weight) -> Result<Vec<BigRational>> {
        let n = self.rank();
        if w.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: w.len(),
            });
        }
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.inv_transpose[i][j] * BigRational::from(BigInt::from(w.labels()[j])))
                    .sum()
            })
            .collect())
    }

    /// Coordinate sum of a set of positive roots, by index.
    pub fn sum_of_roots(&self, indices: &[usize]) -> Vec<i64> {
        let mut acc = vec![0i64; self.rank()];
        for &k in indices {
            for (i, &c) in self.positive_roots[k].coords.iter().enumerate() {
                acc[i] += c;
            }
        }
        acc
    }

    /// All upward-closed subsets (order filters) of the root poset with
    /// exactly `j` elements, each as a sorted list of root indices, in
    /// deterministic order. Empty iterator when `j` exceeds the root count;
    /// exactly the empty subset when `j = 0`.
    pub fn admissible_subsets(&self, j: usize) -> AdmissibleSubsets {
        let n = self.positive_roots.len();
        let mut out = Vec::new();
        if j <= n {
            let mut selected = vec![false; n];
            let mut chosen: Vec<usize> = Vec::with_capacity(j);
            self.filter_dfs(0, j, &mut selected, &mut chosen, &mut out);
        }
        AdmissibleSubsets {
            inner: out.into_iter(),
        }
    }

    fn filter_dfs(
        &self,
        idx: usize,
        j: usize,
        selected: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == j {
            out.push(chosen.clone());
            return;
        }
        let n = self.positive_roots.len();
        if idx == n || n - idx < j - chosen.len() {
            return;
        }
        // Include roots[idx] only if upward closure already holds above it.
        if self.successors[idx].iter().all(|&s| selected[s]) {
            selected[idx] = true;
            chosen.push(idx);
            self.filter_dfs(idx + 1, j, selected, chosen, out);
            chosen.pop();
            selected[idx] = false;
        }
        self.filter_dfs(idx + 1, j, selected, chosen, out);
    }
}

/// Deterministic iterator over admissible subsets; values are independent of
/// any shared state.
pub struct AdmissibleSubsets {
    inner: alloc::vec::IntoIter<Vec<usize>>,
}

impl Iterator for AdmissibleSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for AdmissibleSubsets {}

// --- registry -----------------------------------------------------------

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn series_matrix(family: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = |msg: &str| Err(Error::UnknownAlgebra(msg.to_string()));
    match family {
        'A' if n >= 1 => Ok(chain(n)),
        'B' if n >= 2 => {
            // α_n short: A[n-1][n] = -2 in 1-based indexing.
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            Ok(a)
        }
        'C' if n >= 2 => {
            // α_n long.
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            Ok(a)
        }
        'D' if n >= 3 => {
            // Fork: nodes n-1 and n both attached to node n-2.
            let mut a = chain(n - 1);
            for row in a.iter_mut() {
                row.push(0);
            }
            a.push(vec![0; n]);
            a[n - 1][n - 1] = 2;
            a[n - 1][n - 3] = -1;
            a[n - 3][n - 1] = -1;
            Ok(a)
        }
        'E' if (6..=8).contains(&n) => {
            // Chain 1..n-1 with node n attached to node 3.
            let mut a = chain(n - 1);
            for row in a.iter_mut() {
                row.push(0);
            }
            a.push(vec![0; n]);
            a[n - 1][n - 1] = 2;
            a[n - 1][2] = -1;
            a[2][n - 1] = -1;
            Ok(a)
        }
        'F' if n == 4 => Ok(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        'G' if n == 2 => Ok(vec![vec![2, -3], vec![-1, 2]]),
        _ => bad(&format!("{family}{n}")),
    }
}

/// Build the Cartan matrix for a registry name: a series symbol like `"F4"`
/// or `"B3"`, or a `+`-joined direct sum like `"A1+A1"`.
pub fn lookup(name: &str) -> Result<CartanSpec> {
    let trimmed = name.trim();
    if trimmed.is_empty() {
        return Err(Error::UnknownAlgebra(name.to_string()));
    }
    let mut parts = Vec::new();
    for part in trimmed.split('+') {
        let part = part.trim();
        let mut chars = part.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?
            .to_ascii_uppercase();
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownAlgebra(name.to_string()))?;
        parts.push(series_matrix(family, n)?);
    }
    let total: usize = parts.iter().map(|m| m.len()).sum();
    let mut matrix = vec![vec![0i64; total]; total];
    let mut off = 0;
    for block in &parts {
        for (i, row) in block.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                matrix[off + i][off + j] = x;
            }
        }
        off += block.len();
    }
    CartanSpec::new(trimmed.to_string(), matrix)
}

/// The algebras exercised by the built-in fixtures and property suites.
pub fn standard_names() -> &'static [&'static str] {
    &[
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8",
        "A1+A1", "A1+A1+A1", "A1+A1+A1+A1",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(name: &str) -> RootDatum {
        RootDatum::named(name).unwrap()
    }

    #[test]
    fn f4_has_24_positive_roots_with_known_top() {
        let d = datum("F4");
        assert_eq!(d.positive_roots().len(), 24);
        let top = &d.positive_roots()[0];
        assert_eq!(top.height, 11);
        assert_eq!(top.coords, vec![2, 3, 4, 2]);
        assert_eq!(d.dim(), 52);
    }

    #[test]
    fn f4_top_of_root_table() {
        // The eleven highest F4 roots with their heights.
        let expect: [(&[i64], i64); 11] = [
            (&[2, 3, 4, 2], 11),
            (&[1, 3, 4, 2], 10),
            (&[1, 2, 4, 2], 9),
            (&[1, 2, 3, 2], 8),
            (&[1, 2, 3, 1], 7),
            (&[1, 2, 2, 2], 7),
            (&[1, 2, 2, 1], 6),
            (&[1, 1, 2, 2], 6),
            (&[0, 1, 2, 2], 5),
            (&[1, 1, 2, 1], 5),
            (&[1, 2, 2, 0], 5),
        ];
        let d = datum("F4");
        for (coords, h) in expect {
            let r = d
                .positive_roots()
                .iter()
                .find(|r| r.coords == coords)
                .unwrap_or_else(|| panic!("missing root {coords:?}"));
            assert_eq!(r.height, h);
        }
    }

    #[test]
    fn root_counts_match_dimensions() {
        for (name, dim) in [
            ("A1", 3),
            ("A2", 8),
            ("G2", 14),
            ("D4", 28),
            ("F4", 52),
            ("E6", 78),
            ("E7", 133),
            ("E8", 248),
            ("B2", 10),
            ("B3", 21),
            ("C3", 21),
            ("A5", 35),
            ("A1+A1", 6),
            ("A1+A1+A1+A1", 12),
        ] {
            let d = datum(name);
            assert_eq!(d.dim(), dim, "{name}");
            let rank = d.rank() as i64;
            assert_eq!(
                d.positive_roots().len() as i64,
                (dim - rank) / 2,
                "{name} root count"
            );
        }
    }

    #[test]
    fn adjoint_weights_match_known_labels() {
        for (name, labels) in [
            ("G2", vec![1, 0]),
            ("F4", vec![1, 0, 0, 0]),
            ("E6", vec![0, 0, 0, 0, 0, 1]),
            ("E7", vec![1, 0, 0, 0, 0, 0, 0]),
            ("E8", vec![0, 0, 0, 0, 0, 0, 1, 0]),
            ("B3", vec![0, 1, 0]),
            ("C3", vec![2, 0, 0]),
            ("D4", vec![0, 1, 0, 0]),
        ] {
            let d = datum(name);
            let b = 0;
            let theta = d.root_labels(d.highest_root(b)).to_vec();
            assert_eq!(theta, labels, "{name}");
        }
    }

    #[test]
    fn simple_root_labels_are_cartan_rows() {
        let d = datum("F4");
        let a = d.cartan_matrix().to_vec();
        for i in 0..4 {
            let mut c = vec![0i64; 4];
            c[i] = 1;
            assert_eq!(d.dynkin_labels(&c).unwrap().labels(), &a[i][..]);
        }
    }

    #[test]
    fn dual_coxeter_numbers() {
        for (name, h) in [
            ("A1", 2),
            ("A2", 3),
            ("G2", 4),
            ("D4", 6),
            ("F4", 9),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
            ("B2", 3),
            ("B3", 5),
            ("C3", 4),
        ] {
            assert_eq!(datum(name).dual_coxeter(0), h, "{name}");
        }
        let d = datum("A1+A1");
        assert_eq!(d.dual_coxeter(0), 2);
        assert_eq!(d.dual_coxeter(1), 2);
    }

    #[test]
    fn exponents_from_height_histogram() {
        // #roots of height h equals #exponents ≥ h.
        for (name, exps) in [
            ("A2", vec![1, 2]),
            ("G2", vec![1, 5]),
            ("F4", vec![1, 5, 7, 11]),
            ("E8", vec![1, 7, 11, 13, 17, 19, 23, 29]),
        ] {
            let d = datum(name);
            let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
            for r in d.positive_roots() {
                *hist.entry(r.height).or_default() += 1;
            }
            let max_h = *hist.keys().max().unwrap();
            let mut derived = Vec::new();
            // conjugate partition of the histogram
            let counts: Vec<usize> = (1..=max_h).map(|h| *hist.get(&h).unwrap_or(&0)).collect();
            for rank_pos in 0..counts[0] {
                let e = counts.iter().filter(|&&c| c > rank_pos).count();
                derived.push(e as i64);
            }
            derived.sort_unstable();
            assert_eq!(derived, exps, "{name}");
        }
    }

    #[test]
    fn admissible_subsets_small_cases() {
        let f4 = datum("F4");
        let one: Vec<_> = f4.admissible_subsets(1).collect();
        assert_eq!(one, vec![vec![0]]);
        let two: Vec<_> = f4.admissible_subsets(2).collect();
        assert_eq!(two, vec![vec![0, 1]]);
        let zero: Vec<_> = f4.admissible_subsets(0).collect();
        assert_eq!(zero, vec![Vec::<usize>::new()]);
        let too_big: Vec<_> = datum("A1").admissible_subsets(5).collect();
        assert!(too_big.is_empty());
    }

    #[test]
    fn admissible_sums_for_f4() {
        let f4 = datum("F4");
        let two = f4.admissible_subsets(2).next().unwrap();
        let w = f4.dynkin_labels(&f4.sum_of_roots(&two)).unwrap();
        assert_eq!(w.labels(), &[0, 1, 0, 0]);

        let three = f4.admissible_subsets(3).next().unwrap();
        let w = f4.dynkin_labels(&f4.sum_of_roots(&three)).unwrap();
        assert_eq!(w.labels(), &[0, 0, 2, 0]);

        let five: Vec<_> = f4.admissible_subsets(5).collect();
        assert_eq!(five.len(), 2);
        let mut sums: Vec<Vec<i64>> = five
            .iter()
            .map(|s| f4.dynkin_labels(&f4.sum_of_roots(s)).unwrap().labels().to_vec())
            .collect();
        sums.sort();
        assert_eq!(sums, vec![vec![0, 0, 3, 0], vec![0, 1, 0, 3]]);
    }

    #[test]
    fn admissible_matches_bruteforce_on_small_algebras() {
        for name in ["A2", "B2", "G2"] {
            let d = datum(name);
            let n = d.positive_roots().len();
            assert!(n <= 6);
            for j in 0..=n {
                let fast: BTreeSet<Vec<usize>> = d.admissible_subsets(j).collect();
                // brute force over all C(n, j) subsets
                let mut slow = BTreeSet::new();
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != j {
                        continue;
                    }
                    let set: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
                    let closed = set.iter().all(|&k| {
                        d.successors(k).iter().all(|&s| set.contains(&s))
                    });
                    if closed {
                        slow.insert(set);
                    }
                }
                assert_eq!(fast, slow, "{name} j={j}");
            }
        }
    }

    #[test]
    fn every_filter_contains_a_smaller_filter() {
        for name in ["F4", "G2", "D4", "A1+A1+A1"] {
            let d = datum(name);
            for j in 1..=10usize.min(d.positive_roots().len()) {
                let smaller: BTreeSet<Vec<usize>> = d.admissible_subsets(j - 1).collect();
                for s in d.admissible_subsets(j) {
                    let shrinkable = s.iter().any(|&drop| {
                        let sub: Vec<usize> =
                            s.iter().copied().filter(|&k| k != drop).collect();
                        smaller.contains(&sub)
                    });
                    assert!(shrinkable, "{name} j={j} filter {s:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            CartanSpec::new("bad", vec![vec![2, -1], vec![-1, 2, 0]]),
            Err(Error::InvalidCartan(_))
        ));
        assert!(matches!(
            CartanSpec::new("bad", vec![vec![1, -1], vec![-1, 2]]),
            Err(Error::InvalidCartan(_))
        ));
        assert!(matches!(
            CartanSpec::new("bad", vec![vec![2, 0], vec![-1, 2]]),
            Err(Error::InvalidCartan(_))
        ));
        // affine A1 tilde: symmetrizable but determinant zero
        assert!(matches!(
            CartanSpec::new("affine", vec![vec![2, -2], vec![-2, 2]]),
            Err(Error::NotFiniteType { block: 0, .. })
        ));
        // rank-3 affine with a cycle
        assert!(matches!(
            CartanSpec::new(
                "affine",
                vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
            ),
            Err(Error::NotFiniteType { .. })
        ));
    }

    #[test]
    fn json_ingestion_detects_blocks() {
        let spec = CartanSpec::from_json(
            r#"{"name": "A1+A1", "matrix": [[2, 0], [0, 2]]}"#,
        )
        .unwrap();
        assert_eq!(spec.blocks(), &[(0, 1), (1, 2)]);
        let d = RootDatum::build(spec).unwrap();
        assert_eq!(d.positive_roots().len(), 2);
        assert_eq!(d.dual_coxeter(1), 2);
    }

    #[test]
    fn interleaved_blocks_are_rejected() {
        let m = vec![
            vec![2, 0, -1],
            vec![0, 2, 0],
            vec![-1, 0, 2],
        ];
        assert!(matches!(
            CartanSpec::new("interleaved", m),
            Err(Error::InvalidCartan(_))
        ));
    }

    #[test]
    fn permuted_spec_relabels_nodes() {
        let spec = lookup("B2").unwrap().permuted(&[1, 0]).unwrap();
        // B2 with nodes swapped is C2.
        assert_eq!(spec.matrix(), lookup("C2").unwrap().matrix());
    }

    #[test]
    fn simple_root_coords_round_trip() {
        let d = datum("F4");
        for k in [0usize, 5, 23] {
            let labels = Weight::new(d.root_labels(k).to_vec());
            let coords = d.simple_root_coords(&labels).unwrap();
            let expect: Vec<BigRational> = d.positive_roots()[k]
                .coords
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect();
            assert_eq!(coords, expect);
        }
    }
}
