//! Symmetric collections and the circle product.

use std::fmt;

use rayon::prelude::*;

use crate::blocks::{fibre_sizes, BlockTensorSpace};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Matrix, SparseVec, SpanTracker, Q};
use crate::linrep::{ActionTable, SymRep};
use crate::symgrp::{composition_orbits, enumerate_group, Composition, Permutation};

/// Whether arities above `max_arity` are unknown or known to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Truncated,
    Finite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollectionKind {
    General,
    Reduced,
    Positive,
}

impl fmt::Display for CollectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CollectionKind::General => "general",
            CollectionKind::Reduced => "reduced",
            CollectionKind::Positive => "positive",
        })
    }
}

/// `A(0), .., A(N)`, with `A(n)` a representation of `Σ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    reps: Vec<SymRep>,
    support: Support,
}

impl Collection {
    pub fn new(reps: Vec<SymRep>, support: Support) -> Result<Self> {
        for (n, r) in reps.iter().enumerate() {
            if r.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: r.degree() });
            }
        }
        if reps.is_empty() {
            return Err(Error::Precondition("a collection needs at least arity 0".into()));
        }
        Ok(Collection { reps, support })
    }

    pub fn truncated(reps: Vec<SymRep>) -> Result<Self> {
        Self::new(reps, Support::Truncated)
    }

    pub fn zero(max_arity: usize) -> Self {
        Collection { reps: (0..=max_arity).map(SymRep::zero).collect(), support: Support::Finite }
    }

    /// Trivial representations in every arity up to `max_arity`.
    pub fn trivial(max_arity: usize) -> Self {
        Collection { reps: (0..=max_arity).map(SymRep::trivial).collect(), support: Support::Truncated }
    }

    pub fn max_arity(&self) -> usize {
        self.reps.len() - 1
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn is_finite(&self) -> bool {
        self.support == Support::Finite
    }

    pub fn with_support(mut self, support: Support) -> Self {
        self.support = support;
        self
    }

    pub fn kind(&self) -> CollectionKind {
        match self.reps[0].dim() {
            0 => CollectionKind::Positive,
            1 => CollectionKind::Reduced,
            _ => CollectionKind::General,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.reps[0].dim() == 0
    }

    pub fn rep(&self, n: usize) -> &SymRep {
        &self.reps[n]
    }

    pub fn reps(&self) -> &[SymRep] {
        &self.reps
    }

    /// `A(n)`, or the zero representation beyond a finite support.
    pub fn rep_or_zero(&self, n: usize) -> Result<SymRep> {
        if n < self.reps.len() {
            Ok(self.reps[n].clone())
        } else if self.is_finite() {
            Ok(SymRep::zero(n))
        } else {
            Err(Error::Precondition(format!("arity {n} is above the truncation {}", self.max_arity())))
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.reps.get(n).map_or(0, SymRep::dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(SymRep::dim).collect()
    }

    /// Zero above arity `d`, keeping the same maximal arity.
    pub fn truncate_above(&self, d: usize) -> Collection {
        let reps =
            self.reps.iter().enumerate().map(|(n, r)| if n > d { SymRep::zero(n) } else { r.clone() }).collect();
        let support = if d < self.max_arity() { Support::Finite } else { self.support };
        Collection { reps, support }
    }

    /// The same collection with arity 0 replaced by zero.
    pub fn positive_part(&self) -> Collection {
        let mut reps = self.reps.clone();
        reps[0] = SymRep::zero(0);
        Collection { reps, support: self.support }
    }

    /// Forget arities above `n`.
    pub fn restrict_max(&self, n: usize) -> Collection {
        let support = if self.reps[n + 1..].iter().all(|r| r.dim() == 0) { self.support } else { Support::Truncated };
        Collection { reps: self.reps[..=n].to_vec(), support }
    }

    pub fn is_isomorphic(&self, other: &Collection) -> bool {
        self.reps.len() == other.reps.len() && self.reps.iter().zip(&other.reps).all(|(a, b)| a.is_isomorphic(b))
    }
}

/// The unit `𝒮`: the trivial line in arity 1.
pub fn unit_collection(max_arity: usize) -> Collection {
    let reps = (0..=max_arity).map(|n| if n == 1 { SymRep::trivial(1) } else { SymRep::zero(n) }).collect();
    Collection { reps, support: Support::Finite }
}

/// Aritywise tensor product with the diagonal action.
pub fn hadamard_coll(a: &Collection, b: &Collection) -> Result<Collection> {
    let n = a.max_arity().min(b.max_arity());
    let reps = (0..=n).map(|i| a.rep(i).tensor(b.rep(i))).collect::<Result<Vec<_>>>()?;
    let support = if a.is_finite() || b.is_finite() { Support::Finite } else { Support::Truncated };
    let c = Collection { reps, support };
    Ok(if a.max_arity() != b.max_arity() { c.restrict_max(n) } else { c })
}

/// Names a basis vector of `(A ∘ X)(n)`: the class of
/// `a ⊗ (f, x_1 ⊗ .. ⊗ x_k)` where `f` is the block assignment of `coset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircBasisLabel {
    pub outer_arity: usize,
    pub orbit_rep: Composition,
    pub coset: Permutation,
    pub outer_index: usize,
    pub inner_indices: Vec<usize>,
}

impl fmt::Display for CircBasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.inner_indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(
            f,
            "k={} r={} coset={} a={} x=[{}]",
            self.outer_arity,
            self.orbit_rep,
            self.coset,
            self.outer_index + 1,
            inner.join(",")
        )
    }
}

/// Coinvariants of a subgroup `G ⊂ Σ_k` acting diagonally on
/// `A(k) ⊗ V` for a block tensor space `V`. The basis is `P e_i` for greedily
/// chosen candidates `i`, `P` the averaging projector.
pub(crate) struct BlockCoinvariants {
    outer: ActionTable,
    space: BlockTensorSpace,
    group: Vec<Permutation>,
    tracker: SpanTracker,
    chosen: Vec<usize>,
}

impl BlockCoinvariants {
    /// `cells` lists the cells whose basis vectors are candidates, in order.
    fn new(outer: &SymRep, space: BlockTensorSpace, group: Vec<Permutation>, cells: &[usize]) -> Self {
        let mut this =
            BlockCoinvariants { outer: ActionTable::new(outer), space, group, tracker: SpanTracker::new(), chosen: vec![] };
        let target = this.expected_dim();
        let dim_v = this.space.dim();
        'outer: for &c in cells {
            let base = this.space.cell_base(c);
            let len: usize = this.space.cell_dims(c).iter().product();
            for a in 0..outer.dim() {
                for x in 0..len {
                    if this.chosen.len() == target {
                        break 'outer;
                    }
                    let i = a * dim_v + base + x;
                    if this.tracker.insert(this.project_basis(i)).is_some() {
                        this.chosen.push(i);
                    }
                }
            }
        }
        assert_eq!(this.chosen.len(), target, "candidate cells do not span the coinvariants");
        this
    }

    /// `(1/|G|) Σ_σ tr ρ_A(σ) · #{basis vectors of V fixed by σ}`.
    fn expected_dim(&self) -> usize {
        let mut total = Q::from_integer(0.into());
        for sigma in &self.group {
            let tr = self.outer.get(sigma).trace();
            if tr == Q::from_integer(0.into()) {
                continue;
            }
            let mut fixed = 0usize;
            for (c, f) in self.space.cells().iter().enumerate() {
                if f.iter().any(|&b| sigma.apply(b) != b) {
                    continue;
                }
                let dims = self.space.cell_dims(c);
                let mut seen = vec![false; dims.len()];
                let mut count = 1usize;
                for start in 0..dims.len() {
                    if seen[start] {
                        continue;
                    }
                    let mut j = start;
                    while !seen[j] {
                        seen[j] = true;
                        j = sigma.apply(j);
                    }
                    count *= dims[start];
                }
                fixed += count;
            }
            total += tr * Q::from_integer(fixed.into());
        }
        let avg = total / Q::from_integer(self.group.len().into());
        assert!(avg.is_integer(), "non-integral coinvariant dimension");
        avg.to_integer().try_into().expect("dimension fits")
    }

    pub(crate) fn dim(&self) -> usize {
        self.chosen.len()
    }

    pub(crate) fn space(&self) -> &BlockTensorSpace {
        &self.space
    }

    /// `(outer index, cell, block tuple)` of the candidate behind basis vector `j`.
    pub(crate) fn representative(&self, j: usize) -> (usize, usize, Vec<usize>) {
        let i = self.chosen[j];
        let dim_v = self.space.dim();
        let (c, x) = self.space.decode(i % dim_v);
        (i / dim_v, c, x)
    }

    fn project_basis(&self, i: usize) -> SparseVec {
        let dim_v = self.space.dim();
        let (a, v) = (i / dim_v, i % dim_v);
        let mut acc = Accumulator::new();
        for sigma in &self.group {
            let sv = self.space.act_blocks(sigma, v);
            for (a2, c) in self.outer.column(sigma, a).iter() {
                acc.add(a2 * dim_v + sv, c);
            }
        }
        acc.finish().scaled(&Q::new(1.into(), self.group.len().into()))
    }

    fn project(&self, w: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in w.iter() {
            acc.add_vec(c, &self.project_basis(i));
        }
        acc.finish()
    }

    /// Coordinates of the class of `w ∈ A(k) ⊗ V` in the chosen basis.
    pub(crate) fn class_coords(&self, w: &SparseVec) -> SparseVec {
        self.tracker.coordinates(&self.project(w)).expect("projected vector lies in the coinvariants")
    }

    /// Class of `a ⊗ e_v` for an outer vector `a`.
    pub(crate) fn class_of(&self, a: &SparseVec, v: usize) -> SparseVec {
        let dim_v = self.space.dim();
        self.class_coords(&a.reindex(|i| i * dim_v + v))
    }

    fn sigma_n_generators(&self, n: usize) -> Vec<Matrix> {
        let dim_v = self.space.dim();
        (0..n.saturating_sub(1))
            .map(|s| {
                let g = Permutation::adjacent(n, s);
                let cols = (0..self.dim())
                    .map(|j| {
                        let i = self.chosen[j];
                        let moved = self.space.act_outer(&g, i % dim_v);
                        let base = (i / dim_v) * dim_v;
                        self.class_coords(&moved.reindex(|t| base + t))
                    })
                    .collect();
                Matrix::from_columns(self.dim(), cols)
            })
            .collect()
    }
}

/// One outer-arity summand of `(A ∘ X)(n)`.
pub(crate) struct CircPart {
    pub(crate) k: usize,
    pub(crate) offset: usize,
    pub(crate) coinv: BlockCoinvariants,
}

/// `A ∘ X` computed with full `Σ_k`-coinvariants, with labelled bases and
/// the data needed to push vectors into the quotient.
pub struct CircProduct {
    collection: Collection,
    labels: Vec<Vec<CircBasisLabel>>,
    parts: Vec<Vec<CircPart>>,
}

impl CircProduct {
    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn into_collection(self) -> Collection {
        self.collection
    }

    pub fn labels(&self, n: usize) -> &[CircBasisLabel] {
        &self.labels[n]
    }

    pub(crate) fn part(&self, n: usize, k: usize) -> Option<&CircPart> {
        self.parts.get(n)?.iter().find(|p| p.k == k)
    }

    /// `(k, outer index, block map f, block tuple x)` behind basis vector `j`
    /// of `(A ∘ X)(n)`.
    pub(crate) fn representative(&self, n: usize, j: usize) -> (usize, usize, Vec<usize>, Vec<usize>) {
        let part = self.parts[n].iter().rev().find(|p| p.offset <= j).expect("index in range");
        let (a, c, x) = part.coinv.representative(j - part.offset);
        (part.k, a, part.coinv.space().cells()[c].clone(), x)
    }

    /// Class in `(A ∘ X)(n)` of `a ⊗ (f, x)` with `a ∈ A(k)`, `k` the
    /// number of blocks; zero if that summand vanishes.
    pub(crate) fn class_of(&self, n: usize, k: usize, a: &SparseVec, f: &[usize], x: &[usize]) -> SparseVec {
        let Some(part) = self.part(n, k) else { return SparseVec::zero() };
        let Some(v) = part.coinv.space().index_of(f, x) else { return SparseVec::zero() };
        part.coinv.class_of(a, v).reindex(|i| i + part.offset)
    }
}

/// The outer arities contributing to `(A ∘ X)(n)`.
fn outer_range(a: &Collection, x: &Collection, n: usize) -> Result<std::ops::RangeInclusive<usize>> {
    if x.dim(0) > 0 {
        if !a.is_finite() {
            return Err(Error::InfiniteSum(format!(
                "X(0) has dimension {} and the outer collection is only known up to arity {}; \
                 the coproduct over k at arity {n} does not terminate",
                x.dim(0),
                a.max_arity()
            )));
        }
        Ok(0..=a.max_arity())
    } else {
        Ok(0..=n)
    }
}

fn check_arities(a: &Collection, x: &Collection, n_max: usize) -> Result<()> {
    if !x.is_finite() && x.max_arity() < n_max {
        return Err(Error::Precondition(format!(
            "inner collection is truncated at {} below the requested arity {n_max}",
            x.max_arity()
        )));
    }
    if !a.is_finite() && a.max_arity() < n_max {
        return Err(Error::Precondition(format!(
            "outer collection is truncated at {} below the requested arity {n_max}",
            a.max_arity()
        )));
    }
    Ok(())
}

fn inner_by_size(x: &Collection, n: usize) -> Result<Vec<SymRep>> {
    (0..=n).map(|s| x.rep_or_zero(s)).collect()
}

fn is_weakly_decreasing(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

/// Full `Σ_k`-coinvariants of `A(k) ⊗ V_{n,k}`.
pub(crate) fn circ_part(outer: &SymRep, by_size: &[SymRep], n: usize, k: usize) -> Result<Option<BlockCoinvariants>> {
    if outer.dim() == 0 {
        return Ok(None);
    }
    let space = BlockTensorSpace::all_maps(n, k, by_size);
    if space.dim() == 0 {
        return Ok(None);
    }
    let cells: Vec<usize> = (0..space.cells().len())
        .filter(|&c| is_weakly_decreasing(&fibre_sizes(&space.cells()[c], k)))
        .collect();
    let group = enumerate_group(k)?;
    let coinv = BlockCoinvariants::new(outer, space, group, &cells);
    Ok((coinv.dim() > 0).then_some(coinv))
}

fn assemble(n: usize, parts: &[CircPart]) -> SymRep {
    let dim: usize = parts.iter().map(|p| p.coinv.dim()).sum();
    let mut cols: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(dim); n.saturating_sub(1)];
    for p in parts {
        for (s, m) in p.coinv.sigma_n_generators(n).into_iter().enumerate() {
            cols[s].extend(m.columns().iter().map(|c| c.reindex(|i| i + p.offset)));
        }
    }
    let gens = cols.into_iter().map(|c| Matrix::from_columns(dim, c)).collect();
    SymRep::from_generators_unchecked(n, dim, gens)
}

fn label_of(coinv: &BlockCoinvariants, k: usize, j: usize) -> CircBasisLabel {
    let (a, c, x) = coinv.representative(j);
    CircBasisLabel {
        outer_arity: k,
        orbit_rep: coinv.space().composition_of_cell(c),
        coset: coinv.space().coset_of_cell(c),
        outer_index: a,
        inner_indices: x,
    }
}

/// `(A ∘ X)(n) = ⊕_k A(k) ⊗_{Σ_k} (⊕_f X(f^{-1}(1)) ⊗ .. ⊗ X(f^{-1}(k)))`
/// for `n ≤ max_arity`.
pub fn circ(a: &Collection, x: &Collection, max_arity: usize) -> Result<CircProduct> {
    check_arities(a, x, max_arity)?;
    let per_arity: Vec<Vec<CircPart>> = (0..=max_arity)
        .into_par_iter()
        .map(|n| {
            let by_size = inner_by_size(x, n)?;
            let mut parts = Vec::new();
            let mut offset = 0;
            for k in outer_range(a, x, n)? {
                if let Some(coinv) = circ_part(&a.rep_or_zero(k)?, &by_size, n, k)? {
                    let d = coinv.dim();
                    parts.push(CircPart { k, offset, coinv });
                    offset += d;
                }
            }
            Ok(parts)
        })
        .collect::<Result<_>>()?;
    let reps = per_arity.iter().enumerate().map(|(n, parts)| assemble(n, parts)).collect();
    let labels = per_arity
        .iter()
        .map(|parts| parts.iter().flat_map(|p| (0..p.coinv.dim()).map(move |j| label_of(&p.coinv, p.k, j))).collect())
        .collect();
    Ok(CircProduct { collection: Collection { reps, support: Support::Truncated }, labels, parts: per_arity })
}

/// The same product computed orbit by orbit: for each weakly decreasing
/// `r_*`, the `Aut(r_*)`-coinvariants of `A(k) ⊗ Ind X(r_*)`.
pub fn circ_orbitwise(a: &Collection, x: &Collection, max_arity: usize) -> Result<(Collection, Vec<Vec<CircBasisLabel>>)> {
    check_arities(a, x, max_arity)?;
    let per_arity: Vec<(SymRep, Vec<CircBasisLabel>)> = (0..=max_arity)
        .into_par_iter()
        .map(|n| {
            let by_size = inner_by_size(x, n)?;
            let mut parts = Vec::new();
            let mut labels = Vec::new();
            let mut offset = 0;
            for k in outer_range(a, x, n)? {
                let outer = a.rep_or_zero(k)?;
                if outer.dim() == 0 {
                    continue;
                }
                for orbit in composition_orbits(n, k, false) {
                    let space = BlockTensorSpace::one_composition(&orbit.representative, &by_size);
                    if space.dim() == 0 {
                        continue;
                    }
                    let cells: Vec<usize> = (0..space.cells().len()).collect();
                    let coinv = BlockCoinvariants::new(&outer, space, orbit.stabilizer_elements()?, &cells);
                    let d = coinv.dim();
                    if d == 0 {
                        continue;
                    }
                    labels.extend((0..d).map(|j| label_of(&coinv, k, j)));
                    parts.push(CircPart { k, offset, coinv });
                    offset += d;
                }
            }
            Ok((assemble(n, &parts), labels))
        })
        .collect::<Result<_>>()?;
    let (reps, labels) = per_arity.into_iter().unzip();
    Ok((Collection { reps, support: Support::Truncated }, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ass(n: usize) -> Collection {
        Collection::truncated((0..=n).map(|k| SymRep::regular(k).unwrap()).collect()).unwrap()
    }

    #[test]
    fn unit_collection_shape() {
        let u = unit_collection(4);
        assert_eq!(u.dims(), vec![0, 1, 0, 0, 0]);
        assert_eq!(u.kind(), CollectionKind::Positive);
    }

    #[test]
    fn ass_circ_ass() {
        let a = ass(4).positive_part();
        let p = circ(&a, &a, 4).unwrap();
        assert_eq!(p.collection().dims(), vec![0, 1, 4, 24, 192]);
        let (o, _) = circ_orbitwise(&a, &a, 4).unwrap();
        assert!(o.is_isomorphic(p.collection()));
    }

    #[test]
    fn com_circ_com() {
        let c = Collection::trivial(4).positive_part();
        let p = circ(&c, &c, 4).unwrap();
        assert_eq!(p.collection().dims(), vec![0, 1, 2, 5, 15]);
        for n in 0..=4 {
            p.collection().rep(n).validate().unwrap();
        }
        // the three pairings of {1,2,3,4}
        let pairings = p.labels(4).iter().filter(|l| l.orbit_rep.parts() == [2, 2]).count();
        assert_eq!(pairings, 3);
    }

    #[test]
    fn unit_laws() {
        let a = ass(3);
        let u = unit_collection(3);
        assert!(circ(&u, &a, 3).unwrap().collection().is_isomorphic(&a));
        assert!(circ(&a, &u, 3).unwrap().collection().is_isomorphic(&a));
    }

    #[test]
    fn nullary_inner_needs_finite_outer() {
        let c = Collection::trivial(3);
        assert!(matches!(circ(&c, &c, 3), Err(Error::InfiniteSum(_))));
        let finite = c.truncate_above(2);
        let p = circ(&finite, &c, 2).unwrap();
        // k = 0, 1, 2 each contribute one line at n = 0
        assert_eq!(p.collection().dim(0), 3);
    }

    #[test]
    fn hadamard_dims() {
        let a = ass(3);
        assert_eq!(hadamard_coll(&a, &a).unwrap().dim(3), 36);
        assert!(hadamard_coll(&Collection::trivial(3), &a).unwrap().is_isomorphic(&a));
    }
}
