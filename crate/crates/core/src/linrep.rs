//! Finite-dimensional rational representations of symmetric groups.
//!
//! A representation is stored as the matrices of the adjacent
//! transpositions `s_1, .., s_{n-1}`; all actions are left actions. A right
//! action `v·g` is the left action of `g^{-1}`; since every generator is an
//! involution the generator matrices are the same in both conventions and
//! only [`SymRep::right_action_matrix`] differs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec, SpanTracker, Q};
use crate::symgrp::{enumerate_group, partitions, Composition, Permutation};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymRep {
    degree: usize,
    dim: usize,
    gens: Vec<Matrix>,
}

impl std::fmt::Debug for SymRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SymRep(Σ_{}, dim {})", self.degree, self.dim)
    }
}

impl SymRep {
    /// Validates shapes and the Coxeter relations exactly.
    pub fn new(degree: usize, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        let rep = SymRep { degree, dim, gens };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn from_generators_unchecked(degree: usize, dim: usize, gens: Vec<Matrix>) -> Self {
        let rep = SymRep { degree, dim, gens };
        debug_assert!(rep.validate().is_ok(), "{:?}", rep.validate());
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.degree.saturating_sub(1);
        if self.gens.len() != expected {
            return Err(Error::InvalidRepresentation(format!(
                "Σ_{} needs {} generator matrices, found {}",
                self.degree,
                expected,
                self.gens.len()
            )));
        }
        for (i, g) in self.gens.iter().enumerate() {
            if g.nrows() != self.dim || g.ncols() != self.dim {
                return Err(Error::InvalidRepresentation(format!(
                    "s_{} is {}x{}, expected {}x{}",
                    i + 1,
                    g.nrows(),
                    g.ncols(),
                    self.dim,
                    self.dim
                )));
            }
        }
        if let Some(rel) = self.first_failed_relation() {
            return Err(Error::InvalidRepresentation(rel));
        }
        Ok(())
    }

    /// Name of the first Coxeter relation that fails, if any.
    pub fn first_failed_relation(&self) -> Option<String> {
        let m = self.gens.len();
        for i in 0..m {
            if !self.gens[i].mul_unchecked(&self.gens[i]).is_identity() {
                return Some(format!("s_{0}s_{0} != 1", i + 1));
            }
        }
        for i in 0..m.saturating_sub(1) {
            let (a, b) = (&self.gens[i], &self.gens[i + 1]);
            let lhs = a.mul_unchecked(b).mul_unchecked(a);
            let rhs = b.mul_unchecked(a).mul_unchecked(b);
            if lhs != rhs {
                return Some(format!("s_{0}s_{1}s_{0} != s_{1}s_{0}s_{1}", i + 1, i + 2));
            }
        }
        for i in 0..m {
            for j in i + 2..m {
                let (a, b) = (&self.gens[i], &self.gens[j]);
                if a.mul_unchecked(b) != b.mul_unchecked(a) {
                    return Some(format!("s_{0}s_{1} != s_{1}s_{0}", i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &Matrix {
        &self.gens[i]
    }

    pub fn zero(degree: usize) -> Self {
        SymRep { degree, dim: 0, gens: vec![Matrix::zeros(0, 0); degree.saturating_sub(1)] }
    }

    pub fn trivial(degree: usize) -> Self {
        SymRep { degree, dim: 1, gens: vec![Matrix::identity(1); degree.saturating_sub(1)] }
    }

    pub fn sign(degree: usize) -> Self {
        let m = Matrix::identity(1).scaled(&-Q::one());
        SymRep { degree, dim: 1, gens: vec![m; degree.saturating_sub(1)] }
    }

    /// Permutation representation of an action of `Σ_degree` on a finite
    /// set, given by the images of the generators.
    pub fn permutation_rep(degree: usize, set_size: usize, generator_images: &[Vec<usize>]) -> Result<Self> {
        if generator_images.iter().any(|img| img.len() != set_size) {
            return Err(Error::InvalidRepresentation("generator image has wrong length".into()));
        }
        for img in generator_images {
            Permutation::new(img.clone())
                .map_err(|_| Error::InvalidRepresentation("generator does not permute the set".into()))?;
        }
        let gens = generator_images.iter().map(|img| Matrix::permutation(img)).collect();
        SymRep::new(degree, set_size, gens)
    }

    /// Regular representation `Q[Σ_n]`; basis vector `e_w` for `w` in
    /// lexicographic order, `g·e_w = e_{g∘w}`.
    pub fn regular(degree: usize) -> Result<Self> {
        let elems = enumerate_group(degree)?;
        let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let gens = (0..degree.saturating_sub(1))
            .map(|i| {
                let s = Permutation::adjacent(degree, i);
                let images: Vec<usize> = elems.iter().map(|w| index[&s.then_unchecked(w)]).collect();
                Matrix::permutation(&images)
            })
            .collect();
        Ok(SymRep { degree, dim: elems.len(), gens })
    }

    pub fn direct_sum(&self, other: &SymRep) -> Result<SymRep> {
        self.check_degree(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(SymRep { degree: self.degree, dim: self.dim + other.dim, gens })
    }

    /// Tensor product with the diagonal action.
    pub fn tensor(&self, other: &SymRep) -> Result<SymRep> {
        self.check_degree(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect();
        Ok(SymRep { degree: self.degree, dim: self.dim * other.dim, gens })
    }

    /// `T ρ T^{-1}` for an invertible `T`.
    pub fn conjugate(&self, t: &Matrix) -> Result<SymRep> {
        let inv = t.inverse().ok_or_else(|| Error::DimensionMismatch("conjugating matrix is singular".into()))?;
        if t.nrows() != self.dim {
            return Err(Error::DimensionMismatch("conjugating matrix has wrong size".into()));
        }
        let gens = self.gens.iter().map(|g| t.mul_unchecked(g).mul_unchecked(&inv)).collect();
        Ok(SymRep { degree: self.degree, dim: self.dim, gens })
    }

    fn check_degree(&self, other: &SymRep) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Product of generator matrices along the reduced word of `g`.
    pub fn action_matrix(&self, g: &Permutation) -> Result<Matrix> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: g.degree() });
        }
        Ok(self.matrix_of_word(&g.reduced_word()))
    }

    pub fn matrix_of_word(&self, word: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.dim);
        for &i in word.iter().rev() {
            m = self.gens[i].mul_unchecked(&m);
        }
        m
    }

    /// Matrix of the right action `v·g`, i.e. the left action of `g^{-1}`.
    pub fn right_action_matrix(&self, g: &Permutation) -> Result<Matrix> {
        self.action_matrix(&g.inverse())
    }

    pub fn character(&self, g: &Permutation) -> Result<Q> {
        Ok(self.action_matrix(g)?.trace())
    }

    /// Character values on cycle types, in lexicographic partition order.
    pub fn characters_on_classes(&self) -> Vec<(Vec<usize>, Q)> {
        partitions(self.degree)
            .into_iter()
            .map(|lambda| {
                let g = Permutation::of_cycle_type(&lambda);
                let chi = self.matrix_of_word(&g.reduced_word()).trace();
                (lambda, chi)
            })
            .collect()
    }

    /// Character equality on every cycle type; complete in characteristic 0.
    pub fn is_isomorphic(&self, other: &SymRep) -> bool {
        self.degree == other.degree
            && self.dim == other.dim
            && self.characters_on_classes() == other.characters_on_classes()
    }

    /// Averaging projector over the given subgroup and a basis of its image
    /// (columns of the second matrix).
    pub fn coinvariants(&self, subgroup: &[Permutation]) -> Result<(Matrix, Matrix)> {
        if subgroup.is_empty() {
            return Err(Error::NotASubgroup);
        }
        let mut sum = Matrix::zeros(self.dim, self.dim);
        for g in subgroup {
            sum = sum.add(&self.action_matrix(g)?)?;
        }
        let projector = sum.scaled(&Q::from_integer((subgroup.len() as i64).into()).recip());
        if projector.mul_unchecked(&projector) != projector {
            return Err(Error::NotASubgroup);
        }
        let mut tracker = SpanTracker::new();
        let mut basis = Vec::new();
        for c in projector.columns() {
            if tracker.insert(c.clone()).is_some() {
                basis.push(c.clone());
            }
        }
        Ok((projector, Matrix::from_columns(self.dim, basis)))
    }

    /// Restriction to `Σ_m` acting on the first `m` points.
    pub fn restrict_to_initial(&self, m: usize) -> SymRep {
        assert!(m <= self.degree);
        SymRep { degree: m, dim: self.dim, gens: self.gens[..m.saturating_sub(1)].to_vec() }
    }
}

/// Lazily filled table of action matrices of one representation.
pub struct ActionTable {
    rep: SymRep,
    cache: Mutex<HashMap<Permutation, Arc<Matrix>>>,
}

impl ActionTable {
    pub fn new(rep: &SymRep) -> Self {
        ActionTable { rep: rep.clone(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn rep(&self) -> &SymRep {
        &self.rep
    }

    pub fn get(&self, g: &Permutation) -> Arc<Matrix> {
        if let Some(m) = self.cache.lock().unwrap().get(g) {
            return m.clone();
        }
        let m = if g.is_identity() {
            Arc::new(Matrix::identity(self.rep.dim))
        } else {
            // g = g' s_a with one fewer inversion
            let a = g.reduced_word().pop().unwrap();
            let s = Permutation::adjacent(g.degree(), a);
            let prefix = g.then_unchecked(&s);
            let head = self.get(&prefix);
            Arc::new(head.mul_unchecked(&self.rep.gens[a]))
        };
        self.cache.lock().unwrap().insert(g.clone(), m.clone());
        m
    }

    /// `ρ(g) e_i`.
    pub fn column(&self, g: &Permutation, i: usize) -> SparseVec {
        if g.is_identity() {
            return SparseVec::unit(i);
        }
        self.get(g).column(i).clone()
    }
}

/// An equivariant linear map between two representations of one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    pub source: SymRep,
    pub target: SymRep,
    pub matrix: Matrix,
}

impl EquivariantMap {
    pub fn new(source: SymRep, target: SymRep, matrix: Matrix) -> Result<Self> {
        if source.degree != target.degree {
            return Err(Error::DegreeMismatch { expected: source.degree, found: target.degree });
        }
        if matrix.nrows() != target.dim || matrix.ncols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.dim,
                source.dim
            )));
        }
        for (i, (gs, gt)) in source.gens.iter().zip(&target.gens).enumerate() {
            if matrix.mul_unchecked(gs) != gt.mul_unchecked(&matrix) {
                return Err(Error::NotEquivariant(format!("f s_{0} != s_{0} f", i + 1)));
            }
        }
        Ok(EquivariantMap { source, target, matrix })
    }
}

/// `Ind_{Σ(r_*)}^{Σ_n}(B_1 ⊠ .. ⊠ B_k)`, basis indexed by (coset
/// representative in lexicographic order, block basis tuple).
pub fn induce_rep(r: &Composition, blocks: &[SymRep]) -> Result<SymRep> {
    if blocks.len() != r.len() {
        return Err(Error::DimensionMismatch(format!("{} blocks for composition {}", blocks.len(), r)));
    }
    for (b, &part) in blocks.iter().zip(r.parts()) {
        if b.degree != part {
            return Err(Error::DegreeMismatch { expected: part, found: b.degree });
        }
    }
    let space = crate::blocks::BlockTensorSpace::for_composition(r, blocks);
    Ok(space.symmetric_rep())
}
