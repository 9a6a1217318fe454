//! Spaces `⊕_f X(f^{-1}(1)) ⊗ .. ⊗ X(f^{-1}(k))` indexed by maps
//! `f: {0..n-1} -> {0..k-1}`, carrying the induced `Σ_n`-action and, when
//! the block representations depend only on the block size, the `Σ_k`-action
//! permuting blocks.
//!
//! A map `f` with fibre sizes `r_*` is the coset `c Σ(r_*)` whose shuffle
//! representative `c` sends block `i`, in order, onto the sorted fibre
//! `f^{-1}(i)`. For `g ∈ Σ_n`, `g c = c' h` with `h ∈ Σ(r_*)`, and `h`
//! acts on the tensor factors.

use std::collections::HashMap;

use crate::linalg::{flat_index, tensor_expand, unflatten, Matrix, SparseVec};
use crate::linrep::{ActionTable, SymRep};
use crate::symgrp::{block_assignments, coset_rep_of_assignment, Composition, Permutation};

enum BlockReps {
    /// Block `i` carries its own representation.
    PerBlock(Vec<ActionTable>),
    /// A block of size `s` carries the `s`-th representation.
    BySize(Vec<ActionTable>),
}

pub(crate) struct BlockTensorSpace {
    n: usize,
    k: usize,
    cells: Vec<Vec<usize>>,
    cell_dims: Vec<Vec<usize>>,
    cell_base: Vec<usize>,
    cell_index: HashMap<Vec<usize>, usize>,
    dim: usize,
    reps: BlockReps,
}

impl BlockTensorSpace {
    /// Induction from the Young subgroup of `r` of the given block
    /// representations, cells ordered by coset representative.
    pub(crate) fn for_composition(r: &Composition, blocks: &[SymRep]) -> Self {
        let mut cells = block_assignments(r);
        let k = r.len();
        cells.sort_by_cached_key(|f| coset_rep_of_assignment(f, k));
        let reps = BlockReps::PerBlock(blocks.iter().map(ActionTable::new).collect());
        Self::build(r.total(), k, cells, reps)
    }

    /// Every `f: [n] -> [k]` all of whose fibres carry a nonzero
    /// representation, ordered by fibre-size composition then coset
    /// representative. `by_size[s]` is the representation on a block of size `s`.
    pub(crate) fn all_maps(n: usize, k: usize, by_size: &[SymRep]) -> Self {
        let mut cells = Vec::new();
        let mut f = vec![0usize; n];
        let total = k.checked_pow(n as u32).unwrap_or(0);
        let allowed = |sizes: &[usize]| sizes.iter().all(|&s| s < by_size.len() && by_size[s].dim() > 0);
        if k == 0 {
            if n == 0 && allowed(&[]) {
                cells.push(Vec::new());
            }
        } else {
            for _ in 0..total {
                let mut sizes = vec![0; k];
                for &b in &f {
                    sizes[b] += 1;
                }
                if allowed(&sizes) {
                    cells.push(f.clone());
                }
                // increment base-k counter, last digit fastest
                for d in (0..n).rev() {
                    f[d] += 1;
                    if f[d] < k {
                        break;
                    }
                    f[d] = 0;
                }
            }
        }
        cells.sort_by_cached_key(|f| (fibre_sizes(f, k), coset_rep_of_assignment(f, k)));
        let reps = BlockReps::BySize(by_size.iter().map(ActionTable::new).collect());
        Self::build(n, k, cells, reps)
    }

    /// The cells of a single fibre-size composition, block representations
    /// chosen by size.
    pub(crate) fn one_composition(r: &Composition, by_size: &[SymRep]) -> Self {
        let k = r.len();
        let ok = r.parts().iter().all(|&s| s < by_size.len() && by_size[s].dim() > 0);
        let mut cells = if ok { block_assignments(r) } else { Vec::new() };
        cells.sort_by_cached_key(|f| coset_rep_of_assignment(f, k));
        let reps = BlockReps::BySize(by_size.iter().map(ActionTable::new).collect());
        Self::build(r.total(), k, cells, reps)
    }

    fn build(n: usize, k: usize, cells: Vec<Vec<usize>>, reps: BlockReps) -> Self {
        let mut cell_dims = Vec::with_capacity(cells.len());
        let mut cell_base = Vec::with_capacity(cells.len());
        let mut cell_index = HashMap::with_capacity(cells.len());
        let mut dim = 0;
        for (c, f) in cells.iter().enumerate() {
            let sizes = fibre_sizes(f, k);
            let dims: Vec<usize> = (0..k).map(|b| table_for(&reps, b, sizes[b]).rep().dim()).collect();
            cell_base.push(dim);
            dim += dims.iter().product::<usize>();
            cell_dims.push(dims);
            cell_index.insert(f.clone(), c);
        }
        BlockTensorSpace { n, k, cells, cell_dims, cell_base, cell_index, dim, reps }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub(crate) fn cell_base(&self, c: usize) -> usize {
        self.cell_base[c]
    }

    pub(crate) fn cell_dims(&self, c: usize) -> &[usize] {
        &self.cell_dims[c]
    }

    pub(crate) fn index_of(&self, f: &[usize], x: &[usize]) -> Option<usize> {
        let c = *self.cell_index.get(f)?;
        Some(self.cell_base[c] + flat_index(x, &self.cell_dims[c]))
    }

    /// `(cell, block basis tuple)` of a basis index.
    pub(crate) fn decode(&self, idx: usize) -> (usize, Vec<usize>) {
        let c = match self.cell_base.binary_search(&idx) {
            Ok(mut c) => {
                // skip empty cells sharing the same base
                while c + 1 < self.cell_base.len() && self.cell_base[c + 1] == idx {
                    c += 1;
                }
                c
            }
            Err(c) => c - 1,
        };
        (c, unflatten(idx - self.cell_base[c], &self.cell_dims[c]))
    }

    pub(crate) fn composition_of_cell(&self, c: usize) -> Composition {
        Composition::new(fibre_sizes(&self.cells[c], self.k))
    }

    pub(crate) fn coset_of_cell(&self, c: usize) -> Permutation {
        coset_rep_of_assignment(&self.cells[c], self.k)
    }

    /// `g · e_idx` for `g ∈ Σ_n`.
    pub(crate) fn act_outer(&self, g: &Permutation, idx: usize) -> SparseVec {
        let (c, x) = self.decode(idx);
        let f = &self.cells[c];
        let mut new_f = vec![0; self.n];
        for (p, &b) in f.iter().enumerate() {
            new_f[g.apply(p)] = b;
        }
        let mut columns = Vec::with_capacity(self.k);
        for b in 0..self.k {
            let fibre: Vec<usize> = (0..self.n).filter(|&p| f[p] == b).collect();
            let mut image: Vec<usize> = fibre.iter().map(|&p| g.apply(p)).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            for y in image.iter_mut() {
                *y = sorted.binary_search(y).unwrap();
            }
            let h = Permutation::from_vec_unchecked(image);
            columns.push(table_for(&self.reps, b, fibre.len()).column(&h, x[b]));
        }
        let nc = self.cell_index[&new_f];
        let refs: Vec<&SparseVec> = columns.iter().collect();
        let base = self.cell_base[nc];
        tensor_expand(&refs, &self.cell_dims[nc]).reindex(|i| i + base)
    }

    /// Block permutation `σ ∈ Σ_k`: block `i` becomes block `σ(i)`. Maps
    /// basis vectors to basis vectors.
    pub(crate) fn act_blocks(&self, sigma: &Permutation, idx: usize) -> usize {
        debug_assert!(matches!(self.reps, BlockReps::BySize(_)));
        let (c, x) = self.decode(idx);
        let new_f: Vec<usize> = self.cells[c].iter().map(|&b| sigma.apply(b)).collect();
        let mut new_x = vec![0; self.k];
        for b in 0..self.k {
            new_x[sigma.apply(b)] = x[b];
        }
        self.index_of(&new_f, &new_x).expect("block permutation stays in the space")
    }

    pub(crate) fn symmetric_rep(&self) -> SymRep {
        let gens = (0..self.n.saturating_sub(1))
            .map(|i| {
                let s = Permutation::adjacent(self.n, i);
                Matrix::from_columns(self.dim, (0..self.dim).map(|j| self.act_outer(&s, j)).collect())
            })
            .collect();
        SymRep::from_generators_unchecked(self.n, self.dim, gens)
    }
}

fn table_for(reps: &BlockReps, block: usize, size: usize) -> &ActionTable {
    match reps {
        BlockReps::PerBlock(t) => &t[block],
        BlockReps::BySize(t) => &t[size],
    }
}

pub(crate) fn fibre_sizes(f: &[usize], k: usize) -> Vec<usize> {
    let mut sizes = vec![0; k];
    for &b in f {
        sizes[b] += 1;
    }
    sizes
}
