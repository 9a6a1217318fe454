//! Set species: finite sets of structures permuted by relabelling.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::collections::{Collection, Support};
use crate::error::{Error, Result};
use crate::linrep::SymRep;
use crate::symgrp::{enumerate_group, Permutation};

/// Structures at one arity, with the images of each Coxeter generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpeciesArity {
    pub size: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSpeciesCollection {
    arities: Vec<SpeciesArity>,
}

impl SetSpeciesCollection {
    pub fn new(arities: Vec<SpeciesArity>) -> Result<Self> {
        for (n, a) in arities.iter().enumerate() {
            if a.generators.len() != n.saturating_sub(1) {
                return Err(Error::DegreeMismatch { expected: n.saturating_sub(1), found: a.generators.len() });
            }
            // validates permutations and the Coxeter relations
            SymRep::permutation_rep(n, a.size, &a.generators)?;
        }
        Ok(SetSpeciesCollection { arities })
    }

    fn from_fn(max: usize, size: impl Fn(usize) -> usize, act: impl Fn(usize, usize, usize) -> usize) -> Self {
        let arities = (0..=max)
            .map(|n| {
                let m = size(n);
                let generators = (0..n.saturating_sub(1)).map(|i| (0..m).map(|s| act(n, i, s)).collect()).collect();
                SpeciesArity { size: m, generators }
            })
            .collect();
        SetSpeciesCollection { arities }
    }

    /// One structure on every finite set.
    pub fn e(max: usize) -> Self {
        Self::from_fn(max, |_| 1, |_, _, _| 0)
    }

    pub fn e_plus(max: usize) -> Self {
        Self::from_fn(max, |n| usize::from(n > 0), |_, _, _| 0)
    }

    /// Linear orders, indexed by the rank of the order as a permutation.
    pub fn l(max: usize) -> Self {
        Self::linear(max, true)
    }

    pub fn l_plus(max: usize) -> Self {
        Self::linear(max, false)
    }

    fn linear(max: usize, with_empty: bool) -> Self {
        let arities = (0..=max)
            .map(|n| {
                if n == 0 {
                    return SpeciesArity { size: usize::from(with_empty), generators: Vec::new() };
                }
                let elems = enumerate_group(n).expect("small degree");
                let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
                let generators = (0..n - 1)
                    .map(|i| {
                        let s = Permutation::adjacent(n, i);
                        elems.iter().map(|w| index[&s.then_unchecked(w)]).collect()
                    })
                    .collect();
                SpeciesArity { size: elems.len(), generators }
            })
            .collect();
        SetSpeciesCollection { arities }
    }

    /// The singleton species, concentrated in arity 1.
    pub fn singleton(max: usize) -> Self {
        Self::from_fn(max, |n| usize::from(n == 1), |_, _, _| 0)
    }

    pub fn max_arity(&self) -> usize {
        self.arities.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.arities.get(n).map_or(0, |a| a.size)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.arities.iter().map(|a| a.size).collect()
    }

    pub fn arity(&self, n: usize) -> &SpeciesArity {
        &self.arities[n]
    }

    /// Image of structure `s` under a permutation of `n` labels.
    pub fn act(&self, g: &Permutation, s: usize) -> usize {
        let gens = &self.arities[g.degree()].generators;
        g.reduced_word().iter().rev().fold(s, |s, &i| gens[i][s])
    }
}

/// Structures of `A∘X` at arity `n`: blocks sorted by minimum, an
/// `A`-structure on the block set and an `X`-structure on each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Composite {
    blocks: Vec<Vec<usize>>,
    outer: usize,
    inner: Vec<usize>,
}

pub fn species_circ(a: &SetSpeciesCollection, x: &SetSpeciesCollection, max: usize) -> Result<SetSpeciesCollection> {
    if x.size(0) > 0 {
        return Err(Error::Precondition("inner species must be positive".into()));
    }
    if a.max_arity() < max || x.max_arity() < max {
        return Err(Error::Precondition(format!("species are given only up to arity {max}")));
    }
    let arities = (0..=max)
        .into_par_iter()
        .map(|n| {
            let structs = composites(a, x, n);
            let index: HashMap<&Composite, usize> = structs.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let generators = (0..n.saturating_sub(1))
                .map(|i| {
                    let g = Permutation::adjacent(n, i);
                    structs.iter().map(|c| index[&relabel(a, x, &g, c)]).collect()
                })
                .collect();
            SpeciesArity { size: structs.len(), generators }
        })
        .collect();
    Ok(SetSpeciesCollection { arities })
}

fn composites(a: &SetSpeciesCollection, x: &SetSpeciesCollection, n: usize) -> Vec<Composite> {
    let mut out = Vec::new();
    if n == 0 {
        out.extend((0..a.size(0)).map(|o| Composite { blocks: Vec::new(), outer: o, inner: Vec::new() }));
        return out;
    }
    for blocks in all_set_partitions(n) {
        let k = blocks.len();
        let sizes: Vec<usize> = blocks.iter().map(|b| x.size(b.len())).collect();
        if a.size(k) == 0 || sizes.contains(&0) {
            continue;
        }
        let total: usize = sizes.iter().product();
        for o in 0..a.size(k) {
            for j in 0..total {
                out.push(Composite { blocks: blocks.clone(), outer: o, inner: crate::linalg::unflatten(j, &sizes) });
            }
        }
    }
    out
}

fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::<Vec<usize>>::new()];
    for e in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(e);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![e]);
            next.push(q);
        }
        out = next;
    }
    out
}

fn relabel(a: &SetSpeciesCollection, x: &SetSpeciesCollection, g: &Permutation, c: &Composite) -> Composite {
    let k = c.blocks.len();
    let moved: Vec<Vec<usize>> = c.blocks.iter().map(|b| b.iter().map(|&e| g.apply(e)).collect()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&j| *moved[j].iter().min().unwrap());
    let mut pi = vec![0; k];
    for (pos, &j) in order.iter().enumerate() {
        pi[j] = pos;
    }
    let outer = a.act(&Permutation::from_vec_unchecked(pi), c.outer);
    let mut blocks = Vec::with_capacity(k);
    let mut inner = Vec::with_capacity(k);
    for &j in &order {
        let mut sorted = moved[j].clone();
        sorted.sort_unstable();
        let h: Vec<usize> = moved[j].iter().map(|e| sorted.binary_search(e).unwrap()).collect();
        inner.push(x.act(&Permutation::from_vec_unchecked(h), c.inner[j]));
        blocks.push(sorted);
    }
    Composite { blocks, outer, inner }
}

/// Number of structures at arity `n` fixed by a permutation of the given
/// cycle type.
pub fn fixed_point_character(s: &SetSpeciesCollection, n: usize, cycle_type: &[usize]) -> Result<usize> {
    if cycle_type.iter().sum::<usize>() != n || cycle_type.contains(&0) {
        return Err(Error::Precondition(format!("{cycle_type:?} is not a cycle type of degree {n}")));
    }
    if n > s.max_arity() {
        return Err(Error::Precondition(format!("arity {n} is beyond the species bound")));
    }
    let g = Permutation::of_cycle_type(cycle_type);
    Ok((0..s.size(n)).filter(|&i| s.act(&g, i) == i).count())
}

/// The linear permutation representations of a species.
pub fn perm_rep_of(s: &SetSpeciesCollection) -> Result<Collection> {
    let reps = s
        .arities
        .iter()
        .enumerate()
        .map(|(n, a)| SymRep::permutation_rep(n, a.size, &a.generators))
        .collect::<Result<Vec<_>>>()?;
    Collection::new(reps, Support::Truncated)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_partitions_of_three() {
        let e = SetSpeciesCollection::e_plus(3);
        let p = species_circ(&e, &e, 3).unwrap();
        assert_eq!(p.sizes(), vec![0, 1, 2, 5]);
        assert_eq!(fixed_point_character(&p, 3, &[2, 1]).unwrap(), 3);
        assert_eq!(fixed_point_character(&p, 3, &[3]).unwrap(), 2);
        assert_eq!(fixed_point_character(&p, 3, &[1, 1, 1]).unwrap(), 5);
    }

    #[test]
    fn linear_orders_of_linear_orders() {
        let l = SetSpeciesCollection::l_plus(4);
        assert_eq!(species_circ(&l, &l, 4).unwrap().sizes(), vec![0, 1, 4, 24, 192]);
    }

    #[test]
    fn singleton_is_a_unit() {
        let b = SetSpeciesCollection::l_plus(3);
        let x = SetSpeciesCollection::singleton(3);
        assert_eq!(species_circ(&x, &b, 3).unwrap(), b);
    }

    #[test]
    fn permutation_representations() {
        let e = SetSpeciesCollection::e(3);
        let reps = perm_rep_of(&e).unwrap();
        assert!(reps.rep(3).is_isomorphic(&SymRep::trivial(3)));
        let l = perm_rep_of(&SetSpeciesCollection::l(3)).unwrap();
        assert!(l.rep(3).is_isomorphic(&SymRep::regular(3).unwrap()));
        let e = SetSpeciesCollection::e_plus(3);
        let p = perm_rep_of(&species_circ(&e, &e, 3).unwrap()).unwrap();
        let chars: Vec<_> = p.rep(3).characters_on_classes().into_iter().map(|(_, c)| c).collect();
        use crate::linalg::q;
        // lexicographic partition order: (1,1,1), (2,1), (3)
        assert_eq!(chars, vec![q(5), q(3), q(2)]);
    }
}
