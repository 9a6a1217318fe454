//! Free operads on positive collections, realized on leaf-labelled trees.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::collections::{Collection, Support};
use crate::error::{Error, Result};
use crate::linalg::{tensor_expand, unflatten, Matrix, SparseVec, Q};
use crate::linrep::{ActionTable, SymRep};
use crate::operads::{Operad, OperadMorphism};
use crate::oracles::series::{egf_fixed_point, FixedPointEquation};
use crate::symgrp::Permutation;

/// A rooted tree whose leaves carry distinct labels. Canonical trees have
/// the children of every vertex sorted by their smallest leaf label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(Vec<Tree>),
}

impl Tree {
    pub fn min_label(&self) -> usize {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(cs) => cs.iter().map(Tree::min_label).min().expect("vertices have children"),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(cs) => cs.iter().map(Tree::leaves).sum(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(cs) => 1 + cs.iter().map(Tree::vertices).sum::<usize>(),
        }
    }

    /// Vertex arities in preorder.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn rec(t: &Tree, out: &mut Vec<usize>) {
            if let Tree::Node(cs) = t {
                out.push(cs.len());
                cs.iter().for_each(|c| rec(c, out));
            }
        }
        rec(self, &mut out);
        out
    }

    fn labels(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(cs) => cs.iter().for_each(|c| c.labels(out)),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Node(cs) => {
                cs.windows(2).all(|w| w[0].min_label() < w[1].min_label()) && cs.iter().all(Tree::is_canonical)
            }
        }
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(cs) => Tree::Node(cs.iter().map(|c| c.relabel(f)).collect()),
        }
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Tree::Leaf(a), Tree::Leaf(b)) => a.cmp(b),
            (Tree::Leaf(_), Tree::Node(_)) => Ordering::Less,
            (Tree::Node(_), Tree::Leaf(_)) => Ordering::Greater,
            (Tree::Node(a), Tree::Node(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => write!(f, "{}", l + 1),
            Tree::Node(cs) => {
                f.write_str("(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Canonical trees with leaves labelled `0..n-1`, vertex arities in
/// `allowed`, at most `max_vertices` vertices. Sorted by vertex count, then
/// by tree order.
pub fn enumerate_trees(n: usize, allowed: &[usize], max_vertices: Option<usize>) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Precondition("trees need at least one leaf".into()));
    }
    if allowed.contains(&0) {
        return Err(Error::Precondition("nullary vertices are not supported".into()));
    }
    if allowed.contains(&1) && max_vertices.is_none() {
        return Err(Error::Precondition("unary vertices need a vertex bound".into()));
    }
    let budget = max_vertices.unwrap_or(n.saturating_sub(1));
    let labels: Vec<usize> = (0..n).collect();
    let mut memo = HashMap::new();
    let mut trees = trees_on(&labels, allowed, budget, &mut memo);
    trees.sort_by(|a, b| a.vertices().cmp(&b.vertices()).then_with(|| a.cmp(b)));
    Ok(trees)
}

type Memo = HashMap<(Vec<usize>, usize), Vec<Tree>>;

fn trees_on(labels: &[usize], allowed: &[usize], budget: usize, memo: &mut Memo) -> Vec<Tree> {
    if let Some(t) = memo.get(&(labels.to_vec(), budget)) {
        return t.clone();
    }
    let mut out = Vec::new();
    if labels.len() == 1 {
        out.push(Tree::Leaf(labels[0]));
    }
    if budget > 0 {
        for &a in allowed {
            if a > labels.len() {
                continue;
            }
            for blocks in set_partitions(labels, a) {
                let mut acc: Vec<(Vec<Tree>, usize)> = vec![(Vec::new(), 1)];
                for block in &blocks {
                    let mut next = Vec::new();
                    for (prefix, used) in &acc {
                        for t in trees_on(block, allowed, budget - used, memo) {
                            let v = t.vertices();
                            if used + v <= budget {
                                let mut p = prefix.clone();
                                p.push(t);
                                next.push((p, used + v));
                            }
                        }
                    }
                    acc = next;
                }
                out.extend(acc.into_iter().map(|(cs, _)| Tree::Node(cs)));
            }
        }
    }
    memo.insert((labels.to_vec(), budget), out.clone());
    out
}

/// Set partitions of `labels` into exactly `k` nonempty blocks, blocks
/// ordered by their minima.
fn set_partitions(labels: &[usize], k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    fn rec(i: usize, labels: &[usize], k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if labels.len() - i < k - cur.len() {
            return;
        }
        if i == labels.len() {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(labels[i]);
            rec(i + 1, labels, k, cur, out);
            cur[b].pop();
        }
        if cur.len() < k {
            cur.push(vec![labels[i]]);
            rec(i + 1, labels, k, cur, out);
            cur.pop();
        }
    }
    if k > 0 {
        rec(0, labels, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A tree whose vertices carry vectors in the generator spaces.
enum DTree {
    Leaf(usize),
    Node(SparseVec, Vec<DTree>),
}

impl DTree {
    fn from_basis(t: &Tree, decorations: &[usize]) -> DTree {
        let mut it = decorations.iter();
        fn rec(t: &Tree, it: &mut std::slice::Iter<'_, usize>) -> DTree {
            match t {
                Tree::Leaf(l) => DTree::Leaf(*l),
                Tree::Node(cs) => {
                    let d = SparseVec::unit(*it.next().unwrap());
                    DTree::Node(d, cs.iter().map(|c| rec(c, it)).collect())
                }
            }
        }
        rec(t, &mut it)
    }

    fn min_label(&self) -> usize {
        match self {
            DTree::Leaf(l) => *l,
            DTree::Node(_, cs) => cs.iter().map(DTree::min_label).min().unwrap(),
        }
    }

    fn relabel(self, f: &impl Fn(usize) -> usize) -> DTree {
        match self {
            DTree::Leaf(l) => DTree::Leaf(f(l)),
            DTree::Node(d, cs) => DTree::Node(d, cs.into_iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Sort children by minimal label, moving decorations along the
    /// permutation of children. Returns the canonical tree and the
    /// decorations in its preorder.
    fn canonicalize(self, tables: &[ActionTable]) -> (Tree, Vec<SparseVec>) {
        match self {
            DTree::Leaf(l) => (Tree::Leaf(l), Vec::new()),
            DTree::Node(d, cs) => {
                let mins: Vec<usize> = cs.iter().map(DTree::min_label).collect();
                let mut order: Vec<usize> = (0..cs.len()).collect();
                order.sort_by_key(|&i| mins[i]);
                // old child order[j] moves to position j
                let mut pi = vec![0; cs.len()];
                for (j, &i) in order.iter().enumerate() {
                    pi[i] = j;
                }
                let pi = Permutation::from_vec_unchecked(pi);
                let d = crate::axioms::apply_table(&tables[cs.len()], &pi, &d);
                let mut kids: Vec<Option<DTree>> = cs.into_iter().map(Some).collect();
                let mut children = Vec::with_capacity(kids.len());
                let mut decs = vec![d];
                for &i in &order {
                    let (t, ds) = kids[i].take().unwrap().canonicalize(tables);
                    children.push(t);
                    decs.extend(ds);
                }
                (Tree::Node(children), decs)
            }
        }
    }
}

/// `FA` together with its tree basis.
pub struct FreeOperadResult {
    pub operad: Operad,
    /// Per arity, the basis: canonical tree and one generator basis index
    /// per vertex in preorder.
    pub tree_basis: Vec<Vec<(Tree, Vec<usize>)>>,
    /// True when a vertex bound cut the construction off.
    pub truncated: bool,
    generators: Collection,
}

struct TreeIndex {
    // per arity: tree -> (base index, dims of vertex decorations)
    index: Vec<HashMap<Tree, (usize, Vec<usize>)>>,
}

impl TreeIndex {
    fn locate(&self, n: usize, t: &Tree) -> Option<&(usize, Vec<usize>)> {
        self.index.get(n)?.get(t)
    }

    fn vector(&self, n: usize, t: &Tree, decs: &[SparseVec]) -> SparseVec {
        match self.locate(n, t) {
            Some((base, dims)) => {
                let refs: Vec<&SparseVec> = decs.iter().collect();
                let base = *base;
                tensor_expand(&refs, dims).reindex(|i| i + base)
            }
            None => SparseVec::zero(),
        }
    }
}

fn generator_arities(a: &Collection, n: usize) -> Vec<usize> {
    (0..=n.min(a.max_arity())).filter(|&k| a.dim(k) > 0).collect()
}

/// The free operad on a positive collection, up to arity `n`.
pub fn free_operad(a: &Collection, n: usize, max_vertices: Option<usize>) -> Result<FreeOperadResult> {
    if a.dim(0) > 0 {
        return Err(Error::Precondition("generators must vanish in arity 0".into()));
    }
    if !a.is_finite() && a.max_arity() < n {
        return Err(Error::Precondition(format!("generators are truncated at {} below arity {n}", a.max_arity())));
    }
    if n < 1 {
        return Err(Error::Precondition("maximal arity must be at least 1".into()));
    }
    let allowed = generator_arities(a, n);
    if allowed.contains(&1) && max_vertices.is_none() {
        return Err(Error::Precondition("unary generators need a vertex bound".into()));
    }
    let gens: Vec<SymRep> = (0..=n).map(|k| a.rep_or_zero(k)).collect::<Result<_>>()?;
    let tables: Vec<ActionTable> = gens.iter().map(ActionTable::new).collect();

    let mut tree_basis = vec![Vec::new()];
    let mut index = vec![HashMap::new()];
    // a tree on n leaves without unary vertices has at most n - 1 vertices
    let truncated = max_vertices.is_some_and(|b| allowed.contains(&1) || b + 1 < n);
    for m in 1..=n {
        let trees = enumerate_trees(m, &allowed, max_vertices)?;
        let mut basis = Vec::new();
        let mut idx = HashMap::new();
        for t in trees {
            let dims: Vec<usize> = t.arities().iter().map(|&k| gens[k].dim()).collect();
            let count: usize = dims.iter().product();
            if count == 0 {
                continue;
            }
            idx.insert(t.clone(), (basis.len(), dims.clone()));
            for j in 0..count {
                basis.push((t.clone(), unflatten(j, &dims)));
            }
        }
        tree_basis.push(basis);
        index.push(idx);
    }
    let tindex = TreeIndex { index };

    // Σ_m action by relabelling leaves
    let mut reps = vec![SymRep::zero(0)];
    for m in 1..=n {
        let basis = &tree_basis[m];
        let gens_m = (0..m - 1)
            .map(|s| {
                let g = Permutation::adjacent(m, s);
                let cols = basis
                    .par_iter()
                    .map(|(t, x)| {
                        let dt = DTree::from_basis(t, x).relabel(&|l| g.apply(l));
                        let (t2, decs) = dt.canonicalize(&tables);
                        tindex.vector(m, &t2, &decs)
                    })
                    .collect();
                Matrix::from_columns(basis.len(), cols)
            })
            .collect();
        reps.push(SymRep::from_generators_unchecked(m, basis.len(), gens_m));
    }
    let coll = Collection::new(reps, Support::Truncated)?;
    let unit = SparseVec::unit(0);

    let operad = Operad::from_fn(coll, unit, |shape, idx| {
        let k = shape[0];
        let (t, x) = &tree_basis[k][idx[0]];
        let mut offsets = vec![0; k + 1];
        for i in 0..k {
            offsets[i + 1] = offsets[i] + shape[i + 1];
        }
        let subs: Vec<DTree> = (0..k)
            .map(|i| {
                let (s, y) = &tree_basis[shape[i + 1]][idx[i + 1]];
                let off = offsets[i];
                DTree::from_basis(s, y).relabel(&|l| l + off)
            })
            .collect();
        let grafted = graft(DTree::from_basis(t, x), &mut subs.into_iter().map(Some).collect::<Vec<_>>());
        let (t2, decs) = grafted.canonicalize(&tables);
        if max_vertices.is_some_and(|b| t2.vertices() > b) {
            return SparseVec::zero();
        }
        tindex.vector(offsets[k], &t2, &decs)
    });
    Ok(FreeOperadResult { operad, tree_basis, truncated, generators: a.restrict_max(n.min(a.max_arity())) })
}

fn graft(t: DTree, subs: &mut [Option<DTree>]) -> DTree {
    match t {
        DTree::Leaf(l) => subs[l].take().expect("each leaf grafted once"),
        DTree::Node(d, cs) => DTree::Node(d, cs.into_iter().map(|c| graft(c, subs)).collect()),
    }
}

/// The free operad on the positive part of a reduced collection, with the
/// unit object in arity 0. Inserting the nullary element into any tree
/// with a vertex gives zero.
pub fn reduced_free_operad(a: &Collection, n: usize, max_vertices: Option<usize>) -> Result<FreeOperadResult> {
    if a.dim(0) != 1 {
        return Err(Error::Precondition("a reduced collection has a one-dimensional arity 0".into()));
    }
    let free = free_operad(&a.positive_part(), n, max_vertices)?;
    let mut reps = free.operad.collection().reps().to_vec();
    reps[0] = SymRep::trivial(0);
    let coll = Collection::new(reps, Support::Truncated)?;
    let base = &free.operad;
    let operad = Operad::from_fn(coll, base.unit().clone(), |shape, idx| {
        if shape[1..].contains(&0) {
            let k = shape[0];
            // only the unit (a bare leaf, index 0 in arity 1) survives
            if k == 1 && idx[0] == 0 {
                return SparseVec::unit(0);
            }
            return SparseVec::zero();
        }
        if shape[0] == 0 {
            return SparseVec::unit(0);
        }
        base.compose_basis(shape, idx).unwrap_or_default()
    });
    let mut tree_basis = free.tree_basis;
    tree_basis[0] = Vec::new();
    Ok(FreeOperadResult { operad, tree_basis, truncated: free.truncated, generators: free.generators })
}

impl FreeOperadResult {
    /// The inclusion `A(k) -> FA(k)` onto corollas.
    pub fn generator_inclusion(&self, k: usize) -> Matrix {
        let dim_a = self.generators.dim(k);
        let target = self.operad.dim(k);
        let corolla = Tree::Node((0..k).map(Tree::Leaf).collect());
        let cols = (0..dim_a)
            .map(|i| {
                let pos = self.tree_basis[k].iter().position(|(t, x)| *t == corolla && x[0] == i);
                pos.map_or_else(SparseVec::zero, SparseVec::unit)
            })
            .collect();
        Matrix::from_columns(target, cols)
    }
}

/// Iterated composition in `P` along a tree; `decorations` in preorder.
pub fn eval_tree(p: &Operad, t: &Tree, decorations: &[SparseVec]) -> Result<SparseVec> {
    let arities = t.arities();
    if arities.len() != decorations.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} decorations for {} vertices",
            decorations.len(),
            arities.len()
        )));
    }
    let tables: Vec<ActionTable> = p.collection().reps().iter().map(ActionTable::new).collect();
    let mut it = decorations.iter();
    eval_rec(p, t, &mut it, &tables)
}

fn eval_rec(p: &Operad, t: &Tree, it: &mut std::slice::Iter<'_, SparseVec>, tables: &[ActionTable]) -> Result<SparseVec> {
    match t {
        Tree::Leaf(_) => Ok(p.unit().clone()),
        Tree::Node(cs) => {
            let d = it.next().unwrap();
            if d.max_index().is_some_and(|i| i >= p.dim(cs.len())) {
                return Err(Error::DimensionMismatch(format!("decoration outside P({})", cs.len())));
            }
            let mut values = Vec::with_capacity(cs.len());
            let mut ns = Vec::with_capacity(cs.len());
            let mut positions = Vec::new();
            for c in cs {
                values.push(eval_rec(p, c, it, tables)?);
                ns.push(c.leaves());
                let mut ls = Vec::new();
                c.labels(&mut ls);
                ls.sort_unstable();
                positions.extend(ls);
            }
            let refs: Vec<&SparseVec> = values.iter().collect();
            let composed = p
                .compose(d, &ns, &refs)
                .ok_or_else(|| Error::Precondition("tree exceeds the operad's truncation".into()))?;
            // block position j holds the leaf with the rank of positions[j]
            let mut sorted = positions.clone();
            sorted.sort_unstable();
            let lambda: Vec<usize> = positions.iter().map(|l| sorted.binary_search(l).unwrap()).collect();
            let lambda = Permutation::from_vec_unchecked(lambda);
            Ok(crate::axioms::apply_table(&tables[lambda.degree()], &lambda, &composed))
        }
    }
}

/// The operad map `FA -> P` extending aritywise maps `f_k: A(k) -> P(k)`.
pub fn extend_to_operad_map(free: &FreeOperadResult, p: &Operad, f: &[Matrix]) -> Result<OperadMorphism> {
    let n = free.operad.max_arity().min(p.max_arity());
    for (k, m) in f.iter().enumerate() {
        if free.generators.dim(k) == 0 {
            continue;
        }
        let map = crate::linrep::EquivariantMap::new(free.generators.rep(k).clone(), p.rep(k).clone(), m.clone());
        map.map_err(|e| Error::NotEquivariant(format!("generator map at arity {k}: {e}")))?;
    }
    let components = (0..=n)
        .map(|m| {
            let cols = free.tree_basis[m]
                .iter()
                .map(|(t, x)| {
                    let decs: Vec<SparseVec> =
                        t.arities().iter().zip(x).map(|(&k, &i)| f[k].column(i).clone()).collect();
                    eval_tree(p, t, &decs)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(p.dim(m), cols))
        })
        .collect::<Result<Vec<_>>>()?;
    OperadMorphism::new(free.operad.restrict_max(n), p.restrict_max(n), components)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeMode {
    /// Generators are trivial representations.
    Unordered,
    /// Generators are regular representations.
    Ordered,
}

/// `n!·[x^n] f` for the tree series `f = x + Σ_k m_k f^k / k!` (unordered)
/// or `f = x + Σ_k m_k f^k` (ordered), `n = 0..=max`.
pub fn egf_tree_dims(generators: &[(usize, usize)], mode: TreeMode, max: usize) -> Result<Vec<Q>> {
    if generators.iter().any(|&(k, m)| k <= 1 && m > 0) {
        return Err(Error::Precondition("nullary or unary generators make the tree series diverge".into()));
    }
    let terms = generators
        .iter()
        .filter(|&&(_, m)| m > 0)
        .map(|&(k, m)| {
            let c = match mode {
                TreeMode::Unordered => Q::new(m.into(), crate::symgrp::factorial(k).into()),
                TreeMode::Ordered => Q::from_integer(m.into()),
            };
            (k, c)
        })
        .collect();
    let f = egf_fixed_point(&FixedPointEquation { terms }, max)?;
    Ok(f.dims())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::operads::{ass_operad, com_operad};

    fn one_binary(rep: SymRep) -> Collection {
        let reps = (0..=5).map(|n| if n == 2 { rep.clone() } else { SymRep::zero(n) }).collect();
        Collection::new(reps, Support::Finite).unwrap()
    }

    #[test]
    fn commutative_binary_trees() {
        let a = one_binary(SymRep::trivial(2));
        let f = free_operad(&a, 5, None).unwrap();
        assert_eq!(f.operad.collection().dims(), vec![0, 1, 1, 3, 15, 105]);
        let egf = egf_tree_dims(&[(2, 1)], TreeMode::Unordered, 5).unwrap();
        assert_eq!(egf, vec![q(0), q(1), q(1), q(3), q(15), q(105)]);
        assert!(!f.truncated);
    }

    #[test]
    fn regular_binary_generator() {
        let a = one_binary(SymRep::regular(2).unwrap());
        let f = free_operad(&a, 4, None).unwrap();
        assert_eq!(f.operad.collection().dims()[..4], [0, 1, 2, 12]);
        assert_eq!(egf_tree_dims(&[(2, 1)], TreeMode::Ordered, 3).unwrap()[3], q(12));
        assert!(f.operad.check_axioms().passed());
    }

    #[test]
    fn free_operad_axioms() {
        let reps = vec![SymRep::zero(0), SymRep::zero(1), SymRep::sign(2), SymRep::trivial(3)];
        let a = Collection::new(reps, Support::Finite).unwrap();
        let f = free_operad(&a, 4, None).unwrap();
        let report = f.operad.check_axioms();
        assert!(report.passed(), "{report}");
        assert!(f.tree_basis[4].iter().all(|(t, _)| t.is_canonical()));
    }

    #[test]
    fn unary_generators_need_a_bound() {
        let reps = vec![SymRep::zero(0), SymRep::trivial(1), SymRep::trivial(2)];
        let a = Collection::new(reps, Support::Finite).unwrap();
        assert!(free_operad(&a, 3, None).is_err());
        let f = free_operad(&a, 3, Some(2)).unwrap();
        assert!(f.truncated);
        // arity 1: leaf, u, uu
        assert_eq!(f.operad.dim(1), 3);
        assert!(f.operad.check_axioms().passed());
    }

    #[test]
    fn reduced_free_operad_adds_a_point() {
        let reps = vec![SymRep::trivial(0), SymRep::zero(1), SymRep::trivial(2), SymRep::zero(3), SymRep::zero(4)];
        let a = Collection::new(reps, Support::Finite).unwrap();
        let f = reduced_free_operad(&a, 4, None).unwrap();
        assert_eq!(f.operad.collection().dims(), vec![1, 1, 1, 3, 15]);
        let report = f.operad.check_axioms();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn extension_to_commutative_operad() {
        let a = one_binary(SymRep::trivial(2)).restrict_max(4);
        let f = free_operad(&a, 4, None).unwrap();
        let com = com_operad(4).unwrap();
        let gens: Vec<Matrix> = (0..=4)
            .map(|k| Matrix::from_columns(com.dim(k), (0..a.dim(k)).map(|_| SparseVec::unit(0)).collect()))
            .collect();
        let phi = extend_to_operad_map(&f, &com, &gens).unwrap();
        assert!(phi.check().passed());
        // the three binary trees in arity 3 all map to the generator
        assert_eq!(phi.component(3).columns().iter().filter(|c| **c == SparseVec::unit(0)).count(), 3);
        assert_eq!(phi.component(2).mul(&f.generator_inclusion(2)).unwrap(), gens[2]);
    }

    #[test]
    fn extension_to_associative_operad() {
        let a = one_binary(SymRep::regular(2).unwrap()).restrict_max(3);
        let f = free_operad(&a, 3, None).unwrap();
        let ass = ass_operad(3).unwrap();
        let gens: Vec<Matrix> = (0..=3)
            .map(|k| if k == 2 { Matrix::identity(2) } else { Matrix::zeros(ass.dim(k), a.dim(k)) })
            .collect();
        let phi = extend_to_operad_map(&f, &ass, &gens).unwrap();
        assert!(phi.check().passed());
        // each permutation of 3 letters has two bracketings
        let comp = phi.component(3);
        for i in 0..6 {
            let hits = comp.columns().iter().filter(|c| c.get(i) != q(0)).count();
            assert_eq!(hits, 2);
        }
    }

    #[test]
    fn degenerate_generators() {
        let zero = crate::collections::Collection::zero(3);
        let f = free_operad(&zero, 3, None).unwrap();
        assert_eq!(f.operad.collection().dims(), crate::operads::initial_positive(3).unwrap().collection().dims());
        let reps = vec![SymRep::trivial(0), SymRep::zero(1), SymRep::zero(2), SymRep::zero(3)];
        let a = Collection::new(reps, Support::Finite).unwrap();
        let r = reduced_free_operad(&a, 3, None).unwrap();
        assert_eq!(r.operad.collection().dims(), vec![1, 1, 0, 0]);
        assert!(r.operad.check_axioms().passed());
    }

    #[test]
    fn evaluation_in_ass() {
        let ass = ass_operad(3).unwrap();
        let t = Tree::Node(vec![Tree::Node(vec![Tree::Leaf(0), Tree::Leaf(1)]), Tree::Leaf(2)]);
        let id = SparseVec::unit(0);
        assert_eq!(eval_tree(&ass, &t, &[id.clone(), id.clone()]).unwrap(), id);
        // leaves 1 and 3 paired first: the composite reorders the inputs
        let t = Tree::Node(vec![Tree::Node(vec![Tree::Leaf(0), Tree::Leaf(2)]), Tree::Leaf(1)]);
        let v = eval_tree(&ass, &t, &[id.clone(), id.clone()]).unwrap();
        let expected = Permutation::new(vec![0, 2, 1]).unwrap().lex_rank();
        assert_eq!(v, SparseVec::unit(expected));
        assert!(eval_tree(&ass, &t, &[id]).is_err());
    }

    #[test]
    fn zero_map_kills_every_vertex() {
        let a = one_binary(SymRep::trivial(2)).restrict_max(3);
        let f = free_operad(&a, 3, None).unwrap();
        let com = com_operad(3).unwrap();
        let gens: Vec<Matrix> = (0..=3).map(|k| Matrix::zeros(com.dim(k), a.dim(k))).collect();
        let phi = extend_to_operad_map(&f, &com, &gens).unwrap();
        assert!(phi.component(3).is_zero());
        assert_eq!(*phi.component(1), Matrix::identity(1));
    }
}
