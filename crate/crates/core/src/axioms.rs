//! Shape-indexed structure maps `P(k) ⊗ M(n_1) ⊗ .. ⊗ M(n_k) -> M(n)` and
//! the checker for the unit, equivariance and associativity identities.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::collections::Collection;
use crate::linalg::{flat_index, tensor_expand, unflatten, Accumulator, Echelon, Matrix, SparseVec};
use crate::linrep::{ActionTable, SymRep};
use crate::symgrp::Permutation;

/// `[k, n_1, .., n_k]`.
pub type Shape = Vec<usize>;

pub(crate) fn shape_total(shape: &[usize]) -> usize {
    shape[1..].iter().sum()
}

pub(crate) fn fmt_shape(shape: &[usize]) -> String {
    let inner: Vec<String> = shape[1..].iter().map(usize::to_string).collect();
    format!("({};{})", shape[0], inner.join(","))
}

fn fmt_indices(idx: &[usize]) -> String {
    let v: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    v.join(",")
}

/// Every shape with `k ≤ max_outer`, `P(k) ≠ 0`, `M(n_i) ≠ 0` and
/// `Σ n_i ≤ max_total`.
pub(crate) fn enumerate_shapes(outer: &Collection, inner: &Collection, max_outer: usize, max_total: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    let inner_arities: Vec<usize> = (0..=max_total.min(inner.max_arity())).filter(|&n| inner.dim(n) > 0).collect();
    fn rec(k: usize, left: usize, arities: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        for &a in arities {
            if a <= left {
                cur.push(a);
                rec(k, left - a, arities, cur, out);
                cur.pop();
            }
        }
    }
    for k in 0..=max_outer.min(outer.max_arity()) {
        if outer.dim(k) == 0 {
            continue;
        }
        rec(k, max_total, &inner_arities, &mut vec![k], &mut out);
    }
    out
}

/// Structure maps stored per shape; shapes with `k ≤ max_outer` and output
/// arity within the target collection that are absent are zero maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeMaps {
    pub(crate) max_outer: usize,
    pub(crate) maps: BTreeMap<Shape, Matrix>,
}

impl ShapeMaps {
    pub fn new(max_outer: usize, maps: BTreeMap<Shape, Matrix>) -> Self {
        ShapeMaps { max_outer, maps }
    }

    pub fn max_outer(&self) -> usize {
        self.max_outer
    }

    pub fn get(&self, shape: &[usize]) -> Option<&Matrix> {
        self.maps.get(shape)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Shape, &Matrix)> {
        self.maps.iter()
    }

    pub(crate) fn get_mut(&mut self, shape: &[usize]) -> Option<&mut Matrix> {
        self.maps.get_mut(shape)
    }

    /// Tabulate `f(shape, basis tuple)` on every shape.
    pub(crate) fn tabulate(
        outer: &Collection,
        inner: &Collection,
        max_outer: usize,
        f: impl Fn(&[usize], &[usize]) -> SparseVec + Sync,
    ) -> Self {
        let shapes = enumerate_shapes(outer, inner, max_outer, inner.max_arity());
        let maps = shapes
            .into_par_iter()
            .filter_map(|shape| {
                let dims = input_dims(outer, inner, &shape);
                let total: usize = dims.iter().product();
                if total == 0 {
                    return None;
                }
                let rows = inner.dim(shape_total(&shape));
                let cols = (0..total).map(|j| f(&shape, &unflatten(j, &dims))).collect();
                Some((shape, Matrix::from_columns(rows, cols)))
            })
            .collect();
        ShapeMaps { max_outer, maps }
    }
}

pub(crate) fn input_dims(outer: &Collection, inner: &Collection, shape: &[usize]) -> Vec<usize> {
    let mut dims = Vec::with_capacity(shape.len());
    dims.push(outer.dim(shape[0]));
    dims.extend(shape[1..].iter().map(|&n| inner.dim(n)));
    dims
}

/// One structure map family `P ∘ M -> M` over an operad `P` (given by its
/// collection, unit and composition).
pub(crate) struct ActionView<'a> {
    pub(crate) p: &'a Collection,
    pub(crate) p_unit: &'a SparseVec,
    pub(crate) gamma: &'a ShapeMaps,
    pub(crate) m: &'a Collection,
    pub(crate) act: &'a ShapeMaps,
}

impl ActionView<'_> {
    fn in_range(&self, shape: &[usize]) -> bool {
        shape[0] <= self.act.max_outer
            && shape[0] <= self.p.max_arity()
            && shape[1..].iter().all(|&n| n <= self.m.max_arity())
            && shape_total(shape) <= self.m.max_arity()
    }

    /// Action on a tensor of vectors. `None` outside the stored range.
    pub(crate) fn eval(&self, shape: &[usize], args: &[&SparseVec]) -> Option<SparseVec> {
        if !self.in_range(shape) {
            return None;
        }
        let Some(m) = self.act.get(shape) else { return Some(SparseVec::zero()) };
        let dims = input_dims(self.p, self.m, shape);
        Some(m.apply(&tensor_expand(args, &dims)))
    }

    fn eval_basis(&self, shape: &[usize], idx: &[usize]) -> Option<SparseVec> {
        if !self.in_range(shape) {
            return None;
        }
        let Some(m) = self.act.get(shape) else { return Some(SparseVec::zero()) };
        let dims = input_dims(self.p, self.m, shape);
        Some(m.column(flat_index(idx, &dims)).clone())
    }
}

/// Evaluate an operad composition on vectors. Shapes outside the
/// stored range give `None`.
pub(crate) fn eval_gamma(p: &Collection, gamma: &ShapeMaps, shape: &[usize], args: &[&SparseVec]) -> Option<SparseVec> {
    if shape[0] > gamma.max_outer || shape_total(shape) > p.max_arity() || shape[1..].iter().any(|&n| n > p.max_arity()) {
        return None;
    }
    let Some(m) = gamma.get(shape) else { return Some(SparseVec::zero()) };
    let dims = input_dims(p, p, shape);
    Some(m.apply(&tensor_expand(args, &dims)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Check associativity-type identities on every basis tuple instead of
    /// on tuples of `Σ`-module generators.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub family: String,
    pub instances: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.outcomes.iter().find_map(|o| o.failure.as_deref())
    }

    pub fn family(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.family == name)
    }

    pub(crate) fn push(&mut self, family: &str, instances: usize, failure: Option<String>) {
        self.outcomes.push(CheckOutcome { family: family.to_string(), instances, failure });
    }

    pub(crate) fn extend(&mut self, other: AxiomReport) {
        self.outcomes.extend(other.outcomes);
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "{}: pass ({} instances)", o.family, o.instances)?,
                Some(msg) => writeln!(f, "{}: FAIL {}", o.family, msg)?,
            }
        }
        Ok(())
    }
}

/// Basis vectors generating a representation as a `Σ_n`-module, chosen
/// greedily in index order.
pub(crate) fn module_generators(rep: &SymRep) -> Vec<usize> {
    let mut span = Echelon::new();
    let mut gens = Vec::new();
    for i in 0..rep.dim() {
        let e = SparseVec::unit(i);
        if span.contains(&e) {
            continue;
        }
        gens.push(i);
        let mut queue = vec![e.clone()];
        span.insert(e);
        while let Some(v) = queue.pop() {
            for g in rep.generators() {
                let w = g.apply(&v);
                if !span.contains(&w) {
                    span.insert(w.clone());
                    queue.push(w);
                }
            }
        }
        if span.rank() == rep.dim() {
            break;
        }
    }
    gens
}

fn tuples(ranges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        let mut next = Vec::with_capacity(out.len() * r.len());
        for t in &out {
            for &x in r {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// First failure found by `f` over `items`, in item order.
fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync) -> Option<String> {
    items.par_iter().map(|t| f(t)).find_first(|r| r.is_some()).flatten()
}

/// Check the left unit, equivariance and associativity identities of an
/// action `P ∘ M -> M`.
pub(crate) fn check_action(view: &ActionView<'_>, opts: CheckOptions) -> AxiomReport {
    let mut report = AxiomReport::default();
    let m_tables: Vec<ActionTable> = view.m.reps().iter().map(ActionTable::new).collect();
    let p_tables: Vec<ActionTable> = view.p.reps().iter().map(ActionTable::new).collect();
    let shapes: Vec<Shape> = view.act.maps.keys().cloned().collect();

    // left unit
    let arities: Vec<usize> = (0..=view.m.max_arity()).filter(|&n| view.m.dim(n) > 0).collect();
    let mut count = 0;
    let mut failure = None;
    if view.p.max_arity() >= 1 && view.act.max_outer >= 1 {
        for &n in &arities {
            for i in 0..view.m.dim(n) {
                count += 1;
                let lhs = view.eval(&[1, n], &[view.p_unit, &SparseVec::unit(i)]).unwrap();
                if lhs != SparseVec::unit(i) && failure.is_none() {
                    failure = Some(format!("u∘x != x at arity {n}, basis vector {}", i + 1));
                }
            }
        }
    }
    report.push("left unit", count, failure);

    // block equivariance, generator by generator
    let instances: Vec<(Shape, usize)> =
        shapes.iter().flat_map(|s| (0..s[0].saturating_sub(1)).map(move |i| (s.clone(), i))).collect();
    let count = instances.iter().map(|(s, _)| input_dims(view.p, view.m, s).iter().product::<usize>()).sum();
    let failure = first_failure(&instances, |(shape, i)| {
        let k = shape[0];
        let sigma = Permutation::adjacent(k, *i);
        let mut swapped = shape.clone();
        swapped.swap(i + 1, i + 2);
        let block = Permutation::block_permutation(&sigma, &swapped[1..]);
        let dims = input_dims(view.p, view.m, shape);
        let total: usize = dims.iter().product();
        for j in 0..total {
            let idx = unflatten(j, &dims);
            let c = p_tables[k].column(&sigma, idx[0]);
            let args: Vec<SparseVec> = idx[1..].iter().map(|&t| SparseVec::unit(t)).collect();
            let mut refs: Vec<&SparseVec> = vec![&c];
            refs.extend(args.iter());
            let lhs = view.eval(shape, &refs)?;
            let mut idx2 = idx.clone();
            idx2.swap(i + 1, i + 2);
            let inner = view.eval_basis(&swapped, &idx2)?;
            let rhs = apply_table(&m_tables[shape_total(shape)], &block, &inner);
            if lhs != rhs {
                return Some(format!(
                    "γ(s_{}·c; d) != B·γ(c; d∘s_{}) at shape {}, basis ({})",
                    i + 1,
                    i + 1,
                    fmt_shape(shape),
                    fmt_indices(&idx)
                ));
            }
        }
        None
    });
    report.push("block equivariance", count, failure);

    // slot equivariance
    let instances: Vec<(Shape, usize, usize)> = shapes
        .iter()
        .flat_map(|s| {
            (0..s[0]).flat_map(move |slot| (0..s[slot + 1].saturating_sub(1)).map(move |g| (s.clone(), slot, g)))
        })
        .collect();
    let count = instances.iter().map(|(s, _, _)| input_dims(view.p, view.m, s).iter().product::<usize>()).sum();
    let failure = first_failure(&instances, |(shape, slot, g)| {
        let ni = shape[slot + 1];
        let tau = Permutation::adjacent(ni, *g);
        let perms: Vec<Permutation> =
            shape[1..].iter().enumerate().map(|(t, &n)| if t == *slot { tau.clone() } else { Permutation::identity(n) }).collect();
        let refs: Vec<&Permutation> = perms.iter().collect();
        let sum = Permutation::direct_sum(&refs);
        let dims = input_dims(view.p, view.m, shape);
        let total: usize = dims.iter().product();
        for j in 0..total {
            let idx = unflatten(j, &dims);
            let moved = m_tables[ni].column(&tau, idx[slot + 1]);
            let units: Vec<SparseVec> = idx.iter().map(|&t| SparseVec::unit(t)).collect();
            let mut refs: Vec<&SparseVec> = units.iter().collect();
            refs[slot + 1] = &moved;
            let lhs = view.eval(shape, &refs)?;
            let rhs = apply_table(&m_tables[shape_total(shape)], &sum, &view.eval_basis(shape, &idx)?);
            if lhs != rhs {
                return Some(format!(
                    "γ(c; .., s_{}·d_{}, ..) != (id⊕..⊕s_{}⊕..⊕id)·γ(c; d) at shape {}, basis ({})",
                    g + 1,
                    slot + 1,
                    g + 1,
                    fmt_shape(shape),
                    fmt_indices(&idx)
                ));
            }
        }
        None
    });
    report.push("slot equivariance", count, failure);

    // associativity: μ(γ(c; d_*); x_*) = μ(c; μ(d_1; x_..), .., μ(d_k; x_..))
    let p_choice = |n: usize| -> Vec<usize> {
        if opts.exhaustive {
            (0..view.p.dim(n)).collect()
        } else {
            module_generators(view.p.rep(n))
        }
    };
    let m_choice = |n: usize| -> Vec<usize> {
        if opts.exhaustive {
            (0..view.m.dim(n)).collect()
        } else {
            module_generators(view.m.rep(n))
        }
    };
    let p_gens: Vec<Vec<usize>> = (0..=view.p.max_arity()).map(p_choice).collect();
    let m_gens: Vec<Vec<usize>> = (0..=view.m.max_arity()).map(m_choice).collect();
    let outer_shapes = enumerate_shapes(view.p, view.p, view.gamma.max_outer, view.p.max_arity());
    let m_arities: Vec<usize> = (0..=view.m.max_arity()).filter(|&n| view.m.dim(n) > 0).collect();
    let mut chains = Vec::new();
    for s in &outer_shapes {
        let j = shape_total(s);
        if j > view.act.max_outer {
            continue;
        }
        for xs in tuples(&vec![m_arities.clone(); j]) {
            if xs.iter().sum::<usize>() <= view.m.max_arity() {
                let mut inner = vec![j];
                inner.extend(xs);
                chains.push((s.clone(), inner));
            }
        }
    }
    let counter = std::sync::atomic::AtomicUsize::new(0);
    let failure = first_failure(&chains, |(outer, inner)| {
        let k = outer[0];
        let xs = &inner[1..];
        let mut ranges = vec![p_gens[k].clone()];
        ranges.extend(outer[1..].iter().map(|&n| p_gens[n].clone()));
        ranges.extend(xs.iter().map(|&n| m_gens[n].clone()));
        // block boundaries of the x's
        let mut bounds = vec![0];
        for &ji in &outer[1..] {
            bounds.push(bounds.last().unwrap() + ji);
        }
        let mut inner_shapes = Vec::with_capacity(k);
        for b in 0..k {
            let mut sh = vec![outer[b + 1]];
            sh.extend_from_slice(&xs[bounds[b]..bounds[b + 1]]);
            inner_shapes.push(sh);
        }
        let mut top = vec![k];
        top.extend(inner_shapes.iter().map(|s| shape_total(s)));
        if !view.in_range(&top) || !view.in_range(inner) || inner_shapes.iter().any(|s| !view.in_range(s)) {
            return None;
        }
        for t in tuples(&ranges) {
            counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let c = t[0];
            let ds = &t[1..=k];
            let x = &t[k + 1..];
            let mut idx = vec![c];
            idx.extend_from_slice(ds);
            let composed = view.gamma.get(outer).map_or_else(SparseVec::zero, |m| {
                m.column(flat_index(&idx, &input_dims(view.p, view.p, outer))).clone()
            });
            let x_units: Vec<SparseVec> = x.iter().map(|&i| SparseVec::unit(i)).collect();
            let mut refs: Vec<&SparseVec> = vec![&composed];
            refs.extend(x_units.iter());
            let lhs = view.eval(inner, &refs)?;
            let mut parts = Vec::with_capacity(k);
            for b in 0..k {
                let mut bidx = vec![ds[b]];
                bidx.extend_from_slice(&x[bounds[b]..bounds[b + 1]]);
                parts.push(view.eval_basis(&inner_shapes[b], &bidx)?);
            }
            let cu = SparseVec::unit(c);
            let mut refs: Vec<&SparseVec> = vec![&cu];
            refs.extend(parts.iter());
            let rhs = view.eval(&top, &refs)?;
            if lhs != rhs {
                return Some(format!(
                    "γ(γ(c; d); x) != γ(c; γ(d_i; x)) at shapes {} then {}, basis ({})",
                    fmt_shape(outer),
                    fmt_shape(inner),
                    fmt_indices(&t)
                ));
            }
        }
        None
    });
    report.push("associativity", counter.into_inner(), failure);
    report
}

pub(crate) fn apply_table(table: &ActionTable, g: &Permutation, v: &SparseVec) -> SparseVec {
    if g.is_identity() {
        return v.clone();
    }
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        acc.add_vec(c, &table.column(g, i));
    }
    acc.finish()
}
