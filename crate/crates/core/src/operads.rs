//! Operads with all composition maps `γ: P(k) ⊗ P(n_1) ⊗ .. ⊗ P(n_k) -> P(n)`
//! stored explicitly.
//!
//! Conventions, with left actions throughout:
//! `γ(σ·c; d_1, .., d_k) = B·γ(c; d_σ(1), .., d_σ(k))`, `B` the block
//! permutation moving the block of size `n_σ(i)` to slot `σ(i)`;
//! `γ(c; τ_1·d_1, ..) = (τ_1 ⊕ .. ⊕ τ_k)·γ(c; d)`.

use std::collections::BTreeMap;

use crate::axioms::{
    check_action, eval_gamma, input_dims, module_generators, shape_total, ActionView, AxiomReport, CheckOptions, Shape,
    ShapeMaps,
};
use crate::collections::{hadamard_coll, Collection, Support};
use crate::error::{Error, Result};
use crate::linalg::{flat_index, unflatten, Matrix, SparseVec, SpanTracker};
use crate::linrep::SymRep;
use crate::symgrp::{enumerate_group, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operad {
    coll: Collection,
    unit: SparseVec,
    gamma: ShapeMaps,
}

impl Operad {
    /// Assemble an operad from stored maps, checking shapes and sizes only.
    pub fn from_parts(coll: Collection, unit: SparseVec, gamma: BTreeMap<Shape, Matrix>) -> Result<Self> {
        let n = coll.max_arity();
        if n < 1 {
            return Err(Error::Precondition("an operad needs arity 1".into()));
        }
        if unit.max_index().is_some_and(|i| i >= coll.dim(1)) {
            return Err(Error::DimensionMismatch("unit outside P(1)".into()));
        }
        for (shape, m) in &gamma {
            if shape.is_empty() || shape.len() != shape[0] + 1 || shape[0] > n || shape_total(shape) > n {
                return Err(Error::OperadMismatch(format!("invalid shape {shape:?}")));
            }
            let dims = input_dims(&coll, &coll, shape);
            if m.ncols() != dims.iter().product::<usize>() || m.nrows() != coll.dim(shape_total(shape)) {
                return Err(Error::DimensionMismatch(format!("composition map at shape {shape:?} has the wrong size")));
            }
        }
        Ok(Operad { coll, unit, gamma: ShapeMaps::new(n, gamma) })
    }

    /// Tabulate `γ` from its values on basis tuples `(c, d_1, .., d_k)`.
    pub fn from_fn(coll: Collection, unit: SparseVec, f: impl Fn(&[usize], &[usize]) -> SparseVec + Sync) -> Self {
        let n = coll.max_arity();
        let gamma = ShapeMaps::tabulate(&coll, &coll, n, f);
        Operad { coll, unit, gamma }
    }

    pub fn collection(&self) -> &Collection {
        &self.coll
    }

    pub fn max_arity(&self) -> usize {
        self.coll.max_arity()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.coll.dim(n)
    }

    pub fn rep(&self, n: usize) -> &SymRep {
        self.coll.rep(n)
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn gamma(&self) -> &ShapeMaps {
        &self.gamma
    }

    pub fn gamma_at(&self, shape: &[usize]) -> Option<&Matrix> {
        self.gamma.get(shape)
    }

    /// `γ(c; d_1, .., d_k)` on vectors, `ns` the arities of the `d_i`.
    /// `None` when the output arity exceeds the truncation.
    pub fn compose(&self, c: &SparseVec, ns: &[usize], ds: &[&SparseVec]) -> Option<SparseVec> {
        let mut shape = vec![ns.len()];
        shape.extend_from_slice(ns);
        let mut args = vec![c];
        args.extend_from_slice(ds);
        eval_gamma(&self.coll, &self.gamma, &shape, &args)
    }

    /// `γ` on a basis tuple.
    pub fn compose_basis(&self, shape: &[usize], idx: &[usize]) -> Option<SparseVec> {
        if shape[0] > self.max_arity() || shape_total(shape) > self.max_arity() {
            return None;
        }
        let Some(m) = self.gamma.get(shape) else { return Some(SparseVec::zero()) };
        Some(m.column(flat_index(idx, &input_dims(&self.coll, &self.coll, shape))).clone())
    }

    /// `c ∘_i d`: insert `d ∈ P(m)` into input `i` (0-based) of `c ∈ P(k)`.
    pub fn partial_compose(&self, i: usize, k: usize, c: &SparseVec, m: usize, d: &SparseVec) -> Option<SparseVec> {
        let mut ns = vec![1; k];
        ns[i] = m;
        let mut ds: Vec<&SparseVec> = vec![&self.unit; k];
        ds[i] = d;
        self.compose(c, &ns, &ds)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        self.check_axioms_with(CheckOptions::default())
    }

    pub fn check_axioms_with(&self, opts: CheckOptions) -> AxiomReport {
        let view =
            ActionView { p: &self.coll, p_unit: &self.unit, gamma: &self.gamma, m: &self.coll, act: &self.gamma };
        let mut report = AxiomReport::default();
        let mut count = 0;
        let mut failure = None;
        for k in 0..=self.max_arity() {
            let ns = vec![1; k];
            let units = vec![&self.unit; k];
            for c in 0..self.dim(k) {
                count += 1;
                let got = self.compose(&SparseVec::unit(c), &ns, &units).unwrap();
                if got != SparseVec::unit(c) && failure.is_none() {
                    failure = Some(format!("γ(c; u, .., u) != c at arity {k}, basis vector {}", c + 1));
                }
            }
        }
        report.push("right unit", count, failure);
        let mut rest = check_action(&view, opts);
        // left unit first, as in the usual statement of the axioms
        let left = rest.outcomes.remove(0);
        report.outcomes.insert(0, left);
        report.extend(rest);
        report
    }

    /// Arities above `d` replaced by zero.
    pub fn truncate(&self, d: usize) -> Operad {
        let coll = self.coll.truncate_above(d);
        let maps = self
            .gamma
            .iter()
            .filter(|(s, _)| s[0] <= d && shape_total(s) <= d && s[1..].iter().all(|&n| n <= d))
            .map(|(s, m)| (s.clone(), m.clone()))
            .collect();
        Operad { coll, unit: self.unit.clone(), gamma: ShapeMaps::new(self.max_arity(), maps) }
    }

    /// Forget arities above `n`.
    pub fn restrict_max(&self, n: usize) -> Operad {
        let coll = self.coll.restrict_max(n);
        let maps = self
            .gamma
            .iter()
            .filter(|(s, _)| s[0] <= n && shape_total(s) <= n)
            .map(|(s, m)| (s.clone(), m.clone()))
            .collect();
        Operad { coll, unit: self.unit.clone(), gamma: ShapeMaps::new(n, maps) }
    }

    /// The sub-operad spanned aritywise by the given vectors, in the basis
    /// they form. Fails unless the span is `Σ`-stable, contains the unit and
    /// is closed under `γ`.
    pub fn sub_operad(&self, spans: &[Vec<SparseVec>]) -> Result<Operad> {
        if spans.len() != self.max_arity() + 1 {
            return Err(Error::DimensionMismatch("one spanning set per arity expected".into()));
        }
        let mut trackers = Vec::new();
        for (n, vs) in spans.iter().enumerate() {
            let mut t = SpanTracker::new();
            for v in vs {
                if t.insert(v.clone()).is_none() {
                    return Err(Error::Precondition(format!("spanning vectors at arity {n} are dependent")));
                }
            }
            trackers.push(t);
        }
        let coords = |n: usize, v: &SparseVec, what: &str| -> Result<SparseVec> {
            trackers[n].coordinates(v).ok_or_else(|| Error::Precondition(format!("{what} leaves the span at arity {n}")))
        };
        let mut reps = Vec::new();
        for (n, vs) in spans.iter().enumerate() {
            let gens = self
                .rep(n)
                .generators()
                .iter()
                .map(|g| Ok(Matrix::from_columns(vs.len(), vs.iter().map(|v| coords(n, &g.apply(v), "Σ-action")).collect::<Result<_>>()?)))
                .collect::<Result<Vec<_>>>()?;
            reps.push(SymRep::from_generators_unchecked(n, vs.len(), gens));
        }
        let coll = Collection::new(reps, self.coll.support())?;
        let unit = coords(1, &self.unit, "unit")?;
        let mut maps = BTreeMap::new();
        for shape in crate::axioms::enumerate_shapes(&coll, &coll, self.max_arity(), self.max_arity()) {
            let dims = input_dims(&coll, &coll, &shape);
            let total: usize = dims.iter().product();
            if total == 0 {
                continue;
            }
            let n = shape_total(&shape);
            let mut cols = Vec::with_capacity(total);
            for j in 0..total {
                let idx = unflatten(j, &dims);
                let args: Vec<&SparseVec> = idx.iter().zip(&shape).map(|(&i, &a)| &spans[a][i]).collect();
                let v = eval_gamma(&self.coll, &self.gamma, &shape, &args).unwrap_or_default();
                cols.push(coords(n, &v, "composition")?);
            }
            maps.insert(shape, Matrix::from_columns(coll.dim(n), cols));
        }
        Operad::from_parts(coll, unit, maps)
    }

    /// Replace one entry of one composition map.
    pub fn with_gamma_entry(&self, shape: &[usize], row: usize, col: usize, value: crate::linalg::Q) -> Result<Operad> {
        let mut out = self.clone();
        let m = out
            .gamma
            .get_mut(shape)
            .ok_or_else(|| Error::OperadMismatch(format!("no composition map at shape {shape:?}")))?;
        if row >= m.nrows() || col >= m.ncols() {
            return Err(Error::DimensionMismatch("entry outside the map".into()));
        }
        m.set(row, col, value);
        Ok(out)
    }

    /// Replace the unit.
    pub fn with_unit(&self, unit: SparseVec) -> Operad {
        Operad { unit, ..self.clone() }
    }
}

fn ass_collection(n: usize, positive: bool) -> Result<Collection> {
    let reps = (0..=n)
        .map(|k| if positive && k == 0 { Ok(SymRep::zero(0)) } else { SymRep::regular(k) })
        .collect::<Result<Vec<_>>>()?;
    Collection::new(reps, Support::Truncated)
}

fn ass_impl(n: usize, positive: bool) -> Result<Operad> {
    if n < 1 {
        return Err(Error::Precondition("maximal arity must be at least 1".into()));
    }
    let coll = ass_collection(n, positive)?;
    let perms: Vec<Vec<Permutation>> = (0..=n).map(enumerate_group).collect::<Result<_>>()?;
    Ok(Operad::from_fn(coll, SparseVec::unit(0), |shape, idx| {
        let k = shape[0];
        let w = &perms[k][idx[0]];
        let mut offsets = vec![0; k + 1];
        for i in 0..k {
            offsets[i + 1] = offsets[i] + shape[i + 1];
        }
        let mut images = Vec::with_capacity(offsets[k]);
        for p in 0..k {
            let b = w.apply(p);
            let d = &perms[shape[b + 1]][idx[b + 1]];
            images.extend(d.images().iter().map(|&t| offsets[b] + t));
        }
        SparseVec::unit(Permutation::from_vec_unchecked(images).lex_rank())
    }))
}

/// `Ass(n) = Q[Σ_n]`, the word `x_w(1) .. x_w(n)` for `w ∈ Σ_n`; composition
/// substitutes words.
pub fn ass_operad(n: usize) -> Result<Operad> {
    ass_impl(n, false)
}

/// `Ass` with `Ass(0) = 0`.
pub fn ass_positive(n: usize) -> Result<Operad> {
    ass_impl(n, true)
}

fn com_impl(n: usize, positive: bool) -> Result<Operad> {
    if n < 1 {
        return Err(Error::Precondition("maximal arity must be at least 1".into()));
    }
    let reps = (0..=n).map(|k| if positive && k == 0 { SymRep::zero(0) } else { SymRep::trivial(k) }).collect();
    let coll = Collection::new(reps, Support::Truncated)?;
    Ok(Operad::from_fn(coll, SparseVec::unit(0), |_, _| SparseVec::unit(0)))
}

/// `Com(n)` the trivial line, composition the product of scalars.
pub fn com_operad(n: usize) -> Result<Operad> {
    com_impl(n, false)
}

/// `Com` with `Com(0) = 0`.
pub fn com_positive(n: usize) -> Result<Operad> {
    com_impl(n, true)
}

/// The operad structure on the unit collection.
pub fn initial_positive(n: usize) -> Result<Operad> {
    if n < 1 {
        return Err(Error::Precondition("maximal arity must be at least 1".into()));
    }
    Ok(Operad::from_fn(crate::collections::unit_collection(n), SparseVec::unit(0), |_, _| SparseVec::unit(0)))
}

/// `S` in arities 0 and 1, zero above.
pub fn initial_reduced(n: usize) -> Result<Operad> {
    if n < 1 {
        return Err(Error::Precondition("maximal arity must be at least 1".into()));
    }
    let reps = (0..=n).map(|k| if k <= 1 { SymRep::trivial(k) } else { SymRep::zero(k) }).collect();
    let coll = Collection::new(reps, Support::Finite)?;
    Ok(Operad::from_fn(coll, SparseVec::unit(0), |_, _| SparseVec::unit(0)))
}

/// Aritywise tensor product; basis `(p, q) ↦ p·dim Q(n) + q`.
pub fn hadamard_operad(p: &Operad, q: &Operad) -> Result<Operad> {
    let n = p.max_arity().min(q.max_arity());
    let (p, q) = (p.restrict_max(n), q.restrict_max(n));
    let coll = hadamard_coll(p.collection(), q.collection())?;
    let unit = p.unit.kron(&q.unit, q.dim(1));
    Ok(Operad::from_fn(coll, unit, |shape, idx| {
        let mut pi = Vec::with_capacity(idx.len());
        let mut qi = Vec::with_capacity(idx.len());
        for (&i, &a) in idx.iter().zip(shape) {
            pi.push(i / q.dim(a));
            qi.push(i % q.dim(a));
        }
        let out = shape_total(shape);
        let a = p.compose_basis(shape, &pi).unwrap_or_default();
        let b = q.compose_basis(shape, &qi).unwrap_or_default();
        a.kron(&b, q.dim(out))
    }))
}

/// Aritywise equivariant maps commuting with units and composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadMorphism {
    source: Operad,
    target: Operad,
    components: Vec<Matrix>,
}

impl OperadMorphism {
    pub fn new(source: Operad, target: Operad, components: Vec<Matrix>) -> Result<Self> {
        let n = source.max_arity().min(target.max_arity());
        if components.len() != n + 1 {
            return Err(Error::OperadMismatch(format!("expected {} components, found {}", n + 1, components.len())));
        }
        for (k, m) in components.iter().enumerate() {
            if m.nrows() != target.dim(k) || m.ncols() != source.dim(k) {
                return Err(Error::DimensionMismatch(format!(
                    "component {k} is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    target.dim(k),
                    source.dim(k)
                )));
            }
        }
        Ok(OperadMorphism { source, target, components })
    }

    pub fn from_fn(source: Operad, target: Operad, f: impl Fn(usize, usize) -> SparseVec) -> Result<Self> {
        let n = source.max_arity().min(target.max_arity());
        let components = (0..=n)
            .map(|k| Matrix::from_columns(target.dim(k), (0..source.dim(k)).map(|i| f(k, i)).collect()))
            .collect();
        Self::new(source, target, components)
    }

    pub fn identity(p: &Operad) -> Self {
        let components = (0..=p.max_arity()).map(|k| Matrix::identity(p.dim(k))).collect();
        OperadMorphism { source: p.clone(), target: p.clone(), components }
    }

    pub fn source(&self) -> &Operad {
        &self.source
    }

    pub fn target(&self) -> &Operad {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Matrix {
        &self.components[k]
    }

    pub fn max_arity(&self) -> usize {
        self.components.len() - 1
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &OperadMorphism) -> Result<OperadMorphism> {
        let n = self.max_arity().min(other.max_arity());
        let components = (0..=n).map(|k| self.components[k].mul(&other.components[k])).collect::<Result<_>>()?;
        Self::new(other.source.clone(), self.target.clone(), components)
    }

    pub fn check(&self) -> AxiomReport {
        self.check_with(CheckOptions::default())
    }

    pub fn check_with(&self, opts: CheckOptions) -> AxiomReport {
        let mut report = AxiomReport::default();
        let n = self.max_arity();
        let mut count = 0;
        let mut failure = None;
        for k in 0..=n {
            let (s, t) = (self.source.rep(k), self.target.rep(k));
            for (i, (gs, gt)) in s.generators().iter().zip(t.generators()).enumerate() {
                count += 1;
                if failure.is_none() && self.components[k].mul_unchecked(gs) != gt.mul_unchecked(&self.components[k]) {
                    failure = Some(format!("f s_{} != s_{} f at arity {k}", i + 1, i + 1));
                }
            }
        }
        report.push("equivariance", count, failure);
        let unit_ok = self.components[1].apply(self.source.unit()) == *self.target.unit();
        report.push("unit", 1, (!unit_ok).then(|| "f(u) != u".to_string()));

        let mut count = 0;
        let mut failure = None;
        let choice = |k: usize| -> Vec<usize> {
            if opts.exhaustive {
                (0..self.source.dim(k)).collect()
            } else {
                module_generators(self.source.rep(k))
            }
        };
        let gens: Vec<Vec<usize>> = (0..=n).map(choice).collect();
        'shapes: for (shape, _) in self.source.gamma().iter() {
            if shape[0] > n || shape_total(shape) > n {
                continue;
            }
            let ranges: Vec<&Vec<usize>> =
                std::iter::once(&gens[shape[0]]).chain(shape[1..].iter().map(|&a| &gens[a])).collect();
            let mut idx = vec![0usize; ranges.len()];
            if ranges.iter().any(|r| r.is_empty()) {
                continue;
            }
            loop {
                count += 1;
                let basis: Vec<usize> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
                let lhs = self.components[shape_total(shape)].apply(&self.source.compose_basis(shape, &basis).unwrap());
                let images: Vec<SparseVec> = basis
                    .iter()
                    .zip(shape.iter())
                    .map(|(&b, &a)| self.components[a].column(b).clone())
                    .collect();
                let refs: Vec<&SparseVec> = images.iter().collect();
                let rhs = eval_gamma(self.target.collection(), self.target.gamma(), shape, &refs).unwrap();
                if lhs != rhs {
                    failure = Some(format!(
                        "f(γ(c; d)) != γ(f c; f d) at shape {}, basis ({})",
                        crate::axioms::fmt_shape(shape),
                        basis.iter().map(|b| (b + 1).to_string()).collect::<Vec<_>>().join(",")
                    ));
                    break 'shapes;
                }
                // odometer
                let mut t = idx.len();
                loop {
                    if t == 0 {
                        continue 'shapes;
                    }
                    t -= 1;
                    idx[t] += 1;
                    if idx[t] < ranges[t].len() {
                        break;
                    }
                    idx[t] = 0;
                }
            }
        }
        report.push("composition", count, failure);
        report
    }
}

/// `Ass -> Com`, every permutation to 1.
pub fn fold_morphism(n: usize) -> Result<OperadMorphism> {
    OperadMorphism::from_fn(ass_operad(n)?, com_operad(n)?, |_, _| SparseVec::unit(0))
}

/// Result of checking a retraction `P -> P ∧ Ass -> P`.
pub fn sigma_split_verify(p: &Operad, iota: &OperadMorphism, rho: &OperadMorphism) -> Result<AxiomReport> {
    let n = p.max_arity();
    let pa = hadamard_operad(p, &ass_operad(n)?)?;
    for (name, m, src, dst) in [("iota", iota, p, &pa), ("rho", rho, &pa, p)] {
        if m.max_arity() != n || m.source().collection().dims() != src.collection().dims()
            || m.target().collection().dims() != dst.collection().dims()
        {
            return Err(Error::OperadMismatch(format!("{name} does not have the expected source and target")));
        }
    }
    let mut report = AxiomReport::default();
    for (name, m) in [("iota", iota), ("rho", rho)] {
        for mut o in m.check().outcomes {
            o.family = format!("{name} {}", o.family);
            report.outcomes.push(o);
        }
    }
    let mut failure = None;
    for k in 0..=n {
        let comp = rho.component(k).mul(iota.component(k))?;
        if !comp.is_identity() {
            failure = Some(format!("rho∘iota != id at arity {k}"));
            break;
        }
    }
    report.push("retraction", n + 1, failure);
    Ok(report)
}

/// `σ ↦ σ ⊗ σ` into `Ass ∧ Ass`.
pub fn ass_split_iota(n: usize) -> Result<OperadMorphism> {
    let a = ass_operad(n)?;
    let aa = hadamard_operad(&a, &a)?;
    OperadMorphism::from_fn(a.clone(), aa, |k, i| SparseVec::unit(i * a.dim(k) + i))
}

/// `σ ⊗ τ ↦ σ`.
pub fn ass_split_rho(n: usize) -> Result<OperadMorphism> {
    let a = ass_operad(n)?;
    let aa = hadamard_operad(&a, &a)?;
    OperadMorphism::from_fn(aa, a.clone(), |k, i| SparseVec::unit(i / a.dim(k)))
}

/// `1 ↦ (1/n!) Σ_σ 1 ⊗ σ`, the averaging section on underlying collections.
pub fn com_split_iota(n: usize) -> Result<OperadMorphism> {
    let c = com_operad(n)?;
    let a = ass_operad(n)?;
    let ca = hadamard_operad(&c, &a)?;
    OperadMorphism::from_fn(c, ca, |k, _| {
        let d = a.dim(k);
        let w = crate::linalg::Q::new(1.into(), d.into());
        SparseVec::from_entries((0..d).map(|i| (i, w.clone())))
    })
}

/// `1 ⊗ σ ↦ 1`.
pub fn com_split_rho(n: usize) -> Result<OperadMorphism> {
    let c = com_operad(n)?;
    let ca = hadamard_operad(&c, &ass_operad(n)?)?;
    OperadMorphism::from_fn(ca, c, |_, _| SparseVec::unit(0))
}

/// The isomorphism `Com ∧ P -> P`.
pub fn com_hadamard_iso(p: &Operad) -> Result<OperadMorphism> {
    let cp = hadamard_operad(&com_operad(p.max_arity())?, p)?;
    OperadMorphism::from_fn(cp, p.clone(), |_, i| SparseVec::unit(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn ass_and_com_pass() {
        let a = ass_operad(4).unwrap();
        assert_eq!(a.collection().dims(), vec![1, 1, 2, 6, 24]);
        let r = a.check_axioms();
        assert!(r.passed(), "{r}");
        let c = com_operad(4).unwrap();
        assert_eq!(c.dim(3), 1);
        assert!(c.check_axioms().passed());
        for shape in c.gamma().iter().map(|(s, _)| s) {
            assert_eq!(c.compose_basis(shape, &vec![0; shape.len()]).unwrap(), SparseVec::unit(0));
        }
    }

    #[test]
    fn exhaustive_agrees_on_small_cases() {
        let opts = CheckOptions { exhaustive: true };
        assert!(ass_operad(3).unwrap().check_axioms_with(opts).passed());
        assert!(com_operad(3).unwrap().check_axioms_with(opts).passed());
        let bad = com_operad(3).unwrap().with_gamma_entry(&[2, 2, 1], 0, 0, q(2)).unwrap();
        assert!(!bad.check_axioms_with(opts).passed());
    }

    #[test]
    fn unit_composition() {
        let a = ass_operad(2).unwrap();
        assert_eq!(a.compose(a.unit(), &[1], &[a.unit()]).unwrap(), *a.unit());
    }

    #[test]
    fn ass_partial_composition() {
        // x1 x2 ∘_1 x1 x2 = x1 x2 x3; x2 x1 ∘_1 x1 x2 = x3 x1 x2
        let a = ass_operad(3).unwrap();
        let id2 = SparseVec::unit(0);
        let swap = SparseVec::unit(1);
        let r = a.partial_compose(0, 2, &id2, 2, &id2).unwrap();
        assert_eq!(r, SparseVec::unit(0));
        let r = a.partial_compose(0, 2, &swap, 2, &id2).unwrap();
        let p = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        assert_eq!(r, SparseVec::unit(p.lex_rank()));
    }

    fn failing(r: &AxiomReport) -> Vec<&str> {
        r.outcomes.iter().filter(|o| o.failure.is_some()).map(|o| o.family.as_str()).collect()
    }

    #[test]
    fn mutations_are_detected() {
        let a = ass_operad(4).unwrap();
        let c = com_operad(4).unwrap();
        let r = a.with_unit(SparseVec::single(0, q(2))).check_axioms();
        assert!(failing(&r).contains(&"left unit"));
        let r = c.with_gamma_entry(&[3, 1, 1, 1], 0, 0, q(2)).unwrap().check_axioms();
        assert!(failing(&r).contains(&"right unit"));
        let r = a.with_gamma_entry(&[2, 1, 2], 0, 0, q(2)).unwrap().check_axioms();
        assert!(failing(&r).contains(&"block equivariance"));
        let r = a.with_gamma_entry(&[1, 2], 0, 1, q(1)).unwrap().check_axioms();
        assert!(failing(&r).contains(&"slot equivariance"));
        let r = c.with_gamma_entry(&[2, 2, 2], 0, 0, q(2)).unwrap().check_axioms();
        assert_eq!(failing(&r), vec!["associativity"]);
        assert!(r.first_failure().unwrap().contains("γ(γ(c; d); x)"));
    }

    #[test]
    fn hadamard_products() {
        let a = ass_operad(3).unwrap();
        let aa = hadamard_operad(&a, &a).unwrap();
        assert_eq!(aa.dim(3), 36);
        assert!(aa.check_axioms().passed());
        let ac = hadamard_operad(&a, &com_operad(3).unwrap()).unwrap();
        assert_eq!(ac.collection().dims(), vec![1, 1, 2, 6]);
        let iso = com_hadamard_iso(&a).unwrap();
        assert!(iso.check().passed());
    }

    #[test]
    fn sigma_split_for_ass() {
        let n = 4;
        let r = sigma_split_verify(&ass_operad(n).unwrap(), &ass_split_iota(n).unwrap(), &ass_split_rho(n).unwrap()).unwrap();
        assert!(r.passed(), "{r}");
        let mut bad = ass_split_rho(n).unwrap();
        bad.components[2].set(0, 0, q(-1));
        let r = sigma_split_verify(&ass_operad(n).unwrap(), &ass_split_iota(n).unwrap(), &bad).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn averaging_section_of_com_is_not_an_operad_map() {
        let n = 3;
        let iota = com_split_iota(n).unwrap();
        let r = iota.check();
        assert!(r.family("equivariance").unwrap().failure.is_none());
        assert!(r.family("composition").unwrap().failure.is_some());
        let r = sigma_split_verify(&com_operad(n).unwrap(), &iota, &com_split_rho(n).unwrap()).unwrap();
        assert!(r.family("retraction").unwrap().failure.is_none());
        assert!(!r.passed());
    }

    #[test]
    fn truncation_and_initial_operads() {
        assert_eq!(initial_reduced(3).unwrap().collection().dims(), vec![1, 1, 0, 0]);
        assert!(initial_reduced(3).unwrap().check_axioms().passed());
        assert!(initial_positive(3).unwrap().check_axioms().passed());
        let t = ass_operad(4).unwrap().truncate(2);
        assert_eq!(t.collection().dims(), vec![1, 1, 2, 0, 0]);
        // γ(x1 x2; x1 x2, ∅) lands in arity 2 but γ(x1x2; x1x2, x1) is gone:
        // associativity through arity 3 breaks when Ass(0) is present
        assert!(!t.check_axioms().passed());
        let tp = ass_positive(4).unwrap().truncate(2);
        assert!(tp.check_axioms().passed());
    }

    #[test]
    fn positive_versions_are_sub_operads() {
        let a = ass_operad(3).unwrap();
        let spans: Vec<Vec<SparseVec>> =
            (0..=3).map(|n| if n == 0 { vec![] } else { (0..a.dim(n)).map(SparseVec::unit).collect() }).collect();
        let sub = a.sub_operad(&spans).unwrap();
        assert_eq!(sub, ass_positive(3).unwrap());
    }

    #[test]
    fn fold_is_a_morphism() {
        assert!(fold_morphism(4).unwrap().check().passed());
        let id = OperadMorphism::identity(&ass_operad(3).unwrap());
        assert!(id.check().passed());
    }
}
