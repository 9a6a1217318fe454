//! Left modules over operads, algebras, truncated forms, free modules and
//! base change.
//!
//! A left module action is stored like `γ`: one matrix per shape
//! `(k; n_1, .., n_k)`, mapping `P(k) ⊗ M(n_1) ⊗ .. ⊗ M(n_k) -> M(n)`.

use std::collections::BTreeMap;

use crate::axioms::{
    check_action, input_dims, shape_total, ActionView, AxiomReport, CheckOptions, Shape, ShapeMaps,
};
use crate::collections::{circ, circ_part, BlockCoinvariants, CircProduct, Collection, Support};
use crate::error::{Error, Result};
use crate::linalg::{unflatten, Matrix, SparseVec};
use crate::linrep::{EquivariantMap, SymRep};
use crate::operads::{Operad, OperadMorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    operad: Operad,
    underlying: Collection,
    action: ShapeMaps,
}

impl LeftModule {
    pub fn new(operad: Operad, underlying: Collection, action: BTreeMap<Shape, Matrix>) -> Result<Self> {
        for (shape, m) in &action {
            if shape.is_empty() || shape.len() != shape[0] + 1 {
                return Err(Error::DimensionMismatch(format!("invalid shape {shape:?}")));
            }
            let dims = input_dims(operad.collection(), &underlying, shape);
            let total = shape_total(shape);
            if total > underlying.max_arity()
                || m.ncols() != dims.iter().product::<usize>()
                || m.nrows() != underlying.dim(total)
            {
                return Err(Error::DimensionMismatch(format!("action map at shape {shape:?} has the wrong size")));
            }
        }
        let max_outer = operad.max_arity();
        Ok(LeftModule { operad, underlying, action: ShapeMaps::new(max_outer, action) })
    }

    /// Tabulate the action from its values on basis tuples.
    pub fn from_fn(
        operad: Operad,
        underlying: Collection,
        f: impl Fn(&[usize], &[usize]) -> SparseVec + Sync,
    ) -> Self {
        let action = ShapeMaps::tabulate(operad.collection(), &underlying, operad.max_arity(), f);
        LeftModule { operad, underlying, action }
    }

    /// `P` acting on itself by `γ`.
    pub fn operad_as_module(p: &Operad) -> Self {
        LeftModule { operad: p.clone(), underlying: p.collection().clone(), action: p.gamma().clone() }
    }

    pub fn operad(&self) -> &Operad {
        &self.operad
    }

    pub fn underlying(&self) -> &Collection {
        &self.underlying
    }

    pub fn action(&self) -> &ShapeMaps {
        &self.action
    }

    pub fn max_arity(&self) -> usize {
        self.underlying.max_arity()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.underlying.dim(n)
    }

    fn view(&self) -> ActionView<'_> {
        ActionView {
            p: self.operad.collection(),
            p_unit: self.operad.unit(),
            gamma: self.operad.gamma(),
            m: &self.underlying,
            act: &self.action,
        }
    }

    /// `μ(c; m_1, .., m_k)`; `None` outside the stored range.
    pub fn act(&self, c: &SparseVec, ns: &[usize], ms: &[&SparseVec]) -> Option<SparseVec> {
        let mut shape = vec![ns.len()];
        shape.extend_from_slice(ns);
        let mut args = vec![c];
        args.extend_from_slice(ms);
        self.view().eval(&shape, &args)
    }

    pub fn check(&self) -> AxiomReport {
        self.check_with(CheckOptions::default())
    }

    pub fn check_with(&self, opts: CheckOptions) -> AxiomReport {
        check_action(&self.view(), opts)
    }

    /// Add `value` to one entry of the action at `shape`, for mutation tests.
    pub fn with_action_entry(&self, shape: &[usize], row: usize, col: usize, value: crate::linalg::Q) -> Result<Self> {
        let mut out = self.clone();
        let m = out
            .action
            .get_mut(shape)
            .ok_or_else(|| Error::DimensionMismatch(format!("no action stored at shape {shape:?}")))?;
        let old = m.get(row, col);
        m.set(row, col, old + value);
        Ok(out)
    }
}

pub fn check_left_module(m: &LeftModule) -> AxiomReport {
    m.check()
}

/// `P ∘ X` with `P` acting through `γ` on the outer factor.
pub fn free_left_module(p: &Operad, x: &Collection, max_arity: usize) -> Result<LeftModule> {
    let prod = circ(p.collection(), x, max_arity)?;
    let underlying = prod.collection().clone();
    let reps: Vec<Vec<(usize, usize, Vec<usize>, Vec<usize>)>> =
        (0..=max_arity).map(|n| (0..underlying.dim(n)).map(|j| prod.representative(n, j)).collect()).collect();
    let module = LeftModule::from_fn(p.clone(), underlying, |shape, idx| {
        free_action(p, &prod, &reps, shape, idx)
    });
    Ok(module)
}

fn free_action(
    p: &Operad,
    prod: &CircProduct,
    reps: &[Vec<(usize, usize, Vec<usize>, Vec<usize>)>],
    shape: &[usize],
    idx: &[usize],
) -> SparseVec {
    let k = shape[0];
    let mut ks = Vec::with_capacity(k);
    let mut cs = Vec::with_capacity(k);
    let mut big_f = Vec::new();
    let mut big_x = Vec::new();
    let mut koff = 0;
    for l in 0..k {
        let (kl, a, f, x) = &reps[shape[l + 1]][idx[l + 1]];
        ks.push(*kl);
        cs.push(SparseVec::unit(*a));
        big_f.extend(f.iter().map(|b| koff + b));
        big_x.extend_from_slice(x);
        koff += kl;
    }
    let refs: Vec<&SparseVec> = cs.iter().collect();
    // outer arities beyond a finite operad's support vanish
    let Some(c) = p.compose(&SparseVec::unit(idx[0]), &ks, &refs) else { return SparseVec::zero() };
    prod.class_of(shape_total(shape), koff, &c, &big_f, &big_x)
}

/// An algebra: a space `A` with maps `P(n) ⊗ A^{⊗n} -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraOver {
    operad: Operad,
    carrier_dim: usize,
    /// Arity `n` map; columns indexed by `(p, a_1, .., a_n)`, `p` slowest.
    action: Vec<Matrix>,
    truncated: bool,
}

impl AlgebraOver {
    pub fn new(operad: Operad, carrier_dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != operad.max_arity() + 1 {
            return Err(Error::DimensionMismatch("one action map per operad arity".into()));
        }
        for (n, m) in action.iter().enumerate() {
            let cols = operad.dim(n) * carrier_dim.pow(n as u32);
            if m.nrows() != carrier_dim || m.ncols() != cols {
                return Err(Error::DimensionMismatch(format!("action map in arity {n} has the wrong size")));
            }
        }
        Ok(AlgebraOver { operad, carrier_dim, action, truncated: false })
    }

    pub fn operad(&self) -> &Operad {
        &self.operad
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn action(&self, n: usize) -> &Matrix {
        &self.action[n]
    }

    /// True when the carrier was cut off at a finite arity.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn to_module(&self) -> LeftModule {
        let n = self.operad.max_arity();
        let reps = (0..=n).map(|k| if k == 0 { SymRep::new(0, self.carrier_dim, vec![]).unwrap() } else { SymRep::zero(k) });
        let underlying = Collection::new(reps.collect(), Support::Finite).expect("degrees match");
        let action = (0..=n)
            .filter(|&k| self.action[k].ncols() > 0)
            .map(|k| {
                let mut shape = vec![k];
                shape.extend(std::iter::repeat(0).take(k));
                (shape, self.action[k].clone())
            })
            .collect();
        LeftModule { operad: self.operad.clone(), underlying, action: ShapeMaps::new(n, action) }
    }

    pub fn from_module(m: &LeftModule) -> Result<Self> {
        if (1..=m.max_arity()).any(|n| m.dim(n) > 0) {
            return Err(Error::Precondition("module is not concentrated in arity 0".into()));
        }
        let d = m.dim(0);
        let action = (0..=m.operad.max_arity())
            .map(|k| {
                let mut shape = vec![k];
                shape.extend(std::iter::repeat(0).take(k));
                let cols = m.operad.dim(k) * d.pow(k as u32);
                m.action.get(&shape).cloned().unwrap_or_else(|| Matrix::zeros(d, cols))
            })
            .collect();
        AlgebraOver::new(m.operad.clone(), d, action)
    }

    pub fn check(&self) -> AxiomReport {
        self.to_module().check()
    }
}

/// Free algebra `⊕_{n ≤ N} P(n) ⊗_{Σ_n} V^{⊗n}` on a space of dimension
/// `dim_v`, with components above `N` dropped.
pub struct SchurAlgebra {
    pub algebra: AlgebraOver,
    /// Dimension of each component `n = 0..=N`.
    pub component_dims: Vec<usize>,
}

/// Largest number of columns an action matrix of a Schur algebra may have.
const SCHUR_ACTION_LIMIT: usize = 1 << 22;

fn schur_parts(p: &Operad, dim_v: usize, max_arity: usize) -> Result<Vec<Option<BlockCoinvariants>>> {
    let v = vec![SymRep::new(0, dim_v, vec![])?];
    (0..=max_arity.min(p.max_arity())).map(|k| circ_part(p.rep(k), &v, 0, k)).collect()
}

/// Dimensions of `P(n) ⊗_{Σ_n} V^{⊗n}` for `n = 0..=N`, without the
/// algebra structure.
pub fn schur_component_dims(p: &Operad, dim_v: usize, max_arity: usize) -> Result<Vec<usize>> {
    Ok(schur_parts(p, dim_v, max_arity)?.iter().map(|c| c.as_ref().map_or(0, |c| c.dim())).collect())
}

pub fn schur_functor(p: &Operad, dim_v: usize, max_arity: usize) -> Result<SchurAlgebra> {
    let n_max = max_arity.min(p.max_arity());
    let parts = schur_parts(p, dim_v, max_arity)?;
    let component_dims: Vec<usize> = parts.iter().map(|c| c.as_ref().map_or(0, |c| c.dim())).collect();
    let mut offsets = vec![0];
    for d in &component_dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    let carrier = *offsets.last().unwrap();
    // (component, outer index, V-tuple) behind each carrier basis vector
    let mut reps = Vec::with_capacity(carrier);
    for (k, part) in parts.iter().enumerate() {
        if let Some(part) = part {
            for j in 0..part.dim() {
                let (a, _, x) = part.representative(j);
                reps.push((k, a, x));
            }
        }
    }
    for m in 0..=p.max_arity() {
        let total = u32::try_from(m).ok().and_then(|e| carrier.checked_pow(e)).and_then(|c| c.checked_mul(p.dim(m)));
        if total.is_none_or(|t| t > SCHUR_ACTION_LIMIT) {
            return Err(Error::Precondition(format!(
                "the arity {m} action on a {carrier}-dimensional carrier is too large to build"
            )));
        }
    }
    let action = (0..=p.max_arity())
        .map(|m| {
            let dims: Vec<usize> = std::iter::once(p.dim(m)).chain(std::iter::repeat(carrier).take(m)).collect();
            let total: usize = dims.iter().product();
            let cols = (0..total)
                .map(|col| {
                    let idx = unflatten(col, &dims);
                    let mut ks = Vec::with_capacity(m);
                    let mut cs = Vec::with_capacity(m);
                    let mut xs = Vec::new();
                    for &i in &idx[1..] {
                        let (k, a, x) = &reps[i];
                        ks.push(*k);
                        cs.push(SparseVec::unit(*a));
                        xs.extend_from_slice(x);
                    }
                    let big_k: usize = ks.iter().sum();
                    if big_k > n_max {
                        return SparseVec::zero();
                    }
                    let refs: Vec<&SparseVec> = cs.iter().collect();
                    let Some(c) = p.compose(&SparseVec::unit(idx[0]), &ks, &refs) else { return SparseVec::zero() };
                    let Some(part) = &parts[big_k] else { return SparseVec::zero() };
                    // the only cell sends no inputs anywhere
                    let Some(v) = part.space().index_of(&[], &xs) else { return SparseVec::zero() };
                    let off = offsets[big_k];
                    part.class_of(&c, v).reindex(|i| i + off)
                })
                .collect();
            Matrix::from_columns(carrier, cols)
        })
        .collect();
    let mut algebra = AlgebraOver::new(p.clone(), carrier, action)?;
    algebra.truncated = dim_v > 0 && (n_max < p.max_arity() || !p.collection().is_finite());
    Ok(SchurAlgebra { algebra, component_dims })
}

/// A module vanishing above arity `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DForm {
    pub module: LeftModule,
    pub order: usize,
}

/// Quotient by the submodule of arities above `d`.
pub fn d_form_truncate(m: &LeftModule, d: usize) -> DForm {
    let underlying = m.underlying.truncate_above(d);
    let action = m.action.iter().filter(|(s, _)| shape_total(s) <= d).map(|(s, a)| (s.clone(), a.clone())).collect();
    let module = LeftModule { operad: m.operad.clone(), underlying, action: ShapeMaps::new(m.action.max_outer(), action) };
    DForm { module, order: d }
}

/// `φ^* M`: the `Q`-module `M` viewed over `P` through `φ: P -> Q`.
pub fn restrict_module(phi: &OperadMorphism, m: &LeftModule) -> Result<LeftModule> {
    if phi.target() != &m.operad {
        return Err(Error::OperadMismatch("module is not over the target of the morphism".into()));
    }
    let p = phi.source().clone();
    if p.max_arity() > phi.max_arity() {
        return Err(Error::OperadMismatch("morphism does not cover every arity of its source".into()));
    }
    let view = m.view();
    let module = LeftModule::from_fn(p.clone(), m.underlying.clone(), |shape, idx| {
        let c = phi.component(shape[0]).column(idx[0]).clone();
        let units: Vec<SparseVec> = idx[1..].iter().map(|&i| SparseVec::unit(i)).collect();
        let mut refs = vec![&c];
        refs.extend(units.iter());
        view.eval(shape, &refs).unwrap_or_default()
    });
    Ok(module)
}

/// `φ_!(P ∘ X) = Q ∘ X` and the unit `P ∘ X -> φ^* (Q ∘ X)`, aritywise.
pub fn induced_on_free(phi: &OperadMorphism, x: &Collection, max_arity: usize) -> Result<(LeftModule, Vec<Matrix>)> {
    let p = phi.source();
    let q = phi.target();
    let free_q = free_left_module(q, x, max_arity)?;
    let prod_p = circ(p.collection(), x, max_arity)?;
    let prod_q = circ(q.collection(), x, max_arity)?;
    let unit = (0..=max_arity)
        .map(|n| {
            let cols = (0..prod_p.collection().dim(n))
                .map(|j| {
                    let (k, a, f, xs) = prod_p.representative(n, j);
                    let image = phi.component(k).column(a).clone();
                    prod_q.class_of(n, k, &image, &f, &xs)
                })
                .collect();
            let m = Matrix::from_columns(prod_q.collection().dim(n), cols);
            EquivariantMap::new(prod_p.collection().rep(n).clone(), prod_q.collection().rep(n).clone(), m.clone())?;
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((free_q, unit))
}

/// Checks that aritywise maps `f_n: M(n) -> N(n)` between modules over the
/// same operad commute with the actions.
pub fn check_module_map(source: &LeftModule, target: &LeftModule, f: &[Matrix]) -> Result<bool> {
    if source.operad != target.operad {
        return Err(Error::OperadMismatch("modules over different operads".into()));
    }
    let p = source.operad.collection();
    for (shape, m) in source.action.iter() {
        let dims = input_dims(p, &source.underlying, shape);
        let total = shape_total(shape);
        if total >= f.len() || shape[1..].iter().any(|&n| n >= f.len()) {
            continue;
        }
        for col in 0..m.ncols() {
            let idx = unflatten(col, &dims);
            let lhs = f[total].apply(m.column(col));
            let c = SparseVec::unit(idx[0]);
            let imgs: Vec<SparseVec> = idx[1..].iter().zip(&shape[1..]).map(|(&i, &n)| f[n].column(i).clone()).collect();
            let mut refs = vec![&c];
            refs.extend(imgs.iter());
            let rhs = target.view().eval(shape, &refs).unwrap_or_default();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
