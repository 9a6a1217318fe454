//! Commutative Hopf objects on finite abelian monoids, the cooperad `TH`
//! with `TH(n) = H^{⊗n}`, convolution operads `P^{TH}`, their reduced
//! pullbacks over `Com`, the path-object chain, coalgebra convolution
//! modules and the hom-tensor adjunction.
//!
//! Elements of `P^{TH}(n) = Hom(H^{⊗n}, P(n))` use the basis `E_{p,t}`
//! (`t ↦ p`), index `p · d^n + t`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::axioms::{enumerate_shapes, shape_total, AxiomReport};
use crate::collections::{Collection, Support};
use crate::error::{Error, Result};
use crate::linalg::{flat_index, tensor_expand, unflatten, Matrix, SpanTracker, SparseVec, Q};
use crate::linrep::SymRep;
use crate::modalg::{AlgebraOver, LeftModule};
use crate::operads::{hadamard_operad, Operad, OperadMorphism};

/// A finite-dimensional commutative bialgebra, with an antipode when one
/// exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfObject {
    labels: Vec<String>,
    mult: Matrix,
    unit: SparseVec,
    comult: Matrix,
    counit: SparseVec,
    antipode: Option<Matrix>,
}

impl HopfObject {
    /// Validates every structure identity.
    pub fn new(
        labels: Vec<String>,
        mult: Matrix,
        unit: SparseVec,
        comult: Matrix,
        counit: SparseVec,
        antipode: Option<Matrix>,
    ) -> Result<Self> {
        let d = labels.len();
        let sizes_ok = mult.nrows() == d
            && mult.ncols() == d * d
            && comult.nrows() == d * d
            && comult.ncols() == d
            && unit.max_index().is_none_or(|i| i < d)
            && counit.max_index().is_none_or(|i| i < d)
            && antipode.as_ref().is_none_or(|s| s.nrows() == d && s.ncols() == d);
        if !sizes_ok {
            return Err(Error::InvalidHopf("structure maps have the wrong sizes".into()));
        }
        let h = HopfObject { labels, mult, unit, comult, counit, antipode };
        let report = h.check();
        if let Some(msg) = report.first_failure() {
            return Err(Error::InvalidHopf(msg.to_string()));
        }
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn counit(&self) -> &SparseVec {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mult.apply(&x.kron(y, self.dim()))
    }

    pub fn comultiply(&self, x: &SparseVec) -> SparseVec {
        self.comult.apply(x)
    }

    pub fn counit_of(&self, x: &SparseVec) -> Q {
        x.dot(&self.counit)
    }

    /// The counit as a map `H -> I`.
    pub fn folding_map(&self) -> Matrix {
        Matrix::from_columns(1, (0..self.dim()).map(|i| SparseVec::single(0, self.counit.get(i))).collect())
    }

    /// `ε^{⊗n}` as a vector of coefficients on `H^{⊗n}`.
    pub fn counit_power(&self, n: usize) -> SparseVec {
        let refs = vec![&self.counit; n];
        tensor_expand(&refs, &vec![self.dim(); n])
    }

    fn on_pairs(&self, v: &SparseVec, f: impl Fn(usize, usize) -> SparseVec) -> SparseVec {
        let d = self.dim();
        let mut out = SparseVec::zero();
        for (i, c) in v.iter() {
            out = out.add_scaled(c, &f(i / d, i % d));
        }
        out
    }

    pub fn check(&self) -> AxiomReport {
        let d = self.dim();
        let e = SparseVec::unit;
        let mut report = AxiomReport::default();
        let mut push = |name: &str, count: usize, failure: Option<String>| report.push(name, count, failure);

        let fail = (0..d * d * d).find(|&t| {
            let (i, j, k) = (t / (d * d), (t / d) % d, t % d);
            self.multiply(&self.multiply(&e(i), &e(j)), &e(k)) != self.multiply(&e(i), &self.multiply(&e(j), &e(k)))
        });
        push("associativity", d * d * d, fail.map(|t| format!("(xy)z != x(yz) at basis ({}, {}, {})", t / (d * d) + 1, (t / d) % d + 1, t % d + 1)));

        let fail = (0..d).find(|&i| self.multiply(&self.unit, &e(i)) != e(i) || self.multiply(&e(i), &self.unit) != e(i));
        push("unit", d, fail.map(|i| format!("1x != x at basis {}", i + 1)));

        let fail = (0..d * d).find(|&t| self.multiply(&e(t / d), &e(t % d)) != self.multiply(&e(t % d), &e(t / d)));
        push("commutativity", d * d, fail.map(|t| format!("xy != yx at basis ({}, {})", t / d + 1, t % d + 1)));

        let fail = (0..d).find(|&i| {
            let delta = self.comultiply(&e(i));
            let left = self.on_pairs(&delta, |a, b| self.comultiply(&e(a)).kron(&e(b), d));
            let right = self.on_pairs(&delta, |a, b| e(a).kron(&self.comultiply(&e(b)), d * d));
            left != right
        });
        push("coassociativity", d, fail.map(|i| format!("(Δ⊗1)Δ != (1⊗Δ)Δ at basis {}", i + 1)));

        let fail = (0..d).find(|&i| {
            let delta = self.comultiply(&e(i));
            let left = self.on_pairs(&delta, |a, b| e(b).scaled(&self.counit.get(a)));
            let right = self.on_pairs(&delta, |a, b| e(a).scaled(&self.counit.get(b)));
            left != e(i) || right != e(i)
        });
        push("counit", d, fail.map(|i| format!("(ε⊗1)Δ != id at basis {}", i + 1)));

        let pair_mult = |x: &SparseVec, y: &SparseVec| -> SparseVec {
            let mut out = SparseVec::zero();
            for (i, c) in x.iter() {
                for (j, c2) in y.iter() {
                    let (a, b, p, q) = (i / d, i % d, j / d, j % d);
                    let v = self.multiply(&e(a), &e(p)).kron(&self.multiply(&e(b), &e(q)), d);
                    out = out.add_scaled(&(c * c2), &v);
                }
            }
            out
        };
        let fail = (0..d * d).find(|&t| {
            let (i, j) = (t / d, t % d);
            let prod = self.multiply(&e(i), &e(j));
            self.comultiply(&prod) != pair_mult(&self.comultiply(&e(i)), &self.comultiply(&e(j)))
                || self.counit_of(&prod) != self.counit.get(i) * self.counit.get(j)
        });
        let unit_ok = self.comultiply(&self.unit) == self.unit.kron(&self.unit, d) && self.counit_of(&self.unit) == Q::one();
        let failure = fail
            .map(|t| format!("Δ(xy) != Δ(x)Δ(y) at basis ({}, {})", t / d + 1, t % d + 1))
            .or_else(|| (!unit_ok).then(|| "Δ(1) != 1⊗1 or ε(1) != 1".to_string()));
        push("bialgebra", d * d + 1, failure);

        if let Some(s) = &self.antipode {
            let fail = (0..d).find(|&i| {
                let delta = self.comultiply(&e(i));
                let target = self.unit.scaled(&self.counit.get(i));
                let left = self.on_pairs(&delta, |a, b| self.multiply(s.column(a), &e(b)));
                let right = self.on_pairs(&delta, |a, b| self.multiply(&e(a), s.column(b)));
                left != target || right != target
            });
            push("antipode", d, fail.map(|i| format!("m(S⊗1)Δ != uε at basis {}", i + 1)));
        }
        report
    }
}

/// `I[M]` for a finite abelian monoid given by its multiplication table.
/// The antipode is inversion when every element is invertible.
pub fn monoid_hopf(labels: Vec<String>, table: &[Vec<usize>], identity: usize) -> Result<HopfObject> {
    let d = labels.len();
    if table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|&x| x >= d)) || identity >= d {
        return Err(Error::InvalidHopf("multiplication table does not match the elements".into()));
    }
    let mult = Matrix::from_columns(d, (0..d * d).map(|t| SparseVec::unit(table[t / d][t % d])).collect());
    let comult = Matrix::from_columns(d * d, (0..d).map(|i| SparseVec::unit(i * d + i)).collect());
    let counit = SparseVec::from_entries((0..d).map(|i| (i, Q::one())));
    let inverses: Option<Vec<usize>> = (0..d).map(|i| (0..d).find(|&j| table[i][j] == identity)).collect();
    let antipode = inverses.map(|inv| Matrix::permutation(&inv));
    HopfObject::new(labels, mult, SparseVec::unit(identity), comult, counit, antipode)
}

/// `I[Z/m_1 × .. × Z/m_r]`, elements in mixed radix order.
pub fn group_hopf(orders: &[usize]) -> Result<HopfObject> {
    if orders.contains(&0) {
        return Err(Error::InvalidHopf("cyclic factors need positive order".into()));
    }
    let d: usize = orders.iter().product();
    let elems: Vec<Vec<usize>> = (0..d).map(|i| unflatten(i, orders)).collect();
    let labels = elems
        .iter()
        .map(|e| if e.len() == 1 { e[0].to_string() } else { format!("({})", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")) })
        .collect();
    let table: Vec<Vec<usize>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let sum: Vec<usize> = (0..orders.len()).map(|f| (elems[i][f] + elems[j][f]) % orders[f]).collect();
                    flat_index(&sum, orders)
                })
                .collect()
        })
        .collect();
    monoid_hopf(labels, &table, 0)
}

/// `I[{0, 1}]` with `{0, 1}` under multiplication, the unit being `1`.
pub fn multiplicative_z2() -> HopfObject {
    monoid_hopf(vec!["0".into(), "1".into()], &[vec![0, 0], vec![0, 1]], 1).expect("a commutative monoid")
}

/// Checks that `j: source -> target` preserves all bialgebra structure.
pub fn check_hopf_map(j: &Matrix, source: &HopfObject, target: &HopfObject) -> AxiomReport {
    let mut report = AxiomReport::default();
    let (ds, dt) = (source.dim(), target.dim());
    if j.nrows() != dt || j.ncols() != ds {
        report.push("sizes", 1, Some(format!("map is {}x{}, expected {dt}x{ds}", j.nrows(), j.ncols())));
        return report;
    }
    let e = SparseVec::unit;
    let fail = (0..ds * ds).find(|&t| {
        let (a, b) = (t / ds, t % ds);
        j.apply(&source.multiply(&e(a), &e(b))) != target.multiply(j.column(a), j.column(b))
    });
    let unit_ok = j.apply(source.unit()) == *target.unit();
    report.push(
        "multiplicative",
        ds * ds + 1,
        fail.map(|t| format!("j(xy) != j(x)j(y) at basis ({}, {})", t / ds + 1, t % ds + 1))
            .or_else(|| (!unit_ok).then(|| "j(1) != 1".to_string())),
    );
    let jj = j.kron(j);
    let fail = (0..ds).find(|&a| {
        jj.apply(&source.comultiply(&e(a))) != target.comultiply(j.column(a))
            || target.counit_of(j.column(a)) != source.counit.get(a)
    });
    report.push("comultiplicative", ds, fail.map(|a| format!("Δj != (j⊗j)Δ or εj != ε at basis {}", a + 1)));
    report
}

/// The cooperad `TH`: `TH(n) = H^{⊗n}`, cocomposition comultiplies each
/// factor, multiplies the outer copies within each block and keeps the
/// inner copies in block order.
#[derive(Clone, Debug)]
pub struct CooperadT {
    hopf: HopfObject,
    max_arity: usize,
}

type Cocomposition = HashMap<(usize, Vec<usize>), Vec<(usize, Q)>>;

impl CooperadT {
    pub fn new(hopf: &HopfObject, max_arity: usize) -> Self {
        CooperadT { hopf: hopf.clone(), max_arity }
    }

    pub fn hopf(&self) -> &HopfObject {
        &self.hopf
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn dim(&self, n: usize) -> usize {
        self.hopf.dim().pow(n as u32)
    }

    /// Terms `(coefficient, outer index, inner index per block)` of the
    /// cocomposition of basis vector `t` of `TH(n)` along `shape`.
    pub fn cocompose(&self, shape: &[usize], t: usize) -> Vec<(Q, usize, Vec<usize>)> {
        let h = &self.hopf;
        let d = h.dim();
        let n = shape_total(shape);
        let k = shape[0];
        let digits = unflatten(t, &vec![d; n]);
        // (coefficient, outer copies, inner copies)
        let mut partial: Vec<(Q, Vec<usize>, Vec<usize>)> = vec![(Q::one(), Vec::new(), Vec::new())];
        for &x in &digits {
            let delta = h.comultiply(&SparseVec::unit(x));
            let mut next = Vec::with_capacity(partial.len() * delta.nnz());
            for (c, outer, inner) in &partial {
                for (ab, c2) in delta.iter() {
                    let mut o = outer.clone();
                    o.push(ab / d);
                    let mut i = inner.clone();
                    i.push(ab % d);
                    next.push((c * c2, o, i));
                }
            }
            partial = next;
        }
        let mut acc: HashMap<(usize, Vec<usize>), Q> = HashMap::new();
        for (c, outer, inner) in partial {
            let mut blocks = Vec::with_capacity(k);
            let mut inner_idx = Vec::with_capacity(k);
            let mut pos = 0;
            for &ni in &shape[1..] {
                let prod = outer[pos..pos + ni].iter().fold(h.unit().clone(), |acc, &x| h.multiply(&acc, &SparseVec::unit(x)));
                blocks.push(prod);
                inner_idx.push(flat_index(&inner[pos..pos + ni], &vec![d; ni]));
                pos += ni;
            }
            let refs: Vec<&SparseVec> = blocks.iter().collect();
            for (o, c2) in tensor_expand(&refs, &vec![d; k]).iter() {
                *acc.entry((o, inner_idx.clone())).or_insert_with(Q::zero) += &c * c2;
            }
        }
        let mut out: Vec<(Q, usize, Vec<usize>)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((o, i), c)| (c, o, i)).collect();
        out.sort_by(|a, b| (a.1, &a.2).cmp(&(b.1, &b.2)));
        out
    }

    /// Inverse table of [`Self::cocompose`]: `(outer, inner) -> [(t, c)]`.
    fn cocomposition_table(&self, shape: &[usize]) -> Cocomposition {
        let mut table: Cocomposition = HashMap::new();
        for t in 0..self.dim(shape_total(shape)) {
            for (c, o, i) in self.cocompose(shape, t) {
                table.entry((o, i)).or_default().push((t, c));
            }
        }
        table
    }

    /// Coassociativity and counit laws, checked on the linear dual: the
    /// transposed cocompositions form the operad `Com^{TH}`.
    pub fn check(&self) -> Result<AxiomReport> {
        let com = crate::operads::com_operad(self.max_arity.max(1))?;
        let dual = ConvolutionOperad::new(&com, &self.hopf)?;
        let mut report = AxiomReport::default();
        for o in dual.operad.check_axioms().outcomes {
            let name = match o.family.as_str() {
                "associativity" => "coassociativity".to_string(),
                "left unit" | "right unit" => format!("counit ({})", o.family.trim_end_matches(" unit")),
                other => other.to_string(),
            };
            report.push(&name, o.instances, o.failure);
        }
        Ok(report)
    }
}

pub fn cooperad_t(h: &HopfObject, max_arity: usize) -> CooperadT {
    CooperadT::new(h, max_arity)
}

/// Permutation matrix swapping tensor factors `i` and `i + 1` of `H^{⊗n}`.
fn factor_swap(d: usize, n: usize, i: usize) -> Matrix {
    let dims = vec![d; n];
    let images: Vec<usize> = (0..d.pow(n as u32))
        .map(|t| {
            let mut digits = unflatten(t, &dims);
            digits.swap(i, i + 1);
            flat_index(&digits, &dims)
        })
        .collect();
    Matrix::permutation(&images)
}

/// `P^{TH}` together with the data used to build maps into and out of it.
#[derive(Clone, Debug)]
pub struct ConvolutionOperad {
    pub operad: Operad,
    base: Operad,
    hopf: HopfObject,
}

impl ConvolutionOperad {
    pub fn new(p: &Operad, h: &HopfObject) -> Result<Self> {
        let n_max = p.max_arity();
        let d = h.dim();
        let cooperad = CooperadT::new(h, n_max);
        let reps = (0..=n_max)
            .map(|n| {
                let gens = p.rep(n).generators().iter().enumerate().map(|(i, g)| g.kron(&factor_swap(d, n, i))).collect();
                SymRep::new(n, p.dim(n) * cooperad.dim(n), gens)
            })
            .collect::<Result<Vec<_>>>()?;
        let coll = Collection::new(reps, p.collection().support())?;
        let unit = p.unit().kron(h.counit(), d);
        let tables: HashMap<Vec<usize>, Cocomposition> = enumerate_shapes(&coll, &coll, n_max, n_max)
            .into_iter()
            .map(|s| {
                let t = cooperad.cocomposition_table(&s);
                (s, t)
            })
            .collect();
        let operad = Operad::from_fn(coll, unit, |shape, idx| {
            let mut ps = Vec::with_capacity(idx.len());
            let mut ts = Vec::with_capacity(idx.len());
            for (&i, &a) in idx.iter().zip(shape) {
                let da = cooperad.dim(a);
                ps.push(i / da);
                ts.push(i % da);
            }
            let Some(terms) = tables[shape].get(&(ts[0], ts[1..].to_vec())) else { return SparseVec::zero() };
            let Some(g) = p.compose_basis(shape, &ps) else { return SparseVec::zero() };
            let dn = cooperad.dim(shape_total(shape));
            let mut out = SparseVec::zero();
            for (t, c) in terms {
                out = out.add_scaled(c, &g.kron(&SparseVec::unit(*t), dn));
            }
            out
        });
        Ok(ConvolutionOperad { operad, base: p.clone(), hopf: h.clone() })
    }

    pub fn base(&self) -> &Operad {
        &self.base
    }

    pub fn hopf(&self) -> &HopfObject {
        &self.hopf
    }

    fn tensor_dim(&self, n: usize) -> usize {
        self.hopf.dim().pow(n as u32)
    }

    /// `f(e_t)` for `f ∈ P^{TH}(n)`.
    pub fn evaluate(&self, n: usize, f: &SparseVec, t: usize) -> SparseVec {
        let dn = self.tensor_dim(n);
        SparseVec::from_entries(f.iter().filter(|(i, _)| i % dn == t).map(|(i, c)| (i / dn, c.clone())))
    }

    /// `P -> P^{TH}`, `p ↦ ε^{⊗n}(-)·p`.
    pub fn coaugmentation(&self) -> Result<OperadMorphism> {
        let h = &self.hopf;
        OperadMorphism::from_fn(self.base.clone(), self.operad.clone(), |n, p| {
            SparseVec::unit(p).kron(&h.counit_power(n), self.tensor_dim(n))
        })
    }

    /// `P^{TH} -> P^{TH'}`, `f ↦ f ∘ j^{⊗n}`, for a bialgebra map `j: H' -> H`.
    pub fn along(&self, target: &ConvolutionOperad, j: &Matrix) -> Result<OperadMorphism> {
        if target.base != self.base {
            return Err(Error::OperadMismatch("convolution operads over different operads".into()));
        }
        let report = check_hopf_map(j, &target.hopf, &self.hopf);
        if let Some(msg) = report.first_failure() {
            return Err(Error::InvalidHopf(format!("not a bialgebra map: {msg}")));
        }
        let rows: Vec<SparseVec> = j.row_major();
        OperadMorphism::from_fn(self.operad.clone(), target.operad.clone(), |n, i| {
            let (dn, dn2) = (self.tensor_dim(n), target.tensor_dim(n));
            let (p, t) = (i / dn, i % dn);
            // row t of j^{⊗n}
            let digits = unflatten(t, &vec![self.hopf.dim(); n]);
            let refs: Vec<&SparseVec> = digits.iter().map(|&x| &rows[x]).collect();
            let row = tensor_expand(&refs, &vec![target.hopf.dim(); n]);
            SparseVec::unit(p).kron(&row, dn2)
        })
    }

    /// `Q^{TH}` receiving `α_*: P^{TH} -> Q^{TH}`.
    pub fn push_forward(&self, alpha: &OperadMorphism, target: &ConvolutionOperad) -> Result<OperadMorphism> {
        OperadMorphism::from_fn(self.operad.clone(), target.operad.clone(), |n, i| {
            let dn = self.tensor_dim(n);
            alpha.component(n).column(i / dn).kron(&SparseVec::unit(i % dn), dn)
        })
    }
}

pub fn convolution_operad(p: &Operad, h: &HopfObject) -> Result<Operad> {
    Ok(ConvolutionOperad::new(p, h)?.operad)
}

/// `P × Q`, aritywise direct sums; mixed compositions vanish.
pub fn product_operad(p: &Operad, q: &Operad) -> Result<Operad> {
    let n = p.max_arity().min(q.max_arity());
    let (p, q) = (p.restrict_max(n), q.restrict_max(n));
    let reps = (0..=n).map(|k| p.rep(k).direct_sum(q.rep(k))).collect::<Result<Vec<_>>>()?;
    let coll = Collection::new(reps, Support::Truncated)?;
    let unit = p.unit().add(&q.unit().reindex(|i| i + p.dim(1)));
    Ok(Operad::from_fn(coll, unit, |shape, idx| {
        let left = idx.iter().zip(shape).all(|(&i, &a)| i < p.dim(a));
        let right = idx.iter().zip(shape).all(|(&i, &a)| i >= p.dim(a));
        let out = shape_total(shape);
        if left {
            p.compose_basis(shape, idx).unwrap_or_default()
        } else if right {
            let qi: Vec<usize> = idx.iter().zip(shape).map(|(&i, &a)| i - p.dim(a)).collect();
            let shift = p.dim(out);
            q.compose_basis(shape, &qi).unwrap_or_default().reindex(|i| i + shift)
        } else {
            SparseVec::zero()
        }
    }))
}

/// A sub-operad with the spanning vectors that form its basis.
#[derive(Clone, Debug)]
pub struct SubOperad {
    pub operad: Operad,
    pub ambient: Operad,
    pub basis: Vec<Vec<SparseVec>>,
    trackers: Vec<SpanTracker>,
}

impl SubOperad {
    fn new(ambient: Operad, basis: Vec<Vec<SparseVec>>) -> Result<Self> {
        let operad = ambient.sub_operad(&basis)?;
        let trackers = basis
            .iter()
            .map(|vs| {
                let mut t = SpanTracker::new();
                vs.iter().for_each(|v| {
                    t.insert(v.clone());
                });
                t
            })
            .collect();
        Ok(SubOperad { operad, ambient, basis, trackers })
    }

    /// Coordinates of an ambient vector lying in the sub-operad.
    pub fn coords(&self, n: usize, v: &SparseVec) -> Result<SparseVec> {
        self.trackers[n]
            .coordinates(v)
            .ok_or_else(|| Error::Precondition(format!("vector at arity {n} leaves the sub-operad")))
    }
}

fn is_com_like(alpha: &OperadMorphism) -> Result<()> {
    let com = alpha.target();
    if (0..=com.max_arity()).any(|n| com.dim(n) != 1) {
        return Err(Error::OperadMismatch("augmentation must land in Com".into()));
    }
    let src = alpha.source();
    if src.dim(0) != 1 || alpha.component(0) != &Matrix::identity(1) {
        return Err(Error::Precondition("augmentation must be the identity in arity 0".into()));
    }
    if let Some(msg) = alpha.check().first_failure() {
        return Err(Error::OperadMismatch(format!("augmentation is not an operad map: {msg}")));
    }
    Ok(())
}

/// `\tilde{P^{TH}}`: the pullback of `Com -> Com^{TH} <- P^{TH}` along the
/// counit and the augmentation `α: P -> Com`, as a sub-operad of
/// `Com × P^{TH}`.
#[derive(Clone, Debug)]
pub struct ReducedConvolution {
    pub sub: SubOperad,
    pub conv: ConvolutionOperad,
}

impl ReducedConvolution {
    pub fn operad(&self) -> &Operad {
        &self.sub.operad
    }
}

pub fn reduced_convolution(alpha: &OperadMorphism, h: &HopfObject) -> Result<ReducedConvolution> {
    is_com_like(alpha)?;
    let p = alpha.source();
    let com = alpha.target();
    let conv = ConvolutionOperad::new(p, h)?;
    let ambient = product_operad(com, &conv.operad)?;
    let n_max = ambient.max_arity();
    let basis = (0..=n_max)
        .map(|n| {
            let dn = conv.tensor_dim(n);
            // (c, f) ↦ c·ε^{⊗n} - α ∘ f
            let mut cols = vec![h.counit_power(n)];
            for i in 0..conv.operad.dim(n) {
                let a = alpha.component(n).get(0, i / dn);
                cols.push(SparseVec::single(i % dn, -a));
            }
            Matrix::from_columns(dn, cols).kernel()
        })
        .collect();
    let sub = SubOperad::new(ambient, basis)?;
    Ok(ReducedConvolution { sub, conv })
}

/// Sub-operad morphism induced by an ambient linear map on basis vectors.
fn induced(source: &SubOperad, target: &SubOperad, f: impl Fn(usize, &SparseVec) -> SparseVec) -> Result<OperadMorphism> {
    let n = source.operad.max_arity().min(target.operad.max_arity());
    let components = (0..=n)
        .map(|k| {
            let cols = source.basis[k].iter().map(|v| target.coords(k, &f(k, v))).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(target.operad.dim(k), cols))
        })
        .collect::<Result<Vec<_>>>()?;
    OperadMorphism::new(source.operad.clone(), target.operad.clone(), components)
}

fn whole(p: &Operad) -> SubOperad {
    let basis: Vec<Vec<SparseVec>> = (0..=p.max_arity()).map(|n| (0..p.dim(n)).map(SparseVec::unit).collect()).collect();
    SubOperad::new(p.clone(), basis).expect("an operad is a sub-operad of itself")
}

/// Which version of the path-object chain to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// `P -> P^{TH} -> P^{T I[Z/2]} -> P × P`.
    Unreduced,
    /// `P -> \tilde{P^{TH}} -> \tilde{P^{T I[Z/2]}} -> P ×_Com P`.
    Reduced,
}

/// Verifies the algebraic content of the path-object chain for `H` with
/// a bialgebra map `j: I[Z/2] -> H`, `Z/2 = {0, 1}` under multiplication.
/// `alpha` is required for the reduced chain.
pub fn path_chain_check(p: &Operad, alpha: Option<&OperadMorphism>, h: &HopfObject, j: &Matrix, chain: Chain) -> Result<AxiomReport> {
    let interval = multiplicative_z2();
    path_chain_with(p, alpha, h, j, &interval, chain)
}

/// As [`path_chain_check`] with an arbitrary two-element `I[M]` whose basis
/// element 0 is the first endpoint and 1 the last.
pub fn path_chain_with(
    p: &Operad,
    alpha: Option<&OperadMorphism>,
    h: &HopfObject,
    j: &Matrix,
    interval: &HopfObject,
    chain: Chain,
) -> Result<AxiomReport> {
    if interval.dim() != 2 {
        return Err(Error::InvalidHopf("the endpoint object must be two-dimensional".into()));
    }
    let conv_h = ConvolutionOperad::new(p, h)?;
    let conv_2 = ConvolutionOperad::new(p, interval)?;
    let pp = product_operad(p, p)?;
    let n_max = p.max_arity();
    let dim_p = |n: usize| p.dim(n);
    let first = |_n: usize| 0usize;
    let last = |n: usize| (1usize << n) - 1;
    // (f(first), f(last)) in P × P
    let endpoints = |n: usize, f: &SparseVec| -> SparseVec {
        let a = conv_2.evaluate(n, f, first(n));
        let b = conv_2.evaluate(n, f, last(n));
        let shift = dim_p(n);
        a.add(&b.reindex(|i| i + shift))
    };

    let (src, mid_h, mid_2, tgt, m1, m2, m3) = match chain {
        Chain::Unreduced => {
            let src = whole(p);
            let mid_h = whole(&conv_h.operad);
            let mid_2 = whole(&conv_2.operad);
            let tgt = whole(&pp);
            let m1 = conv_h.coaugmentation()?;
            let m2 = conv_h.along(&conv_2, j)?;
            let m3 = induced(&mid_2, &tgt, |n, f| endpoints(n, f))?;
            (src, mid_h, mid_2, tgt, m1, m2, m3)
        }
        Chain::Reduced => {
            let alpha = alpha.ok_or_else(|| Error::Precondition("the reduced chain needs an augmentation to Com".into()))?;
            let red_h = reduced_convolution(alpha, h)?;
            let red_2 = reduced_convolution(alpha, interval)?;
            // P ×_Com P inside P × P
            let fibre: Vec<Vec<SparseVec>> = (0..=n_max)
                .map(|n| {
                    let a = alpha.component(n);
                    let cols = (0..2 * dim_p(n))
                        .map(|i| {
                            if i < dim_p(n) {
                                a.column(i).clone()
                            } else {
                                a.column(i - dim_p(n)).neg()
                            }
                        })
                        .collect();
                    Matrix::from_columns(1, cols).kernel()
                })
                .collect();
            let tgt = SubOperad::new(pp.clone(), fibre)?;
            let src = whole(p);
            let coaug = conv_h.coaugmentation()?;
            let m1 = induced(&src, &red_h.sub, |n, v| {
                let c = alpha.component(n).apply(v);
                let f = coaug.component(n).apply(v);
                c.add(&f.reindex(|i| i + 1))
            })?;
            let along = conv_h.along(&conv_2, j)?;
            let m2 = induced(&red_h.sub, &red_2.sub, |n, v| {
                let c = SparseVec::from_entries(v.iter().filter(|(i, _)| *i == 0).map(|(i, c)| (i, c.clone())));
                let f = SparseVec::from_entries(v.iter().filter(|(i, _)| *i > 0).map(|(i, c)| (i - 1, c.clone())));
                c.add(&along.component(n).apply(&f).reindex(|i| i + 1))
            })?;
            let m3 = induced(&red_2.sub, &tgt, |n, v| {
                let f = SparseVec::from_entries(v.iter().filter(|(i, _)| *i > 0).map(|(i, c)| (i - 1, c.clone())));
                endpoints(n, &f)
            })?;
            (src, red_h.sub, red_2.sub, tgt, m1, m2, m3)
        }
    };
    let _ = (&src, &mid_h);

    let mut report = AxiomReport::default();
    for (name, m) in [("coaugmentation", &m1), ("restriction along I[Z/2] -> H", &m2), ("endpoint projection", &m3)] {
        let r = m.check();
        let instances = r.outcomes.iter().map(|o| o.instances).sum();
        report.push(&format!("{name} is an operad map"), instances, r.first_failure().map(str::to_string));
    }

    // P^{T I[Z/2]}(n) as 2^n indexed copies of P(n)
    let mut failure = None;
    for n in 0..=n_max {
        let copies = 1usize << n;
        let basis = &mid_2.basis[n];
        let cols: Vec<SparseVec> = basis
            .iter()
            .map(|v| {
                let f = match chain {
                    Chain::Unreduced => v.clone(),
                    Chain::Reduced => SparseVec::from_entries(v.iter().filter(|(i, _)| *i > 0).map(|(i, c)| (i - 1, c.clone()))),
                };
                let mut out = SparseVec::zero();
                for t in 0..copies {
                    let shift = t * dim_p(n);
                    out = out.add(&conv_2.evaluate(n, &f, t).reindex(|i| i + shift));
                }
                out
            })
            .collect();
        let phi = Matrix::from_columns(copies * dim_p(n), cols);
        let expected = match chain {
            Chain::Unreduced => copies * dim_p(n),
            Chain::Reduced => {
                let r = alpha.map_or(0, |a| a.component(n).rank());
                copies * dim_p(n) - (copies - 1) * r
            }
        };
        let rank = phi.rank();
        if rank != basis.len() || rank != expected {
            failure.get_or_insert(format!(
                "arity {n}: evaluation on {copies} copies has rank {rank}, source dimension {}, expected {expected}",
                basis.len()
            ));
        }
        if let (Chain::Reduced, Some(a)) = (chain, alpha) {
            // every copy has the same image in Com
            for col in phi.columns() {
                let images: Vec<SparseVec> = (0..copies)
                    .map(|t| {
                        let part = SparseVec::from_entries(
                            col.iter().filter(|(i, _)| i / dim_p(n) == t).map(|(i, c)| (i % dim_p(n), c.clone())),
                        );
                        a.component(n).apply(&part)
                    })
                    .collect();
                if images.iter().any(|x| *x != images[0]) {
                    failure.get_or_insert(format!("arity {n}: copies disagree over Com"));
                }
            }
        }
        let labels = interval.labels();
        if n > 0 && (first(n) != flat_index(&vec![0; n], &vec![2; n]) || last(n) != flat_index(&vec![1; n], &vec![2; n])) {
            failure.get_or_insert(format!("arity {n}: endpoints are not the constant tuples {}, {}", labels[0], labels[1]));
        }
    }
    report.push("2^n copies identification", n_max + 1, failure);

    let composite = m3.after(&m2)?.after(&m1)?;
    let mut failure = None;
    for n in 0..=composite.max_arity() {
        for i in 0..dim_p(n) {
            let diag = SparseVec::unit(i).add(&SparseVec::unit(i + dim_p(n)));
            let expected = tgt.coords(n, &diag)?;
            if composite.component(n).column(i) != &expected {
                failure.get_or_insert(format!("composite differs from the diagonal at arity {n}, basis {}", i + 1));
            }
        }
    }
    report.push("composite is the diagonal", (0..=n_max).map(dim_p).sum(), failure);
    Ok(report)
}

/// A coalgebra over `Q`: maps `B ⊗ Q(n) -> B^{⊗n}`, column `x·dim Q(n) + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraOverOperad {
    operad: Operad,
    dim: usize,
    structure: Vec<Matrix>,
}

impl CoalgebraOverOperad {
    pub fn new(operad: Operad, dim: usize, structure: Vec<Matrix>) -> Result<Self> {
        if structure.len() != operad.max_arity() + 1 {
            return Err(Error::DimensionMismatch("one structure map per arity".into()));
        }
        for (n, m) in structure.iter().enumerate() {
            if m.nrows() != dim.pow(n as u32) || m.ncols() != dim * operad.dim(n) {
                return Err(Error::DimensionMismatch(format!("structure map in arity {n} has the wrong size")));
            }
        }
        let b = CoalgebraOverOperad { operad, dim, structure };
        if let Some(msg) = b.check().first_failure() {
            return Err(Error::Precondition(format!("not a coalgebra: {msg}")));
        }
        Ok(b)
    }

    /// `x ⊗ q ↦ w(q)·x^{⊗n}` on a basis of grouplike elements, `w: Q -> Com`.
    pub fn grouplike(weight: &OperadMorphism, dim: usize) -> Result<Self> {
        let q = weight.source().clone();
        let structure = (0..=q.max_arity())
            .map(|n| {
                let cols = (0..dim * q.dim(n))
                    .map(|c| {
                        let (x, i) = (c / q.dim(n), c % q.dim(n));
                        let diag = flat_index(&vec![x; n], &vec![dim; n]);
                        SparseVec::single(diag, weight.component(n).get(0, i))
                    })
                    .collect();
                Matrix::from_columns(dim.pow(n as u32), cols)
            })
            .collect();
        Self::new(q, dim, structure)
    }

    pub fn operad(&self) -> &Operad {
        &self.operad
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self, n: usize) -> &Matrix {
        &self.structure[n]
    }

    /// The dual algebra on `B^*`.
    pub fn dual_algebra(&self) -> Result<AlgebraOver> {
        let b = self.dim;
        let action = (0..=self.operad.max_arity())
            .map(|n| {
                let dq = self.operad.dim(n);
                let rows = self.structure[n].row_major();
                let cols = (0..dq * b.pow(n as u32))
                    .map(|c| {
                        let (q, xs) = (c / b.pow(n as u32), c % b.pow(n as u32));
                        SparseVec::from_entries(
                            rows[xs].iter().filter(|(col, _)| col % dq == q).map(|(col, v)| (col / dq, v.clone())),
                        )
                    })
                    .collect();
                Matrix::from_columns(b, cols)
            })
            .collect();
        AlgebraOver::new(self.operad.clone(), b, action)
    }

    /// The duals of the algebra axioms, checked on `B^*`.
    pub fn check(&self) -> AxiomReport {
        match self.dual_algebra() {
            Ok(a) => a.check(),
            Err(e) => {
                let mut r = AxiomReport::default();
                r.push("sizes", 1, Some(e.to_string()));
                r
            }
        }
    }
}

/// `M^B(n) = Hom(B, M(n))` as a module over `Q ⊙ P`; basis `E_{m,x}`,
/// index `m·dim B + x`.
pub fn coalgebra_convolution_module(b: &CoalgebraOverOperad, m: &LeftModule) -> Result<LeftModule> {
    let q = b.operad();
    let p = m.operad();
    let qp = hadamard_operad(q, p)?;
    let bd = b.dim;
    let n_max = m.max_arity();
    let reps = (0..=n_max)
        .map(|n| {
            let id = Matrix::identity(bd);
            let gens = m.underlying().rep(n).generators().iter().map(|g| g.kron(&id)).collect();
            SymRep::new(n, m.dim(n) * bd, gens)
        })
        .collect::<Result<Vec<_>>>()?;
    let underlying = Collection::new(reps, m.underlying().support())?;
    let dp = |k: usize| p.dim(k);
    let module = LeftModule::from_fn(qp, underlying, |shape, idx| {
        let k = shape[0];
        let (qi, pi) = (idx[0] / dp(k), idx[0] % dp(k));
        let ms: Vec<SparseVec> = idx[1..].iter().map(|&i| SparseVec::unit(i / bd)).collect();
        let xs: Vec<usize> = idx[1..].iter().map(|&i| i % bd).collect();
        let row = flat_index(&xs, &vec![bd; k]);
        let refs: Vec<&SparseVec> = ms.iter().collect();
        let Some(mu) = m.act(&SparseVec::unit(pi), &shape[1..], &refs) else { return SparseVec::zero() };
        let mut out = SparseVec::zero();
        for x in 0..bd {
            let c = b.structure[k].get(row, x * q.dim(k) + qi);
            if !c.is_zero() {
                out = out.add_scaled(&c, &mu.kron(&SparseVec::unit(x), bd));
            }
        }
        out
    });
    Ok(module)
}

/// `Q ⊙ P -> P`, `q ⊗ p ↦ w(q)·p` for `w: Q -> Com`.
pub fn hadamard_projection(weight: &OperadMorphism, p: &Operad) -> Result<OperadMorphism> {
    let q = weight.source();
    let qp = hadamard_operad(q, p)?;
    let n = qp.max_arity();
    OperadMorphism::from_fn(qp, p.restrict_max(n), |k, i| {
        let (qi, pi) = (i / p.dim(k), i % p.dim(k));
        SparseVec::single(pi, weight.component(k).get(0, qi))
    })
}

/// Test maps `u: Y' -> Y`, `s: A' -> A`, `t: B -> B'` for naturality.
#[derive(Clone, Debug)]
pub struct NaturalityTriple {
    pub u: Matrix,
    pub s: Matrix,
    pub t: Matrix,
}

fn vectorize(m: &Matrix) -> SparseVec {
    let rows = m.nrows();
    let mut out = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        out.extend(col.iter().map(|(i, c)| (j * rows + i, c.clone())));
    }
    SparseVec::from_entries(out)
}

fn unvectorize(v: &SparseVec, rows: usize, cols: usize) -> Matrix {
    let mut columns = vec![Vec::new(); cols];
    for (i, c) in v.iter() {
        columns[i / rows].push((i % rows, c.clone()));
    }
    Matrix::from_columns(rows, columns.into_iter().map(SparseVec::from_entries).collect())
}

/// `[Y, [A, B]] -> [Y ⊗ A, B]`, `F ↦ (y ⊗ a ↦ F(y)(a))`.
pub fn uncurry(f: &Matrix, y: usize, a: usize, b: usize) -> Matrix {
    let mut cols = Vec::with_capacity(y * a);
    for yi in 0..y {
        let map = unvectorize(f.column(yi), b, a);
        cols.extend(map.columns().iter().cloned());
    }
    Matrix::from_columns(b, cols)
}

/// `[Y ⊗ A, B] -> [Y, [A, B]]`.
pub fn curry(g: &Matrix, y: usize, a: usize, b: usize) -> Matrix {
    let cols = (0..y)
        .map(|yi| {
            let map = Matrix::from_columns(b, (0..a).map(|ai| g.column(yi * a + ai).clone()).collect());
            vectorize(&map)
        })
        .collect();
    Matrix::from_columns(a * b, cols)
}

/// `[Y ⊗ A, B] -> [A, B^Y]`, `G ↦ (a ↦ (y ↦ G(y ⊗ a)))`.
pub fn to_cotensor(g: &Matrix, y: usize, a: usize, b: usize) -> Matrix {
    let cols = (0..a)
        .map(|ai| {
            let map = Matrix::from_columns(b, (0..y).map(|yi| g.column(yi * a + ai).clone()).collect());
            vectorize(&map)
        })
        .collect();
    Matrix::from_columns(y * b, cols)
}

/// `[A, B^Y] -> [Y ⊗ A, B]`.
pub fn from_cotensor(k: &Matrix, y: usize, a: usize, b: usize) -> Matrix {
    let maps: Vec<Matrix> = (0..a).map(|ai| unvectorize(k.column(ai), b, y)).collect();
    let cols = (0..y * a).map(|c| maps[c % a].column(c / a).clone()).collect();
    Matrix::from_columns(b, cols)
}

/// Matrix of a linear map between hom spaces, on vectorized bases.
fn hom_map(src_rows: usize, src_cols: usize, dst_rows: usize, dst_cols: usize, f: impl Fn(&Matrix) -> Matrix) -> Matrix {
    let cols = (0..src_rows * src_cols)
        .map(|i| vectorize(&f(&unvectorize(&SparseVec::unit(i), src_rows, src_cols))))
        .collect();
    Matrix::from_columns(dst_rows * dst_cols, cols)
}

/// Checks `[Y, [A, B]] ≅ [Y ⊗ A, B] ≅ [A, B^Y]` for spaces of the given
/// dimensions: the isomorphisms are mutually inverse and natural along the
/// supplied test maps.
pub fn enrichment_adjunction_check(y: usize, a: usize, b: usize, tests: &[NaturalityTriple]) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let dims_ok = a * b * y == b * (y * a) && b * (y * a) == (y * b) * a;
    report.push("dimensions", 1, (!dims_ok).then(|| "hom-space dimensions differ".to_string()));

    let phi = hom_map(a * b, y, b, y * a, |f| uncurry(f, y, a, b));
    let phi_inv = hom_map(b, y * a, a * b, y, |g| curry(g, y, a, b));
    let psi = hom_map(b, y * a, y * b, a, |g| to_cotensor(g, y, a, b));
    let psi_inv = hom_map(y * b, a, b, y * a, |k| from_cotensor(k, y, a, b));
    let inverse = |m: &Matrix, n: &Matrix| -> bool {
        m.mul(n).is_ok_and(|x| x.is_identity()) && n.mul(m).is_ok_and(|x| x.is_identity())
    };
    report.push("[Y,[A,B]] ≅ [Y⊗A,B] inverse", 2, (!inverse(&phi, &phi_inv)).then(|| "curry and uncurry are not inverse".into()));
    report.push("[Y⊗A,B] ≅ [A,B^Y] inverse", 2, (!inverse(&psi, &psi_inv)).then(|| "cotensor maps are not inverse".into()));
    if y == 1 {
        let id = phi.is_identity() && psi.is_identity();
        report.push("identities at Y = I", 1, (!id).then(|| "isomorphisms are not identities for Y = I".into()));
    }

    let mut failure = None;
    for (n, tr) in tests.iter().enumerate() {
        let (y2, a2, b2) = (tr.u.ncols(), tr.s.ncols(), tr.t.nrows());
        if tr.u.nrows() != y || tr.s.nrows() != a || tr.t.ncols() != b {
            return Err(Error::DimensionMismatch(format!("test triple {} has the wrong shape", n + 1)));
        }
        // actions on the three hom spaces
        let nat1 = |f: &Matrix| -> Matrix {
            let cols = (0..y2)
                .map(|yp| {
                    let mut acc = SparseVec::zero();
                    for (yi, c) in tr.u.column(yp).iter() {
                        let map = unvectorize(f.column(yi), b, a);
                        let moved = tr.t.mul_unchecked(&map).mul_unchecked(&tr.s);
                        acc = acc.add_scaled(c, &vectorize(&moved));
                    }
                    acc
                })
                .collect();
            Matrix::from_columns(a2 * b2, cols)
        };
        let nat2 = |g: &Matrix| -> Matrix { tr.t.mul_unchecked(g).mul_unchecked(&tr.u.kron(&tr.s)) };
        let nat3 = |k: &Matrix| -> Matrix {
            let cols = (0..a2)
                .map(|ap| {
                    let mut acc = SparseVec::zero();
                    for (ai, c) in tr.s.column(ap).iter() {
                        let map = unvectorize(k.column(ai), b, y);
                        let moved = tr.t.mul_unchecked(&map).mul_unchecked(&tr.u);
                        acc = acc.add_scaled(c, &vectorize(&moved));
                    }
                    acc
                })
                .collect();
            Matrix::from_columns(y2 * b2, cols)
        };
        for i in 0..a * b * y {
            let f = unvectorize(&SparseVec::unit(i), a * b, y);
            if uncurry(&nat1(&f), y2, a2, b2) != nat2(&uncurry(&f, y, a, b)) {
                failure.get_or_insert(format!("curry square fails for test triple {}", n + 1));
            }
            let g = unvectorize(&SparseVec::unit(i), b, y * a);
            if to_cotensor(&nat2(&g), y2, a2, b2) != nat3(&to_cotensor(&g, y, a, b)) {
                failure.get_or_insert(format!("cotensor square fails for test triple {}", n + 1));
            }
        }
    }
    report.push("naturality", tests.len(), failure);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::operads::{ass_operad, ass_positive, com_operad, com_positive, fold_morphism};

    fn dims(p: &Operad) -> Vec<usize> {
        (0..=p.max_arity()).map(|n| p.dim(n)).collect()
    }

    /// `{0, 1} -> Z/2` sending `1` to the identity and `0` to the generator
    /// is not a monoid map; the identity on `{0, 1}` is.
    fn id2() -> Matrix {
        Matrix::identity(2)
    }

    #[test]
    fn hopf_objects_satisfy_their_laws() {
        for h in [group_hopf(&[2]).unwrap(), group_hopf(&[3]).unwrap(), group_hopf(&[2, 2]).unwrap(), group_hopf(&[1]).unwrap()] {
            let r = h.check();
            assert!(r.passed(), "{:?}", r.first_failure());
            assert!(r.family("antipode").is_some());
        }
        let z3 = group_hopf(&[3]).unwrap();
        assert_eq!(z3.antipode().unwrap(), &Matrix::permutation(&[0, 2, 1]));
        let m = multiplicative_z2();
        assert!(m.check().passed());
        assert!(m.antipode().is_none());
        assert_eq!(m.unit(), &SparseVec::unit(1));
    }

    #[test]
    fn broken_tables_are_rejected() {
        // not associative: x*x = 1, 1*x = 0
        let err = monoid_hopf(vec!["a".into(), "b".into()], &[vec![0, 1], vec![1, 1]], 1);
        assert!(err.is_err());
        let err = monoid_hopf(vec!["a".into(), "b".into(), "c".into()], &[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]], 2);
        assert!(err.is_ok());
        let noncomm = monoid_hopf(vec!["a".into(), "b".into()], &[vec![0, 0], vec![1, 1]], 0);
        assert!(noncomm.is_err());
    }

    #[test]
    fn hopf_maps() {
        let z2 = group_hopf(&[2]).unwrap();
        let triv = group_hopf(&[1]).unwrap();
        assert!(check_hopf_map(&z2.folding_map(), &z2, &triv).passed());
        assert!(check_hopf_map(&id2(), &multiplicative_z2(), &multiplicative_z2()).passed());
        // unit of {0, 1} to the identity of Z/2 and 0 to the generator
        let swap = Matrix::permutation(&[1, 0]);
        assert!(!check_hopf_map(&swap, &multiplicative_z2(), &z2).passed());
    }

    #[test]
    fn cooperad_t_dimensions_and_laws() {
        let t = cooperad_t(&group_hopf(&[2]).unwrap(), 3);
        assert_eq!(t.dim(3), 8);
        let terms = t.cocompose(&[2, 1, 2], 0b011);
        // grouplike: a single term, outer (g_1, g_2·g_3) = (0, 0)
        assert_eq!(terms, vec![(q(1), 0, vec![0, 3])]);
        assert!(t.check().unwrap().passed());
        assert!(cooperad_t(&multiplicative_z2(), 3).check().unwrap().passed());
    }

    #[test]
    fn convolution_with_the_unit_is_the_operad() {
        let p = ass_operad(3).unwrap();
        let c = ConvolutionOperad::new(&p, &group_hopf(&[1]).unwrap()).unwrap();
        assert_eq!(c.operad, p);
        let e = c.coaugmentation().unwrap();
        assert!(e.check().passed());
        assert!((0..=3).all(|n| e.component(n).is_identity()));
    }

    #[test]
    fn convolution_dims_and_axioms() {
        let h = group_hopf(&[2]).unwrap();
        let com = convolution_operad(&com_operad(4).unwrap(), &h).unwrap();
        assert_eq!(dims(&com), vec![1, 2, 4, 8, 16]);
        assert!(com.check_axioms().passed());
        let ass = convolution_operad(&ass_operad(3).unwrap(), &h).unwrap();
        assert_eq!(dims(&ass), vec![1, 2, 8, 48]);
        let r = ass.check_axioms();
        assert!(r.passed(), "{:?}", r.first_failure());
        let m = convolution_operad(&ass_operad(3).unwrap(), &multiplicative_z2()).unwrap();
        assert!(m.check_axioms().passed());
    }

    #[test]
    fn product_operad_axioms() {
        let p = product_operad(&ass_operad(3).unwrap(), &com_operad(3).unwrap()).unwrap();
        assert_eq!(dims(&p), vec![2, 2, 3, 7]);
        assert!(p.check_axioms().passed());
    }

    #[test]
    fn reduced_convolution_of_com_is_com() {
        let com = com_operad(3).unwrap();
        let id = OperadMorphism::identity(&com);
        for h in [group_hopf(&[2]).unwrap(), multiplicative_z2()] {
            let r = reduced_convolution(&id, &h).unwrap();
            assert_eq!(dims(r.operad()), vec![1, 1, 1, 1]);
            assert!(r.operad().check_axioms().passed());
        }
        let fold = fold_morphism(3).unwrap();
        let r = reduced_convolution(&fold, &group_hopf(&[2]).unwrap()).unwrap();
        // 2^n·n! - (2^n - 1)
        assert_eq!(dims(r.operad()), vec![1, 1, 5, 41]);
        assert!(r.operad().check_axioms().passed());
    }

    #[test]
    fn unreduced_path_chain_on_positive_operads() {
        let m = multiplicative_z2();
        for p in [ass_positive(3).unwrap(), com_positive(3).unwrap()] {
            let r = path_chain_check(&p, None, &m, &id2(), Chain::Unreduced).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
        let z2 = group_hopf(&[2]).unwrap();
        let j = Matrix::from_columns(2, vec![SparseVec::unit(1), SparseVec::unit(0)]);
        let r = path_chain_with(&ass_positive(3).unwrap(), None, &z2, &Matrix::identity(2), &z2, Chain::Unreduced).unwrap();
        assert!(!r.family("endpoint projection is an operad map").unwrap().passed());
        assert!(path_chain_check(&ass_positive(2).unwrap(), None, &z2, &j, Chain::Unreduced).is_err());
    }

    #[test]
    fn reduced_path_chain() {
        let m = multiplicative_z2();
        let com = com_operad(3).unwrap();
        let id = OperadMorphism::identity(&com);
        let r = path_chain_check(&com, Some(&id), &m, &id2(), Chain::Reduced).unwrap();
        assert!(r.family("composite is the diagonal").unwrap().passed());
        assert!(r.family("2^n copies identification").unwrap().passed());
        let fold = fold_morphism(3).unwrap();
        let r = path_chain_check(fold.source(), Some(&fold), &m, &id2(), Chain::Reduced).unwrap();
        assert!(r.family("composite is the diagonal").unwrap().passed());
        assert!(r.family("2^n copies identification").unwrap().passed());
        assert!(r.family("coaugmentation is an operad map").unwrap().passed());
    }

    #[test]
    fn grouplike_coalgebra_and_convolution_module() {
        let com = com_operad(3).unwrap();
        let id = OperadMorphism::identity(&com);
        let b = CoalgebraOverOperad::grouplike(&id, 2).unwrap();
        assert!(b.check().passed());
        let ass = ass_operad(3).unwrap();
        let m = LeftModule::operad_as_module(&ass);
        let mb = coalgebra_convolution_module(&b, &m).unwrap();
        assert!(mb.check().passed(), "{:?}", mb.check().first_failure());
        assert_eq!((0..=3).map(|n| mb.dim(n)).collect::<Vec<_>>(), vec![2, 2, 4, 12]);

        // B = I recovers the restriction along Com ⊙ P -> P
        let unit = CoalgebraOverOperad::grouplike(&id, 1).unwrap();
        let mi = coalgebra_convolution_module(&unit, &m).unwrap();
        let pi = hadamard_projection(&id, &ass).unwrap();
        let restricted = crate::modalg::restrict_module(&pi, &m).unwrap();
        assert_eq!(mi, restricted);

        // evaluation at a grouplike element is a module map
        let ev: Vec<Matrix> = (0..=3)
            .map(|n| {
                let cols = (0..mb.dim(n)).map(|i| if i % 2 == 1 { SparseVec::unit(i / 2) } else { SparseVec::zero() }).collect();
                Matrix::from_columns(m.dim(n), cols)
            })
            .collect();
        assert!(crate::modalg::check_module_map(&mb, &restricted, &ev).unwrap());
    }

    #[test]
    fn broken_coalgebra_is_rejected() {
        let com = com_operad(2).unwrap();
        let id = OperadMorphism::identity(&com);
        let b = CoalgebraOverOperad::grouplike(&id, 2).unwrap();
        let mut s: Vec<Matrix> = (0..=2).map(|n| b.structure(n).clone()).collect();
        s[2].set(1, 0, q(1));
        assert!(CoalgebraOverOperad::new(com, 2, s).is_err());
    }

    #[test]
    fn enrichment() {
        let tri = NaturalityTriple {
            u: Matrix::from_int_rows(&[&[1, 2], &[0, 1]]),
            s: Matrix::from_int_rows(&[&[1], &[3], &[-1]]),
            t: Matrix::from_int_rows(&[&[2, 0], &[1, 1], &[0, 5]]),
        };
        let r = enrichment_adjunction_check(2, 3, 2, &[tri]).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        let r = enrichment_adjunction_check(1, 2, 2, &[]).unwrap();
        assert!(r.family("identities at Y = I").unwrap().passed());
        let g = Matrix::from_int_rows(&[&[1, 2, 3, 4, 5, 6], &[7, 8, 9, 10, 11, 12]]);
        assert_eq!(uncurry(&curry(&g, 2, 3, 2), 2, 3, 2), g);
        assert_eq!(from_cotensor(&to_cotensor(&g, 2, 3, 2), 2, 3, 2), g);
    }
}
