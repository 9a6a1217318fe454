//! Symmetric groups: permutations, Young subgroups, shuffle coset
//! representatives and orbits of compositions under block permutation.
//!
//! Points are 0-based internally; `Display` prints one-line notation 1-based.

use std::fmt;

use crate::error::{Error, Result};

/// Largest degree for which [`enumerate_group`] will list all elements.
pub const DEFAULT_GROUP_BOUND: usize = 7;

/// A permutation of `{0, .., n-1}` in one-line notation: `images[i]` is the
/// image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::InvalidPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|x| x - 1).collect())
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The adjacent transposition swapping `i` and `i + 1` (0-based).
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "adjacent transposition s_{} out of range for degree {}", i + 1, n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Position in the lexicographic enumeration of `Σ_n`.
    pub fn lex_rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn inversions(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// A reduced word `[a_1, .., a_m]` with `self = s_{a_1} ∘ .. ∘ s_{a_m}`,
    /// obtained by peeling right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut g = self.images.clone();
        let mut word = Vec::new();
        // g = g' s_i with g' having one fewer inversion whenever g(i) > g(i+1).
        'outer: loop {
            for i in 0..g.len().saturating_sub(1) {
                if g[i] > g[i + 1] {
                    g.swap(i, i + 1);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// A second reduced word, obtained by peeling left descents from the
    /// highest index down. Generally differs from [`Self::reduced_word`].
    pub fn reduced_word_left(&self) -> Vec<usize> {
        let mut g = self.images.clone();
        let mut word = Vec::new();
        'outer: loop {
            let inv = {
                let mut inv = vec![0; g.len()];
                for (i, &x) in g.iter().enumerate() {
                    inv[x] = i;
                }
                inv
            };
            for i in (0..g.len().saturating_sub(1)).rev() {
                if inv[i] > inv[i + 1] {
                    // s_i ∘ g swaps the values i and i+1.
                    for x in g.iter_mut() {
                        if *x == i {
                            *x = i + 1;
                        } else if *x == i + 1 {
                            *x = i;
                        }
                    }
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// Cycle type as a weakly decreasing partition of the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// The canonical element of a cycle type: consecutive cycles
    /// `(1 .. λ_1)(λ_1+1 ..)`.
    pub fn of_cycle_type(parts: &[usize]) -> Permutation {
        let n: usize = parts.iter().sum();
        let mut images = vec![0; n];
        let mut start = 0;
        for &len in parts {
            for j in 0..len {
                images[start + j] = start + (j + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }

    /// Sum of permutations acting on consecutive blocks: `self ⊕ other`.
    pub fn direct_sum(perms: &[&Permutation]) -> Permutation {
        let mut images = Vec::new();
        let mut offset = 0;
        for p in perms {
            images.extend(p.images.iter().map(|x| x + offset));
            offset += p.degree();
        }
        Permutation { images }
    }

    /// Block permutation: the point set is split into consecutive blocks
    /// with the given sizes (in source order) and block `j` is moved, order
    /// preserved, to target position `sigma(j)`.
    pub fn block_permutation(sigma: &Permutation, sizes: &[usize]) -> Permutation {
        let k = sigma.degree();
        assert_eq!(k, sizes.len());
        // target sizes: block at target slot sigma(j) has size sizes[j]
        let mut target_sizes = vec![0; k];
        for j in 0..k {
            target_sizes[sigma.apply(j)] = sizes[j];
        }
        let mut target_offset = vec![0; k];
        for t in 1..k {
            target_offset[t] = target_offset[t - 1] + target_sizes[t - 1];
        }
        let mut images = Vec::with_capacity(sizes.iter().sum());
        for j in 0..k {
            let base = target_offset[sigma.apply(j)];
            images.extend(base..base + sizes[j]);
        }
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, ")")
    }
}

/// A sequence of non-negative parts `(r_1, .., r_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the Young subgroup: `n! / (r_1! .. r_k!)`.
    pub fn multinomial(&self) -> u128 {
        let mut result: u128 = 1;
        let mut acc = 0u128;
        for &r in &self.parts {
            for j in 1..=r as u128 {
                acc += 1;
                result = result * acc / j;
            }
        }
        result
    }

    /// Permutation action of `sigma ∈ Σ_k` on parts: part `i` moves to slot `sigma(i)`.
    pub fn permuted(&self, sigma: &Permutation) -> Composition {
        let mut parts = vec![0; self.len()];
        for (i, &r) in self.parts.iter().enumerate() {
            parts[sigma.apply(i)] = r;
        }
        Composition { parts }
    }

    /// Elements of the Young subgroup `Σ_{r_1} × .. × Σ_{r_k}` inside `Σ_n`.
    pub fn young_subgroup(&self) -> Result<Vec<Permutation>> {
        let factors: Vec<Vec<Permutation>> =
            self.parts.iter().map(|&r| enumerate_group(r)).collect::<Result<_>>()?;
        let mut out = vec![Vec::<&Permutation>::new()];
        for f in &factors {
            let mut next = Vec::with_capacity(out.len() * f.len());
            for prefix in &out {
                for p in f {
                    let mut v = prefix.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out.iter().map(|ps| Permutation::direct_sum(ps)).collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// An orbit of compositions of `n` of length `k` under `Σ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionOrbit {
    pub representative: Composition,
    /// Adjacent transpositions of `Σ_k` generating `Aut(r_*)`.
    pub stabilizer_generators: Vec<Permutation>,
    pub orbit_size: u128,
}

impl CompositionOrbit {
    /// All elements of the stabilizer of the representative.
    pub fn stabilizer_elements(&self) -> Result<Vec<Permutation>> {
        // Stabilizer of a weakly decreasing composition is the Young subgroup
        // on its runs of equal parts.
        let parts = self.representative.parts();
        let mut runs = Vec::new();
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            runs.push(j - i);
            i = j;
        }
        Composition::new(runs).young_subgroup()
    }
}

/// Minimal-length representatives of the left cosets `c Σ(r_*)` in `Σ_n`,
/// in lexicographic one-line order. Each representative is increasing on
/// every block of consecutive positions.
pub fn shuffle_coset_reps(r: &Composition) -> Vec<Permutation> {
    block_assignments(r)
        .into_iter()
        .map(|f| coset_rep_of_assignment(&f, r.len()))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// All maps `f: {0..n-1} -> {0..k-1}` with `|f^{-1}(i)| = r_i`.
pub fn block_assignments(r: &Composition) -> Vec<Vec<usize>> {
    let n = r.total();
    let mut remaining = r.parts().to_vec();
    let mut current = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn rec(n: usize, remaining: &mut [usize], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                current.push(b);
                rec(n, remaining, current, out);
                current.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(n, &mut remaining, &mut current, &mut out);
    out
}

/// The shuffle permutation sending block `i`'s local positions, in order,
/// onto the sorted fibre `f^{-1}(i)`.
pub fn coset_rep_of_assignment(f: &[usize], k: usize) -> Permutation {
    let mut images = Vec::with_capacity(f.len());
    for b in 0..k {
        images.extend(f.iter().enumerate().filter(|(_, &x)| x == b).map(|(i, _)| i));
    }
    Permutation::from_vec_unchecked(images)
}

/// Orbit representatives (weakly decreasing) of compositions of `n` of
/// length `k`, in lexicographic order of the representatives.
pub fn composition_orbits(n: usize, k: usize, positive_only: bool) -> Vec<CompositionOrbit> {
    let mut reps = Vec::new();
    let min = if positive_only { 1 } else { 0 };
    fn rec(left: usize, slots: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = max.min(left);
        if hi < min {
            return;
        }
        for part in min..=hi {
            // remaining slots must be able to absorb the rest
            if left - part > part * (slots - 1) {
                continue;
            }
            cur.push(part);
            rec(left - part, slots - 1, part, min, cur, out);
            cur.pop();
        }
    }
    rec(n, k, n, min, &mut Vec::new(), &mut reps);
    reps.sort();
    reps.into_iter()
        .map(|parts| {
            let gens: Vec<Permutation> = (0..k.saturating_sub(1))
                .filter(|&i| parts[i] == parts[i + 1])
                .map(|i| Permutation::adjacent(k, i))
                .collect();
            let mut stab: u128 = 1;
            let mut i = 0;
            while i < parts.len() {
                let mut j = i;
                while j < parts.len() && parts[j] == parts[i] {
                    j += 1;
                }
                stab *= factorial(j - i);
                i = j;
            }
            CompositionOrbit {
                representative: Composition::new(parts),
                stabilizer_generators: gens,
                orbit_size: factorial(k) / stab,
            }
        })
        .collect()
}

/// All compositions of `n` of length `k` (parts `>= 1` when `positive_only`),
/// lexicographically ordered.
pub fn compositions(n: usize, k: usize, positive_only: bool) -> Vec<Composition> {
    let min = if positive_only { 1 } else { 0 };
    let mut out = Vec::new();
    fn rec(left: usize, slots: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if left == 0 {
                out.push(Composition::new(cur.clone()));
            }
            return;
        }
        if left < min * slots {
            return;
        }
        for part in min..=left {
            cur.push(part);
            rec(left - part, slots - 1, min, cur, out);
            cur.pop();
        }
    }
    rec(n, k, min, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Every element of `Σ_n` in lexicographic one-line order. Fails above
/// [`DEFAULT_GROUP_BOUND`].
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    enumerate_group_bounded(n, DEFAULT_GROUP_BOUND)
}

pub fn enumerate_group_bounded(n: usize, bound: usize) -> Result<Vec<Permutation>> {
    if n > bound {
        return Err(Error::GroupTooLarge { degree: n, bound });
    }
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    // next_permutation in lexicographic order
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
    Ok(out)
}

/// Partitions of `n` (weakly decreasing), in lexicographic order of the
/// part sequences, e.g. `n = 3`: `(1,1,1), (2,1), (3)`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=max.min(left) {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Size of the conjugacy class of the given cycle type.
pub fn class_size(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    let mut denom: u128 = 1;
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        denom *= factorial(j - i) * (parts[i] as u128).pow((j - i) as u32);
        i = j;
    }
    factorial(n) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_based(v).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p(&[2, 1, 3]).compose(&p(&[1, 3, 2])).unwrap(), p(&[2, 3, 1]));
        let q = p(&[3, 1, 4, 2]);
        assert_eq!(Permutation::identity(4).compose(&q).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        assert!(matches!(q.compose(&Permutation::identity(3)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn reduced_words_multiply_back() {
        for g in enumerate_group(5).unwrap() {
            for word in [g.reduced_word(), g.reduced_word_left()] {
                assert_eq!(word.len(), g.inversions());
                let mut acc = Permutation::identity(5);
                for &i in &word {
                    acc = acc.then_unchecked(&Permutation::adjacent(5, i));
                }
                assert_eq!(acc, g);
            }
        }
    }

    #[test]
    fn coset_counts() {
        assert_eq!(shuffle_coset_reps(&Composition::new(vec![2, 1])).len(), 3);
        assert_eq!(shuffle_coset_reps(&Composition::new(vec![3])), vec![Permutation::identity(3)]);
        let all = shuffle_coset_reps(&Composition::new(vec![1, 1, 1]));
        assert_eq!(all, enumerate_group(3).unwrap());
    }

    #[test]
    fn cosets_partition_the_group() {
        for parts in [vec![2, 1], vec![1, 2, 1], vec![2, 2], vec![0, 3, 1], vec![4], vec![]] {
            let r = Composition::new(parts);
            let n = r.total();
            let young = r.young_subgroup().unwrap();
            let reps = shuffle_coset_reps(&r);
            assert_eq!(reps.len() as u128, r.multinomial());
            let mut seen = HashSet::new();
            for c in &reps {
                for h in &young {
                    assert!(seen.insert(c.then_unchecked(h)), "cosets overlap for {}", r);
                }
            }
            assert_eq!(seen.len() as u128, factorial(n));
        }
    }

    #[test]
    fn orbit_examples() {
        let o = composition_orbits(3, 2, true);
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].representative.parts(), &[2, 1]);
        assert!(o[0].stabilizer_generators.is_empty());

        let o = composition_orbits(4, 2, true);
        let reps: Vec<_> = o.iter().map(|x| x.representative.parts().to_vec()).collect();
        assert_eq!(reps, vec![vec![2, 2], vec![3, 1]]);
        assert_eq!(o[0].stabilizer_generators, vec![Permutation::adjacent(2, 0)]);

        let o = composition_orbits(2, 2, false);
        let reps: Vec<_> = o.iter().map(|x| x.representative.parts().to_vec()).collect();
        assert_eq!(reps, vec![vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn orbits_cover_all_compositions() {
        for n in 0..=6 {
            for k in 0..=5 {
                for positive in [true, false] {
                    let orbits = composition_orbits(n, k, positive);
                    let mut covered = HashSet::new();
                    let sk = enumerate_group(k).unwrap();
                    for o in &orbits {
                        let stab = o.stabilizer_elements().unwrap();
                        for g in &stab {
                            assert_eq!(o.representative.permuted(g), o.representative);
                        }
                        assert_eq!(o.orbit_size * stab.len() as u128, factorial(k));
                        for g in &sk {
                            covered.insert(o.representative.permuted(g));
                        }
                    }
                    let all: HashSet<_> = compositions(n, k, positive).into_iter().collect();
                    assert_eq!(covered, all, "n={} k={} positive={}", n, k, positive);
                }
            }
        }
    }

    #[test]
    fn group_enumeration() {
        assert_eq!(enumerate_group(3).unwrap().len(), 6);
        assert_eq!(enumerate_group(0).unwrap(), vec![Permutation::identity(0)]);
        assert_eq!(enumerate_group(4).unwrap().len(), 24);
        assert!(matches!(enumerate_group(8), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for n in 0..=6 {
            let total: u128 = partitions(n).iter().map(|l| class_size(l)).sum();
            assert_eq!(total, factorial(n));
            for l in partitions(n) {
                assert_eq!(Permutation::of_cycle_type(&l).cycle_type(), l);
            }
        }
        assert_eq!(partitions(3), vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
    }

    #[test]
    fn block_permutation_moves_blocks() {
        // sizes (2,1), swap: block 0 -> slot 1, block 1 -> slot 0
        let s = Permutation::adjacent(2, 0);
        let b = Permutation::block_permutation(&s, &[2, 1]);
        assert_eq!(b.images(), &[1, 2, 0]);
    }
}
