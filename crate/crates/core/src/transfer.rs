//! Homotopy transfer of the wedge product on `Λ g*` to a minimal
//! A∞-structure on cohomology.
//!
//! Signs. Write `sx` for the suspension, of degree `|x| - 1`. The dga is
//! encoded on the suspension by `b1(sa) = s(δa)` and
//! `b2(sa ⊗ sb) = (-1)^{|a|} s(a ∧ b)`. The transferred structure is the
//! coderivation with components
//!
//! ```text
//! F_1 = i,   F_n = -h Σ_k (-1)^{|F_k|} F_k ∧ F_{n-k},
//! b_n(sx_1 ⊗ … ⊗ sx_n) = s p Σ_k (-1)^{|F_k|} F_k ∧ F_{n-k},
//! ```
//!
//! where `F_k` is evaluated on the first `k` inputs and `F_{n-k}` on the
//! rest. The `F_n` are the components of an A∞ quasi-isomorphism
//! `H → Λ g*`. Unsuspended operations are `m_n = (-1)^{κ_n} s⁻¹ b_n s^{⊗n}`
//! with `κ_n(x) = Σ_i (n - i)|x_i|`, so that `m_2(x, y) = p(i x ∧ i y)`.
//! Stasheff identities are checked in the suspended form
//! `Σ (-1)^{Σ_{i≤r}(|x_i| - 1)} b_{r+1+t}(x_1..x_r, b_s(x_{r+1}..x_{r+s}), ..) = 0`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::chevalley::CochainComplex;
use crate::linalg::{Rational, SparseMatrix, SparseVec};

/// Deformation retract `(i, p, h)` of a cochain complex onto its cohomology.
#[derive(Clone, Debug)]
pub struct TransferData {
    inclusion: Vec<SparseMatrix>,
    projection: Vec<SparseMatrix>,
    homotopy: Vec<SparseMatrix>,
}

impl TransferData {
    /// Per degree `k`: `i_k: H^k → C^k`, `p_k: C^k → H^k`, `h_k: C^k → C^{k-1}`.
    pub fn new(inclusion: Vec<SparseMatrix>, projection: Vec<SparseMatrix>, homotopy: Vec<SparseMatrix>) -> Self {
        assert!(inclusion.len() == projection.len() && projection.len() == homotopy.len());
        Self { inclusion, projection, homotopy }
    }

    pub fn top_degree(&self) -> usize {
        self.inclusion.len() - 1
    }

    pub fn inclusion(&self, k: usize) -> &SparseMatrix {
        &self.inclusion[k]
    }

    pub fn projection(&self, k: usize) -> &SparseMatrix {
        &self.projection[k]
    }

    pub fn homotopy(&self, k: usize) -> &SparseMatrix {
        &self.homotopy[k]
    }

    pub fn betti(&self) -> Vec<usize> {
        self.inclusion.iter().map(SparseMatrix::cols).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("arity bound must be at least 2, got {0}")]
    ArityTooSmall(usize),
    #[error("Stasheff identity fails at arity {arity} on inputs {inputs:?}: defect {defect}")]
    StasheffViolation { arity: usize, inputs: Vec<usize>, defect: SparseVec },
}

/// Grades of cohomology classes: `(degree, weight)` with weight 0 when
/// the algebra is unweighted.
pub(crate) type Grade = (usize, u32);

/// Calls `visit` on every `n`-tuple over `candidates` (in lexicographic
/// order) whose summed grade lies in `targets`.
pub(crate) fn for_each_tuple(
    grades: &[Grade],
    candidates: &[usize],
    n: usize,
    targets: &BTreeSet<Grade>,
    mut visit: impl FnMut(&[usize]),
) {
    if targets.is_empty() || (n > 0 && candidates.is_empty()) {
        return;
    }
    let steps: BTreeSet<Grade> = candidates.iter().map(|&c| grades[c]).collect();
    let mut reach: Vec<BTreeSet<Grade>> = vec![BTreeSet::from([(0, 0)])];
    for r in 1..=n {
        let mut next = BTreeSet::new();
        for &(d, w) in &reach[r - 1] {
            for &(sd, sw) in &steps {
                next.insert((d + sd, w + sw));
            }
        }
        reach.push(next);
    }
    let viable = |partial: Grade, remaining: usize| {
        targets.iter().any(|&(td, tw)| {
            td >= partial.0 && tw >= partial.1 && reach[remaining].contains(&(td - partial.0, tw - partial.1))
        })
    };
    fn rec(
        grades: &[Grade],
        candidates: &[usize],
        n: usize,
        partial: Grade,
        stack: &mut Vec<usize>,
        viable: &dyn Fn(Grade, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if stack.len() == n {
            visit(stack);
            return;
        }
        for &c in candidates {
            let g = grades[c];
            let next = (partial.0 + g.0, partial.1 + g.1);
            if viable(next, n - stack.len() - 1) {
                stack.push(c);
                rec(grades, candidates, n, next, stack, viable, visit);
                stack.pop();
            }
        }
    }
    if viable((0, 0), n) {
        rec(grades, candidates, n, (0, 0), &mut Vec::with_capacity(n), &viable, &mut visit);
    }
}

/// Whether some `n`-tuple over `candidates` has summed grade in `targets`.
pub(crate) fn tuple_feasible(grades: &[Grade], candidates: &[usize], n: usize, targets: &BTreeSet<Grade>) -> bool {
    let steps: BTreeSet<Grade> = candidates.iter().map(|&c| grades[c]).collect();
    let mut reach = BTreeSet::from([(0usize, 0u32)]);
    let (dmax, wmax) = targets.iter().fold((0, 0), |(d, w), &(td, tw)| (d.max(td), w.max(tw)));
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for &(d, w) in &reach {
            for &(sd, sw) in &steps {
                if d + sd <= dmax && w + sw <= wmax {
                    next.insert((d + sd, w + sw));
                }
            }
        }
        reach = next;
    }
    reach.iter().any(|g| targets.contains(g))
}

/// Minimal A∞-algebra on a graded space with a basis of classes, ordered
/// by degree. Operation values are vectors over the global class index.
#[derive(Clone, Debug)]
pub struct MinimalAInfinity {
    degrees: Vec<usize>,
    weights: Option<Vec<u32>>,
    betti: Vec<usize>,
    arity_bound: usize,
    ops: BTreeMap<usize, BTreeMap<Vec<usize>, SparseVec>>,
}

impl MinimalAInfinity {
    /// Builds a structure from explicit operation tables.
    pub fn from_operations(
        betti: Vec<usize>,
        weights: Option<Vec<u32>>,
        arity_bound: usize,
        ops: BTreeMap<usize, BTreeMap<Vec<usize>, SparseVec>>,
    ) -> Self {
        let degrees: Vec<usize> = betti.iter().enumerate().flat_map(|(k, &b)| std::iter::repeat_n(k, b)).collect();
        if let Some(w) = &weights {
            assert_eq!(w.len(), degrees.len());
        }
        let mut ops = ops;
        for table in ops.values_mut() {
            table.retain(|_, v| !v.is_zero());
        }
        Self { degrees, weights, betti, arity_bound, ops }
    }

    pub fn num_classes(&self) -> usize {
        self.degrees.len()
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn top_degree(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn class_degree(&self, c: usize) -> usize {
        self.degrees[c]
    }

    pub fn class_weight(&self, c: usize) -> Option<u32> {
        self.weights.as_ref().map(|w| w[c])
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn max_class_weight(&self) -> Option<u32> {
        self.weights.as_ref().map(|w| w.iter().copied().max().unwrap_or(0))
    }

    pub fn classes_in_degree(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.betti.iter().take(k).sum();
        start..start + self.betti.get(k).copied().unwrap_or(0)
    }

    pub(crate) fn grades(&self) -> Vec<Grade> {
        (0..self.num_classes()).map(|c| (self.degrees[c], self.class_weight(c).unwrap_or(0))).collect()
    }

    /// `(degree, weight)` pairs carried by at least one class.
    pub(crate) fn support(&self) -> BTreeSet<Grade> {
        self.grades().into_iter().collect()
    }

    /// Stored nonzero entries of `m_n`.
    pub fn operation(&self, n: usize) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> + '_ {
        self.ops.get(&n).into_iter().flat_map(|t| t.iter())
    }

    pub fn operation_arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.ops.keys().copied()
    }

    pub fn op(&self, n: usize, inputs: &[usize]) -> SparseVec {
        self.ops.get(&n).and_then(|t| t.get(inputs)).cloned().unwrap_or_default()
    }

    fn kappa(&self, inputs: &[usize]) -> bool {
        let n = inputs.len();
        inputs.iter().enumerate().map(|(i, &c)| (n - 1 - i) * self.degrees[c]).sum::<usize>() % 2 == 1
    }

    /// Suspended component `s⁻¹ b_n(sx_1 ⊗ … ⊗ sx_n)`.
    pub fn bar_op(&self, n: usize, inputs: &[usize]) -> SparseVec {
        let v = self.op(n, inputs);
        if self.kappa(inputs) {
            v.neg()
        } else {
            v
        }
    }

    /// Overwrites one entry of `m_n`.
    pub fn set_entry(&mut self, n: usize, inputs: Vec<usize>, value: SparseVec) {
        let table = self.ops.entry(n).or_default();
        if value.is_zero() {
            table.remove(&inputs);
        } else {
            table.insert(inputs, value);
        }
    }

    /// Multilinear extension of `m_n` to arbitrary vectors.
    pub fn apply(&self, n: usize, args: &[SparseVec]) -> SparseVec {
        assert_eq!(args.len(), n);
        let Some(table) = self.ops.get(&n) else { return SparseVec::new() };
        let mut out = SparseVec::new();
        let mut tuple = Vec::with_capacity(n);
        fn rec(
            table: &BTreeMap<Vec<usize>, SparseVec>,
            args: &[SparseVec],
            tuple: &mut Vec<usize>,
            coeff: Rational,
            out: &mut SparseVec,
        ) {
            if tuple.len() == args.len() {
                if let Some(v) = table.get(tuple.as_slice()) {
                    out.add_scaled(v, &coeff);
                }
                return;
            }
            for (c, a) in args[tuple.len()].iter() {
                tuple.push(c);
                rec(table, args, tuple, &coeff * a, out);
                tuple.pop();
            }
        }
        rec(table, args, &mut tuple, Rational::from_integer(1.into()), &mut out);
        out
    }

    /// Every stored entry of `m_n` lands in degree `Σ|x_i| + 2 - n`.
    pub fn degrees_consistent(&self) -> bool {
        self.ops.iter().all(|(&n, table)| {
            table.iter().all(|(inputs, v)| {
                let s: usize = inputs.iter().map(|&c| self.degrees[c]).sum();
                v.indices().all(|c| self.degrees[c] + n == s + 2)
            })
        })
    }

    /// Every stored entry preserves weight; `None` when unweighted.
    pub fn weights_consistent(&self) -> Option<bool> {
        let w = self.weights.as_ref()?;
        Some(self.ops.values().all(|table| {
            table.iter().all(|(inputs, v)| {
                let s: u32 = inputs.iter().map(|&c| w[c]).sum();
                v.indices().all(|c| w[c] == s)
            })
        }))
    }

    /// Grades `(d + n - 2, w)` of inputs that `m_n` may send to a nonzero class.
    pub(crate) fn input_targets(&self, n: usize) -> BTreeSet<Grade> {
        self.support().into_iter().map(|(d, w)| (d + n - 2, w)).collect()
    }

    /// Positive-degree classes.
    pub(crate) fn positive_classes(&self) -> Vec<usize> {
        (0..self.num_classes()).filter(|&c| self.degrees[c] > 0).collect()
    }

    /// Σ over suspended compositions for one input tuple of length `n`.
    fn stasheff_defect(&self, inputs: &[usize]) -> SparseVec {
        let n = inputs.len();
        let mut total = SparseVec::new();
        for s in 2..=n {
            let a = n + 1 - s;
            if a < 2 {
                continue;
            }
            let mut prefix_parity = 0usize;
            for r in 0..=n - s {
                if r > 0 {
                    prefix_parity += self.degrees[inputs[r - 1]] + 1;
                }
                let inner = self.bar_op(s, &inputs[r..r + s]);
                if inner.is_zero() {
                    continue;
                }
                let mut outer_in = Vec::with_capacity(a);
                outer_in.extend_from_slice(&inputs[..r]);
                outer_in.push(0);
                outer_in.extend_from_slice(&inputs[r + s..]);
                let mut term = SparseVec::new();
                for (y, c) in inner.iter() {
                    outer_in[r] = y;
                    term.add_scaled(&self.bar_op(a, &outer_in), c);
                }
                if prefix_parity % 2 == 1 {
                    total = total.sub(&term);
                } else {
                    total = total.add(&term);
                }
            }
        }
        total
    }
}

/// Memoized evaluation of the quasi-isomorphism components `F_n`.
struct Transfer<'a> {
    cx: &'a CochainComplex,
    td: &'a TransferData,
    offsets: Vec<usize>,
    degrees: Vec<usize>,
    memo: HashMap<Vec<usize>, Option<SparseVec>>,
}

impl<'a> Transfer<'a> {
    fn class_vector(&self, c: usize) -> SparseVec {
        let d = self.degrees[c];
        self.td.inclusion(d).mul_vec(&SparseVec::unit(c - self.offsets[d]))
    }

    fn degree_of(&self, inputs: &[usize]) -> Option<usize> {
        let s: usize = inputs.iter().map(|&c| self.degrees[c]).sum();
        (s + 1).checked_sub(inputs.len())
    }

    /// `F_n` on the slice; `None` when it vanishes.
    fn f(&mut self, inputs: &[usize]) -> Option<SparseVec> {
        if inputs.len() == 1 {
            return Some(self.class_vector(inputs[0]));
        }
        if let Some(v) = self.memo.get(inputs) {
            return v.clone();
        }
        let value = self.f_uncached(inputs);
        self.memo.insert(inputs.to_vec(), value.clone());
        value
    }

    fn f_uncached(&mut self, inputs: &[usize]) -> Option<SparseVec> {
        let deg = self.degree_of(inputs)?;
        if deg + 1 > self.cx.top_degree() {
            return None;
        }
        let sum = self.split_sum(inputs)?;
        let v = self.td.homotopy(deg + 1).mul_vec(&sum).neg();
        (!v.is_zero()).then_some(v)
    }

    /// `Σ_k (-1)^{|F_k|} F_k ∧ F_{n-k}` in degree `Σ|x| - n + 2`.
    fn split_sum(&mut self, inputs: &[usize]) -> Option<SparseVec> {
        let n = inputs.len();
        let mut total = SparseVec::new();
        for k in 1..n {
            let (left, right) = inputs.split_at(k);
            let (Some(dl), Some(dr)) = (self.degree_of(left), self.degree_of(right)) else { continue };
            if dl + dr > self.cx.top_degree() {
                continue;
            }
            let Some(fl) = self.f(left) else { continue };
            let Some(fr) = self.f(right) else { continue };
            let prod = self.cx.wedge(dl, &fl, dr, &fr);
            if dl % 2 == 1 {
                total = total.sub(&prod);
            } else {
                total = total.add(&prod);
            }
        }
        (!total.is_zero()).then_some(total)
    }

    /// `s⁻¹ b_n(sx)` as a vector over global class indices.
    fn bar_component(&mut self, inputs: &[usize]) -> SparseVec {
        let s: usize = inputs.iter().map(|&c| self.degrees[c]).sum();
        let Some(deg) = (s + 2).checked_sub(inputs.len()) else { return SparseVec::new() };
        if deg > self.cx.top_degree() {
            return SparseVec::new();
        }
        match self.split_sum(inputs) {
            None => SparseVec::new(),
            Some(sum) => {
                let off = self.offsets[deg];
                self.td.projection(deg).mul_vec(&sum).remap(|j| j + off)
            }
        }
    }
}

fn class_layout(cx: &CochainComplex, td: &TransferData) -> (Vec<usize>, Vec<usize>, Option<Vec<u32>>) {
    let betti = td.betti();
    let mut offsets = Vec::with_capacity(betti.len());
    let mut degrees = Vec::new();
    for (k, &b) in betti.iter().enumerate() {
        offsets.push(degrees.len());
        degrees.extend(std::iter::repeat_n(k, b));
    }
    let weights = cx.is_weighted().then(|| {
        let mut w = Vec::with_capacity(degrees.len());
        for (k, &b) in betti.iter().enumerate() {
            for j in 0..b {
                let rep = td.inclusion(k).mul_vec(&SparseVec::unit(j));
                w.push(cx.vector_weight(k, &rep).expect("weight-homogeneous representative"));
            }
        }
        w
    });
    (offsets, degrees, weights)
}

/// Transferred operations `m_2, …, m_{arity_bound}`.
///
/// For `n ≥ 3` the operations vanish whenever an input is the unit class,
/// since `h i = 0` and `h h = 0`, so only positive-degree inputs are
/// evaluated there.
pub fn transferred_operations(
    cx: &CochainComplex,
    td: &TransferData,
    arity_bound: usize,
) -> Result<MinimalAInfinity, TransferError> {
    if arity_bound < 2 {
        return Err(TransferError::ArityTooSmall(arity_bound));
    }
    let (offsets, degrees, weights) = class_layout(cx, td);
    let skeleton = MinimalAInfinity::from_operations(td.betti(), weights, arity_bound, BTreeMap::new());
    let grades = skeleton.grades();
    let all: Vec<usize> = (0..skeleton.num_classes()).collect();
    let positive = skeleton.positive_classes();

    let mut tr = Transfer { cx, td, offsets, degrees, memo: HashMap::new() };
    let mut ops = BTreeMap::new();
    for n in 2..=arity_bound {
        let candidates = if n == 2 { &all } else { &positive };
        let targets = skeleton.input_targets(n);
        let mut table = BTreeMap::new();
        for_each_tuple(&grades, candidates, n, &targets, |tuple| {
            let b = tr.bar_component(tuple);
            if !b.is_zero() {
                let v = if skeleton.kappa(tuple) { b.neg() } else { b };
                table.insert(tuple.to_vec(), v);
            }
        });
        ops.insert(n, table);
    }
    Ok(MinimalAInfinity { ops, ..skeleton })
}

/// Checks the Stasheff identities on every basis tensor of length
/// `3 ..= up_to_arity`, unit inputs included.
pub fn check_stasheff(ma: &MinimalAInfinity, up_to_arity: usize) -> Result<(), TransferError> {
    let grades = ma.grades();
    let all: Vec<usize> = (0..ma.num_classes()).collect();
    for n in 3..=up_to_arity {
        // output degree Σ|x| - n + 3
        let targets: BTreeSet<Grade> = ma.support().into_iter().map(|(d, w)| (d + n - 3, w)).collect();
        let mut failure = None;
        for_each_tuple(&grades, &all, n, &targets, |tuple| {
            if failure.is_some() {
                return;
            }
            let defect = ma.stasheff_defect(tuple);
            if !defect.is_zero() {
                failure = Some(TransferError::StasheffViolation { arity: n, inputs: tuple.to_vec(), defect });
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }
    Ok(())
}

/// A nonzero value of `m_k` on a signed shuffle sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleDefect {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub value: SparseVec,
}

fn shuffles(r: usize, n: usize) -> Vec<Vec<bool>> {
    // true = take from the left word
    let mut out = Vec::new();
    fn rec(left: usize, right: usize, acc: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if left == 0 && right == 0 {
            out.push(acc.clone());
            return;
        }
        if left > 0 {
            acc.push(true);
            rec(left - 1, right, acc, out);
            acc.pop();
        }
        if right > 0 {
            acc.push(false);
            rec(left, right - 1, acc, out);
            acc.pop();
        }
    }
    rec(r, n - r, &mut Vec::new(), &mut out);
    out
}

/// Evaluates `b_k` on every `(r, k - r)` shuffle sum of positive-degree
/// basis tensors, with Koszul signs of the suspended degrees, and returns
/// the nonzero values.
pub fn shuffle_defect(ma: &MinimalAInfinity, k: usize) -> Vec<ShuffleDefect> {
    let grades = ma.grades();
    let positive = ma.positive_classes();
    let targets = ma.input_targets(k);
    let shifted = |c: usize| (ma.class_degree(c) + 1) % 2;
    let mut out = Vec::new();
    for r in 1..k {
        let patterns = shuffles(r, k);
        for_each_tuple(&grades, &positive, k, &targets, |tuple| {
            let (left, right) = tuple.split_at(r);
            let mut total = SparseVec::new();
            for pat in &patterns {
                let (mut li, mut ri) = (0, 0);
                let mut word = Vec::with_capacity(k);
                let mut parity = 0usize;
                for &take_left in pat {
                    if take_left {
                        // passes the right letters already placed
                        parity += shifted(left[li]) * right[..ri].iter().map(|&c| shifted(c)).sum::<usize>();
                        word.push(left[li]);
                        li += 1;
                    } else {
                        word.push(right[ri]);
                        ri += 1;
                    }
                }
                let v = ma.bar_op(k, &word);
                total = if parity % 2 == 1 { total.sub(&v) } else { total.add(&v) };
            }
            if !total.is_zero() {
                out.push(ShuffleDefect { left: left.to_vec(), right: right.to_vec(), value: total });
            }
        });
    }
    out
}

/// Rooted planar binary tree with ordered leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Box<PlanarTree>, Box<PlanarTree>),
}

impl PlanarTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// All trees with `k ≥ 1` leaves; there are Catalan(k − 1) of them.
    pub fn all(k: usize) -> Vec<PlanarTree> {
        if k == 1 {
            return vec![PlanarTree::Leaf];
        }
        let mut out = Vec::new();
        for j in 1..k {
            for l in Self::all(j) {
                for r in Self::all(k - j) {
                    out.push(PlanarTree::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
}

/// Contribution of a single tree to `s⁻¹ b_k`, before projection: leaves
/// carry `i`, internal edges carry `-h`, vertices carry the suspended product.
pub fn tree_value(
    cx: &CochainComplex,
    td: &TransferData,
    tree: &PlanarTree,
    inputs: &[usize],
) -> Option<(usize, SparseVec)> {
    let (offsets, degrees, _) = class_layout(cx, td);
    fn eval(
        cx: &CochainComplex,
        td: &TransferData,
        offsets: &[usize],
        degrees: &[usize],
        tree: &PlanarTree,
        inputs: &[usize],
        root: bool,
    ) -> Option<(usize, SparseVec)> {
        match tree {
            PlanarTree::Leaf => {
                let d = degrees[inputs[0]];
                Some((d, td.inclusion(d).mul_vec(&SparseVec::unit(inputs[0] - offsets[d]))))
            }
            PlanarTree::Node(l, r) => {
                let (li, ri) = inputs.split_at(l.leaves());
                let (dl, vl) = eval(cx, td, offsets, degrees, l, li, false)?;
                let (dr, vr) = eval(cx, td, offsets, degrees, r, ri, false)?;
                if dl + dr > cx.top_degree() {
                    return None;
                }
                let mut prod = cx.wedge(dl, &vl, dr, &vr);
                if dl % 2 == 1 {
                    prod = prod.neg();
                }
                if root {
                    return Some((dl + dr, prod));
                }
                let d = (dl + dr).checked_sub(1)?;
                Some((d, td.homotopy(dl + dr).mul_vec(&prod).neg()))
            }
        }
    }
    eval(cx, td, &offsets, &degrees, tree, inputs, true)
}
