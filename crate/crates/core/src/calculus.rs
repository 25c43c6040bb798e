//! Bicovariant first-order calculus of a conjugacy class: functions,
//! 1-forms and 2-forms, the braiding, braided factorials and the exterior
//! algebra dimensions.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::Serialize;

use crate::group::{ClassCalculus, FiniteGroup, ProductPattern};
use crate::linalg::modular::SparseIntMatrix;
use crate::linalg::{
    certified_rank_int, echelon_basis, span_rank, CertifiedRank, Cyclotomic, ExactMatrix, IntMatrix, LinalgError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("degree {degree} exceeds the supported cap of {cap}; pass the unsupported-scale override to force it")]
    DegreeCap { degree: usize, cap: usize },
    #[error("matrix side {side} exceeds the limit {limit} for this computation")]
    SideCap { side: usize, limit: usize },
    #[error("exact elimination is limited to side {limit}, got {side}; use the modular method")]
    ExactTooLarge { side: usize, limit: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A function on the group, stored by its values on the elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFunction {
    values: Vec<Cyclotomic>,
}

impl GroupFunction {
    pub fn zeros(order: usize) -> Self {
        GroupFunction { values: vec![Cyclotomic::zero(); order] }
    }

    pub fn constant(order: usize, c: Cyclotomic) -> Self {
        GroupFunction { values: vec![c; order] }
    }

    pub fn delta(order: usize, g: usize) -> Self {
        let mut f = GroupFunction::zeros(order);
        f.values[g] = Cyclotomic::one();
        f
    }

    pub fn from_values(values: Vec<Cyclotomic>) -> Self {
        GroupFunction { values }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Cyclotomic) -> Self {
        GroupFunction { values: (0..order).map(f).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Cyclotomic> {
        self.values
    }

    pub fn get(&self, g: usize) -> &Cyclotomic {
        &self.values[g]
    }

    pub fn set(&mut self, g: usize, v: Cyclotomic) {
        self.values[g] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<&Cyclotomic> {
        let first = self.values.first()?;
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        GroupFunction { values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Right translation `(R_h f)(g) = f(g·h)`.
    pub fn right_translate(&self, group: &FiniteGroup, h: usize) -> Self {
        GroupFunction::from_fn(self.len(), |g| self.values[group.mul(g, h)].clone())
    }

    /// Left translation `(L_h f)(g) = f(h·g)`.
    pub fn left_translate(&self, group: &FiniteGroup, h: usize) -> Self {
        GroupFunction::from_fn(self.len(), |g| self.values[group.mul(h, g)].clone())
    }

    /// Pointwise inverse, if the function vanishes nowhere.
    pub fn pointwise_inv(&self) -> Option<Self> {
        self.values.iter().map(Cyclotomic::inv).collect::<Option<Vec<_>>>().map(GroupFunction::from_values)
    }
}

impl Add for &GroupFunction {
    type Output = GroupFunction;
    fn add(self, rhs: &GroupFunction) -> GroupFunction {
        GroupFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &GroupFunction {
    type Output = GroupFunction;
    fn sub(self, rhs: &GroupFunction) -> GroupFunction {
        GroupFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &GroupFunction {
    type Output = GroupFunction;
    fn mul(self, rhs: &GroupFunction) -> GroupFunction {
        GroupFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect() }
    }
}

impl Neg for &GroupFunction {
    type Output = GroupFunction;
    fn neg(self) -> GroupFunction {
        GroupFunction { values: self.values.iter().map(|a| -a).collect() }
    }
}

impl AddAssign<&GroupFunction> for GroupFunction {
    fn add_assign(&mut self, rhs: &GroupFunction) {
        for (a, b) in self.values.iter_mut().zip(&rhs.values) {
            *a += b;
        }
    }
}

impl SubAssign<&GroupFunction> for GroupFunction {
    fn sub_assign(&mut self, rhs: &GroupFunction) {
        for (a, b) in self.values.iter_mut().zip(&rhs.values) {
            *a -= b;
        }
    }
}

/// A 1-form `Σ_a f_a e_a` in left-module presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub coeffs: Vec<GroupFunction>,
}

/// A 2-form, with one coefficient per element of the calculus' Ω² basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    pub coeffs: Vec<GroupFunction>,
}

macro_rules! form_linear_ops {
    ($Form:ident) => {
        impl $Form {
            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(GroupFunction::is_zero)
            }

            /// Left multiplication by a function.
            pub fn mul_left(&self, f: &GroupFunction) -> Self {
                $Form { coeffs: self.coeffs.iter().map(|c| f * c).collect() }
            }

            pub fn scale(&self, s: &Cyclotomic) -> Self {
                $Form { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
            }
        }

        impl Add for &$Form {
            type Output = $Form;
            fn add(self, rhs: &$Form) -> $Form {
                $Form { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
            }
        }

        impl Sub for &$Form {
            type Output = $Form;
            fn sub(self, rhs: &$Form) -> $Form {
                $Form { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
            }
        }

        impl Neg for &$Form {
            type Output = $Form;
            fn neg(self) -> $Form {
                $Form { coeffs: self.coeffs.iter().map(|a| -a).collect() }
            }
        }

        impl AddAssign<&$Form> for $Form {
            fn add_assign(&mut self, rhs: &$Form) {
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a += b;
                }
            }
        }

        impl SubAssign<&$Form> for $Form {
            fn sub_assign(&mut self, rhs: &$Form) {
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a -= b;
                }
            }
        }
    };
}

form_linear_ops!(OneForm);
form_linear_ops!(TwoForm);

/// The braiding `Ψ(e_a⊗e_b) = e_{aba⁻¹}⊗e_a` as a permutation of the
/// lexicographic basis of Ω₀⊗Ω₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidData {
    n: usize,
    perm: Vec<usize>,
}

impl BraidData {
    pub fn new(class: &ClassCalculus) -> Self {
        let n = class.size();
        let perm = (0..n * n).map(|ab| {
            let (a, b) = (ab / n, ab % n);
            class.ad()[a][b] * n + a
        });
        BraidData { n, perm: perm.collect() }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    /// Image index of `e_a⊗e_b` (index `a·n + b`).
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n * self.n, self.n * self.n);
        for (j, &i) in self.perm.iter().enumerate() {
            m[(i, j)] = Cyclotomic::one();
        }
        m
    }

    /// Smallest k ≥ 1 with Ψᵏ = id.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.perm.clone();
        while cur.iter().enumerate().any(|(i, &j)| i != j) {
            cur = cur.iter().map(|&j| self.perm[j]).collect();
            k += 1;
        }
        k
    }

    /// Ψ acting on tensor slots `slot, slot + 1` of a degree-m basis index.
    pub fn apply_at(&self, m: usize, slot: usize, index: usize) -> usize {
        let n = self.n;
        let high = n.pow((m - slot - 2) as u32);
        let pair = (index / high) % (n * n);
        let prefix = index / (high * n * n);
        (prefix * n * n + self.perm[pair]) * high + index % high
    }

    /// The braided integer `[m, −Ψ] = id − Ψ₁₂(id ⊗ [m−1, −Ψ])`.
    pub fn braided_integer(&self, m: usize) -> SparseIntMatrix {
        assert!(m >= 1, "braided integers start at degree 1");
        let n = self.n;
        let mut current = SparseIntMatrix::identity(n);
        for k in 2..=m {
            let side = n.pow(k as u32);
            let block = side / n;
            let mut next = SparseIntMatrix::identity(side);
            for j in 0..side {
                let (a, r) = (j / block, j % block);
                let target = self.apply_at(k, 0, j);
                for &(c, v) in &current.rows[r] {
                    next.add_entry(target, a * block + c, -v);
                }
            }
            current = next;
        }
        current
    }

    /// The braided factorial `A_m = (id⊗[2])(id⊗[3])⋯[m]`, computed as
    /// `A_m = (id ⊗ A_{m−1})·[m]`.
    pub fn braided_factorial(&self, m: usize, limits: &ScaleLimits) -> Result<IntMatrix, CalculusError> {
        limits.check(self.n, m)?;
        let mut acc = IntMatrix::identity(self.n);
        for k in 2..=m {
            acc = acc.identity_kron_mul_sparse(self.n, &self.braided_integer(k));
        }
        Ok(acc)
    }

    /// Basis of `ker(id − Ψ)` in reduced echelon form.
    pub fn relations(&self) -> Vec<Vec<Cyclotomic>> {
        ExactMatrix::identity(self.n * self.n).sub(&self.matrix()).nullspace()
    }
}

/// Guard rails for the tensor-power computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleLimits {
    pub max_degree: usize,
    pub max_side: usize,
    pub unsupported_scale: bool,
}

impl Default for ScaleLimits {
    fn default() -> Self {
        ScaleLimits { max_degree: 6, max_side: 4096, unsupported_scale: false }
    }
}

impl ScaleLimits {
    pub fn check(&self, n: usize, m: usize) -> Result<(), CalculusError> {
        if self.unsupported_scale {
            return Ok(());
        }
        if m > self.max_degree {
            return Err(CalculusError::DegreeCap { degree: m, cap: self.max_degree });
        }
        let side = n.checked_pow(m as u32).unwrap_or(usize::MAX);
        if side > self.max_side {
            return Err(CalculusError::SideCap { side, limit: self.max_side });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    Exact,
    Modular,
    /// Exact up to side 256, modular above.
    Auto,
}

const EXACT_SIDE_LIMIT: usize = 1024;
const AUTO_EXACT_SIDE: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExteriorDimension {
    pub degree: usize,
    pub dimension: usize,
    pub method: &'static str,
    pub certificate: Option<CertifiedRank>,
}

/// `dim Ω^m` over the function algebra, i.e. the rank of `A_m`.
pub fn exterior_dimension(
    braid: &BraidData,
    m: usize,
    method: RankMethod,
    limits: &ScaleLimits,
) -> Result<ExteriorDimension, CalculusError> {
    let n = braid.generators();
    let trivial = |dimension| ExteriorDimension { degree: m, dimension, method: "exact", certificate: None };
    match m {
        0 => return Ok(trivial(1)),
        1 => return Ok(trivial(n)),
        _ => {}
    }
    let side = n.pow(m as u32);
    let exact = match method {
        RankMethod::Exact => {
            if side > EXACT_SIDE_LIMIT {
                return Err(CalculusError::ExactTooLarge { side, limit: EXACT_SIDE_LIMIT });
            }
            true
        }
        RankMethod::Modular => false,
        RankMethod::Auto => side <= AUTO_EXACT_SIDE,
    };
    let a = braid.braided_factorial(m, limits)?;
    if exact {
        Ok(trivial(a.to_exact().rank()))
    } else {
        let cert = certified_rank_int(&a)?;
        Ok(ExteriorDimension { degree: m, dimension: cert.rank, method: "modular-certified", certificate: Some(cert) })
    }
}

/// Degree-m dimension of the quadratic algebra with only the degree-2
/// relations `ker(id − Ψ)` imposed.
///
/// Computed as the dimension of the joint annihilator of all
/// `Ω₀^{i−1} ⊗ ker(id−Ψ) ⊗ Ω₀^{m−i−1}`, built slot by slot: a tensor in
/// `V_{m−1} ⊗ Ω₀` belongs to `V_m` when its last two slots pair to zero with
/// every relation.
pub fn quadratic_dimension(braid: &BraidData, m: usize, limits: &ScaleLimits) -> Result<usize, CalculusError> {
    limits.check(braid.generators(), m)?;
    let n = braid.generators();
    if m < 2 {
        return Ok(n.pow(m as u32));
    }
    let relations = braid.relations();
    // V_1 = Ω₀; V_k spanned by `current`, vectors of length n^k
    let mut current: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }).collect())
        .collect();
    for k in 2..=m {
        let prev_side = n.pow((k - 1) as u32);
        let prefix_count = prev_side / n;
        let d = current.len();
        // unknown (j, c): coefficient of current[j] ⊗ e_c
        let mut rows = Vec::new();
        for rel in &relations {
            for prefix in 0..prefix_count {
                let row: Vec<Cyclotomic> = (0..d * n)
                    .map(|col| {
                        let (j, c) = (col / n, col % n);
                        (0..n)
                            .filter_map(|s| {
                                let b = &current[j][prefix * n + s];
                                let r = &rel[s * n + c];
                                (!b.is_zero() && !r.is_zero()).then(|| b * r)
                            })
                            .sum()
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..d * n)
                .map(|i| (0..d * n).map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }).collect())
                .collect()
        } else {
            ExactMatrix::from_rows(rows).nullspace()
        };
        let side = prev_side * n;
        let next: Vec<Vec<Cyclotomic>> = kernel
            .iter()
            .map(|alpha| {
                let mut v = vec![Cyclotomic::zero(); side];
                for (col, coef) in alpha.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let (j, c) = (col / n, col % n);
                    for (idx, b) in current[j].iter().enumerate() {
                        if !b.is_zero() {
                            v[idx * n + c] += coef * b;
                        }
                    }
                }
                v
            })
            .collect();
        current = echelon_basis(&next);
    }
    Ok(current.len())
}

/// The calculus of a class: braiding, Ω² basis and reduction onto it.
#[derive(Clone, Debug)]
pub struct Calculus {
    class: ClassCalculus,
    braid: BraidData,
    relations: Vec<Vec<Cyclotomic>>,
    basis: Vec<(usize, usize)>,
    /// Column `a·n + b` holds the coordinates of `e_a∧e_b` in `basis`.
    reduction: ExactMatrix,
    /// Nonzero entries of each reduction column.
    reduction_cols: Vec<Vec<(usize, Cyclotomic)>>,
}

impl Calculus {
    pub fn new(class: ClassCalculus) -> Self {
        let braid = BraidData::new(&class);
        let relations = braid.relations();
        let n = class.size();
        let unit = |a: usize, b: usize| {
            let mut v = vec![Cyclotomic::zero(); n * n];
            v[a * n + b] = Cyclotomic::one();
            v
        };
        let complements = |pairs: &[(usize, usize)]| {
            let mut all = relations.clone();
            all.extend(pairs.iter().map(|&(a, b)| unit(a, b)));
            span_rank(&all) == n * n && pairs.len() + relations.len() == n * n
        };
        let preferred: Option<Vec<(usize, usize)>> = (n == 4
            && class.classify_products() == Ok(ProductPattern::SquaresMixed))
        .then(|| vec![(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (1, 2), (2, 3), (1, 3)]);
        let basis = match preferred {
            Some(pairs) if complements(&pairs) => pairs,
            _ => {
                let mut chosen: Vec<(usize, usize)> = Vec::new();
                let mut span = relations.clone();
                let mut rank = span_rank(&span);
                for a in 0..n {
                    for b in 0..n {
                        span.push(unit(a, b));
                        let r = span_rank(&span);
                        if r > rank {
                            rank = r;
                            chosen.push((a, b));
                        } else {
                            span.pop();
                        }
                    }
                }
                chosen
            }
        };
        let mut columns: Vec<Vec<Cyclotomic>> = basis.iter().map(|&(a, b)| unit(a, b)).collect();
        columns.extend(relations.iter().cloned());
        let change = ExactMatrix::from_columns(n * n, &columns).inverse().expect("basis and relations span");
        let reduction = ExactMatrix::from_fn(basis.len(), n * n, |i, j| change[(i, j)].clone());
        let reduction_cols = (0..n * n)
            .map(|j| {
                (0..basis.len()).filter(|&i| !reduction[(i, j)].is_zero()).map(|i| (i, reduction[(i, j)].clone())).collect()
            })
            .collect();
        Calculus { class, braid, relations, basis, reduction, reduction_cols }
    }

    pub fn class(&self) -> &ClassCalculus {
        &self.class
    }

    pub fn group(&self) -> &FiniteGroup {
        self.class.group()
    }

    pub fn braid(&self) -> &BraidData {
        &self.braid
    }

    pub fn generators(&self) -> usize {
        self.class.size()
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    /// Echelon basis of `ker(id − Ψ)`, the degree-2 relations.
    pub fn relations(&self) -> &[Vec<Cyclotomic>] {
        &self.relations
    }

    /// The Ω² basis as wedge pairs `e_a∧e_b` of class positions.
    pub fn two_form_basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn two_form_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn two_form_label(&self, i: usize) -> String {
        let (a, b) = self.basis[i];
        format!("e_{}^e_{}", self.class.label(a), self.class.label(b))
    }

    /// Coordinates of `e_a∧e_b` in the Ω² basis.
    pub fn wedge_coords(&self, a: usize, b: usize) -> Vec<Cyclotomic> {
        self.reduction.column(a * self.generators() + b)
    }

    pub fn reduction_matrix(&self) -> &ExactMatrix {
        &self.reduction
    }

    pub fn zero_function(&self) -> GroupFunction {
        GroupFunction::zeros(self.order())
    }

    pub fn constant(&self, c: Cyclotomic) -> GroupFunction {
        GroupFunction::constant(self.order(), c)
    }

    pub fn zero_one_form(&self) -> OneForm {
        OneForm { coeffs: vec![self.zero_function(); self.generators()] }
    }

    pub fn zero_two_form(&self) -> TwoForm {
        TwoForm { coeffs: vec![self.zero_function(); self.two_form_dim()] }
    }

    /// The basic 1-form `e_a`.
    pub fn e(&self, a: usize) -> OneForm {
        let mut w = self.zero_one_form();
        w.coeffs[a] = self.constant(Cyclotomic::one());
        w
    }

    /// A 1-form with constant coefficients.
    pub fn constant_one_form(&self, coeffs: &[Cyclotomic]) -> OneForm {
        OneForm { coeffs: coeffs.iter().map(|c| self.constant(c.clone())).collect() }
    }

    /// The Maurer–Cartan form `θ = Σ_a e_a`.
    pub fn theta(&self) -> OneForm {
        self.constant_one_form(&vec![Cyclotomic::one(); self.generators()])
    }

    /// `R_a` for the class element at position `a`.
    pub fn right(&self, a: usize, f: &GroupFunction) -> GroupFunction {
        f.right_translate(self.group(), self.class.element(a))
    }

    /// `∂^a = R_a − id`.
    pub fn partial(&self, a: usize, f: &GroupFunction) -> GroupFunction {
        &self.right(a, f) - f
    }

    pub fn d0(&self, f: &GroupFunction) -> OneForm {
        OneForm { coeffs: (0..self.generators()).map(|a| self.partial(a, f)).collect() }
    }

    /// `w·f` rewritten in left form: `(g e_a) f = g R_a(f) e_a`.
    pub fn one_form_mul_right(&self, w: &OneForm, f: &GroupFunction) -> OneForm {
        OneForm { coeffs: w.coeffs.iter().enumerate().map(|(a, g)| g * &self.right(a, f)).collect() }
    }

    /// `Σ_b e_b h_b = Σ_b R_b(h_b) e_b`.
    pub fn right_to_left(&self, right_coeffs: &[GroupFunction]) -> OneForm {
        OneForm { coeffs: right_coeffs.iter().enumerate().map(|(b, h)| self.right(b, h)).collect() }
    }

    /// Inverse of [`Calculus::right_to_left`].
    pub fn left_to_right(&self, w: &OneForm) -> Vec<GroupFunction> {
        w.coeffs
            .iter()
            .enumerate()
            .map(|(b, f)| f.right_translate(self.group(), self.group().inv(self.class.element(b))))
            .collect()
    }

    /// Reduces a tensor `Σ f_{ab} e_a⊗e_b` (left coefficients) to Ω².
    pub fn wedge_tensor(&self, coeffs: &[Vec<GroupFunction>]) -> TwoForm {
        let n = self.generators();
        let mut out = self.zero_two_form();
        for a in 0..n {
            for b in 0..n {
                let f = &coeffs[a][b];
                if f.is_zero() {
                    continue;
                }
                for (beta, c) in &self.reduction_cols[a * n + b] {
                    if c.is_one() {
                        out.coeffs[*beta] += f;
                    } else {
                        out.coeffs[*beta] += &f.scale(c);
                    }
                }
            }
        }
        out
    }

    /// `(f e_a)∧(h e_b) = f R_a(h) e_a∧e_b`.
    pub fn wedge(&self, u: &OneForm, v: &OneForm) -> TwoForm {
        let n = self.generators();
        let coeffs: Vec<Vec<GroupFunction>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if u.coeffs[a].is_zero() || v.coeffs[b].is_zero() {
                            self.zero_function()
                        } else {
                            &u.coeffs[a] * &self.right(a, &v.coeffs[b])
                        }
                    })
                    .collect()
            })
            .collect();
        self.wedge_tensor(&coeffs)
    }

    /// `w·f` for a 2-form: each basis wedge `e_a∧e_b` moves `f` through as
    /// `R_{ab}`.
    pub fn two_form_mul_right(&self, w: &TwoForm, f: &GroupFunction) -> TwoForm {
        TwoForm {
            coeffs: w
                .coeffs
                .iter()
                .zip(&self.basis)
                .map(|(c, &(a, b))| c * &f.right_translate(self.group(), self.class.product(a, b)))
                .collect(),
        }
    }

    /// `de_a = θ∧e_a + e_a∧θ`.
    pub fn de(&self, a: usize) -> TwoForm {
        let theta = self.theta();
        let ea = self.e(a);
        &self.wedge(&theta, &ea) + &self.wedge(&ea, &theta)
    }

    /// `d(Σ f_a e_a) = Σ d0(f_a)∧e_a + f_a de_a`.
    pub fn d1(&self, w: &OneForm) -> TwoForm {
        let mut out = self.zero_two_form();
        for (a, f) in w.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let ea = self.e(a);
            out += &self.wedge(&self.d0(f), &ea);
            out += &self.de(a).mul_left(f);
        }
        out
    }

    /// Relations of `ker(id − Ψ)` whose pairs all multiply to `g`, with the
    /// pairs `(a, b)` having `ab = g`.
    pub fn product_block(&self, g: usize) -> (Vec<(usize, usize)>, Vec<Vec<Cyclotomic>>) {
        let n = self.generators();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.class.product(a, b) == g).collect();
        let rels = self
            .relations
            .iter()
            .filter(|v| pairs.iter().any(|&(a, b)| !v[a * n + b].is_zero()))
            .map(|v| pairs.iter().map(|&(a, b)| v[a * n + b].clone()).collect())
            .collect();
        (pairs, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn a4() -> Calculus {
        Calculus::new(ClassCalculus::from_label(FiniteGroup::alternating4(), "t").unwrap())
    }

    #[test]
    fn braiding_examples() {
        let c = a4();
        // Ψ(e_t⊗e_x) = e_z⊗e_t
        assert_eq!(c.braid().permutation()[1], 3 * 4);
        let abelian = ClassCalculus::from_label(FiniteGroup::cyclic(3).unwrap(), "g").unwrap();
        let b = BraidData::new(&abelian);
        assert_eq!(b.permutation(), &[0]);
        assert!(c.braid().order() > 1);
    }

    #[test]
    fn braid_relation() {
        let b = a4().braid().clone();
        let side = 64;
        for i in 0..side {
            let lhs = b.apply_at(3, 0, b.apply_at(3, 1, b.apply_at(3, 0, i)));
            let rhs = b.apply_at(3, 1, b.apply_at(3, 0, b.apply_at(3, 1, i)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn low_braided_integers() {
        let b = a4().braid().clone();
        assert_eq!(b.braided_integer(1).to_dense(), IntMatrix::identity(4));
        let two = b.braided_integer(2).to_dense().to_exact();
        assert_eq!(two, ExactMatrix::identity(16).sub(&b.matrix()));
        let three = b.braided_integer(3).to_dense();
        assert!(three.max_abs() <= 1);
    }

    #[test]
    fn omega_two_is_eight_dimensional() {
        let c = a4();
        assert_eq!(c.relations().len(), 8);
        assert_eq!(c.two_form_dim(), 8);
        assert_eq!(c.two_form_label(0), "e_t^e_x");
        let abelian = ClassCalculus::from_label(FiniteGroup::cyclic(2).unwrap(), "g").unwrap();
        assert_eq!(Calculus::new(abelian).two_form_dim(), 0);
    }

    #[test]
    fn partial_and_d0() {
        let c = a4();
        let g = c.group();
        let e = GroupFunction::delta(12, 0);
        let t2 = g.index_of("t2").unwrap();
        let expected = &GroupFunction::delta(12, t2) - &e;
        assert_eq!(c.partial(0, &e), expected);
        assert!(c.d0(&c.constant(Cyclotomic::from_int(3))).is_zero());
    }

    #[test]
    fn theta_relations() {
        let c = a4();
        let theta = c.theta();
        assert!(c.wedge(&theta, &theta).is_zero());
        assert!(c.d1(&theta).is_zero());
        for a in 0..4 {
            assert!(c.wedge(&c.e(a), &c.e(a)).is_zero());
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let c = a4();
        for (i, &(a, b)) in c.two_form_basis().iter().enumerate() {
            let coords = c.wedge_coords(a, b);
            for (j, x) in coords.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert!(x.is_zero() || i == j);
            }
        }
    }

    #[test]
    fn d1_d0_vanishes() {
        let c = a4();
        for g in 0..12 {
            assert!(c.d1(&c.d0(&GroupFunction::delta(12, g))).is_zero());
        }
    }

    #[test]
    fn right_left_round_trip() {
        let c = a4();
        let e = GroupFunction::delta(12, 0);
        let w = c.right_to_left(&[e.clone(), c.zero_function(), c.zero_function(), c.zero_function()]);
        let t2 = c.group().index_of("t2").unwrap();
        assert_eq!(w.coeffs[0], GroupFunction::delta(12, t2));
        assert_eq!(c.right_to_left(&c.left_to_right(&w)), w);
    }

    #[test]
    fn s3_omega_two() {
        let s3 = ClassCalculus::from_label(FiniteGroup::symmetric3(), "(12)").unwrap();
        let c = Calculus::new(s3);
        assert_eq!(c.two_form_dim(), 4);
        assert_eq!(9 - c.relations().len(), 4);
    }
}
