//! Metrics, spin connections and their curvature in the Maurer–Cartan
//! framing: torsion, cotorsion, regularity, Riemann and Ricci tensors, and
//! the linear solvers for the connection moduli.

use std::ops::{Add, Sub};

use crate::calculus::{Calculus, GroupFunction, OneForm, TwoForm};
use crate::group::ProductPattern;
use crate::linalg::{AffineSpace, Cyclotomic, ExactMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RiemannError {
    #[error("metric parameter {0} makes η degenerate (μ = −1/n)")]
    DegenerateMetric(String),
    #[error("η is not invertible")]
    SingularMetric,
    #[error("quadratic curvature terms do not vanish on the torsion-free family")]
    QuadraticTermsNonzero,
    #[error("requires a four-element cyclic class with the mixed-squares product pattern")]
    NeedsSquaresMixed,
    #[error("the linear system is inconsistent")]
    Inconsistent,
    #[error("the Ricci-flat system is not uniquely solvable (rank {rank} < {unknowns})")]
    NotUnique { rank: usize, unknowns: usize },
    #[error("the Ricci-flat point fails {0} of the coefficient equations")]
    ResidualNonzero(usize),
}

/// Spin connection: `components[a]` is the 1-form `A_a = Σ_b A_a^b e_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub components: Vec<OneForm>,
}

impl Connection {
    pub fn zero(calc: &Calculus) -> Self {
        Connection { components: vec![calc.zero_one_form(); calc.generators()] }
    }

    /// Connection with constant coefficients `A_a^b = coeffs[a][b]`.
    pub fn constant(calc: &Calculus, coeffs: &[Vec<Cyclotomic>]) -> Self {
        Connection { components: coeffs.iter().map(|row| calc.constant_one_form(row)).collect() }
    }

    /// `A_a^b` as a function on the group.
    pub fn coefficient(&self, a: usize, b: usize) -> &GroupFunction {
        &self.components[a].coeffs[b]
    }

    pub fn sum(&self) -> OneForm {
        let mut it = self.components.iter();
        let first = it.next().expect("nonempty class").clone();
        it.fold(first, |acc, w| &acc + w)
    }

    /// Flattened raw unknowns, index `(a·n + b)·|G| + g`.
    pub fn to_vector(&self) -> Vec<Cyclotomic> {
        self.components.iter().flat_map(|w| w.coeffs.iter().flat_map(|f| f.values().iter().cloned())).collect()
    }

    pub fn from_vector(calc: &Calculus, v: &[Cyclotomic]) -> Self {
        let (n, order) = (calc.generators(), calc.order());
        assert_eq!(v.len(), n * n * order);
        let components = (0..n)
            .map(|a| OneForm {
                coeffs: (0..n)
                    .map(|b| GroupFunction::from_values(v[(a * n + b) * order..(a * n + b + 1) * order].to_vec()))
                    .collect(),
            })
            .collect();
        Connection { components }
    }
}

/// An element `Σ f_{ab} e_a⊗e_b` of Ω¹⊗_H Ω¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    pub coeffs: Vec<Vec<GroupFunction>>,
}

impl TensorSquare {
    pub fn zero(calc: &Calculus) -> Self {
        let n = calc.generators();
        TensorSquare { coeffs: vec![vec![calc.zero_function(); n]; n] }
    }

    /// Constant-coefficient tensor.
    pub fn constant(calc: &Calculus, coeffs: &[Vec<Cyclotomic>]) -> Self {
        TensorSquare {
            coeffs: coeffs.iter().map(|row| row.iter().map(|c| calc.constant(c.clone())).collect()).collect(),
        }
    }

    /// `u ⊗ v`, moving the coefficients of `v` to the left.
    pub fn product(calc: &Calculus, u: &OneForm, v: &OneForm) -> Self {
        let n = calc.generators();
        TensorSquare {
            coeffs: (0..n)
                .map(|a| (0..n).map(|b| &u.coeffs[a] * &calc.right(a, &v.coeffs[b])).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(GroupFunction::is_zero)
    }

    pub fn mul_left(&self, f: &GroupFunction) -> Self {
        TensorSquare { coeffs: self.coeffs.iter().map(|row| row.iter().map(|c| f * c).collect()).collect() }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        TensorSquare { coeffs: self.coeffs.iter().map(|row| row.iter().map(|c| c.scale(s)).collect()).collect() }
    }
}

impl Add for &TensorSquare {
    type Output = TensorSquare;
    fn add(self, rhs: &TensorSquare) -> TensorSquare {
        TensorSquare {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }
}

impl Sub for &TensorSquare {
    type Output = TensorSquare;
    fn sub(self, rhs: &TensorSquare) -> TensorSquare {
        TensorSquare {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
                .collect(),
        }
    }
}

/// An element of Ω²⊗_H Ω¹, `coeffs[β][c]` multiplying `E_β ⊗ e_c` for the
/// Ω² basis `E_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFormTensorOne {
    pub coeffs: Vec<Vec<GroupFunction>>,
}

impl TwoFormTensorOne {
    pub fn zero(calc: &Calculus) -> Self {
        TwoFormTensorOne { coeffs: vec![vec![calc.zero_function(); calc.generators()]; calc.two_form_dim()] }
    }

    /// `w ⊗ e_c`.
    pub fn basic(calc: &Calculus, w: &TwoForm, c: usize) -> Self {
        let mut out = TwoFormTensorOne::zero(calc);
        for (beta, f) in w.coeffs.iter().enumerate() {
            out.coeffs[beta][c] = f.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(GroupFunction::is_zero)
    }

    fn add_assign(&mut self, other: &TwoFormTensorOne) {
        for (r, s) in self.coeffs.iter_mut().zip(&other.coeffs) {
            for (a, b) in r.iter_mut().zip(s) {
                *a += b;
            }
        }
    }
}

/// Ad-invariant bilinear form η on the class and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    pub eta: ExactMatrix,
    pub eta_inv: ExactMatrix,
    pub mu: Option<Cyclotomic>,
}

impl Metric {
    /// `η = δ + μ·J` with `J` the all-ones matrix.
    pub fn from_mu(calc: &Calculus, mu: &Cyclotomic) -> Result<Self, RiemannError> {
        let n = calc.generators();
        let denom = &Cyclotomic::one() + &(mu * &Cyclotomic::from_int(n as i64));
        if denom.is_zero() {
            return Err(RiemannError::DegenerateMetric(mu.to_string()));
        }
        let eta = ExactMatrix::from_fn(n, n, |a, b| if a == b { &Cyclotomic::one() + mu } else { mu.clone() });
        let off = -&(mu / &denom);
        let eta_inv = ExactMatrix::from_fn(n, n, |a, b| if a == b { &Cyclotomic::one() + &off } else { off.clone() });
        Ok(Metric { eta, eta_inv, mu: Some(mu.clone()) })
    }

    pub fn from_matrix(eta: ExactMatrix) -> Result<Self, RiemannError> {
        let eta_inv = eta.inverse().ok_or(RiemannError::SingularMetric)?;
        Ok(Metric { eta, eta_inv, mu: None })
    }

    /// `g = Σ_{a,b} η^{ba} e_b⊗e_a`.
    pub fn tensor(&self, calc: &Calculus) -> TensorSquare {
        let n = calc.generators();
        TensorSquare::constant(calc, &(0..n).map(|b| (0..n).map(|a| self.eta[(b, a)].clone()).collect()).collect::<Vec<_>>())
    }

    /// Coframing `e^{*a} = Σ_b e_b η^{ba}`.
    pub fn coframe(&self, calc: &Calculus, a: usize) -> OneForm {
        let n = calc.generators();
        calc.constant_one_form(&(0..n).map(|b| self.eta[(b, a)].clone()).collect::<Vec<_>>())
    }
}

/// Basis of the Ad-invariant bilinear forms: `η^{g⁻¹ag, b} = η^{a, gbg⁻¹}`.
pub fn invariant_bilinear_space(calc: &Calculus) -> Vec<ExactMatrix> {
    let class = calc.class();
    let group = calc.group();
    let n = class.size();
    let conj = |g: usize, a: usize| class.position(group.conjugate(g, class.element(a))).expect("class is closed");
    let mut rows = Vec::new();
    for g in 0..group.order() {
        let g_inv = group.inv(g);
        for a in 0..n {
            for b in 0..n {
                let (lhs, rhs) = (conj(g_inv, a) * n + b, a * n + conj(g, b));
                if lhs == rhs {
                    continue;
                }
                let mut row = vec![Cyclotomic::zero(); n * n];
                row[lhs] += Cyclotomic::one();
                row[rhs] -= Cyclotomic::one();
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        ExactMatrix::identity(n * n).to_rows()
    } else {
        ExactMatrix::from_rows(rows).nullspace()
    };
    kernel.into_iter().map(|v| ExactMatrix::from_fn(n, n, |i, j| v[i * n + j].clone())).collect()
}

/// Levi-Civita candidate `A_a = e_a − θ/n`.
pub fn levi_civita(calc: &Calculus) -> Connection {
    let n = calc.generators();
    let shift = Cyclotomic::from_ratio(-1, n as i64);
    let coeffs: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|a| (0..n).map(|b| if a == b { &Cyclotomic::one() + &shift } else { shift.clone() }).collect())
        .collect();
    Connection::constant(calc, &coeffs)
}

/// `T_a = de_a + Σ_b A_b∧(e_{b⁻¹ab} − e_a)`.
pub fn torsion(calc: &Calculus, conn: &Connection, a: usize) -> TwoForm {
    let class = calc.class();
    let ea = calc.e(a);
    let mut out = calc.de(a);
    for (b, ab) in conn.components.iter().enumerate() {
        let c = class.ad_inv(b, a);
        if c == a {
            continue;
        }
        out += &calc.wedge(ab, &(&calc.e(c) - &ea));
    }
    out
}

/// Cotorsion `de^{*a} + Σ_b (e^{*bab⁻¹} − e^{*a})∧A_b` for the coframing of η.
pub fn cotorsion(calc: &Calculus, metric: &Metric, conn: &Connection, a: usize) -> TwoForm {
    let n = calc.generators();
    let class = calc.class();
    let mut out = calc.zero_two_form();
    for c in 0..n {
        let coef = &metric.eta[(c, a)];
        if !coef.is_zero() {
            out += &calc.de(c).scale(coef);
        }
    }
    let star_a = metric.coframe(calc, a);
    for (b, ab) in conn.components.iter().enumerate() {
        let moved = class.ad()[b][a];
        if moved == a {
            continue;
        }
        let diff = &metric.coframe(calc, moved) - &star_a;
        out += &calc.wedge(&diff, ab);
    }
    out
}

/// The 2-forms `Σ_{ab=g} A_a∧A_b` for every `g ∉ 𝒞 ∪ {e}`, keyed by `g`.
pub fn regularity_terms(calc: &Calculus, conn: &Connection) -> Vec<(usize, TwoForm)> {
    let class = calc.class();
    let n = class.size();
    let mut targets: Vec<usize> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| class.product(a, b))
        .filter(|&g| g != 0 && class.position(g).is_none())
        .collect();
    targets.sort_unstable();
    targets.dedup();
    targets
        .into_iter()
        .map(|g| {
            let mut acc = calc.zero_two_form();
            for a in 0..n {
                for b in 0..n {
                    if class.product(a, b) == g {
                        acc += &calc.wedge(&conn.components[a], &conn.components[b]);
                    }
                }
            }
            (g, acc)
        })
        .collect()
}

pub fn is_regular(calc: &Calculus, conn: &Connection) -> bool {
    regularity_terms(calc, conn).iter().all(|(_, w)| w.is_zero())
}

const T: usize = 0;
const X: usize = 1;
const Y: usize = 2;
const Z: usize = 3;

fn wedge_sum(calc: &Calculus, conn: &Connection, pairs: &[(usize, usize)]) -> TwoForm {
    let mut acc = calc.zero_two_form();
    for &(a, b) in pairs {
        acc += &calc.wedge(&conn.components[a], &conn.components[b]);
    }
    acc
}

/// The four regularity equations for classes with the mixed-squares product
/// pattern (class arranged as t, x, y, z).
pub fn regularity_system_squares_mixed(calc: &Calculus, conn: &Connection) -> Vec<TwoForm> {
    [
        [(T, T), (X, Y), (Y, Z), (Z, X)],
        [(T, X), (X, Z), (Y, Y), (Z, T)],
        [(T, Y), (X, T), (Y, X), (Z, Z)],
        [(T, Z), (X, X), (Y, T), (Z, Y)],
    ]
    .iter()
    .map(|pairs| wedge_sum(calc, conn, pairs))
    .collect()
}

/// The eight regularity equations for classes with the separate-squares product
/// pattern (class arranged as t, x, y, z).
pub fn regularity_system_squares_separate(calc: &Calculus, conn: &Connection) -> Vec<TwoForm> {
    let mut out: Vec<TwoForm> = (0..4).map(|a| wedge_sum(calc, conn, &[(a, a)])).collect();
    for pairs in [
        [(T, X), (X, Z), (Z, T)],
        [(T, Y), (X, T), (Y, X)],
        [(T, Z), (Y, T), (Z, Y)],
        [(X, Y), (Y, Z), (Z, X)],
    ] {
        out.push(wedge_sum(calc, conn, &pairs));
    }
    out
}

/// Quadratic part of the curvature: `Σ_{cd=a} A_c∧A_d − Σ_c (A_c∧A_a + A_a∧A_c)`.
pub fn curvature_quadratic(calc: &Calculus, conn: &Connection, a: usize) -> TwoForm {
    let class = calc.class();
    let n = class.size();
    let target = class.element(a);
    let mut out = calc.zero_two_form();
    for c in 0..n {
        for d in 0..n {
            if class.product(c, d) == target {
                out += &calc.wedge(&conn.components[c], &conn.components[d]);
            }
        }
    }
    let aa = &conn.components[a];
    for ac in &conn.components {
        out -= &calc.wedge(ac, aa);
        out -= &calc.wedge(aa, ac);
    }
    out
}

/// Curvature 2-forms `F_a = dA_a + Σ_{cd=a} A_c∧A_d − Σ_c (A_c∧A_a + A_a∧A_c)`.
pub fn curvature(calc: &Calculus, conn: &Connection) -> Vec<TwoForm> {
    (0..calc.generators())
        .map(|a| &calc.d1(&conn.components[a]) + &curvature_quadratic(calc, conn, a))
        .collect()
}

/// `∇α = dα^a ⊗ e_a − α^a Σ_b A_b ⊗ (e_{b⁻¹ab} − e_a)`.
pub fn covariant_derivative(calc: &Calculus, conn: &Connection, alpha: &OneForm) -> TensorSquare {
    let class = calc.class();
    let n = class.size();
    let mut out = TensorSquare::zero(calc);
    for (a, fa) in alpha.coeffs.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        for (c, dc) in calc.d0(fa).coeffs.into_iter().enumerate() {
            out.coeffs[c][a] += &dc;
        }
        for b in 0..n {
            let moved = class.ad_inv(b, a);
            if moved == a {
                continue;
            }
            for c in 0..n {
                let coef = fa * conn.coefficient(b, c);
                out.coeffs[c][moved] -= &coef;
                out.coeffs[c][a] += &coef;
            }
        }
    }
    out
}

/// Riemann curvature `ℛα = α^a Σ_b F_b ⊗ (e_{b⁻¹ab} − e_a)`.
pub fn riemann_on(calc: &Calculus, curvature: &[TwoForm], alpha: &OneForm) -> TwoFormTensorOne {
    let class = calc.class();
    let mut out = TwoFormTensorOne::zero(calc);
    for (a, fa) in alpha.coeffs.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        for (b, fb) in curvature.iter().enumerate() {
            let moved = class.ad_inv(b, a);
            if moved == a {
                continue;
            }
            let scaled = fb.mul_left(fa);
            out.add_assign(&TwoFormTensorOne::basic(calc, &scaled, moved));
            out.add_assign(&TwoFormTensorOne::basic(calc, &(-&scaled), a));
        }
    }
    out
}

/// `ℛ(e_a)` for every class position `a`.
pub fn riemann(calc: &Calculus, conn: &Connection) -> Vec<TwoFormTensorOne> {
    let f = curvature(calc, conn);
    (0..calc.generators()).map(|a| riemann_on(calc, &f, &calc.e(a))).collect()
}

/// Choice of splitting of the wedge projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// `i(e_a∧e_b) = e_a⊗e_b − Σ_β γ^{β,a} Σ_{cd=ab} λ^β_c e_c⊗e_d`.
    Canonical,
    /// `i′ = id − Ψ` on the basis representative.
    Antisymmetrizer,
}

/// Constant tensors `i(E_β)` for every Ω² basis element.
pub fn lift_basis(calc: &Calculus, lift: Lift) -> Vec<Vec<Vec<Cyclotomic>>> {
    let class = calc.class();
    let n = class.size();
    calc.two_form_basis()
        .iter()
        .map(|&(a, b)| {
            let mut m = vec![vec![Cyclotomic::zero(); n]; n];
            m[a][b] = Cyclotomic::one();
            match lift {
                Lift::Antisymmetrizer => {
                    m[class.ad()[a][b]][a] -= Cyclotomic::one();
                }
                Lift::Canonical => {
                    let (pairs, lambdas) = calc.product_block(class.product(a, b));
                    if !lambdas.is_empty() {
                        let projection = orthogonal_projection(&lambdas);
                        let row = pairs.iter().position(|&p| p == (a, b)).expect("pair lies in its block");
                        for (col, &(c, d)) in pairs.iter().enumerate() {
                            m[c][d] -= &projection[(row, col)];
                        }
                    }
                }
            }
            m
        })
        .collect()
}

/// Orthogonal projection (dot product) onto the span of independent vectors:
/// `Σ_β γ^β (λ^β)ᵀ` with `γ` the dual basis of `λ`.
fn orthogonal_projection(vectors: &[Vec<Cyclotomic>]) -> ExactMatrix {
    let l = ExactMatrix::from_rows(vectors.to_vec());
    let gram = l.mul(&l.transpose());
    let gram_inv = gram.inverse().expect("relation vectors are independent");
    l.transpose().mul(&gram_inv).mul(&l)
}

pub fn lift(calc: &Calculus, w: &TwoForm, kind: Lift) -> TensorSquare {
    let basis = lift_basis(calc, kind);
    let mut out = TensorSquare::zero(calc);
    for (f, m) in w.coeffs.iter().zip(&basis) {
        if f.is_zero() {
            continue;
        }
        for (row, out_row) in m.iter().zip(out.coeffs.iter_mut()) {
            for (c, o) in row.iter().zip(out_row.iter_mut()) {
                if !c.is_zero() {
                    *o += &f.scale(c);
                }
            }
        }
    }
    out
}

/// `Ricci = Σ_{a,b,c} i(F_c)^{ab} e_b ⊗ (e_{c⁻¹ac} − e_a)`.
pub fn ricci_from_curvature(calc: &Calculus, curvature: &[TwoForm], kind: Lift) -> TensorSquare {
    let class = calc.class();
    let n = class.size();
    let mut out = TensorSquare::zero(calc);
    for (c, fc) in curvature.iter().enumerate() {
        let lifted = lift(calc, fc, kind);
        for a in 0..n {
            let moved = class.ad_inv(c, a);
            if moved == a {
                continue;
            }
            for b in 0..n {
                let coef = &lifted.coeffs[a][b];
                out.coeffs[b][moved] += coef;
                out.coeffs[b][a] -= coef;
            }
        }
    }
    out
}

pub fn ricci(calc: &Calculus, conn: &Connection, kind: Lift) -> TensorSquare {
    ricci_from_curvature(calc, &curvature(calc, conn), kind)
}

fn flatten_two_forms(forms: &[TwoForm]) -> Vec<Cyclotomic> {
    forms.iter().flat_map(|w| w.coeffs.iter().flat_map(|f| f.values().iter().cloned())).collect()
}

fn flatten_tensor(t: &TensorSquare) -> Vec<Cyclotomic> {
    t.coeffs.iter().flatten().flat_map(|f| f.values().iter().cloned()).collect()
}

/// Writes an affine map of the raw connection unknowns as `M·x + c`.
fn linearize(calc: &Calculus, f: impl Fn(&Connection) -> Vec<Cyclotomic>) -> (ExactMatrix, Vec<Cyclotomic>) {
    let unknowns = calc.generators() * calc.generators() * calc.order();
    let constant = f(&Connection::zero(calc));
    let mut columns = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut v = vec![Cyclotomic::zero(); unknowns];
        v[u] = Cyclotomic::one();
        let image = f(&Connection::from_vector(calc, &v));
        columns.push(image.iter().zip(&constant).map(|(x, c)| x - c).collect::<Vec<_>>());
    }
    (ExactMatrix::from_columns(constant.len(), &columns), constant)
}

fn solve_linear(matrix: &ExactMatrix, constant: &[Cyclotomic]) -> Result<AffineSpace, RiemannError> {
    let rhs: Vec<Cyclotomic> = constant.iter().map(|c| -c).collect();
    matrix.solve_affine(&rhs).ok_or(RiemannError::Inconsistent)
}

fn torsion_system(calc: &Calculus) -> (ExactMatrix, Vec<Cyclotomic>) {
    linearize(calc, |conn| {
        flatten_two_forms(&(0..calc.generators()).map(|a| torsion(calc, conn, a)).collect::<Vec<_>>())
    })
}

fn cotorsion_system(calc: &Calculus, metric: &Metric) -> (ExactMatrix, Vec<Cyclotomic>) {
    linearize(calc, |conn| {
        flatten_two_forms(&(0..calc.generators()).map(|a| cotorsion(calc, metric, conn, a)).collect::<Vec<_>>())
    })
}

/// All torsion-free connections, in raw unknowns `A_a^b(g)`.
pub fn solve_torsion_free(calc: &Calculus) -> Result<AffineSpace, RiemannError> {
    let (m, c) = torsion_system(calc);
    solve_linear(&m, &c)
}

/// Connections that are both torsion free and cotorsion free for `metric`.
pub fn solve_torsion_cotorsion_free(calc: &Calculus, metric: &Metric) -> Result<AffineSpace, RiemannError> {
    let (m1, c1) = torsion_system(calc);
    let (m2, c2) = cotorsion_system(calc, metric);
    let mut c = c1;
    c.extend(c2);
    solve_linear(&m1.stack(&m2), &c)
}

/// The four functions of the torsion-free pattern, read off a connection on
/// a class arranged as t, x, y, z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternParameters {
    pub alpha: GroupFunction,
    pub beta: GroupFunction,
    pub gamma: GroupFunction,
    pub lambda: GroupFunction,
}

impl PatternParameters {
    /// Reads α = A_t^t − 1, β = A_x^x − 1, γ = A_y^y − 1, λ = A_z^z − 1 and
    /// checks that every other coefficient follows the pattern
    /// A_t = (1+α)e_t + γe_x + λe_y + βe_z,
    /// A_x = λe_t + (1+β)e_x + αe_y + γe_z,
    /// A_y = βe_t + λe_x + (1+γ)e_y + αe_z,
    /// A_z = γe_t + αe_x + βe_y + (1+λ)e_z.
    /// With `homogeneous` the diagonal carries no `1` (for directions).
    pub fn extract(calc: &Calculus, conn: &Connection, homogeneous: bool) -> Option<Self> {
        if calc.generators() != 4 {
            return None;
        }
        let one = calc.constant(if homogeneous { Cyclotomic::zero() } else { Cyclotomic::one() });
        let diag = |a: usize| conn.coefficient(a, a) - &one;
        let p = PatternParameters { alpha: diag(T), beta: diag(X), gamma: diag(Y), lambda: diag(Z) };
        let (al, be, ga, la) = (&p.alpha, &p.beta, &p.gamma, &p.lambda);
        let expected = [[None, Some(ga), Some(la), Some(be)], [Some(la), None, Some(al), Some(ga)], [
            Some(be),
            Some(la),
            None,
            Some(al),
        ], [Some(ga), Some(al), Some(be), None]];
        for (a, row) in expected.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                if let Some(f) = e {
                    if conn.coefficient(a, b) != *f {
                        return None;
                    }
                }
            }
        }
        Some(p)
    }

    pub fn sum(&self) -> GroupFunction {
        &(&(&self.alpha + &self.beta) + &self.gamma) + &self.lambda
    }

    /// Builds the patterned connection (with `1 +` on the diagonal).
    pub fn connection(&self, calc: &Calculus) -> Connection {
        let one = calc.constant(Cyclotomic::one());
        let (al, be, ga, la) = (&self.alpha, &self.beta, &self.gamma, &self.lambda);
        let rows = [
            [&one + al, ga.clone(), la.clone(), be.clone()],
            [la.clone(), &one + be, al.clone(), ga.clone()],
            [be.clone(), la.clone(), &one + ga, al.clone()],
            [ga.clone(), al.clone(), be.clone(), &one + la],
        ];
        Connection { components: rows.into_iter().map(|r| OneForm { coeffs: r.to_vec() }).collect() }
    }
}

/// Checks the torsion+cotorsion relations among α, β, γ, λ:
/// R_t⁻¹α = R_x⁻¹λ = R_y⁻¹β = R_z⁻¹γ, R_t⁻¹λ = R_x⁻¹α = R_y⁻¹γ = R_z⁻¹β,
/// R_t⁻¹β = R_x⁻¹γ = R_y⁻¹α = R_z⁻¹λ, R_t⁻¹γ = R_x⁻¹β = R_y⁻¹λ = R_z⁻¹α.
pub fn satisfies_cotorsion_relations(calc: &Calculus, p: &PatternParameters) -> bool {
    let class = calc.class();
    let group = calc.group();
    let r_inv = |a: usize, f: &GroupFunction| f.right_translate(group, group.inv(class.element(a)));
    let (al, be, ga, la) = (&p.alpha, &p.beta, &p.gamma, &p.lambda);
    let rows: [[&GroupFunction; 4]; 4] = [[al, la, be, ga], [la, al, ga, be], [be, ga, al, la], [ga, be, la, al]];
    rows.iter().all(|row| {
        let first = r_inv(T, row[0]);
        (1..4).all(|a| r_inv(a, row[a]) == first)
    })
}

/// Outcome of the Ricci-flat linear solve within the torsion-free family.
#[derive(Clone, Debug)]
pub struct RicciFlatSolution {
    /// Dimension of the torsion-free family that was parameterized.
    pub family_dimension: usize,
    /// Number of scalar equations from the diagonal `e_a⊗e_a` coefficients.
    pub diagonal_equations: usize,
    pub diagonal_rank: usize,
    /// Solution set inside the family, in raw connection unknowns.
    pub solution: AffineSpace,
    pub connection: Connection,
    pub parameters: Option<PatternParameters>,
}

/// Ricci-flat connections (lift `kind`) inside the torsion-free family.
///
/// On the family the quadratic curvature terms vanish identically (checked),
/// so Ricci is affine in the family parameters; the diagonal coefficient
/// equations are solved and the full tensor is checked at the solution.
pub fn solve_ricci_flat(calc: &Calculus, kind: Lift) -> Result<RicciFlatSolution, RiemannError> {
    if calc.generators() != 4 || calc.class().classify_products() != Ok(ProductPattern::SquaresMixed) {
        return Err(RiemannError::NeedsSquaresMixed);
    }
    let family = solve_torsion_free(calc)?;
    let base = Connection::from_vector(calc, &family.particular);
    let directions: Vec<Connection> = family.basis.iter().map(|v| Connection::from_vector(calc, v)).collect();

    // No product of two class elements lies in the class, and Σ_a A_a = 0 on
    // the whole family; together these make the quadratic terms vanish.
    let class = calc.class();
    let n = class.size();
    let closed_products = (0..n).any(|a| (0..n).any(|b| class.position(class.product(a, b)).is_some()));
    if closed_products || !base.sum().is_zero() || directions.iter().any(|d| !d.sum().is_zero()) {
        return Err(RiemannError::QuadraticTermsNonzero);
    }
    let quad_zero = |c: &Connection| (0..n).all(|a| curvature_quadratic(calc, c, a).is_zero());
    if !quad_zero(&base) || !directions.iter().all(quad_zero) {
        return Err(RiemannError::QuadraticTermsNonzero);
    }

    let order = calc.order();
    let diagonal = |t: &TensorSquare| -> Vec<Cyclotomic> {
        (0..n).flat_map(|a| t.coeffs[a][a].values().iter().cloned().collect::<Vec<_>>()).collect()
    };
    let linear_ricci = |c: &Connection| ricci_from_curvature(calc, &curvature_linear(calc, c), kind);
    let base_ricci = ricci(calc, &base, kind);
    let base_diag = diagonal(&base_ricci);
    let columns: Vec<Vec<Cyclotomic>> = directions.iter().map(|d| diagonal(&linear_ricci(d))).collect();
    let system = ExactMatrix::from_columns(n * order, &columns);
    let rank = system.rank();
    let rhs: Vec<Cyclotomic> = base_diag.iter().map(|c| -c).collect();
    let params = system.solve_affine(&rhs).ok_or(RiemannError::Inconsistent)?;
    if !params.basis.is_empty() {
        return Err(RiemannError::NotUnique { rank, unknowns: directions.len() });
    }
    let point = family.point(&params.particular);
    let connection = Connection::from_vector(calc, &point);
    let residual = flatten_tensor(&ricci(calc, &connection, kind));
    let failures = residual.iter().filter(|c| !c.is_zero()).count();
    if failures > 0 {
        return Err(RiemannError::ResidualNonzero(failures));
    }
    let parameters = PatternParameters::extract(calc, &connection, false);
    Ok(RicciFlatSolution {
        family_dimension: family.dimension(),
        diagonal_equations: n * order,
        diagonal_rank: rank,
        solution: AffineSpace { particular: point, basis: Vec::new() },
        connection,
        parameters,
    })
}

/// Curvature without the quadratic terms, `F_a = dA_a`.
fn curvature_linear(calc: &Calculus, conn: &Connection) -> Vec<TwoForm> {
    conn.components.iter().map(|w| calc.d1(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ClassCalculus, FiniteGroup};

    fn a4() -> Calculus {
        Calculus::new(ClassCalculus::from_label(FiniteGroup::alternating4(), "t").unwrap())
    }

    #[test]
    fn levi_civita_components() {
        let c = a4();
        let lc = levi_civita(&c);
        let expect = [Cyclotomic::from_ratio(3, 4), Cyclotomic::from_ratio(-1, 4), Cyclotomic::from_ratio(-1, 4), Cyclotomic::from_ratio(-1, 4)];
        for (b, e) in expect.iter().enumerate() {
            assert_eq!(lc.coefficient(0, b).as_constant(), Some(e));
        }
    }

    #[test]
    fn zero_connection() {
        let c = a4();
        let zero = Connection::zero(&c);
        assert!(!torsion(&c, &zero, 0).is_zero());
        assert!(is_regular(&c, &zero));
        assert!(curvature(&c, &zero).iter().all(TwoForm::is_zero));
        assert!(ricci(&c, &zero, Lift::Canonical).is_zero());
        assert!(covariant_derivative(&c, &zero, &c.e(1)).is_zero());
    }

    #[test]
    fn metric_checks() {
        let c = a4();
        assert!(Metric::from_mu(&c, &Cyclotomic::from_ratio(-1, 4)).is_err());
        let m = Metric::from_mu(&c, &Cyclotomic::from_ratio(2, 7)).unwrap();
        assert_eq!(m.eta.mul(&m.eta_inv), ExactMatrix::identity(4));
        assert!(c.wedge_tensor(&m.tensor(&c).coeffs).is_zero());
        assert_eq!(invariant_bilinear_space(&c).len(), 2);
    }

    #[test]
    fn canonical_lift_example() {
        let c = a4();
        let w = c.wedge(&c.e(0), &c.e(1));
        let lifted = lift(&c, &w, Lift::Canonical);
        let third = Cyclotomic::from_ratio(1, 3);
        let expect = |a: usize, b: usize| -> Cyclotomic {
            match (a, b) {
                (0, 1) => Cyclotomic::from_ratio(2, 3),
                (1, 3) | (3, 0) => -&third,
                _ => Cyclotomic::zero(),
            }
        };
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(lifted.coeffs[a][b].as_constant(), Some(&expect(a, b)), "({a},{b})");
            }
        }
    }

    #[test]
    fn lifts_split_the_wedge() {
        let c = a4();
        for (beta, &(a, b)) in c.two_form_basis().iter().enumerate() {
            let w = c.wedge(&c.e(a), &c.e(b));
            for kind in [Lift::Canonical] {
                assert_eq!(c.wedge_tensor(&lift(&c, &w, kind).coeffs), w, "basis {beta}");
            }
            let ea = c.e(a);
            assert!(lift(&c, &c.wedge(&ea, &ea), Lift::Canonical).is_zero());
        }
    }
}
