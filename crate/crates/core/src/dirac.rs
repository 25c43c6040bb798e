//! Spinors on A4: representations, gamma matrices, the Dirac operator and
//! wave operator, exact spectra, the explicit eigenbasis and the
//! nonabelian Fourier transform.

use serde::Serialize;

use crate::calculus::Calculus;
use crate::group::{ClassCalculus, FiniteGroup};
use crate::linalg::{Cyclotomic, ExactMatrix};
use crate::riemann::{levi_civita, Connection, Metric, RiemannError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiracError {
    #[error(transparent)]
    Metric(#[from] RiemannError),
    #[error("candidate eigenvalues leave a residual dimension of {residual}")]
    IncompleteCandidates { residual: usize, spectrum: Spectrum },
    #[error("the group is not the builtin A4 with elements t and u")]
    NotA4,
    #[error("{0} is not a group homomorphism")]
    NotHomomorphism(&'static str),
    #[error("spinor has length {0}, expected {1}")]
    SpinorLength(usize, usize),
}

/// A matrix representation indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<ExactMatrix>,
}

impl Representation {
    /// Extends images of generators to the whole group by closure and checks
    /// the homomorphism property on every pair.
    pub fn generated(
        group: &FiniteGroup,
        generators: &[(usize, ExactMatrix)],
        name: &'static str,
    ) -> Result<Self, DiracError> {
        let dim = generators[0].1.rows();
        let mut matrices: Vec<Option<ExactMatrix>> = vec![None; group.order()];
        matrices[group.identity()] = Some(ExactMatrix::identity(dim));
        let mut frontier = vec![group.identity()];
        while let Some(g) = frontier.pop() {
            for (s, m) in generators {
                let h = group.mul(g, *s);
                if matrices[h].is_none() {
                    matrices[h] = Some(matrices[g].as_ref().expect("visited").mul(m));
                    frontier.push(h);
                }
            }
        }
        let matrices: Vec<ExactMatrix> =
            matrices.into_iter().collect::<Option<_>>().ok_or(DiracError::NotHomomorphism(name))?;
        let rep = Representation { dim, matrices };
        if !rep.is_homomorphism(group) {
            return Err(DiracError::NotHomomorphism(name));
        }
        Ok(rep)
    }

    pub fn is_homomorphism(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| {
            (0..group.order()).all(|h| self.matrices[group.mul(g, h)] == self.matrices[g].mul(&self.matrices[h]))
        }) && self.matrices[group.identity()] == ExactMatrix::identity(self.dim)
    }

    /// The matrix-element function `g ↦ ρ(g)_{kl}`.
    pub fn matrix_element(&self, k: usize, l: usize) -> Vec<Cyclotomic> {
        self.matrices.iter().map(|m| m[(k, l)].clone()).collect()
    }

    /// Image of a group-algebra element given by coefficients per element.
    pub fn image(&self, element: &[Cyclotomic]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim, self.dim);
        for (c, m) in element.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }
}

/// Eigenvalue multiplicities certified by nullity counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub pairs: Vec<(Cyclotomic, usize)>,
}

impl Spectrum {
    pub fn total(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, value: &Cyclotomic) -> usize {
        self.pairs.iter().find(|(v, _)| v == value).map_or(0, |(_, m)| *m)
    }
}

/// Multiplicity of each candidate is `nullity(m − λI)`; succeeds only if the
/// multiplicities add up to the size of `m`, which certifies that the list
/// is complete and `m` is diagonalizable over ℚ(ω). Candidates of
/// multiplicity zero are dropped.
pub fn verify_spectrum(m: &ExactMatrix, candidates: &[Cyclotomic]) -> Result<Spectrum, DiracError> {
    let mut distinct: Vec<Cyclotomic> = Vec::new();
    for c in candidates {
        if !distinct.contains(c) {
            distinct.push(c.clone());
        }
    }
    let pairs: Vec<(Cyclotomic, usize)> = distinct
        .into_iter()
        .map(|c| {
            let k = m.shift(&c).nullity();
            (c, k)
        })
        .filter(|(_, k)| *k > 0)
        .collect();
    let spectrum = Spectrum { pairs };
    let total = spectrum.total();
    if total < m.rows() {
        return Err(DiracError::IncompleteCandidates { residual: m.rows() - total, spectrum });
    }
    Ok(spectrum)
}

/// One eigenspinor with its label and eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSpinor {
    pub label: String,
    pub eigenvalue: Cyclotomic,
    pub values: Vec<Cyclotomic>,
}

/// Coefficients of a function in the basis `1, ρ, ρ̄, ρ_kl`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourierCoefficients {
    pub p0: Cyclotomic,
    pub p1: Cyclotomic,
    pub p2: Cyclotomic,
    pub p_kl: Vec<Vec<Cyclotomic>>,
}

/// A4 with its class `{t, x, y, z}`, the four irreducibles and the
/// right-translation operators, in the element order
/// `e, u, v, w, t, x, y, z, t², ut², vt², wt²`.
pub struct SpinGeometry {
    calc: Calculus,
    trivial: Representation,
    rho: Representation,
    rho_bar: Representation,
    rho_w: Representation,
    translations: Vec<ExactMatrix>,
}

const W: usize = 3;

impl SpinGeometry {
    pub fn a4() -> Self {
        Self::new(FiniteGroup::alternating4()).expect("builtin A4")
    }

    pub fn new(group: FiniteGroup) -> Result<Self, DiracError> {
        let t = group.index_of("t").map_err(|_| DiracError::NotA4)?;
        let u = group.index_of("u").map_err(|_| DiracError::NotA4)?;
        if group.order() != 12 || group.element_order(t) != 3 || group.element_order(u) != 2 {
            return Err(DiracError::NotA4);
        }
        let scalar = |c: Cyclotomic| ExactMatrix::from_rows(vec![vec![c]]);
        let trivial = Representation::generated(
            &group,
            &[(t, scalar(Cyclotomic::one())), (u, scalar(Cyclotomic::one()))],
            "trivial",
        )?;
        let rho = Representation::generated(
            &group,
            &[(t, scalar(Cyclotomic::omega())), (u, scalar(Cyclotomic::one()))],
            "rho",
        )?;
        let rho_bar = Representation::generated(
            &group,
            &[(t, scalar(Cyclotomic::omega_bar())), (u, scalar(Cyclotomic::one()))],
            "rho_bar",
        )?;
        let rho_w = Representation::generated(
            &group,
            &[
                (t, ExactMatrix::from_i64_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])),
                (u, ExactMatrix::from_i64_rows(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]])),
            ],
            "rho_w",
        )?;
        let class = ClassCalculus::from_label(group, "t").map_err(|_| DiracError::NotA4)?;
        let calc = Calculus::new(class);
        let translations = (0..4).map(|a| right_translation(calc.group(), calc.class().element(a))).collect();
        Ok(SpinGeometry { calc, trivial, rho, rho_bar, rho_w, translations })
    }

    pub fn calculus(&self) -> &Calculus {
        &self.calc
    }

    pub fn group(&self) -> &FiniteGroup {
        self.calc.group()
    }

    pub fn trivial(&self) -> &Representation {
        &self.trivial
    }

    pub fn rho(&self) -> &Representation {
        &self.rho
    }

    pub fn rho_bar(&self) -> &Representation {
        &self.rho_bar
    }

    pub fn rho_w(&self) -> &Representation {
        &self.rho_w
    }

    fn order(&self) -> usize {
        self.group().order()
    }

    fn rho_w_of_class(&self, a: usize) -> &ExactMatrix {
        &self.rho_w.matrices[self.calc.class().element(a)]
    }

    /// `R_t, R_x, R_y, R_z` with `(R_a f)(g) = f(ga)`.
    pub fn right_translations(&self) -> &[ExactMatrix] {
        &self.translations
    }

    /// Right translation by an arbitrary group element.
    pub fn right_translation_by(&self, g: usize) -> ExactMatrix {
        right_translation(self.group(), g)
    }

    /// `D₀ = Σ_a R_a`.
    pub fn d0(&self) -> ExactMatrix {
        self.signed_translation_sum([1, 1, 1, 1])
    }

    /// `D₁, D₂, D₃`: the signed sums `R_t − R_x − R_y + R_z`,
    /// `R_t − R_x + R_y − R_z`, `R_t + R_x − R_y − R_z`.
    pub fn d_blocks(&self) -> [ExactMatrix; 3] {
        [
            self.signed_translation_sum([1, -1, -1, 1]),
            self.signed_translation_sum([1, -1, 1, -1]),
            self.signed_translation_sum([1, 1, -1, -1]),
        ]
    }

    fn signed_translation_sum(&self, signs: [i64; 4]) -> ExactMatrix {
        let n = self.order();
        let mut out = ExactMatrix::zeros(n, n);
        for (r, s) in self.translations.iter().zip(signs) {
            out = if s > 0 { out.add(r) } else { out.sub(r) };
        }
        out
    }

    /// `ρ_W(C)` for the Casimir `C = (1/(1+4μ)) Σ_a (a − e)²`.
    pub fn casimir_action(&self, mu: &Cyclotomic) -> Result<ExactMatrix, DiracError> {
        let denom = admissible(mu)?;
        let c = self.casimir_element(&denom);
        Ok(self.rho_w.image(&c))
    }

    fn casimir_element(&self, denom: &Cyclotomic) -> Vec<Cyclotomic> {
        let group = self.group();
        let class = self.calc.class();
        let inv = denom.inv().expect("nonzero");
        let mut c = vec![Cyclotomic::zero(); group.order()];
        for a in 0..4 {
            let g = class.element(a);
            c[group.mul(g, g)] += inv.clone();
            c[g] -= &inv * &Cyclotomic::from_int(2);
            c[group.identity()] += inv.clone();
        }
        c
    }

    /// The Casimir of a general four-element mixed-squares class,
    /// `((1+3μ)/(1+4μ))[Σa² − 2Σa + 4e] − (3μ/(1+4μ))[tx+ty+tz+xy − 2Σa + 4e]`,
    /// as a group-algebra element.
    pub fn general_casimir_element(&self, mu: &Cyclotomic) -> Result<Vec<Cyclotomic>, DiracError> {
        let denom = admissible(mu)?;
        let group = self.group();
        let class = self.calc.class();
        let el = |a: usize| class.element(a);
        let mut squares = vec![Cyclotomic::zero(); group.order()];
        let mut cross = vec![Cyclotomic::zero(); group.order()];
        for a in 0..4 {
            squares[group.mul(el(a), el(a))] += Cyclotomic::one();
        }
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2)] {
            cross[group.mul(el(a), el(b))] += Cyclotomic::one();
        }
        for part in [&mut squares, &mut cross] {
            for a in 0..4 {
                part[el(a)] -= Cyclotomic::from_int(2);
            }
            part[group.identity()] += Cyclotomic::from_int(4);
        }
        let w1 = &(&Cyclotomic::one() + &(mu * &Cyclotomic::from_int(3))) / &denom;
        let w2 = &(-&(mu * &Cyclotomic::from_int(3))) / &denom;
        Ok(squares.iter().zip(&cross).map(|(s, c)| &(s * &w1) + &(c * &w2)).collect())
    }

    /// Casimir in the A4 form as a group-algebra element.
    pub fn casimir_group_algebra(&self, mu: &Cyclotomic) -> Result<Vec<Cyclotomic>, DiracError> {
        let denom = admissible(mu)?;
        Ok(self.casimir_element(&denom))
    }

    /// Tautological gamma matrices `γ_a = Σ_b η⁻¹_{ab} ρ_W(b − e)`.
    pub fn gamma_matrices(&self, mu: &Cyclotomic) -> Result<Vec<ExactMatrix>, DiracError> {
        let metric = Metric::from_mu(&self.calc, mu)?;
        let id = ExactMatrix::identity(W);
        let diffs: Vec<ExactMatrix> = (0..4).map(|b| self.rho_w_of_class(b).sub(&id)).collect();
        Ok((0..4)
            .map(|a| {
                let mut g = ExactMatrix::zeros(W, W);
                for (b, diff) in diffs.iter().enumerate() {
                    g = g.add(&diff.scale(&metric.eta_inv[(a, b)]));
                }
                g
            })
            .collect())
    }

    /// `D = Σ_a ∂^a γ_a − Σ_{a,b} A_a^b γ_b ρ_W(a⁻¹ − e)` on W-coordinate-major spinors.
    pub fn dirac_operator(&self, mu: &Cyclotomic, conn: &Connection) -> Result<ExactMatrix, DiracError> {
        let gammas = self.gamma_matrices(mu)?;
        let n = self.order();
        let id_w = ExactMatrix::identity(W);
        let id_f = ExactMatrix::identity(n);
        let mut out = ExactMatrix::zeros(W * n, W * n);
        for (a, gamma) in gammas.iter().enumerate() {
            out = out.add(&gamma.kron(&self.translations[a].sub(&id_f)));
        }
        let group = self.group();
        for a in 0..4 {
            let tau = self.rho_w.matrices[group.inv(self.calc.class().element(a))].sub(&id_w);
            for (b, gamma) in gammas.iter().enumerate() {
                let coef = conn.coefficient(a, b);
                if coef.is_zero() {
                    continue;
                }
                let mult = ExactMatrix::from_fn(n, n, |i, j| if i == j { coef.get(i).clone() } else { Cyclotomic::zero() });
                out = out.sub(&gamma.mul(&tau).kron(&mult));
            }
        }
        Ok(out)
    }

    /// Dirac operator of the Levi-Civita connection.
    pub fn levi_civita_dirac(&self, mu: &Cyclotomic) -> Result<ExactMatrix, DiracError> {
        self.dirac_operator(mu, &levi_civita(&self.calc))
    }

    /// `Σ_a ∂^a γ_a` alone.
    pub fn partial_gamma(&self, mu: &Cyclotomic) -> Result<ExactMatrix, DiracError> {
        self.dirac_operator(mu, &Connection::zero(&self.calc))
    }

    /// Wave operator `□ = Σ_a (2R_a − R_{a²} − id)`.
    pub fn laplacian(&self) -> ExactMatrix {
        let n = self.order();
        let group = self.group();
        let mut out = ExactMatrix::zeros(n, n);
        for (a, r) in self.translations.iter().enumerate() {
            let g = self.calc.class().element(a);
            out = out.add(&r.scale(&Cyclotomic::from_int(2)));
            out = out.sub(&right_translation(group, group.mul(g, g)));
            out = out.sub(&ExactMatrix::identity(n));
        }
        out
    }

    /// `□ = −Σ_{a,b} η⁻¹_{ab} ∂^a ∂^b` for the metric `μ`.
    pub fn laplacian_from_metric(&self, mu: &Cyclotomic) -> Result<ExactMatrix, DiracError> {
        let metric = Metric::from_mu(&self.calc, mu)?;
        let n = self.order();
        let partials: Vec<ExactMatrix> = self.translations.iter().map(|r| r.sub(&ExactMatrix::identity(n))).collect();
        let mut out = ExactMatrix::zeros(n, n);
        for a in 0..4 {
            for b in 0..4 {
                out = out.sub(&partials[a].mul(&partials[b]).scale(&metric.eta_inv[(a, b)]));
            }
        }
        Ok(out)
    }

    /// Candidates for the spectrum of the Levi-Civita Dirac operator at `μ`:
    /// `D(μ) = D(0) + s(D₀ − 4)` with `s = 4μ/(1+4μ)`, and `D(0)` commutes
    /// with `D₀`, so every eigenvalue is `λ + s(δ − 4)` for eigenvalues `λ`
    /// of `D(0)` and `δ` of `D₀`.
    pub fn dirac_candidates(&self, mu: &Cyclotomic) -> Result<Vec<Cyclotomic>, DiracError> {
        let denom = admissible(mu)?;
        let s = &(mu * &Cyclotomic::from_int(4)) / &denom;
        let four = Cyclotomic::from_int(4);
        let mut out = Vec::new();
        for l in dirac_mu0_candidates() {
            for d in d0_candidates() {
                out.push(&l + &(&s * &(&d - &four)));
            }
        }
        Ok(out)
    }

    pub fn dirac_spectrum(&self, mu: &Cyclotomic) -> Result<Spectrum, DiracError> {
        verify_spectrum(&self.levi_civita_dirac(mu)?, &self.dirac_candidates(mu)?)
    }

    pub fn laplacian_spectrum(&self) -> Result<Spectrum, DiracError> {
        let c = [
            Cyclotomic::zero(),
            &Cyclotomic::omega() * &Cyclotomic::from_int(12),
            &Cyclotomic::omega_bar() * &Cyclotomic::from_int(12),
            Cyclotomic::from_int(-4),
        ];
        verify_spectrum(&self.laplacian(), &c)
    }

    pub fn d0_spectrum(&self) -> Result<Spectrum, DiracError> {
        verify_spectrum(&self.d0(), &d0_candidates())
    }

    /// Multiplication by the function ρ on spinors.
    pub fn rho_hat(&self) -> ExactMatrix {
        let n = self.order();
        let rho = self.rho.matrix_element(0, 0);
        ExactMatrix::identity(W).kron(&ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                rho[i].clone()
            } else {
                Cyclotomic::zero()
            }
        }))
    }

    /// `χ` with blocks `R_t` below the diagonal and in the top right corner.
    pub fn chi_operator(&self) -> ExactMatrix {
        let cycle = ExactMatrix::from_i64_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        cycle.kron(&self.translations[0])
    }

    /// The 36 explicit eigenspinors of the μ = 0 Levi-Civita Dirac operator:
    /// 18 zero modes in two groups, the `−4qⁿ` modes `ρⁿ` in each block and
    /// the `+4qⁿ` modes `ρ̂ⁿ(ρ_k1, ρ_k2, ρ_k3)`.
    pub fn dirac_eigenbasis(&self) -> Vec<EigenSpinor> {
        let n = self.order();
        let [d1, d2, d3] = self.d_blocks();
        let rho_kl = |k: usize, l: usize| self.rho_w.matrix_element(k, l);
        let place = |block: usize, f: Vec<Cyclotomic>| {
            let mut v = vec![Cyclotomic::zero(); W * n];
            v[block * n..(block + 1) * n].clone_from_slice(&f);
            v
        };
        let zero = Cyclotomic::zero();
        let mut out = Vec::new();
        // Group one: (D₂ρ_k1,0,0), (0,D₃ρ_k2,0), (0,0,D₁ρ_k3).
        // Group two: (D₃ρ_k2,0,0), (0,D₁ρ_k3,0), (0,0,D₂ρ_k1).
        // Each D_i kills two of the three columns ρ_k·, so these are the
        // nonvanishing choices; χ cycles the three entries of each group.
        let groups: [[(&ExactMatrix, usize); 3]; 2] = [[(&d2, 0), (&d3, 1), (&d1, 2)], [(&d3, 1), (&d1, 2), (&d2, 0)]];
        for (gi, group) in groups.iter().enumerate() {
            for (block, (op, col)) in group.iter().enumerate() {
                for k in 0..3 {
                    out.push(EigenSpinor {
                        label: format!("zero{}[block{},k{}]", gi + 1, block + 1, k + 1),
                        eigenvalue: zero.clone(),
                        values: place(block, op.mul_vec(&rho_kl(k, *col))),
                    });
                }
            }
        }
        let powers: Vec<Vec<Cyclotomic>> = vec![
            self.trivial.matrix_element(0, 0),
            self.rho.matrix_element(0, 0),
            self.rho_bar.matrix_element(0, 0),
        ];
        let qn = [Cyclotomic::one(), Cyclotomic::omega(), Cyclotomic::omega_bar()];
        for (p, (f, q)) in powers.iter().zip(&qn).enumerate() {
            for block in 0..3 {
                out.push(EigenSpinor {
                    label: format!("minus4q{}[block{}]", p, block + 1),
                    eigenvalue: q * &Cyclotomic::from_int(-4),
                    values: place(block, f.clone()),
                });
            }
        }
        for (p, (f, q)) in powers.iter().zip(&qn).enumerate() {
            for k in 0..3 {
                let values: Vec<Cyclotomic> = (0..3)
                    .flat_map(|l| rho_kl(k, l).into_iter().zip(f).map(|(x, y)| &x * y).collect::<Vec<_>>())
                    .collect();
                out.push(EigenSpinor { label: format!("plus4q{}[k{}]", p, k + 1), eigenvalue: q * &Cyclotomic::from_int(4), values });
            }
        }
        out
    }

    /// Chirality operator pairing the eigenbasis: zero-mode group one with
    /// group two entry by entry, and each `−4qⁿ` mode in block `k` with the
    /// `+4qⁿ` mode of index `k`. One valid choice among many.
    pub fn chirality_gamma(&self) -> ExactMatrix {
        let basis = self.dirac_eigenbasis();
        let pairing: Vec<usize> = (0..36)
            .map(|i| match i {
                0..=8 => i + 9,
                9..=17 => i - 9,
                18..=26 => i + 9,
                _ => i - 9,
            })
            .collect();
        let v = ExactMatrix::from_columns(36, &basis.iter().map(|s| s.values.clone()).collect::<Vec<_>>());
        let swapped = ExactMatrix::from_columns(36, &pairing.iter().map(|&j| basis[j].values.clone()).collect::<Vec<_>>());
        swapped.mul(&v.inverse().expect("eigenbasis is independent"))
    }

    /// Columns `1, ρ, ρ̄, ρ_00, ρ_01, …, ρ_22` as functions on the group.
    pub fn fourier_basis(&self) -> ExactMatrix {
        let mut columns = vec![
            self.trivial.matrix_element(0, 0),
            self.rho.matrix_element(0, 0),
            self.rho_bar.matrix_element(0, 0),
        ];
        for k in 0..3 {
            for l in 0..3 {
                columns.push(self.rho_w.matrix_element(k, l));
            }
        }
        ExactMatrix::from_columns(self.order(), &columns)
    }

    pub fn fourier_decompose(&self, f: &[Cyclotomic]) -> Result<FourierCoefficients, DiracError> {
        if f.len() != self.order() {
            return Err(DiracError::SpinorLength(f.len(), self.order()));
        }
        let inv = self.fourier_basis().inverse().expect("irreducible matrix elements are independent");
        let p = inv.mul_vec(f);
        Ok(FourierCoefficients {
            p0: p[0].clone(),
            p1: p[1].clone(),
            p2: p[2].clone(),
            p_kl: (0..3).map(|k| p[3 + 3 * k..6 + 3 * k].to_vec()).collect(),
        })
    }

    pub fn fourier_reconstruct(&self, c: &FourierCoefficients) -> Vec<Cyclotomic> {
        let mut p = vec![c.p0.clone(), c.p1.clone(), c.p2.clone()];
        p.extend(c.p_kl.iter().flatten().cloned());
        self.fourier_basis().mul_vec(&p)
    }
}

fn admissible(mu: &Cyclotomic) -> Result<Cyclotomic, DiracError> {
    let denom = &Cyclotomic::one() + &(mu * &Cyclotomic::from_int(4));
    if denom.is_zero() {
        return Err(RiemannError::DegenerateMetric(mu.to_string()).into());
    }
    Ok(denom)
}

fn right_translation(group: &FiniteGroup, a: usize) -> ExactMatrix {
    let n = group.order();
    ExactMatrix::from_fn(n, n, |g, h| if group.mul(g, a) == h { Cyclotomic::one() } else { Cyclotomic::zero() })
}

/// `{0, ±4, ±4ω, ±4ω̄}`.
pub fn dirac_mu0_candidates() -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero()];
    for q in [Cyclotomic::one(), Cyclotomic::omega(), Cyclotomic::omega_bar()] {
        for s in [4, -4] {
            out.push(&q * &Cyclotomic::from_int(s));
        }
    }
    out
}

/// `{4, 4ω, 4ω̄, 0}`.
pub fn d0_candidates() -> Vec<Cyclotomic> {
    vec![
        Cyclotomic::from_int(4),
        &Cyclotomic::omega() * &Cyclotomic::from_int(4),
        &Cyclotomic::omega_bar() * &Cyclotomic::from_int(4),
        Cyclotomic::zero(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representations() {
        let s = SpinGeometry::a4();
        let g = s.group();
        let v = g.index_of("v").unwrap();
        let w = g.index_of("w").unwrap();
        assert_eq!(s.rho_w().matrices[v], ExactMatrix::from_i64_rows(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]));
        assert_eq!(s.rho_w().matrices[w], ExactMatrix::from_i64_rows(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]));
        let mut sum = ExactMatrix::zeros(3, 3);
        let mut sq = ExactMatrix::zeros(3, 3);
        for a in 0..4 {
            let m = s.rho_w_of_class(a);
            sum = sum.add(m);
            sq = sq.add(&m.mul(m));
        }
        assert!(sum.is_zero() && sq.is_zero());
    }

    #[test]
    fn casimir_values() {
        let s = SpinGeometry::a4();
        assert_eq!(s.casimir_action(&Cyclotomic::zero()).unwrap(), ExactMatrix::scalar(3, &Cyclotomic::from_int(4)));
        assert_eq!(s.casimir_action(&Cyclotomic::one()).unwrap(), ExactMatrix::scalar(3, &Cyclotomic::from_ratio(4, 5)));
        assert!(s.casimir_action(&Cyclotomic::from_ratio(-1, 4)).is_err());
    }

    #[test]
    fn verify_spectrum_rejects_incomplete() {
        let s = SpinGeometry::a4();
        let err = verify_spectrum(&s.d0(), &[Cyclotomic::zero()]).unwrap_err();
        assert!(matches!(err, DiracError::IncompleteCandidates { residual: 3, .. }));
    }
}
