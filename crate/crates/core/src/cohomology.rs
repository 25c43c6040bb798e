//! First de Rham cohomology, U(1) curvature and flat connections, and the
//! cross checks against S4 and the conjugate calculus.

use serde::Serialize;

use crate::calculus::{Calculus, GroupFunction, OneForm, TwoForm};
use crate::group::{ClassCalculus, FiniteGroup, GroupError};
use crate::linalg::{echelon_basis, in_span, Cyclotomic, ExactMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("class element {0} has order {1}, expected 3")]
    NotOrderThree(String, usize),
    #[error("gauge function vanishes at {0}")]
    GaugeNotInvertible(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `d₀` and `d₁` as matrices on left coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSlice {
    pub d0_matrix: ExactMatrix,
    pub d1_matrix: ExactMatrix,
}

impl ComplexSlice {
    /// Rows of `d₀` are indexed by `a·|G| + g`; rows of `d₁` by `β·|G| + g`
    /// for the Ω² basis `E_β`.
    pub fn build(calc: &Calculus) -> Self {
        let order = calc.order();
        let n = calc.generators();
        let d0_cols: Vec<Vec<Cyclotomic>> = (0..order)
            .map(|g| flatten_one(&calc.d0(&GroupFunction::delta(order, g))))
            .collect();
        let mut d1_cols = Vec::with_capacity(n * order);
        for a in 0..n {
            for g in 0..order {
                let mut w = calc.zero_one_form();
                w.coeffs[a] = GroupFunction::delta(order, g);
                d1_cols.push(flatten_two(&calc.d1(&w)));
            }
        }
        ComplexSlice {
            d0_matrix: ExactMatrix::from_columns(n * order, &d0_cols),
            d1_matrix: ExactMatrix::from_columns(calc.two_form_dim() * order, &d1_cols),
        }
    }
}

pub fn flatten_one(w: &OneForm) -> Vec<Cyclotomic> {
    w.coeffs.iter().flat_map(|f| f.values().iter().cloned()).collect()
}

pub fn flatten_two(w: &TwoForm) -> Vec<Cyclotomic> {
    w.coeffs.iter().flat_map(|f| f.values().iter().cloned()).collect()
}

/// First cohomology with θ as representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstCohomology {
    pub dim: usize,
    pub ker_d1_dim: usize,
    pub im_d0_dim: usize,
    pub composite_zero: bool,
    pub theta_closed: bool,
    pub theta_exact: bool,
}

pub fn de_rham_h1(calc: &Calculus) -> FirstCohomology {
    let slice = ComplexSlice::build(calc);
    let ker = slice.d1_matrix.nullity();
    let im = slice.d0_matrix.rank();
    let theta = flatten_one(&calc.theta());
    let theta_closed = slice.d1_matrix.mul_vec(&theta).iter().all(Cyclotomic::is_zero);
    let theta_exact = slice.d0_matrix.solve_affine(&theta).is_some();
    FirstCohomology {
        dim: ker - im,
        ker_d1_dim: ker,
        im_d0_dim: im,
        composite_zero: slice.d1_matrix.mul(&slice.d0_matrix).is_zero(),
        theta_closed,
        theta_exact,
    }
}

/// `F(α) = dα + α∧α`.
pub fn u1_curvature(calc: &Calculus, alpha: &OneForm) -> TwoForm {
    &calc.d1(alpha) + &calc.wedge(alpha, alpha)
}

/// `α ↦ uαu⁻¹ + u du⁻¹` for a nowhere-zero function `u`.
pub fn gauge_transform(calc: &Calculus, alpha: &OneForm, u: &GroupFunction) -> Result<OneForm, CohomologyError> {
    let u_inv = invert(calc, u)?;
    let conj = calc.one_form_mul_right(&alpha.mul_left(u), &u_inv);
    Ok(&conj + &calc.d0(&u_inv).mul_left(u))
}

/// `uFu⁻¹` for a 2-form.
pub fn conjugate_two_form(calc: &Calculus, w: &TwoForm, u: &GroupFunction) -> Result<TwoForm, CohomologyError> {
    let u_inv = invert(calc, u)?;
    Ok(calc.two_form_mul_right(&w.mul_left(u), &u_inv))
}

fn invert(calc: &Calculus, u: &GroupFunction) -> Result<GroupFunction, CohomologyError> {
    u.pointwise_inv().ok_or_else(|| {
        let g = (0..u.len()).find(|&g| u.get(g).is_zero()).unwrap_or(0);
        CohomologyError::GaugeNotInvertible(calc.group().name(g).to_string())
    })
}

/// One of the constant flat lines: `λe_a − θ` or `(λ − 1)θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlatLine {
    Generator(usize),
    Theta,
}

impl FlatLine {
    pub fn all(calc: &Calculus) -> Vec<FlatLine> {
        let mut out: Vec<FlatLine> = (0..calc.generators()).map(FlatLine::Generator).collect();
        out.push(FlatLine::Theta);
        out
    }

    pub fn label(&self, calc: &Calculus) -> String {
        match self {
            FlatLine::Generator(a) => format!("lambda*e_{}-theta", calc.class().label(*a)),
            FlatLine::Theta => "(lambda-1)*theta".to_string(),
        }
    }

    /// Constant coefficients of the line at parameter `lambda`.
    pub fn coefficients(&self, n: usize, lambda: &Cyclotomic) -> Vec<Cyclotomic> {
        match self {
            FlatLine::Generator(a) => (0..n)
                .map(|b| if b == *a { lambda - &Cyclotomic::one() } else { -Cyclotomic::one() })
                .collect(),
            FlatLine::Theta => vec![lambda - &Cyclotomic::one(); n],
        }
    }

    pub fn point(&self, calc: &Calculus, lambda: &Cyclotomic) -> OneForm {
        calc.constant_one_form(&self.coefficients(calc.generators(), lambda))
    }
}

/// Whether constant coefficients lie on one of the flat lines.
pub fn on_flat_lines(coeffs: &[Cyclotomic]) -> bool {
    let minus_one = -Cyclotomic::one();
    if coeffs.iter().all(|c| *c == coeffs[0]) {
        return true;
    }
    coeffs.iter().filter(|c| **c != minus_one).count() <= 1
}

/// Flatness of each line at each parameter value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatLineCheck {
    pub line: String,
    pub parameters: Vec<Cyclotomic>,
    pub flat: Vec<bool>,
}

pub fn check_flat_lines(calc: &Calculus, parameters: &[Cyclotomic]) -> Vec<FlatLineCheck> {
    FlatLine::all(calc)
        .iter()
        .map(|line| FlatLineCheck {
            line: line.label(calc),
            parameters: parameters.to_vec(),
            flat: parameters.iter().map(|l| u1_curvature(calc, &line.point(calc, l)).is_zero()).collect(),
        })
        .collect()
}

/// Constant connections with coefficients from `grid` that are flat. A
/// heuristic search, not a classification.
pub fn flat_constant_grid_search(calc: &Calculus, grid: &[Cyclotomic]) -> Vec<Vec<Cyclotomic>> {
    let n = calc.generators();
    let total = grid.len().pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let coeffs: Vec<Cyclotomic> = (0..n)
                .map(|_| {
                    let c = grid[code % grid.len()].clone();
                    code /= grid.len();
                    c
                })
                .collect();
            u1_curvature(calc, &calc.constant_one_form(&coeffs)).is_zero().then_some(coeffs)
        })
        .collect()
}

/// Coordinates of `e_a⊗e_b` in the `n²`-dimensional tensor basis.
fn tensor(n: usize, terms: &[(usize, usize)]) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(); n * n];
    for &(a, b) in terms {
        v[a * n + b] += Cyclotomic::one();
    }
    v
}

/// The relations `e_a⊗e_a` and the four cyclic three-term sums of a
/// four-element cyclic class in the order t, x, y, z.
pub fn cyclic_class_relations() -> Vec<Vec<Cyclotomic>> {
    let (t, x, y, z) = (0, 1, 2, 3);
    let mut out: Vec<Vec<Cyclotomic>> = (0..4).map(|a| tensor(4, &[(a, a)])).collect();
    for terms in [
        [(t, x), (x, z), (z, t)],
        [(x, t), (t, y), (y, x)],
        [(t, z), (z, y), (y, t)],
        [(x, y), (y, z), (z, x)],
    ] {
        out.push(tensor(4, &terms));
    }
    out
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> bool {
    echelon_basis(a) == echelon_basis(b)
}

/// Relations of `calc` supported on the sub-block `positions × positions`,
/// in the coordinates of that block.
pub fn restricted_relations(calc: &Calculus, positions: &[usize]) -> Vec<Vec<Cyclotomic>> {
    let n = calc.generators();
    let inside: Vec<usize> = positions.iter().flat_map(|&a| positions.iter().map(move |&b| a * n + b)).collect();
    let relations = calc.relations();
    if relations.is_empty() {
        return Vec::new();
    }
    // Combinations of the relations whose coordinates outside the block vanish.
    let outside: Vec<usize> = (0..n * n).filter(|i| !inside.contains(i)).collect();
    let constraints = ExactMatrix::from_fn(outside.len(), relations.len(), |i, j| relations[j][outside[i]].clone());
    let combos = if outside.is_empty() {
        ExactMatrix::identity(relations.len()).to_rows()
    } else {
        constraints.nullspace()
    };
    combos
        .iter()
        .map(|c| {
            inside
                .iter()
                .map(|&i| c.iter().zip(relations).fold(Cyclotomic::zero(), |acc, (k, r)| &acc + &(k * &r[i])))
                .collect()
        })
        .collect()
}

/// Outcome of the S4 cross-relation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S4CrossCheck {
    pub labels: Vec<String>,
    pub cross_relations: Vec<(String, bool)>,
    pub unbarred_subalgebra: bool,
    pub barred_subalgebra: bool,
    pub holds: bool,
}

const S4_LABELS: [&str; 8] = ["(123)", "(134)", "(243)", "(142)", "(132)", "(143)", "(234)", "(124)"];
const S4_NAMES: [&str; 8] = ["t", "x", "y", "z", "tb", "xb", "yb", "zb"];

/// Checks, on the eight-element class of (123) in S4 arranged as
/// t, x, y, z, t̄, x̄, ȳ, z̄, that the cross relations and their conjugates lie
/// in ker(id − Ψ), and that each half carries the four-element cyclic
/// relations (reversed for the barred half).
pub fn s4_cross_relations_check() -> Result<S4CrossCheck, CohomologyError> {
    let group = FiniteGroup::symmetric4();
    let elements = S4_LABELS.iter().map(|l| group.index_of(l)).collect::<Result<Vec<_>, _>>()?;
    let class = ClassCalculus::with_order(group, elements)?;
    let calc = Calculus::new(class);
    let relations = calc.relations();
    let bar = |a: usize| (a + 4) % 8;
    let (t, x, y, z) = (0, 1, 2, 3);
    let mut cross: Vec<(String, Vec<(usize, usize)>)> = Vec::new();
    for a in 0..4 {
        cross.push((format!("e_{0}^e_{0}b+e_{0}b^e_{0}", S4_NAMES[a]), vec![(a, bar(a)), (bar(a), a)]));
    }
    for cycle in [[t, bar(z), x, bar(y)], [t, bar(x), y, bar(z)], [t, bar(y), z, bar(x)]] {
        let terms: Vec<(usize, usize)> = (0..4).map(|i| (cycle[i], cycle[(i + 1) % 4])).collect();
        let name = terms.iter().map(|&(a, b)| format!("e_{}^e_{}", S4_NAMES[a], S4_NAMES[b])).collect::<Vec<_>>().join("+");
        let conj: Vec<(usize, usize)> = terms.iter().map(|&(a, b)| (bar(b), bar(a))).collect();
        let conj_name = conj.iter().map(|&(a, b)| format!("e_{}^e_{}", S4_NAMES[a], S4_NAMES[b])).collect::<Vec<_>>().join("+");
        cross.push((name, terms));
        cross.push((conj_name, conj));
    }
    let cross_relations: Vec<(String, bool)> =
        cross.into_iter().map(|(name, terms)| (name, in_span(relations, &tensor(8, &terms)))).collect();
    let standard = cyclic_class_relations();
    let reversed: Vec<Vec<Cyclotomic>> = standard
        .iter()
        .map(|v| (0..16).map(|i| v[(i % 4) * 4 + i / 4].clone()).collect())
        .collect();
    let unbarred_subalgebra = same_span(&restricted_relations(&calc, &[0, 1, 2, 3]), &standard);
    let barred_subalgebra = same_span(&restricted_relations(&calc, &[4, 5, 6, 7]), &reversed);
    let holds = unbarred_subalgebra && barred_subalgebra && cross_relations.iter().all(|(_, ok)| *ok);
    Ok(S4CrossCheck {
        labels: S4_LABELS.iter().map(|s| s.to_string()).collect(),
        cross_relations,
        unbarred_subalgebra,
        barred_subalgebra,
        holds,
    })
}

/// `∂^a` as a `|G|×|G|` matrix.
pub fn partial_matrix(group: &FiniteGroup, a: usize) -> ExactMatrix {
    let n = group.order();
    ExactMatrix::from_fn(n, n, |g, h| {
        let mut v = Cyclotomic::zero();
        if group.mul(g, a) == h {
            v += Cyclotomic::one();
        }
        if g == h {
            v -= Cyclotomic::one();
        }
        v
    })
}

/// Outcome of the conjugate-calculus check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateCheck {
    pub transpose_is_square: bool,
    pub conjugate_class: Vec<String>,
    pub squares_form_conjugate_class: bool,
    pub conjugate_cyclic: bool,
    pub conjugate_relations_standard: bool,
    pub holds: bool,
}

/// `∂_a` transposed equals `∂_{a²}`, the squares form the conjugate class,
/// which is cyclic with the same relation pattern.
pub fn conjugate_calculus_check(class: &ClassCalculus) -> Result<ConjugateCheck, CohomologyError> {
    let group = class.group();
    for &g in class.elements() {
        let k = group.element_order(g);
        if k != 3 {
            return Err(CohomologyError::NotOrderThree(group.name(g).to_string(), k));
        }
    }
    let transpose_is_square = class
        .elements()
        .iter()
        .all(|&g| partial_matrix(group, g).transpose() == partial_matrix(group, group.mul(g, g)));
    let square = group.mul(class.element(0), class.element(0));
    let conj = ClassCalculus::new(group.clone(), square)?;
    let mut squares: Vec<usize> = class.elements().iter().map(|&g| group.mul(g, g)).collect();
    squares.sort_unstable();
    let mut members = conj.elements().to_vec();
    members.sort_unstable();
    let squares_form_conjugate_class = squares == members;
    let conjugate_cyclic = conj.is_cyclic();
    let conjugate_relations_standard =
        conj.size() == 4 && same_span(&Calculus::new(conj.clone()).relations().to_vec(), &cyclic_class_relations());
    let holds = transpose_is_square && squares_form_conjugate_class && conjugate_cyclic && conjugate_relations_standard;
    Ok(ConjugateCheck {
        transpose_is_square,
        conjugate_class: conj.labels(),
        squares_form_conjugate_class,
        conjugate_cyclic,
        conjugate_relations_standard,
        holds,
    })
}
