//! Finite groups given by Cayley tables, conjugacy classes, and the
//! structural tests used to select a calculus.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("table must be {expected}x{expected}, row {row} has {found} entries")]
    NotSquare { expected: usize, row: usize, found: usize },
    #[error("table has {rows} rows but {names} element names")]
    NameCount { rows: usize, names: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("not a Latin square: row or column through ({row}, {col}) repeats {value}")]
    NotLatin { row: usize, col: usize, value: usize },
    #[error("element 0 (`{0}`) is not a two-sided identity")]
    NoIdentity(String),
    #[error("associativity fails on ({a}, {b}, {c}): ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("the identity does not span a calculus class")]
    IdentityClass,
    #[error("`{0}` is not a conjugacy class")]
    NotAClass(String),
    #[error("requires a cyclic class with four elements")]
    NeedsCyclicFourClass,
    #[error("malformed group description: {0}")]
    Malformed(String),
}

/// Group-spec interchange format: names plus a Cayley table with the
/// identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// A finite group with validated multiplication table. Element 0 is the
/// identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}: {})", self.order(), self.names.join(" "))
    }
}

type Perm = Vec<usize>;

/// `(g·h)(i) = g(h(i))`
fn compose(g: &Perm, h: &Perm) -> Perm {
    h.iter().map(|&i| g[i]).collect()
}

fn cycle_notation(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

fn all_permutations(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

impl FiniteGroup {
    /// Validates and builds a group from names and a Cayley table.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if names.len() != n {
            return Err(GroupError::NameCount { rows: n, names: names.len() });
        }
        let mut seen_names = BTreeSet::new();
        for name in &names {
            if !seen_names.insert(name.as_str()) {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { expected: n, row, found: r.len() });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let v = table[i][j];
                if std::mem::replace(&mut row_seen[v], true) {
                    return Err(GroupError::NotLatin { row: i, col: j, value: v });
                }
                let w = table[j][i];
                if std::mem::replace(&mut col_seen[w], true) {
                    return Err(GroupError::NotLatin { row: j, col: i, value: w });
                }
            }
        }
        if (0..n).any(|g| table[0][g] != g || table[g][0] != g) {
            return Err(GroupError::NoIdentity(names[0].clone()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| table[g][h] == 0).expect("Latin square has an inverse"))
            .collect();
        Ok(FiniteGroup { names, table, inverse })
    }

    pub fn from_spec(spec: GroupSpec) -> Result<Self, GroupError> {
        FiniteGroup::from_table(spec.names, spec.table)
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))?;
        FiniteGroup::from_spec(spec)
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec { names: self.names.clone(), table: self.table.clone() }
    }

    /// Group of the given permutations, which must be closed under
    /// composition and list the identity first.
    fn from_permutations(names: Vec<String>, perms: &[Perm]) -> Self {
        let index = |p: &Perm| perms.iter().position(|q| q == p).expect("permutations are closed");
        let table = perms.iter().map(|g| perms.iter().map(|h| index(&compose(g, h))).collect()).collect();
        FiniteGroup::from_table(names, table).expect("permutation groups are groups")
    }

    fn symmetric_like(degree: usize, keep: impl Fn(&Perm) -> bool) -> Self {
        let perms: Vec<Perm> = all_permutations(degree).into_iter().filter(|p| keep(p)).collect();
        let names = perms.iter().map(cycle_notation).collect();
        FiniteGroup::from_permutations(names, &perms)
    }

    /// A4 as even permutations of {1,2,3,4} in the order
    /// e, u, v, w, t, x, y, z, t², ut², vt², wt², with t = (123),
    /// u = (14)(23), v = (12)(34), w = (13)(24), and x = ut, y = vt, z = wt.
    pub fn alternating4() -> Self {
        let e: Perm = vec![0, 1, 2, 3];
        let t: Perm = vec![1, 2, 0, 3];
        let u: Perm = vec![3, 2, 1, 0];
        let v: Perm = vec![1, 0, 3, 2];
        let w: Perm = vec![2, 3, 0, 1];
        let t2 = compose(&t, &t);
        let perms = vec![
            e,
            u.clone(),
            v.clone(),
            w.clone(),
            t.clone(),
            compose(&u, &t),
            compose(&v, &t),
            compose(&w, &t),
            t2.clone(),
            compose(&u, &t2),
            compose(&v, &t2),
            compose(&w, &t2),
        ];
        let names = ["e", "u", "v", "w", "t", "x", "y", "z", "t2", "ut2", "vt2", "wt2"];
        FiniteGroup::from_permutations(names.iter().map(|s| s.to_string()).collect(), &perms)
    }

    /// Symmetric group on three points, elements named in cycle notation.
    pub fn symmetric3() -> Self {
        FiniteGroup::symmetric_like(3, |_| true)
    }

    /// Symmetric group on four points, elements named in cycle notation.
    pub fn symmetric4() -> Self {
        FiniteGroup::symmetric_like(4, |_| true)
    }

    /// A4 as even permutations in lexicographic order with cycle-notation
    /// names; used to cross-check the labelled builtin.
    pub fn alternating4_cycles() -> Self {
        FiniteGroup::symmetric_like(4, is_even)
    }

    /// SL(2, ℤ/3): determinant-one 2×2 matrices over ℤ/3, named `mabcd` for
    /// the matrix [[a, b], [c, d]], identity first then lexicographic.
    pub fn sl2_z3() -> Self {
        let mut mats: Vec<[usize; 4]> = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if (a * d + 3 * 3 - (b * c) % 3) % 3 == 1 {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let id = [1, 0, 0, 1];
        mats.retain(|m| *m != id);
        mats.insert(0, id);
        let mul = |m: &[usize; 4], n: &[usize; 4]| {
            [
                (m[0] * n[0] + m[1] * n[2]) % 3,
                (m[0] * n[1] + m[1] * n[3]) % 3,
                (m[2] * n[0] + m[3] * n[2]) % 3,
                (m[2] * n[1] + m[3] * n[3]) % 3,
            ]
        };
        let index = |m: &[usize; 4]| mats.iter().position(|x| x == m).expect("closed");
        let table = mats.iter().map(|m| mats.iter().map(|n| index(&mul(m, n))).collect()).collect();
        let names = mats.iter().map(|m| format!("m{}{}{}{}", m[0], m[1], m[2], m[3])).collect();
        FiniteGroup::from_table(names, table).expect("SL(2,3) is a group")
    }

    /// Klein four-group {e, a, b, c}.
    pub fn klein() -> Self {
        let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        FiniteGroup::from_table(["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect(), table)
            .expect("Klein group is a group")
    }

    /// Cyclic group of order n with elements e, g, g^2, ….
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(names, table)
    }

    /// Resolves a builtin name: `a4`, `s3`, `s4`, `sl2z3`, `klein`, or
    /// `cyclic(n)`.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        let key = name.trim().to_ascii_lowercase();
        match key.as_str() {
            "a4" => Ok(FiniteGroup::alternating4()),
            "s3" => Ok(FiniteGroup::symmetric3()),
            "s4" => Ok(FiniteGroup::symmetric4()),
            "sl2z3" => Ok(FiniteGroup::sl2_z3()),
            "klein" => Ok(FiniteGroup::klein()),
            _ => {
                let n = key
                    .strip_prefix("cyclic(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|n| n.trim().parse::<usize>().ok())
                    .ok_or_else(|| GroupError::UnknownBuiltin(name.to_string()))?;
                FiniteGroup::cyclic(n)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GroupError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `g·a·g⁻¹`
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.order()).map(|g| self.conjugate(g, a)).collect();
        set.into_iter().collect()
    }

    /// Orbits of the conjugation action, each sorted, ordered by their least
    /// element (so the identity's class comes first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() {
            if assigned[g] {
                continue;
            }
            let class = self.conjugacy_class(g);
            for &h in &class {
                assigned[h] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Sorted elements of the subgroup generated by `generators`.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Vec<usize> {
        let mut members = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(g) = frontier.pop() {
            for &s in generators {
                let h = self.mul(g, s);
                if members.insert(h) {
                    frontier.push(h);
                }
            }
        }
        members.into_iter().collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Outcome of the cyclicity test on a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cyclicity {
    pub cyclic: bool,
    /// First witness in class order, as a class position.
    pub witness: Option<usize>,
    pub witnesses: Vec<usize>,
}

/// Which product pattern a four-element cyclic class follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProductPattern {
    /// No square a² equals a product of two distinct class elements.
    SquaresSeparate,
    /// x² = yt, y² = zt, z² = xt and t² = xy.
    SquaresMixed,
    Other,
}

/// Subgroup generated by a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generation {
    pub generates: bool,
    pub closure: Vec<usize>,
}

/// A conjugacy class in a fixed order together with its adjoint action;
/// the generators of the bicovariant calculus.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassCalculus {
    group: FiniteGroup,
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
    ad: Vec<Vec<usize>>,
}

impl fmt::Debug for ClassCalculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.elements.iter().map(|&g| self.group.name(g)).collect();
        write!(f, "ClassCalculus{{{}}}", labels.join(", "))
    }
}

/// True when the class-position permutation `perm` restricted to the
/// positions other than `fixed` is a single cycle.
fn single_cycle_off(perm: &[usize], fixed: usize) -> bool {
    let n = perm.len();
    if perm[fixed] != fixed {
        return false;
    }
    if n == 1 {
        return false;
    }
    let start = (0..n).find(|&i| i != fixed).expect("n >= 2");
    let mut len = 1;
    let mut i = perm[start];
    while i != start {
        if i == fixed {
            return false;
        }
        i = perm[i];
        len += 1;
    }
    len == n - 1
}

impl ClassCalculus {
    /// The class containing `element`, ordered by first appearance with the
    /// first cyclicity witness moved to the front. Four-element cyclic
    /// classes are further arranged so the adjoint table reads
    /// Ad_t: x→z→y→x and Ad_x(t) = y, Ad_y(t) = z, Ad_z(t) = x.
    pub fn new(group: FiniteGroup, element: usize) -> Result<Self, GroupError> {
        if element == 0 {
            return Err(GroupError::IdentityClass);
        }
        let class = group.conjugacy_class(element);
        let base = ClassCalculus::with_order(group, class)?;
        let cyc = base.cyclicity();
        let Some(witness) = cyc.witness else {
            return Ok(base);
        };
        let mut order = base.elements.clone();
        order.remove(witness);
        order.insert(0, base.elements[witness]);
        let group = base.group;
        if order.len() == 4 {
            for &w in &cyc.witnesses {
                let t = base.elements[w];
                let rest: Vec<usize> = base.elements.iter().copied().filter(|&g| g != t).collect();
                for p in all_permutations(3) {
                    let candidate = vec![t, rest[p[0]], rest[p[1]], rest[p[2]]];
                    let cc = ClassCalculus::with_order(group.clone(), candidate)?;
                    if cc.has_canonical_ad() {
                        return Ok(cc);
                    }
                }
            }
        }
        ClassCalculus::with_order(group, order)
    }

    /// The class containing the element named `label`.
    pub fn from_label(group: FiniteGroup, label: &str) -> Result<Self, GroupError> {
        let g = group.index_of(label)?;
        ClassCalculus::new(group, g)
    }

    /// Uses `elements` in the given order; they must form a full
    /// conjugacy class.
    pub fn with_order(group: FiniteGroup, elements: Vec<usize>) -> Result<Self, GroupError> {
        let label = || elements.iter().map(|&g| group.name(g).to_string()).collect::<Vec<_>>().join(",");
        let Some(&first) = elements.first() else {
            return Err(GroupError::NotAClass(String::new()));
        };
        if first == 0 {
            return Err(GroupError::IdentityClass);
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if sorted != group.conjugacy_class(first) {
            return Err(GroupError::NotAClass(label()));
        }
        let mut position = vec![None; group.order()];
        for (i, &g) in elements.iter().enumerate() {
            position[g] = Some(i);
        }
        let ad = elements
            .iter()
            .map(|&a| {
                elements
                    .iter()
                    .map(|&b| position[group.conjugate(a, b)].expect("class is conjugation-closed"))
                    .collect()
            })
            .collect();
        Ok(ClassCalculus { group, elements, position, ad })
    }

    fn has_canonical_ad(&self) -> bool {
        // positions: t = 0, x = 1, y = 2, z = 3
        let ad = &self.ad;
        ad[0] == [0, 3, 1, 2] && ad[1][0] == 2 && ad[2][0] == 3 && ad[3][0] == 1
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Group index of the class element at position `a`.
    pub fn element(&self, a: usize) -> usize {
        self.elements[a]
    }

    pub fn label(&self, a: usize) -> &str {
        self.group.name(self.elements[a])
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.size()).map(|a| self.label(a).to_string()).collect()
    }

    /// Class position of a group element, if it lies in the class.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.position[g]
    }

    pub fn position_of_label(&self, label: &str) -> Result<usize, GroupError> {
        let g = self.group.index_of(label)?;
        self.position(g).ok_or_else(|| GroupError::UnknownElement(label.to_string()))
    }

    /// `ad()[a][b]` is the position of `a·b·a⁻¹`.
    pub fn ad(&self) -> &[Vec<usize>] {
        &self.ad
    }

    /// Position of `b⁻¹·a·b`.
    pub fn ad_inv(&self, b: usize, a: usize) -> usize {
        self.ad[b].iter().position(|&c| c == a).expect("Ad rows are permutations")
    }

    /// `g·a` for a group element g and class position a.
    pub fn right_mul(&self, g: usize, a: usize) -> usize {
        self.group.mul(g, self.elements[a])
    }

    /// Group product of the class elements at positions a and b.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.group.mul(self.elements[a], self.elements[b])
    }

    pub fn cyclicity(&self) -> Cyclicity {
        let n = self.size();
        let witnesses: Vec<usize> = (0..n)
            .filter(|&t| {
                if !single_cycle_off(&self.ad[t], t) {
                    return false;
                }
                let images: BTreeSet<usize> = (0..n).map(|a| self.ad[a][t]).collect();
                images.len() == n
            })
            .collect();
        Cyclicity { cyclic: !witnesses.is_empty(), witness: witnesses.first().copied(), witnesses }
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclicity().cyclic
    }

    /// Decides between the two product patterns available to a four-element
    /// cyclic class (class arranged as t, x, y, z).
    pub fn classify_products(&self) -> Result<ProductPattern, GroupError> {
        if self.size() != 4 || !self.is_cyclic() || !self.has_canonical_ad() {
            return Err(GroupError::NeedsCyclicFourClass);
        }
        let (t, x, y, z) = (0, 1, 2, 3);
        let p = |a, b| self.product(a, b);
        if p(x, x) == p(y, t) && p(y, y) == p(z, t) && p(z, z) == p(x, t) && p(t, t) == p(x, y) {
            return Ok(ProductPattern::SquaresMixed);
        }
        let products = [p(t, x), p(t, y), p(t, z), p(x, y)];
        if (0..4).all(|a| !products.contains(&p(a, a))) {
            return Ok(ProductPattern::SquaresSeparate);
        }
        Ok(ProductPattern::Other)
    }

    pub fn generation(&self) -> Generation {
        let closure = self.group.generated_subgroup(&self.elements);
        Generation { generates: closure.len() == self.group.order(), closure }
    }
}
