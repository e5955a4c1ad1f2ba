//! Parabolic data (P, σ) for `gl_n`, `B_n`, `C_n`, `D_n` and the t-root systems they determine.
//!
//! Indices are 1-based everywhere in the public surface. Non-`I_0` parts are numbered
//! 1..=k in their order; `δ_i` is the coordinate attached to part i. The projection of an
//! ε-root α is `ν_i = Σ_{j ∈ I_i} σ(j) α_j`, which is `|I_i| · α(t_i)` for
//! `t_i = (1/|I_i|) Σ σ(j) h_j`; this scaling makes `ε_j ↦ σ(j) δ_i` and reproduces the
//! listed t-root systems (`±δ_i ± δ_j`, `±δ_i`, `±2δ_i`) exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, BasisTag, Rational, Vector};
use crate::roots::{generate_roots, LieType, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParabolicType {
    TypeI,
    TypeII,
}

/// Totally ordered partition of {1..n}: the non-`I_0` parts in order, plus an optional
/// largest part `I_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub parts: Vec<Vec<usize>>,
    pub i0: Option<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(parts: Vec<Vec<usize>>, i0: Option<Vec<usize>>) -> Self {
        let sort = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        OrderedPartition { parts: parts.into_iter().map(sort).collect(), i0: i0.map(sort) }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn i0_set(&self) -> &[usize] {
        self.i0.as_deref().unwrap_or(&[])
    }
}

/// Parabolic datum (P, σ) for a classical algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicDatum {
    pub lie_type: LieType,
    pub n: usize,
    pub partition: OrderedPartition,
    /// σ on its domain: all of {1..n} for Type I, {1..n} \ I_0 for Type II.
    pub signs: BTreeMap<usize, i8>,
    pub ptype: ParabolicType,
}

/// Validates and builds a datum. Type II is inferred from the presence of `I_0`.
pub fn make_datum(
    lie_type: LieType,
    n: usize,
    parts: Vec<Vec<usize>>,
    i0: Option<Vec<usize>>,
    signs: BTreeMap<usize, i8>,
) -> Result<ParabolicDatum> {
    let bad = |m: String| Err(Error::InvalidDatum(m));
    if !matches!(lie_type, LieType::Gl | LieType::B | LieType::C | LieType::D) {
        return bad(format!("parabolic data are classical only, got {lie_type}"));
    }
    if n == 0 {
        return bad("n must be positive".into());
    }
    let partition = OrderedPartition::new(parts, i0);
    let mut seen = BTreeSet::new();
    for part in partition.parts.iter().chain(partition.i0.iter()) {
        if part.is_empty() {
            return bad("empty part".into());
        }
        for &j in part {
            if j == 0 || j > n {
                return bad(format!("index {j} outside 1..={n}"));
            }
            if !seen.insert(j) {
                return bad(format!("index {j} appears in two parts"));
            }
        }
    }
    if seen.len() != n {
        let missing: Vec<usize> = (1..=n).filter(|j| !seen.contains(j)).collect();
        return bad(format!("parts do not cover {missing:?}"));
    }
    let ptype = if partition.i0.is_some() { ParabolicType::TypeII } else { ParabolicType::TypeI };
    if lie_type == LieType::Gl && ptype == ParabolicType::TypeII {
        return bad("gl_n has no Type II parabolics".into());
    }
    if lie_type == LieType::D && partition.i0.as_ref().is_some_and(|p| p.len() < 2) {
        return bad("D_n Type II requires |I_0| >= 2".into());
    }
    let domain: BTreeSet<usize> = (1..=n).filter(|j| !partition.i0_set().contains(j)).collect();
    let keys: BTreeSet<usize> = signs.keys().copied().collect();
    if lie_type == LieType::Gl {
        if signs.values().any(|&s| s != 1) {
            return bad("gl_n carries no signs".into());
        }
        if !keys.is_subset(&domain) {
            return bad("sign map outside {1..n}".into());
        }
        let signs = domain.iter().map(|&j| (j, 1)).collect();
        return Ok(ParabolicDatum { lie_type, n, partition, signs, ptype });
    }
    if keys != domain {
        return bad(format!("sign map domain {keys:?} must be {domain:?}"));
    }
    if signs.values().any(|&s| s != 1 && s != -1) {
        return bad("signs must be ±1".into());
    }
    Ok(ParabolicDatum { lie_type, n, partition, signs, ptype })
}

impl ParabolicDatum {
    /// Convenience constructor with σ ≡ +1 on its domain.
    pub fn with_positive_signs(
        lie_type: LieType,
        n: usize,
        parts: Vec<Vec<usize>>,
        i0: Option<Vec<usize>>,
    ) -> Result<Self> {
        let excluded: BTreeSet<usize> = i0.iter().flatten().copied().collect();
        let signs = (1..=n).filter(|j| !excluded.contains(j)).map(|j| (j, 1)).collect();
        make_datum(lie_type, n, parts, i0, signs)
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    pub fn is_signed(&self) -> bool {
        self.lie_type != LieType::Gl
    }

    /// 0-based index of the non-`I_0` part containing `j`, or `None` for `j ∈ I_0`.
    pub fn part_of(&self, j: usize) -> Option<usize> {
        self.partition.parts.iter().position(|p| p.contains(&j))
    }

    pub fn sign(&self, j: usize) -> i8 {
        self.signs.get(&j).copied().unwrap_or(1)
    }

    pub fn part_size(&self, i: usize) -> usize {
        self.partition.parts[i].len()
    }

    pub fn i0_size(&self) -> usize {
        self.partition.i0_set().len()
    }

    pub fn root_system(&self) -> RootSystem {
        generate_roots(self.lie_type, self.n).expect("validated datum")
    }

    /// Dimension of the natural module V_0 of the `I_0` factor.
    pub fn v0_dim(&self) -> usize {
        let m = self.i0_size();
        match self.lie_type {
            LieType::B => 2 * m + 1,
            _ => 2 * m,
        }
    }
}

impl fmt::Display for ParabolicDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.parts.iter().map(|p| format!("{p:?}")).collect();
        write!(f, "{}{} P=({})", self.lie_type, self.n, parts.join(" < "))?;
        if let Some(i0) = &self.partition.i0 {
            write!(f, " < I0={i0:?}")?;
        }
        if self.is_signed() {
            let s: String = self.signs.values().map(|&s| if s > 0 { '+' } else { '-' }).collect();
            write!(f, " sigma={s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentKind {
    Gl,
    B,
    C,
    D,
}

/// One simple-or-gl factor of the reductive part s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    /// 0 for the `I_0` factor, i ≥ 1 for the factor on part `I_i`.
    pub label: usize,
    pub indices: Vec<usize>,
    /// Cartan basis as signed coroots (j, ±1) meaning ±h_j.
    pub cartan_basis: Vec<(usize, i8)>,
    /// Simple roots (ε-basis) of the semisimple part of the factor.
    pub simple_roots: Vec<Vector>,
}

impl Component {
    pub fn rank(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductivePart {
    pub components: Vec<Component>,
    /// ε-roots of s, sorted.
    pub roots: Vec<Vector>,
}

impl ReductivePart {
    pub fn dim(&self, n: usize) -> usize {
        self.roots.len() + n
    }

    pub fn simple_roots(&self) -> Vec<Vector> {
        self.components.iter().flat_map(|c| c.simple_roots.iter().cloned()).collect()
    }
}

fn eps(n: usize, terms: &[(usize, i128)]) -> Vector {
    let mut v = Vector::zero(n, BasisTag::Epsilon);
    for &(j, c) in terms {
        v.coords[j - 1] += int(c);
    }
    v
}

pub fn reductive_part(datum: &ParabolicDatum) -> ReductivePart {
    let n = datum.n;
    let mut components = Vec::new();
    let mut roots = BTreeSet::new();
    for (i, part) in datum.partition.parts.iter().enumerate() {
        let s = |j: usize| datum.sign(j) as i128;
        for &a in part {
            for &b in part {
                if a != b {
                    roots.insert(eps(n, &[(a, s(a)), (b, -s(b))]));
                }
            }
        }
        let simple = part.windows(2).map(|w| eps(n, &[(w[0], s(w[0])), (w[1], -s(w[1]))])).collect();
        components.push(Component {
            kind: ComponentKind::Gl,
            label: i + 1,
            indices: part.clone(),
            cartan_basis: part.iter().map(|&j| (j, datum.sign(j))).collect(),
            simple_roots: simple,
        });
    }
    if let Some(i0) = &datum.partition.i0 {
        let kind = match datum.lie_type {
            LieType::B => ComponentKind::B,
            LieType::C => ComponentKind::C,
            LieType::D => ComponentKind::D,
            _ => unreachable!("gl has no I_0"),
        };
        for &a in i0 {
            for &b in i0 {
                if a != b {
                    for sa in [1, -1] {
                        for sb in [1, -1] {
                            roots.insert(eps(n, &[(a, sa), (b, sb)]));
                        }
                    }
                }
            }
            match kind {
                ComponentKind::B => {
                    roots.insert(eps(n, &[(a, 1)]));
                    roots.insert(eps(n, &[(a, -1)]));
                }
                ComponentKind::C => {
                    roots.insert(eps(n, &[(a, 2)]));
                    roots.insert(eps(n, &[(a, -2)]));
                }
                _ => {}
            }
        }
        let m = i0.len();
        let mut simple: Vec<Vector> = i0.windows(2).map(|w| eps(n, &[(w[0], 1), (w[1], -1)])).collect();
        match kind {
            ComponentKind::B => simple.push(eps(n, &[(i0[m - 1], 1)])),
            ComponentKind::C => simple.push(eps(n, &[(i0[m - 1], 2)])),
            ComponentKind::D if m >= 2 => simple.push(eps(n, &[(i0[m - 2], 1), (i0[m - 1], 1)])),
            _ => {}
        }
        components.push(Component {
            kind,
            label: 0,
            indices: i0.clone(),
            cartan_basis: i0.iter().map(|&j| (j, 1)).collect(),
            simple_roots: simple,
        });
    }
    ReductivePart { components, roots: roots.into_iter().collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorKind {
    NatPlus,
    NatMinus,
    Lambda2Plus,
    Lambda2Minus,
    Sym2Plus,
    Sym2Minus,
    V0,
}

impl FactorKind {
    fn symbol(self) -> &'static str {
        match self {
            FactorKind::NatPlus => "V+",
            FactorKind::NatMinus => "V-",
            FactorKind::Lambda2Plus => "L2V+",
            FactorKind::Lambda2Minus => "L2V-",
            FactorKind::Sym2Plus => "S2V+",
            FactorKind::Sym2Minus => "S2V-",
            FactorKind::V0 => "V0",
        }
    }
}

/// s-module structure of a t-root space: a tensor product of at most two factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleLabel {
    /// (component label, factor kind); component 0 is the `I_0` factor.
    pub factors: Vec<(usize, FactorKind)>,
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(i, k)| match k {
                FactorKind::V0 => "V0".to_string(),
                _ => format!("{}_{}", k.symbol(), i),
            })
            .collect();
        f.write_str(&parts.join(" (x) "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TRoot {
    pub delta: Vector,
    pub label: ModuleLabel,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TRootSystem {
    pub datum: ParabolicDatum,
    pub k: usize,
    /// t_i as coefficient vectors on h_1..h_n.
    #[serde(skip)]
    pub t_basis: Vec<Vector>,
    /// Sorted by δ-coordinates.
    pub troots: Vec<TRoot>,
}

impl TRootSystem {
    pub fn len(&self) -> usize {
        self.troots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.troots.is_empty()
    }

    pub fn index_of(&self, nu: &Vector) -> Option<usize> {
        self.troots.binary_search_by(|t| t.delta.cmp(nu)).ok()
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.troots.iter().map(|t| t.delta.clone()).collect()
    }
}

pub fn delta(k: usize, terms: &[(usize, i128)]) -> Vector {
    let mut v = Vector::zero(k, BasisTag::Delta);
    for &(i, c) in terms {
        v.coords[i] += int(c);
    }
    v
}

fn factor_dim(datum: &ParabolicDatum, comp: usize, kind: FactorKind) -> usize {
    if kind == FactorKind::V0 {
        return datum.v0_dim();
    }
    let r = datum.part_size(comp - 1);
    match kind {
        FactorKind::NatPlus | FactorKind::NatMinus => r,
        FactorKind::Lambda2Plus | FactorKind::Lambda2Minus => r * (r - 1) / 2,
        FactorKind::Sym2Plus | FactorKind::Sym2Minus => r * (r + 1) / 2,
        FactorKind::V0 => unreachable!(),
    }
}

fn label_dim(datum: &ParabolicDatum, label: &ModuleLabel) -> usize {
    label.factors.iter().map(|&(c, k)| factor_dim(datum, c, k)).product()
}

/// Which of ±δ_i and ±2δ_i occur, per type and case.
fn has_single(datum: &ParabolicDatum) -> bool {
    datum.lie_type == LieType::B || datum.ptype == ParabolicType::TypeII
}

fn has_double(datum: &ParabolicDatum, i: usize) -> bool {
    match datum.lie_type {
        LieType::C => true,
        LieType::B | LieType::D => datum.part_size(i) > 1,
        _ => false,
    }
}

fn double_kind(datum: &ParabolicDatum, sign: i128) -> FactorKind {
    match (datum.lie_type, sign > 0) {
        (LieType::C, true) => FactorKind::Sym2Plus,
        (LieType::C, false) => FactorKind::Sym2Minus,
        (_, true) => FactorKind::Lambda2Plus,
        (_, false) => FactorKind::Lambda2Minus,
    }
}

fn nat(sign: i128) -> FactorKind {
    if sign > 0 {
        FactorKind::NatPlus
    } else {
        FactorKind::NatMinus
    }
}

/// Builds R with labels and dimensions from the per-type tables.
pub fn t_root_system(datum: &ParabolicDatum) -> TRootSystem {
    let k = datum.k();
    let mut troots = Vec::new();
    let mut push = |delta: Vector, factors: Vec<(usize, FactorKind)>| {
        let label = ModuleLabel { factors };
        let dim = label_dim(datum, &label);
        troots.push(TRoot { delta, label, dim });
    };
    if datum.lie_type == LieType::Gl {
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    push(
                        delta(k, &[(i, 1), (j, -1)]),
                        vec![(i + 1, FactorKind::NatPlus), (j + 1, FactorKind::NatMinus)],
                    );
                }
            }
        }
    } else {
        for i in 0..k {
            for j in i + 1..k {
                for a in [1, -1] {
                    for b in [1, -1] {
                        push(delta(k, &[(i, a), (j, b)]), vec![(i + 1, nat(a)), (j + 1, nat(b))]);
                    }
                }
            }
            for a in [1, -1] {
                if has_single(datum) {
                    let mut factors = vec![(i + 1, nat(a))];
                    if datum.ptype == ParabolicType::TypeII {
                        factors.push((0, FactorKind::V0));
                    }
                    push(delta(k, &[(i, a)]), factors);
                }
                if has_double(datum, i) {
                    push(delta(k, &[(i, 2 * a)]), vec![(i + 1, double_kind(datum, a))]);
                }
            }
        }
    }
    troots.sort();
    let t_basis = datum
        .partition
        .parts
        .iter()
        .map(|part| {
            let mut v = Vector::zero(datum.n, BasisTag::Epsilon);
            for &j in part {
                v.coords[j - 1] = rat(datum.sign(j) as i128, part.len() as i128);
            }
            v
        })
        .collect();
    TRootSystem { datum: datum.clone(), k, t_basis, troots }
}

/// The δ-coordinates `(|I_i| α(t_i))_i` of an ε-root, without checking membership in Δ.
pub fn project_unchecked(datum: &ParabolicDatum, alpha: &Vector) -> Vector {
    let mut v = Vector::zero(datum.k(), BasisTag::Delta);
    for (i, part) in datum.partition.parts.iter().enumerate() {
        for &j in part {
            v.coords[i] += alpha.coords[j - 1] * int(datum.sign(j) as i128);
        }
    }
    v
}

pub fn project_root(datum: &ParabolicDatum, alpha: &Vector) -> Result<Vector> {
    let rs = datum.root_system();
    if alpha.basis != BasisTag::Epsilon || alpha.len() != datum.n || !rs.contains(alpha) {
        return Err(Error::NotARoot(alpha.to_string()));
    }
    Ok(project_unchecked(datum, alpha))
}

/// ε-roots of g grouped by their nonzero projection.
pub fn root_spaces(datum: &ParabolicDatum) -> BTreeMap<Vector, Vec<Vector>> {
    let mut out: BTreeMap<Vector, Vec<Vector>> = BTreeMap::new();
    for alpha in datum.root_system().all_roots {
        let nu = project_unchecked(datum, &alpha);
        if !nu.is_zero() {
            out.entry(nu).or_default().push(alpha);
        }
    }
    out
}

/// ε-roots of the parabolic p_(P,σ).
pub fn parabolic_roots(datum: &ParabolicDatum) -> BTreeSet<Vector> {
    let n = datum.n;
    let s = |j: usize| datum.sign(j) as i128;
    let in_i0 = |j: usize| datum.partition.i0_set().contains(&j);
    let pos = |j: usize| datum.part_of(j);
    let mut out = BTreeSet::new();
    let lie = datum.lie_type;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            match (in_i0(i), in_i0(j)) {
                (false, false) => {
                    if pos(i) <= pos(j) {
                        out.insert(eps(n, &[(i, s(i)), (j, -s(j))]));
                    }
                    if lie != LieType::Gl {
                        out.insert(eps(n, &[(i, s(i)), (j, s(j))]));
                    }
                }
                (true, true) => {
                    for a in [1, -1] {
                        for b in [1, -1] {
                            out.insert(eps(n, &[(i, a), (j, b)]));
                        }
                    }
                }
                (false, true) => {
                    out.insert(eps(n, &[(i, s(i)), (j, 1)]));
                    out.insert(eps(n, &[(i, s(i)), (j, -1)]));
                }
                (true, false) => {}
            }
        }
        match lie {
            LieType::B if in_i0(i) => {
                out.insert(eps(n, &[(i, 1)]));
                out.insert(eps(n, &[(i, -1)]));
            }
            LieType::B => {
                out.insert(eps(n, &[(i, s(i))]));
            }
            LieType::C if in_i0(i) => {
                out.insert(eps(n, &[(i, 2)]));
                out.insert(eps(n, &[(i, -2)]));
            }
            LieType::C => {
                out.insert(eps(n, &[(i, 2 * s(i))]));
            }
            _ => {}
        }
    }
    out
}

/// A signed (or, for `gl_n`, plain) ordering of the δ's: `first_half[p] = (part, sign)`.
///
/// For signed types the full order on {±δ_i} is `x_1 < … < x_k < −x_k < … < −x_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedOrder {
    pub first_half: Vec<(usize, i8)>,
}

impl SignedOrder {
    /// Positive t-roots of this order: ν with φ(ν) > 0 for φ(x_p) = k − p.
    pub fn functional(&self, k: usize) -> Vec<Rational> {
        let mut phi = vec![Rational::zero(); k];
        let len = self.first_half.len();
        for (p, &(i, s)) in self.first_half.iter().enumerate() {
            phi[i] = int(((len - p) as i128) * s as i128);
        }
        phi
    }
}

/// The pair (Q, τ) determined by a signed order.
pub fn datum_for_order(datum: &ParabolicDatum, order: &SignedOrder) -> ParabolicDatum {
    let parts: Vec<Vec<usize>> = order.first_half.iter().map(|&(i, _)| datum.partition.parts[i].clone()).collect();
    let mut signs = datum.signs.clone();
    for &(i, s) in &order.first_half {
        for &j in &datum.partition.parts[i] {
            signs.insert(j, datum.sign(j) * s);
        }
    }
    ParabolicDatum {
        lie_type: datum.lie_type,
        n: datum.n,
        partition: OrderedPartition { parts, i0: datum.partition.i0.clone() },
        signs,
        ptype: datum.ptype,
    }
}

/// Canonical form of an order: for `D_n` Type I with a singleton maximal part, the sign of
/// that part's δ does not change the parabolic and is fixed to +1.
pub fn canonical_order(datum: &ParabolicDatum, mut order: SignedOrder) -> SignedOrder {
    if datum.lie_type == LieType::D && datum.ptype == ParabolicType::TypeI {
        if let Some(last) = order.first_half.last_mut() {
            if datum.part_size(last.0) == 1 {
                last.1 = 1;
            }
        }
    }
    order
}

pub const DEFAULT_ENUMERATION_CAP: usize = 8;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Every parabolic with reductive part s_(P,σ), as the orders on the δ's producing it.
pub fn enumerate_orders(datum: &ParabolicDatum, cap: usize) -> Result<Vec<SignedOrder>> {
    let k = datum.k();
    if k > cap {
        return Err(Error::CapExceeded { what: "number of parts".into(), count: k as u128, cap: cap as u128 });
    }
    let mut out = BTreeSet::new();
    for perm in permutations(k) {
        if datum.is_signed() {
            for mask in 0..(1u32 << k) {
                let first_half =
                    perm.iter().enumerate().map(|(p, &i)| (i, if mask >> p & 1 == 1 { -1 } else { 1 })).collect();
                out.insert(canonical_order(datum, SignedOrder { first_half }));
            }
        } else {
            out.insert(SignedOrder { first_half: perm.into_iter().map(|i| (i, 1)).collect() });
        }
    }
    Ok(out.into_iter().collect())
}

/// All (Q, τ) with the same reductive part as `datum`.
pub fn enumerate_parabolics(datum: &ParabolicDatum, cap: usize) -> Result<Vec<ParabolicDatum>> {
    Ok(enumerate_orders(datum, cap)?.iter().map(|o| datum_for_order(datum, o)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(pairs: &[(usize, i8)]) -> BTreeMap<usize, i8> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn make_datum_examples() {
        let b2 = make_datum(LieType::B, 2, vec![vec![1, 2]], None, signs(&[(1, 1), (2, 1)])).unwrap();
        assert_eq!((b2.ptype, b2.k()), (ParabolicType::TypeI, 1));
        let c2 = make_datum(LieType::C, 2, vec![vec![1]], Some(vec![2]), signs(&[(1, 1)])).unwrap();
        assert_eq!((c2.ptype, c2.k()), (ParabolicType::TypeII, 1));
        let d3 = make_datum(LieType::D, 3, vec![vec![1, 2]], Some(vec![3]), signs(&[(1, 1), (2, 1)]));
        assert!(matches!(d3, Err(Error::InvalidDatum(_))));
    }

    #[test]
    fn make_datum_rejections() {
        assert!(make_datum(LieType::B, 2, vec![vec![1, 2]], None, signs(&[(1, 1)])).is_err());
        assert!(make_datum(LieType::B, 2, vec![vec![1, 2], vec![2]], None, signs(&[(1, 1), (2, 1)])).is_err());
        assert!(make_datum(LieType::B, 3, vec![vec![1, 2]], None, signs(&[(1, 1), (2, 1)])).is_err());
        assert!(make_datum(LieType::C, 2, vec![vec![1]], Some(vec![2]), signs(&[(1, 1), (2, 1)])).is_err());
        assert!(make_datum(LieType::Gl, 2, vec![vec![1]], Some(vec![2]), signs(&[])).is_err());
        assert!(make_datum(LieType::E6, 6, vec![(1..=6).collect()], None, signs(&[])).is_err());
    }

    #[test]
    fn reductive_part_examples() {
        let b2 = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1, 2]], None).unwrap();
        let s = reductive_part(&b2);
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].kind, ComponentKind::Gl);
        assert_eq!(s.roots, vec![eps(2, &[(1, -1), (2, 1)]), eps(2, &[(1, 1), (2, -1)])]);

        let c2 = ParabolicDatum::with_positive_signs(LieType::C, 2, vec![vec![1]], Some(vec![2])).unwrap();
        let s = reductive_part(&c2);
        let kinds: Vec<_> = s.components.iter().map(|c| (c.kind, c.rank())).collect();
        assert_eq!(kinds, vec![(ComponentKind::Gl, 1), (ComponentKind::C, 1)]);
        assert_eq!(s.roots, vec![eps(2, &[(2, -2)]), eps(2, &[(2, 2)])]);

        let gl3 = ParabolicDatum::with_positive_signs(LieType::Gl, 3, vec![vec![1, 2], vec![3]], None).unwrap();
        let kinds: Vec<_> = reductive_part(&gl3).components.iter().map(|c| (c.kind, c.rank())).collect();
        assert_eq!(kinds, vec![(ComponentKind::Gl, 2), (ComponentKind::Gl, 1)]);
    }

    #[test]
    fn t_root_examples() {
        let b2 = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1, 2]], None).unwrap();
        let r = t_root_system(&b2);
        let got: Vec<(Vector, usize)> = r.troots.iter().map(|t| (t.delta.clone(), t.dim)).collect();
        assert_eq!(
            got,
            vec![
                (delta(1, &[(0, -2)]), 1),
                (delta(1, &[(0, -1)]), 2),
                (delta(1, &[(0, 1)]), 2),
                (delta(1, &[(0, 2)]), 1),
            ]
        );
        let minus = &r.troots[r.index_of(&delta(1, &[(0, -1)])).unwrap()];
        assert_eq!(minus.label.factors, vec![(1, FactorKind::NatMinus)]);
        let plus2 = &r.troots[r.index_of(&delta(1, &[(0, 2)])).unwrap()];
        assert_eq!(plus2.label.factors, vec![(1, FactorKind::Lambda2Plus)]);

        let gl3 = ParabolicDatum::with_positive_signs(LieType::Gl, 3, vec![vec![1, 2], vec![3]], None).unwrap();
        let r = t_root_system(&gl3);
        assert_eq!(r.len(), 2);
        assert!(r.troots.iter().all(|t| t.dim == 2));

        let c2 = ParabolicDatum::with_positive_signs(LieType::C, 2, vec![vec![1]], Some(vec![2])).unwrap();
        let r = t_root_system(&c2);
        let m = &r.troots[r.index_of(&delta(1, &[(0, -1)])).unwrap()];
        assert_eq!(m.dim, 2);
        assert_eq!(m.label.factors, vec![(1, FactorKind::NatMinus), (0, FactorKind::V0)]);
        assert_eq!(r.troots[r.index_of(&delta(1, &[(0, 2)])).unwrap()].dim, 1);
    }

    #[test]
    fn c_type_one_always_has_doubles() {
        let c2 = ParabolicDatum::with_positive_signs(LieType::C, 2, vec![vec![1], vec![2]], None).unwrap();
        let r = t_root_system(&c2);
        assert!(r.index_of(&delta(2, &[(0, 2)])).is_some());
        assert!(r.index_of(&delta(2, &[(0, 1)])).is_none());
        let d3 = ParabolicDatum::with_positive_signs(LieType::D, 3, vec![vec![1], vec![2, 3]], None).unwrap();
        let r = t_root_system(&d3);
        assert!(r.index_of(&delta(2, &[(0, 2)])).is_none());
        assert!(r.index_of(&delta(2, &[(1, 2)])).is_some());
        assert!(r.index_of(&delta(2, &[(1, 1)])).is_none());
    }

    #[test]
    fn projection_examples() {
        let b2 = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1, 2]], None).unwrap();
        assert!(project_root(&b2, &eps(2, &[(1, 1), (2, -1)])).unwrap().is_zero());
        assert_eq!(project_root(&b2, &eps(2, &[(1, -1)])).unwrap(), delta(1, &[(0, -1)]));
        assert!(matches!(project_root(&b2, &eps(2, &[(1, 2)])), Err(Error::NotARoot(_))));
        let gl3 = ParabolicDatum::with_positive_signs(LieType::Gl, 3, vec![vec![1, 2], vec![3]], None).unwrap();
        assert_eq!(project_root(&gl3, &eps(3, &[(1, 1), (3, -1)])).unwrap(), delta(2, &[(0, 1), (1, -1)]));
    }

    #[test]
    fn parabolic_roots_examples() {
        let gl2 = ParabolicDatum::with_positive_signs(LieType::Gl, 2, vec![vec![1], vec![2]], None).unwrap();
        assert_eq!(parabolic_roots(&gl2).into_iter().collect::<Vec<_>>(), vec![eps(2, &[(1, 1), (2, -1)])]);
        let b2 = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1], vec![2]], None).unwrap();
        let expected: BTreeSet<Vector> =
            [eps(2, &[(1, 1), (2, -1)]), eps(2, &[(1, 1), (2, 1)]), eps(2, &[(1, 1)]), eps(2, &[(2, 1)])]
                .into_iter()
                .collect();
        assert_eq!(parabolic_roots(&b2), expected);
        let d4 = ParabolicDatum::with_positive_signs(LieType::D, 4, vec![vec![1, 2]], Some(vec![3, 4])).unwrap();
        let p = parabolic_roots(&d4);
        for a in [1, -1] {
            for b in [1, -1] {
                assert!(p.contains(&eps(4, &[(3, a), (4, b)])));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let gl = ParabolicDatum::with_positive_signs(LieType::Gl, 3, vec![vec![1, 2], vec![3]], None).unwrap();
        assert_eq!(enumerate_parabolics(&gl, DEFAULT_ENUMERATION_CAP).unwrap().len(), 2);
        let b1 = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1, 2]], None).unwrap();
        assert_eq!(enumerate_parabolics(&b1, DEFAULT_ENUMERATION_CAP).unwrap().len(), 2);
        let b2 = ParabolicDatum::with_positive_signs(LieType::B, 3, vec![vec![1, 2], vec![3]], None).unwrap();
        assert_eq!(enumerate_parabolics(&b2, DEFAULT_ENUMERATION_CAP).unwrap().len(), 8);
        let big =
            ParabolicDatum::with_positive_signs(LieType::Gl, 9, (1..=9).map(|i| vec![i]).collect(), None).unwrap();
        assert!(matches!(enumerate_parabolics(&big, DEFAULT_ENUMERATION_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn d_type_one_singleton_duplicates_identified() {
        // Two singleton parts: 2^2 * 2! = 8 signed orders, but the sign of the last singleton
        // does not matter, leaving 4 distinct parabolics.
        let d = ParabolicDatum::with_positive_signs(LieType::D, 2, vec![vec![1], vec![2]], None).unwrap();
        let ps = enumerate_parabolics(&d, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(ps.len(), 4);
        let roots: BTreeSet<BTreeSet<Vector>> = ps.iter().map(parabolic_roots).collect();
        assert_eq!(roots.len(), 4);
    }
}
