//! Invariants of symmetric powers through characters.
//!
//! A [`ReductiveStructure`] is the semisimple part of s (simple roots in a declared ambient
//! basis) together with center functionals. Trivial multiplicities are read off by Weyl
//! alternation, `n_0 = Σ_w sign(w) · m(ρ − wρ)`, after restricting to center weight zero.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::classical::{reductive_part, root_spaces, t_root_system, ParabolicDatum};
use crate::error::{Error, Result};
use crate::rational::{int, BasisTag, Rational, Vector};
use crate::roots::{half_sum, root_system_from_simple, weyl_dimension_for, Form, LieType};
use crate::weyl::{rho_orbit, DEFAULT_WEYL_CAP};

pub type Weight = SmallVec<[i32; 8]>;

pub const DEFAULT_MULTISET_CAP: u128 = 10_000_000;

/// Multiset cap, overridable through `KOSTANT_MAX_MULTISETS`.
pub fn multiset_cap() -> u128 {
    std::env::var("KOSTANT_MAX_MULTISETS").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MULTISET_CAP)
}

pub fn weight_of(v: &Vector) -> Result<Weight> {
    v.coords
        .iter()
        .map(|c| {
            c.is_integer()
                .then(|| c.numer().to_i32())
                .flatten()
                .ok_or_else(|| Error::Unsupported(format!("non-integral weight {v}")))
        })
        .collect()
}

fn weight_to_rationals(w: &Weight) -> Vec<Rational> {
    w.iter().map(|&x| int(x as i128)).collect()
}

fn add(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Finite weight multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub basis: BasisTag,
    pub dim_ambient: usize,
    pub weights: HashMap<Weight, u128>,
}

impl Character {
    pub fn new(basis: BasisTag, dim_ambient: usize) -> Self {
        Character { basis, dim_ambient, weights: HashMap::new() }
    }

    pub fn trivial(basis: BasisTag, dim_ambient: usize) -> Self {
        let mut c = Character::new(basis, dim_ambient);
        c.weights.insert(Weight::from_elem(0, dim_ambient), 1);
        c
    }

    pub fn from_weights<'a>(basis: BasisTag, dim_ambient: usize, ws: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut c = Character::new(basis, dim_ambient);
        for w in ws {
            assert_eq!(w.len(), dim_ambient, "weight length mismatch");
            *c.weights.entry(w.clone()).or_default() += 1;
        }
        c
    }

    pub fn dim(&self) -> u128 {
        self.weights.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sorted(&self) -> Vec<(Weight, u128)> {
        let mut v: Vec<_> = self.weights.iter().map(|(w, m)| (w.clone(), *m)).collect();
        v.sort();
        v
    }

    pub fn product(&self, other: &Character) -> Character {
        assert_eq!(self.basis, other.basis, "mixing characters written in different bases");
        let mut out = Character::new(self.basis, self.dim_ambient);
        for (a, ma) in &self.weights {
            for (b, mb) in &other.weights {
                *out.weights.entry(add(a, b)).or_default() += ma * mb;
            }
        }
        out
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of degree-k multisets on d letters, `C(d + k − 1, k)`.
pub fn multiset_count(d: u128, k: u128) -> u128 {
    if d == 0 {
        return u128::from(k == 0);
    }
    binomial(d + k - 1, k)
}

/// Characters of `Sym^0 … Sym^max` of `ch`, refusing degrees above the multiset cap.
pub fn sym_power_characters(ch: &Character, max: usize, cap: u128) -> Result<Vec<Character>> {
    let d = ch.dim();
    let count = multiset_count(d, max as u128);
    if count > cap {
        return Err(Error::CapExceeded { what: format!("degree-{max} multisets on {d} weights"), count, cap });
    }
    let mut polys: Vec<HashMap<Weight, u128>> = vec![HashMap::new(); max + 1];
    polys[0].insert(Weight::from_elem(0, ch.dim_ambient), 1);
    for (w, &m) in ch.sorted().iter().map(|(w, m)| (w, m)) {
        for _ in 0..m {
            for j in 1..=max {
                let shifted: Vec<(Weight, u128)> = polys[j - 1].iter().map(|(u, c)| (add(u, w), *c)).collect();
                for (u, c) in shifted {
                    *polys[j].entry(u).or_default() += c;
                }
            }
        }
    }
    let out: Vec<Character> =
        polys.into_iter().map(|weights| Character { basis: ch.basis, dim_ambient: ch.dim_ambient, weights }).collect();
    for (j, c) in out.iter().enumerate() {
        if c.dim() != multiset_count(d, j as u128) {
            return Err(Error::Internal(format!("Sym^{j} has dimension {} instead of C(d+k-1,k)", c.dim())));
        }
    }
    Ok(out)
}

pub fn sym_power_character(ch: &Character, k: usize, cap: u128) -> Result<Character> {
    Ok(sym_power_characters(ch, k, cap)?.pop().expect("degree list is nonempty"))
}

/// Semisimple part of s plus center functionals, over a declared ambient basis.
#[derive(Debug, Clone)]
pub struct ReductiveStructure {
    pub basis: BasisTag,
    pub form: Form,
    pub simple_roots: Vec<Vector>,
    pub positive_roots: Vec<Vector>,
    /// Weight w has center weight zero iff every functional pairs to zero with w.
    pub center: Vec<Vec<Rational>>,
    pub rho: Vector,
    /// (ρ − wρ, sign w) for w ∈ W_s.
    shifts: Vec<(Weight, i8)>,
    coroots: Vec<Vec<Rational>>,
    simple_weights: Vec<Weight>,
    positive_weights: Vec<(Weight, usize)>,
}

impl ReductiveStructure {
    pub fn new(basis: BasisTag, form: Form, simple_roots: Vec<Vector>, center: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = form.dim();
        let positive_roots = if simple_roots.is_empty() {
            Vec::new()
        } else {
            root_system_from_simple(LieType::A, form.clone(), simple_roots.clone(), basis).positive_roots
        };
        let rho = half_sum(&positive_roots, basis, dim);
        let orbit = rho_orbit(&form, &simple_roots, &rho, DEFAULT_WEYL_CAP)?;
        let shifts = orbit
            .into_iter()
            .map(|(w_rho, sign)| {
                let v = &rho - &Vector::new(w_rho, basis);
                Ok((weight_of(&v)?, sign))
            })
            .collect::<Result<Vec<_>>>()?;
        let coroots = simple_roots
            .iter()
            .map(|a| {
                let norm = form.eval(&a.coords, &a.coords);
                (0..dim)
                    .map(|i| {
                        let e = Vector::unit(dim, i, basis);
                        int(2) * form.eval(&e.coords, &a.coords) / norm
                    })
                    .collect()
            })
            .collect();
        let simple_weights = simple_roots.iter().map(weight_of).collect::<Result<Vec<_>>>()?;
        let positive_weights = positive_roots
            .iter()
            .map(|r| {
                let h: Rational = crate::roots::simple_coords(&form, &simple_roots, r).iter().sum();
                Ok((weight_of(r)?, h.to_integer() as usize))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReductiveStructure {
            basis,
            form,
            simple_roots,
            positive_roots,
            center,
            rho,
            shifts,
            coroots,
            simple_weights,
            positive_weights,
        })
    }

    /// s = s_(P,σ) acting on ε-coordinates; the center functionals are `Σ_{j ∈ I_i} σ(j) ε_j^*`.
    pub fn classical(datum: &ParabolicDatum) -> Result<Self> {
        let rp = reductive_part(datum);
        let n = datum.n;
        let center = datum
            .partition
            .parts
            .iter()
            .map(|part| {
                let mut f = vec![Rational::zero(); n];
                for &j in part {
                    f[j - 1] = int(datum.sign(j) as i128);
                }
                f
            })
            .collect();
        ReductiveStructure::new(BasisTag::Epsilon, Form::euclidean(n), rp.simple_roots(), center)
    }

    pub fn dim_ambient(&self) -> usize {
        self.form.dim()
    }

    pub fn weyl_order(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_center_zero(&self, w: &Weight) -> bool {
        self.center.iter().all(|f| f.iter().zip(w).map(|(a, &b)| a * int(b as i128)).sum::<Rational>().is_zero())
    }

    /// ⟨w, α_i∨⟩ for the i-th simple root.
    pub fn coroot_pairing(&self, w: &Weight, i: usize) -> Rational {
        self.coroots[i].iter().zip(w).map(|(a, &b)| a * int(b as i128)).sum()
    }

    fn ip(&self, a: &Weight, b: &Weight) -> Rational {
        self.form.eval(&weight_to_rationals(a), &weight_to_rationals(b))
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.simple_roots.len()).all(|i| {
            let c = self.coroot_pairing(w, i);
            c.is_integer() && !c.is_negative()
        })
    }

    pub fn weyl_dimension(&self, w: &Weight) -> Result<u128> {
        let v = Vector::new(weight_to_rationals(w), self.basis);
        weyl_dimension_for(&self.form, &self.simple_roots, &self.positive_roots, &v)
    }

    fn reflect(&self, w: &Weight, i: usize) -> Option<Weight> {
        let c = self.coroot_pairing(w, i);
        if !c.is_integer() {
            return None;
        }
        let c = c.to_integer() as i32;
        Some(w.iter().zip(&self.simple_weights[i]).map(|(x, a)| x - c * a).collect())
    }
}

/// Whether `ch` is stable under every simple reflection of W_s.
pub fn is_weyl_invariant(ch: &Character, st: &ReductiveStructure) -> bool {
    (0..st.simple_roots.len())
        .all(|i| ch.weights.iter().all(|(w, m)| st.reflect(w, i).is_some_and(|r| ch.weights.get(&r) == Some(m))))
}

fn check_basis(ch: &Character, st: &ReductiveStructure) -> Result<()> {
    if ch.basis != st.basis || ch.dim_ambient != st.dim_ambient() {
        return Err(Error::Unsupported(format!(
            "character over {:?}^{} against a structure over {:?}^{}",
            ch.basis,
            ch.dim_ambient,
            st.basis,
            st.dim_ambient()
        )));
    }
    Ok(())
}

fn alternate(st: &ReductiveStructure, coeff: impl Fn(&Weight) -> u128) -> Result<u128> {
    let mut total: i128 = 0;
    for (shift, sign) in &st.shifts {
        total += *sign as i128 * coeff(shift) as i128;
    }
    if total < 0 {
        return Err(Error::NotAModuleCharacter(format!("alternating sum is {total}")));
    }
    Ok(total as u128)
}

/// Multiplicity of the trivial s-module in a character.
pub fn trivial_multiplicity(ch: &Character, st: &ReductiveStructure) -> Result<u128> {
    check_basis(ch, st)?;
    if !is_weyl_invariant(ch, st) {
        return Err(Error::NotAModuleCharacter("character is not W_s-invariant".into()));
    }
    let filtered: HashMap<&Weight, u128> =
        ch.weights.iter().filter(|(w, _)| st.is_center_zero(w)).map(|(w, m)| (w, *m)).collect();
    alternate(st, |w| filtered.get(w).copied().unwrap_or(0))
}

/// Trivial multiplicity of `⊗ pieces` without forming the full product.
fn trivial_in_product(pieces: &[&Character], st: &ReductiveStructure) -> Result<u128> {
    let dim = st.dim_ambient();
    if pieces.is_empty() {
        return Ok(1);
    }
    let mut order: Vec<&Character> = pieces.to_vec();
    order.sort_by_key(|c| c.weights.len());
    let last = order.pop().expect("nonempty");
    let mut partial = Character::trivial(st.basis, dim);
    for c in order {
        partial = partial.product(c);
    }
    alternate(st, |target| {
        partial.weights.iter().map(|(mu, m)| m * last.weights.get(&sub(target, mu)).copied().unwrap_or(0)).sum()
    })
}

/// s-module g = ⊕ g^ν graded by a torus t, with the h-weights of each t-root space.
#[derive(Debug, Clone)]
pub struct GradedModule {
    pub structure: ReductiveStructure,
    /// t-roots, sorted.
    pub troots: Vec<Vector>,
    pub weights: Vec<Vec<Weight>>,
}

impl GradedModule {
    pub fn from_spaces(structure: ReductiveStructure, spaces: BTreeMap<Vector, Vec<Vector>>) -> Result<Self> {
        let mut troots = Vec::new();
        let mut weights = Vec::new();
        for (nu, alphas) in spaces {
            troots.push(nu);
            weights.push(alphas.iter().map(weight_of).collect::<Result<Vec<_>>>()?);
        }
        Ok(GradedModule { structure, troots, weights })
    }

    pub fn classical(datum: &ParabolicDatum) -> Result<Self> {
        let gm = GradedModule::from_spaces(ReductiveStructure::classical(datum)?, root_spaces(datum))?;
        debug_assert_eq!(gm.troots, t_root_system(datum).vectors());
        Ok(gm)
    }

    pub fn index_of(&self, nu: &Vector) -> Result<usize> {
        self.troots.binary_search(nu).map_err(|_| Error::NotATRoot(nu.to_string()))
    }

    pub fn indices(&self, s: &[Vector]) -> Result<Vec<usize>> {
        let mut idx = s.iter().map(|nu| self.index_of(nu)).collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    pub fn space_character(&self, i: usize) -> Character {
        Character::from_weights(self.structure.basis, self.structure.dim_ambient(), &self.weights[i])
    }

    pub fn int_troots(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter().map(|&i| self.troots[i].coords.iter().map(|c| c.to_integer() as i64).collect()).collect()
    }
}

/// Weights of `M = ⊕_{ν∈S} g^ν`.
pub fn module_character(gm: &GradedModule, s: &[Vector]) -> Result<Character> {
    let idx = gm.indices(s)?;
    let mut ch = Character::new(gm.structure.basis, gm.structure.dim_ambient());
    for i in idx {
        for w in &gm.weights[i] {
            *ch.weights.entry(w.clone()).or_default() += 1;
        }
    }
    Ok(ch)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub k: usize,
    pub dim: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub degrees: Vec<DegreeEntry>,
}

impl DecompositionReport {
    pub fn all_zero_above_zero(&self) -> bool {
        self.degrees.iter().all(|e| e.k == 0 || e.dim == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.degrees.iter().find(|e| e.k > 0 && e.dim > 0).map(|e| e.k)
    }
}

/// All `a ∈ N^m` with `Σ a = k` and `Σ a_i v_i = 0`, in lexicographic order of `a` (descending
/// in the first coordinate). The callback may stop the search by returning `false`.
pub fn zero_sums_of_degree(vs: &[Vec<i64>], k: usize, mut f: impl FnMut(&[u32]) -> bool) {
    let m = vs.len();
    if m == 0 {
        if k == 0 {
            f(&[]);
        }
        return;
    }
    let dim = vs[0].len();
    let reach: Vec<i64> =
        (0..m).map(|i| vs[i..].iter().flat_map(|v| v.iter().map(|x| x.abs())).max().unwrap_or(0)).collect();
    let mut a = vec![0u32; m];
    let mut sum = vec![0i64; dim];
    fn rec(
        i: usize,
        left: usize,
        vs: &[Vec<i64>],
        reach: &[i64],
        a: &mut [u32],
        sum: &mut [i64],
        f: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let m = vs.len();
        let bound = reach[i] * left as i64;
        if sum.iter().any(|x| x.abs() > bound) {
            return true;
        }
        if i == m - 1 {
            let ok = sum.iter().zip(&vs[i]).all(|(s, v)| s + v * left as i64 == 0);
            if ok {
                a[i] = left as u32;
                let go = f(a);
                a[i] = 0;
                return go;
            }
            return true;
        }
        for c in (0..=left).rev() {
            for (s, v) in sum.iter_mut().zip(&vs[i]) {
                *s += v * c as i64;
            }
            a[i] = c as u32;
            let go = rec(i + 1, left - c, vs, reach, a, sum, f);
            for (s, v) in sum.iter_mut().zip(&vs[i]) {
                *s -= v * c as i64;
            }
            a[i] = 0;
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, k, vs, &reach, &mut a, &mut sum, &mut f);
}

/// Smallest degree `1 ≤ k ≤ max` with a zero sum of k elements of `vs`, with a witness,
/// found by breadth-first search over partial sums.
pub fn t_level_zero_sum(vs: &[Vec<i64>], max: usize) -> Option<(usize, Vec<u32>)> {
    if vs.is_empty() {
        return None;
    }
    let dim = vs[0].len();
    let zero = vec![0i64; dim];
    // levels[d]: sum -> (previous sum, index added)
    type Level = HashMap<Vec<i64>, (Vec<i64>, usize)>;
    let mut levels: Vec<Level> = vec![HashMap::from([(zero.clone(), (zero.clone(), usize::MAX))])];
    for d in 1..=max {
        let mut next = Level::new();
        let mut keys: Vec<&Vec<i64>> = levels[d - 1].keys().collect();
        keys.sort();
        for p in keys {
            for (i, v) in vs.iter().enumerate() {
                let s: Vec<i64> = p.iter().zip(v).map(|(a, b)| a + b).collect();
                next.entry(s).or_insert_with(|| (p.clone(), i));
            }
        }
        let hit = next.contains_key(&zero);
        levels.push(next);
        if hit {
            let mut a = vec![0u32; vs.len()];
            let mut cur = zero.clone();
            for lvl in (1..=d).rev() {
                let (prev, i) = levels[lvl][&cur].clone();
                a[i] += 1;
                cur = prev;
            }
            return Some((d, a));
        }
    }
    None
}

/// Per-degree invariant tables by symmetric-power pieces: for each zero-sum `a`, the
/// s-invariants of `⊗_ν Sym^{a_ν} g^ν`.
pub struct GradedInvariants<'a> {
    gm: &'a GradedModule,
    idx: Vec<usize>,
    vs: Vec<Vec<i64>>,
    cap: u128,
    sym: HashMap<(usize, usize), Character>,
}

impl<'a> GradedInvariants<'a> {
    pub fn new(gm: &'a GradedModule, s: &[Vector], cap: u128) -> Result<Self> {
        let idx = gm.indices(s)?;
        let vs = gm.int_troots(&idx);
        Ok(GradedInvariants { gm, idx, vs, cap, sym: HashMap::new() })
    }

    fn sym(&mut self, pos: usize, a: usize) -> Result<&Character> {
        let key = (pos, a);
        if !self.sym.contains_key(&key) {
            let base = self.gm.space_character(self.idx[pos]);
            let ch = sym_power_character(&base, a, self.cap)?;
            self.sym.insert(key, ch);
        }
        Ok(&self.sym[&key])
    }

    /// s-invariants of `⊗ Sym^{a_i} g^{ν_i}`.
    pub fn piece(&mut self, a: &[u32]) -> Result<u128> {
        for (pos, &c) in a.iter().enumerate() {
            if c > 0 {
                self.sym(pos, c as usize)?;
            }
        }
        let pieces: Vec<&Character> =
            a.iter().enumerate().filter(|(_, &c)| c > 0).map(|(pos, &c)| &self.sym[&(pos, c as usize)]).collect();
        trivial_in_product(&pieces, &self.gm.structure)
    }

    pub fn degree(&mut self, k: usize) -> Result<u128> {
        if k == 0 {
            return Ok(1);
        }
        let mut sums = Vec::new();
        zero_sums_of_degree(&self.vs, k, |a| {
            sums.push(a.to_vec());
            true
        });
        let mut total = 0;
        for a in sums {
            total += self.piece(&a)?;
        }
        Ok(total)
    }

    /// First zero-sum vector (by degree, then enumeration order) carrying an invariant.
    pub fn first_invariant(&mut self, max: usize) -> Result<Option<(usize, Vec<u32>)>> {
        for k in 1..=max {
            let mut sums = Vec::new();
            zero_sums_of_degree(&self.vs, k, |a| {
                sums.push(a.to_vec());
                true
            });
            for a in sums {
                if self.piece(&a)? > 0 {
                    return Ok(Some((k, a)));
                }
            }
        }
        Ok(None)
    }

    /// Positions in `gm.troots` of the chosen S.
    pub fn troot_indices(&self) -> &[usize] {
        &self.idx
    }
}

/// `dim (Sym^k M)^s` for `k = 0..=max`, through the graded pieces.
pub fn invariants_up_to_degree(gm: &GradedModule, s: &[Vector], max: usize, cap: u128) -> Result<DecompositionReport> {
    let mut g = GradedInvariants::new(gm, s, cap)?;
    let degrees = (0..=max).map(|k| Ok(DegreeEntry { k, dim: g.degree(k)? })).collect::<Result<Vec<_>>>()?;
    Ok(DecompositionReport { degrees })
}

/// Same table, by expanding the full character of `Sym^k M` and alternating.
pub fn invariants_up_to_degree_direct(
    gm: &GradedModule,
    s: &[Vector],
    max: usize,
    cap: u128,
) -> Result<DecompositionReport> {
    let ch = module_character(gm, s)?;
    let powers = sym_power_characters(&ch, max, cap)?;
    let degrees = powers
        .iter()
        .enumerate()
        .map(|(k, p)| Ok(DegreeEntry { k, dim: trivial_multiplicity(p, &gm.structure)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionReport { degrees })
}

/// Character of the irreducible module with highest weight μ, by Freudenthal's recursion.
pub fn irreducible_character(st: &ReductiveStructure, mu: &Weight) -> Result<Character> {
    if !st.is_dominant(mu) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    let rho2: Weight = {
        let r = st.rho.scale(int(2));
        weight_of(&r)?
    };
    // |λ + ρ|² scaled by 4 to stay integral in weight coordinates: |2λ + 2ρ|².
    let norm = |l: &Weight| -> Rational {
        let v: Weight = l.iter().zip(&rho2).map(|(a, b)| 2 * a + b).collect();
        st.ip(&v, &v)
    };
    let top = norm(mu);
    let mut mult: HashMap<Weight, u128> = HashMap::from([(mu.clone(), 1)]);
    let mut level: Vec<Weight> = vec![mu.clone()];
    let mut depth = 0usize;
    while !level.is_empty() {
        depth += 1;
        let mut candidates: Vec<Weight> =
            level.iter().flat_map(|l| st.simple_weights.iter().map(move |a| sub(l, a))).collect();
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for lam in candidates {
            let mut num = Rational::zero();
            for (alpha, h) in &st.positive_weights {
                let mut j = 1;
                while j * h <= depth {
                    let up: Weight = lam.iter().zip(alpha).map(|(x, a)| x + j as i32 * a).collect();
                    if let Some(&m) = mult.get(&up) {
                        num += int(2) * st.ip(&up, alpha) * int(m as i128);
                    }
                    j += 1;
                }
            }
            let denom = (top - norm(&lam)) / int(4);
            if denom.is_zero() {
                if !num.is_zero() {
                    return Err(Error::Internal("Freudenthal denominator vanished".into()));
                }
                continue;
            }
            let m = num / denom;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Internal(format!("Freudenthal produced multiplicity {m}")));
            }
            if m.is_positive() {
                mult.insert(lam.clone(), m.to_integer() as u128);
                next.push(lam);
            }
        }
        level = next;
    }
    Ok(Character { basis: st.basis, dim_ambient: st.dim_ambient(), weights: mult })
}

/// Decomposition into irreducibles by repeatedly removing the character of a highest weight.
pub fn strip_down_decompose(ch: &Character, st: &ReductiveStructure) -> Result<Vec<(Weight, u128)>> {
    check_basis(ch, st)?;
    let rho2 = st.rho.scale(int(2));
    let height = |w: &Weight| st.form.eval(&weight_to_rationals(w), &rho2.coords);
    let mut rest: HashMap<Weight, i128> = ch.weights.iter().map(|(w, m)| (w.clone(), *m as i128)).collect();
    let mut out: BTreeMap<Weight, u128> = BTreeMap::new();
    loop {
        rest.retain(|_, m| *m != 0);
        if let Some((w, m)) = rest.iter().find(|(_, m)| **m < 0) {
            return Err(Error::NotAModuleCharacter(format!("weight {w:?} has multiplicity {m}")));
        }
        let Some(mu) = rest.keys().max_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b))).cloned() else {
            break;
        };
        if !st.is_dominant(&mu) {
            return Err(Error::NotAModuleCharacter(format!("highest remaining weight {mu:?} is not dominant")));
        }
        let m = rest[&mu];
        let irr = irreducible_character(st, &mu)?;
        for (w, c) in &irr.weights {
            *rest.entry(w.clone()).or_default() -= m * *c as i128;
        }
        *out.entry(mu).or_default() += m as u128;
    }
    Ok(out.into_iter().collect())
}

/// Number of trivial summands in a strip-down decomposition.
pub fn trivial_count(decomposition: &[(Weight, u128)]) -> u128 {
    decomposition.iter().filter(|(w, _)| w.iter().all(|&x| x == 0)).map(|(_, m)| *m).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::delta;
    use smallvec::smallvec;

    fn gl2() -> ReductiveStructure {
        let d = ParabolicDatum::with_positive_signs(crate::roots::LieType::Gl, 2, vec![vec![1, 2]], None).unwrap();
        ReductiveStructure::classical(&d).unwrap()
    }

    fn ch(ws: &[Weight]) -> Character {
        Character::from_weights(BasisTag::Epsilon, ws[0].len(), ws)
    }

    #[test]
    fn sym_powers() {
        let c = ch(&[smallvec![1, 0], smallvec![-1, 0]]);
        assert_eq!(sym_power_character(&c, 1, DEFAULT_MULTISET_CAP).unwrap(), c);
        let s2 = sym_power_character(&c, 2, DEFAULT_MULTISET_CAP).unwrap();
        assert_eq!(s2.sorted(), vec![(smallvec![-2, 0], 1), (smallvec![0, 0], 1), (smallvec![2, 0], 1)]);
        assert!(matches!(sym_power_character(&c, 50, 10), Err(Error::CapExceeded { count: 51, .. })));
    }

    #[test]
    fn trivial_multiplicities() {
        let st = gl2();
        assert_eq!(trivial_multiplicity(&Character::trivial(BasisTag::Epsilon, 2), &st).unwrap(), 1);
        let vv = ch(&[smallvec![0, 0], smallvec![0, 0], smallvec![1, -1], smallvec![-1, 1]]);
        assert_eq!(trivial_multiplicity(&vv, &st).unwrap(), 1);
        let bad = ch(&[smallvec![1, -1]]);
        assert!(matches!(trivial_multiplicity(&bad, &st), Err(Error::NotAModuleCharacter(_))));
    }

    #[test]
    fn strip_down_examples() {
        let st = gl2();
        let vv = ch(&[smallvec![0, 0], smallvec![0, 0], smallvec![1, -1], smallvec![-1, 1]]);
        let dec = strip_down_decompose(&vv, &st).unwrap();
        assert_eq!(dec, vec![(smallvec![0, 0], 1), (smallvec![1, -1], 1)]);
        assert_eq!(trivial_count(&dec), 1);
        // C_1 acting on ε_2: Sym² of the natural module is the adjoint.
        let d = ParabolicDatum::with_positive_signs(crate::roots::LieType::C, 2, vec![vec![1]], Some(vec![2])).unwrap();
        let st = ReductiveStructure::classical(&d).unwrap();
        let nat = ch(&[smallvec![0, 1], smallvec![0, -1]]);
        let s2 = sym_power_character(&nat, 2, DEFAULT_MULTISET_CAP).unwrap();
        assert_eq!(strip_down_decompose(&s2, &st).unwrap(), vec![(smallvec![0, 2], 1)]);
    }

    #[test]
    fn b2_counterexample_has_no_invariants() {
        let d = ParabolicDatum::with_positive_signs(crate::roots::LieType::B, 2, vec![vec![1, 2]], None).unwrap();
        let gm = GradedModule::classical(&d).unwrap();
        let s = [delta(1, &[(0, -1)]), delta(1, &[(0, 2)])];
        let m = module_character(&gm, &s).unwrap();
        assert_eq!(m.sorted(), vec![(smallvec![-1, 0], 1), (smallvec![0, -1], 1), (smallvec![1, 1], 1)]);
        let r = invariants_up_to_degree(&gm, &s, 12, DEFAULT_MULTISET_CAP).unwrap();
        assert_eq!(r.degrees[0].dim, 1);
        assert!(r.all_zero_above_zero());
        assert_eq!(r, invariants_up_to_degree_direct(&gm, &s, 12, DEFAULT_MULTISET_CAP).unwrap());
    }

    #[test]
    fn gl2_pair_has_quadratic_invariant() {
        let d =
            ParabolicDatum::with_positive_signs(crate::roots::LieType::Gl, 2, vec![vec![1], vec![2]], None).unwrap();
        let gm = GradedModule::classical(&d).unwrap();
        let s = [delta(2, &[(0, 1), (1, -1)]), delta(2, &[(0, -1), (1, 1)])];
        let r = invariants_up_to_degree(&gm, &s, 2, DEFAULT_MULTISET_CAP).unwrap();
        assert_eq!(r.degrees.iter().map(|e| e.dim).collect::<Vec<_>>(), vec![1, 0, 1]);
    }

    #[test]
    fn d4_type_two_degree_six() {
        let d = ParabolicDatum::with_positive_signs(crate::roots::LieType::D, 4, vec![vec![1, 2]], Some(vec![3, 4]))
            .unwrap();
        let gm = GradedModule::classical(&d).unwrap();
        let s = [delta(1, &[(0, 1)]), delta(1, &[(0, -2)])];
        let r = invariants_up_to_degree(&gm, &s, 6, DEFAULT_MULTISET_CAP).unwrap();
        assert!(r.degrees[6].dim >= 1, "{r:?}");
        assert!(r.degrees[1..6].iter().all(|e| e.dim == 0), "{r:?}");
    }

    #[test]
    fn zero_sum_search() {
        let vs = vec![vec![-1], vec![2]];
        assert_eq!(t_level_zero_sum(&vs, 12), Some((3, vec![2, 1])));
        assert_eq!(t_level_zero_sum(&[vec![1, -1]], 12), None);
        let mut found = Vec::new();
        zero_sums_of_degree(&vs, 6, |a| {
            found.push(a.to_vec());
            true
        });
        assert_eq!(found, vec![vec![4, 2]]);
    }
}
