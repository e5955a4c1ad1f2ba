//! Desk-scale sweeps over parabolic data and subsets of their t-root systems.
//!
//! Subsets are bitmasks over the sorted t-roots. Each datum carries a symmetry group
//! (permutations of equal-size parts, sign flips of parts; global negation for gl_n) under
//! which every predicate here is invariant, so one representative per orbit is decided.
//! Zero-sum and invariant existence are monotone in S, which drives two caches: known
//! witness supports (any superset qualifies) and sets certified empty (any subset qualifies).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{make_datum, reductive_part, root_spaces, t_root_system, ParabolicDatum};
use crate::error::{Error, Result};
use crate::exceptional::{g2_levis, G2Levi};
use crate::invariants::{
    module_character, strip_down_decompose, sym_power_character, t_level_zero_sum, trivial_count, trivial_multiplicity,
    GradedInvariants, GradedModule,
};
use crate::positivity::{
    build_relation_for, check_positive_system, extend_to_order, is_phi_cut, is_saturated, zero_in_positive_span,
    ConeOutcome, OrderOutcome,
};
use crate::rational::Vector;
use crate::report::{format_troot, generic_cut};
use crate::roots::LieType;

/// Set partitions of `elems` with parts sorted and ordered by their least element.
pub fn set_partitions(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = elems.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        let mut alone = vec![vec![first]];
        alone.extend(p.iter().cloned());
        out.push(alone);
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
    }
    for p in out.iter_mut() {
        p.sort();
    }
    out.sort();
    out
}

fn sign_choices(parts: &[Vec<usize>]) -> Vec<BTreeMap<usize, i8>> {
    let free: Vec<usize> = parts.iter().flat_map(|p| p[1..].iter().copied()).collect();
    let base: BTreeMap<usize, i8> = parts.iter().flatten().map(|&j| (j, 1)).collect();
    (0..1u32 << free.len())
        .map(|mask| {
            let mut s = base.clone();
            for (b, &j) in free.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.insert(j, -1);
                }
            }
            s
        })
        .collect()
}

/// Every datum of the given type and n, parts unordered (in canonical order), signs taken
/// modulo a flip of each part, and every admissible `I_0`.
pub fn data_for(lie_type: LieType, n: usize) -> Result<Vec<ParabolicDatum>> {
    let all: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    let signed = lie_type != LieType::Gl;
    for parts in set_partitions(&all) {
        let signs = if signed { sign_choices(&parts) } else { vec![BTreeMap::new()] };
        for s in signs {
            out.push(make_datum(lie_type, n, parts.clone(), None, s)?);
        }
    }
    if signed {
        for mask in 1u32..1 << n {
            let i0: Vec<usize> = all.iter().copied().filter(|j| mask >> (j - 1) & 1 == 1).collect();
            if lie_type == LieType::D && i0.len() < 2 {
                continue;
            }
            let rest: Vec<usize> = all.iter().copied().filter(|j| !i0.contains(j)).collect();
            for parts in set_partitions(&rest) {
                for s in sign_choices(&parts) {
                    out.push(make_datum(lie_type, n, parts.clone(), Some(i0.clone()), s)?);
                }
            }
        }
    }
    Ok(out)
}

/// gl_n for n ≤ 4, B_n and C_n for n ≤ 3, D_4.
pub fn default_grid() -> Vec<ParabolicDatum> {
    grid(&[LieType::Gl, LieType::B, LieType::C, LieType::D], None)
}

/// Grid restricted to some types, optionally capping the rank.
pub fn grid(types: &[LieType], max_rank: Option<usize>) -> Vec<ParabolicDatum> {
    let mut out = Vec::new();
    for &t in types {
        let ranks: Vec<usize> = match t {
            LieType::Gl => (1..=4).collect(),
            LieType::B | LieType::C => (1..=3).collect(),
            LieType::D => vec![4],
            _ => Vec::new(),
        };
        for n in ranks {
            if max_rank.is_some_and(|r| n > r) {
                continue;
            }
            out.extend(data_for(t, n).expect("grid data are valid"));
        }
    }
    out
}

/// Projection equivalence: the multiset of nonzero projections of Δ equals Rsh with each ν
/// repeated dim g^ν times.
pub fn projection_discrepancies(datum: &ParabolicDatum) -> Vec<String> {
    let spaces = root_spaces(datum);
    let r = t_root_system(datum);
    let mut out = Vec::new();
    let listed: BTreeSet<&Vector> = r.troots.iter().map(|t| &t.delta).collect();
    for t in &r.troots {
        let got = spaces.get(&t.delta).map_or(0, Vec::len);
        if got != t.dim {
            out.push(format!("{datum}: {} has {got} roots, label {} gives {}", t.delta, t.label, t.dim));
        }
    }
    for nu in spaces.keys() {
        if !listed.contains(nu) {
            out.push(format!("{datum}: projection {nu} missing from the t-root table"));
        }
    }
    out
}

/// dim s + Σ dim g^ν = dim g.
pub fn bookkeeping_holds(datum: &ParabolicDatum) -> bool {
    let rs = datum.root_system();
    let s = reductive_part(datum);
    let r = t_root_system(datum);
    s.dim(datum.n) + r.troots.iter().map(|t| t.dim).sum::<usize>() == rs.algebra_dim()
}

/// Symmetries of a datum as signed permutations of δ-coordinates: `ν ↦ ν'` with
/// `ν'_{perm[i]} = sign[i] ν_i`.
pub fn symmetry_group(datum: &ParabolicDatum) -> Vec<(Vec<usize>, Vec<i8>)> {
    let k = datum.k();
    let sizes: Vec<usize> = (0..k).map(|i| datum.part_size(i)).collect();
    let mut perms = Vec::new();
    fn rec(i: usize, sizes: &[usize], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if i == sizes.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..sizes.len() {
            if !used[j] && sizes[j] == sizes[i] {
                used[j] = true;
                cur.push(j);
                rec(i + 1, sizes, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(0, &sizes, &mut Vec::new(), &mut vec![false; k], &mut perms);
    let signs: Vec<Vec<i8>> = if datum.is_signed() {
        (0..1u32 << k).map(|m| (0..k).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
    } else {
        vec![vec![1; k], vec![-1; k]]
    };
    let mut out = Vec::new();
    for p in &perms {
        for s in &signs {
            out.push((p.clone(), s.clone()));
        }
    }
    out
}

pub fn act(g: &(Vec<usize>, Vec<i8>), v: &Vector) -> Vector {
    let mut out = Vector::zero(v.len(), v.basis);
    for i in 0..v.len() {
        out.coords[g.0[i]] = v.coords[i] * crate::rational::int(g.1[i] as i128);
    }
    out
}

/// The symmetry group as permutations of t-root indices.
pub fn index_permutations(datum: &ParabolicDatum, troots: &[Vector]) -> Result<Vec<Vec<usize>>> {
    symmetry_group(datum)
        .iter()
        .map(|g| {
            troots
                .iter()
                .map(|v| {
                    let w = act(g, v);
                    troots.binary_search(&w).map_err(|_| Error::Internal(format!("symmetry maps {v} outside Rsh")))
                })
                .collect()
        })
        .collect()
}

fn apply_mask(perm: &[usize], mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Monotone family: stores generators and answers "S contains a generator" / "S is inside one".
#[derive(Default)]
struct MonotoneCache {
    up: Vec<u64>,
    down: Vec<u64>,
}

impl MonotoneCache {
    fn lookup(&self, s: u64) -> Option<bool> {
        if self.up.iter().any(|&w| w & !s == 0) {
            return Some(true);
        }
        if self.down.iter().any(|&m| s & !m == 0) {
            return Some(false);
        }
        None
    }

    fn add_up(&mut self, perms: &[Vec<usize>], w: u64) {
        let imgs: BTreeSet<u64> = perms.iter().map(|p| apply_mask(p, w)).collect();
        for x in imgs {
            if !self.up.iter().any(|&u| u & !x == 0) {
                self.up.retain(|&u| x & !u != 0);
                self.up.push(x);
            }
        }
    }

    fn add_down(&mut self, perms: &[Vec<usize>], m: u64) {
        let imgs: BTreeSet<u64> = perms.iter().map(|p| apply_mask(p, m)).collect();
        for x in imgs {
            if !self.down.iter().any(|&d| x & !d == 0) {
                self.down.retain(|&d| d & !x != 0);
                self.down.push(x);
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub datum: String,
    pub s: Vec<String>,
    pub saturated: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSweep {
    pub datum: String,
    pub rsh_size: usize,
    pub max_degree: usize,
    pub subsets: u64,
    pub orbits: u64,
    pub saturated_orbits: u64,
    /// Saturated orbits where ≺ extends to an order.
    pub order_exists: u64,
    /// Saturated orbits whose invariants vanish in degrees 1..=D.
    pub invariant_free: u64,
    /// Order existence vs invariant triviality disagreeing on a saturated S.
    pub main_violations: Vec<Finding>,
    /// Non-saturated S with trivial invariants and no order (only with `saturated_only = false`).
    pub nonsaturated_flags: Vec<Finding>,
    /// Cone feasibility vs t-level zero sums disagreeing.
    pub t_level_violations: Vec<Finding>,
    /// S whose invariant search hit a cap; neither counted as agreeing nor skipped silently.
    pub capped: Vec<Finding>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub saturated_only: bool,
    /// Degree bound; `None` means 4k + 4.
    pub max_degree: Option<usize>,
    pub cap: u128,
    /// Compute invariants; otherwise only the t-level comparison.
    pub invariants: bool,
}

/// Sweeps every S ⊆ Rsh of one datum.
pub fn sweep_datum(datum: &ParabolicDatum, opts: SweepOptions) -> Result<DatumSweep> {
    let gm = GradedModule::classical(datum)?;
    let troots = gm.troots.clone();
    let m = troots.len();
    if m > 30 {
        return Err(Error::CapExceeded { what: "t-roots for subset sweep".into(), count: m as u128, cap: 30 });
    }
    let perms = index_permutations(datum, &troots)?;
    let k = datum.k();
    let d = opts.max_degree.unwrap_or(4 * k + 4);
    let ints = gm.int_troots(&(0..m).collect::<Vec<_>>());
    let multiples: Vec<u64> = troots
        .iter()
        .map(|mu| {
            troots
                .iter()
                .enumerate()
                .filter(|(_, nu)| nu.ratio_to(mu).is_some_and(|r| r > num_traits::Zero::zero()))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let saturated = |s: u64| bits(s).iter().all(|&i| multiples[i] & !s == 0);
    let describe = |s: u64| bits(s).iter().map(|&i| format_troot(&troots[i])).collect::<Vec<_>>();

    let mut out = DatumSweep { datum: datum.to_string(), rsh_size: m, max_degree: d, ..Default::default() };
    let total: u64 = 1 << m;
    let mut visited = vec![false; total as usize];
    let mut zero_sums = MonotoneCache::default();
    let mut invariants = MonotoneCache::default();
    for s in (0..total).rev() {
        if visited[s as usize] {
            continue;
        }
        for p in &perms {
            visited[apply_mask(p, s) as usize] = true;
        }
        out.orbits += 1;
        let idx = bits(s);
        let set: Vec<Vector> = idx.iter().map(|&i| troots[i].clone()).collect();
        let sat = saturated(s);

        let has_zero_sum = match zero_sums.lookup(s) {
            Some(b) => b,
            None => {
                let vs: Vec<Vec<i64>> = idx.iter().map(|&i| ints[i].clone()).collect();
                match t_level_zero_sum(&vs, d) {
                    Some((_, a)) => {
                        let support =
                            idx.iter().zip(&a).filter(|(_, &c)| c > 0).fold(0u64, |acc, (&i, _)| acc | 1 << i);
                        zero_sums.add_up(&perms, support);
                        true
                    }
                    None => {
                        zero_sums.add_down(&perms, s);
                        false
                    }
                }
            }
        };
        let cone_feasible = zero_in_positive_span(&set).is_feasible();
        if cone_feasible != has_zero_sum {
            out.t_level_violations.push(Finding {
                datum: datum.to_string(),
                s: describe(s),
                saturated: sat,
                detail: format!("cone feasible: {cone_feasible}, zero sum up to degree {d}: {has_zero_sum}"),
            });
        }
        if !opts.invariants || (opts.saturated_only && !sat) {
            continue;
        }
        if sat {
            out.saturated_orbits += 1;
        }
        let order_ok =
            matches!(extend_to_order(&build_relation_for(k, datum.is_signed(), &set)?), OrderOutcome::Order(_));
        let has_invariant = if !has_zero_sum {
            Some(false)
        } else if let Some(b) = invariants.lookup(s) {
            Some(b)
        } else {
            let mut g = GradedInvariants::new(&gm, &set, opts.cap)?;
            match g.first_invariant(d) {
                Ok(Some((_, a))) => {
                    let support = idx.iter().zip(&a).filter(|(_, &c)| c > 0).fold(0u64, |acc, (&i, _)| acc | 1 << i);
                    invariants.add_up(&perms, support);
                    Some(true)
                }
                Ok(None) => {
                    invariants.add_down(&perms, s);
                    Some(false)
                }
                Err(Error::CapExceeded { what, count, cap }) => {
                    out.capped.push(Finding {
                        datum: datum.to_string(),
                        s: describe(s),
                        saturated: sat,
                        detail: format!("{what}: {count} > {cap}"),
                    });
                    None
                }
                Err(e) => return Err(e),
            }
        };
        let Some(has_invariant) = has_invariant else { continue };
        if sat {
            if order_ok {
                out.order_exists += 1;
            }
            if !has_invariant {
                out.invariant_free += 1;
            }
        }
        if order_ok == has_invariant {
            let f = Finding {
                datum: datum.to_string(),
                s: describe(s),
                saturated: sat,
                detail: format!("order extends: {order_ok}, invariant up to degree {d}: {has_invariant}"),
            };
            if sat {
                out.main_violations.push(f);
            } else {
                out.nonsaturated_flags.push(f);
            }
        }
    }
    out.subsets = total;
    Ok(out)
}

/// Sweeps a list of data on a thread pool; results come back in input order.
pub fn sweep(data: &[ParabolicDatum], opts: SweepOptions, jobs: Option<usize>) -> Result<Vec<DatumSweep>> {
    let run = || data.par_iter().map(|d| sweep_datum(d, opts)).collect::<Result<Vec<_>>>();
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Positive systems against φ-cuts on one Rsh: every T ⊆ Rsh is tested both ways.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComparison {
    pub label: String,
    pub rsh_size: usize,
    pub positive_systems: usize,
    pub cuts: usize,
    /// T accepted by exactly one side.
    pub discrepancies: Vec<Vec<String>>,
}

pub fn compare_positive_systems(label: &str, rsh: &[Vector]) -> Result<CutComparison> {
    let m = rsh.len();
    if m > 20 {
        return Err(Error::CapExceeded {
            what: "t-roots for the positive-system sweep".into(),
            count: m as u128,
            cap: 20,
        });
    }
    let neg: Vec<Option<usize>> = rsh.iter().map(|v| rsh.iter().position(|w| *w == -v)).collect();
    let mut out = CutComparison { label: label.to_string(), rsh_size: m, ..Default::default() };
    for mask in 0u64..1 << m {
        let t: Vec<Vector> = bits(mask).iter().map(|&i| rsh[i].clone()).collect();
        let axioms = check_positive_system(&t, rsh);
        // A cut has φ ≠ 0 on R, so it picks exactly one of ±ν; anything else is no cut.
        let one_of_each = (0..m).all(|i| neg[i].is_some_and(|j| (mask >> i & 1) != (mask >> j & 1)));
        let cut = one_of_each && is_phi_cut(&t, rsh).is_some();
        out.positive_systems += axioms as usize;
        out.cuts += cut as usize;
        if axioms != cut {
            out.discrepancies.push(t.iter().map(format_troot).collect());
        }
    }
    Ok(out)
}

/// Positive systems against cuts for every datum with |Rsh| ≤ `max_size`.
pub fn compare_grid_positive_systems(data: &[ParabolicDatum], max_size: usize) -> Result<Vec<CutComparison>> {
    data.par_iter()
        .filter_map(|d| {
            let r = t_root_system(d).vectors();
            (r.len() <= max_size).then(|| compare_positive_systems(&d.to_string(), &r))
        })
        .collect()
}

fn g2_levi_name(l: &G2Levi) -> String {
    match &l.s_root {
        None => "G2 s=h".to_string(),
        Some(b) => format!("G2 s=<+-{b}>"),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct G2SweepRow {
    pub levi: String,
    pub rsh_size: usize,
    pub max_degree: usize,
    pub saturated_sets: usize,
    pub invariant_free: usize,
    pub contained: usize,
    pub violations: Vec<Finding>,
    pub capped: Vec<Finding>,
}

/// Every G2 Levi and every saturated S: invariants trivial up to D ⟺ S lies in a positive
/// system of Rsh. Containment is decided by listing positive systems and, independently, by
/// the cone test plus a generic functional.
pub fn g2_saturated_sweep(cap: u128) -> Result<Vec<G2SweepRow>> {
    g2_levis()?
        .par_iter()
        .map(|l| {
            let gm = &l.graded;
            let rsh = gm.troots.clone();
            let m = rsh.len();
            let d = 4 * l.t_dim + 4;
            let name = g2_levi_name(l);
            let positive: Vec<u64> = (0u64..1 << m)
                .filter(|&t| check_positive_system(&bits(t).iter().map(|&i| rsh[i].clone()).collect::<Vec<_>>(), &rsh))
                .collect();
            let mut row = G2SweepRow { levi: name.clone(), rsh_size: m, max_degree: d, ..Default::default() };
            for s in 0u64..1 << m {
                let set: Vec<Vector> = bits(s).iter().map(|&i| rsh[i].clone()).collect();
                if !is_saturated(&rsh, &set) {
                    continue;
                }
                row.saturated_sets += 1;
                let describe = || set.iter().map(|v| v.to_string()).collect::<Vec<_>>();
                let contained = positive.iter().any(|&t| t & s == s);
                let by_cone = match zero_in_positive_span(&set) {
                    ConeOutcome::ZeroInCone(_) => false,
                    ConeOutcome::Separated(phi) if set.is_empty() => phi.is_empty(),
                    ConeOutcome::Separated(phi) => generic_cut(&phi, &rsh, &set)
                        .is_some_and(|t| check_positive_system(&t, &rsh) && set.iter().all(|v| t.contains(v))),
                };
                let free = match GradedInvariants::new(gm, &set, cap)?.first_invariant(d) {
                    Ok(found) => found.is_none(),
                    Err(Error::CapExceeded { what, count, cap }) => {
                        row.capped.push(Finding {
                            datum: name.clone(),
                            s: describe(),
                            saturated: true,
                            detail: format!("{what}: {count} > {cap}"),
                        });
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                row.contained += contained as usize;
                row.invariant_free += free as usize;
                if contained != free || contained != by_cone {
                    row.violations.push(Finding {
                        datum: name.clone(),
                        s: describe(),
                        saturated: true,
                        detail: format!(
                            "positive system: {contained}, via cone: {by_cone}, invariants trivial: {free}"
                        ),
                    });
                }
            }
            Ok(row)
        })
        .collect()
}

/// Trivial multiplicity of `Sym^k M` by alternation and by strip-down.
pub fn oracle_pair(gm: &GradedModule, s: &[Vector], k: usize, cap: u128) -> Result<(u128, u128)> {
    let ch = sym_power_character(&module_character(gm, s)?, k, cap)?;
    let by_alternation = trivial_multiplicity(&ch, &gm.structure)?;
    let by_strip_down = trivial_count(&strip_down_decompose(&ch, &gm.structure)?);
    Ok((by_alternation, by_strip_down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::DEFAULT_MULTISET_CAP;

    #[test]
    fn partition_counts_are_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15)] {
            let all: Vec<usize> = (1..=n).collect();
            assert_eq!(set_partitions(&all).len(), bell);
        }
    }

    #[test]
    fn grid_is_consistent() {
        for d in default_grid() {
            assert!(projection_discrepancies(&d).is_empty(), "{d}");
            assert!(bookkeeping_holds(&d), "{d}");
        }
    }

    #[test]
    fn symmetries_preserve_rsh() {
        for d in default_grid() {
            let r = t_root_system(&d).vectors();
            index_permutations(&d, &r).unwrap();
        }
    }

    #[test]
    fn small_sweeps_are_clean() {
        let opts = SweepOptions { saturated_only: true, max_degree: None, cap: DEFAULT_MULTISET_CAP, invariants: true };
        for d in grid(&[LieType::Gl, LieType::B, LieType::C], Some(2)) {
            let r = sweep_datum(&d, opts).unwrap();
            assert!(r.main_violations.is_empty(), "{r:?}");
            assert!(r.t_level_violations.is_empty(), "{r:?}");
        }
    }

    #[test]
    fn nonsaturated_b2_is_flagged() {
        let opts =
            SweepOptions { saturated_only: false, max_degree: None, cap: DEFAULT_MULTISET_CAP, invariants: true };
        let d = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1, 2]], None).unwrap();
        let r = sweep_datum(&d, opts).unwrap();
        assert!(r.main_violations.is_empty());
        assert!(r.nonsaturated_flags.iter().any(|f| f.s == vec!["-d1".to_string(), "2d1".to_string()]), "{r:?}");
    }

    #[test]
    fn b2_positive_systems_are_cuts() {
        let d = ParabolicDatum::with_positive_signs(LieType::B, 2, vec![vec![1], vec![2]], None).unwrap();
        let c = compare_positive_systems("B2", &t_root_system(&d).vectors()).unwrap();
        assert!(c.discrepancies.is_empty());
        assert_eq!(c.positive_systems, 8);
    }

    #[test]
    fn oracles_agree_on_gl2() {
        let d = ParabolicDatum::with_positive_signs(LieType::Gl, 2, vec![vec![1, 2]], None).unwrap();
        let gm = GradedModule::classical(&d).unwrap();
        let d2 = ParabolicDatum::with_positive_signs(LieType::C, 2, vec![vec![1, 2]], None).unwrap();
        let gm2 = GradedModule::classical(&d2).unwrap();
        for k in 0..4 {
            let (a, b) = oracle_pair(&gm2, &gm2.troots.clone(), k, DEFAULT_MULTISET_CAP).unwrap();
            assert_eq!(a, b);
        }
        assert!(gm.troots.is_empty());
    }
}
