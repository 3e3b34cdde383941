//! Exhaustive search for action systems over fixed carriers, isomorphism
//! classification, and the census of all systems whose kernel and quotient
//! are two-element monoids.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::action::{associativity_sides, functor_q, is_act_morphism, verify_action_system, ActMorphism, ActionSystem};
use crate::error::{Error, Result};
use crate::monoid::{
    canonical_form, enumerate_monoids, find_isomorphisms, pointed_permutations, product_monoid, Monoid, MonoidTable,
    ENUMERATION_LIMIT,
};
use crate::registry::{group_two, idempotent_two, Registry};
use crate::semibiproduct::{is_psb_morphism, PsbMorphism, Semibiproduct};

/// The two choices for each 2×2 matrix, with element `1` written as index 0
/// and element `2` as index 1.
pub mod fixtures {
    /// `ρ(x, b) = x`
    pub const RHO0: [[usize; 2]; 2] = [[0, 0], [1, 1]];
    /// `ρ(1, 1) = 0`
    pub const RHO1: [[usize; 2]; 2] = [[0, 0], [1, 0]];
    /// `φ(b, x) = x`
    pub const PHI0: [[usize; 2]; 2] = [[0, 1], [0, 1]];
    /// `φ(1, 1) = 0`
    pub const PHI1: [[usize; 2]; 2] = [[0, 1], [0, 0]];
    /// `γ = 0`
    pub const GAMMA0: [[usize; 2]; 2] = [[0, 0], [0, 0]];
    /// `γ(1, 1) = 1`
    pub const GAMMA1: [[usize; 2]; 2] = [[0, 0], [0, 1]];

    pub(crate) fn flat(m: [[usize; 2]; 2]) -> Vec<usize> {
        m.iter().flatten().copied().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// `γ = 0`
    Split,
    /// `ρ(x, b) = x`
    Schreier,
    GroupKernel,
    GroupQuotient,
    /// The realization is a group.
    GroupTotal,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Split => "split",
            Tag::Schreier => "schreier",
            Tag::GroupKernel => "group-kernel",
            Tag::GroupQuotient => "group-quotient",
            Tag::GroupTotal => "group-total",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub system: ActionSystem,
    pub tags: BTreeSet<Tag>,
    pub realization_size: usize,
    pub canonical_key: Vec<u8>,
}

impl CensusEntry {
    pub fn new(system: ActionSystem) -> Result<Self> {
        let real = functor_q(&system)?;
        let mut tags = BTreeSet::new();
        if system.is_split() {
            tags.insert(Tag::Split);
        }
        if system.is_schreier() {
            tags.insert(Tag::Schreier);
        }
        if system.x().is_group() {
            tags.insert(Tag::GroupKernel);
        }
        if system.b().is_group() {
            tags.insert(Tag::GroupQuotient);
        }
        if real.monoid.is_group() {
            tags.insert(Tag::GroupTotal);
        }
        Ok(CensusEntry { canonical_key: canonical_key(&system), realization_size: real.size(), tags, system })
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }
}

/// Rank of `v` in the search order for a cell whose trivial value is `t`:
/// `t` first, then the remaining values ascending.
fn rank(v: usize, t: usize) -> u8 {
    let r = if v == t {
        0
    } else if v < t {
        v + 1
    } else {
        v
    };
    r as u8
}

fn presentation_key(t: &ActionSystem) -> Vec<u8> {
    let (xm, bm) = (t.x(), t.b());
    let (nx, nb) = (xm.size(), bm.size());
    let mut key = vec![nx as u8, nb as u8];
    key.extend(xm.flat().iter().map(|&v| v as u8));
    key.extend(bm.flat().iter().map(|&v| v as u8));
    key.extend(t.rho_flat().iter().enumerate().map(|(i, &v)| rank(v, i / nb)));
    key.extend(t.phi_flat().iter().enumerate().map(|(i, &v)| rank(v, i % nx)));
    key.extend(t.gamma_flat().iter().map(|&v| rank(v, 0)));
    key
}

/// Byte key of the least presentation of `t` over all relabelings of `X`
/// and `B`. Two systems share a key exactly when they are isomorphic.
pub fn canonical_key(t: &ActionSystem) -> Vec<u8> {
    let px = pointed_permutations(t.x().size());
    let pb = pointed_permutations(t.b().size());
    px.iter()
        .flat_map(|sx| pb.iter().map(move |sb| presentation_key(&t.relabel(sx, sb))))
        .min()
        .expect("identity relabeling always exists")
}

/// Cell layout of the search: ρ cells, then φ cells, then γ cells.
struct Layout {
    nx: usize,
    nb: usize,
}

impl Layout {
    fn rho(&self, x: usize, b: usize) -> usize {
        x * self.nb + b
    }
    fn phi(&self, b: usize, x: usize) -> usize {
        self.nx * self.nb + b * self.nx + x
    }
    fn gamma(&self, b: usize, b2: usize) -> usize {
        2 * self.nx * self.nb + b * self.nb + b2
    }
    fn len(&self) -> usize {
        2 * self.nx * self.nb + self.nb * self.nb
    }
}

#[derive(Clone, Copy)]
enum Constraint {
    RhoIdempotent(usize, usize),
    PhiFixed(usize, usize),
    GammaFixed(usize, usize),
    Associative([usize; 6]),
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    xm: &'a MonoidTable,
    bm: &'a MonoidTable,
    layout: Layout,
    cells: Vec<usize>,
    free: Vec<usize>,
    trivial: Vec<usize>,
    constraints: Vec<Constraint>,
    /// constraints whose evaluation is blocked on each cell
    watches: Vec<Vec<usize>>,
    found: Vec<ActionSystem>,
}

impl Search<'_> {
    /// `Ok(holds)` when fully evaluable, `Err(cell)` when blocked on `cell`.
    fn evaluate(&self, c: Constraint) -> Result<bool, usize> {
        let l = &self.layout;
        let get = |cell: usize| match self.cells[cell] {
            UNSET => Err(cell),
            v => Ok(v),
        };
        let rho = |x, b| get(l.rho(x, b));
        let phi = |b, x| get(l.phi(b, x));
        let gamma = |b, b2| get(l.gamma(b, b2));
        match c {
            Constraint::RhoIdempotent(x, b) => {
                let r = rho(x, b)?;
                Ok(rho(r, b)? == r)
            }
            Constraint::PhiFixed(b, x) => {
                let f = phi(b, x)?;
                Ok(rho(f, b)? == f)
            }
            Constraint::GammaFixed(b, b2) => {
                let g = gamma(b, b2)?;
                Ok(rho(g, self.bm.op(b, b2))? == g)
            }
            Constraint::Associative(w) => {
                let (lhs, rhs) = associativity_sides(self.xm, self.bm, rho, phi, gamma, w)?;
                Ok(lhs == rhs)
            }
        }
    }

    fn candidates(&self, cell: usize) -> impl Iterator<Item = usize> {
        let t = self.trivial[cell];
        std::iter::once(t).chain((0..self.xm.size()).filter(move |&v| v != t))
    }

    fn run(&mut self, pos: usize) {
        if pos == self.free.len() {
            let l = &self.layout;
            let (nx, nb) = (l.nx, l.nb);
            let system = ActionSystem::from_flat(
                Arc::new(self.xm.clone()),
                Arc::new(self.bm.clone()),
                self.cells[..nx * nb].to_vec(),
                self.cells[nx * nb..2 * nx * nb].to_vec(),
                self.cells[2 * nx * nb..].to_vec(),
            )
            .expect("dimensions fit by construction");
            self.found.push(system);
            return;
        }
        let cell = self.free[pos];
        let candidates: Vec<usize> = self.candidates(cell).collect();
        let watching = std::mem::take(&mut self.watches[cell]);
        for v in candidates {
            self.cells[cell] = v;
            let mut moved: Vec<usize> = Vec::new();
            let mut ok = true;
            for &ci in &watching {
                match self.evaluate(self.constraints[ci]) {
                    Ok(true) => {}
                    Ok(false) => {
                        ok = false;
                        break;
                    }
                    Err(next) => {
                        self.watches[next].push(ci);
                        moved.push(next);
                    }
                }
            }
            if ok {
                self.run(pos + 1);
            }
            for next in moved.into_iter().rev() {
                self.watches[next].pop();
            }
        }
        self.cells[cell] = UNSET;
        self.watches[cell] = watching;
    }
}

/// Every action system over `(X, B)`, in canonical-key order.
///
/// Cells fixed by the unit and zero axioms are filled in first; the
/// remaining cells are searched depth first, and each remaining axiom
/// instance is re-evaluated only when the cell it is blocked on gets a value.
pub fn enumerate_action_systems(x: &Monoid, b: &Monoid) -> Result<Vec<ActionSystem>> {
    for size in [x.size(), b.size()] {
        if size > ENUMERATION_LIMIT {
            return Err(Error::SizeTooLarge { size, limit: ENUMERATION_LIMIT });
        }
    }
    let (nx, nb) = (x.size(), b.size());
    let layout = Layout { nx, nb };
    let mut cells = vec![UNSET; layout.len()];
    let mut trivial = vec![0; layout.len()];
    for xi in 0..nx {
        for bi in 0..nb {
            trivial[layout.rho(xi, bi)] = xi;
            trivial[layout.phi(bi, xi)] = xi;
            if xi == 0 || bi == 0 {
                cells[layout.rho(xi, bi)] = if bi == 0 { xi } else { 0 };
                cells[layout.phi(bi, xi)] = if bi == 0 { xi } else { 0 };
            }
        }
    }
    for b0 in 0..nb {
        for b1 in 0..nb {
            if b0 == 0 || b1 == 0 {
                cells[layout.gamma(b0, b1)] = 0;
            }
        }
    }
    let free: Vec<usize> = (0..layout.len()).filter(|&c| cells[c] == UNSET).collect();

    let mut constraints = Vec::new();
    for xi in 0..nx {
        for bi in 0..nb {
            constraints.push(Constraint::RhoIdempotent(xi, bi));
            constraints.push(Constraint::PhiFixed(bi, xi));
        }
    }
    for b0 in 0..nb {
        for b1 in 0..nb {
            constraints.push(Constraint::GammaFixed(b0, b1));
        }
    }
    for x0 in 0..nx {
        for x1 in 0..nx {
            for x2 in 0..nx {
                for b0 in 0..nb {
                    for b1 in 0..nb {
                        for b2 in 0..nb {
                            constraints.push(Constraint::Associative([x0, x1, x2, b0, b1, b2]));
                        }
                    }
                }
            }
        }
    }

    let mut search = Search {
        xm: x,
        bm: b,
        watches: vec![Vec::new(); layout.len()],
        layout,
        cells,
        free,
        trivial,
        constraints,
        found: Vec::new(),
    };
    for ci in 0..search.constraints.len() {
        match search.evaluate(search.constraints[ci]) {
            Ok(true) => {}
            Ok(false) => return Ok(Vec::new()),
            Err(cell) => search.watches[cell].push(ci),
        }
    }
    search.run(0);

    let mut keyed: Vec<(Vec<u8>, Vec<u8>, ActionSystem)> = search
        .found
        .into_iter()
        .filter(|t| verify_action_system(t).passed())
        .map(|t| (canonical_key(&t), presentation_key(&t), t))
        .collect();
    keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    Ok(keyed.into_iter().map(|(_, _, t)| t).collect())
}

/// An isomorphism `(f, g)` from `s` to `t`, if one exists. Both the pair and
/// its inverse are checked as morphisms.
pub fn act_isomorphism(s: &ActionSystem, t: &ActionSystem) -> Option<ActMorphism> {
    for f in find_isomorphisms(s.x(), t.x()) {
        for g in find_isomorphisms(s.b(), t.b()) {
            let m = ActMorphism::new(s.clone(), t.clone(), f.clone(), g.clone()).ok()?;
            if !is_act_morphism(&m).passed() {
                continue;
            }
            let finv = invert(&f);
            let ginv = invert(&g);
            let back = ActMorphism::new(t.clone(), s.clone(), finv, ginv).ok()?;
            if is_act_morphism(&back).passed() {
                return Some(m);
            }
        }
    }
    None
}

fn invert(f: &crate::monoid::Homomorphism) -> crate::monoid::Homomorphism {
    let mut values = vec![0; f.values().len()];
    for (i, &v) in f.values().iter().enumerate() {
        values[v] = i;
    }
    crate::monoid::Homomorphism::new(f.cod().clone(), f.dom().clone(), values)
        .expect("inverse of a bijective homomorphism")
}

/// Whether two semibiproducts are isomorphic through bijective `(f1, f2, f3)`.
pub fn psb_isomorphic(s: &Semibiproduct, t: &Semibiproduct) -> bool {
    let f1s = find_isomorphisms(s.x(), t.x());
    let f3s = find_isomorphisms(s.b(), t.b());
    let f2s = find_isomorphisms(s.a(), t.a());
    for f1 in &f1s {
        for f3 in &f3s {
            for f2 in &f2s {
                let m = PsbMorphism::new(s.clone(), t.clone(), f1.clone(), f2.clone(), f3.clone())
                    .expect("isomorphisms fit the carriers");
                if is_psb_morphism(&m).passed() {
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: CensusEntry,
    pub members: Vec<CensusEntry>,
}

/// Partitions entries into isomorphism classes. Canonical keys bucket the
/// entries; membership is then confirmed by an explicit isomorphism.
pub fn classify(entries: &[CensusEntry]) -> Vec<IsoClass> {
    let mut buckets: BTreeMap<&[u8], Vec<&CensusEntry>> = BTreeMap::new();
    for e in entries {
        buckets.entry(e.canonical_key.as_slice()).or_default().push(e);
    }
    let mut classes: Vec<IsoClass> = Vec::new();
    for (_, mut bucket) in buckets {
        bucket.sort_by_key(|e| presentation_key(&e.system));
        let mut local: Vec<IsoClass> = Vec::new();
        for e in bucket {
            match local.iter_mut().find(|c| act_isomorphism(&c.representative.system, &e.system).is_some()) {
                Some(class) => class.members.push(e.clone()),
                None => local.push(IsoClass { representative: e.clone(), members: vec![e.clone()] }),
            }
        }
        classes.extend(local);
    }
    classes
}

/// Index pairs `(i, j)` where isomorphism of the systems and isomorphism of
/// their realized semibiproducts disagree.
pub fn classification_disagreements(entries: &[CensusEntry]) -> Result<Vec<(usize, usize)>> {
    let sbps: Vec<Semibiproduct> =
        entries.iter().map(|e| functor_q(&e.system).map(|r| r.semibiproduct())).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let act = act_isomorphism(&entries[i].system, &entries[j].system).is_some();
            let psb = psb_isomorphic(&sbps[i], &sbps[j]);
            if act != psb {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Census entries for every ordered pair of the given monoids.
pub fn census_over(monoids: &[Monoid]) -> Result<Vec<CensusEntry>> {
    let mut out = Vec::new();
    for x in monoids {
        for b in monoids {
            for t in enumerate_action_systems(x, b)? {
                out.push(CensusEntry::new(t)?);
            }
        }
    }
    Ok(out)
}

/// All action systems whose kernel and quotient have two elements, grouped
/// by `(X, B)` in the order `(G,G)`, `(G,M)`, `(M,G)`, `(M,M)`.
pub fn census_2x2() -> Vec<CensusEntry> {
    let monoids = enumerate_monoids(2).expect("order 2 is within the limit");
    census_over(&monoids).expect("census systems are valid")
}

/// The named 2×2 matrix matching `flat`, if any.
fn matrix_name(symbol: &str, flat: &[usize], options: [[[usize; 2]; 2]; 2]) -> String {
    match options.iter().position(|m| fixtures::flat(*m) == flat) {
        Some(i) => format!("{symbol}{i}"),
        None => format!("{symbol}={flat:?}"),
    }
}

fn monoid_name(registry: &Registry, m: &MonoidTable) -> String {
    match registry.name_of(m) {
        Some(n) => n.to_string(),
        None => format!("{:?}", m.rows()),
    }
}

/// `(X,B,ρi,φj,γk)` using registry names for the carriers.
pub fn describe_system(registry: &Registry, t: &ActionSystem) -> String {
    use fixtures::*;
    let two = t.x().size() == 2 && t.b().size() == 2;
    let named = |symbol: &str, flat: &[usize], options| {
        if two {
            matrix_name(symbol, flat, options)
        } else {
            format!("{symbol}={flat:?}")
        }
    };
    format!(
        "({},{},{},{},{})",
        monoid_name(registry, t.x()),
        monoid_name(registry, t.b()),
        named("ρ", t.rho_flat(), [RHO0, RHO1]),
        named("φ", t.phi_flat(), [PHI0, PHI1]),
        named("γ", t.gamma_flat(), [GAMMA0, GAMMA1]),
    )
}

/// Numbered list, one `n. (X,B,ρi,φj,γk)` line per entry.
pub fn render_census_list(registry: &Registry, entries: &[CensusEntry]) -> String {
    let mut out = String::new();
    for (i, e) in entries.iter().enumerate() {
        out.push_str(&format!("{}. {}\n", i + 1, describe_system(registry, &e.system)));
    }
    out
}

/// A small monoid with a display name.
#[derive(Debug, Clone)]
pub struct KnownMonoid {
    pub name: String,
    pub monoid: Monoid,
}

/// Every monoid of order at most 4 up to isomorphism, named after the
/// built-in registry or as a product of two-element monoids where possible,
/// and `order{n}#{i}` (position in [`enumerate_monoids`]) otherwise.
pub fn known_monoids() -> Vec<KnownMonoid> {
    let registry = Registry::new();
    let (g, m) = (group_two(), idempotent_two());
    let products = [("G×G", product_monoid(&g, &g)), ("G×M", product_monoid(&g, &m)), ("M×M", product_monoid(&m, &m))];
    let mut out = Vec::new();
    for n in 1..=ENUMERATION_LIMIT {
        for (i, mono) in enumerate_monoids(n).expect("within limit").into_iter().enumerate() {
            let builtin = crate::registry::BUILTIN_NAMES.iter().find(|name| {
                let b = registry.get(name).expect("builtin");
                canonical_form(&b) == *mono
            });
            let name = match builtin {
                Some(b) => b.to_string(),
                None => products
                    .iter()
                    .find(|(_, p)| canonical_form(p) == *mono)
                    .map(|(name, _)| name.to_string())
                    .unwrap_or_else(|| format!("order{n}#{i}")),
            };
            out.push(KnownMonoid { name, monoid: mono });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct RealizationRow {
    pub entry: CensusEntry,
    pub realization: Monoid,
    /// Name of the isomorphic known monoid; `None` when no known monoid matches.
    pub identified: Option<String>,
}

/// Identifies the realization of each entry among the known small monoids.
pub fn realization_census(entries: &[CensusEntry]) -> Result<Vec<RealizationRow>> {
    let known = known_monoids();
    entries
        .iter()
        .map(|e| {
            let real = functor_q(&e.system)?;
            let canon = canonical_form(&real.monoid);
            let identified = known.iter().find(|k| *k.monoid == canon).map(|k| k.name.clone());
            Ok(RealizationRow { entry: e.clone(), realization: real.monoid, identified })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::cyclic_group;

    fn flags(t: &ActionSystem) -> (usize, usize, usize) {
        use fixtures::*;
        let idx = |flat: &[usize], opts: [[[usize; 2]; 2]; 2]| {
            opts.iter().position(|m| fixtures::flat(*m) == flat).expect("2x2 fixture")
        };
        (idx(t.rho_flat(), [RHO0, RHO1]), idx(t.phi_flat(), [PHI0, PHI1]), idx(t.gamma_flat(), [GAMMA0, GAMMA1]))
    }

    #[test]
    fn per_pair_counts_and_order() {
        let (g, m) = (group_two(), idempotent_two());
        let expect = [
            (&g, &g, vec![(0, 0, 0), (0, 0, 1)]),
            (&g, &m, vec![(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 0)]),
            (&m, &g, vec![(0, 0, 0), (0, 0, 1), (1, 1, 1)]),
            (&m, &m, vec![(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 0)]),
        ];
        for (x, b, want) in expect {
            let got: Vec<_> = enumerate_action_systems(x, b).unwrap().iter().map(flags).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn size_guard() {
        let big = product_monoid(&group_two(), &cyclic_group(3));
        assert_eq!(
            enumerate_action_systems(&big, &group_two()).unwrap_err(),
            Error::SizeTooLarge { size: 6, limit: ENUMERATION_LIMIT }
        );
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let x = MonoidTable::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], None).unwrap();
        let t = ActionSystem::trivial(&x, &idempotent_two());
        let swapped = t.relabel(&[0, 2, 1], &[0, 1]);
        assert_ne!(presentation_key(&t), presentation_key(&swapped));
        assert_eq!(canonical_key(&t), canonical_key(&swapped));
    }

    #[test]
    fn duplicated_entries_double_members() {
        let census = census_2x2();
        let mut doubled = census.clone();
        doubled.extend(census.iter().cloned());
        let classes = classify(&doubled);
        assert_eq!(classes.len(), 14);
        assert!(classes.iter().all(|c| c.members.len() == 2));
    }

    #[test]
    fn different_carriers_never_share_a_class() {
        let census = census_2x2();
        for class in classify(&census) {
            let x = class.representative.system.x();
            assert!(class.members.iter().all(|m| m.system.x() == x));
        }
    }

    #[test]
    fn known_monoid_names() {
        let known = known_monoids();
        assert_eq!(known.len(), 1 + 2 + 7 + 35);
        let names: Vec<&str> = known.iter().map(|k| k.name.as_str()).collect();
        for n in ["T", "M", "G", "Z3", "Z4", "G×G", "G×M", "M×M"] {
            assert!(names.contains(&n), "missing {n}");
        }
    }
}
