//! Finite monoids as Cayley tables, pointed maps between them, and the
//! constructions built on top: products, pullbacks, homomorphism and
//! isomorphism search, and enumeration of small monoids up to isomorphism.
//!
//! Elements are indices `0..size`. Index 0 is always the identity; tables
//! whose identity sits elsewhere are rejected rather than permuted.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_monoids`].
pub const ENUMERATION_LIMIT: usize = 4;

/// A validated finite monoid. Equality ignores display labels.
#[derive(Clone)]
pub struct MonoidTable {
    size: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Shared handle to a monoid; maps and tuples hold these.
pub type Monoid = Arc<MonoidTable>;

impl PartialEq for MonoidTable {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.table == other.table
    }
}

impl Eq for MonoidTable {}

impl std::hash::Hash for MonoidTable {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for MonoidTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidTable").field("rows", &self.rows()).finish()
    }
}

impl MonoidTable {
    /// Validates a square table of element indices.
    pub fn new(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Monoid> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Empty);
        }
        let mut table = Vec::with_capacity(size * size);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(Error::NotSquare { row, len: r.len(), expected: size });
            }
            table.extend_from_slice(r);
        }
        Self::from_flat(size, table, labels)
    }

    /// Validates a row-major flat table.
    pub fn from_flat(size: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Monoid> {
        if size == 0 {
            return Err(Error::Empty);
        }
        if table.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "flat table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        if let Some(l) = &labels {
            if l.len() != size {
                return Err(Error::LabelCount { expected: size, got: l.len() });
            }
        }
        for (idx, &v) in table.iter().enumerate() {
            if v >= size {
                return Err(Error::IndexOutOfRange { i: idx / size, j: idx % size, value: v, size });
            }
        }
        let m = MonoidTable { size, table, labels };
        if let Some(witness) = m.identity_violation() {
            return Err(Error::NotIdentity { witness });
        }
        if let Some((i, j, k)) = m.associativity_violation() {
            return Err(Error::NotAssociative { i, j, k });
        }
        Ok(Arc::new(m))
    }

    /// Builds a table without validation. Callers guarantee the monoid laws.
    pub(crate) fn from_flat_unchecked(size: usize, table: Vec<usize>) -> MonoidTable {
        debug_assert_eq!(table.len(), size * size);
        MonoidTable { size, table, labels: None }
    }

    pub fn trivial() -> Monoid {
        Arc::new(Self::from_flat_unchecked(1, vec![0]))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size + j]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Monoid> {
        if labels.len() != self.size {
            return Err(Error::LabelCount { expected: self.size, got: labels.len() });
        }
        Ok(Arc::new(MonoidTable { labels: Some(labels), ..self.clone() }))
    }

    /// Display name of an element: its label if present, else the index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    fn identity_violation(&self) -> Option<usize> {
        self.elements().find(|&j| self.op(0, j) != j || self.op(j, 0) != j)
    }

    /// First triple `(i, j, k)` in lexicographic order breaking associativity.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in self.elements() {
            for j in self.elements() {
                let ij = self.op(i, j);
                for k in self.elements() {
                    if self.op(ij, k) != self.op(i, self.op(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_idempotent(&self) -> bool {
        self.elements().all(|a| self.op(a, a) == a)
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Two-sided inverse of `a`, if it exists.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&b| self.op(a, b) == 0 && self.op(b, a) == 0)
    }

    pub fn is_group(&self) -> bool {
        self.elements().all(|a| self.inverse(a).is_some())
    }

    /// Relabels elements along `perm` (old index -> new index). `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[usize]) -> MonoidTable {
        let n = self.size;
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i] * n + perm[j]] = perm[self.op(i, j)];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (old, name) in l.iter().enumerate() {
                out[perm[old]] = name.clone();
            }
            out
        });
        MonoidTable { size: n, table, labels }
    }
}

/// Validating constructor for a monoid from its Cayley table.
pub fn make_monoid(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Monoid> {
    MonoidTable::new(rows, labels)
}

/// The cyclic group of order `n` under addition mod `n`.
pub fn cyclic_group(n: usize) -> Monoid {
    assert!(n > 0, "cyclic group needs a positive order");
    let table = (0..n * n).map(|u| (u / n + u % n) % n).collect();
    Arc::new(MonoidTable::from_flat_unchecked(n, table))
}

/// A total map between carriers sending identity to identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointedMap {
    dom: Monoid,
    cod: Monoid,
    values: Vec<usize>,
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointedMap{:?}", self.values)
    }
}

impl PointedMap {
    pub fn new(dom: Monoid, cod: Monoid, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom.size() {
            return Err(Error::MapLength { expected: dom.size(), got: values.len() });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= cod.size()) {
            return Err(Error::MapValueOutOfRange { index, value, size: cod.size() });
        }
        if values[0] != 0 {
            return Err(Error::NotPointed);
        }
        Ok(PointedMap { dom, cod, values })
    }

    pub(crate) fn from_fn(dom: &Monoid, cod: &Monoid, f: impl Fn(usize) -> usize) -> Self {
        let values: Vec<usize> = dom.elements().map(f).collect();
        debug_assert_eq!(values[0], 0);
        debug_assert!(values.iter().all(|&v| v < cod.size()));
        PointedMap { dom: dom.clone(), cod: cod.clone(), values }
    }

    pub fn identity(m: &Monoid) -> Self {
        Self::from_fn(m, m, |i| i)
    }

    pub fn zero(dom: &Monoid, cod: &Monoid) -> Self {
        Self::from_fn(dom, cod, |_| 0)
    }

    pub fn dom(&self) -> &Monoid {
        &self.dom
    }

    pub fn cod(&self) -> &Monoid {
        &self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// First pair `(i, j)` with `f(i+j) != f(i)+f(j)`.
    pub fn homomorphism_violation(&self) -> Option<(usize, usize)> {
        for i in self.dom.elements() {
            for j in self.dom.elements() {
                if self.apply(self.dom.op(i, j)) != self.cod.op(self.apply(i), self.apply(j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<usize> = self.values.iter().copied().collect();
        distinct.len() == self.values.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.values.iter().copied().collect()
    }

    /// Preimage of the identity.
    pub fn kernel_set(&self) -> BTreeSet<usize> {
        self.dom.elements().filter(|&a| self.apply(a) == 0).collect()
    }
}

/// Whether `f` preserves the operation on every pair.
pub fn is_homomorphism(f: &PointedMap) -> bool {
    f.is_homomorphism()
}

/// `g ∘ f`.
pub fn compose_maps(g: &PointedMap, f: &PointedMap) -> Result<PointedMap> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch);
    }
    Ok(PointedMap::from_fn(&f.dom, &g.cod, |i| g.apply(f.apply(i))))
}

/// Pointwise sum `(f+g)(a) = f(a)+g(a)` in the codomain.
pub fn add_maps(f: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::DomainMismatch);
    }
    Ok(PointedMap::from_fn(&f.dom, &f.cod, |i| f.cod.op(f.apply(i), g.apply(i))))
}

/// A pointed map that is known to preserve the operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism(PointedMap);

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homomorphism{:?}", self.0.values)
    }
}

impl Deref for Homomorphism {
    type Target = PointedMap;
    fn deref(&self) -> &PointedMap {
        &self.0
    }
}

impl TryFrom<PointedMap> for Homomorphism {
    type Error = Error;
    fn try_from(map: PointedMap) -> Result<Self> {
        match map.homomorphism_violation() {
            Some((i, j)) => Err(Error::NotHomomorphism { i, j }),
            None => Ok(Homomorphism(map)),
        }
    }
}

impl Homomorphism {
    pub fn new(dom: Monoid, cod: Monoid, values: Vec<usize>) -> Result<Self> {
        PointedMap::new(dom, cod, values)?.try_into()
    }

    pub(crate) fn from_map_unchecked(map: PointedMap) -> Self {
        debug_assert!(map.is_homomorphism());
        Homomorphism(map)
    }

    pub fn identity(m: &Monoid) -> Self {
        Homomorphism(PointedMap::identity(m))
    }

    pub fn zero(dom: &Monoid, cod: &Monoid) -> Self {
        Homomorphism(PointedMap::zero(dom, cod))
    }

    pub fn as_map(&self) -> &PointedMap {
        &self.0
    }

    pub fn into_map(self) -> PointedMap {
        self.0
    }

    /// `self ∘ f`, which is again a homomorphism.
    pub fn after(&self, f: &Homomorphism) -> Result<Homomorphism> {
        compose_maps(&self.0, &f.0).map(Homomorphism)
    }
}

/// Componentwise product; the pair `(i, j)` has index `i * n.size() + j`.
pub fn product_monoid(m: &Monoid, n: &Monoid) -> Monoid {
    let (sm, sn) = (m.size(), n.size());
    let size = sm * sn;
    let mut table = Vec::with_capacity(size * size);
    for u in 0..size {
        let (i, j) = (u / sn, u % sn);
        for v in 0..size {
            let (k, l) = (v / sn, v % sn);
            table.push(m.op(i, k) * sn + n.op(j, l));
        }
    }
    Arc::new(MonoidTable::from_flat_unchecked(size, table))
}

/// A subset of a parent monoid containing 0 and closed under the operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmonoidCarrier {
    parent: Monoid,
    members: Vec<usize>,
}

impl SubmonoidCarrier {
    pub fn new(parent: Monoid, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&m| m >= parent.size()) {
            return Err(Error::IndexOutOfRange { i: bad, j: 0, value: bad, size: parent.size() });
        }
        if !set.contains(&0) {
            return Err(Error::CarrierMismatch("submonoid carrier must contain the identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&parent.op(a, b)) {
                    return Err(Error::CarrierMismatch(format!(
                        "carrier not closed: {a}+{b} = {} is missing",
                        parent.op(a, b)
                    )));
                }
            }
        }
        Ok(SubmonoidCarrier { parent, members: set.into_iter().collect() })
    }

    pub fn parent(&self) -> &Monoid {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.members.binary_search(&parent_elem).is_ok()
    }

    /// Position of a parent element inside the carrier.
    pub fn index_of(&self, parent_elem: usize) -> Option<usize> {
        self.members.binary_search(&parent_elem).ok()
    }

    /// The carrier as a monoid in its own right, indexed in member order.
    pub fn to_monoid(&self) -> Monoid {
        let n = self.members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                let idx = self.index_of(self.parent.op(a, b)).expect("closed carrier");
                table.push(idx);
            }
        }
        Arc::new(MonoidTable::from_flat_unchecked(n, table))
    }

    /// Inclusion of `monoid` (from [`Self::to_monoid`]) into the parent.
    pub fn inclusion(&self, monoid: &Monoid) -> Homomorphism {
        Homomorphism::from_map_unchecked(PointedMap::from_fn(monoid, &self.parent, |i| self.members[i]))
    }
}

/// The pullback `A ×_B C` of `p: A → B` along `h: C → B`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub product: Monoid,
    pub carrier: SubmonoidCarrier,
    pub monoid: Monoid,
    pub pi1: Homomorphism,
    pub pi2: Homomorphism,
}

impl Pullback {
    /// Carrier index of the pair `(a, c)`, if `p(a) = h(c)`.
    pub fn pair_index(&self, a: usize, c: usize) -> Option<usize> {
        let csize = self.pi2.cod().size();
        self.carrier.index_of(a * csize + c)
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        (self.pi1.apply(idx), self.pi2.apply(idx))
    }
}

pub fn pullback(p: &Homomorphism, h: &Homomorphism) -> Result<Pullback> {
    if p.cod() != h.cod() {
        return Err(Error::CodomainMismatch);
    }
    let a = p.dom().clone();
    let c = h.dom().clone();
    let product = product_monoid(&a, &c);
    let members = product.elements().filter(|&u| p.apply(u / c.size()) == h.apply(u % c.size()));
    let carrier = SubmonoidCarrier::new(product.clone(), members)?;
    let monoid = carrier.to_monoid();
    let pi1 = PointedMap::from_fn(&monoid, &a, |i| carrier.members()[i] / c.size());
    let pi2 = PointedMap::from_fn(&monoid, &c, |i| carrier.members()[i] % c.size());
    Ok(Pullback {
        product,
        carrier,
        monoid,
        pi1: Homomorphism::from_map_unchecked(pi1),
        pi2: Homomorphism::from_map_unchecked(pi2),
    })
}

/// Backtracking search over pointed maps `m → n` preserving the operation.
/// Results come out in lexicographic order of their value arrays.
fn search_homomorphisms(m: &Monoid, n: &Monoid, injective: bool) -> Vec<Homomorphism> {
    struct Search<'a> {
        m: &'a MonoidTable,
        n: &'a MonoidTable,
        injective: bool,
        values: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        // Checks every product whose operands and result lie in 0..=depth.
        fn consistent(&self, depth: usize) -> bool {
            for i in 0..=depth {
                for j in 0..=depth {
                    if i != depth && j != depth {
                        continue;
                    }
                    let ij = self.m.op(i, j);
                    if ij <= depth && self.values[ij] != self.n.op(self.values[i], self.values[j]) {
                        return false;
                    }
                }
            }
            // products of earlier elements that land on `depth`
            for i in 0..depth {
                for j in 0..depth {
                    if self.m.op(i, j) == depth && self.values[depth] != self.n.op(self.values[i], self.values[j]) {
                        return false;
                    }
                }
            }
            true
        }

        fn run(&mut self, depth: usize) {
            if depth == self.m.size() {
                self.found.push(self.values.clone());
                return;
            }
            for v in 0..self.n.size() {
                if self.injective && self.used[v] {
                    continue;
                }
                self.values[depth] = v;
                if self.consistent(depth) {
                    self.used[v] = true;
                    self.run(depth + 1);
                    self.used[v] = false;
                }
            }
        }
    }

    let mut s = Search { m, n, injective, values: vec![0; m.size()], used: vec![false; n.size()], found: Vec::new() };
    s.used[0] = true;
    s.run(1);
    s.found
        .into_iter()
        .map(|values| Homomorphism::from_map_unchecked(PointedMap { dom: m.clone(), cod: n.clone(), values }))
        .collect()
}

/// All homomorphisms `m → n`, lexicographically ordered by value array.
pub fn homomorphisms(m: &Monoid, n: &Monoid) -> Vec<Homomorphism> {
    search_homomorphisms(m, n, false)
}

/// All bijective homomorphisms `m → n`, lexicographically ordered.
pub fn find_isomorphisms(m: &Monoid, n: &Monoid) -> Vec<Homomorphism> {
    if m.size() != n.size() {
        return Vec::new();
    }
    search_homomorphisms(m, n, true)
}

pub fn are_isomorphic(m: &Monoid, n: &Monoid) -> bool {
    !find_isomorphisms(m, n).is_empty()
}

/// All permutations of `0..n` fixing 0, in lexicographic order.
pub fn pointed_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 1..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut used = vec![false; n];
    used[0] = true;
    let mut out = Vec::new();
    go(&mut vec![0], &mut used, &mut out);
    out
}

/// Lexicographically least relabeled table in the isomorphism class of `m`.
pub fn canonical_form(m: &MonoidTable) -> MonoidTable {
    pointed_permutations(m.size())
        .iter()
        .map(|perm| MonoidTable::from_flat_unchecked(m.size(), m.relabel(perm).table))
        .min_by(|x, y| x.table.cmp(&y.table))
        .expect("at least the identity permutation")
}

/// All monoids of order `n` up to isomorphism, each given by its canonical
/// (lexicographically least) table, sorted by that table.
///
/// Generates every table with identity at 0, keeps the associative ones and
/// rejects isomorphic duplicates by canonical form. Exponential in `n²`.
pub fn enumerate_monoids(n: usize) -> Result<Vec<Monoid>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeTooLarge { size: n, limit: ENUMERATION_LIMIT });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut base = vec![0; n * n];
    for i in 0..n {
        base[i] = i;
        base[i * n] = i;
    }
    let free: Vec<usize> = (1..n).flat_map(|i| (1..n).map(move |j| i * n + j)).collect();
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut table = base.clone();
        for (cell, &d) in free.iter().zip(&digits) {
            table[*cell] = d;
        }
        let candidate = MonoidTable::from_flat_unchecked(n, table);
        if candidate.associativity_violation().is_none() {
            classes.insert(canonical_form(&candidate).table);
        }
        // odometer increment
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(classes.into_iter().map(|t| Arc::new(MonoidTable::from_flat_unchecked(n, t))).collect());
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
    }
}
