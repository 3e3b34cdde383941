//! Pointed semibiproducts of monoids: the tuple `(X, A, B, p, k, q, s)`
//! with homomorphisms `p: A → B`, `k: X → A` and pointed maps `q: A → X`,
//! `s: B → A` satisfying
//!
//! ```text
//! ps = 1_B    qk = 1_X    kq + sp = 1_A    pk = 0    qs = 0
//! ```
//!
//! Besides verification this module covers exactness of `X → A → B`,
//! the sum decomposition of `a + a'` through `q` and `p`, the group case
//! where `q` is forced by `k(q(a)) = a - s(p(a))`, stability under pullback,
//! composition of semibiproducts, and morphisms between them.

use serde::Serialize;

use crate::error::{Carrier, Error, Result};
use crate::monoid::{homomorphisms, product_monoid, pullback, Homomorphism, Monoid, PointedMap, Pullback};
use crate::report::VerificationReport;

pub const LAW_PS: &str = "ps=1_B";
pub const LAW_QK: &str = "qk=1_X";
pub const LAW_SPLIT_SUM: &str = "kq+sp=1_A";
pub const LAW_PK: &str = "pk=0";
pub const LAW_QS: &str = "qs=0";

pub const EXACT_K_INJECTIVE: &str = "k injective";
pub const EXACT_P_SURJECTIVE: &str = "p surjective";
pub const EXACT_IMAGE_KERNEL: &str = "image(k)=ker(p)";

/// Whether the two pointedness laws `pk = 0` and `qs = 0` are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pointedness {
    Require,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semibiproduct {
    x: Monoid,
    a: Monoid,
    b: Monoid,
    p: Homomorphism,
    k: Homomorphism,
    q: PointedMap,
    s: PointedMap,
}

impl Semibiproduct {
    /// Assembles a tuple after checking that the components fit together as
    /// `p: A → B`, `k: X → A`, `q: A → X`, `s: B → A`. Laws are not checked.
    pub fn new(p: Homomorphism, k: Homomorphism, q: PointedMap, s: PointedMap) -> Result<Self> {
        let a = p.dom().clone();
        let b = p.cod().clone();
        let x = k.dom().clone();
        if **k.cod() != *a {
            return Err(Error::CarrierMismatch("k must map into the domain of p".into()));
        }
        if **q.dom() != *a || **q.cod() != *x {
            return Err(Error::CarrierMismatch("q must map A to X".into()));
        }
        if **s.dom() != *b || **s.cod() != *a {
            return Err(Error::CarrierMismatch("s must map B to A".into()));
        }
        Ok(Semibiproduct { x, a, b, p, k, q, s })
    }

    /// `(X, X×B, B, π_B, ⟨1,0⟩, π_X, ⟨0,1⟩)`.
    pub fn direct_product(x: &Monoid, b: &Monoid) -> Self {
        let a = product_monoid(x, b);
        let nb = b.size();
        let p = Homomorphism::from_map_unchecked(PointedMap::from_fn(&a, b, |u| u % nb));
        let k = Homomorphism::from_map_unchecked(PointedMap::from_fn(x, &a, |i| i * nb));
        let q = PointedMap::from_fn(&a, x, |u| u / nb);
        let s = PointedMap::from_fn(b, &a, |j| j);
        Semibiproduct { x: x.clone(), a, b: b.clone(), p, k, q, s }
    }

    /// `(A, A, A, 1, 1, 1, 1)`.
    pub fn diagonal(a: &Monoid) -> Self {
        let id = Homomorphism::identity(a);
        Semibiproduct {
            x: a.clone(),
            a: a.clone(),
            b: a.clone(),
            p: id.clone(),
            k: id.clone(),
            q: id.as_map().clone(),
            s: id.into_map(),
        }
    }

    pub fn x(&self) -> &Monoid {
        &self.x
    }
    pub fn a(&self) -> &Monoid {
        &self.a
    }
    pub fn b(&self) -> &Monoid {
        &self.b
    }
    pub fn p(&self) -> &Homomorphism {
        &self.p
    }
    pub fn k(&self) -> &Homomorphism {
        &self.k
    }
    pub fn q(&self) -> &PointedMap {
        &self.q
    }
    pub fn s(&self) -> &PointedMap {
        &self.s
    }

    /// Split semibiproducts have a homomorphic section.
    pub fn is_split(&self) -> bool {
        self.s.is_homomorphism()
    }

    pub fn verify(&self, pointedness: Pointedness) -> VerificationReport {
        verify_semibiproduct(self, pointedness)
    }
}

/// Checks every law, listing each violation with a witness element.
pub fn verify_semibiproduct(sbp: &Semibiproduct, pointedness: Pointedness) -> VerificationReport {
    let Semibiproduct { x, a, b, p, k, q, s } = sbp;
    let mut report = VerificationReport::new();
    let singletons = |m: &Monoid| m.elements().map(|e| vec![e]).collect::<Vec<_>>();
    report.check_all(LAW_PS, singletons(b), |w| p.apply(s.apply(w[0])) == w[0]);
    report.check_all(LAW_QK, singletons(x), |w| q.apply(k.apply(w[0])) == w[0]);
    report.check_all(LAW_SPLIT_SUM, singletons(a), |w| a.op(k.apply(q.apply(w[0])), s.apply(p.apply(w[0]))) == w[0]);
    if pointedness == Pointedness::Require {
        report.check_all(LAW_PK, singletons(x), |w| p.apply(k.apply(w[0])) == 0);
        report.check_all(LAW_QS, singletons(b), |w| q.apply(s.apply(w[0])) == 0);
    }
    report
}

/// Exactness of `X → A → B` in its finite form: `k` injective, `p`
/// surjective, and the image of `k` equal to the preimage of 0 under `p`.
pub fn check_exactness(sbp: &Semibiproduct) -> VerificationReport {
    let mut report = VerificationReport::new();
    let k = sbp.k();
    let p = sbp.p();
    let mut seen = vec![None; sbp.a().size()];
    for x in sbp.x().elements() {
        match seen[k.apply(x)] {
            Some(prev) => report.push(EXACT_K_INJECTIVE, vec![prev, x]),
            None => seen[k.apply(x)] = Some(x),
        }
    }
    let image = p.image();
    for b in sbp.b().elements().filter(|b| !image.contains(b)) {
        report.push(EXACT_P_SURJECTIVE, vec![b]);
    }
    let im_k = k.image();
    let ker_p = p.kernel_set();
    for a in im_k.symmetric_difference(&ker_p) {
        report.push(EXACT_IMAGE_KERNEL, vec![*a]);
    }
    report
}

/// Whether `a + a'` equals
/// `k(q(a) + q(sp(a) + kq(a')) + q(sp(a) + sp(a'))) + s(p(a) + p(a'))`.
pub fn sum_decomposition_check(sbp: &Semibiproduct, a1: usize, a2: usize) -> bool {
    let Semibiproduct { x, a, b, p, k, q, s } = sbp;
    let sp1 = s.apply(p.apply(a1));
    let sp2 = s.apply(p.apply(a2));
    let kq2 = k.apply(q.apply(a2));
    let inner = x.op(x.op(q.apply(a1), q.apply(a.op(sp1, kq2))), q.apply(a.op(sp1, sp2)));
    let rhs = a.op(k.apply(inner), s.apply(b.op(p.apply(a1), p.apply(a2))));
    a.op(a1, a2) == rhs
}

/// Every pair `(a, a')` failing [`sum_decomposition_check`].
pub fn sum_decomposition_failures(sbp: &Semibiproduct) -> Vec<(usize, usize)> {
    let a = sbp.a();
    a.elements()
        .flat_map(|i| a.elements().map(move |j| (i, j)))
        .filter(|&(i, j)| !sum_decomposition_check(sbp, i, j))
        .collect()
}

/// Completes a group extension `X → A → B` with pointed section `s` by the
/// unique retraction `q` with `k(q(a)) = a - s(p(a))`.
pub fn from_group_extension(k: &Homomorphism, p: &Homomorphism, s: &PointedMap) -> Result<Semibiproduct> {
    let x = k.dom();
    let a = p.dom();
    let b = p.cod();
    if **k.cod() != **a || **s.dom() != **b || **s.cod() != **a {
        return Err(Error::CarrierMismatch("expected k: X → A, p: A → B, s: B → A".into()));
    }
    for (carrier, m) in [(Carrier::X, x), (Carrier::A, a), (Carrier::B, b)] {
        if !m.is_group() {
            return Err(Error::NotAGroup(carrier));
        }
    }
    if let Some(witness) = b.elements().find(|&e| p.apply(s.apply(e)) != e) {
        return Err(Error::SectionNotSplitting { witness });
    }
    let mut preimage = vec![None; a.size()];
    for e in x.elements() {
        if preimage[k.apply(e)].replace(e).is_some() {
            return Err(Error::KernelMismatch { witness: k.apply(e) });
        }
    }
    if let Some(&witness) = k.image().symmetric_difference(&p.kernel_set()).next() {
        return Err(Error::KernelMismatch { witness });
    }
    let mut q_values = Vec::with_capacity(a.size());
    for e in a.elements() {
        let sp = s.apply(p.apply(e));
        let inv = a.inverse(sp).expect("A is a group");
        let diff = a.op(e, inv);
        match preimage[diff] {
            Some(v) => q_values.push(v),
            None => return Err(Error::PreimageNotFound { witness: e }),
        }
    }
    let q = PointedMap::new(a.clone(), x.clone(), q_values)?;
    let sbp = Semibiproduct::new(p.clone(), k.clone(), q, s.clone())?;
    let report = verify_semibiproduct(&sbp, Pointedness::Require);
    if !report.passed() {
        return Err(Error::InvalidSemibiproduct(report));
    }
    Ok(sbp)
}

/// A morphism `(f1, f2, f3)` of semibiproducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsbMorphism {
    pub source: Semibiproduct,
    pub target: Semibiproduct,
    pub f1: Homomorphism,
    pub f2: Homomorphism,
    pub f3: Homomorphism,
}

impl PsbMorphism {
    pub fn new(
        source: Semibiproduct,
        target: Semibiproduct,
        f1: Homomorphism,
        f2: Homomorphism,
        f3: Homomorphism,
    ) -> Result<Self> {
        let fits = |f: &Homomorphism, dom: &Monoid, cod: &Monoid| f.dom() == dom && f.cod() == cod;
        if !fits(&f1, source.x(), target.x()) {
            return Err(Error::CarrierMismatch("f1 must map X to X'".into()));
        }
        if !fits(&f2, source.a(), target.a()) {
            return Err(Error::CarrierMismatch("f2 must map A to A'".into()));
        }
        if !fits(&f3, source.b(), target.b()) {
            return Err(Error::CarrierMismatch("f3 must map B to B'".into()));
        }
        Ok(PsbMorphism { source, target, f1, f2, f3 })
    }

    pub fn identity(sbp: &Semibiproduct) -> Self {
        PsbMorphism {
            source: sbp.clone(),
            target: sbp.clone(),
            f1: Homomorphism::identity(sbp.x()),
            f2: Homomorphism::identity(sbp.a()),
            f3: Homomorphism::identity(sbp.b()),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PsbMorphism) -> Result<PsbMorphism> {
        if self.target != next.source {
            return Err(Error::CarrierMismatch("morphisms are not composable".into()));
        }
        Ok(PsbMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f1: next.f1.after(&self.f1)?,
            f2: next.f2.after(&self.f2)?,
            f3: next.f3.after(&self.f3)?,
        })
    }
}

/// Checks the four commuting squares pointwise.
pub fn is_psb_morphism(m: &PsbMorphism) -> VerificationReport {
    let (src, tgt) = (&m.source, &m.target);
    let mut report = VerificationReport::new();
    for x in src.x().elements() {
        if m.f2.apply(src.k().apply(x)) != tgt.k().apply(m.f1.apply(x)) {
            report.push("f2k=k'f1", vec![x]);
        }
    }
    for a in src.a().elements() {
        if tgt.p().apply(m.f2.apply(a)) != m.f3.apply(src.p().apply(a)) {
            report.push("p'f2=f3p", vec![a]);
        }
    }
    for b in src.b().elements() {
        if m.f2.apply(src.s().apply(b)) != tgt.s().apply(m.f3.apply(b)) {
            report.push("f2s=s'f3", vec![b]);
        }
    }
    for a in src.a().elements() {
        if tgt.q().apply(m.f2.apply(a)) != m.f1.apply(src.q().apply(a)) {
            report.push("q'f2=f1q", vec![a]);
        }
    }
    report
}

/// Pullback of a semibiproduct along `h: C → B`, together with the
/// comparison morphism `(1_X, π1, h)` back to the original.
#[derive(Debug, Clone)]
pub struct PulledBack {
    pub semibiproduct: Semibiproduct,
    pub pullback: Pullback,
    pub projection: PsbMorphism,
}

/// `(X, A ×_B C, C, π2, ⟨k,0⟩, qπ1, ⟨sh,1⟩)`.
pub fn pullback_semibiproduct(sbp: &Semibiproduct, h: &Homomorphism) -> Result<Semibiproduct> {
    pullback_with_projection(sbp, h).map(|pb| pb.semibiproduct)
}

pub fn pullback_with_projection(sbp: &Semibiproduct, h: &Homomorphism) -> Result<PulledBack> {
    if h.cod() != sbp.b() {
        return Err(Error::CodomainMismatch);
    }
    let pb = pullback(sbp.p(), h)?;
    let c = h.dom();
    let not_pointed = || Error::InvalidSemibiproduct(verify_semibiproduct(sbp, Pointedness::Require));

    let mut k_values = Vec::with_capacity(sbp.x().size());
    for x in sbp.x().elements() {
        k_values.push(pb.pair_index(sbp.k().apply(x), 0).ok_or_else(not_pointed)?);
    }
    let mut s_values = Vec::with_capacity(c.size());
    for e in c.elements() {
        s_values.push(pb.pair_index(sbp.s().apply(h.apply(e)), e).ok_or_else(not_pointed)?);
    }
    let k = Homomorphism::new(sbp.x().clone(), pb.monoid.clone(), k_values)?;
    let s = PointedMap::new(c.clone(), pb.monoid.clone(), s_values)?;
    let q = PointedMap::from_fn(&pb.monoid, sbp.x(), |i| sbp.q().apply(pb.pi1.apply(i)));
    let pulled = Semibiproduct::new(pb.pi2.clone(), k, q, s)?;
    let projection =
        PsbMorphism::new(pulled.clone(), sbp.clone(), Homomorphism::identity(sbp.x()), pb.pi1.clone(), h.clone())?;
    Ok(PulledBack { semibiproduct: pulled, pullback: pb, projection })
}

/// Witness that `s ≠ sk'q' + ss'p'` at `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionObstruction {
    pub witness: usize,
    /// `s(b)`
    pub section_value: usize,
    /// `(sk'q' + ss'p')(b)`
    pub recombined_value: usize,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Composition {
    Composite { semibiproduct: Semibiproduct, pullback: Pullback },
    Obstruction(CompositionObstruction),
}

impl Composition {
    pub fn composite(&self) -> Option<&Semibiproduct> {
        match self {
            Composition::Composite { semibiproduct, .. } => Some(semibiproduct),
            Composition::Obstruction(_) => None,
        }
    }
}

/// The tuple `(A ×_B C, A, D, p'p, π1, q'', ss')` with
/// `π1 q'' = kq + sk'q'p` and `π2 q'' = q'p`, without checking whether it
/// is a semibiproduct.
pub fn composite_candidate(first: &Semibiproduct, second: &Semibiproduct) -> Result<(Semibiproduct, Pullback)> {
    if first.b() != second.a() {
        return Err(Error::MiddleMismatch);
    }
    let (a, p, k, q, s) = (first.a(), first.p(), first.k(), first.q(), first.s());
    let (p2, k2, q2, s2) = (second.p(), second.k(), second.q(), second.s());
    let pb = pullback(p, k2)?;
    let mut q_values = Vec::with_capacity(a.size());
    for e in a.elements() {
        let kq = k.apply(q.apply(e));
        let correction = s.apply(k2.apply(q2.apply(p.apply(e))));
        let left = a.op(kq, correction);
        let right = q2.apply(p.apply(e));
        let idx = pb
            .pair_index(left, right)
            .ok_or_else(|| Error::InvalidSemibiproduct(verify_semibiproduct(first, Pointedness::Require)))?;
        q_values.push(idx);
    }
    let q_comp = PointedMap::new(a.clone(), pb.monoid.clone(), q_values)?;
    let p_comp = p2.after(p)?;
    let s_comp = PointedMap::from_fn(second.b(), a, |d| s.apply(s2.apply(d)));
    let sbp = Semibiproduct::new(p_comp, pb.pi1.clone(), q_comp, s_comp)?;
    Ok((sbp, pb))
}

/// Composes `first = (X, A, B, ...)` with `second = (C, B, D, ...)` when
/// `s = sk'q' + ss'p'`; otherwise returns the first `b` where this fails.
pub fn compose_semibiproducts(first: &Semibiproduct, second: &Semibiproduct) -> Result<Composition> {
    if first.b() != second.a() {
        return Err(Error::MiddleMismatch);
    }
    let (a, s) = (first.a(), first.s());
    let (p2, k2, q2, s2) = (second.p(), second.k(), second.q(), second.s());
    for b in first.b().elements() {
        let recombined = a.op(s.apply(k2.apply(q2.apply(b))), s.apply(s2.apply(p2.apply(b))));
        if recombined != s.apply(b) {
            return Ok(Composition::Obstruction(CompositionObstruction {
                witness: b,
                section_value: s.apply(b),
                recombined_value: recombined,
            }));
        }
    }
    let (sbp, pullback) = composite_candidate(first, second)?;
    let report = verify_semibiproduct(&sbp, Pointedness::Require);
    if !report.passed() {
        return Err(Error::InvalidSemibiproduct(report));
    }
    Ok(Composition::Composite { semibiproduct: sbp, pullback })
}

/// Exhaustive search for all `(p, k, q, s)` on the given carriers that
/// satisfy `ps = 1`, `qk = 1`, `kq + sp = 1` (and the pointedness laws when
/// required). Candidates for `q` are pruned pointwise by `kq + sp = 1`.
pub fn search_semibiproducts(x: &Monoid, a: &Monoid, b: &Monoid, pointedness: Pointedness) -> Vec<Semibiproduct> {
    let mut out = Vec::new();
    let ps = homomorphisms(a, b);
    let ks = homomorphisms(x, a);
    for p in &ps {
        // s(e) ranges over preimages of e
        let fibres: Vec<Vec<usize>> = b
            .elements()
            .map(|e| if e == 0 { vec![0] } else { a.elements().filter(|&v| p.apply(v) == e).collect() })
            .collect();
        if fibres.iter().any(|f| f.is_empty()) {
            continue;
        }
        for k in &ks {
            if pointedness == Pointedness::Require && !x.elements().all(|e| p.apply(k.apply(e)) == 0) {
                continue;
            }
            if !k.is_injective() {
                continue;
            }
            for s_values in cartesian(&fibres) {
                let s = PointedMap::from_fn(b, a, |e| s_values[e]);
                let q_choices: Vec<Vec<usize>> = a
                    .elements()
                    .map(|e| {
                        let sp = s.apply(p.apply(e));
                        x.elements()
                            .filter(|&v| a.op(k.apply(v), sp) == e)
                            .filter(|&v| x.elements().all(|w| k.apply(w) != e || w == v))
                            .filter(|&v| e != 0 || v == 0)
                            .collect()
                    })
                    .collect();
                if q_choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                for q_values in cartesian(&q_choices) {
                    let q = PointedMap::from_fn(a, x, |e| q_values[e]);
                    let sbp =
                        Semibiproduct::new(p.clone(), k.clone(), q, s.clone()).expect("carriers fit by construction");
                    if verify_semibiproduct(&sbp, pointedness).passed() {
                        out.push(sbp);
                    }
                }
            }
        }
    }
    out
}

fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&o| {
                    let mut next = prefix.clone();
                    next.push(o);
                    next
                })
            })
            .collect()
    })
}
