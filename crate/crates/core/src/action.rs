//! Pointed monoid action systems `(X, B, ρ, φ, γ)` and the functors that
//! relate them to pointed semibiproducts.
//!
//! Matrix conventions: `ρ` is indexed `[x][b]`, `φ` is indexed `[b][x]` and
//! `γ` is indexed `[b][b']`, all with values in `X`.
//!
//! * [`functor_q`] realizes a system as the monoid `R` of pairs `(x, b)` with
//!   `ρ(x, b) = x` under
//!   `(x, b) + (x', b') = (ρ(x + φ(b, x') + γ(b, b'), b + b'), b + b')`.
//! * [`functor_p`] reads a system off a semibiproduct:
//!   `ρ(x, b) = q(k(x) + s(b))`, `φ(b, x) = q(s(b) + k(x))`,
//!   `γ(b, b') = q(s(b) + s(b'))`.
//! * [`roundtrip_witness`] gives the isomorphism `A ≅ R` through
//!   `α(a) = (q(a), p(a))` and `β(x, b) = k(x) + s(b)`.

use std::collections::HashMap;
use std::convert::Infallible;
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{Homomorphism, Monoid, MonoidTable, PointedMap};
use crate::report::VerificationReport;
use crate::semibiproduct::{verify_semibiproduct, Pointedness, PsbMorphism, Semibiproduct};

pub const RHO_UNIT: &str = "rho(x,0)=x";
pub const RHO_ZERO: &str = "rho(0,b)=0";
pub const PHI_UNIT: &str = "phi(0,x)=x";
pub const PHI_ZERO: &str = "phi(b,0)=0";
pub const GAMMA_RIGHT_ZERO: &str = "gamma(b,0)=0";
pub const GAMMA_LEFT_ZERO: &str = "gamma(0,b)=0";
pub const RHO_IDEMPOTENT: &str = "rho(rho(x,b),b)=rho(x,b)";
pub const PHI_FIXED: &str = "rho(phi(b,x),b)=phi(b,x)";
pub const GAMMA_FIXED: &str = "rho(gamma(b,b'),b+b')=gamma(b,b')";
/// Associativity of the realized operation, quantified over
/// `(x, x', x'', b, b', b'')`.
pub const ASSOCIATIVITY: &str = "associativity";

pub const MOR_RHO: &str = "f(rho(x,b))=rho'(f(x),g(b))";
pub const MOR_PHI: &str = "f(phi(b,x))=phi'(g(b),f(x))";
pub const MOR_GAMMA: &str = "f(gamma(b,b'))=gamma'(g(b),g(b'))";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ActionSystem {
    x: Monoid,
    b: Monoid,
    rho: Vec<usize>,
    phi: Vec<usize>,
    gamma: Vec<usize>,
}

impl fmt::Debug for ActionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ActionSystem")
            .field("X", &self.x.rows())
            .field("B", &self.b.rows())
            .field("rho", &self.rho_rows())
            .field("phi", &self.phi_rows())
            .field("gamma", &self.gamma_rows())
            .finish()
    }
}

fn flatten(name: &str, rows: Vec<Vec<usize>>, nrows: usize, ncols: usize) -> Result<Vec<usize>> {
    if rows.len() != nrows {
        return Err(Error::DimensionMismatch(format!("{name} has {} rows, expected {nrows}", rows.len())));
    }
    let mut out = Vec::with_capacity(nrows * ncols);
    for (i, r) in rows.into_iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::DimensionMismatch(format!("{name} row {i} has {} entries, expected {ncols}", r.len())));
        }
        out.extend(r);
    }
    Ok(out)
}

impl ActionSystem {
    /// Builds a system from nested matrices `rho[x][b]`, `phi[b][x]`, `gamma[b][b']`.
    pub fn new(
        x: Monoid,
        b: Monoid,
        rho: Vec<Vec<usize>>,
        phi: Vec<Vec<usize>>,
        gamma: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (nx, nb) = (x.size(), b.size());
        let rho = flatten("rho", rho, nx, nb)?;
        let phi = flatten("phi", phi, nb, nx)?;
        let gamma = flatten("gamma", gamma, nb, nb)?;
        Self::from_flat(x, b, rho, phi, gamma)
    }

    pub fn from_flat(x: Monoid, b: Monoid, rho: Vec<usize>, phi: Vec<usize>, gamma: Vec<usize>) -> Result<Self> {
        let (nx, nb) = (x.size(), b.size());
        for (name, v, len, cols) in
            [("rho", &rho, nx * nb, nb), ("phi", &phi, nb * nx, nx), ("gamma", &gamma, nb * nb, nb)]
        {
            if v.len() != len {
                return Err(Error::DimensionMismatch(format!("{name} has {} entries, expected {len}", v.len())));
            }
            if let Some((idx, &value)) = v.iter().enumerate().find(|(_, &e)| e >= nx) {
                return Err(Error::IndexOutOfRange { i: idx / cols, j: idx % cols, value, size: nx });
            }
        }
        Ok(ActionSystem { x, b, rho, phi, gamma })
    }

    /// `ρ(x, b) = x`, `φ(b, x) = x`, `γ = 0`: the direct product.
    pub fn trivial(x: &Monoid, b: &Monoid) -> Self {
        let (nx, nb) = (x.size(), b.size());
        ActionSystem {
            x: x.clone(),
            b: b.clone(),
            rho: (0..nx * nb).map(|i| i / nb).collect(),
            phi: (0..nb * nx).map(|i| i % nx).collect(),
            gamma: vec![0; nb * nb],
        }
    }

    pub fn x(&self) -> &Monoid {
        &self.x
    }

    pub fn b(&self) -> &Monoid {
        &self.b
    }

    #[inline]
    pub fn rho(&self, x: usize, b: usize) -> usize {
        self.rho[x * self.b.size() + b]
    }

    #[inline]
    pub fn phi(&self, b: usize, x: usize) -> usize {
        self.phi[b * self.x.size() + x]
    }

    #[inline]
    pub fn gamma(&self, b: usize, b2: usize) -> usize {
        self.gamma[b * self.b.size() + b2]
    }

    pub fn rho_flat(&self) -> &[usize] {
        &self.rho
    }

    pub fn phi_flat(&self) -> &[usize] {
        &self.phi
    }

    pub fn gamma_flat(&self) -> &[usize] {
        &self.gamma
    }

    pub fn rho_rows(&self) -> Vec<Vec<usize>> {
        self.rho.chunks(self.b.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn phi_rows(&self) -> Vec<Vec<usize>> {
        self.phi.chunks(self.x.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn gamma_rows(&self) -> Vec<Vec<usize>> {
        self.gamma.chunks(self.b.size()).map(<[usize]>::to_vec).collect()
    }

    /// `γ = 0`: the section `b ↦ (0, b)` of the realization is a homomorphism.
    pub fn is_split(&self) -> bool {
        self.gamma.iter().all(|&v| v == 0)
    }

    /// `ρ(x, b) = x` everywhere: the realization is all of `X × B`.
    pub fn is_schreier(&self) -> bool {
        self.x.elements().all(|x| self.b.elements().all(|b| self.rho(x, b) == x))
    }

    /// Transports the system along bijections `sx` of `X` and `sb` of `B`
    /// (old index -> new index), both fixing 0.
    pub fn relabel(&self, sx: &[usize], sb: &[usize]) -> ActionSystem {
        let (nx, nb) = (self.x.size(), self.b.size());
        let mut rho = vec![0; nx * nb];
        let mut phi = vec![0; nb * nx];
        let mut gamma = vec![0; nb * nb];
        for x in 0..nx {
            for b in 0..nb {
                rho[sx[x] * nb + sb[b]] = sx[self.rho(x, b)];
                phi[sb[b] * nx + sx[x]] = sx[self.phi(b, x)];
            }
        }
        for b in 0..nb {
            for b2 in 0..nb {
                gamma[sb[b] * nb + sb[b2]] = sx[self.gamma(b, b2)];
            }
        }
        ActionSystem {
            x: std::sync::Arc::new(self.x.relabel(sx)),
            b: std::sync::Arc::new(self.b.relabel(sb)),
            rho,
            phi,
            gamma,
        }
    }

    pub fn verify(&self) -> VerificationReport {
        verify_action_system(self)
    }
}

/// Both sides of the associativity law for
/// `w = [x, x', x'', b, b', b'']`. Lookups may fail with `E`, which lets the
/// enumerator evaluate partially filled matrices.
pub(crate) fn associativity_sides<E>(
    xm: &MonoidTable,
    bm: &MonoidTable,
    rho: impl Fn(usize, usize) -> Result<usize, E>,
    phi: impl Fn(usize, usize) -> Result<usize, E>,
    gamma: impl Fn(usize, usize) -> Result<usize, E>,
    w: [usize; 6],
) -> Result<(usize, usize), E> {
    let [x0, x1, x2, b0, b1, b2] = w;
    let b01 = bm.op(b0, b1);
    let b12 = bm.op(b1, b2);
    let b012 = bm.op(b01, b2);

    let inner = rho(xm.op(xm.op(x0, phi(b0, x1)?), gamma(b0, b1)?), b01)?;
    let lhs = rho(xm.op(xm.op(inner, phi(b01, x2)?), gamma(b01, b2)?), b012)?;

    let inner = rho(xm.op(xm.op(x1, phi(b1, x2)?), gamma(b1, b2)?), b12)?;
    let rhs = rho(xm.op(xm.op(x0, phi(b0, inner)?), gamma(b0, b12)?), b012)?;
    Ok((lhs, rhs))
}

/// Lexicographically first `[x, x', x'', b, b', b'']` where associativity fails.
fn associativity_violation(t: &ActionSystem) -> Option<[usize; 6]> {
    let (nx, nb) = (t.x.size(), t.b.size());
    let ok = |a, b| Ok::<_, Infallible>(t.rho(a, b));
    let ph = |a, b| Ok::<_, Infallible>(t.phi(a, b));
    let ga = |a, b| Ok::<_, Infallible>(t.gamma(a, b));
    for x0 in 0..nx {
        for x1 in 0..nx {
            for x2 in 0..nx {
                for b0 in 0..nb {
                    for b1 in 0..nb {
                        for b2 in 0..nb {
                            let w = [x0, x1, x2, b0, b1, b2];
                            let Ok((l, r)) = associativity_sides(&t.x, &t.b, ok, ph, ga, w);
                            if l != r {
                                return Some(w);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks every axiom. Pointwise axioms report all witnesses; associativity
/// reports the lexicographically first failing assignment.
pub fn verify_action_system(t: &ActionSystem) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (xm, bm) = (&t.x, &t.b);
    for x in xm.elements() {
        if t.rho(x, 0) != x {
            report.push(RHO_UNIT, vec![x]);
        }
        if t.phi(0, x) != x {
            report.push(PHI_UNIT, vec![x]);
        }
    }
    for b in bm.elements() {
        if t.rho(0, b) != 0 {
            report.push(RHO_ZERO, vec![b]);
        }
        if t.phi(b, 0) != 0 {
            report.push(PHI_ZERO, vec![b]);
        }
        if t.gamma(b, 0) != 0 {
            report.push(GAMMA_RIGHT_ZERO, vec![b]);
        }
        if t.gamma(0, b) != 0 {
            report.push(GAMMA_LEFT_ZERO, vec![b]);
        }
    }
    for x in xm.elements() {
        for b in bm.elements() {
            let r = t.rho(x, b);
            if t.rho(r, b) != r {
                report.push(RHO_IDEMPOTENT, vec![x, b]);
            }
        }
    }
    for b in bm.elements() {
        for x in xm.elements() {
            let f = t.phi(b, x);
            if t.rho(f, b) != f {
                report.push(PHI_FIXED, vec![b, x]);
            }
        }
    }
    for b in bm.elements() {
        for b2 in bm.elements() {
            let g = t.gamma(b, b2);
            if t.rho(g, bm.op(b, b2)) != g {
                report.push(GAMMA_FIXED, vec![b, b2]);
            }
        }
    }
    if let Some(w) = associativity_violation(t) {
        report.push(ASSOCIATIVITY, w.to_vec());
    }
    report
}

/// The monoid `R = {(x, b) | ρ(x, b) = x}` with its four structure maps.
#[derive(Debug, Clone)]
pub struct SyntheticRealization {
    pub base: ActionSystem,
    /// Pairs `(x, b)` in lexicographic order; position = element index in `monoid`.
    pub carrier: Vec<(usize, usize)>,
    pub monoid: Monoid,
    /// `⟨1,0⟩: X → R`
    pub kernel_inclusion: Homomorphism,
    /// `π_B: R → B`
    pub projection: Homomorphism,
    /// `π_X: R → X`
    pub retraction: PointedMap,
    /// `⟨0,1⟩: B → R`
    pub section: PointedMap,
    index: HashMap<(usize, usize), usize>,
}

impl SyntheticRealization {
    pub fn index_of(&self, x: usize, b: usize) -> Option<usize> {
        self.index.get(&(x, b)).copied()
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.carrier[i]
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// `(X, R, B, π_B, ⟨1,0⟩, π_X, ⟨0,1⟩)`.
    pub fn semibiproduct(&self) -> Semibiproduct {
        Semibiproduct::new(
            self.projection.clone(),
            self.kernel_inclusion.clone(),
            self.retraction.clone(),
            self.section.clone(),
        )
        .expect("structure maps fit by construction")
    }

    /// The realized operation on pairs, evaluated directly from the system.
    pub fn combine(&self, (x0, b0): (usize, usize), (x1, b1): (usize, usize)) -> (usize, usize) {
        synthetic_op(&self.base, (x0, b0), (x1, b1))
    }
}

fn synthetic_op(t: &ActionSystem, (x0, b0): (usize, usize), (x1, b1): (usize, usize)) -> (usize, usize) {
    let (xm, bm) = (&t.x, &t.b);
    let bb = bm.op(b0, b1);
    let sum = xm.op(xm.op(x0, t.phi(b0, x1)), t.gamma(b0, b1));
    (t.rho(sum, bb), bb)
}

/// Realizes a valid action system as a semibiproduct over its monoid `R`.
pub fn functor_q(t: &ActionSystem) -> Result<SyntheticRealization> {
    let report = verify_action_system(t);
    if !report.passed() {
        return Err(Error::InvalidActionSystem(report));
    }
    let (xm, bm) = (t.x.clone(), t.b.clone());
    let carrier: Vec<(usize, usize)> =
        xm.elements().flat_map(|x| bm.elements().map(move |b| (x, b))).filter(|&(x, b)| t.rho(x, b) == x).collect();
    let index: HashMap<(usize, usize), usize> = carrier.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = carrier.len();
    let mut table = Vec::with_capacity(n * n);
    for &u in &carrier {
        for &v in &carrier {
            let w = synthetic_op(t, u, v);
            let idx = index
                .get(&w)
                .copied()
                .ok_or_else(|| Error::CarrierMismatch(format!("{u:?}+{v:?} = {w:?} leaves the carrier")))?;
            table.push(idx);
        }
    }
    let labels = carrier.iter().map(|&(x, b)| format!("({},{})", xm.label(x), bm.label(b))).collect();
    let monoid = MonoidTable::from_flat(n, table, Some(labels))?;
    let kernel_inclusion =
        Homomorphism::new(xm.clone(), monoid.clone(), xm.elements().map(|x| index[&(x, 0)]).collect())?;
    let projection = Homomorphism::new(monoid.clone(), bm.clone(), carrier.iter().map(|p| p.1).collect())?;
    let retraction = PointedMap::new(monoid.clone(), xm.clone(), carrier.iter().map(|p| p.0).collect())?;
    let section = PointedMap::new(bm.clone(), monoid.clone(), bm.elements().map(|b| index[&(0, b)]).collect())?;
    Ok(SyntheticRealization {
        base: t.clone(),
        carrier,
        monoid,
        kernel_inclusion,
        projection,
        retraction,
        section,
        index,
    })
}

/// Reads `(ρ, φ, γ)` off a verified semibiproduct.
pub fn functor_p(sbp: &Semibiproduct) -> Result<ActionSystem> {
    let report = verify_semibiproduct(sbp, Pointedness::Require);
    if !report.passed() {
        return Err(Error::InvalidSemibiproduct(report));
    }
    let (xm, am, bm) = (sbp.x(), sbp.a(), sbp.b());
    let (k, q, s) = (sbp.k(), sbp.q(), sbp.s());
    let (nx, nb) = (xm.size(), bm.size());
    let rho = (0..nx * nb).map(|i| q.apply(am.op(k.apply(i / nb), s.apply(i % nb)))).collect();
    let phi = (0..nb * nx).map(|i| q.apply(am.op(s.apply(i / nx), k.apply(i % nx)))).collect();
    let gamma = (0..nb * nb).map(|i| q.apply(am.op(s.apply(i / nb), s.apply(i % nb)))).collect();
    ActionSystem::from_flat(xm.clone(), bm.clone(), rho, phi, gamma)
}

/// A pair `(f, g)` of homomorphisms between action systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActMorphism {
    pub source: ActionSystem,
    pub target: ActionSystem,
    pub f: Homomorphism,
    pub g: Homomorphism,
}

impl ActMorphism {
    pub fn new(source: ActionSystem, target: ActionSystem, f: Homomorphism, g: Homomorphism) -> Result<Self> {
        if f.dom() != source.x() || f.cod() != target.x() {
            return Err(Error::CarrierMismatch("f must map X to X'".into()));
        }
        if g.dom() != source.b() || g.cod() != target.b() {
            return Err(Error::CarrierMismatch("g must map B to B'".into()));
        }
        Ok(ActMorphism { source, target, f, g })
    }

    pub fn identity(t: &ActionSystem) -> Self {
        ActMorphism {
            source: t.clone(),
            target: t.clone(),
            f: Homomorphism::identity(t.x()),
            g: Homomorphism::identity(t.b()),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ActMorphism) -> Result<ActMorphism> {
        if self.target != next.source {
            return Err(Error::CarrierMismatch("morphisms are not composable".into()));
        }
        Ok(ActMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f: next.f.after(&self.f)?,
            g: next.g.after(&self.g)?,
        })
    }
}

pub fn is_act_morphism(m: &ActMorphism) -> VerificationReport {
    let (src, tgt, f, g) = (&m.source, &m.target, &m.f, &m.g);
    let mut report = VerificationReport::new();
    for x in src.x().elements() {
        for b in src.b().elements() {
            if f.apply(src.rho(x, b)) != tgt.rho(f.apply(x), g.apply(b)) {
                report.push(MOR_RHO, vec![x, b]);
            }
        }
    }
    for b in src.b().elements() {
        for x in src.x().elements() {
            if f.apply(src.phi(b, x)) != tgt.phi(g.apply(b), f.apply(x)) {
                report.push(MOR_PHI, vec![b, x]);
            }
        }
    }
    for b in src.b().elements() {
        for b2 in src.b().elements() {
            if f.apply(src.gamma(b, b2)) != tgt.gamma(g.apply(b), g.apply(b2)) {
                report.push(MOR_GAMMA, vec![b, b2]);
            }
        }
    }
    report
}

/// `R(f, g)(x, b) = (f(x), g(b))` between two realizations.
pub fn realize_pair_map(
    source: &SyntheticRealization,
    target: &SyntheticRealization,
    f: &Homomorphism,
    g: &Homomorphism,
) -> Result<Homomorphism> {
    let mut values = Vec::with_capacity(source.size());
    for &(x, b) in &source.carrier {
        let image = (f.apply(x), g.apply(b));
        values.push(target.index_of(image.0, image.1).ok_or_else(|| {
            Error::CarrierMismatch(format!("({x},{b}) maps to {image:?}, outside the target carrier"))
        })?);
    }
    Homomorphism::new(source.monoid.clone(), target.monoid.clone(), values)
}

/// `(f, g) ↦ (f, R(f, g), g)` between the realizations.
pub fn act_to_psb_morphism(m: &ActMorphism) -> Result<PsbMorphism> {
    let report = is_act_morphism(m);
    if !report.passed() {
        return Err(Error::InvalidActionSystem(report));
    }
    let src = functor_q(&m.source)?;
    let tgt = functor_q(&m.target)?;
    let middle = realize_pair_map(&src, &tgt, &m.f, &m.g)?;
    PsbMorphism::new(src.semibiproduct(), tgt.semibiproduct(), m.f.clone(), middle, m.g.clone())
}

/// `(f1, f2, f3) ↦ (f1, f3)`.
pub fn psb_to_act_morphism(m: &PsbMorphism) -> Result<ActMorphism> {
    ActMorphism::new(functor_p(&m.source)?, functor_p(&m.target)?, m.f1.clone(), m.f3.clone())
}

/// Mutually inverse isomorphisms between `A` and the realization of its action system.
#[derive(Debug, Clone)]
pub struct RoundtripWitness {
    pub semibiproduct: Semibiproduct,
    pub realization: SyntheticRealization,
    /// `α(a) = (q(a), p(a))`
    pub alpha: Homomorphism,
    /// `β(x, b) = k(x) + s(b)`
    pub beta: Homomorphism,
}

fn roundtrip_maps(sbp: &Semibiproduct, real: &SyntheticRealization) -> Result<(PointedMap, PointedMap)> {
    let (am, k, p, q, s) = (sbp.a(), sbp.k(), sbp.p(), sbp.q(), sbp.s());
    let mut alpha = Vec::with_capacity(am.size());
    for a in am.elements() {
        let pair = (q.apply(a), p.apply(a));
        alpha.push(
            real.index_of(pair.0, pair.1)
                .ok_or_else(|| Error::CarrierMismatch(format!("alpha({a}) = {pair:?} is not in the realization")))?,
        );
    }
    let beta = real.carrier.iter().map(|&(x, b)| am.op(k.apply(x), s.apply(b))).collect();
    Ok((
        PointedMap::new(am.clone(), real.monoid.clone(), alpha)?,
        PointedMap::new(real.monoid.clone(), am.clone(), beta)?,
    ))
}

fn roundtrip_report(
    sbp: &Semibiproduct,
    real: &SyntheticRealization,
    alpha: &PointedMap,
    beta: &PointedMap,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    for a in sbp.a().elements() {
        if beta.apply(alpha.apply(a)) != a {
            report.push("beta.alpha=1_A", vec![a]);
        }
    }
    for r in real.monoid.elements() {
        if alpha.apply(beta.apply(r)) != r {
            report.push("alpha.beta=1_R", vec![r]);
        }
    }
    if let Some((i, j)) = alpha.homomorphism_violation() {
        report.push("alpha homomorphism", vec![i, j]);
    }
    if let Some((i, j)) = beta.homomorphism_violation() {
        report.push("beta homomorphism", vec![i, j]);
    }
    report
}

/// Builds `α` and `β` for a verified semibiproduct and checks that they are
/// inverse homomorphisms compatible with the structure maps.
pub fn roundtrip_witness(sbp: &Semibiproduct) -> Result<RoundtripWitness> {
    let t = functor_p(sbp)?;
    let realization = functor_q(&t)?;
    let (alpha, beta) = roundtrip_maps(sbp, &realization)?;
    let report = roundtrip_report(sbp, &realization, &alpha, &beta);
    if !report.passed() {
        return Err(Error::InvalidSemibiproduct(report));
    }
    let witness = RoundtripWitness {
        semibiproduct: sbp.clone(),
        realization,
        alpha: Homomorphism::from_map_unchecked(alpha),
        beta: Homomorphism::from_map_unchecked(beta),
    };
    let compat = witness.check();
    if !compat.passed() {
        return Err(Error::InvalidSemibiproduct(compat));
    }
    Ok(witness)
}

impl RoundtripWitness {
    /// `(1_X, α, 1_B)` from the semibiproduct to its realization.
    pub fn forward_morphism(&self) -> PsbMorphism {
        PsbMorphism::new(
            self.semibiproduct.clone(),
            self.realization.semibiproduct(),
            Homomorphism::identity(self.semibiproduct.x()),
            self.alpha.clone(),
            Homomorphism::identity(self.semibiproduct.b()),
        )
        .expect("carriers fit by construction")
    }

    /// `(1_X, β, 1_B)` from the realization back to the semibiproduct.
    pub fn backward_morphism(&self) -> PsbMorphism {
        PsbMorphism::new(
            self.realization.semibiproduct(),
            self.semibiproduct.clone(),
            Homomorphism::identity(self.semibiproduct.x()),
            self.beta.clone(),
            Homomorphism::identity(self.semibiproduct.b()),
        )
        .expect("carriers fit by construction")
    }

    /// Re-checks every invariant: inverse pair, homomorphisms, and both
    /// `(1, α, 1)` and `(1, β, 1)` being semibiproduct morphisms.
    pub fn check(&self) -> VerificationReport {
        let mut report = roundtrip_report(&self.semibiproduct, &self.realization, &self.alpha, &self.beta);
        report.merge(crate::semibiproduct::is_psb_morphism(&self.forward_morphism()));
        report.merge(crate::semibiproduct::is_psb_morphism(&self.backward_morphism()));
        report
    }

    /// Naturality along `m: S → S'`, where `self` belongs to `S` and `other`
    /// to `S'`: `α' ∘ f2 = R(f1, f3) ∘ α` and `β' ∘ R(f1, f3) = f2 ∘ β`.
    pub fn naturality(&self, other: &RoundtripWitness, m: &PsbMorphism) -> Result<VerificationReport> {
        if m.source != self.semibiproduct || m.target != other.semibiproduct {
            return Err(Error::CarrierMismatch("morphism does not connect the two witnesses".into()));
        }
        let middle = realize_pair_map(&self.realization, &other.realization, &m.f1, &m.f3)?;
        let mut report = VerificationReport::new();
        for a in self.semibiproduct.a().elements() {
            if other.alpha.apply(m.f2.apply(a)) != middle.apply(self.alpha.apply(a)) {
                report.push("alpha'.f2=R(f1,f3).alpha", vec![a]);
            }
        }
        for r in self.realization.monoid.elements() {
            if other.beta.apply(middle.apply(r)) != m.f2.apply(self.beta.apply(r)) {
                report.push("beta'.R(f1,f3)=f2.beta", vec![r]);
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{are_isomorphic, cyclic_group, find_isomorphisms, product_monoid};
    use crate::registry::{group_two, idempotent_two};

    // 2x2 matrices with 1 ↦ 0 and 2 ↦ 1
    const RHO0: [[usize; 2]; 2] = [[0, 0], [1, 1]];
    const RHO1: [[usize; 2]; 2] = [[0, 0], [1, 0]];
    const PHI0: [[usize; 2]; 2] = [[0, 1], [0, 1]];
    const PHI1: [[usize; 2]; 2] = [[0, 1], [0, 0]];
    const GAMMA0: [[usize; 2]; 2] = [[0, 0], [0, 0]];
    const GAMMA1: [[usize; 2]; 2] = [[0, 0], [0, 1]];

    fn sys(x: Monoid, b: Monoid, r: [[usize; 2]; 2], p: [[usize; 2]; 2], g: [[usize; 2]; 2]) -> ActionSystem {
        let rows = |m: [[usize; 2]; 2]| m.iter().map(|r| r.to_vec()).collect();
        ActionSystem::new(x, b, rows(r), rows(p), rows(g)).unwrap()
    }

    #[test]
    fn verification_examples() {
        let (m, g) = (idempotent_two(), group_two());
        assert!(sys(g.clone(), g.clone(), RHO0, PHI0, GAMMA1).verify().passed());
        assert!(!sys(m.clone(), g.clone(), RHO1, PHI1, GAMMA0).verify().passed());
        assert!(sys(m.clone(), g.clone(), RHO1, PHI1, GAMMA1).verify().passed());
        for (x, b) in [(m.clone(), g.clone()), (cyclic_group(3), m.clone())] {
            assert!(ActionSystem::trivial(&x, &b).verify().passed());
        }
    }

    #[test]
    fn pointwise_axioms_report_witnesses() {
        let g = group_two();
        let t = ActionSystem::from_flat(g.clone(), g.clone(), vec![0, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 0, 0])
            .unwrap();
        let report = t.verify();
        assert_eq!(report.witness(RHO_ZERO), Some(&[1][..]));
        assert!(ActionSystem::new(g.clone(), g.clone(), vec![vec![0]], vec![], vec![]).is_err());
        assert!(matches!(
            ActionSystem::from_flat(g.clone(), g.clone(), vec![0, 0, 1, 2], vec![0; 4], vec![0; 4]),
            Err(Error::IndexOutOfRange { value: 2, .. })
        ));
    }

    #[test]
    fn realization_of_cyclic_extension_is_z4() {
        let g = group_two();
        let real = functor_q(&sys(g.clone(), g.clone(), RHO0, PHI0, GAMMA1)).unwrap();
        assert_eq!(real.size(), 4);
        assert!(are_isomorphic(&real.monoid, &cyclic_group(4)));
        assert!(real.semibiproduct().verify(Pointedness::Require).passed());
    }

    #[test]
    fn realization_with_nontrivial_rho_drops_a_pair() {
        let m = idempotent_two();
        let real = functor_q(&sys(m.clone(), m.clone(), RHO1, PHI1, GAMMA0)).unwrap();
        assert_eq!(real.carrier, vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(real.monoid.labels().unwrap(), &["(0,0)", "(0,1)", "(1,0)"]);
    }

    #[test]
    fn trivial_system_realizes_the_direct_product() {
        let (m, g) = (idempotent_two(), group_two());
        let real = functor_q(&ActionSystem::trivial(&m, &g)).unwrap();
        assert_eq!(*real.monoid, *product_monoid(&m, &g));
        assert_eq!(functor_p(&Semibiproduct::direct_product(&m, &g)).unwrap(), ActionSystem::trivial(&m, &g));
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let (m, g) = (idempotent_two(), group_two());
        assert!(matches!(functor_q(&sys(m, g.clone(), RHO1, PHI1, GAMMA0)), Err(Error::InvalidActionSystem(_))));
        assert!(matches!(functor_p(&Semibiproduct::diagonal(&g)), Err(Error::InvalidSemibiproduct(_))));
    }

    #[test]
    fn act_morphism_examples() {
        let g = group_two();
        let t = sys(g.clone(), g.clone(), RHO0, PHI0, GAMMA1);
        assert!(is_act_morphism(&ActMorphism::identity(&t)).passed());
        let bad =
            ActMorphism::new(t.clone(), t.clone(), Homomorphism::zero(&g, &g), Homomorphism::identity(&g)).unwrap();
        let report = is_act_morphism(&bad);
        assert!(!report.passed());
        assert_eq!(report.witness(MOR_GAMMA), Some(&[1, 1][..]));
        let psb = act_to_psb_morphism(&ActMorphism::identity(&t)).unwrap();
        assert!(crate::semibiproduct::is_psb_morphism(&psb).passed());
    }

    #[test]
    fn roundtrip_on_direct_product_is_a_relabeling() {
        let (m, g) = (idempotent_two(), group_two());
        let sbp = Semibiproduct::direct_product(&m, &g);
        let w = roundtrip_witness(&sbp).unwrap();
        // carrier order matches the product pairing, so α is the identity on indices
        assert!(w.alpha.values().iter().enumerate().all(|(i, &v)| i == v));
        assert!(w.check().passed());
        let n = w.naturality(&w, &PsbMorphism::identity(&sbp)).unwrap();
        assert!(n.passed());
    }

    #[test]
    fn automorphisms_of_the_realization_are_natural() {
        let g = group_two();
        let real = functor_q(&sys(g.clone(), g.clone(), RHO0, PHI0, GAMMA1)).unwrap();
        let sbp = real.semibiproduct();
        let w = roundtrip_witness(&sbp).unwrap();
        for f2 in find_isomorphisms(&real.monoid, &real.monoid) {
            let Ok(m) =
                PsbMorphism::new(sbp.clone(), sbp.clone(), Homomorphism::identity(&g), f2, Homomorphism::identity(&g))
            else {
                continue;
            };
            if crate::semibiproduct::is_psb_morphism(&m).passed() {
                assert!(w.naturality(&w, &m).unwrap().passed());
            }
        }
    }
}
