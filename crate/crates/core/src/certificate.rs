//! Certificates `decmin(S) = F ∩ B°` and their independent verification.
//!
//! `B°` is the smallest integer box around the dec-min set, `F` the points
//! of `S` minimizing a price `p*`. Two constructions of `p*` are offered:
//!
//! - face: perturb the base price `p_i = φ(a_i+1) − φ(a_i)` on the tight
//!   coordinates `N0` by a solution `q` of `C q ≥ d`, one row per point of
//!   `S ∩ B` that is not dec-min (`B` enlarges `B°` by one on `N0`);
//! - fenchel: keep `p*_i` inside the interval where `a_i` minimizes
//!   `φ(k) − p*_i k` and require the anchor to minimize `⟨p*, ·⟩` against
//!   every other point of `S`, so that `decmin(S)` is the intersection of
//!   `F` with the minimizers of the shifted potential `Φ[−p*]`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::linf_diameter;
use crate::lexorder::{dec_sort, decmin_set};
use crate::potential::{rapid_threshold, PowerPotential};
use crate::ratlp::{solve_feasibility, FeasibilityOutcome, IneqSystem};
use crate::types::{Certificate, IntBox, IntVec, Method, PointSet, Rat, RatVec};

/// `B° = [a, b]` around `m` with `N0 = {i : a_i = b_i}` and
/// `N1 = {i : b_i = a_i + 1}`.
pub fn smallest_box(m: &PointSet) -> Result<(IntBox, Vec<usize>, Vec<usize>)> {
    let diameter = linf_diameter(m)?;
    if diameter > BigInt::one() {
        return Err(Error::DiameterExceeds {
            diameter: diameter.to_string(),
        });
    }
    let bx = m.bounding_box().expect("nonempty");
    let (n0, n1) = split_indices(&bx);
    Ok((bx, n0, n1))
}

fn split_indices(bx: &IntBox) -> (Vec<usize>, Vec<usize>) {
    (0..bx.dim()).partition(|&i| bx.lo[i] == bx.hi[i])
}

/// `B`: `[a_i − 1, a_i + 1]` on `N0`, `[a_i, b_i]` on `N1`.
pub fn enlarged_box(inner: &IntBox, n0: &[usize], n1: &[usize]) -> Result<IntBox> {
    let n = inner.dim();
    let mut seen = vec![false; n];
    for &i in n0.iter().chain(n1) {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Precondition(format!(
                "index {} repeated or out of range in the N0/N1 partition",
                i + 1
            )));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Precondition("N0 and N1 do not cover every index".into()));
    }
    for &i in n0 {
        if inner.lo[i] != inner.hi[i] {
            return Err(Error::Precondition(format!("index {} in N0 has width > 0", i + 1)));
        }
    }
    for &i in n1 {
        if &inner.lo[i] + 1 != inner.hi[i] {
            return Err(Error::Precondition(format!("index {} in N1 has width != 1", i + 1)));
        }
    }
    let mut lo = inner.lo.coords().to_vec();
    let mut hi = inner.hi.coords().to_vec();
    for &i in n0 {
        lo[i] -= 1;
        hi[i] += 1;
    }
    Ok(IntBox {
        lo: IntVec::new(lo),
        hi: IntVec::new(hi),
    })
}

/// `p_i = φ(a_i + 1) − φ(a_i)`.
pub fn base_price(pot: &PowerPotential, a: &IntVec) -> Result<RatVec> {
    if a.dim() != pot.dim() {
        return Err(Error::DimensionMismatch {
            expected: pot.dim(),
            found: a.dim(),
        });
    }
    a.iter()
        .map(|k| Ok(pot.phi_big(&(k + 1))? - pot.phi_big(k)?))
        .collect()
}

/// Everything the face construction derives before solving for `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FarkasSystem {
    pub anchor: IntVec,
    pub inner_box: IntBox,
    pub outer_box: IntBox,
    pub n0: Vec<usize>,
    pub n1: Vec<usize>,
    pub base_price: RatVec,
    /// `(S ∩ B) \ decmin(S)` in increasing dec-order, ties broken
    /// lexicographically.
    pub offenders: Vec<IntVec>,
    /// Rows `(y − x°)|_{N0}`, right-hand sides `⟨p, x° − y⟩`.
    pub system: IneqSystem,
}

fn by_dec_order(pts: &mut [IntVec]) {
    pts.sort_by(|x, y| match dec_sort(x).cmp(&dec_sort(y)) {
        Ordering::Equal => x.cmp(y),
        o => o,
    });
}

fn check_inputs(s: &PointSet, pot: &PowerPotential) -> Result<()> {
    s.require_nonempty()?;
    s.require_dim(pot.dim())?;
    if !pot.is_rapid() {
        return Err(Error::BaseTooSmall {
            base: pot.base(),
            required: rapid_threshold(pot.dim()),
        });
    }
    Ok(())
}

fn require_anchor(m: &PointSet, anchor: &IntVec) -> Result<()> {
    if m.contains(anchor) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("anchor {anchor} is not a dec-min element")))
    }
}

/// Row `(y − x°)|_idx` and right-hand side `⟨p, x° − y⟩`.
fn offender_row(anchor: &IntVec, y: &IntVec, idx: &[usize], p: &[Rat]) -> (RatVec, Rat) {
    let row = idx
        .iter()
        .map(|&i| Rat::from_integer(&y[i] - &anchor[i]))
        .collect();
    (row, anchor.sub(y).dot(p))
}

pub fn farkas_system(s: &PointSet, pot: &PowerPotential, anchor: &IntVec) -> Result<FarkasSystem> {
    check_inputs(s, pot)?;
    let m = decmin_set(s)?;
    require_anchor(&m, anchor)?;
    let (inner_box, n0, n1) = smallest_box(&m)?;
    let outer_box = enlarged_box(&inner_box, &n0, &n1)?;
    let p = base_price(pot, &inner_box.lo)?;
    let mut offenders: Vec<IntVec> = s
        .iter()
        .filter(|y| outer_box.contains(y) && !m.contains(y))
        .cloned()
        .collect();
    by_dec_order(&mut offenders);
    let (rows, rhs): (Vec<RatVec>, RatVec) = offenders
        .iter()
        .map(|y| offender_row(anchor, y, &n0, &p))
        .unzip();
    let system = IneqSystem::new(rows, rhs, n0.len())?;
    Ok(FarkasSystem {
        anchor: anchor.clone(),
        inner_box,
        outer_box,
        n0,
        n1,
        base_price: p,
        offenders,
        system,
    })
}

fn solve_offsets(sys: &IneqSystem) -> Result<RatVec> {
    match solve_feasibility(sys) {
        FeasibilityOutcome::Solution(q) => Ok(q),
        FeasibilityOutcome::Farkas(r) => Err(Error::Infeasible { farkas: r }),
    }
}

fn perturbed(p: &[Rat], n0: &[usize], q: &[Rat]) -> RatVec {
    let mut out = p.to_vec();
    for (&i, qi) in n0.iter().zip(q) {
        out[i] += qi;
    }
    out
}

/// `(min_{x∈S} ⟨p, x⟩, argmin)`.
fn linear_argmin(s: &PointSet, p: &[Rat]) -> (Rat, PointSet) {
    let mut best: Option<Rat> = None;
    let mut keep = Vec::new();
    for x in s {
        let v = x.dot(p);
        match best.as_ref().map(|b| v.cmp(b)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => keep.push(x.clone()),
            _ => {
                best = Some(v);
                keep.clear();
                keep.push(x.clone());
            }
        }
    }
    let face = PointSet::new(s.dim(), keep).expect("points of s");
    (best.expect("nonempty"), face)
}

/// Face certificate anchored at the lexicographically smallest dec-min element.
pub fn certify_face(s: &PointSet, pot: &PowerPotential) -> Result<Certificate> {
    let anchor = decmin_set(s)?.points()[0].clone();
    certify_face_with_anchor(s, pot, &anchor)
}

pub fn certify_face_with_anchor(
    s: &PointSet,
    pot: &PowerPotential,
    anchor: &IntVec,
) -> Result<Certificate> {
    let bundle = farkas_system(s, pot, anchor)?;
    let q = solve_offsets(&bundle.system)?;
    let price = perturbed(&bundle.base_price, &bundle.n0, &q);
    let beta = anchor.dot(&price);
    let (min, face) = linear_argmin(s, &price);
    if beta != min {
        return Err(Error::ClaimViolated {
            claim: "anchor minimality over S",
            detail: format!("⟨p*, x°⟩ = {beta} but the minimum over S is {min}"),
        });
    }
    let m = decmin_set(s)?;
    let restricted = face.filter(|x| bundle.inner_box.contains(x));
    if restricted != m {
        return Err(Error::ClaimViolated {
            claim: "decmin(S) = F ∩ B°",
            detail: format!("F ∩ B° has {} points, decmin(S) has {}", restricted.len(), m.len()),
        });
    }
    Ok(Certificate {
        method: Method::Face,
        base: pot.base(),
        price,
        beta,
        inner_box: bundle.inner_box,
        n0: bundle.n0,
        n1: bundle.n1,
        face_members: face,
    })
}

/// Everything the fenchel construction derives before solving for `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FenchelSystem {
    pub inner_box: IntBox,
    pub n0: Vec<usize>,
    pub n1: Vec<usize>,
    pub base_price: RatVec,
    pub system: IneqSystem,
}

/// The system solved by [`certify_fenchel`], in the offsets `q` on `N0`:
/// `q_i ≥ φ(a_i) − φ(a_i − 1) − p_i`, `−q_i ≥ 0`, and one row
/// `⟨q, (y − x°)|_{N0}⟩ ≥ ⟨p, x° − y⟩` for every `y ∈ S \ decmin(S)`.
pub fn fenchel_system(
    s: &PointSet,
    pot: &PowerPotential,
    anchor: &IntVec,
) -> Result<FenchelSystem> {
    check_inputs(s, pot)?;
    let m = decmin_set(s)?;
    require_anchor(&m, anchor)?;
    let (inner_box, n0, n1) = smallest_box(&m)?;
    let p = base_price(pot, &inner_box.lo)?;
    let k = n0.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (j, &i) in n0.iter().enumerate() {
        let a = &inner_box.lo[i];
        let lower = pot.phi_big(a)? - pot.phi_big(&(a - 1))?;
        let mut unit = vec![Rat::zero(); k];
        unit[j] = Rat::one();
        rows.push(unit.clone());
        rhs.push(lower - &p[i]);
        rows.push(unit.into_iter().map(|v| -v).collect());
        rhs.push(Rat::zero());
    }
    let mut others: Vec<IntVec> = s.difference(&m).points().to_vec();
    by_dec_order(&mut others);
    for y in &others {
        let (row, d) = offender_row(anchor, y, &n0, &p);
        rows.push(row);
        rhs.push(d);
    }
    Ok(FenchelSystem {
        inner_box,
        n0,
        n1,
        base_price: p,
        system: IneqSystem::new(rows, rhs, k)?,
    })
}

pub fn certify_fenchel(s: &PointSet, pot: &PowerPotential) -> Result<Certificate> {
    let m = decmin_set(s)?;
    let anchor = m.points()[0].clone();
    let FenchelSystem {
        inner_box,
        n0,
        n1,
        base_price: p,
        system: sys,
    } = fenchel_system(s, pot, &anchor)?;
    let q = solve_offsets(&sys)?;
    let price = perturbed(&p, &n0, &q);
    let beta = anchor.dot(&price);
    let (min, face) = linear_argmin(s, &price);
    if beta != min {
        return Err(Error::ClaimViolated {
            claim: "anchor minimality over S",
            detail: format!("⟨p*, x°⟩ = {beta} but the minimum over S is {min}"),
        });
    }
    let argmin_box = pot.shifted_argmin_box(&price)?;
    let identity = face.filter(|x| argmin_box.contains(x));
    if identity != m {
        return Err(Error::ClaimViolated {
            claim: "decmin(S) = argmin⟨p*, ·⟩ ∩ argmin Φ[−p*]",
            detail: format!("intersection has {} points, decmin(S) has {}", identity.len(), m.len()),
        });
    }
    Ok(Certificate {
        method: Method::Fenchel,
        base: pot.base(),
        price,
        beta,
        inner_box,
        n0,
        n1,
        face_members: face,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub const CHECK_DIMENSION: &str = "dimension";
pub const CHECK_FACE: &str = "face-members";
pub const CHECK_BETA: &str = "beta-minimum";
pub const CHECK_DECMIN: &str = "decmin-equals-face-in-box";
pub const CHECK_BOX: &str = "unit-box";
pub const CHECK_FENCHEL: &str = "fenchel-identity";

/// Recomputes everything from `S` and reports each claim of `cert`
/// separately. Never fails; problems become failed checks.
pub fn verify_certificate(s: &PointSet, cert: &Certificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = s.dim();
    let dims = [
        cert.price.len(),
        cert.inner_box.dim(),
        cert.face_members.dim(),
    ];
    let dims_ok = dims.iter().all(|&d| d == n)
        && cert.n0.iter().chain(&cert.n1).all(|&i| i < n)
        && !s.is_empty();
    report.push(
        CHECK_DIMENSION,
        dims_ok,
        format!("S has dimension {n}; certificate dimensions {dims:?}"),
    );
    if !dims_ok {
        return report;
    }

    let (min, face) = linear_argmin(s, &cert.price);
    let level = s.filter(|x| x.dot(&cert.price) == cert.beta);
    report.push(
        CHECK_FACE,
        level == cert.face_members,
        format!(
            "{} points of S lie on ⟨p*, x⟩ = β; certificate lists {}",
            level.len(),
            cert.face_members.len()
        ),
    );
    report.push(
        CHECK_BETA,
        min == cert.beta,
        format!("min over S is {min}, β = {}", cert.beta),
    );

    let m = decmin_set(s).expect("nonempty");
    let restricted = cert.face_members.filter(|x| cert.inner_box.contains(x));
    report.push(
        CHECK_DECMIN,
        restricted == m,
        format!(
            "decmin(S) has {} points, face ∩ box has {}",
            m.len(),
            restricted.len()
        ),
    );

    let unit = cert
        .inner_box
        .widths()
        .iter()
        .all(|w| w.is_zero() || w.is_one());
    let (n0, n1) = split_indices(&cert.inner_box);
    let mut cn0 = cert.n0.clone();
    let mut cn1 = cert.n1.clone();
    cn0.sort_unstable();
    cn1.sort_unstable();
    report.push(
        CHECK_BOX,
        unit && n0 == cn0 && n1 == cn1,
        format!("box {} with N0/N1 consistent: {}", cert.inner_box, n0 == cn0 && n1 == cn1),
    );

    if cert.method == Method::Fenchel {
        let outcome = PowerPotential::new(cert.base, n)
            .and_then(|pot| pot.shifted_argmin_box(&cert.price))
            .map(|argmin_box| face.filter(|x| argmin_box.contains(x)));
        match outcome {
            Ok(identity) => report.push(
                CHECK_FENCHEL,
                identity == m,
                format!(
                    "argmin⟨p*, ·⟩ ∩ argmin Φ[−p*] has {} points, decmin(S) has {}",
                    identity.len(),
                    m.len()
                ),
            ),
            Err(e) => report.push(CHECK_FENCHEL, false, e.to_string()),
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityGap {
    pub primal: Rat,
    pub dual: Rat,
    pub gap: Rat,
}

/// `min_S Φ` against `θ_S(p) − Σ_i φ•(p_i)`, with `θ_S(p) = min_S ⟨p, x⟩`.
pub fn duality_gap(s: &PointSet, pot: &PowerPotential, p: &[Rat]) -> Result<DualityGap> {
    s.require_nonempty()?;
    s.require_dim(pot.dim())?;
    if p.len() != pot.dim() {
        return Err(Error::DimensionMismatch {
            expected: pot.dim(),
            found: p.len(),
        });
    }
    let mut conj = Rat::zero();
    for (i, pi) in p.iter().enumerate() {
        conj += pot
            .phi_conjugate(pi)
            .map_err(|e| crate::potential::reindex(e, i))?
            .value;
    }
    let primal = s
        .iter()
        .map(|x| pot.phi_rap_value(x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("nonempty");
    let (theta, _) = linear_argmin(s, p);
    let dual = theta - conj;
    let gap = &primal - &dual;
    Ok(DualityGap { primal, dual, gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::{emit_certificate, parse_certificate};
    use crate::types::{rat, rat_int};
    use proptest::prelude::*;

    fn pot10() -> PowerPotential {
        PowerPotential::new(10, 4).unwrap()
    }

    fn ints(v: &[i64]) -> RatVec {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn boxes_of_worked_examples() {
        let m = decmin_set(&fixtures::parallelogram()).unwrap();
        let (bx, n0, n1) = smallest_box(&m).unwrap();
        assert_eq!(bx.lo, IntVec::from([1, 0, 0, 1]));
        assert_eq!(bx.hi, IntVec::from([1, 1, 1, 1]));
        assert_eq!((n0.clone(), n1.clone()), (vec![0, 3], vec![1, 2]));
        let big = enlarged_box(&bx, &n0, &n1).unwrap();
        assert_eq!(big.lo, IntVec::from([0, 0, 0, 0]));
        assert_eq!(big.hi, IntVec::from([2, 1, 1, 2]));

        let m = decmin_set(&fixtures::m_convex_five()).unwrap();
        let (bx, n0, n1) = smallest_box(&m).unwrap();
        assert_eq!(bx.lo, IntVec::from([1, 1, 0, 0]));
        assert_eq!(bx.hi, IntVec::from([2, 2, 1, 1]));
        assert!(n0.is_empty());
        assert_eq!(enlarged_box(&bx, &n0, &n1).unwrap(), bx);

        let single = PointSet::from_i64s(1, &[&[4]]).unwrap();
        let (bx, n0, n1) = smallest_box(&single).unwrap();
        assert!(n1.is_empty());
        let big = enlarged_box(&bx, &n0, &n1).unwrap();
        assert_eq!((big.lo, big.hi), (IntVec::from([3]), IntVec::from([5])));
    }

    #[test]
    fn diameter_two_is_refused() {
        let m = decmin_set(&fixtures::non_convex_pair()).unwrap();
        assert!(matches!(smallest_box(&m), Err(Error::DiameterExceeds { .. })));
        let s = fixtures::non_convex_pair();
        assert!(matches!(certify_face(&s, &pot10()), Err(Error::DiameterExceeds { .. })));
        assert!(matches!(certify_fenchel(&s, &pot10()), Err(Error::DiameterExceeds { .. })));
    }

    #[test]
    fn inconsistent_partition_rejected() {
        let bx = IntBox::new(IntVec::from([0, 0]), IntVec::from([0, 1])).unwrap();
        assert!(enlarged_box(&bx, &[0], &[]).is_err());
        assert!(enlarged_box(&bx, &[0, 1], &[]).is_err());
        assert!(enlarged_box(&bx, &[0], &[1, 1]).is_err());
    }

    #[test]
    fn base_prices() {
        assert_eq!(base_price(&pot10(), &IntVec::from([1, 0, 0, 1])).unwrap(), ints(&[90, 9, 9, 90]));
        assert_eq!(base_price(&pot10(), &IntVec::from([1, 1, 0, 0])).unwrap(), ints(&[90, 90, 9, 9]));
        let p2 = PowerPotential::new(2, 1).unwrap();
        assert_eq!(base_price(&p2, &IntVec::from([0])).unwrap(), ints(&[1]));
        assert_eq!(base_price(&p2, &IntVec::from([-1])).unwrap(), vec![rat(1, 2)]);
    }

    #[test]
    fn farkas_system_of_parallelogram() {
        let s = fixtures::parallelogram();
        let b = farkas_system(&s, &pot10(), &IntVec::from([1, 1, 0, 1])).unwrap();
        assert_eq!(b.offenders, vec![IntVec::from([2, 0, 0, 0]), IntVec::from([0, 1, 1, 2])]);
        assert_eq!(b.system.rows(), &[ints(&[1, -1]), ints(&[-1, 1])]);
        assert_eq!(b.system.rhs(), &ints(&[9, -9])[..]);
        assert!(farkas_system(&s, &pot10(), &IntVec::from([2, 0, 0, 0])).is_err());
    }

    #[test]
    fn farkas_system_without_tight_coordinates() {
        let s = fixtures::m_convex_five();
        let b = farkas_system(&s, &pot10(), &IntVec::from([2, 1, 1, 0])).unwrap();
        assert_eq!(b.system.num_cols(), 0);
        assert_eq!(b.offenders, vec![IntVec::from([2, 2, 0, 0])]);
        assert_eq!(b.system.rhs(), &ints(&[-81])[..]);
        let m = decmin_set(&s).unwrap();
        let b = farkas_system(&m, &pot10(), &m.points()[0]).unwrap();
        assert!(b.offenders.is_empty());
        assert_eq!(b.system.num_rows(), 0);
    }

    #[test]
    fn face_certificate_of_parallelogram() {
        let s = fixtures::parallelogram();
        let c = certify_face(&s, &pot10()).unwrap();
        let p = &c.price;
        assert_eq!((&p[1], &p[2]), (&rat_int(9), &rat_int(9)));
        assert_eq!(&p[0] - rat_int(99), &p[3] - rat_int(90));
        for x in &s {
            assert_eq!(x.dot(p), c.beta);
        }
        assert_eq!(c.face_members, s);
        assert!(verify_certificate(&s, &c).passed());
    }

    #[test]
    fn fenchel_certificate_of_parallelogram() {
        let s = fixtures::parallelogram();
        let c = certify_fenchel(&s, &pot10()).unwrap();
        let p = &c.price;
        let t = p[3].clone();
        assert_eq!(p[0], &t + rat_int(9));
        assert_eq!((&p[1], &p[2]), (&rat_int(9), &rat_int(9)));
        assert!(t >= rat_int(9) && t <= rat_int(81));
        let report = verify_certificate(&s, &c);
        assert!(report.passed(), "{report}");
        assert!(report.check(CHECK_FENCHEL).unwrap().passed);
    }

    #[test]
    fn certificates_of_m_convex_five() {
        let s = fixtures::m_convex_five();
        for c in [certify_face(&s, &pot10()).unwrap(), certify_fenchel(&s, &pot10()).unwrap()] {
            assert_eq!(c.price, ints(&[90, 90, 9, 9]));
            assert_eq!(c.face_members, decmin_set(&s).unwrap());
            assert_eq!(c.inner_box.lo, IntVec::from([1, 1, 0, 0]));
            assert_eq!(c.inner_box.hi, IntVec::from([2, 2, 1, 1]));
            assert!(verify_certificate(&s, &c).passed());
        }
        let argmin = pot10().shifted_argmin_box(&ints(&[90, 90, 9, 9])).unwrap();
        assert_eq!(argmin.lo, IntVec::from([1, 1, 0, 0]));
        assert_eq!(argmin.hi, IntVec::from([2, 2, 1, 1]));
    }

    #[test]
    fn singleton_certificate() {
        let s = PointSet::from_i64s(3, &[&[2, -1, 0]]).unwrap();
        let pot = PowerPotential::new(3, 3).unwrap();
        for c in [certify_face(&s, &pot).unwrap(), certify_fenchel(&s, &pot).unwrap()] {
            assert_eq!(c.price, base_price(&pot, &IntVec::from([2, -1, 0])).unwrap());
            assert_eq!(c.face_members, s);
            assert_eq!(c.beta, s.points()[0].dot(&c.price));
            assert!(verify_certificate(&s, &c).passed());
        }
    }

    #[test]
    fn every_anchor_verifies() {
        for s in [fixtures::m_convex_five(), fixtures::parallelogram()] {
            for a in &decmin_set(&s).unwrap() {
                let c = certify_face_with_anchor(&s, &pot10(), a).unwrap();
                assert!(verify_certificate(&s, &c).passed());
            }
        }
    }

    #[test]
    fn tampering_is_detected() {
        let s = fixtures::m_convex_five();
        let c = certify_fenchel(&s, &pot10()).unwrap();

        let mut bad = c.clone();
        bad.beta += rat_int(1);
        let r = verify_certificate(&s, &bad);
        assert!(!r.check(CHECK_FACE).unwrap().passed);
        assert!(!r.check(CHECK_BETA).unwrap().passed);

        let mut bad = c.clone();
        bad.inner_box.hi = IntVec::from([2, 2, 2, 1]);
        let r = verify_certificate(&s, &bad);
        assert!(!r.check(CHECK_BOX).unwrap().passed);

        let mut bad = c.clone();
        bad.price = ints(&[90, 90, 9, 90]);
        assert!(!verify_certificate(&s, &bad).passed());

        let mut bad = c.clone();
        bad.n0 = vec![0];
        assert!(!verify_certificate(&s, &bad).check(CHECK_BOX).unwrap().passed);

        let mut bad = c;
        bad.price.pop();
        let r = verify_certificate(&s, &bad);
        assert_eq!(r.checks.len(), 1);
        assert!(!r.passed());
    }

    #[test]
    fn certificate_round_trip_still_verifies() {
        let s = fixtures::parallelogram();
        let c = certify_fenchel(&s, &pot10()).unwrap();
        let back = parse_certificate(&emit_certificate(&c)).unwrap();
        assert_eq!(back, c);
        assert!(verify_certificate(&s, &back).passed());
    }

    #[test]
    fn duality_gaps() {
        let s = fixtures::m_convex_five();
        let g = duality_gap(&s, &pot10(), &ints(&[90, 90, 9, 9])).unwrap();
        assert_eq!(g.primal, rat_int(121));
        assert_eq!(g.dual, rat_int(279 - 158));
        assert_eq!(g.gap, rat_int(0));

        let g = duality_gap(&s, &pot10(), &ints(&[1, 1, 1, 1])).unwrap();
        assert!(g.gap > rat_int(0));

        let one = PointSet::from_i64s(1, &[&[0]]).unwrap();
        let g = duality_gap(&one, &PowerPotential::new(10, 1).unwrap(), &ints(&[9])).unwrap();
        assert_eq!((g.primal, g.dual, g.gap), (rat_int(1), rat_int(1), rat_int(0)));

        let err = duality_gap(&s, &pot10(), &ints(&[1, 0, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::NonPositivePrice { index: 1, .. }));
    }

    #[test]
    fn fenchel_prices_close_the_gap() {
        for s in [fixtures::m_convex_five(), fixtures::parallelogram()] {
            let c = certify_fenchel(&s, &pot10()).unwrap();
            assert!(duality_gap(&s, &pot10(), &c.price).unwrap().gap.is_zero());
        }
    }

    #[test]
    fn non_rapid_base_rejected() {
        let s = fixtures::m_convex_five();
        let pot = PowerPotential::new(3, 4).unwrap();
        assert!(matches!(certify_face(&s, &pot), Err(Error::BaseTooSmall { .. })));
    }

    /// Brute-force check of the fenchel identity on the unit square family.
    fn subsets_of_square() -> Vec<PointSet> {
        let corners = [[0i64, 0], [0, 1], [1, 0], [1, 1]];
        (1u32..16)
            .map(|mask| {
                let pts = (0..4)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| IntVec::from(corners[b]))
                    .collect();
                PointSet::new(2, pts).unwrap()
            })
            .collect()
    }

    #[test]
    fn unit_square_subsets_certify_both_ways() {
        let pot = PowerPotential::new(2, 2).unwrap();
        for s in subsets_of_square() {
            for c in [certify_face(&s, &pot).unwrap(), certify_fenchel(&s, &pot).unwrap()] {
                assert!(verify_certificate(&s, &c).passed(), "{s:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn weak_duality_on_m_convex_five(p in prop::collection::vec((1i64..200, 1i64..5), 4)) {
            let p: RatVec = p.into_iter().map(|(a, b)| rat(a, b)).collect();
            let g = duality_gap(&fixtures::m_convex_five(), &pot10(), &p).unwrap();
            prop_assert!(g.gap >= rat_int(0));
        }
    }
}
