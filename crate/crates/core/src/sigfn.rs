//! Levine-Tristram signature functions with certified jump isolation, exact
//! signature integrals with symbolic angle bookkeeping, and generator
//! families whose integrals fill out intervals densely.

use crate::error::CkError;
use crate::hermitian::{hermitian_inertia, GaussRat};
use crate::laurent::Rat;
use crate::realenc::{arccos_over_pi, AlgebraicNumber, RatInterval};
use crate::seifert::SeifertMatrix;
use crate::sturm::{isolate_roots_in_open, QPoly, SturmChain};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the unit circle with exact coordinates: -1, or the rational
/// parametrization ((1-s^2) + 2si)/(1+s^2) with s = tan(theta/2).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CirclePoint {
    MinusOne,
    TanHalf(Rat),
}

impl CirclePoint {
    pub fn cos(&self) -> Rat {
        match self {
            CirclePoint::MinusOne => rat(-1, 1),
            CirclePoint::TanHalf(s) => {
                let s2 = s * s;
                (Rat::one() - &s2) / (Rat::one() + &s2)
            }
        }
    }

    pub fn sin(&self) -> Rat {
        match self {
            CirclePoint::MinusOne => Rat::zero(),
            CirclePoint::TanHalf(s) => {
                let s2 = s * s;
                (rat(2, 1) * s) / (Rat::one() + s2)
            }
        }
    }

    pub fn omega(&self) -> GaussRat {
        GaussRat::new(self.cos(), self.sin())
    }
}

/// Exact signature of (1-w)V + (1-conj w)V^T at a circle point away from the
/// jump locus; landing on a jump is reported as an error directing the
/// caller to evaluate on an adjacent arc.
pub fn lt_signature_at(v: &SeifertMatrix, at: &CirclePoint) -> Result<i64, CkError> {
    let n = v.size();
    if n == 0 {
        return Ok(0);
    }
    let omega = at.omega();
    if omega.re == Rat::one() && omega.im.is_zero() {
        return Err(CkError::Domain("the signature is not defined at 1".into()));
    }
    let one_minus = GaussRat::new(Rat::one() - &omega.re, -omega.im.clone());
    let one_minus_conj = one_minus.conj();
    let mut m = vec![vec![GaussRat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let vij = GaussRat::from_rat(Rat::from_integer(v.entry(i, j).clone()));
            let vji = GaussRat::from_rat(Rat::from_integer(v.entry(j, i).clone()));
            m[i][j] = one_minus.mul(&vij).add(&one_minus_conj.mul(&vji));
        }
    }
    let inertia = hermitian_inertia(m)?;
    if inertia.nullity > 0 {
        return Err(CkError::Domain(
            "the chosen point is a jump of the signature function; evaluate on an adjacent arc"
                .into(),
        ));
    }
    let sig = inertia.signature();
    debug_assert_eq!(sig.rem_euclid(2), 0, "signature must be even");
    Ok(sig)
}

/// One jump of the signature function: an isolating interval for the value
/// of cos(theta) at the jump, and the algebraic number x = 2 cos(theta).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JumpPoint {
    pub cos_lo: Rat,
    pub cos_hi: Rat,
    pub x: AlgebraicNumber,
}

/// Piecewise-constant signature data on the upper semicircle: jumps ordered
/// by decreasing cos(theta) (increasing theta), and one even value per open
/// arc, starting at the arc adjacent to 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignatureFunction {
    pub jumps: Vec<JumpPoint>,
    pub values: Vec<i64>,
}

/// The real polynomial q with q(2 cos theta) = Delta(e^{i theta}) up to a
/// unit: substitute x = t + 1/t into the symmetrized polynomial.
pub fn circle_polynomial(v: &SeifertMatrix) -> QPoly {
    let delta = v.alexander_raw();
    if delta.is_zero() {
        return QPoly::zero();
    }
    let n = delta.max_deg().unwrap() - delta.min_deg().unwrap();
    debug_assert!(n % 2 == 0, "palindromic polynomial must have even span");
    let sym = delta.symmetric_normalized();
    // q(x) = a_0 + sum_{j>=1} a_j C_j(x) with C_0 = 2, C_1 = x,
    // C_{j+1} = x C_j - C_{j-1}
    let half = n / 2;
    let mut c_prev = QPoly::from_i64(&[2]);
    let mut c_cur = QPoly::from_i64(&[0, 1]);
    let x = QPoly::from_i64(&[0, 1]);
    let mut q = QPoly::new(vec![sym.coeff(0)]);
    for j in 1..=half {
        let a = sym.coeff(j);
        if !a.is_zero() {
            let scaled = QPoly::new(c_cur.coeffs().iter().map(|c| c * &a).collect());
            q = add_qpoly(&q, &scaled);
        }
        let next = sub_qpoly(&x.mul(&c_cur), &c_prev);
        c_prev = c_cur;
        c_cur = next;
    }
    q
}

fn add_qpoly(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.coeffs().iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.coeffs().iter().enumerate() {
        out[i] += c;
    }
    QPoly::new(out)
}

fn sub_qpoly(a: &QPoly, b: &QPoly) -> QPoly {
    add_qpoly(a, &b.neg())
}

/// A rational circle point whose cosine lies strictly inside the given open
/// cosine range, found by bisecting the tangent half-angle.
pub fn sample_in_cos_range(cos_lo: &Rat, cos_hi: &Rat) -> CirclePoint {
    assert!(cos_lo < cos_hi);
    // cos is decreasing in s on [0, oo)
    let mut s_lo = Rat::zero(); // cos = 1
    let mut s_hi = Rat::one();
    while &CirclePoint::TanHalf(s_hi.clone()).cos() >= cos_hi {
        // still right of the target range? increase s to decrease cos
        if &CirclePoint::TanHalf(s_hi.clone()).cos() < cos_lo {
            break;
        }
        s_hi = &s_hi * rat(2, 1);
    }
    loop {
        let mid = (&s_lo + &s_hi) / rat(2, 1);
        let c = CirclePoint::TanHalf(mid.clone()).cos();
        if &c <= cos_lo {
            s_hi = mid;
        } else if &c >= cos_hi {
            s_lo = mid;
        } else {
            return CirclePoint::TanHalf(mid);
        }
    }
}

/// Complete jump/value data of the signature function.
pub fn signature_function(v: &SeifertMatrix) -> Result<SignatureFunction, CkError> {
    if v.size() == 0 {
        return Ok(SignatureFunction { jumps: Vec::new(), values: vec![0] });
    }
    let q = circle_polynomial(v);
    debug_assert!(!q.is_zero());
    let two = rat(2, 1);
    let mut intervals = isolate_roots_in_open(&q, &-two.clone(), &two, &rat(1, 64));
    // descending in x = decreasing cos theta = increasing theta
    intervals.reverse();
    // refine until the intervals are strictly separated with nonempty gaps
    let chain = SturmChain::new(&q);
    loop {
        let mut ok = true;
        for w in intervals.windows(2) {
            if w[0].0 <= w[1].1 {
                ok = false;
            }
        }
        if ok {
            break;
        }
        intervals =
            intervals.into_iter().map(|iv| {
                let width = (&iv.1 - &iv.0) / rat(4, 1);
                chain.refine(iv, &width)
            }).collect();
    }
    let jumps: Vec<JumpPoint> = intervals
        .iter()
        .map(|(lo, hi)| JumpPoint {
            cos_lo: lo / &two,
            cos_hi: hi / &two,
            x: AlgebraicNumber::new(&q, (lo.clone(), hi.clone())),
        })
        .collect();
    // sample each arc strictly between consecutive root enclosures
    let mut values = Vec::with_capacity(jumps.len() + 1);
    for k in 0..=jumps.len() {
        let hi = if k == 0 { Rat::one() } else { jumps[k - 1].cos_lo.clone() };
        let lo = if k == jumps.len() { rat(-1, 1) } else { jumps[k].cos_hi.clone() };
        let sample = sample_in_cos_range(&lo, &hi);
        values.push(lt_signature_at(v, &sample)?);
    }
    debug_assert_eq!(values[0], 0, "the arc at 1 must carry signature zero");
    Ok(SignatureFunction { jumps, values })
}

/// Exact rational combination representing an integral: a rational part plus
/// rational multiples of arccos(alpha)/pi for algebraic alpha, canonically
/// merged and sorted.
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct SymbolicIntegral {
    pub rational: Rat,
    pub terms: Vec<(Rat, AlgebraicNumber)>,
}

impl SymbolicIntegral {
    pub fn from_rational(r: Rat) -> Self {
        SymbolicIntegral { rational: r, terms: Vec::new() }
    }

    pub fn add_term(&mut self, coeff: Rat, alpha: AlgebraicNumber) {
        if coeff.is_zero() {
            return;
        }
        for (c, a) in self.terms.iter_mut() {
            if a.equals(&alpha) {
                *c += coeff;
                if c.is_zero() {
                    let keep: Vec<_> =
                        self.terms.iter().filter(|(c, _)| !c.is_zero()).cloned().collect();
                    self.terms = keep;
                }
                return;
            }
        }
        self.terms.push((coeff, alpha));
        self.canonicalize();
    }

    pub fn add(&self, other: &SymbolicIntegral) -> SymbolicIntegral {
        let mut out = self.clone();
        out.rational += &other.rational;
        for (c, a) in &other.terms {
            out.add_term(c.clone(), a.clone());
        }
        out
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by(|(_, a), (_, b)| a.compare(b));
    }

    pub fn equivalent(&self, other: &SymbolicIntegral) -> bool {
        if self.rational != other.rational || self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((c1, a1), (c2, a2))| c1 == c2 && a1.equals(a2))
    }

    pub fn render(&self) -> String {
        let mut parts = vec![format!("{}", self.rational)];
        for (c, a) in &self.terms {
            let arg = match a.as_rational() {
                Some(r) => format!("{}", r),
                None => format!(
                    "<root of {:?} in [{}, {}]>",
                    a.poly()
                        .coeffs()
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>(),
                    a.interval.0,
                    a.interval.1
                ),
            };
            parts.push(format!("{} * arccos({}) / pi", c, arg));
        }
        parts.join(" + ")
    }
}

/// A real number enclosed in a rational interval, with an exact symbolic
/// form when available.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifiedReal {
    pub lo: Rat,
    pub hi: Rat,
    pub symbolic: Option<SymbolicIntegral>,
}

impl CertifiedReal {
    pub fn exact(r: Rat) -> Self {
        CertifiedReal {
            lo: r.clone(),
            hi: r.clone(),
            symbolic: Some(SymbolicIntegral::from_rational(r)),
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            symbolic: match (&self.symbolic, &other.symbolic) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            },
        }
    }

    pub fn scale_int(&self, k: i64) -> CertifiedReal {
        let kk = rat(k, 1);
        let (lo, hi) = if k >= 0 {
            (&self.lo * &kk, &self.hi * &kk)
        } else {
            (&self.hi * &kk, &self.lo * &kk)
        };
        CertifiedReal {
            lo,
            hi,
            symbolic: self.symbolic.as_ref().map(|s| {
                let mut out = SymbolicIntegral::from_rational(&s.rational * &kk);
                for (c, a) in &s.terms {
                    out.add_term(c * &kk, a.clone());
                }
                out
            }),
        }
    }

    pub fn disjoint(&self, other: &CertifiedReal) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2, 1)
    }
}

/// Largest denominator probed when testing whether a jump angle is a
/// rational multiple of pi.
const RATIONAL_ANGLE_QMAX: i64 = 64;

/// Simplest fraction in the closed interval [lo, hi] (continued-fraction
/// walk); both endpoints in (0, 1) for our use.
fn simplest_fraction(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    let fl = lo.floor();
    if &fl >= lo {
        return fl; // lo is an integer
    }
    if hi.floor() > fl || hi.is_integer() {
        return fl + Rat::one();
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    fl + (simplest_fraction(&frac_hi.recip(), &frac_lo.recip())).recip()
}

/// If theta/pi is rational with small denominator (the jump satisfies
/// C_q(x) = +-2 for some q), returns the exact fraction.  A cheap numeric
/// pre-filter finds the only possible candidate before any exact check.
fn rational_angle(x: &AlgebraicNumber) -> Option<Rat> {
    if let Some(r) = x.as_rational() {
        // Niven: the rational cosines with rational angles
        let c = r / rat(2, 1);
        if c == rat(1, 2) {
            return Some(rat(1, 3));
        }
        if c.is_zero() {
            return Some(rat(1, 2));
        }
        if c == rat(-1, 2) {
            return Some(rat(2, 3));
        }
    }
    // enclose theta/pi tightly enough that at most one fraction with
    // denominator <= QMAX survives: width < 1/(2 QMAX^2)
    let eps = rat(1, 1 << 18);
    let mut alg = x.clone();
    alg.refine(&eps);
    let n_lo = arccos_over_pi(&(&alg.interval.1 / rat(2, 1)), &eps);
    let n_hi = arccos_over_pi(&(&alg.interval.0 / rat(2, 1)), &eps);
    let lo = n_lo.lo;
    let hi = n_hi.hi;
    let candidate = simplest_fraction(&lo, &hi);
    let q: i64 = match i64::try_from(candidate.denom()) {
        Ok(q) if q <= RATIONAL_ANGLE_QMAX => q,
        _ => return None,
    };
    if candidate <= Rat::zero() || candidate >= Rat::one() {
        return None;
    }
    // exact verification: x must be a root of C_q^2 - 4
    let mut c_prev = QPoly::from_i64(&[2]);
    let mut c_cur = QPoly::from_i64(&[0, 1]);
    let xp = QPoly::from_i64(&[0, 1]);
    for _ in 1..q {
        let next = sub_qpoly(&xp.mul(&c_cur), &c_prev);
        c_prev = c_cur;
        c_cur = next;
    }
    let p = sub_qpoly(&c_cur.mul(&c_cur), &QPoly::from_i64(&[4]));
    let shares_root = !p.is_zero() && x.equals(&AlgebraicNumber::new(&p, x.interval.clone()));
    if shares_root {
        Some(candidate)
    } else {
        None
    }
}

/// Normalized integral of the signature function over the circle (total
/// measure one), enclosed to within `tol`, with the exact symbolic form.
pub fn signature_integral(v: &SeifertMatrix, tol: &Rat) -> Result<CertifiedReal, CkError> {
    if tol <= &Rat::zero() {
        return Err(CkError::Domain("tolerance must be positive".into()));
    }
    let f = signature_function(v)?;
    if f.jumps.is_empty() {
        debug_assert_eq!(f.values, vec![0]);
        return Ok(CertifiedReal::exact(Rat::zero()));
    }
    // integral = sum_j values[j] * (N_{j+1} - N_j)
    //          = sum_j N_j (values[j-1] - values[j]) + values[last]
    // with N_j = arccos(cos theta_j)/pi, N_0 = 0, N_last = 1
    let mut symbolic = SymbolicIntegral::from_rational(rat(f.values[f.values.len() - 1], 1));
    let mut interval_total = RatInterval::point(symbolic.rational.clone());
    let mut weight_sum: Rat =
        (0..f.jumps.len()).map(|j| rat((f.values[j] - f.values[j + 1]).abs(), 1)).sum();
    if weight_sum.is_zero() {
        weight_sum = Rat::one();
    }
    for (j, jump) in f.jumps.iter().enumerate() {
        let dv = f.values[j] - f.values[j + 1];
        if dv == 0 {
            continue;
        }
        let coeff = rat(dv, 1);
        if let Some(frac) = rational_angle(&jump.x) {
            symbolic.rational += &coeff * &frac;
            interval_total = interval_total.add(&RatInterval::point(&coeff * &frac));
            continue;
        }
        // enclose N_j adaptively
        let target = tol * rat(dv.abs(), 1) / &weight_sum / rat(2, 1);
        let mut alg = jump.x.clone();
        let mut width = target.clone();
        let enclosure = loop {
            alg.refine(&width);
            let eps = &target / rat(4, 1);
            let n_lo = arccos_over_pi(&(&alg.interval.1 / rat(2, 1)), &eps);
            let n_hi = arccos_over_pi(&(&alg.interval.0 / rat(2, 1)), &eps);
            let enc = RatInterval::new(n_lo.lo.clone(), n_hi.hi.clone());
            if enc.width() <= target {
                break enc;
            }
            width /= rat(4, 1);
        };
        interval_total = interval_total.add(&enclosure.scale(&coeff));
        // symbolic term argument is cos theta = x/2
        let half_poly = compose_half(&jump.x.poly());
        let alpha = AlgebraicNumber::new(
            &half_poly,
            (&jump.x.interval.0 / rat(2, 1), &jump.x.interval.1 / rat(2, 1)),
        );
        symbolic.add_term(coeff, alpha);
    }
    Ok(CertifiedReal { lo: interval_total.lo, hi: interval_total.hi, symbolic: Some(symbolic) })
}

/// p(2y) as a polynomial in y.
fn compose_half(p: &QPoly) -> QPoly {
    let mut out = Vec::new();
    let mut factor = Rat::one();
    for c in p.coeffs() {
        out.push(c * &factor);
        factor *= rat(2, 1);
    }
    QPoly::new(out)
}

/// Block sum of Seifert forms.
pub fn connected_sum(a: &SeifertMatrix, b: &SeifertMatrix) -> SeifertMatrix {
    a.connected_sum(b)
}

/// One member of a generated family: the matrix and its certified integral.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub matrix: SeifertMatrix,
    pub integral: CertifiedReal,
}

/// Request for a dense family: approximate the given targets, or cover a
/// range with an epsilon-dense set of integrals.
#[derive(Clone, Debug)]
pub enum FamilyRequest {
    Targets(Vec<Rat>, Rat),
    Range { lo: Rat, hi: Rat, epsilon: Rat },
}

const FAMILY_MAX_SUMMANDS: usize = 64;
const FAMILY_POOL_DEPTH: i64 = 48;

struct GeneratorPool {
    /// (value estimate, exact certified integral, matrix)
    singles: Vec<(f64, CertifiedReal, SeifertMatrix)>,
}

fn generator_pool(tol: &Rat) -> Result<GeneratorPool, CkError> {
    let mut singles = Vec::new();
    let per = tol / rat(4 * FAMILY_MAX_SUMMANDS as i64, 1);
    for k in 1..=FAMILY_POOL_DEPTH {
        let v = SeifertMatrix::twist_knot(-k)?;
        let integral = signature_integral(&v, &per)?;
        let est = integral.midpoint().to_f64().unwrap_or(0.0);
        let mirror = v.mirror();
        let mint = integral.scale_int(-1);
        singles.push((est, integral, v));
        singles.push((-est, mint, mirror));
    }
    Ok(GeneratorPool { singles })
}

/// Greedy decomposition of one target into a connected sum of pool members;
/// `accuracy` is the greedy stopping width, `epsilon` the hard error bound.
fn approximate_target(
    pool: &GeneratorPool,
    target: &Rat,
    accuracy: &Rat,
    epsilon: &Rat,
) -> Result<FamilyMember, CkError> {
    let eps_f = accuracy.to_f64().unwrap_or(1e-3);
    let goal = target.to_f64().unwrap_or(0.0);
    let mut remaining = goal;
    let mut picks: Vec<usize> = Vec::new();
    // candidate moves: single generators and differences of two generators
    for _ in 0..FAMILY_MAX_SUMMANDS {
        if remaining.abs() <= eps_f / 2.0 {
            break;
        }
        // best single
        let mut best: Option<(f64, Vec<usize>)> = None;
        for (i, (est, _, _)) in pool.singles.iter().enumerate() {
            let after = remaining - est;
            if after.abs() < remaining.abs() - 1e-9 {
                let cand = (after.abs(), vec![i]);
                if best.as_ref().is_none_or(|(b, _)| cand.0 < *b) {
                    best = Some(cand);
                }
            }
        }
        // best pair (covers small residuals through cancellation)
        for (i, (ei, _, _)) in pool.singles.iter().enumerate() {
            for (j, (ej, _, _)) in pool.singles.iter().enumerate() {
                let move_val = ei + ej;
                if move_val.abs() < 1e-12 {
                    continue;
                }
                let after = remaining - move_val;
                if after.abs() < remaining.abs() - 1e-9 {
                    let cand = (after.abs(), vec![i, j]);
                    if best.as_ref().is_none_or(|(b, _)| cand.0 < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, chosen)) = best else { break };
        for i in &chosen {
            remaining -= pool.singles[*i].0;
            picks.push(*i);
        }
        if picks.len() > FAMILY_MAX_SUMMANDS {
            break;
        }
    }
    // assemble the certified sum
    let mut matrix = SeifertMatrix::empty("unknot");
    let mut integral = CertifiedReal::exact(Rat::zero());
    for &i in &picks {
        matrix = matrix.connected_sum(&pool.singles[i].2);
        integral = integral.add(&pool.singles[i].1);
    }
    // exact check against the target
    let err_lo = (&integral.lo - target).abs();
    let err_hi = (&integral.hi - target).abs();
    let worst = if err_lo > err_hi { err_lo } else { err_hi };
    if &worst > epsilon {
        return Err(CkError::Domain(format!(
            "target {} unreachable within {} summands (off by about {})",
            target,
            FAMILY_MAX_SUMMANDS,
            worst
        )));
    }
    matrix.name = format!("approx({})", target);
    Ok(FamilyMember { matrix, integral })
}

/// Generates Seifert matrices whose certified integrals approximate the
/// targets (or are epsilon-dense in a range).
pub fn dense_family(request: &FamilyRequest) -> Result<Vec<FamilyMember>, CkError> {
    match request {
        FamilyRequest::Targets(targets, epsilon) => {
            if epsilon <= &Rat::zero() {
                return Err(CkError::Domain("epsilon must be positive".into()));
            }
            let pool = generator_pool(epsilon)?;
            targets
                .iter()
                .map(|t| {
                    if t.is_zero() {
                        Ok(FamilyMember {
                            matrix: SeifertMatrix::empty("unknot"),
                            integral: CertifiedReal::exact(Rat::zero()),
                        })
                    } else {
                        approximate_target(&pool, t, epsilon, epsilon)
                    }
                })
                .collect()
        }
        FamilyRequest::Range { lo, hi, epsilon } => {
            if epsilon <= &Rat::zero() || lo >= hi {
                return Err(CkError::Domain("range must be nonempty with positive epsilon".into()));
            }
            let pool = generator_pool(epsilon)?;
            // target spacing epsilon/2 with greedy accuracy epsilon/8 keeps
            // adjacent realized values within epsilon of each other
            let step = epsilon / rat(2, 1);
            let accuracy = epsilon / rat(8, 1);
            let mut members = Vec::new();
            let mut t = lo + &step;
            while &t < hi {
                if t.is_zero() {
                    members.push(FamilyMember {
                        matrix: SeifertMatrix::empty("unknot"),
                        integral: CertifiedReal::exact(Rat::zero()),
                    });
                } else {
                    members.push(approximate_target(&pool, &t, &accuracy, epsilon)?);
                }
                t += &step;
            }
            Ok(members)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_at_minus_one() {
        let v = SeifertMatrix::trefoil();
        assert_eq!(lt_signature_at(&v, &CirclePoint::MinusOne).unwrap(), -2);
    }

    #[test]
    fn unknot_everywhere_zero() {
        let v = SeifertMatrix::empty("unknot");
        assert_eq!(lt_signature_at(&v, &CirclePoint::MinusOne).unwrap(), 0);
        assert_eq!(lt_signature_at(&v, &CirclePoint::TanHalf(rat(1, 3))).unwrap(), 0);
    }

    #[test]
    fn figure_eight_at_minus_one() {
        let v = SeifertMatrix::figure_eight();
        assert_eq!(lt_signature_at(&v, &CirclePoint::MinusOne).unwrap(), 0);
    }

    #[test]
    fn trefoil_signature_function() {
        let v = SeifertMatrix::trefoil();
        let f = signature_function(&v).unwrap();
        assert_eq!(f.jumps.len(), 1);
        assert_eq!(f.values, vec![0, -2]);
        // jump at cos theta = 1/2
        let j = &f.jumps[0];
        assert!(j.cos_lo <= rat(1, 2) && rat(1, 2) <= j.cos_hi);
    }

    #[test]
    fn trefoil_integral_is_exact() {
        let v = SeifertMatrix::trefoil();
        let i = signature_integral(&v, &rat(1, 1_000_000)).unwrap();
        assert_eq!(i.lo, rat(-4, 3));
        assert_eq!(i.hi, rat(-4, 3));
        let s = i.symbolic.unwrap();
        assert_eq!(s.rational, rat(-4, 3));
        assert!(s.terms.is_empty());
    }

    #[test]
    fn granny_integral_additivity() {
        let t = SeifertMatrix::trefoil();
        let g = t.connected_sum(&t);
        let i = signature_integral(&g, &rat(1, 1_000_000)).unwrap();
        assert_eq!(i.lo, rat(-8, 3));
        assert_eq!(i.hi, rat(-8, 3));
    }

    #[test]
    fn mirror_cancels() {
        let t = SeifertMatrix::trefoil();
        let s = t.connected_sum(&t.mirror());
        let f = signature_function(&s).unwrap();
        assert!(f.values.iter().all(|&v| v == 0), "values: {:?}", f.values);
        let i = signature_integral(&s, &rat(1, 1000)).unwrap();
        assert!(i.lo <= Rat::zero() && Rat::zero() <= i.hi);
        assert!(i.width() <= rat(1, 500));
    }

    #[test]
    fn mirror_negates_function() {
        let v = SeifertMatrix::twist_knot(-2).unwrap();
        let f = signature_function(&v).unwrap();
        let g = signature_function(&v.mirror()).unwrap();
        assert_eq!(f.values.len(), g.values.len());
        for (a, b) in f.values.iter().zip(&g.values) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn torus_knot_integral_rational() {
        // (2,5) torus knot: jumps at theta = pi/5, 3 pi/5: integral
        // -2(1 - 1/5) - 2(1 - 3/5) = -12/5
        let v = SeifertMatrix::torus_2n(2);
        let i = signature_integral(&v, &rat(1, 100_000)).unwrap();
        assert_eq!(i.lo, rat(-12, 5));
        assert_eq!(i.hi, rat(-12, 5));
    }

    #[test]
    fn twist_knot_integral_enclosure() {
        // twist(-2): jump at cos theta = 3/4, value -2 beyond: integral
        // -2 (1 - arccos(3/4)/pi) ~ -1.5397
        let v = SeifertMatrix::twist_knot(-2).unwrap();
        let i = signature_integral(&v, &rat(1, 10_000)).unwrap();
        assert!(i.width() <= rat(1, 10_000));
        assert!(i.lo > rat(-15400, 10000) && i.hi < rat(-15398, 10000), "{:?}", (&i.lo, &i.hi));
        let s = i.symbolic.unwrap();
        assert_eq!(s.terms.len(), 1);
    }

    #[test]
    fn symbolic_additivity() {
        let v = SeifertMatrix::twist_knot(-2).unwrap();
        let sum = v.connected_sum(&v);
        let one = signature_integral(&v, &rat(1, 10_000)).unwrap();
        let two = signature_integral(&sum, &rat(1, 10_000)).unwrap();
        let doubled = one.add(&one);
        assert!(two
            .symbolic
            .as_ref()
            .unwrap()
            .equivalent(doubled.symbolic.as_ref().unwrap()));
    }

    #[test]
    fn rational_points_never_land_on_jumps() {
        // the determinant of a Seifert form is odd, so the symmetrized
        // matrix is nonsingular at every rational circle point; evaluation
        // right next to a jump still succeeds
        let v = SeifertMatrix::trefoil();
        // cos theta slightly above and below the jump at 1/2
        let near_hi = sample_in_cos_range(&rat(1, 2), &rat(51, 100));
        let near_lo = sample_in_cos_range(&rat(49, 100), &rat(1, 2));
        assert_eq!(lt_signature_at(&v, &near_hi).unwrap(), 0);
        assert_eq!(lt_signature_at(&v, &near_lo).unwrap(), -2);
        let w = SeifertMatrix::new("metabolic", vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(lt_signature_at(&w, &CirclePoint::MinusOne).unwrap(), 0);
    }

    #[test]
    fn dense_family_hits_targets() {
        let req = FamilyRequest::Targets(
            vec![Rat::zero(), rat(-4, 3), rat(1, 1)],
            rat(1, 100),
        );
        let fam = dense_family(&req).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(fam[0].matrix.size(), 0);
        // -4/3 is hit by a single trefoil-type twist knot
        assert!(fam[1].integral.lo <= rat(-4, 3) && rat(-4, 3) <= fam[1].integral.hi);
        // target 1 within 1/100
        let mid = fam[2].integral.midpoint();
        assert!((mid - rat(1, 1)).abs() <= rat(1, 50));
    }
}
