//! Exact piecewise-affine functions with explicit breakpoint values.
//!
//! A function is stored as a sorted breakpoint grid spanning [a, b], one
//! affine law per open piece, and one explicit value per breakpoint that
//! belongs to the space (punctures carry no value). Evaluation, one-sided
//! limits, semicontinuity classification, quasicontinuity, pointwise
//! comparisons and the sup-metric are all decided exactly: on an open piece
//! an affine expression is signed by its two endpoint limits, so every
//! check reduces to finitely many rational comparisons.

use crate::error::{Error, Result};
use crate::rational::{midpoint, q_to_text, ExtQ, Q};
use crate::space::SpaceX;
use num_traits::Zero;
use std::fmt;

/// An affine law `y = slope * x + intercept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub slope: Q,
    pub intercept: Q,
}

impl Affine {
    pub fn new(slope: Q, intercept: Q) -> Affine {
        Affine { slope, intercept }
    }

    pub fn constant(c: Q) -> Affine {
        Affine::new(Q::zero(), c)
    }

    /// The line through two points with distinct abscissae.
    pub fn through(p: (&Q, &Q), r: (&Q, &Q)) -> Affine {
        let slope = (r.1 - p.1) / (r.0 - p.0);
        let intercept = p.1 - &slope * p.0;
        Affine { slope, intercept }
    }

    pub fn eval(&self, x: &Q) -> Q {
        &self.slope * x + &self.intercept
    }

    pub fn add(&self, other: &Affine) -> Affine {
        Affine::new(&self.slope + &other.slope, &self.intercept + &other.intercept)
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        Affine::new(&self.slope - &other.slope, &self.intercept - &other.intercept)
    }

    pub fn neg(&self) -> Affine {
        Affine::new(-self.slope.clone(), -self.intercept.clone())
    }

    pub fn add_const(&self, c: &Q) -> Affine {
        Affine::new(self.slope.clone(), &self.intercept + c)
    }

    pub fn scale(&self, c: &Q) -> Affine {
        Affine::new(&self.slope * c, &self.intercept * c)
    }

    /// Abscissa where the two laws agree, when they are not parallel.
    pub fn crossing(&self, other: &Affine) -> Option<Q> {
        if self.slope == other.slope {
            return None;
        }
        Some((&other.intercept - &self.intercept) / (&self.slope - &other.slope))
    }
}

/// Result of an exact pointwise comparison over the whole domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Holds,
    /// A concrete point of X where the comparison fails.
    Fails(Q),
}

impl Comparison {
    pub fn holds(&self) -> bool {
        matches!(self, Comparison::Holds)
    }

    pub fn witness(&self) -> Option<&Q> {
        match self {
            Comparison::Holds => None,
            Comparison::Fails(x) => Some(x),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Continuous,
    LscOnly,
    UscOnly,
    Neither,
}

/// Semicontinuity classification with witness breakpoints for each failure.
#[derive(Clone, Debug, PartialEq)]
pub struct SemicontinuityClass {
    pub kind: ClassKind,
    /// Breakpoints where the value exceeds an existing one-sided limit.
    pub lsc_failures: Vec<Q>,
    /// Breakpoints where the value undercuts an existing one-sided limit.
    pub usc_failures: Vec<Q>,
}

impl SemicontinuityClass {
    pub fn is_lsc(&self) -> bool {
        self.lsc_failures.is_empty()
    }

    pub fn is_usc(&self) -> bool {
        self.usc_failures.is_empty()
    }

    pub fn is_continuous(&self) -> bool {
        self.kind == ClassKind::Continuous
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassKind::Continuous => "continuous",
            ClassKind::LscOnly => "lsc-only",
            ClassKind::UscOnly => "usc-only",
            ClassKind::Neither => "neither",
        };
        write!(f, "{s}")
    }
}

/// Quasicontinuity verdict. For a finite-piece affine function the exact
/// criterion is: at every point of X the value equals an existing one-sided
/// limit (interior pieces are continuous, so only breakpoints can fail).
#[derive(Clone, Debug, PartialEq)]
pub struct QuasicontinuityReport {
    pub holds: bool,
    pub witnesses: Vec<Q>,
}

/// Boundedness certificate: finitely many affine pieces on a bounded
/// interval are bounded, so every net of values has a cluster point.
#[derive(Clone, Debug, PartialEq)]
pub struct SubcontinuityCertificate {
    pub lower_bound: Q,
    pub upper_bound: Q,
}

#[derive(Clone, Debug)]
pub struct PiecewiseFn {
    space: SpaceX,
    breakpoints: Vec<Q>,
    /// One entry per breakpoint; `None` exactly at punctures.
    values: Vec<Option<Q>>,
    /// One law per open piece `(b[i], b[i+1])`.
    pieces: Vec<Affine>,
}

impl PiecewiseFn {
    pub fn new(
        space: SpaceX,
        breakpoints: Vec<Q>,
        values: Vec<Option<Q>>,
        pieces: Vec<Affine>,
    ) -> Result<PiecewiseFn> {
        if pieces.is_empty() {
            return Err(Error::EmptyPieces);
        }
        if breakpoints.len() != pieces.len() + 1 || breakpoints.len() != values.len() {
            return Err(Error::BadBreakpoints);
        }
        if breakpoints.first() != Some(space.a()) || breakpoints.last() != Some(space.b()) {
            return Err(Error::BadBreakpoints);
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadBreakpoints);
            }
        }
        for p in space.punctures() {
            if breakpoints.binary_search(p).is_err() {
                return Err(Error::PunctureNotBreakpoint(p.clone()));
            }
        }
        for (b, v) in breakpoints.iter().zip(values.iter()) {
            if space.is_puncture(b) != v.is_none() {
                return Err(Error::ValueArity(b.clone()));
            }
        }
        Ok(PiecewiseFn {
            space,
            breakpoints,
            values,
            pieces,
        })
    }

    /// The constant function `c` on the whole space.
    pub fn constant(space: SpaceX, c: Q) -> PiecewiseFn {
        let mut breakpoints = vec![space.a().clone()];
        breakpoints.extend(space.punctures().iter().cloned());
        breakpoints.push(space.b().clone());
        let values = breakpoints
            .iter()
            .map(|b| {
                if space.is_puncture(b) {
                    None
                } else {
                    Some(c.clone())
                }
            })
            .collect();
        let pieces = vec![Affine::constant(c); breakpoints.len() - 1];
        PiecewiseFn {
            space,
            breakpoints,
            values,
            pieces,
        }
    }

    /// Continuous piecewise-linear interpolation through sample points.
    /// The samples must include both endpoints and every puncture.
    pub fn interpolate(space: SpaceX, samples: &[(Q, Q)]) -> Result<PiecewiseFn> {
        let mut pts = samples.to_vec();
        pts.sort_by(|l, r| l.0.cmp(&r.0));
        pts.dedup_by(|l, r| l.0 == r.0);
        if pts.len() < 2 {
            return Err(Error::BadBreakpoints);
        }
        let breakpoints: Vec<Q> = pts.iter().map(|(x, _)| x.clone()).collect();
        let pieces: Vec<Affine> = pts
            .windows(2)
            .map(|w| Affine::through((&w[0].0, &w[0].1), (&w[1].0, &w[1].1)))
            .collect();
        let values = pts
            .iter()
            .map(|(x, y)| {
                if space.is_puncture(x) {
                    None
                } else {
                    Some(y.clone())
                }
            })
            .collect();
        PiecewiseFn::new(space, breakpoints, values, pieces)
    }

    pub fn space(&self) -> &SpaceX {
        &self.space
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Option<Q>] {
        &self.values
    }

    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }

    pub fn breakpoint_index(&self, x: &Q) -> Option<usize> {
        self.breakpoints.binary_search(x).ok()
    }

    /// Index of the open piece containing `x`, for x strictly inside the
    /// interval and not a breakpoint.
    fn piece_containing(&self, x: &Q) -> usize {
        match self.breakpoints.binary_search(x) {
            Ok(_) => unreachable!("piece_containing called on a breakpoint"),
            Err(i) => i - 1,
        }
    }

    /// Exact evaluation; stored breakpoint values take precedence over laws.
    pub fn eval(&self, x: &Q) -> Result<Q> {
        if !self.space.in_closure(x) {
            return Err(Error::OutsideDomain(x.clone()));
        }
        if self.space.is_puncture(x) {
            return Err(Error::PunctureExcluded(x.clone()));
        }
        match self.breakpoint_index(x) {
            Some(i) => Ok(self.values[i].clone().expect("non-puncture breakpoint value")),
            None => Ok(self.pieces[self.piece_containing(x)].eval(x)),
        }
    }

    /// One-sided limits at any point of [a, b]; a side is absent only at
    /// the corresponding endpoint. Limits exist at punctures as well.
    pub fn one_sided_limits(&self, x: &Q) -> Result<(Option<Q>, Option<Q>)> {
        if !self.space.in_closure(x) {
            return Err(Error::OutsideDomain(x.clone()));
        }
        match self.breakpoint_index(x) {
            Some(i) => {
                let left = (i > 0).then(|| self.pieces[i - 1].eval(x));
                let right = (i < self.pieces.len()).then(|| self.pieces[i].eval(x));
                Ok((left, right))
            }
            None => {
                let v = self.pieces[self.piece_containing(x)].eval(x);
                Ok((Some(v.clone()), Some(v)))
            }
        }
    }

    fn limits_at_index(&self, i: usize) -> (Option<Q>, Option<Q>) {
        let b = &self.breakpoints[i];
        let left = (i > 0).then(|| self.pieces[i - 1].eval(b));
        let right = (i < self.pieces.len()).then(|| self.pieces[i].eval(b));
        (left, right)
    }

    /// Classifies the function, collecting witness breakpoints per failure.
    pub fn semicontinuity_class(&self) -> SemicontinuityClass {
        let mut lsc_failures = Vec::new();
        let mut usc_failures = Vec::new();
        for (i, b) in self.breakpoints.iter().enumerate() {
            let v = match &self.values[i] {
                Some(v) => v,
                None => continue,
            };
            let (left, right) = self.limits_at_index(i);
            let lims: Vec<&Q> = left.iter().chain(right.iter()).collect();
            if lims.iter().any(|l| v > l) {
                lsc_failures.push(b.clone());
            }
            if lims.iter().any(|l| v < l) {
                usc_failures.push(b.clone());
            }
        }
        let kind = match (lsc_failures.is_empty(), usc_failures.is_empty()) {
            (true, true) => ClassKind::Continuous,
            (true, false) => ClassKind::LscOnly,
            (false, true) => ClassKind::UscOnly,
            (false, false) => ClassKind::Neither,
        };
        SemicontinuityClass {
            kind,
            lsc_failures,
            usc_failures,
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.semicontinuity_class().is_continuous()
    }

    /// Quasicontinuity: at every breakpoint of X the value must equal an
    /// existing one-sided limit.
    pub fn is_quasicontinuous(&self) -> QuasicontinuityReport {
        let mut witnesses = Vec::new();
        for (i, b) in self.breakpoints.iter().enumerate() {
            let v = match &self.values[i] {
                Some(v) => v,
                None => continue,
            };
            let (left, right) = self.limits_at_index(i);
            let hit = left.as_ref() == Some(v) || right.as_ref() == Some(v);
            if !hit {
                witnesses.push(b.clone());
            }
        }
        QuasicontinuityReport {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }

    /// Global bounds over values and one-sided limits. The returned pair
    /// brackets every value the closure of the graph attains.
    pub fn bounds(&self) -> (Q, Q) {
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        let mut push = |x: Q| {
            if lo.as_ref().is_none_or(|l| x < *l) {
                lo = Some(x.clone());
            }
            if hi.as_ref().is_none_or(|h| x > *h) {
                hi = Some(x);
            }
        };
        for (i, v) in self.values.iter().enumerate() {
            if let Some(v) = v {
                push(v.clone());
            }
            let (l, r) = self.limits_at_index(i);
            if let Some(l) = l {
                push(l);
            }
            if let Some(r) = r {
                push(r);
            }
        }
        (lo.unwrap(), hi.unwrap())
    }

    /// Subcontinuity holds for every member of this class; the certificate
    /// carries the global bounds that witness it.
    pub fn subcontinuity_certificate(&self) -> SubcontinuityCertificate {
        let (lower_bound, upper_bound) = self.bounds();
        SubcontinuityCertificate {
            lower_bound,
            upper_bound,
        }
    }

    /// Infimum of the function over X. May be attained only in the limit at
    /// a puncture; for lsc functions on compact domains it is attained at a
    /// breakpoint.
    pub fn infimum(&self) -> Q {
        self.bounds().0
    }

    pub fn supremum(&self) -> Q {
        self.bounds().1
    }

    /// Returns a copy refined so that every element of `extra` (strictly
    /// inside the interval) is a breakpoint; inserted breakpoints take the
    /// law value.
    pub fn refine(&self, extra: &[Q]) -> PiecewiseFn {
        let mut out = self.clone();
        let mut pts: Vec<Q> = extra
            .iter()
            .filter(|x| *x > self.space.a() && *x < self.space.b())
            .cloned()
            .collect();
        pts.sort();
        pts.dedup();
        for x in pts {
            if out.breakpoint_index(&x).is_some() {
                continue;
            }
            let i = out.piece_containing(&x);
            let law = out.pieces[i].clone();
            let v = law.eval(&x);
            out.breakpoints.insert(i + 1, x);
            out.values.insert(i + 1, Some(v));
            out.pieces.insert(i + 1, law);
        }
        out
    }

    /// Refines both functions to the union of their grids.
    pub fn common_refinement(&self, other: &PiecewiseFn) -> Result<(PiecewiseFn, PiecewiseFn)> {
        if self.space != other.space {
            return Err(Error::DomainMismatch);
        }
        let f = self.refine(&other.breakpoints);
        let g = other.refine(&self.breakpoints);
        debug_assert_eq!(f.breakpoints, g.breakpoints);
        Ok((f, g))
    }

    fn zip_with(
        &self,
        other: &PiecewiseFn,
        law: impl Fn(&Affine, &Affine) -> Affine,
        val: impl Fn(&Q, &Q) -> Q,
    ) -> Result<PiecewiseFn> {
        let (f, g) = self.common_refinement(other)?;
        let pieces = f
            .pieces
            .iter()
            .zip(g.pieces.iter())
            .map(|(a, b)| law(a, b))
            .collect();
        let values = f
            .values
            .iter()
            .zip(g.values.iter())
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(val(a, b)),
                _ => None,
            })
            .collect();
        Ok(PiecewiseFn {
            space: f.space.clone(),
            breakpoints: f.breakpoints.clone(),
            values,
            pieces,
        })
    }

    pub fn add(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        self.zip_with(other, Affine::add, |a, b| a + b)
    }

    pub fn sub(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        self.zip_with(other, Affine::sub, |a, b| a - b)
    }

    pub fn neg(&self) -> PiecewiseFn {
        PiecewiseFn {
            space: self.space.clone(),
            breakpoints: self.breakpoints.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.as_ref().map(|v| -v.clone()))
                .collect(),
            pieces: self.pieces.iter().map(Affine::neg).collect(),
        }
    }

    pub fn add_const(&self, c: &Q) -> PiecewiseFn {
        PiecewiseFn {
            space: self.space.clone(),
            breakpoints: self.breakpoints.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.as_ref().map(|v| v + c))
                .collect(),
            pieces: self.pieces.iter().map(|p| p.add_const(c)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> PiecewiseFn {
        PiecewiseFn {
            space: self.space.clone(),
            breakpoints: self.breakpoints.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.as_ref().map(|v| v * c))
                .collect(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
    }

    fn min_max(&self, other: &PiecewiseFn, take_min: bool) -> Result<PiecewiseFn> {
        let (f, g) = self.common_refinement(other)?;
        // Crossings inside pieces become breakpoints of the result.
        let mut crossings = Vec::new();
        for (i, (a, b)) in f.pieces.iter().zip(g.pieces.iter()).enumerate() {
            if let Some(x) = a.crossing(b) {
                if x > f.breakpoints[i] && x < f.breakpoints[i + 1] {
                    crossings.push(x);
                }
            }
        }
        let f = f.refine(&crossings);
        let g = g.refine(&crossings);
        let pieces = f
            .pieces
            .iter()
            .zip(g.pieces.iter())
            .enumerate()
            .map(|(i, (a, b))| {
                let m = midpoint(&f.breakpoints[i], &f.breakpoints[i + 1]);
                let pick_a = if take_min {
                    a.eval(&m) <= b.eval(&m)
                } else {
                    a.eval(&m) >= b.eval(&m)
                };
                if pick_a {
                    a.clone()
                } else {
                    b.clone()
                }
            })
            .collect();
        let values = f
            .values
            .iter()
            .zip(g.values.iter())
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(if (a <= b) == take_min {
                    a.clone()
                } else {
                    b.clone()
                }),
                _ => None,
            })
            .collect();
        Ok(PiecewiseFn {
            space: f.space.clone(),
            breakpoints: f.breakpoints.clone(),
            values,
            pieces,
        }
        .normalize())
    }

    pub fn pointwise_min(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        self.min_max(other, true)
    }

    pub fn pointwise_max(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        self.min_max(other, false)
    }

    /// Exact check of `self <= other` everywhere on X.
    pub fn pointwise_le(&self, other: &PiecewiseFn) -> Result<Comparison> {
        self.compare(other, false)
    }

    /// Exact check of `self < other` everywhere on X.
    pub fn pointwise_lt(&self, other: &PiecewiseFn) -> Result<Comparison> {
        self.compare(other, true)
    }

    fn compare(&self, other: &PiecewiseFn, strict: bool) -> Result<Comparison> {
        let (f, g) = self.common_refinement(other)?;
        for (i, b) in f.breakpoints.iter().enumerate() {
            if let (Some(vf), Some(vg)) = (&f.values[i], &g.values[i]) {
                let ok = if strict { vf < vg } else { vf <= vg };
                if !ok {
                    return Ok(Comparison::Fails(b.clone()));
                }
            }
        }
        for i in 0..f.pieces.len() {
            let d = g.pieces[i].sub(&f.pieces[i]);
            let u = &f.breakpoints[i];
            let v = &f.breakpoints[i + 1];
            let du = d.eval(u);
            let dv = d.eval(v);
            if du < Q::zero() || dv < Q::zero() || (strict && du.is_zero() && dv.is_zero()) {
                return Ok(Comparison::Fails(interior_witness(&d, u, v)));
            }
        }
        Ok(Comparison::Holds)
    }

    /// Exact supremum of |self - other| over X: the maximum over breakpoint
    /// values and one-sided piece limits of the affine difference. The sup
    /// may be approached rather than attained (at a puncture) but is exact
    /// either way.
    pub fn sup_distance(&self, other: &PiecewiseFn) -> Result<ExtQ> {
        let (f, g) = self.common_refinement(other)?;
        let mut best = Q::zero();
        let mut push = |x: Q| {
            let a = if x < Q::zero() { -x } else { x };
            if a > best {
                best = a;
            }
        };
        for i in 0..f.breakpoints.len() {
            if let (Some(vf), Some(vg)) = (&f.values[i], &g.values[i]) {
                push(vf - vg);
            }
        }
        for i in 0..f.pieces.len() {
            let d = f.pieces[i].sub(&g.pieces[i]);
            push(d.eval(&f.breakpoints[i]));
            push(d.eval(&f.breakpoints[i + 1]));
        }
        Ok(ExtQ::Fin(best))
    }

    /// Removes breakpoints that change neither the law nor the value.
    /// Endpoints and punctures always stay.
    pub fn normalize(&self) -> PiecewiseFn {
        let mut breakpoints = vec![self.breakpoints[0].clone()];
        let mut values = vec![self.values[0].clone()];
        let mut pieces = vec![self.pieces[0].clone()];
        for i in 1..self.pieces.len() {
            let b = &self.breakpoints[i];
            let removable = !self.space.is_puncture(b)
                && self.pieces[i] == *pieces.last().unwrap()
                && self.values[i].as_ref() == Some(&self.pieces[i].eval(b));
            if !removable {
                breakpoints.push(b.clone());
                values.push(self.values[i].clone());
                pieces.push(self.pieces[i].clone());
            }
        }
        breakpoints.push(self.breakpoints.last().unwrap().clone());
        values.push(self.values.last().unwrap().clone());
        PiecewiseFn {
            space: self.space.clone(),
            breakpoints,
            values,
            pieces,
        }
    }

    /// Replaces the stored value at a breakpoint of X.
    pub(crate) fn set_value(&mut self, index: usize, v: Q) {
        debug_assert!(self.values[index].is_some());
        self.values[index] = Some(v);
    }

    pub(crate) fn set_piece(&mut self, index: usize, law: Affine) {
        self.pieces[index] = law;
    }
}

/// A point strictly inside (u, v) where the affine expression `d` is
/// negative, or the midpoint when `d` vanishes identically.
fn interior_witness(d: &Affine, u: &Q, v: &Q) -> Q {
    let du = d.eval(u);
    let dv = d.eval(v);
    if du.is_zero() && dv.is_zero() {
        return midpoint(u, v);
    }
    // One endpoint limit is negative; the failing set is the part of the
    // piece on that side of the root.
    let root = Affine::constant(Q::zero())
        .crossing(d)
        .filter(|r| r > u && r < v);
    match root {
        None => midpoint(u, v),
        Some(r) => {
            if du < Q::zero() {
                midpoint(u, &r)
            } else {
                midpoint(&r, v)
            }
        }
    }
}

impl PartialEq for PiecewiseFn {
    fn eq(&self, other: &PiecewiseFn) -> bool {
        if self.space != other.space {
            return false;
        }
        let a = self.normalize();
        let b = other.normalize();
        a.breakpoints == b.breakpoints && a.values == b.values && a.pieces == b.pieces
    }
}

impl Eq for PiecewiseFn {}

impl fmt::Display for PiecewiseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.breakpoints.iter().enumerate() {
            match &self.values[i] {
                Some(v) => write!(f, "({}; {})", q_to_text(b), q_to_text(v))?,
                None => write!(f, "({}; ·)", q_to_text(b))?,
            }
            if i < self.pieces.len() {
                let p = &self.pieces[i];
                write!(f, " [{}x+{}] ", q_to_text(&p.slope), q_to_text(&p.intercept))?;
            }
        }
        Ok(())
    }
}
