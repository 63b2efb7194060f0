//! Interval-valued cusco maps: an lsc lower profile and a usc upper profile
//! with lower <= upper. On a real domain these two conditions are exactly
//! upper semicontinuity with nonempty compact convex fibers. Minimality is
//! decided through envelopes of quasicontinuous selections, which the
//! piecewise class makes a finite computation: the cluster set of a
//! function at a point is its value together with its one-sided limits.

use crate::error::{Error, Result};
use crate::piecewise::{Comparison, PiecewiseFn};
use crate::rational::Q;
use crate::space::SpaceX;

/// A set-valued map with fibers `[lower(x), upper(x)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuscoMap {
    lower: PiecewiseFn,
    upper: PiecewiseFn,
}

/// The complement of a finite exception set inside a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiniteSet {
    space: SpaceX,
    exceptions: Vec<Q>,
}

impl CofiniteSet {
    pub fn new(space: SpaceX, mut exceptions: Vec<Q>) -> CofiniteSet {
        exceptions.sort();
        exceptions.dedup();
        CofiniteSet { space, exceptions }
    }

    pub fn exceptions(&self) -> &[Q] {
        &self.exceptions
    }

    pub fn space(&self) -> &SpaceX {
        &self.space
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.space.contains(x) && self.exceptions.binary_search(x).is_err()
    }
}

/// Outcome of a minimality check; `witness` is a strictly smaller cusco
/// map when the input is not minimal.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub witness: Option<CuscoMap>,
}

impl CuscoMap {
    /// Validates the cusco invariants in order: pointwise order, lower
    /// semicontinuity of the lower profile, upper semicontinuity of the
    /// upper profile. Reports the first violation with a witness point.
    pub fn new(lower: PiecewiseFn, upper: PiecewiseFn) -> Result<CuscoMap> {
        let (lower, upper) = lower.common_refinement(&upper)?;
        if let Comparison::Fails(x) = lower.pointwise_le(&upper)? {
            let lo = lower.eval(&x)?;
            let hi = upper.eval(&x)?;
            return Err(Error::OrderViolated { x, lo, hi });
        }
        let lc = lower.semicontinuity_class();
        if let Some(x) = lc.lsc_failures.first() {
            return Err(Error::LowerNotLsc(x.clone()));
        }
        let uc = upper.semicontinuity_class();
        if let Some(x) = uc.usc_failures.first() {
            return Err(Error::UpperNotUsc(x.clone()));
        }
        Ok(CuscoMap { lower, upper })
    }

    /// The singleton-fibered map of a continuous function.
    pub fn of_continuous(f: &PiecewiseFn) -> Result<CuscoMap> {
        let class = f.semicontinuity_class();
        if !class.is_continuous() {
            return Err(Error::WrongClass {
                expected: "continuous",
                found: class.kind.to_string(),
            });
        }
        Ok(CuscoMap {
            lower: f.clone(),
            upper: f.clone(),
        })
    }

    pub fn lower(&self) -> &PiecewiseFn {
        &self.lower
    }

    pub fn upper(&self) -> &PiecewiseFn {
        &self.upper
    }

    pub fn space(&self) -> &SpaceX {
        self.lower.space()
    }

    /// The fiber `[lower(x), upper(x)]` at a point of X.
    pub fn fiber(&self, x: &Q) -> Result<(Q, Q)> {
        Ok((self.lower.eval(x)?, self.upper.eval(x)?))
    }

    /// Shifts every fiber by the constant `c`.
    pub fn shift(&self, c: &Q) -> CuscoMap {
        CuscoMap {
            lower: self.lower.add_const(c),
            upper: self.upper.add_const(c),
        }
    }

    /// Reflects every fiber through 0.
    pub fn negate(&self) -> CuscoMap {
        CuscoMap {
            lower: self.upper.neg(),
            upper: self.lower.neg(),
        }
    }

    /// The set of points where the map is single-valued, which for a
    /// cofinitely single-valued piecewise map is the complement of a
    /// finite breakpoint set. A map with interval fibers along a whole
    /// piece is rejected.
    pub fn singleton_set(&self) -> Result<CofiniteSet> {
        for (pl, pu) in self.lower.pieces().iter().zip(self.upper.pieces().iter()) {
            if pl != pu {
                return Err(Error::NotSingletonCofinite);
            }
        }
        let mut exceptions = Vec::new();
        for (i, b) in self.lower.breakpoints().iter().enumerate() {
            if let (Some(lo), Some(hi)) = (&self.lower.values()[i], &self.upper.values()[i]) {
                if lo < hi {
                    exceptions.push(b.clone());
                }
            }
        }
        Ok(CofiniteSet::new(self.space().clone(), exceptions))
    }

    /// The canonical quasicontinuous subcontinuous selection: the lower
    /// profile, repaired at breakpoints where its value undercuts both
    /// one-sided limits by substituting the right limit (the left limit at
    /// the right endpoint). Closedness of the graph puts the limits of the
    /// lower profile inside the fibers, so the repair stays a selection.
    pub fn canonical_selection(&self) -> PiecewiseFn {
        let mut s = self.lower.clone();
        for i in 0..s.breakpoints().len() {
            let v = match &s.values()[i] {
                Some(v) => v.clone(),
                None => continue,
            };
            let b = s.breakpoints()[i].clone();
            let (left, right) = s.one_sided_limits(&b).expect("breakpoint within domain");
            let min_limit = match (&left, &right) {
                (Some(l), Some(r)) => Some(if l <= r { l.clone() } else { r.clone() }),
                (Some(l), None) => Some(l.clone()),
                (None, Some(r)) => Some(r.clone()),
                (None, None) => None,
            };
            if let Some(m) = min_limit {
                if v < m {
                    let repaired = right.or(left).expect("some limit exists");
                    s.set_value(i, repaired);
                }
            }
        }
        s
    }

    /// Exact pointwise fiber containment `self(x) ⊆ other(x)`.
    pub fn contained_in(&self, other: &CuscoMap) -> Result<bool> {
        Ok(other.lower.pointwise_le(&self.lower)?.holds()
            && self.upper.pointwise_le(&other.upper)?.holds())
    }

    /// Minimality, decided by envelope-of-selection equality: the map is
    /// minimal iff the envelope of its canonical selection restricted to
    /// the singleton set reproduces it.
    pub fn is_minimal(&self) -> MinimalityReport {
        let smaller = self.minimal_inside_restricted();
        match smaller {
            Ok(e) if e == *self => MinimalityReport {
                minimal: true,
                witness: None,
            },
            Ok(e) => MinimalityReport {
                minimal: false,
                witness: Some(e),
            },
            // Interval fibers along a whole piece: the restricted envelope
            // of the selection is still a strictly smaller cusco map.
            Err(_) => MinimalityReport {
                minimal: false,
                witness: Some(self.minimal_inside()),
            },
        }
    }

    fn minimal_inside_restricted(&self) -> Result<CuscoMap> {
        let holes = self.singleton_set()?.exceptions.clone();
        let s = self.canonical_selection();
        envelope_with_holes(&s, &holes)
    }

    /// The minimal cusco map contained in this map: the envelope of the
    /// canonical selection.
    pub fn minimal_inside(&self) -> CuscoMap {
        let s = self.canonical_selection();
        envelope(&s).expect("canonical selection is quasicontinuous")
    }
}

/// The exact cluster set of `f` at a point of [a, b]: the value where it
/// exists, together with the existing one-sided limits. Sorted ascending.
pub fn cluster_set(f: &PiecewiseFn, x: &Q) -> Result<Vec<Q>> {
    if !f.space().in_closure(x) {
        return Err(Error::OutsideDomain(x.clone()));
    }
    let mut out = Vec::new();
    if f.space().contains(x) {
        out.push(f.eval(x)?);
    }
    let (left, right) = f.one_sided_limits(x)?;
    out.extend(left);
    out.extend(right);
    out.sort();
    out.dedup();
    Ok(out)
}

/// The minimal cusco envelope of a quasicontinuous function: the fiber at
/// x is the convex hull of the cluster set.
pub fn envelope(f: &PiecewiseFn) -> Result<CuscoMap> {
    let report = f.is_quasicontinuous();
    if !report.holds {
        return Err(Error::NotQuasicontinuous(report.witnesses));
    }
    envelope_unchecked(f, &[])
}

/// Envelope of `f` restricted away from finitely many points: at a hole
/// the cluster set consists of the one-sided limits alone. Used for the
/// minimality test and the MC(X) addition, where the selection is only
/// densely defined.
pub fn envelope_with_holes(f: &PiecewiseFn, holes: &[Q]) -> Result<CuscoMap> {
    // Quasicontinuity is only required away from the holes.
    let report = f.is_quasicontinuous();
    let real: Vec<Q> = report
        .witnesses
        .iter()
        .filter(|w| !holes.contains(w))
        .cloned()
        .collect();
    if !real.is_empty() {
        return Err(Error::NotQuasicontinuous(real));
    }
    envelope_unchecked(f, holes)
}

fn envelope_unchecked(f: &PiecewiseFn, holes: &[Q]) -> Result<CuscoMap> {
    let f = f.refine(holes);
    let mut lower = f.clone();
    let mut upper = f.clone();
    for (i, b) in f.breakpoints().iter().enumerate() {
        if f.values()[i].is_none() {
            continue;
        }
        let (l, r) = f.one_sided_limits(b)?;
        let mut cluster: Vec<Q> = l.into_iter().chain(r).collect();
        if !holes.contains(b) {
            cluster.push(f.eval(b)?);
        }
        let lo = cluster.iter().min().expect("cluster nonempty").clone();
        let hi = cluster.iter().max().expect("cluster nonempty").clone();
        lower.set_value(i, lo);
        upper.set_value(i, hi);
    }
    CuscoMap::new(lower, upper)
}

/// The continuity set of `f`: exceptions are the breakpoints where the
/// value differs from an existing one-sided limit or the limits differ.
pub fn continuity_set(f: &PiecewiseFn) -> CofiniteSet {
    let mut exceptions = Vec::new();
    for (i, b) in f.breakpoints().iter().enumerate() {
        let v = match &f.values()[i] {
            Some(v) => v,
            None => continue,
        };
        let (l, r) = f
            .one_sided_limits(b)
            .expect("breakpoint within domain");
        let continuous = l.iter().chain(r.iter()).all(|lim| lim == v);
        if !continuous {
            exceptions.push(b.clone());
        }
    }
    CofiniteSet::new(f.space().clone(), exceptions)
}

/// Addition on minimal cusco maps: restrict both to the cofinite set where
/// they are single-valued, add the single-valued parts, and take the
/// envelope of the densely defined sum.
pub fn add_minimal(f: &CuscoMap, g: &CuscoMap) -> Result<CuscoMap> {
    if !f.is_minimal().minimal || !g.is_minimal().minimal {
        return Err(Error::NotMinimal);
    }
    let sf = f.singleton_set()?;
    let sg = g.singleton_set()?;
    let mut holes = sf.exceptions.clone();
    holes.extend(sg.exceptions.iter().cloned());
    holes.sort();
    holes.dedup();
    let sum = f.lower().add(g.lower())?;
    envelope_with_holes(&sum, &holes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::Affine;
    use crate::rational::{q, qi};

    fn unit_space() -> SpaceX {
        SpaceX::interval(qi(-1), qi(1)).unwrap()
    }

    fn heaviside(at_zero: Q) -> PiecewiseFn {
        PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(at_zero), Some(qi(1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(1))],
        )
        .unwrap()
    }

    /// The step map: {0} for x < 0, [0, 1] at 0, {1} for x > 0.
    fn step_map() -> CuscoMap {
        let lower = heaviside(qi(0));
        let upper = heaviside(qi(1));
        CuscoMap::new(lower, upper).unwrap()
    }

    #[test]
    fn validation_reports_first_violation() {
        // lower = upper = Heaviside(1 at 0): the lower profile is not lsc.
        let h = heaviside(qi(1));
        assert_eq!(CuscoMap::new(h.clone(), h), Err(Error::LowerNotLsc(qi(0))));

        assert!(CuscoMap::new(heaviside(qi(0)), heaviside(qi(1))).is_ok());

        let one = PiecewiseFn::constant(unit_space(), qi(1));
        let zero = PiecewiseFn::constant(unit_space(), qi(0));
        assert!(matches!(
            CuscoMap::new(one, zero),
            Err(Error::OrderViolated { .. })
        ));
    }

    #[test]
    fn cluster_sets() {
        let h = heaviside(qi(1));
        assert_eq!(cluster_set(&h, &qi(0)).unwrap(), vec![qi(0), qi(1)]);
        let c = PiecewiseFn::constant(unit_space(), qi(7));
        assert_eq!(cluster_set(&c, &q(1, 5)).unwrap(), vec![qi(7)]);

        // Densely defined: a jump hidden at a puncture still has a two-point
        // cluster set there.
        let space = SpaceX::new(qi(-1), qi(1), vec![qi(0)]).unwrap();
        let f = PiecewiseFn::new(
            space,
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), None, Some(qi(1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(1))],
        )
        .unwrap();
        assert_eq!(cluster_set(&f, &qi(0)).unwrap(), vec![qi(0), qi(1)]);
    }

    #[test]
    fn envelope_of_heaviside_is_the_step_map() {
        let env = envelope(&heaviside(qi(1))).unwrap();
        assert_eq!(env, step_map());
        assert_eq!(env.fiber(&qi(0)).unwrap(), (qi(0), qi(1)));
        assert!(env.is_minimal().minimal);
    }

    #[test]
    fn envelope_is_identity_on_continuous_functions() {
        let f = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(3)), (qi(1), qi(5))])
            .unwrap();
        let env = envelope(&f).unwrap();
        assert_eq!(env.lower(), &f);
        assert_eq!(env.upper(), &f);
    }

    #[test]
    fn envelope_rejects_non_quasicontinuous_input() {
        assert_eq!(
            envelope(&heaviside(q(1, 2))),
            Err(Error::NotQuasicontinuous(vec![qi(0)]))
        );
    }

    #[test]
    fn singleton_set_of_the_step_map() {
        assert_eq!(step_map().singleton_set().unwrap().exceptions(), &[qi(0)]);
        let c = CuscoMap::of_continuous(&PiecewiseFn::constant(unit_space(), qi(2))).unwrap();
        assert!(c.singleton_set().unwrap().exceptions().is_empty());
    }

    #[test]
    fn fat_piece_is_not_singleton_cofinite() {
        let f = CuscoMap::new(
            PiecewiseFn::constant(unit_space(), qi(0)),
            PiecewiseFn::constant(unit_space(), qi(1)),
        )
        .unwrap();
        assert_eq!(f.singleton_set(), Err(Error::NotSingletonCofinite));
    }

    #[test]
    fn continuity_set_examples() {
        assert_eq!(continuity_set(&heaviside(qi(1))).exceptions(), &[qi(0)]);
        let c = PiecewiseFn::constant(unit_space(), qi(2));
        assert!(continuity_set(&c).exceptions().is_empty());

        // Two jumps.
        let two = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), q(-1, 2), q(1, 2), qi(1)],
            vec![Some(qi(0)), Some(qi(0)), Some(qi(1)), Some(qi(2))],
            vec![
                Affine::constant(qi(0)),
                Affine::constant(qi(1)),
                Affine::constant(qi(2)),
            ],
        )
        .unwrap();
        assert_eq!(continuity_set(&two).exceptions(), &[q(-1, 2), q(1, 2)]);
    }

    #[test]
    fn canonical_selection_prefers_the_right_limit() {
        let s = step_map().canonical_selection();
        assert_eq!(s, heaviside(qi(0)));
        // The lower profile of the step map already equals a limit at 0, so
        // no repair happens. A genuinely undercutting value gets repaired:
        let dip = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(1)), Some(qi(0)), Some(qi(1))],
            vec![Affine::constant(qi(1)), Affine::constant(qi(1))],
        )
        .unwrap();
        let lift = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(1)), Some(qi(1)), Some(qi(1))],
            vec![Affine::constant(qi(1)), Affine::constant(qi(1))],
        )
        .unwrap();
        let f = CuscoMap::new(dip, lift).unwrap();
        let s = f.canonical_selection();
        assert_eq!(s.eval(&qi(0)).unwrap(), qi(1));
        assert!(s.is_quasicontinuous().holds);
    }

    #[test]
    fn selection_is_a_quasicontinuous_selection() {
        let f = step_map();
        let s = f.canonical_selection();
        assert!(s.is_quasicontinuous().holds);
        // Selection: lower <= s <= upper pointwise.
        assert!(f.lower().pointwise_le(&s).unwrap().holds());
        assert!(s.pointwise_le(f.upper()).unwrap().holds());
        // Envelope of the selection reproduces the map.
        assert_eq!(envelope(&s).unwrap(), f);
    }

    #[test]
    fn minimality_verdicts() {
        assert!(step_map().is_minimal().minimal);

        // Fat fiber at 0 over constant-0 surroundings: not minimal; the
        // witness is the constant 0 map.
        let lower = PiecewiseFn::constant(unit_space(), qi(0));
        let upper = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(qi(1)), Some(qi(0))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(0))],
        )
        .unwrap();
        let fat = CuscoMap::new(lower, upper).unwrap();
        let report = fat.is_minimal();
        assert!(!report.minimal);
        let zero_map =
            CuscoMap::of_continuous(&PiecewiseFn::constant(unit_space(), qi(0))).unwrap();
        assert_eq!(report.witness.unwrap(), zero_map);

        let f = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(0)), (qi(1), qi(1))])
            .unwrap();
        assert!(CuscoMap::of_continuous(&f).unwrap().is_minimal().minimal);
    }

    #[test]
    fn minimal_inside_collapses_constant_band() {
        let band = CuscoMap::new(
            PiecewiseFn::constant(unit_space(), qi(0)),
            PiecewiseFn::constant(unit_space(), qi(1)),
        )
        .unwrap();
        let m = band.minimal_inside();
        let zero_map =
            CuscoMap::of_continuous(&PiecewiseFn::constant(unit_space(), qi(0))).unwrap();
        assert_eq!(m, zero_map);
        assert!(m.contained_in(&band).unwrap());
        assert!(m.is_minimal().minimal);
    }

    #[test]
    fn minimal_inside_is_idempotent_on_minimal_maps() {
        let f = step_map();
        assert_eq!(f.minimal_inside(), f);
    }

    #[test]
    fn minimal_inside_of_widened_step() {
        let f = step_map();
        let widened = CuscoMap::new(
            f.lower().add_const(&qi(-1)),
            f.upper().add_const(&qi(1)),
        )
        .unwrap();
        let m = widened.minimal_inside();
        assert!(m.contained_in(&widened).unwrap());
        assert!(m.is_minimal().minimal);
    }

    /// The paper's addition example: the step-up map plus the step-down map
    /// is the constant 0 map.
    #[test]
    fn addition_of_opposite_steps_vanishes() {
        let f = step_map();
        // G: {0} for x < 0, [-1, 0] at 0, {-1} for x > 0.
        let g_lower = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(qi(-1)), Some(qi(-1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(-1))],
        )
        .unwrap();
        let g_upper = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(qi(0)), Some(qi(-1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(-1))],
        )
        .unwrap();
        let g = CuscoMap::new(g_lower, g_upper).unwrap();
        assert!(g.is_minimal().minimal);

        let sum = add_minimal(&f, &g).unwrap();
        let zero_map =
            CuscoMap::of_continuous(&PiecewiseFn::constant(unit_space(), qi(0))).unwrap();
        assert_eq!(sum, zero_map);

        // F + (-F) vanishes by the same computation.
        let sum2 = add_minimal(&f, &f.negate()).unwrap();
        assert_eq!(sum2, zero_map);
    }

    #[test]
    fn addition_extends_continuous_addition() {
        let f = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(0)), (qi(1), qi(2))])
            .unwrap();
        let g = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(5)), (qi(1), qi(3))])
            .unwrap();
        let fc = CuscoMap::of_continuous(&f).unwrap();
        let gc = CuscoMap::of_continuous(&g).unwrap();
        let sum = add_minimal(&fc, &gc).unwrap();
        assert_eq!(sum, CuscoMap::of_continuous(&f.add(&g).unwrap()).unwrap());
    }

    #[test]
    fn addition_rejects_non_minimal_inputs() {
        let band = CuscoMap::new(
            PiecewiseFn::constant(unit_space(), qi(0)),
            PiecewiseFn::constant(unit_space(), qi(1)),
        )
        .unwrap();
        let f = step_map();
        assert_eq!(add_minimal(&band, &f), Err(Error::NotMinimal));
    }

    #[test]
    fn singleton_set_equals_continuity_set_of_selection() {
        let f = step_map();
        let s = f.canonical_selection();
        assert_eq!(
            f.singleton_set().unwrap().exceptions(),
            continuity_set(&s).exceptions()
        );
    }
}
