//! Continuous insertion between an upper and a lower semicontinuous
//! function, and monotone continuous approximation of a semicontinuous
//! function. Both constructions stay inside the piecewise-affine class and
//! are verified by exact comparison before they are returned.

use crate::error::{Error, Result};
use crate::piecewise::{Affine, Comparison, PiecewiseFn};
use crate::rational::{half, midpoint, q, qi, Q};
use num_traits::{Signed, Zero};

/// Direction of a monotone approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Continuous functions increasing to an lsc target from below.
    Up,
    /// Continuous functions decreasing to a usc target from above.
    Down,
}

/// Inserts a continuous g with `f <= g <= h` (strict where requested)
/// between a usc `f` and an lsc `h` with `f <= h` pointwise.
///
/// On each open piece g is the affine midline (f+h)/2; at each breakpoint
/// g takes the midpoint of [f(b), h(b)] and is spliced linearly to the
/// midlines over a radius that starts at half the minimum breakpoint gap
/// and halves until the exact comparisons pass. Semicontinuity of the
/// inputs guarantees the first radius already passes; the loop is kept as
/// the construction contract.
pub fn insert_continuous(
    f: &PiecewiseFn,
    h: &PiecewiseFn,
    strict: bool,
) -> Result<PiecewiseFn> {
    let fc = f.semicontinuity_class();
    if !fc.is_usc() {
        return Err(Error::WrongClass {
            expected: "upper semicontinuous",
            found: fc.kind.to_string(),
        });
    }
    let hc = h.semicontinuity_class();
    if !hc.is_lsc() {
        return Err(Error::WrongClass {
            expected: "lower semicontinuous",
            found: hc.kind.to_string(),
        });
    }
    let (f, h) = f.common_refinement(h)?;
    match f.pointwise_le(&h)? {
        Comparison::Holds => {}
        Comparison::Fails(x) => {
            let lo = f.eval(&x)?;
            let hi = h.eval(&x)?;
            return Err(Error::OrderViolated { x, lo, hi });
        }
    }
    if strict {
        if let Comparison::Fails(x) = f.pointwise_lt(&h)? {
            return Err(Error::StrictOrderViolated(x));
        }
    }

    let midline = f.add(&h)?.scale(&half(&qi(1)));
    let splice_at: Vec<usize> = (0..midline.breakpoints().len())
        .filter(|&i| breakpoint_jumps(&midline, i))
        .collect();
    if splice_at.is_empty() {
        return Ok(midline.normalize());
    }

    let min_gap = midline
        .breakpoints()
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("at least one piece");
    let mut delta = half(&min_gap);
    for _ in 0..64 {
        let g = splice(&midline, &splice_at, &delta);
        let lower_ok = if strict {
            f.pointwise_lt(&g)?
        } else {
            f.pointwise_le(&g)?
        };
        let upper_ok = if strict {
            g.pointwise_lt(&h)?
        } else {
            g.pointwise_le(&h)?
        };
        if lower_ok.holds() && upper_ok.holds() {
            return Ok(g.normalize());
        }
        delta = half(&delta);
    }
    Err(Error::Internal("insertion splice failed to stabilize"))
}

/// True when the stored value at breakpoint `i` differs from an adjacent
/// one-sided limit, i.e. the function jumps there.
fn breakpoint_jumps(f: &PiecewiseFn, i: usize) -> bool {
    let v = match &f.values()[i] {
        Some(v) => v,
        None => return false,
    };
    let b = &f.breakpoints()[i];
    let mut jumps = false;
    if i > 0 {
        jumps |= f.pieces()[i - 1].eval(b) != *v;
    }
    if i < f.pieces().len() {
        jumps |= f.pieces()[i].eval(b) != *v;
    }
    jumps
}

/// Connects the stored value at each listed breakpoint linearly to the
/// surrounding laws over radius `delta`.
fn splice(base: &PiecewiseFn, at: &[usize], delta: &Q) -> PiecewiseFn {
    let mut cut_points = Vec::new();
    for &i in at {
        let b = &base.breakpoints()[i];
        if i > 0 {
            cut_points.push(b - delta);
        }
        if i < base.pieces().len() {
            cut_points.push(b + delta);
        }
    }
    let mut out = base.refine(&cut_points);
    for &i in at {
        let b = base.breakpoints()[i].clone();
        let v = base.values()[i].clone().expect("spliced breakpoints are valued");
        let bi = out
            .breakpoint_index(&b)
            .expect("refinement keeps breakpoints");
        if bi > 0 {
            let s = &out.breakpoints()[bi - 1];
            let sv = out.pieces()[bi - 1].eval(s);
            out.set_piece(bi - 1, Affine::through((s, &sv), (&b, &v)));
        }
        if bi < out.pieces().len() {
            let s = &out.breakpoints()[bi + 1];
            let sv = out.pieces()[bi].eval(s);
            out.set_piece(bi, Affine::through((&b, &v), (s, &sv)));
        }
    }
    out
}

/// Continuous monotone approximation of a semicontinuous function.
///
/// For direction `Up` the target must be lsc; the result shaves `1/n` off
/// the target and smooths every jump linearly over a window of width
/// `min(1/n, half the gap to the adjacent breakpoints)`, so that
/// `g_n <= f`, `g_n` is nondecreasing in n, and the error away from the
/// jump windows is exactly `1/n`.
pub fn monotone_approx(f: &PiecewiseFn, n: u32, direction: Direction) -> Result<PiecewiseFn> {
    assert!(n > 0, "approximation index must be positive");
    let class = f.semicontinuity_class();
    match direction {
        Direction::Up if !class.is_lsc() => {
            return Err(Error::WrongClass {
                expected: "lower semicontinuous",
                found: class.kind.to_string(),
            })
        }
        Direction::Down if !class.is_usc() => {
            return Err(Error::WrongClass {
                expected: "upper semicontinuous",
                found: class.kind.to_string(),
            })
        }
        _ => {}
    }
    let step = q(1, n as i64);
    let shave = match direction {
        Direction::Up => -step.clone(),
        Direction::Down => step.clone(),
    };
    let shaved = f.add_const(&shave);
    let jump_at: Vec<usize> = (0..f.breakpoints().len())
        .filter(|&i| breakpoint_jumps(f, i))
        .collect();
    if jump_at.is_empty() {
        return Ok(shaved.normalize());
    }

    // Window cut points per jump, capped by half the gap to the neighbors.
    let mut cut_points = Vec::new();
    for &i in &jump_at {
        let b = &f.breakpoints()[i];
        if i > 0 {
            let gap = half(&(b - &f.breakpoints()[i - 1]));
            let w = if step < gap { step.clone() } else { gap };
            cut_points.push(b - &w);
        }
        if i + 1 < f.breakpoints().len() {
            let gap = half(&(&f.breakpoints()[i + 1] - b));
            let w = if step < gap { step.clone() } else { gap };
            cut_points.push(b + &w);
        }
    }
    let mut out = shaved.refine(&cut_points);
    for &i in &jump_at {
        let b = f.breakpoints()[i].clone();
        let target = f.values()[i].clone().expect("jumping breakpoints are valued") + &shave;
        let bi = out
            .breakpoint_index(&b)
            .expect("refinement keeps breakpoints");
        out.set_value(bi, target.clone());
        if bi > 0 {
            let s = &out.breakpoints()[bi - 1];
            let sv = out.pieces()[bi - 1].eval(s);
            out.set_piece(bi - 1, Affine::through((s, &sv), (&b, &target)));
        }
        if bi < out.pieces().len() {
            let s = &out.breakpoints()[bi + 1];
            let sv = out.pieces()[bi].eval(s);
            out.set_piece(bi, Affine::through((&b, &target), (s, &sv)));
        }
    }
    Ok(out.normalize())
}

/// Exact supremum of |g - f| restricted to the points of X at distance at
/// least `radius` from every breakpoint in `centers`. Test support for the
/// approximation guarantee.
pub fn sup_distance_away_from(
    f: &PiecewiseFn,
    g: &PiecewiseFn,
    centers: &[Q],
    radius: &Q,
) -> Result<Q> {
    let cuts: Vec<Q> = centers
        .iter()
        .flat_map(|c| [c - radius, c + radius])
        .collect();
    let (f, g) = f.common_refinement(g)?;
    let f = f.refine(&cuts);
    let g = g.refine(&cuts);
    let allowed = |x: &Q| centers.iter().all(|c| (x - c).abs() >= *radius);
    let mut best = Q::zero();
    let mut push = |x: Q| {
        let a = x.abs();
        if a > best {
            best = a;
        }
    };
    for (i, b) in f.breakpoints().iter().enumerate() {
        if !allowed(b) {
            continue;
        }
        if let (Some(vf), Some(vg)) = (&f.values()[i], &g.values()[i]) {
            push(vf - vg);
        }
    }
    for i in 0..f.pieces().len() {
        let u = &f.breakpoints()[i];
        let v = &f.breakpoints()[i + 1];
        let m = midpoint(u, v);
        if !allowed(&m) {
            continue;
        }
        let d = f.pieces()[i].sub(&g.pieces()[i]);
        push(d.eval(u));
        push(d.eval(v));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use crate::space::SpaceX;

    fn unit_space() -> SpaceX {
        SpaceX::interval(qi(-1), qi(1)).unwrap()
    }

    fn pinched_pair() -> (PiecewiseFn, PiecewiseFn) {
        // f = 1 at 0, else 0 (usc); h = 1 at 0, else 2 (lsc).
        let f = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(qi(1)), Some(qi(0))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(0))],
        )
        .unwrap();
        let h = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(2)), Some(qi(1)), Some(qi(2))],
            vec![Affine::constant(qi(2)), Affine::constant(qi(2))],
        )
        .unwrap();
        (f, h)
    }

    #[test]
    fn pinch_forces_the_value() {
        let (f, h) = pinched_pair();
        let g = insert_continuous(&f, &h, false).unwrap();
        assert!(g.is_continuous());
        assert_eq!(g.eval(&qi(0)).unwrap(), qi(1));
        assert!(f.pointwise_le(&g).unwrap().holds());
        assert!(g.pointwise_le(&h).unwrap().holds());
    }

    #[test]
    fn midline_of_constants() {
        let f = PiecewiseFn::constant(unit_space(), qi(0));
        let h = PiecewiseFn::constant(unit_space(), qi(1));
        let g = insert_continuous(&f, &h, true).unwrap();
        assert_eq!(g, PiecewiseFn::constant(unit_space(), q(1, 2)));
    }

    #[test]
    fn order_violation_reported() {
        let f = PiecewiseFn::constant(unit_space(), qi(1));
        let h = PiecewiseFn::constant(unit_space(), qi(0));
        assert!(matches!(
            insert_continuous(&f, &h, false),
            Err(Error::OrderViolated { .. })
        ));
    }

    #[test]
    fn strict_rejected_on_pinch() {
        let (f, h) = pinched_pair();
        assert_eq!(
            insert_continuous(&f, &h, true),
            Err(Error::StrictOrderViolated(qi(0)))
        );
    }

    #[test]
    fn class_mismatch_rejected() {
        // lsc-only f cannot play the usc role.
        let f = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(1)), Some(qi(0)), Some(qi(1))],
            vec![Affine::constant(qi(1)), Affine::constant(qi(1))],
        )
        .unwrap();
        let h = PiecewiseFn::constant(unit_space(), qi(5));
        assert!(matches!(
            insert_continuous(&f, &h, false),
            Err(Error::WrongClass { .. })
        ));
    }

    fn lsc_step() -> PiecewiseFn {
        // 0 for x <= 0, 1 for x > 0, value 0 at the jump.
        PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(qi(0)), Some(qi(1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(1))],
        )
        .unwrap()
    }

    #[test]
    fn monotone_approx_ramps_over_the_jump() {
        let f = lsc_step();
        for n in 1..=10u32 {
            let g = monotone_approx(&f, n, Direction::Up).unwrap();
            assert!(g.is_continuous());
            assert!(g.pointwise_le(&f).unwrap().holds(), "g_{n} <= f");
            let inv_n = q(1, n as i64);
            assert_eq!(g.eval(&qi(0)).unwrap(), -inv_n.clone());
            let w = if inv_n < q(1, 2) { inv_n.clone() } else { q(1, 2) };
            assert_eq!(g.eval(&w).unwrap(), qi(1) - inv_n.clone());
            if n > 1 {
                let prev = monotone_approx(&f, n - 1, Direction::Up).unwrap();
                assert!(prev.pointwise_le(&g).unwrap().holds(), "monotone in n");
            }
        }
    }

    #[test]
    fn monotone_approx_error_away_from_jumps() {
        let f = lsc_step();
        for n in [2u32, 5, 9] {
            let g = monotone_approx(&f, n, Direction::Up).unwrap();
            let inv_n = q(1, n as i64);
            let err = sup_distance_away_from(&f, &g, &[qi(0)], &inv_n).unwrap();
            assert!(err <= inv_n);
        }
    }

    #[test]
    fn continuous_case_is_a_plain_shift() {
        let f = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(2)), (qi(1), qi(3))])
            .unwrap();
        let g = monotone_approx(&f, 4, Direction::Up).unwrap();
        assert_eq!(g, f.add_const(&q(-1, 4)));
        let d = monotone_approx(&f, 4, Direction::Down).unwrap();
        assert_eq!(d, f.add_const(&q(1, 4)));
    }

    #[test]
    fn wrong_direction_rejected() {
        // usc step: value 1 at the jump.
        let f = PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(qi(1)), Some(qi(1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(1))],
        )
        .unwrap();
        assert!(matches!(
            monotone_approx(&f, 3, Direction::Up),
            Err(Error::WrongClass { .. })
        ));
    }
}
