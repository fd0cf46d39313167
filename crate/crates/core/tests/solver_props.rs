use std::collections::HashSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use quadruple_einstein::families::{instantiate, scan_instances, FamilyId, FamilyParams, ScanBounds};
use quadruple_einstein::ricci::{residuals_in, Constants};
use quadruple_einstein::roots::{sturm_isolate, Domain};
use quadruple_einstein::solver::{
    diagonal_quadratic, einstein_sextic, exception_detect, fbar_cubic, m_factorization, solve, Branch,
    ExceptionClass, SolveOptions,
};
use quadruple_einstein::{int, rat, Interval, Quadruple, Rational, RationalPolynomial};

fn instances() -> &'static [Quadruple] {
    static CELL: OnceLock<Vec<Quadruple>> = OnceLock::new();
    CELL.get_or_init(|| {
        scan_instances(&ScanBounds::new(6, 6))
            .into_iter()
            .map(|(id, p)| instantiate(id, &p).unwrap())
            .collect()
    })
}

fn any_instance() -> impl Strategy<Value = &'static Quadruple> {
    (0..instances().len()).prop_map(|i| &instances()[i])
}

#[test]
fn beta_exceeds_one_everywhere() {
    for q in instances() {
        let mf = m_factorization(q).unwrap();
        assert!(mf.beta > Rational::one(), "{}", q.provenance);
        assert!(mf.m.is_positive());
    }
}

#[test]
fn fbar_at_zero() {
    for q in instances() {
        let mf = m_factorization(q).unwrap();
        let c = &q.casimir;
        let d = &c.k_p - &c.h_p;
        let expected = -(&mf.m * &mf.beta / int(4)) * &d * &d;
        let at0 = fbar_cubic(q).unwrap().eval(&Rational::zero());
        assert_eq!(at0, expected, "{}", q.provenance);
        if !d.is_zero() {
            assert!(at0.is_negative());
        }
    }
}

#[test]
fn nonnegative_omega_puts_the_root_between_one_and_beta() {
    let mut checked = 0;
    for q in instances() {
        let (w1, w2) = q.omega();
        if w1.is_negative() || w2.is_negative() {
            continue;
        }
        let fbar = fbar_cubic(q).unwrap();
        let beta = m_factorization(q).unwrap().beta;
        let roots = sturm_isolate(&fbar, &Domain::positive()).unwrap();
        assert_eq!(roots.len(), 1, "{}", q.provenance);
        let r = &roots[0];
        assert!(r.lo >= Rational::one() && r.hi <= beta, "{}", q.provenance);
        assert!(!r.may_equal(&Rational::one()) && !r.may_equal(&beta), "{}", q.provenance);
        checked += 1;
    }
    assert!(checked > 1000, "only {checked} instances with nonnegative omega");
}

/// A standard quadruple with `h_n` lowered below `h_u`.
fn lowered(q: &Quadruple, by: &Rational) -> Option<Quadruple> {
    let mut s = q.clone();
    s.casimir.h_n = &s.casimir.h_u - by;
    (s.validate().is_ok() && s.casimir.k_p != s.casimir.h_p).then_some(s)
}

fn cofactor(q: &Quadruple) -> RationalPolynomial {
    let m = &q.c2 / int(4) + &q.casimir.h_n / int(2);
    let (f, r) = einstein_sextic(q).div_rem(&diagonal_quadratic(q).scale(&-m));
    assert!(r.is_zero(), "{}", q.provenance);
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smaller_h_n_gives_the_three_signs(q in any_instance(), num in 1i64..=20) {
        prop_assume!(!q.flags.h_trivial);
        let by = &q.casimir.h_u * rat(num, 21);
        let Some(s) = lowered(q, &by) else { return Ok(()); };
        let f = cofactor(&s);
        prop_assert!(f.eval(&Rational::zero()).is_positive());
        prop_assert!(f.eval(&Rational::one()).is_negative());
        prop_assert!(f.leading().unwrap().is_positive());
        // hence a root on each side of 1
        let roots = sturm_isolate(&f, &Domain::positive()).unwrap();
        prop_assert!(roots.iter().any(|r| r.hi <= Rational::one()));
        prop_assert!(roots.iter().any(|r| r.lo >= Rational::one()));
    }

    #[test]
    fn emitted_solutions_are_certified(q in any_instance()) {
        let opts = SolveOptions::default();
        let sols = solve(q, &opts).unwrap();
        let k = Constants::<Interval<Rational>>::of(q);
        for s in &sols {
            prop_assert!(s.residual_bound < opts.tol);
            prop_assert!(s.x.lo().is_positive());
            prop_assert!(s.y.lo().is_positive());
            let res = residuals_in(&k, &s.x.enclosure(), &s.y.enclosure(), &s.lambda.enclosure());
            prop_assert!(res.iter().all(|r| r.contains_zero()));
        }
        // the three natural solutions are always there
        prop_assert!(sols.iter().filter(|s| s.naturally_reductive).count() >= 2);
        let generic = sols.iter().filter(|s| s.branch == Branch::Generic).count();
        if exception_detect(q) == ExceptionClass::NotExceptional {
            prop_assert!(generic >= 1 || q.omega().0.is_negative() || q.omega().1.is_negative());
        }
    }
}

// Independent check of the squaring filter: a floating-point grid over
// (0, 6.5]^2 marks cells where both reduced equations change sign. Counts are
// compared inside (0, 6.25)^2, so clusters cut by the grid edge never count.

const STEP: f64 = 1e-3;
const SPAN: usize = 6500;
const WINDOW: f64 = 6.25;

fn reduced(k: &Constants<f64>, x: f64, y: f64) -> (f64, f64) {
    let r = quadruple_einstein::ricci::ricci_coeffs_in(k, &x, &y);
    (r.r_u - x * r.r_n, r.r_p - y * r.r_n)
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// A zero corner counts as both signs: `G` vanishes identically on `x = 1`.
fn changes(signs: [i8; 4]) -> bool {
    signs.iter().any(|s| *s >= 0) && signs.iter().any(|s| *s <= 0)
}

fn sign_row(k: &Constants<f64>, j: usize) -> Vec<(i8, i8)> {
    let y = (j + 1) as f64 * STEP;
    (0..SPAN)
        .map(|i| {
            let (g, h) = reduced(k, (i + 1) as f64 * STEP, y);
            (sign(g), sign(h))
        })
        .collect()
}

/// Connected clusters (8-neighbour) of cells where both equations change sign.
fn grid_clusters(q: &Quadruple) -> Vec<(f64, f64)> {
    let k = Constants::<f64>::of(q);
    let mut flagged: Vec<(usize, usize)> = Vec::new();
    let mut below = sign_row(&k, 0);
    for j in 1..SPAN {
        let above = sign_row(&k, j);
        for i in 0..SPAN - 1 {
            let corners = [below[i], below[i + 1], above[i], above[i + 1]];
            if changes(corners.map(|c| c.0)) && changes(corners.map(|c| c.1)) {
                flagged.push((i, j - 1));
            }
        }
        below = above;
    }
    let cells: HashSet<(usize, usize)> = flagged.iter().copied().collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut clusters = Vec::new();
    for &start in &flagged {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some((i, j)) = stack.pop() {
            members.push((i, j));
            for di in [-1isize, 0, 1] {
                for dj in [-1isize, 0, 1] {
                    let n = (i.wrapping_add_signed(di), j.wrapping_add_signed(dj));
                    if cells.contains(&n) && seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
        }
        let n = members.len() as f64;
        let cx = members.iter().map(|c| (c.0 + 1) as f64).sum::<f64>() / n * STEP;
        let cy = members.iter().map(|c| (c.1 + 1) as f64).sum::<f64>() / n * STEP;
        clusters.push((cx, cy));
    }
    merge_nearby(&clusters)
}

/// Near a tangency the flagged cells break into fragments; fragments linked
/// by gaps shorter than `MERGE` count as one solution.
const MERGE: f64 = 0.1;

fn merge_nearby(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let close = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).hypot(a.1 - b.1) < MERGE;
    let mut group: Vec<usize> = (0..pts.len()).collect();
    // single linkage by repeated relabelling; the lists are short
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..pts.len() {
            for b in 0..pts.len() {
                if close(pts[a], pts[b]) && group[b] > group[a] {
                    group[b] = group[a];
                    changed = true;
                }
            }
        }
    }
    let mut labels = group.clone();
    labels.sort();
    labels.dedup();
    labels
        .iter()
        .map(|l| {
            let members: Vec<&(f64, f64)> = pts.iter().zip(&group).filter(|(_, g)| *g == l).map(|(p, _)| p).collect();
            let n = members.len() as f64;
            (members.iter().map(|p| p.0).sum::<f64>() / n, members.iter().map(|p| p.1).sum::<f64>() / n)
        })
        .collect()
}

fn grid_fixtures() -> Vec<Quadruple> {
    use FamilyId::*;
    let single = |id| instantiate(id, &FamilyParams::default()).unwrap();
    vec![
        single(A5),
        single(A6),
        single(B4),
        single(B5),
        single(B13),
        single(B17),
        instantiate(B3, &FamilyParams::n12k(2, 2, 1)).unwrap(),
        instantiate(B3, &FamilyParams::n12k(2, 2, 2)).unwrap(),
        instantiate(A4, &FamilyParams::n123k(2, 2, 2, 1)).unwrap(),
        instantiate(A4, &FamilyParams::n123k(10, 2, 2, 2)).unwrap(),
        instantiate(A1, &FamilyParams::n123k(2, 2, 2, 1)).unwrap(),
        instantiate(B1, &FamilyParams::n12k(2, 2, 3)).unwrap(),
    ]
}

#[test]
fn grid_search_finds_the_same_number_of_solutions() {
    for q in grid_fixtures() {
        let sols = solve(&q, &SolveOptions::default()).unwrap();
        let inside: Vec<(f64, f64)> = sols
            .iter()
            .map(|s| (s.x.to_f64(), s.y.to_f64()))
            .filter(|&(x, y)| x < WINDOW && y < WINDOW)
            .collect();
        let clusters: Vec<(f64, f64)> = grid_clusters(&q)
            .into_iter()
            .filter(|&(x, y)| x < WINDOW && y < WINDOW)
            .collect();
        assert_eq!(
            clusters.len(),
            inside.len(),
            "{}: grid {clusters:?}, solver {inside:?}",
            q.provenance
        );
        for (x, y) in &inside {
            assert!(
                clusters.iter().any(|(cx, cy)| (cx - x).hypot(cy - y) < MERGE),
                "{}: no grid cluster near ({x}, {y})",
                q.provenance
            );
        }
    }
}
