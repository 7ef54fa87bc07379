//! Constants the stated hypotheses accept but whose iterates leave the
//! promised `c·q^(3^k)` envelope.

use simulroot::polys::{FactoredPoly, Polynomial};
use simulroot::solver::{solve, EstimateVector, MultiplicityProfile, SolveConfig};
use simulroot::theory::{check_theorem2, check_theorem3, error_bound, max_separation, min_separation};
use simulroot::{Family, PrecisionConfig, Real};

fn r(s: &str) -> Real {
    Real::parse(s, PrecisionConfig::default()).unwrap()
}

fn rs(v: &[&str]) -> Vec<Real> {
    v.iter().map(|s| r(s)).collect()
}

/// First `(k, i)` with `|x_i^[k] - r_i| > c·q^(3^k)`.
fn first_violation(family: Family, roots: &[Real], mults: &[u32], init: Vec<Real>, c: &Real, q: &Real) -> Option<(usize, usize)> {
    let p: Polynomial<Real> = FactoredPoly::new(family, roots.to_vec(), mults.to_vec()).unwrap().into();
    let prof = MultiplicityProfile::new(family, mults.to_vec()).unwrap();
    let mut cfg = SolveConfig::default_for(&roots[0]);
    cfg.max_iters = 3;
    let report = solve(&p, &prof, EstimateVector::initial(init), &cfg).unwrap();
    assert!(report.failure.is_none());
    for (k, snap) in report.trace.snapshots.iter().enumerate() {
        let bound = error_bound(c, q, k as u32);
        for (i, (x, root)) in snap.x.iter().zip(roots).enumerate() {
            if (x.clone() - root.clone()).abs() > bound {
                return Some((k, i + 1));
            }
        }
    }
    None
}

#[test]
fn theorem2_stated_form_alone_is_not_enough() {
    let (d, c, q, xi) = (r("1.0629"), r("0.33878"), r("0.69533"), r("0.9229"));
    let roots = vec![r("0"), d.clone(), r("2.1258")];
    let mults = [1, 4, 1];
    let report = check_theorem2(3, &mults, &d, &max_separation(&roots).unwrap(), &c, &q, &xi);
    let failing: Vec<&str> = report.failures().map(|row| row.name.as_str()).collect();
    assert_eq!(failing, ["main inequality (derivation form)"; 3]);
    assert!(report.rows.iter().filter(|row| row.name == "main inequality (stated)").all(|row| row.holds));

    let init = rs(&["-0.1018", "1.0588", "1.9166"]);
    assert!(init.iter().zip(&roots).all(|(x, root)| (x.clone() - root.clone()).abs() <= c.clone() * q.clone()));
    assert!(matches!(first_violation(Family::Trigonometric, &roots, &mults, init, &c, &q), Some((1, _))));
}

#[test]
fn theorem3_accepts_constants_the_iteration_exceeds() {
    let (c, q) = (r("0.394111"), r("0.915094"));
    let roots = rs(&["0", "3.44896", "6.89792", "10.34688"]);
    let d = min_separation(&roots).unwrap();
    let mults = [1, 1, 1, 1];
    assert!(check_theorem3(2, &mults, &d, &c, &q).overall_pass);

    let init = rs(&["0.3483", "3.1958", "6.6588", "10.2651"]);
    assert!(init.iter().zip(&roots).all(|(x, root)| (x.clone() - root.clone()).abs() <= c.clone() * q.clone()));
    assert!(first_violation(Family::Exponential, &roots, &mults, init, &c, &q).is_some());
}
