//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fano_core::arith::{bound_b, sylvester, Rational};
use fano_core::bounds::{scan_exceptions, slicing_identity, staged_bound_holds, unit_fraction_bound_check, SlicingData};
use fano_core::classify::{
    check_simplex_weights, classify, minimal_simplex_weights, staged_verify_dim5, ClassificationCase,
    ClassificationReport,
};
use fano_core::construct::{
    dual_simplex_vertices, face_volume_f, glue, reflexive_r, simplex_from_weights, simplex_in_basis, weights,
    BarycentricVector, WeightSystem,
};
use fano_core::polytope::{cross_polytope, equivalent, from_i64, hull, normal_form, FanOrder, RationalPolytope};

type Outcome = Result<String, String>;

/// Sylvester numbers written out, independent of the library recurrence.
const S: [u64; 6] = [2, 3, 7, 43, 1807, 3263443];

fn q(p: i64, r: i64) -> Rational {
    Rational::new(p.into(), r.into())
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn fact(n: u64) -> u64 {
    (1..=n).product()
}

fn ws(v: &[u64]) -> WeightSystem {
    WeightSystem::new(v.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn sylvester_table() -> Outcome {
    for (i, &s) in S.iter().enumerate() {
        let got = sylvester(i + 1).map_err(e)?;
        ensure(got == BigInt::from(s), || format!("s_{} = {got}, expected {s}", i + 1))?;
    }
    for (d, b) in [(3, 72u64), (4, 3528), (5, 6523272)] {
        let got = bound_b(d).map_err(e)?;
        ensure(got == BigInt::from(b), || format!("B_{d} = {got}, expected {b}"))?;
    }
    Ok("s_1..s_6 and B_3, B_4, B_5 exact".into())
}

fn equality_cases() -> Outcome {
    let p1113 = from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -3]]).map_err(e)?;
    let v = p1113.dual().map_err(e)?.volume();
    ensure(v == int(12), || format!("vol(P_1113*) = {v}"))?;
    // the second extremal simplex is P_1146 = R_3*, whose dual is R_3 again
    let r3_dual = reflexive_r(3).map_err(e)?.dual().map_err(e)?;
    let p1146 = simplex_from_weights(&ws(&[1, 1, 4, 6])).map_err(e)?;
    ensure(equivalent(&r3_dual, &p1146).map_err(e)?, || "R_3* is not P_1146".into())?;
    let v = p1146.dual().map_err(e)?.volume();
    ensure(v == int(12), || format!("vol(P_1146*) = {v}"))?;
    let v = r3_dual.volume();
    ensure(v == int(2), || format!("vol(R_3*) = {v}, expected 2"))?;
    for d in 2..=6 {
        let r = reflexive_r(d).map_err(e)?;
        let s = S[d - 1] - 1;
        let expected = Rational::new(BigInt::from(2) * s * s, fact(d as u64).into());
        ensure(r.volume() == expected, || format!("vol(R_{d}) = {}, expected {expected}", r.volume()))?;
        if d <= 5 {
            ensure(r.is_reflexive().map_err(e)?, || format!("R_{d} not reflexive"))?;
        }
        if (3..=5).contains(&d) {
            let mut formula = vec![1, 1];
            formula.extend((1..d).map(|i| 2 * s / S[i - 1]));
            formula.sort_unstable();
            let got = weights(&r).map_err(e)?;
            ensure(got.weights() == formula.as_slice(), || format!("weights(R_{d}) = {got}, expected {formula:?}"))?;
        }
    }
    Ok("dual volumes 12, vol(R_d) for d = 2..6, reflexivity, weights".into())
}

fn exception_scan() -> Outcome {
    let big: BTreeSet<(usize, Vec<usize>)> = scan_exceptions(4..=13, 3..=13).map_err(e)?.into_iter().collect();
    let expected: BTreeSet<(usize, Vec<usize>)> = [
        (4, vec![2, 2, 2]),
        (5, vec![3, 3, 3]),
        (4, vec![2, 2, 1]),
        (5, vec![3, 3, 2]),
        (6, vec![4, 4, 4]),
        (5, vec![2, 2, 2, 2]),
    ]
    .into_iter()
    .collect();
    ensure(big == expected, || format!("t ≥ 3 scan gave {big:?}"))?;
    let two: BTreeSet<(usize, Vec<usize>)> = scan_exceptions(4..=9, 2..=2).map_err(e)?.into_iter().collect();
    let mut expected: BTreeSet<(usize, Vec<usize>)> = (4..=9).map(|d| (d, vec![d - 1, d - 1])).collect();
    expected.insert((4, vec![3, 2]));
    expected.insert((5, vec![4, 3]));
    ensure(two == expected, || format!("t = 2 scan gave {two:?}"))?;
    Ok("six t ≥ 3 exceptions, three t = 2 families".into())
}

fn staged_checks() -> Outcome {
    for (d, dt) in [(4, 1), (5, 2), (5, 2), (6, 4)] {
        ensure(staged_bound_holds(d, dt).map_err(e)?, || format!("staged ({d},{dt}) fails"))?;
    }
    // hand evaluation of the first case: C(4,1) · 72 · 2 = 576 < 3528
    ensure(4 * 72 * 2 < 3528, || "arithmetic".into())?;
    Ok("(4,1), (5,2) twice, (6,4)".into())
}

fn table_one() -> Outcome {
    let dim3 = minimal_simplex_weights(3).map_err(e)?;
    ensure(dim3.len() == 13, || "13 weight systems expected".into())?;
    for w in dim3.iter().chain(&minimal_simplex_weights(2).map_err(e)?) {
        let c = check_simplex_weights(w).map_err(e)?;
        ensure(c.canonical && c.minimal, || format!("{w}: canonical {}, minimal {}", c.canonical, c.minimal))?;
    }
    let c = check_simplex_weights(&ws(&[2, 2, 3, 5])).map_err(e)?;
    ensure(c.canonical && !c.minimal, || "(2,2,3,5) should be canonical and not minimal".into())?;
    Ok("13 + 2 minimal simplices, (2,2,3,5) canonical non-minimal".into())
}

fn classification(tri: &ClassificationReport, tet: &ClassificationReport) -> Outcome {
    ensure(tri.classes == 4, || format!("three triangles: {} classes", tri.classes))?;
    ensure(tet.classes == 147, || {
        format!("two tetrahedra: {} classes ({} constructions)", tet.classes, tet.survivors)
    })?;
    let bound = int(3528);
    for r in [tri, tet] {
        for c in &r.entries {
            let v = fano_core::arith::parse_rational(&c.dual_volume).map_err(e)?;
            ensure(v < bound, || format!("Vol(P*) = {v} in {}", r.case))?;
        }
    }
    let staged = staged_verify_dim5(tet).map_err(e)?;
    ensure(staged.len() == 147 * 13, || format!("{} staged checks", staged.len()))?;
    ensure(staged.iter().all(|b| b.holds), || "a staged check fails".into())?;
    Ok(format!(
        "4 and 147 classes, all Vol(P*) < 3528, {} staged checks",
        staged.len()
    ))
}

fn slicing_oracle(tet: &ClassificationReport) -> Outcome {
    let mut n = 0;
    for c in &tet.entries {
        let data = SlicingData::from_spec(&c.spec).map_err(e)?;
        let glued = glue(&c.spec).map_err(e)?;
        let r = slicing_identity(&data, &glued).map_err(e)?;
        // independent recomputation of the identity from the printed parts
        let lhs = fano_core::arith::parse_rational(&r.slicing).map_err(e)?;
        let idx = fano_core::arith::parse_rational(&r.index).map_err(e)?;
        let vol = glued.polytope.dual().map_err(e)?.volume();
        ensure(lhs == idx * vol, || format!("identity fails for {}", c.normal_form))?;
        let int5 = fano_core::arith::parse_rational(&r.int5).map_err(e)?;
        ensure(int5 >= lhs && r.int5_holds, || format!("int5 < slicing for {}", c.normal_form))?;
        n += 1;
    }
    ensure(n >= 20, || format!("only {n} instances"))?;
    Ok(format!("{n} instances"))
}

fn random_unimodular(rng: &mut StdRng, d: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        if i == j {
            m.swap(i, (i + 1) % d);
            continue;
        }
        let k = BigInt::from(rng.gen_range(-2i32..=2));
        let src = m[j].clone();
        for (a, b) in m[i].iter_mut().zip(&src) {
            *a += &k * b;
        }
    }
    if rng.gen_bool(0.5) {
        for x in m[0].iter_mut() {
            *x = -&*x;
        }
    }
    m
}

fn kernel_properties(tet: &ClassificationReport) -> Outcome {
    let mut samples: Vec<RationalPolytope> = vec![cross_polytope(3), reflexive_r(3).map_err(e)?];
    for w in minimal_simplex_weights(3).map_err(e)? {
        samples.push(simplex_from_weights(&w).map_err(e)?);
    }
    for c in tet.entries.iter().step_by(15) {
        samples.push(RationalPolytope::from_json(&c.polytope).map_err(e)?);
    }
    let mut rng = StdRng::seed_from_u64(7);
    for p in &samples {
        let dd = p.dual().map_err(e)?.dual().map_err(e)?;
        ensure(dd.same_vertices(p), || "dual(dual(P)) ≠ P".into())?;
        let a = p.volume_with(FanOrder::LowestIndex);
        let b = p.volume_with(FanOrder::HighestIndex);
        ensure(a == b, || format!("fan orders give {a} and {b}"))?;
        let nf = normal_form(p).map_err(e)?;
        for _ in 0..20 {
            let u = random_unimodular(&mut rng, p.ambient_dim());
            let image = p.transform(&u).map_err(e)?;
            ensure(normal_form(&image).map_err(e)? == nf, || "normal form moved under GL(Z)".into())?;
        }
    }
    let tri = from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).map_err(e)?;
    let pairs = [
        (tri.clone(), cross_polytope(1)),
        (cross_polytope(2), tri.clone()),
        (simplex_from_weights(&ws(&[1, 1, 2])).map_err(e)?, tri),
    ];
    for (a, b) in &pairs {
        let lhs = a.free_sum(b).map_err(e)?.dual().map_err(e)?;
        let rhs = a.dual().map_err(e)?.product(&b.dual().map_err(e)?).map_err(e)?;
        ensure(lhs.same_vertices(&rhs), || "(P ⊕ Q)* ≠ P* × Q*".into())?;
    }
    let mut choices = 0;
    for w in minimal_simplex_weights(3).map_err(e)? {
        let beta = BarycentricVector::from_weights(&w);
        let beta = beta.entries();
        for excluded in 0..beta.len() {
            let basis: Vec<usize> = (0..beta.len()).filter(|&i| i != excluded).collect();
            let kernel = simplex_in_basis(beta, excluded).map_err(e)?.dual().map_err(e)?;
            for k in 0..basis.len() {
                for shared in itertools::Itertools::combinations(basis.iter().copied(), k) {
                    let closed = hull(&dual_simplex_vertices(beta, &basis, &shared, excluded).map_err(e)?).map_err(e)?;
                    ensure(closed.same_vertices(&kernel), || format!("dual vertices differ for {w}"))?;
                    let positions: Vec<usize> =
                        shared.iter().map(|v| basis.iter().position(|b| b == v).unwrap()).collect();
                    let face: Vec<Vec<Rational>> = kernel
                        .vertices()
                        .iter()
                        .filter(|y| positions.iter().all(|&p| y[p] == -Rational::one()))
                        .cloned()
                        .collect();
                    let vol = hull(&face).map_err(e)?.volume();
                    let f = face_volume_f(beta, &basis, &shared).map_err(e)?;
                    ensure(vol == f, || format!("face volume {vol} ≠ {f} for {w} {shared:?}"))?;
                    choices += 1;
                }
            }
        }
    }
    Ok(format!("{} polytopes × 20 transforms, {choices} shared-vertex choices", samples.len()))
}

/// Moves `δ` from a larger entry to a smaller one; the product strictly grows.
fn robin_hood(rng: &mut StdRng, beta: &[Rational]) -> Vec<Rational> {
    let mut b = beta.to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..b.len());
        let j = rng.gen_range(0..b.len());
        if b[i] == b[j] {
            continue;
        }
        let (hi, lo) = if b[i] > b[j] { (i, j) } else { (j, i) };
        let gap = &b[hi] - &b[lo];
        let t = q(rng.gen_range(1..=99), 100);
        let delta = gap * t;
        b[hi] -= &delta;
        b[lo] += &delta;
    }
    b
}

fn unit_fraction_perturbations() -> Outcome {
    let mut rng = StdRng::seed_from_u64(61);
    let mut total = 0;
    for d in 3..=6 {
        let mut v: Vec<Rational> = S[..d - 1].iter().map(|&s| q(1, s as i64)).collect();
        v.push(q(1, S[d - 1] as i64 - 1));
        let s = S[d - 1] - 1;
        let cap = int(s * s);
        let prod: Rational = v.iter().map(Rational::recip).product();
        ensure(prod == cap, || format!("Sylvester vector product {prod} at d = {d}"))?;
        let check = unit_fraction_bound_check(&BarycentricVector::new(v.clone()).map_err(e)?).map_err(e)?;
        ensure(check == (true, true), || format!("no equality at d = {d}"))?;
        let mut seen = BTreeSet::new();
        while seen.len() < 50 {
            let p = robin_hood(&mut rng, &v);
            if p == v || !seen.insert(p.clone()) {
                continue;
            }
            let prod: Rational = p.iter().map(Rational::recip).product();
            ensure(prod < cap, || format!("perturbation {p:?} not strict"))?;
            let check = unit_fraction_bound_check(&BarycentricVector::new(p).map_err(e)?).map_err(e)?;
            ensure(check == (true, false), || format!("library verdict {check:?} at d = {d}"))?;
        }
        total += seen.len();
    }
    Ok(format!("equality at d = 3..6, {total} strict perturbations"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let tri = classify(&ClassificationCase::dim4_three_triangles(), None);
    let tet = classify(&ClassificationCase::dim4_two_tetrahedra(), None);
    let (tri, tet) = match (tri, tet) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            println!("classification failed: {:?} {:?}", a.err(), b.err());
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("sylvester and bound table", Box::new(sylvester_table)),
        ("equality cases", Box::new(equality_cases)),
        ("exception scan", Box::new(exception_scan)),
        ("staged inequalities", Box::new(staged_checks)),
        ("minimal simplex weights", Box::new(table_one)),
        ("classification counts", Box::new(|| classification(&tri, &tet))),
        ("slicing oracle", Box::new(|| slicing_oracle(&tet))),
        ("kernel properties", Box::new(|| kernel_properties(&tet))),
        ("unit fraction perturbations", Box::new(unit_fraction_perturbations)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg}) [{:.1?}]", k + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg}) [{:.1?}]", k + 1, t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
