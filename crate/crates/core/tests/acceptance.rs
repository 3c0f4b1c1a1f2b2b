//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`) and failing loudly when any
//! sub-check misses. All comparisons are exact; there are no tolerances
//! anywhere.

mod common;

use billiard::cba::{
    black_clique_relation_check, closed_form_value, edge_labels, eval_factors, value_function,
    verify_cba,
};
use billiard::leonard::{
    border_correspondence, krawtchouk_fixture, krawtchouk_system, split_with_report,
    verify_leonard_system, QRacahParams,
};
use billiard::linalg::poly_apply;
use billiard::simplex::{black_cliques, location_count, locations};
use billiard::{
    CbaArray, EigStructure, Error, FieldSpec, Location, Matrix, PolyCba, Scalar, Vector,
};
use rand::Rng;

fn conclude(number: usize, description: &str, failures: Vec<String>) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number} ({description}): {verdict}");
    for failure in &failures {
        println!("  - {failure}");
    }
    assert!(
        failures.is_empty(),
        "criterion {number} failed: {failures:#?}"
    );
}

fn rational() -> FieldSpec {
    FieldSpec::rational()
}

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n, rational())
}

#[test]
fn criterion_1_random_arrays_satisfy_the_defining_conditions() {
    let mut failures = Vec::new();
    for (index, (d, eig)) in common::standard_cases(100).into_iter().enumerate() {
        match PolyCba::with_default_seed(eig) {
            Ok(cba) => {
                let report = verify_cba(cba.array());
                for entry in report.failures() {
                    failures.push(format!(
                        "case {index} (d={d}): {} {} failed: {}",
                        entry.check, entry.subject, entry.detail
                    ));
                }
            }
            Err(e) => failures.push(format!("case {index} (d={d}): construction failed: {e}")),
        }
    }
    conclude(
        1,
        "randomly conjugated maps yield arrays passing every line and clique condition",
        failures,
    );
}

#[test]
fn criterion_2_values_match_the_closed_form() {
    let mut failures = Vec::new();
    // The same input sequence criterion 1 consumes, restricted to the
    // diameters whose grids have interior locations. The labeling is
    // derived from the built vectors and validated against the dependency
    // relation on the way.
    for (index, (d, eig)) in common::standard_cases(100).into_iter().enumerate() {
        if d < 2 {
            continue;
        }
        let theta = eig.eigenvalues().to_vec();
        let labeling =
            match PolyCba::with_default_seed(eig).and_then(|cba| edge_labels(cba.array())) {
                Ok(labeling) => labeling,
                Err(e) => {
                    failures.push(format!("case {index} (d={d}): labeling failed: {e}"));
                    continue;
                }
            };
        let values = match value_function(&labeling) {
            Ok(values) => values,
            Err(e) => {
                failures.push(format!("case {index} (d={d}): value function failed: {e}"));
                continue;
            }
        };
        if values.len() != location_count(d - 2) {
            failures.push(format!(
                "case {index} (d={d}): {} values for {} interior locations",
                values.len(),
                location_count(d - 2)
            ));
        }
        for (location, value) in values.iter() {
            match closed_form_value(&theta, location) {
                Ok(expected) if *value == expected => {}
                Ok(expected) => failures.push(format!(
                    "case {index} (d={d}): value at {location} is {value}, closed form gives {expected}"
                )),
                Err(e) => failures.push(format!(
                    "case {index} (d={d}): closed form failed at {location}: {e}"
                )),
            }
        }
    }
    conclude(
        2,
        "white-clique label products equal the closed-form ratio at every interior location",
        failures,
    );
}

#[test]
fn criterion_3_vanishing_and_projection_identities() {
    let mut failures = Vec::new();
    let mut rng = common::rng(303);
    for index in 0..16 {
        let d = rng.gen_range(1..=6usize);
        let field = common::field_for(index);
        let eig = common::random_multiplicity_free(&mut rng, d, field);
        let theta = eig.eigenvalues().to_vec();
        let cba = match PolyCba::with_default_seed(eig) {
            Ok(cba) => cba,
            Err(e) => {
                failures.push(format!("case {index} (d={d}): construction failed: {e}"));
                continue;
            }
        };
        let a = cba.eig().matrix();
        let seed = cba.seed();
        let parts = cba.seed_parts();
        let tag = |j: usize, i: usize, side: &str| {
            format!("case {index} (d={d}, {field}), {side} length {j}, component {i}")
        };

        for j in 0..=d + 1 {
            // Root lists rebuilt here from scratch rather than taken from
            // the library.
            let prefix: Vec<Scalar> = theta[..j].to_vec();
            let suffix: Vec<Scalar> = theta[d + 1 - j..].to_vec();
            let lowered = poly_apply(a, &prefix, seed).expect("square map");
            let raised = poly_apply(a, &suffix, seed).expect("square map");
            for i in 0..=d {
                let low_part = cba.eig().idempotent(i).mul_vector(&lowered).expect("shape");
                let low_factor = eval_factors(&prefix, &theta[i]).expect("same field");
                let low_expected = parts[i].scale(&low_factor).expect("same field");
                if low_part != low_expected {
                    failures.push(format!(
                        "{}: projection identity broken",
                        tag(j, i, "prefix")
                    ));
                }
                if low_part.is_zero() != (i < j) {
                    failures.push(format!("{}: wrong vanishing", tag(j, i, "prefix")));
                }

                let high_part = cba.eig().idempotent(i).mul_vector(&raised).expect("shape");
                let high_factor = eval_factors(&suffix, &theta[i]).expect("same field");
                let high_expected = parts[i].scale(&high_factor).expect("same field");
                if high_part != high_expected {
                    failures.push(format!(
                        "{}: projection identity broken",
                        tag(j, i, "suffix")
                    ));
                }
                if high_part.is_zero() != (i as i64 > d as i64 - j as i64) {
                    failures.push(format!("{}: wrong vanishing", tag(j, i, "suffix")));
                }
            }
        }
    }
    conclude(
        3,
        "root products kill exactly the expected eigencomponents and scale the rest predictably",
        failures,
    );
}

#[test]
fn criterion_4_clique_relations_and_label_axioms() {
    let mut failures = Vec::new();
    let mut rng = common::rng(404);
    for index in 0..16 {
        let d = rng.gen_range(1..=6usize);
        let field = common::field_for(index);
        let eig = common::random_multiplicity_free(&mut rng, d, field);
        let cba = match PolyCba::with_default_seed(eig) {
            Ok(cba) => cba,
            Err(e) => {
                failures.push(format!("case {index} (d={d}): construction failed: {e}"));
                continue;
            }
        };
        let case = format!("case {index} (d={d}, {field})");

        let relations = black_clique_relation_check(&cba);
        for entry in relations.failures() {
            failures.push(format!(
                "{case}: relation {} failed: {}",
                entry.subject, entry.detail
            ));
        }

        let labeling = match edge_labels(cba.array()) {
            Ok(labeling) => labeling,
            Err(e) => {
                failures.push(format!("{case}: labeling failed: {e}"));
                continue;
            }
        };

        // Re-check the labeling axioms here, straight from the public
        // accessors: totality and reciprocity over all adjacent pairs,
        // and unit products around black cliques.
        let all = locations(d);
        for a in &all {
            for b in &all {
                if !a.is_adjacent(b) {
                    if labeling.label(*a, *b).is_some() {
                        failures.push(format!("{case}: stray label on {a} -> {b}"));
                    }
                    continue;
                }
                match (labeling.label(*a, *b), labeling.label(*b, *a)) {
                    (Some(forward), Some(backward)) => {
                        if forward.is_zero() {
                            failures.push(format!("{case}: zero label on {a} -> {b}"));
                        }
                        match forward.mul(backward) {
                            Ok(product) if product.is_one() => {}
                            _ => failures
                                .push(format!("{case}: labels on {a} <-> {b} not reciprocal")),
                        }
                    }
                    _ => failures.push(format!("{case}: missing label between {a} and {b}")),
                }
            }
        }
        for clique in black_cliques(d) {
            let [x, y, z] = clique.members;
            let product = labeling
                .label(x, y)
                .zip(labeling.label(y, z))
                .and_then(|(xy, yz)| labeling.label(z, x).map(|zx| (xy, yz, zx)))
                .map(|(xy, yz, zx)| xy.mul(yz).and_then(|p| p.mul(zx)));
            match product {
                Some(Ok(p)) if p.is_one() => {}
                _ => failures.push(format!("{case}: clique at {x} has non-unit product")),
            }
            // The dependency relation, re-assembled by hand.
            let top = cba.array().vector(x).expect("grid location");
            let mu = cba.array().vector(y).expect("grid location");
            let nu = cba.array().vector(z).expect("grid location");
            let combo = labeling
                .label(x, y)
                .zip(labeling.label(x, z))
                .map(|(to_mu, to_nu)| {
                    top.add(&mu.scale(to_mu).expect("same field"))
                        .expect("same shape")
                        .add(&nu.scale(to_nu).expect("same field"))
                        .expect("same shape")
                });
            if !combo.map(|v| v.is_zero()).unwrap_or(false) {
                failures.push(format!("{case}: dependency fails at {x}"));
            }
        }
    }
    conclude(
        4,
        "clique recurrences hold and the labeling satisfies reciprocity, nonvanishing, and unit products",
        failures,
    );
}

#[test]
fn criterion_5_split_decomposition_and_borders() {
    let mut failures = Vec::new();
    for d in 1..=6usize {
        let ls = match krawtchouk_system(rational(), d) {
            Ok(ls) => ls,
            Err(e) => {
                failures.push(format!("d={d}: verification failed: {e}"));
                continue;
            }
        };
        let (split, report) = split_with_report(&ls);
        for entry in report.failures() {
            failures.push(format!(
                "d={d}: split {} {} failed: {}",
                entry.check, entry.subject, entry.detail
            ));
        }
        if split.spanners().len() != d + 1 {
            failures.push(format!("d={d}: {} spanners", split.spanners().len()));
        }
        // Independence re-checked directly.
        let rank = Matrix::from_row_vectors(split.spanners())
            .expect("uniform spanners")
            .rank();
        if rank != d + 1 {
            failures.push(format!("d={d}: spanner rank {rank}, expected {}", d + 1));
        }
        let borders = border_correspondence(&ls);
        if borders.len() != 3 * (d + 1) {
            failures.push(format!("d={d}: {} border entries", borders.len()));
        }
        for entry in borders.failures() {
            failures.push(format!(
                "d={d}: border {} {} failed: {}",
                entry.check, entry.subject, entry.detail
            ));
        }
    }
    conclude(
        5,
        "tridiagonal fixtures verify, split into independent one-dimensional pieces, and the array borders land in them",
        failures,
    );
}

#[test]
fn criterion_6_parameter_family_values() {
    let mut failures = Vec::new();
    let mut rng = common::rng(606);
    let q_pool = ["2", "3", "-2", "1/2", "-1/2", "3/2", "2/3", "5", "-3"];
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 50 && attempts < 5000 {
        attempts += 1;
        let d = rng.gen_range(2..=8usize);
        let q = Scalar::parse(q_pool[rng.gen_range(0..q_pool.len())], rational()).unwrap();
        let a = int(rng.gen_range(-9..=9));
        let b = common::random_nonzero_rational(&mut rng);
        let c = common::random_nonzero_rational(&mut rng);
        match QRacahParams::new(q.clone(), a.clone(), b.clone(), c.clone(), d) {
            Ok(params) => {
                accepted += 1;
                for location in locations(d - 2) {
                    let direct = params.value(location);
                    let reference = closed_form_value(params.eigenvalues(), location);
                    match (direct, reference) {
                        (Ok(x), Ok(y)) if x == y => {}
                        (direct, reference) => failures.push(format!(
                            "q={q} a={a} b={b} c={c} d={d} at {location}: {direct:?} vs {reference:?}"
                        )),
                    }
                }
            }
            Err(Error::RepeatedEigenvalue { .. }) => continue,
            Err(e) => failures.push(format!("q={q} a={a} b={b} c={c} d={d}: unexpected {e}")),
        }
    }
    if accepted < 50 {
        failures.push(format!(
            "only {accepted} valid parameter sets in {attempts} attempts"
        ));
    }

    // One frozen case, fully by hand: q = 2, a = 0, b = c = 1, d = 2 gives
    // eigenvalues 2, 5/2, 17/4 and the single interior value 2/7.
    let params = QRacahParams::new(int(2), int(0), int(1), int(1), 2).expect("valid parameters");
    let expected_theta = [
        int(2),
        Scalar::parse("5/2", rational()).unwrap(),
        Scalar::parse("17/4", rational()).unwrap(),
    ];
    if params.eigenvalues() != expected_theta {
        failures.push("frozen case: wrong eigenvalues".to_string());
    }
    let frozen = Scalar::parse("2/7", rational()).unwrap();
    match params.value(Location::new(0, 0, 0)) {
        Ok(value) if value == frozen => {}
        other => failures.push(format!("frozen case: value {other:?}, expected 2/7")),
    }
    conclude(
        6,
        "parameter-form values agree exactly with the closed form, including a frozen hand-checked case",
        failures,
    );
}

#[test]
fn criterion_7_worked_example_and_corruption_detection() {
    let mut failures = Vec::new();
    let field = rational();
    let map = Matrix::from_integers(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]], field).unwrap();
    let theta = vec![int(0), int(1), int(2)];
    let eig = EigStructure::new(map, theta.clone()).expect("diagonal spectrum");
    let seed = Vector::from_integers(&[1, 1, 1], field);
    let cba = PolyCba::build(eig, seed).expect("all components nonzero");

    let expected = [
        ([0usize, 2, 0], vec![1i64, 1, 1]),
        ([1, 1, 0], vec![-2, -1, 0]),
        ([0, 1, 1], vec![0, 1, 2]),
        ([2, 0, 0], vec![2, 0, 0]),
        ([1, 0, 1], vec![0, -1, 0]),
        ([0, 0, 2], vec![0, 0, 2]),
    ];
    for (coords, entries) in &expected {
        let location = Location::new(coords[0], coords[1], coords[2]);
        let stored = cba.array().vector(location).expect("grid location");
        let reference = Vector::from_integers(entries, field);
        if stored != &reference {
            failures.push(format!("vector at {location} is {stored:?}"));
        }
    }
    if !verify_cba(cba.array()).passed() {
        failures.push("pristine array failed verification".to_string());
    }

    // Corrupt one location with the vector of its neighbor and watch the
    // specific maximal line catch it.
    let corrupted_entries: Vec<(Location, Vector)> = cba
        .array()
        .iter()
        .map(|(location, vector)| {
            if location == Location::new(1, 1, 0) {
                (location, Vector::from_integers(&[0, 1, 2], field))
            } else {
                (location, vector.clone())
            }
        })
        .collect();
    let corrupted = CbaArray::from_entries(theta, corrupted_entries).expect("well-formed entries");
    let report = verify_cba(&corrupted);
    if report.passed() {
        failures.push("corrupted array passed verification".to_string());
    }
    match report
        .entries()
        .iter()
        .find(|entry| entry.check == "line" && entry.subject == "axis=S k=1")
    {
        Some(entry) if !entry.pass => {}
        Some(_) => failures.push("the S = 1 line was not flagged".to_string()),
        None => failures.push("no entry for the S = 1 line".to_string()),
    }
    conclude(
        7,
        "the worked example reproduces bit-exact vectors and a planted corruption is caught at the right line",
        failures,
    );
}

#[test]
fn criterion_8_degenerate_inputs_yield_structured_errors() {
    let mut failures = Vec::new();
    let field = rational();

    // Repeated eigenvalues are rejected before any projector work.
    let map = Matrix::from_integers(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], field).unwrap();
    match EigStructure::new(map, vec![int(0), int(1), int(1)]) {
        Err(Error::RepeatedEigenvalue {
            first: 1,
            second: 2,
            ..
        }) => {}
        other => failures.push(format!("repeated eigenvalues: {other:?}")),
    }

    // A characteristic-two collision in the tridiagonal fixture.
    let gf2 = FieldSpec::prime_field(2).expect("2 is prime");
    let (a, theta_gf2, a_star, theta_star_gf2) = krawtchouk_fixture(gf2, 2);
    match verify_leonard_system(a, theta_gf2, a_star, theta_star_gf2) {
        Err(Error::RepeatedEigenvalue { .. }) => {}
        other => failures.push(format!("characteristic collision: {other:?}")),
    }

    // A seed missing one eigencomponent reports which one.
    let map = Matrix::from_integers(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]], field).unwrap();
    let eig = EigStructure::new(map, vec![int(0), int(1), int(2)]).expect("diagonal spectrum");
    match PolyCba::build(eig, Vector::from_integers(&[1, 1, 0], field)) {
        Err(Error::SeedComponentZero { index: 2 }) => {}
        other => failures.push(format!("zero seed component: {other:?}")),
    }

    // A commuting pair fails the band condition at the first off-diagonal
    // pair, in the unstarred direction.
    let a = Matrix::from_integers(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]], field).unwrap();
    let a_star =
        Matrix::from_integers(&[vec![3, 0, 0], vec![0, 4, 0], vec![0, 0, 5]], field).unwrap();
    match verify_leonard_system(
        a,
        vec![int(0), int(1), int(2)],
        a_star,
        vec![int(3), int(4), int(5)],
    ) {
        Err(Error::NotLeonard {
            starred: false,
            row: 0,
            col: 1,
            expected_zero: false,
        }) => {}
        other => failures.push(format!("commuting pair: {other:?}")),
    }

    // Degenerate family parameters are rejected by name.
    match QRacahParams::new(int(1), int(0), int(1), int(1), 2) {
        Err(Error::InvalidParameter(_)) => {}
        other => failures.push(format!("q = 1: {other:?}")),
    }
    match QRacahParams::new(int(2), int(0), int(1), int(4), 2) {
        Err(Error::RepeatedEigenvalue {
            first: 0,
            second: 2,
            ..
        }) => {}
        other => failures.push(format!("parameter collision: {other:?}")),
    }

    conclude(
        8,
        "repeated spectra, characteristic collisions, bad seeds, and non-examples all fail with named errors",
        failures,
    );
}
