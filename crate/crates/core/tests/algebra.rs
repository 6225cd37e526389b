use num_traits::Zero;
use proptest::prelude::*;
use relcyc::algebra::{adjoin_unit, build_cleft_extension, Algebra, Bilinear, Bimodule, CleftDatum, NonunitalAlgebra};
use relcyc::field::Field;
use relcyc::instance::{fixture, fixture_names, load, parse_datum, InstanceError};
use relcyc::tensor::{dim_x, enumerate, format_word, signature, Bases, Slot, SpaceId};
use relcyc::{QDatum, Q};
use serde_json::{json, Value};

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn source(name: &str) -> Value {
    serde_json::from_str(relcyc::instance::fixture_source(name).unwrap()).unwrap()
}

fn datum(v: &Value) -> QDatum {
    parse_datum(&v.to_string()).unwrap()
}

fn axioms(v: &Value) -> Vec<String> {
    datum(v).validate().into_iter().map(|x| x.axiom).collect()
}

#[test]
fn bundled_fixtures_are_cleft_data() {
    for name in fixture_names() {
        let d: QDatum = fixture(name).unwrap();
        let v = d.validate();
        if name == "TP3-broken" {
            assert!(v.iter().any(|x| x.axiom == "nabla.associativity"), "{v:?}");
        } else {
            assert!(v.is_empty(), "{name}: {v:?}");
        }
    }
}

#[test]
fn idempotent_square_on_x_alone_is_still_associative() {
    let mut v = source("TP3");
    v["nabla"] = json!([[0, 0, 0, "1"]]);
    assert!(axioms(&v).is_empty());
}

#[test]
fn each_axiom_family_is_detected() {
    let mut v = source("TP3");
    v["nabla"] = json!([[0, 0, 1, "1"], [1, 0, 0, "1"]]);
    assert!(axioms(&v).contains(&"nabla.associativity".to_string()));

    let mut v = source("T");
    v["algebra"]["mult"] = json!([[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]]);
    v["module"]["right"] = json!([[0, 0, 0, "1"]]);
    let a = axioms(&v);
    assert!(a.iter().any(|x| x.starts_with("bimodule")), "{a:?}");

    let mut v = source("T");
    v["algebra"]["mult"] = json!([[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]);
    v["module"]["left"] = json!([[0, 0, 0, "1"], [1, 0, 0, "1"]]);
    v["module"]["right"] = json!([[0, 0, 0, "1"]]);
    assert!(axioms(&v).contains(&"bimodule.left.associativity".to_string()));

    let mut v = source("T");
    v["algebra"]["mult"] = json!([[0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 1, "1"]]);
    assert!(axioms(&v).contains(&"algebra.unit.left".to_string()));

    let mut v = source("T");
    v["nabla"] = json!([[0, 0, 0, "1"]]);
    let a = axioms(&v);
    assert!(a.iter().any(|x| x.starts_with("nabla.")), "{a:?}");

    let mut v = source("TP3-graded");
    v["grading"] = json!({"x": 1, "y": 3});
    assert!(axioms(&v).contains(&"grading.nabla".to_string()));
}

#[test]
fn malformed_instances_are_rejected() {
    assert!(matches!(parse_datum::<Q>("{"), Err(InstanceError::Json(_))));
    let mut v = source("DN");
    v["extra"] = json!(1);
    assert!(matches!(parse_datum::<Q>(&v.to_string()), Err(InstanceError::Json(_))));
    let mut v = source("DN");
    v["nabla"] = json!([[0, 5, 0, "1"]]);
    assert!(matches!(parse_datum::<Q>(&v.to_string()), Err(InstanceError::Invalid(_))));
    let mut v = source("DN");
    v["nabla"] = json!([[0, 0, 0, "1/0"]]);
    assert!(parse_datum::<Q>(&v.to_string()).is_err());
    let mut v = source("TP3-graded");
    v["grading"] = json!({"z": 1});
    assert!(matches!(parse_datum::<Q>(&v.to_string()), Err(InstanceError::Invalid(_))));
    assert!(matches!(load::<Q>("NOPE"), Err(InstanceError::UnknownFixture(_))));
    assert!(matches!(load::<Q>("/nonexistent/dir/x.json"), Err(InstanceError::Io(_))));
}

#[test]
fn rational_structure_constants_parse_exactly() {
    let mut v = source("K2");
    v["nabla"] = json!([[0, 0, 0, "-3/6"]]);
    let d = datum(&v);
    assert_eq!(d.nabla.get(0, 0), &[(0, Q::ratio(-1, 2))]);
}

fn table(e: &relcyc::algebra::CleftExtension<Q>) -> Vec<Vec<Vec<(usize, Q)>>> {
    (0..e.dim()).map(|i| (0..e.dim()).map(|j| e.mult.get(i, j).to_vec()).collect()).collect()
}

#[test]
fn dual_numbers_extension() {
    let e = build_cleft_extension(&fixture::<Q>("DN").unwrap()).unwrap();
    assert_eq!(e.dim(), 2);
    assert_eq!(table(&e), vec![vec![vec![(0, q(1))], vec![(1, q(1))]], vec![vec![(1, q(1))], vec![]]]);
    assert!(e.is_associative() && e.is_unital());
}

/// `1 ↦ I`, `e ↦ E₂₂`, `m ↦ E₁₂` identifies the extension of T with upper-triangular matrices.
#[test]
fn triangular_extension_is_upper_triangular_matrices() {
    let e = build_cleft_extension(&fixture::<Q>("T").unwrap()).unwrap();
    assert_eq!(e.dim(), 3);
    type M2 = [[i64; 2]; 2];
    let images: [M2; 3] = [[[1, 0], [0, 1]], [[0, 0], [0, 1]], [[0, 1], [0, 0]]];
    let mul = |a: &M2, b: &M2| -> M2 {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    };
    for i in 0..3 {
        for j in 0..3 {
            let mut got = [[0i64; 2]; 2];
            for (k, c) in e.mult.get(i, j) {
                let c: i64 = c.to_integer().try_into().unwrap();
                for r in 0..2 {
                    for s in 0..2 {
                        got[r][s] += c * images[*k][r][s];
                    }
                }
            }
            assert_eq!(got, mul(&images[i], &images[j]), "product of basis {i} and {j}");
        }
    }
}

/// `1 ↦ (1,1)`, `x ↦ (1,0)` identifies the extension of K2 with `ℚ × ℚ`.
#[test]
fn separable_extension_is_a_product_of_fields() {
    let e = build_cleft_extension(&fixture::<Q>("K2").unwrap()).unwrap();
    let images = [(1i64, 1i64), (1, 0)];
    for i in 0..2 {
        for j in 0..2 {
            let got = e.mult.get(i, j).iter().fold((0, 0), |acc, (k, c)| {
                let c: i64 = c.to_integer().try_into().unwrap();
                (acc.0 + c * images[*k].0, acc.1 + c * images[*k].1)
            });
            assert_eq!(got, (images[i].0 * images[j].0, images[i].1 * images[j].1));
        }
    }
}

#[test]
fn extension_projections_split() {
    let e = build_cleft_extension(&fixture::<Q>("TP5").unwrap()).unwrap();
    assert_eq!(e.proj_a.mul(&e.incl_a), relcyc::QMatrix::identity(1));
    assert!(e.proj_a.mul(&e.proj_m.transpose()).is_zero());
}

#[test]
fn adjoining_a_unit_recovers_the_fixtures() {
    let mk = |name: &str, labels: &[&str], mult: Vec<(usize, usize, usize, Q)>| NonunitalAlgebra {
        name: name.into(),
        labels: labels.iter().map(|s| s.to_string()).collect(),
        mult: Bilinear::from_entries(labels.len(), labels.len(), labels.len(), mult),
    };
    let strip = |mut d: QDatum| {
        d.name.clear();
        d.grading = None;
        d
    };
    let dn = adjoin_unit(&mk("DN", &["eps"], vec![])).unwrap();
    assert_eq!(strip(dn), strip(fixture("DN").unwrap()));
    let tp3 = adjoin_unit(&mk("TP3", &["x", "y"], vec![(0, 0, 1, q(1))])).unwrap();
    assert_eq!(strip(tp3), strip(fixture("TP3").unwrap()));
    let k2 = adjoin_unit(&mk("K2", &["x"], vec![(0, 0, 0, q(1))])).unwrap();
    assert_eq!(strip(k2), strip(fixture("K2").unwrap()));
    assert!(adjoin_unit(&mk("bad", &["x", "y"], vec![(0, 0, 1, q(1)), (1, 0, 0, q(1))])).is_err());
}

#[test]
fn word_weights() {
    let d: QDatum = fixture("TP3-graded").unwrap();
    let b = Bases::new(std::sync::Arc::new(d));
    assert_eq!(b.word_weight(&[Slot::M(0), Slot::M(0)]), 2);
    assert_eq!(b.word_weight(&[Slot::M(0), Slot::M(1)]), 3);
    let mut v = source("DN");
    v["grading"] = Value::Null;
    let dn = Bases::new(std::sync::Arc::new(datum(&v)));
    for w in 0..4 {
        assert_eq!(dn.weights(SpaceId::x(0, w)), vec![0]);
    }
    let dn = Bases::new(std::sync::Arc::new(fixture::<Q>("DN").unwrap()));
    for w in 0..4 {
        assert_eq!(dn.weights(SpaceId::x(0, w)), vec![w + 1]);
    }
}

#[test]
fn small_spaces() {
    let dn: QDatum = fixture("DN").unwrap();
    assert_eq!(enumerate(&dn, SpaceId::x(0, 2)), vec![vec![Slot::M(0); 3]]);
    assert!(enumerate(&dn, SpaceId::x(1, 1)).is_empty());
    let t: QDatum = fixture("T").unwrap();
    let words: Vec<String> = enumerate(&t, SpaceId::x(1, 1)).iter().map(|w| format_word(&t, w)).collect();
    let mut sorted = words.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["m⊗e⊗m", "m⊗m⊗e"]);
    for id in [SpaceId::x(0, -1), SpaceId::x(2, -3), SpaceId::x(-1, 2)] {
        assert!(enumerate(&t, id).is_empty());
        assert_eq!(dim_x(1, 1, id.v, id.w), 0);
    }
}

fn shell(da: usize, dm: usize) -> QDatum {
    CleftDatum {
        name: "shell".into(),
        algebra: Algebra { labels: (0..da).map(|i| format!("a{i}")).collect(), mult: Bilinear::zero(da, da, da) },
        module: Bimodule {
            labels: (0..dm).map(|i| format!("m{i}")).collect(),
            left: Bilinear::zero(da, dm, dm),
            right: Bilinear::zero(dm, da, dm),
        },
        nabla: Bilinear::zero(dm, dm, dm),
        grading: None,
    }
}

/// Brute-force count of words `m ⊗ s₁ ⊗ … ⊗ s_n` with exactly `w` letters from `M`.
fn brute_force_count(da: usize, dm: usize, v: usize, w: usize) -> usize {
    let n = v + w;
    let alphabet = (da - 1) + dm;
    let mut count = 0;
    for code in 0..alphabet.pow(n as u32) {
        let mut c = code;
        let mut ms = 0;
        for _ in 0..n {
            if c % alphabet >= da - 1 {
                ms += 1;
            }
            c /= alphabet;
        }
        if ms == w {
            count += 1;
        }
    }
    dm * count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_closed_form_and_brute_force(da in 1usize..4, dm in 1usize..3, v in 0i64..4, w in 0i64..4) {
        let d = shell(da, dm);
        let words = enumerate(&d, SpaceId::x(v, w));
        prop_assert_eq!(words.len(), dim_x(dm, da - 1, v, w));
        prop_assert_eq!(words.len(), brute_force_count(da, dm, v as usize, w as usize));
        let mut uniq = words.clone();
        uniq.sort();
        uniq.dedup();
        prop_assert_eq!(uniq.len(), words.len());
        for word in &words {
            prop_assert_eq!(signature(word), Some(SpaceId::x(v, w)));
            prop_assert!(word[1..].iter().all(|s| *s != Slot::A(0)));
        }
    }

    /// A random product on `M = ℚ²` over `A = ℚ` validates exactly when it is associative.
    #[test]
    fn validation_agrees_with_extension_associativity(coefs in prop::collection::vec(-1i64..=1, 8)) {
        let entries: Vec<_> = coefs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (k / 4, (k / 2) % 2, k % 2, q(*c))).collect();
        let mut d: QDatum = fixture("TP3").unwrap();
        d.nabla = Bilinear::from_entries(2, 2, 2, entries.clone());
        let direct_assoc = (0..2).all(|i| (0..2).all(|j| (0..2).all(|k| {
            let e = |x: usize| vec![(x, q(1))];
            d.nabla.apply(&d.nabla.apply(&e(i), &e(j)), &e(k)) == d.nabla.apply(&e(i), &d.nabla.apply(&e(j), &e(k)))
        })));
        prop_assert_eq!(d.validate().is_empty(), direct_assoc);
        prop_assert_eq!(build_cleft_extension(&d).is_ok(), direct_assoc);
        prop_assert!(entries.iter().all(|e| !e.3.is_zero()));
    }
}
