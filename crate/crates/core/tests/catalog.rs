use std::collections::BTreeSet;

use heats_core::catalog::{
    BurnerFilter, BurnerType, Catalog, Combustion, CombustionFilter, DeviceRecord, FilterCriteria,
    Fuel, FuelFilter, MatchQuery,
};
use heats_core::seed::bundled_catalog;
use proptest::prelude::*;

fn models(found: &[&heats_core::Device]) -> Vec<String> {
    found.iter().map(|d| d.model.clone()).collect()
}

#[test]
fn seed_pairing_for_published_requirement() {
    let c = bundled_catalog();
    assert_eq!(c.len(), 4);
    let q = MatchQuery::for_power(11.285).unwrap();
    assert_eq!(
        models(&c.match_devices(&q)),
        vec!["Euro-3 18", "Euro-3 18/150", "Euro-3 18/200"]
    );

    let lpg = q.with_criteria(FilterCriteria {
        fuel: FuelFilter::LPG,
        ..Default::default()
    });
    assert!(c.match_devices(&lpg).is_empty());
}

#[test]
fn seed_uno3_range() {
    let c = bundled_catalog();
    let uno = c.devices().iter().find(|d| d.model == "Uno-3").unwrap();
    assert_eq!((uno.power_min_kw, uno.power_max_kw), (35.0, 360.0));
    let q = MatchQuery::for_power(100.0).unwrap();
    assert_eq!(models(&c.match_devices(&q)), vec!["Uno-3"]);
}

#[test]
fn unspecified_burner_only_matches_any() {
    let c = bundled_catalog();
    for burner in BurnerFilter::CONCRETE {
        let q = MatchQuery::for_power(11.285)
            .unwrap()
            .with_criteria(FilterCriteria {
                burner_type: *burner,
                ..Default::default()
            });
        assert!(c.match_devices(&q).is_empty());
    }
}

#[test]
fn three_record_file() {
    let json = r#"[
      {"producer":"A","model":"1","power_min_kw":5,"power_max_kw":10,"combustion":["Condensing"],"burner_type":"Included","fuels":["LPG"]},
      {"producer":"A","model":"2","power_min_kw":5,"power_max_kw":10,"combustion":["Condensing"],"burner_type":"Included","fuels":["LPG"],"description":null},
      {"producer":"B","model":"1","power_min_kw":5,"power_max_kw":10,"combustion":["Burner","Condensing"],"burner_type":"External","fuels":["Wood","Sawdust"],"image_ref":"b1.png"}
    ]"#;
    assert_eq!(Catalog::from_json(json).unwrap().len(), 3);
}

fn arb_record() -> impl Strategy<Value = DeviceRecord> {
    let combustion =
        prop::sample::subsequence(vec![Combustion::Condensing, Combustion::Burner], 1..=2);
    let burner = prop::sample::select(vec![
        BurnerType::Included,
        BurnerType::External,
        BurnerType::Unspecified,
    ]);
    let fuels = prop::sample::subsequence(
        vec![
            Fuel::Diesel,
            Fuel::CLU3,
            Fuel::NaturalGas,
            Fuel::LPG,
            Fuel::Wood,
            Fuel::Sawdust,
        ],
        1..=6,
    );
    (
        "[A-D]",
        "[a-z0-9]{1,4}",
        1.0f64..200.0,
        0.0f64..200.0,
        combustion,
        burner,
        fuels,
        proptest::option::of("[ -~]{0,20}"),
    )
        .prop_map(
            |(producer, model, min, span, combustion, burner_type, fuels, description)| {
                DeviceRecord {
                    producer,
                    model,
                    power_min_kw: min,
                    power_max_kw: min + span,
                    combustion: combustion.into_iter().collect::<BTreeSet<_>>(),
                    burner_type,
                    fuels: fuels.into_iter().collect(),
                    description,
                    image_ref: None,
                }
            },
        )
}

fn arb_catalog() -> impl Strategy<Value = Catalog> {
    prop::collection::vec(arb_record(), 0..40).prop_map(|mut records| {
        let mut seen = BTreeSet::new();
        records.retain(|r| seen.insert(r.key()));
        Catalog::from_records(records).unwrap()
    })
}

fn arb_criteria() -> impl Strategy<Value = FilterCriteria> {
    (
        prop::sample::select(vec![
            CombustionFilter::Any,
            CombustionFilter::Condensing,
            CombustionFilter::Burner,
        ]),
        prop::sample::select(vec![
            BurnerFilter::Any,
            BurnerFilter::Included,
            BurnerFilter::External,
        ]),
        prop::sample::select(vec![
            FuelFilter::Any,
            FuelFilter::Diesel,
            FuelFilter::CLU3,
            FuelFilter::NaturalGas,
            FuelFilter::LPG,
        ]),
    )
        .prop_map(|(combustion, burner_type, fuel)| FilterCriteria {
            combustion,
            burner_type,
            fuel,
        })
}

proptest! {
    #[test]
    fn results_are_sound(c in arb_catalog(), required in 0.5f64..250.0, headroom in 1.0f64..4.0, criteria in arb_criteria()) {
        let q = MatchQuery::new(required, headroom, criteria).unwrap();
        let found = c.match_devices(&q);
        for d in &found {
            prop_assert!(d.power_max_kw >= required);
            prop_assert!(d.power_min_kw <= headroom * required);
            prop_assert!(criteria.matches(d));
        }
        // nothing accepted is left out
        prop_assert_eq!(found.len(), c.devices().iter().filter(|d| q.accepts(d)).count());
        for pair in found.windows(2) {
            let a = (pair[0].power_max_kw, &pair[0].producer, &pair[0].model);
            let b = (pair[1].power_max_kw, &pair[1].producer, &pair[1].model);
            prop_assert!(a <= b);
        }
        prop_assert_eq!(c.match_devices(&q), found);
    }

    #[test]
    fn export_reingests_equal(c in arb_catalog()) {
        prop_assert_eq!(Catalog::from_json(&c.to_json()).unwrap(), c);
    }
}
