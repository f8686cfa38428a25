//! Place tables for the synthetic corpus: a small GeoNames-style gazetteer
//! with deliberate namesakes, region tables, and dateline frequencies.

pub(super) const COUNTRIES: &[(&str, &str, &str)] = &[
    ("US", "United States", "U.S.,U.S.A.,America"),
    ("GB", "United Kingdom", "England,Great Britain"),
    ("FR", "France", ""),
    ("DE", "Germany", ""),
    ("IT", "Italy", ""),
    ("CA", "Canada", ""),
    ("MX", "Mexico", ""),
    ("CU", "Cuba", ""),
    ("JP", "Japan", ""),
    ("RU", "Russia", ""),
];

pub(super) const STATES: &[(&str, &str, &str, &str)] = &[
    ("US", "DC", "District of Columbia", "D.C."),
    ("US", "NY", "New York", "N.Y."),
    ("US", "IL", "Illinois", "Ill."),
    ("US", "MA", "Massachusetts", "Mass."),
    ("US", "PA", "Pennsylvania", "Pa.,Penn."),
    ("US", "MO", "Missouri", "Mo."),
    ("US", "OR", "Oregon", "Ore."),
    ("US", "ME", "Maine", "Me."),
    ("US", "VA", "Virginia", "Va."),
    ("US", "TX", "Texas", "Tex."),
    ("US", "OH", "Ohio", ""),
    ("US", "CA", "California", "Cal.,Calif."),
    ("US", "LA", "Louisiana", "La."),
    ("US", "MD", "Maryland", "Md."),
    ("US", "GA", "Georgia", "Ga."),
    ("US", "WA", "Washington", "Wash."),
    ("GB", "ENG", "England", ""),
    ("FR", "11", "Ile-de-France", ""),
    ("DE", "16", "Berlin", ""),
    ("IT", "07", "Lazio", ""),
];

/// `(geonameid, name, alternates, lat, lon, cc, admin1, population)`
pub(super) const GAZETTEER: &[(u64, &str, &str, f64, f64, &str, &str, u64)] = &[
    (4140963, "Washington", "Washington D.C.,Washington City", 38.89511, -77.03637, "US", "DC", 689_545),
    (5218802, "Washington", "", 40.17396, -80.24617, "US", "PA", 13_176),
    (5128581, "New York", "New York City,NYC", 40.71427, -74.00597, "US", "NY", 8_804_190),
    (4887398, "Chicago", "", 41.85003, -87.65005, "US", "IL", 2_746_388),
    (4930956, "Boston", "", 42.35843, -71.05977, "US", "MA", 675_647),
    (4560349, "Philadelphia", "", 39.95233, -75.16379, "US", "PA", 1_603_797),
    (4407066, "St. Louis", "Saint Louis", 38.62727, -90.19789, "US", "MO", 301_578),
    (4250542, "Springfield", "", 39.80172, -89.64371, "US", "IL", 114_394),
    (4951788, "Springfield", "", 42.10148, -72.58981, "US", "MA", 155_929),
    (5746545, "Portland", "", 45.52345, -122.67621, "US", "OR", 652_503),
    (4975802, "Portland", "", 43.66147, -70.25533, "US", "ME", 68_408),
    (5106834, "Albany", "", 42.65258, -73.75623, "US", "NY", 99_224),
    (4781708, "Richmond", "", 37.55376, -77.46026, "US", "VA", 226_610),
    (4562407, "York", "", 39.9626, -76.72774, "US", "PA", 44_800),
    (2633352, "York", "", 53.95763, -1.08271, "GB", "ENG", 153_717),
    (4717560, "Paris", "", 33.66094, -95.55551, "US", "TX", 24_782),
    (2988507, "Paris", "", 48.85341, 2.3488, "FR", "11", 2_138_551),
    (2643743, "London", "", 51.50853, -0.12574, "GB", "ENG", 8_961_989),
    (2950159, "Berlin", "", 52.52437, 13.41053, "DE", "16", 3_426_354),
    (3169070, "Rome", "Roma", 41.89193, 12.51133, "IT", "07", 2_318_895),
    (4335045, "New Orleans", "", 29.95465, -90.07507, "US", "LA", 383_997),
    (4347778, "Baltimore", "", 39.29038, -76.61219, "US", "MD", 576_498),
    (4180439, "Atlanta", "", 33.749, -84.38798, "US", "GA", 498_715),
    (5391959, "San Francisco", "", 37.77493, -122.41942, "US", "CA", 864_816),
    (5150529, "Cleveland", "", 41.4995, -81.69541, "US", "OH", 372_624),
    (4508722, "Cincinnati", "", 39.12711, -84.51439, "US", "OH", 309_317),
    (5809844, "Seattle", "", 47.60621, -122.33207, "US", "WA", 737_015),
    (6167865, "Toronto", "", 43.70011, -79.4163, "CA", "08", 2_600_000),
    (3530597, "Mexico City", "Ciudad de Mexico", 19.42847, -99.12766, "MX", "09", 12_294_193),
    (3553478, "Havana", "La Habana", 23.13302, -82.38304, "CU", "02", 2_163_824),
    (1850147, "Tokyo", "", 35.6895, 139.69171, "JP", "40", 8_336_599),
    (524901, "Moscow", "", 55.75222, 37.61556, "RU", "48", 10_381_222),
    (4744709, "Alexandria", "", 38.80484, -77.04692, "US", "VA", 159_428),
    // Below the population floor; dropped on load.
    (9999001, "Hamlet", "", 40.0, -75.0, "US", "PA", 120),
];

/// How a dateline is written and what a correct georeference returns.
#[derive(Debug, Clone, Copy)]
pub(super) struct DatelineSpec {
    pub printed: &'static str,
    pub city: &'static str,
    pub state: &'static str,
    pub country: &'static str,
    pub note: &'static str,
    pub weight: u32,
}

const fn city(printed: &'static str, city: &'static str, state: &'static str, country: &'static str, weight: u32) -> DatelineSpec {
    DatelineSpec { printed, city, state, country, note: "", weight }
}

const fn note(printed: &'static str, note: &'static str, weight: u32) -> DatelineSpec {
    DatelineSpec { printed, city: "", state: "", country: "", note, weight }
}

/// Weights are percentages of wire sources.
pub(super) const DATELINES: &[DatelineSpec] = &[
    city("WASHINGTON", "Washington", "District of Columbia", "United States", 27),
    city("NEW YORK", "New York", "New York", "United States", 12),
    city("CHICAGO", "Chicago", "Illinois", "United States", 6),
    city("LONDON", "London", "England", "United Kingdom", 6),
    city("PARIS", "Paris", "Ile-de-France", "France", 4),
    city("BOSTON", "Boston", "Massachusetts", "United States", 4),
    city("PHILADELPHIA", "Philadelphia", "Pennsylvania", "United States", 3),
    city("ST. LOUIS", "St. Louis", "Missouri", "United States", 3),
    city("BERLIN", "Berlin", "Berlin", "Germany", 2),
    city("ROME", "Rome", "Lazio", "Italy", 2),
    city("SPRINGFIELD, Ill.", "Springfield", "Illinois", "United States", 3),
    city("PORTLAND, Ore.", "Portland", "Oregon", "United States", 2),
    city("PORTLAND, Me.", "Portland", "Maine", "United States", 2),
    city("ALBANY, N.Y.", "Albany", "New York", "United States", 2),
    city("RICHMOND, Va.", "Richmond", "Virginia", "United States", 2),
    city("YORK, Pa.", "York", "Pennsylvania", "United States", 2),
    city("PARIS, Tex.", "Paris", "Texas", "United States", 1),
    note("ABOARD THE U.S.S. IDAHO", "Pacific Ocean (WWII)", 2),
    note("ALLIED HEADQUARTERS IN FRANCE", "Supreme Headquarters Allied Expeditionary Force (WWII)", 2),
    note("", "", 13),
];

pub(super) const MONTHS: [&str; 12] = [
    "Jan.", "Feb.", "March", "April", "May", "June", "July", "Aug.", "Sept.", "Oct.", "Nov.", "Dec.",
];

pub(super) fn gazetteer_tsv() -> String {
    let mut out = String::new();
    for (id, name, alt, lat, lon, cc, a1, pop) in GAZETTEER {
        let cols = [
            id.to_string(),
            name.to_string(),
            name.to_string(),
            alt.to_string(),
            lat.to_string(),
            lon.to_string(),
            "P".into(),
            "PPL".into(),
            cc.to_string(),
            String::new(),
            a1.to_string(),
            String::new(),
            String::new(),
            String::new(),
            pop.to_string(),
            String::new(),
            "0".into(),
            String::new(),
            "2020-01-01".into(),
        ];
        out.push_str(&cols.join("\t"));
        out.push('\n');
    }
    out
}

pub(super) fn countries_tsv() -> String {
    COUNTRIES.iter().map(|(c, n, a)| format!("{c}\t{n}\t{a}\n")).collect()
}

pub(super) fn states_tsv() -> String {
    STATES.iter().map(|(c, a1, n, ab)| format!("{c}\t{a1}\t{n}\t{ab}\n")).collect()
}
