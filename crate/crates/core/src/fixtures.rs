//! Stored example patterns and configurations.
//!
//! `perles_config` is a 9-point, 9-line configuration over Q(sqrt 5) whose
//! zero set is the zero set of A0. It was produced offline by
//! `scripts/derive_perles.py` (a projective incidence solve whose closure
//! condition is t^2 + t - 1 = 0) and is re-verified by
//! [`derive_perles_check`].

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{encode_configuration, incidence_structure, Configuration};
use crate::pattern::{is_equivalent, EquivalenceWitness, SignPattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Transcribed verbatim.
    Transcribed,
    /// Computed; the string names the oracle that checks it.
    Derived(&'static str),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Transcribed => write!(f, "transcribed"),
            Provenance::Derived(oracle) => write!(f, "derived ({oracle})"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Pattern(SignPattern),
    Configuration(Configuration),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub payload: Payload,
    pub provenance: Provenance,
}

impl Fixture {
    pub fn pattern(&self) -> Option<&SignPattern> {
        match &self.payload {
            Payload::Pattern(p) => Some(p),
            Payload::Configuration(_) => None,
        }
    }

    pub fn configuration(&self) -> Option<&Configuration> {
        match &self.payload {
            Payload::Configuration(c) => Some(c),
            Payload::Pattern(_) => None,
        }
    }
}

pub const FIXTURE_NAMES: [&str; 6] = ["A0", "A1", "A2", "fig21_pattern", "fig21_config", "perles_config"];

/// Rational minimum rank of A0 as stated in the literature. Recorded as
/// metadata only: confirming it would need a proof that no rank-3 rational
/// matrix has this pattern, which nothing here attempts.
pub const A0_RATIONAL_MR_CITED: usize = 4;

pub const A0_ROWS: [&str; 9] = [
    "000----++",
    "0--00++--",
    "++++000++",
    "++0++++00",
    "0----0-+0",
    "0----+00-",
    "++00-0-++",
    "+0-+0++0-",
    "+0-0-+0+0",
];

const FIG21_CONFIG: &str = r#"{
  "dim": 2,
  "points": [["-5", "50"], ["10", "30"], ["-10", "10"]],
  "hyperplanes": [["-25", "-2/5", "1"], ["-20", "-1", "1"], ["-40", "1", "1"]]
}"#;

const PERLES_CONFIG: &str = r#"{
  "dim": 2,
  "sqrt": 5,
  "points": [
    ["-15/13", "11/13"],
    [{"r": "405/251", "s": "210/251"}, {"r": "1169/502", "s": "225/502"}],
    [{"r": "-39/152", "s": "-21/152"}, {"r": "17/4", "s": "3/2"}],
    ["4", "15"],
    ["0", "41/28"],
    ["1", "2"],
    ["-3/16", "7/2"],
    [{"r": "67/58", "s": "15/58"}, {"r": "155/58", "s": "65/58"}],
    [{"r": "132/859", "s": "168/859"}, {"r": "3409/1718", "s": "1137/1718"}]
  ],
  "hyperplanes": [
    ["-41/28", "-15/28", "1"],
    [{"r": "-72749/48982", "s": "-23925/48982"}, {"r": "-27129/48982", "s": "-20735/48982"}, "1"],
    ["-269/67", "-184/67", "1"],
    [{"r": "-23471/3658", "s": "4785/3658"}, {"r": "-28448/1829", "s": "12760/1829"}, "1"],
    [{"r": "-42397/10631", "s": "-14355/10631"}, {"r": "26001/21262", "s": "-1595/21262"}, "1"],
    ["-41/28", "76/7", "1"],
    [{"r": "-263/82", "s": "-87/82"}, {"r": "99/82", "s": "87/82"}, "1"],
    ["7/3", "-13/3", "1"],
    ["-41/28", "-379/112", "1"]
  ]
}"#;

fn config(text: &str) -> Configuration {
    Configuration::from_json(text).expect("embedded configuration parses")
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let (name, payload, provenance) = match name {
        "A0" => ("A0", Payload::Pattern(SignPattern::from_strs(&A0_ROWS)), Provenance::Transcribed),
        "A1" => (
            "A1",
            Payload::Pattern(SignPattern::from_strs(&["+++", "-++", "-0+"])),
            Provenance::Transcribed,
        ),
        "A2" => (
            "A2",
            Payload::Pattern(SignPattern::from_strs(&["+++", "-++", "+0-"])),
            Provenance::Transcribed,
        ),
        "fig21_pattern" => (
            "fig21_pattern",
            Payload::Pattern(SignPattern::from_strs(&["+++", "+00", "-0-"])),
            Provenance::Transcribed,
        ),
        "fig21_config" => (
            "fig21_config",
            Payload::Configuration(config(FIG21_CONFIG)),
            Provenance::Derived("encodes exactly to fig21_pattern"),
        ),
        "perles_config" => (
            "perles_config",
            Payload::Configuration(config(PERLES_CONFIG)),
            Provenance::Derived("exact incidence check and equivalence to A0"),
        ),
        other => return Err(Error::NotFound(format!("unknown fixture {other:?}"))),
    };
    Ok(Fixture {
        name,
        payload,
        provenance,
    })
}

pub fn a0() -> SignPattern {
    SignPattern::from_strs(&A0_ROWS)
}

#[derive(Clone, Debug)]
pub struct PerlesReport {
    pub points: usize,
    pub lines: usize,
    pub zero_count: usize,
    pub line_counts: Vec<usize>,
    pub equal_to_a0: bool,
    pub witness: EquivalenceWitness,
}

/// Re-verifies `perles_config` exactly: same incidences as A0 (so the same
/// per-line point counts), and an encoded pattern equivalent to A0.
pub fn derive_perles_check() -> Result<PerlesReport> {
    let corrupt = |msg: String| Error::FixtureCorrupt(msg);
    let c = fixture("perles_config")?
        .configuration()
        .cloned()
        .ok_or_else(|| corrupt("perles_config is not a configuration".into()))?;
    if c.field.d() != 5 || c.dim != 2 {
        return Err(corrupt("perles_config must be planar over Q(sqrt 5)".into()));
    }
    if c.points.len() != 9 || c.hyperplanes.len() != 9 {
        return Err(corrupt("perles_config must have 9 points and 9 lines".into()));
    }
    let target = a0();
    let encoded = encode_configuration(&c).map_err(|e| corrupt(format!("encoding failed: {e}")))?;
    let got = incidence_structure(&encoded);
    let want = incidence_structure(&target);
    if got != want {
        return Err(corrupt("incidence structure differs from the zero set of A0".into()));
    }
    let witness = is_equivalent(&encoded, &target)?
        .ok_or_else(|| corrupt("encoded pattern is not equivalent to A0".into()))?;
    if witness.apply(&encoded) != target {
        return Err(corrupt("equivalence witness does not map onto A0".into()));
    }
    Ok(PerlesReport {
        points: c.points.len(),
        lines: c.hyperplanes.len(),
        zero_count: encoded.zero_count(),
        line_counts: got.line_counts(),
        equal_to_a0: encoded == target,
        witness,
    })
}

/// Every check `selfcheck` runs, as (label, outcome) pairs.
pub fn self_checks() -> Vec<(String, Result<()>)> {
    let mut out = Vec::new();
    let fig = || -> Result<()> {
        let c = fixture("fig21_config")?.configuration().cloned().expect("configuration");
        let p = fixture("fig21_pattern")?.pattern().cloned().expect("pattern");
        if encode_configuration(&c)? != p {
            return Err(Error::FixtureCorrupt("fig21_config does not encode to fig21_pattern".into()));
        }
        Ok(())
    };
    out.push(("fig21_config encodes to fig21_pattern".to_string(), fig()));
    let a0_ok = || -> Result<()> {
        let a = a0();
        if !crate::pattern::is_condensed(&a) {
            return Err(Error::FixtureCorrupt("A0 is not condensed".into()));
        }
        let sub = a.submatrix(&[3, 4, 5], &[6, 7, 8]);
        if !crate::pattern::is_sns(&sub)? {
            return Err(Error::FixtureCorrupt("A0 rows 4-6 / cols 7-9 are not SNS".into()));
        }
        Ok(())
    };
    out.push(("A0 condensed with a 3x3 SNS block".to_string(), a0_ok()));
    out.push((
        "perles_config incidences and equivalence to A0".to_string(),
        derive_perles_check().map(|_| ()),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::Sign;

    #[test]
    fn lookups() {
        let a0 = fixture("A0").unwrap();
        assert_eq!(a0.provenance, Provenance::Transcribed);
        let p = a0.pattern().unwrap();
        assert_eq!(p.row(3), SignPattern::from_strs(&["++0++++00"]).row(0));
        assert_eq!(fixture("A1").unwrap().pattern().unwrap().get(2, 1), Sign::Zero);
        let perles = fixture("perles_config").unwrap();
        let c = perles.configuration().unwrap();
        assert_eq!((c.points.len(), c.hyperplanes.len(), c.field.d()), (9, 9, 5));
        assert!(matches!(fixture("A3"), Err(Error::NotFound(_))));
        for name in FIXTURE_NAMES {
            assert!(fixture(name).is_ok());
        }
    }

    #[test]
    fn a0_zero_set() {
        let a = a0();
        // 28 zeros by direct count of the rows above
        let direct: usize = A0_ROWS.iter().map(|r| r.matches('0').count()).sum();
        assert_eq!(a.zero_count(), direct);
        assert_eq!(direct, 28);
        assert_eq!(a.col_zero_count(0), 4);
    }
}
