//! The covering-knot pipeline: staple insertion at every crossing, 1/q
//! twist surgery, the untwisting epimorphism with its certificates,
//! connected-sum amplification, and ribbon-concordance band data.

mod amplify;
mod cover;
mod fixture;
mod ribbon;
mod staple;
mod twist;

pub use amplify::{amplify, untwisted_double};
pub use cover::{build_cover_knot, untwisting_map, CoverOptions, CoverRecord, StageRecord};
pub use fixture::{HostStrand, PassDir, StapleFixture};
pub use ribbon::{ribbon_certificate, BandMove, RibbonCertificate};
pub use staple::{
    delete_component_mapped, delete_staples, insert_staple_at, insert_staples, StaplePlacement,
    Stapled, TwistRegion,
};
pub use twist::twist_surgery;

use crate::diagram::{simplify, ComponentRole, Diagram, SimplifyOptions};
use crate::error::{Error, Result};
use crate::group::{alexander_class, component_word, wirtinger, Word};
use serde::{Deserialize, Serialize};

/// Outcome of the three staple gates on a fixture, run against a host knot.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub host: String,
    /// the staple alone simplifies to a zero-crossing circle
    pub unknotted: bool,
    pub linking_number: i64,
    pub linking_zero: bool,
    /// γ's word in the host group, over the host presentation's generators
    pub word: String,
    /// Alexander-class verdict per ring, when the word has exponent sum 0
    pub class_zero: Option<bool>,
    pub class_rings: Vec<(String, bool)>,
    pub class_error: Option<String>,
    pub passed: bool,
}

/// Insert the fixture at one crossing of the host and run the three
/// staple gates: unknottedness, zero linking, vanishing Alexander class.
pub fn verify_fixture(fixture: &StapleFixture, host: &Diagram) -> Result<FixtureReport> {
    if host.component_count() != 1 {
        return Err(Error::Validation(
            "fixture host must be a knot diagram".into(),
        ));
    }
    if host.crossing_count() == 0 {
        return Err(Error::Validation(
            "fixture host needs at least one crossing".into(),
        ));
    }
    let mut link = host.clone();
    let _placement = insert_staple_at(&mut link, fixture, 0)?;
    let gamma_comp = link.component_count() - 1;
    debug_assert_eq!(link.components()[gamma_comp].role, ComponentRole::Staple);

    // Gate 1: the staple alone is a zero-crossing unknot.
    let alone = link.delete_component(0)?;
    let reduced = simplify(&alone, &SimplifyOptions::default());
    let unknotted = reduced.diagram.crossing_count() == 0 && reduced.diagram.component_count() == 1;

    // Gate 2: lk(γ, k) = 0.
    let linking_number = link.linking_number(0, gamma_comp)?;
    let linking_zero = linking_number == 0;

    // Gate 3: γ's word vanishes in the host's Alexander module.
    let word = staple_word(&link, gamma_comp, host)?;
    let host_pres = wirtinger(host, 0)?;
    let (class_zero, class_rings, class_error) = match alexander_class(&host_pres, &word) {
        Ok(rep) => (Some(rep.zero), rep.rings, None),
        Err(e) => (None, Vec::new(), Some(e.to_string())),
    };

    let passed = unknotted && linking_zero && class_zero == Some(true);
    Ok(FixtureReport {
        fixture: fixture.name.clone(),
        host: host.name.clone(),
        unknotted,
        linking_number,
        linking_zero,
        word: word.to_string(),
        class_zero,
        class_rings,
        class_error,
        passed,
    })
}

/// The staple's word in the *host* presentation: read its under-passages
/// in the augmented link, then push the arcs through staple deletion.
pub fn staple_word(link: &Diagram, gamma_comp: usize, host: &Diagram) -> Result<Word> {
    let link_pres = wirtinger(link, 0)?;
    let w_link = component_word(link, &link_pres, gamma_comp)?;
    let (bare, edge_map) = delete_staples(link)?;
    if !bare.same_diagram(host) {
        return Err(Error::Validation(
            "staple deletion did not recover the host diagram".into(),
        ));
    }
    let host_pres = wirtinger(&bare, 0)?;
    let mut letters = Vec::new();
    for &(arc, e) in w_link.letters() {
        let edge = link_pres.arcs[arc][0];
        let root = edge_map
            .get(&edge)
            .copied()
            .ok_or_else(|| Error::Other("staple word letter lost in deletion".into()))?;
        let host_arc = host_pres
            .arc_of_edge(root)
            .ok_or_else(|| Error::Other("edge missing from host presentation".into()))?;
        letters.push((host_arc, e));
    }
    Ok(Word::from_letters(letters))
}
