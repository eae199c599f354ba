//! The staple pattern as data.
//!
//! A staple is an unknotted circle inserted into the ball around one
//! crossing. It is drawn as a flat oval whose spanning disk the host
//! strands pierce in a row of marked passes: at each pass the strand runs
//! behind the oval's upper arc and in front of its lower arc, threading
//! the disk once. The shipped pattern sends a doubled-back finger of each
//! of the two crossing strands through the disk, giving four piercings
//! whose orientations cancel in pairs.
//!
//! The pattern is data, not code: verify_fixture gates any fixture by the
//! three algebraic staple properties (the circle is unknotted on its own,
//! it links the knot zero times, and its group word lies in the Alexander
//! shadow of the second commutator subgroup), so a bad pattern is caught
//! rather than silently propagated.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum HostStrand {
    Under,
    Over,
}

/// Flow of a strand through the oval's disk: Down enters from the neck
/// (crossing) side, Up returns toward it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PassDir {
    Down,
    Up,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StapleFixture {
    pub name: String,
    /// Disk passes in west-to-east order.
    pub passes: Vec<(HostStrand, PassDir)>,
    /// Temporal order of the under strand's passes (indices into `passes`),
    /// walked before the strand enters the host crossing.
    pub under_order: Vec<usize>,
    /// Same for the over strand.
    pub over_order: Vec<usize>,
}

impl StapleFixture {
    /// The shipped staple: one dip finger from each crossing strand,
    /// side by side through the oval.
    pub fn default_fixture() -> StapleFixture {
        StapleFixture {
            name: "staple-v1".into(),
            passes: vec![
                (HostStrand::Under, PassDir::Down),
                (HostStrand::Under, PassDir::Up),
                (HostStrand::Over, PassDir::Up),
                (HostStrand::Over, PassDir::Down),
            ],
            under_order: vec![0, 1],
            over_order: vec![3, 2],
        }
    }

    /// A deliberately bad pattern: a plain meridian loop around the under
    /// strand. Fails the linking gate and the commutator-shadow gate.
    pub fn meridian_circle() -> StapleFixture {
        StapleFixture {
            name: "meridian-circle".into(),
            passes: vec![(HostStrand::Under, PassDir::Down)],
            under_order: vec![0],
            over_order: vec![],
        }
    }

    /// A bad pattern with an extra pass-through: linking number ±1.
    pub fn extra_pass() -> StapleFixture {
        StapleFixture {
            name: "extra-pass".into(),
            passes: vec![
                (HostStrand::Under, PassDir::Down),
                (HostStrand::Under, PassDir::Up),
                (HostStrand::Over, PassDir::Up),
                (HostStrand::Over, PassDir::Down),
                (HostStrand::Under, PassDir::Down),
            ],
            under_order: vec![0, 1, 4],
            over_order: vec![3, 2],
        }
    }

    /// A hook through both strands: linking number zero but the word is a
    /// meridian difference, which survives in the Alexander module.
    pub fn hook() -> StapleFixture {
        StapleFixture {
            name: "hook".into(),
            passes: vec![
                (HostStrand::Under, PassDir::Down),
                (HostStrand::Over, PassDir::Up),
            ],
            under_order: vec![0],
            over_order: vec![1],
        }
    }

    pub fn width(&self) -> usize {
        self.passes.len()
    }

    pub fn validate(&self) -> crate::error::Result<()> {
        use crate::error::Error;
        let n = self.passes.len();
        let mut seen = vec![false; n];
        for (&i, strand) in self
            .under_order
            .iter()
            .zip(std::iter::repeat(HostStrand::Under))
            .chain(
                self.over_order
                    .iter()
                    .zip(std::iter::repeat(HostStrand::Over)),
            )
        {
            if i >= n || self.passes[i].0 != strand || seen[i] {
                return Err(Error::Validation(format!(
                    "fixture {}: inconsistent pass ordering",
                    self.name
                )));
            }
            seen[i] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Validation(format!(
                "fixture {}: passes left unordered",
                self.name
            )));
        }
        Ok(())
    }
}
