//! Enumeration suites, oracle-versus-classifier audits and the invariant
//! grids behind `permpoly verify`, all producing a [`Report`].
//!
//! Grids are split into slices that run on the [`par`](crate::par) helpers;
//! slices are merged in grid order, so a report does not depend on the
//! number of workers.

mod binomial;
pub mod report;
mod trinomial;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::BRUTE_MAX_DEGREE;

pub use binomial::{enumerate_binomials, reduction_suite};
pub use report::{Case, NamedVerdict, Report, ReportBuilder, Retention, Summary, Tally};
pub use trinomial::{audit_literal, verify_trith, TRITH_MAX_T};
pub use verify::verify_suite;

/// Seed for every pseudorandom sample drawn by the suites.
pub const SEED: u64 = 0x7065_726d_706f_6c79;

/// How a binomial's permutation property is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Brute,
    WanLidl,
    Reduction,
    /// Brute force up to degree 28, Wan-Lidl up to 32, reduction beyond.
    Auto,
}

impl Oracle {
    /// Resolves [`Oracle::Auto`] for a field of degree `n` (`None`: too large
    /// to materialize).
    pub fn route(self, n: Option<u64>) -> Oracle {
        match self {
            Oracle::Auto => match n {
                Some(n) if n <= BRUTE_MAX_DEGREE as u64 => Oracle::Brute,
                Some(n) if n <= crate::field::MAX_DEGREE as u64 => Oracle::WanLidl,
                _ => Oracle::Reduction,
            },
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Brute => "brute",
            Oracle::WanLidl => "wanlidl",
            Oracle::Reduction => "reduction",
            Oracle::Auto => "auto",
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Oracle> {
        match s {
            "brute" => Ok(Oracle::Brute),
            "wanlidl" => Ok(Oracle::WanLidl),
            "reduction" => Ok(Oracle::Reduction),
            "auto" => Ok(Oracle::Auto),
            other => Err(Error::Parse(format!("unknown oracle `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Coeffs,
    Lucas,
    FieldAxioms,
    PermTesters,
    Reduction,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Coeffs,
        Suite::Lucas,
        Suite::FieldAxioms,
        Suite::PermTesters,
        Suite::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coeffs => "coeffs",
            Suite::Lucas => "lucas",
            Suite::FieldAxioms => "fieldaxioms",
            Suite::PermTesters => "permtesters",
            Suite::Reduction => "reduction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    #[default]
    Ci,
    Extended,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Profile> {
        match s {
            "ci" => Ok(Profile::Ci),
            "extended" => Ok(Profile::Extended),
            other => Err(Error::Parse(format!("unknown profile `{other}`"))),
        }
    }
}

/// Grid sizes for the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest `t` for trinomial and coefficient grids.
    pub max_t: u32,
    /// Largest ambient degree `n = 2^s t` for binomial grids.
    pub max_n: u32,
    /// Largest `k` for the multinomial grid.
    pub max_k: u64,
    /// Largest field degree for the tester-agreement grid.
    pub max_perm_degree: u32,
    /// Coefficient grids are exhaustive in alpha up to this `t` and sampled
    /// beyond it.
    pub exhaustive_t: u32,
    /// Samples per `(s, t)` (coefficients) or per field (random trinomials).
    pub samples: u32,
    /// Random element triples per field in the axiom checks.
    pub axiom_samples: u32,
}

impl Bounds {
    pub fn for_profile(profile: Profile) -> Bounds {
        match profile {
            Profile::Ci => Bounds {
                max_t: 9,
                max_n: 20,
                max_k: 512,
                max_perm_degree: 8,
                exhaustive_t: 8,
                samples: 32,
                axiom_samples: 2000,
            },
            Profile::Extended => Bounds {
                max_t: 11,
                max_n: 24,
                max_k: 1024,
                max_perm_degree: 10,
                exhaustive_t: 8,
                samples: 64,
                axiom_samples: 20000,
            },
        }
    }
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds::for_profile(Profile::Ci)
    }
}

/// `[lo, hi)` split into consecutive pieces of at most `size`.
pub(crate) fn slices(lo: u64, hi: u64, size: u64) -> Vec<(u64, u64)> {
    (lo..hi)
        .step_by(size as usize)
        .map(|a| (a, (a + size).min(hi)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routing() {
        assert_eq!(Oracle::Auto.route(Some(20)), Oracle::Brute);
        assert_eq!(Oracle::Auto.route(Some(28)), Oracle::Brute);
        assert_eq!(Oracle::Auto.route(Some(32)), Oracle::WanLidl);
        assert_eq!(Oracle::Auto.route(Some(48)), Oracle::Reduction);
        assert_eq!(Oracle::Auto.route(None), Oracle::Reduction);
        assert_eq!(Oracle::WanLidl.route(Some(8)), Oracle::WanLidl);
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(
            "nope".parse::<Suite>(),
            Err(Error::UnknownSuite("nope".into()))
        );
        assert_eq!(slices(1, 8, 3), vec![(1, 4), (4, 7), (7, 8)]);
    }
}
