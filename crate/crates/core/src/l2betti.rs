//! Degrees in which the l2-Betti numbers of lattices in products of local spin
//! groups are positive, and the congruence-subgroup hypotheses that let the
//! profinite completion split into local factors.
//!
//! Only supports are computed. The actual Betti values depend on a Haar
//! measure normalization and never appear here.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::Place;
use crate::qform::{real_signature, witt_index, DiagonalForm};

/// Smallest residue characteristic for which the nonarchimedean support rule is proved.
pub const MIN_RESIDUE_CHAR: u64 = 89;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FactorKind {
    ArchimedeanCompact,
    /// `Spin(1,4)` or `Spin(4,1)`, acting on hyperbolic 4-space.
    ArchimedeanHyperbolic4,
    /// Any other real signature. No support rule is available for it.
    ArchimedeanUnsupported { positive: usize, negative: usize },
    NonArchimedean { rank: usize, residue_char: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactorDescriptor {
    pub place: Place,
    pub kind: FactorKind,
    pub provenance: String,
}

pub fn describe_factor(form: &DiagonalForm, place: Place) -> Result<LocalFactorDescriptor> {
    let (kind, provenance) = match place {
        Place::Real => {
            let (pos, neg) = real_signature(form);
            let kind = if pos == 0 || neg == 0 {
                FactorKind::ArchimedeanCompact
            } else if (pos, neg) == (1, 4) || (pos, neg) == (4, 1) {
                FactorKind::ArchimedeanHyperbolic4
            } else {
                FactorKind::ArchimedeanUnsupported {
                    positive: pos,
                    negative: neg,
                }
            };
            (kind, format!("real signature ({pos},{neg})"))
        }
        Place::Prime(p) => {
            let rank = witt_index(form, place)?;
            (
                FactorKind::NonArchimedean {
                    rank,
                    residue_char: p,
                },
                format!("Q_{p}-rank = Witt index at {p} = {rank}"),
            )
        }
    };
    Ok(LocalFactorDescriptor {
        place,
        kind,
        provenance,
    })
}

/// The `k`-rank of `Spin(q)`, which is the Witt index of `q` over `k`.
pub fn rank_spin(form: &DiagonalForm, place: Place) -> Result<usize> {
    witt_index(form, place)
}

/// Finite set of degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SupportSet {
    pub degrees: BTreeSet<u32>,
}

impl SupportSet {
    pub fn singleton(d: u32) -> Self {
        Self {
            degrees: BTreeSet::from([d]),
        }
    }

    pub fn from_degrees(d: impl IntoIterator<Item = u32>) -> Self {
        Self {
            degrees: d.into_iter().collect(),
        }
    }

    pub fn is_singleton(&self, d: u32) -> bool {
        self.degrees.len() == 1 && self.degrees.contains(&d)
    }

    /// `{s + t : s ∈ self, t ∈ other}`.
    pub fn sumset(&self, other: &Self) -> Self {
        Self::from_degrees(
            self.degrees
                .iter()
                .flat_map(|s| other.degrees.iter().map(move |t| s + t)),
        )
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSupport {
    pub place: Place,
    pub support: SupportSet,
    /// Set when the residue-characteristic hypothesis was overridden.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub citation: String,
}

/// Support of the l2-Betti numbers of a lattice in one local factor.
///
/// With `assume_small_residue_ok`, a residue characteristic below
/// [`MIN_RESIDUE_CHAR`] produces a warning instead of an error.
pub fn local_l2_support(
    descriptor: &LocalFactorDescriptor,
    assume_small_residue_ok: bool,
) -> Result<LocalSupport> {
    let place = descriptor.place;
    let (support, warning, citation) = match &descriptor.kind {
        FactorKind::ArchimedeanCompact => (
            SupportSet::singleton(0),
            None,
            "compact group: positive only in degree 0".to_string(),
        ),
        FactorKind::ArchimedeanHyperbolic4 => (
            SupportSet::singleton(2),
            None,
            "Dodziuk: hyperbolic 4-space has l2-cohomology only in degree 2".to_string(),
        ),
        FactorKind::ArchimedeanUnsupported { positive, negative } => {
            return Err(Error::UnsupportedCase(format!(
                "no l2-Betti support rule for real signature ({positive},{negative})"
            )))
        }
        FactorKind::NonArchimedean { rank, residue_char } => {
            let mut warning = None;
            if *residue_char < MIN_RESIDUE_CHAR {
                let msg = format!(
                    "residue characteristic {residue_char} < {MIN_RESIDUE_CHAR}: the Bruhat-Tits \
                     support rule is only established for large residue characteristic"
                );
                if !assume_small_residue_ok {
                    return Err(Error::UnsupportedCase(msg));
                }
                warning = Some(msg);
            }
            (
                SupportSet::singleton(*rank as u32),
                warning,
                format!("Petersen-Valette: positive only in degree rank = {rank}"),
            )
        }
    };
    Ok(LocalSupport {
        place,
        support,
        warning,
        citation,
    })
}

/// Künneth rule for products: the sumset of the factor supports. The empty
/// product is the trivial group, with support `{0}`.
pub fn kunneth_support(factors: &[SupportSet]) -> SupportSet {
    factors
        .iter()
        .fold(SupportSet::singleton(0), |acc, s| acc.sumset(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CspConclusion {
    Holds,
    HypothesesNotMet,
}

impl fmt::Display for CspConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CspConclusion::Holds => "holds",
            CspConclusion::HypothesesNotMet => "hypotheses-not-met",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittTerm {
    pub place: Place,
    pub witt_index: usize,
}

/// Hypotheses of the congruence subgroup property for `Spin(q)(O_S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspReport {
    pub form: DiagonalForm,
    pub places: Vec<Place>,
    /// At least five variables.
    pub variables_ok: bool,
    /// `S` contains a prime.
    pub nonarch_place_ok: bool,
    pub witt_sum: usize,
    pub witt_breakdown: Vec<WittTerm>,
    /// Witt indices over `S` sum to at least two.
    pub witt_sum_ok: bool,
    pub failed: Vec<String>,
    pub conclusion: CspConclusion,
}

/// Checks the three hypotheses for a place set `S`, which must contain the real place.
pub fn csp_hypotheses(form: &DiagonalForm, places: &[Place]) -> Result<CspReport> {
    if !places.contains(&Place::Real) {
        return Err(Error::invalid("the place set S must contain the real place"));
    }
    let mut places: Vec<Place> = places.to_vec();
    places.sort();
    places.dedup();
    let witt_breakdown = places
        .iter()
        .map(|&place| {
            Ok(WittTerm {
                place,
                witt_index: witt_index(form, place)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let witt_sum = witt_breakdown.iter().map(|t| t.witt_index).sum();
    let variables_ok = form.rank() >= 5;
    let nonarch_place_ok = places.iter().any(Place::is_finite);
    let witt_sum_ok = witt_sum >= 2;
    let mut failed = Vec::new();
    if !variables_ok {
        failed.push(format!("(i) rank {} < 5", form.rank()));
    }
    if !nonarch_place_ok {
        failed.push("(ii) S has no nonarchimedean place".to_string());
    }
    if !witt_sum_ok {
        failed.push(format!("(iii) Witt index sum {witt_sum} < 2"));
    }
    let conclusion = if failed.is_empty() {
        CspConclusion::Holds
    } else {
        CspConclusion::HypothesesNotMet
    };
    Ok(CspReport {
        form: form.clone(),
        places,
        variables_ok,
        nonarch_place_ok,
        witt_sum,
        witt_breakdown,
        witt_sum_ok,
        failed,
        conclusion,
    })
}

/// The primes indexing the factors `Spin(q)(Z_p)` of the profinite completion
/// of `Spin(q)(Z[1/P])`, described symbolically, with a finite sample to check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfiniteFactors {
    pub excluded_primes: Vec<u64>,
    pub description: String,
    /// Primes up to the bound that are not excluded. Always contains 2 unless excluded.
    pub sampled_primes: Vec<u64>,
    pub csp: CspReport,
}

/// "all primes", or "all primes except p1, p2, ..." for sorted `excluded`.
pub fn describe_profinite_primes(excluded: &[u64]) -> String {
    if excluded.is_empty() {
        "all primes".to_string()
    } else {
        let list: Vec<String> = excluded.iter().map(u64::to_string).collect();
        format!("all primes except {}", list.join(", "))
    }
}

/// Fails unless the congruence subgroup property holds for `S = {inf} ∪ inverted_primes`.
/// In particular an empty `inverted_primes` is rejected, since `S = {inf}` has no finite place.
pub fn profinite_factor_list(
    form: &DiagonalForm,
    inverted_primes: &[u64],
    sample_bound: u64,
) -> Result<ProfiniteFactors> {
    let mut excluded = inverted_primes.to_vec();
    excluded.sort_unstable();
    excluded.dedup();
    if let Some(&p) = excluded.iter().find(|&&p| !arith::is_prime(p)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let mut places = vec![Place::Real];
    places.extend(excluded.iter().map(|&p| Place::Prime(p)));
    let csp = csp_hypotheses(form, &places)?;
    if csp.conclusion != CspConclusion::Holds {
        return Err(Error::UnsupportedCase(format!(
            "congruence subgroup property not established: {}",
            csp.failed.join("; ")
        )));
    }
    let product: BigInt = excluded.iter().map(|&p| BigInt::from(p)).product();
    let mut sampled: Vec<u64> = (2..=sample_bound.max(2))
        .filter(|&p| arith::is_prime(p) && !product.is_multiple_of(&BigInt::from(p)))
        .collect();
    if !excluded.contains(&2) && !sampled.contains(&2) {
        sampled.insert(0, 2);
    }
    Ok(ProfiniteFactors {
        description: describe_profinite_primes(&excluded),
        excluded_primes: excluded,
        sampled_primes: sampled,
        csp,
    })
}
