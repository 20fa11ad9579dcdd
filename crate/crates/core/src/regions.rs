//! Classification of `(mu, K, M)` triplets under perfect channel knowledge.
//!
//! Five named regimes determine which closed form the achievable one-shot
//! NDT simplifies to: region A is NDT-optimal at 1, regions B and E are
//! broadcast-limited at the multicast NDT, regions C and D are
//! interference-limited. Triplets not matched by any row stay unclassified
//! rather than being guessed.

use crate::bounds::ndt_man_continuous;
use crate::rational::{rat, rat_int, to_f64, Rational};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionsError {
    #[error("no NDT formula for an unclassified triplet")]
    Unclassified,
    #[error("mu step must be positive")]
    NonPositiveStep,
    #[error("relay range must contain at least M = 1")]
    EmptyRelayRange,
    #[error("mu = {0} is outside [0, 1]")]
    MuOutOfRange(String),
}

/// The closed form the achievable NDT takes inside a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NdtFormula {
    /// Constant 1 (region A).
    One,
    /// Multicast NDT `M (1 - mu) / (1 + mu M)` (regions B and E).
    Man,
    /// `(K + man) / (1 + mu M)` (regions C and D).
    InterferenceLimited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    A,
    B,
    C,
    D,
    E,
    Unclassified,
}

impl Region {
    pub fn ndt_formula(&self) -> Option<NdtFormula> {
        match self {
            Region::A => Some(NdtFormula::One),
            Region::B | Region::E => Some(NdtFormula::Man),
            Region::C | Region::D => Some(NdtFormula::InterferenceLimited),
            Region::Unclassified => None,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::A => "A",
            Region::B => "B",
            Region::C => "C",
            Region::D => "D",
            Region::E => "E",
            Region::Unclassified => "Unclassified",
        };
        f.write_str(s)
    }
}

/// Row identifiers in evaluation order. Region A has two defining rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Row {
    A1,
    A2,
    B,
    E,
    C,
    D,
}

impl Row {
    pub const ALL: [Row; 6] = [Row::A1, Row::A2, Row::B, Row::E, Row::C, Row::D];

    pub fn region(&self) -> Region {
        match self {
            Row::A1 | Row::A2 => Region::A,
            Row::B => Region::B,
            Row::E => Region::E,
            Row::C => Region::C,
            Row::D => Region::D,
        }
    }
}

/// Whether one defining row holds at `(mu, K, M)`.
///
/// The threshold `M < 1/(1 - 2 mu)` is evaluated as the equivalent
/// polynomial inequality `M (1 - 2 mu) < 1`, which realizes the limit
/// `1/(1 - 2 mu) = +inf` at `mu = 1/2` and keeps the literal (negative
/// right-hand side, hence always true) reading for `mu > 1/2`.
pub fn row_matches(row: Row, mu: &Rational, k: u32, m: u32) -> bool {
    let k_rat = rat_int(k as i64);
    let m_rat = rat_int(m as i64);
    let cache = mu * &m_rat; // mu M
    let man = ndt_man_continuous(mu, m);
    let half = rat(1, 2);
    let threshold_below = &m_rat * (Rational::one() - rat_int(2) * mu) < Rational::one();
    match row {
        Row::A1 => {
            k_rat <= cache && cache < m_rat && threshold_below && mu <= &half
        }
        Row::A2 => k_rat <= cache && cache <= m_rat && threshold_below && mu > &half,
        Row::B => k_rat <= cache && !threshold_below && mu <= &half,
        Row::E => {
            let reach = &cache * &man; // mu M man
            cache < k_rat && k_rat <= reach && reach <= m_rat
        }
        Row::C => cache < m_rat && m_rat < k_rat,
        Row::D => {
            let gate = &cache * man.max(Rational::one());
            gate < k_rat && k_rat <= m_rat
        }
    }
}

/// Rows matching a triplet, in evaluation order. Disjointness of the rows is
/// asserted by tests, not assumed here.
pub fn matching_rows(mu: &Rational, k: u32, m: u32) -> Vec<Row> {
    Row::ALL
        .iter()
        .copied()
        .filter(|row| row_matches(*row, mu, k, m))
        .collect()
}

/// First-matching-row classification: total and deterministic.
pub fn classify(mu: &Rational, k: u32, m: u32) -> Region {
    Row::ALL
        .iter()
        .find(|row| row_matches(**row, mu, k, m))
        .map(|row| row.region())
        .unwrap_or(Region::Unclassified)
}

/// Achievable NDT for a classified triplet, using the continuous multicast
/// formula so dense `mu` grids evaluate directly.
pub fn region_ndt(region: Region, mu: &Rational, k: u32, m: u32) -> Result<Rational, RegionsError> {
    let formula = region.ndt_formula().ok_or(RegionsError::Unclassified)?;
    Ok(match formula {
        NdtFormula::One => Rational::one(),
        NdtFormula::Man => ndt_man_continuous(mu, m),
        NdtFormula::InterferenceLimited => {
            let man = ndt_man_continuous(mu, m);
            (rat_int(k as i64) + man) / (Rational::one() + mu * rat_int(m as i64))
        }
    })
}

/// Analytic border curves drawn through a region map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// `mu M = K`: the relays alone can serve every terminal.
    StandaloneFrontier,
    /// `M (1 - 2 mu) = 1`: multicast NDT crosses 1 (A/B border).
    ManUnitThreshold,
    /// `K = mu M * man(mu)`: broadcast- vs interference-limited split (E/D border).
    BroadcastInterferenceSplit,
}

impl BoundaryKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryKind::StandaloneFrontier => "standalone_frontier",
            BoundaryKind::ManUnitThreshold => "man_unit_threshold",
            BoundaryKind::BroadcastInterferenceSplit => "broadcast_interference_split",
        }
    }
}

/// One sampled point of a boundary curve: the relay count at which the curve
/// crosses the given `mu`. Exact where the curve is rational.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub mu: Rational,
    pub m_exact: Option<Rational>,
    pub m_float: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub kind: BoundaryKind,
    pub points: Vec<BoundaryPoint>,
}

/// Region labels over a `(mu, M)` grid for fixed `K`, plus boundary curves.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub k: u32,
    pub mu_grid: Vec<Rational>,
    pub m_max: u32,
    /// `cells[i][j]` labels `(mu_grid[i], M = j + 1)`.
    pub cells: Vec<Vec<Region>>,
    pub boundaries: Vec<BoundaryCurve>,
}

impl RegionMap {
    pub fn cell(&self, mu_index: usize, m: u32) -> Region {
        self.cells[mu_index][(m - 1) as usize]
    }
}

/// Classifies every cell of the grid `mu in {0, step, 2 step, ..} x M in
/// [1, m_max]` and samples the three analytic border curves.
pub fn region_map(k: u32, mu_step: &Rational, m_max: u32) -> Result<RegionMap, RegionsError> {
    if mu_step <= &Rational::zero() {
        return Err(RegionsError::NonPositiveStep);
    }
    if m_max < 1 {
        return Err(RegionsError::EmptyRelayRange);
    }
    let mut mu_grid = Vec::new();
    let mut mu = Rational::zero();
    while mu <= Rational::one() {
        mu_grid.push(mu.clone());
        mu = &mu + mu_step;
    }
    let cells = mu_grid
        .iter()
        .map(|mu| (1..=m_max).map(|m| classify(mu, k, m)).collect())
        .collect();

    let mut standalone = Vec::new();
    let mut man_unit = Vec::new();
    let mut split = Vec::new();
    for mu in &mu_grid {
        if !mu.is_zero() {
            // mu M = K  =>  M = K / mu
            let m = rat_int(k as i64) / mu;
            standalone.push(BoundaryPoint {
                mu: mu.clone(),
                m_float: to_f64(&m),
                m_exact: Some(m),
            });
        }
        let one_minus = Rational::one() - rat_int(2) * mu;
        if one_minus > Rational::zero() {
            // M (1 - 2 mu) = 1  =>  M = 1 / (1 - 2 mu)
            let m = Rational::one() / one_minus;
            man_unit.push(BoundaryPoint {
                mu: mu.clone(),
                m_float: to_f64(&m),
                m_exact: Some(m),
            });
        }
        let spread = mu * (Rational::one() - mu);
        if spread > Rational::zero() {
            // K = mu (1 - mu) M^2 / (1 + mu M), the positive quadratic root
            let mu_f = to_f64(mu);
            let k_f = k as f64;
            let disc = (k_f * mu_f).powi(2) + 4.0 * k_f * mu_f * (1.0 - mu_f);
            let m = (k_f * mu_f + disc.sqrt()) / (2.0 * mu_f * (1.0 - mu_f));
            split.push(BoundaryPoint {
                mu: mu.clone(),
                m_exact: None,
                m_float: m,
            });
        }
    }

    Ok(RegionMap {
        k,
        mu_grid,
        m_max,
        cells,
        boundaries: vec![
            BoundaryCurve {
                kind: BoundaryKind::StandaloneFrontier,
                points: standalone,
            },
            BoundaryCurve {
                kind: BoundaryKind::ManUnitThreshold,
                points: man_unit,
            },
            BoundaryCurve {
                kind: BoundaryKind::BroadcastInterferenceSplit,
                points: split,
            },
        ],
    })
}
