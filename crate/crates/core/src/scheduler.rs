//! Constructive two-phase delivery schedule and its recount verifier.
//!
//! Phase one runs coded-caching multicast on the base-station-to-relay
//! broadcast channel while the relays simultaneously beamform towards a
//! rotating group of user terminals, partially nulling the multicast
//! interference. Phase two tops the terminals up with zero-forced private
//! symbols plus one common symbol per channel use. The verifier recounts the
//! whole construction from scratch, so it serves as the brute-force oracle
//! for the claimed channel-use counts.

use crate::combinatorics::{binom, k_subsets};
use crate::config::{ConfigError, CornerConfig, DemandVector};
use crate::rational::{rat_big, rat_int, Rational};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("schedule is too large to materialize: {0} does not fit in 64 bits")]
    TooLarge(String),
}

/// One of the `L' = Gamma * C(M, mu M)` symbols a file is split into.
///
/// `share_set` names the relays that prefetch the symbol; `copy` indexes the
/// `Gamma` repetitions of each share set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymbolId {
    pub file: u32,
    pub share_set: Vec<u32>,
    pub copy: u64,
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{{{}}}/{}", self.file, join_ids(&self.share_set), self.copy)
    }
}

fn join_ids(ids: &[u32]) -> String {
    ids.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Symmetric uncoded cache placement: every size-`mu M` relay subset shares
/// `Gamma` symbols of every file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    files: u32,
    rns: u32,
    share_size: u32,
    copies: u64,
    share_sets: Vec<Vec<u32>>,
}

impl Placement {
    pub fn files(&self) -> u32 {
        self.files
    }

    pub fn rns(&self) -> u32 {
        self.rns
    }

    pub fn share_size(&self) -> u32 {
        self.share_size
    }

    pub fn copies(&self) -> u64 {
        self.copies
    }

    pub fn share_sets(&self) -> &[Vec<u32>] {
        &self.share_sets
    }

    /// `L'`, recounted from the materialized share sets.
    pub fn symbols_per_file(&self) -> u64 {
        self.share_sets.len() as u64 * self.copies
    }

    /// Whether relay `rn` prefetched `symbol`.
    pub fn caches(&self, rn: u32, symbol: &SymbolId) -> bool {
        symbol.share_set.contains(&rn)
    }

    /// Symbols of `file` that relay `rn` did not prefetch, in enumeration order.
    pub fn uncached_symbols(&self, rn: u32, file: u32) -> Vec<SymbolId> {
        let mut out = Vec::new();
        for share_set in &self.share_sets {
            if share_set.contains(&rn) {
                continue;
            }
            for copy in 1..=self.copies {
                out.push(SymbolId {
                    file,
                    share_set: share_set.clone(),
                    copy,
                });
            }
        }
        out
    }

    /// Cached fraction of one file at relay `rn`, recounted exactly.
    pub fn cache_ratio(&self, rn: u32) -> Rational {
        let cached = self
            .share_sets
            .iter()
            .filter(|s| s.contains(&rn))
            .count() as u64
            * self.copies;
        if self.symbols_per_file() == 0 {
            return Rational::zero();
        }
        rat_big(&BigUint::from(cached)) / rat_big(&BigUint::from(self.symbols_per_file()))
    }
}

/// One channel use of phase one: a multicast group of `1 + mu M` relays and
/// the terminal group served alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase1Slot {
    pub rn_group: Vec<u32>,
    pub ue_group: Vec<u32>,
    /// Symbol decoded by each relay of the group, keyed by relay id.
    pub delivered: Vec<(u32, SymbolId)>,
    /// Degrees of freedom handed to every served terminal in this use.
    pub ue_dof: Rational,
}

/// One channel use of phase two: zero-forced private symbols under a common
/// symbol decoded first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase2Slot {
    pub private_ues: Vec<u32>,
    pub private_dof: Rational,
    pub common_ue: u32,
    pub common_dof: Rational,
}

impl Phase2Slot {
    /// Total degrees of freedom `(1 - alpha) + psi' alpha` carried by the use.
    pub fn total_dof(&self) -> Rational {
        &self.common_dof + rat_int(self.private_ues.len() as i64) * &self.private_dof
    }
}

/// Aggregate phase-two accounting. Channel uses may be fractional, so the
/// schedule keeps an exact per-terminal ledger instead of discrete slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase2Ledger {
    /// `T2`, possibly fractional.
    pub channel_uses: Rational,
    /// Degrees of freedom still owed to each terminal, index `k - 1`.
    pub per_ue_dof: Vec<Rational>,
}

/// The full two-phase schedule for one demand vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub placement: Placement,
    pub demand: DemandVector,
    pub phase1: Vec<Phase1Slot>,
    pub phase2: Phase2Ledger,
    pub alpha: Rational,
}

impl Schedule {
    /// `T1`, the number of phase-one channel uses.
    pub fn t1(&self) -> u64 {
        self.phase1.len() as u64
    }

    /// `(T1 + T2) / L'` recounted from the materialized schedule.
    pub fn ndt(&self) -> Rational {
        let l_prime = rat_big(&BigUint::from(self.placement.symbols_per_file()));
        (rat_big(&BigUint::from(self.t1())) + &self.phase2.channel_uses) / l_prime
    }

    /// The round-robin phase-two signaling pattern for whole channel use `t`
    /// (1-based): `psi'` cyclically chosen private terminals plus one common
    /// terminal.
    pub fn phase2_slot_pattern(&self, t: u64) -> Phase2Slot {
        let k = self.demand.ues();
        let c = self.placement.share_size();
        let psi_prime = k.min(1 + c);
        let start = ((t - 1) % k as u64) as u32;
        let private_ues = (0..psi_prime).map(|i| (start + i) % k + 1).collect();
        Phase2Slot {
            private_ues,
            private_dof: self.alpha.clone(),
            common_ue: start + 1,
            common_dof: Rational::one() - &self.alpha,
        }
    }

    /// Deterministic line-oriented text form.
    ///
    /// One `P1` record per phase-one slot and one `P2` ledger record per
    /// terminal, preceded by `#` header lines. Byte-identical across runs for
    /// identical inputs.
    pub fn to_text(&self) -> String {
        let k = self.demand.ues();
        let m = self.placement.rns();
        let n = self.placement.files();
        let l_prime = self.placement.symbols_per_file();
        let ndt = self.ndt();
        let mu = self.placement.cache_ratio(1);
        let mut out = String::new();
        out.push_str("# ndtlab schedule schema: 1\n");
        out.push_str(&format!(
            "# K: {} M: {} N: {} mu: {} alpha: {}\n",
            k,
            m,
            n,
            crate::rational::fmt_exact(&mu),
            crate::rational::fmt_exact(&self.alpha)
        ));
        out.push_str(&format!("# demand: {}\n", join_ids(self.demand.entries())));
        out.push_str(&format!(
            "# T1: {} T2: {}/{} Lprime: {} ndt: {}/{}\n",
            self.t1(),
            self.phase2.channel_uses.numer(),
            self.phase2.channel_uses.denom(),
            l_prime,
            ndt.numer(),
            ndt.denom()
        ));
        for (idx, slot) in self.phase1.iter().enumerate() {
            let syms = slot
                .delivered
                .iter()
                .map(|(_, sym)| sym.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "P1 {} RN{{{}}} UE{{{}}} sym:{}\n",
                idx + 1,
                join_ids(&slot.rn_group),
                join_ids(&slot.ue_group),
                syms
            ));
        }
        for (i, dof) in self.phase2.per_ue_dof.iter().enumerate() {
            out.push_str(&format!(
                "P2 UE{} dof {}/{}\n",
                i + 1,
                dof.numer(),
                dof.denom()
            ));
        }
        out
    }
}

/// Closed-form channel-use accounting of the scheme at one corner point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeCounts {
    /// Terminals served per phase-one use, `min{K, mu M}`.
    pub psi: u32,
    /// Terminals served privately per phase-two use, `min{K, 1 + mu M}`.
    pub psi_prime: u32,
    /// Repetitions per share set, `C(K, psi)`.
    pub gamma: BigUint,
    /// Symbols per file, `L' = Gamma * C(M, mu M)`.
    pub symbols_per_file: BigUint,
    /// Phase-one channel uses, `T1 = Gamma * C(M, 1 + mu M)`.
    pub t1: BigUint,
    /// Per-terminal phase-one degrees of freedom,
    /// `L~ = C(M, 1 + mu M) C(K-1, psi - 1) alpha`.
    pub ue_phase1_dof: Rational,
    /// Phase-two channel uses, `K (L' - L~) / (1 + min{K-1, mu M} alpha)`
    /// when `L~ < L'`, otherwise zero.
    pub t2: Rational,
    /// `(T1 + T2) / L'`.
    pub ndt: Rational,
}

/// Evaluates the scheme's counting identities without materializing slots.
pub fn scheme_counts(corner: &CornerConfig) -> SchemeCounts {
    let k = corner.config().ues();
    let m = corner.config().rns();
    let c = corner.cache_units();
    let alpha = corner.config().alpha();
    let psi = k.min(c);
    let psi_prime = k.min(1 + c);
    let gamma = binom(k as u64, psi as i64);
    let symbols_per_file = &gamma * binom(m as u64, c as i64);
    let t1 = &gamma * binom(m as u64, c as i64 + 1);
    let ue_phase1_dof = rat_big(
        &(binom(m as u64, c as i64 + 1) * binom(k as u64 - 1, psi as i64 - 1)),
    ) * alpha;
    let l_prime = rat_big(&symbols_per_file);
    let per_use_dof = Rational::one() + rat_int((k - 1).min(c) as i64) * alpha;
    let t2 = if ue_phase1_dof < l_prime {
        rat_int(k as i64) * (&l_prime - &ue_phase1_dof) / per_use_dof
    } else {
        Rational::zero()
    };
    let ndt = (rat_big(&t1) + &t2) / l_prime;
    SchemeCounts {
        psi,
        psi_prime,
        gamma,
        symbols_per_file,
        t1,
        ue_phase1_dof,
        t2,
        ndt,
    }
}

/// `(T1 + T2) / L'` from the closed-form counts.
pub fn schedule_ndt(corner: &CornerConfig) -> Rational {
    scheme_counts(corner).ndt
}

/// Builds the symmetric prefetching map: all `C(M, mu M)` share sets in
/// lexicographic order, `Gamma` copies each, for every file.
///
/// At `mu = 0` the single empty share set leaves every relay cache empty.
pub fn build_placement(corner: &CornerConfig) -> Result<Placement, ScheduleError> {
    let m = corner.config().rns();
    let c = corner.cache_units();
    let counts = scheme_counts(corner);
    let copies = counts
        .gamma
        .to_u64()
        .ok_or_else(|| ScheduleError::TooLarge(format!("Gamma = {}", counts.gamma)))?;
    Ok(Placement {
        files: corner.config().files(),
        rns: m,
        share_size: c,
        copies,
        share_sets: k_subsets(m, c),
    })
}

/// Builds the full two-phase schedule for `demand`.
///
/// Phase-one slots enumerate every (relay group, copy index) pair in
/// lexicographic order; the copy index also selects the lexicographic
/// terminal subset served in that use. At `mu = 0` this degenerates to plain
/// unicast: `M` single-relay slots followed by `K` full-rate terminal uses.
pub fn build_schedule(
    corner: &CornerConfig,
    demand: &DemandVector,
) -> Result<Schedule, ScheduleError> {
    // re-validate the demand against this exact configuration
    let demand = DemandVector::new(demand.entries().to_vec(), corner.config())?;
    let k = corner.config().ues();
    let m = corner.config().rns();
    let c = corner.cache_units();
    let alpha = corner.config().alpha().clone();
    let placement = build_placement(corner)?;
    let counts = scheme_counts(corner);

    let ue_subsets = k_subsets(k, counts.psi);
    debug_assert_eq!(BigUint::from(ue_subsets.len()), counts.gamma);

    let mut phase1 = Vec::new();
    for rn_group in k_subsets(m, c + 1) {
        for (j, ue_group) in ue_subsets.iter().enumerate() {
            let copy = j as u64 + 1;
            let delivered = rn_group
                .iter()
                .map(|&rn| {
                    let share_set: Vec<u32> =
                        rn_group.iter().copied().filter(|&x| x != rn).collect();
                    (
                        rn,
                        SymbolId {
                            file: demand.rn_demand(rn),
                            share_set,
                            copy,
                        },
                    )
                })
                .collect();
            phase1.push(Phase1Slot {
                rn_group: rn_group.clone(),
                ue_group: ue_group.clone(),
                delivered,
                ue_dof: alpha.clone(),
            });
        }
    }

    let l_prime = rat_big(&counts.symbols_per_file);
    let owed = if counts.ue_phase1_dof < l_prime {
        &l_prime - &counts.ue_phase1_dof
    } else {
        Rational::zero()
    };
    let phase2 = Phase2Ledger {
        channel_uses: counts.t2.clone(),
        per_ue_dof: vec![owed; k as usize],
    };

    Ok(Schedule {
        placement,
        demand,
        phase1,
        phase2,
        alpha,
    })
}

/// A structural or zero-forcing problem found in one phase-one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotIssue {
    /// 1-based slot number.
    pub slot: usize,
    pub reason: String,
}

/// Outcome of an independent recount of a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every relay received each uncached symbol of its file exactly once.
    pub rn_complete: bool,
    pub missing_rn_symbols: Vec<(u32, SymbolId)>,
    /// Deliveries that are duplicated, already cached or for the wrong file,
    /// tagged with their 1-based slot number.
    pub unexpected_rn_deliveries: Vec<(usize, u32, SymbolId)>,
    pub zf_violations: Vec<SlotIssue>,
    pub ue_phase1_dof: Vec<Rational>,
    pub ue_total_dof: Vec<Rational>,
    pub ue_dof_ok: bool,
    pub cache_ratio: Rational,
    pub cache_ratio_ok: bool,
    pub phase2_balanced: bool,
    pub ndt: Rational,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rn_complete
            && self.zf_violations.is_empty()
            && self.ue_dof_ok
            && self.cache_ratio_ok
            && self.phase2_balanced
    }
}

/// Recounts a schedule from scratch against its configuration.
///
/// Nothing is trusted from the builder: relay coverage, zero-forcing
/// feasibility, terminal degree-of-freedom totals, the cache ratio and the
/// phase-two balance are each re-derived from the slot lists and placement.
/// Violations are reported, not raised.
pub fn verify_schedule(schedule: &Schedule, corner: &CornerConfig) -> VerifyReport {
    let k = corner.config().ues();
    let m = corner.config().rns();
    let c = corner.cache_units();
    let mu = corner.config().mu();
    let alpha = corner.config().alpha();
    let psi = k.min(c);
    let placement = &schedule.placement;
    let l_prime = rat_big(&BigUint::from(placement.symbols_per_file()));

    let mut zf_violations = Vec::new();
    let mut unexpected = Vec::new();
    let mut delivered: BTreeMap<(u32, SymbolId), u32> = BTreeMap::new();
    let mut ue_slot_counts = vec![0u64; k as usize];

    for (idx, slot) in schedule.phase1.iter().enumerate() {
        let slot_no = idx + 1;
        let mut issue = |reason: String| {
            zf_violations.push(SlotIssue {
                slot: slot_no,
                reason,
            });
        };
        if slot.rn_group.len() != (c + 1) as usize {
            issue(format!(
                "relay group has {} members, expected {}",
                slot.rn_group.len(),
                c + 1
            ));
        }
        if slot.rn_group.iter().any(|&rn| rn == 0 || rn > m) {
            issue("relay group contains an out-of-range relay".to_string());
        }
        if slot.ue_group.len() != psi as usize {
            issue(format!(
                "terminal group has {} members, expected {}",
                slot.ue_group.len(),
                psi
            ));
        }
        if slot.ue_group.iter().any(|&ue| ue == 0 || ue > k) {
            issue("terminal group contains an out-of-range terminal".to_string());
        }
        if &slot.ue_dof != alpha {
            issue(format!(
                "terminal dof {} differs from alpha = {}",
                slot.ue_dof, alpha
            ));
        }
        for &ue in &slot.ue_group {
            if ue >= 1 && ue <= k {
                ue_slot_counts[(ue - 1) as usize] += 1;
            }
        }
        for (rn, sym) in &slot.delivered {
            if !slot.rn_group.contains(rn) {
                issue(format!("symbol {} addressed to relay {} outside the group", sym, rn));
                continue;
            }
            // zero-forcing feasibility: the cache holders of the symbol must
            // be exactly the other group members, so they can cancel it
            for &other in slot.rn_group.iter().filter(|&&x| x != *rn) {
                if !placement.caches(other, sym) {
                    issue(format!(
                        "symbol {} for relay {} is not cached at group member {}",
                        sym, rn, other
                    ));
                }
            }
            if placement.caches(*rn, sym) {
                unexpected.push((slot_no, *rn, sym.clone()));
                continue;
            }
            if sym.file != schedule.demand.rn_demand(*rn) {
                unexpected.push((slot_no, *rn, sym.clone()));
                continue;
            }
            if sym.copy == 0 || sym.copy > placement.copies() {
                issue(format!("symbol {} has an out-of-range copy index", sym));
                continue;
            }
            let count = delivered.entry((*rn, sym.clone())).or_insert(0);
            *count += 1;
            if *count > 1 {
                unexpected.push((slot_no, *rn, sym.clone()));
            }
        }
    }

    let mut missing = Vec::new();
    for rn in 1..=m {
        let file = schedule.demand.rn_demand(rn);
        for sym in placement.uncached_symbols(rn, file) {
            if !delivered.contains_key(&(rn, sym.clone())) {
                missing.push((rn, sym));
            }
        }
    }
    let rn_complete = missing.is_empty() && unexpected.is_empty();

    // per-terminal accounting: phase-one capacity capped at L', plus ledger
    let ue_phase1_dof: Vec<Rational> = ue_slot_counts
        .iter()
        .map(|&uses| rat_big(&BigUint::from(uses)) * alpha)
        .collect();
    let mut ue_total_dof = Vec::with_capacity(k as usize);
    let mut ue_dof_ok = schedule.phase2.per_ue_dof.len() == k as usize;
    for (i, cap) in ue_phase1_dof.iter().enumerate() {
        let useful = cap.clone().min(l_prime.clone());
        let ledger = schedule
            .phase2
            .per_ue_dof
            .get(i)
            .cloned()
            .unwrap_or_else(Rational::zero);
        if ledger < Rational::zero() {
            ue_dof_ok = false;
        }
        let total = useful + ledger;
        if total != l_prime {
            ue_dof_ok = false;
        }
        ue_total_dof.push(total);
    }

    let cache_ratio = placement.cache_ratio(1);
    let cache_ratio_ok = (1..=m).all(|rn| &placement.cache_ratio(rn) == mu);

    let ledger_sum: Rational = schedule
        .phase2
        .per_ue_dof
        .iter()
        .fold(Rational::zero(), |acc, d| acc + d);
    let per_use_dof = Rational::one() + rat_int((k - 1).min(c) as i64) * alpha;
    let phase2_balanced = schedule.phase2.channel_uses >= Rational::zero()
        && ledger_sum == &schedule.phase2.channel_uses * per_use_dof;

    let ndt = schedule.ndt();

    VerifyReport {
        rn_complete,
        missing_rn_symbols: missing,
        unexpected_rn_deliveries: unexpected,
        zf_violations,
        ue_phase1_dof,
        ue_total_dof,
        ue_dof_ok,
        cache_ratio,
        cache_ratio_ok,
        phase2_balanced,
        ndt,
    }
}
