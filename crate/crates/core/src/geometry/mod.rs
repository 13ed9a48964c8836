//! Verdict-producing analyses of a metric Lie algebra: Einstein and soliton
//! classification, Killing and geodesic fields, harmonicity, energy, Ledger
//! conditions and Walker structure. A floating-point evaluation layer in
//! [`numeric`] cross-checks the exact results in pseudo-orthonormal frames.

mod energy;
mod geodesic;
mod harmonic;
mod killing;
mod ledger;
pub mod numeric;
mod soliton;
mod subspace;
mod walker;

pub use energy::{energy_report, EnergyReport, FamilyEnergy};
pub use geodesic::{geodesic_check, geodesic_classify, CaseAnalysis, GeodesicBranch, GeodesicReport};
pub use harmonic::{
    harmonicity_classify, parallel_fields, rough_laplacian, trace_term, FamilyHarmonicity, HarmonicityVerdict,
};
pub use killing::{killing_solve, KillingBranch, KillingReport};
pub use ledger::{ledger_check, LedgerReport};
pub use numeric::{evaluate_numeric, NumericModel, SignatureKind};
pub use soliton::{
    ricci_soliton_solve, soliton_system, SolitonBranch, SolitonBranchStatus, SolitonConvention, SolitonKind,
    SolitonVerdict, SolitonWitness,
};
pub use subspace::{linear_text, vector_text, Subspace};
pub use walker::{walker_check, EpsBranch, WalkerBranch, WalkerVerdict};

use crate::algebra::{ricci, MetricLieAlgebra};
use crate::scalarfield::RatFunc;
use crate::Error;

/// `Some(lambda)` iff `rho = lambda g` exactly.
pub fn einstein_check(alg: &MetricLieAlgebra) -> Result<Option<RatFunc>, Error> {
    let rho = ricci(alg)?.matrix;
    let g = alg.metric();
    let n = alg.dim();
    // lambda from the first nonzero metric entry, then checked everywhere.
    let Some((i, j)) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !g[(i, j)].is_zero())
    else {
        return Ok(None);
    };
    let lambda = rho[(i, j)].checked_div(&g[(i, j)])?;
    Ok((rho == g.scale(&lambda)).then_some(lambda))
}
