use crate::fcomplex::{pages, purity_collapse_report, virtual_poincare_from_first_page, PageSet, Poly, PurityReport};

use super::cells::toric_cell_complex;
use super::fan::Fan;
use super::ToricError;

/// `Σ_σ (t - 1)^{codim σ}`: one torus `(ℝ*)^{codim σ}` per orbit.
pub fn orbit_sum(fan: &Fan) -> Poly {
    let t1 = Poly::t_minus_one();
    (0..fan.len()).fold(Poly::zero(), |acc, c| &acc + &t1.pow(fan.codim(c) as u32))
}

/// `β` from the first page of the toric filtration in the subgroup basis;
/// this avoids computing the later pages.
pub fn fan_virtual_poincare(fan: &Fan) -> Result<Poly, ToricError> {
    let t = toric_cell_complex(fan)?;
    Ok(virtual_poincare_from_first_page(&t.adapted(fan).first_page_dims()))
}

/// All pages of the toric filtration and the purity report.
pub fn toric_pages(fan: &Fan) -> Result<(PageSet, PurityReport), ToricError> {
    let t = toric_cell_complex(fan)?;
    let ps = pages(&t.filtration).map_err(|e| ToricError::Internal(e.to_string()))?;
    let report = purity_collapse_report(&ps, fan.lattice_rank());
    Ok((ps, report))
}
