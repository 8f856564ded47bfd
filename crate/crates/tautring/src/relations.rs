use crate::{Atom, RingCache, StratumRing, TautClass, TautError};
use exact::{rank, Rational};
use levelgraphs::{GraphInfo, PointSource};
use strata::{Point, StratumSpec};

/// The relation expressing `xi` through the cotangent class at `p`:
/// `xi = (m_p + 1) psi_p - sum ell_G [D_G]` over the two-level graphs with
/// the leg `p` on lower level.
pub fn xi_as_psi(ring: &StratumRing, p: Point) -> Result<TautClass, TautError> {
    let spec = ring.spec();
    check_point(spec, p)?;
    let mut out = TautClass::atom(Atom::Psi(p), Rational::from(spec.order(p) + 1));
    let lg1 = ring.lg1()?;
    for &i in ring.graphs_with_lower(p)? {
        out.add_term(crate::Monomial::atom(Atom::Divisor(i), 1), -ell(&lg1.graphs[i]));
    }
    Ok(out)
}

/// The same relation solved for `psi_p`:
/// `psi_p = (xi + sum ell_G [D_G]) / (m_p + 1)`; requires `m_p != -1`.
pub fn psi_as_xi(ring: &StratumRing, p: Point) -> Result<TautClass, TautError> {
    let spec = ring.spec();
    check_point(spec, p)?;
    let m = spec.order(p);
    if m == -1 {
        return Err(TautError::InvalidArgument(format!("psi at the simple pole {p} is not a multiple of xi")));
    }
    let inv = Rational::new(1, m + 1).map_err(|e| TautError::Consistency(e.to_string()))?;
    let mut out = TautClass::atom(Atom::Xi, inv.clone());
    let lg1 = ring.lg1()?;
    for &i in ring.graphs_with_lower(p)? {
        out.add_term(crate::Monomial::atom(Atom::Divisor(i), 1), ell(&lg1.graphs[i]) * &inv);
    }
    Ok(out)
}

/// The correction class `L = sum ell_G [D_G]` expanded into divisors.
pub fn correction_class(ring: &StratumRing) -> Result<TautClass, TautError> {
    let mut out = TautClass::zero();
    for (i, info) in ring.lg1()?.graphs.iter().enumerate() {
        out.add_term(crate::Monomial::atom(Atom::Divisor(i), 1), ell(info));
    }
    Ok(out)
}

/// The outcome of dropping one constrained residue part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRemoval {
    /// The stratum without the part.
    pub ambient: StratumSpec,
    /// The class of the constrained stratum inside `ambient` (the
    /// fundamental class when the part imposes no condition).
    pub class: TautClass,
    /// Whether the part cut the dimension by one.
    pub divisorial: bool,
}

/// Writes the stratum `spec` as a class on the stratum without its residue
/// part `part`.
///
/// If dropping the part leaves the dimension unchanged the two strata agree
/// and the class is the fundamental class. Otherwise the constrained
/// stratum is the divisor
/// `-xi - sum_{G in LG^R} ell_G [D_G] - sum_{G in LG_{1,R}} ell_G [D_G]`,
/// where `LG_{1,R}` are the two-level graphs with every point of the part on
/// lower level, and `LG^R` those where the part meets the top level but its
/// top-level trace adds no condition to the top-level residue space.
pub fn remove_residue_condition(spec: &StratumSpec, part: usize, rings: &RingCache) -> Result<ResidueRemoval, TautError> {
    let constrained = spec
        .residue_parts
        .get(part)
        .ok_or_else(|| TautError::InvalidArgument(format!("no residue part {part}")))?;
    let ambient = spec.without_part(part);
    if !constrained.constrained || ambient.dim() == spec.dim() {
        return Ok(ResidueRemoval { ambient, class: TautClass::one(), divisorial: false });
    }
    if ambient.dim() != spec.dim() + 1 {
        return Err(TautError::Consistency(format!("dropping part {part} of {} changed the dimension by more than one", spec.to_json())));
    }
    let ring = rings.ring(&ambient);
    let mut class = TautClass::atom(Atom::Xi, -Rational::one());
    for (i, info) in ring.lg1()?.graphs.iter().enumerate() {
        if boundary_term_of_removal(info, &constrained.points) {
            class.add_term(crate::Monomial::atom(Atom::Divisor(i), 1), -ell(info));
        }
    }
    Ok(ResidueRemoval { ambient, class, divisorial: true })
}

/// Whether a two-level graph of the unconstrained stratum occurs in the
/// residue-removal relation for the part with the given points.
pub fn boundary_term_of_removal(info: &GraphInfo, part: &[Point]) -> bool {
    let top = &info.levels[0];
    let on_top: Vec<Point> = part.iter().filter_map(|&p| top.point_of(PointSource::Leg(p))).collect();
    if on_top.is_empty() {
        return true;
    }
    let poles = top.spec.poles();
    let rows = top.spec.residue_conditions();
    let trace: Vec<Rational> =
        poles.iter().map(|q| if on_top.contains(q) { Rational::one() } else { Rational::zero() }).collect();
    let mut extended = rows.clone();
    extended.push(trace);
    rank(&extended) == rank(&rows)
}

fn check_point(spec: &StratumSpec, p: Point) -> Result<(), TautError> {
    if p.comp < spec.components.len() && p.idx < spec.components[p.comp].orders.len() {
        Ok(())
    } else {
        Err(TautError::InvalidArgument(format!("{p} is not a marked point")))
    }
}

pub(crate) fn ell(info: &GraphInfo) -> Rational {
    Rational::from(info.prong.ell as i64)
}
