//! Problem definitions, unit reduction and closed-form reference energies.
//!
//! In atomic-like units the radial problem depends on the box radius and the
//! Coulomb strength only through the coupling `β = m·r0·K/ħ²`; the physical
//! energy is `ħ²/(m·r0²)` times the energy of the unit box at coupling `β`.

use std::fmt;

use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{float_to_rational, format_rational, BigFloat, ExactScalar};

/// Physical parameters of the confined atom, in any consistent unit system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhysicalConfig {
    pub electron_mass: ExactScalar,
    pub hbar: ExactScalar,
    pub coulomb_strength: ExactScalar,
    pub box_radius: ExactScalar,
}

impl PhysicalConfig {
    /// Atomic units (`m = ħ = K = 1`) with the given box radius.
    pub fn atomic_units(box_radius: ExactScalar) -> Self {
        Self {
            electron_mass: RBig::ONE,
            hbar: RBig::ONE,
            coulomb_strength: RBig::ONE,
            box_radius,
        }
    }

    fn validate(&self) -> Result<()> {
        let fields = [
            ("electron mass", &self.electron_mass),
            ("hbar", &self.hbar),
            ("Coulomb strength", &self.coulomb_strength),
            ("box radius", &self.box_radius),
        ];
        for (name, value) in fields {
            if *value <= RBig::ZERO {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {value}")));
            }
        }
        Ok(())
    }

    /// The unit-box problem at the equivalent coupling, and the factor that
    /// turns its energies into physical ones.
    pub fn to_dimensionless(&self, l: u32) -> Result<(DimensionlessProblem, ExactScalar)> {
        self.validate()?;
        let hbar2 = &self.hbar * &self.hbar;
        let beta = &self.electron_mass * &self.box_radius * &self.coulomb_strength / &hbar2;
        let scale = hbar2 / (&self.electron_mass * &self.box_radius * &self.box_radius);
        Ok((DimensionlessProblem::new(l, beta)?, scale))
    }

    /// Physical energy of a dimensionless unit-box energy.
    pub fn redimensionalize(&self, energy: &ExactScalar) -> Result<ExactScalar> {
        let (_, scale) = self.to_dimensionless(0)?;
        Ok(scale * energy)
    }

    /// Dimensionless unit-box energy of a physical energy.
    pub fn dimensionless_energy(&self, energy: &ExactScalar) -> Result<ExactScalar> {
        let (_, scale) = self.to_dimensionless(0)?;
        Ok(energy / scale)
    }
}

/// One radial eigenproblem: angular momentum `l`, coupling `β`, box radius `r0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimensionlessProblem {
    l: u32,
    beta: ExactScalar,
    r0: ExactScalar,
}

impl DimensionlessProblem {
    /// Unit box, `r0 = 1`.
    pub fn new(l: u32, beta: ExactScalar) -> Result<Self> {
        Self::with_radius(l, beta, RBig::ONE)
    }

    pub fn with_radius(l: u32, beta: ExactScalar, r0: ExactScalar) -> Result<Self> {
        if beta < RBig::ZERO {
            return Err(Error::InvalidArgument(format!("beta must be non-negative, got {beta}")));
        }
        if r0 <= RBig::ZERO {
            return Err(Error::InvalidArgument(format!("box radius must be positive, got {r0}")));
        }
        Ok(Self { l, beta, r0 })
    }

    /// Coupling given as a float: it is replaced by its exact binary value.
    pub fn from_float_beta(l: u32, beta: &BigFloat) -> Result<Self> {
        Self::new(l, float_to_rational(beta))
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn beta(&self) -> &ExactScalar {
        &self.beta
    }

    pub fn r0(&self) -> &ExactScalar {
        &self.r0
    }
}

impl fmt::Display for DimensionlessProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l = {}, beta = {}, r0 = {}",
            self.l,
            format_rational(&self.beta, 10),
            format_rational(&self.r0, 10)
        )
    }
}

/// Radial and angular quantum numbers. Energies do not depend on `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.l)
    }
}

/// The pair of equivalent problems `E(1, β) = β²·E(β, 1)`.
///
/// Returns `(unit box at coupling β, box of radius β at unit coupling, β²)`;
/// eigenvalues of the first equal the factor times those of the second.
pub fn scaling_partner(
    l: u32,
    beta: &ExactScalar,
) -> Result<(DimensionlessProblem, DimensionlessProblem, ExactScalar)> {
    if *beta <= RBig::ZERO {
        return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    let a = DimensionlessProblem::new(l, beta.clone())?;
    let b = DimensionlessProblem::with_radius(l, RBig::ONE, beta.clone())?;
    Ok((a, b, beta * beta))
}

/// Free hydrogen level `−1/(2(n+l+1)²)`.
pub fn free_atom_energy(q: QuantumNumbers) -> ExactScalar {
    let k = (q.n + q.l + 1) as i64;
    crate::exact::rat(-1, 2 * k * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cfg(m: i64, hbar: i64, k: i64, r0: i64) -> PhysicalConfig {
        PhysicalConfig {
            electron_mass: rat(m, 1),
            hbar: rat(hbar, 1),
            coulomb_strength: rat(k, 1),
            box_radius: rat(r0, 1),
        }
    }

    #[test]
    fn unit_reduction() {
        let (p, s) = cfg(1, 1, 1, 1).to_dimensionless(0).unwrap();
        assert_eq!((p.beta().clone(), s), (rat(1, 1), rat(1, 1)));
        let (p, s) = cfg(1, 1, 1, 2).to_dimensionless(0).unwrap();
        assert_eq!((p.beta().clone(), s), (rat(2, 1), rat(1, 4)));
        let (p, s) = cfg(1, 1, 3, 4).to_dimensionless(1).unwrap();
        assert_eq!((p.beta().clone(), s, p.l()), (rat(12, 1), rat(1, 16), 1));
        assert!(cfg(1, 1, 0, 1).to_dimensionless(0).is_err());
        assert!(cfg(1, -1, 1, 1).to_dimensionless(0).is_err());
    }

    #[test]
    fn redimensionalize_round_trip() {
        let c = cfg(3, 2, 5, 7);
        let e = rat(-13, 11);
        let phys = c.redimensionalize(&e).unwrap();
        assert_eq!(c.dimensionless_energy(&phys).unwrap(), e);
    }

    #[test]
    fn scaling_partner_shapes() {
        let (a, b, f) = scaling_partner(0, &rat(1, 1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(f, rat(1, 1));
        let (a, b, f) = scaling_partner(1, &rat(6, 1)).unwrap();
        assert_eq!((a.beta().clone(), a.r0().clone()), (rat(6, 1), rat(1, 1)));
        assert_eq!((b.beta().clone(), b.r0().clone()), (rat(1, 1), rat(6, 1)));
        assert_eq!(f, rat(36, 1));
        assert!(scaling_partner(0, &rat(0, 1)).is_err());
    }

    #[test]
    fn free_atom_levels() {
        assert_eq!(free_atom_energy(QuantumNumbers::new(0, 0)), rat(-1, 2));
        assert_eq!(free_atom_energy(QuantumNumbers::new(1, 1)), rat(-1, 18));
        assert_eq!(
            free_atom_energy(QuantumNumbers::new(0, 2)),
            free_atom_energy(QuantumNumbers::new(2, 0))
        );
        let lower = free_atom_energy(QuantumNumbers::new(0, 1));
        assert!(free_atom_energy(QuantumNumbers::new(1, 1)) > lower);
    }
}
