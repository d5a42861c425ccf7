//! The physical model: two oscillators, their coupling and the initial
//! product thermal state. Units are ħ = k_B = 1 throughout.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coupling between the two oscillators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interaction {
    None,
    /// `ig(a⊗b† − a†⊗b)`
    Rwa { g: f64 },
    /// `ig(a† + a)⊗(b† − b)`
    Linear { g: f64 },
    /// `(p_a − q x_b)²/2m` replaces `p_a²/2m`.
    MinimalA { mass: f64, q: f64 },
    /// `(p_b + q x_a)²/2m` replaces `p_b²/2m`.
    MinimalB { mass: f64, q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InteractionKind {
    None,
    Rwa,
    Linear,
    MinimalA,
    MinimalB,
}

impl InteractionKind {
    pub const ALL: [InteractionKind; 5] = [
        InteractionKind::None,
        InteractionKind::Rwa,
        InteractionKind::Linear,
        InteractionKind::MinimalA,
        InteractionKind::MinimalB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InteractionKind::None => "none",
            InteractionKind::Rwa => "rwa",
            InteractionKind::Linear => "linear",
            InteractionKind::MinimalA => "minimal-a",
            InteractionKind::MinimalB => "minimal-b",
        }
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InteractionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "none" => Ok(InteractionKind::None),
            "rwa" => Ok(InteractionKind::Rwa),
            "linear" => Ok(InteractionKind::Linear),
            "minimal-a" => Ok(InteractionKind::MinimalA),
            "minimal-b" => Ok(InteractionKind::MinimalB),
            other => Err(Error::Domain(format!("unknown interaction kind `{other}`"))),
        }
    }
}

impl Interaction {
    pub fn kind(&self) -> InteractionKind {
        match self {
            Interaction::None => InteractionKind::None,
            Interaction::Rwa { .. } => InteractionKind::Rwa,
            Interaction::Linear { .. } => InteractionKind::Linear,
            Interaction::MinimalA { .. } => InteractionKind::MinimalA,
            Interaction::MinimalB { .. } => InteractionKind::MinimalB,
        }
    }
}

/// Two harmonic oscillators `H_a = ω_a a†a`, `H_b = ω_b b†b` and their coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSystem {
    omega_a: f64,
    omega_b: f64,
    interaction: Interaction,
}

fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {value}")))
    }
}

fn require_non_negative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be non-negative and finite, got {value}")))
    }
}

impl OscillatorSystem {
    pub fn new(omega_a: f64, omega_b: f64, interaction: Interaction) -> Result<Self> {
        require_positive("omega_a", omega_a)?;
        require_positive("omega_b", omega_b)?;
        match interaction {
            Interaction::None => {}
            Interaction::Rwa { g } | Interaction::Linear { g } => require_non_negative("g", g)?,
            Interaction::MinimalA { mass, q } | Interaction::MinimalB { mass, q } => {
                require_positive("mass", mass)?;
                require_non_negative("q", q)?;
            }
        }
        Ok(OscillatorSystem {
            omega_a,
            omega_b,
            interaction,
        })
    }

    pub fn resonant(omega: f64, interaction: Interaction) -> Result<Self> {
        Self::new(omega, omega, interaction)
    }

    pub fn rwa(omega: f64, g: f64) -> Result<Self> {
        Self::resonant(omega, Interaction::Rwa { g })
    }

    pub fn linear(omega: f64, g: f64) -> Result<Self> {
        Self::resonant(omega, Interaction::Linear { g })
    }

    pub fn uncoupled(omega_a: f64, omega_b: f64) -> Result<Self> {
        Self::new(omega_a, omega_b, Interaction::None)
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    pub fn interaction(&self) -> Interaction {
        self.interaction
    }

    pub fn kind(&self) -> InteractionKind {
        self.interaction.kind()
    }

    /// Coupling strength `g` for the RWA and linear kinds, zero otherwise.
    pub fn g(&self) -> f64 {
        match self.interaction {
            Interaction::Rwa { g } | Interaction::Linear { g } => g,
            _ => 0.0,
        }
    }

    /// Oscillator mass; only the minimal-coupling kinds carry one, the rest use `m = 1`.
    pub fn mass(&self) -> f64 {
        match self.interaction {
            Interaction::MinimalA { mass, .. } | Interaction::MinimalB { mass, .. } => mass,
            _ => 1.0,
        }
    }

    pub fn is_resonant(&self) -> bool {
        self.omega_a == self.omega_b
    }

    /// Energy scale used for sign tolerances.
    pub fn energy_scale(&self) -> f64 {
        self.omega_a.max(self.omega_b)
    }

    /// The same system with modes `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        let interaction = match self.interaction {
            // Relabelling flips the sign of q; the parity map x_a → −x_a restores it
            // without touching H_a or the thermal state.
            Interaction::MinimalA { mass, q } => Interaction::MinimalB { mass, q },
            Interaction::MinimalB { mass, q } => Interaction::MinimalA { mass, q },
            other => other,
        };
        OscillatorSystem {
            omega_a: self.omega_b,
            omega_b: self.omega_a,
            interaction,
        }
    }
}

/// Inverse temperatures of the initial product state `ρ_a^th ⊗ ρ_b^th`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPreparation {
    beta_a: f64,
    beta_b: f64,
}

impl ThermalPreparation {
    pub fn new(beta_a: f64, beta_b: f64) -> Result<Self> {
        require_positive("beta_a", beta_a)?;
        require_positive("beta_b", beta_b)?;
        Ok(ThermalPreparation { beta_a, beta_b })
    }

    /// From temperatures, `β = 1/T` in the shared energy unit.
    pub fn from_temperatures(temp_a: f64, temp_b: f64) -> Result<Self> {
        require_positive("temp_a", temp_a)?;
        require_positive("temp_b", temp_b)?;
        Self::new(1.0 / temp_a, 1.0 / temp_b)
    }

    pub fn beta_a(&self) -> f64 {
        self.beta_a
    }

    pub fn beta_b(&self) -> f64 {
        self.beta_b
    }

    pub fn swapped(&self) -> Self {
        ThermalPreparation {
            beta_a: self.beta_b,
            beta_b: self.beta_a,
        }
    }

    /// `β_aΔQ_a + β_bΔQ_b`
    pub fn free_entropy(&self, dq_a: f64, dq_b: f64) -> f64 {
        self.beta_a * dq_a + self.beta_b * dq_b
    }
}

/// Heat bookkeeping at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatReport {
    pub t: f64,
    pub dq_a: f64,
    pub dq_b: f64,
    /// Always `dq_b − dq_a`.
    pub dq_ab: f64,
    pub ds0: f64,
    pub csl_ok: bool,
}

impl HeatReport {
    pub fn new(t: f64, dq_a: f64, dq_b: f64, prep: &ThermalPreparation, energy_scale: f64) -> Self {
        let dq_ab = dq_b - dq_a;
        let verdict = crate::diagnostics::csl_check(t, dq_ab, prep, energy_scale);
        HeatReport {
            t,
            dq_a,
            dq_b,
            dq_ab,
            ds0: prep.free_entropy(dq_a, dq_b),
            csl_ok: verdict.compliant,
        }
    }
}
