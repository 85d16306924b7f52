//! State and generator specifications for the command line:
//! `coherent:RE[,IM]`, `squeezed:R`, `thermal:XI`, `displaced-squeezed:X0,R`,
//! `mixture:FILE`, and generators `X`, `Y`, `N`, `Jz`.

use anyhow::{anyhow, bail, Context, Result};
use qmetro::Complex as Complex64;

use qmetro::fock::{self, FockSpace, TruncationReport};
use qmetro::hermitian::{DensityMatrix, Observable};
use qmetro::CoherentMixture;

#[derive(Clone, Debug)]
pub enum StateSpec {
    Coherent(Complex64),
    Squeezed(f64),
    Thermal(f64),
    DisplacedSqueezed { x0: f64, r: f64 },
    Mixture(CoherentMixture),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    X,
    Y,
    N,
    Jz,
}

/// A built probe with its truncation bookkeeping.
pub struct BuiltState {
    pub rho: DensityMatrix,
    pub report: TruncationReport,
    pub space: FockSpace,
    /// Second-mode space when the probe is two-mode.
    pub space2: Option<FockSpace>,
    pub label: String,
}

pub fn parse_state(text: &str) -> Result<StateSpec> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("state spec '{text}' must look like kind:params"))?;
    match kind {
        "coherent" => {
            let (re, im) = parse_one_or_two(rest)?;
            Ok(StateSpec::Coherent(Complex64::new(re, im)))
        }
        "squeezed" => Ok(StateSpec::Squeezed(parse_real(rest)?)),
        "thermal" => {
            let xi = parse_real(rest)?;
            if !(0.0..1.0).contains(&xi) {
                bail!("thermal parameter must lie in [0, 1), got {xi}");
            }
            Ok(StateSpec::Thermal(xi))
        }
        "displaced-squeezed" => {
            let (x0, r) = parse_two(rest)?;
            Ok(StateSpec::DisplacedSqueezed { x0, r })
        }
        "mixture" => {
            let text = std::fs::read_to_string(rest)
                .with_context(|| format!("reading mixture file '{rest}'"))?;
            Ok(StateSpec::Mixture(CoherentMixture::from_json(&text)?))
        }
        other => bail!(
            "unknown state kind '{other}' (expected coherent, squeezed, thermal, \
             displaced-squeezed, or mixture)"
        ),
    }
}

pub fn parse_generator(text: &str) -> Result<GeneratorKind> {
    match text {
        "X" | "x" => Ok(GeneratorKind::X),
        "Y" | "y" => Ok(GeneratorKind::Y),
        "N" | "n" => Ok(GeneratorKind::N),
        "Jz" | "jz" | "JZ" => Ok(GeneratorKind::Jz),
        other => bail!("unknown generator '{other}' (expected X, Y, N, or Jz)"),
    }
}

impl StateSpec {
    pub fn default_cutoff(&self) -> usize {
        match self {
            StateSpec::Coherent(alpha) => fock::coherent_cutoff(*alpha),
            StateSpec::Squeezed(r) => fock::squeezed_cutoff(*r),
            StateSpec::Thermal(xi) => fock::thermal_cutoff(*xi),
            StateSpec::DisplacedSqueezed { x0, r } => fock::displaced_squeezed_cutoff(*x0, *r),
            StateSpec::Mixture(mix) => mix.default_cutoff(),
        }
    }

    pub fn is_two_mode(&self) -> bool {
        matches!(self, StateSpec::Mixture(m) if m.is_two_mode())
    }

    pub fn label(&self) -> String {
        match self {
            StateSpec::Coherent(a) => format!("coherent({}, {})", a.re, a.im),
            StateSpec::Squeezed(r) => format!("squeezed({r})"),
            StateSpec::Thermal(xi) => format!("thermal({xi})"),
            StateSpec::DisplacedSqueezed { x0, r } => format!("displaced-squeezed({x0}, {r})"),
            StateSpec::Mixture(m) => format!(
                "mixture({} component{})",
                m.weights().len(),
                if m.weights().len() == 1 { "" } else { "s" }
            ),
        }
    }

    /// Builds the single-mode density matrix at the given cutoff.
    pub fn build(&self, cutoff: usize) -> Result<BuiltState> {
        let space = FockSpace::new(cutoff)?;
        let (rho, report) = match self {
            StateSpec::Coherent(alpha) => fock::coherent_state(*alpha, space)?,
            StateSpec::Squeezed(r) => fock::squeezed_vacuum(*r, space)?,
            StateSpec::Thermal(xi) => fock::thermal_state(*xi, space)?,
            StateSpec::DisplacedSqueezed { x0, r } => fock::displaced_squeezed(*x0, *r, space)?,
            StateSpec::Mixture(mix) => {
                if mix.is_two_mode() {
                    bail!("two-mode mixtures are only valid with the Jz generator");
                }
                mix.to_density(space)?
            }
        };
        Ok(BuiltState {
            rho,
            report,
            space,
            space2: None,
            label: self.label(),
        })
    }
}

/// Builds the probe and generator for a measurement. `Jz` takes a product of
/// `state` and `state2` (or a two-mode mixture).
pub fn build_pair(
    state: &StateSpec,
    state2: Option<&StateSpec>,
    generator: GeneratorKind,
    cutoff: Option<usize>,
) -> Result<(BuiltState, Observable)> {
    match generator {
        GeneratorKind::Jz => {
            if state.is_two_mode() {
                let mix = match state {
                    StateSpec::Mixture(m) => m,
                    _ => unreachable!("only mixtures are two-mode"),
                };
                let c = cutoff.unwrap_or_else(|| mix.default_cutoff());
                let space = FockSpace::new(c)?;
                let (rho, report) = mix.to_density(space)?;
                let jz = fock::jz(space, space)?;
                return Ok((
                    BuiltState {
                        rho,
                        report,
                        space,
                        space2: Some(space),
                        label: state.label(),
                    },
                    jz,
                ));
            }
            let second = state2.cloned().unwrap_or(StateSpec::Coherent(Complex64::new(0.0, 0.0)));
            let c1 = cutoff.unwrap_or_else(|| state.default_cutoff());
            let c2 = cutoff.unwrap_or_else(|| second.default_cutoff());
            let first = state.build(c1)?;
            let other = second.build(c2)?;
            let rho = fock::two_mode(&first.rho, &other.rho)?;
            let jz = fock::jz(first.space, other.space)?;
            let deficit = first.report.trace_deficit + other.report.trace_deficit;
            Ok((
                BuiltState {
                    rho,
                    report: TruncationReport {
                        trace_deficit: deficit.clamp(0.0, 1.0),
                        renormalized: true,
                    },
                    space: first.space,
                    space2: Some(other.space),
                    label: format!("{} (x) {}", first.label, other.label),
                },
                jz,
            ))
        }
        single => {
            if state.is_two_mode() {
                bail!("two-mode mixtures require the Jz generator");
            }
            let c = cutoff.unwrap_or_else(|| state.default_cutoff());
            let built = state.build(c)?;
            let op = match single {
                GeneratorKind::X => fock::quadratures(built.space).0,
                GeneratorKind::Y => fock::quadratures(built.space).1,
                GeneratorKind::N => fock::number(built.space),
                GeneratorKind::Jz => unreachable!(),
            };
            Ok((built, op))
        }
    }
}

fn parse_real(text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| anyhow!("expected a real number, got '{text}'"))
}

fn parse_one_or_two(text: &str) -> Result<(f64, f64)> {
    match text.split_once(',') {
        Some((a, b)) => Ok((parse_real(a)?, parse_real(b)?)),
        None => Ok((parse_real(text)?, 0.0)),
    }
}

fn parse_two(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("expected two comma-separated numbers, got '{text}'"))?;
    Ok((parse_real(a)?, parse_real(b)?))
}
