//! Energy-consumption models.
//!
//! The solver treats energy evaluation as a black box behind
//! [`EnergyModel`]: given the payload carried on a leg and the leg's
//! geometry it returns the energy drawn from the battery. Shipped models:
//!
//! * [`LinearModel`] — `t * (rate_per_kg * w + base)`;
//! * [`ConvexModel`] — `t * alpha * (beta + w)^(3/2)`;
//! * [`PhaseModel`] — per-phase (takeoff, level, hover, landing) power with
//!   a rotor induced-velocity term obtained by solving an implicit equation.

use crate::instance::{Instance, TravelTables};
use rand::Rng;
use std::path::Path;
use thiserror::Error;

/// Geometry of a single leg: straight-line distance and scheduled duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegGeometry {
    pub distance: f64,
    pub duration: f64,
}

impl LegGeometry {
    pub fn from_time(duration: f64, speed: f64) -> Self {
        LegGeometry { distance: duration * speed, duration }
    }
}

#[derive(Debug, Error)]
pub enum EnergyError {
    #[error("induced-velocity root not bracketed for phase {phase} (inconsistent parameters)")]
    RootNotBracketed { phase: usize },
    #[error("multiple sign changes while bracketing the phase-{phase} root; parameters ambiguous")]
    AmbiguousRoot { phase: usize },
    #[error("bad phase coefficients: {0}")]
    BadCoefficients(String),
    #[error("phase coefficient file, line {line}: {msg}")]
    CoeffParse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Black-box energy model contract.
pub trait EnergyModel: Send + Sync {
    /// Energy to fly one leg carrying `payload` kg.
    fn arc_energy(&self, payload: f64, leg: &LegGeometry) -> f64;

    /// Energy per minute spent hovering (or waiting) with `payload` kg.
    fn hover_power(&self, payload: f64) -> f64;

    /// True when the model distinguishes flight phases.
    fn supports_per_phase(&self) -> bool {
        false
    }

    /// True when the model has the shape `time * rate(payload)` with a
    /// nondecreasing rate. Together with metric travel times this makes
    /// trip energy monotone under insertions.
    fn time_proportional(&self) -> bool;
}

/// `t * (rate_per_kg * w + base)`.
#[derive(Debug, Clone, Copy)]
pub struct LinearModel {
    pub rate_per_kg: f64,
    pub base: f64,
}

impl LinearModel {
    pub fn new(rate_per_kg: f64, base: f64) -> Self {
        assert!(rate_per_kg >= 0.0 && base > 0.0, "linear model needs rate >= 0 and base > 0");
        LinearModel { rate_per_kg, base }
    }
}

impl EnergyModel for LinearModel {
    fn arc_energy(&self, payload: f64, leg: &LegGeometry) -> f64 {
        leg.duration * (self.rate_per_kg * payload + self.base)
    }

    fn hover_power(&self, payload: f64) -> f64 {
        // Same law at unit time; the model has no separate hover mode.
        self.rate_per_kg * payload + self.base
    }

    fn time_proportional(&self) -> bool {
        true
    }
}

/// `t * alpha * (beta + w)^(3/2)`.
#[derive(Debug, Clone, Copy)]
pub struct ConvexModel {
    pub alpha: f64,
    pub beta: f64,
}

impl ConvexModel {
    pub fn new(alpha: f64, beta: f64) -> Self {
        assert!(alpha > 0.0 && beta > 0.0, "convex model needs alpha > 0 and beta > 0");
        ConvexModel { alpha, beta }
    }
}

impl EnergyModel for ConvexModel {
    fn arc_energy(&self, payload: f64, leg: &LegGeometry) -> f64 {
        leg.duration * self.alpha * (self.beta + payload).powf(1.5)
    }

    fn hover_power(&self, payload: f64) -> f64 {
        self.alpha * (self.beta + payload).powf(1.5)
    }

    fn time_proportional(&self) -> bool {
        true
    }
}

/// Wrapper that zeroes hover power but keeps arc energies; used to reduce
/// the hover-extended model to the base model.
pub struct ZeroHover<M: EnergyModel>(pub M);

impl<M: EnergyModel> EnergyModel for ZeroHover<M> {
    fn arc_energy(&self, payload: f64, leg: &LegGeometry) -> f64 {
        self.0.arc_energy(payload, leg)
    }

    fn hover_power(&self, _payload: f64) -> f64 {
        0.0
    }

    fn supports_per_phase(&self) -> bool {
        self.0.supports_per_phase()
    }

    fn time_proportional(&self) -> bool {
        self.0.time_proportional()
    }
}

pub const PHASE_TAKEOFF: usize = 0;
pub const PHASE_LEVEL: usize = 1;
pub const PHASE_HOVER: usize = 2;
pub const PHASE_LANDING: usize = 3;
pub const PHASE_NAMES: [&str; 4] = ["takeoff", "level", "hover", "landing"];

/// The 14 per-phase coefficients of the phase power law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCoeffs {
    pub a: [f64; 14],
}

/// Splits a leg's duration over the four phases. Climb and descent times
/// come from the configured altitude and vertical speeds, the remainder is
/// level flight; hovering inside a leg is zero in base flights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTimePolicy {
    pub altitude: f64,
    pub takeoff_speed: f64,
    pub landing_speed: f64,
}

impl PhaseTimePolicy {
    /// Nonnegative per-phase times summing exactly to the leg duration.
    pub fn split(&self, leg: &LegGeometry) -> [f64; 4] {
        let mut t1 = self.altitude / self.takeoff_speed;
        let mut t4 = self.altitude / self.landing_speed;
        let total = leg.duration.max(0.0);
        let mut t2 = total - t1 - t4;
        if t2 < 0.0 {
            let scale = if t1 + t4 > 0.0 { total / (t1 + t4) } else { 0.0 };
            t1 *= scale;
            t4 *= scale;
            t2 = 0.0;
        }
        [t1, t2, 0.0, t4]
    }
}

/// Phase-resolved energy model.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseModel {
    pub phases: [PhaseCoeffs; 4],
    /// Frame-plus-battery weight in kg.
    pub frame_weight: f64,
    pub policy: PhaseTimePolicy,
}

/// Residual pieces of the induced-velocity equation at candidate `x`:
/// returns `(lhs, rhs)`. `rhs` is reported as `-inf` while its inner root
/// argument is still negative, signalling that the root lies further right.
pub fn phi_equation_sides(model: &PhaseModel, phase: usize, payload: f64, x: f64) -> (f64, f64) {
    let a = &model.phases[phase].a;
    let bw = model.frame_weight + payload;
    let lhs = a[7] * (a[2] + a[3] * bw * bw).max(0.0).sqrt();
    let denom_sq = a[11] * bw * bw + a[12] + a[13] * bw;
    let k = if denom_sq > 0.0 { (a[9] + a[10] * bw) / denom_sq.sqrt() } else { 0.0 };
    let arg = a[8] + x * x + x * k;
    let rhs = if arg < 0.0 { f64::NEG_INFINITY } else { x * arg.sqrt() };
    (lhs, rhs)
}

/// Solves the implicit induced-velocity equation for the unique positive
/// root. Brackets by doubling (cap 60), then bisects to 1e-12 on `x`.
pub fn solve_induced_velocity(
    model: &PhaseModel,
    phase: usize,
    payload: f64,
) -> Result<f64, EnergyError> {
    let (lhs, _) = phi_equation_sides(model, phase, payload, 0.0);
    if lhs <= 0.0 {
        // Degenerate power term; the equation is satisfied at x = 0.
        return Ok(0.0);
    }
    let g = |x: f64| {
        let (l, r) = phi_equation_sides(model, phase, payload, x);
        r - l
    };

    let mut hi = 1.0;
    let mut doublings = 0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(EnergyError::RootNotBracketed { phase });
        }
    }
    // Probe past the first crossing; a second sign change means the
    // parameters admit several roots and the result would be arbitrary.
    let mut probe = hi * 2.0;
    for _ in 0..2 {
        if g(probe) < 0.0 {
            return Err(EnergyError::AmbiguousRoot { phase });
        }
        probe *= 2.0;
    }

    let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

impl PhaseModel {
    /// Per-phase power at `payload` kg (energy per minute).
    pub fn phase_power(&self, payload: f64, phase: usize) -> Result<f64, EnergyError> {
        let a = &self.phases[phase].a;
        let bw = self.frame_weight + payload;
        let phi = solve_induced_velocity(self, phase, payload)?;
        Ok(a[0]
            + a[1] * phi * (a[2] + a[3] * bw * bw).max(0.0).sqrt()
            + a[4] * bw.powf(1.5)
            + a[5] * bw.sqrt()
            + a[6] * bw)
    }

    /// Leg energy: per-phase times from the policy times per-phase power.
    pub fn leg_energy(&self, payload: f64, leg: &LegGeometry) -> Result<f64, EnergyError> {
        let times = self.policy.split(leg);
        let mut total = 0.0;
        for (phase, &t) in times.iter().enumerate() {
            if t > 0.0 {
                total += t * self.phase_power(payload, phase)?;
            }
        }
        Ok(total)
    }

    /// Loads a coefficient table: `BETA`, `POLICY`, then one `PHASE` line of
    /// 14 coefficients per phase.
    pub fn from_coeff_file(path: &Path) -> Result<Self, EnergyError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_coeff_text(&text)
    }

    pub fn from_coeff_text(text: &str) -> Result<Self, EnergyError> {
        let mut beta = None;
        let mut policy = None;
        let mut phases: [Option<PhaseCoeffs>; 4] = [None; 4];
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let parse = |tok: &str, what: &str| -> Result<f64, EnergyError> {
                tok.parse::<f64>().map_err(|_| EnergyError::CoeffParse {
                    line,
                    msg: format!("bad {}: {:?}", what, tok),
                })
            };
            match toks[0] {
                "BETA" if toks.len() == 2 => beta = Some(parse(toks[1], "beta")?),
                "POLICY" if toks.len() == 7 => {
                    let mut altitude = None;
                    let mut up = None;
                    let mut down = None;
                    for pair in toks[1..].chunks(2) {
                        let v = parse(pair[1], pair[0])?;
                        match pair[0] {
                            "altitude" => altitude = Some(v),
                            "takeoff_speed" => up = Some(v),
                            "landing_speed" => down = Some(v),
                            other => {
                                return Err(EnergyError::CoeffParse {
                                    line,
                                    msg: format!("unknown policy field {:?}", other),
                                })
                            }
                        }
                    }
                    policy = Some(PhaseTimePolicy {
                        altitude: altitude.ok_or(EnergyError::CoeffParse { line, msg: "missing altitude".into() })?,
                        takeoff_speed: up.ok_or(EnergyError::CoeffParse { line, msg: "missing takeoff_speed".into() })?,
                        landing_speed: down.ok_or(EnergyError::CoeffParse { line, msg: "missing landing_speed".into() })?,
                    });
                }
                "PHASE" if toks.len() == 16 => {
                    let idx = PHASE_NAMES
                        .iter()
                        .position(|&n| n == toks[1])
                        .ok_or(EnergyError::CoeffParse { line, msg: format!("unknown phase {:?}", toks[1]) })?;
                    let mut a = [0.0; 14];
                    for (j, tok) in toks[2..].iter().enumerate() {
                        a[j] = parse(tok, "coefficient")?;
                    }
                    phases[idx] = Some(PhaseCoeffs { a });
                }
                other => {
                    return Err(EnergyError::CoeffParse {
                        line,
                        msg: format!("unknown or malformed record {:?}", other),
                    })
                }
            }
        }
        let beta = beta.ok_or(EnergyError::BadCoefficients("missing BETA".into()))?;
        let policy = policy.ok_or(EnergyError::BadCoefficients("missing POLICY".into()))?;
        let mut out = [PhaseCoeffs { a: [0.0; 14] }; 4];
        for (i, p) in phases.into_iter().enumerate() {
            out[i] = p.ok_or(EnergyError::BadCoefficients(format!("missing PHASE {}", PHASE_NAMES[i])))?;
        }
        if beta <= 0.0 {
            return Err(EnergyError::BadCoefficients("beta must be positive".into()));
        }
        Ok(PhaseModel { phases: out, frame_weight: beta, policy })
    }

    pub fn coeff_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("BETA {}\n", self.frame_weight));
        s.push_str(&format!(
            "POLICY altitude {} takeoff_speed {} landing_speed {}\n",
            self.policy.altitude, self.policy.takeoff_speed, self.policy.landing_speed
        ));
        for (i, name) in PHASE_NAMES.iter().enumerate() {
            s.push_str(&format!("PHASE {}", name));
            for v in self.phases[i].a {
                s.push_str(&format!(" {}", v));
            }
            s.push('\n');
        }
        s
    }

    /// Draws a physically shaped coefficient set. The coefficients follow
    /// the usual rotor-power structure (air density, speeds, rotor layout),
    /// which keeps the implicit equation single-rooted.
    pub fn sample_physical<R: Rng>(rng: &mut R) -> PhaseModel {
        let g = 9.81;
        let rho = rng.gen_range(0.9..1.3);
        let area = rng.gen_range(0.1..0.6);
        let c_air = rng.gen_range(0.5..1.5);
        let p_int = rng.gen_range(0.0..30.0);
        let kappa = rng.gen_range(1.0..1.2);
        let p_climb = rng.gen_range(0.0..60.0);
        let c_bd = rng.gen_range(0.01..0.08);
        let n_rotor = [4.0, 6.0, 8.0][rng.gen_range(0..3usize)];
        let n_blade = [2.0, 3.0][rng.gen_range(0..2usize)];
        let radius = rng.gen_range(0.1..0.4);
        let chord = rng.gen_range(0.01..0.05);
        let c_lift: f64 = rng.gen_range(0.4..1.2);
        let beta = rng.gen_range(1.0..8.0);

        let mut phases = [PhaseCoeffs { a: [0.0; 14] }; 4];
        for (idx, phase) in phases.iter_mut().enumerate() {
            let (v, gamma): (f64, f64) = match idx {
                PHASE_TAKEOFF => (rng.gen_range(2.0..8.0), rng.gen_range(0.1..0.4)),
                PHASE_LEVEL => (rng.gen_range(8.0..20.0), 0.0),
                PHASE_HOVER => (0.0, 0.0),
                _ => (rng.gen_range(2.0..8.0), -rng.gen_range(0.1..0.4)),
            };
            let tan_g = gamma.tan();
            let cos_g = gamma.cos();
            let a = &mut phase.a;
            a[0] = 0.5 * rho * v.powi(3) * area * c_air + p_int;
            a[1] = kappa;
            a[2] = 0.25 * rho * rho * v.powi(4) * area * area * c_air * c_air
                + rho * v * v * area * c_air * p_climb;
            a[3] = g * g;
            a[4] = 27.0 * c_bd * (g.powi(3)).sqrt()
                / (chord * n_rotor * n_blade * rho * radius * c_lift.powi(3)).sqrt();
            a[5] = v * v * c_bd * (6.0 * g * rho * radius * n_rotor * n_blade * chord).sqrt()
                / (4.0 * c_lift.sqrt());
            a[6] = g * v * gamma.sin();
            a[7] = 1.0 / (2.0 * rho * radius * radius * std::f64::consts::PI * n_rotor);
            a[8] = v * v;
            a[9] = -rho * v.powi(3) * area * c_air / (g * cos_g);
            a[10] = -2.0 * v * tan_g;
            a[11] = 1.0 + tan_g * tan_g;
            a[12] = (0.5 * rho * v * v * area * c_air / (g * cos_g)).powi(2);
            a[13] = rho * v * v * area * c_air * tan_g;
        }
        PhaseModel {
            phases,
            frame_weight: beta,
            policy: PhaseTimePolicy {
                altitude: rng.gen_range(10.0..40.0),
                takeoff_speed: rng.gen_range(1.0..4.0),
                landing_speed: rng.gen_range(1.0..4.0),
            },
        }
    }
}

impl EnergyModel for PhaseModel {
    fn arc_energy(&self, payload: f64, leg: &LegGeometry) -> f64 {
        // Coefficients are checked when the model is constructed; a root
        // failure here indicates inconsistent parameters.
        self.leg_energy(payload, leg).expect("phase energy evaluation failed")
    }

    fn hover_power(&self, payload: f64) -> f64 {
        self.phase_power(payload, PHASE_HOVER).expect("hover power evaluation failed")
    }

    fn supports_per_phase(&self) -> bool {
        true
    }

    fn time_proportional(&self) -> bool {
        // Phase splits shift with leg duration, so the single-rate shape
        // is not declared; monotonicity gets verified empirically.
        false
    }
}

/// How leg durations react to payload.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlightPolicy {
    /// Durations come straight from the travel tables.
    PayloadIndependent,
    /// Heavier drones fly slower: `t = base * (1 + per_kg * payload)`.
    LinearSlowdown { per_kg: f64 },
}

impl FlightPolicy {
    pub fn duration(&self, base_time: f64, payload: f64) -> f64 {
        match self {
            FlightPolicy::PayloadIndependent => base_time,
            FlightPolicy::LinearSlowdown { per_kg } => base_time * (1.0 + per_kg * payload),
        }
    }

    pub fn is_load_dependent(&self) -> bool {
        !matches!(self, FlightPolicy::PayloadIndependent)
    }
}

/// Leg geometry for travelling between cluster locations `i -> j` with the
/// given payload under a flight policy.
pub fn leg_between(
    tables: &TravelTables,
    instance: &Instance,
    i: usize,
    j: usize,
    payload: f64,
    policy: FlightPolicy,
) -> LegGeometry {
    let base = tables.time[i][j];
    LegGeometry {
        distance: base * instance.speed,
        duration: policy.duration(base, payload),
    }
}

/// Energy of a whole trip `depot -> trip[0] -> ... -> depot`.
///
/// The leg leaving the depot carries the full load; each request is
/// unloaded on arrival, so the leg departing `trip[i]` carries the demands
/// of the remaining stops and the return leg flies empty.
pub fn trip_energy(
    model: &dyn EnergyModel,
    trip: &[usize],
    instance: &Instance,
    tables: &TravelTables,
    policy: FlightPolicy,
) -> f64 {
    if trip.is_empty() {
        return 0.0;
    }
    let n = instance.n();
    let mut remaining: f64 = trip.iter().map(|&r| instance.demand(r)).sum();
    let mut total = 0.0;
    let mut at = 0usize;
    for &r in trip {
        let leg = leg_between(tables, instance, at, r, remaining, policy);
        total += model.arc_energy(remaining, &leg);
        remaining -= instance.demand(r);
        at = r;
    }
    let leg = leg_between(tables, instance, at, n + 1, 0.0, policy);
    total += model.arc_energy(0.0, &leg);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Instance, ObjectiveSetting, Request};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t2() -> Instance {
        Instance {
            requests: vec![
                Request { id: 1, x: 0.0, y: 3.0, demand: 1.0, open: 0.0, close: 1000.0 },
                Request { id: 2, x: 4.0, y: 0.0, demand: 1.0, open: 0.0, close: 1000.0 },
            ],
            depot: (0.0, 0.0),
            depot_open: 0.0,
            depot_close: 1000.0,
            drone_count: 2,
            capacity: 2.0,
            battery: 100.0,
            speed: 1.0,
            cost_per_distance: 1.0,
            energy_cost: 1.0,
            objective: ObjectiveSetting::Both,
            time_overrides: Vec::new(),
            cost_overrides: Vec::new(),
            energy_config: None,
        }
    }

    fn hover_only_model() -> PhaseModel {
        // v = 0 in every phase makes each phase obey the hover reduction.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut m = PhaseModel::sample_physical(&mut rng);
        for i in 0..4 {
            let a5 = m.phases[i].a[4];
            let a4 = m.phases[i].a[3];
            let a8 = m.phases[i].a[7];
            let a2 = m.phases[i].a[1];
            m.phases[i].a = [0.0; 14];
            m.phases[i].a[1] = a2;
            m.phases[i].a[3] = a4;
            m.phases[i].a[4] = a5;
            m.phases[i].a[7] = a8;
            m.phases[i].a[11] = 1.0;
        }
        m
    }

    #[test]
    fn linear_hand_values() {
        let m = LinearModel::new(1.0, 3.0);
        let leg = LegGeometry::from_time(2.0, 1.0);
        assert_eq!(m.arc_energy(0.5, &leg), 7.0);
        assert_eq!(m.arc_energy(0.5, &LegGeometry::from_time(0.0, 1.0)), 0.0);
        let payload_free = LinearModel::new(0.0, 4.5);
        assert_eq!(payload_free.arc_energy(123.0, &LegGeometry::from_time(1.0, 1.0)), 4.5);
    }

    #[test]
    fn convex_hand_values() {
        let m = ConvexModel::new(1.0, 3.0);
        assert!((m.arc_energy(1.0, &LegGeometry::from_time(1.0, 1.0)) - 8.0).abs() < 1e-12);
        assert_eq!(m.arc_energy(1.0, &LegGeometry::from_time(0.0, 1.0)), 0.0);
    }

    #[test]
    fn convex_second_difference_nonnegative() {
        let m = ConvexModel::new(0.7, 2.0);
        let leg = LegGeometry::from_time(3.0, 1.0);
        let h = 0.05;
        for k in 0..200 {
            let w = k as f64 * h;
            let d2 = m.arc_energy(w + 2.0 * h, &leg) - 2.0 * m.arc_energy(w + h, &leg)
                + m.arc_energy(w, &leg);
            assert!(d2 >= -1e-9, "w={} d2={}", w, d2);
        }
    }

    #[test]
    fn hover_power_values() {
        assert_eq!(LinearModel::new(1.0, 3.0).hover_power(2.0), 5.0);
        assert!((ConvexModel::new(1.0, 3.0).hover_power(1.0) - 8.0).abs() < 1e-12);
        // nondecreasing sweep
        let m = ConvexModel::new(0.3, 1.0);
        let mut last = 0.0;
        for k in 0..100 {
            let p = m.hover_power(k as f64 * 0.1);
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn hover_reduction_analytic() {
        let m = hover_only_model();
        let bw = m.frame_weight;
        for phase in 0..4 {
            let x = solve_induced_velocity(&m, phase, 0.7).unwrap();
            let a = &m.phases[phase].a;
            let expect = (a[7] * a[3].sqrt() * (bw + 0.7)).sqrt();
            assert!(
                (x - expect).abs() <= 1e-9 * expect.max(1.0),
                "phase {}: {} vs {}",
                phase,
                x,
                expect
            );
        }
    }

    #[test]
    fn hover_root_monotone_in_payload() {
        let m = hover_only_model();
        let mut last = 0.0;
        for k in 0..50 {
            let x = solve_induced_velocity(&m, PHASE_HOVER, k as f64 * 0.2).unwrap();
            assert!(x > last);
            last = x;
        }
    }

    #[test]
    fn generic_roots_have_small_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let m = PhaseModel::sample_physical(&mut rng);
            for phase in 0..4 {
                let w = rng.gen_range(0.0..5.0);
                let x = solve_induced_velocity(&m, phase, w).unwrap();
                let (lhs, rhs) = phi_equation_sides(&m, phase, w, x);
                assert!(
                    (lhs - rhs).abs() <= 1e-10 * lhs.max(1.0),
                    "phase {} residual {}",
                    phase,
                    (lhs - rhs).abs()
                );
            }
        }
    }

    #[test]
    fn bisection_agrees_with_secant() {
        // Independent check of the level-flight root through a secant
        // iteration on the same residual.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = PhaseModel::sample_physical(&mut rng);
        let w = 1.3;
        let x = solve_induced_velocity(&m, PHASE_LEVEL, w).unwrap();
        let g = |x: f64| {
            let (l, r) = phi_equation_sides(&m, PHASE_LEVEL, w, x);
            r - l
        };
        let (mut x0, mut x1) = (x * 0.5, x * 2.0);
        for _ in 0..80 {
            let (g0, g1) = (g(x0), g(x1));
            if (g1 - g0).abs() < 1e-300 {
                break;
            }
            let x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
            x0 = x1;
            x1 = x2.max(0.0);
        }
        assert!((x - x1).abs() <= 1e-8 * x.max(1.0), "bisection {} vs secant {}", x, x1);
    }

    #[test]
    fn phase_energy_term_isolation() {
        let mut m = hover_only_model();
        for i in 0..4 {
            m.phases[i].a = [0.0; 14];
            m.phases[i].a[6] = 2.5; // only the linear-weight term
            m.phases[i].a[11] = 1.0;
        }
        // All time in one phase: energy = t * a7 * (beta + w).
        m.policy = PhaseTimePolicy { altitude: 0.0, takeoff_speed: 1.0, landing_speed: 1.0 };
        let leg = LegGeometry::from_time(4.0, 1.0);
        let w = 0.9;
        let e = m.leg_energy(w, &leg).unwrap();
        assert!((e - 4.0 * 2.5 * (m.frame_weight + w)).abs() < 1e-9);
    }

    #[test]
    fn phase_energy_reduces_to_convex_shape() {
        // Zeroing a1, a2, a6, a7 leaves t * a5 * (beta + w)^{3/2}.
        let mut m = hover_only_model();
        let alpha = 0.8;
        for i in 0..4 {
            m.phases[i].a = [0.0; 14];
            m.phases[i].a[4] = alpha;
            m.phases[i].a[11] = 1.0;
        }
        m.policy = PhaseTimePolicy { altitude: 0.0, takeoff_speed: 1.0, landing_speed: 1.0 };
        let convex = ConvexModel::new(alpha, m.frame_weight);
        for w in [0.0, 0.4, 1.7] {
            let leg = LegGeometry::from_time(2.5, 1.0);
            assert!((m.leg_energy(w, &leg).unwrap() - convex.arc_energy(w, &leg)).abs() < 1e-9);
        }
    }

    #[test]
    fn phase_energy_additive_over_phases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = PhaseModel::sample_physical(&mut rng);
        let leg = LegGeometry::from_time(60.0, 10.0);
        let times = m.policy.split(&leg);
        assert!((times.iter().sum::<f64>() - leg.duration).abs() < 1e-9);
        let w = 2.0;
        let full = m.leg_energy(w, &leg).unwrap();
        let mut sum = 0.0;
        for (phase, &t) in times.iter().enumerate() {
            if t > 0.0 {
                sum += t * m.phase_power(w, phase).unwrap();
            }
        }
        assert!((full - sum).abs() < 1e-9);
    }

    #[test]
    fn policy_clamps_short_legs() {
        let policy = PhaseTimePolicy { altitude: 30.0, takeoff_speed: 3.0, landing_speed: 3.0 };
        let split = policy.split(&LegGeometry::from_time(10.0, 1.0));
        assert!((split.iter().sum::<f64>() - 10.0).abs() < 1e-12);
        assert!(split.iter().all(|&t| t >= 0.0));
        assert_eq!(split[1], 0.0);
    }

    #[test]
    fn trip_energy_hand_computed() {
        let inst = t2();
        let tables = crate::instance::travel_tables(&inst);
        let m = LinearModel::new(1.0, 1.0);
        let e12 = trip_energy(&m, &[1, 2], &inst, &tables, FlightPolicy::PayloadIndependent);
        assert!((e12 - 23.0).abs() < 1e-9, "{}", e12);
        let e21 = trip_energy(&m, &[2, 1], &inst, &tables, FlightPolicy::PayloadIndependent);
        assert!((e21 - 25.0).abs() < 1e-9, "{}", e21);
        assert_eq!(trip_energy(&m, &[], &inst, &tables, FlightPolicy::PayloadIndependent), 0.0);
    }

    #[test]
    fn coeff_file_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = PhaseModel::sample_physical(&mut rng);
        let text = m.coeff_text();
        let back = PhaseModel::from_coeff_text(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn monotone_in_payload_and_time() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let models: Vec<Box<dyn EnergyModel>> = vec![
            Box::new(LinearModel::new(0.9, 1.1)),
            Box::new(ConvexModel::new(0.5, 2.0)),
            Box::new(PhaseModel::sample_physical(&mut rng)),
        ];
        for m in &models {
            let mut last = -1.0;
            for k in 0..30 {
                let e = m.arc_energy(k as f64 * 0.3, &LegGeometry::from_time(40.0, 8.0));
                assert!(e >= last - 1e-9);
                last = e;
            }
            let mut last = -1.0;
            for k in 0..30 {
                let e = m.arc_energy(1.5, &LegGeometry::from_time(k as f64 * 3.0, 8.0));
                assert!(e >= last - 1e-9);
                last = e;
            }
        }
    }
}
