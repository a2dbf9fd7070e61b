//! Problem instances: domain types, a seeded generator, the line-oriented
//! text codec and derived travel tables.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// A delivery request: location, demand weight and service time window.
#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    /// 1-based id; ids are unique and contiguous.
    pub id: usize,
    pub x: f64,
    pub y: f64,
    /// Demand weight in kg, strictly positive.
    pub demand: f64,
    /// Earliest permitted service time in minutes.
    pub open: f64,
    /// Latest permitted service time in minutes.
    pub close: f64,
}

/// Which cost terms the objective carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveSetting {
    /// Transport cost only (energy price forced to zero).
    Transport,
    /// Energy cost only (arc costs forced to zero).
    Energy,
    /// Both terms.
    Both,
}

impl ObjectiveSetting {
    pub fn code(&self) -> &'static str {
        match self {
            ObjectiveSetting::Transport => "R",
            ObjectiveSetting::Energy => "E",
            ObjectiveSetting::Both => "RE",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "R" => Some(ObjectiveSetting::Transport),
            "E" => Some(ObjectiveSetting::Energy),
            "RE" | "R+E" => Some(ObjectiveSetting::Both),
            _ => None,
        }
    }
}

impl fmt::Display for ObjectiveSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Energy model selection carried alongside an instance file.
#[derive(Debug, Clone, PartialEq)]
pub enum EnergyConfig {
    Linear { per_kg_minute: f64, base: f64 },
    Convex { alpha: f64, beta: f64 },
    Phase { coeff_path: String },
}

/// A full DRP instance. Start and end depots share one location.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub requests: Vec<Request>,
    pub depot: (f64, f64),
    /// Depot window: earliest departure and latest return, minutes.
    pub depot_open: f64,
    pub depot_close: f64,
    /// Fleet size N.
    pub drone_count: usize,
    /// Payload capacity Q in kg.
    pub capacity: f64,
    /// Battery capacity M in energy units.
    pub battery: f64,
    /// Cruise speed in distance units per minute.
    pub speed: f64,
    pub cost_per_distance: f64,
    /// Energy price per energy unit.
    pub energy_cost: f64,
    pub objective: ObjectiveSetting,
    /// Explicit travel-time overrides `(i, j, t)` on cluster locations.
    pub time_overrides: Vec<(usize, usize, f64)>,
    pub cost_overrides: Vec<(usize, usize, f64)>,
    pub energy_config: Option<EnergyConfig>,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Instance {
    pub fn n(&self) -> usize {
        self.requests.len()
    }

    /// Effective arc-cost multiplier after the objective setting is applied.
    pub fn effective_cost_per_distance(&self) -> f64 {
        match self.objective {
            ObjectiveSetting::Energy => 0.0,
            _ => self.cost_per_distance,
        }
    }

    /// Effective energy price after the objective setting is applied.
    pub fn effective_energy_cost(&self) -> f64 {
        match self.objective {
            ObjectiveSetting::Transport => 0.0,
            _ => self.energy_cost,
        }
    }

    /// Checks structural invariants; returns the first violation found.
    pub fn check(&self) -> Result<(), InstanceError> {
        if self.drone_count < 1 {
            return Err(InstanceError::Config("drone count must be >= 1".into()));
        }
        if !(self.capacity > 0.0) {
            return Err(InstanceError::Config("capacity must be positive".into()));
        }
        if !(self.battery > 0.0) {
            return Err(InstanceError::Config("battery must be positive".into()));
        }
        if !(self.speed > 0.0) {
            return Err(InstanceError::Config("speed must be positive".into()));
        }
        if self.depot_open > self.depot_close {
            return Err(InstanceError::Config("depot window is empty".into()));
        }
        for (k, r) in self.requests.iter().enumerate() {
            if r.id != k + 1 {
                return Err(InstanceError::Config(format!(
                    "request ids must be contiguous from 1; found {} at position {}",
                    r.id,
                    k + 1
                )));
            }
            if !(r.demand > 0.0) {
                return Err(InstanceError::Config(format!(
                    "request {} has non-positive demand",
                    r.id
                )));
            }
            if r.open > r.close {
                return Err(InstanceError::Config(format!("request {} window is empty", r.id)));
            }
        }
        Ok(())
    }

    /// Location of cluster index `i` (0 and n+1 are the depot, 1..=n requests).
    pub fn location(&self, i: usize) -> (f64, f64) {
        if i == 0 || i == self.n() + 1 {
            self.depot
        } else {
            let r = &self.requests[i - 1];
            (r.x, r.y)
        }
    }

    /// Window of cluster index `i`; depot clusters use the depot window.
    pub fn window(&self, i: usize) -> (f64, f64) {
        if i == 0 || i == self.n() + 1 {
            (self.depot_open, self.depot_close)
        } else {
            let r = &self.requests[i - 1];
            (r.open, r.close)
        }
    }

    pub fn demand(&self, request_id: usize) -> f64 {
        self.requests[request_id - 1].demand
    }
}

/// Travel time and transport cost between all cluster locations 0..=n+1.
#[derive(Debug, Clone)]
pub struct TravelTables {
    pub n: usize,
    pub time: Vec<Vec<f64>>,
    pub cost: Vec<Vec<f64>>,
}

impl TravelTables {
    pub fn size(&self) -> usize {
        self.n + 2
    }

    pub fn distance(&self, i: usize, j: usize, speed: f64) -> f64 {
        self.time[i][j] * speed
    }
}

/// Euclidean tables: `t = dist/speed`, `c = dist * cost_per_distance`, with
/// any explicit overrides from the instance applied afterwards (symmetric).
pub fn travel_tables(instance: &Instance) -> TravelTables {
    let n = instance.n();
    let m = n + 2;
    let mut time = vec![vec![0.0; m]; m];
    let mut cost = vec![vec![0.0; m]; m];
    for i in 0..m {
        let (xi, yi) = instance.location(i);
        for j in 0..m {
            let (xj, yj) = instance.location(j);
            let d = ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt();
            time[i][j] = d / instance.speed;
            cost[i][j] = d * instance.cost_per_distance;
        }
    }
    for &(i, j, t) in &instance.time_overrides {
        time[i][j] = t;
        time[j][i] = t;
    }
    for &(i, j, c) in &instance.cost_overrides {
        cost[i][j] = c;
        cost[j][i] = c;
    }
    TravelTables { n, time, cost }
}

/// Where the depot sits in the service square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepotStyle {
    Corner,
    Center,
}

/// How request windows are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowStyle {
    /// Every window spans the whole planning horizon.
    Open,
    /// Window opens uniform in the early horizon with width in `[min,max]`
    /// minutes; closes are clamped so the request stays reachable.
    Uniform { width_min: f64, width_max: f64 },
}

/// Generator configuration; every numeric draw is quantized to six decimals
/// so generated instances round-trip through the text codec unchanged.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub n: usize,
    pub area_size: f64,
    pub depot_style: DepotStyle,
    pub window_style: WindowStyle,
    pub demand_range: (f64, f64),
    pub drone_count: usize,
    pub capacity: f64,
    pub battery: f64,
    pub speed: f64,
    pub cost_per_distance: f64,
    pub energy_cost: f64,
    pub objective: ObjectiveSetting,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            n: 10,
            area_size: 30.0,
            depot_style: DepotStyle::Corner,
            window_style: WindowStyle::Open,
            demand_range: (0.2, 0.5),
            drone_count: 2,
            capacity: 1.0,
            battery: 1.0e6,
            speed: 1.0,
            cost_per_distance: 1.0,
            energy_cost: 1.0,
            objective: ObjectiveSetting::Both,
        }
    }
}

fn quantize(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

/// Deterministically generates an instance from `(config, seed)`.
///
/// Requests are placed uniformly in the `area_size` square; the depot sits
/// at the lower-left corner or the center. The planning horizon is derived
/// from the geometry so every request is reachable within its window.
pub fn generate_instance(config: &GenConfig, seed: u64) -> Result<Instance, InstanceError> {
    if config.n < 1 {
        return Err(InstanceError::Config("n must be >= 1".into()));
    }
    if !(config.area_size > 0.0) {
        return Err(InstanceError::Config("area size must be positive".into()));
    }
    if !(config.demand_range.0 > 0.0) || config.demand_range.1 < config.demand_range.0 {
        return Err(InstanceError::Config("empty or non-positive demand range".into()));
    }
    if !(config.speed > 0.0) {
        return Err(InstanceError::Config("speed must be positive".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let depot = match config.depot_style {
        DepotStyle::Corner => (0.0, 0.0),
        DepotStyle::Center => (quantize(config.area_size / 2.0), quantize(config.area_size / 2.0)),
    };

    let mut placed = Vec::with_capacity(config.n);
    for id in 1..=config.n {
        let x = quantize(rng.gen_range(0.0..config.area_size));
        let y = quantize(rng.gen_range(0.0..config.area_size));
        let demand = quantize(rng.gen_range(config.demand_range.0..=config.demand_range.1));
        placed.push(Request { id, x, y, demand, open: 0.0, close: 0.0 });
    }

    // Horizon: enough slack for every request to be served by out-and-back
    // trips in sequence.
    let max_leg = placed
        .iter()
        .map(|r| ((r.x - depot.0).powi(2) + (r.y - depot.1).powi(2)).sqrt() / config.speed)
        .fold(0.0f64, f64::max);
    let horizon = quantize((2.0 * max_leg * config.n as f64).max(10.0) * 1.5);

    for r in placed.iter_mut() {
        let reach = ((r.x - depot.0).powi(2) + (r.y - depot.1).powi(2)).sqrt() / config.speed;
        match config.window_style {
            WindowStyle::Open => {
                r.open = 0.0;
                r.close = horizon;
            }
            WindowStyle::Uniform { width_min, width_max } => {
                let open = rng.gen_range(0.0..=horizon * 0.6);
                let width = rng.gen_range(width_min..=width_max);
                r.open = quantize(open);
                r.close = quantize((open + width).max(reach * 1.05 + 1.0));
            }
        }
    }

    let inst = Instance {
        requests: placed,
        depot,
        depot_open: 0.0,
        depot_close: horizon,
        drone_count: config.drone_count,
        capacity: config.capacity,
        battery: config.battery,
        speed: config.speed,
        cost_per_distance: config.cost_per_distance,
        energy_cost: config.energy_cost,
        objective: config.objective,
        time_overrides: Vec::new(),
        cost_overrides: Vec::new(),
        energy_config: None,
    };
    inst.check()?;
    Ok(inst)
}

fn fmt6(v: f64) -> String {
    format!("{:.6}", v)
}

/// Serializes an instance in the versioned line format.
pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str("DRP 1\n");
    out.push_str(&format!(
        "PARAMS {} {} {} {} {} {} {} {} {} obj={}\n",
        instance.n(),
        instance.drone_count,
        fmt6(instance.capacity),
        fmt6(instance.battery),
        fmt6(instance.speed),
        fmt6(instance.cost_per_distance),
        fmt6(instance.energy_cost),
        fmt6(instance.depot_open),
        fmt6(instance.depot_close),
        instance.objective.code(),
    ));
    out.push_str(&format!("DEPOT {} {}\n", fmt6(instance.depot.0), fmt6(instance.depot.1)));
    for r in &instance.requests {
        out.push_str(&format!(
            "REQ {} {} {} {} {} {}\n",
            r.id,
            fmt6(r.x),
            fmt6(r.y),
            fmt6(r.demand),
            fmt6(r.open),
            fmt6(r.close)
        ));
    }
    for &(i, j, t) in &instance.time_overrides {
        out.push_str(&format!("TIME {} {} {}\n", i, j, fmt6(t)));
    }
    for &(i, j, c) in &instance.cost_overrides {
        out.push_str(&format!("COST {} {} {}\n", i, j, fmt6(c)));
    }
    if let Some(cfg) = &instance.energy_config {
        match cfg {
            EnergyConfig::Linear { per_kg_minute, base } => {
                out.push_str(&format!("ENERGY linear {} {}\n", fmt6(*per_kg_minute), fmt6(*base)));
            }
            EnergyConfig::Convex { alpha, beta } => {
                out.push_str(&format!("ENERGY convex {} {}\n", fmt6(*alpha), fmt6(*beta)));
            }
            EnergyConfig::Phase { coeff_path } => {
                out.push_str(&format!("ENERGY phase {}\n", coeff_path));
            }
        }
    }
    out
}

struct LineParser<'a> {
    tokens: Vec<&'a str>,
    line: usize,
}

impl<'a> LineParser<'a> {
    fn take(&mut self, what: &str) -> Result<&'a str, InstanceError> {
        if self.tokens.is_empty() {
            return Err(InstanceError::Parse {
                line: self.line,
                msg: format!("missing {}", what),
            });
        }
        Ok(self.tokens.remove(0))
    }

    fn take_f64(&mut self, what: &str) -> Result<f64, InstanceError> {
        let tok = self.take(what)?;
        tok.parse::<f64>().map_err(|_| InstanceError::Parse {
            line: self.line,
            msg: format!("bad {}: {:?}", what, tok),
        })
    }

    fn take_usize(&mut self, what: &str) -> Result<usize, InstanceError> {
        let tok = self.take(what)?;
        tok.parse::<usize>().map_err(|_| InstanceError::Parse {
            line: self.line,
            msg: format!("bad {}: {:?}", what, tok),
        })
    }
}

/// Parses the text format produced by [`write_instance`].
pub fn read_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(InstanceError::Parse { line: 1, msg: "empty file".into() })?;
    if header != "DRP 1" {
        return Err(InstanceError::Parse { line: hline, msg: format!("bad header {:?}", header) });
    }

    let mut params: Option<(usize, Instance)> = None;
    let mut depot_seen = false;

    for (line, raw) in lines {
        let mut p = LineParser { tokens: raw.split_whitespace().collect(), line };
        let tag = p.take("record tag")?;
        match tag {
            "PARAMS" => {
                let n = p.take_usize("request count")?;
                let drones = p.take_usize("drone count")?;
                let capacity = p.take_f64("capacity")?;
                let battery = p.take_f64("battery")?;
                let speed = p.take_f64("speed")?;
                let cost_per_distance = p.take_f64("cost per distance")?;
                let energy_cost = p.take_f64("energy cost")?;
                let depot_open = p.take_f64("depot open")?;
                let depot_close = p.take_f64("depot close")?;
                let obj_tok = p.take("objective")?;
                let obj = obj_tok
                    .strip_prefix("obj=")
                    .and_then(ObjectiveSetting::parse)
                    .ok_or(InstanceError::Parse {
                        line,
                        msg: format!("bad objective: {:?}", obj_tok),
                    })?;
                params = Some((
                    n,
                    Instance {
                        requests: Vec::new(),
                        depot: (0.0, 0.0),
                        depot_open,
                        depot_close,
                        drone_count: drones,
                        capacity,
                        battery,
                        speed,
                        cost_per_distance,
                        energy_cost,
                        objective: obj,
                        time_overrides: Vec::new(),
                        cost_overrides: Vec::new(),
                        energy_config: None,
                    },
                ));
            }
            "DEPOT" => {
                let inst = &mut params
                    .as_mut()
                    .ok_or(InstanceError::Parse { line, msg: "DEPOT before PARAMS".into() })?
                    .1;
                inst.depot = (p.take_f64("depot x")?, p.take_f64("depot y")?);
                depot_seen = true;
            }
            "REQ" => {
                let inst = &mut params
                    .as_mut()
                    .ok_or(InstanceError::Parse { line, msg: "REQ before PARAMS".into() })?
                    .1;
                let id = p.take_usize("request id")?;
                let x = p.take_f64("x")?;
                let y = p.take_f64("y")?;
                let demand = p.take_f64("demand")?;
                if demand < 0.0 {
                    return Err(InstanceError::Parse { line, msg: "negative demand".into() });
                }
                let open = p.take_f64("window open")?;
                let close = p.take_f64("window close")?;
                inst.requests.push(Request { id, x, y, demand, open, close });
            }
            "TIME" | "COST" => {
                let inst = &mut params
                    .as_mut()
                    .ok_or(InstanceError::Parse { line, msg: format!("{} before PARAMS", tag) })?
                    .1;
                let i = p.take_usize("from index")?;
                let j = p.take_usize("to index")?;
                let v = p.take_f64("value")?;
                if tag == "TIME" {
                    inst.time_overrides.push((i, j, v));
                } else {
                    inst.cost_overrides.push((i, j, v));
                }
            }
            "ENERGY" => {
                let inst = &mut params
                    .as_mut()
                    .ok_or(InstanceError::Parse { line, msg: "ENERGY before PARAMS".into() })?
                    .1;
                let kind = p.take("energy model kind")?;
                inst.energy_config = Some(match kind {
                    "linear" => EnergyConfig::Linear {
                        per_kg_minute: p.take_f64("per-kg rate")?,
                        base: p.take_f64("base rate")?,
                    },
                    "convex" => EnergyConfig::Convex {
                        alpha: p.take_f64("alpha")?,
                        beta: p.take_f64("beta")?,
                    },
                    "phase" => EnergyConfig::Phase { coeff_path: p.take("coefficient path")?.to_string() },
                    other => {
                        return Err(InstanceError::Parse {
                            line,
                            msg: format!("unknown energy model {:?}", other),
                        })
                    }
                });
            }
            other => {
                return Err(InstanceError::Parse { line, msg: format!("unknown record {:?}", other) });
            }
        }
    }

    let (n, inst) = params.ok_or(InstanceError::Parse { line: 2, msg: "missing PARAMS".into() })?;
    if !depot_seen {
        return Err(InstanceError::Parse { line: 2, msg: "missing DEPOT".into() });
    }
    if inst.requests.len() != n {
        return Err(InstanceError::Parse {
            line: 2,
            msg: format!("expected {} REQ lines, found {}", n, inst.requests.len()),
        });
    }
    inst.check().map_err(|e| InstanceError::Parse { line: 2, msg: e.to_string() })?;
    Ok(inst)
}

pub fn read_instance_file(path: &Path) -> Result<Instance, InstanceError> {
    let text = std::fs::read_to_string(path)?;
    read_instance(&text)
}

pub fn write_instance_file(instance: &Instance, path: &Path) -> Result<(), InstanceError> {
    std::fs::write(path, write_instance(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2_instance() -> Instance {
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

    #[test]
    fn corner_and_center_depots() {
        let cfg = GenConfig { n: 10, depot_style: DepotStyle::Corner, ..GenConfig::default() };
        let inst = generate_instance(&cfg, 7).unwrap();
        assert_eq!(inst.n(), 10);
        assert_eq!(inst.depot, (0.0, 0.0));

        let cfg = GenConfig { n: 10, depot_style: DepotStyle::Center, ..GenConfig::default() };
        let inst = generate_instance(&cfg, 7).unwrap();
        assert_eq!(inst.depot, (15.0, 15.0));
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig { n: 9, window_style: WindowStyle::Uniform { width_min: 30.0, width_max: 90.0 }, ..GenConfig::default() };
        let a = write_instance(&generate_instance(&cfg, 42).unwrap());
        let b = write_instance(&generate_instance(&cfg, 42).unwrap());
        assert_eq!(a, b);
        let c = write_instance(&generate_instance(&cfg, 43).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn bad_configs_rejected() {
        let cfg = GenConfig { area_size: 0.0, ..GenConfig::default() };
        assert!(matches!(generate_instance(&cfg, 1), Err(InstanceError::Config(_))));
        let cfg = GenConfig { demand_range: (0.5, 0.2), ..GenConfig::default() };
        assert!(matches!(generate_instance(&cfg, 1), Err(InstanceError::Config(_))));
    }

    #[test]
    fn codec_round_trip_identity() {
        let mut inst = t2_instance();
        inst.energy_config = Some(EnergyConfig::Linear { per_kg_minute: 1.0, base: 1.0 });
        inst.time_overrides.push((1, 2, 9.5));
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        assert_eq!(inst, back);
        assert_eq!(text, write_instance(&back));
    }

    #[test]
    fn generated_instances_round_trip() {
        for seed in 0..5 {
            let cfg = GenConfig {
                n: 6,
                window_style: WindowStyle::Uniform { width_min: 20.0, width_max: 60.0 },
                ..GenConfig::default()
            };
            let inst = generate_instance(&cfg, seed).unwrap();
            let text = write_instance(&inst);
            let back = read_instance(&text).unwrap();
            assert_eq!(inst, back, "seed {}", seed);
        }
    }

    #[test]
    fn missing_capacity_named() {
        let text = "DRP 1\nPARAMS 0 1\nDEPOT 0 0\n";
        let err = read_instance(text).unwrap_err();
        assert!(err.to_string().contains("missing capacity"), "{}", err);
    }

    #[test]
    fn negative_demand_named() {
        let text = "DRP 1\nPARAMS 1 1 1.0 10.0 1.0 1.0 1.0 0.0 100.0 obj=R\nDEPOT 0 0\nREQ 1 1.0 1.0 -1 0 10\n";
        let err = read_instance(text).unwrap_err();
        assert!(err.to_string().contains("negative demand"), "{}", err);
        assert!(err.to_string().contains("line 4"), "{}", err);
    }

    #[test]
    fn travel_tables_basics() {
        let inst = Instance {
            requests: vec![Request { id: 1, x: 3.0, y: 4.0, demand: 1.0, open: 0.0, close: 10.0 }],
            ..t2_instance()
        };
        let tt = travel_tables(&inst);
        assert_eq!(tt.time[0][1], 5.0);
        assert_eq!(tt.time[0][2], 0.0); // both depot copies share a location
        assert_eq!(tt.cost[1][0], 5.0);
    }

    #[test]
    fn tables_symmetric_on_random_instance() {
        let inst = generate_instance(&GenConfig { n: 8, ..GenConfig::default() }, 3).unwrap();
        let tt = travel_tables(&inst);
        for i in 0..tt.size() {
            assert_eq!(tt.time[i][i], 0.0);
            for j in 0..tt.size() {
                assert!((tt.time[i][j] - tt.time[j][i]).abs() < 1e-12);
                assert!(tt.time[i][j] >= 0.0 && tt.cost[i][j] >= 0.0);
            }
        }
    }

    #[test]
    fn tables_metric_on_random_instances() {
        for seed in 0..4 {
            let inst = generate_instance(&GenConfig { n: 7, ..GenConfig::default() }, seed).unwrap();
            let tt = travel_tables(&inst);
            let m = tt.size();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        assert!(tt.time[i][k] <= tt.time[i][j] + tt.time[j][k] + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn overrides_applied() {
        let mut inst = t2_instance();
        inst.time_overrides.push((1, 2, 99.0));
        let tt = travel_tables(&inst);
        assert_eq!(tt.time[1][2], 99.0);
        assert_eq!(tt.time[2][1], 99.0);
    }
}
