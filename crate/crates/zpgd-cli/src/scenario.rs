//! Flat key-value scenario files: one scenario per file, `key value` lines,
//! `#` comments, lists comma-separated.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Riemann,
    BoundaryRiemann,
    Interact,
    Viscous,
    Check,
    Converge,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "riemann" => Some(Mode::Riemann),
            "boundary-riemann" => Some(Mode::BoundaryRiemann),
            "interact" => Some(Mode::Interact),
            "viscous" => Some(Mode::Viscous),
            "check" => Some(Mode::Check),
            "converge" => Some(Mode::Converge),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Riemann => "riemann",
            Mode::BoundaryRiemann => "boundary-riemann",
            Mode::Interact => "interact",
            Mode::Viscous => "viscous",
            Mode::Check => "check",
            Mode::Converge => "converge",
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub u_b: Option<f64>,
    pub rho_b: Option<f64>,
    pub u_l: Option<f64>,
    pub rho_l: Option<f64>,
    pub u_r: Option<f64>,
    pub rho_r: Option<f64>,
    pub x0: Option<f64>,
    pub horizon: Option<f64>,
    pub epsilon: Option<f64>,
    pub epsilon_list: Option<Vec<f64>>,
    pub grid_nx: Option<usize>,
    pub grid_nt: Option<usize>,
    pub x_max: Option<f64>,
    pub profile_times: Vec<f64>,
    pub solver: Option<String>,
    pub out: Option<String>,
    pub mode: Option<Mode>,
}

fn parse_f64(key: &str, v: &str) -> Result<f64, ConfigError> {
    let x: f64 = v
        .parse()
        .map_err(|_| ConfigError(format!("field {key}: bad number {v:?}")))?;
    if !x.is_finite() {
        return Err(ConfigError(format!("field {key}: must be finite")));
    }
    Ok(x)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| ConfigError(format!("line {}: expected 'key value'", i + 1)))?;
            map.insert(key.to_string(), value.trim().to_string());
        }
        let mut sc = Scenario {
            u_b: None,
            rho_b: None,
            u_l: None,
            rho_l: None,
            u_r: None,
            rho_r: None,
            x0: None,
            horizon: None,
            epsilon: None,
            epsilon_list: None,
            grid_nx: None,
            grid_nt: None,
            x_max: None,
            profile_times: Vec::new(),
            solver: None,
            out: None,
            mode: None,
        };
        for (key, value) in &map {
            match key.as_str() {
                "u_b" => sc.u_b = Some(parse_f64(key, value)?),
                "rho_b" => sc.rho_b = Some(parse_f64(key, value)?),
                "u_L" => sc.u_l = Some(parse_f64(key, value)?),
                "rho_L" => sc.rho_l = Some(parse_f64(key, value)?),
                "u_R" => sc.u_r = Some(parse_f64(key, value)?),
                "rho_R" => sc.rho_r = Some(parse_f64(key, value)?),
                "x0" => sc.x0 = Some(parse_f64(key, value)?),
                "horizon" => sc.horizon = Some(parse_f64(key, value)?),
                "epsilon" => sc.epsilon = Some(parse_f64(key, value)?),
                "epsilon_list" => {
                    let list: Result<Vec<f64>, _> = value
                        .split(',')
                        .map(|tok| parse_f64(key, tok.trim()))
                        .collect();
                    sc.epsilon_list = Some(list?);
                }
                "grid_nx" => {
                    sc.grid_nx = Some(value.parse().map_err(|_| {
                        ConfigError(format!("field grid_nx: bad integer {value:?}"))
                    })?)
                }
                "grid_nt" => {
                    sc.grid_nt = Some(value.parse().map_err(|_| {
                        ConfigError(format!("field grid_nt: bad integer {value:?}"))
                    })?)
                }
                "x_max" => sc.x_max = Some(parse_f64(key, value)?),
                "profile_times" => {
                    let list: Result<Vec<f64>, _> = value
                        .split(',')
                        .map(|tok| parse_f64(key, tok.trim()))
                        .collect();
                    sc.profile_times = list?;
                }
                "solver" => sc.solver = Some(value.clone()),
                "out" => sc.out = Some(value.clone()),
                "mode" => {
                    sc.mode = Some(Mode::parse(value).ok_or_else(|| {
                        ConfigError(format!("field mode: unknown mode {value:?}"))
                    })?)
                }
                other => {
                    return Err(ConfigError(format!("unknown field {other:?}")));
                }
            }
        }
        Ok(sc)
    }

    fn need(&self, field: &str, v: Option<f64>) -> Result<f64, ConfigError> {
        v.ok_or_else(|| ConfigError(format!("missing required field {field}")))
    }

    fn density(&self, field: &str, v: Option<f64>) -> Result<f64, ConfigError> {
        let d = self.need(field, v)?;
        if d < 0.0 {
            return Err(ConfigError(format!("field {field}: density must be >= 0")));
        }
        Ok(d)
    }

    pub fn horizon(&self) -> Result<f64, ConfigError> {
        let h = self.need("horizon", self.horizon)?;
        if h <= 0.0 {
            return Err(ConfigError("field horizon: must be > 0".into()));
        }
        Ok(h)
    }

    /// `(u_L, rho_L, u_R, rho_R, x0)` for interior problems.
    pub fn interior(&self) -> Result<(f64, f64, f64, f64, f64), ConfigError> {
        Ok((
            self.need("u_L", self.u_l)?,
            self.density("rho_L", self.rho_l)?,
            self.need("u_R", self.u_r)?,
            self.density("rho_R", self.rho_r)?,
            self.need("x0", self.x0)?,
        ))
    }

    /// `(u_b, rho_b)` boundary pair.
    pub fn boundary(&self) -> Result<(f64, f64), ConfigError> {
        Ok((
            self.need("u_b", self.u_b)?,
            self.density("rho_b", self.rho_b)?,
        ))
    }

    pub fn epsilon(&self) -> Result<f64, ConfigError> {
        let e = self.need("epsilon", self.epsilon)?;
        if e <= 0.0 {
            return Err(ConfigError("field epsilon: must be > 0".into()));
        }
        Ok(e)
    }

    pub fn epsilon_list(&self) -> Result<Vec<f64>, ConfigError> {
        let list = self
            .epsilon_list
            .clone()
            .ok_or_else(|| ConfigError("missing required field epsilon_list".into()))?;
        if list.len() < 2 || list.windows(2).any(|w| w[1] >= w[0]) || list.iter().any(|&e| e <= 0.0)
        {
            return Err(ConfigError(
                "field epsilon_list: need a strictly decreasing positive list".into(),
            ));
        }
        Ok(list)
    }
}
