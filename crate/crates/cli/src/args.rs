//! Value types accepted on the command line and in config files.

use std::fmt;
use std::str::FromStr;

use udw_core::C64;

/// Largest number of points a single grid may hold.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: '{s}'"))?;
    if !v.is_finite() {
        return Err(format!("not a finite number: '{s}'"));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// `start:stop:count[:log]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        let mut out: Vec<f64> = (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect();
        // pin the end points exactly
        out[0] = self.start;
        out[self.count - 1] = self.stop;
        out
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("grid '{s}' is not start:stop:count[:log]"));
        }
        let start = parse_f64(parts[0])?;
        let stop = parse_f64(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("grid count '{}' is not a positive integer", parts[2]))?;
        if count == 0 || count > MAX_GRID_POINTS {
            return Err(format!("grid count must be in 1..={MAX_GRID_POINTS}, got {count}"));
        }
        let scale = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(other) => return Err(format!("unknown grid scale '{other}'")),
        };
        if scale == Scale::Log && !(start > 0.0 && stop > 0.0) {
            return Err("log grids need positive end points".into());
        }
        Ok(Self {
            start,
            stop,
            count,
            scale,
        })
    }
}

/// Comma separated list of numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberList(pub Vec<f64>);

impl FromStr for NumberList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(parse_f64)
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(values))
    }
}

impl NumberList {
    pub fn single(&self, name: &str) -> anyhow::Result<f64> {
        match self.0.as_slice() {
            [v] => Ok(*v),
            _ => Err(invalid(format!("--{name} takes a single value here"))),
        }
    }
}

/// Monopole axis: `x`, `y`, `z` or a vector `nx,ny,nz` (normalized).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis(pub [f64; 3]);

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "x" | "X" => return Ok(Self([1.0, 0.0, 0.0])),
            "y" | "Y" => return Ok(Self([0.0, 1.0, 0.0])),
            "z" | "Z" => return Ok(Self([0.0, 0.0, 1.0])),
            _ => {}
        }
        let v = Vector3::from_str(s)?.0;
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n < 1e-12 {
            return Err("axis must be non-zero".into());
        }
        Ok(Self([v[0] / n, v[1] / n, v[2] / n]))
    }
}

/// Three comma separated components, e.g. a Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector3(pub [f64; 3]);

impl FromStr for Vector3 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = NumberList::from_str(s)?.0;
        match v.as_slice() {
            [x, y, z] => Ok(Self([*x, *y, *z])),
            _ => Err(format!("expected three components, got '{s}'")),
        }
    }
}

/// `re` or `re,im`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Complex(pub C64);

impl FromStr for Complex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = NumberList::from_str(s)?.0;
        match v.as_slice() {
            [re] => Ok(Self(C64::new(*re, 0.0))),
            [re, im] => Ok(Self(C64::new(*re, *im))),
            _ => Err(format!("expected 're' or 're,im', got '{s}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_grid_hits_end_points() {
        let g: Grid = "0.5:1:3".parse().unwrap();
        assert_eq!(g.points(), vec![0.5, 0.75, 1.0]);
        let g: Grid = "2:2:1".parse().unwrap();
        assert_eq!(g.points(), vec![2.0]);
    }

    #[test]
    fn log_grid() {
        let g: Grid = "0.01:100:5:log".parse().unwrap();
        let p = g.points();
        assert_eq!(p[0], 0.01);
        assert_eq!(p[4], 100.0);
        assert!((p[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_grids() {
        for s in ["", "1:2", "1:2:0", "1:2:x", "0:1:5:log", "1:2:3:cubic", "1:2:2000000"] {
            assert!(s.parse::<Grid>().is_err(), "{s}");
        }
    }

    #[test]
    fn axes() {
        assert_eq!("y".parse::<Axis>().unwrap().0, [0.0, 1.0, 0.0]);
        let a = "3,0,4".parse::<Axis>().unwrap().0;
        assert!((a[0] - 0.6).abs() < 1e-15 && (a[2] - 0.8).abs() < 1e-15);
        assert!("0,0,0".parse::<Axis>().is_err());
        assert!("1,2".parse::<Axis>().is_err());
    }

    #[test]
    fn complex_values() {
        assert_eq!("0.5".parse::<Complex>().unwrap().0, C64::new(0.5, 0.0));
        assert_eq!("0.1,-0.2".parse::<Complex>().unwrap().0, C64::new(0.1, -0.2));
    }
}
