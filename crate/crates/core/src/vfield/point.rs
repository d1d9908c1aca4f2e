use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RgsError};

/// Named assignment of real values to group variables.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    coords: BTreeMap<String, f64>,
}

impl Point {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, f64)]) -> Self {
        let mut p = Self::new();
        for (k, v) in pairs {
            p.set(k.as_ref(), *v);
        }
        p
    }

    /// Builder-style insertion.
    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        match self.coords.get_mut(name) {
            Some(v) => *v = value,
            None => {
                self.coords.insert(name.to_string(), value);
            }
        }
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.coords.get(name).copied().ok_or_else(|| RgsError::MissingVariable(name.to_string()))
    }

    /// Value, or NaN when absent (for coefficient closures on validated points).
    pub fn val(&self, name: &str) -> f64 {
        self.coords.get(name).copied().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.coords.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.coords.keys().map(|k| k.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.coords.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.values().all(|v| v.is_finite())
    }

    /// Copy with `name` shifted by `delta`.
    pub fn shifted(&self, name: &str, delta: f64) -> Result<Self> {
        let v = self.get(name)?;
        let mut p = self.clone();
        p.set(name, v + delta);
        Ok(p)
    }

    /// Max-norm distance over the union of names (missing names count as NaN → ∞).
    pub fn max_distance(&self, other: &Point) -> f64 {
        let mut d: f64 = 0.0;
        for (k, v) in &self.coords {
            let w = other.coords.get(k).copied().unwrap_or(f64::NAN);
            let e = (v - w).abs();
            d = if e.is_nan() { f64::INFINITY } else { d.max(e) };
        }
        for k in other.coords.keys() {
            if !self.coords.contains_key(k) {
                return f64::INFINITY;
            }
        }
        d
    }

    /// Max-norm of the coordinate values.
    pub fn norm(&self) -> f64 {
        self.coords.values().fold(0.0, |m: f64, v| m.max(v.abs()))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}
