use std::f64::consts::LN_2;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// Unit of an entropy value, i.e. the constant `k` in `−k Σ p ln p`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum EntropyUnit {
    /// `k = 1`.
    #[default]
    Nats,
    /// `k = 1 / ln 2`.
    Bits,
    /// Any other positive `k`, e.g. Boltzmann's constant in J/K.
    Scaled(f64),
}

impl EntropyUnit {
    pub fn scaled(k: f64) -> Result<Self> {
        if k > 0.0 && k.is_finite() {
            Ok(Self::Scaled(k))
        } else {
            Err(Error::InvalidK(k))
        }
    }

    pub fn k(self) -> f64 {
        match self {
            Self::Nats => 1.0,
            Self::Bits => 1.0 / LN_2,
            Self::Scaled(k) => k,
        }
    }

    /// Converts a value in nats into this unit.
    ///
    /// Bits divide by `ln 2` rather than multiplying by `1 / ln 2`, which keeps
    /// `ln 2` nats at exactly one bit.
    /// Negative zero is mapped to zero.
    pub fn from_nats(self, nats: f64) -> f64 {
        let v = match self {
            Self::Nats => nats,
            Self::Bits => nats / LN_2,
            Self::Scaled(k) => k * nats,
        };
        v + 0.0
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Nats => "nats",
            Self::Bits => "bits",
            Self::Scaled(_) => "custom",
        }
    }

    pub(crate) fn check(self) -> Result<Self> {
        match self {
            Self::Scaled(k) => Self::scaled(k),
            other => Ok(other),
        }
    }
}

/// An entropy together with the unit it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub unit: EntropyUnit,
}

impl EntropyValue {
    pub fn from_nats(nats: f64, unit: EntropyUnit) -> Self {
        Self {
            value: unit.from_nats(nats),
            unit,
        }
    }

    pub fn k(&self) -> f64 {
        self.unit.k()
    }
}

impl Serialize for EntropyValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let custom = matches!(self.unit, EntropyUnit::Scaled(_));
        let mut s = serializer.serialize_struct("EntropyValue", if custom { 3 } else { 2 })?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("unit", self.unit.name())?;
        if custom {
            s.serialize_field("k", &self.unit.k())?;
        }
        s.end()
    }
}
