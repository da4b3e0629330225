//! Algebra instances: a lattice plus named operation tables and a profile tag.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Reserved operation symbols.
pub mod sym {
    /// `→` on the DLI side, `⇒` on the Kleene side.
    pub const IMP: &str = "imp";
    /// Weak implication `(a,b) ⇒ (d,e) = (a→d, a∧e)` carried by Kalman images of Heyting algebras.
    pub const IMP_FV: &str = "impfv";
    /// The general Kalman implication, carried alongside when `imp` is the weak one.
    pub const IMP_KI: &str = "impki";
    pub const NEG: &str = "neg";
    pub const CENTER: &str = "c";
    pub const G: &str = "G";
    pub const H: &str = "H";
    pub const F: &str = "F";
    pub const P: &str = "P";
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpTable {
    Constant(usize),
    Unary(Vec<usize>),
    /// Row-major `n x n`; row is the left argument.
    Binary(Vec<usize>),
}

impl OpTable {
    pub fn arity(&self) -> usize {
        match self {
            OpTable::Constant(_) => 0,
            OpTable::Unary(_) => 1,
            OpTable::Binary(_) => 2,
        }
    }

    pub fn entries(&self) -> &[usize] {
        match self {
            OpTable::Constant(c) => std::slice::from_ref(c),
            OpTable::Unary(t) | OpTable::Binary(t) => t,
        }
    }

    fn validate(&self, symbol: &str, n: usize) -> Result<()> {
        let expected = match self {
            OpTable::Constant(_) => 1,
            OpTable::Unary(_) => n,
            OpTable::Binary(_) => n * n,
        };
        let entries = self.entries();
        if entries.len() != expected {
            return Err(Error::InvalidTable {
                symbol: symbol.to_string(),
                reason: format!("expected {expected} entries, found {}", entries.len()),
            });
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= n) {
            return Err(Error::InvalidTable {
                symbol: symbol.to_string(),
                reason: format!("entry {bad} out of range for {n} elements"),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Distributive lattices with implication and their tense expansions.
    Dli,
    /// Kleene algebras with implication and their tense expansions.
    Kleene,
}

/// One identifier per variety handled by the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    Dl,
    Dli,
    DliPlus,
    Dli1Plus,
    Heyting,
    Tdli,
    Tdli0,
    Tdli01,
    THeyting,
    Kleene,
    CKleene,
    Ki,
    Tki,
    Tkic,
    Itkic1,
    NelsonItkic1,
    TNelson,
}

impl Profile {
    pub const ALL: [Profile; 17] = [
        Profile::Dl,
        Profile::Dli,
        Profile::DliPlus,
        Profile::Dli1Plus,
        Profile::Heyting,
        Profile::Tdli,
        Profile::Tdli0,
        Profile::Tdli01,
        Profile::THeyting,
        Profile::Kleene,
        Profile::CKleene,
        Profile::Ki,
        Profile::Tki,
        Profile::Tkic,
        Profile::Itkic1,
        Profile::NelsonItkic1,
        Profile::TNelson,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Profile::Dl => "dl",
            Profile::Dli => "dli",
            Profile::DliPlus => "dli+",
            Profile::Dli1Plus => "dli1+",
            Profile::Heyting => "heyting",
            Profile::Tdli => "tdli",
            Profile::Tdli0 => "tdli0",
            Profile::Tdli01 => "tdli01",
            Profile::THeyting => "theyting",
            Profile::Kleene => "kleene",
            Profile::CKleene => "ckleene",
            Profile::Ki => "ki",
            Profile::Tki => "tki",
            Profile::Tkic => "tkic",
            Profile::Itkic1 => "itkic1",
            Profile::NelsonItkic1 => "nelson-itkic1",
            Profile::TNelson => "tnelson",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Profile::Dl
            | Profile::Dli
            | Profile::DliPlus
            | Profile::Dli1Plus
            | Profile::Heyting
            | Profile::Tdli
            | Profile::Tdli0
            | Profile::Tdli01
            | Profile::THeyting => Family::Dli,
            _ => Family::Kleene,
        }
    }

    pub fn is_tense(self) -> bool {
        matches!(
            self,
            Profile::Tdli
                | Profile::Tdli0
                | Profile::Tdli01
                | Profile::THeyting
                | Profile::Tki
                | Profile::Tkic
                | Profile::Itkic1
                | Profile::TNelson
        )
    }

    /// Symbols that must be present for the profile to make sense.
    pub fn required_symbols(self) -> &'static [&'static str] {
        use sym::*;
        match self {
            Profile::Dl => &[],
            Profile::Dli | Profile::DliPlus | Profile::Dli1Plus | Profile::Heyting => &[IMP],
            Profile::Tdli | Profile::Tdli0 | Profile::Tdli01 | Profile::THeyting => {
                &[IMP, G, H, F, P]
            }
            Profile::Kleene => &[NEG],
            Profile::CKleene => &[NEG, CENTER],
            Profile::Ki | Profile::NelsonItkic1 => &[NEG, CENTER, IMP],
            Profile::Tki | Profile::Tkic | Profile::Itkic1 | Profile::TNelson => {
                &[NEG, CENTER, IMP, G, H]
            }
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Profile::ALL
            .iter()
            .copied()
            .find(|p| p.id() == s)
            .ok_or_else(|| format!("unknown profile `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    lattice: FiniteLattice,
    ops: BTreeMap<String, OpTable>,
    profile: Profile,
}

impl Algebra {
    pub fn new(name: impl Into<String>, lattice: FiniteLattice, profile: Profile) -> Self {
        Algebra {
            name: name.into(),
            lattice,
            ops: BTreeMap::new(),
            profile,
        }
    }

    /// Adds (or replaces) an operation after validating its shape and range.
    pub fn with_op(mut self, symbol: impl Into<String>, table: OpTable) -> Result<Self> {
        self.set_op(symbol, table)?;
        Ok(self)
    }

    pub fn set_op(&mut self, symbol: impl Into<String>, table: OpTable) -> Result<()> {
        let symbol = symbol.into();
        table.validate(&symbol, self.size())?;
        if self.profile.family() == Family::Kleene && (symbol == sym::F || symbol == sym::P) {
            return Err(Error::RejectedOperation {
                profile: self.profile.id().to_string(),
                symbol,
            });
        }
        self.ops.insert(symbol, table);
        Ok(())
    }

    pub fn remove_op(&mut self, symbol: &str) -> Option<OpTable> {
        self.ops.remove(symbol)
    }

    /// Checks every required symbol of the declared profile is present with
    /// the right arity.
    pub fn validate_profile(&self) -> Result<()> {
        for &s in self.profile.required_symbols() {
            let arity = match s {
                sym::CENTER => 0,
                sym::IMP => 2,
                _ => 1,
            };
            match self.ops.get(s) {
                None => return Err(Error::MissingOperation(s.to_string())),
                Some(t) if t.arity() != arity => {
                    return Err(Error::InvalidTable {
                        symbol: s.to_string(),
                        reason: format!("expected arity {arity}, found {}", t.arity()),
                    })
                }
                Some(_) => {}
            }
        }
        if self.profile.family() == Family::Kleene {
            for s in [sym::F, sym::P] {
                if self.ops.contains_key(s) {
                    return Err(Error::RejectedOperation {
                        profile: self.profile.id().to_string(),
                        symbol: s.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    /// Retags the algebra. Fails if the new profile rejects a present symbol.
    pub fn set_profile(&mut self, profile: Profile) -> Result<()> {
        if profile.family() == Family::Kleene {
            for s in [sym::F, sym::P] {
                if self.ops.contains_key(s) {
                    return Err(Error::RejectedOperation {
                        profile: profile.id().to_string(),
                        symbol: s.to_string(),
                    });
                }
            }
        }
        self.profile = profile;
        Ok(())
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn ops(&self) -> &BTreeMap<String, OpTable> {
        &self.ops
    }

    pub fn op(&self, symbol: &str) -> Option<&OpTable> {
        self.ops.get(symbol)
    }

    pub fn has_op(&self, symbol: &str) -> bool {
        self.ops.contains_key(symbol)
    }

    pub fn unary(&self, symbol: &str) -> Result<&[usize]> {
        match self.ops.get(symbol) {
            Some(OpTable::Unary(t)) => Ok(t),
            Some(_) => Err(Error::InvalidTable {
                symbol: symbol.to_string(),
                reason: "expected a unary table".into(),
            }),
            None => Err(Error::MissingOperation(symbol.to_string())),
        }
    }

    pub fn binary(&self, symbol: &str) -> Result<&[usize]> {
        match self.ops.get(symbol) {
            Some(OpTable::Binary(t)) => Ok(t),
            Some(_) => Err(Error::InvalidTable {
                symbol: symbol.to_string(),
                reason: "expected a binary table".into(),
            }),
            None => Err(Error::MissingOperation(symbol.to_string())),
        }
    }

    pub fn constant(&self, symbol: &str) -> Result<usize> {
        match self.ops.get(symbol) {
            Some(OpTable::Constant(c)) => Ok(*c),
            Some(_) => Err(Error::InvalidTable {
                symbol: symbol.to_string(),
                reason: "expected a constant".into(),
            }),
            None => Err(Error::MissingOperation(symbol.to_string())),
        }
    }

    /// `(symbol, arity)` pairs in symbol order.
    pub fn signature(&self) -> Vec<(String, usize)> {
        self.ops
            .iter()
            .map(|(s, t)| (s.clone(), t.arity()))
            .collect()
    }

    pub fn element_name(&self, i: usize) -> &str {
        self.lattice.name(i)
    }
}

/// `a -> b` lookup over a row-major table.
#[inline]
pub(crate) fn bin(table: &[usize], n: usize, a: usize, b: usize) -> usize {
    table[a * n + b]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    fn b2() -> FiniteLattice {
        build_lattice(&["0", "1"], &[("0", "1")]).unwrap()
    }

    #[test]
    fn profile_ids_round_trip() {
        for p in Profile::ALL {
            assert_eq!(p.id().parse::<Profile>().unwrap(), p);
        }
        assert!("nope".parse::<Profile>().is_err());
    }

    #[test]
    fn tables_are_validated() {
        let a = Algebra::new("B2", b2(), Profile::Dli);
        let err = a
            .clone()
            .with_op(sym::IMP, OpTable::Binary(vec![1, 1, 0]))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidTable { .. }));
        let err = a
            .with_op(sym::IMP, OpTable::Binary(vec![1, 1, 0, 2]))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidTable { .. }));
    }

    #[test]
    fn kleene_profiles_reject_f_and_p() {
        let a = Algebra::new("K", b2(), Profile::Tki);
        let err = a.with_op(sym::F, OpTable::Unary(vec![0, 1])).unwrap_err();
        assert!(matches!(err, Error::RejectedOperation { .. }));
    }

    #[test]
    fn missing_symbols_reported() {
        let a = Algebra::new("B2", b2(), Profile::Tdli);
        assert_eq!(
            a.validate_profile().unwrap_err(),
            Error::MissingOperation("imp".into())
        );
    }
}
