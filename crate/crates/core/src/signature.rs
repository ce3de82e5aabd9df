//! Indexed families of finite carriers.
//!
//! A [`FamilySignature`] is read two ways at once: as locations with value
//! sets (its product is the state space) and as exception indices with
//! parameter sets (its sum is the exception space).

use std::fmt;

use crate::error::{Error, Result};
use crate::terms::Value;

/// Position of an index within its signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ix(usize);

impl Ix {
    pub fn position(self) -> usize {
        self.0
    }
}

/// An element of a carrier, identified by its ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entry {
    name: String,
    size: usize,
}

impl Entry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySignature {
    entries: Vec<Entry>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FamilySignature {
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let entries: Vec<Entry> = entries
            .into_iter()
            .map(|(name, size)| Entry {
                name: name.into(),
                size,
            })
            .collect();
        if entries.is_empty() {
            return Err(Error::InvalidSignature(
                "at least one index is required".into(),
            ));
        }
        for (k, entry) in entries.iter().enumerate() {
            if !is_identifier(&entry.name) {
                return Err(Error::InvalidSignature(format!(
                    "index name `{}` is not an identifier",
                    entry.name
                )));
            }
            if entry.size == 0 {
                return Err(Error::InvalidSignature(format!(
                    "carrier size must be ≥ 1 (index `{}`)",
                    entry.name
                )));
            }
            if entries[..k].iter().any(|e| e.name == entry.name) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate index name `{}`",
                    entry.name
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = Ix> + '_ {
        (0..self.entries.len()).map(Ix)
    }

    /// Resolves an index name.
    pub fn ix(&self, name: &str) -> Result<Ix> {
        self.entries
            .iter()
            .position(|e| e.name == name)
            .map(Ix)
            .ok_or_else(|| Error::UnknownIndex(name.to_string()))
    }

    fn entry(&self, ix: Ix) -> Result<&Entry> {
        self.entries
            .get(ix.0)
            .ok_or_else(|| Error::UnknownIndex(format!("#{}", ix.0)))
    }

    pub fn name(&self, ix: Ix) -> &str {
        self.entries.get(ix.0).map_or("?", |e| e.name.as_str())
    }

    pub fn size(&self, ix: Ix) -> Result<usize> {
        self.entry(ix).map(|e| e.size)
    }

    /// Checks that `a` is an element of carrier `ix`.
    pub fn check_elem(&self, ix: Ix, a: Elem) -> Result<()> {
        let entry = self.entry(ix)?;
        if a.0 < entry.size {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: entry.name.clone(),
                ordinal: a.0,
                size: entry.size,
            })
        }
    }

    /// Number of states, or `None` on overflow.
    pub fn state_count(&self) -> Option<usize> {
        self.entries
            .iter()
            .try_fold(1usize, |acc, e| acc.checked_mul(e.size))
    }

    pub fn exception_count(&self) -> usize {
        self.entries.iter().map(|e| e.size).sum()
    }

    /// All states in lexicographic order: the first entry varies slowest.
    pub fn enumerate_states(&self) -> Vec<State> {
        let mut out = Vec::with_capacity(self.state_count().unwrap_or(0));
        let mut current = vec![Elem(0); self.entries.len()];
        loop {
            out.push(State(current.clone()));
            let mut pos = self.entries.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                current[pos].0 += 1;
                if current[pos].0 < self.entries[pos].size {
                    break;
                }
                current[pos] = Elem(0);
            }
        }
    }

    /// All exceptions, grouped by entry order, payloads ascending.
    pub fn enumerate_exceptions(&self) -> Vec<ExcVal> {
        self.indices()
            .flat_map(|ix| {
                (0..self.entries[ix.0].size).map(move |a| ExcVal {
                    index: ix,
                    payload: Elem(a),
                })
            })
            .collect()
    }

    pub fn state(&self, elems: impl IntoIterator<Item = Elem>) -> Result<State> {
        let elems: Vec<Elem> = elems.into_iter().collect();
        if elems.len() != self.entries.len() {
            return Err(Error::InvalidSignature(format!(
                "a state needs {} components, got {}",
                self.entries.len(),
                elems.len()
            )));
        }
        for (ix, a) in self.indices().zip(&elems) {
            self.check_elem(ix, *a)?;
        }
        Ok(State(elems))
    }

    pub fn exc(&self, ix: Ix, payload: Elem) -> Result<ExcVal> {
        self.check_elem(ix, payload)?;
        Ok(ExcVal { index: ix, payload })
    }

    pub fn contains_state(&self, s: &State) -> bool {
        s.0.len() == self.entries.len() && s.0.iter().zip(&self.entries).all(|(a, e)| a.0 < e.size)
    }

    pub fn contains_exc(&self, e: &ExcVal) -> bool {
        self.check_elem(e.index, e.payload).is_ok()
    }
}

impl fmt::Display for FamilySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", e.name, e.size)?;
        }
        f.write_str("]")
    }
}

/// An element of the product of all carriers, stored in entry order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(Vec<Elem>);

impl State {
    pub fn get(&self, ix: Ix) -> Option<Elem> {
        self.0.get(ix.0).copied()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.0
    }

    pub(crate) fn with(&self, ix: Ix, a: Elem) -> State {
        let mut next = self.0.clone();
        next[ix.0] = a;
        State(next)
    }
}

/// An element of the sum of all carriers: a tagged payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExcVal {
    pub index: Ix,
    pub payload: Elem,
}

/// An element of `Y + exc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumVal {
    Normal(Value),
    Exceptional(ExcVal),
}

impl SumVal {
    pub fn is_normal(&self) -> bool {
        matches!(self, SumVal::Normal(_))
    }

    pub fn into_value(self) -> Value {
        match self {
            SumVal::Normal(v) => Value::Inl(Box::new(v)),
            SumVal::Exceptional(e) => Value::Inr(Box::new(Value::Exc(e))),
        }
    }

    /// Reads a value of some `Y + exc` back as a `SumVal`.
    pub fn from_value(v: &Value) -> Option<SumVal> {
        match v {
            Value::Inl(x) => Some(SumVal::Normal((**x).clone())),
            Value::Inr(x) => match **x {
                Value::Exc(e) => Some(SumVal::Exceptional(e)),
                _ => None,
            },
            _ => None,
        }
    }
}
