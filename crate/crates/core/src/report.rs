use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Named pass/fail outcomes of one trial, in the order they were checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laws(Vec<(&'static str, bool)>);

impl Laws {
    pub fn new() -> Self {
        Laws(Vec::new())
    }

    pub fn record(&mut self, name: &'static str, holds: bool) -> &mut Self {
        self.0.push((name, holds));
        self
    }

    pub fn extend(&mut self, other: Laws) {
        self.0.extend(other.0);
    }

    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|&(_, ok)| ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().filter(|(_, ok)| !ok).map(|&(name, _)| name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, bool)> + '_ {
        self.0.iter().copied()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0.iter().find(|(n, _)| *n == name).map(|&(_, ok)| ok)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Laws {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, ok) in &self.0 {
            map.serialize_entry(name, if *ok { "pass" } else { "fail" })?;
        }
        map.end()
    }
}
