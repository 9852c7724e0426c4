use std::fmt;

use num_traits::Zero;

use super::{GroupLabel, Rat, SplittingType};

/// Which sub-population a distribution is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conditioning {
    None,
    /// Discriminant not divisible by the uniformizer (square-free reduction).
    DiscriminantUnit,
    /// Splitting field unramified.
    Unramified,
}

impl fmt::Display for Conditioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conditioning::None => "none",
            Conditioning::DiscriminantUnit => "discriminant-unit",
            Conditioning::Unramified => "unramified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Type(SplittingType),
    Group(GroupLabel),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Type(t) => t.fmt(f),
            Label::Group(g) => g.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rat),
    Estimate { estimate: f64, stderr: f64, count: u64 },
}

/// A labelled probability table.
#[derive(Clone, Debug, PartialEq)]
pub struct Dist {
    pub n: u32,
    pub q: u64,
    pub conditioning: Conditioning,
    entries: Vec<(Label, Value)>,
}

impl Dist {
    pub fn new(n: u32, q: u64, conditioning: Conditioning) -> Self {
        Dist {
            n,
            q,
            conditioning,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, label: Label, value: Value) {
        self.entries.push((label, value));
    }

    pub fn entries(&self) -> &[(Label, Value)] {
        &self.entries
    }

    pub fn get(&self, label: &Label) -> Option<&Value> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    pub fn exact(&self, label: &Label) -> Option<&Rat> {
        match self.get(label)? {
            Value::Exact(r) => Some(r),
            Value::Estimate { .. } => None,
        }
    }

    pub fn exact_type(&self, ty: &SplittingType) -> Option<&Rat> {
        self.exact(&Label::Type(ty.clone()))
    }

    pub fn exact_group(&self, g: &GroupLabel) -> Option<&Rat> {
        self.exact(&Label::Group(g.clone()))
    }

    /// Sum of the exact entries, or `None` if any entry is an estimate.
    pub fn exact_total(&self) -> Option<Rat> {
        self.entries.iter().try_fold(Rat::zero(), |acc, (_, v)| match v {
            Value::Exact(r) => Some(acc + r),
            Value::Estimate { .. } => None,
        })
    }
}
