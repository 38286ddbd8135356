use skoda_core::polyarith::IntPolynomial;

/// A parsed script: statements in source order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ring(RingDecl),
    Ideal(IdealDecl),
    Assume { ring: String, assumption: Assumption },
    Check(CheckCmd),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub prime: u64,
    pub vars: Vec<String>,
    pub relations: Vec<IntPolynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub ring: String,
    pub generators: Vec<IntPolynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assumption {
    FInjective,
    CohenMacaulay,
    Equidimensional,
    ParamFrobeniusClosed,
}

impl Assumption {
    pub const ALL: [Assumption; 4] = [
        Assumption::FInjective,
        Assumption::CohenMacaulay,
        Assumption::Equidimensional,
        Assumption::ParamFrobeniusClosed,
    ];

    pub fn keyword(&self) -> &'static str {
        match self {
            Self::FInjective => "f_injective",
            Self::CohenMacaulay => "cohen_macaulay",
            Self::Equidimensional => "equidimensional",
            Self::ParamFrobeniusClosed => "param_frobenius_closed",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.keyword() == s)
    }
}

/// The checks a script can request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckName {
    BsFpure,
    BsParam,
    BsCm,
    Containment,
    PowersClosed,
    FrobeniusClosed,
    FrobeniusMember,
    Fedder,
    Spread,
    Reduction,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::BsFpure,
        CheckName::BsParam,
        CheckName::BsCm,
        CheckName::Containment,
        CheckName::PowersClosed,
        CheckName::FrobeniusClosed,
        CheckName::FrobeniusMember,
        CheckName::Fedder,
        CheckName::Spread,
        CheckName::Reduction,
    ];

    pub fn keyword(&self) -> &'static str {
        match self {
            Self::BsFpure => "bs_fpure",
            Self::BsParam => "bs_param",
            Self::BsCm => "bs_cm",
            Self::Containment => "containment",
            Self::PowersClosed => "powers_closed",
            Self::FrobeniusClosed => "frobenius_closed",
            Self::FrobeniusMember => "frobenius_member",
            Self::Fedder => "fedder",
            Self::Spread => "spread",
            Self::Reduction => "reduction",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.keyword() == s)
    }

    /// Parameters specific to this check, beside the common bound overrides.
    pub fn own_params(&self) -> &'static [&'static str] {
        match self {
            Self::BsFpure | Self::BsCm => &["n"],
            Self::Containment => &["k", "n"],
            Self::PowersClosed => &["n"],
            Self::FrobeniusMember => &["r"],
            Self::Reduction => &["target", "trials"],
            Self::BsParam | Self::FrobeniusClosed | Self::Fedder | Self::Spread => &[],
        }
    }

    /// Parameters without a default.
    pub fn required_params(&self) -> &'static [&'static str] {
        match self {
            Self::Containment => &["k"],
            Self::FrobeniusMember => &["r"],
            Self::Reduction => &["target"],
            _ => &[],
        }
    }

    /// Whether the target may name a ring instead of an ideal.
    pub fn accepts_ring(&self) -> bool {
        matches!(self, Self::Fedder)
    }
}

/// Parameters any check accepts; they override command-line bounds.
pub const COMMON_PARAMS: [&str; 7] = ["degree", "emax", "mmax", "tmax", "samples", "seed", "primes"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(u64),
    Range(u64, u64),
    List(Vec<u64>),
    Polys(Vec<IntPolynomial>),
}

impl ParamValue {
    /// Integers denoted by the value, if it is numeric.
    pub fn ints(&self) -> Option<Vec<u64>> {
        match self {
            Self::Int(a) => Some(vec![*a]),
            Self::Range(a, b) => Some((*a..=*b).collect()),
            Self::List(v) => Some(v.clone()),
            Self::Polys(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckCmd {
    pub check: CheckName,
    pub target: String,
    pub params: Vec<(String, ParamValue)>,
}

impl CheckCmd {
    pub fn param(&self, key: &str) -> Option<&ParamValue> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}
