//! The two families of building blocks: pieces `X^i Y^j · f` whose Hessian
//! curve has no points in the open quadrants, and pieces whose Hessian
//! curve is one oval there.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::census::{count_components, ComponentCensus};
use super::discriminant::{negative_on_torus, quadratic_discriminant, UniPoly};
use super::grid::{sign_grid, Quadrant, Window};
use super::TopologyError;
use crate::ratpoly::{bipoly, int, BiPoly, Exponent, Rational, Sign, Var};

/// Window used for the grid cross-checks.
pub const LEMMA_K: i64 = 6;
pub const LEMMA_N: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EmptyFamily {
    #[serde(rename = "1+Y")]
    OnePlusY,
    #[serde(rename = "X+Y")]
    XPlusY,
    #[serde(rename = "X+Y^2")]
    XPlusY2,
    #[serde(rename = "1+X")]
    OnePlusX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OvalFamily {
    #[serde(rename = "X+Y+Y^2")]
    XPlusYPlusY2,
    #[serde(rename = "XY+X+Y^2")]
    XYPlusXPlusY2,
    #[serde(rename = "1+X+Y")]
    OnePlusXPlusY,
}

impl EmptyFamily {
    pub const ALL: [EmptyFamily; 4] =
        [EmptyFamily::OnePlusY, EmptyFamily::XPlusY, EmptyFamily::XPlusY2, EmptyFamily::OnePlusX];

    pub fn as_str(self) -> &'static str {
        match self {
            EmptyFamily::OnePlusY => "1+Y",
            EmptyFamily::XPlusY => "X+Y",
            EmptyFamily::XPlusY2 => "X+Y^2",
            EmptyFamily::OnePlusX => "1+X",
        }
    }

    pub fn poly(self) -> BiPoly {
        match self {
            EmptyFamily::OnePlusY => bipoly(&[(0, 0, 1), (0, 1, 1)]),
            EmptyFamily::XPlusY => bipoly(&[(1, 0, 1), (0, 1, 1)]),
            EmptyFamily::XPlusY2 => bipoly(&[(1, 0, 1), (0, 2, 1)]),
            EmptyFamily::OnePlusX => bipoly(&[(0, 0, 1), (1, 0, 1)]),
        }
    }
}

impl OvalFamily {
    pub const ALL: [OvalFamily; 3] = [OvalFamily::XPlusYPlusY2, OvalFamily::XYPlusXPlusY2, OvalFamily::OnePlusXPlusY];

    pub fn as_str(self) -> &'static str {
        match self {
            OvalFamily::XPlusYPlusY2 => "X+Y+Y^2",
            OvalFamily::XYPlusXPlusY2 => "XY+X+Y^2",
            OvalFamily::OnePlusXPlusY => "1+X+Y",
        }
    }

    pub fn poly(self) -> BiPoly {
        match self {
            OvalFamily::XPlusYPlusY2 => bipoly(&[(1, 0, 1), (0, 1, 1), (0, 2, 1)]),
            OvalFamily::XYPlusXPlusY2 => bipoly(&[(1, 1, 1), (1, 0, 1), (0, 2, 1)]),
            OvalFamily::OnePlusXPlusY => bipoly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)]),
        }
    }
}

macro_rules! family_text {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $t {
            type Err = TopologyError;

            fn from_str(s: &str) -> Result<Self, TopologyError> {
                let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                <$t>::ALL
                    .into_iter()
                    .find(|f| f.as_str() == s || f.as_str().replace('^', "") == s)
                    .ok_or_else(|| TopologyError::Precondition(format!("unknown family {s}")))
            }
        }
    };
}

family_text!(EmptyFamily);
family_text!(OvalFamily);

fn piece_hessian(i: i64, j: i64, f: &BiPoly) -> Result<BiPoly, TopologyError> {
    if i < 2 || j < 2 {
        return Err(TopologyError::Precondition(format!("exponents ({i}, {j}) must be at least 2")));
    }
    Ok(f.shift(Exponent::new(i as u32, j as u32)).hessian())
}

/// Everything computed while deciding an empty piece.
#[derive(Debug, Clone)]
pub struct EmptyEvidence {
    pub hessian: BiPoly,
    pub monomial: Exponent,
    pub quotient: BiPoly,
    /// Variable in which the quotient is quadratic.
    pub var: Option<Var>,
    pub discriminant: Option<BiPoly>,
    pub discriminant_negative: bool,
    /// Common sign of the sample grid, per quadrant.
    pub grid_signs: [Option<Sign>; 4],
}

impl EmptyEvidence {
    pub fn grid_empty(&self) -> bool {
        self.grid_signs.iter().all(|s| matches!(s, Some(Sign::Positive) | Some(Sign::Negative)))
    }

    pub fn pass(&self) -> bool {
        self.discriminant_negative && self.grid_empty()
    }
}

/// `D = x^m · D'` is negative on `ℝ*` iff `m` is even and `D' < 0` there.
fn discriminant_negative(d: &BiPoly, var: Var) -> bool {
    let (m, rest) = d.strip_monomial();
    let power = match var.other() {
        Var::X => m.i,
        Var::Y => m.j,
    };
    if power % 2 == 1 {
        return false;
    }
    match UniPoly::from_bipoly(&rest, var.other()) {
        Ok(u) => negative_on_torus(&u),
        Err(_) => false,
    }
}

pub fn empty_piece_evidence(i: i64, j: i64, family: EmptyFamily) -> Result<EmptyEvidence, TopologyError> {
    let hessian = piece_hessian(i, j, &family.poly())?;
    let (monomial, quotient) = hessian.strip_monomial();
    let mut chosen = None;
    for var in [Var::Y, Var::X] {
        if quotient.degree_in(var) == Some(2) {
            let d = quadratic_discriminant(&quotient, var)?;
            let neg = discriminant_negative(&d, var);
            if chosen.is_none() || neg {
                chosen = Some((var, d, neg));
            }
            if neg {
                break;
            }
        }
    }
    let mut grid_signs = [None; 4];
    for q in Quadrant::ALL {
        let w = Window::new(q, int(LEMMA_K), LEMMA_N)?;
        grid_signs[q.index()] = sign_grid(&hessian, &w)?.uniform();
    }
    let (var, discriminant, negative) = match chosen {
        Some((v, d, n)) => (Some(v), Some(d), n),
        None => (None, None, false),
    };
    Ok(EmptyEvidence { hessian, monomial, quotient, var, discriminant, discriminant_negative: negative, grid_signs })
}

/// The Hessian curve of `X^i Y^j · family` has no point in `(ℝ*)²`, by the
/// discriminant argument and by the sign grid.
pub fn check_empty_piece(i: i64, j: i64, family: EmptyFamily) -> Result<bool, TopologyError> {
    Ok(empty_piece_evidence(i, j, family)?.pass())
}

#[derive(Debug, Clone)]
pub struct OvalEvidence {
    pub hessian: BiPoly,
    pub monomial: Exponent,
    pub quotient: BiPoly,
    /// Discriminant of the quotient in `X`, a polynomial in `Y`.
    pub x_discriminant: Option<BiPoly>,
    /// Discriminant in `Y` of the monomial-stripped `x_discriminant`.
    pub y_discriminant: Option<Rational>,
    pub census: ComponentCensus,
}

impl OvalEvidence {
    pub fn discriminant_positive(&self) -> bool {
        self.y_discriminant.as_ref().is_some_and(|d| d.is_positive())
    }

    pub fn single_oval(&self) -> bool {
        self.census.compact_in_r2 == 1 && self.census.stable
    }

    pub fn pass(&self) -> bool {
        self.discriminant_positive() && self.single_oval()
    }
}

pub fn oval_piece_evidence(i: i64, j: i64, family: OvalFamily) -> Result<OvalEvidence, TopologyError> {
    let hessian = piece_hessian(i, j, &family.poly())?;
    let (monomial, quotient) = hessian.strip_monomial();
    let x_discriminant = match quotient.degree_in(Var::X) {
        Some(2) => Some(quadratic_discriminant(&quotient, Var::X)?),
        _ => None,
    };
    let y_discriminant = x_discriminant.as_ref().and_then(|d| {
        let (_, rest) = d.strip_monomial();
        if rest.degree_in(Var::Y) != Some(2) {
            return None;
        }
        let c = quadratic_discriminant(&rest, Var::Y).ok()?;
        match c.degree_in(Var::X) {
            Some(0) | None => Some(c.coeff(Exponent::new(0, 0)).cloned().unwrap_or_else(Rational::zero)),
            _ => None,
        }
    });
    let census = count_components(&hessian, &int(LEMMA_K), LEMMA_N)?;
    Ok(OvalEvidence { hessian, monomial, quotient, x_discriminant, y_discriminant, census })
}

/// The Hessian curve of `X^i Y^j · family` is one oval: the discriminant
/// argument gives two real roots, and the census finds one stable compact
/// component.
pub fn check_oval_piece(i: i64, j: i64, family: OvalFamily) -> Result<bool, TopologyError> {
    Ok(oval_piece_evidence(i, j, family)?.pass())
}
