use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const ELEMENTS: &[&str] = &[
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar", "K", "Ca",
    "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",
    "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce",
    "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir",
    "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc",
    "Lv", "Ts", "Og",
];

/// Elements that may be written without brackets.
pub const ORGANIC_SUBSET: &[&str] = &["B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"];

/// Elements with a lowercase aromatic form.
pub const AROMATIC_ELEMENTS: &[&str] = &["B", "C", "N", "O", "P", "S"];

pub fn is_element(symbol: &str) -> bool {
    ELEMENTS.contains(&symbol)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtomLabelError {
    #[error("`{0}` is not an element symbol")]
    UnknownElement(String),
    #[error("`{0}` has no aromatic form")]
    NotAromatic(String),
    #[error("malformed atom label `{0}`")]
    Malformed(String),
}

/// Parsed form of a molecule node label such as `C`, `c`, `N+`, `O-`,
/// `Fe+2` or `C:1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomLabel {
    /// Capitalized symbol, e.g. `Cl`, also for aromatic atoms.
    pub element: String,
    pub aromatic: bool,
    pub charge: i32,
    pub class: Option<u32>,
}

impl AtomLabel {
    pub fn new(element: &str) -> AtomLabel {
        AtomLabel {
            element: element.to_string(),
            aromatic: false,
            charge: 0,
            class: None,
        }
    }

    pub fn symbol(&self) -> String {
        if self.aromatic {
            self.element.to_ascii_lowercase()
        } else {
            self.element.clone()
        }
    }

    pub fn is_hydrogen(&self) -> bool {
        self.element == "H"
    }

    /// Allowed total bond orders, smallest first. Empty for elements
    /// without a valence model.
    pub fn valences(&self) -> Vec<u32> {
        valences(&self.element, self.charge)
    }

    /// True when the label survives a bare (bracketless) SMILES atom.
    pub fn is_organic(&self) -> bool {
        self.charge == 0 && self.class.is_none() && ORGANIC_SUBSET.contains(&self.element.as_str())
    }
}

fn valence_electrons(element: &str) -> Option<i32> {
    Some(match element {
        "H" => 1,
        "B" => 3,
        "C" => 4,
        "N" | "P" => 5,
        "O" | "S" => 6,
        "F" | "Cl" | "Br" | "I" => 7,
        _ => return None,
    })
}

/// Valence model. Neutral atoms use the usual organic table; a charge
/// turns the atom into its isoelectronic neighbor (N+ like C, O- like F).
pub fn valences(element: &str, charge: i32) -> Vec<u32> {
    let Some(ve) = valence_electrons(element) else {
        return Vec::new();
    };
    let e = ve - charge;
    if element == "H" {
        return if e == 1 { vec![1] } else { vec![0] };
    }
    let octet = |e: i32| if (0..=4).contains(&e) { e } else { 8 - e };
    if !(0..=8).contains(&e) {
        return Vec::new();
    }
    let expanded = matches!(element, "P" | "S");
    match (expanded, e) {
        (true, 5) => vec![3, 5],
        (true, 6) => vec![2, 4, 6],
        _ => vec![octet(e) as u32],
    }
}

impl fmt::Display for AtomLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())?;
        match self.charge {
            0 => {}
            1 => f.write_str("+")?,
            -1 => f.write_str("-")?,
            c if c > 0 => write!(f, "+{c}")?,
            c => write!(f, "-{}", -c)?,
        }
        if let Some(c) = self.class {
            write!(f, ":{c}")?;
        }
        Ok(())
    }
}

impl FromStr for AtomLabel {
    type Err = AtomLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || AtomLabelError::Malformed(s.to_string());
        let (body, class) = match s.split_once(':') {
            Some((b, c)) => (b, Some(c.parse::<u32>().map_err(|_| malformed())?)),
            None => (s, None),
        };
        let sym_len = body
            .char_indices()
            .skip(1)
            .find(|(_, c)| !c.is_ascii_lowercase())
            .map(|(i, _)| i)
            .unwrap_or(body.len());
        if sym_len == 0 {
            return Err(malformed());
        }
        let (sym, rest) = body.split_at(sym_len);
        let first = sym.chars().next().ok_or_else(malformed)?;
        let (element, aromatic) = if first.is_ascii_lowercase() {
            if sym.len() > 1 {
                return Err(AtomLabelError::UnknownElement(sym.to_string()));
            }
            let el = first.to_ascii_uppercase().to_string();
            if !AROMATIC_ELEMENTS.contains(&el.as_str()) {
                return Err(AtomLabelError::NotAromatic(sym.to_string()));
            }
            (el, true)
        } else {
            if !is_element(sym) {
                return Err(AtomLabelError::UnknownElement(sym.to_string()));
            }
            (sym.to_string(), false)
        };
        let charge = match rest.chars().next() {
            None => 0,
            Some(sign @ ('+' | '-')) => {
                let mag = &rest[1..];
                let m: i32 = if mag.is_empty() {
                    1
                } else {
                    mag.parse().map_err(|_| malformed())?
                };
                if sign == '+' {
                    m
                } else {
                    -m
                }
            }
            _ => return Err(malformed()),
        };
        Ok(AtomLabel {
            element,
            aromatic,
            charge,
            class,
        })
    }
}

/// Bond order of a molecule edge label, aromatic as `None`.
pub fn bond_order(label: &str) -> Option<Option<u32>> {
    match label {
        "-" => Some(Some(1)),
        "=" => Some(Some(2)),
        "#" => Some(Some(3)),
        ":" => Some(None),
        _ => None,
    }
}
