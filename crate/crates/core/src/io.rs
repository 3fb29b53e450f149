//! Set-system files: JSON `{"sets": [...], "energy": {...}, "ground": [...]}`
//! or plain text with one cell per line.

use serde_json::{json, Value};

use crate::energize::EnergySpec;
use crate::error::{Error, Result};
use crate::setsys::{Cell, SetSystem};

/// A parsed system file. `energy` is present only when the file carries one.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub system: SetSystem,
    pub energy: Option<EnergySpec>,
}

/// Detects the format: JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_system(text: &str) -> Result<SystemFile> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text).map(|system| SystemFile { system, energy: None })
    }
}

fn build(cells: Vec<Cell>, ground: Option<Vec<u32>>) -> Result<SetSystem> {
    match ground {
        Some(g) => SetSystem::with_ground(cells, g),
        None if cells.iter().any(Cell::is_empty) => {
            let atoms = cells.iter().flat_map(|c| c.atoms().iter().copied()).collect();
            SetSystem::with_ground(cells, atoms)
        }
        None => SetSystem::new(cells),
    }
}

pub fn parse_json(text: &str) -> Result<SystemFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let sets = v
        .get("sets")
        .ok_or_else(|| Error::Parse("system file needs \"sets\"".into()))?;
    let cells: Vec<Vec<u32>> = serde_json::from_value(sets.clone()).map_err(|e| Error::Parse(format!("sets: {e}")))?;
    let ground: Option<Vec<u32>> = match v.get("ground") {
        Some(g) => Some(serde_json::from_value(g.clone()).map_err(|e| Error::Parse(format!("ground: {e}")))?),
        None => None,
    };
    let system = build(cells.into_iter().map(Cell::new).collect(), ground)?;
    let energy = v.get("energy").map(EnergySpec::from_json).transpose()?;
    Ok(SystemFile { system, energy })
}

/// One cell per line, atoms separated by whitespace; `#` starts a comment.
pub fn parse_text(text: &str) -> Result<SetSystem> {
    let mut cells = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let atoms = line
            .split_whitespace()
            .map(|w| w.parse::<u32>().map_err(|e| Error::Parse(format!("line {}: {w:?}: {e}", no + 1))))
            .collect::<Result<Vec<_>>>()?;
        cells.push(Cell::new(atoms));
    }
    SetSystem::new(cells)
}

/// `ground` is written only when it is larger than the atoms in use or the
/// system holds the empty cell.
pub fn system_to_json(sys: &SetSystem, energy: Option<&EnergySpec>) -> Value {
    let mut v = json!({ "sets": sys.cells() });
    let used: std::collections::BTreeSet<u32> = sys.cells().iter().flat_map(|c| c.atoms().iter().copied()).collect();
    if sys.contains_empty_cell() || used.len() != sys.ground().len() {
        v["ground"] = json!(sys.ground());
    }
    if let Some(e) = energy {
        v["energy"] = e.to_json();
    }
    v
}

pub fn system_to_text(sys: &SetSystem) -> String {
    sys.cells()
        .iter()
        .map(|c| c.atoms().iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::complete_complex;

    #[test]
    fn json_round_trip() {
        let s = complete_complex(3).unwrap();
        let v = system_to_json(&s, Some(&EnergySpec::Omega));
        assert_eq!(v.to_string().find("ground"), None);
        let back = parse_system(&v.to_string()).unwrap();
        assert_eq!(back.system, s);
        assert_eq!(back.energy, Some(EnergySpec::Omega));
    }

    #[test]
    fn text_format() {
        let s = parse_system("# komma\n1\n1 2   # edge\n\n").unwrap();
        assert_eq!(s.system, SetSystem::from_atoms(&[&[1], &[1, 2]]).unwrap());
        assert_eq!(parse_text(&system_to_text(&s.system)).unwrap(), s.system);
        assert!(matches!(parse_text("1 x"), Err(Error::Parse(_))));
    }

    #[test]
    fn dual_keeps_empty_cell_and_ground() {
        let d = complete_complex(2).unwrap().boolean_dual();
        let v = system_to_json(&d, None);
        assert!(v.get("ground").is_some());
        assert_eq!(parse_json(&v.to_string()).unwrap().system, d);
        assert!(parse_json("{\"sets\": [[1], [1]]}").is_err());
        assert!(parse_json("{\"set\": []}").is_err());
    }
}
