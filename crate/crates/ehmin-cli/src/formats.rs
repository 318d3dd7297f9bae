//! JSON file formats for qudit and fermionic states.
//!
//! Qudit state files:   {"dims": [d1, .., dn], "amplitudes": [[re, im], ..]}
//! Fermion state files: {"p": p, "n": n, "amplitudes": [[re, im], ..]}
//!
//! Qudit amplitudes are in row-major order with the first subsystem most
//! significant; fermionic amplitudes follow the lexicographic order of
//! strictly increasing mode tuples.

use serde::{Deserialize, Serialize};

use ehmin_core::fermion::FermionState;
use ehmin_core::{PureState, C64};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FermionFile {
    pub p: usize,
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &PureState) -> Self {
        StateFile {
            dims: state.dims().to_vec(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn into_state(self) -> Result<PureState, CliError> {
        let amps: Vec<C64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        PureState::new(&self.dims, amps).map_err(|e| CliError::parse(format!("invalid state: {e}")))
    }
}

impl FermionFile {
    pub fn into_state(self) -> Result<FermionState, CliError> {
        let amps: Vec<C64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        FermionState::new(self.p, self.n, amps)
            .map_err(|e| CliError::parse(format!("invalid fermion state: {e}")))
    }
}

pub fn read_state(path: &std::path::Path) -> Result<PureState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("cannot parse {}: {e}", path.display())))?;
    file.into_state()
}

pub fn read_fermion(path: &std::path::Path) -> Result<FermionState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let file: FermionFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("cannot parse {}: {e}", path.display())))?;
    file.into_state()
}

pub fn write_state(path: &std::path::Path, state: &PureState) -> Result<(), CliError> {
    let file = StateFile::from_state(state);
    let json = serde_json::to_string(&file).expect("state files always serialize");
    std::fs::write(path, json)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))
}
