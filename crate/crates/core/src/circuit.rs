use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::Gate;

/// Ordered gate list; `ops[0]` acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidInput(
                "circuit needs at least one qubit".into(),
            ));
        }
        Ok(Self {
            num_qubits,
            ops: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[Gate] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.ops.push(gate);
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "cannot append {}-qubit circuit to {}-qubit circuit",
                other.num_qubits, self.num_qubits
            )));
        }
        self.ops.extend_from_slice(&other.ops);
        Ok(self)
    }

    /// Removes back-to-back identical CNOTs, using `CNOT² = 1`.
    pub fn cancel_adjacent_cnots(&self) -> Circuit {
        let mut ops: Vec<Gate> = Vec::with_capacity(self.ops.len());
        for &g in &self.ops {
            if matches!(g, Gate::CNOT { .. }) && ops.last() == Some(&g) {
                ops.pop();
            } else {
                ops.push(g);
            }
        }
        Circuit {
            num_qubits: self.num_qubits,
            ops,
        }
    }

    /// One gate per line: name, qubit indices, angle (17 significant digits).
    pub fn to_text(&self) -> String {
        let mut out = format!("# qubits {}\n", self.num_qubits);
        for g in &self.ops {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut num_qubits = None;
        let mut ops = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("# qubits") {
                num_qubits = Some(parse_num::<usize>(rest.trim(), lineno)?);
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            ops.push(parse_gate(line, lineno)?);
        }
        let num_qubits = num_qubits
            .ok_or_else(|| Error::InvalidInput("circuit text lacks '# qubits N' header".into()))?;
        let mut circuit = Circuit::new(num_qubits)?;
        circuit.extend(ops)?;
        Ok(circuit)
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, lineno: usize) -> Result<T> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("line {}: cannot parse {s:?}", lineno + 1)))
}

fn parse_gate(line: &str, lineno: usize) -> Result<Gate> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let arity = |n: usize| {
        if fields.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "line {}: expected {} fields in {line:?}",
                lineno + 1,
                n
            )))
        }
    };
    let q = |i: usize| parse_num::<usize>(fields[i], lineno);
    let a = |i: usize| parse_num::<f64>(fields[i], lineno);
    let gate = match fields[0] {
        "H" | "X" | "Y" | "Z" => {
            arity(2)?;
            let q0 = q(1)?;
            match fields[0] {
                "H" => Gate::H(q0),
                "X" => Gate::X(q0),
                "Y" => Gate::Y(q0),
                _ => Gate::Z(q0),
            }
        }
        "P" | "RX" | "RY" | "RZ" => {
            arity(3)?;
            let (q0, angle) = (q(1)?, a(2)?);
            match fields[0] {
                "P" => Gate::P(q0, angle),
                "RX" => Gate::RX(q0, angle),
                "RY" => Gate::RY(q0, angle),
                _ => Gate::RZ(q0, angle),
            }
        }
        "CNOT" => {
            arity(3)?;
            Gate::CNOT {
                control: q(1)?,
                target: q(2)?,
            }
        }
        "CZ" => {
            arity(3)?;
            Gate::CZ(q(1)?, q(2)?)
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "line {}: unknown gate {other:?}",
                lineno + 1
            )))
        }
    };
    Ok(gate)
}
