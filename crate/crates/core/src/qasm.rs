//! Reader and writer for the OpenQASM 2.0 subset used by benchmark corpora.
//!
//! Accepted grammar (one statement per `;`, `//` comments, any whitespace):
//!
//! ```text
//! program   := [ "OPENQASM 2.0;" ] { include | qreg | creg | stmt }
//! include   := "include" "\"qelib1.inc\"" ";"          (ignored)
//! qreg      := "qreg" ID "[" INT "]" ";"               (exactly one)
//! creg      := "creg" ID "[" INT "]" ";"               (declared, otherwise ignored)
//! stmt      := GATE [ "(" expr ")" ] operand [ "," operand ] ";"
//!            | "measure" operand [ "->" ID "[" INT "]" ] ";"
//!            | "barrier" operands ";"                  (ignored)
//! operand   := ID "[" INT "]"
//! expr      := numbers, `pi`, + - * / and parentheses
//! ```
//!
//! `GATE` is one of `id x y z h s sdg t tdg rx ry rz cx cz swap`. Gate
//! definitions, classical control, `reset`, register broadcast, multiple
//! quantum registers and gates on three or more qubits are rejected.

use std::fmt::Write as _;
use std::path::Path;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

const THREE_QUBIT_GATES: &[&str] = &["ccx", "cswap", "ccz", "rccx", "c3x", "c4x", "toffoli", "fredkin"];

/// Parses QASM-subset source into a circuit named `circuit`.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    parse_qasm_named(text, "circuit")
}

pub fn parse_qasm_named(text: &str, name: &str) -> Result<Circuit> {
    let mut parser = Parser::default();
    for (line, stmt) in statements(text) {
        parser.statement(line, &stmt)?;
    }
    let last_line = text.lines().count().max(1);
    match parser.circuit {
        Some(mut c) => {
            c.set_name(name);
            Ok(c)
        }
        None => Err(Error::syntax(last_line, "missing quantum register declaration")),
    }
}

/// Reads a `.qasm` file; the circuit is named after the file stem.
pub fn load_qasm(path: &Path) -> Result<Circuit> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".to_owned());
    parse_qasm_named(&text, &name)
}

/// Deterministic serialization; [`parse_qasm`] inverts it gate for gate.
pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::with_capacity(32 + 16 * c.gates().len());
    out.push_str("OPENQASM 2.0;\n");
    let _ = writeln!(out, "qreg q[{}];", c.n_qubits());
    for g in c.gates() {
        out.push_str(g.kind().mnemonic());
        if let Some(theta) = g.angle() {
            // 17 significant digits: exact round trip for every f64.
            let _ = write!(out, "({theta:.16e})");
        }
        for (i, q) in g.qubits().iter().enumerate() {
            out.push_str(if i == 0 { " " } else { "," });
            let _ = write!(out, "q[{q}]");
        }
        out.push_str(";\n");
    }
    out
}

/// Splits source into `;`-terminated statements tagged with their 1-based start line.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let code = match raw.find("//") {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        for ch in code.chars() {
            if ch == ';' {
                let stmt = current.trim().to_owned();
                if !stmt.is_empty() {
                    out.push((start, stmt));
                }
                current.clear();
                start = 0;
            } else {
                if start == 0 && !ch.is_whitespace() {
                    start = line_no;
                }
                current.push(ch);
            }
        }
        current.push(' ');
    }
    let rest = current.trim();
    if !rest.is_empty() {
        // Unterminated trailing statement.
        out.push((start.max(1), format!("{rest}\u{0}")));
    }
    out
}

#[derive(Default)]
struct Parser {
    circuit: Option<Circuit>,
    qreg_name: String,
    cregs: Vec<(String, usize)>,
    seen_statement: bool,
}

impl Parser {
    fn statement(&mut self, line: usize, stmt: &str) -> Result<()> {
        if let Some(body) = stmt.strip_suffix('\u{0}') {
            return Err(Error::syntax(line, format!("missing `;` after `{body}`")));
        }
        let first_statement = !self.seen_statement;
        self.seen_statement = true;
        let (head, rest) = split_head(stmt);
        match head {
            "OPENQASM" => {
                if !first_statement {
                    return Err(Error::syntax(line, "OPENQASM header must come first"));
                }
                if rest.trim() != "2.0" {
                    return Err(Error::unsupported(line, format!("OPENQASM version `{}`", rest.trim())));
                }
                Ok(())
            }
            "include" => {
                if rest.trim() == "\"qelib1.inc\"" {
                    Ok(())
                } else {
                    Err(Error::unsupported(line, format!("include {}", rest.trim())))
                }
            }
            "qreg" => {
                let (name, size) = register_decl(line, rest)?;
                if self.circuit.is_some() {
                    return Err(Error::unsupported(line, "multiple quantum registers"));
                }
                if size == 0 {
                    return Err(Error::syntax(line, "register size must be positive"));
                }
                self.qreg_name = name;
                self.circuit = Some(Circuit::new("circuit", size));
                Ok(())
            }
            "creg" => {
                let decl = register_decl(line, rest)?;
                self.cregs.push(decl);
                Ok(())
            }
            "barrier" => {
                for op in rest.split(',') {
                    let op = op.trim();
                    if op != self.qreg_name {
                        self.operand(line, op)?;
                    }
                }
                Ok(())
            }
            "measure" => self.measure(line, rest),
            "if" => Err(Error::unsupported(line, "classical control (`if`)")),
            "gate" | "opaque" => Err(Error::unsupported(line, "gate definitions")),
            "reset" => Err(Error::unsupported(line, "reset")),
            _ => self.gate(line, stmt),
        }
    }

    fn circuit_mut(&mut self, line: usize) -> Result<&mut Circuit> {
        self.circuit
            .as_mut()
            .ok_or_else(|| Error::syntax(line, "gate before quantum register declaration"))
    }

    fn operand(&self, line: usize, text: &str) -> Result<usize> {
        let circuit = self
            .circuit
            .as_ref()
            .ok_or_else(|| Error::syntax(line, "gate before quantum register declaration"))?;
        let (name, index) = indexed(line, text)?;
        if name != self.qreg_name {
            return Err(Error::syntax(line, format!("unknown quantum register `{name}`")));
        }
        if index >= circuit.n_qubits() {
            return Err(Error::index(
                line,
                format!("qubit {name}[{index}] out of range for register of size {}", circuit.n_qubits()),
            ));
        }
        Ok(index)
    }

    fn measure(&mut self, line: usize, rest: &str) -> Result<()> {
        let (src, dst) = match rest.split_once("->") {
            Some((s, d)) => (s, Some(d)),
            None => (rest, None),
        };
        let q = self.operand(line, src)?;
        if let Some(dst) = dst {
            let (name, idx) = indexed(line, dst)?;
            let size = self
                .cregs
                .iter()
                .find(|(n, _)| *n == name)
                .map(|&(_, s)| s)
                .ok_or_else(|| Error::syntax(line, format!("unknown classical register `{name}`")))?;
            if idx >= size {
                return Err(Error::index(line, format!("bit {name}[{idx}] out of range")));
            }
        }
        self.circuit_mut(line)?
            .push(Gate::single(GateKind::Measure, q))
            .map_err(|e| Error::index(line, e.to_string()))
    }

    fn gate(&mut self, line: usize, stmt: &str) -> Result<()> {
        let name_end = stmt
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(stmt.len());
        let name = &stmt[..name_end];
        if name.is_empty() {
            return Err(Error::syntax(line, format!("malformed statement `{stmt}`")));
        }
        let mut rest = stmt[name_end..].trim_start();
        let mut params = None;
        if let Some(after) = rest.strip_prefix('(') {
            let close = matching_paren(after)
                .ok_or_else(|| Error::syntax(line, "unbalanced parentheses in gate parameters"))?;
            params = Some(&after[..close]);
            rest = &after[close + 1..];
        }
        let operands: Vec<&str> = rest.split(',').map(str::trim).collect();

        if THREE_QUBIT_GATES.contains(&name) || operands.len() > 2 {
            return Err(Error::unsupported(line, format!("gate `{name}` on three or more qubits")));
        }
        let kind = match name {
            "CX" => GateKind::Cx,
            other => other
                .parse::<GateKind>()
                .map_err(|msg| Error::syntax(line, msg))?,
        };
        if kind == GateKind::Measure {
            return Err(Error::syntax(line, "malformed measure"));
        }
        if operands.len() != kind.arity() || operands.iter().any(|o| o.is_empty()) {
            return Err(Error::syntax(
                line,
                format!("`{name}` takes {} operand(s)", kind.arity()),
            ));
        }

        let angle = match (kind.is_rotation(), params) {
            (true, Some(p)) => Some(eval_expr(p).map_err(|msg| Error::syntax(line, msg))?),
            (true, None) => return Err(Error::syntax(line, format!("`{name}` needs an angle"))),
            (false, Some(_)) => return Err(Error::syntax(line, format!("`{name}` takes no parameters"))),
            (false, None) => None,
        };

        let qubits = operands
            .iter()
            .map(|op| self.operand(line, op))
            .collect::<Result<Vec<_>>>()?;
        let gate = Gate::new(kind, &qubits, angle).map_err(|e| Error::syntax(line, e.to_string()))?;
        self.circuit_mut(line)?
            .push(gate)
            .map_err(|e| Error::index(line, e.to_string()))
    }
}

fn split_head(stmt: &str) -> (&str, &str) {
    match stmt.find(char::is_whitespace) {
        Some(pos) => (&stmt[..pos], &stmt[pos..]),
        None => (stmt, ""),
    }
}

fn register_decl(line: usize, text: &str) -> Result<(String, usize)> {
    indexed(line, text)
}

/// Parses `name[index]`.
fn indexed(line: usize, text: &str) -> Result<(String, usize)> {
    let text = text.trim();
    let Some(open) = text.find('[') else {
        if is_identifier(text) {
            return Err(Error::unsupported(line, format!("register broadcast `{text}`")));
        }
        return Err(Error::syntax(line, format!("expected `name[index]`, found `{text}`")));
    };
    let name = text[..open].trim();
    let inner = text[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| Error::syntax(line, format!("expected `]` in `{text}`")))?;
    if !is_identifier(name) {
        return Err(Error::syntax(line, format!("bad register name `{name}`")));
    }
    let index = inner
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::syntax(line, format!("bad index `{inner}`")))?;
    Ok((name.to_owned(), index))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}

/// Evaluates a parameter expression over numbers and `pi`.
fn eval_expr(src: &str) -> std::result::Result<f64, String> {
    let tokens = tokenize(src)?;
    let mut p = ExprParser { tokens, pos: 0 };
    let v = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in expression `{src}`"));
    }
    if !v.is_finite() {
        return Err(format!("non-finite angle `{src}`"));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(f64),
    Op(char),
}

fn tokenize(src: &str) -> std::result::Result<Vec<Tok>, String> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if src[i..].starts_with("pi") {
            out.push(Tok::Num(std::f64::consts::PI));
            i += 2;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                i += 1;
                if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit = &src[start..i];
            out.push(Tok::Num(lit.parse().map_err(|_| format!("bad number `{lit}`"))?));
        } else {
            return Err(format!("unexpected `{c}` in expression"));
        }
    }
    Ok(out)
}

struct ExprParser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<Tok> {
        self.tokens.get(self.pos).copied()
    }

    fn sum(&mut self) -> std::result::Result<f64, String> {
        let mut v = self.product()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn product(&mut self) -> std::result::Result<f64, String> {
        let mut v = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            v = if op == '*' { v * rhs } else { v / rhs };
        }
        Ok(v)
    }

    fn unary(&mut self) -> std::result::Result<f64, String> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> std::result::Result<f64, String> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(Tok::Op(')')) {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(format!("unexpected token {other:?} in expression")),
        }
    }
}
