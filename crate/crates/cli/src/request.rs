use kgroth_core::algebra::Poly;
use kgroth_core::grothendieck::{
    g_residue_cached, groth_recursive, multiply_g, straighten, truncated_stable, GExpansion, IntegerSequence, Partition,
    Permutation,
};
use kgroth_core::grothendieck::divided::DEFAULT_RECURSION_BOUND;
use kgroth_core::grothendieck::perm::parse_sequence;
use kgroth_core::grothendieck::pipedream::{pipe_dream_groth, Specialization};
use kgroth_core::thom::{
    d3_table, d_table, ktp_a2, ktp_a2_minimal, ktp_a2_stable, ktp_a3, ktp_sigma_r, CoeffTable, D_table, ThomInstance,
};
use kgroth_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::args::{Command, Expand, Format, Singularity, Table};

/// A validated computation. Its JSON serialization is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Request {
    Groth { target: GrothTarget, truncation: Option<(usize, usize)>, format: Format },
    Straighten { seq: IntegerSequence, format: Format },
    Product { left: IntegerSequence, right: IntegerSequence, k: usize, l: usize, format: Format },
    Ktp { singularity: Singularity, r: Option<usize>, a: usize, b: usize, expand: Option<(Expand, Option<usize>)>, format: Format },
    Coeff { table: Table, l: Option<usize>, rmax: usize, format: Format },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrothTarget {
    Perm(Vec<u8>),
    Partition(Vec<i32>),
}

/// A rejected argument; reported as a usage error.
#[derive(Debug)]
pub struct Usage(pub String);

fn usage(e: Error) -> Usage {
    Usage(e.to_string())
}

impl Request {
    /// Validates parameters; `None` for commands that are not cached computations.
    pub fn from_command(cmd: &Command) -> Result<Option<Request>, Usage> {
        let req = match cmd {
            Command::Groth { perm, partition, k, l, format } => {
                let target = match (perm, partition) {
                    (Some(p), _) => GrothTarget::Perm(p.parse::<Permutation>().map_err(usage)?.images().to_vec()),
                    (None, Some(p)) => {
                        GrothTarget::Partition(Partition::new(parse_sequence(p).map_err(usage)?).map_err(usage)?.parts().to_vec())
                    }
                    (None, None) => return Err(Usage("one of --perm, --partition is required".into())),
                };
                Request::Groth { target, truncation: k.zip(*l), format: *format }
            }
            Command::Straighten { seq, format } => Request::Straighten { seq: parse_sequence(seq).map_err(usage)?, format: *format },
            Command::Product { left, right, k, l, format } => Request::Product {
                left: parse_sequence(left).map_err(usage)?,
                right: parse_sequence(right).map_err(usage)?,
                k: *k,
                l: *l,
                format: *format,
            },
            Command::Ktp { singularity, r, a, b, expand, n, format } => {
                ThomInstance::new(*a, *b).map_err(usage)?;
                let r = if *singularity == Singularity::Sigma { *r } else { None };
                let n = if *expand == Some(Expand::Stable) { *n } else { None };
                Request::Ktp { singularity: *singularity, r, a: *a, b: *b, expand: expand.map(|e| (e, n)), format: *format }
            }
            Command::Coeff { table, l, rmax, format } => {
                let l = if *table == Table::Minimal { *l } else { None };
                Request::Coeff { table: *table, l, rmax: *rmax, format: *format }
            }
            Command::Verify { .. } => return Ok(None),
        };
        Ok(Some(req))
    }

    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn execute(&self) -> Result<String> {
        match self {
            Request::Groth { target, truncation, format } => {
                let p = match (target, truncation) {
                    (GrothTarget::Perm(w), None) => {
                        let w = Permutation::new(w.clone())?;
                        if w.trimmed().size() <= DEFAULT_RECURSION_BOUND {
                            groth_recursive(&w)?
                        } else {
                            pipe_dream_groth(&w, Specialization::default())
                        }
                    }
                    (GrothTarget::Perm(w), Some((k, l))) => truncated_stable(&Permutation::new(w.clone())?, *k, *l)?,
                    (GrothTarget::Partition(p), t) => {
                        let (k, l) = t.unwrap_or((p.len(), p.len()));
                        g_residue_cached(p, k, l)?
                    }
                };
                Ok(render_poly(&p, *format))
            }
            Request::Straighten { seq, format } => Ok(render_expansion(&straighten(seq)?, *format)),
            Request::Product { left, right, k, l, format } => {
                Ok(render_expansion(&multiply_g(left, right, *k, *l, None)?, *format))
            }
            Request::Ktp { singularity, r, a, b, expand, format } => {
                let inst = ThomInstance::new(*a, *b)?;
                match (singularity, expand) {
                    (Singularity::A2, None) => Ok(render_poly(&ktp_a2(inst)?, *format)),
                    (Singularity::A3, None) => Ok(render_poly(&ktp_a3(inst)?, *format)),
                    (Singularity::Sigma, None) => {
                        let r = r.ok_or_else(|| Error::MalformedInput("sigma needs --r".into()))?;
                        Ok(render_poly(&ktp_sigma_r(r, inst)?, *format))
                    }
                    (Singularity::A2, Some((Expand::Minimal, _))) => Ok(render_expansion(&ktp_a2_minimal(inst.l()), *format)),
                    (Singularity::A2, Some((Expand::Stable, n))) => {
                        let n = n.unwrap_or(2 * inst.l() + 3);
                        Ok(render_expansion(&ktp_a2_stable(inst.l(), n)?, *format))
                    }
                    (Singularity::Sigma, Some(_)) => {
                        let r = r.ok_or_else(|| Error::MalformedInput("sigma needs --r".into()))?;
                        if r == 0 || r > inst.a() {
                            return Err(Error::MalformedInput(format!("need 1 ≤ r ≤ a, got r={r}, a={}", inst.a())));
                        }
                        let key = vec![(r + inst.l()) as i32; r];
                        Ok(render_expansion(&GExpansion::single(&key), *format))
                    }
                    (Singularity::A3, Some(_)) => {
                        Err(Error::MalformedInput("expansions are available for a2 and sigma only".into()))
                    }
                }
            }
            Request::Coeff { table, l, rmax, format } => {
                let rmax = *rmax;
                let (t, symbol) = match table {
                    Table::Small => (d_table(rmax), "d"),
                    Table::Minimal => {
                        let l = l.ok_or_else(|| Error::MalformedInput("D needs --l".into()))? as i32;
                        let full = D_table(l)?;
                        let mut t = CoeffTable::new(&["r", "s"]);
                        for (k, v) in full.iter().filter(|(k, _)| k[0] <= rmax as i32) {
                            t.insert(vec![k[0], k[1]], v.clone());
                        }
                        (t, "D")
                    }
                    Table::Triple => {
                        let r = rmax as i32;
                        (d3_table(rmax, (-r - 1, 0), (-2 * r - 4, 0))?, "d")
                    }
                };
                Ok(render_table(&t, symbol, *format))
            }
        }
    }
}

fn render_poly(p: &Poly, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => p.to_json().to_string(),
        Format::Latex => p.to_latex(),
    }
}

fn render_expansion(e: &GExpansion, format: Format) -> String {
    match format {
        Format::Text => e.to_string(),
        Format::Json => e.to_json().to_string(),
        Format::Latex => e.to_latex(),
    }
}

fn render_table(t: &CoeffTable, symbol: &str, format: Format) -> String {
    match format {
        Format::Text => t.to_grid().trim_end().to_string(),
        Format::Json => t.to_json().to_string(),
        Format::Latex => t.to_latex(symbol).trim_end().to_string(),
    }
}
