//! JSON reports.
//!
//! Floats are written in scientific notation with 17 significant digits,
//! and non-finite values as `null`, so identical runs give identical bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use triquad_core::counterexample::{AngleDeviation, CounterexampleReport, Verdict};
use triquad_core::symplectic::{ObstructionReport, OBSTRUCTION_CAVEAT};
use triquad_core::{Grid, SymplecticMatrix2};

struct FixedDigits<'a> {
    inner: PrettyFormatter<'a>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.inner.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl Formatter for FixedDigits<'_> {
    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );

    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Pretty-printed JSON with fixed float formatting.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let formatter = FixedDigits {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut out, formatter);
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

#[derive(Debug, Clone, Serialize)]
pub struct GridJson {
    pub x0: f64,
    pub dx: f64,
    pub points: usize,
}

impl From<&Grid> for GridJson {
    fn from(g: &Grid) -> Self {
        GridJson {
            x0: g.x0(),
            dx: g.dx(),
            points: g.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeviationJson {
    pub angle: f64,
    pub sup_difference: f64,
    pub total_variation: f64,
}

impl From<&AngleDeviation> for DeviationJson {
    fn from(d: &AngleDeviation) -> Self {
        DeviationJson {
            angle: d.angle,
            sup_difference: d.sup_difference,
            total_variation: d.total_variation,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub tolerance: f64,
    pub indistinguishable: bool,
    pub max_sup_difference: f64,
    pub deviations: Vec<DeviationJson>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            tolerance: v.tolerance,
            indistinguishable: v.indistinguishable,
            max_sup_difference: v.max_sup_difference(),
            deviations: v.deviations.iter().map(DeviationJson::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleJson {
    /// `rational` or `three-angle`.
    pub construction: &'static str,
    pub angles: Vec<f64>,
    /// The angles as typed.
    pub angle_inputs: Vec<String>,
    pub k: u64,
    pub minimal_k: Option<u64>,
    pub note: Option<String>,
    pub overlap: f64,
    pub verdict: VerdictJson,
    pub matrix: Option<[[f64; 2]; 2]>,
    pub grid: GridJson,
}

impl CounterexampleJson {
    pub fn new(
        construction: &'static str,
        inputs: &[String],
        report: &CounterexampleReport,
        grid: &Grid,
    ) -> Self {
        let note = report.minimal_k.map(|m| {
            format!(
                "k = {} follows the 2 p_2 ... p_n recipe; k = {m} also annihilates every angle",
                report.k
            )
        });
        CounterexampleJson {
            construction,
            angles: report.angles.clone(),
            angle_inputs: inputs.to_vec(),
            k: report.k,
            minimal_k: report.minimal_k,
            note,
            overlap: report.overlap,
            verdict: VerdictJson::from(&report.verdict),
            matrix: report.matrix.as_ref().map(matrix_rows),
            grid: GridJson::from(grid),
        }
    }
}

fn matrix_rows(s: &SymplecticMatrix2) -> [[f64; 2]; 2] {
    [[s.a11, s.a12], [s.a21, s.a22]]
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionJson {
    pub theta4: f64,
    pub theta4_input: String,
    pub max_denominator: u64,
    pub examined: u64,
    pub min_residual: Option<f64>,
    /// `[q2, p2, q3, p3, q4, p4]` for targets `q_j pi / p_j`.
    pub argmin: Option<[u64; 6]>,
    pub caveat: &'static str,
}

impl ObstructionJson {
    pub fn new(text: &str, r: &ObstructionReport) -> Self {
        ObstructionJson {
            theta4: r.theta4,
            theta4_input: text.to_string(),
            max_denominator: r.max_denominator,
            examined: r.examined,
            min_residual: r.min_residual,
            argmin: r.argmin,
            caveat: OBSTRUCTION_CAVEAT,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        a: f64,
        b: Vec<f64>,
        c: Option<f64>,
        d: f64,
    }

    #[test]
    fn floats_have_seventeen_digits() {
        let text = to_json(&Sample {
            a: 0.1,
            b: vec![1.0, -2.5e-300],
            c: None,
            d: f64::NAN,
        });
        assert!(text.contains("\"a\": 1.0000000000000001e-1"));
        assert!(text.contains("1.0000000000000000e0"));
        assert!(text.contains("-2.5000000000000000e-300"));
        assert!(text.contains("\"c\": null"));
        assert!(text.contains("\"d\": null"));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["a"].as_f64(), Some(0.1));
    }
}
