use std::fmt::Write;
use std::process::ExitCode;

use momentcone::basis::Point;
use momentcone::io::ErrorJson;
use momentcone::{Error, Scalar};
use serde_json::Value;

use crate::Format;

/// One command result in all three formats.
pub struct Output {
    pub json: Value,
    pub table: String,
    pub csv: String,
}

impl Output {
    pub fn new(json: impl serde::Serialize) -> Self {
        Output {
            json: serde_json::to_value(json).expect("serializable"),
            table: String::new(),
            csv: String::new(),
        }
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.table.push_str(text.as_ref());
        self.table.push('\n');
        self
    }

    pub fn csv_line(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.csv.push_str(text.as_ref());
        self.csv.push('\n');
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => momentcone::io::to_json(&self.json),
            Format::Table => self.table.clone(),
            Format::Csv => self.csv.clone(),
        }
    }
}

pub enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    pub fn report(self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Domain(e) => {
                eprint!("{}", momentcone::io::to_json(&ErrorJson::from(&e)));
                ExitCode::from(1)
            }
            Failure::Io(msg) => {
                eprint!(
                    "{}",
                    momentcone::io::to_json(&ErrorJson {
                        error: "io".into(),
                        message: msg
                    })
                );
                ExitCode::from(1)
            }
        }
    }
}

pub fn scalar(x: &Scalar, float: bool) -> String {
    if float {
        format!("{x} (~{:.6})", x.to_f64())
    } else {
        x.to_string()
    }
}

pub fn point(x: &Point) -> String {
    format!("{x:?}")
}

pub fn indices(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `index,value` lines, with an `approx` column under `--float`.
pub fn csv_vector(out: &mut Output, values: &[Scalar], float: bool) {
    out.csv_line(if float {
        "index,value,approx"
    } else {
        "index,value"
    });
    for (i, v) in values.iter().enumerate() {
        let mut line = format!("{i},{v}");
        if float {
            let _ = write!(line, ",{:.6}", v.to_f64());
        }
        out.csv_line(line);
    }
}

pub fn table_vector(out: &mut Output, names: &[String], values: &[Scalar], float: bool) {
    let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(0);
    for (n, v) in names.iter().zip(values) {
        out.line(format!("{n:<width$}  {}", scalar(v, float)));
    }
}

/// Membership table of ground-set points against named subsets.
pub fn subset_table(out: &mut Output, points: &[Point], columns: &[(&str, &[usize])]) {
    let header: Vec<&str> = columns.iter().map(|(n, _)| *n).collect();
    out.line(format!("{:>4}  {:<28} {}", "#", "point", header.join("  ")));
    out.csv_line(format!("index,point,{}", header.join(",")));
    for (i, p) in points.iter().enumerate() {
        let marks: Vec<String> = columns
            .iter()
            .map(|(n, set)| {
                format!(
                    "{:^w$}",
                    if set.contains(&i) { "x" } else { "." },
                    w = n.len()
                )
            })
            .collect();
        out.line(format!("{i:>4}  {:<28} {}", point(p), marks.join("  ")));
        let flags: Vec<&str> = columns
            .iter()
            .map(|(_, set)| if set.contains(&i) { "1" } else { "0" })
            .collect();
        let coords: Vec<String> = p.to_strings();
        out.csv_line(format!("{i},{},{}", coords.join(" "), flags.join(",")));
    }
}
