use std::fs;
use std::io::{self, Write};

use kmsbif::KmsError;
use thiserror::Error;

use crate::args::{Format, OutputArgs};
use crate::svg;
use crate::table::{self, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] KmsError),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) | CliError::Failed(_) => 2,
        }
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Svg => "svg",
    }
}

fn render_one(t: &Table, format: Format) -> String {
    match format {
        Format::Csv => t.to_csv(),
        Format::Json => table::to_json(std::slice::from_ref(t)),
        Format::Svg => svg::render(std::slice::from_ref(t)),
    }
}

/// Writes the tables to `--out` or stdout.
///
/// SVG is always one composite picture. For CSV and JSON, several tables
/// go to one file each inside the `--out` directory, or are concatenated on
/// stdout.
pub fn emit(tables: &[Table], out: &OutputArgs) -> Result<(), CliError> {
    let text = match (out.format, tables.len()) {
        (Format::Svg, _) => Some(svg::render(tables)),
        (_, 1) => Some(render_one(&tables[0], out.format)),
        (Format::Json, _) if out.out.is_none() => Some(table::to_json(tables)),
        _ => None,
    };
    match (&out.out, text) {
        (Some(path), Some(text)) => fs::write(path, text)?,
        (None, Some(text)) => io::stdout().lock().write_all(text.as_bytes())?,
        (Some(dir), None) => {
            fs::create_dir_all(dir)?;
            for t in tables {
                let path = dir.join(format!("{}.{}", t.name, extension(out.format)));
                fs::write(path, render_one(t, out.format))?;
            }
        }
        (None, None) => {
            let mut stdout = io::stdout().lock();
            for (k, t) in tables.iter().enumerate() {
                if k > 0 {
                    writeln!(stdout)?;
                }
                writeln!(stdout, "# table: {}", t.name)?;
                stdout.write_all(t.to_csv().as_bytes())?;
            }
        }
    }
    Ok(())
}
