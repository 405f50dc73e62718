use std::fs::File;
use std::io::{BufWriter, Write};

/// Writes UTF-8 lines (LF endings) or pretty JSON to stdout or a file.
pub struct OutputSink {
    writer: Box<dyn Write>,
}

impl OutputSink {
    pub fn create(path: Option<&str>) -> std::io::Result<OutputSink> {
        let writer: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        };
        Ok(OutputSink { writer })
    }

    pub fn line(&mut self, s: &str) -> std::io::Result<()> {
        self.writer.write_all(s.as_bytes())?;
        self.writer.write_all(b"\n")
    }

    pub fn json<T: serde::Serialize>(&mut self, value: &T) -> serde_json::Result<()> {
        serde_json::to_writer_pretty(&mut self.writer, value)?;
        let _ = self.writer.write_all(b"\n");
        Ok(())
    }
}
