use std::io::{self, BufRead, IsTerminal, Write};

use hedgeql_core::Dataset;

use crate::args::Format;
use crate::commands::{format_partition, format_query, partition_table, run_query, warnings};

const HELP: &str = "\
queries:   select <attrs> from <class> where <condition>
.partition <attr> <k>   print a partition
.explain on|off         toggle evaluation traces
.help                   this text
.quit                   leave
";

pub struct Repl {
    data: Dataset,
    format: Format,
    explain: bool,
}

enum Step {
    Continue,
    Quit,
}

impl Repl {
    pub fn new(data: Dataset, format: Format, explain: bool) -> Self {
        Self {
            data,
            format,
            explain,
        }
    }

    /// Read lines until `.quit` or end of input. Errors are printed and the
    /// loop carries on.
    pub fn run(&mut self, input: impl BufRead, mut out: impl Write) -> io::Result<()> {
        let interactive = io::stdin().is_terminal();
        let mut lines = input.lines();
        loop {
            if interactive {
                write!(out, "hedgeql> ")?;
                out.flush()?;
            }
            let Some(line) = lines.next() else {
                break;
            };
            let line = line?;
            let (text, step) = self.handle(line.trim());
            out.write_all(text.as_bytes())?;
            if let Step::Quit = step {
                break;
            }
        }
        Ok(())
    }

    fn handle(&mut self, line: &str) -> (String, Step) {
        if line.is_empty() || line.starts_with("--") {
            return (String::new(), Step::Continue);
        }
        if let Some(meta) = line.strip_prefix('.') {
            return self.meta(meta);
        }
        let text = match run_query(line, &self.data, None, self.explain) {
            Ok(run) => {
                let mut s = String::new();
                for w in warnings(&run) {
                    s.push_str(&w);
                    s.push('\n');
                }
                s.push_str(&format_query(&run, &self.data, self.format));
                s
            }
            Err(e) => format!("error: {}\n", e.message),
        };
        (text, Step::Continue)
    }

    fn meta(&mut self, meta: &str) -> (String, Step) {
        let words: Vec<&str> = meta.split_whitespace().collect();
        let text = match words.as_slice() {
            ["quit"] | ["exit"] => return (String::new(), Step::Quit),
            ["help"] => HELP.to_string(),
            ["explain", "on"] => {
                self.explain = true;
                "explain on\n".to_string()
            }
            ["explain", "off"] => {
                self.explain = false;
                "explain off\n".to_string()
            }
            ["partition", attr, k] => match k.parse::<usize>() {
                Ok(k) => match partition_table(&self.data.schema, attr, k) {
                    Ok(t) => format_partition(&t, self.format),
                    Err(e) => format!("error: {}\n", e.message),
                },
                Err(_) => format!("error: level `{k}` is not a number\n"),
            },
            _ => format!("error: unknown command `.{meta}`, try .help\n"),
        };
        (text, Step::Continue)
    }
}
