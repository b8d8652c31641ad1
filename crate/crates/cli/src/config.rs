use std::path::Path;

use serde::Deserialize;

use soergel::complex::SearchOptions;
use soergel::Error;

/// Defaults for the verification suites; command-line flags win.
#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub max_len: usize,
    pub strands: Option<usize>,
    pub window: i32,
    pub bound: i64,
    pub max_points: usize,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Config {
        let search = SearchOptions::default();
        Config {
            max_len: 4,
            strands: None,
            window: 10,
            bound: search.bound,
            max_points: search.max_points,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> soergel::Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{}: {}", path.display(), e) })?;
        parse(&text)
    }

    pub fn with_overrides(mut self, max_len: Option<usize>, strands: Option<usize>, window: Option<i32>) -> Config {
        self.max_len = max_len.unwrap_or(self.max_len);
        self.strands = strands.or(self.strands);
        self.window = window.unwrap_or(self.window);
        self
    }

    pub fn search(&self) -> SearchOptions {
        SearchOptions { bound: self.bound, max_points: self.max_points }
    }
}

pub fn parse(text: &str) -> soergel::Result<Config> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|s| {
                let before = &text[..s.start];
                let line = before.matches('\n').count() + 1;
                (line, s.start - before.rfind('\n').map_or(0, |p| p + 1) + 1)
            })
            .unwrap_or((0, 0));
        Error::Parse { line, column, message: e.message().to_string() }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_and_errors() {
        let c = parse("window = 4\nthreads = 2\n").unwrap();
        assert_eq!((c.window, c.threads, c.max_len), (4, 2, 4));
        match parse("window = 4\nbogus = 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{:?}", other),
        }
        let c = c.with_overrides(Some(2), Some(3), None);
        assert_eq!((c.max_len, c.strands, c.window), (2, Some(3), 4));
    }
}
