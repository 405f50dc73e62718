use clap::Args;

use wishart_marginals::combinat::Permutation;
use wishart_marginals::moments::{parse_letters, Letter, MarginalWord};

/// Marginal-word flags shared by the moment commands. Exactly one of
/// `--word`, `--bipartite` or `--subsets` selects the form; colors, word
/// positions and one-line permutation entries are all 0-based.
#[derive(Args, Clone)]
pub struct WordSpec {
    /// 4-partite shortcut, e.g. `AB,AC,AB`.
    #[arg(long, conflicts_with_all = ["bipartite", "subsets"])]
    pub word: Option<String>,

    /// Bipartite Wishart word of length -p.
    #[arg(long, requires = "p_len", conflicts_with = "subsets")]
    pub bipartite: bool,

    /// Word length for --bipartite.
    #[arg(short = 'p', long = "p", id = "p_len")]
    pub p_len: Option<usize>,

    /// General kept sets, slash-separated color lists: `1,2/1,3/2,3`.
    #[arg(long)]
    pub subsets: Option<String>,

    /// Twists in one-line notation on positions, `0,1/1,0/0,1`
    /// (requires --subsets).
    #[arg(long, conflicts_with = "pis")]
    pub sigmas: Option<String>,

    /// Leg permutations of permuted marginals, same grammar as --sigmas.
    #[arg(long)]
    pub pis: Option<String>,

    /// Total color count for --subsets (defaults to 1 + the largest color).
    #[arg(long = "colors")]
    pub colors: Option<usize>,
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad index {t:?}: {e}"))
        })
        .collect()
}

fn parse_groups(s: &str) -> Result<Vec<Vec<usize>>, String> {
    s.split('/').map(parse_usize_list).collect()
}

fn parse_permutations(s: &str) -> Result<Vec<Permutation>, String> {
    parse_groups(s)?
        .into_iter()
        .map(|images| Permutation::from_images(images).map_err(|e| e.to_string()))
        .collect()
}

impl WordSpec {
    pub fn four_partite_letters(&self) -> Result<Vec<Letter>, Box<dyn std::error::Error>> {
        let w = self
            .word
            .as_deref()
            .ok_or("this regime needs a 4-partite --word")?;
        Ok(parse_letters(w)?)
    }

    pub fn build(&self) -> Result<MarginalWord, Box<dyn std::error::Error>> {
        if let Some(w) = &self.word {
            return Ok(MarginalWord::four_partite(&parse_letters(w)?)?);
        }
        if self.bipartite {
            let p = self.p_len.ok_or("--bipartite needs --p")?;
            return Ok(MarginalWord::bipartite(p)?);
        }
        let subsets = parse_groups(
            self.subsets
                .as_deref()
                .ok_or("specify a word with --word, --bipartite or --subsets")?,
        )?;
        let n = self
            .colors
            .unwrap_or_else(|| subsets.iter().flatten().max().map_or(0, |&m| m + 1));
        if let Some(pis) = &self.pis {
            return Ok(MarginalWord::permuted(
                n,
                subsets,
                parse_permutations(pis)?,
            )?);
        }
        let sigmas = match &self.sigmas {
            Some(s) => parse_permutations(s)?,
            None => {
                let card = subsets.first().map_or(0, Vec::len);
                vec![Permutation::identity(card); subsets.len()]
            }
        };
        Ok(MarginalWord::general(n, subsets, sigmas)?)
    }

    pub fn display(&self) -> String {
        if let Some(w) = &self.word {
            return w.clone();
        }
        if self.bipartite {
            return format!("bipartite p={}", self.p_len.unwrap_or(0));
        }
        format!(
            "subsets {}{}",
            self.subsets.as_deref().unwrap_or("?"),
            self.pis
                .as_deref()
                .map(|p| format!(" pis {p}"))
                .or_else(|| self.sigmas.as_deref().map(|s| format!(" sigmas {s}")))
                .unwrap_or_default()
        )
    }
}
