use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{func}: argument outside domain ({detail})")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: series did not converge within {terms} terms (last term {last_term:e})")]
    Precision {
        func: &'static str,
        terms: usize,
        last_term: f64,
    },
}
