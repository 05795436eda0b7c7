use std::io::Read;

use dirichlet_core::circular::{self, CircularError, CircularNetwork};
use dirichlet_core::network::{generate, EmbeddingSpec, Network};

use crate::commands::CliError;
use crate::Common;

/// A loaded network and the embedding it came with, if any.
pub struct Input {
    pub network: Network,
    embedding: Option<EmbeddingSpec>,
}

const EMBEDDED_FAMILIES: [&str; 3] = ["sunflower", "double_sunflower", "wheatstone"];

pub fn load(c: &Common) -> Result<Input, CliError> {
    match (&c.generator, &c.file) {
        (Some(g), _) => {
            let network = generate::from_spec(g).map_err(dirichlet_core::Error::from)?;
            let family = g.split(':').next().unwrap_or_default();
            let embedding = if EMBEDDED_FAMILIES.contains(&family) {
                Some(circular::from_spec(g).map_err(dirichlet_core::Error::from)?.embedding_spec())
            } else {
                None
            };
            Ok(Input { network, embedding })
        }
        (None, Some(path)) => {
            let mut text = String::new();
            let read = if path == "-" {
                std::io::stdin().read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(path).map(|t| text = t)
            };
            read.map_err(|e| CliError::Io(path.clone(), e))?;
            let (network, spec) = Network::from_json(&text)?;
            Ok(Input { network, embedding: spec.embedding })
        }
        (None, None) => Err(CliError::Usage("give a network with --gen SPEC or --file PATH".into())),
    }
}

impl Input {
    pub fn has_embedding(&self) -> bool {
        self.embedding.is_some()
    }

    pub fn circular(&self) -> Result<CircularNetwork, CliError> {
        let spec = self.embedding.as_ref().ok_or(CircularError::MissingEmbedding).map_err(dirichlet_core::Error::from)?;
        Ok(circular::validate_embedding(self.network.clone(), spec).map_err(dirichlet_core::Error::from)?)
    }
}
