use std::collections::HashSet;
use std::sync::Arc;

use super::{
    filter_nouns, remove_stopwords, tag_entities, tokenize, EntityTag, EntityTagger, NounFilter, Representation, StopList, TaggedDocument,
};
use crate::corpus::RawDocument;
use crate::{Error, Result};

/// Linguistic resources the representations draw on. Each is optional;
/// asking for a representation whose resource is missing is an error.
#[derive(Clone, Default)]
pub struct Resources {
    pub stoplist: Option<StopList>,
    pub tagger: Option<Arc<dyn EntityTagger>>,
    pub nouns: Option<Arc<dyn NounFilter>>,
}

impl std::fmt::Debug for Resources {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Resources")
            .field("stoplist", &self.stoplist.as_ref().map(StopList::len))
            .field("tagger", &self.tagger.is_some())
            .field("nouns", &self.nouns.is_some())
            .finish()
    }
}

impl Resources {
    pub fn stoplist(&self) -> Result<&StopList> {
        self.stoplist
            .as_ref()
            .ok_or_else(|| Error::Config("representation needs a stop-word list".into()))
    }

    fn tagger(&self) -> Result<&dyn EntityTagger> {
        self.tagger
            .as_deref()
            .ok_or_else(|| Error::Config("representation needs an entity tagger (gazetteer)".into()))
    }

    fn nouns(&self) -> Result<&dyn NounFilter> {
        self.nouns
            .as_deref()
            .ok_or_else(|| Error::Config("representation needs a noun lexicon".into()))
    }
}

/// Builds one of the T1..T4 representations of a document.
///
/// * T1: tokenize, remove stop words
/// * T2: tokenize, tag entities (stop words kept)
/// * T3: T1, keep nouns
/// * T4: T3, with the tags T2 gives the surviving tokens
///
/// Token surfaces keep their case; lowercasing happens at feature extraction.
pub fn represent(doc: &RawDocument, kind: Representation, resources: &Resources) -> Result<TaggedDocument> {
    let tokens = tokenize(&doc.text());
    let tokens = match kind {
        Representation::T1 => untagged(remove_stopwords(&tokens, resources.stoplist()?)),
        Representation::T2 => tag_entities(&tokens, resources.tagger()?),
        Representation::T3 => {
            let t1 = remove_stopwords(&tokens, resources.stoplist()?);
            untagged(filter_nouns(&t1, resources.nouns()?))
        }
        Representation::T4 => {
            // tag the full stream so removed words cannot join two spans
            let tagged = tag_entities(&tokens, resources.tagger()?);
            let t1 = remove_stopwords(&tokens, resources.stoplist()?);
            let kept: HashSet<usize> = filter_nouns(&t1, resources.nouns()?).iter().map(|t| t.position).collect();
            tagged.into_iter().filter(|(t, _)| kept.contains(&t.position)).collect()
        }
    };
    Ok(TaggedDocument {
        id: doc.id.clone(),
        tokens,
        labels: doc.labels.clone(),
        representation: kind,
    })
}

fn untagged(tokens: Vec<super::Token>) -> Vec<(super::Token, EntityTag)> {
    tokens.into_iter().map(|t| (t, EntityTag::None)).collect()
}
