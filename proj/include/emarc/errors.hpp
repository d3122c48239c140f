#ifndef EMARC_ERRORS_HPP
#define EMARC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace emarc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// corpus ingest
struct DecodeError : Error { using Error::Error; };
struct MarkerOrderError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// parsing (CoNLL-U, lexicon TSV, model files)
struct ParseError : Error { using Error::Error; };

// lexicon
struct RangeError : Error { using Error::Error; };
struct DuplicateError : Error { using Error::Error; };
struct UnknownEmotionError : Error { using Error::Error; };
struct MissingLemmaError : Error { using Error::Error; };

// embeddings
struct ZeroVectorError : Error { using Error::Error; };
struct DimError : Error { using Error::Error; };
struct EmptyVocabError : Error { using Error::Error; };

// scoring
struct EmptyDocumentError : Error { using Error::Error; };
struct ChunkingError : Error { using Error::Error; };

// configuration / CLI
struct ConfigError : Error { using Error::Error; };

} // namespace emarc

#endif
