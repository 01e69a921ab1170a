#include "featknn/error.hpp"

namespace featknn {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorKind::CorruptFile: return "CorruptFile";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::ZeroVector: return "ZeroVectorError";
    case ErrorKind::Parameter: return "ParameterError";
    case ErrorKind::Vocabulary: return "VocabularyError";
  }
  return "Error";
}

}  // namespace featknn
