#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace featknn {

/// Broad failure category. The CLI maps these onto exit codes.
enum class ErrorKind {
  Io,                  // sink/source failure
  Format,              // wrong magic, malformed CSV
  UnsupportedVersion,
  CorruptFile,         // truncated stream, bad label, non-finite value
  InvalidData,         // violates a FeatureSet / stats invariant
  InsufficientData,
  DegenerateData,
  Dimension,
  ZeroVector,
  Parameter,
  Vocabulary,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct IoError : Error {
  IoError(const std::string& what, std::uint64_t offset)
      : Error(ErrorKind::Io, what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::uint64_t offset;
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(ErrorKind::Format, what) {}
};

struct UnsupportedVersion : Error {
  explicit UnsupportedVersion(std::uint32_t version)
      : Error(ErrorKind::UnsupportedVersion, "unsupported version " + std::to_string(version)),
        version(version) {}
  std::uint32_t version;
};

struct CorruptFile : Error {
  CorruptFile(const std::string& what, std::uint64_t offset)
      : Error(ErrorKind::CorruptFile, what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::uint64_t offset;
};

struct InvalidData : Error {
  explicit InvalidData(const std::string& what) : Error(ErrorKind::InvalidData, what) {}
};

struct InsufficientData : Error {
  explicit InsufficientData(const std::string& what) : Error(ErrorKind::InsufficientData, what) {}
};

struct DegenerateData : Error {
  explicit DegenerateData(const std::string& what) : Error(ErrorKind::DegenerateData, what) {}
};

struct DimensionError : Error {
  DimensionError(std::size_t expected, std::size_t got)
      : Error(ErrorKind::Dimension,
              "dimension mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(got)),
        expected(expected), got(got) {}
  std::size_t expected;
  std::size_t got;
};

struct ZeroVectorError : Error {
  ZeroVectorError() : Error(ErrorKind::ZeroVector, "cosine distance undefined for a zero-norm vector") {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

struct VocabularyError : Error {
  explicit VocabularyError(const std::string& what) : Error(ErrorKind::Vocabulary, what) {}
};

}  // namespace featknn
