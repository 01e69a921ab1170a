#pragma once

// Little-endian primitive encoding shared by the FSET and KNNM codecs.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "featknn/error.hpp"

namespace featknn::detail {

static_assert(std::endian::native == std::endian::little, "FSET/KNNM codecs assume a little-endian host");

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!out_) throw IoError("write failed", offset_);
    offset_ += n;
  }
  template <typename T>
  void put(T value) {
    bytes(&value, sizeof(T));
  }
  void tag(const char (&magic)[5]) { bytes(magic, 4); }
  void str16(const std::string& s) {
    put(static_cast<std::uint16_t>(s.size()));
    bytes(s.data(), s.size());
  }

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::ostream& out_;
  std::uint64_t offset_ = 0;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t n, const char* what) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n)
      throw CorruptFile(std::string("truncated stream reading ") + what, offset_ + in_.gcount());
    offset_ += n;
  }
  template <typename T>
  T get(const char* what) {
    T value;
    bytes(&value, sizeof(T), what);
    return value;
  }
  /// Reads 4 bytes; returns false on mismatch or short read.
  bool tag(const char (&magic)[5]) {
    char buf[4] = {};
    in_.read(buf, 4);
    offset_ += static_cast<std::uint64_t>(in_.gcount());
    return in_.gcount() == 4 && std::memcmp(buf, magic, 4) == 0;
  }
  std::string str16(const char* what) {
    auto len = get<std::uint16_t>(what);
    std::string s(len, '\0');
    if (len) bytes(s.data(), len, what);
    return s;
  }

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace featknn::detail
