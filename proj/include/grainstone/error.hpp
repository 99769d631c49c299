#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace grainstone {

enum class Errc {
  invalid_argument,
  io,
  format,
  precondition,
  usage,
  verification,
  allocation,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Malformed CSR-bin input. `offset` is the byte position the reader was at.
class FormatError : public Error {
 public:
  FormatError(std::uint64_t offset, const std::string& what)
      : Error(Errc::format, what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace grainstone
