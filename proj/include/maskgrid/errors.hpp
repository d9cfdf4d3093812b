#pragma once

#include <stdexcept>
#include <string>

namespace maskgrid {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  block_count_mismatch,
  not_isometry,
  out_of_range,
  index_out_of_range,
  sampling_failed,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
    case Errc::dimension_mismatch: return "DIMENSION_MISMATCH";
    case Errc::block_count_mismatch: return "BLOCK_COUNT_MISMATCH";
    case Errc::not_isometry: return "NOT_ISOMETRY";
    case Errc::out_of_range: return "OUT_OF_RANGE";
    case Errc::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    case Errc::sampling_failed: return "SAMPLING_FAILED";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace maskgrid
