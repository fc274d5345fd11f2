#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffhecke {

enum class ErrorCode {
  NonIntegralPiece,
  EmptyBundle,
  LengthMismatch,
  RankMismatch,
  NoModification,
  NotSemistable,
  NonIntegralShift,
  InvalidParameter,
  NegativeCharacter,
  CoherenceFailure,
  Overflow,
  InvalidInput,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonIntegralPiece: return "NonIntegralPiece";
    case ErrorCode::EmptyBundle: return "EmptyBundle";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NoModification: return "NoModification";
    case ErrorCode::NotSemistable: return "NotSemistable";
    case ErrorCode::NonIntegralShift: return "NonIntegralShift";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NegativeCharacter: return "NegativeCharacter";
    case ErrorCode::CoherenceFailure: return "CoherenceFailure";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace checked {

// Silent wraparound is never acceptable; every integer op in the library goes through these.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::Overflow, "integer narrowing");
  return static_cast<std::int64_t>(v);
}

}  // namespace checked
}  // namespace ffhecke
