#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace axlab {

enum class Errc {
  AsymmetricEntry,
  NonPositiveOffDiagonal,
  NonZeroDiagonal,
  DuplicatePoint,
  GroundSetMismatch,
  UnknownId,
  InvalidArgument,
  ZeroDenominator,
  DegenerateAllCentered,
  TooLarge,
  StreamTooShort,
  SizeMismatch,
  DimTooSmallForDistinctPlacement,
  InvalidSpec,
  ParseError,
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::AsymmetricEntry: return "AsymmetricEntry";
    case Errc::NonPositiveOffDiagonal: return "NonPositiveOffDiagonal";
    case Errc::NonZeroDiagonal: return "NonZeroDiagonal";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::GroundSetMismatch: return "GroundSetMismatch";
    case Errc::UnknownId: return "UnknownId";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DegenerateAllCentered: return "DegenerateAllCentered";
    case Errc::TooLarge: return "TooLarge";
    case Errc::StreamTooShort: return "StreamTooShort";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::DimTooSmallForDistinctPlacement: return "DimTooSmallForDistinctPlacement";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library-wide exception. `cell` names the offending (row, column) or
/// (index, index) pair for errors that concern a specific matrix entry or
/// point pair.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::pair<std::size_t, std::size_t>> cell = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), cell_(cell) {}

  Errc code() const noexcept { return code_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& cell() const noexcept { return cell_; }

 private:
  Errc code_;
  std::optional<std::pair<std::size_t, std::size_t>> cell_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what, Errc code = Errc::InvalidArgument) {
  if (!cond) throw Error(code, what);
}

}  // namespace axlab
