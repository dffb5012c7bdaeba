#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtcut {

using VertexId = std::uint32_t;
using EdgeWeight = std::int64_t;
using BlockId = std::int32_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();
inline constexpr BlockId kNoBlock = -1;
inline constexpr EdgeWeight kInfiniteWeight = std::numeric_limits<EdgeWeight>::max();

struct WeightedEdge {
  VertexId u;
  VertexId v;
  EdgeWeight weight;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Block label per original vertex. Labels are original terminal indices.
using Assignment = std::vector<BlockId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation would break a structural invariant (e.g. merge two terminals).
class InvalidOperation : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class InfeasibleAssignment : public Error {
 public:
  using Error::Error;
};

class IncompleteSolution : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mtcut
