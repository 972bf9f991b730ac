#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cosetra {

inline constexpr std::string_view kVersion = "0.1.0";

// Sets of atom indices (or of group element indices) as 64-bit masks.
// Structures and groups in this toolkit are capped at 64 atoms/elements.
using Mask = std::uint64_t;

inline constexpr int kMaxAtoms = 64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid data handed to a constructor or loader.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Text input that does not parse; carries a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, int line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Elements of different structures (or groups) mixed in one operation.
class StructureMismatchError : public Error {
 public:
  using Error::Error;
};

// An operation called outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A derived quantity violates an identity that holds in every relation
// algebra; signals that the input table is not a relation algebra.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

inline Mask bit(int i) { return Mask{1} << i; }

inline bool has_bit(Mask m, int i) { return (m >> i) & 1; }

inline Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline int popcount(Mask m) { return std::popcount(m); }

// Index of the lowest set bit; undefined for zero masks.
inline int lowest_bit(Mask m) { return std::countr_zero(m); }

// Range-for over the set bits of a mask, low to high.
class BitRange {
 public:
  class iterator {
   public:
    explicit iterator(Mask m) : m_(m) {}
    int operator*() const { return std::countr_zero(m_); }
    iterator& operator++() {
      m_ &= m_ - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return m_ != o.m_; }

   private:
    Mask m_;
  };
  explicit BitRange(Mask m) : m_(m) {}
  iterator begin() const { return iterator(m_); }
  iterator end() const { return iterator(0); }

 private:
  Mask m_;
};

inline BitRange bits(Mask m) { return BitRange(m); }

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  return fnv1a64(s.data(), s.size());
}

// Deterministic bounded draw. std::uniform_int_distribution is not
// reproducible across standard libraries, raw engine output is.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

}  // namespace cosetra
