#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace lv {

inline constexpr std::size_t kMaxSpecies = 64;

/// Set of species indices (0-based) stored as a bitmask. Iteration is ascending.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}
  IndexSet(std::initializer_list<std::size_t> indices) {
    for (auto i : indices) bits_ |= bit(i);
  }

  static constexpr IndexSet all(std::size_t n) {
    return IndexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static IndexSet from(const std::vector<std::size_t>& indices) {
    IndexSet s;
    for (auto i : indices) s.bits_ |= bit(i);
    return s;
  }

  constexpr bool contains(std::size_t i) const { return i < 64 && (bits_ & bit(i)) != 0; }
  constexpr IndexSet with(std::size_t i) const { return IndexSet(bits_ | bit(i)); }
  constexpr IndexSet without(std::size_t i) const { return IndexSet(bits_ & ~bit(i)); }
  constexpr IndexSet minus(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }
  constexpr IndexSet intersect(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
  constexpr bool is_subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr bool operator==(IndexSet, IndexSet) = default;

 private:
  static constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

  std::uint64_t bits_ = 0;
};

}  // namespace lv
