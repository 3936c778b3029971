// Whole-group sweeps behind the order computations. Each kernel has a serial
// reference and an OpenMP version producing identical results.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reflen/matgroup.hpp"

namespace reflen {

enum class Exec { Serial, Parallel };

/// Dense class algebra constants: at(x, y, c) = #{u in class x : u^-1 * rep(c) in class y}.
class CacTensor {
public:
  CacTensor() = default;
  explicit CacTensor(std::size_t classes) : k_(classes), counts_(classes * classes * classes, 0) {}

  std::size_t num_classes() const { return k_; }
  std::uint32_t at(std::size_t x, std::size_t y, std::size_t c) const { return counts_[(c * k_ + x) * k_ + y]; }
  std::uint32_t& at(std::size_t x, std::size_t y, std::size_t c) { return counts_[(c * k_ + x) * k_ + y]; }
  bool operator==(const CacTensor&) const = default;

private:
  std::size_t k_ = 0;
  std::vector<std::uint32_t> counts_;
};

/// One pass over the group per class representative.
CacTensor cac_sweep(const GroupTable& table, Exec exec = Exec::Parallel);

/// Breadth-first distance from the identity in the Cayley graph on all
/// reflections. Elements out of reach stay at -1.
std::vector<int> reflection_distances(const GroupTable& table, Exec exec = Exec::Parallel);

/// First nonidentity element g (by index) for which no reflection s gives
/// codim(g s) < codim(g), or nullopt if every element descends.
std::optional<std::uint32_t> first_non_descending(const GroupTable& table, Exec exec = Exec::Parallel);

/// Threads the parallel kernels will use; 1 without OpenMP.
int kernel_threads();

}  // namespace reflen
