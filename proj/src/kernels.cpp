#include "reflen/kernels.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace reflen {

namespace {

void sweep_class(const GroupTable& t, std::size_t c, std::vector<std::uint32_t>& scratch, CacTensor& out) {
  const std::uint32_t rep = t.classes()[c].rep;
  for (std::uint32_t x = 0; x < t.order(); ++x) {
    const std::uint32_t y = t.mul(t.inv(x), rep, scratch);
    ++out.at(t.class_of(x), t.class_of(y), c);
  }
}

bool descends(const GroupTable& t, std::uint32_t g, const std::vector<std::uint32_t>& refl,
              std::vector<std::uint32_t>& scratch) {
  const int cg = t.codim(g);
  return std::any_of(refl.begin(), refl.end(), [&](std::uint32_t s) { return t.codim(t.mul(g, s, scratch)) < cg; });
}

}  // namespace

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

CacTensor cac_sweep(const GroupTable& t, Exec exec) {
  const std::size_t k = t.num_classes();
  CacTensor out(k);
  const std::size_t len = t.dim() * t.dim();
  if (exec == Exec::Serial) {
    std::vector<std::uint32_t> scratch(len);
    for (std::size_t c = 0; c < k; ++c) sweep_class(t, c, scratch, out);
    return out;
  }
  // Each class owns a disjoint slice of the tensor.
#pragma omp parallel
  {
    std::vector<std::uint32_t> scratch(len);
#pragma omp for schedule(dynamic)
    for (std::size_t c = 0; c < k; ++c) sweep_class(t, c, scratch, out);
  }
  return out;
}

std::vector<int> reflection_distances(const GroupTable& t, Exec exec) {
  const std::uint32_t n = static_cast<std::uint32_t>(t.order());
  const auto refl = t.reflections();
  std::vector<int> dist(n, -1);
  dist[GroupTable::identity()] = 0;
  const std::size_t len = t.dim() * t.dim();

  if (exec == Exec::Serial) {
    std::vector<std::uint32_t> scratch(len);
    std::deque<std::uint32_t> queue{GroupTable::identity()};
    while (!queue.empty()) {
      const std::uint32_t x = queue.front();
      queue.pop_front();
      for (std::uint32_t s : refl) {
        const std::uint32_t y = t.mul(x, s, scratch);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return dist;
  }

  // Level-synchronous pull: an unreached y joins level k+1 when y s sits at
  // level k for some reflection s. Reflections are closed under inversion.
  std::vector<int> next(n);
  for (int level = 0;; ++level) {
    std::size_t added = 0;
#pragma omp parallel reduction(+ : added)
    {
      std::vector<std::uint32_t> scratch(len);
#pragma omp for schedule(dynamic, 256)
      for (std::uint32_t y = 0; y < n; ++y) {
        next[y] = dist[y];
        if (dist[y] >= 0) continue;
        for (std::uint32_t s : refl) {
          if (dist[t.mul(y, s, scratch)] == level) {
            next[y] = level + 1;
            ++added;
            break;
          }
        }
      }
    }
    dist.swap(next);
    if (added == 0) break;
  }
  return dist;
}

std::optional<std::uint32_t> first_non_descending(const GroupTable& t, Exec exec) {
  const std::uint32_t n = static_cast<std::uint32_t>(t.order());
  const auto refl = t.reflections();
  const std::size_t len = t.dim() * t.dim();
  constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t first = none;

  if (exec == Exec::Serial) {
    std::vector<std::uint32_t> scratch(len);
    for (std::uint32_t g = 1; g < n; ++g) {
      if (!descends(t, g, refl, scratch)) {
        first = g;
        break;
      }
    }
  } else {
#pragma omp parallel reduction(min : first)
    {
      std::vector<std::uint32_t> scratch(len);
#pragma omp for schedule(dynamic, 256)
      for (std::uint32_t g = 1; g < n; ++g)
        if (g < first && !descends(t, g, refl, scratch)) first = g;
    }
  }
  if (first == none) return std::nullopt;
  return first;
}

}  // namespace reflen
