#include "misembed/random_graph.hpp"

#include "misembed/errors.hpp"

#include <random>

namespace misembed {

double unit_interval(std::uint64_t raw) { return static_cast<double>(raw >> 11) * 0x1.0p-53; }

WeightedGraph random_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw StructuralError("edge probability must lie in [0, 1]");
  std::mt19937_64 engine(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (unit_interval(engine()) < p)
        edges.emplace_back(i, j);
  return {n, std::move(edges), {},
          "gnp_n" + std::to_string(n) + "_s" + std::to_string(seed)};
}

} // namespace misembed
