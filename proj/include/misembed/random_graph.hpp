#pragma once

#include "misembed/graph.hpp"

#include <cstdint>

namespace misembed {

/// Erdos-Renyi-Gilbert G(n, p), unit weights.
///
/// Pairs (i, j), i < j, are visited in lexicographic order; each draws one
/// 64-bit output of std::mt19937_64 seeded with `seed`, maps it to
/// u = (x >> 11) * 2^-53 in [0, 1) and keeps the edge iff u < p. The engine
/// is fully specified by the C++ standard and no std:: distribution is used,
/// so identical (n, p, seed) yield identical graphs on every platform.
WeightedGraph random_gnp(std::size_t n, double p, std::uint64_t seed);

/// Uniform random double in [0, 1) from one mt19937_64 output, as above.
double unit_interval(std::uint64_t raw);

} // namespace misembed
