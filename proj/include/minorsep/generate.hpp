#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "minorsep/graph.hpp"

namespace minorsep {

/// a x b grid; vertex (r, c) has id r * b + c.
Graph grid(std::size_t a, std::size_t b);
/// Grid with wrap-around edges in both directions (needs a, b >= 3).
Graph grid_torus(std::size_t a, std::size_t b);
Graph path(std::size_t n);
Graph cycle(std::size_t n);
/// Center 0 joined to 1..n-1.
Graph star(std::size_t n);
Graph complete(std::size_t n);
/// m distinct edges drawn uniformly without replacement.
Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed);
/// Pairing model with restarts until the result is simple.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Dispatch by family name with string parameters
/// (a, b, n, m, d, seed). Throws ParameterError on unknown families or
/// missing parameters.
Graph generate(const std::string& family, const std::map<std::string, std::uint64_t>& params);

}  // namespace minorsep
