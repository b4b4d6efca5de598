#pragma once

#include <cstddef>
#include <iosfwd>

#include "obswitch/vi_solver.hpp"

namespace obswitch {

/// CSV with header `t,m,v0,v1,in_S0,in_S1`, rows ordered by (time level, node),
/// 9 significant digits. `stride` > 1 keeps every stride-th time level and node
/// (the last level and node are always kept).
void write_surface_csv(std::ostream& out, const ValueSurface& surface,
                       const SwitchingRegions& regions, std::size_t stride = 1);

/// Read a surface written by write_surface_csv. The grid is recovered from the
/// distinct t and m columns; `spec` supplies everything else. Throws DomainError
/// on malformed input or a non-uniform lattice.
ValueSurface read_surface_csv(std::istream& in, const ProblemSpec& spec);

}  // namespace obswitch
