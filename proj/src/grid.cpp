#include "nudge2d/grid.hpp"

#include <string>

#include "nudge2d/errors.hpp"

namespace nudge2d {

Grid::Grid(int n) : n_(n) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw ContractError("grid size must be a power of two >= 8, got " +
                        std::to_string(n));
  }
}

}  // namespace nudge2d
