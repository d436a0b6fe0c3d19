#include "labelflow/grid.hpp"

#include <cmath>
#include <string>

#include "labelflow/error.hpp"

namespace labelflow {

Grid::Grid(int n, double length) : n_(n), length_(length), spacing_(length / n) {
  if (n < 8 || n % 2 != 0) {
    throw Error(ErrorKind::kBadParameters,
                "grid size must be even and >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::kBadParameters, "grid period must be positive and finite");
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) {
    throw Error(ErrorKind::kGridMismatch,
                std::string(context) + ": grids differ (n=" + std::to_string(a.n()) +
                    " vs n=" + std::to_string(b.n()) + ")");
  }
}

}  // namespace labelflow
