#include "pinn/ad/derivative_check.hpp"

#include <cmath>

namespace pinn::ad {

double rel_error(double a, double b) {
    double diff = std::abs(a - b);
    if (diff == 0.0) return 0.0;
    return diff / std::max({std::abs(a), std::abs(b), 1.0});
}

} // namespace pinn::ad
