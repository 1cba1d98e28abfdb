#include "pinn/ad/tape.hpp"

#include <algorithm>

namespace pinn::ad {

void Tape::backward(Var root) {
    if (value_.empty()) throw UsageError("reverse sweep on an empty tape");
    if (root.tape != this || root.node >= value_.size())
        throw UsageError("backward: root does not belong to this tape");

    std::fill(adjoint_.begin(), adjoint_.end(), 0.0);
    adjoint_[root.node] = 1.0;

    for (std::uint32_t i = root.node + 1; i-- > 0;) {
        double a = adjoint_[i];
        if (a == 0.0) continue;
        std::uint32_t p0 = parent0_[i];
        if (p0 == npos) continue;
        adjoint_[p0] += a * partial0_[i];
        std::uint32_t p1 = parent1_[i];
        if (p1 != npos) adjoint_[p1] += a * partial1_[i];
    }
}

std::vector<double> Tape::gradient(Var root) {
    backward(root);
    std::vector<double> g(leaves_.size());
    for (std::size_t k = 0; k < leaves_.size(); ++k) g[k] = adjoint_[leaves_[k]];
    return g;
}

void Tape::clear() {
    value_.clear();
    adjoint_.clear();
    parent0_.clear();
    parent1_.clear();
    partial0_.clear();
    partial1_.clear();
    op_.clear();
    leaves_.clear();
}

} // namespace pinn::ad
