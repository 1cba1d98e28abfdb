#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "pinn/net.hpp"
#include "pinn/pde.hpp"
#include "pinn/sampling.hpp"
#include "pinn/training.hpp"

namespace pinn {

/// Full-batch loss and parameter gradient, evaluated layer-wise over point
/// chunks instead of per-scalar tape nodes. Forward propagates the four jet
/// lanes (value, d/dt, d/dx, d2/dx2) through the network as matrices; the
/// reverse pass is the hand-derived adjoint of that computation.
///
/// Points are split into fixed-size chunks whose partial sums are reduced
/// in chunk order, so results are bitwise independent of the thread count.
/// Short chunks are padded by replicating a real point with zero adjoint
/// seeds, which keeps every buffer shape static.
class BatchLossGrad {
public:
    BatchLossGrad(const ParabolicPde& pde, const Network& shape, const SampleSet& samples,
                  double alpha, double beta, double gamma, int threads = 0);

    /// Evaluates loss and writes dTotal/dTheta into grad (resized to match).
    LossBreakdown compute(const Eigen::VectorXd& theta, Eigen::VectorXd& grad);

    std::size_t parameter_count() const { return n_params_; }

private:
    struct Chunk {
        enum class Kind { initial, boundary, collocation } kind;
        std::size_t begin; ///< into the kind's point array
        std::size_t count; ///< real points; the rest of the chunk is padding
    };

    /// Per-worker scratch, one set of lane matrices per layer.
    struct Workspace {
        std::vector<std::array<Eigen::MatrixXd, 4>> z;       ///< z[l]: input lanes of transition l
        std::array<Eigen::MatrixXd, 4> out;                  ///< network output lanes
        std::vector<std::array<Eigen::MatrixXd, 3>> pre_tan; ///< hidden pre-activation tangents
        std::vector<std::array<Eigen::MatrixXd, 3>> gd;      ///< g', g'', g''' lanes
        std::vector<std::array<Eigen::MatrixXd, 4>> adj;     ///< dLoss/dZ[l]
        std::vector<std::array<Eigen::MatrixXd, 4>> ap;      ///< dLoss/dPre[l]
    };

    using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using WMap = Eigen::Map<const RowMajorMatrix>;
    using BMap = Eigen::Map<const Eigen::VectorXd>;

    void init_workspace(Workspace& ws) const;
    void run_chunk(const Chunk& chunk, Workspace& ws, const std::vector<WMap>& w,
                   const std::vector<BMap>& b, Eigen::VectorXd& grad_out, double& loss_out) const;

    const ParabolicPde* pde_;
    const SampleSet* samples_;
    Activation activation_;
    std::vector<std::size_t> sizes_; ///< layer widths, input first
    std::size_t n_params_ = 0;
    std::vector<std::size_t> w_offsets_; ///< into theta, per transition
    std::vector<std::size_t> b_offsets_;
    double alpha_, beta_, gamma_;
    int threads_;
    std::vector<Chunk> chunks_;
    std::vector<Eigen::VectorXd> chunk_grads_;
    std::vector<double> chunk_losses_;
    std::vector<Workspace> workspaces_;
};

} // namespace pinn
