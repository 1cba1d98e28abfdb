#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pinn/activation.hpp"
#include "pinn/ad/jet.hpp"
#include "pinn/ad/tape.hpp"

namespace pinn {

/// Dense feed-forward network u(t, x). Input is fixed at (t, x), output is a
/// single linear unit; hidden layers apply the selected activation.
///
/// Immutable during evaluation; concurrent reads are safe, mutation needs
/// exclusive access.
struct Network {
    Activation activation = Activation::gelu;
    std::vector<Eigen::MatrixXd> weights; ///< layer l: N_l x N_{l-1}
    std::vector<Eigen::VectorXd> biases;  ///< layer l: N_l

    std::size_t layer_count() const { return weights.size(); }
    std::vector<std::size_t> layer_sizes() const;
    std::size_t parameter_count() const;

    /// Flat parameter vector: per layer, weights row-major, then biases.
    Eigen::VectorXd flatten() const;
    void unflatten(const Eigen::VectorXd& theta);

    /// Scalar forward pass.
    double value(double t, double x) const;

    /// Shape-checked wrapper: z = (t, x), returns the 1-vector output.
    Eigen::VectorXd forward(const Eigen::VectorXd& z) const;

    /// Forward pass carrying (d/dt, d/dx, d2/dx2) tangents. The value lane
    /// is bitwise identical to value().
    ad::Jet4 forward_jet(double t, double x) const;
};

/// Glorot-uniform initialization: weights uniform in
/// +-sqrt(6/(N_l + N_{l-1})) from the seeded generator, biases zero.
/// Identical seeds give bitwise-identical networks.
Network init_glorot(const std::vector<std::size_t>& layer_sizes, Activation activation,
                    std::uint64_t seed);

void validate_shapes(const Network& net);

/// Network parameters registered as leaves on a tape (flatten order), so a
/// reverse sweep of any scalar built from the outputs yields dLoss/dTheta.
class TapeNet {
public:
    TapeNet(ad::Tape& tape, const Network& net);

    const std::vector<ad::Var>& params() const { return params_; }
    ad::Tape& tape() const { return *tape_; }

    ad::Var value(double t, double x) const;
    ad::Jet<ad::Var> forward_jet(double t, double x) const;

private:
    ad::Tape* tape_;
    const Network* net_;
    std::vector<ad::Var> params_;
    std::vector<std::size_t> offsets_; // per layer, into params_
};

} // namespace pinn
